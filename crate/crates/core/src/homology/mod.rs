//! Marked points, weights, the incidence matrix and its Smith normal form.
//!
//! Every intersection point of the expanded diagram is marked; free points
//! are extra marks on a component. For the disk arrangement `W`,
//! `H_2(W) = ker 𝓘` and `H_1(W) = coker 𝓘` for the incidence map
//! `𝓘: Z⟨points⟩ → Z⟨disks⟩`.

mod snf;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::boundary::{boundary_unchecked, closure_chart};
use crate::braid;
use crate::families::GermData;
use crate::wiring::{self, Element, WiringDiagram};

pub use snf::{smith_normal_form, Snf};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("free points given for unknown component `{0}`")]
    UnknownComponent(String),
    #[error("components {found:?} do not match the germ components {expected:?}")]
    ComponentMismatch { found: Vec<String>, expected: Vec<String> },
    #[error("weights match the germ but the incidence map has rank {rank} < {disks} disks")]
    RankDeficient { rank: usize, disks: usize },
}

/// A diagram together with its free marked points, one count per component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawArrangement", into = "RawArrangement")]
pub struct Arrangement {
    diagram: WiringDiagram,
    free_points: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawArrangement {
    diagram: WiringDiagram,
    #[serde(default)]
    free_points: BTreeMap<String, usize>,
}

impl TryFrom<RawArrangement> for Arrangement {
    type Error = HomologyError;

    fn try_from(raw: RawArrangement) -> Result<Self, Self::Error> {
        Arrangement::with_named_free_points(raw.diagram, raw.free_points)
    }
}

impl From<Arrangement> for RawArrangement {
    fn from(a: Arrangement) -> Self {
        let free_points = a.named_free_points();
        RawArrangement { diagram: a.diagram, free_points }
    }
}

impl Arrangement {
    /// All marks on intersections, no free points.
    pub fn bare(diagram: WiringDiagram) -> Self {
        let k = diagram.chart().component_count();
        Self { diagram, free_points: vec![0; k] }
    }

    pub fn with_named_free_points<I, N>(diagram: WiringDiagram, free: I) -> Result<Self, HomologyError>
    where
        I: IntoIterator<Item = (N, usize)>,
        N: AsRef<str>,
    {
        let mut a = Self::bare(diagram);
        for (name, count) in free {
            let c = a
                .diagram
                .chart()
                .index_of(name.as_ref())
                .ok_or_else(|| HomologyError::UnknownComponent(name.as_ref().to_string()))?;
            a.free_points[c] = count;
        }
        Ok(a)
    }

    pub fn diagram(&self) -> &WiringDiagram {
        &self.diagram
    }

    /// Free points per component index.
    pub fn free_points(&self) -> &[usize] {
        &self.free_points
    }

    pub fn named_free_points(&self) -> BTreeMap<String, usize> {
        let names = self.diagram.chart().names();
        names.iter().cloned().zip(self.free_points.iter().copied()).collect()
    }

    pub fn set_free_points(&mut self, comp: usize, count: usize) {
        self.free_points[comp] = count;
    }

    /// Same free points on another diagram with the same components.
    pub fn with_diagram(&self, diagram: WiringDiagram) -> Self {
        debug_assert_eq!(diagram.chart().names(), self.diagram.chart().names());
        Self { diagram, free_points: self.free_points.clone() }
    }

    fn check(&self) -> Result<(), HomologyError> {
        match wiring::validate(&self.diagram).first() {
            Some(v) => Err(HomologyError::InvalidDiagram(v.to_string())),
            None => Ok(()),
        }
    }
}

/// What a marked point marks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PointLabel {
    /// An intersection point: element index and the positions it spans.
    Intersection { element: usize, i: usize, j: usize },
    Free { component: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IncidenceMatrix {
    /// Component names, one per row.
    pub rows: Vec<String>,
    pub columns: Vec<PointLabel>,
    pub entries: Vec<Vec<i64>>,
}

impl IncidenceMatrix {
    pub fn points(&self) -> usize {
        self.columns.len()
    }

    pub fn disks(&self) -> usize {
        self.rows.len()
    }

    pub fn to_bigint(&self) -> Vec<Vec<BigInt>> {
        self.entries.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }
}

/// Multiplicity profile of every intersection point: strands of each
/// component through it.
pub(crate) fn intersection_profiles(d: &WiringDiagram) -> Vec<(usize, usize, usize, Vec<i64>)> {
    let k = d.chart().component_count();
    let mut comps = d.chart().comp_map().to_vec();
    let mut out = Vec::new();
    for (idx, e) in d.elements().iter().enumerate() {
        for part in e.expand() {
            if let Element::I { i, j } = part {
                let mut col = vec![0i64; k];
                for &c in &comps[i - 1..j] {
                    col[c] += 1;
                }
                out.push((idx, i, j, col));
            }
            part.permute(&mut comps);
        }
    }
    out
}

pub fn incidence(a: &Arrangement) -> Result<IncidenceMatrix, HomologyError> {
    a.check()?;
    let chart = a.diagram.chart();
    let k = chart.component_count();
    let mut columns = Vec::new();
    let mut cols = Vec::new();
    for (element, i, j, col) in intersection_profiles(&a.diagram) {
        columns.push(PointLabel::Intersection { element, i, j });
        cols.push(col);
    }
    for (c, &count) in a.free_points.iter().enumerate() {
        for _ in 0..count {
            columns.push(PointLabel::Free { component: chart.name(c).to_string() });
            let mut col = vec![0i64; k];
            col[c] = 1;
            cols.push(col);
        }
    }
    let entries = (0..k).map(|r| cols.iter().map(|col| col[r]).collect()).collect();
    Ok(IncidenceMatrix { rows: chart.names().to_vec(), columns, entries })
}

/// Marked points on each component, counted with multiplicity.
pub fn weights(a: &Arrangement) -> Result<BTreeMap<String, i64>, HomologyError> {
    let m = incidence(a)?;
    Ok(m.rows.iter().cloned().zip(m.entries.iter().map(|r| r.iter().sum())).collect())
}

fn serialize_factors<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match i64::try_from(x) {
            Ok(small) => seq.serialize_element(&small)?,
            Err(_) => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    /// Zero because the singularity is rational; not computed.
    pub b1: u32,
    pub b1_basis: &'static str,
    pub b2: usize,
    /// Free rank of `H_1`.
    pub h1_rank: usize,
    /// Invariant factors of `H_1` greater than one.
    #[serde(rename = "torsion", serialize_with = "serialize_factors")]
    pub h1_torsion: Vec<BigInt>,
    pub rank: usize,
    pub points: usize,
    pub disks: usize,
    pub weights: BTreeMap<String, i64>,
    /// `b2 = 0` and `H_1` finite.
    pub qhd: bool,
}

pub fn homology(a: &Arrangement) -> Result<HomologyReport, HomologyError> {
    let m = incidence(a)?;
    let snf = smith_normal_form(&m.to_bigint());
    let diag = snf.diagonal();
    let rank = diag.iter().filter(|x| !x.is_zero()).count();
    let h1_torsion: Vec<BigInt> = diag.iter().filter(|x| !x.is_zero() && !x.is_one()).cloned().collect();
    let b2 = m.points() - rank;
    let h1_rank = m.disks() - rank;
    let weights = m.rows.iter().cloned().zip(m.entries.iter().map(|r| r.iter().sum())).collect();
    Ok(HomologyReport {
        b1: 0,
        b1_basis: "by hypothesis (rational singularity)",
        b2,
        h1_rank,
        h1_torsion,
        rank,
        points: m.points(),
        disks: m.disks(),
        weights,
        qhd: b2 == 0 && h1_rank == 0,
    })
}

/// Order of `H_1` when it is finite.
pub fn h1_order(report: &HomologyReport) -> Option<BigInt> {
    (report.h1_rank == 0).then(|| report.h1_torsion.iter().fold(BigInt::one(), |acc, x| acc * x))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QhdVerdict {
    pub b1: u32,
    pub b2: usize,
    #[serde(serialize_with = "serialize_factors")]
    pub torsion: Vec<BigInt>,
    pub points: usize,
    pub disks: usize,
    pub weights: BTreeMap<String, i64>,
    pub verdict: bool,
    pub reasons: Vec<String>,
}

/// The rational-homology-disk criterion against a germ: as many marked
/// points as disks, germ weights, germ linking numbers and `b2 = 0`.
pub fn qhd_check(a: &Arrangement, g: &GermData) -> Result<QhdVerdict, HomologyError> {
    a.check()?;
    let chart = a.diagram.chart();
    let mut found: Vec<String> = chart.names().to_vec();
    let mut expected: Vec<String> = g.components.iter().map(|c| c.name.clone()).collect();
    found.sort();
    expected.sort();
    if found != expected {
        return Err(HomologyError::ComponentMismatch { found, expected });
    }
    let germ_index: Vec<usize> = chart.names().iter().map(|n| g.index_of(n).expect("names match")).collect();
    let report = homology(a)?;
    let mut reasons = Vec::new();
    if report.points != report.disks {
        reasons.push(format!("#points {} ≠ #disks {}", report.points, report.disks));
    }
    let mut weights_ok = true;
    for (c, name) in chart.names().iter().enumerate() {
        let want = g.components[germ_index[c]].weight;
        let got = report.weights[name];
        if got != want {
            weights_ok = false;
            reasons.push(format!("weight mismatch on {name}: {got} ≠ {want}"));
        }
    }
    let boundary = boundary_unchecked(&a.diagram);
    let lk = braid::linking_matrix(&boundary, &closure_chart(&a.diagram))
        .map_err(|e| HomologyError::InvalidDiagram(e.to_string()))?;
    for a_ in 0..chart.component_count() {
        for b_ in a_ + 1..chart.component_count() {
            let want = g.pairwise[germ_index[a_]][germ_index[b_]];
            let got = lk.lk(a_, b_);
            if got != want {
                reasons.push(format!("linking mismatch {}/{}: {got} ≠ {want}", chart.name(a_), chart.name(b_)));
            }
        }
    }
    if weights_ok && report.rank < report.disks {
        return Err(HomologyError::RankDeficient { rank: report.rank, disks: report.disks });
    }
    if report.b2 != 0 {
        reasons.push(format!("b2 = {} ≠ 0", report.b2));
    }
    Ok(QhdVerdict {
        b1: 0,
        b2: report.b2,
        torsion: report.h1_torsion,
        points: report.points,
        disks: report.disks,
        weights: report.weights,
        verdict: reasons.is_empty(),
        reasons,
    })
}
