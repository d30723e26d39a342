//! Germ data for the graphs `G_{k,n}` and the `n = 1` diagrams: the Scott
//! deformation, the rational-homology-disk arrangement, and the move script
//! connecting them. Every generated diagram is gated on the germ weights and
//! linking numbers before it is returned.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use serde::Serialize;
use thiserror::Error;

use crate::boundary::{boundary_unchecked, closure_chart};
use crate::braid::{self, Sign};
use crate::homology::{self, intersection_profiles, Arrangement, HomologyError};
use crate::moves::{apply, Direction, MoveInstance, MoveKind};
use crate::wiring::{self, Chart, Element, WiringDiagram};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("gate failed: {0}")]
    Gate(String),
    #[error("m = {0} is odd; the generator is experimental and needs an explicit override")]
    Experimental(i64),
    #[error("no built-in move script for odd m = {0}")]
    OddScript(i64),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Blue,
    Red,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GermComponent {
    pub name: String,
    pub color: Color,
    pub weight: i64,
}

/// Decorated germ of `G_{k,n}`: `k + 6` blue cusps and `n` red cusps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GermData {
    pub k: i64,
    pub n: i64,
    pub components: Vec<GermComponent>,
    /// Intersection multiplicities, indexed like `components`; zero on the
    /// diagonal.
    pub pairwise: Vec<Vec<i64>>,
}

impl GermData {
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.components.iter().position(|c| c.name == name)
    }

    /// `k + 7`, the number of curves when `n = 1`.
    pub fn m(&self) -> Option<i64> {
        (self.n == 1).then_some(self.k + 7)
    }

    pub fn strand_count(&self) -> usize {
        2 * self.components.len()
    }

    pub fn weight(&self, name: &str) -> Option<i64> {
        self.index_of(name).map(|i| self.components[i].weight)
    }

    pub fn pair(&self, a: &str, b: &str) -> Option<i64> {
        Some(self.pairwise[self.index_of(a)?][self.index_of(b)?])
    }
}

/// Red cusps are `C0` when `n = 1` and `Cp1 … Cpn` otherwise; blue cusps
/// are `C1 … C{k+6}`.
pub fn germ_data(k: i64, n: i64) -> Result<GermData, FamilyError> {
    if k < -1 || n < 1 {
        return Err(FamilyError::Parameter(format!("need k ≥ −1 and n ≥ 1, got k = {k}, n = {n}")));
    }
    if k + n > 500 {
        return Err(FamilyError::Parameter(format!("k + n = {} is too large", k + n)));
    }
    let mut components = Vec::new();
    for r in 1..=n {
        let name = if n == 1 { "C0".to_string() } else { format!("Cp{r}") };
        components.push(GermComponent { name, color: Color::Red, weight: 7 + k + n });
    }
    for b in 1..=k + 6 {
        components.push(GermComponent { name: format!("C{b}"), color: Color::Blue, weight: 7 + k });
    }
    let pairwise = components
        .iter()
        .enumerate()
        .map(|(i, a)| {
            components
                .iter()
                .enumerate()
                .map(|(j, b)| match (i == j, a.color, b.color) {
                    (true, _, _) => 0,
                    (false, Color::Blue, Color::Blue) => 8 + k,
                    (false, Color::Red, Color::Red) => 8 + k + n,
                    _ => 7 + k,
                })
                .collect()
        })
        .collect();
    Ok(GermData { k, n, components, pairwise })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Scott,
    Qhd,
    User,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyDiagram {
    pub arrangement: Arrangement,
    pub provenance: Provenance,
    pub k: i64,
    pub experimental: bool,
}

impl FamilyDiagram {
    pub fn diagram(&self) -> &WiringDiagram {
        self.arrangement.diagram()
    }
}

fn m_of(k: i64) -> Result<usize, FamilyError> {
    if !(-1..=200).contains(&k) {
        return Err(FamilyError::Parameter(format!("need −1 ≤ k ≤ 200, got {k}")));
    }
    Ok((k + 7) as usize)
}

/// Nested pairs: component `j` owns strands `j` and `2m + 1 − j`. The red
/// curve is the pair whose lower strand the Scott sub-multipoint leaves out.
fn scott_chart(m: usize) -> Chart {
    let red = if m % 2 == 0 { m } else { 1 };
    let mut blue = 0;
    let groups = (1..=m).map(|j| {
        let name = if j == red {
            "C0".to_string()
        } else {
            blue += 1;
            format!("C{blue}")
        };
        (name, vec![j, 2 * m + 1 - j])
    });
    Chart::from_groups(2 * m, groups).expect("well-formed chart")
}

/// Weights, linking numbers and validity against the germ.
pub fn gate(a: &Arrangement, g: &GermData) -> Result<(), FamilyError> {
    let d = a.diagram();
    if let Some(v) = wiring::validate(d).first() {
        return Err(FamilyError::Gate(format!("invalid diagram: {v}")));
    }
    let chart = d.chart();
    for name in chart.names() {
        if g.index_of(name).is_none() {
            return Err(FamilyError::Gate(format!("component {name} is not in the germ")));
        }
    }
    for (name, w) in homology::weights(a)? {
        let want = g.weight(&name).expect("checked");
        if w != want {
            return Err(FamilyError::Gate(format!("weight of {name} is {w}, germ has {want}")));
        }
    }
    let lk = braid::linking_matrix(&boundary_unchecked(d), &closure_chart(d))
        .map_err(|e| FamilyError::Gate(e.to_string()))?;
    for a_ in 0..chart.component_count() {
        for b_ in a_ + 1..chart.component_count() {
            let (na, nb) = (chart.name(a_), chart.name(b_));
            let want = g.pair(na, nb).expect("checked");
            if lk.lk(a_, b_) != want {
                return Err(FamilyError::Gate(format!(
                    "linking {na}/{nb} is {}, germ has {want}",
                    lk.lk(a_, b_)
                )));
            }
        }
    }
    Ok(())
}

/// `TN(1,2m) · I(m+1+ε, 2m−1+ε) · I(m+1,2m)^{m−4} · I(1,2m)` with
/// `ε = m mod 2`; one free point per blue curve and three on the red one.
pub fn scott_diagram(k: i64) -> Result<FamilyDiagram, FamilyError> {
    let m = m_of(k)?;
    let eps = m % 2;
    let mut elements = vec![Element::TN { a: 1, b: 2 * m }, Element::I { i: m + 1 + eps, j: 2 * m - 1 + eps }];
    elements.extend((0..m - 4).map(|_| Element::I { i: m + 1, j: 2 * m }));
    elements.push(Element::I { i: 1, j: 2 * m });
    let d = WiringDiagram::new(2 * m, scott_chart(m), elements).expect("chart fits");
    let free = d.chart().names().iter().map(|n| (n.clone(), if n == "C0" { 3 } else { 1 })).collect::<Vec<_>>();
    let arrangement = Arrangement::with_named_free_points(d, free)?;
    gate(&arrangement, &germ_data(k, 1)?)?;
    Ok(FamilyDiagram { arrangement, provenance: Provenance::Scott, k, experimental: false })
}

/// The Scott chart carried through `Δ_{1,m} Δ_{m+1,2m}⁻¹`, the braiding the
/// script trims off the left edge: component `j` owns `m + 1 − j` and `m + j`.
fn qhd_chart(m: usize) -> Chart {
    let scott = scott_chart(m);
    let mut comp = scott.comp_map().to_vec();
    comp[..m].reverse();
    comp[m..].reverse();
    let groups = (0..scott.component_count())
        .map(|c| (scott.name(c).to_string(), (1..=2 * m).filter(|&p| comp[p - 1] == c).collect::<Vec<_>>()));
    Chart::from_groups(2 * m, groups).expect("permuted chart")
}

fn sigma_top_bot(m: usize, top_first: bool) -> Vec<Element> {
    let top = (1..m).map(|g| Element::S { i: g, sign: Sign::Neg });
    let bot = (m + 1..2 * m).rev().map(|g| Element::S { i: g, sign: Sign::Neg });
    if top_first {
        top.chain(bot).collect()
    } else {
        bot.chain(top).collect()
    }
}

/// The arrangement with as many intersection points as curves and no free
/// points. For even `m`:
/// `TN(2,2m−1) σ_top⁻¹ σ_bot⁻¹ I(m,m+1) σ_{m−1} σ_m⁻¹ T(m−1) I(m,2m) I(m−2,2m−2) … I(1,m+1)`.
///
/// Odd `m` is experimental and refused unless `allow_experimental` is set.
pub fn qhd_diagram(k: i64, allow_experimental: bool) -> Result<FamilyDiagram, FamilyError> {
    let m = m_of(k)?;
    let even = m % 2 == 0;
    if !even && !allow_experimental {
        return Err(FamilyError::Experimental(m as i64));
    }
    let mut elements = vec![Element::TN { a: 2, b: 2 * m - 1 }];
    elements.extend(sigma_top_bot(m, even));
    elements.push(Element::I { i: m, j: m + 1 });
    if even {
        elements.push(Element::S { i: m - 1, sign: Sign::Pos });
        elements.push(Element::S { i: m, sign: Sign::Neg });
        elements.push(Element::T { i: m - 1 });
        elements.push(Element::I { i: m, j: 2 * m });
        elements.extend((1..=m - 2).rev().map(|j| Element::I { i: j, j: m + j }));
    } else {
        elements.push(Element::S { i: m, sign: Sign::Pos });
        elements.push(Element::S { i: m - 1, sign: Sign::Neg });
        elements.push(Element::T { i: m + 1 });
        elements.extend((1..=m).filter(|&j| j != 2).map(|j| Element::I { i: j, j: m + j }));
    }
    let d = WiringDiagram::new(2 * m, qhd_chart(m), elements).expect("chart fits");
    let arrangement = Arrangement::bare(d);
    let germ = germ_data(k, 1)?;
    gate(&arrangement, &germ)?;
    let verdict = homology::qhd_check(&arrangement, &germ)?;
    if !verdict.verdict {
        return Err(FamilyError::Gate(verdict.reasons.join("; ")));
    }
    Ok(FamilyDiagram { arrangement, provenance: Provenance::Qhd, k, experimental: !even })
}

/// Tracks the diagram while a script is assembled so positions can be
/// looked up instead of hand-counted.
struct ScriptBuilder {
    d: WiringDiagram,
    steps: Vec<MoveInstance>,
}

impl ScriptBuilder {
    fn find(&self, e: Element) -> usize {
        self.d.elements().iter().position(|&x| x == e).unwrap_or_else(|| panic!("{e} not found in script state"))
    }

    fn push(&mut self, kind: MoveKind, variant: &str, pos: usize, params: &[usize], dir: Direction) {
        let params: Vec<i64> = params.iter().map(|&p| p as i64).collect();
        let inst = MoveInstance::new(kind, variant, pos, &params, dir);
        let r = apply(&self.d, &inst, false).unwrap_or_else(|e| panic!("script step {inst}: {e}"));
        self.d = r.diagram;
        self.steps.push(inst);
    }

    fn swap(&mut self, pos: usize) {
        self.push(MoveKind::M1, "swap", pos, &[], Direction::Fwd);
    }
}

/// Moves taking `scott_diagram(k)` to `qhd_diagram(k)` (even `m` only).
pub fn qhd_script(k: i64) -> Result<Vec<MoveInstance>, FamilyError> {
    use Direction::{Bwd, Fwd};
    use Element::{I, TN, X};
    use MoveKind::*;
    let m = m_of(k)?;
    if m % 2 == 1 {
        return Err(FamilyError::OddScript(m as i64));
    }
    let start = scott_diagram(k)?;
    let mut b = ScriptBuilder { d: start.diagram().clone(), steps: Vec::new() };

    // split the rightmost multipoint, then absorb its first grid column
    let p = b.find(I { i: 1, j: 2 * m });
    b.push(M4, "i_x_i", p, &[1, m - 1, 2 * m], Fwd);
    b.push(M2, "bottom", p + 1, &[1, m - 1, 2 * m, m], Fwd);
    b.push(M5, "bottom_first", p, &[1, m], Bwd);
    for q in (2..p).rev() {
        b.swap(q);
    }

    // slide each bottom multipoint up and merge it with a column of doubles
    for t in 2..m - 2 {
        let x = b.find(X { i: t, j: m, k: 2 * m });
        b.push(M2, "top", x, &[t, m, 2 * m, t + 1], Fwd);
        b.push(M7, "bottom", x - 1, &[t + 1, m, 2 * m], Fwd);
        b.push(M5, "top_first", x, &[t, t + m], Bwd);
    }

    // slide I(1,m) through the tangency nest
    b.swap(1);
    b.push(M11, "base", 0, &[1, 2 * m], Fwd);
    let nest = b.find(TN { a: 1, b: 2 * m });

    // move strand m+1 between the two bottom multipoints
    b.push(M5, "top_first", nest + 1, &[m + 1, 2 * m], Fwd);
    b.push(M5, "top_last", nest + 2, &[m + 1, 2 * m], Bwd);

    // two more slide-merges
    b.push(M2, "top", nest + 3, &[m - 2, m, 2 * m, m - 1], Fwd);
    b.push(M7, "bottom", nest + 2, &[m - 1, m, 2 * m], Fwd);
    b.push(M5, "top_first", nest + 3, &[m - 2, 2 * m - 2], Bwd);
    b.push(M2, "bottom", nest + 2, &[m - 1, m, 2 * m, m + 1], Fwd);
    b.swap(nest + 1);
    b.push(M7, "bottom", nest + 2, &[m, m + 1, 2 * m], Fwd);
    b.push(M2, "top", nest + 2, &[m, m + 1, 2 * m, m + 1], Fwd);
    b.push(M5, "top_last", nest + 3, &[m, 2 * m - 1], Bwd);
    b.push(M2, "top", nest + 1, &[m - 1, m, m + 1, m], Fwd);
    b.push(M2, "unit", nest + 1, &[m], Fwd);
    b.push(M2, "unit", nest + 2, &[m - 1], Fwd);
    b.swap(nest + 2);

    // peel the innermost tangency and trade it with the isolated node
    b.push(M3, "peel", nest, &[1, 2 * m], Fwd);
    let tm = nest + 2 * (m - 1) + 1;
    b.push(M9, "double", tm, &[m], Bwd);
    b.swap(tm + 2);
    b.push(M10, "sym", tm + 1, &[m - 1], Fwd);
    let node = tm + 4;
    b.push(M2, "unit", node, &[m], Bwd);
    b.push(M2, "bottom", node, &[m, m, 2 * m, m + 1], Bwd);
    b.push(M5, "top_last", node, &[m, 2 * m], Bwd);

    // drop the braiding the nest pass left at the start
    while let Some(&Element::S { i, sign }) = b.d.elements().first() {
        b.push(M16, "trim", 0, &[i, sign.value() as usize], Fwd);
    }
    Ok(b.steps)
}

/// Canonical comparison key: the multiset of intersection profiles, the
/// weights and the free points.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Signature {
    /// Per intersection point, the components through it with multiplicity.
    pub points: Vec<Vec<(String, i64)>>,
    pub weights: BTreeMap<String, i64>,
    pub free_points: BTreeMap<String, usize>,
}

pub fn combinatorial_signature(a: &Arrangement) -> Signature {
    let chart = a.diagram().chart();
    let mut points: Vec<Vec<(String, i64)>> = intersection_profiles(a.diagram())
        .into_iter()
        .map(|(_, _, _, col)| {
            let mut p: Vec<(String, i64)> =
                col.iter().enumerate().filter(|(_, &x)| x > 0).map(|(c, &x)| (chart.name(c).to_string(), x)).collect();
            p.sort();
            p
        })
        .collect();
    points.sort();
    let mut weights: BTreeMap<String, i64> = chart.names().iter().map(|n| (n.clone(), 0)).collect();
    for p in &points {
        for (name, x) in p {
            *weights.get_mut(name).expect("known component") += x;
        }
    }
    let free_points = a.named_free_points();
    for (name, f) in &free_points {
        *weights.get_mut(name).expect("known component") += *f as i64;
    }
    Signature { points, weights, free_points }
}
