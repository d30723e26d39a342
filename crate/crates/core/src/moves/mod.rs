//! Boundary-preserving rewrite moves on wiring diagrams.
//!
//! Every move is applied at an explicit position with explicit parameters
//! and direction, and is checked against its guarantee on the whole
//! diagram:
//!
//! * `WORD`: front and back braids are unchanged as braid-group elements;
//! * `EXACT`: the boundary word is unchanged after free reduction;
//! * `CONJ`: the boundary braid becomes `c⁻¹ · b · c` for the emitted `c`.

mod rules;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boundary::{back_unchecked, boundary_unchecked, front_unchecked};
use crate::braid::{self, BraidWord, Letter, NormalForm};
use crate::wiring::{self, Chart, Element, Shape, WiringDiagram};

pub use rules::{Anchor, MoveSpec, Variant};
use rules::Rule;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoveKind {
    M1,
    M2,
    M3,
    M4,
    M5,
    M6,
    M7,
    M8,
    M9,
    M10,
    M11,
    M12,
    M13,
    M14,
    M15,
    M16,
    M17,
}

impl MoveKind {
    pub const ALL: [MoveKind; 17] = [
        MoveKind::M1,
        MoveKind::M2,
        MoveKind::M3,
        MoveKind::M4,
        MoveKind::M5,
        MoveKind::M6,
        MoveKind::M7,
        MoveKind::M8,
        MoveKind::M9,
        MoveKind::M10,
        MoveKind::M11,
        MoveKind::M12,
        MoveKind::M13,
        MoveKind::M14,
        MoveKind::M15,
        MoveKind::M16,
        MoveKind::M17,
    ];

    pub fn code(self) -> &'static str {
        const CODES: [&str; 17] = [
            "M1", "M2", "M3", "M4", "M5", "M6", "M7", "M8", "M9", "M10", "M11", "M12", "M13", "M14", "M15",
            "M16", "M17",
        ];
        CODES[self as usize]
    }

    pub fn spec(self) -> &'static MoveSpec {
        &catalog()[self as usize]
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Guarantee {
    #[serde(rename = "WORD")]
    Word,
    #[serde(rename = "EXACT")]
    Exact,
    #[serde(rename = "CONJ")]
    Conj,
}

impl fmt::Display for Guarantee {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Guarantee::Word => "WORD",
            Guarantee::Exact => "EXACT",
            Guarantee::Conj => "CONJ",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Fwd,
    Bwd,
}

impl Direction {
    pub fn reverse(self) -> Self {
        match self {
            Direction::Fwd => Direction::Bwd,
            Direction::Bwd => Direction::Fwd,
        }
    }
}

/// One rewrite request. A missing `variant` selects the first variant of
/// the kind.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MoveInstance {
    pub kind: MoveKind,
    #[serde(default)]
    pub variant: String,
    pub pos: usize,
    #[serde(default)]
    pub params: Vec<i64>,
    pub dir: Direction,
}

impl MoveInstance {
    pub fn new(kind: MoveKind, variant: &str, pos: usize, params: &[i64], dir: Direction) -> Self {
        Self { kind, variant: variant.to_string(), pos, params: params.to_vec(), dir }
    }

    /// The instance undoing this one: same position and parameters,
    /// opposite direction.
    pub fn inverse(&self) -> Option<MoveInstance> {
        let (_, variant) = lookup(self)?;
        let mut inv = self.clone();
        inv.variant = variant.name.to_string();
        if self.kind != MoveKind::M1 {
            inv.dir = self.dir.reverse();
        }
        Some(inv)
    }
}

impl fmt::Display for MoveInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.params.iter().map(|x| x.to_string()).collect();
        let dir = match self.dir {
            Direction::Fwd => "fwd",
            Direction::Bwd => "bwd",
        };
        write!(f, "{}/{} @{} [{}] {}", self.kind, self.variant, self.pos, p.join(","), dir)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveResult {
    pub diagram: WiringDiagram,
    pub guarantee: Guarantee,
    pub conjugator: Option<BraidWord>,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("unknown variant `{variant}` of {kind}")]
    UnknownVariant { kind: MoveKind, variant: String },
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("verification failed for {instance}: {reason}")]
    VerificationFailed { instance: String, reason: String },
}

/// The fixed catalog, indexed by [`MoveKind`].
pub fn catalog() -> &'static [MoveSpec] {
    &rules::TABLE
}

fn lookup(inst: &MoveInstance) -> Option<(&'static MoveSpec, &'static Variant)> {
    let spec = inst.kind.spec();
    let variant = if inst.variant.is_empty() {
        spec.variants.first()
    } else {
        spec.variants.iter().find(|v| v.name == inst.variant)
    }?;
    Some((spec, variant))
}

struct Rewrite {
    diagram: WiringDiagram,
    guarantee: Guarantee,
    conjugator: Option<BraidWord>,
}

fn letters_word(strands: usize, elems: &[Element]) -> BraidWord {
    let letters = elems
        .iter()
        .filter_map(|e| match *e {
            Element::S { i, sign } => Some(Letter { gen: i, sign }),
            _ => None,
        })
        .collect();
    BraidWord::new(strands, letters).expect("letters in range")
}

/// Left-edge chart for a diagram whose prefix `from` became `to`, chosen so
/// that every curve keeps its label past the rewritten window.
fn carry_chart(d: &WiringDiagram, from: &[Element], to: &[Element]) -> Chart {
    let mut after = d.chart().comp_map().to_vec();
    for e in from {
        e.permute(&mut after);
    }
    let mut origin: Vec<usize> = (0..d.strands()).collect();
    for e in to {
        e.permute(&mut origin);
    }
    let mut comp_of = vec![0; d.strands()];
    for (p, &o) in origin.iter().enumerate() {
        comp_of[o] = after[p];
    }
    d.chart().with_comp_map(comp_of)
}

fn rewrite(d: &WiringDiagram, inst: &MoveInstance) -> Result<Rewrite, MoveError> {
    let (_, variant) = lookup(inst)
        .ok_or_else(|| MoveError::UnknownVariant { kind: inst.kind, variant: inst.variant.clone() })?;
    let n = d.strands();
    if inst.pos > d.len() {
        return Err(MoveError::NotApplicable(format!("position {} past the end ({})", inst.pos, d.len())));
    }
    let window = &d.elements()[inst.pos..];
    let Rule { lhs, rhs } = (variant.build)(&inst.params, window).ok_or_else(|| {
        MoveError::NotApplicable(format!("parameters {:?} do not instantiate {}/{}", inst.params, inst.kind, variant.name))
    })?;
    let (from, to) = match inst.dir {
        Direction::Fwd => (lhs, rhs),
        Direction::Bwd => (rhs, lhs),
    };
    if let Some(e) = from.iter().chain(to.iter()).find(|e| e.shape(n) != Shape::Ok) {
        return Err(MoveError::NotApplicable(format!("{e} does not fit on {n} strands")));
    }
    match variant.anchor {
        Anchor::Start if inst.pos != 0 => {
            return Err(MoveError::NotApplicable("move only applies at the left edge".to_string()));
        }
        Anchor::End if inst.pos + from.len() != d.len() => {
            return Err(MoveError::NotApplicable("move only applies at the right edge".to_string()));
        }
        _ => {}
    }
    if window.len() < from.len() || window[..from.len()] != from[..] {
        let want: Vec<String> = from.iter().map(|e| e.to_string()).collect();
        return Err(MoveError::NotApplicable(format!("expected `{}` at position {}", want.join(" "), inst.pos)));
    }
    let mut elements = Vec::with_capacity(d.len() + to.len());
    elements.extend_from_slice(&d.elements()[..inst.pos]);
    elements.extend_from_slice(&to);
    elements.extend_from_slice(&d.elements()[inst.pos + from.len()..]);
    let diagram = if variant.anchor == Anchor::Start {
        d.with_chart_and_elements(carry_chart(d, &from, &to), elements)
    } else {
        d.with_elements(elements)
    };
    if let Some(v) = wiring::validate(&diagram).first() {
        return Err(MoveError::NotApplicable(format!("result is not a valid diagram: {v}")));
    }
    let conjugator = match variant.guarantee {
        Guarantee::Conj => Some(match inst.dir {
            Direction::Fwd => letters_word(n, &from).inverse(),
            Direction::Bwd => letters_word(n, &to),
        }),
        _ => None,
    };
    Ok(Rewrite { diagram, guarantee: variant.guarantee, conjugator })
}

/// Normal forms of a diagram's pushoffs, computed on demand.
#[derive(Default)]
struct Certificate {
    front: Option<NormalForm>,
    back: Option<NormalForm>,
}

impl Certificate {
    fn front(&mut self, d: &WiringDiagram) -> &NormalForm {
        self.front.get_or_insert_with(|| front_unchecked(d).normal_form())
    }

    fn back(&mut self, d: &WiringDiagram) -> &NormalForm {
        self.back.get_or_insert_with(|| back_unchecked(d).normal_form())
    }
}

fn check(
    before: &WiringDiagram,
    before_cert: &mut Certificate,
    after: &WiringDiagram,
    after_cert: &mut Certificate,
    guarantee: Guarantee,
    conjugator: Option<&BraidWord>,
) -> Result<(), String> {
    match guarantee {
        Guarantee::Word => {
            if before_cert.front(before) != after_cert.front(after) {
                return Err("front braid changed".to_string());
            }
            if before_cert.back(before) != after_cert.back(after) {
                return Err("back braid changed".to_string());
            }
        }
        Guarantee::Exact => {
            if boundary_unchecked(before).free_reduce() != boundary_unchecked(after).free_reduce() {
                return Err("boundary word changed".to_string());
            }
        }
        Guarantee::Conj => {
            let c = conjugator.ok_or("missing conjugator")?;
            let ok = braid::conjugate_check(&boundary_unchecked(before), &boundary_unchecked(after), c)
                .map_err(|e| e.to_string())?;
            if !ok {
                return Err(format!("boundary is not conjugated by `{c}`"));
            }
        }
    }
    Ok(())
}

fn require_valid(d: &WiringDiagram) -> Result<(), MoveError> {
    match wiring::validate(d).first() {
        Some(v) => Err(MoveError::InvalidDiagram(v.to_string())),
        None => Ok(()),
    }
}

fn apply_certified(
    d: &WiringDiagram,
    cert: &mut Certificate,
    inst: &MoveInstance,
    verify: bool,
) -> Result<(MoveResult, Certificate), MoveError> {
    let rw = rewrite(d, inst)?;
    let mut after = Certificate::default();
    if verify {
        check(d, cert, &rw.diagram, &mut after, rw.guarantee, rw.conjugator.as_ref())
            .map_err(|reason| MoveError::VerificationFailed { instance: inst.to_string(), reason })?;
    }
    let result = MoveResult { diagram: rw.diagram, guarantee: rw.guarantee, conjugator: rw.conjugator, verified: verify };
    Ok((result, after))
}

/// Applies one move. With `verify` set, the guarantee is checked on the
/// whole diagram and a failure is an error.
pub fn apply(d: &WiringDiagram, inst: &MoveInstance, verify: bool) -> Result<MoveResult, MoveError> {
    require_valid(d)?;
    apply_certified(d, &mut Certificate::default(), inst, verify).map(|(r, _)| r)
}

/// Every catalog instance applicable at `pos`.
pub fn list_applicable(d: &WiringDiagram, pos: usize) -> Vec<MoveInstance> {
    let mut out: Vec<MoveInstance> = Vec::new();
    if pos > d.len() || !wiring::validate(d).is_empty() {
        return out;
    }
    let window = &d.elements()[pos..];
    for spec in catalog() {
        for variant in spec.variants {
            for dir in [Direction::Fwd, Direction::Bwd] {
                if spec.kind == MoveKind::M1 && dir == Direction::Bwd {
                    continue;
                }
                for params in (variant.infer)(window, d.strands(), dir) {
                    let inst = MoveInstance { kind: spec.kind, variant: variant.name.to_string(), pos, params, dir };
                    if !out.contains(&inst) && rewrite(d, &inst).is_ok() {
                        out.push(inst);
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub instance: MoveInstance,
    pub guarantee: Guarantee,
    /// Digest of the canonical text of the diagram after this step.
    pub hash: String,
    /// Digest of the boundary normal form after this step.
    pub boundary_hash: String,
    pub conjugator: Option<BraidWord>,
}

/// A replayable derivation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub initial: WiringDiagram,
    pub initial_hash: String,
    pub steps: Vec<TraceStep>,
    /// Ordered product of the step conjugators: the final boundary is
    /// `c⁻¹ · initial · c`.
    pub conjugator: BraidWord,
    #[serde(rename = "final")]
    pub final_diagram: WiringDiagram,
}

impl Trace {
    pub fn new(initial: WiringDiagram) -> Self {
        Self {
            initial_hash: initial.hash(),
            conjugator: BraidWord::identity(initial.strands()),
            final_diagram: initial.clone(),
            initial,
            steps: Vec::new(),
        }
    }

    /// Appends the result of applying `inst` to [`Trace::final_diagram`].
    pub fn record(&mut self, inst: &MoveInstance, r: MoveResult) {
        record(self, inst, r);
    }

    /// Drops the last step. `previous` is the diagram it was applied to.
    pub fn pop(&mut self, previous: WiringDiagram) -> Option<TraceStep> {
        let step = self.steps.pop()?;
        let mut c = BraidWord::identity(self.initial.strands());
        for s in self.steps.iter().filter_map(|s| s.conjugator.as_ref()) {
            c = c.compose(s).expect("same strands");
        }
        self.conjugator = c;
        self.final_diagram = previous;
        Some(step)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("step {step}: {error}")]
pub struct ScriptError {
    /// 0-based index of the failing step.
    pub step: usize,
    pub error: MoveError,
}

fn record(trace: &mut Trace, inst: &MoveInstance, r: MoveResult) {
    if let Some(c) = &r.conjugator {
        trace.conjugator = trace.conjugator.compose(c).expect("same strands");
    }
    trace.steps.push(TraceStep {
        instance: inst.clone(),
        guarantee: r.guarantee,
        hash: r.diagram.hash(),
        boundary_hash: boundary_unchecked(&r.diagram).normal_form().hash(),
        conjugator: r.conjugator,
    });
    trace.final_diagram = r.diagram;
}

/// Replays a script with verification on every step.
pub fn run_script(d: &WiringDiagram, script: &[MoveInstance]) -> Result<Trace, ScriptError> {
    require_valid(d).map_err(|error| ScriptError { step: 0, error })?;
    let mut trace = Trace::new(d.clone());
    let mut cert = Certificate::default();
    for (step, inst) in script.iter().enumerate() {
        let (r, next) =
            apply_certified(&trace.final_diagram, &mut cert, inst, true).map_err(|error| ScriptError { step, error })?;
        cert = next;
        record(&mut trace, inst, r);
    }
    let ok = braid::conjugate_check(
        &boundary_unchecked(&trace.initial),
        &boundary_unchecked(&trace.final_diagram),
        &trace.conjugator,
    )
    .unwrap_or(false);
    if !ok {
        return Err(ScriptError {
            step: script.len(),
            error: MoveError::VerificationFailed {
                instance: "whole script".to_string(),
                reason: "final boundary is not conjugate to the initial one by the accumulated conjugator".to_string(),
            },
        });
    }
    Ok(trace)
}

/// Independent replay of a trace: every step is re-applied and re-verified,
/// and every recorded hash and conjugator must match.
pub fn verify_trace(t: &Trace) -> bool {
    if !wiring::validate(&t.initial).is_empty() || t.initial.hash() != t.initial_hash {
        return false;
    }
    let mut d = t.initial.clone();
    let mut cert = Certificate::default();
    let mut acc = BraidWord::identity(d.strands());
    for step in &t.steps {
        let Ok((r, next)) = apply_certified(&d, &mut cert, &step.instance, true) else {
            return false;
        };
        if r.guarantee != step.guarantee || r.conjugator != step.conjugator || r.diagram.hash() != step.hash {
            return false;
        }
        if boundary_unchecked(&r.diagram).normal_form().hash() != step.boundary_hash {
            return false;
        }
        if let Some(c) = &r.conjugator {
            acc = acc.compose(c).expect("same strands");
        }
        cert = next;
        d = r.diagram;
    }
    if acc != t.conjugator || d != t.final_diagram {
        return false;
    }
    braid::conjugate_check(&boundary_unchecked(&t.initial), &boundary_unchecked(&d), &acc).unwrap_or(false)
}
