//! Braided wiring diagrams: elements, the component chart, validation,
//! macro expansion and position tracking.
//!
//! Positions are 1-based and counted from the top. Each element acts on the
//! strand order by a fixed permutation: `I(i,j)` reverses `i..=j`, `X(i,j,k)`
//! swaps the blocks `i..=j` and `j+1..=k`, `S(i,±)` transposes `i, i+1` and a
//! tangency leaves the order alone.

mod dsl;

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::{Permutation, Sign};

pub use dsl::{parse, print, ParseError, ParseErrorKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum Element {
    /// Multipoint through the consecutive positions `i..=j`.
    I { i: usize, j: usize },
    /// Grid of double points: block `i..=j` crosses block `j+1..=k`.
    X { i: usize, j: usize, k: usize },
    /// Simple tangency between positions `i` and `i + 1`.
    T { i: usize },
    /// Tangency nest on `a..=b`.
    TN { a: usize, b: usize },
    /// Braid letter `σ_i^{±1}`.
    S { i: usize, sign: Sign },
}

/// Why an element is not well formed on a given number of strands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Ok,
    OutOfRange,
    Malformed,
    OddNest,
}

impl Element {
    pub fn sigma(i: usize, sign: Sign) -> Self {
        Element::S { i, sign }
    }

    /// Lowest and highest position touched, inclusive.
    pub fn support(&self) -> (usize, usize) {
        match *self {
            Element::I { i, j } => (i, j),
            Element::X { i, k, .. } => (i, k),
            Element::T { i } | Element::S { i, .. } => (i, i + 1),
            Element::TN { a, b } => (a, b),
        }
    }

    pub fn shape(&self, strands: usize) -> Shape {
        let (lo, hi) = self.support();
        let ordered = match *self {
            Element::I { i, j } => i < j,
            Element::X { i, j, k } => i <= j && j < k,
            Element::TN { a, b } => a < b,
            Element::T { .. } | Element::S { .. } => true,
        };
        if !ordered {
            return Shape::Malformed;
        }
        if lo == 0 || hi > strands {
            return Shape::OutOfRange;
        }
        if let Element::TN { a, b } = *self {
            if (b - a + 1) % 2 != 0 {
                return Shape::OddNest;
            }
        }
        Shape::Ok
    }

    pub fn is_intersection(&self) -> bool {
        matches!(self, Element::I { .. } | Element::X { .. })
    }

    pub fn is_braiding(&self) -> bool {
        matches!(self, Element::S { .. })
    }

    /// Same element moved down by `by` positions (up if negative).
    pub fn shifted(&self, by: isize) -> Self {
        let s = |x: usize| x.checked_add_signed(by).expect("shift leaves the positive range");
        match *self {
            Element::I { i, j } => Element::I { i: s(i), j: s(j) },
            Element::X { i, j, k } => Element::X { i: s(i), j: s(j), k: s(k) },
            Element::T { i } => Element::T { i: s(i) },
            Element::TN { a, b } => Element::TN { a: s(a), b: s(b) },
            Element::S { i, sign } => Element::S { i: s(i), sign },
        }
    }

    /// Reorders `row` (indexed by 0-based position) the way the element
    /// reorders strands. The element must be in range for `row`.
    pub fn permute<T: Copy>(&self, row: &mut [T]) {
        match *self {
            Element::I { i, j } => row[i - 1..j].reverse(),
            Element::X { i, j, k } => row[i - 1..k].rotate_left(j + 1 - i),
            Element::S { i, .. } => row.swap(i - 1, i),
            Element::T { .. } => {}
            Element::TN { .. } => {
                for e in self.expand() {
                    e.permute(row);
                }
            }
        }
    }

    /// Expansion into multipoints, tangencies and braid letters.
    pub fn expand(&self) -> Vec<Element> {
        let mut out = Vec::new();
        self.expand_into(&mut out);
        out
    }

    fn expand_into(&self, out: &mut Vec<Element>) {
        match *self {
            Element::X { i, j, k } => {
                // top strands from the bottom-most one up, each crossing the whole bottom block
                for t in (i..=j).rev() {
                    let shift = j - t;
                    for p in t..k - shift {
                        out.push(Element::I { i: p, j: p + 1 });
                    }
                }
            }
            Element::TN { a, b } => {
                let n = (b - a + 1) / 2;
                let off = a - 1;
                out.push(Element::T { i: off + n });
                for t in 1..n {
                    for s in (t..n).rev() {
                        out.push(Element::S { i: off + s, sign: Sign::Neg });
                        out.push(Element::S { i: off + 2 * n - s, sign: Sign::Neg });
                    }
                    out.push(Element::T { i: off + n });
                }
            }
            other => out.push(other),
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Element::I { i, j } => write!(f, "I[{i},{j}]"),
            Element::X { i, j, k } => write!(f, "X[{i},{j}|{},{k}]", j + 1),
            Element::T { i } => write!(f, "T[{i}]"),
            Element::TN { a, b } => write!(f, "TN[{a},{b}]"),
            Element::S { i, sign: Sign::Pos } => write!(f, "s{i}"),
            Element::S { i, sign: Sign::Neg } => write!(f, "s{i}'"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChartError {
    #[error("component name `{0}` is not an identifier")]
    BadName(String),
    #[error("component `{0}` declared twice")]
    DuplicateName(String),
    #[error("strand {0} is not assigned to any component")]
    Unassigned(usize),
    #[error("strand {0} is assigned twice")]
    Reassigned(usize),
    #[error("strand {strand} out of range on {strands} strands")]
    OutOfRange { strand: usize, strands: usize },
    #[error("component `{0}` has no strands")]
    Empty(String),
    #[error("a diagram needs at least one strand")]
    NoStrands,
    #[error("chart covers {got} strands, diagram has {strands}")]
    Length { got: usize, strands: usize },
}

/// Left-edge assignment of strands to named components.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "RawChart", try_from = "RawChart")]
pub struct Chart {
    names: Vec<String>,
    comp_of: Vec<usize>,
}

#[derive(Clone, Serialize, Deserialize)]
struct RawChart {
    comps: Vec<RawComp>,
}

#[derive(Clone, Serialize, Deserialize)]
struct RawComp {
    name: String,
    strands: Vec<usize>,
}

impl From<Chart> for RawChart {
    fn from(c: Chart) -> Self {
        let comps = (0..c.names.len())
            .map(|ci| RawComp { name: c.names[ci].clone(), strands: c.strands_of(ci) })
            .collect();
        RawChart { comps }
    }
}

impl TryFrom<RawChart> for Chart {
    type Error = ChartError;

    fn try_from(raw: RawChart) -> Result<Self, Self::Error> {
        let strands = raw.comps.iter().map(|c| c.strands.len()).sum();
        Chart::from_groups(strands, raw.comps.into_iter().map(|c| (c.name, c.strands)))
    }
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Chart {
    /// Components in declaration order, each with its 1-based strands.
    pub fn from_groups<I, N>(strands: usize, groups: I) -> Result<Self, ChartError>
    where
        I: IntoIterator<Item = (N, Vec<usize>)>,
        N: Into<String>,
    {
        if strands == 0 {
            return Err(ChartError::NoStrands);
        }
        let mut names: Vec<String> = Vec::new();
        let mut comp_of = alloc::vec![usize::MAX; strands];
        for (name, list) in groups {
            let name = name.into();
            if !is_identifier(&name) {
                return Err(ChartError::BadName(name));
            }
            if names.contains(&name) {
                return Err(ChartError::DuplicateName(name));
            }
            if list.is_empty() {
                return Err(ChartError::Empty(name));
            }
            for s in list {
                if s == 0 || s > strands {
                    return Err(ChartError::OutOfRange { strand: s, strands });
                }
                if comp_of[s - 1] != usize::MAX {
                    return Err(ChartError::Reassigned(s));
                }
                comp_of[s - 1] = names.len();
            }
            names.push(name);
        }
        if let Some(p) = comp_of.iter().position(|&c| c == usize::MAX) {
            return Err(ChartError::Unassigned(p + 1));
        }
        Ok(Self { names, comp_of })
    }

    pub fn strand_count(&self) -> usize {
        self.comp_of.len()
    }

    pub fn component_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, comp: usize) -> &str {
        &self.names[comp]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Component index of each left-edge position (0-based).
    pub fn comp_map(&self) -> &[usize] {
        &self.comp_of
    }

    /// The same components at new left-edge positions.
    pub(crate) fn with_comp_map(&self, comp_of: Vec<usize>) -> Self {
        debug_assert_eq!(comp_of.len(), self.comp_of.len());
        Self { names: self.names.clone(), comp_of }
    }

    /// 1-based left-edge strands of component `comp`, ascending.
    pub fn strands_of(&self, comp: usize) -> Vec<usize> {
        (0..self.comp_of.len()).filter(|&p| self.comp_of[p] == comp).map(|p| p + 1).collect()
    }
}

/// A braided wiring diagram over an arc, read left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDiagram")]
pub struct WiringDiagram {
    strands: usize,
    chart: Chart,
    elements: Vec<Element>,
}

#[derive(Deserialize)]
struct RawDiagram {
    strands: usize,
    chart: Chart,
    elements: Vec<Element>,
}

impl TryFrom<RawDiagram> for WiringDiagram {
    type Error = ChartError;

    fn try_from(raw: RawDiagram) -> Result<Self, Self::Error> {
        WiringDiagram::new(raw.strands, raw.chart, raw.elements)
    }
}

impl WiringDiagram {
    /// Element shapes are not checked here; see [`validate`].
    pub fn new(strands: usize, chart: Chart, elements: Vec<Element>) -> Result<Self, ChartError> {
        if strands == 0 {
            return Err(ChartError::NoStrands);
        }
        if chart.strand_count() != strands {
            return Err(ChartError::Length { got: chart.strand_count(), strands });
        }
        Ok(Self { strands, chart, elements })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn with_elements(&self, elements: Vec<Element>) -> Self {
        Self { strands: self.strands, chart: self.chart.clone(), elements }
    }

    pub(crate) fn with_chart_and_elements(&self, chart: Chart, elements: Vec<Element>) -> Self {
        Self { strands: self.strands, chart, elements }
    }

    /// Digest of the canonical text.
    pub fn hash(&self) -> String {
        crate::digest::sha256_hex(print(self).as_bytes())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ViolationKind {
    OutOfRange { strands: usize },
    Malformed,
    NestParity,
    TangencyComponents { position: usize, upper: String, lower: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// 0-based index into the element sequence.
    pub element: usize,
    pub text: String,
    #[serde(flatten)]
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "element {} ({}): ", self.element, self.text)?;
        match &self.kind {
            ViolationKind::OutOfRange { strands } => write!(f, "index out of range on {strands} strands"),
            ViolationKind::Malformed => write!(f, "indices out of order"),
            ViolationKind::NestParity => write!(f, "tangency nest spans an odd number of strands"),
            ViolationKind::TangencyComponents { position, upper, lower } => write!(
                f,
                "tangency at position {position} joins components {upper} and {lower}"
            ),
        }
    }
}

/// Every problem found in `d`; empty means valid.
pub fn validate(d: &WiringDiagram) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut comps = d.chart.comp_of.clone();
    for (idx, e) in d.elements.iter().enumerate() {
        let kind = match e.shape(d.strands) {
            Shape::Ok => None,
            Shape::OutOfRange => Some(ViolationKind::OutOfRange { strands: d.strands }),
            Shape::Malformed => Some(ViolationKind::Malformed),
            Shape::OddNest => Some(ViolationKind::NestParity),
        };
        if let Some(kind) = kind {
            out.push(Violation { element: idx, text: e.to_string(), kind });
            continue;
        }
        for part in e.expand() {
            if let Element::T { i } = part {
                if comps[i - 1] != comps[i] {
                    out.push(Violation {
                        element: idx,
                        text: e.to_string(),
                        kind: ViolationKind::TangencyComponents {
                            position: i,
                            upper: d.chart.names[comps[i - 1]].clone(),
                            lower: d.chart.names[comps[i]].clone(),
                        },
                    });
                    break;
                }
            }
            part.permute(&mut comps);
        }
    }
    out
}

/// Rewrites every grid and tangency nest into `I`, `T` and `S` elements.
/// Ill-formed elements are kept as they are.
pub fn expand_macros(d: &WiringDiagram) -> WiringDiagram {
    let mut elements = Vec::with_capacity(d.elements.len());
    for e in &d.elements {
        if e.shape(d.strands) == Shape::Ok {
            e.expand_into(&mut elements);
        } else {
            elements.push(*e);
        }
    }
    d.with_elements(elements)
}

/// Strand order after a prefix of the diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionState {
    strand_at: Vec<usize>,
    comp_at: Vec<usize>,
}

impl PositionState {
    /// 0-based left-edge strand currently at 0-based position `p`.
    pub fn strand_at(&self, p: usize) -> usize {
        self.strand_at[p]
    }

    pub fn strands(&self) -> &[usize] {
        &self.strand_at
    }

    /// Component index currently at each 0-based position.
    pub fn comps(&self) -> &[usize] {
        &self.comp_at
    }

    /// Left-edge strand to current position, in the convention of
    /// [`Permutation`].
    pub fn to_permutation(&self) -> Permutation {
        let mut images = alloc::vec![0; self.strand_at.len()];
        for (p, &s) in self.strand_at.iter().enumerate() {
            images[s] = p;
        }
        Permutation::from_images(images).expect("position state is a bijection")
    }
}

/// State after the first `prefix` elements (clamped to the diagram length).
/// Ill-formed elements are skipped.
pub fn position_state(d: &WiringDiagram, prefix: usize) -> PositionState {
    let mut strand_at: Vec<usize> = (0..d.strands).collect();
    for e in d.elements.iter().take(prefix) {
        if e.shape(d.strands) == Shape::Ok {
            e.permute(&mut strand_at);
        }
    }
    let comp_at = strand_at.iter().map(|&s| d.chart.comp_of[s]).collect();
    PositionState { strand_at, comp_at }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn nested() -> WiringDiagram {
        parse("strands 4; comps A:1,4 B:2,3; TN[1,4]; (I[3,4])^3; I[1,4]").unwrap()
    }

    #[test]
    fn tn_expansions() {
        let tn = Element::TN { a: 1, b: 4 }.expand();
        let text: Vec<String> = tn.iter().map(|e| e.to_string()).collect();
        assert_eq!(text, ["T[2]", "s1'", "s3'", "T[2]"]);
        let tn6: Vec<String> = Element::TN { a: 1, b: 6 }.expand().iter().map(|e| e.to_string()).collect();
        assert_eq!(
            tn6,
            ["T[3]", "s2'", "s4'", "s1'", "s5'", "T[3]", "s2'", "s4'", "T[3]"]
        );
        let shifted: Vec<String> = Element::TN { a: 3, b: 6 }.expand().iter().map(|e| e.to_string()).collect();
        assert_eq!(shifted, ["T[4]", "s3'", "s5'", "T[4]"]);
    }

    #[test]
    fn x_expansions() {
        assert_eq!(Element::X { i: 1, j: 1, k: 2 }.expand(), vec![Element::I { i: 1, j: 2 }]);
        let x: Vec<String> = Element::X { i: 1, j: 2, k: 4 }.expand().iter().map(|e| e.to_string()).collect();
        assert_eq!(x, ["I[2,3]", "I[3,4]", "I[1,2]", "I[2,3]"]);
    }

    #[test]
    fn expansion_matches_permutation_table() {
        let elems = [
            Element::X { i: 2, j: 4, k: 7 },
            Element::X { i: 1, j: 5, k: 6 },
            Element::TN { a: 2, b: 7 },
            Element::I { i: 3, j: 6 },
        ];
        for e in elems {
            let mut direct: Vec<usize> = (0..8).collect();
            e.permute(&mut direct);
            let mut stepwise: Vec<usize> = (0..8).collect();
            for p in e.expand() {
                p.permute(&mut stepwise);
            }
            assert_eq!(direct, stepwise, "{e}");
        }
    }

    #[test]
    fn position_examples() {
        let chart = Chart::from_groups(4, [("A", vec![1, 2, 3, 4])]).unwrap();
        let d = WiringDiagram::new(4, chart.clone(), vec![Element::I { i: 1, j: 4 }]).unwrap();
        let st = position_state(&d, 1);
        assert_eq!(st.strands(), &[3, 2, 1, 0]);
        assert_eq!(st.to_permutation().cycles(), vec![vec![1, 4], vec![2, 3]]);

        let d = WiringDiagram::new(4, chart, vec![Element::X { i: 1, j: 2, k: 4 }]).unwrap();
        let st = position_state(&d, 1);
        let one_based: Vec<usize> = st.strands().iter().map(|s| s + 1).collect();
        assert_eq!(one_based, [3, 4, 1, 2]);
    }

    #[test]
    fn nest_keeps_one_component_on_each_tangency() {
        let e = expand_macros(&nested());
        let st = position_state(&e, 3);
        assert_eq!(e.elements()[3], Element::T { i: 2 });
        let a = e.chart().index_of("A").unwrap();
        assert_eq!(st.comps()[1], a);
        assert_eq!(st.comps()[2], a);
    }

    #[test]
    fn validation() {
        assert!(validate(&nested()).is_empty());
        let bad = parse("strands 2; comps A:1 B:2; T[1]").unwrap();
        let v = validate(&bad);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].element, 0);
        assert!(matches!(v[0].kind, ViolationKind::TangencyComponents { position: 1, .. }));

        let chart = Chart::from_groups(4, [("A", vec![1, 4]), ("B", vec![2, 3])]).unwrap();
        let d = WiringDiagram::new(
            4,
            chart,
            vec![Element::T { i: 1 }, Element::TN { a: 1, b: 3 }, Element::I { i: 3, j: 5 }, Element::I { i: 2, j: 2 }],
        )
        .unwrap();
        let kinds: Vec<_> = validate(&d).into_iter().map(|v| (v.element, v.kind)).collect();
        assert_eq!(kinds[1], (1, ViolationKind::NestParity));
        assert_eq!(kinds[2], (2, ViolationKind::OutOfRange { strands: 4 }));
        assert_eq!(kinds[3], (3, ViolationKind::Malformed));
        assert!(matches!(kinds[0], (0, ViolationKind::TangencyComponents { .. })));
    }

    #[test]
    fn expanded_validation_agrees() {
        let d = nested();
        assert!(validate(&expand_macros(&d)).is_empty());
        let bad = parse("strands 4; comps A:1,2 B:3,4; TN[1,4]").unwrap();
        assert!(!validate(&bad).is_empty());
        assert!(!validate(&expand_macros(&bad)).is_empty());
    }

    #[test]
    fn json_shape() {
        let d = parse("strands 3; comps A:1,3 B:2; X[1,1|2,3]; s2'; T[1]").unwrap();
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(
            json,
            r#"{"strands":3,"chart":{"comps":[{"name":"A","strands":[1,3]},{"name":"B","strands":[2]}]},"elements":[{"type":"X","i":1,"j":1,"k":3},{"type":"S","i":2,"sign":-1},{"type":"T","i":1}]}"#
        );
        let back: WiringDiagram = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d);
        assert!(serde_json::from_str::<WiringDiagram>(
            r#"{"strands":3,"chart":{"comps":[{"name":"A","strands":[1,3]}]},"elements":[]}"#
        )
        .is_err());
    }
}
