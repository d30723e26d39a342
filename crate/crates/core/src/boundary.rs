//! Front and back pushoff braids and the boundary braid
//! `invert(back) · front`.
//!
//! Contributions per expanded element:
//!
//! | element  | front      | back          |
//! |----------|------------|---------------|
//! | `I(i,j)` | `Δ_{i,j}`  | `Δ_{i,j}⁻¹`   |
//! | `T(i)`   | nothing    | `σ_i⁻¹`       |
//! | `S(i,±)` | `σ_i^±`    | `σ_i^±`       |

use alloc::string::String;
use alloc::vec::Vec;

use serde::Serialize;
use thiserror::Error;

use crate::braid::{self, BraidWord, Letter, LinkingMatrix, Sign};
use crate::wiring::{self, Element, Violation, WiringDiagram};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundaryError {
    #[error("invalid diagram: {}", .0.first().map(|v| alloc::format!("{v}")).unwrap_or_default())]
    Invalid(Vec<Violation>),
    #[error(transparent)]
    Braid(#[from] braid::BraidError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryData {
    pub front: BraidWord,
    pub back: BraidWord,
    pub boundary: BraidWord,
    /// Digest of the boundary normal form.
    pub nf_hash: String,
    /// Non-trivial cycles of the closure permutation, 1-based.
    pub cycles: Vec<Vec<usize>>,
    pub cycle_type: Vec<usize>,
    pub exponent_sum: i64,
    pub linking: LinkingMatrix,
}

fn checked(d: &WiringDiagram) -> Result<(), BoundaryError> {
    let v = wiring::validate(d);
    if v.is_empty() {
        Ok(())
    } else {
        Err(BoundaryError::Invalid(v))
    }
}

fn push_half_twist(out: &mut Vec<Letter>, i: usize, j: usize, sign: Sign) {
    let start = out.len();
    for top in (i..j).rev() {
        out.extend((i..=top).map(|g| Letter { gen: g, sign: Sign::Pos }));
    }
    if sign == Sign::Neg {
        out[start..].reverse();
        for l in &mut out[start..] {
            l.sign = Sign::Neg;
        }
    }
}

fn contributions(d: &WiringDiagram, is_front: bool) -> BraidWord {
    let mut letters = Vec::new();
    for e in d.elements() {
        for part in e.expand() {
            match part {
                Element::I { i, j } => {
                    push_half_twist(&mut letters, i, j, if is_front { Sign::Pos } else { Sign::Neg })
                }
                Element::T { i } => {
                    if !is_front {
                        letters.push(Letter::neg(i));
                    }
                }
                Element::S { i, sign } => letters.push(Letter { gen: i, sign }),
                Element::X { .. } | Element::TN { .. } => unreachable!("expanded"),
            }
        }
    }
    BraidWord::new(d.strands(), letters).expect("valid elements give valid letters")
}

/// Front braid of a diagram already known to be valid.
pub(crate) fn front_unchecked(d: &WiringDiagram) -> BraidWord {
    contributions(d, true)
}

pub(crate) fn back_unchecked(d: &WiringDiagram) -> BraidWord {
    contributions(d, false)
}

pub(crate) fn boundary_unchecked(d: &WiringDiagram) -> BraidWord {
    back_unchecked(d).inverse().compose(&front_unchecked(d)).expect("same strand count")
}

pub fn front(d: &WiringDiagram) -> Result<BraidWord, BoundaryError> {
    checked(d)?;
    Ok(front_unchecked(d))
}

pub fn back(d: &WiringDiagram) -> Result<BraidWord, BoundaryError> {
    checked(d)?;
    Ok(back_unchecked(d))
}

pub fn boundary_braid(d: &WiringDiagram) -> Result<BraidWord, BoundaryError> {
    checked(d)?;
    Ok(boundary_unchecked(d))
}

/// Component index at each position of the right edge, which is where the
/// boundary word starts.
pub fn closure_chart(d: &WiringDiagram) -> Vec<usize> {
    wiring::position_state(d, d.len()).comps().to_vec()
}

pub fn boundary_invariants(d: &WiringDiagram) -> Result<BoundaryData, BoundaryError> {
    checked(d)?;
    let front = front_unchecked(d);
    let back = back_unchecked(d);
    let boundary = back.inverse().compose(&front)?;
    let perm = boundary.permutation();
    let linking = braid::linking_matrix(&boundary, &closure_chart(d))?;
    Ok(BoundaryData {
        nf_hash: boundary.normal_form().hash(),
        cycles: perm.cycles(),
        cycle_type: perm.cycle_type(),
        exponent_sum: boundary.exponent_sum(),
        linking,
        front,
        back,
        boundary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{equal, half_twist};
    use crate::wiring::parse;

    fn w(n: usize, s: &str) -> BraidWord {
        BraidWord::parse(n, s).unwrap()
    }

    fn nested() -> WiringDiagram {
        parse("strands 4; comps A:1,4 B:2,3; TN[1,4]; (I[3,4])^3; I[1,4]").unwrap()
    }

    #[test]
    fn example_front_back_boundary() {
        let d = nested();
        let f = front(&d).unwrap();
        assert_eq!(f.to_string(), "s1' s3' s3 s3 s3 s1 s2 s3 s1 s2 s1");
        let b = back(&d).unwrap();
        let d14 = half_twist(4, 1, 4).unwrap();
        let expected_back = w(4, "s2' s1' s3' s2' s3' s3' s3'").compose(&d14.inverse()).unwrap();
        assert_eq!(b, expected_back);
        let inv_back = d14.compose(&w(4, "s3 s3 s3 s2 s3 s1 s2")).unwrap();
        assert!(equal(&b.inverse(), &inv_back));
        let expected = inv_back.compose(&w(4, "s1' s3' s3 s3 s3")).unwrap().compose(&d14).unwrap();
        assert!(equal(&boundary_braid(&d).unwrap(), &expected));
    }

    #[test]
    fn example_invariants() {
        let inv = boundary_invariants(&nested()).unwrap();
        assert_eq!(inv.linking.lk(0, 1), 7);
        assert_eq!(inv.exponent_sum, 20);
        assert_eq!(inv.linking.self_writhe(0), 3);
        assert_eq!(inv.linking.self_writhe(1), 3);
        assert_eq!(inv.cycle_type, [2, 2]);
    }

    #[test]
    fn small_cases() {
        let empty = parse("strands 3; comps A:1 B:2 C:3;").unwrap();
        assert!(boundary_braid(&empty).unwrap().is_empty());
        for n in 2..=6 {
            let d = parse(&alloc::format!("strands {n}; comps A:{}; I[1,{n}]", (1..=n).map(|x| x.to_string()).collect::<Vec<_>>().join(","))).unwrap();
            let d1n = half_twist(n, 1, n).unwrap();
            assert_eq!(front(&d).unwrap(), d1n);
            assert!(equal(&boundary_braid(&d).unwrap(), &d1n.compose(&d1n).unwrap()));
        }
        let t = parse("strands 2; comps A:1,2; T[1]").unwrap();
        assert_eq!(back(&t).unwrap(), w(2, "s1'"));
        assert_eq!(boundary_braid(&t).unwrap(), w(2, "s1"));
    }

    #[test]
    fn braid_only_diagram_has_trivial_boundary() {
        let d = parse("strands 4; comps A:1,2,3,4; s1; s3'; s2; s2; s1'").unwrap();
        assert!(equal(&boundary_braid(&d).unwrap(), &BraidWord::identity(4)));
    }

    #[test]
    fn invalid_is_rejected() {
        let d = parse("strands 2; comps A:1 B:2; T[1]").unwrap();
        assert!(matches!(front(&d), Err(BoundaryError::Invalid(_))));
    }

    use alloc::string::ToString;
}
