use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{permutation, BraidError, BraidWord};

/// Pairwise linking numbers of the closure components, with self-writhe on
/// the diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinkingMatrix {
    /// Component ids, `0..k`.
    pub components: Vec<usize>,
    pub entries: Vec<Vec<i64>>,
}

impl LinkingMatrix {
    pub fn lk(&self, a: usize, b: usize) -> i64 {
        self.entries[a][b]
    }

    pub fn self_writhe(&self, a: usize) -> i64 {
        self.entries[a][a]
    }

    pub fn zero(components: usize) -> Self {
        Self {
            components: (0..components).collect(),
            entries: alloc::vec![alloc::vec![0; components]; components],
        }
    }
}

pub(super) fn linking_matrix(w: &BraidWord, comp: &[usize]) -> Result<LinkingMatrix, BraidError> {
    let n = w.strands();
    if comp.len() != n {
        return Err(BraidError::ChartLength { got: comp.len(), strands: n });
    }
    let perm = permutation(w);
    for p in 0..n {
        let q = perm.image(p);
        if comp[p] != comp[q] {
            return Err(BraidError::ComponentNotPreserved {
                from: p + 1,
                to: q + 1,
                from_comp: comp[p],
                to_comp: comp[q],
            });
        }
    }
    let k = comp.iter().copied().max().map_or(0, |m| m + 1);
    // signed crossing counts; off-diagonal entries count each crossing once per side
    let mut counts = alloc::vec![alloc::vec![0i64; k]; k];
    let mut strand_at: Vec<usize> = (0..n).collect();
    for l in w.letters() {
        let i = l.gen - 1;
        let (a, b) = (comp[strand_at[i]], comp[strand_at[i + 1]]);
        let s = l.sign.value();
        if a == b {
            counts[a][a] += s;
        } else {
            counts[a][b] += s;
            counts[b][a] += s;
        }
        strand_at.swap(i, i + 1);
    }
    for a in 0..k {
        for b in 0..k {
            if a != b {
                debug_assert!(counts[a][b] % 2 == 0, "odd crossing count between closed components");
                counts[a][b] /= 2;
            }
        }
    }
    Ok(LinkingMatrix { components: (0..k).collect(), entries: counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::half_twist;

    #[test]
    fn identity_is_zero() {
        let m = linking_matrix(&BraidWord::identity(4), &[0, 1, 1, 0]).unwrap();
        assert_eq!(m, LinkingMatrix::zero(2));
    }

    #[test]
    fn full_twist_links_every_pair() {
        let d = half_twist(3, 1, 3).unwrap();
        let full = d.compose(&d).unwrap();
        let m = linking_matrix(&full, &[0, 1, 2]).unwrap();
        assert_eq!(m.lk(0, 1), 1);
        assert_eq!(m.lk(1, 2), 1);
        assert_eq!(m.self_writhe(0), 0);
    }

    #[test]
    fn component_must_be_preserved() {
        let w = BraidWord::parse(2, "s1").unwrap();
        assert!(matches!(
            linking_matrix(&w, &[0, 1]),
            Err(BraidError::ComponentNotPreserved { .. })
        ));
        assert_eq!(linking_matrix(&w, &[0, 0]).unwrap().self_writhe(0), 1);
        assert!(matches!(linking_matrix(&w, &[0]), Err(BraidError::ChartLength { .. })));
    }
}
