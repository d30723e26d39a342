use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

/// A permutation of strand positions, stored 0-based.
///
/// `images[p]` is where the strand starting at position `p` ends up. Serialized
/// 1-based, as a list of images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { images: (0..n).collect() }
    }

    /// Full reversal `p -> n-1-p`, the permutation of the half twist on all strands.
    pub fn reversal(n: usize) -> Self {
        Self { images: (0..n).rev().collect() }
    }

    /// Builds from 0-based images; `None` unless the images form a bijection.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        for &q in &images {
            if q >= n || seen[q] {
                return None;
            }
            seen[q] = true;
        }
        Some(Self { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        Self { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, p: usize) -> usize {
        self.images[p]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(p, &q)| p == q)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = alloc::vec![0; self.images.len()];
        for (p, &q) in self.images.iter().enumerate() {
            inv[q] = p;
        }
        Self { images: inv }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Self {
        assert_eq!(self.len(), other.len(), "permutation size mismatch");
        Self { images: self.images.iter().map(|&q| other.images[q]).collect() }
    }

    /// Swap the strands currently at positions `i` and `i + 1` (0-based) after `self`.
    pub fn then_transpose(&mut self, i: usize) {
        for q in self.images.iter_mut() {
            if *q == i {
                *q = i + 1;
            } else if *q == i + 1 {
                *q = i;
            }
        }
    }

    /// Disjoint cycles of length at least two, 1-based, each starting at its
    /// smallest element, ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = alloc::vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p + 1);
                p = self.images[p];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Cycle lengths including fixed points, sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.images.len();
        let mut seen = alloc::vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                len += 1;
                p = self.images[p];
            }
            if len > 0 {
                lens.push(len);
            }
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images.into_iter().map(|q| q + 1).collect()
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = &'static str;

    fn try_from(one_based: Vec<usize>) -> Result<Self, Self::Error> {
        if one_based.contains(&0) {
            return Err("permutation images are 1-based");
        }
        Permutation::from_images(one_based.into_iter().map(|q| q - 1).collect())
            .ok_or("not a permutation")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("id");
        }
        for c in cycles {
            f.write_str("(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}
