//! Left-greedy (Garside) normal form over permutation braids.
//!
//! Every braid is written uniquely as `Δ^p · A_1 ⋯ A_r` where each `A_k` is a
//! permutation braid other than `1` and `Δ`, and every consecutive pair is
//! left-weighted: the starting set of `A_{k+1}` lies inside the finishing set
//! of `A_k`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{BraidWord, Letter, Permutation, Sign};

/// Canonical form of a braid; two words are equal in the braid group iff
/// their normal forms are identical.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NormalForm {
    pub strand_count: usize,
    pub delta_power: i64,
    pub factors: Vec<Permutation>,
}

/// A positive permutation braid, with both directions of its permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Simple {
    /// pos[p]: final position of the strand starting at p
    pos: Vec<usize>,
    /// inv[q]: starting position of the strand ending at q
    inv: Vec<usize>,
}

impl Simple {
    fn identity(n: usize) -> Self {
        let id: Vec<usize> = (0..n).collect();
        Self { pos: id.clone(), inv: id }
    }

    fn from_pos(pos: Vec<usize>) -> Self {
        let mut inv = alloc::vec![0; pos.len()];
        for (p, &q) in pos.iter().enumerate() {
            inv[q] = p;
        }
        Self { pos, inv }
    }

    fn n(&self) -> usize {
        self.pos.len()
    }

    fn is_identity(&self) -> bool {
        self.pos.iter().enumerate().all(|(p, &q)| p == q)
    }

    fn is_delta(&self) -> bool {
        let n = self.n();
        self.pos.iter().enumerate().all(|(p, &q)| q == n - 1 - p)
    }

    /// σ_i (0-based) is a left divisor.
    fn starts_with(&self, i: usize) -> bool {
        self.pos[i] > self.pos[i + 1]
    }

    /// σ_i (0-based) is a right divisor.
    fn ends_with(&self, i: usize) -> bool {
        self.inv[i] > self.inv[i + 1]
    }

    /// self := self · σ_i, valid when `!ends_with(i)`.
    fn push_right(&mut self, i: usize) {
        let (s, t) = (self.inv[i], self.inv[i + 1]);
        self.inv.swap(i, i + 1);
        self.pos[s] = i + 1;
        self.pos[t] = i;
    }

    /// self := σ_i · self, valid when `!starts_with(i)`.
    fn push_left(&mut self, i: usize) {
        self.pos.swap(i, i + 1);
        let (a, b) = (self.pos[i], self.pos[i + 1]);
        self.inv[a] = i;
        self.inv[b] = i + 1;
    }

    /// self := σ_i⁻¹ · self, valid when `starts_with(i)`.
    fn pop_left(&mut self, i: usize) {
        self.push_left(i);
    }

    /// τ(X) = Δ X Δ⁻¹, which relabels σ_i as σ_{n-i}.
    fn flip(&self) -> Self {
        let n = self.n();
        let pos = (0..n).map(|p| n - 1 - self.pos[n - 1 - p]).collect();
        Self::from_pos(pos)
    }

    /// The simple element `C` with `C · self = Δ`.
    fn left_complement(&self) -> Self {
        let n = self.n();
        Self::from_pos((0..n).map(|i| self.inv[n - 1 - i]).collect())
    }

    /// Reduced positive word for this permutation braid.
    fn word(&self) -> Vec<Letter> {
        // bubble the images into place; each swap is one crossing
        let mut cur = self.inv.clone();
        let mut rev = Vec::new();
        let n = self.n();
        loop {
            let mut swapped = false;
            for i in 0..n.saturating_sub(1) {
                if cur[i] > cur[i + 1] {
                    cur.swap(i, i + 1);
                    rev.push(Letter::pos(i + 1));
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        rev.reverse();
        rev
    }
}

/// Moves generators from the front of `b` to the back of `a` until the pair
/// is left-weighted. Returns whether anything moved.
fn left_weight(a: &mut Simple, b: &mut Simple) -> bool {
    let n = a.n();
    let mut changed = false;
    let mut i = 0;
    while i + 1 < n {
        if b.starts_with(i) && !a.ends_with(i) {
            a.push_right(i);
            b.pop_left(i);
            changed = true;
            i = i.saturating_sub(1);
        } else {
            i += 1;
        }
    }
    changed
}

fn is_left_weighted(a: &Simple, b: &Simple) -> bool {
    (0..a.n().saturating_sub(1)).all(|i| !b.starts_with(i) || a.ends_with(i))
}

/// Greedy grouping of a word into `Δ^{-neg} · X_1 ⋯ X_r` with simple `X_k`.
fn positive_factors(w: &BraidWord) -> (i64, Vec<Simple>) {
    let n = w.strands();
    // factors interleaved with Δ⁻¹ markers (None)
    let mut tokens: Vec<Option<Simple>> = Vec::new();
    let mut current: Option<(Sign, Simple)> = None;

    let flush = |tokens: &mut Vec<Option<Simple>>, cur: (Sign, Simple)| match cur.0 {
        Sign::Pos => tokens.push(Some(cur.1)),
        Sign::Neg => {
            // B⁻¹ = Δ⁻¹ · (Δ B⁻¹)
            tokens.push(None);
            tokens.push(Some(cur.1.left_complement()));
        }
    };

    for l in w.letters() {
        let i = l.gen - 1;
        match (&mut current, l.sign) {
            (Some((Sign::Pos, s)), Sign::Pos) if !s.ends_with(i) => s.push_right(i),
            // negative run B⁻¹ σ_i⁻¹ = (σ_i B)⁻¹
            (Some((Sign::Neg, s)), Sign::Neg) if !s.starts_with(i) => s.push_left(i),
            _ => {
                if let Some(cur) = current.take() {
                    flush(&mut tokens, cur);
                }
                let mut s = Simple::identity(n);
                s.push_right(i);
                current = Some((l.sign, s));
            }
        }
    }
    if let Some(cur) = current.take() {
        flush(&mut tokens, cur);
    }

    // X Δ⁻¹ = Δ⁻¹ τ(X): each factor is flipped once per marker to its right
    let mut markers_right = 0i64;
    let mut out = Vec::with_capacity(tokens.len());
    for t in tokens.into_iter().rev() {
        match t {
            None => markers_right += 1,
            Some(x) => out.push(if markers_right % 2 == 1 { x.flip() } else { x }),
        }
    }
    out.reverse();
    (markers_right, out)
}

pub(super) fn normal_form(w: &BraidWord) -> NormalForm {
    let n = w.strands();
    if n <= 1 {
        return NormalForm { strand_count: n, delta_power: 0, factors: Vec::new() };
    }
    let (neg, xs) = positive_factors(w);
    let mut fs: Vec<Simple> = Vec::with_capacity(xs.len());
    for x in xs {
        if x.is_identity() {
            continue;
        }
        fs.push(x);
        let mut j = fs.len() - 1;
        while j > 0 {
            let (left, right) = fs.split_at_mut(j);
            if !left_weight(&mut left[j - 1], &mut right[0]) {
                break;
            }
            j -= 1;
        }
        while fs.last().is_some_and(Simple::is_identity) {
            fs.pop();
        }
    }
    debug_assert!(fs.windows(2).all(|p| is_left_weighted(&p[0], &p[1])));
    let deltas = fs.iter().take_while(|f| f.is_delta()).count();
    let factors = fs[deltas..]
        .iter()
        .map(|f| Permutation::from_images_unchecked(f.pos.clone()))
        .collect();
    NormalForm { strand_count: n, delta_power: deltas as i64 - neg, factors }
}

impl NormalForm {
    pub fn is_identity(&self) -> bool {
        self.delta_power == 0 && self.factors.is_empty()
    }

    /// A word representing this normal form: `Δ^p` followed by reduced words of
    /// the factors.
    pub fn to_word(&self) -> BraidWord {
        let n = self.strand_count.max(1);
        let delta = Simple::from_pos((0..n).rev().collect()).word();
        let mut letters = Vec::new();
        for _ in 0..self.delta_power.unsigned_abs() {
            if self.delta_power > 0 {
                letters.extend_from_slice(&delta);
            } else {
                letters.extend(delta.iter().rev().map(|l| l.inverse()));
            }
        }
        for f in &self.factors {
            letters.extend(Simple::from_pos(f.images().to_vec()).word());
        }
        BraidWord::new(n, letters).expect("normal form letters are in range")
    }

    /// Compact canonical text, `n|p|f1;f2;…` with 1-based images.
    pub fn canonical_text(&self) -> String {
        let mut s = String::new();
        let _ = write!(s, "{}|{}|", self.strand_count, self.delta_power);
        for (k, f) in self.factors.iter().enumerate() {
            if k > 0 {
                s.push(';');
            }
            for (t, q) in f.images().iter().enumerate() {
                if t > 0 {
                    s.push(',');
                }
                let _ = write!(s, "{}", q + 1);
            }
        }
        s
    }

    /// Hex SHA-256 digest of [`Self::canonical_text`].
    pub fn hash(&self) -> String {
        crate::digest::sha256_hex(self.canonical_text().as_bytes())
    }
}
