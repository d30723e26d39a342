//! Braid words on `n` strands, half twists, the word problem and closure
//! invariants.
//!
//! Generators are 1-based: `σ_i` exchanges the strands at positions `i` and
//! `i + 1`. Words are read left to right and are never reduced eagerly;
//! equality goes through [`NormalForm`].

mod garside;
mod linking;
mod perm;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use garside::NormalForm;
pub use linking::LinkingMatrix;
pub use perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("strand count mismatch: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },
    #[error("generator s{gen} out of range on {strands} strands")]
    GeneratorOutOfRange { gen: usize, strands: usize },
    #[error("a braid needs at least one strand")]
    NoStrands,
    #[error("half twist range [{low}, {high}] invalid on {strands} strands")]
    BadRange { low: usize, high: usize, strands: usize },
    #[error("cannot read braid letter `{0}`")]
    BadToken(String),
    #[error("component map has {got} entries for {strands} strands")]
    ChartLength { got: usize, strands: usize },
    #[error("closure permutation sends position {from} (component {from_comp}) to position {to} (component {to_comp})")]
    ComponentNotPreserved { from: usize, to: usize, from_comp: usize, to_comp: usize },
}

/// Serialized as `1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "i64", try_from = "i64")]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Self> {
        match v {
            1 => Some(Sign::Pos),
            -1 => Some(Sign::Neg),
            _ => None,
        }
    }
}

/// `σ_gen` or its inverse. Serialized as the pair `[gen, ±1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "(usize, i64)", try_from = "(usize, i64)")]
pub struct Letter {
    pub gen: usize,
    pub sign: Sign,
}

impl Letter {
    pub fn pos(gen: usize) -> Self {
        Self { gen, sign: Sign::Pos }
    }

    pub fn neg(gen: usize) -> Self {
        Self { gen, sign: Sign::Neg }
    }

    pub fn inverse(self) -> Self {
        Self { gen: self.gen, sign: self.sign.flip() }
    }
}

impl From<Sign> for i64 {
    fn from(s: Sign) -> Self {
        s.value()
    }
}

impl TryFrom<i64> for Sign {
    type Error = &'static str;

    fn try_from(v: i64) -> Result<Self, Self::Error> {
        Sign::from_value(v).ok_or("sign must be 1 or -1")
    }
}

impl From<Letter> for (usize, i64) {
    fn from(l: Letter) -> Self {
        (l.gen, l.sign.value())
    }
}

impl TryFrom<(usize, i64)> for Letter {
    type Error = &'static str;

    fn try_from((gen, sign): (usize, i64)) -> Result<Self, Self::Error> {
        if gen == 0 {
            return Err("generator indices are 1-based");
        }
        let sign = Sign::from_value(sign).ok_or("letter sign must be 1 or -1")?;
        Ok(Letter { gen, sign })
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Pos => write!(f, "s{}", self.gen),
            Sign::Neg => write!(f, "s{}'", self.gen),
        }
    }
}

impl FromStr for Letter {
    type Err = BraidError;

    fn from_str(tok: &str) -> Result<Self, Self::Err> {
        let bad = || BraidError::BadToken(tok.into());
        let body = tok.strip_prefix('s').ok_or_else(bad)?;
        let (digits, sign) = match body.strip_suffix('\'') {
            Some(d) => (d, Sign::Neg),
            None => (body, Sign::Pos),
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let gen: usize = digits.parse().map_err(|_| bad())?;
        if gen == 0 {
            return Err(bad());
        }
        Ok(Letter { gen, sign })
    }
}

/// A word in the standard generators of the braid group on `strands` strands.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawWord")]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

#[derive(Deserialize)]
struct RawWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl TryFrom<RawWord> for BraidWord {
    type Error = BraidError;

    fn try_from(raw: RawWord) -> Result<Self, Self::Error> {
        BraidWord::new(raw.strands, raw.letters)
    }
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::NoStrands);
        }
        if let Some(l) = letters.iter().find(|l| l.gen == 0 || l.gen >= strands) {
            return Err(BraidError::GeneratorOutOfRange { gen: l.gen, strands });
        }
        Ok(Self { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        assert!(strands > 0, "a braid needs at least one strand");
        Self { strands, letters: Vec::new() }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, letter: Letter) -> Result<(), BraidError> {
        if letter.gen == 0 || letter.gen >= self.strands {
            return Err(BraidError::GeneratorOutOfRange { gen: letter.gen, strands: self.strands });
        }
        self.letters.push(letter);
        Ok(())
    }

    /// Appends `other` in place; both words must live on the same strand count.
    pub fn extend_with(&mut self, other: &BraidWord) -> Result<(), BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch { left: self.strands, right: other.strands });
        }
        self.letters.extend_from_slice(&other.letters);
        Ok(())
    }

    /// Reversed letter sequence with every sign flipped.
    pub fn inverse(&self) -> Self {
        Self {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn compose(&self, other: &BraidWord) -> Result<Self, BraidError> {
        let mut out = self.clone();
        out.extend_with(other)?;
        Ok(out)
    }

    /// Cancels adjacent `σ σ⁻¹` pairs until none remain. No braid relations
    /// are used.
    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self { strands: self.strands, letters: out }
    }

    /// Parses the compact text form, e.g. `s3 s1' s2`. Blank text is the identity.
    pub fn parse(strands: usize, text: &str) -> Result<Self, BraidError> {
        let letters = text
            .split_whitespace()
            .map(Letter::from_str)
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(strands, letters)
    }

    pub fn permutation(&self) -> Permutation {
        permutation(self)
    }

    pub fn exponent_sum(&self) -> i64 {
        exponent_sum(self)
    }

    pub fn normal_form(&self) -> NormalForm {
        normal_form(self)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

pub fn compose(w1: &BraidWord, w2: &BraidWord) -> Result<BraidWord, BraidError> {
    w1.compose(w2)
}

/// Canonical staircase word for the positive half twist `Δ_{i,j}`:
/// `σ_i σ_{i+1} … σ_{j-1} · σ_i … σ_{j-2} · … · σ_i`.
pub fn half_twist(n: usize, i: usize, j: usize) -> Result<BraidWord, BraidError> {
    if n == 0 || i == 0 || i > j || j > n {
        return Err(BraidError::BadRange { low: i, high: j, strands: n });
    }
    let mut letters = Vec::with_capacity((j - i + 1) * (j - i) / 2);
    for top in (i..j).rev() {
        letters.extend((i..=top).map(Letter::pos));
    }
    Ok(BraidWord { strands: n, letters })
}

pub fn normal_form(w: &BraidWord) -> NormalForm {
    garside::normal_form(w)
}

/// Decides equality in the braid group. Words on different strand counts are
/// never equal.
pub fn equal(w1: &BraidWord, w2: &BraidWord) -> bool {
    w1.strands == w2.strands && normal_form(w1) == normal_form(w2)
}

/// Underlying permutation: `images[p]` is the final position of the strand
/// starting at `p`.
pub fn permutation(w: &BraidWord) -> Permutation {
    // strand_at[q] = starting position of the strand now at q
    let mut strand_at: Vec<usize> = (0..w.strands).collect();
    for l in &w.letters {
        strand_at.swap(l.gen - 1, l.gen);
    }
    Permutation::from_images_unchecked(strand_at).inverse()
}

pub fn exponent_sum(w: &BraidWord) -> i64 {
    w.letters.iter().map(|l| l.sign.value()).sum()
}

/// Linking matrix of the closure of `w`; `comp[p]` is the component of the
/// strand at (0-based) position `p` on the left edge.
pub fn linking_matrix(w: &BraidWord, comp: &[usize]) -> Result<LinkingMatrix, BraidError> {
    linking::linking_matrix(w, comp)
}

/// Witness check: `w2 == c⁻¹ · w1 · c` in the braid group.
pub fn conjugate_check(w1: &BraidWord, w2: &BraidWord, c: &BraidWord) -> Result<bool, BraidError> {
    if w1.strands != w2.strands {
        return Err(BraidError::StrandMismatch { left: w1.strands, right: w2.strands });
    }
    if w1.strands != c.strands {
        return Err(BraidError::StrandMismatch { left: w1.strands, right: c.strands });
    }
    let conj = c.inverse().compose(w1)?.compose(c)?;
    Ok(equal(&conj, w2))
}
