//! Equality of short braid words by relation rewriting alone, with no
//! normal forms or permutation braids involved.
//!
//! Two procedures, both made of braid relations and free reductions:
//!
//! * a bounded search: the nodes are the freely reduced words of length at
//!   most `max_len`, joined when one arises from the other by replacing
//!   half of a cyclic rotation of an Artin relator (or its inverse) by the
//!   inverse of the other half and reducing freely;
//! * handle reduction: `σ_i^e v σ_i^{-e}`, with no `σ_i` or `σ_{i-1}` in `v`,
//!   becomes `v` with every `σ_{i+1}^d` replaced by `σ_{i+1}^{-e} σ_i^d
//!   σ_{i+1}^e`, always reducing the handle that ends leftmost. A word is
//!   trivial iff this ends in the empty word.

use braidwork_core::{BraidWord, Letter, NormalForm};

/// Letters coded `0..g` for `σ_1 … σ_g` and `g..2g` for their inverses.
fn inverse(c: u8, g: usize) -> u8 {
    let c = c as usize;
    (if c < g { c + g } else { c - g }) as u8
}

/// The Artin relators of `B_n`.
pub fn artin_relators(n: usize) -> Vec<Vec<u8>> {
    let g = n - 1;
    let p = |i: usize| (i - 1) as u8;
    let m = |i: usize| (i - 1 + g) as u8;
    let mut out = Vec::new();
    for i in 1..n {
        for j in i + 1..n {
            out.push(if j - i >= 2 {
                vec![p(i), p(j), m(i), m(j)]
            } else {
                vec![p(i), p(j), p(i), m(j), m(i), m(j)]
            });
        }
    }
    out
}

/// Replacement words keyed by the subword they replace.
struct Trie {
    children: Vec<[u32; 6]>,
    replacements: Vec<Vec<Vec<u8>>>,
}

impl Trie {
    fn new() -> Self {
        Self { children: vec![[u32::MAX; 6]], replacements: vec![Vec::new()] }
    }

    fn insert(&mut self, key: &[u8], value: Vec<u8>) {
        let mut node = 0;
        for &c in key {
            if self.children[node][c as usize] == u32::MAX {
                self.children[node][c as usize] = self.children.len() as u32;
                self.children.push([u32::MAX; 6]);
                self.replacements.push(Vec::new());
            }
            node = self.children[node][c as usize] as usize;
        }
        if !self.replacements[node].contains(&value) {
            self.replacements[node].push(value);
        }
    }
}

pub struct RewriteClasses {
    pub strands: usize,
    pub max_len: usize,
    alphabet: usize,
    offsets: Vec<u64>,
    parent: Vec<u32>,
    rules: Trie,
}

impl RewriteClasses {
    pub fn build(strands: usize, max_len: usize) -> Self {
        assert!((2..=4).contains(&strands));
        let g = strands - 1;
        let alphabet = 2 * g;
        let mut offsets = vec![0u64, 1];
        let mut count = alphabet as u64;
        for _ in 1..=max_len {
            offsets.push(offsets.last().unwrap() + count);
            count *= alphabet as u64 - 1;
        }
        let total = offsets[max_len + 1];
        assert!(total < u32::MAX as u64);

        // Unbalanced splits follow from balanced ones plus free reduction
        // without ever lengthening the word.
        let mut rules = Trie::new();
        for r in artin_relators(strands) {
            let inv: Vec<u8> = r.iter().rev().map(|&c| inverse(c, g)).collect();
            for word in [&r, &inv] {
                let len = word.len();
                for rot in 0..len {
                    let cyc: Vec<u8> = (0..len).map(|t| word[(rot + t) % len]).collect();
                    let (p, q) = cyc.split_at(len / 2);
                    rules.insert(p, q.iter().rev().map(|&c| inverse(c, g)).collect());
                }
            }
        }

        let mut classes = Self { strands, max_len, alphabet, offsets, parent: (0..total as u32).collect(), rules };
        classes.join_all();
        classes
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    /// Number of freely reduced words of length at most `len`.
    pub fn words_up_to(&self, len: usize) -> u64 {
        self.offsets[len + 1]
    }

    fn first_word(&self, len: usize) -> Vec<u8> {
        let g = self.alphabet / 2;
        let mut w = vec![0u8; len];
        for t in 1..len {
            w[t] = if inverse(w[t - 1], g) == 0 { 1 } else { 0 };
        }
        w
    }

    fn join_all(&mut self) {
        let g = self.alphabet / 2;
        let mut next = Vec::with_capacity(2 * self.max_len);
        let mut pending: Vec<u32> = Vec::new();
        let mut idx = 0u64;
        for len in 0..=self.max_len {
            let mut w = self.first_word(len);
            loop {
                pending.clear();
                for s in 0..len {
                    let mut node = 0usize;
                    for e in s..len {
                        let child = self.rules.children[node][w[e] as usize];
                        if child == u32::MAX {
                            break;
                        }
                        node = child as usize;
                        for q in &self.rules.replacements[node] {
                            next.clear();
                            for &x in w[..s].iter().chain(q).chain(&w[e + 1..]) {
                                if next.last() == Some(&inverse(x, g)) {
                                    next.pop();
                                } else {
                                    next.push(x);
                                }
                            }
                            let other = self.rank(&next);
                            if next.len() < len || other < idx {
                                pending.push(other as u32);
                            }
                        }
                    }
                }
                for k in 0..pending.len() {
                    self.union(idx as u32, pending[k]);
                }
                idx += 1;
                if !self.advance(&mut w) {
                    break;
                }
            }
        }
        debug_assert_eq!(idx, self.parent.len() as u64);
    }

    /// Next freely reduced word of the same length in rank order.
    fn advance(&self, w: &mut [u8]) -> bool {
        let g = self.alphabet / 2;
        let top = self.alphabet as u8;
        let mut t = w.len();
        loop {
            if t == 0 {
                return false;
            }
            t -= 1;
            let mut c = w[t] + 1;
            if t > 0 && c == inverse(w[t - 1], g) {
                c += 1;
            }
            if c < top {
                w[t] = c;
                break;
            }
        }
        for u in t + 1..w.len() {
            w[u] = if inverse(w[u - 1], g) == 0 { 1 } else { 0 };
        }
        true
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }

    /// Class representative: the least node index in the class.
    pub fn class_of(&mut self, idx: u64) -> u64 {
        self.find(idx as u32) as u64
    }

    pub fn rank(&self, w: &[u8]) -> u64 {
        let g = self.alphabet / 2;
        let mut r = 0u64;
        for (t, &c) in w.iter().enumerate() {
            if t == 0 {
                r = c as u64;
            } else {
                let forbidden = inverse(w[t - 1], g);
                let digit = if c < forbidden { c } else { c - 1 };
                r = r * (self.alphabet as u64 - 1) + digit as u64;
            }
        }
        self.offsets[w.len()] + r
    }

    pub fn unrank(&self, idx: u64, w: &mut Vec<u8>) {
        let g = self.alphabet / 2;
        let len = self.offsets.partition_point(|&o| o <= idx) - 1;
        let mut r = idx - self.offsets[len];
        let mut digits = vec![0u8; len];
        for t in (1..len).rev() {
            digits[t] = (r % (self.alphabet as u64 - 1)) as u8;
            r /= self.alphabet as u64 - 1;
        }
        w.clear();
        for t in 0..len {
            if t == 0 {
                w.push(r as u8);
            } else {
                let forbidden = inverse(w[t - 1], g);
                let d = digits[t];
                w.push(if d < forbidden { d } else { d + 1 });
            }
        }
    }

    pub fn braid(&self, w: &[u8]) -> BraidWord {
        let g = self.alphabet / 2;
        let letters = w
            .iter()
            .map(|&c| if (c as usize) < g { Letter::pos(c as usize + 1) } else { Letter::neg(c as usize - g + 1) })
            .collect();
        BraidWord::new(self.strands, letters).unwrap()
    }
}

/// Handle reduction of a word in signed generators (`±i` for `σ_i^{±1}`).
/// `None` when `max_steps` reductions do not finish.
pub fn handle_reduce(word: &[i32], max_steps: usize) -> Option<Vec<i32>> {
    let mut w = word.to_vec();
    for _ in 0..max_steps {
        let Some((p, q)) = leftmost_handle(&w) else { return Some(w) };
        let i = w[p].abs();
        let e = w[p].signum();
        let mut out = Vec::with_capacity(w.len() + 2 * (q - p));
        out.extend_from_slice(&w[..p]);
        for &x in &w[p + 1..q] {
            if x.abs() == i + 1 {
                out.extend_from_slice(&[-e * (i + 1), x.signum() * i, e * (i + 1)]);
            } else {
                out.push(x);
            }
        }
        out.extend_from_slice(&w[q + 1..]);
        w = out;
    }
    None
}

fn leftmost_handle(w: &[i32]) -> Option<(usize, usize)> {
    for q in 1..w.len() {
        let i = w[q].abs();
        if let Some(p) = (0..q).rev().find(|&p| w[p].abs() == i || w[p].abs() == i - 1) {
            if w[p] == -w[q] {
                return Some((p, q));
            }
        }
    }
    None
}

pub fn signed(w: &BraidWord) -> Vec<i32> {
    w.letters().iter().map(|l| l.gen as i32 * l.sign.value() as i32).collect()
}

/// Whether `u = v`, decided by handle reduction of `u v⁻¹`.
pub fn handle_equal(u: &BraidWord, v: &BraidWord) -> bool {
    let mut w = signed(u);
    w.extend(signed(v).iter().rev().map(|x| -x));
    handle_reduce(&w, 1_000_000).expect("handle reduction terminates").is_empty()
}

/// Exact injective packing of a normal form on at most 4 strands with at
/// most 10 factors: Δ power, factor count, then one Lehmer rank per factor.
pub fn pack(nf: &NormalForm) -> u64 {
    assert!(nf.strand_count <= 4 && nf.factors.len() <= 10 && nf.delta_power.abs() < 32);
    let mut x = (nf.delta_power + 32) as u64;
    x = (x << 4) | nf.factors.len() as u64;
    for f in &nf.factors {
        let im = f.images();
        let mut lehmer = 0u64;
        for i in 0..im.len() {
            let smaller = im[i + 1..].iter().filter(|&&y| y < im[i]).count() as u64;
            lehmer = lehmer * (im.len() - i) as u64 + smaller;
        }
        x = (x << 5) | lehmer;
    }
    x
}

#[derive(Debug, Default)]
pub struct Agreement {
    pub words: u64,
    pub classes: u64,
    /// Engine-equal pairs the bounded search left apart, settled by handle
    /// reduction.
    pub settled_by_handles: u64,
    pub disagreements: Vec<(BraidWord, BraidWord)>,
}

/// Compares `equal` with relation rewriting on every freely reduced word of
/// length at most `check_len`, searching up to `check_len + slack` letters.
pub fn compare(strands: usize, check_len: usize, slack: usize) -> Agreement {
    let mut classes = RewriteClasses::build(strands, check_len + slack);
    let total = classes.words_up_to(check_len);
    let mut out = Agreement { words: total, ..Agreement::default() };
    let mut packed = Vec::with_capacity(total as usize);
    for len in 0..=check_len {
        let mut w = classes.first_word(len);
        loop {
            packed.push(pack(&classes.braid(&w).normal_form()));
            if !classes.advance(&mut w) {
                break;
            }
        }
    }
    let word = |c: &RewriteClasses, i: u64| {
        let mut w = Vec::new();
        c.unrank(i, &mut w);
        c.braid(&w)
    };
    for idx in 0..total {
        let root = classes.class_of(idx);
        if packed[idx as usize] != packed[root as usize] {
            out.disagreements.push((word(&classes, idx), word(&classes, root)));
        }
    }
    let mut roots: Vec<(u64, u64)> =
        (0..total).filter(|&i| classes.class_of(i) == i).map(|i| (packed[i as usize], i)).collect();
    roots.sort_unstable();
    out.classes = u64::from(!roots.is_empty());
    for pair in roots.windows(2) {
        if pair[0].0 != pair[1].0 {
            out.classes += 1;
            continue;
        }
        let (u, v) = (word(&classes, pair[0].1), word(&classes, pair[1].1));
        if handle_equal(&u, &v) {
            out.settled_by_handles += 1;
        } else {
            out.disagreements.push((u, v));
        }
    }
    out
}
