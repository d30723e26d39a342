//! Pattern templates for every catalog variant.
//!
//! A rule instantiated from its parameters is a pair of element sequences
//! `lhs ↔ rhs`; forward rewrites `lhs` into `rhs`. Each variant also knows
//! how to guess its parameters from the elements at the cursor, so that
//! [`list_applicable`](super::list_applicable) can enumerate instances.

use alloc::vec;
use alloc::vec::Vec;

use super::{Direction, Guarantee, MoveKind};
use crate::braid::Sign;
use crate::wiring::Element;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Rule {
    pub lhs: Vec<Element>,
    pub rhs: Vec<Element>,
}

/// Where the rewritten window must sit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Anchor {
    Anywhere,
    Start,
    End,
}

pub(crate) type Build = fn(&[i64], &[Element]) -> Option<Rule>;
pub(crate) type Infer = fn(&[Element], usize, Direction) -> Vec<Vec<i64>>;

pub struct Variant {
    pub name: &'static str,
    pub guarantee: Guarantee,
    pub params: &'static [&'static str],
    /// Human-readable pattern, forward direction.
    pub pattern: &'static str,
    pub anchor: Anchor,
    pub(crate) build: Build,
    pub(crate) infer: Infer,
}

impl Variant {
    /// Both sides of the rule for `params`. `window` is only consulted by
    /// rules that take their elements from the diagram.
    pub fn instantiate(&self, params: &[i64], window: &[Element]) -> Option<(Vec<Element>, Vec<Element>)> {
        (self.build)(params, window).map(|r| (r.lhs, r.rhs))
    }
}

pub struct MoveSpec {
    pub kind: MoveKind,
    pub name: &'static str,
    pub description: &'static str,
    pub variants: &'static [Variant],
}

fn i(i: usize, j: usize) -> Element {
    Element::I { i, j }
}

fn x(i: usize, j: usize, k: usize) -> Element {
    Element::X { i, j, k }
}

fn t(i: usize) -> Element {
    Element::T { i }
}

fn tn(a: usize, b: usize) -> Element {
    Element::TN { a, b }
}

fn sp(i: usize) -> Element {
    Element::S { i, sign: Sign::Pos }
}

fn sn(i: usize) -> Element {
    Element::S { i, sign: Sign::Neg }
}

fn rule(lhs: Vec<Element>, rhs: Vec<Element>) -> Option<Rule> {
    Some(Rule { lhs, rhs })
}

/// Positive parameters only; anything else makes the rule inapplicable.
fn u<const N: usize>(p: &[i64]) -> Option<[usize; N]> {
    if p.len() != N {
        return None;
    }
    let mut out = [0; N];
    for (o, &v) in out.iter_mut().zip(p) {
        if v < 1 {
            return None;
        }
        *o = v as usize;
    }
    Some(out)
}

/// `Δ_{lo,hi}^{±1}` spelled as braid-letter elements.
fn delta(lo: usize, hi: usize, sign: Sign) -> Vec<Element> {
    let mut out = Vec::new();
    for top in (lo..hi).rev() {
        out.extend((lo..=top).map(sp));
    }
    if sign == Sign::Neg {
        invert_letters(&out)
    } else {
        out
    }
}

fn invert_letters(letters: &[Element]) -> Vec<Element> {
    letters
        .iter()
        .rev()
        .map(|e| match *e {
            Element::S { i, sign } => Element::S { i, sign: sign.flip() },
            other => other,
        })
        .collect()
}

fn fields(e: &Element) -> (usize, usize, usize) {
    match *e {
        Element::I { i, j } => (i, j, 0),
        Element::X { i, j, k } => (i, j, k),
        Element::T { i } => (i, 0, 0),
        Element::TN { a, b } => (a, b, 0),
        Element::S { i, .. } => (i, 0, 0),
    }
}

fn as_i(e: Option<&Element>) -> Option<(usize, usize)> {
    match e {
        Some(&Element::I { i, j }) => Some((i, j)),
        _ => None,
    }
}

fn as_x(e: Option<&Element>) -> Option<(usize, usize, usize)> {
    match e {
        Some(&Element::X { i, j, k }) => Some((i, j, k)),
        _ => None,
    }
}

fn as_tn(e: Option<&Element>) -> Option<(usize, usize)> {
    match e {
        Some(&Element::TN { a, b }) => Some((a, b)),
        _ => None,
    }
}

fn one(v: Option<Vec<i64>>) -> Vec<Vec<i64>> {
    v.into_iter().collect()
}

fn params(v: &[usize]) -> Vec<i64> {
    v.iter().map(|&x| x as i64).collect()
}

/// Rotation of a local picture by a half turn: the sequence is read
/// backwards and positions are reflected inside the support.
fn mirror(r: Rule) -> Rule {
    let all = r.lhs.iter().chain(r.rhs.iter());
    let lo = all.clone().map(|e| e.support().0).min().unwrap_or(1);
    let hi = all.map(|e| e.support().1).max().unwrap_or(1);
    let c = lo + hi;
    let flip = |e: &Element| match *e {
        Element::I { i, j } => Element::I { i: c - j, j: c - i },
        Element::X { i, j, k } => Element::X { i: c - k, j: c + j - i - k, k: c - i },
        Element::T { i } => Element::T { i: c - i - 1 },
        Element::TN { a, b } => Element::TN { a: c - b, b: c - a },
        Element::S { i, sign } => Element::S { i: c - i - 1, sign },
    };
    Rule {
        lhs: r.lhs.iter().rev().map(flip).collect(),
        rhs: r.rhs.iter().rev().map(flip).collect(),
    }
}

/// The symmetric form of a rule whose right side starts with braiding `P`:
/// `lhs = P·R` becomes `R = P⁻¹·lhs`.
fn symmetric(r: Rule) -> Rule {
    let n = r.rhs.iter().take_while(|e| e.is_braiding()).count();
    let mut rhs = invert_letters(&r.rhs[..n]);
    rhs.extend_from_slice(&r.lhs);
    Rule { lhs: r.rhs[n..].to_vec(), rhs }
}

fn enum_single(_: &[Element], strands: usize, _: Direction) -> Vec<Vec<i64>> {
    (1..=strands).map(|v| vec![v as i64]).collect()
}

fn enum_nest(_: &[Element], strands: usize, _: Direction) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for a in 1..=strands {
        let mut b = a + 1;
        while b <= strands {
            out.push(vec![a as i64, b as i64]);
            b += 2;
        }
    }
    out
}

fn enum_strand_nest(_: &[Element], strands: usize, _: Direction) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for a in 1..=strands {
        for h in 1..=strands {
            if a + 2 * h <= strands {
                out.push(vec![a as i64, h as i64]);
            }
        }
    }
    out
}

fn enum_letter(_: &[Element], strands: usize, _: Direction) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for g in 1..strands {
        out.push(vec![g as i64, 1]);
        out.push(vec![g as i64, -1]);
    }
    out
}

// M1

fn commute(_: &[i64], w: &[Element]) -> Option<Rule> {
    let (a, b) = (*w.first()?, *w.get(1)?);
    let (sa, sb) = (a.support(), b.support());
    if sa.1 < sb.0 || sb.1 < sa.0 {
        rule(vec![a, b], vec![b, a])
    } else {
        None
    }
}

fn no_params(_: &[Element], _: usize, _: Direction) -> Vec<Vec<i64>> {
    vec![Vec::new()]
}

// M2

fn x_split_top(p: &[i64], _: &[Element]) -> Option<Rule> {
    let [i, j, k, s] = u(p)?;
    (i < s && s <= j && j < k).then_some(())?;
    rule(vec![x(i, j, k)], vec![x(s, j, k), x(i, s - 1, s + k - j - 1)])
}

fn x_split_top_infer(w: &[Element], _: usize, dir: Direction) -> Vec<Vec<i64>> {
    match dir {
        Direction::Fwd => match as_x(w.first()) {
            Some((i, j, k)) => (i + 1..=j).map(|s| params(&[i, j, k, s])).collect(),
            None => Vec::new(),
        },
        Direction::Bwd => one(
            as_x(w.first()).zip(as_x(w.get(1))).map(|((s, j, k), (i, _, _))| params(&[i, j, k, s])),
        ),
    }
}

fn x_split_bottom(p: &[i64], _: &[Element]) -> Option<Rule> {
    let [i, j, k, s] = u(p)?;
    (i <= j && j < s && s < k).then_some(())?;
    rule(vec![x(i, j, k)], vec![x(i, j, s), x(i + s - j, s, k)])
}

fn x_split_bottom_infer(w: &[Element], _: usize, dir: Direction) -> Vec<Vec<i64>> {
    match dir {
        Direction::Fwd => match as_x(w.first()) {
            Some((i, j, k)) => (j + 1..k).map(|s| params(&[i, j, k, s])).collect(),
            None => Vec::new(),
        },
        Direction::Bwd => one(
            as_x(w.first()).zip(as_x(w.get(1))).map(|((i, j, s), (_, _, k))| params(&[i, j, k, s])),
        ),
    }
}

fn x_unit(p: &[i64], _: &[Element]) -> Option<Rule> {
    let [i] = u(p)?;
    rule(vec![x(i, i, i + 1)], vec![self::i(i, i + 1)])
}

fn first_index(w: &[Element], _: usize, _: Direction) -> Vec<Vec<i64>> {
    one(w.first().map(|e| params(&[fields(e).0])))
}

// M3

fn tn_peel(p: &[i64], _: &[Element]) -> Option<Rule> {
    let [a, b] = u(p)?;
    (b > a && (b - a + 1) % 2 == 0 && b - a + 1 >= 4).then_some(())?;
    let n = (b - a + 1) / 2;
    let mut rhs = vec![tn(a + 1, b - 1)];
    rhs.extend((a..a + n - 1).map(sn));
    rhs.extend((a + n..b).rev().map(sn));
    rhs.push(t(a + n - 1));
    rule(vec![tn(a, b)], rhs)
}

fn tn_peel_infer(w: &[Element], _: usize, dir: Direction) -> Vec<Vec<i64>> {
    one(as_tn(w.first()).and_then(|(a, b)| match dir {
        Direction::Fwd => Some(params(&[a, b])),
        Direction::Bwd => (a > 1).then(|| params(&[a - 1, b + 1])),
    }))
}

// M4

fn split_multi_check(p: &[i64]) -> Option<[usize; 3]> {
    let [i, j, k] = u(p)?;
    (i < j && j + 1 < k).then_some([i, j, k])
}

fn split_ii_x(p: &[i64], _: &[Element]) -> Option<Rule> {
    let [a, j, k] = split_multi_check(p)?;
    rule(vec![i(a, k)], vec![i(a, j), i(j + 1, k), x(a, j, k)])
}

fn split_x_ii(p: &[i64], _: &[Element]) -> Option<Rule> {
    let [a, j, k] = split_multi_check(p)?;
    rule(vec![i(a, k)], vec![x(a, j, k), i(a, a + k - j - 1), i(a + k - j, k)])
}

fn split_i_x_i(p: &[i64], _: &[Element]) -> Option<Rule> {
    let [a, j, k] = split_multi_check(p)?;
    rule(vec![i(a, k)], vec![i(a, j), x(a, j, k), i(a, a + k - j - 1)])
}

fn split_i_x_i_bottom(p: &[i64], _: &[Element]) -> Option<Rule> {
    let [a, j, k] = split_multi_check(p)?;
    rule(vec![i(a, k)], vec![i(j + 1, k), x(a, j, k), i(a + k - j, k)])
}

fn split_multi_infer(w: &[Element], _: usize, dir: Direction) -> Vec<Vec<i64>> {
    match dir {
        Direction::Fwd => match as_i(w.first()) {
            Some((a, k)) => (a + 1..k.saturating_sub(1)).map(|j| params(&[a, j, k])).collect(),
            None => Vec::new(),
        },
        Direction::Bwd => {
            let mut out: Vec<Vec<i64>> = Vec::new();
            for e in w.iter().take(3) {
                if let Element::X { i, j, k } = *e {
                    let c = params(&[i, j, k]);
                    if !out.contains(&c) {
                        out.push(c);
                    }
                }
            }
            out
        }
    }
}

// M5

fn split_one_check(p: &[i64]) -> Option<[usize; 2]> {
    let [a, j] = u(p)?;
    (j >= a + 2).then_some([a, j])
}

fn split_top_first(p: &[i64], _: &[Element]) -> Option<Rule> {
    let [a, j] = split_one_check(p)?;
    rule(vec![i(a, j)], vec![i(a + 1, j), x(a, a, j)])
}

fn split_top_last(p: &[i64], _: &[Element]) -> Option<Rule> {
    let [a, j] = split_one_check(p)?;
    rule(vec![i(a, j)], vec![x(a, a, j), i(a, j - 1)])
}

fn split_bottom_first(p: &[i64], _: &[Element]) -> Option<Rule> {
    let [a, j] = split_one_check(p)?;
    rule(vec![i(a, j)], vec![i(a, j - 1), x(a, j - 1, j)])
}

fn split_bottom_last(p: &[i64], _: &[Element]) -> Option<Rule> {
    let [a, j] = split_one_check(p)?;
    rule(vec![i(a, j)], vec![x(a, j - 1, j), i(a + 1, j)])
}

fn split_one_infer(w: &[Element], _: usize, dir: Direction) -> Vec<Vec<i64>> {
    match dir {
        Direction::Fwd => one(as_i(w.first()).map(|(a, j)| params(&[a, j]))),
        Direction::Bwd => {
            let mut out: Vec<Vec<i64>> = Vec::new();
            for e in w.iter().take(2) {
                if let Element::X { i, k, .. } = *e {
                    let c = params(&[i, k]);
                    if !out.contains(&c) {
                        out.push(c);
                    }
                }
            }
            out
        }
    }
}

// M6

fn split_one_mid(p: &[i64], _: &[Element]) -> Option<Rule> {
    let [a, j, k] = u(p)?;
    (a < j && j < k).then_some(())?;
    rule(vec![i(a, k)], vec![x(j, j, k), i(a, k - 1), x(a + k - j, k - 1, k)])
}

fn split_one_mid_infer(w: &[Element], _: usize, dir: Direction) -> Vec<Vec<i64>> {
    match dir {
        Direction::Fwd => match as_i(w.first()) {
            Some((a, k)) => (a + 1..k).map(|j| params(&[a, j, k])).collect(),
            None => Vec::new(),
        },
        Direction::Bwd => one(
            as_x(w.first()).zip(as_i(w.get(1))).map(|((j, _, k), (a, _))| params(&[a, j, k])),
        ),
    }
}

// M7

fn slide_top(p: &[i64], _: &[Element]) -> Option<Rule> {
    let [a, j, k] = u(p)?;
    (a < j && j < k).then_some(())?;
    rule(vec![i(a, j), x(a, j, k)], vec![x(a, j, k), i(a + k - j, k)])
}

fn slide_bottom(p: &[i64], _: &[Element]) -> Option<Rule> {
    let [a, j, k] = u(p)?;
    (a <= j && j + 1 < k).then_some(())?;
    rule(vec![i(j + 1, k), x(a, j, k)], vec![x(a, j, k), i(a, a + k - j - 1)])
}

fn slide_infer(w: &[Element], _: usize, dir: Direction) -> Vec<Vec<i64>> {
    let at = match dir {
        Direction::Fwd => 1,
        Direction::Bwd => 0,
    };
    one(as_x(w.get(at)).map(|(a, j, k)| params(&[a, j, k])))
}

// M8

fn switch_top(p: &[i64], _: &[Element]) -> Option<Rule> {
    let [a, j, k] = u(p)?;
    (a < j && j < k).then_some(())?;
    rule(vec![i(a, j), i(a, k)], vec![i(a, k), i(k + a - j, k)])
}

fn switch_top_infer(w: &[Element], _: usize, dir: Direction) -> Vec<Vec<i64>> {
    one(as_i(w.first()).zip(as_i(w.get(1))).and_then(|((a, b), (c, d))| match dir {
        Direction::Fwd => Some(params(&[a, b, d])),
        Direction::Bwd => (b + a).checked_sub(c).map(|j| params(&[a, j, b])),
    }))
}

fn switch_bottom(p: &[i64], _: &[Element]) -> Option<Rule> {
    let [a, j, k] = u(p)?;
    (a < j && j < k).then_some(())?;
    rule(vec![i(j, k), i(a, k)], vec![i(a, k), i(a, a + k - j)])
}

fn switch_bottom_infer(w: &[Element], _: usize, dir: Direction) -> Vec<Vec<i64>> {
    one(as_i(w.first()).zip(as_i(w.get(1))).and_then(|((a, b), (c, d))| match dir {
        Direction::Fwd => Some(params(&[c, a, b])),
        Direction::Bwd => (a + b).checked_sub(d).map(|j| params(&[a, j, b])),
    }))
}

// M9

fn swap_double(p: &[i64], _: &[Element]) -> Option<Rule> {
    let [a] = u(p)?;
    rule(vec![i(a, a + 1), t(a)], vec![t(a), i(a, a + 1)])
}

fn swap_nest(p: &[i64], _: &[Element]) -> Option<Rule> {
    let [a, b] = u(p)?;
    (b > a && (b - a + 1) % 2 == 0).then_some(())?;
    rule(vec![tn(a, b), i(a, b)], vec![i(a, b), tn(a, b)])
}

fn swap_nest_infer(w: &[Element], _: usize, _: Direction) -> Vec<Vec<i64>> {
    one(w.first().map(|e| {
        let (a, b, _) = fields(e);
        params(&[a, b])
    }))
}

// M10

fn t_pass(p: &[i64], _: &[Element]) -> Option<Rule> {
    let [a] = u(p)?;
    rule(vec![t(a), i(a + 1, a + 2)], vec![sp(a + 1), sn(a), t(a + 1), i(a, a + 1)])
}

fn t_pass_sym(p: &[i64], w: &[Element]) -> Option<Rule> {
    t_pass(p, w).map(symmetric)
}

fn t_pass_mirror(p: &[i64], w: &[Element]) -> Option<Rule> {
    t_pass(p, w).map(mirror)
}

fn t_pass_mirror_sym(p: &[i64], w: &[Element]) -> Option<Rule> {
    t_pass_sym(p, w).map(mirror)
}

// M11

fn nest_halves(p: &[i64]) -> Option<(usize, usize, usize)> {
    let [a, b] = u(p)?;
    (b > a && (b - a + 1) % 2 == 0 && b - a + 1 >= 4).then(|| (a, b, (b - a + 1) / 2))
}

fn tn_pass_multi(p: &[i64], _: &[Element]) -> Option<Rule> {
    let (a, b, n) = nest_halves(p)?;
    let mut rhs = delta(a, a + n - 1, Sign::Pos);
    rhs.extend(delta(a + n, b, Sign::Neg));
    rhs.push(tn(a, b));
    rhs.push(i(a + n, b));
    rule(vec![tn(a, b), i(a, a + n - 1)], rhs)
}

fn tn_pass_multi_sym(p: &[i64], w: &[Element]) -> Option<Rule> {
    tn_pass_multi(p, w).map(symmetric)
}

fn tn_pass_multi_mirror(p: &[i64], w: &[Element]) -> Option<Rule> {
    tn_pass_multi(p, w).map(mirror)
}

fn tn_pass_multi_mirror_sym(p: &[i64], w: &[Element]) -> Option<Rule> {
    tn_pass_multi_sym(p, w).map(mirror)
}

// M12

fn tn_pass_strand(p: &[i64], _: &[Element]) -> Option<Rule> {
    let [a, h] = u(p)?;
    let mut lhs = vec![tn(a, a + 2 * h - 1)];
    lhs.extend((a + h..a + 2 * h).rev().map(|q| i(q, q + 1)));
    let mut rhs: Vec<Element> = (a + h..a + 2 * h).rev().map(sp).collect();
    rhs.extend((a..a + h).rev().map(sn));
    rhs.push(tn(a + 1, a + 2 * h));
    rhs.extend((a..a + h).map(|q| i(q, q + 1)));
    rule(lhs, rhs)
}

fn tn_pass_strand_sym(p: &[i64], w: &[Element]) -> Option<Rule> {
    tn_pass_strand(p, w).map(symmetric)
}

fn tn_pass_strand_mirror(p: &[i64], w: &[Element]) -> Option<Rule> {
    tn_pass_strand(p, w).map(mirror)
}

fn tn_pass_strand_mirror_sym(p: &[i64], w: &[Element]) -> Option<Rule> {
    tn_pass_strand_sym(p, w).map(mirror)
}

// M13

fn hurwitz(p: &[i64], _: &[Element]) -> Option<Rule> {
    let [a] = u(p)?;
    rule(vec![t(a), i(a + 1, a + 2)], vec![i(a + 1, a + 2), sp(a + 1), t(a), sn(a + 1)])
}

fn hurwitz_sym(p: &[i64], _: &[Element]) -> Option<Rule> {
    let [a] = u(p)?;
    rule(vec![i(a + 1, a + 2), t(a)], vec![sn(a + 1), t(a), i(a + 1, a + 2), sp(a + 1)])
}

fn hurwitz_mirror(p: &[i64], w: &[Element]) -> Option<Rule> {
    hurwitz(p, w).map(mirror)
}

fn hurwitz_mirror_sym(p: &[i64], w: &[Element]) -> Option<Rule> {
    hurwitz_sym(p, w).map(mirror)
}

// M14

fn side_swap(p: &[i64], _: &[Element]) -> Option<Rule> {
    let (a, b, n) = nest_halves(p)?;
    let mut rhs = vec![i(a, a + n - 1)];
    rhs.extend(delta(a, a + n - 1, Sign::Pos));
    rhs.push(tn(a, b));
    rhs.extend(delta(a, a + n - 1, Sign::Neg));
    rule(vec![tn(a, b), i(a, a + n - 1)], rhs)
}

fn side_swap_sym(p: &[i64], _: &[Element]) -> Option<Rule> {
    let (a, b, n) = nest_halves(p)?;
    let mut rhs = delta(a, a + n - 1, Sign::Neg);
    rhs.push(tn(a, b));
    rhs.push(i(a, a + n - 1));
    rhs.extend(delta(a, a + n - 1, Sign::Pos));
    rule(vec![i(a, a + n - 1), tn(a, b)], rhs)
}

fn side_swap_mirror(p: &[i64], w: &[Element]) -> Option<Rule> {
    side_swap(p, w).map(mirror)
}

fn side_swap_mirror_sym(p: &[i64], w: &[Element]) -> Option<Rule> {
    side_swap_sym(p, w).map(mirror)
}

// M15

fn slide_sigma(p: &[i64], sign: Sign) -> Option<Rule> {
    let [a, j, k] = u(p)?;
    (a <= j && j < k).then_some(())?;
    let s = |g| Element::S { i: g, sign };
    rule(vec![s(j), i(a, k)], vec![i(a, k), s(a + k - j - 1)])
}

fn slide_sigma_pos(p: &[i64], _: &[Element]) -> Option<Rule> {
    slide_sigma(p, Sign::Pos)
}

fn slide_sigma_neg(p: &[i64], _: &[Element]) -> Option<Rule> {
    slide_sigma(p, Sign::Neg)
}

fn slide_sigma_infer(w: &[Element], _: usize, dir: Direction) -> Vec<Vec<i64>> {
    let (e0, e1) = match (w.first(), w.get(1)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Vec::new(),
    };
    match (dir, *e0, *e1) {
        (Direction::Fwd, Element::S { i: j, .. }, Element::I { i: a, j: k }) => vec![params(&[a, j, k])],
        (Direction::Bwd, Element::I { i: a, j: k }, Element::S { i: g, .. }) => {
            one((a + k).checked_sub(g + 1).map(|j| params(&[a, j, k])))
        }
        _ => Vec::new(),
    }
}

// M16, M17

fn trim(p: &[i64], _: &[Element]) -> Option<Rule> {
    let (&g, &s) = (p.first()?, p.get(1)?);
    if p.len() != 2 || g < 1 {
        return None;
    }
    let sign = Sign::from_value(s)?;
    rule(vec![Element::S { i: g as usize, sign }], Vec::new())
}

fn trim_infer(w: &[Element], strands: usize, dir: Direction) -> Vec<Vec<i64>> {
    match dir {
        Direction::Fwd => match w.first() {
            Some(&Element::S { i, sign }) => vec![vec![i as i64, sign.value()]],
            _ => Vec::new(),
        },
        Direction::Bwd => enum_letter(w, strands, dir),
    }
}

const fn v(
    name: &'static str,
    guarantee: Guarantee,
    params: &'static [&'static str],
    pattern: &'static str,
    build: Build,
    infer: Infer,
) -> Variant {
    Variant { name, guarantee, params, pattern, anchor: Anchor::Anywhere, build, infer }
}

use Guarantee::{Conj, Exact, Word};

pub(crate) static TABLE: [MoveSpec; 17] = [
        MoveSpec {
            kind: MoveKind::M1,
            name: "COMMUTE",
            description: "commute two adjacent elements on disjoint strands",
            variants: &[v("swap", Word, &[], "A B <-> B A", commute, no_params)],
        },
        MoveSpec {
            kind: MoveKind::M2,
            name: "X_SPLIT",
            description: "split or merge a grid of double points",
            variants: &[
                v("top", Exact, &["i", "j", "k", "s"], "X(i,j,k) <-> X(s,j,k) X(i,s-1,s+k-j-1)", x_split_top, x_split_top_infer),
                v("bottom", Word, &["i", "j", "k", "s"], "X(i,j,k) <-> X(i,j,s) X(i+s-j,s,k)", x_split_bottom, x_split_bottom_infer),
                v("unit", Exact, &["i"], "X(i,i,i+1) <-> I(i,i+1)", x_unit, first_index),
            ],
        },
        MoveSpec {
            kind: MoveKind::M3,
            name: "TN_PEEL",
            description: "separate the innermost tangency from a tangency nest",
            variants: &[v(
                "peel",
                Word,
                &["a", "b"],
                "TN(a,b) <-> TN(a+1,b-1) s_top' s_bot' T(a+n-1)",
                tn_peel,
                tn_peel_infer,
            )],
        },
        MoveSpec {
            kind: MoveKind::M4,
            name: "SPLIT_MULTI",
            description: "split a multipoint into two multipoints and a grid",
            variants: &[
                v("ii_x", Word, &["i", "j", "k"], "I(i,k) <-> I(i,j) I(j+1,k) X(i,j,k)", split_ii_x, split_multi_infer),
                v("x_ii", Word, &["i", "j", "k"], "I(i,k) <-> X(i,j,k) I(i,i+k-j-1) I(i+k-j,k)", split_x_ii, split_multi_infer),
                v("i_x_i", Word, &["i", "j", "k"], "I(i,k) <-> I(i,j) X(i,j,k) I(i,i+k-j-1)", split_i_x_i, split_multi_infer),
                v(
                    "i_x_i_bottom",
                    Word,
                    &["i", "j", "k"],
                    "I(i,k) <-> I(j+1,k) X(i,j,k) I(i+k-j,k)",
                    split_i_x_i_bottom,
                    split_multi_infer,
                ),
            ],
        },
        MoveSpec {
            kind: MoveKind::M5,
            name: "SPLIT_ONE",
            description: "move one outer strand off a multipoint",
            variants: &[
                v("top_first", Word, &["i", "j"], "I(i,j) <-> I(i+1,j) X(i,i,j)", split_top_first, split_one_infer),
                v("top_last", Word, &["i", "j"], "I(i,j) <-> X(i,i,j) I(i,j-1)", split_top_last, split_one_infer),
                v("bottom_first", Word, &["i", "j"], "I(i,j) <-> I(i,j-1) X(i,j-1,j)", split_bottom_first, split_one_infer),
                v("bottom_last", Word, &["i", "j"], "I(i,j) <-> X(i,j-1,j) I(i+1,j)", split_bottom_last, split_one_infer),
            ],
        },
        MoveSpec {
            kind: MoveKind::M6,
            name: "SPLIT_ONE_MID",
            description: "move a middle strand off a multipoint",
            variants: &[v(
                "mid",
                Word,
                &["i", "j", "k"],
                "I(i,k) <-> X(j,j,k) I(i,k-1) X(i+k-j,k-1,k)",
                split_one_mid,
                split_one_mid_infer,
            )],
        },
        MoveSpec {
            kind: MoveKind::M7,
            name: "SLIDE_I_PAST_X",
            description: "move a multipoint through a block of parallel strands",
            variants: &[
                v("top", Word, &["i", "j", "k"], "I(i,j) X(i,j,k) <-> X(i,j,k) I(i+k-j,k)", slide_top, slide_infer),
                v("bottom", Word, &["i", "j", "k"], "I(j+1,k) X(i,j,k) <-> X(i,j,k) I(i,i+k-j-1)", slide_bottom, slide_infer),
            ],
        },
        MoveSpec {
            kind: MoveKind::M8,
            name: "SWITCH_NESTED_I",
            description: "switch two multipoints when one uses a subset of the other's strands",
            variants: &[
                v("top", Word, &["i", "j", "k"], "I(i,j) I(i,k) <-> I(i,k) I(k+i-j,k)", switch_top, switch_top_infer),
                v("bottom", Word, &["i", "j", "k"], "I(j,k) I(i,k) <-> I(i,k) I(i,i+k-j)", switch_bottom, switch_bottom_infer),
            ],
        },
        MoveSpec {
            kind: MoveKind::M9,
            name: "SWAP_T_I",
            description: "interchange a tangency with an intersection of the same strands",
            variants: &[
                v("double", Word, &["i"], "I(i,i+1) T(i) <-> T(i) I(i,i+1)", swap_double, first_index),
                v("nest", Word, &["a", "b"], "TN(a,b) I(a,b) <-> I(a,b) TN(a,b)", swap_nest, swap_nest_infer),
            ],
        },
        MoveSpec {
            kind: MoveKind::M10,
            name: "T_PASS",
            description: "move a double point up or down through a tangency",
            variants: &[
                v("base", Word, &["i"], "T(i) I(i+1,i+2) <-> s(i+1) s(i)' T(i+1) I(i,i+1)", t_pass, enum_single),
                v("sym", Word, &["i"], "T(i+1) I(i,i+1) <-> s(i) s(i+1)' T(i) I(i+1,i+2)", t_pass_sym, enum_single),
                v("mirror", Word, &["i"], "half-turn rotation of base", t_pass_mirror, enum_single),
                v("mirror_sym", Word, &["i"], "half-turn rotation of sym", t_pass_mirror_sym, enum_single),
            ],
        },
        MoveSpec {
            kind: MoveKind::M11,
            name: "TN_PASS_MULTI",
            description: "move a multipoint up or down through a tangency nest",
            variants: &[
                v("base", Word, &["a", "b"], "TN(a,b) I_top <-> D_top D_bot' TN(a,b) I_bot", tn_pass_multi, enum_nest),
                v("sym", Word, &["a", "b"], "TN(a,b) I_bot <-> D_bot D_top' TN(a,b) I_top", tn_pass_multi_sym, enum_nest),
                v("mirror", Word, &["a", "b"], "half-turn rotation of base", tn_pass_multi_mirror, enum_nest),
                v("mirror_sym", Word, &["a", "b"], "half-turn rotation of sym", tn_pass_multi_mirror_sym, enum_nest),
            ],
        },
        MoveSpec {
            kind: MoveKind::M12,
            name: "TN_PASS_STRAND",
            description: "move a strand through a tangency nest",
            variants: &[
                v(
                    "base",
                    Word,
                    &["a", "n"],
                    "TN(a,a+2n-1) I_(a+2n-1)..I_(a+n) <-> s..s s'..s' TN(a+1,a+2n) I_a..I_(a+n-1)",
                    tn_pass_strand,
                    enum_strand_nest,
                ),
                v("sym", Word, &["a", "n"], "braiding moved to the other side of base", tn_pass_strand_sym, enum_strand_nest),
                v("mirror", Word, &["a", "n"], "half-turn rotation of base", tn_pass_strand_mirror, enum_strand_nest),
                v("mirror_sym", Word, &["a", "n"], "half-turn rotation of sym", tn_pass_strand_mirror_sym, enum_strand_nest),
            ],
        },
        MoveSpec {
            kind: MoveKind::M13,
            name: "T_HURWITZ",
            description: "switch the order of a double point and a tangency",
            variants: &[
                v("base", Word, &["i"], "T(i) I(i+1,i+2) <-> I(i+1,i+2) s(i+1) T(i) s(i+1)'", hurwitz, enum_single),
                v("sym", Word, &["i"], "I(i+1,i+2) T(i) <-> s(i+1)' T(i) I(i+1,i+2) s(i+1)", hurwitz_sym, enum_single),
                v("mirror", Word, &["i"], "half-turn rotation of base", hurwitz_mirror, enum_single),
                v("mirror_sym", Word, &["i"], "half-turn rotation of sym", hurwitz_mirror_sym, enum_single),
            ],
        },
        MoveSpec {
            kind: MoveKind::M14,
            name: "TN_SIDE_SWAP",
            description: "move a multipoint to the other side of a tangency nest",
            variants: &[
                v("base", Word, &["a", "b"], "TN(a,b) I_top <-> I_top D_top TN(a,b) D_top'", side_swap, enum_nest),
                v("sym", Word, &["a", "b"], "I_top TN(a,b) <-> D_top' TN(a,b) I_top D_top", side_swap_sym, enum_nest),
                v("mirror", Word, &["a", "b"], "half-turn rotation of base", side_swap_mirror, enum_nest),
                v("mirror_sym", Word, &["a", "b"], "half-turn rotation of sym", side_swap_mirror_sym, enum_nest),
            ],
        },
        MoveSpec {
            kind: MoveKind::M15,
            name: "SLIDE_SIGMA",
            description: "move a braid letter through a multipoint",
            variants: &[
                v("pos", Word, &["i", "j", "k"], "s(j) I(i,k) <-> I(i,k) s(i+k-j-1)", slide_sigma_pos, slide_sigma_infer),
                v("neg", Word, &["i", "j", "k"], "s(j)' I(i,k) <-> I(i,k) s(i+k-j-1)'", slide_sigma_neg, slide_sigma_infer),
            ],
        },
        MoveSpec {
            kind: MoveKind::M16,
            name: "EDGE_TRIM_LEFT",
            description: "remove a braid letter at the left edge",
            variants: &[Variant {
                name: "trim",
                guarantee: Exact,
                params: &["i", "sign"],
                pattern: "s(i)^sign at the start <-> nothing",
                anchor: Anchor::Start,
                build: trim,
                infer: trim_infer,
            }],
        },
        MoveSpec {
            kind: MoveKind::M17,
            name: "EDGE_TRIM_RIGHT",
            description: "remove a braid letter at the right edge",
            variants: &[Variant {
                name: "trim",
                guarantee: Conj,
                params: &["i", "sign"],
                pattern: "s(i)^sign at the end <-> nothing",
                anchor: Anchor::End,
                build: trim,
                infer: trim_infer,
            }],
        },
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mirror_of_t_pass() {
        let r = t_pass_mirror(&[2], &[]).unwrap();
        assert_eq!(r.lhs, vec![i(2, 3), t(3)]);
        assert_eq!(r.rhs, vec![i(3, 4), t(2), sn(3), sp(2)]);
        assert_eq!(mirror(mirror(t_pass(&[2], &[]).unwrap())), t_pass(&[2], &[]).unwrap());
    }

    #[test]
    fn symmetric_of_t_pass() {
        let r = t_pass_sym(&[1], &[]).unwrap();
        assert_eq!(r.lhs, vec![t(2), i(1, 2)]);
        assert_eq!(r.rhs, vec![sp(1), sn(2), t(1), i(2, 3)]);
    }

    #[test]
    fn mirrored_grid_keeps_block_sizes() {
        let r = mirror(Rule { lhs: vec![x(2, 3, 6)], rhs: vec![i(1, 2)] });
        assert_eq!(r.lhs, vec![x(1, 2, 5)]);
        assert_eq!(r.rhs, vec![i(5, 6)]);
        let r = mirror(Rule { lhs: vec![x(2, 3, 6)], rhs: vec![] });
        assert_eq!(r.lhs, vec![x(2, 3, 6)]);
    }

    #[test]
    fn peel_and_strand_templates() {
        let r = tn_peel(&[1, 6], &[]).unwrap();
        assert_eq!(r.rhs, vec![tn(2, 5), sn(1), sn(2), sn(5), sn(4), t(3)]);
        let r = tn_pass_strand(&[1, 2], &[]).unwrap();
        assert_eq!(r.lhs, vec![tn(1, 4), i(4, 5), i(3, 4)]);
        assert_eq!(r.rhs, vec![sp(4), sp(3), sn(2), sn(1), tn(2, 5), i(1, 2), i(2, 3)]);
    }

    #[test]
    fn split_multi_example() {
        let r = split_ii_x(&[1, 2, 4], &[]).unwrap();
        assert_eq!(r.rhs, vec![i(1, 2), i(3, 4), x(1, 2, 4)]);
    }
}
