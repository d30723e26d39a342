//! Random diagrams and move instances shared by the integration suites.
#![allow(dead_code)]

pub mod brute;

use braidwork_core::{
    apply, boundary_invariants, conjugate_check, equal, validate, Anchor, BraidWord, Chart, Direction, Element,
    Guarantee, MoveInstance, MoveKind, Sign, Variant, WiringDiagram,
};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn random_chart<R: Rng>(rng: &mut R, n: usize) -> Chart {
    let k = if rng.gen_bool(0.3) { 1 } else { rng.gen_range(1..=n.min(4)) };
    let mut comp: Vec<usize> = (0..n).map(|s| if s < k { s } else { rng.gen_range(0..k) }).collect();
    comp.shuffle(rng);
    let groups = (0..k).map(|c| {
        let strands: Vec<usize> = (1..=n).filter(|&s| comp[s - 1] == c).collect();
        (format!("C{c}"), strands)
    });
    Chart::from_groups(n, groups).unwrap()
}

pub fn random_element<R: Rng>(rng: &mut R, n: usize) -> Element {
    loop {
        let e = match rng.gen_range(0..5) {
            0 => {
                let i = rng.gen_range(1..n);
                Element::I { i, j: rng.gen_range(i + 1..=n.min(i + 5)) }
            }
            1 => {
                let i = rng.gen_range(1..n);
                let j = rng.gen_range(i..n.min(i + 3));
                Element::X { i, j, k: rng.gen_range(j + 1..=n.min(j + 3)) }
            }
            2 => Element::T { i: rng.gen_range(1..n) },
            3 => {
                let a = rng.gen_range(1..n);
                let h = rng.gen_range(1..=3);
                Element::TN { a, b: a + 2 * h - 1 }
            }
            _ => Element::S { i: rng.gen_range(1..n), sign: if rng.gen() { Sign::Pos } else { Sign::Neg } },
        };
        if e.support().1 <= n {
            return e;
        }
    }
}

fn random_params<R: Rng>(rng: &mut R, v: &Variant, n: usize) -> Vec<i64> {
    v.params
        .iter()
        .map(|&name| if name == "sign" { if rng.gen() { 1 } else { -1 } } else { rng.gen_range(1..=n as i64) })
        .collect()
}

/// A valid diagram on 4 to 16 strands with `variant` applicable at some
/// position, embedded between random context elements.
pub fn random_instance<R: Rng>(
    rng: &mut R,
    kind: MoveKind,
    variant: &Variant,
) -> Option<(WiringDiagram, MoveInstance)> {
    for _ in 0..20_000 {
        let n = rng.gen_range(4..=16);
        let window: Vec<Element> = if kind == MoveKind::M1 {
            vec![random_element(rng, n), random_element(rng, n)]
        } else {
            Vec::new()
        };
        let params = random_params(rng, variant, n);
        let Some((lhs, rhs)) = variant.instantiate(&params, &window) else { continue };
        if lhs.iter().chain(rhs.iter()).any(|e| e.support().1 > n) {
            continue;
        }
        let dir = if kind == MoveKind::M1 || rng.gen() { Direction::Fwd } else { Direction::Bwd };
        let from = if dir == Direction::Fwd { lhs } else { rhs };
        let prefix = if variant.anchor == Anchor::Start { 0 } else { rng.gen_range(0..=4) };
        let suffix = if variant.anchor == Anchor::End { 0 } else { rng.gen_range(0..=4) };
        let mut elements: Vec<Element> = (0..prefix).map(|_| random_element(rng, n)).collect();
        elements.extend(from);
        elements.extend((0..suffix).map(|_| random_element(rng, n)));
        for _ in 0..8 {
            let d = WiringDiagram::new(n, random_chart(rng, n), elements.clone()).unwrap();
            if validate(&d).is_empty() {
                let inst = MoveInstance::new(kind, variant.name, prefix, &params, dir);
                if apply(&d, &inst, false).is_ok() {
                    return Some((d, inst));
                }
            }
        }
    }
    None
}

fn invariant_key(d: &WiringDiagram) -> (i64, Vec<usize>, braidwork_core::LinkingMatrix) {
    let b = boundary_invariants(d).unwrap();
    (b.exponent_sum, b.cycle_type, b.linking)
}

/// Applies `inst` with verification and re-checks everything from the
/// outside: the guarantee, validity, conjugation invariants and the inverse.
pub fn check_instance(d: &WiringDiagram, inst: &MoveInstance) -> Result<(), String> {
    let r = apply(d, inst, true).map_err(|e| e.to_string())?;
    if !r.verified {
        return Err("not verified".into());
    }
    let after = &r.diagram;
    if let Some(v) = validate(after).first() {
        return Err(format!("invalid result: {v}"));
    }
    let fb = |x: &WiringDiagram| (braidwork_core::front(x).unwrap(), braidwork_core::back(x).unwrap());
    let ((f0, b0), (f1, b1)) = (fb(d), fb(after));
    let bd0 = b0.inverse().compose(&f0).unwrap();
    let bd1 = b1.inverse().compose(&f1).unwrap();
    let ok = match r.guarantee {
        Guarantee::Word => equal(&f0, &f1) && equal(&b0, &b1),
        Guarantee::Exact => bd0.free_reduce() == bd1.free_reduce(),
        Guarantee::Conj => {
            let c: &BraidWord = r.conjugator.as_ref().ok_or("no conjugator")?;
            conjugate_check(&bd0, &bd1, c).unwrap()
        }
    };
    if !ok {
        return Err(format!("{} does not hold", r.guarantee));
    }
    if invariant_key(d) != invariant_key(after) {
        return Err("conjugation invariants changed".into());
    }
    let inv = inst.inverse().ok_or("no inverse")?;
    let back = apply(after, &inv, true).map_err(|e| format!("inverse: {e}"))?;
    if &back.diagram != d {
        return Err("inverse does not restore the diagram".into());
    }
    Ok(())
}
