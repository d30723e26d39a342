//! One PASS/FAIL line per acceptance criterion. Exit status is nonzero when
//! any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use braidwork_core::{
    boundary_braid, boundary_invariants, catalog, combinatorial_signature, conjugate_check, equal, germ_data,
    half_twist, homology, parse, qhd_check, qhd_diagram, qhd_script, run_script, scott_diagram, smith_normal_form,
    weights, Arrangement, BraidWord, LinkingMatrix, WiringDiagram,
};
use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn key(d: &WiringDiagram) -> (i64, Vec<usize>, LinkingMatrix) {
    let b = boundary_invariants(d).expect("valid diagram");
    (b.exponent_sum, b.cycle_type, b.linking)
}

fn nested_example() -> Outcome {
    let d = parse("strands 4; comps A:1,4 B:2,3; TN[1,4]; (I[3,4])^3; I[1,4]").map_err(|e| e.to_string())?;
    let w = |s: &str| BraidWord::parse(4, s).unwrap();
    let d14 = half_twist(4, 1, 4).unwrap();
    let expected = d14
        .compose(&w("s3 s3 s3 s2 s3 s1 s2 s1' s3' s3 s3 s3"))
        .and_then(|x| x.compose(&d14))
        .unwrap();
    let got = boundary_braid(&d).map_err(|e| e.to_string())?;
    if equal(&got, &expected) {
        Ok(format!("boundary = {got}"))
    } else {
        Err(format!("boundary {got} differs from {expected}"))
    }
}

fn catalog_soundness(per_variant: usize, applications: &mut usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_501);
    let mut variants = 0;
    for spec in catalog() {
        for v in spec.variants {
            variants += 1;
            for n in 0..per_variant {
                let (d, inst) = common::random_instance(&mut rng, spec.kind, v)
                    .ok_or_else(|| format!("{} {}: no applicable instance found", spec.kind.code(), v.name))?;
                common::check_instance(&d, &inst)
                    .map_err(|e| format!("{} {} instance {n} ({}): {e}", spec.kind.code(), v.name, braidwork_core::print(&d)))?;
                *applications += 2;
            }
        }
    }
    Ok(format!("{} kinds, {variants} variants, {per_variant} instances each", catalog().len()))
}

fn end_to_end(k: i64, applications: &mut usize) -> Outcome {
    let m = k + 7;
    let scott = scott_diagram(k).map_err(|e| e.to_string())?;
    let script = qhd_script(k).map_err(|e| e.to_string())?;
    let trace = run_script(scott.diagram(), &script).map_err(|e| e.to_string())?;
    if trace.steps.len() != script.len() {
        return Err("not every step was recorded".into());
    }
    let initial_key = key(scott.diagram());
    let mut d = scott.diagram().clone();
    for (n, inst) in script.iter().enumerate() {
        d = braidwork_core::apply(&d, inst, true).map_err(|e| format!("step {n}: {e}"))?.diagram;
        if key(&d) != initial_key {
            return Err(format!("step {n}: conjugation invariants changed"));
        }
        *applications += 1;
    }
    let fin = Arrangement::bare(trace.final_diagram.clone());
    let report = homology(&fin).map_err(|e| e.to_string())?;
    if report.points as i64 != m || report.disks as i64 != m {
        return Err(format!("#points {} #disks {} for m = {m}", report.points, report.disks));
    }
    let verdict = qhd_check(&fin, &germ_data(k, 1).unwrap()).map_err(|e| e.to_string())?;
    if !verdict.verdict {
        return Err(format!("qhd_check: {:?}", verdict.reasons));
    }
    let b0 = boundary_braid(scott.diagram()).unwrap();
    let b1 = boundary_braid(&trace.final_diagram).unwrap();
    if !conjugate_check(&b0, &b1, &trace.conjugator).unwrap_or(false) {
        return Err("boundary is not the conjugate of Scott's by the accumulated conjugator".into());
    }
    let target = qhd_diagram(k, false).map_err(|e| e.to_string())?;
    if combinatorial_signature(&fin) != combinatorial_signature(&target.arrangement) {
        return Err("signature differs from qhd_diagram".into());
    }
    Ok(format!("m={m}: {} steps, |H1| = {}", script.len(), verdict.torsion.iter().product::<BigInt>()))
}

fn germ_gates() -> Outcome {
    for k in -1..=6i64 {
        let s = scott_diagram(k).map_err(|e| format!("k={k}: {e}"))?;
        let chart = s.diagram().chart();
        let red = chart.index_of("C0").ok_or("no red component")?;
        let inv = boundary_invariants(s.diagram()).unwrap();
        let w = weights(&s.arrangement).unwrap();
        let count = chart.component_count();
        for a in 0..count {
            let name = chart.name(a);
            let (want_w, want_free) = if a == red { (8 + k, 3) } else { (7 + k, 1) };
            if w[name] != want_w {
                return Err(format!("k={k}: weight of {name} is {} not {want_w}", w[name]));
            }
            if s.arrangement.free_points()[a] != want_free {
                return Err(format!("k={k}: {name} has {} free points", s.arrangement.free_points()[a]));
            }
            for b in a + 1..count {
                let want = if a == red || b == red { 7 + k } else { 8 + k };
                if inv.linking.lk(a, b) != want {
                    return Err(format!("k={k}: lk({name}, {}) = {} not {want}", chart.name(b), inv.linking.lk(a, b)));
                }
            }
        }
    }
    Ok("k = -1..6".into())
}

fn homology_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for t in 0..1000 {
        let (r, c) = (rng.gen_range(1..=8), rng.gen_range(1..=12));
        let density = rng.gen_range(0.2..1.0);
        let m: Vec<Vec<BigInt>> = (0..r)
            .map(|_| (0..c).map(|_| BigInt::from(if rng.gen_bool(density) { rng.gen_range(-6..=6) } else { 0 })).collect())
            .collect();
        let s = smith_normal_form(&m);
        s.check(&m).map_err(|e| format!("matrix {t}: {e}"))?;
        if r == c {
            let prod: BigInt = s.diagonal().iter().product();
            if prod != cofactor_det(&m).abs() {
                return Err(format!("matrix {t}: invariant factors do not multiply to |det|"));
            }
        }
    }
    let d = parse("strands 4; comps A:1,4 B:2,3; TN[1,4]; (I[3,4])^3; I[1,4]").unwrap();
    let warm = Arrangement::with_named_free_points(d, [("A", 2), ("B", 2)]).unwrap();
    let h = homology(&warm).unwrap();
    if h.b2 != 6 || h.h1_rank != 0 || !h.h1_torsion.is_empty() {
        return Err(format!("warm-up: b2 {} h1 rank {} torsion {:?}", h.b2, h.h1_rank, h.h1_torsion));
    }
    let q = qhd_diagram(-1, false).map_err(|e| e.to_string())?;
    let h = homology(&q.arrangement).unwrap();
    if h.b2 != 0 || h.h1_rank != 0 {
        return Err(format!("qhd k=-1: b2 {} h1 rank {}", h.b2, h.h1_rank));
    }
    Ok(format!("1000 matrices; warm-up b2 = 6, H1 = 0; qhd k=-1 b2 = 0, |H1| = {}", h.h1_torsion.iter().product::<BigInt>()))
}

/// Cofactor expansion, independent of the elimination code.
fn cofactor_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = BigInt::from(0);
    for j in 0..n {
        if m[0][j] == BigInt::from(0) {
            continue;
        }
        let minor: Vec<Vec<BigInt>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = &m[0][j] * cofactor_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn brute_force() -> Outcome {
    let mut words = 0;
    let mut settled = 0;
    for (n, len) in [(2, 10), (3, 10), (4, 10)] {
        let a = common::brute::compare(n, len, 1);
        if let Some((u, v)) = a.disagreements.first() {
            return Err(format!("{n} strands: {u} vs {v} ({} disagreements)", a.disagreements.len()));
        }
        words += a.words;
        settled += a.settled_by_handles;
    }
    Ok(format!("{words} reduced words, {settled} pairs settled by handle reduction"))
}

fn report(name: &str, t: Duration, outcome: &Outcome) -> bool {
    match outcome {
        Ok(detail) => println!("PASS  {name}  ({detail}; {:.1?})", t),
        Err(reason) => println!("FAIL  {name}  ({reason}; {:.1?})", t),
    }
    outcome.is_ok()
}

fn timed<F: FnOnce() -> Outcome>(f: F) -> (Duration, Outcome) {
    let t = Instant::now();
    let o = f();
    (t.elapsed(), o)
}

fn main() -> ExitCode {
    let mut all = true;
    let mut applications = 0usize;

    let (t, o) = timed(nested_example);
    all &= report("boundary braid of the nested example", t, &o);

    let (t, mut o) = timed(|| catalog_soundness(100, &mut applications));
    if t > Duration::from_secs(300) && o.is_ok() {
        o = Err("over the time budget".into());
    }
    all &= report("move catalog soundness", t, &o);
    let catalog_ok = o.is_ok();

    let (t, o) = timed(|| {
        let mut lines = Vec::new();
        for k in [-1, 1, 3] {
            let t = Instant::now();
            let line = end_to_end(k, &mut applications)?;
            if t.elapsed() > Duration::from_secs(120) {
                return Err(format!("k={k} over the time budget"));
            }
            lines.push(line);
        }
        Ok(lines.join("; "))
    });
    all &= report("Scott to QHD derivation for m = 6, 8, 10", t, &o);
    let scripts_ok = o.is_ok();

    let (t, o) = timed(germ_gates);
    all &= report("germ gate regression", t, &o);

    let (t, mut o) = timed(homology_oracle);
    if t > Duration::from_secs(60) && o.is_ok() {
        o = Err("over the time budget".into());
    }
    all &= report("homology oracle", t, &o);

    let (t, mut o) = timed(brute_force);
    if t > Duration::from_secs(300) && o.is_ok() {
        o = Err("over the time budget".into());
    }
    all &= report("braid engine vs relation rewriting", t, &o);

    let o = if catalog_ok && scripts_ok {
        Ok(format!("{applications} move applications"))
    } else {
        Err("a move application above failed its checks".into())
    };
    all &= report("conjugation invariants under moves", Duration::ZERO, &o);

    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
