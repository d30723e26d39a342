//! JSON blocks shared by the command line and the session service.

use braidwork_core::{boundary_invariants, homology, Arrangement, BoundaryData, BraidWord, HomologyReport, WiringDiagram};
use serde_json::{json, Value};

/// Digest of the boundary normal form; empty for an invalid diagram.
pub fn boundary_hash(d: &WiringDiagram) -> String {
    braidwork_core::boundary_braid(d).map(|b| b.normal_form().hash()).unwrap_or_default()
}

pub fn closure_block(d: &WiringDiagram, b: &BoundaryData) -> Value {
    json!({
        "components": d.chart().names(),
        "exponent_sum": b.exponent_sum,
        "cycle_type": b.cycle_type,
        "cycles": b.cycles,
        "linking": b.linking.entries,
        "nf_hash": b.nf_hash,
    })
}

pub fn braid_block(w: &BraidWord) -> Value {
    json!({ "strands": w.strands(), "braid": w.to_string(), "letters": w })
}

/// Strand count, closure invariants and homology counts of a valid arrangement.
pub fn invariants(a: &Arrangement) -> Result<Value, String> {
    let d = a.diagram();
    let b = boundary_invariants(d).map_err(|e| e.to_string())?;
    let h = homology(a).map_err(|e| e.to_string())?;
    let mut v = closure_block(d, &b);
    let extra = json!({
        "strands": d.strands(),
        "elements": d.len(),
        "points": h.points,
        "disks": h.disks,
        "b2": h.b2,
        "h1_rank": h.h1_rank,
        "weights": h.weights,
        "free_points": a.named_free_points(),
    });
    merge(&mut v, extra);
    Ok(v)
}

/// The homology report with the rational-homology-disk verdict and its reasons.
pub fn homology_block(h: &HomologyReport) -> Value {
    let mut reasons = Vec::new();
    if h.b2 != 0 {
        reasons.push(format!("b2 = {} ≠ 0", h.b2));
    }
    if h.h1_rank != 0 {
        reasons.push(format!("H1 has free rank {}", h.h1_rank));
    }
    let mut v = serde_json::to_value(h).expect("report serializes");
    merge(&mut v, json!({ "verdict": h.qhd, "reasons": reasons }));
    v
}

pub fn merge(into: &mut Value, extra: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, extra) {
        a.extend(b);
    }
}
