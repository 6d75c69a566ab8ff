//! JSON rendering helpers: witnesses as label lists, reports as objects.

use serde_json::{json, Value};

use lms_core::quasimetric::QmReport;
use lms_core::relation::CausalReport;
use lms_core::space::{Check, FiniteLorentzSpace};

pub struct Outcome {
    pub document: Value,
    pub exit: i32,
}

pub fn point_labels(space: &FiniteLorentzSpace, points: &[usize]) -> Vec<String> {
    points.iter().map(|&i| space.label(i).to_string()).collect()
}

pub fn pair_labels(space: &FiniteLorentzSpace, pairs: &[(usize, usize)]) -> Vec<[String; 2]> {
    pairs
        .iter()
        .map(|&(i, j)| [space.label(i).to_string(), space.label(j).to_string()])
        .collect()
}

pub fn check<W: Copy, F: Fn(W) -> Vec<String>>(c: &Check<W>, witness: F) -> Value {
    json!({
        "pass": c.pass,
        "witness": c.witness.map(witness),
    })
}

pub fn causal_report(space: &FiniteLorentzSpace, r: &CausalReport) -> Value {
    json!({
        "closed": r.closed,
        "reflexive": check(&r.reflexive, |w| point_labels(space, &[w])),
        "transitive": check(&r.transitive, |w| point_labels(space, &[w.0, w.1, w.2])),
        "antisymmetric": check(&r.antisymmetric, |w| point_labels(space, &[w.0, w.1])),
        "i_subset_j": check(&r.i_subset_j, |w| point_labels(space, &[w.0, w.1])),
        "push_up": check(&r.push_up, |w| point_labels(space, &[w.0, w.1])),
        "causal_additivity": check(&r.causal_additivity, |w| point_labels(space, &[w.0, w.1, w.2])),
        "all_pass": r.all_pass(),
    })
}

pub fn qm_report(space: &FiniteLorentzSpace, r: &QmReport) -> Value {
    json!({
        "p_triangle": check(&r.p_triangle, |w| point_labels(space, &[w.0, w.1, w.2])),
        "p_triangle_worst_slack": r.p_triangle_worst_slack,
        "zero_set_equals_j": check(&r.zero_set_equals_j, |w| point_labels(space, &[w.0, w.1])),
        "sandwich_lower": check(&r.sandwich_lower, |w| point_labels(space, &[w.0, w.1])),
        "sandwich_upper": check(&r.sandwich_upper, |w| point_labels(space, &[w.0, w.1])),
        "sandwich_worst_slack": r.sandwich_worst_slack,
        "gamma_symmetric": check(&r.gamma_symmetric, |w| point_labels(space, &[w.0, w.1])),
        "gamma_zero_diagonal": check(&r.gamma_zero_diagonal, |w| point_labels(space, &[w])),
        "gamma_triangle": check(&r.gamma_triangle, |w| point_labels(space, &[w.0, w.1, w.2])),
        "gamma_definite": check(&r.gamma_definite, |w| point_labels(space, &[w.0, w.1])),
        "pass": r.pass(),
    })
}

pub fn certify_cell(cell: &lms_core::gh::CertifyCell) -> Value {
    json!({
        "probe_index": cell.probe_index,
        "m": cell.m,
        "delta": cell.delta,
        "skipped": cell.skipped,
        "found": cell.found,
        "distortion": cell.distortion,
        "certified_infeasible": cell.certified_infeasible,
        "budget_exhausted": cell.budget_exhausted,
    })
}

pub fn verdict(v: &lms_core::gh::CertifyVerdict) -> Value {
    match v {
        lms_core::gh::CertifyVerdict::Consistent { onsets } => json!({
            "kind": "consistent",
            "onsets": onsets.iter().map(|&(m, n)| json!({"m": m, "onset_probe": n})).collect::<Vec<_>>(),
        }),
        lms_core::gh::CertifyVerdict::Refuted { m, probe_index } => json!({
            "kind": "refuted",
            "m": m,
            "probe_index": probe_index,
        }),
        lms_core::gh::CertifyVerdict::Inconclusive { m, probe_index } => json!({
            "kind": "inconclusive",
            "m": m,
            "probe_index": probe_index,
        }),
    }
}
