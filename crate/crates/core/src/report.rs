//! The verification report and its two renderings.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::ModularEmbedding;
use crate::corpus::EquationCorpus;
use crate::verify::{
    BettiResult, CalibrationResult, HilbertResult, IntersectionNumbers, InvarianceOutcome, RunConfig,
    SmoothnessOutcome, Status,
};

/// `D^2, D.K, chi, K^2, e, b2`.
pub const EXPECTED_INTERSECTION: [i64; 6] = [36, 18, 1, 9, 3, 1];

pub const ASSUMPTIONS: [&str; 3] = [
    "D = 2K: the hyperplane class is twice the canonical class (input assumption, not verified)",
    "b1 = 0, from h^1(O) = h^2(O) = 0 (input assumption, not verified)",
    "resolution steps 5 to 7, chi(O(2K)) = 10 and Hom(O(K), O(D)) = 0 are not checked",
];

pub const SQUEEZE_NOTE: &str = "ranks are computed mod p, where they can only drop; each check requires a rank to \
equal a value that is also a lower bound for it over Q(t) (quotients are at least the formula value, syzygy \
images lie in the spaces they are compared with), so equality mod p certifies equality in characteristic 0";

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub inputs: Value,
    pub computed: Value,
    pub expected: Value,
    pub status: Status,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct ConfigEcho {
    pub max_degree: u32,
    pub max_betti: usize,
    pub calibration_degree: Option<u32>,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct VerificationReport {
    pub embedding: ModularEmbedding,
    pub corpus_fingerprint: String,
    pub config: ConfigEcho,
    pub checks: Vec<CheckRecord>,
    pub hilbert: Vec<HilbertResult>,
    pub verified_degrees: Vec<u32>,
    pub extrapolation: String,
    pub betti: Vec<BettiResult>,
    pub invariance: InvarianceOutcome,
    pub smoothness: SmoothnessOutcome,
    pub intersection_numbers: Option<IntersectionNumbers>,
    pub calibration: Vec<CalibrationResult>,
    pub assumptions: Vec<String>,
    pub notes: Vec<String>,
    pub verdict: Status,
}

fn record(name: String, inputs: Value, computed: Value, expected: Value, status: Status) -> CheckRecord {
    CheckRecord { name, inputs, computed, expected, status }
}

impl VerificationReport {
    #[allow(clippy::too_many_arguments)]
    pub fn assemble(
        c: &EquationCorpus,
        e: &ModularEmbedding,
        config: &RunConfig,
        hilbert: Vec<HilbertResult>,
        betti: Vec<BettiResult>,
        invariance: InvarianceOutcome,
        smoothness: SmoothnessOutcome,
        intersection: Result<IntersectionNumbers, String>,
        calibration: Vec<CalibrationResult>,
    ) -> Self {
        let mut checks = Vec::new();
        for h in &hilbert {
            checks.push(record(
                format!("hilbert d={}", h.degree),
                json!({ "degree": h.degree }),
                json!(h.quotient),
                json!(h.expected),
                h.status,
            ));
        }
        if let Some(h3) = hilbert.iter().find(|h| h.degree == 3) {
            checks.push(record(
                "cubic independence".into(),
                json!({ "degree": 3 }),
                json!(h3.ideal_dimension),
                json!(c.len()),
                Status::from_bool(h3.ideal_dimension == c.len() as u64),
            ));
        }
        for b in &betti {
            checks.push(record(
                format!("betti step {} degree {}", b.step, b.degree),
                json!({ "step": b.step }),
                json!({ "betti": b.betti, "image_rank": b.image_rank, "alternating_sum": b.alternating_sum }),
                json!({ "betti": b.expected, "image_rank": b.previous_kernel, "alternating_sum": b.hilbert }),
                b.status,
            ));
        }
        checks.push(record(
            "invariance".into(),
            json!({}),
            json!({
                "weight_homogeneous": invariance.weight_homogeneous,
                "g3_closed": invariance.g3_closed,
                "g7_order": invariance.g7_order,
                "g3_order": invariance.g3_order,
                "conjugation_exponent": invariance.conjugation_exponent,
            }),
            json!({
                "weight_homogeneous": true,
                "g3_closed": true,
                "g7_order": 7,
                "g3_order": 3,
                "conjugation_exponent": "2 or 4",
            }),
            invariance.status,
        ));
        for o in &smoothness.points {
            checks.push(record(
                format!("smooth at {}", o.point_label()),
                json!({ "coordinate": o.coordinate }),
                json!({ "on_surface": o.on_surface, "jacobian_rank": o.jacobian_rank, "witnesses": o.witnesses }),
                json!({ "on_surface": true, "jacobian_rank": crate::verify::SMOOTH_JACOBIAN_RANK }),
                o.status,
            ));
        }
        let control = &smoothness.control;
        checks.push(record(
            format!("control off surface {}", control.point_label()),
            json!({ "coordinate": control.coordinate }),
            json!({ "on_surface": control.on_surface, "first_nonvanishing": control.first_nonvanishing }),
            json!({ "on_surface": false }),
            Status::from_bool(!control.on_surface),
        ));
        let expected_numbers = {
            let [d2, dk, chi, k2, euler, b2] = EXPECTED_INTERSECTION;
            json!({ "d_squared": d2, "d_dot_k": dk, "chi": chi, "k_squared": k2, "euler_number": euler, "b2": b2 })
        };
        let (intersection_numbers, computed, status) = match intersection {
            Ok(n) => {
                let value = serde_json::to_value(&n).expect("plain struct");
                let ok = value == expected_numbers && n.noether_holds();
                (Some(n), value, Status::from_bool(ok))
            }
            Err(err) => (None, json!(err), Status::Fail),
        };
        checks.push(record(
            "intersection numbers".into(),
            json!({ "degrees": hilbert.iter().map(|h| h.degree).collect::<Vec<_>>() }),
            computed,
            expected_numbers,
            status,
        ));
        for cal in &calibration {
            checks.push(record(
                format!("calibrate eq {} {}", cal.entry, cal.term),
                json!({ "candidates": cal.candidates.iter().map(|o| o.value.clone()).collect::<Vec<_>>(), "max_degree": cal.max_degree }),
                json!(cal.passing),
                json!([cal.current]),
                cal.status,
            ));
        }
        let verdict = checks.iter().fold(Status::Pass, |acc, r| acc.combine(r.status));
        let verified_degrees: Vec<u32> =
            hilbert.iter().filter(|h| h.status == Status::Pass).map(|h| h.degree).collect();
        let extrapolation = match verified_degrees.last() {
            Some(top) => format!("h(d) for d > {top} follows the fitted polynomial 18d^2 - 9d + 1 and was not computed"),
            None => "no degree verified".to_string(),
        };
        Self {
            embedding: *e,
            corpus_fingerprint: c.fingerprint(),
            config: ConfigEcho {
                max_degree: config.max_degree,
                max_betti: config.max_betti,
                calibration_degree: config.calibrate.then_some(config.calibration_degree),
            },
            checks,
            hilbert,
            verified_degrees,
            extrapolation,
            betti,
            invariance,
            smoothness,
            intersection_numbers,
            calibration,
            assumptions: ASSUMPTIONS.iter().map(|s| s.to_string()).collect(),
            notes: vec![SQUEEZE_NOTE.to_string()],
            verdict,
        }
    }

    /// Pretty JSON with fields in declaration order.
    pub fn to_structured(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "embedding: {}", self.embedding).unwrap();
        writeln!(out, "corpus: {}", self.corpus_fingerprint).unwrap();
        for r in &self.checks {
            writeln!(out, "{:<13}{}: computed {}, expected {}", r.status.label(), r.name, r.computed, r.expected).unwrap();
        }
        if let Some(v) = &self.invariance.first_violation {
            writeln!(out, "first invariance violation: {v}").unwrap();
        }
        writeln!(out, "verified degrees: {:?}", self.verified_degrees).unwrap();
        writeln!(out, "extrapolation: {}", self.extrapolation).unwrap();
        writeln!(out, "assumptions:").unwrap();
        for a in &self.assumptions {
            writeln!(out, "  - {a}").unwrap();
        }
        writeln!(out, "notes:").unwrap();
        for n in &self.notes {
            writeln!(out, "  - {n}").unwrap();
        }
        writeln!(out, "verdict: {}", self.verdict.label()).unwrap();
        out
    }
}
