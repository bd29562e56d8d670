//! Output rendering: machine-readable JSON verdict blocks followed by a
//! one-line human summary.

use qspace::bounds::BoundResult;
use qspace::field::Field;
use qspace::projections::{EquationSystem, FeasibilityReport, SolveOutcome};
use qspace::space::Subspace;
use qspace::verify::{ComplementCensus, CoverageReport, StdReport};
use serde_json::{json, Map, Value};

pub fn field_info(f: &Field) -> String {
    let spec = f.spec();
    let block = json!({
        "descriptor": spec.descriptor(),
        "p": spec.p(),
        "m": spec.m(),
        "q": spec.q(),
        "modulus": spec.modulus(),
        "primitive_element_value": f.primitive_power(1),
    });
    serde_json::to_string_pretty(&block).expect("json")
}

pub fn subspace_blocks(words: &[Subspace]) -> String {
    words
        .iter()
        .map(|w| {
            if w.dim() == 0 {
                "(null space)".to_string()
            } else {
                qspace::io::subspace_to_text(w)
            }
        })
        .collect::<Vec<_>>()
        .join("\n\n")
}

pub fn verdict_block(check: &str, verdict: bool, fields: &[(&str, String)]) -> String {
    let mut detail = Map::new();
    for (k, v) in fields {
        detail.insert(
            k.to_string(),
            v.parse::<u64>()
                .map(Value::from)
                .unwrap_or_else(|_| Value::from(v.clone())),
        );
    }
    let block = json!({
        "check": check,
        "verdict": verdict,
        "detail": Value::Object(detail),
    });
    let human = format!(
        "{}: {}",
        check,
        if verdict { "PASS" } else { "FAIL" }
    );
    format!(
        "{}\n{}",
        serde_json::to_string_pretty(&block).expect("json"),
        human
    )
}

pub fn coverage_block(check: &str, verdict: bool, report: &CoverageReport, size: usize) -> String {
    let histogram: Map<String, Value> = report
        .histogram
        .iter()
        .map(|(m, c)| (m.to_string(), Value::from(c.to_string())))
        .collect();
    let block = json!({
        "check": check,
        "verdict": verdict,
        "detail": {
            "size": size,
            "t": report.t,
            "histogram": histogram,
            "is_covering": report.is_covering,
            "is_steiner": report.is_steiner,
            "design_lambda": report.design_lambda,
            "trivial": report.trivial,
        }
    });
    format!(
        "{}\n{}: {}",
        serde_json::to_string_pretty(&block).expect("json"),
        check,
        if verdict { "PASS" } else { "FAIL" }
    )
}

pub fn std_block(report: &StdReport) -> String {
    let verdict = report.all_pass();
    let block = json!({
        "check": "std",
        "verdict": verdict,
        "detail": {
            "group_count": report.group_count,
            "group_size": report.group_size,
            "strength": report.strength,
            "points_ok": report.points_ok,
            "groups_ok": report.groups_ok,
            "blocks_avoid_v0": report.blocks_avoid_v0,
            "block_group_ok": report.block_group_ok,
            "strength_ok": report.strength_ok,
        }
    });
    format!(
        "{}\nstd: {}",
        serde_json::to_string_pretty(&block).expect("json"),
        if verdict { "PASS" } else { "FAIL" }
    )
}

pub fn bounds_json(lower: &BoundResult, upper: &BoundResult) -> String {
    let block = json!({
        "params": lower.params,
        "lower": { "value": lower.value.to_string(), "kind": lower.kind.tag(), "source": lower.source },
        "upper": { "value": upper.value.to_string(), "kind": upper.kind.tag(), "source": upper.source },
    });
    serde_json::to_string_pretty(&block).expect("json")
}

pub fn bounds_text(
    q: u64,
    n: u32,
    delta: u32,
    k: u32,
    lower: &BoundResult,
    upper: &BoundResult,
) -> String {
    if lower.value == upper.value {
        format!(
            "A_{}({}, {}, {}) = {}   [{} / {}]",
            q, n, delta, k, lower.value, lower.source, upper.source
        )
    } else {
        format!(
            "{} <= A_{}({}, {}, {}) <= {}   [{} / {}]",
            lower.value, q, n, delta, k, upper.value, lower.source, upper.source
        )
    }
}

pub fn solve_block(sys: &EquationSystem, outcome: &SolveOutcome) -> String {
    let assignment_json = |a: &[num_bigint::BigUint]| -> Value {
        let m: Map<String, Value> = sys
            .variables
            .iter()
            .zip(a)
            .map(|(v, val)| (v.label.clone(), Value::from(val.to_string())))
            .collect();
        Value::Object(m)
    };
    let block = match outcome {
        SolveOutcome::Infeasible => json!({ "outcome": "infeasible" }),
        SolveOutcome::Unique(a) => json!({
            "outcome": "unique",
            "assignment": assignment_json(a),
        }),
        SolveOutcome::Multiple {
            count,
            complete,
            samples,
        } => json!({
            "outcome": "multiple",
            "count": count,
            "count_complete": complete,
            "samples": samples.iter().map(|s| assignment_json(s)).collect::<Vec<_>>(),
        }),
        SolveOutcome::CapReached => json!({ "outcome": "cap-reached" }),
    };
    let human = match outcome {
        SolveOutcome::Infeasible => "solve: INFEASIBLE (no nonnegative integer solution)".into(),
        SolveOutcome::Unique(_) => "solve: UNIQUE solution".to_string(),
        SolveOutcome::Multiple { count, complete, .. } => format!(
            "solve: MULTIPLE solutions ({}{})",
            count,
            if *complete { "" } else { "+, budget hit" }
        ),
        SolveOutcome::CapReached => "solve: CAP REACHED (no conclusion)".into(),
    };
    format!(
        "{}\n{}",
        serde_json::to_string_pretty(&block).expect("json"),
        human
    )
}

pub fn feasibility_block(report: &FeasibilityReport) -> String {
    let per_rho: Vec<Value> = report
        .per_rho
        .iter()
        .map(|(rho, outcome)| {
            let tag = match outcome {
                SolveOutcome::Infeasible => "infeasible",
                SolveOutcome::Unique(_) => "unique",
                SolveOutcome::Multiple { .. } => "multiple",
                SolveOutcome::CapReached => "cap-reached",
            };
            json!({ "rho": rho, "outcome": tag })
        })
        .collect();
    let verdict = if report.not_excluded {
        "not excluded"
    } else {
        "excluded"
    };
    let block = json!({
        "steiner_system": format!("S_{}({}, {}, {})", report.q, report.t, report.k, report.n),
        "divisibility_pass": report.divisibility_pass,
        "per_rho": per_rho,
        "conclusion": verdict,
    });
    let human = if !report.divisibility_pass {
        "report: excluded by divisibility".to_string()
    } else {
        format!("report: existence {}", verdict)
    };
    format!(
        "{}\n{}",
        serde_json::to_string_pretty(&block).expect("json"),
        human
    )
}

pub fn complement_table(rows: &[ComplementCensus], q: u64) -> String {
    let mut out = String::from("q,n,complementable,total,ratio,limit_constant\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{:.6},{:.6}\n",
            r.q, r.n, r.complementable, r.total, r.ratio, r.limit_constant
        ));
    }
    let _ = q;
    out
}
