use std::fmt::Write as _;

use anyhow::{bail, Result};
use invariants::Bound;
use linkstate::validate;
use moves::{apply_script, MoveRecord};
use serde_json::{json, Value};
use simplify::{decide as run_decide, eliminate_type_ii, reduce_to_hopf, Outcome, Pipeline};

use crate::scenario::Loaded;
use crate::sweep::sweep as run_sweep;

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    Error = 1,
    Obstructed = 2,
    Inconclusive = 3,
}

/// What a command prints: human text, a machine-readable block, the exit
/// code, and the trace for `--trace-out` when the command produced one.
#[derive(Clone, Debug)]
pub struct Output {
    pub human: String,
    pub machine: Value,
    pub exit: Exit,
    pub trace: Option<Vec<MoveRecord>>,
}

fn ok(human: String, machine: Value) -> Output {
    Output {
        human,
        machine,
        exit: Exit::Ok,
        trace: None,
    }
}

fn require_valid(sc: &Loaded) -> Result<()> {
    let report = validate(&sc.state, &sc.ctx);
    if !report.is_valid() {
        let msgs: Vec<String> = report.violations.iter().map(|v| v.message.clone()).collect();
        bail!("scenario state is invalid: {}", msgs.join("; "));
    }
    Ok(())
}

pub fn validate_cmd(sc: &Loaded) -> Output {
    let report = validate(&sc.state, &sc.ctx);
    let mut human = format!("{} circles, ", sc.state.len());
    if report.is_valid() {
        human.push_str("valid");
    } else {
        let _ = write!(human, "{} violations", report.violations.len());
        for v in &report.violations {
            let _ = write!(human, "\n  {:?} {:?}: {}", v.invariant, v.ids, v.message);
        }
    }
    Output {
        human,
        machine: json!({ "valid": report.is_valid(), "violations": report.violations }),
        exit: if report.is_valid() { Exit::Ok } else { Exit::Error },
        trace: None,
    }
}

pub fn invariants_cmd(sc: &Loaded) -> Result<Output> {
    require_valid(sc)?;
    let r = invariants::report(&sc.state, &sc.ctx)?;
    let mut human = format!("mu: {}\n", r.mu);
    match &r.fq_class {
        Some(c) => {
            let _ = writeln!(human, "fq: {} ({})", c.representative, if c.is_zero { "zero" } else { "nonzero" });
        }
        None => human.push_str("fq: undefined\n"),
    }
    let _ = writeln!(human, "delta: {}", r.delta);
    let _ = write!(
        human,
        "km: {} ({})",
        r.km_class.representative,
        if r.km_class.is_zero { "zero" } else { "nonzero" }
    );
    for n in &r.notes {
        let _ = write!(human, "\nnote: {n}");
    }
    Ok(ok(human, serde_json::to_value(&r)?))
}

pub fn apply_cmd(sc: &Loaded, script: &[MoveRecord]) -> Result<Output> {
    require_valid(sc)?;
    let (end, trace) = apply_script(&sc.state, &sc.ctx, script)?;
    let hash = end.hash();
    let human = format!("{} moves applied, {} circles remain\nfinal hash: {hash}", trace.len(), end.len());
    Ok(Output {
        human,
        machine: json!({ "steps": trace.len(), "final_hash": hash, "final_state": end, "trace": trace }),
        exit: Exit::Ok,
        trace: Some(trace),
    })
}

pub fn simplify_cmd(sc: &Loaded) -> Result<Output> {
    require_valid(sc)?;
    let (ctx, warning) = invariants::normalize_dual(&sc.ctx)?;
    let mut p = Pipeline::new(sc.state.clone(), &ctx);
    eliminate_type_ii(&mut p)?;
    let h = reduce_to_hopf(&mut p)?;
    let g = &ctx.group;
    let label = p.state.pair_label(g, h)?;
    let eps = g.eps(&label)?;
    let hash = p.state.hash();
    let mut human = format!(
        "reduced to one Hopf pair in {} moves\nlabel: {label}\neps(label): {eps}\nfinal hash: {hash}",
        p.trace.len()
    );
    if let Some(w) = &warning {
        let _ = write!(human, "\nwarning: {w}");
    }
    Ok(Output {
        human,
        machine: json!({
            "label": label,
            "eps_label": eps,
            "hopf_active": h,
            "warnings": warning.into_iter().collect::<Vec<_>>(),
            "final_hash": hash,
            "final_state": p.state,
            "trace": p.trace,
        }),
        exit: Exit::Ok,
        trace: Some(p.trace),
    })
}

pub fn decide_cmd(sc: &Loaded) -> Result<Output> {
    require_valid(sc)?;
    let v = run_decide(&sc.state, &sc.ctx)?;
    let (head, exit) = match &v.outcome {
        Outcome::Concordant => ("verdict: concordant".to_string(), Exit::Ok),
        Outcome::ObstructedFq { class } => (format!("verdict: obstructed by fq, class {}", class.representative), Exit::Obstructed),
        Outcome::ObstructedKm { class } => (format!("verdict: obstructed by km, class {}", class.representative), Exit::Obstructed),
        Outcome::Inconclusive { reason } => (format!("verdict: inconclusive ({reason})"), Exit::Inconclusive),
    };
    let mut human = format!(
        "{head}\n{} moves, {} circles remain\nfinal hash: {}",
        v.trace.len(),
        v.final_state.len(),
        v.final_state.hash()
    );
    if let Some(l) = &v.hopf_label {
        let _ = write!(human, "\nreduced Hopf label: {l}");
    }
    for w in &v.warnings {
        let _ = write!(human, "\nwarning: {w}");
    }
    let mut machine = serde_json::to_value(&v)?;
    machine["final_hash"] = json!(v.final_state.hash());
    Ok(Output {
        human,
        machine,
        exit,
        trace: Some(v.trace),
    })
}

pub fn bound_cmd(sc: &Loaded) -> Output {
    match invariants::concordance_bound(&sc.ctx) {
        Bound::Value { value } => ok(format!("bound: {value}"), json!({ "bound": value })),
        Bound::NotApplicable { reason } => Output {
            human: format!("bound not applicable: {reason}"),
            machine: json!({ "bound": null, "reason": reason }),
            exit: Exit::Error,
            trace: None,
        },
    }
}

pub fn sweep_cmd(seed: u64, count: usize) -> Result<Output> {
    let r = run_sweep(seed, count);
    let mut human = format!(
        "sweep seed={seed} count={count}: {} violations\n{} moves checked, {} delta checks, {} parity checks",
        r.violations.len(),
        r.moves_checked,
        r.delta_checks,
        r.parity_checks
    );
    for v in r.violations.iter().take(20) {
        let _ = write!(human, "\n  state {} [{}] {}: {} ({})", v.state, v.context, v.mv, v.property, v.detail);
    }
    let exit = if r.violations.is_empty() { Exit::Ok } else { Exit::Error };
    Ok(Output {
        human,
        machine: serde_json::to_value(&r)?,
        exit,
        trace: None,
    })
}
