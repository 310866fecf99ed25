//! Subcommand dispatch for the `involutive` binary. Every command reads one
//! JSON document and produces one JSON report plus an exit code:
//! 0 success, 1 negative verdict (the report carries the witness),
//! 2 malformed input or usage error.

use std::collections::HashMap;
use std::fmt;
use std::path::PathBuf;

use involutive::json::{self, FormatError};
use involutive::{
    classify, hilbert_function, involutive_test, is_complete, is_marked_basis, janet_complete, oracle_check,
    pommaret_basis, reduce, scheme_equations, sigma_profile, specialize, star_set, termination_degree,
    DivisionAssignment, DivisionError, IdealError, MarkedError, Rational, ReductionLimits, ReductionStatus,
    SchemeError, SigmaMode, StableWitness,
};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Degree bound used when `--degree-bound` is absent (star sets, Hilbert
/// values, completion cap).
pub const DEFAULT_DEGREE_BOUND: u32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Command {
    MultVars,
    CompleteCheck,
    StablyCompleteCheck,
    Complete,
    StarSet,
    Classify,
    Pommaret,
    Hilbert,
    Sigma,
    InvolutiveTest,
    Reduce,
    IsMarkedBasis,
    OracleCheck,
    SchemeEquations,
    Specialize,
}

impl Command {
    pub const ALL: [Command; 15] = [
        Command::MultVars,
        Command::CompleteCheck,
        Command::StablyCompleteCheck,
        Command::Complete,
        Command::StarSet,
        Command::Classify,
        Command::Pommaret,
        Command::Hilbert,
        Command::Sigma,
        Command::InvolutiveTest,
        Command::Reduce,
        Command::IsMarkedBasis,
        Command::OracleCheck,
        Command::SchemeEquations,
        Command::Specialize,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::MultVars => "mult-vars",
            Command::CompleteCheck => "complete-check",
            Command::StablyCompleteCheck => "stably-complete-check",
            Command::Complete => "complete",
            Command::StarSet => "star-set",
            Command::Classify => "classify",
            Command::Pommaret => "pommaret",
            Command::Hilbert => "hilbert",
            Command::Sigma => "sigma",
            Command::InvolutiveTest => "involutive-test",
            Command::Reduce => "reduce",
            Command::IsMarkedBasis => "is-marked-basis",
            Command::OracleCheck => "oracle-check",
            Command::SchemeEquations => "scheme-equations",
            Command::Specialize => "specialize",
        }
    }

    pub fn from_name(name: &str) -> Option<Command> {
        Command::ALL.into_iter().find(|c| c.name() == name)
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SessionConfig {
    pub input: PathBuf,
    pub output: Option<PathBuf>,
    pub step_cap: usize,
    pub degree_bound: Option<u32>,
    pub sigma_mode: SigmaMode,
    pub trace: bool,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig {
            input: PathBuf::new(),
            output: None,
            step_cap: ReductionLimits::default().step_cap,
            degree_bound: None,
            sigma_mode: SigmaMode::IdealSlice,
            trace: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub report: Value,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Outcome { code: EXIT_OK, report }
    }

    fn verdict(positive: bool, report: Value) -> Self {
        Outcome {
            code: if positive { EXIT_OK } else { EXIT_NEGATIVE },
            report,
        }
    }

    pub fn error(kind: &str, message: impl fmt::Display) -> Self {
        Outcome {
            code: EXIT_INPUT,
            report: json!({"error": {"kind": kind, "message": message.to_string()}}),
        }
    }

    /// Pretty JSON with a trailing newline, the on-disk report format.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.report).expect("reports serialize");
        s.push('\n');
        s
    }
}

impl From<FormatError> for Outcome {
    fn from(e: FormatError) -> Self {
        Outcome::error("format", e)
    }
}

/// Reads `config.input` and runs `command` on it.
pub fn run(command: Command, config: &SessionConfig) -> Outcome {
    if config.step_cap == 0 {
        return Outcome::error("usage", "--step-cap must be at least 1");
    }
    let text = match std::fs::read_to_string(&config.input) {
        Ok(t) => t,
        Err(e) => return Outcome::error("io", format!("{}: {e}", config.input.display())),
    };
    let input: Value = match serde_json::from_str(&text) {
        Ok(v) => v,
        Err(e) => return Outcome::error("json", e),
    };
    run_on_value(command, &input, config)
}

pub fn run_on_value(command: Command, input: &Value, config: &SessionConfig) -> Outcome {
    let result = match command {
        Command::MultVars => mult_vars(input),
        Command::CompleteCheck => complete_check(input),
        Command::StablyCompleteCheck => stably_complete_check(input),
        Command::Complete => complete(input, config),
        Command::StarSet => star_set_cmd(input, config),
        Command::Classify => classify_cmd(input),
        Command::Pommaret => pommaret(input),
        Command::Hilbert => hilbert(input, config),
        Command::Sigma => sigma(input, config),
        Command::InvolutiveTest => involutive(input, config),
        Command::Reduce => reduce_cmd(input, config),
        Command::IsMarkedBasis => marked_basis(input, config),
        Command::OracleCheck => oracle(input, config),
        Command::SchemeEquations => scheme(input),
        Command::Specialize => specialize_cmd(input),
    };
    result.unwrap_or_else(|o| o)
}

type Run = Result<Outcome, Outcome>;

fn witness(term: &involutive::Term, var: involutive::Var) -> Value {
    json::witness_to_json(term, var)
}

fn stable_witness_json(w: &StableWitness) -> Value {
    match w {
        StableWitness::Incomplete { term, var } => json!({"reason": "incomplete", "witness": witness(term, *var)}),
        StableWitness::MultMismatch { term, var } => {
            json!({"reason": "multiplicative-mismatch", "witness": witness(term, *var)})
        }
    }
}

fn marked_error(e: MarkedError) -> Outcome {
    match e {
        MarkedError::MNotComplete { term, var } => {
            Outcome::verdict(false, json!({"complete": false, "witness": witness(&term, var)}))
        }
        MarkedError::MNotStablyComplete { term, var } => {
            Outcome::verdict(false, json!({"stably_complete": false, "witness": witness(&term, var)}))
        }
        other => Outcome::error("marked-set", other),
    }
}

fn not_quasi_stable(e: IdealError) -> Outcome {
    match e {
        IdealError::NotQuasiStable(p) => Outcome::verdict(
            false,
            json!({
                "quasi_stable": false,
                "witness": {
                    "generator": json::term_to_json(&p.generator),
                    "variable": p.var.number(),
                    "divisor_variable": p.divisor_var.number(),
                }
            }),
        ),
        other => Outcome::error("ideal", other),
    }
}

fn degree_bound(config: &SessionConfig) -> u32 {
    config.degree_bound.unwrap_or(DEFAULT_DEGREE_BOUND)
}

fn mult_vars(input: &Value) -> Run {
    let set = json::term_set_from_json(input)?;
    let janet = DivisionAssignment::janet(set.clone());
    let pommaret = DivisionAssignment::pommaret(set);
    Ok(Outcome::ok(json!({
        "janet": json::assignment_to_json(&janet),
        "pommaret": json::assignment_to_json(&pommaret),
    })))
}

fn complete_check(input: &Value) -> Run {
    let set = json::term_set_from_json(input)?;
    let c = is_complete(&set);
    let mut report = json!({"complete": c.complete});
    if let Some((t, v)) = &c.witness {
        report["witness"] = witness(t, *v);
    }
    Ok(Outcome::verdict(c.complete, report))
}

fn stably_complete_check(input: &Value) -> Run {
    let set = json::term_set_from_json(input)?;
    let c = involutive::is_stably_complete(&set);
    let mut report = json!({"stably_complete": c.stably_complete});
    if let Some(w) = &c.witness {
        let detail = stable_witness_json(w);
        report["reason"] = detail["reason"].clone();
        report["witness"] = detail["witness"].clone();
    }
    Ok(Outcome::verdict(c.stably_complete, report))
}

fn complete(input: &Value, config: &SessionConfig) -> Run {
    let set = json::term_set_from_json(input)?;
    let cap = degree_bound(config);
    match janet_complete(&set, cap) {
        Ok(done) => Ok(Outcome::ok(
            json!({"complete": true, "set": json::term_set_to_json(&done)}),
        )),
        Err(DivisionError::DegreeCapExceeded { cap, partial }) => Ok(Outcome::verdict(
            false,
            json!({"complete": false, "degree_cap": cap, "partial": json::term_set_to_json(&partial)}),
        )),
        Err(e) => Err(Outcome::error("division", e)),
    }
}

fn star_set_cmd(input: &Value, config: &SessionConfig) -> Run {
    let ideal = json::ideal_from_json(input)?;
    let bound = degree_bound(config);
    let s = star_set(&ideal, bound);
    Ok(Outcome::ok(json!({
        "degree_bound": bound,
        "exhaustive": s.exhaustive,
        "star_set": json::term_set_to_json(&s.terms),
    })))
}

fn classify_cmd(input: &Value) -> Run {
    let ideal = json::ideal_from_json(input)?;
    let r = classify(&ideal);
    let pair = |p: &Option<involutive::FailingPair>| match p {
        None => Value::Null,
        Some(p) => json!({
            "generator": json::term_to_json(&p.generator),
            "variable": p.var.number(),
            "divisor_variable": p.divisor_var.number(),
        }),
    };
    let mut report = json!({
        "strongly_stable": r.strongly_stable,
        "stable": r.stable,
        "quasi_stable": r.quasi_stable,
        "strongly_stable_witness": pair(&r.strongly_stable_witness),
        "stable_witness": pair(&r.stable_witness),
        "quasi_stable_witness": pair(&r.quasi_stable_witness),
    });
    if r.quasi_stable {
        report["uniform_exponent"] = json!(r.uniform_exponent);
        report["termination_degree"] = json!(termination_degree(&ideal, &r));
    }
    Ok(Outcome::ok(report))
}

fn pommaret(input: &Value) -> Run {
    let ideal = json::ideal_from_json(input)?;
    let basis = pommaret_basis(&ideal).map_err(not_quasi_stable)?;
    Ok(Outcome::ok(json!({
        "ideal": json::ideal_to_json(&ideal),
        "basis": json::term_set_to_json(&basis),
        "regularity": basis.max_degree().unwrap_or(0),
    })))
}

fn hilbert(input: &Value, config: &SessionConfig) -> Run {
    let set = json::term_set_from_json(input)?;
    let div = DivisionAssignment::janet(set);
    let bound = degree_bound(config);
    let mut values = Vec::new();
    for k in 0..=bound {
        match hilbert_function(&div, k) {
            Ok(v) => values.push(json!({"degree": k, "value": v.to_string()})),
            Err(IdealError::NotComplete { term, var }) => {
                return Ok(Outcome::verdict(
                    false,
                    json!({"complete": false, "witness": witness(&term, var)}),
                ))
            }
            Err(e) => return Err(Outcome::error("ideal", e)),
        }
    }
    Ok(Outcome::ok(json!({"values": values})))
}

fn sigma_degree(config: &SessionConfig) -> Result<u32, Outcome> {
    config
        .degree_bound
        .ok_or_else(|| Outcome::error("usage", "--degree-bound gives the degree p and is required"))
}

fn profile_json(p: &involutive::SigmaProfile) -> Value {
    json!({
        "degree": p.degree,
        "mode": serde_json::to_value(p.mode).expect("mode serializes"),
        "counts": p.counts,
        "total": p.total(),
        "weighted": p.weighted(),
    })
}

fn sigma(input: &Value, config: &SessionConfig) -> Run {
    let ideal = json::ideal_from_json(input)?;
    let p = sigma_degree(config)?;
    let profile = sigma_profile(&ideal, p, config.sigma_mode).map_err(|e| Outcome::error("usage", e))?;
    Ok(Outcome::ok(profile_json(&profile)))
}

fn involutive(input: &Value, config: &SessionConfig) -> Run {
    let ideal = json::ideal_from_json(input)?;
    let p = sigma_degree(config)?;
    let check = involutive_test(&ideal, p, config.sigma_mode).map_err(|e| Outcome::error("usage", e))?;
    Ok(Outcome::verdict(
        check.holds,
        json!({
            "holds": check.holds,
            "inequality_holds": check.inequality_holds(),
            "next_total": check.next_total,
            "weighted_total": check.weighted_total,
            "current": profile_json(&check.current),
            "next": profile_json(&check.next),
        }),
    ))
}

fn limits(config: &SessionConfig) -> ReductionLimits {
    ReductionLimits {
        step_cap: config.step_cap,
        ..ReductionLimits::default()
    }
}

fn reduce_cmd(input: &Value, config: &SessionConfig) -> Run {
    let set = json::marked_set_from_json(input)?;
    let h = json::polynomial_from_json(
        input
            .get("input")
            .ok_or_else(|| Outcome::error("format", "$: missing field \"input\""))?,
        set.vars(),
        "$.input",
    )?;
    let trace = reduce(&set, &h, limits(config)).map_err(marked_error)?;
    let mut report = json!({
        "status": serde_json::to_value(trace.status).expect("status serializes"),
        "result": json::polynomial_to_json(&trace.result),
        "steps": trace.steps.len(),
    });
    if config.trace {
        report["trace"] = json::trace_to_json(&trace);
    }
    Ok(Outcome::verdict(trace.status == ReductionStatus::Reduced, report))
}

fn marked_basis(input: &Value, config: &SessionConfig) -> Run {
    let set = json::marked_set_from_json(input)?;
    let cert = is_marked_basis(&set, limits(config)).map_err(marked_error)?;
    let checks: Vec<Value> = cert
        .checks
        .iter()
        .map(|c| {
            let mut v = json!({
                "head": json::term_to_json(&c.head),
                "variable": c.var.number(),
                "status": serde_json::to_value(c.trace.status).expect("status serializes"),
                "residue": json::polynomial_to_json(&c.trace.result),
            });
            if config.trace {
                v["trace"] = json::trace_to_json(&c.trace);
            }
            v
        })
        .collect();
    Ok(Outcome::verdict(
        cert.is_basis,
        json!({"is_basis": cert.is_basis, "checks": checks}),
    ))
}

fn oracle(input: &Value, config: &SessionConfig) -> Run {
    let set = json::marked_set_from_json(input)?;
    let max = config
        .degree_bound
        .unwrap_or_else(|| set.basis().max_degree().unwrap_or(0) + 1);
    let report = oracle_check(&set, max).map_err(marked_error)?;
    let degrees: Vec<Value> = report
        .degrees
        .iter()
        .map(|d| {
            json!({
                "degree": d.degree,
                "dimension": d.dimension,
                "ideal_rank": d.ideal_rank,
                "gs_rank": d.gs_rank,
                "escalier": d.escalier,
                "spanned": d.spanned,
                "ok": d.ok,
            })
        })
        .collect();
    Ok(Outcome::verdict(
        report.passed,
        json!({"passed": report.passed, "max_degree": max, "degrees": degrees}),
    ))
}

fn scheme_error(e: SchemeError) -> Outcome {
    match e {
        SchemeError::Ideal(e) => not_quasi_stable(e),
        SchemeError::MissingAssignment(_) | SchemeError::UnknownParameter(_) => Outcome::error("assignment", e),
        other => Outcome::error("scheme", other),
    }
}

fn scheme(input: &Value) -> Run {
    let ideal = json::ideal_from_json(input)?;
    let eqs = scheme_equations(&ideal).map_err(scheme_error)?;
    Ok(Outcome::ok(json::scheme_to_json(&ideal, &eqs)))
}

/// Text rendering of `scheme-equations`.
pub fn scheme_text(input: &Value) -> Result<String, Outcome> {
    let ideal = json::ideal_from_json(input)?;
    let eqs = scheme_equations(&ideal).map_err(scheme_error)?;
    Ok(json::scheme_to_text(&eqs))
}

/// Input `{"ideal": {...}, "assignment": {"C[i][...]": "p/q", ...}}`.
fn specialize_cmd(input: &Value) -> Run {
    let ideal = json::ideal_from_json(
        input
            .get("ideal")
            .ok_or_else(|| Outcome::error("format", "$: missing field \"ideal\""))?,
    )?;
    let raw = input
        .get("assignment")
        .and_then(Value::as_object)
        .ok_or_else(|| Outcome::error("format", "$: \"assignment\" must be an object"))?;
    let mut assignment: HashMap<String, Rational> = HashMap::new();
    for (name, v) in raw {
        assignment.insert(
            name.clone(),
            json::rational_from_json(v, &format!("$.assignment.{name}"))?,
        );
    }
    let eqs = scheme_equations(&ideal).map_err(scheme_error)?;
    let set = specialize(&eqs.generic, &assignment).map_err(scheme_error)?;
    let values: Vec<Rational> = eqs
        .generic
        .parameter_names()
        .iter()
        .map(|n| assignment[n].clone())
        .collect();
    Ok(Outcome::ok(json!({
        "marked_set": json::marked_set_to_json(&set),
        "on_scheme": eqs.vanish_at(&values),
    })))
}

/// Parses a report the way `run` emits it and serializes it again.
pub fn reserialize(text: &str) -> Result<String, serde_json::Error> {
    let v: Value = serde_json::from_str(text)?;
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}
