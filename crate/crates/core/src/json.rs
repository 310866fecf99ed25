//! JSON interchange for terms, term sets, ideals, marked sets, traces and
//! scheme equations. Output objects keep insertion order so reports
//! re-serialize byte for byte.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::division::{DivisionAssignment, TermSet};
use crate::ideal::MonomialIdeal;
use crate::marked::{MarkedError, MarkedPolynomial, MarkedSet, ReductionTrace};
use crate::poly::{format_rational, parse_rational, Polynomial, Rational};
use crate::scheme::{ParamPolynomial, SchemeEquations};
use crate::term::{Term, TermError, Var, VarSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
    #[error(transparent)]
    Term(#[from] TermError),
    #[error(transparent)]
    Marked(#[from] MarkedError),
}

fn invalid(path: &str, message: impl Into<String>) -> FormatError {
    FormatError::Invalid {
        path: path.to_string(),
        message: message.into(),
    }
}

fn field<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value, FormatError> {
    v.get(key)
        .ok_or_else(|| invalid(path, format!("missing field \"{key}\"")))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, FormatError> {
    v.as_array().ok_or_else(|| invalid(path, "expected an array"))
}

pub fn parse_vars(v: &Value, path: &str) -> Result<usize, FormatError> {
    let n = field(v, "vars", path)?
        .as_u64()
        .ok_or_else(|| invalid(path, "\"vars\" must be a non-negative integer"))?;
    usize::try_from(n).map_err(|_| invalid(path, "\"vars\" too large"))
}

pub fn term_to_json(t: &Term) -> Value {
    Value::from(t.exponents().to_vec())
}

pub fn term_from_json(v: &Value, vars: usize, path: &str) -> Result<Term, FormatError> {
    let exps = array(v, path)?
        .iter()
        .map(|e| {
            e.as_u64()
                .ok_or_else(|| invalid(path, "exponents must be non-negative integers"))
        })
        .collect::<Result<Vec<u64>, _>>()?;
    if exps.len() != vars {
        return Err(TermError::MismatchedVariableCount {
            expected: vars,
            found: exps.len(),
        }
        .into());
    }
    Ok(Term::from_wide(&exps)?)
}

fn terms_from_json(v: &Value, vars: usize, path: &str) -> Result<Vec<Term>, FormatError> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, t)| term_from_json(t, vars, &format!("{path}[{i}]")))
        .collect()
}

pub fn terms_to_json<'a>(terms: impl IntoIterator<Item = &'a Term>) -> Value {
    Value::Array(terms.into_iter().map(term_to_json).collect())
}

pub fn term_set_to_json(set: &TermSet) -> Value {
    json!({"vars": set.vars(), "terms": terms_to_json(set)})
}

/// Reads `{"vars", "terms"}`; `"generators"` is accepted in place of `"terms"`.
pub fn term_set_from_json(v: &Value) -> Result<TermSet, FormatError> {
    let vars = parse_vars(v, "$")?;
    let (key, list) = match (v.get("terms"), v.get("generators")) {
        (Some(t), _) => ("terms", t),
        (None, Some(g)) => ("generators", g),
        (None, None) => return Err(invalid("$", "missing field \"terms\"")),
    };
    Ok(TermSet::new(vars, terms_from_json(list, vars, &format!("$.{key}"))?)?)
}

pub fn ideal_to_json(ideal: &MonomialIdeal) -> Value {
    json!({"vars": ideal.vars(), "generators": terms_to_json(ideal.generators())})
}

/// Reads `{"vars", "generators"}` (or `"terms"`); non-minimal input is
/// minimized.
pub fn ideal_from_json(v: &Value) -> Result<MonomialIdeal, FormatError> {
    let set = term_set_from_json(v)?;
    Ok(MonomialIdeal::generated_by(&set))
}

pub fn var_set_to_json(s: VarSet) -> Value {
    Value::from(s.numbers())
}

pub fn assignment_to_json(a: &DivisionAssignment) -> Value {
    Value::Array(
        a.entries()
            .map(|(t, m)| json!({"term": term_to_json(t), "mult": var_set_to_json(m)}))
            .collect(),
    )
}

/// `{"term", "variable"}` with the variable 1-based.
pub fn witness_to_json(term: &Term, var: Var) -> Value {
    json!({"term": term_to_json(term), "variable": var.number()})
}

pub fn rational_to_json(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

pub fn rational_from_json(v: &Value, path: &str) -> Result<Rational, FormatError> {
    match v {
        Value::String(s) => parse_rational(s).ok_or_else(|| invalid(path, format!("bad rational \"{s}\""))),
        Value::Number(n) => n
            .as_i64()
            .map(|i| Rational::from_integer(BigInt::from(i)))
            .ok_or_else(|| invalid(path, "numeric coefficients must be integers; use \"p/q\"")),
        _ => Err(invalid(path, "expected a rational \"p/q\"")),
    }
}

/// `[{"term", "coeff"}]` in canonical term order.
pub fn polynomial_to_json(p: &Polynomial<Rational>) -> Value {
    Value::Array(
        p.iter()
            .map(|(t, c)| json!({"term": term_to_json(t), "coeff": rational_to_json(c)}))
            .collect(),
    )
}

pub fn polynomial_from_json(v: &Value, vars: usize, path: &str) -> Result<Polynomial<Rational>, FormatError> {
    let mut p = Polynomial::zero(vars);
    for (i, item) in array(v, path)?.iter().enumerate() {
        let here = format!("{path}[{i}]");
        let t = term_from_json(field(item, "term", &here)?, vars, &here)?;
        let c = rational_from_json(field(item, "coeff", &here)?, &here)?;
        p.add_term(t, c);
    }
    Ok(p)
}

pub fn marked_polynomial_to_json(p: &MarkedPolynomial<Rational>) -> Value {
    json!({"head": term_to_json(p.head()), "tail": polynomial_to_json(p.tail())})
}

pub fn marked_polynomial_from_json(
    v: &Value,
    vars: usize,
    path: &str,
) -> Result<MarkedPolynomial<Rational>, FormatError> {
    let head = term_from_json(field(v, "head", path)?, vars, &format!("{path}.head"))?;
    let tail = match v.get("tail") {
        Some(t) => polynomial_from_json(t, vars, &format!("{path}.tail"))?,
        None => Polynomial::zero(vars),
    };
    Ok(MarkedPolynomial::new(head, tail)?)
}

pub fn marked_set_to_json(set: &MarkedSet<Rational>) -> Value {
    json!({
        "vars": set.vars(),
        "polynomials": Value::Array(set.polynomials().iter().map(marked_polynomial_to_json).collect()),
    })
}

/// Reads `{"vars", "polynomials"}`. An optional `"basis"` list names the
/// division basis; otherwise it is the set of heads, and basis elements
/// without a polynomial get an empty tail.
pub fn marked_set_from_json(v: &Value) -> Result<MarkedSet<Rational>, FormatError> {
    let vars = parse_vars(v, "$")?;
    let polys = array(field(v, "polynomials", "$")?, "$.polynomials")?
        .iter()
        .enumerate()
        .map(|(i, p)| marked_polynomial_from_json(p, vars, &format!("$.polynomials[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    match v.get("basis") {
        None => Ok(MarkedSet::from_polynomials(vars, polys)?),
        Some(b) => {
            let basis = TermSet::new(vars, terms_from_json(b, vars, "$.basis")?)?;
            let tails = polys
                .into_iter()
                .map(|p| (p.head().clone(), p.tail().clone()))
                .collect();
            Ok(MarkedSet::new(basis, tails)?)
        }
    }
}

pub fn trace_to_json(trace: &ReductionTrace<Rational>) -> Value {
    let steps: Vec<Value> = trace
        .steps
        .iter()
        .map(|s| {
            json!({
                "term": term_to_json(&s.term),
                "head": term_to_json(&s.head),
                "cofactor": term_to_json(&s.cofactor),
                "coeff": rational_to_json(&s.coeff),
            })
        })
        .collect();
    json!({
        "status": serde_json::to_value(trace.status).expect("status serializes"),
        "steps": steps,
        "result": polynomial_to_json(&trace.result),
    })
}

fn integer_to_json(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(i) => Value::from(i),
        None => Value::String(c.to_string()),
    }
}

pub fn param_polynomial_to_json(p: &ParamPolynomial, names: &[String]) -> Value {
    let monomials: Vec<Value> = p
        .iter()
        .map(|(m, c)| {
            let mut vars = Map::new();
            for &(i, e) in m.factors() {
                vars.insert(names[i].clone(), Value::from(e));
            }
            json!({"vars": Value::Object(vars), "coeff": integer_to_json(c)})
        })
        .collect();
    json!({"monomials": monomials})
}

pub fn scheme_to_json(ideal: &MonomialIdeal, eqs: &SchemeEquations) -> Value {
    let names = eqs.generic.parameter_names();
    json!({
        "ideal": ideal_to_json(ideal),
        "parameters": names.clone(),
        "equations": Value::Array(eqs.equations.iter().map(|r| param_polynomial_to_json(r, &names)).collect()),
    })
}

/// One line per parameter and per equation.
pub fn scheme_to_text(eqs: &SchemeEquations) -> String {
    let names = eqs.generic.parameter_names();
    let mut out = format!("parameters ({}): {}\n", names.len(), names.join(" "));
    out.push_str(&format!("equations ({}):\n", eqs.equations.len()));
    for r in &eqs.equations {
        out.push_str(&format!("  {} = 0\n", r.render(&names)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational;

    #[test]
    fn term_round_trip() {
        let t = Term::new(vec![1, 0, 2]).unwrap();
        assert_eq!(term_to_json(&t), json!([1, 0, 2]));
        assert_eq!(term_from_json(&json!([1, 0, 2]), 3, "$").unwrap(), t);
        assert!(term_from_json(&json!([1, 0]), 3, "$").is_err());
        assert!(term_from_json(&json!([1, -1, 0]), 3, "$").is_err());
    }

    #[test]
    fn ideal_minimized_on_load() {
        let v = json!({"vars": 2, "generators": [[1, 1], [2, 1], [0, 2]]});
        let ideal = ideal_from_json(&v).unwrap();
        assert_eq!(
            ideal_to_json(&ideal),
            json!({"vars": 2, "generators": [[1, 1], [0, 2]]})
        );
    }

    #[test]
    fn marked_set_round_trip() {
        let v = json!({
            "vars": 2,
            "polynomials": [
                {"head": [3, 0], "tail": []},
                {"head": [1, 1], "tail": [{"term": [2, 0], "coeff": "-1/1"}, {"term": [0, 2], "coeff": "-1"}]},
                {"head": [1, 2], "tail": []},
                {"head": [0, 3], "tail": []}
            ]
        });
        let set = marked_set_from_json(&v).unwrap();
        let out = marked_set_to_json(&set);
        assert_eq!(out["polynomials"][0]["head"], json!([1, 1]));
        assert_eq!(out["polynomials"][0]["tail"][1]["coeff"], json!("-1/1"));
        assert_eq!(marked_set_to_json(&marked_set_from_json(&out).unwrap()), out);
    }

    #[test]
    fn rationals() {
        assert_eq!(rational_from_json(&json!("6/-4"), "$").unwrap(), rational(-3, 2));
        assert_eq!(rational_from_json(&json!(5), "$").unwrap(), rational(5, 1));
        assert!(rational_from_json(&json!(0.5), "$").is_err());
    }
}
