//! The generic marked set over a quasi-stable ideal and the equations of
//! its marked scheme, computed over the integers.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::division::TermSet;
use crate::ideal::{pommaret_basis, IdealError, MonomialIdeal};
use crate::marked::{is_marked_basis, MarkedError, MarkedSet, ReductionLimits};
use crate::poly::{Polynomial, Rational};
use crate::term::Term;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Marked(#[from] MarkedError),
    #[error("no value assigned to parameter {0}")]
    MissingAssignment(String),
    #[error("unknown parameter {0}")]
    UnknownParameter(String),
    #[error("reduction of a generic prolongation did not finish")]
    Unfinished,
}

/// The coefficient `C_{i,β}` of `x^β` in the tail of the `i`-th generic
/// polynomial (1-based, canonical order).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParamVar {
    pub generator: usize,
    pub tail: Term,
}

impl ParamVar {
    pub fn name(&self) -> String {
        let exps: Vec<String> = self.tail.exponents().iter().map(u32::to_string).collect();
        format!("C[{}][{}]", self.generator, exps.join(","))
    }
}

impl fmt::Display for ParamVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A product of parameters as sorted `(parameter index, exponent)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ParamMonomial(Vec<(usize, u32)>);

impl ParamMonomial {
    pub fn one() -> Self {
        ParamMonomial(Vec::new())
    }

    pub fn var(index: usize) -> Self {
        ParamMonomial(vec![(index, 1)])
    }

    pub fn factors(&self) -> &[(usize, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    fn mul(&self, other: &ParamMonomial) -> ParamMonomial {
        let mut merged: BTreeMap<usize, u32> = self.0.iter().copied().collect();
        for &(i, e) in &other.0 {
            *merged.entry(i).or_insert(0) += e;
        }
        ParamMonomial(merged.into_iter().collect())
    }
}

/// Integer polynomial in the scheme parameters, sparse and without zero
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ParamPolynomial {
    terms: BTreeMap<ParamMonomial, BigInt>,
}

impl ParamPolynomial {
    pub fn constant(c: BigInt) -> Self {
        let mut p = ParamPolynomial::default();
        p.add_monomial(ParamMonomial::one(), c);
        p
    }

    pub fn var(index: usize) -> Self {
        let mut p = ParamPolynomial::default();
        p.add_monomial(ParamMonomial::var(index), BigInt::one());
        p
    }

    pub fn from_monomials(items: impl IntoIterator<Item = (ParamMonomial, BigInt)>) -> Self {
        let mut p = ParamPolynomial::default();
        for (m, c) in items {
            p.add_monomial(m, c);
        }
        p
    }

    pub fn add_monomial(&mut self, m: ParamMonomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `(monomial, coefficient)` in increasing monomial order.
    pub fn iter(&self) -> impl Iterator<Item = (&ParamMonomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(ParamMonomial::degree).max()
    }

    /// Value at `values[k]` for parameter index `k`.
    pub fn eval(&self, values: &[Rational]) -> Rational {
        let mut sum = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = Rational::from_integer(c.clone());
            for &(i, e) in m.factors() {
                v *= num_traits::pow(values[i].clone(), e as usize);
            }
            sum += v;
        }
        sum
    }

    /// Text form with parameter names supplied by `names`.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let factors: Vec<String> = m
                .factors()
                .iter()
                .map(|&(i, e)| {
                    if e == 1 {
                        names[i].clone()
                    } else {
                        format!("{}^{}", names[i], e)
                    }
                })
                .collect();
            if factors.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&format!("{abs}*"));
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

impl crate::poly::Ring for ParamPolynomial {
    fn zero() -> Self {
        ParamPolynomial::default()
    }
    fn one() -> Self {
        ParamPolynomial::constant(<BigInt as One>::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_assign_ref(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_monomial(m.clone(), c.clone());
        }
    }
    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = ParamPolynomial::default();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_monomial(a.mul(b), x * y);
            }
        }
        out
    }
    fn negated(&self) -> Self {
        ParamPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

/// `f_i = x^{α_i} + Σ_β C_{i,β} x^β` for every `x^{α_i}` in the star set.
#[derive(Debug, Clone)]
pub struct GenericMarkedSet {
    params: Vec<ParamVar>,
    set: MarkedSet<ParamPolynomial>,
}

impl GenericMarkedSet {
    pub fn parameters(&self) -> &[ParamVar] {
        &self.params
    }

    pub fn parameter_names(&self) -> Vec<String> {
        self.params.iter().map(ParamVar::name).collect()
    }

    pub fn marked_set(&self) -> &MarkedSet<ParamPolynomial> {
        &self.set
    }

    pub fn basis(&self) -> &TermSet {
        self.set.basis()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.params.iter().position(|p| p.name() == name)
    }
}

pub fn generic_marked_set(ideal: &MonomialIdeal) -> Result<GenericMarkedSet, SchemeError> {
    let basis = pommaret_basis(ideal)?;
    let mut params = Vec::new();
    let mut tails = Vec::with_capacity(basis.len());
    for (i, head) in basis.iter().enumerate() {
        let mut tail = Polynomial::zero(basis.vars());
        for beta in ideal.escalier_slice(head.degree()) {
            tail.add_term(beta.clone(), ParamPolynomial::var(params.len()));
            params.push(ParamVar {
                generator: i + 1,
                tail: beta,
            });
        }
        tails.push((head.clone(), tail));
    }
    let set = MarkedSet::new(basis, tails)?;
    Ok(GenericMarkedSet { params, set })
}

#[derive(Debug, Clone)]
pub struct SchemeEquations {
    pub generic: GenericMarkedSet,
    /// Sorted, duplicate-free, no zero polynomial.
    pub equations: Vec<ParamPolynomial>,
}

impl SchemeEquations {
    pub fn vanish_at(&self, values: &[Rational]) -> bool {
        self.equations.iter().all(|r| r.eval(values).is_zero())
    }
}

/// The coefficients of the residues of all non-multiplicative prolongations
/// of the generic marked set.
pub fn scheme_equations(ideal: &MonomialIdeal) -> Result<SchemeEquations, SchemeError> {
    let generic = generic_marked_set(ideal)?;
    // The star set is stably complete, so reduction terminates; no cap.
    let limits = ReductionLimits {
        step_cap: usize::MAX,
        detect_cycles: false,
    };
    let cert = is_marked_basis(&generic.set, limits)?;
    let mut equations = Vec::new();
    for check in &cert.checks {
        if check.trace.status != crate::marked::ReductionStatus::Reduced {
            return Err(SchemeError::Unfinished);
        }
        equations.extend(check.trace.result.iter().map(|(_, c)| c.clone()));
    }
    equations.sort();
    equations.dedup();
    Ok(SchemeEquations { generic, equations })
}

/// Substitutes `values[k]` for parameter `k`.
pub fn specialize_values(generic: &GenericMarkedSet, values: &[Rational]) -> Result<MarkedSet<Rational>, SchemeError> {
    if values.len() < generic.params.len() {
        return Err(SchemeError::MissingAssignment(generic.params[values.len()].name()));
    }
    let tails = generic
        .set
        .polynomials()
        .iter()
        .map(|p| (p.head().clone(), p.tail().map_coeffs(|c| c.eval(values))))
        .collect();
    Ok(MarkedSet::new(generic.basis().clone(), tails)?)
}

/// Substitution by parameter name; every parameter must be assigned.
pub fn specialize(
    generic: &GenericMarkedSet,
    assignment: &HashMap<String, Rational>,
) -> Result<MarkedSet<Rational>, SchemeError> {
    for name in assignment.keys() {
        if generic.index_of(name).is_none() {
            return Err(SchemeError::UnknownParameter(name.clone()));
        }
    }
    let values = generic
        .params
        .iter()
        .map(|p| {
            assignment
                .get(&p.name())
                .cloned()
                .ok_or_else(|| SchemeError::MissingAssignment(p.name()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    specialize_values(generic, &values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::marked::reduce;
    use crate::poly::{rational, Ring};

    fn ideal(exps: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(exps[0].len(), exps).unwrap()
    }

    fn q(n: i64) -> Rational {
        rational(n, 1)
    }

    #[test]
    fn generic_set_parameters() {
        let g = generic_marked_set(&ideal(&[&[2, 0], &[1, 1], &[0, 3]])).unwrap();
        assert_eq!(g.parameter_names(), vec!["C[1][0,2]", "C[2][0,2]"]);
        assert_eq!(g.basis().len(), 4);

        let g = generic_marked_set(&ideal(&[&[3, 0], &[1, 1], &[0, 3]])).unwrap();
        assert_eq!(g.parameter_names(), vec!["C[1][2,0]", "C[1][0,2]"]);

        let g = generic_marked_set(&ideal(&[&[1, 0], &[0, 1]])).unwrap();
        assert!(g.parameters().is_empty());
    }

    #[test]
    fn not_quasi_stable() {
        assert!(matches!(
            generic_marked_set(&ideal(&[&[0, 1, 0]])),
            Err(SchemeError::Ideal(IdealError::NotQuasiStable(_)))
        ));
    }

    #[test]
    fn flat_families_have_no_equations() {
        assert!(scheme_equations(&ideal(&[&[2, 0], &[1, 1], &[0, 3]]))
            .unwrap()
            .equations
            .is_empty());
        assert!(scheme_equations(&ideal(&[&[3, 0], &[1, 1], &[0, 3]]))
            .unwrap()
            .equations
            .is_empty());
    }

    #[test]
    fn equations_of_xy_y2() {
        // f1 = xy + a x^2, f2 = y^2 + b x^2: y f1 - x f2 - a x f1 = -(a^2 + b) x^3.
        let r = scheme_equations(&ideal(&[&[1, 1], &[0, 2]])).unwrap();
        assert_eq!(r.generic.parameter_names(), vec!["C[1][2,0]", "C[2][2,0]"]);
        let expected = ParamPolynomial::from_monomials([
            (ParamMonomial(vec![(0, 2)]), BigInt::from(-1)),
            (ParamMonomial::var(1), BigInt::from(-1)),
        ]);
        assert_eq!(r.equations, vec![expected]);
        for a in -3..=3 {
            for b in -3..=3 {
                let g = specialize_values(&r.generic, &[q(a), q(b)]).unwrap();
                let basis = is_marked_basis(&g, ReductionLimits::default()).unwrap().is_basis;
                assert_eq!(r.vanish_at(&[q(a), q(b)]), basis);
                assert_eq!(basis, b == -a * a);
            }
        }
    }

    #[test]
    fn specialization_commutes_with_reduction() {
        let r = scheme_equations(&ideal(&[&[0, 0, 2], &[0, 1, 0]])).unwrap();
        let n = r.generic.parameters().len();
        let values: Vec<Rational> = (0..n).map(|k| rational(k as i64 - 2, 3)).collect();
        let concrete = specialize_values(&r.generic, &values).unwrap();
        let generic_cert = is_marked_basis(r.generic.marked_set(), ReductionLimits::default()).unwrap();
        for check in &generic_cert.checks {
            let p = concrete.polynomial_for(&check.head).unwrap();
            let prolonged = p.to_polynomial().mul_term(&Term::var(3, check.var));
            let trace = reduce(&concrete, &prolonged, ReductionLimits::default()).unwrap();
            let evaluated = check.trace.result.map_coeffs(|c| c.eval(&values));
            assert_eq!(trace.result, evaluated);
        }
    }

    #[test]
    fn specialize_by_name() {
        let g = generic_marked_set(&ideal(&[&[3, 0], &[1, 1], &[0, 3]])).unwrap();
        let mut assignment = HashMap::new();
        assignment.insert("C[1][0,2]".to_string(), q(-1));
        assert!(matches!(
            specialize(&g, &assignment),
            Err(SchemeError::MissingAssignment(_))
        ));
        assignment.insert("C[1][2,0]".to_string(), q(-1));
        let set = specialize(&g, &assignment).unwrap();
        assert!(is_marked_basis(&set, ReductionLimits::default()).unwrap().is_basis);
        assignment.insert("C[9][0,0]".to_string(), q(0));
        assert!(matches!(
            specialize(&g, &assignment),
            Err(SchemeError::UnknownParameter(_))
        ));
    }

    #[test]
    fn rendering() {
        let p = ParamPolynomial::from_monomials([
            (ParamMonomial::var(0), BigInt::from(-1)),
            (ParamMonomial(vec![(1, 2)]), BigInt::from(-1)),
        ]);
        let names = vec!["a".to_string(), "b".to_string()];
        assert_eq!(p.render(&names), "-b^2 - a");
        assert!(!Ring::is_zero(&p.mul_ref(&ParamPolynomial::one())));
    }
}
