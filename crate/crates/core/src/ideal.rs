//! Monomial ideals: star sets, the stable / quasi-stable hierarchy, Pommaret
//! bases, Hilbert function by offspring counting and Janet's σ-invariants.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::division::{is_stably_complete, DivisionAssignment, TermSet};
use crate::parallel;
use crate::term::{binomial, count_terms_of_degree, terms_of_degree, Term, TermError, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error(transparent)]
    Term(#[from] TermError),
    #[error("ideal is not quasi-stable: x_{} * {} / x_{} never enters the ideal", .0.var, .0.generator, .0.divisor_var)]
    NotQuasiStable(FailingPair),
    #[error("sigma invariants need degree >= 1, got {0}")]
    InvalidDegree(u32),
    #[error("set is not complete: x_{var} * {term} lies in no offspring")]
    NotComplete { term: Term, var: Var },
    #[error("multiplicative variables do not match Janet's division on the set")]
    InconsistentAssignment,
}

/// A monomial ideal stored by its minimal generating set `G(J)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    generators: TermSet,
}

impl MonomialIdeal {
    /// Builds the ideal generated by `terms`, discarding non-minimal ones.
    pub fn new(vars: usize, terms: impl IntoIterator<Item = Term>) -> Result<Self, TermError> {
        let all = TermSet::new(vars, terms)?;
        let minimal: Vec<Term> = all
            .iter()
            .filter(|t| !all.iter().any(|g| g != *t && g.divides(t)))
            .cloned()
            .collect();
        Ok(MonomialIdeal {
            generators: TermSet::new(vars, minimal)?,
        })
    }

    pub fn from_exponents(vars: usize, exps: &[&[u32]]) -> Result<Self, TermError> {
        let terms = exps
            .iter()
            .map(|e| Term::new(e.to_vec()))
            .collect::<Result<Vec<_>, _>>()?;
        MonomialIdeal::new(vars, terms)
    }

    pub fn generated_by(set: &TermSet) -> Self {
        MonomialIdeal::new(set.vars(), set.iter().cloned()).expect("same arity")
    }

    pub fn vars(&self) -> usize {
        self.generators.vars()
    }

    pub fn generators(&self) -> &TermSet {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.generators.generates(t)
    }

    /// `J_d`, increasing lex.
    pub fn slice(&self, degree: u32) -> Vec<Term> {
        self.split_slice(degree).0
    }

    /// `N(J)_d`, increasing lex.
    pub fn escalier_slice(&self, degree: u32) -> Vec<Term> {
        self.split_slice(degree).1
    }

    /// `(J_d, N(J)_d)`.
    pub fn split_slice(&self, degree: u32) -> (Vec<Term>, Vec<Term>) {
        let all = terms_of_degree(self.vars(), degree);
        let flags = parallel::map(&all, |t| self.contains(t));
        let mut inside = Vec::new();
        let mut outside = Vec::new();
        for (t, f) in all.into_iter().zip(flags) {
            if f {
                inside.push(t);
            } else {
                outside.push(t);
            }
        }
        (inside, outside)
    }

    /// Whether `t` is in the star set: `t ∈ J` and `t / min(t) ∉ J`.
    pub fn is_star_element(&self, t: &Term) -> bool {
        if !self.contains(t) {
            return false;
        }
        match t.min_var() {
            Some(v) => !self.contains(&t.predecessor(v).expect("min var divides")),
            None => true,
        }
    }

    fn star_slice(&self, degree: u32) -> Vec<Term> {
        let all = terms_of_degree(self.vars(), degree);
        let flags = parallel::map(&all, |t| self.is_star_element(t));
        all.into_iter().zip(flags).filter(|(_, f)| *f).map(|(t, _)| t).collect()
    }
}

pub fn membership(ideal: &MonomialIdeal, t: &Term) -> bool {
    ideal.contains(t)
}

/// A `(generator, x_j)` pair violating a stability condition. `divisor_var`
/// is the variable divided out (`min(generator)` except for strong stability).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FailingPair {
    pub generator: Term,
    pub var: Var,
    pub divisor_var: Var,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityReport {
    pub strongly_stable: bool,
    pub stable: bool,
    pub quasi_stable: bool,
    pub strongly_stable_witness: Option<FailingPair>,
    pub stable_witness: Option<FailingPair>,
    pub quasi_stable_witness: Option<FailingPair>,
    /// Smallest `t` such that `x_j^t g / min(g) ∈ J` for every generator `g`
    /// and every `x_j > min(g)` that admits some exponent at all.
    pub uniform_exponent: u32,
}

/// Smallest `t >= 0` with `x_j^t * u ∈ J`, if any. A generator `γ` works for
/// some `t` iff it divides `u` outside position `j`.
fn smallest_power(ideal: &MonomialIdeal, u: &Term, j: Var) -> Option<u32> {
    ideal
        .generators()
        .iter()
        .filter(|g| {
            g.exponents()
                .iter()
                .zip(u.exponents())
                .enumerate()
                .all(|(i, (a, b))| i == j.pos() || a <= b)
        })
        .map(|g| g.exponent(j).saturating_sub(u.exponent(j)))
        .min()
}

/// Checks the three stability properties on the generators only.
pub fn classify(ideal: &MonomialIdeal) -> StabilityReport {
    let n = ideal.vars();
    let mut strong_w = None;
    let mut stable_w = None;
    let mut quasi_w = None;
    let mut uniform = 0;
    for g in ideal.generators() {
        if strong_w.is_none() {
            'outer: for i in g.support().iter() {
                let without = g.predecessor(i).expect("in support");
                for j in (i.pos() + 1..n).map(Var::at) {
                    if !ideal.contains(&without.mul_var(j)) {
                        strong_w = Some(FailingPair {
                            generator: g.clone(),
                            var: j,
                            divisor_var: i,
                        });
                        break 'outer;
                    }
                }
            }
        }
        let Some(lo) = g.min_var() else { continue };
        let u = g.predecessor(lo).expect("min var divides");
        for j in (lo.pos() + 1..n).map(Var::at) {
            let pair = || FailingPair {
                generator: g.clone(),
                var: j,
                divisor_var: lo,
            };
            if stable_w.is_none() && !ideal.contains(&u.mul_var(j)) {
                stable_w = Some(pair());
            }
            match smallest_power(ideal, &u, j) {
                Some(t) => uniform = uniform.max(t),
                None => {
                    if quasi_w.is_none() {
                        quasi_w = Some(pair());
                    }
                }
            }
        }
    }
    let report = StabilityReport {
        strongly_stable: strong_w.is_none(),
        stable: stable_w.is_none(),
        quasi_stable: quasi_w.is_none(),
        strongly_stable_witness: strong_w,
        stable_witness: stable_w,
        quasi_stable_witness: quasi_w,
        uniform_exponent: uniform,
    };
    assert!(
        !report.strongly_stable || report.stable,
        "strongly stable must imply stable"
    );
    assert!(!report.stable || report.quasi_stable, "stable must imply quasi-stable");
    report
}

/// `d = a + t·n` with `a` the largest generator degree and `t` the uniform
/// exponent (at least 1); for quasi-stable ideals every star-set element has
/// degree `< d`.
pub fn termination_degree(ideal: &MonomialIdeal, report: &StabilityReport) -> u32 {
    let a = ideal.generators().max_degree().unwrap_or(0);
    a + report.uniform_exponent.max(1) * ideal.vars() as u32
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarSet {
    pub terms: TermSet,
    /// Whether `terms` is the whole star set.
    pub exhaustive: bool,
}

/// Star-set elements of degree `<= degree_bound`.
///
/// `exhaustive` is decided by scanning: the ideal must be quasi-stable and no
/// further element may appear between the bound and `n` degrees past the
/// termination degree.
pub fn star_set(ideal: &MonomialIdeal, degree_bound: u32) -> StarSet {
    let n = ideal.vars();
    let mut found = Vec::new();
    for d in 0..=degree_bound {
        found.extend(ideal.star_slice(d));
    }
    let report = classify(ideal);
    let exhaustive = report.quasi_stable && {
        let last = degree_bound.max(termination_degree(ideal, &report).saturating_sub(1)) + n as u32;
        (degree_bound + 1..=last).all(|d| ideal.star_slice(d).is_empty())
    };
    StarSet {
        terms: TermSet::new(n, found).expect("same arity"),
        exhaustive,
    }
}

/// The Pommaret basis `F(J) = H(J)` of a quasi-stable ideal.
pub fn pommaret_basis(ideal: &MonomialIdeal) -> Result<TermSet, IdealError> {
    let report = classify(ideal);
    if let Some(w) = report.quasi_stable_witness {
        return Err(IdealError::NotQuasiStable(w));
    }
    let bound = termination_degree(ideal, &report).saturating_sub(1);
    let mut found = Vec::new();
    for d in 0..=bound {
        found.extend(ideal.star_slice(d));
    }
    let basis = TermSet::new(ideal.vars(), found)?;
    debug_assert!(is_stably_complete(&basis).stably_complete);
    Ok(basis)
}

/// Maximal degree of the Pommaret basis (the Castelnuovo–Mumford regularity
/// of a quasi-stable ideal).
pub fn regularity_report(ideal: &MonomialIdeal) -> Result<u32, IdealError> {
    Ok(pommaret_basis(ideal)?.max_degree().unwrap_or(0))
}

/// Number of degree-`k` terms in an offspring with `s` multiplicative
/// variables rooted at degree `d`.
fn offspring_count(k: u32, d: u32, s: usize) -> u128 {
    if k < d {
        return 0;
    }
    if s == 0 {
        return u128::from(k == d);
    }
    binomial(u64::from(k - d) + s as u64 - 1, s as u64 - 1)
}

/// `dim (P/(M))_k` from the offspring partition of a complete set `M`.
pub fn hilbert_function(assignment: &DivisionAssignment, k: u32) -> Result<u128, IdealError> {
    let janet = DivisionAssignment::janet(assignment.set().clone());
    if janet.entries().map(|(_, m)| m).ne(assignment.entries().map(|(_, m)| m)) {
        return Err(IdealError::InconsistentAssignment);
    }
    if let Some((term, var)) = janet.completeness_witness() {
        return Err(IdealError::NotComplete { term, var });
    }
    let ambient = count_terms_of_degree(assignment.vars(), k);
    let covered: u128 = assignment
        .entries()
        .map(|(tau, m)| offspring_count(k, tau.degree(), m.len()))
        .sum();
    Ok(ambient - covered)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SigmaMode {
    /// Count over `N(J)_p`.
    Escalier,
    /// Count over `J_p`.
    IdealSlice,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaProfile {
    pub degree: u32,
    pub mode: SigmaMode,
    /// `counts[i]` is the number of counted terms with `min = x_{i+1}`.
    pub counts: Vec<u64>,
}

impl SigmaProfile {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `Σ i·σ_i`.
    pub fn weighted(&self) -> u64 {
        self.counts.iter().enumerate().map(|(i, c)| (i as u64 + 1) * c).sum()
    }
}

pub fn sigma_profile(ideal: &MonomialIdeal, p: u32, mode: SigmaMode) -> Result<SigmaProfile, IdealError> {
    if p == 0 {
        return Err(IdealError::InvalidDegree(p));
    }
    let (inside, outside) = ideal.split_slice(p);
    let counted = match mode {
        SigmaMode::Escalier => outside,
        SigmaMode::IdealSlice => inside,
    };
    let mut counts = vec![0u64; ideal.vars()];
    for t in &counted {
        counts[t.min_var().expect("positive degree").pos()] += 1;
    }
    Ok(SigmaProfile {
        degree: p,
        mode,
        counts,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutiveCheck {
    pub holds: bool,
    pub current: SigmaProfile,
    pub next: SigmaProfile,
    /// `Σ σ_i^{(p+1)}`.
    pub next_total: u64,
    /// `Σ i·σ_i^{(p)}`.
    pub weighted_total: u64,
}

impl InvolutiveCheck {
    /// The inequality that holds below the equality range: over the
    /// escalier the next degree can only shrink relative to `Σ i·σ_i`, over
    /// the ideal slice it can only grow.
    pub fn inequality_holds(&self) -> bool {
        match self.current.mode {
            SigmaMode::Escalier => self.next_total <= self.weighted_total,
            SigmaMode::IdealSlice => self.weighted_total <= self.next_total,
        }
    }
}

/// Janet's involution equality `Σ σ^{(p+1)}_i = Σ i·σ^{(p)}_i`.
pub fn involutive_test(ideal: &MonomialIdeal, p: u32, mode: SigmaMode) -> Result<InvolutiveCheck, IdealError> {
    let current = sigma_profile(ideal, p, mode)?;
    let next = sigma_profile(ideal, p + 1, mode)?;
    let next_total = next.total();
    let weighted_total = current.weighted();
    Ok(InvolutiveCheck {
        holds: next_total == weighted_total,
        current,
        next,
        next_total,
        weighted_total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::division::Flavor;

    fn ideal(n: usize, e: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(n, e).unwrap()
    }

    fn set(n: usize, e: &[&[u32]]) -> TermSet {
        TermSet::from_exponents(n, e).unwrap()
    }

    fn t(e: &[u32]) -> Term {
        Term::new(e.to_vec()).unwrap()
    }

    #[test]
    fn minimizes_generators() {
        let j = ideal(2, &[&[1, 0], &[2, 0], &[1, 3]]);
        assert_eq!(j.generators(), &set(2, &[&[1, 0]]));
    }

    #[test]
    fn membership_examples() {
        let x = ideal(2, &[&[1, 0]]);
        assert!(membership(&x, &t(&[1, 5])));
        assert!(!membership(&x, &t(&[0, 5])));
        assert!(membership(&ideal(3, &[&[0, 0, 1], &[0, 2, 0]]), &t(&[0, 1, 1])));
    }

    #[test]
    fn star_set_examples() {
        let s = star_set(&ideal(2, &[&[1, 0]]), 4);
        assert_eq!(s.terms, set(2, &[&[1, 0], &[1, 1], &[1, 2], &[1, 3]]));
        assert!(!s.exhaustive);

        let s = star_set(&ideal(3, &[&[0, 0, 2], &[0, 1, 0]]), 4);
        assert_eq!(s.terms, set(3, &[&[0, 0, 2], &[0, 1, 1], &[0, 1, 0]]));
        assert!(s.exhaustive);

        let s = star_set(&ideal(3, &[&[0, 0, 1], &[0, 2, 0]]), 4);
        assert_eq!(s.terms, set(3, &[&[0, 0, 1], &[0, 2, 0]]));
        assert!(s.exhaustive);
    }

    #[test]
    fn classify_examples() {
        let r = classify(&ideal(3, &[&[0, 0, 1], &[0, 2, 0]]));
        assert!(r.stable && r.quasi_stable);

        let r = classify(&ideal(3, &[&[0, 0, 2], &[0, 1, 0]]));
        assert!(r.quasi_stable && !r.stable);
        assert_eq!(
            r.stable_witness,
            Some(FailingPair {
                generator: t(&[0, 1, 0]),
                var: Var::at(2),
                divisor_var: Var::at(1)
            })
        );
        assert_eq!(r.uniform_exponent, 2);

        let r = classify(&ideal(3, &[&[0, 1, 0]]));
        assert!(!r.quasi_stable);
        assert!(!r.stable && !r.strongly_stable);
    }

    #[test]
    fn pommaret_examples() {
        assert_eq!(
            pommaret_basis(&ideal(2, &[&[3, 0], &[1, 1], &[0, 3]])).unwrap(),
            set(2, &[&[3, 0], &[1, 1], &[1, 2], &[0, 3]])
        );
        assert_eq!(
            pommaret_basis(&ideal(3, &[&[0, 0, 2], &[0, 1, 0]])).unwrap(),
            set(3, &[&[0, 0, 2], &[0, 1, 1], &[0, 1, 0]])
        );
        assert!(matches!(
            pommaret_basis(&ideal(3, &[&[0, 1, 0]])),
            Err(IdealError::NotQuasiStable(_))
        ));
    }

    #[test]
    fn regularity_examples() {
        assert_eq!(regularity_report(&ideal(2, &[&[3, 0], &[1, 1], &[0, 3]])).unwrap(), 3);
        assert_eq!(regularity_report(&ideal(3, &[&[0, 0, 2], &[0, 1, 0]])).unwrap(), 2);
        assert_eq!(regularity_report(&ideal(3, &[&[0, 0, 5]])).unwrap(), 5);
    }

    #[test]
    fn hilbert_examples() {
        let m = DivisionAssignment::janet(set(2, &[&[1, 0]]));
        for k in 0..8 {
            assert_eq!(hilbert_function(&m, k).unwrap(), 1);
        }
        let m = DivisionAssignment::pommaret(set(2, &[&[2, 0], &[1, 1], &[1, 2], &[0, 3]]));
        assert_eq!(m.flavor(), Flavor::Pommaret);
        assert_eq!(hilbert_function(&m, 2).unwrap(), 1);
        for k in 3..8 {
            assert_eq!(hilbert_function(&m, k).unwrap(), 0);
        }
        let incomplete = DivisionAssignment::janet(set(2, &[&[1, 0], &[0, 2]]));
        assert!(matches!(
            hilbert_function(&incomplete, 2),
            Err(IdealError::NotComplete { .. })
        ));
        let mismatch = DivisionAssignment::pommaret(set(2, &[&[2, 0], &[1, 1]]));
        assert_eq!(hilbert_function(&mismatch, 2), Err(IdealError::InconsistentAssignment));
    }

    #[test]
    fn hilbert_with_no_multiplicative_variables() {
        // mult(y) is empty here; its offspring is {y} alone.
        let m = DivisionAssignment::janet(set(2, &[&[0, 1], &[1, 1], &[0, 2]]));
        assert!(m.mult_of(&t(&[0, 1])).unwrap().is_empty());
        let j = MonomialIdeal::generated_by(m.set());
        for k in 0..6 {
            assert_eq!(hilbert_function(&m, k).unwrap(), j.escalier_slice(k).len() as u128);
        }
    }

    #[test]
    fn sigma_examples() {
        let j = ideal(3, &[&[0, 0, 1], &[0, 2, 0]]);
        assert_eq!(sigma_profile(&j, 2, SigmaMode::Escalier).unwrap().counts, vec![2, 0, 0]);
        assert_eq!(
            sigma_profile(&j, 2, SigmaMode::IdealSlice).unwrap().counts,
            vec![1, 2, 1]
        );
        let unit = ideal(3, &[&[0, 0, 0]]);
        assert_eq!(
            sigma_profile(&unit, 1, SigmaMode::Escalier).unwrap().counts,
            vec![0, 0, 0]
        );
        assert_eq!(
            sigma_profile(&j, 0, SigmaMode::Escalier),
            Err(IdealError::InvalidDegree(0))
        );
    }

    #[test]
    fn involutive_examples() {
        let j = ideal(3, &[&[0, 0, 1], &[0, 2, 0]]);
        let c = involutive_test(&j, 2, SigmaMode::IdealSlice).unwrap();
        assert!(c.holds);
        assert_eq!((c.next_total, c.weighted_total), (8, 8));
        let c = involutive_test(&j, 1, SigmaMode::IdealSlice).unwrap();
        assert!(!c.holds);
        assert_eq!((c.next_total, c.weighted_total), (4, 3));
    }
}
