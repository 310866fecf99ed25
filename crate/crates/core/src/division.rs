//! Janet and Pommaret multiplicative variables, offsprings, star
//! decompositions, completeness tests and Janet's completion procedure.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::term::{Term, TermError, Var, VarSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DivisionError {
    #[error(transparent)]
    Term(#[from] TermError),
    #[error("{0} is not an element of the set")]
    NotInSet(Term),
    #[error("{0} is not in the ideal generated by the set")]
    NotInIdeal(Term),
    #[error("set is not complete: x_{var} * {term} lies in no offspring")]
    NotComplete { term: Term, var: Var },
    #[error("completion exceeded degree cap {cap}")]
    DegreeCapExceeded { cap: u32, partial: TermSet },
}

/// A finite set of distinct terms over a common number of variables, kept in
/// canonical order (degree, then lex).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TermSet {
    vars: usize,
    terms: Vec<Term>,
}

impl TermSet {
    pub fn new(vars: usize, terms: impl IntoIterator<Item = Term>) -> Result<Self, TermError> {
        let mut set = BTreeSet::new();
        for t in terms {
            if t.vars() != vars {
                return Err(TermError::MismatchedVariableCount {
                    expected: vars,
                    found: t.vars(),
                });
            }
            set.insert(t);
        }
        Ok(TermSet {
            vars,
            terms: set.into_iter().collect(),
        })
    }

    /// Convenience constructor from raw exponent vectors.
    pub fn from_exponents(vars: usize, exps: &[&[u32]]) -> Result<Self, TermError> {
        let terms = exps
            .iter()
            .map(|e| Term::new(e.to_vec()))
            .collect::<Result<Vec<_>, _>>()?;
        TermSet::new(vars, terms)
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Term> {
        self.terms.iter()
    }

    pub fn position(&self, t: &Term) -> Option<usize> {
        self.terms.binary_search(t).ok()
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.position(t).is_some()
    }

    /// Whether some element divides `t`.
    pub fn generates(&self, t: &Term) -> bool {
        self.terms.iter().any(|g| g.divides(t))
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.last().map(Term::degree)
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.first().map(Term::degree)
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }
}

impl<'a> IntoIterator for &'a TermSet {
    type Item = &'a Term;
    type IntoIter = std::slice::Iter<'a, Term>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Janet,
    Pommaret,
}

/// `γ = head * cofactor` with `γ` in the offspring of `head`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarFactorization {
    pub head: Term,
    pub cofactor: Term,
    /// Position of `head` in the underlying [`TermSet`].
    pub index: usize,
}

/// Multiplicative variables of every element of a [`TermSet`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisionAssignment {
    flavor: Flavor,
    set: TermSet,
    mult: Vec<VarSet>,
    // positions of `set` sorted by decreasing lex
    lex_desc: Vec<usize>,
}

impl DivisionAssignment {
    /// Janet's multiplicative variables with respect to `set`.
    pub fn janet(set: TermSet) -> Self {
        let n = set.vars();
        let mult = set
            .iter()
            .map(|tau| {
                let mut m = VarSet::all(n);
                for other in set.iter() {
                    // x_j is blocked by `other` iff j is the highest position
                    // where the two differ and `other` is larger there.
                    let top = (0..n).rev().find(|&k| other.exponents()[k] != tau.exponents()[k]);
                    if let Some(k) = top {
                        if other.exponents()[k] > tau.exponents()[k] {
                            m.remove(Var::at(k));
                        }
                    }
                }
                m
            })
            .collect();
        Self::with_mult(Flavor::Janet, set, mult)
    }

    /// Pommaret's multiplicative variables, `{x_i : x_i <= min(τ)}`.
    pub fn pommaret(set: TermSet) -> Self {
        let mult = set.iter().map(pommaret_multiplicative_vars).collect();
        Self::with_mult(Flavor::Pommaret, set, mult)
    }

    fn with_mult(flavor: Flavor, set: TermSet, mult: Vec<VarSet>) -> Self {
        let mut lex_desc: Vec<usize> = (0..set.len()).collect();
        lex_desc.sort_by(|&a, &b| set.terms()[b].lex_cmp(&set.terms()[a]));
        DivisionAssignment {
            flavor,
            set,
            mult,
            lex_desc,
        }
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn set(&self) -> &TermSet {
        &self.set
    }

    pub fn vars(&self) -> usize {
        self.set.vars()
    }

    pub fn mult_at(&self, index: usize) -> VarSet {
        self.mult[index]
    }

    pub fn mult_of(&self, t: &Term) -> Option<VarSet> {
        self.set.position(t).map(|i| self.mult[i])
    }

    /// `(term, mult)` pairs in canonical order.
    pub fn entries(&self) -> impl Iterator<Item = (&Term, VarSet)> {
        self.set.iter().zip(self.mult.iter().copied())
    }

    /// Whether `γ` is in the offspring of the element at `index`.
    pub fn offspring_contains_at(&self, index: usize, gamma: &Term) -> bool {
        let tau = &self.set.terms()[index];
        if !tau.divides(gamma) {
            return false;
        }
        let m = self.mult[index];
        gamma
            .exponents()
            .iter()
            .zip(tau.exponents())
            .enumerate()
            .all(|(k, (g, t))| g == t || m.contains(Var::at(k)))
    }

    /// Star decomposition without verifying completeness: `None` when no
    /// offspring contains `γ`. Divisors are scanned by decreasing lex.
    pub fn decompose(&self, gamma: &Term) -> Option<StarFactorization> {
        self.lex_desc
            .iter()
            .copied()
            .find(|&i| self.offspring_contains_at(i, gamma))
            .map(|i| {
                let head = self.set.terms()[i].clone();
                let cofactor = gamma.div(&head).expect("head divides gamma");
                StarFactorization {
                    head,
                    cofactor,
                    index: i,
                }
            })
    }

    /// The first `(τ, x_j)` in canonical order with `x_j` non-multiplicative
    /// for `τ` and `x_j τ` outside every offspring.
    pub fn completeness_witness(&self) -> Option<(Term, Var)> {
        let n = self.vars();
        for (i, tau) in self.set.iter().enumerate() {
            for k in 0..n {
                let v = Var::at(k);
                if self.mult[i].contains(v) {
                    continue;
                }
                let prod = tau.mul_var(v);
                if self.decompose(&prod).is_none() {
                    return Some((tau.clone(), v));
                }
            }
        }
        None
    }
}

/// Janet multiplicative variables of `τ` with respect to `set`.
pub fn janet_multiplicative_vars(set: &TermSet, tau: &Term) -> Result<VarSet, DivisionError> {
    let pos = set.position(tau).ok_or_else(|| DivisionError::NotInSet(tau.clone()))?;
    Ok(DivisionAssignment::janet(set.clone()).mult_at(pos))
}

/// `{x_j : x_j <= min(τ)}`; every variable for the constant term.
pub fn pommaret_multiplicative_vars(tau: &Term) -> VarSet {
    match tau.min_var() {
        Some(v) => VarSet::up_to(v.number()),
        None => VarSet::all(tau.vars()),
    }
}

/// Whether `γ ∈ off_M(τ)` for Janet's division.
pub fn offspring_contains(set: &TermSet, tau: &Term, gamma: &Term) -> Result<bool, DivisionError> {
    let pos = set.position(tau).ok_or_else(|| DivisionError::NotInSet(tau.clone()))?;
    Ok(DivisionAssignment::janet(set.clone()).offspring_contains_at(pos, gamma))
}

/// Star decomposition of `γ` with respect to Janet's division on `set`.
///
/// With `trusted == false` the set is first checked for completeness.
pub fn star_decompose(set: &TermSet, gamma: &Term, trusted: bool) -> Result<StarFactorization, DivisionError> {
    let div = DivisionAssignment::janet(set.clone());
    if !trusted {
        if let Some((term, var)) = div.completeness_witness() {
            return Err(DivisionError::NotComplete { term, var });
        }
    }
    if !set.generates(gamma) {
        return Err(DivisionError::NotInIdeal(gamma.clone()));
    }
    div.decompose(gamma).ok_or_else(|| {
        let (term, var) = div
            .completeness_witness()
            .expect("an uncovered ideal element implies incompleteness");
        DivisionError::NotComplete { term, var }
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Completeness {
    pub complete: bool,
    pub witness: Option<(Term, Var)>,
}

pub fn is_complete(set: &TermSet) -> Completeness {
    let witness = DivisionAssignment::janet(set.clone()).completeness_witness();
    Completeness {
        complete: witness.is_none(),
        witness,
    }
}

/// Why a set fails to be stably complete.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StableWitness {
    /// `x_j τ` lies in no offspring.
    Incomplete { term: Term, var: Var },
    /// `x_j` is Janet-multiplicative for `τ` but not Pommaret-multiplicative,
    /// or the other way round.
    MultMismatch { term: Term, var: Var },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StableCompleteness {
    pub stably_complete: bool,
    pub witness: Option<StableWitness>,
}

pub fn is_stably_complete(set: &TermSet) -> StableCompleteness {
    let div = DivisionAssignment::janet(set.clone());
    let witness = stable_witness(&div);
    StableCompleteness {
        stably_complete: witness.is_none(),
        witness,
    }
}

pub(crate) fn stable_witness(div: &DivisionAssignment) -> Option<StableWitness> {
    if let Some((term, var)) = div.completeness_witness() {
        return Some(StableWitness::Incomplete { term, var });
    }
    for (tau, janet) in div.entries() {
        let pommaret = pommaret_multiplicative_vars(tau);
        if janet != pommaret {
            let var = (0..div.vars())
                .map(Var::at)
                .find(|&v| janet.contains(v) != pommaret.contains(v))
                .expect("sets differ");
            return Some(StableWitness::MultMismatch { term: tau.clone(), var });
        }
    }
    None
}

/// Janet's completion: repeatedly adds the first uncovered `x·t` (elements in
/// canonical order, variables ascending) until the set is complete.
pub fn janet_complete(set: &TermSet, degree_cap: u32) -> Result<TermSet, DivisionError> {
    let mut current = set.clone();
    loop {
        let div = DivisionAssignment::janet(current.clone());
        let Some((term, var)) = div.completeness_witness() else {
            return Ok(current);
        };
        let added = term.mul_var(var);
        if added.degree() > degree_cap {
            return Err(DivisionError::DegreeCapExceeded {
                cap: degree_cap,
                partial: current,
            });
        }
        let mut terms = current.into_terms();
        terms.push(added);
        current = TermSet::new(set.vars(), terms)?;
    }
}
