//! Terms (monomials) as dense exponent vectors over `x_1 < x_2 < ... < x_n`.
//!
//! Variables are addressed by [`Var`], which stores a 0-based position but
//! displays and serializes 1-based (`x_1` is the smallest variable).

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

/// Upper bound on the number of variables; variable sets are `u64` bitmasks.
pub const MAX_VARS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("mismatched variable count: expected {expected}, found {found}")]
    MismatchedVariableCount { expected: usize, found: usize },
    #[error("variable x_{var} does not divide {term}")]
    NotDivisible { term: Term, var: Var },
    #[error("variable index {index} out of range 1..={vars}")]
    VariableOutOfRange { index: usize, vars: usize },
    #[error("too many variables: {0} (at most {MAX_VARS})")]
    TooManyVariables(usize),
    #[error("exponent {0} does not fit in 32 bits")]
    ExponentOverflow(u64),
}

/// A variable `x_k`. Internally 0-based; `number()` is the 1-based index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(usize);

impl Var {
    /// The variable with 0-based position `pos`.
    pub const fn at(pos: usize) -> Self {
        Var(pos)
    }

    /// The variable `x_k`, `k` counted from 1.
    pub fn from_number(k: usize, vars: usize) -> Result<Self, TermError> {
        if k == 0 || k > vars {
            return Err(TermError::VariableOutOfRange { index: k, vars });
        }
        Ok(Var(k - 1))
    }

    pub const fn pos(self) -> usize {
        self.0
    }

    pub const fn number(self) -> usize {
        self.0 + 1
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

/// A set of variables, stored as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VarSet(u64);

impl VarSet {
    pub const fn empty() -> Self {
        VarSet(0)
    }

    /// `{x_1, ..., x_n}`.
    pub fn all(vars: usize) -> Self {
        Self::up_to(vars)
    }

    /// `{x_1, ..., x_k}`: the first `k` variables.
    pub fn up_to(k: usize) -> Self {
        if k >= 64 {
            VarSet(u64::MAX)
        } else {
            VarSet((1u64 << k) - 1)
        }
    }

    pub fn insert(&mut self, v: Var) {
        self.0 |= 1 << v.pos();
    }

    pub fn remove(&mut self, v: Var) {
        self.0 &= !(1 << v.pos());
    }

    pub fn contains(self, v: Var) -> bool {
        self.0 & (1 << v.pos()) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Var> {
        (0..64).filter(move |&i| self.0 & (1 << i) != 0).map(Var)
    }

    /// 1-based indices, ascending.
    pub fn numbers(self) -> Vec<usize> {
        self.iter().map(Var::number).collect()
    }
}

impl FromIterator<Var> for VarSet {
    fn from_iter<I: IntoIterator<Item = Var>>(iter: I) -> Self {
        let mut set = VarSet::empty();
        for v in iter {
            set.insert(v);
        }
        set
    }
}

/// A term `x_1^{a_1} ... x_n^{a_n}` with cached total degree.
///
/// The derived [`Ord`] is the canonical order used for every term collection
/// in the crate: by degree first, then [`Term::lex_cmp`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Term {
    exps: Vec<u32>,
    degree: u32,
}

impl Term {
    pub fn new(exps: Vec<u32>) -> Result<Self, TermError> {
        if exps.len() > MAX_VARS {
            return Err(TermError::TooManyVariables(exps.len()));
        }
        let degree = exps
            .iter()
            .try_fold(0u32, |acc, &e| acc.checked_add(e))
            .ok_or(TermError::ExponentOverflow(u64::from(u32::MAX) + 1))?;
        Ok(Term { exps, degree })
    }

    /// Builds a term from wide exponents, rejecting values that do not fit.
    pub fn from_wide(exps: &[u64]) -> Result<Self, TermError> {
        let narrow = exps
            .iter()
            .map(|&e| u32::try_from(e).map_err(|_| TermError::ExponentOverflow(e)))
            .collect::<Result<Vec<_>, _>>()?;
        Term::new(narrow)
    }

    /// The constant term `1`.
    pub fn one(vars: usize) -> Self {
        Term {
            exps: vec![0; vars],
            degree: 0,
        }
    }

    /// The single variable `v`.
    pub fn var(vars: usize, v: Var) -> Self {
        let mut exps = vec![0; vars];
        exps[v.pos()] = 1;
        Term { exps, degree: 1 }
    }

    pub fn vars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.exps[v.pos()]
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    fn check_same(&self, other: &Term) -> Result<(), TermError> {
        if self.vars() != other.vars() {
            return Err(TermError::MismatchedVariableCount {
                expected: self.vars(),
                found: other.vars(),
            });
        }
        Ok(())
    }

    /// `self | other`. Panics if the variable counts differ.
    pub fn divides(&self, other: &Term) -> bool {
        assert_eq!(self.vars(), other.vars(), "mismatched variable count");
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn checked_divides(&self, other: &Term) -> Result<bool, TermError> {
        self.check_same(other)?;
        Ok(self.divides(other))
    }

    /// Smallest and largest variable with positive exponent; `None` for `1`.
    pub fn extremal_vars(&self) -> (Option<Var>, Option<Var>) {
        (self.min_var(), self.max_var())
    }

    pub fn min_var(&self) -> Option<Var> {
        self.exps.iter().position(|&e| e > 0).map(Var)
    }

    pub fn max_var(&self) -> Option<Var> {
        self.exps.iter().rposition(|&e| e > 0).map(Var)
    }

    /// The `j`-th predecessor `self / x_j`.
    pub fn predecessor(&self, v: Var) -> Result<Term, TermError> {
        if v.pos() >= self.vars() {
            return Err(TermError::VariableOutOfRange {
                index: v.number(),
                vars: self.vars(),
            });
        }
        if self.exps[v.pos()] == 0 {
            return Err(TermError::NotDivisible {
                term: self.clone(),
                var: v,
            });
        }
        let mut exps = self.exps.clone();
        exps[v.pos()] -= 1;
        Ok(Term {
            exps,
            degree: self.degree - 1,
        })
    }

    /// `self * x_v`. Panics on exponent overflow.
    pub fn mul_var(&self, v: Var) -> Term {
        let mut exps = self.exps.clone();
        exps[v.pos()] = exps[v.pos()].checked_add(1).expect("exponent overflow");
        Term {
            exps,
            degree: self.degree.checked_add(1).expect("degree overflow"),
        }
    }

    /// `self * other`. Panics on exponent overflow or mismatched variable count.
    pub fn mul(&self, other: &Term) -> Term {
        assert_eq!(self.vars(), other.vars(), "mismatched variable count");
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
            .collect();
        Term {
            exps,
            degree: self.degree.checked_add(other.degree).expect("degree overflow"),
        }
    }

    /// `self / other` when `other | self`.
    pub fn div(&self, other: &Term) -> Option<Term> {
        if !other.divides(self) {
            return None;
        }
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect();
        Some(Term {
            exps,
            degree: self.degree - other.degree,
        })
    }

    pub fn lcm(&self, other: &Term) -> Term {
        assert_eq!(self.vars(), other.vars(), "mismatched variable count");
        let exps: Vec<u32> = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        let degree = exps.iter().sum();
        Term { exps, degree }
    }

    /// Variables with positive exponent.
    pub fn support(&self) -> VarSet {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| Var(i))
            .collect()
    }

    /// Pure lexicographic comparison, `x_n` compared first.
    pub fn lex_cmp(&self, other: &Term) -> Ordering {
        assert_eq!(self.vars(), other.vars(), "mismatched variable count");
        for (a, b) in self.exps.iter().rev().zip(other.exps.iter().rev()) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    pub fn checked_lex_cmp(&self, other: &Term) -> Result<Ordering, TermError> {
        self.check_same(other)?;
        Ok(self.lex_cmp(other))
    }
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// All terms of degree `degree` in `vars` variables, in increasing lex order.
pub fn terms_of_degree(vars: usize, degree: u32) -> Vec<Term> {
    let mut out = Vec::new();
    if vars == 0 {
        if degree == 0 {
            out.push(Term::one(0));
        }
        return out;
    }
    let mut exps = vec![0u32; vars];
    fill(&mut exps, vars - 1, degree, &mut out);
    out.reverse();
    out
}

// Emits in decreasing lex order: the highest variable takes the most first.
fn fill(exps: &mut [u32], pos: usize, remaining: u32, out: &mut Vec<Term>) {
    if pos == 0 {
        exps[0] = remaining;
        out.push(Term {
            exps: exps.to_vec(),
            degree: exps.iter().sum(),
        });
        exps[0] = 0;
        return;
    }
    for e in (0..=remaining).rev() {
        exps[pos] = e;
        fill(exps, pos - 1, remaining - e, out);
    }
    exps[pos] = 0;
}

/// `binomial(n, k)` as `u128`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc
}

/// Number of terms of degree `degree` in `vars` variables.
pub fn count_terms_of_degree(vars: usize, degree: u32) -> u128 {
    if vars == 0 {
        return u128::from(degree == 0);
    }
    binomial(u64::from(degree) + vars as u64 - 1, vars as u64 - 1)
}
