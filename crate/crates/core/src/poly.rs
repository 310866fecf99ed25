//! Sparse polynomials over a generic coefficient ring.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::term::Term;

/// Exact rationals, the coefficient field for concrete marked sets.
pub type Rational = BigRational;

/// The commutative-ring operations needed by reduction. No division: heads
/// are monic.
pub trait Ring: Clone + Eq + Hash + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;

    fn sub_assign_ref(&mut self, other: &Self) {
        self.add_assign_ref(&other.negated());
    }
}

impl Ring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, <BigInt as One>::one()),
    };
    if Zero::is_zero(&den) {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Always `"p/q"` in lowest terms with `q > 0`.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// A polynomial as a map from terms (canonical order) to non-zero
/// coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<C> {
    vars: usize,
    terms: BTreeMap<Term, C>,
}

impl<C: Ring> Polynomial<C> {
    pub fn zero(vars: usize) -> Self {
        Polynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(term: Term, coeff: C) -> Self {
        let mut p = Polynomial::zero(term.vars());
        p.add_term(term, coeff);
        p
    }

    pub fn from_terms(vars: usize, terms: impl IntoIterator<Item = (Term, C)>) -> Self {
        let mut p = Polynomial::zero(vars);
        for (t, c) in terms {
            p.add_term(t, c);
        }
        p
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, t: &Term) -> Option<&C> {
        self.terms.get(t)
    }

    /// `(term, coefficient)` in canonical term order.
    pub fn iter(&self) -> impl Iterator<Item = (&Term, &C)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Term> {
        self.terms.keys()
    }

    /// Common degree of all terms, `Some(None)` for the zero polynomial,
    /// `None` if not homogeneous.
    pub fn homogeneous_degree(&self) -> Option<Option<u32>> {
        let mut degrees = self.terms.keys().map(Term::degree);
        match degrees.next() {
            None => Some(None),
            Some(d) => degrees.all(|e| e == d).then_some(Some(d)),
        }
    }

    pub fn add_term(&mut self, t: Term, c: C) {
        assert_eq!(t.vars(), self.vars, "mismatched variable count");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(t) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(&c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self -= c * other * shift`.
    pub fn sub_scaled_shifted(&mut self, other: &Polynomial<C>, c: &C, shift: &Term) {
        for (t, a) in other.iter() {
            self.add_term(t.mul(shift), a.mul_ref(c).negated());
        }
    }

    pub fn add(&self, other: &Polynomial<C>) -> Polynomial<C> {
        let mut out = self.clone();
        for (t, c) in other.iter() {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial<C>) -> Polynomial<C> {
        let mut out = self.clone();
        out.sub_scaled_shifted(other, &C::one(), &Term::one(self.vars));
        out
    }

    pub fn mul_term(&self, shift: &Term) -> Polynomial<C> {
        Polynomial {
            vars: self.vars,
            terms: self.terms.iter().map(|(t, c)| (t.mul(shift), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Polynomial<C> {
        Polynomial::from_terms(self.vars, self.terms.iter().map(|(t, a)| (t.clone(), a.mul_ref(c))))
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        Polynomial::from_terms(self.vars, self.terms.iter().map(|(t, c)| (t.clone(), f(c))))
    }
}

impl<C: fmt::Debug> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (t, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c:?})*{t}")?;
        }
        Ok(())
    }
}
