//! Marked polynomials and marked sets on a complete system of terms, the
//! star-constrained reduction, the `G^(s)` spans and the marked-basis
//! criterion, with an independent linear-algebra oracle.

mod oracle;
mod reduce;

pub use oracle::{normal_form, oracle_check, DegreeCheck, OracleReport};
pub use reduce::{
    build_gs, is_marked_basis, reduce, BasisCertificate, GsEntry, ProlongationCheck, ReductionLimits, ReductionStatus,
    ReductionStep, ReductionTrace,
};

use thiserror::Error;

use crate::division::{stable_witness, DivisionAssignment, StableWitness, TermSet};
use crate::ideal::MonomialIdeal;
use crate::poly::{Polynomial, Rational, Ring};
use crate::term::{Term, TermError, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MarkedError {
    #[error(transparent)]
    Term(#[from] TermError),
    #[error("head {0} is not an element of the division basis")]
    HeadNotInM(Term),
    #[error("head {0} appears more than once")]
    DuplicateHead(Term),
    #[error("tail term {term} of {head} has the wrong degree")]
    DegreeMismatch { head: Term, term: Term },
    #[error("tail term {term} of {head} lies in the ideal")]
    TailInIdeal { head: Term, term: Term },
    #[error("input polynomial is not homogeneous")]
    NonHomogeneousInput,
    #[error("division basis is not complete: x_{var} * {term} lies in no offspring")]
    MNotComplete { term: Term, var: Var },
    #[error("division basis is not stably complete at {term}, x_{var}")]
    MNotStablyComplete { term: Term, var: Var },
}

/// `head + tail`, monic in `head`, homogeneous.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MarkedPolynomial<C> {
    head: Term,
    tail: Polynomial<C>,
}

impl<C: Ring> MarkedPolynomial<C> {
    /// Unvalidated; [`MarkedSet::new`] checks supports against the ideal.
    pub fn new(head: Term, tail: Polynomial<C>) -> Result<Self, MarkedError> {
        if tail.vars() != head.vars() {
            return Err(TermError::MismatchedVariableCount {
                expected: head.vars(),
                found: tail.vars(),
            }
            .into());
        }
        for t in tail.support() {
            if t.degree() != head.degree() {
                return Err(MarkedError::DegreeMismatch {
                    head: head.clone(),
                    term: t.clone(),
                });
            }
        }
        if tail.coeff(&head).is_some() {
            return Err(MarkedError::TailInIdeal {
                term: head.clone(),
                head,
            });
        }
        Ok(MarkedPolynomial { head, tail })
    }

    pub fn head(&self) -> &Term {
        &self.head
    }

    /// Signed tail: the polynomial is `head + tail`.
    pub fn tail(&self) -> &Polynomial<C> {
        &self.tail
    }

    pub fn to_polynomial(&self) -> Polynomial<C> {
        let mut p = self.tail.clone();
        p.add_term(self.head.clone(), C::one());
        p
    }
}

/// A marked set: one marked polynomial per element of the division basis `M`.
#[derive(Debug, Clone)]
pub struct MarkedSet<C> {
    division: DivisionAssignment,
    ideal: MonomialIdeal,
    polys: Vec<MarkedPolynomial<C>>,
    completeness: Option<(Term, Var)>,
    stability: Option<StableWitness>,
}

impl<C: Ring> MarkedSet<C> {
    /// Validates `tails` against `basis`. Elements of `basis` without an
    /// entry get an empty tail.
    pub fn new(basis: TermSet, tails: Vec<(Term, Polynomial<C>)>) -> Result<Self, MarkedError> {
        let ideal = MonomialIdeal::generated_by(&basis);
        let mut slots: Vec<Option<Polynomial<C>>> = vec![None; basis.len()];
        for (head, tail) in tails {
            if head.vars() != basis.vars() {
                return Err(TermError::MismatchedVariableCount {
                    expected: basis.vars(),
                    found: head.vars(),
                }
                .into());
            }
            let pos = basis
                .position(&head)
                .ok_or_else(|| MarkedError::HeadNotInM(head.clone()))?;
            if slots[pos].is_some() {
                return Err(MarkedError::DuplicateHead(head));
            }
            slots[pos] = Some(tail);
        }
        let mut polys = Vec::with_capacity(basis.len());
        for (head, tail) in basis.iter().zip(slots) {
            let tail = tail.unwrap_or_else(|| Polynomial::zero(basis.vars()));
            let poly = MarkedPolynomial::new(head.clone(), tail)?;
            for t in poly.tail.support() {
                if ideal.contains(t) {
                    return Err(MarkedError::TailInIdeal {
                        head: head.clone(),
                        term: t.clone(),
                    });
                }
            }
            polys.push(poly);
        }
        let division = DivisionAssignment::janet(basis);
        let stability = stable_witness(&division);
        let completeness = match &stability {
            Some(StableWitness::Incomplete { term, var }) => Some((term.clone(), *var)),
            _ => None,
        };
        Ok(MarkedSet {
            division,
            ideal,
            polys,
            completeness,
            stability,
        })
    }

    /// Marked set whose division basis is the set of heads.
    pub fn from_polynomials(vars: usize, polys: Vec<MarkedPolynomial<C>>) -> Result<Self, MarkedError> {
        let mut heads = Vec::with_capacity(polys.len());
        for p in &polys {
            if heads.contains(&p.head) {
                return Err(MarkedError::DuplicateHead(p.head.clone()));
            }
            heads.push(p.head.clone());
        }
        let basis = TermSet::new(vars, heads)?;
        MarkedSet::new(basis, polys.into_iter().map(|p| (p.head, p.tail)).collect())
    }

    pub fn vars(&self) -> usize {
        self.division.vars()
    }

    pub fn basis(&self) -> &TermSet {
        self.division.set()
    }

    pub fn division(&self) -> &DivisionAssignment {
        &self.division
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    /// Polynomials aligned with [`Self::basis`].
    pub fn polynomials(&self) -> &[MarkedPolynomial<C>] {
        &self.polys
    }

    pub fn polynomial_for(&self, head: &Term) -> Option<&MarkedPolynomial<C>> {
        self.basis().position(head).map(|i| &self.polys[i])
    }

    pub fn is_complete(&self) -> bool {
        self.completeness.is_none()
    }

    pub fn is_stably_complete(&self) -> bool {
        self.stability.is_none()
    }

    pub(crate) fn require_complete(&self) -> Result<(), MarkedError> {
        match &self.completeness {
            Some((term, var)) => Err(MarkedError::MNotComplete {
                term: term.clone(),
                var: *var,
            }),
            None => Ok(()),
        }
    }

    pub(crate) fn require_stably_complete(&self) -> Result<(), MarkedError> {
        match &self.stability {
            Some(StableWitness::Incomplete { term, var }) | Some(StableWitness::MultMismatch { term, var }) => {
                Err(MarkedError::MNotStablyComplete {
                    term: term.clone(),
                    var: *var,
                })
            }
            None => Ok(()),
        }
    }
}

pub fn make_marked_set(
    basis: TermSet,
    tails: Vec<(Term, Polynomial<Rational>)>,
) -> Result<MarkedSet<Rational>, MarkedError> {
    MarkedSet::new(basis, tails)
}

/// `lcm/Ht(f) · f − lcm/Ht(g) · g`.
pub fn s_polynomial<C: Ring>(f: &MarkedPolynomial<C>, g: &MarkedPolynomial<C>) -> Polynomial<C> {
    let lcm = f.head.lcm(&g.head);
    let left = f.to_polynomial().mul_term(&lcm.div(&f.head).expect("lcm multiple"));
    let right = g.to_polynomial().mul_term(&lcm.div(&g.head).expect("lcm multiple"));
    left.sub(&right)
}
