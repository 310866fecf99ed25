use std::collections::{HashMap, HashSet};

use super::{MarkedError, MarkedSet};
use crate::division::StarFactorization;
use crate::parallel;
use crate::poly::{Polynomial, Ring};
use crate::term::{Term, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReductionLimits {
    pub step_cap: usize,
    /// Track visited states. Only used when the basis is not stably
    /// complete; otherwise reduction always terminates.
    pub detect_cycles: bool,
}

impl Default for ReductionLimits {
    fn default() -> Self {
        ReductionLimits {
            step_cap: 100_000,
            detect_cycles: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReductionStatus {
    Reduced,
    StepLimit,
    CycleDetected,
}

/// One rewrite `h -> h - c · f_α · x^η` where `term = x^α ∗ x^η`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep<C> {
    pub term: Term,
    pub head: Term,
    pub cofactor: Term,
    pub coeff: C,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace<C> {
    pub steps: Vec<ReductionStep<C>>,
    pub result: Polynomial<C>,
    pub status: ReductionStatus,
}

impl<C: Ring> ReductionTrace<C> {
    /// Re-applies the recorded steps to `input`.
    pub fn replay(&self, set: &MarkedSet<C>, input: &Polynomial<C>) -> Polynomial<C> {
        let mut cur = input.clone();
        for step in &self.steps {
            let f = set
                .polynomial_for(&step.head)
                .expect("trace head belongs to the set")
                .to_polynomial();
            cur.sub_scaled_shifted(&f, &step.coeff, &step.cofactor);
        }
        cur
    }
}

/// Term-ordering-free reduction by `set`.
///
/// Each step rewrites the ideal term whose star cofactor is lex-largest
/// (ties go to the lex-smaller term). On a stably complete basis the
/// process always ends with support in `N(J)`; otherwise `limits` apply.
pub fn reduce<C: Ring>(
    set: &MarkedSet<C>,
    h: &Polynomial<C>,
    limits: ReductionLimits,
) -> Result<ReductionTrace<C>, MarkedError> {
    set.require_complete()?;
    if h.vars() != set.vars() {
        return Err(crate::term::TermError::MismatchedVariableCount {
            expected: set.vars(),
            found: h.vars(),
        }
        .into());
    }
    if h.homogeneous_degree().is_none() {
        return Err(MarkedError::NonHomogeneousInput);
    }
    let full: Vec<Polynomial<C>> = set.polynomials().iter().map(|p| p.to_polynomial()).collect();
    let track = limits.detect_cycles && !set.is_stably_complete();
    let mut seen: HashSet<Polynomial<C>> = HashSet::new();
    let mut cache: HashMap<Term, Option<StarFactorization>> = HashMap::new();
    let mut steps = Vec::new();
    let mut cur = h.clone();
    loop {
        let mut best: Option<(Term, StarFactorization, C)> = None;
        for (gamma, c) in cur.iter() {
            let fac = cache
                .entry(gamma.clone())
                .or_insert_with(|| {
                    if set.ideal().contains(gamma) {
                        Some(
                            set.division()
                                .decompose(gamma)
                                .expect("complete basis covers the ideal"),
                        )
                    } else {
                        None
                    }
                })
                .clone();
            let Some(fac) = fac else { continue };
            let better = match &best {
                None => true,
                Some((_, b, _)) => fac.cofactor.lex_cmp(&b.cofactor).is_gt(),
            };
            if better {
                best = Some((gamma.clone(), fac, c.clone()));
            }
        }
        let Some((term, fac, coeff)) = best else {
            return Ok(ReductionTrace {
                steps,
                result: cur,
                status: ReductionStatus::Reduced,
            });
        };
        if steps.len() >= limits.step_cap {
            return Ok(ReductionTrace {
                steps,
                result: cur,
                status: ReductionStatus::StepLimit,
            });
        }
        if track && !seen.insert(cur.clone()) {
            return Ok(ReductionTrace {
                steps,
                result: cur,
                status: ReductionStatus::CycleDetected,
            });
        }
        cur.sub_scaled_shifted(&full[fac.index], &coeff, &fac.cofactor);
        steps.push(ReductionStep {
            term,
            head: fac.head,
            cofactor: fac.cofactor,
            coeff,
        });
    }
}

/// An element `f_α · x^η` of `G^(s)`, marked on `x^α · x^η`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GsEntry<C> {
    pub head: Term,
    pub generator: Term,
    pub cofactor: Term,
    pub polynomial: Polynomial<C>,
}

/// `G^(s)`: one entry per term of `J_s`, in canonical order of heads.
pub fn build_gs<C: Ring>(set: &MarkedSet<C>, s: u32) -> Result<Vec<GsEntry<C>>, MarkedError> {
    set.require_complete()?;
    let slice = set.ideal().slice(s);
    Ok(slice
        .into_iter()
        .map(|head| {
            let fac = set
                .division()
                .decompose(&head)
                .expect("complete basis covers the ideal");
            let polynomial = set.polynomials()[fac.index].to_polynomial().mul_term(&fac.cofactor);
            GsEntry {
                head,
                generator: fac.head,
                cofactor: fac.cofactor,
                polynomial,
            }
        })
        .collect())
}

/// Reduction of one non-multiplicative prolongation `f_β · x_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProlongationCheck<C> {
    pub head: Term,
    pub var: Var,
    pub trace: ReductionTrace<C>,
}

impl<C: Ring> ProlongationCheck<C> {
    pub fn reduces_to_zero(&self) -> bool {
        self.trace.status == ReductionStatus::Reduced && self.trace.result.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisCertificate<C> {
    pub is_basis: bool,
    /// In canonical `(head, variable)` order.
    pub checks: Vec<ProlongationCheck<C>>,
}

/// The `(position, x_i)` pairs with `x_i > min(head)`.
pub(crate) fn prolongation_pairs<C: Ring>(set: &MarkedSet<C>) -> Vec<(usize, Var)> {
    let n = set.vars();
    set.basis()
        .iter()
        .enumerate()
        .flat_map(|(i, head)| {
            let start = head.min_var().map_or(n, |v| v.pos() + 1);
            (start..n).map(move |k| (i, Var::at(k)))
        })
        .collect()
}

/// Marked-basis criterion: every `f_β · x_i` with `x_i > min(x^β)` must
/// reduce to zero.
pub fn is_marked_basis<C: Ring>(
    set: &MarkedSet<C>,
    limits: ReductionLimits,
) -> Result<BasisCertificate<C>, MarkedError> {
    set.require_stably_complete()?;
    let pairs = prolongation_pairs(set);
    let checks = parallel::map(&pairs, |&(i, var)| {
        let p = &set.polynomials()[i];
        let prolonged = p.to_polynomial().mul_term(&Term::var(set.vars(), var));
        reduce(set, &prolonged, limits).map(|trace| ProlongationCheck {
            head: p.head().clone(),
            var,
            trace,
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;
    Ok(BasisCertificate {
        is_basis: checks.iter().all(ProlongationCheck::reduces_to_zero),
        checks,
    })
}
