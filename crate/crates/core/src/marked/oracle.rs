//! Linear-algebra verifier for marked sets, independent of the reduction
//! relation: it works with every monomial multiple of every marked
//! polynomial, not only the star-compatible ones.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::{build_gs, MarkedError, MarkedSet};
use crate::linalg::{echelon, rank};
use crate::parallel;
use crate::poly::{Polynomial, Rational};
use crate::term::{terms_of_degree, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeCheck {
    pub degree: u32,
    /// `dim P_s`.
    pub dimension: usize,
    /// `dim (G)_s`.
    pub ideal_rank: usize,
    /// `dim <G^(s)>`.
    pub gs_rank: usize,
    /// `|N(J)_s|`.
    pub escalier: usize,
    /// `dim (<G^(s)> + <N(J)_s>)`.
    pub spanned: usize,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub passed: bool,
    pub degrees: Vec<DegreeCheck>,
}

fn to_row(p: &Polynomial<Rational>, index: &HashMap<Term, usize>, cols: usize) -> Vec<Rational> {
    let mut row = vec![Rational::zero(); cols];
    for (t, c) in p.iter() {
        row[index[t]] = c.clone();
    }
    row
}

/// Every product `x^η · f_α` of degree `s`.
fn all_multiples(set: &MarkedSet<Rational>, s: u32) -> Vec<Polynomial<Rational>> {
    set.polynomials()
        .iter()
        .filter(|p| p.head().degree() <= s)
        .flat_map(|p| {
            let f = p.to_polynomial();
            terms_of_degree(set.vars(), s - p.head().degree())
                .into_iter()
                .map(move |eta| f.mul_term(&eta))
        })
        .collect()
}

fn check_degree(set: &MarkedSet<Rational>, s: u32) -> Result<DegreeCheck, MarkedError> {
    let terms = terms_of_degree(set.vars(), s);
    let cols = terms.len();
    let index: HashMap<Term, usize> = terms.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();

    let ideal_rows: Vec<_> = all_multiples(set, s).iter().map(|p| to_row(p, &index, cols)).collect();
    let gs_rows: Vec<_> = build_gs(set, s)?
        .iter()
        .map(|e| to_row(&e.polynomial, &index, cols))
        .collect();
    let escalier: Vec<&Term> = terms.iter().filter(|t| !set.ideal().contains(t)).collect();
    let mut joint = gs_rows.clone();
    for t in &escalier {
        let mut row = vec![Rational::zero(); cols];
        row[index[*t]] = Rational::one();
        joint.push(row);
    }

    let ideal_rank = rank(ideal_rows, cols);
    let gs_rank = rank(gs_rows, cols);
    let spanned = rank(joint, cols);
    let ok = ideal_rank == gs_rank && spanned == cols && gs_rank + escalier.len() == cols;
    Ok(DegreeCheck {
        degree: s,
        dimension: cols,
        ideal_rank,
        gs_rank,
        escalier: escalier.len(),
        spanned,
        ok,
    })
}

/// For each `s <= max_degree`: `(G)_s = <G^(s)>` and
/// `P_s = <G^(s)> ⊕ <N(J)_s>`, decided by exact ranks.
pub fn oracle_check(set: &MarkedSet<Rational>, max_degree: u32) -> Result<OracleReport, MarkedError> {
    set.require_complete()?;
    let degrees: Vec<u32> = (0..=max_degree).collect();
    let degrees = parallel::map(&degrees, |&s| check_degree(set, s))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    Ok(OracleReport {
        passed: degrees.iter().all(|d| d.ok),
        degrees,
    })
}

/// The `N(J)`-supported representative of `h` modulo `(G)_s`, found by row
/// reduction with ideal-term columns pivoted first. Unique when `set` is a
/// marked basis; `None` if `h` is not homogeneous or some ideal term cannot
/// be eliminated.
pub fn normal_form(set: &MarkedSet<Rational>, h: &Polynomial<Rational>) -> Option<Polynomial<Rational>> {
    let s = match h.homogeneous_degree()? {
        None => return Some(h.clone()),
        Some(s) => s,
    };
    let (inside, outside) = set.ideal().split_slice(s);
    let order: Vec<Term> = inside.iter().chain(&outside).cloned().collect();
    let cols = order.len();
    let index: HashMap<Term, usize> = order.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    let rows: Vec<_> = all_multiples(set, s).iter().map(|p| to_row(p, &index, cols)).collect();
    let ech = echelon(rows, cols);
    let mut v = to_row(h, &index, cols);
    ech.reduce(&mut v);
    if v[..inside.len()].iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(Polynomial::from_terms(
        set.vars(),
        order.into_iter().zip(v).skip(inside.len()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::division::TermSet;
    use crate::poly::rational;

    fn t(e: &[u32]) -> Term {
        Term::new(e.to_vec()).unwrap()
    }

    fn q(n: i64) -> Rational {
        rational(n, 1)
    }

    #[test]
    fn worked_basis_passes() {
        let basis = TermSet::from_exponents(2, &[&[3, 0], &[1, 1], &[1, 2], &[0, 3]]).unwrap();
        let tail = Polynomial::from_terms(2, [(t(&[2, 0]), q(-1)), (t(&[0, 2]), q(-1))]);
        let g = MarkedSet::new(basis.clone(), vec![(t(&[1, 1]), tail)]).unwrap();
        let report = oracle_check(&g, 5).unwrap();
        assert!(report.passed);
        assert_eq!(report.degrees.len(), 6);

        let monomial = MarkedSet::<Rational>::new(basis, vec![]).unwrap();
        assert!(oracle_check(&monomial, 6).unwrap().passed);
    }

    #[test]
    fn non_basis_fails_by_regularity_plus_one() {
        let basis = TermSet::from_exponents(2, &[&[1, 1], &[0, 2]]).unwrap();
        let g = MarkedSet::new(
            basis,
            vec![
                (t(&[1, 1]), Polynomial::monomial(t(&[2, 0]), q(1))),
                (t(&[0, 2]), Polynomial::monomial(t(&[2, 0]), q(1))),
            ],
        )
        .unwrap();
        let report = oracle_check(&g, 3).unwrap();
        assert!(!report.passed);
        assert!(!report.degrees[3].ok);
        assert!(report.degrees[2].ok);
    }

    #[test]
    fn normal_form_of_basis() {
        let basis = TermSet::from_exponents(2, &[&[3, 0], &[1, 1], &[1, 2], &[0, 3]]).unwrap();
        let tail = Polynomial::from_terms(2, [(t(&[2, 0]), q(-1)), (t(&[0, 2]), q(-1))]);
        let g = MarkedSet::new(basis, vec![(t(&[1, 1]), tail)]).unwrap();
        // xy ≡ x^2 + y^2
        let h = Polynomial::monomial(t(&[1, 1]), q(1));
        let nf = normal_form(&g, &h).unwrap();
        assert_eq!(nf, Polynomial::from_terms(2, [(t(&[2, 0]), q(1)), (t(&[0, 2]), q(1))]));
    }
}
