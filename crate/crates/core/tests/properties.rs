//! Property tests against brute-force definitions and the rank oracle.

use std::collections::BTreeSet;

use involutive::poly::rational;
use involutive::term::{count_terms_of_degree, terms_of_degree};
use involutive::{
    classify, hilbert_function, involutive_test, is_complete, is_marked_basis, is_stably_complete, janet_complete,
    normal_form, oracle_check, parallel, pommaret_basis, reduce, scheme_equations, sigma_profile, specialize_values,
    star_set, DivisionAssignment, MarkedSet, MonomialIdeal, Polynomial, Rational, ReductionLimits, ReductionStatus,
    SigmaMode, Term, TermSet,
};
use proptest::prelude::*;

fn exps(n: usize, max: u32) -> impl Strategy<Value = Vec<u32>> {
    proptest::collection::vec(0..=max, n).prop_filter("non-constant", |e| e.iter().any(|&x| x > 0))
}

fn term_set(max_vars: usize, max_terms: usize, max_exp: u32) -> impl Strategy<Value = TermSet> {
    (1..=max_vars).prop_flat_map(move |n| {
        proptest::collection::vec(exps(n, max_exp), 1..=max_terms)
            .prop_map(move |v| TermSet::new(n, v.into_iter().map(|e| Term::new(e).unwrap())).unwrap())
    })
}

fn ideal(max_vars: usize, max_terms: usize, max_exp: u32) -> impl Strategy<Value = MonomialIdeal> {
    term_set(max_vars, max_terms, max_exp).prop_map(|s| MonomialIdeal::generated_by(&s))
}

/// Quasi-stable ideals: a pure power of the last variable keeps the
/// rejection rate low.
fn quasi_stable(max_vars: usize) -> impl Strategy<Value = (MonomialIdeal, TermSet)> {
    (2..=max_vars)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec(exps(n, 2), 1..=3), 1..=3u32))
        .prop_filter_map("quasi-stable, small", |(n, gens, top)| {
            let mut terms: Vec<Term> = gens.into_iter().map(|e| Term::new(e).unwrap()).collect();
            let mut power = vec![0; n];
            power[n - 1] = top;
            terms.push(Term::new(power).unwrap());
            let j = MonomialIdeal::new(n, terms).unwrap();
            let basis = pommaret_basis(&j).ok()?;
            (basis.max_degree()? <= 4 && basis.len() <= 10).then_some((j, basis))
        })
}

fn brute_mult(m: &TermSet, tau: &Term) -> BTreeSet<usize> {
    let n = tau.vars();
    (0..n)
        .filter(|&j| {
            !m.iter().any(|o| {
                o.exponents()[j] > tau.exponents()[j] && (j + 1..n).all(|k| o.exponents()[k] == tau.exponents()[k])
            })
        })
        .map(|j| j + 1)
        .collect()
}

fn random_tails(j: &MonomialIdeal, basis: &TermSet, coeffs: &[i64]) -> MarkedSet<Rational> {
    let mut k = 0;
    let tails = basis
        .iter()
        .map(|head| {
            let mut tail = Polynomial::zero(basis.vars());
            for beta in j.escalier_slice(head.degree()) {
                tail.add_term(beta, rational(coeffs[k % coeffs.len()], 1));
                k += 1;
            }
            (head.clone(), tail)
        })
        .collect();
    MarkedSet::new(basis.clone(), tails).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn term_arithmetic(a in exps(3, 4), b in exps(3, 4)) {
        let (a, b) = (Term::new(a).unwrap(), Term::new(b).unwrap());
        let ab = a.mul(&b);
        prop_assert_eq!(ab.degree(), a.degree() + b.degree());
        prop_assert_eq!(ab.div(&b), Some(a.clone()));
        prop_assert_eq!(a.divides(&b), b.div(&a).is_some());
        let l = a.lcm(&b);
        prop_assert!(a.divides(&l) && b.divides(&l));
        prop_assert_eq!(a.cmp(&b) == std::cmp::Ordering::Equal, a == b);
        if a.degree() == b.degree() {
            prop_assert_eq!(a.cmp(&b), a.lex_cmp(&b));
        }
    }

    #[test]
    fn degree_slices(n in 1usize..=4, d in 0u32..=6) {
        let slice = terms_of_degree(n, d);
        prop_assert_eq!(slice.len() as u128, count_terms_of_degree(n, d));
        prop_assert!(slice.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn janet_mult_matches_definition(m in term_set(4, 6, 3)) {
        let div = DivisionAssignment::janet(m.clone());
        for (tau, mult) in div.entries() {
            let want: BTreeSet<usize> = brute_mult(&m, tau);
            prop_assert_eq!(mult.numbers().into_iter().collect::<BTreeSet<_>>(), want);
            // The offspring of τ meets M only in τ.
            for other in m.iter() {
                prop_assert_eq!(div.offspring_contains_at(m.position(tau).unwrap(), other), other == tau);
            }
        }
    }

    #[test]
    fn completion_is_idempotent_and_partitions(m in term_set(3, 4, 3)) {
        let Ok(done) = janet_complete(&m, 12) else { return Ok(()) };
        prop_assert!(is_complete(&done).complete);
        prop_assert_eq!(janet_complete(&done, 12).unwrap(), done.clone());
        prop_assert_eq!(MonomialIdeal::generated_by(&done), MonomialIdeal::generated_by(&m));
        let div = DivisionAssignment::janet(done.clone());
        for d in 0..=done.max_degree().unwrap() + 2 {
            for gamma in terms_of_degree(done.vars(), d) {
                let hits = (0..done.len()).filter(|&i| div.offspring_contains_at(i, &gamma)).count();
                prop_assert_eq!(hits, usize::from(done.generates(&gamma)));
                if let Some(f) = div.decompose(&gamma) {
                    prop_assert_eq!(f.head.mul(&f.cofactor), gamma);
                }
            }
        }
    }

    #[test]
    fn hilbert_matches_brute_force(m in term_set(3, 4, 3), k in 0u32..=9) {
        let Ok(done) = janet_complete(&m, 12) else { return Ok(()) };
        let j = MonomialIdeal::generated_by(&done);
        let brute = terms_of_degree(j.vars(), k).iter().filter(|t| !j.contains(t)).count() as u128;
        prop_assert_eq!(hilbert_function(&DivisionAssignment::janet(done), k).unwrap(), brute);
    }

    #[test]
    fn stability_implications(j in ideal(4, 5, 3)) {
        let r = classify(&j);
        prop_assert!(!r.strongly_stable || r.stable);
        prop_assert!(!r.stable || r.quasi_stable);
        match pommaret_basis(&j) {
            Ok(basis) => {
                prop_assert!(r.quasi_stable);
                prop_assert!(is_stably_complete(&basis).stably_complete);
                prop_assert_eq!(MonomialIdeal::generated_by(&basis), j.clone());
                let bound = basis.max_degree().unwrap_or(0);
                let s = star_set(&j, bound);
                prop_assert!(s.exhaustive);
                prop_assert_eq!(s.terms, basis.clone());
                if r.stable {
                    prop_assert_eq!(&basis, j.generators());
                }
            }
            Err(_) => prop_assert!(!r.quasi_stable),
        }
    }

    #[test]
    fn sigma_inequalities(j in ideal(3, 4, 3), p in 1u32..=6) {
        let esc = involutive_test(&j, p, SigmaMode::Escalier).unwrap();
        let slice = involutive_test(&j, p, SigmaMode::IdealSlice).unwrap();
        prop_assert!(esc.inequality_holds());
        prop_assert!(slice.inequality_holds());
        // Equality in either mode iff no star-set element of degree p + 1.
        let star_next = terms_of_degree(j.vars(), p + 1).iter().any(|t| j.is_star_element(t));
        prop_assert_eq!(esc.holds, !star_next);
        prop_assert_eq!(slice.holds, !star_next);
        let total = sigma_profile(&j, p, SigmaMode::Escalier).unwrap().total()
            + sigma_profile(&j, p, SigmaMode::IdealSlice).unwrap().total();
        prop_assert_eq!(u128::from(total), count_terms_of_degree(j.vars(), p));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn reduction_on_star_sets((j, basis) in quasi_stable(3), coeffs in proptest::collection::vec(-2i64..=2, 1..6),
                              input in proptest::collection::vec((exps(3, 2), -3i64..=3), 1..5)) {
        let g = random_tails(&j, &basis, &coeffs);
        let n = basis.vars();
        let d = 2 + input.len() as u32 % 3;
        let slice = terms_of_degree(n, d);
        let h = Polynomial::from_terms(
            n,
            input.iter().enumerate().map(|(i, (_, c))| (slice[i * 7 % slice.len()].clone(), rational(*c, 1))),
        );
        let trace = reduce(&g, &h, ReductionLimits::default()).unwrap();
        prop_assert_eq!(trace.status, ReductionStatus::Reduced);
        prop_assert!(trace.result.support().all(|t| !j.contains(t)));
        prop_assert_eq!(trace.replay(&g, &h), trace.result.clone());

        let cert = is_marked_basis(&g, ReductionLimits::default()).unwrap();
        let reg = basis.max_degree().unwrap_or(0);
        prop_assert_eq!(cert.is_basis, oracle_check(&g, reg + 1).unwrap().passed);
        if cert.is_basis {
            // Residues are unique modulo (G).
            prop_assert_eq!(normal_form(&g, &h), Some(trace.result));
        }
    }

    #[test]
    fn scheme_equations_are_sound((j, basis) in quasi_stable(3), values in proptest::collection::vec(-2i64..=2, 12)) {
        let r = scheme_equations(&j).unwrap();
        prop_assume!(r.generic.parameters().len() <= values.len());
        prop_assert_eq!(r.generic.basis(), &basis);
        let v: Vec<Rational> = values.iter().take(r.generic.parameters().len()).map(|&x| rational(x, 1)).collect();
        let g = specialize_values(&r.generic, &v).unwrap();
        prop_assert_eq!(is_marked_basis(&g, ReductionLimits::default()).unwrap().is_basis, r.vanish_at(&v));
        // The monomial point lies on every marked scheme.
        let zero = vec![rational(0, 1); v.len()];
        prop_assert!(r.vanish_at(&zero));
    }

    #[test]
    fn sequential_and_parallel_agree((j, _) in quasi_stable(3)) {
        parallel::set_enabled(false);
        let seq = scheme_equations(&j).unwrap().equations;
        let seq_star = star_set(&j, 5);
        parallel::set_enabled(true);
        let par = scheme_equations(&j).unwrap().equations;
        prop_assert_eq!(seq, par);
        prop_assert_eq!(seq_star, star_set(&j, 5));
    }
}
