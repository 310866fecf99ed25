//! Janet and Pommaret involutive structure on monomial ideals, the
//! term-ordering-free reduction by marked sets over a stably complete
//! system of terms, and the equations of the marked scheme of a
//! quasi-stable ideal.
//!
//! Variables are ordered `x_1 < x_2 < ... < x_n`; terms compare by degree
//! first and lexicographically (from `x_n` down) within a degree.

pub mod division;
pub mod ideal;
pub mod json;
pub mod linalg;
pub mod marked;
pub mod parallel;
pub mod poly;
pub mod scheme;
pub mod term;

pub use division::{
    is_complete, is_stably_complete, janet_complete, janet_multiplicative_vars, offspring_contains,
    pommaret_multiplicative_vars, star_decompose, Completeness, DivisionAssignment, DivisionError, Flavor,
    StableCompleteness, StableWitness, StarFactorization, TermSet,
};
pub use ideal::{
    classify, hilbert_function, involutive_test, membership, pommaret_basis, regularity_report, sigma_profile,
    star_set, termination_degree, FailingPair, IdealError, InvolutiveCheck, MonomialIdeal, SigmaMode, SigmaProfile,
    StabilityReport, StarSet,
};
pub use marked::{
    build_gs, is_marked_basis, make_marked_set, normal_form, oracle_check, reduce, s_polynomial, BasisCertificate,
    MarkedError, MarkedPolynomial, MarkedSet, OracleReport, ReductionLimits, ReductionStatus, ReductionTrace,
};
pub use poly::{Polynomial, Rational, Ring};
pub use scheme::{
    generic_marked_set, scheme_equations, specialize, specialize_values, GenericMarkedSet, ParamPolynomial, ParamVar,
    SchemeEquations, SchemeError,
};
pub use term::{Term, TermError, Var, VarSet};
