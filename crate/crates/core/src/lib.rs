//! Exact-arithmetic toolkit for bivariate Bézier collocation matrices at the
//! domain points of a triangle: constructing the rational collocation matrix
//! and its integer companion, certifying positivity of determinants and
//! principal minors, searching for minimum determinants, and computing
//! spectra with multiplicity clustering and cross-degree interlacing checks.
//!
//! Every certificate is integer or rational arithmetic end to end; floating
//! point (double-double, with plain doubles as cross-checks) appears only in
//! the diagnostic spectral paths.

pub mod colloc;
pub mod comb;
pub mod dd;
pub mod error;
pub mod linalg;
pub mod report;
pub mod spectral;
pub mod verify;

pub use colloc::{
    block_factorize, build_m, build_n, det_m_from_n, line_config_reduce, multi_power, multinomial,
    univariate_collocation, BlockFactorization, ExactMatrix,
};
pub use comb::{
    compositions, edge_interior, Composition, DomainPoint, Edge, GammaSet,
};
pub use dd::{Dd, Real};
pub use error::{Error, Result};
pub use linalg::{
    bareiss_det, certified_min_eigenvalue, inertia_at_shift, leading_minors, solve_exact,
    EigenBracket, InertiaTriple, IntMatrix, MinorSequence,
};
pub use report::{MinDetResult, SpectrumReport, Status, VerificationReport, Witness};
pub use spectral::{check_interlacing, spectrum, spectrum_with, Spectrum, SpectrumOptions};
pub use verify::{
    closed_form_det, enumerate_principal_minors, formula_check, lemma_max_check, min_det_search,
    n_d_formula, small_gamma_min_check, solve_constrained, theorem4_check, verify_pd, Budget,
    Scope,
};
