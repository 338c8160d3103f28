//! Verification engines: positive-definiteness certification, exhaustive
//! principal-minor enumeration, minimum-determinant searches, closed-form
//! determinant validation, lattice brute-force checks, configuration
//! sampling, and constrained interpolation.

mod enumeration;
mod lemma;
mod mindet;
mod minors;
mod pd;
mod solve;
mod theorem4;

pub use lemma::{lemma_max_check, small_gamma_min_check};
pub use mindet::{closed_form_det, formula_check, min_det_search, n_d_formula, MinDetOutcome};
pub use minors::{enumerate_principal_minors, MinorsOutcome, Scope};
pub use pd::{verify_pd, PdOutcome, MAX_PD_DEGREE};
pub use solve::{evaluate_combined, solve_constrained, ConstrainedSolution, SOLVE_GUARANTEE_DEGREE};
pub use theorem4::{theorem4_check, CaseKind};

use serde::Serialize;

/// Enumeration budget: the default covers every check that runs in seconds
/// to minutes at desk scale; `Large` unlocks the million-subset interior
/// scans and the deep interlacing range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Budget {
    Default,
    Large,
}

impl Budget {
    /// Largest degree the interlacing check accepts at this budget.
    pub fn interlace_cap(self) -> u32 {
        match self {
            Budget::Default => 12,
            Budget::Large => 20,
        }
    }
}
