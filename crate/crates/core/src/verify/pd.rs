//! Positive-definiteness certification of the collocation matrix.
//!
//! Degrees up to 16: the symmetrized matrix passes the Sylvester criterion
//! with exact leading minors, so every principal minor of the collocation
//! matrix is positive. Degree 17: the full symmetrized matrix is indefinite
//! (exact inertia reports three negative eigenvalues), but the interior
//! diagonal block still certifies, the edge blocks are P-matrices by
//! exhaustive minors, and the block triangular structure carries the
//! conclusion. Degree 18: the route genuinely fails; the smallest eigenvalue
//! of the symmetrized matrix is bracketed below zero by certified bisection.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::colloc::build_m;
use crate::comb::{edge_interior, Edge, GammaSet};
use crate::dd::rational_to_decimal;
use crate::error::{Error, Result};
use crate::linalg::{
    certified_min_eigenvalue, inertia_at_shift, leading_minors, rational_to_f64, EigenBracket,
    InertiaTriple,
};
use crate::report::{VerificationReport, Witness};
use crate::spectral::jacobi_eigenvalues_f64;
use crate::verify::enumeration::scan_family;

/// Largest degree `verify_pd` accepts; beyond it the symmetrization route is
/// known to break down entirely.
pub const MAX_PD_DEGREE: u32 = 18;

#[derive(Debug)]
pub struct PdOutcome {
    pub report: VerificationReport,
    /// Exact inertia of the full symmetrized matrix (degrees 17 and 18).
    pub full_inertia: Option<InertiaTriple>,
    /// Certified bracket around the smallest symmetrized eigenvalue,
    /// unscaled (degree 18).
    pub min_eigen_bracket: Option<(BigRational, BigRational)>,
}

fn leading_set(gamma: &GammaSet, order: usize) -> Vec<[u32; 3]> {
    gamma.members()[..order].iter().map(|c| c.parts()).collect()
}

/// Relative tolerance used for the degree-18 bracket: 1e-9 of the scaled norm.
fn bracket_tolerance(norm: &BigInt) -> BigRational {
    BigRational::new(norm.clone(), BigInt::from(1_000_000_000u64))
}

pub fn verify_pd(d: u32) -> Result<PdOutcome> {
    if d == 0 {
        return Err(Error::InvalidDegree(0));
    }
    if d > MAX_PD_DEGREE {
        return Err(Error::OutOfValidatedRange(d, MAX_PD_DEGREE));
    }
    match d {
        1..=16 => pd_by_full_sylvester(d),
        17 => pd_by_interior_block(d),
        _ => pd_failure_with_bracket(d),
    }
}

fn pd_by_full_sylvester(d: u32) -> Result<PdOutcome> {
    let full = GammaSet::full(d)?;
    let sym = build_m(&full)?.integer_matrix().plus_transpose();
    let minors = leading_minors(&sym)?;
    let n = minors.minors.len();
    if let Some(bad) = minors.minors.iter().position(|m| !num_traits::Signed::is_positive(m)) {
        let witness = Witness {
            gamma: leading_set(&full, bad + 1),
            value: minors.minors[bad].to_string(),
        };
        return Ok(PdOutcome {
            report: VerificationReport::fail(
                "pd",
                d,
                vec![witness],
                format!("leading minor of order {} is not positive", bad + 1),
            ),
            full_inertia: None,
            min_eigen_bracket: None,
        });
    }
    Ok(PdOutcome {
        report: VerificationReport::pass(
            "pd",
            d,
            format!(
                "symmetrized collocation matrix is positive definite: all {n} exact leading minors positive; \
                 every principal minor of the collocation matrix is therefore positive"
            ),
        ),
        full_inertia: None,
        min_eigen_bracket: None,
    })
}

fn pd_by_interior_block(d: u32) -> Result<PdOutcome> {
    // Interior diagonal block: exact Sylvester.
    let interior = GammaSet::interior(d)?;
    let sym_interior = build_m(&interior)?.integer_matrix().plus_transpose();
    let interior_minors = leading_minors(&sym_interior)?;
    if let Some(bad) = interior_minors
        .minors
        .iter()
        .position(|m| !num_traits::Signed::is_positive(m))
    {
        let witness = Witness {
            gamma: leading_set(&interior, bad + 1),
            value: interior_minors.minors[bad].to_string(),
        };
        return Ok(PdOutcome {
            report: VerificationReport::fail(
                "pd",
                d,
                vec![witness],
                format!("interior leading minor of order {} is not positive", bad + 1),
            ),
            full_inertia: None,
            min_eigen_bracket: None,
        });
    }

    // Edge blocks: P-matrices by exhaustive principal minors (the three edge
    // blocks coincide exactly under relabeling, which is asserted, not assumed).
    if !crate::colloc::edge_blocks_coincide(d)? {
        return Err(Error::InvalidArgument(
            "edge blocks differ under relabeling".into(),
        ));
    }
    let edge = edge_interior(d, Edge::Uv)?;
    let edge_scan = scan_family(&edge, false)?;
    if let Some((mask, det)) = edge_scan.nonpositive {
        let witness = Witness {
            gamma: edge.subset(mask).to_triples(),
            value: det.to_string(),
        };
        return Ok(PdOutcome {
            report: VerificationReport::fail(
                "pd",
                d,
                vec![witness],
                "edge block has a nonpositive principal minor".into(),
            ),
            full_inertia: None,
            min_eigen_bracket: None,
        });
    }

    // Exact inertia of the full symmetrized matrix, reported alongside.
    let full = GammaSet::full(d)?;
    let sym_full = build_m(&full)?.integer_matrix().plus_transpose();
    let inertia = inertia_at_shift(&sym_full, &BigRational::zero())?;

    Ok(PdOutcome {
        report: VerificationReport::pass(
            "pd",
            d,
            format!(
                "interior block certified positive definite ({} exact minors); edge blocks are \
                 P-matrices ({} subsets each, min det {}); vertex blocks are [1]; full symmetrized \
                 matrix has exact inertia (n+, n0, n-) = ({}, {}, {})",
                interior_minors.minors.len(),
                edge_scan.subsets,
                edge_scan.min_n,
                inertia.n_pos,
                inertia.n_zero,
                inertia.n_neg
            ),
        ),
        full_inertia: Some(inertia),
        min_eigen_bracket: None,
    })
}

fn pd_failure_with_bracket(d: u32) -> Result<PdOutcome> {
    let full = GammaSet::full(d)?;
    let m = build_m(&full)?;
    let sym = m.integer_matrix().plus_transpose();
    let inertia = inertia_at_shift(&sym, &BigRational::zero())?;

    // Float hint on the unscaled matrix steers the exact bisection.
    let n = sym.dim();
    let denom = rational_to_f64(&BigRational::from_integer(m.denominator()));
    let mut approx = vec![vec![0f64; n]; n];
    for r in 0..n {
        for c in 0..n {
            approx[r][c] =
                rational_to_f64(&BigRational::from_integer(sym.get(r, c).clone())) / denom;
        }
    }
    let hint_unscaled = jacobi_eigenvalues_f64(&approx)
        .ok()
        .map(|ev| ev.into_iter().fold(f64::INFINITY, f64::min));
    let hint_scaled = hint_unscaled.map(|h| h * denom);

    let tol = bracket_tolerance(&sym.inf_norm());
    let bracket: EigenBracket = certified_min_eigenvalue(&sym, &tol, hint_scaled)?;
    let scale = BigRational::from_integer(m.denominator());
    let lo = &bracket.lo / &scale;
    let hi = &bracket.hi / &scale;
    let witness = Witness {
        gamma: full.to_triples(),
        value: format!(
            "lambda_min(M + M^T) in [{}, {}]",
            rational_to_decimal(&lo, 6),
            rational_to_decimal(&hi, 6)
        ),
    };
    let report = VerificationReport::fail(
        "pd",
        d,
        vec![witness],
        format!(
            "symmetrized matrix is indefinite: exact inertia (n+, n0, n-) = ({}, {}, {}); \
             smallest eigenvalue certified within [{}, {}] ({} exact inertia evaluations)",
            inertia.n_pos,
            inertia.n_zero,
            inertia.n_neg,
            rational_to_decimal(&lo, 8),
            rational_to_decimal(&hi, 8),
            bracket.inertia_evaluations
        ),
    );
    Ok(PdOutcome {
        report,
        full_inertia: Some(inertia),
        min_eigen_bracket: Some((lo, hi)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    #[test]
    fn small_degrees_certify() {
        for d in 1..=6 {
            let out = verify_pd(d).unwrap();
            assert_eq!(out.report.status, Status::Pass, "degree {d}");
        }
    }

    #[test]
    fn degree_bounds() {
        assert!(matches!(verify_pd(0), Err(Error::InvalidDegree(0))));
        assert!(matches!(
            verify_pd(19),
            Err(Error::OutOfValidatedRange(19, 18))
        ));
    }
}
