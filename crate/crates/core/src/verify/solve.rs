//! Constrained interpolation: fix coefficients on part of the index set,
//! prescribe values at the remaining domain points, and solve for the free
//! coefficients exactly. Unisolvence is guaranteed up to degree 17; larger
//! degrees are allowed with a warning and a singularity guard.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::colloc::{build_m, domain_point_coords, eval_bernstein};
use crate::comb::{Composition, GammaSet};
use crate::error::{Error, Result};
use crate::linalg::solve_exact;

/// Guaranteed-unisolvent degree bound for the constrained problem.
pub const SOLVE_GUARANTEE_DEGREE: u32 = 17;

#[derive(Debug)]
pub struct ConstrainedSolution {
    /// Exact coefficient for every member of the free index set.
    pub coefficients: BTreeMap<Composition, BigRational>,
    pub warning: Option<String>,
}

/// Solves for the coefficients on `free_gamma` such that the polynomial with
/// the given fixed coefficients elsewhere interpolates `targets` at the
/// domain points of `free_gamma`. Residuals are exactly zero by construction.
pub fn solve_constrained(
    d: u32,
    free_gamma: &GammaSet,
    fixed_coeffs: &BTreeMap<Composition, BigRational>,
    targets: &BTreeMap<Composition, BigRational>,
) -> Result<ConstrainedSolution> {
    if d == 0 {
        return Err(Error::InvalidDegree(0));
    }
    if free_gamma.degree() != d {
        return Err(Error::InvalidArgument(format!(
            "index set has degree {}, expected {d}",
            free_gamma.degree()
        )));
    }
    let full = GammaSet::full(d)?;
    for c in fixed_coeffs.keys() {
        if c.total() != d {
            return Err(Error::InvalidArgument(format!(
                "fixed coefficient index {c} does not sum to {d}"
            )));
        }
    }
    let complement: Vec<Composition> = full
        .members()
        .iter()
        .filter(|c| !free_gamma.contains(c))
        .copied()
        .collect();
    for c in &complement {
        if !fixed_coeffs.contains_key(c) {
            return Err(Error::InvalidArgument(format!(
                "fixed coefficients must cover the complement; missing {c}"
            )));
        }
    }
    let warning = (d > SOLVE_GUARANTEE_DEGREE).then(|| {
        format!("degree {d} exceeds the guaranteed-unisolvent range (<= {SOLVE_GUARANTEE_DEGREE})")
    });

    if free_gamma.is_empty() {
        return Ok(ConstrainedSolution {
            coefficients: BTreeMap::new(),
            warning,
        });
    }

    for member in free_gamma.members() {
        if !targets.contains_key(member) {
            return Err(Error::InvalidArgument(format!(
                "targets must cover the free index set; missing {member}"
            )));
        }
    }

    // Right-hand side: target minus the fixed part evaluated at the point,
    // scaled to match the integer matrix d^d·M.
    let scale = BigRational::from_integer(BigInt::from(d).pow(d));
    let mut rhs = Vec::with_capacity(free_gamma.len());
    for row in free_gamma.members() {
        let point = domain_point_coords(row, d);
        let mut value = targets[row].clone();
        for c in &complement {
            value -= fixed_coeffs[c].clone() * eval_bernstein(c, &point);
        }
        rhs.push(value * &scale);
    }
    let m = build_m(free_gamma)?;
    let x = solve_exact(m.integer_matrix(), &rhs)?;
    let coefficients = free_gamma
        .members()
        .iter()
        .copied()
        .zip(x)
        .collect::<BTreeMap<_, _>>();
    Ok(ConstrainedSolution {
        coefficients,
        warning,
    })
}

/// Exact value at the domain point `at / d` of the polynomial whose Bernstein
/// coefficients are the union of the two maps.
pub fn evaluate_combined(
    d: u32,
    free_coeffs: &BTreeMap<Composition, BigRational>,
    fixed_coeffs: &BTreeMap<Composition, BigRational>,
    at: &Composition,
) -> Result<BigRational> {
    use num_traits::Zero;
    if at.total() != d {
        return Err(Error::InvalidArgument(format!(
            "evaluation point {at} does not sum to {d}"
        )));
    }
    let point = domain_point_coords(at, d);
    let mut acc = BigRational::zero();
    for (c, v) in free_coeffs.iter().chain(fixed_coeffs.iter()) {
        acc += v.clone() * eval_bernstein(c, &point);
    }
    Ok(acc)
}
