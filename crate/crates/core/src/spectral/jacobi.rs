//! Cyclic Jacobi rotation sweeps for symmetric matrices, generic over the
//! scalar so the same code runs in doubles (cross-check) and double-doubles
//! (reported spectra).

use crate::dd::Real;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

fn off_diagonal_norm_sq<T: Real>(a: &[Vec<T>]) -> T {
    let n = a.len();
    let mut acc = T::zero();
    for p in 0..n {
        for q in (p + 1)..n {
            acc += a[p][q] * a[p][q];
        }
    }
    acc + acc
}

fn frobenius_norm_sq<T: Real>(a: &[Vec<T>]) -> T {
    let mut acc = T::zero();
    for row in a {
        for &v in row {
            acc += v * v;
        }
    }
    acc
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi sweeps, unsorted.
/// The input is consumed as scratch.
pub fn jacobi_eigenvalues<T: Real>(mut a: Vec<Vec<T>>) -> Result<Vec<T>> {
    let n = a.len();
    if n == 0 {
        return Err(Error::Shape("eigenvalues of an empty matrix".into()));
    }
    for row in &a {
        if row.len() != n {
            return Err(Error::Shape("matrix is not square".into()));
        }
    }
    if n == 1 {
        return Ok(vec![a[0][0]]);
    }
    let eps = T::epsilon();
    let fro = frobenius_norm_sq(&a).sqrt();
    let stop = eps * fro;
    let one = T::one();
    let two = T::from_f64(2.0);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm_sq(&a).sqrt() <= stop {
            return Ok((0..n).map(|i| a[i][i]).collect());
        }
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let apq = a[p][q];
                if apq.is_zero_val() {
                    continue;
                }
                // Skip rotations that cannot change anything at working precision.
                if apq.abs() <= eps * (a[p][p].abs().max_val(a[q][q].abs())) {
                    a[p][q] = T::zero();
                    a[q][p] = T::zero();
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (two * apq);
                let t = {
                    let mag = one / (theta.abs() + (one + theta * theta).sqrt());
                    if theta < T::zero() {
                        -mag
                    } else {
                        mag
                    }
                };
                let c = one / (one + t * t).sqrt();
                let s = t * c;

                let app = a[p][p];
                let aqq = a[q][q];
                a[p][p] = app - t * apq;
                a[q][q] = aqq + t * apq;
                a[p][q] = T::zero();
                a[q][p] = T::zero();
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[r][p];
                    let arq = a[r][q];
                    let new_p = c * arp - s * arq;
                    let new_q = s * arp + c * arq;
                    a[r][p] = new_p;
                    a[p][r] = new_p;
                    a[r][q] = new_q;
                    a[q][r] = new_q;
                }
            }
        }
    }
    Err(Error::EigenNoConvergence(format!(
        "jacobi sweeps exceeded {MAX_SWEEPS} on a {n}x{n} matrix"
    )))
}
