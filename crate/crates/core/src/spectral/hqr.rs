//! General (nonsymmetric) eigenvalues: balancing, Householder reduction to
//! Hessenberg form, and Francis double-shift QR iteration, generic over the
//! scalar. Classic EISPACK/JAMA recipe, eigenvalues only.

use crate::dd::Real;
use crate::error::{Error, Result};

/// Diagonal similarity scaling by powers of two (exact in binary floating
/// point), bringing row and column norms close together.
fn balance<T: Real>(a: &mut [Vec<T>]) {
    let n = a.len();
    let radix = T::from_f64(2.0);
    let radix_sq = T::from_f64(4.0);
    let threshold = T::from_f64(0.95);
    loop {
        let mut noconv = false;
        for i in 0..n {
            let mut c = T::zero();
            let mut r = T::zero();
            for j in 0..n {
                if j != i {
                    c += a[j][i].abs();
                    r += a[i][j].abs();
                }
            }
            if c.is_zero_val() || r.is_zero_val() {
                continue;
            }
            let mut g = r / radix;
            let mut f = T::one();
            let s = c + r;
            while c < g {
                f = f * radix;
                c = c * radix_sq;
            }
            g = r * radix;
            while c >= g {
                f = f / radix;
                c = c / radix_sq;
            }
            if (c + r) / f < threshold * s {
                noconv = true;
                let ginv = T::one() / f;
                for j in 0..n {
                    a[i][j] = a[i][j] * ginv;
                }
                for j in 0..n {
                    a[j][i] = a[j][i] * f;
                }
            }
        }
        if !noconv {
            break;
        }
    }
}

/// Householder similarity reduction to upper Hessenberg form, in place.
fn hessenberg<T: Real>(h: &mut [Vec<T>]) {
    let n = h.len();
    if n < 3 {
        return;
    }
    let (low, high) = (0usize, n - 1);
    let mut ort = vec![T::zero(); n];
    for m in (low + 1)..high {
        let mut scale = T::zero();
        for i in m..=high {
            scale += h[i][m - 1].abs();
        }
        if scale.is_zero_val() {
            continue;
        }
        let mut hh = T::zero();
        for i in (m..=high).rev() {
            ort[i] = h[i][m - 1] / scale;
            hh += ort[i] * ort[i];
        }
        let mut g = hh.sqrt();
        if ort[m] > T::zero() {
            g = -g;
        }
        hh -= ort[m] * g;
        ort[m] -= g;
        for j in m..n {
            let mut f = T::zero();
            for i in (m..=high).rev() {
                f += ort[i] * h[i][j];
            }
            f = f / hh;
            for i in m..=high {
                let v = f * ort[i];
                h[i][j] -= v;
            }
        }
        for i in 0..=high {
            let mut f = T::zero();
            for j in (m..=high).rev() {
                f += ort[j] * h[i][j];
            }
            f = f / hh;
            for j in m..=high {
                let v = f * ort[j];
                h[i][j] -= v;
            }
        }
        ort[m] = scale * ort[m];
        h[m][m - 1] = scale * g;
    }
    for i in 2..n {
        for j in 0..(i - 1) {
            h[i][j] = T::zero();
        }
    }
}

const MAX_ITER_PER_DEFLATION: usize = 60;

/// Francis double-shift QR on an upper Hessenberg matrix; returns the
/// eigenvalues as `(re, im)` pairs, unsorted.
fn hqr<T: Real>(h: &mut [Vec<T>]) -> Result<Vec<(T, T)>> {
    let nn = h.len();
    let mut d = vec![T::zero(); nn];
    let mut e = vec![T::zero(); nn];
    if nn == 0 {
        return Ok(Vec::new());
    }
    let low = 0isize;
    let eps = T::epsilon();
    let mut exshift = T::zero();
    // p, q, r are set by the subdiagonal search before every read, but that
    // flows across loop iterations the checker cannot follow.
    let (mut p, mut q, mut r) = (T::zero(), T::zero(), T::zero());
    let (mut s, mut z);
    let (mut x, mut y, mut w);

    let mut norm = T::zero();
    for i in 0..nn {
        for j in i.saturating_sub(1)..nn {
            norm += h[i][j].abs();
        }
    }

    let mut n = nn as isize - 1;
    let mut iter = 0usize;
    while n >= low {
        // Look for a single small subdiagonal element.
        let mut l = n;
        while l > low {
            s = h[(l - 1) as usize][(l - 1) as usize].abs() + h[l as usize][l as usize].abs();
            if s.is_zero_val() {
                s = norm;
            }
            if h[l as usize][(l - 1) as usize].abs() < eps * s {
                break;
            }
            l -= 1;
        }

        if l == n {
            // One root found.
            let un = n as usize;
            h[un][un] += exshift;
            d[un] = h[un][un];
            e[un] = T::zero();
            n -= 1;
            iter = 0;
        } else if l == n - 1 {
            // Two roots found.
            let un = n as usize;
            w = h[un][un - 1] * h[un - 1][un];
            p = (h[un - 1][un - 1] - h[un][un]) / T::from_f64(2.0);
            q = p * p + w;
            z = q.abs().sqrt();
            h[un][un] += exshift;
            h[un - 1][un - 1] += exshift;
            x = h[un][un];
            if q >= T::zero() {
                // Real pair.
                z = if p >= T::zero() { p + z } else { p - z };
                d[un - 1] = x + z;
                d[un] = d[un - 1];
                if !z.is_zero_val() {
                    d[un] = x - w / z;
                }
                e[un - 1] = T::zero();
                e[un] = T::zero();
            } else {
                // Complex pair.
                d[un - 1] = x + p;
                d[un] = x + p;
                e[un - 1] = z;
                e[un] = -z;
            }
            n -= 2;
            iter = 0;
        } else {
            // No convergence yet; form a shift.
            let un = n as usize;
            x = h[un][un];
            y = T::zero();
            w = T::zero();
            if l < n {
                y = h[un - 1][un - 1];
                w = h[un][un - 1] * h[un - 1][un];
            }
            if iter == 10 {
                exshift += x;
                for i in (low as usize)..=un {
                    h[i][i] -= x;
                }
                s = h[un][un - 1].abs() + h[un - 1][un - 2].abs();
                x = T::from_f64(0.75) * s;
                y = x;
                w = T::from_f64(-0.4375) * s * s;
            }
            if iter == 30 {
                s = (y - x) / T::from_f64(2.0);
                s = s * s + w;
                if s > T::zero() {
                    s = s.sqrt();
                    if y < x {
                        s = -s;
                    }
                    s = x - w / ((y - x) / T::from_f64(2.0) + s);
                    for i in (low as usize)..=un {
                        h[i][i] -= s;
                    }
                    exshift += s;
                    x = T::from_f64(0.964);
                    y = x;
                    w = x;
                }
            }
            iter += 1;
            if iter > MAX_ITER_PER_DEFLATION {
                return Err(Error::EigenNoConvergence(format!(
                    "QR iteration stalled after {MAX_ITER_PER_DEFLATION} steps at block size {}",
                    n - l + 1
                )));
            }

            // Look for two consecutive small subdiagonal elements.
            let mut m = n - 2;
            while m >= l {
                let um = m as usize;
                z = h[um][um];
                r = x - z;
                s = y - z;
                p = (r * s - w) / h[um + 1][um] + h[um][um + 1];
                q = h[um + 1][um + 1] - z - r - s;
                r = h[um + 2][um + 1];
                s = p.abs() + q.abs() + r.abs();
                p = p / s;
                q = q / s;
                r = r / s;
                if m == l {
                    break;
                }
                let lhs = h[um][um - 1].abs() * (q.abs() + r.abs());
                let rhs = eps
                    * p.abs()
                    * (h[um - 1][um - 1].abs() + z.abs() + h[um + 1][um + 1].abs());
                if lhs < rhs {
                    break;
                }
                m -= 1;
            }
            for i in (m + 2)..=n {
                let ui = i as usize;
                h[ui][ui - 2] = T::zero();
                if i > m + 2 {
                    h[ui][ui - 3] = T::zero();
                }
            }

            // Double QR sweep on rows l..=n.
            for k in m..n {
                let uk = k as usize;
                let notlast = k != n - 1;
                if k != m {
                    p = h[uk][uk - 1];
                    q = h[uk + 1][uk - 1];
                    r = if notlast {
                        h[uk + 2][uk - 1]
                    } else {
                        T::zero()
                    };
                    x = p.abs() + q.abs() + r.abs();
                    if x.is_zero_val() {
                        continue;
                    }
                    p = p / x;
                    q = q / x;
                    r = r / x;
                }
                s = (p * p + q * q + r * r).sqrt();
                if p < T::zero() {
                    s = -s;
                }
                if s.is_zero_val() {
                    continue;
                }
                if k != m {
                    h[uk][uk - 1] = -s * x;
                } else if l != m {
                    h[uk][uk - 1] = -h[uk][uk - 1];
                }
                p += s;
                x = p / s;
                y = q / s;
                z = r / s;
                q = q / p;
                r = r / p;

                // Row modification.
                for j in uk..nn {
                    let mut pp = h[uk][j] + q * h[uk + 1][j];
                    if notlast {
                        pp += r * h[uk + 2][j];
                        h[uk + 2][j] -= pp * z;
                    }
                    h[uk][j] -= pp * x;
                    h[uk + 1][j] -= pp * y;
                }
                // Column modification.
                let imax = n.min(k + 3) as usize;
                for i in 0..=imax {
                    let mut pp = x * h[i][uk] + y * h[i][uk + 1];
                    if notlast {
                        pp += z * h[i][uk + 2];
                        h[i][uk + 2] -= pp * r;
                    }
                    h[i][uk] -= pp;
                    h[i][uk + 1] -= pp * q;
                }
            }
        }
    }
    Ok(d.into_iter().zip(e).collect())
}

/// Eigenvalues of a general square matrix as `(re, im)` pairs. The input is
/// consumed as scratch.
pub fn general_eigenvalues<T: Real>(mut a: Vec<Vec<T>>) -> Result<Vec<(T, T)>> {
    let n = a.len();
    if n == 0 {
        return Err(Error::Shape("eigenvalues of an empty matrix".into()));
    }
    for row in &a {
        if row.len() != n {
            return Err(Error::Shape("matrix is not square".into()));
        }
    }
    balance(&mut a);
    hessenberg(&mut a);
    hqr(&mut a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dd::Dd;

    fn sorted_real(pairs: Vec<(f64, f64)>) -> Vec<f64> {
        let mut v: Vec<f64> = pairs
            .into_iter()
            .map(|(re, im)| {
                assert!(im.abs() < 1e-9, "unexpected complex part {im}");
                re
            })
            .collect();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }

    #[test]
    fn triangular_matrix_returns_diagonal() {
        let a = vec![
            vec![3.0, 1.0, 2.0],
            vec![0.0, -1.0, 5.0],
            vec![0.0, 0.0, 7.0],
        ];
        let ev = sorted_real(general_eigenvalues(a).unwrap());
        assert!((ev[0] + 1.0).abs() < 1e-12);
        assert!((ev[1] - 3.0).abs() < 1e-12);
        assert!((ev[2] - 7.0).abs() < 1e-12);
    }

    #[test]
    fn companion_matrix_roots() {
        // Companion of (x-1)(x-2)(x-4) = x^3 - 7x^2 + 14x - 8.
        let a = vec![
            vec![7.0, -14.0, 8.0],
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
        ];
        let ev = sorted_real(general_eigenvalues(a).unwrap());
        for (got, want) in ev.iter().zip([1.0, 2.0, 4.0]) {
            assert!((got - want).abs() < 1e-10, "{got} vs {want}");
        }
    }

    #[test]
    fn rotation_matrix_gives_complex_pair() {
        let a = vec![vec![0.0, -1.0], vec![1.0, 0.0]];
        let mut ev = general_eigenvalues(a).unwrap();
        ev.sort_by(|x, y| x.1.partial_cmp(&y.1).unwrap());
        assert!((ev[0].1 + 1.0).abs() < 1e-14);
        assert!((ev[1].1 - 1.0).abs() < 1e-14);
        assert!(ev[0].0.abs() < 1e-14);
    }

    #[test]
    fn agrees_with_jacobi_on_symmetric_input() {
        let a = vec![
            vec![4.0, 1.0, 0.5, 0.0],
            vec![1.0, 3.0, -1.0, 0.25],
            vec![0.5, -1.0, 2.0, 1.0],
            vec![0.0, 0.25, 1.0, 1.5],
        ];
        let qr = sorted_real(general_eigenvalues(a.clone()).unwrap());
        let mut jac = super::super::jacobi::jacobi_eigenvalues(a).unwrap();
        jac.sort_by(|x, y| x.partial_cmp(y).unwrap());
        for (x, y) in qr.iter().zip(jac) {
            assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn double_double_path_matches_doubles() {
        let a_f = vec![
            vec![1.0, 0.25, 0.0],
            vec![0.5, 0.75, 0.125],
            vec![0.0, 0.5, 0.25],
        ];
        let a_dd: Vec<Vec<Dd>> = a_f
            .iter()
            .map(|r| r.iter().map(|&x| Dd::from_f64(x)).collect())
            .collect();
        let mut f = sorted_real(general_eigenvalues(a_f).unwrap());
        let mut dd: Vec<f64> = general_eigenvalues(a_dd)
            .unwrap()
            .into_iter()
            .map(|(re, im)| {
                assert!(im.abs().to_f64() < 1e-25);
                re.to_f64()
            })
            .collect();
        dd.sort_by(|x, y| x.partial_cmp(y).unwrap());
        f.sort_by(|x, y| x.partial_cmp(y).unwrap());
        for (x, y) in f.iter().zip(dd) {
            assert!((x - y).abs() < 1e-12);
        }
    }
}
