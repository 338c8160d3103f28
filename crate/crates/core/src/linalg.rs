//! Exact integer linear algebra: fraction-free determinants, leading principal
//! minors, inertia of symmetric matrices under rational shifts, certified
//! eigenvalue brackets by bisection, and exact linear solves.
//!
//! Everything here is arbitrary-precision integer or rational arithmetic; no
//! floating point enters any certificate. Kernels never mutate their inputs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Dense square matrix of arbitrary-precision integers, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n);
        for r in 0..n {
            m.set(r, r, BigInt::one());
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                data.push(f(r, c));
            }
        }
        IntMatrix { n, data }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "ragged rows");
        IntMatrix::from_fn(n, |r, c| BigInt::from(rows[r][c]))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.n + c] = v;
    }

    pub fn is_symmetric(&self) -> std::result::Result<(), (usize, usize)> {
        for r in 0..self.n {
            for c in (r + 1)..self.n {
                if self.get(r, c) != self.get(c, r) {
                    return Err((r, c));
                }
            }
        }
        Ok(())
    }

    pub fn transpose(&self) -> Self {
        IntMatrix::from_fn(self.n, |r, c| self.get(c, r).clone())
    }

    /// `self + selfᵀ`.
    pub fn plus_transpose(&self) -> Self {
        IntMatrix::from_fn(self.n, |r, c| self.get(r, c) + self.get(c, r))
    }

    /// Principal submatrix on the given (strictly increasing) index list.
    pub fn principal_submatrix(&self, idx: &[usize]) -> Self {
        IntMatrix::from_fn(idx.len(), |r, c| self.get(idx[r], idx[c]).clone())
    }

    /// Rectangular minor matrix on row and column index lists of equal length.
    pub fn minor_matrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        assert_eq!(rows.len(), cols.len());
        IntMatrix::from_fn(rows.len(), |r, c| self.get(rows[r], cols[c]).clone())
    }

    /// Maximum absolute row sum, an upper bound for every eigenvalue magnitude.
    pub fn inf_norm(&self) -> BigInt {
        (0..self.n)
            .map(|r| (0..self.n).map(|c| self.get(r, c).abs()).sum::<BigInt>())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// `q·self − p·I` for a rational shift `p/q` with `q > 0`.
    fn shifted(&self, p: &BigInt, q: &BigInt) -> Self {
        let mut m = IntMatrix::from_fn(self.n, |r, c| self.get(r, c) * q);
        for r in 0..self.n {
            let v = m.get(r, r) - p;
            m.set(r, r, v);
        }
        m
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.n {
            self.data.swap(a * self.n + c, b * self.n + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.n {
            self.data.swap(r * self.n + a, r * self.n + b);
        }
    }
}

/// Counts of positive, zero and negative eigenvalues of a symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InertiaTriple {
    pub n_pos: usize,
    pub n_zero: usize,
    pub n_neg: usize,
}

impl InertiaTriple {
    pub fn dim(&self) -> usize {
        self.n_pos + self.n_zero + self.n_neg
    }
}

/// Leading principal minors of a symmetric matrix, orders `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorSequence {
    pub minors: Vec<BigInt>,
}

impl MinorSequence {
    pub fn all_positive(&self) -> bool {
        self.minors.iter().all(|m| m.is_positive())
    }

    /// The order-`n` minor, i.e. the full determinant.
    pub fn determinant(&self) -> &BigInt {
        self.minors.last().expect("nonempty minor sequence")
    }
}

// Row updates in fraction-free elimination are independent; split across the
// pool once the matrix is big enough for the bookkeeping to pay off.
const PAR_ROW_THRESHOLD: usize = 48;

/// One fraction-free elimination step on rows `k+1..` given the pivot row `k`.
/// `a[i][j] <- (a[i][j]·pivot − a[i][k]·a[k][j]) / prev`, exact division.
fn eliminate_below(m: &mut IntMatrix, k: usize, prev: &BigInt) {
    let n = m.n;
    let pivot_row: Vec<BigInt> = (k..n).map(|c| m.get(k, c).clone()).collect();
    let pivot = pivot_row[0].clone();
    let update_row = |row: &mut [BigInt]| {
        let lead = row[k].clone();
        for (c, rv) in row.iter_mut().enumerate().skip(k + 1) {
            let num = &*rv * &pivot - &lead * &pivot_row[c - k];
            *rv = num / prev;
        }
        row[k] = BigInt::zero();
    };
    let below = &mut m.data[(k + 1) * n..];
    if n - k - 1 >= PAR_ROW_THRESHOLD {
        below.par_chunks_mut(n).for_each(update_row);
    } else {
        below.chunks_mut(n).for_each(update_row);
    }
}

/// Exact determinant by Bareiss fraction-free elimination with row pivoting.
pub fn bareiss_det(a: &IntMatrix) -> Result<BigInt> {
    if a.n == 0 {
        return Err(Error::Shape("determinant of an empty matrix".into()));
    }
    let mut m = a.clone();
    let n = m.n;
    let mut prev = BigInt::one();
    let mut sign = 1i32;
    for k in 0..n - 1 {
        if m.get(k, k).is_zero() {
            match (k + 1..n).find(|&r| !m.get(r, k).is_zero()) {
                Some(r) => {
                    m.swap_rows(k, r);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        eliminate_below(&mut m, k, &prev);
        prev = m.get(k, k).clone();
    }
    let last = m.get(n - 1, n - 1).clone();
    Ok(if sign < 0 { -last } else { last })
}

/// Exact leading principal minors of a symmetric matrix, orders `1..=n`.
///
/// All positive is equivalent to positive definiteness (Sylvester). Runs a
/// single pivot-free fraction-free pass — the pivots are exactly the leading
/// minors — and falls back to per-order determinants past a zero minor.
pub fn leading_minors(a: &IntMatrix) -> Result<MinorSequence> {
    if a.n == 0 {
        return Err(Error::Shape("minors of an empty matrix".into()));
    }
    if let Err((r, c)) = a.is_symmetric() {
        return Err(Error::Asymmetric(r, c));
    }
    let n = a.n;
    let mut m = a.clone();
    let mut minors = Vec::with_capacity(n);
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = m.get(k, k).clone();
        minors.push(pivot.clone());
        if k + 1 == n {
            break;
        }
        if pivot.is_zero() {
            // Cannot continue fraction-free past a singular leading block;
            // finish the remaining orders one determinant at a time.
            for order in (k + 2)..=n {
                let idx: Vec<usize> = (0..order).collect();
                minors.push(bareiss_det(&a.principal_submatrix(&idx))?);
            }
            break;
        }
        eliminate_below(&mut m, k, &prev);
        prev = pivot;
    }
    Ok(MinorSequence { minors })
}

/// Maximum count of negatives after which `inertia_bounded` may stop early.
enum NegStop {
    Exact,
    AtLeast(usize),
}

fn inertia_bounded(b: &IntMatrix, stop: NegStop, shift_label: &str) -> Result<InertiaTriple> {
    let n = b.n;
    let mut m = b.clone();
    let mut prev = BigInt::one();
    let mut prev_sign = 1i8;
    let mut tri = InertiaTriple {
        n_pos: 0,
        n_zero: 0,
        n_neg: 0,
    };
    for k in 0..n {
        if m.get(k, k).is_zero() {
            // Symmetric permutation keeps congruence; look for a nonzero
            // diagonal entry in the trailing block.
            match (k + 1..n).find(|&r| !m.get(r, r).is_zero()) {
                Some(r) => {
                    m.swap_rows(k, r);
                    m.swap_cols(k, r);
                }
                None => {
                    let trailing_zero = (k..n).all(|r| (k..n).all(|c| m.get(r, c).is_zero()));
                    if trailing_zero {
                        tri.n_zero += n - k;
                        return Ok(tri);
                    }
                    return Err(Error::ShiftCollision {
                        shift: shift_label.to_string(),
                    });
                }
            }
        }
        let pivot = m.get(k, k).clone();
        let sign = if pivot.is_positive() { 1i8 } else { -1i8 };
        if sign == prev_sign {
            tri.n_pos += 1;
        } else {
            tri.n_neg += 1;
            if let NegStop::AtLeast(limit) = stop {
                if tri.n_neg >= limit {
                    return Ok(tri);
                }
            }
        }
        prev_sign = sign;
        if k + 1 < n {
            eliminate_below(&mut m, k, &prev);
            prev = pivot;
        }
    }
    Ok(tri)
}

/// Exact inertia of `a − t·I` for a rational shift `t`, by fraction-free
/// symmetric elimination on the integer matrix `q·a − p·I` where `t = p/q`.
///
/// `n_neg` counts eigenvalues of `a` strictly below `t`. Fails with a
/// shift-collision error when no usable diagonal pivot exists; the caller
/// retries with a perturbed shift.
pub fn inertia_at_shift(a: &IntMatrix, t: &BigRational) -> Result<InertiaTriple> {
    if a.n == 0 {
        return Err(Error::Shape("inertia of an empty matrix".into()));
    }
    if let Err((r, c)) = a.is_symmetric() {
        return Err(Error::Asymmetric(r, c));
    }
    let t = t.reduced();
    let b = a.shifted(t.numer(), t.denom());
    inertia_bounded(&b, NegStop::Exact, &t.to_string())
}

/// Like [`inertia_at_shift`] but only answers "is any eigenvalue below `t`",
/// stopping the elimination at the first negative pivot.
fn any_eigenvalue_below(a: &IntMatrix, t: &BigRational) -> Result<bool> {
    let t = t.reduced();
    let b = a.shifted(t.numer(), t.denom());
    let tri = inertia_bounded(&b, NegStop::AtLeast(1), &t.to_string())?;
    Ok(tri.n_neg >= 1)
}

/// A certified bracket around the smallest eigenvalue: exact inertia proves
/// `n_neg = 0` at `lo` and `n_neg >= 1` at `hi`, so `λ_min ∈ [lo, hi)`.
#[derive(Debug, Clone)]
pub struct EigenBracket {
    pub lo: BigRational,
    pub hi: BigRational,
    pub inertia_evaluations: usize,
}

impl EigenBracket {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        let x = BigRational::from_float(x).expect("finite");
        self.lo <= x && x <= self.hi
    }

    pub fn midpoint_f64(&self) -> f64 {
        rational_to_f64(&((&self.lo + &self.hi) / BigInt::from(2)))
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

const MAX_BISECTIONS: usize = 200;
const MAX_SHIFT_RETRIES: u32 = 16;

/// Inertia with the shift-collision retry contract: on collision the shift is
/// nudged by `1/2^(64+attempt)` and the perturbed shift is reported back.
fn eigen_count_below(a: &IntMatrix, t: &BigRational) -> Result<(BigRational, bool)> {
    let mut shift = t.clone();
    for attempt in 0..MAX_SHIFT_RETRIES {
        match any_eigenvalue_below(a, &shift) {
            Ok(below) => return Ok((shift, below)),
            Err(Error::ShiftCollision { .. }) => {
                let eps = BigRational::new(BigInt::one(), BigInt::from(2).pow(64 + attempt));
                shift = t + eps;
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::ShiftCollision {
        shift: t.to_string(),
    })
}

/// Brackets the smallest eigenvalue of a symmetric integer matrix inside an
/// interval of width at most `abs_tol`, by bisection on exact inertia counts.
///
/// The starting bracket comes from the Gershgorin row-sum bound, so it always
/// contains the spectrum. `hint`, when given, only steers the first trial
/// shifts; every bracket update is still certified by exact inertia, so a bad
/// hint costs time, never correctness.
pub fn certified_min_eigenvalue(
    a: &IntMatrix,
    abs_tol: &BigRational,
    hint: Option<f64>,
) -> Result<EigenBracket> {
    if a.n == 0 {
        return Err(Error::Shape("eigenvalues of an empty matrix".into()));
    }
    if let Err((r, c)) = a.is_symmetric() {
        return Err(Error::Asymmetric(r, c));
    }
    if !abs_tol.is_positive() {
        return Err(Error::InvalidArgument(
            "bracket tolerance must be positive".into(),
        ));
    }
    let radius = a.inf_norm() + BigInt::one();
    let mut lo = BigRational::from_integer(-radius.clone());
    let mut hi = BigRational::from_integer(radius);
    let mut evals = 0usize;

    // Trial shifts to try before falling back to midpoints.
    let mut suggestions: Vec<BigRational> = Vec::new();
    if let Some(h) = hint {
        if h.is_finite() {
            if let Some(hr) = BigRational::from_float(h) {
                let spread = {
                    let mag = hr.abs() / BigInt::from(16);
                    if mag < *abs_tol {
                        abs_tol.clone()
                    } else {
                        mag
                    }
                };
                // Order matters: confirm the upper side first so the bracket
                // shrinks toward the hint from both ends.
                suggestions.push(&hr + &spread);
                suggestions.push(&hr - &spread);
            }
        }
    }
    suggestions.retain(|s| *s > lo && *s < hi);
    suggestions.reverse(); // consumed by pop()

    for _ in 0..MAX_BISECTIONS {
        if hi.clone() - lo.clone() <= *abs_tol {
            return Ok(EigenBracket {
                lo,
                hi,
                inertia_evaluations: evals,
            });
        }
        let trial = match suggestions.pop() {
            Some(s) if s > lo && s < hi => s,
            _ => (&lo + &hi) / BigInt::from(2),
        };
        let (used, below) = eigen_count_below(a, &trial)?;
        evals += 1;
        if !(used > lo && used < hi) {
            // A perturbed retry escaped the bracket; discard and bisect.
            continue;
        }
        if below {
            hi = used;
        } else {
            lo = used;
        }
    }
    Err(Error::NoConvergence(MAX_BISECTIONS))
}

/// Exact solution of `A·x = b` for integer `A` and rational `b`, by
/// fraction-free forward elimination and rational back-substitution.
pub fn solve_exact(a: &IntMatrix, b: &[BigRational]) -> Result<Vec<BigRational>> {
    let n = a.n;
    if b.len() != n {
        return Err(Error::Shape(format!(
            "rhs length {} does not match dimension {n}",
            b.len()
        )));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    // Clear rhs denominators: solve A·y = s·b with integer rhs, then x = y/s.
    let scale: BigInt = b
        .iter()
        .fold(BigInt::one(), |acc, v| num_integer::lcm(acc, v.denom().clone()));
    let mut rhs: Vec<BigInt> = b
        .iter()
        .map(|v| v.numer() * (&scale / v.denom()))
        .collect();
    let mut m = a.clone();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m.get(k, k).is_zero() {
            match (k + 1..n).find(|&r| !m.get(r, k).is_zero()) {
                Some(r) => {
                    m.swap_rows(k, r);
                    rhs.swap(k, r);
                }
                None => return Err(Error::SingularMatrix),
            }
        }
        let pivot = m.get(k, k).clone();
        for i in k + 1..n {
            let v = &rhs[i] * &pivot - m.get(i, k) * &rhs[k];
            rhs[i] = v / &prev;
        }
        eliminate_below(&mut m, k, &prev);
        prev = pivot;
    }
    if m.get(n - 1, n - 1).is_zero() {
        return Err(Error::SingularMatrix);
    }
    // Back-substitution in exact rationals.
    let mut x = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = BigRational::from_integer(rhs[i].clone());
        for j in i + 1..n {
            acc -= BigRational::from_integer(m.get(i, j).clone()) * &x[j];
        }
        x[i] = acc / BigRational::from_integer(m.get(i, i).clone());
    }
    for v in &mut x {
        *v /= BigRational::from_integer(scale.clone());
        *v = v.reduced();
    }
    Ok(x)
}

/// Multiplies `A·x` exactly for a rational vector.
pub fn mat_vec(a: &IntMatrix, x: &[BigRational]) -> Vec<BigRational> {
    (0..a.n)
        .map(|r| {
            (0..a.n)
                .map(|c| BigRational::from_integer(a.get(r, c).clone()) * &x[c])
                .sum()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Independent oracle: determinant by cofactor expansion along row 0.
    fn cofactor_det(a: &IntMatrix) -> BigInt {
        let n = a.dim();
        if n == 1 {
            return a.get(0, 0).clone();
        }
        let mut acc = BigInt::zero();
        for c in 0..n {
            if a.get(0, c).is_zero() {
                continue;
            }
            let sub = IntMatrix::from_fn(n - 1, |r2, c2| {
                a.get(r2 + 1, if c2 < c { c2 } else { c2 + 1 }).clone()
            });
            let term = a.get(0, c) * cofactor_det(&sub);
            if c % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn bareiss_small_examples() {
        let m = IntMatrix::from_i64_rows(&[&[4, 2, 2], &[2, 4, 2], &[2, 2, 4]]);
        assert_eq!(bareiss_det(&m).unwrap(), BigInt::from(32));
        assert_eq!(cofactor_det(&m), BigInt::from(32));

        assert_eq!(bareiss_det(&IntMatrix::identity(5)).unwrap(), BigInt::one());

        // Edge block of the degree-4 integer collocation companion.
        let edge = IntMatrix::from_i64_rows(&[&[27, 9, 3], &[16, 16, 16], &[3, 9, 27]]);
        let det = bareiss_det(&edge).unwrap();
        assert_eq!(det, cofactor_det(&edge));
        assert_eq!(det, BigInt::from(4608));
    }

    #[test]
    fn bareiss_pivoting_and_singularity() {
        let m = IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(bareiss_det(&m).unwrap(), BigInt::from(-1));
        let s = IntMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(bareiss_det(&s).unwrap(), BigInt::zero());
        assert!(bareiss_det(&IntMatrix::zeros(0)).is_err());
    }

    #[test]
    fn bareiss_matches_cofactor_fuzz() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x9e3779b97f4a7c15);
        for _ in 0..10_000 {
            let n = rng.gen_range(1..=6);
            let m = IntMatrix::from_fn(n, |_, _| BigInt::from(rng.gen_range(-9i64..=9)));
            assert_eq!(bareiss_det(&m).unwrap(), cofactor_det(&m));
        }
    }

    #[test]
    fn leading_minors_examples() {
        let d = IntMatrix::from_i64_rows(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
        assert_eq!(
            leading_minors(&d).unwrap().minors,
            vec![BigInt::from(1), BigInt::from(2), BigInt::from(6)]
        );
        let ind = IntMatrix::from_i64_rows(&[&[1, 2], &[2, 1]]);
        let ms = leading_minors(&ind).unwrap();
        assert_eq!(ms.minors, vec![BigInt::from(1), BigInt::from(-3)]);
        assert!(!ms.all_positive());

        let asym = IntMatrix::from_i64_rows(&[&[1, 2], &[3, 1]]);
        assert!(matches!(leading_minors(&asym), Err(Error::Asymmetric(0, 1))));
    }

    /// f64 Cholesky, test-only cross-check for definiteness claims.
    fn cholesky_f64_succeeds(a: &[Vec<f64>]) -> bool {
        let n = a.len();
        let mut l = vec![vec![0f64; n]; n];
        for i in 0..n {
            for j in 0..=i {
                let mut sum = a[i][j];
                for k in 0..j {
                    sum -= l[i][k] * l[j][k];
                }
                if i == j {
                    if sum <= 0.0 {
                        return false;
                    }
                    l[i][j] = sum.sqrt();
                } else {
                    l[i][j] = sum / l[j][j];
                }
            }
        }
        true
    }

    #[test]
    fn symmetrized_degree_four_collocation_is_definite() {
        use crate::colloc::build_m;
        use crate::comb::GammaSet;
        let m = build_m(&GammaSet::full(4).unwrap()).unwrap();
        let sym = m.integer_matrix().plus_transpose();
        let minors = leading_minors(&sym).unwrap();
        assert_eq!(minors.minors.len(), 15);
        assert!(minors.all_positive());
        // Same statement through a float Cholesky factorization.
        let n = sym.dim();
        let approx: Vec<Vec<f64>> = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| rational_to_f64(&BigRational::from_integer(sym.get(r, c).clone())))
                    .collect()
            })
            .collect();
        assert!(cholesky_f64_succeeds(&approx));
    }

    #[test]
    fn leading_minors_past_zero_minor() {
        // Leading 1x1 minor is zero; the fallback path must still deliver
        // every order, with the last equal to the determinant.
        let m = IntMatrix::from_i64_rows(&[&[0, 1, 2], &[1, 3, 4], &[2, 4, 5]]);
        let ms = leading_minors(&m).unwrap();
        assert_eq!(ms.minors.len(), 3);
        assert_eq!(ms.minors[0], BigInt::zero());
        assert_eq!(*ms.determinant(), cofactor_det(&m));
    }

    #[test]
    fn leading_minors_last_equals_det_fuzz() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..500 {
            let n = rng.gen_range(1..=6);
            let mut m = IntMatrix::zeros(n);
            for r in 0..n {
                for c in r..n {
                    let v = BigInt::from(rng.gen_range(-9i64..=9));
                    m.set(r, c, v.clone());
                    m.set(c, r, v);
                }
            }
            let ms = leading_minors(&m).unwrap();
            assert_eq!(*ms.determinant(), bareiss_det(&m).unwrap());
        }
    }

    #[test]
    fn inertia_examples() {
        let a = IntMatrix::from_i64_rows(&[&[2, 0], &[0, -1]]);
        let tri = inertia_at_shift(&a, &BigRational::zero()).unwrap();
        assert_eq!(
            tri,
            InertiaTriple {
                n_pos: 1,
                n_zero: 0,
                n_neg: 1
            }
        );
        // Eigenvalues 2 and -1: counts below/above t = 1.
        let tri = inertia_at_shift(&a, &BigRational::from_i64(1).unwrap()).unwrap();
        assert_eq!(tri.n_neg, 1);
        assert_eq!(tri.n_pos, 1);
        // Shift exactly on an eigenvalue gives a zero count.
        let tri = inertia_at_shift(&a, &rat(-1, 1)).unwrap();
        assert_eq!(tri.n_zero, 1);
        assert_eq!(tri.n_neg, 0);
    }

    #[test]
    fn inertia_shift_collision_surfaces() {
        let a = IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        match inertia_at_shift(&a, &BigRational::zero()) {
            Err(Error::ShiftCollision { .. }) => {}
            other => panic!("expected shift collision, got {other:?}"),
        }
        // The bracketing path retries with a perturbed shift and succeeds.
        let bracket = certified_min_eigenvalue(&a, &rat(1, 1_000_000), None).unwrap();
        assert!(bracket.contains_f64(-1.0));
    }

    #[test]
    fn inertia_monotone_in_shift() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let n = rng.gen_range(1..=6);
            let mut m = IntMatrix::zeros(n);
            for r in 0..n {
                for c in r..n {
                    let v = BigInt::from(rng.gen_range(-5i64..=5));
                    m.set(r, c, v.clone());
                    m.set(c, r, v);
                }
            }
            let mut last_neg = 0usize;
            for t in [-20i64, -3, 0, 3, 20] {
                let shift = rat(2 * t + 1, 2); // avoid integer eigenvalues
                let tri = match inertia_at_shift(&m, &shift) {
                    Ok(tri) => tri,
                    Err(Error::ShiftCollision { .. }) => continue,
                    Err(e) => panic!("{e}"),
                };
                assert_eq!(tri.dim(), n);
                assert!(tri.n_neg >= last_neg, "n_neg not monotone");
                last_neg = tri.n_neg;
            }
        }
    }

    #[test]
    fn certified_bracket_trivials() {
        let id = IntMatrix::identity(4);
        let b = certified_min_eigenvalue(&id, &rat(1, 1000), None).unwrap();
        assert!(b.contains_f64(1.0));
        assert!(b.width() <= rat(1, 1000));

        let d = IntMatrix::from_i64_rows(&[&[3, 0], &[0, -5]]);
        let b = certified_min_eigenvalue(&d, &rat(1, 1 << 20), Some(-5.0)).unwrap();
        assert!(b.contains_f64(-5.0));
    }

    #[test]
    fn certified_bracket_contains_float_estimate_fuzz() {
        // Against a plain f64 Jacobi estimate on random symmetric matrices.
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..25 {
            let n = rng.gen_range(2..=30);
            let mut m = IntMatrix::zeros(n);
            let mut f = vec![vec![0f64; n]; n];
            for r in 0..n {
                for c in r..n {
                    let v = rng.gen_range(-9i64..=9);
                    m.set(r, c, BigInt::from(v));
                    m.set(c, r, BigInt::from(v));
                    f[r][c] = v as f64;
                    f[c][r] = v as f64;
                }
            }
            let est = crate::spectral::jacobi_eigenvalues_f64(&f)
                .unwrap()
                .into_iter()
                .fold(f64::INFINITY, f64::min);
            let b = certified_min_eigenvalue(&m, &rat(1, 1 << 24), None).unwrap();
            assert!(
                b.lo <= BigRational::from_float(est + 1e-9).unwrap()
                    && BigRational::from_float(est - 1e-9).unwrap() <= b.hi,
                "bracket [{}, {}] misses float estimate {est}",
                b.lo,
                b.hi
            );
        }
    }

    #[test]
    fn solve_examples() {
        // Identity passes the rhs through.
        let id = IntMatrix::identity(3);
        let b = vec![rat(1, 2), rat(-3, 4), rat(5, 1)];
        assert_eq!(solve_exact(&id, &b).unwrap(), b);

        // 1x1 integer system representing [1/2]·x = 3 after scaling by 2.
        let half = IntMatrix::from_i64_rows(&[&[1]]);
        let x = solve_exact(&half, &[rat(6, 1)]).unwrap();
        assert_eq!(x, vec![rat(6, 1)]);

        let sing = IntMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert!(matches!(
            solve_exact(&sing, &[rat(1, 1), rat(1, 1)]),
            Err(Error::SingularMatrix)
        ));
    }

    #[test]
    fn solve_residual_exactly_zero_fuzz() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut solved = 0;
        while solved < 200 {
            let n = rng.gen_range(1..=6);
            let m = IntMatrix::from_fn(n, |_, _| BigInt::from(rng.gen_range(-9i64..=9)));
            let b: Vec<BigRational> = (0..n)
                .map(|_| rat(rng.gen_range(-20i64..=20), rng.gen_range(1i64..=9)))
                .collect();
            match solve_exact(&m, &b) {
                Ok(x) => {
                    let back = mat_vec(&m, &x);
                    assert_eq!(back, b, "nonzero residual");
                    solved += 1;
                }
                Err(Error::SingularMatrix) => continue,
                Err(e) => panic!("{e}"),
            }
        }
    }
}
