//! Double-double floating point: an unevaluated sum of two `f64`s giving
//! roughly 32 significant decimal digits. Used by the spectral code, where
//! plain doubles are kept only as a cross-check. The error-free transforms
//! use Dekker splitting, so no hardware FMA is assumed.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

/// Requires `|a| >= |b|` (or a == 0).
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

const SPLITTER: f64 = 134_217_729.0; // 2^27 + 1

#[inline]
fn split(a: f64) -> (f64, f64) {
    let t = SPLITTER * a;
    let hi = t - (t - a);
    (hi, a - hi)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    let err = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
    (p, err)
}

/// Extended-precision scalar `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

pub const DD_EPSILON: f64 = 4.93038065763132e-32; // 2^-104

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn hi(self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn from_rational(r: &BigRational) -> Dd {
        let hi = crate::linalg::rational_to_f64(r);
        if !hi.is_finite() {
            return Dd::from_f64(hi);
        }
        let rest = r - BigRational::from_float(hi).expect("finite");
        let lo = crate::linalg::rational_to_f64(&rest);
        let (s, e) = quick_two_sum(hi, lo);
        Dd { hi: s, lo: e }
    }

    /// Exact rational value of this number (both limbs are binary rationals).
    pub fn to_rational(self) -> BigRational {
        BigRational::from_float(self.hi).unwrap_or_else(BigRational::zero)
            + BigRational::from_float(self.lo).unwrap_or_else(BigRational::zero)
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.hi == 0.0 && self.lo == 0.0
    }

    #[inline]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    pub fn sqrt(self) -> Dd {
        if self.is_zero() {
            return Dd::ZERO;
        }
        assert!(self.hi > 0.0, "sqrt of negative double-double");
        let x = 1.0 / self.hi.sqrt();
        let ax = self.hi * x;
        let ax_dd = Dd::from_f64(ax);
        let diff = self - ax_dd * ax_dd;
        let corr = diff.hi * x * 0.5;
        let (s, e) = quick_two_sum(ax, corr);
        Dd { hi: s, lo: e }
    }

    pub fn max(self, other: Dd) -> Dd {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn min(self, other: Dd) -> Dd {
        if self <= other {
            self
        } else {
            other
        }
    }

    /// Decimal string with `sig` significant digits, correctly rounded from
    /// the exact rational value. Deterministic across platforms.
    pub fn to_decimal(self, sig: usize) -> String {
        rational_to_decimal(&self.to_rational(), sig)
    }
}

/// Formats an exact rational in scientific-or-positional decimal with `sig`
/// significant digits, round-half-up on the magnitude.
pub fn rational_to_decimal(r: &BigRational, sig: usize) -> String {
    assert!(sig >= 1);
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let mut a = r.numer().abs();
    let mut b = r.denom().abs();
    let ten = BigInt::from(10);
    let mut exp10: i64 = 0;
    while a >= &b * &ten {
        b *= &ten;
        exp10 += 1;
    }
    while a < b {
        a *= &ten;
        exp10 -= 1;
    }
    // a/b in [1, 10); round to `sig` digits.
    let scaled = &a * ten.pow(sig as u32 - 1);
    let (mut digits, rem) = num_integer::Integer::div_rem(&scaled, &b);
    if &rem * 2 >= b {
        digits += 1;
    }
    if digits == ten.pow(sig as u32) {
        digits /= &ten;
        exp10 += 1;
    }
    let digit_str = digits.to_string();
    let mut body = if (-4..(sig as i64).min(16)).contains(&exp10) {
        // Positional form.
        if exp10 >= 0 {
            let point = (exp10 + 1) as usize;
            if point >= digit_str.len() {
                format!("{}{}", digit_str, "0".repeat(point - digit_str.len()))
            } else {
                format!("{}.{}", &digit_str[..point], &digit_str[point..])
            }
        } else {
            format!("0.{}{}", "0".repeat((-exp10 - 1) as usize), digit_str)
        }
    } else {
        let mantissa = if digit_str.len() > 1 {
            format!("{}.{}", &digit_str[..1], &digit_str[1..])
        } else {
            digit_str.clone()
        };
        format!("{mantissa}e{exp10}")
    };
    if let Some(epos) = body.find('e') {
        let (mantissa, exp) = body.split_at(epos);
        let trimmed = trim_fraction(mantissa);
        body = format!("{trimmed}{exp}");
    } else {
        body = trim_fraction(&body);
    }
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

fn trim_fraction(s: &str) -> String {
    if !s.contains('.') {
        return s.to_string();
    }
    let t = s.trim_end_matches('0');
    t.trim_end_matches('.').to_string()
}

impl Default for Dd {
    fn default() -> Self {
        Dd::ZERO
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            ord => ord,
        }
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, rhs: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, rhs.hi);
        let (t1, t2) = two_sum(self.lo, rhs.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (s1, s2) = quick_two_sum(s1, s2 + t2);
        Dd { hi: s1, lo: s2 }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, rhs: Dd) -> Dd {
        self + (-rhs)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, rhs: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, rhs.hi);
        let p2 = p2 + self.hi * rhs.lo + self.lo * rhs.hi;
        let (s, e) = quick_two_sum(p1, p2);
        Dd { hi: s, lo: e }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, rhs: Dd) -> Dd {
        let q1 = self.hi / rhs.hi;
        let r = self - Dd::from_f64(q1) * rhs;
        let q2 = r.hi / rhs.hi;
        let r = r - Dd::from_f64(q2) * rhs;
        let q3 = r.hi / rhs.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd { hi: s, lo: e } + Dd::from_f64(q3)
    }
}

impl AddAssign for Dd {
    fn add_assign(&mut self, rhs: Dd) {
        *self = *self + rhs;
    }
}

impl SubAssign for Dd {
    fn sub_assign(&mut self, rhs: Dd) {
        *self = *self - rhs;
    }
}

impl MulAssign for Dd {
    fn mul_assign(&mut self, rhs: Dd) {
        *self = *self * rhs;
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(32))
    }
}

/// Scalar abstraction letting the eigensolvers run in plain doubles (for
/// cross-checks) or double-doubles (for the reported spectra).
pub trait Real:
    Copy
    + PartialOrd
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + AddAssign
    + SubAssign
{
    const NAME: &'static str;
    /// Decimal digits carried; reports embed this.
    const DECIMAL_DIGITS: usize;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_f64(x: f64) -> Self;
    fn from_rational(r: &BigRational) -> Self;
    fn to_f64(self) -> f64;
    fn abs(self) -> Self;
    fn sqrt(self) -> Self;
    fn epsilon() -> Self;
    fn max_val(self, other: Self) -> Self;
    fn is_zero_val(self) -> bool;
    /// Correctly rounded decimal rendering with `sig` significant digits.
    fn to_decimal_string(self, sig: usize) -> String;
}

impl Real for f64 {
    const NAME: &'static str = "double";
    const DECIMAL_DIGITS: usize = 16;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn from_rational(r: &BigRational) -> Self {
        crate::linalg::rational_to_f64(r)
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn abs(self) -> Self {
        f64::abs(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn epsilon() -> Self {
        f64::EPSILON
    }
    fn max_val(self, other: Self) -> Self {
        f64::max(self, other)
    }
    fn is_zero_val(self) -> bool {
        self == 0.0
    }
    fn to_decimal_string(self, sig: usize) -> String {
        match BigRational::from_float(self) {
            Some(r) => rational_to_decimal(&r, sig),
            None => self.to_string(),
        }
    }
}

impl Real for Dd {
    const NAME: &'static str = "double-double";
    const DECIMAL_DIGITS: usize = 32;

    fn zero() -> Self {
        Dd::ZERO
    }
    fn one() -> Self {
        Dd::ONE
    }
    fn from_f64(x: f64) -> Self {
        Dd::from_f64(x)
    }
    fn from_rational(r: &BigRational) -> Self {
        Dd::from_rational(r)
    }
    fn to_f64(self) -> f64 {
        Dd::to_f64(self)
    }
    fn abs(self) -> Self {
        Dd::abs(self)
    }
    fn sqrt(self) -> Self {
        Dd::sqrt(self)
    }
    fn epsilon() -> Self {
        Dd::from_f64(DD_EPSILON)
    }
    fn max_val(self, other: Self) -> Self {
        Dd::max(self, other)
    }
    fn is_zero_val(self) -> bool {
        Dd::is_zero(self)
    }
    fn to_decimal_string(self, sig: usize) -> String {
        self.to_decimal(sig)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn assert_close_to_rational(x: Dd, want: &BigRational, rel: f64) {
        let got = x.to_rational();
        let err = (&got - want).abs();
        let bound = want.abs() * BigRational::from_float(rel).unwrap();
        assert!(
            err <= bound,
            "dd value {} differs from exact {} by {}",
            got,
            want,
            err
        );
    }

    #[test]
    fn arithmetic_matches_exact_rationals() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xdd);
        for _ in 0..2000 {
            let a = rng.gen_range(-1e6f64..1e6);
            let b = rng.gen_range(0.1f64..1e6) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let (da, db) = (Dd::from_f64(a), Dd::from_f64(b));
            let (ra, rb) = (
                BigRational::from_float(a).unwrap(),
                BigRational::from_float(b).unwrap(),
            );
            assert_close_to_rational(da + db, &(&ra + &rb), 1e-30);
            assert_close_to_rational(da - db, &(&ra - &rb), 1e-30);
            assert_close_to_rational(da * db, &(&ra * &rb), 1e-30);
            assert_close_to_rational(da / db, &(&ra / &rb), 1e-29);
        }
    }

    #[test]
    fn products_keep_bits_doubles_drop() {
        // (1 + 2^-40)^2 = 1 + 2^-39 + 2^-80; the 2^-80 term survives only
        // in double-double.
        let x = Dd::from_f64(1.0) + Dd::from_f64((0.5f64).powi(40));
        let sq = x * x;
        let exact = {
            let r = BigRational::one()
                + BigRational::from_float((0.5f64).powi(40)).unwrap();
            &r * &r
        };
        assert_close_to_rational(sq, &exact, 1e-30);
        let f64_sq = x.to_f64() * x.to_f64();
        assert!((sq.to_rational() - BigRational::from_float(f64_sq).unwrap()).abs() > BigRational::zero());
    }

    #[test]
    fn sqrt_squares_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5117);
        for _ in 0..2000 {
            let a = rng.gen_range(1e-12f64..1e12);
            let da = Dd::from_f64(a);
            let s = da.sqrt();
            let back = s * s;
            let err = (back - da).abs();
            assert!(err <= da.abs() * Dd::from_f64(1e-29), "sqrt round trip at {a}");
        }
        assert!(Dd::ZERO.sqrt().is_zero());
    }

    #[test]
    fn rational_round_trip() {
        let r = BigRational::new(BigInt::from(-355), BigInt::from(113));
        let d = Dd::from_rational(&r);
        assert_close_to_rational(d, &r, 1e-30);
    }

    #[test]
    fn decimal_formatting() {
        assert_eq!(Dd::from_f64(0.0).to_decimal(6), "0");
        assert_eq!(Dd::from_f64(1.0).to_decimal(6), "1");
        assert_eq!(Dd::from_f64(-2.5).to_decimal(6), "-2.5");
        assert_eq!(Dd::from_f64(0.125).to_decimal(4), "0.125");
        let r = BigRational::new(BigInt::from(1), BigInt::from(3));
        assert_eq!(rational_to_decimal(&r, 4), "0.3333");
        let tiny = BigRational::new(BigInt::from(11), BigInt::from(100_000_000));
        assert_eq!(rational_to_decimal(&tiny, 2), "1.1e-7");
        let big = BigRational::from_integer(BigInt::from(123_456_789_000_000_000i64) * 100);
        assert_eq!(rational_to_decimal(&big, 4), "1.235e19");
        // Round-half-up at the boundary.
        let half = BigRational::new(BigInt::from(15), BigInt::from(10));
        assert_eq!(rational_to_decimal(&half, 1), "2");
    }

    #[test]
    fn ordering_uses_both_limbs() {
        let one = Dd::from_f64(1.0);
        let a = one + Dd::from_f64(1e-25);
        let b = one;
        assert!(a > b);
        assert!(a.to_f64() == b.to_f64(), "doubles cannot see the gap");
    }
}
