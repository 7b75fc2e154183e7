//! Dyadic interval arithmetic with rigorous enclosures of `ln`, `log10`,
//! `π` and square roots.
//!
//! A [`CertifiedReal`] is a closed interval `[lower, upper] · 2^-scale` with
//! integer endpoints. All operations round outward, so the true value of every
//! computed quantity stays inside its interval.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::{max, min};

use crate::error::{Error, Result};

/// Closed interval `[lower, upper] / 2^scale`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedReal {
    lower: BigInt,
    upper: BigInt,
    scale: u32,
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

fn shr_floor(a: &BigInt, bits: u32) -> BigInt {
    // arithmetic shift on BigInt rounds toward -inf
    a >> bits as usize
}

fn shr_ceil(a: &BigInt, bits: u32) -> BigInt {
    -((-a) >> bits as usize)
}

impl CertifiedReal {
    /// Builds an interval from scaled endpoints. Panics if `lower > upper`.
    pub fn from_scaled(lower: BigInt, upper: BigInt, scale: u32) -> Self {
        assert!(lower <= upper, "interval endpoints out of order");
        Self { lower, upper, scale }
    }

    pub fn exact_int(value: impl Into<BigInt>, scale: u32) -> Self {
        let v = value.into() << scale as usize;
        Self { lower: v.clone(), upper: v, scale }
    }

    /// Tightest enclosure of the rational `num / den` (`den > 0`).
    pub fn from_ratio(num: &BigInt, den: &BigInt, scale: u32) -> Self {
        assert!(den.is_positive(), "denominator must be positive");
        let n = num << scale as usize;
        Self { lower: n.div_floor(den), upper: ceil_div(&n, den), scale }
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn lower_scaled(&self) -> &BigInt {
        &self.lower
    }

    pub fn upper_scaled(&self) -> &BigInt {
        &self.upper
    }

    fn denom(&self) -> BigInt {
        BigInt::one() << self.scale as usize
    }

    pub fn lower(&self) -> BigRational {
        BigRational::new(self.lower.clone(), self.denom())
    }

    pub fn upper(&self) -> BigRational {
        BigRational::new(self.upper.clone(), self.denom())
    }

    pub fn midpoint(&self) -> BigRational {
        BigRational::new(&self.lower + &self.upper, self.denom() << 1usize)
    }

    pub fn width(&self) -> BigRational {
        BigRational::new(&self.upper - &self.lower, self.denom())
    }

    /// True if the width is at most `2^-bits`.
    pub fn width_at_most_pow2(&self, bits: u32) -> bool {
        if bits > self.scale {
            return self.lower == self.upper;
        }
        (&self.upper - &self.lower) <= (BigInt::one() << (self.scale - bits) as usize)
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lower() <= x && x <= &self.upper()
    }

    pub fn to_f64(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    /// Re-expresses the interval at another scale, rounding outward.
    pub fn rescale(&self, scale: u32) -> Self {
        if scale >= self.scale {
            let s = (scale - self.scale) as usize;
            Self { lower: &self.lower << s, upper: &self.upper << s, scale }
        } else {
            let s = self.scale - scale;
            Self { lower: shr_floor(&self.lower, s), upper: shr_ceil(&self.upper, s), scale }
        }
    }

    /// Floor of the represented value, if it is the same for every point.
    pub fn floor(&self) -> Option<BigInt> {
        let lo = shr_floor(&self.lower, self.scale);
        let hi = shr_floor(&self.upper, self.scale);
        (lo == hi).then_some(lo)
    }

    pub fn add(&self, other: &Self) -> Self {
        let s = max(self.scale, other.scale);
        let (a, b) = (self.rescale(s), other.rescale(s));
        Self { lower: a.lower + b.lower, upper: a.upper + b.upper, scale: s }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let s = max(self.scale, other.scale);
        let (a, b) = (self.rescale(s), other.rescale(s));
        Self { lower: a.lower - b.upper, upper: a.upper - b.lower, scale: s }
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        let (a, b) = (&self.lower * k, &self.upper * k);
        Self { lower: min(a.clone(), b.clone()), upper: max(a, b), scale: self.scale }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let s = max(self.scale, other.scale);
        let (a, b) = (self.rescale(s), other.rescale(s));
        let prods = [
            &a.lower * &b.lower,
            &a.lower * &b.upper,
            &a.upper * &b.lower,
            &a.upper * &b.upper,
        ];
        let lo = prods.iter().min().unwrap();
        let hi = prods.iter().max().unwrap();
        Self { lower: shr_floor(lo, s), upper: shr_ceil(hi, s), scale: s }
    }

    /// Quotient of two intervals; the divisor must be strictly positive.
    pub fn div(&self, other: &Self) -> Self {
        let s = max(self.scale, other.scale);
        let (a, b) = (self.rescale(s), other.rescale(s));
        assert!(b.lower.is_positive(), "divisor interval must be positive");
        let cands_lo = [
            (&a.lower << s as usize).div_floor(&b.lower),
            (&a.lower << s as usize).div_floor(&b.upper),
        ];
        let cands_hi = [
            ceil_div(&(&a.upper << s as usize), &b.lower),
            ceil_div(&(&a.upper << s as usize), &b.upper),
        ];
        Self {
            lower: cands_lo.into_iter().min().unwrap(),
            upper: cands_hi.into_iter().max().unwrap(),
            scale: s,
        }
    }

    /// Fractional-part enclosure `x - floor(x)`, if the floor is unambiguous.
    pub fn frac(&self) -> Option<Self> {
        let f = self.floor()?;
        let shift = f << self.scale as usize;
        Some(Self { lower: &self.lower - &shift, upper: &self.upper - &shift, scale: self.scale })
    }
}

/// `atanh(p/q)` for `0 <= p/q <= 1/2`.
pub fn atanh_ratio(p: &BigUint, q: &BigUint, scale: u32) -> CertifiedReal {
    series_ratio(p, q, scale, false)
}

/// `atan(p/q)` for `0 <= p/q <= 1/2`.
pub fn atan_ratio(p: &BigUint, q: &BigUint, scale: u32) -> CertifiedReal {
    series_ratio(p, q, scale, true)
}

fn series_ratio(p: &BigUint, q: &BigUint, scale: u32, alternating: bool) -> CertifiedReal {
    assert!(!q.is_zero() && p * 2u32 <= *q, "series argument must lie in [0, 1/2]");
    if p.is_zero() {
        return CertifiedReal::exact_int(0, scale);
    }
    // pw_i = floor(2^scale z^(2i+1)) lags the true power by less than i+1 ulps,
    // so each summed term is low by less than 2 ulps and the tail past the
    // last nonzero power is below 2 ulps (z^2 <= 1/4).
    let p2 = p * p;
    let q2 = q * q;
    let mut pw = (p << scale as usize) / q;
    let mut sum = BigInt::zero();
    let mut n: u64 = 0;
    while !pw.is_zero() {
        let term = BigInt::from_biguint(Sign::Plus, &pw / (2 * n + 1));
        if alternating && n % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        pw = pw * &p2 / &q2;
        n += 1;
    }
    let slack = BigInt::from(2 * n + 2);
    if alternating {
        CertifiedReal { lower: &sum - &slack, upper: sum + slack, scale }
    } else {
        CertifiedReal { lower: sum.clone(), upper: sum + slack, scale }
    }
}

/// Enclosure of `ln 2`.
pub fn ln2(scale: u32) -> CertifiedReal {
    atanh_ratio(&BigUint::one(), &BigUint::from(3u32), scale).mul_int(&BigInt::from(2))
}

/// Enclosure of `ln 10 = 3 ln 2 + 2 atanh(1/9)`.
pub fn ln10(scale: u32) -> CertifiedReal {
    let t = atanh_ratio(&BigUint::one(), &BigUint::from(9u32), scale).mul_int(&BigInt::from(2));
    ln2(scale).mul_int(&BigInt::from(3)).add(&t)
}

/// Enclosure of `ln n` for `n >= 1`, via `n = 2^k m` with `m ∈ [1, 2)`.
pub fn ln_uint(n: &BigUint, scale: u32) -> Result<CertifiedReal> {
    if n.is_zero() {
        return Err(Error::LogOfZero);
    }
    let k = n.bits() - 1;
    let pow = BigUint::one() << k as usize;
    let p = n - &pow;
    let q = n + &pow;
    let m_part = atanh_ratio(&p, &q, scale).mul_int(&BigInt::from(2));
    Ok(ln2(scale).mul_int(&BigInt::from(k)).add(&m_part))
}

/// Enclosure of `π` by Machin's formula.
pub fn pi(scale: u32) -> CertifiedReal {
    let one = BigUint::one();
    let a = atan_ratio(&one, &BigUint::from(5u32), scale).mul_int(&BigInt::from(16));
    let b = atan_ratio(&one, &BigUint::from(239u32), scale).mul_int(&BigInt::from(4));
    a.sub(&b)
}

/// Enclosure of `sqrt(n)`.
pub fn sqrt_uint(n: &BigUint, scale: u32) -> CertifiedReal {
    let shifted = n << (2 * scale as usize);
    let r = shifted.sqrt();
    let exact = &r * &r == shifted;
    let lo = BigInt::from(r);
    let hi = if exact { lo.clone() } else { &lo + 1 };
    CertifiedReal { lower: lo, upper: hi, scale }
}

/// If `n` is a power of ten, its exponent.
pub fn power_of_ten_exponent(n: &BigUint) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    let ten = BigUint::from(10u32);
    let mut x = n.clone();
    let mut e = 0;
    while !x.is_one() {
        let (q, r) = x.div_rem(&ten);
        if !r.is_zero() {
            return None;
        }
        x = q;
        e += 1;
    }
    Some(e)
}

/// Interval of width at most `2^-precision` containing `log10(n)`.
///
/// Powers of ten produce a degenerate (exact) interval.
pub fn log10_certified(n: &BigUint, precision: u32) -> Result<CertifiedReal> {
    if n.is_zero() {
        return Err(Error::LogOfZero);
    }
    if precision < 32 {
        return Err(Error::InvalidInput(format!("precision must be at least 32 bits, got {precision}")));
    }
    if let Some(e) = power_of_ten_exponent(n) {
        return Ok(CertifiedReal::exact_int(e, precision));
    }
    let k_bits = 64 - n.bits().leading_zeros();
    let mut guard = 24 + 2 * k_bits;
    loop {
        let scale = precision + guard;
        let value = ln_uint(n, scale)?.div(&ln10(scale));
        if value.width_at_most_pow2(precision) {
            return Ok(value);
        }
        guard += 32;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn rat(x: f64) -> BigRational {
        BigRational::from_f64(x).unwrap()
    }

    #[test]
    fn constants_bracket_f64_values() {
        let l2 = ln2(80);
        assert!(l2.contains(&rat(std::f64::consts::LN_2)) || (l2.to_f64() - std::f64::consts::LN_2).abs() < 1e-15);
        assert!((ln10(80).to_f64() - std::f64::consts::LN_10).abs() < 1e-15);
        assert!((pi(80).to_f64() - std::f64::consts::PI).abs() < 1e-15);
        assert!(ln2(200).width_at_most_pow2(190));
        assert!(pi(200).width_at_most_pow2(180));
    }

    #[test]
    fn powers_of_ten_are_exact() {
        let one = log10_certified(&BigUint::from(10u32), 64).unwrap();
        assert!(one.is_exact());
        assert_eq!(one.floor(), Some(BigInt::from(1)));
        let zero = log10_certified(&BigUint::from(1u32), 64).unwrap();
        assert!(zero.is_exact());
        assert!(zero.contains(&BigRational::zero()));
    }

    #[test]
    fn log_of_zero_fails() {
        assert_eq!(log10_certified(&BigUint::zero(), 64), Err(Error::LogOfZero));
        assert!(log10_certified(&BigUint::from(7u32), 8).is_err());
    }

    #[test]
    fn log10_2017_against_independent_evaluation() {
        // Independent route: 10^x = 2017 bracketed by comparing 2017^(2^k) with powers of ten.
        // log10(2017) = 3.304706...; check the interval against digit counts of 2017^m:
        // floor(m * log10 2017) + 1 == len(2017^m).
        let iv = log10_certified(&BigUint::from(2017u32), 64).unwrap();
        assert!(iv.width_at_most_pow2(64));
        assert!((iv.to_f64() - 2017f64.log10()).abs() < 1e-14);
        for m in [1u32, 7, 100, 999, 2017] {
            let digits = BigUint::from(2017u32).pow(m).to_string().len();
            let f = iv.mul_int(&BigInt::from(m)).floor().unwrap();
            assert_eq!(f + 1, BigInt::from(digits));
        }
    }

    #[test]
    fn refinement_is_consistent() {
        for n in [2u32, 3, 7, 99, 101, 2017, 65535] {
            let n = BigUint::from(n);
            let a = log10_certified(&n, 40).unwrap();
            let b = log10_certified(&n, 80).unwrap();
            let diff = (a.midpoint() - b.midpoint()).abs();
            assert!(diff < a.width(), "n={n}");
            assert!(a.lower() <= b.upper() && b.lower() <= a.upper());
        }
    }

    #[test]
    fn sqrt_enclosure() {
        let s = sqrt_uint(&BigUint::from(49u32), 30);
        assert!(s.is_exact());
        assert_eq!(s.floor(), Some(BigInt::from(7)));
        let s7 = sqrt_uint(&BigUint::from(7u32), 60);
        assert!((s7.to_f64() - 7f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn division_encloses() {
        let a = CertifiedReal::exact_int(1, 40);
        let b = CertifiedReal::exact_int(3, 40);
        let q = a.div(&b);
        assert!(q.contains(&BigRational::new(1.into(), 3.into())));
        let f = CertifiedReal::from_ratio(&BigInt::from(-7), &BigInt::from(2), 10);
        assert_eq!(f.floor(), Some(BigInt::from(-4)));
        assert!(f.frac().unwrap().contains(&BigRational::new(1.into(), 2.into())));
    }
}
