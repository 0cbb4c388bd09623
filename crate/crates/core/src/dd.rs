//! Double-double arithmetic for oscillatory phases.
//!
//! A phase such as `t * ln(n)` loses absolute accuracy in proportion to its
//! magnitude. Carrying the logarithm and the product as an unevaluated sum
//! `hi + lo` of two doubles keeps roughly 106 bits, so the phase can be
//! reduced modulo 2π without aliasing even when it is many millions of radians.

use std::f64::consts;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

pub const LN_2: DoubleDouble = DoubleDouble::new(consts::LN_2, 2.3190468138462996e-17);
pub const TWO_PI: DoubleDouble = DoubleDouble::new(consts::TAU, 2.4492935982947064e-16);
pub const LN_2PI: DoubleDouble = DoubleDouble::new(1.8378770664093456, -7.756588316134483e-17);
pub const PI: DoubleDouble = DoubleDouble::new(consts::PI, 1.2246467991473532e-16);

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    pub const ZERO: Self = Self::new(0.0, 0.0);

    pub const fn new(hi: f64, lo: f64) -> Self {
        Self { hi, lo }
    }

    pub const fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Self { hi, lo }
    }

    /// Division by a double, one correction step.
    pub fn div_f64(self, b: f64) -> Self {
        let q1 = self.hi / b;
        let r = self - Self::from_f64(b).mul_f64(q1);
        let q2 = r.hi / b;
        let r = r - Self::from_f64(b).mul_f64(q2);
        let q3 = r.hi / b;
        let (hi, lo) = quick_two_sum(q1, q2);
        Self { hi, lo } + Self::from_f64(q3)
    }

    /// Natural logarithm of a positive finite double, to double-double accuracy.
    ///
    /// `x = 2^k m` with `m` in `[1/sqrt 2, sqrt 2)`, then
    /// `ln m = 2 atanh((m - 1)/(m + 1))` summed in double-double.
    pub fn ln(x: f64) -> Self {
        assert!(
            x > 0.0 && x.is_finite(),
            "ln of non-positive or non-finite value {x}"
        );
        let mut k = x.log2().floor() as i32;
        let mut m = x / 2f64.powi(k);
        if m > std::f64::consts::SQRT_2 {
            m /= 2.0;
            k += 1;
        }
        // m is exact: scaling by a power of two.
        let num = Self::from_f64(m - 1.0); // exact by Sterbenz for m in [0.5, 2]
        let den = Self::from_f64(m) + Self::from_f64(1.0);
        let u = num / den;
        let u2 = u * u;
        let mut term = u;
        let mut sum = u;
        let mut j = 1.0;
        loop {
            term = term * u2;
            j += 2.0;
            let contrib = term.div_f64(j);
            sum = sum + contrib;
            if contrib.hi.abs() <= 1e-34 * sum.hi.abs().max(f64::MIN_POSITIVE) {
                break;
            }
        }
        sum.mul_f64(2.0) + LN_2.mul_f64(k as f64)
    }

    /// Remainder modulo 2π in `[-π, π)`, returned as a double.
    pub fn rem_two_pi(self) -> f64 {
        let q = (self.hi / TWO_PI.hi).round();
        let r = self - TWO_PI.mul_f64(q);
        let mut v = r.to_f64();
        // q can be off by one when hi sits on a boundary.
        if v >= std::f64::consts::PI {
            v = (r - TWO_PI).to_f64();
        } else if v < -std::f64::consts::PI {
            v = (r + TWO_PI).to_f64();
        }
        v
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    #[inline]
    fn add(self, b: Self) -> Self {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Self { hi, lo }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    #[inline]
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    #[inline]
    fn mul(self, b: Self) -> Self {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;

    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Self { hi, lo } + Self::from_f64(q3)
    }
}
