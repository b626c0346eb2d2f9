//! Double-double arithmetic: an unevaluated sum of two `f64`s giving a
//! ~106-bit mantissa.
//!
//! Implements the classic error-free transformations (Knuth two-sum, FMA
//! two-product) and the add/mul/div renormalization schemes of the QD
//! library.  Basic operations keep relative errors at the 1e-32 level, which
//! is what the Gamma/`c(lambda)` oracle paths are calibrated against.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    // requires |a| >= |b|
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    /// Renormalize an arbitrary pair into canonical form.
    #[inline]
    pub fn renorm(hi: f64, lo: f64) -> Dd {
        let (s, e) = two_sum(hi, lo);
        Dd { hi: s, lo: e }
    }

    /// Construct from an already-split pair (checked only in debug builds).
    pub fn new(hi: f64, lo: f64) -> Dd {
        Dd::renorm(hi, lo)
    }

    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn from_i64(x: i64) -> Dd {
        // i64 may exceed 2^53; split exactly through two f64 words
        let hi = x as f64;
        let lo = (x - hi as i64) as f64;
        Dd::renorm(hi, lo)
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    pub fn is_zero(self) -> bool {
        self.hi == 0.0 && self.lo == 0.0
    }

    pub fn recip(self) -> Dd {
        Dd::ONE / self
    }

    /// Square root by one dd Newton correction of the f64 seed.
    pub fn sqrt(self) -> Dd {
        if self.is_zero() {
            return Dd::ZERO;
        }
        let y = Dd::from_f64(self.hi.sqrt());
        // y + (x - y^2) / (2y)
        y + (self - y * y) / (Dd::from_f64(2.0) * y)
    }

    /// Exact scaling by a power of two.
    pub fn ldexp(self, k: i32) -> Dd {
        let s = 2f64.powi(k);
        Dd { hi: self.hi * s, lo: self.lo * s }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, o: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, o.hi);
        let (t1, t2) = two_sum(self.lo, o.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, o: Dd) -> Dd {
        self + (-o)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, o: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, o.hi);
        let p2 = p2 + self.hi * o.lo + self.lo * o.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    #[inline]
    fn div(self, o: Dd) -> Dd {
        // long division with two correction steps (QD scheme)
        let q1 = self.hi / o.hi;
        let r = self - o * Dd::from_f64(q1);
        let q2 = r.hi / o.hi;
        let r = r - o * Dd::from_f64(q2);
        let q3 = r.hi / o.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd::renorm(s, e + q3)
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, o: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&o.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&o.lo),
            ord => ord,
        }
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // ~31 significant digits via a second word printed as a correction
        write!(f, "{:.17e}{:+.17e}", self.hi, self.lo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_keeps_low_word() {
        let sixth = Dd::ONE / Dd::from_f64(6.0);
        // 1/6 = 0.1666..., residual after the f64 head is ~9.25e-18
        assert!((sixth.lo - 9.25185853854297e-18).abs() < 1e-30, "lo = {}", sixth.lo);
        let back = sixth * Dd::from_f64(6.0) - Dd::ONE;
        assert!(back.abs().hi < 1e-31, "residual {}", back.hi);
    }

    #[test]
    fn mul_matches_reference() {
        // pi^2 = 9.86960440108935861883449099987615113531...
        let pi = Dd::new(std::f64::consts::PI, 1.2246467991473532e-16);
        let pi2 = pi * pi;
        let want = Dd::new(9.869604401089358, 6.265295508739711e-16);
        assert!((pi2 - want).abs().hi < 1e-30);
    }

    #[test]
    fn add_cancellation() {
        let a = Dd::new(1.0, 1e-20);
        let b = Dd::from_f64(-1.0);
        let d = a + b;
        assert_eq!(d.hi, 1e-20);
    }

    #[test]
    fn sqrt_newton() {
        let two = Dd::from_f64(2.0);
        let r = two.sqrt();
        let back = r * r - two;
        assert!(back.abs().hi < 1e-31);
    }

    #[test]
    fn i64_conversion_exact() {
        let v = Dd::from_i64(121_645_100_408_832_000); // 19!
        assert_eq!(v.to_f64(), 121_645_100_408_832_000.0);
        let big = Dd::from_i64(9_007_199_254_740_993); // 2^53 + 1, not an f64
        assert_eq!(big.hi, 9_007_199_254_740_992.0);
        assert_eq!(big.lo, 1.0);
    }
}
