//! Arbitrary-precision rationals and small helpers.
//!
//! Everything exact in this crate is built over [`Rat`], the reduced
//! fraction of two big integers.  No floating point enters any symbolic
//! path.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Reduced arbitrary-precision rational, denominator always positive.
pub type Rat = num_rational::BigRational;

/// `p/q` as a `Rat`. Panics on `q = 0` (programmer error in tests/constants).
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Integer as a `Rat`.
pub fn rat_i(p: i64) -> Rat {
    Rat::from_integer(BigInt::from(p))
}

/// Parse `"p"` or `"p/q"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let mk_err = || Error::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        None => {
            let p: BigInt = s.parse().map_err(|_| mk_err())?;
            Ok(Rat::from_integer(p))
        }
        Some((ps, qs)) => {
            let p: BigInt = ps.trim().parse().map_err(|_| mk_err())?;
            let q: BigInt = qs.trim().parse().map_err(|_| mk_err())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Rat::new(p, q))
        }
    }
}

/// Canonical string form: `"p"` for integers, `"p/q"` otherwise.
pub fn rat_str(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Nearest `f64` (fine for the float-only reporting paths).
pub fn rat_f64(r: &Rat) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

/// `r^k` for a signed integer exponent; errors on `0^k` with `k < 0`.
pub fn rat_pow(r: &Rat, k: i64) -> Result<Rat> {
    if k >= 0 {
        Ok(num_traits::pow::pow(r.clone(), k as usize))
    } else if r.is_zero() {
        Err(Error::InvalidInput("0 raised to a negative power".into()))
    } else {
        Ok(num_traits::pow::pow(r.clone(), (-k) as usize).recip())
    }
}

/// `|r|^k * sgn(r)^eps` for integer `k`, the exact branch of the signed power.
pub fn signed_pow_exact(t: &Rat, k: i64, eps: u8) -> Result<Rat> {
    if t.is_zero() {
        return if k > 0 { Ok(Rat::zero()) } else { Err(Error::UndefinedSignedPower) };
    }
    let a = rat_pow(&t.abs(), k)?;
    if eps % 2 == 1 && t.is_negative() {
        Ok(-a)
    } else {
        Ok(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        for s in ["3", "-7", "2/3", "-11/4", "0"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(rat_str(&r), s);
        }
        assert_eq!(parse_rat("4/6").unwrap(), rat(2, 3));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn signed_pow_branches() {
        assert_eq!(signed_pow_exact(&rat(-2, 1), 2, 0).unwrap(), rat_i(4));
        assert_eq!(signed_pow_exact(&rat(-2, 1), 2, 1).unwrap(), rat_i(-4));
        assert_eq!(signed_pow_exact(&rat(-1, 2), -1, 0).unwrap(), rat_i(2));
        assert!(signed_pow_exact(&Rat::zero(), -1, 0).is_err());
    }
}
