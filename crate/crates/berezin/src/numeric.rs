//! High-precision float paths: the Gamma function, the normalization
//! constant `c(lambda)` and signed powers.
//!
//! Everything here runs in double-double arithmetic ([`Dd`], a ~106-bit
//! mantissa), which comfortably exceeds the 64-bit-mantissa floor required
//! of the non-exact operations.  `exp`, `ln` and trig at `pi x` are built
//! with explicit range reduction; `ln Gamma` uses the Stirling series after
//! shifting the argument above 40, where thirteen Bernoulli terms leave a
//! truncation error below 1e-34.  Negative arguments go through the
//! reflection formula.  None of this ever feeds a symbolic identity -- the
//! float paths only produce reported values and oracle comparisons.

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::rat::Rat;

pub type DD = Dd;

/// Double-double pi.
pub fn dd_pi() -> Dd {
    Dd::new(std::f64::consts::PI, 1.2246467991473532e-16)
}

fn dd_ln2() -> Dd {
    Dd::new(std::f64::consts::LN_2, 2.3190468138462996e-17)
}

/// `ln(2 pi) / 2`, the Stirling constant.
fn dd_half_ln_two_pi() -> Dd {
    Dd::new(0.9189385332046728, -3.8782941580672414e-17)
}

/// Exact-as-possible conversion of a big rational.
pub fn dd_from_rat(r: &Rat) -> Dd {
    let hi = crate::rat::rat_f64(r);
    if !hi.is_finite() {
        return Dd::from_f64(hi);
    }
    // residual correction recovers the low word
    let hi_rat = Rat::from_float(hi).unwrap_or_else(|| r.clone());
    let lo = crate::rat::rat_f64(&(r - hi_rat));
    Dd::renorm(hi, lo)
}

pub fn dd_to_f64(x: Dd) -> f64 {
    x.to_f64()
}

/// Range-reduced `exp`: `x = k ln 2 + r`, `|r| <= ln2 / 2`, Taylor for `e^r`.
pub fn dd_exp(x: Dd) -> Dd {
    if x.hi.abs() > 700.0 {
        return Dd::from_f64(x.hi.exp()); // over/underflow territory
    }
    let k = (x.hi / std::f64::consts::LN_2).round();
    let r = x - dd_ln2() * Dd::from_f64(k);
    // e^r = sum r^j / j!, |r| <= 0.347: 25 terms push the tail below 1e-36
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    for j in 1..=25 {
        term = term * r / Dd::from_f64(j as f64);
        sum = sum + term;
    }
    sum.ldexp(k as i32)
}

/// Natural log for `x > 0` by Newton iteration on [`dd_exp`]:
/// `y <- y + x e^{-y} - 1` from the f64 seed.
pub fn dd_ln(x: Dd) -> Dd {
    let seed = x.hi.ln();
    let mut y = Dd::from_f64(seed);
    for _ in 0..2 {
        let e = dd_exp(-y);
        y = y + x * e - Dd::ONE;
    }
    y
}

/// `x^p` for `x > 0`.
pub fn dd_pow(x: Dd, p: Dd) -> Dd {
    dd_exp(p * dd_ln(x))
}

/// Taylor `sin(pi v)` for `0 <= v <= 1/4`.
fn sin_pi_taylor(v: Dd) -> Dd {
    let a = dd_pi() * v;
    let a2 = a * a;
    let mut term = a;
    let mut sum = a;
    let mut j = 1.0f64;
    for _ in 0..16 {
        term = -(term * a2) / Dd::from_f64((j + 1.0) * (j + 2.0));
        sum = sum + term;
        j += 2.0;
    }
    sum
}

/// Taylor `cos(pi v)` for `0 <= v <= 1/4`.
fn cos_pi_taylor(v: Dd) -> Dd {
    let a = dd_pi() * v;
    let a2 = a * a;
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    let mut j = 0.0f64;
    for _ in 0..16 {
        term = -(term * a2) / Dd::from_f64((j + 1.0) * (j + 2.0));
        sum = sum + term;
        j += 2.0;
    }
    sum
}

/// `(sin(pi x), cos(pi x))` with exact argument reduction mod 2.
pub fn dd_sin_cos_pi(x: Dd) -> (Dd, Dd) {
    // u in [0, 2): the reductions below only involve exact small integers
    let k = (x.hi / 2.0).floor();
    let mut u = x - Dd::from_f64(2.0 * k);
    if u.hi < 0.0 {
        u = u + Dd::from_f64(2.0);
    }
    let mut sin_sign = 1.0;
    let mut cos_sign = 1.0;
    if u.hi >= 1.0 {
        u = u - Dd::ONE;
        sin_sign = -sin_sign;
        cos_sign = -cos_sign;
    }
    if u.hi >= 0.5 {
        u = Dd::ONE - u;
        cos_sign = -cos_sign;
    }
    let (s, c) = if u.hi > 0.25 {
        let v = Dd::from_f64(0.5) - u;
        (cos_pi_taylor(v), sin_pi_taylor(v))
    } else {
        (sin_pi_taylor(u), cos_pi_taylor(u))
    };
    (
        Dd { hi: s.hi * sin_sign, lo: s.lo * sin_sign },
        Dd { hi: c.hi * cos_sign, lo: c.lo * cos_sign },
    )
}

pub fn dd_sin_pi(x: Dd) -> Dd {
    dd_sin_cos_pi(x).0
}

pub fn dd_cos_pi(x: Dd) -> Dd {
    dd_sin_cos_pi(x).1
}

/// `B_{2k} / (2k (2k-1))` for the Stirling tail, k = 1..=13.
fn stirling_coeffs() -> Vec<Dd> {
    // Bernoulli numbers B_2..B_26 as exact integer fractions
    let bern: [(f64, f64); 13] = [
        (1.0, 6.0),
        (-1.0, 30.0),
        (1.0, 42.0),
        (-1.0, 30.0),
        (5.0, 66.0),
        (-691.0, 2730.0),
        (7.0, 6.0),
        (-3617.0, 510.0),
        (43867.0, 798.0),
        (-174611.0, 330.0),
        (854513.0, 138.0),
        (-236364091.0, 2730.0),
        (8553103.0, 6.0),
    ];
    bern.iter()
        .enumerate()
        .map(|(i, &(p, q))| {
            let k2 = 2.0 * (i as f64 + 1.0);
            Dd::from_f64(p) / (Dd::from_f64(q) * Dd::from_f64(k2) * Dd::from_f64(k2 - 1.0))
        })
        .collect()
}

/// `ln Gamma(x)` for `x > 0`.
pub fn dd_ln_gamma(x: Dd) -> Dd {
    const SHIFT_TO: f64 = 40.0;
    let mut z = x;
    let mut corr = Dd::ZERO;
    while z.hi < SHIFT_TO {
        corr = corr + dd_ln(z);
        z = z + Dd::ONE;
    }
    // Stirling: (z - 1/2) ln z - z + ln(2 pi)/2 + sum B_2k / (2k(2k-1) z^{2k-1})
    let ln_z = dd_ln(z);
    let mut s = (z - Dd::from_f64(0.5)) * ln_z - z + dd_half_ln_two_pi();
    let z2 = z * z;
    let mut zpow = z; // z^{2k-1}
    for c in stirling_coeffs() {
        s = s + c / zpow;
        zpow = zpow * z2;
    }
    s - corr
}

/// Distance from `x` to the nearest non-positive integer is below `tol`.
fn near_nonpositive_integer(x: Dd, tol: f64) -> bool {
    if x.hi > 0.5 {
        return false;
    }
    let r = x.hi.round();
    (x - Dd::from_f64(r)).abs().hi < tol
}

const POLE_TOL: f64 = 1e-9;

/// `Gamma(x)` on the real line; errors on (numerically detected) poles.
pub fn dd_gamma(x: Dd) -> Result<Dd> {
    if near_nonpositive_integer(x, POLE_TOL) {
        return Err(Error::PoleAtLambda(format!("Gamma pole near {}", x.hi)));
    }
    if x.hi > 0.0 {
        Ok(dd_exp(dd_ln_gamma(x)))
    } else {
        // reflection: Gamma(x) = pi / (sin(pi x) Gamma(1 - x))
        let one_minus = Dd::ONE - x;
        let denom = dd_sin_pi(x) * dd_exp(dd_ln_gamma(one_minus));
        Ok(dd_pi() / denom)
    }
}

/// The rank-one normalization constant
///
/// ```text
/// c(lambda) = { 2^{n+1} pi^{n-2} Gamma(-lambda-n+1) Gamma(lambda+1)
///               [cos((lambda+n/2) pi) - cos(n pi / 2)] }^{-1}.
/// ```
///
/// The closed form has removable pole/zero collisions (a Gamma pole against a
/// vanishing bracket).  Folding the bracket into the Gamma factors via
/// `cos A - cos B = -2 sin((A+B)/2) sin((A-B)/2)`, the reflection formula and
/// Legendre duplication gives the equivalent expression
///
/// ```text
/// c(lambda) = Gamma(1 - lambda/2) Gamma((lambda+n+2)/2)
///             / [ pi^{n-1} lambda (-lambda-n)
///                 Gamma((lambda+1)/2) Gamma((1-lambda-n)/2) ],
/// ```
///
/// manifestly symmetric under `lambda -> -lambda-n`, in which every
/// cancellation is already resolved.  A pole of a numerator Gamma (or a zero
/// of the `lambda(-lambda-n)` prefactor) is a genuine pole of `c`; a pole of
/// a denominator Gamma is a genuine zero.
pub fn c_lambda(n: usize, lam: Dd) -> Result<Dd> {
    let nf = n as f64;
    let half = Dd::from_f64(0.5);
    let num_args = [
        Dd::ONE - lam * half,
        (lam + Dd::from_f64(nf + 2.0)) * half,
    ];
    let den_args = [
        (lam + Dd::ONE) * half,
        (Dd::from_f64(1.0 - nf) - lam) * half,
    ];
    let num_sing = num_args.iter().any(|&a| near_nonpositive_integer(a, POLE_TOL));
    let den_sing = den_args.iter().any(|&a| near_nonpositive_integer(a, POLE_TOL));
    let prefactor = lam * (-lam - Dd::from_f64(nf));
    let pref_zero = prefactor.abs().hi < POLE_TOL;
    if (num_sing || pref_zero) && den_sing {
        return Err(Error::PoleAtLambda(format!(
            "c(lambda) indeterminate near lambda = {}",
            lam.hi
        )));
    }
    if num_sing || pref_zero {
        return Err(Error::PoleAtLambda(format!("c(lambda) pole near lambda = {}", lam.hi)));
    }
    if den_sing {
        return Ok(Dd::ZERO);
    }
    let num = dd_gamma(num_args[0])? * dd_gamma(num_args[1])?;
    let den = dd_pow(dd_pi(), Dd::from_f64(nf - 1.0))
        * prefactor
        * dd_gamma(den_args[0])?
        * dd_gamma(den_args[1])?;
    Ok(num / den)
}

/// Direct evaluation of the printed closed form for `c(lambda)`; regular
/// points only.  Kept as an independent cross-check of [`c_lambda`].
pub fn c_lambda_direct(n: usize, lam: Dd) -> Result<Dd> {
    let nf = n as f64;
    let g1 = dd_gamma(-lam - Dd::from_f64(nf - 1.0))?;
    let g2 = dd_gamma(lam + Dd::ONE)?;
    let cos_half_n = match n.rem_euclid(4) {
        0 => Dd::ONE,
        2 => -Dd::ONE,
        _ => Dd::ZERO,
    };
    let bracket = dd_cos_pi(lam + Dd::from_f64(nf / 2.0)) - cos_half_n;
    if bracket.abs().hi < 1e-12 {
        return Err(Error::PoleAtLambda(format!(
            "c(lambda) bracket vanishes near lambda = {}",
            lam.hi
        )));
    }
    let two_pow = dd_pow(Dd::from_f64(2.0), Dd::from_f64(nf + 1.0));
    let pi_pow = dd_pow(dd_pi(), Dd::from_f64(nf - 2.0));
    Ok((two_pow * pi_pow * g1 * g2 * bracket).recip())
}

/// `|t|^p (sgn t)^eps` in double-double; undefined at `t = 0` for `p <= 0`.
pub fn dd_signed_power(t: Dd, p: Dd, eps: u8) -> Result<Dd> {
    if t.is_zero() {
        return if p.hi > 0.0 { Ok(Dd::ZERO) } else { Err(Error::UndefinedSignedPower) };
    }
    let mag = dd_pow(t.abs(), p);
    if eps % 2 == 1 && t.hi < 0.0 {
        Ok(-mag)
    } else {
        Ok(mag)
    }
}

/// Relative deviation `|a-b| / max(|a|, |b|, 1e-300)` as f64.
pub fn rel_dev(a: Dd, b: Dd) -> f64 {
    let d = (a - b).abs().hi;
    let scale = a.abs().hi.max(b.abs().hi).max(1e-300);
    d / scale
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn exp_and_ln_reference_values() {
        // e = 2.718281828459045235360287471352662497757...
        let e = dd_exp(Dd::ONE);
        assert!(rel_dev(e, Dd::new(std::f64::consts::E, 1.4456468917292502e-16)) < 1e-30);
        // ln 2 = 0.693147180559945309417232121458...
        let l = dd_ln(Dd::from_f64(2.0));
        assert!(rel_dev(l, dd_ln2()) < 1e-30);
        // round trips at assorted magnitudes
        for x in [0.1, 0.97, 3.5, 17.0, 123.456] {
            let x = Dd::from_f64(x);
            assert!(rel_dev(dd_exp(dd_ln(x)), x) < 1e-29, "x = {}", x.hi);
        }
    }

    #[test]
    fn sin_cos_pi_reference_values() {
        // sin(pi/6) = 1/2 exactly
        let s = dd_sin_pi(Dd::ONE / Dd::from_f64(6.0));
        assert!(rel_dev(s, Dd::from_f64(0.5)) < 1e-30);
        // cos(pi/3) = 1/2
        let c = dd_cos_pi(Dd::ONE / Dd::from_f64(3.0));
        assert!(rel_dev(c, Dd::from_f64(0.5)) < 1e-30);
        // sign pattern through the quadrants, reduction across mod 2
        assert!(rel_dev(dd_sin_pi(Dd::from_f64(4.5)), Dd::ONE) < 1e-30);
        assert!(rel_dev(dd_cos_pi(Dd::from_f64(7.0)), -Dd::ONE) < 1e-30);
        assert!(dd_sin_pi(Dd::from_f64(-0.25)).hi < 0.0);
    }

    #[test]
    fn gamma_integers_and_half() {
        // lnGamma(5) = 3.178053830347945619646941601297...
        let lg = dd_ln_gamma(Dd::from_f64(5.0));
        assert!(rel_dev(lg, Dd::new(3.1780538303479458, -1.3216387039714197e-16)) < 1e-28);
        assert!(rel_dev(dd_gamma(Dd::from_f64(5.0)).unwrap(), Dd::from_f64(24.0)) < 1e-28);
        let g = dd_gamma(Dd::from_f64(20.0)).unwrap();
        assert!(rel_dev(g, Dd::from_i64(121_645_100_408_832_000)) < 1e-28);
        // Gamma(1/2) = sqrt(pi)
        let g = dd_gamma(Dd::from_f64(0.5)).unwrap();
        assert!(rel_dev(g, dd_pi().sqrt()) < 1e-28);
        // reflection: Gamma(-1/2) = -2 sqrt(pi)
        let g = dd_gamma(Dd::from_f64(-0.5)).unwrap();
        assert!(rel_dev(g, -(Dd::from_f64(2.0) * dd_pi().sqrt())) < 1e-27);
        // Gamma(-3/2) = 2.363271801207354703064223311121...
        let g = dd_gamma(Dd::from_f64(-1.5)).unwrap();
        assert!(rel_dev(g, Dd::new(2.363271801207355, -1.0222115333101065e-16)) < 1e-27);
    }

    #[test]
    fn gamma_functional_equation() {
        for x in [0.3, 1.7, -2.4, 11.25, -7.8] {
            let x = Dd::from_f64(x);
            let lhs = dd_gamma(x + Dd::ONE).unwrap();
            let rhs = x * dd_gamma(x).unwrap();
            assert!(rel_dev(lhs, rhs) < 1e-27, "x = {}", x.hi);
        }
    }

    #[test]
    fn gamma_pole_detection() {
        assert!(dd_gamma(Dd::ZERO).is_err());
        assert!(dd_gamma(Dd::from_f64(-3.0)).is_err());
    }

    #[test]
    fn c_lambda_regular_points_match_direct_form() {
        for (n, lam) in [(3usize, -4.3f64), (3, -3.7), (4, -5.21), (5, 2.13)] {
            let a = c_lambda(n, Dd::from_f64(lam)).unwrap();
            let b = c_lambda_direct(n, Dd::from_f64(lam)).unwrap();
            assert!(rel_dev(a, b) < 1e-25, "n = {n}, lambda = {lam}: {} vs {}", a.hi, b.hi);
        }
    }

    #[test]
    fn c_lambda_resolves_removable_point() {
        // n = 3, lambda = -4: the printed form is a Gamma pole against a
        // cos zero; the reduced form gives the finite limit -3/(8 pi^2).
        let c = c_lambda(3, Dd::from_f64(-4.0)).unwrap();
        let want = Dd::from_f64(-3.0) / (Dd::from_f64(8.0) * dd_pi() * dd_pi());
        assert!(rel_dev(c, want) < 1e-26, "c = {}, want = {}", c.hi, want.hi);
        // and it agrees with the direct form approached as a limit
        let near = c_lambda_direct(3, Dd::from_f64(-4.0 + 1e-7)).unwrap();
        assert!(rel_dev(c, near) < 1e-5);
    }

    #[test]
    fn c_lambda_symmetry() {
        // c is invariant under lambda -> -lambda - n
        for (n, lam) in [(3usize, -1.3f64), (4, 0.42), (5, -2.6)] {
            let lam = Dd::from_f64(lam);
            let reflected = -lam - Dd::from_f64(n as f64); // exact in dd
            let a = c_lambda(n, lam).unwrap();
            let b = c_lambda(n, reflected).unwrap();
            assert!(rel_dev(a, b) < 1e-26, "n = {n}, lambda = {}", lam.hi);
        }
    }

    #[test]
    fn c_lambda_pole_cases() {
        // lambda = 0 is a genuine pole of c
        assert!(c_lambda(3, Dd::ZERO).is_err());
        // a denominator Gamma pole is a genuine zero
        let z = c_lambda(3, Dd::from_f64(-1.0)).unwrap();
        assert_eq!(z.hi, 0.0);
    }

    #[test]
    fn rational_conversion_is_tight() {
        let r = rat(1, 3);
        let x = dd_from_rat(&r);
        let back = x * Dd::from_f64(3.0);
        assert!(rel_dev(back, Dd::ONE) < 1e-30);
    }

    #[test]
    fn signed_power_branches() {
        let v = dd_signed_power(Dd::from_f64(-2.0), Dd::from_f64(3.0), 1).unwrap();
        assert!(rel_dev(v, Dd::from_f64(-8.0)) < 1e-28);
        let v = dd_signed_power(Dd::from_f64(-2.0), Dd::from_f64(3.0), 0).unwrap();
        assert!(rel_dev(v, Dd::from_f64(8.0)) < 1e-28);
        assert!(dd_signed_power(Dd::ZERO, Dd::from_f64(-1.0), 0).is_err());
    }
}
