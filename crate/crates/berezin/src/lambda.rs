//! The scalar field `Q(lambda)`: exact rational functions of the formal
//! deformation parameter.
//!
//! A [`LambdaScalar`] is a reduced fraction of two univariate polynomials
//! over [`Rat`] with monic denominator.  Keeping `lambda` formal lets every
//! identity of the quantization be checked as an exact rational-function
//! equality; a rational value can be substituted late via [`LambdaScalar::eval`].

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{rat_str, Rat};

/// Univariate polynomial over `Rat`, coefficients ascending, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LamPoly {
    coeffs: Vec<Rat>,
}

impl LamPoly {
    pub fn zero() -> Self {
        LamPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        LamPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = LamPoly { coeffs: vec![c] };
        p.trim();
        p
    }

    /// The variable itself.
    pub fn lambda() -> Self {
        LamPoly { coeffs: vec![Rat::zero(), Rat::one()] }
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let mut p = LamPoly { coeffs };
        p.trim();
        p
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `lambda^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports -1.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, o: &LamPoly) -> LamPoly {
        let mut c = vec![Rat::zero(); self.coeffs.len().max(o.coeffs.len())];
        for (i, a) in self.coeffs.iter().enumerate() {
            c[i] += a;
        }
        for (i, b) in o.coeffs.iter().enumerate() {
            c[i] += b;
        }
        LamPoly::from_coeffs(c)
    }

    pub fn neg(&self) -> LamPoly {
        LamPoly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn sub(&self, o: &LamPoly) -> LamPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &LamPoly) -> LamPoly {
        if self.is_zero() || o.is_zero() {
            return LamPoly::zero();
        }
        let mut c = vec![Rat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        LamPoly::from_coeffs(c)
    }

    pub fn scale(&self, s: &Rat) -> LamPoly {
        LamPoly::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Euclidean division; `o` must be nonzero.
    pub fn divrem(&self, o: &LamPoly) -> (LamPoly, LamPoly) {
        assert!(!o.is_zero(), "division by zero polynomial");
        let mut r = self.clone();
        let mut q = vec![Rat::zero(); (self.degree() - o.degree()).max(0) as usize + 1];
        let dlead = o.leading();
        while !r.is_zero() && r.degree() >= o.degree() {
            let shift = (r.degree() - o.degree()) as usize;
            let f = r.leading() / dlead.clone();
            q[shift] = f.clone();
            // subtract f * lambda^shift * o
            let mut sub = vec![Rat::zero(); shift];
            sub.extend(o.coeffs.iter().map(|c| c * &f));
            r = r.sub(&LamPoly::from_coeffs(sub));
        }
        (LamPoly::from_coeffs(q), r)
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, o: &LamPoly) -> LamPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let lead = a.leading();
            a.scale(&lead.recip())
        }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn pow(&self, k: usize) -> LamPoly {
        let mut acc = LamPoly::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
}

/// Element of `Q(lambda)`: reduced `num/den`, `den` monic and nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaScalar {
    num: LamPoly,
    den: LamPoly,
}

impl LambdaScalar {
    fn reduced(num: LamPoly, den: LamPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator in LambdaScalar");
        if num.is_zero() {
            return LambdaScalar { num, den: LamPoly::one() };
        }
        let g = num.gcd(&den);
        let (mut n, r1) = num.divrem(&g);
        debug_assert!(r1.is_zero());
        let (mut d, r2) = den.divrem(&g);
        debug_assert!(r2.is_zero());
        let lead = d.leading();
        if !lead.is_one() {
            let inv = lead.recip();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        LambdaScalar { num: n, den: d }
    }

    pub fn zero() -> Self {
        LambdaScalar { num: LamPoly::zero(), den: LamPoly::one() }
    }

    pub fn one() -> Self {
        LambdaScalar { num: LamPoly::one(), den: LamPoly::one() }
    }

    pub fn from_rat(c: Rat) -> Self {
        LambdaScalar { num: LamPoly::constant(c), den: LamPoly::one() }
    }

    pub fn from_i64(c: i64) -> Self {
        Self::from_rat(crate::rat::rat_i(c))
    }

    /// The formal parameter `lambda`.
    pub fn lambda() -> Self {
        LambdaScalar { num: LamPoly::lambda(), den: LamPoly::one() }
    }

    /// `lambda + c`.
    pub fn lambda_plus(c: i64) -> Self {
        LambdaScalar {
            num: LamPoly::from_coeffs(vec![crate::rat::rat_i(c), Rat::one()]),
            den: LamPoly::one(),
        }
    }

    pub fn from_parts(num: LamPoly, den: LamPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidInput("zero denominator in Q(lambda)".into()));
        }
        Ok(Self::reduced(num, den))
    }

    pub fn num(&self) -> &LamPoly {
        &self.num
    }

    pub fn den(&self) -> &LamPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self == &Self::one()
    }

    /// True when the element is a plain rational (denominator 1, degree <= 0).
    pub fn is_constant(&self) -> bool {
        self.num.degree() <= 0 && self.den.degree() == 0
    }

    /// The rational value when [`is_constant`](Self::is_constant) holds.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::reduced(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn neg(&self) -> Self {
        LambdaScalar { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::reduced(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NotInvertible("zero lambda-scalar".into()));
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn scale(&self, s: &Rat) -> Self {
        Self::reduced(self.num.scale(s), self.den.clone())
    }

    /// Exact evaluation at a rational `lambda`.
    pub fn eval(&self, lam: &Rat) -> Result<Rat> {
        let d = self.den.eval(lam);
        if d.is_zero() {
            return Err(Error::PoleAtLambda(rat_str(lam)));
        }
        Ok(self.num.eval(lam) / d)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
}

fn fmt_poly(p: &LamPoly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let mut first = true;
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
        } else if c.is_negative() {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let unit_coeff = mag.is_one() && k > 0;
        if !unit_coeff {
            write!(f, "{}", rat_str(&mag))?;
        }
        match k {
            0 => {}
            1 => write!(f, "\u{3bb}")?,
            _ => write!(f, "\u{3bb}^{k}")?,
        }
    }
    Ok(())
}

impl fmt::Display for LamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(self, f)
    }
}

impl fmt::Display for LambdaScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == 0 {
            return fmt_poly(&self.num, f);
        }
        let ns = self.num.to_string();
        if ns.contains(' ') {
            write!(f, "({ns})/({})", self.den)
        } else {
            write!(f, "{ns}/({})", self.den)
        }
    }
}
