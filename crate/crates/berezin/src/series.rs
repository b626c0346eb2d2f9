//! Laurent expansion at `lambda = infinity`.
//!
//! Any element of `Q(lambda)` expands as `sum_{j >= j0} c_j lambda^{-j}`
//! (with `j0 < 0` when the numerator degree exceeds the denominator degree).
//! [`expand_inv_lambda`] performs this expansion coefficient-wise on a
//! [`SymbolExpr`], producing exact lambda-free coefficients through a
//! requested order.  This is the tool behind all asymptotic statements: the
//! correspondence-principle residuals are Laurent coefficients that must
//! vanish identically.

use num_traits::Zero;

use crate::lambda::{LamPoly, LambdaScalar};
use crate::rat::Rat;
use crate::symbol::SymbolExpr;

/// Truncated Laurent series `sum_{j=start..=trunc} c_j lambda^{-j} + O(lambda^{-trunc-1})`
/// with lambda-free `SymbolExpr` coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct InvLambdaSeries {
    n: usize,
    start: i64,
    /// coefficient of `lambda^{-(start + k)}` at index `k`
    coeffs: Vec<SymbolExpr>,
    trunc: i64,
}

impl InvLambdaSeries {
    pub fn n(&self) -> usize {
        self.n
    }

    /// First order with a (possibly zero) stored coefficient.
    pub fn start(&self) -> i64 {
        self.start
    }

    /// Largest order whose coefficient is exact.
    pub fn truncation_order(&self) -> i64 {
        self.trunc
    }

    /// Coefficient of `lambda^{-j}`; exact for `j <= truncation_order`.
    pub fn coefficient(&self, j: i64) -> SymbolExpr {
        assert!(j <= self.trunc, "order {j} beyond truncation {}", self.trunc);
        if j < self.start {
            return SymbolExpr::zero(self.n);
        }
        self.coeffs
            .get((j - self.start) as usize)
            .cloned()
            .unwrap_or_else(|| SymbolExpr::zero(self.n))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Product of truncated series; the result is exact through
    /// `min(a.trunc + b.start, b.trunc + a.start)`.
    pub fn mul(&self, o: &InvLambdaSeries) -> InvLambdaSeries {
        assert_eq!(self.n, o.n, "series dimension mismatch");
        let start = self.start + o.start;
        let trunc = (self.trunc + o.start).min(o.trunc + self.start);
        let len = (trunc - start + 1).max(0) as usize;
        let mut coeffs = vec![SymbolExpr::zero(self.n); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                let k = i + j;
                if k < len {
                    coeffs[k] = coeffs[k].add(&a.mul(b));
                }
            }
        }
        InvLambdaSeries { n: self.n, start, coeffs, trunc }
    }

    pub fn add(&self, o: &InvLambdaSeries) -> InvLambdaSeries {
        assert_eq!(self.n, o.n, "series dimension mismatch");
        let start = self.start.min(o.start);
        let trunc = self.trunc.min(o.trunc);
        let len = (trunc - start + 1).max(0) as usize;
        let mut coeffs = vec![SymbolExpr::zero(self.n); len];
        for (k, c) in coeffs.iter_mut().enumerate() {
            let j = start + k as i64;
            let mut v = SymbolExpr::zero(self.n);
            if j >= self.start && j <= self.trunc {
                v = v.add(&self.coefficient(j));
            }
            if j >= o.start && j <= o.trunc {
                v = v.add(&o.coefficient(j));
            }
            *c = v;
        }
        InvLambdaSeries { n: self.n, start, coeffs, trunc }
    }

    pub fn sub(&self, o: &InvLambdaSeries) -> InvLambdaSeries {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> InvLambdaSeries {
        InvLambdaSeries {
            n: self.n,
            start: self.start,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
            trunc: self.trunc,
        }
    }

    /// Re-sum the stored coefficients into a rational function of lambda.
    pub fn resum(&self) -> SymbolExpr {
        let mut acc = SymbolExpr::zero(self.n);
        let lam = LambdaScalar::lambda();
        for (k, c) in self.coeffs.iter().enumerate() {
            let j = self.start + k as i64;
            let factor = if j >= 0 {
                lam.pow(j as usize).inv().expect("lambda is invertible")
            } else {
                lam.pow((-j) as usize)
            };
            acc = acc.add(&c.mul_scalar(&factor));
        }
        acc
    }
}

/// Expansion of a single `Q(lambda)` element at infinity: coefficients of
/// `lambda^{-j}` for `j0 <= j <= trunc`, where `j0 = deg(den) - deg(num)`.
fn expand_scalar(c: &LambdaScalar, trunc: i64) -> (i64, Vec<Rat>) {
    if c.is_zero() {
        return (0, vec![]);
    }
    let dp = c.num().degree();
    let dq = c.den().degree();
    let j0 = dq - dp;
    if trunc < j0 {
        return (j0, vec![]);
    }
    // substitute u = 1/lambda: num/den = u^{j0} * p*(u)/q*(u) with reversed coefficients
    let rev = |p: &LamPoly| -> Vec<Rat> {
        let mut v: Vec<Rat> = p.coeffs().to_vec();
        v.reverse();
        v
    };
    let ps = rev(c.num());
    let qs = rev(c.den());
    let q0 = qs[0].clone(); // leading coefficient of den, nonzero (monic: 1)
    let k_max = (trunc - j0) as usize;
    let mut a: Vec<Rat> = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let mut s = ps.get(k).cloned().unwrap_or_else(Rat::zero);
        for (i, ai) in a.iter().enumerate() {
            if let Some(q) = qs.get(k - i) {
                s -= ai * q;
            }
        }
        a.push(s / q0.clone());
    }
    (j0, a)
}

/// Exact Laurent coefficients of `f` at `lambda = infinity` through order `k`.
///
/// Re-summing the result and subtracting `f` leaves `O(lambda^{-k-1})`.
pub fn expand_inv_lambda(f: &SymbolExpr, k: i64) -> InvLambdaSeries {
    let n = f.n();
    let mut start_opt: Option<i64> = None;
    let mut scalar_parts = Vec::new();
    for (mono, coeff) in f.terms() {
        let (j0, coeffs) = expand_scalar(coeff, k);
        if !coeffs.is_empty() {
            start_opt = Some(start_opt.map_or(j0, |s| s.min(j0)));
        }
        scalar_parts.push((mono.clone(), j0, coeffs));
    }
    let start = start_opt.unwrap_or(0).min(k);
    let len = (k - start + 1).max(0) as usize;
    let mut out = vec![SymbolExpr::zero(n); len];
    let ninv = SymbolExpr::n_inv_pow(n, f.n_exp());
    for (mono, j0, coeffs) in scalar_parts {
        for (idx, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let j = j0 + idx as i64;
            let slot = (j - start) as usize;
            let term = SymbolExpr::monomial(n, mono.clone(), LambdaScalar::from_rat(c.clone()))
                .mul(&ninv);
            out[slot] = out[slot].add(&term);
        }
    }
    InvLambdaSeries { n, start, coeffs: out, trunc: k }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_i};

    /// geometric-series oracle: coefficients of 1/(-lambda-n) = -1/lambda * 1/(1+n/lambda)
    fn geometric_inv_minus_lambda_minus(nshift: i64, k: usize) -> Vec<Rat> {
        // 1/(-lambda-c) = -lambda^{-1} sum_{j>=0} (-c)^j lambda^{-j}
        let mut v = Vec::new();
        let mut cur = rat_i(-1);
        for _ in 0..=k {
            v.push(cur.clone());
            cur *= rat_i(-nshift);
        }
        v
    }

    #[test]
    fn expand_simple_pole() {
        // 1/(-lambda-n) to K=2 -> -1/lambda + n/lambda^2 + O(lambda^-3)
        let n = 3i64;
        let den = LamPoly::from_coeffs(vec![rat_i(-n), rat_i(-1)]);
        let s = LambdaScalar::from_parts(LamPoly::one(), den).unwrap();
        let f = SymbolExpr::constant(4, s);
        let ser = expand_inv_lambda(&f, 2);
        assert_eq!(ser.start(), 1);
        let oracle = geometric_inv_minus_lambda_minus(n, 1);
        assert_eq!(ser.coefficient(0), SymbolExpr::zero(4));
        assert_eq!(ser.coefficient(1), SymbolExpr::from_rat(4, oracle[0].clone()));
        assert_eq!(ser.coefficient(2), SymbolExpr::from_rat(4, oracle[1].clone()));
    }

    #[test]
    fn expand_constant() {
        let f = SymbolExpr::one(2);
        let ser = expand_inv_lambda(&f, 3);
        assert_eq!(ser.coefficient(0), SymbolExpr::one(2));
        for j in 1..=3 {
            assert!(ser.coefficient(j).is_zero());
        }
    }

    #[test]
    fn expand_by_long_division() {
        // lambda/(lambda+n) to K=1 -> 1 - n/lambda + O(lambda^-2)
        let n = 5i64;
        let s = LambdaScalar::lambda()
            .div(&LambdaScalar::lambda_plus(n))
            .unwrap();
        let f = SymbolExpr::constant(2, s);
        let ser = expand_inv_lambda(&f, 1);
        assert_eq!(ser.coefficient(0), SymbolExpr::one(2));
        assert_eq!(ser.coefficient(1), SymbolExpr::from_i64(2, -n));
    }

    #[test]
    fn negative_start_for_improper_fraction() {
        // lambda^2/(lambda+1) starts at order -1
        let s = LambdaScalar::lambda()
            .pow(2)
            .div(&LambdaScalar::lambda_plus(1))
            .unwrap();
        let f = SymbolExpr::constant(2, s);
        let ser = expand_inv_lambda(&f, 2);
        assert_eq!(ser.start(), -1);
        // lambda^2/(lambda+1) = lambda - 1 + 1/lambda - 1/lambda^2 + ...
        assert_eq!(ser.coefficient(-1), SymbolExpr::one(2));
        assert_eq!(ser.coefficient(0), SymbolExpr::from_i64(2, -1));
        assert_eq!(ser.coefficient(1), SymbolExpr::one(2));
        assert_eq!(ser.coefficient(2), SymbolExpr::from_i64(2, -1));
    }

    #[test]
    fn residual_after_resummation_is_high_order() {
        // resum(expand(f, K)) - f = O(lambda^{-K-1}): expanding the residual
        // to the same order gives zero coefficients.
        // denominator (lambda+1)(lambda+4)
        let den = LambdaScalar::lambda_plus(1).mul(&LambdaScalar::lambda_plus(4));
        let s = LambdaScalar::lambda_plus(2).div(&den).unwrap();
        let f = SymbolExpr::constant(3, s).mul(&SymbolExpr::xi(3, 1));
        let k = 3;
        let ser = expand_inv_lambda(&f, k);
        let residual = ser.resum().sub(&f);
        let rser = expand_inv_lambda(&residual, k);
        assert!(rser.is_zero(), "residual {residual} has low-order terms");
    }

    #[test]
    fn product_rule_for_expansions() {
        let a = SymbolExpr::constant(
            2,
            LambdaScalar::lambda().div(&LambdaScalar::lambda_plus(2)).unwrap(),
        )
        .mul(&SymbolExpr::xi(2, 0));
        let b = SymbolExpr::constant(
            2,
            LambdaScalar::one().div(&LambdaScalar::lambda_plus(-1)).unwrap(),
        )
        .mul(&SymbolExpr::eta(2, 0))
        .add(&SymbolExpr::one(2));
        let k = 4;
        let sa = expand_inv_lambda(&a, k);
        let sb = expand_inv_lambda(&b, k);
        let sprod = expand_inv_lambda(&a.mul(&b), k);
        let prod = sa.mul(&sb);
        for j in prod.start()..=prod.truncation_order() {
            assert_eq!(prod.coefficient(j), sprod.coefficient(j), "order {j}");
        }
    }

    #[test]
    fn expansion_keeps_n_denominators() {
        let f = SymbolExpr::n_inv_pow(3, 2)
            .mul_scalar(&LambdaScalar::lambda().div(&LambdaScalar::lambda_plus(1)).unwrap());
        let ser = expand_inv_lambda(&f, 1);
        assert_eq!(ser.coefficient(0), SymbolExpr::n_inv_pow(3, 2));
        assert_eq!(ser.coefficient(1), SymbolExpr::n_inv_pow(3, 2).mul_rat(&rat(-1, 1)));
    }
}
