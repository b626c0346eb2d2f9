//! Finite-order differential operators in one variable family.
//!
//! A [`DiffOperator`] is a sum of `coeff(xi, eta) * d^alpha` over derivative
//! multi-indices `alpha`, acting either on the `xi`-family or the
//! `eta`-family.  Coefficients are polynomial symbols (no `N` denominators),
//! so composition stays inside the class by the Leibniz rule.  These carry
//! the Lie-algebra representations `pi^±_lambda(X)` and their products.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::lambda::LambdaScalar;
use crate::symbol::{SymbolExpr, Var};

/// Which variable family the operator differentiates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Xi,
    Eta,
}

impl Family {
    pub fn var(&self, i: usize) -> Var {
        match self {
            Family::Xi => Var::Xi(i),
            Family::Eta => Var::Eta(i),
        }
    }
}

/// `sum_alpha c_alpha(xi, eta) d^alpha` with polynomial coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct DiffOperator {
    n: usize,
    family: Family,
    terms: BTreeMap<Vec<u16>, SymbolExpr>,
}

impl DiffOperator {
    pub fn zero(n: usize, family: Family) -> Self {
        DiffOperator { n, family, terms: BTreeMap::new() }
    }

    pub fn identity(n: usize, family: Family) -> Self {
        let mut op = Self::zero(n, family);
        op.insert(vec![0; n - 1], SymbolExpr::one(n));
        op
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u16>, &SymbolExpr)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Add `coeff * d^alpha`; coefficients must be polynomial.
    pub fn insert(&mut self, alpha: Vec<u16>, coeff: SymbolExpr) {
        assert_eq!(alpha.len(), self.n - 1, "derivative index length");
        assert_eq!(coeff.n_exp(), 0, "DiffOperator coefficients must be polynomial");
        if coeff.is_zero() {
            return;
        }
        match self.terms.remove(&alpha) {
            None => {
                self.terms.insert(alpha, coeff);
            }
            Some(prev) => {
                let s = prev.add(&coeff);
                if !s.is_zero() {
                    self.terms.insert(alpha, s);
                }
            }
        }
    }

    pub fn add(&self, o: &DiffOperator) -> DiffOperator {
        assert_eq!(self.family, o.family, "operator family mismatch");
        let mut out = self.clone();
        for (a, c) in &o.terms {
            out.insert(a.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> DiffOperator {
        DiffOperator {
            n: self.n,
            family: self.family,
            terms: self.terms.iter().map(|(a, c)| (a.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, o: &DiffOperator) -> DiffOperator {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &LambdaScalar) -> DiffOperator {
        let mut out = DiffOperator::zero(self.n, self.family);
        for (a, c) in &self.terms {
            out.insert(a.clone(), c.mul_scalar(s));
        }
        out
    }

    /// Apply to a symbol: `sum c_alpha d^alpha F`.
    pub fn apply(&self, f: &SymbolExpr) -> SymbolExpr {
        let mut acc = SymbolExpr::zero(self.n);
        for (alpha, coeff) in &self.terms {
            let mut g = f.clone();
            for (i, &k) in alpha.iter().enumerate() {
                for _ in 0..k {
                    g = g.derive(self.family.var(i));
                }
            }
            if !g.is_zero() {
                acc = acc.add(&coeff.mul(&g));
            }
        }
        acc
    }

    /// Operator product `self` after `other` via the Leibniz expansion:
    /// `c d^a (e d^b) = sum_{g <= a} binom(a, g) c d^g(e) d^{a - g + b}`.
    pub fn compose(&self, other: &DiffOperator) -> Result<DiffOperator> {
        if self.family != other.family || self.n != other.n {
            return Err(Error::DimensionMismatch("operator family/dimension mismatch".into()));
        }
        let nv = self.n - 1;
        let mut out = DiffOperator::zero(self.n, self.family);
        for (a, c) in &self.terms {
            for (b, e) in &other.terms {
                // enumerate sub-multi-indices g <= a
                let mut stack: Vec<(usize, Vec<u16>, SymbolExpr, i64)> =
                    vec![(0, Vec::with_capacity(nv), e.clone(), 1)];
                while let Some((pos, gpref, deriv, binom)) = stack.pop() {
                    if pos == nv {
                        let alpha: Vec<u16> = (0..nv)
                            .map(|i| a[i] - gpref[i] + b[i])
                            .collect();
                        let coeff =
                            c.mul(&deriv).mul_rat(&crate::rat::rat_i(binom));
                        out.insert(alpha, coeff);
                        continue;
                    }
                    let mut d_power = deriv.clone();
                    let mut choose: i64 = 1;
                    for g in 0..=a[pos] {
                        if g > 0 {
                            // incremental binomial and derivative
                            choose = choose * (a[pos] as i64 - g as i64 + 1) / g as i64;
                            d_power = d_power.derive(self.family.var(pos));
                        }
                        if d_power.is_zero() && g > 0 {
                            break;
                        }
                        let mut gp = gpref.clone();
                        gp.push(g);
                        stack.push((pos + 1, gp, d_power.clone(), binom * choose));
                    }
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_i;

    fn ddx(n: usize, i: usize) -> DiffOperator {
        let mut op = DiffOperator::zero(n, Family::Xi);
        let mut alpha = vec![0u16; n - 1];
        alpha[i] = 1;
        op.insert(alpha, SymbolExpr::one(n));
        op
    }

    fn mul_by(n: usize, f: SymbolExpr) -> DiffOperator {
        let mut op = DiffOperator::zero(n, Family::Xi);
        op.insert(vec![0; n - 1], f);
        op
    }

    #[test]
    fn apply_first_order() {
        let n = 3;
        let op = ddx(n, 0);
        let f = SymbolExpr::xi(n, 0).pow(2).mul(&SymbolExpr::eta(n, 1));
        let expect = SymbolExpr::xi(n, 0).mul(&SymbolExpr::eta(n, 1)).mul_rat(&rat_i(2));
        assert_eq!(op.apply(&f), expect);
    }

    #[test]
    fn composition_weyl_relation() {
        // [d/dxi1, xi1] = 1
        let n = 2;
        let d = ddx(n, 0);
        let x = mul_by(n, SymbolExpr::xi(n, 0));
        let dx = d.compose(&x).unwrap();
        let xd = x.compose(&d).unwrap();
        let comm = dx.sub(&xd);
        assert_eq!(comm, DiffOperator::identity(n, Family::Xi));
    }

    #[test]
    fn composition_matches_sequential_application() {
        let n = 3;
        // (xi2 d1) (xi1 d2): compose and compare with applying twice
        let mut op1 = DiffOperator::zero(n, Family::Xi);
        op1.insert(vec![1, 0], SymbolExpr::xi(n, 1));
        let mut op2 = DiffOperator::zero(n, Family::Xi);
        op2.insert(vec![0, 1], SymbolExpr::xi(n, 0));
        let comp = op1.compose(&op2).unwrap();
        let f = SymbolExpr::xi(n, 0)
            .pow(2)
            .mul(&SymbolExpr::xi(n, 1))
            .add(&SymbolExpr::xi(n, 1).pow(3))
            .mul(&SymbolExpr::eta(n, 0));
        assert_eq!(comp.apply(&f), op1.apply(&op2.apply(&f)));
    }

    #[test]
    fn second_order_leibniz() {
        // d^2/dxi1^2 compose (xi1^2 *) picks up the binomial 2 d(xi1^2) d + ...
        let n = 2;
        let mut d2 = DiffOperator::zero(n, Family::Xi);
        d2.insert(vec![2], SymbolExpr::one(n));
        let x2 = mul_by(n, SymbolExpr::xi(n, 0).pow(2));
        let comp = d2.compose(&x2).unwrap();
        for f in [
            SymbolExpr::xi(n, 0).pow(3),
            SymbolExpr::one(n),
            SymbolExpr::xi(n, 0).mul(&SymbolExpr::eta(n, 0)),
        ] {
            assert_eq!(comp.apply(&f), d2.apply(&x2.apply(&f)));
        }
    }
}
