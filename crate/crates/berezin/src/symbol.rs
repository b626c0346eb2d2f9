//! The canonical symbol ring `Q(lambda)[xi_1..xi_{n-1}, eta_1..eta_{n-1}][N^{-1}]`.
//!
//! Every symbolic object of the crate (covariant symbols, kernels, residuals)
//! lives here.  An element is stored as
//!
//! ```text
//!     ( sum of monomials  xi^a eta^b  with Q(lambda) coefficients ) / N^m
//! ```
//!
//! with `N = 1 - sum_i xi_i eta_i`, in the canonical form where the numerator
//! is not divisible by `N` whenever `m > 0`.  Denominators other than powers
//! of `N` never arise in the quantization formulas, so the localization at `N`
//! is the whole ring we need.
//!
//! Monomials are ordered by total degree, ties broken lexicographically with
//! `xi_1 < ... < xi_{n-1} < eta_1 < ... < eta_{n-1}` (the most significant
//! variable is `eta_{n-1}`).  The order is fixed so that serialized output is
//! deterministic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lambda::{LamPoly, LambdaScalar};
use crate::rat::{parse_rat, rat_pow, rat_str, Rat};

/// A variable of the chart: `xi_i` or `eta_i` (0-based index `< n-1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    Xi(usize),
    Eta(usize),
}

/// Exponent vector of a monomial `xi^a eta^b`; both vectors have length `n-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub xi: Vec<u16>,
    pub eta: Vec<u16>,
}

impl Monomial {
    pub fn unit(nvars: usize) -> Self {
        Monomial { xi: vec![0; nvars], eta: vec![0; nvars] }
    }

    pub fn degree(&self) -> u32 {
        self.xi.iter().chain(self.eta.iter()).map(|&e| e as u32).sum()
    }

    fn mul(&self, o: &Monomial) -> Monomial {
        Monomial {
            xi: self.xi.iter().zip(&o.xi).map(|(a, b)| a + b).collect(),
            eta: self.eta.iter().zip(&o.eta).map(|(a, b)| a + b).collect(),
        }
    }

    /// Componentwise quotient, if divisible.
    fn try_div(&self, o: &Monomial) -> Option<Monomial> {
        let mut m = self.clone();
        for (a, b) in m.xi.iter_mut().zip(&o.xi) {
            *a = a.checked_sub(*b)?;
        }
        for (a, b) in m.eta.iter_mut().zip(&o.eta) {
            *a = a.checked_sub(*b)?;
        }
        Some(m)
    }

    fn swap_families(&self) -> Monomial {
        Monomial { xi: self.eta.clone(), eta: self.xi.clone() }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            // most significant variable first: eta_{n-1}, ..., eta_1, xi_{n-1}, ..., xi_1
            for (a, b) in self.eta.iter().rev().zip(other.eta.iter().rev()) {
                match a.cmp(b) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
            }
            for (a, b) in self.xi.iter().rev().zip(other.xi.iter().rev()) {
                match a.cmp(b) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

type PolyMap = BTreeMap<Monomial, LambdaScalar>;

fn pmap_insert(map: &mut PolyMap, mono: Monomial, c: LambdaScalar) {
    if c.is_zero() {
        return;
    }
    match map.remove(&mono) {
        None => {
            map.insert(mono, c);
        }
        Some(prev) => {
            let s = prev.add(&c);
            if !s.is_zero() {
                map.insert(mono, s);
            }
        }
    }
}

fn pmap_add(a: &PolyMap, b: &PolyMap) -> PolyMap {
    let mut out = a.clone();
    for (m, c) in b {
        pmap_insert(&mut out, m.clone(), c.clone());
    }
    out
}

fn pmap_mul(a: &PolyMap, b: &PolyMap) -> PolyMap {
    let mut out = PolyMap::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            pmap_insert(&mut out, ma.mul(mb), ca.mul(cb));
        }
    }
    out
}

fn pmap_scale(a: &PolyMap, s: &LambdaScalar) -> PolyMap {
    if s.is_zero() {
        return PolyMap::new();
    }
    a.iter().map(|(m, c)| (m.clone(), c.mul(s))).collect()
}

/// The polynomial `N = 1 - sum_i xi_i eta_i` as a raw coefficient map.
fn n_map(nvars: usize) -> PolyMap {
    let mut map = PolyMap::new();
    map.insert(Monomial::unit(nvars), LambdaScalar::one());
    for i in 0..nvars {
        let mut m = Monomial::unit(nvars);
        m.xi[i] = 1;
        m.eta[i] = 1;
        map.insert(m, LambdaScalar::from_i64(-1));
    }
    map
}

/// Exact division of a polynomial by `N`, if it divides.
///
/// Standard monomial-order reduction: the leading monomial of `N` is
/// `xi_{n-1} eta_{n-1}` (coefficient -1); if at any step the leading term of
/// the remainder is not reducible, the input was not divisible.
fn pmap_div_exact_by_n(p: &PolyMap, nvars: usize) -> Option<PolyMap> {
    if p.is_empty() {
        return Some(PolyMap::new());
    }
    let n_poly = n_map(nvars);
    let mut lead_n = Monomial::unit(nvars);
    lead_n.xi[nvars - 1] = 1;
    lead_n.eta[nvars - 1] = 1;
    let minus_one = LambdaScalar::from_i64(-1);

    let mut rem = p.clone();
    let mut quot = PolyMap::new();
    while let Some((m, c)) = rem.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
        let factor_mono = m.try_div(&lead_n)?;
        let factor_coeff = c.mul(&minus_one); // divide by the leading coefficient -1
        pmap_insert(&mut quot, factor_mono.clone(), factor_coeff.clone());
        let mut single = PolyMap::new();
        single.insert(factor_mono, factor_coeff);
        let sub = pmap_mul(&single, &n_poly);
        for (sm, sc) in sub {
            pmap_insert(&mut rem, sm, sc.neg());
        }
    }
    Some(quot)
}

/// Canonical element of `Q(lambda)[xi, eta][N^{-1}]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolExpr {
    n: usize,
    terms: PolyMap,
    n_exp: u32,
}

impl SymbolExpr {
    fn canonical(n: usize, mut terms: PolyMap, mut n_exp: u32) -> Self {
        terms.retain(|_, c| !c.is_zero());
        if terms.is_empty() {
            return SymbolExpr { n, terms, n_exp: 0 };
        }
        while n_exp > 0 {
            match pmap_div_exact_by_n(&terms, n - 1) {
                Some(q) => {
                    terms = q;
                    n_exp -= 1;
                }
                None => break,
            }
        }
        SymbolExpr { n, terms, n_exp }
    }

    /// Space parameter `n` (there are `n-1` xi- and `n-1` eta-variables).
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn n_exp(&self) -> u32 {
        self.n_exp
    }

    pub fn nvars(&self) -> usize {
        self.n - 1
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &LambdaScalar)> {
        self.terms.iter()
    }

    pub fn zero(n: usize) -> Self {
        assert!(n >= 2, "space parameter must be at least 2");
        SymbolExpr { n, terms: PolyMap::new(), n_exp: 0 }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, LambdaScalar::one())
    }

    pub fn constant(n: usize, c: LambdaScalar) -> Self {
        assert!(n >= 2, "space parameter must be at least 2");
        let mut terms = PolyMap::new();
        pmap_insert(&mut terms, Monomial::unit(n - 1), c);
        SymbolExpr { n, terms, n_exp: 0 }
    }

    pub fn from_rat(n: usize, r: Rat) -> Self {
        Self::constant(n, LambdaScalar::from_rat(r))
    }

    pub fn from_i64(n: usize, k: i64) -> Self {
        Self::from_rat(n, crate::rat::rat_i(k))
    }

    /// The formal parameter as an element of the ring.
    pub fn lambda(n: usize) -> Self {
        Self::constant(n, LambdaScalar::lambda())
    }

    pub fn var(n: usize, v: Var) -> Self {
        let mut m = Monomial::unit(n - 1);
        match v {
            Var::Xi(i) => m.xi[i] = 1,
            Var::Eta(i) => m.eta[i] = 1,
        }
        let mut terms = PolyMap::new();
        terms.insert(m, LambdaScalar::one());
        SymbolExpr { n, terms, n_exp: 0 }
    }

    pub fn xi(n: usize, i: usize) -> Self {
        Self::var(n, Var::Xi(i))
    }

    pub fn eta(n: usize, i: usize) -> Self {
        Self::var(n, Var::Eta(i))
    }

    /// `N = 1 - sum_i xi_i eta_i`.
    pub fn n_poly(n: usize) -> Self {
        SymbolExpr { n, terms: n_map(n - 1), n_exp: 0 }
    }

    /// `N^{-m}`.
    pub fn n_inv_pow(n: usize, m: u32) -> Self {
        let mut terms = PolyMap::new();
        terms.insert(Monomial::unit(n - 1), LambdaScalar::one());
        SymbolExpr { n, terms, n_exp: m }
    }

    pub fn monomial(n: usize, mono: Monomial, coeff: LambdaScalar) -> Self {
        assert_eq!(mono.xi.len(), n - 1);
        assert_eq!(mono.eta.len(), n - 1);
        let mut terms = PolyMap::new();
        pmap_insert(&mut terms, mono, coeff);
        SymbolExpr { n, terms, n_exp: 0 }
    }

    fn check_dim(&self, o: &SymbolExpr) -> Result<()> {
        if self.n != o.n {
            return Err(Error::DimensionMismatch(format!("n = {} vs n = {}", self.n, o.n)));
        }
        Ok(())
    }

    pub fn add(&self, o: &SymbolExpr) -> SymbolExpr {
        self.check_dim(o).expect("symbol dimension mismatch");
        let m = self.n_exp.max(o.n_exp);
        let nv = self.nvars();
        let lift = |e: &SymbolExpr| -> PolyMap {
            let mut p = e.terms.clone();
            for _ in e.n_exp..m {
                p = pmap_mul(&p, &n_map(nv));
            }
            p
        };
        SymbolExpr::canonical(self.n, pmap_add(&lift(self), &lift(o)), m)
    }

    pub fn neg(&self) -> SymbolExpr {
        SymbolExpr {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
            n_exp: self.n_exp,
        }
    }

    pub fn sub(&self, o: &SymbolExpr) -> SymbolExpr {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &SymbolExpr) -> SymbolExpr {
        self.check_dim(o).expect("symbol dimension mismatch");
        SymbolExpr::canonical(self.n, pmap_mul(&self.terms, &o.terms), self.n_exp + o.n_exp)
    }

    pub fn mul_scalar(&self, s: &LambdaScalar) -> SymbolExpr {
        SymbolExpr::canonical(self.n, pmap_scale(&self.terms, s), self.n_exp)
    }

    pub fn mul_rat(&self, r: &Rat) -> SymbolExpr {
        self.mul_scalar(&LambdaScalar::from_rat(r.clone()))
    }

    pub fn div_scalar(&self, s: &LambdaScalar) -> Result<SymbolExpr> {
        Ok(self.mul_scalar(&s.inv()?))
    }

    pub fn pow(&self, k: u32) -> SymbolExpr {
        let mut acc = SymbolExpr::one(self.n);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse, defined exactly for the units `c * N^j`.
    pub fn try_inv(&self) -> Result<SymbolExpr> {
        if self.is_zero() {
            return Err(Error::NotInvertible("zero".into()));
        }
        let mut p = self.terms.clone();
        let mut j: i64 = -(self.n_exp as i64);
        while let Some(q) = pmap_div_exact_by_n(&p, self.nvars()) {
            p = q;
            j += 1;
            if p.len() == 1 {
                // may already be the pure scalar
                if let Some((m, _)) = p.iter().next() {
                    if m.degree() == 0 {
                        break;
                    }
                }
            }
        }
        if p.len() != 1 {
            return Err(Error::NotInvertible(self.to_string()));
        }
        let (mono, coeff) = p.iter().next().expect("single term");
        if mono.degree() != 0 {
            return Err(Error::NotInvertible(self.to_string()));
        }
        // self = coeff * N^j, so 1/self = coeff^{-1} * N^{-j}
        let cinv = coeff.inv()?;
        let out = if j >= 0 {
            SymbolExpr::n_inv_pow(self.n, j as u32).mul_scalar(&cinv)
        } else {
            SymbolExpr::n_poly(self.n).pow((-j) as u32).mul_scalar(&cinv)
        };
        Ok(out)
    }

    /// Exact partial derivative; `d(N^{-m}) = m * (eta_i or xi_i) * N^{-m-1}`.
    pub fn derive(&self, v: Var) -> SymbolExpr {
        let nv = self.nvars();
        let idx_ok = match v {
            Var::Xi(i) | Var::Eta(i) => i < nv,
        };
        assert!(idx_ok, "variable index out of range");

        // plain polynomial partial of the numerator
        let mut dnum = PolyMap::new();
        for (m, c) in &self.terms {
            let e = match v {
                Var::Xi(i) => m.xi[i],
                Var::Eta(i) => m.eta[i],
            };
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            match v {
                Var::Xi(i) => m2.xi[i] -= 1,
                Var::Eta(i) => m2.eta[i] -= 1,
            }
            pmap_insert(&mut dnum, m2, c.scale(&crate::rat::rat_i(e as i64)));
        }
        if self.n_exp == 0 {
            return SymbolExpr::canonical(self.n, dnum, 0);
        }
        // (dP * N + m * w * P) / N^{m+1}, where w is the conjugate variable
        let mut w = Monomial::unit(nv);
        match v {
            Var::Xi(i) => w.eta[i] = 1,
            Var::Eta(i) => w.xi[i] = 1,
        }
        let mut wp = PolyMap::new();
        wp.insert(w, LambdaScalar::from_i64(self.n_exp as i64));
        let num = pmap_add(&pmap_mul(&dnum, &n_map(nv)), &pmap_mul(&wp, &self.terms));
        SymbolExpr::canonical(self.n, num, self.n_exp + 1)
    }

    /// Exact rational evaluation at `(xi, eta, lambda)`.
    pub fn evaluate(&self, xi: &[Rat], eta: &[Rat], lam: &Rat) -> Result<Rat> {
        let nv = self.nvars();
        if xi.len() != nv || eta.len() != nv {
            return Err(Error::DimensionMismatch(format!(
                "expected {} xi/eta values, got {}/{}",
                nv,
                xi.len(),
                eta.len()
            )));
        }
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut v = c.eval(lam)?;
            for (i, &e) in m.xi.iter().enumerate() {
                if e > 0 {
                    v *= rat_pow(&xi[i], e as i64)?;
                }
            }
            for (i, &e) in m.eta.iter().enumerate() {
                if e > 0 {
                    v *= rat_pow(&eta[i], e as i64)?;
                }
            }
            acc += v;
        }
        if self.n_exp > 0 {
            let nval = n_value(xi, eta);
            if nval.is_zero() {
                return Err(Error::EvalOnSingularSet);
            }
            acc /= rat_pow(&nval, self.n_exp as i64)?;
        }
        Ok(acc)
    }

    /// Substitute a rational value for `lambda`, keeping the result symbolic.
    pub fn specialize_lambda(&self, lam: &Rat) -> Result<SymbolExpr> {
        let mut terms = PolyMap::new();
        for (m, c) in &self.terms {
            pmap_insert(&mut terms, m.clone(), LambdaScalar::from_rat(c.eval(lam)?));
        }
        Ok(SymbolExpr::canonical(self.n, terms, self.n_exp))
    }

    /// The involution `xi_i <-> eta_i` (the breve transform of the chart).
    pub fn breve(&self) -> SymbolExpr {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.swap_families(), c.clone()))
            .collect();
        // N is symmetric under the swap, so the denominator power is unchanged
        SymbolExpr { n: self.n, terms, n_exp: self.n_exp }
    }

    /// Largest total degree `|a| + |b|` over numerator monomials.
    pub fn total_bidegree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn deg_xi(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.xi.iter().map(|&e| e as u32).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn deg_eta(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.eta.iter().map(|&e| e as u32).sum())
            .max()
            .unwrap_or(0)
    }

    /// True when no coefficient depends on `lambda`.
    pub fn is_lambda_free(&self) -> bool {
        self.terms.values().all(|c| c.is_constant())
    }

    /// The constant term as a lambda-scalar, when the element is a constant.
    pub fn as_scalar(&self) -> Option<LambdaScalar> {
        if self.n_exp != 0 {
            return None;
        }
        match self.terms.len() {
            0 => Some(LambdaScalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                if m.degree() == 0 {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }
}

/// `N(xi, eta) = 1 - sum_i xi_i eta_i` at a rational point.
pub fn n_value(xi: &[Rat], eta: &[Rat]) -> Rat {
    let mut s = Rat::one();
    for (x, y) in xi.iter().zip(eta) {
        s -= x * y;
    }
    s
}

// ---------------------------------------------------------------------------
// JSON encoding
//
// {"n": int, "nexp": m,
//  "num": [{"xi": [a...], "eta": [b...], "coeff": {"p": ["r/s",...], "q": ["r/s",...]}}]}
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct CoeffJson {
    p: Vec<String>,
    q: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    xi: Vec<u16>,
    eta: Vec<u16>,
    coeff: CoeffJson,
}

#[derive(Serialize, Deserialize)]
struct SymbolExprJson {
    n: usize,
    nexp: u32,
    num: Vec<TermJson>,
}

impl SymbolExpr {
    pub fn to_json_value(&self) -> serde_json::Value {
        let num = self
            .terms
            .iter()
            .map(|(m, c)| TermJson {
                xi: m.xi.clone(),
                eta: m.eta.clone(),
                coeff: CoeffJson {
                    p: c.num().coeffs().iter().map(rat_str).collect(),
                    q: c.den().coeffs().iter().map(rat_str).collect(),
                },
            })
            .collect();
        serde_json::to_value(SymbolExprJson { n: self.n, nexp: self.n_exp, num })
            .expect("SymbolExpr serialization cannot fail")
    }

    pub fn to_json_string(&self) -> String {
        self.to_json_value().to_string()
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<SymbolExpr> {
        let raw: SymbolExprJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        if raw.n < 2 {
            return Err(Error::Parse("space parameter n must be >= 2".into()));
        }
        let nv = raw.n - 1;
        let mut terms = PolyMap::new();
        for t in raw.num {
            if t.xi.len() != nv || t.eta.len() != nv {
                return Err(Error::Parse("exponent vector length != n-1".into()));
            }
            let p = LamPoly::from_coeffs(
                t.coeff.p.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>>>()?,
            );
            let q = LamPoly::from_coeffs(
                t.coeff.q.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>>>()?,
            );
            let c = LambdaScalar::from_parts(p, q)?;
            pmap_insert(&mut terms, Monomial { xi: t.xi, eta: t.eta }, c);
        }
        Ok(SymbolExpr::canonical(raw.n, terms, raw.nexp))
    }

    pub fn from_json_str(s: &str) -> Result<SymbolExpr> {
        let v: serde_json::Value =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json_value(&v)
    }
}

// ---------------------------------------------------------------------------
// Text rendering
// ---------------------------------------------------------------------------

fn mono_string(m: &Monomial, n: usize) -> String {
    let mut parts = Vec::new();
    let var = |sym: &str, i: usize, e: u16| -> String {
        let name = if n == 2 { sym.to_string() } else { format!("{sym}{}", i + 1) };
        if e == 1 {
            name
        } else {
            format!("{name}^{e}")
        }
    };
    for (i, &e) in m.xi.iter().enumerate() {
        if e > 0 {
            parts.push(var("\u{3be}", i, e));
        }
    }
    for (i, &e) in m.eta.iter().enumerate() {
        if e > 0 {
            parts.push(var("\u{3b7}", i, e));
        }
    }
    parts.join("\u{b7}")
}

impl fmt::Display for SymbolExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut body = String::new();
        let mut first = true;
        for (m, c) in &self.terms {
            let ms = mono_string(m, self.n);
            // pull an overall sign out of plain rational coefficients
            let (neg, coeff_str) = match c.as_rat() {
                Some(r) => {
                    let mag = r.abs();
                    let cs = if mag.is_one() && !ms.is_empty() {
                        String::new()
                    } else {
                        rat_str(&mag)
                    };
                    (r.is_negative(), cs)
                }
                None => {
                    let s = c.to_string();
                    let needs_parens = s.contains(' ') || s.contains('/');
                    (false, if needs_parens { format!("({s})") } else { s })
                }
            };
            if first {
                if neg {
                    body.push('-');
                }
                first = false;
            } else {
                body.push_str(if neg { " - " } else { " + " });
            }
            match (coeff_str.is_empty(), ms.is_empty()) {
                (true, true) => body.push('1'),
                (true, false) => body.push_str(&ms),
                (false, true) => body.push_str(&coeff_str),
                (false, false) => {
                    body.push_str(&coeff_str);
                    body.push('\u{b7}');
                    body.push_str(&ms);
                }
            }
        }
        if self.n_exp == 0 {
            write!(f, "{body}")
        } else {
            let wrapped = if self.terms.len() > 1 { format!("({body})") } else { body };
            if self.n_exp == 1 {
                write!(f, "{wrapped}/N")
            } else {
                write!(f, "{wrapped}/N^{}", self.n_exp)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_i};

    fn lam() -> LambdaScalar {
        LambdaScalar::lambda()
    }

    #[test]
    fn definitional_identity_n_eq_2() {
        // (xi1 eta1) + N + (-1) = 0 for n = 2
        let n = 2;
        let xe = SymbolExpr::xi(n, 0).mul(&SymbolExpr::eta(n, 0));
        let s = xe.add(&SymbolExpr::n_poly(n)).add(&SymbolExpr::from_i64(n, -1));
        assert!(s.is_zero());
    }

    #[test]
    fn localization_cancellation() {
        let n = 3;
        let prod = SymbolExpr::n_inv_pow(n, 1).mul(&SymbolExpr::n_poly(n));
        assert_eq!(prod, SymbolExpr::one(n));
    }

    #[test]
    fn canonical_multiplication_with_lambda() {
        // (lambda xi1) * (xi1 / N) = lambda xi1^2 N^{-1}, checked at random points
        let n = 2;
        let a = SymbolExpr::xi(n, 0).mul_scalar(&lam());
        let b = SymbolExpr::xi(n, 0).mul(&SymbolExpr::n_inv_pow(n, 1));
        let prod = a.mul(&b);
        assert_eq!(prod.n_exp(), 1);
        let pts = [
            (rat(1, 2), rat(1, 3), rat_i(2)),
            (rat(2, 5), rat(-1, 2), rat_i(5)),
            (rat(-3, 4), rat(1, 7), rat(7, 2)),
            (rat(1, 8), rat(5, 8), rat(-2, 3)),
            (rat(3, 2), rat(1, 4), rat_i(1)),
        ];
        for (x, y, l) in pts {
            let (xs, ys) = (std::slice::from_ref(&x), std::slice::from_ref(&y));
            let lhs = prod.evaluate(xs, ys, &l).unwrap();
            let ea = a.evaluate(xs, ys, &l).unwrap();
            let eb = b.evaluate(xs, ys, &l).unwrap();
            assert_eq!(lhs, ea * eb);
        }
    }

    #[test]
    fn derive_examples() {
        let n = 3;
        // d/dxi1 (xi1 eta2) = eta2
        let f = SymbolExpr::xi(n, 0).mul(&SymbolExpr::eta(n, 1));
        assert_eq!(f.derive(Var::Xi(0)), SymbolExpr::eta(n, 1));
        // d/dxi1 (N^{-1}) = eta1 N^{-2}
        let g = SymbolExpr::n_inv_pow(n, 1).derive(Var::Xi(0));
        let expect = SymbolExpr::eta(n, 0).mul(&SymbolExpr::n_inv_pow(n, 2));
        assert_eq!(g, expect);
        // d/deta1 (constant) = 0
        assert!(SymbolExpr::from_i64(n, 7).derive(Var::Eta(0)).is_zero());
    }

    #[test]
    fn derive_matches_finite_difference_direction() {
        // central difference oracle at rational points for d/dxi1 N^{-1}
        let n = 2;
        let f = SymbolExpr::n_inv_pow(n, 1);
        let df = f.derive(Var::Xi(0));
        let h = rat(1, 1_000_000);
        let x = rat(1, 3);
        let y = rat(1, 5);
        let l = rat_i(1);
        let plus = f.evaluate(&[x.clone() + h.clone()], std::slice::from_ref(&y), &l).unwrap();
        let minus = f.evaluate(&[x.clone() - h.clone()], std::slice::from_ref(&y), &l).unwrap();
        let approx = (plus - minus) / (rat_i(2) * h);
        let exact = df.evaluate(&[x], &[y], &l).unwrap();
        let rel = ((approx - exact.clone()) / exact).abs();
        assert!(rel < rat(1, 100_000_000), "relative error {rel}");
    }

    #[test]
    fn evaluate_examples() {
        let n = 2;
        let npoly = SymbolExpr::n_poly(n);
        assert_eq!(
            npoly.evaluate(&[rat(1, 2)], &[rat(1, 3)], &rat_i(9)).unwrap(),
            rat(5, 6)
        );
        assert_eq!(
            SymbolExpr::one(n).evaluate(&[rat(1, 2)], &[rat(1, 3)], &rat_i(0)).unwrap(),
            rat_i(1)
        );
        // lambda/(lambda+3) at lambda = 1
        let s = SymbolExpr::constant(
            n,
            LambdaScalar::lambda().div(&LambdaScalar::lambda_plus(3)).unwrap(),
        );
        assert_eq!(s.evaluate(&[rat_i(0)], &[rat_i(0)], &rat_i(1)).unwrap(), rat(1, 4));
        // pole detection
        assert!(matches!(
            s.evaluate(&[rat_i(0)], &[rat_i(0)], &rat_i(-3)),
            Err(Error::PoleAtLambda(_))
        ));
        // singular set
        assert!(matches!(
            SymbolExpr::n_inv_pow(n, 1).evaluate(&[rat_i(1)], &[rat_i(1)], &rat_i(0)),
            Err(Error::EvalOnSingularSet)
        ));
        // polynomials evaluate fine on N = 0
        assert_eq!(
            npoly.evaluate(&[rat_i(1)], &[rat_i(1)], &rat_i(0)).unwrap(),
            rat_i(0)
        );
    }

    #[test]
    fn canonicalization_is_idempotent() {
        let n = 3;
        // assemble something that needs reduction: (N^2 * xi1) / N^3
        let raw = SymbolExpr::n_poly(n)
            .pow(2)
            .mul(&SymbolExpr::xi(n, 0))
            .mul(&SymbolExpr::n_inv_pow(n, 3));
        let expect = SymbolExpr::xi(n, 0).mul(&SymbolExpr::n_inv_pow(n, 1));
        assert_eq!(raw, expect);
        assert_eq!(raw.n_exp(), 1);
    }

    #[test]
    fn try_inv_units() {
        let n = 3;
        let u = SymbolExpr::n_poly(n).pow(2).mul_rat(&rat(3, 5));
        let inv = u.try_inv().unwrap();
        assert_eq!(u.mul(&inv), SymbolExpr::one(n));
        let non_unit = SymbolExpr::xi(n, 0);
        assert!(non_unit.try_inv().is_err());
        let loc = SymbolExpr::n_inv_pow(n, 2).mul_scalar(&LambdaScalar::lambda());
        let loc_inv = loc.try_inv().unwrap();
        assert_eq!(loc.mul(&loc_inv), SymbolExpr::one(n));
    }

    #[test]
    fn breve_involution() {
        let n = 3;
        assert_eq!(SymbolExpr::n_poly(n).breve(), SymbolExpr::n_poly(n));
        assert_eq!(SymbolExpr::xi(n, 0).breve(), SymbolExpr::eta(n, 0));
        let f = SymbolExpr::xi(n, 0)
            .mul(&SymbolExpr::eta(n, 1).pow(2))
            .mul_scalar(&lam())
            .add(&SymbolExpr::n_inv_pow(n, 1));
        assert_eq!(f.breve().breve(), f);
    }

    #[test]
    fn mixed_partials_commute() {
        let n = 3;
        let f = SymbolExpr::xi(n, 0)
            .pow(2)
            .mul(&SymbolExpr::eta(n, 1))
            .mul(&SymbolExpr::n_inv_pow(n, 2));
        let a = f.derive(Var::Xi(0)).derive(Var::Eta(1));
        let b = f.derive(Var::Eta(1)).derive(Var::Xi(0));
        assert_eq!(a, b);
    }

    #[test]
    fn json_round_trip() {
        let n = 3;
        let f = SymbolExpr::xi(n, 0)
            .mul_scalar(&LambdaScalar::lambda().div(&LambdaScalar::lambda_plus(3)).unwrap())
            .add(&SymbolExpr::eta(n, 1).mul(&SymbolExpr::n_inv_pow(n, 2)))
            .sub(&SymbolExpr::from_rat(n, rat(7, 3)));
        let s = f.to_json_string();
        let back = SymbolExpr::from_json_str(&s).unwrap();
        assert_eq!(back, f);
        // byte-determinism of the encoding
        assert_eq!(s, back.to_json_string());
    }

    #[test]
    fn display_examples() {
        assert_eq!(
            SymbolExpr::xi(2, 0)
                .mul_scalar(&lam())
                .mul(&SymbolExpr::n_inv_pow(2, 1))
                .to_string(),
            "\u{3bb}\u{b7}\u{3be}/N"
        );
        assert_eq!(SymbolExpr::n_poly(3).to_string(), "1 - \u{3be}1\u{b7}\u{3b7}1 - \u{3be}2\u{b7}\u{3b7}2");
        assert_eq!(SymbolExpr::zero(2).to_string(), "0");
    }
}
