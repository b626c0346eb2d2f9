//! Group quantization on `SL(2, R)`: the signed-power representations
//! `T_{sigma,eps}`, the hyperboloid of one sheet, and the closed-form
//! covariant/contravariant symbols of group operators.
//!
//! The representation acts on functions on the line by
//!
//! ```text
//!     (T_{sigma,eps}(g) f)(t) = f((alpha t + gamma)/(beta t + delta))
//!                               (beta t + delta)^{2 sigma, eps},
//! ```
//!
//! with `t^{p,eps} = |t|^p (sgn t)^eps`.  The supercomplete system is
//! `Phi = N(xi,eta)^{2 sigma, eps}` with `N = 1 - xi eta`, and the symbols of
//! `T_{sigma,eps}(g)` come out as signed powers of `tr(xg)` resp.
//! `tr(g^{-1} x)`.  Everything is evaluated three ways (definition, trace
//! form, `u g v` form): exactly when the exponents are integers, in
//! double-double otherwise.
//!
//! This module is self-contained within the `(sigma, eps)` parameterization.
//! Comparing the kernels `N^{2 sigma, eps}` here with `N^lambda` of the
//! rank-one family suggests the dictionary `lambda = 2 sigma` (with genus 2
//! at `n = 2`), but none of the checks below rely on that identification.

use num_traits::{One, Zero};

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::numeric::{dd_from_rat, dd_signed_power, rel_dev, DD};
use crate::rat::{rat_i, signed_pow_exact, Rat};

/// Parameters `(sigma, eps)`; evaluation uses the exponent `2 sigma` for the
/// covariant side and `-2 sigma - 2` for the contravariant side.
#[derive(Debug, Clone, PartialEq)]
pub struct SignedPower {
    pub sigma: Rat,
    pub eps: u8,
}

impl SignedPower {
    pub fn new(sigma: Rat, eps: u8) -> Result<Self> {
        if eps > 1 {
            return Err(Error::InvalidInput("eps must be 0 or 1".into()));
        }
        Ok(SignedPower { sigma, eps })
    }

    /// `2 sigma` as an integer, when it is one (the exact branch).
    pub fn two_sigma_int(&self) -> Option<i64> {
        let two_sigma = &self.sigma * rat_i(2);
        if two_sigma.denom().is_one() {
            two_sigma.numer().try_into().ok()
        } else {
            None
        }
    }
}

/// `|t|^p (sgn t)^eps` for a rational base and integer exponent, exact.
pub fn signed_power_rat(t: &Rat, p: i64, eps: u8) -> Result<Rat> {
    signed_pow_exact(t, p, eps)
}

/// `|t|^p (sgn t)^eps` in double-double.
pub fn signed_power_dd(t: DD, p: DD, eps: u8) -> Result<DD> {
    dd_signed_power(t, p, eps)
}

/// `SL(2, R)` with exact rational entries `[[alpha, beta], [gamma, delta]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Sl2Elem {
    pub alpha: Rat,
    pub beta: Rat,
    pub gamma: Rat,
    pub delta: Rat,
}

impl Sl2Elem {
    pub fn new(alpha: Rat, beta: Rat, gamma: Rat, delta: Rat) -> Result<Self> {
        if &alpha * &delta - &beta * &gamma != Rat::one() {
            return Err(Error::InvalidInput("SL(2) element must have det 1".into()));
        }
        Ok(Sl2Elem { alpha, beta, gamma, delta })
    }

    pub fn identity() -> Self {
        Sl2Elem {
            alpha: Rat::one(),
            beta: Rat::zero(),
            gamma: Rat::zero(),
            delta: Rat::one(),
        }
    }

    pub fn inverse(&self) -> Sl2Elem {
        Sl2Elem {
            alpha: self.delta.clone(),
            beta: -self.beta.clone(),
            gamma: -self.gamma.clone(),
            delta: self.alpha.clone(),
        }
    }

    /// The contragredient partner `[[delta, gamma], [beta, alpha]]`.
    pub fn hat(&self) -> Sl2Elem {
        Sl2Elem {
            alpha: self.delta.clone(),
            beta: self.gamma.clone(),
            gamma: self.beta.clone(),
            delta: self.alpha.clone(),
        }
    }

    pub fn mul(&self, o: &Sl2Elem) -> Sl2Elem {
        Sl2Elem {
            alpha: &self.alpha * &o.alpha + &self.beta * &o.gamma,
            beta: &self.alpha * &o.beta + &self.beta * &o.delta,
            gamma: &self.gamma * &o.alpha + &self.delta * &o.gamma,
            delta: &self.gamma * &o.beta + &self.delta * &o.delta,
        }
    }
}

/// Point of the one-sheeted hyperboloid `[x,x] = -x1^2 + x2^2 + x3^2 = 1`,
/// carried in horospherical coordinates with `N = 1 - xi eta != 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperboloidPoint {
    pub xi: Rat,
    pub eta: Rat,
}

impl HyperboloidPoint {
    pub fn from_chart(xi: Rat, eta: Rat) -> Result<Self> {
        let p = HyperboloidPoint { xi, eta };
        if p.n_value().is_zero() {
            return Err(Error::EvalOnSingularSet);
        }
        Ok(p)
    }

    /// Recover the chart from an ambient triple (needs `x3 != -1`).
    pub fn from_triple(x1: Rat, x2: Rat, x3: Rat) -> Result<Self> {
        let form = -(&x1 * &x1) + &x2 * &x2 + &x3 * &x3;
        if form != Rat::one() {
            return Err(Error::InvalidInput("triple is not on the hyperboloid".into()));
        }
        let denom = x3 + Rat::one();
        if denom.is_zero() {
            return Err(Error::EvalOnSingularSet);
        }
        Ok(HyperboloidPoint { xi: (&x1 + &x2) / &denom, eta: (&x1 - &x2) / &denom })
    }

    pub fn n_value(&self) -> Rat {
        Rat::one() - &self.xi * &self.eta
    }

    /// Ambient coordinates `x = (xi+eta, xi-eta, 1+xi eta)/N`.
    pub fn triple(&self) -> (Rat, Rat, Rat) {
        let nval = self.n_value();
        (
            (&self.xi + &self.eta) / &nval,
            (&self.xi - &self.eta) / &nval,
            (Rat::one() + &self.xi * &self.eta) / &nval,
        )
    }

    /// The 2x2 matrix `x = (1/N) [[-eta xi, -eta], [xi, 1]]`.
    pub fn matrix(&self) -> [[Rat; 2]; 2] {
        let nval = self.n_value();
        [
            [-(&self.eta * &self.xi) / &nval, -&self.eta / &nval],
            [&self.xi / &nval, nval.recip()],
        ]
    }

    /// Row `u = (xi, 1)` and column `v = (-eta, 1)` with `x = v u / (u v)`,
    /// `N = u v`.
    pub fn uv(&self) -> ([Rat; 2], [Rat; 2]) {
        ([self.xi.clone(), Rat::one()], [-self.eta.clone(), Rat::one()])
    }
}

/// `u M v` for the factorization vectors and a 2x2 rational matrix.
fn u_m_v(u: &[Rat; 2], m: &Sl2Elem, v: &[Rat; 2]) -> Rat {
    let top = &m.alpha * &v[0] + &m.beta * &v[1];
    let bot = &m.gamma * &v[0] + &m.delta * &v[1];
    &u[0] * top + &u[1] * bot
}

/// `tr(x g)` computed through the matrix form.
fn trace_xg(p: &HyperboloidPoint, g: &Sl2Elem) -> Rat {
    let x = p.matrix();
    // tr(x g) = x00 g00 + x01 g10 + x10 g01 + x11 g11
    &x[0][0] * &g.alpha + &x[0][1] * &g.gamma + &x[1][0] * &g.beta + &x[1][1] * &g.delta
}

// ---------------------------------------------------------------------------
// the representation
// ---------------------------------------------------------------------------

/// `(T_{sigma,eps}(g) f)(t)`, double-double path.
pub fn t_action(
    g: &Sl2Elem,
    sp: &SignedPower,
    f: &dyn Fn(DD) -> DD,
    t: DD,
) -> Result<DD> {
    let alpha = dd_from_rat(&g.alpha);
    let beta = dd_from_rat(&g.beta);
    let gamma = dd_from_rat(&g.gamma);
    let delta = dd_from_rat(&g.delta);
    let denom = beta * t + delta;
    if denom.is_zero() {
        return Err(Error::PoleAtPoint(format!("beta t + delta = 0 at t = {}", t.hi)));
    }
    let moved = (alpha * t + gamma) / denom;
    let weight = signed_power_dd(denom, dd_from_rat(&sp.sigma) * Dd::from_f64(2.0), sp.eps)?;
    Ok(f(moved) * weight)
}

/// Exact `(T(g) f)(t)` when `2 sigma` is an integer.
pub fn t_action_exact(
    g: &Sl2Elem,
    two_sigma: i64,
    eps: u8,
    f: &dyn Fn(&Rat) -> Result<Rat>,
    t: &Rat,
) -> Result<Rat> {
    let denom = &g.beta * t + &g.delta;
    if denom.is_zero() {
        return Err(Error::PoleAtPoint("beta t + delta = 0".into()));
    }
    let moved = (&g.alpha * t + &g.gamma) / &denom;
    Ok(f(&moved)? * signed_pow_exact(&denom, two_sigma, eps)?)
}

/// The contragredient action `(T^(g) f)(t) = f((delta t + beta)/(gamma t + alpha))
/// (gamma t + alpha)^{2 sigma, eps}`; equals `T(g-hat)`.
pub fn t_hat_action_exact(
    g: &Sl2Elem,
    two_sigma: i64,
    eps: u8,
    f: &dyn Fn(&Rat) -> Result<Rat>,
    t: &Rat,
) -> Result<Rat> {
    t_action_exact(&g.hat(), two_sigma, eps, f, t)
}

// ---------------------------------------------------------------------------
// symbols
// ---------------------------------------------------------------------------

/// The three computations of a symbol plus their maximal relative deviation.
#[derive(Debug, Clone)]
pub struct SymbolComparison {
    /// from the defining twisted-action formula
    pub definition: DD,
    /// the `tr(..)` closed form
    pub trace_form: DD,
    /// the `u g v / (u v)` closed form
    pub uv_form: DD,
    /// largest pairwise relative deviation of the three values
    pub max_rel_dev: f64,
    /// whether all three were computed by the exact rational branch
    pub exact: bool,
}

fn compare3(a: DD, b: DD, c: DD, exact: bool) -> SymbolComparison {
    let max_rel_dev = rel_dev(a, b).max(rel_dev(a, c)).max(rel_dev(b, c));
    SymbolComparison { definition: a, trace_form: b, uv_form: c, max_rel_dev, exact }
}

/// Covariant symbol `F_g(x)`: definition
/// `Phi^{-1} (T_{sigma,eps}(g) ⊗ 1) Phi` against the closed forms
/// `(tr(xg))^{2 sigma, eps}` and `(u g v/(u v))^{2 sigma, eps}`.
pub fn covariant_symbol_sl2(
    g: &Sl2Elem,
    sp: &SignedPower,
    p: &HyperboloidPoint,
) -> Result<SymbolComparison> {
    let t = trace_xg(p, g);
    if t.is_zero() {
        return Err(Error::ZeroTrace);
    }
    let (u, v) = p.uv();
    let ugv = u_m_v(&u, g, &v);
    let nval = p.n_value();

    if let Some(k) = sp.two_sigma_int() {
        // exact branch
        let phi = |xi: &Rat, eta: &Rat| -> Result<Rat> {
            signed_pow_exact(&(Rat::one() - xi * eta), k, sp.eps)
        };
        // (T(g) Phi(., eta))(xi) / Phi(xi, eta)
        let numer = t_action_exact(g, k, sp.eps, &|s: &Rat| phi(s, &p.eta), &p.xi)?;
        let definition = numer / phi(&p.xi, &p.eta)?;
        let trace_form = signed_pow_exact(&t, k, sp.eps)?;
        let uv_form = signed_pow_exact(&(ugv / &nval), k, sp.eps)?;
        let exact_equal = definition == trace_form && trace_form == uv_form;
        let cmp = compare3(
            dd_from_rat(&definition),
            dd_from_rat(&trace_form),
            dd_from_rat(&uv_form),
            true,
        );
        if !exact_equal {
            return Err(Error::InvalidInput(format!(
                "exact three-way symbol mismatch: {} / {} / {}",
                definition, trace_form, uv_form
            )));
        }
        Ok(cmp)
    } else {
        let two_sigma = dd_from_rat(&sp.sigma) * Dd::from_f64(2.0);
        let phi = |xi: DD, eta: DD| -> Result<DD> {
            signed_power_dd(Dd::ONE - xi * eta, two_sigma, sp.eps)
        };
        let eta_dd = dd_from_rat(&p.eta);
        let numer = t_action(g, sp, &|s: DD| phi(s, eta_dd).unwrap_or(Dd::ZERO), dd_from_rat(&p.xi))?;
        let definition = numer / phi(dd_from_rat(&p.xi), eta_dd)?;
        let trace_form = signed_power_dd(dd_from_rat(&t), two_sigma, sp.eps)?;
        let uv_form = signed_power_dd(dd_from_rat(&(ugv / &nval)), two_sigma, sp.eps)?;
        Ok(compare3(definition, trace_form, uv_form, false))
    }
}

/// Contravariant symbol `F^nat_g(x)`: definition
/// `Phi_{-sigma-1}^{-1} (1 ⊗ T_{-sigma-1,eps}(g-hat)) Phi_{-sigma-1}` against
/// `(tr(g^{-1} x))^{-2 sigma - 2, eps}` and `(u g^{-1} v/(u v))^{-2 sigma - 2, eps}`.
pub fn contravariant_symbol_sl2(
    g: &Sl2Elem,
    sp: &SignedPower,
    p: &HyperboloidPoint,
) -> Result<SymbolComparison> {
    let ginv = g.inverse();
    let t = trace_xg(p, &ginv);
    if t.is_zero() {
        return Err(Error::ZeroTrace);
    }
    let (u, v) = p.uv();
    let ugv = u_m_v(&u, &ginv, &v);
    let nval = p.n_value();

    if let Some(k) = sp.two_sigma_int() {
        let kc = -k - 2; // exponent of Phi_{-sigma-1,eps}
        let phi = |xi: &Rat, eta: &Rat| -> Result<Rat> {
            signed_pow_exact(&(Rat::one() - xi * eta), kc, sp.eps)
        };
        // the eta-side action of the contragredient element
        let numer =
            t_hat_action_exact(g, kc, sp.eps, &|s: &Rat| phi(&p.xi, s), &p.eta)?;
        let definition = numer / phi(&p.xi, &p.eta)?;
        let trace_form = signed_pow_exact(&t, kc, sp.eps)?;
        let uv_form = signed_pow_exact(&(ugv / &nval), kc, sp.eps)?;
        if !(definition == trace_form && trace_form == uv_form) {
            return Err(Error::InvalidInput(format!(
                "exact three-way contravariant mismatch: {} / {} / {}",
                definition, trace_form, uv_form
            )));
        }
        Ok(compare3(
            dd_from_rat(&definition),
            dd_from_rat(&trace_form),
            dd_from_rat(&uv_form),
            true,
        ))
    } else {
        let expc = -(dd_from_rat(&sp.sigma) * Dd::from_f64(2.0)) - Dd::from_f64(2.0);
        let phi = |xi: DD, eta: DD| -> Result<DD> {
            signed_power_dd(Dd::ONE - xi * eta, expc, sp.eps)
        };
        let xi_dd = dd_from_rat(&p.xi);
        // T_{-sigma-1,eps}(g-hat) acting on eta
        let ghat = g.hat();
        let minus_sigma_minus_one =
            SignedPower::new(-(&sp.sigma) - Rat::one(), sp.eps)?;
        let numer = t_action(
            &ghat,
            &minus_sigma_minus_one,
            &|s: DD| phi(xi_dd, s).unwrap_or(Dd::ZERO),
            dd_from_rat(&p.eta),
        )?;
        let definition = numer / phi(xi_dd, dd_from_rat(&p.eta))?;
        let trace_form = signed_power_dd(dd_from_rat(&t), expc, sp.eps)?;
        let uv_form = signed_power_dd(dd_from_rat(&(ugv / &nval)), expc, sp.eps)?;
        Ok(compare3(definition, trace_form, uv_form, false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use num_traits::Signed;

    fn g_diag_2() -> Sl2Elem {
        Sl2Elem::new(rat_i(2), rat_i(0), rat_i(0), rat(1, 2)).unwrap()
    }

    fn point_hf() -> HyperboloidPoint {
        HyperboloidPoint::from_chart(rat(1, 2), rat(1, 3)).unwrap()
    }

    #[test]
    fn chart_matrix_examples() {
        let origin = HyperboloidPoint::from_chart(rat_i(0), rat_i(0)).unwrap();
        let m = origin.matrix();
        assert_eq!(m[0][0], rat_i(0));
        assert_eq!(m[1][1], rat_i(1));
        let p = point_hf();
        let m = p.matrix();
        assert_eq!(m[0][0], rat(-1, 5));
        assert_eq!(m[0][1], rat(-2, 5));
        assert_eq!(m[1][0], rat(3, 5));
        assert_eq!(m[1][1], rat(6, 5));
        let (u, v) = p.uv();
        assert_eq!(&u[0] * &v[0] + &u[1] * &v[1], rat(5, 6));
    }

    #[test]
    fn triple_form_on_hyperboloid() {
        let p = point_hf();
        let (x1, x2, x3) = p.triple();
        assert_eq!(-(&x1 * &x1) + &x2 * &x2 + &x3 * &x3, rat_i(1));
        // (1 - xi eta)^2 = (1 + xi eta)^2 - 4 xi eta, the [x,x] = 1 identity
        let xe = &p.xi * &p.eta;
        let lhs = (Rat::one() - &xe) * (Rat::one() - &xe);
        let rhs = (Rat::one() + &xe) * (Rat::one() + &xe) - rat_i(4) * &xe;
        assert_eq!(lhs, rhs);
        // chart -> triple -> chart round trip
        let back = HyperboloidPoint::from_triple(x1, x2, x3).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn t_action_examples() {
        // g = identity acts trivially
        let id = Sl2Elem::identity();
        let f = |t: &Rat| Ok(t.clone() + rat_i(1));
        assert_eq!(
            t_action_exact(&id, 2, 0, &f, &rat(1, 2)).unwrap(),
            rat(3, 2)
        );
        // g = [[1,0],[1,1]], sigma = 1, eps = 0: weight (0 t + 1)^2 = 1,
        // argument shift t -> t + 1
        let g = Sl2Elem::new(rat_i(1), rat_i(0), rat_i(1), rat_i(1)).unwrap();
        let one = |_: &Rat| Ok(rat_i(1));
        assert_eq!(t_action_exact(&g, 2, 0, &one, &rat_i(2)).unwrap(), rat_i(1));
        let ident = |t: &Rat| Ok(t.clone());
        assert_eq!(t_action_exact(&g, 2, 0, &ident, &rat_i(2)).unwrap(), rat_i(3));
        // pole detection
        let gp = Sl2Elem::new(rat_i(0), rat_i(1), rat_i(-1), rat_i(0)).unwrap();
        assert!(matches!(
            t_action_exact(&gp, 2, 0, &one, &rat_i(0)),
            Err(Error::PoleAtPoint(_))
        ));
    }

    #[test]
    fn contragredient_equivalence() {
        // f -> f^ = t^{2 sigma, eps} f(1/t) intertwines T and T-hat:
        // T^(g) f^ = (T(g) f)^ at generic rational points
        let g = Sl2Elem::new(rat_i(2), rat(1, 3), rat_i(1), rat(2, 3)).unwrap();
        let two_sigma = 4i64;
        let eps = 1u8;
        let f = |t: &Rat| Ok(t.clone() * t + rat_i(1));
        let f_hat = move |t: &Rat| -> Result<Rat> {
            if t.is_zero() {
                return Err(Error::UndefinedSignedPower);
            }
            Ok(signed_pow_exact(t, two_sigma, eps)? * f(&t.clone().recip())?)
        };
        for t in [rat(1, 2), rat(-2, 3), rat_i(3), rat(5, 7)] {
            let lhs = t_hat_action_exact(&g, two_sigma, eps, &f_hat, &t);
            let rhs = t_action_exact(&g, two_sigma, eps, &f, &t)
                .and_then(|_| t_action_exact(&g, two_sigma, eps, &f, &t.clone().recip()))
                .and_then(|v| Ok(signed_pow_exact(&t, two_sigma, eps)? * v));
            if let (Ok(a), Ok(b)) = (lhs, rhs) {
                assert_eq!(a, b, "t = {t}");
            }
        }
    }

    #[test]
    fn covariant_symbol_identity_element() {
        // g = e: tr(x) = 1, so F = 1 for any (sigma, eps)
        let sp = SignedPower::new(rat(3, 2), 1).unwrap();
        let c = covariant_symbol_sl2(&Sl2Elem::identity(), &sp, &point_hf()).unwrap();
        assert!(c.max_rel_dev < 1e-25);
        assert!(rel_dev(c.trace_form, Dd::ONE) < 1e-28);
    }

    #[test]
    fn covariant_symbol_diag_example() {
        // g = diag(2, 1/2) at (1/2, 1/3): tr(xg) = 1/5
        let p = point_hf();
        let g = g_diag_2();
        assert_eq!(trace_xg(&p, &g), rat(1, 5));
        // integer exponent: exact three-way agreement
        let sp = SignedPower::new(rat_i(1), 0).unwrap();
        let c = covariant_symbol_sl2(&g, &sp, &p).unwrap();
        assert!(c.exact);
        assert_eq!(c.max_rel_dev, 0.0);
        assert!(rel_dev(c.trace_form, dd_from_rat(&rat(1, 25))) < 1e-28);
        // non-integer exponent: double-double three-way agreement
        let sp = SignedPower::new(rat(3, 4), 1).unwrap();
        let c = covariant_symbol_sl2(&g, &sp, &p).unwrap();
        assert!(!c.exact);
        assert!(c.max_rel_dev < 1e-25, "dev = {}", c.max_rel_dev);
    }

    #[test]
    fn contravariant_symbol_diag_example() {
        // tr(g^{-1} x) = 23/10 at the reference point
        let p = point_hf();
        let g = g_diag_2();
        assert_eq!(trace_xg(&p, &g.inverse()), rat(23, 10));
        let sp = SignedPower::new(rat_i(1), 0).unwrap();
        let c = contravariant_symbol_sl2(&g, &sp, &p).unwrap();
        assert!(c.exact);
        // (23/10)^{-4}
        let want = signed_pow_exact(&rat(23, 10), -4, 0).unwrap();
        assert!(rel_dev(c.trace_form, dd_from_rat(&want)) < 1e-28);
        // non-integer branch
        let sp = SignedPower::new(rat(2, 3), 1).unwrap();
        let c = contravariant_symbol_sl2(&g, &sp, &p).unwrap();
        assert!(c.max_rel_dev < 1e-25, "dev = {}", c.max_rel_dev);
    }

    #[test]
    fn sign_flip_at_negative_trace() {
        // a point/element with tr(g^{-1} x) < 0 flips the eps = 1 branch
        let p = HyperboloidPoint::from_chart(rat_i(3), rat(1, 2)).unwrap();
        let g = g_diag_2();
        let t = trace_xg(&p, &g.inverse());
        assert!(t.is_negative(), "trace = {t}");
        let sp0 = SignedPower::new(rat_i(1), 0).unwrap();
        let sp1 = SignedPower::new(rat_i(1), 1).unwrap();
        let c0 = contravariant_symbol_sl2(&g, &sp0, &p).unwrap();
        let c1 = contravariant_symbol_sl2(&g, &sp1, &p).unwrap();
        assert!(rel_dev(c0.trace_form, -c1.trace_form) < 1e-28);
    }

    #[test]
    fn conjugation_covariance() {
        // F_g(h^{-1} x h) = F_{h g h^{-1}}(x) by trace cyclicity
        let p = point_hf();
        let h = Sl2Elem::new(rat_i(1), rat_i(1), rat_i(0), rat_i(1)).unwrap();
        let g = g_diag_2();
        // move the point: x -> h^{-1} x h comes from the chart action; here
        // compare traces directly, which is what the closed forms consume
        let hg = h.mul(&g).mul(&h.inverse());
        let x = p.matrix();
        let hinv = h.inverse();
        // y = h^{-1} x h as explicit entries
        let mut y = [[Rat::zero(), Rat::zero()], [Rat::zero(), Rat::zero()]];
        #[allow(clippy::needless_range_loop)]
        for r in 0..2 {
            for c in 0..2 {
                let mut acc = Rat::zero();
                for a in 0..2 {
                    for b in 0..2 {
                        let hi = match (r, a) {
                            (0, 0) => &hinv.alpha,
                            (0, 1) => &hinv.beta,
                            (1, 0) => &hinv.gamma,
                            _ => &hinv.delta,
                        };
                        let hj = match (b, c) {
                            (0, 0) => &h.alpha,
                            (0, 1) => &h.beta,
                            (1, 0) => &h.gamma,
                            _ => &h.delta,
                        };
                        acc += hi * &x[a][b] * hj;
                    }
                }
                y[r][c] = acc;
            }
        }
        let tr_left = &y[0][0] * &g.alpha
            + &y[0][1] * &g.gamma
            + &y[1][0] * &g.beta
            + &y[1][1] * &g.delta;
        let tr_right = trace_xg(&p, &hg);
        assert_eq!(tr_left, tr_right);
    }
}
