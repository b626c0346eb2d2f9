//! The maximal degenerate series of `SL(n, R)` in the non-compact picture.
//!
//! Group level: fractional-linear actions `xi -> xi . g`, `eta -> eta ∘ g`
//! read off from block Gauss elimination, with their `H`-cocycles.  Algebra
//! level: the first-order differential operators `pi^±_lambda(X)` obtained by
//! differentiating the group action along `exp(tX)`, validated against
//! central finite differences of the group formulas.  On top of these sit
//! words of the enveloping algebra and the two realizations of the overgroup
//! representation (direct cocycle vs the horospherical product formula).

use num_traits::Zero;

use crate::diffop::{DiffOperator, Family};
use crate::error::{Error, Result};
use crate::geometry::{
    anti_gauss_decompose, exp_q_minus, exp_q_plus, gauss_decompose, omega_int, GroupElem, HFactor,
    PointChart,
};
use crate::lambda::LambdaScalar;
use crate::lie::{EnvElem, LieElem};
use crate::matrix::Mat;
use crate::rat::{signed_pow_exact, Rat};
use crate::symbol::SymbolExpr;

// ---------------------------------------------------------------------------
// group-level actions
// ---------------------------------------------------------------------------

/// `xi . g` together with the cocycle factor `h~`:
/// `exp(xi) g = exp(Y) h~ exp(xi . g)`, so
/// `xi . g = (xi a + gamma)(xi beta + delta)^{-1}` and the `b`-part of `h~`
/// is `xi beta + delta`.
pub fn xi_bullet(xi: &[Rat], g: &GroupElem) -> Result<(Vec<Rat>, HFactor)> {
    let n = g.n();
    let k = n - 1;
    let m = exp_q_minus(xi).mul(g.mat());
    let b = m.at(k, k).clone();
    if b.is_zero() {
        return Err(Error::NotInBigCell("xi-action pivot xi beta + delta = 0".into()));
    }
    let new_xi: Vec<Rat> = (0..k).map(|j| m.at(k, j) / &b).collect();
    // h~ has A = a - beta (xi a + gamma) / b  (the exp(Y) h exp(X) shape)
    let a = Mat::from_fn(k, k, |i, j| m.at(i, j) - m.at(i, k) * m.at(k, j) / &b);
    Ok((new_xi, HFactor::new(a, b)?))
}

/// `eta ∘ g` together with the cocycle factor `h^`:
/// `exp(eta) g = exp(X) h^ exp(eta ∘ g)`, so
/// `eta ∘ g = (a + eta gamma)^{-1}(beta + eta delta)` and the `b`-part of
/// `h^` is `delta - gamma (eta ∘ g)`.
pub fn eta_circ(eta: &[Rat], g: &GroupElem) -> Result<(Vec<Rat>, HFactor)> {
    let n = g.n();
    let k = n - 1;
    let m = exp_q_plus(eta).mul(g.mat());
    let a = m.block(0, 0, k, k);
    let a_inv = a
        .try_inverse()
        .map_err(|_| Error::NotInBigCell("eta-action pivot a + eta gamma singular".into()))?;
    let new_eta: Vec<Rat> = (0..k)
        .map(|i| {
            let mut acc = Rat::zero();
            for l in 0..k {
                acc += a_inv.at(i, l) * m.at(l, k);
            }
            acc
        })
        .collect();
    let mut b = m.at(k, k).clone();
    for (j, e) in new_eta.iter().enumerate() {
        b -= m.at(k, j) * e;
    }
    Ok((new_eta, HFactor::new(a, b)?))
}

/// `(pi^-_lambda(g) f)(xi) = omega_lambda(h~) f(xi . g) = |xi beta + delta|^lambda f(xi . g)`
/// for integer `lambda`, exact.
pub fn pi_minus_group<F>(g: &GroupElem, lam: i64, f: F, xi: &[Rat]) -> Result<Rat>
where
    F: Fn(&[Rat]) -> Result<Rat>,
{
    let (new_xi, h) = xi_bullet(xi, g)?;
    Ok(omega_int(&h, lam)? * f(&new_xi)?)
}

/// `(pi^+_lambda(g) f)(eta) = omega_lambda(h^{-1}) f(eta ∘ g) = |delta - gamma eta^|^{-lambda} f(eta ∘ g)`.
pub fn pi_plus_group<F>(g: &GroupElem, lam: i64, f: F, eta: &[Rat]) -> Result<Rat>
where
    F: Fn(&[Rat]) -> Result<Rat>,
{
    let (new_eta, h) = eta_circ(eta, g)?;
    Ok(omega_int(&h, -lam)? * f(&new_eta)?)
}

// float variants for the finite-difference oracles

pub fn xi_bullet_f64(xi: &[f64], g: &Mat<f64>) -> Option<(Vec<f64>, f64)> {
    let k = xi.len();
    let m = exp_q_minus(xi).mul(g);
    let b = *m.at(k, k);
    if b == 0.0 {
        return None;
    }
    Some(((0..k).map(|j| m.at(k, j) / b).collect(), b))
}

pub fn eta_circ_f64(eta: &[f64], g: &Mat<f64>) -> Option<(Vec<f64>, f64)> {
    let k = eta.len();
    let m = exp_q_plus(eta).mul(g);
    let a = m.block(0, 0, k, k);
    let a_inv = a.try_inverse().ok()?;
    let new_eta: Vec<f64> = (0..k)
        .map(|i| (0..k).map(|l| a_inv.at(i, l) * m.at(l, k)).sum())
        .collect();
    let b = *m.at(k, k) - (0..k).map(|j| m.at(k, j) * new_eta[j]).sum::<f64>();
    Some((new_eta, b))
}

pub fn pi_minus_group_f64(
    g: &Mat<f64>,
    lam: f64,
    f: &dyn Fn(&[f64]) -> f64,
    xi: &[f64],
) -> Option<f64> {
    let (new_xi, b) = xi_bullet_f64(xi, g)?;
    Some(b.abs().powf(lam) * f(&new_xi))
}

pub fn pi_plus_group_f64(
    g: &Mat<f64>,
    lam: f64,
    f: &dyn Fn(&[f64]) -> f64,
    eta: &[f64],
) -> Option<f64> {
    let (new_eta, b) = eta_circ_f64(eta, g)?;
    Some(b.abs().powf(-lam) * f(&new_eta))
}

// ---------------------------------------------------------------------------
// algebra-level operators
// ---------------------------------------------------------------------------

/// `pi^-_lambda(X) = lambda (xi beta0 + delta0)
///                   + sum_j (gamma0 + xi A0 - (xi beta0 + delta0) xi)_j d/dxi_j`,
/// obtained by differentiating the group action along `exp(tX)` at `t = 0`.
pub fn pi_minus_lie(x: &LieElem) -> DiffOperator {
    let n = x.n();
    let k = n - 1;
    let a0 = x.a0();
    let beta0 = x.beta0();
    let gamma0 = x.gamma0();
    let delta0 = x.delta0();

    // s = xi beta0 + delta0
    let mut s = SymbolExpr::from_rat(n, delta0);
    for (i, b) in beta0.iter().enumerate() {
        s = s.add(&SymbolExpr::xi(n, i).mul_rat(b));
    }

    let mut op = DiffOperator::zero(n, Family::Xi);
    op.insert(vec![0; k], s.mul_scalar(&LambdaScalar::lambda()));
    for j in 0..k {
        // (gamma0 + xi A0)_j - s xi_j
        let mut c = SymbolExpr::from_rat(n, gamma0[j].clone());
        for i in 0..k {
            c = c.add(&SymbolExpr::xi(n, i).mul_rat(a0.at(i, j)));
        }
        c = c.sub(&s.mul(&SymbolExpr::xi(n, j)));
        let mut alpha = vec![0u16; k];
        alpha[j] = 1;
        op.insert(alpha, c);
    }
    op
}

/// `pi^+_lambda(X) = -lambda (delta0 - gamma0 eta)
///                   + sum_i (beta0 + eta delta0 - A0 eta - eta gamma0 eta)_i d/deta_i`.
pub fn pi_plus_lie(x: &LieElem) -> DiffOperator {
    let n = x.n();
    let k = n - 1;
    let a0 = x.a0();
    let beta0 = x.beta0();
    let gamma0 = x.gamma0();
    let delta0 = x.delta0();

    // t = delta0 - gamma0 eta
    let mut t = SymbolExpr::from_rat(n, delta0.clone());
    for (i, gm) in gamma0.iter().enumerate() {
        t = t.sub(&SymbolExpr::eta(n, i).mul_rat(gm));
    }
    // ge = gamma0 eta
    let mut ge = SymbolExpr::zero(n);
    for (i, gm) in gamma0.iter().enumerate() {
        ge = ge.add(&SymbolExpr::eta(n, i).mul_rat(gm));
    }

    let mut op = DiffOperator::zero(n, Family::Eta);
    op.insert(vec![0; k], t.mul_scalar(&LambdaScalar::lambda()).neg());
    for i in 0..k {
        // beta0_i + eta_i delta0 - (A0 eta)_i - eta_i (gamma0 eta)
        let mut c = SymbolExpr::from_rat(n, beta0[i].clone());
        c = c.add(&SymbolExpr::eta(n, i).mul_rat(&delta0));
        for j in 0..k {
            c = c.sub(&SymbolExpr::eta(n, j).mul_rat(a0.at(i, j)));
        }
        c = c.sub(&SymbolExpr::eta(n, i).mul(&ge));
        let mut alpha = vec![0u16; k];
        alpha[i] = 1;
        op.insert(alpha, c);
    }
    op
}

/// The operator of a whole enveloping-algebra element, as a composed
/// [`DiffOperator`]; the left factor of each word acts last.
pub fn env_operator(e: &EnvElem, family: Family) -> Result<DiffOperator> {
    let n = e.n();
    let lie_op = |x: &LieElem| match family {
        Family::Xi => pi_minus_lie(x),
        Family::Eta => pi_plus_lie(x),
    };
    let mut acc = DiffOperator::zero(n, family);
    for (c, word) in e.terms() {
        let mut op = DiffOperator::identity(n, family);
        for letter in word {
            op = op.compose(&lie_op(letter))?;
        }
        acc = acc.add(&op.scale(&LambdaScalar::from_rat(c.clone())));
    }
    Ok(acc)
}

/// Apply `pi^±_lambda(E)` to a symbol, word by word (left letter last).
pub fn env_apply(e: &EnvElem, f: &SymbolExpr, family: Family) -> Result<SymbolExpr> {
    if e.n() != f.n() {
        return Err(Error::DimensionMismatch(format!("sl({}) vs symbols over n = {}", e.n(), f.n())));
    }
    let lie_op = |x: &LieElem| match family {
        Family::Xi => pi_minus_lie(x),
        Family::Eta => pi_plus_lie(x),
    };
    let mut acc = SymbolExpr::zero(f.n());
    for (c, word) in e.terms() {
        let mut g = f.clone();
        for letter in word.iter().rev() {
            g = lie_op(letter).apply(&g);
        }
        acc = acc.add(&g.mul_rat(c));
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// overgroup realization
// ---------------------------------------------------------------------------

/// Both sides of (the executable form of) the overgroup action at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct OvergroupValue {
    pub multiplier: Rat,
    pub point: PointChart,
}

/// Direct cocycle path: build the section element `s` from the chart point,
/// Gauss-decompose `s g2 g1^{-1} s^{-1} = exp(-Y*) exp(X*) h*`, form
/// `s* = exp(Y*) s g2`, and read the new chart point off `s*`.  The value of
/// the representation is `omega_lambda(h*) f(point*)`.
pub fn overgroup_direct(
    g1: &GroupElem,
    g2: &GroupElem,
    lam: i64,
    p: &PointChart,
) -> Result<OvergroupValue> {
    let n = p.n();
    if g1.n() != n || g2.n() != n {
        return Err(Error::DimensionMismatch("group elements must match the point".into()));
    }
    // exp(xi) exp(-eta) = exp(-Y) exp(X) h0 in the q^+-negated convention:
    // our decomposition returns exp(Y_G) exp(X) h0 with Y_G = -Y.
    let m = GroupElem::new(
        exp_q_minus(&p.xi).mul(&exp_q_plus(&p.eta.iter().map(|v| -v.clone()).collect::<Vec<_>>())),
    )
    .expect("unipotent product has det 1");
    let (y_g, _, _) = gauss_decompose(&m)?;
    // s = exp(Y) exp(xi) with Y = -Y_G
    let s = exp_q_plus(&y_g.iter().map(|v| -v.clone()).collect::<Vec<_>>())
        .mul(&exp_q_minus(&p.xi));
    let s_inv = GroupElem::new(s.clone()).expect("det 1").inverse();

    let w = GroupElem::new(
        s.mul(g2.mat()).mul(g1.inverse().mat()).mul(s_inv.mat()),
    )
    .expect("det 1");
    let (y_w, x_w, h_star) = gauss_decompose(&w)?;
    // s* = exp(Y*) s g2 with Y* = -Y_W; the alternate form exp(X*) h* s g1
    // must agree exactly.
    let s_star = exp_q_plus(&y_w.iter().map(|v| -v.clone()).collect::<Vec<_>>())
        .mul(&s)
        .mul(g2.mat());
    let alt = exp_q_minus(&x_w).mul(&h_star.embed()).mul(&s).mul(g1.mat());
    debug_assert_eq!(s_star, alt, "the two expressions for s* must coincide");

    // chart coordinates of the new point: xi* from the exp(q+) h exp(q-)
    // shape of s*, eta* from the anti-Gauss shape.
    let s_star_g = GroupElem::new(s_star).expect("det 1");
    let (_, x15, h15) = gauss_decompose(&s_star_g)?;
    // convert the exp(Y) exp(X) h shape to exp(Y) h exp(X'): x' = b^{-1} x A
    let k = n - 1;
    let xi_star: Vec<Rat> = (0..k)
        .map(|j| {
            let mut acc = Rat::zero();
            for (l, xv) in x15.iter().enumerate() {
                acc += xv * h15.a.at(l, j);
            }
            acc / &h15.b
        })
        .collect();
    let (_, eta_star, _) = anti_gauss_decompose(&s_star_g)?;
    Ok(OvergroupValue {
        multiplier: omega_int(&h_star, lam)?,
        point: PointChart::new(xi_star, eta_star)?,
    })
}

/// Horospherical product formula: the multiplier is
/// `(|N(xi.g2, eta∘g1)| / |N(xi, eta)|)^lambda |b~_2|^lambda |b^_1|^{-lambda}`
/// and the point moves to `(xi . g2, eta ∘ g1)`.
pub fn overgroup_formula(
    g1: &GroupElem,
    g2: &GroupElem,
    lam: i64,
    p: &PointChart,
) -> Result<OvergroupValue> {
    let (xi_new, h2) = xi_bullet(&p.xi, g2)?;
    let (eta_new, h1) = eta_circ(&p.eta, g1)?;
    let n_old = p.n_value();
    if n_old.is_zero() {
        return Err(Error::EvalOnSingularSet);
    }
    let moved = PointChart::new(xi_new, eta_new)?;
    let n_new = moved.n_value();
    if n_new.is_zero() {
        return Err(Error::EvalOnSingularSet);
    }
    let phi_ratio = signed_pow_exact(&(n_new / n_old), lam, 0)?;
    let mult = phi_ratio * omega_int(&h2, lam)? * omega_int(&h1, -lam)?;
    Ok(OvergroupValue { multiplier: mult, point: moved })
}

/// The tensor-factorization identity on the parabolic section: the joint
/// action without the `Phi`-ratio equals `pi^-_lambda(g2) ⊗ pi^+_lambda(g1)`
/// applied one side after the other.  Returns `(joint, sequential)` values.
pub fn tensor_factorization<F>(
    g1: &GroupElem,
    g2: &GroupElem,
    lam: i64,
    f: F,
    p: &PointChart,
) -> Result<(Rat, Rat)>
where
    F: Fn(&PointChart) -> Result<Rat>,
{
    // joint: omega(h~2) omega(h^1^{-1}) f(xi.g2, eta∘g1)
    let (xi_new, h2) = xi_bullet(&p.xi, g2)?;
    let (eta_new, h1) = eta_circ(&p.eta, g1)?;
    let joint = omega_int(&h2, lam)?
        * omega_int(&h1, -lam)?
        * f(&PointChart::new(xi_new.clone(), eta_new.clone())?)?;

    // sequential: first pi^+ in eta (xi spectator), then pi^- in xi
    let after_plus = |xi_fixed: &[Rat], eta: &[Rat]| -> Result<Rat> {
        pi_plus_group(
            g1,
            lam,
            |e| f(&PointChart::new(xi_fixed.to_vec(), e.to_vec())?),
            eta,
        )
    };
    let sequential = pi_minus_group(
        g2,
        lam,
        |x| after_plus(x, &p.eta),
        &p.xi,
    )?;
    Ok((joint, sequential))
}
