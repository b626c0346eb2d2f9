//! The rank-one space `G/H = SL(n,R)/GL(n-1,R)`.
//!
//! Points, horospherical coordinates, the matrix embedding, Gauss and
//! anti-Gauss decompositions, the characters `b(h)` and `omega_lambda(h)`,
//! the invariant measure density, the Laplace-Beltrami operator, the Poisson
//! bracket and the Berezin kernel.
//!
//! Matrices are written in blocks for the partition `n = (n-1) + 1`:
//!
//! ```text
//!     g = [ a      beta  ]      a: (n-1)x(n-1), beta: column,
//!         [ gamma  delta ]      gamma: row, delta: scalar.
//! ```
//!
//! `q^-` consists of lower-left blocks (row vectors `xi`), `q^+` of
//! upper-right blocks (column vectors `eta`), and `H` of block-diagonal
//! matrices `diag{A, b}` with `det(A) b = 1`.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{Mat, MatScalar};
use crate::numeric::{c_lambda, dd_pow, DD};
use crate::rat::{rat_pow, Rat};
use crate::symbol::{n_value, SymbolExpr, Var};

/// Parameters of the space: `G = SL(n,R)`, `H = GL(n-1,R)`, rank 1, genus `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpaceConfig {
    n: usize,
}

impl SpaceConfig {
    /// `n >= 2`; the closed analytic formulas (Laplacian spectrum, Berezin
    /// eigenvalues) are stated for `n >= 3`, while `n = 2` is still allowed
    /// for the `SL(2,R)` experiments.
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput("space parameter must be >= 2".into()));
        }
        Ok(SpaceConfig { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The genus of the Jordan pair, equal to `n` for this family.
    pub fn genus(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        1
    }

    /// Whether the rank-one analytic formulas are stated for this `n`.
    pub fn analytic_formulas_valid(&self) -> bool {
        self.n >= 3
    }
}

/// Horospherical coordinates `(xi, eta)`, both of length `n-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointChart {
    pub xi: Vec<Rat>,
    pub eta: Vec<Rat>,
}

impl PointChart {
    pub fn new(xi: Vec<Rat>, eta: Vec<Rat>) -> Result<Self> {
        if xi.is_empty() || xi.len() != eta.len() {
            return Err(Error::DimensionMismatch(format!(
                "xi/eta lengths {}/{}",
                xi.len(),
                eta.len()
            )));
        }
        Ok(PointChart { xi, eta })
    }

    pub fn n(&self) -> usize {
        self.xi.len() + 1
    }

    /// `N(xi, eta) = 1 - xi eta`.
    pub fn n_value(&self) -> Rat {
        n_value(&self.xi, &self.eta)
    }
}

/// A point of `G/H` embedded in `Mat(n, R)`: trace-1 idempotent.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixPoint {
    mat: Mat<Rat>,
}

impl MatrixPoint {
    pub fn new(mat: Mat<Rat>) -> Result<Self> {
        if mat.rows() != mat.cols() {
            return Err(Error::InvalidInput("point matrix must be square".into()));
        }
        if !mat.trace().is_one() {
            return Err(Error::InvalidInput("point matrix must have trace 1".into()));
        }
        if mat.mul(&mat) != mat {
            return Err(Error::InvalidInput("point matrix must be idempotent".into()));
        }
        Ok(MatrixPoint { mat })
    }

    pub fn mat(&self) -> &Mat<Rat> {
        &self.mat
    }

    pub fn n(&self) -> usize {
        self.mat.rows()
    }

    /// Conjugate `g^{-1 } x g` (the action of `G` on the orbit).
    pub fn conjugate(&self, g: &GroupElem) -> Result<MatrixPoint> {
        let ginv = g.mat().try_inverse()?;
        MatrixPoint::new(ginv.mul(&self.mat).mul(g.mat()))
    }
}

/// The base point `x^0 = diag(0, ..., 0, 1)`.
pub fn base_point(n: usize) -> MatrixPoint {
    let mut m = Mat::filled(n, n, Rat::zero());
    m.set(n - 1, n - 1, Rat::one());
    MatrixPoint { mat: m }
}

/// An element of `G = SL(n, R)` with exact rational entries.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElem {
    mat: Mat<Rat>,
}

impl GroupElem {
    pub fn new(mat: Mat<Rat>) -> Result<Self> {
        if mat.rows() != mat.cols() {
            return Err(Error::InvalidInput("group element must be square".into()));
        }
        if !mat.det().is_one() {
            return Err(Error::InvalidInput("group element must have det 1".into()));
        }
        Ok(GroupElem { mat })
    }

    pub fn identity(n: usize) -> Self {
        GroupElem { mat: Mat::identity_like(&Rat::zero(), n) }
    }

    pub fn mat(&self) -> &Mat<Rat> {
        &self.mat
    }

    pub fn n(&self) -> usize {
        self.mat.rows()
    }

    pub fn mul(&self, o: &GroupElem) -> GroupElem {
        GroupElem { mat: self.mat.mul(&o.mat) }
    }

    pub fn inverse(&self) -> GroupElem {
        GroupElem { mat: self.mat.try_inverse().expect("det 1 matrix is invertible") }
    }
}

/// Element of `H = GL(n-1, R)` embedded as `diag{A, b}` with `det(A) b = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct HFactor {
    pub a: Mat<Rat>,
    pub b: Rat,
}

impl HFactor {
    pub fn new(a: Mat<Rat>, b: Rat) -> Result<Self> {
        if a.rows() != a.cols() {
            return Err(Error::InvalidInput("H factor block must be square".into()));
        }
        if a.det() * &b != Rat::one() {
            return Err(Error::InvalidInput("H factor must satisfy det(A) b = 1".into()));
        }
        Ok(HFactor { a, b })
    }

    pub fn identity(n: usize) -> Self {
        HFactor { a: Mat::identity_like(&Rat::zero(), n - 1), b: Rat::one() }
    }

    pub fn n(&self) -> usize {
        self.a.rows() + 1
    }

    pub fn is_identity(&self) -> bool {
        self.b.is_one() && self.a == Mat::identity_like(&Rat::zero(), self.a.rows())
    }

    /// The full `n x n` matrix `diag{A, b}`.
    pub fn embed(&self) -> Mat<Rat> {
        let k = self.a.rows();
        let mut m = Mat::filled(k + 1, k + 1, Rat::zero());
        m.set_block(0, 0, &self.a);
        m.set(k, k, self.b.clone());
        m
    }

    pub fn inverse(&self) -> HFactor {
        HFactor {
            a: self.a.try_inverse().expect("H block is invertible"),
            b: self.b.clone().recip(),
        }
    }

    pub fn mul(&self, o: &HFactor) -> HFactor {
        HFactor { a: self.a.mul(&o.a), b: &self.b * &o.b }
    }
}

// ---------------------------------------------------------------------------
// exp of the Abelian subalgebras and the decompositions
// ---------------------------------------------------------------------------

/// `exp` of a `q^-` element: `I` plus the row `xi` in the lower-left block.
pub fn exp_q_minus<T: MatScalar>(xi: &[T]) -> Mat<T> {
    let k = xi.len();
    let mut m = Mat::identity_like(&xi[0], k + 1);
    for (j, v) in xi.iter().enumerate() {
        m.set(k, j, v.clone());
    }
    m
}

/// `exp` of a `q^+` element: `I` plus the column `eta` in the upper-right block.
pub fn exp_q_plus<T: MatScalar>(eta: &[T]) -> Mat<T> {
    let k = eta.len();
    let mut m = Mat::identity_like(&eta[0], k + 1);
    for (i, v) in eta.iter().enumerate() {
        m.set(i, k, v.clone());
    }
    m
}

/// Gauss H-part over any scalar ring: given `g = [[a, beta],[gamma, delta]]`
/// with a unit pivot `delta`, the factorization
/// `g = exp(Y) exp(X) diag{A, b}` has `b = delta`, `A = a - beta gamma / delta`,
/// `Y = beta / delta`.  The `X`-part needs `A^{-1}` and is computed only in
/// the full rational decomposition.
pub fn gauss_h_generic<T: MatScalar>(g: &Mat<T>) -> Result<(Vec<T>, Mat<T>, T)> {
    let n = g.rows();
    let k = n - 1;
    let delta = g.at(k, k).clone();
    let dinv = delta
        .mtry_inv()
        .ok_or_else(|| Error::NotInBigCell("Gauss pivot delta is singular".into()))?;
    let y: Vec<T> = (0..k).map(|i| g.at(i, k).mmul(&dinv)).collect();
    let a = Mat::from_fn(k, k, |i, j| g.at(i, j).msub(&y[i].mmul(g.at(k, j))));
    Ok((y, a, delta))
}

/// Full Gauss decomposition `g = exp(Y) exp(X) h` over the rationals.
///
/// Returns `(y, x, h)` with `Y = exp_q_plus(y)`, `X = exp_q_minus(x)`;
/// re-multiplying the three factors reproduces `g` exactly.
pub fn gauss_decompose(g: &GroupElem) -> Result<(Vec<Rat>, Vec<Rat>, HFactor)> {
    let (y, a, b) = gauss_h_generic(g.mat())?;
    let k = g.n() - 1;
    let a_inv = a
        .try_inverse()
        .map_err(|_| Error::NotInBigCell("Gauss A-block is singular".into()))?;
    // x = gamma A^{-1}
    let x: Vec<Rat> = (0..k)
        .map(|j| {
            let mut acc = Rat::zero();
            for l in 0..k {
                acc += g.mat().at(k, l) * a_inv.at(l, j);
            }
            acc
        })
        .collect();
    Ok((y, x, HFactor::new(a, b)?))
}

/// Anti-Gauss decomposition `g = exp(xi) h exp(eta)` over the rationals.
pub fn anti_gauss_decompose(g: &GroupElem) -> Result<(Vec<Rat>, Vec<Rat>, HFactor)> {
    let n = g.n();
    let k = n - 1;
    let a = g.mat().block(0, 0, k, k);
    let a_inv = a
        .try_inverse()
        .map_err(|_| Error::NotInBigCell("anti-Gauss pivot block is singular".into()))?;
    // eta = a^{-1} beta, xi = gamma a^{-1}, b = delta - xi a eta
    let eta: Vec<Rat> = (0..k)
        .map(|i| {
            let mut acc = Rat::zero();
            for l in 0..k {
                acc += a_inv.at(i, l) * g.mat().at(l, k);
            }
            acc
        })
        .collect();
    let xi: Vec<Rat> = (0..k)
        .map(|j| {
            let mut acc = Rat::zero();
            for l in 0..k {
                acc += g.mat().at(k, l) * a_inv.at(l, j);
            }
            acc
        })
        .collect();
    // b = delta - gamma a^{-1} beta = delta - xi . beta
    let b = g.mat().at(k, k).clone()
        - xi.iter()
            .enumerate()
            .map(|(j, x)| x * g.mat().at(j, k))
            .fold(Rat::zero(), |acc, v| acc + v);
    Ok((xi, eta, HFactor::new(a, b)?))
}

/// The redecomposition element `h(xi, eta)`: the H-part of
/// `exp(xi) exp(-eta) = exp(Y) exp(X) h`.
pub fn h_of(p: &PointChart) -> Result<HFactor> {
    let m = exp_q_minus(&p.xi).mul(&exp_q_plus(
        &p.eta.iter().map(|v| -v.clone()).collect::<Vec<_>>(),
    ));
    let (_, a, b) = gauss_h_generic(&m)?;
    HFactor::new(a, b)
}

/// Symbolic `h(xi, eta)` with formal chart coordinates: returns `(A, b)` as
/// symbol-ring matrices, computed by the same elimination as [`h_of`].
pub fn h_of_symbolic(n: usize) -> Result<(Mat<SymbolExpr>, SymbolExpr)> {
    let xi: Vec<SymbolExpr> = (0..n - 1).map(|i| SymbolExpr::xi(n, i)).collect();
    let minus_eta: Vec<SymbolExpr> = (0..n - 1).map(|i| SymbolExpr::eta(n, i).neg()).collect();
    let m = exp_q_minus(&xi).mul(&exp_q_plus(&minus_eta));
    let (_, a, b) = gauss_h_generic(&m)?;
    Ok((a, b))
}

/// `b(h) = det(Ad h)|_{q^+}`, computed from the definition: the adjoint
/// action on `q^+` is `eta -> A eta b^{-1}`, whose matrix on the standard
/// basis is `A / b`.  For `H` inside `SL(n)` this simplifies to `b^{-n}`;
/// the simplification is asserted in tests, not assumed here.
pub fn b_char(h: &HFactor) -> Rat {
    let binv = h.b.clone().recip();
    let ad = h.a.scale(&binv);
    ad.det()
}

/// Symbolic version of [`b_char`] for symbol-ring H-factors.
pub fn b_char_symbolic(a: &Mat<SymbolExpr>, b: &SymbolExpr) -> Result<SymbolExpr> {
    let binv = b.try_inv()?;
    Ok(a.scale(&binv).det())
}

/// `omega_lambda(h) = |b(h)|^{-lambda/n}` for integer `lambda`, exact.
///
/// `b(h) = b^{-n}` for this family, so the value is `|b|^lambda`.
pub fn omega_int(h: &HFactor, lam: i64) -> Result<Rat> {
    debug_assert_eq!(
        b_char(h).abs(),
        rat_pow(&h.b.abs(), -(h.n() as i64)).expect("b is nonzero"),
        "b(h) should equal b^-n in SL(n)"
    );
    rat_pow(&h.b.abs(), lam)
}

/// `omega_lambda(h)` for real `lambda` (double-double).
pub fn omega_dd(h: &HFactor, lam: DD) -> DD {
    dd_pow(crate::numeric::dd_from_rat(&h.b.abs()), lam)
}

// ---------------------------------------------------------------------------
// embedding and differential operators
// ---------------------------------------------------------------------------

/// Embedding of the chart into trace-1 idempotent matrices:
/// `x = (1/N) [[-eta xi, -eta], [xi, 1]]`.
pub fn embed(p: &PointChart) -> Result<MatrixPoint> {
    let nval = p.n_value();
    if nval.is_zero() {
        return Err(Error::EvalOnSingularSet);
    }
    let k = p.xi.len();
    let ninv = nval.recip();
    let mut m = Mat::filled(k + 1, k + 1, Rat::zero());
    for i in 0..k {
        for j in 0..k {
            m.set(i, j, -(&p.eta[i] * &p.xi[j]) * &ninv);
        }
        m.set(i, k, -&p.eta[i] * &ninv);
        m.set(k, i, &p.xi[i] * &ninv);
    }
    m.set(k, k, ninv);
    MatrixPoint::new(m)
}

/// The same embedding with formal coordinates, as a symbol-ring matrix.
pub fn embed_symbolic(n: usize) -> Mat<SymbolExpr> {
    let k = n - 1;
    let ninv = SymbolExpr::n_inv_pow(n, 1);
    Mat::from_fn(k + 1, k + 1, |i, j| {
        if i < k && j < k {
            SymbolExpr::eta(n, i).mul(&SymbolExpr::xi(n, j)).neg().mul(&ninv)
        } else if i < k {
            SymbolExpr::eta(n, i).neg().mul(&ninv)
        } else if j < k {
            SymbolExpr::xi(n, j).mul(&ninv)
        } else {
            ninv.clone()
        }
    })
}

/// Laplace-Beltrami operator in horospherical coordinates:
/// `Delta F = N sum_{ij} (delta_ij - xi_i eta_j) d^2 F / dxi_i deta_j`.
pub fn laplace_beltrami(f: &SymbolExpr) -> SymbolExpr {
    let n = f.n();
    let npoly = SymbolExpr::n_poly(n);
    let mut acc = SymbolExpr::zero(n);
    for i in 0..n - 1 {
        let dfi = f.derive(Var::Xi(i));
        for j in 0..n - 1 {
            let second = dfi.derive(Var::Eta(j));
            if second.is_zero() {
                continue;
            }
            let mut coeff = SymbolExpr::xi(n, i).mul(&SymbolExpr::eta(n, j)).neg();
            if i == j {
                coeff = coeff.add(&SymbolExpr::one(n));
            }
            acc = acc.add(&coeff.mul(&second));
        }
    }
    npoly.mul(&acc)
}

/// Poisson bracket in horospherical coordinates:
/// `{f, g} = N sum_{ij} (delta_ij - xi_j eta_i)
///            (df/deta_i dg/dxi_j - dg/deta_i df/dxi_j)`.
///
/// Each `(i,j)` summand is antisymmetric in `(f, g)` as written.  The index
/// contraction (`eta_i` against `xi_j` in the coefficient) is pinned by the
/// star product: the first-order term of `F1 * F2` is exactly
/// `-N sum (delta_ij - xi_j eta_i) dF1/deta_i dF2/dxi_j`, so this bracket is
/// the one the scaled star commutator converges to.  The correspondence
/// tests check that identity for every basis-letter pair.
pub fn poisson(f: &SymbolExpr, g: &SymbolExpr) -> Result<SymbolExpr> {
    if f.n() != g.n() {
        return Err(Error::DimensionMismatch(format!("n = {} vs n = {}", f.n(), g.n())));
    }
    let n = f.n();
    let npoly = SymbolExpr::n_poly(n);
    let mut acc = SymbolExpr::zero(n);
    for i in 0..n - 1 {
        let df_eta = f.derive(Var::Eta(i));
        let dg_eta = g.derive(Var::Eta(i));
        for j in 0..n - 1 {
            let term = df_eta
                .mul(&g.derive(Var::Xi(j)))
                .sub(&dg_eta.mul(&f.derive(Var::Xi(j))));
            if term.is_zero() {
                continue;
            }
            let mut coeff = SymbolExpr::xi(n, j).mul(&SymbolExpr::eta(n, i)).neg();
            if i == j {
                coeff = coeff.add(&SymbolExpr::one(n));
            }
            acc = acc.add(&coeff.mul(&term));
        }
    }
    Ok(npoly.mul(&acc))
}

/// Invariant measure density `|N|^{-n}` at a rational point.
pub fn measure_density(p: &PointChart) -> Result<Rat> {
    let nval = p.n_value();
    if nval.is_zero() {
        return Err(Error::EvalOnSingularSet);
    }
    rat_pow(&nval.abs(), -(p.n() as i64))
}

/// Symbolic measure density `N^{-n}` on the chart `N > 0`.
pub fn measure_density_symbolic(n: usize) -> SymbolExpr {
    SymbolExpr::n_inv_pow(n, n as u32)
}

/// The Berezin kernel `B(x, y) = c(lambda) |tr(xy)|^lambda` (float path).
pub fn berezin_kernel(x: &MatrixPoint, y: &MatrixPoint, lam: DD) -> Result<DD> {
    if x.n() != y.n() {
        return Err(Error::DimensionMismatch(format!("{} vs {}", x.n(), y.n())));
    }
    let t = x.mat().mul(y.mat()).trace();
    if t.is_zero() {
        return Err(Error::ZeroTrace);
    }
    let c = c_lambda(x.n(), lam)?;
    Ok(c * dd_pow(crate::numeric::dd_from_rat(&t.abs()), lam))
}

/// The breve involution on symbols (`xi <-> eta`); re-exported from the
/// symbol ring since it is geometric in origin.
pub fn breve(f: &SymbolExpr) -> SymbolExpr {
    f.breve()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dd::Dd;
    use crate::rat::{rat, rat_i};

    fn chart(xi: &[(i64, i64)], eta: &[(i64, i64)]) -> PointChart {
        PointChart::new(
            xi.iter().map(|&(p, q)| rat(p, q)).collect(),
            eta.iter().map(|&(p, q)| rat(p, q)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn embed_base_point() {
        let p = chart(&[(0, 1), (0, 1)], &[(0, 1), (0, 1)]);
        assert_eq!(embed(&p).unwrap(), base_point(3));
    }

    #[test]
    fn embed_example_n2() {
        let p = chart(&[(1, 2)], &[(1, 3)]);
        let x = embed(&p).unwrap();
        assert_eq!(x.mat().at(0, 0), &rat(-1, 5));
        assert_eq!(x.mat().at(0, 1), &rat(-2, 5));
        assert_eq!(x.mat().at(1, 0), &rat(3, 5));
        assert_eq!(x.mat().at(1, 1), &rat(6, 5));
        // constructor already verified trace 1 and idempotency
    }

    #[test]
    fn embed_rejects_singular_chart() {
        let p = chart(&[(1, 1)], &[(1, 1)]);
        assert!(matches!(embed(&p), Err(Error::EvalOnSingularSet)));
    }

    #[test]
    fn gauss_identity() {
        let g = GroupElem::identity(3);
        let (y, x, h) = gauss_decompose(&g).unwrap();
        assert!(y.iter().all(|v| v.is_zero()));
        assert!(x.iter().all(|v| v.is_zero()));
        assert!(h.is_identity());
    }

    #[test]
    fn gauss_round_trip() {
        // hand-picked SL(3, Q) element with nonzero pivot
        let g = GroupElem::new(Mat::from_rows(vec![
            vec![rat_i(1), rat_i(2), rat_i(0)],
            vec![rat_i(0), rat_i(1), rat_i(3)],
            vec![rat_i(1), rat_i(2), rat_i(1)],
        ]))
        .unwrap();
        let (y, x, h) = gauss_decompose(&g).unwrap();
        let back = exp_q_plus(&y).mul(&exp_q_minus(&x)).mul(&h.embed());
        assert_eq!(&back, g.mat());
        let (xi, eta, h2) = anti_gauss_decompose(&g).unwrap();
        let back2 = exp_q_minus(&xi).mul(&h2.embed()).mul(&exp_q_plus(&eta));
        assert_eq!(&back2, g.mat());
    }

    #[test]
    fn gauss_not_in_big_cell() {
        // delta = 0 blocks the Gauss decomposition
        let g = GroupElem::new(Mat::from_rows(vec![
            vec![rat_i(0), rat_i(1)],
            vec![rat_i(-1), rat_i(0)],
        ]))
        .unwrap();
        assert!(matches!(gauss_decompose(&g), Err(Error::NotInBigCell(_))));
    }

    #[test]
    fn h_of_examples() {
        let p = chart(&[(0, 1)], &[(0, 1)]);
        assert!(h_of(&p).unwrap().is_identity());
        // h-factor of exp(xi) exp(-eta): A = I + eta xi / N, b = N
        let p = chart(&[(1, 2), (1, 3)], &[(1, 5), (1, 7)]);
        let h = h_of(&p).unwrap();
        let nval = p.n_value();
        assert_eq!(h.b, nval);
        for i in 0..2 {
            for j in 0..2 {
                let mut want = &p.eta[i] * &p.xi[j] / nval.clone();
                if i == j {
                    want += Rat::one();
                }
                assert_eq!(h.a.at(i, j), &want);
            }
        }
    }

    #[test]
    fn b_char_matches_shortcut() {
        // b(h) computed from det(Ad h)|q+ equals det(A) b^{-(n-1)} and b^{-n}
        let p = chart(&[(1, 2), (-1, 3)], &[(2, 5), (1, 4)]);
        let h = h_of(&p).unwrap();
        let n = h.n() as i64;
        let from_def = b_char(&h);
        let shortcut = h.a.det() * rat_pow(&h.b, -(n - 1)).unwrap();
        assert_eq!(from_def, shortcut);
        assert_eq!(from_def, rat_pow(&h.b, -n).unwrap());
        // and b = N gives b(h(xi,eta)) = N^{-n}
        assert_eq!(from_def, rat_pow(&p.n_value(), -n).unwrap());
    }

    #[test]
    fn b_char_symbolic_is_n_to_minus_n() {
        for n in 2..=4usize {
            let (a, b) = h_of_symbolic(n).unwrap();
            let bc = b_char_symbolic(&a, &b).unwrap();
            assert_eq!(bc, SymbolExpr::n_inv_pow(n, n as u32), "n = {n}");
            assert_eq!(b, SymbolExpr::n_poly(n), "b-part must be N, n = {n}");
        }
    }

    #[test]
    fn omega_examples() {
        let h = HFactor::identity(4);
        assert_eq!(b_char(&h), rat_i(1));
        assert_eq!(omega_int(&h, 5).unwrap(), rat_i(1));
        let p = chart(&[(1, 2)], &[(1, 3)]);
        let h = h_of(&p).unwrap();
        // omega_lambda(h(xi,eta)) = N^lambda on the chart N > 0
        assert_eq!(omega_int(&h, 3).unwrap(), rat_pow(&p.n_value(), 3).unwrap());
    }

    #[test]
    fn laplacian_examples() {
        let n = 3;
        assert!(laplace_beltrami(&SymbolExpr::one(n)).is_zero());
        assert!(laplace_beltrami(&SymbolExpr::xi(n, 0)).is_zero());
        // Delta(xi1 eta1) = N (1 - xi1 eta1)
        let f = SymbolExpr::xi(n, 0).mul(&SymbolExpr::eta(n, 0));
        let want = SymbolExpr::n_poly(n).mul(&SymbolExpr::one(n).sub(&f));
        assert_eq!(laplace_beltrami(&f), want);
    }

    #[test]
    fn laplacian_eigenfunction_lemma() {
        // Delta (xi1^m / N^m) = m (m + n - 1) xi1^m / N^m
        for n in 2..=4usize {
            for m in 1..=3u32 {
                let f = SymbolExpr::xi(n, 0).pow(m).mul(&SymbolExpr::n_inv_pow(n, m));
                let mu = (m as i64) * (m as i64 + n as i64 - 1);
                assert_eq!(laplace_beltrami(&f), f.mul_rat(&rat_i(mu)), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn poisson_examples() {
        let n = 3;
        let f = SymbolExpr::xi(n, 0).mul(&SymbolExpr::eta(n, 1));
        assert!(poisson(&f, &f).unwrap().is_zero());
        // {xi1, eta1} = -N (1 - xi1 eta1)
        let got = poisson(&SymbolExpr::xi(n, 0), &SymbolExpr::eta(n, 0)).unwrap();
        let want = SymbolExpr::n_poly(n)
            .mul(&SymbolExpr::one(n).sub(&SymbolExpr::xi(n, 0).mul(&SymbolExpr::eta(n, 0))))
            .neg();
        assert_eq!(got, want);
        // antisymmetry on an asymmetric pair
        let g = SymbolExpr::eta(n, 0).pow(2);
        let fg = poisson(&f, &g).unwrap();
        let gf = poisson(&g, &f).unwrap();
        assert_eq!(fg, gf.neg());
    }

    #[test]
    fn measure_examples() {
        let p = chart(&[(0, 1)], &[(0, 1)]);
        assert_eq!(measure_density(&p).unwrap(), rat_i(1));
        let p = chart(&[(1, 2)], &[(1, 3)]);
        assert_eq!(measure_density(&p).unwrap(), rat(36, 25));
        assert_eq!(measure_density_symbolic(3).n_exp(), 3);
    }

    #[test]
    fn berezin_kernel_at_diagonal() {
        // tr(x^2) = tr(x) = 1, so B(x,x) = c(lambda)
        let p = chart(&[(1, 2), (1, 5)], &[(1, 3), (1, 7)]);
        let x = embed(&p).unwrap();
        let lam = Dd::from_f64(-4.5);
        let b = berezin_kernel(&x, &x, lam).unwrap();
        let c = c_lambda(3, lam).unwrap();
        assert!(crate::numeric::rel_dev(b, c) < 1e-28);
    }

    #[test]
    fn berezin_kernel_conjugation_invariance() {
        let p = chart(&[(1, 2), (1, 5)], &[(1, 3), (1, 7)]);
        let q = chart(&[(1, 4), (-1, 3)], &[(2, 3), (1, 2)]);
        let x = embed(&p).unwrap();
        let y = embed(&q).unwrap();
        let g = GroupElem::new(Mat::from_rows(vec![
            vec![rat_i(1), rat_i(2), rat_i(0)],
            vec![rat_i(0), rat_i(1), rat_i(3)],
            vec![rat_i(0), rat_i(0), rat_i(1)],
        ]))
        .unwrap();
        // trace cyclicity makes the invariance exact at the rational level
        let t1 = x.mat().mul(y.mat()).trace();
        let xg = x.conjugate(&g).unwrap();
        let yg = y.conjugate(&g).unwrap();
        let t2 = xg.mat().mul(yg.mat()).trace();
        assert_eq!(t1, t2);
    }
}
