//! Small dense matrices over an arbitrary commutative ring.
//!
//! The same block-elimination code runs over exact rationals, over the
//! symbol ring (where only `c * N^j` is invertible) and over `f64` for the
//! finite-difference oracles.  Matrices here are tiny (`n <= 5`), so
//! cofactor determinants and Gauss-Jordan inversion are entirely adequate.

use crate::error::{Error, Result};
use crate::lambda::LambdaScalar;
use crate::rat::Rat;
use crate::symbol::SymbolExpr;

/// Ring element usable as a matrix scalar.  `zlike`/`olike` produce the
/// additive and multiplicative units carrying the same shape parameters as
/// `self` (a `SymbolExpr` needs its `n` to build a unit).
pub trait MatScalar: Clone {
    fn zlike(&self) -> Self;
    fn olike(&self) -> Self;
    fn madd(&self, o: &Self) -> Self;
    fn msub(&self, o: &Self) -> Self;
    fn mmul(&self, o: &Self) -> Self;
    fn mneg(&self) -> Self;
    fn mis_zero(&self) -> bool;
    fn mtry_inv(&self) -> Option<Self>;
}

impl MatScalar for Rat {
    fn zlike(&self) -> Self {
        num_traits::Zero::zero()
    }
    fn olike(&self) -> Self {
        num_traits::One::one()
    }
    fn madd(&self, o: &Self) -> Self {
        self + o
    }
    fn msub(&self, o: &Self) -> Self {
        self - o
    }
    fn mmul(&self, o: &Self) -> Self {
        self * o
    }
    fn mneg(&self) -> Self {
        -self.clone()
    }
    fn mis_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn mtry_inv(&self) -> Option<Self> {
        if self.mis_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl MatScalar for SymbolExpr {
    fn zlike(&self) -> Self {
        SymbolExpr::zero(self.n())
    }
    fn olike(&self) -> Self {
        SymbolExpr::one(self.n())
    }
    fn madd(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn msub(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn mmul(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn mneg(&self) -> Self {
        self.neg()
    }
    fn mis_zero(&self) -> bool {
        self.is_zero()
    }
    fn mtry_inv(&self) -> Option<Self> {
        self.try_inv().ok()
    }
}

impl MatScalar for LambdaScalar {
    fn zlike(&self) -> Self {
        LambdaScalar::zero()
    }
    fn olike(&self) -> Self {
        LambdaScalar::one()
    }
    fn madd(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn msub(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn mmul(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn mneg(&self) -> Self {
        self.neg()
    }
    fn mis_zero(&self) -> bool {
        self.is_zero()
    }
    fn mtry_inv(&self) -> Option<Self> {
        self.inv().ok()
    }
}

impl MatScalar for f64 {
    fn zlike(&self) -> Self {
        0.0
    }
    fn olike(&self) -> Self {
        1.0
    }
    fn madd(&self, o: &Self) -> Self {
        self + o
    }
    fn msub(&self, o: &Self) -> Self {
        self - o
    }
    fn mmul(&self, o: &Self) -> Self {
        self * o
    }
    fn mneg(&self) -> Self {
        -self
    }
    fn mis_zero(&self) -> bool {
        *self == 0.0
    }
    fn mtry_inv(&self) -> Option<Self> {
        if *self == 0.0 {
            None
        } else {
            Some(1.0 / self)
        }
    }
}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: MatScalar> Mat<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, v: T) -> Self {
        Mat { rows, cols, data: vec![v; rows * cols] }
    }

    /// `k x k` identity; `sample` supplies the ring units.
    pub fn identity_like(sample: &T, k: usize) -> Self {
        Mat::from_fn(k, k, |i, j| if i == j { sample.olike() } else { sample.zlike() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn sample(&self) -> &T {
        &self.data[0]
    }

    pub fn mul(&self, o: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, o.rows, "matrix product shape mismatch");
        Mat::from_fn(self.rows, o.cols, |i, j| {
            let mut acc = self.data[0].zlike();
            for k in 0..self.cols {
                acc = acc.madd(&self.at(i, k).mmul(o.at(k, j)));
            }
            acc
        })
    }

    pub fn add(&self, o: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| self.at(i, j).madd(o.at(i, j)))
    }

    pub fn sub(&self, o: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| self.at(i, j).msub(o.at(i, j)))
    }

    pub fn scale(&self, s: &T) -> Mat<T> {
        Mat::from_fn(self.rows, self.cols, |i, j| self.at(i, j).mmul(s))
    }

    pub fn neg(&self) -> Mat<T> {
        Mat::from_fn(self.rows, self.cols, |i, j| self.at(i, j).mneg())
    }

    pub fn transpose(&self) -> Mat<T> {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn trace(&self) -> T {
        assert_eq!(self.rows, self.cols);
        let mut acc = self.data[0].zlike();
        for i in 0..self.rows {
            acc = acc.madd(self.at(i, i));
        }
        acc
    }

    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> Mat<T> {
        Mat::from_fn(h, w, |i, j| self.at(r0 + i, c0 + j).clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Mat<T>) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.at(i, j).clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.mis_zero())
    }

    /// Cofactor determinant: fine for the `n <= 5` matrices of this crate
    /// and needs no division, so it works over the symbol ring.
    pub fn det(&self) -> T {
        assert_eq!(self.rows, self.cols);
        match self.rows {
            0 => self.data.first().map_or_else(|| panic!("empty matrix"), |v| v.olike()),
            1 => self.data[0].clone(),
            _ => {
                let mut acc = self.data[0].zlike();
                for j in 0..self.cols {
                    if self.at(0, j).mis_zero() {
                        continue;
                    }
                    let minor = Mat::from_fn(self.rows - 1, self.cols - 1, |r, c| {
                        self.at(r + 1, if c < j { c } else { c + 1 }).clone()
                    });
                    let term = self.at(0, j).mmul(&minor.det());
                    acc = if j % 2 == 0 { acc.madd(&term) } else { acc.msub(&term) };
                }
                acc
            }
        }
    }

    /// Gauss-Jordan inverse.  Pivots must be units of the ring; over a field
    /// this fails only for singular input.
    pub fn try_inverse(&self) -> Result<Mat<T>> {
        assert_eq!(self.rows, self.cols);
        let k = self.rows;
        let mut a = self.clone();
        let mut inv = Mat::identity_like(&self.data[0], k);
        for col in 0..k {
            // find a unit pivot in this column
            let mut pivot = None;
            for row in col..k {
                if let Some(pinv) = a.at(row, col).mtry_inv() {
                    pivot = Some((row, pinv));
                    break;
                }
            }
            let (prow, pinv) = pivot.ok_or_else(|| {
                Error::NotInvertible(format!("no unit pivot in column {col}"))
            })?;
            if prow != col {
                for j in 0..k {
                    let x = a.at(prow, j).clone();
                    let y = a.at(col, j).clone();
                    a.set(prow, j, y);
                    a.set(col, j, x);
                    let x = inv.at(prow, j).clone();
                    let y = inv.at(col, j).clone();
                    inv.set(prow, j, y);
                    inv.set(col, j, x);
                }
            }
            for j in 0..k {
                a.set(col, j, a.at(col, j).mmul(&pinv));
                inv.set(col, j, inv.at(col, j).mmul(&pinv));
            }
            for row in 0..k {
                if row == col || a.at(row, col).mis_zero() {
                    continue;
                }
                let f = a.at(row, col).clone();
                for j in 0..k {
                    a.set(row, j, a.at(row, j).msub(&f.mmul(a.at(col, j))));
                    inv.set(row, j, inv.at(row, j).msub(&f.mmul(inv.at(col, j))));
                }
            }
        }
        Ok(inv)
    }
}

/// Parse `n*n` rationals (row-major) into a matrix.
pub fn mat_from_rationals(n: usize, vals: Vec<Rat>) -> Result<Mat<Rat>> {
    if vals.len() != n * n {
        return Err(Error::InvalidInput(format!(
            "expected {} entries for a {n}x{n} matrix, got {}",
            n * n,
            vals.len()
        )));
    }
    Ok(Mat { rows: n, cols: n, data: vals })
}

/// Row-major JSON encoding with rationals as strings.
pub fn mat_to_json(m: &Mat<Rat>) -> serde_json::Value {
    let rows: Vec<Vec<String>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| crate::rat::rat_str(m.at(i, j))).collect())
        .collect();
    serde_json::to_value(rows).expect("matrix serialization cannot fail")
}
