//! `sl(n, Q)`: tracefree matrices, the documented basis enumeration, words in
//! the universal enveloping algebra, and a small float matrix exponential
//! for the finite-difference oracles.
//!
//! Basis order (stable across the crate and the CLI word language):
//! elementary matrices `E_{ij}`, `i != j`, enumerated row-major, followed by
//! the diagonal tracefree `H_k = E_{kk} - E_{k+1,k+1}`, `k = 1..n-1`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::rat::{rat_i, Rat};

/// Element of `sl(n, Q)`; block parts follow the `(n-1)+1` partition.
#[derive(Debug, Clone, PartialEq)]
pub struct LieElem {
    mat: Mat<Rat>,
}

impl LieElem {
    pub fn new(mat: Mat<Rat>) -> Result<Self> {
        if mat.rows() != mat.cols() {
            return Err(Error::InvalidInput("Lie element must be square".into()));
        }
        if !mat.trace().is_zero() {
            return Err(Error::InvalidInput("Lie element must be tracefree".into()));
        }
        Ok(LieElem { mat })
    }

    pub fn mat(&self) -> &Mat<Rat> {
        &self.mat
    }

    pub fn n(&self) -> usize {
        self.mat.rows()
    }

    /// Upper-left `(n-1) x (n-1)` block.
    pub fn a0(&self) -> Mat<Rat> {
        self.mat.block(0, 0, self.n() - 1, self.n() - 1)
    }

    /// Upper-right column, as a vector.
    pub fn beta0(&self) -> Vec<Rat> {
        let k = self.n() - 1;
        (0..k).map(|i| self.mat.at(i, k).clone()).collect()
    }

    /// Lower-left row, as a vector.
    pub fn gamma0(&self) -> Vec<Rat> {
        let k = self.n() - 1;
        (0..k).map(|j| self.mat.at(k, j).clone()).collect()
    }

    /// Lower-right scalar.
    pub fn delta0(&self) -> Rat {
        let k = self.n() - 1;
        self.mat.at(k, k).clone()
    }

    pub fn add(&self, o: &LieElem) -> LieElem {
        LieElem { mat: self.mat.add(&o.mat) }
    }

    pub fn neg(&self) -> LieElem {
        LieElem { mat: self.mat.neg() }
    }

    pub fn scale(&self, c: &Rat) -> LieElem {
        LieElem { mat: self.mat.scale(c) }
    }
}

/// Matrix commutator `[X, Y] = XY - YX` (again tracefree).
pub fn bracket(x: &LieElem, y: &LieElem) -> LieElem {
    LieElem { mat: x.mat.mul(&y.mat).sub(&y.mat.mul(&x.mat)) }
}

/// `E_{ij}` (1-based indices), `i != j`.
pub fn elementary(n: usize, i: usize, j: usize) -> Result<LieElem> {
    if i == j || i == 0 || j == 0 || i > n || j > n {
        return Err(Error::InvalidInput(format!("E{i}{j} is not an off-diagonal basis element")));
    }
    let mut m = Mat::filled(n, n, Rat::zero());
    m.set(i - 1, j - 1, Rat::one());
    Ok(LieElem { mat: m })
}

/// `H_k = E_{kk} - E_{k+1,k+1}` (1-based `k < n`).
pub fn cartan(n: usize, k: usize) -> Result<LieElem> {
    if k == 0 || k >= n {
        return Err(Error::InvalidInput(format!("H{k} out of range for sl({n})")));
    }
    let mut m = Mat::filled(n, n, Rat::zero());
    m.set(k - 1, k - 1, Rat::one());
    m.set(k, k, rat_i(-1));
    Ok(LieElem { mat: m })
}

/// The full basis in the documented order, with display labels.
pub fn sl_basis(n: usize) -> Vec<(String, LieElem)> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                out.push((format!("E{i}{j}"), elementary(n, i, j).expect("valid indices")));
            }
        }
    }
    for k in 1..n {
        out.push((format!("H{k}"), cartan(n, k).expect("valid index")));
    }
    out
}

/// A `Q`-linear combination of ordered words in `sl(n)` elements; the empty
/// word is the identity of `Env(g)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EnvElem {
    n: usize,
    terms: Vec<(Rat, Vec<LieElem>)>,
}

impl EnvElem {
    pub fn one(n: usize) -> Self {
        EnvElem { n, terms: vec![(Rat::one(), vec![])] }
    }

    pub fn zero(n: usize) -> Self {
        EnvElem { n, terms: vec![] }
    }

    pub fn letter(x: LieElem) -> Self {
        EnvElem { n: x.n(), terms: vec![(Rat::one(), vec![x])] }
    }

    pub fn word(letters: Vec<LieElem>) -> Result<Self> {
        let n = letters.first().map(|x| x.n()).ok_or_else(|| {
            Error::InvalidInput("use EnvElem::one for the empty word".into())
        })?;
        if letters.iter().any(|x| x.n() != n) {
            return Err(Error::DimensionMismatch("mixed sl(n) sizes in a word".into()));
        }
        Ok(EnvElem { n, terms: vec![(Rat::one(), letters)] })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[(Rat, Vec<LieElem>)] {
        &self.terms
    }

    pub fn add(&self, o: &EnvElem) -> EnvElem {
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().cloned());
        EnvElem { n: self.n, terms }.compact()
    }

    pub fn scale(&self, c: &Rat) -> EnvElem {
        if c.is_zero() {
            return EnvElem::zero(self.n);
        }
        EnvElem {
            n: self.n,
            terms: self.terms.iter().map(|(r, w)| (r * c, w.clone())).collect(),
        }
    }

    /// Concatenation product: `(sum c_a w_a)(sum d_b v_b) = sum c_a d_b w_a v_b`.
    pub fn mul(&self, o: &EnvElem) -> EnvElem {
        let mut terms = Vec::new();
        for (c, w) in &self.terms {
            for (d, v) in &o.terms {
                let mut word = w.clone();
                word.extend(v.iter().cloned());
                terms.push((c * d, word));
            }
        }
        EnvElem { n: self.n, terms }.compact()
    }

    /// The antiautomorphism induced by `g -> g^{-1}`: reverse each word and
    /// negate each letter.  The letter signs are folded into the coefficient
    /// (`(-1)^len`), so `(XY)^vee` is stored as the word `YX`.
    pub fn vee(&self) -> EnvElem {
        EnvElem {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(c, w)| {
                    let word: Vec<LieElem> = w.iter().rev().cloned().collect();
                    let sign = if w.len() % 2 == 0 { c.clone() } else { -c.clone() };
                    (sign, word)
                })
                .collect(),
        }
    }

    /// `ad L` extended to words by the Leibniz rule: the sum over positions
    /// of the word with that letter replaced by `[L, letter]`.
    pub fn ad_applied(&self, l: &LieElem) -> EnvElem {
        let mut terms = Vec::new();
        for (c, w) in &self.terms {
            for pos in 0..w.len() {
                let mut word = w.clone();
                word[pos] = bracket(l, &w[pos]);
                terms.push((c.clone(), word));
            }
        }
        EnvElem { n: self.n, terms }.compact()
    }

    /// Longest word length among the terms.
    pub fn max_word_len(&self) -> usize {
        self.terms.iter().map(|(_, w)| w.len()).max().unwrap_or(0)
    }

    fn compact(mut self) -> EnvElem {
        self.terms.retain(|(c, _)| !c.is_zero());
        self
    }
}

/// Float matrix exponential by plain Taylor series; meant for `exp(tX)` with
/// small `t` in the finite-difference oracles, where ~25 terms reach machine
/// precision.
pub fn matrix_exp_f64(x: &Mat<f64>, t: f64) -> Mat<f64> {
    let n = x.rows();
    let scaled = x.scale(&t);
    let mut acc = Mat::identity_like(&0.0f64, n);
    let mut term = Mat::identity_like(&0.0f64, n);
    for j in 1..=25 {
        term = term.mul(&scaled).scale(&(1.0 / j as f64));
        acc = acc.add(&term);
    }
    acc
}

/// Rational matrix as f64 (for oracle paths only).
pub fn mat_to_f64(m: &Mat<Rat>) -> Mat<f64> {
    Mat::from_fn(m.rows(), m.cols(), |i, j| crate::rat::rat_f64(m.at(i, j)))
}
