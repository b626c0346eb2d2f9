//! Seeded random rational inputs for the verification suites.
//!
//! Rationals are drawn with small numerators and denominators (<= 8) so that
//! every downstream computation stays exact and fast; singular configurations
//! (vanishing `N`, pivots, traces) are rejected and redrawn.  The same seed
//! always produces the same sample stream.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geometry::{GroupElem, PointChart};
use crate::lie::{sl_basis, LieElem};
use crate::matrix::Mat;
use crate::rat::{rat, Rat};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn index(&mut self, len: usize) -> usize {
        self.rng.gen_range(0..len)
    }

    /// Numerator in [-8, 8], denominator in [1, 8].
    pub fn rat(&mut self) -> Rat {
        rat(self.int(-8, 8), self.int(1, 8))
    }

    pub fn nonzero_rat(&mut self) -> Rat {
        loop {
            let r = self.rat();
            if !num_traits::Zero::is_zero(&r) {
                return r;
            }
        }
    }

    /// Smaller range for matrix entries, keeping products tame.
    pub fn small_rat(&mut self) -> Rat {
        rat(self.int(-3, 3), self.int(1, 4))
    }

    pub fn rat_vec(&mut self, len: usize) -> Vec<Rat> {
        (0..len).map(|_| self.rat()).collect()
    }

    /// Chart point with `N != 0`.
    pub fn chart(&mut self, n: usize) -> PointChart {
        loop {
            let p = PointChart::new(self.rat_vec(n - 1), self.rat_vec(n - 1))
                .expect("lengths match");
            if !num_traits::Zero::is_zero(&p.n_value()) {
                return p;
            }
        }
    }

    /// Chart point with `N > 0` (the chart where absolute values drop out).
    pub fn chart_positive(&mut self, n: usize) -> PointChart {
        loop {
            let p = self.chart(n);
            if num_traits::Signed::is_positive(&p.n_value()) {
                return p;
            }
        }
    }

    /// Random element of `SL(n, Q)` as a product of elementary shears
    /// `I + c E_{ij}`; determinant is exactly 1 by construction.
    pub fn group_elem(&mut self, n: usize, shears: usize) -> GroupElem {
        let mut m = Mat::identity_like(&Rat::from(num_bigint::BigInt::from(0)), n);
        for _ in 0..shears {
            let i = self.index(n);
            let j = loop {
                let j = self.index(n);
                if j != i {
                    break j;
                }
            };
            let mut shear = Mat::identity_like(&Rat::from(num_bigint::BigInt::from(0)), n);
            shear.set(i, j, self.small_rat());
            m = m.mul(&shear);
        }
        GroupElem::new(m).expect("products of shears have det 1")
    }

    /// Random rational combination of the `sl(n)` basis.
    pub fn lie_elem(&mut self, n: usize) -> LieElem {
        let basis = sl_basis(n);
        let mut acc = basis[0].1.scale(&self.small_rat());
        for (_, x) in basis.iter().skip(1) {
            acc = acc.add(&x.scale(&self.small_rat()));
        }
        acc
    }
}
