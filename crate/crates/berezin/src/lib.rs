//! Exact-arithmetic Berezin polynomial quantization on the rank-one
//! para-Hermitian symmetric spaces `SL(n,R)/GL(n-1,R)`, plus the group
//! quantization of `SL(2,R)`.
//!
//! Symbols, kernels and residuals live in the localized ring
//! `Q(lambda)[xi, eta][N^{-1}]` with `N = 1 - xi eta`; every identity of the
//! theory (linear-symbol theorem, star/word consistency, correspondence
//! principle, Berezin eigenvalues, overgroup factorization, the `SL(2,R)`
//! closed forms) is checked either as an exact polynomial/rational-function
//! equality or numerically at exact rational points.  The only floating
//! point in the crate is double-double arithmetic for the Gamma-function
//! oracles and signed powers.
//!
//! A covariant symbol in three lines:
//!
//! ```
//! use berezin::{lie, quant};
//!
//! // pi^-_lambda(E12) on SL(2,R)/GL(1,R) has covariant symbol lambda*xi/N
//! let word = lie::EnvElem::letter(lie::elementary(2, 1, 2)?);
//! assert_eq!(quant::covariant_symbol(&word).to_string(), "λ·ξ/N");
//! # Ok::<(), berezin::Error>(())
//! ```
//!
//! The star product is operator composition on symbols, exactly:
//!
//! ```
//! use berezin::{lie, quant};
//!
//! let e = lie::EnvElem::letter(lie::elementary(3, 1, 3)?);
//! let h = lie::EnvElem::letter(lie::cartan(3, 1)?);
//! assert_eq!(quant::star(&e, &h), quant::covariant_symbol(&e.mul(&h)));
//! # Ok::<(), berezin::Error>(())
//! ```
//!
//! And the Berezin transform acts on exact `Delta`-eigenfunctions by its
//! Gamma-ratio eigenvalue, as rational functions of `lambda`:
//!
//! ```
//! use berezin::quant::{berezin_eigenvalue, berezin_transform, delta_eigenfunction};
//!
//! let f = delta_eigenfunction(3, 1)?; // eigenvalue 1*(1+3-1) = 3
//! let transformed = berezin_transform(&f)?;
//! assert_eq!(transformed, f.mul_scalar(&berezin_eigenvalue(1, 3)));
//! assert_eq!(berezin_eigenvalue(1, 3).to_string(), "λ/(λ + 3)");
//! # Ok::<(), berezin::Error>(())
//! ```
//!
//! The accompanying book (`book/`) walks through each module; its code
//! blocks are included from `tests/book_snippets.rs` and run under
//! `cargo test`.

pub mod dd;
pub mod diffop;
pub mod error;
pub mod geometry;
pub mod lie;
pub mod lambda;
pub mod matrix;
pub mod numeric;
pub mod parse;
pub mod quant;
pub mod rat;
pub mod repn;
pub mod sample;
pub mod series;
pub mod sl2;
pub mod symbol;
pub mod verify;

pub use error::{Error, Result};
pub use rat::Rat;
pub use symbol::SymbolExpr;
