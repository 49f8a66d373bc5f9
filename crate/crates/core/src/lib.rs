//! Matrix k-special functions.
//!
//! The centre of the crate is the `(r+1)R(s,k)` matrix series
//!
//! ```text
//! R(z) = sum_l z^l/l! (A)_{l,k} prod_i (P_i)_{l,k} [prod_j (Q_j)_{l,k}]^{-1} Gamma_k^{-1}(lB + C)
//! ```
//!
//! together with the k-Gamma calculus it is built from, the fractional
//! k-operators and transforms that act on it, and a catalog that checks its
//! identities numerically on random commuting parameter families.

pub mod cli;
pub mod eigen;
pub mod error;
pub mod gamma;
pub mod kgamma;
pub mod matfun;
pub mod matrix;
pub mod operators;
pub mod quadrature;
pub mod rrsk;
pub mod verify;

pub use error::{Error, Result};
pub use matrix::ComplexMatrix;
pub use num_complex::Complex64;
