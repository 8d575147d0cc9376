//! Primary decomposition of ideals in `ℤ[x₁,…,xₙ]`.
//!
//! The crate is layered bottom-up:
//!
//! * [`numth`] integer arithmetic, primality and factorization of the
//!   integer contraction `I ∩ ℤ`;
//! * [`poly`] sparse multivariate polynomials over `ℤ`, `ℚ` and `𝔽ₚ` with
//!   degrevlex, lex, block and elimination orderings;
//! * [`gb`] Buchberger's algorithm over fields and strong Gröbner bases
//!   over `ℤ`;
//! * [`ideals`] intersection, quotient, saturation and contraction;
//! * [`fielddec`] factorization and GTZ primary decomposition over `ℚ` and
//!   `𝔽ₚ`;
//! * [`zdec`] the decomposition over `ℤ` itself: per-prime splitting,
//!   separators, extraction of primary components and the remainder
//!   recursion, run on a worker pool.

pub mod error;
pub mod fielddec;
pub mod gb;
pub mod ideals;
pub mod numth;
pub mod poly;
pub mod zdec;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
