//! Sparse multivariate polynomials over `ℤ`, `ℚ` and `𝔽ₚ`.

mod coeff;
mod maps;
mod monomial;
mod ordering;
mod parse;
mod polynomial;

pub use coeff::{Coeff, Field};
pub use maps::*;
pub use monomial::Monomial;
pub use ordering::{Inner, MonomialOrdering, VarMask};
pub use parse::{is_integral, parse_polynomial, ParseError};
pub use polynomial::{PolyDisplay, Polynomial, Term};
