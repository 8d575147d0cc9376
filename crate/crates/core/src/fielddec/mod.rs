//! Factorization and primary decomposition over `ℚ` and `𝔽ₚ`.

mod factor;
mod fpx;
mod gtz;
mod zerodim;
mod zx;

pub use factor::{
    factor, factor_univariate_fp, factor_univariate_q, poly_gcd, poly_lcm, squarefree_part, FactorField, FactorList,
};
pub use gtz::{min_ass_field, primdec_field, zerodim_primdec, FieldComponent};

#[cfg(test)]
mod tests;
