//! Exact truncated `q`-expansions for the holomorphic identities: `η`, the
//! four `ϑ_ab` in sum and product form, the triple product and the
//! four-theta product.

mod coeff;
mod forms;
mod series;

pub use coeff::{Cyclo8, LaurentZ};
pub use forms::{
    compare, eta_series, product_identity_check, product_identity_variant, shift_law_checks, theta_ab_series,
    triple_product_check, IdentityReport, ProductVariant, ThetaForm,
};
pub use series::{order, QZSeries, GRID};

#[cfg(test)]
mod tests;
