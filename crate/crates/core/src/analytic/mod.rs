//! Exact formal power series identities and the numeric side: infinite products,
//! weight functions and integrals.

mod numeric;
mod series;

pub use numeric::{
    cheb_t, cheb_u, integrate, integrate_against, jacobi_tail_residual, product_gf_check, q_poch_complex,
    q_poch_q, q_poch_real, q_rodrigues_iterated, q_rodrigues_pointwise, quadrature_moment, rodrigues_carrier,
    weight_density, wrapped_density, wrapped_gauss_moment, Measure, NumericConfig, ProductCheck, ProductGf,
    MAX_SERIES_TERMS, SERIES_TERMS,
};
pub use series::{
    big_q_exp, finite_jacobi_check, finite_jacobi_sides, q_exp_reciprocal, q_exp_series, series_identity_check,
    small_q_exp, w_value, SeriesId, SeriesVerdict, TruncSeries,
};
