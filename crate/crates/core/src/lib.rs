//! Exact-arithmetic construction of Hermite, q-Hermite, Rogers-Szego, Fibonacci,
//! Lucas and Chebyshev polynomial families, symbolic verification of their
//! recurrences, inverse relations, moments and operator identities, and numeric
//! checks of the associated weight functions and infinite products.

pub mod analytic;
pub mod circle;
pub mod qcore;
pub mod error;
pub mod families;
pub mod qoperators;
pub mod transforms;
pub mod suites;
pub mod umbral;

pub use error::{Error, Result};
