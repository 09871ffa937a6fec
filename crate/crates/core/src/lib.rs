//! Exact normal forms, PBW checking, classification and construction for
//! quadratic algebras with relations
//! `g_ab D_a D_b - g_ba D_b D_a = x_b D_a - x_a D_b`.

pub mod classify;
pub mod cli;
pub mod construct;
pub mod error;
pub mod grid;
pub mod poly;
pub mod presentation;
pub mod report;
pub mod rewrite;
pub mod scalar;
pub mod spec_file;
pub mod transform;

pub use error::{Error, Result};
pub use poly::{PbwMonomial, PbwPolynomial, Word};
pub use presentation::Presentation;
pub use scalar::Scalar;
