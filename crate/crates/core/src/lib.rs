//! Pointwise curvature of hypersurfaces in semi-Riemannian space forms.

pub mod catalog;
pub mod classify;
pub mod derived;
pub mod error;
pub mod identities;
pub mod model;
pub mod sampling;
pub mod tensor;

pub use error::{Error, Result};

/// Default relative tolerance for membership flags and identity checks.
pub const DEFAULT_TOL: f64 = 1e-9;
