//! Exact computations in affine Hecke algebras and the lowest-cell
//! asymptotic ring `J_0`.

pub mod affine_weyl;
pub mod error;
pub mod hecke;
pub mod j0;
pub mod laurent;
pub mod repring;
pub mod rootdata;
pub mod steinberg;

pub use error::{Error, Result};
