//! Explicit n-descent on elliptic curves with split n-torsion.

pub mod algebra;
pub mod curve;
pub mod descent;
pub mod error;
pub mod field;
pub mod geometry;
pub mod io;
pub mod verify;

pub use error::{Error, Result};
