//! Monoid objects in strict monoidal categories and their colimits.
//!
//! Two concrete backends are provided: finite sets under cartesian product
//! ([`finset::FinSet`]), where monoids are finite monoids, and finitely
//! presented abelian groups under the tensor product
//! ([`finab::FinAb`]), where monoids are rings.

pub mod catalog;
pub mod category;
pub mod error;
pub mod finab;
pub mod finset;
pub mod free;
pub mod lifting;
mod json_int;
pub mod linalg;
pub mod monoid;
pub mod schema;

pub use error::{Error, Result};
