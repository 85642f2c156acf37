//! Twisted Alexander polynomials of finitely presented groups, computed in
//! exact arithmetic, and the fibering and ribbon-concordance obstructions
//! built on them.

pub mod budget;
pub mod catalog;
pub mod error;
pub mod finite;
pub mod group;
pub mod io;
pub mod laurent;
pub mod obstructions;
pub mod twisted;

pub use budget::Budget;
pub use error::{Error, Result};
