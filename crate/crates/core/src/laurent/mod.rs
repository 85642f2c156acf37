//! Exact Laurent polynomial arithmetic over Z and Q, and linear algebra over
//! the Laurent ring: determinants, gcds of minors, Smith normal form and left
//! kernels.

mod gcd;
mod matrix;
mod minors;
mod modular;
mod poly;
mod serde_impl;
mod snf;
mod sparse;

pub use gcd::{gcd2_z, gcd_q, gcd_z, lcm_q};
pub use matrix::PolyMatrix;
pub use minors::{minors_gcd, minors_gcd_budgeted};
pub use poly::{LaurentPoly, Ring};
pub use serde_impl::parse_coefficient;
pub use snf::{
    kernel_basis_q, kernel_basis_q_budgeted, left_echelon, rank_q, snf_q, snf_q_budgeted, LeftEchelon,
    SnfResult,
};
