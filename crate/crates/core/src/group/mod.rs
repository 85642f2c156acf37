//! Free groups, Fox calculus, finite presentations with a class `phi`, and
//! presentations of braid closures.

mod braid;
mod fox;
mod presentation;
mod word;

pub use braid::{artin_action, braid_automorphism, braid_to_presentation, BraidWord};
pub use fox::{fox_derivative, GroupRingElement};
pub use presentation::{connected_sum, parse_word, Presentation, ValidationReport, Violation};
pub use word::{FreeWord, Letter};
