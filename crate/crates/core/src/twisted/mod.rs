//! Twisted chain complex of a presentation under `alpha ⊗ phi`, and its
//! polynomial invariants.

mod complex;
mod invariants;

pub use complex::{assemble, assemble_budgeted, tensor_element, tensor_word, TwistedComplex};
pub use invariants::{
    delta0, delta1_q, delta1_z, free_rank_independent, report_for_complex, twisted_report, wada, wada_at,
    Delta1, IntegralDelta1, TwistedPolyReport, Wada, WadaJson,
};
