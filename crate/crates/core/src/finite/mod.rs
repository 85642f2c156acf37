//! Permutation groups, homomorphism search into symmetric groups, and the
//! integer representations (trivial, regular, user-supplied) fed into the
//! twisted chain complex.

mod homs;
mod perm;
mod representation;

pub use homs::{
    canonical_conjugate, dedupe, dedupe_by_kernel, enumerate_homs, same_kernel, HomAssignment,
    HomAssignmentJson, HomSearchOptions,
};
pub use perm::{class_representatives, symmetric_group, FiniteGroupTable, Permutation};
pub use representation::{
    int_det, regular_of_hom, regular_representation, IntMatrix, Provenance, RepInfo, Representation,
    RepresentationJson,
};
