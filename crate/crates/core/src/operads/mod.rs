//! Symmetric operads on tree bases: free operads, endomorphism operads, the
//! bar construction and binary quadratic duality.

mod axioms;
mod bar;
mod collection;
mod free;
mod perm;
mod quadratic;
mod tree;
#[cfg(test)]
mod tests;

pub use axioms::{associativity_check, equivariance_check};
pub use bar::{
    bar_d_squared_check, bar_differential, bar_homology_check, BarElement, BarHomologyReport, BarKey, WeightHomology,
    BAR_HOMOLOGY_BOUND,
};
pub use collection::{parse_collection_json, Component, SymmetricCollection};
pub use free::{operad_compose, EndOperad, FreeOperad, Operad, FREE_ARITY_BOUND};
pub use perm::{all_perms, compose, inverse, parity};
pub use quadratic::{
    duality_report, named_operad_dims, pairing_matrix, preset_presentation, quadratic_dual, DualityReport, NamedDims,
    OperadPresentation, PresentedOperad,
};
pub use tree::{canonical_trees, set_partitions, DTree, Tree};

use crate::exact_linalg::{to_dense, to_sparse, SparseRationalMatrix, SparseVec};

/// `m · x` for a sparse vector `x`.
pub(crate) fn apply_sparse(m: &SparseRationalMatrix, x: &SparseVec) -> SparseVec {
    to_sparse(&m.mul_vec(&to_dense(x, m.cols())))
}

/// Free operad basis of arity `n` for the generators `v`.
pub fn free_operad_basis(v: &SymmetricCollection, n: usize) -> crate::Result<Vec<(Tree, Vec<usize>)>> {
    Ok(FreeOperad::new(v.clone(), n.max(1))?.basis(n)?.to_vec())
}
