//! Structure-constant algebras, group algebras over splitting fields, their
//! centers and block decompositions.

pub mod algebra;
pub mod blocks;
pub mod group;

pub use algebra::{tensor_algebra, SparseVec, StructAlgebra};
pub use blocks::{
    block_algebra, block_decompose, block_decompose_over, blocks_from_center, minimal_polynomial,
    p_regular_classes, primitive_idempotents, BlockData, LocalFactor,
};
pub use group::{
    center, center_of_group, group_algebra, group_algebra_over, splitting_degree, CenterBasis,
    GROUP_ALGEBRA_CAP,
};

/// Seed for every randomised factorisation unless the caller supplies one.
pub const DEFAULT_SEED: u64 = 0x6868_316c_6162;
