//! Permutation groups by full element enumeration.

pub mod format;
pub mod group;
pub mod named;
pub mod perm;

pub use format::GroupFile;
pub use group::{
    direct_product, direct_product_capped, p_part, valuation, ConjClass, IndexSubgroup, PermGroup,
    DEFAULT_ELEMENT_CAP,
};
pub use perm::Perm;
