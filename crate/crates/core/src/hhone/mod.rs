//! HH¹ by derivations and by the centralizer decomposition, its Lie bracket,
//! and the block bookkeeping identities.

pub mod derivations;
pub mod formulas;
pub mod lie;
pub mod oracle;
pub mod report;

pub use derivations::{
    algebra_generators, derivation_space, derivation_space_capped, inner_derivation, is_derivation,
    DerivationSpace, DEFAULT_DER_CAP,
};
pub use formulas::{bookkeeping_subtract, cyclic_formula, klein_four_dims, kuenneth_hh1};
pub use lie::{lie_structure, LieStructure, LIE_DIM_CAP};
pub use oracle::{additive_oracle, oracle_terms, principal_inertial_quotient};
pub use report::{hh1_blocks, nonvanishing_report, BlockReport, Consistency, HH1Options, HH1Report, Method};
