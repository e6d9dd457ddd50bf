//! Hochschild cohomology in low degrees for modular group algebras, their block
//! algebras, and finite category algebras.
//!
//! The crate is organised bottom-up:
//!
//! - [`ffield`]: GF(p^m) arithmetic, polynomial factoring, sparse/dense elimination.
//! - [`permgroup`]: permutation groups by full enumeration (classes, centralizers,
//!   Sylow subgroups, abelianization ranks).
//! - [`groupalgebra`]: structure-constant algebras, kG, its center and blocks.
//! - [`hhone`]: HH¹ by derivations and by the centralizer decomposition, the Lie
//!   bracket on HH¹, and the block bookkeeping identities.
//! - [`catalgebra`]: finite categories, nerve cohomology, bar-complex HHⁿ and the
//!   Happel probe.
//! - [`cli`]: corpus files, JSON reports and the result cache behind the `hh1lab` binary.

pub mod error;
pub mod ffield;
pub mod permgroup;
pub mod groupalgebra;
pub mod hhone;
pub mod catalgebra;
pub mod cli;

pub use error::{Error, Result};
