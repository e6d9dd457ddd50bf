//! Finite categories, their algebras, nerve and Hochschild cohomology, and the
//! Happel probe.

pub mod category;
pub mod cohomology;
pub mod happel;
pub mod structure;

pub use category::{
    category_algebra, euler_characteristic, transporter_category, transporter_projection, CatFunctor,
    FinCategory, GSet, Morphism,
};
pub use cohomology::{
    bar_hh, nerve_cohomology, restriction_map, RestrictionDegree, BAR_DEGREE_CAP, BAR_DIM_CAP, NERVE_CAP,
};
pub use happel::{happel_probe, GlobalDimension, HappelVerdict, FROBENIUS_TRIALS};
pub use structure::{
    frobenius_certificate, gram_matrix, radical_and_semisimplicity, verify_certificate, CertificateSource,
    FrobeniusCertificate, FrobeniusSearch, RadicalInfo, RADICAL_DIM_CAP, STRUCTURE_DIM_CAP,
};
