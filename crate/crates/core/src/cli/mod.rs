//! Corpus files, JSON reports and the result cache behind the `hh1lab` binary.

pub mod cache;
pub mod commands;
pub mod corpus;

pub use cache::{cache_key, Cache, CACHE_ENV, DEFAULT_CACHE_DIR};
pub use commands::{
    cmd_blocks, cmd_happel, cmd_hh1, cmd_report, cmd_tensor, memory_estimate, CategoryInput, ReportDocument,
    RunOptions, SCHEMA_VERSION, STANDARD_ELEMENT_CAP,
};
pub use corpus::{resolve_group, CorpusEntry, CorpusManifest};
