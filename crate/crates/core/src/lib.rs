//! Topical expertise allocation over author-paper-MeSH networks.
//!
//! - [`sparse`]: CSR incidence matrices and sparse row algebra.
//! - [`hin`]: node interning, typed incidence matrices and the yearly ledger.
//! - [`mesh`]: MeSH tree parsing and depth-two categories.
//! - [`similarity`]: HeteSim and the subset-filtered HeteAlloc family.
//! - [`dynamic`]: yearly DHA and baseline expertise stores.
//! - [`metrics`]: profile measures and method comparison tables.

pub mod dynamic;
pub mod exec;
pub mod fixtures;
pub mod hin;
pub mod io;
pub mod mesh;
pub mod metrics;
pub mod similarity;
pub mod sparse;
pub mod synth;

pub use dynamic::{DynamicEngine, DynamicError, DynamicMethod, ExpertiseStore};
pub use exec::Execution;
pub use hin::{Network, NodeType, PaperKey, TopicTable, YearLedger};
pub use similarity::{Aggregation, MeshWeighting, StaticMethod};
pub use sparse::{SparseIncidence, SparseVec};
