pub mod bitset;
pub mod certificate;
pub mod cli;
pub mod constructions;
pub mod deficiency;
pub mod designs;
pub mod embed;
pub mod error;
pub mod format;
pub mod graph;
pub mod latin;
pub mod search;
pub mod solvers;

pub use bitset::{VertexSet, MAX_VERTICES};
pub use certificate::{verify, Certificate, Verdict};
pub use error::{Error, Result};
pub use graph::{Graph, MultipartiteGraph};
pub use search::Limits;
