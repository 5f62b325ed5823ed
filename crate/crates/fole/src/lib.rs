//! Files and the command line around `fole-core`: the JSON model format,
//! morphism documents, CSV/EAV/N-Triples/DOT exports and verdict reports.

pub mod cli;
pub mod export;
pub mod model;
pub mod report;

pub use model::{emit_model, load_model, load_morphism, parse_model, ModelDocument, ModelError, MorphismDocument};
