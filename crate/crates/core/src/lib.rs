//! Temporal question answering layer: temporal expression tagging,
//! question decomposition, answer recomposition and evaluation.

pub mod backend;
pub mod corpus;
pub mod decompose;
pub mod diagnostic;
pub mod error;
pub mod eval;
pub mod pack;
pub mod recompose;
pub mod tagger;
pub mod text;
pub mod time_model;
pub mod xml;

pub use diagnostic::Diagnostic;
pub use error::{Error, Result};
