//! File formats, the forms cache, report rendering and the run pipeline
//! behind the `serre-bound` binary.

pub mod config;
pub mod dataset;
pub mod diag;
pub mod error;
pub mod fetch;
pub mod json;
pub mod pipeline;
pub mod report;

pub use error::{Error, Result};
