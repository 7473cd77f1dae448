//! Exact signature functions of Seifert matrices, together with constructions
//! of matrices whose signature functions have prescribed jumps and peaks.

pub mod error;
pub mod exact_math;
pub mod io;
pub mod matrix;
pub mod oracle;
pub mod cli;
pub mod construct;
pub mod seifert;

pub use error::{Error, Result};
