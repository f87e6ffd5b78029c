//! Permutation closures of formal languages: cyclic shifts, `σ(L)` and
//! `C^k(L)` for context-free, indexed and regular languages.

pub mod cli;
pub mod cyc;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod gamma_t;
pub mod grammar;
pub mod normal_form;
pub mod oracle;
pub mod perm;
pub mod regular_perm;
pub mod sample;
pub mod shape;
pub mod symbol;

pub use error::{Error, Result};
