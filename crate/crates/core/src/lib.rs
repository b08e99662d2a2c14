//! Component groups of involutions in finite groups of Lie type, computed in
//! permutation representations, together with binary-action checks.

pub mod algebra;
pub mod binary;
pub mod cli;
pub mod catalog;
pub mod components;
pub mod error;
pub mod group;

pub use error::{Error, Result};
