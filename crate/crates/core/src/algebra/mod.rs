//! Finite fields, matrices, forms and permutations.

pub mod field;
pub mod form;
pub mod matrix;
pub mod parse;
pub mod perm;

pub use field::{Elem, Field};
pub use form::{FormKind, FormSpec};
pub use matrix::{jordan_profile, Matrix};
pub use perm::Perm;
