//! Exact computation in finitely generated free nilpotent groups and a
//! constructive factorization of their automorphisms into moietous pieces.
//!
//! * [`ring`]: group elements through the truncated Magnus embedding.
//! * [`lie`]: Lyndon coordinates on the layers of the lower central series.
//! * [`endo`]: endomorphisms given by generator images.
//! * [`decompose`]: factorization of automorphisms fixing a generator set.
//! * [`cli`]: the JSON command-line front end.

pub mod cli;
pub mod decompose;
pub mod endo;
pub mod error;
pub mod lie;
pub mod ring;
pub mod serde_util;

pub use error::{Error, Result};
pub use ring::{GenSet, GroupContext, GroupElement, Weight, Word};
