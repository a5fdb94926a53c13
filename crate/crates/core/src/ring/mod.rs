//! Exact arithmetic in the free nilpotent group `N_{n,c}` through the
//! truncated Magnus embedding `x_i ↦ 1 + X_i` into the free associative
//! ring over the integers, with all monomials of degree above `c` dropped.

mod context;
mod element;
mod poly;
mod word;

use std::collections::BTreeSet;

pub use context::GroupContext;
pub use element::{GroupElement, Weight};
pub use poly::{Monomial, TruncatedPoly};
pub use word::{Letter, Word};

/// A set of 1-based generator indices.
pub type GenSet = BTreeSet<usize>;
