use serde::{Deserialize, Serialize};

use super::{GenSet, Monomial};
use crate::error::{Error, Result};

/// Rank and nilpotency class of a free nilpotent group `N_{n,c}`.
///
/// The monomial table (all words of length `0..=c` over `n` letters) is not
/// materialized; [`GroupContext::monomials`] enumerates it on demand in the
/// fixed order of [`Monomial`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawContext", into = "RawContext")]
pub struct GroupContext {
    rank: usize,
    class: usize,
}

#[derive(Serialize, Deserialize)]
struct RawContext {
    rank: usize,
    class: usize,
}

impl TryFrom<RawContext> for GroupContext {
    type Error = Error;
    fn try_from(raw: RawContext) -> Result<Self> {
        GroupContext::new(raw.rank, raw.class)
    }
}

impl From<GroupContext> for RawContext {
    fn from(ctx: GroupContext) -> Self {
        RawContext { rank: ctx.rank, class: ctx.class }
    }
}

impl GroupContext {
    pub fn new(rank: usize, class: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidContext("rank must be at least 1".into()));
        }
        if class == 0 {
            return Err(Error::InvalidContext("class must be at least 1".into()));
        }
        if class > u8::MAX as usize {
            return Err(Error::InvalidContext(format!("class {class} too large")));
        }
        // monomial codes are base-n numbers below n^c
        let fits = (rank as u64)
            .checked_pow(class as u32)
            .is_some_and(|p| p <= 1u64 << 62);
        if !fits {
            return Err(Error::InvalidContext(format!(
                "rank {rank} and class {class} exceed the monomial code range"
            )));
        }
        Ok(GroupContext { rank, class })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn class(&self) -> usize {
        self.class
    }

    /// Same rank, different class.
    pub fn with_class(&self, class: usize) -> Result<Self> {
        GroupContext::new(self.rank, class)
    }

    /// `Σ_{k=0}^{c} n^k`.
    pub fn monomial_count(&self) -> u128 {
        (0..=self.class as u32).map(|k| (self.rank as u128).pow(k)).sum()
    }

    /// All monomials of length `0..=c`, in (length, lexicographic) order.
    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        (0..=self.class).flat_map(move |len| {
            let count = (self.rank as u64).pow(len as u32);
            (0..count).map(move |code| Monomial::from_code(len, code))
        })
    }

    pub fn generators(&self) -> GenSet {
        (1..=self.rank).collect()
    }

    pub fn check_generator(&self, index: usize) -> Result<()> {
        if index == 0 || index > self.rank {
            Err(Error::IndexOutOfRange { index, rank: self.rank })
        } else {
            Ok(())
        }
    }

    pub fn check_subset(&self, set: &GenSet) -> Result<()> {
        set.iter().try_for_each(|&i| self.check_generator(i))
    }

    pub(crate) fn ensure_same(&self, other: &GroupContext) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }
}
