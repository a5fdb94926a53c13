use serde::{Deserialize, Serialize};

use super::{GenSet, GroupContext};
use crate::error::{Error, Result};

/// One syllable `x_generator^exponent` of a group word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "(usize, i64)", into = "(usize, i64)")]
pub struct Letter {
    pub generator: usize,
    pub exponent: i64,
}

impl TryFrom<(usize, i64)> for Letter {
    type Error = Error;
    fn try_from((generator, exponent): (usize, i64)) -> Result<Self> {
        if generator == 0 {
            return Err(Error::MalformedWord("generator indices start at 1".into()));
        }
        if exponent == 0 {
            return Err(Error::MalformedWord(format!("zero exponent on generator {generator}")));
        }
        Ok(Letter { generator, exponent })
    }
}

impl From<Letter> for (usize, i64) {
    fn from(l: Letter) -> Self {
        (l.generator, l.exponent)
    }
}

/// A group word, serialized as `[[index, exponent], ...]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn generator(g: usize, exponent: i64) -> Self {
        let mut w = Word::empty();
        w.push(g, exponent);
        w
    }

    /// Builds a word from raw pairs, rejecting zero exponents and index 0.
    pub fn from_pairs(pairs: &[(usize, i64)]) -> Result<Self> {
        pairs
            .iter()
            .map(|&p| Letter::try_from(p))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn validate(&self, ctx: &GroupContext) -> Result<()> {
        for l in &self.0 {
            ctx.check_generator(l.generator)?;
            if l.exponent == 0 {
                return Err(Error::MalformedWord("zero exponent".into()));
            }
        }
        Ok(())
    }

    /// Appends a syllable, merging with the last one when the generator
    /// repeats. Zero exponents are dropped.
    pub fn push(&mut self, generator: usize, exponent: i64) {
        if exponent == 0 {
            return;
        }
        if let Some(last) = self.0.last_mut() {
            if last.generator == generator {
                last.exponent += exponent;
                if last.exponent == 0 {
                    self.0.pop();
                }
                return;
            }
        }
        self.0.push(Letter { generator, exponent });
    }

    /// Freely reduced concatenation.
    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.clone();
        for l in &other.0 {
            out.push(l.generator, l.exponent);
        }
        out
    }

    pub fn inverse(&self) -> Word {
        Word(
            self.0
                .iter()
                .rev()
                .map(|l| Letter { generator: l.generator, exponent: -l.exponent })
                .collect(),
        )
    }

    pub fn power(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..k.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// Commutator word `a⁻¹ b⁻¹ a b`.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.inverse().concat(&b.inverse()).concat(a).concat(b)
    }

    /// Deletes every syllable whose generator is outside `keep`; this is the
    /// word-level image under the retraction onto `⟨keep⟩`.
    pub fn retain(&self, keep: &GenSet) -> Word {
        let mut out = Word::empty();
        for l in self.0.iter().filter(|l| keep.contains(&l.generator)) {
            out.push(l.generator, l.exponent);
        }
        out
    }

    /// Replaces each generator by a word, raising it to the syllable's
    /// exponent.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Word::empty();
        for l in &self.0 {
            out = out.concat(&images[l.generator - 1].power(l.exponent));
        }
        out
    }

    pub fn generators(&self) -> GenSet {
        self.0.iter().map(|l| l.generator).collect()
    }
}
