use std::fmt;
use std::ops::Add;

use num_traits::One;

use super::{GenSet, GroupContext, Monomial, TruncatedPoly, Word};
use crate::error::{Error, Result};

/// Position of an element in the lower central series: the largest `k`
/// with the element in `γ_k(N)`. The identity has infinite weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Weight {
    Finite(usize),
    Infinite,
}

impl Weight {
    pub fn finite(self) -> Option<usize> {
        match self {
            Weight::Finite(k) => Some(k),
            Weight::Infinite => None,
        }
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        match (self, rhs) {
            (Weight::Finite(a), Weight::Finite(b)) => Weight::Finite(a + b),
            _ => Weight::Infinite,
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Finite(k) => write!(f, "{k}"),
            Weight::Infinite => write!(f, "infinity"),
        }
    }
}

/// An element of `N_{n,c}`, held as its Magnus image `1 + (higher terms)`.
///
/// There is no public constructor from a raw polynomial: every element comes
/// from generators, words, or group operations. The provenance word, when
/// present, is a word that evaluates to this element.
#[derive(Clone, Debug)]
pub struct GroupElement {
    ctx: GroupContext,
    poly: TruncatedPoly,
    word: Option<Word>,
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.poly == other.poly
    }
}

impl Eq for GroupElement {}

impl GroupElement {
    pub fn identity(ctx: GroupContext) -> Self {
        GroupElement { ctx, poly: TruncatedPoly::one(), word: Some(Word::empty()) }
    }

    /// `x_i ↦ 1 + X_i`.
    pub fn generator(ctx: GroupContext, i: usize) -> Result<Self> {
        ctx.check_generator(i)?;
        let poly = TruncatedPoly::one().add(&TruncatedPoly::term(Monomial::letter(i), One::one()));
        Ok(GroupElement { ctx, poly, word: Some(Word::generator(i, 1)) })
    }

    pub fn from_word(ctx: GroupContext, word: &Word) -> Result<Self> {
        word.validate(&ctx)?;
        let mut poly = TruncatedPoly::one();
        for l in word.letters() {
            poly = poly.mul_letter_power(l.generator, l.exponent, ctx.rank(), ctx.class());
        }
        Ok(GroupElement { ctx, poly, word: Some(word.clone()) })
    }

    pub(crate) fn from_poly(ctx: GroupContext, poly: TruncatedPoly, word: Option<Word>) -> Self {
        debug_assert_eq!(poly.coeff(&Monomial::ONE), One::one());
        GroupElement { ctx, poly, word }
    }

    pub fn context(&self) -> &GroupContext {
        &self.ctx
    }

    pub fn poly(&self) -> &TruncatedPoly {
        &self.poly
    }

    pub fn word(&self) -> Option<&Word> {
        self.word.as_ref()
    }

    /// Drops the provenance word, keeping the value.
    pub fn without_word(&self) -> Self {
        GroupElement { ctx: self.ctx, poly: self.poly.clone(), word: None }
    }

    pub fn is_identity(&self) -> bool {
        self.poly.len() == 1
    }

    /// True iff this element equals the generator `x_i`.
    pub fn is_generator(&self, i: usize) -> bool {
        self.poly.len() == 2 && self.poly.coeff(&Monomial::letter(i)).is_one()
    }

    pub fn mul(&self, other: &GroupElement) -> Result<GroupElement> {
        self.ctx.ensure_same(&other.ctx)?;
        let poly = self.poly.mul_trunc(&other.poly, self.ctx.rank(), self.ctx.class());
        let word = match (&self.word, &other.word) {
            (Some(a), Some(b)) => Some(a.concat(b)),
            _ => None,
        };
        Ok(GroupElement { ctx: self.ctx, poly, word })
    }

    /// Writes `a = 1 + u` and sums `1 - u + u² - … ± u^c`.
    pub fn inv(&self) -> GroupElement {
        let (rank, class) = (self.ctx.rank(), self.ctx.class());
        let minus_u = TruncatedPoly::one().sub(&self.poly);
        let mut power = TruncatedPoly::one();
        let mut sum = TruncatedPoly::one();
        for _ in 0..class {
            power = power.mul_trunc(&minus_u, rank, class);
            if power.is_zero() {
                break;
            }
            sum = sum.add(&power);
        }
        GroupElement { ctx: self.ctx, poly: sum, word: self.word.as_ref().map(Word::inverse) }
    }

    pub fn pow(&self, k: i64) -> GroupElement {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let mut result = GroupElement::identity(self.ctx);
        let mut square = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&square).expect("same context");
            }
            e >>= 1;
            if e > 0 {
                square = square.mul(&square).expect("same context");
            }
        }
        result
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn comm(&self, other: &GroupElement) -> Result<GroupElement> {
        self.ctx.ensure_same(&other.ctx)?;
        self.inv().mul(&other.inv())?.mul(self)?.mul(other)
    }

    /// Left-normed commutator `[[…[a₁, a₂], …], a_k]`; a single element is
    /// returned unchanged.
    pub fn left_normed(elems: &[GroupElement]) -> Result<GroupElement> {
        let (first, rest) = elems
            .split_first()
            .ok_or_else(|| Error::MalformedWord("empty commutator".into()))?;
        rest.iter().try_fold(first.clone(), |acc, e| acc.comm(e))
    }

    /// Lowest degree of a non-constant term. By the dimension-subgroup
    /// property, `a ∈ γ_k(N)` iff this is at least `k`.
    pub fn lcs_weight(&self) -> Weight {
        match self.poly.min_positive_degree() {
            Some(d) => Weight::Finite(d),
            None => Weight::Infinite,
        }
    }

    /// Image in `N_{n,c'}` for `1 ≤ c' < c`.
    pub fn truncate_class(&self, target: usize) -> Result<GroupElement> {
        if target == 0 || target >= self.ctx.class() {
            return Err(Error::BadClass { target, class: self.ctx.class() });
        }
        let ctx = self.ctx.with_class(target)?;
        Ok(GroupElement { ctx, poly: self.poly.truncate(target), word: self.word.clone() })
    }

    /// Image under the retraction sending generators outside `keep` to 1.
    pub fn retract(&self, keep: &GenSet) -> GroupElement {
        GroupElement {
            ctx: self.ctx,
            poly: self.poly.retract(self.ctx.rank(), keep),
            word: self.word.as_ref().map(|w| w.retain(keep)),
        }
    }

    /// Generators occurring in the Magnus image. An element lies in `⟨C⟩`
    /// iff its occurrence set is contained in `C`.
    pub fn occurs(&self) -> GenSet {
        self.poly.letters_used(self.ctx.rank())
    }
}
