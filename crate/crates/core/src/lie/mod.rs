//! Coordinates on the layers of the lower central series.
//!
//! The weight-`k` layer `γ_k/γ_{k+1}` is identified with the degree-`k`
//! Lie elements of the free associative ring, which have the standard
//! bracketed Lyndon words as an integral, unitriangular basis.

mod lyndon;
mod normal;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use lyndon::{
    is_lyndon, lyndon_brackets, lyndon_brackets_of_degree, lyndon_words, standard_bracket,
    Bracket, LyndonBracket,
};
pub use normal::normal_word;

use crate::error::{Error, Result};
use crate::ring::{GenSet, GroupContext, GroupElement, TruncatedPoly, Weight};
#[cfg(test)]
use crate::ring::Monomial;
use crate::serde_util::bigint_number;

/// A homogeneous element of the free associative ring. Whether it is a Lie
/// element is decided by [`lie_coordinates`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieHomogeneous {
    ctx: GroupContext,
    degree: usize,
    poly: TruncatedPoly,
}

impl LieHomogeneous {
    pub fn new(ctx: GroupContext, degree: usize, poly: TruncatedPoly) -> Result<Self> {
        if degree == 0 || degree > ctx.class() {
            return Err(Error::BadClass { target: degree, class: ctx.class() });
        }
        if poly.iter().any(|(m, _)| m.len() != degree) {
            return Err(Error::NotLieElement);
        }
        Ok(LieHomogeneous { ctx, degree, poly })
    }

    pub fn zero(ctx: GroupContext, degree: usize) -> Self {
        LieHomogeneous { ctx, degree, poly: TruncatedPoly::zero() }
    }

    pub fn context(&self) -> &GroupContext {
        &self.ctx
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn poly(&self) -> &TruncatedPoly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn add(&self, other: &LieHomogeneous) -> Result<LieHomogeneous> {
        self.ctx.ensure_same(&other.ctx)?;
        if self.degree != other.degree {
            return Err(Error::NotLieElement);
        }
        Ok(LieHomogeneous { ctx: self.ctx, degree: self.degree, poly: self.poly.add(&other.poly) })
    }

    pub fn scale(&self, k: &BigInt) -> LieHomogeneous {
        LieHomogeneous { ctx: self.ctx, degree: self.degree, poly: self.poly.scale(k) }
    }
}

/// Degree-`c` part of `w − 1` for `w ∈ γ_c(N)`.
pub fn central_log(w: &GroupElement) -> Result<LieHomogeneous> {
    let ctx = *w.context();
    if w.lcs_weight() < Weight::Finite(ctx.class()) {
        return Err(Error::NotCentral);
    }
    Ok(LieHomogeneous {
        ctx,
        degree: ctx.class(),
        poly: w.poly().homogeneous_part(ctx.class()),
    })
}

/// Integer coordinates of a Lie element over the bracketed Lyndon basis of
/// its degree. Only nonzero coordinates are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieCoordinates {
    ctx: GroupContext,
    degree: usize,
    entries: BTreeMap<Vec<usize>, BigInt>,
}

impl LieCoordinates {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn get(&self, lyndon: &[usize]) -> BigInt {
        self.entries.get(lyndon).cloned().unwrap_or_default()
    }

    /// Nonzero coordinates keyed by Lyndon word, in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (&Vec<usize>, &BigInt)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Coordinates aligned with [`lyndon_brackets_of_degree`].
    pub fn dense(&self) -> Vec<BigInt> {
        lyndon_words(self.ctx.rank(), self.degree).iter().map(|w| self.get(w)).collect()
    }

    /// Inverse of [`LieCoordinates::dense`].
    pub fn from_dense(ctx: GroupContext, degree: usize, coords: &[BigInt]) -> Result<Self> {
        let words = lyndon_words(ctx.rank(), degree);
        if words.len() != coords.len() {
            return Err(Error::NotLieElement);
        }
        let entries = words
            .into_iter()
            .zip(coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(w, c)| (w, c.clone()))
            .collect();
        Ok(LieCoordinates { ctx, degree, entries })
    }

    /// `Σ coord · expansion(bracket)`.
    pub fn reconstruct(&self) -> LieHomogeneous {
        let rank = self.ctx.rank();
        let mut poly = TruncatedPoly::zero();
        for (w, c) in &self.entries {
            poly = poly.add(&standard_bracket(w).expand(rank).scale(c));
        }
        LieHomogeneous { ctx: self.ctx, degree: self.degree, poly }
    }
}

/// Solves the unitriangular system against the Lyndon basis: the smallest
/// remaining monomial must be a Lyndon word, whose bracket has coefficient 1
/// there and is otherwise supported on larger words.
pub fn lie_coordinates(p: &LieHomogeneous) -> Result<LieCoordinates> {
    let rank = p.ctx.rank();
    let mut residual = p.poly.clone();
    let mut entries = BTreeMap::new();
    while let Some((m, c)) = residual.min_term() {
        let word = m.letters(rank);
        if !is_lyndon(&word) {
            return Err(Error::NotLieElement);
        }
        let c = c.clone();
        residual = residual.sub(&standard_bracket(&word).expand(rank).scale(&c));
        entries.insert(word, c);
    }
    Ok(LieCoordinates { ctx: p.ctx, degree: p.degree, entries })
}

/// A power `[x_{b₁}, …, x_{b_k}]^exponent` of a left-normed commutator,
/// serialized as `{"comm": [b₁, …], "exp": k}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LeftNormedTerm {
    #[serde(rename = "comm")]
    pub generators: Vec<usize>,
    #[serde(rename = "exp", with = "bigint_number")]
    pub exponent: BigInt,
}

impl LeftNormedTerm {
    pub fn support(&self) -> GenSet {
        self.generators.iter().copied().collect()
    }

    pub fn lie_poly(&self, rank: usize) -> TruncatedPoly {
        Bracket::left_normed(&self.generators).expand(rank).scale(&self.exponent)
    }

    /// The group element this term denotes. At full weight the power can be
    /// carried by the first entry, which keeps the word short.
    pub fn to_element(&self, ctx: GroupContext) -> Result<GroupElement> {
        if self.generators.is_empty() {
            return Err(Error::MalformedWord("empty commutator".into()));
        }
        self.generators.iter().try_for_each(|&g| ctx.check_generator(g))?;
        let bracket = Bracket::left_normed(&self.generators);
        match self.exponent.to_i64() {
            Some(e) if self.generators.len() == ctx.class() => bracket.group_element(ctx, e),
            Some(e) => Ok(bracket.group_element(ctx, 1)?.pow(e)),
            None => Err(Error::MalformedWord("commutator exponent overflows i64".into())),
        }
    }
}

/// Rewrites a bracketing as an integer combination of left-normed brackets
/// via `[s, [t, z]] = [[s, t], z] − [[s, z], t]`. Every output sequence is a
/// rearrangement of the input leaves; brackets starting `[x, x, …]` vanish
/// and are dropped.
pub fn left_normalize(bracket: &Bracket) -> Vec<LeftNormedTerm> {
    let combo = left_normed_combination(bracket);
    combo
        .into_iter()
        .filter(|(seq, c)| !c.is_zero() && !(seq.len() >= 2 && seq[0] == seq[1]))
        .map(|(generators, exponent)| LeftNormedTerm { generators, exponent })
        .collect()
}

type Combination = BTreeMap<Vec<usize>, BigInt>;

fn add_into(acc: &mut Combination, seq: Vec<usize>, c: BigInt) {
    let e = acc.entry(seq).or_default();
    *e += c;
}

fn left_normed_combination(bracket: &Bracket) -> Combination {
    match bracket {
        Bracket::Leaf(g) => Combination::from([(vec![*g], BigInt::from(1))]),
        Bracket::Node(a, b) => {
            let (la, lb) = (left_normed_combination(a), left_normed_combination(b));
            let mut out = Combination::new();
            for (s, cs) in &la {
                for (t, ct) in &lb {
                    for (seq, c) in bracket_left_normed(s, t) {
                        add_into(&mut out, seq, c * cs * ct);
                    }
                }
            }
            out.retain(|_, c| !c.is_zero());
            out
        }
    }
}

/// `[s, t]` for left-normed `s`, `t`, as a left-normed combination.
fn bracket_left_normed(s: &[usize], t: &[usize]) -> Combination {
    let (z, t_head) = t.split_last().expect("nonempty bracket");
    if t_head.is_empty() {
        let mut seq = s.to_vec();
        seq.push(*z);
        return Combination::from([(seq, BigInt::from(1))]);
    }
    let mut out = Combination::new();
    for (mut seq, c) in bracket_left_normed(s, t_head) {
        seq.push(*z);
        add_into(&mut out, seq, c);
    }
    let mut sz = s.to_vec();
    sz.push(*z);
    for (seq, c) in bracket_left_normed(&sz, t_head) {
        add_into(&mut out, seq, -c);
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Writes a central element as a product of left-normed weight-`c`
/// commutator powers, sorted by generator sequence.
pub fn central_factorize(w: &GroupElement) -> Result<Vec<LeftNormedTerm>> {
    let coords = lie_coordinates(&central_log(w)?)?;
    let mut combo = Combination::new();
    for (lyndon, c) in coords.iter() {
        for term in left_normalize(&standard_bracket(lyndon)) {
            add_into(&mut combo, term.generators, term.exponent * c);
        }
    }
    Ok(combo
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(generators, exponent)| LeftNormedTerm { generators, exponent })
        .collect())
}

/// Ordered product of the terms' commutator powers.
pub fn reconstruct_terms(ctx: GroupContext, terms: &[LeftNormedTerm]) -> Result<GroupElement> {
    terms
        .iter()
        .try_fold(GroupElement::identity(ctx), |acc, t| acc.mul(&t.to_element(ctx)?))
}

/// Largest absolute exponent among the terms.
pub fn max_exponent(terms: &[LeftNormedTerm]) -> BigInt {
    terms.iter().map(|t| t.exponent.abs()).max().unwrap_or_default()
}
