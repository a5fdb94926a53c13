//! Endomorphisms of `N_{n,c}` given by one image per generator.
//!
//! Composition follows `(φ∘ψ)(x) = φ(ψ(x))` throughout, and two maps are
//! equal when their generator images are equal as group elements.

mod matrix;
mod random;
mod rng;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use matrix::{IntMatrix, RowOp};
pub use random::{random_automorphism, RandomParams};
pub use rng::SplitMix64;

use crate::error::{Error, Result};
use crate::lie::normal_word;
use crate::ring::{GenSet, GroupContext, GroupElement, Monomial, TruncatedPoly, Word};

/// An endomorphism `x_i ↦ images[i-1]`, with its abelianization matrix
/// cached: entry `(j, i)` is the coefficient of `X_j` in the image of `x_i`.
#[derive(Clone, Debug)]
pub struct GeneratorMap {
    ctx: GroupContext,
    images: Vec<GroupElement>,
    matrix: IntMatrix,
    words: OnceLock<Vec<Word>>,
}

impl PartialEq for GeneratorMap {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.images == other.images
    }
}

impl Eq for GeneratorMap {}

impl GeneratorMap {
    pub fn identity(ctx: GroupContext) -> Self {
        let images = (1..=ctx.rank())
            .map(|i| GroupElement::generator(ctx, i).expect("in range"))
            .collect();
        GeneratorMap::from_images(ctx, images).expect("well-formed")
    }

    pub fn from_words(ctx: GroupContext, words: Vec<Word>) -> Result<Self> {
        let images = words
            .iter()
            .map(|w| GroupElement::from_word(ctx, w))
            .collect::<Result<Vec<_>>>()?;
        GeneratorMap::from_images(ctx, images)
    }

    pub fn from_images(ctx: GroupContext, images: Vec<GroupElement>) -> Result<Self> {
        if images.len() != ctx.rank() {
            return Err(Error::MalformedWord(format!(
                "expected {} generator images, got {}",
                ctx.rank(),
                images.len()
            )));
        }
        if images.iter().any(|e| *e.context() != ctx) {
            return Err(Error::ContextMismatch);
        }
        let n = ctx.rank();
        let mut matrix = IntMatrix::zeros(n);
        for (i, img) in images.iter().enumerate() {
            for j in 0..n {
                matrix.set(j, i, img.poly().coeff(&Monomial::letter(j + 1)));
            }
        }
        Ok(GeneratorMap { ctx, images, matrix, words: OnceLock::new() })
    }

    /// Replaces every image's provenance word by its collected normal form.
    pub fn canonical(&self) -> Self {
        let images: Vec<_> = self.images.iter().map(GroupElement::without_word).collect();
        GeneratorMap::from_images(self.ctx, images).expect("same shape")
    }

    pub fn context(&self) -> &GroupContext {
        &self.ctx
    }

    pub fn rank(&self) -> usize {
        self.ctx.rank()
    }

    /// Image of the generator `x_i` (1-based).
    pub fn image(&self, i: usize) -> &GroupElement {
        &self.images[i - 1]
    }

    pub fn images(&self) -> &[GroupElement] {
        &self.images
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// One word per image: the provenance word when known, otherwise the
    /// collected normal form.
    pub fn words(&self) -> &[Word] {
        self.words.get_or_init(|| {
            self.images
                .iter()
                .map(|e| e.word().cloned().unwrap_or_else(|| normal_word(e)))
                .collect()
        })
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, e)| e.is_generator(i + 1))
    }

    /// Generators whose image differs from themselves.
    pub fn moved(&self) -> GenSet {
        (1..=self.rank()).filter(|&i| !self.image(i).is_generator(i)).collect()
    }

    /// Largest absolute coefficient in any image's Magnus polynomial.
    pub fn max_coefficient(&self) -> BigInt {
        self.images.iter().map(|e| e.poly().max_abs_coeff()).max().unwrap_or_default()
    }

    /// Homomorphic image of `a`, by substituting `X_i ↦ φ(x_i) − 1`.
    pub fn apply(&self, a: &GroupElement) -> Result<GroupElement> {
        self.ctx.ensure_same(a.context())?;
        let shifted: Vec<TruncatedPoly> =
            self.images.iter().map(|e| e.poly().sub(&TruncatedPoly::one())).collect();
        let poly = substitute(a.poly(), &shifted, self.ctx.rank(), self.ctx.class());
        Ok(GroupElement::from_poly(self.ctx, poly, None))
    }

    /// Homomorphic image of `a` computed from its word: rebuilds the word
    /// through the image words and evaluates it.
    pub fn apply_via_word(&self, a: &GroupElement) -> Result<GroupElement> {
        self.ctx.ensure_same(a.context())?;
        let word = a.word().cloned().unwrap_or_else(|| normal_word(a));
        GroupElement::from_word(self.ctx, &word.substitute(self.words()))
    }

    /// `φ∘ψ`: `x ↦ φ(ψ(x))`.
    pub fn compose(&self, psi: &GeneratorMap) -> Result<GeneratorMap> {
        self.ctx.ensure_same(&psi.ctx)?;
        let images = psi
            .images
            .iter()
            .enumerate()
            .map(|(i, img)| {
                if img.is_generator(i + 1) {
                    Ok(self.images[i].clone())
                } else {
                    self.apply(img)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        GeneratorMap::from_images(self.ctx, images)
    }

    pub fn determinant(&self) -> BigInt {
        self.matrix.det()
    }

    /// An endomorphism of a finite-rank free nilpotent group is an
    /// automorphism iff its abelianization is invertible over the integers.
    pub fn is_automorphism(&self) -> bool {
        self.determinant().abs().is_one()
    }

    pub fn invert(&self) -> Result<GeneratorMap> {
        self.invert_counting().map(|(inv, _)| inv)
    }

    /// Inverse by successive central-series correction. Also returns the
    /// number of correction rounds, which never exceeds the class.
    pub fn invert_counting(&self) -> Result<(GeneratorMap, usize)> {
        if !self.is_automorphism() {
            return Err(Error::NotAutomorphism);
        }
        let n = self.rank();
        let inv = self.matrix.inverse_unimodular()?;
        let lift_words = (0..n)
            .map(|i| {
                let mut w = Word::empty();
                for j in 0..n {
                    push_big_power(&mut w, j + 1, inv.get(j, i));
                }
                w
            })
            .collect();
        let mut psi = GeneratorMap::from_words(self.ctx, lift_words)?;
        let mut rounds = 0;
        loop {
            let tau = self.compose(&psi)?;
            let defects: Vec<GroupElement> = (1..=n)
                .map(|i| GroupElement::generator(self.ctx, i).expect("in range").inv().mul(tau.image(i)))
                .collect::<Result<_>>()?;
            if defects.iter().all(GroupElement::is_identity) {
                break;
            }
            rounds += 1;
            assert!(rounds <= self.ctx.class(), "correction must terminate within the class");
            let chi_images = defects
                .iter()
                .enumerate()
                .map(|(i, d)| {
                    let x = GroupElement::generator(self.ctx, i + 1).expect("in range");
                    if d.is_identity() {
                        Ok(x)
                    } else {
                        x.mul(&d.inv())
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            psi = psi.compose(&GeneratorMap::from_images(self.ctx, chi_images)?)?;
        }
        Ok((psi.canonical(), rounds))
    }

    /// True iff `φ(x_s) = x_s` for every `s ∈ set`.
    pub fn fixes_pointwise(&self, set: &GenSet) -> bool {
        set.iter().all(|&s| s >= 1 && s <= self.rank() && self.image(s).is_generator(s))
    }

    /// True iff `φ` restricts to an automorphism of `⟨set⟩`: images of the set
    /// stay inside it and the corresponding block of the abelianization is
    /// unimodular.
    pub fn preserves(&self, set: &GenSet) -> Result<bool> {
        if !self.is_automorphism() {
            return Err(Error::NotAutomorphism);
        }
        self.ctx.check_subset(set)?;
        let inside = set.iter().all(|&j| self.image(j).occurs().is_subset(set));
        if !inside {
            return Ok(false);
        }
        let idx: Vec<usize> = set.iter().map(|&j| j - 1).collect();
        Ok(self.matrix.principal(&idx).is_unimodular())
    }

    pub fn check_certificate(&self, cert: &MoietyCertificate) -> Result<bool> {
        if !self.is_automorphism() {
            return Err(Error::NotAutomorphism);
        }
        cert.validate(&self.ctx)?;
        Ok(self.fixes_pointwise(&cert.fixed) && self.preserves(&cert.preserved)?)
    }

    /// Image of the map in `N_{n,c'}`, `1 ≤ c' < c`, keeping the image words.
    pub fn project(&self, target: usize) -> Result<GeneratorMap> {
        let images = self
            .images
            .iter()
            .map(|e| e.truncate_class(target))
            .collect::<Result<Vec<_>>>()?;
        GeneratorMap::from_images(self.ctx.with_class(target)?, images)
    }

    /// Reads the same image words in class `target > c`. The result is an
    /// automorphism with the same abelianization that projects back to `self`.
    pub fn lift_words(&self, target: usize) -> Result<GeneratorMap> {
        if target <= self.ctx.class() {
            return Err(Error::BadClass { target, class: self.ctx.class() });
        }
        if !self.is_automorphism() {
            return Err(Error::NotAutomorphism);
        }
        GeneratorMap::from_words(self.ctx.with_class(target)?, self.words().to_vec())
    }
}

/// Horner-style substitution on first letters, with truncation at `limit`.
fn substitute(
    poly: &TruncatedPoly,
    shifted: &[TruncatedPoly],
    rank: usize,
    limit: usize,
) -> TruncatedPoly {
    let mut out = TruncatedPoly::zero();
    let mut by_first: BTreeMap<usize, TruncatedPoly> = BTreeMap::new();
    for (m, c) in poly.iter() {
        if m.is_empty() {
            out.add_term(*m, c.clone());
        } else if m.len() <= limit {
            let (g, rest) = m.split_first(rank);
            by_first.entry(g).or_default().add_term(rest, c.clone());
        }
    }
    for (g, tail) in by_first {
        let inner = substitute(&tail, shifted, rank, limit - 1);
        out = out.add(&shifted[g - 1].mul_trunc(&inner, rank, limit));
    }
    out
}

pub(crate) fn push_big_power(w: &mut Word, g: usize, e: &BigInt) {
    let mut left = e.clone();
    while !left.is_zero() {
        let step = left.to_i64().unwrap_or(if left.is_negative() { i64::MIN + 1 } else { i64::MAX });
        w.push(g, step);
        left -= step;
    }
}

/// Witness that a map fixes `fixed` pointwise and restricts to an
/// automorphism of `⟨preserved⟩`, for a partition of the generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MoietyCertificate {
    pub fixed: GenSet,
    pub preserved: GenSet,
}

impl MoietyCertificate {
    pub fn new(ctx: &GroupContext, fixed: GenSet, preserved: GenSet) -> Result<Self> {
        let cert = MoietyCertificate { fixed, preserved };
        cert.validate(ctx)?;
        Ok(cert)
    }

    /// Certificate whose preserved block is the complement of `fixed`.
    pub fn fixing(ctx: &GroupContext, fixed: GenSet) -> Result<Self> {
        let preserved = ctx.generators().difference(&fixed).copied().collect();
        MoietyCertificate::new(ctx, fixed, preserved)
    }

    pub fn validate(&self, ctx: &GroupContext) -> Result<()> {
        ctx.check_subset(&self.fixed)
            .and_then(|_| ctx.check_subset(&self.preserved))
            .map_err(|e| Error::CertificateInvalid(e.to_string()))?;
        if !self.fixed.is_disjoint(&self.preserved) {
            return Err(Error::CertificateInvalid("blocks overlap".into()));
        }
        if self.fixed.len() + self.preserved.len() != ctx.rank() {
            return Err(Error::CertificateInvalid("blocks do not cover the basis".into()));
        }
        if self.preserved.is_empty() {
            return Err(Error::CertificateInvalid("preserved block is empty".into()));
        }
        Ok(())
    }
}

/// `x_i ↦ x_{p(i)}` for a permutation given as `p = [p(1), …, p(n)]`.
pub fn permutational(ctx: GroupContext, p: &[usize]) -> Result<GeneratorMap> {
    let n = ctx.rank();
    if p.len() != n {
        return Err(Error::NotABijection);
    }
    let mut seen = vec![false; n];
    for &v in p {
        if v == 0 || v > n || std::mem::replace(&mut seen[v - 1], true) {
            return Err(Error::NotABijection);
        }
    }
    let images = p.iter().map(|&v| GroupElement::generator(ctx, v)).collect::<Result<_>>()?;
    GeneratorMap::from_images(ctx, images)
}

/// How a block of the coproduct is attached to the fixed part.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    /// An automorphism of `⟨D ∪ C⟩` fixing `D` pointwise.
    Attached,
    /// An automorphism of `⟨C⟩`.
    Free,
}

/// One block of a coproduct decomposition; only the images of the block's
/// generators under `map` are used.
#[derive(Clone, Debug)]
pub struct Block {
    pub generators: GenSet,
    pub kind: BlockKind,
    pub map: GeneratorMap,
}

/// Assembles `id_D ⊛ (⊛ ρ_j) ⊛ (⊛ φ_i)` from blocks partitioning the
/// generators together with `fixed`.
pub fn blockwise(ctx: GroupContext, fixed: &GenSet, blocks: &[Block]) -> Result<GeneratorMap> {
    ctx.check_subset(fixed).map_err(|e| Error::PartitionInvalid(e.to_string()))?;
    let mut covered = fixed.clone();
    for b in blocks {
        ctx.check_subset(&b.generators).map_err(|e| Error::PartitionInvalid(e.to_string()))?;
        if b.generators.is_empty() {
            return Err(Error::PartitionInvalid("empty block".into()));
        }
        if !covered.is_disjoint(&b.generators) {
            return Err(Error::PartitionInvalid("blocks overlap".into()));
        }
        covered.extend(&b.generators);
    }
    if covered.len() != ctx.rank() {
        return Err(Error::PartitionInvalid("blocks do not cover the basis".into()));
    }

    let mut images: Vec<GroupElement> = (1..=ctx.rank())
        .map(|i| GroupElement::generator(ctx, i))
        .collect::<Result<_>>()?;
    for b in blocks {
        ctx.ensure_same(b.map.context())?;
        let allowed: GenSet = match b.kind {
            BlockKind::Attached => b.generators.union(fixed).copied().collect(),
            BlockKind::Free => b.generators.clone(),
        };
        if b.kind == BlockKind::Attached && !b.map.fixes_pointwise(fixed) {
            return Err(Error::BlockConstraintViolated("attached block moves D".into()));
        }
        for &g in &b.generators {
            if !b.map.image(g).occurs().is_subset(&allowed) {
                return Err(Error::BlockConstraintViolated(format!(
                    "image of generator {g} leaves its block"
                )));
            }
            images[g - 1] = b.map.image(g).clone();
        }
        let idx: Vec<usize> = b.generators.iter().map(|&g| g - 1).collect();
        if !b.map.matrix().principal(&idx).is_unimodular() {
            return Err(Error::BlockConstraintViolated(
                "block map is not an automorphism of its block".into(),
            ));
        }
    }
    GeneratorMap::from_images(ctx, images)
}

/// `x_b ↦ x_b · z_b` on the assigned generators, identity elsewhere. Every
/// `z_b` must lie in `γ_2`, so the result is an IA-automorphism.
pub fn ia_central(ctx: GroupContext, assignment: &BTreeMap<usize, GroupElement>) -> Result<GeneratorMap> {
    let mut images: Vec<GroupElement> = (1..=ctx.rank())
        .map(|i| GroupElement::generator(ctx, i))
        .collect::<Result<_>>()?;
    for (&b, z) in assignment {
        ctx.check_generator(b)?;
        ctx.ensure_same(z.context())?;
        if z.lcs_weight() < crate::ring::Weight::Finite(2) {
            return Err(Error::NotInGamma2);
        }
        if !z.is_identity() {
            images[b - 1] = images[b - 1].mul(z)?;
        }
    }
    GeneratorMap::from_images(ctx, images)
}

/// Wire form `{"rank": n, "class": c, "images": [<Word>, …]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorMapRepr {
    pub rank: usize,
    pub class: usize,
    pub images: Vec<Word>,
}

impl From<&GeneratorMap> for GeneratorMapRepr {
    fn from(m: &GeneratorMap) -> Self {
        GeneratorMapRepr { rank: m.ctx.rank(), class: m.ctx.class(), images: m.words().to_vec() }
    }
}

impl TryFrom<GeneratorMapRepr> for GeneratorMap {
    type Error = Error;
    fn try_from(r: GeneratorMapRepr) -> Result<Self> {
        GeneratorMap::from_words(GroupContext::new(r.rank, r.class)?, r.images)
    }
}

impl Serialize for GeneratorMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GeneratorMapRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for GeneratorMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = GeneratorMapRepr::deserialize(d)?;
        GeneratorMap::try_from(repr).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: usize, c: usize) -> GroupContext {
        GroupContext::new(n, c).unwrap()
    }

    fn w(pairs: &[(usize, i64)]) -> Word {
        Word::from_pairs(pairs).unwrap()
    }

    fn map(ctx: GroupContext, images: &[&[(usize, i64)]]) -> GeneratorMap {
        GeneratorMap::from_words(ctx, images.iter().map(|p| w(p)).collect()).unwrap()
    }

    fn set(xs: &[usize]) -> GenSet {
        xs.iter().copied().collect()
    }

    /// x₁ ↦ x₁x₂, other generators fixed.
    fn transvection(ctx: GroupContext) -> GeneratorMap {
        let mut images: Vec<Word> = (1..=ctx.rank()).map(|i| Word::generator(i, 1)).collect();
        images[0] = w(&[(1, 1), (2, 1)]);
        GeneratorMap::from_words(ctx, images).unwrap()
    }

    #[test]
    fn apply_examples() {
        let c = ctx(2, 3);
        let a = GroupElement::from_word(c, &w(&[(1, 2), (2, -1)])).unwrap();
        assert_eq!(GeneratorMap::identity(c).apply(&a).unwrap(), a);
        let phi = transvection(c);
        let x1 = GroupElement::generator(c, 1).unwrap();
        let expect = GroupElement::from_word(c, &w(&[(1, 1), (2, 1)])).unwrap();
        assert_eq!(phi.apply(&x1).unwrap(), expect);
        assert_eq!(phi.apply_via_word(&a).unwrap(), phi.apply(&a).unwrap());
    }

    #[test]
    fn compose_examples() {
        let c = ctx(3, 2);
        let phi = map(c, &[&[(1, 1), (3, 2)], &[(2, -1)], &[(3, 1), (1, 1)]]);
        assert_eq!(phi.compose(&GeneratorMap::identity(c)).unwrap(), phi);
        assert_eq!(GeneratorMap::identity(c).compose(&phi).unwrap(), phi);
        let psi = transvection(c);
        let both = phi.compose(&psi).unwrap();
        assert_eq!(*both.matrix(), phi.matrix().mul(psi.matrix()));
    }

    #[test]
    fn automorphism_criterion() {
        let c = ctx(2, 2);
        assert!(GeneratorMap::identity(c).is_automorphism());
        let square = map(c, &[&[(1, 2)], &[(2, 1)]]);
        assert!(!square.is_automorphism());
        assert_eq!(square.determinant(), 2.into());
        assert_eq!(square.invert(), Err(Error::NotAutomorphism));
    }

    #[test]
    fn invert_examples() {
        let c = ctx(2, 3);
        assert_eq!(GeneratorMap::identity(c).invert().unwrap(), GeneratorMap::identity(c));
        let inv = transvection(c).invert().unwrap();
        assert_eq!(inv, map(c, &[&[(1, 1), (2, -1)], &[(2, 1)]]));
        let ia = map(
            c,
            &[&[(1, 1), (2, 1), (1, 1), (2, -1), (1, -1)], &[(2, 1), (1, 1), (2, 1), (1, -1), (2, -1)]],
        );
        let mixed = map(
            c,
            &[&[(1, 1), (2, 1), (1, 1), (2, -1), (1, -1), (2, 1)], &[(2, 1), (1, 1), (2, -1)]],
        );
        for phi in [ia, mixed] {
            assert!(phi.is_automorphism());
            let (inv, rounds) = phi.invert_counting().unwrap();
            assert!(phi.compose(&inv).unwrap().is_identity());
            assert!(inv.compose(&phi).unwrap().is_identity());
            assert!(rounds <= 3);
        }
    }

    #[test]
    fn stabilizer_predicates() {
        let c = ctx(4, 2);
        let t = transvection(c);
        assert!(GeneratorMap::identity(c).fixes_pointwise(&set(&[1, 3])));
        assert!(t.fixes_pointwise(&set(&[2, 3, 4])));
        assert!(!t.fixes_pointwise(&set(&[1])));
        assert!(t.preserves(&set(&[1, 2])).unwrap());
        assert!(!t.preserves(&set(&[1])).unwrap());
        assert!(GeneratorMap::identity(c).preserves(&set(&[2])).unwrap());
        // x₂ ↦ x₂x₁ keeps ⟨x₁⟩ inside itself but x₁ ↦ x₁² is not onto ⟨x₁⟩
        let not_aut = map(c, &[&[(1, 2)], &[(2, 1)], &[(3, 1)], &[(4, 1)]]);
        assert_eq!(not_aut.preserves(&set(&[1])), Err(Error::NotAutomorphism));
    }

    #[test]
    fn certificates() {
        let c = ctx(4, 2);
        let t = transvection(c);
        let good = MoietyCertificate::new(&c, set(&[3, 4]), set(&[1, 2])).unwrap();
        let bad = MoietyCertificate::new(&c, set(&[2, 3]), set(&[1, 4])).unwrap();
        assert!(t.check_certificate(&good).unwrap());
        assert!(!t.check_certificate(&bad).unwrap());
        assert!(GeneratorMap::identity(c).check_certificate(&bad).unwrap());
        assert!(MoietyCertificate::new(&c, set(&[1, 2]), set(&[2, 3, 4])).is_err());
        assert!(MoietyCertificate::new(&c, set(&[1, 2, 3, 4]), set(&[])).is_err());
        assert!(MoietyCertificate::new(&c, set(&[1]), set(&[2, 3])).is_err());
        assert_eq!(
            serde_json::to_string(&good).unwrap(),
            r#"{"fixed":[3,4],"preserved":[1,2]}"#
        );
    }

    #[test]
    fn permutations() {
        let c = ctx(3, 3);
        assert!(permutational(c, &[1, 2, 3]).unwrap().is_identity());
        let swap = permutational(c, &[2, 1, 3]).unwrap();
        assert!(swap.compose(&swap).unwrap().is_identity());
        assert_eq!(permutational(c, &[1, 1, 3]), Err(Error::NotABijection));
        assert_eq!(permutational(c, &[1, 2]), Err(Error::NotABijection));
        let p = permutational(c, &[2, 3, 1]).unwrap();
        let q = permutational(c, &[3, 1, 2]).unwrap();
        assert!(p.compose(&q).unwrap().is_identity());
    }

    #[test]
    fn blockwise_examples() {
        let c = ctx(4, 2);
        let id = GeneratorMap::identity(c);
        let blocks = [
            Block { generators: set(&[1, 2]), kind: BlockKind::Free, map: id.clone() },
            Block { generators: set(&[3]), kind: BlockKind::Attached, map: id.clone() },
        ];
        assert!(blockwise(c, &set(&[4]), &blocks).unwrap().is_identity());

        let t = transvection(c);
        let attached = map(c, &[&[(1, 1)], &[(2, 1)], &[(3, 1), (4, -1)], &[(4, 1)]]);
        let blocks = [
            Block { generators: set(&[1, 2]), kind: BlockKind::Free, map: t.clone() },
            Block { generators: set(&[3]), kind: BlockKind::Attached, map: attached.clone() },
        ];
        let b = blockwise(c, &set(&[4]), &blocks).unwrap();
        assert_eq!(b, t.compose(&attached).unwrap());
        assert!(b.fixes_pointwise(&set(&[4])));

        let overlap = [Block { generators: set(&[1, 4]), kind: BlockKind::Free, map: id.clone() }];
        assert!(matches!(blockwise(c, &set(&[4]), &overlap), Err(Error::PartitionInvalid(_))));
        let gap = [Block { generators: set(&[1]), kind: BlockKind::Free, map: id.clone() }];
        assert!(matches!(blockwise(c, &set(&[4]), &gap), Err(Error::PartitionInvalid(_))));
        let escaping = [
            Block { generators: set(&[1]), kind: BlockKind::Free, map: t.clone() },
            Block { generators: set(&[2, 3]), kind: BlockKind::Free, map: id.clone() },
        ];
        assert!(matches!(
            blockwise(c, &set(&[4]), &escaping),
            Err(Error::BlockConstraintViolated(_))
        ));
        let free_with_d = [
            Block { generators: set(&[1, 2]), kind: BlockKind::Free, map: id },
            Block { generators: set(&[3]), kind: BlockKind::Free, map: attached },
        ];
        assert!(matches!(
            blockwise(c, &set(&[4]), &free_with_d),
            Err(Error::BlockConstraintViolated(_))
        ));
    }

    #[test]
    fn ia_central_examples() {
        let c = ctx(3, 2);
        assert!(ia_central(c, &BTreeMap::new()).unwrap().is_identity());
        let x = |i| GroupElement::generator(c, i).unwrap();
        let z = x(2).comm(&x(3)).unwrap();
        let phi = ia_central(c, &BTreeMap::from([(1, z.clone())])).unwrap();
        assert_eq!(*phi.image(1), x(1).mul(&z).unwrap());
        assert!(phi.is_automorphism());
        assert!(phi.matrix().is_identity());
        assert_eq!(ia_central(c, &BTreeMap::from([(1, x(2))])), Err(Error::NotInGamma2));
    }

    #[test]
    fn projection_and_lift() {
        let c = ctx(3, 3);
        assert!(GeneratorMap::identity(c).project(2).unwrap().is_identity());
        let x = |i| GroupElement::generator(c, i).unwrap();
        let z = GroupElement::left_normed(&[x(1), x(2), x(3)]).unwrap();
        let phi = ia_central(c, &BTreeMap::from([(2, z)])).unwrap();
        assert!(phi.project(2).unwrap().is_identity());
        assert!(matches!(phi.project(3), Err(Error::BadClass { .. })));

        let low = map(
            ctx(3, 2),
            &[&[(1, 1), (2, 1)], &[(3, 1), (2, 1), (3, -1), (1, 1), (2, 1), (1, -1), (2, -1)], &[(3, 1)]],
        );
        let lifted = low.lift_words(3).unwrap();
        assert_eq!(lifted.project(2).unwrap(), low);
        assert_eq!(lifted.determinant(), low.determinant());
        assert!(GeneratorMap::identity(ctx(3, 2)).lift_words(3).unwrap().is_identity());
    }

    #[test]
    fn serde_shape() {
        let c = ctx(2, 2);
        let t = transvection(c);
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, r#"{"rank":2,"class":2,"images":[[[1,1],[2,1]],[[2,1]]]}"#);
        assert_eq!(serde_json::from_str::<GeneratorMap>(&json).unwrap(), t);
        assert!(serde_json::from_str::<GeneratorMap>(r#"{"rank":2,"class":2,"images":[[[3,1]],[[2,1]]]}"#).is_err());
    }
}
