//! Factorization of automorphisms fixing a generator set `D` pointwise into
//! certified moietous factors.
//!
//! A [`Decomposition`] lists factors `f₁, …, f_m` with `f₁ ∘ f₂ ∘ ⋯ ∘ f_m`
//! equal to the input, under `(φ∘ψ)(x) = φ(ψ(x))`. The abelian case splits
//! off an elementary factorization of the unimodular block on `E = B∖D` and
//! two translations into `D`; higher classes lift the factorization of the
//! quotient one class down and finish with central IA-automorphisms.

mod glz;
mod verify;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

pub use glz::{factor_glz, product as moves_product, ElementaryMove};
pub use verify::{verify, verify_json, VerifyReport};

use crate::endo::{ia_central, permutational, push_big_power, GeneratorMap, MoietyCertificate};
use crate::error::{Error, Result};
use crate::lie::central_factorize;
use crate::ring::{GenSet, GroupContext, GroupElement, Weight, Word};

/// What produced a factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorTag {
    ElementaryAbelian,
    Shear,
    Permutation,
    Sign,
    Lifted,
    CentralBeta,
}

/// One certified factor. `level` is the class at which the factor was first
/// emitted; lifted factors keep it and record the original tag in `origin`.
/// `part` is the index `k` of the avoided part for central factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub map: GeneratorMap,
    pub certificate: MoietyCertificate,
    pub tag: FactorTag,
    pub level: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub part: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origin: Option<FactorTag>,
}

impl Factor {
    fn new(map: GeneratorMap, certificate: MoietyCertificate, tag: FactorTag, level: usize) -> Self {
        Factor { map, certificate, tag, level, part: None, origin: None }
    }

    /// The tag the factor was emitted with, looking through lifts.
    pub fn original_tag(&self) -> FactorTag {
        self.origin.unwrap_or(self.tag)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub input: GeneratorMap,
    pub fixed: GenSet,
    pub factors: Vec<Factor>,
}

impl Decomposition {
    /// `f₁ ∘ ⋯ ∘ f_m`, in the input's context.
    pub fn product(&self) -> Result<GeneratorMap> {
        product_of(*self.input.context(), self.factors.iter().map(|f| &f.map))
    }
}

/// Ordered composition of maps, starting from the identity of `ctx`.
pub fn product_of<'a>(
    ctx: GroupContext,
    maps: impl IntoIterator<Item = &'a GeneratorMap>,
) -> Result<GeneratorMap> {
    maps.into_iter().try_fold(GeneratorMap::identity(ctx), |acc, m| acc.compose(m))
}

fn check_preconditions(sigma: &GeneratorMap, fixed: &GenSet) -> Result<()> {
    sigma.context().check_subset(fixed)?;
    if !sigma.is_automorphism() {
        return Err(Error::NotAutomorphism);
    }
    if !sigma.fixes_pointwise(fixed) {
        return Err(Error::DoesNotFixD);
    }
    Ok(())
}

fn free_generators(ctx: &GroupContext, fixed: &GenSet) -> Vec<usize> {
    ctx.generators().difference(fixed).copied().collect()
}

fn generator_words(ctx: &GroupContext) -> Vec<Word> {
    (1..=ctx.rank()).map(|g| Word::generator(g, 1)).collect()
}

/// Factorization in class 1: `σ = γ₀ ∘ π₁ ∘ π₂` with `γ₀` the elementary
/// factorization of the `E`-block and `π₁`, `π₂` translations into `D` on
/// the two halves of `E`.
pub fn abelian_decompose(sigma: &GeneratorMap, fixed: &GenSet) -> Result<Decomposition> {
    let ctx = *sigma.context();
    if ctx.class() != 1 {
        return Err(Error::BadClass { target: 1, class: ctx.class() });
    }
    check_preconditions(sigma, fixed)?;
    let free = free_generators(&ctx, fixed);
    if free.len() < 4 {
        return Err(Error::RankTooSmall(format!(
            "{} free generators, the abelian step needs 4",
            free.len()
        )));
    }
    let idx: Vec<usize> = free.iter().map(|&g| g - 1).collect();
    let block = sigma.matrix().principal(&idx);
    let mut factors = Vec::new();

    for mv in factor_glz(&block)? {
        let touched: GenSet = mv.support().into_iter().map(|a| free[a]).collect();
        let mut words = generator_words(&ctx);
        let (map, tag) = match &mv {
            ElementaryMove::Transvection { row, col, factor } => {
                let target = free[*col];
                push_big_power(&mut words[target - 1], free[*row], factor);
                (GeneratorMap::from_words(ctx, words)?, FactorTag::ElementaryAbelian)
            }
            ElementaryMove::Swap(a, b) => {
                let mut perm: Vec<usize> = (1..=ctx.rank()).collect();
                perm.swap(free[*a] - 1, free[*b] - 1);
                (permutational(ctx, &perm)?, FactorTag::Permutation)
            }
            ElementaryMove::Sign(a) => {
                words[free[*a] - 1] = Word::generator(free[*a], -1);
                (GeneratorMap::from_words(ctx, words)?, FactorTag::Sign)
            }
        };
        let rest: Vec<usize> = free.iter().copied().filter(|g| !touched.contains(g)).collect();
        let p: GenSet = rest[..rest.len().div_ceil(2)].iter().copied().collect();
        factors.push(Factor::new(map, MoietyCertificate::fixing(&ctx, p)?, tag, 1));
    }

    let (first, second) = free.split_at(free.len().div_ceil(2));
    for (movers, others) in [(first, second), (second, first)] {
        let mut words = generator_words(&ctx);
        for &g in movers {
            for &d in fixed {
                push_big_power(&mut words[g - 1], d, sigma.matrix().get(d - 1, g - 1));
            }
        }
        let map = GeneratorMap::from_words(ctx, words)?;
        if map.is_identity() {
            continue;
        }
        let cert = MoietyCertificate::fixing(&ctx, others.iter().copied().collect())?;
        factors.push(Factor::new(map, cert, FactorTag::Shear, 1));
    }
    Ok(Decomposition { input: sigma.clone(), fixed: fixed.clone(), factors })
}

/// Lifts a certified factor of `N_{n,c-1}` fixing `D` to one of `N_{n,c}`
/// with the same certificate, fixing `D` exactly and projecting back to it.
pub fn lift_factor(f: &Factor, target: usize, fixed: &GenSet) -> Result<Factor> {
    let low = f.map.context();
    if target != low.class() + 1 {
        return Err(Error::BadClass { target, class: low.class() });
    }
    if !f.map.check_certificate(&f.certificate)? {
        return Err(Error::CertificateInvalid("factor violates its certificate".into()));
    }
    low.check_subset(fixed)?;
    if !f.map.fixes_pointwise(fixed) {
        return Err(Error::DoesNotFixD);
    }
    let ctx = low.with_class(target)?;
    let cert = &f.certificate;

    // Reading the words in the higher class keeps P fixed and, after
    // retraction onto Q, keeps ⟨Q⟩ invariant.
    let words: Vec<Word> = f
        .map
        .words()
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let g = i + 1;
            if cert.fixed.contains(&g) {
                Word::generator(g, 1)
            } else {
                w.retain(&cert.preserved)
            }
        })
        .collect();
    let sigma0 = GeneratorMap::from_words(ctx, words)?;

    let mut defects = BTreeMap::new();
    for &d in fixed {
        let x = GroupElement::generator(ctx, d)?;
        let z = x.inv().mul(sigma0.image(d))?;
        if !z.is_identity() {
            debug_assert!(z.lcs_weight() >= Weight::Finite(target));
            defects.insert(d, z);
        }
    }
    let sigma = if defects.is_empty() {
        sigma0
    } else {
        ia_central(ctx, &defects)?.invert()?.compose(&sigma0)?
    };
    debug_assert!(sigma.fixes_pointwise(fixed));
    debug_assert!(sigma.check_certificate(cert).unwrap_or(false));

    Ok(Factor {
        map: sigma,
        certificate: cert.clone(),
        tag: FactorTag::Lifted,
        level: f.level,
        part: f.part,
        origin: Some(f.original_tag()),
    })
}

/// Splits `items` into `parts` consecutive runs whose sizes differ by at
/// most one, longer runs first.
fn split_even(items: &[usize], parts: usize) -> Vec<GenSet> {
    let (base, extra) = (items.len() / parts, items.len() % parts);
    let mut out = Vec::with_capacity(parts);
    let mut start = 0;
    for k in 0..parts {
        let len = base + usize::from(k < extra);
        out.push(items[start..start + len].iter().copied().collect());
        start += len;
    }
    out
}

/// Factors a central IA-automorphism `α` (identity modulo `γ_c`) fixing
/// `D` into at most `2(c+1)` commuting factors `β_k g = g · t_k(g)`, where
/// each `t_k` avoids every generator of its part `F_k`.
pub fn central_decompose(alpha: &GeneratorMap, fixed: &GenSet) -> Result<Vec<Factor>> {
    let ctx = *alpha.context();
    check_preconditions(alpha, fixed)?;
    let c = ctx.class();
    if alpha.is_identity() {
        return Ok(Vec::new());
    }
    if c == 1 {
        return Err(Error::NotCentralIA);
    }
    let free = free_generators(&ctx, fixed);
    if free.len() < 2 * (c + 1) {
        return Err(Error::RankTooSmall(format!(
            "{} free generators, the central step needs {}",
            free.len(),
            2 * (c + 1)
        )));
    }
    let mut defects = BTreeMap::new();
    for g in alpha.moved() {
        let w = GroupElement::generator(ctx, g)?.inv().mul(alpha.image(g))?;
        if w.lcs_weight() < Weight::Finite(c) {
            return Err(Error::NotCentralIA);
        }
        defects.insert(g, w);
    }

    let (first, second) = free.split_at(free.len().div_ceil(2));
    let mut factors = Vec::new();
    for (pool, movers) in [(first, second), (second, first)] {
        let parts = split_even(pool, c + 1);
        let mut pieces: Vec<BTreeMap<usize, GroupElement>> = vec![BTreeMap::new(); c + 1];
        for g in movers {
            let Some(w) = defects.get(g) else { continue };
            for term in central_factorize(w)? {
                let support = term.support();
                let k = parts
                    .iter()
                    .position(|part| part.is_disjoint(&support))
                    .expect("a weight-c term meets at most c of the c+1 parts");
                let t = term.to_element(ctx)?;
                let acc = pieces[k].entry(*g).or_insert_with(|| GroupElement::identity(ctx));
                *acc = acc.mul(&t)?;
            }
        }
        for (k, assignment) in pieces.into_iter().enumerate() {
            let assignment: BTreeMap<usize, GroupElement> =
                assignment.into_iter().filter(|(_, t)| !t.is_identity()).collect();
            if assignment.is_empty() {
                continue;
            }
            let mut preserved: GenSet = assignment.keys().copied().collect();
            for t in assignment.values() {
                preserved.extend(t.occurs());
            }
            debug_assert!(preserved.is_disjoint(&parts[k]));
            let fixed_block: GenSet = ctx.generators().difference(&preserved).copied().collect();
            let map = ia_central(ctx, &assignment)?;
            let cert = MoietyCertificate::new(&ctx, fixed_block, preserved)?;
            let mut factor = Factor::new(map, cert, FactorTag::CentralBeta, c);
            factor.part = Some(k + 1);
            factors.push(factor);
        }
    }
    assert!(
        product_of(ctx, factors.iter().map(|f| &f.map))? == *alpha,
        "central factors must multiply back to the input"
    );
    Ok(factors)
}

/// Factors an automorphism fixing `D` pointwise into certified moietous
/// factors, by induction on the class.
pub fn decompose(sigma: &GeneratorMap, fixed: &GenSet) -> Result<Decomposition> {
    check_preconditions(sigma, fixed)?;
    let ctx = sigma.context();
    let free = ctx.rank() - fixed.len();
    let needed = 4.max(2 * (ctx.class() + 1));
    if free < needed {
        return Err(Error::RankTooSmall(format!("{free} free generators, need {needed}")));
    }
    let factors = decompose_factors(sigma, fixed)?;
    Ok(Decomposition { input: sigma.clone(), fixed: fixed.clone(), factors })
}

fn decompose_factors(sigma: &GeneratorMap, fixed: &GenSet) -> Result<Vec<Factor>> {
    let c = sigma.context().class();
    if c == 1 {
        return Ok(abelian_decompose(sigma, fixed)?.factors);
    }
    let lower = decompose_factors(&sigma.project(c - 1)?, fixed)?;
    let mut factors = lower
        .iter()
        .map(|f| lift_factor(f, c, fixed))
        .collect::<Result<Vec<_>>>()?;
    // γ⁻¹σ = f_m⁻¹ ∘ ⋯ ∘ f₁⁻¹ ∘ σ, one sparse factor at a time
    let mut alpha = sigma.clone();
    for f in &factors {
        alpha = f.map.invert()?.compose(&alpha)?;
    }
    if !alpha.project(c - 1)?.is_identity() {
        return Err(Error::NotCentralIA);
    }
    factors.extend(central_decompose(&alpha.canonical(), fixed)?);
    Ok(factors)
}

/// Largest coefficient magnitude over the factors' images.
pub fn max_factor_coefficient(factors: &[Factor]) -> BigInt {
    factors.iter().map(|f| f.map.max_coefficient()).max().unwrap_or_else(BigInt::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endo::{random_automorphism, RandomParams};

    fn ctx(n: usize, c: usize) -> GroupContext {
        GroupContext::new(n, c).unwrap()
    }

    fn w(pairs: &[(usize, i64)]) -> Word {
        Word::from_pairs(pairs).unwrap()
    }

    fn map_with(ctx: GroupContext, changes: &[(usize, Word)]) -> GeneratorMap {
        let mut words = generator_words(&ctx);
        for (g, word) in changes {
            words[g - 1] = word.clone();
        }
        GeneratorMap::from_words(ctx, words).unwrap()
    }

    fn assert_sound(dec: &Decomposition) {
        assert_eq!(dec.product().unwrap(), dec.input);
        for f in &dec.factors {
            assert!(f.map.check_certificate(&f.certificate).unwrap(), "{f:?}");
            assert!(f.map.fixes_pointwise(&dec.fixed));
            assert!(!f.map.is_identity());
        }
    }

    #[test]
    fn glz_examples() {
        use crate::endo::IntMatrix;
        let a = IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]);
        let moves = factor_glz(&a).unwrap();
        assert!(moves.iter().all(|m| matches!(m, ElementaryMove::Transvection { .. })));
        assert_eq!(moves_product(2, &moves), a);
    }

    #[test]
    fn abelian_identity_is_empty() {
        let k = ctx(5, 1);
        let dec = abelian_decompose(&GeneratorMap::identity(k), &[1].into()).unwrap();
        assert!(dec.factors.is_empty());
    }

    #[test]
    fn pure_translation_is_one_shear() {
        let k = ctx(4, 1);
        let sigma = map_with(k, &[(2, w(&[(2, 1), (1, 1)]))]);
        // |E| = 3 is below the abelian threshold
        assert!(matches!(abelian_decompose(&sigma, &[1].into()), Err(Error::RankTooSmall(_))));
        let k = ctx(5, 1);
        let sigma = map_with(k, &[(2, w(&[(2, 1), (1, 1)]))]);
        let dec = abelian_decompose(&sigma, &[1].into()).unwrap();
        assert_eq!(dec.factors.len(), 1);
        assert_eq!(dec.factors[0].tag, FactorTag::Shear);
        assert_sound(&dec);
    }

    #[test]
    fn abelian_preconditions() {
        let k = ctx(6, 1);
        let sigma = map_with(k, &[(1, w(&[(1, 1), (2, 1)]))]);
        assert_eq!(abelian_decompose(&sigma, &[1].into()), Err(Error::DoesNotFixD));
        let singular = map_with(k, &[(2, w(&[(2, 2)]))]);
        assert_eq!(abelian_decompose(&singular, &GenSet::new()), Err(Error::NotAutomorphism));
    }

    #[test]
    fn abelian_round_trips() {
        for (n, d) in [(6, vec![]), (6, vec![2]), (8, vec![1, 8]), (8, vec![3])] {
            let fixed: GenSet = d.into_iter().collect();
            for seed in 0..15 {
                let sigma = random_automorphism(
                    seed,
                    ctx(n, 1),
                    &RandomParams { length: 20, fix: fixed.clone() },
                );
                let dec = abelian_decompose(&sigma, &fixed).unwrap();
                assert_sound(&dec);
            }
        }
    }

    #[test]
    fn lift_identity_and_trivial_defects() {
        let low = ctx(6, 1);
        let fixed: GenSet = [1].into();
        let id = Factor::new(
            GeneratorMap::identity(low),
            MoietyCertificate::fixing(&low, [2].into()).unwrap(),
            FactorTag::Shear,
            1,
        );
        let lifted = lift_factor(&id, 2, &fixed).unwrap();
        assert!(lifted.map.is_identity());
        assert_eq!(lifted.origin, Some(FactorTag::Shear));

        // x3 ↦ x3 x4 never touches D, so no correction is needed
        let f = Factor::new(
            map_with(low, &[(3, w(&[(3, 1), (4, 1)]))]),
            MoietyCertificate::fixing(&low, [5, 6].into()).unwrap(),
            FactorTag::ElementaryAbelian,
            1,
        );
        let lifted = lift_factor(&f, 2, &fixed).unwrap();
        assert_eq!(lifted.map, f.map.lift_words(2).unwrap());
        assert_eq!(lifted.map.project(1).unwrap(), f.map);
    }

    #[test]
    fn lift_corrects_defects_on_d() {
        // the word x1 [x2,x3,x4] is x1 in class 2 but not in class 3
        let low = ctx(6, 2);
        let fixed: GenSet = [1].into();
        let z = Word::commutator(&Word::commutator(&w(&[(2, 1)]), &w(&[(3, 1)])), &w(&[(4, 1)]));
        let m = map_with(low, &[(1, w(&[(1, 1)]).concat(&z)), (2, w(&[(2, 1), (3, 1)]))]);
        assert!(m.fixes_pointwise(&fixed));
        assert!(!m.lift_words(3).unwrap().fixes_pointwise(&fixed));
        let f = Factor::new(m.clone(), MoietyCertificate::fixing(&low, [5, 6].into()).unwrap(), FactorTag::Shear, 1);
        let lifted = lift_factor(&f, 3, &fixed).unwrap();
        assert!(lifted.map.fixes_pointwise(&fixed));
        assert!(lifted.map.check_certificate(&lifted.certificate).unwrap());
        assert_eq!(lifted.map.project(2).unwrap(), m);
    }

    #[test]
    fn lift_rejects_bad_certificate() {
        let low = ctx(6, 1);
        let f = Factor::new(
            map_with(low, &[(3, w(&[(3, 1), (4, 1)]))]),
            MoietyCertificate::fixing(&low, [3].into()).unwrap(),
            FactorTag::ElementaryAbelian,
            1,
        );
        assert!(matches!(lift_factor(&f, 2, &GenSet::new()), Err(Error::CertificateInvalid(_))));
    }

    #[test]
    fn central_single_term() {
        // n = 2(c+1)+2 with c = 2, D = {1}; G is the upper half of E
        let k = ctx(8, 2);
        let fixed: GenSet = [1].into();
        let z = GroupElement::left_normed(&[
            GroupElement::generator(k, 6).unwrap(),
            GroupElement::generator(k, 1).unwrap(),
        ])
        .unwrap();
        let alpha = ia_central(k, &BTreeMap::from([(7, z)])).unwrap();
        let factors = central_decompose(&alpha, &fixed).unwrap();
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].tag, FactorTag::CentralBeta);
        assert!(factors[0].map.check_certificate(&factors[0].certificate).unwrap());
        assert_eq!(factors[0].map, alpha);
    }

    #[test]
    fn central_identity_and_errors() {
        let k = ctx(8, 2);
        assert!(central_decompose(&GeneratorMap::identity(k), &GenSet::new()).unwrap().is_empty());
        let shear = map_with(k, &[(2, w(&[(2, 1), (3, 1)]))]);
        assert_eq!(central_decompose(&shear, &GenSet::new()), Err(Error::NotCentralIA));
        let small = ctx(5, 2);
        let z = GroupElement::left_normed(&[
            GroupElement::generator(small, 1).unwrap(),
            GroupElement::generator(small, 2).unwrap(),
        ])
        .unwrap();
        let alpha = ia_central(small, &BTreeMap::from([(3, z)])).unwrap();
        assert!(matches!(central_decompose(&alpha, &GenSet::new()), Err(Error::RankTooSmall(_))));
    }

    #[test]
    fn central_factors_commute() {
        let k = ctx(9, 3);
        let fixed: GenSet = [2].into();
        let mut assignment = BTreeMap::new();
        for (g, letters) in [(3, [1, 4, 5]), (8, [6, 2, 7]), (5, [3, 8, 8])] {
            let elems: Vec<_> = letters.iter().map(|&b| GroupElement::generator(k, b).unwrap()).collect();
            assignment.insert(g, GroupElement::left_normed(&elems).unwrap());
        }
        let alpha = ia_central(k, &assignment).unwrap();
        let factors = central_decompose(&alpha, &fixed).unwrap();
        assert!(factors.len() > 1);
        let reversed = product_of(k, factors.iter().rev().map(|f| &f.map)).unwrap();
        assert_eq!(reversed, alpha);
    }

    #[test]
    fn decompose_identity_and_swap() {
        let k = ctx(8, 2);
        let fixed: GenSet = [1].into();
        let dec = decompose(&GeneratorMap::identity(k), &fixed).unwrap();
        assert!(dec.factors.is_empty());
        let mut perm: Vec<usize> = (1..=8).collect();
        perm.swap(2, 5);
        let swap = permutational(k, &perm).unwrap();
        let dec = decompose(&swap, &fixed).unwrap();
        assert_sound(&dec);
        assert!(!dec.factors.is_empty());
    }

    #[test]
    fn decompose_seeded() {
        for (n, c, d) in [(8, 2, vec![1]), (8, 3, vec![]), (10, 3, vec![4, 9])] {
            let fixed: GenSet = d.into_iter().collect();
            for seed in 0..3 {
                let sigma = random_automorphism(
                    seed,
                    ctx(n, c),
                    &RandomParams { length: 10, fix: fixed.clone() },
                );
                let dec = decompose(&sigma, &fixed).unwrap();
                assert_sound(&dec);
                let lifted: Vec<_> = dec.factors.iter().filter(|f| f.tag == FactorTag::Lifted).collect();
                let lower = decompose(&sigma.project(c - 1).unwrap(), &fixed).unwrap();
                assert_eq!(lifted.len(), lower.factors.len());
                let lifted_product = product_of(ctx(n, c), lifted.iter().map(|f| &f.map)).unwrap();
                assert_eq!(lifted_product.project(c - 1).unwrap(), lower.product().unwrap());
            }
        }
    }

    #[test]
    fn decompose_rank_checks() {
        let k = ctx(7, 2);
        assert!(matches!(decompose(&GeneratorMap::identity(k), &[1, 2].into()), Err(Error::RankTooSmall(_))));
        assert_eq!(
            decompose(&GeneratorMap::identity(k), &[9].into()),
            Err(Error::IndexOutOfRange { index: 9, rank: 7 })
        );
    }

    #[test]
    fn serialization_round_trip() {
        let k = ctx(8, 2);
        let fixed: GenSet = [3].into();
        let sigma = random_automorphism(5, k, &RandomParams { length: 8, fix: fixed.clone() });
        let dec = decompose(&sigma, &fixed).unwrap();
        let json = serde_json::to_string(&dec).unwrap();
        let back: Decomposition = serde_json::from_str(&json).unwrap();
        assert_eq!(back, dec);
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        let first = &value["factors"][0];
        assert!(first["tag"].is_string());
        assert!(first["level"].is_u64());
    }
}
