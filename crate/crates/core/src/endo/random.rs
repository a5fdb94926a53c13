use std::collections::BTreeMap;

use super::{ia_central, GeneratorMap, SplitMix64};
use crate::ring::{GenSet, GroupContext, GroupElement, Word};

/// Parameters of [`random_automorphism`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RandomParams {
    /// Number of elementary moves.
    pub length: usize,
    /// Generators the result must fix pointwise.
    pub fix: GenSet,
}

/// Seeded product `m₁ ∘ m₂ ∘ … ∘ m_L` of elementary automorphisms fixing
/// `params.fix` pointwise. With `E` the sorted list of free generators and
/// every draw taken from one splitmix64 stream, each move consumes:
///
/// * `kind = below(4)`, then by kind
/// * `0` transvection `x_i ↦ x_i x_j^s`: `i = E[below(|E|)]`,
///   `j = others[below(n-1)]` over `{1..n}∖{i}` ascending, `s = sign()`;
/// * `1` inversion `x_i ↦ x_i⁻¹`: `i = E[below(|E|)]`;
/// * `2` transposition of `E[a]`, `E[b]`: `a = below(|E|)`,
///   `b = below(|E|-1)`, bumped by one when `b ≥ a`;
/// * `3` central shear `x_i ↦ x_i · [x_{a₁}^s, x_{a₂}, …, x_{a_w}]`:
///   `i = E[below(|E|)]`, `w = 2 + below(c-1)`, each `a_t = 1 + below(n)`,
///   `s = sign()`.
///
/// Kinds that cannot apply (transvections when `n = 1`, transpositions when
/// `|E| < 2`, shears when `c = 1`) fall back to an inversion with the same
/// generator draw. With `E` empty the result is the identity and no draws
/// are made.
pub fn random_automorphism(seed: u64, ctx: GroupContext, params: &RandomParams) -> GeneratorMap {
    let n = ctx.rank();
    let free: Vec<usize> = (1..=n).filter(|i| !params.fix.contains(i)).collect();
    let mut result = GeneratorMap::identity(ctx);
    if free.is_empty() {
        return result;
    }
    let mut rng = SplitMix64::new(seed);
    for _ in 0..params.length {
        let kind = rng.below(4);
        let mv = match kind {
            0 if n > 1 => {
                let i = free[rng.below(free.len())];
                let others: Vec<usize> = (1..=n).filter(|&j| j != i).collect();
                let j = others[rng.below(n - 1)];
                let s = rng.sign();
                replace_image(ctx, i, Word::generator(i, 1).concat(&Word::generator(j, s)))
            }
            2 if free.len() >= 2 => {
                let a = rng.below(free.len());
                let mut b = rng.below(free.len() - 1);
                if b >= a {
                    b += 1;
                }
                let mut perm: Vec<usize> = (1..=n).collect();
                perm.swap(free[a] - 1, free[b] - 1);
                super::permutational(ctx, &perm).expect("transposition")
            }
            3 if ctx.class() >= 2 => {
                let i = free[rng.below(free.len())];
                let weight = 2 + rng.below(ctx.class() - 1);
                let letters: Vec<usize> = (0..weight).map(|_| 1 + rng.below(n)).collect();
                let s = rng.sign();
                let mut elems: Vec<GroupElement> = letters
                    .iter()
                    .map(|&g| GroupElement::generator(ctx, g).expect("in range"))
                    .collect();
                elems[0] = elems[0].pow(s);
                let z = GroupElement::left_normed(&elems).expect("same context");
                ia_central(ctx, &BTreeMap::from([(i, z)])).expect("z lies in γ_2")
            }
            _ => {
                let i = free[rng.below(free.len())];
                replace_image(ctx, i, Word::generator(i, -1))
            }
        };
        result = result.compose(&mv).expect("same context");
    }
    result.canonical()
}

fn replace_image(ctx: GroupContext, i: usize, image: Word) -> GeneratorMap {
    let mut words: Vec<Word> = (1..=ctx.rank()).map(|g| Word::generator(g, 1)).collect();
    words[i - 1] = image;
    GeneratorMap::from_words(ctx, words).expect("well-formed")
}
