#![allow(dead_code)]

use std::collections::BTreeMap;

use freenil::decompose::{decompose, Decomposition};
use freenil::endo::{random_automorphism, GeneratorMap, RandomParams, SplitMix64};
use freenil::ring::Monomial;
use freenil::{GenSet, GroupContext, GroupElement, Word};
use num_bigint::BigInt;

pub fn ctx(n: usize, c: usize) -> GroupContext {
    GroupContext::new(n, c).unwrap()
}

pub fn gen(ctx: GroupContext, i: usize) -> GroupElement {
    GroupElement::generator(ctx, i).unwrap()
}

pub fn random_word(rng: &mut SplitMix64, n: usize, max_len: usize, max_exp: i64) -> Word {
    let len = rng.below(max_len + 1);
    let mut pairs = Vec::with_capacity(len);
    for _ in 0..len {
        let g = 1 + rng.below(n);
        let e = 1 + rng.below(max_exp as usize) as i64;
        pairs.push((g, e * rng.sign()));
    }
    Word::from_pairs(&pairs).unwrap()
}

pub fn random_element(rng: &mut SplitMix64, ctx: GroupContext, max_len: usize) -> GroupElement {
    GroupElement::from_word(ctx, &random_word(rng, ctx.rank(), max_len, 3)).unwrap()
}

/// A product of left-normed commutators of random elements, `weight` long.
pub fn random_commutator_product(rng: &mut SplitMix64, ctx: GroupContext, weight: usize) -> GroupElement {
    let mut acc = GroupElement::identity(ctx);
    for _ in 0..1 + rng.below(3) {
        let entries: Vec<_> = (0..weight).map(|_| random_element(rng, ctx, 3)).collect();
        acc = acc.mul(&GroupElement::left_normed(&entries).unwrap()).unwrap();
    }
    acc
}

pub fn random_subset(rng: &mut SplitMix64, n: usize, size: usize) -> GenSet {
    let mut pool: Vec<usize> = (1..=n).collect();
    let mut out = GenSet::new();
    for _ in 0..size {
        out.insert(pool.swap_remove(rng.below(pool.len())));
    }
    out
}

pub fn random_aut(rng: &mut SplitMix64, ctx: GroupContext, fix: &GenSet, max_len: usize) -> GeneratorMap {
    let params = RandomParams { length: 1 + rng.below(max_len), fix: fix.clone() };
    random_automorphism(rng.next_u64(), ctx, &params)
}

/// Admissible `(n, c, |D|)` triples for the decomposition engine.
pub fn decomposition_shapes(ranks: &[usize], classes: &[usize], max_fixed: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for &n in ranks {
        for &c in classes {
            for d in 0..=max_fixed {
                if n - d >= 4usize.max(2 * (c + 1)) {
                    out.push((n, c, d));
                }
            }
        }
    }
    out
}

pub fn seeded_decomposition(rng: &mut SplitMix64, shape: (usize, usize, usize)) -> Decomposition {
    let (n, c, d) = shape;
    let fixed = random_subset(rng, n, d);
    let sigma = random_aut(rng, ctx(n, c), &fixed, 20);
    decompose(&sigma, &fixed).unwrap()
}

/// Collected normal form in `N_{n,2}`: `x₁^{a₁}⋯x_n^{a_n} ∏_{i<j} [x_j, x_i]^{b_ij}`,
/// multiplied with `yx = xy[y, x]` and `[x_j^p, x_i^q] = [x_j, x_i]^{pq}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Class2 {
    pub a: Vec<i128>,
    pub b: BTreeMap<(usize, usize), i128>,
}

impl Class2 {
    pub fn identity(n: usize) -> Self {
        Class2 { a: vec![0; n], b: BTreeMap::new() }
    }

    pub fn mul(&self, other: &Class2) -> Class2 {
        let n = self.a.len();
        let mut out = self.clone();
        for i in 0..n {
            out.a[i] += other.a[i];
        }
        for (&k, &v) in &other.b {
            *out.b.entry(k).or_default() += v;
        }
        // moving x_i^{a'_i} left across x_j^{a_j} for j > i
        for i in 0..n {
            for j in i + 1..n {
                *out.b.entry((i, j)).or_default() += self.a[j] * other.a[i];
            }
        }
        out.b.retain(|_, v| *v != 0);
        out
    }

    pub fn from_word(n: usize, w: &Word) -> Class2 {
        let mut acc = Class2::identity(n);
        for l in w.letters() {
            let mut step = Class2::identity(n);
            step.a[l.generator - 1] = l.exponent as i128;
            acc = acc.mul(&step);
        }
        acc
    }

    /// Degree ≤ 2 Magnus coefficients predicted by the normal form.
    pub fn matches(&self, e: &GroupElement) -> bool {
        let n = self.a.len();
        let coeff = |letters: &[usize]| e.poly().coeff(&Monomial::from_letters(n, letters));
        let big = |v: i128| BigInt::from(v);
        for i in 0..n {
            let ai = self.a[i];
            if coeff(&[i + 1]) != big(ai) || coeff(&[i + 1, i + 1]) != big(ai * (ai - 1) / 2) {
                return false;
            }
            for j in i + 1..n {
                let bij = self.b.get(&(i, j)).copied().unwrap_or(0);
                if coeff(&[j + 1, i + 1]) != big(bij) || coeff(&[i + 1, j + 1]) != big(ai * self.a[j] - bij) {
                    return false;
                }
            }
        }
        e.poly().len() <= 1 + n + n * n
    }
}

/// Evaluates a nested bracket of generators with ring commutators `ab − ba`.
pub fn lie_expand(n: usize, c: usize, seq: &[usize]) -> freenil::ring::TruncatedPoly {
    use freenil::ring::TruncatedPoly;
    let mut acc = TruncatedPoly::term(Monomial::letter(seq[0]), BigInt::from(1));
    for &g in &seq[1..] {
        let x = TruncatedPoly::term(Monomial::letter(g), BigInt::from(1));
        acc = acc.mul_trunc(&x, n, c).sub(&x.mul_trunc(&acc, n, c));
    }
    acc
}
