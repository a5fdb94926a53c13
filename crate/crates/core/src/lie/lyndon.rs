use num_bigint::BigInt;
use num_traits::One;

use crate::error::Result;
use crate::ring::{GroupContext, GroupElement, Monomial, TruncatedPoly};

/// Lyndon words of length exactly `len` over the letters `1..=rank`, in
/// lexicographic order (Duval's generation algorithm).
pub fn lyndon_words(rank: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if len == 0 {
        return out;
    }
    let mut w = vec![1usize];
    loop {
        if w.len() == len {
            out.push(w.clone());
        }
        let m = w.len();
        while w.len() < len {
            w.push(w[w.len() - m]);
        }
        while w.last() == Some(&rank) {
            w.pop();
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    out
}

/// A word is Lyndon iff it is strictly smaller than each of its proper
/// suffixes.
pub fn is_lyndon(word: &[usize]) -> bool {
    !word.is_empty() && (1..word.len()).all(|i| word < &word[i..])
}

/// A binary bracketing of generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Bracket {
    Leaf(usize),
    Node(Box<Bracket>, Box<Bracket>),
}

impl Bracket {
    pub fn node(left: Bracket, right: Bracket) -> Self {
        Bracket::Node(Box::new(left), Box::new(right))
    }

    /// Left-normed bracket `[g₁, g₂, …, g_k]`.
    pub fn left_normed(gens: &[usize]) -> Self {
        let mut it = gens.iter();
        let first = Bracket::Leaf(*it.next().expect("nonempty bracket"));
        it.fold(first, |acc, &g| Bracket::node(acc, Bracket::Leaf(g)))
    }

    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            Bracket::Leaf(g) => out.push(*g),
            Bracket::Node(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Bracket::Leaf(_) => 1,
            Bracket::Node(a, b) => a.degree() + b.degree(),
        }
    }

    /// Expansion in the free associative ring, `[A, B] = AB − BA`.
    pub fn expand(&self, rank: usize) -> TruncatedPoly {
        match self {
            Bracket::Leaf(g) => TruncatedPoly::term(Monomial::letter(*g), BigInt::one()),
            Bracket::Node(a, b) => {
                let (pa, pb) = (a.expand(rank), b.expand(rank));
                let limit = self.degree();
                pa.mul_trunc(&pb, rank, limit).sub(&pb.mul_trunc(&pa, rank, limit))
            }
        }
    }

    /// The matching nested group commutator, with the leftmost leaf raised
    /// to `leading_exponent`. Its lowest-degree Magnus term is
    /// `leading_exponent` times [`Bracket::expand`].
    pub fn group_element(&self, ctx: GroupContext, leading_exponent: i64) -> Result<GroupElement> {
        match self {
            Bracket::Leaf(g) => Ok(GroupElement::generator(ctx, *g)?.pow(leading_exponent)),
            Bracket::Node(a, b) => {
                a.group_element(ctx, leading_exponent)?.comm(&b.group_element(ctx, 1)?)
            }
        }
    }
}

/// Standard bracketing of a Lyndon word: `w = uv` with `v` the longest
/// proper Lyndon suffix, bracketed as `[std(u), std(v)]`.
pub fn standard_bracket(word: &[usize]) -> Bracket {
    debug_assert!(is_lyndon(word));
    if word.len() == 1 {
        return Bracket::Leaf(word[0]);
    }
    let split = (1..word.len())
        .find(|&i| is_lyndon(&word[i..]))
        .expect("last letter is a Lyndon suffix");
    Bracket::node(standard_bracket(&word[..split]), standard_bracket(&word[split..]))
}

/// A Lyndon word together with its standard bracketing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LyndonBracket {
    pub word: Vec<usize>,
    pub bracket: Bracket,
}

/// Standard-bracketed Lyndon words of length `degree`, in lexicographic
/// order of the underlying words.
pub fn lyndon_brackets_of_degree(rank: usize, degree: usize) -> Vec<LyndonBracket> {
    lyndon_words(rank, degree)
        .into_iter()
        .map(|word| {
            let bracket = standard_bracket(&word);
            LyndonBracket { word, bracket }
        })
        .collect()
}

/// The integral basis of the weight-`c` layer for this context.
pub fn lyndon_brackets(ctx: &GroupContext) -> Vec<LyndonBracket> {
    lyndon_brackets_of_degree(ctx.rank(), ctx.class())
}
