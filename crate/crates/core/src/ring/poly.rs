use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::GenSet;

/// A word over the generators, packed as its length and its base-`n` code
/// (letter `i` is digit `i - 1`, most significant first).
///
/// The derived order is length first, then lexicographic, which is the
/// fixed iteration order of every polynomial.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    len: u8,
    code: u64,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { len: 0, code: 0 };

    pub(crate) fn from_code(len: usize, code: u64) -> Self {
        Monomial { len: len as u8, code }
    }

    /// Builds a monomial from 1-based generator indices.
    pub fn from_letters(rank: usize, letters: &[usize]) -> Self {
        let code = letters
            .iter()
            .fold(0u64, |acc, &g| acc * rank as u64 + (g as u64 - 1));
        Monomial { len: letters.len() as u8, code }
    }

    pub fn letter(generator: usize) -> Self {
        Monomial { len: 1, code: generator as u64 - 1 }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// 1-based generator indices, left to right.
    pub fn letters(&self, rank: usize) -> Vec<usize> {
        let mut out = vec![0; self.len()];
        let mut code = self.code;
        for slot in out.iter_mut().rev() {
            *slot = (code % rank as u64) as usize + 1;
            code /= rank as u64;
        }
        out
    }

    pub fn concat(self, other: Monomial, rank: usize) -> Monomial {
        Monomial {
            len: self.len + other.len,
            code: self.code * (rank as u64).pow(other.len as u32) + other.code,
        }
    }

    /// Splits off the first letter. Panics on the empty monomial.
    pub(crate) fn split_first(self, rank: usize) -> (usize, Monomial) {
        assert!(self.len > 0);
        let tail_len = self.len - 1;
        let base = (rank as u64).pow(tail_len as u32);
        ((self.code / base) as usize + 1, Monomial { len: tail_len, code: self.code % base })
    }

    /// Lower bound for all monomials of length `len`; lengths beyond the
    /// representable range saturate above every real monomial.
    pub(crate) fn smallest_of_len(len: usize) -> Self {
        if len > u8::MAX as usize {
            Monomial { len: u8::MAX, code: u64::MAX }
        } else {
            Monomial { len: len as u8, code: 0 }
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial(len={}, code={})", self.len, self.code)
    }
}

/// Sparse element of the free associative integer ring, truncated above a
/// degree carried by the caller. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct TruncatedPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl TruncatedPoly {
    pub fn zero() -> Self {
        TruncatedPoly::default()
    }

    pub fn one() -> Self {
        TruncatedPoly::term(Monomial::ONE, BigInt::one())
    }

    pub fn term(m: Monomial, coeff: BigInt) -> Self {
        let mut p = TruncatedPoly::zero();
        p.add_term(m, coeff);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: Monomial, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn add_term_ref(&mut self, m: Monomial, coeff: &BigInt) {
        if let Some(c) = self.terms.get_mut(&m) {
            *c += coeff;
            if c.is_zero() {
                self.terms.remove(&m);
            }
        } else if !coeff.is_zero() {
            self.terms.insert(m, coeff.clone());
        }
    }

    pub fn add(&self, other: &TruncatedPoly) -> TruncatedPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term_ref(*m, c);
        }
        out
    }

    pub fn sub(&self, other: &TruncatedPoly) -> TruncatedPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c);
        }
        out
    }

    pub fn neg(&self) -> TruncatedPoly {
        TruncatedPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> TruncatedPoly {
        if k.is_zero() {
            return TruncatedPoly::zero();
        }
        TruncatedPoly { terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect() }
    }

    /// Product with every monomial of degree above `limit` discarded.
    pub fn mul_trunc(&self, other: &TruncatedPoly, rank: usize, limit: usize) -> TruncatedPoly {
        let mut out = TruncatedPoly::zero();
        for (ma, ca) in &self.terms {
            if ma.len() > limit {
                break;
            }
            let room = limit - ma.len();
            for (mb, cb) in other.terms.range(..Monomial::smallest_of_len(room + 1)) {
                out.add_term(ma.concat(*mb, rank), ca * cb);
            }
        }
        out
    }

    /// Product with the power series `(1 + X_g)^e`, truncated at `limit`.
    pub fn mul_letter_power(&self, g: usize, e: i64, rank: usize, limit: usize) -> TruncatedPoly {
        let binoms = binomials(e, limit);
        let mut out = TruncatedPoly::zero();
        for (m, c) in &self.terms {
            let mut tail = Monomial::ONE;
            for b in binoms.iter().take(limit.saturating_sub(m.len()) + 1) {
                out.add_term(m.concat(tail, rank), c * b);
                tail = tail.concat(Monomial::letter(g), rank);
            }
        }
        out
    }

    pub fn truncate(&self, limit: usize) -> TruncatedPoly {
        TruncatedPoly {
            terms: self
                .terms
                .range(..Monomial::smallest_of_len(limit + 1))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Terms of degree exactly `degree`.
    pub fn homogeneous_part(&self, degree: usize) -> TruncatedPoly {
        TruncatedPoly {
            terms: self
                .terms
                .range(Monomial::smallest_of_len(degree)..Monomial::smallest_of_len(degree + 1))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Lowest degree of a stored term that is not the constant term.
    pub fn min_positive_degree(&self) -> Option<usize> {
        self.terms.range(Monomial::smallest_of_len(1)..).next().map(|(m, _)| m.len())
    }

    pub fn min_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next()
    }

    /// Generators appearing in some stored monomial.
    pub fn letters_used(&self, rank: usize) -> GenSet {
        let mut out = GenSet::new();
        for m in self.terms.keys() {
            out.extend(m.letters(rank));
        }
        out
    }

    /// Drops every monomial that uses a generator outside `keep`.
    pub fn retract(&self, rank: usize, keep: &GenSet) -> TruncatedPoly {
        TruncatedPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.letters(rank).iter().all(|g| keep.contains(g)))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }
}

/// Generalized binomial coefficients `C(e, k)` for `k = 0..=limit`.
fn binomials(e: i64, limit: usize) -> Vec<BigInt> {
    let e = BigInt::from(e);
    let mut out = Vec::with_capacity(limit + 1);
    let mut cur = BigInt::one();
    out.push(cur.clone());
    for k in 1..=limit {
        cur = cur * (&e - BigInt::from(k - 1)) / BigInt::from(k);
        out.push(cur.clone());
    }
    out
}
