use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{lie_coordinates, standard_bracket, LieHomogeneous};
use crate::ring::{GroupElement, Word};

/// Canonical word for an element, collected layer by layer: at weight `k`
/// the leading Lie part is written in the Lyndon basis and divided off as a
/// product of bracket commutators, leaving an element of `γ_{k+1}`.
///
/// The word only uses generators in `a.occurs()`, and a generator maps to
/// the single-letter word.
pub fn normal_word(a: &GroupElement) -> Word {
    let ctx = *a.context();
    let mut rest = a.without_word();
    let mut word = Word::empty();
    for k in 1..=ctx.class() {
        if rest.is_identity() {
            break;
        }
        let lead = LieHomogeneous::new(ctx, k, rest.poly().homogeneous_part(k))
            .expect("homogeneous by construction");
        if lead.is_zero() {
            continue;
        }
        let coords = lie_coordinates(&lead).expect("leading part of a γ_k element is Lie");
        let mut layer = GroupElement::identity(ctx);
        for (lyndon, c) in coords.iter() {
            let bracket = standard_bracket(lyndon);
            for chunk in i64_chunks(c) {
                let factor = bracket.group_element(ctx, chunk).expect("generators in range");
                word = word.concat(factor.word().expect("built from generators"));
                layer = layer.mul(&factor).expect("same context");
            }
        }
        rest = layer.inv().mul(&rest).expect("same context");
    }
    debug_assert!(rest.is_identity());
    word
}

/// Splits an integer into `i64` pieces with the same sign.
fn i64_chunks(c: &BigInt) -> Vec<i64> {
    if let Some(v) = c.to_i64() {
        return vec![v];
    }
    let step = if c.sign() == num_bigint::Sign::Minus { i64::MIN + 1 } else { i64::MAX };
    let mut left = c.clone();
    let mut out = Vec::new();
    while left.to_i64().is_none() {
        out.push(step);
        left -= step;
    }
    if !left.is_zero() {
        out.push(left.to_i64().unwrap());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::GroupContext;

    #[test]
    fn generators_and_identity() {
        let ctx = GroupContext::new(3, 3).unwrap();
        assert!(normal_word(&GroupElement::identity(ctx)).is_empty());
        let x2 = GroupElement::generator(ctx, 2).unwrap();
        assert_eq!(normal_word(&x2), Word::generator(2, 1));
    }

    #[test]
    fn reproduces_element() {
        let ctx = GroupContext::new(3, 4).unwrap();
        let w = Word::from_pairs(&[(1, 2), (3, -1), (2, 5), (1, -1), (3, 2), (2, -1)]).unwrap();
        let a = GroupElement::from_word(ctx, &w).unwrap();
        let nf = normal_word(&a);
        assert_eq!(GroupElement::from_word(ctx, &nf).unwrap(), a);
        assert!(nf.generators().is_subset(&a.occurs()));
    }

    #[test]
    fn chunks_sum_back() {
        let big = BigInt::from(i64::MAX) * 3 + 5;
        let parts = i64_chunks(&big);
        assert_eq!(parts.iter().map(|&p| BigInt::from(p)).sum::<BigInt>(), big);
        let neg = -big;
        let parts = i64_chunks(&neg);
        assert_eq!(parts.iter().map(|&p| BigInt::from(p)).sum::<BigInt>(), neg);
    }
}
