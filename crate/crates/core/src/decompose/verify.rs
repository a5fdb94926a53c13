use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::Decomposition;
use crate::endo::GeneratorMap;
use crate::serde_util::bigint_number;

/// Outcome of [`verify`]. `min_fixed_block` is the smallest `|P∖D|` over
/// the factors, absent when there are none.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub factor_count: usize,
    pub min_fixed_block: Option<usize>,
    #[serde(with = "bigint_number")]
    pub max_coefficient: BigInt,
    pub failures: Vec<String>,
}

/// Re-checks a decomposition from its data alone: every certificate, the
/// fixing of `D` by every factor, and that the ordered product equals the
/// input. Problems are collected, never raised.
pub fn verify(dec: &Decomposition) -> VerifyReport {
    let ctx = *dec.input.context();
    let mut failures = Vec::new();
    let mut max_coefficient = dec.input.max_coefficient();
    let mut min_fixed_block: Option<usize> = None;

    if let Err(e) = ctx.check_subset(&dec.fixed) {
        failures.push(format!("fixed set: {e}"));
    }
    if !dec.input.fixes_pointwise(&dec.fixed) {
        failures.push("input does not fix D".into());
    }

    let mut product = Some(GeneratorMap::identity(ctx));
    for (i, f) in dec.factors.iter().enumerate() {
        if *f.map.context() != ctx {
            failures.push(format!("factor {i}: context differs from the input"));
            product = None;
            continue;
        }
        max_coefficient = max_coefficient.max(f.map.max_coefficient());
        match f.map.check_certificate(&f.certificate) {
            Ok(true) => {}
            Ok(false) => failures.push(format!("factor {i}: certificate does not hold")),
            Err(e) => failures.push(format!("factor {i}: {e}")),
        }
        if !f.map.fixes_pointwise(&dec.fixed) {
            failures.push(format!("factor {i}: moves D"));
        }
        let free_fixed = f.certificate.fixed.difference(&dec.fixed).count();
        min_fixed_block = Some(min_fixed_block.map_or(free_fixed, |m| m.min(free_fixed)));
        product = product.and_then(|acc| acc.compose(&f.map).ok());
        if let Some(p) = &product {
            max_coefficient = max_coefficient.max(p.max_coefficient());
        }
    }
    match product {
        Some(p) if p == dec.input => {}
        Some(_) => failures.push("product of factors differs from the input".into()),
        None => failures.push("product of factors could not be formed".into()),
    }

    VerifyReport {
        ok: failures.is_empty(),
        factor_count: dec.factors.len(),
        min_fixed_block,
        max_coefficient,
        failures,
    }
}

/// Parses a serialized decomposition and verifies it.
pub fn verify_json(json: &str) -> serde_json::Result<VerifyReport> {
    serde_json::from_str::<Decomposition>(json).map(|dec| verify(&dec))
}
