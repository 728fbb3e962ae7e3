use std::collections::BTreeMap;

use msq_biseq::BiSequence;
use msq_perm::{bruhat_leq, PermError, Permutation};

use crate::CriteriaError;

/// `σ' ↦ sgn(σ'σ)·P_{σ',σ}(1)` over `σ' ∈ [σ₀, σ]`.
pub fn grothendieck_expansion(a: &BiSequence, sigma: &Permutation) -> Result<BTreeMap<Permutation, i64>, CriteriaError> {
    if sigma.size() != a.len() {
        return Err(msq_biseq::BiseqError::SizeMismatch { k: a.len(), got: sigma.size() }.into());
    }
    let s0 = a.sigma0();
    if !bruhat_leq(&s0, sigma)? {
        return Err(PermError::NotBelow { lower: s0.to_string(), upper: sigma.to_string() }.into());
    }
    let mut out = BTreeMap::new();
    for tau in Permutation::all(a.len()) {
        if bruhat_leq(&s0, &tau)? && bruhat_leq(&tau, sigma)? {
            let v = msq_klpoly::kl_value(&tau, sigma)?;
            out.insert(tau.clone(), tau.sign() * sigma.sign() * v);
        }
    }
    Ok(out)
}
