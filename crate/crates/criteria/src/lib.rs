//! Decision procedures for multisegments: complexity and depth, balancedness,
//! forbidden sub-multisegments, the (GLS) rank condition, the KL criterion and
//! the minimal unbalanced classification.
//!
//! Segment indices are 0-based positions in canonical order (ends
//! decreasing), matching [`msq_multiseg::link_data`].

mod brute;
mod families;
mod gls;
mod grothendieck;
mod minimal;
mod pattern;

use msq_biseq::{factorize, BiseqError};
use msq_klpoly::KlError;
use msq_multiseg::{link_data, Multisegment};
use msq_perm::{smooth_pair_data, PermError};
use serde::Serialize;
use thiserror::Error;

pub use brute::{complexity_brute, depth_brute, is_apu};
pub use families::{basic_family, family_biseq, family_sigma1, FamilyKind};
pub use gls::{
    gls_check, gls_check_with, irreducible_pairs, rank_for_lambda, strong_matching, GlsCertificate, GlsMethod,
    GlsOptions, GlsOutcome, GlsWitness, StrongMatching, StrongSearch, GLS_PRIME,
};
pub use grothendieck::grothendieck_expansion;
pub use minimal::{classify_minimal_unbalanced, is_minimal_unbalanced_brute, MinimalUnbalanced, MuCase};
pub use pattern::{has_forbidden_type, is_of_type, ForbiddenKind, ForbiddenType};

#[derive(Debug, Error)]
pub enum CriteriaError {
    #[error("{0} is not regular")]
    NotRegular(String),
    #[error(transparent)]
    Kl(#[from] KlError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Biseq(#[from] BiseqError),
    #[error("invalid family parameters: {0}")]
    BadFamily(String),
}

fn require_regular(m: &Multisegment) -> Result<(), CriteriaError> {
    if m.is_regular() {
        Ok(())
    } else {
        Err(CriteriaError::NotRegular(m.to_string()))
    }
}

/// Longest chain of elementary moves below `m`; `#X_m` when `m` is regular.
pub fn complexity(m: &Multisegment) -> usize {
    if m.is_regular() {
        link_data(m, None).x.len()
    } else {
        complexity_brute(m)
    }
}

/// Number of almost pairwise unlinked multisegments obtained from `m`.
/// For regular `m` this is `#{t : σ₀ < σ₀t ≤ σ}` for its factorization.
pub fn depth(m: &Multisegment) -> usize {
    if m.is_regular() {
        let (a, sigma) = factorize(m);
        smooth_pair_data(&a.sigma0(), &sigma).expect("σ₀ ≤ σ for a factorization").i_count
    } else {
        depth_brute(m)
    }
}

/// `depth(m) = complexity(m)`, i.e. the factorization is a smooth pair.
pub fn is_balanced(m: &Multisegment) -> Result<bool, CriteriaError> {
    require_regular(m)?;
    let (a, sigma) = factorize(m);
    Ok(smooth_pair_data(&a.sigma0(), &sigma)?.is_smooth)
}

/// `P_{σ₀,σ}(1)` for the factorization of `m`.
pub fn kl_value_at_one(m: &Multisegment) -> Result<i64, CriteriaError> {
    let (a, sigma) = factorize(m);
    Ok(msq_klpoly::kl_value(&a.sigma0(), &sigma)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GlsSummary {
    pub value: bool,
    pub method: GlsMethod,
    pub trials: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub input: String,
    pub regular: bool,
    pub balanced: bool,
    pub gls: GlsSummary,
    pub kl_one: bool,
    pub pattern_free: bool,
    pub agree: bool,
    /// `None` for non-regular input, where the equivalence is conjectural.
    pub square_irreducible: Option<bool>,
}

pub fn decide_square_irreducible(m: &Multisegment) -> Result<Verdict, CriteriaError> {
    decide_with(m, &GlsOptions::default())
}

/// All four criteria. Non-regular input gets the raw values, with
/// balancedness read as `depth = complexity` and the pattern search limited
/// to regular sub-multisegments.
pub fn decide_with(m: &Multisegment, opts: &GlsOptions) -> Result<Verdict, CriteriaError> {
    let regular = m.is_regular();
    let balanced = if regular { is_balanced(m)? } else { depth_brute(m) == complexity_brute(m) };
    let pattern_free = pattern::find_forbidden(m).is_none();
    let kl_one = kl_value_at_one(m)? == 1;
    let g = gls_check_with(m, opts);
    let agree = balanced == pattern_free && balanced == kl_one && balanced == g.value;
    Ok(Verdict {
        input: m.to_string(),
        regular,
        balanced,
        gls: GlsSummary { value: g.value, method: g.method, trials: g.trials },
        kl_one,
        pattern_free,
        agree,
        square_irreducible: (regular && agree).then_some(balanced),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(s: &str) -> Multisegment {
        s.parse().unwrap()
    }

    #[test]
    fn imaginary_example() {
        let m = ms("[4,5]+[2,4]+[3]+[1,2]");
        assert_eq!(complexity(&m), 4);
        assert_eq!(depth(&m), 5);
        assert_eq!(complexity_brute(&m), 4);
        assert_eq!(depth_brute(&m), 5);
        assert!(!is_balanced(&m).unwrap());
        let v = decide_square_irreducible(&m).unwrap();
        assert!(v.agree);
        assert_eq!(v.square_irreducible, Some(false));
        assert!(!v.gls.value);
        assert_eq!(v.gls.method, GlsMethod::Certificate);
    }

    #[test]
    fn unlinked_and_ladders() {
        let m = ms("[1,2]+[5,6]+[9]");
        assert_eq!((complexity(&m), depth(&m)), (0, 0));
        assert!(is_balanced(&m).unwrap());
        for k in 1..=6i64 {
            let ladder = Multisegment::new((0..k).map(|i| msq_multiseg::Segment::new(k - i, 2 * k - i).unwrap()).collect());
            assert!(ladder.is_ladder());
            assert_eq!(complexity(&ladder) as i64, k * (k - 1) / 2);
            assert!(is_balanced(&ladder).unwrap());
            assert_eq!(decide_square_irreducible(&ladder).unwrap().square_irreducible, Some(true));
        }
    }

    #[test]
    fn non_regular_is_not_decided() {
        let m = ms("[2]+[2]+[1]+[1]");
        assert!(is_balanced(&m).is_err());
        let v = decide_square_irreducible(&m).unwrap();
        assert!(!v.regular);
        assert_eq!(v.square_irreducible, None);
        assert!(v.gls.value);
    }
}
