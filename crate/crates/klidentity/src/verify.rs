use std::collections::{BTreeMap, HashMap};

use msq_biseq::duplicate_perm;
use msq_perm::{avoids_patterns, bruhat_leq, bruhat_leq_unchecked, smooth_pair_data, PermError, Permutation};
use rayon::prelude::*;
use serde::Serialize;

use crate::{block_subgroup, class_value, coset_matrix, signed_decomposition_count, CosetMatrix, IdentityError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosetCheck {
    pub coset_matrix: Vec<Vec<usize>>,
    pub lhs: i64,
    pub rhs: i64,
    pub pass: bool,
}

/// `Σ_{h∈H} sgn(h) P_{σ̃'h,σ̃}(1)` for one `σ'`; expected to be 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParabolicSum {
    pub sigma_prime: Permutation,
    pub sum: i64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub m: usize,
    pub sigma0: Permutation,
    pub sigma: Permutation,
    pub cosets: Vec<CosetCheck>,
    pub parabolic: Vec<ParabolicSum>,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        self.cosets.iter().all(|c| c.pass) && self.parabolic.iter().all(|p| p.pass)
    }
}

fn check_hypotheses(sigma0: &Permutation, sigma: &Permutation, m: usize) -> Result<(), IdentityError> {
    let k = sigma.size();
    if m < 2 {
        return Err(IdentityError::BadMultiplicity(m));
    }
    if m * k > msq_klpoly::MAX_ENGINE_SIZE {
        return Err(IdentityError::TooLarge { n: m * k, max: msq_klpoly::MAX_ENGINE_SIZE });
    }
    let p213: Permutation = "213".parse().expect("valid pattern");
    if !avoids_patterns(sigma0, &[p213]) {
        return Err(IdentityError::Not213Avoiding(sigma0.to_string()));
    }
    if !bruhat_leq(sigma0, sigma)? || !smooth_pair_data(sigma0, sigma)?.is_smooth {
        return Err(IdentityError::NotSmoothPair { sigma0: sigma0.to_string(), sigma: sigma.to_string() });
    }
    Ok(())
}

/// Both sides of the coset identity for `m = 2`, with `𝔠([x])` on the right.
pub fn verify_klidnt(sigma0: &Permutation, sigma: &Permutation) -> Result<IdentityReport, IdentityError> {
    check_hypotheses(sigma0, sigma, 2)?;
    run(sigma0, sigma, 2, |mat| class_value(mat).expect("m = 2"))
}

/// Both sides for general `m`, the right side by enumerating `HxH ∩ K`.
pub fn verify_higher(sigma0: &Permutation, sigma: &Permutation, m: usize) -> Result<IdentityReport, IdentityError> {
    check_hypotheses(sigma0, sigma, m)?;
    run(sigma0, sigma, m, signed_decomposition_count)
}

/// The same comparison without the smooth-pair and 213 hypotheses, for
/// exploring where the identity breaks.
pub fn verify_unchecked(sigma0: &Permutation, sigma: &Permutation, m: usize) -> Result<IdentityReport, IdentityError> {
    if m < 2 {
        return Err(IdentityError::BadMultiplicity(m));
    }
    if m * sigma.size() > msq_klpoly::MAX_ENGINE_SIZE {
        return Err(IdentityError::TooLarge { n: m * sigma.size(), max: msq_klpoly::MAX_ENGINE_SIZE });
    }
    if !bruhat_leq(sigma0, sigma)? {
        return Err(PermError::NotBelow { lower: sigma0.to_string(), upper: sigma.to_string() }.into());
    }
    run(sigma0, sigma, m, signed_decomposition_count)
}

fn run(
    sigma0: &Permutation,
    sigma: &Permutation,
    m: usize,
    rhs: impl Fn(&CosetMatrix) -> i64 + Sync,
) -> Result<IdentityReport, IdentityError> {
    let k = sigma.size();
    let top = duplicate_perm(sigma, m)?;
    let bottom = duplicate_perm(sigma0, m)?;
    let column = msq_klpoly::engine(m * k)?.column_values_at_one(top.as_bytes())?;

    // (lhs, meets [σ̃₀, σ̃]) per double coset
    let sums: BTreeMap<CosetMatrix, (i64, bool)> = column
        .par_iter()
        .map(|(w, p)| {
            let w = Permutation::new(w.iter().map(|&v| v as usize).collect()).expect("engine words are permutations");
            let mat = coset_matrix(&w, m).expect("size mk");
            let above = bruhat_leq_unchecked(bottom.as_bytes(), w.as_bytes());
            (mat, (w.sign() * p, above))
        })
        .fold(BTreeMap::new, |mut acc: BTreeMap<CosetMatrix, (i64, bool)>, (mat, (v, above))| {
            let e = acc.entry(mat).or_insert((0, false));
            e.0 += v;
            e.1 |= above;
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (mat, (v, above)) in b {
                let e = a.entry(mat).or_insert((0, false));
                e.0 += v;
                e.1 |= above;
            }
            a
        });
    let cosets: Vec<CosetCheck> = sums
        .into_par_iter()
        .filter(|(_, (_, above))| *above)
        .map(|(mat, (lhs, _))| {
            let rhs = rhs(&mat);
            CosetCheck { coset_matrix: mat.to_rows(), lhs, rhs, pass: lhs == rhs }
        })
        .collect();

    let values: HashMap<Vec<u8>, i64> = column.into_iter().collect();
    let h = block_subgroup(k, m);
    let mut parabolic = Vec::new();
    for sp in Permutation::all(k) {
        if !(bruhat_leq(sigma0, &sp)? && bruhat_leq(&sp, sigma)?) {
            continue;
        }
        let base = duplicate_perm(&sp, m)?;
        let sum: i64 = h
            .iter()
            .map(|w| {
                let y = base.compose(w).expect("same size");
                w.sign() * values.get(y.as_bytes()).copied().unwrap_or(0)
            })
            .sum();
        parabolic.push(ParabolicSum { sigma_prime: sp, sum, pass: sum == 1 });
    }
    Ok(IdentityReport { m, sigma0: sigma0.clone(), sigma: sigma.clone(), cosets, parabolic })
}

/// Smooth pairs `(σ₀, σ)` in `S_k` with `σ₀` 213-avoiding.
pub fn identity_pairs(k: usize) -> Vec<(Permutation, Permutation)> {
    let p213: Permutation = "213".parse().expect("valid pattern");
    let all: Vec<Permutation> = Permutation::all(k).collect();
    let mut out = Vec::new();
    for s0 in all.iter().filter(|s| avoids_patterns(s, std::slice::from_ref(&p213))) {
        for s in &all {
            if bruhat_leq_unchecked(s0.as_bytes(), s.as_bytes())
                && smooth_pair_data(s0, s).expect("σ₀ ≤ σ").is_smooth
            {
                out.push((s0.clone(), s.clone()));
            }
        }
    }
    out
}
