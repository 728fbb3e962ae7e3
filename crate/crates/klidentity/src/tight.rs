use msq_biseq::duplicate_perm;
use msq_perm::{bruhat_leq_unchecked, smooth_pair_data, Permutation, RankMatrix};
use serde::Serialize;

use crate::{coset_leq, coset_matrix, iota, IdentityError};

/// Smooth pairs `σ₀ ≤ σ` in `S_k`, grouped by `σ`.
fn smooth_pairs(all: &[Permutation]) -> Vec<(usize, Vec<usize>)> {
    (0..all.len())
        .map(|s| {
            let lows = (0..all.len())
                .filter(|&s0| {
                    bruhat_leq_unchecked(all[s0].as_bytes(), all[s].as_bytes())
                        && smooth_pair_data(&all[s0], &all[s]).expect("σ₀ ≤ σ").is_smooth
                })
                .collect();
            (s, lows)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TightCounterexample {
    pub sigma0: Permutation,
    pub sigma: Permutation,
    pub tau: Permutation,
}

/// Searches `S_k` for a smooth pair `(σ, σ₀)` and `τ ≰ σ` whose rank
/// function agrees with `r_σ` on every cell where `r_{σ₀} = r_σ`.
pub fn tight_counterexample(k: usize) -> Result<Option<TightCounterexample>, IdentityError> {
    if k * k > 64 {
        return Err(IdentityError::TooLarge { n: k, max: 8 });
    }
    let all: Vec<Permutation> = Permutation::all(k).collect();
    let ranks: Vec<RankMatrix> = all.iter().map(RankMatrix::of).collect();
    let eq_mask = |a: usize, b: usize| -> u64 {
        ranks[a].as_slice().iter().zip(ranks[b].as_slice()).enumerate().fold(0, |acc, (c, (x, y))| {
            if x == y {
                acc | 1 << c
            } else {
                acc
            }
        })
    };
    for (s, lows) in smooth_pairs(&all) {
        let outside: Vec<(usize, u64)> = (0..all.len())
            .filter(|&t| !bruhat_leq_unchecked(all[t].as_bytes(), all[s].as_bytes()))
            .map(|t| (t, eq_mask(t, s)))
            .collect();
        for s0 in lows {
            let tight = eq_mask(s0, s);
            if let Some(&(t, _)) = outside.iter().find(|&&(_, eq)| tight & !eq == 0) {
                return Ok(Some(TightCounterexample {
                    sigma0: all[s0].clone(),
                    sigma: all[s].clone(),
                    tau: all[t].clone(),
                }));
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DoubleCosetCounterexample {
    pub sigma0: Permutation,
    pub sigma: Permutation,
    pub sigma1: Permutation,
    pub sigma2: Permutation,
}

/// Searches `S_k` for a smooth pair and `σ₀ ≤ σ₁, σ₂` with
/// `Hι(σ₁,σ₂)H ≤ Hσ̃H` but `σ₁ ≰ σ` or `σ₂ ≰ σ`.
pub fn double_coset_counterexample(k: usize) -> Result<Option<DoubleCosetCounterexample>, IdentityError> {
    let all: Vec<Permutation> = Permutation::all(k).collect();
    for (s, lows) in smooth_pairs(&all) {
        let top = coset_matrix(&duplicate_perm(&all[s], 2)?, 2)?;
        for s0 in lows {
            let above: Vec<&Permutation> =
                all.iter().filter(|p| bruhat_leq_unchecked(all[s0].as_bytes(), p.as_bytes())).collect();
            for s1 in &above {
                for s2 in &above {
                    let below = |p: &Permutation| bruhat_leq_unchecked(p.as_bytes(), all[s].as_bytes());
                    if below(s1) && below(s2) {
                        continue;
                    }
                    let x = coset_matrix(&iota(&[(*s1).clone(), (*s2).clone()])?, 2)?;
                    if coset_leq(&x, &top) {
                        return Ok(Some(DoubleCosetCounterexample {
                            sigma0: all[s0].clone(),
                            sigma: all[s].clone(),
                            sigma1: (*s1).clone(),
                            sigma2: (*s2).clone(),
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}
