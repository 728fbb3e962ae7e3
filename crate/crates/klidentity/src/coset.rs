use std::fmt;

use msq_perm::Permutation;
use serde::Serialize;

use crate::IdentityError;

/// A double coset `H\S_{mk}/H` as its `k×k` block-intersection matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CosetMatrix {
    m: usize,
    entries: Vec<Vec<usize>>,
}

impl CosetMatrix {
    /// Checks that every row and column sums to the same `m ≥ 1`.
    pub fn new(entries: Vec<Vec<usize>>) -> Result<Self, IdentityError> {
        let k = entries.len();
        if k == 0 || entries.iter().any(|r| r.len() != k) {
            return Err(IdentityError::BadMatrix("not a nonempty square matrix".into()));
        }
        let m: usize = entries[0].iter().sum();
        let rows_ok = entries.iter().all(|r| r.iter().sum::<usize>() == m);
        let cols_ok = (0..k).all(|j| entries.iter().map(|r| r[j]).sum::<usize>() == m);
        if m == 0 || !rows_ok || !cols_ok {
            return Err(IdentityError::BadMatrix(format!("row and column sums differ: {entries:?}")));
        }
        Ok(CosetMatrix { m, entries })
    }

    pub fn k(&self) -> usize {
        self.entries.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Entry `(i, j)`, 0-based.
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<usize>] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        self.entries.clone()
    }

    /// `m·P_σ`.
    pub fn scaled_permutation(sigma: &Permutation, m: usize) -> Self {
        let k = sigma.size();
        let mut entries = vec![vec![0; k]; k];
        for i in 1..=k {
            entries[i - 1][sigma.get(i) - 1] = m;
        }
        CosetMatrix { m, entries }
    }

    /// The minimal-length element of the double coset: increasing on each
    /// source block, with an increasing inverse on each target block.
    pub fn min_representative(&self) -> Permutation {
        let (k, m) = (self.k(), self.m);
        let mut next = vec![0usize; k];
        let mut word = Vec::with_capacity(m * k);
        for row in &self.entries {
            for (j, &c) in row.iter().enumerate() {
                for _ in 0..c {
                    word.push(m * j + next[j] + 1);
                    next[j] += 1;
                }
            }
        }
        Permutation::new(word).expect("row and column sums are m")
    }
}

impl fmt::Display for CosetMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.entries.iter().map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")).collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// `M_w(i,j) = #(w(block i) ∩ block j)` with blocks of size `m`.
pub fn coset_matrix(w: &Permutation, m: usize) -> Result<CosetMatrix, IdentityError> {
    let n = w.size();
    if m == 0 || n == 0 || !n.is_multiple_of(m) {
        return Err(IdentityError::NotDivisible { size: n, m });
    }
    let k = n / m;
    let mut entries = vec![vec![0; k]; k];
    for p in 1..=n {
        entries[(p - 1) / m][(w.get(p) - 1) / m] += 1;
    }
    Ok(CosetMatrix { m, entries })
}

/// Every `k×k` matrix with nonnegative entries and line sums `m`.
pub fn all_coset_matrices(k: usize, m: usize) -> Vec<CosetMatrix> {
    fn rows(k: usize, m: usize, cap: &mut Vec<usize>, acc: &mut Vec<Vec<usize>>, out: &mut Vec<CosetMatrix>) {
        if acc.len() == k {
            out.push(CosetMatrix { m, entries: acc.clone() });
            return;
        }
        let mut row = vec![0; k];
        fill(0, m, k, m, cap, &mut row, acc, out);
    }
    #[allow(clippy::too_many_arguments)]
    fn fill(
        j: usize,
        left: usize,
        k: usize,
        m: usize,
        cap: &mut Vec<usize>,
        row: &mut Vec<usize>,
        acc: &mut Vec<Vec<usize>>,
        out: &mut Vec<CosetMatrix>,
    ) {
        if j == k {
            if left == 0 {
                acc.push(row.clone());
                rows(k, m, cap, acc, out);
                acc.pop();
            }
            return;
        }
        for v in (0..=left.min(cap[j])).rev() {
            row[j] = v;
            cap[j] -= v;
            fill(j + 1, left - v, k, m, cap, row, acc, out);
            cap[j] += v;
        }
        row[j] = 0;
    }
    let mut out = Vec::new();
    if k == 0 || m == 0 {
        return out;
    }
    rows(k, m, &mut vec![m; k], &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// `ι(σ₁,…,σ_m)(m(i−1)+j) = m(σ_j(i)−1)+j`.
pub fn iota(sigmas: &[Permutation]) -> Result<Permutation, IdentityError> {
    let m = sigmas.len();
    let k = sigmas.first().map_or(0, |s| s.size());
    if m == 0 || sigmas.iter().any(|s| s.size() != k) {
        return Err(IdentityError::BadMatrix("ι needs m ≥ 1 permutations of one size".into()));
    }
    let mut word = vec![0; m * k];
    for i in 1..=k {
        for (j, s) in sigmas.iter().enumerate() {
            word[m * (i - 1) + j] = m * (s.get(i) - 1) + j + 1;
        }
    }
    Ok(Permutation::new(word).expect("a bijection by construction"))
}

/// The parabolic subgroup of `S_{mk}` preserving each block of size `m`.
pub fn block_subgroup(k: usize, m: usize) -> Vec<Permutation> {
    let local: Vec<Permutation> = Permutation::all(m).collect();
    let mut out = vec![Vec::with_capacity(m * k)];
    for b in 0..k {
        out = out
            .into_iter()
            .flat_map(|w: Vec<usize>| {
                local.iter().map(move |p| {
                    let mut w = w.clone();
                    w.extend(p.word().iter().map(|v| b * m + v));
                    w
                })
            })
            .collect();
    }
    out.into_iter().map(|w| Permutation::new(w).expect("blockwise bijection")).collect()
}

/// Bruhat order on double cosets, compared on minimal representatives.
pub fn coset_leq(lower: &CosetMatrix, upper: &CosetMatrix) -> bool {
    let (a, b) = (lower.min_representative(), upper.min_representative());
    a.size() == b.size() && msq_perm::bruhat_leq_unchecked(a.as_bytes(), b.as_bytes())
}
