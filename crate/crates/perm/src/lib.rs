//! Permutations of `S_k` in one-line notation.
//!
//! Positions and values are 1-based throughout, matching the usual
//! `σ = (σ(1), …, σ(k))` convention. Bruhat comparisons use rank matrices
//! `r_σ(i,j) = #{u ≤ i : σ(u) ≤ j}`.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

mod fixtures;
mod pattern;

pub use fixtures::tau_delta;
pub use pattern::{avoids_patterns, contains_pattern, flatten};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("not a permutation of 1..{k}: {word:?}")]
    NotBijection { word: Vec<usize>, k: usize },
    #[error("permutations of different sizes: {0} and {1}")]
    SizeMismatch(usize, usize),
    #[error("cannot parse permutation `{text}` at position {pos}: {reason}")]
    Parse { text: String, pos: usize, reason: String },
    #[error("{lower} is not below {upper} in the Bruhat order")]
    NotBelow { lower: String, upper: String },
    #[error("invalid fixture parameters r={r}, s={s}, t={t}")]
    InvalidFixture { r: usize, s: usize, t: usize },
    #[error("index {index} out of range 1..={k}")]
    IndexOutOfRange { index: usize, k: usize },
    #[error("permutations of size {0} are not supported (max 255)")]
    TooLarge(usize),
}

/// A permutation of `{1,…,k}` stored as its one-line word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    word: Vec<u8>,
}

impl Permutation {
    pub fn new(word: Vec<usize>) -> Result<Self, PermError> {
        let k = word.len();
        if k > 255 {
            return Err(PermError::TooLarge(k));
        }
        let mut seen = vec![false; k + 1];
        for &v in &word {
            if v == 0 || v > k || seen[v] {
                return Err(PermError::NotBijection { word, k });
            }
            seen[v] = true;
        }
        Ok(Permutation { word: word.into_iter().map(|v| v as u8).collect() })
    }

    pub fn identity(k: usize) -> Self {
        Permutation { word: (1..=k as u8).collect() }
    }

    /// The longest element `w_0(i) = k+1-i`.
    pub fn longest(k: usize) -> Self {
        Permutation { word: (1..=k as u8).rev().collect() }
    }

    /// Builds `i ↦ f(i)` for `i = 1..=k`.
    pub fn from_fn(k: usize, f: impl Fn(usize) -> usize) -> Result<Self, PermError> {
        Self::new((1..=k).map(f).collect())
    }

    pub(crate) fn from_bytes_unchecked(word: Vec<u8>) -> Self {
        Permutation { word }
    }

    /// All of `S_k` in lexicographic order.
    pub fn all(k: usize) -> impl Iterator<Item = Permutation> {
        (1..=k as u8).permutations(k).map(|word| Permutation { word })
    }

    pub fn size(&self) -> usize {
        self.word.len()
    }

    /// `σ(i)` for `1 ≤ i ≤ k`.
    pub fn get(&self, i: usize) -> usize {
        self.word[i - 1] as usize
    }

    pub fn word(&self) -> Vec<usize> {
        self.word.iter().map(|&v| v as usize).collect()
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.word
    }

    pub fn is_identity(&self) -> bool {
        self.word.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.size()];
        for (i, &v) in self.word.iter().enumerate() {
            inv[v as usize - 1] = (i + 1) as u8;
        }
        Permutation { word: inv }
    }

    /// The composite `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Self, PermError> {
        check_same_size(self, other)?;
        Ok(Permutation { word: other.word.iter().map(|&v| self.word[v as usize - 1]).collect() })
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.word;
        let mut n = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    n += 1;
                }
            }
        }
        n
    }

    pub fn sign(&self) -> i64 {
        if self.length().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Right multiplication by the transposition `t_{i,j}`: swaps the entries at
    /// positions `i` and `j`.
    pub fn swap_positions(&self, i: usize, j: usize) -> Self {
        let mut word = self.word.clone();
        word.swap(i - 1, j - 1);
        Permutation { word }
    }

    /// The ascent set `{i < k : σ(i) < σ(i+1)} ∪ {k}`.
    pub fn ascent_set(&self) -> Vec<usize> {
        let k = self.size();
        let mut out: Vec<usize> = (1..k).filter(|&i| self.get(i) < self.get(i + 1)).collect();
        if k > 0 {
            out.push(k);
        }
        out
    }

    /// `r_σ(i,j) = #{u ≤ i : σ(u) ≤ j}`.
    pub fn rank(&self, i: usize, j: usize) -> usize {
        self.word[..i].iter().filter(|&&v| v as usize <= j).count()
    }

    pub fn rank_matrix(&self) -> RankMatrix {
        RankMatrix::of(self)
    }

    /// Cycle decomposition, each cycle starting at its smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let k = self.size();
        let mut seen = vec![false; k + 1];
        let mut out = Vec::new();
        for start in 1..=k {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.get(i);
            }
            out.push(cycle);
        }
        out
    }

    /// Compact digit form when `k ≤ 9`, comma-separated otherwise.
    pub fn to_compact(&self) -> String {
        if self.size() <= 9 {
            self.word.iter().map(|v| v.to_string()).collect()
        } else {
            self.to_string()
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word.iter().join(","))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.word.iter().join(","))
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.word()
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = PermError;
    fn try_from(word: Vec<usize>) -> Result<Self, PermError> {
        Permutation::new(word)
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    /// Accepts `4,2,3,1` (optionally parenthesised) or the digit form `4231`.
    fn from_str(text: &str) -> Result<Self, PermError> {
        let err = |pos: usize, reason: &str| PermError::Parse {
            text: text.to_string(),
            pos,
            reason: reason.to_string(),
        };
        let trimmed = text.trim();
        let offset = text.find(trimmed).unwrap_or(0);
        let inner = trimmed
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .map(|s| (s, offset + 1))
            .unwrap_or((trimmed, offset));
        let (body, base) = inner;
        if body.trim().is_empty() {
            return Permutation::new(Vec::new());
        }
        let mut word = Vec::new();
        if body.contains(',') {
            let mut pos = base;
            for token in body.split(',') {
                let t = token.trim();
                let value = t.parse::<usize>().map_err(|_| err(pos, &format!("`{t}` is not a positive integer")))?;
                word.push(value);
                pos += token.len() + 1;
            }
        } else {
            for (i, c) in body.chars().enumerate() {
                let d = c.to_digit(10).ok_or_else(|| err(base + i, &format!("unexpected character `{c}`")))?;
                word.push(d as usize);
            }
        }
        Permutation::new(word).map_err(|e| err(base, &e.to_string()))
    }
}

fn check_same_size(a: &Permutation, b: &Permutation) -> Result<(), PermError> {
    if a.size() != b.size() {
        return Err(PermError::SizeMismatch(a.size(), b.size()));
    }
    Ok(())
}

/// The table `r_σ(i,j)` for `1 ≤ i,j ≤ k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RankMatrix {
    k: usize,
    data: Vec<u8>,
}

impl RankMatrix {
    pub fn of(sigma: &Permutation) -> Self {
        let k = sigma.size();
        let mut data = vec![0u8; k * k];
        let mut marks = vec![0u8; k];
        for i in 0..k {
            marks[sigma.word[i] as usize - 1] = 1;
            let mut acc = 0u8;
            for j in 0..k {
                acc += marks[j];
                data[i * k + j] = acc;
            }
        }
        RankMatrix { k, data }
    }

    pub fn size(&self) -> usize {
        self.k
    }

    /// `r(i,j)`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.data[(i - 1) * self.k + (j - 1)] as usize
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.data
    }

    /// True iff the permutation of `self` lies below the one of `upper`.
    pub fn below(&self, upper: &RankMatrix) -> bool {
        self.data.iter().zip(&upper.data).all(|(a, b)| a >= b)
    }
}

pub fn length(sigma: &Permutation) -> usize {
    sigma.length()
}

/// `τ ≤ σ` in the Bruhat order.
pub fn bruhat_leq(tau: &Permutation, sigma: &Permutation) -> Result<bool, PermError> {
    check_same_size(tau, sigma)?;
    Ok(bruhat_leq_unchecked(tau.as_bytes(), sigma.as_bytes()))
}

/// Rank-function comparison on raw one-line words of equal length.
pub fn bruhat_leq_unchecked(tau: &[u8], sigma: &[u8]) -> bool {
    let k = tau.len();
    let mut mt = [0u8; 256];
    let mut ms = [0u8; 256];
    for i in 0..k {
        mt[tau[i] as usize] = 1;
        ms[sigma[i] as usize] = 1;
        let (mut rt, mut rs) = (0u8, 0u8);
        for j in 1..=k {
            rt += mt[j];
            rs += ms[j];
            if rt < rs {
                return false;
            }
        }
    }
    true
}

/// A set of transpositions `t_{i,j}`, `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub struct ReflectionSet {
    pub pairs: Vec<(usize, usize)>,
}

impl ReflectionSet {
    pub fn all(k: usize) -> Self {
        ReflectionSet { pairs: (1..=k).tuple_combinations().collect() }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// `{t : σ0·t ≤ σ}`.
pub fn j_set(sigma0: &Permutation, sigma: &Permutation) -> Result<ReflectionSet, PermError> {
    check_same_size(sigma0, sigma)?;
    let pairs = ReflectionSet::all(sigma.size())
        .pairs
        .into_iter()
        .filter(|&(i, j)| bruhat_leq_unchecked(sigma0.swap_positions(i, j).as_bytes(), sigma.as_bytes()))
        .collect();
    Ok(ReflectionSet { pairs })
}

/// `{t : σ0·t ∈ [σ0, σ]}`.
pub fn i_set(sigma0: &Permutation, sigma: &Permutation) -> Result<ReflectionSet, PermError> {
    let j = j_set(sigma0, sigma)?;
    let pairs = j.pairs.into_iter().filter(|&(i, j)| sigma0.get(i) < sigma0.get(j)).collect();
    Ok(ReflectionSet { pairs })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SmoothPairData {
    pub j_count: usize,
    pub i_count: usize,
    pub is_smooth: bool,
}

/// Reflection counts for the pair `(σ, σ0)`; smooth iff `#{t : σ0·t ≤ σ} = ℓ(σ)`.
pub fn smooth_pair_data(sigma0: &Permutation, sigma: &Permutation) -> Result<SmoothPairData, PermError> {
    if !bruhat_leq(sigma0, sigma)? {
        return Err(PermError::NotBelow { lower: sigma0.to_string(), upper: sigma.to_string() });
    }
    let k = sigma.size();
    let (mut j_count, mut i_count) = (0, 0);
    let mut word = sigma0.as_bytes().to_vec();
    for i in 0..k {
        for j in i + 1..k {
            word.swap(i, j);
            if bruhat_leq_unchecked(&word, sigma.as_bytes()) {
                j_count += 1;
                if word[i] > word[j] {
                    i_count += 1;
                }
            }
            word.swap(i, j);
        }
    }
    let len = sigma.length();
    debug_assert!(j_count >= len);
    debug_assert_eq!(j_count, i_count + sigma0.length());
    Ok(SmoothPairData { j_count, i_count, is_smooth: j_count == len })
}

pub fn is_smooth_pair(sigma0: &Permutation, sigma: &Permutation) -> Result<bool, PermError> {
    Ok(smooth_pair_data(sigma0, sigma)?.is_smooth)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn parse_forms() {
        assert_eq!(p("4231"), p("4,2,3,1"));
        assert_eq!(p("(4, 2, 3, 1)"), p("4231"));
        assert_eq!(p("4231").to_string(), "4,2,3,1");
        assert!(matches!("4,2,x,1".parse::<Permutation>(), Err(PermError::Parse { pos: 4, .. })));
        assert!("4,2,2,1".parse::<Permutation>().is_err());
        assert!("42a1".parse::<Permutation>().is_err());
        let big = Permutation::longest(12);
        assert_eq!(big.to_string().parse::<Permutation>().unwrap(), big);
    }

    #[test]
    fn lengths() {
        assert_eq!(Permutation::identity(4).length(), 0);
        assert_eq!(p("4231").length(), 5);
        assert_eq!(p("1243").length(), 1);
    }

    #[test]
    fn bruhat_examples() {
        for s in Permutation::all(4) {
            assert!(bruhat_leq(&Permutation::identity(4), &s).unwrap());
        }
        assert!(bruhat_leq(&p("1243"), &p("4231")).unwrap());
        assert!(!bruhat_leq(&p("2134"), &p("1324")).unwrap());
        assert!(bruhat_leq(&p("12"), &p("123")).is_err());
    }

    #[test]
    fn smooth_pair_examples() {
        let s = p("4231");
        let d = smooth_pair_data(&s, &s).unwrap();
        assert_eq!(d.j_count, s.length());
        assert!(d.is_smooth);
        assert!(!smooth_pair_data(&p("1243"), &s).unwrap().is_smooth);
        assert!(!smooth_pair_data(&p("2143"), &s).unwrap().is_smooth);
        assert!(smooth_pair_data(&p("4231"), &p("1243")).is_err());
    }

    #[test]
    fn ascent_set_and_cycles() {
        assert_eq!(p("4231").ascent_set(), vec![2, 4]);
        assert_eq!(p("2314").cycles(), vec![vec![1, 2, 3], vec![4]]);
    }

    #[test]
    fn compose_and_inverse() {
        let s = p("3142");
        assert!(s.compose(&s.inverse()).unwrap().is_identity());
        assert_eq!(p("2134").compose(&p("1324")).unwrap(), p("2314"));
    }
}
