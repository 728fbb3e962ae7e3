//! Bi-sequences and the multisegments they parameterize.
//!
//! A bi-sequence is a nondecreasing row `a` and a nonincreasing row `b`
//! with `a_{k+1-i} ≤ b_i + 1`. Each permutation `σ ≥ σ₀` gives the
//! multisegment `Σ [a_{σ⁻¹(i)}, b_i]`.

mod dyck;

use std::fmt;
use std::str::FromStr;

use msq_multiseg::{Multisegment, Segment};
use msq_perm::Permutation;
use serde::Serialize;
use thiserror::Error;

pub use dyck::{biseq_from_dyck, dyck_from_biseq, dyck_from_perm, dyck_words, is_dyck, perm_from_dyck};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BiseqError {
    #[error("rows have lengths {a} and {b}")]
    LengthMismatch { a: usize, b: usize },
    #[error("top row must be nondecreasing and bottom row nonincreasing")]
    NotMonotone,
    #[error("a_{{k+1-i}} > b_i + 1 at i = {i}")]
    Invalid { i: usize },
    #[error("permutation of size {got} for a bi-sequence of length {k}")]
    SizeMismatch { k: usize, got: usize },
    #[error("bi-sequence is not regular")]
    NotRegular,
    #[error("{0:?} is not a Dyck word")]
    NotDyck(String),
    #[error("{0:?} is not 213-avoiding")]
    Not213Avoiding(String),
    #[error("duplication factor must be at least 1")]
    BadFactor,
    #[error("cannot parse bi-sequence {input:?} at byte {pos}: {msg}")]
    Parse { input: String, pos: usize, msg: &'static str },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiSequence {
    a: Vec<i64>,
    b: Vec<i64>,
}

impl BiSequence {
    pub fn new(a: Vec<i64>, b: Vec<i64>) -> Result<Self, BiseqError> {
        if a.len() != b.len() {
            return Err(BiseqError::LengthMismatch { a: a.len(), b: b.len() });
        }
        if a.windows(2).any(|w| w[0] > w[1]) || b.windows(2).any(|w| w[0] < w[1]) {
            return Err(BiseqError::NotMonotone);
        }
        let k = a.len();
        if let Some(i) = (1..=k).find(|&i| a[k - i] > b[i - 1] + 1) {
            return Err(BiseqError::Invalid { i });
        }
        Ok(BiSequence { a, b })
    }

    /// `(1, …, k ; k+l-1, …, l)`.
    pub fn akl(k: usize, l: i64) -> Self {
        let a = (1..=k as i64).collect();
        let b = (0..k as i64).map(|i| k as i64 + l - 1 - i).collect();
        BiSequence { a, b }
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn a(&self) -> &[i64] {
        &self.a
    }

    pub fn b(&self) -> &[i64] {
        &self.b
    }

    pub fn is_regular(&self) -> bool {
        self.a.windows(2).all(|w| w[0] < w[1]) && self.b.windows(2).all(|w| w[0] > w[1])
    }

    /// The minimal `σ` for which every `[a_{σ⁻¹(i)}, b_i]` is a segment or
    /// the empty segment just below `a`.
    pub fn sigma0(&self) -> Permutation {
        let k = self.len();
        let mut used = vec![false; k];
        let mut inv = vec![0usize; k];
        for i in (0..k).rev() {
            let j = (0..k)
                .rev()
                .find(|&j| !used[j] && self.a[j] <= self.b[i] + 1)
                .expect("validity guarantees a candidate");
            used[j] = true;
            inv[i] = j + 1;
        }
        Permutation::new(inv).expect("a bijection by construction").inverse()
    }

    fn check_size(&self, sigma: &Permutation) -> Result<(), BiseqError> {
        if sigma.size() != self.len() {
            return Err(BiseqError::SizeMismatch { k: self.len(), got: sigma.size() });
        }
        Ok(())
    }

    /// `Σ [a_{σ⁻¹(i)}, b_i]`, with empty `[b+1, b]` terms dropped; `None`
    /// when some begin exceeds its end by more than one.
    pub fn multisegment_of(&self, sigma: &Permutation) -> Result<Option<Multisegment>, BiseqError> {
        self.check_size(sigma)?;
        let inv = sigma.inverse();
        let mut segs = Vec::with_capacity(self.len());
        for i in 0..self.len() {
            let (a, b) = (self.a[inv.get(i + 1) - 1], self.b[i]);
            if a > b + 1 {
                return Ok(None);
            }
            segs.extend(Segment::try_new(a, b));
        }
        Ok(Some(Multisegment::new(segs)))
    }

    /// The equivalent bi-sequence with `a_1 = 2`, `b_1 = 2k-1` obtained by
    /// relabeling endpoints by rank (regular input only).
    pub fn normalize(&self) -> Result<BiSequence, BiseqError> {
        if !self.is_regular() {
            return Err(BiseqError::NotRegular);
        }
        biseq_from_dyck(&interleave_word(self.a.iter().copied(), self.b.iter().copied()))
    }

    /// Each column repeated `m` times.
    pub fn duplicate(&self, m: usize) -> Result<BiSequence, BiseqError> {
        if m == 0 {
            return Err(BiseqError::BadFactor);
        }
        let rep = |v: &[i64]| v.iter().flat_map(|&x| std::iter::repeat_n(x, m)).collect();
        Ok(BiSequence { a: rep(&self.a), b: rep(&self.b) })
    }
}

/// X for each begin, Y for each end placed half a step past `end + 1`.
pub(crate) fn interleave_word(begins: impl Iterator<Item = i64>, ends: impl Iterator<Item = i64>) -> String {
    let mut marks: Vec<(i64, char)> = begins.map(|a| (2 * a, 'X')).chain(ends.map(|b| (2 * b + 3, 'Y'))).collect();
    marks.sort();
    marks.into_iter().map(|(_, c)| c).collect()
}

/// `σ̃(m·i - j) = m·σ(i) - j` for `0 ≤ j < m`.
pub fn duplicate_perm(sigma: &Permutation, m: usize) -> Result<Permutation, BiseqError> {
    if m == 0 {
        return Err(BiseqError::BadFactor);
    }
    let k = sigma.size();
    let mut word = vec![0usize; m * k];
    for i in 1..=k {
        for j in 0..m {
            word[m * i - j - 1] = m * sigma.get(i) - j;
        }
    }
    Ok(Permutation::new(word).expect("a bijection by construction"))
}

pub fn duplicate(a: &BiSequence, sigma: &Permutation, m: usize) -> Result<(BiSequence, Permutation), BiseqError> {
    a.check_size(sigma)?;
    Ok((a.duplicate(m)?, duplicate_perm(sigma, m)?))
}

/// A bi-sequence and permutation producing `m`. Equal ends are ordered by
/// begin and equal begins by position, which keeps `σ` as short as possible.
pub fn factorize(m: &Multisegment) -> (BiSequence, Permutation) {
    let mut segs = m.segments().to_vec();
    segs.sort_by(|x, y| y.end().cmp(&x.end()).then(x.begin().cmp(&y.begin())));
    let k = segs.len();
    let b: Vec<i64> = segs.iter().map(Segment::end).collect();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&i| (segs[i].begin(), i));
    let a: Vec<i64> = order.iter().map(|&i| segs[i].begin()).collect();
    let sigma = Permutation::new(order.iter().map(|&i| i + 1).collect()).expect("a bijection");
    let biseq = BiSequence::new(a, b).expect("segments give a valid bi-sequence");
    (biseq, sigma)
}

impl fmt::Display for BiSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "({} ; {})", row(&self.a), row(&self.b))
    }
}

impl fmt::Debug for BiSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiSequence{self}")
    }
}

impl FromStr for BiSequence {
    type Err = BiseqError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |pos: usize, msg| BiseqError::Parse { input: s.to_string(), pos, msg };
        let start = s.len() - s.trim_start().len();
        let t = s.trim();
        let inner = t.strip_prefix('(').ok_or_else(|| bad(start, "expected '('"))?;
        let inner = inner.strip_suffix(')').ok_or_else(|| bad(start + t.len(), "expected ')'"))?;
        let semi = inner.find(';').ok_or_else(|| bad(start + 1 + inner.len(), "expected ';'"))?;
        let row = |t: &str, offset: usize| -> Result<Vec<i64>, BiseqError> {
            if t.trim().is_empty() {
                return Ok(Vec::new());
            }
            let mut out = Vec::new();
            let mut at = offset;
            for x in t.split(',') {
                let lead = x.len() - x.trim_start().len();
                out.push(x.trim().parse().map_err(|_| bad(at + lead, "expected an integer"))?);
                at += x.len() + 1;
            }
            Ok(out)
        };
        let top = row(&inner[..semi], start + 1)?;
        let bottom = row(&inner[semi + 1..], start + 2 + semi)?;
        BiSequence::new(top, bottom)
    }
}

impl Serialize for BiSequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
