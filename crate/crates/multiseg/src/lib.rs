//! Segments and multisegments on the integer line.

mod derivative;
mod involution;
mod link;
mod segment;

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use derivative::{derivative_witnesses, left_derivative, right_derivative, soc_with_cuspidal, DerivativeWitness};
pub use involution::involution;
pub use link::{lc_condition, link_data, neighbors, LinkData};
pub use segment::{precedes_opt, Segment};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MultisegError {
    #[error("empty segment [{a},{b}]")]
    EmptySegment { a: i64, b: i64 },
    #[error("cannot parse multisegment {text:?} at byte {pos}: {reason}")]
    Parse { text: String, pos: usize, reason: String },
    #[error("{0} is not a sub-multisegment")]
    NotContained(String),
}

pub fn precedes(d1: &Segment, d2: &Segment) -> bool {
    d1.precedes(d2)
}

/// A finite multiset of segments, kept in canonical order
/// (end descending, then begin descending).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Multisegment {
    segs: Vec<Segment>,
}

impl Multisegment {
    pub fn new(mut segs: Vec<Segment>) -> Self {
        segs.sort_by(Segment::canonical_cmp);
        Multisegment { segs }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// From `(begin, end)` pairs.
    pub fn from_pairs(pairs: &[(i64, i64)]) -> Result<Self, MultisegError> {
        pairs.iter().map(|&(a, b)| Segment::new(a, b)).collect::<Result<Vec<_>, _>>().map(Self::new)
    }

    /// `⟨Δ⟩^{(n)} = Δ + ←Δ + … ` with `n` terms.
    pub fn speh(seg: Segment, n: usize) -> Self {
        Self::new((0..n).map(|i| seg.shift(-(i as i64))).collect())
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segs
    }

    pub fn get(&self, i: usize) -> Segment {
        self.segs[i]
    }

    pub fn len(&self) -> usize {
        self.segs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segs.is_empty()
    }

    pub fn deg(&self) -> usize {
        self.segs.iter().map(Segment::size).sum()
    }

    pub fn supp(&self) -> BTreeSet<i64> {
        self.segs.iter().flat_map(|s| s.begin()..=s.end()).collect()
    }

    /// All begins distinct and all ends distinct.
    pub fn is_regular(&self) -> bool {
        let begins: HashSet<i64> = self.segs.iter().map(Segment::begin).collect();
        let ends: HashSet<i64> = self.segs.iter().map(Segment::end).collect();
        begins.len() == self.len() && ends.len() == self.len()
    }

    /// Regular with begins and ends both decreasing in canonical order.
    pub fn is_ladder(&self) -> bool {
        self.is_regular() && self.segs.windows(2).all(|w| w[0].begin() > w[1].begin())
    }

    pub fn is_pairwise_unlinked(&self) -> bool {
        self.segs.iter().enumerate().all(|(i, x)| self.segs[i + 1..].iter().all(|y| !x.linked(y)))
    }

    pub fn plus(&self, other: &Multisegment) -> Multisegment {
        Self::new(self.segs.iter().chain(&other.segs).copied().collect())
    }

    pub fn with(&self, seg: Segment) -> Multisegment {
        let mut segs = self.segs.clone();
        segs.push(seg);
        Self::new(segs)
    }

    /// Removes one copy of `seg`.
    pub fn without(&self, seg: Segment) -> Result<Multisegment, MultisegError> {
        let pos = self.segs.iter().position(|s| *s == seg).ok_or_else(|| MultisegError::NotContained(seg.to_string()))?;
        let mut segs = self.segs.clone();
        segs.remove(pos);
        Ok(Multisegment { segs })
    }

    pub fn without_index(&self, i: usize) -> Multisegment {
        let mut segs = self.segs.clone();
        segs.remove(i);
        Multisegment { segs }
    }

    /// Sub-multisegment on the given canonical indices.
    pub fn restrict(&self, indices: &[usize]) -> Multisegment {
        Self::new(indices.iter().map(|&i| self.segs[i]).collect())
    }

    pub fn shift(&self, t: i64) -> Multisegment {
        Self::new(self.segs.iter().map(|s| s.shift(t)).collect())
    }

    /// Segment-wise `[a,b] ↦ [-b,-a]`.
    pub fn dual(&self) -> Multisegment {
        Self::new(self.segs.iter().map(Segment::dual).collect())
    }

    /// Collapses `c+1` onto `c`, provided each segment contains both or
    /// neither of them.
    pub fn contract(&self, c: i64) -> Option<Multisegment> {
        let f = |x: i64| if x > c { x - 1 } else { x };
        let mut segs = Vec::with_capacity(self.len());
        for s in &self.segs {
            if s.contains(c) != s.contains(c + 1) {
                return None;
            }
            segs.push(Segment::new(f(s.begin()), f(s.end())).expect("contraction keeps segments nonempty"));
        }
        Some(Self::new(segs))
    }

    /// Left inverse of [`Multisegment::contract`]: begins above `c` and
    /// ends at or above `c` move up by one.
    pub fn expand_at(&self, c: i64) -> Multisegment {
        let fb = |x: i64| if x > c { x + 1 } else { x };
        let fe = |x: i64| if x >= c { x + 1 } else { x };
        Self::new(self.segs.iter().map(|s| Segment::new(fb(s.begin()), fe(s.end())).unwrap()).collect())
    }

    /// Every multisegment obtained by replacing one linked pair by its
    /// offspring, without repetitions.
    pub fn elementary_moves(&self) -> Vec<Multisegment> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                let (x, y) = (self.segs[i], self.segs[j]);
                if !x.linked(&y) {
                    continue;
                }
                let (u, v) = x.offspring(&y);
                let mut segs: Vec<Segment> =
                    self.segs.iter().enumerate().filter(|&(t, _)| t != i && t != j).map(|(_, s)| *s).collect();
                segs.push(u);
                segs.extend(v);
                let m = Self::new(segs);
                if seen.insert(m.clone()) {
                    out.push(m);
                }
            }
        }
        out
    }

    fn endpoint_profile(&self) -> (Vec<i64>, Vec<i64>) {
        let mut a: Vec<i64> = self.segs.iter().map(Segment::begin).collect();
        let mut b: Vec<i64> = self.segs.iter().map(Segment::end).collect();
        a.sort_unstable();
        b.sort_unstable();
        (a, b)
    }
}

/// `m ⊨ n`: `m` is reachable from `n` by a chain of elementary moves.
pub fn obt_leq(m: &Multisegment, n: &Multisegment) -> bool {
    if m == n {
        return true;
    }
    if m.deg() != n.deg() || m.supp() != n.supp() || m.len() > n.len() {
        return false;
    }
    // begins and ends are multiset-invariant under moves, up to the lost
    // empty intersections
    let (ma, mb) = m.endpoint_profile();
    let (na, nb) = n.endpoint_profile();
    if !is_submultiset(&ma, &na) || !is_submultiset(&mb, &nb) {
        return false;
    }
    let mut seen = HashSet::from([n.clone()]);
    let mut queue = VecDeque::from([n.clone()]);
    while let Some(cur) = queue.pop_front() {
        for next in cur.elementary_moves() {
            if next == *m {
                return true;
            }
            if next.len() >= m.len() && seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    false
}

/// Indices `i` such that no `Δ_i` or `←Δ_i` precedes another segment, or
/// no other segment or its left shift precedes `Δ_i`.
pub fn detachable_segments(m: &Multisegment) -> Vec<usize> {
    let segs = m.segments();
    (0..segs.len())
        .filter(|&i| {
            let others = || (0..segs.len()).filter(move |&j| j != i).map(|j| segs[j]);
            let d = segs[i];
            let first = others().all(|e| !d.precedes(&e) && !d.left_shift().precedes(&e));
            let last = others().all(|e| !e.precedes(&d) && !e.left_shift().precedes(&d));
            first || last
        })
        .collect()
}

fn is_submultiset(small: &[i64], big: &[i64]) -> bool {
    let mut j = 0;
    for &x in small {
        while j < big.len() && big[j] < x {
            j += 1;
        }
        if j == big.len() || big[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

impl fmt::Display for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.segs.is_empty() {
            return write!(f, "0");
        }
        for (i, s) in self.segs.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multisegment({self})")
    }
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, reason: &str) -> MultisegError {
        MultisegError::Parse { text: self.text.to_string(), pos: self.pos, reason: reason.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), MultisegError> {
        self.skip_ws();
        if self.bytes.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn int(&mut self) -> Result<i64, MultisegError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.bytes.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s = &self.text[start..self.pos];
        s.parse().map_err(|_| {
            self.pos = start;
            self.err("expected an integer")
        })
    }

    fn segment(&mut self) -> Result<Segment, MultisegError> {
        self.expect(b'[')?;
        let start = self.pos;
        let a = self.int()?;
        self.skip_ws();
        let b = if self.bytes.get(self.pos) == Some(&b',') {
            self.pos += 1;
            self.int()?
        } else {
            a
        };
        self.expect(b']')?;
        Segment::new(a, b).map_err(|_| {
            self.pos = start;
            self.err("segment begin exceeds its end")
        })
    }
}

impl FromStr for Multisegment {
    type Err = MultisegError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { text, bytes: text.as_bytes(), pos: 0 };
        p.skip_ws();
        if p.pos == p.bytes.len() || text.trim() == "0" {
            return Ok(Multisegment::empty());
        }
        let mut segs = vec![p.segment()?];
        loop {
            p.skip_ws();
            if p.pos == p.bytes.len() {
                break;
            }
            p.expect(b'+')?;
            segs.push(p.segment()?);
        }
        Ok(Multisegment::new(segs))
    }
}

impl Serialize for Multisegment {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Multisegment {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> Multisegment {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print() {
        let x = m("[4,5]+[2,4]+[3]+[1,2]");
        assert_eq!(x.to_string(), "[4,5]+[2,4]+[3]+[1,2]");
        assert_eq!(m(" [1,2] + [4, 5]+[3,3]+[2,4] "), x);
        assert_eq!(m("[-2,-1]+[-4]").to_string(), "[-2,-1]+[-4]");
        assert_eq!(m("0"), Multisegment::empty());
        assert_eq!(m(""), Multisegment::empty());
        for bad in ["[1,2", "[2,1]", "[1,2]+", "[a]", "[1,2][3]", "1,2"] {
            assert!(bad.parse::<Multisegment>().is_err(), "{bad}");
        }
        assert_eq!(serde_json::to_string(&x).unwrap(), "\"[4,5]+[2,4]+[3]+[1,2]\"");
    }

    #[test]
    fn basic_invariants() {
        let x = m("[4,5]+[2,4]+[3]+[1,2]");
        assert_eq!(x.deg(), 8);
        assert_eq!(x.supp(), (1..=5).collect());
        assert!(x.is_regular());
        assert!(!m("[1,2]+[1,3]").is_regular());
        assert_eq!(Multisegment::speh(Segment::new(3, 4).unwrap(), 3), m("[3,4]+[2,3]+[1,2]"));
        assert!(m("[3,4]+[2,3]+[1,2]").is_ladder());
        assert_eq!(x.dual().dual(), x);
        assert_eq!(m("[1,2]+[3,4]").dual(), m("[-2,-1]+[-4,-3]"));
    }

    #[test]
    fn contraction_examples() {
        assert_eq!(m("[1,5]+[2,4]").contract(3), Some(m("[1,4]+[2,3]")));
        assert_eq!(m("[1,5]+[2,4]").contract(1), None);
        assert_eq!(m("[3,4]").contract(3), Some(m("[3]")));
        assert_eq!(m("[0,1]").expand_at(0), m("[0,2]"));
    }

    #[test]
    fn moves() {
        assert!(m("[1,3]+[5,6]").elementary_moves().is_empty());
        assert_eq!(m("[1]+[2]").elementary_moves(), vec![m("[1,2]")]);
        assert!(obt_leq(&m("[2,5]+[1,4]"), &m("[1,5]+[2,4]")) == false);
        assert!(obt_leq(&m("[1,5]+[2,4]"), &m("[2,5]+[1,4]")));
        let x = m("[4,5]+[2,4]+[3]+[1,2]");
        assert!(obt_leq(&x, &x));
    }

    #[test]
    fn detachable() {
        let x = m("[4,5]+[2,4]+[3]+[1,2]");
        let d = detachable_segments(&x);
        assert!(d.contains(&0));
        assert!(!d.contains(&1));
        assert_eq!(detachable_segments(&m("[1]+[5]+[9,10]")), vec![0, 1, 2]);
    }
}
