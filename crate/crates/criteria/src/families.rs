use std::fmt;
use std::str::FromStr;

use msq_biseq::BiSequence;
use msq_multiseg::{Multisegment, Segment};
use msq_perm::Permutation;
use serde::Serialize;

use crate::CriteriaError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FamilyKind {
    #[serde(rename = "4231")]
    B4231,
    #[serde(rename = "3412")]
    B3412,
    #[serde(rename = "3412b")]
    B3412b,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::B4231 => "4231",
            FamilyKind::B3412 => "3412",
            FamilyKind::B3412b => "3412b",
        })
    }
}

impl FromStr for FamilyKind {
    type Err = CriteriaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "4231" => Ok(FamilyKind::B4231),
            "3412" => Ok(FamilyKind::B3412),
            "3412b" => Ok(FamilyKind::B3412b),
            _ => Err(CriteriaError::BadFamily(format!("unknown family {s:?}"))),
        }
    }
}

fn check(kind: FamilyKind, k: usize, l: Option<usize>) -> Result<usize, CriteriaError> {
    let bad = |msg: &str| Err(CriteriaError::BadFamily(format!("{kind} with k={k}, l={l:?}: {msg}")));
    match kind {
        FamilyKind::B4231 if k < 4 => bad("needs k ≥ 4"),
        FamilyKind::B3412 => match l {
            Some(l) if k > l && l > 2 => Ok(l),
            _ => bad("needs k > l > 2"),
        },
        FamilyKind::B3412b if k <= 4 => bad("needs k > 4"),
        _ => Ok(0),
    }
}

fn seg(a: usize, b: usize) -> Segment {
    Segment::new(a as i64, b as i64).expect("family segments are nonempty")
}

fn speh(s: Segment, n: usize) -> Vec<Segment> {
    Multisegment::speh(s, n).segments().to_vec()
}

/// The basic multisegments of each unbalanced family.
pub fn basic_family(kind: FamilyKind, k: usize, l: Option<usize>) -> Result<Multisegment, CriteriaError> {
    let l = check(kind, k, l)?;
    let mut segs = Vec::new();
    match kind {
        FamilyKind::B4231 => {
            segs.push(seg(k, k + 1));
            segs.push(seg(2, k));
            segs.extend(speh(seg(k - 1, k - 1), k - 3));
            segs.push(seg(1, 2));
        }
        FamilyKind::B3412 => {
            segs.push(seg(l, l + k - 1));
            segs.extend(speh(seg(l - 2, l + k - 2), l - 3));
            segs.push(seg(k, k + 1));
            segs.push(seg(1, k));
            segs.extend(speh(seg(k - 1, k - 1), k - l - 1));
            segs.push(seg(l - 1, l));
        }
        FamilyKind::B3412b => {
            segs.push(seg(k - 1, 2 * k - 2));
            segs.push(seg(k, 2 * k - 3));
            segs.extend((1..=k - 4).map(|i| seg(k - 1 - i, 2 * k - 3 - i)));
            segs.push(seg(1, k));
            segs.push(seg(2, k - 1));
        }
    }
    Ok(Multisegment::new(segs))
}

/// The bi-sequence `𝒜_{k,l'}` carrying the family: `l' = 2`, `l`, `k-1`.
pub fn family_biseq(kind: FamilyKind, k: usize, l: Option<usize>) -> Result<BiSequence, CriteriaError> {
    let l = check(kind, k, l)?;
    Ok(match kind {
        FamilyKind::B4231 => BiSequence::akl(k, 2),
        FamilyKind::B3412 => BiSequence::akl(k, l as i64),
        FamilyKind::B3412b => BiSequence::akl(k, k as i64 - 1),
    })
}

/// The involution `σ₁` with `m_{σ₁}(family_biseq) = basic_family`.
pub fn family_sigma1(kind: FamilyKind, k: usize, l: Option<usize>) -> Result<Permutation, CriteriaError> {
    let l = check(kind, k, l)?;
    let f = |i: usize| -> usize {
        match kind {
            FamilyKind::B4231 => match i {
                1 => k,
                2 => 2,
                _ if i < k => k + 2 - i,
                _ => 1,
            },
            FamilyKind::B3412 => match i {
                1 => l,
                _ if i <= l - 2 => l - i,
                _ if i == l - 1 => k,
                _ if i == l => 1,
                _ if i < k => l + k - i,
                _ => l - 1,
            },
            FamilyKind::B3412b => match i {
                1 | 2 => i + k - 2,
                _ if i <= k - 2 => k + 1 - i,
                _ => i + 2 - k,
            },
        }
    };
    Ok(Permutation::from_fn(k, f).expect("σ₁ is a permutation"))
}
