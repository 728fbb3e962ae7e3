use std::fmt;

use msq_multiseg::{detachable_segments, Multisegment, Segment};
use serde::Serialize;

use crate::{is_balanced, require_regular, CriteriaError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum MuCase {
    #[serde(rename = "4*23*1")]
    C4x23x1,
    #[serde(rename = "3*41*2")]
    C3x41x2,
    #[serde(rename = "34*12")]
    C34x12,
}

impl fmt::Display for MuCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MuCase::C4x23x1 => "4*23*1",
            MuCase::C3x41x2 => "3*41*2",
            MuCase::C34x12 => "34*12",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MinimalUnbalanced {
    pub case: MuCase,
    /// The 1-based break index `r` of the first two cases.
    pub r: Option<usize>,
}

/// Unbalanced, and balanced after removing any single detachable segment.
pub fn is_minimal_unbalanced_brute(m: &Multisegment) -> Result<bool, CriteriaError> {
    if is_balanced(m)? {
        return Ok(false);
    }
    for i in detachable_segments(m) {
        if !is_balanced(&m.without_index(i))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The shape of `m` when exactly one of the three explicit conditions
/// holds, which happens precisely for minimal unbalanced `m`.
pub fn classify_minimal_unbalanced(m: &Multisegment) -> Result<Option<MinimalUnbalanced>, CriteriaError> {
    require_regular(m)?;
    let segs = m.segments();
    let hits: Vec<MinimalUnbalanced> = [case_4x23x1(segs), case_3x41x2(segs), case_34x12(segs)].into_iter().flatten().collect();
    Ok(match hits.as_slice() {
        [one] => Some(*one),
        _ => None,
    })
}

fn case_4x23x1(segs: &[Segment]) -> Option<MinimalUnbalanced> {
    let k = segs.len();
    if k < 3 {
        return None;
    }
    let d = |i: usize| segs[i - 1];
    let b = |i: usize| d(i).begin();
    if !(2..k).all(|i| b(k) < b(i) && b(i) < b(1)) {
        return None;
    }
    // no b_l < b_j < b_i for 1 < i < l < j, nor b_j < b_i < b_l for i < l < j < k
    for i in 1..=k {
        for l in i + 1..=k {
            for j in l + 1..=k {
                if (i > 1 && b(l) < b(j) && b(j) < b(i)) || (j < k && b(j) < b(i) && b(i) < b(l)) {
                    return None;
                }
            }
        }
    }
    let r = (1..k).filter(|&i| !d(i + 1).precedes(&d(i))).max()?;
    (d(r + 1).precedes(&d(1)) && r < k - 1).then_some(MinimalUnbalanced { case: MuCase::C4x23x1, r: Some(r) })
}

fn case_3x41x2(segs: &[Segment]) -> Option<MinimalUnbalanced> {
    let k = segs.len();
    let d = |i: usize| segs[i - 1];
    (2..k.saturating_sub(1)).find_map(|r| {
        let tau = |i: usize| {
            if i == r {
                r + 1
            } else if i == r + 1 {
                r
            } else {
                i
            }
        };
        let dt = |i: usize| d(tau(i));
        let chain = (1..k).filter(|&i| i != r).all(|i| dt(i + 1).precedes(&dt(i)));
        let ends = dt(2).begin() < d(k).begin() && d(k).begin() < d(1).begin() && d(1).begin() < dt(k - 1).begin();
        (chain && ends).then_some(MinimalUnbalanced { case: MuCase::C3x41x2, r: Some(r) })
    })
}

fn case_34x12(segs: &[Segment]) -> Option<MinimalUnbalanced> {
    let k = segs.len();
    if k <= 4 {
        return None;
    }
    let d = |i: usize| segs[i - 1];
    let ok = d(2).is_subset_of(&d(1))
        && d(3).precedes(&d(1))
        && (3..=k - 3).all(|i| d(i + 1).precedes(&d(i)))
        && d(k).precedes(&d(k - 2))
        && d(k).is_subset_of(&d(k - 1))
        && d(k).precedes(&d(2));
    ok.then_some(MinimalUnbalanced { case: MuCase::C34x12, r: None })
}
