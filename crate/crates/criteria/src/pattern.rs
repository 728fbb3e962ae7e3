use std::fmt;

use itertools::Itertools;
use msq_multiseg::{Multisegment, Segment};
use serde::Serialize;

use crate::{require_regular, CriteriaError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ForbiddenKind {
    #[serde(rename = "4231")]
    T4231,
    #[serde(rename = "3412")]
    T3412,
}

impl fmt::Display for ForbiddenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ForbiddenKind::T4231 => "4231",
            ForbiddenKind::T3412 => "3412",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForbiddenType {
    pub kind: ForbiddenKind,
    pub indices: Vec<usize>,
}

/// Whether the segments, listed with decreasing ends, form a regular
/// multisegment of the given type.
pub fn is_of_type(segs: &[Segment], kind: ForbiddenKind) -> bool {
    let k = segs.len();
    if k < 4 {
        return false;
    }
    // 1-based access
    let d = |i: usize| segs[i - 1];
    let chain = |from: usize| (from..k).all(|i| d(i + 1).precedes(&d(i)));
    match kind {
        ForbiddenKind::T4231 => {
            chain(3) && d(3).precedes(&d(1)) && d(k).begin() < d(2).begin() && d(2).begin() < d(k - 1).begin()
        }
        ForbiddenKind::T3412 => {
            let l = if k == 4 { 2 } else { k - 1 };
            chain(4)
                && d(4).precedes(&d(2))
                && d(3).begin() < d(k).begin()
                && d(k).begin() < d(1).begin()
                && d(1).begin() < d(l).begin()
        }
    }
}

/// First regular sub-multisegment of type 4231 or 3412, by size and then
/// lexicographically on indices.
pub(crate) fn find_forbidden(m: &Multisegment) -> Option<ForbiddenType> {
    let segs = m.segments();
    for size in 4..=segs.len() {
        for idx in (0..segs.len()).combinations(size) {
            let sub: Vec<Segment> = idx.iter().map(|&i| segs[i]).collect();
            if !Multisegment::new(sub.clone()).is_regular() {
                continue;
            }
            for kind in [ForbiddenKind::T4231, ForbiddenKind::T3412] {
                if is_of_type(&sub, kind) {
                    return Some(ForbiddenType { kind, indices: idx });
                }
            }
        }
    }
    None
}

pub fn has_forbidden_type(m: &Multisegment) -> Result<Option<ForbiddenType>, CriteriaError> {
    require_regular(m)?;
    Ok(find_forbidden(m))
}
