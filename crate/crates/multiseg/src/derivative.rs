use serde::Serialize;

use crate::{precedes_opt, Multisegment, Segment};

/// A pairing of segments beginning at `c` with segments beginning at
/// `c + 1`. Indices are canonical positions in the multisegment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivativeWitness {
    /// Paired segments beginning at `c`.
    pub paired: Vec<usize>,
    /// `targets[t]` is the partner of `paired[t]`.
    pub targets: Vec<usize>,
    /// Unpaired segments beginning at `c`.
    pub unpaired: Vec<usize>,
}

fn begins_at(m: &Multisegment, c: i64) -> Vec<usize> {
    (0..m.len()).filter(|&i| m.get(i).begin() == c).collect()
}

fn is_valid(m: &Multisegment, w: &DerivativeWitness, upper: &[usize]) -> bool {
    let seg = |i: usize| m.get(i);
    let in_image = |j: usize| w.targets.contains(&j);
    for (&i, &fi) in w.paired.iter().zip(&w.targets) {
        if !seg(i).precedes(&seg(fi)) {
            return false;
        }
        for j in 0..m.len() {
            if seg(i).precedes(&seg(j)) && !in_image(j) && seg(j).extend_begin().precedes(&seg(fi)) {
                return false;
            }
        }
    }
    for &j in &w.unpaired {
        for &jp in upper {
            if !seg(j).precedes(&seg(jp)) {
                continue;
            }
            let Some(t) = w.targets.iter().position(|&x| x == jp) else {
                return false;
            };
            if precedes_opt(Some(seg(w.paired[t])), seg(j).drop_begin()) {
                return false;
            }
        }
    }
    true
}

/// All pairings at `c` satisfying the three compatibility conditions,
/// found by exhaustive search.
pub fn derivative_witnesses(m: &Multisegment, c: i64) -> Vec<DerivativeWitness> {
    let lower = begins_at(m, c);
    let upper = begins_at(m, c + 1);
    let mut out = Vec::new();
    let mut choice: Vec<Option<usize>> = Vec::with_capacity(lower.len());
    search(m, &lower, &upper, &mut choice, &mut out);
    out
}

fn search(
    m: &Multisegment,
    lower: &[usize],
    upper: &[usize],
    choice: &mut Vec<Option<usize>>,
    out: &mut Vec<DerivativeWitness>,
) {
    if choice.len() == lower.len() {
        let mut w = DerivativeWitness { paired: Vec::new(), targets: Vec::new(), unpaired: Vec::new() };
        for (&i, c) in lower.iter().zip(choice.iter()) {
            match c {
                Some(t) => {
                    w.paired.push(i);
                    w.targets.push(*t);
                }
                None => w.unpaired.push(i),
            }
        }
        if is_valid(m, &w, upper) {
            out.push(w);
        }
        return;
    }
    choice.push(None);
    search(m, lower, upper, choice, out);
    choice.pop();
    let i = lower[choice.len()];
    for &t in upper {
        if choice.contains(&Some(t)) || !m.get(i).precedes(&m.get(t)) {
            continue;
        }
        choice.push(Some(t));
        search(m, lower, upper, choice, out);
        choice.pop();
    }
}

/// The left derivative at `c` and its multiplicity, or `None` when `c` is
/// not a left descent point.
pub fn left_derivative(m: &Multisegment, c: i64) -> Option<(Multisegment, usize)> {
    let w = derivative_witnesses(m, c).into_iter().next().expect("a compatible pairing always exists");
    if w.unpaired.is_empty() {
        return None;
    }
    let mut segs: Vec<Segment> =
        (0..m.len()).filter(|i| !w.unpaired.contains(i)).map(|i| m.get(i)).collect();
    segs.extend(w.unpaired.iter().filter_map(|&j| m.get(j).drop_begin()));
    Some((Multisegment::new(segs), w.unpaired.len()))
}

/// Mirror image of [`left_derivative`] through the dual.
pub fn right_derivative(m: &Multisegment, c: i64) -> Option<(Multisegment, usize)> {
    left_derivative(&m.dual(), -c).map(|(d, k)| (d.dual(), k))
}

/// Multisegment of the socle of `[c] × m`.
pub fn soc_with_cuspidal(c: i64, m: &Multisegment) -> Multisegment {
    let w = derivative_witnesses(m, c).into_iter().next().expect("a compatible pairing always exists");
    let free: Vec<usize> = begins_at(m, c + 1).into_iter().filter(|j| !w.targets.contains(j)).collect();
    // the free segment `j` with `⁺Δ_j ⊀ Δ_r` for every free `r`, i.e. one
    // with the largest end
    let pick = free.iter().copied().find(|&j| free.iter().all(|&r| !m.get(j).extend_begin().precedes(&m.get(r))));
    match pick {
        None => m.with(Segment::point(c)),
        Some(j) => m.without_index(j).with(m.get(j).extend_begin()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> Multisegment {
        s.parse().unwrap()
    }

    #[test]
    fn left_examples() {
        assert_eq!(left_derivative(&m("[1,3]+[5,6]"), 1), Some((m("[2,3]+[5,6]"), 1)));
        assert_eq!(left_derivative(&m("[1,3]+[2,4]"), 1), None);
        assert_eq!(left_derivative(&m("[1,5]+[1,3]+[2,6]"), 1), Some((m("[1,5]+[2,3]+[2,6]"), 1)));
        assert_eq!(left_derivative(&m("[1]+[1]"), 1), Some((Multisegment::empty(), 2)));
        assert_eq!(left_derivative(&m("[2,3]"), 1), None);
    }

    #[test]
    fn right_examples() {
        assert_eq!(right_derivative(&m("[1,3]"), 3), Some((m("[1,2]"), 1)));
        // mirror image of the linked left case above
        assert_eq!(right_derivative(&m("[1,3]+[2,4]"), 4), None);
        assert_eq!(right_derivative(&m("[1,3]+[2,5]"), 3), Some((m("[1,2]+[2,5]"), 1)));
    }

    #[test]
    fn socle_examples() {
        assert_eq!(soc_with_cuspidal(1, &m("[2,4]")), m("[1,4]"));
        assert_eq!(soc_with_cuspidal(1, &m("[2,4]+[1,2]")), m("[2,4]+[1,2]+[1]"));
        assert_eq!(soc_with_cuspidal(1, &m("[2,5]+[2,3]")), m("[1,5]+[2,3]"));
        assert_eq!(soc_with_cuspidal(1, &m("[5,6]")), m("[5,6]+[1]"));
    }
}
