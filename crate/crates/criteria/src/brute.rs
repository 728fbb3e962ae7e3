use std::collections::{HashMap, HashSet, VecDeque};

use msq_multiseg::Multisegment;

/// One elementary move away from a pairwise unlinked multisegment.
pub fn is_apu(m: &Multisegment) -> bool {
    m.elementary_moves().iter().any(Multisegment::is_pairwise_unlinked)
}

/// Longest chain of elementary moves, by memoized search.
pub fn complexity_brute(m: &Multisegment) -> usize {
    fn go(m: &Multisegment, memo: &mut HashMap<Multisegment, usize>) -> usize {
        if let Some(&v) = memo.get(m) {
            return v;
        }
        let v = m.elementary_moves().iter().map(|n| go(n, memo) + 1).max().unwrap_or(0);
        memo.insert(m.clone(), v);
        v
    }
    go(m, &mut HashMap::new())
}

/// Counts the APU multisegments among everything obtained from `m`, `m`
/// included.
pub fn depth_brute(m: &Multisegment) -> usize {
    let mut seen = HashSet::from([m.clone()]);
    let mut queue = VecDeque::from([m.clone()]);
    let mut count = 0;
    while let Some(cur) = queue.pop_front() {
        let moves = cur.elementary_moves();
        if moves.iter().any(Multisegment::is_pairwise_unlinked) {
            count += 1;
        }
        for n in moves {
            if seen.insert(n.clone()) {
                queue.push_back(n);
            }
        }
    }
    count
}
