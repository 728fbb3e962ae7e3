use serde::Serialize;

use crate::Multisegment;

/// Linked index pairs between two multisegments (or one with itself).
/// Indices are 0-based positions in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkData {
    /// `(i, j)` with `Δ_i ≺ Δ'_j`.
    pub x: Vec<(usize, usize)>,
    /// `(i, j)` with `←Δ_i ≺ Δ'_j`.
    pub xt: Vec<(usize, usize)>,
}

impl LinkData {
    pub fn contains_x(&self, p: (usize, usize)) -> bool {
        self.x.binary_search(&p).is_ok()
    }

    pub fn contains_xt(&self, p: (usize, usize)) -> bool {
        self.xt.binary_search(&p).is_ok()
    }
}

pub fn link_data(m: &Multisegment, n: Option<&Multisegment>) -> LinkData {
    let n = n.unwrap_or(m);
    let mut x = Vec::new();
    let mut xt = Vec::new();
    for (i, d) in m.segments().iter().enumerate() {
        let shifted = d.left_shift();
        for (j, e) in n.segments().iter().enumerate() {
            if d.precedes(e) {
                x.push((i, j));
            }
            if shifted.precedes(e) {
                xt.push((i, j));
            }
        }
    }
    LinkData { x, xt }
}

/// `(i1,j1) ⟳ (i2,j2)`.
pub fn neighbors(m: &Multisegment, n: &Multisegment, from: (usize, usize), to: (usize, usize)) -> bool {
    (from.0 == to.0 && n.get(to.1).precedes(&n.get(from.1))) || (from.1 == to.1 && m.get(from.0).precedes(&m.get(to.0)))
}

/// Whether some injective `⟳`-matching from `X_{m;n}` into `X̃_{m;n}` exists.
pub fn lc_condition(m: &Multisegment, n: &Multisegment) -> bool {
    let data = link_data(m, Some(n));
    let adj: Vec<Vec<usize>> = data
        .x
        .iter()
        .map(|&p| (0..data.xt.len()).filter(|&t| neighbors(m, n, p, data.xt[t])).collect())
        .collect();
    max_matching(&adj, data.xt.len()) == data.x.len()
}

/// Size of a maximum matching in a bipartite graph given by left adjacency
/// lists (augmenting paths).
pub(crate) fn max_matching(adj: &[Vec<usize>], right: usize) -> usize {
    fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &v in &adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if owner[v].is_none_or(|w| augment(w, adj, seen, owner)) {
                owner[v] = Some(u);
                return true;
            }
        }
        false
    }
    let mut owner = vec![None; right];
    let mut size = 0;
    for u in 0..adj.len() {
        let mut seen = vec![false; right];
        if augment(u, adj, &mut seen, &mut owner) {
            size += 1;
        }
    }
    size
}
