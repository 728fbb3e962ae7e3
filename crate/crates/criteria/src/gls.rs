//! The rank condition on the vectors `x_{i,j}(λ) ∈ F_p^{X̃}`, `(i,j) ∈ X`.

use msq_multiseg::{lc_condition, link_data, neighbors, LinkData, Multisegment};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const GLS_PRIME: u64 = (1 << 31) - 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GlsMethod {
    StrongMatching,
    Rank,
    Certificate,
}

impl std::fmt::Display for GlsMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GlsMethod::StrongMatching => "strong-matching",
            GlsMethod::Rank => "rank",
            GlsMethod::Certificate => "certificate",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GlsCertificate {
    /// `#X > #X̃`.
    TooFewTargets { x: usize, xt: usize },
    /// No injective `⟳`-matching from `X` to `X̃`.
    NoMatching,
    /// At least `k` pairs whose vectors lie in a `(k-1)`-dimensional space.
    IrreduciblePairs { pairs: Vec<(usize, usize)> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GlsWitness {
    /// Coordinates `λ_{i,j}`, `(i,j) ∈ X`.
    pub lambda: Vec<((usize, usize), u64)>,
    pub field: u64,
    pub rank_achieved: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GlsOutcome {
    pub value: bool,
    pub method: GlsMethod,
    /// Random trials actually run.
    pub trials: usize,
    pub certificate: Option<GlsCertificate>,
    pub matching: Option<StrongMatching>,
    pub witness: Option<GlsWitness>,
    /// Upper bound on the chance that a negative rank verdict is wrong.
    pub error_bound: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GlsOptions {
    pub trials: usize,
    pub seed: u64,
    /// Node budget for the strong matching search.
    pub budget: usize,
    pub use_strong_matching: bool,
}

impl Default for GlsOptions {
    fn default() -> Self {
        GlsOptions { trials: 3, seed: 0, budget: 200_000, use_strong_matching: true }
    }
}

/// The matrix of the vectors as edges: row `u` (index into `X`) has
/// coefficient `±λ_label` at column `t` (index into `X̃`).
struct Graph {
    data: LinkData,
    /// `(t, label, sign)` per row.
    edges: Vec<Vec<(usize, usize, bool)>>,
}

impl Graph {
    fn new(m: &Multisegment) -> Self {
        let data = link_data(m, None);
        let label_of = |p: (usize, usize)| data.x.binary_search(&p).expect("labels lie in X");
        let edges = data
            .x
            .iter()
            .map(|&(i, j)| {
                data.xt
                    .iter()
                    .enumerate()
                    .filter(|&(_, &y)| neighbors(m, m, (i, j), y))
                    .map(|(t, &(s, r))| {
                        if s == i {
                            (t, label_of((r, j)), true)
                        } else {
                            (t, label_of((i, s)), false)
                        }
                    })
                    .collect()
            })
            .collect();
        Graph { data, edges }
    }

    fn label_at(&self, u: usize, t: usize) -> Option<usize> {
        self.edges[u].iter().find(|e| e.0 == t).map(|e| e.1)
    }
}

/// Pairs `(i,j) ∈ X` whose only neighbours are `(i,i)` and `(j,j)`.
pub fn irreducible_pairs(m: &Multisegment) -> Vec<(usize, usize)> {
    let g = Graph::new(m);
    g.data
        .x
        .iter()
        .enumerate()
        .filter(|&(u, _)| g.edges[u].len() == 2)
        .map(|(_, &p)| p)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrongMatching {
    /// `(x, f(x))` listed in an order making the matrix triangular.
    pub order: Vec<((usize, usize), (usize, usize))>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StrongSearch {
    Found(StrongMatching),
    None,
    BudgetExhausted,
}

/// Backtracking search for a `⟳`-matching `f` and an order of `X` such that
/// no row has a nonzero entry, with a label used by `f`, in the column of a
/// later row's image.
pub fn strong_matching(m: &Multisegment, budget: usize) -> StrongSearch {
    let g = Graph::new(m);
    let n = g.data.x.len();
    let mut search = Search {
        g: &g,
        f: vec![None; n],
        used: vec![false; g.data.xt.len()],
        labels: vec![0; n],
        nodes: 0,
        budget,
    };
    match search.go(0) {
        Some(true) => {
            let order = topological(&g, &search.f, &search.labels).expect("accepted assignments are acyclic");
            let f = |u: usize| search.f[u].expect("complete");
            StrongMatching { order: order.into_iter().map(|u| (g.data.x[u], g.data.xt[f(u)])).collect() }.into()
        }
        Some(false) => StrongSearch::None,
        None => StrongSearch::BudgetExhausted,
    }
}

impl From<StrongMatching> for StrongSearch {
    fn from(s: StrongMatching) -> Self {
        StrongSearch::Found(s)
    }
}

struct Search<'a> {
    g: &'a Graph,
    f: Vec<Option<usize>>,
    used: Vec<bool>,
    /// Multiplicity of each label among the chosen edges.
    labels: Vec<usize>,
    nodes: usize,
    budget: usize,
}

impl Search<'_> {
    /// `None` when the budget runs out.
    fn go(&mut self, u: usize) -> Option<bool> {
        if u == self.f.len() {
            return Some(true);
        }
        for e in 0..self.g.edges[u].len() {
            let (t, label, _) = self.g.edges[u][e];
            if self.used[t] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            self.used[t] = true;
            self.f[u] = Some(t);
            self.labels[label] += 1;
            if topological(self.g, &self.f, &self.labels).is_some() && self.go(u + 1)? {
                return Some(true);
            }
            self.labels[label] -= 1;
            self.f[u] = None;
            self.used[t] = false;
        }
        Some(false)
    }
}

/// An order of all rows with `y` before `x` whenever row `x` meets column
/// `f(y)` under an active label; `None` on a cycle.
fn topological(g: &Graph, f: &[Option<usize>], labels: &[usize]) -> Option<Vec<usize>> {
    let n = f.len();
    let mut succ = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    for (y, fy) in f.iter().enumerate() {
        let Some(t) = *fy else { continue };
        for x in 0..n {
            if x != y && g.label_at(x, t).is_some_and(|l| labels[l] > 0) {
                succ[y].push(x);
                indeg[x] += 1;
            }
        }
    }
    let mut ready: Vec<usize> = (0..n).filter(|&x| indeg[x] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(y) = ready.pop() {
        order.push(y);
        for &x in &succ[y] {
            indeg[x] -= 1;
            if indeg[x] == 0 {
                ready.push(x);
            }
        }
    }
    (order.len() == n).then_some(order)
}

fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, pivot);
        let inv = pow_mod(rows[rank][c], p - 2, p);
        for v in rows[rank].iter_mut() {
            *v = *v * inv % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let factor = rows[r][c];
                for cc in c..cols {
                    let sub = factor * rows[rank][cc] % p;
                    rows[r][cc] = (rows[r][cc] + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn rank_of(g: &Graph, lambda: &[u64]) -> usize {
    let rows = g
        .edges
        .iter()
        .map(|es| {
            let mut row = vec![0u64; g.data.xt.len()];
            for &(t, label, plus) in es {
                let v = lambda[label] % GLS_PRIME;
                row[t] = if plus { v } else { (GLS_PRIME - v) % GLS_PRIME };
            }
            row
        })
        .collect();
    rank_mod_p(rows, GLS_PRIME)
}

/// Rank over `F_p` of the vectors for the given coordinates (indexed like
/// `link_data(m).x`).
pub fn rank_for_lambda(m: &Multisegment, lambda: &[u64]) -> usize {
    let g = Graph::new(m);
    assert_eq!(lambda.len(), g.data.x.len(), "one coordinate per pair in X");
    rank_of(&g, lambda)
}

pub fn gls_check(m: &Multisegment, trials: usize, seed: u64) -> GlsOutcome {
    gls_check_with(m, &GlsOptions { trials, seed, ..GlsOptions::default() })
}

/// Certificates first, then a strong matching, then random rank trials.
pub fn gls_check_with(m: &Multisegment, opts: &GlsOptions) -> GlsOutcome {
    let g = Graph::new(m);
    let (nx, nxt) = (g.data.x.len(), g.data.xt.len());
    let outcome = |value, method| GlsOutcome {
        value,
        method,
        trials: 0,
        certificate: None,
        matching: None,
        witness: None,
        error_bound: None,
    };
    let certificate = |c| GlsOutcome { certificate: Some(c), ..outcome(false, GlsMethod::Certificate) };
    if nx > nxt {
        return certificate(GlsCertificate::TooFewTargets { x: nx, xt: nxt });
    }
    if !lc_condition(m, m) {
        return certificate(GlsCertificate::NoMatching);
    }
    let irreducible = irreducible_pairs(m);
    if !irreducible.is_empty() && irreducible.len() >= m.len() {
        return certificate(GlsCertificate::IrreduciblePairs { pairs: irreducible });
    }
    if opts.use_strong_matching {
        if let StrongSearch::Found(s) = strong_matching(m, opts.budget) {
            return GlsOutcome { matching: Some(s), ..outcome(true, GlsMethod::StrongMatching) };
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut best: Option<GlsWitness> = None;
    for trial in 1..=opts.trials {
        let lambda: Vec<u64> = (0..nx).map(|_| rng.gen_range(1..GLS_PRIME)).collect();
        let rank = rank_of(&g, &lambda);
        if best.as_ref().is_none_or(|b| rank > b.rank_achieved) {
            best = Some(GlsWitness {
                lambda: g.data.x.iter().copied().zip(lambda).collect(),
                field: GLS_PRIME,
                rank_achieved: rank,
            });
        }
        if rank == nx {
            return GlsOutcome { trials: trial, witness: best, ..outcome(true, GlsMethod::Rank) };
        }
    }
    let bound = (nx as f64 / GLS_PRIME as f64).powi(opts.trials as i32);
    GlsOutcome { trials: opts.trials, witness: best, error_bound: Some(bound), ..outcome(false, GlsMethod::Rank) }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(s: &str) -> Multisegment {
        s.parse().unwrap()
    }

    #[test]
    fn small_rank() {
        assert_eq!(rank_mod_p(vec![vec![1, 2], vec![2, 4]], 7), 1);
        assert_eq!(rank_mod_p(vec![vec![1, 2], vec![3, 4]], 7), 2);
        assert_eq!(rank_mod_p(vec![vec![0, 0]], 7), 0);
        assert_eq!(pow_mod(3, GLS_PRIME - 1, GLS_PRIME), 1);
    }

    #[test]
    fn doubled_points_have_a_strong_matching() {
        let m = ms("[2]+[2]+[1]+[1]");
        let d = link_data(&m, None);
        assert_eq!(d.x, vec![(2, 0), (2, 1), (3, 0), (3, 1)]);
        assert_eq!(d.xt.len(), 8);
        let StrongSearch::Found(s) = strong_matching(&m, 10_000) else { panic!() };
        assert_eq!(s.order.len(), 4);
        let r = gls_check(&m, 3, 1);
        assert!(r.value);
        assert_eq!(r.method, GlsMethod::StrongMatching);
    }

    #[test]
    fn certificates() {
        let r = gls_check(&ms("[3,4]+[1,3]+[2]+[0,1]"), 3, 0);
        assert!(!r.value);
        assert_eq!(r.certificate, Some(GlsCertificate::IrreduciblePairs { pairs: vec![(1, 0), (2, 0), (3, 1), (3, 2)] }));
        let r = gls_check(&ms("[4,6]+[1,5]+[2,4]+[3]+[0,2]"), 3, 0);
        assert!(!r.value);
        assert!(matches!(
            r.certificate,
            Some(GlsCertificate::NoMatching) | Some(GlsCertificate::TooFewTargets { .. })
        ));
        assert!(!lc_condition(&ms("[4,6]+[1,5]+[2,4]+[3]+[0,2]"), &ms("[4,6]+[1,5]+[2,4]+[3]+[0,2]")));
    }
}
