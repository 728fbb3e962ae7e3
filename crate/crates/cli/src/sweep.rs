use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use msq_biseq::{biseq_from_dyck, dyck_words, BiSequence};
use msq_criteria::{
    basic_family, classify_minimal_unbalanced, complexity, decide_with, depth, family_biseq, family_sigma1, gls_check,
    is_minimal_unbalanced_brute, FamilyKind, GlsMethod, GlsOptions, MuCase,
};
use msq_multiseg::{involution, left_derivative, right_derivative, Multisegment};
use msq_perm::{smooth_pair_data, Permutation};
use rayon::prelude::*;
use serde::Serialize;

use crate::random::{instance_rng, random_multisegment, support_multiset};

#[derive(Debug, Clone, Copy)]
pub struct SweepOptions {
    pub k: usize,
    pub seed: u64,
    pub trials: usize,
    pub limit: Option<usize>,
    /// Report progress on stderr.
    pub progress: bool,
}

struct Progress {
    name: &'static str,
    total: usize,
    done: AtomicUsize,
    enabled: bool,
}

impl Progress {
    fn new(name: &'static str, total: usize, opts: &SweepOptions) -> Self {
        Progress { name, total, done: AtomicUsize::new(0), enabled: opts.progress }
    }

    /// Prints at every tenth of the total.
    fn tick(&self) {
        if !self.enabled {
            return;
        }
        let d = self.done.fetch_add(1, Ordering::Relaxed) + 1;
        let step = self.total.div_ceil(10).max(1);
        if d % step == 0 || d == self.total {
            eprintln!("{}: {d}/{}", self.name, self.total);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub index: usize,
    pub input: String,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub sweep: &'static str,
    pub k: usize,
    pub seed: u64,
    pub instances: usize,
    pub violations: Vec<Violation>,
    /// Inputs where the rank test succeeded but no strong matching was found.
    pub rank_only: Vec<String>,
    pub counts: BTreeMap<String, usize>,
}

impl SweepReport {
    fn new(sweep: &'static str, opts: &SweepOptions) -> Self {
        SweepReport {
            sweep,
            k: opts.k,
            seed: opts.seed,
            instances: 0,
            violations: Vec::new(),
            rank_only: Vec::new(),
            counts: BTreeMap::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn bump(&mut self, key: impl Into<String>) {
        *self.counts.entry(key.into()).or_default() += 1;
    }
}

/// Every `(𝒜, σ, m_σ(𝒜))` with `𝒜` normalized regular of length `k` and
/// `σ ≥ σ₀(𝒜)`.
pub fn regular_instances(k: usize) -> Vec<(BiSequence, Permutation, Multisegment)> {
    let mut out = Vec::new();
    for w in dyck_words(k) {
        let a = biseq_from_dyck(&w).expect("Dyck words give bi-sequences");
        for sigma in Permutation::all(k) {
            if let Some(m) = a.multisegment_of(&sigma).expect("sizes agree") {
                out.push((a.clone(), sigma, m));
            }
        }
    }
    out
}

fn limited<T>(mut v: Vec<T>, limit: Option<usize>) -> Vec<T> {
    if let Some(n) = limit {
        v.truncate(n);
    }
    v
}

struct EquivalenceRow {
    input: String,
    problems: Vec<String>,
    balanced: bool,
    rank_only: bool,
}

/// All four criteria agree, plus `depth ≥ complexity`, over every normalized
/// regular bi-sequence of length at most `k`.
pub fn equivalence(opts: &SweepOptions) -> SweepReport {
    let gls = GlsOptions { trials: opts.trials, seed: opts.seed, ..GlsOptions::default() };
    let instances: Vec<_> = limited((1..=opts.k).flat_map(regular_instances).collect(), opts.limit);
    let progress = Progress::new("equivalence", instances.len(), opts);
    let rows: Vec<EquivalenceRow> = instances
        .par_iter()
        .map(|(a, sigma, m)| {
            progress.tick();
            let s0 = a.sigma0();
            let mut problems = Vec::new();
            let v = match decide_with(m, &gls) {
                Ok(v) => v,
                Err(e) => {
                    return EquivalenceRow { input: m.to_string(), problems: vec![e.to_string()], balanced: false, rank_only: false };
                }
            };
            let smooth = smooth_pair_data(&s0, sigma).expect("σ ≥ σ₀").is_smooth;
            let kl_one = msq_klpoly::kl_value(&s0, sigma).expect("engine size") == 1;
            if !v.agree || smooth != v.balanced || kl_one != v.balanced {
                problems.push(format!(
                    "balanced={} smooth={} pattern_free={} kl_one={} gls={}",
                    v.balanced, smooth, v.pattern_free, kl_one, v.gls.value
                ));
            }
            let (d, c) = (depth(m), complexity(m));
            if d < c {
                problems.push(format!("depth {d} < complexity {c}"));
            }
            EquivalenceRow {
                input: format!("{m} = m_{sigma}{a}"),
                problems,
                balanced: v.balanced,
                rank_only: v.gls.value && v.gls.method == GlsMethod::Rank,
            }
        })
        .collect();
    let mut report = SweepReport::new("equivalence", opts);
    for (index, row) in rows.into_iter().enumerate() {
        report.instances += 1;
        report.bump(if row.balanced { "balanced" } else { "unbalanced" });
        if row.rank_only {
            report.rank_only.push(row.input.clone());
        }
        for detail in row.problems {
            report.violations.push(Violation { index, input: row.input.clone(), detail });
        }
    }
    report
}

/// `(m^#)^# = m` with degree and cuspidal support preserved, on random `m`
/// with at most `k` segments and degree at most 20.
pub fn involution_sweep(opts: &SweepOptions) -> SweepReport {
    let n = opts.limit.unwrap_or(10_000);
    let progress = Progress::new("involution", n, opts);
    let rows: Vec<(String, Option<String>, bool)> = (0..n)
        .into_par_iter()
        .map(|i| {
            progress.tick();
            let m = random_multisegment(&mut instance_rng(opts.seed, i as u64), opts.k, 20);
            let t = involution(&m);
            let back = involution(&t);
            let problem = if back != m {
                Some(format!("involution twice gives {back}"))
            } else if t.deg() != m.deg() || support_multiset(&t) != support_multiset(&m) {
                Some(format!("image {t} changes degree or support"))
            } else {
                None
            };
            (m.to_string(), problem, t == m)
        })
        .collect();
    let mut report = SweepReport::new("involution", opts);
    for (index, (input, problem, fixed)) in rows.into_iter().enumerate() {
        report.instances += 1;
        if fixed {
            report.bump("fixed points");
        }
        if let Some(detail) = problem {
            report.violations.push(Violation { index, input, detail });
        }
    }
    report
}

/// The rank condition is invariant under the involution and duality, and is
/// inherited by left and right derivatives.
pub fn gls_stability(opts: &SweepOptions) -> SweepReport {
    let n = opts.limit.unwrap_or(1_000);
    let progress = Progress::new("gls-stability", n, opts);
    let rows: Vec<(String, Vec<String>, bool, bool)> = (0..n)
        .into_par_iter()
        .map(|i| {
            progress.tick();
            let m = random_multisegment(&mut instance_rng(opts.seed, i as u64), opts.k, 30);
            let check = |x: &Multisegment| gls_check(x, opts.trials, opts.seed);
            let g = check(&m);
            let mut problems = Vec::new();
            let inv = involution(&m);
            if check(&inv).value != g.value {
                problems.push(format!("differs on the involution {inv}"));
            }
            let dual = m.dual();
            if check(&dual).value != g.value {
                problems.push(format!("differs on the dual {dual}"));
            }
            if g.value {
                for c in m.supp() {
                    for (side, d) in [("left", left_derivative(&m, c)), ("right", right_derivative(&m, c))] {
                        if let Some((d, _)) = d {
                            if !check(&d).value {
                                problems.push(format!("{side} derivative at {c} fails: {d}"));
                            }
                        }
                    }
                }
            }
            (m.to_string(), problems, g.value, g.value && g.method == GlsMethod::Rank)
        })
        .collect();
    let mut report = SweepReport::new("gls-stability", opts);
    for (index, (input, problems, value, rank_only)) in rows.into_iter().enumerate() {
        report.instances += 1;
        report.bump(if value { "gls" } else { "not gls" });
        if rank_only {
            report.rank_only.push(input.clone());
        }
        for detail in problems {
            report.violations.push(Violation { index, input: input.clone(), detail });
        }
    }
    report
}

/// Members of the unbalanced families with `k ≤ k_max` segments.
pub fn family_members(k_max: usize) -> Vec<(FamilyKind, usize, Option<usize>)> {
    let mut out = Vec::new();
    for k in 4..=k_max {
        out.push((FamilyKind::B4231, k, None));
        for l in 3..k {
            out.push((FamilyKind::B3412, k, Some(l)));
        }
        if k > 4 {
            out.push((FamilyKind::B3412b, k, None));
        }
    }
    out
}

pub fn expected_case(kind: FamilyKind) -> MuCase {
    match kind {
        FamilyKind::B4231 => MuCase::C4x23x1,
        FamilyKind::B3412 => MuCase::C3x41x2,
        FamilyKind::B3412b => MuCase::C34x12,
    }
}

/// Classifier against the brute-force definition on every regular
/// multisegment with at most `k` segments (up to relabeling), and the
/// families with at most 8 segments.
pub fn minimal_unbalanced(opts: &SweepOptions) -> SweepReport {
    let instances: Vec<_> = limited((1..=opts.k).flat_map(regular_instances).collect(), opts.limit);
    let progress = Progress::new("minimal-unbalanced", instances.len(), opts);
    let rows: Vec<(String, Option<String>, Option<MuCase>)> = instances
        .par_iter()
        .map(|(_, _, m)| {
            progress.tick();
            let c = classify_minimal_unbalanced(m).expect("regular");
            let brute = is_minimal_unbalanced_brute(m).expect("regular");
            let problem = (c.is_some() != brute).then(|| format!("classifier {c:?}, brute force {brute}"));
            (m.to_string(), problem, c.map(|c| c.case))
        })
        .collect();
    let mut report = SweepReport::new("minimal-unbalanced", opts);
    for (index, (input, problem, case)) in rows.into_iter().enumerate() {
        report.instances += 1;
        if let Some(case) = case {
            report.bump(case.to_string());
        }
        if let Some(detail) = problem {
            report.violations.push(Violation { index, input, detail });
        }
    }
    let base = report.instances;
    let fams = family_members(8);
    let rows: Vec<(String, Vec<String>)> = fams
        .par_iter()
        .map(|&(kind, k, l)| {
            let m = basic_family(kind, k, l).expect("valid parameters");
            let mut problems = Vec::new();
            let a = family_biseq(kind, k, l).expect("valid parameters");
            let s1 = family_sigma1(kind, k, l).expect("valid parameters");
            if a.multisegment_of(&s1).ok().flatten().as_ref() != Some(&m) {
                problems.push(format!("σ₁ = {s1} on {a} does not give the family member"));
            }
            match classify_minimal_unbalanced(&m) {
                Ok(Some(c)) if c.case == expected_case(kind) => {}
                other => problems.push(format!("classified as {other:?}")),
            }
            if !is_minimal_unbalanced_brute(&m).unwrap_or(false) {
                problems.push("not minimal unbalanced by brute force".into());
            }
            if gls_check(&m, opts.trials, opts.seed).value {
                problems.push("satisfies the rank condition".into());
            }
            (format!("{kind}(k={k}, l={l:?}) = {m}"), problems)
        })
        .collect();
    for (offset, (input, problems)) in rows.into_iter().enumerate() {
        report.instances += 1;
        report.bump("family members");
        for detail in problems {
            report.violations.push(Violation { index: base + offset, input: input.clone(), detail });
        }
    }
    report
}
