//! Front end for the `msq` binary: argument parsing, command dispatch,
//! text and JSON reports, and the sweeps behind `msq sweep`.

pub mod random;
pub mod sweep;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use msq_biseq::{factorize, BiSequence};
use msq_criteria::{
    basic_family, classify_minimal_unbalanced, complexity, decide_with, depth, family_biseq, family_sigma1,
    gls_check_with, grothendieck_expansion, has_forbidden_type, irreducible_pairs, kl_value_at_one, FamilyKind,
    GlsOptions,
};
use msq_multiseg::{involution, left_derivative, link_data, right_derivative, Multisegment};
use msq_perm::Permutation;
use serde_json::{json, Value};

use crate::sweep::{SweepOptions, SweepReport};

#[derive(Debug, Parser)]
#[command(name = "msq", version, about = "Decision tools for multisegments, KL polynomials and coset identities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Random rank trials for the (GLS) test.
    #[arg(long, global = true, default_value_t = 3)]
    pub trials: usize,
    /// Worker threads for sweeps and coset sums.
    #[arg(long, global = true)]
    pub par: Option<usize>,
    /// Cap on the number of sweep instances.
    #[arg(long, global = true)]
    pub limit: Option<usize>,
    /// KL memo table to load before and save after the command.
    #[arg(long, global = true)]
    pub cache_file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Square-irreducibility verdict with all four criteria.
    Decide { m: String },
    /// Every invariant and certificate for one multisegment.
    Criteria { m: String },
    /// The Zelevinsky involution.
    Involution { m: String },
    /// Left or right derivative at a cuspidal point.
    Derivative {
        m: String,
        #[arg(long, allow_hyphen_values = true)]
        at: i64,
        #[arg(long, value_enum)]
        side: Side,
    },
    /// Signed expansion of the product in standard modules.
    Expand { biseq: String, sigma: String },
    /// The KL polynomial P_{x,w}.
    Kl { x: String, w: String },
    /// Coset identities for a smooth pair.
    Identity {
        #[arg(value_enum)]
        which: IdentityKind,
        #[arg(long)]
        sigma: String,
        #[arg(long)]
        sigma0: String,
        #[arg(long, default_value_t = 2)]
        m: usize,
        /// Allow the S_9 case m·k = 9.
        #[arg(long)]
        allow_slow: bool,
    },
    /// Exhaustive or seeded random property sweeps.
    Sweep {
        #[arg(value_enum)]
        which: SweepKind,
        #[arg(long)]
        k: usize,
    },
    /// A member of one of the basic unbalanced families.
    Family {
        kind: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Side {
    L,
    R,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IdentityKind {
    Klidnt,
    Higher,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepKind {
    Equivalence,
    Involution,
    GlsStability,
    MinimalUnbalanced,
}

/// Result of a command: the report and whether it found a violation.
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub violation: bool,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome { text, json, violation: false }
    }
}

fn parse_m(s: &str) -> Result<Multisegment> {
    s.parse().map_err(|e| anyhow!("{e}"))
}

fn parse_perm(s: &str) -> Result<Permutation> {
    s.parse().map_err(|e| anyhow!("{e}"))
}

/// Parses `argv` and runs the command, writing the report to `out`.
/// Returns the process exit code: 0 on success, 1 on a detected
/// violation, 2 on bad input or unmet preconditions.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return 2;
            }
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    match execute(&cli) {
        Ok(o) => {
            let printed = if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("serializable"))
            } else {
                write!(out, "{}", o.text)
            };
            if printed.is_err() {
                return 2;
            }
            i32::from(o.violation)
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    match cli.par {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .context("thread pool")?
            .install(|| dispatch(cli)),
        None => dispatch(cli),
    }
}

fn gls_options(cli: &Cli) -> GlsOptions {
    GlsOptions { trials: cli.trials, seed: cli.seed, ..GlsOptions::default() }
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Decide { m } => {
            let m = parse_m(m)?;
            let n = factorize(&m).1.size();
            with_cache(cli.cache_file.as_deref(), n, || {
                let v = decide_with(&m, &gls_options(cli))?;
                let verdict = match v.square_irreducible {
                    Some(true) => "square-irreducible",
                    Some(false) => "not square-irreducible",
                    None => "undecided (not regular)",
                };
                let text = format!(
                    "{}\nregular: {}\nbalanced: {}\npattern-free: {}\nP(1) = 1: {}\ngls: {} ({}, {} trials)\nagree: {}\nverdict: {verdict}\n",
                    v.input, v.regular, v.balanced, v.pattern_free, v.kl_one, v.gls.value, v.gls.method, v.gls.trials, v.agree
                );
                Ok(Outcome::ok(text, serde_json::to_value(&v)?))
            })
        }
        Command::Criteria { m } => criteria_report(cli, &parse_m(m)?),
        Command::Involution { m } => {
            let m = parse_m(m)?;
            let t = involution(&m);
            Ok(Outcome::ok(format!("{t}\n"), json!({ "input": m, "involution": t })))
        }
        Command::Derivative { m, at, side } => {
            let m = parse_m(m)?;
            let d = match side {
                Side::L => left_derivative(&m, *at),
                Side::R => right_derivative(&m, *at),
            };
            let side = if *side == Side::L { "left" } else { "right" };
            Ok(match d {
                Some((d, mult)) => Outcome::ok(
                    format!("{d}\nmultiplicity: {mult}\n"),
                    json!({ "input": m, "side": side, "at": at, "derivative": d, "multiplicity": mult }),
                ),
                None => Outcome::ok(
                    "none\n".into(),
                    json!({ "input": m, "side": side, "at": at, "derivative": null }),
                ),
            })
        }
        Command::Expand { biseq, sigma } => {
            let a: BiSequence = biseq.parse().map_err(|e| anyhow!("{e}"))?;
            let sigma = parse_perm(sigma)?;
            with_cache(cli.cache_file.as_deref(), sigma.size(), || {
                let terms = grothendieck_expansion(&a, &sigma)?;
                let mut text = String::new();
                let mut rows = Vec::new();
                for (tau, c) in &terms {
                    let m = a.multisegment_of(tau)?.map(|m| m.to_string());
                    text.push_str(&format!("{c:+} {tau} {}\n", m.as_deref().unwrap_or("-")));
                    rows.push(json!({ "sigma": tau.to_string(), "coefficient": c, "multisegment": m }));
                }
                Ok(Outcome::ok(text, json!({ "biseq": a, "sigma": sigma.to_string(), "terms": rows })))
            })
        }
        Command::Kl { x, w } => {
            let (x, w) = (parse_perm(x)?, parse_perm(w)?);
            if x.size() != w.size() {
                bail!("{x} and {w} have different sizes");
            }
            with_cache(cli.cache_file.as_deref(), w.size(), || {
                let p = msq_klpoly::kl_polynomial(&x, &w)?;
                Ok(Outcome::ok(
                    format!("{p}\nP(1) = {}\n", p.at_one()),
                    json!({ "x": x.to_string(), "w": w.to_string(), "coefficients": p.coeffs(), "at_one": p.at_one() }),
                ))
            })
        }
        Command::Identity { which, sigma, sigma0, m, allow_slow } => {
            let (sigma, sigma0) = (parse_perm(sigma)?, parse_perm(sigma0)?);
            let m = if *which == IdentityKind::Klidnt { 2 } else { *m };
            let n = m * sigma.size();
            if n == msq_klpoly::MAX_ENGINE_SIZE && !allow_slow {
                bail!("m·k = {n} needs --allow-slow");
            }
            with_cache(cli.cache_file.as_deref(), n.min(msq_klpoly::MAX_ENGINE_SIZE), || {
                let r = match which {
                    IdentityKind::Klidnt => msq_klidentity::verify_klidnt(&sigma0, &sigma)?,
                    IdentityKind::Higher => msq_klidentity::verify_higher(&sigma0, &sigma, m)?,
                };
                let mut text = format!("σ₀ = {}, σ = {}, m = {}\n", r.sigma0, r.sigma, r.m);
                for c in &r.cosets {
                    text.push_str(&format!(
                        "{:?}: lhs {} rhs {} {}\n",
                        c.coset_matrix,
                        c.lhs,
                        c.rhs,
                        if c.pass { "ok" } else { "FAIL" }
                    ));
                }
                for s in &r.parabolic {
                    text.push_str(&format!("σ' = {}: parabolic sum {} {}\n", s.sigma_prime, s.sum, if s.pass { "ok" } else { "FAIL" }));
                }
                text.push_str(if r.all_pass() { "all pass\n" } else { "FAILED\n" });
                Ok(Outcome { text, json: serde_json::to_value(&r.cosets)?, violation: !r.all_pass() })
            })
        }
        Command::Sweep { which, k } => {
            let opts = SweepOptions { k: *k, seed: cli.seed, trials: cli.trials, limit: cli.limit, progress: true };
            if *which == SweepKind::Equivalence && *k > 7 {
                bail!("equivalence sweeps are limited to k ≤ 7");
            }
            let report = match which {
                SweepKind::Equivalence => sweep::equivalence(&opts),
                SweepKind::Involution => sweep::involution_sweep(&opts),
                SweepKind::GlsStability => sweep::gls_stability(&opts),
                SweepKind::MinimalUnbalanced => sweep::minimal_unbalanced(&opts),
            };
            Ok(Outcome { text: sweep_text(&report), json: serde_json::to_value(&report)?, violation: !report.passed() })
        }
        Command::Family { kind, k, l } => {
            let kind: FamilyKind = kind.parse()?;
            let m = basic_family(kind, *k, *l)?;
            let a = family_biseq(kind, *k, *l)?;
            let s1 = family_sigma1(kind, *k, *l)?;
            let class = classify_minimal_unbalanced(&m)?;
            let g = gls_check_with(&m, &gls_options(cli));
            let case = class.map(|c| c.case.to_string());
            let text = format!(
                "{m}\nbi-sequence: {a}\nσ₁ = {s1}\ncase: {}\ngls: {} ({})\n",
                case.as_deref().unwrap_or("not minimal unbalanced"),
                g.value,
                g.method
            );
            Ok(Outcome::ok(
                text,
                json!({ "family": kind, "k": k, "l": l, "multisegment": m, "biseq": a, "sigma1": s1.to_string(),
                        "minimal_unbalanced": class, "gls": { "value": g.value, "method": g.method, "trials": g.trials } }),
            ))
        }
    }
}

fn criteria_report(cli: &Cli, m: &Multisegment) -> Result<Outcome> {
    let (a, sigma) = factorize(m);
    let v = decide_with(m, &gls_options(cli))?;
    let g = gls_check_with(m, &gls_options(cli));
    let data = link_data(m, None);
    let forbidden = has_forbidden_type(m).ok().flatten();
    let class = if m.is_regular() { classify_minimal_unbalanced(m)? } else { None };
    let kl = kl_value_at_one(m)?;
    let pairs = irreducible_pairs(m);
    let text = format!(
        "{m}\nbi-sequence: {a}\nσ = {sigma}\ncomplexity: {}\ndepth: {}\n#X = {}, #X̃ = {}\nirreducible pairs: {}\nforbidden type: {}\nP(1) = {kl}\ngls: {} ({})\nminimal unbalanced: {}\nverdict agree: {}\n",
        complexity(m),
        depth(m),
        data.x.len(),
        data.xt.len(),
        pairs.len(),
        forbidden.as_ref().map_or("none".to_string(), |f| format!("{} at {:?}", f.kind, f.indices)),
        g.value,
        g.method,
        class.map_or("no".to_string(), |c| c.case.to_string()),
        v.agree
    );
    let json = json!({
        "input": m,
        "factorization": { "biseq": a, "sigma": sigma.to_string() },
        "complexity": complexity(m),
        "depth": depth(m),
        "x": data.x,
        "x_tilde": data.xt,
        "irreducible_pairs": pairs,
        "forbidden_type": forbidden,
        "kl_at_one": kl,
        "gls": g,
        "minimal_unbalanced": class,
        "verdict": v,
    });
    Ok(Outcome::ok(text, json))
}

fn sweep_text(r: &SweepReport) -> String {
    let mut s = format!("sweep {} k={} seed={}: {} instances\n", r.sweep, r.k, r.seed, r.instances);
    for (key, n) in &r.counts {
        s.push_str(&format!("  {key}: {n}\n"));
    }
    s.push_str(&format!("  rank without strong matching: {}\n", r.rank_only.len()));
    for v in &r.violations {
        s.push_str(&format!("  violation #{} {}: {}\n", v.index, v.input, v.detail));
    }
    s.push_str(if r.passed() { "no violations\n" } else { "VIOLATIONS FOUND\n" });
    s
}

fn with_cache<T>(path: Option<&Path>, n: usize, f: impl FnOnce() -> Result<T>) -> Result<T> {
    let Some(path) = path else { return f() };
    let engine = msq_klpoly::engine(n)?;
    if path.exists() {
        let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
        engine.load(&mut BufReader::new(file))?;
    }
    let out = f()?;
    let file = File::create(path).with_context(|| format!("writing {}", path.display()))?;
    let mut w = BufWriter::new(file);
    engine.save(&mut w)?;
    w.flush()?;
    Ok(out)
}
