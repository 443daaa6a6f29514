//! `rankmod`: counting sweeps, code construction, verification, bound
//! tables, capacity surfaces and distance queries.

mod table;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rankmod::constructions::{
    build_casym, build_cr, build_csym, cardinality_csym, enumerate_d, for_each_cr_representation,
    lower_bound_casym,
};
use rankmod::count::{factorial, rational_to_f64};
use rankmod::ecc::{
    capacity_single_asym, capacity_single_sym, capacity_surface_asym, capacity_surface_sym,
    constrained_universe, greedy_code, gv_lower_bound, gv_manhattan_lower_bound,
    sphere_packing_bound, verify_min_distance,
};
use rankmod::enumeration::{capacity_ratio, count_constrained, upper_bound_a_log};
use rankmod::metrics::{ball_size_inversion, check_sandwich, inversion_distance, kendall_tau};
use rankmod::text::{code_to_text, ecc_to_text, parse_code};
use rankmod::{Budget, Constraint, ConstraintKind, Error, Metric, Permutation};
use table::{Cell, Format, Table};

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "rankmod", version, about = "Constrained permutation codes for rank modulation")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Table format.
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: Format,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Largest n for exhaustive walks over S_n.
    #[arg(long, global = true, env = "RANKMOD_BUDGET_N", default_value_t = Budget::DEFAULT_ENUMERATION_N)]
    budget_n: usize,
    /// Largest n for scans over all vectors of [n]^n.
    #[arg(long, global = true, default_value_t = Budget::DEFAULT_VECTOR_SCAN_N)]
    vector_budget_n: usize,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

/// A single value `a` or an inclusive range `a:b`.
#[derive(Clone, Copy, Debug)]
struct Span {
    low: u64,
    high: u64,
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<u64>().map_err(|_| format!("not an integer: {t:?}"));
        let (low, high) = match s.split_once(':') {
            Some((a, b)) => (parse(a)?, parse(b)?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if low > high {
            return Err(format!("empty range {s}"));
        }
        Ok(Span { low, high })
    }
}

impl Span {
    fn iter(self) -> impl Iterator<Item = u64> {
        self.low..=self.high
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exact sizes of constrained sets.
    Count {
        /// Constraint name, or `all`.
        #[arg(long, default_value = "two_neighbor")]
        kind: String,
        #[arg(long)]
        n: Span,
        /// Defaults to 1:n-1.
        #[arg(long)]
        k: Option<Span>,
    },
    /// Build a code and write it in the code file format.
    Construct {
        #[command(subcommand)]
        which: Construction,
    },
    /// Check a code file against its declared constraint and distance.
    Verify {
        file: PathBuf,
        /// Minimum distance to check, overriding the header.
        #[arg(long)]
        d: Option<u64>,
        #[arg(long)]
        metric: Option<Metric>,
    },
    /// Upper bound, GV bounds, greedy size and sphere packing per (n, k, d).
    Bounds {
        #[arg(long)]
        n: Span,
        /// Defaults to 1:n-1.
        #[arg(long)]
        k: Option<Span>,
        #[arg(long, default_value = "1:3")]
        d: Span,
    },
    /// Closed-form capacity surfaces.
    Capacity {
        #[arg(long)]
        eps1: Option<f64>,
        #[arg(long)]
        eps2: Option<f64>,
        /// Points per axis when no explicit point is given.
        #[arg(long, default_value_t = 11)]
        grid: usize,
    },
    /// Inversion ball sizes.
    Balls {
        #[arg(long)]
        n: Span,
        /// Defaults to 0:n(n-1)/2.
        #[arg(long)]
        r: Option<Span>,
    },
    /// Distances between two permutations.
    Distance {
        #[arg(long)]
        sigma: Permutation,
        #[arg(long)]
        pi: Permutation,
    },
    /// Checks ½·d_M ≤ d_I ≤ d_M on random pairs.
    SampleSandwich {
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
    },
    /// Size of the paired multi-permutation set D_{ell,m}.
    Paired {
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        m: usize,
    },
}

#[derive(Subcommand)]
enum Construction {
    /// Block-pair code for odd k with (k+1) | n.
    Csym {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
    },
    /// Union of the run/partition codes C_r for 1 ≤ r ≤ n/2.
    Casym {
        #[arg(long)]
        n: usize,
    },
    /// A single run/partition code C_r.
    Cr {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    /// Lexicographic greedy code with minimum distance d.
    Greedy {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        d: u64,
        #[arg(long, default_value = "two_neighbor")]
        kind: ConstraintKind,
        #[arg(long, default_value = "inversion")]
        metric: Metric,
    },
}

enum Failure {
    Core(Error),
    Usage(String),
    Io(io::Error),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = Result<(), Failure>;

struct Ctx {
    format: Format,
    out: Option<PathBuf>,
    budget: Budget,
    seed: u64,
}

impl Ctx {
    fn emit(&self, text: &str) -> io::Result<()> {
        match &self.out {
            Some(path) => fs::write(path, text),
            None => io::stdout().lock().write_all(text.as_bytes()),
        }
    }

    fn table(&self, t: &Table) -> io::Result<()> {
        self.emit(&t.render(self.format))
    }
}

fn to_usize(v: u64) -> usize {
    usize::try_from(v).unwrap_or(usize::MAX)
}

fn to_u32(v: u64, name: &str) -> Result<u32, Failure> {
    u32::try_from(v).map_err(|_| Failure::Usage(format!("{name}={v} is too large")))
}

fn default_k(n: u64) -> Span {
    Span {
        low: 1,
        high: n.saturating_sub(1).max(1),
    }
}

fn kinds(name: &str) -> Result<Vec<ConstraintKind>, Failure> {
    if name == "all" {
        return Ok(ConstraintKind::ALL.to_vec());
    }
    Ok(vec![name.parse()?])
}

fn cmd_count(ctx: &Ctx, kind: &str, n: Span, k: Option<Span>) -> Outcome {
    let kinds = kinds(kind)?;
    let mut t = Table::new(&["n", "kind", "k", "count", "log2_count", "capacity_ratio"]);
    for n in n.iter() {
        let nn = to_usize(n);
        for &kind in &kinds {
            for k in k.unwrap_or_else(|| default_k(n)).iter() {
                let c = Constraint::new(kind, to_u32(k, "k")?)?;
                let count = count_constrained(nn, c, &ctx.budget)?;
                let log = count.log2()?.value();
                let ratio = capacity_ratio(&count, nn).ok();
                t.push(vec![n.into(), kind.name().into(), k.into(), count.into(), log.into(), ratio.into()]);
            }
        }
    }
    Ok(ctx.table(&t)?)
}

fn cmd_construct(ctx: &Ctx, which: Construction) -> Outcome {
    let (text, summary) = match which {
        Construction::Csym { n, k } => {
            let code = build_csym(n, k)?;
            let formula = cardinality_csym(n, k)?;
            let s = format!("size={} formula={formula}", code.len());
            (code_to_text(&code), s)
        }
        Construction::Casym { n } => {
            let code = build_casym(n)?;
            let bound = lower_bound_casym(n)?;
            let s = format!("size={} lower_bound={}", code.len(), rational_to_f64(&bound));
            (code_to_text(&code), s)
        }
        Construction::Cr { n, r } => {
            let code = build_cr(n, r)?;
            let mut reps = 0u64;
            for_each_cr_representation(n, r, |_, _, _| reps += 1)?;
            let s = format!("size={} representations={reps}", code.len());
            (code_to_text(&code), s)
        }
        Construction::Greedy { n, k, d, kind, metric } => {
            let c = Constraint::new(kind, k)?;
            let universe = constrained_universe(n, c, &ctx.budget)?;
            let size = universe.len();
            let code = greedy_code(universe, c, d, metric)?;
            let mut s = format!("size={} universe={size}", code.len());
            if kind == ConstraintKind::TwoNeighbor && metric == Metric::Inversion {
                let gv = gv_lower_bound(n, k, d, &ctx.budget)?;
                s.push_str(&format!(" gv_lower={}", rational_to_f64(&gv)));
            }
            (ecc_to_text(&code), s)
        }
    };
    ctx.emit(&text)?;
    eprintln!("{summary}");
    Ok(())
}

fn cmd_verify(ctx: &Ctx, file: &PathBuf, d: Option<u64>, metric: Option<Metric>) -> Outcome {
    let text = fs::read_to_string(file)?;
    let parsed = parse_code(&text)?;
    let code = &parsed.code;
    let mut report = String::new();
    let mut failed = false;
    let violations = code.violations();
    report.push_str(&format!(
        "constraint {} members={} violations={}\n",
        code.constraint(),
        code.len(),
        violations.len()
    ));
    for p in violations.iter().take(10) {
        report.push_str(&format!("violation: {p}\n"));
    }
    failed |= !violations.is_empty();
    let distance = match (d, parsed.ecc) {
        (Some(d), header) => Some((d, metric.or(header.map(|h| h.1)).unwrap_or(Metric::Inversion))),
        (None, Some((d, m))) => Some((d, metric.unwrap_or(m))),
        (None, None) => None,
    };
    if let Some((d, metric)) = distance {
        let ecc = rankmod::EccCode::new(code.clone(), d, metric)?;
        match verify_min_distance(&ecc) {
            None => report.push_str(&format!("min_distance {metric} >= {d}: ok\n")),
            Some(w) => {
                failed = true;
                report.push_str(&format!(
                    "min_distance {metric} >= {d}: FAIL ({}) and ({}) at distance {}\n",
                    w.first, w.second, w.distance
                ));
            }
        }
    }
    report.push_str(if failed { "result: FAIL\n" } else { "result: ok\n" });
    ctx.emit(&report)?;
    if failed {
        return Err(Failure::Verify("code failed verification".into()));
    }
    Ok(())
}

fn cmd_bounds(ctx: &Ctx, n: Span, k: Option<Span>, d: Span) -> Outcome {
    let mut t = Table::new(&[
        "n",
        "k",
        "d",
        "log2_upper_A",
        "gv_lower",
        "greedy_size",
        "sphere_packing_upper",
        "gv_manhattan_lower",
    ]);
    if d.low == 0 {
        return Err(Failure::Usage("d must be at least 1".into()));
    }
    for n in n.iter() {
        let nn = to_usize(n);
        for k in k.unwrap_or_else(|| default_k(n)).iter() {
            let k = to_u32(k, "k")?;
            let c = Constraint::two_neighbor(k)?;
            let upper = upper_bound_a_log(nn, k).ok().map(|l| l.value());
            let universe = constrained_universe(nn, c, &ctx.budget)?;
            let scan = ctx.budget.check_vector_scan(nn).is_ok();
            for d in d.iter() {
                let gv = gv_lower_bound(nn, k, d, &ctx.budget)?;
                let greedy = greedy_code(universe.iter().cloned(), c, d, Metric::Inversion)?;
                let (sp, gvm) = if scan {
                    let sp = sphere_packing_bound(nn, k, d, &ctx.budget)?;
                    let gvm = gv_manhattan_lower_bound(nn, k, d, &ctx.budget)?;
                    (Some(rational_to_f64(&sp.value)), Some(rational_to_f64(&gvm.value)))
                } else {
                    (None, None)
                };
                t.push(vec![
                    n.into(),
                    u64::from(k).into(),
                    d.into(),
                    upper.into(),
                    rational_to_f64(&gv).into(),
                    greedy.len().into(),
                    sp.into(),
                    gvm.into(),
                ]);
            }
        }
    }
    Ok(ctx.table(&t)?)
}

fn grid(points: usize, high: f64) -> Vec<f64> {
    if points <= 1 {
        return vec![0.0];
    }
    (0..points).map(|i| high * i as f64 / (points - 1) as f64).collect()
}

fn cmd_capacity(ctx: &Ctx, eps1: Option<f64>, eps2: Option<f64>, points: usize) -> Outcome {
    let mut t = Table::new(&["surface", "eps1", "eps2", "value"]);
    let e1s = eps1.map_or_else(|| grid(points, 1.0), |e| vec![e]);
    let e2s = match (eps1, eps2) {
        (_, Some(e)) => vec![e],
        (Some(_), None) => Vec::new(),
        (None, None) => grid(points, 2.0),
    };
    for &e1 in &e1s {
        t.push(vec!["sym_single".into(), e1.into(), Cell::Empty, capacity_single_sym(e1)?.into()]);
        t.push(vec!["asym_single".into(), e1.into(), Cell::Empty, capacity_single_asym(e1)?.into()]);
    }
    for &e1 in &e1s {
        for &e2 in &e2s {
            let s = capacity_surface_sym(e1, e2)?;
            t.push(vec!["sym".into(), e1.into(), e2.into(), s.value.into()]);
            let a = capacity_surface_asym(e1, e2)?;
            t.push(vec!["asym".into(), e1.into(), e2.into(), a.value.into()]);
        }
    }
    Ok(ctx.table(&t)?)
}

fn cmd_balls(ctx: &Ctx, n: Span, r: Option<Span>) -> Outcome {
    let mut t = Table::new(&["n", "r", "b_I", "log2_b_I"]);
    for n in n.iter() {
        let max = n * n.saturating_sub(1) / 2;
        for r in r.unwrap_or(Span { low: 0, high: max }).iter() {
            let b = ball_size_inversion(to_usize(n), r)?;
            let log = b.log2()?.value();
            t.push(vec![n.into(), r.into(), b.into(), log.into()]);
        }
    }
    Ok(ctx.table(&t)?)
}

fn cmd_distance(ctx: &Ctx, sigma: &Permutation, pi: &Permutation) -> Outcome {
    let mut t = Table::new(&["sigma", "pi", "kendall", "inversion", "manhattan", "sandwich_holds"]);
    let s = check_sandwich(sigma, pi)?;
    t.push(vec![
        sigma.to_string().into(),
        pi.to_string().into(),
        kendall_tau(sigma, pi)?.into(),
        inversion_distance(sigma, pi)?.into(),
        s.manhattan.into(),
        s.holds.to_string().into(),
    ]);
    Ok(ctx.table(&t)?)
}

fn cmd_sample_sandwich(ctx: &Ctx, n: usize, samples: usize) -> Outcome {
    if n == 0 {
        return Err(Failure::Usage("n must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut a: Vec<u32> = (1..=n as u32).collect();
    let mut b = a.clone();
    let mut violations = 0u64;
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for _ in 0..samples {
        a.shuffle(&mut rng);
        b.shuffle(&mut rng);
        let s = check_sandwich(&Permutation::new(a.clone())?, &Permutation::new(b.clone())?)?;
        violations += u64::from(!s.holds);
        if s.manhattan > 0 {
            let ratio = s.inversion as f64 / s.manhattan as f64;
            lo = lo.min(ratio);
            hi = hi.max(ratio);
        }
    }
    let mut t = Table::new(&["n", "samples", "seed", "violations", "min_ratio", "max_ratio"]);
    let finite = |x: f64| x.is_finite().then_some(x);
    t.push(vec![
        n.into(),
        samples.into(),
        ctx.seed.into(),
        violations.into(),
        finite(lo).into(),
        finite(if samples == 0 { f64::NAN } else { hi }).into(),
    ]);
    ctx.table(&t)?;
    if violations > 0 {
        return Err(Failure::Verify(format!("{violations} sampled pairs broke the sandwich")));
    }
    Ok(())
}

fn cmd_paired(ctx: &Ctx, ell: usize, m: usize) -> Outcome {
    let listed = enumerate_d(ell, m)?.count();
    let half = (m / 2) as u64;
    let formula = factorial(ell as u64 * half) / factorial(half).pow(ell as u32);
    let mut t = Table::new(&["ell", "m", "count", "formula"]);
    t.push(vec![ell.into(), m.into(), listed.into(), rankmod::BigCount::new(formula).into()]);
    Ok(ctx.table(&t)?)
}

fn run(cli: Cli) -> Outcome {
    let g = cli.global;
    let ctx = Ctx {
        format: g.format,
        out: g.out,
        budget: Budget::default()
            .with_enumeration_n(g.budget_n)
            .with_vector_scan_n(g.vector_budget_n),
        seed: g.seed,
    };
    match cli.command {
        Command::Count { kind, n, k } => cmd_count(&ctx, &kind, n, k),
        Command::Construct { which } => cmd_construct(&ctx, which),
        Command::Verify { file, d, metric } => cmd_verify(&ctx, &file, d, metric),
        Command::Bounds { n, k, d } => cmd_bounds(&ctx, n, k, d),
        Command::Capacity { eps1, eps2, grid } => cmd_capacity(&ctx, eps1, eps2, grid),
        Command::Balls { n, r } => cmd_balls(&ctx, n, r),
        Command::Distance { sigma, pi } => cmd_distance(&ctx, &sigma, &pi),
        Command::SampleSandwich { n, samples } => cmd_sample_sandwich(&ctx, n, samples),
        Command::Paired { ell, m } => cmd_paired(&ctx, ell, m),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Core(e @ Error::BudgetExceeded { .. }) => (EXIT_BUDGET, e.to_string()),
                Failure::Core(e) => (EXIT_USAGE, e.to_string()),
                Failure::Usage(m) => (EXIT_USAGE, m),
                Failure::Io(e) => (EXIT_USAGE, e.to_string()),
                Failure::Verify(m) => (EXIT_VERIFY, m),
            };
            eprintln!("rankmod: {msg}");
            ExitCode::from(code)
        }
    }
}
