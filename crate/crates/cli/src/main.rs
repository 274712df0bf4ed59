//! `cdom`: build, count, analyze and enumerate Condorcet domains.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use condorcet_core::analyze::{classify, AnalysisReport, Guarded};
use condorcet_core::dyck::{dyck_words, mu, mu_inverse, part_table};
use condorcet_core::enumerate::{enumerate_maximal_condorcet_with, Census};
use condorcet_core::graph::{build_betweenness_graph, export_dot, export_edge_csv, median_check};
use condorcet_core::harness::{run_scan, run_verify, scan_csv, ScanEngine, Suite, VerifyOptions, DEFAULT_SEED};
use condorcet_core::sizes::size_of;
use condorcet_core::{
    count_domain, fishburn_scheme, generate_domain, named_set, read_scheme, set_alternating_scheme, AlternativeSet,
    Domain, Error, FishburnParity, NamedSetKind, Scheme,
};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Default cap on `n` for domain generation.
const GENERATE_CAP: usize = 24;

#[derive(Parser)]
#[command(name = "cdom", version, about = "Condorcet domains from never-condition schemes")]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    rng_seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum NamedArg {
    Odd,
    Even,
    TruncatedEven,
}

impl From<NamedArg> for NamedSetKind {
    fn from(a: NamedArg) -> Self {
        match a {
            NamedArg::Odd => NamedSetKind::Odd,
            NamedArg::Even => NamedSetKind::Even,
            NamedArg::TruncatedEven => NamedSetKind::TruncatedEven,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Enumerate,
    Recurse,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    PaperTables,
    Properties,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the domain of a scheme.
    #[command(group(ArgGroup::new("scheme").required(true).args(["set", "named", "scheme_file", "fishburn"])))]
    Generate {
        #[arg(long)]
        n: Option<usize>,
        /// Comma-separated generating set, e.g. 2,3,5.
        #[arg(long)]
        set: Option<String>,
        #[arg(long, value_enum)]
        named: Option<NamedArg>,
        #[arg(long)]
        scheme_file: Option<PathBuf>,
        /// Fishburn's scheme with never-bottom on even (default) or odd midpoints.
        #[arg(long, num_args = 0..=1, default_missing_value = "even")]
        fishburn: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the size only, without storing the orders.
        #[arg(long)]
        count_only: bool,
        /// Raise the cap on n.
        #[arg(long, default_value_t = GENERATE_CAP)]
        max_n: usize,
    },
    /// Report the structural properties of a domain file.
    Analyze {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Size of a set-alternating domain via the recursion.
    #[command(group(ArgGroup::new("input").required(true).args(["set", "batch"])))]
    Size {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        set: Option<String>,
        /// CSV of `n,set` rows (set space separated); prints `n,set,size`.
        #[arg(long)]
        batch: Option<PathBuf>,
    },
    /// Domain size of every subset of {2..n-1}.
    Scan {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        engine: EngineArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate every maximal Condorcet domain on n alternatives.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
        /// Permit n = 6, which takes a long time.
        #[arg(long)]
        long: bool,
    },
    /// Export the betweenness graph of a domain.
    Graph {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        check_median: bool,
        /// Write an edge list instead of DOT.
        #[arg(long)]
        csv: bool,
    },
    /// Part table of the even scheme's domain.
    Dyck {
        #[arg(long)]
        n: usize,
        /// Also check the Dyck-word bijection on every part.
        #[arg(long)]
        verify: bool,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        /// Flip one never condition to confirm that the checks notice.
        #[arg(long)]
        mutate: bool,
        /// Extend the size table check up to 20 alternatives.
        #[arg(long)]
        stretch: bool,
    },
    /// Monte-Carlo sizes for random sets with inclusion probability p.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
}

/// A check ran to completion and found a discrepancy (exit status 1).
#[derive(Debug)]
struct VerificationFailed;

impl std::fmt::Display for VerificationFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("verification failed")
    }
}

impl std::error::Error for VerificationFailed {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<VerificationFailed>().is_some() {
        return 1;
    }
    for cause in e.chain() {
        if let Some(Error::TooLarge { .. }) = cause.downcast_ref::<Error>() {
            return 3;
        }
    }
    2
}

fn run(cli: Cli) -> Result<()> {
    let seed = cli.rng_seed;
    match cli.command {
        Command::Generate { n, set, named, scheme_file, fishburn, out, count_only, max_n } => {
            let scheme = build_scheme(n, set, named, scheme_file, fishburn)?;
            if scheme.n() > max_n {
                return Err(Error::TooLarge { what: "generate", n: scheme.n(), limit: max_n }.into());
            }
            if count_only {
                println!("{}", count_domain(&scheme)?);
                return Ok(());
            }
            let domain = generate_domain(&scheme)?;
            emit(out.as_deref(), &domain.to_text())?;
            if out.is_some() {
                println!("{} orders", domain.len());
            }
        }
        Command::Analyze { domain, json } => {
            let d = load_domain(&domain)?;
            let report = classify(&d);
            print!("{}", if json { report_json(&report) } else { report_text(&report) });
        }
        Command::Size { n, set, batch } => match batch {
            Some(path) => {
                let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
                println!("n,set,size");
                for (i, line) in text.lines().enumerate() {
                    let line = line.trim();
                    if line.is_empty() || line.starts_with('#') || (i == 0 && line.starts_with("n,")) {
                        continue;
                    }
                    let (n_text, set_text) = line.split_once(',').unwrap_or((line, ""));
                    let n: usize = n_text.trim().parse().with_context(|| format!("line {}: bad n", i + 1))?;
                    let set = parse_set(n, &set_text.replace(' ', ","))?;
                    println!("{n},{},{}", set_text.trim(), size_of(&set, n)?);
                }
            }
            None => {
                let n = n.context("--n is required with --set")?;
                let set = parse_set(n, set.as_deref().unwrap_or(""))?;
                println!("{}", size_of(&set, n)?);
            }
        },
        Command::Scan { n, engine, out } => {
            let engine = match engine {
                EngineArg::Enumerate => ScanEngine::Enumerate,
                EngineArg::Recurse => ScanEngine::Recurse,
            };
            emit(out.as_deref(), &scan_csv(&run_scan(n, engine)?))?;
        }
        Command::Enumerate { n, out, long } => {
            let domains = enumerate_maximal_condorcet_with(n, long)?;
            fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
            let width = domains.len().to_string().len();
            for (i, d) in domains.iter().enumerate() {
                fs::write(out.join(format!("domain_{:0width$}.txt", i + 1)), d.to_text())?;
            }
            let census = Census::new(&domains)?;
            fs::write(out.join("census.csv"), census.to_csv())?;
            println!("{} maximal Condorcet domains in {} isomorphism classes", domains.len(), census.classes.len());
        }
        Command::Graph { domain, out, check_median, csv } => {
            let d = load_domain(&domain)?;
            let g = build_betweenness_graph(&d)?;
            emit(out.as_deref(), &if csv { export_edge_csv(&g) } else { export_dot(&g) })?;
            if check_median {
                let verdict = median_check(&g)?;
                match verdict.reason(&g) {
                    None => println!("median graph: yes ({} vertices, {} edges)", g.vertex_count(), g.edge_count()),
                    Some(why) => {
                        println!("median graph: no ({why})");
                        return Err(VerificationFailed.into());
                    }
                }
            }
        }
        Command::Dyck { n, verify } => {
            let d = generate_domain(&set_alternating_scheme(&named_set(NamedSetKind::Even, n)?, n)?)?;
            let rows = part_table(&d)?;
            println!("k,part_size,catalan_times_a");
            let mut ok = true;
            for r in &rows {
                println!("{},{},{}", r.k, r.part_size, r.catalan_times_a);
                ok &= BigUint::from(r.part_size) == r.catalan_times_a;
            }
            if verify {
                for k in 1..=n / 2 {
                    let round_trip = dyck_words(k + 1)
                        .iter()
                        .all(|w| mu_inverse(w).and_then(|p| mu(&p, k)).map(|back| &back == w).unwrap_or(false));
                    eprintln!("bijection k={k}: {}", if round_trip { "ok" } else { "FAILED" });
                    ok &= round_trip;
                }
                if !ok {
                    return Err(VerificationFailed.into());
                }
            }
        }
        Command::Verify { suite, mutate, stretch } => {
            let suite = match suite {
                SuiteArg::PaperTables => Suite::PaperTables,
                SuiteArg::Properties => Suite::Properties,
            };
            let report = run_verify(suite, VerifyOptions { seed, mutate, stretch });
            for r in &report.results {
                eprintln!("{}", r.line());
            }
            print!("{}", report.to_key_value());
            if !report.passed() {
                let failed: Vec<String> =
                    report.results.iter().filter(|r| !r.passed).map(|r| format!("{} ({})", r.id, r.name)).collect();
                eprintln!("failed criteria: {}", failed.join(", "));
                return Err(VerificationFailed.into());
            }
        }
        Command::Sample { n, p, trials } => {
            if !(0.0..=1.0).contains(&p) || trials == 0 {
                bail!("p must lie in [0, 1] and trials must be positive");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut sizes = Vec::with_capacity(trials);
            for _ in 0..trials {
                let set = AlternativeSet::from_elements(n, (2..n).filter(|_| rng.gen_bool(p)))?;
                let size = size_of(&set, n)?;
                sizes.push(size.to_f64().unwrap_or(f64::INFINITY));
            }
            sizes.sort_by(f64::total_cmp);
            let mean = sizes.iter().sum::<f64>() / trials as f64;
            let median = if trials % 2 == 1 {
                sizes[trials / 2]
            } else {
                (sizes[trials / 2 - 1] + sizes[trials / 2]) / 2.0
            };
            println!("n={n} p={p} trials={trials} mean={mean:.2} median={median:.1} min={} max={}", sizes[0], sizes[trials - 1]);
        }
    }
    Ok(())
}

fn parse_set(n: usize, text: &str) -> Result<AlternativeSet> {
    Ok(AlternativeSet::parse_list(n, text)?)
}

fn build_scheme(
    n: Option<usize>,
    set: Option<String>,
    named: Option<NamedArg>,
    scheme_file: Option<PathBuf>,
    fishburn: Option<String>,
) -> Result<Scheme> {
    if let Some(path) = scheme_file {
        let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
        return Ok(read_scheme(&text)?);
    }
    let n = n.context("--n is required unless --scheme-file is given")?;
    if let Some(list) = set {
        return Ok(set_alternating_scheme(&parse_set(n, &list)?, n)?);
    }
    if let Some(kind) = named {
        return Ok(set_alternating_scheme(&named_set(kind.into(), n)?, n)?);
    }
    let parity: FishburnParity = fishburn.as_deref().unwrap_or("even").parse()?;
    Ok(fishburn_scheme(n, parity)?)
}

fn load_domain(path: &Path) -> Result<Domain> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Domain::from_text(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn guarded<T>(g: &Guarded<T>, show: impl Fn(&T) -> String) -> String {
    match g {
        Guarded::Value(v) => show(v),
        Guarded::Skipped(why) => format!("skipped ({why})"),
    }
}

fn bipartition_text(b: &Option<AlternativeSet>) -> String {
    b.map_or_else(|| "none".to_string(), |a| a.to_string())
}

fn report_text(r: &AnalysisReport) -> String {
    let mut out = format!("n: {}\nsize: {}\n", r.n, r.size);
    let flags = [
        ("condorcet", r.is_condorcet),
        ("copious", r.is_copious),
        ("ample", r.is_ample),
        ("peak_pit", r.is_peak_pit),
        ("arrow_single_peaked", r.is_arrow_single_peaked),
        ("dual_arrow_single_peaked", r.is_dual_arrow),
        ("connected", r.is_connected),
        ("maximal_width", r.has_maximal_width),
        ("unitary", r.is_unitary),
    ];
    for (name, v) in flags {
        out += &format!("{name}: {v}\n");
    }
    out += &format!("maximal: {}\n", guarded(&r.is_maximal, |v| v.to_string()));
    out += &format!("bipartition: {}\n", guarded(&r.bipartition, bipartition_text));
    out += &format!(
        "midpoint_bipartition: {}\n",
        guarded(&r.midpoint_bipartition, |m| m
            .as_ref()
            .map_or_else(|| "none".to_string(), |(axis, a)| format!("axis {axis} set {a}")))
    );
    for (t, c) in &r.conditions {
        let [i, j, k] = t.elements();
        out += &format!("conditions {i} {j} {k}: {c}\n");
    }
    out
}

fn report_json(r: &AnalysisReport) -> String {
    let skipped = |g: &dyn Fn() -> Option<serde_json::Value>| g().unwrap_or(serde_json::Value::Null);
    let value = serde_json::json!({
        "n": r.n,
        "size": r.size,
        "is_condorcet": r.is_condorcet,
        "is_copious": r.is_copious,
        "is_ample": r.is_ample,
        "is_peak_pit": r.is_peak_pit,
        "is_arrow_single_peaked": r.is_arrow_single_peaked,
        "is_dual_arrow_single_peaked": r.is_dual_arrow,
        "is_connected": r.is_connected,
        "is_maximal": skipped(&|| r.is_maximal.value().map(|v| (*v).into())),
        "has_maximal_width": r.has_maximal_width,
        "is_unitary": r.is_unitary,
        "bipartition": skipped(&|| r.bipartition.value().map(|b| b.map(|a| a.to_vec()).into())),
        "midpoint_bipartition": skipped(&|| r.midpoint_bipartition.value().map(|m| {
            m.as_ref()
                .map(|(axis, a)| serde_json::json!({ "axis": axis.to_string(), "set": a.to_vec() }))
                .unwrap_or(serde_json::Value::Null)
        })),
        "conditions": r.conditions.iter().map(|(t, c)| serde_json::json!({
            "triple": t.elements(),
            "conditions": c.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    });
    format!("{}\n", serde_json::to_string_pretty(&value).expect("json values serialize"))
}
