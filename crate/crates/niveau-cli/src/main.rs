//! `niveau` — batch driver for the niveau-set experiments.
//!
//! Every run produces one JSON envelope: a schema version, the fully
//! resolved `RunConfig` (re-executable via `--config`), a timestamp, the
//! wall-clock, and the command's results. Randomized commands either take a
//! seed or generate one and record it, so any emitted report can be
//! reproduced byte for byte (timestamps aside).
//!
//! Exit codes: 0 when everything proved or completed, 1 when any check is
//! REFUTED, 2 when a search was cut short (INCONCLUSIVE with an exhausted
//! budget), 3 for usage or configuration errors. A clean sampled run reports
//! INCONCLUSIVE verdicts by design — sampling cannot prove — and still exits
//! 0 provided every stage ran to completion.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use anyhow::{bail, ensure, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use niveau_core::construct::{
    choose_scales, density_progression, lemma_suite, params_with_scales, rational_to_decimal,
    run_pipeline, Mode, PipelineOptions,
};
use niveau_core::explore::{probe_odd_prime, TranslateRange};
use niveau_core::sets::materialize;
use niveau_core::verify::{chromatic_exceeds, verify_lovasz, verify_poincare, CayleyGraph};
use niveau_core::{
    Budget, HammingBallSpec, NiveauSpec, RandomStream, SetPredicate, Status, Witness,
};

/// Version of the report envelope written around every result.
const SCHEMA_VERSION: &str = "niveau-cli/1";

/// Environment variable supplying a default report directory.
const OUT_DIR_ENV: &str = "NIVEAU_OUT_DIR";

#[derive(Parser)]
#[command(
    name = "niveau",
    version,
    about = "Construct, count, and verify niveau-set recurrence witnesses",
    after_help = "Reports are JSON envelopes on stdout; pass --out DIR (or set \
                  NIVEAU_OUT_DIR) to also persist them. Re-run any report with \
                  `niveau --config report.json`."
)]
struct Cli {
    /// Re-execute a persisted run configuration (a previous report, or just
    /// its `config` object); replaces the subcommand.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Directory to write the JSON report into (default: $NIVEAU_OUT_DIR,
    /// else stdout only).
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Worker threads for the parallel stages (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    /// Exhaustive whenever the ambient group fits the enumeration cap.
    Auto,
    Exhaustive,
    Sampled,
}

#[derive(Subcommand)]
enum Command {
    /// Run the exhaustive small-scale check battery.
    Lemmas {
        /// Largest ambient scale enumerated (2..=4).
        #[arg(long, default_value_t = 3)]
        n_cap: u32,
    },
    /// Exact cardinality of a niveau set; prints the count.
    Count {
        /// Canonical spec text, e.g. "p=2;i=1;chain=(2,1)".
        #[arg(long)]
        spec: String,
    },
    /// Exact density of one spec, or — with --margin — the strict density
    /// progression of single-level sets across a scale range.
    Density {
        #[arg(long, conflicts_with = "margin")]
        spec: Option<String>,
        /// Fixed margin whose single-level densities are checked to increase
        /// strictly over scales n_lo..=n_hi with the envelope gap to 1/2.
        #[arg(long)]
        margin: Option<u64>,
        #[arg(long, default_value_t = 3)]
        n_lo: u32,
        #[arg(long, default_value_t = 12)]
        n_hi: u32,
    },
    /// Run the witness construction pipeline for a slack and radius sequence.
    Construct {
        /// Slack below 1/2; a decimal ("0.1") or a fraction ("1/10").
        #[arg(long)]
        epsilon: String,
        /// Strictly increasing ball radii, one per level ("1,2").
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<u64>,
        /// Scale override; skips the greedy search ("5,20").
        #[arg(long, value_delimiter = ',')]
        scales: Option<Vec<u32>>,
        #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
        mode: ModeArg,
        /// Probe pairs per sampled stage.
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        /// RNG seed; generated and recorded when absent.
        #[arg(long)]
        seed: Option<u64>,
        /// Largest scale the greedy search may pick.
        #[arg(long, default_value_t = 26)]
        n_cap: u32,
        /// Group-order ceiling for exhaustive stages.
        #[arg(long, default_value_t = niveau_core::DEFAULT_ENUMERATION_CAP)]
        cap: u64,
        /// Also export the per-level densities as CSV.
        #[arg(long, value_name = "FILE")]
        csv: Option<PathBuf>,
    },
    /// Decide chromatic_number > colors for the Cayley graph of a ball.
    Chromatic {
        #[arg(long, default_value_t = 2)]
        p: u8,
        #[arg(long)]
        n: u32,
        /// Hamming radius of the connection ball.
        #[arg(long)]
        radius: u64,
        /// Ball center: "zero" or "ones".
        #[arg(long, default_value = "zero")]
        center: String,
        #[arg(long)]
        colors: u16,
        #[arg(long, default_value_t = Budget::default().max_nodes)]
        max_nodes: u64,
    },
    /// Kneser instance: chromatic_number(K(2r+k, r)) > k.
    Lovasz {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        k: u16,
        #[arg(long, default_value_t = Budget::default().max_nodes)]
        max_nodes: u64,
    },
    /// Ball recurrence instance: chromatic_number(Cay(U(n, 2k+2) \ 0)) > k.
    Poincare {
        #[arg(long, default_value_t = 2)]
        p: u8,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u16,
        /// Allow k >= n (probing beyond the stated hypothesis).
        #[arg(long)]
        relax: bool,
        #[arg(long, default_value_t = Budget::default().max_nodes)]
        max_nodes: u64,
    },
    /// Probe translates of a radius-k ball over an odd-prime group.
    Explore {
        #[arg(long)]
        p: u8,
        #[arg(long)]
        n: u32,
        /// Ball radius.
        #[arg(long)]
        k: u64,
        #[arg(long)]
        colors: u16,
        /// "all" or "sample:N".
        #[arg(long, default_value = "all")]
        translates: String,
        /// RNG seed; generated and recorded when absent.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = Budget::default().max_nodes)]
        max_nodes: u64,
        /// Also export the probe rows as CSV.
        #[arg(long, value_name = "FILE")]
        csv: Option<PathBuf>,
    },
}

/// The fully resolved, re-executable description of one run. Serialized
/// inside every report; `--config` reads one back (bare, or embedded in a
/// report) and re-runs it.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
enum RunConfig {
    Lemmas {
        n_cap: u32,
        out: Option<String>,
    },
    Count {
        spec: String,
        out: Option<String>,
    },
    Density {
        spec: Option<String>,
        margin: Option<u64>,
        n_lo: u32,
        n_hi: u32,
        out: Option<String>,
    },
    Construct {
        epsilon: String,
        k: Vec<u64>,
        scales: Option<Vec<u32>>,
        mode: String,
        trials: u64,
        seed: u64,
        n_cap: u32,
        cap: u64,
        out: Option<String>,
        csv: Option<String>,
    },
    Chromatic {
        p: u8,
        n: u32,
        radius: u64,
        center: String,
        colors: u16,
        max_nodes: u64,
        out: Option<String>,
    },
    Lovasz {
        r: u32,
        k: u16,
        max_nodes: u64,
        out: Option<String>,
    },
    Poincare {
        p: u8,
        n: u32,
        k: u16,
        relax: bool,
        max_nodes: u64,
        out: Option<String>,
    },
    Explore {
        p: u8,
        n: u32,
        k: u64,
        colors: u16,
        translates: String,
        seed: u64,
        max_nodes: u64,
        out: Option<String>,
        csv: Option<String>,
    },
}

impl RunConfig {
    fn name(&self) -> &'static str {
        match self {
            RunConfig::Lemmas { .. } => "lemmas",
            RunConfig::Count { .. } => "count",
            RunConfig::Density { .. } => "density",
            RunConfig::Construct { .. } => "construct",
            RunConfig::Chromatic { .. } => "chromatic",
            RunConfig::Lovasz { .. } => "lovasz",
            RunConfig::Poincare { .. } => "poincare",
            RunConfig::Explore { .. } => "explore",
        }
    }

    fn out_mut(&mut self) -> &mut Option<String> {
        match self {
            RunConfig::Lemmas { out, .. }
            | RunConfig::Count { out, .. }
            | RunConfig::Density { out, .. }
            | RunConfig::Construct { out, .. }
            | RunConfig::Chromatic { out, .. }
            | RunConfig::Lovasz { out, .. }
            | RunConfig::Poincare { out, .. }
            | RunConfig::Explore { out, .. } => out,
        }
    }

    fn out(&self) -> Option<&str> {
        match self {
            RunConfig::Lemmas { out, .. }
            | RunConfig::Count { out, .. }
            | RunConfig::Density { out, .. }
            | RunConfig::Construct { out, .. }
            | RunConfig::Chromatic { out, .. }
            | RunConfig::Lovasz { out, .. }
            | RunConfig::Poincare { out, .. }
            | RunConfig::Explore { out, .. } => out.as_deref(),
        }
    }
}

/// Fresh seed for runs that did not pin one; recorded in the config so the
/// run stays reproducible after the fact.
fn generate_seed() -> u64 {
    use std::hash::{BuildHasher, Hasher};
    std::collections::hash_map::RandomState::new().build_hasher().finish()
}

impl Command {
    fn into_config(self, out: Option<String>) -> RunConfig {
        match self {
            Command::Lemmas { n_cap } => RunConfig::Lemmas { n_cap, out },
            Command::Count { spec } => RunConfig::Count { spec, out },
            Command::Density { spec, margin, n_lo, n_hi } => {
                RunConfig::Density { spec, margin, n_lo, n_hi, out }
            }
            Command::Construct { epsilon, k, scales, mode, trials, seed, n_cap, cap, csv } => {
                RunConfig::Construct {
                    epsilon,
                    k,
                    scales,
                    mode: match mode {
                        ModeArg::Auto => "auto".into(),
                        ModeArg::Exhaustive => "exhaustive".into(),
                        ModeArg::Sampled => "sampled".into(),
                    },
                    trials,
                    seed: seed.unwrap_or_else(generate_seed),
                    n_cap,
                    cap,
                    out,
                    csv: csv.map(|p| p.display().to_string()),
                }
            }
            Command::Chromatic { p, n, radius, center, colors, max_nodes } => {
                RunConfig::Chromatic { p, n, radius, center, colors, max_nodes, out }
            }
            Command::Lovasz { r, k, max_nodes } => RunConfig::Lovasz { r, k, max_nodes, out },
            Command::Poincare { p, n, k, relax, max_nodes } => {
                RunConfig::Poincare { p, n, k, relax, max_nodes, out }
            }
            Command::Explore { p, n, k, colors, translates, seed, max_nodes, csv } => {
                RunConfig::Explore {
                    p,
                    n,
                    k,
                    colors,
                    translates,
                    seed: seed.unwrap_or_else(generate_seed),
                    max_nodes,
                    out,
                    csv: csv.map(|p| p.display().to_string()),
                }
            }
        }
    }
}

/// Report envelope: everything any command emits.
#[derive(Serialize)]
struct Envelope<'a> {
    schema_version: &'static str,
    config: &'a RunConfig,
    /// Unix seconds; volatile — excluded from reproducibility comparisons.
    generated_at: u64,
    /// Wall-clock milliseconds; volatile likewise.
    elapsed_ms: u64,
    results: Value,
}

/// Outcome of one executed command, before enveloping.
struct Execution {
    results: Value,
    /// `(status, search ran to completion)` per check, for the exit code.
    statuses: Vec<(Status, bool)>,
    /// Scalar printed instead of the envelope (count, density).
    stdout_line: Option<String>,
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            eprint!("{e}");
            return 3;
        }
    };
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: could not configure {threads} worker threads: {e}");
            return 3;
        }
    }
    let out_flag = cli.out.map(|p| p.display().to_string());
    let mut config = match (cli.config, cli.command) {
        (Some(path), None) => match load_config(&path) {
            Ok(config) => config,
            Err(e) => {
                eprintln!("error: {e:#}");
                return 3;
            }
        },
        (None, Some(command)) => {
            let out = out_flag.clone().or_else(|| std::env::var(OUT_DIR_ENV).ok());
            command.into_config(out)
        }
        (Some(_), Some(_)) => {
            eprintln!("error: --config replaces the subcommand; pass one or the other");
            return 3;
        }
        (None, None) => {
            eprintln!("error: a subcommand or --config is required (try --help)");
            return 3;
        }
    };
    // An explicit --out always wins, including over a loaded config.
    if out_flag.is_some() {
        *config.out_mut() = out_flag;
    }

    let started = Instant::now();
    let execution = match execute(&config) {
        Ok(execution) => execution,
        Err(e) => {
            eprintln!("error: {e:#}");
            return 3;
        }
    };
    let envelope = Envelope {
        schema_version: SCHEMA_VERSION,
        config: &config,
        generated_at: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        elapsed_ms: started.elapsed().as_millis() as u64,
        results: execution.results,
    };
    let text = match serde_json::to_string_pretty(&envelope) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("error: could not serialize the report: {e}");
            return 3;
        }
    };
    if let Some(dir) = config.out() {
        let path = Path::new(dir).join(format!("niveau-{}.json", config.name()));
        if let Err(e) = write_report(&path, &text) {
            eprintln!("error: {e:#}");
            return 3;
        }
        eprintln!("report written to {}", path.display());
    }
    match &execution.stdout_line {
        Some(line) => println!("{line}"),
        None => println!("{text}"),
    }
    exit_code(&execution.statuses)
}

/// 1 on any refutation; 2 when some search was cut short; else 0. A clean
/// sampled stage is INCONCLUSIVE *and complete* — evidence, not failure —
/// so it does not trip the exit code.
fn exit_code(statuses: &[(Status, bool)]) -> i32 {
    if statuses.iter().any(|(s, _)| *s == Status::Refuted) {
        1
    } else if statuses.iter().any(|(s, complete)| *s == Status::Inconclusive && !complete) {
        2
    } else {
        0
    }
}

fn load_config(path: &Path) -> Result<RunConfig> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("could not read config {}", path.display()))?;
    let value: Value =
        serde_json::from_str(&text).with_context(|| format!("{} is not JSON", path.display()))?;
    // Accept either a bare RunConfig or a full report with an embedded one.
    let inner = match value.get("config") {
        Some(config) => config.clone(),
        None => value,
    };
    serde_json::from_value(inner)
        .with_context(|| format!("{} does not hold a valid run config", path.display()))
}

fn write_report(path: &Path, text: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)
                .with_context(|| format!("could not create {}", parent.display()))?;
        }
    }
    fs::write(path, format!("{text}\n"))
        .with_context(|| format!("could not write {}", path.display()))
}

/// Parse a nonnegative rational given as a decimal ("0.45") or fraction
/// ("9/20").
fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    if let Some((numer, denom)) = t.split_once('/') {
        let numer: BigInt = numer.trim().parse().context("bad numerator")?;
        let denom: BigInt = denom.trim().parse().context("bad denominator")?;
        ensure!(!denom.is_zero(), "denominator is zero");
        return Ok(BigRational::new(numer, denom));
    }
    if let Some((int, frac)) = t.split_once('.') {
        ensure!(
            !frac.is_empty() && frac.bytes().all(|b| b.is_ascii_digit()),
            "malformed decimal {t:?}"
        );
        let int: BigInt = if int.is_empty() { BigInt::zero() } else { int.parse()? };
        ensure!(!int.is_negative(), "expected a nonnegative value, got {t:?}");
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac: BigInt = frac.parse()?;
        return Ok(BigRational::new(int * &scale + frac, scale));
    }
    let whole: BigInt = t.parse().with_context(|| format!("malformed rational {t:?}"))?;
    Ok(BigRational::from_integer(whole))
}

fn parse_translates(text: &str) -> Result<TranslateRange> {
    if text == "all" {
        return Ok(TranslateRange::All);
    }
    if let Some(count) = text.strip_prefix("sample:") {
        let count: u64 = count.parse().context("bad sample count")?;
        ensure!(count > 0, "sample count must be positive");
        return Ok(TranslateRange::Sample(count));
    }
    bail!("translates must be \"all\" or \"sample:N\", got {text:?}")
}

fn witness_kind(witness: &Option<Witness>) -> &'static str {
    match witness {
        None => "",
        Some(Witness::Edge { .. }) => "edge",
        Some(Witness::Pair { .. }) => "pair",
        Some(Witness::ProperColoring { .. }) => "proper_coloring",
        Some(Witness::LinearFunctional { .. }) => "linear_functional",
        Some(Witness::OddRelation { .. }) => "odd_relation",
        Some(Witness::OddCycle { .. }) => "odd_cycle",
        Some(Witness::Clique { .. }) => "clique",
        Some(Witness::AvoidingSet { .. }) => "avoiding_set",
        Some(Witness::Note { .. }) => "note",
    }
}

fn execute(config: &RunConfig) -> Result<Execution> {
    match config {
        RunConfig::Lemmas { n_cap, .. } => {
            let report = lemma_suite(*n_cap)?;
            let statuses = report
                .checks
                .iter()
                .map(|c| (c.verdict.status, c.verdict.budget_spent.complete))
                .collect();
            Ok(Execution {
                results: serde_json::to_value(&report)?,
                statuses,
                stdout_line: None,
            })
        }
        RunConfig::Count { spec, .. } => {
            let spec = NiveauSpec::parse(spec)?;
            let count = spec.count().to_string();
            let results = json!({
                "spec": spec.encode(),
                "levels": spec.levels(),
                "ambient_scale": spec.scale(),
                "count": count,
            });
            Ok(Execution { results, statuses: Vec::new(), stdout_line: Some(count) })
        }
        RunConfig::Density { spec, margin, n_lo, n_hi, .. } => match (spec, margin) {
            (Some(spec), None) => density_of_spec(spec),
            (None, Some(margin)) => {
                let verdict = density_progression(*margin, *n_lo, *n_hi)?;
                let statuses = vec![(verdict.status, verdict.budget_spent.complete)];
                Ok(Execution {
                    results: serde_json::to_value(&verdict)?,
                    statuses,
                    stdout_line: None,
                })
            }
            _ => bail!("density needs exactly one of --spec or --margin"),
        },
        RunConfig::Construct {
            epsilon, k, scales, mode, trials, seed, n_cap, cap, csv, ..
        } => {
            let eps = parse_rational(epsilon).context("bad --epsilon")?;
            let params = match scales {
                Some(n_seq) => params_with_scales(&eps, k, n_seq)?,
                None => choose_scales(&eps, k, k.len(), *n_cap)?,
            };
            let opts = PipelineOptions {
                mode: match mode.as_str() {
                    "auto" => None,
                    "exhaustive" => Some(Mode::Exhaustive),
                    "sampled" => Some(Mode::Sampled),
                    other => bail!("mode must be auto|exhaustive|sampled, got {other:?}"),
                },
                trials: *trials,
                seed: *seed,
                enumeration_cap: *cap,
            };
            let report = run_pipeline(&params, &opts)?;
            if let Some(path) = csv {
                write_density_csv(Path::new(path), &report.level_densities)
                    .context("could not write the density CSV")?;
            }
            let statuses = report
                .checks
                .iter()
                .map(|c| (c.verdict.status, c.verdict.budget_spent.complete))
                .collect();
            Ok(Execution {
                results: serde_json::to_value(&report)?,
                statuses,
                stdout_line: None,
            })
        }
        RunConfig::Chromatic { p, n, radius, center, colors, max_nodes, .. } => {
            let budget = Budget::with_nodes(*max_nodes);
            let ball = match center.as_str() {
                "zero" => HammingBallSpec::origin(*p, *n, *radius)?,
                "ones" => HammingBallSpec::ones(*p, *n, *radius)?,
                other => bail!("center must be zero|ones, got {other:?}"),
            };
            let conn = materialize(&SetPredicate::from_ball(&ball), budget.max_vertices)?;
            let graph = CayleyGraph::new(&conn)?;
            let verdict = chromatic_exceeds(&graph, *colors, &budget)?
                .with_param("center", center.as_str())
                .with_param("radius", *radius);
            let statuses = vec![(verdict.status, verdict.budget_spent.complete)];
            Ok(Execution {
                results: serde_json::to_value(&verdict)?,
                statuses,
                stdout_line: None,
            })
        }
        RunConfig::Lovasz { r, k, max_nodes, .. } => {
            let verdict = verify_lovasz(*r, *k, &Budget::with_nodes(*max_nodes))?;
            let statuses = vec![(verdict.status, verdict.budget_spent.complete)];
            Ok(Execution {
                results: serde_json::to_value(&verdict)?,
                statuses,
                stdout_line: None,
            })
        }
        RunConfig::Poincare { p, n, k, relax, max_nodes, .. } => {
            let verdict = verify_poincare(*p, *n, *k, *relax, &Budget::with_nodes(*max_nodes))?;
            let statuses = vec![(verdict.status, verdict.budget_spent.complete)];
            Ok(Execution {
                results: serde_json::to_value(&verdict)?,
                statuses,
                stdout_line: None,
            })
        }
        RunConfig::Explore { p, n, k, colors, translates, seed, max_nodes, csv, .. } => {
            let range = parse_translates(translates)?;
            let mut rng = RandomStream::new(*seed);
            let batch =
                probe_odd_prime(*p, *n, *k, *colors, range, &Budget::with_nodes(*max_nodes), &mut rng)?;
            if let Some(path) = csv {
                write_probe_csv(Path::new(path), &batch)
                    .context("could not write the probe CSV")?;
            }
            let statuses = batch
                .rows
                .iter()
                .map(|r| (r.verdict.status, r.verdict.budget_spent.complete))
                .collect();
            Ok(Execution {
                results: serde_json::to_value(&batch)?,
                statuses,
                stdout_line: None,
            })
        }
    }
}

fn density_of_spec(text: &str) -> Result<Execution> {
    let spec = NiveauSpec::parse(text)?;
    let (results, line) = if spec.exact_density_affordable() {
        let density = spec.density();
        let decimal = rational_to_decimal(&density, 9);
        (
            json!({
                "spec": spec.encode(),
                "exact": true,
                "density_rational": density.to_string(),
                "density_decimal": decimal,
            }),
            decimal,
        )
    } else {
        let interval = spec.density_interval()?;
        let lower = interval.lower_rational();
        let decimal = rational_to_decimal(&lower, 9);
        (
            json!({
                "spec": spec.encode(),
                "exact": false,
                "density_lower_bound": lower.to_string(),
                "density_upper_bound": interval.upper_rational().to_string(),
                "density_decimal": decimal,
            }),
            decimal,
        )
    };
    Ok(Execution { results, statuses: Vec::new(), stdout_line: Some(line) })
}

fn write_density_csv(
    path: &Path,
    levels: &[niveau_core::construct::LevelDensity],
) -> Result<()> {
    let mut writer = csv::Writer::from_path(path)?;
    writer.write_record([
        "level",
        "chain",
        "density_decimal",
        "density_lower_bound",
        "exact",
        "meets_target",
    ])?;
    for level in levels {
        writer.write_record([
            level.level.to_string().as_str(),
            &level.chain,
            &level.density_decimal,
            &level.density_lower_bound,
            if level.exact { "true" } else { "false" },
            if level.meets_target { "true" } else { "false" },
        ])?;
    }
    writer.flush()?;
    Ok(())
}

fn write_probe_csv(path: &Path, batch: &niveau_core::explore::ProbeBatch) -> Result<()> {
    let mut writer = csv::Writer::from_path(path)?;
    writer.write_record(["g", "status", "witness_kind", "nodes"])?;
    for row in &batch.rows {
        writer.write_record([
            row.translate.as_str(),
            &row.verdict.status.to_string(),
            witness_kind(&row.verdict.witness),
            &row.verdict.budget_spent.nodes.to_string(),
        ])?;
    }
    writer.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parsing() {
        let tenth = BigRational::new(BigInt::from(1), BigInt::from(10));
        assert_eq!(parse_rational("0.1").unwrap(), tenth);
        assert_eq!(parse_rational("1/10").unwrap(), tenth);
        assert_eq!(parse_rational(".45").unwrap(), parse_rational("9/20").unwrap());
        assert_eq!(parse_rational("2").unwrap(), BigRational::from_integer(2.into()));
        assert!(parse_rational("1.").is_err());
        assert!(parse_rational("a/b").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn translate_parsing() {
        assert_eq!(parse_translates("all").unwrap(), TranslateRange::All);
        assert_eq!(parse_translates("sample:7").unwrap(), TranslateRange::Sample(7));
        assert!(parse_translates("sample:0").is_err());
        assert!(parse_translates("some").is_err());
    }

    #[test]
    fn exit_codes_prioritize_refutation() {
        use Status::*;
        assert_eq!(exit_code(&[]), 0);
        assert_eq!(exit_code(&[(Proven, true)]), 0);
        assert_eq!(exit_code(&[(Inconclusive, true)]), 0);
        assert_eq!(exit_code(&[(Inconclusive, false)]), 2);
        assert_eq!(exit_code(&[(Inconclusive, false), (Refuted, true)]), 1);
    }

    #[test]
    fn config_round_trips_through_json() {
        let config = RunConfig::Explore {
            p: 3,
            n: 2,
            k: 1,
            colors: 2,
            translates: "all".into(),
            seed: 7,
            max_nodes: 1000,
            out: None,
            csv: None,
        };
        let text = serde_json::to_string(&config).unwrap();
        assert!(text.contains("\"command\":\"explore\""));
        let back: RunConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(
            serde_json::to_string(&back).unwrap(),
            text,
            "config serialization must be stable"
        );
    }
}
