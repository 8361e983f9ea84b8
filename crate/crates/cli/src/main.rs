//! `pnw` — command line for the prefix normal word toolkit.
//!
//! Every subcommand dispatches one library operation and writes a text,
//! JSON, or CSV report to stdout (or `--output`). Exit codes: 0 on
//! success, 1 when a verification subcommand found violations, 2 on
//! usage errors. Runs are deterministic given `--seed` (default: the
//! `PNW_SEED` environment variable, then 0); `--threads` changes wall
//! time only, never output.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use pnw_core::bounds::{tail_audit_row, TailAuditRow, TAIL_AUDIT_CSV_HEADER};
use pnw_core::catalan_blocks::{
    build_word, iter_catalan_sequences, target_pnf, verify_construction, CatalanBlockSpec,
    VerificationMode,
};
use pnw_core::enumeration::{
    class_size, enumeration_row, max_class_size, EnumerationRow, ENUMERATION_CSV_HEADER,
};
use pnw_core::sampler::{ConstructionParams, EXPERIMENT_CSV_HEADER};
use pnw_core::{rng, BinaryWord};

#[derive(Parser)]
#[command(
    name = "pnw",
    version,
    about = "Prefix normal binary words: checking, enumeration, sampling, and tail-bound audits"
)]
struct Cli {
    /// Report format (verify-t2 always emits its JSON report).
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the report to this path instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Master seed for randomized subcommands. Defaults to $PNW_SEED,
    /// then 0.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Worker threads (wall time only; output is thread-count
    /// independent).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct WordInput {
    /// Word as a 0/1 string.
    #[arg(long, conflicts_with = "input")]
    word: Option<String>,

    /// File with one 0/1 word per line (blank lines skipped).
    #[arg(long)]
    input: Option<PathBuf>,
}

impl WordInput {
    fn words(&self) -> Result<Vec<BinaryWord>> {
        let lines: Vec<String> = match (&self.word, &self.input) {
            (Some(w), None) => vec![w.clone()],
            (None, Some(path)) => fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .map(String::from)
                .collect(),
            _ => bail!("provide exactly one of --word or --input"),
        };
        if lines.is_empty() {
            bail!("no words to process");
        }
        lines
            .iter()
            .map(|l| BinaryWord::from_str(l).map_err(|e| anyhow!("{e}")))
            .collect()
    }

    fn is_batch(&self) -> bool {
        self.input.is_some()
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide prefix normality (word::is_prefix_normal_reduced, the
    /// reduced-range check; agrees with the definitional oracle).
    Check(WordInput),

    /// Compute the prefix normal form (word::prefix_normal_form).
    Normalize(WordInput),

    /// Compute the profile f(0..=n) of maximal window ones counts
    /// (word::profile).
    Profile(WordInput),

    /// Count prefix normal words and the maximal equivalence class
    /// (enumeration::count_prefix_normal + enumeration::max_class_size;
    /// exhaustive, practical up to n around 24).
    Enumerate {
        /// Length, or upper end of the range with --upto.
        #[arg(long)]
        n: usize,
        /// Emit one row per length 0..=n.
        #[arg(long)]
        upto: bool,
    },

    /// Size of the equivalence class of a prefix normal word, by
    /// exhaustive scan (enumeration::class_size).
    ClassSize(WordInput),

    /// The largest equivalence class at one length
    /// (enumeration::max_class_size; exhaustive census).
    MaxClass {
        #[arg(long)]
        n: usize,
    },

    /// Draw words from the biased construction
    /// (sampler::ConstructionParams::sample).
    Sample {
        #[arg(long)]
        n: usize,
        /// Bias constant; the construction targets c > sqrt(2).
        #[arg(long)]
        c: f64,
        /// First trial index.
        #[arg(long, default_value_t = 0)]
        trial: u64,
        /// Number of consecutive trials to emit.
        #[arg(long, default_value_t = 1)]
        count: u64,
    },

    /// Estimate the prefix normality rate of the construction
    /// (sampler::ConstructionParams::pn_rate) with a Wilson 95% radius.
    Rate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        c: f64,
        #[arg(long)]
        trials: u64,
    },

    /// Entropy of the construction in bits and its deficit below n
    /// (sampler::ConstructionParams::construction_entropy).
    Entropy {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        c: f64,
    },

    /// Build Catalan-block words (catalan_blocks::build_word). Blocks are
    /// explicit, or drawn uniformly with --random.
    ConstructT2 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: u64,
        /// Comma-separated Catalan blocks of length 2t.
        #[arg(long, value_delimiter = ',', conflicts_with = "random")]
        blocks: Option<Vec<String>>,
        /// Draw the blocks uniformly (seeded).
        #[arg(long)]
        random: bool,
    },

    /// Verify that every (or a sample of) Catalan-block word normalizes
    /// to the common target form (catalan_blocks::verify_construction).
    /// Always emits the JSON report; exits 1 on failures.
    VerifyT2 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: u64,
        #[arg(long, value_enum)]
        mode: VerifyMode,
        /// Sample count for --mode sampled.
        #[arg(long, default_value_t = 1000)]
        samples: u64,
    },

    /// Exact binomial tails against their Stirling lower bounds and the
    /// Hoeffding upper bound (bounds::tail_audit_row). Exits 1 if any
    /// bound is violated.
    BoundsAudit(BoundsAuditArgs),

    /// Grid sweeps of rate, entropy, or the bounds audit; one CSV row
    /// per grid point, deterministic given the seed.
    Sweep {
        #[arg(long, value_enum)]
        op: SweepOp,
        /// Lengths for rate/entropy sweeps.
        #[arg(long, value_delimiter = ',')]
        n_list: Vec<usize>,
        /// Bias constants for rate/entropy sweeps.
        #[arg(long, value_delimiter = ',')]
        c_list: Vec<f64>,
        /// Trials per rate grid point.
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[command(flatten)]
        bounds: BoundsAuditArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyMode {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepOp {
    Rate,
    Entropy,
    BoundsAudit,
}

#[derive(Args, Clone)]
struct BoundsAuditArgs {
    /// Smallest k.
    #[arg(long, default_value_t = 10)]
    k_min: u64,
    /// Largest k.
    #[arg(long, default_value_t = 200)]
    k_max: u64,
    /// Step between audited k values.
    #[arg(long, default_value_t = 1)]
    k_step: u64,
    /// Thresholds lambda in (1/2, 1); only integral lambda*k rows are
    /// emitted. Omit to audit every integral threshold.
    #[arg(long, value_delimiter = ',')]
    lambda: Option<Vec<f64>>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(err) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("pnw: cannot configure {threads} threads: {err}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(violations) => {
            if violations {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(err) => {
            eprintln!("pnw: {err:#}");
            ExitCode::from(2)
        }
    }
}

/// Runs the subcommand; `Ok(true)` means a verification found
/// violations (exit 1).
fn run(cli: &Cli) -> Result<bool> {
    let seed = resolve_seed(cli.seed)?;
    let mut violations = false;
    let report = match &cli.command {
        Command::Check(input) => {
            let words = input.words()?;
            let single = !input.is_batch();
            match cli.format {
                Format::Text => {
                    let mut out = String::new();
                    for w in &words {
                        let normal = w.is_prefix_normal_reduced();
                        if single {
                            writeln!(out, "prefix-normal: {normal}")?;
                        } else {
                            writeln!(out, "{w}\t{normal}")?;
                        }
                    }
                    out
                }
                Format::Json => json_lines(words.iter().map(|w| {
                    serde_json::json!({
                        "word": w.to_string(),
                        "prefix_normal": w.is_prefix_normal_reduced(),
                    })
                }))?,
                Format::Csv => {
                    let mut out = String::from("word,prefix_normal\n");
                    for w in &words {
                        writeln!(out, "{w},{}", w.is_prefix_normal_reduced())?;
                    }
                    out
                }
            }
        }

        Command::Normalize(input) => {
            let words = input.words()?;
            match cli.format {
                Format::Text => {
                    let mut out = String::new();
                    for w in &words {
                        writeln!(out, "{}", w.prefix_normal_form())?;
                    }
                    out
                }
                Format::Json => json_lines(words.iter().map(|w| {
                    serde_json::json!({
                        "word": w.to_string(),
                        "prefix_normal_form": w.prefix_normal_form().to_string(),
                    })
                }))?,
                Format::Csv => {
                    let mut out = String::from("word,prefix_normal_form\n");
                    for w in &words {
                        writeln!(out, "{w},{}", w.prefix_normal_form())?;
                    }
                    out
                }
            }
        }

        Command::Profile(input) => {
            let words = input.words()?;
            match cli.format {
                Format::Text => {
                    let mut out = String::new();
                    for w in &words {
                        writeln!(out, "{}", join_u32(w.profile().values()))?;
                    }
                    out
                }
                Format::Json => json_lines(words.iter().map(|w| {
                    serde_json::json!({
                        "word": w.to_string(),
                        "profile": w.profile().values(),
                    })
                }))?,
                Format::Csv => {
                    let mut out = String::from("word,profile\n");
                    for w in &words {
                        writeln!(
                            out,
                            "{w},{}",
                            join_u32(w.profile().values()).replace(',', " ")
                        )?;
                    }
                    out
                }
            }
        }

        Command::Enumerate { n, upto } => {
            check_census_feasible(*n)?;
            let lengths: Vec<usize> = if *upto { (0..=*n).collect() } else { vec![*n] };
            let rows: Vec<EnumerationRow> = lengths.into_iter().map(enumeration_row).collect();
            table(
                cli.format,
                ENUMERATION_CSV_HEADER,
                &rows,
                EnumerationRow::csv_row,
                |r| serde_json::to_value(r).expect("row serializes"),
            )?
        }

        Command::ClassSize(input) => {
            let words = input.words()?;
            let mut out = String::new();
            let mut json = Vec::new();
            for w in &words {
                check_census_feasible(w.len())?;
                let size = class_size(w).map_err(|e| anyhow!("{e}"))?;
                match cli.format {
                    Format::Text => writeln!(out, "{size}")?,
                    Format::Csv => writeln!(out, "{w},{size}")?,
                    Format::Json => json.push(serde_json::json!({
                        "word": w.to_string(),
                        "class_size": size.to_string(),
                    })),
                }
            }
            match cli.format {
                Format::Json => json_lines(json.into_iter())?,
                Format::Csv => format!("word,class_size\n{out}"),
                Format::Text => out,
            }
        }

        Command::MaxClass { n } => {
            check_census_feasible(*n)?;
            let report = max_class_size(*n);
            match cli.format {
                Format::Text => {
                    format!(
                        "n: {n}\nmax-class: {}\nwitness: {}\n",
                        report.size, report.pnf
                    )
                }
                Format::Json => {
                    let value = serde_json::json!({
                        "n": n,
                        "max_class": report.size.to_string(),
                        "witness": report.pnf.to_string(),
                    });
                    format!("{value}\n")
                }
                Format::Csv => {
                    format!("n,max_class,witness\n{n},{},{}\n", report.size, report.pnf)
                }
            }
        }

        Command::Sample { n, c, trial, count } => {
            let params = params(*n, *c, seed)?;
            let trials: Vec<u64> = (*trial..trial + count).collect();
            match cli.format {
                Format::Text => {
                    let mut out = String::new();
                    for &t in &trials {
                        writeln!(out, "{}", params.sample(t))?;
                    }
                    out
                }
                Format::Json => json_lines(trials.iter().map(|&t| {
                    serde_json::json!({
                        "trial": t,
                        "word": params.sample(t).to_string(),
                    })
                }))?,
                Format::Csv => {
                    let mut out = String::from("trial,word\n");
                    for &t in &trials {
                        writeln!(out, "{t},{}", params.sample(t))?;
                    }
                    out
                }
            }
        }

        Command::Rate { n, c, trials } => {
            let report = params(*n, *c, seed)?
                .pn_rate(*trials)
                .map_err(|e| anyhow!("{e}"))?;
            match cli.format {
                Format::Text => format!(
                    "n: {}\nc: {}\nk0: {}\ntrials: {}\nsuccesses: {}\nrate: {}\nwilson95: {}\nentropy-bits: {}\ndeficit-bits: {}\n",
                    report.params.n(),
                    report.params.c(),
                    report.params.k0(),
                    report.trials,
                    report.successes,
                    report.rate,
                    report.wilson_radius,
                    report.entropy_bits,
                    report.deficit_bits(),
                ),
                Format::Json => format!("{}\n", report.to_json_string()),
                Format::Csv => format!("{EXPERIMENT_CSV_HEADER}\n{}\n", report.csv_row()),
            }
        }

        Command::Entropy { n, c } => entropy_report(cli.format, &[*n], &[*c])?,

        Command::ConstructT2 {
            n,
            t,
            blocks,
            random,
        } => {
            let m = construction_block_count(*n, *t)?;
            let chosen: Vec<BinaryWord> = match (blocks, random) {
                (Some(list), false) => list
                    .iter()
                    .map(|s| BinaryWord::from_str(s).map_err(|e| anyhow!("{e}")))
                    .collect::<Result<_>>()?,
                (None, true) => {
                    let pool: Vec<BinaryWord> = iter_catalan_sequences(*t).collect();
                    let mut stream = rng::trial_stream(seed, 0);
                    (0..m)
                        .map(|_| pool[stream.next_below(pool.len() as u64) as usize].clone())
                        .collect()
                }
                (None, false) if m == 0 => Vec::new(),
                _ => bail!("need --blocks (exactly {m}) or --random"),
            };
            let spec = CatalanBlockSpec::new(*n, *t, chosen).map_err(|e| anyhow!("{e}"))?;
            let word = build_word(&spec);
            let target = target_pnf(*n, *t).map_err(|e| anyhow!("{e}"))?;
            match cli.format {
                Format::Text => format!("{word}\n"),
                Format::Json => {
                    let value = serde_json::json!({
                        "n": n,
                        "t": t,
                        "word": word.to_string(),
                        "prefix_normal_form": word.prefix_normal_form().to_string(),
                        "target": target.to_string(),
                        "matches_target": word.prefix_normal_form() == target,
                    });
                    format!("{value}\n")
                }
                Format::Csv => format!("n,t,word\n{n},{t},{word}\n"),
            }
        }

        Command::VerifyT2 {
            n,
            t,
            mode,
            samples,
        } => {
            let mode = match mode {
                VerifyMode::Exhaustive => VerificationMode::Exhaustive,
                VerifyMode::Sampled => VerificationMode::Sampled {
                    samples: *samples,
                    seed,
                },
            };
            let report = verify_construction(*n, *t, mode).map_err(|e| anyhow!("{e}"))?;
            violations = report.failures > 0;
            format!("{}\n", report.to_json_string())
        }

        Command::BoundsAudit(args) => {
            let rows = audit_rows(args)?;
            violations = rows.iter().any(TailAuditRow::violates);
            table(
                cli.format,
                TAIL_AUDIT_CSV_HEADER,
                &rows,
                TailAuditRow::csv_row,
                |r| serde_json::to_value(r).expect("row serializes"),
            )?
        }

        Command::Sweep {
            op,
            n_list,
            c_list,
            trials,
            bounds,
        } => match op {
            SweepOp::Rate => {
                if n_list.is_empty() || c_list.is_empty() {
                    bail!("empty grid: rate sweeps need --n-list and --c-list");
                }
                let mut out = String::from(EXPERIMENT_CSV_HEADER);
                out.push('\n');
                for &n in n_list {
                    for &c in c_list {
                        let report = params(n, c, seed)?
                            .pn_rate(*trials)
                            .map_err(|e| anyhow!("{e}"))?;
                        writeln!(out, "{}", report.csv_row())?;
                    }
                }
                out
            }
            SweepOp::Entropy => {
                if n_list.is_empty() || c_list.is_empty() {
                    bail!("empty grid: entropy sweeps need --n-list and --c-list");
                }
                entropy_report(Format::Csv, n_list, c_list)?
            }
            SweepOp::BoundsAudit => {
                let rows = audit_rows(bounds)?;
                violations = rows.iter().any(TailAuditRow::violates);
                let mut out = String::from(TAIL_AUDIT_CSV_HEADER);
                out.push('\n');
                for row in &rows {
                    writeln!(out, "{}", row.csv_row())?;
                }
                out
            }
        },
    };

    match &cli.output {
        Some(path) => {
            fs::write(path, report).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{report}"),
    }
    Ok(violations)
}

fn resolve_seed(flag: Option<u64>) -> Result<u64> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var("PNW_SEED") {
        Ok(raw) => raw
            .trim()
            .parse::<u64>()
            .map_err(|_| anyhow!("PNW_SEED must be a 64-bit unsigned integer, got {raw:?}")),
        Err(_) => Ok(0),
    }
}

fn params(n: usize, c: f64, seed: u64) -> Result<ConstructionParams> {
    ConstructionParams::new(n, c, seed).map_err(|e| anyhow!("{e}"))
}

/// The class subcommands scan all 2^n words; refuse lengths where that
/// takes hours.
fn check_census_feasible(n: usize) -> Result<()> {
    const MAX_CENSUS_LEN: usize = 26;
    if n > MAX_CENSUS_LEN {
        bail!("n={n} needs a scan of 2^{n} words; the exhaustive subcommands are capped at n = {MAX_CENSUS_LEN}");
    }
    Ok(())
}

fn construction_block_count(n: usize, t: u64) -> Result<usize> {
    if t < 1 || n < 4 * t as usize || !n.is_multiple_of(2 * t as usize) {
        bail!("n={n} must be a multiple of 2t and at least 4t (t={t})");
    }
    Ok((n - 4 * t as usize) / (2 * t as usize))
}

/// Entropy rows share the experiment CSV shape; the trial columns stay
/// empty because nothing was sampled.
fn entropy_report(format: Format, n_list: &[usize], c_list: &[f64]) -> Result<String> {
    let mut rows = Vec::new();
    for &n in n_list {
        for &c in c_list {
            let p = params(n, c, 0)?;
            rows.push((n, c, p.k0(), p.construction_entropy(), p.entropy_deficit()));
        }
    }
    Ok(match format {
        Format::Text => {
            let mut out = String::new();
            for (n, c, k0, bits, deficit) in rows {
                writeln!(
                    out,
                    "n: {n}\nc: {c}\nk0: {k0}\nentropy-bits: {bits}\ndeficit-bits: {deficit}"
                )?;
            }
            out
        }
        Format::Json => json_lines(rows.into_iter().map(|(n, c, k0, bits, deficit)| {
            serde_json::json!({
                "n": n, "c": c, "k0": k0,
                "trials": null, "successes": null, "rate": null, "wilson95": null,
                "entropy_bits": bits, "deficit_bits": deficit,
            })
        }))?,
        Format::Csv => {
            let mut out = String::from(EXPERIMENT_CSV_HEADER);
            out.push('\n');
            for (n, c, k0, bits, deficit) in rows {
                writeln!(out, "{n},{c},{k0},,,,,{bits},{deficit}")?;
            }
            out
        }
    })
}

fn audit_rows(args: &BoundsAuditArgs) -> Result<Vec<TailAuditRow>> {
    if args.k_min > args.k_max || args.k_step == 0 {
        bail!("empty grid: need k-min <= k-max and a positive k-step");
    }
    let mut rows = Vec::new();
    let mut k = args.k_min;
    while k <= args.k_max {
        match &args.lambda {
            None => {
                for d in k / 2 + 1..k {
                    rows.push(tail_audit_row(k, d as f64 / k as f64).map_err(|e| anyhow!("{e}"))?);
                }
            }
            Some(lambdas) => {
                for &lambda in lambdas {
                    if !(lambda > 0.5 && lambda < 1.0) {
                        bail!("lambda {lambda} outside (1/2, 1)");
                    }
                    let product = lambda * k as f64;
                    if (product - product.round()).abs() <= 1e-9 {
                        rows.push(tail_audit_row(k, lambda).map_err(|e| anyhow!("{e}"))?);
                    }
                }
            }
        }
        k += args.k_step;
    }
    if rows.is_empty() {
        bail!("empty grid: no integral lambda*k in the requested range");
    }
    Ok(rows)
}

fn table<R>(
    format: Format,
    header: &str,
    rows: &[R],
    csv: impl Fn(&R) -> String,
    json: impl Fn(&R) -> serde_json::Value,
) -> Result<String> {
    Ok(match format {
        Format::Text | Format::Csv => {
            let mut out = String::from(header);
            out.push('\n');
            for row in rows {
                writeln!(out, "{}", csv(row))?;
            }
            out
        }
        Format::Json => json_lines(rows.iter().map(json))?,
    })
}

fn json_lines(values: impl Iterator<Item = serde_json::Value>) -> Result<String> {
    let collected: Vec<serde_json::Value> = values.collect();
    let body = if collected.len() == 1 {
        serde_json::to_string(&collected[0])?
    } else {
        serde_json::to_string(&collected)?
    };
    Ok(format!("{body}\n"))
}

fn join_u32(values: &[u32]) -> String {
    values
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",")
}
