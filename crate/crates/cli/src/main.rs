//! Command-line driver: single-group table and average reports, the lemma
//! checkers, the threshold classifier, and the corpus census with CSV output.

use std::collections::HashMap;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

use charkit::avg::{acd_report, FieldSpec, RestrictedSelection};
use charkit::census::{self, CensusConfig, LemmaParams};
use charkit::chartab::{cross_checked_table, table_for};
use charkit::constructions;

#[derive(Parser)]
#[command(name = "charkit", version, about = "Exact character-theory toolkit for odd-order groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the exact character table of a group as JSON.
    Table(TableArgs),
    /// Print a restricted average-degree report as JSON.
    Acd(AcdArgs),
    /// Run the threshold census over a corpus manifest; writes CSV.
    Census(CensusArgs),
    /// Run one of the built-in verification suites (2.1, 2.2, 2.4, 3.1,
    /// 3.2, 4.1, 4.2, 4.3) and print its JSON report.
    CheckLemma(CheckLemmaArgs),
    /// List the applicable threshold cases for a (p, field) pair.
    Threshold(ThresholdArgs),
    /// Print the built-in default corpus manifest.
    Corpus,
}

#[derive(Args)]
struct TableArgs {
    /// Group spec: cyclic:n | elab:p^a | frob:p,a,h | affine:p,a,gens=… | prod:A*B
    spec: String,
    /// Compute with both engines and verify they agree (affine groups only).
    #[arg(long)]
    cross_check: bool,
    /// Splitting seed for the class-algebra engine (output is canonical).
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct AcdArgs {
    spec: String,
    /// Odd prime for the p'-degree filter.
    #[arg(long)]
    p: Option<u64>,
    /// Field: an integer m for Q(ζ_m), or `full` for all complex numbers.
    #[arg(long)]
    m: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct CensusArgs {
    /// Corpus manifest path (one group spec per line, # comments). Defaults
    /// to the built-in corpus.
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Comma-separated odd primes.
    #[arg(long)]
    p: Option<String>,
    /// Comma-separated fields (integers and/or `full`).
    #[arg(long)]
    m: Option<String>,
    /// Output CSV path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// key=value file mirroring the flags (corpus, p, m, out, jobs, seed);
    /// explicit flags win.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct CheckLemmaArgs {
    /// One of: 2.1, 2.2, 2.4, 3.1, 3.2, 4.1, 4.2, 4.3
    id: String,
    #[arg(long)]
    item: Option<u8>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    a: Option<u32>,
    #[arg(long)]
    h: Option<u64>,
    #[arg(long)]
    m: Option<String>,
    #[arg(long)]
    spec: Option<String>,
    #[arg(long)]
    denominator_bound: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct ThresholdArgs {
    #[arg(long)]
    p: u64,
    /// Field: integer m or `full`.
    #[arg(long, default_value = "full")]
    m: String,
}

fn parse_field(s: &str) -> anyhow::Result<FieldSpec> {
    FieldSpec::parse(s).map_err(|e| anyhow::anyhow!("{e}"))
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> anyhow::Result<Vec<T>> {
    s.split(',')
        .map(|x| x.trim())
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<T>().map_err(|_| anyhow::anyhow!("bad {what} entry `{x}`")))
        .collect()
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    match cli.command {
        Command::Table(args) => {
            let g = constructions::build_from_str(&args.spec)?;
            let table = if args.cross_check {
                cross_checked_table(&g, args.seed)?
            } else {
                table_for(&g, args.seed)?
            };
            println!("{}", serde_json::to_string_pretty(&table.to_json())?);
            Ok(0)
        }
        Command::Acd(args) => {
            let g = constructions::build_from_str(&args.spec)?;
            let table = table_for(&g, args.seed)?;
            let field = args.m.as_deref().map(parse_field).transpose()?;
            if let Some(p) = args.p {
                if p % 2 == 0 {
                    bail!("--p must be odd");
                }
            }
            let sel = RestrictedSelection { p: args.p, field };
            let report = acd_report(&g, &table, &sel);
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(0)
        }
        Command::Census(args) => run_census_cmd(args),
        Command::CheckLemma(args) => {
            let params = LemmaParams {
                item: args.item,
                p: args.p,
                a: args.a,
                h: args.h,
                m: args.m.as_deref().map(parse_field).transpose()?,
                spec: args.spec.clone(),
                denominator_bound: args.denominator_bound,
                seed: args.seed,
            };
            let report = census::check_lemma(&args.id, &params)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(0)
        }
        Command::Threshold(args) => {
            let field = parse_field(&args.m)?;
            let cases = charkit::bounds::classify(args.p, &field);
            for case in &cases {
                println!("{}\t{}\t{}", case.id, case.metric.label(), case.threshold_str);
            }
            let best = charkit::bounds::effective_threshold(&cases)?;
            println!("effective\t{}\t{}", best.metric.label(), best.threshold_str);
            Ok(0)
        }
        Command::Corpus => {
            print!("{}", constructions::render_manifest(&constructions::default_corpus()));
            Ok(0)
        }
    }
}

fn run_census_cmd(args: CensusArgs) -> anyhow::Result<i32> {
    // config file first, explicit flags override
    let mut file_cfg: HashMap<String, String> = HashMap::new();
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .with_context(|| format!("config line {} is not key=value", lineno + 1))?;
            file_cfg.insert(k.trim().to_string(), v.trim().to_string());
        }
    }
    let corpus_path = args
        .corpus
        .or_else(|| file_cfg.get("corpus").map(PathBuf::from));
    let corpus = match corpus_path {
        Some(path) => {
            let text = std::fs::read_to_string(&path)
                .with_context(|| format!("reading corpus {}", path.display()))?;
            constructions::parse_manifest(&text)?
        }
        None => constructions::default_corpus(),
    };
    let primes_str = args
        .p
        .or_else(|| file_cfg.get("p").cloned())
        .unwrap_or_else(|| "3,5,7,11,13".to_string());
    let primes: Vec<u64> = parse_list(&primes_str, "prime")?;
    let fields_str = args
        .m
        .or_else(|| file_cfg.get("m").cloned())
        .unwrap_or_else(|| "full,1,3,13,39".to_string());
    let fields = fields_str
        .split(',')
        .map(|x| x.trim())
        .filter(|x| !x.is_empty())
        .map(parse_field)
        .collect::<anyhow::Result<Vec<_>>>()?;
    let seed = match args.seed {
        Some(s) => s,
        None => file_cfg.get("seed").map(|s| s.parse()).transpose()?.unwrap_or(0),
    };
    let jobs = match args.jobs {
        Some(j) => Some(j),
        None => file_cfg.get("jobs").map(|s| s.parse()).transpose()?,
    };
    if let Some(jobs) = jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .context("configuring worker pool")?;
    }
    let out_path = args.out.or_else(|| file_cfg.get("out").map(PathBuf::from));

    let outcome = census::run_census(&CensusConfig { corpus, primes, fields, seed })?;

    let mut writer: Box<dyn Write> = match &out_path {
        Some(path) => Box::new(std::fs::File::create(path)?),
        None => Box::new(std::io::stdout().lock()),
    };
    {
        let mut csv = csv::WriterBuilder::new().from_writer(&mut writer);
        csv.write_record(census::CSV_HEADER)?;
        for row in &outcome.rows {
            csv.write_record(row.csv_fields())?;
        }
        csv.flush()?;
    }
    drop(writer);

    for line in &outcome.conventions {
        eprintln!("note: {line}");
    }
    eprintln!(
        "census: {} rows, {} TIGHT, {} DISCREPANCY",
        outcome.rows.len(),
        outcome.tight.len(),
        outcome.discrepancies.len()
    );
    if !outcome.tight.is_empty() {
        eprintln!("tight rows:");
        for &i in &outcome.tight {
            let r = &outcome.rows[i];
            eprintln!(
                "  {} p={} field={} case={} threshold={} acd={}",
                r.group_spec, r.p, r.field, r.case_id, r.threshold, r.acd
            );
        }
    }
    if !outcome.discrepancies.is_empty() {
        eprintln!("DISCREPANCY rows (bound claim fails):");
        for &i in &outcome.discrepancies {
            let r = &outcome.rows[i];
            eprintln!(
                "  {} p={} field={} case={} threshold={} acd={} pNilpotent={}",
                r.group_spec, r.p, r.field, r.case_id, r.threshold, r.acd, r.p_nilpotent
            );
        }
        return Ok(1);
    }
    Ok(0)
}
