//! `skolem` — command-line surface of the Skolem-circle toolkit.
//!
//! Every library operation is reachable from here: exhaustive enumeration
//! and classification (optionally sharded, threaded and checkpointed),
//! validators for the linear and cyclic objects, canonical forms,
//! removable-edge analysis, the constructive families, growth bounds, and
//! diffing of counts files.
//!
//! Exit codes: `0` success, `1` domain failure (invalid object, count
//! mismatch, oracle disagreement), `2` usage error.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use skolem_core::canonical::canonicalize;
use skolem_core::catalog::{
    diff_counts, parse_shard_checkpoint, reference_counts, shard_checkpoint_to_text, Catalog,
    CatalogRecord, CountsTable,
};
use skolem_core::constructions::{bounds, glue, langford_chain_circle, langford_power3};
use skolem_core::enumeration::{
    classify, classify_shard, enumerate_sequences, enumerate_shard, enumerate_with_removable,
    make_shards, merge, run_shards, ClassifiedCounts, ShardGranularity, ShardSpec,
    MAX_ENUMERABLE_ORDER,
};
use skolem_core::removable::{removability_report, removable_edges_oracle, sequences_of_circle};
use skolem_core::text::{format_symbol_list, parse_symbol_list};
use skolem_core::{
    validate_circle, validate_sequence, CircleLabeling, SequenceKind, SkolemTypeSeq,
};

/// Upper limit accepted for `-m` on the exhaustive commands.
const MAX_ORDER: i64 = MAX_ENUMERABLE_ORDER as i64;

#[derive(Parser)]
#[command(
    name = "skolem",
    version,
    about = "Skolem sequences, Langford sequences and Skolem circles",
    max_term_width = 100
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate all standard-form circles of one order as a catalog.
    Enumerate {
        /// Order to enumerate (1..=32; stay small, the catalog is held in
        /// memory).
        #[arg(short = 'm', value_parser = clap::value_parser!(i64).range(1..=MAX_ORDER))]
        order: i64,
        /// Write the catalog to this file instead of standard output.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Count circles of one order grouped by removable edges.
    Classify {
        /// Order to classify (1..=32).
        #[arg(short = 'm', value_parser = clap::value_parser!(i64).range(1..=MAX_ORDER))]
        order: i64,
        /// Split the search into at least this many independent shards.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(i64).range(1..=65536))]
        shards: i64,
        /// Worker threads for sharded runs (ignored without --shards).
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(i64).range(1..=4096))]
        threads: i64,
        /// Write the counts as CSV to this file.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        /// Also write the full catalog of circles to this file.
        #[arg(long, value_name = "PATH")]
        catalog: Option<PathBuf>,
        /// Directory for per-shard checkpoint files; finished shards found
        /// there are reused instead of recomputed. Requires --shards >= 2.
        #[arg(long, value_name = "DIR")]
        checkpoints: Option<PathBuf>,
        /// Compare the result against a counts CSV file ("bundled" for the
        /// built-in reference table); mismatches exit 1.
        #[arg(long, value_name = "PATH")]
        expect: Option<String>,
    },
    /// Count the linear Skolem sequences of one order.
    CountSequences {
        /// Order to count (1..=32).
        #[arg(short = 'm', value_parser = clap::value_parser!(i64).range(1..=MAX_ORDER))]
        order: i64,
    },
    /// Check an object against the placement rules of its kind.
    Validate {
        /// Which rules to check.
        #[arg(long, value_enum, default_value_t = KindArg::Circle)]
        kind: KindArg,
        /// Langford defect (with --kind langford).
        #[arg(long)]
        defect: Option<u32>,
        /// Declared symbol set, space-separated (with --kind skolem-type).
        #[arg(long, value_name = "SYMBOLS")]
        symbols: Option<String>,
        /// Required 1-based null position (with --kind extended); inferred
        /// from the sequence when omitted.
        #[arg(long, value_name = "POS")]
        null_at: Option<usize>,
        /// The labeling, as space-separated symbols ("0" marks a null).
        sequence: String,
    },
    /// Print the canonical (standard-form) representative of a circle.
    Canon {
        /// The circle, as space-separated symbols.
        sequence: String,
    },
    /// Report a circle's removable edges.
    Removable {
        /// Also run the cut-and-validate oracle and compare.
        #[arg(long)]
        oracle: bool,
        /// The circle, as space-separated symbols.
        sequence: String,
    },
    /// Print every linear sequence obtained by cutting a circle open.
    SequencesOf {
        /// The circle, as space-separated symbols.
        sequence: String,
    },
    /// Build an object from one of the constructive families.
    Construct {
        #[command(subcommand)]
        what: ConstructCmd,
    },
    /// Print the growth bounds at one order.
    Bounds {
        /// Order to evaluate (any positive integer).
        #[arg(short = 'm', value_parser = clap::value_parser!(i64).range(1..))]
        order: i64,
    },
    /// Compare two counts CSV files row by row.
    DiffCounts {
        /// Left file ("bundled" for the built-in reference table).
        left: String,
        /// Right file ("bundled" for the built-in reference table).
        right: String,
    },
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Langford sequence of order 3^n with defect (3^n + 1) / 2.
    LangfordPower3 {
        #[arg(short = 'n', value_parser = clap::value_parser!(i64).range(0..=12))]
        n: i64,
    },
    /// Circle of order (3^k - 1) / 2 with at least k removable edges,
    /// glued from a chain of power-of-three Langford sequences.
    Theorem9 {
        #[arg(short = 'k', value_parser = clap::value_parser!(i64).range(1..=12))]
        k: i64,
    },
    /// Glue the sequences read from FILE (one per line, space-separated
    /// symbols; blank lines and `#` comments are skipped) into a circle.
    Glue { file: PathBuf },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Circle,
    Skolem,
    Langford,
    SkolemType,
    Extended,
}

/// A failed run: what to print and which exit code to use.
enum Failure {
    /// Bad invocation; message to stderr, exit 2.
    Usage(String),
    /// The inputs were understood but the answer is "no"; message to
    /// stderr, exit 1.
    Domain(String),
    /// Exit 1 after diagnostics were already printed.
    Reported,
}

fn usage<T>(message: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(message.into()))
}

fn domain(err: impl std::fmt::Display) -> Failure {
    Failure::Domain(err.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(Failure::Reported) => ExitCode::from(1),
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Enumerate { order, out } => cmd_enumerate(order as usize, out),
        Command::Classify {
            order,
            shards,
            threads,
            out,
            catalog,
            checkpoints,
            expect,
        } => cmd_classify(
            order as usize,
            shards as usize,
            threads as usize,
            out,
            catalog,
            checkpoints,
            expect,
        ),
        Command::CountSequences { order } => {
            println!("sequences={}", enumerate_sequences(order as usize));
            Ok(())
        }
        Command::Validate {
            kind,
            defect,
            symbols,
            null_at,
            sequence,
        } => cmd_validate(kind, defect, symbols, null_at, &sequence),
        Command::Canon { sequence } => {
            let circle = parse_circle(&sequence)?;
            let canonical = canonicalize(&circle).map_err(domain)?;
            println!("{}", format_symbol_list(canonical.circle().symbols()));
            Ok(())
        }
        Command::Removable { oracle, sequence } => cmd_removable(oracle, &sequence),
        Command::SequencesOf { sequence } => {
            let circle = parse_valid_circle(&sequence)?;
            for seq in sequences_of_circle(&circle) {
                println!("{}", format_symbol_list(seq.symbols()));
            }
            Ok(())
        }
        Command::Construct { what } => cmd_construct(what),
        Command::Bounds { order } => {
            cmd_bounds(order as usize);
            Ok(())
        }
        Command::DiffCounts { left, right } => cmd_diff_counts(&left, &right),
    }
}

fn parse_circle(input: &str) -> Result<CircleLabeling, Failure> {
    let symbols = parse_symbol_list(input).map_err(domain)?;
    CircleLabeling::new(symbols).map_err(domain)
}

fn parse_valid_circle(input: &str) -> Result<CircleLabeling, Failure> {
    let circle = parse_circle(input)?;
    let report = validate_circle(&circle);
    if !report.valid() {
        return Err(Failure::Domain(format!("not a valid circle\n{report}")));
    }
    Ok(circle)
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Domain(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_enumerate(order: usize, out: Option<PathBuf>) -> Result<(), Failure> {
    let mut records = Vec::new();
    enumerate_with_removable(order, |circle, j| {
        records.push(CatalogRecord {
            removable: j,
            circle: circle.clone(),
        });
    });
    let catalog = Catalog::new(order, records);
    write_or_print(out.as_deref(), &catalog.to_text())
}

/// The one-line classification summary: `j=0:24 j=1:96 ... total=192`.
fn classify_line(counts: &ClassifiedCounts) -> String {
    let mut line = String::new();
    for (j, n) in counts.by_removable() {
        let _ = write!(line, "j={j}:{n} ");
    }
    let _ = write!(line, "total={}", counts.total());
    line
}

fn checkpoint_path(dir: &Path, spec: &ShardSpec) -> PathBuf {
    dir.join(format!("shard-{}-of-{}.counts", spec.shard, spec.of))
}

/// Classifies one shard, going through its checkpoint file when a
/// directory is given: a parseable checkpoint for exactly this shard is
/// reused, anything else is recomputed and rewritten.
fn shard_job(
    spec: &ShardSpec,
    want_catalog: bool,
    checkpoints: Option<&Path>,
) -> Result<(ClassifiedCounts, Vec<CatalogRecord>), String> {
    if let Some(dir) = checkpoints {
        let path = checkpoint_path(dir, spec);
        if let Ok(text) = fs::read_to_string(&path) {
            match parse_shard_checkpoint(&text) {
                Ok((saved, counts)) if saved == *spec => {
                    eprintln!("checkpoint reused: {}", path.display());
                    return Ok((counts, Vec::new()));
                }
                Ok(_) => eprintln!("checkpoint ignored (different shard): {}", path.display()),
                Err(e) => eprintln!("checkpoint ignored ({e}): {}", path.display()),
            }
        }
        let counts = classify_shard(spec);
        fs::write(&path, shard_checkpoint_to_text(spec, &counts))
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
        eprintln!("checkpoint written: {}", path.display());
        return Ok((counts, Vec::new()));
    }
    if want_catalog {
        let mut counts = ClassifiedCounts::new(spec.order);
        let mut records = Vec::new();
        enumerate_shard(spec, |circle, j| {
            counts.add(j, 1);
            records.push(CatalogRecord {
                removable: j,
                circle: circle.clone(),
            });
        });
        return Ok((counts, records));
    }
    Ok((classify_shard(spec), Vec::new()))
}

fn load_counts(source: &str) -> Result<CountsTable, Failure> {
    if source == "bundled" {
        return Ok(reference_counts().clone());
    }
    let text = fs::read_to_string(source)
        .map_err(|e| Failure::Domain(format!("cannot read {source}: {e}")))?;
    CountsTable::parse(&text).map_err(|e| Failure::Domain(format!("{source}: {e}")))
}

fn cmd_classify(
    order: usize,
    shards: usize,
    threads: usize,
    out: Option<PathBuf>,
    catalog: Option<PathBuf>,
    checkpoints: Option<PathBuf>,
    expect: Option<String>,
) -> Result<(), Failure> {
    let want_catalog = catalog.is_some();
    if checkpoints.is_some() {
        if want_catalog {
            return usage("--checkpoints stores counts only; it cannot fill --catalog");
        }
        if shards < 2 {
            return usage("--checkpoints requires --shards 2 or more");
        }
    }

    let (counts, records) = if shards <= 1 {
        if want_catalog {
            let mut counts = ClassifiedCounts::new(order);
            let mut records = Vec::new();
            enumerate_with_removable(order, |circle, j| {
                counts.add(j, 1);
                records.push(CatalogRecord {
                    removable: j,
                    circle: circle.clone(),
                });
            });
            (counts, records)
        } else {
            (classify(order), Vec::new())
        }
    } else {
        if let Some(dir) = &checkpoints {
            fs::create_dir_all(dir)
                .map_err(|e| Failure::Domain(format!("cannot create {}: {e}", dir.display())))?;
        }
        // Depth-1 sharding when it is fine enough, depth-2 otherwise.
        let granularity = if make_shards(order, ShardGranularity::SecondSymbol).len() >= shards {
            ShardGranularity::SecondSymbol
        } else {
            ShardGranularity::SecondAndLargest
        };
        let specs = make_shards(order, granularity);
        let results = run_shards(&specs, threads, |spec| {
            shard_job(spec, want_catalog, checkpoints.as_deref())
        });
        let mut parts = Vec::new();
        let mut records = Vec::new();
        for result in results {
            let (shard_counts, mut shard_records) = result.map_err(Failure::Domain)?;
            parts.push(shard_counts);
            records.append(&mut shard_records);
        }
        (merge(order, parts), records)
    };

    println!("{}", classify_line(&counts));
    if let Some(path) = &out {
        write_or_print(Some(path), &CountsTable::from_classified(&counts).to_text())?;
    }
    if let Some(path) = &catalog {
        let full = Catalog::new(order, records);
        write_or_print(Some(path), &full.to_text())?;
    }
    if let Some(source) = &expect {
        let expected = load_counts(source)?;
        if !expected.orders().contains(&(order as u32)) {
            return Err(Failure::Domain(format!(
                "{source} has no rows for m={order}"
            )));
        }
        let computed = CountsTable::from_classified(&counts);
        let mismatches = diff_counts(&computed, &expected);
        if mismatches.is_empty() {
            println!("expect=ok");
        } else {
            for mm in &mismatches {
                println!(
                    "mismatch m={} {}: got {} expected {}",
                    mm.order, mm.key, mm.left, mm.right
                );
            }
            return Err(Failure::Reported);
        }
    }
    Ok(())
}

fn cmd_validate(
    kind: KindArg,
    defect: Option<u32>,
    symbols: Option<String>,
    null_at: Option<usize>,
    sequence: &str,
) -> Result<(), Failure> {
    if defect.is_some() && kind != KindArg::Langford {
        return usage("--defect only applies to --kind langford");
    }
    if symbols.is_some() && kind != KindArg::SkolemType {
        return usage("--symbols only applies to --kind skolem-type");
    }
    if null_at.is_some() && kind != KindArg::Extended {
        return usage("--null-at only applies to --kind extended");
    }

    let report = if kind == KindArg::Circle {
        let circle = parse_circle(sequence)?;
        validate_circle(&circle)
    } else {
        let entries = parse_symbol_list(sequence).map_err(domain)?;
        let seq = SkolemTypeSeq::new(entries);
        let sequence_kind = match kind {
            KindArg::Skolem => SequenceKind::Skolem,
            KindArg::Langford => SequenceKind::Langford {
                defect: match defect {
                    Some(d) => d,
                    None => return usage("--kind langford requires --defect"),
                },
            },
            KindArg::SkolemType => SequenceKind::SkolemType {
                symbols: match symbols {
                    Some(list) => {
                        let declared = parse_symbol_list(&list).map_err(domain)?;
                        Some(declared.into_iter().collect::<BTreeSet<u32>>())
                    }
                    None => None,
                },
            },
            KindArg::Extended => SequenceKind::Extended {
                null_at: null_at.unwrap_or_else(|| {
                    // Default to where the null actually is, so only the
                    // placement rules are at stake; a missing or repeated
                    // null is still flagged by the validator.
                    let nulls = seq.null_positions();
                    if nulls.len() == 1 {
                        nulls[0]
                    } else {
                        seq.len()
                    }
                }),
            },
            KindArg::Circle => unreachable!("handled above"),
        };
        validate_sequence(&seq, &sequence_kind)
    };

    println!("{report}");
    if report.valid() {
        Ok(())
    } else {
        Err(Failure::Reported)
    }
}

fn cmd_removable(oracle: bool, sequence: &str) -> Result<(), Failure> {
    let circle = parse_valid_circle(sequence)?;
    let report = removability_report(&circle);
    let edges = if report.edges.is_empty() {
        "-".to_string()
    } else {
        report
            .edges
            .iter()
            .map(|e| e.index().to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    let mut line = format!("j={} edges={edges}", report.removable);
    if oracle {
        let slow = removable_edges_oracle(&circle);
        if slow == report.edges {
            line.push_str(" agreement=ok");
        } else {
            line.push_str(" agreement=FAIL");
            println!("{line}");
            let oracle_edges: Vec<String> = slow.iter().map(|e| e.index().to_string()).collect();
            eprintln!(
                "error: oracle found edges {} but the mask algorithm found {edges}",
                if oracle_edges.is_empty() {
                    "-".to_string()
                } else {
                    oracle_edges.join(",")
                }
            );
            return Err(Failure::Reported);
        }
    }
    println!("{line}");
    Ok(())
}

fn cmd_construct(what: ConstructCmd) -> Result<(), Failure> {
    match what {
        ConstructCmd::LangfordPower3 { n } => {
            let seq = langford_power3(n as u32);
            println!("{}", format_symbol_list(seq.symbols()));
        }
        ConstructCmd::Theorem9 { k } => {
            let circle = langford_chain_circle(k as u32);
            println!("{}", format_symbol_list(circle.symbols()));
        }
        ConstructCmd::Glue { file } => {
            let text = fs::read_to_string(&file)
                .map_err(|e| Failure::Domain(format!("cannot read {}: {e}", file.display())))?;
            let mut parts = Vec::new();
            for line in text.lines() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                parts.push(SkolemTypeSeq::new(parse_symbol_list(line).map_err(domain)?));
            }
            let circle = glue(&parts).map_err(domain)?;
            println!("{}", format_symbol_list(circle.symbols()));
        }
    }
    Ok(())
}

fn cmd_bounds(order: usize) {
    let b = bounds(order);
    println!("m={}", b.order);
    println!("max_removable_bound={}", b.max_removable_bound);
    println!("circle_lower_bound={}", b.circle_lower_bound);
    println!("sequence_lower_bound={}", b.sequence_lower_bound);
    println!(
        "naive_sequence_upper_bound={}",
        b.naive_sequence_upper_bound
    );
    match b.naive_circle_upper_bound {
        Some(v) => println!("naive_circle_upper_bound={v}"),
        None => println!("naive_circle_upper_bound=-"),
    }
}

fn cmd_diff_counts(left: &str, right: &str) -> Result<(), Failure> {
    let a = load_counts(left)?;
    let b = load_counts(right)?;
    let mismatches = diff_counts(&a, &b);
    if mismatches.is_empty() {
        println!("identical");
        return Ok(());
    }
    for mm in &mismatches {
        println!(
            "mismatch m={} {}: left {} right {}",
            mm.order, mm.key, mm.left, mm.right
        );
    }
    Err(Failure::Reported)
}
