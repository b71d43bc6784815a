//! Command-line front end: character tables, commutator counting, tuple-graph
//! orbit summaries, and the verification suites, all with machine-readable
//! JSON on stdout and human summaries on stderr.
//!
//! Exit codes: 0 success, 2 usage or resource limit, 3 domain rejection,
//! 4 excluded case, 1 unexpected failure.

mod verify;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use symkit::characters::CharacterTable;
use symkit::counting::{
    commutator_count_alt, commutator_count_sym, generating_commutator_count,
    intransitive_commutator_count, CommutatorSweep, TableProvider, DEFAULT_SWEEP_CEILING,
};
use symkit::partitions::{class_descriptor, Partition};
use symkit::perm::Permutation;
use symkit::tsystems::{
    pra_component_count, t_system_orbits, GroupTag, OrbitSummary, DEFAULT_TUPLE_CEILING,
};
use symkit::Error;

#[derive(Parser)]
#[command(
    name = "symkit",
    version,
    about = "Exact symmetric-group combinatorics toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CountMode {
    /// Count over the full symmetric group.
    Sym,
    /// Count over the alternating group.
    Alt,
    /// Count pairs that generate the alternating group (anchor type only).
    Generating,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Group {
    Alt,
    Sym,
}

impl Group {
    fn tag(self) -> GroupTag {
        match self {
            Group::Alt => GroupTag::Alternating,
            Group::Sym => GroupTag::Symmetric,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Emit the exact character table of degree n.
    Chartab {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
        /// Directory for the binary table cache (default: SYMKIT_CACHE_DIR).
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Count sigma with [pi, sigma] in a target class.
    Count {
        #[arg(long)]
        n: u32,
        /// Cycle type of pi, e.g. 5,2,2.
        #[arg(long)]
        pi: String,
        /// Cycle type of the target class, e.g. 3,3,3.
        #[arg(long = "class")]
        class: String,
        #[arg(long, value_enum)]
        mode: CountMode,
        /// Also run the brute-force sweep and attach its count.
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
        #[arg(long, default_value_t = DEFAULT_SWEEP_CEILING)]
        ceiling: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Count T-systems (Nielsen + automorphism orbits) of generating k-tuples.
    Tsystems {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, value_enum)]
        group: Group,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
        #[arg(long, default_value_t = DEFAULT_TUPLE_CEILING)]
        ceiling: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Count connected components of the product replacement graph.
    Pra {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, value_enum)]
        group: Group,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
        #[arg(long, default_value_t = DEFAULT_TUPLE_CEILING)]
        ceiling: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Run a named verification suite; one JSON line per check.
    Verify {
        /// orthogonality | frobenius | commutator | tsystem-chain |
        /// partition-identity | hardy-ramanujan | lemma256
        suite: String,
        #[arg(long, default_value_t = DEFAULT_SWEEP_CEILING)]
        ceiling: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::TableLimit { .. }
        | Error::CeilingExceeded { .. }
        | Error::Parse { .. }
        | Error::InvalidPartition
        | Error::InvalidPermutation => 2,
        Error::SplittingClass(_)
        | Error::NotInAlternating(_)
        | Error::OddPermutation
        | Error::DegreeMismatch { .. }
        | Error::ArityNotTwo { .. }
        | Error::Unsupported(_) => 3,
        Error::ExcludedDegree => 4,
        _ => 1,
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli.command) {
        eprintln!("error: {e}");
        std::process::exit(exit_code(&e));
    }
}

fn cache_dir(explicit: Option<PathBuf>) -> Option<PathBuf> {
    explicit.or_else(|| std::env::var_os("SYMKIT_CACHE_DIR").map(PathBuf::from))
}

/// Loads the table for degree `n` from the cache directory when possible;
/// a corrupt or unreadable cache file is rebuilt with a warning.
fn table_with_cache(n: u32, dir: &Option<PathBuf>) -> Result<CharacterTable, Error> {
    let Some(dir) = dir else {
        return CharacterTable::build(n);
    };
    let path = dir.join(format!("chartab-v1-n{n}.bin"));
    if let Ok(bytes) = std::fs::read(&path) {
        match CharacterTable::from_binary(&bytes) {
            Ok(table) if table.n() == n => return Ok(table),
            Ok(_) => eprintln!(
                "warning: cache file {} is for another degree; rebuilding",
                path.display()
            ),
            Err(e) => eprintln!("warning: {e}; rebuilding {}", path.display()),
        }
    }
    let table = CharacterTable::build(n)?;
    std::fs::create_dir_all(dir)?;
    std::fs::write(&path, table.to_binary())?;
    Ok(table)
}

fn reject_csv(format: OutputFormat) -> Result<(), Error> {
    if format == OutputFormat::Csv {
        return Err(Error::Parse {
            what: "output format",
            detail: "csv is only available for chartab".into(),
        });
    }
    Ok(())
}

fn parse_type(n: u32, what: &'static str, label: &str) -> Result<Partition, Error> {
    let p = Partition::parse_label(label)?;
    if p.n() != n {
        return Err(Error::Parse {
            what,
            detail: format!("{label} sums to {}, expected {n}", p.n()),
        });
    }
    Ok(p)
}

fn summary_json(
    group: GroupTag,
    n: usize,
    k: usize,
    kind: &str,
    s: &OrbitSummary,
) -> serde_json::Value {
    let hist: serde_json::Map<String, serde_json::Value> = s
        .orbit_sizes_histogram()
        .into_iter()
        .map(|(size, mult)| (size.to_string(), serde_json::Value::from(mult)))
        .collect();
    serde_json::json!({
        "group": group.as_str(),
        "n": n,
        "k": k,
        "tau_or_kappa": kind,
        "orbit_count": s.orbit_count,
        "orbit_sizes_histogram": hist,
        "total": s.total,
    })
}

fn run(command: Command) -> Result<(), Error> {
    match command {
        Command::Chartab { n, format, cache } => {
            let table = table_with_cache(n, &cache_dir(cache))?;
            match format {
                OutputFormat::Json => println!("{}", table.to_json()),
                OutputFormat::Csv => print!("{}", table.to_csv()),
            }
            eprintln!(
                "character table of degree {n}: {} characters x {} classes",
                table.num_classes(),
                table.num_classes()
            );
            Ok(())
        }
        Command::Count {
            n,
            pi,
            class,
            mode,
            oracle,
            format,
            ceiling,
            threads,
            cache,
        } => {
            reject_csv(format)?;
            let pi_type = parse_type(n, "pi cycle type", &pi)?;
            let class_type = parse_type(n, "target cycle type", &class)?;
            let pi = Permutation::with_cycle_type(&pi_type);
            let c = class_descriptor(&class_type);
            let dir = cache_dir(cache);
            let mode_name = match mode {
                CountMode::Sym => "sym",
                CountMode::Alt => "alt",
                CountMode::Generating => "generating",
            };
            let mut extra = serde_json::Map::new();
            let report = match mode {
                CountMode::Sym => {
                    let table = table_with_cache(n, &dir)?;
                    let mut report = commutator_count_sym(&pi, &c, &table)?;
                    if oracle {
                        let counts = symkit::counting::symmetric_commutator_class_counts(
                            &pi, ceiling, threads,
                        )?;
                        report.brute_force =
                            Some(counts.get(&class_type).copied().unwrap_or(0).into());
                    }
                    report
                }
                CountMode::Alt => {
                    let table = table_with_cache(n, &dir)?;
                    let mut report = commutator_count_alt(&pi, &c, &table)?;
                    if oracle {
                        let sweep = CommutatorSweep::run(&pi, ceiling, threads)?;
                        report.brute_force = Some(sweep.counts(&class_type).total.into());
                    }
                    report
                }
                CountMode::Generating => {
                    let mut tables = TableProvider::new();
                    tables.insert(table_with_cache(n, &dir)?);
                    let sweep = CommutatorSweep::run(&pi, ceiling, threads)?;
                    let intr = intransitive_commutator_count(&sweep, &c, &mut tables)?;
                    extra.insert("intransitive".into(), intr.exact.to_string().into());
                    extra.insert(
                        "split_upper_bound".into(),
                        intr.split_upper_bound.to_string().into(),
                    );
                    generating_commutator_count(&sweep, &c, &mut tables)?
                }
            };
            let mut line = serde_json::json!({
                "command": "count",
                "n": n,
                "pi": pi_type,
                "class": class_type,
                "mode": mode_name,
            });
            let obj = line.as_object_mut().unwrap();
            for (k, v) in report.to_json().as_object().unwrap() {
                obj.insert(k.clone(), v.clone());
            }
            for (k, v) in extra {
                obj.insert(k, v);
            }
            println!("{line}");
            let oracle_note = match &report.brute_force {
                Some(b) if *b == report.exact => "  (oracle agrees)",
                Some(_) => "  (ORACLE DISAGREES)",
                None => "",
            };
            eprintln!(
                "count mode={mode_name} pi={pi_type} class={class_type}: {}{}",
                report.exact, oracle_note
            );
            if report
                .brute_force
                .as_ref()
                .is_some_and(|b| *b != report.exact)
            {
                return Err(Error::SelfCheck("count oracle disagreed".into()));
            }
            Ok(())
        }
        Command::Tsystems {
            n,
            k,
            group,
            format,
            ceiling,
            threads,
        } => {
            reject_csv(format)?;
            let tag = group.tag();
            let orbits = t_system_orbits(n, tag, k, ceiling, threads)?;
            let kappa = pra_component_count(n, tag, k, ceiling, threads)?;
            let mut tau_line = summary_json(tag, n, k, "tau", &orbits.summary);
            let reps: Vec<Vec<String>> = orbits
                .representatives
                .iter()
                .map(|t| t.to_cycle_strings())
                .collect();
            tau_line["representatives"] = serde_json::json!(reps);
            println!("{tau_line}");
            println!("{}", summary_json(tag, n, k, "kappa", &kappa));
            eprintln!(
                "tau_{k} = {} <= kappa_{k} = {}: {}; invariant constant on orbits: {}",
                orbits.summary.orbit_count,
                kappa.orbit_count,
                orbits.summary.orbit_count <= kappa.orbit_count,
                orbits.invariant_constant
            );
            Ok(())
        }
        Command::Pra {
            n,
            k,
            group,
            format,
            ceiling,
            threads,
        } => {
            reject_csv(format)?;
            let tag = group.tag();
            let kappa = pra_component_count(n, tag, k, ceiling, threads)?;
            println!("{}", summary_json(tag, n, k, "kappa", &kappa));
            eprintln!(
                "product replacement graph on {} tuples: {} components",
                kappa.total, kappa.orbit_count
            );
            Ok(())
        }
        Command::Verify {
            suite,
            ceiling,
            threads,
            cache,
        } => verify::run_suite(&suite, ceiling, threads, &cache_dir(cache)),
    }
}
