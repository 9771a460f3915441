//! `reidemeister`: twisted conjugacy classes, Reidemeister numbers, exact
//! character tables, and a property-verification harness for finite
//! groups.
//!
//! Exit codes: 0 on success, 1 when a verified property fails or reports
//! are inconsistent, 2 on load or usage errors.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use reidemeister::twisted::{ReidemeisterMethod, SpectrumScope};
use reidemeister::DEFAULT_ORDER_CAP;

use reidemeister_cli::commands::{self, to_json_value};
use reidemeister_cli::corpus::{self, Corpus};
use reidemeister_cli::report::Verdict;
use reidemeister_cli::sources;
use reidemeister_cli::verify::{self, VerifyOptions};
use reidemeister_cli::CliError;

#[derive(Parser)]
#[command(name = "reidemeister")]
#[command(about = "Twisted conjugacy and Reidemeister numbers on finite groups")]
#[command(version)]
struct Cli {
    /// Emit JSON instead of human-readable text
    #[arg(long, global = true)]
    json: bool,

    /// Seed for deterministic sampling
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Skip corpus groups above this order
    #[arg(long, global = true)]
    max_order: Option<usize>,

    /// Cap on sampled endomorphism pairs per group
    #[arg(long, global = true)]
    max_pairs: Option<usize>,

    #[command(subcommand)]
    command: Commands,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Orbits,
    Burnside,
    ClassSum,
    Characters,
    All,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ScopeArg {
    Aut,
    End,
}

#[derive(Subcommand)]
enum Commands {
    /// Summarise a group: order, classes, centre, solvability
    Group {
        /// `builtin:` URI or path to a group JSON file
        source: String,
    },
    /// Compute R(phi, psi) by one or all methods
    Reidemeister {
        source: String,
        /// Morphism spec: id | trivial | inner:H | gens:I,J,.. | file
        phi: String,
        psi: String,
        #[arg(long, value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
        /// List twisted class representatives and sizes
        #[arg(long)]
        classes: bool,
    },
    /// Reidemeister spectrum over Aut(G) or End(G)
    Spectrum {
        source: String,
        #[arg(long, value_enum, default_value_t = ScopeArg::Aut)]
        scope: ScopeArg,
        /// Cap on enumerated morphisms
        #[arg(long, default_value_t = 1_000_000)]
        max_morphisms: usize,
    },
    /// Export the exact character table as JSON
    Chartable {
        source: String,
        /// Re-verify the orthogonality relations before printing
        #[arg(long)]
        check: bool,
    },
    /// Run the property-verification suite over a corpus
    Verify {
        /// Corpus JSON file; the built-in corpus when omitted
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Comma-separated property names to run
        #[arg(long, value_delimiter = ',')]
        properties: Option<Vec<String>>,
        /// Only verify the named group
        #[arg(long)]
        group: Option<String>,
        /// Write the JSONL records to a file
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Find fixed-point-free automorphisms and check solvability
    Fpf {
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
    /// Divisor-sum and prime-power congruences for one endomorphism
    Congruence {
        source: String,
        psi: String,
        #[arg(long, default_value_t = 12)]
        n_max: u64,
        #[arg(long, value_delimiter = ',', default_values_t = [2u64, 3, 5, 7])]
        primes: Vec<u64>,
    },
}

fn main() -> ExitCode {
    // Die quietly when stdout closes early (e.g. piped into `head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn load_corpus_arg(cli: &Cli, path: &Option<PathBuf>) -> Result<Corpus, CliError> {
    let mut corpus = match path {
        Some(p) => corpus::load_corpus(p)?,
        None => corpus::default_corpus(),
    };
    if let Some(seed) = cli.seed {
        corpus.seed = seed;
    }
    if let Some(max_pairs) = cli.max_pairs {
        corpus.max_pairs = max_pairs;
    }
    if cli.max_order.is_some() {
        corpus.max_order = cli.max_order;
    }
    Ok(corpus)
}

fn dispatch(cli: &Cli) -> Result<ExitCode, CliError> {
    match &cli.command {
        Commands::Group { source } => {
            let group = sources::load_group(source, DEFAULT_ORDER_CAP)?;
            let summary = commands::group_summary(&group);
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&to_json_value(&summary)).unwrap());
            } else {
                println!("{}: order {}, exponent {}", summary.name, summary.order, summary.exponent);
                println!(
                    "  {} conjugacy classes, sizes {:?}",
                    summary.class_count, summary.class_sizes
                );
                println!(
                    "  centre order {}, abelian: {}, solvable: {}",
                    summary.center_order, summary.abelian, summary.solvable
                );
                println!("  generating set {:?}", summary.generating_set);
            }
            Ok(ExitCode::SUCCESS)
        }
        Commands::Reidemeister { source, phi, psi, method, classes } => {
            let group = sources::load_group(source, DEFAULT_ORDER_CAP)?;
            let phi = sources::load_morphism(&group, source, phi)?;
            let psi = sources::load_morphism(&group, source, psi)?;
            let methods: Vec<ReidemeisterMethod> = match method {
                MethodArg::Orbits => vec![ReidemeisterMethod::Orbits],
                MethodArg::Burnside => vec![ReidemeisterMethod::Burnside],
                MethodArg::ClassSum => vec![ReidemeisterMethod::ClassSum],
                MethodArg::Characters => vec![ReidemeisterMethod::Characters],
                MethodArg::All => ReidemeisterMethod::ALL.to_vec(),
            };
            let summary = commands::reidemeister_summary(&group, &phi, &psi, &methods, *classes)?;
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&to_json_value(&summary)).unwrap());
            } else {
                for mv in &summary.values {
                    println!("R({}, {}) = {}  [{:?}]", summary.phi, summary.psi, mv.value, mv.method);
                }
                if summary.values.len() > 1 {
                    println!("agreement: {}", if summary.agreement { "yes" } else { "NO" });
                }
                if let Some(classes) = &summary.classes {
                    for c in classes {
                        println!(
                            "  class of {} (index {}): size {}",
                            c.representative_name, c.representative, c.size
                        );
                    }
                }
            }
            Ok(if summary.agreement { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Commands::Spectrum { source, scope, max_morphisms } => {
            let group = sources::load_group(source, DEFAULT_ORDER_CAP)?;
            let scope = match scope {
                ScopeArg::Aut => SpectrumScope::Aut,
                ScopeArg::End => SpectrumScope::End,
            };
            let spectrum = commands::spectrum(&group, scope, *max_morphisms)?;
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&to_json_value(&spectrum)).unwrap());
            } else {
                println!("spectrum of {} over {:?}: {:?}", group.name(), scope, spectrum.spectrum);
                for (value, count) in &spectrum.multiplicities {
                    println!("  R = {value}: {count} morphisms");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Commands::Chartable { source, check } => {
            let group = sources::load_group(source, DEFAULT_ORDER_CAP)?;
            let export = commands::chartable(&group, *check)?;
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&to_json_value(&export)).unwrap());
            } else {
                print!("{}", commands::render_chartable(&export));
            }
            Ok(ExitCode::SUCCESS)
        }
        Commands::Verify { corpus: corpus_path, properties, group, report } => {
            let corpus = load_corpus_arg(cli, corpus_path)?;
            let opts = VerifyOptions {
                properties: properties.clone(),
                group_filter: group.clone(),
                seed: cli.seed,
                max_pairs: cli.max_pairs,
                max_order: cli.max_order,
            };
            let outcome = verify::run(&corpus, &opts)?;
            if let Some(path) = report {
                let mut file = std::fs::File::create(path)
                    .map_err(|e| CliError::load(path.display().to_string(), e))?;
                for record in &outcome.records {
                    writeln!(file, "{}", serde_json::to_string(record).unwrap())
                        .map_err(|e| CliError::load(path.display().to_string(), e))?;
                }
            }
            if cli.json {
                for record in &outcome.records {
                    println!("{}", serde_json::to_string(record).unwrap());
                }
                eprintln!("{}", serde_json::to_string(&outcome.summary).unwrap());
            } else {
                for record in &outcome.records {
                    if record.verdict == Verdict::Fail {
                        println!(
                            "FAIL {} [{}] {}: {}",
                            record.property,
                            record.group,
                            record.instance,
                            record
                                .witness
                                .as_ref()
                                .map(|w| w.to_string())
                                .unwrap_or_default()
                        );
                        if let Some(repro) = &record.repro {
                            println!("     reproduce: {repro}");
                        }
                    }
                }
                println!(
                    "verified {} instances over {} groups: {} passed, {} failed ({} ms, seed {})",
                    outcome.summary.total,
                    outcome.summary.groups.len(),
                    outcome.summary.passed,
                    outcome.summary.failed,
                    outcome.summary.elapsed_ms,
                    outcome.summary.seed,
                );
                for (property, tally) in &outcome.summary.per_property {
                    println!(
                        "  {property}: {} passed, {} failed",
                        tally.passed, tally.failed
                    );
                }
            }
            Ok(if outcome.all_passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Commands::Fpf { corpus: corpus_path } => {
            let corpus = load_corpus_arg(cli, corpus_path)?;
            let report = commands::fpf_report(&corpus)?;
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&to_json_value(&report)).unwrap());
            } else {
                print!("{}", commands::render_fpf(&report));
            }
            Ok(if report.consistent { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Commands::Congruence { source, psi, n_max, primes } => {
            let group = sources::load_group(source, DEFAULT_ORDER_CAP)?;
            let psi = sources::load_morphism(&group, source, psi)?;
            let summary = commands::congruence_summary(&group, &psi, *n_max, primes)?;
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&to_json_value(&summary)).unwrap());
            } else {
                for rep in &summary.gauss {
                    println!(
                        "n = {:>2}, theta = {:<10}: total {} {} 0 mod {}",
                        rep.n,
                        rep.theta,
                        rep.total,
                        if rep.passes { "=" } else { "!=" },
                        rep.n
                    );
                }
                for rep in &summary.prime {
                    println!(
                        "p = {}: R(psi^p) = {}, R(psi) = {} -> {}",
                        rep.p,
                        rep.r_psi_p,
                        rep.r_psi,
                        if rep.passes { "congruent" } else { "NOT congruent" }
                    );
                }
            }
            Ok(if summary.all_pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}
