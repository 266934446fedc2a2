//! Command-line front end over the table/reduction/enumeration library.
//!
//! Exit codes: 0 success or verified; 1 property violated or mismatch;
//! 2 usage or input error; 3 cost limit exceeded.

mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};

use qtsemi::analysis::{analyze, AnalyzeOptions, AssocMethod};
use qtsemi::enumeration::{
    brute_force_counts, formula_counts_report, verify_table1_with_fault, AssocOracle,
    BruteForceOptions, ExecMode, NParity, SearchStrategy, DEFAULT_SEARCH_BUDGET,
};
use qtsemi::table::{parse_table, OperationTable, DEFAULT_BISYMMETRY_BUDGET};

const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_COST: u8 = 3;

#[derive(Parser)]
#[command(name = "qtsemi", version, about = "Quasitrivial n-ary semigroup toolbox")]
struct Cli {
    /// Suppress the leading `#` header line on human-readable output.
    #[arg(long, global = true)]
    no_header: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a table file and print an analysis report.
    #[command(group(ArgGroup::new("method").args(["fast", "naive"])))]
    Check {
        table_file: PathBuf,
        /// Use the quasitrivial fast associativity path where applicable.
        #[arg(long)]
        fast: bool,
        /// Force the exhaustive associativity scan (the default).
        #[arg(long)]
        naive: bool,
        /// With --fast, cross-run the exhaustive scan and fail on disagreement.
        #[arg(long)]
        verify: bool,
        /// Also run the cost-guarded bisymmetry check.
        #[arg(long)]
        bisymmetric: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print the binary (or ternary) reductions of an associative
    /// quasitrivial table.
    #[command(group(ArgGroup::new("which").args(["all", "ternary", "neutral"])))]
    Reduce {
        table_file: PathBuf,
        /// Print every binary reduction (the default).
        #[arg(long)]
        all: bool,
        /// Print a ternary reduction instead (odd arity only).
        #[arg(long)]
        ternary: bool,
        /// Print the reduction through this neutral element (1-based).
        #[arg(long)]
        neutral: Option<usize>,
    },
    /// Exact counting sequences at one (k, n), by formula and/or brute force.
    #[command(group(ArgGroup::new("source").args(["formula", "brute", "both"])))]
    #[command(group(ArgGroup::new("format").args(["json", "csv"])))]
    Count {
        #[arg(long)]
        k: u64,
        /// Arity; only its parity matters for the formulas.
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Evaluate the closed-form expressions (the default).
        #[arg(long)]
        formula: bool,
        /// Count by exhaustive search over quasitrivial tables.
        #[arg(long)]
        brute: bool,
        /// Run both and fail on any disagreement.
        #[arg(long)]
        both: bool,
        /// Associativity oracle for the brute-force counts.
        #[arg(long, value_parser = ["naive", "fast"], default_value = "naive")]
        oracle: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Stream generated tables, separated by `---` lines.
    #[command(group(ArgGroup::new("family").required(true).args(["binary_assoc_qt", "qt"])))]
    Enumerate {
        #[arg(long)]
        k: usize,
        /// All associative quasitrivial binary tables on [k].
        #[arg(long)]
        binary_assoc_qt: bool,
        /// All quasitrivial tables of shape (k, n).
        #[arg(long, requires = "n")]
        qt: bool,
        #[arg(long)]
        n: Option<usize>,
        /// Stop after this many tables.
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Recompute the six published sequences for k = 1..6 and diff them
    /// against the embedded dataset.
    VerifyTable1 {
        #[arg(long)]
        json: bool,
        /// Fault injection for tests: `sequence:k` bumps one recomputed cell.
        #[arg(long, hide = true)]
        inject_fault: Option<String>,
    },
    /// Kernel (contour) output for a table, as DOT or a value grid.
    #[command(group(ArgGroup::new("style").required(true).args(["dot", "grid"])))]
    Contour {
        table_file: PathBuf,
        /// DOT graph: one node per tuple, one spanning path per kernel class.
        #[arg(long)]
        dot: bool,
        /// k x k grid of outputs (binary tables only).
        #[arg(long)]
        grid: bool,
        /// Weak ordering (e.g. `2 < 4 < 3 ~ 1`) permuting the grid axes.
        #[arg(long)]
        order: Option<String>,
    },
}

fn main() -> ExitCode {
    // die quietly when a downstream pipe closes (e.g. `enumerate | head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("qtsemi: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    fn violation(message: impl Into<String>) -> Failure {
        Failure { code: EXIT_VIOLATION, message: message.into() }
    }
}

impl From<qtsemi::Error> for Failure {
    fn from(err: qtsemi::Error) -> Failure {
        let code = match &err {
            qtsemi::Error::CostLimitExceeded { .. } => EXIT_COST,
            qtsemi::Error::Parse(_)
            | qtsemi::Error::LengthMismatch { .. }
            | qtsemi::Error::ValueOutOfRange { .. }
            | qtsemi::Error::ArityOrSizeInvalid { .. }
            | qtsemi::Error::ArityMismatch { .. }
            | qtsemi::Error::ArityTooSmall { .. }
            | qtsemi::Error::EvenTargetArity { .. }
            | qtsemi::Error::TupleArityMismatch { .. }
            | qtsemi::Error::NotAPermutation
            | qtsemi::Error::Domain(_) => EXIT_USAGE,
            _ => EXIT_VIOLATION,
        };
        Failure { code, message: err.to_string() }
    }
}

fn cost_budget() -> u64 {
    std::env::var("COST_BUDGET")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_SEARCH_BUDGET)
}

fn load_table(path: &PathBuf) -> Result<OperationTable, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    parse_table(&text).map_err(Failure::from)
}

fn header(no_header: bool, what: &str) {
    if !no_header {
        println!("# qtsemi {what}");
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Check { table_file, fast, naive: _, verify, bisymmetric, json } => {
            let table = load_table(&table_file)?;
            let options = AnalyzeOptions {
                assoc: if fast { AssocMethod::FastWhenQuasitrivial } else { AssocMethod::Naive },
                bisymmetry_budget: bisymmetric.then(|| {
                    std::env::var("COST_BUDGET")
                        .ok()
                        .and_then(|v| v.parse().ok())
                        .unwrap_or(DEFAULT_BISYMMETRY_BUDGET)
                }),
            };
            let report = analyze(&table, &options);
            if json {
                println!("{}", serde_json::to_string_pretty(&report.to_json()).unwrap());
            } else {
                header(cli.no_header, "check");
                print!("{}", render::analysis_text(&report));
            }
            if verify && fast && table.is_quasitrivial() && table.n() >= 2 {
                let fast_verdict = qtsemi::analysis::is_associative_fast(&table)?;
                let naive_verdict = table.is_associative_naive()?;
                if fast_verdict != naive_verdict {
                    return Err(Failure::violation(format!(
                        "associativity decision mismatch: fast says {fast_verdict}, exhaustive scan says {naive_verdict}"
                    )));
                }
            }
            Ok(0)
        }

        Command::Reduce { table_file, all: _, ternary, neutral } => {
            let table = load_table(&table_file)?;
            if !table.is_quasitrivial() {
                return Err(Failure::violation("input table is not quasitrivial"));
            }
            if table.n() < 2 || !table.is_associative_naive()? {
                return Err(Failure::violation("input table is not associative"));
            }
            header(cli.no_header, "reduce");
            if ternary {
                let h = qtsemi::reduction::ternary_reduction(&table, None)?;
                println!("# ternary reduction");
                print!("{h}");
                return Ok(0);
            }
            if let Some(e) = neutral {
                if e < 1 {
                    return Err(Failure::usage("neutral elements are 1-based"));
                }
                let g = qtsemi::reduction::reduction_from_neutral(&table, (e - 1) as u8)?;
                println!("# reduction: from-neutral e={e}");
                print!("{g}");
                return Ok(0);
            }
            let set = qtsemi::reduction::all_binary_reductions(&table)?;
            let mut first = true;
            for (origin, g) in &set.reductions {
                if !first {
                    println!("---");
                }
                first = false;
                match origin {
                    qtsemi::reduction::ReductionOrigin::FromNeutral(e) => {
                        println!("# reduction: from-neutral e={}", *e as usize + 1)
                    }
                    qtsemi::reduction::ReductionOrigin::Candidate => {
                        println!("# reduction: candidate (no neutral element)")
                    }
                }
                print!("{g}");
            }
            Ok(0)
        }

        Command::Count { k, n, formula: _, brute, both, oracle, json, csv } => {
            if k < 1 {
                return Err(Failure::usage("count needs k >= 1"));
            }
            let report = formula_counts_report(k, NParity::of(n))?;
            let brute_outcome = if brute || both {
                if k > usize::MAX as u64 {
                    return Err(Failure::usage("k too large for brute force"));
                }
                let options = BruteForceOptions {
                    oracle: if oracle == "fast" { AssocOracle::Fast } else { AssocOracle::Naive },
                    strategy: SearchStrategy::Pruned,
                    budget: cost_budget(),
                    mode: ExecMode::Parallel,
                    collect_tables: false,
                };
                Some(brute_force_counts(k as usize, n, &options)?)
            } else {
                None
            };

            let mismatches = match &brute_outcome {
                Some(outcome) if both => {
                    qtsemi::enumeration::compare_formula_brute(&report, outcome)
                }
                _ => Vec::new(),
            };

            if json {
                let mut value = if brute && !both {
                    render::brute_json(brute_outcome.as_ref().unwrap())
                } else {
                    report.to_json()
                };
                if both {
                    value["brute_force"] = render::brute_json(brute_outcome.as_ref().unwrap());
                    value["matches"] = serde_json::json!(mismatches.is_empty());
                }
                println!("{}", serde_json::to_string_pretty(&value).unwrap());
            } else if csv {
                println!("{}", qtsemi::enumeration::CountsReport::csv_header());
                println!("{}", report.to_csv_row());
            } else {
                header(cli.no_header, "count");
                if brute && !both {
                    print!("{}", render::brute_text(brute_outcome.as_ref().unwrap()));
                } else {
                    print!("{}", render::counts_text(&report));
                    if let Some(outcome) = &brute_outcome {
                        print!("{}", render::brute_text(outcome));
                    }
                    if both {
                        println!("{:<20}{}", "matches", mismatches.is_empty());
                    }
                }
            }
            if !mismatches.is_empty() {
                return Err(Failure::violation(format!(
                    "formula and brute force disagree: {}",
                    mismatches.join("; ")
                )));
            }
            Ok(0)
        }

        Command::Enumerate { k, binary_assoc_qt, qt, n, limit } => {
            header(cli.no_header, "enumerate");
            let limit = limit.unwrap_or(u64::MAX);
            fn emit_stream(
                tables: impl Iterator<Item = OperationTable>,
                limit: u64,
            ) {
                for (i, t) in tables.take(limit as usize).enumerate() {
                    if i > 0 {
                        println!("---");
                    }
                    print!("{t}");
                }
            }
            if binary_assoc_qt {
                let tables = qtsemi::enumeration::generate_quasitrivial_associative_binary(k)?;
                emit_stream(tables.into_iter(), limit);
            } else {
                debug_assert!(qt);
                let n = n.expect("clap enforces --n with --qt");
                let tables = qtsemi::enumeration::generate_quasitrivial_tables(k, n, cost_budget())?;
                emit_stream(tables, limit);
            }
            Ok(0)
        }

        Command::VerifyTable1 { json, inject_fault } => {
            let fault = match &inject_fault {
                None => None,
                Some(spec) => {
                    let (column, k) = spec
                        .split_once(':')
                        .ok_or_else(|| Failure::usage("fault spec is `sequence:k`"))?;
                    let k: u64 =
                        k.parse().map_err(|_| Failure::usage("fault spec is `sequence:k`"))?;
                    Some((column, k))
                }
            };
            let verification = verify_table1_with_fault(fault);
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&render::table1_json(&verification)).unwrap()
                );
            } else {
                header(cli.no_header, "verify-table1");
                print!("{}", render::table1_text(&verification));
            }
            if verification.all_match() {
                Ok(0)
            } else {
                let cells: Vec<String> = verification
                    .mismatches()
                    .iter()
                    .map(|c| format!("{}(k={}): expected {}, computed {}", c.column, c.k, c.expected, c.computed))
                    .collect();
                Err(Failure::violation(format!("golden mismatch at {}", cells.join(", "))))
            }
        }

        Command::Contour { table_file, dot, grid, order } => {
            let table = load_table(&table_file)?;
            if grid && table.n() != 2 {
                return Err(Failure::usage(format!(
                    "--grid needs a binary table, this one has arity {}",
                    table.n()
                )));
            }
            let order_seq = match order {
                None => (0..table.k() as u8).collect::<Vec<u8>>(),
                Some(text) => {
                    let w = qtsemi::orderings::parse_weak_ordering(&text).map_err(Failure::from)?;
                    if w.k() != table.k() {
                        return Err(Failure::usage(format!(
                            "ordering covers {} elements, table carrier has {}",
                            w.k(),
                            table.k()
                        )));
                    }
                    w.blocks().iter().flatten().copied().collect()
                }
            };
            if grid {
                header(cli.no_header, "contour");
                print!("{}", render::grid_text(&table, &order_seq));
            } else {
                debug_assert!(dot);
                print!("{}", render::dot_text(&table));
            }
            Ok(0)
        }
    }
}
