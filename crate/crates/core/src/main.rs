use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ordertree::error::{Error, Result};
use ordertree::extract::{audit_clause, extract_assignment};
use ordertree::io::{self, Format};
use ordertree::oracle::{self, DEFAULT_TOPOLOGY_CAP};
use ordertree::realization::check_realization;
use ordertree::realize::build_realization;
use ordertree::reduction::encode;
use ordertree::{Assignment, Rational, SatCase};

/// Tree reconstruction from order information: structures, realizations and
/// the 3-SAT encoding.
#[derive(Parser, Debug)]
#[command(name = "ordertree", version)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Size cap for exhaustive searches.
    #[arg(long, global = true, default_value_t = DEFAULT_TOPOLOGY_CAP)]
    cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Encode a 3-SAT case (DIMACS) as a midpoints structure.
    Encode {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Convert between the midpoints and triples formats.
    Convert {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check whether a tree realizes a midpoints structure.
    Check {
        /// Structure file (midpoints or triples).
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        tree: PathBuf,
        /// Report file (default: stdout).
        #[arg(long)]
        output: Option<PathBuf>,
        /// List every pair, not only failures.
        #[arg(long)]
        all: bool,
    },
    /// Build the explicit tree for a truth assignment and verify it.
    Realize {
        #[arg(long)]
        input: PathBuf,
        /// Signed variable list, e.g. "1 -2 -3 4".
        #[arg(long, allow_hyphen_values = true)]
        assignment: String,
        /// Tree file (default: stdout).
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Read a truth assignment off a tree for an encoded case.
    Extract {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        tree: PathBuf,
    },
    /// Decide realizability by exhaustive search over binary topologies.
    Oracle {
        #[arg(long)]
        input: PathBuf,
        /// Witness tree file.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Count realizable structures on n elements.
    Census {
        #[arg(long)]
        n: usize,
        /// Sample this many random structures instead of all of them.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// List every satisfying assignment of a 3-SAT case.
    Sat {
        #[arg(long)]
        input: PathBuf,
    },
    /// One-clause case with no realization on its midpoints geometry.
    DemoWarnow {
        #[arg(long)]
        input: PathBuf,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_structure(path: &Path) -> Result<ordertree::MidpointsStructure> {
    let text = read(path)?;
    match io::detect_format(&text)? {
        Format::Midpoints => io::read_midpoints(&text),
        Format::Triples => io::read_triples(&text)?.to_midpoints(),
        Format::Tree => Err(Error::InvalidInput(format!("{} is a tree file", path.display()))),
    }
}

fn read_case(path: &Path) -> Result<SatCase> {
    SatCase::parse_dimacs(&read(path)?)
}

/// `Ok(true)` is a positive decision (exit 0), `Ok(false)` a negative one.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Encode { input, output } => {
            let enc = encode(&read_case(&input)?)?;
            emit(output.as_deref(), &io::write_midpoints(enc.structure()))?;
            eprintln!("elements {}", enc.len());
            Ok(true)
        }
        Command::Convert { input, output } => {
            let text = read(&input)?;
            let out = match io::detect_format(&text)? {
                Format::Midpoints => io::write_triples(&io::read_midpoints(&text)?.to_triples()?),
                Format::Triples => io::write_midpoints(&io::read_triples(&text)?.to_midpoints()?),
                Format::Tree => return Err(Error::InvalidInput("cannot convert a tree file".into())),
            };
            emit(output.as_deref(), &out)?;
            Ok(true)
        }
        Command::Check { input, tree, output, all } => {
            let m = read_structure(&input)?;
            let t = io::read_tree(&read(&tree)?)?;
            if **t.ground() != **m.ground() {
                return Err(Error::InvalidInput("tree and structure list different ground sets".into()));
            }
            let report = check_realization(&m, &t)?;
            emit(output.as_deref(), &report.render(&m, all))?;
            Ok(report.is_ok())
        }
        Command::Realize { input, assignment, output, report } => {
            let case = read_case(&input)?;
            let h = Assignment::parse(&assignment, case.num_vars())?;
            let enc = encode(&case)?;
            let (t, rep) = build_realization::<Rational>(&enc, &h)?;
            emit(output.as_deref(), &io::write_tree(&t))?;
            if let Some(p) = report {
                emit(Some(&p), &rep.render(enc.structure(), false))?;
            }
            eprintln!(
                "assignment {} satisfied {} checked {} violations {}",
                h,
                case.is_satisfied(&h),
                rep.checked(),
                rep.violation_count()
            );
            Ok(rep.is_ok())
        }
        Command::Extract { input, tree } => {
            let case = read_case(&input)?;
            let enc = encode(&case)?;
            let t = io::read_tree(&read(&tree)?)?;
            if **t.ground() != **enc.structure().ground() {
                return Err(Error::InvalidInput("tree does not use the encoded ground set".into()));
            }
            let h = extract_assignment(&t, &enc)?;
            println!("assignment {h}");
            for c in 1..=case.num_clauses() {
                let a = audit_clause(&t, &enc, c)?;
                let parts: Vec<String> = a.addends.iter().map(ordertree::scalar::format_rational).collect();
                println!("clause {} tau {} sum {}", c, parts.join(" "), ordertree::scalar::format_rational(&a.sum));
            }
            let sat = case.is_satisfied(&h);
            println!("satisfied {sat}");
            Ok(sat)
        }
        Command::Oracle { input, output } => {
            let m = read_structure(&input)?;
            match oracle::brute_realizable(&m, cli.cap)? {
                Some(w) => {
                    println!("realizable");
                    if let Some(p) = output {
                        emit(Some(&p), &io::write_tree(&w))?;
                    }
                    Ok(true)
                }
                None => {
                    println!("not-realizable");
                    Ok(false)
                }
            }
        }
        Command::Census { n, samples } => {
            let row = match samples {
                Some(k) => oracle::census_sampled(n, k, cli.cap, &mut ChaCha8Rng::seed_from_u64(cli.seed))?,
                None => oracle::census(n, cli.cap)?,
            };
            println!("{}", row.render());
            Ok(row.witness_failures == 0)
        }
        Command::Sat { input } => {
            let case = read_case(&input)?;
            let sols = oracle::sat_bruteforce(&case)?;
            println!("satisfying {}", sols.len());
            for h in &sols {
                println!("{h}");
            }
            Ok(!sols.is_empty())
        }
        Command::DemoWarnow { input } => {
            let report = oracle::warnow_probe(&read_case(&input)?)?;
            print!("{}", report.render());
            Ok(report.holds())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        // only fails if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global();
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(2)
        }
    }
}
