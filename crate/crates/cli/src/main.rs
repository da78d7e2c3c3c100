use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use hamuni_core::classify2::{classify_with_tol, COND_TOL};
use hamuni_core::linalg::RANK_TOL;
use hamuni_core::tridiagonal::tridiagonalize_with_cut;
use hamuni_core::{build_certificate, dbe_scheme, lie, Family, HamiltonianDocument, Hermitian, Verdict};

mod report;

const EXIT_UNIVERSAL: u8 = 0;
const EXIT_NON_UNIVERSAL: u8 = 10;
const EXIT_FAILURE: u8 = 1;
const EXIT_INPUT: u8 = 2;

#[derive(Parser)]
#[command(name = "hamuni", version, about = "Decide whether a two-qubit Hamiltonian is universal")]
struct Cli {
    /// Machine-readable JSON output
    #[arg(long, global = true)]
    json: bool,

    /// Relative tolerance for every zero test (default 1e-9)
    #[arg(long, global = true, value_name = "FLOAT")]
    tol: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a Hamiltonian: exit 0 if universal, 10 if not
    Classify {
        /// HamiltonianDocument JSON file, or - for stdin
        input: PathBuf,
    },
    /// Print the tridiagonal form and its conjugator
    Tridiag { input: PathBuf },
    /// Dimension of the Lie algebra generated on 2 or 3 qubits
    LieDim {
        input: PathBuf,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(2..=3))]
        qubits: u8,
        /// Rank threshold for new directions (defaults to --tol, then 1e-9)
        #[arg(long, value_name = "FLOAT")]
        rank_tol: Option<f64>,
    },
    /// Build a universality certificate: exit 0 iff its generators are independent
    Certify {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = SchemeArg::Paper)]
        scheme: SchemeArg,
    },
    /// Emit verified samples from a Hamiltonian family, one per line
    Sample {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 10)]
        count: u64,
        #[arg(long, env = "HAMUNI_SEED", default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    /// 16 generators assembled from the tridiagonal form
    Paper,
    /// H, THT and 14 nested commutators
    Dbe,
}

#[derive(Serialize)]
struct LieDim {
    qubits: usize,
    dimension: usize,
    full_dimension: usize,
    rank_tol: f64,
}

#[derive(Serialize)]
struct SampleLine {
    index: u64,
    family: Family,
    verdict: Verdict,
    document: HamiltonianDocument,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self { code: EXIT_INPUT, message: message.into() }
    }

    fn other(message: impl Into<String>) -> Self {
        Self { code: EXIT_FAILURE, message: message.into() }
    }
}

impl From<hamuni_core::Error> for Failure {
    fn from(e: hamuni_core::Error) -> Self {
        match e {
            hamuni_core::Error::Document(_) | hamuni_core::Error::UnknownFamily(_) => Failure::input(e.to_string()),
            _ => Failure::other(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            if cli.json {
                println!("{}", json!({ "error": f.message }));
            }
            eprintln!("hamuni: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    if let Some(t) = cli.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Failure::input(format!("--tol must be positive, got {t}")));
        }
    }
    let tol = cli.tol.unwrap_or(COND_TOL);
    let mut out = io::stdout().lock();
    match &cli.command {
        Command::Classify { input } => {
            let h = load(input)?;
            let report = classify_with_tol(&h, tol)?;
            emit(&mut out, cli.json, &report, report::classification)?;
            Ok(match report.verdict {
                Verdict::Universal => EXIT_UNIVERSAL,
                Verdict::NonUniversal => EXIT_NON_UNIVERSAL,
            })
        }
        Command::Tridiag { input } => {
            let form = tridiagonalize_with_cut(&load(input)?, tol)?;
            emit(&mut out, cli.json, &form, report::tridiagonal)?;
            Ok(EXIT_UNIVERSAL)
        }
        Command::LieDim { input, qubits, rank_tol } => {
            let rank_tol = rank_tol.or(cli.tol).unwrap_or(RANK_TOL);
            let n = usize::from(*qubits);
            let dimension = lie::universality_dimension_with_tol(&load(input)?, n, rank_tol)?;
            let value = LieDim { qubits: n, dimension, full_dimension: 1 << (2 * n), rank_tol };
            emit(&mut out, cli.json, &value, |v| {
                format!("dimension {} of {} on {} qubits (rank tol {:e})\n", v.dimension, v.full_dimension, v.qubits, v.rank_tol)
            })?;
            Ok(EXIT_UNIVERSAL)
        }
        Command::Certify { input, scheme } => {
            let h = load(input)?;
            let cert = match scheme {
                SchemeArg::Dbe => dbe_scheme(&h),
                SchemeArg::Paper => {
                    let form = tridiagonalize_with_cut(&h, tol)?;
                    build_certificate(&form).map_err(|e| Failure::other(format!("no certificate: {e}")))?
                }
            };
            emit(&mut out, cli.json, &cert, report::certificate)?;
            Ok(if cert.independent { EXIT_UNIVERSAL } else { EXIT_FAILURE })
        }
        Command::Sample { family, count, seed } => {
            let family: Family = family.parse()?;
            for index in 0..*count {
                let h = family.sample(*seed, index)?;
                let verdict = classify_with_tol(&h, tol)?.verdict;
                let doc = HamiltonianDocument::from_matrix(&h).with_name(format!("{family}-{index}")).with_seed(*seed);
                let line = if cli.json {
                    let line = SampleLine { index, family, verdict, document: doc };
                    serde_json::to_string(&line).map_err(|e| Failure::other(e.to_string()))?
                } else {
                    format!("{index}\t{verdict:?}\t{}", doc.to_json())
                };
                writeln!(out, "{line}").map_err(io_failure)?;
            }
            Ok(EXIT_UNIVERSAL)
        }
    }
}

fn load(path: &Path) -> Result<Hermitian, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::input(format!("stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?
    };
    let doc = HamiltonianDocument::parse(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    Ok(doc.to_hamiltonian()?)
}

fn emit<T: Serialize>(out: &mut impl Write, as_json: bool, value: &T, text: impl Fn(&T) -> String) -> Result<(), Failure> {
    let s = if as_json {
        serde_json::to_string_pretty(value).map_err(|e| Failure::other(e.to_string()))? + "\n"
    } else {
        text(value)
    };
    out.write_all(s.as_bytes()).map_err(io_failure)
}

fn io_failure(e: io::Error) -> Failure {
    Failure::other(format!("writing output: {e}"))
}
