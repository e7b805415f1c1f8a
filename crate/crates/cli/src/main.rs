//! `tightframe`: build, verify and analyze exact unitary matrices and tight frames.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use tightframe::io::{self, Format};
use tightframe::paving::{gram_projection, is_projection, paving_epsilon, paving_sampled, weight_profile};
use tightframe::verify::{check_hyperplane_basis, check_tight_frame, check_unbiased_pair, check_unitary};
use tightframe::{errata, ConstructionRequest, Error, ExactMatrix, Family, VerifyReport};

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "tightframe", version, about = "Exact unitary matrices and tight frames")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a matrix family and re-verify it before printing
    Construct(ConstructArgs),
    /// Check a property of a matrix file exactly
    Verify(VerifyArgs),
    /// Print the number of nonzero entries
    Sparsity {
        file: PathBuf,
    },
    /// Exact column square sums, leading columns against the last
    Weights {
        file: PathBuf,
    },
    /// Search 2-pavings of the projection given by a frame or projection file
    Pave(PaveArgs),
    /// Re-run the fixtures for known misprints and print their witnesses
    Errata {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
struct ConstructArgs {
    /// One of: hyperplane, constant-first-row, constant-two-rows, two-constant-diag,
    /// block-pair, weave, third-case, mub-r4, ap-two-tight, iterate-two-tight,
    /// weight-in-front, abcd-outline
    family: String,
    #[arg(long)]
    n: Option<String>,
    /// Rational `p/q`; block-pair and weave also accept scalar text such as `1/2*sqrt(3)`
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    /// Comma-separated rationals
    #[arg(long)]
    values: Option<String>,
    #[arg(long)]
    m: Option<String>,
    /// Which of the three bases of mub-r4 to emit
    #[arg(long)]
    basis: Option<String>,
    /// `corrected` (default) or `paper` for block-pair
    #[arg(long)]
    form: Option<String>,
    /// Scale weight-in-front and abcd-outline frames to unit norm
    #[arg(long)]
    normalize: bool,
    #[arg(long, value_enum, default_value_t = FormatArg::ExactJson)]
    format: FormatArg,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    ExactJson,
    Csv,
    Latex,
    FloatCsv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::ExactJson => Format::ExactJson,
            FormatArg::Csv => Format::Csv,
            FormatArg::Latex => Format::Latex,
            FormatArg::FloatCsv => Format::FloatCsv,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CheckArg {
    Unitary,
    Tight,
    Hyperplane,
    Mub,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    file: PathBuf,
    #[arg(long, value_enum)]
    check: CheckArg,
    /// Second basis for `--check mub`
    #[arg(long)]
    against: Option<PathBuf>,
    /// Print the full report as JSON
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PaveInput {
    Frame,
    Projection,
}

#[derive(Args, Debug)]
struct PaveArgs {
    file: PathBuf,
    /// Defaults to projection when the file holds one, frame otherwise
    #[arg(long, value_enum)]
    input: Option<PaveInput>,
    /// Examine this many random partitions instead of all of them
    #[arg(long)]
    sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// A failure that maps to an exit status, with its message for stderr.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: EXIT_USAGE, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

fn read_matrix(path: &Path) -> Result<ExactMatrix, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let parsed = io::deserialize(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    for note in &parsed.notes {
        eprintln!("note: {}: {note}", path.display());
    }
    Ok(parsed.matrix)
}

fn describe(report: &VerifyReport) -> String {
    let mut out = String::new();
    let mut push = |r: &VerifyReport| {
        let status = if r.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!("{status} {:?}", r.property));
        if let Some(k) = &r.k_value {
            out.push_str(&format!(" k={k}"));
        }
        if let Some(w) = &r.witness {
            out.push_str(&format!(": {w}"));
        }
        if r.approximate {
            out.push_str(" (approximate)");
        }
        out.push('\n');
    };
    push(report);
    for sub in &report.subchecks {
        push(sub);
    }
    out
}

fn construct(args: ConstructArgs) -> Result<u8, Failure> {
    let family: Family = args.family.parse()?;
    let mut params = BTreeMap::new();
    for (key, value) in [
        ("n", args.n),
        ("a", args.a),
        ("b", args.b),
        ("values", args.values),
        ("m", args.m),
        ("basis", args.basis),
        ("form", args.form),
    ] {
        if let Some(v) = value {
            params.insert(key.to_string(), v);
        }
    }
    if args.normalize {
        params.insert("normalize".into(), "true".into());
    }
    let request = ConstructionRequest::new(family, params, args.format.into())?;
    let built = request.build()?;
    if !built.report.all_passed() {
        return Err(Failure {
            code: EXIT_INTERNAL,
            message: format!("{family} failed its own check:\n{}", describe(&built.report)),
        });
    }
    print!("{}", io::serialize(&built.matrix, request.output_format));
    Ok(0)
}

fn verify(args: VerifyArgs) -> Result<u8, Failure> {
    let a = read_matrix(&args.file)?;
    let report = match args.check {
        CheckArg::Unitary => check_unitary(&a)?,
        CheckArg::Tight => check_tight_frame(&a),
        CheckArg::Hyperplane => check_hyperplane_basis(&a)?,
        CheckArg::Mub => {
            let other = args.against.ok_or_else(|| usage("--check mub needs --against <file>"))?;
            check_unbiased_pair(&a, &read_matrix(&other)?)?
        }
    };
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        print!("{}", describe(&report));
    }
    Ok(if report.all_passed() { 0 } else { EXIT_FAILED })
}

fn pave(args: PaveArgs) -> Result<u8, Failure> {
    let a = read_matrix(&args.file)?;
    let input = args.input.unwrap_or(if is_projection(&a) {
        PaveInput::Projection
    } else {
        PaveInput::Frame
    });
    let g = match input {
        PaveInput::Projection => {
            if !is_projection(&a) {
                return Err(usage("input is not a symmetric idempotent matrix"));
            }
            a
        }
        PaveInput::Frame => {
            let report = check_tight_frame(&a);
            let passed = report.passed;
            let k = report
                .k_value
                .clone()
                .filter(|_| passed)
                .ok_or_else(|| usage(format!("input is not a tight frame:\n{}", describe(&report))))?;
            gram_projection(&a, &k)?
        }
    };
    let id = args.file.display().to_string();
    let result = match args.sample {
        Some(n) => paving_sampled(&g, n, args.seed, &id)?,
        None => paving_epsilon(&g, 2, &id)?,
    };
    println!("{}", serde_json::to_string_pretty(&result).expect("result serializes"));
    Ok(0)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Construct(args) => construct(args),
        Command::Verify(args) => verify(args),
        Command::Sparsity { file } => {
            println!("{}", read_matrix(&file)?.sparsity());
            Ok(0)
        }
        Command::Weights { file } => {
            let profile = weight_profile(&read_matrix(&file)?);
            println!("{}", serde_json::to_string_pretty(&profile).expect("profile serializes"));
            Ok(0)
        }
        Command::Pave(args) => pave(args),
        Command::Errata { json } => {
            let fixtures = errata::all();
            if json {
                println!("{}", serde_json::to_string_pretty(&fixtures).expect("errata serialize"));
            } else {
                for e in &fixtures {
                    let status = if e.holds() { "CONFIRMED" } else { "NOT REPRODUCED" };
                    println!("{status} {}", e.id);
                    println!("  printed:   {}", e.printed);
                    println!("  finding:   {}", e.finding);
                    println!("  corrected: {}", if e.correction_passes { "passes" } else { "fails" });
                }
            }
            Ok(if fixtures.iter().all(errata::Erratum::holds) { 0 } else { EXIT_FAILED })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
