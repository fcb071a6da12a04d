use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use polymat::OrderKind;
use polymat_cli::report::{render_diagnostic, render_text};
use polymat_cli::{Failure, Run, RunOptions, EXIT_INPUT, EXIT_INTERNAL};

const AFTER_HELP: &str = "\
Documents are JSON objects:
  {\"ring\": {\"vars\": [\"z1\", \"z2\", \"z3\"], \"order\": \"lex\"},
   \"matrix\": [[\"z1 - z2\", \"z3\"], [\"0\", \"1\"]],
   \"divisors\": [{\"var\": \"z1\", \"rhs\": \"z2\", \"power\": 1}]}

For a matrix with a single row (l = 1) the gcd of the (l-1)-minors is taken
to be 1, so (F, d) is in S exactly when d divides the gcd of the entries.

Exit codes: 0 success, 1 hypothesis failure or failed verification,
2 unreadable input, 3 no unimodular completion found, 4 internal error.";

#[derive(Parser)]
#[command(
    name = "polymat",
    version,
    about = "Factor polynomial matrices with respect to linear divisors"
)]
#[command(after_help = AFTER_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Monomial order, overriding the one declared in the document.
    #[arg(long, value_parser = parse_order)]
    order: Option<OrderKind>,
    /// Print the full report as JSON.
    #[arg(long)]
    json: bool,
    /// Upper bound on completion candidates tried per step.
    #[arg(long, env = "POLYMAT_MAX_SUBSET_SEARCH", default_value_t = polymat::factorizer::DEFAULT_MAX_SUBSET_SEARCH)]
    max_subset_search: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Report d_l(F), d_(l-1)(F) and the class tests with their Gröbner certificates.
    Analyze {
        file: PathBuf,
        /// Divisor such as "z1 - z2"; defaults to the one in the document.
        #[arg(long)]
        divisor: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Factor F = G1 * F1 with det(G1) = d.
    Factor {
        file: PathBuf,
        #[arg(long)]
        divisor: Option<String>,
        /// Skip the S3 test; the product and determinant are still checked.
        #[arg(long)]
        skip_class_check: bool,
        /// Directory for G1.json and F1.json.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Factor out the divisor product declared in the document.
    Chain {
        file: PathBuf,
        /// Directory for G1.json ... Gk.json, G0.json and Fk.json.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Check F = G1 * ... * Gk * residual and det(Gi) against declared divisors.
    Verify {
        file: PathBuf,
        #[arg(long, num_args = 1.., required = true)]
        factors: Vec<PathBuf>,
        #[arg(long)]
        residual: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

fn parse_order(s: &str) -> Result<OrderKind, String> {
    s.parse()
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_all(file: &Path, factors: &[PathBuf], residual: &Path) -> Result<(String, Vec<String>, String), Failure> {
    let fs = factors.iter().map(|p| read(p)).collect::<Result<Vec<_>, _>>()?;
    Ok((read(file)?, fs, read(residual)?))
}

fn options(common: &Common, skip_class_check: bool) -> RunOptions {
    RunOptions {
        order: common.order,
        skip_class_check,
        max_subset_search: common.max_subset_search,
    }
}

fn write_outputs(run: &mut Run, dir: &Path) -> Result<(), String> {
    fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    let mut written = Vec::new();
    for o in &run.outputs {
        let path = dir.join(&o.name);
        fs::write(&path, o.document.to_json() + "\n").map_err(|e| format!("{}: {e}", path.display()))?;
        written.push(path.display().to_string());
    }
    if let Some(f) = run.report.factorization.as_mut() {
        f.outputs = written;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (run, common, out_dir) = match &cli.command {
        Command::Analyze { file, divisor, common } => {
            let run = read(file).map(|doc| polymat_cli::analyze(&doc, divisor.as_deref(), &options(common, false)));
            (run, common, None)
        }
        Command::Factor {
            file,
            divisor,
            skip_class_check,
            out_dir,
            common,
        } => {
            let opts = options(common, *skip_class_check);
            let run = read(file).map(|doc| polymat_cli::factor(&doc, divisor.as_deref(), &opts));
            (run, common, out_dir.as_deref())
        }
        Command::Chain { file, out_dir, common } => {
            let run = read(file).map(|doc| polymat_cli::chain(&doc, &options(common, false)));
            (run, common, out_dir.as_deref())
        }
        Command::Verify {
            file,
            factors,
            residual,
            common,
        } => {
            let run = read_all(file, factors, residual)
                .map(|(doc, fs, r)| polymat_cli::verify(&doc, &fs, &r, &options(common, false)));
            (run, common, None)
        }
    };
    let mut run = match run {
        Ok(r) => r,
        Err(e) => {
            eprintln!("polymat: {e}");
            return ExitCode::from(EXIT_INPUT as u8);
        }
    };
    if let Some(dir) = out_dir {
        if run.report.exit_code == 0 {
            if let Err(e) = write_outputs(&mut run, dir) {
                eprintln!("polymat: {e}");
                return ExitCode::from(EXIT_INTERNAL as u8);
            }
        }
    }
    run.report.elapsed_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    if common.json {
        println!("{}", run.report.to_json());
    } else if run.report.exit_code == 0 {
        print!("{}", render_text(&run.report));
    }
    if let Some(d) = render_diagnostic(&run.report) {
        eprint!("{d}");
    }
    ExitCode::from(run.report.exit_code as u8)
}
