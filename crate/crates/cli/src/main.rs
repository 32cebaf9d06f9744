mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "baxter",
    version,
    about = "Verify, diagonalize and transfer-check spectral braid matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Braid relation, unitarity, minimal polynomial and factorization checks.
    Verify(Params),
    /// Diagonalizer M, its inverse and the diagonal of M R̂(θ) M⁻¹.
    Diag(Params),
    /// Row-to-row exchange relation and projected constraints.
    Transfer(Params),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum VariantArg {
    A,
    B,
}

#[derive(Args, Debug, Clone)]
pub struct Params {
    /// glq, soq, spq, exotic-so, exotic-sp, s03, s14, affine, vertex6, vertex8 or nested.
    /// A trailing integer sets N (for example soq3).
    #[arg(long)]
    pub family: String,
    /// Base dimension N (total dimension for nested).
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 1.3, allow_negative_numbers = true)]
    pub q: f64,
    #[arg(long, default_value_t = 0.9, allow_negative_numbers = true)]
    pub gamma: f64,
    /// Elliptic nome of the 8-vertex weights.
    #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
    pub p: f64,
    #[arg(long, default_value_t = 40)]
    pub trunc: usize,
    #[arg(long, value_enum, default_value_t = VariantArg::A)]
    pub variant: VariantArg,
    #[arg(long, default_value_t = 0.3, allow_negative_numbers = true)]
    pub theta: f64,
    #[arg(long, default_value_t = 0.7, allow_negative_numbers = true)]
    pub theta2: f64,
    /// Row length of the monodromy.
    #[arg(long = "L", default_value_t = 1)]
    pub l: usize,
    #[arg(long, default_value_t = 8)]
    pub samples: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Residual tolerance; 1e-8 for vertex8 and 1e-10 otherwise.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Also write the report as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, params) = match &cli.command {
        Command::Verify(p) => ("verify", p),
        Command::Diag(p) => ("diag", p),
        Command::Transfer(p) => ("transfer", p),
    };
    match commands::run(name, params) {
        Ok(commands::Output { text, doc }) => {
            print!("{text}{}", doc.render());
            if let Some(path) = &params.json {
                let text = serde_json::to_string_pretty(&doc).expect("report serializes");
                if let Err(e) = std::fs::write(path, text + "\n") {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            if doc.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
