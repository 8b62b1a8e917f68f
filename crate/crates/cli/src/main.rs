use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;

/// Exact persistence-module computations. Results are printed as JSON;
/// the exit code is 0 on success, 1 when a validation fails and 2 on I/O
/// or parse errors.
#[derive(Parser)]
#[command(name = "persmod", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Barcodes of a filtered complex or of the lower-star filtration of a
    /// simplicial complex.
    Barcode {
        file: PathBuf,
        #[arg(long)]
        degree: Option<i64>,
        /// Ground field when the file does not fix it: `Q` or `zeta:p`.
        #[arg(long)]
        field: Option<String>,
        /// Also write an SVG rendering (requires --degree).
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Bottleneck distance between two barcodes, with a matching.
    Bottleneck { b1: PathBuf, b2: PathBuf },
    /// Image persistence of a chain map in a source degree.
    Image {
        complex: PathBuf,
        map: PathBuf,
        #[arg(long)]
        degree: i64,
        /// Target complex; defaults to the source (an operator).
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Kernel persistence of a chain map in a source degree.
    Kernel {
        complex: PathBuf,
        map: PathBuf,
        #[arg(long)]
        degree: i64,
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Tensor product of two barcodes.
    Tensor { b1: PathBuf, b2: PathBuf },
    /// Tor of two barcodes.
    Tor { b1: PathBuf, b2: PathBuf },
    /// Compares the barcode of a product complex with the Künneth prediction.
    KunnethCheck {
        c1: PathBuf,
        c2: PathBuf,
        #[arg(long)]
        degree: i64,
    },
    /// Barcode of the ζ^k-eigenspace of a Z/p module.
    Eigenspace {
        file: PathBuf,
        #[arg(long)]
        zeta: u32,
    },
    /// Multiplicity-sensitive spread of a barcode.
    Spread {
        file: PathBuf,
        #[arg(short)]
        p: u32,
    },
    /// μ_p of a Z/p module, with the value for every eigenvalue.
    MuP {
        file: PathBuf,
        #[arg(short)]
        p: Option<u32>,
    },
    /// Spread minus half the longest finite bar in lower degrees.
    SpreadReduced {
        file: PathBuf,
        #[arg(short)]
        p: u32,
        #[arg(short)]
        r: i64,
    },
    /// Builds T = S^p from a module and a root S, and reports μ_p.
    PowerCheck { file: PathBuf },
    /// The synthetic egg-beater Z/p module and its μ_p.
    Eggbeater {
        #[arg(short)]
        p: u32,
        #[arg(long)]
        lambda: String,
        #[arg(long, default_value = "1")]
        c0: String,
        /// Use p² bars per orbit with T = S^p.
        #[arg(long)]
        full_power: bool,
        /// Include the module itself in the output.
        #[arg(long)]
        emit_module: bool,
    },
    /// The genus-2 surface with its cap-product operator.
    Genus2 {
        #[arg(long, default_value = "f")]
        variant: String,
        #[arg(long, default_value = "1")]
        eps: String,
        #[arg(long, default_value = "2")]
        a: String,
        #[arg(long, default_value = "3")]
        b: String,
        /// Comma-separated subset of summary, complex, map, simplicial.
        #[arg(long, default_value = "summary")]
        emit: String,
    },
    /// Quantum Betti numbers b_r(e) over the window 0 ≤ r < 2c_N.
    /// RING is a ring file or `builtin:s2xs2`, `builtin:cp3`.
    QuantumBetti {
        ring: String,
        #[arg(long)]
        e: String,
    },
    /// Whether p ∤ b_r(e) for some r.
    HypothesisCheck {
        ring: String,
        #[arg(long)]
        e: String,
        #[arg(short)]
        p: u32,
    },
    /// Renders a barcode file as SVG.
    Plot {
        file: PathBuf,
        #[arg(short)]
        o: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
