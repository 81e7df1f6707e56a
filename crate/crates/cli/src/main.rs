//! `kstar`: command-line front end for kstar-core.
//!
//! Exit status: 0 success, 1 usage error, 2 refusal (cap or precondition),
//! 3 internal error. Data goes to stdout or `--output`; diagnostics to stderr.

mod commands;
mod format;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kstar_core::{BitString, Program};

use format::Format;

#[derive(Parser, Debug)]
#[command(
    name = "kstar",
    version,
    about = "Exact and estimated complexity bounds for procedural generators"
)]
pub struct Cli {
    /// Worker threads for parallel sections (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Output encoding. Each subcommand has its own default and accepts a
    /// subset of json, csv, pbm, text.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write data to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run or inspect bit-machine programs.
    #[command(subcommand)]
    Vm(VmCommand),
    /// Exact and estimated complexity of artefacts.
    #[command(subcommand)]
    K(KCommand),
    /// Generators: build artefacts and inspect generators.
    #[command(subcommand)]
    Gen(GenCommand),
    /// The idealization transform.
    #[command(subcommand)]
    Transform(TransformCommand),
    /// Bounds reports, expressive range, comparisons and plot data.
    #[command(subcommand)]
    Analyze(AnalyzeCommand),
}

#[derive(Subcommand, Debug)]
pub enum VmCommand {
    /// Execute a program. Formats: text (default), json.
    Run {
        /// Program as 0/1 text, 3 bits per instruction.
        #[arg(long)]
        program: Program,
        /// Input bits (default: empty).
        #[arg(long, default_value = "")]
        input: BitString,
    },
    /// Show the instructions, live prefix and arity. Formats: text (default), json.
    Decode {
        #[arg(long)]
        program: Program,
    },
}

#[derive(Subcommand, Debug)]
pub enum KCommand {
    /// Exact K of one artefact, or ">CAP". Formats: text (default), json.
    Exact {
        #[arg(long)]
        artifact: BitString,
        /// Search budget in bits (max 24).
        #[arg(long, default_value_t = 12)]
        cap: usize,
    },
    /// Every artefact with K ≤ cap, sorted by (k, artefact). Formats: json lines (default), csv.
    Table {
        #[arg(long, default_value_t = 12)]
        cap: usize,
    },
    /// Compression upper-bound estimate, optionally with NCD to a second string.
    /// Formats: text (default), json.
    Estimate {
        #[arg(long)]
        artifact: BitString,
        /// Also report the normalized compression distance to this string.
        #[arg(long)]
        ncd_with: Option<BitString>,
    },
}

#[derive(Subcommand, Debug)]
pub enum GenCommand {
    /// Code length, input size, ideality and space size of a generator.
    /// Formats: json (default), text.
    Analyze {
        #[command(flatten)]
        generator: GeneratorArgs,
    },
    /// Render one flower sprite. Formats: pbm (default), text, json.
    Flower {
        /// Sprite side length: even, 2 to 16.
        #[arg(long)]
        size: usize,
        /// Quadrant bits, (size/2)^2 of them.
        #[arg(long)]
        seed: BitString,
    },
    /// Build one oatmeal artefact. Formats: text (default), json.
    Oatmeal {
        /// Comma-separated parts: distinct, equal length, a power-of-two count.
        #[arg(long, value_delimiter = ',', required = true)]
        parts: Vec<BitString>,
        #[arg(long)]
        slots: usize,
        /// slots × log2(parts) index bits.
        #[arg(long)]
        seed: BitString,
    },
}

#[derive(Subcommand, Debug)]
pub enum TransformCommand {
    /// Idealize a program over all inputs of length arity..=m and report the
    /// result's ideality and space size. Formats: json (default), text.
    Idealize {
        #[arg(long)]
        program: Program,
        #[arg(long)]
        max_input: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum AnalyzeCommand {
    /// Check both bounds for one generator. Formats: json (default), csv.
    Bounds {
        #[command(flatten)]
        generator: GeneratorArgs,
        /// Exact-table cap (default: code length + input size).
        #[arg(long, conflicts_with = "estimate")]
        cap: Option<usize>,
        /// Use compression estimates instead of an exact table.
        #[arg(long)]
        estimate: bool,
        /// Artefacts sampled in estimate mode.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// RNG seed for sampling.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Density × longest-run histogram over sampled artefacts.
    /// Formats: json (default), csv.
    Era {
        #[command(flatten)]
        generator: GeneratorArgs,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        bins: usize,
    },
    /// Compare two saved bounds reports. Formats: json (default), text.
    Compare {
        /// Report JSON file for the starting generator.
        #[arg(long)]
        from: PathBuf,
        /// Report JSON file for the changed generator.
        #[arg(long)]
        to: PathBuf,
    },
    /// Bounds-plane rows from saved reports. Formats: csv (default), json.
    Plane {
        /// Report JSON files, one row each in the given order.
        #[arg(required = true)]
        reports: Vec<PathBuf>,
    },
}

/// Exactly one of --program, --flower, --parts.
#[derive(Args, Debug, Clone)]
pub struct GeneratorArgs {
    /// Bit-machine program generator.
    #[arg(long, conflicts_with_all = ["flower", "parts"])]
    pub program: Option<Program>,
    /// Flower generator of this size.
    #[arg(long, conflicts_with = "parts")]
    pub flower: Option<usize>,
    /// Oatmeal generator with these comma-separated parts (needs --slots).
    #[arg(long, value_delimiter = ',', requires = "slots")]
    pub parts: Option<Vec<BitString>>,
    #[arg(long, requires = "parts")]
    pub slots: Option<usize>,
    /// Override the report label.
    #[arg(long)]
    pub label: Option<String>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(1);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    }
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
