//! `verma`: orbits, Γ tables, singular-vector words, oracle solves and the
//! verification suites, as JSON or CSV.

mod commands;
mod config;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::output::Format;

#[derive(Parser, Debug)]
#[command(name = "verma", version, about = "Singular vectors of rank-2 Kac-Moody Verma modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<std::path::PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long)]
    pub p: i64,
    #[arg(long)]
    pub q: i64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Positive real roots on the orbits of the simple roots.
    Orbit {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        /// 1, 2 or both
        #[arg(long, default_value = "1")]
        seed: String,
    },
    /// The Γ^k table.
    Gamma {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 8)]
        kmax: usize,
    },
    /// Singular-vector word for one case at (m, t).
    Exponents {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        case: u8,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        t: String,
    },
    /// Kac-Kazhdan condition for a root, multiplicity and weight.
    Kk {
        #[command(flatten)]
        common: Common,
        /// `a,b`
        #[arg(long)]
        root: String,
        #[arg(long)]
        m: u32,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        /// Read (x, y) as λ(h1), λ(h2) instead of the shifted coordinates.
        #[arg(long)]
        unshifted: bool,
    },
    /// Oracle singular vectors at one grade.
    Singular {
        #[command(flatten)]
        common: Common,
        /// `k1,k2`; defaults to m·root when --case is given
        #[arg(long)]
        grade: Option<String>,
        /// Unshifted λ(h1)
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        /// Unshifted λ(h2)
        #[arg(long, allow_hyphen_values = true)]
        y: Option<String>,
        /// Take λ = λ(m, t) of this case instead of --x/--y
        #[arg(long)]
        case: Option<u8>,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        #[arg(long)]
        grade_cap: Option<u32>,
    },
    /// Identity suites and end-to-end checks over a grid.
    Verify(config::VerifyArgs),
    /// Factor identities in both targets.
    Identities {
        #[command(flatten)]
        out: OutputArgs,
        #[arg(long, default_value_t = 6)]
        max_exp: u32,
        #[arg(long, default_value_t = 5)]
        max_n: u32,
        /// Number of random subscripts u.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Orbit { common, depth, seed } => commands::orbit(&common, depth, &seed),
        Command::Gamma { common, kmax } => commands::gamma(&common, kmax),
        Command::Exponents { common, case, n, m, t } => commands::exponents(&common, case, n, m, &t),
        Command::Kk { common, root, m, x, y, unshifted } => commands::kk(&common, &root, m, &x, &y, unshifted),
        Command::Singular { common, grade, x, y, case, n, m, t, grade_cap } => {
            commands::singular(&common, commands::SingularArgs { grade, x, y, case, n, m, t, grade_cap })
        }
        Command::Verify(args) => commands::verify(&args),
        Command::Identities { out, max_exp, max_n, samples, seed } => commands::identities(&out, max_exp, max_n, samples, seed),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
