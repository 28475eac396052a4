mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::GlobalOpts;
use laplacian::conjugacy::Mode;

/// Exact checks of free-group word combinatorics and radial-subalgebra identities.
///
/// Exit status: 0 when everything checked holds, 1 when an identity fails,
/// 2 on usage or size-guard errors.
#[derive(Parser, Debug)]
#[command(name = "laplacian", version)]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate reduced words of a given length
    Words {
        #[arg(long)]
        len: usize,
        #[arg(long)]
        count_only: bool,
    },
    /// Radial elements w_n
    Radial {
        #[command(subcommand)]
        action: RadialCommand,
    },
    /// Solve x a = b x for words x of a fixed length
    Conjugacy {
        #[arg(long, allow_hyphen_values = true, required_unless_present = "sweep")]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "sweep")]
        b: Option<String>,
        #[arg(long, conflicts_with = "lmax")]
        len: Option<usize>,
        /// Count solutions for every length 1..=lmax
        #[arg(long)]
        lmax: Option<usize>,
        #[arg(long, default_value = "general")]
        mode: Mode,
        /// Compare both solvers on every pair with |a|, |b| <= --max-word-len
        #[arg(long, conflicts_with_all = ["a", "b", "len"])]
        sweep: bool,
        #[arg(long, default_value_t = 3)]
        max_word_len: usize,
    },
    /// Partial sums of the defect series for simple tensors xs, ys
    Series {
        #[arg(long, allow_hyphen_values = true)]
        xs: String,
        #[arg(long, allow_hyphen_values = true)]
        ys: String,
    },
    /// Run the full verification suite
    VerifyAll,
}

#[derive(Subcommand, Debug)]
enum RadialCommand {
    /// ‖w_n‖₂², closed form and by enumeration
    Norm {
        #[arg(long)]
        n: usize,
    },
    /// w_1 w_n = w_{n+1} + (2N-1) w_{n-1} for n = 2..=max-n, plus the n = 1 case
    Recurrence {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
    },
    /// Radial expectation of an element given as JSON, or of a single tensor
    Expect {
        /// JSON file ("-" for stdin)
        #[arg(long, conflicts_with = "tensor", required_unless_present = "tensor")]
        input: Option<PathBuf>,
        /// Simple tensor with coefficient 1, e.g. "1;2"
        #[arg(long, allow_hyphen_values = true)]
        tensor: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
