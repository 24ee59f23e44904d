use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use absnum_cli::commands::{self, CliResult, Outcome};
use clap::{Parser, Subcommand};

/// Abstract numeration systems and 1-recognizable sets.
#[derive(Parser)]
#[command(name = "absnum", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the representation of n.
    Rep {
        #[arg(long)]
        ans: PathBuf,
        n: String,
    },
    /// Print the value of a word of the language.
    Val {
        #[arg(long)]
        ans: PathBuf,
        word: String,
    },
    /// Print the automaton of {(rep n, rep(n+k))}.
    Succ {
        #[arg(long)]
        ans: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: u64,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Compile a normal-form set into an automaton for the numeration system.
    Compile {
        #[arg(long)]
        ans: PathBuf,
        #[arg(long)]
        set: PathBuf,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Split a padded unary automaton into normal forms.
    Decompose {
        #[arg(long)]
        unary: PathBuf,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Check a compiled automaton against a set on a box of tuples.
    Verify {
        #[arg(long)]
        ans: PathBuf,
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        compiled: PathBuf,
        #[arg(long, default_value_t = 25)]
        bound: u64,
    },
    /// List the members of a set with coordinates at most the bound.
    Enum {
        #[arg(long)]
        set: PathBuf,
        #[arg(long, default_value_t = 10)]
        bound: u64,
    },
}

fn run(command: Command) -> CliResult<Outcome> {
    match command {
        Command::Rep { ans, n } => commands::rep(&ans, &n),
        Command::Val { ans, word } => commands::val(&ans, &word),
        Command::Succ { ans, k, out } => commands::succ(&ans, k, out.as_deref()),
        Command::Compile { ans, set, out } => commands::compile_set(&ans, &set, out.as_deref()),
        Command::Decompose { unary, out } => commands::decompose(&unary, out.as_deref()),
        Command::Verify {
            ans,
            set,
            compiled,
            bound,
        } => commands::verify_set(&ans, &set, &compiled, bound),
        Command::Enum { set, bound } => commands::enumerate(&set, bound),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(outcome.text.as_bytes());
            ExitCode::from(outcome.code as u8)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
