use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use penney::commands::{self, parse_patterns};
use penney::simulate::simulate_cmd;
use penney::sweep::{self, Mode};
use penney::{CliError, Format, Render};

/// Exact pattern-race statistics for Bernoulli trials.
#[derive(Parser)]
#[command(name = "penney", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "human")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expected waiting time for one pattern.
    Mean {
        pattern: String,
        /// Success probability, as a/b or a decimal.
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        /// Word already emitted before counting starts.
        #[arg(long)]
        head: Option<String>,
        /// Also print the first-occurrence PGF.
        #[arg(long)]
        pgf: bool,
    },
    /// Two-pattern race.
    Duel {
        first: String,
        second: String,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        /// Start right after this pattern was completed.
        #[arg(long)]
        given: Option<String>,
        #[arg(long)]
        pgf: bool,
    },
    /// Three-pattern race with expected duration.
    Trio {
        #[arg(num_args = 3, required = true)]
        patterns: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long)]
        pgf: bool,
    },
    /// Race among two or more patterns; four or more use the automaton oracle.
    Race {
        #[arg(required = true)]
        patterns: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long)]
        pgf: bool,
    },
    /// Cross-check every route for a duel or trio.
    Verify {
        #[arg(required = true)]
        patterns: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        /// Highest series coefficient compared.
        #[arg(long, default_value_t = 30)]
        nmax: usize,
    },
    /// Evaluate a duel or trio over p = i/(grid+1), i = 1..grid.
    Sweep {
        #[arg(value_enum)]
        mode: Mode,
        #[arg(required = true)]
        patterns: Vec<String>,
        #[arg(long)]
        grid: usize,
        /// Refine the grid minimizer of this column (win1, win2, ..., duration).
        #[arg(long)]
        find_min: Option<String>,
    },
    /// Monte Carlo run next to the exact values.
    Simulate {
        #[arg(required = true)]
        patterns: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long)]
        games: u64,
        #[arg(long)]
        seed: u64,
    },
}

fn run(cli: Cli) -> Result<(String, bool), CliError> {
    let f = cli.format;
    let out = match cli.command {
        Command::Mean {
            pattern,
            p,
            head,
            pgf,
        } => commands::mean_cmd(&pattern, &p, head.as_deref(), pgf)?.render(f),
        Command::Duel {
            first,
            second,
            p,
            given,
            pgf,
        } => commands::duel_cmd(&first, &second, &p, given.as_deref(), pgf)?.render(f),
        Command::Trio { patterns, p, pgf } => commands::trio_cmd(&patterns, &p, pgf)?.render(f),
        Command::Race { patterns, p, pgf } => commands::race_cmd(&patterns, &p, pgf)?.render(f),
        Command::Verify { patterns, p, nmax } => {
            let record = commands::verify_cmd(&patterns, &p, nmax)?;
            return Ok((record.render(f), record.passed));
        }
        Command::Sweep {
            mode,
            patterns,
            grid,
            find_min,
        } => {
            let patterns = parse_patterns(&patterns)?;
            match find_min {
                Some(column) => sweep::find_min(mode, &patterns, grid, &column)?.render(f),
                None => sweep::sweep(mode, &patterns, grid)?.render(f),
            }
        }
        Command::Simulate {
            patterns,
            p,
            games,
            seed,
        } => simulate_cmd(&patterns, &p, games, seed)?.render(f),
    };
    Ok((out, true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, passed)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(out.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(2);
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                eprintln!("verification mismatch");
                ExitCode::from(3)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
