use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use tropbuild::cli::{run_str, RunOptions, COMMANDS};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
}

/// Runs one tropbuild command on a JSON document and prints the report.
#[derive(Parser, Debug)]
#[command(name = "tropbuild", version, after_help = commands_help())]
struct Args {
    /// Command to run.
    command: String,
    /// Input document, or `-` for stdin.
    #[arg(long, default_value = "-")]
    input: String,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Seed for randomized commands.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest accepted n (ground set {0..n}).
    #[arg(long, default_value_t = 15)]
    max_n: usize,
    /// Largest accepted rank r+1.
    #[arg(long, default_value_t = 8)]
    max_rank: usize,
}

fn commands_help() -> String {
    format!("Commands: {}", COMMANDS.join(", "))
}

fn main() -> ExitCode {
    let args = Args::parse();
    let Format::Json = args.format;
    let text = if args.input == "-" {
        let mut s = String::new();
        if let Err(e) = std::io::stdin().read_to_string(&mut s) {
            eprintln!("tropbuild: cannot read stdin: {e}");
            return ExitCode::from(2);
        }
        s
    } else {
        match std::fs::read_to_string(&args.input) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("tropbuild: cannot read {}: {e}", args.input);
                return ExitCode::from(2);
            }
        }
    };
    let opts = RunOptions { seed: args.seed, max_n: args.max_n, max_rank: args.max_rank };
    let report = run_str(&args.command, &text, &opts);
    print!("{}", report.render());
    ExitCode::from(report.exit_code() as u8)
}
