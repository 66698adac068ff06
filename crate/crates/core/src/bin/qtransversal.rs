use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use qtransversal::cli::{run_file, Command, Flags};

/// Decide transversal and q-transversal questions for JSON instances.
#[derive(Parser)]
#[command(name = "qtransversal", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Instance file (JSON).
    input: PathBuf,
    /// Decide q-transversality by enumerating every basis of T.
    #[arg(long)]
    oracle: bool,
    /// For `rado`: members are avoidance sets.
    #[arg(long)]
    avoid: bool,
    /// For `represent-aligned`: use the smallest extension degree that verifies.
    #[arg(long)]
    smallest: bool,
    /// For `scan`: number of shards.
    #[arg(long)]
    shards: Option<usize>,
}

fn main() -> ExitCode {
    let a = Args::parse();
    let flags = Flags { oracle: a.oracle, avoid: a.avoid, smallest: a.smallest, shards: a.shards };
    let out = run_file(a.command, &a.input, &flags);
    let text = serde_json::to_string_pretty(&out.json).expect("JSON value");
    // a closed pipe is not an error worth reporting
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    ExitCode::from(out.exit_code as u8)
}
