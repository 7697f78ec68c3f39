use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ppav_lab::checks::{self, Options, Status};

#[derive(Parser)]
#[command(name = "ppav-lab", version, about = "Exact verification checks for polarized abelian varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run checks and print one JSON object per check.
    Run {
        /// Check id; repeatable. Runs the whole catalog when omitted.
        #[arg(long = "check", value_name = "ID")]
        checks: Vec<String>,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..=12))]
        gmax: u64,
        #[arg(long, value_delimiter = ',', default_values_t = [2u64, 3])]
        factors: Vec<u64>,
        #[arg(long)]
        ydim: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the report to this file.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// List the check catalog.
    List,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::List => {
            for c in checks::CATALOG {
                println!("{:<24} {}", c.id, c.summary);
            }
            ExitCode::SUCCESS
        }
        Command::Run { checks: ids, gmax, factors, ydim, seed, json } => {
            let selected = if ids.is_empty() {
                checks::CATALOG.iter().collect()
            } else {
                let mut sel = Vec::new();
                for id in &ids {
                    match checks::find(id) {
                        Some(c) => sel.push(c),
                        None => {
                            eprintln!("unknown check: {id}");
                            eprintln!("known checks: {}", checks::ids().join(", "));
                            return ExitCode::from(2);
                        }
                    }
                }
                sel
            };
            let opts = Options { gmax: gmax as usize, factors, ydim, seed };
            let results = checks::run_all(&selected, &opts);
            let lines: Vec<String> = results
                .iter()
                .map(|r| serde_json::to_string(r).expect("check results serialize"))
                .collect();
            let mut out = io::stdout().lock();
            for l in &lines {
                let _ = writeln!(out, "{l}");
            }
            if let Some(path) = json {
                let written = File::create(&path).and_then(|f| {
                    let mut w = BufWriter::new(f);
                    lines.iter().try_for_each(|l| writeln!(w, "{l}"))?;
                    w.flush()
                });
                if let Err(e) = written {
                    eprintln!("cannot write {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            }
            if results.iter().all(|r| r.status == Status::Pass) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
