use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use hamel::demo::{list_demos, run_demo, DemoConfig, Format};
use hamel::{Error, Exponent};

/// Runs exact-arithmetic demonstrations and writes their certificates.
#[derive(Parser, Debug)]
#[command(name = "hamel", version)]
struct Cli {
    /// Demonstration to run (see --list).
    #[arg(long, conflicts_with = "all")]
    demo: Option<String>,
    /// Run every demonstration.
    #[arg(long)]
    all: bool,
    #[arg(long, default_value_t = 100)]
    depth: u64,
    /// Norm exponent: a positive integer or `inf`.
    #[arg(long, default_value = "1")]
    p: Exponent,
    /// Bisection depth for sup norms on [0,1].
    #[arg(long = "refine", default_value_t = 32)]
    refinement: u32,
    #[arg(long, default_value_t = hamel::sample::DEFAULT_SEED)]
    seed: u64,
    /// text, json or csv.
    #[arg(long, default_value = "text")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the registry and exit.
    #[arg(long)]
    list: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if cli.list {
        print!("{}", list_demos());
        return ExitCode::SUCCESS;
    }
    if cli.demo.is_none() && !cli.all {
        eprintln!("error: pass --demo NAME or --all\n\n{}", list_demos());
        return ExitCode::from(2);
    }
    let cfg = DemoConfig {
        demo: cli.demo,
        depth: cli.depth,
        p: cli.p,
        refinement: cli.refinement,
        seed: cli.seed,
        format: cli.format,
        out: cli.out,
    };
    let bundle = match run_demo(&cfg) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, Error::UnknownDemo(_)) {
                eprintln!("\navailable demos:\n{}", list_demos());
            }
            return ExitCode::from(2);
        }
    };
    let written = match &cfg.out {
        Some(path) => File::create(path)
            .map_err(|e| Error::Config(format!("cannot create {}: {e}", path.display())))
            .and_then(|mut f| bundle.write(&mut f)),
        None => {
            let mut stdout = io::stdout().lock();
            bundle.write(&mut stdout).and_then(|_| stdout.flush().map_err(|e| Error::Config(e.to_string())))
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(bundle.exit_code() as u8)
}
