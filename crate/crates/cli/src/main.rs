use std::process::ExitCode;

use clap::{Parser, Subcommand};

use krull_cli::{parse, run, Command, Options};

#[derive(Parser)]
#[command(name = "krull", about = "Krull filtration computations for unstable modules over the mod 2 Steenrod algebra")]
struct Cli {
    /// Report dimensions through this degree.
    #[arg(long, global = true, default_value_t = 32)]
    degree: usize,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Generator window for re-presenting k_n M in `sigma`.
    #[arg(long, global = true)]
    gen_window: Option<usize>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Dimensions, generators and relations of a module.
    Info { expr: String },
    /// The Krull filtration k_0 ⊆ … ⊆ k_max.
    Krull {
        #[arg(long)]
        max: usize,
        expr: String,
    },
    /// nil_1 and R_0, and the whole nilpotent filtration when locally finite.
    Nil { expr: String },
    /// σ_n M = Tbar^n k_n M with its symmetric-group action, n <= max.
    Sigma {
        #[arg(long)]
        max: usize,
        expr: String,
    },
    /// The iterated reduced T-functor.
    Tbar {
        #[arg(long)]
        iter: usize,
        expr: String,
    },
    /// Run a named verification suite.
    Verify { suite: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let expr = |text: &str| {
        parse(text).map_err(|e| {
            eprintln!("{text}");
            eprintln!("{}^", " ".repeat(e.offset));
            eprintln!("error: {e}");
        })
    };
    let command = match &cli.command {
        Cmd::Info { expr: e } => expr(e).map(Command::Info),
        Cmd::Krull { max, expr: e } => expr(e).map(|expr| Command::Krull { max: *max, expr }),
        Cmd::Nil { expr: e } => expr(e).map(Command::Nil),
        Cmd::Sigma { max, expr: e } => expr(e).map(|expr| Command::Sigma { max: *max, expr }),
        Cmd::Tbar { iter, expr: e } => expr(e).map(|expr| Command::Tbar { iter: *iter, expr }),
        Cmd::Verify { suite } => Ok(Command::Verify(suite.clone())),
    };
    let Ok(command) = command else {
        return ExitCode::from(2);
    };
    let opts = Options {
        degree: cli.degree,
        gen_window: cli.gen_window,
    };
    match run(&command, opts) {
        Ok(report) => {
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
