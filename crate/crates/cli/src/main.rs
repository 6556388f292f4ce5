use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use harrison::corpus;
use harrison::decompose::ExtendPolicy;
use harrison::families;
use harrison::multipoly::parse_form;
use harrison::report::{analyze, AnalyzeError};

const EXIT_INPUT: u8 = 2;
const EXIT_TOWER: u8 = 3;

#[derive(Parser)]
#[command(name = "harrison", version, about = "Centers, classification and direct-sum decompositions of higher degree forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Extend {
    Never,
    Auto,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one form; reads it from stdin when FORM is omitted.
    Analyze {
        #[arg(long = "vars")]
        vars: usize,
        #[arg(long, value_enum, default_value = "never")]
        extend: Extend,
        #[arg(long)]
        json: bool,
        form: Option<String>,
    },
    /// Run the bundled example corpus against its stored expectations.
    Corpus {
        #[arg(long)]
        only: Option<String>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        dir: Option<PathBuf>,
    },
    /// Print a member of a structured or random family of forms.
    Generate {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(families::FAMILIES))]
        family: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Analyze { vars, extend, json, form } => cmd_analyze(vars, extend, json, form),
        Command::Corpus { only, json, dir } => cmd_corpus(only, json, dir),
        Command::Generate { family, n, d, seed } => cmd_generate(&family, n, d, seed),
    }
}

fn cmd_analyze(vars: usize, extend: Extend, json: bool, form: Option<String>) -> ExitCode {
    let text = match form {
        Some(t) => t,
        None => {
            let mut buf = String::new();
            if let Err(e) = std::io::stdin().read_to_string(&mut buf) {
                eprintln!("error: cannot read stdin: {e}");
                return ExitCode::from(EXIT_INPUT);
            }
            buf
        }
    };
    let f = match parse_form(text.trim(), vars) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INPUT);
        }
    };
    let policy = match extend {
        Extend::Never => ExtendPolicy::Never,
        Extend::Auto => ExtendPolicy::Auto,
    };
    match analyze(&f, policy) {
        Ok(r) if json => {
            println!("{}", r.to_json_string());
            ExitCode::SUCCESS
        }
        Ok(r) => {
            println!("{r}");
            ExitCode::SUCCESS
        }
        Err(e @ AnalyzeError::TowerRequired(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_TOWER)
        }
        Err(e @ AnalyzeError::Input(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn cmd_corpus(only: Option<String>, json: bool, dir: Option<PathBuf>) -> ExitCode {
    let dir = dir.unwrap_or_else(corpus::default_dir);
    let entries = match corpus::load_dir(&dir) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INPUT);
        }
    };
    let results = corpus::run(&entries, only.as_deref());
    if results.is_empty() {
        eprintln!("error: no corpus entry matches");
        return ExitCode::from(EXIT_INPUT);
    }
    if json {
        println!("{}", serde_json::to_string_pretty(&results).expect("results serialize"));
    } else {
        for r in &results {
            println!("{:<6} {:<28} {:>7} ms", if r.passed { "ok" } else { "FAIL" }, r.name, r.elapsed_ms);
            for m in &r.mismatches {
                println!("       {m}");
            }
        }
        let failed = results.iter().filter(|r| !r.passed).count();
        println!("{} entries, {} failed", results.len(), failed);
    }
    if results.iter().all(|r| r.passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn cmd_generate(family: &str, n: Option<usize>, d: Option<usize>, seed: u64) -> ExitCode {
    match families::generate(family, n, d, seed) {
        Ok(f) => {
            println!("{f}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
