//! `ybe`: verify, analyze and construct solutions and skew braces stored as JSON tables.

mod analyze;
mod construct;
mod corpus;
mod exit;
mod files;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::analyze::Criterion;
use crate::construct::{Constructed, Family};
use crate::exit::Failure;
use crate::files::{canonical_json, BraceFile, Metadata, Object, SolutionFile};

#[derive(Parser, Debug)]
#[command(name = "ybe", version, about = "Set-theoretic Yang–Baxter solutions and skew braces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Gap,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check every axiom of a solution or brace file.
    Verify { file: PathBuf },
    /// Profile, retraction, orbits and simplicity verdicts.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        criterion: Criterion,
        #[arg(long)]
        json: bool,
    },
    /// Build a family member, print its hypothesis ledger and optionally write it out.
    Construct {
        #[command(subcommand)]
        family: Family,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json", global = true)]
        format: Format,
    },
    /// Run the checks over every `.json` file in a directory.
    Corpus {
        #[arg(long)]
        dir: PathBuf,
        /// Write the built-in corpus into the directory instead of checking it.
        #[arg(long)]
        export: bool,
        #[arg(long)]
        json: bool,
    },
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize")
}

fn verify(path: &Path) -> Result<i32, Failure> {
    match files::load(path)? {
        Object::Solution { solution, .. } => println!("PASS: solution of size {}", solution.size()),
        Object::Brace { brace, x, .. } => {
            let xs = x.map_or(String::new(), |x| format!(", X of size {}", x.len()));
            println!("PASS: skew brace of order {}{xs}", ybe_core::BraceLike::order(&brace));
        }
    }
    Ok(exit::PASS)
}

fn analyze_cmd(path: &Path, criterion: Criterion, json: bool) -> Result<i32, Failure> {
    let obj = files::load(path)?;
    let report = analyze::analyze(&obj, criterion)?;
    if json {
        println!("{}", to_json(&report));
    } else {
        if let Some(name) = obj.name() {
            println!("name: {name}");
        }
        print!("{}", analyze::render_text(&report));
    }
    report.agreement()?;
    Ok(exit::PASS)
}

fn write_file(dir: &Path, name: &str, text: &str) -> Result<(), Failure> {
    std::fs::create_dir_all(dir).map_err(|e| Failure::domain(format!("{}: {e}", dir.display())))?;
    let path = dir.join(name);
    std::fs::write(&path, text).map_err(|e| Failure::domain(format!("{}: {e}", path.display())))?;
    println!("wrote {}", path.display());
    Ok(())
}

fn emit(c: &Constructed, out: Option<&Path>, format: Format) -> Result<i32, Failure> {
    if let Some(order) = c.structured_order {
        println!("brace of order {order} on a structured carrier; |X| = {}", c.x.as_ref().map_or(0, Vec::len));
        if out.is_some() {
            return Err(Failure::undecided(format!("brace of order {order} is too large to export as tables")));
        }
        return Ok(exit::PASS);
    }
    if let Some(b) = &c.brace {
        let xs = c.x.as_ref().map_or(String::new(), |x| format!(", |X| = {}", x.len()));
        println!("brace of order {}{xs}", ybe_core::BraceLike::order(b));
    }
    if let Some(s) = &c.solution {
        println!("solution of size {}", s.size());
    }
    let Some(dir) = out else {
        return Ok(exit::PASS);
    };
    let meta = || Some(Metadata { name: Some(c.stem.clone()), provenance: Some("ybe construct".into()) });
    if let Some(b) = &c.brace {
        match format {
            Format::Json => write_file(dir, &format!("{}.brace.json", c.stem), &canonical_json(&BraceFile::new(b, c.x.clone(), meta())))?,
            Format::Gap => write_file(dir, &format!("{}.brace.g", c.stem), &files::gap_brace(b, c.x.as_deref(), &c.stem))?,
        }
    }
    if let Some(s) = &c.solution {
        match format {
            Format::Json => write_file(dir, &format!("{}.solution.json", c.stem), &canonical_json(&SolutionFile::new(s, meta())))?,
            Format::Gap => write_file(dir, &format!("{}.solution.g", c.stem), &files::gap_solution(s, &c.stem))?,
        }
    }
    Ok(exit::PASS)
}

fn construct_cmd(family: &Family, out: Option<&Path>, format: Format) -> Result<i32, Failure> {
    match construct::construct(family) {
        Ok(c) => {
            match &c.ledger {
                Some(l) => print!("{l}"),
                None => println!("(no hypotheses to check)"),
            }
            emit(&c, out, format)
        }
        Err(r) => {
            if let Some(l) = &r.ledger {
                print!("{l}");
            }
            Err(r.failure)
        }
    }
}

fn corpus_cmd(dir: &Path, export: bool, json: bool) -> Result<i32, Failure> {
    if export {
        let n = corpus::export(dir)?;
        println!("exported {n} objects to {}", dir.display());
        return Ok(exit::PASS);
    }
    let (summary, code) = corpus::run(dir)?;
    if json {
        println!("{}", to_json(&summary));
    } else {
        print!("{}", corpus::render_text(&summary));
    }
    Ok(code)
}

fn apply_element_cap() -> Result<(), Failure> {
    if let Ok(v) = std::env::var("YBE_ELEMENT_CAP") {
        let cap = v.trim().parse::<usize>().map_err(|_| Failure::domain(format!("YBE_ELEMENT_CAP: '{v}' is not a positive integer")))?;
        if cap == 0 {
            return Err(Failure::domain("YBE_ELEMENT_CAP must be positive"));
        }
        ybe_core::config::set_element_cap(cap);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = apply_element_cap().and_then(|()| match &cli.command {
        Command::Verify { file } => verify(file),
        Command::Analyze { file, criterion, json } => analyze_cmd(file, *criterion, *json),
        Command::Construct { family, out, format } => construct_cmd(family, out.as_deref(), *format),
        Command::Corpus { dir, export, json } => corpus_cmd(dir, *export, *json),
    });
    let code = match result {
        Ok(code) => code,
        Err(f) => {
            let label = match f.code {
                exit::DISAGREEMENT => "ORACLE DISAGREEMENT",
                exit::UNDECIDED => "UNDECIDED",
                _ => "FAIL",
            };
            println!("{label}: {f}");
            f.code
        }
    };
    ExitCode::from(code as u8)
}
