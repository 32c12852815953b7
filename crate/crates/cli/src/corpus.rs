//! `ybe corpus`: batch checks over a directory, and export of the built-in corpus.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use ybe_core::corpus::{brace_corpus, solution_corpus};
use ybe_core::FinSolution;

use crate::analyze::{analyze, Criterion};
use crate::exit::{self, Failure};
use crate::files::{self, canonical_json, BraceFile, Metadata, Object, SolutionFile};

#[derive(Clone, Debug, Serialize)]
pub struct FileResult {
    pub file: String,
    pub kind: Option<&'static str>,
    pub size: Option<usize>,
    pub error: Option<String>,
    #[serde(skip)]
    pub code: i32,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub objects: usize,
    pub solutions: usize,
    pub braces: usize,
    pub failures: usize,
    pub results: Vec<FileResult>,
}

/// `σ_b = λ_b 𝔮 ρ_b 𝔮⁻¹` entrywise.
fn diagonal_identity(s: &FinSolution) -> Result<(), Failure> {
    let q = s.diagonal_map();
    let qi = q.inverse();
    for b in 0..s.size() {
        for a in 0..s.size() {
            let via_q = s.lambda(b, q.apply(s.rho(b, qi.apply(a))));
            if s.sigma(b, a) != via_q {
                return Err(Failure::domain(format!("σ_{b}({a}) ≠ λ_b𝔮ρ_b𝔮⁻¹({a})")));
            }
        }
    }
    Ok(())
}

fn check(path: &Path) -> Result<(Object, usize), Failure> {
    let obj = files::load(path)?;
    let report = analyze(&obj, Criterion::Both)?;
    report.agreement()?;
    let size = match &obj {
        Object::Solution { solution, .. } => {
            diagonal_identity(solution)?;
            solution.size()
        }
        Object::Brace { brace, .. } => ybe_core::BraceLike::order(brace),
    };
    Ok((obj, size))
}

pub fn json_files(dir: &Path) -> Result<Vec<PathBuf>, Failure> {
    let entries = std::fs::read_dir(dir).map_err(|e| Failure::domain(format!("{}: {e}", dir.display())))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    Ok(paths)
}

pub fn run(dir: &Path) -> Result<(Summary, i32), Failure> {
    let paths = json_files(dir)?;
    let results: Vec<FileResult> = paths
        .par_iter()
        .map(|p| {
            let file = p.file_name().map_or_else(|| p.display().to_string(), |f| f.to_string_lossy().into_owned());
            match check(p) {
                Ok((obj, size)) => {
                    let kind = Some(if matches!(obj, Object::Solution { .. }) { "solution" } else { "brace" });
                    FileResult { file, kind, size: Some(size), error: None, code: exit::PASS }
                }
                Err(f) => FileResult { file, kind: None, size: None, error: Some(f.message), code: f.code },
            }
        })
        .collect();
    let has = |c: i32| results.iter().any(|r| r.code == c);
    let code = [exit::DISAGREEMENT, exit::DOMAIN, exit::UNDECIDED].into_iter().find(|&c| has(c)).unwrap_or(exit::PASS);
    let summary = Summary {
        objects: results.len(),
        solutions: results.iter().filter(|r| r.kind == Some("solution")).count(),
        braces: results.iter().filter(|r| r.kind == Some("brace")).count(),
        failures: results.iter().filter(|r| r.error.is_some()).count(),
        results,
    };
    Ok((summary, code))
}

pub fn render_text(s: &Summary) -> String {
    let mut out = format!(
        "{} objects ({} solutions, {} braces), {} failures\n",
        s.objects, s.solutions, s.braces, s.failures
    );
    for r in &s.results {
        if let Some(e) = &r.error {
            out.push_str(&format!("FAIL {}: {e}\n", r.file));
        }
    }
    out
}

fn metadata(name: &str) -> Option<Metadata> {
    Some(Metadata { name: Some(name.into()), provenance: Some("ybe built-in corpus".into()) })
}

/// Writes every built-in solution and brace; returns the number of files.
pub fn export(dir: &Path) -> Result<usize, Failure> {
    std::fs::create_dir_all(dir).map_err(|e| Failure::domain(format!("{}: {e}", dir.display())))?;
    let write = |name: String, text: String| {
        let path = dir.join(name);
        std::fs::write(&path, text).map_err(|e| Failure::domain(format!("{}: {e}", path.display())))
    };
    let mut count = 0;
    for e in solution_corpus().map_err(Failure::from)? {
        write(format!("{}.solution.json", e.name), canonical_json(&SolutionFile::new(&e.solution, metadata(&e.name))))?;
        count += 1;
    }
    for e in brace_corpus().map_err(Failure::from)? {
        write(format!("{}.brace.json", e.name), canonical_json(&BraceFile::new(&e.brace, e.x, metadata(&e.name))))?;
        count += 1;
    }
    Ok(count)
}
