//! The two interchange schemas, their canonical JSON form and the GAP text dump.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use ybe_core::brace::{check_invariant, validate_brace};
use ybe_core::solution::validate_solution;
use ybe_core::{FinSolution, SkewBrace};

use crate::exit::Failure;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionFile {
    pub size: usize,
    pub lambda: Vec<Vec<usize>>,
    pub rho: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraceFile {
    pub size: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    #[serde(rename = "X", default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

#[derive(Clone, Debug)]
pub enum Object {
    Solution { solution: FinSolution, metadata: Option<Metadata> },
    Brace { brace: SkewBrace, x: Option<Vec<usize>>, metadata: Option<Metadata> },
}

impl Object {
    pub fn name(&self) -> Option<&str> {
        match self {
            Object::Solution { metadata, .. } | Object::Brace { metadata, .. } => {
                metadata.as_ref().and_then(|m| m.name.as_deref())
            }
        }
    }
}

impl SolutionFile {
    pub fn new(s: &FinSolution, metadata: Option<Metadata>) -> Self {
        SolutionFile { size: s.size(), lambda: s.lambda_rows(), rho: s.rho_rows(), metadata }
    }
}

impl BraceFile {
    pub fn new(b: &SkewBrace, x: Option<Vec<usize>>, metadata: Option<Metadata>) -> Self {
        use ybe_core::BraceLike;
        BraceFile { size: b.order(), add: b.add_rows(), mul: b.mul_rows(), x, metadata }
    }
}

fn check_shape(what: &str, size: usize, rows: &[Vec<usize>]) -> Result<(), Failure> {
    if rows.len() != size {
        return Err(Failure::domain(format!("field '{what}': {} rows, declared size {size}", rows.len())));
    }
    for (i, r) in rows.iter().enumerate() {
        if r.len() != size {
            return Err(Failure::domain(format!("field '{what}': row {i} has {} entries, expected {size}", r.len())));
        }
        if let Some(j) = r.iter().position(|&e| e >= size) {
            return Err(Failure::domain(format!("field '{what}': entry ({i},{j}) = {} out of range [0, {size})", r[j])));
        }
    }
    Ok(())
}

fn check_identity(what: &str, rows: &[Vec<usize>]) -> Result<(), Failure> {
    for (i, r) in rows.iter().enumerate() {
        if rows[0][i] != i || r[0] != i {
            return Err(Failure::domain(format!("field '{what}': index 0 is not the identity (row/column {i})")));
        }
    }
    Ok(())
}

/// Parses and validates a solution or brace document.
pub fn parse(text: &str) -> Result<Object, Failure> {
    let value: Value = serde_json::from_str(text).map_err(|e| Failure::domain(format!("parse error: {e}")))?;
    let keys = value.as_object().ok_or_else(|| Failure::domain("parse error: top level is not an object"))?;
    if keys.contains_key("lambda") || keys.contains_key("rho") {
        let f: SolutionFile = serde_json::from_str(text).map_err(|e| Failure::domain(format!("solution file: {e}")))?;
        check_shape("lambda", f.size, &f.lambda)?;
        check_shape("rho", f.size, &f.rho)?;
        let solution = validate_solution(&f.lambda, &f.rho).map_err(Failure::from)?;
        Ok(Object::Solution { solution, metadata: f.metadata })
    } else if keys.contains_key("add") || keys.contains_key("mul") {
        let f: BraceFile = serde_json::from_str(text).map_err(|e| Failure::domain(format!("brace file: {e}")))?;
        check_shape("add", f.size, &f.add)?;
        check_shape("mul", f.size, &f.mul)?;
        if f.size == 0 {
            return Err(Failure::domain("field 'size': must be positive"));
        }
        check_identity("add", &f.add)?;
        check_identity("mul", &f.mul)?;
        let brace = validate_brace(&f.add, &f.mul).map_err(Failure::from)?;
        if let Some(x) = &f.x {
            if x.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Failure::domain("field 'X': must be strictly increasing"));
            }
            if let Some(&e) = x.iter().find(|&&e| e >= f.size) {
                return Err(Failure::domain(format!("field 'X': index {e} out of range")));
            }
            check_invariant(&brace, x).map_err(Failure::from)?;
        }
        Ok(Object::Brace { brace, x: f.x, metadata: f.metadata })
    } else {
        Err(Failure::domain("unknown schema: expected fields 'lambda'/'rho' or 'add'/'mul'"))
    }
}

pub fn load(path: &Path) -> Result<Object, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::domain(format!("{}: {e}", path.display())))?;
    parse(&text)
}

/// Keys sorted, one table row per line, integers only.
pub fn canonical_json<T: Serialize>(obj: &T) -> String {
    let value = serde_json::to_value(obj).expect("schema types serialize");
    let map = value.as_object().expect("schema types are objects");
    let mut out = String::from("{\n");
    let last = map.len().saturating_sub(1);
    for (i, (k, v)) in map.iter().enumerate() {
        let key = serde_json::to_string(k).expect("string");
        let is_table = v.as_array().is_some_and(|rows| !rows.is_empty() && rows.iter().all(Value::is_array));
        if is_table {
            let rows = v.as_array().expect("array");
            let _ = writeln!(out, "  {key}: [");
            for (j, r) in rows.iter().enumerate() {
                let sep = if j + 1 < rows.len() { "," } else { "" };
                let _ = writeln!(out, "    {}{sep}", serde_json::to_string(r).expect("row"));
            }
            out.push_str("  ]");
        } else {
            let _ = write!(out, "  {key}: {}", serde_json::to_string(v).expect("value"));
        }
        out.push_str(if i < last { ",\n" } else { "\n" });
    }
    out.push_str("}\n");
    out
}

fn gap_perm(images: &[usize]) -> String {
    let list: Vec<String> = images.iter().map(|i| (i + 1).to_string()).collect();
    format!("PermList([{}])", list.join(","))
}

/// Permutations with points shifted to `1..n`, for pasting into GAP.
pub fn gap_solution(s: &FinSolution, name: &str) -> String {
    let mut out = format!("# {name}: solution of size {}\n", s.size());
    let lam: Vec<String> = (0..s.size()).map(|x| gap_perm(s.lambda_perm(x).images())).collect();
    let rho: Vec<String> = (0..s.size()).map(|y| gap_perm(s.rho_perm(y).images())).collect();
    let _ = writeln!(out, "lambda := [\n  {}\n];", lam.join(",\n  "));
    let _ = writeln!(out, "rho := [\n  {}\n];", rho.join(",\n  "));
    out
}

/// Regular representations of both groups; `B` is the set of points `1..n`.
pub fn gap_brace(b: &SkewBrace, x: Option<&[usize]>, name: &str) -> String {
    use ybe_core::BraceLike;
    let n = b.order();
    let mut out = format!("# {name}: skew brace of order {n}\n");
    let add: Vec<String> = b.add_rows().iter().map(|r| gap_perm(r)).collect();
    let mul: Vec<String> = b.mul_rows().iter().map(|r| gap_perm(r)).collect();
    let _ = writeln!(out, "add := Group([\n  {}\n]);", add.join(",\n  "));
    let _ = writeln!(out, "mul := Group([\n  {}\n]);", mul.join(",\n  "));
    if let Some(x) = x {
        let pts: Vec<String> = x.iter().map(|i| (i + 1).to_string()).collect();
        let _ = writeln!(out, "X := [{}];", pts.join(","));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_round_trip() {
        let f = SolutionFile::new(&FinSolution::flip(2), Some(Metadata { name: Some("flip_2".into()), provenance: None }));
        let text = canonical_json(&f);
        assert_eq!(
            text,
            "{\n  \"lambda\": [\n    [0,1],\n    [0,1]\n  ],\n  \"metadata\": {\"name\":\"flip_2\"},\n  \"rho\": [\n    [0,1],\n    [0,1]\n  ],\n  \"size\": 2\n}\n"
        );
        let back: SolutionFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back, f);
        assert_eq!(canonical_json(&back), text);
    }

    #[test]
    fn shape_errors_name_the_field() {
        let bad = r#"{"size": 2, "lambda": [[0,1],[0,2]], "rho": [[0,1],[0,1]]}"#;
        let e = parse(bad).unwrap_err();
        assert!(e.message.contains("'lambda'") && e.message.contains("(1,1)"), "{}", e.message);
        let missing = r#"{"size": 2, "lambda": [[0,1],[0,1]]}"#;
        assert!(parse(missing).unwrap_err().message.contains("rho"));
    }

    #[test]
    fn brace_identity_convention() {
        let swapped = r#"{"size": 2, "add": [[1,0],[0,1]], "mul": [[0,1],[1,0]]}"#;
        assert!(parse(swapped).unwrap_err().message.contains("identity"));
    }
}
