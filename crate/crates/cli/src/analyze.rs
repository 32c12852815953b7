//! Reports for `ybe analyze`.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;
use ybe_core::brace::{
    brace_invariants, permutation_brace, restricted_solution, simple_gen_check, simple_nl_check, smallest_nonzero_ideal,
};
use ybe_core::perm::orbits;
use ybe_core::{BraceLike, FinSolution, SkewBrace};

use crate::exit::Failure;
use crate::files::Object;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Criterion {
    Brute,
    #[value(name = "simpleNL")]
    SimpleNl,
    #[value(name = "simpleGEN")]
    SimpleGen,
    Both,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub criterion: &'static str,
    /// `None` when the criterion does not apply to this input.
    pub simple: Option<bool>,
    pub note: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Profile {
    pub involutive: bool,
    pub derived_form: bool,
    pub twisted_rack: bool,
    pub quandle: bool,
    pub lyubashenko: bool,
    pub indecomposable: bool,
    pub irretractable: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolutionReport {
    pub size: usize,
    pub profile: Profile,
    pub retraction_size: usize,
    pub orbits: Vec<Vec<usize>>,
    /// `retractable; Lyubashenko`, `retractable` or `irretractable`.
    pub branch: String,
    pub verdicts: Vec<Verdict>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BraceReport {
    pub order: usize,
    pub socle: Vec<usize>,
    pub b2: Vec<usize>,
    pub b3: Vec<usize>,
    pub add_center: Vec<usize>,
    pub min_ideal: Option<Vec<usize>>,
    pub is_trivial: bool,
    pub is_cyclic_type: bool,
    #[serde(rename = "X")]
    pub x: Option<Vec<usize>>,
    pub restricted: Option<SolutionReport>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Report {
    Solution(SolutionReport),
    Brace(BraceReport),
}

fn wanted(c: Criterion) -> [bool; 3] {
    match c {
        Criterion::Brute => [true, false, false],
        Criterion::SimpleNl => [false, true, false],
        Criterion::SimpleGen => [false, false, true],
        Criterion::Both => [true, true, true],
    }
}

/// `gen_brace` is the brace and subset used by the generator criterion; for a bare solution
/// it is the permutation brace with the points `h_x`.
fn solution_report(s: &FinSolution, criterion: Criterion, gen_brace: Option<(&SkewBrace, &[usize])>) -> Result<SolutionReport, Failure> {
    let p = s.profile();
    let class = s.classify_lyubashenko();
    let branch = match (p.irretractable, class.is_lyubashenko) {
        (_, true) => "retractable; Lyubashenko",
        (true, false) => "irretractable",
        (false, false) => "retractable",
    };
    let orbits = orbits(&s.action_generators(), s.size()).map_err(Failure::from)?.classes();
    let [brute, nl, gen] = wanted(criterion);
    let mut verdicts = Vec::new();
    if brute {
        let r = s.simplicity_report();
        let note = if r.small_size_convention { "size < 3 convention" } else { "" };
        verdicts.push(Verdict { criterion: "brute", simple: Some(r.simple), note: note.into() });
    }
    if nl {
        verdicts.push(if class.is_lyubashenko {
            let note = match class.p {
                Some(q) => format!("Lyubashenko classification, ⟨λ,ρ⟩ cyclic of order {q}"),
                None if s.size() == 2 => "Lyubashenko classification, size 2".into(),
                None => format!("Lyubashenko classification, n = {} not prime or ⟨λ,ρ⟩ not cyclic of order n", s.size()),
            };
            Verdict { criterion: "simpleNL", simple: Some(class.is_simple), note }
        } else {
            let r = simple_nl_check(s).map_err(Failure::from)?;
            let note = format!(
                "|𝒢| = {}, |𝒟| = {}, 𝒟 minimal: {}, transitive: {}",
                r.brace_order, r.d_order, r.d_is_minimal_ideal, r.d_transitive
            );
            Verdict { criterion: "simpleNL", simple: Some(r.verdict), note }
        });
    }
    if gen {
        verdicts.push(gen_verdict(s, !p.irretractable && gen_brace.is_none(), gen_brace)?);
    }
    Ok(finish(s, p, branch, orbits, verdicts))
}

fn gen_verdict(s: &FinSolution, skip: bool, gen_brace: Option<(&SkewBrace, &[usize])>) -> Result<Verdict, Failure> {
    if s.is_lyubashenko() {
        return Ok(Verdict { criterion: "simpleGEN", simple: None, note: "not applicable to Lyubashenko solutions".into() });
    }
    if skip {
        let note = "needs an irretractable solution or a brace file with X".into();
        return Ok(Verdict { criterion: "simpleGEN", simple: None, note });
    }
    let owned;
    let (b, x) = match gen_brace {
        Some(bx) => bx,
        None => {
            owned = permutation_brace(s).map_err(Failure::from)?;
            (&owned.brace, owned.generators.as_slice())
        }
    };
    let r = simple_gen_check(b, x).map_err(Failure::from)?;
    let note = format!("|V| = {}, V minimal: {}, transitive: {}", r.v.len(), r.v_is_minimal, r.v_transitive);
    Ok(Verdict { criterion: "simpleGEN", simple: Some(r.verdict), note })
}

fn finish(
    s: &FinSolution,
    p: ybe_core::solution::SolutionProfile,
    branch: &str,
    orbits: Vec<Vec<usize>>,
    verdicts: Vec<Verdict>,
) -> SolutionReport {
    SolutionReport {
        size: s.size(),
        profile: Profile {
            involutive: p.involutive,
            derived_form: p.derived_form,
            twisted_rack: p.twisted_rack,
            quandle: p.quandle,
            lyubashenko: p.lyubashenko,
            indecomposable: p.indecomposable,
            irretractable: p.irretractable,
        },
        retraction_size: s.retraction_partition().class_count(),
        orbits,
        branch: branch.into(),
        verdicts,
    }
}

pub fn analyze(obj: &Object, criterion: Criterion) -> Result<Report, Failure> {
    match obj {
        Object::Solution { solution, .. } => solution_report(solution, criterion, None).map(Report::Solution),
        Object::Brace { brace, x, .. } => {
            let inv = brace_invariants(brace).map_err(Failure::from)?;
            let restricted = match x {
                Some(x) => {
                    let (s, _) = restricted_solution(brace, x).map_err(Failure::from)?;
                    Some(solution_report(&s, criterion, Some((brace, x)))?)
                }
                None => None,
            };
            Ok(Report::Brace(BraceReport {
                order: brace.order(),
                socle: inv.socle.elements().to_vec(),
                b2: inv.b2.elements().to_vec(),
                b3: inv.b3.elements().to_vec(),
                add_center: inv.add_center,
                min_ideal: smallest_nonzero_ideal(brace).map(|i| i.elements().to_vec()),
                is_trivial: inv.is_trivial,
                is_cyclic_type: inv.is_cyclic_type,
                x: x.clone(),
                restricted,
            }))
        }
    }
}

impl SolutionReport {
    /// Every applicable verdict agrees.
    pub fn agreement(&self) -> Result<(), Failure> {
        let decided: Vec<&Verdict> = self.verdicts.iter().filter(|v| v.simple.is_some()).collect();
        if decided.windows(2).any(|w| w[0].simple != w[1].simple) {
            let parts: Vec<String> = decided.iter().map(|v| format!("{}={}", v.criterion, v.simple.unwrap())).collect();
            return Err(Failure::disagreement(format!("oracle disagreement: {}", parts.join(", "))));
        }
        Ok(())
    }
}

impl Report {
    pub fn agreement(&self) -> Result<(), Failure> {
        match self {
            Report::Solution(s) => s.agreement(),
            Report::Brace(b) => b.restricted.as_ref().map_or(Ok(()), SolutionReport::agreement),
        }
    }
}

fn size_of(set: &[usize]) -> String {
    if set.len() == 1 {
        "{0}".into()
    } else {
        format!("order {}", set.len())
    }
}

fn write_solution(out: &mut String, r: &SolutionReport) {
    let p = &r.profile;
    let _ = writeln!(out, "size: {}", r.size);
    let flags = [
        ("involutive", p.involutive),
        ("derived", p.derived_form),
        ("twisted rack", p.twisted_rack),
        ("quandle", p.quandle),
        ("indecomposable", p.indecomposable),
    ];
    let on: Vec<&str> = flags.iter().filter(|f| f.1).map(|f| f.0).collect();
    let _ = writeln!(out, "profile: {}", if on.is_empty() { "-".into() } else { on.join(", ") });
    let _ = writeln!(out, "{}", r.branch);
    let _ = writeln!(out, "retraction size: {}", r.retraction_size);
    let orbit_sizes: Vec<String> = r.orbits.iter().map(|o| o.len().to_string()).collect();
    let _ = writeln!(out, "orbits: {} (sizes {})", r.orbits.len(), orbit_sizes.join(", "));
    let shown: Vec<String> = r
        .verdicts
        .iter()
        .map(|v| match v.simple {
            Some(b) => format!("{b} ({})", v.criterion),
            None => format!("n/a ({})", v.criterion),
        })
        .collect();
    let _ = writeln!(out, "simple: {}", shown.join(" / "));
    for v in r.verdicts.iter().filter(|v| !v.note.is_empty()) {
        let _ = writeln!(out, "  {}: {}", v.criterion, v.note);
    }
}

pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    match r {
        Report::Solution(s) => write_solution(&mut out, s),
        Report::Brace(b) => {
            let _ = writeln!(out, "skew brace of order {}", b.order);
            let _ = writeln!(out, "trivial: {}, cyclic type: {}", b.is_trivial, b.is_cyclic_type);
            let _ = writeln!(out, "socle: {}", size_of(&b.socle));
            let _ = writeln!(out, "B2: {}, B3: {}", size_of(&b.b2), size_of(&b.b3));
            let _ = writeln!(out, "center of (B,+): {}", size_of(&b.add_center));
            let _ = writeln!(
                out,
                "smallest nonzero ideal: {}",
                b.min_ideal.as_ref().map_or("none (incomparable minimal ideals)".into(), |i| size_of(i))
            );
            if let Some(s) = &b.restricted {
                let _ = writeln!(out, "solution on X (|X| = {}):", s.size);
                write_solution(&mut out, s);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use ybe_core::corpus::solution_corpus;

    #[test]
    fn all_criteria_agree_on_corpus() {
        for e in solution_corpus().unwrap() {
            let obj = Object::Solution { solution: e.solution.clone(), metadata: None };
            let r = analyze(&obj, Criterion::Both).unwrap();
            r.agreement().unwrap_or_else(|f| panic!("{}: {f}", e.name));
        }
    }

    #[test]
    fn lyubashenko_z4_text() {
        let s = ybe_core::constructions::lyubashenko_build(4, 1, 1).unwrap();
        let r = analyze(&Object::Solution { solution: s, metadata: None }, Criterion::Both).unwrap();
        let text = render_text(&r);
        assert!(text.contains("retractable; Lyubashenko"), "{text}");
        assert!(text.contains("simple: false (brute) / false (simpleNL) / n/a (simpleGEN)"), "{text}");
    }

    #[test]
    fn disagreement_is_exit_two() {
        let s = ybe_core::FinSolution::flip(3);
        let mut r = solution_report(&s, Criterion::Brute, None).unwrap();
        r.verdicts.push(Verdict { criterion: "simpleNL", simple: Some(!r.verdicts[0].simple.unwrap()), note: String::new() });
        assert_eq!(r.agreement().unwrap_err().code, crate::exit::DISAGREEMENT);
    }
}
