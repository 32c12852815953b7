//! `ybe construct`: parameter parsing and dispatch to the builders.

use clap::Subcommand;
use ybe_core::constructions::byott::byott_hypotheses;
use ybe_core::constructions::coro2::{componentwise_conj, coro2_hypotheses, power_of, shift};
use ybe_core::constructions::groups::{simple_group, PermTable};
use ybe_core::constructions::registry::named_group;
use ybe_core::constructions::{
    byott_build, coro1_build, coro1_hypotheses, coro2_build, example_registry, lyubashenko_build, Built, Coro1Data,
    Coro2Data, Example, HypothesisLedger, Mat,
};
use ybe_core::{FinSolution, Perm, SkewBrace};

use crate::exit::Failure;

#[derive(Clone, Debug, Subcommand)]
pub enum Family {
    /// Brace over `F_p^n ⋊ C_k` with the solution on `X = V + x`.
    Coro1 {
        #[arg(long)]
        p: usize,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Scalar (`-1`) or rows (`0,1;1,1`).
        #[arg(long = "A", allow_hyphen_values = true)]
        a: String,
        #[arg(long = "A2", allow_hyphen_values = true)]
        a2: String,
        /// Comma-separated vector; zero by default.
        #[arg(long)]
        u0: Option<String>,
    },
    /// Brace over `V ⋊ C_m` with `V = S^copies`.
    Coro2 {
        /// `sym:N`, `alt:N`, `psl27`, `a5` or `a6`.
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 1)]
        copies: usize,
        #[arg(long)]
        m: usize,
        /// `id`, `conj:(0 1)`, `shift` or `shift:(0 1)`.
        #[arg(long = "A")]
        a: String,
        #[arg(long = "A2")]
        a2: String,
        /// Index of `u0` in `V`.
        #[arg(long, default_value_t = 0)]
        u0: usize,
    },
    /// Simple brace of order `p^p·q`.
    Byott {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
    /// `r(x,y) = (y + a, x + b)` on `Z_n`.
    Lyubashenko {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
    },
    /// A named example.
    #[command(subcommand)]
    Example(ExampleArgs),
}

#[derive(Clone, Debug, Subcommand)]
pub enum ExampleArgs {
    ConjQuandle {
        #[arg(long)]
        group: String,
        /// Representative in cycle notation, e.g. `(0 1)`.
        #[arg(long)]
        rep: String,
    },
    Dihedral {
        #[arg(long)]
        p: usize,
    },
    ExAb {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        n: usize,
    },
    Field {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        n: usize,
    },
    SymN {
        #[arg(long)]
        n: usize,
    },
    AnPr {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        copies: usize,
    },
    Ex1 {
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: usize,
    },
}

/// What a construction produced.
pub struct Constructed {
    pub stem: String,
    pub ledger: Option<HypothesisLedger>,
    pub brace: Option<SkewBrace>,
    pub x: Option<Vec<usize>>,
    pub solution: Option<FinSolution>,
    /// Set for braces too large to hold as tables.
    pub structured_order: Option<usize>,
}

/// A construction that was refused, with the ledger explaining why when there is one.
pub struct Refused {
    pub ledger: Option<HypothesisLedger>,
    pub failure: Failure,
}

pub fn parse_cycles(degree: usize, s: &str) -> Result<Perm, Failure> {
    let bad = || Failure::domain(format!("cannot parse permutation '{s}' (expected cycles like '(0 1)(2 3 4)')"));
    let trimmed = s.trim();
    if trimmed.is_empty() || trimmed == "()" {
        return Ok(Perm::identity(degree));
    }
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for part in trimmed.split(')') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let body = part.strip_prefix('(').ok_or_else(bad)?;
        let points = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        cycles.push(points);
    }
    let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
    Perm::from_cycles(degree, &refs).map_err(Failure::from)
}

fn parse_int_list(what: &str, s: &str) -> Result<Vec<i64>, Failure> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Failure::domain(format!("{what}: cannot parse '{t}' as an integer"))))
        .collect()
}

/// A scalar such as `-1`, or rows separated by `;`.
pub fn parse_matrix(p: usize, n: usize, s: &str) -> Result<Mat, Failure> {
    if !s.contains([',', ';']) {
        let c = s.trim().parse::<i64>().map_err(|_| Failure::domain(format!("cannot parse matrix '{s}'")))?;
        return Ok(Mat::scalar(p, n, c));
    }
    let rows = s.split(';').map(|r| parse_int_list("matrix", r)).collect::<Result<Vec<_>, _>>()?;
    if rows.len() != n {
        return Err(Failure::domain(format!("matrix '{s}' has {} rows, expected {n}", rows.len())));
    }
    Mat::from_rows(p, &rows).map_err(Failure::from)
}

fn parse_u0(p: usize, n: usize, s: Option<&str>) -> Result<Vec<usize>, Failure> {
    let Some(s) = s else {
        return Ok(vec![0; n]);
    };
    let v = parse_int_list("u0", s)?;
    if v.len() != n {
        return Err(Failure::domain(format!("u0 has {} entries, expected {n}", v.len())));
    }
    Ok(v.into_iter().map(|c| c.rem_euclid(p as i64) as usize).collect())
}

fn group_for(spec: &str) -> Result<PermTable, Failure> {
    named_group(spec).or_else(|_| simple_group(spec)).map_err(Failure::from)
}

fn automorphism(s: &PermTable, copies: usize, spec: &str) -> Result<Perm, Failure> {
    let degree = s.perms.degree();
    let carrier = ybe_core::FiniteGroup::order(&s.table).pow(copies as u32);
    match spec.split_once(':') {
        Some(("conj", g)) => componentwise_conj(s, copies, &parse_cycles(degree, g)?).map_err(Failure::from),
        Some(("shift", g)) => shift(s, copies, Some(&parse_cycles(degree, g)?)).map_err(Failure::from),
        _ if spec == "shift" => shift(s, copies, None).map_err(Failure::from),
        _ if spec == "id" => Ok(Perm::identity(carrier)),
        _ => Err(Failure::domain(format!("unknown automorphism '{spec}' (expected id, conj:…, shift or shift:…)"))),
    }
}

fn refused(ledger: Option<HypothesisLedger>) -> impl FnOnce(ybe_core::Error) -> Refused {
    move |e| Refused { ledger, failure: Failure::from(e) }
}

fn from_built(stem: String, b: Built) -> Constructed {
    let ledger = b.ledger().cloned();
    Constructed {
        stem,
        ledger,
        brace: b.table_brace().cloned(),
        x: Some(b.x().to_vec()),
        solution: b.solution().cloned(),
        structured_order: b.table_brace().is_none().then(|| b.brace().order()),
    }
}

fn example(args: &ExampleArgs) -> Result<Constructed, Refused> {
    let plain = |f: Failure| Refused { ledger: None, failure: f };
    let ex = match args {
        ExampleArgs::ConjQuandle { group, rep } => {
            let degree = group_for(group).map_err(plain)?.perms.degree();
            Example::ConjQuandle { group: group.clone(), rep: parse_cycles(degree, rep).map_err(plain)? }
        }
        ExampleArgs::Dihedral { p } => Example::Dihedral { p: *p },
        ExampleArgs::ExAb { p, n } => Example::ExAb { p: *p, n: *n },
        ExampleArgs::Field { p, n } => Example::FieldExample { p: *p, n: *n },
        ExampleArgs::SymN { n } => Example::SymN { n: *n },
        ExampleArgs::AnPr { degree, copies } => Example::AnPr { degree: *degree, copies: *copies },
        ExampleArgs::Ex1 { group, n } => Example::Ex1 { group: group.clone(), n: *n },
    };
    let stem = ex.to_string().replace(['(', ')', ',', ' ', ':'], "_").replace("__", "_").trim_end_matches('_').to_string();
    let ledger = match args {
        ExampleArgs::ExAb { p, n } => Some(coro1_hypotheses(&ybe_core::constructions::coro1::rotation_data(*p, *n))),
        _ => None,
    };
    example_registry(&ex).map(|b| from_built(stem, b)).map_err(refused(ledger))
}

pub fn construct(family: &Family) -> Result<Constructed, Refused> {
    let plain = |f: Failure| Refused { ledger: None, failure: f };
    match family {
        Family::Coro1 { p, n, k, a, a2, u0 } => {
            let d = Coro1Data {
                p: *p,
                n: *n,
                k: *k,
                a: parse_matrix(*p, *n, a).map_err(plain)?,
                a2: parse_matrix(*p, *n, a2).map_err(plain)?,
                u0: parse_u0(*p, *n, u0.as_deref()).map_err(plain)?,
            };
            let b = coro1_build(&d).map_err(refused(Some(coro1_hypotheses(&d))))?;
            Ok(from_built(format!("coro1_p{p}_n{n}_k{k}"), Built::Coro1(b)))
        }
        Family::Coro2 { group, copies, m, a, a2, u0 } => {
            let s = group_for(group).map_err(plain)?;
            let d = Coro2Data {
                v: power_of(&s, *copies).map_err(|e| plain(e.into()))?,
                m: *m,
                a: automorphism(&s, *copies, a).map_err(plain)?,
                a2: automorphism(&s, *copies, a2).map_err(plain)?,
                u0: *u0,
            };
            let b = coro2_build(&d).map_err(refused(Some(coro2_hypotheses(&d).0)))?;
            let stem = format!("coro2_{}_{copies}_m{m}", group.replace(':', ""));
            Ok(from_built(stem, Built::Coro2(b)))
        }
        Family::Byott { p, q } => {
            let b = byott_build(*p, *q).map_err(refused(Some(byott_hypotheses(*p, *q))))?;
            Ok(Constructed {
                stem: format!("byott_{p}_{q}"),
                ledger: Some(b.ledger),
                brace: Some(b.brace),
                x: Some(b.x),
                solution: Some(b.solution),
                structured_order: None,
            })
        }
        Family::Lyubashenko { n, a, b } => {
            let s = lyubashenko_build(*n, *a, *b).map_err(|e| plain(e.into()))?;
            Ok(Constructed {
                stem: format!("lyubashenko_z{n}_{a}_{b}"),
                ledger: None,
                brace: None,
                x: None,
                solution: Some(s),
                structured_order: None,
            })
        }
        Family::Example(args) => example(args),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_parsing() {
        assert_eq!(parse_cycles(4, "(0 1)(2 3)").unwrap(), Perm::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap());
        assert_eq!(parse_cycles(3, "(0,1,2)").unwrap(), Perm::rotation(3, 1));
        assert!(parse_cycles(3, "0 1").is_err());
        assert!(parse_cycles(3, "(0 5)").is_err());
    }

    #[test]
    fn matrix_parsing() {
        assert_eq!(parse_matrix(5, 2, "-1").unwrap(), Mat::scalar(5, 2, -1));
        assert_eq!(parse_matrix(5, 2, "0,-1;1,0").unwrap().rows(), vec![vec![0, 4], vec![1, 0]]);
        assert!(parse_matrix(5, 2, "1,0").is_err());
    }

    #[test]
    fn rotation_is_refused_with_ledger() {
        let f = Family::Coro1 { p: 5, n: 2, k: 4, a: "0,-1;1,0".into(), a2: "0,-1;1,0".into(), u0: None };
        let Err(r) = construct(&f) else { panic!("accepted") };
        assert!(r.failure.message.contains("invariant subspace found"), "{}", r.failure.message);
        assert!(r.ledger.unwrap().failures().iter().any(|h| h.name == "V simple 𝓡-module"));
    }
}
