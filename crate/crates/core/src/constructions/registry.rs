//! Named examples, each routed through the builder that checks its hypotheses.

use std::fmt;

use super::coro1::{coro1_build, rotation_data, Coro1Build, Coro1Data};
use super::coro2::{componentwise_conj, coro2_build, ex1_twist, ex1_u0, power_of, shift, Coro2Build, Coro2Data};
use super::groups::{alternating, psl27, simple_group, symmetric, PermTable};
use super::matrix::{primitive_companion, Mat};
use crate::brace::{restricted_solution, BraceLike, SkewBrace};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::Perm;
use crate::solution::FinSolution;

/// Largest brace order the `ex1` entry will build.
pub const EX1_CAP: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Example {
    /// Conjugation quandle on the class of `rep` in `sym:N`, `alt:N` or `psl27`.
    ConjQuandle { group: String, rep: Perm },
    Dihedral { p: usize },
    ExAb { p: usize, n: usize },
    FieldExample { p: usize, n: usize },
    SymN { n: usize },
    /// `V = Alt(degree)^copies`, cyclic order `2·copies`.
    AnPr { degree: usize, copies: usize },
    /// `V = S^n` with `n` the order of the first element of that order in `S`.
    Ex1 { group: String, n: usize },
}

impl fmt::Display for Example {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Example::ConjQuandle { group, rep } => write!(f, "conj_quandle({group}, {rep})"),
            Example::Dihedral { p } => write!(f, "dihedral({p})"),
            Example::ExAb { p, n } => write!(f, "ex_ab({p},{n})"),
            Example::FieldExample { p, n } => write!(f, "field_example({p},{n})"),
            Example::SymN { n } => write!(f, "sym_n({n})"),
            Example::AnPr { degree, copies } => write!(f, "an_pr({degree},{copies})"),
            Example::Ex1 { group, n } => write!(f, "ex1({group},{n})"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Built {
    Coro1(Coro1Build),
    Coro2(Coro2Build),
    /// A trivial brace on a group with `X` a conjugacy class.
    Quandle { brace: SkewBrace, x: Vec<usize>, solution: FinSolution },
}

impl Built {
    pub fn brace(&self) -> &dyn BraceLike {
        match self {
            Built::Coro1(b) => &b.brace,
            Built::Coro2(b) => b.brace.as_dyn(),
            Built::Quandle { brace, .. } => brace,
        }
    }

    pub fn table_brace(&self) -> Option<&SkewBrace> {
        match self {
            Built::Coro1(b) => Some(&b.brace),
            Built::Coro2(b) => b.brace.as_table(),
            Built::Quandle { brace, .. } => Some(brace),
        }
    }

    pub fn x(&self) -> &[usize] {
        match self {
            Built::Coro1(b) => &b.x,
            Built::Coro2(b) => &b.x,
            Built::Quandle { x, .. } => x,
        }
    }

    /// The solution on `X`; absent for structured carriers.
    pub fn solution(&self) -> Option<&FinSolution> {
        match self {
            Built::Coro1(b) => Some(&b.solution),
            Built::Coro2(b) => b.solution.as_ref(),
            Built::Quandle { solution, .. } => Some(solution),
        }
    }

    pub fn ledger(&self) -> Option<&super::HypothesisLedger> {
        match self {
            Built::Coro1(b) => Some(&b.ledger),
            Built::Coro2(b) => Some(&b.ledger),
            Built::Quandle { .. } => None,
        }
    }
}

/// `sym:N`, `alt:N` or `psl27`.
pub fn named_group(spec: &str) -> Result<PermTable> {
    let degree = |s: &str| {
        s.parse::<usize>().map_err(|_| Error::InvalidParameter(format!("bad degree in group '{spec}'")))
    };
    match spec.split_once(':') {
        Some(("sym", d)) => symmetric(degree(d)?),
        Some(("alt", d)) => alternating(degree(d)?),
        _ if spec == "psl27" => psl27(),
        _ => Err(Error::InvalidParameter(format!("unknown group '{spec}' (expected sym:N, alt:N or psl27)"))),
    }
}

fn conj_quandle(group: &str, rep: &Perm) -> Result<Built> {
    let g = named_group(group)?;
    let r = g.index_of(rep).ok_or_else(|| Error::InvalidParameter(format!("{rep} is not in {group}")))?;
    let brace = SkewBrace::trivial(&g.table);
    let mut x = g.table.conjugacy_class(r);
    x.sort_unstable();
    let (solution, _) = restricted_solution(&brace, &x)?;
    Ok(Built::Quandle { brace, x, solution })
}

fn scalar_data(p: usize, k: usize, a: i64, a2: i64) -> Coro1Data {
    Coro1Data { p, n: 1, k, a: Mat::scalar(p, 1, a), a2: Mat::scalar(p, 1, a2), u0: vec![0] }
}

pub fn example_registry(ex: &Example) -> Result<Built> {
    match ex {
        Example::ConjQuandle { group, rep } => conj_quandle(group, rep),
        // λ_{a+c} is conjugation by c, exactly as for the symmetric group
        Example::Dihedral { p } => coro1_build(&scalar_data(*p, 2, -1, -1)).map(Built::Coro1),
        Example::ExAb { p, n } => coro1_build(&rotation_data(*p, *n)).map(Built::Coro1),
        Example::FieldExample { p, n } => {
            let xi = primitive_companion(*p, *n)?;
            let k = p.pow(*n as u32) - 1;
            let d = Coro1Data { p: *p, n: *n, k, a: xi.clone(), a2: xi, u0: vec![0; *n] };
            coro1_build(&d).map(Built::Coro1)
        }
        Example::SymN { n } => {
            let an = alternating(*n)?;
            let c = componentwise_conj(&an, 1, &Perm::transposition(*n, 0, 1))?;
            let d = Coro2Data { v: power_of(&an, 1)?, m: 2, a: c.clone(), a2: c, u0: 0 };
            coro2_build(&d).map(Built::Coro2)
        }
        Example::AnPr { degree, copies } => {
            let an = alternating(*degree)?;
            let a = shift(&an, *copies, Some(&Perm::transposition(*degree, 0, 1)))?;
            let d = Coro2Data { v: power_of(&an, *copies)?, m: 2 * copies, a: a.clone(), a2: a, u0: 0 };
            coro2_build(&d).map(Built::Coro2)
        }
        Example::Ex1 { group, n } => {
            let s = simple_group(group)?;
            let size = s.table.order().checked_pow(*n as u32).and_then(|v| v.checked_mul(*n));
            if size.map_or(true, |v| v > EX1_CAP) {
                return Err(Error::size_limit(format!("ex1({group},{n}) brace"), EX1_CAP));
            }
            let a = s
                .perms
                .elements()
                .iter()
                .find(|g| *n > 1 && g.order() == *n)
                .cloned()
                .ok_or_else(|| Error::InvalidParameter(format!("{group} has no element of order {n}")))?;
            let d = Coro2Data {
                v: power_of(&s, *n)?,
                m: *n,
                a: shift(&s, *n, None)?,
                a2: ex1_twist(&s, *n, &a)?,
                u0: ex1_u0(&s, *n, &a)?,
            };
            coro2_build(&d).map(Built::Coro2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::simple_nl_check;

    #[test]
    fn field_example_f4() {
        let b = example_registry(&Example::FieldExample { p: 2, n: 2 }).unwrap();
        assert_eq!(b.brace().order(), 12);
        assert_eq!(b.x().len(), 4);
        assert!(b.ledger().unwrap().all_pass());
        assert!(b.solution().unwrap().is_simple_bruteforce());
    }

    #[test]
    fn sym5() {
        let b = example_registry(&Example::SymN { n: 5 }).unwrap();
        assert_eq!(b.x().len(), 10);
        let s = b.solution().unwrap();
        assert!(s.is_simple_bruteforce());
        assert!(simple_nl_check(s).unwrap().verdict);
    }

    #[test]
    fn dihedral_and_quandle() {
        let d = example_registry(&Example::Dihedral { p: 3 }).unwrap();
        assert_eq!(d.x().len(), 3);
        assert!(d.solution().unwrap().is_simple_bruteforce());
        let q = example_registry(&Example::ConjQuandle { group: "sym:3".into(), rep: Perm::transposition(3, 0, 1) }).unwrap();
        let s = q.solution().unwrap();
        assert_eq!(s.size(), 3);
        assert!((0..3).all(|x| s.lambda_perm(x).is_identity()));
        assert!(s.is_simple_bruteforce());
        assert!(example_registry(&Example::Dihedral { p: 4 }).is_err());
    }

    #[test]
    fn ex_ab_gate() {
        assert!(example_registry(&Example::ExAb { p: 3, n: 2 }).is_ok());
        assert!(example_registry(&Example::ExAb { p: 5, n: 2 }).is_err());
    }

    #[test]
    fn ex1_a5_pair() {
        let b = example_registry(&Example::Ex1 { group: "a5".into(), n: 2 }).unwrap();
        assert_eq!(b.brace().order(), 7200);
        assert!(b.ledger().unwrap().all_pass());
        assert!(b.solution().is_none());
        assert!(example_registry(&Example::Ex1 { group: "a5".into(), n: 3 }).is_err());
        assert!(example_registry(&Example::Ex1 { group: "a5".into(), n: 4 }).is_err());
    }
}
