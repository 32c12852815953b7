//! A fixed collection of small named solutions and braces used for cross-checks.

use crate::brace::{associated_solution, SkewBrace};
use crate::constructions::coro1::{coro1_build, Coro1Data};
use crate::constructions::{byott_build, example_registry, lyubashenko_build, Example, Mat};
use crate::error::Result;
use crate::group::TableGroup;
use crate::perm::Perm;
use crate::solution::{affine_prime_solution, AffineFamily, FinSolution};

#[derive(Clone, Debug)]
pub struct CorpusSolution {
    pub name: String,
    pub solution: FinSolution,
}

#[derive(Clone, Debug)]
pub struct CorpusBrace {
    pub name: String,
    pub brace: SkewBrace,
    pub x: Option<Vec<usize>>,
}

/// `X ⊔ Y` with each part acting trivially on the other.
pub fn disjoint_union(s: &FinSolution, t: &FinSolution) -> Result<FinSolution> {
    let (n, m) = (s.size(), t.size());
    FinSolution::from_fn(
        n + m,
        |x, y| match (x < n, y < n) {
            (true, true) => s.lambda(x, y),
            (false, false) => n + t.lambda(x - n, y - n),
            _ => y,
        },
        |y, x| match (y < n, x < n) {
            (true, true) => s.rho(y, x),
            (false, false) => n + t.rho(y - n, x - n),
            _ => x,
        },
    )
}

fn quandle(group: &str, rep: Perm) -> Result<FinSolution> {
    let b = example_registry(&Example::ConjQuandle { group: group.into(), rep })?;
    Ok(b.solution().expect("table-backed").clone())
}

fn registry_solution(ex: Example) -> Result<FinSolution> {
    Ok(example_registry(&ex)?.solution().expect("table-backed").clone())
}

fn scalar_coro1(p: usize, k: usize, a: i64, a2: i64, u0: usize) -> Coro1Data {
    Coro1Data { p, n: 1, k, a: Mat::scalar(p, 1, a), a2: Mat::scalar(p, 1, a2), u0: vec![u0] }
}

fn cycles(n: usize, c: &[&[usize]]) -> Perm {
    Perm::from_cycles(n, c).expect("valid cycles")
}

fn perm_table(gens: &[Perm]) -> TableGroup {
    let g = crate::perm::closure(gens, gens[0].degree()).expect("small group");
    TableGroup::from_perm_group(&g).expect("group table")
}

fn sym3() -> TableGroup {
    perm_table(&[Perm::transposition(3, 0, 1), Perm::rotation(3, 1)])
}

/// The shipped solution corpus: every entry is validated and has size at most 12.
pub fn solution_corpus() -> Result<Vec<CorpusSolution>> {
    use AffineFamily::*;
    let order6 = coro1_build(&scalar_coro1(3, 2, -1, -1, 0))?;
    let quandle3 = quandle("sym:3", Perm::transposition(3, 0, 1))?;
    let lyu3 = lyubashenko_build(3, 1, 0)?;
    let s3 = sym3();
    let d8 = perm_table(&[Perm::rotation(4, 1), Perm::transposition(4, 0, 2)]);
    let c2xs3 = perm_table(&[Perm::transposition(5, 0, 1), cycles(5, &[&[0, 1, 2]]), Perm::transposition(5, 3, 4)]);
    let entries: Vec<(&str, FinSolution)> = vec![
        ("flip_2", FinSolution::flip(2)),
        ("flip_3", FinSolution::flip(3)),
        ("flip_4", FinSolution::flip(4)),
        ("lyubashenko_z3_1_0", lyu3.clone()),
        ("lyubashenko_z4_1_1", lyubashenko_build(4, 1, 1)?),
        ("lyubashenko_z5_2_3", lyubashenko_build(5, 2, 3)?),
        ("lyubashenko_z6_1_2", lyubashenko_build(6, 1, 2)?),
        ("lyubashenko_z7_1_0", lyubashenko_build(7, 1, 0)?),
        ("lyubashenko_swap_4", FinSolution::lyubashenko(&cycles(4, &[&[0, 1], &[2, 3]]), &cycles(4, &[&[0, 2], &[1, 3]]))?),
        ("quandle_sym3_transpositions", quandle3.clone()),
        ("quandle_sym4_transpositions", quandle("sym:4", Perm::transposition(4, 0, 1))?),
        ("quandle_sym4_3cycles", quandle("sym:4", cycles(4, &[&[0, 1, 2]]))?),
        ("quandle_sym4_4cycles", quandle("sym:4", cycles(4, &[&[0, 1, 2, 3]]))?),
        ("quandle_alt4_3cycles", quandle("alt:4", cycles(4, &[&[0, 1, 2]]))?),
        ("quandle_sym4_double_transpositions", quandle("sym:4", cycles(4, &[&[0, 1], &[2, 3]]))?),
        ("coro1_order6", order6.solution.clone()),
        ("coro1_twisted_z3_k6", coro1_build(&scalar_coro1(3, 6, -1, 1, 1))?.solution),
        ("dihedral_5", registry_solution(Example::Dihedral { p: 5 })?),
        ("dihedral_7", registry_solution(Example::Dihedral { p: 7 })?),
        ("dihedral_11", registry_solution(Example::Dihedral { p: 11 })?),
        ("field_f4", registry_solution(Example::FieldExample { p: 2, n: 2 })?),
        ("field_f8", registry_solution(Example::FieldExample { p: 2, n: 3 })?),
        ("field_f9", registry_solution(Example::FieldExample { p: 3, n: 2 })?),
        ("ex_ab_3_2", registry_solution(Example::ExAb { p: 3, n: 2 })?),
        ("byott_2_3", byott_build(2, 3)?.solution),
        ("affine1_p5_a2_b2_c1", affine_prime_solution(5, One { a: 2, b: 2, c: 1 })?),
        ("affine1_p7_a3_b1_c0", affine_prime_solution(7, One { a: 3, b: 1, c: 0 })?),
        ("affine1_p11_a2_b3_c4", affine_prime_solution(11, One { a: 2, b: 3, c: 4 })?),
        ("affine2_p3_a2_b1_c1", affine_prime_solution(3, Two { a: 2, b: 1, c: 1 })?),
        ("affine2_p7_a3_b2_c0", affine_prime_solution(7, Two { a: 3, b: 2, c: 0 })?),
        ("affine3_p5_1_2", affine_prime_solution(5, Three { c1: 1, c2: 2 })?),
        ("associated_trivial_sym3", associated_solution(&SkewBrace::trivial(&s3))?),
        ("associated_almost_trivial_sym3", associated_solution(&SkewBrace::almost_trivial(&s3))?),
        ("associated_coro1_order6", associated_solution(&order6.brace)?),
        ("derived_coro1_order6", order6.solution.derived()),
        ("union_quandle3_quandle3", disjoint_union(&quandle3, &quandle3)?),
        ("union_coro1_order6_lyubashenko_z3", disjoint_union(&order6.solution, &lyu3)?),
        ("union_flip1_quandle3", disjoint_union(&FinSolution::flip(1), &quandle3)?),
        ("union_quandle3_flip2", disjoint_union(&quandle3, &FinSolution::flip(2))?),
        ("union_coro1_order6_flip2", disjoint_union(&order6.solution, &FinSolution::flip(2))?),
        ("associated_trivial_d8", associated_solution(&SkewBrace::trivial(&d8))?),
        ("associated_trivial_c2xsym3", associated_solution(&SkewBrace::trivial(&c2xs3))?),
    ];
    Ok(entries.into_iter().map(|(name, solution)| CorpusSolution { name: name.into(), solution }).collect())
}

/// Small table-backed braces, with the subset `X` where the brace comes from a construction.
pub fn brace_corpus() -> Result<Vec<CorpusBrace>> {
    let s3 = sym3();
    let order6 = coro1_build(&scalar_coro1(3, 2, -1, -1, 0))?;
    let twisted = coro1_build(&scalar_coro1(3, 6, -1, 1, 1))?;
    let f4 = example_registry(&Example::FieldExample { p: 2, n: 2 })?;
    let byott = byott_build(2, 3)?;
    let dihedral5 = example_registry(&Example::Dihedral { p: 5 })?;
    let entries = vec![
        ("trivial_sym3", SkewBrace::trivial(&s3), None),
        ("almost_trivial_sym3", SkewBrace::almost_trivial(&s3), None),
        ("trivial_z6", SkewBrace::trivial(&TableGroup::cyclic(6)), None),
        ("coro1_order6", order6.brace, Some(order6.x)),
        ("coro1_twisted_order18", twisted.brace, Some(twisted.x)),
        ("dihedral_10", dihedral5.table_brace().expect("table").clone(), Some(dihedral5.x().to_vec())),
        ("field_f4", f4.table_brace().expect("table").clone(), Some(f4.x().to_vec())),
        ("byott_2_3", byott.brace, Some(byott.x)),
    ];
    Ok(entries.into_iter().map(|(name, brace, x)| CorpusBrace { name: name.into(), brace, x }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn corpus_shape() {
        let c = solution_corpus().unwrap();
        assert!(c.len() >= 30);
        let names: HashSet<&str> = c.iter().map(|e| e.name.as_str()).collect();
        assert_eq!(names.len(), c.len());
        assert!(c.iter().all(|e| e.solution.size() <= 12));
        let simple = c.iter().filter(|e| e.solution.is_simple_bruteforce()).count();
        let irr = c.iter().filter(|e| e.solution.is_irretractable()).count();
        let lyu = c.iter().filter(|e| e.solution.is_lyubashenko()).count();
        assert!(simple >= 5 && simple + 5 <= c.len(), "simple = {simple}");
        assert!(irr >= 5 && irr + 5 <= c.len(), "irretractable = {irr}");
        let retractable_non_lyu = c.iter().filter(|e| !e.solution.is_irretractable() && !e.solution.is_lyubashenko()).count();
        assert!(lyu >= 5 && retractable_non_lyu >= 3);
    }

    #[test]
    fn brace_corpus_shape() {
        let c = brace_corpus().unwrap();
        assert!(c.len() >= 6);
        for e in &c {
            if let Some(x) = &e.x {
                crate::brace::check_invariant(&e.brace, x).unwrap();
            }
        }
    }

    #[test]
    fn union_of_two_points() {
        let u = disjoint_union(&FinSolution::flip(1), &FinSolution::flip(1)).unwrap();
        assert_eq!(u, FinSolution::flip(2));
    }
}
