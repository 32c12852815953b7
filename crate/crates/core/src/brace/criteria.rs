use rayon::prelude::*;

use super::{
    additive_closure, check_invariant, ideal_closure, is_ideal, permutation_brace, smallest_nonzero_ideal,
    BraceLike, Ideal,
};
use crate::error::{Error, Result};
use crate::perm::{orbits, Perm, UnionFind};
use crate::solution::FinSolution;

/// Outcome of the permutation-brace simplicity criterion for a non-Lyubashenko solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleNlReport {
    /// False for Lyubashenko solutions; the verdict then comes from the classification.
    pub applies: bool,
    pub irretractable: bool,
    /// `𝒟 = ⟨h_x − h_y⟩₊` is the smallest nonzero ideal of `𝒢(X, r)`.
    pub d_is_minimal_ideal: bool,
    /// The group generated by the `σ` and `λ` components of `𝒟` is transitive on `X`.
    pub d_transitive: bool,
    pub brace_order: usize,
    pub d_order: usize,
    pub verdict: bool,
}

pub fn simple_nl_check(s: &FinSolution) -> Result<SimpleNlReport> {
    let n = s.size();
    if n < 2 {
        return Err(Error::InvalidParameter("simplicity needs at least two points".into()));
    }
    if s.is_lyubashenko() {
        let verdict = s.classify_lyubashenko().is_simple;
        return Ok(SimpleNlReport {
            applies: false,
            irretractable: s.is_irretractable(),
            d_is_minimal_ideal: false,
            d_transitive: false,
            brace_order: 0,
            d_order: 0,
            verdict,
        });
    }
    let irretractable = s.is_irretractable();
    let pb = permutation_brace(s)?;
    let b = &pb.brace;
    let h0 = pb.generators[0];
    let diffs: Vec<usize> = pb.generators.iter().map(|&h| b.sub(h, h0)).collect();
    let d = additive_closure(b, &diffs);
    is_ideal(b, &d).map_err(|e| Error::Internal(format!("𝒟 is not an ideal: {e}")))?;
    let d = Ideal::from_sorted_unchecked(d);
    let d_is_minimal_ideal = !d.is_zero() && smallest_nonzero_ideal(b).as_ref() == Some(&d);

    let mut perms: Vec<Perm> = Vec::new();
    for &e in d.elements() {
        let (sp, lp) = &pb.pairs[e];
        perms.push(sp.clone());
        perms.push(lp.clone());
    }
    perms.sort_by(|a, b| a.images().cmp(b.images()));
    perms.dedup();
    let d_transitive = orbits(&perms, n)?.is_full();
    let verdict = irretractable && d_is_minimal_ideal && d_transitive;
    Ok(SimpleNlReport {
        applies: true,
        irretractable,
        d_is_minimal_ideal,
        d_transitive,
        brace_order: b.order(),
        d_order: d.len(),
        verdict,
    })
}

/// Outcome of the simplicity criterion for a solution sitting inside a brace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGenReport {
    /// `X` generates `(B, +)`.
    pub generates: bool,
    /// The ideal `V` generated by the differences `x − y`.
    pub v: Ideal,
    /// `V` is contained in every nonzero ideal.
    pub v_is_minimal: bool,
    /// `⟨σ_v λ_w : v, w ∈ V⟩` restricted to `X` is transitive.
    pub v_transitive: bool,
    pub verdict: bool,
}

/// Decides the simplicity criterion for the solution induced on the invariant subset `x`.
pub fn simple_gen_check<B: BraceLike + ?Sized>(b: &B, x: &[usize]) -> Result<SimpleGenReport> {
    let mut x = x.to_vec();
    x.sort_unstable();
    x.dedup();
    if x.is_empty() {
        return Err(Error::InvalidParameter("empty subset".into()));
    }
    check_invariant(b, &x)?;
    let n = b.order();
    let generates = additive_closure(b, &x).len() == n;
    let diffs: Vec<usize> = x.iter().map(|&e| b.sub(e, x[0])).collect();
    let v = ideal_closure(b, &diffs);
    let v_is_minimal = !v.is_zero() && minimal_below_all(b, &v);

    let pos: std::collections::HashMap<usize, usize> = x.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let m = x.len();
    let v_elems = v.elements();
    // σ is an anti-homomorphism of (B,+), so additive generators of V suffice for the σ part
    let v_add_gens = additive_generators(b, v_elems);
    let mut uf = UnionFind::new(m);
    for (i, &e) in x.iter().enumerate() {
        for &g in &v_add_gens {
            uf.union(i, pos[&b.sigma(g, e)]);
        }
    }
    let lam_edges: Vec<(usize, usize)> = v_elems
        .par_iter()
        .flat_map_iter(|&w| x.iter().enumerate().map(move |(i, &e)| (i, b.lambda(w, e))))
        .collect();
    for (i, t) in lam_edges {
        uf.union(i, pos[&t]);
    }
    let v_transitive = uf.class_count() == 1;
    let verdict = generates && v_is_minimal && v_transitive;
    Ok(SimpleGenReport { generates, v, v_is_minimal, v_transitive, verdict })
}

/// `v ⊆ I` for every nonzero ideal `I`, checked on one principal ideal per orbit.
fn minimal_below_all<B: BraceLike + ?Sized>(b: &B, v: &Ideal) -> bool {
    let n = b.order();
    let mut uf = UnionFind::new(n);
    let add_gens = b.add_generators();
    let mul_gens = b.mul_generators();
    for a in 1..n {
        for &t in &add_gens {
            uf.union(a, b.sigma(t, a));
        }
        for &g in &mul_gens {
            uf.union(a, b.lambda(g, a));
        }
    }
    let part = uf.into_partition();
    let seeds: Vec<usize> = (1..n).filter(|&a| part.rep(a) == a).collect();
    seeds.par_iter().all(|&s| v.is_subset_of(&ideal_closure(b, &[s])))
}

/// A small generating set of the additive subgroup `h`.
fn additive_generators<B: BraceLike + ?Sized>(b: &B, h: &[usize]) -> Vec<usize> {
    let n = b.order();
    let mut member = vec![false; n];
    member[0] = true;
    let mut gens = Vec::new();
    for &e in h {
        if member[e] {
            continue;
        }
        gens.push(e);
        for a in additive_closure(b, &gens) {
            member[a] = true;
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::brace_tests::sym_group;
    use crate::brace::SkewBrace;
    use crate::solution::solution_tests::conj_quandle3;

    #[test]
    fn nl_examples() {
        let r = simple_nl_check(&conj_quandle3()).unwrap();
        assert!(r.applies && r.irretractable && r.d_is_minimal_ideal && r.d_transitive && r.verdict);
        assert!(conj_quandle3().is_simple_bruteforce());

        let lyu = FinSolution::lyubashenko(&Perm::rotation(3, 1), &Perm::rotation(3, 1)).unwrap();
        let r = simple_nl_check(&lyu).unwrap();
        assert!(!r.applies && r.verdict);
    }

    #[test]
    fn gen_examples() {
        // transpositions in S3 with the trivial brace: the conjugation quandle of size 3
        let b = SkewBrace::trivial(&sym_group(3));
        let x: Vec<usize> = (1..6).filter(|&a| b.add_order(a) == 2).collect();
        assert_eq!(x.len(), 3);
        let r = simple_gen_check(&b, &x).unwrap();
        assert!(r.generates && r.v_is_minimal && r.v_transitive && r.verdict);
        assert_eq!(r.v.len(), 3);
    }
}
