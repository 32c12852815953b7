//! Byott's simple skew braces of order `p^p·q` and the simple solution on the elements of order `q`.

use rayon::prelude::*;

use super::matrix::{vec_add, vec_from_index, vec_index, vec_neg, vec_sub, Mat};
use super::HypothesisLedger;
use crate::brace::{restricted_solution, smallest_nonzero_ideal, BraceLike, SkewBrace};
use crate::error::{Error, Result};
use crate::group::{semidirect_product, TableGroup};
use crate::perm::{closure, Perm};
use crate::solution::{is_prime, FinSolution};

/// Largest `p^p·q` accepted.
pub const BYOTT_CAP: usize = 512;

/// Largest `|X|` for which the solution is checked for simplicity by brute force.
pub const BYOTT_BRUTE_FORCE_LIMIT: usize = 64;

#[derive(Clone, Debug)]
pub struct ByottBuild {
    pub brace: SkewBrace,
    /// Elements of `(B,+)` whose order is not a power of `p`, sorted.
    pub x: Vec<usize>,
    pub solution: FinSolution,
    /// The matrix `M` of order `q` with `J M J⁻¹ = M^p`.
    pub m: Mat,
    pub ledger: HypothesisLedger,
    /// Whether the restricted solution was checked by brute force.
    pub brute_forced: bool,
}

/// The `p × p` Jordan block with eigenvalue 1.
pub fn jordan_block(p: usize) -> Mat {
    let rows: Vec<Vec<i64>> = (0..p).map(|i| (0..p).map(|j| i64::from(i == j || j == i + 1)).collect()).collect();
    Mat::from_rows(p, &rows).expect("square rows")
}

/// The first matrix in lexicographic order with `M ≠ I`, `M^q = I` and `J M J⁻¹ = M^p`.
pub fn find_m(p: usize, q: usize, j: &Mat) -> Option<Mat> {
    let total = p.checked_pow((p * p) as u32)?;
    let mp = |m: &Mat| m.pow(p as u64);
    (0..total).into_par_iter().find_first(|&idx| {
        let m = Mat::from_index(p, p, idx);
        !m.is_identity() && m.pow(q as u64).is_identity() && j.mul(&m) == mp(&m).mul(j)
    })
    .map(|idx| Mat::from_index(p, p, idx))
}

pub fn byott_hypotheses(p: usize, q: usize) -> HypothesisLedger {
    let mut l = HypothesisLedger::default();
    l.push("p prime", is_prime(p), format!("p = {p}"));
    l.push("q prime", is_prime(q), format!("q = {q}"));
    if !is_prime(p) || !is_prime(q) {
        return l;
    }
    let pp = p.checked_pow(p as u32);
    let divides = pp.is_some_and(|pp| (pp - 1) % q == 0);
    l.push("q divides p^p−1", divides, pp.map_or("p^p overflows".into(), |pp| format!("p^p−1 = {}", pp - 1)));
    l.push("q does not divide p−1", (p - 1) % q != 0, format!("p−1 = {}", p - 1));
    let size = pp.and_then(|pp| pp.checked_mul(q));
    l.push(
        "p^p·q within cap",
        size.is_some_and(|s| s <= BYOTT_CAP),
        format!("p^p·q = {}, cap {BYOTT_CAP}", size.map_or("overflow".into(), |s| s.to_string())),
    );
    l
}

/// An element `(u, G)` of `AGL(V)`.
type Affine = (Vec<usize>, Mat);

pub fn byott_build(p: usize, q: usize) -> Result<ByottBuild> {
    let mut ledger = byott_hypotheses(p, q);
    ledger.reject_on_failure()?;
    let j = jordan_block(p);
    let m = find_m(p, q, &j).ok_or_else(|| Error::Internal(format!("no M of order {q} with JMJ⁻¹ = M^{p}")))?;
    ledger.push("M found", true, format!("M = {:?}", m.rows()));

    let vs = p.pow(p as u32);
    let n = vs * q;
    let vecs: Vec<Vec<usize>> = (0..vs).map(|i| vec_from_index(p, p, i)).collect();
    let vflat = (0..vs * vs).map(|t| vec_index(p, &vec_add(p, &vecs[t / vs], &vecs[t % vs]))).collect();
    let vt = TableGroup::from_flat(vs, vflat, true)?;
    let m_perm = Perm::from_images((0..vs).map(|i| vec_index(p, &m.apply(&vecs[i]))).collect())?;
    let add = semidirect_product(&vt, q, &m_perm)?;
    let m_pows: Vec<Mat> = (0..q).map(|i| m.pow(i as u64)).collect();
    let element = |(v, g): &Affine| -> Result<usize> {
        let i = m_pows.iter().position(|mi| mi == g).ok_or_else(|| Error::Internal("conjugate leaves V ⋊ ⟨M⟩".into()))?;
        Ok(vec_index(p, v) + vs * i)
    };
    // γ_g(h) = g h g⁻¹ in AGL(V), as a permutation of B
    let gamma = |(u, g): &Affine| -> Result<Perm> {
        let gi = g.inverse().ok_or_else(|| Error::Internal("singular matrix".into()))?;
        let img = (0..n)
            .map(|c| {
                let (w, h) = (&vecs[c % vs], &m_pows[c / vs]);
                let ghg = g.mul(h).mul(&gi);
                element(&(vec_sub(p, &vec_add(p, u, &g.apply(w)), &ghg.apply(u)), ghg))
            })
            .collect::<Result<Vec<_>>>()?;
        Perm::from_images(img)
    };
    // (b, φ) acts on B by c ↦ b + φ(c)
    let add_rows = add.rows();
    let holo = |b: usize, phi: &Perm| Perm::from_images((0..n).map(|c| add_rows[b][phi.apply(c)]).collect());
    let unit = |i: usize| (0..p).map(|t| usize::from(t == i)).collect::<Vec<usize>>();
    let ident = Mat::identity(p, p);
    let mut gens = vec![holo(vs, &Perm::identity(n))?];
    for i in 0..p - 1 {
        let e = unit(i);
        gens.push(holo(vec_index(p, &e), &gamma(&(vec_neg(p, &e), ident.clone()))?)?);
    }
    let ep = unit(p - 1);
    gens.push(holo(vec_index(p, &ep), &gamma(&(vec_neg(p, &ep), j.clone()))?)?);
    let g = closure(&gens, n)?;
    let mut by_image = vec![usize::MAX; n];
    for (idx, e) in g.elements().iter().enumerate() {
        if by_image[e.apply(0)] != usize::MAX {
            return Err(Error::Internal("the generated subgroup of the holomorph is not regular".into()));
        }
        by_image[e.apply(0)] = idx;
    }
    if g.order() != n {
        return Err(Error::Internal(format!("generated subgroup has order {} ≠ {n}", g.order())));
    }
    let mul_flat = (0..n * n).map(|t| g.elements()[by_image[t / n]].apply(t % n)).collect();
    let mul = TableGroup::from_flat(n, mul_flat, false)?;
    let brace = SkewBrace::from_groups(add, mul)?;

    let simple = smallest_nonzero_ideal(&brace).is_some_and(|i| i.len() == n);
    if !simple {
        return Err(Error::Internal("the brace has a proper nonzero ideal".into()));
    }
    let is_p_power = |mut o: usize| {
        while o % p == 0 {
            o /= p;
        }
        o == 1
    };
    let x: Vec<usize> = (0..n).filter(|&e| !is_p_power(brace.add_order(e))).collect();
    if x.len() != vs * (q - 1) {
        return Err(Error::Internal(format!("|X| = {} ≠ p^p(q−1)", x.len())));
    }
    let (solution, _) = restricted_solution(&brace, &x)?;
    let brute_forced = x.len() <= BYOTT_BRUTE_FORCE_LIMIT;
    if brute_forced && !solution.is_simple_bruteforce() {
        return Err(Error::Internal("restricted solution is not simple".into()));
    }
    Ok(ByottBuild { brace, x, solution, m, ledger, brute_forced })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::{brace_invariants, simple_nl_check};
    use crate::group::FiniteGroup;

    #[test]
    fn order_twelve() {
        let b = byott_build(2, 3).unwrap();
        assert_eq!(b.brace.order(), 12);
        assert_eq!(b.x.len(), 8);
        let add = b.brace.add_group();
        assert_eq!(add.center(), vec![0]);
        assert!((0..12).all(|e| add.element_order(e) != 6));
        assert!(!b.brace.mul_group().is_abelian());
        let inv = brace_invariants(&b.brace).unwrap();
        assert_eq!(inv.b2.len(), 12);
        assert!(b.brute_forced && b.solution.is_simple_bruteforce());
        assert!(simple_nl_check(&b.solution).unwrap().verdict);
    }

    #[test]
    fn order_351() {
        let b = byott_build(3, 13).unwrap();
        assert_eq!(b.brace.order(), 351);
        assert_eq!(b.x.len(), 324);
        assert!(!b.brute_forced);
    }

    #[test]
    fn rejections() {
        match byott_build(2, 5).unwrap_err() {
            Error::Rejected(msgs) => assert!(msgs.iter().any(|m| m.starts_with("q divides p^p−1"))),
            e => panic!("unexpected {e:?}"),
        }
        assert!(byott_build(4, 3).is_err());
        assert!(byott_build(5, 11).is_err());
    }

    #[test]
    fn m_search_is_deterministic() {
        let j = jordan_block(2);
        let m = find_m(2, 3, &j).unwrap();
        assert_eq!(m.order(3), Some(3));
        assert_eq!(j.mul(&m).mul(&j.inverse().unwrap()), m.pow(2));
    }
}
