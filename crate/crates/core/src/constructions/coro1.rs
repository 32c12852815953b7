//! Braces `V ⋊ C_k` over an elementary abelian `V = F_p^n`.

use super::matrix::{generated_subring, invariant_subspace, vec_add, vec_from_index, vec_index, vec_sub, Mat};
use super::HypothesisLedger;
use crate::brace::{restricted_solution, SkewBrace};
use crate::error::{Error, Result};
use crate::group::TableGroup;
use crate::perm::{gcd, lcm};
use crate::solution::{is_prime, FinSolution};

/// Largest brace order built as explicit tables.
pub const CORO1_TABLE_LIMIT: usize = 4096;

/// Largest `|X|` for which simplicity is confirmed by brute force after a build.
pub const BRUTE_FORCE_LIMIT: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coro1Data {
    pub p: usize,
    pub n: usize,
    pub k: usize,
    pub a: Mat,
    /// The restriction of `λ` to `V`.
    pub a2: Mat,
    pub u0: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Coro1Build {
    pub brace: SkewBrace,
    /// The elements `v + x`, sorted.
    pub x: Vec<usize>,
    /// The solution given by the closed formula, indexed like `x`.
    pub solution: FinSolution,
    /// The elements of `V` inside the brace.
    pub v: Vec<usize>,
    pub ledger: HypothesisLedger,
}

impl Coro1Data {
    pub fn v_size(&self) -> usize {
        self.p.pow(self.n as u32)
    }

    /// `v_1 = u_0 − A u_0`.
    pub fn v1(&self) -> Vec<usize> {
        vec_sub(self.p, &self.u0, &self.a.apply(&self.u0))
    }

    /// Element `v + i x` of the brace.
    pub fn element(&self, v: &[usize], i: usize) -> usize {
        vec_index(self.p, v) + self.v_size() * (i % self.k)
    }

    pub fn split(&self, e: usize) -> (Vec<usize>, usize) {
        (vec_from_index(self.p, self.n, e % self.v_size()), e / self.v_size())
    }
}

/// Evaluates every hypothesis and reports each one.
pub fn coro1_hypotheses(d: &Coro1Data) -> HypothesisLedger {
    let mut l = HypothesisLedger::default();
    let (p, n, k) = (d.p, d.n, d.k);
    l.push("p prime", is_prime(p), format!("p = {p}"));
    l.push("k > 1", k > 1, format!("k = {k}"));
    let shapes_ok = d.a.dim() == n && d.a2.dim() == n && d.u0.len() == n && d.a.p() == p && d.a2.p() == p;
    l.push("dimensions agree", shapes_ok, format!("n = {n}"));
    if !shapes_ok || !is_prime(p) || n == 0 {
        return l;
    }
    let a_inv = d.a.inverse();
    let a2_inv = d.a2.inverse();
    l.push("A invertible", a_inv.is_some(), format!("A = {:?}", d.a));
    l.push("A' invertible", a2_inv.is_some(), format!("A' = {:?}", d.a2));
    l.push("A ≠ 1", !d.a.is_identity(), String::new());
    l.push("AA' = A'A", d.a.mul(&d.a2) == d.a2.mul(&d.a), String::new());
    if a_inv.is_none() || a2_inv.is_none() {
        return l;
    }
    let q = d.v_size() - 1;
    let g = gcd(k, q);
    let oa = d.a.order(q.max(1)).unwrap_or(0);
    let oa2 = d.a2.order(q.max(1)).unwrap_or(0);
    let show = |o: usize| if o == 0 { "> p^n−1".to_string() } else { o.to_string() };
    l.push(
        "o(A) divides gcd(k, p^n−1)",
        oa > 0 && g % oa == 0,
        format!("o(A) = {}, gcd(k, p^n−1) = {g}", show(oa)),
    );
    l.push(
        "o(A') divides gcd(k, p^n−1)",
        oa2 > 0 && g % oa2 == 0,
        format!("o(A') = {}, gcd(k, p^n−1) = {g}", show(oa2)),
    );
    let v1_zero = d.v1().iter().all(|&c| c == 0);
    let (name, holds, detail) = if d.a2.is_identity() && v1_zero {
        ("A' = 1 and v1 = 0 ⟹ k = o(A)", k == oa, format!("k = {k}, o(A) = {}", show(oa)))
    } else if d.a2.is_identity() {
        ("A' = 1 and v1 ≠ 0 ⟹ k = o(A)·p", k == oa * p, format!("k = {k}, o(A)·p = {}", oa * p))
    } else {
        let m = if oa > 0 && oa2 > 0 { lcm(oa, oa2) } else { 0 };
        ("A' ≠ 1 ⟹ k = lcm(o(A),o(A'))", k == m, format!("k = {k}, lcm(o(A),o(A')) = {}", show(m)))
    };
    l.push(name, holds, detail);
    match invariant_subspace(p, n, &[&d.a, &d.a2]) {
        None => l.push("V simple 𝓡-module", true, String::new()),
        Some(s) => l.push("V simple 𝓡-module", false, format!("invariant subspace found: ⟨{:?}⟩", s.basis())),
    }
    l
}

/// `1 + A' + ⋯ + A'^{i−1}`.
fn geometric_sum(a2: &Mat, i: usize) -> Mat {
    let mut acc = Mat::scalar(a2.p(), a2.dim(), 0);
    let mut pw = Mat::identity(a2.p(), a2.dim());
    for _ in 0..i {
        acc = acc.add(&pw);
        pw = pw.mul(a2);
    }
    acc
}

/// Builds the brace, the solution on `X = V + x` and runs the postcondition checks.
pub fn coro1_build(d: &Coro1Data) -> Result<Coro1Build> {
    let mut ledger = coro1_hypotheses(d);
    ledger.reject_on_failure()?;
    let (p, k) = (d.p, d.k);
    let vs = d.v_size();
    let size = vs * k;
    if size > CORO1_TABLE_LIMIT {
        return Err(Error::size_limit("coro1 brace", CORO1_TABLE_LIMIT));
    }

    // secondary checks that follow from the hypotheses
    let ord_cond = (1..k).all(|i| {
        !d.a.pow(i as u64).is_identity() || !d.a2.pow(i as u64).is_identity() || !geometric_sum(&d.a2, i).is_zero()
    });
    ledger.push("OrdCond", ord_cond, String::new());
    if vs <= 81 {
        let q = vs - 1;
        let ring = generated_subring(&d.a, &d.a2, d.a.order(q).unwrap_or(1), d.a2.order(q).unwrap_or(1));
        let field = ring.iter().all(|m| m.is_zero() || m.is_invertible());
        ledger.push("𝓡 is a field", field, format!("|𝓡| = {}", ring.len()));
    }
    if let Some(h) = ledger.failures().first() {
        return Err(Error::Internal(format!("secondary check failed: {}", h.name)));
    }

    let a_pows: Vec<Mat> = (0..k).map(|i| d.a.pow(i as u64)).collect();
    let vecs: Vec<Vec<usize>> = (0..vs).map(|i| vec_from_index(p, d.n, i)).collect();
    let add_flat: Vec<usize> = (0..size * size)
        .map(|t| {
            let (a, b) = (t / size, t % size);
            let (v, i) = (a % vs, a / vs);
            let (w, j) = (b % vs, b / vs);
            d.element(&vec_add(p, &vecs[v], &a_pows[i].apply(&vecs[w])), i + j)
        })
        .collect();
    // λ(v + ix) = A'v + u0 − A^i u0 + ix
    let lam: Vec<usize> = (0..size)
        .map(|e| {
            let (v, i) = (e % vs, e / vs);
            let vi = vec_sub(p, &d.u0, &a_pows[i].apply(&d.u0));
            d.element(&vec_add(p, &d.a2.apply(&vecs[v]), &vi), i)
        })
        .collect();
    let mut lam_pows: Vec<Vec<usize>> = vec![(0..size).collect()];
    for j in 1..k {
        let prev = &lam_pows[j - 1];
        lam_pows.push(prev.iter().map(|&e| lam[e]).collect());
    }
    let mul_flat: Vec<usize> = (0..size * size)
        .map(|t| {
            let (a, b) = (t / size, t % size);
            add_flat[a * size + lam_pows[a / vs][b]]
        })
        .collect();
    let add = TableGroup::from_flat(size, add_flat, false)?;
    let mul = TableGroup::from_flat(size, mul_flat, false)?;
    let brace = SkewBrace::from_groups(add, mul)?;

    let x: Vec<usize> = (0..vs).map(|v| v + vs).collect();
    let v: Vec<usize> = (0..vs).collect();
    let solution = coro1_formula(d)?;
    let (restricted, _) = restricted_solution(&brace, &x)?;
    if restricted != solution {
        return Err(Error::Internal("closed formula differs from the brace restriction".into()));
    }
    if x.len() <= BRUTE_FORCE_LIMIT && !solution.is_simple_bruteforce() {
        return Err(Error::Internal("constructed solution is not simple".into()));
    }
    Ok(Coro1Build { brace, x, solution, v, ledger })
}

/// `r(v+x, w+x) = (A'w + v1 + x, −A⁻¹w + (AA')⁻¹(v − v1) + w + x)` on `X ≅ V`.
pub fn coro1_formula(d: &Coro1Data) -> Result<FinSolution> {
    let p = d.p;
    let vs = d.v_size();
    let a_inv = d.a.inverse().ok_or_else(|| Error::InvalidParameter("A is singular".into()))?;
    let aa2_inv = d.a.mul(&d.a2).inverse().ok_or_else(|| Error::InvalidParameter("AA' is singular".into()))?;
    let v1 = d.v1();
    let vecs: Vec<Vec<usize>> = (0..vs).map(|i| vec_from_index(p, d.n, i)).collect();
    FinSolution::from_fn(
        vs,
        |_, w| vec_index(p, &vec_add(p, &d.a2.apply(&vecs[w]), &v1)),
        |w, v| {
            let t = vec_sub(p, &aa2_inv.apply(&vec_sub(p, &vecs[v], &v1)), &a_inv.apply(&vecs[w]));
            vec_index(p, &vec_add(p, &t, &vecs[w]))
        },
    )
}

/// `A(s_1,…,s_n) = (s_n, −s_1, s_2, …, s_{n−1})`, with `k = 2n` and `u0 = 0`.
pub fn rotation_data(p: usize, n: usize) -> Coro1Data {
    let a = Mat::from_fn(p, n, |s| {
        let mut out = vec![0; n];
        if n == 1 {
            out[0] = (p - s[0]) % p;
        } else {
            out[0] = s[n - 1];
            out[1] = (p - s[0]) % p;
            out[2..n].copy_from_slice(&s[1..(n - 1)]);
        }
        out
    });
    Coro1Data { p, n, k: 2 * n, a2: a.clone(), a, u0: vec![0; n] }
}
