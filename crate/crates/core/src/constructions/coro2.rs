//! Braces `B = D/Z(D)` with `D = V ⋊ C_m` over a non-abelian characteristically simple `V = S^n`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::groups::{is_nonabelian_simple, normal_closure, PermTable};
use super::{Hypothesis, HypothesisLedger};
use crate::brace::{restricted_solution, BraceLike, SkewBrace};
use crate::config::element_cap;
use crate::error::{Error, Result};
use crate::group::{quotient_group, semidirect_product, DirectPower, FiniteGroup, TableGroup};
use crate::perm::{Perm, UnionFind};
use crate::solution::FinSolution;

/// Largest `|V|·m` built as explicit tables.
pub const CORO2_TABLE_LIMIT: usize = 2048;

/// Number of random checks run on structured carriers.
pub const SAMPLE_COUNT: usize = 1000;

const SAMPLE_SEED: u64 = 0x5eed_b4ace;

#[derive(Clone, Debug)]
pub struct Coro2Data {
    pub v: DirectPower,
    pub m: usize,
    /// Conjugation by `x` on `V`, as a permutation of the carrier of `V`.
    pub a: Perm,
    /// The restriction of `λ` to `V`.
    pub a2: Perm,
    pub u0: usize,
}

/// `V = S^copies` over a permutation group `S`.
pub fn power_of(s: &PermTable, copies: usize) -> Result<DirectPower> {
    if copies == 0 {
        return Err(Error::InvalidParameter("at least one copy required".into()));
    }
    DirectPower::new(s.table.clone(), copies)
}

/// The permutation of `S^n` induced by a map on component vectors.
pub fn power_map(v: &DirectPower, f: impl Fn(&[usize]) -> Vec<usize> + Sync) -> Result<Perm> {
    let img: Vec<usize> = (0..v.order()).into_par_iter().map(|e| v.from_components(&f(&v.components(e)))).collect();
    Perm::from_images(img)
}

/// `(s_1,…,s_n) ↦ (γ_g s_1, …, γ_g s_n)` with `γ_g(s) = g s g⁻¹`.
pub fn componentwise_conj(s: &PermTable, copies: usize, g: &Perm) -> Result<Perm> {
    let v = power_of(s, copies)?;
    let c = s.conjugation_by(g)?;
    power_map(&v, |comps| comps.iter().map(|&e| c.apply(e)).collect())
}

/// `(s_1,…,s_n) ↦ (s_n, γ_g s_1, s_2, …, s_{n−1})`; plain cyclic shift when `g` is `None`.
pub fn shift(s: &PermTable, copies: usize, g: Option<&Perm>) -> Result<Perm> {
    let v = power_of(s, copies)?;
    let c = match g {
        Some(g) => s.conjugation_by(g)?,
        None => Perm::identity(s.table.order()),
    };
    power_map(&v, |comps| {
        let n = comps.len();
        (0..n).map(|i| if i == 0 { comps[n - 1] } else if i == 1 { c.apply(comps[0]) } else { comps[i - 1] }).collect()
    })
}

/// `(s_1,…,s_n) ↦ (s_1, γ_a s_2, γ_{a²} s_3, …)`.
pub fn ex1_twist(s: &PermTable, copies: usize, a: &Perm) -> Result<Perm> {
    let v = power_of(s, copies)?;
    let pows: Vec<Perm> = (0..copies).map(|i| s.conjugation_by(&a.pow(i as i64))).collect::<Result<_>>()?;
    power_map(&v, |comps| comps.iter().enumerate().map(|(i, &e)| pows[i].apply(e)).collect())
}

/// `(0, a, 2a, …, (n−1)a)`.
pub fn ex1_u0(s: &PermTable, copies: usize, a: &Perm) -> Result<usize> {
    let v = power_of(s, copies)?;
    let comps: Vec<usize> = (0..copies)
        .map(|i| s.index_of(&a.pow(i as i64)).ok_or_else(|| Error::InvalidParameter(format!("{a} is not in the group"))))
        .collect::<Result<_>>()?;
    Ok(v.from_components(&comps))
}

/// Carrier `(v, i) ↦ v + |V|·i` of `V ⋊ C_m` when `Z(D) = 0`, with operations computed on demand.
#[derive(Clone, Debug)]
pub struct StructuredBrace {
    v: DirectPower,
    vs: usize,
    m: usize,
    a_pows: Vec<Vec<usize>>,
    a2_pows: Vec<Vec<usize>>,
    /// `λ^j(w + ix) = A'^j w + c[j·m + i] + ix`.
    c: Vec<usize>,
    add_gens: Vec<usize>,
}

impl StructuredBrace {
    fn new(d: &Coro2Data, vi: &[usize]) -> Self {
        let vs = d.v.order();
        let m = d.m;
        let a_pows: Vec<Vec<usize>> = (0..m).map(|i| d.a.pow(i as i64).into_images()).collect();
        let a2_pows: Vec<Vec<usize>> = (0..=m).map(|i| d.a2.pow(i as i64).into_images()).collect();
        let mut c = vec![0; (m + 1) * m];
        for j in 0..m {
            for i in 0..m {
                c[(j + 1) * m + i] = d.v.op(d.a2.apply(c[j * m + i]), vi[i]);
            }
        }
        let mut add_gens = d.v.generators();
        add_gens.push(vs);
        StructuredBrace { v: d.v.clone(), vs, m, a_pows, a2_pows, c, add_gens }
    }

    pub fn v_order(&self) -> usize {
        self.vs
    }

    pub fn cyclic_order(&self) -> usize {
        self.m
    }

    /// `λ^j` for `0 ≤ j ≤ m`.
    pub fn lambda_pow(&self, j: usize, b: usize) -> usize {
        let (w, i) = (b % self.vs, b / self.vs);
        self.v.op(self.a2_pows[j][w], self.c[j * self.m + i]) + self.vs * i
    }

    /// `λ^m = id`, checked exactly.
    fn lambda_has_order_dividing_m(&self) -> bool {
        self.a2_pows[self.m][..].iter().enumerate().all(|(i, &e)| i == e) && (0..self.m).all(|i| self.c[self.m * self.m + i] == 0)
    }
}

impl BraceLike for StructuredBrace {
    fn order(&self) -> usize {
        self.vs * self.m
    }
    fn add(&self, a: usize, b: usize) -> usize {
        let (v, i) = (a % self.vs, a / self.vs);
        let (w, j) = (b % self.vs, b / self.vs);
        self.v.op(v, self.a_pows[i][w]) + self.vs * ((i + j) % self.m)
    }
    fn neg(&self, a: usize) -> usize {
        let (v, i) = (a % self.vs, a / self.vs);
        let back = (self.m - i) % self.m;
        self.a_pows[back][self.v.inv(v)] + self.vs * back
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.add(a, self.lambda_pow(a / self.vs, b))
    }
    fn mul_inv(&self, a: usize) -> usize {
        self.lambda_pow((self.m - a / self.vs) % self.m, self.neg(a))
    }
    fn add_generators(&self) -> Vec<usize> {
        self.add_gens.clone()
    }
    fn mul_generators(&self) -> Vec<usize> {
        self.add_gens.clone()
    }
    fn lambda(&self, a: usize, b: usize) -> usize {
        self.lambda_pow(a / self.vs, b)
    }
}

#[derive(Clone, Debug)]
pub enum Coro2Brace {
    Table(SkewBrace),
    Structured(StructuredBrace),
}

impl Coro2Brace {
    pub fn as_dyn(&self) -> &(dyn BraceLike + 'static) {
        match self {
            Coro2Brace::Table(b) => b,
            Coro2Brace::Structured(b) => b,
        }
    }

    pub fn as_table(&self) -> Option<&SkewBrace> {
        match self {
            Coro2Brace::Table(b) => Some(b),
            Coro2Brace::Structured(_) => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Coro2Build {
    pub brace: Coro2Brace,
    /// The additive conjugacy class of `x`, sorted.
    pub x: Vec<usize>,
    /// The element `x` itself.
    pub x0: usize,
    /// The closed-formula solution indexed like `x`; absent on structured carriers.
    pub solution: Option<FinSolution>,
    /// `V` inside the brace, indexed by the carrier of `V`.
    pub v: Vec<usize>,
    pub k: usize,
    /// `kx` as an element of `V`.
    pub kx: usize,
    pub ledger: HypothesisLedger,
    /// Random checks run (structured carriers only).
    pub sampled: usize,
}

/// Central elements `(v, i)` of `D`, as indices `v + |V|·i`.
fn center_of_d(d: &Coro2Data) -> Vec<usize> {
    let vs = d.v.order();
    let gens = d.v.generators();
    let a_pows: Vec<Perm> = (0..d.m).map(|i| d.a.pow(i as i64)).collect();
    let fixed: Vec<usize> = (0..vs).filter(|&v| d.a.apply(v) == v).collect();
    let mut out = Vec::new();
    for i in 0..d.m {
        for &v in &fixed {
            if gens.iter().all(|&w| a_pows[i].apply(w) == d.v.conj(v, w)) {
                out.push(v + vs * i);
            }
        }
    }
    out
}

/// `v_i = u0 − A^i u0`.
fn v_seq(d: &Coro2Data, upto: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(upto + 1);
    let mut au = d.u0;
    for _ in 0..=upto {
        out.push(d.v.op(d.u0, d.v.inv(au)));
        au = d.a.apply(au);
    }
    out
}

/// The element `v + x − v` in `D` (index into `V ⋊ C_m`) has cyclic part 1 and
/// `V`-part `v − A v`; returns that `V`-part.
fn conj_x_part(d: &Coro2Data, v: usize) -> usize {
    d.v.op(v, d.v.inv(d.a.apply(v)))
}

/// Evaluates the hypotheses; returns the ledger together with `Z(D)`, `k` and `kx` once `D`
/// is well defined.
pub fn coro2_hypotheses(d: &Coro2Data) -> (HypothesisLedger, Option<(Vec<usize>, usize, usize)>) {
    let mut l = HypothesisLedger::default();
    let v = &d.v;
    let vs = v.order();
    let simple = is_nonabelian_simple(v.base());
    l.push("S non-abelian simple", simple, format!("|S| = {}", v.base().order()));
    let gens = v.generators();
    let nonabelian = !v.is_abelian();
    l.push("V non-abelian", nonabelian, if nonabelian { String::new() } else { "use the abelian builder".into() });
    let center_trivial = (1..vs).all(|z| gens.iter().any(|&g| v.op(z, g) != v.op(g, z)));
    l.push("Z(V) = 0", center_trivial, String::new());
    l.push("m > 1", d.m > 1, format!("m = {}", d.m));
    let shapes = d.a.degree() == vs && d.a2.degree() == vs && d.u0 < vs;
    l.push("A, A', u0 live on V", shapes, format!("|V| = {vs}"));
    if !shapes {
        return (l, None);
    }
    let a_auto = v.check_automorphism(&d.a);
    let a2_auto = v.check_automorphism(&d.a2);
    l.push("A ∈ Aut(V)", a_auto.is_ok(), a_auto.err().map(|e| e.to_string()).unwrap_or_default());
    l.push("A' ∈ Aut(V)", a2_auto.is_ok(), a2_auto.err().map(|e| e.to_string()).unwrap_or_default());
    l.push("A ≠ 1", !d.a.is_identity(), String::new());
    let am = d.a.pow(d.m as i64).is_identity();
    l.push("A^m = 1", am, format!("o(A) = {}", d.a.order()));
    if !l.all_pass() {
        return (l, None);
    }

    let zd = center_of_d(d);
    let k = d.m / zd.len();
    // the central element with cyclic part k gives kx = −z_v
    let kx = zd.iter().find(|&&z| z / vs == k % d.m).map_or(0, |&z| v.inv(z % vs));
    l.push("V embeds in D/Z(D)", zd.iter().all(|&z| z == 0 || z >= vs), format!("|Z(D)| = {}", zd.len()));
    l.push("k > 1", k > 1, format!("k = |B/V| = {k}"));
    let oa2 = d.a2.order();
    l.push("o(A') divides k", k % oa2 == 0, format!("o(A') = {oa2}, k = {k}"));
    let vseq = v_seq(d, k);
    let v1 = vseq[1];
    let a_inv = d.a.inverse();
    let a2_inv = d.a2.inverse();
    let comm = d.a.compose(&d.a2).compose(&a_inv).compose(&a2_inv);
    let c2 = gens.iter().all(|&g| comm.apply(g) == v.conj(v1, g));
    l.push("[A,A']v = −v1 + v + v1", c2, String::new());
    let lhs = d.a2.apply(kx);
    let rhs = v.op(vseq[k], kx);
    let vacuous = if kx == 0 { "kx = 0, so this reads A'(0) = v_k" } else { "" };
    l.push("A'(kx) = v_k + kx", lhs == rhs, vacuous);
    let mut acc = 0;
    let mut t = v1;
    let mut terms = Vec::with_capacity(k);
    for _ in 0..k {
        terms.push(t);
        t = d.a2.apply(t);
    }
    for &term in terms.iter().rev() {
        acc = v.op(acc, term);
    }
    l.push("A'^{k−1}v1 + ⋯ + A'v1 + v1 = 0", acc == 0, String::new());
    let diffs: Vec<usize> = (0..vs).map(|e| conj_x_part(d, e)).collect();
    let gen_size = normal_closure(v, &diffs, &[]).len();
    l.push("V = ⟨v − Av⟩₊", gen_size == vs, format!("generated subgroup has order {gen_size}"));
    match invariant_normal_witness(d) {
        None => l.push("no nontrivial normal 𝒜-invariant subgroup", true, String::new()),
        Some(n) => l.push("no nontrivial normal 𝒜-invariant subgroup", false, format!("found one of order {n}")),
    }
    (l, Some((zd, k, kx)))
}

/// The order of a proper nontrivial normal `⟨A, A'⟩`-invariant subgroup, if one exists.
fn invariant_normal_witness(d: &Coro2Data) -> Option<usize> {
    let v = &d.v;
    let vs = v.order();
    let gens = v.generators();
    let mut uf = UnionFind::new(vs);
    for e in 1..vs {
        uf.union(e, d.a.apply(e));
        uf.union(e, d.a2.apply(e));
        for &g in &gens {
            uf.union(e, v.conj(g, e));
        }
    }
    let part = uf.into_partition();
    let seeds: Vec<usize> = (1..vs).filter(|&e| part.rep(e) == e).collect();
    let images = |c: usize| [d.a.apply(c), d.a2.apply(c)];
    seeds
        .par_iter()
        .map(|&s| {
            // the closure of the 𝒜-orbit of s under conjugation
            let mut orbit = vec![s];
            let mut seen = std::collections::HashSet::from([s]);
            let mut i = 0;
            while i < orbit.len() {
                for c in images(orbit[i]) {
                    if seen.insert(c) {
                        orbit.push(c);
                    }
                }
                i += 1;
            }
            normal_closure(v, &orbit, &gens).len()
        })
        .filter(|&n| n < vs)
        .min()
}

/// Builds the brace and the solution on the conjugacy class of `x`, running every check.
pub fn coro2_build(d: &Coro2Data) -> Result<Coro2Build> {
    let (ledger, derived) = coro2_hypotheses(d);
    ledger.reject_on_failure()?;
    let (zd, k, kx) = derived.ok_or_else(|| Error::Internal("hypotheses passed without D".into()))?;
    let vs = d.v.order();
    let size = vs.checked_mul(d.m).ok_or_else(|| Error::size_limit("coro2 brace", usize::MAX))?;
    if size > element_cap() {
        return Err(Error::size_limit("coro2 brace", element_cap()));
    }
    if size <= CORO2_TABLE_LIMIT {
        build_table(d, ledger, &zd, k, kx)
    } else if zd.len() == 1 {
        build_structured(d, ledger, k, kx)
    } else {
        Err(Error::InvalidParameter(format!(
            "|V|·m = {size} exceeds the table limit {CORO2_TABLE_LIMIT} and Z(D) ≠ 0"
        )))
    }
}

fn build_table(d: &Coro2Data, ledger: HypothesisLedger, zd: &[usize], k: usize, kx: usize) -> Result<Coro2Build> {
    let vs = d.v.order();
    let vflat: Vec<usize> = (0..vs * vs).map(|t| d.v.op(t / vs, t % vs)).collect();
    let vt = TableGroup::from_flat(vs, vflat, true)?;
    let dg = semidirect_product(&vt, d.m, &d.a)?;
    let (badd, proj) = quotient_group(&dg, zd)?;
    let n = badd.order();
    if n != vs * k {
        return Err(Error::Internal(format!("|B| = {n} but |V|·k = {}", vs * k)));
    }
    // transversal v + ix, 0 ≤ i < k
    let mut rep = vec![usize::MAX; n];
    for i in 0..k {
        for v in 0..vs {
            let b = proj[v + vs * i];
            if rep[b] != usize::MAX {
                return Err(Error::Internal("elements v + ix are not distinct in B".into()));
            }
            rep[b] = v + vs * i;
        }
    }
    if proj[vs * k % (vs * d.m)] != proj[kx] {
        return Err(Error::Internal("kx does not match the central quotient".into()));
    }
    let vseq = v_seq(d, k);
    let lam: Vec<usize> = (0..n)
        .map(|b| {
            let (v, i) = (rep[b] % vs, rep[b] / vs);
            proj[d.v.op(d.a2.apply(v), vseq[i]) + vs * i]
        })
        .collect();
    let mut lam_pows: Vec<Vec<usize>> = vec![(0..n).collect()];
    for j in 1..k {
        let prev = &lam_pows[j - 1];
        lam_pows.push(prev.iter().map(|&e| lam[e]).collect());
    }
    let mul_flat: Vec<usize> = (0..n * n)
        .map(|t| {
            let (a, b) = (t / n, t % n);
            badd.op(a, lam_pows[rep[a] / vs][b])
        })
        .collect();
    let mul = TableGroup::from_flat(n, mul_flat, false)?;
    let brace = SkewBrace::from_groups(badd, mul)?;

    let x0 = proj[vs];
    let x = brace.add_group().conjugacy_class(x0);
    let mut x_sorted = x.clone();
    x_sorted.sort_unstable();
    let v_in_b: Vec<usize> = (0..vs).map(|v| proj[v]).collect();
    let solution = coro2_formula_table(d, &brace, &v_in_b, x0, &x_sorted)?;
    let (restricted, _) = restricted_solution(&brace, &x_sorted)?;
    if restricted != solution {
        return Err(Error::Internal("closed formula differs from the brace restriction".into()));
    }
    if x_sorted.len() <= super::coro1::BRUTE_FORCE_LIMIT && !solution.is_simple_bruteforce() {
        return Err(Error::Internal("constructed solution is not simple".into()));
    }
    Ok(Coro2Build {
        brace: Coro2Brace::Table(brace),
        x: x_sorted,
        x0,
        solution: Some(solution),
        v: v_in_b,
        k,
        kx,
        ledger,
        sampled: 0,
    })
}

/// `w' = A'w + u0` and `v' = w − A⁻¹w + (A'A)⁻¹(v − u0)`, as elements of `V`.
fn formula_parts(d: &Coro2Data, a_inv: &Perm, aa2_inv: &Perm, v: usize, w: usize) -> (usize, usize) {
    let g = &d.v;
    let wp = g.op(d.a2.apply(w), d.u0);
    let vp = g.op(g.op(w, g.inv(a_inv.apply(w))), aa2_inv.apply(g.op(v, g.inv(d.u0))));
    (wp, vp)
}

/// The closed formula on every pair of representatives, asserting that it does not depend
/// on the choice.
fn coro2_formula_table(d: &Coro2Data, b: &SkewBrace, v_in_b: &[usize], x0: usize, x: &[usize]) -> Result<FinSolution> {
    let m = x.len();
    let pos = |e: usize| x.binary_search(&e).expect("element of X");
    let conj = |v: usize| b.add(b.add(v_in_b[v], x0), b.neg(v_in_b[v]));
    let mut reps: Vec<Vec<usize>> = vec![Vec::new(); m];
    for v in 0..d.v.order() {
        reps[pos(conj(v))].push(v);
    }
    let a_inv = d.a.inverse();
    let aa2_inv = d.a2.compose(&d.a).inverse();
    let cells: Vec<Result<(usize, usize)>> = (0..m * m)
        .into_par_iter()
        .map(|t| {
            let (i, j) = (t / m, t % m);
            let mut out: Option<(usize, usize)> = None;
            for &v in &reps[i] {
                for &w in &reps[j] {
                    let (wp, vp) = formula_parts(d, &a_inv, &aa2_inv, v, w);
                    let val = (pos(conj(wp)), pos(conj(vp)));
                    match out {
                        None => out = Some(val),
                        Some(o) if o != val => {
                            return Err(Error::Internal(format!("formula depends on representatives at ({i},{j})")))
                        }
                        _ => {}
                    }
                }
            }
            out.ok_or_else(|| Error::Internal("empty representative set".into()))
        })
        .collect();
    let mut lam = vec![0; m * m];
    let mut rho = vec![0; m * m];
    for (t, c) in cells.into_iter().enumerate() {
        let (l, r) = c?;
        let (i, j) = (t / m, t % m);
        lam[i * m + j] = l;
        rho[j * m + i] = r;
    }
    FinSolution::from_flat(m, lam, rho)
}

fn build_structured(d: &Coro2Data, ledger: HypothesisLedger, k: usize, kx: usize) -> Result<Coro2Build> {
    let vs = d.v.order();
    let vseq = v_seq(d, d.m);
    let sb = StructuredBrace::new(d, &vseq);
    if !sb.lambda_has_order_dividing_m() {
        return Err(Error::Internal("λ^k ≠ id".into()));
    }
    let n = sb.order();
    let gens = sb.add_generators();
    // λ additive on all of B, checked against generators
    let bad = (0..n).into_par_iter().find_any(|&a| {
        gens.iter().any(|&g| sb.lambda_pow(1, sb.add(a, g)) != sb.add(sb.lambda_pow(1, a), sb.lambda_pow(1, g)))
    });
    if let Some(a) = bad {
        return Err(Error::Internal(format!("λ is not additive at {a}")));
    }
    let x0 = vs;
    let mut seen = std::collections::HashSet::from([x0]);
    let mut x = vec![x0];
    let mut i = 0;
    while i < x.len() {
        for &g in &gens {
            let c = sb.sigma(g, x[i]);
            if seen.insert(c) {
                x.push(c);
            }
        }
        i += 1;
    }
    x.sort_unstable();

    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let a_inv = d.a.inverse();
    let aa2_inv = d.a2.compose(&d.a).inverse();
    let conj = |v: usize| sb.add(sb.add(v, x0), sb.neg(v));
    let r = |a: usize, b: usize| {
        let l = sb.lambda(a, b);
        (l, sb.mul(sb.mul_inv(l), sb.mul(a, b)))
    };
    for _ in 0..SAMPLE_COUNT {
        let (v, w) = (rng.gen_range(0..vs), rng.gen_range(0..vs));
        let (wp, vp) = formula_parts(d, &a_inv, &aa2_inv, v, w);
        if r(conj(v), conj(w)) != (conj(wp), conj(vp)) {
            return Err(Error::Internal(format!("closed formula disagrees with the brace at v={v}, w={w}")));
        }
        let (p, q, s) = (x[rng.gen_range(0..x.len())], x[rng.gen_range(0..x.len())], x[rng.gen_range(0..x.len())]);
        let (a1, b1) = r(p, q);
        let (b2, c) = r(b1, s);
        let (a3, b3) = r(a1, b2);
        let (p2, q2) = r(q, s);
        let (u, v2) = r(p, p2);
        let (v3, w3) = r(v2, q2);
        if (a3, b3, c) != (u, v3, w3) {
            return Err(Error::Internal(format!("braid fails on sampled triple ({p},{q},{s})")));
        }
        let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
        if sb.mul(a, sb.add(b, c)) != sb.add(sb.add(sb.mul(a, b), sb.neg(a)), sb.mul(a, c)) {
            return Err(Error::Internal(format!("compatibility fails on sampled triple ({a},{b},{c})")));
        }
    }
    Ok(Coro2Build {
        brace: Coro2Brace::Structured(sb),
        x,
        x0,
        solution: None,
        v: (0..vs).collect(),
        k,
        kx,
        ledger,
        sampled: SAMPLE_COUNT,
    })
}

impl Coro2Build {
    pub fn hypotheses(&self) -> &[Hypothesis] {
        self.ledger.entries()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::simple_nl_check;
    use crate::constructions::groups::{alternating, symmetric};

    fn sym_data(n: usize) -> Coro2Data {
        let an = alternating(n).unwrap();
        let c = componentwise_conj(&an, 1, &Perm::transposition(n, 0, 1)).unwrap();
        Coro2Data { v: power_of(&an, 1).unwrap(), m: 2, a: c.clone(), a2: c, u0: 0 }
    }

    #[test]
    fn sym5_example() {
        let b = coro2_build(&sym_data(5)).unwrap();
        assert!(b.ledger.all_pass(), "{}", b.ledger);
        let brace = b.brace.as_table().unwrap();
        assert_eq!(brace.order(), 120);
        assert!(crate::group::group_isomorphism(brace.add_group(), &symmetric(5).unwrap().table).unwrap().is_some());
        assert_eq!(b.x.len(), 10);
        let s = b.solution.unwrap();
        assert!(s.is_simple_bruteforce());
        assert!(simple_nl_check(&s).unwrap().verdict);
    }

    #[test]
    fn abelian_v_rejected() {
        let c3 = PermTable::new(&[Perm::rotation(3, 1)], 3).unwrap();
        let inv = power_map(&power_of(&c3, 1).unwrap(), |c| vec![(3 - c[0]) % 3]).unwrap();
        let d = Coro2Data { v: power_of(&c3, 1).unwrap(), m: 2, a: inv.clone(), a2: inv, u0: 0 };
        let (l, _) = coro2_hypotheses(&d);
        assert!(l.failures().iter().any(|h| h.name == "V non-abelian"));
        assert!(coro2_build(&d).is_err());
    }

    #[test]
    fn inner_a_has_nontrivial_center() {
        // A = conjugation by an element of V makes Z(D) nontrivial
        let a5 = alternating(5).unwrap();
        let g = Perm::from_cycles(5, &[&[0, 1, 2]]).unwrap();
        let c = componentwise_conj(&a5, 1, &g).unwrap();
        let d = Coro2Data { v: power_of(&a5, 1).unwrap(), m: 3, a: c.clone(), a2: c, u0: 0 };
        let (l, derived) = coro2_hypotheses(&d);
        let (zd, k, _) = derived.unwrap();
        assert_eq!(zd.len(), 3);
        assert_eq!(k, 1);
        assert!(l.failures().iter().any(|h| h.name == "k > 1"));
    }

    #[test]
    fn an_pr_structured() {
        let a5 = alternating(5).unwrap();
        let a = shift(&a5, 2, Some(&Perm::transposition(5, 0, 1))).unwrap();
        let d = Coro2Data { v: power_of(&a5, 2).unwrap(), m: 4, a: a.clone(), a2: a, u0: 0 };
        let b = coro2_build(&d).unwrap();
        assert_eq!(b.brace.as_dyn().order(), 14_400);
        assert_eq!(b.k, 4);
        assert!(b.sampled >= 1000);
        assert!(b.solution.is_none());
    }
}
