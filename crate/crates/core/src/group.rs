//! Finite groups given by multiplication tables, semidirect products, quotients and
//! a small isomorphism search.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::perm::{GenGroup, Perm};

/// Orders up to which associativity is always verified.
pub const ASSOCIATIVITY_CHECK_LIMIT: usize = 512;

/// Orders above which isomorphism searches give up.
pub const ISOMORPHISM_CAP: usize = 400;

/// A finite group on the carrier `{0, …, order-1}` with identity `0`.
pub trait FiniteGroup {
    fn order(&self) -> usize;
    fn op(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;

    fn identity(&self) -> usize {
        0
    }

    /// A generating set.
    fn generators(&self) -> Vec<usize>;

    fn pow(&self, a: usize, e: usize) -> usize {
        let mut acc = 0;
        for _ in 0..e {
            acc = self.op(acc, a);
        }
        acc
    }

    fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.op(x, a);
            k += 1;
        }
        k
    }

    /// `g⁻¹ a g`.
    fn conj(&self, g: usize, a: usize) -> usize {
        self.op(self.op(self.inv(g), a), g)
    }

    /// Subgroup generated by `gens`, sorted.
    fn subgroup_closure(&self, gens: &[usize]) -> Vec<usize> {
        let n = self.order();
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut out = vec![0];
        let mut queue = VecDeque::from([0]);
        while let Some(e) = queue.pop_front() {
            for &g in gens {
                let h = self.op(e, g);
                if !seen[h] {
                    seen[h] = true;
                    out.push(h);
                    queue.push_back(h);
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter().all(|&a| gens.iter().all(|&b| self.op(a, b) == self.op(b, a)))
    }

    /// Checks that `f` (given on the whole carrier) is an automorphism.
    fn check_automorphism(&self, f: &Perm) -> Result<()> {
        if f.degree() != self.order() {
            return Err(Error::NotAutomorphism(format!(
                "degree {} on a group of order {}",
                f.degree(),
                self.order()
            )));
        }
        for g in self.generators() {
            for v in 0..self.order() {
                if f.apply(self.op(v, g)) != self.op(f.apply(v), f.apply(g)) {
                    return Err(Error::NotAutomorphism(format!("f({v}·{g}) ≠ f({v})·f({g})")));
                }
            }
        }
        Ok(())
    }
}

/// Greedy generating set: repeatedly add an element of largest order outside the span.
pub fn greedy_generators<G: FiniteGroup + ?Sized>(g: &G) -> Vec<usize> {
    let n = g.order();
    let orders: Vec<usize> = (0..n).map(|a| g.element_order(a)).collect();
    let mut by_order: Vec<usize> = (1..n).collect();
    by_order.sort_by_key(|&a| (std::cmp::Reverse(orders[a]), a));
    let mut gens = Vec::new();
    let mut span = vec![false; n];
    span[0] = true;
    let mut size = 1;
    for a in by_order {
        if size == n {
            break;
        }
        if span[a] {
            continue;
        }
        gens.push(a);
        let sub = g.subgroup_closure(&gens);
        size = sub.len();
        for s in sub {
            span[s] = true;
        }
    }
    gens
}

/// A finite group stored as a flat multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableGroup {
    n: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    gens: Vec<usize>,
}

impl TableGroup {
    /// Validates a table whose identity is already element `0`.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        let mut flat = Vec::with_capacity(n * n);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::Malformed(format!("row {i} has length {} (expected {n})", r.len())));
            }
            flat.extend_from_slice(r);
        }
        Self::from_flat(n, flat, false)
    }

    /// Validates a table with arbitrary identity and relabels so that the identity is `0`.
    /// The returned permutation maps old labels to new ones.
    pub fn from_rows_normalized(rows: &[Vec<usize>]) -> Result<(Self, Perm)> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Malformed("empty table".into()));
        }
        if rows.iter().any(|r| r.len() != n || r.iter().any(|&e| e >= n)) {
            return Err(Error::Malformed("table is not square with entries in range".into()));
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|a| rows[e][a] == a && rows[a][e] == a))
            .ok_or_else(|| Error::GroupAxiom("no two-sided identity".into()))?;
        let relabel = Perm::transposition(n, 0, e);
        let mut flat = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                flat[relabel.apply(a) * n + relabel.apply(b)] = relabel.apply(rows[a][b]);
            }
        }
        Ok((Self::from_flat(n, flat, false)?, relabel))
    }

    /// Validates a flat row-major table. With `trusted`, associativity is skipped above
    /// [`ASSOCIATIVITY_CHECK_LIMIT`].
    pub fn from_flat(n: usize, mul: Vec<usize>, trusted: bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::Malformed("empty table".into()));
        }
        if mul.len() != n * n {
            return Err(Error::Malformed(format!("expected {} entries, found {}", n * n, mul.len())));
        }
        if let Some(&bad) = mul.iter().find(|&&e| e >= n) {
            return Err(Error::Malformed(format!("entry {bad} out of range 0..{n}")));
        }
        for a in 0..n {
            if mul[a] != a || mul[a * n] != a {
                return Err(Error::GroupAxiom(format!("0 is not an identity (row/column {a})")));
            }
        }
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            let mut seen_row = vec![false; n];
            for b in 0..n {
                let c = mul[a * n + b];
                if seen_row[c] {
                    return Err(Error::GroupAxiom(format!("row {a} repeats {c}")));
                }
                seen_row[c] = true;
                if c == 0 {
                    inv[a] = b;
                }
            }
        }
        for b in 0..n {
            let mut seen_col = vec![false; n];
            for a in 0..n {
                let c = mul[a * n + b];
                if seen_col[c] {
                    return Err(Error::GroupAxiom(format!("column {b} repeats {c}")));
                }
                seen_col[c] = true;
            }
        }
        for a in 0..n {
            if mul[inv[a] * n + a] != 0 {
                return Err(Error::GroupAxiom(format!("{} is not a two-sided inverse of {a}", inv[a])));
            }
        }
        if !trusted || n <= ASSOCIATIVITY_CHECK_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = mul[a * n + b];
                    for c in 0..n {
                        if mul[ab * n + c] != mul[a * n + mul[b * n + c]] {
                            return Err(Error::GroupAxiom(format!("associativity fails at ({a},{b},{c})")));
                        }
                    }
                }
            }
        }
        let mut g = TableGroup { n, mul, inv, gens: Vec::new() };
        g.gens = greedy_generators(&g);
        Ok(g)
    }

    /// The table of a permutation group in the order of [`GenGroup::elements`].
    pub fn from_perm_group(g: &GenGroup) -> Result<Self> {
        let els = g.elements();
        let idx: HashMap<&Perm, usize> = els.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let n = els.len();
        let mut flat = Vec::with_capacity(n * n);
        for a in els {
            for b in els {
                flat.push(idx[&a.compose(b)]);
            }
        }
        Self::from_flat(n, flat, true)
    }

    pub fn cyclic(n: usize) -> Self {
        let flat = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        Self::from_flat(n, flat, true).expect("cyclic group table")
    }

    /// `Z_{d_1} × … × Z_{d_r}` with mixed-radix indexing (first factor least significant).
    pub fn abelian(dims: &[usize]) -> Self {
        let n: usize = dims.iter().product();
        let digits = |mut a: usize| {
            dims.iter()
                .map(|&d| {
                    let r = a % d;
                    a /= d;
                    r
                })
                .collect::<Vec<_>>()
        };
        let index = |v: &[usize]| v.iter().zip(dims).rev().fold(0, |acc, (&x, &d)| acc * d + x);
        let mut flat = Vec::with_capacity(n * n);
        for a in 0..n {
            let da = digits(a);
            for b in 0..n {
                let db = digits(b);
                let s: Vec<usize> = da.iter().zip(&db).zip(dims).map(|((x, y), d)| (x + y) % d).collect();
                flat.push(index(&s));
            }
        }
        Self::from_flat(n, flat, true).expect("abelian group table")
    }

    /// The group with the opposite multiplication `a·ᵒᵖb = b·a`.
    pub fn opposite(&self) -> Self {
        let n = self.n;
        let flat = (0..n * n).map(|i| self.mul[(i % n) * n + i / n]).collect();
        Self::from_flat(n, flat, true).expect("opposite of a group is a group")
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    pub fn is_subgroup(&self, s: &[usize]) -> bool {
        let mut mem = vec![false; self.n];
        for &a in s {
            if a >= self.n {
                return false;
            }
            mem[a] = true;
        }
        mem[0] && s.iter().all(|&a| mem[self.inv[a]] && s.iter().all(|&b| mem[self.op(a, b)]))
    }

    pub fn is_normal(&self, s: &[usize]) -> bool {
        let mut mem = vec![false; self.n];
        for &a in s {
            mem[a] = true;
        }
        self.is_subgroup(s) && self.gens.iter().all(|&g| s.iter().all(|&a| mem[self.conj(g, a)]))
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.n).filter(|&a| self.gens.iter().all(|&g| self.op(a, g) == self.op(g, a))).collect()
    }

    pub fn commutator_subgroup(&self) -> Vec<usize> {
        let mut comms = Vec::new();
        let mut mem = vec![false; self.n];
        for a in 0..self.n {
            for b in 0..self.n {
                let c = self.op(self.op(self.inv[a], self.inv[b]), self.op(a, b));
                if !mem[c] {
                    mem[c] = true;
                    comms.push(c);
                }
            }
        }
        self.subgroup_closure(&comms)
    }

    pub fn conjugacy_class(&self, a: usize) -> Vec<usize> {
        let mut cls: Vec<usize> = (0..self.n).map(|b| self.conj(b, a)).collect();
        cls.sort_unstable();
        cls.dedup();
        cls
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.n).any(|a| self.element_order(a) == self.n)
    }

    /// Sorted list of element orders; an isomorphism invariant.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.n).map(|a| self.element_order(a)).collect();
        v.sort_unstable();
        v
    }
}

impl FiniteGroup for TableGroup {
    fn order(&self) -> usize {
        self.n
    }

    #[inline]
    fn op(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b]
    }

    #[inline]
    fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    fn generators(&self) -> Vec<usize> {
        self.gens.clone()
    }
}

/// `S^k` for a table group `S`; element `(s_1,…,s_k)` has index `s_1 + |S|·s_2 + …`.
#[derive(Clone, Debug)]
pub struct DirectPower {
    base: TableGroup,
    copies: usize,
    order: usize,
}

impl DirectPower {
    pub fn new(base: TableGroup, copies: usize) -> Result<Self> {
        let order = (0..copies)
            .try_fold(1usize, |acc, _| acc.checked_mul(base.order()))
            .ok_or_else(|| Error::size_limit("direct power", usize::MAX))?;
        Ok(DirectPower { base, copies, order })
    }

    pub fn base(&self) -> &TableGroup {
        &self.base
    }

    pub fn copies(&self) -> usize {
        self.copies
    }

    pub fn components(&self, mut a: usize) -> Vec<usize> {
        let m = self.base.order();
        (0..self.copies)
            .map(|_| {
                let r = a % m;
                a /= m;
                r
            })
            .collect()
    }

    pub fn from_components(&self, c: &[usize]) -> usize {
        let m = self.base.order();
        c.iter().rev().fold(0, |acc, &x| acc * m + x)
    }
}

impl FiniteGroup for DirectPower {
    fn order(&self) -> usize {
        self.order
    }

    fn op(&self, a: usize, b: usize) -> usize {
        let m = self.base.order();
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.copies {
            out += self.base.op(a % m, b % m) * place;
            a /= m;
            b /= m;
            place *= m;
        }
        out
    }

    fn inv(&self, a: usize) -> usize {
        let m = self.base.order();
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.copies {
            out += self.base.inv(a % m) * place;
            a /= m;
            place *= m;
        }
        out
    }

    fn generators(&self) -> Vec<usize> {
        let m = self.base.order();
        let mut out = Vec::new();
        let mut place = 1;
        for _ in 0..self.copies {
            out.extend(self.base.generators().iter().map(|&g| g * place));
            place *= m;
        }
        out
    }
}

/// Center, derived subgroup and a few flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupInvariants {
    pub center: Vec<usize>,
    pub commutator: Vec<usize>,
    pub is_abelian: bool,
    pub is_cyclic: bool,
}

pub fn group_invariants(g: &TableGroup) -> GroupInvariants {
    GroupInvariants {
        center: g.center(),
        commutator: g.commutator_subgroup(),
        is_abelian: g.is_abelian(),
        is_cyclic: g.is_cyclic(),
    }
}

/// `V ⋊ C_k` where the generator of `C_k` acts by `a`. Element `(v, i)` has index `v + |V|·i`.
/// Requires `a^k = id`; otherwise the product is not associative.
pub fn semidirect_product(v: &TableGroup, k: usize, a: &Perm) -> Result<TableGroup> {
    if k == 0 {
        return Err(Error::InvalidParameter("cyclic factor of order 0".into()));
    }
    v.check_automorphism(a)?;
    if !a.pow(k as i64).is_identity() {
        return Err(Error::InvalidParameter(format!(
            "A^{k} is not the identity (o(A) = {}), so V ⋊ C_{k} is not a group",
            a.order()
        )));
    }
    let m = v.order();
    let powers: Vec<Perm> = (0..k).map(|i| a.pow(i as i64)).collect();
    let n = m * k;
    let mut flat = Vec::with_capacity(n * n);
    for x in 0..n {
        let (vx, ix) = (x % m, x / m);
        for y in 0..n {
            let (vy, iy) = (y % m, y / m);
            flat.push(v.op(vx, powers[ix].apply(vy)) + m * ((ix + iy) % k));
        }
    }
    TableGroup::from_flat(n, flat, true)
}

/// `g / N` on cosets ordered by least element, with the projection table.
pub fn quotient_group(g: &TableGroup, normal: &[usize]) -> Result<(TableGroup, Vec<usize>)> {
    if !g.is_subgroup(normal) {
        return Err(Error::NotSubgroup(format!("{normal:?}")));
    }
    if !g.is_normal(normal) {
        return Err(Error::NotNormal(format!("{normal:?}")));
    }
    let n = g.order();
    let mut proj = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for a in 0..n {
        if proj[a] == usize::MAX {
            for &h in normal {
                proj[g.op(a, h)] = reps.len();
            }
            reps.push(a);
        }
    }
    let q = reps.len();
    let mut flat = Vec::with_capacity(q * q);
    for &a in &reps {
        for &b in &reps {
            flat.push(proj[g.op(a, b)]);
        }
    }
    Ok((TableGroup::from_flat(q, flat, true)?, proj))
}

/// Propagates a partial homomorphism defined by generator images over the generated subgroup.
/// Returns `None` on a conflict or loss of injectivity.
pub(crate) fn extend_homomorphism<G: FiniteGroup + ?Sized, H: FiniteGroup + ?Sized>(
    g: &G,
    h: &H,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; g.order()];
    let mut used = vec![false; h.order()];
    map[0] = 0;
    used[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(a) = queue.pop_front() {
        for (&s, &t) in gens.iter().zip(images) {
            let b = g.op(a, s);
            let fb = h.op(map[a], t);
            if map[b] == usize::MAX {
                if used[fb] {
                    return None;
                }
                used[fb] = true;
                map[b] = fb;
                queue.push_back(b);
            } else if map[b] != fb {
                return None;
            }
        }
    }
    Some(map)
}

/// Backtracking over generator images. `accept` is consulted on complete bijections.
pub(crate) fn search_isomorphisms<G, H, F>(
    g: &G,
    h: &H,
    compatible: &dyn Fn(usize, usize) -> bool,
    accept: &mut F,
) -> Option<Vec<usize>>
where
    G: FiniteGroup + ?Sized,
    H: FiniteGroup + ?Sized,
    F: FnMut(&[usize]) -> bool,
{
    if g.order() != h.order() {
        return None;
    }
    let gens = greedy_generators(g);
    let g_orders: Vec<usize> = gens.iter().map(|&a| g.element_order(a)).collect();
    let h_orders: Vec<usize> = (0..h.order()).map(|b| h.element_order(b)).collect();
    let cands: Vec<Vec<usize>> = gens
        .iter()
        .zip(&g_orders)
        .map(|(&a, &o)| (0..h.order()).filter(|&b| h_orders[b] == o && compatible(a, b)).collect())
        .collect();

    fn rec<G, H, F>(
        g: &G,
        h: &H,
        gens: &[usize],
        cands: &[Vec<usize>],
        images: &mut Vec<usize>,
        accept: &mut F,
    ) -> Option<Vec<usize>>
    where
        G: FiniteGroup + ?Sized,
        H: FiniteGroup + ?Sized,
        F: FnMut(&[usize]) -> bool,
    {
        let i = images.len();
        if i == gens.len() {
            let map = extend_homomorphism(g, h, gens, images)?;
            if map.contains(&usize::MAX) {
                return None;
            }
            return if accept(&map) { Some(map) } else { None };
        }
        for &b in &cands[i] {
            images.push(b);
            if extend_homomorphism(g, h, &gens[..=i], images).is_some() {
                if let Some(m) = rec(g, h, gens, cands, images, accept) {
                    return Some(m);
                }
            }
            images.pop();
        }
        None
    }

    rec(g, h, &gens, &cands, &mut Vec::new(), accept)
}

/// An isomorphism `g → h` as an image table, `Ok(None)` if none exists.
pub fn group_isomorphism(g: &TableGroup, h: &TableGroup) -> Result<Option<Vec<usize>>> {
    if g.order() > ISOMORPHISM_CAP || h.order() > ISOMORPHISM_CAP {
        return Err(Error::Undecided(format!("group isomorphism above order {ISOMORPHISM_CAP}")));
    }
    if g.order() != h.order() || g.order_profile() != h.order_profile() {
        return Ok(None);
    }
    Ok(search_isomorphisms(g, h, &|_, _| true, &mut |_| true))
}
