//! Finite skew left braces `(B, +, ∘)` with `a∘(b+c) = a∘b − a + a∘c`.

mod criteria;
mod ideal;
mod iso;
mod permutation;

pub use criteria::{simple_gen_check, simple_nl_check, SimpleGenReport, SimpleNlReport};
pub use ideal::{additive_closure, ideal_closure, is_ideal, smallest_nonzero_ideal};
pub use iso::brace_isomorphic;
pub use permutation::{permutation_brace, PermutationBrace};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, TableGroup};
use crate::solution::FinSolution;

/// Operations shared by table-backed and structured braces. Elements are `0..order()`,
/// with `0` the common identity.
pub trait BraceLike: Sync {
    fn order(&self) -> usize;
    fn add(&self, a: usize, b: usize) -> usize;
    fn neg(&self, a: usize) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn mul_inv(&self, a: usize) -> usize;
    /// Generators of `(B, +)`.
    fn add_generators(&self) -> Vec<usize>;
    /// Generators of `(B, ∘)`.
    fn mul_generators(&self) -> Vec<usize>;

    fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// `λ_a(b) = −a + a∘b`.
    fn lambda(&self, a: usize, b: usize) -> usize {
        self.add(self.neg(a), self.mul(a, b))
    }

    /// `σ_b(a) = −b + a + b`.
    fn sigma(&self, b: usize, a: usize) -> usize {
        self.add(self.add(self.neg(b), a), b)
    }

    /// `a * b = λ_a(b) − b`.
    fn star(&self, a: usize, b: usize) -> usize {
        self.sub(self.lambda(a, b), b)
    }

    fn add_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.add(x, a);
            k += 1;
        }
        k
    }
}

/// A table-backed skew left brace with derived `λ`, `σ` and star tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewBrace {
    n: usize,
    add: TableGroup,
    mul: TableGroup,
    lam: Vec<usize>,
    sig: Vec<usize>,
    star: Vec<usize>,
}

/// Validates two tables on the same carrier as a skew left brace.
pub fn validate_brace(add: &[Vec<usize>], mul: &[Vec<usize>]) -> Result<SkewBrace> {
    let add = TableGroup::from_rows(add).map_err(|e| tag_group_error("(B,+)", e))?;
    let mul = TableGroup::from_rows(mul).map_err(|e| tag_group_error("(B,∘)", e))?;
    SkewBrace::from_groups(add, mul)
}

fn tag_group_error(which: &str, e: Error) -> Error {
    match e {
        Error::GroupAxiom(m) => Error::GroupAxiom(format!("{which}: {m}")),
        Error::Malformed(m) => Error::Malformed(format!("{which}: {m}")),
        other => other,
    }
}

impl SkewBrace {
    /// Checks compatibility and derives the `λ`, `σ` and star tables.
    ///
    /// Compatibility is equivalent to every `λ_a` being additive, and additivity of a map
    /// follows from `λ_a(b + t) = λ_a(b) + λ_a(t)` for all `b` and all additive generators `t`,
    /// so that is what is checked; the reported witness is a genuine failing triple.
    pub fn from_groups(add: TableGroup, mul: TableGroup) -> Result<Self> {
        let n = add.order();
        if mul.order() != n {
            return Err(Error::Malformed(format!("(B,+) has order {n} but (B,∘) has order {}", mul.order())));
        }
        let lam: Vec<usize> = (0..n * n).map(|i| add.op(add.inv(i / n), mul.op(i / n, i % n))).collect();
        let gens = add.generators();
        let witness = (0..n).into_par_iter().find_map_first(|a| {
            for b in 0..n {
                for &t in &gens {
                    if lam[a * n + add.op(b, t)] != add.op(lam[a * n + b], lam[a * n + t]) {
                        return Some((a, b, t));
                    }
                }
            }
            None
        });
        if let Some((a, b, c)) = witness {
            return Err(Error::Compatibility(a, b, c));
        }
        let sig = (0..n * n).map(|i| add.op(add.op(add.inv(i / n), i % n), i / n)).collect();
        let star = (0..n * n).map(|i| add.op(lam[i], add.inv(i % n))).collect();
        Ok(SkewBrace { n, add, mul, lam, sig, star })
    }

    /// The trivial brace `(G, ·, ·)`.
    pub fn trivial(g: &TableGroup) -> Self {
        Self::from_groups(g.clone(), g.clone()).expect("trivial brace")
    }

    /// The almost trivial brace `(G, ·ᵒᵖ, ·)`.
    pub fn almost_trivial(g: &TableGroup) -> Self {
        Self::from_groups(g.opposite(), g.clone()).expect("almost trivial brace")
    }

    pub fn add_group(&self) -> &TableGroup {
        &self.add
    }

    pub fn mul_group(&self) -> &TableGroup {
        &self.mul
    }

    pub fn add_rows(&self) -> Vec<Vec<usize>> {
        self.add.rows()
    }

    pub fn mul_rows(&self) -> Vec<Vec<usize>> {
        self.mul.rows()
    }

    /// Transports the brace along a carrier bijection given as old → new images.
    /// `images[0]` must be `0`.
    pub fn relabel(&self, images: &[usize]) -> Result<Self> {
        let n = self.n;
        if images.len() != n || images.first() != Some(&0) || !crate::perm::is_bijection(images) {
            return Err(Error::InvalidParameter("relabelling must be a bijection fixing 0".into()));
        }
        let mut inv = vec![0; n];
        for (i, &j) in images.iter().enumerate() {
            inv[j] = i;
        }
        let table = |g: &TableGroup| -> Vec<usize> {
            (0..n * n).map(|k| images[g.op(inv[k / n], inv[k % n])]).collect()
        };
        let add = TableGroup::from_flat(n, table(&self.add), true)?;
        let mul = TableGroup::from_flat(n, table(&self.mul), true)?;
        Self::from_groups(add, mul)
    }
}

impl BraceLike for SkewBrace {
    fn order(&self) -> usize {
        self.n
    }
    #[inline]
    fn add(&self, a: usize, b: usize) -> usize {
        self.add.op(a, b)
    }
    #[inline]
    fn neg(&self, a: usize) -> usize {
        self.add.inv(a)
    }
    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul.op(a, b)
    }
    #[inline]
    fn mul_inv(&self, a: usize) -> usize {
        self.mul.inv(a)
    }
    fn add_generators(&self) -> Vec<usize> {
        self.add.generators()
    }
    fn mul_generators(&self) -> Vec<usize> {
        self.mul.generators()
    }
    #[inline]
    fn lambda(&self, a: usize, b: usize) -> usize {
        self.lam[a * self.n + b]
    }
    #[inline]
    fn sigma(&self, b: usize, a: usize) -> usize {
        self.sig[b * self.n + a]
    }
    #[inline]
    fn star(&self, a: usize, b: usize) -> usize {
        self.star[a * self.n + b]
    }
}

/// A subset of the carrier satisfying the ideal conditions, stored sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ideal {
    elements: Vec<usize>,
}

impl Ideal {
    /// Verifies the ideal conditions.
    pub fn new<B: BraceLike + ?Sized>(b: &B, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        is_ideal(b, &elements)?;
        Ok(Ideal { elements })
    }

    pub(crate) fn from_sorted_unchecked(elements: Vec<usize>) -> Self {
        Ideal { elements }
    }

    pub fn zero() -> Self {
        Ideal { elements: vec![0] }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_zero(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, a: usize) -> bool {
        self.elements.binary_search(&a).is_ok()
    }

    pub fn is_subset_of(&self, other: &Ideal) -> bool {
        self.elements.iter().all(|&a| other.contains(a))
    }
}

/// The solution `r_B(a,b) = (λ_a(b), λ_a(b)⁻¹∘a∘b)` on the whole carrier.
pub fn associated_solution<B: BraceLike + ?Sized>(b: &B) -> Result<FinSolution> {
    let all: Vec<usize> = (0..b.order()).collect();
    restricted_solution(b, &all).map(|(s, _)| s)
}

/// Checks that `x` is invariant under every `λ_a` and `σ_a`.
pub fn check_invariant<B: BraceLike + ?Sized>(b: &B, x: &[usize]) -> Result<()> {
    let n = b.order();
    let mut mem = vec![false; n];
    for &e in x {
        if e >= n {
            return Err(Error::InvalidParameter(format!("element {e} outside a carrier of size {n}")));
        }
        mem[e] = true;
    }
    for a in b.mul_generators() {
        if let Some(&e) = x.iter().find(|&&e| !mem[b.lambda(a, e)]) {
            return Err(Error::NotInvariant { a, x: e, map: "λ" });
        }
    }
    for a in b.add_generators() {
        if let Some(&e) = x.iter().find(|&&e| !mem[b.sigma(a, e)]) {
            return Err(Error::NotInvariant { a, x: e, map: "σ" });
        }
    }
    Ok(())
}

/// Raw tables of the solution induced by `r_B` on a sorted invariant subset.
pub(crate) fn restricted_tables<B: BraceLike + ?Sized>(b: &B, x: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let m = x.len();
    let mut pos = std::collections::HashMap::with_capacity(m);
    for (i, &e) in x.iter().enumerate() {
        pos.insert(e, i);
    }
    let rows: Vec<(Vec<usize>, Vec<usize>)> = (0..m)
        .into_par_iter()
        .map(|i| {
            let a = x[i];
            let lam_row: Vec<usize> = x.iter().map(|&c| pos[&b.lambda(a, c)]).collect();
            // row of ρ_a: c ↦ (λ_c(a))⁻¹ ∘ c ∘ a
            let rho_row: Vec<usize> = x
                .iter()
                .map(|&c| pos[&b.mul(b.mul_inv(b.lambda(c, a)), b.mul(c, a))])
                .collect();
            (lam_row, rho_row)
        })
        .collect();
    let mut lam = Vec::with_capacity(m * m);
    let mut rho = Vec::with_capacity(m * m);
    for (l, r) in rows {
        lam.extend(l);
        rho.extend(r);
    }
    (lam, rho)
}

/// The solution induced on an invariant subset, re-indexed by the sorted subset.
/// Returns the solution and the embedding `i ↦ x[i]`.
pub fn restricted_solution<B: BraceLike + ?Sized>(b: &B, x: &[usize]) -> Result<(FinSolution, Vec<usize>)> {
    let mut x = x.to_vec();
    x.sort_unstable();
    x.dedup();
    check_invariant(b, &x)?;
    let (lam, rho) = restricted_tables(b, &x);
    Ok((FinSolution::from_flat(x.len(), lam, rho)?, x))
}

/// Socle, the `B⁽²⁾ ⊇ B⁽³⁾` series and a few flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraceInvariants {
    pub socle: Ideal,
    pub b2: Ideal,
    pub b3: Ideal,
    pub add_center: Vec<usize>,
    pub is_trivial: bool,
    pub is_cyclic_type: bool,
}

/// Orders up to which `B⁽²⁾` is generated from every star product.
const LITERAL_STAR_LIMIT: usize = 2048;

pub fn brace_invariants<B: BraceLike + ?Sized>(b: &B) -> Result<BraceInvariants> {
    let n = b.order();
    let add_gens = b.add_generators();
    let mul_gens = b.mul_generators();
    let add_center: Vec<usize> =
        (0..n).filter(|&a| add_gens.iter().all(|&t| b.add(a, t) == b.add(t, a))).collect();
    let socle_elems: Vec<usize> = add_center
        .iter()
        .copied()
        .filter(|&a| add_gens.iter().all(|&t| b.lambda(a, t) == t))
        .collect();
    let socle = Ideal::new(b, socle_elems).map_err(|e| Error::Internal(format!("socle is not an ideal: {e}")))?;

    let b2_elems = if n <= LITERAL_STAR_LIMIT {
        let stars: Vec<usize> = (0..n)
            .into_par_iter()
            .flat_map_iter(|a| (0..n).map(move |c| (a, c)))
            .map(|(a, c)| b.star(a, c))
            .collect::<std::collections::BTreeSet<usize>>()
            .into_iter()
            .collect();
        additive_closure(b, &stars)
    } else {
        // B*B is the ideal generated by the star products of generators: modulo that
        // ideal every generator acts trivially, so the quotient is a trivial brace.
        let seeds: Vec<usize> = mul_gens.iter().flat_map(|&g| add_gens.iter().map(move |&t| (g, t))).map(|(g, t)| b.star(g, t)).collect();
        ideal_closure(b, &seeds).elements().to_vec()
    };
    let b2 = Ideal::new(b, b2_elems).map_err(|e| Error::Internal(format!("B(2) is not an ideal: {e}")))?;
    let b3_seeds: Vec<usize> = b2
        .elements()
        .par_iter()
        .flat_map_iter(|&i| (0..n).map(move |c| (i, c)))
        .map(|(i, c)| b.star(i, c))
        .collect::<std::collections::BTreeSet<usize>>()
        .into_iter()
        .collect();
    let b3 = Ideal::new(b, additive_closure(b, &b3_seeds))
        .map_err(|e| Error::Internal(format!("B(3) is not an ideal: {e}")))?;
    let is_trivial = mul_gens.iter().all(|&g| add_gens.iter().all(|&t| b.lambda(g, t) == t));
    let is_cyclic_type = (0..n).any(|a| b.add_order(a) == n);
    Ok(BraceInvariants { socle, b2, b3, add_center, is_trivial, is_cyclic_type })
}

/// `B / I` on additive cosets (ordered by least element), with the projection.
pub fn quotient_brace(b: &SkewBrace, ideal: &Ideal) -> Result<(SkewBrace, Vec<usize>)> {
    is_ideal(b, ideal.elements())?;
    let (add, proj) = crate::group::quotient_group(&b.add, ideal.elements())?;
    let q = add.order();
    let mut reps = vec![usize::MAX; q];
    for a in 0..b.n {
        if reps[proj[a]] == usize::MAX {
            reps[proj[a]] = a;
        }
    }
    for a in 0..b.n {
        for c in 0..b.n {
            if proj[b.mul(a, c)] != proj[b.mul(reps[proj[a]], reps[proj[c]])] {
                return Err(Error::NotIdeal(format!("∘ not well defined on cosets at ({a},{c})")));
            }
        }
    }
    let flat = (0..q * q).map(|k| proj[b.mul(reps[k / q], reps[k % q])]).collect();
    let mul = TableGroup::from_flat(q, flat, true)?;
    Ok((SkewBrace::from_groups(add, mul)?, proj))
}

#[cfg(test)]
pub(crate) mod brace_tests {
    use super::*;
    use crate::perm::{closure, Perm};

    pub(crate) fn sym_group(n: usize) -> TableGroup {
        let mut gens = vec![Perm::transposition(n, 0, 1)];
        if n > 2 {
            gens.push(Perm::rotation(n, 1));
        }
        TableGroup::from_perm_group(&closure(&gens, n).unwrap()).unwrap()
    }

    pub(crate) fn cyclic_brace_order6() -> SkewBrace {
        SkewBrace::trivial(&TableGroup::cyclic(6))
    }

    /// Independent O(n³) compatibility oracle.
    fn compat_oracle(b: &SkewBrace) -> bool {
        let n = b.order();
        (0..n).all(|a| (0..n).all(|c| (0..n).all(|d| {
            b.mul(a, b.add(c, d)) == b.add(b.add(b.mul(a, c), b.neg(a)), b.mul(a, d))
        })))
    }

    #[test]
    fn validate_examples() {
        let g = sym_group(3);
        let t = SkewBrace::trivial(&g);
        assert!(compat_oracle(&t));
        assert!((0..6).all(|a| (0..6).all(|c| t.lambda(a, c) == c && t.star(a, c) == 0)));
        let at = SkewBrace::almost_trivial(&g);
        assert!(compat_oracle(&at));

        let mut mul = TableGroup::cyclic(3).rows();
        mul[1].swap(1, 2);
        let add = TableGroup::cyclic(3).rows();
        assert!(validate_brace(&add, &mul).is_err());

        // a non-compatible pair of group structures on 4 points
        let add = TableGroup::cyclic(4).rows();
        let f = [0, 1, 3, 2];
        let mul: Vec<Vec<usize>> = (0..4).map(|a| (0..4).map(|c| f[(f[a] + f[c]) % 4]).collect()).collect();
        let err = validate_brace(&add, &mul).unwrap_err();
        assert!(matches!(err, Error::Compatibility(..)));
    }

    #[test]
    fn associated_solution_examples() {
        let g = sym_group(3);
        let s = associated_solution(&SkewBrace::trivial(&g)).unwrap();
        for a in 0..6 {
            for c in 0..6 {
                // r(a,b) = (b, b⁻¹ a b)
                assert_eq!(s.r(a, c), (c, g.op(g.op(g.inv(c), a), c)));
            }
        }
        let s = associated_solution(&SkewBrace::almost_trivial(&g)).unwrap();
        for a in 0..6 {
            for c in 0..6 {
                // r(a,b) = (a b a⁻¹, a)
                assert_eq!(s.r(a, c), (g.op(g.op(a, c), g.inv(a)), a));
            }
        }
    }

    #[test]
    fn invariants_examples() {
        let t = SkewBrace::trivial(&TableGroup::abelian(&[2, 3]));
        let inv = brace_invariants(&t).unwrap();
        assert_eq!(inv.socle.len(), 6);
        assert!(inv.b2.is_zero() && inv.is_trivial && inv.is_cyclic_type);
        let inv = brace_invariants(&SkewBrace::trivial(&sym_group(3))).unwrap();
        assert!(inv.socle.is_zero());
        assert!(!inv.is_cyclic_type);
    }

    #[test]
    fn quotient_examples() {
        let b = SkewBrace::trivial(&sym_group(3));
        let (q, _) = quotient_brace(&b, &Ideal::zero()).unwrap();
        assert!(brace_isomorphic(&q, &b).unwrap().is_some());
        let all = Ideal::new(&b, (0..6).collect()).unwrap();
        assert_eq!(quotient_brace(&b, &all).unwrap().0.order(), 1);
        let a3 = Ideal::new(&b, b.add_group().commutator_subgroup()).unwrap();
        let (q, proj) = quotient_brace(&b, &a3).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(proj.len(), 6);
    }

    #[test]
    fn restricted_examples() {
        let s5 = sym_group(5);
        let b = SkewBrace::trivial(&s5);
        // transpositions sit at the indices of perms with cycle type [1,1,1,2]
        let closure5 = closure(&[Perm::transposition(5, 0, 1), Perm::rotation(5, 1)], 5).unwrap();
        let x: Vec<usize> = closure5
            .elements()
            .iter()
            .enumerate()
            .filter(|(_, p)| p.cycle_type() == vec![1, 1, 1, 2])
            .map(|(i, _)| i)
            .collect();
        let (sol, emb) = restricted_solution(&b, &x).unwrap();
        assert_eq!(sol.size(), 10);
        assert_eq!(emb, x);
        assert!(sol.profile().quandle);
        assert!(matches!(restricted_solution(&b, &[x[0]]), Err(Error::NotInvariant { .. })));
    }

    #[test]
    fn lambda_is_action_and_sigma_anti_action() {
        for b in [SkewBrace::almost_trivial(&sym_group(3)), cyclic_brace_order6(), SkewBrace::trivial(&sym_group(4))] {
            let n = b.order();
            for a in 0..n {
                for c in 0..n {
                    for x in 0..n {
                        assert_eq!(b.lambda(b.mul(a, c), x), b.lambda(a, b.lambda(c, x)));
                        assert_eq!(b.sigma(c, b.sigma(a, x)), b.sigma(b.add(a, c), x));
                    }
                }
            }
        }
    }
}
