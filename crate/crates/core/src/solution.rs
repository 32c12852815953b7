//! Finite non-degenerate set-theoretic solutions `r(x,y) = (λ_x(y), ρ_y(x))`.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perm::{closure, is_bijection, orbits, Partition, Perm, UnionFind};

/// Sizes above which the isomorphism search answers "undecided".
pub const SOLUTION_ISOMORPHISM_CAP: usize = 32;

/// A validated solution on `X = {0, …, n-1}`.
///
/// `lambda(x, y) = λ_x(y)` and `rho(y, x) = ρ_y(x)`, so `r(x,y) = (lambda(x,y), rho(y,x))`.
#[derive(Clone, PartialEq, Eq)]
pub struct FinSolution {
    n: usize,
    lam: Vec<usize>,
    rho: Vec<usize>,
    lam_inv: Vec<usize>,
}

impl std::fmt::Debug for FinSolution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FinSolution")
            .field("n", &self.n)
            .field("lambda", &self.lambda_rows())
            .field("rho", &self.rho_rows())
            .finish()
    }
}

/// Validates a pair of tables: `lam[x][y] = λ_x(y)`, `rho[y][x] = ρ_y(x)`.
pub fn validate_solution(lam: &[Vec<usize>], rho: &[Vec<usize>]) -> Result<FinSolution> {
    let n = lam.len();
    if rho.len() != n {
        return Err(Error::Malformed(format!("λ has {n} rows but ρ has {}", rho.len())));
    }
    let mut fl = Vec::with_capacity(n * n);
    let mut fr = Vec::with_capacity(n * n);
    for (name, rows, flat) in [("λ", lam, &mut fl), ("ρ", rho, &mut fr)] {
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::Malformed(format!("{name} row {i} has length {} (expected {n})", r.len())));
            }
            flat.extend_from_slice(r);
        }
    }
    FinSolution::from_flat(n, fl, fr)
}

impl FinSolution {
    /// Validates flat tables (`lam[x*n+y] = λ_x(y)`, `rho[y*n+x] = ρ_y(x)`).
    pub fn from_flat(n: usize, lam: Vec<usize>, rho: Vec<usize>) -> Result<Self> {
        let s = Self::from_flat_nondegenerate(n, lam, rho)?;
        if let Some((x, y, z)) = s.braid_witness() {
            return Err(Error::Braid(x, y, z));
        }
        Ok(s)
    }

    /// Checks bijectivity of every row but not the braid relation. Used for large
    /// structured carriers whose braid relation is checked on samples.
    pub(crate) fn from_flat_nondegenerate(n: usize, lam: Vec<usize>, rho: Vec<usize>) -> Result<Self> {
        if lam.len() != n * n || rho.len() != n * n {
            return Err(Error::Malformed(format!("tables must have {} entries", n * n)));
        }
        if let Some(&e) = lam.iter().chain(&rho).find(|&&e| e >= n) {
            return Err(Error::Malformed(format!("entry {e} out of range 0..{n}")));
        }
        for x in 0..n {
            if !is_bijection(&lam[x * n..(x + 1) * n]) {
                return Err(Error::LambdaNotBijective(x));
            }
            if !is_bijection(&rho[x * n..(x + 1) * n]) {
                return Err(Error::RhoNotBijective(x));
            }
        }
        let mut lam_inv = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                lam_inv[x * n + lam[x * n + y]] = y;
            }
        }
        Ok(FinSolution { n, lam, rho, lam_inv })
    }

    /// Builds and validates from closures `λ(x, y)` and `ρ(y, x)`.
    pub fn from_fn(n: usize, lam: impl Fn(usize, usize) -> usize, rho: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let fl = (0..n * n).map(|i| lam(i / n, i % n)).collect();
        let fr = (0..n * n).map(|i| rho(i / n, i % n)).collect();
        Self::from_flat(n, fl, fr)
    }

    /// `r(x,y) = (λ(y), ρ(x))`; valid iff `λ` and `ρ` commute.
    pub fn lyubashenko(lambda: &Perm, rho: &Perm) -> Result<Self> {
        let n = lambda.degree();
        if rho.degree() != n {
            return Err(Error::DegreeMismatch { expected: n, found: rho.degree() });
        }
        Self::from_fn(n, |_, y| lambda.apply(y), |_, x| rho.apply(x))
    }

    /// The flip `r(x,y) = (y,x)`.
    pub fn flip(n: usize) -> Self {
        Self::lyubashenko(&Perm::identity(n), &Perm::identity(n)).expect("flip is a solution")
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn lambda(&self, x: usize, y: usize) -> usize {
        self.lam[x * self.n + y]
    }

    #[inline]
    pub fn lambda_inv(&self, x: usize, y: usize) -> usize {
        self.lam_inv[x * self.n + y]
    }

    #[inline]
    pub fn rho(&self, y: usize, x: usize) -> usize {
        self.rho[y * self.n + x]
    }

    #[inline]
    pub fn r(&self, x: usize, y: usize) -> (usize, usize) {
        (self.lambda(x, y), self.rho(y, x))
    }

    /// `σ_y(x) = λ_y ρ_{λ_x⁻¹(y)}(x)`.
    #[inline]
    pub fn sigma(&self, y: usize, x: usize) -> usize {
        self.lambda(y, self.rho(self.lambda_inv(x, y), x))
    }

    pub fn lambda_perm(&self, x: usize) -> Perm {
        Perm::from_images_unchecked(self.lam[x * self.n..(x + 1) * self.n].to_vec())
    }

    pub fn rho_perm(&self, y: usize) -> Perm {
        Perm::from_images_unchecked(self.rho[y * self.n..(y + 1) * self.n].to_vec())
    }

    pub fn sigma_perm(&self, y: usize) -> Perm {
        Perm::from_images_unchecked((0..self.n).map(|x| self.sigma(y, x)).collect())
    }

    pub fn lambda_rows(&self) -> Vec<Vec<usize>> {
        self.lam.chunks(self.n.max(1)).map(<[usize]>::to_vec).collect()
    }

    pub fn rho_rows(&self) -> Vec<Vec<usize>> {
        self.rho.chunks(self.n.max(1)).map(<[usize]>::to_vec).collect()
    }

    /// First triple violating the braid relation, in lexicographic order.
    pub fn braid_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        (0..n).into_par_iter().find_map_first(|x| {
            for y in 0..n {
                for z in 0..n {
                    if !self.braid_holds(x, y, z) {
                        return Some((x, y, z));
                    }
                }
            }
            None
        })
    }

    #[inline]
    pub(crate) fn braid_holds(&self, x: usize, y: usize, z: usize) -> bool {
        // (r×id)(id×r)(r×id)
        let (a, b) = self.r(x, y);
        let (b2, c) = self.r(b, z);
        let (a3, b3) = self.r(a, b2);
        // (id×r)(r×id)(id×r)
        let (p, q) = self.r(y, z);
        let (u, v) = self.r(x, p);
        let (v2, w) = self.r(v, q);
        a3 == u && b3 == v2 && c == w
    }

    /// Generators `λ_x, ρ_y` of the permutation group acting on `X`.
    pub fn action_generators(&self) -> Vec<Perm> {
        let mut gens: Vec<Perm> = (0..self.n).flat_map(|x| [self.lambda_perm(x), self.rho_perm(x)]).collect();
        gens.sort_unstable();
        gens.dedup();
        gens
    }

    /// The derived solution `r'(x,y) = (y, σ_y(x))`.
    pub fn derived(&self) -> FinSolution {
        let n = self.n;
        let lam = (0..n * n).map(|i| i % n).collect();
        let rho = (0..n * n).map(|i| self.sigma(i / n, i % n)).collect();
        FinSolution::from_flat(n, lam, rho).expect("the derived solution of a solution is a solution")
    }

    /// The diagonal map `𝔮(x) = λ_x⁻¹(x)`.
    pub fn diagonal_map(&self) -> Perm {
        let img: Vec<usize> = (0..self.n).map(|x| self.lambda_inv(x, x)).collect();
        assert!(is_bijection(&img), "diagonal map of a non-degenerate solution must be bijective");
        Perm::from_images_unchecked(img)
    }

    fn lambda_rows_equal(&self) -> bool {
        let n = self.n;
        (1..n).all(|x| self.lam[x * n..(x + 1) * n] == self.lam[..n])
    }

    fn rho_rows_equal(&self) -> bool {
        let n = self.n;
        (1..n).all(|x| self.rho[x * n..(x + 1) * n] == self.rho[..n])
    }

    pub fn is_lyubashenko(&self) -> bool {
        self.lambda_rows_equal() && self.rho_rows_equal()
    }

    pub fn is_involutive(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| {
            let (u, v) = self.r(x, y);
            self.r(u, v) == (x, y)
        }))
    }

    pub fn is_indecomposable(&self) -> bool {
        orbits(&self.action_generators(), self.n).expect("degrees agree").class_count() <= 1
    }

    pub fn is_irretractable(&self) -> bool {
        self.retraction_partition().is_discrete()
    }

    pub fn profile(&self) -> SolutionProfile {
        let n = self.n;
        let derived_form = (0..n).all(|x| self.lambda_perm(x).is_identity());
        let irretractable = self.is_irretractable();
        SolutionProfile {
            involutive: self.is_involutive(),
            derived_form,
            twisted_rack: self.lambda_rows_equal(),
            quandle: derived_form && (0..n).all(|x| self.rho(x, x) == x),
            lyubashenko: self.is_lyubashenko(),
            indecomposable: self.is_indecomposable(),
            irretractable,
            injective_hint: irretractable,
        }
    }

    /// Classes of equal `(λ_x, ρ_x)` rows.
    pub fn retraction_partition(&self) -> Partition {
        let n = self.n;
        let keys: Vec<(&[usize], &[usize])> =
            (0..n).map(|x| (&self.lam[x * n..(x + 1) * n], &self.rho[x * n..(x + 1) * n])).collect();
        Partition::from_labels(&keys)
    }

    /// One retraction step: the partition and the induced solution on its classes.
    pub fn retraction(&self) -> (Partition, FinSolution) {
        let p = self.retraction_partition();
        let q = self.quotient(&p).expect("the retraction relation is a congruence");
        (p, q)
    }

    /// Smallest congruence identifying `x` and `y`.
    pub fn congruence_closure(&self, x: usize, y: usize) -> Partition {
        self.congruence_uf(x, y).into_partition()
    }

    fn congruence_uf(&self, x: usize, y: usize) -> UnionFind {
        self.congruence_generated(&[(x, y)])
    }

    /// Smallest congruence containing all the given pairs.
    pub(crate) fn congruence_generated(&self, pairs: &[(usize, usize)]) -> UnionFind {
        let n = self.n;
        let mut uf = UnionFind::new(n);
        let mut work = Vec::new();
        for &(x, y) in pairs {
            if uf.union(x, y) {
                work.push((x, y));
            }
        }
        while let Some((a, b)) = work.pop() {
            if uf.class_count() == 1 {
                break;
            }
            for v in 0..n {
                for (c, d) in [
                    (self.lambda(a, v), self.lambda(b, v)),
                    (self.lambda(v, a), self.lambda(v, b)),
                    (self.rho(v, a), self.rho(v, b)),
                    (self.rho(a, v), self.rho(b, v)),
                ] {
                    if uf.union(c, d) {
                        work.push((c, d));
                    }
                }
            }
        }
        uf
    }

    /// Simplicity by exhausting pair congruences.
    pub fn is_simple_bruteforce(&self) -> bool {
        self.simplicity_report().simple
    }

    pub fn simplicity_report(&self) -> SimplicityReport {
        let n = self.n;
        if n < 2 {
            return SimplicityReport { simple: false, small_size_convention: true, witness: None };
        }
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect();
        let witness = pairs.par_iter().find_map_first(|&(x, y)| {
            let uf = self.congruence_uf(x, y);
            (uf.class_count() > 1).then(|| uf.into_partition())
        });
        SimplicityReport { simple: witness.is_none(), small_size_convention: n < 3, witness }
    }

    /// Induced solution on the classes of a congruence (classes ordered by representative).
    pub fn quotient(&self, p: &Partition) -> Result<FinSolution> {
        let n = self.n;
        if p.size() != n {
            return Err(Error::DegreeMismatch { expected: n, found: p.size() });
        }
        for x in 0..n {
            let rx = p.rep(x);
            for y in 0..n {
                let ry = p.rep(y);
                if !p.same_class(self.lambda(x, y), self.lambda(rx, ry)) || !p.same_class(self.rho(y, x), self.rho(ry, rx)) {
                    return Err(Error::NotCongruence(x, y));
                }
            }
        }
        let idx = p.class_indices();
        let reps: Vec<usize> = p.classes().iter().map(|c| c[0]).collect();
        let m = reps.len();
        let lam = (0..m * m).map(|i| idx[self.lambda(reps[i / m], reps[i % m])]).collect();
        let rho = (0..m * m).map(|i| idx[self.rho(reps[i / m], reps[i % m])]).collect();
        FinSolution::from_flat(m, lam, rho)
    }

    /// Transports the solution along `phi` (old label `x` becomes `phi(x)`).
    pub fn relabel(&self, phi: &Perm) -> FinSolution {
        let n = self.n;
        let inv = phi.inverse();
        let lam = (0..n * n).map(|i| phi.apply(self.lambda(inv.apply(i / n), inv.apply(i % n)))).collect();
        let rho = (0..n * n).map(|i| phi.apply(self.rho(inv.apply(i / n), inv.apply(i % n)))).collect();
        FinSolution::from_flat(n, lam, rho).expect("relabelled solution")
    }

    /// Solution isomorphism `self → other`, `Ok(None)` when none exists.
    pub fn isomorphism_to(&self, other: &FinSolution) -> Result<Option<Perm>> {
        if self.n != other.n {
            return Ok(None);
        }
        if self.n > SOLUTION_ISOMORPHISM_CAP {
            return Err(Error::Undecided(format!("solution isomorphism above size {SOLUTION_ISOMORPHISM_CAP}")));
        }
        if self.profile() != other.profile() {
            return Ok(None);
        }
        let (sa, sb) = (self.point_signatures(), other.point_signatures());
        let mut ms_a = sa.clone();
        let mut ms_b = sb.clone();
        ms_a.sort();
        ms_b.sort();
        if ms_a != ms_b {
            return Ok(None);
        }
        let n = self.n;
        let mut state = IsoState { fwd: vec![usize::MAX; n], bwd: vec![usize::MAX; n], order: Vec::new() };
        Ok(self.iso_rec(other, &sa, &sb, &mut state).map(Perm::from_images_unchecked))
    }

    fn point_signatures(&self) -> Vec<PointSignature> {
        let n = self.n;
        let lam_class = Partition::from_labels(&(0..n).map(|x| &self.lam[x * n..(x + 1) * n]).collect::<Vec<_>>());
        let rho_class = Partition::from_labels(&(0..n).map(|x| &self.rho[x * n..(x + 1) * n]).collect::<Vec<_>>());
        (0..n)
            .map(|x| PointSignature {
                lam_type: self.lambda_perm(x).cycle_type(),
                rho_type: self.rho_perm(x).cycle_type(),
                fixes: (self.lambda(x, x) == x, self.rho(x, x) == x),
                same_lambda: (0..n).filter(|&y| lam_class.same_class(x, y)).count(),
                same_rho: (0..n).filter(|&y| rho_class.same_class(x, y)).count(),
            })
            .collect()
    }

    fn iso_rec(&self, t: &FinSolution, sa: &[PointSignature], sb: &[PointSignature], st: &mut IsoState) -> Option<Vec<usize>> {
        let n = self.n;
        let Some(x) = (0..n).find(|&x| st.fwd[x] == usize::MAX) else {
            return Some(st.fwd.clone());
        };
        for y in 0..n {
            if st.bwd[y] != usize::MAX || sa[x] != sb[y] {
                continue;
            }
            let saved = (st.fwd.clone(), st.bwd.clone(), st.order.len());
            if self.iso_assign(t, sa, sb, st, x, y) {
                if let Some(m) = self.iso_rec(t, sa, sb, st) {
                    return Some(m);
                }
            }
            st.fwd = saved.0;
            st.bwd = saved.1;
            st.order.truncate(saved.2);
        }
        None
    }

    /// Assigns `x ↦ y` and propagates all forced images; `false` on conflict.
    fn iso_assign(&self, t: &FinSolution, sa: &[PointSignature], sb: &[PointSignature], st: &mut IsoState, x: usize, y: usize) -> bool {
        let mut queue = vec![(x, y)];
        while let Some((a, b)) = queue.pop() {
            if st.fwd[a] != usize::MAX || st.bwd[b] != usize::MAX {
                if st.fwd[a] != b {
                    return false;
                }
                continue;
            }
            if sa[a] != sb[b] {
                return false;
            }
            st.fwd[a] = b;
            st.bwd[b] = a;
            st.order.push(a);
            for i in 0..st.order.len() {
                let c = st.order[i];
                let d = st.fwd[c];
                for (u, v) in [
                    (self.lambda(a, c), t.lambda(b, d)),
                    (self.lambda(c, a), t.lambda(d, b)),
                    (self.rho(a, c), t.rho(b, d)),
                    (self.rho(c, a), t.rho(d, b)),
                ] {
                    if st.fwd[u] == usize::MAX && st.bwd[v] == usize::MAX {
                        queue.push((u, v));
                    } else if st.fwd[u] != v {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Simplicity of Lyubashenko solutions via the cyclic-group criterion.
    pub fn classify_lyubashenko(&self) -> LyubashenkoClass {
        if !self.is_lyubashenko() {
            return LyubashenkoClass { is_lyubashenko: false, is_simple: false, p: None };
        }
        let n = self.n;
        if n == 2 {
            return LyubashenkoClass { is_lyubashenko: true, is_simple: true, p: Some(2) };
        }
        if !is_prime(n) {
            return LyubashenkoClass { is_lyubashenko: true, is_simple: false, p: None };
        }
        let g = closure(&[self.lambda_perm(0), self.rho_perm(0)], n).expect("group of commuting permutations");
        let simple = g.order() == n && g.is_cyclic();
        LyubashenkoClass { is_lyubashenko: true, is_simple: simple, p: simple.then_some(n) }
    }
}

struct IsoState {
    fwd: Vec<usize>,
    bwd: Vec<usize>,
    order: Vec<usize>,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct PointSignature {
    lam_type: Vec<usize>,
    rho_type: Vec<usize>,
    fixes: (bool, bool),
    same_lambda: usize,
    same_rho: usize,
}

/// Structural flags of a solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SolutionProfile {
    pub involutive: bool,
    /// All `λ_x` are the identity.
    pub derived_form: bool,
    /// All `λ_x` coincide.
    pub twisted_rack: bool,
    pub quandle: bool,
    pub lyubashenko: bool,
    pub indecomposable: bool,
    pub irretractable: bool,
    pub injective_hint: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicityReport {
    pub simple: bool,
    /// Set when `n < 3`, where the answer is a convention: false for one point, true for two.
    pub small_size_convention: bool,
    /// A proper nontrivial congruence when the solution is not simple.
    pub witness: Option<Partition>,
}

/// `is_simple` and `p` are only meaningful when `is_lyubashenko` holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LyubashenkoClass {
    pub is_lyubashenko: bool,
    pub is_simple: bool,
    pub p: Option<usize>,
}

/// Free-function spelling of [`FinSolution::isomorphism_to`].
pub fn are_isomorphic(s: &FinSolution, t: &FinSolution) -> Result<Option<Perm>> {
    s.isomorphism_to(t)
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

pub(crate) fn mod_inverse(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    (1..p).find(|&b| a * b % p == 1)
}

/// The three affine families of indecomposable solutions of prime size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AffineFamily {
    /// `(x,y) ↦ (ay + (1−ab)x + c, bx − a⁻¹c)`
    One { a: u64, b: u64, c: u64 },
    /// `(x,y) ↦ (ay + c, bx + (1−ab)y − bc)`
    Two { a: u64, b: u64, c: u64 },
    /// `(x,y) ↦ (y + c1, x + c2)`
    Three { c1: u64, c2: u64 },
}

/// Builds an affine solution on `Z_p`.
pub fn affine_prime_solution(p: usize, family: AffineFamily) -> Result<FinSolution> {
    if !is_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    let m = p as u64;
    let check_ab = |a: u64, b: u64| -> Result<()> {
        if a % m == 0 || b % m == 0 {
            return Err(Error::InvalidParameter("a and b must be nonzero".into()));
        }
        if a * b % m == 1 {
            return Err(Error::InvalidParameter(format!("ab ≡ 1 (mod {p})")));
        }
        Ok(())
    };
    let neg = |v: u64| (m - v % m) % m;
    match family {
        AffineFamily::One { a, b, c } => {
            check_ab(a, b)?;
            let ainv = mod_inverse(a, m).expect("a is a unit");
            let one_ab = (1 + m * m - a * b % m) % m;
            FinSolution::from_fn(
                p,
                |x, y| ((a * y as u64 + one_ab * x as u64 + c) % m) as usize,
                |_, x| ((b * x as u64 + neg(ainv * c)) % m) as usize,
            )
        }
        AffineFamily::Two { a, b, c } => {
            check_ab(a, b)?;
            let one_ab = (1 + m * m - a * b % m) % m;
            FinSolution::from_fn(
                p,
                |_, y| ((a * y as u64 + c) % m) as usize,
                |y, x| ((b * x as u64 + one_ab * y as u64 + neg(b * c)) % m) as usize,
            )
        }
        AffineFamily::Three { c1, c2 } => {
            if c1 % m == 0 && c2 % m == 0 {
                return Err(Error::InvalidParameter("(c1, c2) must not be (0, 0)".into()));
            }
            FinSolution::from_fn(p, |_, y| ((y as u64 + c1) % m) as usize, |_, x| ((x as u64 + c2) % m) as usize)
        }
    }
}

/// Every congruence of `s`, from finest to coarsest. Exhaustive; meant for small sizes.
pub fn all_congruences(s: &FinSolution) -> Vec<Partition> {
    let n = s.size();
    let mut seen: HashSet<Partition> = HashSet::from([Partition::discrete(n)]);
    let mut frontier = vec![Partition::discrete(n)];
    while let Some(p) = frontier.pop() {
        for x in 0..n {
            for y in x + 1..n {
                if p.same_class(x, y) {
                    continue;
                }
                let mut pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, p.rep(i))).collect();
                pairs.push((x, y));
                let q = s.congruence_generated(&pairs).into_partition();
                if seen.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
    }
    let mut out: Vec<Partition> = seen.into_iter().collect();
    out.sort_by_key(|p| (std::cmp::Reverse(p.class_count()), p.reps().to_vec()));
    out
}

#[cfg(test)]
pub(crate) mod solution_tests {
    use super::*;
    use crate::perm::is_primitive;
    use proptest::prelude::*;

    pub(crate) fn conj_quandle3() -> FinSolution {
        let id = vec![vec![0, 1, 2]; 3];
        let rho = vec![vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]];
        validate_solution(&id, &rho).unwrap()
    }

    fn lyu(n: usize, a: usize, b: usize) -> FinSolution {
        FinSolution::lyubashenko(&Perm::rotation(n, a), &Perm::rotation(n, b)).unwrap()
    }

    /// Independent oracle: is `p` a congruence, checked on every pair.
    fn is_congruence(s: &FinSolution, p: &Partition) -> bool {
        let n = s.size();
        (0..n).all(|x| (0..n).all(|y| {
            (0..n).all(|x2| !p.same_class(x, x2) || (0..n).all(|y2| {
                !p.same_class(y, y2)
                    || (p.same_class(s.lambda(x, y), s.lambda(x2, y2)) && p.same_class(s.rho(y, x), s.rho(y2, x2)))
            }))
        }))
    }

    #[test]
    fn validation_examples() {
        let flip = validate_solution(&[vec![0, 1], vec![0, 1]], &[vec![0, 1], vec![0, 1]]).unwrap();
        assert_eq!(flip, FinSolution::flip(2));
        conj_quandle3();
        let err = validate_solution(&[vec![0, 0], vec![0, 1]], &[vec![0, 1], vec![0, 1]]).unwrap_err();
        assert_eq!(err, Error::LambdaNotBijective(0));
        assert_eq!(err.to_string(), "λ_0 not bijective");
        // λ and ρ that do not commute
        let l = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let r = Perm::from_cycles(3, &[&[1, 2]]).unwrap();
        assert!(matches!(FinSolution::lyubashenko(&l, &r), Err(Error::Braid(..))));
    }

    #[test]
    fn derived_and_diagonal_examples() {
        assert_eq!(FinSolution::flip(2).derived(), FinSolution::flip(2));
        assert_eq!(conj_quandle3().derived(), conj_quandle3());
        assert!(conj_quandle3().diagonal_map().is_identity());
        // λ = +1 on Z_3: 𝔮(x) = x − 1
        assert_eq!(lyu(3, 1, 0).diagonal_map(), Perm::rotation(3, 2));
    }

    #[test]
    fn profile_examples() {
        let p = FinSolution::flip(2).profile();
        assert!(p.involutive && p.derived_form && p.lyubashenko && !p.indecomposable && !p.irretractable);
        let p = conj_quandle3().profile();
        assert!(p.derived_form && p.quandle && !p.involutive && p.indecomposable && p.irretractable);
        assert!(p.twisted_rack && !p.lyubashenko);
    }

    #[test]
    fn retraction_examples() {
        let (p, q) = lyu(3, 1, 0).retraction();
        assert!(p.is_full());
        assert_eq!(q.size(), 1);
        let (p, q) = conj_quandle3().retraction();
        assert!(p.is_discrete());
        assert!(q.isomorphism_to(&conj_quandle3()).unwrap().is_some());
        let (p, q) = FinSolution::flip(3).retraction();
        assert!(p.is_full());
        assert_eq!(q.size(), 1);
    }

    #[test]
    fn congruence_examples() {
        let p = FinSolution::flip(3).congruence_closure(0, 1);
        assert_eq!(p.classes(), vec![vec![0, 1], vec![2]]);
        assert!(conj_quandle3().congruence_closure(0, 1).is_full());
        assert!(conj_quandle3().is_simple_bruteforce());
        assert!(FinSolution::flip(2).is_simple_bruteforce());
        assert!(FinSolution::flip(2).simplicity_report().small_size_convention);
        assert!(!FinSolution::flip(3).is_simple_bruteforce());
        assert!(!FinSolution::flip(1).is_simple_bruteforce());
    }

    #[test]
    fn quotient_examples() {
        let s = conj_quandle3();
        assert_eq!(s.quotient(&Partition::discrete(3)).unwrap(), s);
        assert_eq!(s.quotient(&Partition::full(3)).unwrap().size(), 1);
        let flip3 = FinSolution::flip(3);
        let p = Partition::from_classes(3, &[vec![0, 1], vec![2]]).unwrap();
        assert_eq!(flip3.quotient(&p).unwrap(), FinSolution::flip(2));
        assert!(matches!(s.quotient(&p), Err(Error::NotCongruence(..))));
    }

    #[test]
    fn isomorphism_examples() {
        let s = conj_quandle3();
        let phi = Perm::from_cycles(3, &[&[0, 2, 1]]).unwrap();
        let t = s.relabel(&phi);
        let f = s.isomorphism_to(&t).unwrap().unwrap();
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(f.apply(s.lambda(x, y)), t.lambda(f.apply(x), f.apply(y)));
                assert_eq!(f.apply(s.rho(y, x)), t.rho(f.apply(y), f.apply(x)));
            }
        }
        assert!(FinSolution::flip(2).isomorphism_to(&lyu(2, 1, 1)).unwrap().is_none());
        let big = FinSolution::flip(33);
        assert!(matches!(big.isomorphism_to(&big), Err(Error::Undecided(_))));
    }

    #[test]
    fn lyubashenko_examples() {
        let c = lyu(5, 1, 0).classify_lyubashenko();
        assert!(c.is_lyubashenko && c.is_simple && c.p == Some(5));
        assert!(!lyu(4, 1, 0).classify_lyubashenko().is_simple);
        assert!(lyu(5, 1, 2).classify_lyubashenko().is_simple);
        assert!(!conj_quandle3().classify_lyubashenko().is_lyubashenko);
    }

    #[test]
    fn affine_examples() {
        let e = affine_prime_solution(5, AffineFamily::One { a: 2, b: 3, c: 0 });
        assert!(matches!(e, Err(Error::InvalidParameter(_))));
        let s = affine_prime_solution(3, AffineFamily::Three { c1: 1, c2: 0 }).unwrap();
        assert_eq!(s, lyu(3, 1, 0));
        let s = affine_prime_solution(5, AffineFamily::One { a: 2, b: 1, c: 0 }).unwrap();
        assert_eq!(s.size(), 5);
        assert!(s.is_simple_bruteforce());
        assert!(affine_prime_solution(4, AffineFamily::Three { c1: 1, c2: 0 }).is_err());
        assert!(affine_prime_solution(3, AffineFamily::Three { c1: 0, c2: 3 }).is_err());
    }

    #[test]
    fn all_congruences_of_flip3() {
        // all 5 partitions of a 3-set are congruences of the flip
        assert_eq!(all_congruences(&FinSolution::flip(3)).len(), 5);
        assert_eq!(all_congruences(&conj_quandle3()).len(), 2);
    }

    /// Random small solutions drawn from Lyubashenko, affine and relabelled quandle data.
    fn arb_solution() -> impl Strategy<Value = FinSolution> {
        let lyub = (2usize..=6, 0usize..6, 0usize..6).prop_map(|(n, a, b)| lyu(n, a % n, b % n));
        let affine = (prop::sample::select(vec![3usize, 5, 7]), 1u64..7, 1u64..7, 0u64..7, any::<bool>())
            .prop_filter_map("valid affine data", |(p, a, b, c, one)| {
                let fam = if one { AffineFamily::One { a, b, c } } else { AffineFamily::Two { a, b, c } };
                affine_prime_solution(p, fam).ok()
            });
        let quandle = Just(vec![0usize, 1, 2]).prop_shuffle().prop_map(|v| conj_quandle3().relabel(&Perm::from_images(v).unwrap()));
        prop_oneof![lyub, affine, quandle]
    }

    proptest! {
        #[test]
        fn lemma_sigma_identity(s in arb_solution()) {
            let q = s.diagonal_map();
            let qi = q.inverse();
            for b in 0..s.size() {
                let rhs = s.lambda_perm(b).compose(&q).compose(&s.rho_perm(b)).compose(&qi);
                prop_assert_eq!(s.sigma_perm(b), rhs);
            }
        }

        #[test]
        fn derived_validates(s in arb_solution()) {
            let d = s.derived();
            prop_assert!(d.braid_witness().is_none());
        }

        #[test]
        fn congruence_closure_is_minimal_congruence(s in arb_solution(), x in 0usize..8, y in 0usize..8) {
            let n = s.size();
            let (x, y) = (x % n, y % n);
            prop_assume!(x != y);
            let p = s.congruence_closure(x, y);
            prop_assert!(is_congruence(&s, &p));
            prop_assert!(p.same_class(x, y));
            // equal fibres over indecomposable solutions
            if s.is_indecomposable() {
                let sizes: Vec<usize> = p.classes().iter().map(Vec::len).collect();
                prop_assert!(sizes.iter().all(|&k| k == sizes[0]));
            }
            // minimality against every congruence containing (x, y)
            for c in all_congruences(&s) {
                if c.same_class(x, y) {
                    prop_assert!(p.refines(&c));
                }
            }
            let q = s.quotient(&p).unwrap();
            prop_assert_eq!(q.size(), p.class_count());
        }

        #[test]
        fn quotient_composition(s in arb_solution()) {
            let n = s.size();
            let congs = all_congruences(&s);
            for p in &congs {
                let q = s.quotient(p).unwrap();
                let idx = p.class_indices();
                for p2 in congs.iter().filter(|c| p.refines(c)) {
                    // image of p2 on the classes of p, then a second projection
                    let labels: Vec<usize> = {
                        let mut l = vec![0; q.size()];
                        for i in 0..n {
                            l[idx[i]] = p2.rep(i);
                        }
                        l
                    };
                    let image = Partition::from_labels(&labels);
                    let twice = q.quotient(&image).unwrap();
                    let once = s.quotient(p2).unwrap();
                    prop_assert_eq!(twice, once);
                }
            }
        }

        #[test]
        fn simple_implies_indecomposable(s in arb_solution()) {
            if s.size() >= 3 && s.is_simple_bruteforce() {
                prop_assert!(s.profile().indecomposable);
                if s.is_lyubashenko() {
                    let g = closure(&[s.lambda_perm(0), s.rho_perm(0)], s.size()).unwrap();
                    prop_assert!(is_primitive(&g).primitive);
                }
            }
        }

        #[test]
        fn isomorphism_is_equivalence(s in arb_solution(), shuffle in Just((0usize..7).collect::<Vec<_>>()).prop_shuffle()) {
            let n = s.size();
            let img: Vec<usize> = shuffle.into_iter().filter(|&i| i < n).collect();
            let phi = Perm::from_images(img).unwrap();
            let t = s.relabel(&phi);
            prop_assert!(s.isomorphism_to(&s).unwrap().is_some());
            let f = s.isomorphism_to(&t).unwrap().unwrap();
            let g = t.isomorphism_to(&s).unwrap().unwrap();
            prop_assert_eq!(t.relabel(&g), s.clone());
            prop_assert_eq!(s.relabel(&f), t);
        }
    }
}
