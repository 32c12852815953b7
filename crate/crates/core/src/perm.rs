//! Permutations of `{0, …, n-1}`, generated permutation groups, orbits and block systems.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::config::element_cap;
use crate::error::{Error, Result};

/// A bijection of `{0, …, n-1}` stored as its image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    img: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm { img: (0..n).collect() }
    }

    /// Checks that `img` is a bijection.
    pub fn from_images(img: Vec<usize>) -> Result<Self> {
        if !is_bijection(&img) {
            return Err(Error::NotAPermutation(format!("{img:?}")));
        }
        Ok(Perm { img })
    }

    pub(crate) fn from_images_unchecked(img: Vec<usize>) -> Self {
        debug_assert!(is_bijection(&img));
        Perm { img }
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[0, 1, 2], &[3, 4]]`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut img: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for cyc in cycles {
            for (i, &a) in cyc.iter().enumerate() {
                if a >= n || seen[a] {
                    return Err(Error::NotAPermutation(format!("bad cycle {cyc:?}")));
                }
                seen[a] = true;
                img[a] = cyc[(i + 1) % cyc.len()];
            }
        }
        Ok(Perm { img })
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut img: Vec<usize> = (0..n).collect();
        img.swap(a, b);
        Perm { img }
    }

    /// `i ↦ i + shift (mod n)`.
    pub fn rotation(n: usize, shift: usize) -> Self {
        Perm { img: (0..n).map(|i| (i + shift) % n).collect() }
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.img[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.img
    }

    pub fn into_images(self) -> Vec<usize> {
        self.img
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in compose");
        Perm { img: other.img.iter().map(|&i| self.img[i]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.img.len()];
        for (i, &j) in self.img.iter().enumerate() {
            inv[j] = i;
        }
        Perm { img: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn pow(&self, e: i64) -> Perm {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq);
            }
            sq = sq.compose(&sq);
            e >>= 1;
        }
        acc
    }

    /// Nontrivial cycles, each starting at its smallest point, sorted by first point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut cyc = vec![s];
            seen[s] = true;
            let mut j = self.img[s];
            while j != s {
                seen[j] = true;
                cyc.push(j);
                j = self.img[j];
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }

    /// Sorted multiset of cycle lengths including fixed points.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        let moved: usize = t.iter().sum();
        t.extend(std::iter::repeat(1).take(self.degree() - moved));
        t.sort_unstable();
        t
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().fold(1, |acc, c| lcm(acc, c.len()))
    }

    pub fn fixed_points(&self) -> usize {
        self.img.iter().enumerate().filter(|&(i, &j)| i == j).count()
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{}", self)
    }
}

pub(crate) fn is_bijection(img: &[usize]) -> bool {
    let n = img.len();
    let mut seen = vec![false; n];
    for &j in img {
        if j >= n || seen[j] {
            return false;
        }
        seen[j] = true;
    }
    true
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: usize, b: usize) -> usize {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

fn check_degrees(gens: &[Perm], n: usize) -> Result<()> {
    for g in gens {
        if g.degree() != n {
            return Err(Error::DegreeMismatch { expected: n, found: g.degree() });
        }
    }
    Ok(())
}

/// A permutation group with its full element list materialized.
#[derive(Clone, Debug)]
pub struct GenGroup {
    n: usize,
    gens: Vec<Perm>,
    elements: Vec<Perm>,
}

impl GenGroup {
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    /// All elements in sorted order; the identity comes first.
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    pub fn is_abelian(&self) -> bool {
        self.gens.iter().enumerate().all(|(i, a)| {
            self.gens[i + 1..].iter().all(|b| a.compose(b) == b.compose(a))
        })
    }

    /// Cyclic iff some element has order equal to the group order.
    pub fn is_cyclic(&self) -> bool {
        let n = self.order();
        self.is_abelian() && self.elements.iter().any(|e| e.order() == n)
    }

    pub fn orbits(&self) -> Partition {
        orbits(&self.gens, self.n).expect("generators share the group degree")
    }
}

/// The group generated by `gens`, with the global element cap.
pub fn closure(gens: &[Perm], n: usize) -> Result<GenGroup> {
    closure_with_cap(gens, n, element_cap())
}

pub fn closure_with_cap(gens: &[Perm], n: usize, cap: usize) -> Result<GenGroup> {
    check_degrees(gens, n)?;
    let gens: Vec<Perm> = gens.to_vec();
    let id = Perm::identity(n);
    let mut seen: HashSet<Perm> = HashSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(e) = queue.pop_front() {
        for g in &gens {
            let h = g.compose(&e);
            if !seen.contains(&h) {
                if seen.len() >= cap {
                    return Err(Error::size_limit("permutation group closure", cap));
                }
                seen.insert(h.clone());
                queue.push_back(h);
            }
        }
    }
    let mut elements: Vec<Perm> = seen.into_iter().collect();
    elements.sort_unstable();
    Ok(GenGroup { n, gens, elements })
}

/// Union-find over `{0, …, n-1}`.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    classes: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), classes: n }
    }

    pub fn find(&mut self, mut a: usize) -> usize {
        let mut root = a;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[a] != root {
            let next = self.parent[a];
            self.parent[a] = root;
            a = next;
        }
        root
    }

    /// Returns `true` when two distinct classes were merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        self.classes -= 1;
        true
    }

    pub fn class_count(&self) -> usize {
        self.classes
    }

    pub fn into_partition(mut self) -> Partition {
        let n = self.parent.len();
        let rep = (0..n).map(|i| self.find(i)).collect();
        Partition::from_rep_unchecked(rep)
    }
}

/// An equivalence relation in canonical form: `rep[i]` is the least element of `i`'s class.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Partition {
    rep: Vec<usize>,
}

impl Partition {
    pub fn discrete(n: usize) -> Self {
        Partition { rep: (0..n).collect() }
    }

    pub fn full(n: usize) -> Self {
        Partition { rep: vec![0; n] }
    }

    /// Canonicalizes an arbitrary labelling: points with equal labels share a class.
    pub fn from_labels<T: Eq + std::hash::Hash>(labels: &[T]) -> Self {
        let mut first = std::collections::HashMap::new();
        let rep = labels
            .iter()
            .enumerate()
            .map(|(i, l)| *first.entry(l).or_insert(i))
            .collect();
        Partition { rep }
    }

    pub fn from_classes(n: usize, classes: &[Vec<usize>]) -> Result<Self> {
        let mut label = vec![usize::MAX; n];
        for (c, class) in classes.iter().enumerate() {
            for &i in class {
                if i >= n || label[i] != usize::MAX {
                    return Err(Error::Malformed(format!("point {i} misplaced in classes")));
                }
                label[i] = c;
            }
        }
        if label.contains(&usize::MAX) {
            return Err(Error::Malformed("classes do not cover the ground set".into()));
        }
        Ok(Partition::from_labels(&label))
    }

    pub(crate) fn from_rep_unchecked(rep: Vec<usize>) -> Self {
        debug_assert!(rep.iter().enumerate().all(|(i, &r)| r <= i && rep[r] == r));
        Partition { rep }
    }

    pub fn size(&self) -> usize {
        self.rep.len()
    }

    pub fn rep(&self, i: usize) -> usize {
        self.rep[i]
    }

    pub fn reps(&self) -> &[usize] {
        &self.rep
    }

    pub fn same_class(&self, a: usize, b: usize) -> bool {
        self.rep[a] == self.rep[b]
    }

    pub fn class_count(&self) -> usize {
        self.rep.iter().enumerate().filter(|&(i, &r)| i == r).count()
    }

    pub fn is_discrete(&self) -> bool {
        self.rep.iter().enumerate().all(|(i, &r)| i == r)
    }

    pub fn is_full(&self) -> bool {
        self.rep.iter().all(|&r| r == 0)
    }

    /// Classes in order of their representatives.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let idx = self.class_indices();
        let mut out = vec![Vec::new(); self.class_count()];
        for (i, &c) in idx.iter().enumerate() {
            out[c].push(i);
        }
        out
    }

    /// `i ↦` position of its class among the classes ordered by representative.
    pub fn class_indices(&self) -> Vec<usize> {
        let mut pos = vec![usize::MAX; self.rep.len()];
        let mut next = 0;
        let mut out = Vec::with_capacity(self.rep.len());
        for (i, &r) in self.rep.iter().enumerate() {
            if r == i {
                pos[i] = next;
                next += 1;
            }
            out.push(pos[r]);
        }
        out
    }

    /// `true` when every class of `self` lies inside a class of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        self.rep.iter().enumerate().all(|(i, &r)| other.same_class(i, r))
    }
}

/// Orbits of the group generated by `gens`, by union-find over generator images.
pub fn orbits(gens: &[Perm], n: usize) -> Result<Partition> {
    check_degrees(gens, n)?;
    let mut uf = UnionFind::new(n);
    for g in gens {
        for i in 0..n {
            uf.union(i, g.apply(i));
        }
    }
    Ok(uf.into_partition())
}

/// Result of the primitivity test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Primitivity {
    pub transitive: bool,
    pub primitive: bool,
    /// A nontrivial block system when one was found.
    pub blocks: Option<Partition>,
}

/// Finest block system of the group generated by `gens` in which `a` and `b` share a block.
pub fn minimal_block_system(gens: &[Perm], n: usize, a: usize, b: usize) -> Partition {
    let mut uf = UnionFind::new(n);
    let mut work = Vec::new();
    if uf.union(a, b) {
        work.push((a, b));
    }
    while let Some((u, v)) = work.pop() {
        for g in gens {
            let (gu, gv) = (g.apply(u), g.apply(v));
            if uf.union(gu, gv) {
                work.push((gu, gv));
            }
        }
    }
    uf.into_partition()
}

/// Primitivity via minimal block systems for every pair `(0, β)`.
pub fn is_primitive(g: &GenGroup) -> Primitivity {
    let n = g.degree();
    let transitive = g.orbits().class_count() <= 1;
    if !transitive {
        return Primitivity { transitive, primitive: false, blocks: None };
    }
    for beta in 1..n {
        let p = minimal_block_system(g.generators(), n, 0, beta);
        if !p.is_full() {
            return Primitivity { transitive, primitive: false, blocks: Some(p) };
        }
    }
    Primitivity { transitive, primitive: true, blocks: None }
}

#[cfg(test)]
mod perm_tests {
    use super::*;
    use proptest::prelude::*;

    fn cyc(n: usize, c: &[&[usize]]) -> Perm {
        Perm::from_cycles(n, c).unwrap()
    }

    #[test]
    fn closure_examples() {
        let s3 = closure(&[cyc(3, &[&[0, 1]]), cyc(3, &[&[1, 2]])], 3).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(closure(&[], 3).unwrap().order(), 1);
        assert_eq!(closure(&[cyc(4, &[&[0, 1, 2, 3]])], 4).unwrap().order(), 4);
        assert!(s3.elements()[0].is_identity());
    }

    #[test]
    fn closure_rejects_mixed_degrees_and_cap() {
        let err = closure(&[Perm::identity(3), Perm::identity(4)], 3).unwrap_err();
        assert!(matches!(err, Error::DegreeMismatch { .. }));
        let s5 = [cyc(5, &[&[0, 1]]), cyc(5, &[&[0, 1, 2, 3, 4]])];
        assert!(matches!(closure_with_cap(&s5, 5, 50), Err(Error::SizeLimit { .. })));
        assert_eq!(closure_with_cap(&s5, 5, 120).unwrap().order(), 120);
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(orbits(&[cyc(3, &[&[0, 1, 2]])], 3).unwrap().class_count(), 1);
        assert!(orbits(&[], 3).unwrap().is_discrete());
        let p = orbits(&[cyc(3, &[&[0, 1]])], 3).unwrap();
        assert_eq!(p.classes(), vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn primitivity_examples() {
        let c5 = closure(&[cyc(5, &[&[0, 1, 2, 3, 4]])], 5).unwrap();
        assert!(is_primitive(&c5).primitive);
        let c4 = closure(&[cyc(4, &[&[0, 1, 2, 3]])], 4).unwrap();
        let r = is_primitive(&c4);
        assert!(!r.primitive);
        assert_eq!(r.blocks.unwrap().classes(), vec![vec![0, 2], vec![1, 3]]);
        let s3 = closure(&[cyc(3, &[&[0, 1]]), cyc(3, &[&[0, 1, 2]])], 3).unwrap();
        assert!(is_primitive(&s3).primitive);
        let split = closure(&[cyc(4, &[&[0, 1]])], 4).unwrap();
        let r = is_primitive(&split);
        assert!(!r.transitive && !r.primitive);
    }

    #[test]
    fn perm_basics() {
        let p = cyc(5, &[&[0, 1, 2], &[3, 4]]);
        assert_eq!(p.order(), 6);
        assert_eq!(p.to_string(), "(0 1 2)(3 4)");
        assert_eq!(p.compose(&p.inverse()), Perm::identity(5));
        assert_eq!(p.pow(6), Perm::identity(5));
        assert_eq!(p.pow(-1), p.inverse());
        assert_eq!(p.cycle_type(), vec![2, 3]);
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        // compose applies the right factor first
        let a = cyc(3, &[&[0, 1]]);
        let b = cyc(3, &[&[1, 2]]);
        assert_eq!(a.compose(&b).apply(1), a.apply(b.apply(1)));
    }

    fn set_partitions(n: usize) -> Vec<Vec<usize>> {
        // restricted growth strings
        let mut out = Vec::new();
        let mut cur = vec![0usize; n];
        fn rec(i: usize, maxv: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if i == cur.len() {
                out.push(cur.clone());
                return;
            }
            for v in 0..=maxv + 1 {
                cur[i] = v;
                rec(i + 1, maxv.max(v), cur, out);
            }
        }
        if n == 0 {
            return vec![vec![]];
        }
        rec(1, 0, &mut cur, &mut out);
        out
    }

    fn is_block_system(labels: &[usize], gens: &[Perm]) -> bool {
        gens.iter().all(|g| {
            (0..labels.len()).all(|a| {
                (0..labels.len()).all(|b| labels[a] != labels[b] || labels[g.apply(a)] == labels[g.apply(b)])
            })
        })
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Perm> {
        Just((0..n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|v| Perm::from_images(v).unwrap())
    }

    fn arb_gens() -> impl Strategy<Value = (usize, Vec<Perm>)> {
        (1usize..=7).prop_flat_map(|n| (Just(n), prop::collection::vec(arb_perm(n), 0..3)))
    }

    proptest! {
        #[test]
        fn closure_is_a_group((n, gens) in arb_gens()) {
            let g = closure(&gens, n).unwrap();
            let fact: usize = (1..=n).product();
            prop_assert_eq!(fact % g.order(), 0);
            for e in g.elements() {
                prop_assert!(g.contains(&e.inverse()));
            }
            for x in &gens {
                prop_assert!(g.contains(x));
                for e in g.elements() {
                    prop_assert!(g.contains(&x.compose(e)));
                }
            }
        }

        #[test]
        fn orbits_match_bfs((n, gens) in arb_gens()) {
            let p = orbits(&gens, n).unwrap();
            for s in 0..n {
                let mut seen = vec![false; n];
                let mut stack = vec![s];
                seen[s] = true;
                while let Some(u) = stack.pop() {
                    for g in &gens {
                        for v in [g.apply(u), g.inverse().apply(u)] {
                            if !seen[v] { seen[v] = true; stack.push(v); }
                        }
                    }
                }
                for t in 0..n {
                    prop_assert_eq!(seen[t], p.same_class(s, t));
                }
            }
        }

        #[test]
        fn primitivity_matches_partition_enumeration((n, gens) in arb_gens()) {
            let g = closure(&gens, n).unwrap();
            let r = is_primitive(&g);
            if r.transitive {
                let nontrivial = set_partitions(n).into_iter().any(|labels| {
                    let classes = labels.iter().max().map_or(0, |m| m + 1);
                    classes > 1 && classes < n && is_block_system(&labels, &gens)
                });
                prop_assert_eq!(r.primitive, !nontrivial);
                if let Some(b) = r.blocks {
                    let labels = b.reps().to_vec();
                    prop_assert!(is_block_system(&labels, &gens));
                }
            } else {
                prop_assert!(!r.primitive);
            }
        }

        #[test]
        fn partition_canonical(labels in prop::collection::vec(0u8..4, 0..12)) {
            let p = Partition::from_labels(&labels);
            for i in 0..labels.len() {
                prop_assert!(p.rep(i) <= i);
                prop_assert_eq!(p.rep(p.rep(i)), p.rep(i));
                prop_assert_eq!(labels[i], labels[p.rep(i)]);
            }
        }
    }
}
