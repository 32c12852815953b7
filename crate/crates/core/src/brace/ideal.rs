use rayon::prelude::*;

use super::{BraceLike, Ideal};
use crate::error::{Error, Result};
use crate::perm::UnionFind;

/// An additive subgroup grown one generator at a time.
struct SubgroupBuilder {
    member: Vec<bool>,
    elems: Vec<usize>,
    gens: Vec<usize>,
}

impl SubgroupBuilder {
    fn new(n: usize) -> Self {
        let mut member = vec![false; n];
        member[0] = true;
        SubgroupBuilder { member, elems: vec![0], gens: Vec::new() }
    }

    /// Adds `g` and closes under right addition; returns the new elements.
    fn add_generator<B: BraceLike + ?Sized>(&mut self, b: &B, g: usize) -> std::ops::Range<usize> {
        let old = self.elems.len();
        if self.member[g] {
            return old..old;
        }
        self.gens.push(g);
        for i in 0..old {
            let s = b.add(self.elems[i], g);
            if !self.member[s] {
                self.member[s] = true;
                self.elems.push(s);
            }
        }
        let mut i = old;
        while i < self.elems.len() {
            let e = self.elems[i];
            for k in 0..self.gens.len() {
                let s = b.add(e, self.gens[k]);
                if !self.member[s] {
                    self.member[s] = true;
                    self.elems.push(s);
                }
            }
            i += 1;
        }
        old..self.elems.len()
    }

    fn into_sorted(mut self) -> Vec<usize> {
        self.elems.sort_unstable();
        self.elems
    }
}

/// The additive subgroup generated by `gens`, sorted.
pub fn additive_closure<B: BraceLike + ?Sized>(b: &B, gens: &[usize]) -> Vec<usize> {
    let mut sb = SubgroupBuilder::new(b.order());
    for &g in gens {
        sb.add_generator(b, g);
    }
    sb.into_sorted()
}

/// Checks normality in `(B,+)`, `λ`-invariance and `I * B ⊆ I`.
///
/// Each condition is tested against generators only: conjugation and `λ` are group actions,
/// and for fixed `i ∈ I` the elements `b` with `i * b ∈ I` form the fixed subgroup of the
/// automorphism induced by `λ_i` on `B/I`.
pub fn is_ideal<B: BraceLike + ?Sized>(b: &B, elements: &[usize]) -> Result<()> {
    let n = b.order();
    let mut mem = vec![false; n];
    for &e in elements {
        if e >= n {
            return Err(Error::NotIdeal(format!("element {e} outside the carrier")));
        }
        mem[e] = true;
    }
    if !mem[0] {
        return Err(Error::NotIdeal("missing 0".into()));
    }
    for &a in elements {
        for &c in elements {
            if !mem[b.add(a, c)] {
                return Err(Error::NotIdeal(format!("{a} + {c} leaves the subset")));
            }
        }
    }
    let add_gens = b.add_generators();
    for &t in &add_gens {
        for &a in elements {
            if !mem[b.sigma(t, a)] {
                return Err(Error::NotIdeal(format!("not normal: conjugate of {a} by {t}")));
            }
            if !mem[b.star(a, t)] {
                return Err(Error::NotIdeal(format!("{a} * {t} leaves the subset")));
            }
        }
    }
    for g in b.mul_generators() {
        if let Some(&a) = elements.iter().find(|&&a| !mem[b.lambda(g, a)]) {
            return Err(Error::NotIdeal(format!("λ_{g}({a}) leaves the subset")));
        }
    }
    Ok(())
}

/// The smallest ideal containing `seed`.
///
/// Conjugation and `λ` images are pushed for generators of the ideal only; star products are
/// taken for every element against additive generators of `B`.
pub fn ideal_closure<B: BraceLike + ?Sized>(b: &B, seed: &[usize]) -> Ideal {
    let add_gens = b.add_generators();
    let mul_gens = b.mul_generators();
    let mut sb = SubgroupBuilder::new(b.order());
    let mut work: Vec<usize> = seed.to_vec();
    while let Some(c) = work.pop() {
        if sb.member[c] {
            continue;
        }
        let new = sb.add_generator(b, c);
        work.extend(add_gens.iter().map(|&t| b.sigma(t, c)));
        work.extend(mul_gens.iter().map(|&m| b.lambda(m, c)));
        for i in new {
            let e = sb.elems[i];
            work.extend(add_gens.iter().map(|&t| b.star(e, t)).filter(|&s| !sb.member[s]));
        }
    }
    Ideal::from_sorted_unchecked(sb.into_sorted())
}

/// The unique minimal nonzero ideal, if there is one.
///
/// Ideals are unions of orbits of the group generated by `λ` and additive conjugation, so one
/// seed per nonzero orbit suffices.
pub fn smallest_nonzero_ideal<B: BraceLike + ?Sized>(b: &B) -> Option<Ideal> {
    let n = b.order();
    if n < 2 {
        return None;
    }
    let mut uf = UnionFind::new(n);
    let add_gens = b.add_generators();
    let mul_gens = b.mul_generators();
    for a in 1..n {
        for &t in &add_gens {
            uf.union(a, b.sigma(t, a));
        }
        for &m in &mul_gens {
            uf.union(a, b.lambda(m, a));
        }
    }
    let part = uf.into_partition();
    let seeds: Vec<usize> = (1..n).filter(|&a| part.rep(a) == a).collect();
    let closures: Vec<Ideal> = seeds.par_iter().map(|&s| ideal_closure(b, &[s])).collect();
    let smallest = closures.iter().min_by_key(|i| i.len())?;
    closures.iter().all(|i| smallest.is_subset_of(i)).then(|| smallest.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::brace_tests::sym_group;
    use crate::brace::SkewBrace;
    use crate::group::TableGroup;
    use proptest::prelude::*;

    /// Exhaustive oracle: every subset closed under the ideal conditions, checked naively.
    fn naive_is_ideal(b: &SkewBrace, s: &[usize]) -> bool {
        let n = b.order();
        let mem = |x: usize| s.contains(&x);
        mem(0)
            && s.iter().all(|&a| s.iter().all(|&c| mem(b.sub(a, c))))
            && s.iter().all(|&a| (0..n).all(|c| mem(b.sigma(c, a)) && mem(b.lambda(c, a)) && mem(b.star(a, c))))
    }

    fn naive_ideals(b: &SkewBrace) -> Vec<Vec<usize>> {
        let n = b.order();
        (0u32..1 << n)
            .filter(|m| m & 1 == 1)
            .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect::<Vec<_>>())
            .filter(|s| naive_is_ideal(b, s))
            .collect()
    }

    fn small_braces() -> Vec<SkewBrace> {
        let s3 = sym_group(3);
        vec![
            SkewBrace::trivial(&s3),
            SkewBrace::almost_trivial(&s3),
            SkewBrace::trivial(&TableGroup::cyclic(6)),
            SkewBrace::trivial(&TableGroup::abelian(&[2, 2])),
            SkewBrace::trivial(&TableGroup::cyclic(5)),
        ]
    }

    #[test]
    fn closure_matches_naive_ideals() {
        for b in small_braces() {
            let ideals = naive_ideals(&b);
            for s in &ideals {
                assert!(is_ideal(&b, s).is_ok());
            }
            for a in 0..b.order() {
                let c = ideal_closure(&b, &[a]);
                let expect = ideals.iter().filter(|i| i.contains(&a)).min_by_key(|i| i.len()).unwrap();
                assert_eq!(c.elements(), expect.as_slice());
            }
            let minimal: Vec<&Vec<usize>> = ideals.iter().filter(|i| i.len() > 1).collect();
            let naive_smallest = minimal
                .iter()
                .find(|i| minimal.iter().all(|j| i.iter().all(|x| j.contains(x))))
                .map(|i| i.to_vec());
            assert_eq!(smallest_nonzero_ideal(&b).map(|i| i.elements().to_vec()), naive_smallest);
        }
    }

    #[test]
    fn smallest_ideal_examples() {
        // simple brace: Z_p trivial has only 0 and Z_p
        let zp = SkewBrace::trivial(&TableGroup::cyclic(7));
        assert_eq!(smallest_nonzero_ideal(&zp).unwrap().len(), 7);
        // V4 trivial: three order-2 ideals, none minimal-unique
        assert!(smallest_nonzero_ideal(&SkewBrace::trivial(&TableGroup::abelian(&[2, 2]))).is_none());
        // S3 trivial: A3 is the unique minimal normal subgroup
        assert_eq!(smallest_nonzero_ideal(&SkewBrace::trivial(&sym_group(3))).unwrap().len(), 3);
    }

    proptest! {
        #[test]
        fn closure_is_ideal_and_contains_seed(which in 0usize..5, seed in proptest::collection::vec(0usize..6, 0..3)) {
            let b = &small_braces()[which];
            let seed: Vec<usize> = seed.into_iter().filter(|&a| a < b.order()).collect();
            let c = ideal_closure(b, &seed);
            prop_assert!(naive_is_ideal(b, c.elements()));
            prop_assert!(seed.iter().all(|&a| c.contains(a)));
        }
    }
}
