use super::{BraceLike, SkewBrace};
use crate::error::{Error, Result};
use crate::group::{search_isomorphisms, FiniteGroup, ISOMORPHISM_CAP};
use crate::perm::Perm;

/// A brace isomorphism `b → c` as a carrier permutation, `Ok(None)` if none exists.
///
/// Candidates are additive isomorphisms preserving multiplicative orders; `∘` is then checked
/// against multiplicative generators, which suffices since both sides are homomorphisms.
pub fn brace_isomorphic(b: &SkewBrace, c: &SkewBrace) -> Result<Option<Perm>> {
    let n = b.order();
    if n > ISOMORPHISM_CAP || c.order() > ISOMORPHISM_CAP {
        return Err(Error::Undecided(format!("brace isomorphism above order {ISOMORPHISM_CAP}")));
    }
    if n != c.order() {
        return Ok(None);
    }
    let ob: Vec<usize> = (0..n).map(|a| b.mul_group().element_order(a)).collect();
    let oc: Vec<usize> = (0..n).map(|a| c.mul_group().element_order(a)).collect();
    let mut pb: Vec<(usize, usize)> = (0..n).map(|a| (b.add_order(a), ob[a])).collect();
    let mut pc: Vec<(usize, usize)> = (0..n).map(|a| (c.add_order(a), oc[a])).collect();
    pb.sort_unstable();
    pc.sort_unstable();
    if pb != pc {
        return Ok(None);
    }
    let mul_gens = b.mul_generators();
    let found = search_isomorphisms(b.add_group(), c.add_group(), &|x, y| ob[x] == oc[y], &mut |f: &[usize]| {
        (0..n).all(|a| mul_gens.iter().all(|&g| f[b.mul(a, g)] == c.mul(f[a], f[g])))
    });
    Ok(found.map(Perm::from_images_unchecked))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::brace_tests::sym_group;
    use crate::group::TableGroup;

    #[test]
    fn examples() {
        let s3 = sym_group(3);
        let t = SkewBrace::trivial(&s3);
        let at = SkewBrace::almost_trivial(&s3);
        assert!(brace_isomorphic(&t, &t).unwrap().is_some());
        assert!(brace_isomorphic(&t, &at).unwrap().is_none());
        let c6 = SkewBrace::trivial(&TableGroup::cyclic(6));
        assert!(brace_isomorphic(&t, &c6).unwrap().is_none());
        let relabelled = t.relabel(&[0, 2, 1, 4, 5, 3]).unwrap();
        let f = brace_isomorphic(&t, &relabelled).unwrap().unwrap();
        for a in 0..6 {
            for c in 0..6 {
                assert_eq!(f.apply(t.mul(a, c)), relabelled.mul(f.apply(a), f.apply(c)));
                assert_eq!(f.apply(t.add(a, c)), relabelled.add(f.apply(a), f.apply(c)));
            }
        }
    }
}
