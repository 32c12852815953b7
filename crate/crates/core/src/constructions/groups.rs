//! Concrete permutation groups used by the builders.

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, TableGroup};
use crate::perm::{closure, GenGroup, Perm};

/// A permutation group together with its table; element `i` of the table is
/// `perms.elements()[i]`.
#[derive(Clone, Debug)]
pub struct PermTable {
    pub perms: GenGroup,
    pub table: TableGroup,
}

impl PermTable {
    pub fn new(gens: &[Perm], degree: usize) -> Result<Self> {
        let perms = closure(gens, degree)?;
        let table = TableGroup::from_perm_group(&perms)?;
        Ok(PermTable { perms, table })
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.perms.elements()[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.perms.index_of(p)
    }

    pub fn degree(&self) -> usize {
        self.perms.degree()
    }

    /// `s ↦ g s g⁻¹` as a permutation of the carrier, when `g` normalizes the group.
    pub fn conjugation_by(&self, g: &Perm) -> Result<Perm> {
        if g.degree() != self.degree() {
            return Err(Error::DegreeMismatch { expected: self.degree(), found: g.degree() });
        }
        let gi = g.inverse();
        let img = self
            .perms
            .elements()
            .iter()
            .map(|s| {
                self.index_of(&g.compose(s).compose(&gi))
                    .ok_or_else(|| Error::InvalidParameter(format!("{g} does not normalize the group")))
            })
            .collect::<Result<Vec<_>>>()?;
        Perm::from_images(img)
    }
}

pub fn symmetric(n: usize) -> Result<PermTable> {
    if n < 2 {
        return PermTable::new(&[], n.max(1));
    }
    PermTable::new(&[Perm::transposition(n, 0, 1), Perm::rotation(n, 1)], n)
}

pub fn alternating(n: usize) -> Result<PermTable> {
    if n < 3 {
        return PermTable::new(&[], n.max(1));
    }
    let three = Perm::from_cycles(n, &[&[0, 1, 2]])?;
    let long: Vec<usize> = if n % 2 == 1 { (0..n).collect() } else { (1..n).collect() };
    let long = Perm::from_cycles(n, &[&long])?;
    PermTable::new(&[three, long], n)
}

/// `GL(3,2) ≅ PSL(2,7)` acting on the seven nonzero vectors of `F_2^3` (vector `v` is point `v−1`).
pub fn psl27() -> Result<PermTable> {
    let act = |m: [[u8; 3]; 3]| -> Perm {
        let img = (1..8u8)
            .map(|v| {
                let bits = [v & 1, (v >> 1) & 1, (v >> 2) & 1];
                let w: u8 = (0..3).map(|i| ((0..3).map(|j| m[i][j] * bits[j]).sum::<u8>() % 2) << i).sum();
                (w - 1) as usize
            })
            .collect();
        Perm::from_images(img).expect("invertible matrix")
    };
    // companion matrix of x^3 + x + 1 and an elementary transvection
    let c = act([[0, 0, 1], [1, 0, 1], [0, 1, 0]]);
    let t = act([[1, 1, 0], [0, 1, 0], [0, 0, 1]]);
    PermTable::new(&[c, t], 7)
}

/// A registry simple group by name: `a5`, `a6`, `psl27`.
pub fn simple_group(name: &str) -> Result<PermTable> {
    match name {
        "a5" => alternating(5),
        "a6" => alternating(6),
        "psl27" => psl27(),
        other => Err(Error::InvalidParameter(format!("unknown simple group '{other}' (expected a5, a6 or psl27)"))),
    }
}

/// Normal closure of `gens` in `g`.
pub fn normal_closure<G: FiniteGroup + ?Sized>(g: &G, gens: &[usize], conj_by: &[usize]) -> Vec<usize> {
    let n = g.order();
    let mut member = vec![false; n];
    member[0] = true;
    let mut elems = vec![0];
    let mut sub_gens: Vec<usize> = Vec::new();
    let mut work: Vec<usize> = gens.to_vec();
    while let Some(c) = work.pop() {
        if member[c] {
            continue;
        }
        sub_gens.push(c);
        work.extend(conj_by.iter().map(|&t| g.conj(t, c)));
        let old = elems.len();
        for i in 0..old {
            let s = g.op(elems[i], c);
            if !member[s] {
                member[s] = true;
                elems.push(s);
            }
        }
        let mut i = old;
        while i < elems.len() {
            for k in 0..sub_gens.len() {
                let s = g.op(elems[i], sub_gens[k]);
                if !member[s] {
                    member[s] = true;
                    elems.push(s);
                }
            }
            i += 1;
        }
    }
    elems.sort_unstable();
    elems
}

/// Whether `g` is non-abelian and has no proper nontrivial normal subgroup.
pub fn is_nonabelian_simple(g: &TableGroup) -> bool {
    let n = g.order();
    if n < 2 || g.is_abelian() {
        return false;
    }
    let gens = g.generators();
    let mut seen = vec![false; n];
    for a in 1..n {
        if seen[a] {
            continue;
        }
        for c in g.conjugacy_class(a) {
            seen[c] = true;
        }
        if normal_closure(g, &[a], &gens).len() != n {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_simplicity() {
        assert_eq!(symmetric(5).unwrap().table.order(), 120);
        let a5 = alternating(5).unwrap();
        assert_eq!(a5.table.order(), 60);
        assert!(is_nonabelian_simple(&a5.table));
        assert_eq!(alternating(6).unwrap().table.order(), 360);
        let psl = psl27().unwrap();
        assert_eq!(psl.table.order(), 168);
        assert!(is_nonabelian_simple(&psl.table));
        assert!(!is_nonabelian_simple(&symmetric(4).unwrap().table));
        assert!(!is_nonabelian_simple(&alternating(4).unwrap().table));
    }

    #[test]
    fn conjugation_is_automorphism() {
        let a5 = alternating(5).unwrap();
        let c = a5.conjugation_by(&Perm::transposition(5, 0, 1)).unwrap();
        a5.table.check_automorphism(&c).unwrap();
        assert_eq!(c.order(), 2);
        let s4 = symmetric(4).unwrap();
        assert!(alternating(4).unwrap().conjugation_by(&Perm::transposition(4, 0, 1)).is_ok());
        assert!(s4.conjugation_by(&Perm::identity(5)).is_err());
    }
}
