//! Square matrices and vectors over a prime field `F_p`.

use std::fmt;

use crate::error::{Error, Result};

/// Vectors are indexed by `Σ v_i p^i`.
pub fn vec_index(p: usize, v: &[usize]) -> usize {
    v.iter().rev().fold(0, |acc, &c| acc * p + c)
}

pub fn vec_from_index(p: usize, n: usize, mut idx: usize) -> Vec<usize> {
    (0..n)
        .map(|_| {
            let c = idx % p;
            idx /= p;
            c
        })
        .collect()
}

pub fn vec_add(p: usize, a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().zip(b).map(|(x, y)| (x + y) % p).collect()
}

pub fn vec_neg(p: usize, a: &[usize]) -> Vec<usize> {
    a.iter().map(|x| (p - x) % p).collect()
}

pub fn vec_sub(p: usize, a: &[usize], b: &[usize]) -> Vec<usize> {
    vec_add(p, a, &vec_neg(p, b))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    p: usize,
    n: usize,
    a: Vec<usize>,
}

impl Mat {
    pub fn identity(p: usize, n: usize) -> Self {
        Self::scalar(p, n, 1)
    }

    pub fn scalar(p: usize, n: usize, c: i64) -> Self {
        let c = c.rem_euclid(p as i64) as usize;
        let mut a = vec![0; n * n];
        for i in 0..n {
            a[i * n + i] = c;
        }
        Mat { p, n, a }
    }

    /// Entries are reduced modulo `p`; negative entries are allowed.
    pub fn from_rows(p: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParameter("matrix must be square and non-empty".into()));
        }
        if p < 2 {
            return Err(Error::InvalidParameter(format!("modulus {p} < 2")));
        }
        let a = rows.iter().flatten().map(|&e| e.rem_euclid(p as i64) as usize).collect();
        Ok(Mat { p, n, a })
    }

    /// The matrix whose columns are the images of the standard basis under `f`.
    pub fn from_fn(p: usize, n: usize, f: impl Fn(&[usize]) -> Vec<usize>) -> Self {
        let mut a = vec![0; n * n];
        for j in 0..n {
            let mut e = vec![0; n];
            e[j] = 1;
            let col = f(&e);
            for i in 0..n {
                a[i * n + j] = col[i] % p;
            }
        }
        Mat { p, n, a }
    }

    /// Companion matrix of `x^n + c_{n-1}x^{n-1} + … + c_0`, given `c_0, …, c_{n-1}`.
    pub fn companion(p: usize, coeffs: &[usize]) -> Self {
        let n = coeffs.len();
        let mut a = vec![0; n * n];
        for i in 1..n {
            a[i * n + i - 1] = 1;
        }
        for i in 0..n {
            a[i * n + n - 1] = (p - coeffs[i] % p) % p;
        }
        Mat { p, n, a }
    }

    /// The `idx`-th matrix in lexicographic order of row-major entries.
    pub fn from_index(p: usize, n: usize, mut idx: usize) -> Self {
        let mut a = vec![0; n * n];
        for e in a.iter_mut().rev() {
            *e = idx % p;
            idx /= p;
        }
        Mat { p, n, a }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.a[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.a.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        let (n, p) = (self.n, self.p);
        let mut a = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                a[i * n + j] = (0..n).map(|l| self.a[i * n + l] * o.a[l * n + j]).sum::<usize>() % p;
            }
        }
        Mat { p, n, a }
    }

    pub fn add(&self, o: &Mat) -> Mat {
        let a = self.a.iter().zip(&o.a).map(|(x, y)| (x + y) % self.p).collect();
        Mat { p: self.p, n: self.n, a }
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        let a = self.a.iter().zip(&o.a).map(|(x, y)| (x + self.p - y) % self.p).collect();
        Mat { p: self.p, n: self.n, a }
    }

    pub fn apply(&self, v: &[usize]) -> Vec<usize> {
        let n = self.n;
        (0..n).map(|i| (0..n).map(|j| self.a[i * n + j] * v[j]).sum::<usize>() % self.p).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat::identity(self.p, self.n)
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|&e| e == 0)
    }

    pub fn pow(&self, mut e: u64) -> Mat {
        let mut base = self.clone();
        let mut acc = Mat::identity(self.p, self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Gauss–Jordan inverse; `None` if singular.
    pub fn inverse(&self) -> Option<Mat> {
        let (n, p) = (self.n, self.p);
        let mut m: Vec<Vec<usize>> = self.rows();
        let mut inv: Vec<Vec<usize>> = Mat::identity(p, n).rows();
        for col in 0..n {
            let piv = (col..n).find(|&r| m[r][col] != 0)?;
            m.swap(col, piv);
            inv.swap(col, piv);
            let f = crate::solution::mod_inverse(m[col][col] as u64, p as u64)? as usize;
            for j in 0..n {
                m[col][j] = m[col][j] * f % p;
                inv[col][j] = inv[col][j] * f % p;
            }
            for r in 0..n {
                if r != col && m[r][col] != 0 {
                    let c = m[r][col];
                    for j in 0..n {
                        m[r][j] = (m[r][j] + p * p - c * m[col][j]) % p;
                        inv[r][j] = (inv[r][j] + p * p - c * inv[col][j]) % p;
                    }
                }
            }
        }
        Some(Mat { p, n, a: inv.concat() })
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse().is_some()
    }

    /// Multiplicative order, searched up to `cap`.
    pub fn order(&self, cap: usize) -> Option<usize> {
        let mut m = self.clone();
        for k in 1..=cap {
            if m.is_identity() {
                return Some(k);
            }
            m = m.mul(self);
        }
        None
    }

    /// The permutation of `F_p^n` (in vector-index order) induced by the matrix.
    pub fn images(&self) -> Vec<usize> {
        let size = self.p.pow(self.n as u32);
        (0..size).map(|i| vec_index(self.p, &self.apply(&vec_from_index(self.p, self.n, i)))).collect()
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} mod {}", self.rows(), self.p)
    }
}

/// Row-reduced basis of a subspace.
#[derive(Clone, Debug, Default)]
pub struct Subspace {
    p: usize,
    basis: Vec<Vec<usize>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(p: usize) -> Self {
        Subspace { p, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<usize>] {
        &self.basis
    }

    fn reduce(&self, v: &[usize]) -> Vec<usize> {
        let p = self.p;
        let mut v = v.to_vec();
        for (b, &c) in self.basis.iter().zip(&self.pivots) {
            let f = v[c];
            if f != 0 {
                for (x, y) in v.iter_mut().zip(b) {
                    *x = (*x + p * p - f * y) % p;
                }
            }
        }
        v
    }

    /// Inserts `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[usize]) -> bool {
        let p = self.p;
        let mut r = self.reduce(v);
        let Some(c) = r.iter().position(|&e| e != 0) else {
            return false;
        };
        let f = crate::solution::mod_inverse(r[c] as u64, p as u64).expect("prime modulus") as usize;
        for x in r.iter_mut() {
            *x = *x * f % p;
        }
        for b in self.basis.iter_mut() {
            let g = b[c];
            if g != 0 {
                for (x, y) in b.iter_mut().zip(&r) {
                    *x = (*x + p * p - g * y) % p;
                }
            }
        }
        self.basis.push(r);
        self.pivots.push(c);
        true
    }

    pub fn contains(&self, v: &[usize]) -> bool {
        self.reduce(v).iter().all(|&e| e == 0)
    }
}

/// The smallest subspace containing `v` and invariant under every matrix in `gens`.
pub fn invariant_span(v: &[usize], gens: &[&Mat]) -> Subspace {
    let p = gens.first().map_or(2, |m| m.p());
    let mut s = Subspace::new(p);
    let mut queue = vec![v.to_vec()];
    while let Some(w) = queue.pop() {
        if s.insert(&w) {
            queue.extend(gens.iter().map(|g| g.apply(&w)));
        }
    }
    s
}

/// A proper nonzero subspace invariant under `gens`, if one exists.
pub fn invariant_subspace(p: usize, n: usize, gens: &[&Mat]) -> Option<Subspace> {
    let size = p.pow(n as u32);
    (1..size).map(|i| invariant_span(&vec_from_index(p, n, i), gens)).find(|s| s.dim() < n)
}

/// The `F_p`-span of the monomials `A^i A'^j`: the subring generated by two commuting matrices.
pub fn generated_subring(a: &Mat, a2: &Mat, oa: usize, oa2: usize) -> Vec<Mat> {
    let (p, n) = (a.p(), a.dim());
    let mut span = Subspace::new(p);
    let mut basis = Vec::new();
    let mut ai = Mat::identity(p, n);
    for _ in 0..oa {
        let mut m = ai.clone();
        for _ in 0..oa2 {
            if span.insert(&m.a) {
                basis.push(m.clone());
            }
            m = m.mul(a2);
        }
        ai = ai.mul(a);
    }
    let d = basis.len();
    (0..p.pow(d as u32))
        .map(|idx| {
            let c = vec_from_index(p, d, idx);
            basis.iter().zip(&c).fold(Mat::scalar(p, n, 0), |acc, (b, &ci)| acc.add(&b.mul(&Mat::scalar(p, n, ci as i64))))
        })
        .collect()
}

/// A companion matrix of a primitive polynomial of degree `n` over `F_p`: first match in
/// lexicographic order of the coefficients.
pub fn primitive_companion(p: usize, n: usize) -> Result<Mat> {
    let target = p.pow(n as u32) - 1;
    for idx in 0..p.pow(n as u32) {
        let coeffs = vec_from_index(p, n, idx);
        if coeffs[0] == 0 {
            continue;
        }
        let c = Mat::companion(p, &coeffs);
        if c.order(target) == Some(target) {
            return Ok(c);
        }
    }
    Err(Error::Internal(format!("no primitive polynomial of degree {n} over F_{p}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn index_roundtrip_and_inverse() {
        for i in 0..27 {
            assert_eq!(vec_index(3, &vec_from_index(3, 3, i)), i);
        }
        let m = Mat::from_rows(5, &[vec![0, 1], vec![-1, 0]]).unwrap();
        assert_eq!(m.order(24), Some(4));
        assert!(m.mul(&m.inverse().unwrap()).is_identity());
        assert!(Mat::from_rows(3, &[vec![1, 2], vec![2, 1]]).unwrap().inverse().is_none());
    }

    #[test]
    fn rotation_invariant_subspaces() {
        // (s1,s2) ↦ (s2,−s1) has an invariant line iff −1 is a square
        for (p, expect) in [(3, false), (5, true), (7, false), (13, true)] {
            let m = Mat::from_fn(p, 2, |s| vec![s[1], (p - s[0]) % p]);
            assert_eq!(invariant_subspace(p, 2, &[&m]).is_some(), expect, "p={p}");
        }
        let m = Mat::from_fn(3, 3, |s| vec![s[2], (3 - s[0]) % 3, s[1]]);
        // (1,1,2) is an eigenvector: A(1,1,2) = (2,2,1) = 2·(1,1,2)
        let sub = invariant_span(&[1, 1, 2], &[&m]);
        assert_eq!(sub.dim(), 1);
    }

    #[test]
    fn primitive_companions() {
        for (p, n) in [(2, 2), (2, 3), (3, 2), (5, 1), (2, 4)] {
            let c = primitive_companion(p, n).unwrap();
            let k = p.pow(n as u32) - 1;
            assert_eq!(c.order(k), Some(k));
            assert_eq!(generated_subring(&c, &c, k, k).len(), p.pow(n as u32));
        }
    }

    proptest! {
        #[test]
        fn subspace_matches_naive_span(vs in proptest::collection::vec(proptest::collection::vec(0usize..3, 3), 0..4)) {
            let mut s = Subspace::new(3);
            for v in &vs {
                s.insert(v);
            }
            // naive span by enumerating combinations
            let mut span = std::collections::BTreeSet::new();
            for idx in 0..3usize.pow(vs.len() as u32) {
                let c = vec_from_index(3, vs.len(), idx);
                let mut acc = vec![0; 3];
                for (v, &ci) in vs.iter().zip(&c) {
                    acc = vec_add(3, &acc, &v.iter().map(|x| x * ci % 3).collect::<Vec<_>>());
                }
                span.insert(acc);
            }
            prop_assert_eq!(span.len(), 3usize.pow(s.dim() as u32));
            for w in &span {
                prop_assert!(s.contains(w));
            }
        }

        #[test]
        fn inverse_is_two_sided(idx in 0usize..81) {
            let m = Mat::from_index(3, 2, idx);
            if let Some(inv) = m.inverse() {
                prop_assert!(m.mul(&inv).is_identity() && inv.mul(&m).is_identity());
            }
        }
    }
}
