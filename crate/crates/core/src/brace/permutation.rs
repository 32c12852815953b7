use std::collections::HashMap;

use super::SkewBrace;
use crate::config::element_cap;
use crate::error::{Error, Result};
use crate::group::TableGroup;
use crate::perm::Perm;
use crate::solution::FinSolution;

/// The permutation skew brace `𝒢(X, r)` on pairs `(σ_x⁻¹, λ_x)`.
#[derive(Clone, Debug)]
pub struct PermutationBrace {
    pub brace: SkewBrace,
    /// Element `i` as the pair `(s, l)`.
    pub pairs: Vec<(Perm, Perm)>,
    /// Index of `h_x = (σ_x⁻¹, λ_x)` for each point `x`.
    pub generators: Vec<usize>,
}

impl PermutationBrace {
    pub fn order(&self) -> usize {
        self.pairs.len()
    }
}

/// Pairs packed as `s ++ l` for hashing.
fn pack(s: &[usize], l: &[usize]) -> Vec<usize> {
    let mut v = Vec::with_capacity(s.len() * 2);
    v.extend_from_slice(s);
    v.extend_from_slice(l);
    v
}

/// `(s,l)∘(s',l') = (s · l s' l⁻¹, l l')`.
fn compose_pair(n: usize, a: &[usize], b: &[usize]) -> Vec<usize> {
    let (s, l) = a.split_at(n);
    let (s2, l2) = b.split_at(n);
    let mut l_inv = vec![0; n];
    for (i, &j) in l.iter().enumerate() {
        l_inv[j] = i;
    }
    let mut out = vec![0; 2 * n];
    for i in 0..n {
        out[i] = s[l[s2[l_inv[i]]]];
        out[n + i] = l[l2[i]];
    }
    out
}

/// Builds `𝒢(X, r)`: multiplication is the closure of the `h_x` under `∘`, addition is
/// determined by `g + h_x = g ∘ h_{l_g⁻¹(x)}` and folded along additive words.
pub fn permutation_brace(s: &FinSolution) -> Result<PermutationBrace> {
    let n = s.size();
    let cap = element_cap();
    let gens: Vec<Vec<usize>> = (0..n)
        .map(|x| pack(s.sigma_perm(x).inverse().images(), s.lambda_perm(x).images()))
        .collect();

    let identity = pack(Perm::identity(n).images(), Perm::identity(n).images());
    let mut elems = vec![identity.clone()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
    // rmul[i * n + x] = elems[i] ∘ h_x
    let mut rmul: Vec<usize> = Vec::new();
    let mut mparent: Vec<(usize, usize)> = vec![(0, 0)];
    let mut i = 0;
    while i < elems.len() {
        for (x, h) in gens.iter().enumerate() {
            let c = compose_pair(n, &elems[i], h);
            let j = match index.get(&c) {
                Some(&j) => j,
                None => {
                    if elems.len() >= cap {
                        return Err(Error::size_limit("permutation brace", cap));
                    }
                    let j = elems.len();
                    index.insert(c.clone(), j);
                    elems.push(c);
                    mparent.push((i, x));
                    j
                }
            };
            rmul.push(j);
        }
        i += 1;
    }
    drop(index);
    let m = elems.len();

    // addgen[g * n + x] = g + h_x
    let addgen: Vec<usize> = (0..m * n)
        .map(|k| {
            let (g, x) = (k / n, k % n);
            let l = &elems[g][n..];
            let y = l.iter().position(|&v| v == x).expect("permutation");
            rmul[g * n + y]
        })
        .collect();

    let mut order = vec![0usize];
    let mut aparent = vec![(usize::MAX, 0); m];
    aparent[0] = (0, 0);
    let mut seen = vec![false; m];
    seen[0] = true;
    let mut q = 0;
    while q < order.len() {
        let g = order[q];
        for x in 0..n {
            let h = addgen[g * n + x];
            if !seen[h] {
                seen[h] = true;
                aparent[h] = (g, x);
                order.push(h);
            }
        }
        q += 1;
    }
    if order.len() != m {
        return Err(Error::Internal("the h_x do not generate the additive group".into()));
    }

    // elements are discovered in BFS order, so parents precede children
    let mut add = vec![0usize; m * m];
    let mut mul = vec![0usize; m * m];
    for g in 0..m {
        add[g * m] = g;
        mul[g * m] = g;
        for &h in &order[1..] {
            let (p, x) = aparent[h];
            add[g * m + h] = addgen[add[g * m + p] * n + x];
        }
        for h in 1..m {
            let (p, x) = mparent[h];
            mul[g * m + h] = rmul[mul[g * m + p] * n + x];
        }
    }
    // folding along words is consistent iff (g + g') + h_x = g + (g' + h_x); this also
    // gives associativity by induction on word length
    for g in 0..m {
        for gp in 0..m {
            for x in 0..n {
                if addgen[add[g * m + gp] * n + x] != add[g * m + addgen[gp * n + x]] {
                    return Err(Error::Internal(format!("addition not well defined at ({g},{gp},{x})")));
                }
            }
        }
    }
    let add = TableGroup::from_flat(m, add, true)?;
    let mul = TableGroup::from_flat(m, mul, true)?;
    let brace = SkewBrace::from_groups(add, mul)?;
    let generators = (0..n).map(|x| rmul[x]).collect();
    let pairs = elems
        .into_iter()
        .map(|e| {
            let (a, b) = e.split_at(n);
            (Perm::from_images_unchecked(a.to_vec()), Perm::from_images_unchecked(b.to_vec()))
        })
        .collect();
    Ok(PermutationBrace { brace, pairs, generators })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::{restricted_solution, BraceLike};
    use crate::solution::solution_tests::conj_quandle3;

    #[test]
    fn quandle_and_flip() {
        let pb = permutation_brace(&conj_quandle3()).unwrap();
        // λ = id, σ_x = ρ-conjugation generates S3
        assert_eq!(pb.order(), 6);
        let pb = permutation_brace(&FinSolution::flip(3)).unwrap();
        assert_eq!(pb.order(), 1);
    }

    #[test]
    fn generators_embed_solution() {
        for s in [conj_quandle3(), FinSolution::flip(2), FinSolution::lyubashenko(&Perm::rotation(4, 1), &Perm::rotation(4, 1)).unwrap()] {
            let pb = permutation_brace(&s).unwrap();
            let b = &pb.brace;
            for x in 0..s.size() {
                for y in 0..s.size() {
                    let (u, v) = s.r(x, y);
                    let hx = pb.generators[x];
                    let hy = pb.generators[y];
                    assert_eq!(b.lambda(hx, hy), pb.generators[u]);
                    assert_eq!(b.mul(b.mul_inv(b.lambda(hx, hy)), b.mul(hx, hy)), pb.generators[v]);
                }
            }
            let mut img: Vec<usize> = pb.generators.clone();
            img.sort_unstable();
            img.dedup();
            assert!(restricted_solution(b, &img).is_ok());
        }
    }
}
