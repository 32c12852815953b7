//! Isomorphism test for braces built over `V` and a cyclic top, via the data `(A, A', u0, kx)`.

use super::{Coro1Build, Coro2Build};
use crate::brace::{BraceLike, SkewBrace};
use crate::error::{Error, Result};
use crate::group::{extend_homomorphism, FiniteGroup, TableGroup};
use crate::perm::Perm;

/// Abelian `V` above this order are not searched.
pub const ISO_CAP_ABELIAN: usize = 64;
/// Non-abelian `V` above this order are not searched.
pub const ISO_CAP_NONABELIAN: usize = 360;

/// A table-backed brace with its subgroup `V`, the element `x` and `k = |B/V|`.
#[derive(Clone, Debug)]
pub struct CoroView<'a> {
    pub brace: &'a SkewBrace,
    pub v: Vec<usize>,
    pub x0: usize,
    pub k: usize,
}

impl<'a> CoroView<'a> {
    pub fn from_coro1(b: &'a Coro1Build, k: usize) -> Self {
        CoroView { brace: &b.brace, v: b.v.clone(), x0: b.x[0], k }
    }

    pub fn from_coro2(b: &'a Coro2Build) -> Result<Self> {
        let brace = b
            .brace
            .as_table()
            .ok_or_else(|| Error::Undecided("isomorphism criterion needs a table-backed brace".into()))?;
        Ok(CoroView { brace, v: b.v.clone(), x0: b.x0, k: b.k })
    }
}

/// `V` as a standalone group, its automorphisms `A` (conjugation by `x`) and `A'`
/// (`λ_x` on `V`), `kx` and a `u0` with `u0 + x − u0 = λ(x)`.
struct Data {
    vt: TableGroup,
    a: Vec<usize>,
    a2: Vec<usize>,
    kx: usize,
    u0: usize,
}

fn data_for(view: &CoroView, x: usize) -> Result<Option<Data>> {
    let b = view.brace;
    let n = b.order();
    let vs = view.v.len();
    let mut pos = vec![usize::MAX; n];
    for (i, &e) in view.v.iter().enumerate() {
        pos[e] = i;
    }
    let mut kx = 0;
    for _ in 0..view.k {
        kx = b.add(kx, x);
    }
    let kx = pos[kx];
    let lx = b.lambda(x, x);
    let Some(u0) = view.v.iter().position(|&u| b.add(b.add(u, x), b.neg(u)) == lx) else {
        return Ok(None);
    };
    if kx == usize::MAX {
        return Ok(None);
    }
    let flat = (0..vs * vs).map(|t| pos[b.add(view.v[t / vs], view.v[t % vs])]).collect();
    let vt = TableGroup::from_flat(vs, flat, true)?;
    let a = view.v.iter().map(|&e| pos[b.add(b.add(x, e), b.neg(x))]).collect();
    let a2 = view.v.iter().map(|&e| pos[b.lambda(x, e)]).collect();
    Ok(Some(Data { vt, a, a2, kx, u0 }))
}

fn cycle_type(images: &[usize]) -> Vec<usize> {
    Perm::from_images(images.to_vec()).map(|p| p.cycle_type()).unwrap_or_default()
}

/// Elements `x̃` with `x̃ + Ṽ` of order `k` in `B̃/Ṽ`.
fn top_generators(view: &CoroView) -> Vec<usize> {
    let b = view.brace;
    let mut in_v = vec![false; b.order()];
    for &e in &view.v {
        in_v[e] = true;
    }
    (0..b.order())
        .filter(|&x| {
            let mut acc = x;
            for i in 1..=view.k {
                if in_v[acc] {
                    return i == view.k;
                }
                acc = b.add(acc, x);
            }
            false
        })
        .collect()
}

/// Whether the two braces are isomorphic, decided by searching isomorphisms `f: V → Ṽ` with
/// `f A = Ã f`, `f A' = Ã' f`, `f(kx) = kx̃` and `f(u0) + x̃ − f(u0) = λ̃(x̃)`, over all `x̃`
/// generating `B̃/Ṽ`.
pub fn iso_criterion(b1: &CoroView, b2: &CoroView) -> Result<bool> {
    let (vs, vs2) = (b1.v.len(), b2.v.len());
    if b1.brace.order() != b2.brace.order() || vs != vs2 || b1.k != b2.k {
        return Ok(false);
    }
    let d1 = data_for(b1, b1.x0)?.ok_or_else(|| Error::Internal("λ(x) is not conjugate to x by V".into()))?;
    let cap = if d1.vt.is_abelian() { ISO_CAP_ABELIAN } else { ISO_CAP_NONABELIAN };
    if vs > cap {
        return Err(Error::Undecided(format!("|V| = {vs} exceeds the isomorphism cap {cap}")));
    }
    let bt = b2.brace;
    let (ta, ta2) = (cycle_type(&d1.a), cycle_type(&d1.a2));
    let kx_order = d1.vt.element_order(d1.kx);
    for xt in top_generators(b2) {
        let Some(d2) = data_for(b2, xt)? else {
            continue;
        };
        if d2.vt.element_order(d2.kx) != kx_order || cycle_type(&d2.a) != ta || cycle_type(&d2.a2) != ta2 {
            continue;
        }
        let target = bt.lambda(xt, xt);
        let ok_u0 = |f: &[usize]| {
            let fu = b2.v[f[d1.u0]];
            bt.add(bt.add(fu, xt), bt.neg(fu)) == target
        };
        if search(&d1, &d2, &ok_u0) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Backtracking over images of module generators; everything else is forced by the
/// commuting conditions and the homomorphism property.
fn search(d1: &Data, d2: &Data, ok_u0: &dyn Fn(&[usize]) -> bool) -> bool {
    let n = d1.vt.order();
    let orders2: Vec<usize> = (0..n).map(|e| d2.vt.element_order(e)).collect();

    fn orbit_images(d1: &Data, d2: &Data, gens: &[usize], imgs: &[usize]) -> Option<(Vec<usize>, Vec<usize>)> {
        let n = d1.vt.order();
        let mut dom = Vec::new();
        let mut img = Vec::new();
        let mut seen = vec![usize::MAX; n];
        for (&g, &h) in gens.iter().zip(imgs) {
            let mut queue = vec![(g, h)];
            while let Some((e, f)) = queue.pop() {
                if seen[e] != usize::MAX {
                    if seen[e] != f {
                        return None;
                    }
                    continue;
                }
                seen[e] = f;
                dom.push(e);
                img.push(f);
                queue.push((d1.a[e], d2.a[f]));
                queue.push((d1.a2[e], d2.a2[f]));
            }
        }
        Some((dom, img))
    }

    fn rec(
        d1: &Data,
        d2: &Data,
        orders2: &[usize],
        gens: &mut Vec<usize>,
        imgs: &mut Vec<usize>,
        ok_u0: &dyn Fn(&[usize]) -> bool,
    ) -> bool {
        let n = d1.vt.order();
        let Some((dom, img)) = orbit_images(d1, d2, gens, imgs) else {
            return false;
        };
        let Some(map) = extend_homomorphism(&d1.vt, &d2.vt, &dom, &img) else {
            return false;
        };
        let Some(next) = (0..n).find(|&e| map[e] == usize::MAX) else {
            let commutes = (0..n).all(|e| map[d1.a[e]] == d2.a[map[e]] && map[d1.a2[e]] == d2.a2[map[e]]);
            return commutes && map[d1.kx] == d2.kx && ok_u0(&map);
        };
        let o = d1.vt.element_order(next);
        for t in 0..n {
            if orders2[t] != o || map.contains(&t) {
                continue;
            }
            gens.push(next);
            imgs.push(t);
            if rec(d1, d2, orders2, gens, imgs, ok_u0) {
                return true;
            }
            gens.pop();
            imgs.pop();
        }
        false
    }

    rec(d1, d2, &orders2, &mut Vec::new(), &mut Vec::new(), ok_u0)
}
