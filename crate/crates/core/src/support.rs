//! Convex vertex sets and the horospherical support theorem.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::horo::{h_v, radon_v};
use crate::boundary::partition;
use crate::inversion::exact_rank;
use crate::scalar::FiniteFn;
use crate::tree::{ball, geodesic, neighbors, TreeParams, Vertex};
use crate::{Error, Result, Q};

/// Checks geodesic closure pairwise.
pub fn is_convex(c: &BTreeSet<Vertex>) -> bool {
    c.iter().all(|u| c.iter().all(|v| geodesic(u, v).iter().all(|w| c.contains(w))))
}

/// `(arc index, n)` pairs at depth `D` whose horosphere misses `C`
/// (within the visible range `|n| ≤ D`).
fn disjoint_horospheres(c: &BTreeSet<Vertex>, depth: usize, q: u32) -> Result<Vec<(usize, i64)>> {
    let arcs = partition(depth, q)?;
    let mut out = Vec::new();
    for (i, a) in arcs.iter().enumerate() {
        let hit: BTreeSet<i64> = c.iter().map(|v| h_v(v, a.word())).collect();
        for n in -(depth as i64)..=depth as i64 {
            if !hit.contains(&n) {
                out.push((i, n));
            }
        }
    }
    Ok(out)
}

/// For one function: if `R_V f` vanishes on every visible horosphere missing
/// `C`, then `f` must vanish off `C`. Returns whether that implication holds.
pub fn support_check(f: &FiniteFn<Vertex>, c: &BTreeSet<Vertex>, q: u32, depth: usize) -> Result<bool> {
    if !is_convex(c) {
        return Err(Error::NotConvex);
    }
    let rf = radon_v(f, q, depth)?;
    let premise = disjoint_horospheres(c, depth, q)?.into_iter().all(|(i, n)| rf.get(i, n).is_zero());
    let conclusion = f.iter().all(|(v, _)| c.contains(v));
    Ok(!premise || conclusion)
}

/// The implication for every function supported in the ball: the Radon
/// columns of the vertices outside `C`, restricted to horospheres missing
/// `C`, must be linearly independent.
pub fn support_theorem_holds(c: &BTreeSet<Vertex>, params: &TreeParams, depth: usize) -> Result<bool> {
    if !is_convex(c) {
        return Err(Error::NotConvex);
    }
    let q = params.q;
    let outside: Vec<Vertex> = ball(params).into_iter().filter(|v| !c.contains(v)).collect();
    let arcs = partition(depth, q)?;
    let rows: Vec<Vec<Q>> = disjoint_horospheres(c, depth, q)?
        .into_iter()
        .map(|(i, n)| {
            let w = arcs[i].word();
            outside.iter().map(|v| if h_v(v, w) == n { Q::from_integer(1) } else { Q::zero() }).collect()
        })
        .collect();
    Ok(exact_rank(&rows) == outside.len())
}

/// All nonempty convex vertex sets of diameter at most 2 inside the ball:
/// points, edges, and stars (a centre with at least two of its neighbours).
pub fn convex_sets_diam2(params: &TreeParams) -> Vec<BTreeSet<Vertex>> {
    let verts = ball(params);
    let inside: BTreeSet<Vertex> = verts.iter().cloned().collect();
    let mut out: Vec<BTreeSet<Vertex>> = Vec::new();
    for v in &verts {
        out.push([v.clone()].into_iter().collect());
        let nb: Vec<Vertex> = neighbors(v, params).into_iter().filter(|w| inside.contains(w)).collect();
        for w in nb.iter().filter(|w| *w > v) {
            out.push([v.clone(), w.clone()].into_iter().collect());
        }
        let k = nb.len();
        for mask in 0u32..(1 << k) {
            if mask.count_ones() >= 2 {
                let mut s: BTreeSet<Vertex> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| nb[i].clone()).collect();
                s.insert(v.clone());
                out.push(s);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn convexity() {
        let v = |s: &str| Vertex::parse(s, 2).unwrap();
        let good: BTreeSet<Vertex> = [v(""), v("0"), v("01")].into_iter().collect();
        let bad: BTreeSet<Vertex> = [v("0"), v("1")].into_iter().collect();
        assert!(is_convex(&good));
        assert!(!is_convex(&bad));
        assert_eq!(support_check(&FiniteFn::new(), &bad, 2, 2), Err(Error::NotConvex));
    }
}
