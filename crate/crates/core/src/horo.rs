//! Horospherical indices, the vertex/edge/flag Radon transforms, their duals,
//! the canonical vertex-to-edge relabeling Ξ, and radialization.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::boundary::{arc_measure_e, arc_measure_v, partition, Arc, Ray};
use crate::scalar::{FiniteFn, Kind, RadialSeq, Simplex};
use crate::tree::{common_prefix_len, dist_v, edges_of_len, sphere_words, Edge, Flag, Vertex};
use crate::{qpow, Error, Result, Q};

/// Which family of horospheres a [`HoroFn`] lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HoroKind {
    Vertex,
    Edge,
    Flag,
}

/// A function on depth-`D` truncated horosphere space: one row of values per
/// arc of `partition(D)`, keyed by the horospherical index.
#[derive(Debug, Clone, PartialEq)]
pub struct HoroFn<K: Ord + Copy> {
    q: u32,
    kind: HoroKind,
    depth: usize,
    arcs: Vec<Arc>,
    rows: Vec<BTreeMap<K, Q>>,
}

pub type HoroFnV = HoroFn<i64>;
pub type HoroFnE = HoroFn<i64>;
pub type HoroFnF = HoroFn<(i64, i64)>;

impl<K: Ord + Copy> HoroFn<K> {
    pub fn zero(q: u32, kind: HoroKind, depth: usize) -> Result<Self> {
        let arcs = partition(depth, q)?;
        let rows = vec![BTreeMap::new(); arcs.len()];
        Ok(HoroFn { q, kind, depth, arcs, rows })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn kind(&self) -> HoroKind {
        self.kind
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn row(&self, i: usize) -> &BTreeMap<K, Q> {
        &self.rows[i]
    }

    pub fn arc_index(&self, a: &Arc) -> Option<usize> {
        self.arcs.binary_search(a).ok()
    }

    pub fn get(&self, i: usize, k: K) -> Q {
        self.rows[i].get(&k).copied().unwrap_or_else(Q::zero)
    }

    pub fn set(&mut self, i: usize, k: K, x: Q) {
        if x.is_zero() {
            self.rows[i].remove(&k);
        } else {
            self.rows[i].insert(k, x);
        }
    }

    pub fn add(&mut self, i: usize, k: K, x: Q) {
        let cur = self.get(i, k);
        self.set(i, k, cur + x);
    }

    /// Iterates over the nonzero entries in canonical (arc, index) order.
    pub fn entries(&self) -> impl Iterator<Item = (&Arc, K, Q)> + '_ {
        self.arcs.iter().zip(&self.rows).flat_map(|(a, r)| r.iter().map(move |(k, x)| (a, *k, *x)))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BTreeMap::is_empty)
    }

    pub(crate) fn check_same_depth<L: Ord + Copy>(&self, other: &HoroFn<L>) -> Result<()> {
        if self.depth != other.depth {
            return Err(Error::DepthMismatch(self.depth, other.depth));
        }
        Ok(())
    }

    /// Measure of the `i`-th arc for the reference point of this family
    /// (`ν_{v0}` for vertices, `ν_{e0}` for edges and flags).
    pub fn arc_weight(&self, i: usize) -> Q {
        match self.kind {
            HoroKind::Vertex => arc_measure_v(&self.arcs[i], self.q),
            HoroKind::Edge | HoroKind::Flag => arc_measure_e(&self.arcs[i], self.q),
        }
    }

    /// Sum over arcs of the row totals weighted by the arc measure.
    pub fn arc_totals(&self) -> Vec<Q> {
        self.rows.iter().map(|r| r.values().copied().sum()).collect()
    }
}

impl HoroFn<i64> {
    /// `∫ F(ω, n) dν(ω)` with the family's reference measure.
    pub fn integrate(&self, n: i64) -> Q {
        (0..self.arcs.len()).map(|i| self.arc_weight(i) * self.get(i, n)).sum()
    }

    /// `∫ F(ω, n) dν(ω)` against an explicit measure on arcs.
    pub fn integrate_with(&self, n: i64, measure: impl Fn(&Arc) -> Q) -> Q {
        self.arcs.iter().zip(&self.rows).map(|(a, r)| measure(a) * r.get(&n).copied().unwrap_or_else(Q::zero)).sum()
    }

    /// Largest stored `|n|`.
    pub fn index_radius(&self) -> i64 {
        self.rows.iter().flat_map(|r| r.keys()).map(|n| n.abs()).max().unwrap_or(0)
    }
}

fn check_depth(needed: usize, ray: &Ray) -> Result<()> {
    if ray.depth() < needed {
        return Err(Error::InsufficientDepth { needed, depth: ray.depth() });
    }
    Ok(())
}

/// Index of `v` on the horosphere through `ω` relative to `v0`, without depth checks.
pub(crate) fn h_v(v: &Vertex, word: &[u8]) -> i64 {
    2 * common_prefix_len(v.letters(), word) as i64 - v.len() as i64
}

/// `h(v, v0, ω) = 2·N − |v|`, with `N` the common prefix length of `v` and the ray.
pub fn h_index_v(v: &Vertex, ray: &Ray) -> Result<i64> {
    check_depth(v.len(), ray)?;
    Ok(h_v(v, ray.word()))
}

/// `h(x, y, ω)`: how much closer `x` is to `ω` than `y`, computed from
/// distances to the end of the ray.
pub fn h_pair(x: &Vertex, y: &Vertex, ray: &Ray) -> Result<i64> {
    check_depth(x.len().max(y.len()), ray)?;
    let w = ray.prefix();
    Ok(dist_v(y, w) as i64 - dist_v(x, w) as i64)
}

/// The endpoint of `e` nearer to `ω`.
pub(crate) fn v_plus(e: &Edge, word: &[u8]) -> Vertex {
    let far = e.far();
    if far.is_prefix_of(word) {
        far
    } else {
        e.base.clone()
    }
}

pub(crate) fn h_e(e: &Edge, word: &[u8]) -> i64 {
    let s0 = i64::from(word.first() == Some(&0));
    let b = e.base.letters();
    let far_on_ray = word.len() > b.len() && word[b.len()] == e.letter && word.starts_with(b);
    let h = if far_on_ray {
        b.len() as i64 + 1
    } else {
        2 * common_prefix_len(b, word) as i64 - b.len() as i64
    };
    h - s0
}

/// Edge index: vertex index of the `ω`-side endpoint of `e` relative to the
/// `ω`-side endpoint of `e0`.
pub fn h_index_e(e: &Edge, ray: &Ray) -> Result<i64> {
    check_depth(e.depth_needed(), ray)?;
    Ok(h_e(e, ray.word()))
}

/// Mixed index `h(v, e, ω) = 1/2 + h(v, v_+(e,ω), ω)`.
pub fn h_index_mixed(v: &Vertex, e: &Edge, ray: &Ray) -> Result<Q> {
    check_depth(v.len().max(e.depth_needed()), ray)?;
    let w = ray.word();
    Ok(Q::new(1, 2) + Q::from_integer((h_v(v, w) - h_v(&v_plus(e, w), w)) as i128))
}

/// Mixed index `h(e, v, ω) = -h(v, e, ω)`.
pub fn h_index_mixed_ev(e: &Edge, v: &Vertex, ray: &Ray) -> Result<Q> {
    h_index_mixed(v, e, ray).map(|x| -x)
}

/// Flag index pair `(n_E, n_V)`.
pub fn h_index_flag(f: &Flag, ray: &Ray) -> Result<(i64, i64)> {
    check_depth(f.depth_needed(), ray)?;
    let w = ray.word();
    Ok((h_e(&f.edge, w), h_v(&f.vertex(), w)))
}

/// Checks `h(a,b,ω) + h(b,c,ω) = h(a,c,ω)` together with antisymmetry.
pub fn cocycle_check(a: &Vertex, b: &Vertex, c: &Vertex, ray: &Ray) -> Result<bool> {
    let ab = h_pair(a, b, ray)?;
    let bc = h_pair(b, c, ray)?;
    let ac = h_pair(a, c, ray)?;
    let ba = h_pair(b, a, ray)?;
    Ok(ab + bc == ac && ab == -ba)
}

fn radon_generic<S: Simplex, K: Ord + Copy>(
    f: &FiniteFn<S>,
    q: u32,
    depth: usize,
    kind: HoroKind,
    index: impl Fn(&S, &[u8]) -> K,
) -> Result<HoroFn<K>> {
    let needed = f.depth_needed();
    if depth < needed.max(1) {
        return Err(Error::InsufficientDepth { needed: needed.max(1), depth });
    }
    let mut out = HoroFn::zero(q, kind, depth)?;
    for i in 0..out.arcs.len() {
        let word = out.arcs[i].word().to_vec();
        for (s, x) in f.iter() {
            out.add(i, index(s, &word), *x);
        }
    }
    Ok(out)
}

/// Vertex-horospherical Radon transform at depth `D`.
pub fn radon_v(f: &FiniteFn<Vertex>, q: u32, depth: usize) -> Result<HoroFnV> {
    radon_generic(f, q, depth, HoroKind::Vertex, h_v)
}

/// Edge-horospherical Radon transform at depth `D` (needs `D ≥ |base|+1` on the support).
pub fn radon_e(f: &FiniteFn<Edge>, q: u32, depth: usize) -> Result<HoroFnE> {
    radon_generic(f, q, depth, HoroKind::Edge, h_e)
}

/// Flag-horospherical Radon transform, indexed by `(n_E, n_V)`.
pub fn radon_f(f: &FiniteFn<Flag>, q: u32, depth: usize) -> Result<HoroFnF> {
    radon_generic(f, q, depth, HoroKind::Flag, |fl: &Flag, w: &[u8]| (h_e(&fl.edge, w), h_v(&fl.vertex(), w)))
}

fn expect_kind<K: Ord + Copy>(f: &HoroFn<K>, kind: HoroKind) -> Result<()> {
    if f.kind != kind {
        return Err(Error::InvalidParams(format!("expected a {kind:?} horospherical function, got {:?}", f.kind)));
    }
    Ok(())
}

/// Back-projection: the `ν_v`-average of `F` over horospheres through `v`.
pub fn dual_radon_v(f: &HoroFnV, v: &Vertex) -> Result<Q> {
    expect_kind(f, HoroKind::Vertex)?;
    if f.depth < v.len() {
        return Err(Error::InsufficientDepth { needed: v.len(), depth: f.depth });
    }
    let q = f.q;
    Ok(f.arcs
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let h = h_v(v, a.word());
            qpow(q, h) * f.get(i, h) * arc_measure_v(a, q)
        })
        .sum())
}

/// Edge back-projection: the `ν_e`-average of `F` over horospheres through `e`.
pub fn dual_radon_e(f: &HoroFnE, e: &Edge) -> Result<Q> {
    expect_kind(f, HoroKind::Edge)?;
    if f.depth < e.depth_needed() {
        return Err(Error::InsufficientDepth { needed: e.depth_needed(), depth: f.depth });
    }
    let q = f.q;
    Ok(f.arcs
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let h = h_e(e, a.word());
            qpow(q, h) * f.get(i, h) * arc_measure_e(a, q)
        })
        .sum())
}

/// Ξ: relabels each vertex-horosphere by the edge-horosphere formed by the
/// `ω`-side edges of its vertices. Index `n` becomes `n + 1 - s0(ω)`.
pub fn canonical_map_xi(f: &HoroFnV) -> Result<HoroFnE> {
    expect_kind(f, HoroKind::Vertex)?;
    let mut out = HoroFn::zero(f.q, HoroKind::Edge, f.depth)?;
    for i in 0..f.arcs.len() {
        let shift = 1 - f.arcs[i].s0();
        for (&n, &x) in &f.rows[i] {
            out.set(i, n + shift, x);
        }
    }
    Ok(out)
}

/// Inverse of [`canonical_map_xi`].
pub fn canonical_map_xi_inv(f: &HoroFnE) -> Result<HoroFnV> {
    expect_kind(f, HoroKind::Edge)?;
    let mut out = HoroFn::zero(f.q, HoroKind::Vertex, f.depth)?;
    for i in 0..f.arcs.len() {
        let shift = 1 - f.arcs[i].s0();
        for (&n, &x) in &f.rows[i] {
            out.set(i, n - shift, x);
        }
    }
    Ok(out)
}

/// Circle averages of a vertex function.
pub fn radialize_v(f: &FiniteFn<Vertex>, q: u32) -> RadialSeq {
    let r = f.support_radius();
    let mut sums = vec![Q::zero(); r + 1];
    for (v, x) in f.iter() {
        sums[v.len()] += *x;
    }
    let values = sums
        .into_iter()
        .enumerate()
        .map(|(m, s)| s / Q::from_integer(Kind::Vertex.circle_size(q, m) as i128))
        .collect();
    RadialSeq::new(Kind::Vertex, values)
}

/// Circle averages of an edge function.
pub fn radialize_e(f: &FiniteFn<Edge>, q: u32) -> RadialSeq {
    let r = f.support_radius();
    let mut sums = vec![Q::zero(); r + 1];
    for (e, x) in f.iter() {
        sums[e.len()] += *x;
    }
    let values = sums
        .into_iter()
        .enumerate()
        .map(|(m, s)| s / Q::from_integer(Kind::Edge.circle_size(q, m) as i128))
        .collect();
    RadialSeq::new(Kind::Edge, values)
}

/// The radialization as a function on the same ball (constant on circles).
pub fn radialize_v_fn(f: &FiniteFn<Vertex>, q: u32) -> FiniteFn<Vertex> {
    radialize_v(f, q).to_vertex_fn(q)
}

pub fn radialize_e_fn(f: &FiniteFn<Edge>, q: u32) -> FiniteFn<Edge> {
    radialize_e(f, q).to_edge_fn(q)
}

/// Horospherical radialization: the arc average `∫ F(ω, n) dν(ω)` per index.
pub fn radialize_horo(f: &HoroFn<i64>) -> BTreeMap<i64, Q> {
    let mut out = BTreeMap::new();
    for i in 0..f.arcs.len() {
        let w = f.arc_weight(i);
        for (&n, &x) in &f.rows[i] {
            *out.entry(n).or_insert_with(Q::zero) += w * x;
        }
    }
    out.retain(|_, x| !x.is_zero());
    out
}

/// Radialized Radon transform of a radial vertex function, computed from a
/// single ray through the circles: `φ_n = Σ_m k_V(n,m) f_m`.
pub fn radon_radial_v(f: &RadialSeq, q: u32) -> BTreeMap<i64, Q> {
    let word: Vec<u8> = (0..f.values.len()).map(|i| (i % 2) as u8).collect();
    let mut out = BTreeMap::new();
    for (m, x) in f.values.iter().enumerate() {
        for v in sphere_words(m, q) {
            *out.entry(h_v(&v, &word)).or_insert_with(Q::zero) += *x;
        }
    }
    out.retain(|_, x| !x.is_zero());
    out
}

/// Radialized edge Radon transform of a radial edge function, along the ray `0101…`.
pub fn radon_radial_e(f: &RadialSeq, q: u32) -> BTreeMap<i64, Q> {
    let word: Vec<u8> = (0..f.values.len() + 1).map(|i| (i % 2) as u8).collect();
    let mut out = BTreeMap::new();
    for (m, x) in f.values.iter().enumerate() {
        for e in edges_of_len(m, q) {
            *out.entry(h_e(&e, &word)).or_insert_with(Q::zero) += *x;
        }
    }
    out.retain(|_, x| !x.is_zero());
    out
}
