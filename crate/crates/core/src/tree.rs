//! Reduced words, edges and flags of `T_q`, with the vertex, edge, mixed
//! and flag distances and ball/circle enumeration.

use std::fmt;

use crate::{Error, Result, Q};

/// Homogeneity degree and truncation radius.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeParams {
    pub q: u32,
    pub radius: u32,
}

impl TreeParams {
    pub fn new(q: u32, radius: u32) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidParams(format!("q must be >= 2, got {q}")));
        }
        if q > 250 {
            return Err(Error::InvalidParams(format!("q = {q} is too large")));
        }
        Ok(TreeParams { q, radius })
    }
}

/// A vertex, stored as a reduced word; the empty word is `v0`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Vertex(Vec<u8>);

impl Vertex {
    pub fn root() -> Self {
        Vertex(Vec::new())
    }

    /// Builds a vertex, checking reducedness and the letter range.
    pub fn new(letters: Vec<u8>, q: u32) -> Result<Self> {
        let ok = letters.iter().all(|&a| (a as u32) <= q) && letters.windows(2).all(|w| w[0] != w[1]);
        if ok {
            Ok(Vertex(letters))
        } else {
            Err(Error::NotReduced { word: format_letters(&letters, q), q })
        }
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    /// Same as [`Vertex::is_root`]: the empty word.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<u8> {
        self.0.last().copied()
    }

    pub fn first(&self) -> Option<u8> {
        self.0.first().copied()
    }

    /// Appends one letter; `None` if the result would not be reduced.
    pub fn child(&self, a: u8) -> Option<Vertex> {
        if self.last() == Some(a) {
            return None;
        }
        let mut w = self.0.clone();
        w.push(a);
        Some(Vertex(w))
    }

    pub fn parent(&self) -> Option<Vertex> {
        if self.0.is_empty() {
            None
        } else {
            Some(Vertex(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    pub fn prefix(&self, k: usize) -> Vertex {
        Vertex(self.0[..k.min(self.0.len())].to_vec())
    }

    pub fn is_prefix_of(&self, other: &[u8]) -> bool {
        other.len() >= self.0.len() && other[..self.0.len()] == self.0[..]
    }

    /// Serializes with the conventions for `q`: plain digits, or `.`-separated when `q >= 10`.
    pub fn to_string_q(&self, q: u32) -> String {
        format_letters(&self.0, q)
    }

    pub fn parse(s: &str, q: u32) -> Result<Vertex> {
        let letters: Vec<u8> = if s.is_empty() {
            Vec::new()
        } else if q >= 10 {
            s.split('.')
                .map(|t| t.parse::<u8>().map_err(|_| Error::Parse(format!("bad letter {t:?} in {s:?}"))))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or_else(|| Error::Parse(format!("bad letter {c:?} in {s:?}")))
                })
                .collect::<Result<_>>()?
        };
        Vertex::new(letters, q)
    }
}

fn format_letters(w: &[u8], q: u32) -> String {
    if q >= 10 {
        w.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(".")
    } else {
        w.iter().map(|a| char::from(b'0' + a)).collect()
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.0.iter().copied().max().unwrap_or(0) as u32;
        f.write_str(&format_letters(&self.0, q))
    }
}

/// An edge in canonical form: `base` is the endpoint nearer `v0`, the far
/// endpoint is `base·letter`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub base: Vertex,
    pub letter: u8,
}

impl Edge {
    pub fn new(base: Vertex, letter: u8, q: u32) -> Result<Edge> {
        if letter as u32 > q || base.last() == Some(letter) {
            return Err(Error::Malformed(format!("edge {}+{}", base.to_string_q(q), letter)));
        }
        Ok(Edge { base, letter })
    }

    /// The reference edge `e0 = (v0, 0)`.
    pub fn reference() -> Edge {
        Edge { base: Vertex::root(), letter: 0 }
    }

    /// The edge joining two adjacent vertices.
    pub fn from_endpoints(u: &Vertex, v: &Vertex) -> Result<Edge> {
        if u.len() + 1 == v.len() && u.is_prefix_of(v.letters()) {
            Ok(Edge { base: u.clone(), letter: v.last().unwrap() })
        } else if v.len() + 1 == u.len() && v.is_prefix_of(u.letters()) {
            Ok(Edge { base: v.clone(), letter: u.last().unwrap() })
        } else {
            Err(Error::Malformed(format!("{u} and {v} are not adjacent")))
        }
    }

    pub fn far(&self) -> Vertex {
        let mut w = self.base.0.clone();
        w.push(self.letter);
        Vertex(w)
    }

    pub fn endpoints(&self) -> [Vertex; 2] {
        [self.base.clone(), self.far()]
    }

    pub fn has_endpoint(&self, v: &Vertex) -> bool {
        *v == self.base || (v.len() == self.base.len() + 1 && self.base.is_prefix_of(v.letters()) && v.last() == Some(self.letter))
    }

    /// Edge length `dist_e(e, e0)`.
    pub fn len(&self) -> usize {
        if self.base.is_root() {
            usize::from(self.letter != 0)
        } else if self.base.first() == Some(0) {
            self.base.len()
        } else {
            self.base.len() + 1
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn to_string_q(&self, q: u32) -> String {
        format!("{}+{}", self.base.to_string_q(q), self.letter)
    }

    pub fn parse(s: &str, q: u32) -> Result<Edge> {
        let (b, l) = s.rsplit_once('+').ok_or_else(|| Error::Parse(format!("edge {s:?} lacks '+'")))?;
        let letter = l.parse::<u8>().map_err(|_| Error::Parse(format!("bad edge letter in {s:?}")))?;
        Edge::new(Vertex::parse(b, q)?, letter, q)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}", self.base, self.letter)
    }
}

/// An edge with a chosen endpoint (`far = false` selects the base).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Flag {
    pub edge: Edge,
    pub far: bool,
}

impl Flag {
    pub fn new(edge: Edge, vertex: &Vertex) -> Result<Flag> {
        if *vertex == edge.base {
            Ok(Flag { edge, far: false })
        } else if *vertex == edge.far() {
            Ok(Flag { edge, far: true })
        } else {
            Err(Error::Malformed(format!("{vertex} is not an endpoint of {edge}")))
        }
    }

    /// The reference flag `(e0, v0)`.
    pub fn reference() -> Flag {
        Flag { edge: Edge::reference(), far: false }
    }

    pub fn vertex(&self) -> Vertex {
        if self.far {
            self.edge.far()
        } else {
            self.edge.base.clone()
        }
    }

    /// The other vertex of the edge.
    pub fn opposite(&self) -> Vertex {
        if self.far {
            self.edge.base.clone()
        } else {
            self.edge.far()
        }
    }

    pub fn flip(&self) -> Flag {
        Flag { edge: self.edge.clone(), far: !self.far }
    }

    pub fn to_string_q(&self, q: u32) -> String {
        format!("{}@{}", self.edge.to_string_q(q), u8::from(self.far))
    }

    pub fn parse(s: &str, q: u32) -> Result<Flag> {
        let (e, k) = s.rsplit_once('@').ok_or_else(|| Error::Parse(format!("flag {s:?} lacks '@'")))?;
        let far = match k {
            "0" => false,
            "1" => true,
            _ => return Err(Error::Parse(format!("flag selector must be 0 or 1 in {s:?}"))),
        };
        Ok(Flag { edge: Edge::parse(e, q)?, far })
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.edge, u8::from(self.far))
    }
}

/// The flag-metric parameter, an exact rational in `(0, 1/4)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlagMetricParam(Q);

impl FlagMetricParam {
    pub fn new(xi: Q) -> Result<Self> {
        if xi > Q::from_integer(0) && xi < Q::new(1, 4) {
            Ok(FlagMetricParam(xi))
        } else {
            Err(Error::InvalidParams(format!("xi_flag must lie in (0, 1/4), got {xi}")))
        }
    }

    pub fn value(&self) -> Q {
        self.0
    }
}

impl Default for FlagMetricParam {
    fn default() -> Self {
        FlagMetricParam(Q::new(1, 8))
    }
}

/// All `q+1` neighbours of `v`, in lexicographic order.
pub fn neighbors(v: &Vertex, params: &TreeParams) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = (0..=params.q as u8).filter_map(|a| v.child(a)).collect();
    if let Some(p) = v.parent() {
        out.push(p);
    }
    out.sort();
    out
}

pub fn common_prefix_len(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

pub fn dist_v(u: &Vertex, v: &Vertex) -> usize {
    u.len() + v.len() - 2 * common_prefix_len(u.letters(), v.letters())
}

/// Word-group product with full reduction.
pub fn group_mul(u: &Vertex, v: &Vertex) -> Vertex {
    let mut w = u.0.clone();
    for &a in &v.0 {
        if w.last() == Some(&a) {
            w.pop();
        } else {
            w.push(a);
        }
    }
    Vertex(w)
}

pub fn group_inv(u: &Vertex) -> Vertex {
    Vertex(u.0.iter().rev().copied().collect())
}

/// The median of three vertices: the unique vertex on all pairwise geodesics.
pub fn join3(u: &Vertex, v: &Vertex, w: &Vertex) -> Vertex {
    let ui = group_inv(u);
    let a = group_mul(&ui, v);
    let b = group_mul(&ui, w);
    let k = common_prefix_len(a.letters(), b.letters());
    group_mul(u, &a.prefix(k))
}

/// Vertices on the geodesic from `u` to `v`, both ends included.
pub fn geodesic(u: &Vertex, v: &Vertex) -> Vec<Vertex> {
    let k = common_prefix_len(u.letters(), v.letters());
    let mut out: Vec<Vertex> = (k..=u.len()).rev().map(|i| u.prefix(i)).collect();
    out.extend((k + 1..=v.len()).map(|i| v.prefix(i)));
    out
}

fn min_endpoint_dist(v: &Vertex, e: &Edge) -> usize {
    dist_v(v, &e.base).min(dist_v(v, &e.far()))
}

pub fn dist_e(e1: &Edge, e2: &Edge) -> usize {
    if e1 == e2 {
        return 0;
    }
    let f = e2.far();
    1 + [&e1.base, &e1.far()]
        .iter()
        .map(|a| dist_v(a, &e2.base).min(dist_v(a, &f)))
        .min()
        .unwrap()
}

/// Vertex-to-edge distance, a half-integer.
pub fn dist_mixed(v: &Vertex, e: &Edge) -> Q {
    Q::new(2 * min_endpoint_dist(v, e) as i128 + 1, 2)
}

pub fn dist_f(f1: &Flag, f2: &Flag, xi: FlagMetricParam) -> Q {
    let x = xi.value();
    let one = Q::from_integer(1);
    let two = Q::from_integer(2);
    (one - two * x) * Q::from_integer(dist_v(&f1.vertex(), &f2.vertex()) as i128)
        + two * x * Q::from_integer(dist_e(&f1.edge, &f2.edge) as i128)
}

/// Vertices at distance exactly `n` from `v0`, lexicographically.
pub fn circle(n: u32, params: &TreeParams) -> Result<Vec<Vertex>> {
    if n > params.radius {
        return Err(Error::Truncation { requested: n, radius: params.radius });
    }
    Ok(sphere_words(n as usize, params.q))
}

pub(crate) fn sphere_words(n: usize, q: u32) -> Vec<Vertex> {
    let mut level = vec![Vertex::root()];
    for _ in 0..n {
        level = level
            .iter()
            .flat_map(|w| (0..=q as u8).filter_map(move |a| w.child(a)))
            .collect();
    }
    level
}

/// The ball of radius `params.radius` around `v0`, ordered lexicographically.
pub fn ball(params: &TreeParams) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = (0..=params.radius as usize).flat_map(|n| sphere_words(n, params.q)).collect();
    out.sort();
    out
}

/// Edges of length exactly `n`, lexicographically.
pub fn circle_e(n: u32, params: &TreeParams) -> Result<Vec<Edge>> {
    if n > params.radius {
        return Err(Error::Truncation { requested: n, radius: params.radius });
    }
    Ok(edges_of_len(n as usize, params.q))
}

pub(crate) fn edges_of_len(n: usize, q: u32) -> Vec<Edge> {
    // a base of length k has edges of length k (if it starts with 0) or k+1
    let mut out = Vec::new();
    for k in n.saturating_sub(1)..=n {
        for b in sphere_words(k, q) {
            for a in 0..=q as u8 {
                if b.last() == Some(a) {
                    continue;
                }
                let e = Edge { base: b.clone(), letter: a };
                if e.len() == n {
                    out.push(e);
                }
            }
        }
    }
    out.sort();
    out
}

/// Edges of length at most `params.radius`.
pub fn ball_e(params: &TreeParams) -> Vec<Edge> {
    let mut out: Vec<Edge> = (0..=params.radius as usize).flat_map(|n| edges_of_len(n, params.q)).collect();
    out.sort();
    out
}

/// Flags whose edge has length at most `params.radius`.
pub fn ball_f(params: &TreeParams) -> Vec<Flag> {
    let mut out: Vec<Flag> = ball_e(params)
        .into_iter()
        .flat_map(|e| [Flag { edge: e.clone(), far: false }, Flag { edge: e, far: true }])
        .collect();
    out.sort();
    out
}

/// The `2q` edges sharing exactly one endpoint with `e`.
pub fn edge_neighbors(e: &Edge, q: u32) -> Vec<Edge> {
    let mut out = Vec::with_capacity(2 * q as usize);
    for x in e.endpoints() {
        for a in (0..=q as u8).filter(|&a| x.last() != Some(a)) {
            let f = Edge { base: x.clone(), letter: a };
            if f != *e {
                out.push(f);
            }
        }
        if let Some(p) = x.parent() {
            let f = Edge { base: p, letter: x.last().unwrap() };
            if f != *e {
                out.push(f);
            }
        }
    }
    out.sort();
    out
}
