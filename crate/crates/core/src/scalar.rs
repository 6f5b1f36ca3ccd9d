//! Finitely supported functions on simplices and radial sequences.

use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Div, Mul, Sub};

use num_traits::Zero;

use crate::tree::{Edge, Flag, Vertex};
use crate::Q;

/// A simplex type that can carry a finitely supported function.
pub trait Simplex: Clone + Ord {
    /// Distance from the reference simplex (`v0`, `e0`, or the edge of a flag).
    fn radius(&self) -> usize;
    /// Ray depth needed to classify this simplex on every horosphere.
    fn depth_needed(&self) -> usize;
    fn to_string_q(&self, q: u32) -> String;
}

impl Simplex for Vertex {
    fn radius(&self) -> usize {
        self.len()
    }
    fn depth_needed(&self) -> usize {
        self.len()
    }
    fn to_string_q(&self, q: u32) -> String {
        Vertex::to_string_q(self, q)
    }
}

impl Simplex for Edge {
    fn radius(&self) -> usize {
        self.len()
    }
    fn depth_needed(&self) -> usize {
        self.base.len() + 1
    }
    fn to_string_q(&self, q: u32) -> String {
        Edge::to_string_q(self, q)
    }
}

impl Simplex for Flag {
    fn radius(&self) -> usize {
        self.edge.len()
    }
    fn depth_needed(&self) -> usize {
        self.edge.base.len() + 1
    }
    fn to_string_q(&self, q: u32) -> String {
        Flag::to_string_q(self, q)
    }
}

/// A finitely supported function; zero values are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteFn<S: Simplex, T = Q> {
    values: BTreeMap<S, T>,
}

impl<S: Simplex, T> Default for FiniteFn<S, T> {
    fn default() -> Self {
        FiniteFn { values: BTreeMap::new() }
    }
}

impl<S: Simplex, T: Clone + Zero + AddAssign> FiniteFn<S, T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn delta(s: S) -> Self
    where
        T: num_traits::One,
    {
        let mut f = Self::new();
        f.set(s, T::one());
        f
    }

    pub fn set(&mut self, s: S, t: T) {
        if t.is_zero() {
            self.values.remove(&s);
        } else {
            self.values.insert(s, t);
        }
    }

    pub fn add_at(&mut self, s: S, t: T) {
        let cur = self.get(&s);
        let mut next = cur;
        next += t;
        self.set(s, next);
    }

    pub fn get(&self, s: &S) -> T {
        self.values.get(s).cloned().unwrap_or_else(T::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&S, &T)> {
        self.values.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest radius in the support (0 for the zero function).
    pub fn support_radius(&self) -> usize {
        self.values.keys().map(Simplex::radius).max().unwrap_or(0)
    }

    pub fn depth_needed(&self) -> usize {
        self.values.keys().map(Simplex::depth_needed).max().unwrap_or(0)
    }

    pub fn total(&self) -> T {
        let mut s = T::zero();
        for v in self.values.values() {
            s += v.clone();
        }
        s
    }

    pub fn scaled(&self, c: T) -> Self
    where
        T: Mul<Output = T>,
    {
        let mut out = Self::new();
        for (s, v) in &self.values {
            out.set(s.clone(), c.clone() * v.clone());
        }
        out
    }
}

impl<S: Simplex, T: Clone + Zero + AddAssign> FromIterator<(S, T)> for FiniteFn<S, T> {
    fn from_iter<I: IntoIterator<Item = (S, T)>>(iter: I) -> Self {
        let mut f = FiniteFn::new();
        for (s, t) in iter {
            f.add_at(s, t);
        }
        f
    }
}

impl<S: Simplex, T: Clone + Zero + AddAssign> Add for &FiniteFn<S, T> {
    type Output = FiniteFn<S, T>;
    fn add(self, rhs: Self) -> FiniteFn<S, T> {
        let mut out = self.clone();
        for (s, t) in rhs.iter() {
            out.add_at(s.clone(), t.clone());
        }
        out
    }
}

/// Vertex or edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Vertex,
    Edge,
}

impl Kind {
    /// Number of simplices at distance `m` from the reference one.
    pub fn circle_size(self, q: u32, m: usize) -> u128 {
        let q = q as u128;
        match (self, m) {
            (_, 0) => 1,
            (Kind::Vertex, m) => (q + 1) * q.pow(m as u32 - 1),
            (Kind::Edge, m) => 2 * q.pow(m as u32),
        }
    }
}

/// A radial function, stored by its value `f_m` on each simplex at distance `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialSeq<T = Q> {
    pub kind: Kind,
    pub values: Vec<T>,
}

impl<T: Clone + Zero> RadialSeq<T> {
    pub fn new(kind: Kind, values: Vec<T>) -> Self {
        RadialSeq { kind, values }
    }

    pub fn get(&self, m: usize) -> T {
        self.values.get(m).cloned().unwrap_or_else(T::zero)
    }

    pub fn radius(&self) -> usize {
        self.values.len().saturating_sub(1)
    }
}

impl RadialSeq<Q> {
    /// Expands to a function on the vertex ball.
    pub fn to_vertex_fn(&self, q: u32) -> FiniteFn<Vertex> {
        (0..self.values.len())
            .flat_map(|m| crate::tree::sphere_words(m, q).into_iter().map(move |v| (v, self.values[m])))
            .collect()
    }

    /// Expands to a function on the edge ball.
    pub fn to_edge_fn(&self, q: u32) -> FiniteFn<Edge> {
        (0..self.values.len())
            .flat_map(|m| crate::tree::edges_of_len(m, q).into_iter().map(move |e| (e, self.values[m])))
            .collect()
    }

    pub fn to_complex(&self) -> RadialSeq<crate::C> {
        RadialSeq { kind: self.kind, values: self.values.iter().map(|x| crate::C::new(q_to_f64(*x), 0.0)).collect() }
    }
}

pub fn q_to_f64(x: Q) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

/// Formats a rational as `num/den` (denominator always present).
pub fn fmt_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_q(s: &str) -> crate::Result<Q> {
    let s = s.trim();
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: i128 = n.trim().parse().map_err(|_| crate::Error::Parse(format!("bad rational {s:?}")))?;
    let d: i128 = d.trim().parse().map_err(|_| crate::Error::Parse(format!("bad rational {s:?}")))?;
    if d == 0 {
        return Err(crate::Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Q::new(n, d))
}

/// Arithmetic needed by the neighbour-averaging operators.
pub trait Field: Clone + Zero + AddAssign + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self> {
    fn from_int(n: i64) -> Self;
}

impl Field for Q {
    fn from_int(n: i64) -> Self {
        Q::from_integer(n as i128)
    }
}

impl Field for crate::C {
    fn from_int(n: i64) -> Self {
        crate::C::new(n as f64, 0.0)
    }
}
