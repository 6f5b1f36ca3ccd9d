//! Depth-`D` boundary arcs and the invariant measures `ν_{v0}`, `ν_{e0}`.

use std::fmt;

use crate::tree::{sphere_words, Edge, Vertex};
use crate::{qpow, Error, Result, Q};

/// The cylinder of boundary points whose ray from `v0` starts with `prefix`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    prefix: Vertex,
}

/// A depth-`D` approximant of a boundary point; the same data as an arc.
pub type Ray = Arc;

impl Arc {
    pub fn new(prefix: Vertex) -> Result<Arc> {
        if prefix.is_root() {
            return Err(Error::EmptyArc);
        }
        Ok(Arc { prefix })
    }

    pub fn prefix(&self) -> &Vertex {
        &self.prefix
    }

    pub fn word(&self) -> &[u8] {
        self.prefix.letters()
    }

    pub fn depth(&self) -> usize {
        self.prefix.len()
    }

    /// 1 if the arc lies beyond the far vertex `"0"` of `e0`, else 0.
    pub fn s0(&self) -> i64 {
        i64::from(self.prefix.first() == Some(0))
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.prefix.fmt(f)
    }
}

/// `ν_{v0}` of the arc: `1/((q+1) q^{n-1})` for a prefix of length `n`.
pub fn arc_measure_v(a: &Arc, q: u32) -> Q {
    let n = a.depth() as i64;
    Q::new(1, q as i128 + 1) * qpow(q, 1 - n)
}

/// `ν_{e0}` of the arc: each side of `e0` has mass 1/2, split evenly.
pub fn arc_measure_e(a: &Arc, q: u32) -> Q {
    let k = a.depth() as i64;
    let n = if a.s0() == 1 { k - 1 } else { k };
    Q::new(1, 2) * qpow(q, -n)
}

/// `ν_{e0}` of the boundary arc subtended by `e` on the side away from `e0`.
pub fn edge_shadow_measure(e: &Edge, q: u32) -> Q {
    Q::new(1, 2) * qpow(q, -(e.len() as i64))
}

/// All `(q+1) q^{D-1}` arcs of depth `D`, lexicographically.
pub fn partition(depth: usize, q: u32) -> Result<Vec<Arc>> {
    if depth == 0 {
        return Err(Error::InvalidParams("partition depth must be >= 1".into()));
    }
    Ok(sphere_words(depth, q).into_iter().map(|prefix| Arc { prefix }).collect())
}

/// The invariant measure of the tube of index-`n` horospheres over the arc.
pub fn xi_tube_measure(a: &Arc, n: i64, q: u32) -> Q {
    qpow(q, n) * arc_measure_v(a, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    fn arc(s: &str, q: u32) -> Arc {
        Arc::new(Vertex::parse(s, q).unwrap()).unwrap()
    }

    #[test]
    fn vertex_measure_values() {
        assert_eq!(arc_measure_v(&arc("1", 2), 2), Q::new(1, 3));
        assert_eq!(arc_measure_v(&arc("010", 3), 3), Q::new(1, 36));
        assert!(Arc::new(Vertex::root()).is_err());
    }

    #[test]
    fn edge_measure_values() {
        assert_eq!(arc_measure_e(&arc("0", 2), 2), Q::new(1, 2));
        assert_eq!(arc_measure_e(&arc("1", 2), 2), Q::new(1, 4));
        let e = Edge::new(Vertex::parse("01", 2).unwrap(), 0, 2).unwrap();
        assert_eq!(edge_shadow_measure(&e, 2), Q::new(1, 8));
    }

    #[test]
    fn partitions_are_normalized() {
        for q in [2, 3] {
            for d in 1..=6 {
                let p = partition(d, q).unwrap();
                assert_eq!(p.len() as u32, (q + 1) * q.pow(d as u32 - 1));
                let sv: Q = p.iter().map(|a| arc_measure_v(a, q)).sum();
                let se: Q = p.iter().map(|a| arc_measure_e(a, q)).sum();
                let side: Q = p.iter().filter(|a| a.s0() == 1).map(|a| arc_measure_e(a, q)).sum();
                assert!(sv.is_one() && se.is_one());
                assert_eq!(side, Q::new(1, 2));
            }
        }
    }

    #[test]
    fn tube_measure() {
        assert_eq!(xi_tube_measure(&arc("2", 2), 2, 2), Q::new(4, 3));
        let total: Q = partition(3, 2).unwrap().iter().map(|a| xi_tube_measure(a, 0, 2)).sum();
        assert!((total - Q::one()).is_zero());
    }
}
