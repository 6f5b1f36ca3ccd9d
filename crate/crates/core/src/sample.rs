//! Seeded random test data: small rationals and finitely supported functions.

use rand::Rng;

use crate::scalar::{FiniteFn, Kind, RadialSeq, Simplex};
use crate::tree::{ball, ball_e, ball_f, Edge, Flag, TreeParams, Vertex};
use crate::Q;

/// A rational with numerator in `-9..=9` and denominator in `1..=6`.
pub fn rational<R: Rng + ?Sized>(rng: &mut R) -> Q {
    Q::new(rng.gen_range(-9..=9), rng.gen_range(1..=6))
}

fn random_on<S: Simplex, R: Rng + ?Sized>(rng: &mut R, domain: Vec<S>, density: f64) -> FiniteFn<S> {
    let mut out = FiniteFn::new();
    for s in domain {
        if rng.gen_bool(density) {
            let x = rational(rng);
            out.add_at(s, x);
        }
    }
    out
}

/// Random function on the vertex ball; each vertex is in the support with probability `density`.
pub fn vertex_fn<R: Rng + ?Sized>(rng: &mut R, params: &TreeParams, density: f64) -> FiniteFn<Vertex> {
    random_on(rng, ball(params), density)
}

pub fn edge_fn<R: Rng + ?Sized>(rng: &mut R, params: &TreeParams, density: f64) -> FiniteFn<Edge> {
    random_on(rng, ball_e(params), density)
}

pub fn flag_fn<R: Rng + ?Sized>(rng: &mut R, params: &TreeParams, density: f64) -> FiniteFn<Flag> {
    random_on(rng, ball_f(params), density)
}

pub fn radial<R: Rng + ?Sized>(rng: &mut R, kind: Kind, radius: usize) -> RadialSeq {
    RadialSeq::new(kind, (0..=radius).map(|_| rational(rng)).collect())
}
