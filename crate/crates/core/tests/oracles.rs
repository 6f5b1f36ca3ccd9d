//! Library quantities checked against independent brute-force computations.

mod common;

use common::*;
use horotree::boundary::{arc_measure_e, arc_measure_v, partition};
use horotree::horo::{dual_radon_e, dual_radon_v, h_index_e, h_index_v, radon_e, radon_v};
use horotree::inversion::{enumerate_k_e, enumerate_k_v, k_e, k_v, plancherel_pairing_v, default_coeffs_v};
use horotree::sample;
use horotree::scalar::FiniteFn;
use horotree::spectral::{laplacian_eta1_at, laplacian_mu1_at, psi_closed_e, psi_closed_v};
use horotree::tree::{ball, ball_e, circle, circle_e, dist_e, dist_v, Edge, TreeParams, Vertex};
use horotree::Q;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TABLE_V: [[&str; 6]; 11] = [
    ["0", "0", "0", "0", "0", "1"],
    ["0", "0", "0", "0", "1", "0"],
    ["0", "0", "0", "1", "0", "q-1"],
    ["0", "0", "1", "0", "q-1", "0"],
    ["0", "1", "0", "q-1", "0", "(q-1)q"],
    ["1", "0", "q-1", "0", "(q-1)q", "0"],
    ["0", "q", "0", "(q-1)q", "0", "(q-1)q^2"],
    ["0", "0", "q^2", "0", "(q-1)q^2", "0"],
    ["0", "0", "0", "q^3", "0", "(q-1)q^3"],
    ["0", "0", "0", "0", "q^4", "0"],
    ["0", "0", "0", "0", "0", "q^5"],
];

const TABLE_E: [[&str; 6]; 11] = [
    ["0", "0", "0", "0", "0", "1"],
    ["0", "0", "0", "0", "1", "q-1"],
    ["0", "0", "0", "1", "q-1", "0"],
    ["0", "0", "1", "q-1", "0", "(q-1)q"],
    ["0", "1", "q-1", "0", "(q-1)q", "0"],
    ["1", "q-1", "0", "(q-1)q", "0", "(q-1)q^2"],
    ["0", "q", "(q-1)q", "0", "(q-1)q^2", "0"],
    ["0", "0", "q^2", "(q-1)q^2", "0", "(q-1)q^3"],
    ["0", "0", "0", "q^3", "(q-1)q^3", "0"],
    ["0", "0", "0", "0", "q^4", "(q-1)q^4"],
    ["0", "0", "0", "0", "0", "q^5"],
];

#[test]
fn vertex_distance_matches_bfs() {
    for (q, r) in [(2, 4), (3, 3)] {
        let params = TreeParams::new(q, r).unwrap();
        let g = vertex_graph(&params);
        for u in &g.nodes {
            let d = g.bfs(u);
            for v in &g.nodes {
                assert_eq!(dist_v(u, v), d[v], "{u} {v}");
            }
        }
    }
}

#[test]
fn edge_distance_matches_line_graph_bfs() {
    for (q, r) in [(2, 4), (3, 2)] {
        let params = TreeParams::new(q, r).unwrap();
        let g = edge_graph(&params);
        for e in &g.nodes {
            let d = g.bfs(e);
            for f in &g.nodes {
                assert_eq!(dist_e(e, f), d[f], "{e} {f}");
            }
        }
    }
}

#[test]
fn vertex_index_matches_far_point_distances() {
    for (q, r) in [(2, 4), (3, 3)] {
        let inner = TreeParams::new(q, r).unwrap();
        let g = vertex_graph(&TreeParams::new(q, r + 2).unwrap());
        for a in partition(r as usize, q).unwrap() {
            let mut word = a.word().to_vec();
            while word.len() < r as usize + 2 {
                word.push(if word.last() == Some(&0) { 1 } else { 0 });
            }
            let oracle = bfs_vertex_indices(&g, &word, r as usize + 2, q);
            for v in ball(&inner) {
                assert_eq!(h_index_v(&v, &a).unwrap(), oracle[&v], "{v} along {a}");
            }
        }
    }
}

#[test]
fn edge_index_matches_far_edge_distances() {
    for (q, r) in [(2, 3), (3, 2)] {
        let inner = TreeParams::new(q, r).unwrap();
        let g = edge_graph(&TreeParams::new(q, r + 3).unwrap());
        for a in partition(r as usize + 1, q).unwrap() {
            let mut word = a.word().to_vec();
            while word.len() < r as usize + 3 {
                word.push(if word.last() == Some(&0) { 1 } else { 0 });
            }
            let oracle = bfs_edge_indices(&g, &word, r as usize + 3, q);
            for e in ball_e(&inner) {
                assert_eq!(h_index_e(&e, &a).unwrap(), oracle[&e], "{e} along {a}");
            }
        }
    }
}

#[test]
fn intersection_tables_match_the_reference_tables() {
    for q in [2u32, 3, 5] {
        for (row, n) in (-5..=5).rev().enumerate() {
            for m in 0..6u32 {
                let reference_v = eval_table_entry(TABLE_V[row][m as usize], q as i128);
                let reference_e = eval_table_entry(TABLE_E[row][m as usize], q as i128);
                assert_eq!(k_v(n, m, q), reference_v, "k_V({n},{m}) q={q}");
                assert_eq!(k_e(n, m, q), reference_e, "k_E({n},{m}) q={q}");
            }
        }
    }
}

#[test]
fn intersection_tables_match_library_enumeration() {
    for q in [2u32, 3] {
        for m in 0..=5u32 {
            for n in -(m as i64) - 2..=m as i64 + 2 {
                assert_eq!(k_v(n, m, q), enumerate_k_v(n, m, q));
                assert_eq!(k_e(n, m, q), enumerate_k_e(n, m, q));
            }
        }
    }
}

#[test]
fn arc_measures_are_limits_of_circle_counts() {
    for q in [2u32, 3] {
        let n = 5;
        let params = TreeParams::new(q, n).unwrap();
        let verts = circle(n, &params).unwrap();
        let edges = circle_e(n, &params).unwrap();
        for d in 1..=3 {
            for a in partition(d, q).unwrap() {
                let p = a.word();
                let cv = verts.iter().filter(|v| v.letters().starts_with(p)).count() as i128;
                assert_eq!(arc_measure_v(&a, q), Q::new(cv, verts.len() as i128), "{a}");
                let ce = edges.iter().filter(|e| e.far().letters().starts_with(p)).count() as i128;
                assert_eq!(arc_measure_e(&a, q), Q::new(ce, edges.len() as i128), "{a}");
            }
        }
    }
}

#[test]
fn radon_matches_horosphere_sums() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for q in [2u32, 3] {
        let r = 3;
        let params = TreeParams::new(q, r).unwrap();
        let g = vertex_graph(&TreeParams::new(q, r + 2).unwrap());
        let f = sample::vertex_fn(&mut rng, &params, 0.5);
        let rf = radon_v(&f, q, r as usize).unwrap();
        for (i, a) in rf.arcs().iter().enumerate() {
            let mut word = a.word().to_vec();
            while word.len() < r as usize + 2 {
                word.push(if word.last() == Some(&0) { 1 } else { 0 });
            }
            let idx = bfs_vertex_indices(&g, &word, r as usize + 2, q);
            for n in -6..=6 {
                let s: Q = f.iter().filter(|(v, _)| idx[*v] == n).map(|(_, x)| *x).sum();
                assert_eq!(rf.get(i, n), s);
            }
        }
    }
}

#[test]
fn back_projection_is_convolution_with_psi() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for q in [2u32, 3] {
        let small = TreeParams::new(q, 2).unwrap();
        let big = TreeParams::new(q, 3).unwrap();
        let f = sample::vertex_fn(&mut rng, &small, 0.6);
        let rf = radon_v(&f, q, 3).unwrap();
        for v in ball(&big) {
            let expect: Q = f.iter().map(|(w, x)| *x * psi_closed_v(dist_v(&v, w), q)).sum();
            assert_eq!(dual_radon_v(&rf, &v).unwrap(), expect, "{v}");
        }
        let g = sample::edge_fn(&mut rng, &small, 0.6);
        let rg = radon_e(&g, q, 4).unwrap();
        for e in ball_e(&big) {
            let expect: Q = g.iter().map(|(h, x)| *x * psi_closed_e(dist_e(&e, h), q)).sum();
            assert_eq!(dual_radon_e(&rg, &e).unwrap(), expect, "{e}");
        }
    }
}

#[test]
fn radon_pairing_recovers_inner_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for q in [2u32, 3] {
        let params = TreeParams::new(q, 2).unwrap();
        for _ in 0..5 {
            let f = sample::vertex_fn(&mut rng, &params, 0.5);
            let g = sample::vertex_fn(&mut rng, &params, 0.5);
            let inner: Q = f.iter().map(|(v, x)| *x * g.get(v)).sum();
            let (rf, rg) = (radon_v(&f, q, 3).unwrap(), radon_v(&g, q, 3).unwrap());
            let c = default_coeffs_v(8, q);
            assert_eq!(plancherel_pairing_v(&rf, &rg, &c).unwrap(), inner);
        }
    }
}

#[test]
fn edge_averaging_intertwines_vertex_averaging() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for q in [2u32, 3] {
        let params = TreeParams::new(q, 4).unwrap();
        let f = sample::vertex_fn(&mut rng, &params, 0.7);
        let theta = |h: &dyn Fn(&Vertex) -> Q, e: &Edge| {
            let [a, b] = e.endpoints();
            (h(&a) + h(&b)) / Q::from_integer(2)
        };
        let fv = |v: &Vertex| f.get(v);
        let mu_f = |v: &Vertex| laplacian_mu1_at(|w: &Vertex| f.get(w), v, &params).unwrap();
        let a = Q::new(q as i128 + 1, 2 * q as i128);
        let b = Q::new(q as i128 - 1, 2 * q as i128);
        let inner = TreeParams::new(q, 2).unwrap();
        for e in ball_e(&inner) {
            let lhs = laplacian_eta1_at(|h: &Edge| theta(&fv, h), &e, &params).unwrap();
            let rhs = a * theta(&mu_f, &e) + b * theta(&fv, &e);
            assert_eq!(lhs, rhs, "{e}");
        }
    }
}

#[test]
fn zero_function_has_zero_transforms() {
    let f: FiniteFn<Vertex> = FiniteFn::new();
    let rf = radon_v(&f, 2, 2).unwrap();
    assert!(rf.is_zero());
    assert!(dual_radon_v(&rf, &Vertex::root()).unwrap().is_zero());
}
