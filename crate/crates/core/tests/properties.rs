//! Property-based invariants over seeded random data.

use std::collections::BTreeMap;

use horotree::boundary::Arc;
use horotree::flags::{flag_lift, flag_project, FlagPair};
use horotree::horo::{canonical_map_xi, canonical_map_xi_inv, cocycle_check, radon_e, radon_v};
use horotree::inversion::{
    cavalieri_check_e, cavalieri_check_v, default_coeffs_e, default_coeffs_v, inv_coeffs_custom, invert_ball_e,
    invert_ball_v, row_by_column_residual,
};
use horotree::sample;
use horotree::scalar::{FiniteFn, Kind};
use horotree::spectral::{gamma, spherical, spherical_v};
use horotree::tree::{dist_e, dist_f, dist_v, group_inv, group_mul, Edge, Flag, FlagMetricParam, TreeParams, Vertex};
use horotree::{Q, C};
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn word(q: u32, max_len: usize) -> impl Strategy<Value = Vertex> {
    prop::collection::vec(0..=q as u8, 0..=max_len).prop_map(move |mut w| {
        w.dedup();
        Vertex::new(w, q).unwrap()
    })
}

fn edge(q: u32, max_len: usize) -> impl Strategy<Value = Edge> {
    (word(q, max_len), 0..=q as u8).prop_filter_map("reduced", move |(b, a)| Edge::new(b, a, q).ok())
}

fn flag(q: u32, max_len: usize) -> impl Strategy<Value = Flag> {
    (edge(q, max_len), any::<bool>()).prop_map(|(e, far)| Flag { edge: e, far })
}

fn ray(q: u32, depth: usize) -> impl Strategy<Value = Arc> {
    prop::collection::vec(0..q as u8, depth).prop_map(move |steps| {
        // each step picks one of the q letters different from the previous one
        let mut w: Vec<u8> = Vec::with_capacity(steps.len());
        for s in steps {
            let a = match w.last() {
                Some(&prev) if s >= prev => s + 1,
                _ => s,
            };
            w.push(a);
        }
        Arc::new(Vertex::new(w, q).unwrap()).unwrap()
    })
}

fn critical_strip() -> impl Strategy<Value = C> {
    (0.0f64..1.0, -4.0f64..4.0).prop_map(|(x, t)| C::new(x, t))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn triangle_inequalities(a in word(3, 5), b in word(3, 5), c in word(3, 5)) {
        prop_assert!(dist_v(&a, &c) <= dist_v(&a, &b) + dist_v(&b, &c));
        prop_assert_eq!(dist_v(&a, &b), dist_v(&b, &a));
    }

    #[test]
    fn edge_and_flag_triangle(e in edge(2, 5), f in edge(2, 5), g in edge(2, 5),
                               x in flag(2, 4), y in flag(2, 4), z in flag(2, 4)) {
        prop_assert!(dist_e(&e, &g) <= dist_e(&e, &f) + dist_e(&f, &g));
        let xi = FlagMetricParam::default();
        prop_assert!(dist_f(&x, &z, xi) <= dist_f(&x, &y, xi) + dist_f(&y, &z, xi));
        prop_assert_eq!(dist_f(&x, &y, xi).is_zero(), x == y);
    }

    #[test]
    fn left_translation_is_an_isometry(g in word(2, 4), a in word(2, 4), b in word(2, 4)) {
        prop_assert_eq!(dist_v(&group_mul(&g, &a), &group_mul(&g, &b)), dist_v(&a, &b));
        prop_assert_eq!(group_mul(&group_inv(&g), &g), Vertex::root());
    }

    #[test]
    fn horospherical_cocycle(a in word(3, 4), b in word(3, 4), c in word(3, 4), w in ray(3, 6)) {
        prop_assert!(cocycle_check(&a, &b, &c, &w).unwrap());
    }

    #[test]
    fn radon_images_pass_cavalieri(seed in any::<u64>(), q in 2u32..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let params = TreeParams::new(q, 3).unwrap();
        let f = sample::vertex_fn(&mut rng, &params, 0.4);
        prop_assert!(cavalieri_check_v(&radon_v(&f, q, 4).unwrap()).unwrap().passes());
        let g = sample::edge_fn(&mut rng, &params, 0.4);
        prop_assert!(cavalieri_check_e(&radon_e(&g, q, 4).unwrap()).unwrap().passes());
    }

    #[test]
    fn inversion_roundtrip(seed in any::<u64>(), q in 2u32..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let params = TreeParams::new(q, 2).unwrap();
        let f = sample::vertex_fn(&mut rng, &params, 0.5);
        let rf = radon_v(&f, q, 3).unwrap();
        let back = invert_ball_v(&rf, 3, &default_coeffs_v(8, q)).unwrap();
        prop_assert_eq!(back, f);
        let g = sample::edge_fn(&mut rng, &params, 0.5);
        let rg = radon_e(&g, q, 3).unwrap();
        let back = invert_ball_e(&rg, 2, &default_coeffs_e(8, q)).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn any_solution_of_the_dual_system_inverts(seed in any::<u64>(), q in 2u32..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let seeds: BTreeMap<i64, Q> = (-8..0).map(|n| (n, sample::rational(&mut rng))).collect();
        let c = inv_coeffs_custom(Kind::Vertex, &seeds, 8, q).unwrap();
        for m in 0..=8 {
            prop_assert!(row_by_column_residual(&c, m).is_zero());
        }
        let params = TreeParams::new(q, 2).unwrap();
        let f = sample::vertex_fn(&mut rng, &params, 0.5);
        prop_assert_eq!(invert_ball_v(&radon_v(&f, q, 3).unwrap(), 2, &c).unwrap(), f);
    }

    #[test]
    fn xi_is_invertible(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = sample::vertex_fn(&mut rng, &TreeParams::new(2, 3).unwrap(), 0.5);
        let rf = radon_v(&f, 2, 3).unwrap();
        prop_assert_eq!(canonical_map_xi_inv(&canonical_map_xi(&rf).unwrap()).unwrap(), rf);
    }

    #[test]
    fn flag_lift_is_a_section_and_lambda_free(seed in any::<u64>(), ln in 0i128..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let params = TreeParams::new(2, 2).unwrap();
        let h = sample::flag_fn(&mut rng, &params, 0.3);
        let p = flag_project(&h);
        let lambda = Q::new(ln, 8);
        let lifted = flag_lift(&p, lambda, 2).unwrap();
        prop_assert_eq!(flag_project(&lifted), p.clone());
        prop_assert_eq!(lifted, flag_lift(&p, Q::new(1, 2), 2).unwrap());
    }

    #[test]
    fn lift_rejects_pairs_off_the_image(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let params = TreeParams::new(2, 2).unwrap();
        let mut p = FlagPair { g_e: sample::edge_fn(&mut rng, &params, 0.5), g_v: FiniteFn::new() };
        p.g_v.add_at(Vertex::root(), p.g_e.total() + Q::from_integer(1));
        prop_assert!(flag_lift(&p, Q::new(1, 2), 2).is_err());
    }

    #[test]
    fn weyl_symmetry_and_period(z in critical_strip(), q in 2u32..=5) {
        let period = C::new(0.0, 2.0 * std::f64::consts::PI / (q as f64).ln());
        for kind in [Kind::Vertex, Kind::Edge] {
            prop_assert!((gamma(kind, z, q) - gamma(kind, 1.0 - z, q)).norm() < 1e-12);
            prop_assert!((gamma(kind, z, q) - gamma(kind, z + period, q)).norm() < 1e-10);
            for n in 0..8 {
                let (a, b) = (spherical(kind, z, n, q), spherical(kind, 1.0 - z, n, q));
                prop_assert!((a - b).norm() < 1e-9 * (1.0 + a.norm()));
            }
        }
    }

    #[test]
    fn spherical_recurrences(z in critical_strip(), q in 2u32..=4) {
        let qf = q as f64;
        let v = |n| spherical(Kind::Vertex, z, n, q);
        let e = |n| spherical(Kind::Edge, z, n, q);
        for n in 1..7 {
            let lhs = v(1) * v(n);
            let rhs = v(n - 1) / (qf + 1.0) + v(n + 1) * qf / (qf + 1.0);
            prop_assert!((lhs - rhs).norm() < 1e-9 * (1.0 + lhs.norm()));
            let lhs = e(1) * e(n);
            let rhs = e(n - 1) / (2.0 * qf) + e(n) * (qf - 1.0) / (2.0 * qf) + e(n + 1) * 0.5;
            prop_assert!((lhs - rhs).norm() < 1e-9 * (1.0 + lhs.norm()));
        }
    }

    #[test]
    fn real_part_majorizes(x in 0.0f64..1.0, t in -4.0f64..4.0, q in 2u32..=4) {
        for n in 0..8 {
            let full = spherical_v(C::new(x, t), n, q).norm();
            let real = spherical_v(C::new(x, 0.0), n, q).norm();
            prop_assert!(full <= real * (1.0 + 1e-9) + 1e-12);
        }
    }
}
