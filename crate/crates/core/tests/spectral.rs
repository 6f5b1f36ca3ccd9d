//! Resolvents, Poisson sign convention, Fourier slice, spectra and the
//! radial convolution identities.

use std::collections::BTreeMap;

use horotree::horo::{radialize_v, radon_v};
use horotree::sample;
use horotree::scalar::{q_to_f64, FiniteFn, Kind, RadialSeq};
use horotree::spectral::*;
use horotree::tree::{ball, circle, TreeParams, Vertex};
use horotree::{Error, C, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn resolvent_profiles_solve_the_resolvent_equation() {
    let params = TreeParams::new(3, 7).unwrap();
    for z in [C::new(0.8, 0.3), C::new(1.4, -2.0), C::new(0.55, 1.0)] {
        for kind in [Kind::Vertex, Kind::Edge] {
            assert!(resolvent_residual(z, kind, &params).unwrap() < 1e-12, "{kind:?} {z}");
        }
        // the alternative prefactor (q+1)/(q^{1−z} − q^z) is off by a constant factor
        let alt = (qz(3, -z) - qz(3, z)) / (qz(3, 1.0 - z) - qz(3, z));
        assert!((alt - 1.0).norm() > 1e-3);
    }
    assert_eq!(resolvent_s(C::new(0.4, 0.0), 1, 2), Err(Error::NotSquareSummable(0.4)));
}

#[test]
fn poisson_sign_selects_the_eigenvalue() {
    let q = 2;
    let params = TreeParams::new(q, 4).unwrap();
    let z = C::new(0.3, 0.9);
    // a boundary function that is not constant: depends on the first two letters
    let f = |a: &horotree::boundary::Arc| C::new(1.0 + a.word()[0] as f64, a.word()[1] as f64);
    for (sign, g) in [(PoissonSign::Plus, gamma_v(z, q)), (PoissonSign::Minus, gamma_v(-z, q))] {
        let p = |v: &Vertex| poisson_transform(f, 4, z, v, sign, q).unwrap();
        for v in ball(&TreeParams::new(q, 3).unwrap()) {
            let mu = laplacian_mu1_at(p, &v, &params).unwrap();
            assert!((mu - g * p(&v)).norm() < 1e-12);
        }
    }
}

#[test]
fn fourier_slice_and_coefficients() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let q = 3;
    let f = sample::vertex_fn(&mut rng, &TreeParams::new(q, 2).unwrap(), 0.6);
    let rf = radon_v(&f, q, 3).unwrap();
    let grid = QuadratureGrid::new(64).unwrap();
    for (i, a) in rf.arcs().iter().enumerate().step_by(7) {
        let g: BTreeMap<i64, C> = rf.row(i).iter().map(|(n, x)| (*n, C::new(q_to_f64(*x), 0.0))).collect();
        for z in [C::new(0.2, 0.4), C::new(-1.0, 2.0)] {
            let lhs = spherical_ft_at_ray(&f, z, a, q).unwrap();
            assert!((lhs - fourier_series(&g, z, q)).norm() < 1e-12);
        }
        for x in [0.0, 0.7] {
            for n in -3..=3 {
                let c = fourier_coeff(|z| fourier_series(&g, z, q), n, x, grid, q);
                let want = g.get(&n).copied().unwrap_or_default();
                assert!((c - want).norm() < 1e-10, "n={n} x={x}");
            }
        }
    }
}

#[test]
fn zonal_transform_is_the_radial_transform_of_the_radialization() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let q = 2;
    let f = sample::vertex_fn(&mut rng, &TreeParams::new(q, 3).unwrap(), 0.5);
    let h = radialize_v(&f, q).to_complex();
    for z in [C::new(0.5, 0.3), C::new(0.1, -1.0)] {
        let a = spherical_ft_zonal(&f, Kind::Vertex, z, q);
        assert!((a - spherical_ft_radial(&h, z, q)).norm() < 1e-10);
    }
}

#[test]
fn translation_multiplicativity() {
    let q = 2;
    let z = C::new(0.37, 0.8);
    let params = TreeParams::new(q, 3).unwrap();
    for w in ball(&TreeParams::new(q, 2).unwrap()) {
        // radialization of δ_w * φ_z at circle n, averaged over the circle
        for n in 0..=3u32 {
            let circ = circle(n, &params).unwrap();
            let avg: C = circ
                .iter()
                .map(|v| spherical_v(z, horotree::tree::dist_v(&horotree::tree::group_inv(&w), &horotree::tree::group_inv(v)), q))
                .sum::<C>()
                / circ.len() as f64;
            let want = spherical_v(z, w.len(), q) * spherical_v(z, n as usize, q);
            assert!((avg - want).norm() < 1e-12);
        }
    }
}

#[test]
fn radial_convolution_recurrence() {
    // μ_1 * μ_n = (μ_{n-1} + q μ_{n+1}) / (q+1) for the circle averages μ_n
    let q = 3;
    let mu = |n: usize| -> FiniteFn<Vertex> {
        let params = TreeParams::new(q, n as u32).unwrap();
        let c = circle(n as u32, &params).unwrap();
        let w = Q::new(1, c.len() as i128);
        c.into_iter().map(|v| (v, w)).collect()
    };
    for n in 1..=3 {
        let lhs = convolve(&mu(1), &mu(n));
        let rhs = &mu(n - 1).scaled(Q::new(1, q as i128 + 1)) + &mu(n + 1).scaled(Q::new(q as i128, q as i128 + 1));
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn spectra_samples() {
    let q = 3;
    let rho = 2.0 * (q as f64).sqrt() / (q as f64 + 1.0);
    for g in spectrum_sample(Kind::Vertex, 2.0, 64, q).unwrap() {
        assert!(g.im.abs() < 1e-12 && g.re.abs() <= rho + 1e-12);
    }
    let pts = spectrum_sample(Kind::Vertex, 1.25, 64, q).unwrap();
    assert!(pts.iter().any(|g| g.im.abs() > 0.1));
    assert!(spectrum_sample(Kind::Vertex, 0.9, 8, q).is_err());
    assert!((gamma_v(C::new(1.0, 0.0), q) - 1.0).norm() < 1e-15);
}

#[test]
fn polynomials_match_spherical_functions() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..10 {
        let z = C::new(rng.gen_range(0.0..1.0), rng.gen_range(-3.0..3.0));
        for kind in [Kind::Vertex, Kind::Edge] {
            let g = gamma(kind, z, 3);
            for n in 0..8 {
                let a = spherical_polynomial(kind, n, g, 3);
                let b = spherical(kind, z, n, 3);
                assert!((a - b).norm() < 1e-9 * (1.0 + b.norm()));
            }
        }
    }
}

#[test]
fn densities_vanish_at_the_endpoints() {
    for q in [2, 3, 7] {
        for kind in [Kind::Vertex, Kind::Edge] {
            assert!(plancherel_density(kind, 0.0, q).abs() < 1e-15);
            assert!(plancherel_density(kind, t_max(q), q).abs() < 1e-12);
            assert!(plancherel_density(kind, 0.5 * t_max(q), q) > 0.0);
            let t = 0.3 * t_max(q);
            let direct = match kind {
                Kind::Vertex => c_coeff(C::new(0.5, t), q).unwrap().norm_sqr().recip(),
                Kind::Edge => d_coeff(C::new(0.5, t), q).unwrap().norm_sqr().recip(),
            };
            assert!((direct - plancherel_density(kind, t, q)).abs() < 1e-12 * direct);
        }
    }
}

#[test]
fn symbol_times_density_is_constant() {
    for q in [2, 3] {
        for k in 1..50 {
            let t = k as f64 / 50.0 * t_max(q);
            for kind in [Kind::Vertex, Kind::Edge] {
                let s = symbol_psi_hat(kind, C::new(0.5, t), q).unwrap().re * plancherel_density(kind, t, q);
                assert!((s - symbol_times_density(kind, q)).abs() < 1e-12);
            }
        }
        // the edge symbol vanishes at the atom of the edge Plancherel measure
        assert!(symbol_psi_hat_e(edge_atom_z(q), q).unwrap().norm() < 1e-12);
        // the route through the resolvent symbol doubles the non-constant part
        let w = C::new(0.5, 0.4);
        let c = 2.0 / (q as f64 + 1.0);
        let ratio = (symbol_psi_hat_v_stated(w, q).unwrap() - c) / (symbol_psi_hat_v(w, q).unwrap() - c);
        assert!((ratio - 2.0).norm() < 1e-12);
    }
}

#[test]
fn degenerate_branch_errors_and_overrides() {
    let q = 2;
    let z = C::new(0.5, 0.0);
    assert_eq!(c_coeff(z, q), Err(Error::Degenerate));
    assert!(spherical_v_with(z, 3, q, Branch::Generic).is_err());
    let forced = spherical_v_with(C::new(0.5 + 1e-7, 0.0), 3, q, Branch::Degenerate).unwrap();
    assert!((forced - spherical_v(z, 3, q)).norm() < 1e-5);
    // at z = 1/2 the edge branch is (1 + (q-1)n/(2√q)) q^{-n/2}
    let n = 4.0;
    let want = (1.0 + (q as f64 - 1.0) * n / (2.0 * (q as f64).sqrt())) * (q as f64).powf(-n / 2.0);
    assert!((spherical_e(z, 4, q) - want).norm() < 1e-14);
}

#[test]
fn schwartz_seminorm_and_boundary_errors() {
    let q = 2;
    let f: FiniteFn<Vertex> = circle(2, &TreeParams::new(q, 2).unwrap()).unwrap().into_iter().map(|v| (v, Q::new(1, 2))).collect();
    assert!((schwartz_seminorm(&f, 1.0, q) - 3.0).abs() < 1e-14);
    let params = TreeParams::new(q, 2).unwrap();
    let v = circle(2, &params).unwrap().remove(0);
    assert_eq!(laplacian_mu1_at(|_: &Vertex| Q::from_integer(1), &v, &params), Err(Error::Boundary(2)));
    let h = RadialSeq::new(Kind::Vertex, vec![C::new(1.0, 0.0)]);
    assert!((l2_norm_sq(&h, q) - 1.0).abs() < 1e-15);
}
