//! Spherical functions, the spherical Fourier transform, Plancherel
//! quadrature, resolvents, back-projection kernels and their symbols.
//!
//! Vertex spherical functions are `φ_z(n) = c(z) q^{-zn} + c(1-z) q^{(z-1)n}`;
//! edge ones use `d(z)`. At `q^{2z-1} = 1` the two exponentials merge and
//! the linear-growth branch is used instead.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::boundary::{arc_measure_e, arc_measure_v, partition, Arc, Ray};
use crate::horo::{h_e, h_v};
use crate::scalar::{q_to_f64, Field, FiniteFn, Kind, RadialSeq, Simplex};
use crate::tree::{ball, ball_e, dist_e, dist_v, edge_neighbors, neighbors, Edge, TreeParams, Vertex};
use crate::{Error, Result, C, Q};

/// `|q^{2z-1} - 1|` below this selects the degenerate branch.
pub const DEGENERATE_TOL: f64 = 1e-12;

fn lnq(q: u32) -> f64 {
    (q as f64).ln()
}

/// `q^z`.
pub fn qz(q: u32, z: C) -> C {
    (z * lnq(q)).exp()
}

pub fn is_degenerate(z: C, q: u32) -> bool {
    (qz(q, 2.0 * z - 1.0) - 1.0).norm() < DEGENERATE_TOL
}

/// `γ^V(z) = (q^z + q^{1-z})/(q+1)`.
pub fn gamma_v(z: C, q: u32) -> C {
    (qz(q, z) + qz(q, 1.0 - z)) / (q as f64 + 1.0)
}

/// `γ^E(z) = (q^z + q - 1 + q^{1-z})/(2q)`.
pub fn gamma_e(z: C, q: u32) -> C {
    let qf = q as f64;
    (qz(q, z) + (qf - 1.0) + qz(q, 1.0 - z)) / (2.0 * qf)
}

pub fn gamma(kind: Kind, z: C, q: u32) -> C {
    match kind {
        Kind::Vertex => gamma_v(z, q),
        Kind::Edge => gamma_e(z, q),
    }
}

/// `c(z) = (1/(q+1)) (q^{1-z} - q^{z-1})/(q^{-z} - q^{z-1})`.
pub fn c_coeff(z: C, q: u32) -> Result<C> {
    if is_degenerate(z, q) {
        return Err(Error::Degenerate);
    }
    let num = qz(q, 1.0 - z) - qz(q, z - 1.0);
    let den = qz(q, -z) - qz(q, z - 1.0);
    Ok(num / den / (q as f64 + 1.0))
}

/// `d(z) = (1/2)(q - 1 + q^{1-z} - q^z)/(q^{1-z} - q^z)`.
pub fn d_coeff(z: C, q: u32) -> Result<C> {
    if is_degenerate(z, q) {
        return Err(Error::Degenerate);
    }
    let a = qz(q, 1.0 - z) - qz(q, z);
    Ok(0.5 * ((q as f64 - 1.0) + a) / a)
}

/// Which closed form to use for a spherical function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Auto,
    Generic,
    Degenerate,
}

fn use_degenerate(z: C, q: u32, b: Branch) -> bool {
    match b {
        Branch::Auto => is_degenerate(z, q),
        Branch::Generic => false,
        Branch::Degenerate => true,
    }
}

/// Vertex spherical function `φ^V_z(n)`.
pub fn spherical_v(z: C, n: usize, q: u32) -> C {
    spherical_v_with(z, n, q, Branch::Auto).expect("auto branch never fails")
}

pub fn spherical_v_with(z: C, n: usize, q: u32, b: Branch) -> Result<C> {
    let nf = n as f64;
    if use_degenerate(z, q, b) {
        let qf = q as f64;
        return Ok((1.0 + (qf - 1.0) / (qf + 1.0) * nf) * qz(q, -z * nf));
    }
    Ok(c_coeff(z, q)? * qz(q, -z * nf) + c_coeff(1.0 - z, q)? * qz(q, (z - 1.0) * nf))
}

/// Edge spherical function `φ^E_z(n)`. The degenerate branch is
/// `(1 + ((q-1)/2) q^{-z} n) q^{-zn}`, which at `z = 1/2` reads
/// `(1 + (q-1)n/(2√q)) q^{-n/2}`.
pub fn spherical_e(z: C, n: usize, q: u32) -> C {
    spherical_e_with(z, n, q, Branch::Auto).expect("auto branch never fails")
}

pub fn spherical_e_with(z: C, n: usize, q: u32, b: Branch) -> Result<C> {
    let nf = n as f64;
    if use_degenerate(z, q, b) {
        let qf = q as f64;
        return Ok((1.0 + 0.5 * (qf - 1.0) * qz(q, -z) * nf) * qz(q, -z * nf));
    }
    Ok(d_coeff(z, q)? * qz(q, -z * nf) + d_coeff(1.0 - z, q)? * qz(q, (z - 1.0) * nf))
}

pub fn spherical(kind: Kind, z: C, n: usize, q: u32) -> C {
    match kind {
        Kind::Vertex => spherical_v(z, n, q),
        Kind::Edge => spherical_e(z, n, q),
    }
}

/// Sign of the exponent in the Poisson kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoissonSign {
    /// `q^{+z h}`: the constant function maps to `φ_z`, eigenvalue `γ(z)`.
    Plus,
    /// `q^{-z h}`: the constant function maps to `φ_{-z}`, eigenvalue `γ(-z)`.
    Minus,
}

/// `∫ F(ω) q^{±z h(v,v0,ω)} dν_{v0}(ω)` for `F` constant on depth-`D` arcs.
pub fn poisson_transform(f: impl Fn(&Arc) -> C, depth: usize, z: C, v: &Vertex, sign: PoissonSign, q: u32) -> Result<C> {
    if depth < v.len() {
        return Err(Error::InsufficientDepth { needed: v.len(), depth });
    }
    let s = match sign {
        PoissonSign::Plus => 1.0,
        PoissonSign::Minus => -1.0,
    };
    let mut acc = C::zero();
    for a in partition(depth, q)? {
        let h = h_v(v, a.word()) as f64;
        acc += f(&a) * qz(q, s * z * h) * q_to_f64(arc_measure_v(&a, q));
    }
    Ok(acc)
}

/// `∫ q^{z h(e,e0,ω)} dν_{e0}(ω)`, the boundary-integral form of `φ^E_z(e)`.
pub fn spherical_e_by_boundary(z: C, e: &Edge, depth: usize, q: u32) -> Result<C> {
    if depth < e.depth_needed() {
        return Err(Error::InsufficientDepth { needed: e.depth_needed(), depth });
    }
    let mut acc = C::zero();
    for a in partition(depth, q)? {
        acc += qz(q, z * h_e(e, a.word()) as f64) * q_to_f64(arc_measure_e(&a, q));
    }
    Ok(acc)
}

/// `Σ_v f(v) φ_z(|v|)`.
pub fn spherical_ft_zonal<S: Simplex>(f: &FiniteFn<S>, kind: Kind, z: C, q: u32) -> C {
    f.iter().map(|(s, x)| q_to_f64(*x) * spherical(kind, z, s.radius(), q)).sum()
}

/// `ĥ(z) = Σ_m |C(m)| h_m φ_z(m)` for a radial sequence.
pub fn spherical_ft_radial(h: &RadialSeq<C>, z: C, q: u32) -> C {
    h.values
        .iter()
        .enumerate()
        .map(|(m, x)| x * h.kind.circle_size(q, m) as f64 * spherical(h.kind, z, m, q))
        .sum()
}

/// `Σ_v f(v) q^{z h(v,v0,ω)}` along one ray.
pub fn spherical_ft_at_ray(f: &FiniteFn<Vertex>, z: C, ray: &Ray, q: u32) -> Result<C> {
    if ray.depth() < f.support_radius() {
        return Err(Error::InsufficientDepth { needed: f.support_radius(), depth: ray.depth() });
    }
    Ok(f.iter().map(|(v, x)| q_to_f64(*x) * qz(q, z * h_v(v, ray.word()) as f64)).sum())
}

/// `Σ_n g_n q^{nz}`.
pub fn fourier_series(g: &BTreeMap<i64, C>, z: C, q: u32) -> C {
    g.iter().map(|(n, x)| x * qz(q, z * *n as f64)).sum()
}

/// Simpson quadrature resolution (number of subintervals).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureGrid {
    n: usize,
}

impl QuadratureGrid {
    pub fn new(n: usize) -> Result<Self> {
        if n < 8 || !n.is_multiple_of(2) {
            return Err(Error::InvalidParams(format!("grid size must be even and >= 8, got {n}")));
        }
        Ok(QuadratureGrid { n })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn doubled(&self) -> Self {
        QuadratureGrid { n: 2 * self.n }
    }
}

/// Composite Simpson rule on `[a, b]`.
pub fn simpson(f: impl Fn(f64) -> C, a: f64, b: f64, grid: QuadratureGrid) -> C {
    let n = grid.n;
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

/// Simpson with grid doubling until successive estimates differ by less than `tol`.
pub fn simpson_converged(f: impl Fn(f64) -> C, a: f64, b: f64, start: QuadratureGrid, tol: f64, max_n: usize) -> Result<(C, QuadratureGrid)> {
    let mut g = start;
    let mut prev = simpson(&f, a, b, g);
    while g.n * 2 <= max_n {
        g = g.doubled();
        let next = simpson(&f, a, b, g);
        if (next - prev).norm() < tol {
            return Ok((next, g));
        }
        prev = next;
    }
    Err(Error::InvalidParams(format!("quadrature did not converge to {tol} within {max_n} nodes")))
}

/// Coefficient `g_n` of `u(z) = Σ g_n q^{nz}` from samples on `Re z = x`:
/// `(ln q/2π) ∫_0^{2π/ln q} u(x+it) q^{-n(x+it)} dt`.
pub fn fourier_coeff(u: impl Fn(C) -> C, n: i64, x: f64, grid: QuadratureGrid, q: u32) -> C {
    let l = lnq(q);
    let period = 2.0 * std::f64::consts::PI / l;
    let integrand = |t: f64| {
        let z = C::new(x, t);
        u(z) * qz(q, -z * n as f64)
    };
    simpson(integrand, 0.0, period, grid) * l / (2.0 * std::f64::consts::PI)
}

/// Word-group convolution `(f*g)(v) = Σ_w f(w) g(w^{-1}v)`.
pub fn convolve(f: &FiniteFn<Vertex>, g: &FiniteFn<Vertex>) -> FiniteFn<Vertex> {
    let mut out = FiniteFn::new();
    for (w, x) in f.iter() {
        for (u, y) in g.iter() {
            out.add_at(crate::tree::group_mul(w, u), x * y);
        }
    }
    out
}

/// Convolution of an edge function with a radial edge kernel:
/// `(k*g)(e) = Σ_{e'} g(e') k(dist(e, e'))`, evaluated on the edge ball.
pub fn convolve_radial_e(k: &RadialSeq, g: &FiniteFn<Edge>, params: &TreeParams) -> FiniteFn<Edge> {
    let mut out = FiniteFn::new();
    for e in ball_e(params) {
        let s: Q = g.iter().map(|(e2, y)| k.get(dist_e(&e, e2)) * y).sum();
        out.set(e, s);
    }
    out
}

/// `μ_1 f(v)`: the average over the `q+1` neighbours. Only valid for `|v| < R`.
pub fn laplacian_mu1_at<T: Field>(f: impl Fn(&Vertex) -> T, v: &Vertex, params: &TreeParams) -> Result<T> {
    if v.len() as u32 >= params.radius {
        return Err(Error::Boundary(v.len() as u32));
    }
    let mut s = T::zero();
    for w in neighbors(v, params) {
        s += f(&w);
    }
    Ok(s / T::from_int(params.q as i64 + 1))
}

/// `η_1 g(e)`: the average over the `2q` adjacent edges. Only valid for `|e| < R`.
pub fn laplacian_eta1_at<T: Field>(g: impl Fn(&Edge) -> T, e: &Edge, params: &TreeParams) -> Result<T> {
    if e.len() as u32 >= params.radius {
        return Err(Error::Boundary(e.len() as u32));
    }
    let mut s = T::zero();
    for f in edge_neighbors(e, params.q) {
        s += g(&f);
    }
    Ok(s / T::from_int(2 * params.q as i64))
}

/// `μ_1 f` on the interior ball of radius `R-1`.
pub fn laplacian_mu1(f: &FiniteFn<Vertex>, params: &TreeParams) -> FiniteFn<Vertex> {
    let inner = TreeParams { q: params.q, radius: params.radius.saturating_sub(1) };
    let mut out = FiniteFn::new();
    if params.radius == 0 {
        return out;
    }
    for v in ball(&inner) {
        let x = laplacian_mu1_at(|w| f.get(w), &v, params).expect("interior vertex");
        out.set(v, x);
    }
    out
}

/// `η_1 g` on the interior edge ball of radius `R-1`.
pub fn laplacian_eta1(g: &FiniteFn<Edge>, params: &TreeParams) -> FiniteFn<Edge> {
    let inner = TreeParams { q: params.q, radius: params.radius.saturating_sub(1) };
    let mut out = FiniteFn::new();
    if params.radius == 0 {
        return out;
    }
    for e in ball_e(&inner) {
        let x = laplacian_eta1_at(|h| g.get(h), &e, params).expect("interior edge");
        out.set(e, x);
    }
    out
}

/// `Θ f(e)`: the average of `f` over the two endpoints of `e`.
pub fn theta(f: &FiniteFn<Vertex>, params: &TreeParams) -> FiniteFn<Edge> {
    let mut out = FiniteFn::new();
    for e in ball_e(params) {
        let [a, b] = e.endpoints();
        out.set(e, (f.get(&a) + f.get(&b)) / Q::from_integer(2));
    }
    out
}

/// `max |L φ_z − γ(z) φ_z|` over the interior of the ball, with `L = μ_1` or `η_1`.
pub fn eigen_residual(z: C, kind: Kind, params: &TreeParams) -> f64 {
    let q = params.q;
    let inner = TreeParams { q, radius: params.radius.saturating_sub(1) };
    let g = gamma(kind, z, q);
    let phi: Vec<C> = (0..=params.radius as usize + 1).map(|n| spherical(kind, z, n, q)).collect();
    let mut worst = 0.0f64;
    match kind {
        Kind::Vertex => {
            for v in ball(&inner) {
                let l = laplacian_mu1_at(|w: &Vertex| phi[w.len()], &v, params).expect("interior");
                worst = worst.max((l - g * phi[v.len()]).norm());
            }
        }
        Kind::Edge => {
            for e in ball_e(&inner) {
                let l = laplacian_eta1_at(|f: &Edge| phi[f.len()], &e, params).expect("interior");
                worst = worst.max((l - g * phi[e.len()]).norm());
            }
        }
    }
    worst
}

/// Normalization of the Plancherel measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlancherelNorm {
    /// `(q ln q)/(2π(q+1))` for vertices; `(ln q)/(4π)` plus the atom of
    /// mass `(q-1)/(q+1)` at `γ^E = -1/q` for edges.
    Corrected,
    /// `(q ln q)/(2(q+1))` for vertices and `(ln q)/4` for edges, no atom.
    Stated,
}

/// Weight of the continuous part of the Plancherel measure in `dt`.
pub fn plancherel_constant(kind: Kind, norm: PlancherelNorm, q: u32) -> f64 {
    let qf = q as f64;
    let base = match kind {
        Kind::Vertex => qf * lnq(q) / (2.0 * (qf + 1.0)),
        Kind::Edge => lnq(q) / 4.0,
    };
    match norm {
        PlancherelNorm::Corrected => base / std::f64::consts::PI,
        PlancherelNorm::Stated => base,
    }
}

/// Mass of the edge atom at `z = iπ/ln q` (eigenvalue `-1/q`).
pub fn edge_atom_mass(q: u32) -> f64 {
    let qf = q as f64;
    (qf - 1.0) / (qf + 1.0)
}

/// Spectral parameter of the edge atom.
pub fn edge_atom_z(q: u32) -> C {
    C::new(0.0, std::f64::consts::PI / lnq(q))
}

/// Upper end of the critical-line parameter range, `π/ln q`.
pub fn t_max(q: u32) -> f64 {
    std::f64::consts::PI / lnq(q)
}

/// `|c(1/2+it)|^{-2} = 4(q+1)² sin²θ / ((q-1)² + 4q sin²θ)`, `θ = t ln q`.
pub fn plancherel_density_v(t: f64, q: u32) -> f64 {
    let qf = q as f64;
    let s = (t * lnq(q)).sin().powi(2);
    4.0 * (qf + 1.0).powi(2) * s / ((qf - 1.0).powi(2) + 4.0 * qf * s)
}

/// `|d(1/2+it)|^{-2} = 16 q sin²θ / ((q-1)² + 4q sin²θ)`, `θ = t ln q`.
pub fn plancherel_density_e(t: f64, q: u32) -> f64 {
    let qf = q as f64;
    let s = (t * lnq(q)).sin().powi(2);
    16.0 * qf * s / ((qf - 1.0).powi(2) + 4.0 * qf * s)
}

pub fn plancherel_density(kind: Kind, t: f64, q: u32) -> f64 {
    match kind {
        Kind::Vertex => plancherel_density_v(t, q),
        Kind::Edge => plancherel_density_e(t, q),
    }
}

fn crit(t: f64) -> C {
    C::new(0.5, t)
}

/// `Σ_m |h_m|²` over all simplices (each circle counted with its size).
pub fn l2_norm_sq(h: &RadialSeq<C>, q: u32) -> f64 {
    h.values.iter().enumerate().map(|(m, x)| x.norm_sqr() * h.kind.circle_size(q, m) as f64).sum()
}

/// `‖h‖²` from the Plancherel measure.
pub fn plancherel_norm(h: &RadialSeq<C>, grid: QuadratureGrid, q: u32, norm: PlancherelNorm) -> f64 {
    let kind = h.kind;
    let integral = simpson(|t| C::new(spherical_ft_radial(h, crit(t), q).norm_sqr() * plancherel_density(kind, t, q), 0.0), 0.0, t_max(q), grid);
    let mut total = plancherel_constant(kind, norm, q) * integral.re;
    if kind == Kind::Edge && norm == PlancherelNorm::Corrected {
        total += edge_atom_mass(q) * spherical_ft_radial(h, edge_atom_z(q), q).norm_sqr();
    }
    total
}

/// `C ∫ w(t) φ_{1/2+it}(n) dt`, where `w` is already multiplied by the density.
fn inverse_transform(kind: Kind, n: usize, grid: QuadratureGrid, q: u32, norm: PlancherelNorm, weighted: impl Fn(f64) -> C) -> C {
    let integral = simpson(|t| weighted(t) * spherical(kind, crit(t), n, q), 0.0, t_max(q), grid);
    integral * plancherel_constant(kind, norm, q)
}

/// Recovers `h(n)` from `ĥ` on the critical line (plus the edge atom).
pub fn spherical_inversion(h: &RadialSeq<C>, n: usize, grid: QuadratureGrid, q: u32, norm: PlancherelNorm) -> C {
    let kind = h.kind;
    let mut out = inverse_transform(kind, n, grid, q, norm, |t| spherical_ft_radial(h, crit(t), q) * plancherel_density(kind, t, q));
    if kind == Kind::Edge && norm == PlancherelNorm::Corrected {
        let z = edge_atom_z(q);
        out += edge_atom_mass(q) * spherical_ft_radial(h, z, q) * spherical_e(z, n, q);
    }
    out
}

/// Vertex resolvent profile `s_z(v) = (q+1)/(q^{-z} - q^z) q^{-z|v|}`, the
/// prefactor being fixed by `(μ_1 − γ^V(z)) s_z = δ_{v0}` at `v0`.
pub fn resolvent_s(z: C, n: usize, q: u32) -> Result<C> {
    check_resolvent(z, q)?;
    Ok((q as f64 + 1.0) / (qz(q, -z) - qz(q, z)) * qz(q, -z * n as f64))
}

/// Edge resolvent profile `r_z(e) = 2q/(q^{1-z} - q^z - (q-1)) q^{-z|e|}`.
pub fn resolvent_r(z: C, n: usize, q: u32) -> Result<C> {
    check_resolvent(z, q)?;
    let qf = q as f64;
    Ok(2.0 * qf / (qz(q, 1.0 - z) - qz(q, z) - (qf - 1.0)) * qz(q, -z * n as f64))
}

fn check_resolvent(z: C, q: u32) -> Result<()> {
    if z.re <= 0.5 {
        return Err(Error::NotSquareSummable(z.re));
    }
    if is_degenerate(z, q) {
        return Err(Error::Degenerate);
    }
    Ok(())
}

/// `max |(L − γ(z)) y − δ|` over the interior, with `y = s_z` or `r_z`.
pub fn resolvent_residual(z: C, kind: Kind, params: &TreeParams) -> Result<f64> {
    let q = params.q;
    let prof: Vec<C> = (0..=params.radius as usize + 1)
        .map(|n| match kind {
            Kind::Vertex => resolvent_s(z, n, q),
            Kind::Edge => resolvent_r(z, n, q),
        })
        .collect::<Result<_>>()?;
    let g = gamma(kind, z, q);
    let inner = TreeParams { q, radius: params.radius.saturating_sub(1) };
    let mut worst = 0.0f64;
    match kind {
        Kind::Vertex => {
            for v in ball(&inner) {
                let l = laplacian_mu1_at(|w: &Vertex| prof[w.len()], &v, params)?;
                let delta = if v.is_root() { 1.0 } else { 0.0 };
                worst = worst.max((l - g * prof[v.len()] - delta).norm());
            }
        }
        Kind::Edge => {
            for e in ball_e(&inner) {
                let l = laplacian_eta1_at(|f: &Edge| prof[f.len()], &e, params)?;
                let delta = if e == Edge::reference() { 1.0 } else { 0.0 };
                worst = worst.max((l - g * prof[e.len()] - delta).norm());
            }
        }
    }
    Ok(worst)
}

/// `Ψ^V(n)`: 1 at 0, 0 for odd `n`, `((q-1)/(q+1)) q^{-n/2}` for even `n > 0`.
pub fn psi_closed_v(n: usize, q: u32) -> Q {
    if n == 0 {
        Q::one()
    } else if n % 2 == 1 {
        Q::zero()
    } else {
        Q::new(q as i128 - 1, q as i128 + 1) * crate::qpow(q, -(n as i64) / 2)
    }
}

/// `Ψ^E(n)`: 1 at 0, 0 for even `n > 0`, `((q-1)/2) q^{-(n+1)/2}` for odd `n`.
pub fn psi_closed_e(n: usize, q: u32) -> Q {
    if n == 0 {
        Q::one()
    } else if n.is_multiple_of(2) {
        Q::zero()
    } else {
        Q::new(q as i128 - 1, 2) * crate::qpow(q, -((n as i64 + 1) / 2))
    }
}

pub fn psi_closed(kind: Kind, n: usize, q: u32) -> Q {
    match kind {
        Kind::Vertex => psi_closed_v(n, q),
        Kind::Edge => psi_closed_e(n, q),
    }
}

const POLE_TOL: f64 = 1e-14;

/// `Ψ̂^V(w) = 2/(q+1) + 2(q-1)²/((q+1)(4q − (q+1)² γ^V(w)²))`; on the
/// critical line `2/(q+1) + (q-1)²/(2q(q+1) sin²(t ln q))`. The denominator
/// is evaluated as `−(q^w − q^{1−w})²` to avoid cancellation near the poles.
pub fn symbol_psi_hat_v(w: C, q: u32) -> Result<C> {
    let qf = q as f64;
    let den = -(qz(q, w) - qz(q, 1.0 - w)).powi(2);
    if den.norm() < POLE_TOL * 4.0 * qf {
        return Err(Error::Pole);
    }
    Ok(2.0 / (qf + 1.0) + 2.0 * (qf - 1.0).powi(2) / ((qf + 1.0) * den))
}

/// The vertex symbol assembled as `(2/(q+1)) + ((q-1)/(q+1)) L̂_{1/2}(w)` with
/// `L̂_z(w) = (q^z − q^{-z})/(q+1) · 2γ(z)/(γ(z)² − γ(w)²)`. Its second term is
/// twice that of [`symbol_psi_hat_v`]; kept to document the discrepancy.
pub fn symbol_psi_hat_v_stated(w: C, q: u32) -> Result<C> {
    let qf = q as f64;
    let z = C::new(0.5, 0.0);
    let gz = gamma_v(z, q);
    let gw = gamma_v(w, q);
    let den = gz * gz - gw * gw;
    if den.norm() < POLE_TOL {
        return Err(Error::Pole);
    }
    let l = (qz(q, z) - qz(q, -z)) / (qf + 1.0) * 2.0 * gz / den;
    Ok(2.0 / (qf + 1.0) + (qf - 1.0) / (qf + 1.0) * l)
}

/// `Ψ̂^E(w) = 1 − (q-1)²/(4q²(γ^E(w) − (q-1)/(2q))² − 4q)`, with the
/// denominator evaluated as `(q^w − q^{1−w})²`.
pub fn symbol_psi_hat_e(w: C, q: u32) -> Result<C> {
    let qf = q as f64;
    let den = (qz(q, w) - qz(q, 1.0 - w)).powi(2);
    if den.norm() < POLE_TOL * 4.0 * qf {
        return Err(Error::Pole);
    }
    Ok(1.0 - (qf - 1.0).powi(2) / den)
}

pub fn symbol_psi_hat(kind: Kind, w: C, q: u32) -> Result<C> {
    match kind {
        Kind::Vertex => symbol_psi_hat_v(w, q),
        Kind::Edge => symbol_psi_hat_e(w, q),
    }
}

/// `Ψ̂(1/2+it)·|c|^{-2}` (resp. `|d|^{-2}`), which is constant in `t`:
/// `2(q+1)/q` for vertices and `4` for edges.
pub fn symbol_times_density(kind: Kind, q: u32) -> f64 {
    let qf = q as f64;
    match kind {
        Kind::Vertex => 2.0 * (qf + 1.0) / qf,
        Kind::Edge => 4.0,
    }
}

/// The kernel `Ψ(n)` recovered from its symbol by spherical inversion
/// (`Ψ̂^E` vanishes at the edge atom, so only the continuous part enters).
pub fn kernel_from_symbol(kind: Kind, n: usize, grid: QuadratureGrid, q: u32) -> C {
    let k = symbol_times_density(kind, q);
    inverse_transform(kind, n, grid, q, PlancherelNorm::Corrected, |_| C::new(k, 0.0))
}

/// `Φ(n)`: spherical inversion of `1/Ψ̂` on the critical line, computed as
/// `C ∫ density(t)² / (Ψ̂·density) φ_{1/2+it}(n) dt` so that the endpoint
/// values are the exact limits (zero).
pub fn blur_inverse_phi(kind: Kind, n: usize, grid: QuadratureGrid, q: u32) -> C {
    let k = symbol_times_density(kind, q);
    inverse_transform(kind, n, grid, q, PlancherelNorm::Corrected, |t| C::new(plancherel_density(kind, t, q).powi(2) / k, 0.0))
}

/// Builds `Φ` on `|x| ≤ R`, convolves with the exact kernel `Ψ` and returns
/// `max_{|x| ≤ R} |(Φ_R * Ψ)(x) − δ(x)|`.
pub fn blur_roundtrip_residual(kind: Kind, radius: u32, grid: QuadratureGrid, q: u32) -> Result<f64> {
    let params = TreeParams::new(q, radius)?;
    let phi: Vec<f64> = (0..=radius as usize).map(|n| blur_inverse_phi(kind, n, grid, q).re).collect();
    let psi = |n: usize| q_to_f64(psi_closed(kind, n, q));
    let mut worst = 0.0f64;
    match kind {
        Kind::Vertex => {
            let verts = ball(&params);
            for n in 0..=radius as usize {
                let x = crate::tree::sphere_words(n, q).into_iter().next().expect("circle nonempty");
                let s: f64 = verts.iter().map(|w| phi[w.len()] * psi(dist_v(w, &x))).sum();
                let delta = if n == 0 { 1.0 } else { 0.0 };
                worst = worst.max((s - delta).abs());
            }
        }
        Kind::Edge => {
            let edges = ball_e(&params);
            for n in 0..=radius as usize {
                let x = crate::tree::edges_of_len(n, q).into_iter().next().expect("circle nonempty");
                let s: f64 = edges.iter().map(|e| phi[e.len()] * psi(dist_e(e, &x))).sum();
                let delta = if n == 0 { 1.0 } else { 0.0 };
                worst = worst.max((s - delta).abs());
            }
        }
    }
    Ok(worst)
}

/// `sup_x (1+|x|)^r |f(x)| q^{|x|/2}`.
pub fn schwartz_seminorm<S: Simplex>(f: &FiniteFn<S>, r: f64, q: u32) -> f64 {
    f.iter()
        .map(|(s, x)| {
            let n = s.radius() as f64;
            (1.0 + n).powf(r) * q_to_f64(*x).abs() * (q as f64).powf(n / 2.0)
        })
        .fold(0.0, f64::max)
}

/// Points `γ(1/p + it)` for `t` on a uniform grid over one period.
pub fn spectrum_sample(kind: Kind, p: f64, n: usize, q: u32) -> Result<Vec<C>> {
    if !(p > 1.0 && p <= 2.0) {
        return Err(Error::InvalidParams(format!("p must lie in (1, 2], got {p}")));
    }
    if n == 0 {
        return Err(Error::InvalidParams("need at least one sample".into()));
    }
    let period = 2.0 * std::f64::consts::PI / lnq(q);
    Ok((0..n).map(|k| gamma(kind, C::new(1.0 / p, period * k as f64 / n as f64), q)).collect())
}

/// `P_n(γ)` (vertices) or `Q_n(γ)` (edges) from the three-term recurrences
/// `(q+1)γP_n = P_{n-1} + qP_{n+1}` and `2qγQ_n = Q_{n-1} + (q-1)Q_n + qQ_{n+1}`.
pub fn spherical_polynomial(kind: Kind, n: usize, g: C, q: u32) -> C {
    let qf = q as f64;
    let (mut prev, mut cur) = (C::one(), g);
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = match kind {
            Kind::Vertex => ((qf + 1.0) * g * cur - prev) / qf,
            Kind::Edge => (2.0 * qf * g * cur - prev - (qf - 1.0) * cur) / qf,
        };
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: C, b: C, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn gamma_values() {
        for q in [2, 3, 5] {
            let qf = q as f64;
            assert!(close(gamma_v(C::new(1.0, 0.0), q), C::one(), 1e-14));
            assert!(close(gamma_v(C::new(0.5, 0.0), q), C::new(2.0 * qf.sqrt() / (qf + 1.0), 0.0), 1e-14));
            assert!(close(gamma_e(C::new(0.5, 0.0), q), C::new((qf - 1.0) / (2.0 * qf) + 1.0 / qf.sqrt(), 0.0), 1e-14));
        }
    }

    #[test]
    fn spherical_initial_values() {
        for z in [C::new(0.3, 0.7), C::new(0.5, 0.0), C::new(0.9, -1.1)] {
            for kind in [Kind::Vertex, Kind::Edge] {
                assert!(close(spherical(kind, z, 0, 3), C::one(), 1e-12));
                assert!(close(spherical(kind, z, 1, 3), gamma(kind, z, 3), 1e-12));
            }
        }
    }

    #[test]
    fn degenerate_branch_is_the_limit() {
        for q in [2, 3] {
            let z = C::new(0.5, t_max(q));
            assert!(is_degenerate(z, q));
            for kind in [Kind::Vertex, Kind::Edge] {
                let near = C::new(0.5 + 1e-6, t_max(q));
                for n in 0..6 {
                    assert!(close(spherical(kind, z, n, q), spherical(kind, near, n, q), 1e-4));
                }
            }
        }
    }

    #[test]
    fn polynomial_p2() {
        let g = C::new(0.37, 0.2);
        let q = 3.0;
        assert!(close(spherical_polynomial(Kind::Vertex, 2, g, 3), ((q + 1.0) * g * g - 1.0) / q, 1e-14));
    }

    #[test]
    fn grid_validation() {
        assert!(QuadratureGrid::new(7).is_err());
        assert!(QuadratureGrid::new(6).is_err());
        assert!(QuadratureGrid::new(8).is_ok());
    }
}
