//! Flag projections and lifts, and inversion of the flag Radon transform
//! by factorization through the vertex and edge transforms.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::horo::{HoroFn, HoroFnF, HoroFnV, HoroKind};
use crate::inversion::{cavalieri_check_e, cavalieri_check_v, default_coeffs_e, default_coeffs_v, invert_ball_e, invert_ball_v};
use crate::scalar::FiniteFn;
use crate::tree::{ball_f, dist_e, dist_mixed, dist_v, Edge, Flag, TreeParams, Vertex};
use crate::boundary::Ray;
use crate::{Error, Result, Q};

/// The pair of vertex and edge projections of a flag function.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FlagPair {
    pub g_e: FiniteFn<Edge>,
    pub g_v: FiniteFn<Vertex>,
}

impl FlagPair {
    /// `Σ g_V − Σ g_E`; zero exactly on the image of the projection.
    pub fn image_residual(&self) -> Q {
        self.g_v.total() - self.g_e.total()
    }
}

/// Sums a flag function over the fibres of the vertex and edge projections.
pub fn flag_project(h: &FiniteFn<Flag>) -> FlagPair {
    let mut p = FlagPair::default();
    for (f, x) in h.iter() {
        p.g_v.add_at(f.vertex(), *x);
        p.g_e.add_at(f.edge.clone(), *x);
    }
    p
}

/// Value at `f` of the lift of a valid pair: backward-sector minus
/// forward-sector sums, mixed with weight `λ`.
pub fn flag_lift_at(p: &FlagPair, lambda: Q, f: &Flag) -> Q {
    let vf = f.vertex();
    let ef = &f.edge;
    let (mut back, mut fwd) = (Q::zero(), Q::zero());
    for (e, x) in p.g_e.iter() {
        let de = Q::from_integer(dist_e(e, ef) as i128);
        let dm = dist_mixed(&vf, e);
        if de < dm {
            back += *x;
        } else {
            fwd += *x;
        }
    }
    for (v, x) in p.g_v.iter() {
        let dm = dist_mixed(v, ef);
        let dv = Q::from_integer(dist_v(v, &vf) as i128);
        if dm < dv {
            back -= *x;
        } else {
            fwd -= *x;
        }
    }
    lambda * back - (Q::one() - lambda) * fwd
}

/// Lifts a pair satisfying `Σ g_V = Σ g_E` to a flag function whose
/// projections are the pair. The result does not depend on `λ`.
pub fn flag_lift(p: &FlagPair, lambda: Q, q: u32) -> Result<FiniteFn<Flag>> {
    let residual = p.image_residual();
    if !residual.is_zero() {
        return Err(Error::ImageCondition { residual });
    }
    let radius = p.g_v.support_radius().max(p.g_e.support_radius()) + 1;
    let params = TreeParams::new(q, radius as u32)?;
    let mut out = FiniteFn::new();
    if p.g_v.is_zero() && p.g_e.is_zero() {
        return Ok(out);
    }
    for f in ball_f(&params) {
        let x = flag_lift_at(p, lambda, &f);
        out.set(f, x);
    }
    Ok(out)
}

/// The default lift weight `λ = 1/2`.
pub fn default_lambda() -> Q {
    Q::new(1, 2)
}

/// Vertex part of a flag-horospherical function: sums over the edge index.
pub fn project_horo_v(f: &HoroFnF) -> Result<HoroFnV> {
    let mut out = HoroFn::zero(f.q(), HoroKind::Vertex, f.depth())?;
    for i in 0..f.arcs().len() {
        for (&(_, nv), &x) in f.row(i) {
            out.add(i, nv, x);
        }
    }
    Ok(out)
}

/// Edge part of a flag-horospherical function: sums over the vertex index.
pub fn project_horo_e(f: &HoroFnF) -> Result<HoroFn<i64>> {
    let mut out = HoroFn::zero(f.q(), HoroKind::Edge, f.depth())?;
    for i in 0..f.arcs().len() {
        for (&(ne, _), &x) in f.row(i) {
            out.add(i, ne, x);
        }
    }
    Ok(out)
}

/// Recovers the projected pair of `h` from `F = R_F h`, for `h` supported on
/// flags whose edge has length at most `radius`.
pub fn invert_flag_pair(f: &HoroFnF, radius: u32) -> Result<FlagPair> {
    if f.kind() != HoroKind::Flag {
        return Err(Error::InvalidParams("flag inversion needs flag data".into()));
    }
    if f.depth() < radius as usize + 1 {
        return Err(Error::InsufficientDepth { needed: radius as usize + 1, depth: f.depth() });
    }
    let fv = project_horo_v(f)?;
    let fe = project_horo_e(f)?;
    cavalieri_check_v(&fv)?.into_result()?;
    cavalieri_check_e(&fe)?.into_result()?;
    let q = f.q();
    let cv = default_coeffs_v((fv.index_radius() + radius as i64 + 1) as u32, q);
    let ce = default_coeffs_e((fe.index_radius() + radius as i64 + 1) as u32, q);
    Ok(FlagPair { g_v: invert_ball_v(&fv, radius + 1, &cv)?, g_e: invert_ball_e(&fe, radius, &ce)? })
}

/// `h(f)` from `F = R_F h`.
pub fn invert_flag(f: &HoroFnF, flag: &Flag, radius: u32, lambda: Q) -> Result<Q> {
    let p = invert_flag_pair(f, radius)?;
    let residual = p.image_residual();
    if !residual.is_zero() {
        return Err(Error::ImageCondition { residual });
    }
    Ok(flag_lift_at(&p, lambda, flag))
}

/// Reconstructs `h` on all flags with edge length at most `radius`.
pub fn invert_flag_ball(f: &HoroFnF, radius: u32, lambda: Q) -> Result<FiniteFn<Flag>> {
    let p = invert_flag_pair(f, radius)?;
    let residual = p.image_residual();
    if !residual.is_zero() {
        return Err(Error::ImageCondition { residual });
    }
    let params = TreeParams::new(f.q(), radius)?;
    let mut out = FiniteFn::new();
    for fl in ball_f(&params) {
        let x = flag_lift_at(&p, lambda, &fl);
        out.set(fl, x);
    }
    Ok(out)
}

/// For the `q+1` flags at `v`, counts how many carry each edge index along `ω`.
pub fn flag_index_profile(v: &Vertex, ray: &Ray, q: u32) -> Result<BTreeMap<i64, usize>> {
    let params = TreeParams::new(q, v.len() as u32 + 1)?;
    let mut out = BTreeMap::new();
    for w in crate::tree::neighbors(v, &params) {
        let e = Edge::from_endpoints(v, &w)?;
        let f = Flag::new(e, v)?;
        let (ne, _) = crate::horo::h_index_flag(&f, ray)?;
        *out.entry(ne).or_insert(0) += 1;
    }
    Ok(out)
}
