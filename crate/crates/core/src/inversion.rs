//! Intersection cardinalities, inversion coefficients, exact inversion of the
//! vertex and edge Radon transforms, and the Cavalieri range tests.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::boundary::{arc_measure_e, arc_measure_v, Arc};
use crate::horo::{h_e, h_v, HoroFn, HoroFnE, HoroFnV, HoroKind};
use crate::scalar::{FiniteFn, Kind, Simplex};
use crate::tree::{edges_of_len, sphere_words, Edge, Vertex};
use crate::{qpow, Error, Result, Q};

fn qi(q: u32) -> i128 {
    q as i128
}

/// Number of vertices at distance `m` from `v0` on a horosphere of index `n`.
pub fn k_v(n: i64, m: u32, q: u32) -> i128 {
    let m = m as i64;
    if n == m {
        1
    } else if m > 0 && n == -m {
        qi(q).pow(m as u32)
    } else if m > n.abs() && (m - n) % 2 == 0 {
        (qi(q) - 1) * qi(q).pow(((m - n - 2) / 2) as u32)
    } else {
        0
    }
}

/// Number of edges at distance `m` from `e0` on an edge-horosphere of index `n`.
pub fn k_e(n: i64, m: u32, q: u32) -> i128 {
    let m = m as i64;
    if n == m {
        1
    } else if m > 0 && n == -m {
        qi(q).pow(m as u32)
    } else if m > n.abs() && (m + n).rem_euclid(2) == 1 {
        (qi(q) - 1) * qi(q).pow(((m - n - 1) / 2) as u32)
    } else {
        0
    }
}

/// Counts the circle-`m` vertices of index `n` along the ray `0101…`.
pub fn enumerate_k_v(n: i64, m: u32, q: u32) -> i128 {
    let word: Vec<u8> = (0..m.max(1)).map(|i| (i % 2) as u8).collect();
    sphere_words(m as usize, q).iter().filter(|v| h_v(v, &word) == n).count() as i128
}

/// Counts the circle-`m` edges of index `n` along the ray `0101…`.
pub fn enumerate_k_e(n: i64, m: u32, q: u32) -> i128 {
    let word: Vec<u8> = (0..m + 1).map(|i| (i % 2) as u8).collect();
    edges_of_len(m as usize, q).iter().filter(|e| h_e(e, &word) == n).count() as i128
}

/// Default vertex coefficients (choice 1, the sparsest family).
pub fn default_coeffs_v(range: u32, q: u32) -> InvCoeffs {
    inv_coeffs_v(Choice::One, range, q).expect("choice 1 is always constructible")
}

/// Default edge coefficients. Choice 2: the sparse even-only family fails the
/// row-by-column identity already at `m = 1` (its sum there is `q − 1`).
pub fn default_coeffs_e(range: u32, q: u32) -> InvCoeffs {
    inv_coeffs_e(Choice::Two, range, q).expect("choice 2 is always constructible")
}

/// Which explicit coefficient family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Choice {
    One,
    Two,
    Custom,
}

impl TryFrom<u8> for Choice {
    type Error = Error;
    fn try_from(c: u8) -> Result<Choice> {
        match c {
            1 => Ok(Choice::One),
            2 => Ok(Choice::Two),
            _ => Err(Error::InvalidParams(format!("coefficient choice must be 1 or 2, got {c}"))),
        }
    }
}

/// Inversion coefficients `d_n` (vertices) or `l_n` (edges) on `[-N, N]`.
#[derive(Debug, Clone, PartialEq)]
pub struct InvCoeffs {
    pub kind: Kind,
    pub choice: Choice,
    pub q: u32,
    pub range: i64,
    values: BTreeMap<i64, Q>,
}

impl InvCoeffs {
    fn from_fn(kind: Kind, choice: Choice, q: u32, range: i64, f: impl Fn(i64) -> Q) -> InvCoeffs {
        let values = (-range..=range).map(|n| (n, f(n))).filter(|(_, x)| !x.is_zero()).collect();
        InvCoeffs { kind, choice, q, range, values }
    }

    pub fn get(&self, n: i64) -> Q {
        self.values.get(&n).copied().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Q)> + '_ {
        self.values.iter().map(|(n, x)| (*n, *x))
    }
}

/// Vertex coefficients. Choice 1: `d_0 = 1`, `d_n = 1-q` for even `n > 0`.
/// Choice 2: `d_n = 1` for even `n ≤ 0`, `1-q-q^n` for even `n > 0`.
pub fn inv_coeffs_v(choice: Choice, range: u32, q: u32) -> Result<InvCoeffs> {
    let one = Q::one();
    let qq = Q::from_integer(qi(q));
    let c = match choice {
        Choice::One => InvCoeffs::from_fn(Kind::Vertex, choice, q, range as i64, |n| {
            if n == 0 {
                one
            } else if n > 0 && n % 2 == 0 {
                one - qq
            } else {
                Q::zero()
            }
        }),
        Choice::Two => InvCoeffs::from_fn(Kind::Vertex, choice, q, range as i64, |n| {
            if n % 2 != 0 {
                Q::zero()
            } else if n <= 0 {
                one
            } else {
                one - qq - qpow(q, n)
            }
        }),
        Choice::Custom => return inv_coeffs_custom(Kind::Vertex, &BTreeMap::new(), range, q),
    };
    Ok(c)
}

/// Edge coefficients. Choice 1: `l_0 = 1`, `l_n = ((1-q)/(1+q))(1-(-q)^n)` for
/// even `n > 0`, else 0. Choice 2: `l_n = (-1)^n` for `n ≤ 0`,
/// `2(1-(-q)^n)/(1+q) - 1` for `n > 0`.
pub fn inv_coeffs_e(choice: Choice, range: u32, q: u32) -> Result<InvCoeffs> {
    let one = Q::one();
    let qq = Q::from_integer(qi(q));
    let mq = |n: i64| num_traits::pow(-qq, n as usize);
    let c = match choice {
        Choice::One => InvCoeffs::from_fn(Kind::Edge, choice, q, range as i64, |n| {
            if n == 0 {
                one
            } else if n > 0 && n % 2 == 0 {
                (one - qq) / (one + qq) * (one - mq(n))
            } else {
                Q::zero()
            }
        }),
        Choice::Two => InvCoeffs::from_fn(Kind::Edge, choice, q, range as i64, |n| {
            if n <= 0 {
                if n % 2 == 0 {
                    one
                } else {
                    -one
                }
            } else {
                Q::from_integer(2) * (one - mq(n)) / (one + qq) - one
            }
        }),
        Choice::Custom => return inv_coeffs_custom(Kind::Edge, &BTreeMap::new(), range, q),
    };
    Ok(c)
}

fn kcard(kind: Kind, n: i64, m: u32, q: u32) -> Q {
    Q::from_integer(match kind {
        Kind::Vertex => k_v(n, m, q),
        Kind::Edge => k_e(n, m, q),
    })
}

/// Solves the row-by-column system `Σ_n c_n k(n,m) = δ_{m,0}` for the
/// nonnegative coefficients, given arbitrary values at negative indices.
pub fn inv_coeffs_custom(kind: Kind, seeds: &BTreeMap<i64, Q>, range: u32, q: u32) -> Result<InvCoeffs> {
    for (&n, &x) in seeds {
        if n > 0 || (n == 0 && !x.is_one()) {
            return Err(Error::InconsistentSeeds);
        }
    }
    let range = range as i64;
    let mut vals: BTreeMap<i64, Q> = seeds.iter().filter(|(n, _)| **n < 0 && **n >= -range).map(|(n, x)| (*n, *x)).collect();
    vals.insert(0, Q::one());
    for m in 1..=range {
        let s: Q = (-m..m).map(|n| vals.get(&n).copied().unwrap_or_else(Q::zero) * kcard(kind, n, m as u32, q)).sum();
        vals.insert(m, -s);
    }
    vals.retain(|_, x| !x.is_zero());
    Ok(InvCoeffs { kind, choice: Choice::Custom, q, range, values: vals })
}

/// `Σ_n c_n k(n,m) − δ_{m,0}`.
pub fn row_by_column_residual(c: &InvCoeffs, m: u32) -> Q {
    let s: Q = c.iter().map(|(n, x)| x * kcard(c.kind, n, m, c.q)).sum();
    if m == 0 {
        s - Q::one()
    } else {
        s
    }
}

/// `d_n + q^n d_{-n} + (q-1) Σ_{j=1}^{n-1} q^{j-1} d_{n-2j}` for `n ≥ 1`.
pub fn recurrence_residual_v(d: &InvCoeffs, n: i64) -> Q {
    let q = d.q;
    let mut s = d.get(n) + qpow(q, n) * d.get(-n);
    for j in 1..n {
        s += Q::from_integer(qi(q) - 1) * qpow(q, j - 1) * d.get(n - 2 * j);
    }
    s
}

/// `Σ_n c_n φ_n`.
pub fn invert_radial(phi: &BTreeMap<i64, Q>, c: &InvCoeffs) -> Q {
    phi.iter().map(|(n, x)| c.get(*n) * x).sum()
}

fn check_range(f: &HoroFn<i64>, extra: usize, c: &InvCoeffs) -> Result<()> {
    let needed = f.index_radius() + extra as i64;
    if c.range < needed {
        return Err(Error::CoefficientRange { needed, available: c.range });
    }
    Ok(())
}

/// `f(v) = Σ_n d_n ∫ F(ω, n + h(v,v0,ω)) q^{h(v,v0,ω)} dν_{v0}(ω)`.
pub fn invert_full_v(f: &HoroFnV, v: &Vertex, c: &InvCoeffs) -> Result<Q> {
    if f.kind() != HoroKind::Vertex || c.kind != Kind::Vertex {
        return Err(Error::InvalidParams("vertex inversion needs vertex data and coefficients".into()));
    }
    if f.depth() < v.len() {
        return Err(Error::InsufficientDepth { needed: v.len(), depth: f.depth() });
    }
    check_range(f, v.len(), c)?;
    let q = f.q();
    let mut total = Q::zero();
    for (i, a) in f.arcs().iter().enumerate() {
        let h = h_v(v, a.word());
        let inner: Q = f.row(i).iter().map(|(k, x)| c.get(k - h) * x).sum();
        if !inner.is_zero() {
            total += inner * qpow(q, h) * arc_measure_v(a, q);
        }
    }
    Ok(total)
}

/// `g(e) = Σ_n l_n ∫ F(ω, n + h(e,e0,ω)) q^{h(e,e0,ω)} dν_{e0}(ω)`.
pub fn invert_full_e(f: &HoroFnE, e: &Edge, c: &InvCoeffs) -> Result<Q> {
    if f.kind() != HoroKind::Edge || c.kind != Kind::Edge {
        return Err(Error::InvalidParams("edge inversion needs edge data and coefficients".into()));
    }
    let needed = e.base.len() + 1;
    if f.depth() < needed {
        return Err(Error::InsufficientDepth { needed, depth: f.depth() });
    }
    check_range(f, e.len() + 1, c)?;
    let q = f.q();
    let mut total = Q::zero();
    for (i, a) in f.arcs().iter().enumerate() {
        let h = h_e(e, a.word());
        let inner: Q = f.row(i).iter().map(|(k, x)| c.get(k - h) * x).sum();
        if !inner.is_zero() {
            total += inner * qpow(q, h) * arc_measure_e(a, q);
        }
    }
    Ok(total)
}

/// Evaluates the inversion sum at many simplices, caching the per-arc inner
/// sums `Σ_k c_{k−h} F(ω,k) q^h ν(ω)` by index `h`.
fn invert_many<S: Simplex>(
    f: &HoroFn<i64>,
    sims: Vec<S>,
    c: &InvCoeffs,
    index: impl Fn(&S, &[u8]) -> i64,
    measure: impl Fn(&Arc, u32) -> Q,
) -> FiniteFn<S> {
    let q = f.q();
    let mut totals = vec![Q::zero(); sims.len()];
    for (i, a) in f.arcs().iter().enumerate() {
        let nu = measure(a, q);
        let mut cache: BTreeMap<i64, Q> = BTreeMap::new();
        for (s, total) in sims.iter().zip(totals.iter_mut()) {
            let h = index(s, a.word());
            let w = cache.entry(h).or_insert_with(|| {
                let inner: Q = f.row(i).iter().map(|(k, x)| c.get(k - h) * x).sum();
                inner * qpow(q, h) * nu
            });
            *total += *w;
        }
    }
    sims.into_iter().zip(totals).collect()
}

/// Inverts at every vertex of the ball of the given radius.
pub fn invert_ball_v(f: &HoroFnV, radius: u32, c: &InvCoeffs) -> Result<FiniteFn<Vertex>> {
    let verts: Vec<Vertex> = (0..=radius as usize).flat_map(|n| sphere_words(n, f.q())).collect();
    if let Some(far) = verts.last() {
        // validates kind, depth and coefficient range for the largest radius
        invert_full_v(f, far, c)?;
    }
    Ok(invert_many(f, verts, c, h_v, arc_measure_v))
}

/// Inverts at every edge of the edge ball of the given radius.
pub fn invert_ball_e(f: &HoroFnE, radius: u32, c: &InvCoeffs) -> Result<FiniteFn<Edge>> {
    let edges: Vec<Edge> = (0..=radius as usize).flat_map(|n| edges_of_len(n, f.q())).collect();
    if let Some(deepest) = edges.iter().max_by_key(|e| (e.base.len(), e.len())) {
        invert_full_e(f, deepest, c)?;
    }
    Ok(invert_many(f, edges, c, h_e, arc_measure_e))
}

/// Exact residuals of a range test plus the arc-total constancy check.
#[derive(Debug, Clone, PartialEq)]
pub struct CavalieriReport {
    pub residuals: BTreeMap<i64, Q>,
    pub arc_total: Option<Q>,
    pub arc_total_constant: bool,
}

impl CavalieriReport {
    pub fn passes(&self) -> bool {
        self.arc_total_constant && self.residuals.values().all(Zero::is_zero)
    }

    /// First index with a nonzero residual.
    pub fn first_failure(&self) -> Option<(i64, Q)> {
        self.residuals.iter().find(|(_, r)| !r.is_zero()).map(|(n, r)| (*n, *r))
    }

    pub fn into_result(self) -> Result<CavalieriReport> {
        match self.first_failure() {
            Some((n, residual)) => Err(Error::Cavalieri { n, residual }),
            None if !self.arc_total_constant => Err(Error::Cavalieri { n: i64::MIN, residual: Q::zero() }),
            None => Ok(self),
        }
    }
}

fn arc_total_info(f: &HoroFn<i64>) -> (Option<Q>, bool) {
    let totals = f.arc_totals();
    let first = totals.first().copied();
    (first, totals.iter().all(|t| Some(*t) == first))
}

fn report(f: &HoroFn<i64>, ns: impl Iterator<Item = i64>, residual: impl Fn(i64) -> Q) -> CavalieriReport {
    let (arc_total, arc_total_constant) = arc_total_info(f);
    CavalieriReport { residuals: ns.map(|n| (n, residual(n))).collect(), arc_total, arc_total_constant }
}

fn index_bound(f: &HoroFn<i64>) -> i64 {
    (f.depth() as i64).max(f.index_radius())
}

/// `q^n ∫ F(·,n) dν_{v0} − ∫ F(·,−n) dν_{v0}` for `n = 1..`.
pub fn cavalieri_check_v(f: &HoroFnV) -> Result<CavalieriReport> {
    if f.kind() != HoroKind::Vertex {
        return Err(Error::InvalidParams("vertex Cavalieri test needs vertex data".into()));
    }
    let q = f.q();
    Ok(report(f, 1..=index_bound(f), |n| {
        qpow(q, n) * f.integrate_with(n, |a| arc_measure_v(a, q)) - f.integrate_with(-n, |a| arc_measure_v(a, q))
    }))
}

/// `q^n ∫ F(·,n) dν_{e0} − ∫ F(·,−n) dν_{e0}` for `n = 1..`.
pub fn cavalieri_check_e(f: &HoroFnE) -> Result<CavalieriReport> {
    if f.kind() != HoroKind::Edge {
        return Err(Error::InvalidParams("edge Cavalieri test needs edge data".into()));
    }
    let q = f.q();
    Ok(report(f, 1..=index_bound(f), |n| {
        qpow(q, n) * f.integrate_with(n, |a| arc_measure_e(a, q)) - f.integrate_with(-n, |a| arc_measure_e(a, q))
    }))
}

/// Mixed edge test: edge horospheres indexed by their half-integer index
/// relative to `v0`, `q^{n+1} ∫ ψ(·,n+½) dν_{v0} − ∫ ψ(·,−n−½) dν_{v0}`, `n ≥ 0`.
pub fn cavalieri_check_mixed_e(f: &HoroFnE) -> Result<CavalieriReport> {
    if f.kind() != HoroKind::Edge {
        return Err(Error::InvalidParams("mixed edge test needs edge data".into()));
    }
    let q = f.q();
    // half-integer index k+1/2 relative to v0 is e0-chart index k + 1 - s0
    let psi = |k: i64| -> Q {
        f.arcs().iter().enumerate().map(|(i, a)| arc_measure_v(a, q) * f.get(i, k + 1 - a.s0())).sum()
    };
    Ok(report(f, 0..=index_bound(f), |n| qpow(q, n + 1) * psi(n) - psi(-n - 1)))
}

/// Mixed vertex test: vertex horospheres indexed relative to `e0`,
/// `q^n ∫ φ(·,n+½) dν_{e0} − ∫ φ(·,−n−½) dν_{e0}`, `n ≥ 0`.
pub fn cavalieri_check_mixed_v(f: &HoroFnV) -> Result<CavalieriReport> {
    if f.kind() != HoroKind::Vertex {
        return Err(Error::InvalidParams("mixed vertex test needs vertex data".into()));
    }
    let q = f.q();
    // half-integer index k+1/2 relative to e0 is v0-chart index k + s0
    let phi = |k: i64| -> Q {
        f.arcs().iter().enumerate().map(|(i, a)| arc_measure_e(a, q) * f.get(i, k + a.s0())).sum()
    };
    Ok(report(f, 0..=index_bound(f), |n| qpow(q, n) * phi(n) - phi(-n - 1)))
}

/// Circle sums `χ_j(f) = Σ_{|v|=j} f(v)`.
pub fn circle_sums(f: &FiniteFn<Vertex>) -> Vec<Q> {
    let mut chi = vec![Q::zero(); f.support_radius() + 1];
    for (v, x) in f.iter() {
        chi[v.len()] += *x;
    }
    chi
}

/// Row `n` of the mixed edge conditions for `Ξ(R_V f)`, in circle sums:
/// `q(q+1)χ_0 − qχ_1 + (q−1)Σ_j (q^{1−j}χ_{2j} − q^{−j}χ_{2j+1})` for `n = 0`,
/// `q²χ_n − qχ_{n+1} + (q−1)Σ_j (q^{1−j}χ_{2j+n} − q^{−j}χ_{2j+n+1})` for `n > 0`.
pub fn nonoverlap_row(n: usize, chi: &[Q], q: u32) -> Q {
    let c = |j: usize| chi.get(j).copied().unwrap_or_else(Q::zero);
    let qq = Q::from_integer(qi(q));
    let lead = if n == 0 { qq * (qq + Q::one()) } else { qq * qq };
    let mut s = lead * c(n) - qq * c(n + 1);
    let mut j = 1;
    while 2 * j + n < chi.len() {
        let jj = j as i64;
        s += (qq - Q::one()) * (qpow(q, 1 - jj) * c(2 * j + n) - qpow(q, -jj) * c(2 * j + n + 1));
        j += 1;
    }
    s
}

/// First row (and its value) that does not vanish; `None` iff all circle sums vanish.
pub fn range_nonoverlap_probe(f: &FiniteFn<Vertex>, q: u32) -> Option<(usize, Q)> {
    let chi = circle_sums(f);
    (0..chi.len()).map(|n| (n, nonoverlap_row(n, &chi, q))).find(|(_, x)| !x.is_zero())
}

/// The row functionals restricted to circle sums `χ_0..χ_N`, as a matrix.
pub fn nonoverlap_matrix(nmax: usize, q: u32) -> Vec<Vec<Q>> {
    (0..=nmax)
        .map(|n| {
            (0..=nmax)
                .map(|j| {
                    let mut chi = vec![Q::zero(); nmax + 1];
                    chi[j] = Q::one();
                    nonoverlap_row(n, &chi, q)
                })
                .collect()
        })
        .collect()
}

/// Rank of a rational matrix by exact Gaussian elimination.
pub fn exact_rank(rows: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(rank, p);
        let piv = m[rank][col];
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let fac = m[r][col] / piv;
                let pivot_row = m[rank].clone();
                for (x, p) in m[r].iter_mut().zip(&pivot_row).skip(col) {
                    *x -= fac * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// The inner product `⟨f, g⟩` recovered from Radon transforms alone:
/// `Σ_ω ν(ω) Σ_{j,k} d_{j−k} q^k F(ω,j) G(ω,k)`.
pub fn plancherel_pairing_v(f: &HoroFnV, g: &HoroFnV, c: &InvCoeffs) -> Result<Q> {
    f.check_same_depth(g)?;
    let needed = f.index_radius() + g.index_radius();
    if c.range < needed {
        return Err(Error::CoefficientRange { needed, available: c.range });
    }
    let q = f.q();
    let mut total = Q::zero();
    for (i, a) in f.arcs().iter().enumerate() {
        let mut s = Q::zero();
        for (j, x) in f.row(i) {
            for (k, y) in g.row(i) {
                s += c.get(j - k) * qpow(q, *k) * x * y;
            }
        }
        total += s * arc_measure_v(a, q);
    }
    Ok(total)
}
