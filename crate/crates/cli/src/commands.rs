//! The subcommands. Each builds a [`Report`] of documents and checks.

use std::collections::BTreeSet;

use anyhow::{bail, ensure, Context, Result};
use horotree::boundary::arc_measure_v;
use horotree::flags::{flag_lift, flag_project, invert_flag_ball, project_horo_e, project_horo_v};
use horotree::horo::{canonical_map_xi_inv, dual_radon_e, dual_radon_v, radon_e, radon_f, radon_v, HoroKind};
use horotree::inversion::{
    cavalieri_check_e, cavalieri_check_v, default_coeffs_e, default_coeffs_v, enumerate_k_e, enumerate_k_v, inv_coeffs_e,
    inv_coeffs_v, invert_ball_e, invert_ball_v, k_e, k_v, row_by_column_residual, CavalieriReport, Choice, InvCoeffs,
};
use horotree::scalar::{fmt_q, FiniteFn, Kind, RadialSeq, Simplex};
use horotree::spectral::{
    edge_atom_mass, gamma, gamma_v, kernel_from_symbol, l2_norm_sq, plancherel_density, plancherel_norm, psi_closed,
    psi_closed_e, psi_closed_v, spectrum_sample, spherical, spherical_inversion, symbol_psi_hat, symbol_times_density,
    t_max, PlancherelNorm, QuadratureGrid,
};
use horotree::support::{convex_sets_diam2, support_theorem_holds};
use horotree::tree::{ball_f, circle, circle_e, dist_f, Edge, FlagMetricParam, TreeParams, Vertex};
use horotree::{sample, C, Q};
use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::fnio::{fn_from_json, fn_to_json, horo_from_json, horo_to_json, read_json, AnyFn, AnyHoro};
use crate::output::{Check, Doc, Report, Table};
use crate::Config;

/// Density of random supports in seeded demos.
const DENSITY: f64 = 0.5;

fn rng(cfg: &Config) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed)
}

fn params(cfg: &Config) -> Result<TreeParams> {
    Ok(TreeParams::new(cfg.q, cfg.radius)?)
}

/// The ray depth: `--depth` if given (checked against `needed`), else
/// `max(R + 1, needed)`.
fn depth(cfg: &Config, needed: usize) -> Result<usize> {
    match cfg.depth {
        Some(d) => {
            ensure!(d as usize >= needed, "--depth {d} is too small, need at least {needed}");
            Ok(d as usize)
        }
        None => Ok((cfg.radius as usize + 1).max(needed)),
    }
}

fn grid(cfg: &Config) -> Result<QuadratureGrid> {
    Ok(QuadratureGrid::new(cfg.grid)?)
}

fn choice(cfg: &Config) -> Result<Option<Choice>> {
    cfg.choice.map(Choice::try_from).transpose().map_err(Into::into)
}

fn coeffs(cfg: &Config, kind: Kind, range: u32) -> Result<InvCoeffs> {
    let q = cfg.q;
    Ok(match (kind, choice(cfg)?) {
        (Kind::Vertex, None) => default_coeffs_v(range, q),
        (Kind::Edge, None) => default_coeffs_e(range, q),
        (Kind::Vertex, Some(c)) => inv_coeffs_v(c, range, q)?,
        (Kind::Edge, Some(c)) => inv_coeffs_e(c, range, q)?,
    })
}

fn f64s(x: f64) -> String {
    x.to_string()
}

fn wide_k_table(cfg: &Config, k: impl Fn(i64, u32, u32) -> i128) -> Table {
    let r = cfg.radius;
    let mut t = Table::new(std::iter::once("n".to_string()).chain((0..=r).map(|m| format!("m={m}"))));
    for n in (-(r as i64)..=r as i64).rev() {
        t.push(std::iter::once(n.to_string()).chain((0..=r).map(|m| k(n, m, cfg.q).to_string())).collect());
    }
    t
}

/// Intersection tables, back-projection kernels and inversion coefficients.
pub fn tables(cfg: &Config) -> Result<Report> {
    let (q, r) = (cfg.q, cfg.radius);
    params(cfg)?;
    let mut rep = Report::default();
    if cfg.verify {
        for m in 0..=r {
            for n in -(r as i64)..=r as i64 {
                ensure!(k_v(n, m, q) == enumerate_k_v(n, m, q), "k_V({n},{m}) disagrees with enumeration");
                ensure!(k_e(n, m, q) == enumerate_k_e(n, m, q), "k_E({n},{m}) disagrees with enumeration");
            }
        }
        let d = r as usize;
        let rv = radon_v(&FiniteFn::delta(Vertex::root()), q, d)?;
        let re = radon_e(&FiniteFn::delta(Edge::reference()), q, d + 1)?;
        let p = TreeParams::new(q, r)?;
        for n in 0..=r {
            let v = &circle(n, &p)?[0];
            ensure!(dual_radon_v(&rv, v)? == psi_closed_v(n as usize, q), "Ψ_V({n}) disagrees with R*R δ");
            let e = &circle_e(n, &p)?[0];
            ensure!(dual_radon_e(&re, e)? == psi_closed_e(n as usize, q), "Ψ_E({n}) disagrees with R*R δ");
        }
        rep.check(Check::new("verify", true, format!("k tables and Ψ agree with enumeration for m, n ≤ {r}")));
    }
    rep.table("k_v", wide_k_table(cfg, k_v));
    rep.table("k_e", wide_k_table(cfg, k_e));
    let mut psi = Table::new(["n", "psi_v", "psi_e"]);
    for n in 0..=r as usize {
        psi.push(vec![n.to_string(), fmt_q(&psi_closed_v(n, q)), fmt_q(&psi_closed_e(n, q))]);
    }
    rep.table("psi", psi);
    let cs = [
        inv_coeffs_v(Choice::One, r, q)?,
        inv_coeffs_v(Choice::Two, r, q)?,
        inv_coeffs_e(Choice::One, r, q)?,
        inv_coeffs_e(Choice::Two, r, q)?,
    ];
    let mut ct = Table::new(["n", "d_choice1", "d_choice2", "l_choice1", "l_choice2"]);
    for n in -(r as i64)..=r as i64 {
        ct.push(std::iter::once(n.to_string()).chain(cs.iter().map(|c| fmt_q(&c.get(n)))).collect());
    }
    rep.table("coefficients", ct);
    let mut rt = Table::new(["m", "vertex_choice1", "vertex_choice2", "edge_choice1", "edge_choice2"]);
    for m in 0..=r / 2 {
        rt.push(std::iter::once(m.to_string()).chain(cs.iter().map(|c| fmt_q(&row_by_column_residual(c, m)))).collect());
    }
    rep.table("coefficient_residuals", rt);
    Ok(rep)
}

fn random_fn(cfg: &Config, kind: HoroKind) -> Result<AnyFn> {
    let p = params(cfg)?;
    let mut rng = rng(cfg);
    Ok(match kind {
        HoroKind::Vertex => AnyFn::Vertex(sample::vertex_fn(&mut rng, &p, DENSITY)),
        HoroKind::Edge => AnyFn::Edge(sample::edge_fn(&mut rng, &p, DENSITY)),
        HoroKind::Flag => AnyFn::Flag(sample::flag_fn(&mut rng, &p, DENSITY)),
    })
}

fn load_fn(cfg: &Config, input: Option<&std::path::Path>, kind: HoroKind) -> Result<AnyFn> {
    match input {
        Some(path) => {
            let (q, f) = fn_from_json(&read_json(path)?)?;
            ensure!(q == cfg.q, "input has q = {q} but --q is {}", cfg.q);
            Ok(f)
        }
        None => random_fn(cfg, kind),
    }
}

fn needed_depth<S: Simplex>(f: &FiniteFn<S>) -> usize {
    f.depth_needed()
}

fn radon_any(cfg: &Config, f: &AnyFn) -> Result<AnyHoro> {
    let q = cfg.q;
    Ok(match f {
        AnyFn::Vertex(g) => AnyHoro::Scalar(radon_v(g, q, depth(cfg, needed_depth(g))?)?),
        AnyFn::Edge(g) => AnyHoro::Scalar(radon_e(g, q, depth(cfg, needed_depth(g))?)?),
        AnyFn::Flag(g) => AnyHoro::Flag(radon_f(g, q, depth(cfg, needed_depth(g) + 1)?)?),
    })
}

fn horo_table(h: &AnyHoro) -> Table {
    match h {
        AnyHoro::Scalar(f) => {
            let mut t = Table::new(["arc", "n", "value"]);
            for (a, n, x) in f.entries() {
                t.push(vec![a.prefix().to_string_q(f.q()), n.to_string(), fmt_q(&x)]);
            }
            t
        }
        AnyHoro::Flag(f) => {
            let mut t = Table::new(["arc", "n_e", "n_v", "value"]);
            for (a, (ne, nv), x) in f.entries() {
                t.push(vec![a.prefix().to_string_q(f.q()), ne.to_string(), nv.to_string(), fmt_q(&x)]);
            }
            t
        }
    }
}

fn fn_table(f: &AnyFn, q: u32) -> Table {
    let mut t = Table::new(["simplex", "value"]);
    let mut push = |s: String, x: &Q| t.push(vec![s, fmt_q(x)]);
    match f {
        AnyFn::Vertex(g) => g.iter().for_each(|(s, x)| push(s.to_string_q(q), x)),
        AnyFn::Edge(g) => g.iter().for_each(|(s, x)| push(s.to_string_q(q), x)),
        AnyFn::Flag(g) => g.iter().for_each(|(s, x)| push(s.to_string_q(q), x)),
    }
    t
}

/// Horospherical Radon transform of an input (or seeded random) function.
pub fn radon(cfg: &Config, kind: HoroKind, input: Option<&std::path::Path>, json_out: bool) -> Result<Report> {
    let f = load_fn(cfg, input, kind)?;
    let h = radon_any(cfg, &f)?;
    let mut rep = Report::default();
    if json_out {
        rep.doc("radon", Doc::Json(horo_to_json(&h)));
    } else {
        rep.table("radon", horo_table(&h));
    }
    Ok(rep)
}

fn invert_any(cfg: &Config, h: &AnyHoro, radius: u32) -> Result<AnyFn> {
    Ok(match h {
        AnyHoro::Scalar(f) => {
            let kind = match f.kind() {
                HoroKind::Vertex => Kind::Vertex,
                _ => Kind::Edge,
            };
            let range = (f.index_radius() + radius as i64 + 1) as u32;
            let c = coeffs(cfg, kind, range)?;
            match kind {
                Kind::Vertex => AnyFn::Vertex(invert_ball_v(f, radius, &c)?),
                Kind::Edge => AnyFn::Edge(invert_ball_e(f, radius, &c)?),
            }
        }
        AnyHoro::Flag(f) => AnyFn::Flag(invert_flag_ball(f, radius, cfg.lambda)?),
    })
}

/// Drops explicit zeros so that recovered functions compare by support.
fn prune<S: Simplex>(f: FiniteFn<S>) -> FiniteFn<S> {
    f.iter().filter(|(_, x)| !x.is_zero()).map(|(s, x)| (s.clone(), *x)).collect()
}

fn prune_any(f: AnyFn) -> AnyFn {
    match f {
        AnyFn::Vertex(g) => AnyFn::Vertex(prune(g)),
        AnyFn::Edge(g) => AnyFn::Edge(prune(g)),
        AnyFn::Flag(g) => AnyFn::Flag(prune(g)),
    }
}

/// Inverts horospherical data (JSON as written by `radon --format json`) on the ball of radius R.
pub fn invert(cfg: &Config, input: &std::path::Path, json_out: bool) -> Result<Report> {
    let h = horo_from_json(&read_json(input)?)?;
    let q = match &h {
        AnyHoro::Scalar(f) => f.q(),
        AnyHoro::Flag(f) => f.q(),
    };
    ensure!(q == cfg.q, "input has q = {q} but --q is {}", cfg.q);
    let f = prune_any(invert_any(cfg, &h, cfg.radius)?);
    let mut rep = Report::default();
    if json_out {
        rep.doc("inverse", Doc::Json(fn_to_json(&f, q)));
    } else {
        rep.table("inverse", fn_table(&f, q));
    }
    Ok(rep)
}

fn cavalieri_any(h: &AnyHoro) -> Result<Vec<(&'static str, CavalieriReport)>> {
    Ok(match h {
        AnyHoro::Scalar(f) if f.kind() == HoroKind::Vertex => vec![("vertex", cavalieri_check_v(f)?)],
        AnyHoro::Scalar(f) => vec![("edge", cavalieri_check_e(f)?)],
        AnyHoro::Flag(f) => vec![
            ("flag/vertex", cavalieri_check_v(&project_horo_v(f)?)?),
            ("flag/edge", cavalieri_check_e(&project_horo_e(f)?)?),
        ],
    })
}

fn residual_rows(t: &mut Table, source: &str, test: &str, r: &CavalieriReport) {
    for (n, x) in &r.residuals {
        t.push(vec![source.into(), test.into(), n.to_string(), fmt_q(x)]);
    }
}

/// Range test on input data, or (without input) on a seeded Radon image and
/// the canonical non-image `Ξ^{-1}(R_E δ_{e0})`, which must fail at `n = 1`.
pub fn cavalieri(cfg: &Config, input: Option<&std::path::Path>) -> Result<Report> {
    let mut rep = Report::default();
    let mut t = Table::new(["source", "test", "n", "residual"]);
    let run = |rep: &mut Report, t: &mut Table, source: &str, h: &AnyHoro, expect_pass: bool| -> Result<()> {
        for (test, r) in cavalieri_any(h)? {
            residual_rows(t, source, test, &r);
            let detail = match r.first_failure() {
                Some((n, x)) => format!("first nonzero residual {} at n = {n}", fmt_q(&x)),
                None if !r.arc_total_constant => "arc totals are not constant".into(),
                None => "all residuals vanish".into(),
            };
            let expected = if expect_pass { "" } else { " (expected to fail)" };
            rep.check(Check::new(format!("{source} {test}{expected}"), r.passes() == expect_pass, detail));
        }
        Ok(())
    };
    match input {
        Some(path) => {
            let h = horo_from_json(&read_json(path)?)?;
            run(&mut rep, &mut t, "input", &h, true)?;
        }
        None => {
            let f = random_fn(cfg, HoroKind::Vertex)?;
            run(&mut rep, &mut t, "random-image", &radon_any(cfg, &f)?, true)?;
            let q = cfg.q;
            let psi = radon_e(&FiniteFn::delta(Edge::reference()), q, depth(cfg, 1)?)?;
            let phi = canonical_map_xi_inv(&psi)?;
            let r = cavalieri_check_v(&phi)?;
            let nu = |a: &horotree::boundary::Arc| arc_measure_v(a, q);
            let (minus, plus) = (phi.integrate_with(-1, nu), phi.integrate_with(1, nu));
            let pattern = plus.is_zero() && minus == Q::new(q as i128, q as i128 + 1) && r.first_failure().map(|x| x.0) == Some(1);
            residual_rows(&mut t, "counterexample", "vertex", &r);
            rep.check(Check::new(
                "counterexample vertex (expected to fail at n = 1)",
                pattern,
                format!("integral at n = -1: {}, at n = 1: {}", fmt_q(&minus), fmt_q(&plus)),
            ));
        }
    }
    rep.table("cavalieri", t);
    Ok(rep)
}

fn compare<S: Simplex>(a: &FiniteFn<S>, b: &FiniteFn<S>) -> (usize, Q) {
    let keys: BTreeSet<&S> = a.iter().map(|x| x.0).chain(b.iter().map(|x| x.0)).collect();
    let mut bad = 0;
    let mut worst = Q::zero();
    for k in keys {
        let d = a.get(k) - b.get(k);
        if !d.is_zero() {
            bad += 1;
            worst = worst.max(d.abs());
        }
    }
    (bad, worst)
}

fn compare_any(a: &AnyFn, b: &AnyFn) -> (usize, Q) {
    match (a, b) {
        (AnyFn::Vertex(x), AnyFn::Vertex(y)) => compare(x, y),
        (AnyFn::Edge(x), AnyFn::Edge(y)) => compare(x, y),
        (AnyFn::Flag(x), AnyFn::Flag(y)) => compare(x, y),
        _ => unreachable!("inversion preserves the simplex type"),
    }
}

fn support_size(f: &AnyFn) -> usize {
    match f {
        AnyFn::Vertex(g) => g.len(),
        AnyFn::Edge(g) => g.len(),
        AnyFn::Flag(g) => g.len(),
    }
}

/// Seeded radon → Cavalieri → inversion for vertex, edge and flag functions,
/// plus the zero function.
pub fn roundtrip(cfg: &Config) -> Result<Report> {
    let mut rep = Report::default();
    let mut t = Table::new(["kind", "support", "cavalieri", "mismatches", "max_residual"]);
    let zero = AnyFn::Vertex(FiniteFn::new());
    let cases = [
        ("vertex", random_fn(cfg, HoroKind::Vertex)?),
        ("edge", random_fn(cfg, HoroKind::Edge)?),
        ("flag", random_fn(cfg, HoroKind::Flag)?),
        ("zero", zero),
    ];
    for (name, f) in cases {
        let h = radon_any(cfg, &f)?;
        let cav = cavalieri_any(&h)?.iter().all(|(_, r)| r.passes());
        let (bad, worst) = match invert_any(cfg, &h, cfg.radius) {
            Ok(back) => compare_any(&f, &back),
            Err(e) => bail!("{name} inversion failed: {e}"),
        };
        t.push(vec![name.into(), support_size(&f).to_string(), cav.to_string(), bad.to_string(), fmt_q(&worst)]);
        rep.check(Check::new(
            format!("{name} roundtrip"),
            cav && bad == 0,
            format!("{} simplices, Cavalieri {cav}, {bad} mismatches, max residual {}", support_size(&f), fmt_q(&worst)),
        ));
    }
    rep.table("roundtrip", t);
    Ok(rep)
}

fn crit(t: f64) -> C {
    C::new(0.5, t)
}

/// Sample points `t_k = k t_max / N`, `k = 0..=N`.
fn t_samples(cfg: &Config) -> Vec<f64> {
    let tm = t_max(cfg.q);
    (0..=cfg.grid).map(|k| k as f64 * tm / cfg.grid as f64).collect()
}

fn symbol_table(cfg: &Config) -> Table {
    let q = cfg.q;
    let mut t = Table::new(["t", "psi_hat_v", "psi_hat_e", "product_v", "product_e"]);
    let ts = t_samples(cfg);
    // the endpoints are poles of the symbols; the products extend continuously
    for &x in &ts[1..ts.len() - 1] {
        let mut row = vec![f64s(x)];
        let mut prods = Vec::new();
        for kind in [Kind::Vertex, Kind::Edge] {
            match symbol_psi_hat(kind, crit(x), q) {
                Ok(s) => {
                    row.push(f64s(s.re));
                    prods.push(f64s(s.re * plancherel_density(kind, x, q)));
                }
                Err(_) => {
                    row.push("inf".into());
                    prods.push(f64s(symbol_times_density(kind, q)));
                }
            }
        }
        row.extend(prods);
        t.push(row);
    }
    t
}

fn kernel_checks(cfg: &Config, rep: &mut Report) -> Result<Table> {
    let q = cfg.q;
    let g = grid(cfg)?;
    let mut t = Table::new(["n", "kind", "psi", "from_symbol", "error"]);
    let mut worst = 0f64;
    for kind in [Kind::Vertex, Kind::Edge] {
        for n in 0..=cfg.radius as usize {
            let exact = psi_closed(kind, n, q);
            let got = kernel_from_symbol(kind, n, g, q).re;
            let err = (got - horotree::scalar::q_to_f64(exact)).abs();
            worst = worst.max(err);
            t.push(vec![n.to_string(), kind_label(kind).into(), fmt_q(&exact), f64s(got), f64s(err)]);
        }
    }
    rep.check(Check::new("kernel from symbol", worst < 1e-8, format!("max |Ψ(n) − inverse of Ψ̂·density| = {worst:.2e}")));
    Ok(t)
}

fn kind_label(kind: Kind) -> &'static str {
    match kind {
        Kind::Vertex => "vertex",
        Kind::Edge => "edge",
    }
}

/// Symbol curves of the back-projection kernels and their spherical inversion.
pub fn symbol(cfg: &Config) -> Result<Report> {
    params(cfg)?;
    let mut rep = Report::default();
    rep.table("symbol", symbol_table(cfg));
    let k = kernel_checks(cfg, &mut rep)?;
    rep.table("kernel", k);
    Ok(rep)
}

/// Plancherel densities, spherical functions, symbols, spectrum samples and
/// a residual report for the Plancherel and inversion formulas.
pub fn spectral(cfg: &Config) -> Result<Report> {
    params(cfg)?;
    let q = cfg.q;
    let g = grid(cfg)?;
    let mut rep = Report::default();

    let mut dens = Table::new(["t", "density_v", "density_e"]);
    for &t in &t_samples(cfg) {
        dens.push(vec![f64s(t), f64s(plancherel_density(Kind::Vertex, t, q)), f64s(plancherel_density(Kind::Edge, t, q))]);
    }
    rep.table("density", dens);

    let mut sph = Table::new(["t", "n", "phi_v", "phi_e"]);
    for &t in &t_samples(cfg) {
        for n in 0..=cfg.radius as usize {
            let (a, b) = (spherical(Kind::Vertex, crit(t), n, q), spherical(Kind::Edge, crit(t), n, q));
            sph.push(vec![f64s(t), n.to_string(), f64s(a.re), f64s(b.re)]);
        }
    }
    rep.table("spherical", sph);
    rep.table("symbol", symbol_table(cfg));

    let mut spec = Table::new(["kind", "p", "k", "re", "im"]);
    for kind in [Kind::Vertex, Kind::Edge] {
        for p in [2.0, 1.5, 1.25] {
            for (k, z) in spectrum_sample(kind, p, 64, q)?.into_iter().enumerate() {
                spec.push(vec![kind_label(kind).into(), f64s(p), k.to_string(), f64s(z.re), f64s(z.im)]);
            }
        }
    }
    rep.table("spectrum", spec);

    let mut report = Table::new(["check", "kind", "value", "tolerance", "pass"]);
    let mut info: Vec<Vec<String>> = Vec::new();
    let mut row = |rep: &mut Report, name: &str, kind: &str, value: f64, tol: f64| {
        let pass = value.abs() < tol;
        report.push(vec![name.into(), kind.into(), f64s(value), f64s(tol), pass.to_string()]);
        rep.check(Check::new(format!("{name} ({kind})"), pass, format!("{value:.3e} (tolerance {tol:.0e})")));
    };
    row(&mut rep, "gamma_v(1) - 1", "vertex", (gamma_v(C::new(1.0, 0.0), q) - 1.0).norm(), 1e-12);
    for kind in [Kind::Vertex, Kind::Edge] {
        let label = kind_label(kind);
        let end = plancherel_density(kind, 0.0, q).max(plancherel_density(kind, t_max(q), q));
        row(&mut rep, "density at endpoints", label, end, 1e-12);
        let delta = RadialSeq::new(kind, vec![C::new(1.0, 0.0)]);
        let norm = plancherel_norm(&delta, g, q, PlancherelNorm::Corrected);
        row(&mut rep, "plancherel residual for delta", label, norm - 1.0, 1e-8);
        let finer = plancherel_norm(&delta, g.doubled(), q, PlancherelNorm::Corrected);
        row(&mut rep, "quadrature change on doubling", label, finer - norm, 1e-10);
        let mut rng = rng(cfg);
        let h = sample::radial(&mut rng, kind, cfg.radius as usize).to_complex();
        let exact = l2_norm_sq(&h, q);
        let got = plancherel_norm(&h, g, q, PlancherelNorm::Corrected);
        row(&mut rep, "plancherel relative residual for random radial", label, (got - exact) / exact.max(f64::MIN_POSITIVE), 1e-8);
        let inv = (0..=cfg.radius as usize)
            .map(|n| (spherical_inversion(&h, n, g, q, PlancherelNorm::Corrected) - h.get(n)).norm())
            .fold(0.0, f64::max);
        row(&mut rep, "spherical inversion residual", label, inv, 1e-8);
        let stated = plancherel_norm(&delta, g, q, PlancherelNorm::Stated);
        info.push(vec!["stated normalization norm of delta".into(), label.into(), f64s(stated), String::new(), "info".into()]);
    }
    for r in info {
        report.push(r);
    }
    report.push(vec!["edge atom mass".into(), "edge".into(), f64s(edge_atom_mass(q)), String::new(), "info".into()]);
    report.push(vec!["gamma at the edge atom".into(), "edge".into(), f64s(gamma(Kind::Edge, horotree::spectral::edge_atom_z(q), q).re), String::new(), "info".into()]);
    rep.table("report", report);
    Ok(rep)
}

/// Flag transform demo: projections, λ-free lift, inversion via the
/// factorization, and the flag metric on flags at `v0`.
pub fn flag_demo(cfg: &Config) -> Result<Report> {
    let q = cfg.q;
    let p = params(cfg)?;
    let xi = FlagMetricParam::new(cfg.xi_flag)?;
    let mut rng = rng(cfg);
    let h = sample::flag_fn(&mut rng, &p, DENSITY);
    let pair = flag_project(&h);
    let mut rep = Report::default();
    rep.check(Check::new("image condition", pair.image_residual().is_zero(), format!("Σ g_V − Σ g_E = {}", fmt_q(&pair.image_residual()))));
    let lifted = flag_lift(&pair, cfg.lambda, q)?;
    let half = flag_lift(&pair, Q::new(1, 2), q)?;
    rep.check(Check::new("lift is a section", flag_project(&lifted) == pair, "projections of the lift equal the pair"));
    rep.check(Check::new("lift is independent of lambda", lifted == half, format!("λ = {} vs λ = 1/2", fmt_q(&cfg.lambda))));
    let fh = radon_f(&h, q, depth(cfg, cfg.radius as usize + 1)?)?;
    let back = invert_flag_ball(&fh, cfg.radius, cfg.lambda)?;
    let (bad, worst) = compare(&h, &back);
    rep.check(Check::new("flag inversion", bad == 0, format!("{bad} mismatches, max residual {}", fmt_q(&worst))));

    let mut pt = Table::new(["simplex", "kind", "value"]);
    for (e, x) in pair.g_e.iter() {
        pt.push(vec![e.to_string_q(q), "edge".into(), fmt_q(x)]);
    }
    for (v, x) in pair.g_v.iter() {
        pt.push(vec![v.to_string_q(q), "vertex".into(), fmt_q(x)]);
    }
    rep.table("projections", pt);

    let at_root: Vec<_> = ball_f(&TreeParams::new(q, 1)?).into_iter().filter(|f| f.vertex() == Vertex::root()).collect();
    let mut dt = Table::new(["flag_a", "flag_b", "distance"]);
    for a in &at_root {
        for b in at_root.iter().chain(std::iter::once(&a.flip())) {
            dt.push(vec![a.to_string_q(q), b.to_string_q(q), fmt_q(&dist_f(a, b, xi))]);
        }
    }
    rep.table("flag_distances", dt);
    rep.doc("function", Doc::Json(json!({ "input": fn_to_json(&AnyFn::Flag(h), q), "recovered": fn_to_json(&AnyFn::Flag(back), q) })));
    Ok(rep)
}

/// Support theorem on every convex set of diameter at most 2 in the ball.
pub fn support_demo(cfg: &Config) -> Result<Report> {
    let q = cfg.q;
    let p = params(cfg)?;
    let d = depth(cfg, cfg.radius as usize)?;
    let mut rep = Report::default();
    let mut t = Table::new(["set", "size", "holds"]);
    let mut held = 0;
    let sets = convex_sets_diam2(&p);
    for c in &sets {
        let ok = support_theorem_holds(c, &p, d).with_context(|| "support check")?;
        held += usize::from(ok);
        let name = c.iter().map(|v| if v.is_root() { "v0".to_string() } else { v.to_string_q(q) }).collect::<Vec<_>>().join(" ");
        t.push(vec![name, c.len().to_string(), ok.to_string()]);
    }
    rep.check(Check::new("support theorem", held == sets.len(), format!("{held}/{} convex sets, ray depth {d}", sets.len())));
    rep.table("support", t);
    Ok(rep)
}
