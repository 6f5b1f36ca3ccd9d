//! JSON encodings of finitely supported functions and horospherical data,
//! keyed by word strings with exact `num/den` values.

use anyhow::{anyhow, bail, Context, Result};
use horotree::boundary::Arc;
use horotree::horo::{HoroFn, HoroKind};
use horotree::scalar::{fmt_q, parse_q, FiniteFn, Simplex};
use horotree::tree::{Edge, Flag, Vertex};
use serde_json::{json, Map, Value};

/// A function on one of the three simplex types.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyFn {
    Vertex(FiniteFn<Vertex>),
    Edge(FiniteFn<Edge>),
    Flag(FiniteFn<Flag>),
}

/// Horospherical data of any kind.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyHoro {
    Scalar(HoroFn<i64>),
    Flag(HoroFn<(i64, i64)>),
}

pub fn kind_name(k: HoroKind) -> &'static str {
    match k {
        HoroKind::Vertex => "vertex",
        HoroKind::Edge => "edge",
        HoroKind::Flag => "flag",
    }
}

fn parse_kind(s: &str) -> Result<HoroKind> {
    Ok(match s {
        "vertex" => HoroKind::Vertex,
        "edge" => HoroKind::Edge,
        "flag" => HoroKind::Flag,
        _ => bail!("unknown kind {s:?}"),
    })
}

fn values_json<S: Simplex>(f: &FiniteFn<S>, q: u32) -> Map<String, Value> {
    f.iter().map(|(s, x)| (s.to_string_q(q), Value::String(fmt_q(x)))).collect()
}

pub fn fn_to_json(f: &AnyFn, q: u32) -> Value {
    let (kind, values) = match f {
        AnyFn::Vertex(g) => ("vertex", values_json(g, q)),
        AnyFn::Edge(g) => ("edge", values_json(g, q)),
        AnyFn::Flag(g) => ("flag", values_json(g, q)),
    };
    json!({ "q": q, "kind": kind, "values": values })
}

fn header(v: &Value) -> Result<(u32, HoroKind)> {
    let q = v["q"].as_u64().ok_or_else(|| anyhow!("missing integer field \"q\""))? as u32;
    let kind = parse_kind(v["kind"].as_str().ok_or_else(|| anyhow!("missing string field \"kind\""))?)?;
    Ok((q, kind))
}

fn parse_values<S: Simplex>(v: &Value, parse: impl Fn(&str) -> horotree::Result<S>) -> Result<FiniteFn<S>> {
    let obj = v["values"].as_object().ok_or_else(|| anyhow!("missing object field \"values\""))?;
    let mut f = FiniteFn::new();
    for (k, x) in obj {
        let s = parse(k).with_context(|| format!("key {k:?}"))?;
        let x = x.as_str().ok_or_else(|| anyhow!("value for {k:?} must be a string like \"3/4\""))?;
        f.set(s, parse_q(x)?);
    }
    Ok(f)
}

pub fn fn_from_json(v: &Value) -> Result<(u32, AnyFn)> {
    let (q, kind) = header(v)?;
    let f = match kind {
        HoroKind::Vertex => AnyFn::Vertex(parse_values(v, |s| Vertex::parse(s, q))?),
        HoroKind::Edge => AnyFn::Edge(parse_values(v, |s| Edge::parse(s, q))?),
        HoroKind::Flag => AnyFn::Flag(parse_values(v, |s| Flag::parse(s, q))?),
    };
    Ok((q, f))
}

fn flag_key(k: (i64, i64)) -> String {
    format!("{},{}", k.0, k.1)
}

fn parse_flag_key(s: &str) -> Result<(i64, i64)> {
    let (a, b) = s.split_once(',').ok_or_else(|| anyhow!("flag index {s:?} must be \"nE,nV\""))?;
    Ok((a.trim().parse()?, b.trim().parse()?))
}

fn rows_json<K: Ord + Copy>(f: &HoroFn<K>, key: impl Fn(K) -> String) -> Map<String, Value> {
    let q = f.q();
    f.arcs()
        .iter()
        .enumerate()
        .filter(|(i, _)| !f.row(*i).is_empty())
        .map(|(i, a)| {
            let row: Map<String, Value> = f.row(i).iter().map(|(k, x)| (key(*k), Value::String(fmt_q(x)))).collect();
            (a.prefix().to_string_q(q), Value::Object(row))
        })
        .collect()
}

pub fn horo_to_json(f: &AnyHoro) -> Value {
    let (q, kind, depth, rows) = match f {
        AnyHoro::Scalar(h) => (h.q(), h.kind(), h.depth(), rows_json(h, |k| k.to_string())),
        AnyHoro::Flag(h) => (h.q(), h.kind(), h.depth(), rows_json(h, flag_key)),
    };
    json!({ "q": q, "kind": kind_name(kind), "depth": depth, "rows": rows })
}

fn parse_rows<K: Ord + Copy>(v: &Value, q: u32, kind: HoroKind, key: impl Fn(&str) -> Result<K>) -> Result<HoroFn<K>> {
    let depth = v["depth"].as_u64().ok_or_else(|| anyhow!("missing integer field \"depth\""))? as usize;
    let mut h = HoroFn::zero(q, kind, depth)?;
    let rows = v["rows"].as_object().ok_or_else(|| anyhow!("missing object field \"rows\""))?;
    for (arc, row) in rows {
        let a = Arc::new(Vertex::parse(arc, q)?)?;
        let i = h.arc_index(&a).ok_or_else(|| anyhow!("arc {arc:?} is not at depth {depth}"))?;
        for (k, x) in row.as_object().ok_or_else(|| anyhow!("row for arc {arc:?} must be an object"))? {
            let x = x.as_str().ok_or_else(|| anyhow!("values must be strings like \"3/4\""))?;
            h.set(i, key(k)?, parse_q(x)?);
        }
    }
    Ok(h)
}

pub fn horo_from_json(v: &Value) -> Result<AnyHoro> {
    let (q, kind) = header(v)?;
    Ok(match kind {
        HoroKind::Flag => AnyHoro::Flag(parse_rows(v, q, kind, parse_flag_key)?),
        _ => AnyHoro::Scalar(parse_rows(v, q, kind, |s| Ok(s.parse::<i64>()?))?),
    })
}

pub fn read_json(path: &std::path::Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}
