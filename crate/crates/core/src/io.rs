//! JSON, CSV and DOT formats.
//!
//! Rationals are written as `"p"` or `"p/q"` strings; on input decimals and
//! bare JSON integers are accepted too. Maps between named things are JSON
//! objects keyed by name, and every key must name a point, measurement or
//! operation.

use std::collections::BTreeMap;
use std::sync::Arc;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::actions::Incarnation;
use crate::data::{DataSet, Domain, Endo, PointMap, ValueMap};
use crate::error::{Error, Result};
use crate::ggraph::GrothendieckGraph;
use crate::persistence::{BigradedPersistence, PhFunctor};
use crate::rational::{format_rational, parse_rational, Rational};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum RationalText {
    Text(String),
    Integer(i64),
}

impl RationalText {
    fn parse(&self) -> Result<Rational> {
        match self {
            RationalText::Text(t) => parse_rational(t),
            RationalText::Integer(v) => Ok(Rational::from_integer(*v)),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DataSetJson {
    domain: Vec<String>,
    measurements: IndexMap<String, Vec<RationalText>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IncarnationJson {
    dataset: DataSetJson,
    #[serde(rename = "M")]
    m: IndexMap<String, IndexMap<String, String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointMapJson {
    source: Vec<String>,
    target: Vec<String>,
    map: IndexMap<String, String>,
}

/// An SEO as named maps; `realization` sends target points to source points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeoJson {
    pub alpha: IndexMap<String, String>,
    #[serde(rename = "T")]
    pub t: IndexMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub realization: Option<IndexMap<String, String>>,
}

fn convert_dataset(raw: DataSetJson, allow_empty: bool) -> Result<DataSet> {
    let domain = Domain::new(raw.domain)?;
    let entries = raw
        .measurements
        .into_iter()
        .map(|(name, values)| Ok((name, values.iter().map(RationalText::parse).collect::<Result<Vec<_>>>()?)))
        .collect::<Result<Vec<_>>>()?;
    if allow_empty {
        DataSet::new_allow_empty(domain, entries)
    } else {
        DataSet::new(domain, entries)
    }
}

/// Reads a data set; an empty family is an error unless `allow_empty`.
pub fn parse_dataset(text: &str, allow_empty: bool) -> Result<DataSet> {
    convert_dataset(serde_json::from_str(text)?, allow_empty)
}

fn dataset_json(set: &DataSet) -> DataSetJson {
    let mut measurements = IndexMap::new();
    for m in set.measurements() {
        let values: Vec<RationalText> = m.values().iter().map(|v| RationalText::Text(format_rational(v))).collect();
        for name in m.aliases() {
            measurements.insert(name.clone(), values.clone());
        }
    }
    DataSetJson { domain: set.domain().points().to_vec(), measurements }
}

/// Every alias is written, so reading the output back gives the same set.
pub fn dataset_to_value(set: &DataSet) -> Value {
    serde_json::to_value(dataset_json(set)).expect("plain data")
}

fn endo_from_names(domain: &Domain, name: &str, map: &IndexMap<String, String>) -> Result<Endo> {
    let mut images = vec![None; domain.len()];
    for (from, to) in map {
        images[domain.resolve(from)?] = Some(domain.resolve(to)?);
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(i, m)| m.ok_or_else(|| Error::PartialMap(format!("{name} at {}", domain.point(i)))))
        .collect::<Result<Vec<_>>>()?;
    Endo::new(images)
}

pub fn parse_incarnation(text: &str, allow_empty: bool) -> Result<Incarnation> {
    let raw: IncarnationJson = serde_json::from_str(text)?;
    let set = convert_dataset(raw.dataset, allow_empty)?;
    let ops = raw
        .m
        .iter()
        .map(|(name, map)| Ok((name.clone(), endo_from_names(set.domain(), name, map)?)))
        .collect::<Result<Vec<_>>>()?;
    Incarnation::new(set, ops)
}

fn endo_names(domain: &Domain, g: &Endo) -> IndexMap<String, String> {
    g.images().iter().enumerate().map(|(x, &y)| (domain.point(x).to_string(), domain.point(y).to_string())).collect()
}

pub fn incarnation_to_value(inc: &Incarnation) -> Value {
    let dom = inc.dataset().domain();
    let m: IndexMap<String, IndexMap<String, String>> =
        inc.named_ops().iter().map(|(name, g)| (name.clone(), endo_names(dom, g))).collect();
    serde_json::to_value(IncarnationJson { dataset: dataset_json(inc.dataset()), m }).expect("plain data")
}

pub fn parse_point_map(text: &str) -> Result<PointMap> {
    let raw: PointMapJson = serde_json::from_str(text)?;
    let (source, target) = (Arc::new(Domain::new(raw.source)?), Arc::new(Domain::new(raw.target)?));
    PointMap::from_names(source, target, raw.map.iter().map(|(a, b)| (a.as_str(), b.as_str())))
}

pub fn point_map_to_value(f: &PointMap) -> Value {
    let map: IndexMap<String, String> = (0..f.source().len())
        .map(|y| (f.source().point(y).to_string(), f.target().point(f.apply(y)).to_string()))
        .collect();
    json!({ "source": f.source().points(), "target": f.target().points(), "map": map })
}

/// `{"builtin": "identity" | "negate" | "sign"}`,
/// `{"builtin": "affine", "a": .., "b": ..}` or `{"table": {"1": "-1", ..}}`.
pub fn parse_value_map(text: &str) -> Result<ValueMap> {
    let bad = |msg: &str| Error::Json(serde::de::Error::custom(msg));
    let value: Value = serde_json::from_str(text)?;
    let obj = value.as_object().ok_or_else(|| bad("value map must be an object"))?;
    let rational = |key: &str| -> Result<Rational> {
        let raw: RationalText = serde_json::from_value(obj.get(key).cloned().ok_or_else(|| bad(key))?)?;
        raw.parse()
    };
    if let Some(table) = obj.get("table") {
        let raw: BTreeMap<String, RationalText> = serde_json::from_value(table.clone())?;
        let table = raw
            .iter()
            .map(|(k, v)| Ok((parse_rational(k)?, v.parse()?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        return Ok(ValueMap::Table(table));
    }
    match obj.get("builtin").and_then(Value::as_str) {
        Some("identity") => Ok(ValueMap::Identity),
        Some("negate") => Ok(ValueMap::Negate),
        Some("sign") => Ok(ValueMap::ClampSign),
        Some("affine") => Ok(ValueMap::Affine(rational("a")?, rational("b")?)),
        _ => Err(bad("expected a builtin (identity, negate, sign, affine) or a table")),
    }
}

pub fn value_map_to_value(f: &ValueMap) -> Value {
    match f {
        ValueMap::Identity => json!({ "builtin": "identity" }),
        ValueMap::Negate => json!({ "builtin": "negate" }),
        ValueMap::ClampSign => json!({ "builtin": "sign" }),
        ValueMap::Affine(a, b) => json!({ "builtin": "affine", "a": format_rational(a), "b": format_rational(b) }),
        ValueMap::Table(t) => {
            let table: IndexMap<String, String> =
                t.iter().map(|(k, v)| (format_rational(k), format_rational(v))).collect();
            json!({ "table": table })
        }
    }
}

pub fn parse_seo(text: &str) -> Result<SeoJson> {
    Ok(serde_json::from_str(text)?)
}

/// Resolves named maps against the two incarnations: `(alpha, T, realization)`.
#[allow(clippy::type_complexity)]
pub fn resolve_seo(
    raw: &SeoJson,
    source: &Incarnation,
    target: &Incarnation,
) -> Result<(Vec<usize>, Vec<usize>, Option<PointMap>)> {
    let resolve_total = |keys: &IndexMap<String, String>,
                         n: usize,
                         from: &dyn Fn(&str) -> Result<usize>,
                         to: &dyn Fn(&str) -> Result<usize>,
                         name: &dyn Fn(usize) -> String|
     -> Result<Vec<usize>> {
        let mut out = vec![None; n];
        for (a, b) in keys {
            out[from(a)?] = Some(to(b)?);
        }
        out.into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::PartialMap(name(i))))
            .collect()
    };
    let (ss, ts) = (source.dataset(), target.dataset());
    let alpha = resolve_total(&raw.alpha, ss.len(), &|a| ss.resolve(a), &|b| ts.resolve(b), &|i| {
        ss.name(i).to_string()
    })?;
    let t = resolve_total(
        &raw.t,
        source.op_count(),
        &|a| source.resolve_op(a),
        &|b| target.resolve_op(b),
        &|i| source.op_name(i).to_string(),
    )?;
    let realization = match &raw.realization {
        None => None,
        Some(map) => Some(PointMap::from_names(
            Arc::new(ts.domain().clone()),
            Arc::new(ss.domain().clone()),
            map.iter().map(|(a, b)| (a.as_str(), b.as_str())),
        )?),
    };
    Ok((alpha, t, realization))
}

pub fn seo_to_json(
    source: &Incarnation,
    target: &Incarnation,
    alpha: &[usize],
    t: &[usize],
    realization: Option<&PointMap>,
) -> SeoJson {
    let (ss, ts) = (source.dataset(), target.dataset());
    SeoJson {
        alpha: alpha.iter().enumerate().map(|(i, &j)| (ss.name(i).to_string(), ts.name(j).to_string())).collect(),
        t: t.iter().enumerate().map(|(g, &h)| (source.op_name(g).to_string(), target.op_name(h).to_string())).collect(),
        realization: realization.map(|f| {
            (0..f.source().len())
                .map(|y| (f.source().point(y).to_string(), f.target().point(f.apply(y)).to_string()))
                .collect()
        }),
    }
}

/// `{"kind", "blocks", "basis", "dimension"}` with measurement names.
pub fn analysis_report(inc: &Incarnation) -> Value {
    let set = inc.dataset();
    let names = |ids: &[usize]| ids.iter().map(|&i| set.name(i).to_string()).collect::<Vec<_>>();
    let blocks: Vec<Vec<String>> = inc.blocks().blocks().iter().map(|b| names(b)).collect();
    let basis = inc.find_basis();
    json!({
        "kind": inc.kind().as_str(),
        "blocks": blocks,
        "basis": names(&basis),
        "dimension": basis.len(),
    })
}

pub fn graph_to_value(graph: &GrothendieckGraph) -> Value {
    let edges: Vec<[String; 3]> = graph.named_edges().into_iter().map(|(a, g, b)| [a, g, b]).collect();
    json!({ "vertices": graph.vertices(), "colors": graph.colors(), "edges": edges })
}

pub fn parse_graph(text: &str) -> Result<GrothendieckGraph> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct GraphJson {
        vertices: Vec<String>,
        colors: Vec<String>,
        edges: Vec<(String, String, String)>,
    }
    let raw: GraphJson = serde_json::from_str(text)?;
    GrothendieckGraph::from_edges(raw.vertices, raw.colors, &raw.edges)
}

fn rationals(values: &[Rational]) -> Vec<String> {
    values.iter().map(format_rational).collect()
}

/// `{"r", "s", "dims"}`, `dims[i][j]` being the dimension at `(r_i, s_j)`;
/// with `maps`, the ranks of the unit steps right and up as well.
pub fn grid_to_value(module: &BigradedPersistence, maps: bool) -> Value {
    let grid = module.grid();
    let mut out = json!({
        "r": rationals(grid.r()),
        "s": rationals(grid.s()),
        "degree": module.degree(),
        "p": module.field().p(),
        "dims": module.dims(),
    });
    if maps {
        let (right, up) = module.ranks();
        out["maps"] = json!({ "right": right, "up": up });
    }
    out
}

/// One entry per edge `(phi, g, phi g)`: the matrices of
/// `PH(phi g) → PH(phi)` at every corner, as rows.
pub fn functor_edges(functor: &PhFunctor) -> Vec<(String, String, String, Value)> {
    let graph = functor.graph();
    graph
        .named_edges()
        .into_iter()
        .zip(functor.arrows())
        .map(|((a, g, b), m)| {
            let maps: Vec<Vec<Vec<Vec<u32>>>> =
                m.maps().iter().map(|row| row.iter().map(|x| x.to_rows()).collect()).collect();
            let value = json!({ "source": b, "target": a, "op": g, "maps": maps });
            (a, g, b, value)
        })
        .collect()
}

/// `{"grid", "objects", "edges"}` in one document.
pub fn functor_to_value(functor: &PhFunctor) -> Value {
    let objects: IndexMap<String, Vec<Vec<usize>>> = functor
        .graph()
        .vertices()
        .iter()
        .cloned()
        .zip(functor.objects().iter().map(BigradedPersistence::dims))
        .collect();
    let grid = functor.objects().first().map(|m| grid_to_value(m, false));
    let edges: Vec<Value> = functor_edges(functor).into_iter().map(|e| e.3).collect();
    json!({ "grid": grid, "objects": objects, "edges": edges })
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}
