//! NetsJSON basic reader and writer.
//!
//! A document is a JSON object with the members `netsJSON` (always
//! `"basic"`), `info`, `nodes`, `links` and an optional opaque `data`.
//! Structured property values use these encodings:
//!
//! | value            | JSON                                   |
//! |------------------|----------------------------------------|
//! | absent           | `null`                                 |
//! | boolean, text    | JSON boolean, string                   |
//! | integer          | number without fraction                |
//! | real             | number with fraction or exponent       |
//! | list             | array                                  |
//! | interval         | `{"$interval": [lo, hi]}`              |
//! | temporal         | `{"$tq": [[start, end, value], ...]}`  |
//! | map              | object; `{"$map": {...}}` when its only key starts with `$` |
//!
//! Node and link temporal quantities are written as plain
//! `[[start, end, value], ...]` arrays under `tq`.

mod check;

use std::collections::{BTreeMap, HashSet};
use std::io::Read;

use serde_json::{Map, Number, Value};
use thiserror::Error;

use crate::coding::CodingTable;
use crate::model::{
    EventRecord, Ident, InfoBlock, LinkKind, LinkRecord, Network, NodeRecord, PropertyValue,
    Segment, TemporalQuantity, TimeWindow,
};

pub use check::{validate_netsjson_bytes, validate_netsjson_document};

pub const FORMAT_TAG: &str = "basic";

const NODE_MEMBERS: &[&str] = &["id", "lab", "slab", "x", "y", "mode", "tq"];
const LINK_MEMBERS: &[&str] = &["type", "n1", "n2", "rel", "w", "weight", "lab", "tq"];
const INFO_MEMBERS: &[&str] = &[
    "org",
    "nNodes",
    "nArcs",
    "nEdges",
    "simple",
    "directed",
    "multirel",
    "mode",
    "network",
    "title",
    "time",
    "meta",
    "created",
    "modified",
    "relations",
    "nodeCoding",
    "propertyCodings",
];

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("invalid JSON at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("missing required member {0}")]
    MissingMember(String),
    #[error("unsupported netsJSON version {0:?}")]
    UnsupportedVersion(String),
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
    #[error("{path}: {message}")]
    Temporal { path: String, message: String },
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> JsonError {
    JsonError::Schema {
        path: path.into(),
        message: message.into(),
    }
}

fn temporal(path: impl Into<String>, message: impl Into<String>) -> JsonError {
    JsonError::Temporal {
        path: path.into(),
        message: message.into(),
    }
}

// ---------------------------------------------------------------------------
// Property values

/// JSON encoding of a property value. Non-finite reals have no JSON form.
pub fn value_to_json(value: &PropertyValue, path: &str) -> Result<Value, JsonError> {
    Ok(match value {
        PropertyValue::Absent => Value::Null,
        PropertyValue::Boolean(b) => Value::Bool(*b),
        PropertyValue::Integer(i) => Value::from(*i),
        PropertyValue::Real(r) => finite(*r, path)?,
        PropertyValue::Text(s) => Value::String(s.clone()),
        PropertyValue::List(items) => Value::Array(
            items
                .iter()
                .enumerate()
                .map(|(i, v)| value_to_json(v, &format!("{path}[{i}]")))
                .collect::<Result<_, _>>()?,
        ),
        PropertyValue::Interval { lo, hi } => tagged(
            "$interval",
            Value::Array(vec![finite(*lo, path)?, finite(*hi, path)?]),
        ),
        PropertyValue::Temporal(tq) => tagged("$tq", tq_to_json(tq, path)?),
        PropertyValue::Map(map) => {
            let mut obj = Map::new();
            for (k, v) in map {
                obj.insert(k.clone(), value_to_json(v, &format!("{path}.{k}"))?);
            }
            if map.len() == 1 && map.keys().all(|k| k.starts_with('$')) {
                tagged("$map", Value::Object(obj))
            } else {
                Value::Object(obj)
            }
        }
    })
}

fn tagged(tag: &str, inner: Value) -> Value {
    let mut obj = Map::new();
    obj.insert(tag.to_owned(), inner);
    Value::Object(obj)
}

fn finite(r: f64, path: &str) -> Result<Value, JsonError> {
    Number::from_f64(r)
        .map(Value::Number)
        .ok_or_else(|| schema(path, format!("non-finite number {r} has no JSON form")))
}

/// Decodes a property value; inverse of [`value_to_json`].
pub fn value_from_json(value: &Value, path: &str) -> Result<PropertyValue, JsonError> {
    Ok(match value {
        Value::Null => PropertyValue::Absent,
        Value::Bool(b) => PropertyValue::Boolean(*b),
        Value::Number(n) => match n.as_i64() {
            Some(i) if !n.is_f64() => PropertyValue::Integer(i),
            _ => PropertyValue::Real(n.as_f64().unwrap_or(f64::NAN)),
        },
        Value::String(s) => PropertyValue::Text(s.clone()),
        Value::Array(items) => PropertyValue::List(
            items
                .iter()
                .enumerate()
                .map(|(i, v)| value_from_json(v, &format!("{path}[{i}]")))
                .collect::<Result<_, _>>()?,
        ),
        Value::Object(obj) => {
            if obj.len() == 1 {
                let (key, inner) = obj.iter().next().expect("one member");
                let inner_path = format!("{path}.{key}");
                match key.as_str() {
                    "$interval" => {
                        let bounds = inner.as_array().filter(|a| a.len() == 2);
                        let nums = bounds.and_then(|a| Some((a[0].as_f64()?, a[1].as_f64()?)));
                        let (lo, hi) = nums.ok_or_else(|| {
                            schema(&inner_path, "interval must be [lo, hi] numbers")
                        })?;
                        return Ok(PropertyValue::Interval { lo, hi });
                    }
                    "$tq" => return Ok(PropertyValue::Temporal(tq_from_json(inner, &inner_path)?)),
                    "$map" => {
                        let map = inner
                            .as_object()
                            .ok_or_else(|| schema(&inner_path, "$map must hold an object"))?;
                        return Ok(PropertyValue::Map(object_values(map, &inner_path)?));
                    }
                    _ => {}
                }
            }
            PropertyValue::Map(object_values(obj, path)?)
        }
    })
}

fn object_values(
    obj: &Map<String, Value>,
    path: &str,
) -> Result<BTreeMap<String, PropertyValue>, JsonError> {
    obj.iter()
        .map(|(k, v)| Ok((k.clone(), value_from_json(v, &format!("{path}.{k}"))?)))
        .collect()
}

fn tq_to_json(tq: &TemporalQuantity, path: &str) -> Result<Value, JsonError> {
    let mut out = Vec::with_capacity(tq.segments.len());
    for (i, seg) in tq.segments.iter().enumerate() {
        let v = value_to_json(&seg.value, &format!("{path}[{i}]"))?;
        out.push(Value::Array(vec![
            Value::from(seg.start),
            Value::from(seg.end),
            v,
        ]));
    }
    Ok(Value::Array(out))
}

/// Reads `[[start, end, value], ...]`. Segment order and overlap are not
/// checked here.
pub fn tq_from_json(value: &Value, path: &str) -> Result<TemporalQuantity, JsonError> {
    let items = value
        .as_array()
        .ok_or_else(|| temporal(path, "temporal quantity must be an array"))?;
    let mut segments = Vec::with_capacity(items.len());
    for (i, item) in items.iter().enumerate() {
        let seg_path = format!("{path}[{i}]");
        let triple = item
            .as_array()
            .filter(|t| t.len() == 3)
            .ok_or_else(|| temporal(&seg_path, "segment must be [start, end, value]"))?;
        let bound = |v: &Value| v.as_i64().filter(|_| !v.is_f64());
        let (Some(start), Some(end)) = (bound(&triple[0]), bound(&triple[1])) else {
            return Err(temporal(&seg_path, "segment bounds must be integers"));
        };
        segments.push(Segment {
            start,
            end,
            value: value_from_json(&triple[2], &format!("{seg_path}[2]"))?,
        });
    }
    Ok(TemporalQuantity::new(segments))
}

// ---------------------------------------------------------------------------
// Writing

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct JsonWriteOptions {
    /// Two-space indentation and explicit default members.
    pub pretty: bool,
}

/// Serializes a network. Counters are recomputed from the lists; the
/// other info members are written as stored.
pub fn write_netsjson(network: &Network, pretty: bool) -> Result<String, JsonError> {
    write_netsjson_with(network, &JsonWriteOptions { pretty })
}

pub fn write_netsjson_with(
    network: &Network,
    opts: &JsonWriteOptions,
) -> Result<String, JsonError> {
    let doc = network_to_json(network, opts.pretty)?;
    let mut text = if opts.pretty {
        serde_json::to_string_pretty(&doc)
    } else {
        serde_json::to_string(&doc)
    }
    .expect("JSON values always serialize");
    text.push('\n');
    Ok(text)
}

fn network_to_json(network: &Network, explicit_defaults: bool) -> Result<Value, JsonError> {
    let mut root = Map::new();
    root.insert("netsJSON".into(), FORMAT_TAG.into());
    root.insert("info".into(), info_to_json(network)?);
    let nodes = network
        .nodes
        .iter()
        .enumerate()
        .map(|(i, n)| node_to_json(n, &format!("$.nodes[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    root.insert("nodes".into(), Value::Array(nodes));
    let links = network
        .links
        .iter()
        .enumerate()
        .map(|(i, l)| link_to_json(l, explicit_defaults, &format!("$.links[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    root.insert("links".into(), Value::Array(links));
    if let Some(data) = &network.info.data {
        root.insert("data".into(), data.clone());
    }
    Ok(Value::Object(root))
}

fn ident_json(id: &Ident) -> Value {
    match id {
        Ident::Label(s) => Value::String(s.clone()),
        Ident::Code(c) => Value::from(*c),
    }
}

fn levels_json(table: &CodingTable) -> Value {
    Value::Array(
        table
            .levels()
            .iter()
            .map(|l| Value::String(l.clone()))
            .collect(),
    )
}

fn insert_props(
    obj: &mut Map<String, Value>,
    props: &BTreeMap<String, PropertyValue>,
    reserved: &[&str],
    path: &str,
) -> Result<(), JsonError> {
    for (k, v) in props {
        if reserved.contains(&k.as_str()) {
            return Err(schema(
                format!("{path}.{k}"),
                "property name collides with a reserved member",
            ));
        }
        obj.insert(k.clone(), value_to_json(v, &format!("{path}.{k}"))?);
    }
    Ok(())
}

fn info_to_json(network: &Network) -> Result<Value, JsonError> {
    let info = &network.info;
    let n_arcs = network
        .links
        .iter()
        .filter(|l| l.kind == LinkKind::Arc)
        .count();
    let mut obj = Map::new();
    obj.insert("org".into(), info.org.into());
    obj.insert("nNodes".into(), network.nodes.len().into());
    obj.insert("nArcs".into(), n_arcs.into());
    obj.insert("nEdges".into(), (network.links.len() - n_arcs).into());
    obj.insert("simple".into(), info.simple.into());
    obj.insert("directed".into(), info.directed.into());
    obj.insert("multirel".into(), info.multirel.into());
    obj.insert("mode".into(), info.mode.into());
    if !info.network.is_empty() {
        obj.insert("network".into(), info.network.clone().into());
    }
    if !info.title.is_empty() {
        obj.insert("title".into(), info.title.clone().into());
    }
    if let Some(time) = &info.time {
        let mut t = Map::new();
        t.insert("Tmin".into(), time.t_min.into());
        t.insert("Tmax".into(), time.t_max.into());
        let labs: Map<String, Value> = time
            .t_labs
            .iter()
            .map(|(k, v)| (k.to_string(), Value::String(v.clone())))
            .collect();
        t.insert("Tlabs".into(), Value::Object(labs));
        obj.insert("time".into(), Value::Object(t));
    }
    if !info.meta.is_empty() {
        let events = info.meta.iter().map(event_to_json).collect();
        obj.insert("meta".into(), Value::Array(events));
    }
    if let Some(c) = &info.created {
        obj.insert("created".into(), c.clone().into());
    }
    if let Some(m) = &info.modified {
        obj.insert("modified".into(), m.clone().into());
    }
    if !network.relations.is_empty() {
        obj.insert("relations".into(), levels_json(&network.relations));
    }
    if !network.node_coding.is_empty() {
        obj.insert("nodeCoding".into(), levels_json(&network.node_coding));
    }
    if !network.property_codings.is_empty() {
        let codings = network
            .property_codings
            .iter()
            .map(|(k, t)| (k.clone(), levels_json(t)))
            .collect();
        obj.insert("propertyCodings".into(), Value::Object(codings));
    }
    insert_props(&mut obj, &info.extra, INFO_MEMBERS, "$.info")?;
    Ok(Value::Object(obj))
}

fn event_to_json(event: &EventRecord) -> Value {
    let mut obj = Map::new();
    obj.insert("date".into(), event.date.clone().into());
    obj.insert("title".into(), event.title.clone().into());
    for (key, value) in [
        ("author", &event.author),
        ("desc", &event.desc),
        ("url", &event.url),
        ("cite", &event.cite),
        ("copy", &event.copy),
    ] {
        if let Some(v) = value {
            obj.insert(key.into(), v.clone().into());
        }
    }
    Value::Object(obj)
}

fn node_to_json(node: &NodeRecord, path: &str) -> Result<Value, JsonError> {
    let mut obj = Map::new();
    obj.insert("id".into(), ident_json(&node.id));
    obj.insert("lab".into(), node.lab.clone().into());
    if let Some(slab) = &node.slab {
        obj.insert("slab".into(), slab.clone().into());
    }
    if let Some(x) = node.x {
        obj.insert("x".into(), finite(x, &format!("{path}.x"))?);
    }
    if let Some(y) = node.y {
        obj.insert("y".into(), finite(y, &format!("{path}.y"))?);
    }
    if let Some(mode) = &node.mode {
        obj.insert("mode".into(), mode.clone().into());
    }
    if let Some(tq) = &node.tq {
        obj.insert("tq".into(), tq_to_json(tq, &format!("{path}.tq"))?);
    }
    insert_props(&mut obj, &node.props, NODE_MEMBERS, path)?;
    Ok(Value::Object(obj))
}

fn link_to_json(
    link: &LinkRecord,
    explicit_defaults: bool,
    path: &str,
) -> Result<Value, JsonError> {
    let mut obj = Map::new();
    if explicit_defaults || link.kind != LinkKind::Arc {
        obj.insert("type".into(), link.kind.as_str().into());
    }
    obj.insert("n1".into(), ident_json(&link.n1));
    obj.insert("n2".into(), ident_json(&link.n2));
    obj.insert("rel".into(), ident_json(&link.rel));
    if explicit_defaults || link.weight != 1.0 {
        obj.insert("w".into(), finite(link.weight, &format!("{path}.w"))?);
    }
    if let Some(label) = &link.label {
        obj.insert("lab".into(), label.clone().into());
    }
    if let Some(tq) = &link.tq {
        obj.insert("tq".into(), tq_to_json(tq, &format!("{path}.tq"))?);
    }
    insert_props(&mut obj, &link.props, LINK_MEMBERS, path)?;
    Ok(Value::Object(obj))
}

// ---------------------------------------------------------------------------
// Reading

/// Parses a NetsJSON basic document.
///
/// Absent flags are derived from content and counters are recomputed.
/// Structural errors (duplicate identifiers, unresolved endpoints, mixed
/// identifier kinds, malformed members) are rejected; semantic problems of
/// temporal quantities are left to validation.
pub fn parse_netsjson(mut source: impl Read) -> Result<Network, JsonError> {
    let mut bytes = Vec::new();
    source.read_to_end(&mut bytes)?;
    parse_netsjson_bytes(&bytes)
}

pub fn parse_netsjson_str(text: &str) -> Result<Network, JsonError> {
    parse_netsjson_bytes(text.as_bytes())
}

pub(crate) fn parse_json(bytes: &[u8]) -> Result<Value, JsonError> {
    serde_json::from_slice(bytes).map_err(|e| JsonError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn parse_netsjson_bytes(bytes: &[u8]) -> Result<Network, JsonError> {
    let doc = parse_json(bytes)?;
    let root = doc
        .as_object()
        .ok_or_else(|| schema("$", "document must be an object"))?;
    match root.get("netsJSON") {
        None => return Err(JsonError::MissingMember("netsJSON".into())),
        Some(Value::String(tag)) if tag == FORMAT_TAG => {}
        Some(Value::String(tag)) => return Err(JsonError::UnsupportedVersion(tag.clone())),
        Some(_) => return Err(schema("$.netsJSON", "must be a string")),
    }
    let info_obj = required_object(root, "info", "$")?;
    let nodes_json = required_array(root, "nodes", "$")?;
    let links_json = required_array(root, "links", "$")?;

    let mut r = Reader::new(info_obj)?;
    r.info.data = root.get("data").cloned();

    let factorized = nodes_json
        .first()
        .map(|n| n.get("id"))
        .or_else(|| links_json.first().map(|l| l.get("n1")))
        .flatten()
        .is_some_and(Value::is_i64);
    let node_coding = r.node_coding_levels.take();
    let mut node_coding = match node_coding {
        Some(levels) => CodingTable::from_levels("node", levels, r.info.org)
            .map_err(|e| schema("$.info.nodeCoding", e.to_string()))?,
        None => CodingTable::empty("node", r.info.org),
    };
    let synthesize_coding = factorized && node_coding.is_empty() && !nodes_json.is_empty();

    let mut nodes = Vec::with_capacity(nodes_json.len());
    let mut ids = HashSet::with_capacity(nodes_json.len());
    for (i, value) in nodes_json.iter().enumerate() {
        let node = r.node(value, i, factorized, &node_coding)?;
        if !ids.insert(node.id.clone()) {
            return Err(schema(
                format!("$.nodes[{i}].id"),
                format!("duplicate node identifier {}", node.id),
            ));
        }
        nodes.push(node);
    }
    if synthesize_coding {
        let max = nodes
            .iter()
            .filter_map(|n| n.id.as_code())
            .max()
            .unwrap_or(r.info.org);
        for code in r.info.org..=max {
            node_coding.intern(&code.to_string());
        }
    } else if factorized {
        if let Some((i, n)) = nodes
            .iter()
            .enumerate()
            .find(|(_, n)| n.id.as_code().and_then(|c| node_coding.level(c)).is_none())
        {
            return Err(schema(
                format!("$.nodes[{i}].id"),
                format!("code {} is not in nodeCoding", n.id),
            ));
        }
    }

    let mut links = Vec::with_capacity(links_json.len());
    for (i, value) in links_json.iter().enumerate() {
        let link = r.link(value, i, factorized)?;
        for (end, name) in [(&link.n1, "n1"), (&link.n2, "n2")] {
            if !ids.contains(end) {
                return Err(schema(
                    format!("$.links[{i}].{name}"),
                    format!("no node {end}"),
                ));
            }
        }
        links.push(link);
    }

    let relations = r.relation_table(&mut links, factorized)?;
    let Reader {
        info,
        declared,
        property_codings,
        ..
    } = r;
    let mut net = Network {
        info,
        nodes,
        links,
        relations,
        node_coding,
        property_codings,
    };
    net.derive_info();
    if let Some(v) = declared.simple {
        net.info.simple = v;
    }
    if let Some(v) = declared.directed {
        net.info.directed = v;
    }
    if let Some(v) = declared.multirel {
        net.info.multirel = v;
    }
    if let Some(v) = declared.mode {
        net.info.mode = v;
    }
    Ok(net)
}

fn required_object<'a>(
    obj: &'a Map<String, Value>,
    key: &str,
    path: &str,
) -> Result<&'a Map<String, Value>, JsonError> {
    obj.get(key)
        .ok_or_else(|| JsonError::MissingMember(key.into()))?
        .as_object()
        .ok_or_else(|| schema(format!("{path}.{key}"), "must be an object"))
}

fn required_array<'a>(
    obj: &'a Map<String, Value>,
    key: &str,
    path: &str,
) -> Result<&'a Vec<Value>, JsonError> {
    obj.get(key)
        .ok_or_else(|| JsonError::MissingMember(key.into()))?
        .as_array()
        .ok_or_else(|| schema(format!("{path}.{key}"), "must be an array"))
}

fn opt_str<'a>(
    obj: &'a Map<String, Value>,
    key: &str,
    path: &str,
) -> Result<Option<&'a str>, JsonError> {
    match obj.get(key) {
        None => Ok(None),
        Some(Value::String(s)) => Ok(Some(s)),
        Some(_) => Err(schema(format!("{path}.{key}"), "must be a string")),
    }
}

fn opt_bool(obj: &Map<String, Value>, key: &str, path: &str) -> Result<Option<bool>, JsonError> {
    match obj.get(key) {
        None => Ok(None),
        Some(Value::Bool(b)) => Ok(Some(*b)),
        Some(_) => Err(schema(format!("{path}.{key}"), "must be a boolean")),
    }
}

fn opt_int(obj: &Map<String, Value>, key: &str, path: &str) -> Result<Option<i64>, JsonError> {
    match obj.get(key) {
        None => Ok(None),
        Some(v) if v.is_i64() => Ok(v.as_i64()),
        Some(_) => Err(schema(format!("{path}.{key}"), "must be an integer")),
    }
}

fn opt_f64(obj: &Map<String, Value>, key: &str, path: &str) -> Result<Option<f64>, JsonError> {
    match obj.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(Value::Number(n)) => Ok(n.as_f64()),
        Some(_) => Err(schema(format!("{path}.{key}"), "must be a number")),
    }
}

fn string_list(value: &Value, path: &str) -> Result<Vec<String>, JsonError> {
    value
        .as_array()
        .and_then(|a| a.iter().map(|v| v.as_str().map(str::to_owned)).collect())
        .ok_or_else(|| schema(path, "must be an array of strings"))
}

fn ident_from_json(value: Option<&Value>, path: &str) -> Result<Ident, JsonError> {
    match value {
        None => Err(JsonError::MissingMember(path.into())),
        Some(Value::String(s)) => Ok(Ident::Label(s.clone())),
        Some(v) if v.is_i64() => Ok(Ident::Code(v.as_i64().expect("checked"))),
        Some(_) => Err(schema(path, "must be an integer or a string")),
    }
}

#[derive(Default)]
struct Declared {
    simple: Option<bool>,
    directed: Option<bool>,
    multirel: Option<bool>,
    mode: Option<usize>,
}

struct Reader {
    info: InfoBlock,
    declared: Declared,
    relation_levels: Option<Vec<String>>,
    node_coding_levels: Option<Vec<String>>,
    property_codings: BTreeMap<String, CodingTable>,
}

impl Reader {
    fn new(obj: &Map<String, Value>) -> Result<Self, JsonError> {
        let p = "$.info";
        let org = opt_int(obj, "org", p)?.unwrap_or(1);
        if org != 0 && org != 1 {
            return Err(schema(
                "$.info.org",
                format!("org must be 0 or 1, got {org}"),
            ));
        }
        for key in ["nNodes", "nArcs", "nEdges"] {
            if opt_int(obj, key, p)?.is_some_and(|n| n < 0) {
                return Err(schema(format!("$.info.{key}"), "must be non-negative"));
            }
        }
        let mode = match opt_int(obj, "mode", p)? {
            Some(m) if m < 1 => return Err(schema("$.info.mode", "must be at least 1")),
            m => m.map(|m| m as usize),
        };
        let declared = Declared {
            simple: opt_bool(obj, "simple", p)?,
            directed: opt_bool(obj, "directed", p)?,
            multirel: opt_bool(obj, "multirel", p)?,
            mode,
        };
        let mut info = InfoBlock {
            org,
            ..InfoBlock::default()
        };
        info.network = opt_str(obj, "network", p)?.unwrap_or_default().to_owned();
        info.title = opt_str(obj, "title", p)?.unwrap_or_default().to_owned();
        info.created = opt_str(obj, "created", p)?.map(str::to_owned);
        info.modified = opt_str(obj, "modified", p)?.map(str::to_owned);
        if let Some(time) = obj.get("time") {
            info.time = Some(time_window(time)?);
        }
        if let Some(meta) = obj.get("meta") {
            let events = meta
                .as_array()
                .ok_or_else(|| schema("$.info.meta", "must be an array"))?;
            info.meta = events
                .iter()
                .enumerate()
                .map(|(i, e)| event(e, &format!("$.info.meta[{i}]")))
                .collect::<Result<_, _>>()?;
        }
        let relation_levels = obj
            .get("relations")
            .map(|v| string_list(v, "$.info.relations"))
            .transpose()?;
        let node_coding_levels = obj
            .get("nodeCoding")
            .map(|v| string_list(v, "$.info.nodeCoding"))
            .transpose()?;
        let mut property_codings = BTreeMap::new();
        if let Some(codings) = obj.get("propertyCodings") {
            let codings = codings
                .as_object()
                .ok_or_else(|| schema("$.info.propertyCodings", "must be an object"))?;
            for (name, levels) in codings {
                let path = format!("$.info.propertyCodings.{name}");
                let table =
                    CodingTable::from_levels(name.clone(), string_list(levels, &path)?, org)
                        .map_err(|e| schema(&path, e.to_string()))?;
                property_codings.insert(name.clone(), table);
            }
        }
        for (k, v) in obj {
            if !INFO_MEMBERS.contains(&k.as_str()) {
                info.extra
                    .insert(k.clone(), value_from_json(v, &format!("$.info.{k}"))?);
            }
        }
        Ok(Reader {
            info,
            declared,
            relation_levels,
            node_coding_levels,
            property_codings,
        })
    }

    fn node(
        &self,
        value: &Value,
        i: usize,
        factorized: bool,
        coding: &CodingTable,
    ) -> Result<NodeRecord, JsonError> {
        let path = format!("$.nodes[{i}]");
        let obj = value
            .as_object()
            .ok_or_else(|| schema(&path, "node must be an object"))?;
        let id = ident_from_json(obj.get("id"), &format!("{path}.id"))?;
        match &id {
            id if id.is_code() != factorized => {
                return Err(schema(
                    format!("{path}.id"),
                    "node identifiers mix integer codes and text",
                ))
            }
            Ident::Code(c) if *c < self.info.org => {
                return Err(schema(
                    format!("{path}.id"),
                    format!("code {c} is below org {}", self.info.org),
                ))
            }
            Ident::Label(s) if s.is_empty() => {
                return Err(schema(format!("{path}.id"), "empty identifier"))
            }
            _ => {}
        }
        let lab = match opt_str(obj, "lab", &path)? {
            Some(lab) => lab.to_owned(),
            None => match &id {
                Ident::Label(s) => s.clone(),
                Ident::Code(c) => coding.level(*c).unwrap_or_default().to_owned(),
            },
        };
        let mut props = BTreeMap::new();
        for (k, v) in obj {
            if !NODE_MEMBERS.contains(&k.as_str()) {
                props.insert(k.clone(), value_from_json(v, &format!("{path}.{k}"))?);
            }
        }
        Ok(NodeRecord {
            id,
            lab,
            slab: opt_str(obj, "slab", &path)?.map(str::to_owned),
            x: opt_f64(obj, "x", &path)?,
            y: opt_f64(obj, "y", &path)?,
            mode: opt_str(obj, "mode", &path)?.map(str::to_owned),
            tq: obj
                .get("tq")
                .map(|v| tq_from_json(v, &format!("{path}.tq")))
                .transpose()?,
            props,
        })
    }

    fn link(&self, value: &Value, i: usize, factorized: bool) -> Result<LinkRecord, JsonError> {
        let path = format!("$.links[{i}]");
        let obj = value
            .as_object()
            .ok_or_else(|| schema(&path, "link must be an object"))?;
        let kind = match opt_str(obj, "type", &path)? {
            None => LinkKind::Arc,
            Some(t) => LinkKind::parse(t).ok_or_else(|| {
                schema(format!("{path}.type"), format!("unknown link type {t:?}"))
            })?,
        };
        let n1 = ident_from_json(obj.get("n1"), &format!("{path}.n1"))?;
        let n2 = ident_from_json(obj.get("n2"), &format!("{path}.n2"))?;
        for (end, name) in [(&n1, "n1"), (&n2, "n2")] {
            if end.is_code() != factorized {
                return Err(schema(
                    format!("{path}.{name}"),
                    "endpoint kind differs from node identifiers",
                ));
            }
        }
        let rel = ident_from_json(obj.get("rel"), &format!("{path}.rel"))?;
        let weight = match (opt_f64(obj, "w", &path)?, opt_f64(obj, "weight", &path)?) {
            (Some(w), _) | (None, Some(w)) => w,
            (None, None) => 1.0,
        };
        let mut props = BTreeMap::new();
        for (k, v) in obj {
            if !LINK_MEMBERS.contains(&k.as_str()) {
                props.insert(k.clone(), value_from_json(v, &format!("{path}.{k}"))?);
            }
        }
        Ok(LinkRecord {
            kind,
            n1,
            n2,
            rel,
            weight,
            label: opt_str(obj, "lab", &path)?.map(str::to_owned),
            tq: obj
                .get("tq")
                .map(|v| tq_from_json(v, &format!("{path}.tq")))
                .transpose()?,
            props,
        })
    }

    /// Builds the relation table and normalizes every link's relation to the
    /// document's identifier form.
    fn relation_table(
        &mut self,
        links: &mut [LinkRecord],
        factorized: bool,
    ) -> Result<CodingTable, JsonError> {
        let org = self.info.org;
        let mut table = match self.relation_levels.take() {
            Some(levels) => CodingTable::from_levels("relation", levels, org)
                .map_err(|e| schema("$.info.relations", e.to_string()))?,
            None if factorized => {
                let mut t = CodingTable::empty("relation", org);
                let max = links.iter().filter_map(|l| l.rel.as_code()).max();
                if let Some(max) = max {
                    for code in org..=max {
                        t.intern(&code.to_string());
                    }
                }
                t
            }
            None => {
                let mut names: Vec<&str> = links.iter().filter_map(|l| l.rel.as_label()).collect();
                names.sort_unstable();
                let mut t = CodingTable::empty("relation", org);
                for name in names {
                    t.intern(name);
                }
                t
            }
        };
        for (i, link) in links.iter_mut().enumerate() {
            link.rel = match (&link.rel, factorized) {
                (Ident::Code(c), true) => {
                    if table.level(*c).is_none() {
                        return Err(schema(
                            format!("$.links[{i}].rel"),
                            format!("relation code {c} is not declared"),
                        ));
                    }
                    Ident::Code(*c)
                }
                (Ident::Label(name), true) => Ident::Code(table.intern(name)),
                (Ident::Code(c), false) => match table.level(*c) {
                    Some(name) => Ident::Label(name.to_owned()),
                    None => {
                        return Err(schema(
                            format!("$.links[{i}].rel"),
                            format!("relation code {c} is not declared"),
                        ))
                    }
                },
                (Ident::Label(name), false) => {
                    table.intern(name);
                    Ident::Label(name.clone())
                }
            };
        }
        Ok(table)
    }
}

fn time_window(value: &Value) -> Result<TimeWindow, JsonError> {
    let p = "$.info.time";
    let obj = value
        .as_object()
        .ok_or_else(|| schema(p, "must be an object"))?;
    let t_min = opt_int(obj, "Tmin", p)?
        .ok_or_else(|| JsonError::MissingMember("$.info.time.Tmin".into()))?;
    let t_max = opt_int(obj, "Tmax", p)?
        .ok_or_else(|| JsonError::MissingMember("$.info.time.Tmax".into()))?;
    let mut t_labs = BTreeMap::new();
    if let Some(labs) = obj.get("Tlabs") {
        let labs = labs
            .as_object()
            .ok_or_else(|| schema("$.info.time.Tlabs", "must be an object"))?;
        for (k, v) in labs {
            let path = format!("$.info.time.Tlabs.{k}");
            let t: i64 = k
                .parse()
                .map_err(|_| temporal(&path, "time point must be an integer"))?;
            let label = v
                .as_str()
                .ok_or_else(|| schema(&path, "must be a string"))?;
            t_labs.insert(t, label.to_owned());
        }
    }
    Ok(TimeWindow {
        t_min,
        t_max,
        t_labs,
    })
}

fn event(value: &Value, path: &str) -> Result<EventRecord, JsonError> {
    let obj = value
        .as_object()
        .ok_or_else(|| schema(path, "event must be an object"))?;
    let text = |key: &str| opt_str(obj, key, path).map(|s| s.map(str::to_owned));
    Ok(EventRecord {
        date: text("date")?.unwrap_or_default(),
        title: text("title")?.unwrap_or_default(),
        author: text("author")?,
        desc: text("desc")?,
        url: text("url")?,
        cite: text("cite")?,
        copy: text("copy")?,
    })
}
