//! Validation of a NetsJSON document without building a network.
//!
//! The checker walks the JSON value directly so that it can report every
//! problem of a document that the reader would reject at the first one.

use std::collections::HashSet;
use std::io::Read;

use serde_json::{Map, Value};

use super::{
    parse_json, value_from_json, JsonError, FORMAT_TAG, INFO_MEMBERS, LINK_MEMBERS, NODE_MEMBERS,
};
use crate::model::{Ident, LinkKind};
use crate::validation::{
    check_dates, check_event, check_link_flags, check_segments, check_value, check_window, Level,
    Location, Rule, ValidationReport,
};

/// Reads a document and reports every finding at `level`. Fails only when
/// the source cannot be read.
pub fn validate_netsjson_document(
    mut source: impl Read,
    level: Level,
) -> std::io::Result<ValidationReport> {
    let mut bytes = Vec::new();
    source.read_to_end(&mut bytes)?;
    Ok(validate_netsjson_bytes(&bytes, level))
}

pub fn validate_netsjson_bytes(bytes: &[u8], level: Level) -> ValidationReport {
    let mut checker = Checker {
        report: ValidationReport::new(level),
        org: 1,
        window: None,
    };
    match parse_json(bytes) {
        Ok(doc) => checker.document(&doc),
        Err(JsonError::Syntax { line, message, .. }) => {
            checker
                .report
                .add(Rule::JsonSyntax, Location::Line(line), message)
        }
        Err(e) => checker
            .report
            .add(Rule::JsonSyntax, Location::Document, e.to_string()),
    }
    checker.report.sort();
    checker.report
}

fn type_name(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "boolean",
        Value::Number(n) if n.is_i64() || n.is_u64() => "integer",
        Value::Number(_) => "number",
        Value::String(_) => "string",
        Value::Array(_) => "array",
        Value::Object(_) => "object",
    }
}

fn ident(v: &Value) -> Option<Ident> {
    match v {
        Value::String(s) => Some(Ident::Label(s.clone())),
        v if v.is_i64() => v.as_i64().map(Ident::Code),
        _ => None,
    }
}

#[derive(Default)]
struct InfoFacts {
    counters: [Option<u64>; 3],
    simple: Option<bool>,
    directed: Option<bool>,
    multirel: Option<bool>,
    relations: Option<Vec<String>>,
    node_coding: Option<Vec<String>>,
}

struct Checker {
    report: ValidationReport,
    org: i64,
    window: Option<(i64, i64)>,
}

impl Checker {
    fn add(&mut self, rule: Rule, path: impl Into<String>, message: impl Into<String>) {
        self.report.add(rule, Location::Path(path.into()), message);
    }

    fn wrong_type(&mut self, path: &str, expected: &str, found: &Value) {
        self.add(
            Rule::MemberType,
            path,
            format!("expected {expected}, found {}", type_name(found)),
        );
    }

    fn string<'v>(
        &mut self,
        obj: &'v Map<String, Value>,
        key: &str,
        path: &str,
    ) -> Option<&'v str> {
        match obj.get(key)? {
            Value::String(s) => Some(s),
            other => {
                self.wrong_type(&format!("{path}.{key}"), "string", other);
                None
            }
        }
    }

    fn integer(&mut self, obj: &Map<String, Value>, key: &str, path: &str) -> Option<i64> {
        let v = obj.get(key)?;
        if v.is_i64() {
            v.as_i64()
        } else {
            self.wrong_type(&format!("{path}.{key}"), "integer", v);
            None
        }
    }

    fn boolean(&mut self, obj: &Map<String, Value>, key: &str, path: &str) -> Option<bool> {
        match obj.get(key)? {
            Value::Bool(b) => Some(*b),
            other => {
                self.wrong_type(&format!("{path}.{key}"), "boolean", other);
                None
            }
        }
    }

    fn number(&mut self, obj: &Map<String, Value>, key: &str, path: &str) {
        if let Some(v) = obj.get(key) {
            if !v.is_number() && !v.is_null() {
                self.wrong_type(&format!("{path}.{key}"), "number", v);
            }
        }
    }

    fn levels(&mut self, value: &Value, path: &str) -> Option<Vec<String>> {
        let Some(items) = value.as_array() else {
            self.wrong_type(path, "array of strings", value);
            return None;
        };
        let mut levels = Vec::with_capacity(items.len());
        let mut seen = HashSet::new();
        for (i, item) in items.iter().enumerate() {
            match item {
                Value::String(s) if s.is_empty() => {
                    self.add(Rule::CodingInvalid, format!("{path}[{i}]"), "empty level")
                }
                Value::String(s) if !seen.insert(s.as_str()) => self.add(
                    Rule::CodingInvalid,
                    format!("{path}[{i}]"),
                    format!("duplicate level {s:?}"),
                ),
                Value::String(_) => {}
                other => self.wrong_type(&format!("{path}[{i}]"), "string", other),
            }
            levels.push(item.as_str().unwrap_or_default().to_owned());
        }
        Some(levels)
    }

    /// Checks a structured property value.
    fn property(&mut self, value: &Value, path: &str) {
        match value_from_json(value, path) {
            Ok(v) => check_value(&mut self.report, &v, path),
            Err(JsonError::Temporal { path, message }) => {
                self.add(Rule::TqMalformed, path, message)
            }
            Err(e) => self.add(Rule::MemberType, path, e.to_string()),
        }
    }

    /// Checks a node or link `tq` member; returns false when it is absent.
    fn tq(&mut self, obj: &Map<String, Value>, path: &str) -> bool {
        let Some(value) = obj.get("tq") else {
            return false;
        };
        let path = format!("{path}.tq");
        let Some(items) = value.as_array() else {
            self.add(
                Rule::TqMalformed,
                &path,
                format!("expected array of segments, found {}", type_name(value)),
            );
            return true;
        };
        let mut bounds = Vec::with_capacity(items.len());
        for (i, item) in items.iter().enumerate() {
            let seg_path = format!("{path}[{i}]");
            let triple = item.as_array().filter(|t| t.len() == 3);
            match triple {
                Some(t) if t[0].is_i64() && t[1].is_i64() => {
                    bounds.push((
                        t[0].as_i64().expect("checked"),
                        t[1].as_i64().expect("checked"),
                    ));
                    self.property(&t[2], &format!("{seg_path}[2]"));
                }
                _ => self.add(
                    Rule::TqMalformed,
                    seg_path,
                    "segment must be [start, end, value] with integer bounds",
                ),
            }
        }
        check_segments(&mut self.report, &bounds, self.window, &path);
        true
    }

    fn document(&mut self, doc: &Value) {
        let Some(root) = doc.as_object() else {
            self.wrong_type("$", "object", doc);
            return;
        };
        match root.get("netsJSON") {
            None => self.add(
                Rule::MissingMember,
                "$.netsJSON",
                "member netsJSON is required",
            ),
            Some(Value::String(tag)) if tag == FORMAT_TAG => {}
            Some(Value::String(tag)) => self.add(
                Rule::UnsupportedVersion,
                "$.netsJSON",
                format!("version {tag:?} is not supported"),
            ),
            Some(other) => self.wrong_type("$.netsJSON", "string", other),
        }
        let empty = Map::new();
        let info = match root.get("info") {
            None => {
                self.add(Rule::MissingMember, "$.info", "member info is required");
                &empty
            }
            Some(Value::Object(obj)) => obj,
            Some(other) => {
                self.wrong_type("$.info", "object", other);
                &empty
            }
        };
        let facts = self.info(info);
        let nodes = self.list(root, "nodes");
        let links = self.list(root, "links");
        if let Some(nodes) = nodes {
            let (ids, kind) = self.nodes(nodes, &facts);
            if let Some(links) = links {
                self.links(links, &ids, kind, &facts);
            }
        }
        let counts = [
            nodes.map(Vec::len),
            links.map(|l| {
                l.iter()
                    .filter(|l| l.get("type").and_then(Value::as_str).unwrap_or("arc") == "arc")
                    .count()
            }),
            links.map(|l| {
                l.iter()
                    .filter(|l| l.get("type").and_then(Value::as_str) == Some("edge"))
                    .count()
            }),
        ];
        for ((declared, actual), name) in facts
            .counters
            .iter()
            .zip(counts)
            .zip(["nNodes", "nArcs", "nEdges"])
        {
            if let (Some(declared), Some(actual)) = (declared, actual) {
                if *declared != actual as u64 {
                    self.add(
                        Rule::CounterMismatch,
                        format!("$.info.{name}"),
                        format!("{name} is {declared} but the list holds {actual}"),
                    );
                }
            }
        }
    }

    fn list<'v>(&mut self, root: &'v Map<String, Value>, key: &str) -> Option<&'v Vec<Value>> {
        match root.get(key) {
            None => {
                self.add(
                    Rule::MissingMember,
                    format!("$.{key}"),
                    format!("member {key} is required"),
                );
                None
            }
            Some(Value::Array(items)) => Some(items),
            Some(other) => {
                self.wrong_type(&format!("$.{key}"), "array", other);
                None
            }
        }
    }

    fn info(&mut self, info: &Map<String, Value>) -> InfoFacts {
        let p = "$.info";
        let mut facts = InfoFacts::default();
        if let Some(org) = self.integer(info, "org", p) {
            if org == 0 || org == 1 {
                self.org = org;
            } else {
                self.add(
                    Rule::OrgInvalid,
                    "$.info.org",
                    format!("org must be 0 or 1, got {org}"),
                );
            }
        }
        for (i, key) in ["nNodes", "nArcs", "nEdges"].into_iter().enumerate() {
            if let Some(v) = info.get(key) {
                match v.as_u64() {
                    Some(n) if !v.is_f64() => facts.counters[i] = Some(n),
                    _ => self.wrong_type(&format!("$.info.{key}"), "non-negative integer", v),
                }
            }
        }
        facts.simple = self.boolean(info, "simple", p);
        facts.directed = self.boolean(info, "directed", p);
        facts.multirel = self.boolean(info, "multirel", p);
        if let Some(mode) = self.integer(info, "mode", p) {
            if mode < 1 {
                self.add(
                    Rule::ModeInvalid,
                    "$.info.mode",
                    format!("mode must be at least 1, got {mode}"),
                );
            }
        }
        self.string(info, "network", p);
        self.string(info, "title", p);
        let created = self.string(info, "created", p);
        let modified = self.string(info, "modified", p);
        check_dates(&mut self.report, created, modified);

        if let Some(time) = info.get("time") {
            self.time(time);
        }
        if let Some(meta) = info.get("meta") {
            self.meta(meta);
        }
        facts.relations = info
            .get("relations")
            .and_then(|v| self.levels(v, "$.info.relations"));
        facts.node_coding = info
            .get("nodeCoding")
            .and_then(|v| self.levels(v, "$.info.nodeCoding"));
        if let Some(codings) = info.get("propertyCodings") {
            match codings.as_object() {
                Some(obj) => {
                    for (name, levels) in obj {
                        self.levels(levels, &format!("$.info.propertyCodings.{name}"));
                    }
                }
                None => self.wrong_type("$.info.propertyCodings", "object", codings),
            }
        }
        for (k, v) in info {
            if !INFO_MEMBERS.contains(&k.as_str()) {
                self.property(v, &format!("$.info.{k}"));
            }
        }
        facts
    }

    fn time(&mut self, time: &Value) {
        let p = "$.info.time";
        let Some(obj) = time.as_object() else {
            self.wrong_type(p, "object", time);
            return;
        };
        for key in ["Tmin", "Tmax"] {
            if !obj.contains_key(key) {
                self.add(
                    Rule::MissingMember,
                    format!("{p}.{key}"),
                    format!("member {key} is required"),
                );
            }
        }
        let t_min = self.integer(obj, "Tmin", p);
        let t_max = self.integer(obj, "Tmax", p);
        let mut keys = Vec::new();
        if let Some(labs) = obj.get("Tlabs") {
            match labs.as_object() {
                Some(labs) => {
                    for (k, v) in labs {
                        let path = format!("{p}.Tlabs.{k}");
                        match k.parse::<i64>() {
                            Ok(t) => keys.push(t),
                            Err(_) => self.add(
                                Rule::TlabsKeyInvalid,
                                &path,
                                format!("time point {k:?} is not an integer"),
                            ),
                        }
                        if !v.is_string() {
                            self.wrong_type(&path, "string", v);
                        }
                    }
                }
                None => self.wrong_type("$.info.time.Tlabs", "object", labs),
            }
        }
        if let (Some(t_min), Some(t_max)) = (t_min, t_max) {
            check_window(&mut self.report, t_min, t_max, keys);
            self.window = Some((t_min, t_max));
        }
    }

    fn meta(&mut self, meta: &Value) {
        let Some(events) = meta.as_array() else {
            self.wrong_type("$.info.meta", "array", meta);
            return;
        };
        for (i, event) in events.iter().enumerate() {
            let path = format!("$.info.meta[{i}]");
            let Some(obj) = event.as_object() else {
                self.wrong_type(&path, "object", event);
                continue;
            };
            let date = self.string(obj, "date", &path);
            let title = self.string(obj, "title", &path);
            for key in ["author", "desc", "url", "cite", "copy"] {
                self.string(obj, key, &path);
            }
            check_event(&mut self.report, i, date, title);
        }
    }

    /// Returns the node identifiers and whether the first one is a code.
    fn nodes(&mut self, nodes: &[Value], facts: &InfoFacts) -> (HashSet<Ident>, Option<bool>) {
        let mut ids = HashSet::with_capacity(nodes.len());
        let mut kind: Option<bool> = None;
        let mut first_tq: Option<String> = None;
        for (i, node) in nodes.iter().enumerate() {
            let path = format!("$.nodes[{i}]");
            let Some(obj) = node.as_object() else {
                self.wrong_type(&path, "object", node);
                continue;
            };
            let id_path = format!("{path}.id");
            let id = match obj.get("id") {
                None => {
                    self.add(Rule::MissingMember, &id_path, "member id is required");
                    None
                }
                Some(v) => {
                    let id = ident(v);
                    if id.is_none() {
                        self.wrong_type(&id_path, "integer or string", v);
                    }
                    id
                }
            };
            if let Some(id) = &id {
                let is_code = id.is_code();
                if *kind.get_or_insert(is_code) != is_code {
                    self.add(
                        Rule::MixedIdKinds,
                        &id_path,
                        "identifier kind differs from the first node",
                    );
                }
                match id {
                    Ident::Label(s) if s.is_empty() => {
                        self.add(Rule::EmptyNodeId, &id_path, "empty identifier")
                    }
                    Ident::Code(c) if *c < self.org => self.add(
                        Rule::IdBelowOrg,
                        &id_path,
                        format!("code {c} is below org {}", self.org),
                    ),
                    Ident::Code(c) => {
                        if let Some(levels) = &facts.node_coding {
                            if (c - self.org) as u64 >= levels.len() as u64 {
                                self.add(
                                    Rule::CodingInvalid,
                                    &id_path,
                                    format!("code {c} is not in nodeCoding"),
                                );
                            }
                        }
                    }
                    _ => {}
                }
                if !ids.insert(id.clone()) {
                    self.add(
                        Rule::DuplicateNodeId,
                        &id_path,
                        format!("duplicate identifier {id}"),
                    );
                }
            }
            let lab = self
                .string(obj, "lab", &path)
                .map(str::to_owned)
                .or_else(|| id.as_ref().and_then(|id| id.as_label().map(str::to_owned)));
            if let Some(slab) = self.string(obj, "slab", &path) {
                if slab.chars().count() > lab.as_deref().unwrap_or_default().chars().count() {
                    self.add(
                        Rule::SlabTooLong,
                        format!("{path}.slab"),
                        "short label is longer than the label",
                    );
                }
            }
            self.number(obj, "x", &path);
            self.number(obj, "y", &path);
            self.string(obj, "mode", &path);
            self.element_tq(obj, &path, &mut first_tq);
            for (k, v) in obj {
                if !NODE_MEMBERS.contains(&k.as_str()) {
                    self.property(v, &format!("{path}.{k}"));
                }
            }
        }
        if let Some(path) = first_tq.filter(|_| self.window.is_none()) {
            self.add(
                Rule::TqWithoutWindow,
                path,
                "tq present but info has no time window",
            );
        }
        (ids, kind)
    }

    fn element_tq(&mut self, obj: &Map<String, Value>, path: &str, first_tq: &mut Option<String>) {
        if self.tq(obj, path) {
            first_tq.get_or_insert_with(|| format!("{path}.tq"));
        } else if self.window.is_some() {
            self.add(Rule::TqMissing, path, "temporal network element has no tq");
        }
    }

    fn links(
        &mut self,
        links: &[Value],
        ids: &HashSet<Ident>,
        node_kind: Option<bool>,
        facts: &InfoFacts,
    ) {
        let mut keys = Vec::with_capacity(links.len());
        let mut first_tq: Option<String> = None;
        for (i, link) in links.iter().enumerate() {
            let path = format!("$.links[{i}]");
            let Some(obj) = link.as_object() else {
                self.wrong_type(&path, "object", link);
                continue;
            };
            let kind = match obj.get("type") {
                None => Some(LinkKind::Arc),
                Some(v) => {
                    let kind = v.as_str().and_then(LinkKind::parse);
                    if kind.is_none() {
                        self.add(
                            Rule::LinkTypeInvalid,
                            format!("{path}.type"),
                            format!("link type {v} is neither \"arc\" nor \"edge\""),
                        );
                    }
                    kind
                }
            };
            let mut ends = Vec::with_capacity(2);
            for name in ["n1", "n2"] {
                let end_path = format!("{path}.{name}");
                match obj.get(name) {
                    None => self.add(
                        Rule::MissingMember,
                        &end_path,
                        format!("member {name} is required"),
                    ),
                    Some(v) => match ident(v) {
                        None => self.wrong_type(&end_path, "integer or string", v),
                        Some(end) if node_kind.is_some_and(|k| k != end.is_code()) => self.add(
                            Rule::MixedIdKinds,
                            &end_path,
                            "endpoint kind differs from node identifiers",
                        ),
                        Some(end) if !ids.contains(&end) => self.add(
                            Rule::UnresolvedEndpoint,
                            &end_path,
                            format!("no node {end}"),
                        ),
                        Some(end) => ends.push(end.to_string()),
                    },
                }
            }
            let rel_path = format!("{path}.rel");
            let rel = match obj.get("rel") {
                None => {
                    self.add(Rule::MissingMember, &rel_path, "member rel is required");
                    None
                }
                Some(v) => {
                    let rel = ident(v);
                    if rel.is_none() {
                        self.wrong_type(&rel_path, "integer or string", v);
                    }
                    rel
                }
            };
            let rel_name = rel.map(|rel| self.relation(rel, &facts.relations, &rel_path));
            for key in ["w", "weight"] {
                self.number(obj, key, &path);
            }
            self.string(obj, "lab", &path);
            self.element_tq(obj, &path, &mut first_tq);
            for (k, v) in obj {
                if !LINK_MEMBERS.contains(&k.as_str()) {
                    self.property(v, &format!("{path}.{k}"));
                }
            }
            if let (Some(kind), Some(rel), [a, b]) = (kind, rel_name, ends.as_slice()) {
                keys.push((kind, rel, a.clone(), b.clone()));
            }
        }
        if let Some(path) = first_tq.filter(|_| self.window.is_none()) {
            self.add(
                Rule::TqWithoutWindow,
                path,
                "tq present but info has no time window",
            );
        }
        check_link_flags(
            &mut self.report,
            facts.simple,
            facts.multirel,
            facts.directed,
            &keys,
        );
    }

    /// Resolves a relation reference to its name, reporting undeclared ones.
    fn relation(&mut self, rel: Ident, declared: &Option<Vec<String>>, path: &str) -> String {
        match (&rel, declared) {
            (Ident::Code(c), Some(levels)) => {
                let found = c
                    .checked_sub(self.org)
                    .and_then(|i| usize::try_from(i).ok())
                    .and_then(|i| levels.get(i));
                match found {
                    Some(name) => return name.clone(),
                    None => self.add(
                        Rule::RelationUndeclared,
                        path,
                        format!("relation code {c} is not declared"),
                    ),
                }
            }
            (Ident::Code(c), None) if *c < self.org => self.add(
                Rule::RelationUndeclared,
                path,
                format!("relation code {c} is below org {}", self.org),
            ),
            (Ident::Label(name), Some(levels)) if !levels.contains(name) => self.add(
                Rule::RelationUndeclared,
                path,
                format!("relation {name:?} is not in info.relations"),
            ),
            _ => {}
        }
        rel.to_string()
    }
}
