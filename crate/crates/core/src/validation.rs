//! Structural checks with two strictness levels.
//!
//! Every finding carries a stable rule identifier from [`Rule`]; the
//! severity of a rule depends on the level. Lenient mirrors what legacy
//! tools accept, strict adds the common-format metadata and temporal
//! requirements. Every rule that is an error at lenient level is also an
//! error at strict level.

use std::collections::{HashMap, HashSet};
use std::fmt;

use chrono::NaiveDate;

use crate::model::{Ident, LinkKind, Network, PropertyValue, TemporalQuantity, TimeWindow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Info,
    Warning,
    Error,
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Info => "info",
            Severity::Warning => "warning",
            Severity::Error => "error",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub enum Level {
    #[default]
    Lenient,
    Strict,
}

macro_rules! rules {
    ($($variant:ident => $id:literal, $lenient:expr, $strict:expr, $doc:literal;)*) => {
        /// Registry of validation rules.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum Rule {
            $(#[doc = $doc] $variant,)*
        }

        impl Rule {
            pub const ALL: &'static [Rule] = &[$(Rule::$variant,)*];

            pub fn id(self) -> &'static str {
                match self {
                    $(Rule::$variant => $id,)*
                }
            }

            pub fn description(self) -> &'static str {
                match self {
                    $(Rule::$variant => $doc,)*
                }
            }

            /// Severity at `level`; `None` when the rule is not checked.
            pub fn severity(self, level: Level) -> Option<Severity> {
                use Severity::*;
                match (self, level) {
                    $((Rule::$variant, Level::Lenient) => $lenient,
                      (Rule::$variant, Level::Strict) => $strict,)*
                }
            }

            pub fn from_id(id: &str) -> Option<Rule> {
                Rule::ALL.iter().copied().find(|r| r.id() == id)
            }
        }
    };
}

rules! {
    JsonSyntax => "json-syntax", Some(Error), Some(Error), "Input is not well-formed JSON text.";
    MemberType => "member-type", Some(Error), Some(Error), "A member has the wrong JSON type.";
    MissingMember => "missing-member", Some(Error), Some(Error), "A required member is absent.";
    UnsupportedVersion => "unsupported-version", Some(Error), Some(Error), "The netsJSON tag is not \"basic\".";
    OrgInvalid => "org-invalid", Some(Error), Some(Error), "The index base is neither 0 nor 1.";
    ModeInvalid => "mode-invalid", Some(Error), Some(Error), "The number of modes is below 1.";
    CounterMismatch => "counter-mismatch", Some(Warning), Some(Error), "A declared node, arc or edge count differs from the lists.";
    MixedIdKinds => "mixed-id-kinds", Some(Error), Some(Error), "Node identifiers or endpoints mix integer codes and text.";
    EmptyNodeId => "empty-node-id", Some(Error), Some(Error), "A text node identifier is empty.";
    DuplicateNodeId => "duplicate-node-id", Some(Error), Some(Error), "Two nodes share an identifier.";
    IdBelowOrg => "id-below-org", Some(Error), Some(Error), "An integer node code is smaller than the index base.";
    CodingInvalid => "coding-invalid", Some(Error), Some(Error), "A coding table has empty or duplicate levels, a base other than org, or does not cover the codes in use.";
    UnresolvedEndpoint => "unresolved-endpoint", Some(Error), Some(Error), "A link endpoint names no node.";
    RelationUndeclared => "relation-undeclared", Some(Error), Some(Error), "A link relation is missing from the relation table.";
    LinkTypeInvalid => "link-type-invalid", Some(Error), Some(Error), "A link type is neither \"arc\" nor \"edge\".";
    SimpleViolated => "simple-violated", Some(Error), Some(Error), "The network is declared simple but has parallel links.";
    MultirelViolated => "multirel-violated", Some(Error), Some(Error), "The network is declared single-relational but uses several relations.";
    DirectedWithEdges => "directed-with-edges", Some(Warning), Some(Warning), "The network is declared directed but contains edges.";
    SlabTooLong => "slab-too-long", Some(Warning), Some(Error), "A short label is longer than the label.";
    IntervalInverted => "interval-inverted", Some(Error), Some(Error), "An interval value has lo > hi.";
    DateInvalid => "date-invalid", Some(Warning), Some(Error), "A creation or modification date is not an ISO-8601 date.";
    ModifiedWithoutCreated => "modified-without-created", Some(Warning), Some(Error), "A modification date is given without a creation date.";
    DatesOutOfOrder => "dates-out-of-order", Some(Warning), Some(Error), "The creation date is after the modification date.";
    MetadataMissing => "metadata-missing", None, Some(Error), "The creation or modification date is absent.";
    EventDateInvalid => "event-date-invalid", Some(Warning), Some(Error), "An event date is absent or not an ISO-8601 date.";
    EventTitleEmpty => "event-title-empty", Some(Warning), Some(Error), "An event has no title.";
    TimeWindowInverted => "time-window-inverted", Some(Error), Some(Error), "Tmin is greater than Tmax.";
    TlabsKeyInvalid => "tlabs-key-invalid", Some(Error), Some(Error), "A Tlabs key is not an integer.";
    TlabsOutsideWindow => "tlabs-outside-window", Some(Warning), Some(Error), "A Tlabs key lies outside [Tmin, Tmax].";
    TqMalformed => "tq-malformed", Some(Error), Some(Error), "A temporal quantity is not a list of [start, end, value] triples with integer bounds.";
    TqEmptyInterval => "tq-empty-interval", Some(Error), Some(Error), "A temporal quantity segment has start >= end.";
    TqUnsorted => "tq-unsorted", Some(Error), Some(Error), "Temporal quantity segments are not sorted by start.";
    TqOverlap => "tq-overlap", Some(Error), Some(Error), "Two temporal quantity segments overlap.";
    TqOutsideWindow => "tq-outside-window", Some(Warning), Some(Error), "A temporal quantity segment leaves the time window.";
    TqWithoutWindow => "tq-without-window", Some(Warning), Some(Warning), "Temporal quantities are present but the info block has no time window.";
    TqMissing => "tq-missing", None, Some(Error), "A node or link of a temporal network has no temporal quantity.";
    ParseError => "parse-error", Some(Error), Some(Error), "A table or Pajek file cannot be read.";
    UnknownProperty => "unknown-property", Some(Error), Some(Error), "A requested node property is carried by no node.";
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Where a finding applies.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Location {
    Document,
    /// 1-based line of a text file.
    Line(usize),
    /// 0-based data row of a node or link table.
    Row {
        table: &'static str,
        row: usize,
    },
    /// JSON path such as `$.nodes[3].tq[0]`.
    Path(String),
}

impl Location {
    pub fn path(p: impl Into<String>) -> Self {
        Location::Path(p.into())
    }

    fn sort_key(&self) -> (u8, usize, usize) {
        match self {
            Location::Document => (0, 0, 0),
            Location::Line(l) => (1, *l, 0),
            Location::Row { table, row } => (2, usize::from(*table == "link"), *row),
            Location::Path(p) => {
                let rest = p.strip_prefix("$.").unwrap_or("");
                let (section, tail) = rest.split_once(['.', '[']).unwrap_or((rest, ""));
                let rank = match section {
                    "" => 0,
                    "netsJSON" => 1,
                    "info" => 2,
                    "nodes" => 4,
                    "links" => 5,
                    "data" => 6,
                    _ => 3,
                };
                let index = tail
                    .split(']')
                    .next()
                    .and_then(|i| i.parse().ok())
                    .unwrap_or(0);
                (3, rank, index)
            }
        }
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Document => f.write_str("document"),
            Location::Line(l) => write!(f, "line {l}"),
            Location::Row { table, row } => write!(f, "{table} row {row}"),
            Location::Path(p) => f.write_str(p),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub severity: Severity,
    pub rule: Rule,
    pub location: Location,
    pub message: String,
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}[{}] {}: {}",
            self.severity.as_str(),
            self.rule,
            self.location,
            self.message
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub level: Level,
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn new(level: Level) -> Self {
        ValidationReport {
            level,
            findings: Vec::new(),
        }
    }

    /// Records a finding unless the rule is inactive at this level.
    pub fn add(&mut self, rule: Rule, location: Location, message: impl Into<String>) {
        if let Some(severity) = rule.severity(self.level) {
            self.findings.push(Finding {
                severity,
                rule,
                location,
                message: message.into(),
            });
        }
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.findings.extend(other.findings);
    }

    /// Stable sort by location.
    pub fn sort(&mut self) {
        self.findings.sort_by_key(|f| f.location.sort_key());
    }

    pub fn is_empty(&self) -> bool {
        self.findings.is_empty()
    }

    pub fn has_errors(&self) -> bool {
        self.findings.iter().any(|f| f.severity == Severity::Error)
    }

    pub fn errors(&self) -> impl Iterator<Item = &Finding> {
        self.findings
            .iter()
            .filter(|f| f.severity == Severity::Error)
    }

    pub fn contains(&self, rule: Rule) -> bool {
        self.findings.iter().any(|f| f.rule == rule)
    }

    /// One finding per line, human-readable.
    pub fn render_text(&self) -> String {
        self.findings.iter().map(|f| format!("{f}\n")).collect()
    }

    /// One JSON object per line.
    pub fn render_json_lines(&self) -> String {
        self.findings
            .iter()
            .map(|f| {
                let obj = serde_json::json!({
                    "severity": f.severity.as_str(),
                    "rule": f.rule.id(),
                    "location": f.location.to_string(),
                    "message": f.message,
                });
                format!("{obj}\n")
            })
            .collect()
    }
}

/// Accepts `YYYY-MM-DD` and RFC 3339 date-times.
pub fn parse_date(text: &str) -> Option<NaiveDate> {
    NaiveDate::parse_from_str(text, "%Y-%m-%d")
        .ok()
        .or_else(|| {
            chrono::DateTime::parse_from_rfc3339(text)
                .ok()
                .map(|d| d.date_naive())
        })
}

pub(crate) fn check_dates(
    report: &mut ValidationReport,
    created: Option<&str>,
    modified: Option<&str>,
) {
    let created_date = created.and_then(|c| {
        let d = parse_date(c);
        if d.is_none() {
            report.add(
                Rule::DateInvalid,
                Location::path("$.info.created"),
                format!("{c:?} is not a date"),
            );
        }
        d
    });
    let modified_date = modified.and_then(|m| {
        let d = parse_date(m);
        if d.is_none() {
            report.add(
                Rule::DateInvalid,
                Location::path("$.info.modified"),
                format!("{m:?} is not a date"),
            );
        }
        d
    });
    if modified.is_some() && created.is_none() {
        report.add(
            Rule::ModifiedWithoutCreated,
            Location::path("$.info.modified"),
            "modified date without created date",
        );
    }
    if let (Some(c), Some(m)) = (created_date, modified_date) {
        if c > m {
            report.add(
                Rule::DatesOutOfOrder,
                Location::path("$.info.created"),
                format!("created {c} is after modified {m}"),
            );
        }
    }
    for (name, value) in [("created", created), ("modified", modified)] {
        if value.is_none() {
            report.add(
                Rule::MetadataMissing,
                Location::path("$.info"),
                format!("no {name} date"),
            );
        }
    }
}

pub(crate) fn check_event(
    report: &mut ValidationReport,
    index: usize,
    date: Option<&str>,
    title: Option<&str>,
) {
    let path = format!("$.info.meta[{index}]");
    match date {
        Some(d) if parse_date(d).is_some() => {}
        Some(d) => report.add(
            Rule::EventDateInvalid,
            Location::path(format!("{path}.date")),
            format!("{d:?} is not a date"),
        ),
        None => report.add(
            Rule::EventDateInvalid,
            Location::path(format!("{path}.date")),
            "event has no date",
        ),
    }
    if title.map_or(true, str::is_empty) {
        report.add(
            Rule::EventTitleEmpty,
            Location::path(format!("{path}.title")),
            "event has no title",
        );
    }
}

pub(crate) fn check_window(
    report: &mut ValidationReport,
    t_min: i64,
    t_max: i64,
    label_keys: impl IntoIterator<Item = i64>,
) {
    if t_min > t_max {
        report.add(
            Rule::TimeWindowInverted,
            Location::path("$.info.time"),
            format!("Tmin {t_min} > Tmax {t_max}"),
        );
    }
    for key in label_keys {
        if key < t_min || key > t_max {
            report.add(
                Rule::TlabsOutsideWindow,
                Location::path(format!("$.info.time.Tlabs.{key}")),
                format!("time point {key} is outside [{t_min}, {t_max}]"),
            );
        }
    }
}

/// Checks segment bounds of one temporal quantity given as `(start, end)`
/// pairs in stored order.
pub(crate) fn check_segments(
    report: &mut ValidationReport,
    segments: &[(i64, i64)],
    window: Option<(i64, i64)>,
    path: &str,
) {
    for (i, &(s, f)) in segments.iter().enumerate() {
        if s >= f {
            report.add(
                Rule::TqEmptyInterval,
                Location::path(format!("{path}[{i}]")),
                format!("segment [{s}, {f}) is empty"),
            );
        }
        if let Some((t_min, t_max)) = window {
            if s < t_min || f > t_max.saturating_add(1) {
                report.add(
                    Rule::TqOutsideWindow,
                    Location::path(format!("{path}[{i}]")),
                    format!("segment [{s}, {f}) leaves window [{t_min}, {t_max}]"),
                );
            }
        }
    }
    for i in 1..segments.len() {
        if segments[i].0 < segments[i - 1].0 {
            report.add(
                Rule::TqUnsorted,
                Location::path(format!("{path}[{i}]")),
                "segment starts before its predecessor",
            );
        }
    }
    let mut live: Vec<(usize, i64, i64)> = segments
        .iter()
        .enumerate()
        .filter(|(_, (s, f))| s < f)
        .map(|(i, &(s, f))| (i, s, f))
        .collect();
    live.sort_by_key(|&(i, s, _)| (s, i));
    let mut reach: Option<(usize, i64)> = None;
    for &(i, s, f) in &live {
        if let Some((j, end)) = reach {
            if s < end {
                report.add(
                    Rule::TqOverlap,
                    Location::path(format!("{path}[{}]", i.max(j))),
                    format!("segments {} and {} overlap", i.min(j), i.max(j)),
                );
            }
        }
        if reach.map_or(true, |(_, end)| f > end) {
            reach = Some((i, f));
        }
    }
}

/// Parallel-link, multi-relation and directedness checks. `keys` holds
/// `(kind, relation, n1, n2)` per link.
pub(crate) fn check_link_flags(
    report: &mut ValidationReport,
    simple: Option<bool>,
    multirel: Option<bool>,
    directed: Option<bool>,
    keys: &[(LinkKind, String, String, String)],
) {
    if simple == Some(true) {
        let mut seen = HashSet::new();
        for (i, (kind, rel, a, b)) in keys.iter().enumerate() {
            let (a, b) = if *kind == LinkKind::Edge && b < a {
                (b, a)
            } else {
                (a, b)
            };
            if !seen.insert((kind, rel, a, b)) {
                report.add(
                    Rule::SimpleViolated,
                    Location::path(format!("$.links[{i}]")),
                    format!("parallel {} {a} -> {b} in relation {rel}", kind.as_str()),
                );
            }
        }
    }
    if multirel == Some(false) {
        let distinct: HashSet<&String> = keys.iter().map(|k| &k.1).collect();
        if distinct.len() > 1 {
            report.add(
                Rule::MultirelViolated,
                Location::path("$.info.multirel"),
                format!(
                    "multirel is false but {} relations are used",
                    distinct.len()
                ),
            );
        }
    }
    if directed == Some(true) {
        let edges = keys.iter().filter(|k| k.0 == LinkKind::Edge).count();
        if edges > 0 {
            report.add(
                Rule::DirectedWithEdges,
                Location::path("$.info.directed"),
                format!("directed network has {edges} edges"),
            );
        }
    }
}

pub(crate) fn check_value(report: &mut ValidationReport, value: &PropertyValue, path: &str) {
    match value {
        PropertyValue::Interval { lo, hi } if lo > hi => report.add(
            Rule::IntervalInverted,
            Location::path(path),
            format!("interval [{lo}, {hi}] is inverted"),
        ),
        PropertyValue::List(items) => {
            for (i, item) in items.iter().enumerate() {
                check_value(report, item, &format!("{path}[{i}]"));
            }
        }
        PropertyValue::Map(map) => {
            for (k, v) in map {
                check_value(report, v, &format!("{path}.{k}"));
            }
        }
        PropertyValue::Temporal(tq) => {
            for (i, seg) in tq.segments.iter().enumerate() {
                check_value(report, &seg.value, &format!("{path}[{i}][2]"));
            }
        }
        _ => {}
    }
}

fn segment_bounds(tq: &TemporalQuantity) -> Vec<(i64, i64)> {
    tq.segments.iter().map(|s| (s.start, s.end)).collect()
}

/// Verifies model invariants and that the info flags describe the content.
pub fn check_network(network: &Network, level: Level) -> ValidationReport {
    let mut report = ValidationReport::new(level);
    let info = &network.info;
    let org = info.org;

    if org != 0 && org != 1 {
        report.add(
            Rule::OrgInvalid,
            Location::path("$.info.org"),
            format!("org is {org}"),
        );
    }
    if info.mode < 1 {
        report.add(
            Rule::ModeInvalid,
            Location::path("$.info.mode"),
            "mode is 0",
        );
    }
    let n_arcs = network
        .links
        .iter()
        .filter(|l| l.kind == LinkKind::Arc)
        .count();
    for (name, declared, actual) in [
        ("nNodes", info.n_nodes, network.nodes.len()),
        ("nArcs", info.n_arcs, n_arcs),
        ("nEdges", info.n_edges, network.links.len() - n_arcs),
    ] {
        if declared != actual {
            report.add(
                Rule::CounterMismatch,
                Location::path(format!("$.info.{name}")),
                format!("{name} is {declared} but the lists hold {actual}"),
            );
        }
    }
    check_dates(
        &mut report,
        info.created.as_deref(),
        info.modified.as_deref(),
    );
    for (i, event) in info.meta.iter().enumerate() {
        check_event(&mut report, i, Some(&event.date), Some(&event.title));
    }
    for (name, table) in [
        ("relations", &network.relations),
        ("nodeCoding", &network.node_coding),
    ]
    .into_iter()
    .chain(
        network
            .property_codings
            .iter()
            .map(|(k, t)| (k.as_str(), t)),
    ) {
        if table.base() != org && !table.is_empty() {
            report.add(
                Rule::CodingInvalid,
                Location::path(format!("$.info.{name}")),
                format!("coding table base {} differs from org {org}", table.base()),
            );
        }
    }
    for (k, v) in &info.extra {
        check_value(&mut report, v, &format!("$.info.{k}"));
    }

    let factorized = network.is_factorized();
    let mut ids: HashMap<&Ident, usize> = HashMap::new();
    for (i, node) in network.nodes.iter().enumerate() {
        let path = format!("$.nodes[{i}]");
        match &node.id {
            id if id.is_code() != factorized => report.add(
                Rule::MixedIdKinds,
                Location::path(format!("{path}.id")),
                "identifier kind differs from the first node",
            ),
            Ident::Label(s) if s.is_empty() => report.add(
                Rule::EmptyNodeId,
                Location::path(format!("{path}.id")),
                "empty identifier",
            ),
            Ident::Code(c) if *c < org => report.add(
                Rule::IdBelowOrg,
                Location::path(format!("{path}.id")),
                format!("code {c} is below org {org}"),
            ),
            Ident::Code(c) if network.node_coding.level(*c).is_none() => report.add(
                Rule::CodingInvalid,
                Location::path(format!("{path}.id")),
                format!("code {c} is not in the node coding"),
            ),
            _ => {}
        }
        if ids.insert(&node.id, i).is_some() {
            report.add(
                Rule::DuplicateNodeId,
                Location::path(format!("{path}.id")),
                format!("duplicate identifier {}", node.id),
            );
        }
        if let Some(slab) = &node.slab {
            if slab.chars().count() > node.lab.chars().count() {
                report.add(
                    Rule::SlabTooLong,
                    Location::path(format!("{path}.slab")),
                    "short label is longer than the label",
                );
            }
        }
        for (k, v) in &node.props {
            check_value(&mut report, v, &format!("{path}.{k}"));
        }
    }

    let mut keys = Vec::with_capacity(network.links.len());
    for (i, link) in network.links.iter().enumerate() {
        let path = format!("$.links[{i}]");
        for (end, name) in [(&link.n1, "n1"), (&link.n2, "n2")] {
            if end.is_code() != factorized && !network.nodes.is_empty() {
                report.add(
                    Rule::MixedIdKinds,
                    Location::path(format!("{path}.{name}")),
                    "endpoint kind differs from node identifiers",
                );
            } else if !ids.contains_key(end) {
                report.add(
                    Rule::UnresolvedEndpoint,
                    Location::path(format!("{path}.{name}")),
                    format!("no node {end}"),
                );
            }
        }
        let rel_known = match &link.rel {
            Ident::Code(c) => network.relations.level(*c).is_some(),
            Ident::Label(s) => network.relations.code(s).is_some(),
        };
        if !rel_known {
            report.add(
                Rule::RelationUndeclared,
                Location::path(format!("{path}.rel")),
                format!("relation {} is not in the relation table", link.rel),
            );
        }
        for (k, v) in &link.props {
            check_value(&mut report, v, &format!("{path}.{k}"));
        }
        keys.push((
            link.kind,
            link.rel.to_string(),
            link.n1.to_string(),
            link.n2.to_string(),
        ));
    }
    check_link_flags(
        &mut report,
        Some(info.simple),
        Some(info.multirel),
        Some(info.directed),
        &keys,
    );
    report.sort();
    report
}

/// Checks the time window and every node and link temporal quantity.
pub fn check_temporal(network: &Network, level: Level) -> ValidationReport {
    let mut report = ValidationReport::new(level);
    let window = network.info.time.as_ref().map(
        |TimeWindow {
             t_min,
             t_max,
             t_labs,
         }| {
            check_window(&mut report, *t_min, *t_max, t_labs.keys().copied());
            (*t_min, *t_max)
        },
    );
    let mut any_tq = None;
    let tqs = network
        .nodes
        .iter()
        .enumerate()
        .map(|(i, n)| (format!("$.nodes[{i}]"), n.tq.as_ref()))
        .chain(
            network
                .links
                .iter()
                .enumerate()
                .map(|(i, l)| (format!("$.links[{i}]"), l.tq.as_ref())),
        );
    for (path, tq) in tqs {
        match tq {
            Some(tq) => {
                any_tq.get_or_insert_with(|| path.clone());
                check_segments(
                    &mut report,
                    &segment_bounds(tq),
                    window,
                    &format!("{path}.tq"),
                );
            }
            None if window.is_some() => report.add(
                Rule::TqMissing,
                Location::path(path),
                "temporal network element has no tq",
            ),
            None => {}
        }
    }
    if let (None, Some(path)) = (window, any_tq) {
        report.add(
            Rule::TqWithoutWindow,
            Location::path(format!("{path}.tq")),
            "tq present but info has no time window",
        );
    }
    report.sort();
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{LinkRecord, NodeRecord, Segment};

    fn tq(parts: &[(i64, i64, i64)]) -> TemporalQuantity {
        TemporalQuantity::new(
            parts
                .iter()
                .map(|&(s, f, v)| Segment::new(s, f, v))
                .collect(),
        )
    }

    fn temporal_net(parts: &[(i64, i64, i64)]) -> Network {
        let mut net = Network::from_records(1, vec![NodeRecord::labeled("a")], vec![]);
        net.info.time = Some(TimeWindow {
            t_min: 1,
            t_max: 10,
            t_labs: Default::default(),
        });
        net.nodes[0].tq = Some(tq(parts));
        net
    }

    #[test]
    fn registry_ids_are_unique() {
        let ids: HashSet<&str> = Rule::ALL.iter().map(|r| r.id()).collect();
        assert_eq!(ids.len(), Rule::ALL.len());
        for rule in Rule::ALL {
            assert_eq!(Rule::from_id(rule.id()), Some(*rule));
        }
    }

    #[test]
    fn strict_errors_cover_lenient_errors() {
        for rule in Rule::ALL {
            if rule.severity(Level::Lenient) == Some(Severity::Error) {
                assert_eq!(
                    rule.severity(Level::Strict),
                    Some(Severity::Error),
                    "{rule}"
                );
            }
            assert!(
                rule.severity(Level::Strict) >= rule.severity(Level::Lenient),
                "{rule}"
            );
        }
    }

    #[test]
    fn temporal_examples() {
        assert!(check_temporal(&temporal_net(&[(1, 5, 1)]), Level::Strict).is_empty());
        let r = check_temporal(&temporal_net(&[(5, 5, 1)]), Level::Lenient);
        assert_eq!(
            r.findings.iter().map(|f| f.rule).collect::<Vec<_>>(),
            vec![Rule::TqEmptyInterval]
        );
        let r = check_temporal(&temporal_net(&[(1, 5, 1), (3, 8, 2)]), Level::Lenient);
        assert_eq!(
            r.findings.iter().map(|f| f.rule).collect::<Vec<_>>(),
            vec![Rule::TqOverlap]
        );
        let r = check_temporal(&temporal_net(&[(3, 5, 1), (1, 2, 2)]), Level::Lenient);
        assert_eq!(
            r.findings.iter().map(|f| f.rule).collect::<Vec<_>>(),
            vec![Rule::TqUnsorted]
        );
    }

    #[test]
    fn window_containment_depends_on_level() {
        let net = temporal_net(&[(1, 12, 1)]);
        let lenient = check_temporal(&net, Level::Lenient);
        let strict = check_temporal(&net, Level::Strict);
        assert_eq!(lenient.findings[0].severity, Severity::Warning);
        assert_eq!(strict.findings[0].severity, Severity::Error);
        assert!(check_temporal(&temporal_net(&[(1, 11, 1)]), Level::Strict).is_empty());
    }

    #[test]
    fn tq_without_window_and_missing_tq() {
        let mut net = temporal_net(&[(1, 2, 1)]);
        net.info.time = None;
        assert!(check_temporal(&net, Level::Lenient).contains(Rule::TqWithoutWindow));
        let mut net = temporal_net(&[(1, 2, 1)]);
        net.nodes.push(NodeRecord::labeled("b"));
        assert!(check_temporal(&net, Level::Lenient).is_empty());
        assert!(check_temporal(&net, Level::Strict).contains(Rule::TqMissing));
    }

    #[test]
    fn simple_violation() {
        let mut net = Network::from_records(
            1,
            vec![NodeRecord::labeled("1"), NodeRecord::labeled("2")],
            vec![
                LinkRecord::new(LinkKind::Arc, "1", "2", "authorOf"),
                LinkRecord::new(LinkKind::Arc, "1", "2", "authorOf"),
            ],
        );
        net.info.simple = true;
        let r = check_network(&net, Level::Lenient);
        assert_eq!(r.findings.len(), 1);
        assert_eq!(r.findings[0].rule, Rule::SimpleViolated);
        assert_eq!(r.findings[0].location, Location::path("$.links[1]"));
    }

    #[test]
    fn empty_network_is_clean() {
        assert!(check_network(&Network::default(), Level::Lenient).is_empty());
        assert!(check_temporal(&Network::default(), Level::Strict).is_empty());
        let strict = check_network(&Network::default(), Level::Strict);
        assert!(strict
            .findings
            .iter()
            .all(|f| f.rule == Rule::MetadataMissing));
    }

    #[test]
    fn flags_and_counters() {
        let mut net = Network::from_records(
            1,
            vec![NodeRecord::labeled("a"), NodeRecord::labeled("b")],
            vec![
                LinkRecord::new(LinkKind::Edge, "a", "b", "x"),
                LinkRecord::new(LinkKind::Arc, "a", "b", "y"),
            ],
        );
        net.info.multirel = false;
        net.info.n_nodes = 3;
        let r = check_network(&net, Level::Lenient);
        let rules: Vec<Rule> = r.findings.iter().map(|f| f.rule).collect();
        assert_eq!(
            rules,
            vec![
                Rule::CounterMismatch,
                Rule::MultirelViolated,
                Rule::DirectedWithEdges
            ]
        );
        assert!(!r.has_errors() || r.contains(Rule::MultirelViolated));
    }

    #[test]
    fn renders_json_lines() {
        let mut r = ValidationReport::new(Level::Strict);
        r.add(
            Rule::CounterMismatch,
            Location::path("$.info.nNodes"),
            "nNodes is 15",
        );
        let line = r.render_json_lines();
        let v: serde_json::Value = serde_json::from_str(line.trim()).unwrap();
        assert_eq!(v["rule"], "counter-mismatch");
        assert_eq!(v["severity"], "error");
        assert_eq!(
            r.render_text(),
            "error[counter-mismatch] $.info.nNodes: nNodes is 15\n"
        );
    }
}
