//! In-memory network model shared by every reader and writer.
//!
//! A [`Network`] holds an info block, node records with their properties,
//! link records with their weights, and the coding tables that relate
//! labeled and factorized forms.

mod temporal;
mod value;

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

pub use temporal::{tq_value_at, Segment, TemporalQuantity};
pub use value::PropertyValue;

use crate::coding::CodingTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructuralError {
    #[error("link {link} has unresolved endpoint {node}")]
    UnresolvedEndpoint { link: usize, node: String },
    #[error("duplicate node identifier {0}")]
    DuplicateNode(String),
    #[error("node identifiers mix labels and codes")]
    MixedIdentifiers,
}

/// Node identifier, link endpoint or relation reference.
///
/// Labeled networks use [`Ident::Label`]; factorized networks use
/// [`Ident::Code`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ident {
    Label(String),
    Code(i64),
}

impl Ident {
    pub fn as_label(&self) -> Option<&str> {
        match self {
            Ident::Label(s) => Some(s),
            Ident::Code(_) => None,
        }
    }

    pub fn as_code(&self) -> Option<i64> {
        match *self {
            Ident::Code(c) => Some(c),
            Ident::Label(_) => None,
        }
    }

    pub fn is_code(&self) -> bool {
        matches!(self, Ident::Code(_))
    }
}

impl fmt::Display for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ident::Label(s) => f.write_str(s),
            Ident::Code(c) => write!(f, "{c}"),
        }
    }
}

impl From<&str> for Ident {
    fn from(s: &str) -> Self {
        Ident::Label(s.to_owned())
    }
}

impl From<i64> for Ident {
    fn from(c: i64) -> Self {
        Ident::Code(c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum LinkKind {
    #[default]
    Arc,
    Edge,
}

impl LinkKind {
    pub fn as_str(self) -> &'static str {
        match self {
            LinkKind::Arc => "arc",
            LinkKind::Edge => "edge",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "arc" => Some(LinkKind::Arc),
            "edge" => Some(LinkKind::Edge),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimeWindow {
    pub t_min: i64,
    pub t_max: i64,
    pub t_labs: BTreeMap<i64, String>,
}

/// One entry of the dataset's history: a release, a change, a publication.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EventRecord {
    pub date: String,
    pub title: String,
    pub author: Option<String>,
    pub desc: Option<String>,
    pub url: Option<String>,
    pub cite: Option<String>,
    pub copy: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InfoBlock {
    /// Smallest index of a factorized description, 0 or 1.
    pub org: i64,
    pub n_nodes: usize,
    pub n_arcs: usize,
    pub n_edges: usize,
    pub simple: bool,
    pub directed: bool,
    pub multirel: bool,
    /// Number of node modes.
    pub mode: usize,
    pub network: String,
    pub title: String,
    pub time: Option<TimeWindow>,
    pub meta: Vec<EventRecord>,
    pub created: Option<String>,
    pub modified: Option<String>,
    pub extra: BTreeMap<String, PropertyValue>,
    /// Top-level `data` member of a NetsJSON document, kept uninterpreted.
    pub data: Option<serde_json::Value>,
}

impl Default for InfoBlock {
    fn default() -> Self {
        InfoBlock {
            org: 1,
            n_nodes: 0,
            n_arcs: 0,
            n_edges: 0,
            simple: true,
            directed: true,
            multirel: false,
            mode: 1,
            network: String::new(),
            title: String::new(),
            time: None,
            meta: Vec::new(),
            created: None,
            modified: None,
            extra: BTreeMap::new(),
            data: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NodeRecord {
    pub id: Ident,
    pub lab: String,
    /// Short label for printing and plots.
    pub slab: Option<String>,
    pub x: Option<f64>,
    pub y: Option<f64>,
    pub mode: Option<String>,
    pub tq: Option<TemporalQuantity>,
    pub props: BTreeMap<String, PropertyValue>,
}

impl NodeRecord {
    /// Labeled node whose label equals its identifier.
    pub fn labeled(name: &str) -> Self {
        NodeRecord {
            id: Ident::Label(name.to_owned()),
            lab: name.to_owned(),
            slab: None,
            x: None,
            y: None,
            mode: None,
            tq: None,
            props: BTreeMap::new(),
        }
    }

    /// Value of `property`, looking at the dedicated fields first.
    pub fn property(&self, property: &str) -> Option<PropertyValue> {
        match property {
            "mode" => self.mode.clone().map(PropertyValue::Text),
            "lab" => Some(PropertyValue::Text(self.lab.clone())),
            "slab" => self.slab.clone().map(PropertyValue::Text),
            "x" => self.x.map(PropertyValue::Real),
            "y" => self.y.map(PropertyValue::Real),
            _ => self.props.get(property).filter(|v| !v.is_absent()).cloned(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinkRecord {
    pub kind: LinkKind,
    pub n1: Ident,
    pub n2: Ident,
    pub rel: Ident,
    pub weight: f64,
    pub label: Option<String>,
    pub tq: Option<TemporalQuantity>,
    pub props: BTreeMap<String, PropertyValue>,
}

impl LinkRecord {
    pub fn new(
        kind: LinkKind,
        n1: impl Into<Ident>,
        n2: impl Into<Ident>,
        rel: impl Into<Ident>,
    ) -> Self {
        LinkRecord {
            kind,
            n1: n1.into(),
            n2: n2.into(),
            rel: rel.into(),
            weight: 1.0,
            label: None,
            tq: None,
            props: BTreeMap::new(),
        }
    }

    /// Key under which two links count as parallel: edges compare their
    /// endpoints unordered.
    pub fn parallel_key(&self) -> (LinkKind, &Ident, &Ident, &Ident) {
        let (a, b) = match self.kind {
            LinkKind::Edge if self.n2 < self.n1 => (&self.n2, &self.n1),
            _ => (&self.n1, &self.n2),
        };
        (self.kind, &self.rel, a, b)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    pub info: InfoBlock,
    pub nodes: Vec<NodeRecord>,
    pub links: Vec<LinkRecord>,
    /// Relation names in code order.
    pub relations: CodingTable,
    /// Node identifiers in code order; empty for labeled networks.
    pub node_coding: CodingTable,
    pub property_codings: BTreeMap<String, CodingTable>,
}

impl Default for Network {
    fn default() -> Self {
        Network::with_base(1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NetworkStats {
    pub n_nodes: usize,
    pub n_arcs: usize,
    pub n_edges: usize,
    pub n_relations: usize,
    pub n_modes: usize,
}

impl Network {
    /// Empty labeled network with the given index base.
    pub fn with_base(org: i64) -> Self {
        Network {
            info: InfoBlock {
                org,
                ..InfoBlock::default()
            },
            nodes: Vec::new(),
            links: Vec::new(),
            relations: CodingTable::empty("relation", org),
            node_coding: CodingTable::empty("node", org),
            property_codings: BTreeMap::new(),
        }
    }

    /// Labeled network assembled from records. Relations are coded in
    /// first-appearance order and the info block is derived from content.
    pub fn from_records(org: i64, nodes: Vec<NodeRecord>, links: Vec<LinkRecord>) -> Self {
        let mut net = Network::with_base(org);
        for link in &links {
            net.relations.intern(&link.rel.to_string());
        }
        net.nodes = nodes;
        net.links = links;
        net.derive_info();
        net
    }

    /// True when node identifiers are integer codes.
    pub fn is_factorized(&self) -> bool {
        self.nodes.first().is_some_and(|n| n.id.is_code())
            || (self.nodes.is_empty() && self.links.first().is_some_and(|l| l.n1.is_code()))
    }

    /// Recomputes the counters in the info block from the lists.
    pub fn recount(&mut self) {
        self.info.n_nodes = self.nodes.len();
        self.info.n_arcs = self
            .links
            .iter()
            .filter(|l| l.kind == LinkKind::Arc)
            .count();
        self.info.n_edges = self.links.len() - self.info.n_arcs;
    }

    /// Recomputes counters and the simple/directed/multirel/mode flags from
    /// content.
    pub fn derive_info(&mut self) {
        self.recount();
        self.info.simple = self.parallel_links().is_empty();
        self.info.directed = self.info.n_arcs > 0 || self.info.n_edges == 0;
        self.info.multirel = self.distinct_relations() > 1;
        self.info.mode = self.distinct_modes().max(1);
    }

    pub fn distinct_relations(&self) -> usize {
        self.links
            .iter()
            .map(|l| &l.rel)
            .collect::<HashSet<_>>()
            .len()
    }

    pub fn distinct_modes(&self) -> usize {
        self.nodes
            .iter()
            .filter_map(|n| n.mode.as_deref())
            .collect::<HashSet<_>>()
            .len()
    }

    /// Indices of links that repeat an earlier link's parallel key.
    pub fn parallel_links(&self) -> Vec<usize> {
        let mut seen = HashSet::with_capacity(self.links.len());
        self.links
            .iter()
            .enumerate()
            .filter(|(_, l)| !seen.insert(l.parallel_key()))
            .map(|(i, _)| i)
            .collect()
    }

    /// Position of each node identifier in the node list.
    pub fn node_index(&self) -> Result<HashMap<&Ident, usize>, StructuralError> {
        let mut index = HashMap::with_capacity(self.nodes.len());
        for (i, node) in self.nodes.iter().enumerate() {
            if index.insert(&node.id, i).is_some() {
                return Err(StructuralError::DuplicateNode(node.id.to_string()));
            }
        }
        Ok(index)
    }

    /// Index of the first link whose endpoint does not resolve.
    pub fn check_endpoints(&self) -> Result<(), StructuralError> {
        let ids: HashSet<&Ident> = self.nodes.iter().map(|n| &n.id).collect();
        for (i, link) in self.links.iter().enumerate() {
            for end in [&link.n1, &link.n2] {
                if !ids.contains(end) {
                    return Err(StructuralError::UnresolvedEndpoint {
                        link: i,
                        node: end.to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Relation name of a link, resolving codes through the relation table.
    pub fn relation_name<'a>(&'a self, link: &'a LinkRecord) -> Option<&'a str> {
        match &link.rel {
            Ident::Label(s) => Some(s),
            Ident::Code(c) => self.relations.level(*c),
        }
    }
}

/// Counts computed from the node and link lists.
pub fn network_stats(network: &Network) -> Result<NetworkStats, StructuralError> {
    network.check_endpoints()?;
    let n_arcs = network
        .links
        .iter()
        .filter(|l| l.kind == LinkKind::Arc)
        .count();
    Ok(NetworkStats {
        n_nodes: network.nodes.len(),
        n_arcs,
        n_edges: network.links.len() - n_arcs,
        n_relations: network.distinct_relations(),
        n_modes: network.distinct_modes().max(1),
    })
}

/// Sorts the relation table by code point, remapping relation codes of a
/// factorized network. Node and link order are kept; counters are recomputed.
pub fn canonical_order(network: &Network) -> Network {
    let mut out = network.clone();
    let mut names: Vec<String> = network.relations.levels().to_vec();
    let mut extra = BTreeSet::new();
    for link in &network.links {
        if let Ident::Label(name) = &link.rel {
            if network.relations.code(name).is_none() {
                extra.insert(name.clone());
            }
        }
    }
    names.extend(extra);
    names.sort();
    let mut sorted = CodingTable::empty(network.relations.name(), network.relations.base());
    for name in &names {
        sorted.intern(name);
    }
    for link in &mut out.links {
        if let Ident::Code(c) = link.rel {
            if let Some(code) = network
                .relations
                .level(c)
                .and_then(|name| sorted.code(name))
            {
                link.rel = Ident::Code(code);
            }
        }
    }
    out.relations = sorted;
    out.recount();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge_net() -> Network {
        Network::from_records(
            1,
            vec![NodeRecord::labeled("a"), NodeRecord::labeled("b")],
            vec![LinkRecord::new(LinkKind::Edge, "a", "b", "r")],
        )
    }

    #[test]
    fn stats_of_minimal_networks() {
        let empty = Network::default();
        let s = network_stats(&empty).unwrap();
        assert_eq!(
            (s.n_nodes, s.n_arcs, s.n_edges, s.n_relations, s.n_modes),
            (0, 0, 0, 0, 1)
        );
        let s = network_stats(&edge_net()).unwrap();
        assert_eq!(
            (s.n_nodes, s.n_arcs, s.n_edges, s.n_relations, s.n_modes),
            (2, 0, 1, 1, 1)
        );
    }

    #[test]
    fn stats_reject_unresolved_endpoint() {
        let mut net = edge_net();
        net.links
            .push(LinkRecord::new(LinkKind::Arc, "a", "zzz", "r"));
        assert_eq!(
            network_stats(&net),
            Err(StructuralError::UnresolvedEndpoint {
                link: 1,
                node: "zzz".into()
            })
        );
    }

    #[test]
    fn canonical_order_sorts_relations() {
        let net = Network::from_records(
            1,
            vec![NodeRecord::labeled("a"), NodeRecord::labeled("b")],
            vec![
                LinkRecord::new(LinkKind::Arc, "a", "b", "cites"),
                LinkRecord::new(LinkKind::Arc, "b", "a", "authorOf"),
            ],
        );
        assert_eq!(net.relations.levels(), ["cites", "authorOf"]);
        let c = canonical_order(&net);
        assert_eq!(c.relations.levels(), ["authorOf", "cites"]);
        assert_eq!(c.links, net.links);
        assert_eq!(canonical_order(&c), c);
    }

    #[test]
    fn canonical_order_remaps_codes() {
        let mut net = Network::with_base(1);
        net.nodes = vec![NodeRecord {
            id: Ident::Code(1),
            ..NodeRecord::labeled("a")
        }];
        net.relations =
            CodingTable::from_levels("relation", vec!["z".into(), "a".into()], 1).unwrap();
        net.links = vec![
            LinkRecord::new(LinkKind::Arc, 1, 1, 1),
            LinkRecord::new(LinkKind::Arc, 1, 1, 2),
        ];
        let c = canonical_order(&net);
        assert_eq!(c.links[0].rel, Ident::Code(2));
        assert_eq!(c.links[1].rel, Ident::Code(1));
        assert_eq!(c.relation_name(&c.links[0]), Some("z"));
    }

    #[test]
    fn edges_are_parallel_regardless_of_direction() {
        let mut net = edge_net();
        net.links
            .push(LinkRecord::new(LinkKind::Edge, "b", "a", "r"));
        assert_eq!(net.parallel_links(), vec![1]);
        net.links[1].kind = LinkKind::Arc;
        assert!(net.parallel_links().is_empty());
    }
}
