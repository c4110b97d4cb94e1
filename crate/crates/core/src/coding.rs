//! Coding tables and factorization.
//!
//! A coding table enumerates the distinct values of a categorical variable;
//! the code of a value is its position in the table plus the table base.
//! Factorizing a network replaces node identifiers and relation names by
//! their codes. The tables always travel with the network, so the
//! transformation can be undone.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::model::{Ident, Network};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodingError {
    #[error("value {value:?} at position {position} is not a level of coding table {table:?}")]
    UnknownLevel {
        table: String,
        value: String,
        position: usize,
    },
    #[error("code {code} at position {position} is outside the range of coding table {table:?}")]
    CodeOutOfRange {
        table: String,
        code: i64,
        position: usize,
    },
    #[error("index base must be 0 or 1, got {0}")]
    InvalidBase(i64),
    #[error("duplicate node identifier {0:?}")]
    DuplicateNode(String),
    #[error("link {link} refers to unknown node {node}")]
    UnresolvedEndpoint { link: usize, node: String },
    #[error("link {link} refers to unknown relation {relation}")]
    UnresolvedRelation { link: usize, relation: String },
    #[error("network is already factorized")]
    AlreadyFactorized,
    #[error("cannot invert factorization: {0}")]
    CannotInvert(String),
    #[error("coding table {table:?} has an empty or duplicate level {level:?}")]
    InvalidLevel { table: String, level: String },
}

/// How levels are ordered when a table is built from observed values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LevelPolicy {
    /// First-appearance order.
    FileOrder,
    /// Unicode code point order, independent of locale.
    #[default]
    Sorted,
}

/// Ordered list of distinct, non-empty categorical values.
#[derive(Debug, Clone)]
pub struct CodingTable {
    name: String,
    levels: Vec<String>,
    base: i64,
    index: HashMap<String, usize>,
}

impl PartialEq for CodingTable {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.base == other.base && self.levels == other.levels
    }
}

impl CodingTable {
    pub fn empty(name: impl Into<String>, base: i64) -> Self {
        CodingTable {
            name: name.into(),
            levels: Vec::new(),
            base,
            index: HashMap::new(),
        }
    }

    /// Builds a table from an explicit level list. Levels must be distinct
    /// and non-empty.
    pub fn from_levels(
        name: impl Into<String>,
        levels: Vec<String>,
        base: i64,
    ) -> Result<Self, CodingError> {
        let name = name.into();
        let mut index = HashMap::with_capacity(levels.len());
        for (i, level) in levels.iter().enumerate() {
            if level.is_empty() || index.insert(level.clone(), i).is_some() {
                return Err(CodingError::InvalidLevel {
                    table: name,
                    level: level.clone(),
                });
            }
        }
        Ok(CodingTable {
            name,
            levels,
            base,
            index,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn levels(&self) -> &[String] {
        &self.levels
    }

    pub fn base(&self) -> i64 {
        self.base
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn code(&self, value: &str) -> Option<i64> {
        self.index.get(value).map(|&i| self.base + i as i64)
    }

    pub fn level(&self, code: i64) -> Option<&str> {
        let offset = code.checked_sub(self.base)?;
        usize::try_from(offset)
            .ok()
            .and_then(|i| self.levels.get(i))
            .map(String::as_str)
    }

    /// Appends a level if it is not already present and returns its code.
    pub(crate) fn intern(&mut self, value: &str) -> i64 {
        if let Some(code) = self.code(value) {
            return code;
        }
        self.index.insert(value.to_owned(), self.levels.len());
        self.levels.push(value.to_owned());
        self.base + self.levels.len() as i64 - 1
    }

    /// Same levels under a different base.
    pub fn rebased(&self, base: i64) -> Self {
        CodingTable {
            base,
            ..self.clone()
        }
    }

    pub fn renamed(&self, name: impl Into<String>) -> Self {
        CodingTable {
            name: name.into(),
            ..self.clone()
        }
    }
}

/// Enumerates the distinct non-missing values in `values`.
pub fn build_coding_table<'a, I>(
    name: &str,
    values: I,
    policy: LevelPolicy,
    base: i64,
) -> Result<CodingTable, CodingError>
where
    I: IntoIterator<Item = Option<&'a str>>,
{
    check_base(base)?;
    let present = values.into_iter().flatten().filter(|v| !v.is_empty());
    let levels: Vec<String> = match policy {
        LevelPolicy::Sorted => present
            .collect::<BTreeSet<_>>()
            .into_iter()
            .map(str::to_owned)
            .collect(),
        LevelPolicy::FileOrder => {
            let mut table = CodingTable::empty(name, base);
            for v in present {
                table.intern(v);
            }
            return Ok(table);
        }
    };
    CodingTable::from_levels(name, levels, base)
}

pub fn encode<'a, I>(
    values: I,
    table: &CodingTable,
    missing_code: i64,
) -> Result<Vec<i64>, CodingError>
where
    I: IntoIterator<Item = Option<&'a str>>,
{
    values
        .into_iter()
        .enumerate()
        .map(|(position, value)| match value {
            None => Ok(missing_code),
            Some(v) => table.code(v).ok_or_else(|| CodingError::UnknownLevel {
                table: table.name.clone(),
                value: v.to_owned(),
                position,
            }),
        })
        .collect()
}

pub fn decode(
    codes: &[i64],
    table: &CodingTable,
    missing_code: i64,
) -> Result<Vec<Option<String>>, CodingError> {
    codes
        .iter()
        .enumerate()
        .map(|(position, &code)| {
            if code == missing_code {
                return Ok(None);
            }
            table
                .level(code)
                .map(|l| Some(l.to_owned()))
                .ok_or_else(|| CodingError::CodeOutOfRange {
                    table: table.name.clone(),
                    code,
                    position,
                })
        })
        .collect()
}

fn check_base(base: i64) -> Result<(), CodingError> {
    if base == 0 || base == 1 {
        Ok(())
    } else {
        Err(CodingError::InvalidBase(base))
    }
}

/// Replaces node identifiers, link endpoints and relation names by codes.
///
/// Node codes follow node order. Relation codes follow the network's
/// relation table, which is rebased to `base`; relations used by links but
/// missing from the table are appended.
pub fn factorize_network(network: &Network, base: i64) -> Result<Network, CodingError> {
    check_base(base)?;
    if network.is_factorized() {
        return Err(CodingError::AlreadyFactorized);
    }
    let mut node_coding = CodingTable::empty("node", base);
    for node in &network.nodes {
        let id = node.id.as_label().unwrap_or_default();
        if node_coding.code(id).is_some() {
            return Err(CodingError::DuplicateNode(id.to_owned()));
        }
        node_coding.intern(id);
    }
    let mut relations = network.relations.rebased(base);

    let mut out = network.clone();
    for (node, code) in out.nodes.iter_mut().zip(base..) {
        node.id = Ident::Code(code);
    }
    for (i, link) in out.links.iter_mut().enumerate() {
        for end in [&mut link.n1, &mut link.n2] {
            let label = end.to_string();
            let code = node_coding
                .code(&label)
                .ok_or(CodingError::UnresolvedEndpoint {
                    link: i,
                    node: label,
                })?;
            *end = Ident::Code(code);
        }
        let rel = link.rel.to_string();
        link.rel = Ident::Code(relations.intern(&rel));
    }
    out.info.org = base;
    out.relations = relations;
    out.node_coding = node_coding;
    out.property_codings = network
        .property_codings
        .iter()
        .map(|(k, t)| (k.clone(), t.rebased(base)))
        .collect();
    Ok(out)
}

/// Inverse of [`factorize_network`]. The result keeps the factorized base as
/// its `org`.
pub fn defactorize_network(network: &Network) -> Result<Network, CodingError> {
    if !network.is_factorized() {
        return Ok(network.clone());
    }
    let node_coding = &network.node_coding;
    if node_coding.is_empty() && !network.nodes.is_empty() {
        return Err(CodingError::CannotInvert(
            "node coding table is missing".into(),
        ));
    }
    let decode_node = |ident: &Ident| -> Result<Ident, CodingError> {
        match ident {
            Ident::Code(c) => node_coding
                .level(*c)
                .map(|l| Ident::Label(l.to_owned()))
                .ok_or_else(|| {
                    CodingError::CannotInvert(format!("node code {c} is not in the node coding"))
                }),
            Ident::Label(_) => Ok(ident.clone()),
        }
    };
    let mut out = network.clone();
    for node in &mut out.nodes {
        node.id = decode_node(&node.id)?;
    }
    for link in &mut out.links {
        link.n1 = decode_node(&link.n1)?;
        link.n2 = decode_node(&link.n2)?;
        if let Ident::Code(c) = link.rel {
            let name = network.relations.level(c).ok_or_else(|| {
                CodingError::CannotInvert(format!("relation code {c} is not in the relation table"))
            })?;
            link.rel = Ident::Label(name.to_owned());
        }
    }
    out.node_coding = CodingTable::empty("node", network.info.org);
    Ok(out)
}
