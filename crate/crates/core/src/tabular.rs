//! Two-table network description: a node table (nodes and their properties)
//! and a link table (links and their weights), both delimited text with a
//! header row.
//!
//! ```text
//! name;mode;country;sex;year;vol;num;fPage;lPage;x;y
//! "Novak, Ana";person;SI;f;;;;;;809.1;653.7
//! ```
//!
//! ```text
//! from;relation;to
//! "Novak, Ana";authorOf;"Network Methods"
//! ```

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::io::{Read, Write};

use thiserror::Error;

use crate::coding::{build_coding_table, defactorize_network, CodingError, LevelPolicy};
use crate::model::{Ident, LinkKind, LinkRecord, Network, NodeRecord, PropertyValue};

/// Node columns parsed as numbers when every non-missing cell parses.
pub const NUMERIC_COLUMNS: [&str; 5] = ["year", "vol", "num", "fPage", "lPage"];

#[derive(Debug, Error)]
pub enum TableError {
    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error("line {line}: expected {expected} cells, found {found}")]
    Ragged {
        line: u64,
        expected: usize,
        found: usize,
    },
    #[error("{table} table has no {column:?} column")]
    MissingColumn {
        table: &'static str,
        column: &'static str,
    },
    #[error("line {line}: duplicate node name {name:?}")]
    DuplicateName { line: u64, name: String },
    #[error("link row {row}: {column} value {value:?} is not a node name")]
    UnknownEndpoint {
        row: usize,
        column: &'static str,
        value: String,
    },
    #[error("{table} row {row}, column {column:?}: cannot parse {value:?}: {reason}")]
    Cell {
        table: &'static str,
        row: usize,
        column: String,
        value: String,
        reason: &'static str,
    },
    #[error("invalid table options: {0}")]
    Options(String),
    #[error("cannot export factorized network: {0}")]
    CannotExport(#[from] CodingError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableOptions {
    pub delimiter: char,
    /// Only UTF-8 is supported.
    pub encoding: String,
    pub decimal_separator: char,
    pub na_strings: BTreeSet<String>,
    pub has_header: bool,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions {
            delimiter: ';',
            encoding: "UTF-8".into(),
            decimal_separator: '.',
            na_strings: ["", "NA", "NaN"].into_iter().map(String::from).collect(),
            has_header: true,
        }
    }
}

impl TableOptions {
    fn delimiter_byte(&self) -> Result<u8, TableError> {
        if self.delimiter == '"' {
            return Err(TableError::Options(
                "delimiter cannot be the quote character".into(),
            ));
        }
        u8::try_from(self.delimiter)
            .ok()
            .filter(u8::is_ascii)
            .ok_or_else(|| {
                TableError::Options(format!("delimiter {:?} is not ASCII", self.delimiter))
            })
    }

    fn check_encoding(&self) -> Result<(), TableError> {
        match self
            .encoding
            .to_ascii_lowercase()
            .replace('_', "-")
            .as_str()
        {
            "utf-8" | "utf8" => Ok(()),
            other => Err(TableError::Options(format!(
                "unsupported encoding {other:?}"
            ))),
        }
    }
}

/// Header plus rows of optional cells; `None` is a missing value.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Option<String>>>,
}

pub type NodeTable = Table;
pub type LinkTable = Table;

impl Table {
    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    fn cells<'a>(&'a self, col: usize) -> impl Iterator<Item = Option<&'a str>> + 'a {
        self.rows.iter().map(move |r| r[col].as_deref())
    }
}

fn read_table(
    source: impl Read,
    opts: &TableOptions,
    default_header: &[&str],
) -> Result<Table, TableError> {
    opts.check_encoding()?;
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(opts.delimiter_byte()?)
        .has_headers(false)
        .flexible(true)
        .from_reader(source);
    let mut records = reader.records();
    let mut table = Table::default();
    let mut header_line = 0;

    let map_err = |e: csv::Error| {
        let line = e.position().map_or(0, |p| p.line());
        match e.into_kind() {
            csv::ErrorKind::Io(io) => TableError::Io(io),
            csv::ErrorKind::Utf8 { err, .. } => TableError::Parse {
                line,
                message: err.to_string(),
            },
            other => TableError::Parse {
                line,
                message: format!("{other:?}"),
            },
        }
    };

    if opts.has_header {
        match records.next() {
            Some(rec) => {
                let rec = rec.map_err(map_err)?;
                header_line = rec.position().map_or(1, |p| p.line());
                table.header = rec
                    .iter()
                    .map(|h| h.trim_start_matches('\u{feff}').to_owned())
                    .collect();
            }
            None => return Ok(table),
        }
    }
    for rec in records {
        let rec = rec.map_err(map_err)?;
        let line = rec.position().map_or(header_line + 1, |p| p.line());
        if table.header.is_empty() && !opts.has_header {
            table.header = (0..rec.len())
                .map(|i| {
                    default_header
                        .get(i)
                        .map_or_else(|| format!("V{}", i + 1), |s| s.to_string())
                })
                .collect();
        }
        if rec.len() != table.header.len() {
            return Err(TableError::Ragged {
                line,
                expected: table.header.len(),
                found: rec.len(),
            });
        }
        table.rows.push(
            rec.iter()
                .map(|cell| (!opts.na_strings.contains(cell)).then(|| cell.to_owned()))
                .collect(),
        );
    }
    Ok(table)
}

/// Reads a node table; requires a `name` column with distinct values.
pub fn read_node_table(source: impl Read, opts: &TableOptions) -> Result<NodeTable, TableError> {
    let table = read_table(source, opts, &["name"])?;
    if table.header.is_empty() && table.rows.is_empty() {
        return Err(TableError::MissingColumn {
            table: "node",
            column: "name",
        });
    }
    let col = table.column("name").ok_or(TableError::MissingColumn {
        table: "node",
        column: "name",
    })?;
    let first_line = if opts.has_header { 2 } else { 1 };
    let mut seen = HashSet::new();
    for (i, name) in table.cells(col).enumerate() {
        if let Some(name) = name {
            if !seen.insert(name) {
                return Err(TableError::DuplicateName {
                    line: first_line + i as u64,
                    name: name.to_owned(),
                });
            }
        }
    }
    Ok(table)
}

/// Reads a link table; requires `from`, `relation` and `to` columns.
pub fn read_link_table(source: impl Read, opts: &TableOptions) -> Result<LinkTable, TableError> {
    let table = read_table(source, opts, &["from", "relation", "to"])?;
    for column in ["from", "relation", "to"] {
        if table.column(column).is_none() {
            return Err(TableError::MissingColumn {
                table: "link",
                column,
            });
        }
    }
    Ok(table)
}

/// Writes a table with the configured delimiter, quoting only where needed.
pub fn write_table(table: &Table, opts: &TableOptions, sink: impl Write) -> Result<(), TableError> {
    opts.check_encoding()?;
    let mut writer = csv::WriterBuilder::new()
        .delimiter(opts.delimiter_byte()?)
        .quote_style(csv::QuoteStyle::Necessary)
        .from_writer(sink);
    let io = |e: csv::Error| match e.into_kind() {
        csv::ErrorKind::Io(io) => TableError::Io(io),
        other => TableError::Io(std::io::Error::other(format!("{other:?}"))),
    };
    if opts.has_header {
        writer.write_record(&table.header).map_err(io)?;
    }
    for row in &table.rows {
        writer
            .write_record(row.iter().map(|c| c.as_deref().unwrap_or("")))
            .map_err(io)?;
    }
    writer.flush()?;
    Ok(())
}

/// Parameters for assembling a network from a table pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AssembleOptions {
    /// Links without a `type` cell become arcs when set, edges otherwise.
    pub directed: bool,
    /// Index base recorded in the network (`org`).
    pub base: i64,
    pub decimal_separator: char,
}

impl Default for AssembleOptions {
    fn default() -> Self {
        AssembleOptions {
            directed: true,
            base: 1,
            decimal_separator: '.',
        }
    }
}

fn parse_number(cell: &str, decimal: char) -> Option<f64> {
    let normalized;
    let text = if decimal == '.' {
        cell.trim()
    } else {
        normalized = cell.trim().replace(decimal, ".");
        &normalized
    };
    text.parse::<f64>().ok().filter(|v| v.is_finite())
}

fn format_number(value: f64, decimal: char) -> String {
    let s = value.to_string();
    if decimal == '.' {
        s
    } else {
        s.replace('.', &decimal.to_string())
    }
}

fn strict_number(
    table: &'static str,
    row: usize,
    column: &str,
    cell: Option<&str>,
    decimal: char,
) -> Result<Option<f64>, TableError> {
    cell.map(|c| {
        parse_number(c, decimal).ok_or_else(|| TableError::Cell {
            table,
            row,
            column: column.to_owned(),
            value: c.to_owned(),
            reason: "not a number",
        })
    })
    .transpose()
}

const NODE_FIELDS: [&str; 6] = ["name", "lab", "slab", "mode", "x", "y"];
const LINK_FIELDS: [&str; 6] = ["from", "relation", "to", "type", "weight", "label"];

/// Builds a labeled network from a node table and a link table.
///
/// Relations are coded in sorted order. `x`, `y` and `weight` must be
/// numeric; the columns in [`NUMERIC_COLUMNS`] become reals when every
/// present cell parses, text otherwise. All other columns are text.
pub fn tables_to_network(
    nodes: &NodeTable,
    links: &LinkTable,
    opts: &AssembleOptions,
) -> Result<Network, TableError> {
    let dec = opts.decimal_separator;
    let name_col = nodes.column("name").ok_or(TableError::MissingColumn {
        table: "node",
        column: "name",
    })?;
    let numeric: HashSet<usize> = nodes
        .header
        .iter()
        .enumerate()
        .filter(|(i, h)| {
            NUMERIC_COLUMNS.contains(&h.as_str())
                && nodes
                    .cells(*i)
                    .flatten()
                    .all(|c| parse_number(c, dec).is_some())
        })
        .map(|(i, _)| i)
        .collect();

    let mut net = Network::with_base(opts.base);
    let mut names = HashSet::with_capacity(nodes.rows.len());
    for (row_idx, row) in nodes.rows.iter().enumerate() {
        let name = row[name_col].clone().ok_or_else(|| TableError::Cell {
            table: "node",
            row: row_idx,
            column: "name".into(),
            value: String::new(),
            reason: "missing node name",
        })?;
        let mut node = NodeRecord::labeled(&name);
        for (col, header) in nodes.header.iter().enumerate() {
            let cell = row[col].as_deref();
            match header.as_str() {
                "name" => {}
                "lab" => node.lab = cell.unwrap_or(&name).to_owned(),
                "slab" => node.slab = cell.map(str::to_owned),
                "mode" => node.mode = cell.map(str::to_owned),
                "x" => node.x = strict_number("node", row_idx, "x", cell, dec)?,
                "y" => node.y = strict_number("node", row_idx, "y", cell, dec)?,
                prop => {
                    if let Some(c) = cell {
                        let value = if numeric.contains(&col) {
                            PropertyValue::Real(parse_number(c, dec).unwrap_or_default())
                        } else {
                            PropertyValue::Text(c.to_owned())
                        };
                        node.props.insert(prop.to_owned(), value);
                    }
                }
            }
        }
        names.insert(name);
        net.nodes.push(node);
    }

    let col = |c: &'static str| {
        links.column(c).ok_or(TableError::MissingColumn {
            table: "link",
            column: c,
        })
    };
    let (from_col, rel_col, to_col) = (col("from")?, col("relation")?, col("to")?);
    for (row_idx, row) in links.rows.iter().enumerate() {
        let endpoint = |c: usize, column: &'static str| -> Result<Ident, TableError> {
            match row[c].as_deref() {
                Some(v) if names.contains(v) => Ok(Ident::Label(v.to_owned())),
                v => Err(TableError::UnknownEndpoint {
                    row: row_idx,
                    column,
                    value: v.unwrap_or_default().to_owned(),
                }),
            }
        };
        let n1 = endpoint(from_col, "from")?;
        let n2 = endpoint(to_col, "to")?;
        let rel = row[rel_col].clone().ok_or_else(|| TableError::Cell {
            table: "link",
            row: row_idx,
            column: "relation".into(),
            value: String::new(),
            reason: "missing relation",
        })?;
        let kind = if opts.directed {
            LinkKind::Arc
        } else {
            LinkKind::Edge
        };
        let mut link = LinkRecord::new(kind, n1, n2, Ident::Label(rel));
        for (c, header) in links.header.iter().enumerate() {
            let cell = row[c].as_deref();
            match header.as_str() {
                "from" | "relation" | "to" => {}
                "type" => {
                    if let Some(v) = cell {
                        link.kind = LinkKind::parse(v).ok_or_else(|| TableError::Cell {
                            table: "link",
                            row: row_idx,
                            column: "type".into(),
                            value: v.to_owned(),
                            reason: "expected arc or edge",
                        })?;
                    }
                }
                "weight" => {
                    link.weight =
                        strict_number("link", row_idx, "weight", cell, dec)?.unwrap_or(1.0)
                }
                "label" => link.label = cell.map(str::to_owned),
                prop => {
                    if let Some(v) = cell {
                        link.props
                            .insert(prop.to_owned(), PropertyValue::Text(v.to_owned()));
                    }
                }
            }
        }
        net.links.push(link);
    }

    net.relations = build_coding_table(
        "relation",
        net.links.iter().map(|l| l.rel.as_label()),
        LevelPolicy::Sorted,
        opts.base,
    )
    .map_err(|e| TableError::Options(e.to_string()))?;
    net.derive_info();
    net.info.directed = opts.directed;
    Ok(net)
}

fn render_cell(value: &PropertyValue, dec: char) -> Option<String> {
    match value {
        PropertyValue::Absent => None,
        PropertyValue::Real(r) => Some(format_number(*r, dec)),
        PropertyValue::Text(s) => Some(s.clone()),
        other => Some(other.to_string()),
    }
}

/// Splits a network into a node table and a link table.
///
/// Factorized networks are decoded through their coding tables first.
pub fn network_to_tables(
    network: &Network,
    decimal_separator: char,
) -> Result<(NodeTable, LinkTable), TableError> {
    let decoded;
    let net = if network.is_factorized() {
        decoded = defactorize_network(network)?;
        &decoded
    } else {
        network
    };
    let dec = decimal_separator;

    let node_props: BTreeSet<&str> = net
        .nodes
        .iter()
        .flat_map(|n| n.props.keys().map(String::as_str))
        .filter(|k| !NODE_FIELDS.contains(k))
        .collect();
    let with_lab = net
        .nodes
        .iter()
        .any(|n| n.id.as_label() != Some(n.lab.as_str()));
    let with_slab = net.nodes.iter().any(|n| n.slab.is_some());
    let with_mode = net.nodes.iter().any(|n| n.mode.is_some());

    let mut nodes = Table {
        header: vec!["name".to_owned()],
        rows: Vec::new(),
    };
    nodes.header.extend(
        [("lab", with_lab), ("slab", with_slab), ("mode", with_mode)]
            .into_iter()
            .filter(|(_, on)| *on)
            .map(|(c, _)| c.to_owned()),
    );
    nodes
        .header
        .extend(node_props.iter().map(|s| s.to_string()));
    nodes.header.extend(["x".to_owned(), "y".to_owned()]);
    for node in &net.nodes {
        let mut row = vec![Some(node.id.to_string())];
        if with_lab {
            row.push(Some(node.lab.clone()));
        }
        if with_slab {
            row.push(node.slab.clone());
        }
        if with_mode {
            row.push(node.mode.clone());
        }
        row.extend(
            node_props
                .iter()
                .map(|p| node.props.get(*p).and_then(|v| render_cell(v, dec))),
        );
        row.push(node.x.map(|v| format_number(v, dec)));
        row.push(node.y.map(|v| format_number(v, dec)));
        nodes.rows.push(row);
    }

    let link_props: BTreeSet<&str> = net
        .links
        .iter()
        .flat_map(|l| l.props.keys().map(String::as_str))
        .filter(|k| !LINK_FIELDS.contains(k))
        .collect();
    let with_type = net.links.iter().any(|l| l.kind == LinkKind::Edge);
    let with_weight = net.links.iter().any(|l| l.weight != 1.0);
    let with_label = net.links.iter().any(|l| l.label.is_some());
    let mut links = Table {
        header: vec!["from".into(), "relation".into(), "to".into()],
        rows: Vec::new(),
    };
    links.header.extend(
        [
            ("type", with_type),
            ("weight", with_weight),
            ("label", with_label),
        ]
        .into_iter()
        .filter(|(_, on)| *on)
        .map(|(c, _)| c.to_owned()),
    );
    links
        .header
        .extend(link_props.iter().map(|s| s.to_string()));
    for link in &net.links {
        let mut row = vec![
            Some(link.n1.to_string()),
            Some(link.rel.to_string()),
            Some(link.n2.to_string()),
        ];
        if with_type {
            row.push(Some(link.kind.as_str().to_owned()));
        }
        if with_weight {
            row.push(Some(format_number(link.weight, dec)));
        }
        if with_label {
            row.push(link.label.clone());
        }
        row.extend(
            link_props
                .iter()
                .map(|p| link.props.get(*p).and_then(|v| render_cell(v, dec))),
        );
        links.rows.push(row);
    }
    Ok((nodes, links))
}

/// Reads both tables and assembles the network.
pub fn read_network(
    nodes: impl Read,
    links: impl Read,
    table_opts: &TableOptions,
    directed: bool,
    base: i64,
) -> Result<Network, TableError> {
    let nodes = read_node_table(nodes, table_opts)?;
    let links = read_link_table(links, table_opts)?;
    let assemble = AssembleOptions {
        directed,
        base,
        decimal_separator: table_opts.decimal_separator,
    };
    tables_to_network(&nodes, &links, &assemble)
}

/// Node table rows keyed by the `name` column.
pub fn rows_by_name(table: &NodeTable) -> HashMap<&str, usize> {
    table
        .column("name")
        .map(|c| {
            table
                .cells(c)
                .enumerate()
                .filter_map(|(i, n)| n.map(|n| (n, i)))
                .collect()
        })
        .unwrap_or_default()
}

/// Property map of one node-table row, typed as [`tables_to_network`] does.
pub fn row_properties(
    table: &NodeTable,
    row: usize,
    decimal: char,
) -> BTreeMap<String, PropertyValue> {
    let mut out = BTreeMap::new();
    for (col, header) in table.header.iter().enumerate() {
        if let Some(cell) = table.rows[row][col].as_deref() {
            let numeric = NUMERIC_COLUMNS.contains(&header.as_str())
                && table
                    .cells(col)
                    .flatten()
                    .all(|c| parse_number(c, decimal).is_some());
            let value = match parse_number(cell, decimal) {
                Some(v) if numeric || header == "x" || header == "y" => PropertyValue::Real(v),
                _ => PropertyValue::Text(cell.to_owned()),
            };
            out.insert(header.clone(), value);
        }
    }
    out
}
