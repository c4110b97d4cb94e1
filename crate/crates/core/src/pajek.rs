//! Pajek NET network files and CLU partition files.
//!
//! The writer emits one vertex line per node, one relation declaration per
//! relation, then `*arcs` and `*edges` sections whose lines carry the
//! relation code as a `r:` prefix:
//!
//! ```text
//! *vertices 2
//! 1 "a"
//! 2 "b"
//! *arcs :1 "knows"
//! *arcs
//! 1: 1 2 1 l "knows"
//! ```
//!
//! The reader accepts that grammar plus `%` comments, blank lines,
//! case-insensitive keywords, link lines without the `r:` prefix and
//! without the `l "..."` suffix. The `*edges` grammar mirrors `*arcs`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;
use std::io::Read;

use thiserror::Error;

use crate::coding::{build_coding_table, encode, CodingError, CodingTable, LevelPolicy};
use crate::model::{canonical_order, Ident, LinkKind, LinkRecord, Network, NodeRecord};

#[derive(Debug, Error)]
pub enum PajekError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: vertex {index} is outside 1..={n}")]
    Range { line: usize, index: i64, n: usize },
    #[error("line {line}: unknown section {keyword:?}")]
    UnknownSection { line: usize, keyword: String },
    #[error("line {line}: relation {code} declared as {new:?} but already named {existing:?}")]
    Conflict {
        line: usize,
        code: i64,
        existing: String,
        new: String,
    },
    #[error("cannot encode {0:?}: contains a control character")]
    Encoding(String),
    #[error("Pajek files are 1-based; cannot write with index base {0}")]
    Base(i64),
    #[error("network is not well formed: {0}")]
    Structure(String),
    #[error("no node carries property {0:?}")]
    UnknownProperty(String),
    #[error("partition declares {declared} vertices but lists {found} values")]
    Count { declared: usize, found: usize },
    #[error("partition value {value} at position {position} is outside the coding range")]
    Value { value: i64, position: usize },
    #[error(transparent)]
    Coding(#[from] CodingError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PajekWriteOptions {
    /// Must be 1.
    pub base: i64,
    /// Append `x y` to vertex lines of nodes that have both coordinates.
    pub coordinates: bool,
}

impl Default for PajekWriteOptions {
    fn default() -> Self {
        PajekWriteOptions {
            base: 1,
            coordinates: false,
        }
    }
}

fn quote(text: &str) -> Result<String, PajekError> {
    if text.chars().any(char::is_control) {
        return Err(PajekError::Encoding(text.to_owned()));
    }
    Ok(format!("\"{}\"", text.replace('"', "\"\"")))
}

/// Serializes a network. Relations are written in canonical (sorted) order
/// and vertices are numbered by position.
pub fn write_pajek_net(network: &Network, opts: &PajekWriteOptions) -> Result<String, PajekError> {
    if opts.base != 1 {
        return Err(PajekError::Base(opts.base));
    }
    let net = canonical_order(network);
    let position = net
        .node_index()
        .map_err(|e| PajekError::Structure(e.to_string()))?;

    let mut out = String::new();
    let _ = writeln!(out, "*vertices {}", net.nodes.len());
    for (i, node) in net.nodes.iter().enumerate() {
        let _ = write!(out, "{} {}", i + 1, quote(&node.lab)?);
        if let (true, Some(x), Some(y)) = (opts.coordinates, node.x, node.y) {
            let _ = write!(out, " {x} {y}");
        }
        out.push('\n');
    }

    let relation_names: Vec<&str> = net.relations.levels().iter().map(String::as_str).collect();
    let mut used_by_arc = vec![false; relation_names.len()];
    let mut used_by_edge = vec![false; relation_names.len()];
    let mut lines: [Vec<String>; 2] = [Vec::new(), Vec::new()];
    for (i, link) in net.links.iter().enumerate() {
        let structure =
            |what: &str| PajekError::Structure(format!("link {i} has an unresolved {what}"));
        let name = net
            .relation_name(link)
            .ok_or_else(|| structure("relation"))?;
        let r = net
            .relations
            .code(name)
            .ok_or_else(|| structure("relation"))?
            - net.relations.base();
        let n1 = position
            .get(&link.n1)
            .ok_or_else(|| structure("endpoint"))?
            + 1;
        let n2 = position
            .get(&link.n2)
            .ok_or_else(|| structure("endpoint"))?
            + 1;
        let label = quote(link.label.as_deref().unwrap_or(name))?;
        let slot = match link.kind {
            LinkKind::Arc => {
                used_by_arc[r as usize] = true;
                0
            }
            LinkKind::Edge => {
                used_by_edge[r as usize] = true;
                1
            }
        };
        lines[slot].push(format!("{}: {n1} {n2} {} l {label}", r + 1, link.weight));
    }

    for (r, name) in relation_names.iter().enumerate() {
        let keyword = if used_by_edge[r] && !used_by_arc[r] {
            "edges"
        } else {
            "arcs"
        };
        let _ = writeln!(out, "*{keyword} :{} {}", r + 1, quote(name)?);
    }
    let [arcs, edges] = lines;
    if !arcs.is_empty() || edges.is_empty() {
        out.push_str("*arcs\n");
        for line in arcs {
            out.push_str(&line);
            out.push('\n');
        }
    }
    if !edges.is_empty() {
        out.push_str("*edges\n");
        for line in edges {
            out.push_str(&line);
            out.push('\n');
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
struct Token {
    text: String,
    quoted: bool,
}

fn tokenize(line: &str, lineno: usize) -> Result<Vec<Token>, PajekError> {
    let mut tokens = Vec::new();
    let mut chars = line.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == '"' {
            chars.next();
            let mut text = String::new();
            loop {
                match chars.next() {
                    Some('"') if chars.peek() == Some(&'"') => {
                        chars.next();
                        text.push('"');
                    }
                    Some('"') => break,
                    Some(ch) => text.push(ch),
                    None => {
                        return Err(PajekError::Parse {
                            line: lineno,
                            message: "unterminated quote".into(),
                        })
                    }
                }
            }
            tokens.push(Token { text, quoted: true });
        } else {
            let mut text = String::new();
            while let Some(&ch) = chars.peek() {
                if ch.is_whitespace() {
                    break;
                }
                text.push(ch);
                chars.next();
            }
            tokens.push(Token {
                text,
                quoted: false,
            });
        }
    }
    Ok(tokens)
}

fn parse_int(token: &Token, line: usize, what: &str) -> Result<i64, PajekError> {
    token.text.parse().map_err(|_| PajekError::Parse {
        line,
        message: format!("expected {what}, found {:?}", token.text),
    })
}

/// Iterator over `(line number, content)` with comments and blanks dropped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r').trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('%'))
}

enum Section {
    Preamble,
    Vertices,
    Links { kind: LinkKind, rel: i64 },
}

struct PendingLink {
    kind: LinkKind,
    n1: i64,
    n2: i64,
    rel: i64,
    weight: f64,
    label: Option<String>,
}

/// Parses a NET file into a factorized network (`org` 1).
///
/// The node coding holds the vertex labels when they are distinct and
/// non-empty, the vertex numbers otherwise.
pub fn read_pajek_net(mut source: impl Read) -> Result<Network, PajekError> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;

    let mut section = Section::Preamble;
    let mut n: Option<usize> = None;
    let mut labels: Vec<Option<String>> = Vec::new();
    let mut coords: Vec<(Option<f64>, Option<f64>)> = Vec::new();
    let mut declared: BTreeMap<i64, String> = BTreeMap::new();
    let mut links: Vec<PendingLink> = Vec::new();
    let mut title = String::new();

    for (lineno, line) in content_lines(&text) {
        let tokens = tokenize(line, lineno)?;
        let first = &tokens[0];
        if !first.quoted && first.text.starts_with('*') {
            let keyword = first.text[1..].to_ascii_lowercase();
            match keyword.as_str() {
                "network" => {
                    title = name_of(&tokens[1..]);
                }
                "vertices" => {
                    let count = tokens.get(1).ok_or_else(|| PajekError::Parse {
                        line: lineno,
                        message: "missing vertex count".into(),
                    })?;
                    let count = usize::try_from(parse_int(count, lineno, "vertex count")?)
                        .map_err(|_| PajekError::Parse {
                            line: lineno,
                            message: "negative vertex count".into(),
                        })?;
                    n = Some(count);
                    labels = vec![None; count];
                    coords = vec![(None, None); count];
                    section = Section::Vertices;
                }
                "arcs" | "edges" => {
                    let kind = if keyword == "arcs" {
                        LinkKind::Arc
                    } else {
                        LinkKind::Edge
                    };
                    let mut rel = 1;
                    if let Some(tok) = tokens.get(1) {
                        let code = tok
                            .text
                            .strip_prefix(':')
                            .ok_or_else(|| PajekError::Parse {
                                line: lineno,
                                message: format!("expected :relation, found {:?}", tok.text),
                            })?;
                        rel = code.parse().map_err(|_| PajekError::Parse {
                            line: lineno,
                            message: format!("bad relation code {code:?}"),
                        })?;
                        if tokens.len() > 2 {
                            let name = name_of(&tokens[2..]);
                            match declared.get(&rel) {
                                Some(existing) if *existing != name => {
                                    return Err(PajekError::Conflict {
                                        line: lineno,
                                        code: rel,
                                        existing: existing.clone(),
                                        new: name,
                                    })
                                }
                                _ => {
                                    declared.insert(rel, name);
                                }
                            }
                        }
                    }
                    section = Section::Links { kind, rel };
                }
                _ => {
                    return Err(PajekError::UnknownSection {
                        line: lineno,
                        keyword: first.text.clone(),
                    })
                }
            }
            continue;
        }

        let n = n.ok_or_else(|| PajekError::Parse {
            line: lineno,
            message: "data before *vertices".into(),
        })?;
        let vertex = |tok: &Token| -> Result<i64, PajekError> {
            let v = parse_int(tok, lineno, "vertex number")?;
            if v < 1 || v as usize > n {
                return Err(PajekError::Range {
                    line: lineno,
                    index: v,
                    n,
                });
            }
            Ok(v)
        };
        match section {
            Section::Preamble => unreachable!("vertex count is set"),
            Section::Vertices => {
                let v = vertex(first)? as usize - 1;
                if let Some(label) = tokens.get(1) {
                    labels[v] = Some(label.text.clone());
                }
                let x = tokens.get(2).and_then(|t| t.text.parse().ok());
                let y = tokens.get(3).and_then(|t| t.text.parse().ok());
                if let (Some(x), Some(y)) = (x, y) {
                    coords[v] = (Some(x), Some(y));
                }
            }
            Section::Links { kind, rel } => {
                let mut rest = &tokens[..];
                let mut rel = rel;
                if let Some(code) = first.text.strip_suffix(':').filter(|_| !first.quoted) {
                    rel = code.parse().map_err(|_| PajekError::Parse {
                        line: lineno,
                        message: format!("bad relation prefix {:?}", first.text),
                    })?;
                    rest = &rest[1..];
                }
                if rest.len() < 2 {
                    return Err(PajekError::Parse {
                        line: lineno,
                        message: "link needs two endpoints".into(),
                    });
                }
                let n1 = vertex(&rest[0])?;
                let n2 = vertex(&rest[1])?;
                rest = &rest[2..];
                let mut weight = 1.0;
                if let Some(w) = rest
                    .first()
                    .filter(|t| !t.quoted)
                    .and_then(|t| t.text.parse::<f64>().ok())
                {
                    weight = w;
                    rest = &rest[1..];
                }
                let mut label = None;
                for pair in rest.chunks(2) {
                    if pair[0].text == "l" && pair.len() == 2 {
                        label = Some(pair[1].text.clone());
                    }
                }
                links.push(PendingLink {
                    kind,
                    n1,
                    n2,
                    rel,
                    weight,
                    label,
                });
            }
        }
    }

    let n = n.ok_or_else(|| PajekError::Parse {
        line: 0,
        message: "missing *vertices".into(),
    })?;

    let max_rel = links
        .iter()
        .map(|l| l.rel)
        .chain(declared.keys().copied())
        .max()
        .unwrap_or(0);
    if let Some(bad) = links
        .iter()
        .map(|l| l.rel)
        .chain(declared.keys().copied())
        .find(|&r| r < 1)
    {
        return Err(PajekError::Parse {
            line: 0,
            message: format!("relation code {bad} is below 1"),
        });
    }
    let mut relations = CodingTable::empty("relation", 1);
    for code in 1..=max_rel {
        let name = declared
            .get(&code)
            .cloned()
            .unwrap_or_else(|| code.to_string());
        if relations.code(&name).is_some() {
            return Err(PajekError::Conflict {
                line: 0,
                code,
                existing: name.clone(),
                new: name,
            });
        }
        relations.intern(&name);
    }

    let labels: Vec<String> = labels
        .into_iter()
        .enumerate()
        .map(|(i, l)| l.unwrap_or_else(|| (i + 1).to_string()))
        .collect();
    let distinct = labels.iter().collect::<HashSet<_>>().len() == labels.len();
    let node_levels = if distinct && labels.iter().all(|l| !l.is_empty()) {
        labels.clone()
    } else {
        (1..=n).map(|i| i.to_string()).collect()
    };

    let mut net = Network::with_base(1);
    net.node_coding = CodingTable::from_levels("node", node_levels, 1)?;
    net.nodes = labels
        .into_iter()
        .zip(coords)
        .enumerate()
        .map(|(i, (lab, (x, y)))| NodeRecord {
            id: Ident::Code(i as i64 + 1),
            lab,
            x,
            y,
            ..NodeRecord::labeled("")
        })
        .collect();
    net.links = links
        .into_iter()
        .map(|p| {
            let name = relations.level(p.rel).unwrap_or_default();
            let mut link = LinkRecord::new(p.kind, p.n1, p.n2, p.rel);
            link.weight = p.weight;
            link.label = p.label.filter(|l| l != name);
            link
        })
        .collect();
    net.relations = relations;
    net.info.title = title;
    net.derive_info();
    Ok(net)
}

fn name_of(tokens: &[Token]) -> String {
    tokens
        .iter()
        .map(|t| t.text.as_str())
        .collect::<Vec<_>>()
        .join(" ")
}

/// One integer class per node, with the coding table that names the classes.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    pub name: String,
    pub values: Vec<i64>,
    pub coding: CodingTable,
    pub missing_code: i64,
}

impl Partition {
    fn check(&self) -> Result<(), PajekError> {
        for (position, &value) in self.values.iter().enumerate() {
            if value != self.missing_code && self.coding.level(value).is_none() {
                return Err(PajekError::Value { value, position });
            }
        }
        Ok(())
    }
}

/// Codes a node property into a partition; levels are sorted, nodes without
/// the property get `missing_code`.
pub fn partition_from_property(
    network: &Network,
    property: &str,
    base: i64,
    missing_code: i64,
) -> Result<Partition, PajekError> {
    if base != 1 {
        return Err(PajekError::Base(base));
    }
    let values: Vec<Option<String>> = network
        .nodes
        .iter()
        .map(|n| n.property(property).and_then(|v| v.categorical()))
        .collect();
    if values.iter().all(Option::is_none) {
        return Err(PajekError::UnknownProperty(property.to_owned()));
    }
    let coding = build_coding_table(
        property,
        values.iter().map(|v| v.as_deref()),
        LevelPolicy::Sorted,
        base,
    )?;
    let codes = encode(values.iter().map(|v| v.as_deref()), &coding, missing_code)?;
    Ok(Partition {
        name: property.to_owned(),
        values: codes,
        coding,
        missing_code,
    })
}

fn legend_token(level: &str) -> String {
    if level.chars().any(|c| c.is_whitespace() || c == '"') {
        format!("\"{}\"", level.replace('"', "\"\""))
    } else {
        level.to_owned()
    }
}

/// Serializes a partition: a `%` legend line with `code level` pairs, the
/// `*vertices n` header, then one value per line.
pub fn write_pajek_clu(partition: &Partition) -> Result<String, PajekError> {
    partition.check()?;
    let mut out = String::new();
    if !partition.coding.is_empty() {
        out.push('%');
        for (code, level) in (partition.coding.base()..).zip(partition.coding.levels()) {
            if level.chars().any(char::is_control) {
                return Err(PajekError::Encoding(level.clone()));
            }
            let _ = write!(out, " {code} {}", legend_token(level));
        }
        out.push('\n');
    }
    let _ = writeln!(out, "*vertices {}", partition.values.len());
    for v in &partition.values {
        let _ = writeln!(out, "{v}");
    }
    Ok(out)
}

/// Parses a CLU file. The legend comment supplies level names; without it,
/// levels are the numbers `1..=max`. The missing code is one below the base.
pub fn read_pajek_clu(mut source: impl Read, name: &str) -> Result<Partition, PajekError> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;

    let mut legend: Option<Vec<(i64, String)>> = None;
    let mut declared: Option<usize> = None;
    let mut values = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim_end_matches('\r').trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('%') {
            if legend.is_none() && declared.is_none() {
                legend = parse_legend(comment, lineno)?;
            }
            continue;
        }
        if line.starts_with('*') {
            let tokens = tokenize(line, lineno)?;
            if !tokens[0].text.eq_ignore_ascii_case("*vertices") {
                return Err(PajekError::UnknownSection {
                    line: lineno,
                    keyword: tokens[0].text.clone(),
                });
            }
            let count = tokens.get(1).ok_or_else(|| PajekError::Parse {
                line: lineno,
                message: "missing vertex count".into(),
            })?;
            declared = Some(parse_int(count, lineno, "vertex count")?.max(0) as usize);
            continue;
        }
        if declared.is_none() {
            return Err(PajekError::Parse {
                line: lineno,
                message: "values before *vertices".into(),
            });
        }
        for tok in tokenize(line, lineno)? {
            values.push(parse_int(&tok, lineno, "class value")?);
        }
    }
    let declared = declared.ok_or_else(|| PajekError::Parse {
        line: 0,
        message: "missing *vertices".into(),
    })?;
    if values.len() != declared {
        return Err(PajekError::Count {
            declared,
            found: values.len(),
        });
    }

    let coding = match legend {
        Some(pairs) => {
            let base = pairs[0].0;
            if let Some((code, _)) = pairs
                .iter()
                .zip(base..)
                .find(|((c, _), want)| c != want)
                .map(|(p, _)| p)
            {
                return Err(PajekError::Parse {
                    line: 0,
                    message: format!("legend code {code} is out of sequence"),
                });
            }
            CodingTable::from_levels(name, pairs.into_iter().map(|(_, l)| l).collect(), base)?
        }
        None => {
            let max = values.iter().copied().max().unwrap_or(0).max(0);
            CodingTable::from_levels(name, (1..=max).map(|c| c.to_string()).collect(), 1)?
        }
    };
    let partition = Partition {
        name: name.to_owned(),
        values,
        missing_code: coding.base() - 1,
        coding,
    };
    partition.check()?;
    Ok(partition)
}

fn parse_legend(comment: &str, lineno: usize) -> Result<Option<Vec<(i64, String)>>, PajekError> {
    let tokens = tokenize(comment, lineno)?;
    if tokens.is_empty() || tokens.len() % 2 != 0 {
        return Ok(None);
    }
    let mut pairs = Vec::with_capacity(tokens.len() / 2);
    for pair in tokens.chunks(2) {
        match pair[0].text.parse::<i64>() {
            Ok(code) if !pair[0].quoted => pairs.push((code, pair[1].text.clone())),
            _ => return Ok(None),
        }
    }
    Ok(Some(pairs))
}

/// Maps each node of `network` to a row of a partition computed on another
/// network, matching nodes by label. Unmatched nodes get the missing code.
pub fn align_partition(partition: &Partition, source: &Network, target: &Network) -> Partition {
    let by_label: HashMap<&str, usize> = source
        .nodes
        .iter()
        .enumerate()
        .map(|(i, n)| (n.lab.as_str(), i))
        .collect();
    let values = target
        .nodes
        .iter()
        .map(|n| {
            by_label
                .get(n.lab.as_str())
                .map_or(partition.missing_code, |&i| partition.values[i])
        })
        .collect();
    Partition {
        values,
        ..partition.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::network_stats;

    const BIB_NET: &str = include_str!("../tests/fixtures/bib.net");

    #[test]
    fn reads_bibliography() {
        let net = read_pajek_net(BIB_NET.as_bytes()).unwrap();
        let s = network_stats(&net).unwrap();
        assert_eq!(
            (s.n_nodes, s.n_arcs, s.n_edges, s.n_relations, s.n_modes),
            (16, 19, 0, 5, 1)
        );
        let cites = &net.links[15];
        assert_eq!(
            (cites.kind, &cites.n1, &cites.n2, cites.weight),
            (LinkKind::Arc, &Ident::Code(9), &Ident::Code(10), 1.0)
        );
        assert_eq!(net.relation_name(cites), Some("cites"));
        assert_eq!(cites.label, None);
        assert_eq!(net.node_coding.level(10), Some("Generalized Blockmodeling"));
    }

    #[test]
    fn writes_bibliography_back() {
        let net = read_pajek_net(BIB_NET.as_bytes()).unwrap();
        assert_eq!(
            write_pajek_net(&net, &PajekWriteOptions::default()).unwrap(),
            BIB_NET
        );
    }

    #[test]
    fn empty_network() {
        let text = write_pajek_net(&Network::default(), &PajekWriteOptions::default()).unwrap();
        assert_eq!(text, "*vertices 0\n*arcs\n");
        let net = read_pajek_net(text.as_bytes()).unwrap();
        assert!(net.nodes.is_empty() && net.links.is_empty());
    }

    #[test]
    fn single_edge_section() {
        let net = Network::from_records(
            1,
            vec![NodeRecord::labeled("a"), NodeRecord::labeled("b")],
            vec![LinkRecord::new(LinkKind::Edge, "a", "b", "rel")],
        );
        let text = write_pajek_net(&net, &PajekWriteOptions::default()).unwrap();
        assert_eq!(
            text,
            "*vertices 2\n1 \"a\"\n2 \"b\"\n*edges :1 \"rel\"\n*edges\n1: 1 2 1 l \"rel\"\n"
        );
    }

    #[test]
    fn rejects_base_zero_and_control_chars() {
        let net = Network::default();
        assert!(matches!(
            write_pajek_net(
                &net,
                &PajekWriteOptions {
                    base: 0,
                    coordinates: false
                }
            ),
            Err(PajekError::Base(0))
        ));
        let bad = Network::from_records(1, vec![NodeRecord::labeled("a\nb")], vec![]);
        assert!(matches!(
            write_pajek_net(&bad, &PajekWriteOptions::default()),
            Err(PajekError::Encoding(_))
        ));
    }

    #[test]
    fn coordinates_flag() {
        let mut net = Network::from_records(1, vec![NodeRecord::labeled("a")], vec![]);
        net.nodes[0].x = Some(0.5);
        net.nodes[0].y = Some(0.25);
        let on = write_pajek_net(
            &net,
            &PajekWriteOptions {
                base: 1,
                coordinates: true,
            },
        )
        .unwrap();
        assert!(on.contains("1 \"a\" 0.5 0.25\n"));
        let back = read_pajek_net(on.as_bytes()).unwrap();
        assert_eq!((back.nodes[0].x, back.nodes[0].y), (Some(0.5), Some(0.25)));
    }

    #[test]
    fn tolerant_reading() {
        let text = "% comment\r\n*Vertices 3\r\n1 \"a\"\r\n\r\n2 \"b\"\n3 c\n*ARCS\n1 2\n2 3 2.5\n*Edges :2 \"x y\"\n1 3\n";
        let net = read_pajek_net(text.as_bytes()).unwrap();
        assert_eq!(net.links.len(), 3);
        assert_eq!(net.relations.levels(), ["1", "x y"]);
        assert_eq!(net.links[0].rel, Ident::Code(1));
        assert_eq!(net.links[1].weight, 2.5);
        assert_eq!(
            (net.links[2].kind, &net.links[2].rel),
            (LinkKind::Edge, &Ident::Code(2))
        );
        assert_eq!(net.nodes[2].lab, "c");
    }

    #[test]
    fn reader_errors() {
        assert!(matches!(
            read_pajek_net("*vertices 2\n*arcs\n1 3\n".as_bytes()),
            Err(PajekError::Range {
                line: 3,
                index: 3,
                n: 2
            })
        ));
        assert!(matches!(
            read_pajek_net("*vertices 2\n*matrix\n".as_bytes()),
            Err(PajekError::UnknownSection { line: 2, .. })
        ));
        assert!(matches!(
            read_pajek_net("*vertices 2\n*arcs :1 \"a\"\n*arcs :1 \"b\"\n".as_bytes()),
            Err(PajekError::Conflict {
                line: 3,
                code: 1,
                ..
            })
        ));
    }

    #[test]
    fn duplicate_labels_fall_back_to_numbers() {
        let net = read_pajek_net("*vertices 2\n1 \"a\"\n2 \"a\"\n".as_bytes()).unwrap();
        assert_eq!(net.node_coding.levels(), ["1", "2"]);
        assert_eq!(net.nodes[1].lab, "a");
    }

    fn sex_partition() -> Partition {
        let coding = CodingTable::from_levels("sex", vec!["f".into(), "m".into()], 1).unwrap();
        Partition {
            name: "sex".into(),
            values: vec![2, 2, 1, 0],
            coding,
            missing_code: 0,
        }
    }

    #[test]
    fn clu_round_trip() {
        let p = sex_partition();
        let text = write_pajek_clu(&p).unwrap();
        assert_eq!(text, "% 1 f 2 m\n*vertices 4\n2\n2\n1\n0\n");
        assert_eq!(read_pajek_clu(text.as_bytes(), "sex").unwrap(), p);
    }

    #[test]
    fn clu_without_legend_and_count_errors() {
        let p = read_pajek_clu("*vertices 2\n1\n1\n".as_bytes(), "c").unwrap();
        assert_eq!(p.values, vec![1, 1]);
        assert_eq!(p.coding.levels(), ["1"]);
        assert!(matches!(
            read_pajek_clu("*vertices 2\n1\n".as_bytes(), "c"),
            Err(PajekError::Count {
                declared: 2,
                found: 1
            })
        ));
        let empty = Partition {
            name: "e".into(),
            values: vec![],
            coding: CodingTable::empty("e", 1),
            missing_code: 0,
        };
        assert_eq!(write_pajek_clu(&empty).unwrap(), "*vertices 0\n");
    }

    #[test]
    fn legend_quotes_spaces() {
        let coding = CodingTable::from_levels(
            "p",
            vec!["Cambridge University Press".into(), "x".into()],
            1,
        )
        .unwrap();
        let p = Partition {
            name: "p".into(),
            values: vec![1, 2],
            coding,
            missing_code: 0,
        };
        let text = write_pajek_clu(&p).unwrap();
        assert!(text.starts_with("% 1 \"Cambridge University Press\" 2 x\n"));
        assert_eq!(read_pajek_clu(text.as_bytes(), "p").unwrap(), p);
    }

    #[test]
    fn partition_requires_property() {
        let net = Network::from_records(1, vec![NodeRecord::labeled("a")], vec![]);
        assert!(matches!(
            partition_from_property(&net, "sex", 1, 0),
            Err(PajekError::UnknownProperty(_))
        ));
        let mut one = net.clone();
        one.nodes[0].mode = Some("person".into());
        let p = partition_from_property(&one, "mode", 1, 0).unwrap();
        assert_eq!(p.values, vec![1]);
    }
}
