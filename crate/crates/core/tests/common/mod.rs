//! Network generators shared by the integration and acceptance tests.
//!
//! Each [`Profile`] produces networks inside the class a format can carry
//! without loss.

#![allow(dead_code)]

use std::collections::BTreeMap;

use netfmt::{
    CodingTable, EventRecord, Ident, LinkKind, LinkRecord, Network, NodeRecord, PropertyValue,
    Segment, TemporalQuantity, TimeWindow,
};
use proptest::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    /// Text properties, optional `year` reals, labels, coordinates.
    Csv,
    /// Everything the model holds, with an index base of 0 or 1.
    Json,
    /// Labels only; arcs listed before edges.
    Pajek,
}

const CSV_NA: [&str; 3] = ["", "NA", "NaN"];

/// Cell-safe text: delimiters, quotes and newlines included, missing-value
/// markers excluded.
pub fn csv_text() -> impl Strategy<Value = String> {
    "[a-zA-Z0-9 ;,.\"'éßж\n-]{1,10}"
        .prop_filter("missing-value marker", |s| !CSV_NA.contains(&s.as_str()))
}

/// Text without control characters, as Pajek labels require.
pub fn pajek_text() -> impl Strategy<Value = String> {
    "[a-zA-Z0-9 ;,.:%*\"'éßж-]{1,10}"
}

pub fn json_text() -> impl Strategy<Value = String> {
    any::<String>()
}

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![
        any::<f64>().prop_filter("finite", |v| v.is_finite()),
        (-1000i32..1000).prop_map(|v| v as f64 / 8.0)
    ]
}

fn text_for(profile: Profile) -> BoxedStrategy<String> {
    match profile {
        Profile::Csv => csv_text().boxed(),
        Profile::Json => json_text()
            .prop_filter("empty identifier", |s| !s.is_empty())
            .boxed(),
        Profile::Pajek => pajek_text().boxed(),
    }
}

pub fn tq(value: BoxedStrategy<PropertyValue>) -> impl Strategy<Value = TemporalQuantity> {
    prop::collection::vec((0i64..4, 1i64..6, value), 0..5).prop_map(|parts| {
        let mut t = 0;
        let segments = parts
            .into_iter()
            .map(|(gap, len, v)| {
                let start = t + gap;
                t = start + len;
                Segment {
                    start,
                    end: t,
                    value: v,
                }
            })
            .collect();
        TemporalQuantity::new(segments)
    })
}

fn scalar() -> BoxedStrategy<PropertyValue> {
    prop_oneof![
        Just(PropertyValue::Absent),
        any::<bool>().prop_map(PropertyValue::Boolean),
        any::<i64>().prop_map(PropertyValue::Integer),
        finite().prop_map(PropertyValue::Real),
        json_text().prop_map(PropertyValue::Text),
    ]
    .boxed()
}

/// Any property value, nested up to two levels.
pub fn property_value() -> BoxedStrategy<PropertyValue> {
    scalar()
        .prop_recursive(2, 12, 4, |inner| {
            prop_oneof![
                prop::collection::vec(inner.clone(), 0..4).prop_map(PropertyValue::List),
                prop::collection::btree_map(prop_oneof!["[a-z$]{1,6}", json_text()], inner, 0..3)
                    .prop_map(PropertyValue::Map),
                (finite(), finite()).prop_map(|(lo, hi)| PropertyValue::Interval { lo, hi }),
                tq(scalar()).prop_map(PropertyValue::Temporal),
            ]
        })
        .boxed()
}

fn json_props(
    names: &'static [&'static str],
) -> impl Strategy<Value = BTreeMap<String, PropertyValue>> {
    prop::collection::btree_map(
        prop::sample::select(names).prop_map(str::to_owned),
        property_value(),
        0..3,
    )
}

fn node(profile: Profile, id: String) -> BoxedStrategy<NodeRecord> {
    match profile {
        Profile::Pajek => Just(NodeRecord::labeled(&id)).boxed(),
        Profile::Csv => (
            prop::option::of(csv_text()),
            prop::option::of(csv_text()),
            prop::option::of(prop::sample::select(&["person", "book", "article"][..])),
            prop::option::of((finite(), finite())),
            prop::collection::btree_map(
                prop::sample::select(&["country", "sex", "note"][..]),
                csv_text(),
                0..3,
            ),
            prop::option::of(finite()),
        )
            .prop_map(move |(lab, slab, mode, xy, text_props, year)| {
                let mut node = NodeRecord::labeled(&id);
                if let Some(lab) = lab {
                    node.lab = lab;
                }
                node.slab = slab;
                node.mode = mode.map(str::to_owned);
                node.x = xy.map(|p| p.0);
                node.y = xy.map(|p| p.1);
                node.props = text_props
                    .into_iter()
                    .map(|(k, v)| (k.to_owned(), PropertyValue::Text(v)))
                    .collect();
                if let Some(year) = year {
                    node.props.insert("year".into(), PropertyValue::Real(year));
                }
                node
            })
            .boxed(),
        Profile::Json => (
            json_text(),
            prop::option::of(json_text()),
            prop::option::of(prop::sample::select(&["person", "book", "article"][..])),
            prop::option::of(finite()),
            prop::option::of(finite()),
            prop::option::of(tq(scalar())),
            json_props(&["country", "sex", "year", "scores", "$odd"]),
        )
            .prop_map(move |(lab, slab, mode, x, y, tq, props)| NodeRecord {
                id: Ident::Label(id.clone()),
                lab,
                slab,
                x,
                y,
                mode: mode.map(str::to_owned),
                tq,
                props,
            })
            .boxed(),
    }
}

fn link(
    profile: Profile,
    n: usize,
    rel_names: &[String],
) -> BoxedStrategy<(usize, usize, LinkRecord)> {
    let rels = prop::sample::select(rel_names.to_vec());
    let kind = prop_oneof![Just(LinkKind::Arc), Just(LinkKind::Edge)];
    let base = (
        0..n,
        0..n,
        rels,
        kind,
        prop_oneof![3 => Just(1.0), 1 => finite()],
    );
    match profile {
        Profile::Pajek | Profile::Csv => (
            base,
            prop::option::of(text_for(profile)),
            prop::collection::btree_map(
                prop::sample::select(&["source", "page"][..]),
                csv_text(),
                0..2,
            ),
        )
            .prop_map(move |((a, b, rel, kind, weight), label, props)| {
                let mut link = LinkRecord::new(
                    kind,
                    Ident::Label(String::new()),
                    Ident::Label(String::new()),
                    rel.as_str(),
                );
                link.weight = weight;
                if profile == Profile::Pajek {
                    link.label = label.filter(|l| *l != rel);
                } else {
                    link.label = label;
                    link.props = props
                        .into_iter()
                        .map(|(k, v)| (k.to_owned(), PropertyValue::Text(v)))
                        .collect();
                }
                (a, b, link)
            })
            .boxed(),
        Profile::Json => (
            base,
            prop::option::of(json_text()),
            prop::option::of(tq(scalar())),
            json_props(&["source", "page", "since"]),
        )
            .prop_map(|((a, b, rel, kind, weight), label, tq, props)| {
                let mut link = LinkRecord::new(
                    kind,
                    Ident::Label(String::new()),
                    Ident::Label(String::new()),
                    rel.as_str(),
                );
                link.weight = weight;
                link.label = label;
                link.tq = tq;
                link.props = props;
                (a, b, link)
            })
            .boxed(),
    }
}

fn info_extras() -> impl Strategy<Value = InfoExtras> {
    (
        json_text(),
        json_text(),
        prop::option::of((
            -5i64..5,
            0i64..20,
            prop::collection::btree_map(-5i64..20, json_text(), 0..3),
        )),
        prop::collection::vec(
            (json_text(), json_text(), prop::option::of(json_text())),
            0..3,
        ),
        prop::option::of(json_text()),
        prop::option::of(json_text()),
        json_props(&["license", "keywords", "source"]),
        (any::<bool>(), any::<bool>(), any::<bool>(), 1usize..5),
        prop::option::of(prop_oneof![
            Just(serde_json::json!({"raw": [1, "two", null]})),
            Just(serde_json::json!("blob"))
        ]),
        prop::collection::btree_map(
            "[a-z]{1,5}",
            prop::collection::btree_set("[a-z]{1,3}", 1..4),
            0..2,
        ),
    )
        .prop_map(
            |(network, title, time, meta, created, modified, extra, flags, data, codings)| {
                InfoExtras {
                    network,
                    title,
                    time,
                    meta,
                    created,
                    modified,
                    extra,
                    flags,
                    data,
                    codings,
                }
            },
        )
}

#[derive(Debug, Clone)]
struct InfoExtras {
    network: String,
    title: String,
    time: Option<(i64, i64, BTreeMap<i64, String>)>,
    meta: Vec<(String, String, Option<String>)>,
    created: Option<String>,
    modified: Option<String>,
    extra: BTreeMap<String, PropertyValue>,
    flags: (bool, bool, bool, usize),
    data: Option<serde_json::Value>,
    codings: BTreeMap<String, std::collections::BTreeSet<String>>,
}

/// Labeled networks of the given profile with at most `max_nodes` nodes and
/// `max_links` links.
pub fn network(
    profile: Profile,
    max_nodes: usize,
    max_links: usize,
) -> impl Strategy<Value = Network> {
    let ids = prop::collection::btree_set(text_for(profile), 0..=max_nodes)
        .prop_map(|s| s.into_iter().collect::<Vec<_>>())
        .prop_shuffle();
    let rel_names = prop::collection::btree_set(text_for(profile), 1..5)
        .prop_map(|s| s.into_iter().collect::<Vec<_>>());
    (ids, rel_names, any::<bool>(), info_extras())
        .prop_flat_map(move |(ids, rel_names, zero_based, extras)| {
            let n = ids.len();
            let nodes: Vec<_> = ids.iter().map(|id| node(profile, id.clone())).collect();
            let links = if n == 0 {
                Just(Vec::new()).boxed()
            } else {
                prop::collection::vec(link(profile, n, &rel_names), 0..=max_links).boxed()
            };
            (nodes, links, Just(ids), Just(zero_based), Just(extras))
        })
        .prop_map(move |(nodes, links, ids, zero_based, extras)| {
            let mut links: Vec<LinkRecord> = links
                .into_iter()
                .map(|(a, b, mut link)| {
                    link.n1 = Ident::Label(ids[a].clone());
                    link.n2 = Ident::Label(ids[b].clone());
                    link
                })
                .collect();
            if profile == Profile::Pajek {
                links.sort_by_key(|l| l.kind);
            }
            let org = if profile == Profile::Json && zero_based {
                0
            } else {
                1
            };
            let mut net = Network::from_records(org, nodes, links);
            if profile == Profile::Json {
                apply_extras(&mut net, extras);
            }
            net
        })
}

fn apply_extras(net: &mut Network, extras: InfoExtras) {
    let info = &mut net.info;
    info.network = extras.network;
    info.title = extras.title;
    info.time = extras.time.map(|(t_min, len, t_labs)| TimeWindow {
        t_min,
        t_max: t_min + len,
        t_labs,
    });
    info.meta = extras
        .meta
        .into_iter()
        .map(|(date, title, author)| EventRecord {
            date,
            title,
            author,
            ..EventRecord::default()
        })
        .collect();
    info.created = extras.created;
    info.modified = extras.modified;
    info.extra = extras.extra;
    (info.simple, info.directed, info.multirel, info.mode) = extras.flags;
    info.data = extras.data;
    let org = info.org;
    net.property_codings = extras
        .codings
        .into_iter()
        .map(|(name, levels)| {
            let table = CodingTable::from_levels(name.clone(), levels.into_iter().collect(), org)
                .expect("distinct levels");
            (name, table)
        })
        .collect();
}
