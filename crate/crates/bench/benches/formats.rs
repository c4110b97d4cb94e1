use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use netfmt::netsjson::{parse_netsjson_str, write_netsjson};
use netfmt::pajek::{read_pajek_net, write_pajek_net, PajekWriteOptions};
use netfmt::tabular::{network_to_tables, read_network, write_table, TableOptions};
use netfmt::{
    canonical_order, factorize_network, Ident, LinkKind, LinkRecord, Network, NodeRecord,
    PropertyValue,
};

/// A deterministic network with `n` nodes, about `4n` links, three
/// relations and two node properties.
fn synthetic(n: usize) -> Network {
    let nodes = (0..n)
        .map(|i| {
            let mut node = NodeRecord::labeled(&format!("node {i}"));
            node.mode = Some(["person", "paper"][i % 2].to_owned());
            node.props
                .insert("group".into(), PropertyValue::Text(format!("g{}", i % 7)));
            node.props
                .insert("year".into(), PropertyValue::Real(1990.0 + (i % 30) as f64));
            node
        })
        .collect();
    let links = (0..4 * n)
        .map(|k| {
            let a = (k * 7919) % n;
            let b = (k * 104_729 + 1) % n;
            LinkRecord::new(
                LinkKind::Arc,
                Ident::Label(format!("node {a}")),
                Ident::Label(format!("node {b}")),
                ["cites", "knows", "authorOf"][k % 3],
            )
        })
        .collect();
    canonical_order(&Network::from_records(1, nodes, links))
}

fn tables_text(net: &Network) -> (Vec<u8>, Vec<u8>) {
    let opts = TableOptions::default();
    let (nodes, links) = network_to_tables(net, '.').unwrap();
    let (mut n, mut l) = (Vec::new(), Vec::new());
    write_table(&nodes, &opts, &mut n).unwrap();
    write_table(&links, &opts, &mut l).unwrap();
    (n, l)
}

fn formats(c: &mut Criterion) {
    for size in [100, 1000] {
        let net = synthetic(size);
        let (nodes, links) = tables_text(&net);
        let pajek = write_pajek_net(&net, &PajekWriteOptions::default()).unwrap();
        let json = write_netsjson(&net, false).unwrap();

        let mut group = c.benchmark_group("read");
        group.throughput(Throughput::Elements(size as u64));
        group.bench_with_input(BenchmarkId::new("csv", size), &size, |b, _| {
            b.iter(|| {
                read_network(
                    black_box(&nodes[..]),
                    black_box(&links[..]),
                    &TableOptions::default(),
                    true,
                    1,
                )
                .unwrap()
            })
        });
        group.bench_with_input(BenchmarkId::new("pajek", size), &size, |b, _| {
            b.iter(|| read_pajek_net(black_box(pajek.as_bytes())).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("netsjson", size), &size, |b, _| {
            b.iter(|| parse_netsjson_str(black_box(&json)).unwrap())
        });
        group.finish();

        let mut group = c.benchmark_group("write");
        group.throughput(Throughput::Elements(size as u64));
        group.bench_with_input(BenchmarkId::new("csv", size), &net, |b, net| {
            b.iter(|| tables_text(black_box(net)))
        });
        group.bench_with_input(BenchmarkId::new("pajek", size), &net, |b, net| {
            b.iter(|| write_pajek_net(black_box(net), &PajekWriteOptions::default()).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("netsjson", size), &net, |b, net| {
            b.iter(|| write_netsjson(black_box(net), false).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("factorize", size), &net, |b, net| {
            b.iter(|| factorize_network(black_box(net), 1).unwrap())
        });
        group.finish();
    }
}

criterion_group!(benches, formats);
criterion_main!(benches);
