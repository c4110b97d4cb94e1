//! Reading, writing, validating and converting network descriptions.
//!
//! Three concrete formats share one in-memory [`Network`] model:
//!
//! | Format | Module | Notes |
//! |--------|--------|-------|
//! | node table + link table (`;`-delimited) | [`tabular`] | labeled form |
//! | Pajek `.net` / `.clu` | [`pajek`] | multi-relational arcs and edges, partitions |
//! | NetsJSON basic | [`netsjson`] | full property preservation, temporal quantities |
//!
//! Factorization (replacing identifiers and categorical values by integer
//! codes) lives in [`coding`]; structural checks in [`validation`].

pub mod coding;
pub mod model;
pub mod netsjson;
pub mod pajek;
pub mod tabular;
pub mod validation;

pub use coding::{
    build_coding_table, decode, defactorize_network, encode, factorize_network, CodingError,
    CodingTable, LevelPolicy,
};
pub use model::{
    canonical_order, network_stats, tq_value_at, EventRecord, Ident, InfoBlock, LinkKind,
    LinkRecord, Network, NetworkStats, NodeRecord, PropertyValue, Segment, StructuralError,
    TemporalQuantity, TimeWindow,
};
pub use validation::{Finding, Level, Location, Rule, Severity, ValidationReport};
