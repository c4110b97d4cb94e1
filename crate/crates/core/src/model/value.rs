use std::collections::BTreeMap;
use std::fmt;

use super::temporal::TemporalQuantity;

/// Structured property value attached to nodes, links, and the info block.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum PropertyValue {
    #[default]
    Absent,
    Boolean(bool),
    Integer(i64),
    Real(f64),
    Text(String),
    /// Subsets, distributions and time series.
    List(Vec<PropertyValue>),
    Interval {
        lo: f64,
        hi: f64,
    },
    Temporal(TemporalQuantity),
    /// User-defined object; keys are kept sorted.
    Map(BTreeMap<String, PropertyValue>),
}

pub(crate) static ABSENT: PropertyValue = PropertyValue::Absent;

impl PropertyValue {
    pub fn is_absent(&self) -> bool {
        matches!(self, PropertyValue::Absent)
    }

    pub fn as_f64(&self) -> Option<f64> {
        match *self {
            PropertyValue::Integer(i) => Some(i as f64),
            PropertyValue::Real(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_text(&self) -> Option<&str> {
        match self {
            PropertyValue::Text(s) => Some(s),
            _ => None,
        }
    }

    /// Text rendering used when a value is treated as a categorical level.
    /// Scalars only; structured values have no categorical form.
    pub fn categorical(&self) -> Option<String> {
        match self {
            PropertyValue::Boolean(b) => Some(b.to_string()),
            PropertyValue::Integer(i) => Some(i.to_string()),
            PropertyValue::Real(r) => Some(r.to_string()),
            PropertyValue::Text(s) if !s.is_empty() => Some(s.clone()),
            _ => None,
        }
    }
}

impl fmt::Display for PropertyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PropertyValue::Absent => f.write_str("NA"),
            PropertyValue::Boolean(b) => write!(f, "{b}"),
            PropertyValue::Integer(i) => write!(f, "{i}"),
            PropertyValue::Real(r) => write!(f, "{r}"),
            PropertyValue::Text(s) => f.write_str(s),
            PropertyValue::List(items) => {
                f.write_str("[")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{item}")?;
                }
                f.write_str("]")
            }
            PropertyValue::Interval { lo, hi } => write!(f, "[{lo}, {hi}]"),
            PropertyValue::Temporal(tq) => write!(f, "{tq}"),
            PropertyValue::Map(map) => {
                f.write_str("{")?;
                for (i, (k, v)) in map.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{k}: {v}")?;
                }
                f.write_str("}")
            }
        }
    }
}

impl From<&str> for PropertyValue {
    fn from(s: &str) -> Self {
        PropertyValue::Text(s.to_owned())
    }
}

impl From<String> for PropertyValue {
    fn from(s: String) -> Self {
        PropertyValue::Text(s)
    }
}

impl From<f64> for PropertyValue {
    fn from(r: f64) -> Self {
        PropertyValue::Real(r)
    }
}

impl From<i64> for PropertyValue {
    fn from(i: i64) -> Self {
        PropertyValue::Integer(i)
    }
}

impl From<bool> for PropertyValue {
    fn from(b: bool) -> Self {
        PropertyValue::Boolean(b)
    }
}
