//! Serialization helpers shared by report types.

use std::fmt::Display;

use serde::Serializer;

/// Serialize any `Display` value (counts in particular) as a JSON string,
/// so integers wider than 53 bits survive every JSON reader.
pub fn as_string<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub fn opt_as_string<T: Display, S: Serializer>(v: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}
