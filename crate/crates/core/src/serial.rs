//! Serialization helpers shared by the report types.

use serde::ser::{SerializeSeq, Serializer};

use crate::ff::FieldElement;

/// A field element as its F_3 coefficient vector, lowest degree first.
pub fn field_element<S: Serializer>(x: &FieldElement, s: S) -> Result<S::Ok, S::Error> {
    let coeffs = x.coeffs();
    let mut seq = s.serialize_seq(Some(coeffs.len()))?;
    for c in coeffs {
        seq.serialize_element(&c)?;
    }
    seq.end()
}

pub fn optional_field_element<S: Serializer>(
    x: &Option<FieldElement>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => field_element(v, s),
        None => s.serialize_none(),
    }
}
