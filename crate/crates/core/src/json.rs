//! JSON descriptors. Integers travel as decimal strings; plain JSON numbers are
//! accepted on input for hand-written files.

use std::fmt;
use std::str::FromStr;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize};

use crate::exact::{IntPoly, Integer};

/// An integer read from either a decimal string or a JSON integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecimalInt(pub Integer);

impl<'de> Deserialize<'de> for DecimalInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = DecimalInt;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<DecimalInt, E> {
                Ok(DecimalInt(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<DecimalInt, E> {
                Ok(DecimalInt(v.into()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<DecimalInt, E> {
                Integer::from_str(v.trim())
                    .map(DecimalInt)
                    .map_err(|_| E::custom(format!("not a decimal integer: {v:?}")))
            }
        }
        d.deserialize_any(V)
    }
}

impl Serialize for DecimalInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_str_radix(10))
    }
}

/// `serde(with = "crate::json::decimal")` for `Integer` fields.
pub mod decimal {
    use super::*;

    pub fn serialize<S: serde::Serializer>(n: &Integer, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Integer, D::Error> {
        DecimalInt::deserialize(d).map(|v| v.0)
    }
}

/// `{"g": [c0, …, 1]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub g: IntPoly,
}

/// `{"coords": […], "den": "…"}`; `den` defaults to 1.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ElementDescriptor {
    pub coords: Vec<DecimalInt>,
    #[serde(default = "one")]
    pub den: DecimalInt,
}

/// `{"g": […], "alpha": {...}, "upsilon": {...}, "a0": "1"}` plus an optional
/// unit system used for regulator computations.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyDescriptor {
    pub g: IntPoly,
    pub alpha: ElementDescriptor,
    pub upsilon: ElementDescriptor,
    #[serde(default = "one")]
    pub a0: DecimalInt,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub units: Option<Vec<ElementDescriptor>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

fn one() -> DecimalInt {
    DecimalInt(Integer::from(1))
}
