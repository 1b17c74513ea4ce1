//! JSON encoding for exact integers: plain numbers when they fit in `i64`,
//! decimal strings otherwise.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Wire {
    Small(i64),
    Big(String),
}

fn to_wire(x: &BigInt) -> Wire {
    match x.to_i64() {
        Some(v) => Wire::Small(v),
        None => Wire::Big(x.to_string()),
    }
}

fn from_wire<E: serde::de::Error>(w: Wire) -> Result<BigInt, E> {
    match w {
        Wire::Small(v) => Ok(BigInt::from(v)),
        Wire::Big(s) => s.parse().map_err(|_| E::custom(format!("bad integer `{s}`"))),
    }
}

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let w: Vec<Wire> = v.iter().map(to_wire).collect();
        w.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let w: Vec<Wire> = Vec::deserialize(d)?;
        w.into_iter().map(from_wire::<D::Error>).collect()
    }
}

pub mod single {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        to_wire(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let w = Wire::deserialize(d)?;
        from_wire::<D::Error>(w)
    }
}
