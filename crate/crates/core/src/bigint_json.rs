//! Serde helpers writing big integers as JSON numbers when they fit in
//! 64 bits, and as decimal strings otherwise.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Repr {
    Int(i64),
    Str(String),
}

fn to_repr(v: &BigInt) -> Repr {
    v.to_i64().map_or_else(|| Repr::Str(v.to_string()), Repr::Int)
}

fn from_repr<E: serde::de::Error>(r: Repr) -> Result<BigInt, E> {
    match r {
        Repr::Int(i) => Ok(BigInt::from(i)),
        Repr::Str(s) => s.parse().map_err(E::custom),
    }
}

pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    to_repr(v).serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    from_repr(Repr::deserialize(d)?)
}

pub mod array3 {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt; 3], s: S) -> Result<S::Ok, S::Error> {
        [to_repr(&v[0]), to_repr(&v[1]), to_repr(&v[2])].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[BigInt; 3], D::Error> {
        let [a, b, c] = <[Repr; 3]>::deserialize(d)?;
        Ok([from_repr(a)?, from_repr(b)?, from_repr(c)?])
    }
}
