//! JSON encoding of big integers: plain numbers when they fit in an `i64`,
//! decimal strings otherwise.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Repr {
    Small(i64),
    Big(String),
}

fn to_repr(x: &BigInt) -> Repr {
    match x.to_i64() {
        Some(v) => Repr::Small(v),
        None => Repr::Big(x.to_string()),
    }
}

fn from_repr<E: serde::de::Error>(r: Repr) -> Result<BigInt, E> {
    match r {
        Repr::Small(v) => Ok(BigInt::from(v)),
        Repr::Big(s) => s
            .parse()
            .map_err(|_| E::custom(format!("not an integer: {s:?}"))),
    }
}



pub fn serialize_rows<S: Serializer>(rows: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
    rows.iter()
        .map(|r| r.iter().map(to_repr).collect::<Vec<_>>())
        .collect::<Vec<_>>()
        .serialize(s)
}

pub fn deserialize_rows<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
    Vec::<Vec<Repr>>::deserialize(d)?
        .into_iter()
        .map(|r| r.into_iter().map(from_repr::<D::Error>).collect())
        .collect()
}
