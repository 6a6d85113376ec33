//! JSON documents for monoids and morphisms.
//!
//! A monoid is `{"backend": "finset" | "finab", ...}`. Finite monoids are
//! given either by a multiplication table,
//!
//! ```json
//! {"backend": "finset", "table": [[0, 1], [1, 0]], "unit": 0}
//! ```
//!
//! or in full form with `"carrier"`, `"mult"` and `"unit"` as finite-set
//! objects and maps. Rings give a presented group, the products of
//! generators as the rows of a `g x g²` matrix, and the unit as a vector:
//!
//! ```json
//! {"backend": "finab", "carrier": {"moduli": [8]}, "mult": [[1]], "unit": [1]}
//! ```
//!
//! Here `"carrier"` may also be `{"gens": g, "relations": [columns]}`, and
//! `"mult"`/`"unit"` may be full morphism objects.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::category::MonoidalCategory;
use crate::error::{Error, Result};
use crate::finab::{AbMor, FinAb, PresentedAbGroup};
use crate::finset::{FinSet, FinSetMor, FinSetObj};
use crate::linalg::IntMatrix;
use crate::monoid::MonoidObject;

#[derive(Clone, Debug)]
pub enum AnyMonoid {
    FinSet(MonoidObject<FinSet>),
    FinAb(MonoidObject<FinAb>),
}

impl AnyMonoid {
    pub fn backend(&self) -> &'static str {
        match self {
            AnyMonoid::FinSet(_) => "finset",
            AnyMonoid::FinAb(_) => "finab",
        }
    }
}

fn schema(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| schema(format!("missing field {key:?}")))
}

fn from_value<T: serde::de::DeserializeOwned>(v: &Value, what: &str) -> Result<T> {
    serde_json::from_value(v.clone()).map_err(|e| schema(format!("{what}: {e}")))
}

pub fn parse_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| schema(format!("{n} is not an integer"))),
        Value::String(s) => s.parse().map_err(|_| schema(format!("{s:?} is not an integer"))),
        other => Err(schema(format!("expected an integer, found {other}"))),
    }
}

fn parse_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|x| x.to_usize())
        .ok_or_else(|| schema(format!("{what} must be a non-negative integer")))
}

pub fn parse_vector(v: &Value) -> Result<Vec<BigInt>> {
    v.as_array()
        .ok_or_else(|| schema("expected an array of integers"))?
        .iter()
        .map(parse_int)
        .collect()
}

fn parse_rows(v: &Value) -> Result<Vec<Vec<BigInt>>> {
    v.as_array()
        .ok_or_else(|| schema("expected an array of rows"))?
        .iter()
        .map(parse_vector)
        .collect()
}

fn matrix(rows: &[Vec<BigInt>], nrows: usize, ncols: usize) -> Result<IntMatrix> {
    if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
        return Err(schema(format!("expected a {nrows}x{ncols} matrix")));
    }
    Ok(IntMatrix::from_rows_with_cols(rows, ncols))
}

pub fn int_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub fn vector_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_json).collect())
}

pub fn rows_json(m: &IntMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| vector_json(r)).collect())
}

/// `{"moduli": [...]}` (0 for a copy of `Z`) or `{"gens", "relations"}`.
pub fn parse_group(v: &Value) -> Result<PresentedAbGroup> {
    if let Some(m) = v.get("moduli") {
        let moduli = m
            .as_array()
            .ok_or_else(|| schema("moduli must be an array"))?
            .iter()
            .map(|x| x.as_u64().ok_or_else(|| schema("moduli must be non-negative integers")))
            .collect::<Result<Vec<_>>>()?;
        return Ok(PresentedAbGroup::diagonal(&moduli));
    }
    let gens = parse_usize(field(v, "gens")?, "gens")?;
    let relations = match v.get("relations") {
        Some(r) => parse_rows(r)?,
        None => Vec::new(),
    };
    PresentedAbGroup::from_relation_columns(gens, relations).map_err(|e| schema(e.to_string()))
}

pub fn group_json(g: &PresentedAbGroup) -> Value {
    json!({
        "gens": g.gens(),
        "relations": g.relations().basis().iter().map(|r| vector_json(r)).collect::<Vec<_>>(),
    })
}

pub fn parse_monoid(v: &Value) -> Result<AnyMonoid> {
    let backend = field(v, "backend")?
        .as_str()
        .ok_or_else(|| schema("backend must be a string"))?;
    match backend {
        "finset" => parse_finset_monoid(v).map(AnyMonoid::FinSet),
        "finab" => parse_finab_monoid(v).map(AnyMonoid::FinAb),
        other => Err(schema(format!("unknown backend {other:?}"))),
    }
}

fn parse_finset_monoid(v: &Value) -> Result<MonoidObject<FinSet>> {
    if let Some(t) = v.get("table") {
        let table: Vec<Vec<usize>> = from_value(t, "table")?;
        let unit = parse_usize(field(v, "unit")?, "unit")?;
        if unit >= table.len() {
            return Err(schema("unit is not an element"));
        }
        if table.iter().flatten().any(|&x| x >= table.len()) {
            return Err(schema("table entries must be elements"));
        }
        let m = MonoidObject::from_table(&table, unit).map_err(|e| schema(e.to_string()))?;
        return match v.get("labels") {
            Some(l) => {
                let labels: Vec<String> = from_value(l, "labels")?;
                let carrier = FinSetObj::with_labels(labels).map_err(|e| schema(e.to_string()))?;
                if carrier.size() != table.len() {
                    return Err(schema("one label per element is required"));
                }
                MonoidObject::new(&FinSet, carrier, m.mult, m.unit).map_err(|e| schema(e.to_string()))
            }
            None => Ok(m),
        };
    }
    let carrier: FinSetObj = from_value(field(v, "carrier")?, "carrier")?;
    let mult: FinSetMor = from_value(field(v, "mult")?, "mult")?;
    let unit = match field(v, "unit")? {
        Value::Number(_) => {
            let i = parse_usize(&v["unit"], "unit")?;
            FinSetMor::point(&carrier, i).map_err(|e| schema(e.to_string()))?
        }
        other => from_value(other, "unit")?,
    };
    MonoidObject::new(&FinSet, carrier, mult, unit).map_err(|e| schema(e.to_string()))
}

fn parse_finab_monoid(v: &Value) -> Result<MonoidObject<FinAb>> {
    let carrier = parse_group(field(v, "carrier")?)?;
    let g = carrier.gens();
    let squared = FinAb.tensor(&carrier, &carrier);
    let mult = match field(v, "mult")? {
        m @ Value::Array(_) => {
            let rows = parse_rows(m)?;
            AbMor::new(squared, carrier.clone(), matrix(&rows, g, g * g)?).map_err(|e| schema(e.to_string()))?
        }
        m => from_value(m, "mult")?,
    };
    let unit = match field(v, "unit")? {
        u @ Value::Array(_) => {
            let e = parse_vector(u)?;
            let rows: Vec<Vec<BigInt>> = e.into_iter().map(|x| vec![x]).collect();
            AbMor::new(PresentedAbGroup::free(1), carrier.clone(), matrix(&rows, g, 1)?)
                .map_err(|e| schema(e.to_string()))?
        }
        u => from_value(u, "unit")?,
    };
    MonoidObject::new(&FinAb, carrier, mult, unit).map_err(|e| schema(e.to_string()))
}

pub fn monoid_json(m: &AnyMonoid) -> Value {
    match m {
        AnyMonoid::FinSet(m) => json!({
            "backend": "finset",
            "table": m.table(),
            "unit": m.unit_element(),
        }),
        AnyMonoid::FinAb(m) => json!({
            "backend": "finab",
            "carrier": group_json(&m.carrier),
            "mult": rows_json(m.mult.matrix()),
            "unit": vector_json(&m.unit.matrix().column(0)),
        }),
    }
}

/// A map into `cod`: a full morphism object, `{"dom": n, "table": [...]}`,
/// or a bare table.
pub fn parse_finset_map(v: &Value, cod: &FinSetObj) -> Result<FinSetMor> {
    let (dom, table): (FinSetObj, Vec<usize>) = match v {
        Value::Array(_) => {
            let t: Vec<usize> = from_value(v, "table")?;
            (FinSetObj::new(t.len()), t)
        }
        Value::Object(o) if o.contains_key("cod") => {
            let m: FinSetMor = from_value(v, "map")?;
            if m.cod() != cod {
                return Err(schema("map does not land in the carrier"));
            }
            return Ok(m);
        }
        Value::Object(o) => {
            let t: Vec<usize> = from_value(field(v, "table")?, "table")?;
            let dom = match o.get("dom") {
                None => FinSetObj::new(t.len()),
                Some(Value::Number(_)) => FinSetObj::new(parse_usize(&o["dom"], "dom")?),
                Some(d) => from_value(d, "dom")?,
            };
            (dom, t)
        }
        _ => return Err(schema("expected a map")),
    };
    FinSetMor::new(dom, cod.clone(), table).map_err(|e| schema(e.to_string()))
}

/// A homomorphism into `cod`: a full morphism object, `{"dom": group or
/// rank, "matrix": rows}`, or a bare list of images of free generators.
pub fn parse_finab_map(v: &Value, cod: &PresentedAbGroup) -> Result<AbMor> {
    let (dom, m) = match v {
        Value::Array(cols) => {
            let columns = cols.iter().map(parse_vector).collect::<Result<Vec<_>>>()?;
            if columns.iter().any(|c| c.len() != cod.gens()) {
                return Err(schema("images must have one coordinate per generator"));
            }
            (
                PresentedAbGroup::free(columns.len()),
                IntMatrix::from_columns(cod.gens(), &columns),
            )
        }
        Value::Object(o) if o.contains_key("cod") => {
            let m: AbMor = from_value(v, "map")?;
            if m.cod() != cod {
                return Err(schema("map does not land in the carrier"));
            }
            return Ok(m);
        }
        Value::Object(o) => {
            let dom = match field(v, "dom")? {
                Value::Number(_) => PresentedAbGroup::free(parse_usize(&o["dom"], "dom")?),
                d => parse_group(d)?,
            };
            let rows = parse_rows(field(v, "matrix")?)?;
            let m = matrix(&rows, cod.gens(), dom.gens())?;
            (dom, m)
        }
        _ => return Err(schema("expected a homomorphism")),
    };
    AbMor::new(dom, cod.clone(), m).map_err(|e| schema(e.to_string()))
}

pub fn finset_map_json(f: &FinSetMor) -> Value {
    json!({"dom": f.dom().size(), "cod": f.cod().size(), "table": f.table()})
}

pub fn finab_map_json(f: &AbMor) -> Value {
    let mut o = Map::new();
    o.insert("dom".into(), group_json(f.dom()));
    o.insert("cod".into(), group_json(f.cod()));
    o.insert("matrix".into(), rows_json(f.matrix()));
    Value::Object(o)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_form_round_trips() {
        let v = json!({"backend": "finset", "table": [[0, 1], [1, 0]], "unit": 0});
        let m = parse_monoid(&v).unwrap();
        assert_eq!(monoid_json(&m), v);
    }

    #[test]
    fn ring_form_round_trips() {
        let v = json!({"backend": "finab", "carrier": {"moduli": [8]}, "mult": [[1]], "unit": [1]});
        let m = parse_monoid(&v).unwrap();
        let out = monoid_json(&m);
        assert_eq!(out["carrier"], json!({"gens": 1, "relations": [[8]]}));
        let again = parse_monoid(&out).unwrap();
        assert_eq!(monoid_json(&again), out);
    }

    #[test]
    fn full_finset_form() {
        let v = json!({
            "backend": "finset",
            "carrier": {"size": 2},
            "mult": {"dom": {"size": 4}, "cod": {"size": 2}, "table": [0, 1, 1, 0]},
            "unit": 0
        });
        let AnyMonoid::FinSet(m) = parse_monoid(&v).unwrap() else { panic!() };
        assert_eq!(m.table(), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn schema_errors() {
        assert!(matches!(parse_monoid(&json!({"table": []})), Err(Error::Schema(_))));
        assert!(matches!(parse_monoid(&json!({"backend": "groups"})), Err(Error::Schema(_))));
        assert!(matches!(
            parse_monoid(&json!({"backend": "finset", "table": [[0, 5], [1, 0]], "unit": 0})),
            Err(Error::Schema(_))
        ));
        assert!(matches!(
            parse_monoid(&json!({"backend": "finab", "carrier": {"moduli": [2]}, "mult": [[1, 0]], "unit": [1]})),
            Err(Error::Schema(_))
        ));
    }

    #[test]
    fn maps_into_carriers() {
        let f = parse_finset_map(&json!([0, 2]), &FinSetObj::new(4)).unwrap();
        assert_eq!(f.table(), &[0, 2]);
        let f = parse_finset_map(&json!({"dom": 1, "table": [3]}), &FinSetObj::new(4)).unwrap();
        assert_eq!(f.dom().size(), 1);
        let z8 = PresentedAbGroup::cyclic(8);
        let g = parse_finab_map(&json!([[2]]), &z8).unwrap();
        assert_eq!(g.dom(), &PresentedAbGroup::free(1));
        let g = parse_finab_map(&json!({"dom": {"moduli": [4]}, "matrix": [[2]]}), &z8).unwrap();
        assert_eq!(g.dom(), &PresentedAbGroup::cyclic(4));
        assert!(parse_finab_map(&json!({"dom": {"moduli": [4]}, "matrix": [[1]]}), &z8).is_err());
    }
}
