//! JSON encoding of scalars, classes and product tables.
//!
//! A scalar is `{"conductor": M, "terms": [{"power": k, "coeff": "p/q"}]}`
//! meaning `Σ (p/q)·e[k/M]` in the reduced representation. A class maps
//! basis monomial text (`"1"` for the unit) to scalars.

use serde_json::{json, Map, Value};

use crate::algebra::ProductTable;
use crate::error::{Error, Result};
use crate::invpoly::parse_monomials;
use crate::milnor::{AlgebraClass, SectorAlgebra};
use crate::poly::{Monomial, Poly};
use crate::scalar::{parse_rational, CycField, CycNum};
use crate::symmetry::GroupElement;

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedJson(msg.into())
}

pub fn cycnum_to_json(c: &CycNum) -> Value {
    let terms: Vec<Value> = c
        .terms()
        .into_iter()
        .map(|(k, q)| json!({"power": k, "coeff": q.to_string()}))
        .collect();
    json!({"conductor": c.conductor(), "terms": terms})
}

pub fn cycnum_from_json(v: &Value) -> Result<CycNum> {
    let conductor = v["conductor"]
        .as_u64()
        .filter(|&m| m > 0 && m <= u32::MAX as u64)
        .ok_or_else(|| malformed("missing conductor"))?;
    let field = CycField::get(conductor as u32);
    let terms = v["terms"]
        .as_array()
        .ok_or_else(|| malformed("missing terms"))?;
    let mut pairs = Vec::with_capacity(terms.len());
    for t in terms {
        let k = t["power"].as_i64().ok_or_else(|| malformed("bad power"))?;
        let q = t["coeff"]
            .as_str()
            .and_then(parse_rational)
            .ok_or_else(|| malformed("bad coefficient"))?;
        pairs.push((k, q));
    }
    Ok(CycNum::from_power_coeffs(&field, &pairs))
}

pub fn element_to_json(g: &GroupElement) -> Value {
    Value::Array(
        g.alphas()
            .iter()
            .map(|a| Value::String(a.to_string()))
            .collect(),
    )
}

pub fn element_from_json(v: &Value) -> Result<GroupElement> {
    let items = v
        .as_array()
        .ok_or_else(|| malformed("group element is not an array"))?;
    let alphas = items
        .iter()
        .map(|a| {
            a.as_str()
                .and_then(parse_rational)
                .ok_or_else(|| malformed("bad phase"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GroupElement::new(alphas))
}

pub fn class_to_json(sector: &SectorAlgebra, class: &AlgebraClass) -> Value {
    let vars = sector.vars();
    let mut map = Map::new();
    for (m, c) in sector.basis().iter().zip(class.coeffs()) {
        if !c.is_zero() {
            map.insert(m.display(&vars), cycnum_to_json(c));
        }
    }
    Value::Object(map)
}

fn parse_monomial_key(key: &str, n: usize) -> Result<Monomial> {
    if key.trim() == "1" {
        return Ok(Monomial::one(n));
    }
    let (used, monomials) = parse_monomials(key)?;
    let [m] = monomials.as_slice() else {
        return Err(malformed(format!("`{key}` is not a single monomial")));
    };
    if used > n {
        return Err(Error::UnknownVariable(used));
    }
    let mut exps = m.exponents().to_vec();
    exps.resize(n, 0);
    Ok(Monomial::from_exponents(exps))
}

/// Reads a class back into `sector`, reducing the listed monomials.
pub fn class_from_json(sector: &SectorAlgebra, v: &Value) -> Result<AlgebraClass> {
    let map = v
        .as_object()
        .ok_or_else(|| malformed("class is not an object"))?;
    let vars = sector.vars();
    let mut p = Poly::zero(vars, sector.field());
    for (key, value) in map {
        let m = parse_monomial_key(key, vars.len())?;
        let c = cycnum_from_json(value)?.embed(sector.field())?;
        p.add_term(m, c);
    }
    Ok(sector.normal_form(&p))
}

pub fn table_to_json(table: &ProductTable) -> Value {
    let elements = table.group().elements();
    let mut pairs = Vec::with_capacity(elements.len() * elements.len());
    for (g, ge) in elements.iter().enumerate() {
        for (h, he) in elements.iter().enumerate() {
            let class = match table.entry(g, h) {
                Some(c) => class_to_json(table.sector(table.product_index(g, h)), c),
                None => Value::String("zero".into()),
            };
            pairs.push(json!({"g": element_to_json(ge), "h": element_to_json(he), "class": class}));
        }
    }
    json!({
        "polynomial": table.sectors().polynomial().to_string(),
        "side": table.side().to_string(),
        "conductor": table.sectors().field().conductor(),
        "pairs": pairs,
    })
}

/// Reads the `pairs` of a table document back as `(g, h, class)`; the class
/// is `None` for `"zero"`.
pub fn table_entries_from_json(
    table: &ProductTable,
    v: &Value,
) -> Result<Vec<(GroupElement, GroupElement, Option<AlgebraClass>)>> {
    let pairs = v["pairs"]
        .as_array()
        .ok_or_else(|| malformed("missing pairs"))?;
    pairs
        .iter()
        .map(|p| {
            let g = element_from_json(&p["g"])?;
            let h = element_from_json(&p["h"])?;
            let gh = table
                .group()
                .index_of(&g.mul(&h))
                .ok_or_else(|| malformed("element outside the group"))?;
            let class = match &p["class"] {
                Value::String(s) if s == "zero" => None,
                c => Some(class_from_json(table.sector(gh), c)?),
            };
            Ok((g, h, class))
        })
        .collect()
}
