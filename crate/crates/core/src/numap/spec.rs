//! Polynomial oracle specs, the serializable stand-in for a black-box map.
//!
//! Either a full table (any object with a `"basis"` field) or the shorthand
//!
//! ```text
//! {"poly": [[exp, "c"], ...], "basis": "monomial"}
//! {"polys": [[[exp, "c"], ...], ...]}
//! ```
//!
//! where `exp` is an integer (one variable) or an array of k exponents, and
//! `polys` gives one term list per output coordinate. The basis defaults to
//! monomial; with `"binomial"` an exponent m stands for binom(x, m).

use serde_json::Value;

use super::{strict_as_oracle, table_as_oracle, AnyTable, MapOracle, Table};
use crate::error::{Error, Result};
use crate::json::int_from_value;
use crate::multiset::MultiSet;
use crate::ring::Int;

pub fn parse_spec(value: Value) -> Result<AnyTable> {
    let Some(obj) = value.as_object() else {
        return Err(Error::Malformed("oracle spec must be a JSON object".into()));
    };
    if !obj.contains_key("poly") && !obj.contains_key("polys") {
        return AnyTable::from_json(value);
    }
    for key in obj.keys() {
        if !matches!(key.as_str(), "poly" | "polys" | "basis") {
            return Err(Error::Malformed(format!(
                "unknown field {key:?} in polynomial spec"
            )));
        }
    }
    let outputs: Vec<&Value> = match (obj.get("poly"), obj.get("polys")) {
        (Some(p), None) => vec![p],
        (None, Some(ps)) => ps
            .as_array()
            .ok_or_else(|| Error::Malformed("\"polys\" must be an array".into()))?
            .iter()
            .collect(),
        _ => {
            return Err(Error::Malformed(
                "give exactly one of \"poly\" and \"polys\"".into(),
            ))
        }
    };
    if outputs.is_empty() {
        return Err(Error::Malformed("\"polys\" needs at least one output".into()));
    }

    let mut terms: Vec<(usize, MultiSet, Int)> = Vec::new();
    let mut k: Option<usize> = None;
    for (out, p) in outputs.iter().enumerate() {
        let list = p
            .as_array()
            .ok_or_else(|| Error::Malformed("a polynomial is an array of [exp, coeff] terms".into()))?;
        for term in list {
            let (exp, c) = match term.as_array().map(Vec::as_slice) {
                Some([e, c]) => (parse_exponent(e)?, int_from_value(c)?),
                _ => return Err(Error::Malformed(format!("bad term {term}"))),
            };
            match k {
                None => k = Some(exp.rank()),
                Some(k) => Error::check_rank("term exponent", k, exp.rank())?,
            }
            terms.push((out, exp, c));
        }
    }
    let k = k.unwrap_or(1);
    let m = outputs.len();
    let n = terms.iter().map(|(_, x, _)| x.cardinality()).max().unwrap_or(0);

    match obj.get("basis").map(|b| b.as_str()) {
        None | Some(Some("monomial")) => Ok(AnyTable::Monomial(build(k, m, n, terms)?)),
        Some(Some("binomial")) => Ok(AnyTable::Binomial(build(k, m, n, terms)?)),
        Some(other) => Err(Error::Malformed(format!("unknown basis {other:?}"))),
    }
}

fn parse_exponent(e: &Value) -> Result<MultiSet> {
    let as_usize = |v: &Value| {
        v.as_u64()
            .map(|u| u as usize)
            .ok_or_else(|| Error::Malformed(format!("exponent must be a non-negative integer, found {v}")))
    };
    match e {
        Value::Array(es) => Ok(MultiSet::new(es.iter().map(as_usize).collect::<Result<_>>()?)),
        other => Ok(MultiSet::new(vec![as_usize(other)?])),
    }
}

fn build<B: super::Basis>(
    k: usize,
    m: usize,
    n: usize,
    terms: Vec<(usize, MultiSet, Int)>,
) -> Result<Table<B>> {
    let mut t = Table::new(k, m, n);
    for (out, x, c) in terms {
        let mut v = vec![Int::from(0); m];
        v[out] = c;
        t.accumulate(x, &v)?;
    }
    Ok(t)
}

/// The oracle a spec denotes.
pub fn spec_oracle(spec: &AnyTable) -> Box<dyn MapOracle + Send> {
    match spec {
        AnyTable::Binomial(t) => Box::new(table_as_oracle(t)),
        AnyTable::Monomial(s) => Box::new(strict_as_oracle(s)),
    }
}

impl AnyTable {
    pub fn k(&self) -> usize {
        match self {
            AnyTable::Binomial(t) => t.k(),
            AnyTable::Monomial(s) => s.k(),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            AnyTable::Binomial(t) => t.n(),
            AnyTable::Monomial(s) => s.n(),
        }
    }

    /// The binomial-basis table, converting monomial input exactly.
    pub fn to_numerical(&self) -> super::NumTable {
        match self {
            AnyTable::Binomial(t) => t.clone(),
            AnyTable::Monomial(s) => super::strict_to_numerical(s),
        }
    }
}
