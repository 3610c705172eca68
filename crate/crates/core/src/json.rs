//! Decimal-string encoding of exact scalars.
//!
//! Every integer and rational crosses the JSON boundary as a decimal string so
//! that no parser truncates it to 64 bits.

use std::fmt::Display;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::ring::Int;

pub fn parse_scalar<C: FromStr>(s: &str) -> Result<C> {
    s.trim()
        .parse()
        .map_err(|_| Error::Malformed(format!("not an exact decimal scalar: {s:?}")))
}

pub fn scalars_to_strings<C: Display>(v: &[C]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

pub fn strings_to_scalars<C: FromStr>(v: &[String]) -> Result<Vec<C>> {
    v.iter().map(|s| parse_scalar(s)).collect()
}

/// Accepts either a decimal string or a JSON integer literal.
pub fn int_from_value(v: &Value) -> Result<Int> {
    match v {
        Value::String(s) => parse_scalar(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_scalar(&n.to_string()),
        other => Err(Error::Malformed(format!("expected an integer, found {other}"))),
    }
}

pub fn int_vec_from_value(v: &Value) -> Result<Vec<Int>> {
    v.as_array()
        .ok_or_else(|| Error::Malformed(format!("expected an array of integers, found {v}")))?
        .iter()
        .map(int_from_value)
        .collect()
}

pub fn int_vec_to_value(v: &[Int]) -> Value {
    Value::Array(v.iter().map(|c| Value::String(c.to_string())).collect())
}

/// `#[serde(with = "dec")]` for a single [`Int`].
pub mod dec {
    use super::*;

    pub fn serialize<S: Serializer>(value: &Int, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
        let raw = String::deserialize(d)?;
        parse_scalar(&raw).map_err(D::Error::custom)
    }
}

/// `#[serde(with = "dec_vec")]` for a `Vec<Int>`.
pub mod dec_vec {
    use super::*;

    pub fn serialize<S: Serializer>(value: &[Int], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(value.iter().map(ToString::to_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Int>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        strings_to_scalars(&raw).map_err(D::Error::custom)
    }
}
