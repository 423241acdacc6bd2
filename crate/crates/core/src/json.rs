//! JSON encodings for linear combinations, polynomials and packed words.
//!
//! Coefficients are exact fraction strings; quasi-posets use their text
//! form, packed words are integer arrays and tensors are arrays of factors.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::{CanonicalKey, LinComb, PackedWord, Polynomial, QuasiPoset, Rational};

fn invalid(what: &str, v: &Value) -> Error {
    Error::Invalid(format!("expected {what}, got {v}"))
}

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    let s = v.as_str().ok_or_else(|| invalid("fraction string", v))?;
    parse_rational(s)
}

/// Parses `a` or `a/b`, rejecting a zero denominator.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.split('/').nth(1).is_some_and(|d| d.trim().trim_start_matches(['+', '-']).chars().all(|c| c == '0')) {
        return Err(Error::Invalid(format!("zero denominator in {s:?}")));
    }
    t.parse()
        .map_err(|_| Error::Invalid(format!("bad fraction {s:?}")))
}

/// Basis types with a JSON form.
pub trait JsonBasis: Sized {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

impl JsonBasis for QuasiPoset {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
    fn from_json(v: &Value) -> Result<Self> {
        v.as_str().ok_or_else(|| invalid("quasi-poset text", v))?.parse()
    }
}

impl JsonBasis for CanonicalKey {
    fn to_json(&self) -> Value {
        self.representative().to_json()
    }
    fn from_json(v: &Value) -> Result<Self> {
        Ok(QuasiPoset::from_json(v)?.canonical_key())
    }
}

impl JsonBasis for PackedWord {
    fn to_json(&self) -> Value {
        json!(self.letters())
    }
    fn from_json(v: &Value) -> Result<Self> {
        let arr = v.as_array().ok_or_else(|| invalid("integer array", v))?;
        let letters = arr
            .iter()
            .map(|x| {
                x.as_u64()
                    .map(|l| l as usize)
                    .ok_or_else(|| invalid("positive integer", x))
            })
            .collect::<Result<Vec<_>>>()?;
        PackedWord::new(letters)
    }
}

impl<A: JsonBasis, B: JsonBasis> JsonBasis for (A, B) {
    fn to_json(&self) -> Value {
        json!([self.0.to_json(), self.1.to_json()])
    }
    fn from_json(v: &Value) -> Result<Self> {
        match v.as_array().map(Vec::as_slice) {
            Some([a, b]) => Ok((A::from_json(a)?, B::from_json(b)?)),
            _ => Err(invalid("pair", v)),
        }
    }
}

impl<A: JsonBasis, B: JsonBasis, C: JsonBasis> JsonBasis for (A, B, C) {
    fn to_json(&self) -> Value {
        json!([self.0.to_json(), self.1.to_json(), self.2.to_json()])
    }
    fn from_json(v: &Value) -> Result<Self> {
        match v.as_array().map(Vec::as_slice) {
            Some([a, b, c]) => Ok((A::from_json(a)?, B::from_json(b)?, C::from_json(c)?)),
            _ => Err(invalid("triple", v)),
        }
    }
}

/// `[{"c": "-1/2", "b": ...}, ...]` in basis order.
pub fn lincomb_to_json<B: Ord + Clone + JsonBasis>(x: &LinComb<B>) -> Value {
    Value::Array(
        x.iter()
            .map(|(b, c)| json!({"c": rational_to_json(c), "b": b.to_json()}))
            .collect(),
    )
}

pub fn lincomb_from_json<B: Ord + Clone + JsonBasis>(v: &Value) -> Result<LinComb<B>> {
    let arr = v.as_array().ok_or_else(|| invalid("array of terms", v))?;
    arr.iter()
        .map(|t| {
            let c = t.get("c").ok_or_else(|| invalid("term with \"c\"", t))?;
            let b = t.get("b").ok_or_else(|| invalid("term with \"b\"", t))?;
            Ok((B::from_json(b)?, rational_from_json(c)?))
        })
        .collect()
}

/// `{"coeffs": ["0", "1/2", "1/2"]}`, constant term first.
pub fn polynomial_to_json(p: &Polynomial) -> Value {
    json!({"coeffs": p.coeffs().iter().map(rational_to_json).collect::<Vec<_>>()})
}

pub fn polynomial_from_json(v: &Value) -> Result<Polynomial> {
    let arr = v
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| invalid("{\"coeffs\": [...]}", v))?;
    Ok(Polynomial::from_coeffs(
        arr.iter().map(rational_from_json).collect::<Result<_>>()?,
    ))
}
