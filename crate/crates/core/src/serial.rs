//! Machine-readable forms: scalars as integer 4-tuples, elements as lists of
//! term records.
//!
//! Integers serialise as JSON numbers when they fit in an `i64` and as decimal
//! strings otherwise, so nothing is lost on either side.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Scalar, ScalarError, WeylElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(n) => s.serialize_i64(n),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

struct IntVisitor;

impl Visitor<'_> for IntVisitor {
    type Value = Int;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Int, E> {
        Ok(Int(v.into()))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Int, E> {
        Ok(Int(v.into()))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
        BigInt::from_str(v).map(Int).map_err(E::custom)
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
        d.deserialize_any(IntVisitor)
    }
}

/// `(re_num, re_den, im_num, im_den)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarTuple(pub Int, pub Int, pub Int, pub Int);

impl From<&Scalar> for ScalarTuple {
    fn from(s: &Scalar) -> Self {
        let (a, b, c, d) = s.to_tuple();
        ScalarTuple(Int(a), Int(b), Int(c), Int(d))
    }
}

impl TryFrom<ScalarTuple> for Scalar {
    type Error = ScalarError;
    fn try_from(t: ScalarTuple) -> Result<Self, ScalarError> {
        Scalar::from_tuple(t.0 .0, t.1 .0, t.2 .0, t.3 .0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub i: u32,
    pub j: u32,
    pub re_num: Int,
    pub re_den: Int,
    pub im_num: Int,
    pub im_den: Int,
}

/// Terms in printing order.
pub fn element_records(x: &WeylElement) -> Vec<TermRecord> {
    x.terms()
        .iter()
        .map(|(m, c)| {
            let (a, b, cc, d) = c.to_tuple();
            TermRecord {
                i: m.i,
                j: m.j,
                re_num: Int(a),
                re_den: Int(b),
                im_num: Int(cc),
                im_den: Int(d),
            }
        })
        .collect()
}

pub fn element_from_records(records: &[TermRecord]) -> Result<WeylElement, ScalarError> {
    let mut terms = Vec::with_capacity(records.len());
    for r in records {
        let c = Scalar::from_tuple(
            r.re_num.0.clone(),
            r.re_den.0.clone(),
            r.im_num.0.clone(),
            r.im_den.0.clone(),
        )?;
        terms.push((r.i, r.j, c));
    }
    Ok(WeylElement::from_terms(terms))
}
