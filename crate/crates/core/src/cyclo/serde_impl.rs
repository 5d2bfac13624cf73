//! JSON form `{"order": n, "coeffs": [[exponent, numerator, denominator], …]}`.
//!
//! Exponents are strictly increasing canonical basis indices. Integers that do
//! not fit in an `i64` are written as decimal strings.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use super::Cyclotomic;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CyclotomicRepr {
    pub order: u64,
    pub coeffs: Vec<(u64, Value, Value)>,
}

fn int_to_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

fn int_from_json(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

impl From<&Cyclotomic> for CyclotomicRepr {
    fn from(z: &Cyclotomic) -> Self {
        CyclotomicRepr {
            order: z.order(),
            coeffs: z
                .coeffs()
                .into_iter()
                .map(|(e, c)| (e as u64, int_to_json(c.numer()), int_to_json(c.denom())))
                .collect(),
        }
    }
}

impl TryFrom<&CyclotomicRepr> for Cyclotomic {
    type Error = String;

    fn try_from(r: &CyclotomicRepr) -> Result<Self, String> {
        if r.order == 0 {
            return Err("order must be positive".into());
        }
        let phi = super::tables::tables(r.order).phi as u64;
        let mut last: Option<u64> = None;
        let mut terms = Vec::with_capacity(r.coeffs.len());
        for (e, n, d) in &r.coeffs {
            if last.is_some_and(|l| *e <= l) {
                return Err("exponents must be strictly increasing".into());
            }
            if *e >= phi {
                return Err(format!(
                    "exponent {e} outside the canonical basis of size {phi}"
                ));
            }
            last = Some(*e);
            let n = int_from_json(n).ok_or("numerator must be an integer")?;
            let d = int_from_json(d).ok_or("denominator must be an integer")?;
            if d.is_zero() {
                return Err("zero denominator".into());
            }
            terms.push((*e as i64, BigRational::new(n, d)));
        }
        Cyclotomic::from_terms(r.order, terms).map_err(|e| e.to_string())
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CyclotomicRepr::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = CyclotomicRepr::deserialize(deserializer)?;
        Cyclotomic::try_from(&repr).map_err(D::Error::custom)
    }
}
