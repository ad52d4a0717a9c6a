//! JSON encoding conventions shared by every report.
//!
//! Integers below 2^53 are JSON numbers, larger ones decimal strings.
//! Rationals that are not integers are `"p/q"` strings. Objects are emitted
//! with sorted keys so that a parse/serialize round trip is byte-identical.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

const SAFE: i64 = (1 << 53) - 1;

pub fn int(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) if x.abs() <= SAFE => json!(x),
        _ => Value::String(v.to_string()),
    }
}

pub fn uint(v: u64) -> Value {
    int(&BigInt::from(v))
}

pub fn rational(v: &BigRational) -> Value {
    if v.is_integer() {
        int(&v.to_integer())
    } else {
        Value::String(format!("{}/{}", v.numer(), v.denom()))
    }
}

/// Coefficient strings always use the `p/q` or integer literal form.
pub fn coefficient(v: &BigRational) -> Value {
    Value::String(if v.is_integer() {
        v.to_integer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    })
}

/// Parses a JSON integer that may be encoded as a number or a decimal string.
pub fn parse_int(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

/// Canonical serialization: sorted keys, compact, trailing newline omitted.
pub fn to_canonical_string(v: &Value) -> String {
    // serde_json's default map is ordered by key
    serde_json::to_string(v).expect("JSON values always serialize")
}

pub fn to_canonical_pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn large_integers_become_strings() {
        assert_eq!(int(&BigInt::from(12)), json!(12));
        assert_eq!(int(&(BigInt::from(1) << 53)), json!("9007199254740992"));
        assert_eq!(int(&BigInt::from(SAFE)), json!(SAFE));
        assert_eq!(
            parse_int(&json!("9007199254740992")),
            Some(BigInt::from(1) << 53)
        );
    }

    #[test]
    fn rationals() {
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(rational(&half), json!("1/2"));
        assert_eq!(
            coefficient(&BigRational::from_integer((-3).into())),
            json!("-3")
        );
    }
}
