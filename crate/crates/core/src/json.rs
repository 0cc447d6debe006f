use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{Number, Value};

/// Exact JSON number for an arbitrary-precision integer.
pub fn bigint_value(n: &BigInt) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("decimal integer is a JSON number"))
}
