//! JSON encodings for exact integers: either JSON numbers of arbitrary
//! length or decimal strings.

use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{Number, Value};

use crate::linalg::IntMatrix;

pub fn int_number(x: &BigInt) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("decimal integer is a JSON number"))
}

pub fn int_string(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

/// Accepts a JSON number or a decimal string.
pub fn int_from(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string()).ok(),
        Value::String(s) => BigInt::from_str(s).ok(),
        _ => None,
    }
}

fn matrix_with(m: &IntMatrix, f: fn(&BigInt) -> Value) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(f).collect()))
            .collect(),
    )
}

pub fn int_matrix_numbers(m: &IntMatrix) -> Value {
    matrix_with(m, int_number)
}

pub fn int_matrix_strings(m: &IntMatrix) -> Value {
    matrix_with(m, int_string)
}

pub fn int_matrix_from(v: &Value) -> Option<IntMatrix> {
    let rows = v.as_array()?;
    let cols = rows.first().map_or(Some(0), |r| r.as_array().map(Vec::len))?;
    let mut data = Vec::with_capacity(rows.len() * cols);
    for r in rows {
        let r = r.as_array()?;
        if r.len() != cols {
            return None;
        }
        for x in r {
            data.push(int_from(x)?);
        }
    }
    Some(IntMatrix::from_vec(rows.len(), cols, data))
}
