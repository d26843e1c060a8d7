//! Shared helpers for the JSON file formats.

use serde_json::Value;

use crate::error::Error;
use crate::exact::{Poly, PolyMatrix};

/// Parses a key such as `"e,f"` or `"0,2,1"` into basis indices. Names take
/// precedence over numeric indices.
pub fn parse_key(key: &str, names: &[String], arity: Option<usize>) -> Result<Vec<usize>, Error> {
    let parts: Vec<&str> = key.split(',').map(str::trim).collect();
    if let Some(n) = arity {
        if parts.len() != n {
            return Err(Error::Parse(format!("key `{key}` should have {n} components")));
        }
    }
    parts
        .iter()
        .map(|p| {
            if let Some(i) = names.iter().position(|n| n == p) {
                Ok(i)
            } else if let Ok(i) = p.parse::<usize>() {
                if i < names.len() {
                    Ok(i)
                } else {
                    Err(Error::Parse(format!("index {i} out of range in key `{key}`")))
                }
            } else {
                Err(Error::Parse(format!("unknown basis element `{p}` in key `{key}`")))
            }
        })
        .collect()
}

pub fn format_key(idx: &[usize], names: &[String]) -> String {
    idx.iter()
        .map(|&i| names[i].as_str())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn poly_vector(v: &Value, len: usize, what: &str) -> Result<Vec<Poly>, Error> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("{what}: expected an array")))?;
    if arr.len() != len {
        return Err(Error::Size(format!("{what}: expected {len} entries, got {}", arr.len())));
    }
    arr.iter().map(Poly::from_json).collect()
}

pub fn names(v: &Value, field: &str) -> Result<Vec<String>, Error> {
    let arr = v
        .get(field)
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse(format!("missing `{field}` array")))?;
    let out: Vec<String> = arr
        .iter()
        .map(|x| {
            x.as_str()
                .map(str::to_owned)
                .ok_or_else(|| Error::Parse(format!("`{field}` entries must be strings")))
        })
        .collect::<Result<_, _>>()?;
    let mut sorted = out.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != out.len() || out.is_empty() {
        return Err(Error::Parse(format!("`{field}` must be a nonempty list of unique names")));
    }
    Ok(out)
}

/// Row-major nested arrays of polynomials.
pub fn matrix_to_json(m: &PolyMatrix) -> Value {
    Value::Array(
        m.rows()
            .iter()
            .map(|row| Value::Array(row.iter().map(Poly::to_json).collect()))
            .collect(),
    )
}

pub fn matrix_from_json(v: &Value) -> Result<PolyMatrix, Error> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Parse("matrix: expected an array of rows".into()))?;
    let n = rows.len();
    let rows = rows
        .iter()
        .enumerate()
        .map(|(i, r)| poly_vector(r, n, &format!("matrix row {i}")))
        .collect::<Result<Vec<_>, _>>()?;
    PolyMatrix::from_rows(rows)
}
