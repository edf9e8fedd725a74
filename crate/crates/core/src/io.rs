//! JSON encoding of scalars, braided spaces, lifted brackets and tensors.
//!
//! Scalars are JSON integers or strings `"p/q"`; over GF(p) integers must lie
//! in [0, p). Matrices are arrays of rows. Tensors are lists of
//! `{"word": [1, 2], "coeff": "3"}` with 1-based letters. Decoding errors carry
//! the JSON pointer of the offending value.

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::braided::BraidedSpace;
use crate::linalg::{Mat, Subspace};
use crate::qlie::LiftedQLie;
use crate::scalar::{Field, Scalar};
use crate::tensor::{TensorElem, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{pointer}: {message}")]
pub struct IoError {
    /// JSON pointer, e.g. `/c/2/1`.
    pub pointer: String,
    pub message: String,
}

fn err(pointer: &str, message: impl Into<String>) -> IoError {
    IoError { pointer: if pointer.is_empty() { "/".into() } else { pointer.into() }, message: message.into() }
}

pub fn scalar_to_json(s: &Scalar) -> Value {
    Value::String(s.to_string())
}

pub fn scalar_from_json(field: Field, v: &Value, ptr: &str) -> Result<Scalar, IoError> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        _ => return Err(err(ptr, "expected an integer or a \"p/q\" string")),
    };
    if field.is_finite() && text.contains('/') {
        return Err(err(ptr, format!("{field} entries must be integers in [0, {})", field.characteristic())));
    }
    field.parse(&text).map_err(|e| err(ptr, e.to_string()))
}

pub fn mat_to_json(m: &Mat) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(scalar_to_json).collect())).collect())
}

pub fn mat_from_json(field: Field, v: &Value, rows: usize, cols: usize, ptr: &str) -> Result<Mat, IoError> {
    let arr = v.as_array().ok_or_else(|| err(ptr, "expected an array of rows"))?;
    if arr.len() != rows {
        return Err(err(ptr, format!("expected {rows} rows, found {}", arr.len())));
    }
    let mut out = Vec::with_capacity(rows);
    for (i, r) in arr.iter().enumerate() {
        let rp = format!("{ptr}/{i}");
        let ra = r.as_array().ok_or_else(|| err(&rp, "expected a row array"))?;
        if ra.len() != cols {
            return Err(err(&rp, format!("expected {cols} entries, found {}", ra.len())));
        }
        out.push(ra.iter().enumerate().map(|(j, x)| scalar_from_json(field, x, &format!("{rp}/{j}"))).collect::<Result<Vec<_>, _>>()?);
    }
    Ok(Mat::from_rows(field, out).expect("shape checked"))
}

fn obj<'a>(v: &'a Value, ptr: &str) -> Result<&'a Map<String, Value>, IoError> {
    v.as_object().ok_or_else(|| err(ptr, "expected an object"))
}

fn field_of(o: &Map<String, Value>, ptr: &str) -> Result<Field, IoError> {
    let p = format!("{ptr}/field");
    match o.get("field") {
        None => Ok(Field::Rationals),
        Some(Value::String(s)) => s.parse().map_err(|e: crate::scalar::ScalarError| err(&p, e.to_string())),
        Some(_) => Err(err(&p, "expected a field name such as \"Q\" or \"GF5\"")),
    }
}

fn dim_of(o: &Map<String, Value>, ptr: &str) -> Result<usize, IoError> {
    let p = format!("{ptr}/dim");
    let d = o.get("dim").ok_or_else(|| err(ptr, "missing key \"dim\""))?;
    match d.as_u64() {
        Some(n) if (1..=6).contains(&n) => Ok(n as usize),
        _ => Err(err(&p, "dim must be an integer in 1..=6")),
    }
}

pub fn space_to_json(b: &BraidedSpace) -> Value {
    json!({ "field": b.field().to_string(), "dim": b.dim(), "c": mat_to_json(b.c()) })
}

/// `{"field", "dim", "c"}`; the Yang–Baxter equation is checked.
pub fn space_from_json(v: &Value) -> Result<BraidedSpace, IoError> {
    let o = obj(v, "")?;
    let field = field_of(o, "")?;
    let n = dim_of(o, "")?;
    let c = mat_from_json(field, o.get("c").ok_or_else(|| err("", "missing key \"c\""))?, n * n, n * n, "/c")?;
    BraidedSpace::new(n, c).map_err(|e| err("/c", e.to_string()))
}

pub fn qlie_to_json(q: &LiftedQLie) -> Value {
    let mut v = space_to_json(&q.space);
    v["beta"] = mat_to_json(&q.beta);
    v
}

/// `{"field", "dim", "c", "beta"}`.
pub fn qlie_from_json(v: &Value) -> Result<LiftedQLie, IoError> {
    let space = space_from_json(v)?;
    let o = obj(v, "")?;
    let n = space.dim();
    let beta = mat_from_json(space.field(), o.get("beta").ok_or_else(|| err("", "missing key \"beta\""))?, n, n * n, "/beta")?;
    LiftedQLie::new(space, beta).map_err(|e| err("/beta", e.to_string()))
}

pub fn tensor_to_json(t: &TensorElem) -> Value {
    let mut terms: Vec<(&Word, &Scalar)> = t.terms().iter().collect();
    terms.sort_by(|a, b| a.0.cmp(b.0));
    Value::Array(terms.into_iter().map(|(w, c)| json!({ "word": w.letters_one_based(), "coeff": scalar_to_json(c) })).collect())
}

pub fn tensor_from_json(field: Field, dim: usize, v: &Value, ptr: &str) -> Result<TensorElem, IoError> {
    let arr = v.as_array().ok_or_else(|| err(ptr, "expected a list of terms"))?;
    let mut t = TensorElem::zero(field, dim);
    for (i, term) in arr.iter().enumerate() {
        let tp = format!("{ptr}/{i}");
        let o = obj(term, &tp)?;
        let wp = format!("{tp}/word");
        let letters = o.get("word").and_then(Value::as_array).ok_or_else(|| err(&wp, "expected an array of letters"))?;
        let mut w = Vec::with_capacity(letters.len());
        for (j, l) in letters.iter().enumerate() {
            match l.as_u64() {
                Some(x) if x >= 1 && (x as usize) <= dim => w.push((x - 1) as u8),
                _ => return Err(err(&format!("{wp}/{j}"), format!("letter must be in 1..={dim}"))),
            }
        }
        let c = scalar_from_json(field, o.get("coeff").ok_or_else(|| err(&tp, "missing key \"coeff\""))?, &format!("{tp}/coeff"))?;
        t.add_term(Word(w), c);
    }
    Ok(t)
}

pub fn subspace_to_json(s: &Subspace) -> Value {
    Value::Array(s.basis().iter().map(|v| Value::Array(v.iter().map(scalar_to_json).collect())).collect())
}
