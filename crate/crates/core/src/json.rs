//! JSON file formats for matrices, alternating matrices and polynomials.
//!
//! Scalars are strings, `"p/q"` or integers; bare JSON integers are
//! accepted on input. A top-level `"p"` selects `F_p`, otherwise `Q`.
//!
//! ```json
//! {"p": 5, "entries": [["1", "2"], ["3", "4"]]}
//! {"n": 4, "entries": [{"i": 1, "j": 2, "value": "1"}]}
//! [{"monomial": {"x(1,1)": 1, "x(2,2)": 1}, "coeff": "-1"}]
//! ```
//!
//! Alternating matrices list the strict upper triangle with 1-based
//! indices; a full square grid is also accepted and must be alternating.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::poly::{Monomial, MultiPoly, PolyRing};
use crate::scalar::{Field, Scalar};
use crate::skew::SkewMatrix;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// The field named by an optional top-level `"p"`.
pub fn field_of(v: &Value) -> Result<Field> {
    match v.get("p") {
        None | Some(Value::Null) => Ok(Field::Rationals),
        Some(p) => {
            let p = p
                .as_u64()
                .ok_or_else(|| parse_err("\"p\" must be a positive integer"))?;
            Field::prime(p)
        }
    }
}

pub fn scalar_from_json(field: Field, v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => field.parse(s),
        Value::Number(n) => {
            let i = n
                .as_i64()
                .ok_or_else(|| parse_err(format!("{n} is not an integer; write fractions as strings")))?;
            Ok(field.from_i64(i))
        }
        other => Err(parse_err(format!("expected a scalar, got {other}"))),
    }
}

fn with_field(field: Field, mut body: Map<String, Value>) -> Value {
    if let Field::Prime(p) = field {
        body.insert("p".into(), json!(p));
    }
    Value::Object(body)
}

pub fn matrix_to_json(a: &ExactMatrix) -> Value {
    let rows: Vec<Value> = (0..a.rows())
        .map(|i| Value::Array(a.row(i).iter().map(|x| json!(x.to_string())).collect()))
        .collect();
    let mut body = Map::new();
    body.insert("rows".into(), json!(a.rows()));
    body.insert("cols".into(), json!(a.cols()));
    body.insert("entries".into(), Value::Array(rows));
    with_field(a.field(), body)
}

fn grid(field: Field, v: &Value) -> Result<Vec<Vec<Scalar>>> {
    let rows = v
        .as_array()
        .ok_or_else(|| parse_err("entries must be a list of rows"))?;
    rows.iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| parse_err("each row must be a list"))?
                .iter()
                .map(|x| scalar_from_json(field, x))
                .collect()
        })
        .collect()
}

/// Reads `{"p"?, "entries": [[..]]}` or a bare grid (over `Q`).
pub fn matrix_from_json(v: &Value) -> Result<ExactMatrix> {
    if v.is_array() {
        return ExactMatrix::from_rows(Field::Rationals, grid(Field::Rationals, v)?);
    }
    let field = field_of(v)?;
    let entries = v.get("entries").ok_or_else(|| parse_err("missing \"entries\""))?;
    let rows = grid(field, entries)?;
    let a = if rows.is_empty() {
        let cols = v.get("cols").and_then(Value::as_u64).unwrap_or(0) as usize;
        ExactMatrix::zeros(field, 0, cols)
    } else {
        ExactMatrix::from_rows(field, rows)?
    };
    for (key, want) in [("rows", a.rows()), ("cols", a.cols())] {
        if let Some(n) = v.get(key) {
            if n.as_u64() != Some(want as u64) {
                return Err(parse_err(format!("\"{key}\" is {n} but the grid has {want}")));
            }
        }
    }
    Ok(a)
}

pub fn skew_to_json(field: Field, a: &SkewMatrix<Scalar>) -> Value {
    let entries: Vec<Value> = a
        .upper_entries()
        .filter(|(_, _, x)| !x.is_zero())
        .map(|(i, j, x)| json!({"i": i + 1, "j": j + 1, "value": x.to_string()}))
        .collect();
    let mut body = Map::new();
    body.insert("n".into(), json!(a.size()));
    body.insert("entries".into(), Value::Array(entries));
    with_field(field, body)
}

/// Reads the upper-triangle list format, or a full alternating grid.
pub fn skew_from_json(v: &Value) -> Result<(Field, SkewMatrix<Scalar>)> {
    let grid_form = v.is_array()
        || v.get("entries")
            .and_then(Value::as_array)
            .is_some_and(|e| e.first().is_some_and(Value::is_array));
    if grid_form {
        let a = matrix_from_json(v)?;
        return Ok((a.field(), SkewMatrix::from_exact(&a)?));
    }
    let field = field_of(v)?;
    let n = v
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| parse_err("missing size \"n\""))? as usize;
    let mut a = SkewMatrix::zero(field, n);
    let entries = v
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("missing \"entries\""))?;
    for e in entries {
        let idx = |key: &str| {
            e.get(key)
                .and_then(Value::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| parse_err(format!("entry needs integer \"{key}\"")))
        };
        let (i, j) = (idx("i")?, idx("j")?);
        if i == 0 || j == 0 || i > n || j > n {
            return Err(parse_err(format!("entry ({i},{j}) outside 1..={n}")));
        }
        if i >= j {
            return Err(parse_err(format!(
                "entry ({i},{j}) is on or below the diagonal; list only i < j"
            )));
        }
        let value = e.get("value").ok_or_else(|| parse_err("entry needs \"value\""))?;
        a.set_upper(i - 1, j - 1, scalar_from_json(field, value)?);
    }
    Ok((field, a))
}

/// Terms in descending monomial order.
pub fn poly_to_json(f: &MultiPoly) -> Value {
    let vars = f.ring().vars();
    Value::Array(
        f.terms()
            .map(|(m, c)| {
                let exps: Map<String, Value> = m
                    .exponents()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| (vars.name(i).to_string(), json!(e)))
                    .collect();
                json!({"monomial": exps, "coeff": c.to_string()})
            })
            .collect(),
    )
}

pub fn poly_from_json(ring: &PolyRing, v: &Value) -> Result<MultiPoly> {
    let terms = v
        .as_array()
        .ok_or_else(|| parse_err("a polynomial is a list of terms"))?;
    let mut out = ring.zero_poly();
    for t in terms {
        let mono = t
            .get("monomial")
            .and_then(Value::as_object)
            .ok_or_else(|| parse_err("term needs a \"monomial\" object"))?;
        let mut exps = vec![0u16; ring.nvars()];
        for (name, e) in mono {
            let i = ring
                .vars()
                .index_of(name)
                .ok_or_else(|| parse_err(format!("unknown variable {name}")))?;
            exps[i] = e
                .as_u64()
                .and_then(|e| u16::try_from(e).ok())
                .ok_or_else(|| parse_err(format!("bad exponent for {name}")))?;
        }
        let c = scalar_from_json(
            ring.field(),
            t.get("coeff").ok_or_else(|| parse_err("term needs \"coeff\""))?,
        )?;
        out = out.add(&MultiPoly::monomial(ring, Monomial::new(exps), c));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarSet;

    #[test]
    fn matrix_round_trip() {
        let a = ExactMatrix::from_i64(Field::Prime(5), &[vec![1, 2], vec![3, 4]]);
        let v = matrix_to_json(&a);
        assert_eq!(v["p"], json!(5));
        assert_eq!(matrix_from_json(&v).unwrap(), a);
        let q = matrix_from_json(&json!([["1/2", 0], ["-3", "4/6"]])).unwrap();
        assert_eq!(q.get(1, 1).to_string(), "2/3");
        assert_eq!(matrix_from_json(&matrix_to_json(&q)).unwrap(), q);
        assert!(matrix_from_json(&json!([[1, 2], [3]])).is_err());
        assert!(matrix_from_json(&json!({"p": 4, "entries": [[1]]})).is_err());
        assert!(matrix_from_json(&json!({"entries": [[1.5]]})).is_err());
    }

    #[test]
    fn skew_formats() {
        let (f, a) = skew_from_json(&json!([[0, 5], [-5, 0]])).unwrap();
        assert_eq!(f, Field::Rationals);
        assert_eq!(a.upper(0, 1).to_string(), "5");
        let v = json!({"n": 3, "p": 3, "entries": [{"i": 1, "j": 3, "value": "2"}]});
        let (f, a) = skew_from_json(&v).unwrap();
        assert_eq!(f, Field::Prime(3));
        assert_eq!(skew_to_json(f, &a), v);
        let diag = json!({"n": 2, "entries": [{"i": 1, "j": 1, "value": "1"}]});
        assert!(skew_from_json(&diag).is_err());
        let lower = json!({"n": 2, "entries": [{"i": 2, "j": 1, "value": "1"}]});
        assert!(skew_from_json(&lower).is_err());
        assert!(skew_from_json(&json!([[1, 5], [-5, 0]])).is_err());
        assert!(skew_from_json(&json!([[0, 5], [5, 0]])).is_err());
    }

    #[test]
    fn poly_round_trip() {
        let ring = PolyRing::new(VarSet::new(["x(1,1)", "x(1,2)"]).unwrap(), Field::Rationals);
        let f = ring
            .var(0)
            .pow(2)
            .sub(&ring.var(1).scale(&Field::Rationals.parse("1/3").unwrap()));
        let v = poly_to_json(&f);
        assert_eq!(
            v,
            json!([{"monomial": {"x(1,1)": 2}, "coeff": "1"}, {"monomial": {"x(1,2)": 1}, "coeff": "-1/3"}])
        );
        assert_eq!(poly_from_json(&ring, &v).unwrap(), f);
        assert!(poly_from_json(&ring, &json!([{"monomial": {"z": 1}, "coeff": "1"}])).is_err());
    }
}
