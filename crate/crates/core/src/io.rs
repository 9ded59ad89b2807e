//! JSON documents.
//!
//! * scalar: `{"num": [[e, "c"], …], "den": [[e, "c"], …]}` for
//!   `Σ c t^e / Σ c t^e`; `den` may be omitted, and a bare integer is a
//!   constant.
//! * lattice: `{"n": n, "columns": [[scalar, …], …]}`, columns generating it.
//! * instance: `{"n": n, "field": "rational" | "prime:p", "lattices": […],
//!   "indices": […]}`.
//! * report: `{"lhs", "status", "witness", "candidates", "strategy", "seed"}`.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::harness::ConjectureReport;
use crate::lattice::Lattice;
use crate::laurent::LaurentPoly;
use crate::linalg::Columns;
use crate::scalar::ValuedScalar;
use crate::subspace::Subspace;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| parse_err(format!("missing field {key:?}")))
}

fn as_i64(v: &Value) -> Result<i64> {
    v.as_i64().ok_or_else(|| parse_err(format!("expected an integer, found {v}")))
}

fn as_usize(v: &Value) -> Result<usize> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| parse_err(format!("expected a nonnegative integer, found {v}")))
}

fn as_array(v: &Value) -> Result<&Vec<Value>> {
    v.as_array().ok_or_else(|| parse_err(format!("expected an array, found {v}")))
}

pub fn field_to_json<F: Field>(c: &F) -> Value {
    Value::String(c.encode())
}

pub fn field_from_json<F: Field>(v: &Value) -> Result<F> {
    match v {
        Value::String(s) => F::decode(s),
        Value::Number(_) => Ok(F::from_i64(as_i64(v)?)),
        _ => Err(parse_err(format!("expected a field element, found {v}"))),
    }
}

pub fn laurent_to_json<F: Field>(p: &LaurentPoly<F>) -> Value {
    Value::Array(p.terms().map(|(e, c)| json!([e, c.encode()])).collect())
}

pub fn laurent_from_json<F: Field>(v: &Value) -> Result<LaurentPoly<F>> {
    let terms = as_array(v)?
        .iter()
        .map(|t| {
            let pair = as_array(t)?;
            if pair.len() != 2 {
                return Err(parse_err(format!("expected [exponent, coefficient], found {t}")));
            }
            Ok((as_i64(&pair[0])?, field_from_json::<F>(&pair[1])?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LaurentPoly::from_terms(terms))
}

pub fn scalar_to_json<F: Field>(x: &ValuedScalar<F>) -> Value {
    let mut m = Map::new();
    m.insert("num".into(), laurent_to_json(&x.numerator()));
    if !x.is_laurent_poly() {
        m.insert("den".into(), laurent_to_json(&x.denominator()));
    }
    Value::Object(m)
}

pub fn scalar_from_json<F: Field>(v: &Value) -> Result<ValuedScalar<F>> {
    if v.is_number() {
        return Ok(ValuedScalar::from_i64(as_i64(v)?));
    }
    let num = laurent_from_json::<F>(get(v, "num")?)?;
    match v.get("den") {
        None => Ok(ValuedScalar::from_laurent(&num)),
        Some(d) => ValuedScalar::from_fraction(&num, &laurent_from_json(d)?),
    }
}

pub fn columns_to_json<F: Field>(cols: &Columns<F>) -> Value {
    Value::Array(cols.iter().map(|c| Value::Array(c.iter().map(scalar_to_json).collect())).collect())
}

pub fn columns_from_json<F: Field>(v: &Value) -> Result<Columns<F>> {
    as_array(v)?
        .iter()
        .map(|c| as_array(c)?.iter().map(scalar_from_json).collect())
        .collect()
}

/// Writes the echelon basis.
pub fn lattice_to_json<F: Field>(l: &Lattice<F>) -> Value {
    json!({ "n": l.rank(), "columns": columns_to_json(&l.basis()) })
}

pub fn lattice_from_json<F: Field>(v: &Value) -> Result<Lattice<F>> {
    let n = as_usize(get(v, "n")?)?;
    Lattice::from_generators(n, columns_from_json(get(v, "columns")?)?)
}

/// The `"field"` entry of a document, defaulting to `"rational"`.
pub fn field_label(v: &Value) -> Result<String> {
    match v.get("field") {
        None => Ok("rational".into()),
        Some(Value::String(s)) => Ok(s.clone()),
        Some(other) => Err(parse_err(format!("field must be a string, found {other}"))),
    }
}

fn check_field<F: Field>(v: &Value) -> Result<()> {
    let label = field_label(v)?;
    if label != F::label() {
        return Err(parse_err(format!("document is over {label}, expected {}", F::label())));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance<F: Field> {
    pub n: usize,
    pub lattices: Vec<Lattice<F>>,
    pub indices: Option<Vec<usize>>,
}

pub fn instance_to_json<F: Field>(inst: &Instance<F>) -> Value {
    let mut m = Map::new();
    m.insert("n".into(), json!(inst.n));
    m.insert("field".into(), json!(F::label()));
    m.insert("lattices".into(), Value::Array(inst.lattices.iter().map(lattice_to_json).collect()));
    if let Some(idx) = &inst.indices {
        m.insert("indices".into(), json!(idx));
    }
    Value::Object(m)
}

pub fn instance_from_json<F: Field>(v: &Value) -> Result<Instance<F>> {
    check_field::<F>(v)?;
    let n = as_usize(get(v, "n")?)?;
    let lattices: Vec<Lattice<F>> = as_array(get(v, "lattices")?)?.iter().map(lattice_from_json).collect::<Result<_>>()?;
    if lattices.iter().any(|l| l.rank() != n) {
        return Err(parse_err(format!("a lattice does not have rank {n}")));
    }
    let indices = match v.get("indices") {
        None | Some(Value::Null) => None,
        Some(a) => Some(as_array(a)?.iter().map(as_usize).collect::<Result<_>>()?),
    };
    Ok(Instance { n, lattices, indices })
}

pub fn report_to_json<F: Field>(r: &ConjectureReport<F>) -> Value {
    let mut m = Map::new();
    m.insert("lhs".into(), json!(r.lhs));
    m.insert("status".into(), json!(r.status.label()));
    m.insert("witness".into(), r.witness().map_or(Value::Null, lattice_to_json));
    m.insert(
        "candidates".into(),
        Value::Array(
            r.candidates
                .iter()
                .map(|c| json!({ "lattice": lattice_to_json(&c.lattice), "cost": c.cost }))
                .collect(),
        ),
    );
    m.insert("strategy".into(), json!(r.strategy.label()));
    m.insert("seed".into(), json!(r.seed));
    if let Some(note) = &r.note {
        m.insert("note".into(), json!(note));
    }
    Value::Object(m)
}

pub fn vector_to_json<F: Field>(v: &[F]) -> Value {
    Value::Array(v.iter().map(field_to_json).collect())
}

pub fn vector_from_json<F: Field>(v: &Value) -> Result<Vec<F>> {
    as_array(v)?.iter().map(field_from_json).collect()
}

/// A subspace as the list of its RREF basis rows.
pub fn subspace_to_json<F: Field>(s: &Subspace<F>) -> Value {
    Value::Array(s.basis().iter().map(|r| vector_to_json(r)).collect())
}

/// `{"n": n, "field": …, "subspaces": [[vector, …], …]}`.
pub fn subspaces_from_json<F: Field>(v: &Value) -> Result<(usize, Vec<Subspace<F>>)> {
    check_field::<F>(v)?;
    let n = as_usize(get(v, "n")?)?;
    let spaces = as_array(get(v, "subspaces")?)?
        .iter()
        .map(|s| {
            let rows: Vec<Vec<F>> = as_array(s)?.iter().map(vector_from_json).collect::<Result<_>>()?;
            if rows.iter().any(|r| r.len() != n) {
                return Err(parse_err(format!("vector length differs from {n}")));
            }
            Ok(Subspace::span(n, &rows))
        })
        .collect::<Result<_>>()?;
    Ok((n, spaces))
}

pub fn int_matrix_from_json(v: &Value) -> Result<Vec<Vec<i64>>> {
    as_array(v)?.iter().map(|r| as_array(r)?.iter().map(as_i64).collect()).collect()
}

pub fn int_vector_from_json(v: &Value) -> Result<Vec<i64>> {
    as_array(v)?.iter().map(as_i64).collect()
}

pub fn usize_vector_from_json(v: &Value) -> Result<Vec<usize>> {
    as_array(v)?.iter().map(as_usize).collect()
}

/// Looks up a required key.
pub fn field_of<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    get(v, key)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rational};

    type Q = Rational;

    #[test]
    fn scalar_roundtrip() {
        let num = LaurentPoly::from_terms([(-1, Q::from_i64(2)), (3, Q::from_i64(-1))]);
        let den = LaurentPoly::from_terms([(0, Q::from_i64(1)), (1, Q::from_i64(1))]);
        let x = ValuedScalar::from_fraction(&num, &den).unwrap();
        assert_eq!(scalar_from_json::<Q>(&scalar_to_json(&x)).unwrap(), x);
        assert_eq!(scalar_from_json::<Q>(&json!(5)).unwrap(), ValuedScalar::from_i64(5));
        assert!(scalar_from_json::<Q>(&json!({"num": [[0, "1"]], "den": []})).is_err());
    }

    #[test]
    fn instance_roundtrip() {
        let inst = Instance::<Fp<3>> {
            n: 2,
            lattices: vec![Lattice::standard(2), Lattice::diagonal(&[-2, 1])],
            indices: Some(vec![1, 1]),
        };
        let v = instance_to_json(&inst);
        assert_eq!(v["field"], "prime:3");
        assert_eq!(instance_from_json::<Fp<3>>(&v).unwrap(), inst);
        assert!(instance_from_json::<Q>(&v).is_err());
    }

    #[test]
    fn malformed_documents() {
        assert!(lattice_from_json::<Q>(&json!({"n": 2})).is_err());
        assert!(lattice_from_json::<Q>(&json!({"n": 2, "columns": [[1, 0]]})).is_err());
        assert!(scalar_from_json::<Q>(&json!({"num": [[0]]})).is_err());
    }
}
