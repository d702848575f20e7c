//! JSON encoding shared by the CLI and fixtures.
//!
//! Rationals are strings `"a/b"`, `∞` is `"inf"`, polynomials are
//! coefficient arrays from the constant term up and rational functions are
//! `{"num": […], "den": […]}`. Matrices are arrays of columns. Valuated
//! matroids use `n` and `r` for a ground set `{0..n}` of rank `r+1`.

use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::building::{DiagSeminorm, Flag};
use crate::error::{Error, Result};
use crate::field::{Elem, FieldKind, FieldSpec, Mat, Poly, RatFunc};
use crate::lattice::LatticeClass;
use crate::matroid::{BasisTable, Matroid, Subset};
use crate::trop::{format_rational, parse_rational, TropPoint, TropVal};

pub const SCHEMA: &str = "tropbuild/1";

fn bad(what: &str, v: &Value) -> Error {
    Error::Parse(format!("expected {what}, found {v}"))
}

/// Field `key` of an object.
pub fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse(format!("missing field {key:?}")))
}

pub fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(what, v))
}

pub fn usize_from_json(v: &Value) -> Result<usize> {
    v.as_u64().and_then(|x| usize::try_from(x).ok()).ok_or_else(|| bad("a nonnegative integer", v))
}

pub fn field_to_json(spec: FieldSpec) -> Value {
    match spec.kind() {
        FieldKind::PAdic(p) => json!({"kind": spec.kind_name(), "p": p}),
        _ => json!({"kind": spec.kind_name()}),
    }
}

pub fn field_from_json(v: &Value) -> Result<FieldSpec> {
    let kind = get(v, "kind")?.as_str().ok_or_else(|| bad("a field kind", v))?;
    match kind {
        "rationals-p-adic" => {
            let p = get(v, "p")?.as_u64().ok_or_else(|| bad("a prime p", v))?;
            FieldSpec::p_adic(p)
        }
        "rational-functions-t-adic" => Ok(FieldSpec::t_adic()),
        "rationals-trivial" => Ok(FieldSpec::trivial()),
        _ => Err(Error::Parse(format!("unknown field kind {kind:?}"))),
    }
}

pub fn rational_to_json(q: &BigRational) -> Value {
    Value::String(format_rational(q))
}

pub fn rational_from_json(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()),
        _ => Err(bad("a rational \"a/b\"", v)),
    }
}

fn poly_to_json(p: &Poly) -> Value {
    Value::Array(p.coeffs().iter().map(rational_to_json).collect())
}

fn poly_from_json(v: &Value) -> Result<Poly> {
    Ok(Poly::new(array(v, "a coefficient array")?.iter().map(rational_from_json).collect::<Result<_>>()?))
}

pub fn elem_to_json(x: &Elem) -> Value {
    match x {
        Elem::Rat(q) => rational_to_json(q),
        Elem::Func(f) if f.den().is_one() => poly_to_json(f.num()),
        Elem::Func(f) => json!({"num": poly_to_json(f.num()), "den": poly_to_json(f.den())}),
    }
}

pub fn elem_from_json(spec: FieldSpec, v: &Value) -> Result<Elem> {
    let func = |f: RatFunc| {
        if spec.kind() == FieldKind::TAdic {
            Ok(Elem::from_func(f))
        } else {
            Err(Error::Parse(format!("polynomial entry {v} outside the rational-function field")))
        }
    };
    match v {
        Value::Array(_) => func(RatFunc::poly(poly_from_json(v)?)),
        Value::Object(_) => {
            let den = poly_from_json(get(v, "den")?)?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator polynomial".into()));
            }
            func(RatFunc::new(poly_from_json(get(v, "num")?)?, den))
        }
        _ => Ok(Elem::Rat(rational_from_json(v)?)),
    }
}

pub fn covector_to_json(f: &[Elem]) -> Value {
    Value::Array(f.iter().map(elem_to_json).collect())
}

pub fn covector_from_json(spec: FieldSpec, v: &Value) -> Result<Vec<Elem>> {
    array(v, "a covector")?.iter().map(|x| elem_from_json(spec, x)).collect()
}

/// A matrix as its list of columns.
pub fn matrix_to_json(m: &Mat) -> Value {
    Value::Array(m.columns().iter().map(|c| covector_to_json(c)).collect())
}

pub fn matrix_from_json(spec: FieldSpec, v: &Value) -> Result<Mat> {
    let cols = array(v, "an array of columns")?
        .iter()
        .map(|c| covector_from_json(spec, c))
        .collect::<Result<Vec<_>>>()?;
    let rows = cols.first().map(Vec::len).ok_or(Error::EmptyInput("matrix"))?;
    if rows == 0 {
        return Err(Error::EmptyInput("matrix column"));
    }
    Mat::from_columns(spec, rows, cols)
}

pub fn tropval_to_json(x: &TropVal) -> Value {
    Value::String(x.to_string())
}

pub fn tropval_from_json(v: &Value) -> Result<TropVal> {
    match v {
        Value::String(s) => s.parse(),
        Value::Number(_) => Ok(TropVal::Fin(rational_from_json(v)?)),
        _ => Err(bad("a tropical value", v)),
    }
}

pub fn tropvals_from_json(v: &Value) -> Result<Vec<TropVal>> {
    array(v, "an array of tropical values")?.iter().map(tropval_from_json).collect()
}

pub fn point_to_json(u: &TropPoint) -> Value {
    Value::Array(u.coords().iter().map(tropval_to_json).collect())
}

pub fn point_from_json(v: &Value) -> Result<TropPoint> {
    TropPoint::normalize(tropvals_from_json(v)?)
}

pub fn subset_to_json(s: Subset) -> Value {
    json!(s.to_vec())
}

pub fn subset_from_json(v: &Value, ground: usize) -> Result<Subset> {
    let mut s = Subset::EMPTY;
    for x in array(v, "a set of indices")? {
        let i = usize_from_json(x)?;
        if i >= ground {
            return Err(Error::Parse(format!("index {i} outside the ground set of size {ground}")));
        }
        if s.contains(i) {
            return Err(Error::Parse(format!("index {i} repeated")));
        }
        s = s.with(i);
    }
    Ok(s)
}

/// Ground size and rank from `n` and `r`.
fn shape(v: &Value) -> Result<(usize, usize)> {
    let n = usize_from_json(get(v, "n")?)?;
    let r = usize_from_json(get(v, "r")?)?;
    if n + 1 > crate::matroid::MAX_GROUND {
        return Err(Error::Limit(format!("ground sets are limited to {} elements", crate::matroid::MAX_GROUND)));
    }
    if r > n {
        return Err(Error::Parse(format!("rank {} exceeds ground size {}", r + 1, n + 1)));
    }
    Ok((n + 1, r + 1))
}

/// Finite entries only, in lexicographic order of the sets.
pub fn table_to_json(t: &BasisTable) -> Value {
    let entries: Vec<Value> =
        t.finite_entries().map(|(s, v)| json!({"set": s.to_vec(), "val": format_rational(v)})).collect();
    json!({"n": t.ground() - 1, "r": t.rank() - 1, "table": entries})
}

/// Sets absent from `table` have value `∞`.
pub fn table_from_json(v: &Value) -> Result<BasisTable> {
    let (ground, rank) = shape(v)?;
    let mut entries = Vec::new();
    for e in array(get(v, "table")?, "a table")? {
        let s = subset_from_json(get(e, "set")?, ground)?;
        if s.len() != rank {
            return Err(Error::Parse(format!("set {:?} does not have {} elements", s.to_vec(), rank)));
        }
        if entries.iter().any(|(t, _)| *t == s) {
            return Err(Error::Parse(format!("set {:?} listed twice", s.to_vec())));
        }
        entries.push((s, tropval_from_json(get(e, "val")?)?));
    }
    BasisTable::new(ground, rank, entries)
}

pub fn matroid_to_json(m: &Matroid) -> Value {
    let bases: Vec<Vec<usize>> = m.bases().iter().map(|b| b.to_vec()).collect();
    json!({"n": m.ground() - 1, "r": m.rank() - 1, "bases": bases})
}

/// A matroid given by `bases`, or by a valuated `table` (its underlying
/// matroid).
pub fn matroid_from_json(v: &Value) -> Result<Matroid> {
    if v.get("table").is_some() {
        let t = table_from_json(v)?;
        return Ok(Matroid::from_bases(t.ground(), t.rank(), t.finite_entries().map(|(s, _)| s))?);
    }
    let (ground, rank) = shape(v)?;
    let bases = array(get(v, "bases")?, "a list of bases")?
        .iter()
        .map(|b| {
            let s = subset_from_json(b, ground)?;
            if s.len() != rank {
                return Err(Error::Parse(format!("basis {:?} does not have {} elements", s.to_vec(), rank)));
            }
            Ok(s)
        })
        .collect::<Result<Vec<_>>>()?;
    Matroid::from_bases(ground, rank, bases)
}

pub fn seminorm_to_json(x: &DiagSeminorm) -> Value {
    json!({"basis": matrix_to_json(x.basis()), "coords": point_to_json(x.coords())})
}

pub fn seminorm_from_json(spec: FieldSpec, v: &Value) -> Result<DiagSeminorm> {
    DiagSeminorm::new(matrix_from_json(spec, get(v, "basis")?)?, tropvals_from_json(get(v, "coords")?)?)
}

pub fn flag_to_json(f: &Flag) -> Value {
    json!({
        "subspaces": f.subspaces().iter().map(matrix_to_json).collect::<Vec<_>>(),
        "jumps": f.jumps().iter().map(tropval_to_json).collect::<Vec<_>>(),
    })
}

pub fn flag_from_json(spec: FieldSpec, dim: usize, v: &Value) -> Result<Flag> {
    let subspaces = array(get(v, "subspaces")?, "a list of subspaces")?
        .iter()
        .map(|m| matrix_from_json(spec, m))
        .collect::<Result<Vec<_>>>()?;
    Flag::new(spec, dim, subspaces, tropvals_from_json(get(v, "jumps")?)?)
}

pub fn lattice_to_json(l: &LatticeClass) -> Value {
    json!({"field": field_to_json(l.spec()), "basis": matrix_to_json(l.basis())})
}

pub fn lattice_from_json(spec: FieldSpec, v: &Value) -> Result<LatticeClass> {
    LatticeClass::new(matrix_from_json(spec, get(v, "basis")?)?)
}

/// An object from key-value pairs.
pub fn object(pairs: impl IntoIterator<Item = (&'static str, Value)>) -> Value {
    Value::Object(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<Map<_, _>>())
}
