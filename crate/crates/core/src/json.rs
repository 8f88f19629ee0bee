//! JSON encodings of scalars, matrices, involutions, certificates and
//! algebras.
//!
//! Scalars are exact strings, never floats: a rational is `"p/q"` or
//! `"p"`, a Gaussian rational is `[re, im]` and a quaternion is
//! `[a, b, c, d]`. A matrix is `{"kind", "n", "entries"}` with `entries` a
//! list of rows.
//!
//! ```
//! use csai::json;
//! use csai::scalars::Quaternion;
//! use serde_json::json;
//!
//! let m = json::matrix_from_value::<Quaternion>(&json!({
//!     "kind": "quaternion", "n": 1, "entries": [[["0", "1", "0", "0"]]]
//! })).unwrap();
//! assert_eq!(json::rational_to_value(&m.reduced_trace()), json!("0"));
//! ```

use serde_json::{json, Map, Value};

use crate::cones::{ConeCertificate, CongruenceCertificate};
use crate::error::{Error, Result};
use crate::involution::Involution;
use crate::matrix::Matrix;
use crate::scalars::{parse_rational, Kind, Rational, Scalar};
use crate::structure::StructureConstantAlgebra;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| parse_err(format!("missing field {key:?}")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| parse_err(format!("{what} must be an array")))
}

pub fn usize_from_value(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| parse_err(format!("{what} must be a nonnegative integer")))
}

/// Accepts `"p/q"`, `"p"` or a JSON integer.
pub fn rational_from_value(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => {
            Ok(Rational::from_integer(n.as_i64().expect("checked").into()))
        }
        other => Err(parse_err(format!(
            "expected a rational string, got {other}"
        ))),
    }
}

pub fn rational_to_value(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn rationals_from_value(v: &Value) -> Result<Vec<Rational>> {
    array(v, "vector")?
        .iter()
        .map(rational_from_value)
        .collect()
}

pub fn rationals_to_value(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_to_value).collect())
}

pub fn scalar_from_value<T: Scalar>(v: &Value) -> Result<T> {
    let rank = T::KIND.rank();
    if rank == 1 {
        return Ok(T::from_components(&[rational_from_value(v)?]));
    }
    let comps = rationals_from_value(v)?;
    if comps.len() != rank {
        return Err(parse_err(format!(
            "a {} scalar has {rank} components, got {}",
            T::KIND,
            comps.len()
        )));
    }
    Ok(T::from_components(&comps))
}

pub fn scalar_to_value<T: Scalar>(x: &T) -> Value {
    let comps = x.components();
    if comps.len() == 1 {
        rational_to_value(&comps[0])
    } else {
        rationals_to_value(&comps)
    }
}

pub fn kind_from_value(v: &Value) -> Result<Kind> {
    field(v, "kind")?
        .as_str()
        .ok_or_else(|| parse_err("kind must be a string"))?
        .parse()
}

pub fn matrix_from_value<T: Scalar>(v: &Value) -> Result<Matrix<T>> {
    let kind = kind_from_value(v)?;
    if kind != T::KIND {
        return Err(Error::KindMismatch {
            left: T::KIND,
            right: kind,
        });
    }
    let n = usize_from_value(field(v, "n")?, "n")?;
    let rows = array(field(v, "entries")?, "entries")?;
    if rows.len() != n {
        return Err(Error::BadShape {
            expected: n,
            got: rows.len(),
        });
    }
    let mut entries = Vec::with_capacity(n * n);
    for row in rows {
        let row = array(row, "matrix row")?;
        if row.len() != n {
            return Err(Error::BadShape {
                expected: n,
                got: row.len(),
            });
        }
        for e in row {
            entries.push(scalar_from_value::<T>(e)?);
        }
    }
    Matrix::new(n, entries)
}

pub fn matrix_to_value<T: Scalar>(m: &Matrix<T>) -> Value {
    json!({
        "kind": T::KIND.name(),
        "n": m.n(),
        "entries": m.rows().map(|r| r.iter().map(scalar_to_value).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

/// `{"kind", "n", "scale": matrix | "identity"}`.
pub fn involution_from_value<T: Scalar>(v: &Value) -> Result<Involution<T>> {
    let kind = kind_from_value(v)?;
    if kind != T::KIND {
        return Err(Error::KindMismatch {
            left: T::KIND,
            right: kind,
        });
    }
    let n = usize_from_value(field(v, "n")?, "n")?;
    let scale = field(v, "scale")?;
    if scale.as_str() == Some("identity") {
        return Ok(Involution::canonical(n));
    }
    let a = matrix_from_value::<T>(scale)?;
    if a.n() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: a.n(),
        });
    }
    Involution::new(a)
}

pub fn involution_to_value<T: Scalar>(inv: &Involution<T>) -> Value {
    let scale = if inv.is_canonical() {
        json!("identity")
    } else {
        matrix_to_value(inv.scale())
    };
    json!({ "kind": T::KIND.name(), "n": inv.n(), "scale": scale })
}

/// `{"P": matrix, "d": [rational, ...]}`.
pub fn congruence_to_value<T: Scalar>(c: &CongruenceCertificate<T>) -> Value {
    json!({ "P": matrix_to_value(&c.p), "d": rationals_to_value(&c.d) })
}

pub fn congruence_from_value<T: Scalar>(v: &Value) -> Result<CongruenceCertificate<T>> {
    Ok(CongruenceCertificate {
        p: matrix_from_value(field(v, "P")?)?,
        d: rationals_from_value(field(v, "d")?)?,
    })
}

/// `{"p": matrix, "p_certificate": congruence, "terms": [{"u", "x"}, ...]}`.
pub fn cone_certificate_from_value<T: Scalar>(v: &Value) -> Result<ConeCertificate<T>> {
    let terms = array(field(v, "terms")?, "terms")?
        .iter()
        .map(|t| {
            Ok((
                rational_from_value(field(t, "u")?)?,
                matrix_from_value(field(t, "x")?)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConeCertificate {
        p: matrix_from_value(field(v, "p")?)?,
        p_certificate: congruence_from_value(field(v, "p_certificate")?)?,
        terms,
    })
}

pub fn cone_certificate_to_value<T: Scalar>(c: &ConeCertificate<T>) -> Value {
    json!({
        "p": matrix_to_value(&c.p),
        "p_certificate": congruence_to_value(&c.p_certificate),
        "terms": c.terms.iter().map(|(u, x)| json!({ "u": rational_to_value(u), "x": matrix_to_value(x) })).collect::<Vec<_>>(),
    })
}

fn rational_rows(v: &Value, what: &str) -> Result<Vec<Vec<Rational>>> {
    array(v, what)?.iter().map(rationals_from_value).collect()
}

/// `{"m", "constants", "unit", "involution"?}`; the involution is a list of
/// rows whose column `u` is `σ(e_u)`.
pub fn algebra_from_value(v: &Value) -> Result<StructureConstantAlgebra> {
    let m = usize_from_value(field(v, "m")?, "m")?;
    let constants = array(field(v, "constants")?, "constants")?
        .iter()
        .map(|plane| rational_rows(plane, "constants"))
        .collect::<Result<Vec<_>>>()?;
    if constants.len() != m {
        return Err(Error::ShapeMismatch(format!(
            "m = {m} but constants has {} planes",
            constants.len()
        )));
    }
    let unit = rationals_from_value(field(v, "unit")?)?;
    let involution = match v.get("involution") {
        None | Some(Value::Null) => None,
        Some(s) => {
            let rows = rational_rows(s, "involution")?;
            Some(Matrix::from_rows(rows)?)
        }
    };
    StructureConstantAlgebra::new(constants, unit, involution)
}

pub fn algebra_to_value(alg: &StructureConstantAlgebra) -> Value {
    let mut map = Map::new();
    map.insert("m".into(), json!(alg.m()));
    map.insert(
        "constants".into(),
        Value::Array(
            alg.constants()
                .iter()
                .map(|plane| Value::Array(plane.iter().map(|v| rationals_to_value(v)).collect()))
                .collect(),
        ),
    );
    map.insert("unit".into(), rationals_to_value(alg.unit()));
    if let Some(s) = alg.involution() {
        map.insert(
            "involution".into(),
            Value::Array(s.rows().map(rationals_to_value).collect()),
        );
    }
    Value::Object(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, rat, GaussRational, Quaternion};
    use crate::structure::catalog;

    #[test]
    fn scalars_round_trip() {
        assert_eq!(rational_to_value(&rat(-3, 6)), json!("-1/2"));
        assert_eq!(rational_from_value(&json!("4/2")).unwrap(), int(2));
        assert_eq!(rational_from_value(&json!(7)).unwrap(), int(7));
        assert!(rational_from_value(&json!("1/0")).is_err());
        assert!(rational_from_value(&json!(0.5)).is_err());
        let g = GaussRational::new(rat(1, 2), int(-1));
        assert_eq!(scalar_to_value(&g), json!(["1/2", "-1"]));
        assert_eq!(
            scalar_from_value::<GaussRational>(&json!(["1/2", "-1"])).unwrap(),
            g
        );
        assert!(scalar_from_value::<Quaternion>(&json!(["1", "2"])).is_err());
    }

    #[test]
    fn matrices_round_trip() {
        let v = json!({"kind": "real", "n": 2, "entries": [["1", "2"], ["2", "1"]]});
        let m = matrix_from_value::<Rational>(&v).unwrap();
        assert_eq!(matrix_to_value(&m), v);
        assert!(matrix_from_value::<GaussRational>(&v).is_err());
        let bad = json!({"kind": "real", "n": 2, "entries": [["1", "2"]]});
        assert!(matrix_from_value::<Rational>(&bad).is_err());
    }

    #[test]
    fn involutions_round_trip() {
        let v = json!({"kind": "complex", "n": 2, "scale": "identity"});
        let inv = involution_from_value::<GaussRational>(&v).unwrap();
        assert_eq!(involution_to_value(&inv), v);
        let v = json!({"kind": "real", "n": 2, "scale": {"kind": "real", "n": 2, "entries": [["1", "0"], ["0", "2"]]}});
        let inv = involution_from_value::<Rational>(&v).unwrap();
        assert_eq!(involution_to_value(&inv), v);
    }

    #[test]
    fn algebras_round_trip() {
        for (_, alg) in catalog::catalog() {
            let v = algebra_to_value(&alg);
            assert_eq!(algebra_from_value(&v).unwrap(), alg);
        }
    }
}
