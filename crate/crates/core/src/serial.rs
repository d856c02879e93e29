//! JSON documents for fields, elements, polynomials, matrices and trace forms.
//!
//! Output is canonical: a GF(q) element is an array of `e` integers in
//! `[0, p)` (little-endian over GF(p)), and a GF(q^n) element is an array of
//! `n` of those (little-endian in the generator `v`). Input is lenient:
//!
//! - integers may also be given as decimal strings;
//! - short arrays are zero-padded, and a bare integer stands for a constant;
//! - any other string is looked up in the `names` table of the field file;
//! - polynomial coefficient lists longer than `n` are reduced mod `x^(q^n) - x`.
//!
//! A field file looks like
//! `{"p": 2, "f": [1, 1], "g": [[1], [1], [1]], "names": {"w": [0, 1]}}`,
//! with `f` over GF(p) and `g` over GF(q), both little-endian and monic.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::dickson::DicksonMatrix;
use crate::error::{Error, Result};
use crate::field::{FieldTower, Fq, FqnElement};
use crate::linearized::LinPoly;
use crate::matrix::Matrix;
use crate::moore::TraceForm;
use crate::skew::SkewPoly;

const MAX_NAME_DEPTH: usize = 16;

fn malformed(msg: impl Into<String>) -> Error {
    Error::Malformed(msg.into())
}

/// Renders `v` with the given indent width; `0` gives the compact form.
pub fn to_string_indented(v: &Value, indent: usize) -> String {
    if indent == 0 {
        return v.to_string();
    }
    let pad = vec![b' '; indent];
    let mut out = Vec::new();
    let fmt = serde_json::ser::PrettyFormatter::with_indent(&pad);
    let mut ser = serde_json::Serializer::with_formatter(&mut out, fmt);
    serde::Serialize::serialize(v, &mut ser).expect("serializing a JSON value cannot fail");
    String::from_utf8(out).expect("JSON is UTF-8")
}

/// A parsed field file: the tower and its table of named values.
#[derive(Debug, Clone)]
pub struct FieldDoc {
    pub tower: Arc<FieldTower>,
    pub names: BTreeMap<String, Value>,
}

fn parse_uint(v: &Value) -> Result<u64> {
    match v {
        Value::Number(n) => n.as_u64().ok_or_else(|| malformed(format!("expected a non-negative integer, got {n}"))),
        Value::String(s) if is_decimal(s) => s
            .parse()
            .map_err(|_| malformed(format!("integer out of range: {s}"))),
        other => Err(malformed(format!("expected an integer, got {other}"))),
    }
}

fn is_decimal(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

fn as_u32(x: u64) -> Result<u32> {
    u32::try_from(x).map_err(|_| malformed(format!("integer out of range: {x}")))
}

fn parse_uint_list(v: &Value) -> Result<Vec<u32>> {
    match v {
        Value::Array(items) => items.iter().map(|x| parse_uint(x).and_then(as_u32)).collect(),
        other => Ok(vec![as_u32(parse_uint(other)?)?]),
    }
}

impl FieldDoc {
    pub fn parse(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| malformed("field file must be a JSON object"))?;
        let get = |k: &str| obj.get(k).ok_or_else(|| malformed(format!("field file is missing \"{k}\"")));
        let p = as_u32(parse_uint(get("p")?)?)?;
        let f = parse_uint_list(get("f")?)?;
        let g = match get("g")? {
            Value::Array(items) => items.iter().map(parse_uint_list).collect::<Result<Vec<_>>>()?,
            _ => return Err(malformed("\"g\" must be an array of GF(q) elements")),
        };
        let tower = Arc::new(FieldTower::new(p, &f, &g)?);
        let names = match obj.get("names") {
            None => BTreeMap::new(),
            Some(Value::Object(m)) => m.iter().map(|(k, v)| (k.clone(), v.clone())).collect(),
            Some(_) => return Err(malformed("\"names\" must be an object")),
        };
        for key in names.keys() {
            if is_decimal(key) || matches!(key.as_str(), "identity" | "zero" | "x") {
                return Err(malformed(format!("reserved name: {key}")));
            }
        }
        Ok(Self { tower, names })
    }

    pub fn from_tower(tower: &Arc<FieldTower>) -> Self {
        Self {
            tower: Arc::clone(tower),
            names: BTreeMap::new(),
        }
    }

    fn lookup(&self, name: &str, depth: usize) -> Result<&Value> {
        if depth >= MAX_NAME_DEPTH {
            return Err(malformed(format!("name \"{name}\" is defined recursively")));
        }
        self.names
            .get(name)
            .ok_or_else(|| malformed(format!("unknown name \"{name}\"")))
    }

    fn parse_fq(&self, v: &Value) -> Result<Fq> {
        let base = self.tower.base();
        let digits = parse_uint_list(v)?;
        for &d in &digits {
            if d >= base.p() {
                return Err(Error::CoefficientOutOfRange {
                    value: u64::from(d),
                    modulus: u64::from(base.p()),
                });
            }
        }
        base.from_digits(&digits)
    }

    pub fn parse_element(&self, v: &Value) -> Result<FqnElement> {
        self.element_at(v, 0)
    }

    fn element_at(&self, v: &Value, depth: usize) -> Result<FqnElement> {
        let t = &*self.tower;
        match v {
            Value::String(s) if !is_decimal(s) => self.element_at(self.lookup(s, depth)?, depth + 1),
            Value::Array(items) => {
                if items.len() > t.n() {
                    return Err(Error::TowerMismatch);
                }
                let mut coeffs = items.iter().map(|x| self.parse_fq(x)).collect::<Result<Vec<_>>>()?;
                coeffs.resize(t.n(), Fq(0));
                t.element(&coeffs)
            }
            other => Ok(t.embed(self.parse_fq(other)?)),
        }
    }

    pub fn parse_elements(&self, v: &Value) -> Result<Vec<FqnElement>> {
        self.elements_at(v, 0)
    }

    fn elements_at(&self, v: &Value, depth: usize) -> Result<Vec<FqnElement>> {
        match v {
            Value::String(s) => self.elements_at(self.lookup(s, depth)?, depth + 1),
            Value::Array(items) => items.iter().map(|x| self.element_at(x, depth)).collect(),
            _ => Err(malformed("expected an array of elements")),
        }
    }

    /// Accepts `{"coeffs": [...]}`, a bare coefficient array, a Dickson
    /// first row, a skew polynomial, a trace form, `"identity"`, `"zero"` or a name.
    pub fn parse_poly(&self, v: &Value) -> Result<LinPoly> {
        self.poly_at(v, 0)
    }

    fn poly_at(&self, v: &Value, depth: usize) -> Result<LinPoly> {
        let t = &self.tower;
        match v {
            Value::String(s) => match s.as_str() {
                "identity" | "x" => Ok(LinPoly::identity(t)),
                "zero" | "0" => Ok(LinPoly::zero(t)),
                name => self.poly_at(self.lookup(name, depth)?, depth + 1),
            },
            Value::Array(_) => LinPoly::reduced(t, &self.elements_at(v, depth)?),
            Value::Object(obj) => {
                if let Some(c) = obj.get("coeffs") {
                    LinPoly::reduced(t, &self.elements_at(c, depth)?)
                } else if let Some(r) = obj.get("first_row") {
                    let row = self.elements_at(r, depth)?;
                    if row.len() != t.n() {
                        return Err(Error::TowerMismatch);
                    }
                    LinPoly::new(t, row)
                } else if obj.contains_key("skew") {
                    Ok(self.skew_at(v, depth)?.phi())
                } else if obj.contains_key("pairs") {
                    Ok(self.trace_form_at(v, depth)?.to_poly())
                } else {
                    Err(malformed("polynomial object needs \"coeffs\", \"first_row\", \"skew\" or \"pairs\""))
                }
            }
            _ => Err(malformed("expected a polynomial")),
        }
    }

    /// Accepts `{"skew": [...]}`, a bare array (no reduction) or a linearized
    /// polynomial object, which is mapped back coefficient by coefficient.
    pub fn parse_skew(&self, v: &Value) -> Result<SkewPoly> {
        self.skew_at(v, 0)
    }

    fn skew_at(&self, v: &Value, depth: usize) -> Result<SkewPoly> {
        let t = &self.tower;
        match v {
            Value::Array(_) => SkewPoly::new(t, self.elements_at(v, depth)?),
            Value::Object(obj) if obj.contains_key("skew") => {
                SkewPoly::new(t, self.elements_at(&obj["skew"], depth)?)
            }
            Value::String(s) if !matches!(s.as_str(), "identity" | "x" | "zero" | "0") => {
                self.skew_at(self.lookup(s, depth)?, depth + 1)
            }
            other => Ok(SkewPoly::phi_inv(&self.poly_at(other, depth)?)),
        }
    }

    pub fn parse_trace_form(&self, v: &Value) -> Result<TraceForm> {
        self.trace_form_at(v, 0)
    }

    fn trace_form_at(&self, v: &Value, depth: usize) -> Result<TraceForm> {
        match v {
            Value::String(s) => self.trace_form_at(self.lookup(s, depth)?, depth + 1),
            Value::Object(obj) => {
                let pairs = obj
                    .get("pairs")
                    .and_then(Value::as_array)
                    .ok_or_else(|| malformed("trace form needs a \"pairs\" array"))?;
                let pairs = pairs
                    .iter()
                    .map(|p| match p.as_array().map(Vec::as_slice) {
                        Some([w, th]) => Ok((self.element_at(w, depth)?, self.element_at(th, depth)?)),
                        _ => Err(malformed("each pair must be [omega, theta]")),
                    })
                    .collect::<Result<Vec<_>>>()?;
                TraceForm::new(&self.tower, pairs)
            }
            _ => Err(malformed("expected a trace form")),
        }
    }

    /// A row-major matrix over GF(q^n).
    pub fn parse_matrix(&self, v: &Value) -> Result<Matrix<FqnElement>> {
        let rows = v.as_array().ok_or_else(|| malformed("matrix must be an array of rows"))?;
        let rows = rows.iter().map(|r| self.parse_elements(r)).collect::<Result<Vec<_>>>()?;
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(malformed("matrix rows have different lengths"));
        }
        Ok(Matrix::from_rows(rows))
    }
}

impl std::str::FromStr for FieldDoc {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| malformed(format!("invalid JSON: {e}")))?;
        Self::parse(&v)
    }
}

pub fn field_to_json(t: &FieldTower) -> Value {
    let g: Vec<Value> = t.modulus().iter().map(|c| fq_to_json(t, *c)).collect();
    json!({"p": t.p(), "f": t.base().modulus(), "g": g})
}

pub fn fq_to_json(t: &FieldTower, c: Fq) -> Value {
    Value::from(t.base().digits(c).to_vec())
}

pub fn element_to_json(t: &FieldTower, a: &FqnElement) -> Value {
    Value::Array(a.coeffs().iter().map(|c| fq_to_json(t, *c)).collect())
}

pub fn elements_to_json(t: &FieldTower, elems: &[FqnElement]) -> Value {
    Value::Array(elems.iter().map(|a| element_to_json(t, a)).collect())
}

pub fn poly_to_json(l: &LinPoly) -> Value {
    json!({"coeffs": elements_to_json(l.tower(), l.coeffs())})
}

pub fn dickson_to_json(d: &DicksonMatrix) -> Value {
    json!({"dickson": true, "first_row": elements_to_json(d.tower(), d.first_row())})
}

pub fn skew_to_json(s: &SkewPoly) -> Value {
    json!({"skew": elements_to_json(s.tower(), s.coeffs())})
}

pub fn trace_form_to_json(tf: &TraceForm) -> Value {
    let t = tf.tower();
    let pairs: Vec<Value> = tf
        .pairs()
        .iter()
        .map(|(w, th)| json!([element_to_json(t, w), element_to_json(t, th)]))
        .collect();
    json!({ "pairs": pairs })
}

/// Row-major matrix over GF(q).
pub fn base_matrix_to_json(t: &FieldTower, m: &Matrix<Fq>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|c| fq_to_json(t, *c)).collect()))
            .collect(),
    )
}

/// Row-major matrix over GF(q^n).
pub fn matrix_to_json(t: &FieldTower, m: &Matrix<FqnElement>) -> Value {
    Value::Array((0..m.rows()).map(|i| elements_to_json(t, m.row(i))).collect())
}

/// `{"error": name, "message": text}`.
pub fn error_to_json(e: &Error) -> Value {
    let mut m = Map::new();
    m.insert("error".into(), Value::from(e.name()));
    m.insert("message".into(), Value::from(e.to_string()));
    Value::Object(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    use crate::field::Field;

    fn doc() -> FieldDoc {
        FieldDoc::from_str(
            r#"{"p": 2, "f": [1, 1], "g": [[1], [1], [1]],
                "names": {"w": [0, 1], "L_a": {"coeffs": ["w", 1]}, "loop": "loop"}}"#,
        )
        .unwrap()
    }

    #[test]
    fn lenient_elements() {
        let d = doc();
        let t = &d.tower;
        let w = t.generator();
        assert_eq!(d.parse_element(&json!([[0], [1]])).unwrap(), w);
        assert_eq!(d.parse_element(&json!(["0", "1"])).unwrap(), w);
        assert_eq!(d.parse_element(&json!("w")).unwrap(), w);
        assert_eq!(d.parse_element(&json!(1)).unwrap(), t.one());
        assert_eq!(d.parse_element(&json!([1])).unwrap(), t.one());
        assert_eq!(d.parse_element(&json!([0, 0, 1])), Err(Error::TowerMismatch));
        assert!(matches!(d.parse_element(&json!([2])), Err(Error::CoefficientOutOfRange { .. })));
        assert!(matches!(d.parse_element(&json!("loop")), Err(Error::Malformed(_))));
        assert!(matches!(d.parse_element(&json!("nope")), Err(Error::Malformed(_))));
    }

    #[test]
    fn polys_and_round_trips() {
        let d = doc();
        let t = &d.tower;
        let la = d.parse_poly(&json!("L_a")).unwrap();
        assert_eq!(d.parse_poly(&json!([["0", "1"], ["1", "0"]])).unwrap(), la);
        assert_eq!(poly_to_json(&la), json!({"coeffs": [[[0], [1]], [[1], [0]]]}));
        assert_eq!(d.parse_poly(&poly_to_json(&la)).unwrap(), la);
        let dm = DicksonMatrix::from_poly(&la);
        assert_eq!(d.parse_poly(&dickson_to_json(&dm)).unwrap(), la);
        let s = SkewPoly::phi_inv(&la);
        assert_eq!(d.parse_skew(&skew_to_json(&s)).unwrap(), s);
        assert_eq!(d.parse_poly(&json!("identity")).unwrap(), LinPoly::identity(t));
        // x^(q^2) reduces to x
        assert_eq!(d.parse_poly(&json!([0, 0, 1])).unwrap(), LinPoly::identity(t));
        let tf = crate::moore::compact_form(&la);
        assert_eq!(d.parse_trace_form(&trace_form_to_json(&tf)).unwrap(), tf);
        assert_eq!(d.parse_poly(&trace_form_to_json(&tf)).unwrap(), la);
    }

    #[test]
    fn field_documents() {
        let d = doc();
        let again = FieldDoc::parse(&field_to_json(&d.tower)).unwrap();
        assert_eq!(*again.tower, *d.tower);
        assert!(matches!(FieldDoc::from_str("{"), Err(Error::Malformed(_))));
        assert!(matches!(FieldDoc::from_str(r#"{"p": 2}"#), Err(Error::Malformed(_))));
        assert_eq!(
            FieldDoc::from_str(r#"{"p": 2, "f": [1, 1], "g": [[1], [0], [1]]}"#).err(),
            Some(Error::ReduciblePolynomial(crate::error::TowerLevel::Extension))
        );
        assert_eq!(
            FieldDoc::from_str(r#"{"p": 4, "f": [1, 1], "g": [[1], [1], [1]]}"#).err(),
            Some(Error::NotPrime(4))
        );
    }

    #[test]
    fn indentation() {
        let v = json!({"rank": 1});
        assert_eq!(to_string_indented(&v, 0), r#"{"rank":1}"#);
        assert_eq!(to_string_indented(&v, 2), "{\n  \"rank\": 1\n}");
    }
}
