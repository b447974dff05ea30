//! Canonical JSON documents: sorted keys, integers as decimal strings.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::butterfly::Butterfly;
use crate::error::Error;
use crate::exactness::ButterflyShortSeq;
use crate::fgab::{FgAbGroup, FgAbMap};
use crate::intlinalg::IntMatrix;
use crate::twocomplex::TwoTermComplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Group,
    Map,
    Complex,
    Butterfly,
    Sequence,
}

impl Kind {
    pub fn tag(self) -> &'static str {
        match self {
            Kind::Group => "group",
            Kind::Map => "map",
            Kind::Complex => "complex",
            Kind::Butterfly => "butterfly",
            Kind::Sequence => "sequence",
        }
    }

    fn from_tag(tag: &str) -> Option<Kind> {
        [Kind::Group, Kind::Map, Kind::Complex, Kind::Butterfly, Kind::Sequence].into_iter().find(|k| k.tag() == tag)
    }
}

#[derive(Clone, Debug)]
pub enum Document {
    Group(FgAbGroup),
    Map(FgAbMap),
    Complex(TwoTermComplex),
    Butterfly(Butterfly),
    Sequence(ButterflyShortSeq),
}

impl Document {
    pub fn kind(&self) -> Kind {
        match self {
            Document::Group(_) => Kind::Group,
            Document::Map(_) => Kind::Map,
            Document::Complex(_) => Kind::Complex,
            Document::Butterfly(_) => Kind::Butterfly,
            Document::Sequence(_) => Kind::Sequence,
        }
    }
}

/// Failure to read a document: malformed input, or an input that is
/// well-formed but mathematically refused.
#[derive(Debug)]
pub enum ReadError {
    Syntax(String),
    Schema(String),
    Math(Error),
}

impl ReadError {
    pub fn exit_code(&self) -> i32 {
        match self {
            ReadError::Math(_) => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for ReadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReadError::Syntax(m) => write!(f, "malformed JSON: {m}"),
            ReadError::Schema(m) => write!(f, "schema error: {m}"),
            ReadError::Math(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ReadError {}

impl From<Error> for ReadError {
    fn from(e: Error) -> Self {
        match e {
            Error::Dimension(m) => ReadError::Schema(m),
            other => ReadError::Math(other),
        }
    }
}

type Read<T> = std::result::Result<T, ReadError>;

fn schema(msg: impl Into<String>) -> ReadError {
    ReadError::Schema(msg.into())
}

/// Pretty-printed with sorted keys and a trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

pub fn matrix_to_value(m: &IntMatrix) -> Value {
    Value::Array(
        (0..m.rows()).map(|r| Value::Array(m.row(r).iter().map(|x| Value::String(x.to_string())).collect())).collect(),
    )
}

fn entry(v: &Value) -> Read<BigInt> {
    match v {
        Value::String(s) => BigInt::from_str(s.trim()).map_err(|_| schema(format!("`{s}` is not a decimal integer"))),
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(BigInt::from_str(&n.to_string()).expect("integer")),
        other => Err(schema(format!("matrix entry {other} is not an integer string"))),
    }
}

fn rows_of(v: &Value) -> Read<Vec<Vec<BigInt>>> {
    let rows = v.as_array().ok_or_else(|| schema("matrix must be an array of rows"))?;
    rows.iter()
        .map(|row| row.as_array().ok_or_else(|| schema("matrix row must be an array"))?.iter().map(entry).collect())
        .collect()
}

/// A matrix of known shape; a matrix with no rows is written `[]`.
pub fn matrix_from_value(v: &Value, rows: usize, cols: usize) -> Read<IntMatrix> {
    let data = rows_of(v)?;
    if data.len() != rows || data.iter().any(|r| r.len() != cols) {
        return Err(schema(format!("expected a {rows}x{cols} matrix")));
    }
    Ok(IntMatrix::from_rows(data, cols))
}

pub fn group_to_value(g: &FgAbGroup) -> Value {
    json!({ "ngens": g.ngens(), "relations": matrix_to_value(g.relations()) })
}

/// Either `{"ngens", "relations"}` or invariant-factor shorthand such as `"Z/2+Z"`.
pub fn group_from_value(v: &Value) -> Read<FgAbGroup> {
    if let Value::String(s) = v {
        return s.parse().map_err(schema);
    }
    let o = object(v, "group")?;
    let n = o
        .get("ngens")
        .and_then(|n| n.as_u64().or_else(|| n.as_str().and_then(|s| s.parse().ok())))
        .ok_or_else(|| schema("group needs a nonnegative \"ngens\""))? as usize;
    let rel = o.get("relations").ok_or_else(|| schema("group needs \"relations\""))?;
    let data = rows_of(rel)?;
    let cols = data.first().map_or(0, Vec::len);
    let relations = matrix_from_value(rel, n, cols)?;
    Ok(FgAbGroup::new(n, relations)?)
}

pub fn map_to_value(f: &FgAbMap) -> Value {
    json!({ "src": group_to_value(f.src()), "dst": group_to_value(f.dst()), "matrix": matrix_to_value(f.matrix()) })
}

pub fn map_from_value(v: &Value) -> Read<FgAbMap> {
    let o = object(v, "map")?;
    let src = group_from_value(field(o, "src")?)?;
    let dst = group_from_value(field(o, "dst")?)?;
    let m = matrix_from_value(field(o, "matrix")?, dst.ngens(), src.ngens())?;
    Ok(FgAbMap::new(src, dst, m)?)
}

pub fn complex_to_value(k: &TwoTermComplex) -> Value {
    json!({
        "deg-1": group_to_value(k.deg_m1()),
        "deg0": group_to_value(k.deg_0()),
        "d": matrix_to_value(k.d().matrix()),
    })
}

pub fn complex_from_value(v: &Value) -> Read<TwoTermComplex> {
    let o = object(v, "complex")?;
    let a = group_from_value(field(o, "deg-1")?)?;
    let b = group_from_value(field(o, "deg0")?)?;
    let d = matrix_from_value(field(o, "d")?, b.ngens(), a.ngens())?;
    Ok(TwoTermComplex::from_parts(&a, &b, d)?)
}

pub fn butterfly_to_value(y: &Butterfly) -> Value {
    json!({
        "src": complex_to_value(y.src()),
        "dst": complex_to_value(y.dst()),
        "carrier": group_to_value(y.carrier()),
        "i": matrix_to_value(y.i().matrix()),
        "j": matrix_to_value(y.j().matrix()),
        "p": matrix_to_value(y.p().matrix()),
        "q": matrix_to_value(y.q().matrix()),
    })
}

/// Reads a butterfly without checking its axioms; see [`Butterfly::validate`].
pub fn butterfly_from_value(v: &Value) -> Read<Butterfly> {
    let o = object(v, "butterfly")?;
    let e = complex_from_value(field(o, "src")?)?;
    let f = complex_from_value(field(o, "dst")?)?;
    let y = group_from_value(field(o, "carrier")?)?;
    let n = y.ngens();
    let i = matrix_from_value(field(o, "i")?, n, f.deg_m1().ngens())?;
    let j = matrix_from_value(field(o, "j")?, n, e.deg_m1().ngens())?;
    let p = matrix_from_value(field(o, "p")?, f.deg_0().ngens(), n)?;
    let q = matrix_from_value(field(o, "q")?, e.deg_0().ngens(), n)?;
    Ok(Butterfly::from_matrices(&e, &f, &y, [i, j, p, q])?)
}

pub fn sequence_to_value(s: &ButterflyShortSeq) -> Value {
    json!({
        "E": complex_to_value(s.e()),
        "F": complex_to_value(s.f()),
        "G": complex_to_value(s.g()),
        "Y": butterfly_to_value(s.y()),
        "Z": butterfly_to_value(s.z()),
        "phi": matrix_to_value(s.phi().matrix()),
    })
}

pub fn sequence_from_value(v: &Value) -> Read<ButterflyShortSeq> {
    let o = object(v, "sequence")?;
    let e = complex_from_value(field(o, "E")?)?;
    let f = complex_from_value(field(o, "F")?)?;
    let g = complex_from_value(field(o, "G")?)?;
    let y = butterfly_from_value(field(o, "Y")?)?;
    let z = butterfly_from_value(field(o, "Z")?)?;
    if y.src() != &e || y.dst() != &f || z.src() != &f || z.dst() != &g {
        return Err(ReadError::Math(Error::EndpointMismatch("Y: E → F and Z: F → G do not match E, F, G".into())));
    }
    let phi = matrix_from_value(field(o, "phi")?, z.carrier().ngens(), y.carrier().ngens())?;
    let phi = FgAbMap::new(y.carrier().clone(), z.carrier().clone(), phi)?;
    Ok(ButterflyShortSeq::new(y, z, phi)?)
}

pub fn document_to_value(d: &Document) -> Value {
    let mut v = match d {
        Document::Group(g) => group_to_value(g),
        Document::Map(f) => map_to_value(f),
        Document::Complex(k) => complex_to_value(k),
        Document::Butterfly(y) => butterfly_to_value(y),
        Document::Sequence(s) => sequence_to_value(s),
    };
    v.as_object_mut().expect("documents are objects").insert("type".into(), d.kind().tag().into());
    v
}

pub fn document_to_string(d: &Document) -> String {
    to_canonical_string(&document_to_value(d))
}

/// Parses a document. The `"type"` tag is optional: without it the kind is
/// `expected`, or else guessed from the keys present.
pub fn parse_document(text: &str, expected: Option<Kind>) -> Read<Document> {
    let v: Value = serde_json::from_str(text).map_err(|e| ReadError::Syntax(e.to_string()))?;
    let tagged = match &v {
        Value::Object(o) => match o.get("type") {
            Some(Value::String(t)) => Some(Kind::from_tag(t).ok_or_else(|| schema(format!("unknown type tag `{t}`")))?),
            Some(_) => return Err(schema("\"type\" must be a string")),
            None => None,
        },
        Value::String(_) => Some(Kind::Group),
        _ => return Err(schema("document must be a JSON object")),
    };
    let kind = match (tagged, expected) {
        (Some(t), Some(e)) if t != e => {
            return Err(schema(format!("expected a {} document, got {}", e.tag(), t.tag())))
        }
        (Some(t), _) => t,
        (None, Some(e)) => e,
        (None, None) => guess_kind(&v)?,
    };
    Ok(match kind {
        Kind::Group => Document::Group(group_from_value(&v)?),
        Kind::Map => Document::Map(map_from_value(&v)?),
        Kind::Complex => Document::Complex(complex_from_value(&v)?),
        Kind::Butterfly => Document::Butterfly(butterfly_from_value(&v)?),
        Kind::Sequence => Document::Sequence(sequence_from_value(&v)?),
    })
}

fn guess_kind(v: &Value) -> Read<Kind> {
    let o = object(v, "document")?;
    Ok(if o.contains_key("phi") {
        Kind::Sequence
    } else if o.contains_key("carrier") {
        Kind::Butterfly
    } else if o.contains_key("deg-1") {
        Kind::Complex
    } else if o.contains_key("matrix") {
        Kind::Map
    } else if o.contains_key("ngens") {
        Kind::Group
    } else {
        return Err(schema("cannot tell what kind of document this is"));
    })
}

fn object<'a>(v: &'a Value, what: &str) -> Read<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| schema(format!("{what} must be a JSON object")))
}

fn field<'a>(o: &'a Map<String, Value>, key: &str) -> Read<&'a Value> {
    o.get(key).ok_or_else(|| schema(format!("missing field \"{key}\"")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactness::truncation_sequence;
    use crate::fixtures;

    #[test]
    fn round_trips_are_byte_stable() {
        let docs = [
            Document::Group("Z/2+Z".parse().unwrap()),
            Document::Map(fixtures::r().f_0().clone()),
            Document::Complex(fixtures::e2()),
            Document::Butterfly(fixtures::b()),
            Document::Sequence(truncation_sequence(&fixtures::e2())),
        ];
        for d in &docs {
            let s = document_to_string(d);
            let back = parse_document(&s, None).unwrap();
            assert_eq!(back.kind(), d.kind());
            assert_eq!(document_to_string(&back), s);
        }
    }

    #[test]
    fn shorthand_and_untagged_input() {
        let text = r#"{"deg-1": "Z", "deg0": "Z", "d": [["2"]]}"#;
        let Document::Complex(k) = parse_document(text, None).unwrap() else { panic!() };
        assert_eq!(k, fixtures::e2());
        let f = parse_document(r#"{"src": "0", "dst": "Z/3", "matrix": [[]]}"#, Some(Kind::Map)).unwrap();
        assert_eq!(f.kind(), Kind::Map);
    }

    #[test]
    fn error_classes() {
        assert_eq!(parse_document("{", None).unwrap_err().exit_code(), 2);
        assert_eq!(parse_document(r#"{"ngens": 1, "relations": [["x"]]}"#, None).unwrap_err().exit_code(), 2);
        let bad = r#"{"src": "Z/2", "dst": "Z", "matrix": [["1"]]}"#;
        assert_eq!(parse_document(bad, None).unwrap_err().exit_code(), 1);
        let wrong = parse_document(r#"{"type": "map", "ngens": 0, "relations": []}"#, Some(Kind::Group));
        assert_eq!(wrong.unwrap_err().exit_code(), 2);
    }
}
