//! Versioned JSON documents: restriction arrays, certificates, point sets,
//! vector arrays and lifted colorings. One file holds one document, and
//! every document carries a `format` tag that must match exactly.
//!
//! Distances are JSON integers, or `"p/q"` strings for rational tokens on
//! the line. Certificate payloads depend on the verdict:
//!
//! | verdict    | payload                                                 |
//! |------------|---------------------------------------------------------|
//! | `sat`      | `{"colors":[…]}` in lexicographic window order           |
//! | `periodic` | `{"period":p,"residues":[…]}`                            |
//! | `unsat`    | `{"nodes","node_budget","symmetry_breaking","exhausted"}`|
//! | `unknown`  | `{"reason","nodes","node_budget",…}`                     |

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::lattice::{
    Coloring, DistanceToken, Metric, PeriodicColoring, RestrictionArray, Space, TokenKind, Window,
};
use crate::solver::{BudgetReport, Certificate, Payload, SearchAttestation, Verdict};
use crate::stochastic::ResampleStats;
use crate::witnesses::{Coordinates, Lift, PointSet, QSqrt5, VectorArray};

pub const ARRAY_FORMAT: &str = "chromacy-array/1";
pub const CERT_FORMAT: &str = "chromacy-cert/1";
pub const POINTS_FORMAT: &str = "chromacy-points/1";
pub const VECTORS_FORMAT: &str = "chromacy-vectors/1";
pub const LIFT_FORMAT: &str = "chromacy-lift/1";

fn malformed(msg: impl Into<String>) -> Error {
    Error::Malformed(msg.into())
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| malformed(e.to_string()))
}

fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| malformed(format!("missing field {key:?}")))
}

fn check_format(obj: &Value, expected: &'static str) -> Result<()> {
    let found = field(obj, "format")?
        .as_str()
        .ok_or_else(|| malformed("format must be a string"))?;
    if found != expected {
        return Err(Error::UnsupportedFormat {
            found: found.to_string(),
            expected,
        });
    }
    Ok(())
}

fn from_value<T: for<'de> Deserialize<'de>>(v: &Value, what: &str) -> Result<T> {
    T::deserialize(v).map_err(|e| malformed(format!("{what}: {e}")))
}

fn parse_ratio(v: &Value) -> Result<(i64, u64)> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|x| (x, 1))
            .ok_or_else(|| malformed(format!("{n} is not an integer; write rationals as \"p/q\""))),
        Value::String(s) => {
            let (p, q) = s.split_once('/').unwrap_or((s.as_str(), "1"));
            let p = p
                .trim()
                .parse::<i64>()
                .map_err(|_| malformed(format!("bad rational {s:?}")))?;
            let q = q
                .trim()
                .parse::<u64>()
                .map_err(|_| malformed(format!("bad rational {s:?}")))?;
            if q == 0 {
                return Err(malformed(format!("zero denominator in {s:?}")));
            }
            Ok((p, q))
        }
        other => Err(malformed(format!("expected a number, got {other}"))),
    }
}

// ---------------------------------------------------------------- arrays

fn space_to_json(space: &Space) -> Value {
    json!({"dim": space.dim(), "metric": space.metric().name()})
}

fn parse_space(v: &Value) -> Result<Space> {
    let dim = field(v, "dim")?
        .as_u64()
        .ok_or_else(|| malformed("space.dim must be a positive integer"))?;
    let metric = match v.get("metric") {
        None => Metric::Euclidean,
        Some(m) => {
            let name = m
                .as_str()
                .ok_or_else(|| malformed("space.metric must be a string"))?;
            Metric::from_name(name).ok_or_else(|| malformed(format!("unknown metric {name:?}")))?
        }
    };
    Space::new(dim as usize, metric).map_err(|_| malformed("space.dim must be positive"))
}

fn parse_token(v: &Value, squared: bool) -> Result<DistanceToken> {
    let is_rational_string = matches!(v, Value::String(s) if s.contains('/'));
    let (p, q) = parse_ratio(v)?;
    if p <= 0 {
        return Err(Error::NonpositiveDistance);
    }
    let p = p as u64;
    if is_rational_string {
        if squared {
            return Err(malformed("squared distances must be integers"));
        }
        return DistanceToken::rational(p, q);
    }
    if squared {
        DistanceToken::squared(p)
    } else {
        DistanceToken::integer(p)
    }
}

/// Parse an array document. Columns are the per-color forbidden lists.
pub fn parse_array(text: &str) -> Result<RestrictionArray> {
    array_from_value(&parse_json(text)?)
}

pub fn array_from_value(doc: &Value) -> Result<RestrictionArray> {
    check_format(doc, ARRAY_FORMAT)?;
    let space = parse_space(field(doc, "space")?)?;
    let squared = match doc.get("squared") {
        None => false,
        Some(b) => b
            .as_bool()
            .ok_or_else(|| malformed("squared must be a boolean"))?,
    };
    let columns = field(doc, "columns")?
        .as_array()
        .ok_or_else(|| malformed("columns must be an array"))?;
    let mut parsed = Vec::with_capacity(columns.len());
    for col in columns {
        let entries = col
            .as_array()
            .ok_or_else(|| malformed("each column must be an array"))?;
        parsed.push(
            entries
                .iter()
                .map(|e| parse_token(e, squared))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    if squared != space.uses_squared_tokens() {
        let kind = if squared {
            TokenKind::Squared
        } else {
            TokenKind::Integer
        };
        return Err(Error::IncompatibleToken { kind, space });
    }
    RestrictionArray::new(space, parsed)
}

fn token_to_json(t: &DistanceToken) -> Value {
    match t.kind() {
        TokenKind::Rational => Value::String(format!("{}/{}", t.numer(), t.denom())),
        _ => json!(t.numer()),
    }
}

pub fn array_to_value(array: &RestrictionArray) -> Value {
    let columns: Vec<Value> = array
        .columns()
        .iter()
        .map(|c| Value::Array(c.iter().map(token_to_json).collect()))
        .collect();
    json!({
        "format": ARRAY_FORMAT,
        "space": space_to_json(array.space()),
        "squared": array.space().uses_squared_tokens(),
        "columns": columns,
    })
}

pub fn write_array(array: &RestrictionArray) -> String {
    to_pretty(&array_to_value(array))
}

fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

// ---------------------------------------------------------------- windows

pub fn window_to_value(w: &Window) -> Value {
    json!({"lo": w.lo(), "hi": w.hi()})
}

pub fn window_from_value(space: Space, v: &Value) -> Result<Window> {
    let lo: Vec<i64> = from_value(field(v, "lo")?, "window.lo")?;
    let hi: Vec<i64> = from_value(field(v, "hi")?, "window.hi")?;
    Window::new(space, lo, hi)
}

// ---------------------------------------------------------------- certificates

#[derive(Serialize, Deserialize)]
struct SearchSummary {
    nodes: u64,
    exhausted: bool,
}

#[derive(Serialize, Deserialize)]
struct PeriodicDoc {
    period: usize,
    residues: Vec<u32>,
}

pub fn certificate_to_value(cert: &Certificate) -> Value {
    let payload = match &cert.payload {
        Payload::Coloring(c) => json!({"colors": c.colors()}),
        Payload::Periodic(g) => json!({"period": g.period(), "residues": g.residues()}),
        Payload::Exhausted(a) => serde_json::to_value(a).expect("plain struct"),
        Payload::Budget(b) => serde_json::to_value(b).expect("plain struct"),
    };
    let mut doc = Map::new();
    doc.insert("format".into(), json!(CERT_FORMAT));
    doc.insert("verdict".into(), json!(cert.verdict.tag()));
    doc.insert("array".into(), array_to_value(&cert.array));
    doc.insert(
        "window".into(),
        cert.window.as_ref().map_or(Value::Null, window_to_value),
    );
    doc.insert("payload".into(), payload);
    doc.insert(
        "search".into(),
        serde_json::to_value(SearchSummary {
            nodes: cert.nodes,
            exhausted: cert.exhausted(),
        })
        .expect("plain struct"),
    );
    doc.insert("seed".into(), json!(cert.seed));
    doc.insert(
        "provenance".into(),
        json!(if cert.resample.is_some() {
            "heuristic"
        } else {
            "exact"
        }),
    );
    if let Some(stats) = &cert.resample {
        doc.insert(
            "resample".into(),
            serde_json::to_value(stats).expect("plain struct"),
        );
    }
    doc.insert("version".into(), json!(cert.version));
    Value::Object(doc)
}

pub fn write_certificate(cert: &Certificate) -> String {
    to_pretty(&certificate_to_value(cert))
}

pub fn parse_certificate(text: &str) -> Result<Certificate> {
    let doc = parse_json(text)?;
    check_format(&doc, CERT_FORMAT)?;
    let tag = field(&doc, "verdict")?
        .as_str()
        .ok_or_else(|| malformed("verdict must be a string"))?;
    let verdict =
        Verdict::from_tag(tag).ok_or_else(|| malformed(format!("unknown verdict {tag:?}")))?;
    let array = array_from_value(field(&doc, "array")?)?;
    let window = match doc.get("window") {
        None | Some(Value::Null) => None,
        Some(w) => Some(window_from_value(*array.space(), w)?),
    };
    let raw = field(&doc, "payload")?;
    let payload = match verdict {
        Verdict::Sat => {
            let colors: Vec<u32> = from_value(field(raw, "colors")?, "payload.colors")?;
            let w = window
                .clone()
                .ok_or_else(|| malformed("sat certificate without window"))?;
            Payload::Coloring(Coloring::new(w, colors)?)
        }
        Verdict::Periodic => {
            let p: PeriodicDoc = from_value(raw, "payload")?;
            if p.period != p.residues.len() {
                return Err(malformed("period does not match the residue count"));
            }
            Payload::Periodic(PeriodicColoring::new(p.residues)?)
        }
        Verdict::Unsat => Payload::Exhausted(from_value::<SearchAttestation>(raw, "payload")?),
        Verdict::Unknown => Payload::Budget(from_value::<BudgetReport>(raw, "payload")?),
    };
    let search: SearchSummary = from_value(field(&doc, "search")?, "search")?;
    let seed = match doc.get("seed") {
        None | Some(Value::Null) => None,
        Some(s) => Some(from_value::<u64>(s, "seed")?),
    };
    let resample = match doc.get("resample") {
        None | Some(Value::Null) => None,
        Some(r) => Some(from_value::<ResampleStats>(r, "resample")?),
    };
    let version = field(&doc, "version")?
        .as_str()
        .ok_or_else(|| malformed("version must be a string"))?
        .to_string();
    Ok(Certificate {
        verdict,
        array,
        window,
        payload,
        nodes: search.nodes,
        seed,
        resample,
        version,
    })
}

// ---------------------------------------------------------------- point sets

fn rational_string(r: &num_rational::Rational64) -> Value {
    if *r.denom() == 1 {
        json!(r.numer())
    } else {
        Value::String(format!("{}/{}", r.numer(), r.denom()))
    }
}

fn parse_rational(v: &Value) -> Result<num_rational::Rational64> {
    let (p, q) = parse_ratio(v)?;
    let q = i64::try_from(q).map_err(|_| Error::Overflow)?;
    Ok(num_rational::Rational64::new(p, q))
}

pub fn points_to_value(set: &PointSet) -> Value {
    let points: Value = match set.coords() {
        Coordinates::Integer(p) => json!(p),
        Coordinates::Rational(p) => p
            .iter()
            .map(|pt| pt.iter().map(rational_string).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .into(),
        Coordinates::QSqrt5(p) => p
            .iter()
            .map(|pt| {
                pt.iter()
                    .map(|x| json!([rational_string(&x.a), rational_string(&x.b)]))
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>()
            .into(),
        Coordinates::Polygon { sides } => json!((0..*sides).map(|j| [j]).collect::<Vec<_>>()),
    };
    let mut doc = json!({
        "format": POINTS_FORMAT,
        "field": set.field().tag(),
        "points": points,
    });
    if let Coordinates::Polygon { sides } = set.coords() {
        doc["sides"] = json!(sides);
    }
    doc
}

pub fn write_points(set: &PointSet) -> String {
    to_pretty(&points_to_value(set))
}

pub fn parse_points(text: &str) -> Result<PointSet> {
    let doc = parse_json(text)?;
    check_format(&doc, POINTS_FORMAT)?;
    let tag = field(&doc, "field")?
        .as_str()
        .ok_or_else(|| malformed("field must be a string"))?;
    let raw = field(&doc, "points")?
        .as_array()
        .ok_or_else(|| malformed("points must be an array"))?;
    let rows = raw
        .iter()
        .map(|p| {
            p.as_array()
                .ok_or_else(|| malformed("each point must be an array"))
        })
        .collect::<Result<Vec<_>>>()?;
    let coords = match tag {
        "int" => Coordinates::Integer(from_value(&Value::Array(raw.clone()), "points")?),
        "rat" => Coordinates::Rational(
            rows.iter()
                .map(|p| p.iter().map(parse_rational).collect())
                .collect::<Result<_>>()?,
        ),
        "q-sqrt5" => Coordinates::QSqrt5(
            rows.iter()
                .map(|p| {
                    p.iter()
                        .map(|x| match x.as_array().map(Vec::as_slice) {
                            Some([a, b]) => Ok(QSqrt5::new(parse_rational(a)?, parse_rational(b)?)),
                            _ => Err(malformed("q-sqrt5 coordinates are [a, b] pairs")),
                        })
                        .collect()
                })
                .collect::<Result<_>>()?,
        ),
        "polygon" => {
            let sides = field(&doc, "sides")?
                .as_u64()
                .ok_or_else(|| malformed("sides must be an integer"))?;
            Coordinates::Polygon {
                sides: sides as usize,
            }
        }
        other => return Err(malformed(format!("unknown field {other:?}"))),
    };
    PointSet::new(coords)
}

// ---------------------------------------------------------------- vector arrays

#[derive(Serialize, Deserialize)]
struct VectorsDoc {
    format: String,
    dim: usize,
    columns: Vec<Vec<Vec<i64>>>,
}

pub fn parse_vectors(text: &str) -> Result<VectorArray> {
    let doc = parse_json(text)?;
    check_format(&doc, VECTORS_FORMAT)?;
    let d: VectorsDoc = from_value(&doc, "vector array")?;
    VectorArray::new(d.dim, d.columns)
}

pub fn write_vectors(v: &VectorArray) -> String {
    let doc = VectorsDoc {
        format: VECTORS_FORMAT.into(),
        dim: v.dim(),
        columns: v.columns().to_vec(),
    };
    to_pretty(&serde_json::to_value(doc).expect("plain struct"))
}

pub fn lift_to_value(lift: &Lift, lambda: &[i64]) -> Value {
    json!({
        "format": LIFT_FORMAT,
        "lambda": lambda,
        "window": window_to_value(lift.coloring.window()),
        "colors": lift.coloring.colors(),
        "violations": lift.violations,
    })
}
