//! JSON documents with a `kind` discriminator and a canonical writer.
//!
//! Every document is an object carrying `"kind"` and `"version": 1`. Real
//! numbers may be written either as JSON numbers or as exact records
//! `{"a": .., "b": .., "c": .., "d": ..}` meaning `(a + b sqrt d) / c`.
//! The writer sorts keys and prints floats as `{:.16e}` so that output is
//! byte-for-byte reproducible.

use std::fmt::Write as _;

use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use super::quadratic::QuadraticLiteral;
use crate::error::{HyperError, Result};
use crate::fusion::FusionRing;
use crate::group::CayleyGroup;
use crate::groupoid::{BoundaryState, Hypergroupoid};
use crate::hypergroup::{Axiom, HypergroupTable, ValidationReport, Violation};
use crate::quantize::{AdmissibleIndexSet, AdmissibleValue};
use crate::reprs::{CharacterTable, C64};
use crate::tensor::Tensor3;

pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Plain(f64),
    Exact(QuadraticLiteral),
}

impl Number {
    pub fn value(&self) -> Result<f64> {
        match self {
            Number::Plain(x) => Ok(*x),
            Number::Exact(q) => {
                q.check()?;
                Ok(q.value())
            }
        }
    }
}

/// A boundary state with phases and arrows spelled out by name.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateRecord {
    pub to: String,
    pub from: String,
    pub arrows: Vec<String>,
    pub coeffs: Vec<f64>,
}

impl StateRecord {
    pub fn from_state(g: &Hypergroupoid, s: &BoundaryState) -> Self {
        Self {
            to: g.objects()[s.to].clone(),
            from: g.objects()[s.from].clone(),
            arrows: g.arrows(s.to, s.from).to_vec(),
            coeffs: s.coeffs.clone(),
        }
    }

    fn to_value(&self) -> Value {
        json!({
            "to": self.to,
            "from": self.from,
            "arrows": self.arrows,
            "coeffs": floats(&self.coeffs),
        })
    }
}

/// Result of a juxtaposition chain, with the intermediate partial products.
#[derive(Debug, Clone, PartialEq)]
pub struct StateDocument {
    pub result: StateRecord,
    pub steps: Vec<StateRecord>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DualOutcome {
    Hypergroup(HypergroupTable),
    Failure { triple: (usize, usize, usize), value: f64 },
    NotComputed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CharacterAnalysis {
    pub characters: CharacterTable,
    pub unitarity_defect: f64,
    pub dual: DualOutcome,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    Hypergroup(HypergroupTable),
    FusionRing(FusionRing),
    Group(CayleyGroup),
    Hypergroupoid(Hypergroupoid),
    CharacterTable(CharacterTable),
    ValidationReport(ValidationReport),
    BoundaryState(StateDocument),
    AdmissibleIndices(AdmissibleIndexSet),
    CharacterAnalysis(CharacterAnalysis),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Hypergroup(_) => "hypergroup",
            Document::FusionRing(_) => "fusion-ring",
            Document::Group(_) => "group",
            Document::Hypergroupoid(_) => "hypergroupoid",
            Document::CharacterTable(_) => "character-table",
            Document::ValidationReport(_) => "validation-report",
            Document::BoundaryState(_) => "boundary-state",
            Document::AdmissibleIndices(_) => "admissible-indices",
            Document::CharacterAnalysis(_) => "character-analysis",
        }
    }

    pub fn to_value(&self) -> Value {
        let body = match self {
            Document::Hypergroup(t) => hypergroup_body(t),
            Document::FusionRing(r) => json!({
                "labels": r.labels(),
                "unit": r.unit(),
                "conjugation": r.conjugation(),
                "n": r.coefficients(),
            }),
            Document::Group(g) => json!({
                "labels": g.labels(),
                "identity": g.identity(),
                "mul": g.table(),
            }),
            Document::Hypergroupoid(g) => groupoid_body(g),
            Document::CharacterTable(ct) => character_body(ct),
            Document::ValidationReport(r) => report_body(r),
            Document::BoundaryState(s) => {
                let mut body = s.result.to_value();
                body["steps"] = Value::Array(s.steps.iter().map(StateRecord::to_value).collect());
                body
            }
            Document::AdmissibleIndices(set) => admissible_body(set),
            Document::CharacterAnalysis(a) => {
                let dual = match &a.dual {
                    DualOutcome::Hypergroup(t) => hypergroup_body(t),
                    DualOutcome::Failure { triple, value } => json!({
                        "failure": {"triple": [triple.0, triple.1, triple.2], "value": value},
                    }),
                    DualOutcome::NotComputed => Value::Null,
                };
                json!({
                    "characters": character_body(&a.characters),
                    "unitarity_defect": a.unitarity_defect,
                    "dual": dual,
                })
            }
        };
        let mut body = body;
        body["kind"] = json!(self.kind());
        body["version"] = json!(FORMAT_VERSION);
        body
    }

    pub fn to_canonical_string(&self) -> String {
        to_canonical(&self.to_value())
    }
}

fn floats(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| json!(x)).collect())
}

fn tensor_value(t: &Tensor3) -> Value {
    json!(t.to_nested())
}

fn hypergroup_body(t: &HypergroupTable) -> Value {
    json!({
        "labels": t.labels(),
        "unit": t.unit(),
        "involution": t.involution(),
        "lambda": tensor_value(t.lambda()),
    })
}

fn groupoid_body(g: &Hypergroupoid) -> Value {
    let comp: Vec<Vec<Vec<Value>>> = g
        .comp()
        .iter()
        .map(|p| p.iter().map(|r| r.iter().map(tensor_value).collect()).collect())
        .collect();
    json!({
        "objects": g.objects(),
        "mor": g.mor(),
        "comp": comp,
        "star": g.star(),
        "units": g.units(),
    })
}

fn character_body(ct: &CharacterTable) -> Value {
    let chars: Vec<Vec<[f64; 2]>> = ct
        .chars
        .iter()
        .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
        .collect();
    json!({
        "labels": ct.labels,
        "characters": chars,
        "haar_weights": floats(&ct.haar_weights),
        "dual_weights": floats(&ct.dual_weights),
    })
}

fn violation_value(v: &Violation) -> Value {
    json!({"axiom": v.axiom.name(), "indices": v.indices, "magnitude": v.magnitude})
}

fn report_body(r: &ValidationReport) -> Value {
    json!({
        "passed": r.passed(),
        "violations": r.violations.iter().map(violation_value).collect::<Vec<_>>(),
        "warnings": r.warnings.iter().map(violation_value).collect::<Vec<_>>(),
    })
}

fn admissible_body(set: &AdmissibleIndexSet) -> Value {
    let values: Vec<Value> = set
        .values
        .iter()
        .map(|v| {
            json!({
                "value": v.value,
                "witness": v.witness,
                "integer": v.is_integer(1e-9),
            })
        })
        .collect();
    json!({
        "bound": set.bound,
        "n_max": set.n_max,
        "values": values,
        "continuum": set.continuum.map(|(lo, hi)| vec![lo, hi]),
    })
}

// ---------------------------------------------------------------------------
// Canonical writer

pub fn to_canonical(value: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, value, 0);
    out.push('\n');
    out
}

fn format_float(x: f64) -> String {
    if x == 0.0 {
        return format!("{:.16e}", 0.0);
    }
    format!("{x:.16e}")
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                let _ = write!(out, "{i}");
            } else if let Some(u) = n.as_u64() {
                let _ = write!(out, "{u}");
            } else {
                out.push_str(&format_float(n.as_f64().unwrap_or(f64::NAN)));
            }
        }
        Value::String(s) => out.push_str(&serde_json::to_string(s).expect("strings serialize")),
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if items.iter().all(is_scalar) => {
            out.push('[');
            for (k, item) in items.iter().enumerate() {
                if k > 0 {
                    out.push_str(", ");
                }
                write_value(out, item, indent);
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (k, item) in items.iter().enumerate() {
                pad(out, indent + 2);
                write_value(out, item, indent + 2);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(out, indent);
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push_str("{\n");
            for (k, key) in keys.iter().enumerate() {
                pad(out, indent + 2);
                out.push_str(&serde_json::to_string(key).expect("strings serialize"));
                out.push_str(": ");
                write_value(out, &map[key.as_str()], indent + 2);
                out.push_str(if k + 1 < keys.len() { ",\n" } else { "\n" });
            }
            pad(out, indent);
            out.push('}');
        }
    }
}

fn pad(out: &mut String, n: usize) {
    out.extend(std::iter::repeat_n(' ', n));
}

// ---------------------------------------------------------------------------
// Parsing

fn schema<T: DeserializeOwned>(kind: &str, body: Value) -> Result<T> {
    serde_json::from_value(body).map_err(|e| HyperError::Parse(format!("{kind} document: {e}")))
}

fn numbers3(kind: &str, raw: &[Vec<Vec<Number>>]) -> Result<Tensor3> {
    let nested = raw
        .iter()
        .map(|p| {
            p.iter()
                .map(|r| r.iter().map(Number::value).collect::<Result<Vec<f64>>>())
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Tensor3::from_nested(&nested)
        .ok_or_else(|| HyperError::Structural(format!("{kind} document has a ragged coefficient array")))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HypergroupDoc {
    labels: Vec<String>,
    unit: usize,
    #[serde(default)]
    involution: Option<Vec<usize>>,
    lambda: Vec<Vec<Vec<Number>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FusionRingDoc {
    labels: Vec<String>,
    unit: usize,
    #[serde(default)]
    conjugation: Option<Vec<usize>>,
    n: Vec<Vec<Vec<u64>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupDoc {
    labels: Vec<String>,
    identity: usize,
    mul: Vec<Vec<usize>>,
}

type RawTensor = Vec<Vec<Vec<Number>>>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupoidDoc {
    objects: Vec<String>,
    mor: Vec<Vec<Vec<String>>>,
    comp: Vec<Vec<Vec<RawTensor>>>,
    star: Vec<Vec<Vec<usize>>>,
    units: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CharacterDoc {
    labels: Vec<String>,
    characters: Vec<Vec<[f64; 2]>>,
    haar_weights: Vec<f64>,
    dual_weights: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ViolationDoc {
    axiom: String,
    indices: Vec<usize>,
    magnitude: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ReportDoc {
    #[allow(dead_code)]
    passed: bool,
    violations: Vec<ViolationDoc>,
    warnings: Vec<ViolationDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StateDoc {
    to: String,
    from: String,
    arrows: Vec<String>,
    coeffs: Vec<f64>,
    #[serde(default)]
    steps: Vec<StateRecord>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AdmissibleValueDoc {
    value: f64,
    witness: Vec<u32>,
    #[allow(dead_code)]
    integer: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AdmissibleDoc {
    bound: f64,
    n_max: u32,
    values: Vec<AdmissibleValueDoc>,
    continuum: Option<[f64; 2]>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FailureDoc {
    triple: [usize; 3],
    value: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DualFailureDoc {
    failure: FailureDoc,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AnalysisDoc {
    characters: Value,
    unitarity_defect: f64,
    dual: Value,
}

fn hypergroup_from(body: Value, tol: f64) -> Result<HypergroupTable> {
    let doc: HypergroupDoc = schema("hypergroup", body)?;
    let lambda = numbers3("hypergroup", &doc.lambda)?;
    let table = match doc.involution {
        Some(inv) => HypergroupTable::new(doc.labels, doc.unit, inv, lambda)?,
        None => HypergroupTable::with_inferred_involution(doc.labels, doc.unit, lambda, tol)?,
    };
    table.validate(tol).into_result()?;
    Ok(table)
}

fn fusion_from(body: Value) -> Result<FusionRing> {
    let doc: FusionRingDoc = schema("fusion-ring", body)?;
    let conjugation = match doc.conjugation {
        Some(c) => c,
        None => infer_conjugation(&doc.n, doc.unit)?,
    };
    FusionRing::new(doc.labels, doc.unit, conjugation, doc.n)
}

fn infer_conjugation(n: &[Vec<Vec<u64>>], unit: usize) -> Result<Vec<usize>> {
    (0..n.len())
        .map(|i| {
            let hits: Vec<usize> = (0..n.len())
                .filter(|&j| n[i][j].get(unit).copied().unwrap_or(0) > 0)
                .collect();
            match hits.as_slice() {
                [j] => Ok(*j),
                _ => Err(HyperError::Parse(format!(
                    "cannot infer conjugate of element {i}: {} candidates",
                    hits.len()
                ))),
            }
        })
        .collect()
}

fn groupoid_from(body: Value, tol: f64) -> Result<Hypergroupoid> {
    let doc: GroupoidDoc = schema("hypergroupoid", body)?;
    let comp = doc
        .comp
        .iter()
        .map(|p| {
            p.iter()
                .map(|r| r.iter().map(|t| numbers3("hypergroupoid", t)).collect())
                .collect()
        })
        .collect::<Result<Vec<Vec<Vec<Tensor3>>>>>()?;
    let g = Hypergroupoid::new(doc.objects, doc.mor, comp, doc.star, doc.units)?;
    g.validate(tol).into_result()?;
    Ok(g)
}

fn characters_from(body: Value) -> Result<CharacterTable> {
    let doc: CharacterDoc = schema("character-table", body)?;
    let n = doc.labels.len();
    let ok = doc.characters.len() == n
        && doc.characters.iter().all(|r| r.len() == n)
        && doc.haar_weights.len() == n
        && doc.dual_weights.len() == n;
    if !ok {
        return Err(HyperError::Structural("character table must be square".into()));
    }
    Ok(CharacterTable {
        labels: doc.labels,
        chars: doc
            .characters
            .iter()
            .map(|r| r.iter().map(|&[re, im]| C64::new(re, im)).collect())
            .collect(),
        haar_weights: doc.haar_weights,
        dual_weights: doc.dual_weights,
    })
}

fn violation_from(v: ViolationDoc) -> Result<Violation> {
    let axiom = Axiom::from_name(&v.axiom)
        .ok_or_else(|| HyperError::Parse(format!("unknown axiom {:?}", v.axiom)))?;
    Ok(Violation {
        axiom,
        indices: v.indices,
        magnitude: v.magnitude,
    })
}

fn report_from(body: Value) -> Result<ValidationReport> {
    let doc: ReportDoc = schema("validation-report", body)?;
    Ok(ValidationReport {
        violations: doc.violations.into_iter().map(violation_from).collect::<Result<_>>()?,
        warnings: doc.warnings.into_iter().map(violation_from).collect::<Result<_>>()?,
    })
}

fn admissible_from(body: Value) -> Result<AdmissibleIndexSet> {
    let doc: AdmissibleDoc = schema("admissible-indices", body)?;
    Ok(AdmissibleIndexSet {
        bound: doc.bound,
        n_max: doc.n_max,
        values: doc
            .values
            .into_iter()
            .map(|v| AdmissibleValue {
                value: v.value,
                witness: v.witness,
            })
            .collect(),
        continuum: doc.continuum.map(|[lo, hi]| (lo, hi)),
    })
}

fn analysis_from(body: Value, tol: f64) -> Result<CharacterAnalysis> {
    let doc: AnalysisDoc = schema("character-analysis", body)?;
    let dual = match doc.dual {
        Value::Null => DualOutcome::NotComputed,
        Value::Object(ref m) if m.contains_key("failure") => {
            let f: DualFailureDoc = schema("character-analysis", doc.dual)?;
            let [a, b, c] = f.failure.triple;
            DualOutcome::Failure {
                triple: (a, b, c),
                value: f.failure.value,
            }
        }
        other => DualOutcome::Hypergroup(hypergroup_from(other, tol)?),
    };
    Ok(CharacterAnalysis {
        characters: characters_from(doc.characters)?,
        unitarity_defect: doc.unitarity_defect,
        dual,
    })
}

/// Parses any document kind. Tables and groupoids are validated at `tol`;
/// a table that fails an axiom yields [`HyperError::Axiom`].
pub fn parse_document(text: &str, tol: f64) -> Result<Document> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| HyperError::Parse(format!("invalid JSON: {e}")))?;
    let Value::Object(mut map) = value else {
        return Err(HyperError::Parse("document must be a JSON object".into()));
    };
    let kind = take_string(&mut map, "kind")?;
    match map.remove("version") {
        Some(v) if v.as_u64() == Some(FORMAT_VERSION) => {}
        Some(v) => return Err(HyperError::Parse(format!("unsupported document version {v}"))),
        None => return Err(HyperError::Parse("document has no version".into())),
    }
    let body = Value::Object(map);
    Ok(match kind.as_str() {
        "hypergroup" => Document::Hypergroup(hypergroup_from(body, tol)?),
        "fusion-ring" => Document::FusionRing(fusion_from(body)?),
        "group" => {
            let doc: GroupDoc = schema("group", body)?;
            Document::Group(CayleyGroup::new(doc.labels, doc.mul, doc.identity)?)
        }
        "hypergroupoid" => Document::Hypergroupoid(groupoid_from(body, tol)?),
        "character-table" => Document::CharacterTable(characters_from(body)?),
        "validation-report" => Document::ValidationReport(report_from(body)?),
        "boundary-state" => {
            let doc: StateDoc = schema("boundary-state", body)?;
            Document::BoundaryState(StateDocument {
                result: StateRecord {
                    to: doc.to,
                    from: doc.from,
                    arrows: doc.arrows,
                    coeffs: doc.coeffs,
                },
                steps: doc.steps,
            })
        }
        "admissible-indices" => Document::AdmissibleIndices(admissible_from(body)?),
        "character-analysis" => Document::CharacterAnalysis(analysis_from(body, tol)?),
        other => return Err(HyperError::Parse(format!("unknown document kind {other:?}"))),
    })
}

fn take_string(map: &mut Map<String, Value>, key: &str) -> Result<String> {
    match map.remove(key) {
        Some(Value::String(s)) => Ok(s),
        Some(_) => Err(HyperError::Parse(format!("field {key:?} must be a string"))),
        None => Err(HyperError::Parse(format!("document has no {key:?} field"))),
    }
}

pub fn parse_hypergroup(text: &str, tol: f64) -> Result<HypergroupTable> {
    match parse_document(text, tol)? {
        Document::Hypergroup(t) => Ok(t),
        other => Err(HyperError::Mismatch(format!(
            "expected a hypergroup document, found {}",
            other.kind()
        ))),
    }
}

pub fn write_hypergroup(table: &HypergroupTable) -> String {
    Document::Hypergroup(table.clone()).to_canonical_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::two_element;
    use crate::hypergroup::DEFAULT_TOL;

    const GHJ_EXACT: &str = r#"{
        "kind": "hypergroup", "version": 1,
        "labels": ["a0", "a1"], "unit": 0,
        "lambda": [
            [[1, 0], [0, 1]],
            [[0, 1], [{"a": 2, "b": -1, "c": 1, "d": 3}, {"a": -1, "b": 1, "c": 1, "d": 3}]]
        ]
    }"#;

    #[test]
    fn exact_literals_and_inferred_involution() {
        let t = parse_hypergroup(GHJ_EXACT, DEFAULT_TOL).unwrap();
        assert_eq!(t.involution(), &[0, 1]);
        let reference = two_element(2.0 - 3f64.sqrt()).unwrap();
        assert!(t.lambda().max_abs_diff(reference.lambda()).unwrap() < 1e-15);
    }

    #[test]
    fn canonical_round_trip() {
        let t = parse_hypergroup(GHJ_EXACT, DEFAULT_TOL).unwrap();
        let text = write_hypergroup(&t);
        let back = parse_hypergroup(&text, DEFAULT_TOL).unwrap();
        assert_eq!(back, t);
        assert_eq!(write_hypergroup(&back), text);
    }

    #[test]
    fn negative_coefficient_is_reported() {
        let text = GHJ_EXACT.replace(r#"[[1, 0], [0, 1]]"#, r#"[[1.5, -0.5], [0, 1]]"#);
        match parse_hypergroup(&text, DEFAULT_TOL) {
            Err(HyperError::Axiom(report)) => assert!(report.has(Axiom::Nonnegativity)),
            other => panic!("expected axiom error, got {other:?}"),
        }
    }

    #[test]
    fn schema_errors() {
        assert!(matches!(parse_document("[]", 1e-9), Err(HyperError::Parse(_))));
        assert!(matches!(
            parse_document(r#"{"kind": "hypergroup"}"#, 1e-9),
            Err(HyperError::Parse(_))
        ));
        assert!(matches!(
            parse_document(r#"{"kind": "widget", "version": 1}"#, 1e-9),
            Err(HyperError::Parse(_))
        ));
        let bad_literal = GHJ_EXACT.replace(r#""c": 1, "d": 3}, {"a": -1"#, r#""c": 0, "d": 3}, {"a": -1"#);
        assert!(parse_hypergroup(&bad_literal, 1e-9).is_err());
    }

    #[test]
    fn float_formatting() {
        assert_eq!(format_float(1.0), "1.0000000000000000e0");
        assert_eq!(format_float(-0.0), "0.0000000000000000e0");
        assert_eq!(format_float(0.25), "2.5000000000000000e-1");
    }
}
