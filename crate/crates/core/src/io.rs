//! JSON formats for matrices, state vectors and models.
//!
//! Numbers are written in shortest round-trip form, with integral values
//! written without a fractional part, so `load(save(x)) == x` and saving a
//! loaded file is byte-stable.

use std::path::Path;

use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::algebra::SuperMatrix;
use crate::error::Error;
use crate::fuzzy::{StateDomain, SuperStateVector};
use crate::models::{ModelKind, ModelSpec, Variant};
use crate::partition::PartitionScheme;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("validation failed:\n{}", format_violations(.0))]
    Validation(Vec<PathError>),
}

/// One validation problem, located by JSON path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathError {
    pub path: String,
    pub message: String,
}

fn format_violations(v: &[PathError]) -> String {
    v.iter()
        .map(|e| format!("  {}: {}", e.path, e.message))
        .collect::<Vec<_>>()
        .join("\n")
}

fn schema(path: impl Into<String>, e: impl ToString) -> LoadError {
    LoadError::Schema {
        path: path.into(),
        message: e.to_string(),
    }
}

/// Integral values as integers, everything else in shortest round-trip form.
fn canonical_nums<S: Serializer>(values: &[f64], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(values.len()))?;
    for &v in values {
        if v.fract() == 0.0 && v.abs() < 9.0e15 {
            seq.serialize_element(&(v as i64))?;
        } else {
            seq.serialize_element(&v)?;
        }
    }
    seq.end()
}

fn canonical_opt_nums<S: Serializer>(values: &Option<Vec<f64>>, s: S) -> Result<S::Ok, S::Error> {
    match values {
        Some(v) => canonical_nums(v, s),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub row_cuts: Vec<usize>,
    pub col_cuts: Vec<usize>,
    #[serde(serialize_with = "canonical_nums")]
    pub entries: Vec<f64>,
}

impl From<&SuperMatrix> for MatrixJson {
    fn from(m: &SuperMatrix) -> Self {
        MatrixJson {
            rows: m.rows(),
            cols: m.cols(),
            row_cuts: m.scheme().row_cuts.clone(),
            col_cuts: m.scheme().col_cuts.clone(),
            entries: m.entries().to_vec(),
        }
    }
}

impl MatrixJson {
    /// `prefix` is the JSON path of this object, for error messages.
    fn into_matrix(self, prefix: &str) -> Result<SuperMatrix, LoadError> {
        let at = |field: &str| {
            if prefix.is_empty() {
                field.to_string()
            } else {
                format!("{prefix}.{field}")
            }
        };
        let scheme = PartitionScheme::new(self.row_cuts, self.col_cuts);
        SuperMatrix::new(self.rows, self.cols, self.entries, scheme).map_err(|e| {
            let field = match &e {
                Error::OutOfRangeCut { axis, .. }
                | Error::UnsortedCuts { axis, .. }
                | Error::DuplicateCut { axis, .. } => match axis {
                    crate::error::Axis::Row => "row_cuts",
                    crate::error::Axis::Col => "col_cuts",
                },
                Error::EmptyMatrix { .. } => "rows",
                _ => "entries",
            };
            schema(at(field), e)
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum DomainTag {
    Binary,
    Bipolar,
    Scaled,
    Fuzzy,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateJson {
    domain: DomainTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    scale: Option<u32>,
    cuts: Vec<usize>,
    #[serde(serialize_with = "canonical_nums")]
    values: Vec<f64>,
}

impl From<&SuperStateVector> for StateJson {
    fn from(v: &SuperStateVector) -> Self {
        let (domain, scale) = match v.domain() {
            StateDomain::Binary => (DomainTag::Binary, None),
            StateDomain::Bipolar => (DomainTag::Bipolar, None),
            StateDomain::Scaled(m) => (DomainTag::Scaled, Some(m)),
            StateDomain::Fuzzy => (DomainTag::Fuzzy, None),
        };
        StateJson {
            domain,
            scale,
            cuts: v.cuts().to_vec(),
            values: v.values().to_vec(),
        }
    }
}

impl StateJson {
    fn into_state(self) -> Result<SuperStateVector, LoadError> {
        let domain = match (self.domain, self.scale) {
            (DomainTag::Scaled, Some(m)) => StateDomain::Scaled(m),
            (DomainTag::Scaled, None) => return Err(schema("scale", "scaled domain needs a scale")),
            (_, Some(_)) => return Err(schema("scale", "scale is only allowed with the scaled domain")),
            (DomainTag::Binary, None) => StateDomain::Binary,
            (DomainTag::Bipolar, None) => StateDomain::Bipolar,
            (DomainTag::Fuzzy, None) => StateDomain::Fuzzy,
        };
        SuperStateVector::new(domain, self.values, self.cuts).map_err(|e| match &e {
            Error::DomainViolation { index, .. } => schema(format!("values[{index}]"), e),
            Error::EmptyMatrix { .. } => schema("values", e),
            _ => schema("cuts", e),
        })
    }
}

fn is_one(x: &u32) -> bool {
    *x == 1
}

fn one() -> u32 {
    1
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelJson {
    kind: ModelKind,
    variant: Variant,
    matrix: MatrixJson,
    #[serde(default)]
    domain_labels: Vec<Vec<String>>,
    #[serde(default)]
    range_labels: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    scale: Option<u32>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        serialize_with = "canonical_opt_nums"
    )]
    thresholds_u: Option<Vec<f64>>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        serialize_with = "canonical_opt_nums"
    )]
    thresholds_v: Option<Vec<f64>>,
    /// number of single-expert maps summed into this one (combined models)
    #[serde(default = "one", skip_serializing_if = "is_one")]
    summed_maps: u32,
}

impl From<&ModelSpec> for ModelJson {
    fn from(m: &ModelSpec) -> Self {
        ModelJson {
            kind: m.kind,
            variant: m.variant,
            matrix: (&m.connection).into(),
            domain_labels: m.domain_labels.clone(),
            range_labels: m.range_labels.clone(),
            scale: m.scale,
            thresholds_u: m.thresholds_u.clone(),
            thresholds_v: m.thresholds_v.clone(),
            summed_maps: m.summed_maps,
        }
    }
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, LoadError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if inner.is_data() {
            schema(path, inner)
        } else {
            LoadError::Parse {
                line: inner.line(),
                column: inner.column(),
                message: inner.to_string(),
            }
        }
    })?;
    Ok(value)
}

fn read(path: &Path) -> Result<String, LoadError> {
    std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn parse_matrix(text: &str) -> Result<SuperMatrix, LoadError> {
    parse::<MatrixJson>(text)?.into_matrix("")
}

pub fn parse_scheme(text: &str) -> Result<PartitionScheme, LoadError> {
    parse(text)
}

pub fn parse_state(text: &str) -> Result<SuperStateVector, LoadError> {
    parse::<StateJson>(text)?.into_state()
}

/// Parses and validates a model; every violation is reported with its path.
pub fn parse_model(text: &str) -> Result<ModelSpec, LoadError> {
    let j: ModelJson = parse(text)?;
    let spec = ModelSpec {
        kind: j.kind,
        variant: j.variant,
        connection: j.matrix.into_matrix("matrix")?,
        domain_labels: j.domain_labels,
        range_labels: j.range_labels,
        scale: j.scale,
        thresholds_u: j.thresholds_u,
        thresholds_v: j.thresholds_v,
        summed_maps: j.summed_maps,
    };
    let cols = spec.connection.cols();
    let violations = spec.validate();
    if violations.is_empty() {
        Ok(spec)
    } else {
        Err(LoadError::Validation(
            violations
                .iter()
                .map(|v| PathError {
                    path: v.path(cols),
                    message: v.to_string(),
                })
                .collect(),
        ))
    }
}

pub fn load_matrix(path: impl AsRef<Path>) -> Result<SuperMatrix, LoadError> {
    parse_matrix(&read(path.as_ref())?)
}

pub fn load_state(path: impl AsRef<Path>) -> Result<SuperStateVector, LoadError> {
    parse_state(&read(path.as_ref())?)
}

pub fn load_model(path: impl AsRef<Path>) -> Result<ModelSpec, LoadError> {
    parse_model(&read(path.as_ref())?)
}

pub fn matrix_to_json(m: &SuperMatrix) -> String {
    serde_json::to_string(&MatrixJson::from(m)).expect("matrix serialization cannot fail")
}

pub fn scheme_to_json(s: &PartitionScheme) -> String {
    serde_json::to_string(s).expect("scheme serialization cannot fail")
}

pub fn state_to_json(v: &SuperStateVector) -> String {
    serde_json::to_string(&StateJson::from(v)).expect("state serialization cannot fail")
}

pub fn state_to_value(v: &SuperStateVector) -> serde_json::Value {
    serde_json::to_value(StateJson::from(v)).expect("state serialization cannot fail")
}

pub fn model_to_json(m: &ModelSpec) -> String {
    serde_json::to_string(&ModelJson::from(m)).expect("model serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn matrix_round_trip() {
        let m = SuperMatrix::from_rows(&[[1.0, -2.0, 0.3], [0.0, 4.5, 1e-3]])
            .unwrap()
            .with_cuts(vec![1], vec![2])
            .unwrap();
        let text = matrix_to_json(&m);
        assert_eq!(
            text,
            r#"{"rows":2,"cols":3,"row_cuts":[1],"col_cuts":[2],"entries":[1,-2,0.3,0,4.5,0.001]}"#
        );
        assert_eq!(parse_matrix(&text).unwrap(), m);
    }

    #[test]
    fn matrix_errors() {
        let bad_len = r#"{"rows":2,"cols":2,"row_cuts":[],"col_cuts":[],"entries":[1,2,3]}"#;
        match parse_matrix(bad_len) {
            Err(LoadError::Schema { path, .. }) => assert_eq!(path, "entries"),
            other => panic!("{other:?}"),
        }
        let bad_cut = r#"{"rows":2,"cols":2,"row_cuts":[2],"col_cuts":[],"entries":[1,2,3,4]}"#;
        assert!(matches!(parse_matrix(bad_cut), Err(LoadError::Schema { path, .. }) if path == "row_cuts"));
        let bad_type = r#"{"rows":2,"cols":2,"row_cuts":[],"col_cuts":[],"entries":[1,"x",3,4]}"#;
        assert!(matches!(parse_matrix(bad_type), Err(LoadError::Schema { path, .. }) if path == "entries[1]"));
        assert!(matches!(parse_matrix("{\"rows\":"), Err(LoadError::Parse { .. })));
        let extra = r#"{"rows":1,"cols":1,"row_cuts":[],"col_cuts":[],"entries":[1],"x":1}"#;
        assert!(matches!(parse_matrix(extra), Err(LoadError::Schema { .. })));
    }

    #[test]
    fn state_round_trip() {
        let v = SuperStateVector::new(StateDomain::Scaled(4), vec![2.0, -4.0, 0.0], vec![1]).unwrap();
        let text = state_to_json(&v);
        assert_eq!(text, r#"{"domain":"scaled","scale":4,"cuts":[1],"values":[2,-4,0]}"#);
        assert_eq!(parse_state(&text).unwrap(), v);
        assert!(matches!(
            parse_state(r#"{"domain":"scaled","cuts":[],"values":[1]}"#),
            Err(LoadError::Schema { path, .. }) if path == "scale"
        ));
        assert!(matches!(
            parse_state(r#"{"domain":"binary","cuts":[],"values":[1,2]}"#),
            Err(LoadError::Schema { path, .. }) if path == "values[1]"
        ));
        assert!(matches!(
            parse_state(r#"{"domain":"ternary","cuts":[],"values":[1]}"#),
            Err(LoadError::Schema { path, .. }) if path == "domain"
        ));
    }

    #[test]
    fn model_round_trip_and_validation() {
        let text = r#"{"kind":"fcm","variant":"super_diagonal",
            "matrix":{"rows":3,"cols":3,"row_cuts":[1],"col_cuts":[1],"entries":[0,0,0, 0,0,1, 0,-1,0]},
            "domain_labels":[["a"],["b","c"]],"range_labels":[]}"#;
        let m = parse_model(text).unwrap();
        assert_eq!(m.kind, ModelKind::Fcm);
        let again = parse_model(&model_to_json(&m)).unwrap();
        assert_eq!(again, m);

        let bad = text.replace("0,0,0, 0,0,1", "0,1,0, 0,0,1");
        match parse_model(&bad) {
            Err(LoadError::Validation(v)) => {
                assert_eq!(v.len(), 1);
                assert_eq!(v[0].path, "matrix.entries[1]");
                assert!(v[0].message.contains("off-diagonal"));
            }
            other => panic!("{other:?}"),
        }
        let bad_kind = text.replace("\"fcm\"", "\"xyz\"");
        assert!(matches!(parse_model(&bad_kind), Err(LoadError::Schema { path, .. }) if path == "kind"));
        let bad_len = text.replace("0,-1,0]", "0,-1]");
        assert!(matches!(parse_model(&bad_len), Err(LoadError::Schema { path, .. }) if path == "matrix.entries"));
    }

    #[test]
    fn bam_model_fields() {
        let text = r#"{"kind":"bam","variant":"plain",
            "matrix":{"rows":1,"cols":2,"row_cuts":[],"col_cuts":[],"entries":[3,-2]},
            "scale":3,"thresholds_u":[0.5],"thresholds_v":[0,1]}"#;
        let m = parse_model(text).unwrap();
        assert_eq!(m.thresholds_u, Some(vec![0.5]));
        assert_eq!(parse_model(&model_to_json(&m)).unwrap(), m);
        let no_scale = text.replace("\"scale\":3,", "");
        match parse_model(&no_scale) {
            Err(LoadError::Validation(v)) => assert!(v.iter().any(|e| e.path == "scale")),
            other => panic!("{other:?}"),
        }
    }

    proptest! {
        #[test]
        fn matrix_json_round_trip(r in 1usize..5, c in 1usize..5,
                                  vals in proptest::collection::vec(-1e6f64..1e6, 16),
                                  ints in proptest::collection::vec(-50i32..50, 16), cut in 0usize..4) {
            let entries: Vec<f64> = (0..r * c).map(|i| if i % 2 == 0 { vals[i] } else { f64::from(ints[i]) }).collect();
            let cuts = if cut > 0 && cut < r { vec![cut] } else { vec![] };
            let m = SuperMatrix::new(r, c, entries, PartitionScheme::new(cuts, vec![])).unwrap();
            let text = matrix_to_json(&m);
            let back = parse_matrix(&text).unwrap();
            prop_assert_eq!(&back, &m);
            prop_assert_eq!(matrix_to_json(&back), text);
        }
    }
}
