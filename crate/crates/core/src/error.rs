use thiserror::Error;

use crate::models::ModelViolation;

/// Which dimension a cut list belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Row,
    Col,
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Axis::Row => f.write_str("row"),
            Axis::Col => f.write_str("column"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{axis} cut {cut} out of range 1..={max}")]
    OutOfRangeCut { axis: Axis, cut: usize, max: usize },
    #[error("{axis} cuts are not sorted ascending: {cuts:?}")]
    UnsortedCuts { axis: Axis, cuts: Vec<usize> },
    #[error("duplicate {axis} cut {cut}")]
    DuplicateCut { axis: Axis, cut: usize },
    #[error("matrix must have at least one row and one column (got {rows}x{cols})")]
    EmptyMatrix { rows: usize, cols: usize },
    #[error("expected {expected} entries, found {found}")]
    EntryCount { expected: usize, found: usize },
    #[error("entry {index} is NaN")]
    NanEntry { index: usize },
    #[error("block list is empty")]
    EmptyBlockList,
    #[error("block {index} carries internal cuts")]
    PartitionedBlock { index: usize },
    #[error("{op}: shape mismatch {left:?} vs {right:?}")]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("partition schemes differ: rows {left_rows:?}/{right_rows:?}, cols {left_cols:?}/{right_cols:?}")]
    SchemeMismatch {
        left_rows: Vec<usize>,
        left_cols: Vec<usize>,
        right_rows: Vec<usize>,
        right_cols: Vec<usize>,
    },
    #[error("blocks not conformable: left col_cuts {left_col_cuts:?} != right row_cuts {right_row_cuts:?}")]
    BlockMismatch {
        left_col_cuts: Vec<usize>,
        right_row_cuts: Vec<usize>,
    },
    #[error("entry {index} = {value} outside [0, 1]")]
    RangeViolation { index: usize, value: f64 },
    #[error("entry {index} = {value} not in the {domain} domain")]
    DomainViolation { index: usize, value: f64, domain: String },
    #[error("fit entry {index} = {value} outside scale [-{scale}, {scale}]")]
    ScaleViolation { index: usize, value: f64, scale: u32 },
    #[error("initial state entry {index} = {value} is not binary")]
    NonBinaryInitial { index: usize, value: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("state cuts {found:?} do not match model cuts {expected:?}")]
    PartitionMismatch { expected: Vec<usize>, found: Vec<usize> },
    #[error("expected a row vector, got {rows}x{cols}")]
    NotRowVector { rows: usize, cols: usize },
    #[error("moment needs a special row (no row cuts) or special column (no column cuts) matrix")]
    NotSpecial,
    #[error("model kind mismatch: expected {expected}, found {found}")]
    KindMismatch { expected: String, found: String },
    #[error("nothing to combine")]
    NoModels,
    #[error("invalid model: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidModel(Vec<ModelViolation>),
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
