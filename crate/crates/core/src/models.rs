//! Multi-expert inference models and their hidden-pattern iterations.
//!
//! All super variants of a model family share one kernel; the variant only
//! constrains the shape of the connection matrix's partition.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::algebra::{Semiring, SuperMatrix};
use crate::error::{Error, Result};
use crate::fuzzy::{bam_signal, threshold_update, StateDomain, SuperStateVector};
use crate::partition::segments;

pub const DEFAULT_FAM_TOL: f64 = 1e-9;
pub const DEFAULT_FUZZY_MAX_STEPS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Fcm,
    Frm,
    Bam,
    Fam,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Fcm => "fcm",
            ModelKind::Frm => "frm",
            ModelKind::Bam => "bam",
            ModelKind::Fam => "fam",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Plain,
    SuperRow,
    SuperColumn,
    SuperDiagonal,
    SuperFull,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Plain => "plain",
            Variant::SuperRow => "super_row",
            Variant::SuperColumn => "super_column",
            Variant::SuperDiagonal => "super_diagonal",
            Variant::SuperFull => "super_full",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which space of a rectangular model carries a vector. `Domain` is the row
/// space (X for BAM/FAM), `Range` the column space (Y).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Domain,
    Range,
}

impl Side {
    fn other(self) -> Side {
        match self {
            Side::Domain => Side::Range,
            Side::Range => Side::Domain,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Space {
    /// the single node set of an FCM
    Nodes,
    Domain,
    Range,
}

impl Space {
    pub fn name(self) -> &'static str {
        match self {
            Space::Nodes => "nodes",
            Space::Domain => "domain",
            Space::Range => "range",
        }
    }
}

impl From<Side> for Space {
    fn from(s: Side) -> Space {
        match s {
            Side::Domain => Space::Domain,
            Side::Range => Space::Range,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelSpec {
    pub kind: ModelKind,
    pub variant: Variant,
    pub connection: SuperMatrix,
    /// one group per row block (or empty)
    pub domain_labels: Vec<Vec<String>>,
    /// one group per column block (or empty)
    pub range_labels: Vec<Vec<String>>,
    /// BAM fit range `[-m, m]`
    pub scale: Option<u32>,
    pub thresholds_u: Option<Vec<f64>>,
    pub thresholds_v: Option<Vec<f64>>,
    /// How many single-expert maps were summed into this one; FCM/FRM weights
    /// may range over `[-summed_maps, summed_maps]`.
    pub summed_maps: u32,
}

impl ModelSpec {
    pub fn new(kind: ModelKind, variant: Variant, connection: SuperMatrix) -> Self {
        ModelSpec {
            kind,
            variant,
            connection,
            domain_labels: Vec::new(),
            range_labels: Vec::new(),
            scale: None,
            thresholds_u: None,
            thresholds_v: None,
            summed_maps: 1,
        }
    }

    pub fn with_scale(mut self, scale: u32) -> Self {
        self.scale = Some(scale);
        self
    }

    pub fn with_labels(mut self, domain: Vec<Vec<String>>, range: Vec<Vec<String>>) -> Self {
        self.domain_labels = domain;
        self.range_labels = range;
        self
    }

    pub fn validate(&self) -> Vec<ModelViolation> {
        validate_model(self)
    }

    /// `self` if it has no violations.
    pub fn validated(self) -> Result<Self> {
        let v = validate_model(&self);
        if v.is_empty() {
            Ok(self)
        } else {
            Err(Error::InvalidModel(v))
        }
    }

    pub fn thresholds(&self, side: Side) -> Vec<f64> {
        let (t, n) = match side {
            Side::Domain => (&self.thresholds_u, self.connection.rows()),
            Side::Range => (&self.thresholds_v, self.connection.cols()),
        };
        t.clone().unwrap_or_else(|| vec![0.0; n])
    }

    pub fn side_len(&self, side: Side) -> usize {
        match side {
            Side::Domain => self.connection.rows(),
            Side::Range => self.connection.cols(),
        }
    }

    pub fn side_cuts(&self, side: Side) -> &[usize] {
        match side {
            Side::Domain => &self.connection.scheme().row_cuts,
            Side::Range => &self.connection.scheme().col_cuts,
        }
    }

    pub fn labels(&self, space: Space) -> &[Vec<String>] {
        match space {
            Space::Nodes | Space::Domain => &self.domain_labels,
            Space::Range => &self.range_labels,
        }
    }
}

/// One broken structural rule of a [`ModelSpec`].
#[derive(Debug, Clone, PartialEq)]
pub enum ModelViolation {
    EntryOutOfDomain {
        row: usize,
        col: usize,
        value: f64,
        expected: String,
    },
    NonSquareConnection {
        rows: usize,
        cols: usize,
    },
    DiagonalBlockNotSquare {
        block: usize,
        rows: usize,
        cols: usize,
    },
    ZeroDiagonalViolated {
        index: usize,
        value: f64,
    },
    OffDiagonalNonzero {
        block_row: usize,
        block_col: usize,
        row: usize,
        col: usize,
    },
    VariantShape {
        variant: Variant,
        reason: String,
    },
    BlockGridNotSquare {
        row_blocks: usize,
        col_blocks: usize,
    },
    LabelBlocks {
        field: &'static str,
        expected: Vec<usize>,
        found: Vec<usize>,
    },
    MissingScale,
    ThresholdLength {
        field: &'static str,
        expected: usize,
        found: usize,
    },
    FieldNotAllowed {
        field: &'static str,
        kind: ModelKind,
    },
}

impl ModelViolation {
    /// JSON path (in the model file layout) of the offending value.
    pub fn path(&self, cols: usize) -> String {
        use ModelViolation::*;
        match self {
            EntryOutOfDomain { row, col, .. } | OffDiagonalNonzero { row, col, .. } => {
                format!("matrix.entries[{}]", row * cols + col)
            }
            ZeroDiagonalViolated { index, .. } => format!("matrix.entries[{}]", index * cols + index),
            NonSquareConnection { .. } => "matrix".into(),
            DiagonalBlockNotSquare { .. } | BlockGridNotSquare { .. } => "matrix.row_cuts".into(),
            VariantShape { .. } => "variant".into(),
            LabelBlocks { field, .. } | ThresholdLength { field, .. } | FieldNotAllowed { field, .. } => {
                (*field).into()
            }
            MissingScale => "scale".into(),
        }
    }
}

impl fmt::Display for ModelViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ModelViolation::*;
        match self {
            EntryOutOfDomain {
                row,
                col,
                value,
                expected,
            } => {
                write!(f, "entry ({row},{col}) = {value} not in {expected}")
            }
            NonSquareConnection { rows, cols } => write!(f, "connection matrix must be square, is {rows}x{cols}"),
            DiagonalBlockNotSquare { block, rows, cols } => {
                write!(f, "diagonal block {block} is {rows}x{cols}, not square")
            }
            ZeroDiagonalViolated { index, value } => write!(f, "diagonal entry {index} = {value}, must be 0"),
            OffDiagonalNonzero {
                block_row,
                block_col,
                row,
                col,
            } => {
                write!(
                    f,
                    "off-diagonal block ({block_row},{block_col}) has nonzero entry ({row},{col})"
                )
            }
            VariantShape { variant, reason } => write!(f, "variant {variant}: {reason}"),
            BlockGridNotSquare { row_blocks, col_blocks } => {
                write!(
                    f,
                    "block grid is {row_blocks}x{col_blocks}, diagonal variant needs it square"
                )
            }
            LabelBlocks { field, expected, found } => {
                write!(f, "{field} group sizes {found:?} do not match block sizes {expected:?}")
            }
            MissingScale => f.write_str("bam model needs a scale"),
            ThresholdLength { field, expected, found } => {
                write!(f, "{field} has {found} entries, expected {expected}")
            }
            FieldNotAllowed { field, kind } => write!(f, "{field} is not used by {kind} models"),
        }
    }
}

pub fn validate_model(spec: &ModelSpec) -> Vec<ModelViolation> {
    use ModelViolation::*;
    let mut out = Vec::new();
    let m = &spec.connection;
    let (rows, cols) = m.shape();
    let scheme = m.scheme();

    // entry domains
    let limit = f64::from(spec.summed_maps.max(1));
    let (ok, expected): (Box<dyn Fn(f64) -> bool>, String) = match spec.kind {
        ModelKind::Fcm | ModelKind::Frm if spec.summed_maps <= 1 => {
            (Box::new(|x| x == -1.0 || x == 0.0 || x == 1.0), "{-1, 0, 1}".into())
        }
        ModelKind::Fcm | ModelKind::Frm => (
            Box::new(move |x: f64| x.fract() == 0.0 && x.abs() <= limit),
            format!("integers in [-{limit}, {limit}]"),
        ),
        ModelKind::Fam => (Box::new(|x| (0.0..=1.0).contains(&x)), "[0, 1]".into()),
        ModelKind::Bam => match spec.scale {
            Some(s) => {
                let s = f64::from(s);
                (
                    Box::new(move |x: f64| x.fract() == 0.0 && x.abs() <= s),
                    format!("integers in [-{s}, {s}]"),
                )
            }
            None => (Box::new(|x: f64| x.is_finite()), "finite numbers".into()),
        },
    };
    for i in 0..rows {
        for j in 0..cols {
            let x = m.get(i, j);
            if !ok(x) {
                out.push(EntryOutOfDomain {
                    row: i,
                    col: j,
                    value: x,
                    expected: expected.clone(),
                });
            }
        }
    }

    let row_blocks = scheme.row_blocks(rows);
    let col_blocks = scheme.col_blocks(cols);

    if spec.kind == ModelKind::Fcm {
        if rows != cols {
            out.push(NonSquareConnection { rows, cols });
        } else {
            for i in 0..rows {
                if m.get(i, i) != 0.0 {
                    out.push(ZeroDiagonalViolated {
                        index: i,
                        value: m.get(i, i),
                    });
                }
            }
        }
        for (k, (r, c)) in row_blocks.iter().zip(&col_blocks).enumerate() {
            if r.len() != c.len() {
                out.push(DiagonalBlockNotSquare {
                    block: k,
                    rows: r.len(),
                    cols: c.len(),
                });
            }
        }
        if row_blocks.len() != col_blocks.len() && rows == cols {
            out.push(BlockGridNotSquare {
                row_blocks: row_blocks.len(),
                col_blocks: col_blocks.len(),
            });
        }
    }

    let (has_r, has_c) = (!scheme.row_cuts.is_empty(), !scheme.col_cuts.is_empty());
    let shape_reason = match spec.variant {
        Variant::Plain if has_r || has_c => Some("must not be partitioned"),
        Variant::SuperRow if has_r || !has_c => Some("needs column cuts and no row cuts"),
        Variant::SuperColumn if !has_r || has_c => Some("needs row cuts and no column cuts"),
        Variant::SuperDiagonal | Variant::SuperFull if !has_r || !has_c => Some("needs both row and column cuts"),
        _ => None,
    };
    if let Some(reason) = shape_reason {
        out.push(VariantShape {
            variant: spec.variant,
            reason: reason.into(),
        });
    }

    if spec.variant == Variant::SuperDiagonal {
        if row_blocks.len() != col_blocks.len() && spec.kind != ModelKind::Fcm {
            out.push(BlockGridNotSquare {
                row_blocks: row_blocks.len(),
                col_blocks: col_blocks.len(),
            });
        }
        for (bi, r) in row_blocks.iter().enumerate() {
            for (bj, c) in col_blocks.iter().enumerate() {
                if bi == bj {
                    continue;
                }
                // report the first nonzero entry per offending block
                let hit = r
                    .clone()
                    .flat_map(|i| c.clone().map(move |j| (i, j)))
                    .find(|&(i, j)| m.get(i, j) != 0.0);
                if let Some((row, col)) = hit {
                    out.push(OffDiagonalNonzero {
                        block_row: bi,
                        block_col: bj,
                        row,
                        col,
                    });
                }
            }
        }
    }

    check_labels(&mut out, "domain_labels", &spec.domain_labels, &row_blocks);
    check_labels(&mut out, "range_labels", &spec.range_labels, &col_blocks);

    if spec.kind == ModelKind::Bam {
        if spec.scale.is_none() {
            out.push(MissingScale);
        }
        for (field, t, n) in [
            ("thresholds_u", &spec.thresholds_u, rows),
            ("thresholds_v", &spec.thresholds_v, cols),
        ] {
            if let Some(t) = t {
                if t.len() != n {
                    out.push(ThresholdLength {
                        field,
                        expected: n,
                        found: t.len(),
                    });
                }
            }
        }
    } else {
        for (field, present) in [
            ("scale", spec.scale.is_some()),
            ("thresholds_u", spec.thresholds_u.is_some()),
            ("thresholds_v", spec.thresholds_v.is_some()),
        ] {
            if present {
                out.push(FieldNotAllowed { field, kind: spec.kind });
            }
        }
    }
    out
}

fn check_labels(out: &mut Vec<ModelViolation>, field: &'static str, labels: &[Vec<String>], blocks: &[Range<usize>]) {
    if labels.is_empty() {
        return;
    }
    let expected: Vec<usize> = blocks.iter().map(|b| b.len()).collect();
    let found: Vec<usize> = labels.iter().map(|g| g.len()).collect();
    if expected != found {
        out.push(ModelViolation::LabelBlocks { field, expected, found });
    }
}

/// Entrywise sum of FCM or FRM connection matrices.
pub fn combine_models(models: &[ModelSpec]) -> Result<ModelSpec> {
    let first = models.first().ok_or(Error::NoModels)?;
    if !matches!(first.kind, ModelKind::Fcm | ModelKind::Frm) {
        return Err(Error::KindMismatch {
            expected: "fcm or frm".into(),
            found: first.kind.to_string(),
        });
    }
    let mut out = first.clone();
    for m in &models[1..] {
        if m.kind != first.kind {
            return Err(Error::KindMismatch {
                expected: first.kind.to_string(),
                found: m.kind.to_string(),
            });
        }
        out.connection = out.connection.add(&m.connection)?;
        out.summed_maps += m.summed_maps;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// The state reached at round `round` repeats forever.
    FixedPoint {
        round: usize,
    },
    /// Rounds `start..start + period` repeat forever (`period >= 2`).
    LimitCycle {
        start: usize,
        period: usize,
    },
    MaxStepsExceeded,
}

impl Verdict {
    pub fn converged(self) -> bool {
        !matches!(self, Verdict::MaxStepsExceeded)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::FixedPoint { round } => write!(f, "fixed point (reached at round {round})"),
            Verdict::LimitCycle { start, period } => write!(f, "limit cycle (start round {start}, period {period})"),
            Verdict::MaxStepsExceeded => f.write_str("max steps exceeded"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceStep {
    pub space: Space,
    /// value before thresholding (absent when the state is given, or when no
    /// thresholding happens as in FAM recall)
    pub raw: Option<Vec<f64>>,
    pub state: SuperStateVector,
}

/// The full state sequence of one run.
///
/// Steps are grouped in rounds of `round_len` steps: one state for an FCM,
/// a (stimulus side, other side) pair for bidirectional models. Round 0
/// starts from the initial vector.
#[derive(Debug, Clone, PartialEq)]
pub struct RunTrace {
    pub kind: ModelKind,
    pub round_len: usize,
    pub steps: Vec<TraceStep>,
    pub verdict: Verdict,
}

impl RunTrace {
    pub fn rounds(&self) -> usize {
        self.steps.len() / self.round_len
    }

    pub fn round(&self, k: usize) -> &[TraceStep] {
        &self.steps[k * self.round_len..(k + 1) * self.round_len]
    }

    /// Rounds making up the equilibrium, if one was reached.
    pub fn equilibrium(&self) -> Option<Range<usize>> {
        match self.verdict {
            Verdict::FixedPoint { round } => Some(round..round + 1),
            Verdict::LimitCycle { start, period } => Some(start..start + period),
            Verdict::MaxStepsExceeded => None,
        }
    }

    pub fn states(&self) -> impl Iterator<Item = &SuperStateVector> {
        self.steps.iter().map(|s| &s.state)
    }

    pub fn last(&self) -> &TraceStep {
        self.steps.last().expect("a trace always holds the initial state")
    }
}

fn pow2_bound(bits: usize) -> usize {
    // 2 × 2^bits, saturating
    u32::try_from(bits + 1)
        .ok()
        .and_then(|b| 1usize.checked_shl(b))
        .unwrap_or(usize::MAX)
}

/// Twice the size of the state space for binary models; a fixed budget for
/// FAM recall.
pub fn default_max_steps(model: &ModelSpec) -> usize {
    let (r, c) = model.connection.shape();
    match model.kind {
        ModelKind::Fcm => pow2_bound(r),
        ModelKind::Frm | ModelKind::Bam => pow2_bound(r + c),
        ModelKind::Fam => DEFAULT_FUZZY_MAX_STEPS,
    }
}

fn expect_kind(model: &ModelSpec, kind: ModelKind) -> Result<()> {
    if model.kind == kind {
        Ok(())
    } else {
        Err(Error::KindMismatch {
            expected: kind.to_string(),
            found: model.kind.to_string(),
        })
    }
}

fn check_shape(v: &SuperStateVector, len: usize, cuts: &[usize]) -> Result<()> {
    if v.len() != len {
        return Err(Error::DimensionMismatch {
            expected: len,
            found: v.len(),
        });
    }
    if v.cuts() != cuts {
        return Err(Error::PartitionMismatch {
            expected: cuts.to_vec(),
            found: v.cuts().to_vec(),
        });
    }
    Ok(())
}

fn as_binary(v: &SuperStateVector) -> Result<SuperStateVector> {
    if let Some(index) = v.values().iter().position(|&x| x != 0.0 && x != 1.0) {
        return Err(Error::NonBinaryInitial {
            index,
            value: v.values()[index],
        });
    }
    SuperStateVector::binary(v.values().to_vec(), v.cuts().to_vec())
}

/// `x ∘ m` under plus–times, i.e. plain matrix multiplication.
fn times(x: &SuperStateVector, m: &SuperMatrix, s: Semiring) -> Result<SuperMatrix> {
    x.as_row().multiply(m, s)
}

/// Iterate `X ← threshold(X M)` with the initial on-set clamped on, until a
/// state repeats.
pub fn fcm_hidden_pattern(model: &ModelSpec, initial: &SuperStateVector, max_steps: usize) -> Result<RunTrace> {
    expect_kind(model, ModelKind::Fcm)?;
    let m = &model.connection;
    check_shape(initial, m.rows(), &m.scheme().row_cuts)?;
    let x0 = as_binary(initial)?;
    let clamp = x0.on_set();

    let mut steps = vec![TraceStep {
        space: Space::Nodes,
        raw: None,
        state: x0.clone(),
    }];
    let mut history = vec![x0];
    for round in 1..=max_steps {
        let raw = times(&history[round - 1], m, Semiring::PlusTimes)?;
        let next = threshold_update(&raw, &clamp)?;
        steps.push(TraceStep {
            space: Space::Nodes,
            raw: Some(raw.into_entries()),
            state: next.clone(),
        });
        if let Some(j) = history.iter().position(|h| *h == next) {
            return Ok(RunTrace {
                kind: ModelKind::Fcm,
                round_len: 1,
                steps,
                verdict: classify_repeat(j, round),
            });
        }
        history.push(next);
    }
    Ok(RunTrace {
        kind: ModelKind::Fcm,
        round_len: 1,
        steps,
        verdict: Verdict::MaxStepsExceeded,
    })
}

fn classify_repeat(earlier: usize, now: usize) -> Verdict {
    if earlier + 1 == now {
        Verdict::FixedPoint { round: earlier }
    } else {
        Verdict::LimitCycle {
            start: earlier,
            period: now - earlier,
        }
    }
}

type Update<'a> =
    Box<dyn FnMut(&SuperStateVector, &SuperStateVector) -> Result<(Option<Vec<f64>>, SuperStateVector)> + 'a>;
type Same<'a> = Box<dyn Fn(&SuperStateVector, &SuperStateVector) -> bool + 'a>;

/// Shared alternating kernel. `forward` maps a stimulus-side state (and the
/// previous other-side state) to the other side; `backward` maps back.
/// Stops when a (stimulus, other) pair repeats.
struct PairRun<'a> {
    kind: ModelKind,
    first: Side,
    forward: Update<'a>,
    backward: Update<'a>,
    same: Same<'a>,
}

impl PairRun<'_> {
    fn run(mut self, start: TraceStep, other_prev: SuperStateVector, max_steps: usize) -> Result<RunTrace> {
        let second: Space = self.first.other().into();
        let first: Space = self.first.into();
        let mut x = start.state.clone();
        let mut prev_y = other_prev;
        let mut steps = vec![start];
        let mut history: Vec<(SuperStateVector, SuperStateVector)> = Vec::new();
        let mut verdict = Verdict::MaxStepsExceeded;
        for round in 0..=max_steps {
            let (raw_y, y) = (self.forward)(&x, &prev_y)?;
            steps.push(TraceStep {
                space: second,
                raw: raw_y,
                state: y.clone(),
            });
            if let Some(j) = history
                .iter()
                .position(|(hx, hy)| (self.same)(hx, &x) && (self.same)(hy, &y))
            {
                verdict = classify_repeat(j, round);
                break;
            }
            history.push((x.clone(), y.clone()));
            if round == max_steps {
                break;
            }
            let (raw_x, next_x) = (self.backward)(&y, &x)?;
            steps.push(TraceStep {
                space: first,
                raw: raw_x,
                state: next_x.clone(),
            });
            x = next_x;
            prev_y = y;
        }
        Ok(RunTrace {
            kind: self.kind,
            round_len: 2,
            steps,
            verdict,
        })
    }
}

fn oriented(model: &ModelSpec, side: Side) -> (SuperMatrix, SuperMatrix) {
    let m = model.connection.clone();
    let t = m.transpose();
    match side {
        Side::Domain => (m, t),
        Side::Range => (t, m),
    }
}

/// Alternate `Y = threshold(X E)`, `X = threshold(Y Eᵗ)` starting from the
/// given side; only the stimulus side is clamped.
pub fn frm_hidden_pattern(
    model: &ModelSpec,
    initial: &SuperStateVector,
    side: Side,
    max_steps: usize,
) -> Result<RunTrace> {
    expect_kind(model, ModelKind::Frm)?;
    check_shape(initial, model.side_len(side), model.side_cuts(side))?;
    let x0 = as_binary(initial)?;
    let clamp = x0.on_set();
    let none = BTreeSet::new();
    let (fwd, bwd) = oriented(model, side);
    let other = side.other();
    let run = PairRun {
        kind: ModelKind::Frm,
        first: side,
        forward: Box::new(|x, _| {
            let raw = times(x, &fwd, Semiring::PlusTimes)?;
            let y = threshold_update(&raw, &none)?;
            Ok((Some(raw.into_entries()), y))
        }),
        backward: Box::new(|y, _| {
            let raw = times(y, &bwd, Semiring::PlusTimes)?;
            let x = threshold_update(&raw, &clamp)?;
            Ok((Some(raw.into_entries()), x))
        }),
        same: Box::new(|a, b| a == b),
    };
    let zeros = SuperStateVector::zeros(
        StateDomain::Binary,
        model.side_len(other),
        model.side_cuts(other).to_vec(),
    )?;
    run.run(
        TraceStep {
            space: side.into(),
            raw: None,
            state: x0,
        },
        zeros,
        max_steps,
    )
}

/// Discrete BAM recall with binary threshold signals and zero external input.
pub fn bam_recall(model: &ModelSpec, initial_fit: &SuperStateVector, side: Side, max_steps: usize) -> Result<RunTrace> {
    expect_kind(model, ModelKind::Bam)?;
    let scale = model
        .scale
        .ok_or_else(|| Error::InvalidModel(vec![ModelViolation::MissingScale]))?;
    check_shape(initial_fit, model.side_len(side), model.side_cuts(side))?;
    if let Some(index) = initial_fit.values().iter().position(|x| x.abs() > f64::from(scale)) {
        return Err(Error::ScaleViolation {
            index,
            value: initial_fit.values()[index],
            scale,
        });
    }
    let other = side.other();
    let (u_first, u_second) = (model.thresholds(side), model.thresholds(other));
    let zeros = |s: Side| SuperStateVector::zeros(StateDomain::Binary, model.side_len(s), model.side_cuts(s).to_vec());
    let s0 = bam_signal(&initial_fit.as_row(), &zeros(side)?, &u_first)?;
    let (fwd, bwd) = oriented(model, side);
    let run = PairRun {
        kind: ModelKind::Bam,
        first: side,
        forward: Box::new(|x, prev_y| {
            let raw = times(x, &fwd, Semiring::PlusTimes)?;
            let y = bam_signal(&raw, prev_y, &u_second)?;
            Ok((Some(raw.into_entries()), y))
        }),
        backward: Box::new(|y, prev_x| {
            let raw = times(y, &bwd, Semiring::PlusTimes)?;
            let x = bam_signal(&raw, prev_x, &u_first)?;
            Ok((Some(raw.into_entries()), x))
        }),
        same: Box::new(|a, b| a == b),
    };
    run.run(
        TraceStep {
            space: side.into(),
            raw: Some(initial_fit.values().to_vec()),
            state: s0,
        },
        zeros(other)?,
        max_steps,
    )
}

/// FAM recall: alternate max–min compositions with `F` and `Fᵗ` until the
/// pair of vectors repeats within `tol` (max-norm).
pub fn fam_recall(
    model: &ModelSpec,
    fit: &SuperStateVector,
    side: Side,
    max_steps: usize,
    tol: f64,
) -> Result<RunTrace> {
    expect_kind(model, ModelKind::Fam)?;
    check_shape(fit, model.side_len(side), model.side_cuts(side))?;
    if let Some(index) = fit.values().iter().position(|x| !(0.0..=1.0).contains(x)) {
        return Err(Error::RangeViolation {
            index,
            value: fit.values()[index],
        });
    }
    let a0 = SuperStateVector::fuzzy(fit.values().to_vec(), fit.cuts().to_vec())?;
    let (fwd, bwd) = oriented(model, side);
    let compose = |v: &SuperStateVector, m: &SuperMatrix| -> Result<(Option<Vec<f64>>, SuperStateVector)> {
        let r = times(v, m, Semiring::MaxMin)?;
        let cuts = r.scheme().col_cuts.clone();
        Ok((None, SuperStateVector::fuzzy(r.into_entries(), cuts)?))
    };
    let other = side.other();
    let run = PairRun {
        kind: ModelKind::Fam,
        first: side,
        forward: Box::new(|x, _| compose(x, &fwd)),
        backward: Box::new(|y, _| compose(y, &bwd)),
        same: Box::new(move |a, b| a.max_abs_diff(b) <= tol),
    };
    run.run(
        TraceStep {
            space: side.into(),
            raw: None,
            state: a0,
        },
        SuperStateVector::zeros(
            StateDomain::Fuzzy,
            model.side_len(other),
            model.side_cuts(other).to_vec(),
        )?,
        max_steps,
    )
}

/// Runs the engine matching `model.kind`. `side` is ignored for FCMs.
pub fn run_model(
    model: &ModelSpec,
    initial: &SuperStateVector,
    side: Side,
    max_steps: usize,
    tol: f64,
) -> Result<RunTrace> {
    match model.kind {
        ModelKind::Fcm => fcm_hidden_pattern(model, initial, max_steps),
        ModelKind::Frm => frm_hidden_pattern(model, initial, side, max_steps),
        ModelKind::Bam => bam_recall(model, initial, side, max_steps),
        ModelKind::Fam => fam_recall(model, initial, side, max_steps, tol),
    }
}

/// Split `values` into the blocks given by `cuts`.
pub fn split_blocks<'a>(values: &'a [f64], cuts: &[usize]) -> Vec<&'a [f64]> {
    segments(cuts, values.len()).into_iter().map(|r| &values[r]).collect()
}
