//! Partition schemes: the cut positions that turn a plain matrix into a
//! supermatrix.
//!
//! A cut at `k` (1-based) sits between 0-based rows `k-1` and `k`, so the
//! valid positions for a dimension `d` are `1..=d-1`.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::algebra::SuperMatrix;
use crate::error::{Axis, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct PartitionScheme {
    pub row_cuts: Vec<usize>,
    pub col_cuts: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PartitionClass {
    Trivial,
    General,
    Symmetric,
    Pseudo,
    SymmetricAndPseudo,
    Cell,
}

impl PartitionScheme {
    /// Unchecked constructor; use [`PartitionScheme::validate`] against a shape.
    pub fn new(row_cuts: Vec<usize>, col_cuts: Vec<usize>) -> Self {
        PartitionScheme { row_cuts, col_cuts }
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    /// Same cuts on both axes.
    pub fn symmetric(cuts: Vec<usize>) -> Self {
        PartitionScheme {
            row_cuts: cuts.clone(),
            col_cuts: cuts,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.row_cuts.is_empty() && self.col_cuts.is_empty()
    }

    pub fn validate(&self, rows: usize, cols: usize) -> Result<()> {
        validate_cuts(&self.row_cuts, rows, Axis::Row)?;
        validate_cuts(&self.col_cuts, cols, Axis::Col)
    }

    pub fn transposed(&self) -> Self {
        PartitionScheme {
            row_cuts: self.col_cuts.clone(),
            col_cuts: self.row_cuts.clone(),
        }
    }

    pub fn row_blocks(&self, rows: usize) -> Vec<Range<usize>> {
        segments(&self.row_cuts, rows)
    }

    pub fn col_blocks(&self, cols: usize) -> Vec<Range<usize>> {
        segments(&self.col_cuts, cols)
    }
}

pub fn validate_scheme(scheme: &PartitionScheme, rows: usize, cols: usize) -> Result<()> {
    scheme.validate(rows, cols)
}

fn validate_cuts(cuts: &[usize], dim: usize, axis: Axis) -> Result<()> {
    let max = dim.saturating_sub(1);
    for (i, &cut) in cuts.iter().enumerate() {
        if cut == 0 || cut > max {
            return Err(Error::OutOfRangeCut { axis, cut, max });
        }
        if i > 0 {
            let prev = cuts[i - 1];
            if prev == cut {
                return Err(Error::DuplicateCut { axis, cut });
            }
            if prev > cut {
                return Err(Error::UnsortedCuts {
                    axis,
                    cuts: cuts.to_vec(),
                });
            }
        }
    }
    Ok(())
}

/// Index ranges of the blocks induced by `cuts` on a dimension of size `dim`.
pub fn segments(cuts: &[usize], dim: usize) -> Vec<Range<usize>> {
    let mut out = Vec::with_capacity(cuts.len() + 1);
    let mut start = 0;
    for &c in cuts {
        out.push(start..c);
        start = c;
    }
    out.push(start..dim);
    out
}

/// `{dim - c : c ∈ cuts}`, sorted.
pub(crate) fn reflect_cuts(cuts: &[usize], dim: usize) -> Vec<usize> {
    let mut out: Vec<usize> = cuts.iter().map(|&c| dim - c).collect();
    out.sort_unstable();
    out
}

pub fn classify_partition(scheme: &PartitionScheme, n: usize, m: usize) -> PartitionClass {
    if scheme.is_trivial() {
        return PartitionClass::Trivial;
    }
    let all_rows = scheme.row_cuts.len() == n.saturating_sub(1);
    let all_cols = scheme.col_cuts.len() == m.saturating_sub(1);
    // cuts are validated sorted/unique, so a full-length list is every cut
    if all_rows && all_cols {
        return PartitionClass::Cell;
    }
    if n != m {
        return PartitionClass::General;
    }
    let symmetric = scheme.row_cuts == scheme.col_cuts;
    let pseudo = scheme.row_cuts == reflect_cuts(&scheme.col_cuts, n);
    match (symmetric, pseudo) {
        (true, true) => PartitionClass::SymmetricAndPseudo,
        (true, false) => PartitionClass::Symmetric,
        (false, true) => PartitionClass::Pseudo,
        (false, false) => PartitionClass::General,
    }
}

impl PartitionClass {
    pub fn is_symmetric(self, square: bool) -> bool {
        match self {
            PartitionClass::Symmetric | PartitionClass::SymmetricAndPseudo => true,
            PartitionClass::Cell => square,
            _ => false,
        }
    }

    pub fn is_pseudo(self, square: bool) -> bool {
        match self {
            PartitionClass::Pseudo | PartitionClass::SymmetricAndPseudo => true,
            PartitionClass::Cell => square,
            _ => false,
        }
    }
}

fn subsets(universe: usize) -> Vec<Vec<usize>> {
    // cut positions 1..universe
    (0u64..1 << universe)
        .map(|mask| (0..universe).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect())
        .collect()
}

/// Every nontrivial scheme of an `n`×`m` matrix, ordered lexicographically on
/// `(row_cuts, col_cuts)`.
///
/// The result has `2^(n-1) * 2^(m-1) - 1` elements, so keep `n + m` small.
pub fn enumerate_partitions(n: usize, m: usize) -> Vec<PartitionScheme> {
    assert!(n >= 1 && m >= 1, "dimensions must be positive");
    assert!(n + m - 2 <= 40, "too many schemes to enumerate");
    let rows = subsets(n - 1);
    let cols = subsets(m - 1);
    let mut out = Vec::with_capacity(rows.len() * cols.len());
    for r in &rows {
        for c in &cols {
            if r.is_empty() && c.is_empty() {
                continue;
            }
            out.push(PartitionScheme::new(r.clone(), c.clone()));
        }
    }
    out.sort();
    out
}

/// `2^(n-1) * 2^(m-1) - 1`, or `None` on overflow.
pub fn count_partitions(n: usize, m: usize) -> Option<u128> {
    if n == 0 || m == 0 {
        return Some(0);
    }
    let bits = u32::try_from((n - 1).checked_add(m - 1)?).ok()?;
    1u128.checked_shl(bits).map(|v| v - 1)
}

/// `2^(n-1) - 1`: nontrivial symmetric schemes of an `n`×`n` matrix.
pub fn count_symmetric_partitions(n: usize) -> Option<u128> {
    if n == 0 {
        return Some(0);
    }
    let bits = n - 1;
    if bits >= 128 {
        return None;
    }
    Some((1u128 << bits) - 1)
}

/// Nontrivial pseudo schemes of an `n`×`n` matrix: the row cuts are fixed by
/// the column cuts, so this is also `2^(n-1) - 1`.
pub fn count_pseudo_partitions(n: usize) -> Option<u128> {
    count_symmetric_partitions(n)
}

/// Places `blocks` along the diagonal, zero elsewhere, with cuts at the block
/// boundaries.
pub fn super_diagonal(blocks: &[SuperMatrix]) -> Result<SuperMatrix> {
    if blocks.is_empty() {
        return Err(Error::EmptyBlockList);
    }
    if let Some(index) = blocks.iter().position(|b| !b.scheme().is_trivial()) {
        return Err(Error::PartitionedBlock { index });
    }
    let rows: usize = blocks.iter().map(|b| b.rows()).sum();
    let cols: usize = blocks.iter().map(|b| b.cols()).sum();
    let mut entries = vec![0.0; rows * cols];
    let (mut r0, mut c0) = (0, 0);
    let (mut row_cuts, mut col_cuts) = (Vec::new(), Vec::new());
    for (k, b) in blocks.iter().enumerate() {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                entries[(r0 + i) * cols + c0 + j] = b.get(i, j);
            }
        }
        r0 += b.rows();
        c0 += b.cols();
        if k + 1 < blocks.len() {
            row_cuts.push(r0);
            col_cuts.push(c0);
        }
    }
    SuperMatrix::new(rows, cols, entries, PartitionScheme::new(row_cuts, col_cuts))
}
