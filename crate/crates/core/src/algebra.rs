//! Dense supermatrices and their algebra over two semirings.

use std::fmt;

use crate::error::{Error, Result};
use crate::partition::{classify_partition, reflect_cuts, segments, PartitionScheme};

/// Tolerance for comparisons between fuzzy (non-integer) entries.
pub const FUZZY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Semiring {
    /// accumulate with `+`, combine with `×`
    PlusTimes,
    /// accumulate with `max` (identity 0), combine with `min`
    MaxMin,
}

impl Semiring {
    #[inline]
    pub fn zero(self) -> f64 {
        0.0
    }

    #[inline]
    pub fn combine(self, a: f64, b: f64) -> f64 {
        match self {
            Semiring::PlusTimes => a * b,
            Semiring::MaxMin => a.min(b),
        }
    }

    #[inline]
    pub fn accumulate(self, acc: f64, x: f64) -> f64 {
        match self {
            Semiring::PlusTimes => acc + x,
            Semiring::MaxMin => acc.max(x),
        }
    }
}

/// A dense row-major matrix together with its partition scheme.
///
/// `PartialEq` is strict: entries *and* scheme. Use [`SuperMatrix::flat_equal`]
/// to compare the underlying simple matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
    scheme: PartitionScheme,
}

impl SuperMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<f64>, scheme: PartitionScheme) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix { rows, cols });
        }
        if entries.len() != rows * cols {
            return Err(Error::EntryCount {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        if let Some(index) = entries.iter().position(|x| x.is_nan()) {
            return Err(Error::NanEntry { index });
        }
        scheme.validate(rows, cols)?;
        Ok(SuperMatrix {
            rows,
            cols,
            entries,
            scheme,
        })
    }

    /// Unpartitioned matrix from nested rows.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.as_ref().len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            let row = row.as_ref();
            if row.len() != c {
                return Err(Error::ShapeMismatch {
                    op: "from_rows",
                    left: (1, c),
                    right: (1, row.len()),
                });
            }
            entries.extend_from_slice(row);
        }
        Self::new(r, c, entries, PartitionScheme::trivial())
    }

    pub fn row_vector(values: Vec<f64>, col_cuts: Vec<usize>) -> Result<Self> {
        let n = values.len();
        Self::new(1, n, values, PartitionScheme::new(vec![], col_cuts))
    }

    pub fn column_vector(values: Vec<f64>, row_cuts: Vec<usize>) -> Result<Self> {
        let n = values.len();
        Self::new(n, 1, values, PartitionScheme::new(row_cuts, vec![]))
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::new(rows, cols, vec![0.0; rows * cols], PartitionScheme::trivial())
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m.entries[i * n + i] = 1.0;
        }
        Ok(m)
    }

    /// Same entries, new scheme.
    pub fn with_scheme(self, scheme: PartitionScheme) -> Result<Self> {
        Self::new(self.rows, self.cols, self.entries, scheme)
    }

    pub fn with_cuts(self, row_cuts: Vec<usize>, col_cuts: Vec<usize>) -> Result<Self> {
        self.with_scheme(PartitionScheme::new(row_cuts, col_cuts))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<f64> {
        self.entries
    }

    pub fn scheme(&self) -> &PartitionScheme {
        &self.scheme
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn block_grid(&self) -> (usize, usize) {
        (self.scheme.row_cuts.len() + 1, self.scheme.col_cuts.len() + 1)
    }

    /// Block `(bi, bj)` of the grid as a plain matrix.
    pub fn block(&self, bi: usize, bj: usize) -> SuperMatrix {
        let rr = &self.scheme.row_blocks(self.rows)[bi];
        let cr = &self.scheme.col_blocks(self.cols)[bj];
        let mut entries = Vec::with_capacity(rr.len() * cr.len());
        for i in rr.clone() {
            entries.extend_from_slice(&self.row(i)[cr.clone()]);
        }
        SuperMatrix {
            rows: rr.len(),
            cols: cr.len(),
            entries,
            scheme: PartitionScheme::trivial(),
        }
    }

    pub fn flat_equal(&self, other: &SuperMatrix) -> bool {
        self.shape() == other.shape() && self.entries == other.entries
    }

    /// `flat_equal` within an absolute tolerance.
    pub fn approx_flat_equal(&self, other: &SuperMatrix, tol: f64) -> bool {
        self.shape() == other.shape()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| (a - b).abs() <= tol)
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<SuperMatrix> {
        Self::new(
            self.rows,
            self.cols,
            self.entries.iter().map(|&x| f(x)).collect(),
            self.scheme.clone(),
        )
    }

    pub fn transpose(&self) -> SuperMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j));
            }
        }
        SuperMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
            scheme: self.scheme.transposed(),
        }
    }

    /// Reflection across the anti-diagonal: for an m×n input,
    /// `out(i, j) = a(m-1-j, n-1-i)` (0-based). Cuts are reflected the same way.
    pub fn pseudo_transpose(&self) -> SuperMatrix {
        let (m, n) = (self.rows, self.cols);
        let mut entries = Vec::with_capacity(self.entries.len());
        for i in 0..n {
            for j in 0..m {
                entries.push(self.get(m - 1 - j, n - 1 - i));
            }
        }
        SuperMatrix {
            rows: n,
            cols: m,
            entries,
            scheme: PartitionScheme::new(
                reflect_cuts(&self.scheme.col_cuts, n),
                reflect_cuts(&self.scheme.row_cuts, m),
            ),
        }
    }

    pub fn add(&self, other: &SuperMatrix) -> Result<SuperMatrix> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch {
                op: "add",
                left: self.shape(),
                right: other.shape(),
            });
        }
        if self.scheme != other.scheme {
            return Err(Error::SchemeMismatch {
                left_rows: self.scheme.row_cuts.clone(),
                left_cols: self.scheme.col_cuts.clone(),
                right_rows: other.scheme.row_cuts.clone(),
                right_cols: other.scheme.col_cuts.clone(),
            });
        }
        Ok(SuperMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
            scheme: self.scheme.clone(),
        })
    }

    /// Block-conformable product. The left column cuts must equal the right
    /// row cuts; the result takes `(self.row_cuts, other.col_cuts)`.
    ///
    /// Minor and major products are the same operation here: which one you get
    /// depends only on where the operands are cut.
    pub fn multiply(&self, other: &SuperMatrix, s: Semiring) -> Result<SuperMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                op: "multiply",
                left: self.shape(),
                right: other.shape(),
            });
        }
        if self.scheme.col_cuts != other.scheme.row_cuts {
            return Err(Error::BlockMismatch {
                left_col_cuts: self.scheme.col_cuts.clone(),
                right_row_cuts: other.scheme.row_cuts.clone(),
            });
        }
        let (n, p) = (self.rows, other.cols);
        let mut out = vec![s.zero(); n * p];
        let row_blocks = self.scheme.row_blocks(n);
        let inner_blocks = segments(&self.scheme.col_cuts, self.cols);
        let col_blocks = other.scheme.col_blocks(p);
        // out[I][K] = accumulate over J of (self[I][J] * other[J][K])
        for ri in &row_blocks {
            for ck in &col_blocks {
                for jj in &inner_blocks {
                    for i in ri.clone() {
                        let a_row = self.row(i);
                        for k in ck.clone() {
                            let mut acc = out[i * p + k];
                            for j in jj.clone() {
                                acc = s.accumulate(acc, s.combine(a_row[j], other.get(j, k)));
                            }
                            out[i * p + k] = acc;
                        }
                    }
                }
            }
        }
        Ok(SuperMatrix {
            rows: n,
            cols: p,
            entries: out,
            scheme: PartitionScheme::new(self.scheme.row_cuts.clone(), other.scheme.col_cuts.clone()),
        })
    }

    pub fn is_flat_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Symmetric supermatrix: square, nontrivially and symmetrically
    /// partitioned, diagonal blocks symmetric, and block (i,j) the transpose
    /// of block (j,i).
    pub fn is_symmetric_supermatrix(&self) -> bool {
        let by_blocks = self.symmetric_by_blocks();
        debug_assert_eq!(by_blocks, self.symmetric_by_flat());
        by_blocks
    }

    pub(crate) fn symmetric_by_blocks(&self) -> bool {
        if !self.has_symmetric_scheme() {
            return false;
        }
        let (g, _) = self.block_grid();
        for bi in 0..g {
            let d = self.block(bi, bi);
            if !d.is_square() || !d.flat_equal(&d.transpose()) {
                return false;
            }
            for bj in 0..bi {
                if !self.block(bi, bj).flat_equal(&self.block(bj, bi).transpose()) {
                    return false;
                }
            }
        }
        true
    }

    pub(crate) fn symmetric_by_flat(&self) -> bool {
        self.has_symmetric_scheme() && self.is_flat_symmetric()
    }

    fn has_symmetric_scheme(&self) -> bool {
        self.is_square() && classify_partition(&self.scheme, self.rows, self.cols).is_symmetric(true)
    }

    /// Square and equal to its own pseudo transpose; the scheme is ignored.
    pub fn is_pseudo_symmetric(&self) -> bool {
        self.is_square() && self.flat_equal(&self.pseudo_transpose())
    }

    /// [`is_pseudo_symmetric`](Self::is_pseudo_symmetric) plus a pseudo scheme.
    pub fn is_pseudo_symmetric_supermatrix(&self) -> bool {
        self.is_pseudo_symmetric() && classify_partition(&self.scheme, self.rows, self.cols).is_pseudo(true)
    }

    /// Row `i` rendered with `" | "` at the column cuts.
    pub fn render_row(&self, i: usize) -> String {
        render_values(self.row(i), &self.scheme.col_cuts)
    }
}

/// `[a b | c]` with separators exactly at `cuts`.
pub fn render_values(values: &[f64], cuts: &[usize]) -> String {
    let mut s = String::from("[");
    let mut next = cuts.iter().peekable();
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            if next.peek() == Some(&&i) {
                next.next();
                s.push_str(" | ");
            } else {
                s.push(' ');
            }
        }
        s.push_str(&fmt_num(*v));
    }
    s.push(']');
    s
}

pub(crate) fn fmt_num(v: f64) -> String {
    if v == 0.0 {
        // avoid "-0"
        "0".to_string()
    } else {
        format!("{v}")
    }
}

impl fmt::Display for SuperMatrix {
    /// One line per row; a dashed rule is drawn at each row cut.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines: Vec<String> = (0..self.rows).map(|i| self.render_row(i)).collect();
        let width = lines.iter().map(|l| l.len()).max().unwrap_or(0);
        let mut cuts = self.scheme.row_cuts.iter().peekable();
        for (i, line) in lines.iter().enumerate() {
            if cuts.peek() == Some(&&i) {
                cuts.next();
                writeln!(f, "{}", "-".repeat(width))?;
            }
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m<R: AsRef<[f64]>>(rows: &[R]) -> SuperMatrix {
        SuperMatrix::from_rows(rows).unwrap()
    }

    // naive triple loop, no blocks
    fn flat_product(a: &SuperMatrix, b: &SuperMatrix, s: Semiring) -> Vec<f64> {
        let mut out = Vec::new();
        for i in 0..a.rows() {
            for k in 0..b.cols() {
                let terms = (0..a.cols()).map(|j| s.combine(a.get(i, j), b.get(j, k)));
                out.push(match s {
                    Semiring::PlusTimes => terms.sum(),
                    Semiring::MaxMin => terms.fold(0.0, f64::max),
                });
            }
        }
        out
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            SuperMatrix::new(2, 2, vec![1.0; 3], PartitionScheme::trivial()),
            Err(Error::EntryCount { expected: 4, found: 3 })
        ));
        assert!(matches!(
            SuperMatrix::new(1, 2, vec![1.0, f64::NAN], PartitionScheme::trivial()),
            Err(Error::NanEntry { index: 1 })
        ));
        assert!(matches!(
            SuperMatrix::new(2, 2, vec![1.0; 4], PartitionScheme::new(vec![2], vec![])),
            Err(Error::OutOfRangeCut { .. })
        ));
    }

    #[test]
    fn transpose_swaps_cuts() {
        let a = m(&[[2.0, 1.0, 3.0], [0.0, 2.0, 0.0]])
            .with_cuts(vec![1], vec![2])
            .unwrap();
        let t = a.transpose();
        assert_eq!(t.scheme(), &PartitionScheme::new(vec![2], vec![1]));
        assert_eq!(t.entries(), &[2.0, 0.0, 1.0, 2.0, 3.0, 0.0]);
        assert_eq!(t.transpose(), a);
    }

    #[test]
    fn pseudo_transpose_small() {
        let a = m(&[[0.5, 0.3, 0.7], [0.4, 1.0, 0.0], [0.8, 0.9, 0.1]]);
        let p = a.pseudo_transpose();
        assert_eq!(p, m(&[[0.1, 0.0, 0.7], [0.9, 1.0, 0.3], [0.8, 0.4, 0.5]]));
        assert_eq!(p.pseudo_transpose(), a);
        let r = m(&[[0.1, 0.8, 1.0, 0.0, 0.7], [0.4, 0.0, 1.0, 0.7, 0.6]]);
        assert_eq!(
            r.pseudo_transpose(),
            m(&[[0.6, 0.7], [0.7, 0.0], [1.0, 1.0], [0.0, 0.8], [0.4, 0.1]])
        );
    }

    #[test]
    fn pseudo_transpose_reflects_cuts() {
        // 3x5, rows cut at 1, cols at 1 and 4
        let a = SuperMatrix::zeros(3, 5)
            .unwrap()
            .with_cuts(vec![1], vec![1, 4])
            .unwrap();
        let p = a.pseudo_transpose();
        assert_eq!(p.scheme(), &PartitionScheme::new(vec![1, 4], vec![2]));
        assert_eq!(p.pseudo_transpose().scheme(), a.scheme());
    }

    #[test]
    fn add_checks_scheme() {
        let a = m(&[[3.0, 0.0, 1.0], [1.0, 2.0, 7.0], [4.0, 3.0, 6.0]])
            .with_cuts(vec![2], vec![2])
            .unwrap();
        let b = m(&[[2.0, 1.0, 3.0], [5.0, 4.0, 1.0], [2.0, 0.0, 2.0]])
            .with_cuts(vec![1], vec![1])
            .unwrap();
        assert!(matches!(a.add(&b), Err(Error::SchemeMismatch { .. })));
        let z = SuperMatrix::zeros(3, 3).unwrap().with_cuts(vec![2], vec![2]).unwrap();
        assert_eq!(a.add(&z).unwrap(), a);
        let c = SuperMatrix::zeros(2, 3).unwrap();
        assert!(matches!(a.add(&c), Err(Error::ShapeMismatch { .. })));
        let e1 = m(&[[0.0, 1.0], [-1.0, 0.0]]);
        let e2 = m(&[[0.0, -1.0], [1.0, 1.0]]);
        assert_eq!(e1.add(&e2).unwrap(), m(&[[0.0, 0.0], [0.0, 1.0]]));
    }

    #[test]
    fn multiply_errors() {
        let a = SuperMatrix::zeros(2, 3).unwrap().with_cuts(vec![], vec![1]).unwrap();
        let b = SuperMatrix::zeros(3, 2).unwrap().with_cuts(vec![2], vec![]).unwrap();
        let err = a.multiply(&b, Semiring::PlusTimes).unwrap_err();
        assert_eq!(
            err,
            Error::BlockMismatch {
                left_col_cuts: vec![1],
                right_row_cuts: vec![2]
            }
        );
        assert!(err.to_string().contains("[1]") && err.to_string().contains("[2]"));
        let c = SuperMatrix::zeros(2, 2).unwrap();
        assert!(matches!(
            a.multiply(&c, Semiring::MaxMin),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn identity_is_neutral() {
        let a = m(&[[2.0, 1.0], [3.0, 5.0], [6.0, 1.0]]);
        let i = SuperMatrix::identity(3).unwrap();
        assert_eq!(i.multiply(&a, Semiring::PlusTimes).unwrap(), a);
    }

    #[test]
    fn flat_equal_semantics() {
        let a = m(&[[1.0, 2.0], [3.0, 4.0]]);
        let b = a.clone().with_cuts(vec![1], vec![]).unwrap();
        assert!(a.flat_equal(&b));
        assert_ne!(a, b);
        let mut e = a.clone().into_entries();
        e[3] = 4.5;
        let c = SuperMatrix::new(2, 2, e, PartitionScheme::trivial()).unwrap();
        assert!(!a.flat_equal(&c));
        assert!(!a.flat_equal(&a.transpose()));
    }

    #[test]
    fn symmetry_predicates() {
        let s = m(&[[1.0, 2.0, 3.0], [2.0, 5.0, 6.0], [3.0, 6.0, 9.0]]);
        // trivial scheme never counts
        assert!(!s.is_symmetric_supermatrix());
        let s1 = s.clone().with_cuts(vec![1], vec![1]).unwrap();
        assert!(s1.is_symmetric_supermatrix());
        let s2 = s.clone().with_cuts(vec![1], vec![2]).unwrap();
        assert!(!s2.is_symmetric_supermatrix());
        assert!(!SuperMatrix::zeros(2, 3).unwrap().is_symmetric_supermatrix());

        assert!(m(&[[0.4, 1.0], [0.0, 0.4]]).is_pseudo_symmetric());
        assert!(m(&[[0.3, 0.1, 0.5], [1.0, 0.4, 0.1], [0.2, 1.0, 0.3]]).is_pseudo_symmetric());
        assert!(!SuperMatrix::zeros(2, 3).unwrap().is_pseudo_symmetric());
        let p = m(&[[0.4, 1.0], [0.0, 0.4]]);
        assert!(!p.is_pseudo_symmetric_supermatrix());
        assert!(p.with_cuts(vec![1], vec![1]).unwrap().is_pseudo_symmetric_supermatrix());
    }

    #[test]
    fn rendering() {
        assert_eq!(render_values(&[1.0, 1.0, 0.0, 1.0, 0.5], &[3, 4]), "[1 1 0 | 1 | 0.5]");
        assert_eq!(render_values(&[-0.0, -2.0], &[]), "[0 -2]");
        let a = m(&[[1.0, 2.0], [3.0, 4.0]]).with_cuts(vec![1], vec![1]).unwrap();
        assert_eq!(a.to_string(), "[1 | 2]\n-------\n[3 | 4]\n");
    }

    fn cuts_strategy(dim: usize) -> impl Strategy<Value = Vec<usize>> {
        proptest::collection::btree_set(1..dim.max(2), 0..dim)
            .prop_map(move |s| s.into_iter().filter(|&c| c < dim).collect())
    }

    fn matrix_strategy(rows: usize, cols: usize, fuzzy: bool) -> impl Strategy<Value = Vec<f64>> {
        let cell = if fuzzy {
            (0u8..=10).prop_map(|x| f64::from(x) / 10.0).boxed()
        } else {
            (-5i8..=5).prop_map(f64::from).boxed()
        };
        proptest::collection::vec(cell, rows * cols)
    }

    prop_compose! {
        fn conformable()(n in 1usize..=8, k in 1usize..=8, p in 1usize..=8)
            (ra in cuts_strategy(n), inner in cuts_strategy(k), cb in cuts_strategy(p),
             a in matrix_strategy(n, k, false), b in matrix_strategy(k, p, false),
             fa in matrix_strategy(n, k, true), fb in matrix_strategy(k, p, true),
             n in Just(n), k in Just(k), p in Just(p))
            -> (SuperMatrix, SuperMatrix, SuperMatrix, SuperMatrix)
        {
            let sa = PartitionScheme::new(ra.clone(), inner.clone());
            let sb = PartitionScheme::new(inner.clone(), cb.clone());
            (SuperMatrix::new(n, k, a, sa.clone()).unwrap(),
             SuperMatrix::new(k, p, b, sb.clone()).unwrap(),
             SuperMatrix::new(n, k, fa, sa).unwrap(),
             SuperMatrix::new(k, p, fb, sb).unwrap())
        }
    }

    proptest! {
        #[test]
        fn blockwise_matches_flat((a, b, fa, fb) in conformable()) {
            let pt = a.multiply(&b, Semiring::PlusTimes).unwrap();
            prop_assert_eq!(pt.entries().to_vec(), flat_product(&a, &b, Semiring::PlusTimes));
            prop_assert_eq!(&pt.scheme().row_cuts, &a.scheme().row_cuts);
            prop_assert_eq!(&pt.scheme().col_cuts, &b.scheme().col_cuts);
            let mm = fa.multiply(&fb, Semiring::MaxMin).unwrap();
            prop_assert_eq!(mm.entries().to_vec(), flat_product(&fa, &fb, Semiring::MaxMin));
        }

        #[test]
        fn product_transpose_reversal((a, b, fa, fb) in conformable()) {
            for (x, y, s) in [(&a, &b, Semiring::PlusTimes), (&fa, &fb, Semiring::MaxMin)] {
                let lhs = x.multiply(y, s).unwrap().transpose();
                let rhs = y.transpose().multiply(&x.transpose(), s).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn transpose_matches_flat_oracle(r in 1usize..=6, c in 1usize..=6, seed in any::<u64>()) {
            let vals: Vec<f64> = (0..r * c).map(|i| ((seed >> (i % 60)) & 7) as f64).collect();
            let a = SuperMatrix::new(r, c, vals, PartitionScheme::trivial()).unwrap();
            let t = a.transpose();
            for i in 0..r { for j in 0..c { prop_assert_eq!(a.get(i, j), t.get(j, i)); } }
            prop_assert_eq!(t.transpose(), a);
        }

        #[test]
        fn pseudo_transpose_involution(r in 1usize..=7, c in 1usize..=7,
                                       rc in cuts_strategy(7), cc in cuts_strategy(7), seed in any::<u64>()) {
            let rc: Vec<usize> = rc.into_iter().filter(|&x| x < r).collect();
            let cc: Vec<usize> = cc.into_iter().filter(|&x| x < c).collect();
            let vals: Vec<f64> = (0..r * c).map(|i| ((seed.rotate_left(i as u32)) % 11) as f64 / 10.0).collect();
            let a = SuperMatrix::new(r, c, vals, PartitionScheme::new(rc, cc)).unwrap();
            prop_assert_eq!(a.pseudo_transpose().pseudo_transpose(), a);
        }
    }
}
