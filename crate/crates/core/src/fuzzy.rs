//! Fuzzy-domain matrices, state vectors, and the vector transforms shared by
//! the inference models.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;

use crate::algebra::{render_values, Semiring, SuperMatrix};
use crate::error::{Error, Result};
use crate::partition::{segments, PartitionScheme};

/// A supermatrix whose entries all lie in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyMatrix(SuperMatrix);

impl FuzzyMatrix {
    pub fn new(m: SuperMatrix) -> Result<Self> {
        check_unit_range(m.entries())?;
        Ok(FuzzyMatrix(m))
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        Self::new(SuperMatrix::from_rows(rows)?)
    }

    pub fn into_inner(self) -> SuperMatrix {
        self.0
    }

    pub fn compose(&self, other: &FuzzyMatrix) -> Result<FuzzyMatrix> {
        Ok(FuzzyMatrix(self.0.multiply(&other.0, Semiring::MaxMin)?))
    }

    pub fn transpose(&self) -> FuzzyMatrix {
        FuzzyMatrix(self.0.transpose())
    }
}

impl Deref for FuzzyMatrix {
    type Target = SuperMatrix;
    fn deref(&self) -> &SuperMatrix {
        &self.0
    }
}

impl TryFrom<SuperMatrix> for FuzzyMatrix {
    type Error = Error;
    fn try_from(m: SuperMatrix) -> Result<Self> {
        Self::new(m)
    }
}

fn check_unit_range(values: &[f64]) -> Result<()> {
    match values.iter().position(|&x| !(0.0..=1.0).contains(&x)) {
        Some(index) => Err(Error::RangeViolation {
            index,
            value: values[index],
        }),
        None => Ok(()),
    }
}

/// `min(a_i, a_j)` for a fuzzy row vector `a`, partitioned `(C, C)` where `C`
/// are the vector's cuts.
pub fn super_pseudo_product(a: &FuzzyMatrix) -> Result<FuzzyMatrix> {
    if a.rows() != 1 {
        return Err(Error::NotRowVector {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let v = a.row(0);
    let n = v.len();
    let mut entries = Vec::with_capacity(n * n);
    for &x in v {
        entries.extend(v.iter().map(|&y| x.min(y)));
    }
    let cuts = a.scheme().col_cuts.clone();
    FuzzyMatrix::new(SuperMatrix::new(n, n, entries, PartitionScheme::symmetric(cuts))?)
}

/// Max–min product of `x` with its own transpose: `x xᵗ` when `x` has no row
/// cuts (a special row supermatrix, which includes the unpartitioned case),
/// `xᵗ x` when it has row cuts but no column cuts.
pub fn minor_product_moment(x: &FuzzyMatrix) -> Result<FuzzyMatrix> {
    let s = x.scheme();
    if s.row_cuts.is_empty() {
        x.compose(&x.transpose())
    } else if s.col_cuts.is_empty() {
        x.transpose().compose(x)
    } else {
        Err(Error::NotSpecial)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StateDomain {
    Binary,
    Bipolar,
    /// integers in `[-m, m]`
    Scaled(u32),
    Fuzzy,
}

impl StateDomain {
    pub fn contains(self, x: f64) -> bool {
        match self {
            StateDomain::Binary => x == 0.0 || x == 1.0,
            StateDomain::Bipolar => x == -1.0 || x == 0.0 || x == 1.0,
            StateDomain::Scaled(m) => x.fract() == 0.0 && x.abs() <= f64::from(m),
            StateDomain::Fuzzy => (0.0..=1.0).contains(&x),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            StateDomain::Binary => "binary",
            StateDomain::Bipolar => "bipolar",
            StateDomain::Scaled(_) => "scaled",
            StateDomain::Fuzzy => "fuzzy",
        }
    }
}

impl fmt::Display for StateDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateDomain::Scaled(m) => write!(f, "scaled[-{m},{m}]"),
            d => f.write_str(d.name()),
        }
    }
}

/// A row state vector with one block per expert.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperStateVector {
    domain: StateDomain,
    values: Vec<f64>,
    cuts: Vec<usize>,
}

impl SuperStateVector {
    pub fn new(domain: StateDomain, values: Vec<f64>, cuts: Vec<usize>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyMatrix { rows: 1, cols: 0 });
        }
        PartitionScheme::new(vec![], cuts.clone()).validate(1, values.len())?;
        if let Some(index) = values.iter().position(|&x| !domain.contains(x)) {
            return Err(Error::DomainViolation {
                index,
                value: values[index],
                domain: domain.to_string(),
            });
        }
        Ok(SuperStateVector { domain, values, cuts })
    }

    pub fn binary(values: Vec<f64>, cuts: Vec<usize>) -> Result<Self> {
        Self::new(StateDomain::Binary, values, cuts)
    }

    pub fn fuzzy(values: Vec<f64>, cuts: Vec<usize>) -> Result<Self> {
        Self::new(StateDomain::Fuzzy, values, cuts)
    }

    pub fn zeros(domain: StateDomain, n: usize, cuts: Vec<usize>) -> Result<Self> {
        Self::new(domain, vec![0.0; n], cuts)
    }

    pub fn domain(&self) -> StateDomain {
        self.domain
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn cuts(&self) -> &[usize] {
        &self.cuts
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// 0-based indices of the strictly positive coordinates.
    pub fn on_set(&self) -> BTreeSet<usize> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 0.0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn blocks(&self) -> Vec<&[f64]> {
        segments(&self.cuts, self.values.len())
            .into_iter()
            .map(|r| &self.values[r])
            .collect()
    }

    pub fn as_row(&self) -> SuperMatrix {
        SuperMatrix::row_vector(self.values.clone(), self.cuts.clone())
            .expect("state vector invariants imply a valid row vector")
    }

    /// Same values and cuts, reinterpreted in another domain.
    pub fn with_domain(self, domain: StateDomain) -> Result<Self> {
        Self::new(domain, self.values, self.cuts)
    }

    pub fn max_abs_diff(&self, other: &SuperStateVector) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn render(&self) -> String {
        render_values(&self.values, &self.cuts)
    }
}

impl fmt::Display for SuperStateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn as_row_vector(raw: &SuperMatrix) -> Result<&[f64]> {
    if raw.rows() != 1 {
        return Err(Error::NotRowVector {
            rows: raw.rows(),
            cols: raw.cols(),
        });
    }
    Ok(raw.row(0))
}

/// Threshold and update: 1 where `raw > 0` or the index is clamped, else 0.
/// The output keeps `raw`'s column cuts.
pub fn threshold_update(raw: &SuperMatrix, clamp: &BTreeSet<usize>) -> Result<SuperStateVector> {
    let v = as_row_vector(raw)?;
    let values = v
        .iter()
        .enumerate()
        .map(|(i, &x)| if x > 0.0 || clamp.contains(&i) { 1.0 } else { 0.0 })
        .collect();
    SuperStateVector::binary(values, raw.scheme().col_cuts.clone())
}

/// Binary threshold signal: 1 above the threshold, 0 below, and the previous
/// signal on a tie.
pub fn bam_signal(raw: &SuperMatrix, previous: &SuperStateVector, thresholds: &[f64]) -> Result<SuperStateVector> {
    let v = as_row_vector(raw)?;
    for len in [previous.len(), thresholds.len()] {
        if len != v.len() {
            return Err(Error::DimensionMismatch {
                expected: v.len(),
                found: len,
            });
        }
    }
    let values = v
        .iter()
        .zip(previous.values())
        .zip(thresholds)
        .map(|((&x, &prev), &u)| {
            if x > u {
                1.0
            } else if x < u {
                0.0
            } else {
                prev
            }
        })
        .collect();
    SuperStateVector::binary(values, raw.scheme().col_cuts.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn row(values: &[f64], cuts: &[usize]) -> SuperMatrix {
        SuperMatrix::row_vector(values.to_vec(), cuts.to_vec()).unwrap()
    }

    #[test]
    fn fuzzy_range_checked() {
        assert!(matches!(
            FuzzyMatrix::from_rows(&[[0.2, 1.2]]),
            Err(Error::RangeViolation { index: 1, .. })
        ));
        assert!(FuzzyMatrix::from_rows(&[[0.0, 1.0]]).is_ok());
    }

    #[test]
    fn pseudo_product_small() {
        let a = FuzzyMatrix::new(row(&[0.0, 1.0, 0.0, 0.3, 1.0, 0.2, 0.5, 0.0], &[3, 4])).unwrap();
        let p = super_pseudo_product(&a).unwrap();
        assert_eq!(p.row(1), &[0.0, 1.0, 0.0, 0.3, 1.0, 0.2, 0.5, 0.0]);
        assert_eq!(p.row(3), &[0.0, 0.3, 0.0, 0.3, 0.3, 0.2, 0.3, 0.0]);
        assert!(p.is_symmetric_supermatrix());
        assert_eq!(p.scheme(), &PartitionScheme::symmetric(vec![3, 4]));

        let c = FuzzyMatrix::new(row(&[0.6; 4], &[])).unwrap();
        assert!(super_pseudo_product(&c).unwrap().entries().iter().all(|&x| x == 0.6));

        let col = FuzzyMatrix::new(SuperMatrix::column_vector(vec![0.1, 0.2], vec![]).unwrap()).unwrap();
        assert!(matches!(super_pseudo_product(&col), Err(Error::NotRowVector { .. })));
    }

    #[test]
    fn moment_shapes() {
        let z = FuzzyMatrix::new(SuperMatrix::zeros(3, 4).unwrap()).unwrap();
        let mz = minor_product_moment(&z).unwrap();
        assert_eq!(mz.shape(), (3, 3));
        assert!(mz.entries().iter().all(|&x| x == 0.0));

        let y = FuzzyMatrix::new(SuperMatrix::zeros(4, 2).unwrap().with_cuts(vec![1], vec![]).unwrap()).unwrap();
        assert_eq!(minor_product_moment(&y).unwrap().shape(), (2, 2));

        let both = FuzzyMatrix::new(SuperMatrix::zeros(4, 2).unwrap().with_cuts(vec![1], vec![1]).unwrap()).unwrap();
        assert_eq!(minor_product_moment(&both), Err(Error::NotSpecial));
    }

    #[test]
    fn threshold_examples() {
        let raw = row(
            &[1.0, 2.0, 0.0, 2.0, 2.0, 2.0, 0.0, 2.0, 2.0, 2.0, 1.0, 0.0, 0.0, 1.0],
            &[4, 6, 9],
        );
        let out = threshold_update(&raw, &BTreeSet::new()).unwrap();
        assert_eq!(out.render(), "[1 1 0 1 | 1 1 | 0 1 1 | 1 1 0 0 1]");

        let z = row(&[0.0; 5], &[2]);
        assert_eq!(threshold_update(&z, &BTreeSet::new()).unwrap().values(), &[0.0; 5]);
        let clamped = threshold_update(&z, &[0, 4].into()).unwrap();
        assert_eq!(clamped.values(), &[1.0, 0.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn bam_signal_branches() {
        let raw = row(&[2.0, 0.0, -1.0], &[]);
        let prev = SuperStateVector::binary(vec![0.0, 1.0, 1.0], vec![]).unwrap();
        let s = bam_signal(&raw, &prev, &[0.0; 3]).unwrap();
        assert_eq!(s.values(), &[1.0, 1.0, 0.0]);
        // all ties → previous
        let s = bam_signal(&raw, &prev, &[2.0, 0.0, -1.0]).unwrap();
        assert_eq!(s.values(), prev.values());
        assert!(matches!(
            bam_signal(&raw, &prev, &[0.0; 2]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn state_vector_domains() {
        assert!(SuperStateVector::new(StateDomain::Binary, vec![0.0, 2.0], vec![]).is_err());
        assert!(SuperStateVector::new(StateDomain::Bipolar, vec![-1.0, 1.0], vec![1]).is_ok());
        assert!(SuperStateVector::new(StateDomain::Scaled(4), vec![-4.0, 3.0], vec![]).is_ok());
        assert!(SuperStateVector::new(StateDomain::Scaled(4), vec![-5.0], vec![]).is_err());
        assert!(SuperStateVector::new(StateDomain::Scaled(4), vec![0.5], vec![]).is_err());
        assert!(SuperStateVector::new(StateDomain::Fuzzy, vec![0.5, 1.0], vec![2]).is_err());
        let v = SuperStateVector::binary(vec![1.0, 0.0, 1.0], vec![1]).unwrap();
        assert_eq!(v.on_set(), [0, 2].into());
        assert_eq!(v.blocks(), vec![&[1.0][..], &[0.0, 1.0][..]]);
    }

    fn fuzzy_matrix(r: usize, c: usize) -> impl Strategy<Value = FuzzyMatrix> {
        proptest::collection::vec((0u8..=10).prop_map(|x| f64::from(x) / 10.0), r * c).prop_map(move |v| {
            FuzzyMatrix::new(SuperMatrix::new(r, c, v, PartitionScheme::trivial()).unwrap()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn pseudo_product_is_outer_min(v in proptest::collection::vec(0u8..=10, 1..10)) {
            let v: Vec<f64> = v.into_iter().map(|x| f64::from(x) / 10.0).collect();
            let a = FuzzyMatrix::new(row(&v, &[])).unwrap();
            let p = super_pseudo_product(&a).unwrap();
            for i in 0..v.len() {
                prop_assert_eq!(p.get(i, i), v[i]);
                for j in 0..v.len() {
                    prop_assert_eq!(p.get(i, j), v[i].min(v[j]));
                }
            }
            prop_assert!(p.is_flat_symmetric());
        }

        #[test]
        fn moment_symmetric_with_row_max_diagonal(x in (1usize..=8, 1usize..=8).prop_flat_map(|(r, c)| fuzzy_matrix(r, c))) {
            let m = minor_product_moment(&x).unwrap();
            prop_assert!(m.is_flat_symmetric());
            for i in 0..x.rows() {
                let rmax = x.row(i).iter().cloned().fold(0.0, f64::max);
                prop_assert_eq!(m.get(i, i), rmax);
                for k in 0..x.rows() {
                    let oracle = (0..x.cols()).map(|j| x.get(i, j).min(x.get(k, j))).fold(0.0, f64::max);
                    prop_assert_eq!(m.get(i, k), oracle);
                }
            }
        }

        #[test]
        fn threshold_idempotent_and_monotone(
            raw in proptest::collection::vec(-3i8..=3, 1..12),
            clamp_bits in any::<u16>(), extra_bits in any::<u16>())
        {
            let n = raw.len();
            let raw = row(&raw.into_iter().map(f64::from).collect::<Vec<_>>(), &[]);
            let clamp: BTreeSet<usize> = (0..n).filter(|i| clamp_bits >> i & 1 == 1).collect();
            let bigger: BTreeSet<usize> = (0..n).filter(|i| (clamp_bits | extra_bits) >> i & 1 == 1).collect();
            let once = threshold_update(&raw, &clamp).unwrap();
            let twice = threshold_update(&once.as_row(), &clamp).unwrap();
            prop_assert_eq!(&once, &twice);
            let wide = threshold_update(&raw, &bigger).unwrap();
            for i in 0..n {
                prop_assert!(wide.values()[i] >= once.values()[i]);
            }
        }

        #[test]
        fn bam_signal_three_branches(raw in proptest::collection::vec(-3i8..=3, 1..10), seed in any::<u32>()) {
            let n = raw.len();
            let u: Vec<f64> = (0..n).map(|i| f64::from((seed >> i) as i8 % 3)).collect();
            let prev: Vec<f64> = (0..n).map(|i| f64::from((seed >> (i + 7)) & 1)).collect();
            let out = bam_signal(
                &row(&raw.iter().map(|&x| f64::from(x)).collect::<Vec<_>>(), &[]),
                &SuperStateVector::binary(prev.clone(), vec![]).unwrap(),
                &u,
            ).unwrap();
            for i in 0..n {
                let x = f64::from(raw[i]);
                let expect = match x.partial_cmp(&u[i]).unwrap() {
                    std::cmp::Ordering::Greater => 1.0,
                    std::cmp::Ordering::Less => 0.0,
                    std::cmp::Ordering::Equal => prev[i],
                };
                prop_assert_eq!(out.values()[i], expect);
            }
        }
    }
}
