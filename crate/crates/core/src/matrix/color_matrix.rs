use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quandle::{Element, QuandleError};

/// Dense conversion is refused above this many rows or columns.
pub const DENSE_LIMIT: u64 = 1 << 16;

#[derive(Debug, Error)]
pub enum MatrixError {
    #[error("cannot compose a matrix with {left} top endpoints and one with {right} bottom endpoints")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrices are indexed by different quandles (orders {left} and {right})")]
    QuandleMismatch { left: usize, right: usize },
    #[error("coloring count overflowed 64 bits")]
    Overflow,
    #[error("boundary width {width} over a quandle of order {d} exceeds the limit of {limit} states")]
    WidthExceeded { width: usize, d: usize, limit: u64 },
    #[error("entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    IndexOutOfRange { row: u64, col: u64, rows: u64, cols: u64 },
    #[error("braid generator s{index} needs 1 <= {index} < {strands}")]
    BraidIndex { index: usize, strands: usize },
    #[error("cannot parse braid word at `{0}` (expected tokens like s1, -s2)")]
    BraidWord(String),
    #[error("matrix of {rows}x{cols} is too large to print densely")]
    TooLargeForDense { rows: u64, cols: u64 },
    #[error(transparent)]
    Quandle(#[from] QuandleError),
}

/// `d^width`, failing if it does not fit.
pub fn state_count(d: usize, width: usize) -> Result<u64, MatrixError> {
    let w = u32::try_from(width).map_err(|_| MatrixError::Overflow)?;
    (d as u64).checked_pow(w).ok_or(MatrixError::Overflow)
}

/// Coloring matrix of a tangle from `m` to `n` over a quandle of order `d`:
/// rows index colorings of the bottom endpoints, columns colorings of the
/// top endpoints, and each entry counts the colorings agreeing with both.
///
/// Storage is a list of `(row, col, count)` triplets sorted row-major with
/// every count positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorMatrix {
    d: usize,
    m: usize,
    n: usize,
    rows: u64,
    cols: u64,
    entries: Vec<(u64, u64, u64)>,
}

impl ColorMatrix {
    /// Builds a matrix from arbitrary triplets. Duplicates are summed and
    /// zeros dropped.
    pub fn from_triplets(
        d: usize,
        m: usize,
        n: usize,
        triplets: impl IntoIterator<Item = (u64, u64, u64)>,
    ) -> Result<Self, MatrixError> {
        let rows = state_count(d, m)?;
        let cols = state_count(d, n)?;
        let mut acc: BTreeMap<(u64, u64), u64> = BTreeMap::new();
        for (row, col, v) in triplets {
            if row >= rows || col >= cols {
                return Err(MatrixError::IndexOutOfRange { row, col, rows, cols });
            }
            let slot = acc.entry((row, col)).or_insert(0);
            *slot = slot.checked_add(v).ok_or(MatrixError::Overflow)?;
        }
        let entries = acc.into_iter().filter(|&(_, v)| v > 0).map(|((r, c), v)| (r, c, v)).collect();
        Ok(ColorMatrix { d, m, n, rows, cols, entries })
    }

    // caller guarantees sorted, in range, positive, no duplicates
    fn from_sorted(d: usize, m: usize, n: usize, rows: u64, cols: u64, entries: Vec<(u64, u64, u64)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| (w[0].0, w[0].1) < (w[1].0, w[1].1)));
        ColorMatrix { d, m, n, rows, cols, entries }
    }

    pub fn identity(d: usize, width: usize) -> Result<Self, MatrixError> {
        let size = state_count(d, width)?;
        Ok(Self::from_sorted(d, width, width, size, size, (0..size).map(|i| (i, i, 1)).collect()))
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Bottom width.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Top width.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> u64 {
        self.rows
    }

    pub fn cols(&self) -> u64 {
        self.cols
    }

    pub fn entries(&self) -> &[(u64, u64, u64)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, row: u64, col: u64) -> u64 {
        self.entries
            .binary_search_by(|&(r, c, _)| (r, c).cmp(&(row, col)))
            .map(|i| self.entries[i].2)
            .unwrap_or(0)
    }

    /// The single entry of a link's `1x1` matrix.
    pub fn scalar(&self) -> Option<u64> {
        (self.rows == 1 && self.cols == 1).then(|| self.get(0, 0))
    }

    pub fn total(&self) -> Result<u64, MatrixError> {
        self.entries.iter().try_fold(0u64, |acc, e| acc.checked_add(e.2).ok_or(MatrixError::Overflow))
    }

    pub fn transpose(&self) -> Self {
        let mut entries: Vec<_> = self.entries.iter().map(|&(r, c, v)| (c, r, v)).collect();
        entries.sort_unstable();
        Self::from_sorted(self.d, self.n, self.m, self.cols, self.rows, entries)
    }

    /// True when every row and every column holds exactly one entry, equal to 1.
    pub fn is_permutation(&self) -> bool {
        if self.rows != self.cols || self.entries.len() as u64 != self.rows {
            return false;
        }
        let mut seen_cols = vec![false; self.cols as usize];
        self.entries.iter().enumerate().all(|(i, &(r, c, v))| {
            let fresh = !std::mem::replace(&mut seen_cols[c as usize], true);
            v == 1 && r == i as u64 && fresh
        })
    }

    fn row_range(&self, row: u64) -> std::ops::Range<usize> {
        let start = self.entries.partition_point(|e| e.0 < row);
        let end = start + self.entries[start..].partition_point(|e| e.0 == row);
        start..end
    }

    fn row_groups(&self) -> impl Iterator<Item = &[(u64, u64, u64)]> {
        self.entries.chunk_by(|a, b| a.0 == b.0)
    }

    /// `self · other`: composition with `self` at the bottom.
    pub fn multiply(&self, other: &ColorMatrix) -> Result<ColorMatrix, MatrixError> {
        if self.d != other.d {
            return Err(MatrixError::QuandleMismatch { left: self.d, right: other.d });
        }
        if self.n != other.m {
            return Err(MatrixError::DimensionMismatch { left: self.n, right: other.m });
        }
        let mut entries = Vec::new();
        let mut acc: BTreeMap<u64, u64> = BTreeMap::new();
        for group in self.row_groups() {
            let row = group[0].0;
            acc.clear();
            for &(_, mid, a) in group {
                for &(_, col, b) in &other.entries[other.row_range(mid)] {
                    let prod = a.checked_mul(b).ok_or(MatrixError::Overflow)?;
                    let slot = acc.entry(col).or_insert(0);
                    *slot = slot.checked_add(prod).ok_or(MatrixError::Overflow)?;
                }
            }
            entries.extend(acc.iter().map(|(&col, &v)| (row, col, v)));
        }
        Ok(Self::from_sorted(self.d, self.m, other.n, self.rows, other.cols, entries))
    }

    /// Kronecker product with `self` as the most significant factor, the
    /// coloring matrix of the two tangles side by side.
    pub fn kronecker(&self, other: &ColorMatrix) -> Result<ColorMatrix, MatrixError> {
        if self.d != other.d {
            return Err(MatrixError::QuandleMismatch { left: self.d, right: other.d });
        }
        let rows = self.rows.checked_mul(other.rows).ok_or(MatrixError::Overflow)?;
        let cols = self.cols.checked_mul(other.cols).ok_or(MatrixError::Overflow)?;
        let mut entries = Vec::with_capacity(self.entries.len() * other.entries.len());
        for a_row in self.row_groups() {
            for b_row in other.row_groups() {
                for &(ra, ca, a) in a_row {
                    for &(rb, cb, b) in b_row {
                        let v = a.checked_mul(b).ok_or(MatrixError::Overflow)?;
                        entries.push((ra * other.rows + rb, ca * other.cols + cb, v));
                    }
                }
            }
        }
        Ok(Self::from_sorted(self.d, self.m + other.m, self.n + other.n, rows, cols, entries))
    }

    pub fn to_dense(&self) -> Result<Vec<Vec<u64>>, MatrixError> {
        if self.rows > DENSE_LIMIT || self.cols > DENSE_LIMIT {
            return Err(MatrixError::TooLargeForDense { rows: self.rows, cols: self.cols });
        }
        let mut dense = vec![vec![0; self.cols as usize]; self.rows as usize];
        for &(r, c, v) in &self.entries {
            dense[r as usize][c as usize] = v;
        }
        Ok(dense)
    }

    pub fn from_dense(d: usize, m: usize, n: usize, dense: &[Vec<u64>]) -> Result<Self, MatrixError> {
        let triplets = dense.iter().enumerate().flat_map(|(r, row)| {
            row.iter().enumerate().map(move |(c, &v)| (r as u64, c as u64, v))
        });
        let mat = Self::from_triplets(d, m, n, triplets)?;
        if dense.len() as u64 != mat.rows || dense.iter().any(|r| r.len() as u64 != mat.cols) {
            return Err(MatrixError::IndexOutOfRange {
                row: dense.len() as u64,
                col: dense.first().map_or(0, |r| r.len() as u64),
                rows: mat.rows,
                cols: mat.cols,
            });
        }
        Ok(mat)
    }

    pub fn to_document(&self) -> MatrixDocument {
        MatrixDocument {
            d: self.d,
            m: self.m,
            n: self.n,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&(r, c, v)| [r, c, v]).collect(),
        }
    }
}

impl fmt::Display for ColorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_dense() {
            Ok(dense) if self.rows <= 81 && self.cols <= 81 => {
                for row in dense {
                    let line: Vec<String> = row.iter().map(u64::to_string).collect();
                    writeln!(f, "{}", line.join(" "))?;
                }
                Ok(())
            }
            _ => {
                writeln!(f, "{}x{} matrix, {} nonzero entries", self.rows, self.cols, self.entries.len())?;
                for &(r, c, v) in &self.entries {
                    writeln!(f, "  ({r}, {c}) = {v}")?;
                }
                Ok(())
            }
        }
    }
}

/// Structured form of a [`ColorMatrix`]: entries as `[row, col, value]`
/// sorted row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    pub d: usize,
    pub m: usize,
    pub n: usize,
    pub rows: u64,
    pub cols: u64,
    pub entries: Vec<[u64; 3]>,
}

impl MatrixDocument {
    pub fn into_matrix(self) -> Result<ColorMatrix, MatrixError> {
        let mat = ColorMatrix::from_triplets(self.d, self.m, self.n, self.entries.iter().map(|e| (e[0], e[1], e[2])))?;
        if mat.rows != self.rows || mat.cols != self.cols {
            return Err(MatrixError::DimensionMismatch { left: self.rows as usize, right: mat.rows as usize });
        }
        Ok(mat)
    }
}

/// Integer index of a boundary coloring: the tuple read as a base-`d`
/// numeral with the leftmost strand most significant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Encoding {
    pub d: usize,
    pub width: usize,
}

impl Encoding {
    pub fn new(d: usize, width: usize) -> Self {
        Encoding { d, width }
    }

    pub fn size(&self) -> Result<u64, MatrixError> {
        state_count(self.d, self.width)
    }

    pub fn index(&self, colors: &[Element]) -> u64 {
        debug_assert_eq!(colors.len(), self.width);
        colors.iter().fold(0u64, |acc, &c| acc * self.d as u64 + c as u64)
    }

    pub fn decode(&self, mut index: u64) -> Vec<Element> {
        let mut out = vec![0; self.width];
        for slot in out.iter_mut().rev() {
            *slot = (index % self.d as u64) as Element;
            index /= self.d as u64;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn random_matrix(d: usize, m: usize, n: usize, seed: &[u64]) -> ColorMatrix {
        let rows = state_count(d, m).unwrap();
        let cols = state_count(d, n).unwrap();
        let trip = seed.chunks(3).filter(|c| c.len() == 3).map(|c| (c[0] % rows, c[1] % cols, c[2] % 4));
        ColorMatrix::from_triplets(d, m, n, trip).unwrap()
    }

    // dense reference product
    fn naive_multiply(a: &ColorMatrix, b: &ColorMatrix) -> Vec<Vec<u64>> {
        let (x, y) = (a.to_dense().unwrap(), b.to_dense().unwrap());
        (0..x.len())
            .map(|i| (0..y[0].len()).map(|j| (0..y.len()).map(|k| x[i][k] * y[k][j]).sum()).collect())
            .collect()
    }

    #[test]
    fn encoding_leftmost_significant() {
        let e = Encoding::new(3, 2);
        assert_eq!(e.index(&[0, 0]), 0);
        assert_eq!(e.index(&[1, 1]), 4);
        assert_eq!(e.index(&[2, 0]), 6);
        assert_eq!(e.decode(7), vec![2, 1]);
        assert_eq!(Encoding::new(5, 0).index(&[]), 0);
    }

    #[test]
    fn identity_is_unit() {
        let a = random_matrix(3, 1, 2, &[0, 1, 2, 2, 8, 3, 1, 4, 1]);
        assert_eq!(a.multiply(&ColorMatrix::identity(3, 2).unwrap()).unwrap(), a);
        assert_eq!(ColorMatrix::identity(3, 1).unwrap().multiply(&a).unwrap(), a);
        let unit = ColorMatrix::identity(3, 0).unwrap();
        assert_eq!(a.kronecker(&unit).unwrap(), a);
        assert_eq!(unit.kronecker(&a).unwrap(), a);
    }

    #[test]
    fn multiply_checks_shapes() {
        let a = ColorMatrix::identity(3, 1).unwrap();
        let b = ColorMatrix::identity(3, 2).unwrap();
        assert!(matches!(a.multiply(&b), Err(MatrixError::DimensionMismatch { left: 1, right: 2 })));
        let c = ColorMatrix::identity(2, 1).unwrap();
        assert!(matches!(a.multiply(&c), Err(MatrixError::QuandleMismatch { .. })));
        assert!(matches!(a.kronecker(&c), Err(MatrixError::QuandleMismatch { .. })));
    }

    #[test]
    fn overflow_is_detected() {
        let big = ColorMatrix::from_triplets(2, 0, 0, [(0, 0, u64::MAX / 2 + 1)]).unwrap();
        assert!(matches!(big.multiply(&big), Err(MatrixError::Overflow)));
        assert!(matches!(big.kronecker(&big), Err(MatrixError::Overflow)));
        assert!(matches!(
            ColorMatrix::from_triplets(2, 0, 0, [(0, 0, u64::MAX), (0, 0, 1)]),
            Err(MatrixError::Overflow)
        ));
    }

    #[test]
    fn triplets_are_canonical() {
        let m = ColorMatrix::from_triplets(2, 1, 1, [(1, 0, 2), (0, 1, 1), (1, 0, 3), (0, 0, 0)]).unwrap();
        assert_eq!(m.entries(), &[(0, 1, 1), (1, 0, 5)]);
        assert!(ColorMatrix::from_triplets(2, 1, 1, [(2, 0, 1)]).is_err());
    }

    #[test]
    fn dense_guard() {
        let wide = ColorMatrix::identity(2, 17).unwrap();
        assert!(matches!(wide.to_dense(), Err(MatrixError::TooLargeForDense { .. })));
    }

    #[test]
    fn document_round_trip() {
        let a = random_matrix(3, 2, 1, &[4, 2, 3, 8, 1, 1]);
        assert_eq!(a.to_document().into_matrix().unwrap(), a);
    }

    proptest! {
        #[test]
        fn sparse_product_matches_dense(
            d in 1usize..4, m in 0usize..3, l in 0usize..3, n in 0usize..3,
            sa in proptest::collection::vec(0u64..1000, 0..30),
            sb in proptest::collection::vec(0u64..1000, 0..30),
        ) {
            let a = random_matrix(d, m, l, &sa);
            let b = random_matrix(d, l, n, &sb);
            let c = a.multiply(&b).unwrap();
            prop_assert_eq!(c.to_dense().unwrap(), naive_multiply(&a, &b));
        }

        #[test]
        fn kronecker_entries_factor(
            d in 1usize..4, m1 in 0usize..3, n1 in 0usize..3, m2 in 0usize..3, n2 in 0usize..3,
            sa in proptest::collection::vec(0u64..1000, 0..30),
            sb in proptest::collection::vec(0u64..1000, 0..30),
            picks in proptest::collection::vec(0u64..10_000, 4),
        ) {
            let a = random_matrix(d, m1, n1, &sa);
            let b = random_matrix(d, m2, n2, &sb);
            let k = a.kronecker(&b).unwrap();
            prop_assert_eq!((k.m(), k.n()), (m1 + m2, n1 + n2));
            let (r1, c1) = (picks[0] % a.rows(), picks[1] % a.cols());
            let (r2, c2) = (picks[2] % b.rows(), picks[3] % b.cols());
            // concatenated tuples index as (coarse, fine)
            let row = Encoding::new(d, m1 + m2).index(
                &[Encoding::new(d, m1).decode(r1), Encoding::new(d, m2).decode(r2)].concat());
            let col = Encoding::new(d, n1 + n2).index(
                &[Encoding::new(d, n1).decode(c1), Encoding::new(d, n2).decode(c2)].concat());
            prop_assert_eq!(k.get(row, col), a.get(r1, c1) * b.get(r2, c2));
            prop_assert!(k.entries().windows(2).all(|w| (w[0].0, w[0].1) < (w[1].0, w[1].1)));
        }

        #[test]
        fn encoding_bijective(d in 1usize..6, width in 0usize..5, raw in 0u64..100_000) {
            let e = Encoding::new(d, width);
            let idx = raw % e.size().unwrap();
            prop_assert_eq!(e.index(&e.decode(idx)), idx);
        }
    }
}
