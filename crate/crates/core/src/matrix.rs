//! Dense row-major matrices over [`RadicalScalar`].
//!
//! Constructions are emitted row-oriented: each row is a frame vector. The
//! synthesis matrix (frame vectors as columns) is the transpose.

use std::fmt;
use std::ops::Index;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::{RadicalScalar, Rational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<RadicalScalar>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<RadicalScalar>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::dimension("new", format!("empty shape {rows}x{cols}")));
        }
        if entries.len() != rows * cols {
            return Err(Error::dimension(
                "new",
                format!("{} entries for shape {rows}x{cols}", entries.len()),
            ));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RadicalScalar) -> Self {
        assert!(rows > 0 && cols > 0, "matrix shape must be nonempty");
        let entries = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Self {
            rows,
            cols,
            entries,
        }
    }

    /// Builds a matrix from nested rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<RadicalScalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::dimension(
                "from_rows",
                format!("row {} has length {}, expected {cols}", bad + 1, rows[bad].len()),
            ));
        }
        let n = rows.len();
        Self::new(n, cols, rows.into_iter().flatten().collect())
    }

    pub fn from_integers<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&v| RadicalScalar::from_integer(v)).collect())
                .collect(),
        )
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| RadicalScalar::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                RadicalScalar::one()
            } else {
                RadicalScalar::zero()
            }
        })
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&RadicalScalar> {
        (i < self.rows && j < self.cols).then(|| &self.entries[i * self.cols + j])
    }

    pub fn entries(&self) -> &[RadicalScalar] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[RadicalScalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = &RadicalScalar> + '_ {
        (0..self.rows).map(move |i| &self[(i, j)])
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[RadicalScalar]> + '_ {
        self.entries.chunks(self.cols)
    }

    pub fn row_dot(&self, i: usize, other: &ExactMatrix, k: usize) -> RadicalScalar {
        RadicalScalar::dot(self.row(i).iter().zip(other.row(k)))
    }

    pub fn col_dot(&self, a: usize, b: usize) -> RadicalScalar {
        RadicalScalar::dot(self.column(a).zip(self.column(b)))
    }

    pub fn transpose(&self) -> ExactMatrix {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn matmul(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::dimension(
                "matmul",
                format!("{}x{} times {}x{}", self.rows, self.cols, rhs.rows, rhs.cols),
            ));
        }
        let rhs_t = rhs.transpose();
        let entries = (0..self.rows * rhs.cols)
            .into_par_iter()
            .map(|k| self.row_dot(k / rhs.cols, &rhs_t, k % rhs.cols))
            .collect();
        Ok(ExactMatrix {
            rows: self.rows,
            cols: rhs.cols,
            entries,
        })
    }

    /// `AᵀA`: inner products of columns (the frame operator under the
    /// rows-as-frame-vectors convention).
    pub fn gram_columns(&self) -> ExactMatrix {
        self.transpose().gram_rows()
    }

    /// `AAᵀ`: inner products of rows.
    pub fn gram_rows(&self) -> ExactMatrix {
        let n = self.rows;
        let upper: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let values: Vec<RadicalScalar> = upper
            .par_iter()
            .map(|&(i, j)| self.row_dot(i, self, j))
            .collect();
        let mut entries = vec![RadicalScalar::zero(); n * n];
        for (&(i, j), v) in upper.iter().zip(values) {
            if i != j {
                entries[j * n + i] = v.clone();
            }
            entries[i * n + j] = v;
        }
        ExactMatrix {
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn reverse_rows(&self) -> ExactMatrix {
        Self::from_fn(self.rows, self.cols, |i, j| self[(self.rows - 1 - i, j)].clone())
    }

    pub fn reverse_cols(&self) -> ExactMatrix {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, self.cols - 1 - j)].clone())
    }

    /// Reverses rows and then columns (the two commute).
    pub fn reverse_both(&self) -> ExactMatrix {
        Self::from_fn(self.rows, self.cols, |i, j| {
            self[(self.rows - 1 - i, self.cols - 1 - j)].clone()
        })
    }

    pub fn hstack(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        if self.rows != rhs.rows {
            return Err(Error::dimension(
                "hstack",
                format!("{} rows beside {} rows", self.rows, rhs.rows),
            ));
        }
        Ok(Self::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                rhs[(i, j - self.cols)].clone()
            }
        }))
    }

    pub fn vstack(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != rhs.cols {
            return Err(Error::dimension(
                "vstack",
                format!("{} columns above {} columns", self.cols, rhs.cols),
            ));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&rhs.entries);
        Ok(ExactMatrix {
            rows: self.rows + rhs.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Stacks a sequence of matrices vertically.
    pub fn vstack_all<'a>(parts: impl IntoIterator<Item = &'a ExactMatrix>) -> Result<ExactMatrix> {
        let mut iter = parts.into_iter();
        let first = iter
            .next()
            .ok_or_else(|| Error::dimension("vstack_all", "no blocks"))?
            .clone();
        iter.try_fold(first, |acc, m| acc.vstack(m))
    }

    pub fn block_diag(blocks: &[ExactMatrix]) -> Result<ExactMatrix> {
        if blocks.is_empty() {
            return Err(Error::dimension("block_diag", "no blocks"));
        }
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = ExactMatrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        Ok(out)
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub(crate) fn set_block(&mut self, r0: usize, c0: usize, block: &ExactMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.entries[(r0 + i) * self.cols + c0 + j] = block[(i, j)].clone();
            }
        }
    }

    /// Rows `start..end` as a new matrix.
    pub fn row_slice(&self, start: usize, end: usize) -> Result<ExactMatrix> {
        if start >= end || end > self.rows {
            return Err(Error::dimension(
                "row_slice",
                format!("rows {start}..{end} of a {}-row matrix", self.rows),
            ));
        }
        Self::new(
            end - start,
            self.cols,
            self.entries[start * self.cols..end * self.cols].to_vec(),
        )
    }

    pub fn scale(&self, s: &RadicalScalar) -> ExactMatrix {
        self.map(|x| x * s)
    }

    pub fn scale_rational(&self, q: &Rational) -> ExactMatrix {
        self.map(|x| x.scale(q))
    }

    pub fn map(&self, f: impl Fn(&RadicalScalar) -> RadicalScalar) -> ExactMatrix {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn neg(&self) -> ExactMatrix {
        self.map(|x| -x)
    }

    pub fn sub(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        if self.shape() != rhs.shape() {
            return Err(Error::dimension(
                "sub",
                format!("{:?} minus {:?}", self.shape(), rhs.shape()),
            ));
        }
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Number of nonzero entries.
    pub fn sparsity(&self) -> usize {
        self.entries.iter().filter(|x| !x.is_zero()).count()
    }

    /// Nonzero pattern, row by row.
    pub fn support(&self) -> Vec<Vec<bool>> {
        self.row_iter()
            .map(|r| r.iter().map(|x| !x.is_zero()).collect())
            .collect()
    }

    pub fn is_rational(&self) -> bool {
        self.entries.iter().all(RadicalScalar::is_rational)
    }

    /// Divides every row by its exact Euclidean norm.
    ///
    /// Requires each squared row norm to be a positive rational, which holds
    /// for every row whose entries are rational multiples of one common root.
    pub fn normalize_rows(&self) -> Result<ExactMatrix> {
        let mut out = self.clone();
        for i in 0..self.rows {
            let norm2 = self.row_dot(i, self, i);
            let q = norm2.as_rational().ok_or_else(|| {
                Error::Precondition(format!("row {} has irrational squared norm {norm2}", i + 1))
            })?;
            if q == Rational::from_integer(0.into()) {
                return Err(Error::Precondition(format!("row {} is zero", i + 1)));
            }
            let inv = RadicalScalar::inv_sqrt_rational(&q)?;
            for x in &mut out.entries[i * self.cols..(i + 1) * self.cols] {
                *x = &*x * &inv;
            }
        }
        Ok(out)
    }

    /// Entrywise `f64` evaluation, row-major.
    pub fn to_f64(&self) -> Vec<f64> {
        self.entries.par_iter().map(RadicalScalar::to_f64).collect()
    }
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = RadicalScalar;

    fn index(&self, (i, j): (usize, usize)) -> &RadicalScalar {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for row in self.row_iter() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    fn ints<R: AsRef<[i64]>>(rows: &[R]) -> ExactMatrix {
        ExactMatrix::from_integers(rows).unwrap()
    }

    #[test]
    fn transpose_moves_markers() {
        let a = ints(&[[1, 2, 3], [4, 5, 6]]);
        let t = a.transpose();
        assert_eq!(t, ints(&[[1, 4], [2, 5], [3, 6]]));
        assert_eq!(t.transpose(), a);
    }

    #[test]
    fn matmul_identity_and_shape_errors() {
        let a = ints(&[[1, 2, 3], [4, 5, 6]]);
        assert_eq!(a.matmul(&ExactMatrix::identity(3)).unwrap(), a);
        assert!(matches!(a.matmul(&a), Err(Error::Dimension { .. })));
        assert_eq!(a.matmul(&a.transpose()).unwrap(), a.gram_rows());
        assert_eq!(a.transpose().matmul(&a).unwrap(), a.gram_columns());
    }

    #[test]
    fn reversal_operators() {
        let a = ints(&[[1, 2, 3], [4, 5, 6]]);
        assert_eq!(a.reverse_rows(), ints(&[[4, 5, 6], [1, 2, 3]]));
        assert_eq!(a.reverse_cols(), ints(&[[3, 2, 1], [6, 5, 4]]));
        assert_eq!(a.reverse_both(), a.reverse_rows().reverse_cols());
        assert_eq!(a.reverse_both(), a.reverse_cols().reverse_rows());
        assert_eq!(a.reverse_both().reverse_both(), a);
    }

    #[test]
    fn block_assembly() {
        let a = ints(&[[1, 2]]);
        let b = ints(&[[3]]);
        assert_eq!(ExactMatrix::block_diag(&[a.clone(), b.clone()]).unwrap(), ints(&[[1, 2, 0], [0, 0, 3]]));
        assert_eq!(a.hstack(&b).unwrap(), ints(&[[1, 2, 3]]));
        assert!(a.vstack(&b).is_err());
        assert!(a.hstack(&ints(&[[1], [2]])).is_err());
    }

    #[test]
    fn scaled_signed_ones_have_unit_rows() {
        let h = ints(&[[-1, 1, 1, 1], [1, -1, 1, 1], [1, 1, -1, 1], [1, 1, 1, -1]]);
        let half = h.scale_rational(&rational(1, 2));
        for i in 0..4 {
            assert!(half.row_dot(i, &half, i).is_one());
        }
        assert_eq!(half.sparsity(), 16);
        assert_eq!(ExactMatrix::zeros(3, 3).sparsity(), 0);
    }

    #[test]
    fn normalize_rows_makes_unit_rows() {
        let a = ints(&[[1, 2, 1], [0, -1, 2]]);
        let n = a.normalize_rows().unwrap();
        assert_eq!(n.sparsity(), a.sparsity());
        assert!(n.row_dot(0, &n, 0).is_one());
        assert!(n.row_dot(1, &n, 1).is_one());
        assert!(n.row_dot(0, &n, 1).is_zero());
        assert!(ints(&[[0, 0]]).normalize_rows().is_err());
    }

    #[test]
    fn rejects_empty_shapes() {
        assert!(ExactMatrix::new(0, 2, vec![]).is_err());
        assert!(ExactMatrix::new(1, 2, vec![RadicalScalar::one()]).is_err());
    }
}
