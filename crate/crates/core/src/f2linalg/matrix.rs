use std::fmt;

use super::bits::BitRow;
use super::echelon::Echelon;

/// A matrix over GF(2) stored as dense bit-packed rows.
///
/// Construction from sparse positions folds repeated positions to zero, so
/// the stored entry set never contains duplicates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<BitRow>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BitRow::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_entries(n, n, (0..n).map(|i| (i, i)))
    }

    /// The matrix sending basis vector `j` to basis vector `perm[j]`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        Self::from_entries(n, n, perm.iter().enumerate().map(|(j, &i)| (i, j)))
    }

    /// Builds a matrix from `(row, col)` positions; pairs of equal positions
    /// cancel.
    ///
    /// Panics when a position is out of range.
    pub fn from_entries(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (r, c) in entries {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            m.data[r].flip(c);
        }
        m
    }

    pub fn from_rows(cols: usize, data: Vec<BitRow>) -> Self {
        assert!(data.iter().all(|r| r.len() == cols));
        Self {
            rows: data.len(),
            cols,
            data,
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[BitRow]) -> Self {
        Self::from_entries(
            rows,
            columns.len(),
            columns
                .iter()
                .enumerate()
                .flat_map(|(c, v)| v.ones().map(move |r| (r, c))),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &BitRow {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r].set(c, value);
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.data[r].flip(c);
    }

    pub fn column(&self, c: usize) -> BitRow {
        BitRow::from_indices(self.rows, (0..self.rows).filter(|&r| self.data[r].get(c)))
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.ones().map(move |c| (r, c)))
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(BitRow::count_ones).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitRow::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_entries(self.cols, self.rows, self.entries().map(|(r, c)| (c, r)))
    }

    pub fn mul_vec(&self, v: &BitRow) -> BitRow {
        assert_eq!(v.len(), self.cols, "dimension mismatch in mul_vec");
        BitRow::from_indices(self.rows, (0..self.rows).filter(|&r| self.data[r].dot(v)))
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(
            self.cols, other.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc = BitRow::zeros(other.cols);
                for k in row.ones() {
                    acc.xor_assign(&other.data[k]);
                }
                acc
            })
            .collect();
        F2Matrix {
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }

    pub fn add(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            a.xor_assign(b);
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.cols);
        for row in &self.data {
            ech.insert(row.clone());
        }
        ech.len()
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2Matrix {}x{}", self.rows, self.cols)?;
        for row in &self.data {
            let s: String = (0..self.cols).map(|c| if row.get(c) { '1' } else { '.' }).collect();
            writeln!(f, "  {s}")?;
        }
        Ok(())
    }
}
