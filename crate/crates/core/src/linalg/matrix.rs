use std::fmt;

use thiserror::Error;

use super::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("row labels differ between blocks: {left:?} vs {right:?}")]
    RowLabels { left: Vec<String>, right: Vec<String> },
}

/// Dense, row-major matrix of exact rationals with opaque row and column labels.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
    row_labels: Vec<String>,
    col_labels: Vec<String>,
}

fn default_labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
            row_labels: default_labels("r", rows),
            col_labels: default_labels("c", cols),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from rows of equal length. Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RationalMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
            row_labels: default_labels("r", r),
            col_labels: default_labels("c", c),
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| Rational::from_integer(x)).collect())
                .collect(),
        )
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        RationalMatrix {
            rows,
            cols,
            entries,
            row_labels: default_labels("r", rows),
            col_labels: default_labels("c", cols),
        }
    }

    pub fn with_labels(mut self, row_labels: Vec<String>, col_labels: Vec<String>) -> Self {
        assert_eq!(row_labels.len(), self.rows, "row label count");
        assert_eq!(col_labels.len(), self.cols, "column label count");
        self.row_labels = row_labels;
        self.col_labels = col_labels;
        self
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rational::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone());
        t.row_labels = self.col_labels.clone();
        t.col_labels = self.row_labels.clone();
        t
    }

    /// Matrix product; labels are taken from the outer dimensions.
    pub fn mul(&self, rhs: &RationalMatrix) -> Result<Self, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * rhs.cols + j] += &(a * b);
                    }
                }
            }
        }
        out.row_labels = self.row_labels.clone();
        out.col_labels = rhs.col_labels.clone();
        Ok(out)
    }

    /// Sub-matrix made of the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Self::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone());
        m.row_labels = self.row_labels.clone();
        m.col_labels = cols.iter().map(|&j| self.col_labels[j].clone()).collect();
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut m = Self::from_fn(rows.len(), self.cols, |i, j| self.get(rows[i], j).clone());
        m.row_labels = rows.iter().map(|&i| self.row_labels[i].clone()).collect();
        m.col_labels = self.col_labels.clone();
        m
    }

    /// Horizontal concatenation; all blocks must carry identical row labels.
    pub fn hconcat(blocks: &[RationalMatrix]) -> Result<Self, LinalgError> {
        let Some(first) = blocks.first() else {
            return Ok(Self::zeros(0, 0));
        };
        for b in &blocks[1..] {
            if b.row_labels != first.row_labels {
                return Err(LinalgError::RowLabels {
                    left: first.row_labels.clone(),
                    right: b.row_labels.clone(),
                });
            }
        }
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(first.rows, cols);
        let mut offset = 0;
        let mut col_labels = Vec::with_capacity(cols);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(i, offset + j, b.get(i, j).clone());
                }
            }
            col_labels.extend(b.col_labels.iter().cloned());
            offset += b.cols;
        }
        out.row_labels = first.row_labels.clone();
        out.col_labels = col_labels;
        Ok(out)
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  {}: [{}]", self.row_labels[i], row.join(", "))?;
        }
        Ok(())
    }
}

/// Reduced row-echelon form by Gauss-Jordan elimination over the rationals.
pub fn rref(m: &RationalMatrix) -> (RationalMatrix, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        let Some(found) = (pivot_row..rows).find(|&i| !a.get(i, col).is_zero()) else {
            continue;
        };
        if found != pivot_row {
            for j in 0..cols {
                a.entries.swap(found * cols + j, pivot_row * cols + j);
            }
        }
        let inv = a.get(pivot_row, col).recip();
        if !inv.is_one() {
            for j in col..cols {
                let v = a.get(pivot_row, j) * &inv;
                a.set(pivot_row, j, v);
            }
        }
        for i in 0..rows {
            if i == pivot_row {
                continue;
            }
            let factor = a.get(i, col).clone();
            if factor.is_zero() {
                continue;
            }
            for j in col..cols {
                let p = a.get(pivot_row, j);
                if p.is_zero() {
                    continue;
                }
                let delta = &factor * p;
                a.entries[i * cols + j] -= &delta;
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    (a, pivots)
}

pub fn rank(m: &RationalMatrix) -> usize {
    rref(m).1.len()
}

/// Right null space basis, one vector per free column of the rref.
///
/// Column `k` of the result has a 1 at the k-th free variable and the negated
/// rref entries at the pivot positions. Rows are labelled by the input's columns.
pub fn kernel_basis(m: &RationalMatrix) -> RationalMatrix {
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    let mut k = RationalMatrix::zeros(m.cols, free.len());
    for (b, &f) in free.iter().enumerate() {
        k.set(f, b, Rational::one());
        for (pi, &pc) in pivots.iter().enumerate() {
            let v = r.get(pi, f);
            if !v.is_zero() {
                k.set(pc, b, -v);
            }
        }
    }
    let col_labels = free.iter().map(|&f| format!("v{}", f)).collect();
    k.with_labels(m.col_labels.clone(), col_labels)
}

/// True iff the column spaces of the blocks form a direct sum.
pub fn spans_direct_sum(blocks: &[RationalMatrix]) -> Result<bool, LinalgError> {
    let joint = RationalMatrix::hconcat(blocks)?;
    let sum: usize = blocks.iter().map(rank).sum();
    Ok(sum == rank(&joint))
}

/// Whether `v` lies in the column space of `m`.
pub fn in_column_space(m: &RationalMatrix, v: &[Rational]) -> Result<bool, LinalgError> {
    if v.len() != m.rows {
        return Err(LinalgError::Dimension(format!(
            "vector of length {} against {} rows",
            v.len(),
            m.rows
        )));
    }
    let mut aug = RationalMatrix::zeros(m.rows, m.cols + 1);
    for i in 0..m.rows {
        for j in 0..m.cols {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, m.cols, v[i].clone());
    }
    Ok(rank(&aug) == rank(m))
}
