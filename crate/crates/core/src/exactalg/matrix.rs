use std::fmt;

use super::Rational;

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Panics if `entries.len() != rows * cols`.
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Rational>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        ExactMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let entries: Vec<Rational> = rows.into_iter().flatten().collect();
        Self::from_entries(r, c, entries)
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_int(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = ExactMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form and the pivot columns (ascending).
    ///
    /// Columns are scanned left to right; within a column the pivot is the
    /// candidate row whose entry has the smallest bit size, ties going to the
    /// lowest row index.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut a: Vec<Vec<Rational>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..self.cols {
            if prow == self.rows {
                break;
            }
            let best = (prow..self.rows)
                .filter(|&r| !a[r][col].is_zero())
                .min_by_key(|&r| (a[r][col].bit_size(), r));
            let Some(best) = best else { continue };
            a.swap(prow, best);
            let inv = a[prow][col].recip();
            for v in a[prow][col..].iter_mut() {
                if !v.is_zero() {
                    *v = &*v * &inv;
                }
            }
            let pivot_row = a[prow].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r == prow || row[col].is_zero() {
                    continue;
                }
                let factor = row[col].clone();
                for (c, pv) in pivot_row.iter().enumerate().skip(col) {
                    if !pv.is_zero() {
                        row[c] = &row[c] - &(&factor * pv);
                    }
                }
            }
            pivots.push(col);
            prow += 1;
        }
        let m = ExactMatrix::from_rows_with_cols(a, self.cols);
        (m, pivots)
    }

    fn from_rows_with_cols(rows: Vec<Vec<Rational>>, cols: usize) -> Self {
        let r = rows.len();
        Self::from_entries(r, cols, rows.into_iter().flatten().collect())
    }

    /// Determinant of a square matrix by elimination.
    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a: Vec<Vec<Rational>> = (0..n).map(|r| self.row(r).to_vec()).collect();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Rational::zero();
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            det = &det * &a[col][col];
            let inv = a[col][col].recip();
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] * &inv;
                for c in col..n {
                    let t = &f * &a[col][c];
                    a[r][c] = &a[r][c] - &t;
                }
            }
        }
        det
    }

    /// Inverse of a square matrix, `None` if singular.
    pub fn inverse(&self) -> Option<ExactMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = ExactMatrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, Rational::one());
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut out = ExactMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, red.get(r, n + c).clone());
            }
        }
        Some(out)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, one vector per free column (ascending).
    ///
    /// Each vector has a 1 in its free column and zeros in the other free
    /// columns. A matrix with no rows yields the standard basis.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                let e = r.get(i, free);
                if !e.is_zero() {
                    v[p] = -e;
                }
            }
            basis.push(v);
        }
        basis
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}
