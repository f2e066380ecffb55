use crate::error::{Error, Result};
use itertools::Itertools;

/// Dense integer matrix, row-major. All arithmetic is exact: overflow is
/// reported as [`Error::Overflow`] instead of wrapping.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

fn mul_i128(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

fn to_i64(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow)
}

impl IntMatrix {
    /// Matrices are non-empty by construction.
    pub fn new(rows: usize, cols: usize, entries: Vec<i64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidArgument("matrix must be non-empty".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "expected {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidArgument("matrix must be non-empty".into()));
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidArgument("ragged rows".into()));
        }
        IntMatrix::new(rows.len(), cols, rows.concat())
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        IntMatrix { rows: n, cols: n, entries }
    }

    /// Permutation matrix P with column j equal to e_perm[j], so that
    /// (A P).col(j) == A.col(perm[j]).
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidArgument("not a permutation".into()));
            }
            seen[p] = true;
        }
        let mut entries = vec![0; n * n];
        for (j, &p) in perm.iter().enumerate() {
            entries[p * n + j] = 1;
        }
        Ok(IntMatrix { rows: n, cols: n, entries })
    }

    pub fn diagonal(diag: &[i64]) -> Result<Self> {
        let n = diag.len();
        if n == 0 {
            return Err(Error::InvalidArgument("empty diagonal".into()));
        }
        let mut entries = vec![0; n * n];
        for (i, &d) in diag.iter().enumerate() {
            entries[i * n + i] = d;
        }
        Ok(IntMatrix { rows: n, cols: n, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut entries = vec![0; self.rows * self.cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                entries[j * self.rows + i] = self.get(i, j);
            }
        }
        IntMatrix { rows: self.cols, cols: self.rows, entries }
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&x| -x).collect(),
        }
    }

    /// [self | other], matching row counts.
    pub fn hcat(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows {
            return Err(Error::InvalidArgument("row counts differ".into()));
        }
        let cols = self.cols + other.cols;
        let mut entries = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            entries.extend_from_slice(self.row(i));
            entries.extend_from_slice(other.row(i));
        }
        Ok(IntMatrix { rows: self.rows, cols, entries })
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::InvalidArgument("dimension mismatch in product".into()));
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: i64 = 0;
                for k in 0..self.cols {
                    let term = self
                        .get(i, k)
                        .checked_mul(other.get(k, j))
                        .ok_or(Error::Overflow)?;
                    acc = acc.checked_add(term).ok_or(Error::Overflow)?;
                }
                entries.push(acc);
            }
        }
        Ok(IntMatrix { rows: self.rows, cols: other.cols, entries })
    }

    pub fn mul_vec(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.cols {
            return Err(Error::InvalidArgument("dimension mismatch in product".into()));
        }
        (0..self.rows)
            .map(|i| {
                let mut acc: i64 = 0;
                for j in 0..self.cols {
                    let term = self.get(i, j).checked_mul(v[j]).ok_or(Error::Overflow)?;
                    acc = acc.checked_add(term).ok_or(Error::Overflow)?;
                }
                Ok(acc)
            })
            .collect()
    }

    /// Submatrix on the given row and column indices, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let entries = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j)))
            .collect();
        IntMatrix { rows: rows.len(), cols: cols.len(), entries }
    }

    /// All rows, selected columns.
    pub fn columns(&self, cols: &[usize]) -> IntMatrix {
        let all: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&all, cols)
    }

    /// Column j of the result is column `perm[j]` of self.
    pub fn permute_cols(&self, perm: &[usize]) -> IntMatrix {
        self.columns(perm)
    }

    /// Bareiss fraction-free elimination; exact, overflow-checked.
    pub fn det(&self) -> Result<i64> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut a: Vec<i128> = self.entries.iter().map(|&x| x as i128).collect();
        let mut sign: i128 = 1;
        let mut prev: i128 = 1;
        for k in 0..n {
            let Some(piv) = (k..n).find(|&i| a[i * n + k] != 0) else {
                return Ok(0);
            };
            if piv != k {
                for j in 0..n {
                    a.swap(piv * n + j, k * n + j);
                }
                sign = -sign;
            }
            let pivot = a[k * n + k];
            for i in k + 1..n {
                let aik = a[i * n + k];
                for j in k + 1..n {
                    let num = mul_i128(a[i * n + j], pivot)?
                        .checked_sub(mul_i128(aik, a[k * n + j])?)
                        .ok_or(Error::Overflow)?;
                    a[i * n + j] = num / prev;
                }
                a[i * n + k] = 0;
            }
            prev = pivot;
        }
        to_i64(sign * a[n * n - 1])
    }

    /// Leftmost column indices forming a row-space basis (greedy, so the
    /// result is the lexicographically first independent column set).
    pub fn pivot_columns(&self) -> Result<Vec<usize>> {
        let (m, n) = (self.rows, self.cols);
        let mut a: Vec<i128> = self.entries.iter().map(|&x| x as i128).collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        let mut prev: i128 = 1;
        for col in 0..n {
            if row == m {
                break;
            }
            let Some(piv) = (row..m).find(|&i| a[i * n + col] != 0) else {
                continue;
            };
            if piv != row {
                for j in 0..n {
                    a.swap(piv * n + j, row * n + j);
                }
            }
            let pivot = a[row * n + col];
            for i in row + 1..m {
                let aic = a[i * n + col];
                for j in col + 1..n {
                    let num = mul_i128(a[i * n + j], pivot)?
                        .checked_sub(mul_i128(aic, a[row * n + j])?)
                        .ok_or(Error::Overflow)?;
                    a[i * n + j] = num / prev;
                }
                a[i * n + col] = 0;
            }
            prev = pivot;
            pivots.push(col);
            row += 1;
        }
        Ok(pivots)
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.pivot_columns()?.len())
    }

    /// Topmost row indices forming a column-space basis.
    pub fn pivot_rows(&self) -> Result<Vec<usize>> {
        self.transpose().pivot_columns()
    }

    /// Smallest square submatrix (by size, then lexicographic index sets)
    /// with determinant outside {0, ±1}, if any.
    pub fn tu_witness(&self) -> Result<Option<(Vec<usize>, Vec<usize>, i64)>> {
        for k in 1..=self.rows.min(self.cols) {
            for rows in (0..self.rows).combinations(k) {
                for cols in (0..self.cols).combinations(k) {
                    let d = self.submatrix(&rows, &cols).det()?;
                    if d.abs() > 1 {
                        return Ok(Some((rows, cols, d)));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Every square submatrix has determinant in {0, ±1}.
    pub fn is_totally_unimodular(&self) -> Result<bool> {
        Ok(self.tu_witness()?.is_none())
    }

    /// First maximal square submatrix with determinant outside {0, ±1},
    /// if any. Maximal size is min(rows, cols).
    pub fn wu_witness(&self) -> Result<Option<(Vec<usize>, Vec<usize>, i64)>> {
        let k = self.rows.min(self.cols);
        for rows in (0..self.rows).combinations(k) {
            for cols in (0..self.cols).combinations(k) {
                let d = self.submatrix(&rows, &cols).det()?;
                if d.abs() > 1 {
                    return Ok(Some((rows, cols, d)));
                }
            }
        }
        Ok(None)
    }

    /// Every maximal square submatrix has determinant in {0, ±1}.
    pub fn is_weakly_unimodular(&self) -> Result<bool> {
        Ok(self.wu_witness()?.is_none())
    }

    /// Exact inverse of a matrix with determinant ±1, via the adjugate.
    pub fn inverse_unimodular(&self) -> Result<IntMatrix> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let d = self.det()?;
        if d.abs() != 1 {
            return Err(Error::NotUnimodular {
                rows: (1..=n).collect(),
                cols: (1..=n).collect(),
                det: d,
            });
        }
        if n == 1 {
            return IntMatrix::new(1, 1, vec![d]);
        }
        let mut entries = vec![0i64; n * n];
        let all: Vec<usize> = (0..n).collect();
        for i in 0..n {
            let minor_rows: Vec<usize> = all.iter().copied().filter(|&r| r != i).collect();
            for j in 0..n {
                let minor_cols: Vec<usize> = all.iter().copied().filter(|&c| c != j).collect();
                let cof = self.submatrix(&minor_rows, &minor_cols).det()?;
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                // adj[j][i] = sign * minor(i, j); inverse = adj / det = adj * det.
                entries[j * n + i] = sign * cof * d;
            }
        }
        IntMatrix::new(n, n, entries)
    }

    /// Solve `self * x = rhs` exactly for a square system, via Cramer's
    /// rule; errors if the system is singular or the solution is not
    /// integral.
    pub fn solve_square(&self, rhs: &[i64]) -> Result<Vec<i64>> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        if rhs.len() != self.rows {
            return Err(Error::InvalidArgument("rhs length mismatch".into()));
        }
        let n = self.rows;
        let d = self.det()?;
        if d == 0 {
            return Err(Error::NotABasis { cols: (1..=n).collect() });
        }
        let mut x = Vec::with_capacity(n);
        for j in 0..n {
            let mut m = self.clone();
            for i in 0..n {
                m.entries[i * n + j] = rhs[i];
            }
            let dj = m.det()?;
            if dj % d != 0 {
                return Err(Error::TheoremViolation(format!(
                    "non-integral solution component {} = {}/{}",
                    j + 1,
                    dj,
                    d
                )));
            }
            x.push(dj / d);
        }
        Ok(x)
    }

    /// Change basis so the chosen columns become an identity block.
    ///
    /// Returns `(n_inv, perm, std)` with `std = n_inv * self * P_perm`
    /// equal to [I_r | D]; `perm[j]` is the source column of output
    /// column j (basis columns first in the given order, the rest in
    /// ascending order).
    pub fn standard_form(&self, basis_cols: &[usize]) -> Result<(IntMatrix, Vec<usize>, IntMatrix)> {
        let r = self.rows;
        if basis_cols.len() != r {
            return Err(Error::NotABasis {
                cols: basis_cols.iter().map(|&c| c + 1).collect(),
            });
        }
        let mut seen = vec![false; self.cols];
        for &c in basis_cols {
            if c >= self.cols || seen[c] {
                return Err(Error::NotABasis {
                    cols: basis_cols.iter().map(|&c| c + 1).collect(),
                });
            }
            seen[c] = true;
        }
        let n_block = self.columns(basis_cols);
        let d = n_block.det()?;
        if d == 0 {
            return Err(Error::NotABasis {
                cols: basis_cols.iter().map(|&c| c + 1).collect(),
            });
        }
        if d.abs() != 1 {
            return Err(Error::NotUnimodular {
                rows: (1..=r).collect(),
                cols: basis_cols.iter().map(|&c| c + 1).collect(),
                det: d,
            });
        }
        let n_inv = n_block.inverse_unimodular()?;
        let mut perm: Vec<usize> = basis_cols.to_vec();
        perm.extend((0..self.cols).filter(|c| !seen[*c]));
        let std = n_inv.mul(&self.permute_cols(&perm))?;
        Ok((n_inv, perm, std))
    }

    /// Drop redundant rows of a rank-deficient matrix, producing a
    /// full-rank [I_r | D] for the same column dependence structure.
    ///
    /// Returns the reduced matrix and the column permutation applied
    /// (output column j is input column `perm[j]`). A full-rank input
    /// comes back unchanged with the identity permutation.
    pub fn reduce_full_rank(&self) -> Result<(IntMatrix, Vec<usize>)> {
        let r = self.rank()?;
        if r == 0 {
            return Err(Error::ZeroRank);
        }
        if r == self.rows {
            return Ok((self.clone(), (0..self.cols).collect()));
        }
        // Keeping a row basis preserves the kernel, hence the matroid.
        let keep_rows = self.pivot_rows()?;
        let all_cols: Vec<usize> = (0..self.cols).collect();
        let sub = self.submatrix(&keep_rows, &all_cols);
        let basis = sub.pivot_columns()?;
        let (_, perm, std) = sub.standard_form(&basis)?;
        Ok((std, perm))
    }
}
