//! Exact linear algebra over any field level of a tower: reduced row
//! echelon form, rank, kernel and column-submatrix ranks. Plain Gaussian
//! elimination; matrices are values and operations return new matrices.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{Element, FieldTower, Level};

/// A dense row-major matrix with entries in one field of a tower.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    tower: Arc<FieldTower>,
    level: Level,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?} of {}", self.rows, self.cols, self.level, self.tower)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.entries[r * self.cols..(r + 1) * self.cols])?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn new(
        tower: Arc<FieldTower>,
        level: Level,
        rows: usize,
        cols: usize,
        entries: Vec<Element>,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::LengthMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        let size = tower.size(level);
        let mut codes = Vec::with_capacity(entries.len());
        for e in entries {
            if e.level() != level {
                return Err(Error::LevelMismatch {
                    left: e.level(),
                    right: level,
                });
            }
            if e.code() >= size {
                return Err(Error::CodeOutOfRange {
                    code: e.code(),
                    size,
                });
            }
            codes.push(e.code());
        }
        Ok(Matrix {
            tower,
            level,
            rows,
            cols,
            entries: codes,
        })
    }

    /// Builds a matrix from raw integer encodings.
    pub fn from_codes(
        tower: Arc<FieldTower>,
        level: Level,
        rows: usize,
        cols: usize,
        codes: Vec<u64>,
    ) -> Result<Self> {
        if codes.len() != rows * cols {
            return Err(Error::LengthMismatch {
                expected: rows * cols,
                found: codes.len(),
            });
        }
        let size = tower.size(level);
        if let Some(&bad) = codes.iter().find(|&&c| c >= size) {
            return Err(Error::CodeOutOfRange { code: bad, size });
        }
        Ok(Matrix {
            tower,
            level,
            rows,
            cols,
            entries: codes,
        })
    }

    pub fn zeros(tower: Arc<FieldTower>, level: Level, rows: usize, cols: usize) -> Self {
        Matrix {
            tower,
            level,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(tower: Arc<FieldTower>, level: Level, n: usize) -> Self {
        let mut m = Matrix::zeros(tower, level, n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> Element {
        assert!(row < self.rows && col < self.cols, "entry index out of range");
        self.tower
            .element(self.level, self.entries[row * self.cols + col])
            .expect("stored entries are valid")
    }

    pub(crate) fn code_at(&self, row: usize, col: usize) -> u64 {
        self.entries[row * self.cols + col]
    }

    /// Raw integer encodings of the entries, row-major.
    pub fn codes(&self) -> &[u64] {
        &self.entries
    }

    pub(crate) fn row_codes(&self, row: usize) -> &[u64] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut entries = vec![0u64; self.rows * self.cols];
        for r in 0..self.rows {
            for c in 0..self.cols {
                entries[c * self.rows + r] = self.entries[r * self.cols + c];
            }
        }
        Matrix {
            tower: self.tower.clone(),
            level: self.level,
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        if *self.tower != *other.tower || self.level != other.level {
            return Err(Error::TowerMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let t = &self.tower;
        let lv = self.level;
        let mut entries = vec![0u64; self.rows * other.cols];
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.entries[i * self.cols + l];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.entries[l * other.cols + j];
                    if b != 0 {
                        let idx = i * other.cols + j;
                        entries[idx] = t.raw_add(lv, entries[idx], t.raw_mul(lv, a, b));
                    }
                }
            }
        }
        Ok(Matrix {
            tower: self.tower.clone(),
            level: self.level,
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&c| c == 0)
    }

    /// Reduced row echelon form with rank and the strictly increasing
    /// pivot column list.
    pub fn rref(&self) -> (Matrix, usize, Vec<usize>) {
        let mut work = self.entries.clone();
        let (rank, pivots) = rref_in_place(&self.tower, self.level, &mut work, self.rows, self.cols);
        (
            Matrix {
                tower: self.tower.clone(),
                level: self.level,
                rows: self.rows,
                cols: self.cols,
                entries: work,
            },
            rank,
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        let mut work = self.entries.clone();
        rank_in_place(&self.tower, self.level, &mut work, self.rows, self.cols)
    }

    /// Basis of the right null space, one basis vector per row.
    ///
    /// Returns a (cols - rank) × cols matrix; the basis rows are linearly
    /// independent and each v satisfies M·vᵀ = 0.
    pub fn kernel(&self) -> Matrix {
        let (reduced, rank, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let t = &self.tower;
        let lv = self.level;
        let mut entries = vec![0u64; free.len() * self.cols];
        for (bi, &fc) in free.iter().enumerate() {
            let row = &mut entries[bi * self.cols..(bi + 1) * self.cols];
            row[fc] = 1;
            // Pivot variable p of row r takes -R[r][fc].
            for (r, &pc) in pivots.iter().enumerate().take(rank) {
                row[pc] = t.raw_neg(lv, reduced.entries[r * self.cols + fc]);
            }
        }
        Matrix {
            tower: self.tower.clone(),
            level: self.level,
            rows: free.len(),
            cols: self.cols,
            entries,
        }
    }

    /// Rank of the submatrix formed by the given (distinct) columns.
    pub fn rank_of_columns(&self, columns: &[usize]) -> Result<usize> {
        let mut seen = vec![false; self.cols];
        for &c in columns {
            if c >= self.cols {
                return Err(Error::IndexOutOfRange {
                    index: c,
                    len: self.cols,
                });
            }
            if seen[c] {
                return Err(Error::DuplicateIndex(c));
            }
            seen[c] = true;
        }
        let mut work = Vec::with_capacity(self.rows * columns.len());
        for r in 0..self.rows {
            for &c in columns {
                work.push(self.entries[r * self.cols + c]);
            }
        }
        Ok(rank_in_place(
            &self.tower,
            self.level,
            &mut work,
            self.rows,
            columns.len(),
        ))
    }

    /// Row-space equality via the uniqueness of the reduced row echelon form.
    pub fn row_space_eq(&self, other: &Matrix) -> bool {
        if *self.tower != *other.tower || self.level != other.level || self.cols != other.cols {
            return false;
        }
        let (a, ra, _) = self.rref();
        let (b, rb, _) = other.rref();
        ra == rb && a.entries[..ra * a.cols] == b.entries[..rb * b.cols]
    }

    /// The nonzero rows of the reduced row echelon form.
    pub fn row_space_basis(&self) -> Matrix {
        let (reduced, rank, _) = self.rref();
        Matrix {
            tower: self.tower.clone(),
            level: self.level,
            rows: rank,
            cols: self.cols,
            entries: reduced.entries[..rank * self.cols].to_vec(),
        }
    }

    /// Stacks two matrices with equal column counts on top of each other.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if *self.tower != *other.tower || self.level != other.level {
            return Err(Error::TowerMismatch);
        }
        if self.cols != other.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(Matrix {
            tower: self.tower.clone(),
            level: self.level,
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }
}

/// In-place Gauss-Jordan elimination; returns (rank, pivot columns).
pub(crate) fn rref_in_place(
    tower: &FieldTower,
    level: Level,
    entries: &mut [u64],
    rows: usize,
    cols: usize,
) -> (usize, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Find a pivot in column c at or below row r.
        let Some(pr) = (r..rows).find(|&i| entries[i * cols + c] != 0) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                entries.swap(r * cols + j, pr * cols + j);
            }
        }
        let inv = tower.raw_inv(level, entries[r * cols + c]);
        if inv != 1 {
            for j in c..cols {
                entries[r * cols + j] = tower.raw_mul(level, entries[r * cols + j], inv);
            }
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = entries[i * cols + c];
            if factor == 0 {
                continue;
            }
            entries[i * cols + c] = 0;
            for j in c + 1..cols {
                let v = entries[r * cols + j];
                if v != 0 {
                    entries[i * cols + j] =
                        tower.raw_sub(level, entries[i * cols + j], tower.raw_mul(level, factor, v));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (r, pivots)
}

/// Forward elimination only; cheaper than full rref when only the rank is needed.
pub(crate) fn rank_in_place(
    tower: &FieldTower,
    level: Level,
    entries: &mut [u64],
    rows: usize,
    cols: usize,
) -> usize {
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| entries[i * cols + c] != 0) else {
            continue;
        };
        if pr != r {
            for j in c..cols {
                entries.swap(r * cols + j, pr * cols + j);
            }
        }
        let inv = tower.raw_inv(level, entries[r * cols + c]);
        for i in r + 1..rows {
            let factor = entries[i * cols + c];
            if factor == 0 {
                continue;
            }
            let scale = tower.raw_mul(level, factor, inv);
            entries[i * cols + c] = 0;
            for j in c + 1..cols {
                let v = entries[r * cols + j];
                if v != 0 {
                    entries[i * cols + j] =
                        tower.raw_sub(level, entries[i * cols + j], tower.raw_mul(level, scale, v));
                }
            }
        }
        r += 1;
    }
    r
}
