//! Dense matrices over F_p with exact Gaussian elimination.
//!
//! Entries are stored reduced in `[0, p)` in row-major order. There are no
//! pivoting subtleties over a field, so rank, kernel, and inverse are exact.

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::ffield::FieldSpec;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FpMatrix {
    pub fn zeros(spec: &FieldSpec, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p: spec.p(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(spec: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(spec, n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds from signed integer rows, reducing every entry mod p.
    pub fn from_rows(spec: &FieldSpec, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| spec.reduce_i64(x)))
            .collect();
        Ok(FpMatrix {
            p: spec.p(),
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn from_flat(spec: &FieldSpec, rows: usize, cols: usize, data: Vec<u64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        let p = spec.p();
        Ok(FpMatrix {
            p,
            rows,
            cols,
            data: data.into_iter().map(|x| x % p).collect(),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u64] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Entries as bytes, for hash keys in orbit searches. Requires p < 256.
    pub fn key_bytes(&self) -> Vec<u8> {
        debug_assert!(self.p < 256);
        self.data.iter().map(|&x| x as u8).collect()
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut out = FpMatrix {
            p: self.p,
            rows: self.cols,
            cols: self.rows,
            data: vec![0; self.data.len()],
        };
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn add(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a + b) % self.p)
            .collect();
        Ok(FpMatrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn sub(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a + self.p - b) % self.p)
            .collect();
        Ok(FpMatrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn neg(&self) -> FpMatrix {
        let data = self.data.iter().map(|&a| (self.p - a) % self.p).collect();
        FpMatrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.cols != other.rows || self.p != other.p {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = FpMatrix {
            p: self.p,
            rows: self.rows,
            cols: other.cols,
            data: vec![0; self.rows * other.cols],
        };
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out[(i, j)];
                    out[(i, j)] = (cur + a * other[(k, j)]) % self.p;
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut exp: u64) -> Result<FpMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("pow of non-square matrix".into()));
        }
        let spec = FieldSpec::new(self.p).expect("modulus validated at construction");
        let mut acc = FpMatrix::identity(&spec, self.rows);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn trace(&self) -> u64 {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)])
            .fold(0, |acc, x| (acc + x) % self.p)
    }

    fn check_same_shape(&self, other: &FpMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols || self.p != other.p {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// Row-echelon rank by Gaussian elimination on a copy.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let p = m.p;
        let spec = FieldSpec::new(p).expect("modulus validated at construction");
        let mut rank = 0;
        for col in 0..m.cols {
            let pivot = (rank..m.rows).find(|&r| m[(r, col)] != 0);
            let Some(pr) = pivot else { continue };
            m.swap_rows(rank, pr);
            let inv = spec.inv(m[(rank, col)]).expect("pivot nonzero");
            for j in col..m.cols {
                m[(rank, j)] = m[(rank, j)] * inv % p;
            }
            for r in 0..m.rows {
                if r != rank && m[(r, col)] != 0 {
                    let factor = m[(r, col)];
                    for j in col..m.cols {
                        let sub = factor * m[(rank, j)] % p;
                        m[(r, j)] = (m[(r, j)] + p - sub) % p;
                    }
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    /// Basis of the right kernel {v : Mv = 0}.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let p = m.p;
        let spec = FieldSpec::new(p).expect("modulus validated at construction");
        let mut pivot_cols = Vec::new();
        let mut rank = 0;
        for col in 0..m.cols {
            let pivot = (rank..m.rows).find(|&r| m[(r, col)] != 0);
            let Some(pr) = pivot else { continue };
            m.swap_rows(rank, pr);
            let inv = spec.inv(m[(rank, col)]).expect("pivot nonzero");
            for j in 0..m.cols {
                m[(rank, j)] = m[(rank, j)] * inv % p;
            }
            for r in 0..m.rows {
                if r != rank && m[(r, col)] != 0 {
                    let factor = m[(r, col)];
                    for j in 0..m.cols {
                        let sub = factor * m[(rank, j)] % p;
                        m[(r, j)] = (m[(r, j)] + p - sub) % p;
                    }
                }
            }
            pivot_cols.push(col);
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        let mut basis = Vec::new();
        for free in 0..m.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![0u64; m.cols];
            v[free] = 1;
            for (row, &pc) in pivot_cols.iter().enumerate() {
                // pivot row reads: x_pc + sum over free cols of coeff * x_free = 0
                v[pc] = (p - m[(row, free)]) % p;
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Result<Option<FpMatrix>> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let p = self.p;
        let spec = FieldSpec::new(p).expect("modulus validated at construction");
        let mut m = self.clone();
        let mut inv = FpMatrix::identity(&spec, n);
        for col in 0..n {
            let Some(pr) = (col..n).find(|&r| m[(r, col)] != 0) else {
                return Ok(None);
            };
            m.swap_rows(col, pr);
            inv.swap_rows(col, pr);
            let scale = spec.inv(m[(col, col)]).expect("pivot nonzero");
            for j in 0..n {
                m[(col, j)] = m[(col, j)] * scale % p;
                inv[(col, j)] = inv[(col, j)] * scale % p;
            }
            for r in 0..n {
                if r != col && m[(r, col)] != 0 {
                    let factor = m[(r, col)];
                    for j in 0..n {
                        let s1 = factor * m[(col, j)] % p;
                        m[(r, j)] = (m[(r, j)] + p - s1) % p;
                        let s2 = factor * inv[(col, j)] % p;
                        inv[(r, j)] = (inv[(r, j)] + p - s2) % p;
                    }
                }
            }
        }
        Ok(Some(inv))
    }

    /// Apply to a column vector.
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(0u64, |acc, j| (acc + self[(i, j)] * v[j]) % self.p)
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// Diagonalizes a symmetric matrix by congruence (G -> D^t G D) and returns
/// the diagonal, zeros included. Needs p odd so that 2 is invertible.
pub fn congruence_diagonalize(gram: &FpMatrix) -> Result<Vec<u64>> {
    if !gram.is_square() {
        return Err(Error::DimensionMismatch("gram matrix must be square".into()));
    }
    let p = gram.p();
    let spec = FieldSpec::new(p).expect("modulus validated at construction");
    let n = gram.rows();
    let mut g = gram.clone();
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        // Prefer a nonzero diagonal pivot; otherwise manufacture one from an
        // off-diagonal entry (basis change u_i <- u_i + u_j turns G_ij into a
        // diagonal 2 G_ij when G_ii = G_jj = 0).
        let mut pivot = (k..n).find(|&i| g[(i, i)] != 0);
        if pivot.is_none() {
            'outer: for i in k..n {
                for j in (i + 1)..n {
                    if g[(i, j)] != 0 {
                        add_row_col(&mut g, i, j);
                        pivot = Some(i);
                        break 'outer;
                    }
                }
            }
        }
        let Some(pi) = pivot else {
            // remaining block is zero
            diag.extend(std::iter::repeat_n(0, n - k));
            break;
        };
        swap_row_col(&mut g, k, pi);
        let a = g[(k, k)];
        let a_inv = spec.inv(a)?;
        for r in (k + 1)..n {
            if g[(r, k)] == 0 {
                continue;
            }
            let factor = g[(r, k)] * a_inv % p;
            // row_r -= factor * row_k; col_r -= factor * col_k
            for j in 0..n {
                let s = factor * g[(k, j)] % p;
                g[(r, j)] = (g[(r, j)] + p - s) % p;
            }
            for i in 0..n {
                let s = factor * g[(i, k)] % p;
                g[(i, r)] = (g[(i, r)] + p - s) % p;
            }
        }
        diag.push(a);
    }
    Ok(diag)
}

fn add_row_col(g: &mut FpMatrix, i: usize, j: usize) {
    let p = g.p();
    let n = g.rows();
    for c in 0..n {
        g[(i, c)] = (g[(i, c)] + g[(j, c)]) % p;
    }
    for r in 0..n {
        g[(r, i)] = (g[(r, i)] + g[(r, j)]) % p;
    }
}

fn swap_row_col(g: &mut FpMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    let n = g.rows();
    for c in 0..n {
        let t = g[(a, c)];
        g[(a, c)] = g[(b, c)];
        g[(b, c)] = t;
    }
    for r in 0..n {
        let t = g[(r, a)];
        g[(r, a)] = g[(r, b)];
        g[(r, b)] = t;
    }
}

impl Index<(usize, usize)> for FpMatrix {
    type Output = u64;
    fn index(&self, (i, j): (usize, usize)) -> &u64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for FpMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut u64 {
        &mut self.data[i * self.cols + j]
    }
}

impl std::fmt::Display for FpMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}
