//! Square and rectangular matrices over F_p.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::field::{FpVector, PrimeField};

/// Largest supported square dimension.
pub const MAX_DIM: usize = 8;
/// Dimension accepted without lifting the size guard.
pub const DEFAULT_MAX_DIM: usize = 6;

/// An n×n matrix over F_p, n <= [`MAX_DIM`]. Stored inline so the type is `Copy`.
///
/// Entry `(i, j)` is row `i`, column `j`; the matrix acts on column vectors,
/// so column `j` is the image of the basis vector `e_j`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeFieldMatrix {
    field: PrimeField,
    n: u8,
    entries: [u8; MAX_DIM * MAX_DIM],
}

#[inline]
fn idx(n: usize, i: usize, j: usize) -> usize {
    i * n + j
}

/// Bits used per packed entry: ⌈log₂ p⌉.
pub fn bits_per_entry(field: PrimeField) -> u32 {
    32 - (field.p() - 1).leading_zeros()
}

impl PrimeFieldMatrix {
    pub fn zero(field: PrimeField, n: usize) -> Self {
        assert!(n <= MAX_DIM, "dimension {n} exceeds MAX_DIM");
        Self {
            field,
            n: n as u8,
            entries: [0; MAX_DIM * MAX_DIM],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zero(field, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Build from integer rows, reducing every entry mod p.
    pub fn from_rows(field: PrimeField, rows: &[&[i64]]) -> Result<Self> {
        let n = rows.len();
        if n > MAX_DIM {
            return Err(Error::DimensionTooLarge { n, max: MAX_DIM });
        }
        let mut m = Self::zero(field, n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, field.reduce(x));
            }
        }
        Ok(m)
    }

    pub fn from_fn(field: PrimeField, n: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut m = Self::zero(field, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, field.reduce(f(i, j)));
            }
        }
        m
    }

    pub fn diagonal(field: PrimeField, diag: &[i64]) -> Self {
        let n = diag.len();
        Self::from_fn(field, n, |i, j| if i == j { diag[i] } else { 0 })
    }

    /// Matrix with columns given by the images of the basis vectors.
    pub fn from_columns(field: PrimeField, cols: &[FpVector]) -> Result<Self> {
        let n = cols.len();
        if n > MAX_DIM {
            return Err(Error::DimensionTooLarge { n, max: MAX_DIM });
        }
        let mut m = Self::zero(field, n);
        for (j, c) in cols.iter().enumerate() {
            if c.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: c.dim(),
                });
            }
            for i in 0..n {
                m.set(i, j, c.get(i));
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[idx(self.n as usize, i, j)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        debug_assert!((v as u32) < self.field.p());
        let n = self.n as usize;
        self.entries[idx(n, i, j)] = v;
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[u8] {
        let n = self.n as usize;
        &self.entries[..n * n]
    }

    pub fn column(&self, j: usize) -> FpVector {
        FpVector::from_residues(
            self.field,
            (0..self.dim()).map(|i| self.get(i, j)).collect(),
        )
    }

    pub fn transpose(&self) -> Self {
        let mut t = *self;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                t.set(i, j, self.get(j, i));
            }
        }
        t
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.p(),
                right: other.field.p(),
            });
        }
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    /// Exact product `self · other`.
    pub fn mat_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    #[inline]
    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.dim();
        let p = self.field.p();
        let mut out = Self::zero(self.field, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0u32;
                for k in 0..n {
                    acc += self.entries[idx(n, i, k)] as u32 * other.entries[idx(n, k, j)] as u32;
                }
                out.entries[idx(n, i, j)] = (acc % p) as u8;
            }
        }
        out
    }

    /// `self · v`.
    pub fn apply(&self, v: &FpVector) -> Result<FpVector> {
        if v.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.dim(),
            });
        }
        let n = self.dim();
        let p = self.field.p();
        let coords = (0..n)
            .map(|i| {
                let acc: u32 = (0..n).map(|j| self.get(i, j) as u32 * v.get(j) as u32).sum();
                (acc % p) as u8
            })
            .collect();
        Ok(FpVector::from_residues(self.field, coords))
    }

    pub fn determinant(&self) -> u8 {
        let n = self.dim();
        let f = self.field;
        let mut a: Vec<u8> = self.entries().to_vec();
        let mut det = 1u8;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| a[idx(n, r, col)] != 0) else {
                return 0;
            };
            if piv != col {
                for j in 0..n {
                    a.swap(idx(n, piv, j), idx(n, col, j));
                }
                det = f.neg(det);
            }
            let d = a[idx(n, col, col)];
            det = f.mul(det, d);
            let dinv = f.inv(d).expect("nonzero pivot");
            for r in col + 1..n {
                let factor = f.mul(a[idx(n, r, col)], dinv);
                if factor != 0 {
                    for j in col..n {
                        let t = f.mul(factor, a[idx(n, col, j)]);
                        a[idx(n, r, j)] = f.sub(a[idx(n, r, j)], t);
                    }
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        self.determinant() != 0
    }

    pub fn rank(&self) -> usize {
        RectMatrix::from_square(self).rank()
    }

    /// Inverse via Gauss-Jordan elimination.
    pub fn mat_inverse(&self) -> Result<Self> {
        let n = self.dim();
        let f = self.field;
        let mut aug = RectMatrix::zero(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let pivots = aug.row_reduce();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        Ok(Self::from_fn(f, n, |i, j| aug.get(i, n + j) as i64))
    }

    /// Basis of `{v : self · v = 0}`.
    pub fn kernel_basis(&self) -> Vec<FpVector> {
        RectMatrix::from_square(self).kernel_basis()
    }

    /// Bit-packed encoding, entry (0,0) most significant, ⌈log₂ p⌉ bits per
    /// entry. Numeric order of keys equals row-major lexicographic order of
    /// entries. `None` when n²·bits exceeds 128.
    pub fn pack(&self) -> Option<u128> {
        let b = bits_per_entry(self.field);
        let n = self.dim();
        if (n * n) as u32 * b > 128 {
            return None;
        }
        Some(
            self.entries()
                .iter()
                .fold(0u128, |acc, &e| (acc << b) | e as u128),
        )
    }

    /// Inverse of [`PrimeFieldMatrix::pack`].
    pub fn unpack(field: PrimeField, n: usize, mut key: u128) -> Self {
        let b = bits_per_entry(field);
        let mask = (1u128 << b) - 1;
        let mut m = Self::zero(field, n);
        for k in (0..n * n).rev() {
            m.entries[k] = (key & mask) as u8;
            key >>= b;
        }
        m
    }
}

impl Mul for PrimeFieldMatrix {
    type Output = PrimeFieldMatrix;

    /// Panics on mismatched fields or dimensions; use [`PrimeFieldMatrix::mat_mul`]
    /// for the fallible version.
    fn mul(self, rhs: Self) -> Self {
        self.mat_mul(&rhs).expect("incompatible matrices")
    }
}

impl fmt::Debug for PrimeFieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for PrimeFieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.dim() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.dim() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "] over {}", self.field)
    }
}

/// A rows×cols matrix over F_p, used for kernels and ranks of non-square maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RectMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl RectMatrix {
    pub fn zero(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zero(field, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, field.reduce(x));
            }
        }
        Ok(m)
    }

    pub fn from_square(m: &PrimeFieldMatrix) -> Self {
        let n = m.dim();
        Self {
            field: m.field(),
            rows: n,
            cols: n,
            data: m.entries().to_vec(),
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: PrimeField, rows: usize, cols: &[FpVector]) -> Self {
        let mut m = Self::zero(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..rows {
                m.set(i, j, c.get(i));
            }
        }
        m
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.data[i * self.cols + j] = v;
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let f = self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..cols {
                    self.data.swap(piv * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).expect("nonzero pivot");
            for j in 0..cols {
                let v = f.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor != 0 {
                    for j in 0..cols {
                        let t = f.mul(factor, self.get(r, j));
                        let v = f.sub(self.get(i, j), t);
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().row_reduce().len()
    }

    /// Basis of the null space `{v : A·v = 0}`; empty iff A is injective.
    pub fn kernel_basis(&self) -> Vec<FpVector> {
        let f = self.field;
        let mut m = self.clone();
        let pivots = m.row_reduce();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0u8; self.cols];
                v[fc] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(m.get(r, fc));
                }
                FpVector::from_residues(f, v)
            })
            .collect()
    }

    pub fn apply(&self, v: &FpVector) -> FpVector {
        let f = self.field;
        let coords = (0..self.rows)
            .map(|i| {
                let acc: u64 = (0..self.cols)
                    .map(|j| self.get(i, j) as u64 * v.get(j) as u64)
                    .sum();
                (acc % f.p() as u64) as u8
            })
            .collect();
        FpVector::from_residues(f, coords)
    }
}
