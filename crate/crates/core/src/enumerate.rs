//! Deterministic enumeration of GL_n(F_p).
//!
//! Matrices are produced in increasing row-major radix-p order: the entry
//! tuple `(a_00, a_01, …, a_{n-1,n-1})` read as a base-p numeral with `a_00`
//! most significant. Singular matrices are skipped on the fly by extending an
//! echelon basis one row at a time, which prunes every dependent row prefix.
//!
//! A stream can be split into `w` disjoint partitions: the valid prefixes of
//! the first `min(2, n)` rows are numbered in enumeration order and prefix
//! number `k` belongs to partition `k mod w`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::matrix::{PrimeFieldMatrix, MAX_DIM};
use crate::field::PrimeField;

/// Identifier of the enumeration order, stamped into reports.
pub const ENUMERATION_ORDER_ID: &str = "gl-odometer/row-major/radix-p/prefix2-mod-w/v1";

/// Default cap on |GL_n(F_p)| for brute-force sweeps.
pub const DEFAULT_GL_GUARD: u64 = 20_000_000;

/// `∏_{i=0}^{n-1} (pⁿ − pⁱ)`.
pub fn gl_order(field: PrimeField, n: usize) -> BigUint {
    let p = BigUint::from(field.p());
    let pn = p.pow(n as u32);
    (0..n).fold(BigUint::one(), |acc, i| acc * (&pn - p.pow(i as u32)))
}

/// Upper bound on enumerated elements; `u64::MAX` disables the guard.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeGuard {
    pub max_elements: u64,
}

impl SizeGuard {
    pub const fn new(max_elements: u64) -> Self {
        Self { max_elements }
    }

    pub const fn unlimited() -> Self {
        Self {
            max_elements: u64::MAX,
        }
    }

    pub fn check(&self, field: PrimeField, n: usize) -> Result<u64> {
        let order = gl_order(field, n);
        match order.to_u64() {
            Some(o) if o <= self.max_elements => Ok(o),
            _ => Err(Error::SizeGuardExceeded {
                what: format!("GL_{n}({field})"),
                size: order.to_string(),
                limit: self.max_elements,
            }),
        }
    }
}

impl Default for SizeGuard {
    fn default() -> Self {
        Self::new(DEFAULT_GL_GUARD)
    }
}

/// Stream over GL_n(F_p) or one partition of it.
pub struct GlEnumerator {
    field: PrimeField,
    n: usize,
    p: u32,
    row_count: u64,
    workers: u64,
    part: u64,
    prefix_depth: usize,
    prefix_counter: u64,
    level: usize,
    next_row: [u64; MAX_DIM],
    // echelon basis of the rows chosen so far: reduced row and pivot column
    echelon: [[u8; MAX_DIM]; MAX_DIM],
    pivot: [usize; MAX_DIM],
    current: PrimeFieldMatrix,
    done: bool,
}

/// Full stream over GL_n(F_p), subject to `guard`.
pub fn gl_enumerate(field: PrimeField, n: usize, guard: SizeGuard) -> Result<GlEnumerator> {
    GlEnumerator::partition(field, n, 1, 0, guard)
}

impl GlEnumerator {
    /// Partition `part` of `workers` disjoint sub-streams.
    pub fn partition(
        field: PrimeField,
        n: usize,
        workers: usize,
        part: usize,
        guard: SizeGuard,
    ) -> Result<Self> {
        if n == 0 || n > MAX_DIM {
            return Err(Error::DimensionTooLarge { n, max: MAX_DIM });
        }
        assert!(workers >= 1 && part < workers, "bad partition {part}/{workers}");
        guard.check(field, n)?;
        let p = field.p();
        Ok(Self {
            field,
            n,
            p,
            row_count: (p as u64).pow(n as u32),
            workers: workers as u64,
            part: part as u64,
            prefix_depth: n.min(2),
            prefix_counter: 0,
            level: 0,
            next_row: [1; MAX_DIM],
            echelon: [[0; MAX_DIM]; MAX_DIM],
            pivot: [0; MAX_DIM],
            current: PrimeFieldMatrix::zero(field, n),
            done: false,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Decode a row index into coordinates, first coordinate most significant.
    #[inline]
    fn decode(&self, mut r: u64, out: &mut [u8; MAX_DIM]) {
        let p = self.p as u64;
        for j in (0..self.n).rev() {
            out[j] = (r % p) as u8;
            r /= p;
        }
    }

    /// Reduce `row` against the echelon rows of levels `< k`; on success
    /// record it as level `k` and return true.
    #[inline]
    fn try_extend(&mut self, k: usize, row: &[u8; MAX_DIM]) -> bool {
        let n = self.n;
        let p = self.p;
        let mut r = *row;
        for j in 0..k {
            let c = r[self.pivot[j]] as u32;
            if c != 0 {
                let b = &self.echelon[j];
                for t in 0..n {
                    r[t] = ((r[t] as u32 + (p - c) * b[t] as u32) % p) as u8;
                }
            }
        }
        let Some(piv) = (0..n).find(|&t| r[t] != 0) else {
            return false;
        };
        let inv = self.field.inv(r[piv]).expect("nonzero");
        for t in 0..n {
            r[t] = self.field.mul(r[t], inv);
        }
        self.echelon[k] = r;
        self.pivot[k] = piv;
        true
    }
}

impl Iterator for GlEnumerator {
    type Item = PrimeFieldMatrix;

    fn next(&mut self) -> Option<PrimeFieldMatrix> {
        if self.done {
            return None;
        }
        let mut row = [0u8; MAX_DIM];
        loop {
            let k = self.level;
            let mut descended = false;
            while self.next_row[k] < self.row_count {
                let cand = self.next_row[k];
                self.next_row[k] += 1;
                self.decode(cand, &mut row);
                if !self.try_extend(k, &row) {
                    continue;
                }
                if k + 1 == self.prefix_depth {
                    let ord = self.prefix_counter;
                    self.prefix_counter += 1;
                    if ord % self.workers != self.part {
                        continue;
                    }
                }
                for (j, &c) in row.iter().enumerate().take(self.n) {
                    self.current.set(k, j, c);
                }
                if k + 1 == self.n {
                    return Some(self.current);
                }
                self.level += 1;
                self.next_row[self.level] = 1;
                descended = true;
                break;
            }
            if descended {
                continue;
            }
            if k == 0 {
                self.done = true;
                return None;
            }
            self.level -= 1;
        }
    }
}
