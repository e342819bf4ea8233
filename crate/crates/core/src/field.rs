//! Arithmetic in the prime field F_p and vectors over it.
//!
//! Residues are stored canonically in `[0, p)` as `u8`; products are formed in
//! `u32` and reduced immediately.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest prime accepted by [`PrimeField::new`].
pub const DEFAULT_MAX_PRIME: u32 = 13;
/// Hard ceiling: residues must fit in a `u8`.
pub const MAX_PRIME: u32 = 251;

/// The field F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct PrimeField {
    p: u32,
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    /// F_p with the desk-scale guard `p <= 13`.
    pub fn new(p: u32) -> Result<Self> {
        let field = Self::new_unguarded(p)?;
        if p > DEFAULT_MAX_PRIME {
            return Err(Error::PrimeTooLarge {
                p,
                max: DEFAULT_MAX_PRIME,
            });
        }
        Ok(field)
    }

    /// F_p for any prime `p <= 251`.
    pub fn new_unguarded(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > MAX_PRIME {
            return Err(Error::PrimeTooLarge { p, max: MAX_PRIME });
        }
        Ok(Self { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn is_two(self) -> bool {
        self.p == 2
    }

    /// Reduce an arbitrary integer to its canonical residue.
    #[inline]
    pub fn reduce(self, x: i64) -> u8 {
        x.rem_euclid(self.p as i64) as u8
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        ((a as u32 + b as u32) % self.p) as u8
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        ((a as u32 + self.p - b as u32) % self.p) as u8
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            (self.p - a as u32) as u8
        }
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u32 * b as u32) % self.p) as u8
    }

    pub fn pow(self, a: u8, mut e: u64) -> u8 {
        let mut base = a as u32 % self.p;
        let mut acc = 1u32 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc as u8
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: u8) -> Option<u8> {
        if a as u32 % self.p == 0 {
            None
        } else {
            Some(self.pow(a, self.p as u64 - 2))
        }
    }

    /// Smallest generator of the multiplicative group.
    pub fn primitive_root(self) -> u8 {
        let order = self.p - 1;
        let mut factors = Vec::new();
        let mut m = order;
        let mut d = 2;
        while d * d <= m {
            if m % d == 0 {
                factors.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            factors.push(m);
        }
        (1..self.p)
            .map(|g| g as u8)
            .find(|&g| factors.iter().all(|&q| self.pow(g, (order / q) as u64) != 1))
            .expect("F_p^x is cyclic")
    }
}

impl TryFrom<u32> for PrimeField {
    type Error = Error;
    fn try_from(p: u32) -> Result<Self> {
        PrimeField::new_unguarded(p)
    }
}

impl From<PrimeField> for u32 {
    fn from(f: PrimeField) -> u32 {
        f.p
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

/// A vector in V_n = F_p^n.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpVector {
    field: PrimeField,
    coords: Vec<u8>,
}

impl FpVector {
    pub fn new(field: PrimeField, coords: &[i64]) -> Self {
        Self {
            field,
            coords: coords.iter().map(|&c| field.reduce(c)).collect(),
        }
    }

    pub fn from_residues(field: PrimeField, coords: Vec<u8>) -> Self {
        debug_assert!(coords.iter().all(|&c| (c as u32) < field.p()));
        Self { field, coords }
    }

    pub fn zero(field: PrimeField, n: usize) -> Self {
        Self {
            field,
            coords: vec![0; n],
        }
    }

    pub fn basis(field: PrimeField, n: usize, i: usize) -> Self {
        let mut v = Self::zero(field, n);
        v.coords[i] = 1;
        v
    }

    /// The `index`-th vector of V_n in radix-p order, coordinate 0 least significant.
    pub fn from_index(field: PrimeField, n: usize, mut index: u64) -> Self {
        let p = field.p() as u64;
        let coords = (0..n)
            .map(|_| {
                let c = (index % p) as u8;
                index /= p;
                c
            })
            .collect();
        Self { field, coords }
    }

    /// Inverse of [`FpVector::from_index`].
    pub fn index(&self) -> u64 {
        let p = self.field.p() as u64;
        self.coords
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * p + c as u64)
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    #[inline]
    pub fn coords(&self) -> &[u8] {
        &self.coords
    }

    #[inline]
    pub fn get(&self, i: usize) -> u8 {
        self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &FpVector) -> FpVector {
        let f = self.field;
        FpVector {
            field: f,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: u8) -> FpVector {
        let f = self.field;
        FpVector {
            field: f,
            coords: self.coords.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }
}

impl fmt::Display for FpVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Number of vectors in V_n, or `None` if it overflows `u64`.
pub fn space_size(field: PrimeField, n: usize) -> Option<u64> {
    (field.p() as u64).checked_pow(n as u32)
}
