//! Explicit F_p-valued cochains on V_n.
//!
//! Cocycles with values in k^× are stored as exponents of a fixed primitive
//! p-th root of unity ξ, so every cochain here is a function into Z/p.
//! Vectors are addressed by [`FpVector::index`] (coordinate 0 least significant).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{space_size, FpVector, PrimeField};
use crate::matrix::RectMatrix;

/// Cap on |V| for dense cochain tables.
pub const MAX_TABLE_SPACE: u64 = 4096;
/// Identity checks are exhaustive up to this many tuples, sampled beyond.
pub const EXHAUSTIVE_LIMIT: u64 = 5_000_000;
pub const SAMPLE_COUNT: usize = 200_000;
pub const SAMPLE_SEED: u64 = 0x5eed_b7a1;

/// The additive group V_n with precomputed coordinates and addition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorSpace {
    field: PrimeField,
    n: usize,
    size: usize,
    coords: Vec<Vec<u8>>,
    pow: Vec<usize>,
}

impl VectorSpace {
    pub fn new(field: PrimeField, n: usize) -> Result<Self> {
        let size = space_size(field, n)
            .filter(|&s| s <= MAX_TABLE_SPACE)
            .ok_or_else(|| Error::SizeGuardExceeded {
                what: format!("V_{n} over {field}"),
                size: format!("{}^{n}", field.p()),
                limit: MAX_TABLE_SPACE,
            })? as usize;
        let coords = (0..size as u64)
            .map(|i| FpVector::from_index(field, n, i).coords().to_vec())
            .collect();
        let pow = (0..n).map(|i| (field.p() as usize).pow(i as u32)).collect();
        Ok(Self {
            field,
            n,
            size,
            coords,
            pow,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn coords(&self, i: usize) -> &[u8] {
        &self.coords[i]
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        let (ca, cb) = (&self.coords[a], &self.coords[b]);
        (0..self.n)
            .map(|t| self.field.add(ca[t], cb[t]) as usize * self.pow[t])
            .sum()
    }

    pub fn vector(&self, i: usize) -> FpVector {
        FpVector::from_residues(self.field, self.coords[i].clone())
    }
}

/// Explicit 3-cochain `Σ c·u_a v_b w_c + Σ d·u_i y_j(v, w)`, where
/// `y_j(v, w) = 1` iff `v_j + w_j ≥ p` as integers (the carry cocycle).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle3 {
    field: PrimeField,
    n: usize,
    cup_terms: Vec<([usize; 3], u8)>,
    carry_terms: Vec<([usize; 2], u8)>,
}

impl Cocycle3 {
    pub fn new(
        field: PrimeField,
        n: usize,
        cup_terms: Vec<([usize; 3], u8)>,
        carry_terms: Vec<([usize; 2], u8)>,
    ) -> Result<Self> {
        for (t, _) in &cup_terms {
            if t.iter().any(|&i| i >= n) {
                return Err(Error::BadIndex(t.to_vec()));
            }
        }
        for (t, _) in &carry_terms {
            if t.iter().any(|&i| i >= n) {
                return Err(Error::BadIndex(t.to_vec()));
            }
        }
        Ok(Self {
            field,
            n,
            cup_terms: cup_terms.into_iter().filter(|(_, c)| *c != 0).collect(),
            carry_terms: carry_terms.into_iter().filter(|(_, c)| *c != 0).collect(),
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn cup_terms(&self) -> &[([usize; 3], u8)] {
        &self.cup_terms
    }

    pub fn carry_terms(&self) -> &[([usize; 2], u8)] {
        &self.carry_terms
    }

    pub fn is_zero(&self) -> bool {
        self.cup_terms.is_empty() && self.carry_terms.is_empty()
    }

    /// Exponent `c(u, v, w) ∈ Z/p` on coordinate slices.
    #[inline]
    pub fn eval(&self, u: &[u8], v: &[u8], w: &[u8]) -> u8 {
        let p = self.field.p();
        let mut acc = 0u32;
        for ([a, b, c], k) in &self.cup_terms {
            acc += *k as u32 * (u[*a] as u32 * v[*b] as u32 % p * w[*c] as u32 % p);
        }
        for ([i, j], k) in &self.carry_terms {
            if v[*j] as u32 + w[*j] as u32 >= p {
                acc += *k as u32 * u[*i] as u32;
            }
        }
        (acc % p) as u8
    }

    pub fn eval_vectors(&self, u: &FpVector, v: &FpVector, w: &FpVector) -> u8 {
        self.eval(u.coords(), v.coords(), w.coords())
    }
}

/// Checks the additive 3-cocycle identity
/// `c(v,w,x) − c(u+v,w,x) + c(u,v+w,x) − c(u,v,w+x) + c(u,v,w) = 0`,
/// exhaustively when feasible and on [`SAMPLE_COUNT`] seeded samples otherwise.
/// Returns the first failing quadruple of indices.
pub fn check_3cocycle(
    space: &VectorSpace,
    c: impl Fn(&[u8], &[u8], &[u8]) -> u8,
) -> std::result::Result<(), [usize; 4]> {
    let f = space.field();
    let s = space.size();
    let check = |u: usize, v: usize, w: usize, x: usize| {
        let co = |a: usize, b: usize, d: usize| c(space.coords(a), space.coords(b), space.coords(d));
        let total = [
            co(v, w, x),
            f.neg(co(space.add(u, v), w, x)),
            co(u, space.add(v, w), x),
            f.neg(co(u, v, space.add(w, x))),
            co(u, v, w),
        ]
        .iter()
        .fold(0u8, |a, &b| f.add(a, b));
        total == 0
    };
    if (s as u64).pow(4) <= EXHAUSTIVE_LIMIT {
        for u in 0..s {
            for v in 0..s {
                for w in 0..s {
                    for x in 0..s {
                        if !check(u, v, w, x) {
                            return Err([u, v, w, x]);
                        }
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
        for _ in 0..SAMPLE_COUNT {
            let q = [0; 4].map(|_| rng.gen_range(0..s));
            if !check(q[0], q[1], q[2], q[3]) {
                return Err(q);
            }
        }
    }
    Ok(())
}

/// Dense 2-cochain `V × V → Z/p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoCochain {
    space: VectorSpace,
    values: Vec<u8>,
}

impl TwoCochain {
    pub fn from_fn(space: &VectorSpace, mut f: impl FnMut(&[u8], &[u8]) -> u8) -> Self {
        let s = space.size();
        let mut values = Vec::with_capacity(s * s);
        for a in 0..s {
            for b in 0..s {
                values.push(f(space.coords(a), space.coords(b)) % space.field().p() as u8);
            }
        }
        Self {
            space: space.clone(),
            values,
        }
    }

    pub fn space(&self) -> &VectorSpace {
        &self.space
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> u8 {
        self.values[a * self.space.size() + b]
    }

    /// Checks `b(y,z) − b(x+y,z) + b(x,y+z) − b(x,y) = 0`.
    pub fn check_cocycle(&self) -> std::result::Result<(), [usize; 3]> {
        let sp = &self.space;
        let f = sp.field();
        let s = sp.size();
        let check = |x: usize, y: usize, z: usize| {
            let t = f.add(
                f.sub(self.get(y, z), self.get(sp.add(x, y), z)),
                f.sub(self.get(x, sp.add(y, z)), self.get(x, y)),
            );
            t == 0
        };
        if (s as u64).pow(3) <= EXHAUSTIVE_LIMIT {
            for x in 0..s {
                for y in 0..s {
                    for z in 0..s {
                        if !check(x, y, z) {
                            return Err([x, y, z]);
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
            for _ in 0..SAMPLE_COUNT {
                let q = [0; 3].map(|_| rng.gen_range(0..s));
                if !check(q[0], q[1], q[2]) {
                    return Err(q);
                }
            }
        }
        Ok(())
    }
}

/// Whether the 3-cochain `c` lies in B³(V, F_p) = d C²(V, F_p), decided by
/// solving the linear system over F_p. Only practical for |V| ≤ 27.
pub fn is_3_coboundary(space: &VectorSpace, c: impl Fn(&[u8], &[u8], &[u8]) -> u8) -> Result<bool> {
    let s = space.size();
    if s > 27 {
        return Err(Error::SizeGuardExceeded {
            what: "coboundary system".into(),
            size: format!("|V| = {s}"),
            limit: 27,
        });
    }
    let f = space.field();
    let unknowns = s * s;
    let mut m = RectMatrix::zero(f, s * s * s, unknowns + 1);
    let var = |a: usize, b: usize| a * s + b;
    let mut row = 0;
    for u in 0..s {
        for v in 0..s {
            for w in 0..s {
                // (d g)(u,v,w) = g(v,w) − g(u+v,w) + g(u,v+w) − g(u,v)
                let terms = [
                    (var(v, w), 1i64),
                    (var(space.add(u, v), w), -1),
                    (var(u, space.add(v, w)), 1),
                    (var(u, v), -1),
                ];
                for (col, sign) in terms {
                    let cur = m.get(row, col) as i64;
                    m.set(row, col, f.reduce(cur + sign));
                }
                m.set(row, unknowns, c(space.coords(u), space.coords(v), space.coords(w)));
                row += 1;
            }
        }
    }
    let pivots = m.row_reduce();
    Ok(!pivots.contains(&unknowns))
}
