//! Alternating and symmetric forms on V_n = F_p^n.
//!
//! A [`WedgeForm`] of degree k is an element of ⋀^k(V_n*), stored densely over
//! the strictly increasing index tuples in lexicographic order. The basis
//! element `x_i ∧ x_j ∧ x_k` evaluates to the determinant
//! `det[[u_i, v_i, w_i], [u_j, v_j, w_j], [u_k, v_k, w_k]]`.
//!
//! A [`SymForm`] of degree k is a homogeneous polynomial in Sym^k(V_n*), stored
//! over weakly increasing index tuples; `z_i z_j` is the polynomial function
//! `v ↦ v_i v_j`.
//!
//! GL_n(F_p) acts on both from the left by `(g·φ)(v₁,…) = φ(g⁻¹v₁,…)`.
//! [`WedgeForm::pullback`] and [`SymForm::pullback`] compute `φ∘g`; the
//! stabilizer of a form is the same set under either convention.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FpVector, PrimeField};
use crate::matrix::{PrimeFieldMatrix, RectMatrix};

/// Index tuple of length at most 3, unused slots zero.
pub type Tuple = [usize; 3];

/// All strictly increasing k-tuples from `0..n`, lexicographic.
pub fn strict_tuples(n: usize, k: usize) -> Vec<Tuple> {
    let mut out = Vec::new();
    let mut cur = [0usize; 3];
    fn rec(n: usize, k: usize, depth: usize, start: usize, cur: &mut Tuple, out: &mut Vec<Tuple>) {
        if depth == k {
            out.push(*cur);
            return;
        }
        for i in start..n {
            cur[depth] = i;
            rec(n, k, depth + 1, i + 1, cur, out);
        }
        cur[depth] = 0;
    }
    rec(n, k, 0, 0, &mut cur, &mut out);
    out
}

/// All weakly increasing k-tuples from `0..n`, lexicographic.
pub fn weak_tuples(n: usize, k: usize) -> Vec<Tuple> {
    let mut out = Vec::new();
    let mut cur = [0usize; 3];
    fn rec(n: usize, k: usize, depth: usize, start: usize, cur: &mut Tuple, out: &mut Vec<Tuple>) {
        if depth == k {
            out.push(*cur);
            return;
        }
        for i in start..n {
            cur[depth] = i;
            rec(n, k, depth + 1, i, cur, out);
        }
        cur[depth] = 0;
    }
    rec(n, k, 0, 0, &mut cur, &mut out);
    out
}

fn to_tuple(idx: &[usize]) -> Tuple {
    let mut t = [0; 3];
    t[..idx.len()].copy_from_slice(idx);
    t
}

/// Sort in place; returns the permutation parity (true = odd), or `None`
/// when an index repeats.
fn sort_with_sign(idx: &mut [usize]) -> Option<bool> {
    let mut odd = false;
    for i in 0..idx.len() {
        for j in 0..idx.len() - 1 - i {
            if idx[j] > idx[j + 1] {
                idx.swap(j, j + 1);
                odd = !odd;
            }
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(odd)
    }
}

fn check_degree(k: usize) -> Result<()> {
    if (1..=3).contains(&k) {
        Ok(())
    } else {
        Err(Error::UnsupportedDegree(k))
    }
}

/// Determinant of the k×k submatrix of `g` with the given rows and columns.
fn minor(g: &PrimeFieldMatrix, rows: &[usize], cols: &[usize]) -> u8 {
    let f = g.field();
    match rows.len() {
        1 => g.get(rows[0], cols[0]),
        2 => {
            let a = f.mul(g.get(rows[0], cols[0]), g.get(rows[1], cols[1]));
            let b = f.mul(g.get(rows[0], cols[1]), g.get(rows[1], cols[0]));
            f.sub(a, b)
        }
        3 => {
            let m = |i: usize, j: usize| g.get(rows[i], cols[j]) as i64;
            let d = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
                - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
            f.reduce(d)
        }
        _ => unreachable!("degree checked at construction"),
    }
}

fn write_coeff(f: &mut fmt::Formatter<'_>, first: bool, c: u8) -> fmt::Result {
    if !first {
        write!(f, " + ")?;
    }
    if c != 1 {
        write!(f, "{c}*")?;
    }
    Ok(())
}

/// An element of ⋀^k(V_n*), k ∈ {1, 2, 3}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WedgeForm {
    field: PrimeField,
    n: usize,
    k: usize,
    coeffs: Vec<u8>,
}

impl WedgeForm {
    pub fn zero(field: PrimeField, n: usize, k: usize) -> Result<Self> {
        check_degree(k)?;
        Ok(Self {
            field,
            n,
            k,
            coeffs: vec![0; strict_tuples(n, k).len()],
        })
    }

    /// Sum of `c · x_{i₁} ∧ … ∧ x_{i_k}`; indices may come in any order and are
    /// sorted with the sign of the permutation.
    pub fn from_terms(field: PrimeField, n: usize, k: usize, terms: &[(&[usize], i64)]) -> Result<Self> {
        let mut form = Self::zero(field, n, k)?;
        for (idx, c) in terms {
            if idx.len() != k || idx.iter().any(|&i| i >= n) {
                return Err(Error::BadIndex(idx.to_vec()));
            }
            let mut sorted = idx.to_vec();
            let odd = sort_with_sign(&mut sorted).ok_or_else(|| Error::BadIndex(idx.to_vec()))?;
            let c = field.reduce(if odd { -c } else { *c });
            let pos = form.position(&sorted).expect("validated");
            form.coeffs[pos] = field.add(form.coeffs[pos], c);
        }
        Ok(form)
    }

    pub fn basis_element(field: PrimeField, n: usize, idx: &[usize]) -> Result<Self> {
        Self::from_terms(field, n, idx.len(), &[(idx, 1)])
    }

    /// Form with the given dense coefficients over [`strict_tuples`].
    pub fn from_coeffs(field: PrimeField, n: usize, k: usize, coeffs: Vec<u8>) -> Result<Self> {
        check_degree(k)?;
        let len = strict_tuples(n, k).len();
        if coeffs.len() != len {
            return Err(Error::DimensionMismatch {
                expected: len,
                found: coeffs.len(),
            });
        }
        Ok(Self {
            field,
            n,
            k,
            coeffs: coeffs.into_iter().map(|c| field.reduce(c as i64)).collect(),
        })
    }

    fn position(&self, sorted: &[usize]) -> Option<usize> {
        strict_tuples(self.n, self.k).binary_search(&to_tuple(sorted)).ok()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    /// Coefficient of the basis element with these strictly increasing indices.
    pub fn coeff(&self, idx: &[usize]) -> u8 {
        self.position(idx).map_or(0, |p| self.coeffs[p])
    }

    /// Nonzero terms in lexicographic order.
    pub fn terms(&self) -> Vec<(Vec<usize>, u8)> {
        strict_tuples(self.n, self.k)
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(_, &c)| c != 0)
            .map(|(t, &c)| (t[..self.k].to_vec(), c))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.p(),
                right: other.field.p(),
            });
        }
        if self.n != other.n || self.k != other.k {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let f = self.field;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
            ..self.clone()
        })
    }

    pub fn scale(&self, c: u8) -> Self {
        let f = self.field;
        Self {
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
            ..self.clone()
        }
    }

    /// Value on k vectors (multilinear, alternating).
    pub fn evaluate(&self, vs: &[FpVector]) -> Result<u8> {
        if vs.len() != self.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                found: vs.len(),
            });
        }
        if let Some(v) = vs.iter().find(|v| v.dim() != self.n) {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: v.dim(),
            });
        }
        let f = self.field;
        // Matrix whose column s is vs[s]; the basis element on S is the minor on rows S.
        let mut m = PrimeFieldMatrix::zero(f, self.n.max(self.k));
        for (s, v) in vs.iter().enumerate() {
            for i in 0..self.n {
                m.set(i, s, v.get(i));
            }
        }
        let cols: Vec<usize> = (0..self.k).collect();
        let mut acc = 0u8;
        for (t, &c) in strict_tuples(self.n, self.k).iter().zip(&self.coeffs) {
            if c != 0 {
                acc = f.add(acc, f.mul(c, minor(&m, &t[..self.k], &cols)));
            }
        }
        Ok(acc)
    }

    /// `φ ∘ (g × … × g)`.
    pub fn pullback(&self, g: &PrimeFieldMatrix) -> Result<Self> {
        if g.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: g.dim(),
            });
        }
        let f = self.field;
        let tuples = strict_tuples(self.n, self.k);
        let k = self.k;
        let coeffs = tuples
            .iter()
            .map(|cols| {
                tuples
                    .iter()
                    .zip(&self.coeffs)
                    .filter(|(_, &c)| c != 0)
                    .fold(0u8, |acc, (rows, &c)| {
                        f.add(acc, f.mul(c, minor(g, &rows[..k], &cols[..k])))
                    })
            })
            .collect();
        Ok(Self {
            coeffs,
            ..self.clone()
        })
    }

    /// Left action `g·φ = φ ∘ g⁻¹`.
    pub fn gl_act(&self, g: &PrimeFieldMatrix) -> Result<Self> {
        self.pullback(&g.mat_inverse()?)
    }

    /// Exterior product; degrees must sum to at most 3.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.field != other.field || self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let k = self.k + other.k;
        let mut out = Self::zero(self.field, self.n, k)?;
        let f = self.field;
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                let mut idx: Vec<usize> = a.iter().chain(&b).copied().collect();
                if let Some(odd) = sort_with_sign(&mut idx) {
                    let c = f.mul(ca, cb);
                    let c = if odd { f.neg(c) } else { c };
                    let pos = out.position(&idx).expect("sorted");
                    out.coeffs[pos] = f.add(out.coeffs[pos], c);
                }
            }
        }
        Ok(out)
    }

    /// Interior derivation `ι_v φ = φ(·, …, ·, v)`. On a basis 3-form,
    /// `ι_v(x∧y∧z) = ⟨v,z⟩ x∧y − ⟨v,y⟩ x∧z + ⟨v,x⟩ y∧z`.
    pub fn interior_derivation(&self, v: &FpVector) -> Result<Self> {
        if v.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: v.dim(),
            });
        }
        if self.k < 2 {
            return Err(Error::UnsupportedDegree(self.k));
        }
        let f = self.field;
        let mut out = Self::zero(f, self.n, self.k - 1)?;
        for (idx, c) in self.terms() {
            for m in 0..self.k {
                let vm = v.get(idx[m]);
                if vm == 0 {
                    continue;
                }
                let rest: Vec<usize> = idx.iter().enumerate().filter(|&(t, _)| t != m).map(|(_, &i)| i).collect();
                let term = f.mul(c, vm);
                // moving slot m to the end passes k-1-m transpositions
                let term = if (self.k - 1 - m) % 2 == 1 { f.neg(term) } else { term };
                let pos = out.position(&rest).expect("sorted");
                out.coeffs[pos] = f.add(out.coeffs[pos], term);
            }
        }
        Ok(out)
    }

    /// Matrix of `v ↦ ι_v φ` in the basis of ⋀^{k-1}.
    pub fn contraction_matrix(&self) -> Result<RectMatrix> {
        let cols: Vec<FpVector> = (0..self.n)
            .map(|j| {
                self.interior_derivation(&FpVector::basis(self.field, self.n, j))
                    .map(|w| FpVector::from_residues(self.field, w.coeffs))
            })
            .collect::<Result<_>>()?;
        let rows = strict_tuples(self.n, self.k - 1).len();
        Ok(RectMatrix::from_columns(self.field, rows, &cols))
    }

    /// Basis of `Rad(φ) = {u : ι_u φ = 0}`.
    pub fn radical(&self) -> Result<Vec<FpVector>> {
        Ok(self.contraction_matrix()?.kernel_basis())
    }

    pub fn is_nondegenerate(&self) -> Result<bool> {
        Ok(self.radical()?.is_empty())
    }

    /// Gram matrix `G[i][j] = φ(e_i, e_j)` of a 2-form.
    pub fn gram_matrix(&self) -> Result<RectMatrix> {
        if self.k != 2 {
            return Err(Error::UnsupportedDegree(self.k));
        }
        let f = self.field;
        let mut g = RectMatrix::zero(f, self.n, self.n);
        for (idx, c) in self.terms() {
            g.set(idx[0], idx[1], c);
            g.set(idx[1], idx[0], f.neg(c));
        }
        Ok(g)
    }

    /// Rank of a 2-form as an endomorphism of V.
    pub fn rank(&self) -> Result<usize> {
        Ok(self.gram_matrix()?.rank())
    }

    pub fn display_with(&self, names: &[String]) -> String {
        let mut s = String::new();
        let mut first = true;
        for (idx, c) in self.terms() {
            if !first {
                s.push_str(" + ");
            }
            if c != 1 {
                s.push_str(&format!("{c}*"));
            }
            let vars: Vec<&str> = idx.iter().map(|&i| names[i].as_str()).collect();
            s.push_str(&vars.join("^"));
            first = false;
        }
        if first {
            s.push('0');
        }
        s
    }
}

impl fmt::Display for WedgeForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (idx, c) in self.terms() {
            write_coeff(f, first, c)?;
            let vars: Vec<String> = idx.iter().map(|i| format!("x{i}")).collect();
            write!(f, "{}", vars.join("^"))?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A homogeneous polynomial of degree k ∈ {1, 2, 3} on V_n.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymForm {
    field: PrimeField,
    n: usize,
    k: usize,
    coeffs: Vec<u8>,
}

impl SymForm {
    pub fn zero(field: PrimeField, n: usize, k: usize) -> Result<Self> {
        check_degree(k)?;
        Ok(Self {
            field,
            n,
            k,
            coeffs: vec![0; weak_tuples(n, k).len()],
        })
    }

    /// Sum of monomials `c · z_{i₁} ⋯ z_{i_k}`; indices in any order.
    pub fn from_terms(field: PrimeField, n: usize, k: usize, terms: &[(&[usize], i64)]) -> Result<Self> {
        let mut form = Self::zero(field, n, k)?;
        for (idx, c) in terms {
            if idx.len() != k || idx.iter().any(|&i| i >= n) {
                return Err(Error::BadIndex(idx.to_vec()));
            }
            let mut sorted = idx.to_vec();
            sorted.sort_unstable();
            form.add_to(&sorted, field.reduce(*c));
        }
        Ok(form)
    }

    pub fn from_coeffs(field: PrimeField, n: usize, k: usize, coeffs: Vec<u8>) -> Result<Self> {
        check_degree(k)?;
        let len = weak_tuples(n, k).len();
        if coeffs.len() != len {
            return Err(Error::DimensionMismatch {
                expected: len,
                found: coeffs.len(),
            });
        }
        Ok(Self {
            field,
            n,
            k,
            coeffs: coeffs.into_iter().map(|c| field.reduce(c as i64)).collect(),
        })
    }

    fn position(&self, sorted: &[usize]) -> Option<usize> {
        weak_tuples(self.n, self.k).binary_search(&to_tuple(sorted)).ok()
    }

    fn add_to(&mut self, sorted: &[usize], c: u8) {
        let pos = self.position(sorted).expect("sorted in-range tuple");
        self.coeffs[pos] = self.field.add(self.coeffs[pos], c);
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn coeff(&self, idx: &[usize]) -> u8 {
        self.position(idx).map_or(0, |p| self.coeffs[p])
    }

    pub fn terms(&self) -> Vec<(Vec<usize>, u8)> {
        weak_tuples(self.n, self.k)
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(_, &c)| c != 0)
            .map(|(t, &c)| (t[..self.k].to_vec(), c))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.field != other.field || self.n != other.n || self.k != other.k {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let f = self.field;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
            ..self.clone()
        })
    }

    pub fn scale(&self, c: u8) -> Self {
        let f = self.field;
        Self {
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
            ..self.clone()
        }
    }

    /// Polynomial value at `v`.
    pub fn evaluate(&self, v: &FpVector) -> Result<u8> {
        if v.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: v.dim(),
            });
        }
        let f = self.field;
        let mut acc = 0u8;
        for (t, &c) in weak_tuples(self.n, self.k).iter().zip(&self.coeffs) {
            if c != 0 {
                let m = t[..self.k].iter().fold(c, |a, &i| f.mul(a, v.get(i)));
                acc = f.add(acc, m);
            }
        }
        Ok(acc)
    }

    /// Substitution `z_i ↦ Σ_j g_ij z_j`, i.e. the polynomial `v ↦ φ(g v)`.
    pub fn pullback(&self, g: &PrimeFieldMatrix) -> Result<Self> {
        if g.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: g.dim(),
            });
        }
        let f = self.field;
        let n = self.n;
        let mut out = Self::zero(f, n, self.k)?;
        for (idx, c) in self.terms() {
            // expand the product of k linear forms
            let total = n.pow(self.k as u32);
            for code in 0..total {
                let mut js = [0usize; 3];
                let mut r = code;
                for slot in js.iter_mut().take(self.k) {
                    *slot = r % n;
                    r /= n;
                }
                let mut coef = c;
                for m in 0..self.k {
                    coef = f.mul(coef, g.get(idx[m], js[m]));
                    if coef == 0 {
                        break;
                    }
                }
                if coef != 0 {
                    let mut sorted = js[..self.k].to_vec();
                    sorted.sort_unstable();
                    out.add_to(&sorted, coef);
                }
            }
        }
        Ok(out)
    }

    pub fn gl_act(&self, g: &PrimeFieldMatrix) -> Result<Self> {
        self.pullback(&g.mat_inverse()?)
    }

    /// For odd p and degree 2: the symmetric matrix S with `q(v) = vᵀ S v`.
    pub fn polar_matrix(&self) -> Result<RectMatrix> {
        if self.k != 2 {
            return Err(Error::UnsupportedDegree(self.k));
        }
        let f = self.field;
        let half = f.inv(2).ok_or(Error::WrongCharacteristic {
            expected: "odd p",
            p: f.p(),
        })?;
        let mut s = RectMatrix::zero(f, self.n, self.n);
        for (idx, c) in self.terms() {
            if idx[0] == idx[1] {
                s.set(idx[0], idx[0], c);
            } else {
                let h = f.mul(c, half);
                s.set(idx[0], idx[1], h);
                s.set(idx[1], idx[0], h);
            }
        }
        Ok(s)
    }

    /// The quadratic form `v ↦ vᵀ S v` of a symmetric matrix S.
    pub fn from_polar_matrix(s: &RectMatrix) -> Result<Self> {
        let n = s.rows();
        let f = s.field();
        let mut form = Self::zero(f, n, 2)?;
        for i in 0..n {
            for j in i..n {
                if s.get(i, j) != s.get(j, i) {
                    return Err(Error::FormNotSymmetric { i, j });
                }
                let c = if i == j { s.get(i, i) } else { f.add(s.get(i, j), s.get(j, i)) };
                if c != 0 {
                    form.add_to(&[i, j], c);
                }
            }
        }
        Ok(form)
    }

    pub fn display_with(&self, names: &[String]) -> String {
        let mut s = String::new();
        let mut first = true;
        for (idx, c) in self.terms() {
            if !first {
                s.push_str(" + ");
            }
            if c != 1 {
                s.push_str(&format!("{c}*"));
            }
            let vars: Vec<&str> = idx.iter().map(|&i| names[i].as_str()).collect();
            s.push_str(&vars.join("*"));
            first = false;
        }
        if first {
            s.push('0');
        }
        s
    }
}

impl fmt::Display for SymForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = if self.k == 3 { "x" } else { "z" };
        let names: Vec<String> = (0..self.n).map(|i| format!("{letter}{i}")).collect();
        write!(f, "{}", self.display_with(&names))
    }
}

/// A coset in Sym³(V_n*) / span{x_i²x_j + x_i x_j²} over F₂.
///
/// The representative is canonical: in a monomial with a square, the squared
/// variable carries the smaller index (`x_a² x_b` with a < b).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sym3Coset {
    rep: SymForm,
}

/// Canonical representative of the coset of `s` (p = 2, degree 3).
pub fn sym3_reduce(s: &SymForm) -> Result<Sym3Coset> {
    if !s.field.is_two() {
        return Err(Error::WrongCharacteristic {
            expected: "p = 2",
            p: s.field.p(),
        });
    }
    if s.k != 3 {
        return Err(Error::UnsupportedDegree(s.k));
    }
    let mut rep = SymForm::zero(s.field, s.n, 3)?;
    for (idx, c) in s.terms() {
        let (a, b, cc) = (idx[0], idx[1], idx[2]);
        if a < b && b == cc {
            // x_a x_b² ≡ x_a² x_b
            rep.add_to(&[a, a, b], c);
        } else {
            rep.add_to(&idx, c);
        }
    }
    Ok(Sym3Coset { rep })
}

impl Sym3Coset {
    pub fn zero(field: PrimeField, n: usize) -> Result<Self> {
        sym3_reduce(&SymForm::zero(field, n, 3)?)
    }

    pub fn representative(&self) -> &SymForm {
        &self.rep
    }

    pub fn field(&self) -> PrimeField {
        self.rep.field
    }

    pub fn dim(&self) -> usize {
        self.rep.n
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            rep: self.rep.add(&other.rep)?,
        })
    }

    /// `x_i² x_j + x_i x_j²`, a generator of the relation subspace.
    pub fn relation(field: PrimeField, n: usize, i: usize, j: usize) -> Result<SymForm> {
        SymForm::from_terms(field, n, 3, &[(&[i, i, j], 1), (&[i, j, j], 1)])
    }

    /// Projection to ⋀³: keeps the squarefree monomials.
    pub fn pi_alt(&self) -> WedgeForm {
        let mut w = WedgeForm::zero(self.rep.field, self.rep.n, 3).expect("degree 3");
        for (idx, c) in self.rep.terms() {
            if idx[0] < idx[1] && idx[1] < idx[2] {
                let pos = w.position(&idx).expect("sorted");
                w.coeffs[pos] = c;
            }
        }
        w
    }

    /// Value of the cubic as a function V_n → F₂. Well defined on cosets.
    pub fn evaluate(&self, v: &FpVector) -> Result<u8> {
        self.rep.evaluate(v)
    }

    /// Bit `i` set iff the cubic is 1 at `FpVector::from_index(i)`. Needs n ≤ 6.
    pub fn evaluation_mask(&self) -> u64 {
        assert!(self.rep.n <= 6, "evaluation mask needs n <= 6");
        let f = self.rep.field;
        let mut mask = 0u64;
        for i in 0..(1u64 << self.rep.n) {
            if self.rep.evaluate(&FpVector::from_index(f, self.rep.n, i)).expect("dims") == 1 {
                mask |= 1 << i;
            }
        }
        mask
    }

    /// `φ ∘ g`, re-reduced.
    pub fn pullback(&self, g: &PrimeFieldMatrix) -> Result<Self> {
        sym3_reduce(&self.rep.pullback(g)?)
    }

    pub fn gl_act(&self, g: &PrimeFieldMatrix) -> Result<Self> {
        sym3_reduce(&self.rep.gl_act(g)?)
    }
}

impl fmt::Display for Sym3Coset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.rep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn basis_dimensions() {
        for n in 1..=6 {
            assert_eq!(strict_tuples(n, 3).len(), binom(n, 3));
            assert_eq!(strict_tuples(n, 2).len(), binom(n, 2));
            assert_eq!(weak_tuples(n, 2).len(), binom(n + 1, 2));
            assert_eq!(weak_tuples(n, 3).len(), binom(n + 2, 3));
        }
    }

    #[test]
    fn relation_space_dimension() {
        for n in 1..=6 {
            let rels: Vec<FpVector> = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| {
                    let r = Sym3Coset::relation(f(2), n, i, j).unwrap();
                    FpVector::from_residues(f(2), r.coeffs.clone())
                })
                .collect();
            let m = RectMatrix::from_columns(f(2), weak_tuples(n, 3).len(), &rels);
            assert_eq!(m.rank(), binom(n, 2), "n={n}");
        }
    }

    #[test]
    fn diagonal_scales_top_wedge() {
        let w = WedgeForm::basis_element(f(5), 3, &[0, 1, 2]).unwrap();
        let g = PrimeFieldMatrix::diagonal(f(5), &[3, 1, 1]);
        assert_eq!(w.gl_act(&g).unwrap(), w.scale(f(5).inv(3).unwrap()));
        assert_eq!(w.pullback(&g).unwrap(), w.scale(3));
    }

    #[test]
    fn swap_flips_sign() {
        let w = WedgeForm::basis_element(f(3), 3, &[0, 1, 2]).unwrap();
        let s = PrimeFieldMatrix::from_rows(f(3), &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]).unwrap();
        assert_eq!(w.gl_act(&s).unwrap(), w.scale(2));
        let q = SymForm::from_terms(f(3), 3, 2, &[(&[0, 1], 1)]).unwrap();
        assert_eq!(q.gl_act(&s).unwrap(), q);
    }

    #[test]
    fn out_of_order_terms_carry_signs() {
        let a = WedgeForm::from_terms(f(5), 3, 2, &[(&[1, 0], 1)]).unwrap();
        assert_eq!(a.coeff(&[0, 1]), 4);
        assert!(WedgeForm::from_terms(f(5), 3, 2, &[(&[1, 1], 1)]).is_err());
        assert!(WedgeForm::from_terms(f(5), 3, 2, &[(&[0, 3], 1)]).is_err());
    }

    #[test]
    fn interior_derivation_examples() {
        let w = WedgeForm::basis_element(f(3), 3, &[0, 1, 2]).unwrap();
        let e0 = FpVector::basis(f(3), 3, 0);
        assert_eq!(
            w.interior_derivation(&e0).unwrap(),
            WedgeForm::basis_element(f(3), 3, &[1, 2]).unwrap()
        );
        let w4 = WedgeForm::basis_element(f(3), 4, &[0, 1, 2]).unwrap();
        assert!(w4.interior_derivation(&FpVector::basis(f(3), 4, 3)).unwrap().is_zero());
    }

    #[test]
    fn radical_examples() {
        let w = WedgeForm::basis_element(f(3), 3, &[0, 1, 2]).unwrap();
        assert!(w.radical().unwrap().is_empty());
        assert!(w.is_nondegenerate().unwrap());
        let w4 = WedgeForm::basis_element(f(3), 4, &[0, 1, 2]).unwrap();
        assert_eq!(w4.radical().unwrap(), vec![FpVector::basis(f(3), 4, 3)]);
        assert!(!w4.is_nondegenerate().unwrap());
        let z = WedgeForm::zero(f(3), 3, 3).unwrap();
        assert_eq!(z.radical().unwrap().len(), 3);
        assert!(!z.is_nondegenerate().unwrap());
    }

    #[test]
    fn sym3_reduce_examples() {
        let f2 = f(2);
        let s = SymForm::from_terms(f2, 3, 3, &[(&[1, 1, 0], 1)]).unwrap();
        let r = sym3_reduce(&s).unwrap();
        assert_eq!(r.representative().terms(), vec![(vec![0, 0, 1], 1)]);
        let sq = SymForm::from_terms(f2, 3, 3, &[(&[0, 1, 2], 1)]).unwrap();
        assert_eq!(sym3_reduce(&sq).unwrap().representative(), &sq);
        let odd = SymForm::zero(f(3), 3, 3).unwrap();
        assert!(matches!(sym3_reduce(&odd), Err(Error::WrongCharacteristic { .. })));
    }

    #[test]
    fn pi_alt_examples() {
        let f2 = f(2);
        let c = sym3_reduce(&SymForm::from_terms(f2, 3, 3, &[(&[0, 1, 2], 1)]).unwrap()).unwrap();
        assert_eq!(c.pi_alt(), WedgeForm::basis_element(f2, 3, &[0, 1, 2]).unwrap());
        let c = sym3_reduce(&SymForm::from_terms(f2, 3, 3, &[(&[0, 1, 1], 1)]).unwrap()).unwrap();
        assert!(c.pi_alt().is_zero());
    }

    #[test]
    fn polar_matrix_round_trip() {
        let q = SymForm::from_terms(f(5), 3, 2, &[(&[0, 1], 4), (&[2, 2], 3), (&[0, 2], 1)]).unwrap();
        let s = q.polar_matrix().unwrap();
        assert_eq!(SymForm::from_polar_matrix(&s).unwrap(), q);
        assert_eq!(s.get(0, 1), 2);
    }
}
