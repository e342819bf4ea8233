//! Metric Lie algebras over F_p (p > 3) and their classes in H³(g, k^×).

use num_bigint::BigUint;
use serde::Serialize;

use crate::brpic::brpic_order_with;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::forms::{strict_tuples, SymForm, WedgeForm};
use crate::h3::H3Class;
use crate::matrix::{PrimeFieldMatrix, MAX_DIM};
use crate::stab::{brute_force_stabilizer, BruteForceOptions, StabilizerReport};

/// Structure constants `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebraFp {
    field: PrimeField,
    dim: usize,
    names: Vec<String>,
    c: Vec<u8>,
}

/// One bracket `[e_i, e_j] = Σ c e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bracket {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<(usize, i64)>,
}

impl LieAlgebraFp {
    /// Builds the algebra from brackets given on some pairs; `[e_j, e_i]` is
    /// filled in as `−[e_i, e_j]`. Pairs given twice must agree.
    pub fn new(field: PrimeField, dim: usize, names: Vec<String>, brackets: &[Bracket]) -> Result<Self> {
        if field.p() <= 3 {
            return Err(Error::WrongCharacteristic {
                expected: "p > 3",
                p: field.p(),
            });
        }
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::DimensionTooLarge { n: dim, max: MAX_DIM });
        }
        if names.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: names.len(),
            });
        }
        let mut c = vec![0u8; dim * dim * dim];
        let mut given = vec![false; dim * dim];
        let at = |i: usize, j: usize, k: usize| (i * dim + j) * dim + k;
        for b in brackets {
            for &idx in [b.i, b.j].iter().chain(b.terms.iter().map(|(k, _)| k)) {
                if idx >= dim {
                    return Err(Error::IndexOutOfRange { index: idx, dim });
                }
            }
            let mut v = vec![0u8; dim];
            for &(k, coeff) in &b.terms {
                v[k] = field.add(v[k], field.reduce(coeff));
            }
            if b.i == b.j {
                if let Some(k) = v.iter().position(|&x| x != 0) {
                    return Err(Error::NotAntisymmetric { i: b.i, j: b.j, k });
                }
                continue;
            }
            for (pair, sign) in [((b.i, b.j), false), ((b.j, b.i), true)] {
                let (i, j) = pair;
                for k in 0..dim {
                    let val = if sign { field.neg(v[k]) } else { v[k] };
                    if given[i * dim + j] && c[at(i, j, k)] != val {
                        return Err(Error::NotAntisymmetric { i, j, k });
                    }
                    c[at(i, j, k)] = val;
                }
            }
            given[b.i * dim + b.j] = true;
            given[b.j * dim + b.i] = true;
        }
        Self::from_structure(field, dim, names, c)
    }

    /// Builds the algebra from a full structure-constant array indexed
    /// `(i·dim + j)·dim + k`, checking antisymmetry and the Jacobi identity.
    pub fn from_structure(field: PrimeField, dim: usize, names: Vec<String>, c: Vec<u8>) -> Result<Self> {
        if field.p() <= 3 {
            return Err(Error::WrongCharacteristic {
                expected: "p > 3",
                p: field.p(),
            });
        }
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::DimensionTooLarge { n: dim, max: MAX_DIM });
        }
        if c.len() != dim * dim * dim || names.len() != dim {
            return Err(Error::WrongShape("structure constants must have dim³ entries".into()));
        }
        let c: Vec<u8> = c.into_iter().map(|x| field.reduce(x as i64)).collect();
        let g = Self { field, dim, names, c };
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    if g.coeff(i, j, k) != field.neg(g.coeff(j, i, k)) {
                        return Err(Error::NotAntisymmetric { i, j, k });
                    }
                }
            }
        }
        for t in strict_tuples(dim, 3) {
            let [i, j, k] = t;
            let jac = [
                g.bracket_vec(&g.bracket(i, j), &g.unit(k)),
                g.bracket_vec(&g.bracket(j, k), &g.unit(i)),
                g.bracket_vec(&g.bracket(k, i), &g.unit(j)),
            ];
            if (0..dim).any(|m| jac.iter().fold(0, |a, v| field.add(a, v[m])) != 0) {
                return Err(Error::JacobiViolated { i, j, k });
            }
        }
        Ok(g)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Coefficient of e_k in [e_i, e_j].
    pub fn coeff(&self, i: usize, j: usize, k: usize) -> u8 {
        self.c[(i * self.dim + j) * self.dim + k]
    }

    fn unit(&self, i: usize) -> Vec<u8> {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    /// [e_i, e_j] as a coordinate vector.
    pub fn bracket(&self, i: usize, j: usize) -> Vec<u8> {
        (0..self.dim).map(|k| self.coeff(i, j, k)).collect()
    }

    /// Bracket of coordinate vectors.
    pub fn bracket_vec(&self, a: &[u8], b: &[u8]) -> Vec<u8> {
        let f = self.field;
        let mut out = vec![0u8; self.dim];
        for i in 0..self.dim {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.dim {
                if b[j] == 0 {
                    continue;
                }
                let s = f.mul(a[i], b[j]);
                for (k, o) in out.iter_mut().enumerate() {
                    *o = f.add(*o, f.mul(s, self.coeff(i, j, k)));
                }
            }
        }
        out
    }

    /// Matrix of x ↦ [e_i, x].
    pub fn ad_matrix(&self, i: usize) -> Result<PrimeFieldMatrix> {
        if i >= self.dim {
            return Err(Error::IndexOutOfRange { index: i, dim: self.dim });
        }
        Ok(PrimeFieldMatrix::from_fn(self.field, self.dim, |k, j| self.coeff(i, j, k) as i64))
    }

    /// Whether g = [g, g].
    pub fn is_perfect(&self) -> bool {
        let rows: Vec<Vec<i64>> = (0..self.dim)
            .flat_map(|i| (0..self.dim).map(move |j| (i, j)))
            .map(|(i, j)| self.bracket(i, j).into_iter().map(i64::from).collect())
            .collect();
        crate::matrix::RectMatrix::from_rows(self.field, &rows)
            .map(|m| m.rank() == self.dim)
            .unwrap_or(false)
    }

    /// Whether `m` is a Lie algebra automorphism.
    pub fn is_automorphism(&self, m: &PrimeFieldMatrix) -> bool {
        let col = |j: usize| -> Vec<u8> { (0..self.dim).map(|i| m.get(i, j)).collect() };
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let lhs = self.bracket_vec(&col(i), &col(j));
                let image: Vec<u8> = {
                    let b = self.bracket(i, j);
                    (0..self.dim)
                        .map(|r| (0..self.dim).fold(0, |a, k| self.field.add(a, self.field.mul(m.get(r, k), b[k]))))
                        .collect()
                };
                if lhs != image {
                    return false;
                }
            }
        }
        true
    }
}

/// A symmetric bilinear form, stored as its Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricForm {
    field: PrimeField,
    dim: usize,
    gram: Vec<u8>,
}

impl MetricForm {
    pub fn new(field: PrimeField, dim: usize, gram: &[Vec<i64>]) -> Result<Self> {
        if gram.len() != dim || gram.iter().any(|r| r.len() != dim) {
            return Err(Error::WrongShape(format!("form must be a {dim}x{dim} matrix")));
        }
        let gram: Vec<u8> = gram.iter().flatten().map(|&x| field.reduce(x)).collect();
        let form = Self { field, dim, gram };
        for i in 0..dim {
            for j in i + 1..dim {
                if form.get(i, j) != form.get(j, i) {
                    return Err(Error::FormNotSymmetric { i, j });
                }
            }
        }
        Ok(form)
    }

    pub fn zero(field: PrimeField, dim: usize) -> Self {
        Self {
            field,
            dim,
            gram: vec![0; dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.gram[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        self.gram.chunks(self.dim).map(<[u8]>::to_vec).collect()
    }

    pub fn eval(&self, a: &[u8], b: &[u8]) -> u8 {
        let f = self.field;
        let mut acc = 0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                acc = f.add(acc, f.mul(f.mul(a[i], self.get(i, j)), b[j]));
            }
        }
        acc
    }

    pub fn is_nondegenerate(&self) -> bool {
        let rows: Vec<Vec<i64>> = self.rows().into_iter().map(|r| r.into_iter().map(i64::from).collect()).collect();
        crate::matrix::RectMatrix::from_rows(self.field, &rows)
            .map(|m| m.rank() == self.dim)
            .unwrap_or(false)
    }

    /// Checks `([a,b],c) = (a,[b,c])` on all basis triples.
    pub fn check_invariant(&self, g: &LieAlgebraFp) -> Result<()> {
        if g.dim() != self.dim || g.field() != self.field {
            return Err(Error::DimensionMismatch {
                expected: g.dim(),
                found: self.dim,
            });
        }
        let unit = |i: usize| g.unit(i);
        for a in 0..self.dim {
            for b in 0..self.dim {
                for c in 0..self.dim {
                    if self.eval(&g.bracket(a, b), &unit(c)) != self.eval(&unit(a), &g.bracket(b, c)) {
                        return Err(Error::FormNotInvariant { a, b, c });
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether `m` preserves the form: `mᵀ B m = B`.
    pub fn is_preserved_by(&self, m: &PrimeFieldMatrix) -> bool {
        let col = |j: usize| -> Vec<u8> { (0..self.dim).map(|i| m.get(i, j)).collect() };
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.eval(&col(i), &col(j)) == self.get(i, j)))
    }

    /// `Σ_{i≤j} B_ij z_i z_j`, listing each Gram entry once.
    pub fn gram_display(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for i in 0..self.dim {
            for j in i..self.dim {
                let c = self.get(i, j);
                if c == 0 {
                    continue;
                }
                let coeff = if c == 1 { String::new() } else { format!("{c}*") };
                let mono = if i == j {
                    format!("z_{}^2", names[i])
                } else {
                    format!("z_{}*z_{}", names[i], names[j])
                };
                parts.push(format!("{coeff}{mono}"));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// `(a, b) = Tr(ad a · ad b)`.
pub fn killing_form(g: &LieAlgebraFp) -> Result<MetricForm> {
    let ads: Vec<PrimeFieldMatrix> = (0..g.dim()).map(|i| g.ad_matrix(i)).collect::<Result<_>>()?;
    let f = g.field();
    let mut gram = vec![vec![0i64; g.dim()]; g.dim()];
    for i in 0..g.dim() {
        for j in 0..g.dim() {
            let prod = ads[i].mat_mul(&ads[j])?;
            gram[i][j] = (0..g.dim()).fold(0, |a, k| f.add(a, prod.get(k, k))) as i64;
        }
    }
    let b = MetricForm::new(f, g.dim(), &gram)?;
    b.check_invariant(g)?;
    Ok(b)
}

/// ω = (ω_alt, ω_sym) with ω_alt(a,b,c) = ([a,b],c) read off on increasing
/// triples and ω_sym the quadratic form v ↦ (v,v).
pub fn omega_from_metric(g: &LieAlgebraFp, b: &MetricForm) -> Result<H3Class> {
    b.check_invariant(g)?;
    let f = g.field();
    let n = g.dim();
    let triples = strict_tuples(n, 3);
    let alt_coeffs = triples
        .iter()
        .map(|&[i, j, k]| b.eval(&g.bracket(i, j), &g.unit(k)))
        .collect();
    let alt = WedgeForm::from_coeffs(f, n, 3, alt_coeffs)?;
    let mut terms: Vec<([usize; 2], i64)> = Vec::new();
    for i in 0..n {
        terms.push(([i, i], b.get(i, i) as i64));
        for j in i + 1..n {
            terms.push(([i, j], 2 * b.get(i, j) as i64));
        }
    }
    let refs: Vec<(&[usize], i64)> = terms.iter().map(|(t, c)| (&t[..], *c)).collect();
    H3Class::from_parts(alt, SymForm::from_terms(f, n, 2, &refs)?)
}

/// Display of ω in the algebra's basis names: the wedge part and the Gram
/// listing of the form.
pub fn omega_display(g: &LieAlgebraFp, b: &MetricForm, omega: &H3Class) -> String {
    let xs: Vec<String> = g.names().iter().map(|s| format!("x_{s}")).collect();
    format!("({}, {})", omega.alt().display_with(&xs), b.gram_display(g.names()))
}

#[derive(Debug, Clone, Serialize)]
pub struct AutmReport {
    pub stab: StabilizerReport,
    #[serde(serialize_with = "big_as_string")]
    pub brpic_order: BigUint,
}

fn big_as_string<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Stab(ω) by brute force together with |BrPic|; requires ω_alt nondegenerate.
pub fn autm_stab_report(g: &LieAlgebraFp, b: &MetricForm, opts: BruteForceOptions) -> Result<AutmReport> {
    let omega = omega_from_metric(g, b)?;
    let rad = omega.alt().radical()?.len();
    if rad != 0 {
        return Err(Error::NondegenerateRequired { rad_dim: rad });
    }
    let mut stab = brute_force_stabilizer(&omega, opts)?;
    stab.identify(Some(("SO", g.dim())));
    let brpic_order = brpic_order_with(&omega, &stab)?;
    Ok(AutmReport { stab, brpic_order })
}

/// sl₂ with basis (e, f, h): [e,f] = h, [h,e] = 2e, [h,f] = −2f.
pub fn sl2(field: PrimeField) -> Result<LieAlgebraFp> {
    LieAlgebraFp::new(
        field,
        3,
        vec!["e".into(), "f".into(), "h".into()],
        &[
            Bracket { i: 0, j: 1, terms: vec![(2, 1)] },
            Bracket { i: 2, j: 0, terms: vec![(0, 2)] },
            Bracket { i: 2, j: 1, terms: vec![(1, -2)] },
        ],
    )
}

/// The abelian Lie algebra of dimension `dim`.
pub fn abelian(field: PrimeField, dim: usize) -> Result<LieAlgebraFp> {
    let names = (0..dim).map(|i| format!("a{i}")).collect();
    LieAlgebraFp::new(field, dim, names, &[])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn ad_matrices_of_sl2() {
        let g = sl2(f(5)).unwrap();
        let e = PrimeFieldMatrix::from_rows(f(5), &[&[0, 0, -2], &[0, 0, 0], &[0, 1, 0]]).unwrap();
        let ff = PrimeFieldMatrix::from_rows(f(5), &[&[0, 0, 0], &[0, 0, 2], &[-1, 0, 0]]).unwrap();
        let h = PrimeFieldMatrix::from_rows(f(5), &[&[2, 0, 0], &[0, -2, 0], &[0, 0, 0]]).unwrap();
        assert_eq!(g.ad_matrix(0).unwrap(), e);
        assert_eq!(g.ad_matrix(1).unwrap(), ff);
        assert_eq!(g.ad_matrix(2).unwrap(), h);
        assert!(matches!(g.ad_matrix(3), Err(Error::IndexOutOfRange { .. })));
        let a = abelian(f(5), 2).unwrap();
        assert_eq!(a.ad_matrix(0).unwrap(), PrimeFieldMatrix::zero(f(5), 2));
    }

    #[test]
    fn killing_of_sl2() {
        let g = sl2(f(5)).unwrap();
        let b = killing_form(&g).unwrap();
        assert_eq!(b.get(0, 1), 4);
        assert_eq!(b.get(2, 2), 3);
        assert_eq!(b.get(0, 0), 0);
        assert_eq!(b.get(0, 2), 0);
        assert!(b.is_nondegenerate());
        let a = abelian(f(5), 3).unwrap();
        assert_eq!(killing_form(&a).unwrap(), MetricForm::zero(f(5), 3));
    }

    #[test]
    fn omega_of_sl2() {
        let g = sl2(f(5)).unwrap();
        let b = killing_form(&g).unwrap();
        let w = omega_from_metric(&g, &b).unwrap();
        assert_eq!(w.alt().coeff(&[0, 1, 2]), 3);
        assert_eq!(omega_display(&g, &b, &w), "(3*x_e^x_f^x_h, 4*z_e*z_f + 3*z_h^2)");
        // the quadratic form is v ↦ (v, v)
        assert_eq!(w.sym().unwrap().coeff(&[0, 1]), 3);
        assert_eq!(w.sym().unwrap().coeff(&[2, 2]), 3);
        let a = abelian(f(5), 3).unwrap();
        assert!(omega_from_metric(&a, &MetricForm::zero(f(5), 3)).unwrap().is_zero());
    }

    #[test]
    fn malformed_structure_rejected() {
        let names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        // [a,b] = a, [b,c] = b, [a,c] = c violates Jacobi
        let bad = LieAlgebraFp::new(
            f(5),
            3,
            names.clone(),
            &[
                Bracket { i: 0, j: 1, terms: vec![(0, 1)] },
                Bracket { i: 1, j: 2, terms: vec![(1, 1)] },
                Bracket { i: 0, j: 2, terms: vec![(2, 1)] },
            ],
        );
        assert!(matches!(bad, Err(Error::JacobiViolated { .. })));
        let inconsistent = LieAlgebraFp::new(
            f(5),
            3,
            names.clone(),
            &[
                Bracket { i: 0, j: 1, terms: vec![(2, 1)] },
                Bracket { i: 1, j: 0, terms: vec![(2, 1)] },
            ],
        );
        assert!(matches!(inconsistent, Err(Error::NotAntisymmetric { .. })));
        assert!(matches!(sl2(f(3)), Err(Error::WrongCharacteristic { .. })));
    }

    #[test]
    fn non_invariant_form_rejected() {
        let g = sl2(f(5)).unwrap();
        let b = MetricForm::new(f(5), 3, &[vec![1, 0, 0], vec![0, 0, 0], vec![0, 0, 0]]).unwrap();
        assert!(matches!(omega_from_metric(&g, &b), Err(Error::FormNotInvariant { .. })));
        assert!(matches!(
            MetricForm::new(f(5), 2, &[vec![0, 1], vec![0, 0]]),
            Err(Error::FormNotSymmetric { .. })
        ));
    }

    #[test]
    fn abelian_is_degenerate() {
        let a = abelian(f(5), 3).unwrap();
        let r = autm_stab_report(&a, &MetricForm::zero(f(5), 3), BruteForceOptions::default());
        assert!(matches!(r, Err(Error::NondegenerateRequired { rad_dim: 3 })));
    }
}
