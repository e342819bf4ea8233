//! A canonical model of H³(V_n, k^×).
//!
//! For odd p a class is a pair `(ω_alt, ω_sym) ∈ ⋀³(V*) ⊕ Sym²(V*)`; it is the
//! image of `H³(V_n, F_p) = ⋀³(x) ⊕ F_p⟨x_i ∪ y_j⟩` modulo the image of the
//! connecting map δ from H²(V_n, k^×) = ⋀²(V*). For p = 2 a class is a coset in
//! Sym³(V*) / span{x_i²x_j + x_i x_j²} and `ω_alt` is its squarefree part.

use std::fmt;

use crate::cochain::{Cocycle3, TwoCochain, VectorSpace};
use crate::error::{Error, Result};
use crate::field::{FpVector, PrimeField};
use crate::forms::{strict_tuples, sym3_reduce, weak_tuples, Sym3Coset, SymForm, WedgeForm};
use crate::matrix::PrimeFieldMatrix;

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// dim H³(V_n, k^×): `C(n,3) + C(n+1,2)` for odd p, `C(n+2,3) − C(n,2)` for p = 2.
pub fn h3_dim(field: PrimeField, n: usize) -> usize {
    if field.is_two() {
        binom(n + 2, 3) - binom(n, 2)
    } else {
        binom(n, 3) + binom(n + 1, 2)
    }
}

fn require_odd(field: PrimeField) -> Result<()> {
    if field.is_two() {
        Err(Error::WrongCharacteristic {
            expected: "odd p",
            p: 2,
        })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum H3Components {
    Odd { alt: WedgeForm, sym: SymForm },
    Two { coset: Sym3Coset },
}

/// A class in H³(V_n, k^×).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct H3Class {
    field: PrimeField,
    n: usize,
    comps: H3Components,
}

impl H3Class {
    pub fn zero(field: PrimeField, n: usize) -> Result<Self> {
        if field.is_two() {
            Self::from_coset(Sym3Coset::zero(field, n)?)
        } else {
            Self::from_parts(WedgeForm::zero(field, n, 3)?, SymForm::zero(field, n, 2)?)
        }
    }

    /// Odd-p class from its alternating and symmetric parts.
    pub fn from_parts(alt: WedgeForm, sym: SymForm) -> Result<Self> {
        let field = alt.field();
        require_odd(field)?;
        if alt.degree() != 3 || sym.degree() != 2 {
            return Err(Error::UnsupportedDegree(if alt.degree() != 3 { alt.degree() } else { sym.degree() }));
        }
        if sym.field() != field || sym.dim() != alt.dim() {
            return Err(Error::DimensionMismatch {
                expected: alt.dim(),
                found: sym.dim(),
            });
        }
        Ok(Self {
            field,
            n: alt.dim(),
            comps: H3Components::Odd { alt, sym },
        })
    }

    pub fn from_coset(coset: Sym3Coset) -> Result<Self> {
        Ok(Self {
            field: coset.field(),
            n: coset.dim(),
            comps: H3Components::Two { coset },
        })
    }

    /// p = 2 class of an arbitrary cubic.
    pub fn from_cubic(cubic: &SymForm) -> Result<Self> {
        Self::from_coset(sym3_reduce(cubic)?)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &H3Components {
        &self.comps
    }

    /// `ω_alt`; for p = 2 this is `π(ω)`.
    pub fn alt(&self) -> WedgeForm {
        match &self.comps {
            H3Components::Odd { alt, .. } => alt.clone(),
            H3Components::Two { coset } => coset.pi_alt(),
        }
    }

    /// `ω_sym` (odd p only).
    pub fn sym(&self) -> Option<&SymForm> {
        match &self.comps {
            H3Components::Odd { sym, .. } => Some(sym),
            H3Components::Two { .. } => None,
        }
    }

    pub fn coset(&self) -> Option<&Sym3Coset> {
        match &self.comps {
            H3Components::Two { coset } => Some(coset),
            H3Components::Odd { .. } => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.comps {
            H3Components::Odd { alt, sym } => alt.is_zero() && sym.is_zero(),
            H3Components::Two { coset } => coset.is_zero(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        match (&self.comps, &other.comps) {
            (H3Components::Odd { alt: a1, sym: s1 }, H3Components::Odd { alt: a2, sym: s2 }) => {
                Self::from_parts(a1.add(a2)?, s1.add(s2)?)
            }
            (H3Components::Two { coset: c1 }, H3Components::Two { coset: c2 }) => {
                Self::from_coset(c1.add(c2)?)
            }
            _ => Err(Error::FieldMismatch {
                left: self.field.p(),
                right: other.field.p(),
            }),
        }
    }

    pub fn scale(&self, c: u8) -> Self {
        let comps = match &self.comps {
            H3Components::Odd { alt, sym } => H3Components::Odd {
                alt: alt.scale(c),
                sym: sym.scale(c),
            },
            H3Components::Two { coset } => H3Components::Two {
                coset: if c % 2 == 0 {
                    Sym3Coset::zero(self.field, self.n).expect("p = 2")
                } else {
                    coset.clone()
                },
            },
        };
        Self { comps, ..*self }
    }

    /// `ω ∘ (g × g × g)`.
    pub fn pullback(&self, g: &PrimeFieldMatrix) -> Result<Self> {
        if g.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: g.dim(),
            });
        }
        match &self.comps {
            H3Components::Odd { alt, sym } => Self::from_parts(alt.pullback(g)?, sym.pullback(g)?),
            H3Components::Two { coset } => Self::from_coset(coset.pullback(g)?),
        }
    }

    /// Left action `g·ω = ω ∘ g⁻¹`.
    pub fn gl_act(&self, g: &PrimeFieldMatrix) -> Result<Self> {
        if g.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: g.dim(),
            });
        }
        self.pullback(&g.mat_inverse()?)
    }

    /// Basis of H³(V_n, k^×): wedge monomials then symmetric monomials (odd p),
    /// or canonical cubic monomials (p = 2).
    pub fn basis(field: PrimeField, n: usize) -> Result<Vec<Self>> {
        let mut out = Vec::new();
        if field.is_two() {
            for t in weak_tuples(n, 3) {
                let (a, b, c) = (t[0], t[1], t[2]);
                if a < b && b == c {
                    continue;
                }
                out.push(Self::from_cubic(&SymForm::from_terms(field, n, 3, &[(&t, 1)])?)?);
            }
        } else {
            let zs = SymForm::zero(field, n, 2)?;
            let za = WedgeForm::zero(field, n, 3)?;
            for t in strict_tuples(n, 3) {
                out.push(Self::from_parts(WedgeForm::basis_element(field, n, &t)?, zs.clone())?);
            }
            for t in weak_tuples(n, 2) {
                out.push(Self::from_parts(za.clone(), SymForm::from_terms(field, n, 2, &[(&t[..2], 1)])?)?);
            }
        }
        debug_assert_eq!(out.len(), h3_dim(field, n));
        Ok(out)
    }
}

impl fmt::Display for H3Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.comps {
            H3Components::Odd { alt, sym } => write!(f, "({alt}; {sym})"),
            H3Components::Two { coset } => write!(f, "{coset}"),
        }
    }
}

/// `gl_act_h3`: the left action on classes.
pub fn gl_act_h3(g: &PrimeFieldMatrix, omega: &H3Class) -> Result<H3Class> {
    omega.gl_act(g)
}

/// A class in H³(V_n, F_p) for odd p: `wedge3 + Σ a_ij x_i ∪ y_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H3FpClass {
    field: PrimeField,
    n: usize,
    wedge3: WedgeForm,
    mixed: Vec<u8>,
}

impl H3FpClass {
    pub fn new(wedge3: WedgeForm, mixed: Vec<u8>) -> Result<Self> {
        let field = wedge3.field();
        require_odd(field)?;
        let n = wedge3.dim();
        if mixed.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: mixed.len(),
            });
        }
        let mixed = mixed.into_iter().map(|a| field.reduce(a as i64)).collect();
        Ok(Self {
            field,
            n,
            wedge3,
            mixed,
        })
    }

    pub fn zero(field: PrimeField, n: usize) -> Result<Self> {
        Self::new(WedgeForm::zero(field, n, 3)?, vec![0; n * n])
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn wedge3(&self) -> &WedgeForm {
        &self.wedge3
    }

    /// Coefficient `a_ij` of `x_i ∪ y_j`.
    pub fn mixed(&self, i: usize, j: usize) -> u8 {
        self.mixed[i * self.n + j]
    }

    pub fn set_mixed(&mut self, i: usize, j: usize, a: u8) {
        self.mixed[i * self.n + j] = a % self.field.p() as u8;
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let f = self.field;
        let mixed = self.mixed.iter().zip(&other.mixed).map(|(&a, &b)| f.add(a, b)).collect();
        Self::new(self.wedge3.add(&other.wedge3)?, mixed)
    }

    /// Pullback along g. Both x_i and the Bockstein images y_i transform by
    /// g, so the mixed matrix goes to `gᵀ A g`.
    pub fn pullback(&self, g: &PrimeFieldMatrix) -> Result<Self> {
        if g.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: g.dim(),
            });
        }
        let f = self.field;
        let n = self.n;
        let mut mixed = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                let mut acc = 0u8;
                for i in 0..n {
                    for j in 0..n {
                        let t = f.mul(f.mul(g.get(i, a), self.mixed(i, j)), g.get(j, b));
                        acc = f.add(acc, t);
                    }
                }
                mixed[a * n + b] = acc;
            }
        }
        Self::new(self.wedge3.pullback(g)?, mixed)
    }

    pub fn gl_act(&self, g: &PrimeFieldMatrix) -> Result<Self> {
        if g.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: g.dim(),
            });
        }
        self.pullback(&g.mat_inverse()?)
    }

    /// Coordinates: wedge coefficients followed by the mixed matrix, row-major.
    pub fn coordinates(&self) -> Vec<u8> {
        let mut out = self.wedge3.coeffs().to_vec();
        out.extend_from_slice(&self.mixed);
        out
    }

    /// The explicit cocycle `Σ c u_i v_j w_k + Σ a_ij u_i y_j(v, w)`.
    pub fn representative(&self) -> Cocycle3 {
        let cup = self
            .wedge3
            .terms()
            .into_iter()
            .map(|(t, c)| ([t[0], t[1], t[2]], c))
            .collect();
        let carry = (0..self.n)
            .flat_map(|i| (0..self.n).map(move |j| (i, j)))
            .map(|(i, j)| ([i, j], self.mixed(i, j)))
            .collect();
        Cocycle3::new(self.field, self.n, cup, carry).expect("indices in range")
    }
}

/// δ: ⋀²(V*) = H²(V_n, k^×) → H³(V_n, F_p), `δ(x_k ∧ x_l) = x_k∪y_l − x_l∪y_k`.
pub fn connecting_delta(mu: &WedgeForm) -> Result<H3FpClass> {
    let f = mu.field();
    require_odd(f)?;
    if mu.degree() != 2 {
        return Err(Error::UnsupportedDegree(mu.degree()));
    }
    let mut out = H3FpClass::zero(f, mu.dim())?;
    for (t, c) in mu.terms() {
        let (k, l) = (t[0], t[1]);
        out.set_mixed(k, l, f.add(out.mixed(k, l), c));
        out.set_mixed(l, k, f.sub(out.mixed(l, k), c));
    }
    Ok(out)
}

/// H³(V_n, F_p) → H³(V_n, k^×): the wedge part passes through; `{a_ij}` maps
/// to the quadratic form with `z_i z_j` coefficient `a_ij + a_ji` (i < j) and
/// `z_i²` coefficient `a_ii`.
pub fn project_to_kx(c: &H3FpClass) -> Result<H3Class> {
    let f = c.field;
    require_odd(f)?;
    let n = c.n;
    let mut terms = Vec::new();
    for i in 0..n {
        terms.push(([i, i], c.mixed(i, i) as i64));
        for j in i + 1..n {
            terms.push(([i, j], f.add(c.mixed(i, j), c.mixed(j, i)) as i64));
        }
    }
    let refs: Vec<(&[usize], i64)> = terms.iter().map(|(t, a)| (&t[..], *a)).collect();
    H3Class::from_parts(c.wedge3.clone(), SymForm::from_terms(f, n, 2, &refs)?)
}

/// An explicit cocycle representing `omega`.
///
/// Odd p: `ω_alt` by `Σ c_ijk u_i v_j w_k` and the `z_i z_j` (i ≤ j) coefficient
/// of `ω_sym` by `u_i y_j(v, w)`. p = 2: each monomial `x_a x_b x_c` of the
/// canonical representative by the cup product `u_a v_b w_c`.
pub fn explicit_representative(omega: &H3Class) -> Cocycle3 {
    let f = omega.field;
    let n = omega.n;
    match &omega.comps {
        H3Components::Odd { alt, sym } => {
            let cup = alt.terms().into_iter().map(|(t, c)| ([t[0], t[1], t[2]], c)).collect();
            let carry = sym.terms().into_iter().map(|(t, c)| ([t[0], t[1]], c)).collect();
            Cocycle3::new(f, n, cup, carry).expect("indices in range")
        }
        H3Components::Two { coset } => {
            let cup = coset
                .representative()
                .terms()
                .into_iter()
                .map(|(t, c)| ([t[0], t[1], t[2]], c))
                .collect();
            Cocycle3::new(f, n, cup, Vec::new()).expect("indices in range")
        }
    }
}

/// `β_a(x, y) = c(a,x,y) + c(x,y,a) − c(x,a,y)` in exponent form.
pub fn beta_map(a: &FpVector, c: &Cocycle3) -> Result<TwoCochain> {
    if a.dim() != c.dim() {
        return Err(Error::DimensionMismatch {
            expected: c.dim(),
            found: a.dim(),
        });
    }
    let f = c.field();
    let space = VectorSpace::new(f, c.dim())?;
    let av = a.coords();
    Ok(TwoCochain::from_fn(&space, |x, y| {
        f.sub(f.add(c.eval(av, x, y), c.eval(x, y, av)), c.eval(x, av, y))
    }))
}

/// Class of a 2-cocycle in H²(V, k^×) = ⋀²(V*), read off from the alternation
/// `(u, v) ↦ b(u,v) − b(v,u)`.
pub fn two_cocycle_class(b: &TwoCochain) -> Result<WedgeForm> {
    let space = b.space();
    if let Err([x, y, z]) = b.check_cocycle() {
        return Err(Error::NotACocycle(format!(
            "x={}, y={}, z={}",
            space.vector(x),
            space.vector(y),
            space.vector(z)
        )));
    }
    let f = space.field();
    let n = space.dim();
    let e = |i: usize| FpVector::basis(f, n, i).index() as usize;
    let mut form = WedgeForm::zero(f, n, 2)?;
    let mut terms = Vec::new();
    for t in strict_tuples(n, 2) {
        let (i, j) = (t[0], t[1]);
        let c = f.sub(b.get(e(i), e(j)), b.get(e(j), e(i)));
        if c != 0 {
            terms.push((t, c));
        }
    }
    for (t, c) in terms {
        form = form.add(&WedgeForm::from_terms(f, n, 2, &[(&t[..2], c as i64)])?)?;
    }
    Ok(form)
}

/// A class in H²(V, F_p) on ambient coordinates `0..n`.
///
/// Odd p: `Σ c_ij x_i x_j + Σ d_i y_i` (the products are cup products, hence
/// alternating). p = 2: a quadratic polynomial in the x_i, with `y_i = x_i²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum H2FpClass {
    Odd { wedge: WedgeForm, carry: Vec<u8> },
    Two { poly: SymForm },
}

impl H2FpClass {
    pub fn field(&self) -> PrimeField {
        match self {
            H2FpClass::Odd { wedge, .. } => wedge.field(),
            H2FpClass::Two { poly } => poly.field(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            H2FpClass::Odd { wedge, .. } => wedge.dim(),
            H2FpClass::Two { poly } => poly.dim(),
        }
    }
}

impl fmt::Display for H2FpClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            H2FpClass::Odd { wedge, carry } => {
                let mut parts: Vec<String> = wedge
                    .terms()
                    .into_iter()
                    .map(|(t, c)| {
                        let coeff = if c == 1 { String::new() } else { format!("{c}*") };
                        format!("{coeff}x{}x{}", t[0], t[1])
                    })
                    .collect();
                for (i, &d) in carry.iter().enumerate() {
                    if d != 0 {
                        let coeff = if d == 1 { String::new() } else { format!("{d}*") };
                        parts.push(format!("{coeff}y{i}"));
                    }
                }
                if parts.is_empty() {
                    write!(f, "0")
                } else {
                    write!(f, "{}", parts.join(" + "))
                }
            }
            H2FpClass::Two { poly } => {
                let names: Vec<String> = (0..poly.dim()).map(|i| format!("x{i}")).collect();
                write!(f, "{}", poly.display_with(&names))
            }
        }
    }
}

/// Image of `x₀ ∪ κ` in H³(V, k^×). Coordinate 0 is the cup direction and
/// must not occur in κ.
pub fn cup_x0(kappa: &H2FpClass) -> Result<H3Class> {
    let f = kappa.field();
    let n = kappa.dim();
    if n == 0 {
        return Err(Error::WrongShape("ambient dimension is 0".into()));
    }
    match kappa {
        H2FpClass::Odd { wedge, carry } => {
            require_odd(f)?;
            if wedge.degree() != 2 || carry.len() != n {
                return Err(Error::WrongShape("expected a 2-form and n carry coefficients".into()));
            }
            if wedge.terms().iter().any(|(t, _)| t[0] == 0) || carry[0] != 0 {
                return Err(Error::WrongShape("coordinate 0 is reserved for x0".into()));
            }
            let x0 = WedgeForm::basis_element(f, n, &[0])?;
            let alt = x0.wedge(wedge)?;
            let mut fp = H3FpClass::new(alt, vec![0; n * n])?;
            for (i, &d) in carry.iter().enumerate() {
                fp.set_mixed(0, i, d);
            }
            project_to_kx(&fp)
        }
        H2FpClass::Two { poly } => {
            if !f.is_two() {
                return Err(Error::WrongCharacteristic {
                    expected: "p = 2",
                    p: f.p(),
                });
            }
            if poly.degree() != 2 {
                return Err(Error::WrongShape("expected a quadratic polynomial".into()));
            }
            if poly.terms().iter().any(|(t, _)| t[0] == 0) {
                return Err(Error::WrongShape("coordinate 0 is reserved for x0".into()));
            }
            let terms: Vec<([usize; 3], i64)> = poly
                .terms()
                .into_iter()
                .map(|(t, c)| ([0, t[0], t[1]], c as i64))
                .collect();
            let refs: Vec<(&[usize], i64)> = terms.iter().map(|(t, c)| (&t[..], *c)).collect();
            H3Class::from_cubic(&SymForm::from_terms(f, n, 3, &refs)?)
        }
    }
}
