//! Classes attached to the extra-special groups of order p^(2n+1).
//!
//! Coordinates: x₀ is the central direction and x₁, …, x_{2n} span the
//! symplectic block, paired as (x₁, x₂), (x₃, x₄), ….

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::forms::{SymForm, WedgeForm};
use crate::h3::{cup_x0, H2FpClass, H3Class};
use crate::matrix::PrimeFieldMatrix;
use crate::stab::named_order;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    /// Exponent p (dihedral type at p = 2).
    D,
    /// Exponent p² (quaternion type at p = 2).
    Q,
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "D" | "d" => Ok(Kind::D),
            "Q" | "q" => Ok(Kind::Q),
            _ => Err(Error::WrongShape(format!("unknown kind '{s}', expected D or Q"))),
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::D => "D",
            Kind::Q => "Q",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ExtraSpecialSpec {
    pub field: PrimeField,
    pub n: usize,
    pub kind: Kind,
}

impl ExtraSpecialSpec {
    pub fn new(p: u32, n: usize, kind: Kind) -> Result<Self> {
        let field = PrimeField::new(p)?;
        if n == 0 {
            return Err(Error::WrongShape("n must be at least 1".into()));
        }
        Ok(Self { field, n, kind })
    }

    /// Dimension 2n + 1 of the ambient space V.
    pub fn ambient_dim(&self) -> usize {
        2 * self.n + 1
    }
}

impl fmt::Display for ExtraSpecialSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(p={}, n={})", self.kind, self.field.p(), self.n)
    }
}

/// `Σ x_{2i−1} ∧ x_{2i}` on the ambient space.
fn symplectic_wedge(spec: &ExtraSpecialSpec) -> Result<WedgeForm> {
    let terms: Vec<[usize; 2]> = (1..=spec.n).map(|i| [2 * i - 1, 2 * i]).collect();
    let refs: Vec<(&[usize], i64)> = terms.iter().map(|t| (&t[..], 1)).collect();
    WedgeForm::from_terms(spec.field, spec.ambient_dim(), 2, &refs)
}

/// The extension class κ in H²(V_{2n}, F_p), on ambient coordinates with
/// x₀ unused.
pub fn kappa_class(spec: &ExtraSpecialSpec) -> Result<H2FpClass> {
    let dim = spec.ambient_dim();
    if spec.field.is_two() {
        let mut terms: Vec<[usize; 2]> = (1..=spec.n).map(|i| [2 * i - 1, 2 * i]).collect();
        if spec.kind == Kind::Q {
            terms.push([1, 1]);
            terms.push([2, 2]);
        }
        let refs: Vec<(&[usize], i64)> = terms.iter().map(|t| (&t[..], 1)).collect();
        Ok(H2FpClass::Two {
            poly: SymForm::from_terms(spec.field, dim, 2, &refs)?,
        })
    } else {
        let mut carry = vec![0; dim];
        if spec.kind == Kind::Q {
            carry[1] = 1;
        }
        Ok(H2FpClass::Odd {
            wedge: symplectic_wedge(spec)?,
            carry,
        })
    }
}

/// ω = image of x₀ ∪ κ in H³(V_{2n+1}, k^×).
pub fn omega_class(spec: &ExtraSpecialSpec) -> Result<H3Class> {
    cup_x0(&kappa_class(spec)?)
}

fn big_as_string<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// The stabilizer identification that applies to a spec.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpectedResult {
    /// Zoo name and dimension, usable as an identification hint.
    pub name: String,
    pub dim: usize,
    pub group: String,
    #[serde(serialize_with = "big_as_string")]
    pub order: BigUint,
    pub statement: String,
}

/// Known identification of Stab(ω) for `spec`: SL₃ and AffO₂ for n = 1 and
/// odd p, AffSp_{2n} ⋊ F_p^× for ω_D with n > 1 and odd p, S₄ and S₃ for
/// n = 1 and p = 2, Sp_{2n}(F₂) for n > 1 and p = 2.
pub fn expected_result(spec: &ExtraSpecialSpec) -> Result<ExpectedResult> {
    let p = spec.field.p();
    let n = spec.n;
    let (name, dim, group, statement) = match (spec.field.is_two(), n, spec.kind) {
        (false, 1, Kind::D) => ("SL", 3, format!("SL3(F{p})"), "Stab(omega_D) = SL3(F_p)".to_string()),
        (false, 1, Kind::Q) => ("AffO+", 2, format!("AffO2(F{p})"), "Stab(omega_Q) = AffO2(F_p)".to_string()),
        (false, _, Kind::D) => (
            "AffSpFx",
            2 * n,
            format!("AffSp{}(F{p}):F{p}x", 2 * n),
            "Stab(omega_D) = AffSp_2n(F_p) x| F_p^x for n > 1".to_string(),
        ),
        (false, _, Kind::Q) => {
            return Err(Error::NotCovered(format!("Stab(omega_Q) for odd p and n = {n}")));
        }
        (true, 1, Kind::D) => ("S", 4, "S4".to_string(), "Stab(omega_D) = S4 for p = 2, n = 1".to_string()),
        (true, 1, Kind::Q) => ("S", 3, "S3".to_string(), "Stab(omega_Q) = S3 for p = 2, n = 1".to_string()),
        (true, _, kind) => (
            "Sp",
            2 * n,
            format!("Sp{}(F2)", 2 * n),
            format!("Stab(omega_{kind}) = Sp_2n(F_2) for n > 1"),
        ),
    };
    Ok(ExpectedResult {
        name: name.to_string(),
        dim,
        order: named_order(name, dim, p)?,
        group,
        statement,
    })
}

/// Symplectic transvection `x ↦ x + s(u, x) u` on the block, as a
/// (2n+1)-matrix fixing e₀.
fn transvection(spec: &ExtraSpecialSpec, u: &[i64]) -> PrimeFieldMatrix {
    let f = spec.field;
    let dim = spec.ambient_dim();
    // s(u, e_b) for the pairing (x_{2i−1}, x_{2i})
    let s_u = |b: usize| -> i64 {
        if b == 0 {
            0
        } else if b % 2 == 1 {
            -u[b + 1]
        } else {
            u[b - 1]
        }
    };
    PrimeFieldMatrix::from_fn(f, dim, |a, b| (a == b) as i64 + u[a] * s_u(b))
}

/// Generators for the families displayed for Stab(ω_D), odd p:
/// translations `[[1, 0], [v, I]]` for v = e₁, …, e_{2n}, the block
/// `[[1, 0], [0, M]]` for M running over symplectic transvections along
/// e_i and e_i + e_j (these generate Sp_{2n}(F_p)), and
/// `diag(λ, λ⁻¹, 1, λ⁻¹, 1, …)` for a primitive root λ.
pub fn stab_d_generators(spec: &ExtraSpecialSpec) -> Result<Vec<PrimeFieldMatrix>> {
    if spec.field.is_two() {
        return Err(Error::WrongCharacteristic {
            expected: "odd p",
            p: 2,
        });
    }
    let f = spec.field;
    let dim = spec.ambient_dim();
    let mut gens = Vec::new();
    for i in 1..dim {
        gens.push(PrimeFieldMatrix::from_fn(f, dim, |a, b| {
            (a == b) as i64 + (a == i && b == 0) as i64
        }));
    }
    for i in 1..dim {
        let mut u = vec![0i64; dim];
        u[i] = 1;
        gens.push(transvection(spec, &u));
        for j in i + 1..dim {
            let mut u = vec![0i64; dim];
            u[i] = 1;
            u[j] = 1;
            gens.push(transvection(spec, &u));
        }
    }
    let lambda = f.primitive_root() as i64;
    let lambda_inv = f.inv(lambda as u8).expect("nonzero") as i64;
    let diag: Vec<i64> = (0..dim)
        .map(|i| match i {
            0 => lambda,
            i if i % 2 == 1 => lambda_inv,
            _ => 1,
        })
        .collect();
    gens.push(PrimeFieldMatrix::diagonal(f, &diag));
    Ok(gens)
}

/// The map `(v₀, v₁, v₂, v₃, v₄, …) ↦ (v₀, v₁, v₂, v₀ + v₃ + v₄, v₄, …)`,
/// which stabilizes both ω_D and ω_Q for p = 2, n > 1 while lying in neither
/// orthogonal subgroup.
pub fn sp_witness(spec: &ExtraSpecialSpec) -> Result<PrimeFieldMatrix> {
    if !spec.field.is_two() || spec.n < 2 {
        return Err(Error::WrongShape("defined for p = 2 and n > 1".into()));
    }
    let dim = spec.ambient_dim();
    Ok(PrimeFieldMatrix::from_fn(spec.field, dim, |a, b| {
        let base = (a == b) as i64;
        if a == 3 && (b == 0 || b == 4) {
            base + 1
        } else {
            base
        }
    }))
}
