//! Orders read off from the exact sequences for the center and the
//! Brauer-Picard group of C(V_n, ω).

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::h3::H3Class;
use crate::stab::{brute_force_stabilizer, BruteForceOptions, StabilizerReport};

fn big_as_string<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn opt_big_as_string<S: Serializer>(v: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

fn class_as_string<S: Serializer>(v: &H3Class, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Debug, Clone, Serialize)]
pub struct CenterProfile {
    pub p: u32,
    pub n: usize,
    #[serde(serialize_with = "class_as_string")]
    pub omega: H3Class,
    pub rad_dim: usize,
    /// |Inv(Z(C(V_n, ω)))| = p^(n + rad_dim).
    #[serde(serialize_with = "big_as_string")]
    pub inv_center_order: BigUint,
    pub is_center_pointed: bool,
    pub pt_is_lagrangian: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BrPicReport {
    #[serde(serialize_with = "class_as_string")]
    pub omega: H3Class,
    pub stab: StabilizerReport,
    /// dim ⋀²(V*)/ι(V) = C(n,2) − n + rad_dim.
    pub kernel_exponent: usize,
    /// Only when ω_alt is nondegenerate.
    #[serde(serialize_with = "opt_big_as_string")]
    pub brpic_order: Option<BigUint>,
    #[serde(serialize_with = "big_as_string")]
    pub induction_image_order: BigUint,
}

/// Dimension of Rad(ω_alt).
pub fn rad_dim(omega: &H3Class) -> Result<usize> {
    Ok(omega.alt().radical()?.len())
}

pub fn center_profile(omega: &H3Class) -> Result<CenterProfile> {
    let p = omega.field().p();
    let n = omega.dim();
    let rad = rad_dim(omega)?;
    Ok(CenterProfile {
        p,
        n,
        omega: omega.clone(),
        rad_dim: rad,
        inv_center_order: BigUint::from(p).pow((n + rad) as u32),
        is_center_pointed: omega.alt().is_zero(),
        pt_is_lagrangian: rad == 0,
    })
}

fn kernel_exponent(n: usize, rad: usize) -> usize {
    // ι has rank n − rad, and rad ≥ n − C(n,2) always holds.
    n * (n - 1) / 2 + rad - n
}

fn stab_order(stab: &StabilizerReport, omega: &H3Class) -> Result<BigUint> {
    if stab.p != omega.field().p() || stab.n != omega.dim() {
        return Err(Error::DimensionMismatch {
            expected: omega.dim(),
            found: stab.n,
        });
    }
    stab.order
        .clone()
        .ok_or_else(|| Error::WrongShape("stabilizer report carries no order".into()))
}

/// p^(C(n,2) − n + rad_dim) · |Stab(ω)| given a computed stabilizer.
pub fn induction_image_order_with(omega: &H3Class, stab: &StabilizerReport) -> Result<BigUint> {
    let e = kernel_exponent(omega.dim(), rad_dim(omega)?);
    Ok(BigUint::from(omega.field().p()).pow(e as u32) * stab_order(stab, omega)?)
}

/// Order of the image of induction, computing Stab(ω) by brute force.
pub fn induction_image_order(omega: &H3Class, opts: BruteForceOptions) -> Result<BigUint> {
    induction_image_order_with(omega, &brute_force_stabilizer(omega, opts)?)
}

/// |BrPic(C(V_n, ω))| = p^(C(n,2) − n) · |Stab(ω)| given a computed
/// stabilizer. Refuses when ω_alt is degenerate.
pub fn brpic_order_with(omega: &H3Class, stab: &StabilizerReport) -> Result<BigUint> {
    let rad = rad_dim(omega)?;
    if rad != 0 {
        return Err(Error::NondegenerateRequired { rad_dim: rad });
    }
    induction_image_order_with(omega, stab)
}

pub fn brpic_order(omega: &H3Class, opts: BruteForceOptions) -> Result<BigUint> {
    let rad = rad_dim(omega)?;
    if rad != 0 {
        return Err(Error::NondegenerateRequired { rad_dim: rad });
    }
    brpic_order_with(omega, &brute_force_stabilizer(omega, opts)?)
}

/// Full report. `brpic_order` is `None` when ω_alt is degenerate.
pub fn brpic_report(omega: &H3Class, stab: StabilizerReport) -> Result<BrPicReport> {
    let rad = rad_dim(omega)?;
    let induction = induction_image_order_with(omega, &stab)?;
    Ok(BrPicReport {
        omega: omega.clone(),
        kernel_exponent: kernel_exponent(omega.dim(), rad),
        brpic_order: (rad == 0).then(|| induction.clone()),
        induction_image_order: induction,
        stab,
    })
}
