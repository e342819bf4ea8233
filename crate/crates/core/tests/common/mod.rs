//! Random objects and property checks shared by the property suite and the
//! acceptance runner.

#![allow(dead_code)]

use brpic_core::cochain::{check_3cocycle, VectorSpace};
use brpic_core::field::{FpVector, PrimeField};
use brpic_core::forms::{strict_tuples, sym3_reduce, weak_tuples, Sym3Coset, SymForm, WedgeForm};
use brpic_core::h3::{connecting_delta, explicit_representative, project_to_kx, H3Class, H3FpClass};
use brpic_core::matrix::PrimeFieldMatrix;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const PROPERTY_SEED: u64 = 0x0b5e_55ed;
pub const PROPERTY_CASES: u32 = 96;

pub fn config() -> Config {
    Config {
        cases: PROPERTY_CASES,
        rng_seed: RngSeed::Fixed(PROPERTY_SEED),
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn field(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_wedge(f: PrimeField, n: usize, k: usize, r: &mut impl Rng) -> WedgeForm {
    let len = strict_tuples(n, k).len();
    WedgeForm::from_coeffs(f, n, k, (0..len).map(|_| r.gen_range(0..f.p()) as u8).collect()).unwrap()
}

pub fn random_sym(f: PrimeField, n: usize, k: usize, r: &mut impl Rng) -> SymForm {
    let len = weak_tuples(n, k).len();
    SymForm::from_coeffs(f, n, k, (0..len).map(|_| r.gen_range(0..f.p()) as u8).collect()).unwrap()
}

pub fn random_class(f: PrimeField, n: usize, r: &mut impl Rng) -> H3Class {
    if f.is_two() {
        H3Class::from_cubic(&random_sym(f, n, 3, r)).unwrap()
    } else {
        H3Class::from_parts(random_wedge(f, n, 3, r), random_sym(f, n, 2, r)).unwrap()
    }
}

pub fn random_fp_class(f: PrimeField, n: usize, r: &mut impl Rng) -> H3FpClass {
    let mixed = (0..n * n).map(|_| r.gen_range(0..f.p()) as u8).collect();
    H3FpClass::new(random_wedge(f, n, 3, r), mixed).unwrap()
}

pub fn random_gl(f: PrimeField, n: usize, r: &mut impl Rng) -> PrimeFieldMatrix {
    loop {
        let m = PrimeFieldMatrix::from_fn(f, n, |_, _| r.gen_range(0..f.p()) as i64);
        if m.is_invertible() {
            return m;
        }
    }
}

pub fn random_vector(f: PrimeField, n: usize, r: &mut impl Rng) -> FpVector {
    let coords: Vec<i64> = (0..n).map(|_| r.gen_range(0..f.p()) as i64).collect();
    FpVector::new(f, &coords)
}

/// (p, n, seed) with p ∈ {2, 3, 5} and n ≤ 4.
pub fn params() -> impl Strategy<Value = (u32, usize, u64)> {
    (prop::sample::select(vec![2u32, 3, 5]), 1usize..=4, any::<u64>())
}

/// `I·ω = ω` and `g·(h·ω) = (gh)·ω`.
pub fn action_law(p: u32, n: usize, seed: u64) -> Result<(), TestCaseError> {
    let f = field(p);
    let r = &mut rng(seed);
    let w = random_class(f, n, r);
    let (g, h) = (random_gl(f, n, r), random_gl(f, n, r));
    prop_assert_eq!(w.gl_act(&PrimeFieldMatrix::identity(f, n)).unwrap(), w.clone());
    let lhs = w.gl_act(&h).unwrap().gl_act(&g).unwrap();
    let rhs = w.gl_act(&(g * h)).unwrap();
    prop_assert_eq!(lhs, rhs);
    // the action is linear
    let w2 = random_class(f, n, r);
    prop_assert_eq!(
        w.add(&w2).unwrap().gl_act(&g).unwrap(),
        w.gl_act(&g).unwrap().add(&w2.gl_act(&g).unwrap()).unwrap()
    );
    Ok(())
}

/// Projection to H³(V, k^×) is equivariant and kills the δ-image.
pub fn projection_equivariant(p: u32, n: usize, seed: u64) -> Result<(), TestCaseError> {
    let f = field(if p == 2 { 3 } else { p });
    let r = &mut rng(seed);
    let c = random_fp_class(f, n, r);
    let g = random_gl(f, n, r);
    prop_assert_eq!(
        project_to_kx(&c.gl_act(&g).unwrap()).unwrap(),
        project_to_kx(&c).unwrap().gl_act(&g).unwrap()
    );
    let mu = random_wedge(f, n, 2, r);
    let shifted = c.add(&connecting_delta(&mu).unwrap()).unwrap();
    prop_assert_eq!(project_to_kx(&shifted).unwrap(), project_to_kx(&c).unwrap());
    Ok(())
}

/// Explicit representatives satisfy the additive 3-cocycle identity.
pub fn cocycle_identity(p: u32, n: usize, seed: u64) -> Result<(), TestCaseError> {
    let f = field(p);
    let n = n.min(if p == 5 { 2 } else { 3 });
    let r = &mut rng(seed);
    let w = random_class(f, n, r);
    let c = explicit_representative(&w);
    let sp = VectorSpace::new(f, n).unwrap();
    let res = check_3cocycle(&sp, |u, v, x| c.eval(u, v, x));
    prop_assert!(res.is_ok(), "{} fails at {:?}", w, res);
    Ok(())
}

/// Radical vectors are exactly the kernel of v ↦ ι_v ω_alt, and g maps
/// Rad(ω_alt) onto Rad(g·ω_alt).
pub fn radical_subspace(p: u32, n: usize, seed: u64) -> Result<(), TestCaseError> {
    let f = field(p);
    let r = &mut rng(seed);
    let n = n.max(3);
    let w = random_class(f, n, r);
    let alt = w.alt();
    let rad = alt.radical().unwrap();
    for v in &rad {
        prop_assert!(alt.interior_derivation(v).unwrap().is_zero());
    }
    let contraction_rank = alt.contraction_matrix().unwrap().rank();
    prop_assert_eq!(rad.len(), n - contraction_rank);
    let g = random_gl(f, n, r);
    let moved = w.gl_act(&g).unwrap().alt();
    let moved_rad = moved.radical().unwrap();
    prop_assert_eq!(moved_rad.len(), rad.len());
    for v in &rad {
        prop_assert!(moved.interior_derivation(&g.apply(v).unwrap()).unwrap().is_zero());
    }
    prop_assert_eq!(alt.is_nondegenerate().unwrap(), rad.is_empty());
    Ok(())
}

/// Reduction in Sym³/relations ignores added relations, commutes with
/// substitution, and is determined by the evaluation set.
pub fn sym3_well_defined(n: usize, seed: u64) -> Result<(), TestCaseError> {
    let f = field(2);
    let r = &mut rng(seed);
    let cubic = random_sym(f, n, 3, r);
    let mut shifted = cubic.clone();
    for i in 0..n {
        for j in i + 1..n {
            if r.gen_bool(0.5) {
                shifted = shifted.add(&Sym3Coset::relation(f, n, i, j).unwrap()).unwrap();
            }
        }
    }
    let a = sym3_reduce(&cubic).unwrap();
    prop_assert_eq!(&sym3_reduce(&shifted).unwrap(), &a);
    let g = random_gl(f, n, r);
    prop_assert_eq!(sym3_reduce(&cubic.pullback(&g).unwrap()).unwrap(), a.pullback(&g).unwrap());
    let b = sym3_reduce(&random_sym(f, n, 3, r)).unwrap();
    prop_assert_eq!(a == b, a.evaluation_mask() == b.evaluation_mask());
    Ok(())
}
