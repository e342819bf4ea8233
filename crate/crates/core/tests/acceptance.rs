//! Acceptance runner: one PASS/FAIL line per criterion. Exits nonzero if any
//! criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use brpic_core::brpic::{brpic_order_with, center_profile, induction_image_order_with};
use brpic_core::cochain::{check_3cocycle, is_3_coboundary, VectorSpace};
use brpic_core::enumerate::{gl_enumerate, gl_order, SizeGuard};
use brpic_core::extraspecial::{expected_result, omega_class, stab_d_generators, ExtraSpecialSpec, Kind};
use brpic_core::forms::{strict_tuples, WedgeForm};
use brpic_core::h3::{
    beta_map, connecting_delta, explicit_representative, project_to_kx, two_cocycle_class, H3Class,
};
use brpic_core::lie::{killing_form, omega_display, omega_from_metric, sl2};
use brpic_core::matrix::RectMatrix;
use brpic_core::stab::{
    brute_force_stabilizer, named_order, stabilizes, BruteForceOptions, StabilizerReport, StabilizerTest,
};
use common::*;
use num_bigint::BigUint;
use proptest::test_runner::TestRunner;

const BUDGET_1: Duration = Duration::from_secs(1);
const BUDGET_2: Duration = Duration::from_secs(5);
const BUDGET_3: Duration = Duration::from_secs(300);
const BUDGET_4_EACH: Duration = Duration::from_secs(120);
const BUDGET_8: Duration = Duration::from_secs(900);

/// Partition count for the large sweeps.
const WORKERS: usize = 8;
/// Guard lifted for GL₃(F₇), whose 33,784,128 elements exceed the default.
const GUARD_F7: u64 = 40_000_000;
/// Ceiling for the optional closure run.
const CLOSURE_BYTES: u64 = 350_000_000;

const ORBIT_SAMPLES: usize = 20;
const BETA_RANDOM_PAIRS: usize = 200;
const SEED: u64 = 0xacce_97ed;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, budget: Duration) -> Result<(), String> {
    ensure(elapsed <= budget, || format!("took {elapsed:.2?}, budget {budget:?}"))
}

fn order(r: &StabilizerReport) -> BigUint {
    r.order.clone().expect("computed order")
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn spec(p: u32, n: usize, kind: Kind) -> ExtraSpecialSpec {
    ExtraSpecialSpec::new(p, n, kind).unwrap()
}

fn opts(workers: usize) -> BruteForceOptions {
    BruteForceOptions {
        workers,
        ..Default::default()
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    for (kind, expected) in [(Kind::D, 24u64), (Kind::Q, 6)] {
        let s = spec(2, 1, kind);
        let w = omega_class(&s).unwrap();
        let stab = brute_force_stabilizer(&w, opts(1)).unwrap();
        ensure(order(&stab) == big(expected), || format!("|Stab(w_{kind})| = {}", order(&stab)))?;
        let bp = brpic_order_with(&w, &stab).unwrap();
        ensure(bp == big(expected), || format!("|BrPic| for {kind} = {bp}"))?;
        ensure(expected_result(&s).unwrap().order == big(expected), || "descriptor order".into())?;
        parts.push(format!("{kind}: {expected}"));
    }
    let t = start.elapsed();
    within(t, BUDGET_1)?;
    Ok(format!("{} ({t:.2?})", parts.join(", ")))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let f = field(3);
    let w = omega_class(&spec(3, 1, Kind::D)).unwrap();
    let stab = brute_force_stabilizer(&w, opts(1)).unwrap();
    ensure(order(&stab) == big(5616), || format!("|Stab| = {}", order(&stab)))?;
    ensure(named_order("SL", 3, 3).unwrap() == big(5616), || "SL3(F3) order".into())?;
    let test = StabilizerTest::new(&w).unwrap();
    let mut checked = 0;
    for g in gl_enumerate(f, 3, SizeGuard::default()).unwrap() {
        let det_one = g.determinant() == 1;
        let member = stabilizes(&g, &w).unwrap();
        ensure(member == det_one && test.check(&g) == det_one, || format!("membership differs at {g:?}"))?;
        checked += 1;
    }
    ensure(checked == 11_232, || format!("enumerated {checked}"))?;
    let t = start.elapsed();
    within(t, BUDGET_2)?;
    Ok(format!("5616 = |SL3(F3)|, {checked} elements agree with det = 1 ({t:.2?})"))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    for kind in [Kind::D, Kind::Q] {
        let s = spec(2, 2, kind);
        let w = omega_class(&s).unwrap();
        let stab = brute_force_stabilizer(&w, opts(WORKERS)).unwrap();
        ensure(order(&stab) == big(720), || format!("|Stab(w_{kind})| = {}", order(&stab)))?;
        ensure(named_order("Sp", 4, 2).unwrap() == big(720), || "Sp4(F2) order".into())?;
        parts.push(format!("{kind}: 720"));
    }
    let t = start.elapsed();
    within(t, BUDGET_3)?;
    Ok(format!("{} = |Sp4(F2)| on {WORKERS} partitions ({t:.2?})", parts.join(", ")))
}

fn criterion_4() -> Outcome {
    let mut parts = Vec::new();
    for (p, expected, guard) in [(5u32, 120u64, SizeGuard::default()), (7, 336, SizeGuard::new(GUARD_F7))] {
        let start = Instant::now();
        let f = field(p);
        let g = sl2(f).unwrap();
        let b = killing_form(&g).unwrap();
        let w = omega_from_metric(&g, &b).unwrap();
        // (8 x_e^x_f^x_h, 4 z_e z_f + 8 z_h^2) reduced mod p
        let shown = omega_display(&g, &b, &w);
        let coeff = |c: u32| if c % p == 1 { String::new() } else { format!("{}*", c % p) };
        let expected_display = format!("({}x_e^x_f^x_h, {}z_e*z_f + {}z_h^2)", coeff(8), coeff(4), coeff(8));
        ensure(shown == expected_display, || format!("display {shown} vs {expected_display}"))?;
        let stab = brute_force_stabilizer(&w, BruteForceOptions { workers: WORKERS, guard, keep_sample: true }).unwrap();
        ensure(order(&stab) == big(expected), || format!("p={p}: |Stab| = {}", order(&stab)))?;
        ensure(named_order("SO", 3, p).unwrap() == big(expected), || "SO3 order".into())?;
        for m in stab.sample_matrices().unwrap() {
            ensure(b.is_preserved_by(&m) && g.is_automorphism(&m), || format!("{m:?} is not in Aut_m"))?;
        }
        let t = start.elapsed();
        within(t, BUDGET_4_EACH)?;
        parts.push(format!("F{p}: {shown}, order {expected} ({t:.2?})"));
    }
    Ok(parts.join("; "))
}

fn beta_mismatch(w: &H3Class, v: &brpic_core::field::FpVector) -> bool {
    let c = explicit_representative(w);
    let class = two_cocycle_class(&beta_map(v, &c).unwrap()).unwrap();
    class != w.alt().interior_derivation(v).unwrap()
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for p in [2, 3] {
        let f = field(p);
        let sp = VectorSpace::new(f, 3).unwrap();
        let basis = H3Class::basis(f, 3).unwrap();
        ensure(basis.len() == 7, || format!("p={p}: {} basis classes", basis.len()))?;
        for w in &basis {
            for i in 0..sp.size() {
                let v = sp.vector(i);
                checked += 1;
                if beta_mismatch(w, &v) {
                    mismatches.push(format!("p={p} w={w} v={v}"));
                }
            }
        }
    }
    let f = field(5);
    let r = &mut rng(SEED);
    for _ in 0..BETA_RANDOM_PAIRS {
        let w = random_class(f, 3, r);
        let v = random_vector(f, 3, r);
        checked += 1;
        if beta_mismatch(&w, &v) {
            mismatches.push(format!("p=5 w={w} v={v}"));
        }
    }
    ensure(mismatches.is_empty(), || format!("{} mismatches: {}", mismatches.len(), mismatches.join("; ")))?;
    Ok(format!("{checked} (class, vector) pairs, 0 mismatches ({:.2?})", start.elapsed()))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut corpus: Vec<(String, H3Class)> = Vec::new();
    for p in [2, 3] {
        for kind in [Kind::D, Kind::Q] {
            corpus.push((format!("w_{kind} p={p} n=1"), omega_class(&spec(p, 1, kind)).unwrap()));
        }
    }
    let r = &mut rng(SEED ^ 6);
    for p in [2, 3, 5] {
        let mut found = 0;
        while found < 3 {
            let w = random_class(field(p), 3, r);
            if w.alt().is_nondegenerate().unwrap() {
                corpus.push((format!("random p={p} #{found}"), w));
                found += 1;
            }
        }
    }
    let g5 = sl2(field(5)).unwrap();
    corpus.push(("sl2 F5".into(), omega_from_metric(&g5, &killing_form(&g5).unwrap()).unwrap()));

    let mut samples = 0;
    for (name, w) in &corpus {
        let f = w.field();
        let stab = brute_force_stabilizer(w, opts(WORKERS)).unwrap();
        let bp = brpic_order_with(w, &stab).map_err(|e| format!("{name}: {e}"))?;
        let ind = induction_image_order_with(w, &stab).unwrap();
        ensure(bp == ind, || format!("{name}: brpic {bp} vs induction {ind}"))?;
        let prof = center_profile(w).unwrap();
        for _ in 0..ORBIT_SAMPLES {
            let g = random_gl(f, w.dim(), r);
            let moved = w.gl_act(&g).unwrap();
            let mstab = brute_force_stabilizer(&moved, opts(WORKERS)).unwrap();
            let mbp = brpic_order_with(&moved, &mstab).unwrap();
            let mind = induction_image_order_with(&moved, &mstab).unwrap();
            ensure(mbp == bp && mind == ind, || format!("{name}: orbit order {mbp} vs {bp}"))?;
            let mp = center_profile(&moved).unwrap();
            ensure(
                (mp.rad_dim, &mp.inv_center_order, mp.is_center_pointed, mp.pt_is_lagrangian)
                    == (prof.rad_dim, &prof.inv_center_order, prof.is_center_pointed, prof.pt_is_lagrangian),
                || format!("{name}: center profile not invariant"),
            )?;
            samples += 1;
        }
    }
    Ok(format!(
        "{} classes, {samples} orbit samples, brpic = induction image throughout ({:.2?})",
        corpus.len(),
        start.elapsed()
    ))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    for p in [3, 5] {
        let f = field(p);
        for n in 1..=5 {
            let pairs = strict_tuples(n, 2);
            let rows: Vec<Vec<i64>> = pairs
                .iter()
                .map(|t| {
                    let mu = WedgeForm::basis_element(f, n, &t[..2]).unwrap();
                    let d = connecting_delta(&mu).unwrap();
                    ensure(project_to_kx(&d).unwrap().is_zero(), || format!("p={p} n={n}: project(delta) != 0"))?;
                    Ok(d.coordinates().into_iter().map(i64::from).collect())
                })
                .collect::<Result<_, String>>()?;
            let rank = if rows.is_empty() { 0 } else { RectMatrix::from_rows(f, &rows).unwrap().rank() };
            ensure(rank == pairs.len(), || format!("p={p} n={n}: rank {rank}, expected {}", pairs.len()))?;
        }
    }
    // pointwise coboundary oracle on V_2(F_3)^3
    let f = field(3);
    let sp = VectorSpace::new(f, 2).unwrap();
    let carry = |a: u8, b: u8| (a as u32 + b as u32 >= 3) as u8;
    for (k, l) in [(0usize, 1usize), (1, 0)] {
        let mu = WedgeForm::from_terms(f, 2, 2, &[(&[k, l], 1)]).unwrap();
        let rep = connecting_delta(&mu).unwrap().representative();
        let pointwise = |u: &[u8], v: &[u8], w: &[u8]| {
            f.sub(f.mul(u[k], carry(v[l], w[l])), f.mul(w[l], carry(u[k], v[k])))
        };
        ensure(check_3cocycle(&sp, pointwise).is_ok(), || "pointwise delta is not a cocycle".into())?;
        let same = is_3_coboundary(&sp, |u, v, w| f.sub(rep.eval(u, v, w), pointwise(u, v, w))).unwrap();
        ensure(same, || format!("delta(x{k}^x{l}) differs from the pointwise coboundary"))?;
    }
    Ok(format!("rank C(n,2) and project o delta = 0 for n <= 5, p in {{3, 5}}; pointwise oracle agrees ({:.2?})", start.elapsed()))
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let s = spec(3, 2, Kind::D);
    let w = omega_class(&s).unwrap();
    let gens = stab_d_generators(&s).unwrap();
    for (i, g) in gens.iter().enumerate() {
        ensure(stabilizes(g, &w).unwrap(), || format!("generator {i} does not stabilize"))?;
        // e_1..e_4 span a stable subspace
        for j in 1..5 {
            ensure(g.get(0, j) == 0, || format!("generator {i} moves e_{j} out of the block"))?;
        }
    }
    let expected = big(81 * 51_840 * 2);
    let formula = named_order("AffSpFx", 4, 3).unwrap();
    ensure(formula == expected, || format!("order formula gives {formula}"))?;
    ensure(expected_result(&s).unwrap().order == expected, || "descriptor order".into())?;
    ensure(gl_order(field(3), 5) % &expected == big(0), || "order does not divide |GL5(F3)|".into())?;
    let closure_note = run_closure(&gens, &w, &expected)?;
    let t = start.elapsed();
    within(t, BUDGET_8)?;
    Ok(format!("{} generators stabilize w_D; order formula 8398080; {closure_note} ({t:.2?})", gens.len()))
}

#[cfg(feature = "heavy-closure")]
fn run_closure(gens: &[brpic_core::matrix::PrimeFieldMatrix], w: &H3Class, expected: &BigUint) -> Result<String, String> {
    use brpic_core::stab::{closure, MemoryGuard};
    match closure(gens, Some(w), MemoryGuard { max_bytes: CLOSURE_BYTES }) {
        Ok(r) => {
            ensure(&order(&r) == expected, || format!("closure order {}", order(&r)))?;
            Ok(format!("closure order {}", order(&r)))
        }
        Err(e @ brpic_core::error::Error::MemoryGuardExceeded { .. }) => Ok(format!("closure skipped: {e}")),
        Err(e) => Err(e.to_string()),
    }
}

#[cfg(not(feature = "heavy-closure"))]
fn run_closure(_: &[brpic_core::matrix::PrimeFieldMatrix], _: &H3Class, _: &BigUint) -> Result<String, String> {
    let _ = CLOSURE_BYTES;
    Ok("closure not run (enable feature heavy-closure)".into())
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let mut runner = TestRunner::new(config());
    let params = params();
    runner.run(&params, |(p, n, s)| action_law(p, n, s)).map_err(|e| format!("action law: {e}"))?;
    runner.run(&params, |(p, n, s)| projection_equivariant(p, n, s)).map_err(|e| format!("equivariance: {e}"))?;
    runner.run(&params, |(p, n, s)| cocycle_identity(p, n, s)).map_err(|e| format!("cocycle: {e}"))?;
    runner.run(&params, |(p, n, s)| radical_subspace(p, n, s)).map_err(|e| format!("radical: {e}"))?;
    runner
        .run(&(1usize..=5, proptest::arbitrary::any::<u64>()), |(n, s)| sym3_well_defined(n, s))
        .map_err(|e| format!("sym3: {e}"))?;
    Ok(format!("5 properties x {PROPERTY_CASES} cases, seed {PROPERTY_SEED:#x} ({:.2?})", start.elapsed()))
}

fn main() {
    // the libtest-style flags passed by `cargo test` are not used here
    let filter: Option<String> = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    let criteria: [(u32, &str, fn() -> Outcome); 9] = [
        (1, "extra-special p=2 n=1", criterion_1),
        (2, "extra-special p=3 n=1", criterion_2),
        (3, "extra-special p=2 n=2", criterion_3),
        (4, "sl2 over F5 and F7", criterion_4),
        (5, "beta oracle", criterion_5),
        (6, "exact-sequence consistency", criterion_6),
        (7, "delta exactness", criterion_7),
        (8, "odd p n=2 generators", criterion_8),
        (9, "property suites", criterion_9),
    ];
    let mut failed = 0;
    let mut ran = 0;
    for (id, name, run) in criteria {
        if let Some(f) = &filter {
            if !name.contains(f.as_str()) && f != &id.to_string() {
                continue;
            }
        }
        ran += 1;
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {id} [{name}]: PASS - {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id} [{name}]: FAIL - {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", ran - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
