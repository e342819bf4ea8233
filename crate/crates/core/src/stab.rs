//! Stabilizers of classes in H³(V_n, k^×) inside GL_n(F_p).

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::hash::Hash;
use std::num::NonZeroUsize;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::enumerate::{gl_order, GlEnumerator, SizeGuard, ENUMERATION_ORDER_ID};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::forms::strict_tuples;
use crate::h3::{H3Class, H3Components};
use crate::matrix::{bits_per_entry, PrimeFieldMatrix, MAX_DIM};

/// Number of elements retained by an opt-in brute-force sample.
pub const SAMPLE_LIMIT: usize = 10_000;

/// Default memory ceiling for generator closure, in bytes.
pub const DEFAULT_CLOSURE_BYTES: u64 = 200_000_000;

/// Worker count when none is given: the available parallelism.
pub fn default_workers() -> usize {
    std::thread::available_parallelism().map(NonZeroUsize::get).unwrap_or(1)
}

fn big_as_string<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn opt_big_as_string<S: Serializer>(v: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

fn matrices_as_rows<S: Serializer>(v: &[PrimeFieldMatrix], s: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<Vec<u8>>> = v
        .iter()
        .map(|m| (0..m.dim()).map(|i| (0..m.dim()).map(|j| m.get(i, j)).collect()).collect())
        .collect();
    rows.serialize(s)
}

fn keys_as_hex<S: Serializer>(v: &Option<Vec<u128>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(keys) => keys.iter().map(|k| format!("{k:#x}")).collect::<Vec<_>>().serialize(s),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    BruteForce,
    Closure,
    MembershipOnly,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::BruteForce => "brute_force",
            Method::Closure => "closure",
            Method::MembershipOnly => "membership_only",
        })
    }
}

/// A zoo group whose order coincides with a computed one. Equal orders are
/// reported as "order-consistent"; no isomorphism is claimed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedMatch {
    pub name: String,
    pub label: String,
    pub dim: usize,
    #[serde(serialize_with = "big_as_string")]
    pub order: BigUint,
}

#[derive(Debug, Clone, Serialize)]
pub struct StabilizerReport {
    pub p: u32,
    pub n: usize,
    /// `None` only for [`Method::MembershipOnly`].
    #[serde(serialize_with = "opt_big_as_string")]
    pub order: Option<BigUint>,
    pub method: Method,
    #[serde(serialize_with = "matrices_as_rows")]
    pub generators_checked: Vec<PrimeFieldMatrix>,
    pub named_match: Option<NamedMatch>,
    pub order_consistent: Vec<NamedMatch>,
    /// Packed keys of the first elements in enumeration order.
    #[serde(serialize_with = "keys_as_hex")]
    pub element_sample: Option<Vec<u128>>,
    pub enumeration: &'static str,
}

impl StabilizerReport {
    pub fn field(&self) -> PrimeField {
        PrimeField::new_unguarded(self.p).expect("validated on construction")
    }

    pub fn sample_matrices(&self) -> Option<Vec<PrimeFieldMatrix>> {
        let f = self.field();
        self.element_sample
            .as_ref()
            .map(|keys| keys.iter().map(|&k| PrimeFieldMatrix::unpack(f, self.n, k)).collect())
    }

    /// Fill `order_consistent` from the zoo and pick `named_match`: the hinted
    /// `(name, dim)` if it is among the candidates, else the unique candidate.
    pub fn identify(&mut self, hint: Option<(&str, usize)>) {
        let Some(order) = &self.order else {
            return;
        };
        self.order_consistent = zoo_candidates(self.field(), self.n)
            .into_iter()
            .filter(|m| &m.order == order)
            .collect();
        self.named_match = match hint.and_then(|(h, d)| self.order_consistent.iter().find(|m| m.name == h && m.dim == d)) {
            Some(m) => Some(m.clone()),
            None if self.order_consistent.len() == 1 => Some(self.order_consistent[0].clone()),
            None => None,
        };
    }
}

/// `gl_act_h3(g, ω) = ω`.
pub fn stabilizes(g: &PrimeFieldMatrix, omega: &H3Class) -> Result<bool> {
    if g.dim() != omega.dim() {
        return Err(Error::DimensionMismatch {
            expected: omega.dim(),
            found: g.dim(),
        });
    }
    if g.field() != omega.field() {
        return Err(Error::FieldMismatch {
            left: omega.field().p(),
            right: g.field().p(),
        });
    }
    Ok(&omega.gl_act(g)? == omega)
}

/// Membership test compiled for repeated use. It tests `ω ∘ g = ω`, which
/// defines the same subgroup as `g·ω = ω`.
#[derive(Debug, Clone)]
pub struct StabilizerTest {
    n: usize,
    p: u32,
    kind: TestKind,
}

#[derive(Debug, Clone)]
enum TestKind {
    Odd {
        alt_terms: Vec<([usize; 3], u32)>,
        triples: Vec<[usize; 3]>,
        alt_target: Vec<u8>,
        polar: [[u32; MAX_DIM]; MAX_DIM],
    },
    Two {
        mask: u64,
    },
}

impl StabilizerTest {
    pub fn new(omega: &H3Class) -> Result<Self> {
        let n = omega.dim();
        let field = omega.field();
        let kind = match omega.components() {
            H3Components::Odd { alt, sym } => {
                let s = sym.polar_matrix()?;
                let mut polar = [[0u32; MAX_DIM]; MAX_DIM];
                for (i, row) in polar.iter_mut().enumerate().take(n) {
                    for (j, e) in row.iter_mut().enumerate().take(n) {
                        *e = s.get(i, j) as u32;
                    }
                }
                let triples: Vec<[usize; 3]> = strict_tuples(n, 3);
                TestKind::Odd {
                    alt_terms: alt.terms().into_iter().map(|(t, c)| ([t[0], t[1], t[2]], c as u32)).collect(),
                    alt_target: triples.iter().map(|t| alt.coeff(t)).collect(),
                    triples,
                    polar,
                }
            }
            H3Components::Two { coset } => {
                if n > 6 {
                    return Err(Error::DimensionTooLarge { n, max: 6 });
                }
                TestKind::Two {
                    mask: coset.evaluation_mask(),
                }
            }
        };
        Ok(Self { n, p: field.p(), kind })
    }

    #[inline]
    pub fn check(&self, g: &PrimeFieldMatrix) -> bool {
        let n = self.n;
        let p = self.p;
        match &self.kind {
            TestKind::Two { mask } => {
                // ω is determined by v ↦ ω(v,v,v); walk V in Gray-code order.
                let mut cols = [0u64; MAX_DIM];
                for (j, c) in cols.iter_mut().enumerate().take(n) {
                    for i in 0..n {
                        *c |= (g.get(i, j) as u64) << i;
                    }
                }
                let mut gv = 0u64;
                for k in 1u64..(1 << n) {
                    let flip = k.trailing_zeros() as usize;
                    gv ^= cols[flip];
                    let v = k ^ (k >> 1);
                    if (mask >> gv) & 1 != (mask >> v) & 1 {
                        return false;
                    }
                }
                true
            }
            TestKind::Odd {
                alt_terms,
                triples,
                alt_target,
                polar,
            } => {
                // gᵀ S g = S
                let mut sg = [[0u32; MAX_DIM]; MAX_DIM];
                for a in 0..n {
                    for j in 0..n {
                        let mut acc = 0;
                        for b in 0..n {
                            acc += polar[a][b] * g.get(b, j) as u32;
                        }
                        sg[a][j] = acc % p;
                    }
                }
                for i in 0..n {
                    for j in i..n {
                        let mut acc = 0;
                        for a in 0..n {
                            acc += g.get(a, i) as u32 * sg[a][j];
                        }
                        if acc % p != polar[i][j] {
                            return false;
                        }
                    }
                }
                let e = |r: usize, c: usize| g.get(r, c) as u32;
                for (t, &target) in triples.iter().zip(alt_target) {
                    let [i, j, k] = *t;
                    let mut acc = 0u32;
                    for &([a, b, c], coeff) in alt_terms {
                        let pos = e(a, i) * e(b, j) * e(c, k) + e(a, j) * e(b, k) * e(c, i) + e(a, k) * e(b, i) * e(c, j);
                        let neg = e(a, i) * e(b, k) * e(c, j) + e(a, j) * e(b, i) * e(c, k) + e(a, k) * e(b, j) * e(c, i);
                        let det = (pos + 3 * p * p * p - neg) % p;
                        acc += coeff * det;
                    }
                    if (acc % p) as u8 != target {
                        return false;
                    }
                }
                true
            }
        }
    }
}

/// Options for [`brute_force_stabilizer`].
#[derive(Debug, Clone, Copy)]
pub struct BruteForceOptions {
    pub workers: usize,
    pub guard: SizeGuard,
    pub keep_sample: bool,
}

impl Default for BruteForceOptions {
    fn default() -> Self {
        Self {
            workers: default_workers(),
            guard: SizeGuard::default(),
            keep_sample: false,
        }
    }
}

/// Exhaustive stabilizer computation over GL_n(F_p), split over
/// `opts.workers` enumeration partitions.
pub fn brute_force_stabilizer(omega: &H3Class, opts: BruteForceOptions) -> Result<StabilizerReport> {
    let field = omega.field();
    let n = omega.dim();
    opts.guard.check(field, n)?;
    let test = StabilizerTest::new(omega)?;
    let workers = opts.workers.max(1);
    let keep = opts.keep_sample;
    let run = |part: usize| -> Result<(u64, Vec<u128>)> {
        let mut count = 0u64;
        let mut sample = Vec::new();
        for g in GlEnumerator::partition(field, n, workers, part, opts.guard)? {
            if test.check(&g) {
                count += 1;
                if keep && sample.len() < SAMPLE_LIMIT {
                    sample.extend(g.pack());
                }
            }
        }
        Ok((count, sample))
    };
    let results: Vec<Result<(u64, Vec<u128>)>> = if workers == 1 {
        vec![run(0)]
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..workers).map(|part| s.spawn(move || run(part))).collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        })
    };
    let mut total = 0u64;
    let mut sample = Vec::new();
    for r in results {
        let (c, s) = r?;
        total += c;
        sample.extend(s);
    }
    sample.sort_unstable();
    sample.truncate(SAMPLE_LIMIT);
    let mut report = StabilizerReport {
        p: field.p(),
        n,
        order: Some(BigUint::from(total)),
        method: Method::BruteForce,
        generators_checked: Vec::new(),
        named_match: None,
        order_consistent: Vec::new(),
        element_sample: keep.then_some(sample),
        enumeration: ENUMERATION_ORDER_ID,
    };
    report.identify(None);
    Ok(report)
}

/// Memory ceiling for [`closure`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MemoryGuard {
    pub max_bytes: u64,
}

impl Default for MemoryGuard {
    fn default() -> Self {
        Self {
            max_bytes: DEFAULT_CLOSURE_BYTES,
        }
    }
}

impl MemoryGuard {
    /// Estimated footprint of `elements` keys of `key_bytes` each: the hash
    /// set at worst-case load (two slots per element, one control byte per
    /// slot) plus the BFS queue.
    pub fn estimate(elements: u64, key_bytes: u64) -> u64 {
        elements * (2 * (key_bytes + 1) + key_bytes)
    }
}

fn check_generators(gens: &[PrimeFieldMatrix], omega: Option<&H3Class>) -> Result<(PrimeField, usize)> {
    let first = gens.first().ok_or_else(|| Error::WrongShape("no generators".into()))?;
    let (field, n) = (first.field(), first.dim());
    for (i, g) in gens.iter().enumerate() {
        if g.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: g.dim(),
            });
        }
        if g.field() != field {
            return Err(Error::FieldMismatch {
                left: field.p(),
                right: g.field().p(),
            });
        }
        if !g.is_invertible() {
            return Err(Error::GeneratorNotInvertible(i));
        }
        if let Some(w) = omega {
            if !stabilizes(g, w)? {
                return Err(Error::GeneratorNotStabilizing(i));
            }
        }
    }
    Ok((field, n))
}

/// Checks that every generator is invertible and stabilizes `omega`, without
/// computing the generated group.
pub fn membership_report(gens: &[PrimeFieldMatrix], omega: &H3Class) -> Result<StabilizerReport> {
    check_generators(gens, Some(omega))?;
    Ok(StabilizerReport {
        p: omega.field().p(),
        n: omega.dim(),
        order: None,
        method: Method::MembershipOnly,
        generators_checked: gens.to_vec(),
        named_match: None,
        order_consistent: Vec::new(),
        element_sample: None,
        enumeration: ENUMERATION_ORDER_ID,
    })
}

fn bfs<K: Copy + Hash + Eq>(
    gens: &[PrimeFieldMatrix],
    guard: MemoryGuard,
    key: impl Fn(&PrimeFieldMatrix) -> K,
    unkey: impl Fn(K) -> PrimeFieldMatrix,
) -> Result<u64> {
    let field = gens[0].field();
    let n = gens[0].dim();
    let kb = std::mem::size_of::<K>() as u64;
    let id = key(&PrimeFieldMatrix::identity(field, n));
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(id);
    queue.push_back(id);
    while let Some(k) = queue.pop_front() {
        let m = unkey(k);
        for g in gens {
            let next = key(&m.mul_unchecked(g));
            if seen.insert(next) {
                let elements = seen.len() as u64;
                let bytes = MemoryGuard::estimate(elements, kb);
                if bytes > guard.max_bytes {
                    return Err(Error::MemoryGuardExceeded {
                        elements: elements as usize,
                        bytes,
                        limit: guard.max_bytes,
                    });
                }
                queue.push_back(next);
            }
        }
    }
    Ok(seen.len() as u64)
}

/// Order of the group generated by `gens` by breadth-first closure over
/// packed matrix keys. With `omega`, every generator must stabilize it.
pub fn closure(gens: &[PrimeFieldMatrix], omega: Option<&H3Class>, guard: MemoryGuard) -> Result<StabilizerReport> {
    let (field, n) = check_generators(gens, omega)?;
    let bits = (n * n) as u32 * bits_per_entry(field);
    let order = if bits <= 64 {
        bfs(
            gens,
            guard,
            |m| m.pack().expect("fits") as u64,
            |k| PrimeFieldMatrix::unpack(field, n, k as u128),
        )?
    } else if bits <= 128 {
        bfs(gens, guard, |m| m.pack().expect("fits"), |k| PrimeFieldMatrix::unpack(field, n, k))?
    } else {
        return Err(Error::DimensionTooLarge { n, max: MAX_DIM });
    };
    let mut report = StabilizerReport {
        p: field.p(),
        n,
        order: Some(BigUint::from(order)),
        method: Method::Closure,
        generators_checked: gens.to_vec(),
        named_match: None,
        order_consistent: Vec::new(),
        element_sample: None,
        enumeration: ENUMERATION_ORDER_ID,
    };
    report.identify(None);
    Ok(report)
}

fn prod_sympl(q: &BigUint, m: u32) -> BigUint {
    (1..=m).fold(BigUint::one(), |acc, i| acc * (q.pow(2 * i) - 1u32))
}

/// Order of a named group from the zoo.
///
/// Names: `GL`, `SL`, `Sp`, `O+`, `O-`, `SO` (acting on F_p^n), `S` (the
/// symmetric group on n letters), and `Aff` + any linear name for V ⋊ G with
/// G ⊂ GL_n. `AffSpFx` is AffSp_n ⋊ F_p^× (scalars on the affine coordinate).
pub fn named_order(name: &str, n: usize, p: u32) -> Result<BigUint> {
    let field = PrimeField::new_unguarded(p)?;
    let q = BigUint::from(p);
    let bad = || Error::BadGroupParameters(format!("{name} in dimension {n}"));
    if let Some(rest) = name.strip_prefix("Aff") {
        if rest == "SpFx" {
            return Ok(named_order("AffSp", n, p)? * (p - 1));
        }
        if rest == "S" || rest.starts_with("Aff") {
            return Err(Error::UnknownGroup(name.to_string()));
        }
        return Ok(named_order(rest, n, p)? * q.pow(n as u32));
    }
    let order = match name {
        "GL" => gl_order(field, n),
        "SL" => gl_order(field, n) / (p - 1),
        "Sp" => {
            if n % 2 != 0 {
                return Err(bad());
            }
            let m = (n / 2) as u32;
            q.pow(m * m) * prod_sympl(&q, m)
        }
        "O+" | "O-" => {
            if n % 2 != 0 || n == 0 {
                return Err(bad());
            }
            let m = (n / 2) as u32;
            let qm = q.pow(m);
            let middle = if name == "O+" { qm - 1u32 } else { qm + 1u32 };
            BigUint::from(2u32) * q.pow(m * (m - 1)) * middle * prod_sympl(&q, m - 1)
        }
        "SO" => {
            if n % 2 != 1 {
                return Err(bad());
            }
            let m = (n / 2) as u32;
            q.pow(m * m) * prod_sympl(&q, m)
        }
        "S" => (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k),
        _ => return Err(Error::UnknownGroup(name.to_string())),
    };
    if order.is_zero() {
        return Err(bad());
    }
    Ok(order)
}

fn label(name: &str, dim: usize, p: u32) -> String {
    match name {
        "S" => format!("S{dim}"),
        "AffSpFx" => format!("AffSp{dim}(F{p}):F{p}x"),
        _ => format!("{name}{dim}(F{p})"),
    }
}

/// Zoo groups that naturally sit inside GL_n(F_p): the linear ones on F_p^n
/// and F_p^{n−1}, the affine ones on F_p^{n−1}, and the symmetric groups
/// S_n, S_{n+1}.
pub fn zoo_candidates(field: PrimeField, n: usize) -> Vec<NamedMatch> {
    let p = field.p();
    let mut out = Vec::new();
    let mut push = |name: &str, dim: usize| {
        if let Ok(order) = named_order(name, dim, p) {
            out.push(NamedMatch {
                name: name.to_string(),
                label: label(name, dim, p),
                dim,
                order,
            });
        }
    };
    for name in ["GL", "SL", "Sp", "O+", "O-", "SO"] {
        push(name, n);
    }
    if n >= 2 {
        for name in ["GL", "SL", "Sp", "O+", "O-", "SO"] {
            push(name, n - 1);
        }
        for name in ["AffGL", "AffSL", "AffSp", "AffSpFx", "AffO+", "AffO-", "AffSO"] {
            push(name, n - 1);
        }
    }
    push("S", n);
    push("S", n + 1);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{SymForm, WedgeForm};

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn top_wedge(p: u32, sym: &[(&[usize], i64)]) -> H3Class {
        H3Class::from_parts(
            WedgeForm::basis_element(f(p), 3, &[0, 1, 2]).unwrap(),
            SymForm::from_terms(f(p), 3, 2, sym).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn zoo_values() {
        assert_eq!(named_order("Sp", 4, 2).unwrap(), BigUint::from(720u32));
        assert_eq!(named_order("SL", 3, 3).unwrap(), BigUint::from(5616u32));
        assert_eq!(named_order("SO", 3, 5).unwrap(), BigUint::from(120u32));
        assert_eq!(named_order("SO", 3, 7).unwrap(), BigUint::from(336u32));
        assert_eq!(named_order("Sp", 4, 3).unwrap(), BigUint::from(51_840u32));
        assert_eq!(named_order("AffO+", 2, 3).unwrap(), BigUint::from(36u32));
        assert_eq!(named_order("AffSpFx", 4, 3).unwrap(), BigUint::from(8_398_080u32));
        assert_eq!(named_order("O-", 2, 3).unwrap(), BigUint::from(8u32));
        assert_eq!(named_order("S", 4, 2).unwrap(), BigUint::from(24u32));
        assert!(matches!(named_order("Foo", 3, 3), Err(Error::UnknownGroup(_))));
        assert!(matches!(named_order("Sp", 3, 3), Err(Error::BadGroupParameters(_))));
    }

    #[test]
    fn membership_examples() {
        let w = top_wedge(3, &[]);
        let id = PrimeFieldMatrix::identity(f(3), 3);
        assert!(stabilizes(&id, &w).unwrap());
        let d = PrimeFieldMatrix::diagonal(f(3), &[2, 1, 1]);
        assert!(!stabilizes(&d, &w).unwrap());
        let bad = PrimeFieldMatrix::identity(f(3), 2);
        assert!(matches!(stabilizes(&bad, &w), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn compiled_test_agrees_with_definition() {
        let cases = vec![
            top_wedge(3, &[]),
            top_wedge(3, &[(&[0, 1], 1)]),
            top_wedge(5, &[(&[0, 0], 2), (&[1, 2], 3)]),
            H3Class::from_cubic(&SymForm::from_terms(f(2), 3, 3, &[(&[0, 1, 2], 1), (&[0, 1, 1], 1)]).unwrap())
                .unwrap(),
        ];
        for w in cases {
            let t = StabilizerTest::new(&w).unwrap();
            let limit = if w.field().p() == 5 { 20_000 } else { usize::MAX };
            for g in GlEnumerator::partition(w.field(), 3, 1, 0, SizeGuard::default()).unwrap().take(limit) {
                assert_eq!(t.check(&g), stabilizes(&g, &w).unwrap(), "{w} {g:?}");
            }
        }
    }

    #[test]
    fn closure_examples() {
        let f2 = f(2);
        let gens = [
            PrimeFieldMatrix::from_rows(f2, &[&[1, 1], &[0, 1]]).unwrap(),
            PrimeFieldMatrix::from_rows(f2, &[&[0, 1], &[1, 0]]).unwrap(),
        ];
        let r = closure(&gens, None, MemoryGuard::default()).unwrap();
        assert_eq!(r.order, Some(BigUint::from(6u32)));
        let id = [PrimeFieldMatrix::identity(f2, 2)];
        assert_eq!(closure(&id, None, MemoryGuard::default()).unwrap().order, Some(BigUint::one()));
        let singular = [PrimeFieldMatrix::zero(f2, 2)];
        assert!(matches!(
            closure(&singular, None, MemoryGuard::default()),
            Err(Error::GeneratorNotInvertible(0))
        ));
        let tiny = MemoryGuard { max_bytes: 10 };
        assert!(matches!(closure(&gens, None, tiny), Err(Error::MemoryGuardExceeded { .. })));
    }

    #[test]
    fn non_stabilizing_generator_rejected() {
        let w = top_wedge(3, &[]);
        let d = PrimeFieldMatrix::diagonal(f(3), &[2, 1, 1]);
        assert!(matches!(
            closure(&[d], Some(&w), MemoryGuard::default()),
            Err(Error::GeneratorNotStabilizing(0))
        ));
    }

    #[test]
    fn brute_force_small() {
        let w = top_wedge(3, &[]);
        for workers in [1, 3] {
            let r = brute_force_stabilizer(
                &w,
                BruteForceOptions {
                    workers,
                    keep_sample: true,
                    ..Default::default()
                },
            )
            .unwrap();
            assert_eq!(r.order, Some(BigUint::from(5616u32)));
            let sample = r.sample_matrices().unwrap();
            assert_eq!(sample.len(), 5616);
            assert!(sample.iter().all(|g| g.determinant() == 1));
            assert_eq!(r.named_match.as_ref().unwrap().name, "SL");
        }
    }
}
