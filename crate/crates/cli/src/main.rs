mod table;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use brpic_core::brpic::{brpic_report, center_profile, rad_dim};
use brpic_core::cochain::VectorSpace;
use brpic_core::docs::{FormDocument, GeneratorsDocument, LieDocument};
use brpic_core::enumerate::{SizeGuard, DEFAULT_GL_GUARD};
use brpic_core::error::Error;
use brpic_core::extraspecial::{expected_result, kappa_class, omega_class, stab_d_generators, ExtraSpecialSpec, Kind};
use brpic_core::field::{FpVector, PrimeField};
use brpic_core::forms::{strict_tuples, WedgeForm};
use brpic_core::h3::{beta_map, connecting_delta, explicit_representative, h3_dim, two_cocycle_class, H3Class};
use brpic_core::lie::{killing_form, omega_display, omega_from_metric, MetricForm};
use brpic_core::matrix::RectMatrix;
use brpic_core::stab::{
    brute_force_stabilizer, closure, default_workers, BruteForceOptions, MemoryGuard, StabilizerReport,
    DEFAULT_CLOSURE_BYTES,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use table::Table;

/// Exit code for usage and input errors.
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "brpic", version, about = "Stabilizers and Brauer-Picard group orders for pointed fusion categories over elementary abelian p-groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct RunOpts {
    /// Print one JSON document instead of tables.
    #[arg(long)]
    json: bool,
    /// Enumeration partitions for brute force (default: available parallelism).
    #[arg(long, env = "BRPIC_WORKERS")]
    workers: Option<usize>,
    /// Largest |GL_n(F_p)| to sweep by brute force.
    #[arg(long, default_value_t = DEFAULT_GL_GUARD)]
    max_elements: u64,
    /// Memory ceiling for generator closure, in bytes.
    #[arg(long, default_value_t = DEFAULT_CLOSURE_BYTES)]
    max_bytes: u64,
}

impl RunOpts {
    fn brute(&self, keep_sample: bool) -> BruteForceOptions {
        BruteForceOptions {
            workers: self.workers.unwrap_or_else(default_workers).max(1),
            guard: SizeGuard::new(self.max_elements),
            keep_sample,
        }
    }

    fn memory(&self) -> MemoryGuard {
        MemoryGuard {
            max_bytes: self.max_bytes,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Brute,
    Closure,
}

#[derive(Subcommand)]
enum Command {
    /// Dimensions and basis of H³(V_n, k^×).
    H3 {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Stabilizer of a class read from a form file.
    Stab {
        form: PathBuf,
        #[arg(long, value_enum, default_value = "brute")]
        method: Method,
        /// Generators file, required for --method closure.
        #[arg(long)]
        gens: Option<PathBuf>,
        /// Retain the first elements of the stabilizer in the report.
        #[arg(long)]
        sample: bool,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Center profile and Brauer-Picard order of a class read from a form file.
    Brpic {
        form: PathBuf,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Classes of the extra-special groups of order p^(2n+1).
    Extraspecial {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: usize,
        #[arg(long = "type", value_parser = parse_kind)]
        kind: Kind,
        /// Compute the stabilizer and compare with the known identification.
        #[arg(long)]
        verify: bool,
        /// Write ω as a form file.
        #[arg(long)]
        write_form: Option<PathBuf>,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Killing form, ω^g and stabilizer for a Lie algebra file.
    Lie {
        file: PathBuf,
        /// Reinterpret the structure constants over another prime.
        #[arg(long)]
        p: Option<u32>,
        /// Compute the stabilizer and check it against Aut_m(g).
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Compare the class of β_v with ι_v(ω_alt).
    BetaCheck {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: usize,
        /// Random (ω, v) pairs instead of the exhaustive sweep over basis classes.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

fn parse_kind(s: &str) -> Result<Kind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Usage(String),
    Mismatch(String),
    Guard(String),
    Hypothesis(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Mismatch(_) => 1,
            Failure::Guard(_) => 2,
            Failure::Hypothesis(_) => 3,
            Failure::Usage(_) => EXIT_USAGE,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Mismatch(m) | Failure::Guard(m) | Failure::Hypothesis(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SizeGuardExceeded { .. } => {
                Failure::Guard(format!("{e}; raise --max-elements"))
            }
            Error::MemoryGuardExceeded { .. } => Failure::Guard(format!("{e}; raise --max-bytes")),
            Error::NondegenerateRequired { .. } => Failure::Hypothesis(e.to_string()),
            Error::GeneratorNotStabilizing(_) => Failure::Mismatch(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::H3 { p, n, json } => cmd_h3(p, n, json),
        Command::Stab {
            form,
            method,
            gens,
            sample,
            run,
        } => cmd_stab(&form, method, gens.as_deref(), sample, run),
        Command::Brpic { form, run } => cmd_brpic(&form, run),
        Command::Extraspecial {
            p,
            n,
            kind,
            verify,
            write_form,
            run,
        } => cmd_extraspecial(p, n, kind, verify, write_form.as_deref(), run),
        Command::Lie { file, p, verify, run } => cmd_lie(&file, p, verify, run),
        Command::BetaCheck {
            p,
            n,
            samples,
            seed,
            json,
        } => cmd_beta_check(p, n, samples, seed, json),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_form(path: &Path) -> Result<H3Class, Failure> {
    let doc = FormDocument::load(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(doc.to_class()?)
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        0
    } else {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }
}

fn cmd_h3(p: u32, n: usize, json: bool) -> CmdResult {
    let field = PrimeField::new(p)?;
    if n == 0 {
        return Err(Failure::Usage("n must be positive".into()));
    }
    let dim = h3_dim(field, n);
    let alt_dim = binom(n, 3);
    let sym_dim = dim - alt_dim;
    let basis: Vec<String> = H3Class::basis(field, n)?.iter().map(ToString::to_string).collect();
    let delta_rank = if field.is_two() {
        None
    } else {
        let rows: Vec<Vec<i64>> = strict_tuples(n, 2)
            .iter()
            .map(|t| -> Result<Vec<i64>, Error> {
                let d = connecting_delta(&WedgeForm::basis_element(field, n, &t[..2])?)?;
                Ok(d.coordinates().into_iter().map(i64::from).collect())
            })
            .collect::<Result<_, _>>()?;
        Some(if rows.is_empty() { 0 } else { RectMatrix::from_rows(field, &rows)?.rank() })
    };
    if json {
        print_json(&json!({
            "p": p, "n": n, "dim": dim, "alt_dim": alt_dim, "sym_dim": sym_dim,
            "delta_rank": delta_rank, "basis": basis,
        }));
        return Ok(());
    }
    let mut t = Table::new(format!("H3(V_{n}, k^x) over F_{p}"));
    t.row("dim", dim);
    t.row("alternating part", alt_dim);
    t.row(if field.is_two() { "kernel of pi (Sym^2)" } else { "symmetric part" }, sym_dim);
    if let Some(r) = delta_rank {
        t.row("rank of delta", r);
    }
    t.print();
    println!("basis:");
    for b in basis {
        println!("  {b}");
    }
    Ok(())
}

fn stab_table(r: &StabilizerReport) -> Table {
    let mut t = Table::new("stabilizer".to_string());
    t.row("field", format!("F_{}", r.p));
    t.row("n", r.n);
    t.row("method", r.method);
    t.row("order", r.order.as_ref().map_or("-".into(), ToString::to_string));
    if let Some(m) = &r.named_match {
        t.row("order-consistent with", &m.label);
    }
    let others: Vec<&str> = r
        .order_consistent
        .iter()
        .filter(|m| Some(*m) != r.named_match.as_ref())
        .map(|m| m.label.as_str())
        .collect();
    if !others.is_empty() {
        t.row(if r.named_match.is_some() { "also order-consistent" } else { "order-consistent with" }, others.join(", "));
    }
    if !r.generators_checked.is_empty() {
        t.row("generators checked", r.generators_checked.len());
    }
    if let Some(s) = &r.element_sample {
        t.row("retained elements", s.len());
    }
    t.row("enumeration", r.enumeration);
    t
}

fn compute_stab(
    omega: &H3Class,
    method: Method,
    gens: Option<&Path>,
    sample: bool,
    run: RunOpts,
) -> Result<StabilizerReport, Failure> {
    match method {
        Method::Brute => Ok(brute_force_stabilizer(omega, run.brute(sample))?),
        Method::Closure => {
            let path = gens.ok_or_else(|| Failure::Usage("--method closure needs --gens".into()))?;
            let doc = GeneratorsDocument::load(&read(path)?)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            Ok(closure(&doc.to_matrices()?, Some(omega), run.memory())?)
        }
    }
}

fn cmd_stab(form: &Path, method: Method, gens: Option<&Path>, sample: bool, run: RunOpts) -> CmdResult {
    let omega = load_form(form)?;
    let report = compute_stab(&omega, method, gens, sample, run).map_err(|f| match f {
        Failure::Guard(m) if matches!(method, Method::Brute) => {
            Failure::Guard(format!("{m}, or use --method closure --gens FILE"))
        }
        f => f,
    })?;
    if run.json {
        print_json(&serde_json::to_value(&report).expect("serializable"));
    } else {
        println!("omega = {omega}");
        stab_table(&report).print();
    }
    Ok(())
}

fn cmd_brpic(form: &Path, run: RunOpts) -> CmdResult {
    let omega = load_form(form)?;
    let profile = center_profile(&omega)?;
    let rad = rad_dim(&omega)?;
    if rad != 0 {
        if run.json {
            print_json(&json!({ "center": profile }));
        } else {
            center_table(&profile).print();
        }
        return Err(Failure::Hypothesis(format!(
            "omega_alt is degenerate (radical dimension {rad}); the exact sequence for BrPic needs a nondegenerate alternating part, so no order is reported"
        )));
    }
    let stab = brute_force_stabilizer(&omega, run.brute(false))?;
    let report = brpic_report(&omega, stab)?;
    if run.json {
        print_json(&json!({ "center": profile, "brpic": report }));
        return Ok(());
    }
    center_table(&profile).print();
    let mut t = Table::new("Brauer-Picard group".to_string());
    t.row("kernel exponent", report.kernel_exponent);
    t.row("|Stab(omega)|", report.stab.order.as_ref().map_or("-".into(), ToString::to_string));
    t.row("induction image order", &report.induction_image_order);
    t.row("brpic order", report.brpic_order.as_ref().map_or("-".into(), ToString::to_string));
    t.print();
    stab_table(&report.stab).print();
    Ok(())
}

fn center_table(c: &brpic_core::brpic::CenterProfile) -> Table {
    let mut t = Table::new("center".to_string());
    t.row("omega", &c.omega);
    t.row("field", format!("F_{}", c.p));
    t.row("n", c.n);
    t.row("radical dimension", c.rad_dim);
    t.row("|Inv(Z)|", &c.inv_center_order);
    t.row("center pointed", c.is_center_pointed);
    t.row("pt Lagrangian", c.pt_is_lagrangian);
    t
}

fn cmd_extraspecial(p: u32, n: usize, kind: Kind, verify: bool, write_form: Option<&Path>, run: RunOpts) -> CmdResult {
    let spec = ExtraSpecialSpec::new(p, n, kind)?;
    let kappa = kappa_class(&spec)?;
    let omega = omega_class(&spec)?;
    let expected = match expected_result(&spec) {
        Ok(e) => Some(e),
        Err(Error::NotCovered(_)) => None,
        Err(e) => return Err(e.into()),
    };
    if let Some(path) = write_form {
        std::fs::write(path, FormDocument::from_class(&omega).dump())
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    let mut verdict = None;
    let mut stab = None;
    if verify {
        let mut report = match brute_force_stabilizer(&omega, run.brute(false)) {
            Ok(r) => r,
            Err(Error::SizeGuardExceeded { .. }) if !spec.field.is_two() && kind == Kind::D && n > 1 => {
                closure(&stab_d_generators(&spec)?, Some(&omega), run.memory())?
            }
            Err(e) => return Err(e.into()),
        };
        report.identify(expected.as_ref().map(|e| (e.name.as_str(), e.dim)));
        let computed = report.order.clone().expect("computed");
        verdict = Some(match &expected {
            Some(e) if e.order == computed => "PASS",
            Some(_) => "FAIL",
            None => "COMPUTED",
        });
        stab = Some(report);
    }
    if run.json {
        print_json(&json!({
            "spec": { "p": p, "n": n, "kind": kind },
            "kappa": kappa.to_string(),
            "omega": omega.to_string(),
            "omega_form": FormDocument::from_class(&omega),
            "expected": expected,
            "stab": stab,
            "verdict": verdict,
        }));
    } else {
        let mut t = Table::new(format!("extra-special {kind}, order {p}^{}", 2 * n + 1));
        t.row("kappa", &kappa);
        t.row("omega", &omega);
        match &expected {
            Some(e) => {
                t.row("expected Stab", format!("{} (order {})", e.group, e.order));
                t.row("statement", &e.statement);
            }
            None => t.row("expected Stab", "no stated identification"),
        }
        t.print();
        if let Some(r) = &stab {
            stab_table(r).print();
        }
        if let Some(v) = verdict {
            let computed = stab.as_ref().and_then(|r| r.order.clone()).unwrap_or_default();
            match &expected {
                Some(e) => println!("{v} ({computed} = {})", e.order),
                None => println!("{v} ({computed})"),
            }
        }
    }
    if verdict == Some("FAIL") {
        return Err(Failure::Mismatch("stabilizer order differs from the expected identification".into()));
    }
    Ok(())
}

fn cmd_lie(file: &Path, p: Option<u32>, verify: bool, run: RunOpts) -> CmdResult {
    let mut doc = LieDocument::load(&read(file)?).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
    if let Some(p) = p {
        doc.p = p;
    }
    let g = doc.to_algebra().map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
    let (b, source) = match doc.to_form()? {
        Some(b) => (b, "supplied"),
        None => (killing_form(&g)?, "Killing"),
    };
    let omega = omega_from_metric(&g, &b)?;
    let shown = omega_display(&g, &b, &omega);
    let report = if verify {
        let r = brpic_core::lie::autm_stab_report(&g, &b, run.brute(true))?;
        let sample = r.stab.sample_matrices().unwrap_or_default();
        if let Some(m) = sample.iter().find(|m| !(b.is_preserved_by(m) && g.is_automorphism(m))) {
            return Err(Failure::Mismatch(format!("stabilizer element {m:?} is not in Aut_m(g)")));
        }
        Some(r)
    } else {
        None
    };
    if run.json {
        print_json(&json!({
            "p": doc.p,
            "dim": g.dim(),
            "basis": g.names(),
            "form_source": source,
            "form": b.rows(),
            "omega": shown,
            "omega_form": FormDocument::from_class(&omega),
            "report": report,
        }));
        return Ok(());
    }
    let mut t = Table::new(format!("Lie algebra of dimension {} over F_{}", g.dim(), doc.p));
    t.row("basis", g.names().join(", "));
    t.row(&format!("{source} form"), form_rows(&b));
    t.row("nondegenerate form", b.is_nondegenerate());
    t.row("perfect", g.is_perfect());
    t.row("omega^g", &shown);
    t.print();
    if let Some(r) = &report {
        stab_table(&r.stab).print();
        println!("brpic order = {}", r.brpic_order);
        println!("every retained stabilizer element preserves the form and the bracket");
    }
    Ok(())
}

fn form_rows(b: &MetricForm) -> String {
    b.rows()
        .iter()
        .map(|r| format!("[{}]", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_beta_check(p: u32, n: usize, samples: Option<usize>, seed: u64, json: bool) -> CmdResult {
    let field = PrimeField::new(p)?;
    if n == 0 || n > 4 {
        return Err(Failure::Usage("beta-check supports 1 <= n <= 4".into()));
    }
    let space = VectorSpace::new(field, n)?;
    let mut pairs: Vec<(H3Class, FpVector)> = Vec::new();
    match samples {
        None => {
            for w in H3Class::basis(field, n)? {
                for i in 0..space.size() {
                    pairs.push((w.clone(), space.vector(i)));
                }
            }
        }
        Some(count) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let basis = H3Class::basis(field, n)?;
            for _ in 0..count {
                let mut w = H3Class::zero(field, n)?;
                for b in &basis {
                    w = w.add(&b.scale(rng.gen_range(0..p) as u8))?;
                }
                let v = space.vector(rng.gen_range(0..space.size()));
                pairs.push((w, v));
            }
        }
    }
    let mut mismatches = Vec::new();
    for (w, v) in &pairs {
        let c = explicit_representative(w);
        let class = two_cocycle_class(&beta_map(v, &c)?)?;
        let expected = w.alt().interior_derivation(v)?;
        if class != expected {
            mismatches.push(json!({ "omega": w.to_string(), "v": v.to_string(), "class": class.to_string(), "expected": expected.to_string() }));
        }
    }
    let passed = pairs.len() - mismatches.len();
    if json {
        print_json(&json!({
            "p": p, "n": n,
            "mode": if samples.is_some() { "sampled" } else { "exhaustive" },
            "checked": pairs.len(), "passed": passed, "mismatches": mismatches,
        }));
    } else {
        let mut t = Table::new(format!("beta oracle, F_{p}, n = {n}"));
        t.row("mode", if samples.is_some() { "sampled" } else { "exhaustive" });
        t.row("checked", pairs.len());
        t.row("PASS", passed);
        t.row("FAIL", mismatches.len());
        t.print();
        for m in &mismatches {
            println!("mismatch: omega = {}, v = {}", m["omega"], m["v"]);
        }
    }
    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(Failure::Mismatch(format!("{} mismatches", mismatches.len())))
    }
}
