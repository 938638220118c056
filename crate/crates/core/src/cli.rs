//! The `aybe` command-line front end.
//!
//! Exit codes: 0 when every check passes, 1 when a verification fails,
//! 2 for usage errors, malformed input, or library errors.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bd::{enumerate, AssocBD, OrderedAssocBD};
use crate::bundles::{bd_from_matrix, massey_closed, massey_oracle, massey_tensor, SplittingMatrix};
use crate::cmath::c;
use crate::rmatrix::{
    classical_r0, quantum_r, r0_numeric, r1_numeric, r_multiplicative, rational_r, schedler_symmetry, trig_r,
    AbcParts, DEFAULT_EPS,
};
use crate::tensor::Tensor2;
use crate::verify::{self, HKind, Report, SamplePlan, STarget, DEFAULT_QYBE_U};
use crate::{Error, C64};

#[derive(Debug, Parser)]
#[command(name = "aybe", version, about = "Solutions of the associative Yang-Baxter equation: construction and verification")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Seed for the sample plan.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of samples per suite.
    #[arg(long, global = true, default_value_t = 32)]
    samples: usize,
    /// Tolerance override (each suite has its own default).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Read the structure or matrix JSON from stdin.
    #[arg(long, global = true)]
    stdin: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EvalKind {
    Trig,
    Quantum,
    Classical,
    Multiplicative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    All,
    Aybe,
    Unitarity,
    Qybe,
    QybeUnitarity,
    SIdentity,
    Cubic,
    Cybe,
    Aybe2,
    Abc,
    QuasiPeriod,
    #[value(name = "r0-r1")]
    R0R1,
    HEquation,
    Symmetry,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Trig,
    Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum HArg {
    InverseV,
    HalfCoth,
    HalfCothLinear,
    Perturbed,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// List every associative BD-structure with the standard C0 on N labels.
    Enumerate {
        #[arg(long)]
        n: usize,
    },
    /// Evaluate a solution at one point.
    Eval {
        #[arg(long)]
        structure: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = EvalKind::Trig)]
        kind: EvalKind,
        #[arg(long, value_parser = parse_c64, default_value = "0.5,0.25")]
        u: C64,
        #[arg(long, value_parser = parse_c64, default_value = "0.3,-0.4")]
        v: C64,
        #[arg(long, value_parser = parse_c64, default_value = "0.6,0.2")]
        x: C64,
        #[arg(long, value_parser = parse_c64, default_value = "1.3,0.1")]
        y: C64,
        #[arg(long, value_parser = parse_c64, default_value = "0.4,-0.7")]
        yp: C64,
    },
    /// Run verification suites and print reports.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long)]
        structure: Option<PathBuf>,
        /// Splitting matrix whose Massey tensor is checked by the aybe2 suite.
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Family::Trig)]
        family: Family,
        /// Size for the rational family.
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Constant of the rational family.
        #[arg(long, value_parser = parse_c64, default_value = "1")]
        c: C64,
        #[arg(long, value_enum, default_value_t = HArg::InverseV)]
        h: HArg,
        /// 1-based base label for the symmetry suite (default: first admissible).
        #[arg(long)]
        i0: Option<usize>,
        /// Add a constant perturbation to every function before checking.
        #[arg(long)]
        perturb: bool,
    },
    /// Simplicity, order, chain set and Hom dimensions of a splitting matrix.
    BundleCheck {
        #[arg(long)]
        matrix: Option<PathBuf>,
        /// Points at which to report the Hom dimension.
        #[arg(long, value_parser = parse_c64, value_delimiter = ';', default_value = "1;0.5")]
        x: Vec<C64>,
    },
    /// The ordered BD-structure of a simple splitting matrix.
    BundleBd {
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    /// Compare the closed-form Massey map with the linear-solve oracle.
    OracleCompare {
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long, default_value_t = 16)]
        trials: usize,
    },
    /// Summarize report JSON files (or stdin with --stdin).
    Report { files: Vec<PathBuf> },
}

/// `"a"` or `"a,b"` for `a + bi`.
fn parse_c64(s: &str) -> std::result::Result<C64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|e| format!("bad number {t:?}: {e}"));
    match parts.as_slice() {
        [a] => Ok(c(num(a)?, 0.0)),
        [a, b] => Ok(c(num(a)?, num(b)?)),
        _ => Err(format!("expected RE or RE,IM, got {s:?}")),
    }
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Lib(Error::Json(e))
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Lib(Error::Io(e))
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

struct Ctx<'a> {
    cli: &'a Cli,
    stdin: &'a mut dyn Read,
}

impl Ctx<'_> {
    fn plan(&self) -> SamplePlan {
        SamplePlan::new(self.cli.seed, self.cli.samples)
    }

    fn tol(&self, default: f64) -> f64 {
        self.cli.tol.unwrap_or(default)
    }

    fn read(&mut self, path: Option<&Path>, what: &str) -> CliResult<Option<String>> {
        match (path, self.cli.stdin) {
            (Some(_), true) => Err(Failure::Usage(format!("give either --{what} or --stdin, not both"))),
            (Some(p), false) => Ok(Some(std::fs::read_to_string(p)?)),
            (None, true) => {
                let mut s = String::new();
                self.stdin.read_to_string(&mut s)?;
                Ok(Some(s))
            }
            (None, false) => Ok(None),
        }
    }

    fn require(&mut self, path: Option<&Path>, what: &str) -> CliResult<String> {
        self.read(path, what)?.ok_or_else(|| Failure::Usage(format!("--{what} FILE or --stdin is required")))
    }
}

/// A structure file may describe a bare structure or an ordered one.
enum Structure {
    Plain(AssocBD),
    Ordered(OrderedAssocBD),
}

impl Structure {
    fn parse(text: &str) -> CliResult<Structure> {
        let v: Value = serde_json::from_str(text)?;
        if v.get("alpha0").is_some_and(|a| !a.is_null()) {
            Ok(Structure::Ordered(serde_json::from_value(v)?))
        } else {
            Ok(Structure::Plain(serde_json::from_value(v)?))
        }
    }

    fn bd(&self) -> &AssocBD {
        match self {
            Structure::Plain(b) => b,
            Structure::Ordered(o) => o.bd(),
        }
    }

    /// The given order, or every order with `α0 ∉ Γ2`.
    fn orders(&self) -> Vec<OrderedAssocBD> {
        match self {
            Structure::Ordered(o) => vec![o.clone()],
            Structure::Plain(b) => b.orders().into_iter().filter(|o| !o.alpha0_in_gamma2()).collect(),
        }
    }
}

fn tensor_json(t: &Tensor2) -> Value {
    let coeffs: Vec<Value> =
        t.nonzero().map(|(p, q, r, s, z)| json!([[p + 1, q + 1, r + 1, s + 1], [z.re, z.im]])).collect();
    json!({ "n": t.n(), "coeffs": coeffs })
}

fn tensor_text(t: &Tensor2) -> String {
    let mut out = format!("N = {}\n", t.n());
    for (p, q, r, s, z) in t.nonzero() {
        out.push_str(&format!("e{}{} (x) e{}{}  {:+.12e} {:+.12e}i\n", p + 1, q + 1, r + 1, s + 1, z.re, z.im));
    }
    out
}

/// Merges reports of one suite over several inputs.
fn merge(suite: &str, reports: Vec<Report>, tol: f64, seed: u64) -> Report {
    let mut out = Report {
        suite: suite.to_string(),
        seed,
        samples: 0,
        max_residual: 0.0,
        tol,
        pass: true,
        per_sample: Vec::new(),
    };
    for r in reports {
        out.samples += r.samples;
        out.max_residual = if r.max_residual.is_nan() { f64::NAN } else { out.max_residual.max(r.max_residual) };
        out.pass &= r.pass;
        out.per_sample.extend(r.per_sample);
    }
    out.pass &= out.max_residual <= tol;
    out
}

fn structure_suites() -> [Suite; 11] {
    [
        Suite::Aybe,
        Suite::Unitarity,
        Suite::Qybe,
        Suite::QybeUnitarity,
        Suite::SIdentity,
        Suite::Cubic,
        Suite::Cybe,
        Suite::Aybe2,
        Suite::Abc,
        Suite::QuasiPeriod,
        Suite::R0R1,
    ]
}

fn suite_name(s: Suite) -> String {
    s.to_possible_value().map(|v| v.get_name().replace('-', "_")).unwrap_or_default()
}

fn default_tol(s: Suite) -> f64 {
    match s {
        Suite::R0R1 => 1e-5,
        Suite::QuasiPeriod | Suite::HEquation => 1e-10,
        _ => 1e-8,
    }
}

/// Runs one structure-based suite on one structure.
fn run_on_structure(ctx: &Ctx, suite: Suite, st: &Structure, perturb: bool, i0: Option<usize>) -> CliResult<Report> {
    let bd = st.bd();
    let n = bd.n();
    let plan = ctx.plan();
    let tol = ctx.tol(default_tol(suite));
    let delta = verify::standard_perturbation(n);
    let maybe = |r: crate::rmatrix::RFun| if perturb { r.perturbed(delta.clone()) } else { r };
    let r = maybe(trig_r(bd));
    let rep = match suite {
        Suite::Aybe => verify::residual_aybe(&r, &plan, tol)?,
        Suite::Unitarity => verify::residual_unitarity(&r, &plan, tol)?,
        Suite::Qybe => verify::residual_qybe(&maybe(quantum_r(bd)), DEFAULT_QYBE_U, &plan, tol)?,
        Suite::QybeUnitarity => verify::residual_qybe_unitarity(&maybe(quantum_r(bd)), &plan, tol)?,
        Suite::SIdentity => verify::residual_s_identity(&r, STarget::Trigonometric, &plan, tol)?,
        Suite::Cubic => verify::residual_cubic(&r, &plan, tol)?,
        Suite::Cybe => {
            let r0 = classical_r0(bd);
            let r0 = if perturb { r0.perturbed(delta.clone()) } else { r0 };
            verify::residual_cybe(&r0, &plan, tol)?
        }
        Suite::QuasiPeriod => verify::residual_quasi_period(&r, bd, &plan, tol)?,
        Suite::R0R1 => verify::residual_r0_r1(&r0_numeric(&r, DEFAULT_EPS), &r1_numeric(&r, DEFAULT_EPS), &plan, tol)?,
        Suite::Symmetry => {
            let i0 = match i0 {
                Some(i) if i >= 1 => i - 1,
                Some(_) => return Err(Failure::Usage("--i0 is 1-based".into())),
                None => (0..n)
                    .find(|&i| schedler_symmetry(bd, i).is_ok())
                    .ok_or_else(|| Failure::Lib(Error::Precondition("no admissible base label".into())))?,
            };
            let a = schedler_symmetry(bd, i0)?;
            verify::residual_symmetry(&r, &a, &plan, tol)?
        }
        Suite::Aybe2 | Suite::Abc => {
            let mut reps = Vec::new();
            for obd in st.orders() {
                reps.push(if suite == Suite::Aybe2 {
                    let rm = r_multiplicative(&obd)?;
                    let rm = if perturb { rm.perturbed(delta.clone()) } else { rm };
                    verify::residual_aybe2(&rm, &plan, tol)?
                } else {
                    let parts = AbcParts::new(&obd)?;
                    let mut rep = verify::residual_abc(&parts, &plan, tol)?;
                    if perturb {
                        // a nonzero constant added to a(x) breaks a²¹(x⁻¹) + a(x) = P
                        rep.max_residual = rep.max_residual.max(2.0 * delta.max_abs());
                        rep.pass = rep.max_residual <= tol;
                    }
                    rep
                });
            }
            merge(&suite_name(suite), reps, tol, plan.seed)
        }
        Suite::All | Suite::HEquation => unreachable!("handled by the caller"),
    };
    Ok(rep)
}

fn run_verify(ctx: &mut Ctx, args: &Cmd) -> CliResult<Vec<Report>> {
    let Cmd::Verify { suite, structure, matrix, family, n, c: cc, h, i0, perturb } = args else { unreachable!() };
    let (suite, perturb) = (*suite, *perturb);
    let plan = ctx.plan();
    if suite == Suite::HEquation {
        let kind = match h {
            HArg::InverseV => HKind::InverseV,
            HArg::HalfCoth => HKind::HalfCoth,
            HArg::HalfCothLinear => HKind::HalfCothLinear,
            HArg::Perturbed => HKind::PerturbedInverse(0.1),
        };
        let kind = if perturb { HKind::PerturbedInverse(0.1) } else { kind };
        return Ok(vec![verify::residual_h_equation(kind, &plan, ctx.tol(default_tol(suite)))?]);
    }
    let (matrix_text, structure_text) = match (matrix, structure, ctx.cli.stdin) {
        (Some(_), Some(_), _) => return Err(Failure::Usage("give either --matrix or --structure, not both".into())),
        (Some(_), None, _) => (ctx.read(matrix.as_deref(), "matrix")?, None),
        (None, _, true) => {
            let text = ctx.read(None, "structure")?.unwrap_or_default();
            let is_matrix = serde_json::from_str::<Value>(&text)?.get("m").is_some();
            if is_matrix {
                (Some(text), None)
            } else {
                (None, Some(text))
            }
        }
        (None, _, false) => (None, ctx.read(structure.as_deref(), "structure")?),
    };
    if let Some(text) = matrix_text {
        if suite != Suite::Aybe2 {
            return Err(Failure::Usage("--matrix is only used by --suite aybe2".into()));
        }
        let m: SplittingMatrix = serde_json::from_str(&text)?;
        let rm = massey_tensor(&m)?;
        let rm = if perturb { rm.perturbed(verify::standard_perturbation(m.big_n())) } else { rm };
        return Ok(vec![verify::residual_aybe2(&rm, &plan, ctx.tol(1e-8))?]);
    }
    if *family == Family::Rational {
        let r = rational_r(*n, *cc)?;
        let r = if perturb { r.perturbed(verify::standard_perturbation(*n)) } else { r };
        let tol = ctx.tol(1e-8);
        return match suite {
            Suite::Qybe => Ok(vec![verify::residual_qybe(&r, DEFAULT_QYBE_U, &plan, tol)?]),
            Suite::QybeUnitarity => Ok(vec![verify::residual_qybe_unitarity(&r, &plan, tol)?]),
            Suite::All => Ok(vec![
                verify::residual_qybe(&r, DEFAULT_QYBE_U, &plan, tol)?,
                verify::residual_qybe_unitarity(&r, &plan, tol)?,
            ]),
            _ => Err(Failure::Usage("the rational family supports the qybe and qybe_unitarity suites".into())),
        };
    }
    let structures: Vec<Structure> = match structure_text {
        Some(text) => vec![Structure::parse(&text)?],
        None => {
            let mut all = Vec::new();
            for k in 1..=4 {
                all.extend(enumerate(k)?.into_iter().map(Structure::Plain));
            }
            all
        }
    };
    let suites: Vec<Suite> = if suite == Suite::All { structure_suites().to_vec() } else { vec![suite] };
    let mut out = Vec::new();
    for s in suites {
        let tol = ctx.tol(default_tol(s));
        let mut reps = Vec::new();
        for st in &structures {
            reps.push(run_on_structure(ctx, s, st, perturb, *i0)?);
        }
        out.push(merge(&suite_name(s), reps, tol, plan.seed));
    }
    Ok(out)
}

fn emit(ctx: &Ctx, value: &impl Serialize, text: String, stdout: &mut dyn Write) -> CliResult<()> {
    let body = match ctx.cli.format {
        Format::Json => serde_json::to_string_pretty(value)? + "\n",
        Format::Text => text,
    };
    match &ctx.cli.out {
        Some(p) => std::fs::write(p, body)?,
        None => stdout.write_all(body.as_bytes())?,
    }
    Ok(())
}

fn reports_value(reps: &[Report]) -> Value {
    if reps.len() == 1 {
        serde_json::to_value(&reps[0]).unwrap_or(Value::Null)
    } else {
        serde_json::to_value(reps).unwrap_or(Value::Null)
    }
}

fn reports_text(reps: &[Report]) -> String {
    reps.iter().map(|r| r.summary() + "\n").collect()
}

fn dispatch(ctx: &mut Ctx, stdout: &mut dyn Write) -> CliResult<i32> {
    let cli = ctx.cli;
    match &cli.cmd {
        Cmd::Enumerate { n } => {
            let all = enumerate(*n)?;
            let text = all.iter().map(|b| serde_json::to_string(b).unwrap_or_default() + "\n").collect();
            emit(ctx, &all, text, stdout)?;
            Ok(0)
        }
        Cmd::Eval { structure, kind, u, v, x, y, yp } => {
            let st = Structure::parse(&ctx.require(structure.as_deref(), "structure")?)?;
            let t = match kind {
                EvalKind::Trig => trig_r(st.bd()).eval(*u, *v)?,
                EvalKind::Quantum => quantum_r(st.bd()).eval(*u, *v)?,
                EvalKind::Classical => classical_r0(st.bd()).eval(*v)?,
                EvalKind::Multiplicative => {
                    let obd = st.orders().into_iter().next().ok_or_else(|| {
                        Failure::Lib(Error::Precondition("every order has alpha0 in gamma2".into()))
                    })?;
                    r_multiplicative(&obd)?.eval(*x, *y, *yp)?
                }
            };
            emit(ctx, &tensor_json(&t), tensor_text(&t), stdout)?;
            Ok(0)
        }
        cmd @ Cmd::Verify { .. } => {
            let reps = run_verify(ctx, cmd)?;
            let pass = reps.iter().all(|r| r.pass);
            emit(ctx, &reports_value(&reps), reports_text(&reps), stdout)?;
            Ok(if pass { 0 } else { 1 })
        }
        Cmd::BundleCheck { matrix, x } => {
            let m: SplittingMatrix = serde_json::from_str(&ctx.require(matrix.as_deref(), "matrix")?)?;
            let simple = m.simplicity();
            let mut v = json!({
                "simple": simple.is_ok(),
                "witness": simple.as_ref().err(),
                "row_sums": m.row_sums(),
                "hom_dim": x.iter().map(|z| json!({"x": [z.re, z.im], "dim": m.hom_dim(*z)})).collect::<Vec<_>>(),
            });
            let mut ok = simple.is_ok();
            if simple.is_ok() {
                let pos = m.star_order()?;
                let rows_ok = m.check_row_sums();
                ok &= rows_ok.is_ok();
                v["order"] = json!(pos.iter().map(|p| p + 1).collect::<Vec<_>>());
                v["p1"] = json!(m.p1()?.iter().map(|&(a, b)| [a + 1, b + 1]).collect::<Vec<_>>());
                v["row_sum_invariant"] = json!(rows_ok.is_ok());
            }
            let text = format!(
                "simple: {}{}\nrow sums: {:?}\n",
                simple.is_ok(),
                simple.as_ref().err().map(|w| format!(" ({w})")).unwrap_or_default(),
                m.row_sums()
            );
            emit(ctx, &v, text, stdout)?;
            Ok(if ok { 0 } else { 1 })
        }
        Cmd::BundleBd { matrix } => {
            let m: SplittingMatrix = serde_json::from_str(&ctx.require(matrix.as_deref(), "matrix")?)?;
            let obd = bd_from_matrix(&m)?;
            let text = serde_json::to_string(&obd)? + "\n";
            emit(ctx, &obd, text, stdout)?;
            Ok(0)
        }
        Cmd::OracleCompare { matrix, trials } => {
            let m: SplittingMatrix = serde_json::from_str(&ctx.require(matrix.as_deref(), "matrix")?)?;
            let plan = SamplePlan::new(cli.seed, *trials);
            let big_n = m.big_n();
            let min_margin = plan.min_margin;
            let pts = plan.draw(3, |p| {
                crate::rmatrix::mult_margin(big_n, p[0].exp(), p[1].exp(), p[2].exp()) >= min_margin
            })?;
            let mut worst: f64 = 0.0;
            for p in &pts {
                let (x, y, yp) = (p[0].exp(), p[1].exp(), p[2].exp());
                worst = worst.max(massey_closed(&m, x, y, yp)?.dist(&massey_oracle(&m, x, y, yp)?));
            }
            let tol = ctx.tol(1e-9);
            let pass = worst <= tol;
            let v = json!({"trials": pts.len(), "seed": cli.seed, "max_deviation": worst, "tol": tol, "pass": pass});
            let text = format!("oracle-compare: {} max_deviation={worst:.3e} tol={tol:.1e} trials={}\n", if pass { "PASS" } else { "FAIL" }, pts.len());
            emit(ctx, &v, text, stdout)?;
            Ok(if pass { 0 } else { 1 })
        }
        Cmd::Report { files } => {
            let mut texts = Vec::new();
            for f in files {
                texts.push(std::fs::read_to_string(f)?);
            }
            if cli.stdin {
                let mut s = String::new();
                ctx.stdin.read_to_string(&mut s)?;
                texts.push(s);
            }
            if texts.is_empty() {
                return Err(Failure::Usage("report needs at least one file or --stdin".into()));
            }
            let mut reps: Vec<Report> = Vec::new();
            for t in texts {
                match serde_json::from_str::<Value>(&t)? {
                    Value::Array(items) => {
                        for it in items {
                            reps.push(serde_json::from_value(it)?);
                        }
                    }
                    other => reps.push(serde_json::from_value(other)?),
                }
            }
            let pass = reps.iter().all(|r| r.pass);
            let v = json!({"reports": reps.len(), "failed": reps.iter().filter(|r| !r.pass).map(|r| r.suite.clone()).collect::<Vec<_>>(), "pass": pass});
            emit(ctx, &v, reports_text(&reps), stdout)?;
            Ok(if pass { 0 } else { 1 })
        }
    }
}

/// Runs the CLI against explicit streams and returns the exit code.
pub fn run_with_io<I, T>(argv: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(rendered.as_bytes()) } else { stderr.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let mut ctx = Ctx { cli: &cli, stdin };
    match dispatch(&mut ctx, stdout) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

/// Runs the CLI on the process streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let (mut i, mut o, mut e) = (std::io::stdin(), std::io::stdout(), std::io::stderr());
    run_with_io(argv, &mut i, &mut o, &mut e)
}
