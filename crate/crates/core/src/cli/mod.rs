//! The `harmonia` command-line tool.
//!
//! Exit codes: 0 success, 1 malformed input, 2 validation failure, 3 solver failure.

pub mod format;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::value::RawValue;

use crate::error::{Error, Result};
use crate::harmonic::{gauss_decompose, harmonic_projection, reconstruct_harmonic, restrict_to_conic};
use crate::invariants::{apolar, clebsch_upsilon, polar, transvectant};
use crate::jweinberg::{ck_pi, null_sandwich_check, MAX_TENSOR_TWICE_J};
use crate::numcore::{HalfInt, Scalar};
use crate::poles::{maxwell_poles, verify_decomposition, MaxwellOptions};
use crate::poly::{BinaryForm, TernaryPoly};
use crate::spinor::TwoSpinor;

use format::{
    exact_to_json, from_json, to_json, Binary, BinaryFile, DecompositionFile, HarmonicFile, Num, Ternary,
};

pub const MAX_DEGREE_VAR: &str = "HARMONIA_MAX_DEGREE";
pub const DEFAULT_MAX_DEGREE: u32 = 64;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MALFORMED: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "harmonia", version, about = "Solid harmonics, binary quantics and Maxwell poles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Input file (JSON).
    #[arg(short, long, global = true)]
    pub input: Option<PathBuf>,
    /// Output file; stdout when absent. A directory in batch mode.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Project onto the harmonic part before extracting poles.
    #[arg(long, global = true)]
    pub project: bool,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Run the command on every *.json file in this directory.
    #[arg(long, global = true)]
    pub batch: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Maxwell poles, C and G of a real harmonic.
    Poles,
    /// Harmonic projection of a ternary form.
    Project,
    /// Gauss decomposition f = Σ r^{2s} Y_{n−2s}.
    Gauss,
    /// Restriction of a ternary form to the null cone, as a binary form.
    Restrict,
    /// The harmonic whose restriction is the given binary form.
    Reconstruct {
        /// Write the components φ^M instead of monomials.
        #[arg(long)]
        phi: bool,
    },
    /// r-th transvectant of two binary forms.
    Transvect {
        #[arg(long)]
        with: PathBuf,
        #[arg(short = 'r', long)]
        order: usize,
    },
    /// Polar of the input against a second binary form and the apolarity verdict.
    Apolar {
        #[arg(long)]
        with: PathBuf,
    },
    /// Clebsch's Υ of a harmonic.
    Upsilon,
    /// c_k(π) table and null-sandwich checks for spin j (e.g. 2 or 3/2).
    Jw {
        #[arg(long)]
        j: String,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Re-check a decomposition file against its source harmonic.
    Verify {
        #[arg(long)]
        source: PathBuf,
    },
}

/// Result of one command: a JSON document and a text rendering.
#[derive(Clone, Debug)]
pub struct Report {
    pub json: String,
    pub text: String,
    /// Nonzero when the command ran but its verdict is a validation failure.
    pub code: i32,
}

impl Report {
    fn new<T: Serialize>(value: &T, text: String) -> Result<Self> {
        Ok(Report { json: to_json(value)?, text, code: EXIT_OK })
    }

    fn render(&self, format: OutputFormat) -> &str {
        match format {
            OutputFormat::Json => &self.json,
            OutputFormat::Text => &self.text,
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => EXIT_MALFORMED,
        Error::Argument(_) | Error::DegreeMismatch { .. } | Error::NotHarmonic { .. } | Error::NotReal(_) | Error::Weight(_) => EXIT_VALIDATION,
        Error::Solver(_) | Error::Consistency(_) => EXIT_SOLVER,
    }
}

/// Settings shared by every command.
#[derive(Clone, Debug)]
pub struct Context {
    pub tol: f64,
    pub seed: u64,
    pub project: bool,
    pub max_degree: u32,
}

pub fn max_degree_from_env() -> Result<u32> {
    match std::env::var(MAX_DEGREE_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| format::parse_error(MAX_DEGREE_VAR, format!("expected a non-negative integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_DEGREE),
    }
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| format::parse_error(path.display().to_string(), e.to_string()))
}

fn read_harmonic(path: &Path, ctx: &Context) -> Result<Ternary> {
    let file: HarmonicFile = from_json(&read_text(path)?, &path.display().to_string())?;
    check_degree(file.degree(), ctx)?;
    file.to_ternary(ctx.tol)
}

fn read_binary(path: &Path, ctx: &Context) -> Result<Binary> {
    let file: BinaryFile = from_json(&read_text(path)?, &path.display().to_string())?;
    check_degree(file.degree as u32, ctx)?;
    file.to_binary()
}

fn check_degree(degree: u32, ctx: &Context) -> Result<()> {
    if degree > ctx.max_degree {
        return Err(Error::Argument(format!("degree {degree} exceeds {MAX_DEGREE_VAR} = {}", ctx.max_degree)));
    }
    Ok(())
}

fn require_input(input: Option<&Path>) -> Result<&Path> {
    input.ok_or_else(|| format::parse_error("arguments", "missing --input"))
}

fn parse_spin(text: &str) -> Result<HalfInt> {
    let bad = || format::parse_error("--j", format!("expected an integer or half-integer such as 3/2, got {text:?}"));
    let twice = match text.trim().split_once('/') {
        Some((n, "2")) => n.trim().parse::<i64>().map_err(|_| bad())?,
        Some(_) => return Err(bad()),
        None => 2 * text.trim().parse::<i64>().map_err(|_| bad())?,
    };
    if twice < 0 {
        return Err(bad());
    }
    Ok(HalfInt::from_twice(twice))
}

fn cmd_poles(input: &Path, ctx: &Context) -> Result<Report> {
    let phi = read_harmonic(input, ctx)?;
    let options = MaxwellOptions { harmonic_tol: ctx.tol.max(1e-12), real_tol: ctx.tol.max(1e-12), project: ctx.project, seed: ctx.seed };
    let d = match &phi {
        Ternary::Exact(p) => maxwell_poles(p, &options)?,
        Ternary::Float(p) => maxwell_poles(p, &options)?,
    };
    let mut text = format!("degree {}\nC = {:.16e}\npoles:\n", d.degree, d.c);
    for p in &d.poles {
        let [x, y, z] = p.direction;
        let _ = writeln!(text, "  ({x:.16e}, {y:.16e}, {z:.16e}) x{}", p.multiplicity);
    }
    let g = d.g.map(|c| Complex64::new(c.re, 0.0)).prune(0.0);
    let _ = writeln!(text, "G = {}", poly_text(&g));
    let _ = write!(text, "residual = {:.3e}", d.diagnostics.residual);
    Report::new(&DecompositionFile::from_decomposition(&d), text)
}

fn poly_text<S: Scalar>(p: &TernaryPoly<S>) -> String {
    if p.is_zero() {
        return "0".into();
    }
    p.terms().map(|(e, c)| format!("({}) x^{} y^{} z^{}", scalar_text(c), e[0], e[1], e[2])).collect::<Vec<_>>().join(" + ")
}

fn scalar_text<S: Scalar>(c: &S) -> String {
    match (c as &dyn std::any::Any).downcast_ref::<crate::numcore::ExactScalar>() {
        Some(e) => e.to_string(),
        None => {
            let z = c.to_complex();
            if z.im == 0.0 {
                format!("{:.16e}", z.re)
            } else {
                format!("{:.16e}{:+.16e}i", z.re, z.im)
            }
        }
    }
}

fn binary_text<S: Scalar>(b: &BinaryForm<S>) -> String {
    b.coeffs().iter().enumerate().map(|(k, c)| format!("b{k} = {}", scalar_text(c))).collect::<Vec<_>>().join("\n")
}

fn cmd_project(input: &Path, ctx: &Context) -> Result<Report> {
    fn run<S: Scalar>(p: &TernaryPoly<S>) -> Result<Report> {
        let h = harmonic_projection(p);
        Report::new(&HarmonicFile::from_poly(&h), poly_text(&h))
    }
    match read_harmonic(input, ctx)? {
        Ternary::Exact(p) => run(&p),
        Ternary::Float(p) => run(&p),
    }
}

#[derive(Serialize)]
struct GaussOut {
    #[serde(rename = "type")]
    kind: &'static str,
    degree: u32,
    /// Y_n, Y_{n−2}, ... with f = Σ_s r^{2s} Y_{n−2s}.
    components: Vec<HarmonicFile>,
}

fn cmd_gauss(input: &Path, ctx: &Context) -> Result<Report> {
    fn run<S: Scalar>(p: &TernaryPoly<S>) -> Result<Report> {
        let g = gauss_decompose(p);
        let text = g
            .components
            .iter()
            .enumerate()
            .map(|(s, y)| format!("r^{} * [{}]", 2 * s, poly_text(y)))
            .collect::<Vec<_>>()
            .join("\n");
        let out = GaussOut { kind: "gauss", degree: p.degree(), components: g.components.iter().map(HarmonicFile::from_poly).collect() };
        Report::new(&out, text)
    }
    match read_harmonic(input, ctx)? {
        Ternary::Exact(p) => run(&p),
        Ternary::Float(p) => run(&p),
    }
}

const R2_NOTE: &str = "the input is a multiple of r^2, so its restriction to the null cone vanishes";

fn cmd_restrict(input: &Path, ctx: &Context) -> Result<Report> {
    fn run<S: Scalar>(p: &TernaryPoly<S>, tol: f64) -> Result<Report> {
        let b = restrict_to_conic(p);
        let vanishes = if S::is_exact() { b.is_zero() } else { b.norm() <= tol * p.norm().max(f64::MIN_POSITIVE) };
        let mut file = BinaryFile::from_form(&b);
        let mut text = binary_text(&b);
        if vanishes {
            file = BinaryFile::from_form(&BinaryForm::<S>::zero(b.degree()));
            file.note = Some(R2_NOTE.into());
            text = format!("zero form of degree {}\nnote: {R2_NOTE}", b.degree());
        }
        Report::new(&file, text)
    }
    match read_harmonic(input, ctx)? {
        Ternary::Exact(p) => run(&p, ctx.tol),
        Ternary::Float(p) => run(&p, ctx.tol),
    }
}

fn cmd_reconstruct(input: &Path, ctx: &Context, phi: bool) -> Result<Report> {
    fn run<S: Scalar>(b: &BinaryForm<S>, phi: bool) -> Result<Report> {
        if b.degree() % 2 != 0 {
            return Err(Error::Argument(format!("restrictions have even degree, got {}", b.degree())));
        }
        if phi {
            let form = crate::harmonic::reconstruct_from_conic(b)?;
            let text = (-(form.l as i64)..=form.l as i64).map(|m| format!("phi^{m} = {}", scalar_text(&form.component(m)))).collect::<Vec<_>>().join("\n");
            return Report::new(&HarmonicFile::from_normal_form(&form), text);
        }
        let t = reconstruct_harmonic(b)?;
        Report::new(&HarmonicFile::from_poly(&t), poly_text(&t))
    }
    match read_binary(input, ctx)? {
        Binary::Exact(b) => run(&b, phi),
        Binary::Float(b) => run(&b, phi),
    }
}

/// Both forms on the exact backend when possible, otherwise both as floats.
fn binary_pair(a: Binary, b: Binary) -> std::result::Result<(BinaryForm<crate::numcore::ExactScalar>, BinaryForm<crate::numcore::ExactScalar>), (BinaryForm<Complex64>, BinaryForm<Complex64>)> {
    match (a, b) {
        (Binary::Exact(f), Binary::Exact(g)) => Ok((f, g)),
        (f, g) => {
            let float = |x: Binary| match x {
                Binary::Exact(e) => e.to_complex(),
                Binary::Float(c) => c,
            };
            Err((float(f), float(g)))
        }
    }
}

fn cmd_transvect(input: &Path, with: &Path, order: usize, ctx: &Context) -> Result<Report> {
    fn run<S: Scalar>(f: &BinaryForm<S>, g: &BinaryForm<S>, order: usize) -> Result<Report> {
        let t = transvectant(f, g, order)?;
        Report::new(&BinaryFile::from_form(&t), binary_text(&t))
    }
    match binary_pair(read_binary(input, ctx)?, read_binary(with, ctx)?) {
        Ok((f, g)) => run(&f, &g, order),
        Err((f, g)) => run(&f, &g, order),
    }
}

#[derive(Serialize)]
struct ApolarOut {
    apolar: bool,
    polar: BinaryFile,
}

fn cmd_apolar(input: &Path, with: &Path, ctx: &Context) -> Result<Report> {
    fn run<S: Scalar>(f: &BinaryForm<S>, g: &BinaryForm<S>, tol: f64) -> Result<Report> {
        if g.degree() > f.degree() {
            return Err(Error::Argument(format!("the second form has degree {} above the first's {}", g.degree(), f.degree())));
        }
        let p = polar(f, g);
        let verdict = apolar(f, g, tol);
        let text = format!("apolar: {verdict}\npolar:\n{}", binary_text(&p));
        Report::new(&ApolarOut { apolar: verdict, polar: BinaryFile::from_form(&p) }, text)
    }
    match binary_pair(read_binary(input, ctx)?, read_binary(with, ctx)?) {
        Ok((f, g)) => run(&f, &g, ctx.tol),
        Err((f, g)) => run(&f, &g, ctx.tol),
    }
}

fn cmd_upsilon(input: &Path, ctx: &Context) -> Result<Report> {
    fn run<S: Scalar>(p: &TernaryPoly<S>) -> Result<Report> {
        let u = clebsch_upsilon(p)?;
        Report::new(&HarmonicFile::from_poly(&u), poly_text(&u))
    }
    match read_harmonic(input, ctx)? {
        Ternary::Exact(p) => run(&p),
        Ternary::Float(p) => run(&p),
    }
}

#[derive(Serialize)]
struct SandwichOut {
    spinor: [[Num; 2]; 2],
    traceless_residual: Num,
    tensor_constant: [Num; 2],
    tensor_spread: Num,
    quoted_rho: [Num; 2],
    expected_rho: [Num; 2],
    harmonic_constant: [Num; 2],
    harmonic_spread: Num,
    quoted_constant: [Num; 2],
    generating_constant: [Num; 2],
    samples: usize,
}

#[derive(Serialize)]
struct JwOut {
    j: String,
    c: BTreeMap<String, serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sandwich: Option<SandwichOut>,
}

fn pair(z: Complex64) -> [Num; 2] {
    [Num(z.re), Num(z.im)]
}

fn cmd_jw(spin: &str, samples: usize, ctx: &Context) -> Result<Report> {
    let j = parse_spin(spin)?;
    check_degree(j.twice() as u32, ctx)?;
    let table = ck_pi(j)?;
    let c: BTreeMap<String, serde_json::Value> = table.coefficients.iter().map(|(k, v)| (format!("c_{k}"), exact_to_json(v))).collect();
    let mut text = format!("j = {j}\n");
    for (k, v) in &table.coefficients {
        let _ = writeln!(text, "c_{k}(pi) = {v}");
    }
    let sandwich = if j.twice() <= MAX_TENSOR_TWICE_J {
        let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
        let psi = TwoSpinor::random_unit(&mut rng);
        let r = null_sandwich_check(j, psi, samples, ctx.seed)?;
        let _ = write!(
            text,
            "traceless residual = {:.3e}\ntensor constant = {} (quoted rho = {})\nharmonic constant = {} (quoted {}, generating {})",
            r.traceless_residual,
            scalar_text(&r.tensor_constant),
            scalar_text(&r.quoted_rho),
            scalar_text(&r.harmonic_constant),
            scalar_text(&r.quoted_constant),
            scalar_text(&r.generating_constant)
        );
        Some(SandwichOut {
            spinor: [pair(psi.xi), pair(psi.eta)],
            traceless_residual: Num(r.traceless_residual),
            tensor_constant: pair(r.tensor_constant),
            tensor_spread: Num(r.tensor_spread),
            quoted_rho: pair(r.quoted_rho),
            expected_rho: pair(r.expected_rho),
            harmonic_constant: pair(r.harmonic_constant),
            harmonic_spread: Num(r.harmonic_spread),
            quoted_constant: pair(r.quoted_constant),
            generating_constant: pair(r.generating_constant),
            samples: r.samples,
        })
    } else {
        text = text.trim_end().to_string();
        None
    };
    Report::new(&JwOut { j: j.to_string(), c, sandwich }, text)
}

#[derive(Serialize)]
struct VerifyOut {
    passed: bool,
    coefficient_residual: Num,
    cone_residual: Num,
    unit_norm_deviation: Num,
    multiplicity_total: u32,
    cone_points: usize,
    tolerance: Num,
}

fn cmd_verify(input: &Path, source: &Path, ctx: &Context) -> Result<Report> {
    let file: DecompositionFile = from_json(&read_text(input)?, &input.display().to_string())?;
    let d = file.to_decomposition()?;
    let phi = read_harmonic(source, ctx)?;
    if phi.degree() != d.degree {
        return Err(Error::DegreeMismatch { expected: phi.degree(), found: d.degree });
    }
    let tol = ctx.tol;
    let r = match &phi {
        Ternary::Exact(p) => verify_decomposition(&harmonic_if(p, ctx.project), &d, tol, ctx.seed),
        Ternary::Float(p) => verify_decomposition(&harmonic_if(p, ctx.project), &d, tol, ctx.seed),
    };
    let text = format!(
        "{}\ncoefficient residual = {:.3e}\ncone residual = {:.3e}\nunit norm deviation = {:.3e}\nmultiplicities = {} (degree {})",
        if r.passed { "PASS" } else { "FAIL" },
        r.coefficient_residual,
        r.cone_residual,
        r.unit_norm_deviation,
        r.multiplicity_total,
        d.degree
    );
    let out = VerifyOut {
        passed: r.passed,
        coefficient_residual: Num(r.coefficient_residual),
        cone_residual: Num(r.cone_residual),
        unit_norm_deviation: Num(r.unit_norm_deviation),
        multiplicity_total: r.multiplicity_total,
        cone_points: r.cone_points,
        tolerance: Num(r.tolerance),
    };
    let mut report = Report::new(&out, text)?;
    if !r.passed {
        report.code = EXIT_VALIDATION;
    }
    Ok(report)
}

fn harmonic_if<S: Scalar>(p: &TernaryPoly<S>, project: bool) -> TernaryPoly<S> {
    if project {
        harmonic_projection(p)
    } else {
        p.clone()
    }
}

/// Runs one command against one input file.
pub fn execute(command: &Command, input: Option<&Path>, ctx: &Context) -> Result<Report> {
    match command {
        Command::Poles => cmd_poles(require_input(input)?, ctx),
        Command::Project => cmd_project(require_input(input)?, ctx),
        Command::Gauss => cmd_gauss(require_input(input)?, ctx),
        Command::Restrict => cmd_restrict(require_input(input)?, ctx),
        Command::Reconstruct { phi } => cmd_reconstruct(require_input(input)?, ctx, *phi),
        Command::Transvect { with, order } => cmd_transvect(require_input(input)?, with, *order, ctx),
        Command::Apolar { with } => cmd_apolar(require_input(input)?, with, ctx),
        Command::Upsilon => cmd_upsilon(require_input(input)?, ctx),
        Command::Jw { j, samples } => cmd_jw(j, *samples, ctx),
        Command::Verify { source } => cmd_verify(require_input(input)?, source, ctx),
    }
}

fn write_output(path: Option<&Path>, body: &str, stdout: &mut dyn Write) -> Result<()> {
    let io = |e: std::io::Error| Error::Argument(format!("cannot write output: {e}"));
    match path {
        Some(p) => std::fs::write(p, format!("{body}\n")).map_err(io),
        None => writeln!(stdout, "{body}").map_err(io),
    }
}

fn batch_inputs(dir: &Path) -> Result<Vec<PathBuf>> {
    let entries = std::fs::read_dir(dir).map_err(|e| format::parse_error(dir.display().to_string(), e.to_string()))?;
    let mut files: Vec<PathBuf> = entries.filter_map(|e| e.ok().map(|e| e.path())).filter(|p| p.extension().is_some_and(|x| x == "json")).collect();
    files.sort();
    Ok(files)
}

fn run_batch(cli: &Cli, dir: &Path, ctx: &Context, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let files = match batch_inputs(dir) {
        Ok(f) => f,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return exit_code(&e);
        }
    };
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(files.len().max(1));
    let mut results: Vec<Option<Result<Report>>> = vec![None; files.len()];
    std::thread::scope(|scope| {
        for (chunk_files, chunk_out) in files.chunks(files.len().div_ceil(workers).max(1)).zip(results.chunks_mut(files.len().div_ceil(workers).max(1))) {
            scope.spawn(move || {
                for (f, slot) in chunk_files.iter().zip(chunk_out.iter_mut()) {
                    *slot = Some(execute(&cli.command, Some(f), ctx));
                }
            });
        }
    });
    let mut code = EXIT_OK;
    let mut combined: BTreeMap<String, Box<RawValue>> = BTreeMap::new();
    let mut text = String::new();
    if let Some(out) = &cli.output {
        if let Err(e) = std::fs::create_dir_all(out) {
            let _ = writeln!(stderr, "error: cannot create {}: {e}", out.display());
            return EXIT_MALFORMED;
        }
    }
    for (f, r) in files.iter().zip(results) {
        let name = f.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        let outcome = r.expect("every batch slot is filled");
        let (body, raw) = match &outcome {
            Ok(report) => {
                code = code.max(report.code);
                (report.render(cli.format).to_string(), report.json.clone())
            }
            Err(e) => {
                let c = exit_code(e);
                code = code.max(c);
                let _ = writeln!(stderr, "{name}: error: {e}");
                let json = serde_json::json!({ "error": e.to_string(), "exit_code": c }).to_string();
                (format!("error: {e}"), json)
            }
        };
        match &cli.output {
            Some(out) => {
                let target = out.join(&name);
                if let Err(e) = write_output(Some(&target), &body, stdout) {
                    let _ = writeln!(stderr, "error: {e}");
                    code = code.max(EXIT_MALFORMED);
                }
            }
            None => {
                combined.insert(name.clone(), RawValue::from_string(raw).expect("reports are valid JSON"));
                let _ = writeln!(text, "== {name}\n{body}");
            }
        }
    }
    if cli.output.is_none() {
        let body = match cli.format {
            OutputFormat::Json => serde_json::to_string_pretty(&combined).unwrap_or_default(),
            OutputFormat::Text => text.trim_end().to_string(),
        };
        let _ = writeln!(stdout, "{body}");
    }
    code
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let shown = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{shown}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{shown}");
                    EXIT_MALFORMED
                }
            };
        }
    };
    let max_degree = match max_degree_from_env() {
        Ok(d) => d,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return exit_code(&e);
        }
    };
    let ctx = Context { tol: cli.tol, seed: cli.seed, project: cli.project, max_degree };
    if let Some(dir) = &cli.batch {
        return run_batch(&cli, dir, &ctx, stdout, stderr);
    }
    let outcome = execute(&cli.command, cli.input.as_deref(), &ctx).and_then(|report| {
        write_output(cli.output.as_deref(), report.render(cli.format), stdout)?;
        Ok(report.code)
    });
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}
