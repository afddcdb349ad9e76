//! The `soliton-forge` command line.

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_rational::BigRational;
use soliton_core::catalog;
use soliton_core::geometry::{determinant, Curvature, SpaceModel, VectorField};
use soliton_core::oracle::{self, NumericScene};
use soliton_core::soliton::{
    ansatz_with, assemble_with_curvature, classify, gradient_check, residual_with_ricci, solve, AffineFamily,
    GradientVerdict, SolveOutcome,
};
use soliton_core::{CatalogError, GeometryError, OracleError, SolitonError};

use crate::error::ParseError;
use crate::eval::{parse_scalar, Scope};
use crate::format::{format_expoly, format_key, format_poly, format_scalar};
use crate::model::{format_model, model_hash, parse_model, ModelDocument};
use crate::report::Report;
use crate::resolve::{resolve, MODELS_ENV};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "soliton-forge",
    version,
    about = "Exact curvature and Ricci-soliton computations for exp-polynomial metrics"
)]
struct Cli {
    /// Print `key=value` lines instead of the human report.
    #[arg(long, global = true)]
    machine: bool,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Christoffel symbols, curvature matrices, Ricci tensor and scalar curvature.
    Curvature { model: String },
    /// Verify or solve the soliton equation.
    Soliton {
        #[command(subcommand)]
        cmd: SolitonCmd,
    },
    /// Decide whether a vector field is a gradient (closedness of its dual 1-form).
    GradientCheck {
        model: String,
        #[arg(long)]
        field: String,
    },
    /// Compare symbolic curvature with finite differences at random points.
    Oracle {
        model: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        points: usize,
        /// Parameter value `name=float`; unset parameters default to 1.
        #[arg(long = "set", allow_hyphen_values = true)]
        set: Vec<String>,
        #[arg(long, default_value_t = oracle::DEFAULT_H)]
        h: f64,
    },
    /// Built-in models.
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
}

#[derive(Subcommand, Debug)]
enum SolitonCmd {
    /// Check `L_X g + Ric = lambda g` for a named field.
    Verify {
        model: String,
        #[arg(long)]
        field: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Parameter value `name=float` used to classify lambda.
        #[arg(long = "set", allow_hyphen_values = true)]
        set: Vec<String>,
    },
    /// Solve for all solitons within the polynomial-exponential ansatz.
    Solve {
        model: String,
        /// Substitute a rational value for a parameter before solving, `name=value`.
        #[arg(long, allow_hyphen_values = true)]
        pin: Vec<String>,
        #[arg(long, default_value_t = soliton_core::soliton::DEFAULT_DEGREE)]
        degree: u32,
        #[arg(long = "freq-depth", default_value_t = soliton_core::soliton::DEFAULT_FREQ_DEPTH)]
        freq_depth: u32,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogCmd {
    List,
    Show { id: String },
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Internal(String),
}

impl From<GeometryError> for Failure {
    fn from(e: GeometryError) -> Self {
        match e {
            GeometryError::AsymmetryDetected { .. } => Failure::Internal(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<SolitonError> for Failure {
    fn from(e: SolitonError) -> Self {
        match e {
            SolitonError::Geometry(g) => g.into(),
            SolitonError::ZeroDivisorPivot { .. } => Failure::Input(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

impl From<CatalogError> for Failure {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::UnknownEntry(_) => Failure::Input(e.to_string()),
            CatalogError::Soliton(s) => s.into(),
            other => Failure::Internal(other.to_string()),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        Failure::Input(e.to_string())
    }
}

struct Loaded {
    label: String,
    doc: ModelDocument,
}

fn located(label: &str, e: ParseError) -> Failure {
    Failure::Input(format!("{label}:{e}"))
}

fn load(arg: &str, models_dir: Option<&PathBuf>) -> Result<Loaded, Failure> {
    let src = resolve(arg, models_dir.map(|p| p.as_path())).map_err(Failure::Input)?;
    let doc = parse_model(&src.text).map_err(|e| located(&src.label, e))?;
    Ok(Loaded { label: src.label, doc })
}

fn header(r: &mut Report, command: &str, m: &Loaded) {
    r.heading(format!("{command}: {}", m.label));
    r.entry("command", command);
    r.entry("model", &m.label);
    r.entry("model_hash", model_hash(&m.doc));
}

fn idx(parts: &[usize]) -> String {
    parts.iter().map(|i| format!("[{}]", i + 1)).collect()
}

fn curvature(m: &Loaded) -> Result<(i32, Report), Failure> {
    let model = &m.doc.model;
    let scope = m.doc.scope();
    let mut r = Report::new();
    header(&mut r, "curvature", m);
    r.entry("dim", model.dim().to_string());
    r.entry("det", format_expoly(&determinant(model), &scope));
    let c = Curvature::compute(model)?;
    let n = model.dim();
    r.heading("Christoffel symbols Gamma^k_ij (i <= j, nonzero)");
    for k in 0..n {
        for i in 0..n {
            for j in i..n {
                let e = c.connection.get(k, i, j);
                if !e.is_zero() {
                    r.entry(format!("christoffel{}", idx(&[k, i, j])), format_expoly(e, &scope));
                }
            }
        }
    }
    r.heading("Curvature R(d_i, d_j) as matrices, entry [i][j][row][col] (i < j, nonzero)");
    for i in 0..n {
        for j in i + 1..n {
            for l in 0..n {
                for k in 0..n {
                    let e = c.riemann.entry(i, j, l, k);
                    if !e.is_zero() {
                        r.entry(format!("riemann{}", idx(&[i, j, l, k])), format_expoly(e, &scope));
                    }
                }
            }
        }
    }
    r.heading("Ricci tensor (i <= j, nonzero)");
    for i in 0..n {
        for j in i..n {
            if !c.ricci.0[i][j].is_zero() {
                r.entry(format!("ricci{}", idx(&[i, j])), format_expoly(&c.ricci.0[i][j], &scope));
            }
        }
    }
    r.heading("Scalar curvature");
    r.entry("scalar", format_expoly(&c.scalar, &scope));
    Ok((EXIT_OK, r))
}

fn field<'a>(m: &'a Loaded, name: &str) -> Result<&'a VectorField, Failure> {
    m.doc.field(name).ok_or_else(|| {
        let known: Vec<&str> = m.doc.fields.iter().map(|(n, _)| n.as_str()).collect();
        Failure::Input(format!("no vectorfield `{name}` in {} (available: {})", m.label, known.join(", ")))
    })
}

fn assignment(model: &SpaceModel, set: &[String]) -> Result<(Vec<(String, f64)>, soliton_core::ParamValues), Failure> {
    let mut pairs: Vec<(String, f64)> = Vec::new();
    if model.uses_eps() {
        pairs.push(("eps".into(), 1.0));
    }
    for p in model.params() {
        pairs.push((p.name.clone(), 1.0));
    }
    for s in set {
        let (name, value) =
            s.split_once('=').ok_or_else(|| Failure::Input(format!("--set expects name=value, got `{s}`")))?;
        let v: f64 =
            value.trim().parse().map_err(|_| Failure::Input(format!("--set {name}: `{value}` is not a number")))?;
        match pairs.iter_mut().find(|(n, _)| n == name) {
            Some(slot) => slot.1 = v,
            None => return Err(Failure::Input(format!("--set: unknown parameter `{name}`"))),
        }
    }
    let refs: Vec<(&str, f64)> = pairs.iter().map(|(n, v)| (n.as_str(), *v)).collect();
    let values = model.param_values(&refs).map_err(|e| Failure::Input(e.to_string()))?;
    Ok((pairs, values))
}

fn verify_cmd(m: &Loaded, field_name: &str, lambda: &str, set: &[String]) -> Result<(i32, Report), Failure> {
    let model = &m.doc.model;
    let scope = m.doc.scope();
    let x = field(m, field_name)?;
    let l = parse_scalar(lambda, &scope).map_err(|e| located("--lambda", e))?;
    let c = Curvature::compute(model)?;
    let res = residual_with_ricci(model, &c.ricci, x, &l);
    let mut r = Report::new();
    header(&mut r, "soliton verify", m);
    r.entry("field", field_name);
    r.entry("lambda", format_scalar(&l, &scope));
    let holds = res.is_zero();
    r.entry("holds", holds.to_string());
    let n = model.dim();
    if !holds {
        r.heading("Residual L_X g + Ric - lambda g (i <= j, nonzero)");
        for i in 0..n {
            for j in i..n {
                if !res.0[i][j].is_zero() {
                    r.entry(format!("residual{}", idx(&[i, j])), format_expoly(&res.0[i][j], &scope));
                }
            }
        }
    }
    let kind = if l.is_param_free() || !set.is_empty() {
        let (_, values) = assignment(model, set)?;
        classify(&l, &values).map(|k| k.as_str().to_string()).unwrap_or_else(|_| "undefined".to_string())
    } else {
        "depends-on-parameters".to_string()
    };
    r.entry("kind", kind);
    Ok((if holds { EXIT_OK } else { EXIT_FAILED }, r))
}

fn parse_pin(s: &str, model: &SpaceModel) -> Result<(String, BigRational), Failure> {
    let (name, value) =
        s.split_once('=').ok_or_else(|| Failure::Input(format!("--pin expects name=value, got `{s}`")))?;
    if model.param_index(name).is_none() {
        return Err(Failure::Input(format!("--pin: unknown parameter `{name}`")));
    }
    let q = parse_scalar(value, &Scope::new(&[], &[], false))
        .map_err(|e| located("--pin", e))?
        .as_rational()
        .ok_or_else(|| Failure::Input(format!("--pin {name}: `{value}` is not a rational number")))?;
    Ok((name.to_string(), q))
}

fn solve_cmd(m: &Loaded, pins: &[String], degree: u32, freq_depth: u32) -> Result<(i32, Report), Failure> {
    let mut model = m.doc.model.clone();
    let mut pin_text = Vec::new();
    for p in pins {
        let (name, q) = parse_pin(p, &model)?;
        model = model.pin(&name, &q).map_err(|e| Failure::Input(e.to_string()))?;
        pin_text.push(format!("{name}={}", crate::format::format_rational(&q)));
    }
    let scope = m.doc.scope();
    let mut r = Report::new();
    header(&mut r, "soliton solve", m);
    r.entry("pins", if pin_text.is_empty() { "none".to_string() } else { pin_text.join(",") });
    let curv = Curvature::compute(&model)?;
    let ansatz = ansatz_with(&model, degree, freq_depth)?;
    let system = assemble_with_curvature(&model, &curv, &ansatz)?;
    r.entry("ansatz.degree", degree.to_string());
    r.entry("ansatz.freq_depth", freq_depth.to_string());
    r.entry("ansatz.columns", system.ncols().to_string());
    r.entry("system.rows", system.rows.len().to_string());
    let describe_col = |c: usize| -> String {
        match ansatz.lambda_column() {
            Some(l) if l == c => "lambda".to_string(),
            _ => {
                let b = &ansatz.basis()[c];
                format!("X[{}]:{}", b.component + 1, format_key(&b.key, &scope))
            }
        }
    };
    match solve(&system)? {
        SolveOutcome::Infeasible(cert) => {
            r.entry("status", "infeasible");
            r.heading("Infeasibility certificate: a reduced equation with no solution");
            r.entry("certificate.slot", idx(&[cert.origin.i, cert.origin.j]));
            r.entry("certificate.key", format_key(&cert.origin.key, &scope));
            r.entry("certificate.row", format!("0 = {}", format_scalar(&cert.rhs, &scope)));
            r.note("The equation for this coefficient reduces to 0 = nonzero, so no field in the ansatz solves the system.");
            Ok((EXIT_FAILED, r))
        }
        SolveOutcome::Solved(s) => {
            r.entry("status", "solved");
            r.entry("system.rank", s.rank.to_string());
            r.entry("lambda", format_scalar(&s.lambda, &scope));
            r.entry("lambda.forced", s.lambda_forced().to_string());
            r.entry("free_constants", s.free_constants().to_string());
            let dens: Vec<String> = s.pivot_denominators.iter().map(|p| format_poly(p, &scope)).collect();
            r.entry("pivot_denominators", if dens.is_empty() { "none".to_string() } else { dens.join(",") });
            r.heading("Particular solution (free constants set to 0)");
            for (i, c) in s.particular.0.iter().enumerate() {
                r.entry(format!("particular.X{}", idx(&[i])), format_expoly(c, &scope));
            }
            r.heading("Homogeneous directions (one per free ansatz column)");
            for (k, d) in s.directions.iter().enumerate() {
                let p = format!("direction[{}]", k + 1);
                r.entry(format!("{p}.column"), describe_col(d.free_column));
                for (i, c) in d.field.0.iter().enumerate() {
                    if !c.is_zero() {
                        r.entry(format!("{p}.X{}", idx(&[i])), format_expoly(c, &scope));
                    }
                }
                r.entry(format!("{p}.lambda"), format_scalar(&d.lambda, &scope));
            }
            if s.lambda_forced() && !m.doc.fields.is_empty() {
                r.heading("Named fields compared with the solution set");
                r.note("Free constants of a field are the parameters that do not occur in the metric.");
                let family = AffineFamily::from_solution(&s);
                let free: Vec<usize> = (0..model.nparams())
                    .filter(|&p| !model.metric().iter().flatten().any(|e| e.uses_param(p)))
                    .collect();
                for (name, f) in &m.doc.fields {
                    let p = format!("field.{name}");
                    match AffineFamily::from_parametric(f, &s.lambda, &free) {
                        Some(known) => {
                            r.entry(format!("{p}.free_constants"), known.dimension().to_string());
                            r.entry(format!("{p}.contained"), family.contains(&known).to_string());
                            r.entry(format!("{p}.equal"), family.same_as(&known).to_string());
                        }
                        None => r.entry(format!("{p}.contained"), "not-affine"),
                    }
                }
            }
            Ok((EXIT_OK, r))
        }
    }
}

fn gradient_cmd(m: &Loaded, name: &str) -> Result<(i32, Report), Failure> {
    let scope = m.doc.scope();
    let x = field(m, name)?;
    let mut r = Report::new();
    header(&mut r, "gradient-check", m);
    r.entry("field", name);
    match gradient_check(&m.doc.model, x) {
        GradientVerdict::Gradient => {
            r.entry("verdict", "gradient");
            r.note("The dual 1-form is closed; on R^n the field is the gradient of a potential.");
        }
        GradientVerdict::NotGradient { i, j, witness } => {
            r.entry("verdict", "not-gradient");
            r.entry("witness.slot", idx(&[i, j]));
            r.entry("witness.value", format_expoly(&witness, &scope));
            r.note("The witness is a nonzero component of d(X^flat), so no potential exists.");
        }
    }
    Ok((EXIT_OK, r))
}

fn oracle_cmd(m: &Loaded, seed: u64, points: usize, set: &[String], h: f64) -> Result<(i32, Report), Failure> {
    let model = &m.doc.model;
    let (pairs, values) = assignment(model, set)?;
    let curv = Curvature::compute(model)?;
    let scene = NumericScene::sampled(model.clone(), values, points, seed).with_step(h);
    let rep = oracle::run(&scene, &curv)?;
    let mut r = Report::new();
    header(&mut r, "oracle", m);
    r.entry("seed", seed.to_string());
    r.entry("points", points.to_string());
    r.entry("h", format!("{h:e}"));
    r.entry("rel_tol", format!("{:e}", scene.rel));
    r.entry("abs_tol", format!("{:e}", scene.abs));
    let assign: Vec<String> = pairs.iter().map(|(n, v)| format!("{n}:{v}")).collect();
    r.entry("params", if assign.is_empty() { "none".to_string() } else { assign.join(",") });
    for (name, c) in [("christoffel", rep.christoffel), ("ricci", rep.ricci), ("scalar", rep.scalar)] {
        r.heading(format!("{name}: finite differences vs symbolic"));
        r.entry(format!("{name}.max_abs"), format!("{:.3e}", c.max_abs));
        r.entry(format!("{name}.max_rel"), format!("{:.3e}", c.max_rel));
        r.entry(format!("{name}.pass"), c.pass.to_string());
    }
    r.entry("status", if rep.pass() { "pass" } else { "fail" });
    Ok((if rep.pass() { EXIT_OK } else { EXIT_FAILED }, r))
}

/// A catalog entry as a model document.
pub fn catalog_document(e: &catalog::CatalogEntry) -> ModelDocument {
    ModelDocument {
        model: e.model.clone(),
        fields: e.solutions.iter().map(|s| (s.name.clone(), s.field.clone())).collect(),
        scalars: Vec::new(),
    }
}

fn catalog_cmd(cmd: &CatalogCmd) -> Result<(i32, Report), Failure> {
    let mut r = Report::new();
    match cmd {
        CatalogCmd::List => {
            r.heading("catalog");
            r.entry("command", "catalog list");
            for (k, (id, summary)) in catalog::list().into_iter().enumerate() {
                r.entry(format!("entry[{}].id", k + 1), id);
                r.entry(format!("entry[{}].summary", k + 1), summary);
            }
        }
        CatalogCmd::Show { id } => {
            let e = catalog::get(id)?;
            let doc = catalog_document(&e);
            let scope = doc.scope();
            r.heading(format!("catalog entry {id}: {}", e.summary));
            r.entry("command", "catalog show");
            r.entry("id", e.id);
            r.entry("signature", e.signature);
            r.entry("model_hash", model_hash(&doc));
            r.entry("coords", e.model.coords().join(","));
            let n = e.model.dim();
            r.heading("Metric (i <= j, nonzero)");
            for i in 0..n {
                for j in i..n {
                    if !e.model.g(i, j).is_zero() {
                        r.entry(format!("metric{}", idx(&[i, j])), format_expoly(e.model.g(i, j), &scope));
                    }
                }
            }
            for s in &e.solutions {
                r.heading(format!("Known soliton {}", s.name));
                for (i, c) in s.field.0.iter().enumerate() {
                    r.entry(format!("solution.{}.X{}", s.name, idx(&[i])), format_expoly(c, &scope));
                }
                r.entry(format!("solution.{}.lambda", s.name), format_scalar(&s.lambda, &scope));
            }
            r.heading("Model file");
            for line in format_model(&doc).lines() {
                r.note(line);
            }
        }
    }
    Ok((EXIT_OK, r))
}

fn dispatch(cli: &Cli, models_dir: Option<&PathBuf>) -> Result<(i32, Report), Failure> {
    match &cli.cmd {
        Command::Curvature { model } => curvature(&load(model, models_dir)?),
        Command::Soliton { cmd: SolitonCmd::Verify { model, field, lambda, set } } => {
            verify_cmd(&load(model, models_dir)?, field, lambda, set)
        }
        Command::Soliton { cmd: SolitonCmd::Solve { model, pin, degree, freq_depth } } => {
            solve_cmd(&load(model, models_dir)?, pin, *degree, *freq_depth)
        }
        Command::GradientCheck { model, field } => gradient_cmd(&load(model, models_dir)?, field),
        Command::Oracle { model, seed, points, set, h } => {
            oracle_cmd(&load(model, models_dir)?, *seed, *points, set, *h)
        }
        Command::Catalog { cmd } => catalog_cmd(cmd),
    }
}

/// Runs one invocation; `models_dir` stands in for `$SOLITON_FORGE_MODELS`.
pub fn run_with<I, T>(args: I, models_dir: Option<PathBuf>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(&cli, models_dir.as_ref()) {
        Ok((code, report)) => {
            let stdout = if cli.machine { report.machine() } else { report.human() };
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(Failure::Input(msg)) => {
            Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: format!("error: {msg}\n") }
        }
        Err(Failure::Internal(msg)) => Outcome {
            code: EXIT_INTERNAL,
            stdout: String::new(),
            stderr: format!("internal invariant violated: {msg}\n"),
        },
    }
}

/// Runs with the model directory taken from the environment.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(args, std::env::var_os(MODELS_ENV).map(PathBuf::from))
}
