//! Command-line front end. Exit codes: 0 success, 1 check or tolerance
//! failure, 2 usage or I/O failure.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::Vector3;

use crate::algebra::{read_algebra_file, Builtin, DualVector, LieAlgebra};
use crate::conformal::{self, TrajectoryParams};
use crate::error::{Error, Result};
use crate::galilei::{self, ReducedState};
use crate::lie_poisson::{flow_exact_trajectory, flow_rk4, killing_casimir, HamiltonianSpec, Observable};
use crate::orbit::OrbitReport;
use crate::trajectory::Trajectory;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "coadjoint", version, about = "Lie-Poisson dynamics on coadjoint orbits")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify antisymmetry and the Jacobi identity of an algebra.
    Check(CheckArgs),
    /// Integrate the Lie-Poisson flow of a linear Hamiltonian.
    Flow(FlowArgs),
    /// Stabilizer, invariants and Kirillov form at a point.
    Orbit(OrbitArgs),
    /// Run one of the worked examples with its invariant report.
    Example(ExampleArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct AlgebraSource {
    /// Built-in algebra: sl2r_hkd, so21_m, so3, galilei_n2_d3.
    #[arg(long)]
    pub builtin: Option<String>,
    /// Algebra file in the `bracket = [i, j, k, value]` format.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub source: AlgebraSource,
    #[arg(long, default_value_t = crate::algebra::IDENTITY_TOL)]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Exact,
    Rk4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Trajectory destination; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct FlowArgs {
    #[command(flatten)]
    pub source: AlgebraSource,
    /// Hamiltonian coefficients `a1,...,an`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub alpha: Vec<f64>,
    /// Initial point `z1,...,zn` of the dual space.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub init: Vec<f64>,
    #[arg(long = "t", default_value_t = 1.0)]
    pub t_final: f64,
    #[arg(long, default_value_t = 1000)]
    pub steps: usize,
    #[arg(long, value_enum, default_value_t = Method::Exact)]
    pub method: Method,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long, default_value_t = 1e-10)]
    pub tol_casimir: f64,
    /// Allowed endpoint deviation between rk4 and exact.
    #[arg(long, default_value_t = 1e-8)]
    pub tol_method: f64,
}

#[derive(Debug, Args)]
pub struct OrbitArgs {
    #[command(flatten)]
    pub source: AlgebraSource,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub init: Vec<f64>,
    #[arg(long, default_value_t = crate::orbit::DEFAULT_TOL)]
    pub tol: f64,
    /// Report destination; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExampleName {
    Conformal,
    Galilei,
}

#[derive(Debug, Args)]
pub struct ExampleArgs {
    #[arg(value_enum)]
    pub name: ExampleName,
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    /// Trajectory constant `c1` (conformal).
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub c1: f64,
    /// Trajectory constant `c2` (conformal).
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub c2: f64,
    /// Initial reduced state `s1,s2,s3,t1,t2,t3,zeta0,zeta1,zeta2,eta0,eta1,eta2`
    /// (galilei); projected onto the constraints. Defaults to the base point.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub init: Option<Vec<f64>>,
    /// Integration time; 5 for conformal, 1 for galilei when omitted.
    #[arg(long = "t")]
    pub t_final: Option<f64>,
    #[arg(long, default_value_t = 10_000)]
    pub steps: usize,
    /// Project onto the constraint surface after every step (galilei).
    #[arg(long)]
    pub project: bool,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long, default_value_t = 1e-10)]
    pub tol_casimir: f64,
    #[arg(long, default_value_t = 1e-8)]
    pub tol_constraint: f64,
    /// Allowed drift of the energy along the numerical trajectory.
    #[arg(long, default_value_t = 1e-9)]
    pub tol_energy: f64,
    /// Allowed deviation from the closed form or the full linear flow.
    #[arg(long, default_value_t = 1e-7)]
    pub tol_reference: f64,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match run(&cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Integration { .. } => EXIT_CHECK,
                _ => EXIT_USAGE,
            }
        }
    }
}

pub fn run(command: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Check(a) => run_check(a, out),
        Command::Flow(a) => run_flow(a, out, err),
        Command::Orbit(a) => run_orbit(a, out),
        Command::Example(a) => run_example(a, out, err),
    }
}

fn load(source: &AlgebraSource) -> Result<(LieAlgebra, Vec<Observable>)> {
    match (&source.builtin, &source.file) {
        (Some(name), _) => {
            let b: Builtin = name.parse()?;
            Ok((b.algebra(), b.casimirs()))
        }
        (None, Some(path)) => {
            let alg = read_algebra_file(path)?;
            let cas = killing_casimir(&alg).into_iter().collect();
            Ok((alg, cas))
        }
        (None, None) => Err(Error::UnknownAlgebra("no algebra given".into())),
    }
}

fn check_valid(alg: &LieAlgebra, err: &mut dyn Write) -> Result<bool> {
    let rep = alg.validate();
    if !rep.passed {
        writeln!(err, "{rep}")?;
        writeln!(err, "refusing to use an algebra that fails its identities")?;
    }
    Ok(rep.passed)
}

fn run_check(a: &CheckArgs, out: &mut dyn Write) -> Result<i32> {
    let (alg, _) = load(&a.source)?;
    let rep = alg.validate_with(a.tol);
    writeln!(out, "{rep}")?;
    Ok(if rep.passed { EXIT_OK } else { EXIT_CHECK })
}

// Writes the trajectory to `--out` or `out`; returns where the summary goes.
fn emit<'a>(
    tr: &Trajectory,
    output: &OutputArgs,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
) -> Result<&'a mut dyn Write> {
    match &output.out {
        Some(path) => {
            let mut f = BufWriter::new(File::create(path)?);
            write_trajectory(tr, output.format, &mut f)?;
            f.flush()?;
            Ok(out)
        }
        None => {
            write_trajectory(tr, output.format, &mut *out)?;
            Ok(err)
        }
    }
}

fn write_trajectory(tr: &Trajectory, format: Format, w: &mut dyn Write) -> Result<()> {
    match format {
        Format::Csv => tr.write_csv(w),
        Format::Json => {
            tr.write_json(&mut *w)?;
            writeln!(w)?;
            Ok(())
        }
    }
}

fn verdict(w: &mut dyn Write, name: &str, value: f64, tol: f64) -> Result<bool> {
    let ok = value <= tol;
    writeln!(w, "{name} = {value:.3e} (tol {tol:.1e}) {}", if ok { "ok" } else { "FAIL" })?;
    Ok(ok)
}

fn run_flow(a: &FlowArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let (alg, casimirs) = load(&a.source)?;
    if !check_valid(&alg, err)? {
        return Ok(EXIT_CHECK);
    }
    let h = HamiltonianSpec::new(a.alpha.clone());
    let z0 = DualVector::new(a.init.clone());
    let tr = match a.method {
        Method::Exact => flow_exact_trajectory(&alg, &h, &z0, a.t_final, a.steps)?,
        Method::Rk4 => flow_rk4(&alg, &h, &z0, a.t_final, a.steps)?,
    };
    let names: Vec<&str> = casimirs.iter().map(Observable::name).collect();
    let tr = tr.with_columns(&names, |_, s| casimirs.iter().map(|c| c.value(s)).collect());

    let mut drift = 0.0f64;
    let n = alg.dim();
    let first = tr.states()[0].clone();
    for (_, s) in tr.iter() {
        for k in 0..casimirs.len() {
            drift = drift.max((s[n + k] - first[n + k]).abs());
        }
    }
    let method_gap = match a.method {
        Method::Rk4 => {
            let (t_end, last) = tr.last().expect("non-empty trajectory");
            let exact = crate::lie_poisson::flow_exact(&alg, &h, &z0, t_end)?;
            Some(exact.coeffs().iter().zip(&last[..n]).fold(0.0f64, |m, (x, y)| m.max((x - y).abs())))
        }
        Method::Exact => None,
    };

    let summary = emit(&tr, &a.output, out, err)?;
    let mut ok = true;
    if casimirs.is_empty() {
        writeln!(summary, "no Casimir catalogue for {}", alg.name())?;
    } else {
        ok &= verdict(summary, "casimir_drift", drift, a.tol_casimir)?;
    }
    if let Some(gap) = method_gap {
        ok &= verdict(summary, "rk4_vs_exact", gap, a.tol_method)?;
    }
    Ok(if ok { EXIT_OK } else { EXIT_CHECK })
}

fn run_orbit(a: &OrbitArgs, out: &mut dyn Write) -> Result<i32> {
    let (alg, casimirs) = load(&a.source)?;
    let rep = OrbitReport::compute(&alg, &DualVector::new(a.init.clone()), &casimirs, a.tol)?;
    match &a.out {
        Some(path) => std::fs::write(path, rep.to_json() + "\n")?,
        None => writeln!(out, "{}", rep.to_json())?,
    }
    Ok(EXIT_OK)
}

fn run_example(a: &ExampleArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match a.name {
        ExampleName::Conformal => {
            let params = TrajectoryParams::new(a.c1, a.c2, a.lambda)?;
            let (tr, rep) = conformal::run_example(&params, a.t_final.unwrap_or(5.0), a.steps)?;
            let w = emit(&tr, &a.output, out, err)?;
            writeln!(w, "{}", serde_json::to_string_pretty(&rep)?)?;
            let mut ok = verdict(w, "closed_form_residual", rep.closed_form_residual, a.tol_constraint)?;
            ok &= verdict(w, "casimir_drift", rep.casimir_drift, a.tol_casimir * a.lambda * a.lambda)?;
            ok &= verdict(w, "energy_drift", rep.energy_drift, a.tol_energy * rep.energy.max(1.0))?;
            ok &= verdict(w, "dual_flow_residual", rep.dual_flow_residual, a.tol_reference)?;
            Ok(if ok { EXIT_OK } else { EXIT_CHECK })
        }
        ExampleName::Galilei => {
            let state = match &a.init {
                None => ReducedState::base(a.lambda)?,
                Some(v) => {
                    if v.len() != 12 {
                        return Err(Error::DimensionMismatch { expected: 12, got: v.len() });
                    }
                    let p = |o: usize| Vector3::new(v[o], v[o + 1], v[o + 2]);
                    ReducedState::project(p(0), p(3), p(6), p(9), a.lambda)?
                }
            };
            let (tr, rep) = galilei::run_example(&state, a.t_final.unwrap_or(1.0), a.steps, a.project)?;
            let w = emit(&tr, &a.output, out, err)?;
            writeln!(w, "{}", serde_json::to_string_pretty(&rep)?)?;
            let mut ok = verdict(w, "max_constraint_drift", rep.max_constraint_drift, a.tol_constraint)?;
            ok &= verdict(w, "casimir_drift", rep.casimir_drift, a.tol_constraint)?;
            ok &= verdict(w, "energy_drift", rep.energy_drift, a.tol_energy)?;
            ok &= verdict(w, "full_vs_reduced", rep.full_vs_reduced, a.tol_reference)?;
            Ok(if ok { EXIT_OK } else { EXIT_CHECK })
        }
    }
}
