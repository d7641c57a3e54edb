//! `biomembrane`: generate axisymmetric membrane contours, verify shape
//! equations and boundary conditions, and compute the critical pressure of
//! spherical cells.
//!
//! Exit status: 0 on success, 1 for usage errors, 2 for inputs outside the
//! domain of an operation (including invalid profiles), 3 for numerical
//! failures and 4 for I/O errors.

mod output;
mod shapes;

use std::path::PathBuf;
use std::process::ExitCode;

use biomembrane::energetics::{
    el_residual_closed, el_residual_interior, graphite_residual, helfrich_open_bc,
    helfrich_residual, open_bc_residuals, sweep_loading, LineTension, LoadingFit, MaterialParams,
    ResidualField, SoapFilm,
};
use biomembrane::geom::{AxisymSurface, Edge, Topology};
use biomembrane::stability::{critical_pressure, Branch, DEFAULT_L_MAX};
use biomembrane::units::{pressure_to_pa, KBT_J_DEFAULT};
use biomembrane::{Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use output::{csv_bytes, emit, json_bytes, svg, Format, SCHEMA_VERSION};
use shapes::ShapeArgs;

/// Environment variable holding the default k_B T in joules.
const KBT_ENV: &str = "HELFRICH_KBT_J";

#[derive(Debug, Parser)]
#[command(
    name = "biomembrane",
    version,
    about = "Elastic-surface shapes, shape-equation residuals and membrane stability"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a contour and write it as CSV, JSON or SVG
    Contour(ContourArgs),
    /// Evaluate a shape-equation residual on a generated surface
    Residual(ResidualArgs),
    /// Evaluate the open-membrane boundary conditions on a surface with edges
    OpenBc(OpenBcArgs),
    /// Fit pressure and tension to a closed surface over a range of c0
    FitLoading(FitArgs),
    /// Critical pressure of a spherical cell membrane with skeleton
    Stability(StabilityArgs),
}

#[derive(Debug, Clone, Args)]
struct Material {
    #[arg(long, default_value_t = 1.0)]
    kc: f64,
    #[arg(long, default_value_t = 0.0)]
    kbar: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    c0: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    lambda: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    p: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    gamma: f64,
}

impl Material {
    fn params(&self) -> MaterialParams {
        MaterialParams {
            kc: self.kc,
            kbar: self.kbar,
            c0: self.c0,
            lambda: self.lambda,
            p: self.p,
            gamma: self.gamma,
            ..Default::default()
        }
    }
}

#[derive(Debug, Args)]
struct ContourArgs {
    #[command(flatten)]
    shape: ShapeArgs,
    /// Spontaneous curvature of the biconcave family
    #[arg(long, default_value_t = 1.0)]
    c0: f64,
    /// Output files; the format follows the extension (.csv, .json, .svg)
    #[arg(short, long)]
    out: Vec<PathBuf>,
    /// Format written to stdout when no output file is given
    #[arg(long, value_enum, default_value_t = StdoutFormat::Csv)]
    format: StdoutFormat,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StdoutFormat {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EnergyKind {
    Helfrich,
    Soapfilm,
    Graphite,
}

#[derive(Debug, Args)]
struct ResidualArgs {
    #[command(flatten)]
    shape: ShapeArgs,
    #[command(flatten)]
    material: Material,
    #[arg(long, value_enum, default_value_t = EnergyKind::Helfrich)]
    energy: EnergyKind,
    /// Fit (c0, p, lambda) by least squares before evaluating the residual
    #[arg(long)]
    fit: bool,
    #[command(flatten)]
    sweep: SweepArgs,
    /// Exclude samples with rho below this value from the norms
    #[arg(long)]
    exclude_axis: Option<f64>,
    /// Include the per-sample residual values in the report
    #[arg(long)]
    values: bool,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
struct SweepArgs {
    #[arg(long, default_value_t = -3.0, allow_hyphen_values = true)]
    c0_min: f64,
    #[arg(long, default_value_t = 3.0, allow_hyphen_values = true)]
    c0_max: f64,
    /// Grid points of the c0 scan before refinement
    #[arg(long, default_value_t = 61)]
    c0_points: usize,
}

#[derive(Debug, Args)]
struct OpenBcArgs {
    #[command(flatten)]
    shape: ShapeArgs,
    #[command(flatten)]
    material: Material,
    /// Evaluate the general form with E = Helfrich and Gamma = gamma instead
    /// of the specialised Helfrich boundary conditions
    #[arg(long)]
    general: bool,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FitArgs {
    #[command(flatten)]
    shape: ShapeArgs,
    #[arg(long, default_value_t = 1.0)]
    kc: f64,
    #[command(flatten)]
    sweep: SweepArgs,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct StabilityArgs {
    #[arg(long, default_value_t = 20.0)]
    kc: f64,
    #[arg(long, default_value_t = 6e-4)]
    kd: f64,
    #[arg(long = "R", default_value_t = 1000.0)]
    r: f64,
    /// Dimensionless spontaneous curvature c0 R
    #[arg(long = "c0R", default_value_t = 1.0, allow_hyphen_values = true)]
    c0r: f64,
    /// Applied pressure in k_B T / nm^3
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    p: f64,
    #[arg(long, default_value_t = DEFAULT_L_MAX)]
    lmax: usize,
    /// Membrane thickness in nm (reported only)
    #[arg(long)]
    thickness: Option<f64>,
    /// k_B T in joules (default: $HELFRICH_KBT_J, else 4.14e-21)
    #[arg(long)]
    kbt: Option<f64>,
    /// Include every p_l in the report
    #[arg(long)]
    all_modes: bool,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Domain(_) | Error::Profile(_) => 2,
        Error::Numerical(_) => 3,
        Error::Io(_) => 4,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("biomembrane: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Contour(a) => contour(a),
        Command::Residual(a) => residual(a),
        Command::OpenBc(a) => open_bc(a),
        Command::FitLoading(a) => fit_loading_cmd(a),
        Command::Stability(a) => stability(a),
    }
}

#[derive(Serialize)]
struct ContourDoc<'a> {
    schema_version: u32,
    shape: &'a str,
    topology: &'a str,
    h: f64,
    meta: &'a std::collections::BTreeMap<String, f64>,
    samples: &'a [biomembrane::geom::ProfileSample],
}

fn contour_bytes(surface: &AxisymSurface, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Csv => csv_bytes(surface),
        Format::Svg => Ok(svg(surface)?.into_bytes()),
        Format::Json => json_bytes(&ContourDoc {
            schema_version: SCHEMA_VERSION,
            shape: surface.label(),
            topology: surface.topology().name(),
            h: surface.h(),
            meta: surface.meta_entries(),
            samples: surface.samples(),
        }),
    }
}

fn contour(a: ContourArgs) -> Result<()> {
    let surface = a.shape.build(a.c0)?;
    if a.out.is_empty() {
        let format = match a.format {
            StdoutFormat::Csv => Format::Csv,
            StdoutFormat::Json => Format::Json,
            StdoutFormat::Svg => Format::Svg,
        };
        return emit(None, &contour_bytes(&surface, format)?);
    }
    let formats = a
        .out
        .iter()
        .map(|p| Format::from_path(p))
        .collect::<Result<Vec<_>>>()?;
    for (path, format) in a.out.iter().zip(formats) {
        emit(Some(path), &contour_bytes(&surface, format)?)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct ResidualDoc {
    schema_version: u32,
    equation: String,
    shape: String,
    topology: &'static str,
    params: MaterialParams,
    grid_h: f64,
    n_samples: usize,
    n_included: usize,
    linf: f64,
    l2: f64,
    /// False when the surface has edges: only the interior equation is
    /// evaluated (see `open-bc`).
    boundary_conditions_checked: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    exclude_axis: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fit: Option<LoadingFit>,
    #[serde(skip_serializing_if = "Option::is_none")]
    values: Option<Vec<f64>>,
}

fn residual(a: ResidualArgs) -> Result<()> {
    let mut params = a.material.params();
    let surface = a.shape.build(params.c0)?;
    let closed = !surface.topology().has_edges();
    let fit = if a.fit {
        if a.energy != EnergyKind::Helfrich {
            return Err(Error::Domain("--fit applies to the Helfrich energy".into()));
        }
        let f = sweep_loading(
            &surface,
            params.kc,
            (a.sweep.c0_min, a.sweep.c0_max),
            a.sweep.c0_points,
        )?;
        params.c0 = f.c0;
        params.p = f.p;
        params.lambda = f.lambda;
        Some(f)
    } else {
        None
    };
    let (equation, field): (&str, ResidualField) = match (a.energy, closed) {
        (EnergyKind::Helfrich, true) => ("helfrich", helfrich_residual(&surface, &params)?),
        (EnergyKind::Graphite, _) => ("graphite", graphite_residual(&surface, &params)?),
        (EnergyKind::Soapfilm, true) => (
            "soapfilm",
            el_residual_closed(
                &surface,
                &SoapFilm {
                    lambda: params.lambda,
                },
                params.p,
            )?,
        ),
        (EnergyKind::Helfrich, false) => {
            params.validate()?;
            (
                "helfrich-interior",
                el_residual_interior(&surface, &params.helfrich(), params.p)?,
            )
        }
        (EnergyKind::Soapfilm, false) => (
            "soapfilm-interior",
            el_residual_interior(
                &surface,
                &SoapFilm {
                    lambda: params.lambda,
                },
                params.p,
            )?,
        ),
    };
    let field = match a.exclude_axis {
        Some(r) => field.excluding_near_axis(&surface, r),
        None => field,
    };
    let doc = ResidualDoc {
        schema_version: SCHEMA_VERSION,
        equation: equation.into(),
        shape: surface.label().into(),
        topology: surface.topology().name(),
        params,
        grid_h: surface.h(),
        n_samples: field.len(),
        n_included: field.included_count(),
        linf: field.linf(),
        l2: field.l2(),
        boundary_conditions_checked: closed,
        exclude_axis: a.exclude_axis,
        fit,
        values: a.values.then(|| field.values().to_vec()),
    };
    emit(a.out.as_deref(), &json_bytes(&doc)?)
}

#[derive(Serialize)]
struct EdgeDoc {
    edge: Edge,
    /// Force, moment and tension conditions in the order of `labels`.
    residuals: [f64; 3],
    labels: [&'static str; 3],
    max_abs: f64,
}

#[derive(Serialize)]
struct OpenBcDoc {
    schema_version: u32,
    equation: &'static str,
    shape: String,
    topology: &'static str,
    params: MaterialParams,
    grid_h: f64,
    linf: f64,
    l2: f64,
    edge_max: f64,
    per_edge: Vec<EdgeDoc>,
}

fn open_bc(a: OpenBcArgs) -> Result<()> {
    let params = a.material.params();
    params.validate()?;
    let surface = a.shape.build(params.c0)?;
    if !surface.topology().has_edges() {
        return Err(Error::Domain(format!(
            "{} is a {} surface without edges",
            surface.label(),
            surface.topology().name()
        )));
    }
    let (equation, labels, report) = if a.general {
        let e = params.helfrich();
        (
            "open-general",
            ["force", "moment", "tension"],
            open_bc_residuals(
                &surface,
                &e,
                &LineTension {
                    gamma: params.gamma,
                },
            )?,
        )
    } else {
        (
            "open-helfrich",
            ["moment", "force", "tension"],
            helfrich_open_bc(&surface, &params)?,
        )
    };
    let doc = OpenBcDoc {
        schema_version: SCHEMA_VERSION,
        equation,
        shape: surface.label().into(),
        topology: surface.topology().name(),
        params,
        grid_h: surface.h(),
        linf: report.interior.linf(),
        l2: report.interior.l2(),
        edge_max: report.edge_max(),
        per_edge: report
            .edges
            .iter()
            .map(|e| EdgeDoc {
                edge: e.edge,
                residuals: e.values,
                labels,
                max_abs: e.max_abs(),
            })
            .collect(),
    };
    emit(a.out.as_deref(), &json_bytes(&doc)?)
}

#[derive(Serialize)]
struct FitDoc {
    schema_version: u32,
    shape: String,
    kc: f64,
    grid_h: f64,
    c0_range: [f64; 2],
    best: LoadingFit,
}

fn fit_loading_cmd(a: FitArgs) -> Result<()> {
    let surface = a.shape.build(0.0)?;
    if surface.topology() == Topology::Band || surface.topology() == Topology::Disk {
        return Err(Error::Domain(
            "fit-loading needs a closed or tube surface".into(),
        ));
    }
    let best = sweep_loading(
        &surface,
        a.kc,
        (a.sweep.c0_min, a.sweep.c0_max),
        a.sweep.c0_points,
    )?;
    let doc = FitDoc {
        schema_version: SCHEMA_VERSION,
        shape: surface.label().into(),
        kc: a.kc,
        grid_h: surface.h(),
        c0_range: [a.sweep.c0_min, a.sweep.c0_max],
        best,
    };
    emit(a.out.as_deref(), &json_bytes(&doc)?)
}

#[derive(Serialize)]
struct ModeDoc {
    l: usize,
    #[serde(rename = "p_Pa")]
    p_pa: f64,
}

#[derive(Serialize)]
struct StabilityDoc {
    schema_version: u32,
    #[serde(rename = "R_nm")]
    r_nm: f64,
    params: MaterialParams,
    kbt_j: f64,
    branch: Branch,
    l_star: usize,
    l_max: usize,
    #[serde(rename = "p_c_Pa")]
    p_c_pa: f64,
    p_c_kbt_nm3: f64,
    #[serde(rename = "p_c_integer_Pa")]
    p_c_integer_pa: f64,
    #[serde(rename = "p_c_bending_only_Pa")]
    p_c_bending_only_pa: f64,
    #[serde(rename = "p_Pa")]
    p_pa: f64,
    stable: bool,
    first_unstable_l: Option<usize>,
    l1_min_eigenvalue: f64,
    #[serde(rename = "p_l")]
    modes: Vec<ModeDoc>,
    warnings: Vec<String>,
    notes: Vec<String>,
}

fn kbt_from_env() -> Result<f64> {
    match std::env::var(KBT_ENV) {
        Ok(v) => v
            .trim()
            .parse::<f64>()
            .map_err(|e| Error::Domain(format!("{KBT_ENV} = '{v}' is not a number: {e}"))),
        Err(_) => Ok(KBT_J_DEFAULT),
    }
}

fn stability(a: StabilityArgs) -> Result<()> {
    let kbt = match a.kbt {
        Some(k) => k,
        None => kbt_from_env()?,
    };
    if !(kbt > 0.0 && kbt.is_finite()) {
        return Err(Error::Domain(format!("k_B T = {kbt} J must be positive")));
    }
    let params = MaterialParams {
        kc: a.kc,
        kd: a.kd,
        c0: a.c0r / a.r,
        p: a.p,
        thickness: a.thickness,
        ..Default::default()
    };
    let rep = critical_pressure(a.r, &params, a.lmax)?;
    let pa = |p: f64| pressure_to_pa(p, kbt);
    let shown = if a.all_modes {
        rep.thresholds.len()
    } else {
        rep.thresholds.len().min(10)
    };
    let notes = vec![
        "modes l = 0 and l = 1 are excluded; the l = 1 block is singular (rigid translation)".to_string(),
        format!(
            "bending-only (kd = 0) critical pressure {:.3} Pa from the same formula; the 0.2 Pa estimate quoted for this case is not reproduced",
            pa(rep.p_c_bending_only)
        ),
    ];
    let doc = StabilityDoc {
        schema_version: SCHEMA_VERSION,
        r_nm: a.r,
        params,
        kbt_j: kbt,
        branch: rep.branch,
        l_star: rep.l_star,
        l_max: rep.l_max,
        p_c_pa: pa(rep.p_c),
        p_c_kbt_nm3: rep.p_c,
        p_c_integer_pa: pa(rep.p_c_integer),
        p_c_bending_only_pa: pa(rep.p_c_bending_only),
        p_pa: pa(a.p),
        stable: rep.stable,
        first_unstable_l: rep.first_unstable_l,
        l1_min_eigenvalue: rep.l1_min_eigenvalue,
        modes: rep.thresholds[..shown]
            .iter()
            .map(|m| ModeDoc {
                l: m.l,
                p_pa: pa(m.p),
            })
            .collect(),
        warnings: rep.warnings,
        notes,
    };
    emit(a.out.as_deref(), &json_bytes(&doc)?)
}
