//! Command-line front end. The `quietzone` binary only forwards to [`run`].

mod figures;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::amplitudes::{amplitudes_general, amplitudes_planewave, AmplitudeSet, PTruncation};
use crate::cylwave::Point2;
use crate::diagnostics::DiagnosticsReport;
use crate::error::{Error, Result};
use crate::fieldgrid::{evaluate_grid, export_csv, export_pgm, FieldGrid, FieldKind, GridSpec, PgmMode};
use crate::geometry::{symmetric_config, SourceConfig};
use crate::incident::{IncidentField, IncidentKind};
use crate::scattering::{free_field, Boundary, Cylinder, ScatteringProblem};

pub use figures::{figure_ids, reproduce};

/// Near-field residual above which `diagnose` warns.
pub const RESIDUAL_WARNING: f64 = 1e-4;
const DEFAULT_GRID: usize = 401;
const WINDOW_SCALE: f64 = 2.5;

#[derive(Debug, Parser)]
#[command(
    name = "quietzone",
    version,
    about = "Active exterior cloaking amplitudes, diagnostics and field renders"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute source amplitudes and write them as JSON.
    Amplitudes(SetupArgs),
    /// Far- and near-field coefficient residuals as CSV.
    Diagnose(DiagnoseArgs),
    /// Render the incident, source or total field on a grid.
    Field(FieldArgs),
    /// Render scattering from a cylinder at the origin, cloak on or off.
    Scatter(ScatterArgs),
    /// Regenerate the data behind one of the preset figures.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Args)]
struct SetupArgs {
    /// Symmetric layout of M sources on a circle of radius b.
    #[arg(
        long,
        value_name = "M,b",
        required_unless_present = "config",
        conflicts_with = "config"
    )]
    symmetric: Option<String>,
    /// Source layout JSON.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Wavenumber; overrides the one in --config.
    #[arg(long)]
    k: Option<f64>,
    /// Plane-wave direction in degrees.
    #[arg(
        long = "psi-deg",
        visible_alias = "plane-wave-deg",
        allow_hyphen_values = true,
        conflicts_with = "coeff_file",
        required_unless_present = "coeff_file"
    )]
    psi_deg: Option<f64>,
    /// Incident coefficients as a JSON list of [n, re, im].
    #[arg(long, value_name = "PATH")]
    coeff_file: Option<PathBuf>,
    /// Source multipole truncation; defaults to max(10, ceil(k(b+a)) + 20).
    #[arg(long = "N")]
    n: Option<usize>,
    /// Fixed p-series truncation instead of the adaptive default.
    #[arg(long = "P")]
    p: Option<usize>,
    /// Output directory; stdout when omitted (amplitudes, diagnose).
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DiagnoseArgs {
    #[command(flatten)]
    setup: SetupArgs,
    /// Report orders n in [-R, R].
    #[arg(long = "n-range", default_value_t = 10)]
    n_range: i32,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FieldChoice {
    Incident,
    Source,
    Total,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Abs,
    Re,
}

impl From<Mode> for PgmMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Abs => PgmMode::Abs,
            Mode::Re => PgmMode::Re,
        }
    }
}

#[derive(Debug, Args)]
struct RenderArgs {
    #[arg(long, value_enum, default_value_t = Mode::Abs)]
    mode: Mode,
    #[arg(long, default_value_t = 2.0)]
    clip: f64,
    #[arg(long, default_value_t = DEFAULT_GRID)]
    nx: usize,
    #[arg(long, default_value_t = DEFAULT_GRID)]
    ny: usize,
    /// Half-width of the square window; defaults to 2.5 (b + a).
    #[arg(long)]
    half_width: Option<f64>,
}

#[derive(Debug, Args)]
struct FieldArgs {
    #[command(flatten)]
    setup: SetupArgs,
    #[command(flatten)]
    render: RenderArgs,
    #[arg(long, value_enum, default_value_t = FieldChoice::Total)]
    field: FieldChoice,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Bc {
    Soft,
    Hard,
}

#[derive(Debug, Args)]
struct ScatterArgs {
    #[command(flatten)]
    setup: SetupArgs,
    #[command(flatten)]
    render: RenderArgs,
    #[arg(long = "cyl-radius", default_value_t = 1.0)]
    cyl_radius: f64,
    #[arg(long = "cyl-bc", value_enum, default_value_t = Bc::Hard)]
    cyl_bc: Bc,
    #[arg(long, value_enum, default_value_t = Switch::On)]
    cloak: Switch,
}

#[derive(Debug, Args)]
struct ReproduceArgs {
    /// Figure id; an unknown id lists the available ones.
    id: String,
    #[arg(long, value_name = "DIR", default_value = ".")]
    out: PathBuf,
    /// Grid size for rendered figures.
    #[arg(long)]
    nx: Option<usize>,
    #[arg(long)]
    ny: Option<usize>,
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code: 0 success, 2 invalid input, 3 non-convergence, 1 otherwise.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).try_init();
    configure_threads();
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Truncation { .. } | Error::Quadrature { .. } => 3,
        Error::Io(_) | Error::Overflow { .. } => 1,
        _ => 2,
    }
}

fn configure_threads() {
    if let Ok(v) = std::env::var("QUIETZONE_THREADS") {
        match v.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => log::warn!("ignoring QUIETZONE_THREADS={v:?}"),
        }
    }
}

fn dispatch(cmd: Command) -> Result<()> {
    match cmd {
        Command::Amplitudes(a) => {
            let setup = Setup::resolve(&a)?;
            setup.echo("amplitudes");
            let amps = setup.amplitudes()?;
            emit(a.out.as_deref(), "amplitudes.json", &amps.to_json_string()?)
        }
        Command::Diagnose(d) => {
            if d.n_range < 0 {
                return Err(Error::Parameter("--n-range must be non-negative".into()));
            }
            let setup = Setup::resolve(&d.setup)?;
            setup.echo("diagnose");
            let report = DiagnosticsReport::compute(&setup.amplitudes()?, -d.n_range..=d.n_range)?;
            warn_residual(&report);
            emit(d.setup.out.as_deref(), "diagnose.csv", &report.to_csv())
        }
        Command::Field(f) => {
            let setup = Setup::resolve(&f.setup)?;
            setup.echo("field");
            let spec = f.render.grid(&setup.config)?;
            let grid = render_free_field(&setup, f.field, spec, f.render.clip)?;
            write_render(&grid, f.render.mode.into(), out_dir(&f.setup.out), "field")
        }
        Command::Scatter(s) => {
            let setup = Setup::resolve(&s.setup)?;
            setup.echo("scatter");
            let bc = match s.cyl_bc {
                Bc::Soft => Boundary::Soft,
                Bc::Hard => Boundary::Hard,
            };
            let cylinder = Cylinder::new(s.cyl_radius, bc)?;
            let problem = scattering_problem(&setup, cylinder, matches!(s.cloak, Switch::On))?;
            eprintln!(
                "scatter: cylinder a0={} bc={:?} cloak={} flux={:.6e}",
                cylinder.radius,
                bc,
                problem.is_cloaked(),
                crate::diagnostics::farfield_flux(problem.scattered_coefficients())
            );
            let spec = s.render.grid(&setup.config)?;
            let grid = render_scattering(&problem, &setup.config, spec, s.render.clip)?;
            write_render(&grid, s.render.mode.into(), out_dir(&s.setup.out), "scatter")
        }
        Command::Reproduce(r) => {
            let written = reproduce(&r.id, &r.out, r.nx, r.ny)?;
            for path in written {
                println!("{}", path.display());
            }
            Ok(())
        }
    }
}

fn out_dir(out: &Option<PathBuf>) -> &Path {
    out.as_deref().unwrap_or_else(|| Path::new("."))
}

fn emit(out: Option<&Path>, name: &str, text: &str) -> Result<()> {
    match out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            fs::write(dir.join(name), text)?;
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                writeln!(stdout)?;
            }
        }
    }
    Ok(())
}

fn warn_residual(report: &DiagnosticsReport) {
    let worst = report
        .residual
        .iter()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(n, r)| (*n, *r));
    if let Some((n, r)) = worst {
        if r > RESIDUAL_WARNING {
            eprintln!(
                "warning: near-field residual |A_n + E_n| = {r:.3e} at n = {n} exceeds {RESIDUAL_WARNING:e}; increase --N"
            );
        }
    }
}

/// A fully resolved geometry, incident field and truncation.
#[derive(Debug, Clone)]
pub struct Setup {
    pub config: SourceConfig,
    pub incident: IncidentField,
    pub n: usize,
    pub p: PTruncation,
}

/// `max(10, ⌈k·r_out⌉ + 20)` with `r_out` the outer radius of the layout.
pub fn default_order(config: &SourceConfig) -> usize {
    ((config.k * config.outer_radius()).ceil() as usize + 20).max(10)
}

impl Setup {
    pub fn new(config: SourceConfig, incident: IncidentField, n: Option<usize>) -> Self {
        let n = n.unwrap_or_else(|| default_order(&config));
        Self {
            config,
            incident,
            n,
            p: PTruncation::Adaptive,
        }
    }

    fn resolve(a: &SetupArgs) -> Result<Self> {
        let config = match (&a.symmetric, &a.config) {
            (Some(spec), None) => {
                let (m, b) = parse_symmetric(spec)?;
                let k =
                    a.k.ok_or_else(|| Error::Parameter("--k is required with --symmetric".into()))?;
                symmetric_config(m, b, k)?
            }
            (None, Some(path)) => {
                let c = SourceConfig::load(path)?;
                match a.k {
                    Some(k) => c.with_wavenumber(k)?,
                    None => c,
                }
            }
            _ => return Err(Error::Parameter("give exactly one of --symmetric or --config".into())),
        };
        let incident = match (a.psi_deg, &a.coeff_file) {
            (Some(deg), None) => {
                if !deg.is_finite() {
                    return Err(Error::Parameter(format!("--psi-deg must be finite, got {deg}")));
                }
                IncidentField::plane_wave_deg(deg)
            }
            (None, Some(path)) => IncidentField::load_coefficients(path)?,
            _ => return Err(Error::Parameter("give exactly one of --psi-deg or --coeff-file".into())),
        };
        let mut setup = Setup::new(config, incident, a.n);
        if let Some(p) = a.p {
            setup.p = PTruncation::Fixed(p);
        }
        Ok(setup)
    }

    /// Plane waves take the direct series; anything else goes through the kernel.
    pub fn amplitudes(&self) -> Result<AmplitudeSet> {
        match self.incident.kind {
            IncidentKind::PlaneWave { psi } => amplitudes_planewave(&self.config, psi, self.n, self.p),
            _ => amplitudes_general(&self.config, &self.incident, self.n, self.p),
        }
    }

    /// One line on stderr with every resolved parameter.
    pub fn echo(&self, command: &str) {
        eprintln!("{command}: {}", self.summary());
    }

    pub fn summary(&self) -> String {
        let c = &self.config;
        let b = c.positions().map(|p| p.norm()).fold(0.0, f64::max);
        let a = c.sources.iter().map(|s| s.radius).fold(0.0, f64::max);
        let p = match self.p {
            PTruncation::Adaptive => "adaptive".to_string(),
            PTruncation::Fixed(p) => p.to_string(),
        };
        format!(
            "M={} b={b} a={a} k={} incident=[{}] N={} P={p}",
            c.len(),
            c.k,
            self.incident.describe(),
            self.n
        )
    }
}

fn parse_symmetric(spec: &str) -> Result<(usize, f64)> {
    let bad = || Error::Parameter(format!("--symmetric expects M,b (e.g. 4,1), got {spec:?}"));
    let (m, b) = spec.split_once(',').ok_or_else(bad)?;
    let m: usize = m.trim().parse().map_err(|_| bad())?;
    let b: f64 = b.trim().parse().map_err(|_| bad())?;
    if !(b.is_finite() && b > 0.0) {
        return Err(bad());
    }
    Ok((m, b))
}

impl RenderArgs {
    fn grid(&self, config: &SourceConfig) -> Result<GridSpec> {
        let h = self.half_width.unwrap_or(WINDOW_SCALE * config.outer_radius());
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::Parameter(format!("--half-width must be positive, got {h}")));
        }
        Ok(GridSpec::spanning(-h, h, -h, h, self.nx, self.ny))
    }
}

/// Default square window for a layout: `[−2.5 r_out, 2.5 r_out]²`.
pub fn default_window(config: &SourceConfig, n: usize) -> GridSpec {
    GridSpec::square(WINDOW_SCALE * config.outer_radius(), n)
}

fn render_free_field(setup: &Setup, which: FieldChoice, spec: GridSpec, clip: f64) -> Result<FieldGrid> {
    let k = setup.config.k;
    let singular: Vec<Point2> = setup.config.positions().collect();
    match which {
        FieldChoice::Incident => evaluate_grid(spec, FieldKind::Incident, &[], Some(clip), |p| {
            Ok(setup.incident.evaluate(k, p))
        }),
        FieldChoice::Source => {
            let amps = setup.amplitudes()?;
            evaluate_grid(spec, FieldKind::Source, &singular, Some(clip), |p| {
                crate::amplitudes::source_field(&amps, p)
            })
        }
        FieldChoice::Total => {
            let amps = setup.amplitudes()?;
            evaluate_grid(spec, FieldKind::Total, &singular, Some(clip), |p| {
                free_field(k, &setup.incident, Some(&amps), p)
            })
        }
    }
}

fn scattering_problem(setup: &Setup, cylinder: Cylinder, cloak: bool) -> Result<ScatteringProblem> {
    if cloak {
        ScatteringProblem::cloaked(cylinder, setup.amplitudes()?)
    } else {
        ScatteringProblem::bare(setup.config.k, cylinder, setup.incident.clone())
    }
}

/// Total field around the cylinder; the cylinder interior is left at zero.
fn render_scattering(
    problem: &ScatteringProblem,
    config: &SourceConfig,
    spec: GridSpec,
    clip: f64,
) -> Result<FieldGrid> {
    let singular: Vec<Point2> = if problem.is_cloaked() {
        config.positions().collect()
    } else {
        Vec::new()
    };
    let a0 = problem.cylinder().radius;
    evaluate_grid(spec, FieldKind::Total, &singular, Some(clip), |p| {
        if p.norm() <= a0 {
            Ok(Default::default())
        } else {
            problem.total_field(p)
        }
    })
}

fn write_render(grid: &FieldGrid, mode: PgmMode, dir: &Path, stem: &str) -> Result<()> {
    fs::create_dir_all(dir)?;
    let csv = dir.join(format!("{stem}.csv"));
    let pgm = dir.join(format!("{stem}.pgm"));
    export_csv(grid, &csv)?;
    export_pgm(grid, mode, &pgm)?;
    println!("{}", csv.display());
    println!("{}", pgm.display());
    Ok(())
}
