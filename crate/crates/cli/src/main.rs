//! `oscfock`: build oscillator states, report their dispersions, sample
//! position densities and run the verification suite.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C64;
use serde_json::{json, Value};

use oscfock::density::{count_local_maxima, default_half_width, density_grid, DensityGrid, MAXIMA_FLOOR};
use oscfock::fock::{AnyState, Construction, FockState, ModePair, SqueezeSpec, StateFile, StateVector2D};
use oscfock::observables::{
    dispersion_1d_analytic, dispersion_2d_analytic, schmidt_analysis, uncertainty_products, DispersionReport,
};
use oscfock::states::{
    coherent_1d, coherent_min_cutoff, squeezed_1d, squeezed_2d, squeezed_min_cutoff, squeezed_vacuum_exponential,
    su2_coherent, Su2CoherentSpec,
};
use oscfock::verify::{run_all, Tier};
use oscfock::Error;

/// Largest cutoff picked automatically; pass `--cutoff` to go higher.
const AUTO_CUTOFF_CAP: usize = 120;
/// Mode pairs further than this from unit norm are rescaled with a warning.
const MODE_RESCALE_TOL: f64 = 1e-9;

#[derive(Parser, Debug)]
#[command(name = "oscfock", version, about = "Squeezed and SU(2) coherent oscillator states on a truncated Fock basis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a state and write it as JSON.
    State(StateArgs),
    /// Quadrature variances, uncertainty products and Schmidt data for a state file.
    Observables(ObservablesArgs),
    /// Sample |psi(x, y)|^2 on a grid; writes CSV plus a JSON sidecar.
    Density(DensityArgs),
    /// Run the acceptance checks.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Coherent1d,
    Squeezed1d,
    Su2cs,
    Squeezed2d,
    Squeezedvac,
}

#[derive(Args, Debug)]
struct StateArgs {
    kind: Kind,
    /// |z| for coherent1d.
    #[arg(long, allow_hyphen_values = true)]
    z_mod: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    z_arg: Option<f64>,
    /// Displacement modulus for squeezed1d and squeezed2d.
    #[arg(long, allow_hyphen_values = true)]
    psi_mod: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    psi_arg: Option<f64>,
    /// Squeeze modulus.
    #[arg(long, allow_hyphen_values = true)]
    r: Option<f64>,
    /// Squeeze phase.
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    alpha_mod: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    alpha_arg: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    beta_mod: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    beta_arg: Option<f64>,
    /// Total quantum number for su2cs.
    #[arg(long)]
    nu: Option<usize>,
    /// Keep only the first N levels of the squeezed2d sum.
    #[arg(long)]
    terms: Option<usize>,
    /// Truncation; chosen from the parameters when omitted.
    #[arg(long)]
    cutoff: Option<usize>,
    /// Output file; stdout when omitted.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ObservablesArgs {
    file: PathBuf,
    /// Accept states whose norm is not one (moments are divided by the norm).
    #[arg(long)]
    allow_unnormalized: bool,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DensityArgs {
    file: PathBuf,
    /// CSV output path.
    #[arg(long, short)]
    out: PathBuf,
    /// Sidecar path; defaults to the CSV path with a .meta.json extension.
    #[arg(long)]
    sidecar: Option<PathBuf>,
    /// Square window [-w, w]^2; defaults to sqrt(2 nu_bar) + 4.
    #[arg(long, conflicts_with_all = ["x_min", "x_max", "y_min", "y_max"])]
    half_width: Option<f64>,
    #[arg(long, allow_hyphen_values = true, requires = "x_max")]
    x_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true, requires = "x_min")]
    x_max: Option<f64>,
    #[arg(long, allow_hyphen_values = true, requires = "y_max")]
    y_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true, requires = "y_min")]
    y_max: Option<f64>,
    #[arg(long, default_value_t = 241)]
    nx: usize,
    #[arg(long, default_value_t = 241)]
    ny: usize,
    /// Extra relative floor for the maxima count (the 0.1 count is always reported).
    #[arg(long)]
    floor: Option<f64>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value = "fast")]
    tier: Tier,
}

/// Exit code for a library error.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Convergence { .. } | Error::Numeric(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    let result = match cli.command {
        Command::State(a) => cmd_state(a),
        Command::Observables(a) => cmd_observables(a),
        Command::Density(a) => cmd_density(a),
        Command::Verify(a) => return cmd_verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("OSCFOCK_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("OSCFOCK_THREADS must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn c_json(z: C64) -> Value {
    json!({ "re": z.re, "im": z.im, "mod": z.norm(), "arg": z.arg() })
}

fn write_output(path: Option<&Path>, text: &str) -> oscfock::Result<()> {
    match path {
        Some(p) => std::fs::write(p, format!("{text}\n"))?,
        None => println!("{text}"),
    }
    Ok(())
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

// ---------------------------------------------------------------- state

impl StateArgs {
    /// Flags set on the command line that `kind` does not read.
    fn stray_flags(&self) -> Vec<&'static str> {
        let set = [
            ("--z-mod", self.z_mod.is_some(), [Kind::Coherent1d].as_slice()),
            ("--z-arg", self.z_arg.is_some(), &[Kind::Coherent1d]),
            ("--psi-mod", self.psi_mod.is_some(), &[Kind::Squeezed1d, Kind::Squeezed2d]),
            ("--psi-arg", self.psi_arg.is_some(), &[Kind::Squeezed1d, Kind::Squeezed2d]),
            ("--r", self.r.is_some(), &[Kind::Squeezed1d, Kind::Squeezed2d, Kind::Squeezedvac]),
            ("--theta", self.theta.is_some(), &[Kind::Squeezed1d, Kind::Squeezed2d, Kind::Squeezedvac]),
            ("--alpha-mod", self.alpha_mod.is_some(), &[Kind::Su2cs, Kind::Squeezed2d, Kind::Squeezedvac]),
            ("--alpha-arg", self.alpha_arg.is_some(), &[Kind::Su2cs, Kind::Squeezed2d, Kind::Squeezedvac]),
            ("--beta-mod", self.beta_mod.is_some(), &[Kind::Su2cs, Kind::Squeezed2d, Kind::Squeezedvac]),
            ("--beta-arg", self.beta_arg.is_some(), &[Kind::Su2cs, Kind::Squeezed2d, Kind::Squeezedvac]),
            ("--nu", self.nu.is_some(), &[Kind::Su2cs]),
            ("--terms", self.terms.is_some(), &[Kind::Squeezed2d]),
        ];
        set.iter()
            .filter(|(_, given, kinds)| *given && !kinds.contains(&self.kind))
            .map(|(name, _, _)| *name)
            .collect()
    }

    fn squeeze(&self, with_displacement: bool) -> oscfock::Result<SqueezeSpec> {
        let r = self.r.ok_or_else(|| usage("--r is required"))?;
        let psi = if with_displacement {
            C64::from_polar(self.psi_mod.unwrap_or(0.0), self.psi_arg.unwrap_or(0.0))
        } else {
            C64::new(0.0, 0.0)
        };
        SqueezeSpec::new(psi, r, self.theta.unwrap_or(0.0))
    }

    /// The mode pair, rescaled onto the unit sphere when it is off by more
    /// than [`MODE_RESCALE_TOL`]. Returns the factor applied.
    fn modes(&self) -> oscfock::Result<(ModePair, f64)> {
        let (Some(am), Some(bm)) = (self.alpha_mod, self.beta_mod) else {
            return Err(usage("--alpha-mod and --beta-mod are required"));
        };
        if am < 0.0 || bm < 0.0 {
            return Err(usage("mode moduli must be non-negative"));
        }
        let alpha = C64::from_polar(am, self.alpha_arg.unwrap_or(0.0));
        let beta = C64::from_polar(bm, self.beta_arg.unwrap_or(0.0));
        let w = alpha.norm_sqr() + beta.norm_sqr();
        if (w - 1.0).abs() > MODE_RESCALE_TOL {
            let (pair, f) = ModePair::normalized(alpha, beta)?;
            eprintln!("warning: |alpha|^2 + |beta|^2 = {w}; rescaled the mode pair by {f:.12}");
            Ok((pair, f))
        } else {
            // within tolerance: snap exactly onto the sphere without comment
            let (pair, f) = ModePair::normalized(alpha, beta)?;
            Ok((pair, f))
        }
    }
}

fn resolve_cutoff(explicit: Option<usize>, auto: impl FnOnce() -> oscfock::Result<usize>) -> oscfock::Result<(usize, &'static str)> {
    if let Some(c) = explicit {
        return Ok((c, "flag"));
    }
    let need = auto()?;
    if need > AUTO_CUTOFF_CAP {
        return Err(Error::Convergence {
            message: format!(
                "these parameters need cutoff {need}, above the automatic cap of {AUTO_CUTOFF_CAP}; pass --cutoff explicitly"
            ),
            suggested_cutoff: need,
        });
    }
    Ok((need, "auto"))
}

fn cmd_state(a: StateArgs) -> oscfock::Result<()> {
    let stray = a.stray_flags();
    if !stray.is_empty() {
        return Err(usage(format!("{:?} does not take {}", a.kind, stray.join(", "))));
    }
    let mut params = serde_json::Map::new();
    let (state, cutoff, source): (AnyState, usize, &str) = match a.kind {
        Kind::Coherent1d => {
            let m = a.z_mod.ok_or_else(|| usage("--z-mod is required"))?;
            if m < 0.0 {
                return Err(usage("--z-mod must be non-negative"));
            }
            let z = C64::from_polar(m, a.z_arg.unwrap_or(0.0));
            params.insert("z".into(), c_json(z));
            let (c, src) = resolve_cutoff(a.cutoff, || Ok(coherent_min_cutoff(z)))?;
            (coherent_1d(z, c)?.into(), c, src)
        }
        Kind::Squeezed1d => {
            let sp = a.squeeze(true)?;
            insert_squeeze(&mut params, &sp, true);
            let (c, src) = resolve_cutoff(a.cutoff, || squeezed_min_cutoff(&sp))?;
            (squeezed_1d(&sp, c)?.into(), c, src)
        }
        Kind::Su2cs => {
            let nu = a.nu.ok_or_else(|| usage("--nu is required"))?;
            let (modes, f) = a.modes()?;
            insert_modes(&mut params, &modes, f);
            params.insert("nu".into(), json!(nu));
            let (c, src) = resolve_cutoff(a.cutoff, || Ok(nu))?;
            (su2_coherent(&Su2CoherentSpec::new(nu, modes), c)?.into(), c, src)
        }
        Kind::Squeezed2d => {
            let sp = a.squeeze(true)?;
            let (modes, f) = a.modes()?;
            insert_squeeze(&mut params, &sp, true);
            insert_modes(&mut params, &modes, f);
            params.insert("terms".into(), json!(a.terms));
            let (c, src) = resolve_cutoff(a.cutoff, || match a.terms {
                Some(0) => Err(usage("--terms must be at least 1")),
                Some(k) => Ok(k - 1),
                None => squeezed_min_cutoff(&sp),
            })?;
            (squeezed_2d(&sp, &modes, c, a.terms)?.into(), c, src)
        }
        Kind::Squeezedvac => {
            let sp = a.squeeze(false)?;
            let (modes, f) = a.modes()?;
            insert_squeeze(&mut params, &sp, false);
            insert_modes(&mut params, &modes, f);
            let (c, src) = resolve_cutoff(a.cutoff, || squeezed_min_cutoff(&sp))?;
            (squeezed_vacuum_exponential(&sp, &modes, c)?.into(), c, src)
        }
    };
    let kind = a.kind.to_possible_value().map(|v| v.get_name().to_owned()).unwrap_or_default();
    let mut file = StateFile::from_state(&state);
    file.config = Some(json!({
        "command": "state",
        "kind": kind,
        "parameters": params,
        "cutoff": cutoff,
        "cutoff_source": source,
        "output_path": a.out.as_ref().map(|p| p.display().to_string()),
        "version": env!("CARGO_PKG_VERSION"),
    }));
    if file.unnormalized {
        eprintln!(
            "note: truncated sum, squared norm {:.6e}; observables will need --allow-unnormalized",
            state_norm_sqr(&state)
        );
    }
    write_output(a.out.as_deref(), &file.to_json()?)
}

fn state_norm_sqr(s: &AnyState) -> f64 {
    match s {
        AnyState::OneD(v) => v.norm_sqr(),
        AnyState::TwoD(v) => v.norm_sqr(),
    }
}

fn insert_squeeze(params: &mut serde_json::Map<String, Value>, sp: &SqueezeSpec, displaced: bool) {
    if displaced {
        params.insert("psi".into(), c_json(sp.displacement()));
    }
    params.insert("r".into(), json!(sp.squeeze_modulus()));
    params.insert("theta".into(), json!(sp.squeeze_phase()));
}

fn insert_modes(params: &mut serde_json::Map<String, Value>, modes: &ModePair, factor: f64) {
    params.insert("alpha".into(), c_json(modes.alpha()));
    params.insert("beta".into(), c_json(modes.beta()));
    params.insert("mode_rescale_factor".into(), json!(factor));
}

// ---------------------------------------------------------- observables

fn report(var_x: f64, var_px: f64, var_y: f64, var_py: f64) -> DispersionReport {
    DispersionReport {
        var_x,
        var_px,
        var_y,
        var_py,
        product_x: (var_x * var_px).sqrt(),
        product_y: (var_y * var_py).sqrt(),
        leakage: 0.0,
    }
}

/// Closed-form dispersions for a recorded construction, when there are any.
fn analytic_report(c: &Construction) -> Option<DispersionReport> {
    let vac = |r, th| SqueezeSpec::vacuum(r, th).ok();
    let one_d = |r, th| {
        let (vx, vp) = dispersion_1d_analytic(&vac(r, th)?);
        Some(report(vx, vp, 0.5, 0.5))
    };
    match c {
        Construction::Coherent1d { .. } => Some(report(0.5, 0.5, 0.5, 0.5)),
        Construction::Squeezed1d { r, theta, .. } => one_d(*r, *theta),
        Construction::Su2Coherent { nu, alpha, beta } => {
            let n = *nu as f64;
            let (vx, vy) = (0.5 + alpha.norm_sqr() * n, 0.5 + beta.norm_sqr() * n);
            Some(report(vx, vx, vy, vy))
        }
        // a truncated sum has no closed form
        Construction::Squeezed2d { terms: Some(_), .. } => None,
        Construction::Squeezed2d { r, theta, alpha, beta, .. }
        | Construction::SqueezedVacuum { r, theta, alpha, beta } => {
            Some(dispersion_2d_analytic(&vac(*r, *theta)?, &ModePair::new(*alpha, *beta).ok()?))
        }
        Construction::OperatorBuilt { r, theta, modes: Some(m), .. } => Some(dispersion_2d_analytic(&vac(*r, *theta)?, m)),
        Construction::OperatorBuilt { r, theta, modes: None, .. } => one_d(*r, *theta),
    }
}

fn read_state(path: &Path) -> oscfock::Result<(AnyState, Option<Value>)> {
    let file = StateFile::read(path)?;
    let config = file.config.clone();
    Ok((file.into_state()?, config))
}

fn cmd_observables(a: ObservablesArgs) -> oscfock::Result<()> {
    let (state, source_config) = read_state(&a.file)?;
    let construction = state.meta().construction.clone();
    let two_d: StateVector2D = state.into_2d();
    let numeric = uncertainty_products(&two_d, a.allow_unnormalized)?;
    let schmidt = schmidt_analysis(&two_d)?;
    let analytic = construction.as_ref().and_then(analytic_report);
    let deltas = analytic.map(|an| {
        json!({
            "var_x": numeric.var_x - an.var_x,
            "var_px": numeric.var_px - an.var_px,
            "var_y": numeric.var_y - an.var_y,
            "var_py": numeric.var_py - an.var_py,
            "product_x": numeric.product_x - an.product_x,
            "product_y": numeric.product_y - an.product_y,
            "max_abs": numeric.max_abs_diff(&an),
        })
    });
    let out = json!({
        "config": {
            "command": "observables",
            "file": a.file.display().to_string(),
            "allow_unnormalized": a.allow_unnormalized,
            "output_path": a.out.as_ref().map(|p| p.display().to_string()),
            "version": env!("CARGO_PKG_VERSION"),
        },
        "source_config": source_config,
        "construction": construction,
        "cutoff": two_d.cutoff(),
        "norm_sqr": two_d.norm_sqr(),
        "numeric": numeric,
        "analytic": analytic,
        "delta": deltas,
        "schmidt": {
            "rank": schmidt.rank,
            "entropy": schmidt.entropy,
            "leading_singular_values": schmidt.singular_values.iter().take(8).collect::<Vec<_>>(),
        },
    });
    write_output(a.out.as_deref(), &serde_json::to_string_pretty(&out)?)
}

// -------------------------------------------------------------- density

/// Centroid and principal second moments of the sampled density.
fn support_shape(g: &DensityGrid) -> Value {
    let (mut w, mut mx, mut my) = (0.0, 0.0, 0.0);
    for j in 0..g.ny() {
        for i in 0..g.nx() {
            let v = g.value(i, j);
            w += v;
            mx += v * g.x_axis[i];
            my += v * g.y_axis[j];
        }
    }
    if w <= 0.0 {
        return Value::Null;
    }
    mx /= w;
    my /= w;
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for j in 0..g.ny() {
        for i in 0..g.nx() {
            let v = g.value(i, j) / w;
            let (dx, dy) = (g.x_axis[i] - mx, g.y_axis[j] - my);
            sxx += v * dx * dx;
            syy += v * dy * dy;
            sxy += v * dx * dy;
        }
    }
    let mid = 0.5 * (sxx + syy);
    let rad = (0.25 * (sxx - syy).powi(2) + sxy * sxy).sqrt();
    let (major, minor) = (mid + rad, (mid - rad).max(0.0));
    json!({
        "centroid": [mx, my],
        "covariance": [[sxx, sxy], [sxy, syy]],
        "principal_variances": [major, minor],
        "major_axis_angle": 0.5 * (2.0 * sxy).atan2(sxx - syy),
        "aspect_ratio": if minor > 0.0 { (major / minor).sqrt() } else { f64::INFINITY },
    })
}

/// Density at the grid point nearest the origin relative to the maximum,
/// or null when the origin is outside the window.
fn origin_ratio(g: &DensityGrid) -> Option<f64> {
    let nearest = |axis: &[f64]| {
        if axis[0] > 0.0 || *axis.last()? < 0.0 {
            return None;
        }
        axis.iter()
            .enumerate()
            .min_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
            .map(|(i, _)| i)
    };
    let (i, j) = (nearest(&g.x_axis)?, nearest(&g.y_axis)?);
    let max = g.max_value();
    (max > 0.0).then(|| g.value(i, j) / max)
}

fn same_file(a: &Path, b: &Path) -> bool {
    match (a.canonicalize(), b.canonicalize()) {
        (Ok(x), Ok(y)) => x == y,
        _ => false,
    }
}

fn cmd_density(a: DensityArgs) -> oscfock::Result<()> {
    let (state, source_config) = read_state(&a.file)?;
    let s = state.into_2d();
    let (xr, yr) = match (a.half_width, a.x_min, a.x_max, a.y_min, a.y_max) {
        (Some(w), ..) => ((-w, w), (-w, w)),
        (None, Some(x0), Some(x1), Some(y0), Some(y1)) => ((x0, x1), (y0, y1)),
        (None, None, None, None, None) => {
            let w = default_half_width(&s);
            ((-w, w), (-w, w))
        }
        _ => return Err(usage("give both --x-min/--x-max and --y-min/--y-max, or --half-width")),
    };
    if let Some(f) = a.floor {
        if !(0.0..=1.0).contains(&f) {
            return Err(usage(format!("--floor must lie in [0, 1], got {f}")));
        }
    }
    let grid = density_grid(&s, xr, yr, a.nx, a.ny)?;
    let sidecar = a.sidecar.clone().unwrap_or_else(|| a.out.with_extension("meta.json"));
    if same_file(&sidecar, &a.file) || same_file(&a.out, &a.file) {
        return Err(usage(format!("refusing to overwrite the input state {}", a.file.display())));
    }
    let mut w = BufWriter::new(File::create(&a.out)?);
    grid.write_csv(&mut w)?;
    w.flush()?;

    let mut maxima = serde_json::Map::new();
    maxima.insert(format!("{MAXIMA_FLOOR}"), json!(count_local_maxima(&grid, MAXIMA_FLOOR)));
    if let Some(f) = a.floor {
        maxima.insert(format!("{f}"), json!(count_local_maxima(&grid, f)));
    }
    let meta = json!({
        "config": {
            "command": "density",
            "file": a.file.display().to_string(),
            "x_range": [xr.0, xr.1],
            "y_range": [yr.0, yr.1],
            "nx": a.nx,
            "ny": a.ny,
            "floor": a.floor,
            "output_path": a.out.display().to_string(),
            "sidecar_path": sidecar.display().to_string(),
            "version": env!("CARGO_PKG_VERSION"),
        },
        "source_config": source_config,
        "construction": s.meta().construction,
        "norm_sqr": s.norm_sqr(),
        "mass": grid.mass,
        "max_density": grid.max_value(),
        "maxima_count": count_local_maxima(&grid, MAXIMA_FLOOR),
        "maxima_by_floor": maxima,
        "origin_ratio": origin_ratio(&grid),
        "support": support_shape(&grid),
    });
    std::fs::write(&sidecar, format!("{}\n", serde_json::to_string_pretty(&meta)?))?;
    println!(
        "wrote {} ({} x {} points, mass {:.6}, {} maxima at floor {MAXIMA_FLOOR})",
        a.out.display(),
        a.nx,
        a.ny,
        grid.mass,
        count_local_maxima(&grid, MAXIMA_FLOOR)
    );
    Ok(())
}

// --------------------------------------------------------------- verify

fn cmd_verify(a: VerifyArgs) -> ExitCode {
    println!("tier {}", a.tier);
    let outcomes = run_all(a.tier);
    let mut failed = Vec::new();
    for o in &outcomes {
        println!("{o}");
        if !o.passed {
            failed.push(o.id);
        }
    }
    let total: f64 = outcomes.iter().map(|o| o.elapsed.as_secs_f64()).sum();
    println!("{}/{} passed in {total:.1}s", outcomes.len() - failed.len(), outcomes.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        let ids: Vec<String> = failed.iter().map(|i| i.to_string()).collect();
        println!("failed: {}", ids.join(", "));
        ExitCode::from(1)
    }
}
