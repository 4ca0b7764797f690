//! The five subcommands. Each resolves flags against the optional config
//! file, builds core objects, and maps failures onto the exit-code contract
//! declared in [`crate::config::CliError`].

use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Args;
use tauorbit_core::catalog::CatalogEntry;
use tauorbit_core::dynamics::{check_closure, circular_orbit_state, simulate, write_trajectory_csv};
use tauorbit_core::forward::{orbit_solution_with, SolverOptions, SpectrumTable};
use tauorbit_core::inverse::{
    hydrogen_beta_anchored, hydrogen_epsilon_for_beta, hydrogen_potential,
    oscillator_beta_from_epsilon, oscillator_epsilon_for_beta, oscillator_potential,
    read_spectrum_csv, reconstruct_potential, ReconstructionSidecar, RadiusProfile, SpectrumLaw,
    SpectrumSpec,
};
use tauorbit_core::{
    read_potential_csv, verify, write_potential_csv, DiscreteParams, Error, Extrapolation,
    OrbitSolution, PhaseState, PotentialModel,
};

use crate::config::{
    load, missing, parse_range, resolve_params, resolve_range, unit_defaults, CliError,
    ExtrapolationArg, FileConfig, Format, LawKind, Phase, PotentialKind, Units,
};

/// Flags shared by every subcommand that needs discretization parameters.
#[derive(Debug, Args)]
pub struct ParamFlags {
    /// Time step (default 1; mutually exclusive with --xi)
    #[arg(long, allow_negative_numbers = true)]
    pub tau: Option<f64>,
    /// Particle mass (default 1, or the electron mass under --units ev-sec)
    #[arg(long, allow_negative_numbers = true)]
    pub mass: Option<f64>,
    /// Stiffness 4 pi^2 m / tau^2; sets tau from the mass
    #[arg(long, conflicts_with = "tau", allow_negative_numbers = true)]
    pub xi: Option<f64>,
    /// Physical-units preset
    #[arg(long, value_enum)]
    pub units: Option<Units>,
}

impl ParamFlags {
    fn resolve(&self, cfg: &FileConfig) -> Result<(DiscreteParams, f64), CliError> {
        let units = self.units.or(cfg.units);
        let defaults = unit_defaults(units);
        let mass = self.mass.or(cfg.mass).unwrap_or(defaults.mass);
        let params = resolve_params(self.tau.or(cfg.tau), self.xi.or(cfg.xi), mass)?;
        Ok((params, defaults.gamma))
    }
}

/// Flags selecting a potential.
#[derive(Debug, Args)]
pub struct PotentialFlags {
    /// Potential family
    #[arg(long, value_enum)]
    pub potential: Option<PotentialKind>,
    /// Strength parameter for coulomb/linear/logarithmic/polynomial and the
    /// oscillator-reconstructed family
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Depth parameter of the hydrogen-reconstructed family
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    /// Polynomial exponent
    #[arg(long, allow_negative_numbers = true)]
    pub sigma: Option<f64>,
    /// Shape parameter of the reconstructed families
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    /// Tabulated potential as r,U CSV
    #[arg(long)]
    pub potential_csv: Option<PathBuf>,
    /// Out-of-grid behavior for tabulated potentials
    #[arg(long, value_enum)]
    pub extrapolation: Option<ExtrapolationArg>,
}

impl PotentialFlags {
    fn build(
        &self,
        cfg: &FileConfig,
        xi: f64,
        default_gamma: f64,
    ) -> Result<PotentialModel, CliError> {
        let kind = self.potential.or(cfg.potential).ok_or_else(|| missing("--potential"))?;
        let alpha = self.alpha.or(cfg.alpha).unwrap_or(1.0);
        let beta = self.beta.or(cfg.beta).unwrap_or(0.0);
        match kind {
            PotentialKind::Coulomb => PotentialModel::coulomb(alpha).config(),
            PotentialKind::Linear => PotentialModel::linear(alpha).config(),
            PotentialKind::Logarithmic => PotentialModel::logarithmic(alpha).config(),
            PotentialKind::Polynomial => {
                let sigma = self.sigma.or(cfg.sigma).ok_or_else(|| missing("--sigma"))?;
                PotentialModel::polynomial(alpha, sigma).config()
            }
            PotentialKind::HydrogenReconstructed => {
                let gamma = self.gamma.or(cfg.gamma).unwrap_or(default_gamma);
                hydrogen_potential(gamma, beta, xi).config()
            }
            PotentialKind::OscillatorReconstructed => {
                oscillator_potential(alpha, beta, xi).config()
            }
            PotentialKind::Tabulated => {
                let path = self
                    .potential_csv
                    .clone()
                    .or_else(|| cfg.potential_csv.clone())
                    .ok_or_else(|| missing("--potential-csv"))?;
                let extrapolation: Extrapolation = self
                    .extrapolation
                    .or(cfg.extrapolation)
                    .unwrap_or(ExtrapolationArg::Error)
                    .into();
                let file = fs::File::open(&path)
                    .map_err(|e| CliError::Usage(format!("cannot open {}: {e}", path.display())))?;
                read_potential_csv(BufReader::new(file), extrapolation).config()
            }
        }
    }
}

fn write_output(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, content).map_err(|e| CliError::Config(Error::from(e))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn emit_table(
    table: &SpectrumTable,
    out: Option<&Path>,
    format: Format,
) -> Result<ExitCode, CliError> {
    let content = match format {
        Format::Csv => {
            let mut buf = Vec::new();
            table.write_csv(&mut buf).run()?;
            String::from_utf8(buf).expect("csv output is ascii")
        }
        Format::Json => {
            let mut json = table.to_json().run()?;
            json.push('\n');
            json
        }
    };
    write_output(out, &content)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    /// JSON config file mirroring the flags; explicit flags win
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub params: ParamFlags,
    #[command(flatten)]
    pub pot: PotentialFlags,
    /// Orbit index range a..b (default 1..10)
    #[arg(long, value_parser = parse_range)]
    pub n: Option<(u32, u32)>,
    /// Output path (default stdout)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format (default csv)
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Solver residual tolerance override
    #[arg(long, allow_negative_numbers = true)]
    pub tol: Option<f64>,
}

pub fn spectrum(args: SpectrumArgs) -> Result<ExitCode, CliError> {
    let cfg = load(args.config.as_deref())?;
    let (params, default_gamma) = args.params.resolve(&cfg)?;
    let pot = args.pot.build(&cfg, params.xi(), default_gamma)?;
    let (n_lo, n_hi) = resolve_range(args.n, cfg.n.as_deref(), (1, 10))?;
    let mut opts = SolverOptions::default();
    if let Some(tol) = args.tol.or(cfg.tol) {
        if !(tol.is_finite() && tol > 0.0) {
            return Err(CliError::Usage(format!("--tol must be positive, got {tol}")));
        }
        opts.residual_tol = tol;
    }

    // indices with no orbit (hydrogen family below its threshold) are
    // trimmed with a notice instead of failing the whole run
    let mut rows = Vec::new();
    for n in n_lo..=n_hi {
        match orbit_solution_with(&pot, &params, n, &opts) {
            Ok(sol) => rows.push(sol),
            Err(Error::NoOrbit { n }) => {
                eprintln!("note: skipping n = {n}: no circular orbit at these parameters");
            }
            Err(e) => return Err(CliError::Run(e)),
        }
    }
    let table = SpectrumTable { params, potential: pot.descriptor(), rows };
    let format = args.format.or(cfg.format).unwrap_or(Format::Csv);
    emit_table(&table, args.out.or(cfg.out).as_deref(), format)
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    /// JSON config file mirroring the flags; explicit flags win
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub params: ParamFlags,
    /// Catalog family: coulomb, linear, logarithmic, or polynomial
    #[arg(long, value_enum)]
    pub potential: Option<PotentialKind>,
    /// Strength parameter
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Polynomial exponent
    #[arg(long, allow_negative_numbers = true)]
    pub sigma: Option<f64>,
    /// Orbit index range a..b (default 1..10)
    #[arg(long, value_parser = parse_range)]
    pub n: Option<(u32, u32)>,
    /// Output path (default stdout)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format (default csv)
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

pub fn catalog(args: CatalogArgs) -> Result<ExitCode, CliError> {
    let cfg = load(args.config.as_deref())?;
    let (params, _) = args.params.resolve(&cfg)?;
    let alpha = args.alpha.or(cfg.alpha).unwrap_or(1.0);
    let entry = match args.potential.or(cfg.potential).ok_or_else(|| missing("--potential"))? {
        PotentialKind::Coulomb => CatalogEntry::Coulomb { alpha },
        PotentialKind::Linear => CatalogEntry::Linear { alpha },
        PotentialKind::Logarithmic => CatalogEntry::Logarithmic { alpha },
        PotentialKind::Polynomial => {
            let sigma = args.sigma.or(cfg.sigma).ok_or_else(|| missing("--sigma"))?;
            CatalogEntry::Polynomial { alpha, sigma }
        }
        other => {
            return Err(CliError::Usage(format!(
                "the catalog covers the four closed-form families, not {other:?}"
            )));
        }
    };
    let (n_lo, n_hi) = resolve_range(args.n, cfg.n.as_deref(), (1, 10))?;

    let xi = params.xi();
    let mut rows = Vec::new();
    for n in n_lo..=n_hi {
        let nf = n as f64;
        let r_n = entry.radius(xi, nf).config()?;
        let e_n = entry.energy(xi, nf).config()?;
        let p_phi = std::f64::consts::TAU * params.mass() * r_n * r_n / (nf * params.tau());
        rows.push(OrbitSolution { n, r_n, e_n, p_phi });
    }
    let table =
        SpectrumTable { params, potential: entry.potential().config()?.descriptor(), rows };
    let format = args.format.or(cfg.format).unwrap_or(Format::Csv);
    emit_table(&table, args.out.or(cfg.out).as_deref(), format)
}

#[derive(Debug, Args)]
pub struct ReconstructArgs {
    /// JSON config file mirroring the flags; explicit flags win
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub params: ParamFlags,
    /// Spectrum law to invert
    #[arg(long, value_enum, conflicts_with = "spectrum_csv")]
    pub law: Option<LawKind>,
    /// Law strength for linear (E = alpha n)
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Law depth for hydrogen (E = -gamma / n^2)
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    /// Power-law coefficient (E = coeff n^exponent)
    #[arg(long, allow_negative_numbers = true)]
    pub coeff: Option<f64>,
    /// Power-law exponent
    #[arg(long, allow_negative_numbers = true)]
    pub exponent: Option<f64>,
    /// Tabulated spectrum as n,E CSV with consecutive integer n from 1
    #[arg(long)]
    pub spectrum_csv: Option<PathBuf>,
    /// Anchor constant eps = xi r(1)^2
    #[arg(long, allow_negative_numbers = true)]
    pub epsilon: Option<f64>,
    /// Shape parameter; converted to eps via the verified relation
    #[arg(long, conflicts_with = "epsilon", allow_negative_numbers = true)]
    pub beta: Option<f64>,
    /// Largest index the radius grid must cover (default 32)
    #[arg(long)]
    pub n_max: Option<u32>,
    /// Number of grid radii (default 512)
    #[arg(long)]
    pub points: Option<usize>,
    /// Output CSV path; the JSON sidecar sits next to it
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn law_spec(args: &ReconstructArgs, cfg: &FileConfig, default_gamma: f64) -> Result<SpectrumSpec, CliError> {
    if let Some(path) = args.spectrum_csv.clone().or_else(|| cfg.spectrum_csv.clone()) {
        if args.law.or(cfg.law).is_some() {
            return Err(CliError::Usage(
                "--law and --spectrum-csv are mutually exclusive".into(),
            ));
        }
        let file = fs::File::open(&path)
            .map_err(|e| CliError::Usage(format!("cannot open {}: {e}", path.display())))?;
        let energies = read_spectrum_csv(BufReader::new(file)).config()?;
        return Ok(SpectrumSpec::Tabulated { energies });
    }
    match args.law.or(cfg.law).ok_or_else(|| missing("--law or --spectrum-csv"))? {
        LawKind::Hydrogen => {
            Ok(SpectrumSpec::Hydrogen { gamma: args.gamma.or(cfg.gamma).unwrap_or(default_gamma) })
        }
        LawKind::Linear => {
            Ok(SpectrumSpec::Linear { alpha: args.alpha.or(cfg.alpha).unwrap_or(1.0) })
        }
        LawKind::Power => {
            let coeff = args.coeff.or(cfg.coeff).ok_or_else(|| missing("--coeff"))?;
            let exponent = args.exponent.or(cfg.exponent).ok_or_else(|| missing("--exponent"))?;
            Ok(SpectrumSpec::Power { coeff, exponent })
        }
    }
}

/// The anchor, either given directly or derived from beta where a closed
/// form ties the two together.
fn resolve_epsilon(
    spec: &SpectrumSpec,
    epsilon: Option<f64>,
    beta: Option<f64>,
    xi: f64,
) -> Result<f64, CliError> {
    match (epsilon, beta) {
        (Some(_), Some(_)) => {
            Err(CliError::Usage("--epsilon and --beta are mutually exclusive".into()))
        }
        (Some(eps), None) => Ok(eps),
        (None, Some(beta)) => match spec {
            SpectrumSpec::Hydrogen { gamma } => {
                hydrogen_epsilon_for_beta(*gamma, beta, xi).config()
            }
            SpectrumSpec::Linear { alpha } => Ok(oscillator_epsilon_for_beta(*alpha, beta, xi)),
            _ => Err(CliError::Usage(
                "--beta only applies to the hydrogen and linear laws; give --epsilon".into(),
            )),
        },
        (None, None) => Err(missing("--epsilon (or --beta)")),
    }
}

/// Closed form matching the law, when one exists for the given anchor.
fn overlay_potential(spec: &SpectrumSpec, epsilon: f64, xi: f64) -> Option<PotentialModel> {
    match spec {
        SpectrumSpec::Hydrogen { gamma } => {
            let beta = hydrogen_beta_anchored(*gamma, epsilon, xi).ok()?;
            hydrogen_potential(*gamma, beta, xi).ok()
        }
        SpectrumSpec::Linear { alpha } => {
            let beta = oscillator_beta_from_epsilon(*alpha, epsilon, xi).ok()?;
            oscillator_potential(*alpha, beta, xi).ok()
        }
        _ => None,
    }
}

pub fn reconstruct(args: ReconstructArgs) -> Result<ExitCode, CliError> {
    let cfg = load(args.config.as_deref())?;
    let (params, default_gamma) = args.params.resolve(&cfg)?;
    let xi = params.xi();
    let spec = law_spec(&args, &cfg, default_gamma)?;
    let epsilon = resolve_epsilon(&spec, args.epsilon.or(cfg.epsilon), args.beta.or(cfg.beta), xi)?;
    let out = args.out.or_else(|| cfg.out.clone()).ok_or_else(|| missing("--out"))?;
    if out.extension().is_some_and(|e| e == "json") {
        return Err(CliError::Usage(
            "--out takes the CSV path; the .json sidecar name is derived from it".into(),
        ));
    }
    let law = SpectrumLaw::from_spec(&spec).config()?;
    // tabulated spectra cap the grid at their own top index
    let n_max = args
        .n_max
        .or(cfg.n_max)
        .unwrap_or_else(|| law.n_sup().map_or(32, |sup| sup as u32));
    if n_max < 2 {
        return Err(CliError::Usage(format!("--n-max must be at least 2, got {n_max}")));
    }
    if law.n_sup().is_some_and(|sup| (n_max as f64) > sup) {
        return Err(CliError::Usage(format!(
            "--n-max {n_max} exceeds the tabulated spectrum, which ends at n = {}",
            law.n_sup().unwrap()
        )));
    }
    let points = args.points.or(cfg.points).unwrap_or(512);

    let profile = RadiusProfile::new(law, xi, epsilon).config()?;
    let r_lo = profile.radius(1.0).run()?;
    let r_hi = profile.radius(n_max as f64).run()?;
    let grid = tauorbit_core::inverse::log_spaced(r_lo, r_hi, points).config()?;
    let recon = reconstruct_potential(&profile, &grid).run()?;

    let radii: Vec<f64> = recon.knots.iter().map(|k| k.r).collect();
    let values: Vec<f64> = recon.knots.iter().map(|k| k.u).collect();
    let mut csv = Vec::new();
    write_potential_csv(&mut csv, &radii, &values).run()?;
    write_output(Some(&out), &String::from_utf8(csv).expect("csv output is ascii"))?;

    let sidecar_path = out.with_extension("json");
    let sidecar = ReconstructionSidecar::new(&spec, &params, epsilon);
    let mut sidecar_json = sidecar.to_json().run()?;
    sidecar_json.push('\n');
    write_output(Some(&sidecar_path), &sidecar_json)?;

    println!(
        "wrote {} ({} knots, r in [{}, {}]) and sidecar {}",
        out.display(),
        recon.knots.len(),
        radii.first().expect("grid is nonempty"),
        radii.last().expect("grid is nonempty"),
        sidecar_path.display()
    );
    match overlay_potential(&spec, epsilon, xi) {
        Some(closed) => {
            let mut worst = 0.0f64;
            for k in &recon.knots {
                let reference = closed.evaluate(k.r).run()?;
                worst = worst.max((k.u - reference).abs() / reference.abs());
            }
            println!("closed-form overlay: max relative deviation {worst:.3e}");
        }
        None => println!("no closed form for this law; tabulated output only"),
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// JSON config file mirroring the flags; explicit flags win
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub params: ParamFlags,
    #[command(flatten)]
    pub pot: PotentialFlags,
    /// Circular-orbit mode: simulate the orbit that closes in n steps, for
    /// each n in the range
    #[arg(long, value_parser = parse_range, conflicts_with = "state")]
    pub n: Option<(u32, u32)>,
    /// Explicit initial state r,p_r,phi,p_phi
    #[arg(long, allow_hyphen_values = true)]
    pub state: Option<String>,
    /// Step count (defaults to n in orbit mode; required with --state)
    #[arg(long)]
    pub steps: Option<usize>,
    /// Closure tolerance for orbit mode (default 1e-12)
    #[arg(long, allow_negative_numbers = true)]
    pub tol: Option<f64>,
    /// Output path; ranges of n write one file per index with suffix _n<k>
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_state(s: &str) -> Result<PhaseState, CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(CliError::Usage(format!("--state takes r,p_r,phi,p_phi, got '{s}'")));
    }
    let mut vals = [0.0f64; 4];
    for (v, p) in vals.iter_mut().zip(&parts) {
        *v = p
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("bad number '{}' in --state", p.trim())))?;
    }
    Ok(PhaseState::new(vals[0], vals[1], vals[2], vals[3]))
}

fn indexed_path(base: &Path, n: u32) -> PathBuf {
    let stem = base.file_stem().and_then(|s| s.to_str()).unwrap_or("trajectory");
    let named = match base.extension().and_then(|e| e.to_str()) {
        Some(ext) => format!("{stem}_n{n}.{ext}"),
        None => format!("{stem}_n{n}"),
    };
    base.with_file_name(named)
}

pub fn simulate_cmd(args: SimulateArgs) -> Result<ExitCode, CliError> {
    let cfg = load(args.config.as_deref())?;
    let (params, default_gamma) = args.params.resolve(&cfg)?;
    let pot = args.pot.build(&cfg, params.xi(), default_gamma)?;
    let steps = args.steps.or(cfg.steps);
    let out = args.out.or_else(|| cfg.out.clone());

    if let Some(state_text) = args.state.as_deref().or(cfg.state.as_deref()) {
        let s0 = parse_state(state_text)?;
        let steps = steps.ok_or_else(|| missing("--steps"))?;
        let traj = simulate(&pot, &params, &s0, steps).run()?;
        let mut buf = Vec::new();
        write_trajectory_csv(&traj, &params, &mut buf).run()?;
        write_output(out.as_deref(), &String::from_utf8(buf).expect("csv output is ascii"))?;
        return Ok(ExitCode::SUCCESS);
    }

    let range = match args.n {
        Some(r) => Some(r),
        None => cfg.n.as_deref().map(parse_range).transpose().map_err(CliError::Usage)?,
    };
    let Some((n_lo, n_hi)) = range else {
        return Err(missing("--n or --state"));
    };
    let tol = args.tol.or(cfg.tol).unwrap_or(1e-12);
    if !(tol.is_finite() && tol > 0.0) {
        return Err(CliError::Usage(format!("--tol must be positive, got {tol}")));
    }
    let multi = n_hi > n_lo;
    for n in n_lo..=n_hi {
        let sol = orbit_solution_with(&pot, &params, n, &SolverOptions::default())
            .map_err(CliError::Run)?;
        let s0 = circular_orbit_state(&params, sol.r_n, n).run()?;
        let steps_n = steps.unwrap_or(n as usize).max(n as usize);
        let traj = simulate(&pot, &params, &s0, steps_n).run()?;
        let report = check_closure(&traj, n, tol).run()?;
        let verdict = if report.pass { "pass" } else { "FAIL" };
        let closure_line = format!(
            "closure n={n} {verdict}: phi {:e}, r {:e}, p_r {:e}",
            report.phi_residual, report.r_residual, report.pr_residual
        );

        let mut buf = Vec::new();
        write_trajectory_csv(&traj, &params, &mut buf).run()?;
        let csv = String::from_utf8(buf).expect("csv output is ascii");
        let content = format!("# {closure_line}\n{csv}");
        match &out {
            Some(path) => {
                let target = if multi { indexed_path(path, n) } else { path.clone() };
                write_output(Some(&target), &content)?;
                println!("{closure_line} -> {}", target.display());
            }
            None => print!("{content}"),
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// JSON config file mirroring the flags; explicit flags win
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Run one suite: closed-forms, round-trip, closure, or beta-convention
    #[arg(long)]
    pub suite: Option<String>,
    /// Additionally sweep closure residuals for coulomb orbits up to this n
    #[arg(long)]
    pub n_max: Option<u32>,
}

pub fn verify_cmd(args: VerifyArgs) -> Result<ExitCode, CliError> {
    let cfg = load(args.config.as_deref())?;
    let suites = match args.suite.as_deref().or(cfg.suite.as_deref()) {
        None => verify::run_all(),
        Some("closed-forms") => vec![verify::closed_form_suite()],
        Some("round-trip") => vec![verify::round_trip_suite()],
        Some("closure") => vec![verify::closure_suite()],
        Some("beta-convention") => vec![verify::beta_convention_suite()],
        Some(other) => {
            return Err(CliError::Usage(format!(
                "unknown suite '{other}'; expected closed-forms, round-trip, closure, or \
                 beta-convention"
            )));
        }
    };

    let mut all_passed = true;
    let mut checks = 0usize;
    for suite in &suites {
        println!("suite {}", suite.name);
        for check in &suite.checks {
            let verdict = if check.passed { "PASS" } else { "FAIL" };
            println!("  [{verdict}] {}: {}", check.name, check.detail);
            all_passed &= check.passed;
            checks += 1;
        }
    }

    if let Some(n_max) = args.n_max.or(cfg.n_max) {
        let params = DiscreteParams::new(1.0, 1.0).config()?;
        let pot = PotentialModel::coulomb(1.0).config()?;
        println!("closure sweep (coulomb, alpha = 1, tau = 1, mass = 1):");
        for n in 1..=n_max {
            let sol = orbit_solution_with(&pot, &params, n, &SolverOptions::default()).run()?;
            let s0 = circular_orbit_state(&params, sol.r_n, n).run()?;
            let traj = simulate(&pot, &params, &s0, n as usize).run()?;
            let report = check_closure(&traj, n, 1e-12).run()?;
            let verdict = if report.pass { "pass" } else { "FAIL" };
            println!(
                "  n = {n}: phi {:e}, r {:e}, p_r {:e}, {verdict}",
                report.phi_residual, report.r_residual, report.pr_residual
            );
            all_passed &= report.pass;
        }
    }

    if all_passed {
        println!("{} suites, {checks} checks, all passed", suites.len());
        Ok(ExitCode::SUCCESS)
    } else {
        println!("{} suites, {checks} checks, FAILURES above", suites.len());
        Ok(ExitCode::from(1))
    }
}
