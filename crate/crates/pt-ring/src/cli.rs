//! Command-line interface.
//!
//! Subcommands: `spectrum`, `evolve`, `phase-diagram`, `chirality`,
//! `bethe`. Parameter precedence is flag > config file > built-in
//! default; every file-producing run writes a manifest that fully
//! reproduces it.
//!
//! Exit codes: 0 success, 2 validation/usage, 3 numerical failure,
//! 4 I/O failure, 5 sweep with more than 10% failed points.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bethe::{bethe_roots, BetheError};
use crate::config::{ConfigError, RingConfig};
use crate::dynamics::{evolve, DynamicsError};
use crate::hamiltonian::{build_hamiltonian, build_parity, check_pt_symmetry, HamiltonianError};
use crate::io::csv as csv_out;
use crate::io::manifest::{load_config_file, FileValues, Resolver, RunManifest};
use crate::io::svg::{
    heatmap_svg, line_plot_svg, reciprocal_ticks, site_ticks, HeatmapSpec, LineSeries,
};
use crate::io::IoError;
use crate::spectrum::{diagonalize, spectral_checks, SpectrumError};
use crate::sweeps::{chirality_curve, gamma_grid, phase_diagram};

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Numerical(String),
    Io(String),
    SweepFailed { failed: usize, total: usize },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 4,
            CliError::SweepFailed { .. } => 5,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "{m}"),
            CliError::Numerical(m) => write!(f, "numerical error: {m}"),
            CliError::Io(m) => write!(f, "io error: {m}"),
            CliError::SweepFailed { failed, total } => {
                write!(f, "sweep failed: {failed}/{total} points errored")
            }
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<HamiltonianError> for CliError {
    fn from(e: HamiltonianError) -> Self {
        match e {
            HamiltonianError::Config(c) => CliError::Validation(c.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<SpectrumError> for CliError {
    fn from(e: SpectrumError) -> Self {
        match e {
            SpectrumError::Config(c) => CliError::Validation(c.to_string()),
            other => CliError::Numerical(other.to_string()),
        }
    }
}

impl From<DynamicsError> for CliError {
    fn from(e: DynamicsError) -> Self {
        match e {
            DynamicsError::Config(c) => CliError::Validation(c.to_string()),
            DynamicsError::BadInitialSite { .. }
            | DynamicsError::BadTimeStep(_)
            | DynamicsError::BadTmax(_)
            | DynamicsError::BadWindow { .. } => CliError::Validation(e.to_string()),
            other => CliError::Numerical(other.to_string()),
        }
    }
}

impl From<BetheError> for CliError {
    fn from(e: BetheError) -> Self {
        match e {
            BetheError::Config(c) => CliError::Validation(c.to_string()),
            other => CliError::Numerical(other.to_string()),
        }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Io(err) => CliError::Io(err.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "pt-ring",
    version,
    about = "Gain/loss ring lattice: spectra, symmetry-breaking thresholds, chiral dynamics"
)]
pub struct Cli {
    /// Defaults file (`key = value` lines); flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Diagonalize one lattice: eigenvalues, phase, and spectrum checks.
    Spectrum(SpectrumArgs),
    /// Evolve a site-localized packet; write trajectory CSVs and heatmaps.
    Evolve(EvolveArgs),
    /// Critical impurity strength over sink positions and tunnelings.
    PhaseDiagram(PhaseDiagramArgs),
    /// Steady-state momentum vs impurity strength for several sinks.
    Chirality(ChiralityArgs),
    /// Solve the quantization condition and match roots to the spectrum.
    Bethe(BetheArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
pub enum HeatmapChoice {
    Real,
    Reciprocal,
    Both,
    None,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub t0: Option<f64>,
    #[arg(long)]
    pub tb: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Cross-check the spectrum against the quantization-condition roots.
    #[arg(long)]
    pub bethe: bool,
    /// Output path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct EvolveArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub t0: Option<f64>,
    #[arg(long)]
    pub tb: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Initial site of the packet.
    #[arg(long)]
    pub m0: Option<usize>,
    /// Final time in normalized units (2πħ/max(t0,tb)).
    #[arg(long)]
    pub tmax: Option<f64>,
    #[arg(long)]
    pub dt: Option<f64>,
    #[arg(long, value_enum, default_value_t = HeatmapChoice::Both)]
    pub heatmap: HeatmapChoice,
    /// Log-scale color map (useful past the breaking threshold).
    #[arg(long)]
    pub log_scale: bool,
    #[arg(long)]
    pub out_dir: PathBuf,
}

#[derive(Args, Debug)]
pub struct PhaseDiagramArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub t0: Option<f64>,
    /// Inner tunnelings, one series each (comma separated).
    #[arg(long, value_delimiter = ',')]
    pub tb_list: Option<Vec<f64>>,
    /// Sink positions (comma separated). Default: 3,5,…,N/2+1.
    #[arg(long, value_delimiter = ',')]
    pub d_list: Option<Vec<usize>>,
    /// Worker threads (0 = rayon default).
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    #[arg(long)]
    pub out_dir: PathBuf,
}

#[derive(Args, Debug)]
pub struct ChiralityArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub t0: Option<f64>,
    #[arg(long)]
    pub tb: Option<f64>,
    /// Sink positions, one curve each (comma separated).
    #[arg(long, value_delimiter = ',')]
    pub d_list: Option<Vec<usize>>,
    /// Top of the γ grid. Default: 2·|t0 − tb|.
    #[arg(long)]
    pub gamma_max: Option<f64>,
    /// Number of γ intervals (grid has steps + 1 points).
    #[arg(long, default_value_t = 20)]
    pub gamma_steps: usize,
    #[arg(long)]
    pub m0: Option<usize>,
    /// Averaging window T in normalized units.
    #[arg(long)]
    pub t_avg: Option<f64>,
    #[arg(long)]
    pub dt: Option<f64>,
    /// Worker threads (0 = rayon default).
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    #[arg(long)]
    pub out_dir: PathBuf,
}

#[derive(Args, Debug)]
pub struct BetheArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub t0: Option<f64>,
    #[arg(long)]
    pub tb: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Output path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parse argv, dispatch, and return the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("pt-ring: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    let file_values = match &cli.config {
        Some(path) => load_config_file(path)?,
        None => FileValues::default(),
    };
    match cli.command {
        Command::Spectrum(args) => run_spectrum(args, file_values),
        Command::Evolve(args) => run_evolve(args, file_values),
        Command::PhaseDiagram(args) => run_phase_diagram(args, file_values),
        Command::Chirality(args) => run_chirality(args, file_values),
        Command::Bethe(args) => run_bethe(args, file_values),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn emit(out: &Option<PathBuf>, contents: &str, manifest: &mut RunManifest) -> Result<(), CliError> {
    match out {
        Some(path) => {
            write_file(path, contents)?;
            manifest
                .outputs
                .push(path.file_name().unwrap_or_default().to_string_lossy().into());
            let manifest_path = PathBuf::from(format!("{}.manifest.json", path.display()));
            write_file(&manifest_path, &manifest.to_json())
        }
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn thread_pool(threads: usize) -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if threads > 0 {
        builder = builder.num_threads(threads);
    }
    builder
        .build()
        .map_err(|e| CliError::Numerical(format!("thread pool: {e}")))
}

fn run_spectrum(args: SpectrumArgs, file_values: FileValues) -> Result<(), CliError> {
    let mut r = Resolver::new(file_values);
    let n = r.n(args.n);
    let d = r.d(args.d);
    let t0 = r.t0(args.t0);
    let tb = r.tb(args.tb);
    let gamma = r.gamma(args.gamma);

    let config = RingConfig::new(n, d, t0, tb, gamma)?;
    let h = build_hamiltonian(&config)?;
    let parity = build_parity(&config)?;
    let pt_deviation = check_pt_symmetry(&h, &parity)?;
    let spec = diagonalize(&h)?;
    let report = spectral_checks(&spec, &config);

    let mut manifest = RunManifest::new("spectrum", &r);
    manifest.set("n", n);
    manifest.set("d", d);
    manifest.set("t0", t0);
    manifest.set("tb", tb);
    manifest.set("gamma", gamma);
    manifest.set("format", format!("{:?}", args.format).to_lowercase());
    manifest.set("bethe", args.bethe);

    let contents = match args.format {
        OutputFormat::Csv => csv_out::spectrum_csv(&spec),
        OutputFormat::Json => {
            let mut doc = serde_json::json!({
                "n": n,
                "d": d,
                "t0": t0,
                "tb": tb,
                "gamma": gamma,
                "phase": spec.phase,
                "max_imag": spec.max_imag,
                "imag_tolerance": spec.imag_tolerance,
                "pt_symmetry_deviation": pt_deviation,
                "eigenvalues": spec.eigenvalues.iter().map(|z| vec![z.re, z.im]).collect::<Vec<_>>(),
                "checks": report,
            });
            if args.bethe {
                let scan = bethe_roots(&config)?;
                let table: Vec<serde_json::Value> = scan
                    .roots
                    .iter()
                    .map(|root| {
                        let (eig, dist) = nearest_eigenvalue(root.energy, &spec.eigenvalues);
                        serde_json::json!({
                            "k": [root.k.re, root.k.im],
                            "k_prime": [root.k_prime.re, root.k_prime.im],
                            "energy": [root.energy.re, root.energy.im],
                            "residual": root.residual,
                            "nearest_eigenvalue": [eig.re, eig.im],
                            "match_dist": dist,
                        })
                    })
                    .collect();
                let max_dist = scan
                    .roots
                    .iter()
                    .map(|root| nearest_eigenvalue(root.energy, &spec.eigenvalues).1)
                    .fold(0.0_f64, f64::max);
                doc["bethe"] = serde_json::json!({
                    "roots_found": scan.roots.len(),
                    "grid_points": scan.grid_points,
                    "max_match_dist": max_dist,
                    "table": table,
                });
            }
            serde_json::to_string_pretty(&doc).expect("report serializes") + "\n"
        }
    };
    emit(&args.out, &contents, &mut manifest)
}

fn nearest_eigenvalue(
    energy: num_complex::Complex64,
    eigenvalues: &[num_complex::Complex64],
) -> (num_complex::Complex64, f64) {
    eigenvalues
        .iter()
        .map(|&e| (e, (e - energy).norm()))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap_or((num_complex::Complex64::new(f64::NAN, f64::NAN), f64::NAN))
}

fn run_evolve(args: EvolveArgs, file_values: FileValues) -> Result<(), CliError> {
    let mut r = Resolver::new(file_values);
    let n = r.n(args.n);
    let d = r.d(args.d);
    let t0 = r.t0(args.t0);
    let tb = r.tb(args.tb);
    let gamma = r.gamma(args.gamma);
    let m0 = r.m0(args.m0);
    let dt = r.dt(args.dt);
    let tmax = r.flag_only("tmax", args.tmax, 16.0);

    let config = RingConfig::new(n, d, t0, tb, gamma)?;
    let trajectory = evolve(&config, m0, tmax, dt)?;

    std::fs::create_dir_all(&args.out_dir)
        .map_err(|e| CliError::Io(format!("{}: {e}", args.out_dir.display())))?;

    let mut manifest = RunManifest::new("evolve", &r);
    manifest.set("n", n);
    manifest.set("d", d);
    manifest.set("t0", t0);
    manifest.set("tb", tb);
    manifest.set("gamma", gamma);
    manifest.set("m0", m0);
    manifest.set("tmax", tmax);
    manifest.set("dt", dt);
    manifest.set("heatmap", format!("{:?}", args.heatmap).to_lowercase());
    manifest.set("log_scale", args.log_scale);

    write_file(
        &args.out_dir.join("real.csv"),
        &csv_out::trajectory_real_csv(&trajectory),
    )?;
    write_file(
        &args.out_dir.join("reciprocal.csv"),
        &csv_out::trajectory_reciprocal_csv(&trajectory),
    )?;
    write_file(
        &args.out_dir.join("momentum.csv"),
        &csv_out::trajectory_momentum_csv(&trajectory),
    )?;
    manifest.outputs.extend(
        ["real.csv", "reciprocal.csv", "momentum.csv"]
            .iter()
            .map(|s| s.to_string()),
    );

    if matches!(args.heatmap, HeatmapChoice::Real | HeatmapChoice::Both) {
        let svg = heatmap_svg(&HeatmapSpec {
            title: format!("I_R(j,t)  N={n} d={d} t0={t0} tb={tb} gamma={gamma} m0={m0}"),
            x_label: "t  [2πħ/max(t0,tb)]".into(),
            y_label: "site j".into(),
            times: &trajectory.sample_times,
            y_ticks: site_ticks(n),
            data: &trajectory.i_r,
            log_scale: args.log_scale,
        });
        write_file(&args.out_dir.join("real.svg"), &svg)?;
        manifest.outputs.push("real.svg".into());
    }
    if matches!(args.heatmap, HeatmapChoice::Reciprocal | HeatmapChoice::Both) {
        let svg = heatmap_svg(&HeatmapSpec {
            title: format!("I_M(u,t)  N={n} d={d} t0={t0} tb={tb} gamma={gamma} m0={m0}"),
            x_label: "t  [2πħ/max(t0,tb)]".into(),
            y_label: "p_u".into(),
            times: &trajectory.sample_times,
            y_ticks: reciprocal_ticks(n),
            data: &trajectory.i_m,
            log_scale: args.log_scale,
        });
        write_file(&args.out_dir.join("reciprocal.svg"), &svg)?;
        manifest.outputs.push("reciprocal.svg".into());
    }

    write_file(&args.out_dir.join("manifest.json"), &manifest.to_json())
}

fn default_d_list(n: usize) -> Vec<usize> {
    // odd sink positions up to the midpoint: 3, 5, ..., N/2 + 1
    let mut d = 3;
    let mut out = Vec::new();
    while d <= n / 2 + 1 {
        out.push(d);
        d += 2;
    }
    out
}

fn run_phase_diagram(args: PhaseDiagramArgs, file_values: FileValues) -> Result<(), CliError> {
    let mut r = Resolver::new(file_values);
    let n = r.n(args.n);
    let t0 = r.t0(args.t0);
    let tb_list = r.flag_only("tb_list", args.tb_list, vec![0.25, 0.5, 0.75]);
    let d_list = r.flag_only("d_list", args.d_list, default_d_list(n));
    let threads = r.flag_only("threads", Some(args.threads), 0);

    if tb_list.is_empty() || d_list.is_empty() {
        return Err(CliError::Validation(
            "tb-list and d-list must be non-empty".into(),
        ));
    }
    // base config: d placeholder (validated per point), gamma 0
    let base = RingConfig::new(n, 2, t0, tb_list[0], 0.0)?;

    let pool = thread_pool(threads)?;
    let grid = pool.install(|| phase_diagram(&base, &d_list, &tb_list));

    std::fs::create_dir_all(&args.out_dir)
        .map_err(|e| CliError::Io(format!("{}: {e}", args.out_dir.display())))?;

    let mut manifest = RunManifest::new("phase-diagram", &r);
    manifest.set("n", n);
    manifest.set("t0", t0);
    manifest.set("tb_list", &tb_list);
    manifest.set("d_list", &d_list);
    manifest.set("threads", threads);

    write_file(
        &args.out_dir.join("phase_diagram.csv"),
        &csv_out::phase_diagram_csv(&grid),
    )?;

    let series: Vec<LineSeries> = tb_list
        .iter()
        .map(|&tb| LineSeries {
            label: format!("tb = {tb}"),
            points: grid
                .points
                .iter()
                .filter(|p| p.tb == tb)
                .filter_map(|p| p.gamma_pt_normalized.map(|g| (p.mu, g)))
                .collect(),
        })
        .collect();
    let svg = line_plot_svg(
        &format!("Critical strength vs impurity separation (N={n}, t0={t0})"),
        "mu = (d-1)/N",
        "gamma_PT / max(t0,tb)",
        &series,
    );
    write_file(&args.out_dir.join("phase_diagram.svg"), &svg)?;

    manifest.outputs.extend(
        ["phase_diagram.csv", "phase_diagram.svg"]
            .iter()
            .map(|s| s.to_string()),
    );
    write_file(&args.out_dir.join("manifest.json"), &manifest.to_json())?;

    let failed = grid.points.iter().filter(|p| p.error.is_some()).count();
    let total = grid.points.len();
    if failed * 10 > total {
        return Err(CliError::SweepFailed { failed, total });
    }
    Ok(())
}

fn run_chirality(args: ChiralityArgs, file_values: FileValues) -> Result<(), CliError> {
    let mut r = Resolver::new(file_values);
    let n = r.n(args.n);
    let t0 = r.t0(args.t0);
    let tb = r.tb(args.tb);
    let m0 = r.m0(args.m0);
    let dt = r.dt(args.dt);
    let t_avg = r.t_avg(args.t_avg);
    let d_list = r.flag_only("d_list", args.d_list, vec![8, 12, 16]);
    let default_gmax = if (t0 - tb).abs() > 0.0 {
        2.0 * (t0 - tb).abs()
    } else {
        t0.max(tb)
    };
    let gamma_max = r.flag_only("gamma_max", args.gamma_max, default_gmax);
    let gamma_steps = r.flag_only("gamma_steps", Some(args.gamma_steps), 20);
    let threads = r.flag_only("threads", Some(args.threads), 0);

    if d_list.is_empty() || gamma_steps == 0 || !(gamma_max > 0.0) {
        return Err(CliError::Validation(
            "need a non-empty d-list, gamma-steps >= 1, and gamma-max > 0".into(),
        ));
    }
    let base = RingConfig::new(n, d_list[0], t0, tb, 0.0)?;
    let gammas = gamma_grid(gamma_max, gamma_steps);

    let pool = thread_pool(threads)?;
    let grid = pool.install(|| chirality_curve(&base, m0, &d_list, &gammas, t_avg, dt));

    std::fs::create_dir_all(&args.out_dir)
        .map_err(|e| CliError::Io(format!("{}: {e}", args.out_dir.display())))?;

    let mut manifest = RunManifest::new("chirality", &r);
    manifest.set("n", n);
    manifest.set("t0", t0);
    manifest.set("tb", tb);
    manifest.set("d_list", &d_list);
    manifest.set("gamma_max", gamma_max);
    manifest.set("gamma_steps", gamma_steps);
    manifest.set("m0", m0);
    manifest.set("t_avg", t_avg);
    manifest.set("dt", dt);
    manifest.set("threads", threads);

    write_file(
        &args.out_dir.join("chirality.csv"),
        &csv_out::chirality_csv(&grid),
    )?;

    let series: Vec<LineSeries> = d_list
        .iter()
        .map(|&d| LineSeries {
            label: format!("d = {d}"),
            points: grid
                .points
                .iter()
                .filter(|p| p.d == d)
                .filter_map(|p| p.p_bar.map(|v| (p.gamma, v)))
                .collect(),
        })
        .collect();
    let svg = line_plot_svg(
        &format!("Steady-state momentum (N={n}, t0={t0}, tb={tb}, m0={m0}, T={t_avg})"),
        "gamma",
        "p(gamma)",
        &series,
    );
    write_file(&args.out_dir.join("chirality.svg"), &svg)?;

    manifest.outputs.extend(
        ["chirality.csv", "chirality.svg"]
            .iter()
            .map(|s| s.to_string()),
    );
    write_file(&args.out_dir.join("manifest.json"), &manifest.to_json())?;

    let failed = grid.points.iter().filter(|p| p.error.is_some()).count();
    let total = grid.points.len();
    if failed * 10 > total {
        return Err(CliError::SweepFailed { failed, total });
    }
    Ok(())
}

fn run_bethe(args: BetheArgs, file_values: FileValues) -> Result<(), CliError> {
    let mut r = Resolver::new(file_values);
    let n = r.n(args.n);
    let d = r.d(args.d);
    let t0 = r.t0(args.t0);
    let tb = r.tb(args.tb);
    let gamma = r.gamma(args.gamma);

    let config = RingConfig::new(n, d, t0, tb, gamma)?;
    let scan = bethe_roots(&config)?;
    let spec = diagonalize_config_for_cli(&config)?;

    let real_eigs = spec
        .eigenvalues
        .iter()
        .filter(|z| z.im.abs() <= spec.imag_tolerance)
        .count();
    if scan.roots.len() < real_eigs {
        eprintln!(
            "pt-ring: warning: {} real-energy roots for {} real eigenvalues \
             (degenerate pairs share a root; evanescent branches are not scanned)",
            scan.roots.len(),
            real_eigs
        );
    }

    let mut manifest = RunManifest::new("bethe", &r);
    manifest.set("n", n);
    manifest.set("d", d);
    manifest.set("t0", t0);
    manifest.set("tb", tb);
    manifest.set("gamma", gamma);
    manifest.set("format", format!("{:?}", args.format).to_lowercase());

    let contents = match args.format {
        OutputFormat::Csv => csv_out::bethe_csv(&scan, &spec.eigenvalues),
        OutputFormat::Json => {
            let table: Vec<serde_json::Value> = scan
                .roots
                .iter()
                .map(|root| {
                    let (eig, dist) = nearest_eigenvalue(root.energy, &spec.eigenvalues);
                    serde_json::json!({
                        "k": [root.k.re, root.k.im],
                        "k_prime": [root.k_prime.re, root.k_prime.im],
                        "energy": [root.energy.re, root.energy.im],
                        "residual": root.residual,
                        "nearest_eigenvalue": [eig.re, eig.im],
                        "match_dist": dist,
                    })
                })
                .collect();
            let doc = serde_json::json!({
                "n": n, "d": d, "t0": t0, "tb": tb, "gamma": gamma,
                "roots_found": scan.roots.len(),
                "grid_points": scan.grid_points,
                "roots": table,
            });
            serde_json::to_string_pretty(&doc).expect("report serializes") + "\n"
        }
    };
    emit(&args.out, &contents, &mut manifest)
}

fn diagonalize_config_for_cli(
    config: &RingConfig,
) -> Result<crate::spectrum::SpectralResult, CliError> {
    let h = build_hamiltonian(config)?;
    Ok(diagonalize(&h)?)
}
