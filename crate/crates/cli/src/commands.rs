//! Subcommands. Data goes to files, summaries to stdout, warnings to stderr.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use phase_markov_core::modal::{ModalResult, ModeSummary};
use phase_markov_core::states::robust_max;
use phase_markov_core::{
    add_lag_channels, attractor_count, decompose, eigenform_table, embed, expected_coordinates,
    fit_crisp_strided, fit_fuzzy_strided, forecast, information_estimate, real_eigenvalue_count,
    select_points_with, synth_oscillator, DelayPointSeries, EmbeddingSpec, LagSpec, MarkovModel,
    OscillatorSpec, StateDistribution, Telemetry,
};
use serde::Serialize;

use crate::config::{parse_error_entry, ConfigLayer, RunConfig, SparsifyArg, DEFAULT_SEED};
use crate::error::{fail, AtStage, CliResult, Stage};
use crate::io::{load_csv, write_telemetry, Cell, Table};
use crate::model_file::{load_model, save_model, LoadedModel, ModelMeta, SchemeName};

#[derive(Debug, Parser)]
#[command(
    name = "phase-markov",
    version,
    about = "Markov models of dynamics in a dimensionless delay space"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a damped-oscillator telemetry CSV and a matching config file.
    Synth(SynthArgs),
    /// Select characteristic points, fit the transition matrix, write model.json.
    Fit(PipelineArgs),
    /// Eigenvalue and eigenform tables of a fitted model.
    Modal(ModalArgs),
    /// Propagate a state distribution through a fitted model.
    Forecast(ForecastArgs),
    /// Neighbor counts, dimension estimate and adequacy without fitting.
    Dimension(PipelineArgs),
    /// Information estimate of the channels and the grid size of the delay space.
    Info(PipelineArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Clean,
    Warned,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Clean => 0,
            Outcome::Warned => 2,
        }
    }
}

pub fn run(cli: Cli) -> CliResult<Outcome> {
    match cli.command {
        Command::Synth(a) => cmd_synth(&a),
        Command::Fit(a) => cmd_fit(&a),
        Command::Modal(a) => cmd_modal(&a),
        Command::Forecast(a) => cmd_forecast(&a),
        Command::Dimension(a) => cmd_dimension(&a),
        Command::Info(a) => cmd_info(&a),
    }
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(
        long = "A",
        visible_alias = "amplitude",
        default_value_t = 1.0,
        allow_negative_numbers = true
    )]
    pub amplitude: f64,
    /// Damping ratio in [0, 1).
    #[arg(long, default_value_t = 0.05)]
    pub xi: f64,
    /// Angular frequency, rad/s.
    #[arg(long, default_value_t = TAU)]
    pub omega: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub phase: f64,
    #[arg(long, default_value_t = 0.01)]
    pub dt: f64,
    #[arg(long, default_value_t = 2000)]
    pub n: usize,
    /// Standard deviation of additive Gaussian noise.
    #[arg(long, default_value_t = 0.0)]
    pub noise: f64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Telemetry CSV; the config is written next to it with a .toml extension.
    #[arg(long, default_value = "telemetry.csv")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Default, Args)]
pub struct PipelineArgs {
    /// TOML config; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Telemetry CSV.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub dt: Option<f64>,
    /// Channel measurement error, `<channel>=<value>`; repeatable.
    #[arg(long = "error", value_name = "CHANNEL=VALUE")]
    pub errors: Vec<String>,
    /// Delay-space axes in order; defaults to every channel.
    #[arg(long, value_delimiter = ',')]
    pub axes: Option<Vec<String>>,
    /// Lagged channel, `<channel>:<steps>`; repeatable.
    #[arg(long = "lag", value_name = "CHANNEL:STEPS")]
    pub lags: Vec<String>,
    #[arg(long)]
    pub r0: Option<f64>,
    #[arg(long)]
    pub k: Option<f64>,
    #[arg(long)]
    pub adequacy_threshold: Option<f64>,
    #[arg(long, value_parser = parse_scheme)]
    pub scheme: Option<SchemeName>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub cell_size: Option<f64>,
    #[arg(long)]
    pub stride: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

fn parse_scheme(s: &str) -> Result<SchemeName, String> {
    match s {
        "crisp" => Ok(SchemeName::Crisp),
        "fuzzy" => Ok(SchemeName::Fuzzy),
        _ => Err(format!("unknown scheme {s:?}, expected crisp or fuzzy")),
    }
}

impl PipelineArgs {
    fn flag_layer(&self) -> anyhow::Result<ConfigLayer> {
        let errors = self
            .errors
            .iter()
            .map(|e| parse_error_entry(e))
            .collect::<anyhow::Result<BTreeMap<_, _>>>()?;
        Ok(ConfigLayer {
            input: self.input.clone(),
            dt: self.dt,
            axes: self.axes.clone(),
            lags: (!self.lags.is_empty()).then(|| self.lags.clone()),
            r0: self.r0,
            k: self.k,
            adequacy_threshold: self.adequacy_threshold,
            scheme: self.scheme,
            alpha: self.alpha,
            cell_size: self.cell_size,
            stride: self.stride,
            sparsify: None,
            seed: self.seed,
            output_dir: self.out_dir.clone(),
            errors,
        })
    }

    pub fn resolve(&self) -> CliResult<RunConfig> {
        let file = match &self.config {
            Some(path) => ConfigLayer::from_file(path).at(Stage::Config)?,
            None => ConfigLayer::default(),
        };
        let flags = self.flag_layer().at(Stage::Config)?;
        RunConfig::resolve(file.overlay(flags)).at(Stage::Config)
    }
}

#[derive(Debug, Args)]
pub struct ModalArgs {
    pub model: PathBuf,
    /// Number of leading modes in the eigenform table.
    #[arg(long, default_value_t = 5)]
    pub modes: usize,
    #[arg(long, default_value_t = phase_markov_core::modal::DEFAULT_ATTRACTOR_TOL)]
    pub attractor_tol: f64,
    #[arg(long, default_value_t = phase_markov_core::modal::DEFAULT_REAL_TOL)]
    pub real_tol: f64,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct ForecastArgs {
    pub model: PathBuf,
    /// Start from a pure state.
    #[arg(
        long,
        conflicts_with = "from_sample",
        required_unless_present = "from_sample"
    )]
    pub p0: Option<usize>,
    /// Start from the state of this sample of the held-out telemetry.
    #[arg(long, requires = "telemetry")]
    pub from_sample: Option<usize>,
    /// Held-out telemetry CSV, embedded with the model's recipe.
    #[arg(long)]
    pub telemetry: Option<PathBuf>,
    #[arg(long)]
    pub steps: usize,
    /// Keep the m largest probabilities per step: off, auto (dimension + 1) or m.
    #[arg(long, default_value = "off")]
    pub sparsify: SparsifyArg,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

fn prepare_dir(dir: &Path) -> CliResult<()> {
    std::fs::create_dir_all(dir)
        .map_err(|e| anyhow::anyhow!("cannot create {}: {e}", dir.display()))
        .at(Stage::Output)
}

fn synth_spec(a: &SynthArgs) -> OscillatorSpec {
    OscillatorSpec {
        amplitude: a.amplitude,
        damping_ratio: a.xi,
        angular_frequency: a.omega,
        phase: a.phase,
        dt: a.dt,
        n_samples: a.n,
        noise_sd: a.noise,
        seed: a.seed,
    }
}

pub fn cmd_synth(a: &SynthArgs) -> CliResult<Outcome> {
    let spec = synth_spec(a);
    let telemetry = synth_oscillator(&spec).at(Stage::Synth)?;
    if let Some(dir) = a.out.parent().filter(|d| !d.as_os_str().is_empty()) {
        prepare_dir(dir)?;
    }
    write_telemetry(&a.out, &telemetry).at(Stage::Output)?;

    let sidecar = a.out.with_extension("toml");
    let error = spec.default_error();
    let layer = ConfigLayer {
        input: a.out.file_name().map(PathBuf::from),
        dt: Some(spec.dt),
        seed: Some(spec.seed),
        errors: telemetry
            .channels()
            .iter()
            .map(|c| (c.name.clone(), error))
            .collect(),
        ..ConfigLayer::default()
    };
    let text = layer.to_toml().at(Stage::Output)?;
    std::fs::write(&sidecar, text)
        .map_err(|e| anyhow::anyhow!("cannot write {}: {e}", sidecar.display()))
        .at(Stage::Output)?;

    let t_end = (spec.n_samples - 1) as f64 * spec.dt;
    let envelope =
        |t: f64| spec.amplitude.abs() * (-spec.damping_ratio * spec.angular_frequency * t).exp();
    println!(
        "synth: {} samples, channels x, v -> {}",
        telemetry.len(),
        a.out.display()
    );
    println!(
        "envelope |A| e^(-xi omega t): {} at t = 0, {:.6e} at t = {t_end:.4}",
        envelope(0.0),
        envelope(t_end)
    );
    println!(
        "channel error {error} (|A|/100), seed {}; config -> {}",
        spec.seed,
        sidecar.display()
    );
    Ok(Outcome::Clean)
}

/// Telemetry with lag channels appended.
fn ingest(cfg: &RunConfig) -> CliResult<Telemetry> {
    let raw = load_csv(&cfg.input, cfg.dt, &cfg.errors).at(Stage::Ingest)?;
    if cfg.lags.is_empty() {
        Ok(raw)
    } else {
        add_lag_channels(&raw, &cfg.lags).at(Stage::Ingest)
    }
}

fn axes_of(cfg: &RunConfig, telemetry: &Telemetry) -> Vec<String> {
    cfg.axes.clone().unwrap_or_else(|| {
        telemetry
            .channels()
            .iter()
            .map(|c| c.name.clone())
            .collect()
    })
}

fn embed_with(cfg: &RunConfig, telemetry: &Telemetry) -> CliResult<DelayPointSeries> {
    let spec = EmbeddingSpec::new(axes_of(cfg, telemetry)).with_cell_size(cfg.cell_size);
    embed(telemetry, &spec).at(Stage::Embed)
}

#[derive(Debug, Serialize)]
struct FitReport {
    input: String,
    samples: usize,
    axes: Vec<String>,
    points: usize,
    robust_max_neighbors: usize,
    dimension_estimate: usize,
    adequacy_fraction: f64,
    adequate: bool,
    information_estimate_nats: f64,
    scheme: SchemeName,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<f64>,
    transitions: usize,
    dt: f64,
    seed: u64,
}

fn under_trained(fraction: f64, threshold: f64) {
    eprintln!("warning: model under-trained: adequacy fraction {fraction:.4} is below {threshold}");
}

pub fn cmd_fit(a: &PipelineArgs) -> CliResult<Outcome> {
    let cfg = a.resolve()?;
    let telemetry = ingest(&cfg)?;
    let information = information_estimate(&telemetry).at(Stage::Embed)?;
    let series = embed_with(&cfg, &telemetry)?;
    let states = select_points_with(&series, cfg.selection).at(Stage::Select)?;
    let adequacy = states.adequacy();
    let n_star = robust_max(states.neighbor_counts());
    let model = match cfg.scheme {
        SchemeName::Crisp => fit_crisp_strided(&series, states, cfg.stride),
        SchemeName::Fuzzy => fit_fuzzy_strided(&series, states, cfg.alpha_or_default(), cfg.stride),
    }
    .at(Stage::Fit)?;

    prepare_dir(&cfg.output_dir)?;
    let model_path = cfg.output_dir.join("model.json");
    let meta = ModelMeta {
        axis_errors: Some(cfg.errors.clone()),
        lags: (!cfg.lags.is_empty()).then(|| cfg.lags.clone()),
        stride: Some(cfg.stride),
        seed: Some(cfg.seed),
    };
    save_model(&model_path, series.axis_names(), &model, &meta).at(Stage::Output)?;

    let alpha = match model.scheme() {
        phase_markov_core::Scheme::Fuzzy { alpha } => Some(alpha),
        phase_markov_core::Scheme::Crisp => None,
    };
    let report = FitReport {
        input: cfg.input.display().to_string(),
        samples: series.len(),
        axes: series.axis_names().to_vec(),
        points: model.len(),
        robust_max_neighbors: n_star,
        dimension_estimate: model.states().dimension_estimate(),
        adequacy_fraction: adequacy.fraction,
        adequate: adequacy.adequate,
        information_estimate_nats: information,
        scheme: cfg.scheme,
        alpha,
        transitions: model.transition_count(),
        dt: model.dt(),
        seed: cfg.seed,
    };
    let report_path = cfg.output_dir.join("fit_report.json");
    let text = serde_json::to_string_pretty(&report).at(Stage::Output)? + "\n";
    std::fs::write(&report_path, text)
        .map_err(|e| anyhow::anyhow!("cannot write {}: {e}", report_path.display()))
        .at(Stage::Output)?;

    println!(
        "fit: {} samples on axes [{}], {} characteristic points",
        series.len(),
        series.axis_names().join(", "),
        model.len()
    );
    println!(
        "robust max neighbors {n_star}, dimension {}, adequacy {:.4}, information {:.4} nats",
        report.dimension_estimate, adequacy.fraction, information
    );
    println!(
        "{} transitions, dt {} s -> {}",
        model.transition_count(),
        model.dt(),
        model_path.display()
    );
    if adequacy.adequate {
        Ok(Outcome::Clean)
    } else {
        under_trained(adequacy.fraction, cfg.selection.adequacy_threshold);
        Ok(Outcome::Warned)
    }
}

fn load(path: &Path) -> CliResult<LoadedModel> {
    load_model(path).at(Stage::Model)
}

pub fn eigen_table(result: &ModalResult) -> Table {
    let mut table = Table::new(
        [
            "mode",
            "re",
            "im",
            "modulus",
            "arg",
            "steps_per_cycle",
            "frequency_hz",
            "period_s",
            "damping",
        ]
        .map(String::from),
    );
    for (i, m) in result.modes().iter().enumerate() {
        let f = m.frequency;
        table.push([
            Cell::from(i),
            Cell::from(m.eigenvalue.re),
            Cell::from(m.eigenvalue.im),
            Cell::from(m.eigenvalue.norm()),
            Cell::from(m.eigenvalue.arg()),
            Cell::from(f.map(|f| f.steps_per_cycle)),
            Cell::from(f.map(|f| f.frequency)),
            Cell::from(f.map(|f| f.period)),
            Cell::from(m.damping),
        ]);
    }
    table
}

pub fn eigenform_csv(
    result: &ModalResult,
    model: &MarkovModel,
    axis_names: &[String],
    modes: &[usize],
) -> CliResult<Table> {
    let rows = eigenform_table(result, model.states(), modes).at(Stage::Modal)?;
    let mut header: Vec<String> = axis_names.to_vec();
    for m in modes {
        header.push(format!("mode{m}_modulus"));
        header.push(format!("mode{m}_phase"));
    }
    let mut table = Table::new(header);
    for row in rows {
        let coords = row.coordinates.iter().map(|&x| Cell::from(x));
        let amps = row
            .amplitudes
            .iter()
            .flat_map(|&(modulus, phase)| [Cell::from(modulus), Cell::from(phase)]);
        table.push(coords.chain(amps));
    }
    Ok(table)
}

/// One entry per conjugate pair, largest modulus first.
fn oscillatory_modes(result: &ModalResult) -> Vec<&ModeSummary> {
    result
        .modes()
        .iter()
        .filter(|m| m.frequency.is_some() && m.eigenvalue.im >= 0.0)
        .collect()
}

pub fn cmd_modal(a: &ModalArgs) -> CliResult<Outcome> {
    let loaded = load(&a.model)?;
    let model = &loaded.model;
    let result = decompose(model).at(Stage::Modal)?;
    prepare_dir(&a.out_dir)?;

    let eigen_path = a.out_dir.join("eigenvalues.csv");
    eigen_table(&result).write(&eigen_path).at(Stage::Output)?;
    let modes: Vec<usize> = (0..a.modes.min(result.len())).collect();
    let forms_path = a.out_dir.join("eigenforms.csv");
    eigenform_csv(&result, model, &loaded.axis_names, &modes)?
        .write(&forms_path)
        .at(Stage::Output)?;

    let attractors = attractor_count(&result, a.attractor_tol);
    println!(
        "modal: {} modes, attractor count {attractors} (|lambda - 1| <= {}), {} real (|Im| <= {})",
        result.len(),
        a.attractor_tol,
        real_eigenvalue_count(&result, a.real_tol),
        a.real_tol
    );
    println!("max eigenpair residual {:.3e}", result.max_residual());
    for m in oscillatory_modes(&result).into_iter().take(5) {
        let f = m.frequency.expect("oscillatory");
        println!(
            "  |lambda| {:.6}  T {:.6} s  f {:.6} Hz  damping {:.6}",
            m.eigenvalue.norm(),
            f.period,
            f.frequency,
            m.damping.unwrap_or(f64::NAN)
        );
    }
    println!(
        "tables -> {}, {}",
        eigen_path.display(),
        forms_path.display()
    );
    Ok(Outcome::Clean)
}

/// Held-out telemetry embedded with the model's recipe.
fn held_out_series(loaded: &LoadedModel, path: &Path) -> CliResult<DelayPointSeries> {
    let Some(errors) = &loaded.meta.axis_errors else {
        return fail(
            Stage::Ingest,
            "model has no axis_errors, cannot embed held-out telemetry",
        );
    };
    let stride = loaded.meta.stride.unwrap_or(1);
    let dt = loaded.model.dt() / stride as f64;
    let header = crate::io::csv_header(path).at(Stage::Ingest)?;
    let sources: BTreeMap<String, f64> = errors
        .iter()
        .filter(|(name, _)| header.contains(name))
        .map(|(n, &e)| (n.clone(), e))
        .collect();
    if let Some(missing) = header.iter().find(|h| !errors.contains_key(*h)) {
        return fail(
            Stage::Ingest,
            format!("held-out file has channel {missing} that the model has no error for"),
        );
    }
    let raw = load_csv(path, dt, &sources).at(Stage::Ingest)?;
    let lags: Vec<LagSpec> = loaded.meta.lags.clone().unwrap_or_default();
    let telemetry = if lags.is_empty() {
        raw
    } else {
        add_lag_channels(&raw, &lags).at(Stage::Ingest)?
    };
    let missing: Vec<&String> = loaded
        .axis_names
        .iter()
        .filter(|a| telemetry.channel(a).is_none())
        .collect();
    if !missing.is_empty() {
        return fail(
            Stage::Ingest,
            format!(
                "held-out file is incompatible with the model axes: missing {}",
                missing
                    .iter()
                    .map(|s| s.as_str())
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        );
    }
    embed(&telemetry, &EmbeddingSpec::new(loaded.axis_names.clone())).at(Stage::Embed)
}

pub fn cmd_forecast(a: &ForecastArgs) -> CliResult<Outcome> {
    let loaded = load(&a.model)?;
    let model = &loaded.model;
    let s = model.len();
    let stride = loaded.meta.stride.unwrap_or(1);

    let held_out = match (a.from_sample, &a.telemetry) {
        (Some(_), Some(path)) => Some(held_out_series(&loaded, path)?),
        _ => None,
    };
    let p0 = match (a.p0, a.from_sample, &held_out) {
        (Some(i), _, _) => {
            if i >= s {
                return fail(
                    Stage::Forecast,
                    format!("state index {i} out of range, model has {s} states"),
                );
            }
            StateDistribution::point_mass(s, i).at(Stage::Forecast)?
        }
        (None, Some(j), Some(series)) => {
            if j >= series.len() {
                return fail(
                    Stage::Forecast,
                    format!(
                        "sample {j} out of range, held-out series has {} samples",
                        series.len()
                    ),
                );
            }
            model.distribution_of(series.point(j)).at(Stage::Forecast)?
        }
        _ => return fail(Stage::Config, "give --p0 or --from-sample with --telemetry"),
    };

    let path = forecast(model, &p0, a.steps, a.sparsify.to_core()).at(Stage::Forecast)?;
    prepare_dir(&a.out_dir)?;

    let mut header = vec!["step".to_owned(), "time_s".to_owned()];
    header.extend((0..s).map(|i| format!("state_{i}")));
    let mut table = Table::new(header);
    for (n, p) in path.iter().enumerate() {
        let step = n + 1;
        let lead = [Cell::from(step), Cell::from(step as f64 * model.dt())];
        table.push(
            lead.into_iter()
                .chain(p.probabilities().iter().map(|&x| Cell::from(x))),
        );
    }
    let forecast_path = a.out_dir.join("forecast.csv");
    table.write(&forecast_path).at(Stage::Output)?;
    println!(
        "forecast: {} steps over {s} states, sparsify {} -> {}",
        a.steps,
        a.sparsify,
        forecast_path.display()
    );

    if let (Some(series), Some(j)) = (&held_out, a.from_sample) {
        let axes = &loaded.axis_names;
        let mut header = vec!["step".to_owned(), "time_s".to_owned()];
        header.extend(axes.iter().map(|x| format!("expected_{x}")));
        header.extend(axes.iter().map(|x| format!("actual_{x}")));
        let mut table = Table::new(header);
        let mut worst: f64 = 0.0;
        for (n, p) in path.iter().enumerate() {
            let step = n + 1;
            let expected = expected_coordinates(model.states(), p);
            let index = j + step * stride;
            let actual = (index < series.len()).then(|| series.point(index));
            if let Some(x) = actual {
                let d = expected
                    .iter()
                    .zip(x)
                    .map(|(e, a)| (e - a) * (e - a))
                    .sum::<f64>()
                    .sqrt();
                worst = worst.max(d);
            }
            let actual_cells: Vec<Cell> = match actual {
                Some(x) => x.iter().map(|&v| Cell::from(v)).collect(),
                None => vec![Cell::Empty; axes.len()],
            };
            let lead = [Cell::from(step), Cell::from(step as f64 * model.dt())];
            table.push(
                lead.into_iter()
                    .chain(expected.into_iter().map(Cell::from))
                    .chain(actual_cells),
            );
        }
        let comparison_path = a.out_dir.join("comparison.csv");
        table.write(&comparison_path).at(Stage::Output)?;
        println!(
            "from sample {j}: max distance to the actual trajectory {worst:.4} -> {}",
            comparison_path.display()
        );
    }
    Ok(Outcome::Clean)
}

pub fn cmd_dimension(a: &PipelineArgs) -> CliResult<Outcome> {
    let cfg = a.resolve()?;
    let telemetry = ingest(&cfg)?;
    let series = embed_with(&cfg, &telemetry)?;
    let states = select_points_with(&series, cfg.selection).at(Stage::Select)?;
    prepare_dir(&cfg.output_dir)?;

    let mut header = series.axis_names().to_vec();
    header.push("neighbor_count".into());
    let mut table = Table::new(header);
    for (p, &c) in states.points().zip(states.neighbor_counts()) {
        table.push(p.iter().map(|&x| Cell::from(x)).chain([Cell::from(c)]));
    }
    let path = cfg.output_dir.join("neighbors.csv");
    table.write(&path).at(Stage::Output)?;

    let adequacy = states.adequacy();
    println!(
        "dimension: {} characteristic points, robust max neighbors {}, dimension {}, adequacy {:.4}",
        states.len(),
        robust_max(states.neighbor_counts()),
        states.dimension_estimate(),
        adequacy.fraction
    );
    println!("neighbor counts -> {}", path.display());
    if adequacy.adequate {
        Ok(Outcome::Clean)
    } else {
        under_trained(adequacy.fraction, cfg.selection.adequacy_threshold);
        Ok(Outcome::Warned)
    }
}

pub fn cmd_info(a: &PipelineArgs) -> CliResult<Outcome> {
    let cfg = a.resolve()?;
    let raw = load_csv(&cfg.input, cfg.dt, &cfg.errors).at(Stage::Ingest)?;
    let total = information_estimate(&raw).at(Stage::Embed)?;
    let telemetry = if cfg.lags.is_empty() {
        raw.clone()
    } else {
        add_lag_channels(&raw, &cfg.lags).at(Stage::Ingest)?
    };
    let series = embed_with(&cfg, &telemetry)?;
    let cells = series.grid_cells(cfg.cell_size);
    prepare_dir(&cfg.output_dir)?;

    let mut table =
        Table::new(["channel", "max_abs", "error", "information_nats"].map(String::from));
    for c in raw.channels() {
        table.push([
            Cell::Text(c.name.clone()),
            Cell::from(c.max_abs),
            Cell::from(c.error),
            Cell::from((c.max_abs / c.error).ln()),
        ]);
    }
    let path = cfg.output_dir.join("info.csv");
    table.write(&path).at(Stage::Output)?;

    println!(
        "info: {} channels, {} samples, information estimate {total:.4} nats",
        raw.channels().len(),
        raw.len()
    );
    let grid: Vec<String> = series
        .axis_names()
        .iter()
        .zip(&cells)
        .map(|(a, l)| format!("{a}: {l}"))
        .collect();
    println!(
        "grid cells per axis at h = {}: {}",
        cfg.cell_size,
        grid.join(", ")
    );
    println!("per-channel table -> {}", path.display());
    Ok(Outcome::Clean)
}
