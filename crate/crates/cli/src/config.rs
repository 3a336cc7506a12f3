//! Run configuration: defaults, then a TOML file, then command-line flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, ensure, Context};
use phase_markov_core::{LagSpec, SelectionConfig, Sparsify};
use serde::{Deserialize, Serialize};

use crate::model_file::SchemeName;

pub const DEFAULT_SEED: u64 = 42;

/// One layer of settings; unset fields fall through to the layer below.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigLayer {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axes: Option<Vec<String>>,
    /// `"<channel>:<steps>"`
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lags: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub adequacy_threshold: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scheme: Option<SchemeName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cell_size: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stride: Option<usize>,
    /// `"off"`, `"auto"` or a count.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sparsify: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
    /// Measurement error per channel.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub errors: BTreeMap<String, f64>,
}

impl ConfigLayer {
    /// Reads a TOML file; relative paths inside it are taken from its directory.
    pub fn from_file(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read {}", path.display()))?;
        let mut layer: Self = toml::from_str(&text)
            .with_context(|| format!("malformed config {}", path.display()))?;
        let base = path.parent().unwrap_or(Path::new(""));
        for p in [&mut layer.input, &mut layer.output_dir]
            .into_iter()
            .flatten()
        {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(layer)
    }

    pub fn to_toml(&self) -> anyhow::Result<String> {
        Ok(toml::to_string(self)?)
    }

    /// `top` wins wherever it is set; error maps merge per channel.
    pub fn overlay(self, top: ConfigLayer) -> ConfigLayer {
        let mut errors = self.errors;
        errors.extend(top.errors);
        ConfigLayer {
            input: top.input.or(self.input),
            dt: top.dt.or(self.dt),
            axes: top.axes.or(self.axes),
            lags: top.lags.or(self.lags),
            r0: top.r0.or(self.r0),
            k: top.k.or(self.k),
            adequacy_threshold: top.adequacy_threshold.or(self.adequacy_threshold),
            scheme: top.scheme.or(self.scheme),
            alpha: top.alpha.or(self.alpha),
            cell_size: top.cell_size.or(self.cell_size),
            stride: top.stride.or(self.stride),
            sparsify: top.sparsify.or(self.sparsify),
            seed: top.seed.or(self.seed),
            output_dir: top.output_dir.or(self.output_dir),
            errors,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SparsifyArg {
    Off,
    Auto,
    Top(usize),
}

impl SparsifyArg {
    pub fn to_core(self) -> Sparsify {
        match self {
            SparsifyArg::Off => Sparsify::Off,
            SparsifyArg::Auto => Sparsify::DimensionPlusOne,
            SparsifyArg::Top(m) => Sparsify::Top(m),
        }
    }
}

impl std::fmt::Display for SparsifyArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SparsifyArg::Off => f.write_str("off"),
            SparsifyArg::Auto => f.write_str("auto"),
            SparsifyArg::Top(m) => write!(f, "{m}"),
        }
    }
}

impl FromStr for SparsifyArg {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        match s.trim() {
            "off" => Ok(SparsifyArg::Off),
            "auto" => Ok(SparsifyArg::Auto),
            n => {
                let m: usize = n.parse().map_err(|_| {
                    anyhow::anyhow!("sparsify must be off, auto or a count, got {s:?}")
                })?;
                ensure!(m > 0, "sparsify count must be positive");
                Ok(SparsifyArg::Top(m))
            }
        }
    }
}

/// `"<channel>:<steps>"` or `"<channel>_lag<steps>"`.
pub fn parse_lag(s: &str) -> anyhow::Result<LagSpec> {
    if let Some((name, steps)) = s.rsplit_once(':') {
        let steps: usize = steps
            .trim()
            .parse()
            .map_err(|_| anyhow::anyhow!("bad lag {s:?}: steps must be an integer"))?;
        ensure!(!name.trim().is_empty(), "bad lag {s:?}: empty channel name");
        return Ok(LagSpec::new(name.trim(), steps));
    }
    LagSpec::parse_channel_name(s)
        .ok_or_else(|| anyhow::anyhow!("bad lag {s:?}: use <channel>:<steps>"))
}

/// `"<channel>=<error>"`
pub fn parse_error_entry(s: &str) -> anyhow::Result<(String, f64)> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| anyhow::anyhow!("bad error {s:?}: use <channel>=<value>"))?;
    let value: f64 = value
        .trim()
        .parse()
        .map_err(|_| anyhow::anyhow!("bad error {s:?}: value is not a number"))?;
    Ok((name.trim().to_owned(), value))
}

/// Fully resolved settings of a pipeline run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub input: PathBuf,
    pub dt: f64,
    pub errors: BTreeMap<String, f64>,
    pub axes: Option<Vec<String>>,
    pub lags: Vec<LagSpec>,
    pub selection: SelectionConfig,
    pub scheme: SchemeName,
    pub alpha: Option<f64>,
    pub cell_size: f64,
    pub stride: usize,
    pub sparsify: SparsifyArg,
    pub seed: u64,
    pub output_dir: PathBuf,
}

fn positive(name: &str, value: f64) -> anyhow::Result<f64> {
    ensure!(
        value > 0.0 && value.is_finite(),
        "{name} must be positive, got {value}"
    );
    Ok(value)
}

impl RunConfig {
    pub fn resolve(layer: ConfigLayer) -> anyhow::Result<Self> {
        let Some(input) = layer.input else {
            bail!("no input file given");
        };
        let Some(dt) = layer.dt else {
            bail!("no sample period dt given");
        };
        positive("dt", dt)?;
        for (name, &e) in &layer.errors {
            positive(&format!("error of channel {name}"), e)?;
        }
        let defaults = SelectionConfig::default();
        let selection = SelectionConfig {
            r0: positive("r0", layer.r0.unwrap_or(defaults.r0))?,
            k: positive("k", layer.k.unwrap_or(defaults.k))?,
            adequacy_threshold: layer
                .adequacy_threshold
                .unwrap_or(defaults.adequacy_threshold),
        };
        selection.validate()?;
        let alpha = layer.alpha.map(|a| positive("alpha", a)).transpose()?;
        let stride = layer.stride.unwrap_or(1);
        ensure!(stride > 0, "stride must be positive");
        let lags = layer
            .lags
            .unwrap_or_default()
            .iter()
            .map(|s| parse_lag(s))
            .collect::<anyhow::Result<Vec<_>>>()?;
        let sparsify = layer
            .sparsify
            .as_deref()
            .map_or(Ok(SparsifyArg::Off), SparsifyArg::from_str)?;
        Ok(Self {
            input,
            dt,
            errors: layer.errors,
            axes: layer.axes,
            lags,
            selection,
            scheme: layer.scheme.unwrap_or(SchemeName::Crisp),
            alpha,
            cell_size: positive("cell_size", layer.cell_size.unwrap_or(1.0))?,
            stride,
            sparsify,
            seed: layer.seed.unwrap_or(DEFAULT_SEED),
            output_dir: layer.output_dir.unwrap_or_else(|| PathBuf::from(".")),
        })
    }

    /// Fuzzy kernel offset, defaulting to a hundredth of `r0`.
    pub fn alpha_or_default(&self) -> f64 {
        self.alpha
            .unwrap_or(phase_markov_core::markov::DEFAULT_ALPHA_FACTOR * self.selection.r0)
    }
}
