//! JSON persistence of fitted models.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, ensure, Context};
use phase_markov_core::{
    CharacteristicPointSet, LagSpec, MarkovModel, Matrix, Scheme, SelectionConfig,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SchemeName {
    Crisp,
    Fuzzy,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LagEntry {
    pub source: String,
    pub lag_steps: usize,
}

impl From<&LagSpec> for LagEntry {
    fn from(l: &LagSpec) -> Self {
        Self {
            source: l.source_channel.clone(),
            lag_steps: l.lag_steps,
        }
    }
}

impl From<&LagEntry> for LagSpec {
    fn from(l: &LagEntry) -> Self {
        LagSpec::new(l.source.clone(), l.lag_steps)
    }
}

/// On-disk model. `matrix[j]` is column `j`, the outgoing distribution of
/// state `j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub axis_names: Vec<String>,
    pub r0: f64,
    pub k: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    pub dt: f64,
    pub points: Vec<Vec<f64>>,
    pub matrix: Vec<Vec<f64>>,
    pub scheme: SchemeName,
    pub transition_count: usize,
    pub dimension_estimate: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub adequacy_threshold: Option<f64>,
    /// Measurement error of every source channel, for re-embedding held-out data.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axis_errors: Option<BTreeMap<String, f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lags: Option<Vec<LagEntry>>,
    /// Samples per transition.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stride: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// Embedding recipe and provenance stored next to the model.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ModelMeta {
    pub axis_errors: Option<BTreeMap<String, f64>>,
    pub lags: Option<Vec<LagSpec>>,
    pub stride: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct LoadedModel {
    pub axis_names: Vec<String>,
    pub model: MarkovModel,
    pub meta: ModelMeta,
}

impl ModelFile {
    pub fn from_model(axis_names: &[String], model: &MarkovModel, meta: &ModelMeta) -> Self {
        let states = model.states();
        let config = states.config();
        let s = model.len();
        let matrix = model.matrix();
        let (scheme, alpha) = match model.scheme() {
            Scheme::Crisp => (SchemeName::Crisp, None),
            Scheme::Fuzzy { alpha } => (SchemeName::Fuzzy, Some(alpha)),
        };
        Self {
            axis_names: axis_names.to_vec(),
            r0: config.r0,
            k: config.k,
            alpha,
            dt: model.dt(),
            points: states.points().map(<[f64]>::to_vec).collect(),
            matrix: (0..s).map(|j| matrix.column(j).collect()).collect(),
            scheme,
            transition_count: model.transition_count(),
            dimension_estimate: states.dimension_estimate(),
            adequacy_threshold: Some(config.adequacy_threshold),
            axis_errors: meta.axis_errors.clone(),
            lags: meta
                .lags
                .as_ref()
                .map(|l| l.iter().map(LagEntry::from).collect()),
            stride: meta.stride,
            seed: meta.seed,
        }
    }

    /// Validates the document and rebuilds the model.
    pub fn into_model(self) -> anyhow::Result<LoadedModel> {
        let dim = self.axis_names.len();
        ensure!(dim > 0, "axis_names is empty");
        ensure!(!self.points.is_empty(), "points is empty");
        for (i, p) in self.points.iter().enumerate() {
            ensure!(
                p.len() == dim,
                "point {i} has {} coordinates, expected {dim}",
                p.len()
            );
        }
        let s = self.points.len();
        ensure!(
            self.matrix.len() == s,
            "matrix has {} columns for {s} points",
            self.matrix.len()
        );
        for (j, c) in self.matrix.iter().enumerate() {
            ensure!(
                c.len() == s,
                "matrix column {j} has {} entries, expected {s}",
                c.len()
            );
        }
        let scheme = match (self.scheme, self.alpha) {
            (SchemeName::Crisp, None) => Scheme::Crisp,
            (SchemeName::Crisp, Some(_)) => bail!("alpha given for a crisp model"),
            (SchemeName::Fuzzy, Some(alpha)) => Scheme::Fuzzy { alpha },
            (SchemeName::Fuzzy, None) => bail!("fuzzy model without alpha"),
        };
        let mut config = SelectionConfig {
            r0: self.r0,
            k: self.k,
            ..SelectionConfig::default()
        };
        if let Some(t) = self.adequacy_threshold {
            config.adequacy_threshold = t;
        }
        let states = CharacteristicPointSet::from_points(&self.points, config)
            .context("invalid characteristic points")?;
        ensure!(
            states.dimension_estimate() == self.dimension_estimate,
            "dimension_estimate {} does not match the points ({})",
            self.dimension_estimate,
            states.dimension_estimate()
        );
        let matrix = Matrix::from_columns(&self.matrix);
        let model = MarkovModel::from_parts(states, matrix, self.dt, scheme, self.transition_count)
            .context("invalid transition matrix")?;
        Ok(LoadedModel {
            axis_names: self.axis_names,
            model,
            meta: ModelMeta {
                axis_errors: self.axis_errors,
                lags: self.lags.map(|l| l.iter().map(LagSpec::from).collect()),
                stride: self.stride,
                seed: self.seed,
            },
        })
    }

    pub fn to_json(&self) -> anyhow::Result<String> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        Ok(text)
    }

    pub fn from_json(text: &str) -> anyhow::Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

pub fn save_model(
    path: &Path,
    axis_names: &[String],
    model: &MarkovModel,
    meta: &ModelMeta,
) -> anyhow::Result<()> {
    let text = ModelFile::from_model(axis_names, model, meta).to_json()?;
    std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

pub fn load_model(path: &Path) -> anyhow::Result<LoadedModel> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    ModelFile::from_json(&text)
        .with_context(|| format!("malformed model file {}", path.display()))?
        .into_model()
        .with_context(|| format!("corrupted model file {}", path.display()))
}
