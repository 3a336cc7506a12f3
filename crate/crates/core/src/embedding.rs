//! Dimensionless delay space.
//!
//! Every coordinate is a measured value divided by its channel error, so a
//! unit distance corresponds to one measurement error along that axis.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{check_positive, Error, Result};
use crate::math;
use crate::signals::Telemetry;

/// Axes of the delay space and the grid cell edge in error units.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingSpec {
    pub axes: Vec<String>,
    pub cell_size: f64,
}

impl EmbeddingSpec {
    pub fn new<S: Into<String>>(axes: impl IntoIterator<Item = S>) -> Self {
        Self {
            axes: axes.into_iter().map(Into::into).collect(),
            cell_size: 1.0,
        }
    }

    pub fn with_cell_size(mut self, cell_size: f64) -> Self {
        self.cell_size = cell_size;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.axes.is_empty() {
            return Err(Error::NoAxes);
        }
        let mut seen = BTreeSet::new();
        for a in &self.axes {
            if !seen.insert(a) {
                return Err(Error::DuplicateChannel(a.clone()));
            }
        }
        check_positive("cell_size", self.cell_size)
    }
}

/// Time-ordered points in the normalized delay space.
#[derive(Debug, Clone, PartialEq)]
pub struct DelayPointSeries {
    dim: usize,
    coords: Vec<f64>,
    dt: f64,
    axis_names: Vec<String>,
    axis_ranges: Vec<(f64, f64)>,
}

impl DelayPointSeries {
    /// Builds a series from flat row-major coordinates.
    pub fn from_flat(axis_names: Vec<String>, coords: Vec<f64>, dt: f64) -> Result<Self> {
        check_positive("dt", dt)?;
        let dim = axis_names.len();
        if dim == 0 {
            return Err(Error::NoAxes);
        }
        if !coords.len().is_multiple_of(dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: coords.len() % dim,
            });
        }
        let mut axis_ranges = alloc::vec![(f64::INFINITY, f64::NEG_INFINITY); dim];
        for p in coords.chunks_exact(dim) {
            for (r, &x) in axis_ranges.iter_mut().zip(p) {
                r.0 = r.0.min(x);
                r.1 = r.1.max(x);
            }
        }
        Ok(Self {
            dim,
            coords,
            dt,
            axis_names,
            axis_ranges,
        })
    }

    /// Builds a series from individual points.
    pub fn from_points(axis_names: Vec<String>, points: &[Vec<f64>], dt: f64) -> Result<Self> {
        let dim = axis_names.len();
        if let Some(bad) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        Self::from_flat(axis_names, points.concat(), dt)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> core::slice::ChunksExact<'_, f64> {
        self.coords.chunks_exact(self.dim)
    }

    pub fn axis_names(&self) -> &[String] {
        &self.axis_names
    }

    /// Per-axis `(min, max)`; empty series report `(inf, -inf)`.
    pub fn axis_ranges(&self) -> &[(f64, f64)] {
        &self.axis_ranges
    }

    /// Number of grid cells along each axis, `ceil(range / h)`, at least 1.
    pub fn grid_cells(&self, cell_size: f64) -> Vec<usize> {
        self.axis_ranges
            .iter()
            .map(|&(lo, hi)| {
                if hi > lo {
                    (math::ceil((hi - lo) / cell_size) as usize).max(1)
                } else {
                    1
                }
            })
            .collect()
    }
}

/// `x = x̄ / X_Δ` for each axis, order preserved.
pub fn embed(telemetry: &Telemetry, spec: &EmbeddingSpec) -> Result<DelayPointSeries> {
    spec.validate()?;
    let channels = spec
        .axes
        .iter()
        .map(|a| {
            telemetry
                .channel(a)
                .ok_or_else(|| Error::UnknownChannel(a.clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    let n = telemetry.len();
    let mut coords = Vec::with_capacity(n * channels.len());
    for i in 0..n {
        coords.extend(channels.iter().map(|c| c.samples[i] / c.error));
    }
    DelayPointSeries::from_flat(spec.axes.clone(), coords, telemetry.dt())
}

/// Hypercubic cell of a normalized point: `floor((x - min) / h)` per axis.
///
/// Points outside the observed range get indices outside `0..L`.
pub fn grid_index(point: &[f64], series: &DelayPointSeries, cell_size: f64) -> Result<Vec<i64>> {
    if point.len() != series.dim() {
        return Err(Error::DimensionMismatch {
            expected: series.dim(),
            found: point.len(),
        });
    }
    check_positive("cell_size", cell_size)?;
    Ok(point
        .iter()
        .zip(series.axis_ranges())
        .map(|(&x, &(lo, _))| math::floor((x - lo) / cell_size) as i64)
        .collect())
}

/// Upper bound on extractable information, `Σ ln(X_max / X_Δ)` in nats.
pub fn information_estimate(telemetry: &Telemetry) -> Result<f64> {
    telemetry.channels().iter().try_fold(0.0, |acc, c| {
        if c.max_abs < c.error {
            Err(Error::BelowResolution {
                channel: c.name.clone(),
                max_abs: c.max_abs,
                error: c.error,
            })
        } else {
            Ok(acc + math::ln(c.max_abs / c.error))
        }
    })
}
