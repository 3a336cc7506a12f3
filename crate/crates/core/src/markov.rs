//! Transition-matrix estimation, propagation and forecasting.
//!
//! The matrix is column-stochastic: `M[(i, j)]` is the probability of moving
//! to state `i` from state `j` over one transition period, so a distribution
//! propagates as `p' = M p`.

use alloc::vec;
use alloc::vec::Vec;

use crate::embedding::DelayPointSeries;
use crate::error::{check_positive, Error, Result};
use crate::linalg::Matrix;
use crate::math::squared_distance;
use crate::states::CharacteristicPointSet;

/// Column sums and distributions must hit 1 within this tolerance.
pub const STOCHASTIC_TOL: f64 = 1e-9;

/// Default fuzzy kernel offset as a fraction of `r0`.
pub const DEFAULT_ALPHA_FACTOR: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scheme {
    /// Each point belongs to its nearest characteristic point.
    Crisp,
    /// Kernel membership `K_i = 1 / (R_i + alpha)`, normalized.
    Fuzzy { alpha: f64 },
}

/// Probability vector over the states of a model.
#[derive(Debug, Clone, PartialEq)]
pub struct StateDistribution(Vec<f64>);

impl StateDistribution {
    pub fn new(probabilities: Vec<f64>) -> Result<Self> {
        if let Some((index, &value)) = probabilities
            .iter()
            .enumerate()
            .find(|(_, p)| !(p.is_finite() && **p >= 0.0))
        {
            return Err(Error::InvalidDistributionEntry { index, value });
        }
        let sum: f64 = probabilities.iter().sum();
        if (sum - 1.0).abs() > STOCHASTIC_TOL {
            return Err(Error::NotNormalized(sum));
        }
        Ok(Self(probabilities))
    }

    pub fn point_mass(states: usize, index: usize) -> Result<Self> {
        if index >= states {
            return Err(Error::StateIndex { index, len: states });
        }
        let mut p = vec![0.0; states];
        p[index] = 1.0;
        Ok(Self(p))
    }

    pub fn uniform(states: usize) -> Self {
        Self(vec![1.0 / states as f64; states])
    }

    /// Divides by the sum; `None` if the sum is not positive.
    pub(crate) fn normalized(mut values: Vec<f64>) -> Option<Self> {
        let sum: f64 = values.iter().sum();
        if !(sum > 0.0) || !sum.is_finite() {
            return None;
        }
        values.iter_mut().for_each(|v| *v /= sum);
        Some(Self(values))
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn argmax(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (i, &p)| {
                if p > best.1 {
                    (i, p)
                } else {
                    best
                }
            })
            .0
    }

    pub fn l1_distance(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MarkovModel {
    states: CharacteristicPointSet,
    matrix: Matrix,
    dt: f64,
    scheme: Scheme,
    transition_count: usize,
}

impl MarkovModel {
    /// Assembles a model from stored parts, validating stochasticity.
    pub fn from_parts(
        states: CharacteristicPointSet,
        matrix: Matrix,
        dt: f64,
        scheme: Scheme,
        transition_count: usize,
    ) -> Result<Self> {
        check_positive("dt", dt)?;
        if let Scheme::Fuzzy { alpha } = scheme {
            check_positive("alpha", alpha)?;
        }
        if !matrix.is_square() || matrix.rows() != states.len() {
            return Err(Error::DimensionMismatch {
                expected: states.len(),
                found: matrix.rows(),
            });
        }
        validate_stochastic(&matrix)?;
        Ok(Self {
            states,
            matrix,
            dt,
            scheme,
            transition_count,
        })
    }

    pub fn states(&self) -> &CharacteristicPointSet {
        &self.states
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Length of one transition in seconds.
    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn transition_count(&self) -> usize {
        self.transition_count
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Initial distribution for a point of the delay space, following the
    /// model's membership scheme.
    pub fn distribution_of(&self, point: &[f64]) -> Result<StateDistribution> {
        check_dim(point, &self.states)?;
        match self.scheme {
            Scheme::Crisp => {
                StateDistribution::point_mass(self.len(), assign_state(point, &self.states))
            }
            Scheme::Fuzzy { alpha } => fuzzy_membership(point, &self.states, alpha),
        }
    }
}

pub fn validate_stochastic(matrix: &Matrix) -> Result<()> {
    for j in 0..matrix.cols() {
        for i in 0..matrix.rows() {
            let value = matrix[(i, j)];
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::InvalidProbability {
                    row: i,
                    column: j,
                    value,
                });
            }
        }
        let sum = matrix.column_sum(j);
        if (sum - 1.0).abs() > STOCHASTIC_TOL {
            return Err(Error::NotStochastic { column: j, sum });
        }
    }
    Ok(())
}

fn check_dim(point: &[f64], states: &CharacteristicPointSet) -> Result<()> {
    if point.len() != states.dim() {
        return Err(Error::DimensionMismatch {
            expected: states.dim(),
            found: point.len(),
        });
    }
    Ok(())
}

/// Nearest characteristic point by squared distance; ties go to the lowest
/// index.
pub fn assign_state(point: &[f64], states: &CharacteristicPointSet) -> usize {
    let mut best = (0, f64::INFINITY);
    for (i, x) in states.points().enumerate() {
        let d = squared_distance(x, point);
        if d < best.1 {
            best = (i, d);
        }
    }
    best.0
}

/// `F_i = K_i / Σ K_j` with kernel `K_i = 1 / (R_i + alpha)`.
pub fn fuzzy_membership(
    point: &[f64],
    states: &CharacteristicPointSet,
    alpha: f64,
) -> Result<StateDistribution> {
    check_positive("alpha", alpha)?;
    check_dim(point, states)?;
    let mut kernel = Vec::with_capacity(states.len());
    kernel.extend(
        states
            .points()
            .map(|x| 1.0 / (squared_distance(x, point) + alpha)),
    );
    Ok(StateDistribution::normalized(kernel)
        .unwrap_or_else(|| StateDistribution::uniform(states.len())))
}

/// Accumulator of (possibly fractional) transition counts.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionCounts {
    counts: Matrix,
    transitions: usize,
}

impl TransitionCounts {
    pub fn new(states: usize) -> Self {
        Self {
            counts: Matrix::zeros(states, states),
            transitions: 0,
        }
    }

    pub fn add_crisp(&mut self, from: usize, to: usize) {
        self.counts[(to, from)] += 1.0;
        self.transitions += 1;
    }

    /// Adds the outer product `to · fromᵀ`.
    pub fn add_soft(&mut self, from: &[f64], to: &[f64]) {
        let n = self.counts.rows();
        assert!(
            from.len() == n && to.len() == n,
            "membership length mismatch"
        );
        for (j, &f) in from.iter().enumerate() {
            if f == 0.0 {
                continue;
            }
            for (i, &t) in to.iter().enumerate() {
                self.counts[(i, j)] += t * f;
            }
        }
        self.transitions += 1;
    }

    pub fn transitions(&self) -> usize {
        self.transitions
    }

    pub fn counts(&self) -> &Matrix {
        &self.counts
    }

    /// Column-normalized counts; unobserved source states become self-loops.
    pub fn into_matrix(self) -> Matrix {
        let mut m = self.counts;
        for j in 0..m.cols() {
            let sum = m.column_sum(j);
            if sum > 0.0 {
                for i in 0..m.rows() {
                    m[(i, j)] /= sum;
                }
            } else {
                m[(j, j)] = 1.0;
            }
        }
        m
    }
}

fn check_series(
    series: &DelayPointSeries,
    states: &CharacteristicPointSet,
    stride: usize,
) -> Result<()> {
    if series.is_empty() {
        return Err(Error::EmptySeries);
    }
    if stride == 0 {
        return Err(Error::OutOfRange {
            name: "stride",
            value: 0.0,
        });
    }
    if series.len() <= stride {
        return Err(Error::TooFewPoints {
            needed: stride + 1,
            found: series.len(),
        });
    }
    if series.dim() != states.dim() {
        return Err(Error::DimensionMismatch {
            expected: states.dim(),
            found: series.dim(),
        });
    }
    Ok(())
}

/// Frequency estimate of one-sample transitions between nearest states.
pub fn fit_crisp(series: &DelayPointSeries, states: CharacteristicPointSet) -> Result<MarkovModel> {
    fit_crisp_strided(series, states, 1)
}

/// Crisp estimate over transitions of `stride` samples.
pub fn fit_crisp_strided(
    series: &DelayPointSeries,
    states: CharacteristicPointSet,
    stride: usize,
) -> Result<MarkovModel> {
    check_series(series, &states, stride)?;
    let labels: Vec<usize> = series.points().map(|p| assign_state(p, &states)).collect();
    let mut counts = TransitionCounts::new(states.len());
    for (a, b) in labels.iter().zip(&labels[stride..]) {
        counts.add_crisp(*a, *b);
    }
    let transitions = counts.transitions();
    let matrix = counts.into_matrix();
    MarkovModel::from_parts(
        states,
        matrix,
        series.dt() * stride as f64,
        Scheme::Crisp,
        transitions,
    )
}

/// Fuzzy estimate: accumulates `F(t + Δt) F(t)ᵀ` and column-normalizes.
pub fn fit_fuzzy(
    series: &DelayPointSeries,
    states: CharacteristicPointSet,
    alpha: f64,
) -> Result<MarkovModel> {
    fit_fuzzy_strided(series, states, alpha, 1)
}

pub fn fit_fuzzy_strided(
    series: &DelayPointSeries,
    states: CharacteristicPointSet,
    alpha: f64,
    stride: usize,
) -> Result<MarkovModel> {
    check_positive("alpha", alpha)?;
    check_series(series, &states, stride)?;
    let memberships = series
        .points()
        .map(|p| fuzzy_membership(p, &states, alpha).map(StateDistribution::into_inner))
        .collect::<Result<Vec<_>>>()?;
    let mut counts = TransitionCounts::new(states.len());
    for (from, to) in memberships.iter().zip(&memberships[stride..]) {
        counts.add_soft(from, to);
    }
    let transitions = counts.transitions();
    let matrix = counts.into_matrix();
    MarkovModel::from_parts(
        states,
        matrix,
        series.dt() * stride as f64,
        Scheme::Fuzzy { alpha },
        transitions,
    )
}

fn check_len(model: &MarkovModel, p: &StateDistribution) -> Result<()> {
    if p.len() != model.len() {
        return Err(Error::DimensionMismatch {
            expected: model.len(),
            found: p.len(),
        });
    }
    Ok(())
}

/// One transition period: `M p`.
pub fn step(model: &MarkovModel, p: &StateDistribution) -> Result<StateDistribution> {
    check_len(model, p)?;
    let next = model.matrix.mul_vec(p.probabilities());
    // M p keeps the sum up to rounding; renormalize to stop drift over long horizons
    Ok(StateDistribution::normalized(next).expect("stochastic matrix preserves mass"))
}

/// Truncation applied after every forecast step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sparsify {
    Off,
    /// Keep the `m` largest probabilities.
    Top(usize),
    /// Keep `dimension_estimate + 1` probabilities.
    DimensionPlusOne,
}

impl Sparsify {
    fn keep(self, model: &MarkovModel) -> Result<Option<usize>> {
        let s = model.len();
        let m = match self {
            Sparsify::Off => return Ok(None),
            Sparsify::Top(m) => m,
            Sparsify::DimensionPlusOne => (model.states.dimension_estimate() + 1).min(s),
        };
        if m == 0 || m > s {
            return Err(Error::InvalidSparsify { m, states: s });
        }
        Ok(Some(m))
    }
}

/// Keeps the `m` largest entries (ties to the lowest index), zeroes the rest
/// and renormalizes.
pub fn sparsify_top(p: &StateDistribution, m: usize) -> StateDistribution {
    let probs = p.probabilities();
    if m >= probs.len() {
        return p.clone();
    }
    let mut order: Vec<usize> = (0..probs.len()).collect();
    order.sort_by(|&a, &b| probs[b].total_cmp(&probs[a]).then(a.cmp(&b)));
    let mut kept = vec![0.0; probs.len()];
    for &i in order.iter().take(m) {
        kept[i] = probs[i];
    }
    StateDistribution::normalized(kept).expect("largest entries of a distribution carry mass")
}

/// `n_steps` successive distributions `p_1 .. p_n` starting from `p0`.
pub fn forecast(
    model: &MarkovModel,
    p0: &StateDistribution,
    n_steps: usize,
    sparsify: Sparsify,
) -> Result<Vec<StateDistribution>> {
    check_len(model, p0)?;
    let keep = sparsify.keep(model)?;
    let mut out = Vec::with_capacity(n_steps);
    let mut p = p0.clone();
    for _ in 0..n_steps {
        p = step(model, &p)?;
        if let Some(m) = keep {
            p = sparsify_top(&p, m);
        }
        out.push(p.clone());
    }
    Ok(out)
}

/// Probability-weighted mean of the characteristic points.
pub fn expected_coordinates(states: &CharacteristicPointSet, p: &StateDistribution) -> Vec<f64> {
    let mut mean = vec![0.0; states.dim()];
    for (x, &w) in states.points().zip(p.probabilities()) {
        if w == 0.0 {
            continue;
        }
        for (m, c) in mean.iter_mut().zip(x) {
            *m += w * c;
        }
    }
    mean
}

/// Stationary distribution of the model, `M π = π`.
pub fn stationary(model: &MarkovModel) -> Result<StateDistribution> {
    crate::modal::stationary_distribution(model.matrix())
}
