//! Modal analysis of a transition matrix.
//!
//! Right eigenpairs `M φ = λ φ` split the dynamics of the probability vector
//! into damped oscillating forms. A mode with phase advance `arg λ` per step
//! completes a cycle every `n = 2π / |arg λ|` steps, so its frequency is
//! `f = 1 / (n Δt)` and its damping decrement `ξ = ln|λ| / (2π f Δt)`.
//! Eigenvalues at one count the attractors; their forms are stationary
//! distributions.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, ComplexLu, Eigen, Matrix};
use crate::markov::{MarkovModel, StateDistribution};
use crate::math;
use crate::states::CharacteristicPointSet;

/// Tolerance of the Perron check and the spectral bound.
pub const PERRON_TOL: f64 = 1e-8;
/// Stationary residual bound `‖Mπ - π‖∞`.
pub const STATIONARY_TOL: f64 = 1e-8;
/// Eigenvalues farther than this from one cannot carry a stationary form.
pub const UNIT_EIGENVALUE_TOL: f64 = 1e-6;
pub const DEFAULT_ATTRACTOR_TOL: f64 = 1e-3;
pub const DEFAULT_REAL_TOL: f64 = 1e-9;
/// Eigenvalues below this modulus are rank-deficiency zeros.
pub const NUMERICAL_ZERO: f64 = 1e-12;
/// Eigenvector matrices above this condition number skip reconstruction.
pub const MAX_RECONSTRUCTION_CONDITION: f64 = 1e8;

/// Oscillation of one mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeFrequency {
    /// Hz
    pub frequency: f64,
    /// Steps per cycle, `2π / |arg λ|`.
    pub steps_per_cycle: f64,
    /// Seconds, `steps_per_cycle · Δt`.
    pub period: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeSummary {
    pub eigenvalue: Complex64,
    pub frequency: Option<ModeFrequency>,
    pub damping: Option<f64>,
    /// `‖Mφ - λφ‖∞ / ‖φ‖∞`
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModalResult {
    modes: Vec<ModeSummary>,
    eigenforms: Vec<Vec<Complex64>>,
    attractor_count: usize,
    stationary: StateDistribution,
    dt: f64,
}

impl ModalResult {
    /// Eigenvalues by descending modulus, unit eigenvalue first.
    pub fn eigenvalues(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.modes.iter().map(|m| m.eigenvalue)
    }

    pub fn modes(&self) -> &[ModeSummary] {
        &self.modes
    }

    /// Right eigenvectors with unit Euclidean norm, in mode order.
    pub fn eigenforms(&self) -> &[Vec<Complex64>] {
        &self.eigenforms
    }

    /// Attractor count at [`DEFAULT_ATTRACTOR_TOL`].
    pub fn attractor_count(&self) -> usize {
        self.attractor_count
    }

    pub fn stationary(&self) -> &StateDistribution {
        &self.stationary
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn max_residual(&self) -> f64 {
        self.modes.iter().map(|m| m.residual).fold(0.0, f64::max)
    }

    /// Index of the largest-modulus mode with a nonzero phase.
    pub fn dominant_oscillatory(&self) -> Option<usize> {
        self.modes
            .iter()
            .enumerate()
            .filter(|(_, m)| m.frequency.is_some())
            .fold(None, |best: Option<(usize, f64)>, (i, m)| {
                let r = m.eigenvalue.norm();
                match best {
                    Some((_, b)) if b >= r => best,
                    _ => Some((i, r)),
                }
            })
            .map(|(i, _)| i)
    }

    /// Compares `Φ diag(λ) Φ⁻¹` with the original matrix.
    pub fn reconstruction(&self, matrix: &Matrix) -> Result<Reconstruction> {
        let lu = ComplexLu::from_columns(&self.eigenforms)?;
        let inverse = lu.inverse_columns();
        let condition =
            linalg::complex_norm_inf(&self.eigenforms) * linalg::complex_norm_inf(&inverse);
        if condition > MAX_RECONSTRUCTION_CONDITION {
            return Ok(Reconstruction {
                condition,
                max_error: None,
            });
        }
        let n = self.eigenforms.len();
        let mut max_error: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                // (Φ Λ Φ⁻¹)_{ij} = Σ_k Φ_{ik} λ_k (Φ⁻¹)_{kj}
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, mode) in self.modes.iter().enumerate() {
                    acc += self.eigenforms[k][i] * mode.eigenvalue * inverse[j][k];
                }
                max_error = max_error.max((acc - matrix[(i, j)]).norm());
            }
        }
        Ok(Reconstruction {
            condition,
            max_error: Some(max_error),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reconstruction {
    /// `‖Φ‖∞ ‖Φ⁻¹‖∞`
    pub condition: f64,
    /// Largest entrywise error; `None` when the condition number is too large.
    pub max_error: Option<f64>,
}

/// Spectrum, eigenforms and derived mode tables of a fitted model.
pub fn decompose(model: &MarkovModel) -> Result<ModalResult> {
    decompose_matrix(model.matrix(), model.dt())
}

/// Same as [`decompose`] for a bare column-stochastic matrix.
pub fn decompose_matrix(matrix: &Matrix, dt: f64) -> Result<ModalResult> {
    crate::error::check_positive("dt", dt)?;
    let eig = linalg::eigen(matrix)?;
    if let Some(bad) = eig.values.iter().find(|l| !(l.norm() <= 1.0 + PERRON_TOL)) {
        return Err(Error::PerronViolation {
            re: bad.re,
            im: bad.im,
        });
    }
    let stationary = stationary_from(matrix, &eig)?;

    let order = mode_order(&eig.values);
    let lead = eig.values[order[0]];
    if (lead - 1.0).norm() > PERRON_TOL {
        return Err(Error::PerronViolation {
            re: lead.re,
            im: lead.im,
        });
    }

    let mut modes = Vec::with_capacity(order.len());
    let mut eigenforms = Vec::with_capacity(order.len());
    for k in order {
        let lambda = eig.values[k];
        let mut form = eig.vectors[k].clone();
        let norm = math::sqrt(form.iter().map(|z| z.norm_sqr()).sum());
        if norm > 0.0 {
            form.iter_mut().for_each(|z| *z /= norm);
        }
        let (frequency, damping) = if lambda.norm() < NUMERICAL_ZERO {
            (None, None)
        } else {
            let f = mode_frequency(lambda, dt);
            let xi = f.and_then(|f| mode_damping(lambda, f.frequency, dt).ok());
            (f, xi)
        };
        modes.push(ModeSummary {
            eigenvalue: lambda,
            frequency,
            damping,
            residual: relative_residual(matrix, lambda, &form),
        });
        eigenforms.push(form);
    }

    let mut result = ModalResult {
        modes,
        eigenforms,
        attractor_count: 0,
        stationary,
        dt,
    };
    result.attractor_count = attractor_count(&result, DEFAULT_ATTRACTOR_TOL);
    Ok(result)
}

/// Descending modulus with conjugate pairs adjacent; the eigenvalue nearest
/// one is moved to the front.
fn mode_order(values: &[Complex64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| {
        let (x, y) = (values[a], values[b]);
        y.norm()
            .total_cmp(&x.norm())
            .then(y.re.total_cmp(&x.re))
            .then(y.im.total_cmp(&x.im))
    });
    if let Some(pos) = (0..order.len()).min_by(|&a, &b| {
        (values[order[a]] - 1.0)
            .norm()
            .total_cmp(&(values[order[b]] - 1.0).norm())
    }) {
        let lead = order.remove(pos);
        order.insert(0, lead);
    }
    order
}

fn relative_residual(matrix: &Matrix, lambda: Complex64, form: &[Complex64]) -> f64 {
    let scale = form.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return 0.0;
    }
    matrix
        .mul_complex_vec(form)
        .iter()
        .zip(form)
        .map(|(a, b)| (a - lambda * b).norm())
        .fold(0.0, f64::max)
        / scale
}

/// Cycle length and frequency of a mode; `None` for zero phase.
pub fn mode_frequency(lambda: Complex64, dt: f64) -> Option<ModeFrequency> {
    let phase = if lambda.im == 0.0 {
        if lambda.re < 0.0 {
            PI
        } else {
            return None;
        }
    } else {
        math::atan2(lambda.im, lambda.re).abs()
    };
    let steps_per_cycle = TAU / phase;
    Some(ModeFrequency {
        frequency: 1.0 / (steps_per_cycle * dt),
        steps_per_cycle,
        period: steps_per_cycle * dt,
    })
}

/// `ξ = ln|λ| / (2π f Δt)`; only defined for oscillating modes.
pub fn mode_damping(lambda: Complex64, frequency: f64, dt: f64) -> Result<f64> {
    if !(frequency > 0.0) || !frequency.is_finite() || !(dt > 0.0) {
        return Err(Error::NonOscillatory {
            re: lambda.re,
            im: lambda.im,
        });
    }
    Ok(math::ln(lambda.norm()) / (TAU * frequency * dt))
}

/// Eigenvalues with `|λ - 1| <= tol`.
pub fn attractor_count(result: &ModalResult, tol: f64) -> usize {
    result
        .eigenvalues()
        .filter(|l| (l - 1.0).norm() <= tol)
        .count()
}

/// Eigenvalues with `|Im λ| <= tol`.
pub fn real_eigenvalue_count(result: &ModalResult, tol: f64) -> usize {
    result.eigenvalues().filter(|l| l.im.abs() <= tol).count()
}

/// One characteristic point with the amplitude of each requested mode.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenformRow {
    pub coordinates: Vec<f64>,
    /// `(modulus, phase in [0, 2π))` per requested mode.
    pub amplitudes: Vec<(f64, f64)>,
}

/// Eigenforms over the characteristic points.
///
/// Unit-eigenvalue forms are scaled to sum to one; other forms are rotated
/// and scaled so their largest entry is `1 + 0i`.
pub fn eigenform_table(
    result: &ModalResult,
    states: &CharacteristicPointSet,
    modes: &[usize],
) -> Result<Vec<EigenformRow>> {
    let s = states.len();
    if result.eigenforms.first().map_or(0, Vec::len) != s {
        return Err(Error::DimensionMismatch {
            expected: s,
            found: result.eigenforms.first().map_or(0, Vec::len),
        });
    }
    let forms = modes
        .iter()
        .map(|&m| {
            let mode = result.modes.get(m).ok_or(Error::StateIndex {
                index: m,
                len: result.modes.len(),
            })?;
            Ok(normalized_form(
                &result.eigenforms[m],
                (mode.eigenvalue - 1.0).norm() <= DEFAULT_ATTRACTOR_TOL,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(states
        .points()
        .enumerate()
        .map(|(i, x)| EigenformRow {
            coordinates: x.to_vec(),
            amplitudes: forms
                .iter()
                .map(|f| {
                    let z = f[i];
                    let mut phase = math::atan2(z.im, z.re);
                    if phase < 0.0 {
                        phase += TAU;
                    }
                    if phase >= TAU {
                        phase = 0.0;
                    }
                    (z.norm(), phase)
                })
                .collect(),
        })
        .collect())
}

fn normalized_form(form: &[Complex64], stationary: bool) -> Vec<Complex64> {
    if stationary {
        let sum: Complex64 = form.iter().sum();
        let peak = form.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if sum.norm() > 1e-6 * peak {
            return form.iter().map(|z| z / sum).collect();
        }
    }
    let pivot = form
        .iter()
        .enumerate()
        .fold((0, -1.0), |best, (i, z)| {
            if z.norm() > best.1 {
                (i, z.norm())
            } else {
                best
            }
        })
        .0;
    let scale = form[pivot];
    if scale.norm() == 0.0 {
        return form.to_vec();
    }
    form.iter()
        .enumerate()
        .map(|(i, z)| {
            if i == pivot {
                Complex64::new(1.0, 0.0)
            } else {
                z / scale
            }
        })
        .collect()
}

/// Stationary distribution `M π = π` of a column-stochastic matrix.
pub fn stationary_distribution(matrix: &Matrix) -> Result<StateDistribution> {
    stationary_from(matrix, &linalg::eigen(matrix)?)
}

fn stationary_from(matrix: &Matrix, eig: &Eigen) -> Result<StateDistribution> {
    let mut candidates: Vec<usize> = (0..eig.values.len())
        .filter(|&k| (eig.values[k] - 1.0).norm() <= UNIT_EIGENVALUE_TOL)
        .collect();
    if candidates.is_empty() {
        return Err(Error::NoUnitEigenvalue);
    }
    candidates.sort_by(|&a, &b| {
        (eig.values[a] - 1.0)
            .norm()
            .total_cmp(&(eig.values[b] - 1.0).norm())
    });

    let mut best_residual = f64::INFINITY;
    for &k in &candidates {
        if let Some(pi) = nonnegative_real(&eig.vectors[k]) {
            let r = stationary_residual(matrix, &pi);
            if r <= STATIONARY_TOL {
                return Ok(pi);
            }
            best_residual = best_residual.min(r);
        }
    }

    // mixed-sign vector from a degenerate unit eigenspace: use one closed class
    if let Some(class) = first_closed_class(matrix) {
        let sub = matrix.submatrix(&class);
        let sub_eig = linalg::eigen(&sub)?;
        let k = (0..sub_eig.values.len())
            .min_by(|&a, &b| {
                (sub_eig.values[a] - 1.0)
                    .norm()
                    .total_cmp(&(sub_eig.values[b] - 1.0).norm())
            })
            .ok_or(Error::NoUnitEigenvalue)?;
        if let Some(local) = nonnegative_real(&sub_eig.vectors[k]) {
            let mut full = vec![0.0; matrix.rows()];
            for (&i, &p) in class.iter().zip(local.probabilities()) {
                full[i] = p;
            }
            let pi = StateDistribution::new(full)?;
            let r = stationary_residual(matrix, &pi);
            if r <= STATIONARY_TOL {
                return Ok(pi);
            }
            best_residual = best_residual.min(r);
        }
    }
    Err(Error::StationaryResidual(best_residual))
}

/// Rotates a complex eigenvector to be real at its largest entry and returns
/// it as a distribution if no entry is materially negative.
fn nonnegative_real(v: &[Complex64]) -> Option<StateDistribution> {
    let pivot = v.iter().enumerate().fold((0, -1.0), |best, (i, z)| {
        if z.norm() > best.1 {
            (i, z.norm())
        } else {
            best
        }
    });
    if pivot.1 <= 0.0 {
        return None;
    }
    let rotation = v[pivot.0].conj() / pivot.1;
    let real: Vec<f64> = v.iter().map(|z| (z * rotation).re).collect();
    let peak = pivot.1;
    if real.iter().any(|&x| x < -1e-9 * peak) {
        return None;
    }
    let clamped = real.into_iter().map(|x| x.max(0.0)).collect();
    StateDistribution::normalized(clamped)
}

fn stationary_residual(matrix: &Matrix, pi: &StateDistribution) -> f64 {
    matrix
        .mul_vec(pi.probabilities())
        .iter()
        .zip(pi.probabilities())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}

/// States reachable from `start` along positive transitions.
fn reachable(matrix: &Matrix, start: usize) -> Vec<bool> {
    let n = matrix.rows();
    let mut seen = vec![false; n];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(j) = stack.pop() {
        for i in 0..n {
            if !seen[i] && matrix[(i, j)] > 0.0 {
                seen[i] = true;
                stack.push(i);
            }
        }
    }
    seen
}

/// Lowest-indexed communicating class that no transition leaves.
fn first_closed_class(matrix: &Matrix) -> Option<Vec<usize>> {
    let n = matrix.rows();
    let reach: Vec<Vec<bool>> = (0..n).map(|i| reachable(matrix, i)).collect();
    (0..n).find_map(|i| {
        let class: Vec<usize> = (0..n).filter(|&j| reach[i][j]).collect();
        class.iter().all(|&j| reach[j][i]).then_some(class)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::markov::testing::{model, three_cycle};
    use approx::assert_abs_diff_eq;

    fn spectrum(result: &ModalResult) -> Vec<Complex64> {
        result.eigenvalues().collect()
    }

    #[test]
    fn identity_spectrum() {
        let r = decompose(&model(&[
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ]))
        .unwrap();
        assert!(spectrum(&r).iter().all(|l| (l - 1.0).norm() < 1e-14));
        assert_eq!(r.attractor_count(), 3);
        assert_eq!(real_eigenvalue_count(&r, DEFAULT_REAL_TOL), 3);
    }

    #[test]
    fn two_state_chain() {
        let r = decompose(&model(&[vec![0.9, 0.1], vec![0.1, 0.9]])).unwrap();
        let l = spectrum(&r);
        assert_abs_diff_eq!(l[0].re, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(l[1].re, 0.8, epsilon = 1e-14);
        assert_eq!(real_eigenvalue_count(&r, DEFAULT_REAL_TOL), 2);
        assert_eq!(r.attractor_count(), 1);
        assert!(r.modes()[1].frequency.is_none());
    }

    #[test]
    fn three_cycle_spectrum_and_period() {
        let r = decompose(&three_cycle()).unwrap();
        let l = spectrum(&r);
        let w = Complex64::from_polar(1.0, TAU / 3.0);
        assert_abs_diff_eq!(l[0].re, 1.0, epsilon = 1e-10);
        assert!((l[1] - w).norm() < 1e-10);
        assert!((l[2] - w.conj()).norm() < 1e-10);
        assert_eq!(real_eigenvalue_count(&r, DEFAULT_REAL_TOL), 1);
        let f = r.modes()[1].frequency.unwrap();
        assert_abs_diff_eq!(f.period, 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.modes()[1].damping.unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn frequency_examples() {
        let f = mode_frequency(Complex64::from_polar(1.0, TAU / 3.0), 1.0).unwrap();
        assert_abs_diff_eq!(f.steps_per_cycle, 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(f.frequency, 1.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(f.period, 3.0, epsilon = 1e-12);

        assert_eq!(mode_frequency(Complex64::new(0.8, 0.0), 1.0), None);

        let f = mode_frequency(Complex64::new(-0.5, 0.0), 0.01).unwrap();
        assert_eq!(f.steps_per_cycle, 2.0);
        assert_abs_diff_eq!(f.frequency, 50.0, epsilon = 1e-12);

        // conjugates share the cycle length
        let a = mode_frequency(Complex64::new(0.3, 0.4), 0.1).unwrap();
        let b = mode_frequency(Complex64::new(0.3, -0.4), 0.1).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn damping_examples() {
        let l = Complex64::from_polar(1.0, 0.7);
        let f = mode_frequency(l, 0.2).unwrap();
        assert_abs_diff_eq!(
            mode_damping(l, f.frequency, 0.2).unwrap(),
            0.0,
            epsilon = 1e-15
        );

        let l = Complex64::from_polar(0.9, PI / 4.0);
        let f = mode_frequency(l, 1.0).unwrap();
        assert_abs_diff_eq!(
            mode_damping(l, f.frequency, 1.0).unwrap(),
            -0.13414,
            epsilon = 1e-5
        );

        let l = Complex64::from_polar(0.9, PI / 2.0);
        let f = mode_frequency(l, 0.5).unwrap();
        assert_abs_diff_eq!(
            mode_damping(l, f.frequency, 0.5).unwrap(),
            -0.06707,
            epsilon = 1e-5
        );

        assert!(matches!(
            mode_damping(Complex64::new(0.5, 0.0), 0.0, 1.0),
            Err(Error::NonOscillatory { .. })
        ));
    }

    #[test]
    fn block_diagonal_has_two_attractors() {
        let r = decompose(&model(&[
            vec![0.7, 0.3, 0.0, 0.0],
            vec![0.4, 0.6, 0.0, 0.0],
            vec![0.0, 0.0, 0.2, 0.8],
            vec![0.0, 0.0, 0.5, 0.5],
        ]))
        .unwrap();
        assert_eq!(r.attractor_count(), 2);
        assert_eq!(attractor_count(&r, 1e-3), 2);
    }

    #[test]
    fn eigenform_tables() {
        let chain = model(&[
            vec![0.6, 0.3, 0.1],
            vec![0.2, 0.5, 0.3],
            vec![0.25, 0.25, 0.5],
        ]);
        let r = decompose(&chain).unwrap();
        let pi = crate::markov::stationary(&chain).unwrap();
        let rows = eigenform_table(&r, chain.states(), &[0]).unwrap();
        assert_eq!(rows.len(), 3);
        for (row, p) in rows.iter().zip(pi.probabilities()) {
            assert_abs_diff_eq!(row.amplitudes[0].0, *p, epsilon = 1e-12);
            assert_abs_diff_eq!(row.amplitudes[0].1, 0.0, epsilon = 1e-12);
        }

        let cycle = three_cycle();
        let r = decompose(&cycle).unwrap();
        let rows = eigenform_table(&r, cycle.states(), &[1]).unwrap();
        let mut phases: Vec<f64> = rows.iter().map(|x| x.amplitudes[0].1).collect();
        for row in &rows {
            assert_abs_diff_eq!(row.amplitudes[0].0, 1.0, epsilon = 1e-12);
        }
        // φ_{k+1} = φ_k / λ along the cycle 0 -> 1 -> 2
        let step = (phases[0] - phases[1]).rem_euclid(TAU);
        assert_abs_diff_eq!(step, TAU / 3.0, epsilon = 1e-12);
        phases.sort_by(|a, b| a.total_cmp(b));
        for (got, want) in phases.iter().zip([0.0, TAU / 3.0, 2.0 * TAU / 3.0]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
        assert!(eigenform_table(&r, cycle.states(), &[5]).is_err());
    }

    #[test]
    fn reconstruction_of_diagonalizable_chain() {
        let chain = model(&[
            vec![0.7, 0.2, 0.1],
            vec![0.1, 0.8, 0.1],
            vec![0.3, 0.3, 0.4],
        ]);
        let r = decompose(&chain).unwrap();
        let rec = r.reconstruction(chain.matrix()).unwrap();
        assert!(rec.max_error.unwrap() <= 1e-7);
        assert!(r.max_residual() <= 1e-8);
    }

    #[test]
    fn perron_violation_is_reported() {
        let m = Matrix::from_rows(&[&[1.2, 0.0], &[0.0, 0.5]]);
        assert!(matches!(
            decompose_matrix(&m, 1.0),
            Err(Error::PerronViolation { .. })
        ));
        let m = Matrix::from_rows(&[&[0.5, 0.0], &[0.0, 0.5]]);
        assert!(matches!(
            decompose_matrix(&m, 1.0),
            Err(Error::NoUnitEigenvalue)
        ));
        assert!(matches!(
            stationary_distribution(&m),
            Err(Error::NoUnitEigenvalue)
        ));
    }

    #[test]
    fn closed_class_search() {
        let m = Matrix::from_columns(&[
            vec![0.5, 0.5, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ]);
        assert_eq!(first_closed_class(&m), Some(vec![1]));
    }

    #[test]
    fn two_by_two_grid_matches_closed_form() {
        // columns (1-a, a) and (b, 1-b): eigenvalues 1 and 1 - a - b
        for i in 0..20 {
            for j in 0..20 {
                let a = i as f64 / 19.0;
                let b = j as f64 / 19.0;
                let m = Matrix::from_columns(&[vec![1.0 - a, a], vec![b, 1.0 - b]]);
                let r = decompose_matrix(&m, 1.0).unwrap();
                let mut got: Vec<f64> = r.eigenvalues().map(|l| l.re).collect();
                got.sort_by(|x, y| y.total_cmp(x));
                let tr = 2.0 - a - b;
                let det = (1.0 - a) * (1.0 - b) - a * b;
                let disc = math::sqrt((tr * tr - 4.0 * det).max(0.0));
                let want = [(tr + disc) / 2.0, (tr - disc) / 2.0];
                for (g, w) in got.iter().zip(want) {
                    assert_abs_diff_eq!(*g, w, epsilon = 1e-10);
                }
            }
        }
    }
}
