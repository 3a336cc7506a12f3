//! Characteristic points: the discrete states of the Markov model.
//!
//! A point of the delay series becomes characteristic when no previously
//! selected point lies within squared distance `r0` of it. Two characteristic
//! points are neighbors when their squared distance is below `r0 * k`.
//! Neighbor counts give the dimension estimate `N = n / 2` and the adequacy
//! check on `r0`.

use alloc::vec::Vec;

use crate::embedding::DelayPointSeries;
use crate::error::{check_positive, Error, Result};
use crate::math::{self, squared_distance};

pub const DEFAULT_R0: f64 = 1.0;
pub const DEFAULT_NEIGHBOR_FACTOR: f64 = 1.4;
pub const DEFAULT_ADEQUACY_THRESHOLD: f64 = 0.75;
/// Percentile of neighbor counts used as the robust maximum.
pub const ROBUST_MAX_PERCENTILE: f64 = 0.95;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelectionConfig {
    /// Squared-distance exclusion radius.
    pub r0: f64,
    /// Neighbor threshold factor on `r0`.
    pub k: f64,
    /// Minimum share of points with more than 2 neighbors.
    pub adequacy_threshold: f64,
}

impl Default for SelectionConfig {
    fn default() -> Self {
        Self {
            r0: DEFAULT_R0,
            k: DEFAULT_NEIGHBOR_FACTOR,
            adequacy_threshold: DEFAULT_ADEQUACY_THRESHOLD,
        }
    }
}

impl SelectionConfig {
    pub fn with_r0(r0: f64) -> Self {
        Self {
            r0,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_positive("r0", self.r0)?;
        check_positive("k", self.k)?;
        if !(0.0..=1.0).contains(&self.adequacy_threshold) {
            return Err(Error::OutOfRange {
                name: "adequacy_threshold",
                value: self.adequacy_threshold,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Adequacy {
    pub fraction: f64,
    pub adequate: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CharacteristicPointSet {
    dim: usize,
    coords: Vec<f64>,
    config: SelectionConfig,
    neighbor_counts: Vec<usize>,
    dimension_estimate: usize,
    adequacy: Adequacy,
}

impl CharacteristicPointSet {
    /// Wraps existing points, checking the pairwise exclusion invariant and
    /// recomputing the neighbor statistics.
    pub fn from_points(points: &[Vec<f64>], config: SelectionConfig) -> Result<Self> {
        let dim = points.first().map(Vec::len).ok_or(Error::EmptySeries)?;
        if dim == 0 {
            return Err(Error::NoAxes);
        }
        if let Some(bad) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        let coords = points.concat();
        for (i, a) in coords.chunks_exact(dim).enumerate() {
            for (j, b) in coords.chunks_exact(dim).enumerate().skip(i + 1) {
                let distance = squared_distance(a, b);
                if distance < config.r0 {
                    return Err(Error::SelectionViolated {
                        first: i,
                        second: j,
                        distance,
                    });
                }
            }
        }
        Self::assemble(dim, coords, config)
    }

    fn assemble(dim: usize, coords: Vec<f64>, config: SelectionConfig) -> Result<Self> {
        config.validate()?;
        let mut set = Self {
            dim,
            coords,
            config,
            neighbor_counts: Vec::new(),
            dimension_estimate: 1,
            adequacy: Adequacy {
                fraction: 0.0,
                adequate: false,
            },
        };
        set.neighbor_counts = neighbor_counts(&set);
        set.dimension_estimate = estimate_dimension(&set);
        set.adequacy = adequacy(&set);
        Ok(set)
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> core::slice::ChunksExact<'_, f64> {
        self.coords.chunks_exact(self.dim)
    }

    pub fn config(&self) -> SelectionConfig {
        self.config
    }

    pub fn r0(&self) -> f64 {
        self.config.r0
    }

    pub fn k(&self) -> f64 {
        self.config.k
    }

    pub fn neighbor_counts(&self) -> &[usize] {
        &self.neighbor_counts
    }

    pub fn dimension_estimate(&self) -> usize {
        self.dimension_estimate
    }

    pub fn adequacy(&self) -> Adequacy {
        self.adequacy
    }

    /// Smallest pairwise squared distance, `None` for a single point.
    pub fn min_pairwise_distance(&self) -> Option<f64> {
        let mut best: Option<f64> = None;
        for (i, a) in self.points().enumerate() {
            for b in self.points().skip(i + 1) {
                let d = squared_distance(a, b);
                best = Some(best.map_or(d, |m| m.min(d)));
            }
        }
        best
    }
}

/// Greedy selection with the default neighbor factor and adequacy threshold.
pub fn select_points(series: &DelayPointSeries, r0: f64) -> Result<CharacteristicPointSet> {
    select_points_with(series, SelectionConfig::with_r0(r0))
}

/// Single forward pass in time order: a point is kept iff every kept point is
/// at squared distance `>= r0`. The first point is always kept.
pub fn select_points_with(
    series: &DelayPointSeries,
    config: SelectionConfig,
) -> Result<CharacteristicPointSet> {
    config.validate()?;
    if series.is_empty() {
        return Err(Error::EmptySeries);
    }
    let dim = series.dim();
    let mut coords: Vec<f64> = Vec::new();
    for p in series.points() {
        let isolated = coords
            .chunks_exact(dim)
            .all(|x| squared_distance(x, p) >= config.r0);
        if isolated {
            coords.extend_from_slice(p);
        }
    }
    CharacteristicPointSet::assemble(dim, coords, config)
}

/// For each point, the number of other points at squared distance `< r0 * k`.
pub fn neighbor_counts(set: &CharacteristicPointSet) -> Vec<usize> {
    let threshold = set.config.r0 * set.config.k;
    let n = set.len();
    let mut counts = alloc::vec![0usize; n];
    for i in 0..n {
        for j in i + 1..n {
            if squared_distance(set.point(i), set.point(j)) < threshold {
                counts[i] += 1;
                counts[j] += 1;
            }
        }
    }
    counts
}

/// Nearest-rank percentile of the neighbor counts.
pub fn robust_max(counts: &[usize]) -> usize {
    if counts.is_empty() {
        return 0;
    }
    let mut sorted = counts.to_vec();
    sorted.sort_unstable();
    let rank = math::ceil(ROBUST_MAX_PERCENTILE * sorted.len() as f64) as usize;
    sorted[rank.clamp(1, sorted.len()) - 1]
}

/// `N = max(1, round(n* / 2))` with `n*` the robust maximum neighbor count.
pub fn estimate_dimension(set: &CharacteristicPointSet) -> usize {
    let counts = if set.neighbor_counts.len() == set.len() {
        set.neighbor_counts.clone()
    } else {
        neighbor_counts(set)
    };
    let n_star = robust_max(&counts);
    (math::round(n_star as f64 / 2.0) as usize).max(1)
}

/// Share of points with more than 2 neighbors against the configured cutoff.
pub fn adequacy(set: &CharacteristicPointSet) -> Adequacy {
    let counts = if set.neighbor_counts.len() == set.len() {
        set.neighbor_counts.clone()
    } else {
        neighbor_counts(set)
    };
    adequacy_of_counts(&counts, set.config.adequacy_threshold)
}

pub fn adequacy_of_counts(counts: &[usize], threshold: f64) -> Adequacy {
    let fraction = if counts.is_empty() {
        0.0
    } else {
        counts.iter().filter(|&&c| c > 2).count() as f64 / counts.len() as f64
    };
    Adequacy {
        fraction,
        adequate: fraction >= threshold,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::String;
    use alloc::vec;

    fn series_1d(values: &[f64]) -> DelayPointSeries {
        let pts: Vec<Vec<f64>> = values.iter().map(|&v| vec![v]).collect();
        DelayPointSeries::from_points(vec![String::from("x")], &pts, 1.0).unwrap()
    }

    fn set_1d(values: &[f64]) -> CharacteristicPointSet {
        let pts: Vec<Vec<f64>> = values.iter().map(|&v| vec![v]).collect();
        CharacteristicPointSet::from_points(&pts, SelectionConfig::default()).unwrap()
    }

    fn coords_1d(set: &CharacteristicPointSet) -> Vec<f64> {
        set.points().map(|p| p[0]).collect()
    }

    #[test]
    fn selection_example() {
        let set = select_points(&series_1d(&[0.0, 0.5, 1.2, 1.3, 2.5]), 1.0).unwrap();
        assert_eq!(coords_1d(&set), vec![0.0, 1.2, 2.5]);
    }

    #[test]
    fn identical_samples_give_one_point() {
        let set = select_points(&series_1d(&[3.0; 10]), 1.0).unwrap();
        assert_eq!(set.len(), 1);
    }

    #[test]
    fn tiny_r0_keeps_all_distinct_samples() {
        let values = [0.0, 0.1, 0.2, 0.15, 5.0];
        let set = select_points(&series_1d(&values), 1e-9).unwrap();
        assert_eq!(coords_1d(&set), values.to_vec());
    }

    #[test]
    fn selection_rejects_empty_series() {
        let s = DelayPointSeries::from_flat(vec![String::from("x")], vec![], 1.0).unwrap();
        assert_eq!(select_points(&s, 1.0), Err(Error::EmptySeries));
        assert!(select_points(&series_1d(&[1.0]), 0.0).is_err());
    }

    #[test]
    fn neighbor_examples() {
        assert_eq!(neighbor_counts(&set_1d(&[4.0])), vec![0]);
        assert_eq!(neighbor_counts(&set_1d(&[0.0, 1.2, 2.5])), vec![0, 0, 0]);
        assert_eq!(neighbor_counts(&set_1d(&[0.0, 1.1])), vec![1, 1]);
    }

    #[test]
    fn from_points_enforces_exclusion() {
        let err = CharacteristicPointSet::from_points(
            &[vec![0.0], vec![0.5]],
            SelectionConfig::default(),
        );
        assert!(matches!(
            err,
            Err(Error::SelectionViolated {
                first: 0,
                second: 1,
                ..
            })
        ));
    }

    #[test]
    fn dimension_from_counts() {
        // isolated points clamp to 1
        assert_eq!(estimate_dimension(&set_1d(&[0.0, 5.0, 10.0])), 1);
        // a chain at unit spacing has 2 neighbors inside
        let chain: Vec<f64> = (0..50).map(|i| i as f64).collect();
        assert_eq!(estimate_dimension(&set_1d(&chain)), 1);
    }

    #[test]
    fn robust_max_ignores_single_overshoot() {
        // neighbor counts spanning [1, 8] with one overshoot to 9
        let mut counts: Vec<usize> = (0..40).map(|i| 1 + i % 8).collect();
        counts.push(9);
        assert_eq!(robust_max(&counts), 8);
        assert_eq!(
            (math::round(robust_max(&counts) as f64 / 2.0) as usize).max(1),
            4
        );
        // max count 4 reads as dimension 2
        assert_eq!(robust_max(&[2, 3, 4, 4, 4, 3]), 4);
        assert_eq!(robust_max(&[]), 0);
    }

    #[test]
    fn adequacy_examples() {
        let a = adequacy_of_counts(&[3, 3, 3, 0], DEFAULT_ADEQUACY_THRESHOLD);
        assert_eq!(a.fraction, 0.75);
        assert!(a.adequate);
        let a = adequacy_of_counts(&[1, 1], DEFAULT_ADEQUACY_THRESHOLD);
        assert_eq!(a.fraction, 0.0);
        assert!(!a.adequate);
    }

    fn lattice(d: usize, half_width: i32) -> Vec<Vec<f64>> {
        let side: Vec<i32> = (-half_width..=half_width).collect();
        let mut pts: Vec<Vec<f64>> = vec![vec![]];
        for _ in 0..d {
            pts = pts
                .into_iter()
                .flat_map(|p| {
                    side.iter().map(move |&c| {
                        let mut q = p.clone();
                        q.push(c as f64);
                        q
                    })
                })
                .collect();
        }
        let r = half_width as f64;
        pts.retain(|p| p.iter().map(|x| x * x).sum::<f64>() <= r * r);
        pts
    }

    #[test]
    fn lattice_ball_dimension() {
        for (d, w) in [(1usize, 30), (2, 12), (3, 7)] {
            let set =
                CharacteristicPointSet::from_points(&lattice(d, w), SelectionConfig::default())
                    .unwrap();
            assert_eq!(set.dimension_estimate(), d, "d = {d}");
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn cloud() -> impl Strategy<Value = Vec<Vec<f64>>> {
            prop::collection::vec(prop::collection::vec(-6.0f64..6.0, 2), 1..120)
        }

        fn series(points: &[Vec<f64>]) -> DelayPointSeries {
            DelayPointSeries::from_points(vec![String::from("a"), String::from("b")], points, 1.0)
                .unwrap()
        }

        proptest! {
            #[test]
            fn pairwise_exclusion_and_idempotence(points in cloud(), r0 in 0.2f64..3.0) {
                let set = select_points(&series(&points), r0).unwrap();
                if let Some(d) = set.min_pairwise_distance() {
                    prop_assert!(d >= r0);
                }
                let kept: Vec<Vec<f64>> = set.points().map(<[f64]>::to_vec).collect();
                let again = select_points(&series(&kept), r0).unwrap();
                prop_assert_eq!(again.points().collect::<Vec<_>>(), set.points().collect::<Vec<_>>());
            }

            #[test]
            fn neighbor_relation_is_symmetric(points in cloud()) {
                let set = select_points(&series(&points), 1.0).unwrap();
                let counts = set.neighbor_counts();
                let total: usize = counts.iter().sum();
                prop_assert_eq!(total % 2, 0);
                for (i, &c) in counts.iter().enumerate() {
                    let brute = (0..set.len())
                        .filter(|&j| j != i && squared_distance(set.point(i), set.point(j)) < 1.4)
                        .count();
                    prop_assert_eq!(c, brute);
                }
                prop_assert!(set.dimension_estimate() >= 1);
            }

            #[test]
            fn order_changes_count_moderately(points in prop::collection::vec(prop::collection::vec(-8.0f64..8.0, 2), 200..300), seed in any::<u64>()) {
                use rand::{seq::SliceRandom, SeedableRng};
                let a = select_points(&series(&points), 1.0).unwrap().len() as f64;
                let mut shuffled = points.clone();
                shuffled.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
                let b = select_points(&series(&shuffled), 1.0).unwrap().len() as f64;
                prop_assert!((a - b).abs() / a <= 0.5);
            }
        }
    }
}
