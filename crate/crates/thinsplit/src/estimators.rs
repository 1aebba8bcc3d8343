//! Empirical test functions and closed-form variance formulas.
//!
//! Two statistics target departures from complete spatial randomness after a
//! pattern has been split in two by random labelling:
//!
//! * the bivariate `K̃₁₂(d)`: scaled count of cross pairs within toroidal
//!   distance `d`, equal to `pi d^2` in expectation when the sub-patterns
//!   are independent;
//! * the empty-space statistic `T(d) = log Ĝ(d) - log Ĝ₁(d) - log Ĝ₂(d)`,
//!   zero in expectation under independence because the pooled avoidance
//!   probability factorizes, `G = G₁ G₂`.
//!
//! The `Ĝ` estimates for one `T(d)` evaluation share a single set of `m`
//! uniform sample points, so `T(d)` reduces to the log of a ratio of counts
//! and the sample-point noise common to numerator and denominator cancels.

use rand::Rng;

use crate::error::{Error, Result};
use crate::geometry::{uniform_points, DistanceGrid, Point, RectWindow};
use crate::pointprocess::{MarkedSplit, PointPattern};

/// A function of distance evaluated on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionEstimate {
    grid: DistanceGrid,
    values: Vec<f64>,
}

impl FunctionEstimate {
    pub fn new(grid: DistanceGrid, values: Vec<f64>) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::Domain(format!(
                "estimate has {} values for a grid of {} distances",
                values.len(),
                grid.len()
            )));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::Domain(format!("estimate value {bad} is not finite")));
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &DistanceGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Event counts of a split together with the window area.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitCounts {
    pub n1: usize,
    pub n2: usize,
    pub area: f64,
}

impl SplitCounts {
    pub fn new(n1: usize, n2: usize, area: f64) -> Result<Self> {
        if n1 == 0 || n2 == 0 {
            return Err(Error::DegenerateSplit { n1, n2 });
        }
        if !(area.is_finite() && area > 0.0) {
            return Err(Error::Domain(format!("area must be positive, got {area}")));
        }
        Ok(Self { n1, n2, area })
    }

    pub fn from_split(split: &MarkedSplit) -> Result<Self> {
        let (n1, n2) = split.counts();
        Self::new(n1, n2, split.window().area())
    }
}

fn check_grid_cap(grid: &DistanceGrid, window: &RectWindow) -> Result<()> {
    let cap = window.half_min_side();
    if grid.max() > cap {
        return Err(Error::InvalidGrid(format!(
            "grid reaches {} but half the shorter window side is {cap}",
            grid.max()
        )));
    }
    Ok(())
}

/// Hanisch–Stoyan bivariate K estimator on the torus:
/// `K̃₁₂(d) = |A| / (n1 n2) * #{(i,j): dist(x1i, x2j) <= d}`.
///
/// Non-decreasing in `d` and exactly symmetric in the two sub-patterns.
pub fn k12_hat(split: &MarkedSplit, grid: &DistanceGrid) -> Result<FunctionEstimate> {
    let (n1, n2) = split.counts();
    if n1 == 0 || n2 == 0 {
        return Err(Error::DegenerateSplit { n1, n2 });
    }
    let window = split.window();
    check_grid_cap(grid, &window)?;

    let mut dist_sq = Vec::with_capacity(n1 * n2);
    for &a in split.pattern1().events() {
        for &b in split.pattern2().events() {
            dist_sq.push(window.torus_dist_sq(a, b));
        }
    }
    dist_sq.sort_unstable_by(f64::total_cmp);

    let scale = window.area() / (n1 as f64 * n2 as f64);
    let values = grid
        .distances()
        .iter()
        .map(|&d| {
            let within = dist_sq.partition_point(|&s| s <= d * d);
            scale * within as f64
        })
        .collect();
    FunctionEstimate::new(grid.clone(), values)
}

/// The CSR reference value of the bivariate K function, `pi d^2`.
pub fn csr_k12(d: f64) -> f64 {
    std::f64::consts::PI * d * d
}

fn min_dist_sq_to_pattern(samples: &[Point], pattern: &PointPattern) -> Vec<f64> {
    let window = pattern.window();
    samples
        .iter()
        .map(|&s| {
            pattern
                .events()
                .iter()
                .map(|&e| window.torus_dist_sq(s, e))
                .fold(f64::INFINITY, f64::min)
        })
        .collect()
}

fn fraction_exceeding(sorted_min_sq: &[f64], d: f64) -> f64 {
    let within = sorted_min_sq.partition_point(|&s| s <= d * d);
    (sorted_min_sq.len() - within) as f64 / sorted_min_sq.len() as f64
}

/// Empty-space estimate from explicit sample points: the fraction of
/// `samples` whose toroidal distance to the nearest event exceeds `d`.
/// An empty pattern avoids everything, so the estimate is identically one.
pub fn g_hat_with_points(
    pattern: &PointPattern,
    samples: &[Point],
    grid: &DistanceGrid,
) -> Result<FunctionEstimate> {
    if samples.is_empty() {
        return Err(Error::Domain("need at least one sample point".into()));
    }
    let window = pattern.window();
    check_grid_cap(grid, &window)?;
    for &s in samples {
        if !window.contains(s) {
            return Err(Error::PointOutsideWindow {
                x: s.x,
                y: s.y,
                width: window.width(),
                height: window.height(),
            });
        }
    }
    let mut min_sq = min_dist_sq_to_pattern(samples, pattern);
    min_sq.sort_unstable_by(f64::total_cmp);
    let values = grid
        .distances()
        .iter()
        .map(|&d| fraction_exceeding(&min_sq, d))
        .collect();
    FunctionEstimate::new(grid.clone(), values)
}

/// Empty-space estimate from `m` fresh uniform sample points.
pub fn g_hat<R: Rng + ?Sized>(
    pattern: &PointPattern,
    m: usize,
    grid: &DistanceGrid,
    rng: &mut R,
) -> Result<FunctionEstimate> {
    if m == 0 {
        return Err(Error::Domain("need at least one sample point".into()));
    }
    let samples = uniform_points(m, &pattern.window(), rng);
    g_hat_with_points(pattern, &samples, grid)
}

/// `T(d)` evaluated on a possibly truncated prefix of the requested grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TStatEstimate {
    estimate: FunctionEstimate,
    requested_len: usize,
}

impl TStatEstimate {
    pub fn estimate(&self) -> &FunctionEstimate {
        &self.estimate
    }

    pub fn into_estimate(self) -> FunctionEstimate {
        self.estimate
    }

    /// Whether some requested distances were dropped because a `Ĝ` estimate
    /// hit zero there (log undefined).
    pub fn is_truncated(&self) -> bool {
        self.estimate.len() < self.requested_len
    }

    /// The largest distance at which the statistic could be evaluated.
    pub fn largest_usable_d(&self) -> f64 {
        self.estimate.grid().max()
    }
}

/// Empty-space statistic `T(d) = log Ĝ(d) - log Ĝ₁(d) - log Ĝ₂(d)` with all
/// three estimates sharing `samples`. The pooled minimum distance is the
/// pointwise minimum of the per-pattern distances, so the three estimates
/// are exactly consistent.
///
/// Distances where any estimate is zero are dropped from the end of the
/// grid; the result records how much of the requested grid survived. If no
/// distance is usable the call fails.
pub fn t_stat_with_points(
    split: &MarkedSplit,
    samples: &[Point],
    grid: &DistanceGrid,
) -> Result<TStatEstimate> {
    if samples.is_empty() {
        return Err(Error::Domain("need at least one sample point".into()));
    }
    let window = split.window();
    check_grid_cap(grid, &window)?;
    for &s in samples {
        if !window.contains(s) {
            return Err(Error::PointOutsideWindow {
                x: s.x,
                y: s.y,
                width: window.width(),
                height: window.height(),
            });
        }
    }

    let m = samples.len();
    let min1 = min_dist_sq_to_pattern(samples, split.pattern1());
    let min2 = min_dist_sq_to_pattern(samples, split.pattern2());
    let mut pooled: Vec<f64> = min1.iter().zip(&min2).map(|(&a, &b)| a.min(b)).collect();
    let mut min1 = min1;
    let mut min2 = min2;
    min1.sort_unstable_by(f64::total_cmp);
    min2.sort_unstable_by(f64::total_cmp);
    pooled.sort_unstable_by(f64::total_cmp);

    let count_exceeding =
        |sorted: &[f64], d: f64| sorted.len() - sorted.partition_point(|&s| s <= d * d);
    let mut values = Vec::with_capacity(grid.len());
    for &d in grid.distances() {
        let c_pooled = count_exceeding(&pooled, d);
        let c1 = count_exceeding(&min1, d);
        let c2 = count_exceeding(&min2, d);
        if c_pooled == 0 || c1 == 0 || c2 == 0 {
            break; // Ĝ estimates are non-increasing; later d are zero too.
        }
        // log(Ĝ) - log(Ĝ1) - log(Ĝ2) with Ĝ = c/m reduces to one count ratio.
        values.push(((c_pooled * m) as f64 / (c1 * c2) as f64).ln());
    }
    if values.is_empty() {
        return Err(Error::Domain(
            "empty-space statistic undefined at every grid distance (a Ĝ estimate is zero)".into(),
        ));
    }
    let used = values.len();
    Ok(TStatEstimate {
        estimate: FunctionEstimate::new(grid.prefix(used), values)?,
        requested_len: grid.len(),
    })
}

/// `T(d)` from `m` fresh uniform sample points.
pub fn t_stat<R: Rng + ?Sized>(
    split: &MarkedSplit,
    m: usize,
    grid: &DistanceGrid,
    rng: &mut R,
) -> Result<TStatEstimate> {
    if m == 0 {
        return Err(Error::Domain("need at least one sample point".into()));
    }
    let samples = uniform_points(m, &split.window(), rng);
    t_stat_with_points(split, &samples, grid)
}

/// Default number of empty-space sample points for a pattern.
pub fn default_m(pattern: &PointPattern) -> usize {
    pattern.len().max(1000)
}

/// Variance of `K̃₁₂(d)` for independent uniform sub-patterns on the torus,
/// conditional on the counts:
/// `|A|^2 q (1 - q) / (n1 n2)` with `q = pi d^2 / |A|`.
///
/// Exact for `d` at most half the shorter window side (callers keep grids
/// capped there); the cross-pair indicator variances add because toroidal
/// distances from independent uniform points are pairwise independent.
pub fn var_k12_csr(counts: &SplitCounts, d: f64) -> Result<f64> {
    if !(d.is_finite() && d >= 0.0) {
        return Err(Error::Domain(format!(
            "distance must be nonnegative, got {d}"
        )));
    }
    let q = csr_k12(d) / counts.area;
    if q > 1.0 {
        return Err(Error::Domain(format!(
            "disc of radius {d} does not fit the window (pi d^2 exceeds the area)"
        )));
    }
    Ok(counts.area * counts.area * q * (1.0 - q) / (counts.n1 as f64 * counts.n2 as f64))
}

fn check_variance_args(n: usize, intensity: f64, d: f64, p: f64) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("event count must be at least 1".into()));
    }
    if !(intensity.is_finite() && intensity >= 0.0) {
        return Err(Error::Domain(format!(
            "intensity must be nonnegative, got {intensity}"
        )));
    }
    if !(d.is_finite() && d >= 0.0) {
        return Err(Error::Domain(format!(
            "distance must be nonnegative, got {d}"
        )));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!(
            "probability must be in [0,1], got {p}"
        )));
    }
    Ok(())
}

/// Delta-method approximation to `Var(T(d))` for a Poisson pattern of
/// intensity `intensity` with `n` observed events:
/// `(exp(2 L) + 1 - exp(2 p L) - exp(2 (1-p) L)) / n` with `L = intensity pi d^2`.
/// Zero at `p = 0` and `p = 1`, where `T` is identically zero.
pub fn var_t_delta(n: usize, intensity: f64, d: f64, p: f64) -> Result<f64> {
    check_variance_args(n, intensity, d, p)?;
    let x = 2.0 * intensity * std::f64::consts::PI * d * d;
    Ok((x.exp() + 1.0 - (p * x).exp() - ((1.0 - p) * x).exp()) / n as f64)
}

/// Delta-method approximation to `Var(log Ĝ₁(d) - log Ĝ₂(d))`:
/// `(exp(2 p L) + exp(2 (1-p) L) - 2) / n` with `L = intensity pi d^2`.
/// Symmetric in `p <-> 1-p` and minimized at `p = 0.5`, where it equals
/// `2 (exp(L) - 1) / n`.
pub fn var_logg_diff(n: usize, intensity: f64, d: f64, p: f64) -> Result<f64> {
    check_variance_args(n, intensity, d, p)?;
    let x = 2.0 * intensity * std::f64::consts::PI * d * d;
    Ok(((p * x).exp() + ((1.0 - p) * x).exp() - 2.0) / n as f64)
}
