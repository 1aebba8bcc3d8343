//! Conditional Monte Carlo tests by random toroidal shifts.
//!
//! Keeping pattern 1 fixed and re-placing pattern 2 by a common uniform
//! translation on the torus preserves the internal structure of both
//! sub-patterns while randomizing their relative position — exactly the
//! conditional null distribution of "independent given the observed
//! marginals". Pointwise percentile envelopes and a rank p-value of an
//! integrated squared deviation summarize the replicates.
//!
//! Replicates draw from per-index sub-streams of the caller's seed; they may
//! run in parallel and are assembled in replicate order, so every report is
//! reproducible bit for bit.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::estimators::{k12_hat, t_stat_with_points, FunctionEstimate};
use crate::geometry::{uniform_points, wrap_translate, DistanceGrid};
use crate::numeric::quantile_sorted;
use crate::pointprocess::{random_thin, MarkedSplit, PointPattern};
use crate::rng::{substream, SimRng};

use rand::Rng;

/// Default thinning probability: the balanced split minimizes both test
/// variances.
pub const DEFAULT_P_THIN: f64 = 0.5;
/// Default number of shift replicates.
pub const DEFAULT_N_SIMS: usize = 999;
/// Default pointwise envelope coverage.
pub const DEFAULT_COVERAGE: f64 = 0.95;

/// Sub-stream layout of a test seed. Thinning, sample points and each shift
/// replicate draw from disjoint streams, so the same seed drives the whole
/// pipeline without collisions.
const STREAM_THIN: u64 = 0;
const STREAM_SAMPLE_POINTS: u64 = 1;
const STREAM_REPLICATE_BASE: u64 = 2;

/// Which test function a report carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StatisticKind {
    K12,
    TStat,
}

impl StatisticKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            StatisticKind::K12 => "k12",
            StatisticKind::TStat => "t_stat",
        }
    }
}

impl std::fmt::Display for StatisticKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Pointwise acceptance band with the observed curve and exceedance flags.
#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeResult {
    grid: DistanceGrid,
    observed: Vec<f64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    n_sims: usize,
    coverage: f64,
    exceedances: Vec<bool>,
}

/// Side on which an observed value escaped the band.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExceedanceSide {
    Below,
    Above,
}

impl EnvelopeResult {
    pub fn grid(&self) -> &DistanceGrid {
        &self.grid
    }

    pub fn observed(&self) -> &[f64] {
        &self.observed
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn n_sims(&self) -> usize {
        self.n_sims
    }

    pub fn coverage(&self) -> f64 {
        self.coverage
    }

    pub fn exceedances(&self) -> &[bool] {
        &self.exceedances
    }

    /// True when the observed curve stays inside the band everywhere.
    pub fn all_inside(&self) -> bool {
        !self.exceedances.iter().any(|&e| e)
    }

    /// Smallest distance with an exceedance, and its side.
    pub fn first_exceedance(&self) -> Option<(f64, ExceedanceSide)> {
        self.exceedances.iter().position(|&e| e).map(|i| {
            let side = if self.observed[i] < self.lower[i] {
                ExceedanceSide::Below
            } else {
                ExceedanceSide::Above
            };
            (self.grid.distances()[i], side)
        })
    }
}

/// Record of a grid cut forced by undefined statistic values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Truncation {
    /// Number of distances requested.
    pub requested: usize,
    /// Number of distances actually used.
    pub used: usize,
}

/// Outcome of one conditional Monte Carlo test.
#[derive(Debug, Clone, PartialEq)]
pub struct TestReport {
    pub statistic: StatisticKind,
    pub envelope: EnvelopeResult,
    /// Rank p-value of the integrated squared deviation, in
    /// `{1, ..., n_sims + 1} / (n_sims + 1)`.
    pub global_p: f64,
    /// Seed that reproduces this report exactly.
    pub seed: u64,
    /// Thinning probability of the tested split.
    pub p_thin: f64,
    /// Present when the statistic could not be evaluated on the full grid.
    pub truncation: Option<Truncation>,
}

/// Translate every event by `shift` and wrap into the window.
pub fn translate_pattern(pattern: &PointPattern, shift: (f64, f64)) -> PointPattern {
    let window = pattern.window();
    let events = pattern
        .events()
        .iter()
        .map(|&p| wrap_translate(p, shift, &window).expect("pattern events are inside the window"))
        .collect();
    PointPattern::new(window, events).expect("wrapped events stay inside the window")
}

/// Shift the whole pattern by one uniform random translation on the torus.
/// All internal toroidal distances are preserved.
pub fn toroidal_shift<R: Rng + ?Sized>(pattern: &PointPattern, rng: &mut R) -> PointPattern {
    let window = pattern.window();
    let shift = (
        rng.random_range(0.0..window.width()),
        rng.random_range(0.0..window.height()),
    );
    translate_pattern(pattern, shift)
}

fn required_sims(coverage: f64) -> usize {
    // Smallest n with (1 - coverage) / 2 >= 1 / (n + 1), i.e. both envelope
    // tails backed by at least one order statistic.
    ((2.0 / (1.0 - coverage) - 1.0) - 1e-9).ceil() as usize
}

/// Conditional Monte Carlo shift test of `statistic` on `split`.
///
/// Pattern 1 stays fixed; pattern 2 is re-placed by `n_sims` independent
/// uniform toroidal shifts and the statistic recomputed each time. The
/// envelope holds pointwise empirical quantiles at `(1 - coverage) / 2` and
/// `1 - (1 - coverage) / 2` of the simulated values. The global p-value
/// ranks the observed integrated squared deviation from the pointwise
/// simulated mean among the replicates (each replicate deviates from the
/// mean of the *other* paths, which makes all `n_sims + 1` deviation
/// measures exchangeable under the null).
pub fn shift_test<F>(
    split: &MarkedSplit,
    kind: StatisticKind,
    statistic: F,
    n_sims: usize,
    coverage: f64,
    seed: u64,
) -> Result<TestReport>
where
    F: Fn(&MarkedSplit) -> Result<FunctionEstimate> + Sync,
{
    let (n1, n2) = split.counts();
    if n1 == 0 || n2 == 0 {
        return Err(Error::DegenerateSplit { n1, n2 });
    }
    if !(0.0 < coverage && coverage < 1.0) {
        return Err(Error::Domain(format!(
            "coverage must be in (0,1), got {coverage}"
        )));
    }
    let required = required_sims(coverage).max(19);
    if n_sims < required {
        return Err(Error::TooFewSims {
            n_sims,
            coverage,
            required,
        });
    }

    let observed = statistic(split)?;
    let sims: Vec<FunctionEstimate> = (0..n_sims)
        .into_par_iter()
        .map(|k| {
            let mut rng: SimRng = substream(seed, STREAM_REPLICATE_BASE + k as u64);
            let shifted = toroidal_shift(split.pattern2(), &mut rng);
            let replicate = split.with_pattern2(shifted)?;
            statistic(&replicate)
        })
        .collect::<Result<Vec<_>>>()?;

    // Statistics may come back on truncated grid prefixes; envelope and
    // deviations live on the common prefix.
    let requested = observed
        .len()
        .max(sims.iter().map(FunctionEstimate::len).max().unwrap_or(0));
    let used = observed
        .len()
        .min(sims.iter().map(FunctionEstimate::len).min().unwrap_or(0));
    debug_assert!(used >= 1, "statistics never return empty estimates");
    let grid = observed.grid().prefix(used);
    let obs_vals = &observed.values()[..used];

    let alpha = 1.0 - coverage;
    let mut lower = Vec::with_capacity(used);
    let mut upper = Vec::with_capacity(used);
    let mut column = vec![0.0; n_sims];
    let mut sim_mean = Vec::with_capacity(used);
    for j in 0..used {
        for (slot, sim) in column.iter_mut().zip(&sims) {
            *slot = sim.values()[j];
        }
        sim_mean.push(column.iter().sum::<f64>() / n_sims as f64);
        column.sort_unstable_by(f64::total_cmp);
        lower.push(quantile_sorted(&column, alpha / 2.0));
        upper.push(quantile_sorted(&column, 1.0 - alpha / 2.0));
    }
    let exceedances: Vec<bool> = (0..used)
        .map(|j| obs_vals[j] < lower[j] || obs_vals[j] > upper[j])
        .collect();

    // Deviation measures: every path (observed and simulated alike) against
    // the pointwise mean of all *other* paths. Treating the n_sims + 1 paths
    // identically keeps their deviations exchangeable under the null, so the
    // rank p-value is exactly uniform on its lattice.
    let n = n_sims as f64;
    let pool_total: Vec<f64> = (0..used).map(|j| n * sim_mean[j] + obs_vals[j]).collect();
    let deviation = |path: &[f64]| -> f64 {
        (0..used)
            .map(|j| {
                let others_mean = (pool_total[j] - path[j]) / n;
                (path[j] - others_mean).powi(2)
            })
            .sum()
    };
    let dev_obs = deviation(obs_vals);
    let at_least_as_extreme = sims
        .iter()
        .filter(|sim| deviation(&sim.values()[..used]) >= dev_obs)
        .count();
    let global_p = (1 + at_least_as_extreme) as f64 / (n_sims + 1) as f64;

    let truncation = (used < requested).then_some(Truncation { requested, used });

    Ok(TestReport {
        statistic: kind,
        envelope: EnvelopeResult {
            grid,
            observed: obs_vals.to_vec(),
            lower,
            upper,
            n_sims,
            coverage,
            exceedances,
        },
        global_p,
        seed,
        p_thin: split.p(),
        truncation,
    })
}

/// Full bivariate-K pipeline: thin `parent` with probability `p`, then run
/// the shift test with the `K̃₁₂` statistic.
pub fn run_k12_test(
    parent: &PointPattern,
    p: f64,
    n_sims: usize,
    grid: &DistanceGrid,
    seed: u64,
) -> Result<TestReport> {
    run_k12_test_with_coverage(parent, p, n_sims, DEFAULT_COVERAGE, grid, seed)
}

/// As [`run_k12_test`] with an explicit envelope coverage.
pub fn run_k12_test_with_coverage(
    parent: &PointPattern,
    p: f64,
    n_sims: usize,
    coverage: f64,
    grid: &DistanceGrid,
    seed: u64,
) -> Result<TestReport> {
    let mut rng = substream(seed, STREAM_THIN);
    let split = random_thin(parent, p, &mut rng)?;
    shift_test(
        &split,
        StatisticKind::K12,
        |s| k12_hat(s, grid),
        n_sims,
        coverage,
        seed,
    )
}

/// Full empty-space pipeline: thin `parent`, draw one shared set of `m`
/// sample points, then run the shift test with the `T(d)` statistic. The
/// pooled `Ĝ` is recomputed for every shift because moving pattern 2 changes
/// the pooled configuration; the sample points stay fixed across replicates,
/// which keeps observed and simulated paths exchangeable under the null.
pub fn run_t_test(
    parent: &PointPattern,
    p: f64,
    m: usize,
    n_sims: usize,
    grid: &DistanceGrid,
    seed: u64,
) -> Result<TestReport> {
    run_t_test_with_coverage(parent, p, m, n_sims, DEFAULT_COVERAGE, grid, seed)
}

/// As [`run_t_test`] with an explicit envelope coverage.
pub fn run_t_test_with_coverage(
    parent: &PointPattern,
    p: f64,
    m: usize,
    n_sims: usize,
    coverage: f64,
    grid: &DistanceGrid,
    seed: u64,
) -> Result<TestReport> {
    if m == 0 {
        return Err(Error::Domain("need at least one sample point".into()));
    }
    let mut rng = substream(seed, STREAM_THIN);
    let split = random_thin(parent, p, &mut rng)?;
    let mut sample_rng = substream(seed, STREAM_SAMPLE_POINTS);
    let samples = uniform_points(m, &parent.window(), &mut sample_rng);
    let mut report = shift_test(
        &split,
        StatisticKind::TStat,
        |s| t_stat_with_points(s, &samples, grid).map(|t| t.into_estimate()),
        n_sims,
        coverage,
        seed,
    )?;
    // The statistic may have been cut on every path equally; compare against
    // the requested grid, not just across paths.
    let used = report.envelope.grid.len();
    if used < grid.len() {
        report.truncation = Some(Truncation {
            requested: grid.len(),
            used,
        });
    }
    Ok(report)
}
