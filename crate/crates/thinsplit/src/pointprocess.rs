//! Pattern generators and independent random thinning.
//!
//! All generators work on the torus: cluster offspring and hard-core
//! proposals wrap across window edges, so the alternatives carry no edge
//! artifacts into the toroidal test statistics. Counts are drawn by exact
//! inversion of the Poisson distribution, never by a normal approximation.

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::geometry::{uniform_points, Point, RectWindow};

/// A finite point pattern observed in a rectangular window.
#[derive(Debug, Clone, PartialEq)]
pub struct PointPattern {
    window: RectWindow,
    events: Vec<Point>,
}

impl PointPattern {
    /// Build a pattern, rejecting events outside the half-open window.
    pub fn new(window: RectWindow, events: Vec<Point>) -> Result<Self> {
        for &p in &events {
            if !window.contains(p) {
                return Err(Error::PointOutsideWindow {
                    x: p.x,
                    y: p.y,
                    width: window.width(),
                    height: window.height(),
                });
            }
        }
        Ok(Self { window, events })
    }

    pub fn window(&self) -> RectWindow {
        self.window
    }

    pub fn events(&self) -> &[Point] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }
}

/// A pattern split into type-1 and type-2 sub-patterns by thinning with
/// retention probability `p`. Both sub-patterns share the parent window and
/// together hold exactly the parent's events.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkedSplit {
    pattern1: PointPattern,
    pattern2: PointPattern,
    p: f64,
}

impl MarkedSplit {
    pub fn new(pattern1: PointPattern, pattern2: PointPattern, p: f64) -> Result<Self> {
        if pattern1.window() != pattern2.window() {
            return Err(Error::Domain(
                "both sub-patterns of a split must share one window".into(),
            ));
        }
        check_probability(p)?;
        Ok(Self {
            pattern1,
            pattern2,
            p,
        })
    }

    pub fn pattern1(&self) -> &PointPattern {
        &self.pattern1
    }

    pub fn pattern2(&self) -> &PointPattern {
        &self.pattern2
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn window(&self) -> RectWindow {
        self.pattern1.window()
    }

    /// Counts `(n1, n2)`.
    pub fn counts(&self) -> (usize, usize) {
        (self.pattern1.len(), self.pattern2.len())
    }

    /// Same type-1 pattern, replacement type-2 pattern. Used by the shift
    /// test, which keeps pattern 1 fixed and moves pattern 2.
    pub fn with_pattern2(&self, pattern2: PointPattern) -> Result<Self> {
        Self::new(self.pattern1.clone(), pattern2, self.p)
    }
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!(
            "probability must be in [0,1], got {p}"
        )));
    }
    Ok(())
}

/// Exact Poisson count by CDF inversion. Means above 500 are split into
/// independent chunks so `exp(-mean)` never underflows.
pub(crate) fn poisson_count<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> usize {
    debug_assert!(mean >= 0.0 && mean.is_finite());
    let mut total = 0usize;
    let mut remaining = mean;
    while remaining > 500.0 {
        total += poisson_count_small(500.0, rng);
        remaining -= 500.0;
    }
    total + poisson_count_small(remaining, rng)
}

fn poisson_count_small<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> usize {
    if mean == 0.0 {
        return 0;
    }
    let u: f64 = rng.random();
    let mut k = 0usize;
    let mut pmf = (-mean).exp();
    let mut cdf = pmf;
    // The loop ends with probability one; the hard cap only guards against
    // u landing in the last ulp of the cdf.
    let cap = (mean + 20.0 * mean.sqrt() + 200.0) as usize;
    while u > cdf && k < cap {
        k += 1;
        pmf *= mean / k as f64;
        cdf += pmf;
    }
    k
}

/// Homogeneous Poisson pattern: Poisson(intensity * area) count, i.i.d.
/// uniform locations given the count.
pub fn sample_homogeneous_poisson<R: Rng + ?Sized>(
    intensity: f64,
    window: RectWindow,
    rng: &mut R,
) -> Result<PointPattern> {
    check_intensity(intensity)?;
    let n = poisson_count(intensity * window.area(), rng);
    let events = uniform_points(n, &window, rng);
    PointPattern::new(window, events)
}

/// Thomas cluster pattern on the torus: Poisson parents, Poisson(mean
/// offspring) children per parent, isotropic Gaussian offsets wrapped into
/// the window. Parents themselves are not retained.
pub fn sample_thomas_cluster<R: Rng + ?Sized>(
    parent_intensity: f64,
    mean_offspring: f64,
    sd: f64,
    window: RectWindow,
    rng: &mut R,
) -> Result<PointPattern> {
    check_intensity(parent_intensity)?;
    if !(mean_offspring.is_finite() && mean_offspring >= 0.0) {
        return Err(Error::Domain(format!(
            "mean offspring must be nonnegative, got {mean_offspring}"
        )));
    }
    if !(sd.is_finite() && sd >= 0.0) {
        return Err(Error::Domain(format!(
            "offspring spread must be nonnegative, got {sd}"
        )));
    }
    let parents = sample_homogeneous_poisson(parent_intensity, window, rng)?;
    let normal = Normal::new(0.0, sd.max(f64::MIN_POSITIVE))
        .expect("finite nonnegative sd is a valid normal scale");
    let mut events = Vec::new();
    for &parent in parents.events() {
        let k = poisson_count(mean_offspring, rng);
        for _ in 0..k {
            let dx = if sd > 0.0 { normal.sample(rng) } else { 0.0 };
            let dy = if sd > 0.0 { normal.sample(rng) } else { 0.0 };
            events.push(window.wrap_point(Point::new(parent.x + dx, parent.y + dy)));
        }
    }
    PointPattern::new(window, events)
}

/// Matérn type-II hard-core pattern: Poisson proposals with i.i.d. uniform
/// age marks; a proposal survives unless some other proposal strictly within
/// `hardcore_radius` (torus metric) carries a smaller mark.
///
/// With radius zero nothing is ever deleted and the draw coincides with
/// [`sample_homogeneous_poisson`] at the same seed.
pub fn sample_matern_hardcore<R: Rng + ?Sized>(
    intensity: f64,
    hardcore_radius: f64,
    window: RectWindow,
    rng: &mut R,
) -> Result<PointPattern> {
    check_intensity(intensity)?;
    if !(hardcore_radius.is_finite() && hardcore_radius >= 0.0) {
        return Err(Error::Domain(format!(
            "hard-core radius must be nonnegative, got {hardcore_radius}"
        )));
    }
    let proposals = sample_homogeneous_poisson(intensity, window, rng)?;
    let marks: Vec<f64> = (0..proposals.len()).map(|_| rng.random()).collect();
    let pts = proposals.events();
    let r_sq = hardcore_radius * hardcore_radius;
    let retained: Vec<Point> = (0..pts.len())
        .filter(|&i| {
            !(0..pts.len()).any(|j| {
                j != i && marks[j] < marks[i] && window.torus_dist_sq(pts[i], pts[j]) < r_sq
            })
        })
        .map(|i| pts[i])
        .collect();
    PointPattern::new(window, retained)
}

fn check_intensity(intensity: f64) -> Result<()> {
    if !(intensity.is_finite() && intensity >= 0.0) {
        return Err(Error::Domain(format!(
            "intensity must be nonnegative, got {intensity}"
        )));
    }
    Ok(())
}

/// Split `parent` by assigning each event independently to pattern 1 with
/// probability `p`, the rest to pattern 2.
pub fn random_thin<R: Rng + ?Sized>(
    parent: &PointPattern,
    p: f64,
    rng: &mut R,
) -> Result<MarkedSplit> {
    check_probability(p)?;
    let mut first = Vec::new();
    let mut second = Vec::new();
    for &event in parent.events() {
        if rng.random_bool(p) {
            first.push(event);
        } else {
            second.push(event);
        }
    }
    let window = parent.window();
    MarkedSplit::new(
        PointPattern::new(window, first)?,
        PointPattern::new(window, second)?,
        p,
    )
}
