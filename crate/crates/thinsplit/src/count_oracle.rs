//! Exact numerics for the count-level splitting characterization.
//!
//! Thinning a count `Z` with a `p`-coin produces the pair
//! `(X, Y)` with joint mass `P(X=i, Y=j) = r_{i+j} C(i+j, i) p^i (1-p)^j`.
//! The pair is independent exactly when `Z` is Poisson, and in that case the
//! marginal recurrence `q_{y+1} = q_y / (y+1) * ((1-p)/p)(p_1/p_0)` pins the
//! Poisson law down. This module makes all of that checkable numerically on
//! truncated supports: every pmf carries an explicit tail mass as its
//! truncation error budget, and all mass bookkeeping uses compensated
//! summation so 1e-12 tolerances stay honest.

use crate::error::{Error, Result};
use crate::numeric::{binomial_weight, kahan_sum, KahanSum};

/// Mass-balance slack allowed when validating a pmf.
const MASS_TOLERANCE: f64 = 1e-12;

/// A probability mass function on `{0, ..., n_max}` plus the mass beyond.
#[derive(Debug, Clone, PartialEq)]
pub struct CountPMF {
    masses: Vec<f64>,
    tail_mass: f64,
}

impl CountPMF {
    /// Validate and wrap explicit masses. The masses and tail must be
    /// nonnegative and sum to one within 1e-12.
    pub fn from_masses(masses: Vec<f64>, tail_mass: f64) -> Result<Self> {
        if masses.is_empty() {
            return Err(Error::Domain("pmf needs at least the mass at zero".into()));
        }
        if masses.iter().any(|&m| !m.is_finite() || m < 0.0) || !(0.0..=1.0).contains(&tail_mass) {
            return Err(Error::Domain("pmf masses must be nonnegative".into()));
        }
        let total = kahan_sum(masses.iter().copied()) + tail_mass;
        if (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::Domain(format!(
                "pmf masses plus tail sum to {total}, not 1"
            )));
        }
        Ok(Self { masses, tail_mass })
    }

    /// Poisson(`mean`) truncated so the tail mass is below `tail_tol`.
    pub fn poisson(mean: f64, tail_tol: f64) -> Result<Self> {
        if !(mean.is_finite() && mean >= 0.0) {
            return Err(Error::Domain(format!(
                "poisson mean must be nonnegative, got {mean}"
            )));
        }
        if !(tail_tol > 0.0 && tail_tol < 1.0) {
            return Err(Error::Domain(format!(
                "tail tolerance must be in (0,1), got {tail_tol}"
            )));
        }
        if mean > 100_000.0 {
            return Err(Error::Domain(format!(
                "poisson mean {mean} needs an unreasonably large truncated support"
            )));
        }
        // Fill masses from zero upward. exp(-mean) underflows near 700, so
        // large means seed the recurrence at the mode in log space and walk
        // down from there; the far-below-mode masses underflow to an honest
        // zero.
        let mut masses = if mean < 600.0 {
            vec![(-mean).exp()]
        } else {
            let mode = mean.floor();
            let ln_mode_mass =
                mode * mean.ln() - mean - statrs::function::gamma::ln_gamma(mode + 1.0);
            let mut down = vec![ln_mode_mass.exp()];
            let mut k = mode;
            while k >= 1.0 {
                let next = down.last().unwrap() * k / mean;
                down.push(next);
                k -= 1.0;
            }
            down.reverse();
            down
        };
        let mut total = KahanSum::new();
        for &m in &masses {
            total.add(m);
        }
        let mut k = masses.len() - 1;
        let mut mass = *masses.last().unwrap();
        while (k as f64) <= mean || 1.0 - total.value() >= tail_tol {
            k += 1;
            mass *= mean / k as f64;
            masses.push(mass);
            total.add(mass);
        }
        let tail_mass = (1.0 - total.value()).max(0.0);
        Ok(Self { masses, tail_mass })
    }

    /// Point mass at `k`.
    pub fn point_mass(k: usize) -> Self {
        let mut masses = vec![0.0; k + 1];
        masses[k] = 1.0;
        Self {
            masses,
            tail_mass: 0.0,
        }
    }

    /// Binomial(`n`, `p`); exact, no tail.
    pub fn binomial(n: usize, p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Domain(format!(
                "probability must be in [0,1], got {p}"
            )));
        }
        let masses = (0..=n)
            .map(|k| binomial_weight(n as u64, k as u64, p))
            .collect();
        Self::from_masses(masses, 0.0)
    }

    /// Geometric on `{0, 1, ...}` with success probability `p`, truncated to
    /// tail mass below `tail_tol`.
    pub fn geometric(p: f64, tail_tol: f64) -> Result<Self> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::Domain(format!(
                "success probability must be in (0,1], got {p}"
            )));
        }
        if !(tail_tol > 0.0 && tail_tol < 1.0) {
            return Err(Error::Domain(format!(
                "tail tolerance must be in (0,1), got {tail_tol}"
            )));
        }
        let q = 1.0 - p;
        let mut masses = vec![p];
        let mut tail = q;
        while tail >= tail_tol {
            masses.push(masses.last().unwrap() * q);
            tail *= q;
        }
        Ok(Self {
            masses,
            tail_mass: tail,
        })
    }

    /// Mixture `w * a + (1 - w) * b`.
    pub fn mixture(w: f64, a: &CountPMF, b: &CountPMF) -> Result<Self> {
        if !(0.0..=1.0).contains(&w) {
            return Err(Error::Domain(format!(
                "mixture weight must be in [0,1], got {w}"
            )));
        }
        let n = a.masses.len().max(b.masses.len());
        let masses = (0..n)
            .map(|k| w * a.mass(k) + (1.0 - w) * b.mass(k))
            .collect();
        Self::from_masses(masses, w * a.tail_mass + (1.0 - w) * b.tail_mass)
    }

    /// Largest count carried explicitly.
    pub fn n_max(&self) -> usize {
        self.masses.len() - 1
    }

    /// `P(Z = k)`, zero beyond the truncated support.
    pub fn mass(&self, k: usize) -> f64 {
        self.masses.get(k).copied().unwrap_or(0.0)
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    /// Truncation error budget: the probability mass beyond `n_max`.
    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    /// Mean of the truncated support.
    pub fn mean(&self) -> f64 {
        kahan_sum(self.masses.iter().enumerate().map(|(k, &m)| k as f64 * m))
    }
}

/// Joint law of a thinned count pair on the truncated square
/// `{0..n_max} x {0..n_max}`, nonzero only where `i + j <= n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointPMF {
    n_max: usize,
    masses: Vec<f64>, // row-major, (n_max + 1)^2
    tail_mass: f64,
}

impl JointPMF {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn mass(&self, i: usize, j: usize) -> f64 {
        if i > self.n_max || j > self.n_max {
            0.0
        } else {
            self.masses[i * (self.n_max + 1) + j]
        }
    }

    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    /// Row sums: the law of the retained count `X`.
    pub fn x_marginal(&self) -> CountPMF {
        let n = self.n_max + 1;
        let masses = (0..n)
            .map(|i| kahan_sum(self.masses[i * n..(i + 1) * n].iter().copied()))
            .collect();
        CountPMF {
            masses,
            tail_mass: self.tail_mass,
        }
    }

    /// Column sums: the law of the deleted count `Y`.
    pub fn y_marginal(&self) -> CountPMF {
        let n = self.n_max + 1;
        let masses = (0..n)
            .map(|j| kahan_sum((0..n).map(|i| self.masses[i * n + j])))
            .collect();
        CountPMF {
            masses,
            tail_mass: self.tail_mass,
        }
    }
}

/// Joint law of the `p`-thinning split of `r`:
/// `P(X=i, Y=j) = r_{i+j} C(i+j, i) p^i (1-p)^j`.
pub fn thin_pmf(r: &CountPMF, p: f64) -> Result<JointPMF> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!(
            "probability must be in [0,1], got {p}"
        )));
    }
    let n_max = r.n_max();
    let n = n_max + 1;
    let mut masses = vec![0.0; n * n];
    for total in 0..=n_max {
        let r_total = r.mass(total);
        if r_total == 0.0 {
            continue;
        }
        for i in 0..=total {
            let j = total - i;
            masses[i * n + j] = r_total * binomial_weight(total as u64, i as u64, p);
        }
    }
    Ok(JointPMF {
        n_max,
        masses,
        tail_mass: r.tail_mass(),
    })
}

/// Largest absolute deviation between the joint mass and the product of its
/// marginals over the whole truncated square. At most the truncation
/// tolerance for a Poisson input; strictly positive for anything else.
pub fn independence_gap(joint: &JointPMF) -> f64 {
    let px = joint.x_marginal();
    let qy = joint.y_marginal();
    let n = joint.n_max() + 1;
    let mut gap: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            gap = gap.max((joint.mass(i, j) - px.mass(i) * qy.mass(j)).abs());
        }
    }
    gap
}

/// Whether every truncated mass of `r` is strictly positive. For a count
/// whose thinning splits independently, positivity propagates by the
/// induction `r_{n+1} >= p_n q_1 > 0`.
pub fn positivity_check(r: &CountPMF) -> bool {
    r.masses().iter().all(|&m| m > 0.0)
}

/// Rebuild the deleted-count law from the head of the retained-count law.
///
/// Under independence the joint factorizes and forces
/// `q_{y+1} = q_y / (y+1) * mu` with `mu = ((1-p)/p)(p_1/p_0)`, whose
/// normalized solution is Poisson(`mu`) on the truncated support.
pub fn recurrence_q(p0: f64, p1: f64, p: f64, n_max: usize) -> Result<CountPMF> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!(
            "thinning probability must be strictly inside (0,1), got {p}"
        )));
    }
    if !(p0 > 0.0 && p0.is_finite() && p1 > 0.0 && p1.is_finite()) {
        return Err(Error::Domain(format!(
            "head masses must be positive, got p0 = {p0}, p1 = {p1}"
        )));
    }
    let mu = (1.0 - p) / p * (p1 / p0);
    let mut unnormalized = Vec::with_capacity(n_max + 1);
    let mut u = 1.0_f64;
    for y in 0..=n_max {
        unnormalized.push(u);
        u *= mu / (y + 1) as f64;
    }
    let total = kahan_sum(unnormalized.iter().copied());
    let masses = unnormalized.into_iter().map(|v| v / total).collect();
    Ok(CountPMF {
        masses,
        tail_mass: 0.0,
    })
}

/// Convolution `r_n = sum_{i+j=n} p_i q_j` of two independent counts.
///
/// Terms are accumulated in ascending order of magnitude, which makes the
/// result exactly symmetric in its arguments.
pub fn compose_r(pmarg: &CountPMF, qmarg: &CountPMF) -> CountPMF {
    let n_max = pmarg.n_max() + qmarg.n_max();
    let mut masses = Vec::with_capacity(n_max + 1);
    let mut terms = Vec::new();
    let mut total = KahanSum::new();
    for n in 0..=n_max {
        terms.clear();
        let i_lo = n.saturating_sub(qmarg.n_max());
        let i_hi = n.min(pmarg.n_max());
        for i in i_lo..=i_hi {
            terms.push(pmarg.mass(i) * qmarg.mass(n - i));
        }
        terms.sort_unstable_by(f64::total_cmp);
        let mass = kahan_sum(terms.iter().copied());
        total.add(mass);
        masses.push(mass);
    }
    let tail_mass = (1.0 - total.value()).clamp(0.0, 1.0);
    CountPMF { masses, tail_mass }
}

/// One row of the standard characterization sweep.
#[derive(Debug, Clone)]
pub struct GapRow {
    pub label: String,
    pub p: f64,
    pub n_max: usize,
    pub tail_mass: f64,
    pub gap: f64,
    /// True when the input is Poisson, so the gap must vanish.
    pub expect_independent: bool,
}

impl GapRow {
    /// Pass thresholds: gaps at most 1e-10 for Poisson inputs, above 1e-3
    /// for every non-Poisson input.
    pub fn pass(&self) -> bool {
        if self.expect_independent {
            self.gap <= 1e-10
        } else {
            self.gap > 1e-3
        }
    }
}

/// Outcome of the recurrence reconstruction check.
#[derive(Debug, Clone)]
pub struct RecurrenceRow {
    pub label: String,
    pub recovered_mean: f64,
    pub expected_mean: f64,
    pub max_abs_diff: f64,
}

impl RecurrenceRow {
    pub fn pass(&self) -> bool {
        self.max_abs_diff <= 1e-12 && (self.recovered_mean - self.expected_mean).abs() <= 1e-10
    }
}

/// Results of the full characterization sweep run by the `oracle-check`
/// command.
#[derive(Debug, Clone)]
pub struct SweepReport {
    pub gaps: Vec<GapRow>,
    pub recurrence: RecurrenceRow,
    /// The `Z = 0` edge case is excluded from the characterization.
    pub degenerate_note: String,
}

impl SweepReport {
    pub fn all_pass(&self) -> bool {
        self.gaps.iter().all(GapRow::pass) && self.recurrence.pass()
    }
}

/// Run the standard sweep: Poisson inputs across intensities and thinning
/// probabilities (gaps must vanish), four non-Poisson inputs (gaps must be
/// large), and the Poisson(2) recurrence reconstruction.
pub fn standard_sweep() -> Result<SweepReport> {
    const TAIL_TOL: f64 = 1e-12;
    let mut gaps = Vec::new();

    for &lambda in &[0.5, 1.0, 2.0, 5.0] {
        let r = CountPMF::poisson(lambda, TAIL_TOL)?;
        for &p in &[0.1, 0.5, 0.9] {
            let joint = thin_pmf(&r, p)?;
            gaps.push(GapRow {
                label: format!("poisson({lambda})"),
                p,
                n_max: r.n_max(),
                tail_mass: r.tail_mass(),
                gap: independence_gap(&joint),
                expect_independent: true,
            });
        }
    }

    let poisson1 = CountPMF::poisson(1.0, TAIL_TOL)?;
    let poisson4 = CountPMF::poisson(4.0, TAIL_TOL)?;
    let non_poisson: Vec<(String, CountPMF)> = vec![
        ("point_mass(2)".into(), CountPMF::point_mass(2)),
        ("binomial(10, 0.3)".into(), CountPMF::binomial(10, 0.3)?),
        ("geometric(0.5)".into(), CountPMF::geometric(0.5, TAIL_TOL)?),
        (
            "0.5 poisson(1) + 0.5 poisson(4)".into(),
            CountPMF::mixture(0.5, &poisson1, &poisson4)?,
        ),
    ];
    for (label, r) in non_poisson {
        let joint = thin_pmf(&r, 0.5)?;
        gaps.push(GapRow {
            label,
            p: 0.5,
            n_max: r.n_max(),
            tail_mass: r.tail_mass(),
            gap: independence_gap(&joint),
            expect_independent: false,
        });
    }

    // Recurrence reconstruction: thinned Poisson(2) at p = 0.5 must rebuild
    // the Poisson(1) deleted-count law from (p0, p1) alone.
    let r2 = CountPMF::poisson(2.0, TAIL_TOL)?;
    let joint = thin_pmf(&r2, 0.5)?;
    let px = joint.x_marginal();
    let direct_q = joint.y_marginal();
    let rebuilt = recurrence_q(px.mass(0), px.mass(1), 0.5, r2.n_max())?;
    let max_abs_diff = (0..=30.min(r2.n_max()))
        .map(|k| (rebuilt.mass(k) - direct_q.mass(k)).abs())
        .fold(0.0, f64::max);
    let recurrence = RecurrenceRow {
        label: "thinned poisson(2), p = 0.5".into(),
        recovered_mean: rebuilt.mean(),
        expected_mean: 1.0,
        max_abs_diff,
    };

    Ok(SweepReport {
        gaps,
        recurrence,
        degenerate_note:
            "point_mass(0): degenerate, Z identically zero is excluded from the characterization"
                .into(),
    })
}
