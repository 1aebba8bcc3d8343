//! Small numeric helpers: compensated summation, binomial weights and
//! empirical quantiles.

use statrs::function::factorial::ln_binomial;

/// Neumaier-compensated accumulator. Exact pmf bookkeeping sums thousands of
/// terms against 1e-12 tolerances; plain `f64` addition is not good enough.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Compensated sum of a sequence.
pub fn kahan_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut acc = KahanSum::new();
    for v in values {
        acc.add(v);
    }
    acc.value()
}

/// Largest `n` for which `C(n, k)` is computed in exact integer arithmetic.
/// Above this the intermediate products of the multiplicative formula can
/// overflow `u128`.
const EXACT_BINOMIAL_MAX_N: u64 = 120;

/// Binomial coefficient `C(n, k)` as `f64`, exact (up to one final rounding)
/// for `n <= 120` and via log-gamma above.
pub fn binomial_coefficient(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    if n <= EXACT_BINOMIAL_MAX_N {
        let mut c: u128 = 1;
        for i in 1..=k {
            c = c * u128::from(n - k + i) / u128::from(i);
        }
        c as f64
    } else {
        ln_binomial(n, k).exp()
    }
}

/// Binomial pmf weight `C(n, k) p^k (1-p)^(n-k)`.
///
/// `p = 0` and `p = 1` are handled exactly (point masses at `k = 0` and
/// `k = n`); otherwise the weight is evaluated in log space when the direct
/// powers would underflow.
pub fn binomial_weight(n: u64, k: u64, p: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&p));
    if k > n {
        return 0.0;
    }
    if p == 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    if p == 1.0 {
        return if k == n { 1.0 } else { 0.0 };
    }
    if n <= EXACT_BINOMIAL_MAX_N {
        binomial_coefficient(n, k) * p.powi(k as i32) * (1.0 - p).powi((n - k) as i32)
    } else {
        let ln_w = ln_binomial(n, k) + k as f64 * p.ln() + (n - k) as f64 * (1.0 - p).ln();
        ln_w.exp()
    }
}

/// Type-7 empirical quantile (linear interpolation between order statistics)
/// of an ascending-sorted slice.
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    assert!(!sorted.is_empty(), "quantile of empty slice");
    assert!((0.0..=1.0).contains(&q), "quantile level must be in [0,1]");
    let h = q * (sorted.len() - 1) as f64;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    if lo == hi {
        sorted[lo]
    } else {
        let frac = h - lo as f64;
        sorted[lo] + frac * (sorted[hi] - sorted[lo])
    }
}

/// Evenly spaced values from `start` to `end` inclusive.
pub fn linspace(start: f64, end: f64, steps: usize) -> Vec<f64> {
    assert!(steps >= 1);
    if steps == 1 {
        return vec![end];
    }
    let h = (end - start) / (steps - 1) as f64;
    (0..steps)
        .map(|i| {
            if i + 1 == steps {
                end
            } else {
                start + h * i as f64
            }
        })
        .collect()
}
