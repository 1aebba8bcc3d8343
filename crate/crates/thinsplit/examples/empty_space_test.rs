//! Empty-space `T(d)` shift test on a Poisson pattern and a hard-core one.
//!
//! `T(d) = log Ĝ(d) - log Ĝ₁(d) - log Ĝ₂(d)` compares the pooled avoidance
//! probability with the product of the split halves'; independence makes
//! the product factorize, so `T` hovers around zero only under complete
//! spatial randomness.
//!
//! ```text
//! cargo run --example empty_space_test
//! ```

use thinsplit::geometry::{DistanceGrid, RectWindow};
use thinsplit::montecarlo::run_t_test;
use thinsplit::pointprocess::{sample_homogeneous_poisson, sample_matern_hardcore, PointPattern};
use thinsplit::rng::rng_from_seed;

fn show(name: &str, pattern: &PointPattern, grid: &DistanceGrid) -> thinsplit::Result<()> {
    let report = run_t_test(pattern, 0.5, 1000, 999, grid, 17)?;
    println!("\n{name}: n = {}, m = 1000 sample points", pattern.len());
    println!(
        "{:>8} {:>10} {:>10} {:>10}",
        "d", "observed", "lower", "upper"
    );
    let env = &report.envelope;
    for (i, &d) in env.grid().distances().iter().enumerate() {
        let flag = if env.exceedances()[i] {
            "  <-- outside"
        } else {
            ""
        };
        println!(
            "{d:>8.3} {:>10.5} {:>10.5} {:>10.5}{flag}",
            env.observed()[i],
            env.lower()[i],
            env.upper()[i],
        );
    }
    if let Some(t) = report.truncation {
        println!(
            "(grid truncated: {} of {} distances usable)",
            t.used, t.requested
        );
    }
    println!(
        "global p = {:.3}; verdict: {}",
        report.global_p,
        if env.all_inside() {
            "consistent with CSR"
        } else {
            "inconsistent with CSR"
        }
    );
    Ok(())
}

fn main() -> thinsplit::Result<()> {
    let window = RectWindow::new(1.0, 1.0)?;
    let grid = DistanceGrid::linspace(0.02, 0.1, 5, &window)?;

    let poisson = sample_homogeneous_poisson(100.0, window, &mut rng_from_seed(4))?;
    show("homogeneous Poisson", &poisson, &grid)?;

    let hardcore = sample_matern_hardcore(200.0, 0.05, window, &mut rng_from_seed(5))?;
    show("Matérn hard-core", &hardcore, &grid)?;
    Ok(())
}
