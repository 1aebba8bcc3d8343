//! Tests of complete spatial randomness (CSR) for planar point patterns,
//! built on a splitting characterization of the homogeneous Poisson process:
//! labelling the events of a pattern independently with probability `p` and
//! separating the two labels produces two *independent* sub-patterns exactly
//! when the parent process is Poisson.
//!
//! The crate provides the pieces of that pipeline as separate modules:
//!
//! * [`geometry`] — rectangular windows with toroidal metric, distance grids,
//!   uniform sampling.
//! * [`pointprocess`] — pattern generators (homogeneous Poisson, Thomas
//!   cluster, Matérn hard-core) and independent random thinning.
//! * [`estimators`] — the bivariate `K̃₁₂` estimator, empty-space `Ĝ`
//!   estimates, the `T(d)` statistic and closed-form variance formulas.
//! * [`montecarlo`] — conditional Monte Carlo by random toroidal shifts:
//!   envelopes, exceedance flags and rank p-values.
//! * [`count_oracle`] — exact truncated probability mass functions realizing
//!   the count-level characterization: thinning joints, independence gaps,
//!   the Poisson recurrence and convolution.
//! * [`io`] / [`commands`] — pattern files, reports, envelope plots and the
//!   command bodies behind the `thinsplit` binary.
//!
//! All randomness flows through explicit seedable generators (see [`rng`]);
//! every top-level entry point is deterministic given its seed.
//!
//! ```
//! use thinsplit::geometry::{DistanceGrid, RectWindow};
//! use thinsplit::montecarlo::run_k12_test;
//! use thinsplit::pointprocess::sample_homogeneous_poisson;
//! use thinsplit::rng::rng_from_seed;
//!
//! let window = RectWindow::new(1.0, 1.0).unwrap();
//! let mut rng = rng_from_seed(7);
//! let pattern = sample_homogeneous_poisson(100.0, window, &mut rng).unwrap();
//! let grid = DistanceGrid::linspace(0.025, 0.125, 5, &window).unwrap();
//! let report = run_k12_test(&pattern, 0.5, 99, &grid, 7).unwrap();
//! assert!(report.global_p >= 1.0 / 100.0);
//! ```

pub mod commands;
pub mod count_oracle;
pub mod error;
pub mod estimators;
pub mod geometry;
pub mod io;
pub mod montecarlo;
pub mod numeric;
pub mod pointprocess;
pub mod rng;

pub use error::{Error, Result};

/// Version string stamped into every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
