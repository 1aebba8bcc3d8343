//! Property-based invariants for the geometric and probabilistic layers.

use proptest::prelude::*;

use thinsplit::count_oracle::{compose_r, thin_pmf, CountPMF};
use thinsplit::estimators::{g_hat, k12_hat, var_logg_diff};
use thinsplit::geometry::{
    torus_distance, uniform_points, wrap_translate, DistanceGrid, Point, RectWindow,
};
use thinsplit::montecarlo::toroidal_shift;
use thinsplit::pointprocess::{random_thin, MarkedSplit, PointPattern};
use thinsplit::rng::rng_from_seed;

fn window_strategy() -> impl Strategy<Value = RectWindow> {
    ((0.1..10.0f64), (0.1..10.0f64)).prop_map(|(w, h)| RectWindow::new(w, h).unwrap())
}

fn window_and_points(n: std::ops::Range<usize>) -> impl Strategy<Value = (RectWindow, Vec<Point>)> {
    (
        window_strategy(),
        prop::collection::vec((0.0..1.0f64, 0.0..1.0f64), n),
    )
        .prop_map(|(w, unit_pts)| {
            let pts = unit_pts
                .into_iter()
                .map(|(x, y)| Point::new(x * w.width(), y * w.height()))
                .map(|p| w.wrap_point(p))
                .collect();
            (w, pts)
        })
}

proptest! {
    /// Toroidal distance is a metric bounded by half the window diagonal.
    #[test]
    fn torus_distance_is_a_bounded_metric((w, pts) in window_and_points(3..4)) {
        let (a, b, c) = (pts[0], pts[1], pts[2]);
        let dab = torus_distance(a, b, &w).unwrap();
        let dba = torus_distance(b, a, &w).unwrap();
        let dac = torus_distance(a, c, &w).unwrap();
        let dcb = torus_distance(c, b, &w).unwrap();
        prop_assert!(dab >= 0.0);
        prop_assert_eq!(dab, dba);
        prop_assert!(dab <= dac + dcb + 1e-12, "triangle: {} > {} + {}", dab, dac, dcb);
        let bound = 0.5 * (w.width().powi(2) + w.height().powi(2)).sqrt();
        prop_assert!(dab <= bound + 1e-12);
        // Never longer than the straight-line distance.
        let euclid = ((a.x - b.x).powi(2) + (a.y - b.y).powi(2)).sqrt();
        prop_assert!(dab <= euclid + 1e-12);
    }

    /// A common translation is an isometry of the torus.
    #[test]
    fn wrap_translate_preserves_distances(
        (w, pts) in window_and_points(2..3),
        sx in -20.0..20.0f64,
        sy in -20.0..20.0f64,
    ) {
        let (a, b) = (pts[0], pts[1]);
        let before = torus_distance(a, b, &w).unwrap();
        let ta = wrap_translate(a, (sx, sy), &w).unwrap();
        let tb = wrap_translate(b, (sx, sy), &w).unwrap();
        prop_assert!(w.contains(ta) && w.contains(tb));
        let after = torus_distance(ta, tb, &w).unwrap();
        prop_assert!((before - after).abs() <= 1e-12, "{} vs {}", before, after);
    }

    /// Thinning partitions the parent: disjoint sub-patterns whose
    /// interleaved union restores the parent's event sequence.
    #[test]
    fn thinning_partitions_parent(
        (w, pts) in window_and_points(0..60),
        p in 0.0..=1.0f64,
        seed in 0u64..1000,
    ) {
        let parent = PointPattern::new(w, pts).unwrap();
        let split = random_thin(&parent, p, &mut rng_from_seed(seed)).unwrap();
        let (n1, n2) = split.counts();
        prop_assert_eq!(n1 + n2, parent.len());
        // Each parent event lands in exactly one side, in order.
        let mut it1 = split.pattern1().events().iter().peekable();
        let mut it2 = split.pattern2().events().iter().peekable();
        for e in parent.events() {
            if it1.peek() == Some(&e) {
                it1.next();
            } else {
                prop_assert_eq!(it2.peek(), Some(&e));
                it2.next();
            }
        }
        prop_assert!(it1.peek().is_none() && it2.peek().is_none());
    }

    /// K12 estimates are nonnegative, non-decreasing in d, and capped by
    /// |A| (every pair counted).
    #[test]
    fn k12_monotone_and_bounded(seed in 0u64..500) {
        let w = RectWindow::new(1.0, 1.0).unwrap();
        let mut rng = rng_from_seed(seed);
        let p1 = PointPattern::new(w, uniform_points(12, &w, &mut rng)).unwrap();
        let p2 = PointPattern::new(w, uniform_points(9, &w, &mut rng)).unwrap();
        let split = MarkedSplit::new(p1, p2, 0.5).unwrap();
        let grid = DistanceGrid::linspace(0.02, 0.5, 20, &w).unwrap();
        let est = k12_hat(&split, &grid).unwrap();
        prop_assert!(est.values()[0] >= 0.0);
        for pair in est.values().windows(2) {
            prop_assert!(pair[1] >= pair[0]);
        }
        prop_assert!(est.values().iter().all(|&v| v <= w.area() + 1e-12));
    }

    /// Empty-space estimates are probabilities, non-increasing in d.
    #[test]
    fn g_hat_monotone_probability(seed in 0u64..500, n in 0usize..40) {
        let w = RectWindow::new(1.0, 1.0).unwrap();
        let mut rng = rng_from_seed(seed);
        let pattern = PointPattern::new(w, uniform_points(n, &w, &mut rng)).unwrap();
        let grid = DistanceGrid::linspace(0.01, 0.45, 15, &w).unwrap();
        let est = g_hat(&pattern, 200, &grid, &mut rng).unwrap();
        prop_assert!(est.values().iter().all(|&v| (0.0..=1.0).contains(&v)));
        for pair in est.values().windows(2) {
            prop_assert!(pair[1] <= pair[0]);
        }
    }

    /// A toroidal shift never changes the internal distance multiset.
    #[test]
    fn toroidal_shift_is_an_isometry((w, pts) in window_and_points(2..25), seed in 0u64..500) {
        let pattern = PointPattern::new(w, pts).unwrap();
        let shifted = toroidal_shift(&pattern, &mut rng_from_seed(seed));
        prop_assert_eq!(shifted.len(), pattern.len());
        let dists = |pat: &PointPattern| {
            let mut ds = Vec::new();
            for i in 0..pat.len() {
                for j in (i + 1)..pat.len() {
                    ds.push(torus_distance(pat.events()[i], pat.events()[j], &w).unwrap());
                }
            }
            ds.sort_unstable_by(f64::total_cmp);
            ds
        };
        for (a, b) in dists(&pattern).iter().zip(dists(&shifted).iter()) {
            prop_assert!((a - b).abs() <= 1e-12);
        }
    }

    /// The log-G-difference variance formula is symmetric in p <-> 1-p;
    /// exactly so when the complement is exactly representable.
    #[test]
    fn var_logg_diff_symmetric(k in 0u32..=1024) {
        let p = k as f64 / 1024.0;
        let a = var_logg_diff(50, 80.0, 0.04, p).unwrap();
        let b = var_logg_diff(50, 80.0, 0.04, 1.0 - p).unwrap();
        prop_assert_eq!(a, b);
    }

    /// Thinning joints have marginals consistent with the defining sums and
    /// total mass matching the input.
    #[test]
    fn thin_pmf_marginals_consistent(
        raw in prop::collection::vec(0.001..1.0f64, 1..12),
        p in 0.0..=1.0f64,
    ) {
        let total: f64 = raw.iter().sum();
        let masses: Vec<f64> = raw.iter().map(|v| v / total).collect();
        let r = CountPMF::from_masses(masses, 0.0).unwrap();
        let joint = thin_pmf(&r, p).unwrap();
        let px = joint.x_marginal();
        let qy = joint.y_marginal();
        // Wald identity on the truncated support.
        prop_assert!((px.mean() - p * r.mean()).abs() < 1e-10);
        prop_assert!((qy.mean() - (1.0 - p) * r.mean()).abs() < 1e-10);
        // Masses on each diagonal i + j = n sum back to r_n.
        for n in 0..=r.n_max() {
            let diag: f64 = (0..=n).map(|i| joint.mass(i, n - i)).sum();
            prop_assert!((diag - r.mass(n)).abs() < 1e-12);
        }
    }

    /// Convolution is exactly commutative and preserves total mass.
    #[test]
    fn compose_r_commutes(
        raw_a in prop::collection::vec(0.001..1.0f64, 1..10),
        raw_b in prop::collection::vec(0.001..1.0f64, 1..10),
    ) {
        let norm = |raw: Vec<f64>| {
            let total: f64 = raw.iter().sum();
            CountPMF::from_masses(raw.iter().map(|v| v / total).collect(), 0.0).unwrap()
        };
        let a = norm(raw_a);
        let b = norm(raw_b);
        let ab = compose_r(&a, &b);
        let ba = compose_r(&b, &a);
        prop_assert_eq!(ab.masses(), ba.masses());
        let total: f64 = ab.masses().iter().sum();
        prop_assert!((total + ab.tail_mass() - 1.0).abs() < 1e-12);
    }
}
