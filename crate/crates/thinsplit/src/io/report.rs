//! Flat key-value reports and per-distance tables.
//!
//! Reports are diff-friendly text: `key = value` lines followed by tabular
//! sections. Every value prints with Rust's shortest round-trip float
//! formatting, so identical runs produce byte-identical files.

use std::fmt::Write as _;

use crate::count_oracle::SweepReport;
use crate::estimators::csr_k12;
use crate::montecarlo::{ExceedanceSide, StatisticKind, TestReport};

/// Everything a test report echoes besides the test outcome itself.
#[derive(Debug, Clone)]
pub struct ReportContext {
    pub tool_version: String,
    pub command: String,
    pub input: Option<String>,
    pub window_width: f64,
    pub window_height: f64,
    pub unit: String,
    pub n_events: usize,
    pub n1: usize,
    pub n2: usize,
    pub m: Option<usize>,
    pub grid_d_min: f64,
    pub grid_d_max: f64,
    pub grid_steps: usize,
}

/// CSR reference value of a statistic at distance `d`: `pi d^2` for the
/// bivariate K, zero for `T`.
pub fn csr_reference(kind: StatisticKind, d: f64) -> f64 {
    match kind {
        StatisticKind::K12 => csr_k12(d),
        StatisticKind::TStat => 0.0,
    }
}

/// Render the key-value report for one test.
pub fn test_report_text(report: &TestReport, ctx: &ReportContext) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# thinsplit test report");
    let _ = writeln!(out, "tool_version = {}", ctx.tool_version);
    let _ = writeln!(out, "command = {}", ctx.command);
    let _ = writeln!(out, "input = {}", ctx.input.as_deref().unwrap_or("(none)"));
    let _ = writeln!(out, "window_width = {}", ctx.window_width);
    let _ = writeln!(out, "window_height = {}", ctx.window_height);
    let _ = writeln!(out, "unit = {}", ctx.unit);
    let _ = writeln!(out, "n_events = {}", ctx.n_events);
    let _ = writeln!(out, "seed = {}", report.seed);
    let _ = writeln!(out, "p_thin = {}", report.p_thin);
    let _ = writeln!(out, "n1 = {}", ctx.n1);
    let _ = writeln!(out, "n2 = {}", ctx.n2);
    let _ = writeln!(out, "n_sims = {}", report.envelope.n_sims());
    let _ = writeln!(out, "coverage = {}", report.envelope.coverage());
    if let Some(m) = ctx.m {
        let _ = writeln!(out, "m = {m}");
    }
    let _ = writeln!(out, "grid_d_min = {}", ctx.grid_d_min);
    let _ = writeln!(out, "grid_d_max = {}", ctx.grid_d_max);
    let _ = writeln!(out, "grid_steps = {}", ctx.grid_steps);
    let _ = writeln!(out, "statistic = {}", report.statistic);
    let _ = writeln!(out, "global_p = {}", report.global_p);
    match report.truncation {
        Some(t) => {
            let _ = writeln!(
                out,
                "truncated = used {} of {} grid distances; largest usable d = {}",
                t.used,
                t.requested,
                report.envelope.grid().max()
            );
        }
        None => {
            let _ = writeln!(out, "truncated = none");
        }
    }
    let _ = writeln!(out, "all_inside = {}", report.envelope.all_inside());
    match report.envelope.first_exceedance() {
        Some((d, side)) => {
            let side = match side {
                ExceedanceSide::Below => "below",
                ExceedanceSide::Above => "above",
            };
            let _ = writeln!(out, "first_exceedance_d = {d}");
            let _ = writeln!(out, "first_exceedance_side = {side}");
        }
        None => {
            let _ = writeln!(out, "first_exceedance_d = none");
        }
    }
    let verdict = if report.envelope.all_inside() {
        "consistent with CSR"
    } else {
        "inconsistent with CSR"
    };
    let _ = writeln!(out, "verdict = {verdict}");
    out
}

/// Render the per-distance table (tab-separated).
pub fn test_table_text(report: &TestReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "d\tobserved\tlower\tupper\treference\texceeds");
    let env = &report.envelope;
    for (i, &d) in env.grid().distances().iter().enumerate() {
        let _ = writeln!(
            out,
            "{d}\t{}\t{}\t{}\t{}\t{}",
            env.observed()[i],
            env.lower()[i],
            env.upper()[i],
            csr_reference(report.statistic, d),
            env.exceedances()[i] as u8,
        );
    }
    out
}

/// Render the characterization sweep as a pass/fail table.
pub fn oracle_report_text(sweep: &SweepReport, tool_version: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# thinsplit oracle report");
    let _ = writeln!(out, "tool_version = {tool_version}");
    let _ = writeln!(out, "gap_max_for_poisson = 1e-10");
    let _ = writeln!(out, "gap_min_for_non_poisson = 1e-3");
    let _ = writeln!(out, "all_pass = {}", sweep.all_pass());
    let _ = writeln!(out);
    let _ = writeln!(out, "[independence gaps]");
    let _ = writeln!(
        out,
        "distribution\tp\tn_max\ttail_mass\tgap\texpected\tverdict"
    );
    for row in &sweep.gaps {
        let expected = if row.expect_independent {
            "independent"
        } else {
            "dependent"
        };
        let verdict = if row.pass() { "pass" } else { "FAIL" };
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{expected}\t{verdict}",
            row.label, row.p, row.n_max, row.tail_mass, row.gap
        );
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "[recurrence reconstruction]");
    let _ = writeln!(
        out,
        "input\trecovered_mean\texpected_mean\tmax_abs_diff\tverdict"
    );
    let r = &sweep.recurrence;
    let _ = writeln!(
        out,
        "{}\t{}\t{}\t{}\t{}",
        r.label,
        r.recovered_mean,
        r.expected_mean,
        r.max_abs_diff,
        if r.pass() { "pass" } else { "FAIL" }
    );
    let _ = writeln!(out);
    let _ = writeln!(out, "[excluded]");
    let _ = writeln!(out, "{}", sweep.degenerate_note);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count_oracle::standard_sweep;
    use crate::geometry::{DistanceGrid, RectWindow};
    use crate::montecarlo::run_k12_test;
    use crate::pointprocess::sample_homogeneous_poisson;
    use crate::rng::rng_from_seed;

    #[test]
    fn report_carries_reproduction_keys() {
        let w = RectWindow::new(1.0, 1.0).unwrap();
        let mut rng = rng_from_seed(50);
        let parent = sample_homogeneous_poisson(100.0, w, &mut rng).unwrap();
        let grid = DistanceGrid::linspace(0.05, 0.2, 4, &w).unwrap();
        let report = run_k12_test(&parent, 0.5, 49, &grid, 99).unwrap();
        let ctx = ReportContext {
            tool_version: "0.1.0".into(),
            command: "test-k12".into(),
            input: Some("pattern.txt".into()),
            window_width: 1.0,
            window_height: 1.0,
            unit: "unit".into(),
            n_events: parent.len(),
            n1: 0,
            n2: 0,
            m: None,
            grid_d_min: 0.05,
            grid_d_max: 0.2,
            grid_steps: 4,
        };
        let text = test_report_text(&report, &ctx);
        for key in [
            "seed = 99",
            "p_thin = 0.5",
            "n_sims = 49",
            "coverage = 0.95",
            "grid_d_min = 0.05",
            "tool_version = 0.1.0",
            "statistic = k12",
            "verdict = ",
        ] {
            assert!(text.contains(key), "missing '{key}' in report:\n{text}");
        }
        let table = test_table_text(&report);
        assert_eq!(table.lines().count(), 1 + 4);
        assert!(table.starts_with("d\tobserved"));
    }

    #[test]
    fn oracle_report_all_pass() {
        let sweep = standard_sweep().unwrap();
        let text = oracle_report_text(&sweep, "0.1.0");
        assert!(text.contains("all_pass = true"));
        assert!(!text.contains("FAIL"));
        assert!(text.contains("degenerate"));
        // One gap row per sweep entry plus headers.
        assert_eq!(text.matches("\tpass").count(), 17);
    }
}
