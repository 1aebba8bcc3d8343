//! Command bodies behind the `thinsplit` binary: configuration, file
//! orchestration and verdict assembly. The binary itself only parses
//! arguments and maps errors to exit codes.

use std::fs;
use std::path::{Path, PathBuf};

use crate::count_oracle::standard_sweep;
use crate::error::{Error, Result};
use crate::estimators::default_m;
use crate::geometry::{DistanceGrid, RectWindow};
use crate::io::report::{oracle_report_text, test_report_text, ReportContext};
use crate::io::svg::envelope_svg;
use crate::io::{load_pattern, save_pattern, LoadedPattern};
use crate::montecarlo::{
    run_k12_test_with_coverage, run_t_test_with_coverage, StatisticKind, TestReport,
    DEFAULT_COVERAGE, DEFAULT_N_SIMS, DEFAULT_P_THIN,
};
use crate::pointprocess::{
    random_thin, sample_homogeneous_poisson, sample_matern_hardcore, sample_thomas_cluster,
};
use crate::rng::{rng_from_seed, substream};
use crate::VERSION;

/// Which pipeline a [`RunConfig`] drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Simulate,
    TestK12,
    TestEmpty,
    TestBoth,
    OracleCheck,
}

impl CommandKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CommandKind::Simulate => "simulate",
            CommandKind::TestK12 => "test-k12",
            CommandKind::TestEmpty => "test-empty",
            CommandKind::TestBoth => "test-both",
            CommandKind::OracleCheck => "oracle-check",
        }
    }
}

/// Synthetic pattern model for `simulate`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelSpec {
    Poisson {
        intensity: f64,
    },
    Thomas {
        parent_intensity: f64,
        mean_offspring: f64,
        sd: f64,
    },
    Hardcore {
        intensity: f64,
        radius: f64,
    },
}

impl ModelSpec {
    pub fn label(&self) -> &'static str {
        match self {
            ModelSpec::Poisson { .. } => "poisson",
            ModelSpec::Thomas { .. } => "thomas",
            ModelSpec::Hardcore { .. } => "hardcore",
        }
    }

    fn describe(&self) -> String {
        match self {
            ModelSpec::Poisson { intensity } => format!("model = poisson, intensity = {intensity}"),
            ModelSpec::Thomas {
                parent_intensity,
                mean_offspring,
                sd,
            } => format!(
                "model = thomas, parent_intensity = {parent_intensity}, mean_offspring = {mean_offspring}, sd = {sd}"
            ),
            ModelSpec::Hardcore { intensity, radius } => {
                format!("model = hardcore, intensity = {intensity}, hardcore_radius = {radius}")
            }
        }
    }
}

/// Distance grid request; unset bounds fall back to window-derived defaults
/// (`d_max` a quarter of the shorter side, `d_min` one step of that).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub d_min: Option<f64>,
    pub d_max: Option<f64>,
    pub steps: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            d_min: None,
            d_max: None,
            steps: 25,
        }
    }
}

impl GridSpec {
    fn resolve(&self, window: &RectWindow) -> Result<DistanceGrid> {
        let d_max = self.d_max.unwrap_or(window.half_min_side() / 2.0);
        let d_min = self.d_min.unwrap_or(d_max / self.steps as f64);
        DistanceGrid::linspace(d_min, d_max, self.steps, window)
    }
}

/// Full configuration of one command invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandKind,
    pub input: Option<PathBuf>,
    pub model: Option<ModelSpec>,
    /// Window for simulation (ignored when a pattern is loaded).
    pub window: (f64, f64),
    pub unit: String,
    pub p_thin: f64,
    pub n_sims: usize,
    pub coverage: f64,
    pub grid: GridSpec,
    pub m: Option<usize>,
    pub seed: u64,
    pub out_dir: PathBuf,
}

impl RunConfig {
    pub fn new(command: CommandKind) -> Self {
        Self {
            command,
            input: None,
            model: None,
            window: (1.0, 1.0),
            unit: "unit".into(),
            p_thin: DEFAULT_P_THIN,
            n_sims: DEFAULT_N_SIMS,
            coverage: DEFAULT_COVERAGE,
            grid: GridSpec::default(),
            m: None,
            seed: 0,
            out_dir: PathBuf::from("."),
        }
    }
}

fn ensure_out_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    Ok(())
}

/// Draw a pattern from the configured model and write it as a pattern file
/// (`pattern.txt` in the output directory). The header comments echo the
/// model, parameters and seed, so the file documents its own provenance.
pub fn cmd_simulate(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let model = cfg
        .model
        .ok_or_else(|| Error::Domain("simulate needs a --model".into()))?;
    let window = RectWindow::new(cfg.window.0, cfg.window.1)?;
    let mut rng = rng_from_seed(cfg.seed);
    let pattern = match model {
        ModelSpec::Poisson { intensity } => {
            sample_homogeneous_poisson(intensity, window, &mut rng)?
        }
        ModelSpec::Thomas {
            parent_intensity,
            mean_offspring,
            sd,
        } => sample_thomas_cluster(parent_intensity, mean_offspring, sd, window, &mut rng)?,
        ModelSpec::Hardcore { intensity, radius } => {
            sample_matern_hardcore(intensity, radius, window, &mut rng)?
        }
    };
    ensure_out_dir(&cfg.out_dir)?;
    let path = cfg.out_dir.join("pattern.txt");
    let comments = vec![
        format!("generated by thinsplit {VERSION}"),
        model.describe(),
        format!("seed = {}", cfg.seed),
        format!("n_events = {}", pattern.len()),
    ];
    save_pattern(&path, &pattern, &cfg.unit, &comments)?;
    Ok(vec![path])
}

fn write_test_outputs(
    out_dir: &Path,
    stem: &str,
    report: &TestReport,
    ctx: &ReportContext,
) -> Result<Vec<PathBuf>> {
    let report_path = out_dir.join(format!("{stem}_report.txt"));
    let table_path = out_dir.join(format!("{stem}_table.tsv"));
    let svg_path = out_dir.join(format!("{stem}_envelope.svg"));
    fs::write(&report_path, test_report_text(report, ctx))?;
    fs::write(&table_path, crate::io::report::test_table_text(report))?;
    fs::write(&svg_path, envelope_svg(report))?;
    Ok(vec![report_path, table_path, svg_path])
}

/// Run the configured test(s) on a loaded pattern and write, per statistic,
/// a key-value report, a per-distance table and an envelope plot.
pub fn cmd_test(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let input = cfg
        .input
        .as_ref()
        .ok_or_else(|| Error::Domain("test commands need an --input pattern file".into()))?;
    let LoadedPattern { pattern, unit } = load_pattern(input)?;
    if pattern.is_empty() {
        return Err(Error::Domain(
            "input pattern has no events; test commands need at least one".into(),
        ));
    }
    let window = pattern.window();
    let grid = cfg.grid.resolve(&window)?;
    let m = cfg.m.unwrap_or_else(|| default_m(&pattern));

    // The split is determined by the seed alone, so test-both evaluates both
    // statistics on the same labelling, the way a single analysis would.
    let (n1, n2) = {
        let mut rng = substream(cfg.seed, 0);
        random_thin(&pattern, cfg.p_thin, &mut rng)?.counts()
    };
    let ctx = |command: &str, m: Option<usize>| ReportContext {
        tool_version: VERSION.into(),
        command: command.into(),
        input: Some(input.display().to_string()),
        window_width: window.width(),
        window_height: window.height(),
        unit: unit.clone(),
        n_events: pattern.len(),
        n1,
        n2,
        m,
        grid_d_min: grid.distances()[0],
        grid_d_max: grid.max(),
        grid_steps: grid.len(),
    };

    ensure_out_dir(&cfg.out_dir)?;
    let mut files = Vec::new();
    let run_k12 = matches!(cfg.command, CommandKind::TestK12 | CommandKind::TestBoth);
    let run_t = matches!(cfg.command, CommandKind::TestEmpty | CommandKind::TestBoth);
    if run_k12 {
        let report = run_k12_test_with_coverage(
            &pattern,
            cfg.p_thin,
            cfg.n_sims,
            cfg.coverage,
            &grid,
            cfg.seed,
        )?;
        debug_assert_eq!(report.statistic, StatisticKind::K12);
        files.extend(write_test_outputs(
            &cfg.out_dir,
            "k12",
            &report,
            &ctx(cfg.command.as_str(), None),
        )?);
    }
    if run_t {
        let report = run_t_test_with_coverage(
            &pattern,
            cfg.p_thin,
            m,
            cfg.n_sims,
            cfg.coverage,
            &grid,
            cfg.seed,
        )?;
        debug_assert_eq!(report.statistic, StatisticKind::TStat);
        files.extend(write_test_outputs(
            &cfg.out_dir,
            "t",
            &report,
            &ctx(cfg.command.as_str(), Some(m)),
        )?);
    }
    Ok(files)
}

/// Run the count-level characterization sweep and write its pass/fail table.
pub fn cmd_oracle(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let sweep = standard_sweep()?;
    ensure_out_dir(&cfg.out_dir)?;
    let path = cfg.out_dir.join("oracle_report.txt");
    fs::write(&path, oracle_report_text(&sweep, VERSION))?;
    Ok(vec![path])
}

/// Dispatch a configuration to its command body.
pub fn run(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    match cfg.command {
        CommandKind::Simulate => cmd_simulate(cfg),
        CommandKind::TestK12 | CommandKind::TestEmpty | CommandKind::TestBoth => cmd_test(cfg),
        CommandKind::OracleCheck => cmd_oracle(cfg),
    }
}
