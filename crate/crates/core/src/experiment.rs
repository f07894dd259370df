//! Seeded planning runs on a static world and their on-disk artifacts.

use std::fs;
use std::path::Path;
use std::time::Instant;

use crate::io::{costs_tsv, timings_tsv, GraphDump, TraceRecord};
use crate::kripke::{GrowStats, KripkeError};
use crate::scenario::{Scenario, ScenarioConfig, ScenarioError, StrategyName};
use crate::search::{Session, Trace};
use crate::svg;

/// Command-line style replacements for `[planner]` keys.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub iterations: Option<usize>,
    pub samples_per_iter: Option<usize>,
    pub strategy: Option<StrategyName>,
    pub propagate: Option<bool>,
    pub parallel: Option<bool>,
}

impl Overrides {
    pub fn apply(&self, config: &mut ScenarioConfig) {
        let p = &mut config.planner;
        if let Some(v) = self.seed {
            p.seed = v;
        }
        if let Some(v) = self.iterations {
            p.iterations = v;
        }
        if let Some(v) = self.samples_per_iter {
            p.samples_per_iter = v;
        }
        if let Some(v) = self.strategy {
            p.strategy = v;
        }
        if let Some(v) = self.propagate {
            p.propagate = v;
        }
        if let Some(v) = self.parallel {
            p.parallel = v;
        }
    }
}

/// Parses `text` and applies `overrides` before validation.
pub fn load(text: &str, overrides: &Overrides) -> Result<Scenario, ScenarioError> {
    let mut config = ScenarioConfig::parse(text)?;
    overrides.apply(&mut config);
    Scenario::from_config(config)
}

#[derive(Debug, Clone)]
pub struct IterationRecord {
    /// Counted from 1.
    pub iteration: usize,
    pub trace: Option<Trace>,
    pub seconds: f64,
    pub trace_text: Option<String>,
    pub stats: GrowStats,
}

#[derive(Debug, Clone)]
pub struct Experiment {
    pub scenario: Scenario,
    pub session: Session,
    pub records: Vec<IterationRecord>,
}

/// Replans from the start pose for the configured number of iterations.
pub fn run(scenario: Scenario) -> Result<Experiment, KripkeError> {
    let planner = scenario.config.planner;
    let mut session = Session::new(
        scenario.context(),
        scenario.start,
        scenario.bounds,
        planner.seed,
        planner.samples_per_iter,
    )?;
    let mut records = Vec::with_capacity(planner.iterations);
    for iteration in 1..=planner.iterations {
        let t0 = Instant::now();
        let trace = session.replan_step(&scenario.start, None)?;
        let seconds = t0.elapsed().as_secs_f64();
        let trace_text = trace
            .as_ref()
            .map(|t| TraceRecord::from_trace(iteration, t, &session.kripke).to_text());
        records.push(IterationRecord {
            iteration,
            trace,
            seconds,
            trace_text,
            stats: session.last_stats,
        });
    }
    Ok(Experiment {
        scenario,
        session,
        records,
    })
}

/// Polyline resolution used in graph dumps and plots.
pub const DUMP_STEP: f64 = 0.5;

impl Experiment {
    pub fn cost_len(&self) -> usize {
        self.scenario.spec.cost_len()
    }

    pub fn costs_tsv(&self) -> String {
        let rows: Vec<(usize, Option<Vec<f64>>)> = self
            .records
            .iter()
            .map(|r| (r.iteration, r.trace.as_ref().map(|t| t.weight.components().to_vec())))
            .collect();
        costs_tsv(&rows, self.cost_len())
    }

    pub fn timings_tsv(&self) -> String {
        let rows: Vec<(usize, f64)> = self.records.iter().map(|r| (r.iteration, r.seconds)).collect();
        timings_tsv(&rows)
    }

    pub fn cost_plot(&self) -> String {
        let n = self.cost_len();
        let mut series: Vec<(String, Vec<(usize, f64)>)> = (0..n)
            .map(|c| {
                let name = if c + 1 == n { "time".to_string() } else { format!("class {c} unsafety") };
                let values = self
                    .records
                    .iter()
                    .map(|r| (r.iteration, r.trace.as_ref().map_or(f64::INFINITY, |t| t.weight.components()[c])))
                    .collect();
                (name, values)
            })
            .collect();
        series.push((
            "seconds per iteration".into(),
            self.records.iter().map(|r| (r.iteration, r.seconds)).collect(),
        ));
        svg::series_plot(&series)
    }

    /// Writes the cost tables, every trace, the final graph and both plots.
    /// Nothing is written beyond the tables when there are no iterations.
    pub fn write(&self, dir: &Path) -> std::io::Result<()> {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("costs.tsv"), self.costs_tsv())?;
        fs::write(dir.join("timings.tsv"), self.timings_tsv())?;
        if self.records.is_empty() {
            return Ok(());
        }
        for r in &self.records {
            if let Some(t) = &r.trace_text {
                fs::write(dir.join(format!("trace_{}.txt", r.iteration)), t)?;
            }
        }
        let graph = GraphDump::from_kripke(&self.session.kripke, DUMP_STEP);
        fs::write(dir.join("graph_final.txt"), graph.to_text())?;
        let path = self
            .records
            .last()
            .and_then(|r| r.trace.as_ref())
            .map(|t| t.polyline.clone())
            .unwrap_or_default();
        fs::write(dir.join("plot_path.svg"), svg::path_plot(&self.scenario.world, &graph, &path))?;
        fs::write(dir.join("plot_costs.svg"), self.cost_plot())?;
        Ok(())
    }
}
