//! Scenario documents: alphabet, regions, rules, vehicle, goal and planner
//! settings in TOML.
//!
//! ```toml
//! alphabet = ["collision", "road"]
//!
//! [[regions]]
//! name = "road"
//! mode = "containment"          # or "overlap"
//! vertices = [[-10, -3.5], [60, -3.5], [60, 3.5], [-10, 3.5]]
//!
//! [[rules]]
//! name = "on_road"
//! formula = "G road"
//! weight = 1
//! class = 0                      # 0 is the most important
//!
//! [start]
//! x = 0.0
//! y = -1.75
//! theta = 0.0
//!
//! [goal]
//! min_x = 37.0                   # or: vertices = [[..], ..]
//!
//! [sampling]
//! x = [-2.0, 42.0]
//! y = [-3.5, 3.5]
//! theta = [-0.785, 0.785]
//! ```
//!
//! `[vehicle]` and `[planner]` are optional; see [`VehicleConfig`] and
//! [`PlannerConfig`] for their keys and defaults.

use std::collections::BTreeSet;

use serde::Deserialize;
use thiserror::Error;

use crate::fltl::{
    check_stutter_invariant_bounded, parse_gx, Alphabet, FltlError, GxFormula, DEFAULT_STUTTER_BUDGET,
    DEFAULT_STUTTER_MAX_LEN,
};
use crate::kripke::{ConnectionStrategy, CostParams, PlanningContext, SamplingBounds, Variant};
use crate::unsafety::{PrioritizedSpec, RuleDef};
use crate::world::{Goal, Point, Polygon, Pose, Region, RegionMode, Vehicle, WorldModel};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScenarioError {
    #[error("{0}")]
    Syntax(String),
    #[error("{field}: {message}")]
    Invalid { field: String, message: String },
}

fn invalid(field: impl Into<String>, message: impl ToString) -> ScenarioError {
    ScenarioError::Invalid {
        field: field.into(),
        message: message.to_string(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeConfig {
    Containment,
    Overlap,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionConfig {
    pub name: String,
    pub mode: ModeConfig,
    pub vertices: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleConfig {
    pub name: String,
    pub formula: String,
    #[serde(default = "one")]
    pub weight: u32,
    pub class: usize,
}

fn one() -> u32 {
    1
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct VehicleConfig {
    pub half_length: f64,
    pub half_width: f64,
    pub rear_axle_offset: f64,
    pub turn_radius: f64,
}

impl Default for VehicleConfig {
    fn default() -> Self {
        let v = Vehicle::default();
        VehicleConfig {
            half_length: v.half_length,
            half_width: v.half_width,
            rear_axle_offset: v.rear_axle_offset,
            turn_radius: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoseConfig {
    pub x: f64,
    pub y: f64,
    #[serde(default)]
    pub theta: f64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoalConfig {
    pub min_x: Option<f64>,
    pub vertices: Option<Vec<[f64; 2]>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplingConfig {
    pub x: [f64; 2],
    pub y: [f64; 2],
    pub theta: [f64; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StrategyName {
    Rrg,
    RrtStar,
    KRrg,
    KRrtStar,
}

impl StrategyName {
    pub fn variant(self) -> Variant {
        match self {
            StrategyName::Rrg => Variant::Rrg,
            StrategyName::RrtStar => Variant::RrtStar,
            StrategyName::KRrg => Variant::KNearestRrg,
            StrategyName::KRrtStar => Variant::KNearestRrtStar,
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "rrg" => StrategyName::Rrg,
            "rrt-star" => StrategyName::RrtStar,
            "k-rrg" => StrategyName::KRrg,
            "k-rrt-star" => StrategyName::KRrtStar,
            _ => return None,
        })
    }
}

/// Planner settings. `gamma` feeds the radius rule, `gamma_k` the
/// k-nearest rule.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PlannerConfig {
    pub strategy: StrategyName,
    pub gamma: f64,
    pub gamma_k: f64,
    pub dimension: u32,
    pub propagate: bool,
    pub theta_weight: f64,
    pub iterations: usize,
    pub samples_per_iter: usize,
    pub seed: u64,
    pub step: f64,
    pub refine_tol: f64,
    pub parallel: bool,
}

impl Default for PlannerConfig {
    fn default() -> Self {
        let s = ConnectionStrategy::default();
        let p = CostParams::default();
        PlannerConfig {
            strategy: StrategyName::RrtStar,
            gamma: s.gamma,
            gamma_k: 4.0,
            dimension: s.dimension,
            propagate: s.propagate,
            theta_weight: s.theta_weight,
            iterations: 40,
            samples_per_iter: 20,
            seed: 0,
            step: p.step,
            refine_tol: p.refine_tol,
            parallel: true,
        }
    }
}

/// The document as written, before semantic checks.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub alphabet: Vec<String>,
    #[serde(default)]
    pub vehicle: VehicleConfig,
    pub regions: Vec<RegionConfig>,
    pub rules: Vec<RuleConfig>,
    pub start: PoseConfig,
    pub goal: GoalConfig,
    pub sampling: SamplingConfig,
    #[serde(default)]
    pub planner: PlannerConfig,
}

impl ScenarioConfig {
    pub fn parse(text: &str) -> Result<Self, ScenarioError> {
        toml::from_str(text).map_err(|e| ScenarioError::Syntax(e.to_string()))
    }
}

/// A checked scenario ready to plan.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub config: ScenarioConfig,
    pub world: WorldModel,
    pub spec: PrioritizedSpec,
    pub goal: Goal,
    pub start: Pose,
    pub bounds: SamplingBounds,
    pub strategy: ConnectionStrategy,
    pub params: CostParams,
}

fn polygon(field: &str, vertices: &[[f64; 2]]) -> Result<Polygon, ScenarioError> {
    Polygon::new(vertices.iter().map(|v| Point::new(v[0], v[1])).collect()).map_err(|e| invalid(field, e))
}

fn alphabet(config: &ScenarioConfig) -> Result<Alphabet, ScenarioError> {
    Alphabet::new(config.alphabet.iter().cloned()).map_err(|e| invalid("alphabet", e))
}

fn rule_formula(i: usize, r: &RuleConfig, alphabet: &Alphabet) -> Result<GxFormula, ScenarioError> {
    let field = format!("rules[{i}].formula");
    let f = parse_gx(&r.formula).map_err(|e| invalid(&field, e))?;
    for p in f.propositions() {
        if !alphabet.contains(&p) {
            return Err(invalid(&field, FltlError::UnknownProp(p)));
        }
    }
    Ok(f)
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Self, ScenarioError> {
        Self::from_config(ScenarioConfig::parse(text)?)
    }

    pub fn from_config(config: ScenarioConfig) -> Result<Self, ScenarioError> {
        let alphabet = alphabet(&config)?;

        let v = &config.vehicle;
        let vehicle = Vehicle {
            half_length: v.half_length,
            half_width: v.half_width,
            rear_axle_offset: v.rear_axle_offset,
        };
        let regions = config
            .regions
            .iter()
            .enumerate()
            .map(|(i, r)| {
                Ok(Region {
                    name: r.name.clone(),
                    polygon: polygon(&format!("regions[{i}].vertices"), &r.vertices)?,
                    mode: match r.mode {
                        ModeConfig::Containment => RegionMode::Containment,
                        ModeConfig::Overlap => RegionMode::Overlap,
                    },
                })
            })
            .collect::<Result<Vec<_>, ScenarioError>>()?;
        let world = WorldModel::new(alphabet.clone(), regions, vehicle).map_err(|e| invalid("regions", e))?;

        let classes: BTreeSet<usize> = config.rules.iter().map(|r| r.class).collect();
        let num_classes = classes.last().map_or(0, |c| c + 1);
        if let Some(missing) = (0..num_classes).find(|c| !classes.contains(c)) {
            return Err(invalid("rules", format!("priority classes must be contiguous from 0; class {missing} is empty")));
        }
        let defs = config
            .rules
            .iter()
            .enumerate()
            .map(|(i, r)| {
                Ok(RuleDef {
                    name: r.name.clone(),
                    formula: rule_formula(i, r, &alphabet)?,
                    weight: r.weight,
                    class: r.class,
                })
            })
            .collect::<Result<Vec<_>, ScenarioError>>()?;
        let spec = PrioritizedSpec::new(alphabet, defs, num_classes).map_err(|e| invalid("rules", e))?;

        let goal = match (&config.goal.min_x, &config.goal.vertices) {
            (Some(c), None) if c.is_finite() => Goal::MinX(*c),
            (None, Some(vs)) => Goal::Region(polygon("goal.vertices", vs)?),
            _ => return Err(invalid("goal", "give exactly one of `min_x` or `vertices`")),
        };
        let s = &config.start;
        if !(s.x.is_finite() && s.y.is_finite() && s.theta.is_finite()) {
            return Err(invalid("start", "coordinates must be finite"));
        }
        let start = Pose::new(s.x, s.y, s.theta);
        let b = &config.sampling;
        let bounds = SamplingBounds {
            x: (b.x[0], b.x[1]),
            y: (b.y[0], b.y[1]),
            theta: (b.theta[0], b.theta[1]),
        };
        bounds.validate().map_err(|e| invalid("sampling", e))?;

        let p = &config.planner;
        let variant = p.strategy.variant();
        let strategy = ConnectionStrategy {
            variant,
            gamma: if variant.is_k_nearest() { p.gamma_k } else { p.gamma },
            dimension: p.dimension,
            propagate: p.propagate,
            theta_weight: p.theta_weight,
        };
        strategy.validate().map_err(|e| invalid("planner", e))?;
        let params = CostParams {
            turn_radius: config.vehicle.turn_radius,
            step: p.step,
            refine_tol: p.refine_tol,
        };
        params.validate().map_err(|e| invalid("planner", e))?;

        Ok(Scenario {
            config,
            world,
            spec,
            goal,
            start,
            bounds,
            strategy,
            params,
        })
    }

    pub fn context(&self) -> PlanningContext {
        let mut ctx = PlanningContext::new(
            self.world.clone(),
            self.spec.clone(),
            self.strategy,
            self.params,
            self.goal.clone(),
        )
        .expect("scenario was validated");
        ctx.parallel = self.config.planner.parallel;
        ctx
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LintKind {
    /// A word and one letter duplication disagree on the rule.
    NotStutterInvariant,
    /// The bounded search was skipped for being too large.
    StutterCheckSkipped,
    DegeneratePolygon,
    UnknownProposition,
    UnusedProposition,
    MalformedFormula,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LintIssue {
    pub kind: LintKind,
    pub subject: String,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LintReport {
    pub issues: Vec<LintIssue>,
}

impl LintReport {
    pub fn is_clean(&self) -> bool {
        self.issues.is_empty()
    }

    fn push(&mut self, kind: LintKind, subject: impl Into<String>, message: impl ToString) {
        self.issues.push(LintIssue {
            kind,
            subject: subject.into(),
            message: message.to_string(),
        });
    }
}

impl std::fmt::Display for LintReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.issues.is_empty() {
            return writeln!(f, "ok: no issues");
        }
        for i in &self.issues {
            writeln!(f, "{:?}\t{}\t{}", i.kind, i.subject, i.message)?;
        }
        Ok(())
    }
}

/// Checks a document without planning. Syntax errors fail; everything else
/// becomes an issue in the report.
pub fn lint(text: &str) -> Result<LintReport, ScenarioError> {
    let config = ScenarioConfig::parse(text)?;
    let mut report = LintReport::default();
    let alphabet = match alphabet(&config) {
        Ok(a) => a,
        Err(e) => {
            report.push(LintKind::Other, "alphabet", e);
            return Ok(report);
        }
    };

    for (i, r) in config.regions.iter().enumerate() {
        if let Err(e) = polygon(&format!("regions[{i}].vertices"), &r.vertices) {
            report.push(LintKind::DegeneratePolygon, &r.name, e);
        }
        if !alphabet.contains(&r.name) {
            report.push(LintKind::UnknownProposition, &r.name, "region names no proposition of the alphabet");
        }
    }
    for name in alphabet.names() {
        if !config.regions.iter().any(|r| &r.name == name) {
            report.push(LintKind::Other, name, "no region defines this proposition");
        }
    }

    let mut used: BTreeSet<String> = BTreeSet::new();
    for r in &config.rules {
        let f = match parse_gx(&r.formula) {
            Ok(f) => f,
            Err(e) => {
                report.push(LintKind::MalformedFormula, &r.name, e);
                continue;
            }
        };
        let props = f.propositions();
        let unknown: Vec<&String> = props.iter().filter(|p| !alphabet.contains(p)).collect();
        if !unknown.is_empty() {
            for p in unknown {
                report.push(LintKind::UnknownProposition, &r.name, format!("unknown proposition `{p}`"));
            }
            continue;
        }
        used.extend(props.iter().cloned());
        // the check only needs the rule's own propositions
        let local = Alphabet::new(props.iter().cloned()).expect("subset of a valid alphabet");
        match check_stutter_invariant_bounded(&f, &local, DEFAULT_STUTTER_MAX_LEN, DEFAULT_STUTTER_BUDGET) {
            Ok(true) => {}
            Ok(false) => report.push(
                LintKind::NotStutterInvariant,
                &r.name,
                format!("satisfaction changes under letter duplication (words up to length {DEFAULT_STUTTER_MAX_LEN})"),
            ),
            Err(e) => report.push(LintKind::StutterCheckSkipped, &r.name, e),
        }
    }
    for name in alphabet.names() {
        if !used.contains(name) {
            report.push(LintKind::UnusedProposition, name, "no rule mentions this proposition");
        }
    }

    if report.is_clean() {
        if let Err(e) = Scenario::from_config(config) {
            report.push(LintKind::Other, "scenario", e);
        }
    }
    Ok(report)
}

/// The two-lane overtaking scenario shipped with the crate.
pub const OVERTAKE: &str = include_str!("../scenarios/overtake.toml");
