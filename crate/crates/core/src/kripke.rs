//! Incremental construction of the weighted Kripke structure.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::dynamics::{steer, timed_word, LabeledTrajectory};
use crate::fltl::Label;
use crate::unsafety::{CostVector, PrioritizedSpec, UnsafetyError};
use crate::world::{Goal, Pose, WorldModel};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KripkeError {
    #[error(transparent)]
    Unsafety(#[from] UnsafetyError),
    #[error("world and specification use different alphabets")]
    AlphabetMismatch,
    #[error("invalid connection strategy: {0}")]
    InvalidStrategy(&'static str),
    #[error("invalid costing parameters: {0}")]
    InvalidParams(&'static str),
    #[error("invalid sampling bounds")]
    InvalidBounds,
}

/// Closed box over `(x, y, theta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplingBounds {
    pub x: (f64, f64),
    pub y: (f64, f64),
    pub theta: (f64, f64),
}

impl SamplingBounds {
    pub fn validate(&self) -> Result<(), KripkeError> {
        let ok = |(lo, hi): (f64, f64)| lo.is_finite() && hi.is_finite() && lo <= hi;
        if ok(self.x) && ok(self.y) && ok(self.theta) {
            Ok(())
        } else {
            Err(KripkeError::InvalidBounds)
        }
    }
}

/// Seeded stream of uniform poses.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
    bounds: SamplingBounds,
}

impl Sampler {
    pub fn new(seed: u64, bounds: SamplingBounds) -> Result<Self, KripkeError> {
        bounds.validate()?;
        Ok(Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            bounds,
        })
    }

    pub fn bounds(&self) -> &SamplingBounds {
        &self.bounds
    }

    pub fn sample(&mut self) -> Pose {
        let mut coord = |(lo, hi): (f64, f64)| lo + (hi - lo) * self.rng.gen::<f64>();
        let x = coord(self.bounds.x);
        let y = coord(self.bounds.y);
        let theta = coord(self.bounds.theta);
        Pose::new(x, y, theta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Rrg,
    RrtStar,
    KNearestRrg,
    KNearestRrtStar,
}

impl Variant {
    pub fn is_tree(self) -> bool {
        matches!(self, Variant::RrtStar | Variant::KNearestRrtStar)
    }

    pub fn is_k_nearest(self) -> bool {
        matches!(self, Variant::KNearestRrg | Variant::KNearestRrtStar)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConnectionStrategy {
    pub variant: Variant,
    /// `gamma` for the radius rule, `gamma'` for k-nearest.
    pub gamma: f64,
    pub dimension: u32,
    /// Push rewiring improvements down the tree.
    pub propagate: bool,
    /// Meters per radian of heading difference in the state metric.
    pub theta_weight: f64,
}

impl Default for ConnectionStrategy {
    fn default() -> Self {
        ConnectionStrategy {
            variant: Variant::Rrg,
            gamma: 40.0,
            dimension: 3,
            propagate: true,
            theta_weight: 1.0,
        }
    }
}

impl ConnectionStrategy {
    pub fn validate(&self) -> Result<(), KripkeError> {
        if !(self.gamma.is_finite() && self.gamma > 0.0) {
            return Err(KripkeError::InvalidStrategy("gamma must be positive"));
        }
        if self.dimension < 3 {
            return Err(KripkeError::InvalidStrategy("dimension must be at least 3"));
        }
        if !(self.theta_weight.is_finite() && self.theta_weight >= 0.0) {
            return Err(KripkeError::InvalidStrategy("theta weight must be nonnegative"));
        }
        Ok(())
    }
}

/// `(gamma log m / m)^(1/D)`, zero for `m <= 1`.
pub fn near_radius(m: usize, gamma: f64, dimension: u32) -> f64 {
    if m <= 1 {
        return 0.0;
    }
    let m = m as f64;
    (gamma * m.ln() / m).powf(1.0 / f64::from(dimension))
}

/// `ceil(gamma' log m) + 1`.
pub fn near_k(m: usize, gamma: f64) -> usize {
    let m = m.max(1) as f64;
    (gamma * m.ln()).ceil() as usize + 1
}

/// Steering and labeling resolution for transition costs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostParams {
    pub turn_radius: f64,
    pub step: f64,
    pub refine_tol: f64,
}

impl Default for CostParams {
    fn default() -> Self {
        CostParams {
            turn_radius: 1.0,
            step: 0.1,
            refine_tol: 1e-4,
        }
    }
}

impl CostParams {
    pub fn validate(&self) -> Result<(), KripkeError> {
        if !(self.turn_radius.is_finite() && self.turn_radius > 0.0) {
            return Err(KripkeError::InvalidParams("turn radius must be positive"));
        }
        if !(self.refine_tol > 0.0 && self.step > self.refine_tol && self.step.is_finite()) {
            return Err(KripkeError::InvalidParams("need step > refine_tol > 0"));
        }
        Ok(())
    }
}

/// Steers from `a` to `b` and scores the resulting timed word.
pub fn transition_cost(
    a: &Pose,
    b: &Pose,
    world: &WorldModel,
    spec: &PrioritizedSpec,
    params: &CostParams,
) -> Result<(CostVector, LabeledTrajectory), KripkeError> {
    let trajectory = steer(a, b, params.turn_radius);
    let word = timed_word(&trajectory, world, params.step, params.refine_tol);
    let cost = spec.cost(&word, trajectory.total_time())?;
    Ok((cost, LabeledTrajectory { trajectory, word }))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Transition {
    pub weight: CostVector,
    pub trajectory: LabeledTrajectory,
}

/// Everything `grow` reads but never changes.
#[derive(Debug, Clone)]
pub struct PlanningContext {
    pub world: WorldModel,
    pub spec: PrioritizedSpec,
    pub strategy: ConnectionStrategy,
    pub params: CostParams,
    pub goal: Goal,
    /// Compute transition costs on the rayon pool.
    pub parallel: bool,
}

impl PlanningContext {
    pub fn new(
        world: WorldModel,
        spec: PrioritizedSpec,
        strategy: ConnectionStrategy,
        params: CostParams,
        goal: Goal,
    ) -> Result<Self, KripkeError> {
        if world.alphabet() != spec.alphabet() {
            return Err(KripkeError::AlphabetMismatch);
        }
        strategy.validate()?;
        params.validate()?;
        Ok(PlanningContext {
            world,
            spec,
            strategy,
            params,
            goal,
            parallel: true,
        })
    }

    pub fn cost(&self, a: &Pose, b: &Pose) -> Result<(CostVector, LabeledTrajectory), KripkeError> {
        transition_cost(a, b, &self.world, &self.spec, &self.params)
    }

    /// Costs of `pairs`, in order, optionally computed in parallel.
    pub fn costs(&self, pairs: &[(Pose, Pose)]) -> Result<Vec<(CostVector, LabeledTrajectory)>, KripkeError> {
        if self.parallel {
            pairs.par_iter().map(|(a, b)| self.cost(a, b)).collect()
        } else {
            pairs.iter().map(|(a, b)| self.cost(a, b)).collect()
        }
    }
}

/// Sampled poses, their labels and vector-weighted transitions.
#[derive(Debug, Clone)]
pub struct WeightedKripke {
    states: Vec<Pose>,
    labels: Vec<Label>,
    init: usize,
    out: Vec<BTreeMap<usize, Transition>>,
    inc: Vec<BTreeSet<usize>>,
    goals: BTreeSet<usize>,
    j: Vec<CostVector>,
    cost_len: usize,
    propagated: usize,
}

impl WeightedKripke {
    /// A single initial state with `J = 0`.
    pub fn new(init: Pose, label: Label, cost_len: usize) -> Self {
        WeightedKripke {
            states: vec![init],
            labels: vec![label],
            init: 0,
            out: vec![BTreeMap::new()],
            inc: vec![BTreeSet::new()],
            goals: BTreeSet::new(),
            j: vec![CostVector::zeros(cost_len)],
            cost_len,
            propagated: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn cost_len(&self) -> usize {
        self.cost_len
    }

    pub fn init(&self) -> usize {
        self.init
    }

    pub fn state(&self, id: usize) -> &Pose {
        &self.states[id]
    }

    pub fn states(&self) -> &[Pose] {
        &self.states
    }

    pub fn label(&self, id: usize) -> Label {
        self.labels[id]
    }

    pub fn goal_ids(&self) -> &BTreeSet<usize> {
        &self.goals
    }

    pub fn j(&self, id: usize) -> &CostVector {
        &self.j[id]
    }

    pub fn transition(&self, src: usize, dst: usize) -> Option<&Transition> {
        self.out[src].get(&dst)
    }

    /// Outgoing transitions of `src` by ascending target id.
    pub fn successors(&self, src: usize) -> impl Iterator<Item = (usize, &Transition)> {
        self.out[src].iter().map(|(&d, t)| (d, t))
    }

    pub fn predecessors(&self, dst: usize) -> impl Iterator<Item = usize> + '_ {
        self.inc[dst].iter().copied()
    }

    /// All transitions ordered by `(src, dst)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &Transition)> {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(s, m)| m.iter().map(move |(&d, t)| (s, d, t)))
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(BTreeMap::len).sum()
    }

    /// Adds a state with `J = inf` and returns its id.
    pub fn add_state(&mut self, pose: Pose, label: Label) -> usize {
        self.states.push(pose);
        self.labels.push(label);
        self.out.push(BTreeMap::new());
        self.inc.push(BTreeSet::new());
        self.j.push(CostVector::infinite(self.cost_len));
        self.states.len() - 1
    }

    pub fn mark_goal(&mut self, id: usize) {
        self.goals.insert(id);
    }

    /// Inserts or overwrites the transition `src -> dst`.
    pub fn connect_rrg(&mut self, src: usize, dst: usize, weight: CostVector, trajectory: LabeledTrajectory) {
        assert_eq!(weight.len(), self.cost_len, "weight length");
        self.out[src].insert(dst, Transition { weight, trajectory });
        self.inc[dst].insert(src);
    }

    /// Makes `src` the parent of `dst` when that strictly lowers `J(dst)`.
    /// Returns whether the edge was taken.
    pub fn connect_rrt(
        &mut self,
        src: usize,
        dst: usize,
        weight: CostVector,
        trajectory: LabeledTrajectory,
        propagate: bool,
    ) -> bool {
        let candidate = &self.j[src] + &weight;
        if candidate >= self.j[dst] {
            return false;
        }
        for p in std::mem::take(&mut self.inc[dst]) {
            self.out[p].remove(&dst);
        }
        self.connect_rrg(src, dst, weight, trajectory);
        self.j[dst] = candidate;
        if propagate {
            self.propagated += self.propagate_from(dst);
        }
        true
    }

    /// Total descendant updates made by rewiring propagation so far.
    pub fn propagated(&self) -> usize {
        self.propagated
    }

    /// Recomputes `J` below `root` from parent costs plus edge weights.
    /// Returns the number of descendants updated.
    fn propagate_from(&mut self, root: usize) -> usize {
        let mut queue = VecDeque::from([root]);
        let mut seen = BTreeSet::from([root]);
        while let Some(s) = queue.pop_front() {
            let children: Vec<usize> = self.out[s].keys().copied().collect();
            for c in children {
                if c == self.init || !seen.insert(c) {
                    continue;
                }
                self.j[c] = &self.j[s] + &self.out[s][&c].weight;
                queue.push_back(c);
            }
        }
        seen.len() - 1
    }

    /// Resets `J` to root-path sums from the current init; unreachable
    /// states get `inf`.
    pub fn recompute_costs(&mut self) {
        for j in &mut self.j {
            *j = CostVector::infinite(self.cost_len);
        }
        self.j[self.init] = CostVector::zeros(self.cost_len);
        self.propagate_from(self.init);
    }

    /// Moves the initial state. In tree mode the new root loses its
    /// incoming edges.
    pub fn set_init(&mut self, id: usize, tree: bool) {
        self.init = id;
        if tree {
            for p in std::mem::take(&mut self.inc[id]) {
                self.out[p].remove(&id);
            }
        }
    }

    pub fn set_label(&mut self, id: usize, label: Label) {
        self.labels[id] = label;
    }

    pub fn set_weight(&mut self, src: usize, dst: usize, weight: CostVector, word: crate::unsafety::TimedWord) {
        let t = self.out[src].get_mut(&dst).expect("transition exists");
        t.weight = weight;
        t.trajectory.word = word;
    }

    /// The unique parent in tree mode.
    pub fn parent(&self, id: usize) -> Option<usize> {
        self.inc[id].iter().next().copied()
    }

    /// State ids close to `pose`, ascending.
    pub fn near(&self, pose: &Pose, strategy: &ConnectionStrategy) -> Vec<usize> {
        let m = self.states.len();
        let dist = |i: usize| self.states[i].distance(pose, strategy.theta_weight);
        let mut ids: Vec<usize> = if strategy.variant.is_k_nearest() {
            let k = near_k(m, strategy.gamma);
            let mut by_dist: Vec<(f64, usize)> = (0..m).map(|i| (dist(i), i)).collect();
            by_dist.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            by_dist.into_iter().take(k).map(|(_, i)| i).collect()
        } else {
            let r = near_radius(m, strategy.gamma, strategy.dimension);
            (0..m).filter(|&i| dist(i) <= r).collect()
        };
        ids.sort_unstable();
        ids
    }

    /// Closest state to `pose` and its distance.
    pub fn nearest(&self, pose: &Pose, theta_weight: f64) -> (usize, f64) {
        self.states
            .iter()
            .enumerate()
            .map(|(i, s)| (i, s.distance(pose, theta_weight)))
            .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)))
            .expect("at least the initial state")
    }
}

/// Poses within this distance of an existing state are not added.
pub const DUPLICATE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GrowStats {
    pub added: usize,
    pub discarded: usize,
    pub rewired: usize,
    /// Descendant cost updates caused by rewiring.
    pub propagated: usize,
}

/// Adds `pose` and wires it to its near set: neighbors into the new state
/// first, then the new state out to its neighbors. Returns the new id.
pub fn insert_state(k: &mut WeightedKripke, ctx: &PlanningContext, pose: Pose, stats: &mut GrowStats) -> Result<usize, KripkeError> {
    let near = k.near(&pose, &ctx.strategy);
    let id = k.add_state(pose, ctx.world.label(&pose));
    let tree = ctx.strategy.variant.is_tree();

    let sources: Vec<usize> = if tree {
        near.iter().copied().filter(|&s| k.j(s).is_finite()).collect()
    } else {
        near.clone()
    };
    let pairs: Vec<(Pose, Pose)> = sources.iter().map(|&s| (*k.state(s), pose)).collect();
    for (&s, (w, traj)) in sources.iter().zip(ctx.costs(&pairs)?) {
        if tree {
            if k.connect_rrt(s, id, w, traj, ctx.strategy.propagate) {
                stats.rewired += 1;
            }
        } else {
            k.connect_rrg(s, id, w, traj);
        }
    }

    if !tree || k.j(id).is_finite() {
        let pairs: Vec<(Pose, Pose)> = near.iter().map(|&s| (pose, *k.state(s))).collect();
        for (&s, (w, traj)) in near.iter().zip(ctx.costs(&pairs)?) {
            if tree {
                if k.connect_rrt(id, s, w, traj, ctx.strategy.propagate) {
                    stats.rewired += 1;
                }
            } else {
                k.connect_rrg(id, s, w, traj);
            }
        }
    }

    if ctx.goal.contains(&pose) {
        k.mark_goal(id);
    }
    Ok(id)
}

/// Draws `n` samples and inserts each one that is not a duplicate.
pub fn grow(k: &mut WeightedKripke, ctx: &PlanningContext, sampler: &mut Sampler, n: usize) -> Result<GrowStats, KripkeError> {
    let mut stats = GrowStats::default();
    let before = k.propagated();
    for _ in 0..n {
        let pose = sampler.sample();
        if k.nearest(&pose, ctx.strategy.theta_weight).1 <= DUPLICATE_TOL {
            stats.discarded += 1;
            continue;
        }
        insert_state(k, ctx, pose, &mut stats)?;
        stats.added += 1;
    }
    stats.propagated = k.propagated() - before;
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fltl::{parse_gx, Alphabet};
    use crate::unsafety::RuleDef;
    use crate::world::{Point, Polygon, Region, RegionMode, Vehicle};

    fn world() -> WorldModel {
        let a = Alphabet::new(["collision", "close", "road", "lane"]).unwrap();
        let rect = |x0, y0, x1, y1| Polygon::rectangle(Point::new(x0, y0), Point::new(x1, y1)).unwrap();
        let regions = vec![
            Region { name: "road".into(), polygon: rect(-10., -3.5, 60., 3.5), mode: RegionMode::Containment },
            Region { name: "lane".into(), polygon: rect(-10., -3.5, 60., 0.), mode: RegionMode::Containment },
            Region { name: "collision".into(), polygon: rect(15., -2.65, 19.8, -0.85), mode: RegionMode::Overlap },
            Region { name: "close".into(), polygon: rect(13., -3.65, 21.8, 0.15), mode: RegionMode::Overlap },
        ];
        WorldModel::new(a, regions, Vehicle::default()).unwrap()
    }

    fn spec(a: &Alphabet, extra: Option<(&str, usize)>) -> PrioritizedSpec {
        let mut defs = vec![
            ("no_collision", "G !collision", 0),
            ("on_road", "G road", 1),
            ("clearance", "G !close", 2),
            ("lane_keeping", "G lane", 2),
        ];
        if let Some((f, c)) = extra {
            defs.push(("extra", f, c));
        }
        let defs = defs
            .into_iter()
            .map(|(n, f, c)| RuleDef { name: n.into(), formula: parse_gx(f).unwrap(), weight: 1, class: c })
            .collect();
        PrioritizedSpec::new(a.clone(), defs, 3).unwrap()
    }

    fn ctx(variant: Variant) -> PlanningContext {
        let w = world();
        let s = spec(w.alphabet(), None);
        let strat = ConnectionStrategy { variant, gamma: 1000.0, ..Default::default() };
        PlanningContext::new(w, s, strat, CostParams::default(), Goal::MinX(37.)).unwrap()
    }

    const BOUNDS: SamplingBounds = SamplingBounds { x: (-2., 42.), y: (-3.5, 3.5), theta: (-0.78, 0.78) };

    #[test]
    fn sampler_is_reproducible_and_in_bounds() {
        let mut a = Sampler::new(42, BOUNDS).unwrap();
        let mut b = Sampler::new(42, BOUNDS).unwrap();
        let (p, q) = (a.sample(), a.sample());
        assert_ne!(p, q);
        assert_eq!(p, b.sample());
        assert_eq!(q, b.sample());
        let flat = SamplingBounds { x: (1., 1.), y: (2., 2.), theta: (0.5, 0.5) };
        assert_eq!(Sampler::new(7, flat).unwrap().sample(), Pose::new(1., 2., 0.5));
    }

    #[test]
    fn sample_means_are_central() {
        let mut s = Sampler::new(3, BOUNDS).unwrap();
        let n = 10_000;
        let mut sums = [0.0; 3];
        for _ in 0..n {
            let p = s.sample();
            sums[0] += p.x;
            sums[1] += p.y;
            sums[2] += p.theta;
        }
        for (sum, (lo, hi)) in sums.iter().zip([BOUNDS.x, BOUNDS.y, BOUNDS.theta]) {
            let sigma = (hi - lo) / 12f64.sqrt() / (n as f64).sqrt();
            assert!((sum / n as f64 - 0.5 * (lo + hi)).abs() < 3.0 * sigma);
        }
    }

    #[test]
    fn radius_rule() {
        let want = (40.0 * 100f64.ln() / 100.0).powf(1.0 / 3.0);
        assert_eq!(near_radius(100, 40.0, 3), want);
        assert_eq!(near_radius(1, 40.0, 3), 0.0);
        for m in 3..2000 {
            assert!(near_radius(m + 1, 40.0, 3) <= near_radius(m, 40.0, 3));
        }
        assert_eq!(near_k(1, 4.0), 1);
    }

    #[test]
    fn near_matches_exhaustive_scan() {
        let mut s = Sampler::new(5, BOUNDS).unwrap();
        let mut k = WeightedKripke::new(s.sample(), Label::EMPTY, 4);
        for _ in 0..99 {
            k.add_state(s.sample(), Label::EMPTY);
        }
        let strat = ConnectionStrategy { gamma: 40.0, ..Default::default() };
        let r = (40.0 * 100f64.ln() / 100.0).powf(1.0 / 3.0);
        for _ in 0..20 {
            let q = s.sample();
            let want: Vec<usize> = (0..100).filter(|&i| k.state(i).distance(&q, 1.0) <= r).collect();
            assert_eq!(k.near(&q, &strat), want);
        }
        let kn = ConnectionStrategy { variant: Variant::KNearestRrg, gamma: 2.0, ..Default::default() };
        let q = s.sample();
        let got = k.near(&q, &kn);
        assert_eq!(got.len(), near_k(100, 2.0));
        let worst = got.iter().map(|&i| k.state(i).distance(&q, 1.0)).fold(0.0, f64::max);
        let inside = (0..100).filter(|&i| k.state(i).distance(&q, 1.0) <= worst).count();
        assert_eq!(inside, got.len());

        let single = WeightedKripke::new(Pose::new(0., 0., 0.), Label::EMPTY, 4);
        assert_eq!(single.near(&Pose::new(0., 0., 0.), &kn), vec![0]);
        assert!(single.near(&Pose::new(1., 0., 0.), &strat).is_empty());
    }

    #[test]
    fn transition_cost_examples() {
        let c = ctx(Variant::Rrg);
        let (w, t) = c.cost(&Pose::new(0., -1.75, 0.), &Pose::new(8., -1.75, 0.)).unwrap();
        assert_eq!(w.components(), &[0., 0., 0., 8.]);
        assert_eq!(t.trajectory.total_time(), 8.0);

        // straight drift across the center line
        let (a, h) = (Pose::new(-8., -1.75, 0.2), 12.0);
        let b = Pose::new(a.x + h * a.theta.cos(), a.y + h * a.theta.sin(), a.theta);
        let (w, t) = c.cost(&a, &b).unwrap();
        let lane = c.world.alphabet().index_of("lane").unwrap();
        let direct: f64 = t.word.letters().iter().filter(|l| !l.label.contains(lane)).map(|l| l.duration).sum();
        assert_eq!(w.components()[2], direct);
        assert!(direct > 0.0);
        assert_eq!(w.components()[..2], [0., 0.]);
    }

    #[test]
    fn next_rule_counts_unsafe_transition_once() {
        let w = world();
        let base = spec(w.alphabet(), None);
        let with_next = spec(w.alphabet(), Some(("G (lane -> X lane)", 1)));
        let p = CostParams::default();
        let (a, b) = (Pose::new(0., -1.75, 0.), Pose::new(10., 1.75, 0.));
        let (c0, _) = transition_cost(&a, &b, &w, &base, &p).unwrap();
        let (c1, _) = transition_cost(&a, &b, &w, &with_next, &p).unwrap();
        assert_eq!(c1.components()[1] - c0.components()[1], 1.0);
    }

    #[test]
    fn connect_rrg_is_idempotent() {
        let c = ctx(Variant::Rrg);
        let mut k = WeightedKripke::new(Pose::new(0., -1.75, 0.), Label::EMPTY, 4);
        let b = k.add_state(Pose::new(5., -1.75, 0.), Label::EMPTY);
        let (w, t) = c.cost(k.state(0), k.state(b)).unwrap();
        k.connect_rrg(0, b, w.clone(), t.clone());
        k.connect_rrg(0, b, w.clone(), t);
        assert_eq!(k.edge_count(), 1);
        assert_eq!(k.transition(0, b).unwrap().weight, w);
    }

    #[test]
    fn connect_rrt_strict_improvement() {
        let c = ctx(Variant::RrtStar);
        let mut k = WeightedKripke::new(Pose::new(0., -1.75, 0.), Label::EMPTY, 4);
        let b = k.add_state(Pose::new(5., -1.75, 0.), Label::EMPTY);
        let (w, t) = c.cost(k.state(0), k.state(b)).unwrap();
        assert!(k.connect_rrt(0, b, w.clone(), t.clone(), true));
        assert!(!k.connect_rrt(0, b, w, t, true));
        assert_eq!(k.edge_count(), 1);
    }

    /// `J` from scratch: sum of weights along the parent chain.
    fn root_path_cost(k: &WeightedKripke, s: usize) -> Option<CostVector> {
        let mut chain = vec![];
        let mut cur = s;
        while cur != k.init() {
            let p = k.parent(cur)?;
            chain.push((p, cur));
            cur = p;
            if chain.len() > k.len() {
                panic!("parent cycle");
            }
        }
        Some(chain.iter().rev().fold(CostVector::zeros(k.cost_len()), |acc, &(p, c)| &acc + &k.transition(p, c).unwrap().weight))
    }

    #[test]
    fn rewiring_propagates_to_descendants() {
        let c = ctx(Variant::RrtStar);
        let mut k = WeightedKripke::new(Pose::new(0., -1.75, 0.), Label::EMPTY, 4);
        let mid = k.add_state(Pose::new(4., 1.75, 0.), Label::EMPTY);
        let d = k.add_state(Pose::new(12., -1.75, 0.), Label::EMPTY);
        let e1 = k.add_state(Pose::new(18., -1.75, 0.), Label::EMPTY);
        let e2 = k.add_state(Pose::new(22., -1.75, 0.), Label::EMPTY);
        for (s, t) in [(0, mid), (mid, d), (d, e1), (d, e2)] {
            let (w, tr) = c.cost(k.state(s), k.state(t)).unwrap();
            assert!(k.connect_rrt(s, t, w, tr, true));
        }
        let before = [k.j(e1).clone(), k.j(e2).clone(), k.j(d).clone()];
        let (w, tr) = c.cost(k.state(0), k.state(d)).unwrap();
        assert!(k.connect_rrt(0, d, w, tr, true));
        assert_eq!(k.parent(d), Some(0));
        for s in [d, e1, e2] {
            assert_eq!(*k.j(s), root_path_cost(&k, s).unwrap());
        }
        let delta = |a: &CostVector, b: &CostVector| -> Vec<f64> {
            a.components().iter().zip(b.components()).map(|(x, y)| x - y).collect()
        };
        let dd = delta(&before[2], k.j(d));
        for (i, s) in [e1, e2].into_iter().enumerate() {
            for (x, y) in delta(&before[i], k.j(s)).iter().zip(&dd) {
                assert!((x - y).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn grow_zero_is_noop_and_tree_is_well_formed() {
        for variant in [Variant::RrtStar, Variant::KNearestRrtStar] {
            let mut c = ctx(variant);
            if variant.is_k_nearest() {
                c.strategy.gamma = 4.0;
            }
            let mut k = WeightedKripke::new(Pose::new(0., -1.75, 0.), c.world.label(&Pose::new(0., -1.75, 0.)), 4);
            let mut s = Sampler::new(1, BOUNDS).unwrap();
            grow(&mut k, &c, &mut s, 0).unwrap();
            assert_eq!((k.len(), k.edge_count()), (1, 0));
            grow(&mut k, &c, &mut s, 120).unwrap();
            for id in 0..k.len() {
                assert!(k.predecessors(id).count() <= 1);
                if id == k.init() {
                    continue;
                }
                match root_path_cost(&k, id) {
                    Some(j) => assert_eq!(*k.j(id), j),
                    None => assert!(!k.j(id).is_finite()),
                }
            }
        }
    }

    #[test]
    fn rrg_edges_bounded_by_near_set() {
        let c = ctx(Variant::Rrg);
        let mut k = WeightedKripke::new(Pose::new(0., -1.75, 0.), Label::EMPTY, 4);
        let mut s = Sampler::new(2, BOUNDS).unwrap();
        for _ in 0..60 {
            let before = k.edge_count();
            let probe = s.clone().sample();
            let bound = 2 * k.near(&probe, &c.strategy).len();
            grow(&mut k, &c, &mut s, 1).unwrap();
            assert!(k.edge_count() - before <= bound);
        }
    }

    #[test]
    fn parallel_costing_is_deterministic() {
        let mut c = ctx(Variant::RrtStar);
        let run = |c: &PlanningContext| {
            let mut k = WeightedKripke::new(Pose::new(0., -1.75, 0.), Label::EMPTY, 4);
            let mut s = Sampler::new(9, BOUNDS).unwrap();
            grow(&mut k, c, &mut s, 80).unwrap();
            k.edges().map(|(a, b, t)| (a, b, t.weight.clone())).collect::<Vec<_>>()
        };
        let par = run(&c);
        c.parallel = false;
        assert_eq!(par, run(&c));
    }
}
