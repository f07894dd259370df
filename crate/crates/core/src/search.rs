//! Lexicographic shortest traces and the replanning loop.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rayon::prelude::*;

use crate::dynamics::timed_word;
use crate::kripke::{grow, insert_state, GrowStats, KripkeError, PlanningContext, SamplingBounds, Sampler, WeightedKripke};
use crate::unsafety::{CostVector, TimedWord};
use crate::world::{Aabb, Point, Pose, WorldModel};

/// Path from the initial state with its summed weight.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub states: Vec<usize>,
    pub weight: CostVector,
    /// Rear-axle path along all transitions.
    pub polyline: Vec<Point>,
}

/// Lexicographic Dijkstra from every state reachable from init.
/// Returns best costs and predecessors.
pub fn shortest_paths(k: &WeightedKripke) -> (Vec<Option<CostVector>>, Vec<Option<usize>>) {
    let n = k.len();
    let mut dist: Vec<Option<CostVector>> = vec![None; n];
    let mut pred: Vec<Option<usize>> = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[k.init()] = Some(CostVector::zeros(k.cost_len()));
    heap.push(Reverse((CostVector::zeros(k.cost_len()), k.init())));
    while let Some(Reverse((d, s))) = heap.pop() {
        if done[s] {
            continue;
        }
        done[s] = true;
        for (t, tr) in k.successors(s) {
            if done[t] {
                continue;
            }
            let cand = &d + &tr.weight;
            if dist[t].as_ref().is_none_or(|cur| cand < *cur) {
                dist[t] = Some(cand.clone());
                pred[t] = Some(s);
                heap.push(Reverse((cand, t)));
            }
        }
    }
    (dist, pred)
}

/// Minimum-weight trace to the best reachable goal state, ties going to
/// the smaller state id.
pub fn extract_optimal(k: &WeightedKripke, polyline_step: f64) -> Option<Trace> {
    let (dist, pred) = shortest_paths(k);
    let goal = k
        .goal_ids()
        .iter()
        .filter_map(|&g| dist[g].as_ref().map(|d| (d, g)))
        .min()?
        .1;
    let mut states = vec![goal];
    let mut cur = goal;
    while let Some(p) = pred[cur] {
        states.push(p);
        cur = p;
    }
    states.reverse();
    Some(trace_of(k, states, polyline_step))
}

/// Builds a [`Trace`] for consecutive transitions of `k`.
///
/// # Panics
/// If some consecutive pair is not a transition.
pub fn trace_of(k: &WeightedKripke, states: Vec<usize>, polyline_step: f64) -> Trace {
    let mut weight = CostVector::zeros(k.cost_len());
    let mut polyline = vec![k.state(states[0]).position()];
    for w in states.windows(2) {
        let tr = k.transition(w[0], w[1]).expect("trace follows transitions");
        weight = &weight + &tr.weight;
        polyline.extend(tr.trajectory.trajectory.polyline(polyline_step).into_iter().skip(1));
    }
    Trace {
        states,
        weight,
        polyline,
    }
}

/// Poses closer than this to an existing state re-root onto it.
pub const REROOT_DISTANCE: f64 = 0.5;

/// A planning session that keeps its graph across iterations.
#[derive(Debug, Clone)]
pub struct Session {
    pub kripke: WeightedKripke,
    pub ctx: PlanningContext,
    sampler: Sampler,
    pub samples_per_iter: usize,
    /// Refresh only transitions near changed regions on world updates.
    pub dirty_region_refresh: bool,
    pub last_stats: GrowStats,
}

impl Session {
    pub fn new(
        ctx: PlanningContext,
        start: Pose,
        bounds: SamplingBounds,
        seed: u64,
        samples_per_iter: usize,
    ) -> Result<Self, KripkeError> {
        let mut kripke = WeightedKripke::new(start, ctx.world.label(&start), ctx.spec.cost_len());
        if ctx.goal.contains(&start) {
            kripke.mark_goal(kripke.init());
        }
        Ok(Session {
            kripke,
            sampler: Sampler::new(seed, bounds)?,
            ctx,
            samples_per_iter,
            dirty_region_refresh: false,
            last_stats: GrowStats::default(),
        })
    }

    /// One planning iteration: apply the world update, re-root at
    /// `current`, grow by the sample budget and extract.
    pub fn replan_step(&mut self, current: &Pose, world_update: Option<WorldModel>) -> Result<Option<Trace>, KripkeError> {
        let tree = self.ctx.strategy.variant.is_tree();
        let mut stale_costs = false;

        if let Some(world) = world_update {
            if world.alphabet() != self.ctx.spec.alphabet() {
                return Err(KripkeError::AlphabetMismatch);
            }
            let dirty = self.dirty_region_refresh.then(|| dirty_boxes(&self.ctx.world, &world));
            self.ctx.world = world;
            self.refresh_weights(dirty.as_deref())?;
            stale_costs = true;
        }

        let (nearest, d) = self.kripke.nearest(current, self.ctx.strategy.theta_weight);
        let root = if d <= REROOT_DISTANCE {
            nearest
        } else {
            let mut stats = GrowStats::default();
            insert_state(&mut self.kripke, &self.ctx, *current, &mut stats)?
        };
        if root != self.kripke.init() {
            self.kripke.set_init(root, tree);
            stale_costs = true;
        }
        if tree && stale_costs {
            self.kripke.recompute_costs();
        }

        self.last_stats = grow(&mut self.kripke, &self.ctx, &mut self.sampler, self.samples_per_iter)?;
        Ok(extract_optimal(&self.kripke, self.ctx.params.step))
    }

    /// Relabels states and re-scores cached trajectories under the current
    /// world. With `dirty`, only transitions whose swept box meets one of
    /// the boxes are re-scored.
    fn refresh_weights(&mut self, dirty: Option<&[Aabb]>) -> Result<(), KripkeError> {
        for id in 0..self.kripke.len() {
            let l = self.ctx.world.label(self.kripke.state(id));
            self.kripke.set_label(id, l);
        }
        let reach = self.ctx.world.vehicle().reach();
        let todo: Vec<(usize, usize)> = self
            .kripke
            .edges()
            .filter(|(_, _, t)| {
                dirty.is_none_or(|boxes| {
                    let b = t.trajectory.trajectory.bounds(reach);
                    boxes.iter().any(|d| d.intersects(&b))
                })
            })
            .map(|(s, d, _)| (s, d))
            .collect();
        let ctx = &self.ctx;
        let k = &self.kripke;
        let rescore = |&(s, d): &(usize, usize)| -> Result<(CostVector, TimedWord), KripkeError> {
            let traj = &k.transition(s, d).expect("listed transition").trajectory.trajectory;
            let word = timed_word(traj, &ctx.world, ctx.params.step, ctx.params.refine_tol);
            Ok((ctx.spec.cost(&word, traj.total_time())?, word))
        };
        let fresh: Vec<(CostVector, TimedWord)> = if ctx.parallel {
            todo.par_iter().map(rescore).collect::<Result<_, _>>()?
        } else {
            todo.iter().map(rescore).collect::<Result<_, _>>()?
        };
        for ((s, d), (w, word)) in todo.into_iter().zip(fresh) {
            self.kripke.set_weight(s, d, w, word);
        }
        Ok(())
    }
}

/// Bounding boxes of every region that differs between two worlds, in
/// both its old and new shape.
fn dirty_boxes(old: &WorldModel, new: &WorldModel) -> Vec<Aabb> {
    old.changed_regions(new)
        .into_iter()
        .flat_map(|i| {
            [old.regions().get(i), new.regions().get(i)]
                .into_iter()
                .flatten()
                .map(|r| *r.polygon.bbox())
        })
        .collect()
}
