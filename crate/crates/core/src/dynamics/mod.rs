//! Unit-speed Dubins car: steering, pose evaluation and timed words.

pub mod dubins;

use thiserror::Error;

use crate::fltl::Label;
use crate::unsafety::{TimedLetter, TimedWord};
use crate::world::{Aabb, Point, Pose, WorldModel};
pub use dubins::{Segment, SegmentKind};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DynamicsError {
    #[error("time {t} outside [0, {total}]")]
    TimeOutOfRange { t: f64, total: f64 },
}

/// Path driven at unit speed, so time equals arc length.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub start: Pose,
    pub segments: Vec<Segment>,
    pub radius: f64,
}

impl Trajectory {
    pub fn total_time(&self) -> f64 {
        self.segments.iter().map(|s| s.length).sum()
    }

    pub fn end(&self) -> Pose {
        dubins::end_pose(&self.start, &self.segments, self.radius)
    }

    /// Rear-axle positions spaced at most `step` apart, endpoints included.
    pub fn polyline(&self, step: f64) -> Vec<Point> {
        let total = self.total_time();
        let n = (total / step).ceil().max(1.0) as usize;
        (0..=n)
            .map(|k| {
                let t = if k == n { total } else { total * k as f64 / n as f64 };
                self.pose_at(t).position()
            })
            .collect()
    }

    /// Box around every position the rear axle visits, inflated by `margin`.
    pub fn bounds(&self, margin: f64) -> Aabb {
        let mut pts = vec![self.start.position()];
        let mut p = self.start;
        for s in &self.segments {
            let q = dubins::advance(&p, s.kind, s.length, self.radius);
            if s.kind != SegmentKind::Straight {
                // an arc stays inside the circle it lies on
                let (sin, cos) = p.theta.sin_cos();
                let sign = if s.kind == SegmentKind::Left { 1.0 } else { -1.0 };
                let c = Point::new(p.x - sign * self.radius * sin, p.y + sign * self.radius * cos);
                pts.push(Point::new(c.x - self.radius, c.y - self.radius));
                pts.push(Point::new(c.x + self.radius, c.y + self.radius));
            }
            pts.push(q.position());
            p = q;
        }
        Aabb::of(&pts).inflate(margin)
    }

    /// Pose at time `t`, clamping the last segment so `t = total_time`
    /// lands on the endpoint.
    fn pose_at(&self, t: f64) -> Pose {
        let mut p = self.start;
        let mut rest = t;
        let last = self.segments.len().saturating_sub(1);
        for (i, s) in self.segments.iter().enumerate() {
            if rest <= s.length || i == last {
                return dubins::advance(&p, s.kind, rest.min(s.length), self.radius);
            }
            p = dubins::advance(&p, s.kind, s.length, self.radius);
            rest -= s.length;
        }
        p
    }
}

/// Shortest Dubins path from `a` to `b`.
///
/// # Panics
/// If `turn_radius` is not positive and finite.
pub fn steer(a: &Pose, b: &Pose, turn_radius: f64) -> Trajectory {
    assert!(turn_radius.is_finite() && turn_radius > 0.0, "turn radius must be positive");
    Trajectory {
        start: *a,
        segments: dubins::shortest_path(a, b, turn_radius),
        radius: turn_radius,
    }
}

/// `x(t)` in closed form.
pub fn sample_pose(x: &Trajectory, t: f64) -> Result<Pose, DynamicsError> {
    let total = x.total_time();
    if !(0.0..=total).contains(&t) {
        return Err(DynamicsError::TimeOutOfRange { t, total });
    }
    Ok(x.pose_at(t))
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledTrajectory {
    pub trajectory: Trajectory,
    pub word: TimedWord,
}

/// Timed word of `x` under the labeling of `world`.
///
/// Labels are sampled on a uniform grid no coarser than `step`. Each change
/// between grid points is bisected down to `refine_tol`, and further changes
/// inside the same interval are searched for to its right. Letters shorter
/// than `refine_tol` are folded into a neighbor and equal neighbors merged.
///
/// # Panics
/// Unless `step > refine_tol > 0`.
pub fn timed_word(x: &Trajectory, world: &WorldModel, step: f64, refine_tol: f64) -> TimedWord {
    assert!(refine_tol > 0.0 && step > refine_tol, "need step > refine_tol > 0");
    let total = x.total_time();
    let label = |t: f64| world.label(&x.pose_at(t));

    let first = label(0.0);
    let mut starts: Vec<(f64, Label)> = vec![(0.0, first)];
    if total > 0.0 {
        let n = (total / step).ceil().max(1.0) as usize;
        let grid = |k: usize| if k == n { total } else { total * k as f64 / n as f64 };
        let mut cur = first;
        for k in 1..=n {
            let t_hi = grid(k);
            let l_hi = label(t_hi);
            let mut lo = grid(k - 1);
            while cur != l_hi {
                let (mut hi, mut l_at_hi) = (t_hi, l_hi);
                while hi - lo > refine_tol {
                    let mid = 0.5 * (lo + hi);
                    let l = label(mid);
                    if l == cur {
                        lo = mid;
                    } else {
                        hi = mid;
                        l_at_hi = l;
                    }
                }
                starts.push((hi, l_at_hi));
                cur = l_at_hi;
                lo = hi;
            }
        }
    }

    let mut letters: Vec<TimedLetter> = starts
        .iter()
        .enumerate()
        .map(|(i, &(t, label))| {
            let end = starts.get(i + 1).map_or(total, |s| s.0);
            TimedLetter {
                label,
                duration: end - t,
            }
        })
        .collect();

    merge_letters(&mut letters, refine_tol);
    let head: f64 = letters[..letters.len() - 1].iter().map(|l| l.duration).sum();
    let last = letters.len() - 1;
    letters[last].duration = (total - head).max(0.0);
    for _ in 0..4 {
        let sum: f64 = letters.iter().map(|l| l.duration).sum();
        if sum == total {
            break;
        }
        letters[last].duration = (letters[last].duration + (total - sum)).max(0.0);
    }
    TimedWord::new(letters).expect("timed word of a trajectory is nonempty and finite")
}

fn merge_letters(letters: &mut Vec<TimedLetter>, min_dwell: f64) {
    let mut out: Vec<TimedLetter> = Vec::with_capacity(letters.len());
    let mut carry = 0.0;
    let mut seen = letters.first().map_or(Label::EMPTY, |l| l.label);
    for l in letters.drain(..) {
        seen = l.label;
        match out.last_mut() {
            None if l.duration < min_dwell => carry += l.duration,
            None => out.push(TimedLetter {
                label: l.label,
                duration: l.duration + carry,
            }),
            Some(prev) if prev.label == l.label || l.duration < min_dwell => {
                prev.duration += l.duration;
            }
            Some(_) => out.push(l),
        }
    }
    if out.is_empty() {
        out.push(TimedLetter {
            label: seen,
            duration: carry,
        });
    }
    *letters = out;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fltl::Alphabet;
    use crate::world::{Polygon, Region, RegionMode, Vehicle};
    use std::f64::consts::PI;

    #[test]
    fn sample_pose_endpoints() {
        let x = steer(&Pose::new(0., 0., 0.), &Pose::new(5., 0., 0.), 1.0);
        assert_eq!(sample_pose(&x, 0.0).unwrap(), Pose::new(0., 0., 0.));
        let end = sample_pose(&x, 5.0).unwrap();
        assert!((end.x - 5.0).abs() < 1e-12 && end.y.abs() < 1e-12);
        assert!(sample_pose(&x, 5.0 + 1e-9).is_err());
        assert!(sample_pose(&x, -1e-9).is_err());
    }

    #[test]
    fn zero_length_trajectory() {
        let p = Pose::new(1., 1., 0.);
        let x = steer(&p, &p, 1.0);
        assert_eq!(x.total_time(), 0.0);
        assert_eq!(sample_pose(&x, 0.0).unwrap(), p);
    }

    #[test]
    fn half_circle_midpoint_matches_ode() {
        let x = steer(&Pose::new(0., 0., 0.), &Pose::new(0., 2., PI), 1.0);
        let mid = sample_pose(&x, PI / 2.0).unwrap();
        // explicit midpoint integration of x' = cos th, y' = sin th, th' = 1
        let h = 1e-4;
        let steps = (PI / 2.0 / h).round() as usize;
        let h = PI / 2.0 / steps as f64;
        let (mut px, mut py, mut th) = (0.0f64, 0.0f64, 0.0f64);
        for _ in 0..steps {
            let tm = th + 0.5 * h;
            px += h * tm.cos();
            py += h * tm.sin();
            th += h;
        }
        assert!((mid.x - px).abs() < 1e-6 && (mid.y - py).abs() < 1e-6);
        assert!((mid.theta - th).abs() < 1e-6);
        assert!((mid.x - 1.0).abs() < 1e-9 && (mid.y - 1.0).abs() < 1e-9);
    }

    #[test]
    fn bounds_cover_polyline() {
        let x = steer(&Pose::new(0., 0., 0.5), &Pose::new(-3., 2., 2.5), 1.0);
        let b = x.bounds(0.0);
        for p in x.polyline(0.01) {
            assert!(b.contains_point(p), "{p:?} outside {b:?}");
        }
    }

    fn lane_world() -> WorldModel {
        let a = Alphabet::new(["lane", "road"]).unwrap();
        let rect = |x0, y0, x1, y1| Polygon::rectangle(Point::new(x0, y0), Point::new(x1, y1)).unwrap();
        WorldModel::new(
            a,
            vec![
                Region { name: "lane".into(), polygon: rect(-10., -3.5, 60., 0.), mode: RegionMode::Containment },
                Region { name: "road".into(), polygon: rect(-10., -3.5, 60., 3.5), mode: RegionMode::Containment },
            ],
            Vehicle::default(),
        )
        .unwrap()
    }

    #[test]
    fn single_letter_inside_one_region_set() {
        let w = lane_world();
        let x = steer(&Pose::new(0., -1.75, 0.), &Pose::new(20., -1.75, 0.), 1.0);
        let word = timed_word(&x, &w, 0.1, 1e-4);
        assert_eq!(word.len(), 1);
        assert_eq!(word.total_duration(), 20.0);
        let z = steer(&Pose::new(0., -1.75, 0.), &Pose::new(0., -1.75, 0.), 1.0);
        let word = timed_word(&z, &w, 0.1, 1e-4);
        assert_eq!(word.len(), 1);
        assert_eq!(word.letters()[0].duration, 0.0);
        assert_eq!(word.letters()[0].label, w.label(&Pose::new(0., -1.75, 0.)));
    }

    /// Letter sequence by dense sampling, with change times at sample points.
    fn dense_oracle(x: &Trajectory, w: &WorldModel, h: f64) -> Vec<(Label, f64)> {
        let total = x.total_time();
        let n = (total / h).ceil() as usize;
        let mut out: Vec<(Label, f64)> = vec![];
        for k in 0..=n {
            let t = (k as f64 * h).min(total);
            let l = w.label(&sample_pose(x, t).unwrap());
            if out.last().is_none_or(|(p, _)| *p != l) {
                out.push((l, t));
            }
        }
        out
    }

    #[test]
    fn lane_crossing_matches_dense_sampling() {
        let w = lane_world();
        let x = Trajectory {
            start: Pose::new(0., -1.75, 0.3),
            segments: vec![Segment { kind: SegmentKind::Straight, length: 12.0 }],
            radius: 1.0,
        };
        let word = timed_word(&x, &w, 0.1, 1e-4);
        let oracle = dense_oracle(&x, &w, 0.001);
        assert_eq!(word.len(), 2);
        assert_eq!(oracle.len(), 2);
        let l = word.labels();
        assert_eq!((l[0].0 ^ l[1].0).count_ones(), 1);
        assert_eq!(l[0], oracle[0].0);
        assert_eq!(l[1], oracle[1].0);
        assert!((word.letters()[0].duration - oracle[1].1).abs() < 1e-3 + 1e-4);
        assert_eq!(word.total_duration(), x.total_time());
    }

    #[test]
    fn finer_grid_keeps_letter_sequence() {
        let w = lane_world();
        let x = steer(&Pose::new(0., -1.75, 0.), &Pose::new(15., 1.75, 0.), 1.0);
        let coarse = timed_word(&x, &w, 0.1, 1e-4);
        let fine = timed_word(&x, &w, 0.01, 1e-5);
        assert_eq!(coarse.labels(), fine.labels());
        for (a, b) in coarse.letters().iter().zip(fine.letters()) {
            assert!((a.duration - b.duration).abs() < 2e-4);
        }
    }

    #[test]
    fn short_letters_are_folded() {
        let l = |b: u64, d: f64| TimedLetter { label: Label(b), duration: d };
        let mut v = vec![l(1, 1e-6), l(2, 1.0), l(3, 1e-6), l(2, 2.0), l(4, 0.5)];
        merge_letters(&mut v, 1e-4);
        assert_eq!(v.len(), 2);
        assert_eq!(v[0].label, Label(2));
        assert!((v[0].duration - (3.0 + 2e-6)).abs() < 1e-12);
        assert_eq!(v[1], l(4, 0.5));
    }
}
