//! Shortest paths for a forward-only car with bounded curvature.
//!
//! Closed-form solutions for the six words LSL, RSR, LSR, RSL, RLR and LRL
//! in coordinates normalized by the turning radius.

use std::f64::consts::TAU;

use crate::world::Pose;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SegmentKind {
    Left,
    Straight,
    Right,
}

/// One piece of a path, with its length in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub kind: SegmentKind,
    pub length: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DubinsWord {
    Lsl,
    Rsr,
    Lsr,
    Rsl,
    Rlr,
    Lrl,
}

impl DubinsWord {
    pub const ALL: [DubinsWord; 6] = [
        DubinsWord::Lsl,
        DubinsWord::Rsr,
        DubinsWord::Lsr,
        DubinsWord::Rsl,
        DubinsWord::Rlr,
        DubinsWord::Lrl,
    ];

    pub fn kinds(self) -> [SegmentKind; 3] {
        use SegmentKind::{Left as L, Right as R, Straight as S};
        match self {
            DubinsWord::Lsl => [L, S, L],
            DubinsWord::Rsr => [R, S, R],
            DubinsWord::Lsr => [L, S, R],
            DubinsWord::Rsl => [R, S, L],
            DubinsWord::Rlr => [R, L, R],
            DubinsWord::Lrl => [L, R, L],
        }
    }
}

fn mod2pi(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    // values a rounding error below a full turn stand for zero
    if TAU - r < 1e-10 {
        0.0
    } else {
        r
    }
}

/// Pose after driving `s` meters along a segment of the given kind.
pub fn advance(p: &Pose, kind: SegmentKind, s: f64, radius: f64) -> Pose {
    let (sin0, cos0) = p.theta.sin_cos();
    match kind {
        SegmentKind::Straight => Pose {
            x: p.x + s * cos0,
            y: p.y + s * sin0,
            theta: p.theta,
        },
        SegmentKind::Left => {
            let th = p.theta + s / radius;
            let (sin1, cos1) = th.sin_cos();
            Pose::new(
                p.x + radius * (sin1 - sin0),
                p.y - radius * (cos1 - cos0),
                th,
            )
        }
        SegmentKind::Right => {
            let th = p.theta - s / radius;
            let (sin1, cos1) = th.sin_cos();
            Pose::new(
                p.x - radius * (sin1 - sin0),
                p.y + radius * (cos1 - cos0),
                th,
            )
        }
    }
}

struct Normalized {
    alpha: f64,
    beta: f64,
    d: f64,
    sa: f64,
    sb: f64,
    ca: f64,
    cb: f64,
    c_ab: f64,
}

impl Normalized {
    fn new(a: &Pose, b: &Pose, radius: f64) -> Self {
        let dx = b.x - a.x;
        let dy = b.y - a.y;
        let d = dx.hypot(dy) / radius;
        let theta = mod2pi(dy.atan2(dx));
        let alpha = mod2pi(a.theta - theta);
        let beta = mod2pi(b.theta - theta);
        Normalized {
            alpha,
            beta,
            d,
            sa: alpha.sin(),
            sb: beta.sin(),
            ca: alpha.cos(),
            cb: beta.cos(),
            c_ab: (alpha - beta).cos(),
        }
    }

    /// Normalized segment lengths `(t, p, q)` for a word, if it exists.
    fn params(&self, word: DubinsWord) -> Option<[f64; 3]> {
        let Normalized {
            alpha,
            beta,
            d,
            sa,
            sb,
            ca,
            cb,
            c_ab,
        } = *self;
        let d_sq = d * d;
        match word {
            DubinsWord::Lsl => {
                let p_sq = 2.0 + d_sq - 2.0 * c_ab + 2.0 * d * (sa - sb);
                (p_sq >= 0.0).then(|| {
                    let tmp = (cb - ca).atan2(d + sa - sb);
                    [mod2pi(tmp - alpha), p_sq.sqrt(), mod2pi(beta - tmp)]
                })
            }
            DubinsWord::Rsr => {
                let p_sq = 2.0 + d_sq - 2.0 * c_ab + 2.0 * d * (sb - sa);
                (p_sq >= 0.0).then(|| {
                    let tmp = (ca - cb).atan2(d - sa + sb);
                    [mod2pi(alpha - tmp), p_sq.sqrt(), mod2pi(tmp - beta)]
                })
            }
            DubinsWord::Lsr => {
                let p_sq = -2.0 + d_sq + 2.0 * c_ab + 2.0 * d * (sa + sb);
                (p_sq >= 0.0).then(|| {
                    let p = p_sq.sqrt();
                    let tmp = (-ca - cb).atan2(d + sa + sb) - (-2.0f64).atan2(p);
                    [mod2pi(tmp - alpha), p, mod2pi(tmp - mod2pi(beta))]
                })
            }
            DubinsWord::Rsl => {
                let p_sq = -2.0 + d_sq + 2.0 * c_ab - 2.0 * d * (sa + sb);
                (p_sq >= 0.0).then(|| {
                    let p = p_sq.sqrt();
                    let tmp = (ca + cb).atan2(d - sa - sb) - 2.0f64.atan2(p);
                    [mod2pi(alpha - tmp), p, mod2pi(beta - tmp)]
                })
            }
            DubinsWord::Rlr => {
                let tmp = (6.0 - d_sq + 2.0 * c_ab + 2.0 * d * (sa - sb)) / 8.0;
                (tmp.abs() <= 1.0).then(|| {
                    let p = mod2pi(TAU - tmp.acos());
                    let phi = (ca - cb).atan2(d - sa + sb);
                    let t = mod2pi(alpha - phi + mod2pi(p / 2.0));
                    [t, p, mod2pi(alpha - beta - t + mod2pi(p))]
                })
            }
            DubinsWord::Lrl => {
                let tmp = (6.0 - d_sq + 2.0 * c_ab + 2.0 * d * (sb - sa)) / 8.0;
                (tmp.abs() <= 1.0).then(|| {
                    let p = mod2pi(TAU - tmp.acos());
                    let phi = (ca - cb).atan2(d + sa - sb);
                    let t = mod2pi(-alpha - phi + p / 2.0);
                    [t, p, mod2pi(mod2pi(beta) - alpha - t + mod2pi(p))]
                })
            }
        }
    }
}

/// Segments of `word` from `a` to `b`, or `None` when the word has no
/// solution for this pair.
pub fn word_path(a: &Pose, b: &Pose, radius: f64, word: DubinsWord) -> Option<[Segment; 3]> {
    let n = Normalized::new(a, b, radius);
    let params = n.params(word)?;
    let kinds = word.kinds();
    Some([0, 1, 2].map(|i| Segment {
        kind: kinds[i],
        length: params[i] * radius,
    }))
}

pub(crate) fn end_pose(start: &Pose, segments: &[Segment], radius: f64) -> Pose {
    segments
        .iter()
        .fold(*start, |p, s| advance(&p, s.kind, s.length, radius))
}

fn pose_error(a: &Pose, b: &Pose) -> f64 {
    let dth = crate::world::normalize_angle(a.theta - b.theta).abs();
    (a.x - b.x).hypot(a.y - b.y).max(dth)
}

/// Minimum-length path from `a` to `b`, with zero-length pieces dropped.
///
/// Candidates whose closed-form endpoint misses `b` by more than `1e-9`
/// (numerically ill-conditioned words) are discarded unless nothing else
/// remains.
pub fn shortest_path(a: &Pose, b: &Pose, radius: f64) -> Vec<Segment> {
    const ZERO: f64 = 1e-12;
    if (a.x - b.x).hypot(a.y - b.y) <= ZERO
        && crate::world::normalize_angle(a.theta - b.theta).abs() <= ZERO
    {
        return Vec::new();
    }
    let mut best: Option<(f64, [Segment; 3])> = None;
    let mut fallback: Option<(f64, [Segment; 3])> = None;
    for word in DubinsWord::ALL {
        let Some(segs) = word_path(a, b, radius, word) else {
            continue;
        };
        let len: f64 = segs.iter().map(|s| s.length).sum();
        if best.as_ref().is_some_and(|(l, _)| *l <= len) {
            continue;
        }
        let err = pose_error(&end_pose(a, &segs, radius), b);
        if err > 1e-9 {
            if fallback.as_ref().is_none_or(|(e, _)| err < *e) {
                fallback = Some((err, segs));
            }
            continue;
        }
        best = Some((len, segs));
    }
    let (_, segs) = best
        .or(fallback)
        .expect("at least one Dubins word always has a solution");
    segs.into_iter().filter(|s| s.length > ZERO).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn len(s: &[Segment]) -> f64 {
        s.iter().map(|s| s.length).sum()
    }

    #[test]
    fn straight_and_half_circle() {
        let s = shortest_path(&Pose::new(0., 0., 0.), &Pose::new(5., 0., 0.), 1.0);
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].kind, SegmentKind::Straight);
        assert!((s[0].length - 5.0).abs() < 1e-12);

        let s = shortest_path(&Pose::new(0., 0., 0.), &Pose::new(0., 2., PI), 1.0);
        assert!((len(&s) - PI).abs() < 1e-9, "{s:?}");
        assert!(s.iter().all(|seg| seg.kind == SegmentKind::Left));
    }

    #[test]
    fn zero_path_for_identical_poses() {
        let p = Pose::new(1.5, -2.0, 0.3);
        assert!(shortest_path(&p, &p, 1.0).is_empty());
    }

    #[test]
    fn radius_scales_lengths() {
        let a = Pose::new(0., 0., 0.3);
        let b = Pose::new(4., 3., -1.2);
        let l1 = len(&shortest_path(&a, &b, 1.0));
        let scaled = |p: &Pose| Pose::new(p.x * 2.0, p.y * 2.0, p.theta);
        let l2 = len(&shortest_path(&scaled(&a), &scaled(&b), 2.0));
        assert!((2.0 * l1 - l2).abs() < 1e-9);
    }

    #[test]
    fn turning_in_place_requires_a_loop() {
        // same position, reversed heading: needs at least a half turn plus offset
        let s = shortest_path(&Pose::new(0., 0., 0.), &Pose::new(0., 0., PI), 1.0);
        assert!(len(&s) > PI);
    }
}
