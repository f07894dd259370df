//! Vehicle poses, named regions and the labeling function.

pub mod geometry;

use std::f64::consts::PI;

use thiserror::Error;

use crate::fltl::{Alphabet, Label};
pub use geometry::{polygon_contains, polygon_intersects, Aabb, GeometryError, Point, Polygon};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WorldError {
    #[error("no region defines proposition `{0}`")]
    MissingRegion(String),
    #[error("region `{0}` is not a proposition of the alphabet")]
    UnknownRegion(String),
    #[error("region `{0}` is defined more than once")]
    DuplicateRegion(String),
    #[error("vehicle dimensions must be positive")]
    InvalidVehicle,
}

/// Wraps an angle into `(-pi, pi]`.
pub fn normalize_angle(theta: f64) -> f64 {
    let mut t = theta % (2.0 * PI);
    if t <= -PI {
        t += 2.0 * PI;
    } else if t > PI {
        t -= 2.0 * PI;
    }
    t
}

/// Rear-axle position and heading.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pose {
    pub x: f64,
    pub y: f64,
    pub theta: f64,
}

impl Pose {
    pub fn new(x: f64, y: f64, theta: f64) -> Self {
        Pose {
            x,
            y,
            theta: normalize_angle(theta),
        }
    }

    pub fn position(&self) -> Point {
        Point::new(self.x, self.y)
    }

    /// Euclidean distance in `(x, y, theta)` with the heading difference
    /// wrapped and scaled by `theta_weight` meters per radian.
    pub fn distance(&self, other: &Pose, theta_weight: f64) -> f64 {
        let dth = normalize_angle(self.theta - other.theta) * theta_weight;
        ((self.x - other.x).powi(2) + (self.y - other.y).powi(2) + dth * dth).sqrt()
    }
}

/// How a region's proposition is decided from the vehicle footprint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionMode {
    /// Footprint lies entirely inside the region.
    Containment,
    /// Footprint and region share a point.
    Overlap,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    pub name: String,
    pub polygon: Polygon,
    pub mode: RegionMode,
}

/// Rectangular footprint around the rear axle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vehicle {
    pub half_length: f64,
    pub half_width: f64,
    /// Distance from the rear axle forward to the footprint center.
    pub rear_axle_offset: f64,
}

impl Default for Vehicle {
    fn default() -> Self {
        Vehicle {
            half_length: 2.4,
            half_width: 0.9,
            rear_axle_offset: 1.4,
        }
    }
}

impl Vehicle {
    pub fn validate(&self) -> Result<(), WorldError> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if ok(self.half_length) && ok(self.half_width) && self.rear_axle_offset.is_finite() {
            Ok(())
        } else {
            Err(WorldError::InvalidVehicle)
        }
    }

    /// Radius of a disc around the rear axle that covers the footprint.
    pub fn reach(&self) -> f64 {
        (self.rear_axle_offset.abs() + self.half_length).hypot(self.half_width)
    }
}

/// Footprint rectangle at `pose`, counter-clockwise from the rear-right corner.
pub fn footprint(pose: &Pose, vehicle: &Vehicle) -> Polygon {
    let (s, c) = pose.theta.sin_cos();
    let cx = pose.x + vehicle.rear_axle_offset * c;
    let cy = pose.y + vehicle.rear_axle_offset * s;
    let (hl, hw) = (vehicle.half_length, vehicle.half_width);
    let corner = |l: f64, w: f64| Point::new(cx + l * c - w * s, cy + l * s + w * c);
    Polygon::convex_unchecked(vec![
        corner(-hl, -hw),
        corner(hl, -hw),
        corner(hl, hw),
        corner(-hl, hw),
    ])
}

/// Goal set over poses.
#[derive(Debug, Clone, PartialEq)]
pub enum Goal {
    /// Rear axle at `x >= min_x`.
    MinX(f64),
    /// Rear axle inside the closed polygon.
    Region(Polygon),
}

impl Goal {
    pub fn contains(&self, pose: &Pose) -> bool {
        match self {
            Goal::MinX(c) => pose.x >= *c,
            Goal::Region(p) => p.contains_point(pose.position()),
        }
    }
}

/// Regions indexed by the alphabet's bit positions, plus the vehicle.
#[derive(Debug, Clone, PartialEq)]
pub struct WorldModel {
    alphabet: Alphabet,
    /// `regions[i]` defines proposition `i`.
    regions: Vec<Region>,
    vehicle: Vehicle,
}

impl WorldModel {
    /// Requires exactly one region per proposition of `alphabet`.
    pub fn new(alphabet: Alphabet, regions: Vec<Region>, vehicle: Vehicle) -> Result<Self, WorldError> {
        vehicle.validate()?;
        let mut slots: Vec<Option<Region>> = vec![None; alphabet.len()];
        for r in regions {
            let i = alphabet
                .index_of(&r.name)
                .ok_or_else(|| WorldError::UnknownRegion(r.name.clone()))?;
            if slots[i].is_some() {
                return Err(WorldError::DuplicateRegion(r.name));
            }
            slots[i] = Some(r);
        }
        let regions = slots
            .into_iter()
            .enumerate()
            .map(|(i, r)| r.ok_or_else(|| WorldError::MissingRegion(alphabet.names()[i].clone())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(WorldModel {
            alphabet,
            regions,
            vehicle,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn vehicle(&self) -> &Vehicle {
        &self.vehicle
    }

    pub fn region(&self, name: &str) -> Option<&Region> {
        self.alphabet.index_of(name).map(|i| &self.regions[i])
    }

    /// Propositions that hold with the vehicle at `pose`.
    pub fn label(&self, pose: &Pose) -> Label {
        let fp = footprint(pose, &self.vehicle);
        let mut label = Label::EMPTY;
        for (i, r) in self.regions.iter().enumerate() {
            let holds = match r.mode {
                RegionMode::Overlap => polygon_intersects(&fp, &r.polygon),
                RegionMode::Containment => polygon_contains(&r.polygon, &fp),
            };
            if holds {
                label = label.with(i);
            }
        }
        label
    }

    /// Indices of regions whose polygon or mode differs between the two worlds.
    pub fn changed_regions(&self, other: &WorldModel) -> Vec<usize> {
        (0..self.regions.len().max(other.regions.len()))
            .filter(|&i| self.regions.get(i) != other.regions.get(i))
            .collect()
    }
}
