//! Closed simple polygons in the plane.
//!
//! Boundaries belong to the set: polygons that only touch intersect, and an
//! inner polygon whose boundary runs along the outer boundary is contained.

use thiserror::Error;

const EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("polygon vertex {0} is not finite")]
    NonFinite(usize),
    #[error("polygon is degenerate (area {0})")]
    Degenerate(f64),
    #[error("polygon edges {0} and {1} intersect")]
    SelfIntersecting(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }
}

/// Axis-aligned bounding box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aabb {
    pub min: Point,
    pub max: Point,
}

impl Aabb {
    pub fn of(points: &[Point]) -> Self {
        let mut min = Point::new(f64::INFINITY, f64::INFINITY);
        let mut max = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in points {
            min.x = min.x.min(p.x);
            min.y = min.y.min(p.y);
            max.x = max.x.max(p.x);
            max.y = max.y.max(p.y);
        }
        Aabb { min, max }
    }

    pub fn intersects(&self, other: &Aabb) -> bool {
        self.min.x <= other.max.x
            && other.min.x <= self.max.x
            && self.min.y <= other.max.y
            && other.min.y <= self.max.y
    }

    pub fn contains(&self, other: &Aabb) -> bool {
        self.min.x <= other.min.x
            && self.min.y <= other.min.y
            && other.max.x <= self.max.x
            && other.max.y <= self.max.y
    }

    pub fn contains_point(&self, p: Point) -> bool {
        self.min.x <= p.x && p.x <= self.max.x && self.min.y <= p.y && p.y <= self.max.y
    }

    pub fn union(&self, other: &Aabb) -> Aabb {
        Aabb {
            min: Point::new(self.min.x.min(other.min.x), self.min.y.min(other.min.y)),
            max: Point::new(self.max.x.max(other.max.x), self.max.y.max(other.max.y)),
        }
    }

    pub fn inflate(&self, by: f64) -> Aabb {
        Aabb {
            min: Point::new(self.min.x - by, self.min.y - by),
            max: Point::new(self.max.x + by, self.max.y + by),
        }
    }
}

/// A simple polygon with counter-clockwise vertex order.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    vertices: Vec<Point>,
    convex: bool,
    bbox: Aabb,
}

fn cross(o: Point, a: Point, b: Point) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

fn signed_area(v: &[Point]) -> f64 {
    let n = v.len();
    (0..n)
        .map(|i| {
            let (a, b) = (v[i], v[(i + 1) % n]);
            a.x * b.y - b.x * a.y
        })
        .sum::<f64>()
        / 2.0
}

fn on_segment(p: Point, a: Point, b: Point) -> bool {
    p.x >= a.x.min(b.x) - EPS
        && p.x <= a.x.max(b.x) + EPS
        && p.y >= a.y.min(b.y) - EPS
        && p.y <= a.y.max(b.y) + EPS
}

fn scale(a: Point, b: Point) -> f64 {
    ((b.x - a.x).abs() + (b.y - a.y).abs()).max(1.0)
}

/// Closed segment intersection, including touching and collinear overlap.
pub fn segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool {
    let tol = EPS * scale(a, b) * scale(c, d);
    let d1 = cross(c, d, a);
    let d2 = cross(c, d, b);
    let d3 = cross(a, b, c);
    let d4 = cross(a, b, d);
    if ((d1 > tol && d2 < -tol) || (d1 < -tol && d2 > tol))
        && ((d3 > tol && d4 < -tol) || (d3 < -tol && d4 > tol))
    {
        return true;
    }
    (d1.abs() <= tol && on_segment(a, c, d))
        || (d2.abs() <= tol && on_segment(b, c, d))
        || (d3.abs() <= tol && on_segment(c, a, b))
        || (d4.abs() <= tol && on_segment(d, a, b))
}

/// Segments cross at a single interior point of both.
fn segments_cross_properly(a: Point, b: Point, c: Point, d: Point) -> bool {
    let tol = EPS * scale(a, b) * scale(c, d);
    let d1 = cross(c, d, a);
    let d2 = cross(c, d, b);
    let d3 = cross(a, b, c);
    let d4 = cross(a, b, d);
    ((d1 > tol && d2 < -tol) || (d1 < -tol && d2 > tol))
        && ((d3 > tol && d4 < -tol) || (d3 < -tol && d4 > tol))
}

impl Polygon {
    pub fn new(vertices: Vec<Point>) -> Result<Self, GeometryError> {
        let mut vertices = vertices;
        if vertices.len() >= 2 && vertices.first() == vertices.last() {
            vertices.pop();
        }
        if vertices.len() < 3 {
            return Err(GeometryError::TooFewVertices(vertices.len()));
        }
        if let Some(i) = vertices
            .iter()
            .position(|p| !(p.x.is_finite() && p.y.is_finite()))
        {
            return Err(GeometryError::NonFinite(i));
        }
        let area = signed_area(&vertices);
        let bbox = Aabb::of(&vertices);
        let extent = (bbox.max.x - bbox.min.x).max(bbox.max.y - bbox.min.y).max(1.0);
        if !(area.abs() > EPS * extent * extent) {
            return Err(GeometryError::Degenerate(area));
        }
        if area < 0.0 {
            vertices.reverse();
        }
        let n = vertices.len();
        for i in 0..n {
            for j in (i + 1)..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                let (a, b) = (vertices[i], vertices[(i + 1) % n]);
                let (c, d) = (vertices[j], vertices[(j + 1) % n]);
                if adjacent {
                    // adjacent edges share one vertex; they must not fold back
                    let (shared, p, q) = if j == i + 1 { (b, a, d) } else { (a, b, c) };
                    let tol = EPS * scale(p, shared) * scale(shared, q);
                    if cross(shared, p, q).abs() <= tol
                        && (p.x - shared.x) * (q.x - shared.x) + (p.y - shared.y) * (q.y - shared.y)
                            > 0.0
                    {
                        return Err(GeometryError::SelfIntersecting(i, j));
                    }
                } else if segments_intersect(a, b, c, d) {
                    return Err(GeometryError::SelfIntersecting(i, j));
                }
            }
        }
        let convex = (0..n).all(|i| {
            cross(vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]) >= -EPS
        });
        Ok(Polygon {
            vertices,
            convex,
            bbox,
        })
    }

    /// Builds a polygon from vertices already known to be convex and CCW.
    pub(crate) fn convex_unchecked(vertices: Vec<Point>) -> Self {
        let bbox = Aabb::of(&vertices);
        Polygon {
            vertices,
            convex: true,
            bbox,
        }
    }

    /// Axis-aligned rectangle.
    pub fn rectangle(min: Point, max: Point) -> Result<Self, GeometryError> {
        Polygon::new(vec![
            min,
            Point::new(max.x, min.y),
            max,
            Point::new(min.x, max.y),
        ])
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn is_convex(&self) -> bool {
        self.convex
    }

    pub fn bbox(&self) -> &Aabb {
        &self.bbox
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Point in the closed polygon.
    pub fn contains_point(&self, p: Point) -> bool {
        let b = &self.bbox;
        if p.x < b.min.x - EPS || p.x > b.max.x + EPS || p.y < b.min.y - EPS || p.y > b.max.y + EPS
        {
            return false;
        }
        if self.convex {
            return self.edges().all(|(a, c)| cross(a, c, p) >= -EPS * scale(a, c));
        }
        let mut inside = false;
        for (a, c) in self.edges() {
            if cross(a, c, p).abs() <= EPS * scale(a, c) && on_segment(p, a, c) {
                return true;
            }
            if (a.y > p.y) != (c.y > p.y) {
                let x = a.x + (p.y - a.y) * (c.x - a.x) / (c.y - a.y);
                if p.x < x {
                    inside = !inside;
                }
            }
        }
        inside
    }
}

fn project(poly: &Polygon, nx: f64, ny: f64) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in &poly.vertices {
        let d = v.x * nx + v.y * ny;
        lo = lo.min(d);
        hi = hi.max(d);
    }
    (lo, hi)
}

fn separated_along_edges_of(axes: &Polygon, a: &Polygon, b: &Polygon) -> bool {
    axes.edges().any(|(p, q)| {
        let (nx, ny) = (q.y - p.y, p.x - q.x);
        let (alo, ahi) = project(a, nx, ny);
        let (blo, bhi) = project(b, nx, ny);
        let tol = EPS * (nx.abs() + ny.abs()).max(1.0);
        ahi < blo - tol || bhi < alo - tol
    })
}

/// The closed polygons share at least one point.
pub fn polygon_intersects(a: &Polygon, b: &Polygon) -> bool {
    if !a.bbox.intersects(&b.bbox) {
        return false;
    }
    if a.convex && b.convex {
        return !separated_along_edges_of(a, a, b) && !separated_along_edges_of(b, a, b);
    }
    for (p, q) in a.edges() {
        for (r, s) in b.edges() {
            if segments_intersect(p, q, r, s) {
                return true;
            }
        }
    }
    b.contains_point(a.vertices[0]) || a.contains_point(b.vertices[0])
}

/// Every point of `inner` lies in the closed polygon `outer`.
pub fn polygon_contains(outer: &Polygon, inner: &Polygon) -> bool {
    if !outer.bbox.inflate(EPS).contains(&inner.bbox) {
        return false;
    }
    if !inner.vertices.iter().all(|&v| outer.contains_point(v)) {
        return false;
    }
    if outer.convex {
        return true;
    }
    for (p, q) in inner.edges() {
        let mid = Point::new((p.x + q.x) / 2.0, (p.y + q.y) / 2.0);
        if !outer.contains_point(mid) {
            return false;
        }
        for (r, s) in outer.edges() {
            if segments_cross_properly(p, q, r, s) {
                return false;
            }
        }
    }
    // a reflex notch of `outer` may poke into `inner` without any crossing
    // at vertices; reject if an outer vertex sits strictly inside inner
    outer.vertices.iter().all(|&v| {
        !inner.contains_point(v) || inner.edges().any(|(a, b)| {
            cross(a, b, v).abs() <= EPS * scale(a, b) && on_segment(v, a, b)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn square(x: f64, y: f64, s: f64) -> Polygon {
        Polygon::rectangle(Point::new(x, y), Point::new(x + s, y + s)).unwrap()
    }

    #[test]
    fn intersect_and_contain_examples() {
        assert!(!polygon_intersects(&square(0., 0., 1.), &square(4., 0., 1.)));
        assert!(polygon_contains(&square(0., 0., 10.), &square(2., 2., 1.)));
        assert!(polygon_intersects(&square(0., 0., 1.), &square(1., 0., 1.)));
        assert!(polygon_intersects(&square(0., 0., 1.), &square(1., 1., 1.)));
        assert!(polygon_contains(&square(0., 0., 2.), &square(0., 0., 1.)));
        assert!(!polygon_contains(&square(0., 0., 2.), &square(1.5, 0., 1.)));
    }

    #[test]
    fn rejects_degenerate_and_self_intersecting() {
        let p = |x, y| Point::new(x, y);
        assert!(matches!(
            Polygon::new(vec![p(0., 0.), p(1., 0.), p(2., 0.)]),
            Err(GeometryError::Degenerate(_))
        ));
        assert!(matches!(
            Polygon::new(vec![p(0., 0.), p(1., 0.)]),
            Err(GeometryError::TooFewVertices(2))
        ));
        // bow tie
        assert!(matches!(
            Polygon::new(vec![p(0., 0.), p(2., 2.), p(2., 0.), p(0., 1.)]),
            Err(GeometryError::SelfIntersecting(..))
        ));
    }

    #[test]
    fn orientation_is_normalized() {
        let cw = Polygon::new(vec![
            Point::new(0., 0.),
            Point::new(0., 1.),
            Point::new(1., 1.),
            Point::new(1., 0.),
        ])
        .unwrap();
        assert!(cw.area() > 0.0);
        assert!(cw.is_convex());
    }

    fn l_shape() -> Polygon {
        // concave: a 4x4 square with the top-right 2x2 quadrant removed
        Polygon::new(vec![
            Point::new(0., 0.),
            Point::new(4., 0.),
            Point::new(4., 2.),
            Point::new(2., 2.),
            Point::new(2., 4.),
            Point::new(0., 4.),
        ])
        .unwrap()
    }

    #[test]
    fn concave_polygons() {
        let l = l_shape();
        assert!(!l.is_convex());
        assert!(l.contains_point(Point::new(1., 3.)));
        assert!(!l.contains_point(Point::new(3., 3.)));
        assert!(l.contains_point(Point::new(3., 2.)));
        assert!(!polygon_intersects(&l, &square(2.5, 2.5, 1.)));
        assert!(polygon_intersects(&l, &square(1.5, 1.5, 1.)));
        assert!(polygon_contains(&l, &square(0.5, 0.5, 1.)));
        // straddles the notch: all four corners inside, but the notch corner pokes in
        let straddle = Polygon::new(vec![
            Point::new(1., 1.),
            Point::new(3., 1.),
            Point::new(3., 2.),
            Point::new(1.5, 3.5),
        ])
        .unwrap();
        assert!(!polygon_contains(&l, &straddle));
    }

    #[test]
    fn nested_clearance_zones_are_monotone() {
        // shrinking an overlap region can only remove overlaps
        let big = square(0., 0., 4.);
        let small = square(1., 1., 2.);
        for i in 0..40 {
            let probe = square(-1. + 0.15 * f64::from(i), 1.5, 0.5);
            if polygon_intersects(&small, &probe) {
                assert!(polygon_intersects(&big, &probe));
            }
        }
    }

    proptest! {
        #[test]
        fn convex_and_general_paths_agree(
            ax in -3.0f64..3.0, ay in -3.0f64..3.0, aw in 0.1f64..3.0, ah in 0.1f64..3.0,
            bx in -3.0f64..3.0, by in -3.0f64..3.0, bw in 0.1f64..3.0, bh in 0.1f64..3.0,
        ) {
            let a = Polygon::rectangle(Point::new(ax, ay), Point::new(ax + aw, ay + ah)).unwrap();
            let b = Polygon::rectangle(Point::new(bx, by), Point::new(bx + bw, by + bh)).unwrap();
            let expect = ax <= bx + bw && bx <= ax + aw && ay <= by + bh && by <= ay + ah;
            prop_assert_eq!(polygon_intersects(&a, &b), expect);
            let mut ga = a.clone();
            ga.convex = false;
            let mut gb = b.clone();
            gb.convex = false;
            prop_assert_eq!(polygon_intersects(&ga, &gb), expect);
            let contained = ax <= bx && ay <= by && bx + bw <= ax + aw && by + bh <= ay + ah;
            prop_assert_eq!(polygon_contains(&a, &b), contained);
            prop_assert_eq!(polygon_contains(&ga, &b), contained);
        }
    }
}
