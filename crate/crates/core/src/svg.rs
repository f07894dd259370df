//! Static SVG plots of the graph, the chosen path and cost curves.

use std::fmt::Write as _;

use crate::io::GraphDump;
use crate::world::{Aabb, Point, WorldModel};

const PALETTE: [&str; 6] = ["#9ecae1", "#fdd0a2", "#c7e9c0", "#dadaeb", "#fcbba1", "#d9d9d9"];

struct Frame {
    bbox: Aabb,
    scale: f64,
    pad: f64,
}

impl Frame {
    fn x(&self, x: f64) -> f64 {
        self.pad + (x - self.bbox.min.x) * self.scale
    }

    fn y(&self, y: f64) -> f64 {
        self.pad + (self.bbox.max.y - y) * self.scale
    }

    fn points(&self, pts: &[Point]) -> String {
        pts.iter()
            .map(|p| format!("{:.2},{:.2}", self.x(p.x), self.y(p.y)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Regions, every transition, every state and the path on one canvas.
pub fn path_plot(world: &WorldModel, graph: &GraphDump, path: &[Point]) -> String {
    let mut bbox = world
        .regions()
        .iter()
        .map(|r| *r.polygon.bbox())
        .reduce(|a, b| a.union(&b))
        .unwrap_or(Aabb::of(&[Point::new(0., 0.), Point::new(1., 1.)]));
    for (_, p, _, _) in &graph.states {
        bbox = bbox.union(&Aabb::of(&[p.position()]));
    }
    let frame = Frame { bbox, scale: 20.0, pad: 10.0 };
    let w = frame.x(bbox.max.x) + frame.pad;
    let h = frame.y(bbox.min.y) + frame.pad;

    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.2} {h:.2}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    );
    for (i, r) in world.regions().iter().enumerate() {
        let _ = writeln!(
            s,
            "<polygon points=\"{}\" fill=\"{}\" fill-opacity=\"0.5\" stroke=\"#555\" stroke-width=\"0.5\"><title>{}</title></polygon>",
            frame.points(r.polygon.vertices()),
            PALETTE[i % PALETTE.len()],
            r.name
        );
    }
    for e in &graph.edges {
        let _ = writeln!(
            s,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"#6baed6\" stroke-width=\"0.4\" stroke-opacity=\"0.6\"/>",
            frame.points(&e.polyline)
        );
    }
    for (_, p, _, goal) in &graph.states {
        let _ = writeln!(
            s,
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"1.5\" fill=\"{}\"/>",
            frame.x(p.x),
            frame.y(p.y),
            if *goal { "#31a354" } else { "#08306b" }
        );
    }
    if path.len() > 1 {
        let _ = writeln!(
            s,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>",
            frame.points(path)
        );
    }
    s.push_str("</svg>\n");
    s
}

/// One panel per series, stacked vertically, iteration on the x axis.
/// Non-finite values are left as gaps.
pub fn series_plot(series: &[(String, Vec<(usize, f64)>)]) -> String {
    let (pw, ph, left, gap) = (480.0, 120.0, 60.0, 40.0);
    let height = series.len() as f64 * (ph + gap) + gap;
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0}\" height=\"{height:.0}\" font-family=\"sans-serif\" font-size=\"11\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
        pw + left + 20.0
    );
    let max_iter = series
        .iter()
        .flat_map(|(_, v)| v.iter().map(|p| p.0))
        .max()
        .unwrap_or(1)
        .max(1) as f64;
    for (k, (name, values)) in series.iter().enumerate() {
        let top = gap + k as f64 * (ph + gap);
        let finite: Vec<f64> = values.iter().map(|p| p.1).filter(|v| v.is_finite()).collect();
        let hi = finite.iter().copied().fold(0.0, f64::max).max(1e-9);
        let px = |i: usize| left + pw * i as f64 / max_iter;
        let py = |v: f64| top + ph - ph * v / hi;
        let _ = writeln!(
            s,
            "<rect x=\"{left}\" y=\"{top}\" width=\"{pw}\" height=\"{ph}\" fill=\"none\" stroke=\"#999\"/>\n<text x=\"{left}\" y=\"{:.1}\">{name}</text>\n<text x=\"4\" y=\"{:.1}\">{hi:.3}</text>\n<text x=\"4\" y=\"{:.1}\">0</text>",
            top - 6.0,
            top + 10.0,
            top + ph
        );
        let mut run: Vec<String> = vec![];
        let flush = |run: &mut Vec<String>, s: &mut String| {
            if !run.is_empty() {
                let _ = writeln!(s, "<polyline points=\"{}\" fill=\"none\" stroke=\"#08519c\" stroke-width=\"1.5\"/>", run.join(" "));
                run.clear();
            }
        };
        for &(i, v) in values {
            if v.is_finite() {
                run.push(format!("{:.2},{:.2}", px(i), py(v)));
                let _ = writeln!(s, "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"2\" fill=\"#08519c\"/>", px(i), py(v));
            } else {
                flush(&mut run, &mut s);
            }
        }
        flush(&mut run, &mut s);
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_plot_skips_gaps() {
        let svg = series_plot(&[("time".into(), vec![(1, f64::INFINITY), (2, 3.0), (3, 2.0)])]);
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<circle").count(), 2);
        assert_eq!(svg.matches("<polyline").count(), 1);
    }
}
