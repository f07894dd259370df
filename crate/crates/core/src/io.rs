//! Line-oriented text formats for traces, graph dumps and cost tables.
//!
//! Numbers use Rust's shortest round-trip formatting, so parsing a dump
//! gives back bit-identical values. Infinite components print as `inf`.
//!
//! Trace file:
//!
//! ```text
//! trace v1
//! iteration <i>
//! cost <c_0> ... <c_N> <time>
//! state <id> <x> <y> <theta>          one per visited state, in order
//! edge <src> <dst> <w_0> ... <w_k>    one per transition, in order
//! point <x> <y>                       rear-axle polyline
//! ```
//!
//! Graph dump:
//!
//! ```text
//! graph v1
//! cost_len <k>
//! init <id>
//! state <id> <x> <y> <theta> <label bits> [goal]
//! edge <src> <dst> <w_0> ... <w_k-1> ; <x> <y> <x> <y> ...
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use crate::kripke::WeightedKripke;
use crate::search::Trace;
use crate::world::{Point, Pose};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError {
        line,
        message: message.into(),
    }
}

fn join(values: &[f64]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

/// Table of per-iteration costs; `inf` in every column when no goal was
/// reachable.
pub fn costs_tsv(rows: &[(usize, Option<Vec<f64>>)], cost_len: usize) -> String {
    let mut out = String::from("iteration");
    for c in 0..cost_len.saturating_sub(1) {
        let _ = write!(out, "\tclass_{c}");
    }
    out.push_str("\ttime\n");
    for (i, cost) in rows {
        let _ = write!(out, "{i}");
        match cost {
            Some(c) => c.iter().for_each(|v| {
                let _ = write!(out, "\t{v}");
            }),
            None => (0..cost_len).for_each(|_| out.push_str("\tinf")),
        }
        out.push('\n');
    }
    out
}

pub fn timings_tsv(rows: &[(usize, f64)]) -> String {
    let mut out = String::from("iteration\tseconds\n");
    for (i, s) in rows {
        let _ = writeln!(out, "{i}\t{s}");
    }
    out
}

/// A trace as stored on disk.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRecord {
    pub iteration: usize,
    pub cost: Vec<f64>,
    pub states: Vec<(usize, Pose)>,
    pub edges: Vec<(usize, usize, Vec<f64>)>,
    pub polyline: Vec<Point>,
}

impl TraceRecord {
    pub fn from_trace(iteration: usize, trace: &Trace, k: &WeightedKripke) -> Self {
        TraceRecord {
            iteration,
            cost: trace.weight.components().to_vec(),
            states: trace.states.iter().map(|&s| (s, *k.state(s))).collect(),
            edges: trace
                .states
                .windows(2)
                .map(|w| {
                    let t = k.transition(w[0], w[1]).expect("trace follows transitions");
                    (w[0], w[1], t.weight.components().to_vec())
                })
                .collect(),
            polyline: trace.polyline.clone(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("trace v1\niteration {}\ncost {}\n", self.iteration, join(&self.cost));
        for (id, p) in &self.states {
            let _ = writeln!(out, "state {id} {} {} {}", p.x, p.y, p.theta);
        }
        for (s, d, w) in &self.edges {
            let _ = writeln!(out, "edge {s} {d} {}", join(w));
        }
        for p in &self.polyline {
            let _ = writeln!(out, "point {} {}", p.x, p.y);
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        expect_header(&mut lines, "trace v1")?;
        let mut rec = TraceRecord {
            iteration: 0,
            cost: vec![],
            states: vec![],
            edges: vec![],
            polyline: vec![],
        };
        let mut seen_iteration = false;
        let mut seen_cost = false;
        for (n, line) in lines {
            let mut f = Fields::new(n, line);
            match f.word()? {
                "" => continue,
                "iteration" => {
                    rec.iteration = f.usize()?;
                    seen_iteration = true;
                }
                "cost" => {
                    rec.cost = f.rest_f64()?;
                    seen_cost = true;
                }
                "state" => rec.states.push((f.usize()?, f.pose()?)),
                "edge" => rec.edges.push((f.usize()?, f.usize()?, f.rest_f64()?)),
                "point" => rec.polyline.push(Point::new(f.f64()?, f.f64()?)),
                other => return Err(err(n, format!("unknown record `{other}`"))),
            }
            f.end()?;
        }
        if !(seen_iteration && seen_cost) {
            return Err(err(0, "missing `iteration` or `cost` record"));
        }
        if rec.edges.iter().any(|e| e.2.len() != rec.cost.len()) {
            return Err(err(0, "edge weight length differs from cost length"));
        }
        Ok(rec)
    }
}

/// Graph structure as stored on disk.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphDump {
    pub cost_len: usize,
    pub init: usize,
    /// `(id, pose, label bits, is goal)`.
    pub states: Vec<(usize, Pose, u64, bool)>,
    pub edges: Vec<GraphEdge>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GraphEdge {
    pub src: usize,
    pub dst: usize,
    pub weight: Vec<f64>,
    pub polyline: Vec<Point>,
}

impl GraphDump {
    pub fn from_kripke(k: &WeightedKripke, polyline_step: f64) -> Self {
        GraphDump {
            cost_len: k.cost_len(),
            init: k.init(),
            states: (0..k.len())
                .map(|i| (i, *k.state(i), k.label(i).0, k.goal_ids().contains(&i)))
                .collect(),
            edges: k
                .edges()
                .map(|(s, d, t)| GraphEdge {
                    src: s,
                    dst: d,
                    weight: t.weight.components().to_vec(),
                    polyline: t.trajectory.trajectory.polyline(polyline_step),
                })
                .collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("graph v1\ncost_len {}\ninit {}\n", self.cost_len, self.init);
        for (id, p, label, goal) in &self.states {
            let _ = write!(out, "state {id} {} {} {} {label}", p.x, p.y, p.theta);
            out.push_str(if *goal { " goal\n" } else { "\n" });
        }
        for e in &self.edges {
            let _ = write!(out, "edge {} {} {} ;", e.src, e.dst, join(&e.weight));
            for p in &e.polyline {
                let _ = write!(out, " {} {}", p.x, p.y);
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        expect_header(&mut lines, "graph v1")?;
        let mut cost_len = None;
        let mut init = None;
        let mut states = vec![];
        let mut edges = vec![];
        for (n, line) in lines {
            let mut f = Fields::new(n, line);
            match f.word()? {
                "" => continue,
                "cost_len" => cost_len = Some(f.usize()?),
                "init" => init = Some(f.usize()?),
                "state" => {
                    let id = f.usize()?;
                    let pose = f.pose()?;
                    let label = f.u64()?;
                    let goal = match f.next() {
                        None => false,
                        Some("goal") => true,
                        Some(t) => return Err(err(n, format!("unexpected `{t}`"))),
                    };
                    states.push((id, pose, label, goal));
                }
                "edge" => {
                    let (src, dst) = (f.usize()?, f.usize()?);
                    let (w, pts) = line
                        .split_once(';')
                        .ok_or_else(|| err(n, "edge needs `;` before its polyline"))?;
                    let mut wf = Fields::new(n, w);
                    wf.word()?;
                    wf.usize()?;
                    wf.usize()?;
                    let weight = wf.rest_f64()?;
                    let coords = Fields::new(n, pts).rest_f64()?;
                    if coords.len() % 2 != 0 {
                        return Err(err(n, "odd number of polyline coordinates"));
                    }
                    let polyline = coords.chunks(2).map(|c| Point::new(c[0], c[1])).collect();
                    edges.push(GraphEdge {
                        src,
                        dst,
                        weight,
                        polyline,
                    });
                    continue;
                }
                other => return Err(err(n, format!("unknown record `{other}`"))),
            }
            f.end()?;
        }
        let cost_len = cost_len.ok_or_else(|| err(0, "missing `cost_len`"))?;
        let init = init.ok_or_else(|| err(0, "missing `init`"))?;
        if !states.iter().any(|s| s.0 == init) {
            return Err(err(0, "init is not a listed state"));
        }
        if edges.iter().any(|e| e.weight.len() != cost_len) {
            return Err(err(0, "edge weight length differs from cost_len"));
        }
        Ok(GraphDump {
            cost_len,
            init,
            states,
            edges,
        })
    }
}

fn expect_header<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>, header: &str) -> Result<(), FormatError> {
    match lines.next() {
        Some((_, l)) if l.trim() == header => Ok(()),
        _ => Err(err(1, format!("expected `{header}`"))),
    }
}

struct Fields<'a> {
    line: usize,
    it: std::str::SplitWhitespace<'a>,
}

impl<'a> Fields<'a> {
    fn new(line: usize, text: &'a str) -> Self {
        Fields {
            line,
            it: text.split_whitespace(),
        }
    }

    fn next(&mut self) -> Option<&'a str> {
        self.it.next()
    }

    fn word(&mut self) -> Result<&'a str, FormatError> {
        Ok(self.it.next().unwrap_or(""))
    }

    fn token(&mut self) -> Result<&'a str, FormatError> {
        self.it.next().ok_or_else(|| err(self.line, "missing field"))
    }

    fn usize(&mut self) -> Result<usize, FormatError> {
        let t = self.token()?;
        t.parse().map_err(|_| err(self.line, format!("bad integer `{t}`")))
    }

    fn u64(&mut self) -> Result<u64, FormatError> {
        let t = self.token()?;
        t.parse().map_err(|_| err(self.line, format!("bad integer `{t}`")))
    }

    fn f64(&mut self) -> Result<f64, FormatError> {
        let t = self.token()?;
        t.parse().map_err(|_| err(self.line, format!("bad number `{t}`")))
    }

    fn pose(&mut self) -> Result<Pose, FormatError> {
        Ok(Pose {
            x: self.f64()?,
            y: self.f64()?,
            theta: self.f64()?,
        })
    }

    fn rest_f64(&mut self) -> Result<Vec<f64>, FormatError> {
        let line = self.line;
        self.it
            .by_ref()
            .map(|t| t.parse().map_err(|_| err(line, format!("bad number `{t}`"))))
            .collect()
    }

    fn end(&mut self) -> Result<(), FormatError> {
        match self.it.next() {
            None => Ok(()),
            Some(t) => Err(err(self.line, format!("trailing `{t}`"))),
        }
    }
}
