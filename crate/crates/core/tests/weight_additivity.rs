//! A trace's summed edge weights against the cost of its whole timed word.

use minviol::experiment::{self, Overrides};
use minviol::fltl::parse_gx;
use minviol::scenario::{StrategyName, OVERTAKE};
use minviol::unsafety::{TimedLetter, TimedWord};

const TOL: f64 = 1e-9;

struct Gaps {
    /// Traces whose every junction changes label.
    changing: Vec<f64>,
    /// Traces with at least one junction where the label carries over.
    continuous: Vec<f64>,
    has_next: bool,
}

fn gaps(text: &str) -> Gaps {
    let mut out = Gaps { changing: vec![], continuous: vec![], has_next: false };
    for seed in 1..=6 {
        for strategy in [StrategyName::Rrg, StrategyName::RrtStar] {
            let overrides = Overrides {
                seed: Some(seed),
                strategy: Some(strategy),
                iterations: Some(10),
                ..Default::default()
            };
            let exp = experiment::run(experiment::load(text, &overrides).unwrap()).unwrap();
            out.has_next = exp.scenario.config.rules.iter().any(|r| parse_gx(&r.formula).unwrap().has_next());
            // earlier traces may use edges that later rewiring removed
            let Some(trace) = exp.records.last().and_then(|r| r.trace.as_ref()) else { continue };
            let k = &exp.session.kripke;
            let mut letters: Vec<TimedLetter> = vec![];
            let mut time = 0.0;
            let mut changing = true;
            for w in trace.states.windows(2) {
                let t = &k.transition(w[0], w[1]).unwrap().trajectory;
                time += t.trajectory.total_time();
                for (i, l) in t.word.letters().iter().enumerate() {
                    match letters.last_mut() {
                        Some(last) if i == 0 && last.label == l.label => {
                            changing = false;
                            last.duration += l.duration;
                        }
                        _ => letters.push(*l),
                    }
                }
            }
            let whole = exp.scenario.spec.cost(&TimedWord::new(letters).unwrap(), time).unwrap();
            let gap = whole
                .components()
                .iter()
                .zip(trace.weight.components())
                .map(|(a, b)| (a - b).abs() / a.abs().max(1.0))
                .fold(0.0, f64::max);
            if changing {
                out.changing.push(gap);
            } else {
                out.continuous.push(gap);
            }
        }
    }
    out
}

fn worst(v: &[f64]) -> f64 {
    v.iter().copied().fold(0.0, f64::max)
}

#[test]
fn next_free_rules_are_additive() {
    let g = gaps(OVERTAKE);
    assert!(!g.has_next);
    assert!(!g.changing.is_empty() || !g.continuous.is_empty());
    assert!(worst(&g.changing) <= TOL);
    assert!(worst(&g.continuous) <= TOL, "{:?}", g.continuous);
}

#[test]
fn next_rule_gap_is_reported() {
    let text = OVERTAKE.replace("formula = \"G lane\"", "formula = \"G (!lane -> !X lane)\"");
    let g = gaps(&text);
    assert!(g.has_next);
    assert!(worst(&g.changing) <= TOL, "{:?}", g.changing);
    eprintln!(
        "{} traces with label-changing junctions, {} with a carried-over label; largest gap on the latter {:.3e}",
        g.changing.len(),
        g.continuous.len(),
        worst(&g.continuous)
    );
}
