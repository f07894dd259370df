//! Minimum-violation motion planning.
//!
//! Traffic rules are written as `G P_X` safety formulas, grouped into
//! priority classes, and scored on the timed words that trajectories induce.
//! A sampled graph of Dubins-car poses carries vector-valued transition
//! costs; a lexicographic shortest path through it is the plan that breaks
//! the fewest high-priority rules first, and is fastest among those.

pub mod dynamics;
pub mod experiment;
pub mod fltl;
pub mod io;
pub mod kripke;
pub mod scenario;
pub mod search;
pub mod svg;
pub mod unsafety;
pub mod world;
