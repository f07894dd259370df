//! Levels of unsafety of timed words and the lexicographic cost algebra.
//!
//! For a paired formula `G P` and a timed word `(l_0, d_0) ... (l_n, d_n)`,
//! every index `i <= n` whose pair `(l_i, l_{i+1})` violates `P` (with
//! `l_{n+1} = l_n`) is charged:
//!
//! * `d_i` if no successor label could satisfy `P` from `l_i` (an unsafe state),
//! * `1` otherwise (an unsafe transition).
//!
//! Per-class totals are weighted sums over the rules of that class.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use thiserror::Error;

use crate::fltl::{denext, Alphabet, CompiledPair, FltlError, GFormula, GxFormula, Label};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum UnsafetyError {
    #[error("timed word must contain at least one letter")]
    EmptyWord,
    #[error("letter {index} has invalid duration {duration}")]
    InvalidDuration { index: usize, duration: f64 },
    #[error("cost vectors have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("label {0:#x} has propositions outside the alphabet")]
    AlphabetMismatch(u64),
    #[error("rule `{rule}`: priority class {class} is out of range (only {classes} classes)")]
    ClassOutOfRange {
        rule: String,
        class: usize,
        classes: usize,
    },
    #[error("rule `{0}`: weight must be at least 1")]
    ZeroWeight(String),
    #[error("duplicate rule name `{0}`")]
    DuplicateRule(String),
    #[error("rule `{rule}`: {source}")]
    Formula {
        rule: String,
        #[source]
        source: FltlError,
    },
}

/// One letter of a timed word.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimedLetter {
    pub label: Label,
    pub duration: f64,
}

impl TimedLetter {
    pub fn new(label: Label, duration: f64) -> Self {
        TimedLetter { label, duration }
    }
}

/// Nonempty sequence of labels with nonnegative dwell times.
#[derive(Debug, Clone, PartialEq)]
pub struct TimedWord {
    letters: Vec<TimedLetter>,
}

impl TimedWord {
    pub fn new(letters: Vec<TimedLetter>) -> Result<Self, UnsafetyError> {
        if letters.is_empty() {
            return Err(UnsafetyError::EmptyWord);
        }
        for (index, l) in letters.iter().enumerate() {
            if !(l.duration >= 0.0 && l.duration.is_finite()) {
                return Err(UnsafetyError::InvalidDuration {
                    index,
                    duration: l.duration,
                });
            }
        }
        Ok(TimedWord { letters })
    }

    pub fn letters(&self) -> &[TimedLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The untimed projection.
    pub fn labels(&self) -> Vec<Label> {
        self.letters.iter().map(|l| l.label).collect()
    }

    pub fn total_duration(&self) -> f64 {
        self.letters.iter().map(|l| l.duration).sum()
    }
}

/// `d` for a letter that is unsafe under every successor label, else `1`.
pub fn tilde_lambda(letter: &TimedLetter, rule: &CompiledPair) -> f64 {
    if rule.state_unsafe(letter.label) {
        letter.duration
    } else {
        1.0
    }
}

/// Level of unsafety of `word` with respect to a compiled paired formula.
pub fn level_of_unsafety(word: &TimedWord, rule: &CompiledPair) -> f64 {
    let letters = word.letters();
    let mut total = 0.0;
    for (i, letter) in letters.iter().enumerate() {
        let next = letters.get(i + 1).map_or(letter.label, |l| l.label);
        if !rule.eval(letter.label, next) {
            total += tilde_lambda(letter, rule);
        }
    }
    total
}

/// [`level_of_unsafety`] for an uncompiled formula.
pub fn level_of_unsafety_of(
    word: &TimedWord,
    formula: &GFormula,
    alphabet: &Alphabet,
) -> Result<f64, FltlError> {
    Ok(level_of_unsafety(
        word,
        &CompiledPair::compile(&formula.body, alphabet)?,
    ))
}

/// Input description of one rule.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleDef {
    pub name: String,
    pub formula: GxFormula,
    pub weight: u32,
    pub class: usize,
}

/// A rule together with its next-free image.
#[derive(Debug, Clone)]
pub struct Rule {
    pub name: String,
    pub formula: GxFormula,
    pub weight: u32,
    pub class: usize,
    pub paired: GFormula,
    compiled: CompiledPair,
}

impl Rule {
    pub fn compiled(&self) -> &CompiledPair {
        &self.compiled
    }

    pub fn level(&self, word: &TimedWord) -> f64 {
        level_of_unsafety(word, &self.compiled)
    }
}

/// Rules over an alphabet, partitioned into priority classes `0..=N`
/// (class 0 is the most important).
#[derive(Debug, Clone)]
pub struct PrioritizedSpec {
    alphabet: Alphabet,
    rules: Vec<Rule>,
    num_classes: usize,
}

impl PrioritizedSpec {
    pub fn new(
        alphabet: Alphabet,
        defs: Vec<RuleDef>,
        num_classes: usize,
    ) -> Result<Self, UnsafetyError> {
        let mut rules: Vec<Rule> = Vec::with_capacity(defs.len());
        for def in defs {
            if rules.iter().any(|r| r.name == def.name) {
                return Err(UnsafetyError::DuplicateRule(def.name));
            }
            if def.class >= num_classes {
                return Err(UnsafetyError::ClassOutOfRange {
                    rule: def.name,
                    class: def.class,
                    classes: num_classes,
                });
            }
            if def.weight == 0 {
                return Err(UnsafetyError::ZeroWeight(def.name));
            }
            let paired = denext(&def.formula);
            let compiled = CompiledPair::compile(&paired.body, &alphabet).map_err(|source| {
                UnsafetyError::Formula {
                    rule: def.name.clone(),
                    source,
                }
            })?;
            rules.push(Rule {
                name: def.name,
                formula: def.formula,
                weight: def.weight,
                class: def.class,
                paired,
                compiled,
            });
        }
        Ok(PrioritizedSpec {
            alphabet,
            rules,
            num_classes,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// `N + 1`.
    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    /// Length of a full cost vector: one entry per class plus time.
    pub fn cost_len(&self) -> usize {
        self.num_classes + 1
    }

    /// Weighted level of unsafety per priority class.
    pub fn unsafety_vector(&self, word: &TimedWord) -> Result<Vec<f64>, UnsafetyError> {
        let valid = if self.alphabet.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.alphabet.len()) - 1
        };
        for l in word.letters() {
            if l.label.0 & !valid != 0 {
                return Err(UnsafetyError::AlphabetMismatch(l.label.0));
            }
        }
        let mut out = vec![0.0; self.num_classes];
        for rule in &self.rules {
            out[rule.class] += f64::from(rule.weight) * rule.level(word);
        }
        Ok(out)
    }

    /// Class unsafeties of `word` followed by `time`.
    pub fn cost(&self, word: &TimedWord, time: f64) -> Result<CostVector, UnsafetyError> {
        let mut v = self.unsafety_vector(word)?;
        v.push(time);
        Ok(CostVector::new(v))
    }
}

/// Class unsafeties followed by elapsed time, ordered lexicographically.
#[derive(Debug, Clone)]
pub struct CostVector(Vec<f64>);

impl CostVector {
    pub fn new(components: Vec<f64>) -> Self {
        CostVector(components)
    }

    pub fn zeros(len: usize) -> Self {
        CostVector(vec![0.0; len])
    }

    pub fn infinite(len: usize) -> Self {
        CostVector(vec![f64::INFINITY; len])
    }

    pub fn components(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    /// Last component.
    pub fn time(&self) -> f64 {
        self.0.last().copied().unwrap_or(0.0)
    }

    pub fn try_add(&self, other: &CostVector) -> Result<CostVector, UnsafetyError> {
        if self.len() != other.len() {
            return Err(UnsafetyError::LengthMismatch(self.len(), other.len()));
        }
        Ok(CostVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn lex_compare(&self, other: &CostVector) -> Result<Ordering, UnsafetyError> {
        if self.len() != other.len() {
            return Err(UnsafetyError::LengthMismatch(self.len(), other.len()));
        }
        Ok(self.cmp(other))
    }
}

impl Add for &CostVector {
    type Output = CostVector;

    /// Panics on length mismatch; use [`CostVector::try_add`] to check.
    fn add(self, rhs: &CostVector) -> CostVector {
        self.try_add(rhs).expect("cost vectors of different lengths")
    }
}

impl PartialEq for CostVector {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for CostVector {}

impl PartialOrd for CostVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CostVector {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.0.iter().zip(&other.0) {
            match a.total_cmp(b) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl fmt::Display for CostVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}
