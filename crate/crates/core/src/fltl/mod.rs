//! Safety formulas of the form `G P_X`, their next-free image over paired
//! labels, and the finite-word semantics used to evaluate them.
//!
//! A rule `G P_X` is a Boolean combination of atoms `p` and `X p`. The
//! [`denext`] rewrite turns it into `G P` where every atom is a pair
//! `(now, next)`: `p` becomes `(p, true)` and `X p` becomes `(true, p)`.
//! A word `l0 l1 ... ln` satisfies the paired formula when every consecutive
//! pair `(l_i, l_{i+1})` satisfies `P`, and so does the terminal pair
//! `(l_n, l_n)`.

mod parse;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

pub use parse::{parse_g, parse_gx, parse_pair_prop, parse_prop, ParseError};

/// Errors raised when evaluating or analysing formulas.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FltlError {
    #[error("proposition `{0}` is not in the alphabet")]
    UnknownProp(String),
    #[error("duplicate proposition `{0}` in alphabet")]
    DuplicateProp(String),
    #[error("`{0}` is reserved and cannot name a proposition")]
    ReservedName(String),
    #[error("alphabet has {0} propositions; at most {max} are supported", max = Alphabet::MAX_LEN)]
    AlphabetTooLarge(usize),
    #[error("cannot evaluate a formula over an empty word")]
    EmptyWord,
    #[error("stutter check needs {needed} > budget {budget} (alphabet size x max length)")]
    BudgetExceeded { needed: usize, budget: usize },
    #[error("formula has {0} next-state propositions; at most 20 can be enumerated")]
    TooManySuccessorAtoms(usize),
}

/// An atomic proposition, or one of the constants.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Prop {
    True,
    False,
    Named(String),
}

impl Prop {
    pub fn named(name: impl Into<String>) -> Self {
        Prop::Named(name.into())
    }

    pub fn name(&self) -> Option<&str> {
        match self {
            Prop::Named(n) => Some(n),
            _ => None,
        }
    }
}

impl fmt::Display for Prop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Prop::True => f.write_str("true"),
            Prop::False => f.write_str("false"),
            Prop::Named(n) => f.write_str(n),
        }
    }
}

/// Ordered set of proposition names. Position in the alphabet is the bit
/// index used by [`Label`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl Alphabet {
    pub const MAX_LEN: usize = 64;

    pub fn new<I, S>(names: I) -> Result<Self, FltlError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut alphabet = Alphabet::default();
        for name in names {
            let name = name.into();
            if parse::is_reserved(&name) {
                return Err(FltlError::ReservedName(name));
            }
            if alphabet.index.contains_key(&name) {
                return Err(FltlError::DuplicateProp(name));
            }
            alphabet.index.insert(name.clone(), alphabet.names.len());
            alphabet.names.push(name);
        }
        if alphabet.names.len() > Self::MAX_LEN {
            return Err(FltlError::AlphabetTooLarge(alphabet.names.len()));
        }
        Ok(alphabet)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    /// Builds a label from proposition names.
    pub fn label<S: AsRef<str>>(&self, names: &[S]) -> Result<Label, FltlError> {
        let mut label = Label::EMPTY;
        for n in names {
            let n = n.as_ref();
            let i = self
                .index_of(n)
                .ok_or_else(|| FltlError::UnknownProp(n.to_string()))?;
            label = label.with(i);
        }
        Ok(label)
    }

    /// Every label over this alphabet, in increasing bit order.
    pub fn all_labels(&self) -> impl Iterator<Item = Label> {
        let n = self.names.len();
        (0..(1u128 << n)).map(|bits| Label(bits as u64))
    }

    pub fn label_names(&self, label: Label) -> Vec<&str> {
        label.iter().map(|i| self.names[i].as_str()).collect()
    }

    fn resolve(&self, p: &Prop) -> Result<Lit, FltlError> {
        match p {
            Prop::True => Ok(Lit::True),
            Prop::False => Ok(Lit::False),
            Prop::Named(n) => self
                .index_of(n)
                .map(Lit::Var)
                .ok_or_else(|| FltlError::UnknownProp(n.clone())),
        }
    }
}

/// A set of propositions, as a bitset over an [`Alphabet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Label(pub u64);

impl Label {
    pub const EMPTY: Label = Label(0);

    pub fn contains(self, index: usize) -> bool {
        index < 64 && self.0 & (1 << index) != 0
    }

    pub fn with(self, index: usize) -> Label {
        Label(self.0 | (1 << index))
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }

    pub fn is_subset_of(self, other: Label) -> bool {
        self.0 & !other.0 == 0
    }
}

/// Propositional connective tree over an atom type.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr<A> {
    Atom(A),
    Not(Box<Expr<A>>),
    And(Box<Expr<A>>, Box<Expr<A>>),
    Or(Box<Expr<A>>, Box<Expr<A>>),
    Implies(Box<Expr<A>>, Box<Expr<A>>),
}

impl<A> Expr<A> {
    pub fn atom(a: A) -> Self {
        Expr::Atom(a)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(e: Expr<A>) -> Self {
        Expr::Not(Box::new(e))
    }

    pub fn and(a: Expr<A>, b: Expr<A>) -> Self {
        Expr::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Expr<A>, b: Expr<A>) -> Self {
        Expr::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Expr<A>, b: Expr<A>) -> Self {
        Expr::Implies(Box::new(a), Box::new(b))
    }

    /// Rewrites every atom, keeping the connective tree node-for-node.
    pub fn map_atoms<B>(&self, f: &mut impl FnMut(&A) -> B) -> Expr<B> {
        match self {
            Expr::Atom(a) => Expr::Atom(f(a)),
            Expr::Not(e) => Expr::Not(Box::new(e.map_atoms(f))),
            Expr::And(a, b) => Expr::And(Box::new(a.map_atoms(f)), Box::new(b.map_atoms(f))),
            Expr::Or(a, b) => Expr::Or(Box::new(a.map_atoms(f)), Box::new(b.map_atoms(f))),
            Expr::Implies(a, b) => {
                Expr::Implies(Box::new(a.map_atoms(f)), Box::new(b.map_atoms(f)))
            }
        }
    }

    pub fn try_map_atoms<B, E>(
        &self,
        f: &mut impl FnMut(&A) -> Result<B, E>,
    ) -> Result<Expr<B>, E> {
        Ok(match self {
            Expr::Atom(a) => Expr::Atom(f(a)?),
            Expr::Not(e) => Expr::Not(Box::new(e.try_map_atoms(f)?)),
            Expr::And(a, b) => Expr::And(
                Box::new(a.try_map_atoms(f)?),
                Box::new(b.try_map_atoms(f)?),
            ),
            Expr::Or(a, b) => Expr::Or(
                Box::new(a.try_map_atoms(f)?),
                Box::new(b.try_map_atoms(f)?),
            ),
            Expr::Implies(a, b) => Expr::Implies(
                Box::new(a.try_map_atoms(f)?),
                Box::new(b.try_map_atoms(f)?),
            ),
        })
    }

    pub fn atoms(&self) -> Vec<&A> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a A>) {
        match self {
            Expr::Atom(a) => out.push(a),
            Expr::Not(e) => e.collect_atoms(out),
            Expr::And(a, b) | Expr::Or(a, b) | Expr::Implies(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// Number of nodes in the tree, atoms included.
    pub fn node_count(&self) -> usize {
        match self {
            Expr::Atom(_) => 1,
            Expr::Not(e) => 1 + e.node_count(),
            Expr::And(a, b) | Expr::Or(a, b) | Expr::Implies(a, b) => {
                1 + a.node_count() + b.node_count()
            }
        }
    }

    /// Number of connectives (non-atom nodes).
    pub fn connective_count(&self) -> usize {
        self.node_count() - self.atoms().len()
    }

    pub fn eval_with(&self, atom: &mut impl FnMut(&A) -> bool) -> bool {
        match self {
            Expr::Atom(a) => atom(a),
            Expr::Not(e) => !e.eval_with(atom),
            Expr::And(a, b) => a.eval_with(atom) && b.eval_with(atom),
            Expr::Or(a, b) => a.eval_with(atom) || b.eval_with(atom),
            Expr::Implies(a, b) => !a.eval_with(atom) || b.eval_with(atom),
        }
    }

    fn is_binary(&self) -> bool {
        matches!(self, Expr::And(..) | Expr::Or(..) | Expr::Implies(..))
    }
}

/// Atom of a formula over paired labels: holds on `(l, l')` when `now`
/// holds on `l` and `next` holds on `l'`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PairAtom {
    pub now: Prop,
    pub next: Prop,
}

impl PairAtom {
    pub fn new(now: Prop, next: Prop) -> Self {
        PairAtom { now, next }
    }
}

impl fmt::Display for PairAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.now, self.next)
    }
}

/// Atom of a `G P_X` body: a proposition now, or one in the next letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GxAtom {
    Now(Prop),
    Next(Prop),
}

impl GxAtom {
    pub fn prop(&self) -> &Prop {
        match self {
            GxAtom::Now(p) | GxAtom::Next(p) => p,
        }
    }
}

impl fmt::Display for GxAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GxAtom::Now(p) => write!(f, "{p}"),
            GxAtom::Next(p) => write!(f, "X {p}"),
        }
    }
}

/// Propositional formula over single labels.
pub type PropFormula = Expr<Prop>;
/// Propositional formula over pairs of labels.
pub type PairFormula = Expr<PairAtom>;

/// `G P_X`: always, a Boolean combination of `p` and `X p` atoms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GxFormula {
    pub body: Expr<GxAtom>,
}

/// `G P` with `P` over paired labels; the next-free form of a [`GxFormula`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GFormula {
    pub body: PairFormula,
}

impl GxFormula {
    pub fn new(body: Expr<GxAtom>) -> Self {
        GxFormula { body }
    }

    /// Named propositions mentioned anywhere in the formula, deduplicated in
    /// order of first appearance.
    pub fn propositions(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for a in self.body.atoms() {
            if let Some(n) = a.prop().name() {
                if !out.iter().any(|o| o == n) {
                    out.push(n.to_string());
                }
            }
        }
        out
    }

    pub fn has_next(&self) -> bool {
        self.body.atoms().iter().any(|a| matches!(a, GxAtom::Next(_)))
    }
}

impl GFormula {
    pub fn new(body: PairFormula) -> Self {
        GFormula { body }
    }
}

fn fmt_expr<A: fmt::Display>(e: &Expr<A>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    fn child<A: fmt::Display>(e: &Expr<A>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if e.is_binary() {
            f.write_str("(")?;
            fmt_expr(e, f)?;
            f.write_str(")")
        } else {
            fmt_expr(e, f)
        }
    }
    match e {
        Expr::Atom(a) => write!(f, "{a}"),
        Expr::Not(inner) => {
            f.write_str("!")?;
            child(inner, f)
        }
        Expr::And(a, b) => {
            child(a, f)?;
            f.write_str(" & ")?;
            child(b, f)
        }
        Expr::Or(a, b) => {
            child(a, f)?;
            f.write_str(" | ")?;
            child(b, f)
        }
        Expr::Implies(a, b) => {
            child(a, f)?;
            f.write_str(" -> ")?;
            child(b, f)
        }
    }
}

impl<A: fmt::Display> fmt::Display for Expr<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_expr(self, f)
    }
}

fn fmt_always<A: fmt::Display>(body: &Expr<A>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if body.is_binary() {
        write!(f, "G ({body})")
    } else {
        write!(f, "G {body}")
    }
}

impl fmt::Display for GxFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_always(&self.body, f)
    }
}

impl fmt::Display for GFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_always(&self.body, f)
    }
}

/// Replaces `p` with `(p, true)` and `X p` with `(true, p)`.
pub fn denext(phi: &GxFormula) -> GFormula {
    GFormula::new(phi.body.map_atoms(&mut |a| match a {
        GxAtom::Now(p) => PairAtom::new(p.clone(), Prop::True),
        GxAtom::Next(p) => PairAtom::new(Prop::True, p.clone()),
    }))
}

/// `l |= P` for a propositional formula over single labels.
pub fn eval_prop(formula: &PropFormula, alphabet: &Alphabet, label: Label) -> Result<bool, FltlError> {
    let resolved = formula.try_map_atoms(&mut |p| alphabet.resolve(p))?;
    Ok(resolved.eval_with(&mut |lit| lit.holds(label)))
}

/// `(l, l') |= P` for a propositional formula over pairs of labels.
pub fn eval_pair(
    formula: &PairFormula,
    alphabet: &Alphabet,
    now: Label,
    next: Label,
) -> Result<bool, FltlError> {
    Ok(CompiledPair::compile(formula, alphabet)?.eval(now, next))
}

/// `w |= phi` with the terminal pair `(l_n, l_n)` appended.
pub fn eval_gx_word(phi: &GxFormula, alphabet: &Alphabet, word: &[Label]) -> Result<bool, FltlError> {
    let compiled = CompiledPair::compile(&denext(phi).body, alphabet)?;
    compiled.eval_word(word)
}

/// Searches every word of length `<= max_len` over `alphabet` for a letter
/// duplication that changes satisfaction of `phi`.
///
/// `Ok(true)` means no counterexample exists at this bound, not that `phi`
/// is stutter-invariant. Fails when `|alphabet| * max_len > budget`.
pub fn check_stutter_invariant_bounded(
    phi: &GxFormula,
    alphabet: &Alphabet,
    max_len: usize,
    budget: usize,
) -> Result<bool, FltlError> {
    let needed = alphabet.len() * max_len;
    if needed > budget {
        return Err(FltlError::BudgetExceeded { needed, budget });
    }
    let compiled = CompiledPair::compile(&denext(phi).body, alphabet)?;
    let letters = 1u64 << alphabet.len();
    let mut word: Vec<Label> = Vec::with_capacity(max_len + 1);
    let mut stuttered: Vec<Label> = Vec::with_capacity(max_len + 1);
    for len in 1..=max_len {
        // odometer over letters^len words
        let mut digits = vec![0u64; len];
        loop {
            word.clear();
            word.extend(digits.iter().map(|&d| Label(d)));
            let base = compiled.eval_word(&word)?;
            for i in 0..len {
                stuttered.clear();
                stuttered.extend_from_slice(&word[..=i]);
                stuttered.extend_from_slice(&word[i..]);
                if compiled.eval_word(&stuttered)? != base {
                    return Ok(false);
                }
            }
            let mut k = 0;
            loop {
                if k == len {
                    break;
                }
                digits[k] += 1;
                if digits[k] < letters {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
            if k == len {
                break;
            }
        }
    }
    Ok(true)
}

/// Default cap on `|alphabet| * max_len` for [`check_stutter_invariant_bounded`].
pub const DEFAULT_STUTTER_BUDGET: usize = 20;
/// Default word length bound used by the scenario lint.
pub const DEFAULT_STUTTER_MAX_LEN: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Lit {
    True,
    False,
    Var(usize),
}

impl Lit {
    fn holds(self, label: Label) -> bool {
        match self {
            Lit::True => true,
            Lit::False => false,
            Lit::Var(i) => label.contains(i),
        }
    }
}

/// A pair formula with propositions resolved to alphabet indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompiledPair {
    expr: Expr<(Lit, Lit)>,
    /// Propositions that occur as the second coordinate of some atom.
    successor_props: Vec<usize>,
}

impl CompiledPair {
    /// Largest number of successor propositions [`Self::state_unsafe`] enumerates.
    pub const MAX_SUCCESSOR_PROPS: usize = 20;

    pub fn compile(formula: &PairFormula, alphabet: &Alphabet) -> Result<Self, FltlError> {
        let expr = formula.try_map_atoms(&mut |a| {
            Ok::<_, FltlError>((alphabet.resolve(&a.now)?, alphabet.resolve(&a.next)?))
        })?;
        let mut successor_props: Vec<usize> = expr
            .atoms()
            .iter()
            .filter_map(|(_, next)| match next {
                Lit::Var(i) => Some(*i),
                _ => None,
            })
            .collect();
        successor_props.sort_unstable();
        successor_props.dedup();
        if successor_props.len() > Self::MAX_SUCCESSOR_PROPS {
            return Err(FltlError::TooManySuccessorAtoms(successor_props.len()));
        }
        Ok(CompiledPair {
            expr,
            successor_props,
        })
    }

    pub fn eval(&self, now: Label, next: Label) -> bool {
        self.expr
            .eval_with(&mut |(a, b)| a.holds(now) && b.holds(next))
    }

    pub fn eval_word(&self, word: &[Label]) -> Result<bool, FltlError> {
        let last = *word.last().ok_or(FltlError::EmptyWord)?;
        Ok(word.windows(2).all(|w| self.eval(w[0], w[1])) && self.eval(last, last))
    }

    /// True when `(label, l')` violates the formula for every successor `l'`.
    ///
    /// Only propositions appearing in second coordinates can affect the
    /// outcome, so the enumeration ranges over assignments to those.
    pub fn state_unsafe(&self, label: Label) -> bool {
        let k = self.successor_props.len();
        for bits in 0..(1u64 << k) {
            let mut next = Label::EMPTY;
            for (j, &p) in self.successor_props.iter().enumerate() {
                if bits & (1 << j) != 0 {
                    next = next.with(p);
                }
            }
            if self.eval(label, next) {
                return false;
            }
        }
        true
    }

    /// True when no atom constrains the next letter.
    pub fn is_next_free(&self) -> bool {
        self.expr
            .atoms()
            .iter()
            .all(|(_, next)| matches!(next, Lit::True))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new(["p", "p'"]).unwrap()
    }

    #[test]
    fn eval_prop_membership_and_constants() {
        let a = ab();
        let p = a.label(&["p"]).unwrap();
        assert!(eval_prop(&parse_prop("p").unwrap(), &a, p).unwrap());
        assert!(eval_prop(&parse_prop("true").unwrap(), &a, Label::EMPTY).unwrap());
        assert!(!eval_prop(&parse_prop("false").unwrap(), &a, p).unwrap());
        assert!(!eval_prop(&parse_prop("p -> p'").unwrap(), &a, p).unwrap());
    }

    #[test]
    fn eval_prop_rejects_unknown_atom() {
        let err = eval_prop(&parse_prop("q").unwrap(), &ab(), Label::EMPTY).unwrap_err();
        assert_eq!(err, FltlError::UnknownProp("q".into()));
    }

    #[test]
    fn eval_pair_examples() {
        let a = ab();
        let p = a.label(&["p"]).unwrap();
        let q = a.label(&["p'"]).unwrap();
        let f = |s: &str| parse_pair_prop(s).unwrap();
        assert!(eval_pair(&f("(p, true)"), &a, p, Label::EMPTY).unwrap());
        assert!(!eval_pair(&f("(true, p)"), &a, p, Label::EMPTY).unwrap());
        assert!(eval_pair(&f("(p, true) -> ((true, p) | (true, p'))"), &a, p, q).unwrap());
    }

    #[test]
    fn denext_examples() {
        let cases = [
            ("G (p -> (X p | X p'))", "G ((p, true) -> ((true, p) | (true, p')))"),
            ("G p", "G (p, true)"),
            ("G X p", "G (true, p)"),
        ];
        for (src, want) in cases {
            let got = denext(&parse_gx(src).unwrap());
            assert_eq!(got.to_string(), want);
            assert_eq!(got, parse_g(want).unwrap());
        }
    }

    #[test]
    fn gx_word_examples() {
        let a = Alphabet::new(["p", "p'", "p0", "p1"]).unwrap();
        let l = |n: &[&str]| a.label(n).unwrap();
        let g = |s: &str| parse_gx(s).unwrap();
        assert!(eval_gx_word(&g("G p"), &a, &[l(&["p"]), l(&["p"])]).unwrap());
        assert!(!eval_gx_word(&g("G (p0 -> X p0)"), &a, &[l(&["p0"]), l(&["p1"])]).unwrap());
        assert!(eval_gx_word(
            &g("G (p -> (X p | X p'))"),
            &a,
            &[l(&["p"]), l(&["p'"]), l(&[])]
        )
        .unwrap());
        assert_eq!(
            eval_gx_word(&g("G p"), &a, &[]).unwrap_err(),
            FltlError::EmptyWord
        );
    }

    #[test]
    fn stutter_bounded_examples() {
        let g = |s: &str| parse_gx(s).unwrap();
        let one = Alphabet::new(["p"]).unwrap();
        assert!(check_stutter_invariant_bounded(&g("G p"), &one, 4, 20).unwrap());
        assert!(check_stutter_invariant_bounded(&g("G true"), &Alphabet::default(), 4, 20).unwrap());
        // Frozen from the exhaustive duplication search: every stuttered pair
        // (l, l) satisfies the body, so no duplication changes the verdict.
        assert!(check_stutter_invariant_bounded(&g("G (p -> (X p | X p'))"), &ab(), 5, 20).unwrap());
        // `G (p -> !X p)` forbids stuttering any letter containing p.
        assert!(!check_stutter_invariant_bounded(&g("G (p -> !X p)"), &one, 3, 20).unwrap());
    }

    #[test]
    fn stutter_budget_guard() {
        let a = Alphabet::new(["a", "b", "c", "d", "e"]).unwrap();
        let err = check_stutter_invariant_bounded(&parse_gx("G a").unwrap(), &a, 5, 20).unwrap_err();
        assert_eq!(err, FltlError::BudgetExceeded { needed: 25, budget: 20 });
    }

    #[test]
    fn state_unsafe_enumerates_successors() {
        let a = ab();
        let c = |s: &str| CompiledPair::compile(&parse_g(s).unwrap().body, &a).unwrap();
        assert!(c("G (false, true)").state_unsafe(Label::EMPTY));
        let p = a.label(&["p"]).unwrap();
        assert!(!c("G ((p, true) -> (true, p))").state_unsafe(p));
        assert!(c("G ((p, true) -> (true, false))").state_unsafe(p));
    }

    #[test]
    fn alphabet_validation() {
        assert_eq!(
            Alphabet::new(["a", "a"]).unwrap_err(),
            FltlError::DuplicateProp("a".into())
        );
        assert_eq!(
            Alphabet::new(["true"]).unwrap_err(),
            FltlError::ReservedName("true".into())
        );
    }
}
