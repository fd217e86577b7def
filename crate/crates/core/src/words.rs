//! Words, identities and substitutions: projections, sparseness, factor
//! counting, identity checking in a finite semigroup, bounded isoterm search
//! and single rewrite steps.
//!
//! Surface syntax: variables are whitespace-separated lowercase alphanumeric
//! tokens (`x0` is one variable) and `x^3` abbreviates `x x x`. Identities
//! are written `LHS == RHS`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::semigroup::FiniteSemigroup;

/// Default cap on the number of substitutions an identity check may try.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

fn valid_variable(name: &str) -> bool {
    !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_ascii_lowercase() || c.is_ascii_digit())
}

/// A finite sequence of variables, possibly empty.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<String>);

impl Word {
    pub fn new<I, S>(letters: I) -> Result<Word>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        if let Some(bad) = letters.iter().find(|v| !valid_variable(v)) {
            return Err(Error::InvalidWord(format!("bad variable name {bad:?}")));
        }
        Ok(Word(letters))
    }

    pub fn empty() -> Word {
        Word(Vec::new())
    }

    /// Parses whitespace-separated variables with `x^k` exponents.
    pub fn parse(text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            let (name, exp) = match token.split_once('^') {
                Some((name, exp)) => {
                    let k: usize = exp
                        .parse()
                        .map_err(|_| Error::InvalidWord(format!("bad exponent in {token:?}")))?;
                    if k == 0 {
                        return Err(Error::InvalidWord(format!("zero exponent in {token:?}")));
                    }
                    (name, k)
                }
                None => (token, 1),
            };
            if !valid_variable(name) {
                return Err(Error::InvalidWord(format!("bad variable name {name:?}")));
            }
            letters.extend(std::iter::repeat_n(name.to_string(), exp));
        }
        Ok(Word(letters))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[String] {
        &self.0
    }

    /// `alf(w)`, sorted.
    pub fn alphabet(&self) -> BTreeSet<String> {
        self.0.iter().cloned().collect()
    }

    /// Distinct variables in order of first occurrence.
    pub fn variables(&self) -> Vec<String> {
        let mut seen = BTreeSet::new();
        self.0
            .iter()
            .filter(|v| seen.insert(v.as_str()))
            .cloned()
            .collect()
    }

    pub fn occurrences(&self, var: &str) -> usize {
        self.0.iter().filter(|v| *v == var).count()
    }

    fn counts(&self) -> BTreeMap<&str, usize> {
        let mut counts = BTreeMap::new();
        for v in &self.0 {
            *counts.entry(v.as_str()).or_insert(0) += 1;
        }
        counts
    }

    pub fn linear_variables(&self) -> BTreeSet<String> {
        self.counts()
            .into_iter()
            .filter(|&(_, c)| c == 1)
            .map(|(v, _)| v.to_string())
            .collect()
    }

    pub fn repeated_variables(&self) -> BTreeSet<String> {
        self.counts()
            .into_iter()
            .filter(|&(_, c)| c > 1)
            .map(|(v, _)| v.to_string())
            .collect()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// `w^k`; `w^0` is the empty word.
    pub fn pow(&self, k: usize) -> Word {
        Word(
            std::iter::repeat_n(self.0.iter().cloned(), k)
                .flatten()
                .collect(),
        )
    }

    /// `w(X)`: keep exactly the occurrences of variables in `keep`.
    pub fn project(&self, keep: &BTreeSet<String>) -> Word {
        Word(
            self.0
                .iter()
                .filter(|v| keep.contains(*v))
                .cloned()
                .collect(),
        )
    }

    /// Every two occurrences of a repeated variable have a linear variable
    /// strictly between them.
    pub fn is_sparse(&self) -> bool {
        let counts = self.counts();
        let mut last_seen: BTreeMap<&str, usize> = BTreeMap::new();
        // Position of the most recent linear variable, if any.
        let mut last_linear: Option<usize> = None;
        for (i, v) in self.0.iter().enumerate() {
            if counts[v.as_str()] == 1 {
                last_linear = Some(i);
                continue;
            }
            if let Some(&prev) = last_seen.get(v.as_str()) {
                if last_linear.is_none_or(|l| l < prev) {
                    return false;
                }
            }
            last_seen.insert(v, i);
        }
        true
    }

    /// Renames variables to `a1, a2, ...` in order of first occurrence.
    pub fn canonical(&self) -> Word {
        let mut names = BTreeMap::new();
        Word(
            self.0
                .iter()
                .map(|v| {
                    let next = names.len() + 1;
                    names
                        .entry(v.as_str())
                        .or_insert_with(|| format!("a{next}"))
                        .clone()
                })
                .collect(),
        )
    }

    /// Applies a variable renaming; unmapped variables are kept.
    pub fn rename(&self, map: &BTreeMap<String, String>) -> Word {
        Word(
            self.0
                .iter()
                .map(|v| map.get(v).unwrap_or(v).clone())
                .collect(),
        )
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.join(" "))
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Word> {
        Word::parse(s)
    }
}

/// Number of decompositions `w = v' u v''`, overlaps counted separately.
pub fn factor_occurrences(u: &Word, w: &Word) -> usize {
    assert!(!u.is_empty(), "factor must be nonempty");
    if u.len() > w.len() {
        return 0;
    }
    w.0.windows(u.len())
        .filter(|win| *win == u.0.as_slice())
        .count()
}

/// A formal equality `lhs ≈ rhs` of nonempty words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Identity {
    pub lhs: Word,
    pub rhs: Word,
}

impl Identity {
    pub fn new(lhs: Word, rhs: Word) -> Result<Identity> {
        if lhs.is_empty() || rhs.is_empty() {
            return Err(Error::InvalidIdentity("both sides must be nonempty".into()));
        }
        Ok(Identity { lhs, rhs })
    }

    /// Parses `LHS == RHS`.
    pub fn parse(text: &str) -> Result<Identity> {
        let (l, r) = text
            .split_once("==")
            .ok_or_else(|| Error::InvalidIdentity(format!("missing '==' in {text:?}")))?;
        if r.contains("==") {
            return Err(Error::InvalidIdentity(format!(
                "more than one '==' in {text:?}"
            )));
        }
        Identity::new(Word::parse(l)?, Word::parse(r)?)
    }

    /// Variables of `lhs` then `rhs`, in order of first occurrence.
    pub fn variables(&self) -> Vec<String> {
        self.lhs.concat(&self.rhs).variables()
    }

    pub fn swapped(&self) -> Identity {
        Identity {
            lhs: self.rhs.clone(),
            rhs: self.lhs.clone(),
        }
    }

    pub fn rename(&self, map: &BTreeMap<String, String>) -> Identity {
        Identity {
            lhs: self.lhs.rename(map),
            rhs: self.rhs.rename(map),
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} == {}", self.lhs, self.rhs)
    }
}

impl FromStr for Identity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Identity> {
        Identity::parse(s)
    }
}

/// A substitution that failed an identity: values per variable and the two
/// sides' values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub assignment: Vec<(String, usize)>,
    pub lhs_value: usize,
    pub rhs_value: usize,
}

impl Counterexample {
    pub fn describe(&self, s: &FiniteSemigroup) -> String {
        let vars: Vec<String> = self
            .assignment
            .iter()
            .map(|(v, e)| format!("{v} := {}", s.label(*e)))
            .collect();
        format!(
            "{}; lhs = {}, rhs = {}",
            vars.join(", "),
            s.label(self.lhs_value),
            s.label(self.rhs_value)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Satisfaction {
    /// Every one of `substitutions` substitutions equalized the sides.
    Holds { substitutions: u128 },
    /// The least failing substitution in enumeration order.
    Fails(Counterexample),
}

impl Satisfaction {
    pub fn holds(&self) -> bool {
        matches!(self, Satisfaction::Holds { .. })
    }
}

/// Number of substitutions for `vars` variables, saturating.
pub fn substitution_count(order: usize, vars: usize) -> u128 {
    (0..vars).fold(1u128, |acc, _| acc.saturating_mul(order as u128))
}

/// An identity compiled to variable indices, with restart points for
/// incremental re-evaluation: when the digits `d..` of the odometer change,
/// each side is recomputed from the first position holding a variable `>= d`.
struct Compiled {
    vars: Vec<String>,
    lhs: Vec<usize>,
    rhs: Vec<usize>,
    restart_lhs: Vec<usize>,
    restart_rhs: Vec<usize>,
}

impl Compiled {
    fn new(id: &Identity) -> Compiled {
        let vars = id.variables();
        let index: BTreeMap<&str, usize> = vars
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let encode = |w: &Word| -> Vec<usize> { w.0.iter().map(|v| index[v.as_str()]).collect() };
        let (lhs, rhs) = (encode(&id.lhs), encode(&id.rhs));
        let restart = |side: &[usize]| -> Vec<usize> {
            (0..vars.len())
                .map(|d| side.iter().position(|&v| v >= d).unwrap_or(side.len()))
                .collect()
        };
        let (restart_lhs, restart_rhs) = (restart(&lhs), restart(&rhs));
        Compiled {
            vars,
            lhs,
            rhs,
            restart_lhs,
            restart_rhs,
        }
    }

    /// Searches all substitutions with the first variable fixed to `first`,
    /// returning the least failing one.
    fn search_slice(&self, s: &FiniteSemigroup, first: usize) -> Option<Counterexample> {
        let n = s.len();
        let nv = self.vars.len();
        let mut assign = vec![0usize; nv];
        assign[0] = first;
        let mut pl = vec![0usize; self.lhs.len()];
        let mut pr = vec![0usize; self.rhs.len()];
        let eval = |prefix: &mut [usize], word: &[usize], from: usize, assign: &[usize]| {
            for i in from..word.len() {
                let x = assign[word[i]];
                prefix[i] = if i == 0 { x } else { s.mul(prefix[i - 1], x) };
            }
        };
        eval(&mut pl, &self.lhs, 0, &assign);
        eval(&mut pr, &self.rhs, 0, &assign);
        loop {
            let (l, r) = (pl[pl.len() - 1], pr[pr.len() - 1]);
            if l != r {
                return Some(Counterexample {
                    assignment: self
                        .vars
                        .iter()
                        .cloned()
                        .zip(assign.iter().copied())
                        .collect(),
                    lhs_value: l,
                    rhs_value: r,
                });
            }
            let mut d = nv;
            loop {
                if d <= 1 {
                    return None;
                }
                d -= 1;
                assign[d] += 1;
                if assign[d] < n {
                    break;
                }
                assign[d] = 0;
            }
            eval(&mut pl, &self.lhs, self.restart_lhs[d], &assign);
            eval(&mut pr, &self.rhs, self.restart_rhs[d], &assign);
        }
    }
}

/// Checks whether `s` satisfies `id` by trying every substitution of
/// elements for variables. Substitutions are enumerated lexicographically
/// with variables ordered by first occurrence, so a failure reports the
/// least counterexample regardless of how the work is split across threads.
pub fn satisfies(s: &FiniteSemigroup, id: &Identity, budget: u128) -> Result<Satisfaction> {
    let compiled = Compiled::new(id);
    let total = substitution_count(s.len(), compiled.vars.len());
    if total > budget {
        return Err(Error::SearchTooLarge {
            size: total,
            budget,
        });
    }
    let failure = s
        .elements()
        .into_par_iter()
        .find_map_first(|first| compiled.search_slice(s, first));
    Ok(match failure {
        Some(c) => Satisfaction::Fails(c),
        None => Satisfaction::Holds {
            substitutions: total,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsotermCheck {
    /// No word `v != u` over `alf(u)` of length at most `max_len` gives an
    /// identity `u ≈ v` of the monoid. Longer counterexamples are not ruled
    /// out.
    NoShortCounterexample { max_len: usize, candidates: usize },
    /// `u ≈ witness` holds, so `u` is not an isoterm.
    NotIsoterm { witness: Word },
}

/// Bounded isoterm test: searches words `v != u` over `alf(u)` with
/// `1 <= |v| <= max_len`, shortest first and then lexicographically in the
/// first-occurrence order of `alf(u)`, for one with `s ⊨ u ≈ v`.
pub fn is_isoterm_bounded(
    s: &FiniteSemigroup,
    u: &Word,
    max_len: usize,
    budget: u128,
) -> Result<IsotermCheck> {
    if !s.is_monoid() {
        return Err(Error::NotAMonoid);
    }
    if u.is_empty() {
        return Err(Error::InvalidWord(
            "isoterm candidate must be nonempty".into(),
        ));
    }
    if max_len < u.len() {
        return Err(Error::Precondition(format!(
            "length bound {max_len} is below |u| = {}",
            u.len()
        )));
    }
    let alphabet = u.variables();
    let per_check = substitution_count(s.len(), alphabet.len());
    if per_check > budget {
        return Err(Error::SearchTooLarge {
            size: per_check,
            budget,
        });
    }
    let mut candidates = 0;
    for len in 1..=max_len {
        let mut digits = vec![0usize; len];
        loop {
            let v = Word(digits.iter().map(|&d| alphabet[d].clone()).collect());
            if v != *u {
                candidates += 1;
                let id = Identity {
                    lhs: u.clone(),
                    rhs: v,
                };
                if satisfies(s, &id, budget)?.holds() {
                    return Ok(IsotermCheck::NotIsoterm { witness: id.rhs });
                }
            }
            // odometer, last digit fastest
            let mut i = len;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < alphabet.len() {
                    break;
                }
                digits[i] = 0;
            }
            if digits.iter().all(|&d| d == 0) {
                break;
            }
        }
    }
    Ok(IsotermCheck::NoShortCounterexample {
        max_len,
        candidates,
    })
}

/// A substitution of nonempty words for variables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WordSubstitution(BTreeMap<String, Word>);

impl WordSubstitution {
    pub fn new() -> WordSubstitution {
        WordSubstitution::default()
    }

    /// Builds from `(variable, image)` pairs with images in word syntax.
    pub fn parse_pairs(pairs: &[(&str, &str)]) -> Result<WordSubstitution> {
        let mut phi = WordSubstitution::new();
        for (v, w) in pairs {
            phi.insert(v, Word::parse(w)?)?;
        }
        Ok(phi)
    }

    pub fn insert(&mut self, var: &str, image: Word) -> Result<()> {
        if !valid_variable(var) {
            return Err(Error::InvalidWord(format!("bad variable name {var:?}")));
        }
        if image.is_empty() {
            return Err(Error::InvalidWord(format!("empty image for {var:?}")));
        }
        self.0.insert(var.to_string(), image);
        Ok(())
    }

    pub fn get(&self, var: &str) -> Option<&Word> {
        self.0.get(var)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Word)> {
        self.0.iter()
    }

    /// `φ(w)`.
    pub fn apply(&self, w: &Word) -> Result<Word> {
        let mut out = Vec::new();
        for v in &w.0 {
            let image = self
                .0
                .get(v)
                .ok_or_else(|| Error::UnboundVariable(v.clone()))?;
            out.extend_from_slice(&image.0);
        }
        Ok(Word(out))
    }

    /// The identity substitution on `vars`.
    pub fn identity_on<'a>(vars: impl IntoIterator<Item = &'a String>) -> WordSubstitution {
        WordSubstitution(
            vars.into_iter()
                .map(|v| (v.clone(), Word(vec![v.clone()])))
                .collect(),
        )
    }
}

impl fmt::Display for WordSubstitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(v, w)| format!("{v} := {w}")).collect();
        f.write_str(&parts.join(", "))
    }
}

/// One application of an identity: `before = prefix φ(lhs) suffix` and
/// `after = prefix φ(rhs) suffix`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteStep {
    pub before: Word,
    pub after: Word,
    pub rule: Identity,
    pub phi: WordSubstitution,
    pub prefix: Word,
    pub suffix: Word,
}

impl fmt::Display for RewriteStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ctx = |w: &Word| {
            if w.is_empty() {
                "1".to_string()
            } else {
                w.to_string()
            }
        };
        write!(
            f,
            "{} -> {}  [{}; {}; context {} _ {}]",
            self.before,
            self.after,
            self.rule,
            self.phi,
            ctx(&self.prefix),
            ctx(&self.suffix)
        )
    }
}

/// Replaces the factor `φ(lhs)` of `w` sitting between `prefix` and
/// `suffix` by `φ(rhs)`.
pub fn apply_identity(
    w: &Word,
    id: &Identity,
    phi: &WordSubstitution,
    prefix: &Word,
    suffix: &Word,
) -> Result<Word> {
    Ok(rewrite_step(w, id, phi, prefix, suffix)?.after)
}

/// Like [`apply_identity`] but keeps the whole step for tracing.
pub fn rewrite_step(
    w: &Word,
    id: &Identity,
    phi: &WordSubstitution,
    prefix: &Word,
    suffix: &Word,
) -> Result<RewriteStep> {
    let from = phi.apply(&id.lhs)?;
    let to = phi.apply(&id.rhs)?;
    if prefix.concat(&from).concat(suffix) != *w {
        return Err(Error::RuleDoesNotApply);
    }
    Ok(RewriteStep {
        before: w.clone(),
        after: prefix.concat(&to).concat(suffix),
        rule: id.clone(),
        phi: phi.clone(),
        prefix: prefix.clone(),
        suffix: suffix.clone(),
    })
}

/// An occurrence of `φ(pattern)` as the factor `w[start..end]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Match {
    pub start: usize,
    pub end: usize,
    pub phi: WordSubstitution,
}

impl Match {
    pub fn prefix(&self, w: &Word) -> Word {
        Word(w.0[..self.start].to_vec())
    }

    pub fn suffix(&self, w: &Word) -> Word {
        Word(w.0[self.end..].to_vec())
    }
}

/// All ways to write a factor of `w` as `φ(pattern)` with `φ` mapping
/// variables to nonempty words, up to `limit` matches.
pub fn find_matches(w: &Word, pattern: &Word, limit: usize) -> Vec<Match> {
    /// Variable to the span `[start, end)` of `w` it is bound to.
    type Binding = BTreeMap<String, (usize, usize)>;

    fn go(
        w: &[String],
        pattern: &[String],
        pos: usize,
        bound: &mut Binding,
        out: &mut Vec<(usize, Binding)>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        let Some((v, rest)) = pattern.split_first() else {
            out.push((pos, bound.clone()));
            return;
        };
        if let Some(&(a, b)) = bound.get(v) {
            let len = b - a;
            if pos + len <= w.len() && w[pos..pos + len] == w[a..b] {
                go(w, rest, pos + len, bound, out, limit);
            }
            return;
        }
        for end in pos + 1..=w.len() {
            bound.insert(v.clone(), (pos, end));
            go(w, rest, end, bound, out, limit);
            bound.remove(v);
        }
    }

    let mut found = Vec::new();
    if pattern.is_empty() {
        return found;
    }
    for start in 0..w.len() {
        let mut raw = Vec::new();
        go(
            &w.0,
            &pattern.0,
            start,
            &mut BTreeMap::new(),
            &mut raw,
            limit - found.len(),
        );
        for (end, bound) in raw {
            let phi = WordSubstitution(
                bound
                    .into_iter()
                    .map(|(v, (a, b))| (v, Word(w.0[a..b].to_vec())))
                    .collect(),
            );
            found.push(Match { start, end, phi });
        }
        if found.len() >= limit {
            break;
        }
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_cyclic, build_ic, build_semilattice_chain};

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn set(vars: &[&str]) -> BTreeSet<String> {
        vars.iter().map(|v| v.to_string()).collect()
    }

    #[test]
    fn parsing() {
        assert_eq!(w("x^3 y").letters(), &["x", "x", "x", "y"]);
        assert_eq!(w("x0 x1").len(), 2);
        assert_eq!(w("  ").len(), 0);
        assert!(Word::parse("X").is_err());
        assert!(Word::parse("x^0").is_err());
        assert!(Word::parse("x^").is_err());
        assert!(Word::parse("a-b").is_err());
        assert!(Word::empty().alphabet().is_empty());
        let id = Identity::parse("x y == y x").unwrap();
        assert_eq!(id.to_string(), "x y == y x");
        assert!(Identity::parse("x y").is_err());
        assert!(Identity::parse(" == x").is_err());
        assert!(Identity::parse("x == y == z").is_err());
    }

    #[test]
    fn projections() {
        assert_eq!(w("x y x").project(&set(&["x"])), w("x x"));
        let u = w("x y z x y");
        assert_eq!(u.project(&u.alphabet()), u);
        assert_eq!(u.project(&set(&["q"])), Word::empty());
    }

    #[test]
    fn sparseness() {
        assert!(w("x y x").is_sparse());
        assert!(!w("x x").is_sparse());
        assert!(w("x y z x y").is_sparse());
        assert!(!w("x y x y").is_sparse());
        assert!(w("x").is_sparse());
        assert!(Word::empty().is_sparse());
        // x z x y x: both x-gaps need a linear letter
        assert!(w("x z x y x").is_sparse());
        assert!(!w("x z x x").is_sparse());
    }

    #[test]
    fn factor_counts() {
        assert_eq!(factor_occurrences(&w("a b"), &w("a b a b")), 2);
        assert_eq!(factor_occurrences(&w("x x"), &w("x x x")), 2);
        assert_eq!(factor_occurrences(&w("q"), &w("x y x")), 0);
        assert_eq!(factor_occurrences(&w("x y x y"), &w("x y")), 0);
    }

    #[test]
    fn satisfaction_examples() {
        let sl = build_semilattice_chain(2);
        let comm = Identity::parse("x y == y x").unwrap();
        assert!(satisfies(&sl, &comm, DEFAULT_BUDGET).unwrap().holds());

        let ic4 = build_ic(4).unwrap();
        let stable = Identity::parse("x^4 == x^5").unwrap();
        assert_eq!(
            satisfies(&ic4, &stable, DEFAULT_BUDGET).unwrap(),
            Satisfaction::Holds { substitutions: 42 }
        );
        match satisfies(&ic4, &comm, DEFAULT_BUDGET).unwrap() {
            Satisfaction::Fails(c) => {
                let (x, y) = (c.assignment[0].1, c.assignment[1].1);
                assert_ne!(ic4.mul(x, y), ic4.mul(y, x));
                assert_eq!((c.lhs_value, c.rhs_value), (ic4.mul(x, y), ic4.mul(y, x)));
            }
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn witness_is_lexicographically_least() {
        let c3 = build_cyclic(3);
        let id = Identity::parse("x y == y").unwrap();
        // fails as soon as x != c0; least is x = c1, y = c0
        match satisfies(&c3, &id, DEFAULT_BUDGET).unwrap() {
            Satisfaction::Fails(c) => assert_eq!(
                c.assignment,
                vec![("x".to_string(), 1), ("y".to_string(), 0)]
            ),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn incremental_evaluation_matches_naive() {
        // Compare against a direct evaluation of every substitution.
        let s = build_ic(3).unwrap();
        for text in [
            "x y x z == x z y x",
            "x y z x == y x z x",
            "x^2 y == y x^2",
            "x y z == x y z",
        ] {
            let id = Identity::parse(text).unwrap();
            let vars = id.variables();
            let n = s.len();
            let mut naive = None;
            'outer: for code in 0..n.pow(vars.len() as u32) {
                let mut assign = vec![0; vars.len()];
                let mut c = code;
                for i in (0..vars.len()).rev() {
                    assign[i] = c % n;
                    c /= n;
                }
                let val = |word: &Word| {
                    let seq: Vec<usize> = word
                        .letters()
                        .iter()
                        .map(|v| assign[vars.iter().position(|x| x == v).unwrap()])
                        .collect();
                    s.product(&seq).unwrap()
                };
                if val(&id.lhs) != val(&id.rhs) {
                    naive = Some(assign);
                    break 'outer;
                }
            }
            let got = satisfies(&s, &id, DEFAULT_BUDGET).unwrap();
            match (naive, got) {
                (None, Satisfaction::Holds { .. }) => {}
                (Some(a), Satisfaction::Fails(c)) => {
                    assert_eq!(c.assignment.iter().map(|p| p.1).collect::<Vec<_>>(), a)
                }
                (n, g) => panic!("{text}: naive {n:?} vs {g:?}"),
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let ic4 = build_ic(4).unwrap();
        let id = Identity::parse("x y z == z y x").unwrap();
        assert_eq!(
            satisfies(&ic4, &id, 1000).unwrap_err(),
            Error::SearchTooLarge {
                size: 42 * 42 * 42,
                budget: 1000
            }
        );
    }

    #[test]
    fn isoterm_examples() {
        let ic4 = build_ic(4).unwrap();
        assert!(matches!(
            is_isoterm_bounded(&ic4, &w("x y x"), 5, DEFAULT_BUDGET).unwrap(),
            IsotermCheck::NoShortCounterexample { max_len: 5, .. }
        ));
        assert_eq!(
            is_isoterm_bounded(&ic4, &w("x x x x"), 5, DEFAULT_BUDGET).unwrap(),
            IsotermCheck::NotIsoterm {
                witness: w("x x x x x")
            }
        );
        let trivial = build_semilattice_chain(1);
        assert_eq!(
            is_isoterm_bounded(&trivial, &w("x"), 2, DEFAULT_BUDGET).unwrap(),
            IsotermCheck::NotIsoterm { witness: w("x x") }
        );
        assert_eq!(
            is_isoterm_bounded(
                &crate::constructions::build_b2(),
                &w("x"),
                2,
                DEFAULT_BUDGET
            )
            .unwrap_err(),
            Error::NotAMonoid
        );
        assert!(is_isoterm_bounded(&ic4, &w("x y x"), 2, DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn rewrite_examples() {
        let comm = Identity::parse("x y == y x").unwrap();
        let phi = WordSubstitution::parse_pairs(&[("x", "b"), ("y", "a")]).unwrap();
        let out = apply_identity(&w("a b a b"), &comm, &phi, &w("a"), &w("b")).unwrap();
        assert_eq!(out, w("a a b b"));

        let trivial = Identity::parse("x y == x y").unwrap();
        assert_eq!(
            apply_identity(&w("a b a b"), &trivial, &phi, &w("a"), &w("b")).unwrap(),
            w("a b a b")
        );

        let grow = Identity::parse("x == x x").unwrap();
        let phi = WordSubstitution::parse_pairs(&[("x", "x")]).unwrap();
        assert_eq!(
            apply_identity(&w("x x"), &grow, &phi, &Word::empty(), &w("x")).unwrap(),
            w("x x x")
        );
        assert_eq!(
            apply_identity(&w("x x"), &grow, &phi, &w("x"), &w("x")).unwrap_err(),
            Error::RuleDoesNotApply
        );
        let partial = WordSubstitution::parse_pairs(&[("x", "a")]).unwrap();
        assert_eq!(
            apply_identity(&w("a b"), &comm, &partial, &Word::empty(), &Word::empty()).unwrap_err(),
            Error::UnboundVariable("y".into())
        );
    }

    #[test]
    fn matching() {
        let m = find_matches(&w("a b a b"), &w("x x"), 100);
        // "a b" twice from the start, plus nothing else
        assert_eq!(m.len(), 1);
        assert_eq!((m[0].start, m[0].end), (0, 4));
        assert_eq!(m[0].phi.get("x"), Some(&w("a b")));
        let m = find_matches(&w("a b c"), &w("x y"), 100);
        assert_eq!(m.len(), 4);
        assert_eq!(find_matches(&w("a b c"), &w("x y"), 2).len(), 2);
        for mt in &m {
            let phi = &mt.phi;
            let rebuilt = mt
                .prefix(&w("a b c"))
                .concat(&phi.apply(&w("x y")).unwrap());
            assert_eq!(rebuilt.concat(&mt.suffix(&w("a b c"))), w("a b c"));
        }
    }

    #[test]
    fn canonical_and_rename() {
        assert_eq!(w("y x y z").canonical(), w("a1 a2 a1 a3"));
        let map: BTreeMap<String, String> = [("x".to_string(), "q".to_string())].into();
        assert_eq!(w("x y x").rename(&map), w("q y q"));
    }
}
