//! The identities `u_n ≈ v_n` with variable sets `X_n`, the projection
//! properties P0, P1, P2 they are built to satisfy, and the finite checks
//! around them: the property θ (`w(X_n) = u_n(X_n)`), the power identity
//! `u ≈ u^{m+1}` for semigroups in DS, and text certificates.
//!
//! With `π` the cyclic permutation `(0 1 ... n)`,
//!
//! ```text
//! a_n[τ] = x^k x_{0τ} x^k y_1 x^k x_{1τ} x^k ... x^k y_n x^k x_{nτ} x^k
//! b_n[τ] = x^k z_{0τ} x^k y_1 x^k z_{1τ} x^k ... x^k y_n x^k z_{nτ} x^k
//! u_n    = a_n[π^0] b_n[π^0] a_n[π^1] b_n[π^1] ... a_n[π^n] b_n[π^n]
//! v_n    = u_n^{m+1}
//! X_n    = {x_0, y_0, z_0, ..., x_n, y_n, z_n}
//! ```
//!
//! Subscripted variables are spelled `x0`, `y1`, `z2`, ...; the plain `x`
//! is a separate variable. `y0` belongs to `X_n` but never occurs in `u_n`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::green::in_ds;
use crate::semigroup::{power_data, FiniteSemigroup};
use crate::words::{factor_occurrences, satisfies, Identity, Satisfaction, Word, WordSubstitution};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockKind {
    A,
    B,
}

impl fmt::Display for BlockKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BlockKind::A => "a",
            BlockKind::B => "b",
        })
    }
}

/// One factor `a_n[π^i]` or `b_n[π^i]` of `u_n`, occupying `u[start..end]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub kind: BlockKind,
    pub power: usize,
    pub start: usize,
    pub end: usize,
    pub word: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NfbInstance {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub u: Word,
    pub v: Word,
    /// `X_n` in the order `x0, y0, z0, x1, ...`.
    pub x_vars: Vec<String>,
    pub blocks: Vec<Block>,
}

fn block_word(kind: BlockKind, n: usize, k: usize, power: usize) -> Word {
    let family = match kind {
        BlockKind::A => "x",
        BlockKind::B => "z",
    };
    let xk = || std::iter::repeat_n("x".to_string(), k);
    let permuted = |j: usize| format!("{family}{}", (j + power) % (n + 1));
    let mut letters: Vec<String> = xk().collect();
    letters.push(permuted(0));
    letters.extend(xk());
    for j in 1..=n {
        letters.push(format!("y{j}"));
        letters.extend(xk());
        letters.push(permuted(j));
        letters.extend(xk());
    }
    Word::new(letters).expect("generated names are valid")
}

/// Builds `u_n`, `v_n`, `X_n` and the block decomposition of `u_n`.
pub fn build_instance(n: usize, k: usize, m: usize) -> Result<NfbInstance> {
    for (what, value) in [("n", n), ("k", k), ("m", m)] {
        if value == 0 {
            return Err(Error::OutOfRange { what, value });
        }
    }
    let mut u = Word::empty();
    let mut blocks = Vec::with_capacity(2 * (n + 1));
    for power in 0..=n {
        for kind in [BlockKind::A, BlockKind::B] {
            let word = block_word(kind, n, k, power);
            let start = u.len();
            u = u.concat(&word);
            blocks.push(Block {
                kind,
                power,
                start,
                end: u.len(),
                word,
            });
        }
    }
    let v = u.pow(m + 1);
    let x_vars = (0..=n)
        .flat_map(|i| ["x", "y", "z"].map(|f| format!("{f}{i}")))
        .collect();
    Ok(NfbInstance {
        n,
        k,
        m,
        u,
        v,
        x_vars,
        blocks,
    })
}

impl NfbInstance {
    pub fn x_set(&self) -> BTreeSet<String> {
        self.x_vars.iter().cloned().collect()
    }

    /// `u_n(X_n)`.
    pub fn projected_u(&self) -> Word {
        self.u.project(&self.x_set())
    }

    pub fn projected_v(&self) -> Word {
        self.v.project(&self.x_set())
    }

    pub fn identity(&self) -> Identity {
        Identity::new(self.u.clone(), self.v.clone()).expect("u_n is nonempty")
    }

    pub fn check_p0(&self) -> std::result::Result<(), PropertyViolation> {
        check_p0(&self.projected_u(), &self.projected_v())
    }

    pub fn check_p1(&self) -> std::result::Result<(), PropertyViolation> {
        check_p1(&self.projected_u())
    }

    pub fn check_p2(&self) -> std::result::Result<(), PropertyViolation> {
        check_p2(&self.projected_u(), self.n)
    }

    /// Property θ: `w(X_n) = u_n(X_n)`.
    pub fn has_theta(&self, w: &Word) -> bool {
        w.project(&self.x_set()) == self.projected_u()
    }
}

/// Where a projection property fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropertyViolation {
    /// The projections of both sides coincide.
    P0,
    /// The two-letter factor `first second` occurs `count > 1` times.
    P1 {
        first: String,
        second: String,
        count: usize,
    },
    /// Only `distinct` distinct variables lie between the occurrences of
    /// `var` at positions `from` and `to`.
    P2 {
        var: String,
        from: usize,
        to: usize,
        distinct: usize,
    },
}

impl fmt::Display for PropertyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PropertyViolation::P0 => f.write_str("P0 fails: projections are equal"),
            PropertyViolation::P1 {
                first,
                second,
                count,
            } => write!(f, "P1 fails: factor {first} {second} occurs {count} times"),
            PropertyViolation::P2 {
                var,
                from,
                to,
                distinct,
            } => write!(
                f,
                "P2 fails: {distinct} distinct variables between {var} at {from} and {to}"
            ),
        }
    }
}

/// P0: `u(X) != v(X)`, given the projections.
pub fn check_p0(pu: &Word, pv: &Word) -> std::result::Result<(), PropertyViolation> {
    if pu == pv {
        Err(PropertyViolation::P0)
    } else {
        Ok(())
    }
}

/// P1: every two-letter word occurs at most once as a factor.
pub fn check_p1(w: &Word) -> std::result::Result<(), PropertyViolation> {
    for pair in w.letters().windows(2) {
        let factor = Word::new(pair.iter().cloned()).expect("valid letters");
        let count = factor_occurrences(&factor, w);
        if count > 1 {
            return Err(PropertyViolation::P1 {
                first: pair[0].clone(),
                second: pair[1].clone(),
                count,
            });
        }
    }
    Ok(())
}

/// P2: between any two (not only consecutive) occurrences of a variable
/// there are at least `threshold` pairwise distinct variables.
pub fn check_p2(w: &Word, threshold: usize) -> std::result::Result<(), PropertyViolation> {
    let letters = w.letters();
    let mut positions: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, v) in letters.iter().enumerate() {
        positions.entry(v).or_default().push(i);
    }
    for (var, pos) in positions {
        for (a, &from) in pos.iter().enumerate() {
            for &to in &pos[a + 1..] {
                let distinct: BTreeSet<&String> = letters[from + 1..to].iter().collect();
                if distinct.len() < threshold {
                    return Err(PropertyViolation::P2 {
                        var: var.to_string(),
                        from,
                        to,
                        distinct: distinct.len(),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Bound on the number of variables of rules that must preserve θ. The
/// general statement allows fewer than `n - 2` variables, its proof works
/// with fewer than `n`; both are accepted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VariableThreshold {
    /// Fewer than `n - 2` variables.
    Statement,
    /// Fewer than `n` variables.
    Proof,
}

impl VariableThreshold {
    pub fn bound(self, n: usize) -> usize {
        match self {
            VariableThreshold::Statement => n.saturating_sub(2),
            VariableThreshold::Proof => n,
        }
    }

    /// Whether `rule` has few enough variables for instances of size `n`.
    pub fn admits(self, rule: &Identity, n: usize) -> bool {
        rule.variables().len() < self.bound(n)
    }
}

/// `Y = {z ∈ dom φ | alf(φ(z)) ∩ X ≠ ∅}`.
pub fn substitution_support(phi: &WordSubstitution, x: &BTreeSet<String>) -> BTreeSet<String> {
    phi.iter()
        .filter(|(_, image)| image.letters().iter().any(|v| x.contains(v)))
        .map(|(z, _)| z.clone())
        .collect()
}

/// Exhaustively checks that `s` satisfies `u_n ≈ v_n`.
///
/// Requires `x^k` idempotent for every `x` and every subgroup exponent to
/// divide `m`; any `k`, `m` with these properties are accepted, not only
/// the least ones.
pub fn verify_holds(s: &FiniteSemigroup, inst: &NfbInstance, budget: u128) -> Result<Satisfaction> {
    let pd = power_data(s);
    if !pd.is_idempotent_power(inst.k) {
        return Err(Error::Precondition(format!(
            "k = {} is not an idempotent power (least is {})",
            inst.k, pd.uniform_k
        )));
    }
    if !pd.is_exponent_multiple(inst.m) {
        return Err(Error::Precondition(format!(
            "m = {} is not a multiple of the subgroup exponent {}",
            inst.m, pd.subgroup_lcm_m
        )));
    }
    satisfies(s, &inst.identity(), budget)
}

/// For `s` in DS with subgroup exponent `m`, checks `u ≈ u^{m+1}` where `u`
/// is the concatenation of `factors`, all over one alphabet and at least
/// `|s| + 2` of them.
pub fn ds_power_identity_check(
    s: &FiniteSemigroup,
    factors: &[Word],
    budget: u128,
) -> Result<Satisfaction> {
    if !in_ds(s) {
        return Err(Error::NotInDs);
    }
    let Some(first) = factors.first() else {
        return Err(Error::TooFewFactors {
            got: 0,
            need: s.len() + 2,
        });
    };
    if first.is_empty() || factors.iter().any(|f| f.alphabet() != first.alphabet()) {
        return Err(Error::AlphabetsDiffer);
    }
    if factors.len() < s.len() + 2 {
        return Err(Error::TooFewFactors {
            got: factors.len(),
            need: s.len() + 2,
        });
    }
    let u = factors.iter().fold(Word::empty(), |acc, f| acc.concat(f));
    let m = power_data(s).subgroup_lcm_m;
    let id = Identity::new(u.clone(), u.pow(m + 1))?;
    satisfies(s, &id, budget)
}

/// Text certificate for an instance: parameters, both words, `X_n`, block
/// boundaries and the P0/P1/P2 verdicts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub x_vars: Vec<String>,
    pub u: Word,
    pub v: Word,
    /// `(kind, power, start, end)` per block.
    pub blocks: Vec<(BlockKind, usize, usize, usize)>,
    pub p0: bool,
    pub p1: bool,
    pub p2: bool,
}

pub const CERTIFICATE_HEADER: &str = "# nfb-certificate v1";

impl Certificate {
    pub fn from_instance(inst: &NfbInstance) -> Certificate {
        Certificate {
            n: inst.n,
            k: inst.k,
            m: inst.m,
            x_vars: inst.x_vars.clone(),
            u: inst.u.clone(),
            v: inst.v.clone(),
            blocks: inst
                .blocks
                .iter()
                .map(|b| (b.kind, b.power, b.start, b.end))
                .collect(),
            p0: inst.check_p0().is_ok(),
            p1: inst.check_p1().is_ok(),
            p2: inst.check_p2().is_ok(),
        }
    }

    pub fn parse(text: &str) -> Result<Certificate> {
        let bad =
            |line: usize, msg: &str| Error::Precondition(format!("certificate line {line}: {msg}"));
        let mut fields: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
        let mut blocks = Vec::new();
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        match lines.next() {
            Some((_, h)) if h.trim() == CERTIFICATE_HEADER => {}
            _ => return Err(bad(1, "missing header")),
        }
        for (no, line) in lines {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
            if key == "block" {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                let [kind, power, start, end] = parts.as_slice() else {
                    return Err(bad(no, "block needs kind, power, start, end"));
                };
                let kind = match *kind {
                    "a" => BlockKind::A,
                    "b" => BlockKind::B,
                    _ => return Err(bad(no, "block kind must be a or b")),
                };
                let num = |s: &str| s.parse::<usize>().map_err(|_| bad(no, "bad number"));
                blocks.push((kind, num(power)?, num(start)?, num(end)?));
            } else if fields.insert(key, (no, rest)).is_some() {
                return Err(bad(no, &format!("duplicate field {key}")));
            }
        }
        let get = |key: &str| {
            fields
                .get(key)
                .copied()
                .ok_or_else(|| bad(0, &format!("missing field {key}")))
        };
        let num = |key: &str| -> Result<usize> {
            let (no, v) = get(key)?;
            v.trim()
                .parse()
                .map_err(|_| bad(no, &format!("bad number for {key}")))
        };
        let verdict = |key: &str| -> Result<bool> {
            let (no, v) = get(key)?;
            match v.trim() {
                "pass" => Ok(true),
                "fail" => Ok(false),
                _ => Err(bad(no, "verdict must be pass or fail")),
            }
        };
        Ok(Certificate {
            n: num("n")?,
            k: num("k")?,
            m: num("m")?,
            x_vars: get("X")?.1.split_whitespace().map(str::to_string).collect(),
            u: Word::parse(get("u")?.1)?,
            v: Word::parse(get("v")?.1)?,
            blocks,
            p0: verdict("P0")?,
            p1: verdict("P1")?,
            p2: verdict("P2")?,
        })
    }

    /// Rebuilds the instance from the parameters and checks that every
    /// recorded field and verdict matches.
    pub fn verify(&self) -> std::result::Result<NfbInstance, String> {
        let inst = build_instance(self.n, self.k, self.m).map_err(|e| e.to_string())?;
        let fresh = Certificate::from_instance(&inst);
        let checks = [
            ("X", self.x_vars == fresh.x_vars),
            ("u", self.u == fresh.u),
            ("v", self.v == fresh.v),
            ("blocks", self.blocks == fresh.blocks),
            ("P0", self.p0 == fresh.p0),
            ("P1", self.p1 == fresh.p1),
            ("P2", self.p2 == fresh.p2),
        ];
        match checks.iter().find(|(_, ok)| !ok) {
            Some((field, _)) => Err(format!("certificate field {field} does not match")),
            None => Ok(inst),
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = |ok: bool| if ok { "pass" } else { "fail" };
        writeln!(f, "{CERTIFICATE_HEADER}")?;
        writeln!(f, "n {}", self.n)?;
        writeln!(f, "k {}", self.k)?;
        writeln!(f, "m {}", self.m)?;
        writeln!(f, "X {}", self.x_vars.join(" "))?;
        writeln!(f, "u {}", self.u)?;
        writeln!(f, "v {}", self.v)?;
        for (kind, power, start, end) in &self.blocks {
            writeln!(f, "block {kind} {power} {start} {end}")?;
        }
        writeln!(f, "P0 {}", verdict(self.p0))?;
        writeln!(f, "P1 {}", verdict(self.p1))?;
        writeln!(f, "P2 {}", verdict(self.p2))
    }
}
