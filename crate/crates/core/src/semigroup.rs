//! Explicit finite semigroups given by a full multiplication table.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Default upper bound on the number of elements a closure may produce.
pub const DEFAULT_ELEMENT_CAP: usize = 100_000;

/// Tables up to this order have associativity checked on every triple.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 300;

/// Seed for sampled associativity checks on large tables.
pub const ASSOCIATIVITY_SEED: u64 = 0x5e31_9a0b;

/// How associativity of a table was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Validation {
    /// Every triple was checked.
    Exhaustive,
    /// `triples` seeded random triples were checked.
    Sampled { triples: u64, seed: u64 },
    /// Derived from already validated semigroups (products, subsemigroups).
    Inherited,
}

impl fmt::Display for Validation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Validation::Exhaustive => f.write_str("exhaustive"),
            Validation::Sampled { triples, seed } => {
                write!(f, "sampled ({triples} triples, seed {seed:#x})")
            }
            Validation::Inherited => f.write_str("inherited"),
        }
    }
}

/// A finite semigroup on the elements `0..len()` with display labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSemigroup {
    labels: Vec<String>,
    table: Vec<u32>,
    identity: Option<usize>,
    validation: Validation,
}

impl FiniteSemigroup {
    /// Builds a semigroup from labels and a row-major table `table[a][b] = ab`,
    /// validating shape, label uniqueness and associativity.
    pub fn from_table(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        if table.len() != n {
            return Err(Error::MalformedTable(format!(
                "{} labels but {} table rows",
                n,
                table.len()
            )));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedTable(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::MalformedTable(format!(
                        "entry ({i}, {j}) = {v} is not an element index"
                    )));
                }
                flat.push(v as u32);
            }
        }
        let mut s = Self::from_flat(labels, flat, Validation::Inherited)?;
        s.validation = s.check_associativity()?;
        Ok(s)
    }

    /// Builds from a flat table without checking associativity; the caller
    /// vouches for it with `validation`.
    pub(crate) fn from_flat(
        labels: Vec<String>,
        table: Vec<u32>,
        validation: Validation,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::MalformedTable("empty element set".into()));
        }
        debug_assert_eq!(table.len(), n * n);
        let mut seen = HashMap::with_capacity(n);
        for l in &labels {
            if seen.insert(l.as_str(), ()).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let mut s = FiniteSemigroup {
            labels,
            table,
            identity: None,
            validation,
        };
        s.identity = s.find_identity();
        Ok(s)
    }

    fn find_identity(&self) -> Option<usize> {
        self.elements().find(|&e| {
            self.elements()
                .all(|a| self.mul(e, a) == a && self.mul(a, e) == a)
        })
    }

    /// Checks associativity, exhaustively for small tables and by seeded
    /// sampling of `10 n^2` triples above [`EXHAUSTIVE_ASSOCIATIVITY_LIMIT`].
    pub fn check_associativity(&self) -> Result<Validation> {
        let n = self.len();
        let check = |a: usize, b: usize, c: usize| -> Result<()> {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Err(Error::NotAssociative {
                    a: self.labels[a].clone(),
                    b: self.labels[b].clone(),
                    c: self.labels[c].clone(),
                });
            }
            Ok(())
        };
        if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
            Ok(Validation::Exhaustive)
        } else {
            let triples = 10 * (n as u64) * (n as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(ASSOCIATIVITY_SEED);
            for _ in 0..triples {
                check(
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                )?;
            }
            Ok(Validation::Sampled {
                triples,
                seed: ASSOCIATIVITY_SEED,
            })
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Always false: semigroups here are nonempty.
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.len() + b] as usize
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn find(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn identity(&self) -> Option<usize> {
        self.identity
    }

    pub fn is_monoid(&self) -> bool {
        self.identity.is_some()
    }

    pub fn validation(&self) -> Validation {
        self.validation
    }

    pub fn is_idempotent(&self, a: usize) -> bool {
        self.mul(a, a) == a
    }

    pub fn idempotents(&self) -> Vec<usize> {
        self.elements().filter(|&a| self.is_idempotent(a)).collect()
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|a| (a + 1..self.len()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// `a^exp` for `exp >= 1`.
    pub fn pow(&self, a: usize, exp: usize) -> usize {
        assert!(exp >= 1, "semigroup powers start at 1");
        let mut acc = a;
        for _ in 1..exp {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// Left-to-right product of a nonempty sequence of elements.
    pub fn product(&self, seq: &[usize]) -> Option<usize> {
        let (&first, rest) = seq.split_first()?;
        Some(rest.iter().fold(first, |acc, &b| self.mul(acc, b)))
    }

    /// Row-major copy of the table.
    pub fn table(&self) -> Vec<Vec<usize>> {
        self.elements()
            .map(|a| self.elements().map(|b| self.mul(a, b)).collect())
            .collect()
    }

    /// The subsemigroup on `elems`, renumbered in the given order. Fails if
    /// `elems` is not closed under multiplication.
    pub fn restrict(&self, elems: &[usize]) -> Result<FiniteSemigroup> {
        let mut position = vec![u32::MAX; self.len()];
        for (i, &e) in elems.iter().enumerate() {
            position[e] = i as u32;
        }
        let mut table = Vec::with_capacity(elems.len() * elems.len());
        for &a in elems {
            for &b in elems {
                let p = position[self.mul(a, b)];
                if p == u32::MAX {
                    return Err(Error::MalformedTable(format!(
                        "{} * {} leaves the subset",
                        self.label(a),
                        self.label(b)
                    )));
                }
                table.push(p);
            }
        }
        let labels = elems.iter().map(|&e| self.labels[e].clone()).collect();
        FiniteSemigroup::from_flat(labels, table, Validation::Inherited)
    }
}

/// Result of [`generate`]: the semigroup together with the carrier value of
/// every element, indexed like the semigroup.
#[derive(Debug, Clone)]
pub struct Generated<T> {
    pub semigroup: FiniteSemigroup,
    pub carriers: Vec<T>,
}

/// Closes `seeds` under `multiply`, numbering elements in breadth-first
/// order (seeds first, then right multiples by seeds).
pub fn generate<T, M, L>(seeds: &[T], multiply: M, label: L, cap: usize) -> Result<Generated<T>>
where
    T: Clone + Eq + Hash,
    M: Fn(&T, &T) -> T,
    L: Fn(&T) -> String,
{
    let mut carriers: Vec<T> = Vec::new();
    let mut index: HashMap<T, usize> = HashMap::new();
    let mut gens = Vec::new();
    for s in seeds {
        if !index.contains_key(s) {
            index.insert(s.clone(), carriers.len());
            gens.push(carriers.len());
            carriers.push(s.clone());
        }
    }
    if carriers.len() > cap {
        return Err(Error::ClosureOverflow { cap });
    }
    let mut next = 0;
    while next < carriers.len() {
        for &g in &gens {
            let p = multiply(&carriers[next], &carriers[g]);
            if !index.contains_key(&p) {
                if carriers.len() == cap {
                    return Err(Error::ClosureOverflow { cap });
                }
                index.insert(p.clone(), carriers.len());
                carriers.push(p);
            }
        }
        next += 1;
    }

    let n = carriers.len();
    let mut table = Vec::with_capacity(n * n);
    for a in &carriers {
        for b in &carriers {
            // Every element is a product of seeds, so a failed lookup means
            // the operation is not associative.
            let p = index.get(&multiply(a, b)).ok_or_else(|| {
                Error::MalformedTable(format!(
                    "product {} * {} escapes the closure",
                    label(a),
                    label(b)
                ))
            })?;
            table.push(*p as u32);
        }
    }
    let labels = carriers.iter().map(&label).collect();
    let mut semigroup = FiniteSemigroup::from_flat(labels, table, Validation::Inherited)?;
    semigroup.validation = semigroup.check_associativity()?;
    Ok(Generated {
        semigroup,
        carriers,
    })
}

/// `S^1`: `S` itself if it has an identity, otherwise `S` with a fresh
/// identity element appended.
pub fn adjoin_identity(s: &FiniteSemigroup) -> FiniteSemigroup {
    if s.is_monoid() {
        return s.clone();
    }
    let n = s.len();
    let mut label = String::from("1");
    while s.find(&label).is_some() {
        label.push('\'');
    }
    let mut labels = s.labels.clone();
    labels.push(label);
    let mut table = Vec::with_capacity((n + 1) * (n + 1));
    for a in 0..=n {
        for b in 0..=n {
            let p = match (a == n, b == n) {
                (true, _) => b,
                (_, true) => a,
                _ => s.mul(a, b),
            };
            table.push(p as u32);
        }
    }
    FiniteSemigroup::from_flat(labels, table, Validation::Inherited).expect("labels stay unique")
}

/// Componentwise product; element `(a, b)` has index `a * |t| + b`.
pub fn direct_product(
    s: &FiniteSemigroup,
    t: &FiniteSemigroup,
    cap: usize,
) -> Result<FiniteSemigroup> {
    let (ns, nt) = (s.len(), t.len());
    let n = ns.checked_mul(nt).filter(|&n| n <= cap);
    let Some(n) = n else {
        return Err(Error::ClosureOverflow { cap });
    };
    let mut labels = Vec::with_capacity(n);
    for a in s.elements() {
        for b in t.elements() {
            labels.push(format!("({},{})", s.label(a), t.label(b)));
        }
    }
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        let (a1, a2) = (a / nt, a % nt);
        for b in 0..n {
            let (b1, b2) = (b / nt, b % nt);
            table.push((s.mul(a1, b1) * nt + t.mul(a2, b2)) as u32);
        }
    }
    FiniteSemigroup::from_flat(labels, table, Validation::Inherited)
}

/// Index and period of every element, with the uniform idempotent power and
/// the exponent of the subgroups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerData {
    /// Least `i` such that `x^i` lies on the cycle of powers of `x`.
    pub index: Vec<usize>,
    /// Length of that cycle.
    pub period: Vec<usize>,
    /// Least `k >= 1` with `x^k` idempotent for every `x`.
    pub uniform_k: usize,
    /// Least common multiple of the exponents of the maximal subgroups.
    pub subgroup_lcm_m: usize,
}

impl PowerData {
    /// Whether `x^k` is idempotent for every element.
    pub fn is_idempotent_power(&self, k: usize) -> bool {
        let lcm = self.period.iter().fold(1, |acc: usize, &p| acc.lcm(&p));
        k >= 1 && k >= self.index.iter().copied().max().unwrap_or(1) && k.is_multiple_of(lcm)
    }

    /// Whether every subgroup has exponent dividing `m`.
    pub fn is_exponent_multiple(&self, m: usize) -> bool {
        m >= 1 && m.is_multiple_of(self.subgroup_lcm_m)
    }
}

/// Computes [`PowerData`]; maximal subgroups are the H-classes of idempotents.
pub fn power_data(s: &FiniteSemigroup) -> PowerData {
    let n = s.len();
    let mut index = vec![0; n];
    let mut period = vec![0; n];
    let mut seen = vec![0usize; n];
    for x in s.elements() {
        // seen[p] = exponent at which p first appeared, 0 if not yet.
        let mut visited = Vec::new();
        let mut p = x;
        let mut e = 1;
        while seen[p] == 0 {
            seen[p] = e;
            visited.push(p);
            p = s.mul(p, x);
            e += 1;
        }
        index[x] = seen[p];
        period[x] = e - seen[p];
        for v in visited {
            seen[v] = 0;
        }
    }
    let max_index = index.iter().copied().max().unwrap_or(1);
    let period_lcm = period.iter().fold(1, |acc: usize, &p| acc.lcm(&p));
    let uniform_k = max_index.div_ceil(period_lcm) * period_lcm;

    let green = crate::green::green(s);
    let mut subgroup_lcm_m = 1;
    for e in s.idempotents() {
        let h = green.h.class_of(e);
        for &g in green.h.class(h) {
            subgroup_lcm_m = subgroup_lcm_m.lcm(&group_order(s, g, e));
        }
    }
    PowerData {
        index,
        period,
        uniform_k,
        subgroup_lcm_m,
    }
}

/// Order of `g` in the group with identity `e`.
fn group_order(s: &FiniteSemigroup, g: usize, e: usize) -> usize {
    let mut p = g;
    let mut order = 1;
    while p != e {
        p = s.mul(p, g);
        order += 1;
    }
    order
}
