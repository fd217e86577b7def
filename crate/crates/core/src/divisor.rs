//! Bounded divisor search: a divisor of `S` is a homomorphic image of a
//! subsemigroup of `S`. The search runs over generator tuples of the host
//! and over assignments of generator images in the target, and is used to
//! cross-check DS and LDS membership against `B_2` and `B_2^1` dividing
//! `S × S`.

use std::collections::BTreeSet;

use itertools::Itertools;
use rayon::prelude::*;

use crate::constructions::verify_homomorphism;
use crate::error::{Error, Result};
use crate::green::{in_ds, in_lds, local_submonoid};
use crate::semigroup::{direct_product, power_data, FiniteSemigroup};

/// Default cap on the number of (generator tuple, image assignment) pairs a
/// search may visit.
pub const DEFAULT_SEARCH_CAP: u128 = 50_000_000;

/// Least subsemigroup of `host` containing `gens`, sorted.
pub fn generated_subsemigroup(host: &FiniteSemigroup, gens: &[usize]) -> Vec<usize> {
    let mut member = vec![false; host.len()];
    let mut queue = Vec::new();
    for &g in gens {
        if !member[g] {
            member[g] = true;
            queue.push(g);
        }
    }
    let mut next = 0;
    while next < queue.len() {
        let a = queue[next];
        for &g in gens {
            let p = host.mul(a, g);
            if !member[p] {
                member[p] = true;
                queue.push(p);
            }
        }
        next += 1;
    }
    queue.sort_unstable();
    queue
}

/// A subsemigroup `U` of the host with an onto homomorphism `U → target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorWitness {
    pub generators: Vec<usize>,
    /// Elements of `U`, sorted.
    pub subsemigroup: Vec<usize>,
    /// `(u, φ(u))` for every `u` in `U`, sorted by `u`.
    pub mapping: Vec<(usize, usize)>,
    /// An identity of the host adjoined to a `U` found for the target minus
    /// its identity, mapped to the target's identity.
    pub adjoined_identity: Option<usize>,
}

impl DivisorWitness {
    pub fn image(&self, u: usize) -> Option<usize> {
        self.mapping
            .binary_search_by_key(&u, |&(a, _)| a)
            .ok()
            .map(|i| self.mapping[i].1)
    }

    /// Re-checks from scratch that `U` is closed, that the mapping is total
    /// on `U`, a homomorphism and onto.
    pub fn validate(
        &self,
        host: &FiniteSemigroup,
        target: &FiniteSemigroup,
    ) -> std::result::Result<(), String> {
        let u = host
            .restrict(&self.subsemigroup)
            .map_err(|e| format!("U is not closed: {e}"))?;
        if self.mapping.iter().map(|p| p.0).collect::<Vec<_>>() != self.subsemigroup {
            return Err("mapping is not defined exactly on U".into());
        }
        let f: Vec<usize> = self.mapping.iter().map(|p| p.1).collect();
        verify_homomorphism(&f, &u, target).map_err(|bad| {
            format!(
                "not a homomorphism at ({}, {})",
                u.label(bad.a),
                u.label(bad.b)
            )
        })?;
        let image: BTreeSet<usize> = f.iter().copied().collect();
        if image.len() != target.len() {
            return Err(format!(
                "not onto: image has {} of {} elements",
                image.len(),
                target.len()
            ));
        }
        Ok(())
    }

    /// Human-readable summary using host and target labels.
    pub fn describe(&self, host: &FiniteSemigroup, target: &FiniteSemigroup) -> String {
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|&g| {
                format!(
                    "{} -> {}",
                    host.label(g),
                    target.label(self.image(g).unwrap())
                )
            })
            .collect();
        let mut text = format!(
            "U generated by [{}], |U| = {}",
            gens.join(", "),
            self.subsemigroup.len()
        );
        if let Some(f) = self.adjoined_identity {
            text.push_str(&format!(
                ", adjoined identity {} -> {}",
                host.label(f),
                target.label(self.image(f).unwrap())
            ));
        }
        text
    }
}

/// Power relation `x^{i+p} = x^i` of each generator; images must obey it.
fn compatible_images(
    host: &FiniteSemigroup,
    gens: &[usize],
    target: &FiniteSemigroup,
    index: &[usize],
    period: &[usize],
) -> Vec<Vec<usize>> {
    gens.iter()
        .map(|&g| {
            let (i, p) = (index[g], period[g]);
            debug_assert_eq!(host.pow(g, i + p), host.pow(g, i));
            target
                .elements()
                .filter(|&t| target.pow(t, i + p) == target.pow(t, i))
                .collect()
        })
        .collect()
}

/// Extends generator images to a map on the generated subsemigroup via the
/// paired closure; `None` if some element receives two images.
fn extend(
    host: &FiniteSemigroup,
    gens: &[usize],
    images: &[usize],
    target: &FiniteSemigroup,
    scratch: &mut [Option<usize>],
) -> Option<Vec<(usize, usize)>> {
    let mut visited = Vec::new();
    let mut ok = true;
    for (&g, &t) in gens.iter().zip(images) {
        match scratch[g] {
            Some(prev) if prev != t => {
                ok = false;
                break;
            }
            Some(_) => {}
            None => {
                scratch[g] = Some(t);
                visited.push(g);
            }
        }
    }
    let mut next = 0;
    'closure: while ok && next < visited.len() {
        let a = visited[next];
        let ta = scratch[a].expect("visited");
        for (&g, &t) in gens.iter().zip(images) {
            let p = host.mul(a, g);
            let tp = target.mul(ta, t);
            match scratch[p] {
                Some(prev) if prev != tp => {
                    ok = false;
                    break 'closure;
                }
                Some(_) => {}
                None => {
                    scratch[p] = Some(tp);
                    visited.push(p);
                }
            }
        }
        next += 1;
    }
    let result = ok.then(|| {
        let mut m: Vec<(usize, usize)> =
            visited.iter().map(|&a| (a, scratch[a].unwrap())).collect();
        m.sort_unstable();
        m
    });
    for a in visited {
        scratch[a] = None;
    }
    result
}

fn search_tuple(
    host: &FiniteSemigroup,
    gens: &[usize],
    target: &FiniteSemigroup,
    index: &[usize],
    period: &[usize],
) -> Option<DivisorWitness> {
    let candidates = compatible_images(host, gens, target, index, period);
    let mut scratch = vec![None; host.len()];
    for images in candidates
        .iter()
        .map(|c| c.iter().copied())
        .multi_cartesian_product()
    {
        let Some(mapping) = extend(host, gens, &images, target, &mut scratch) else {
            continue;
        };
        let onto: BTreeSet<usize> = mapping.iter().map(|p| p.1).collect();
        if onto.len() == target.len() {
            return Some(DivisorWitness {
                generators: gens.to_vec(),
                subsemigroup: mapping.iter().map(|p| p.0).collect(),
                mapping,
                adjoined_identity: None,
            });
        }
    }
    None
}

/// Tries every assignment of target elements to `gens`, in lexicographic
/// order, and returns the first one extending to an onto homomorphism from
/// the subsemigroup generated by `gens`.
pub fn find_onto_morphism(
    host: &FiniteSemigroup,
    gens: &[usize],
    target: &FiniteSemigroup,
) -> Option<DivisorWitness> {
    let pd = power_data(host);
    search_tuple(host, gens, target, &pd.index, &pd.period)
}

/// Searches generator sets of size `1..=max_gens` (strictly increasing
/// index tuples, in lexicographic order) for a subsemigroup of `host` that
/// maps onto `target`. The reported witness is the first in that order.
///
/// Fails with [`Error::SearchInconclusive`] when the number of (tuple,
/// assignment) pairs exceeds `cap`.
pub fn has_divisor(
    host: &FiniteSemigroup,
    target: &FiniteSemigroup,
    max_gens: usize,
    cap: u128,
) -> Result<Option<DivisorWitness>> {
    let n = host.len() as u128;
    let t = target.len() as u128;
    let mut space: u128 = 0;
    let mut binom: u128 = 1;
    for g in 1..=max_gens as u128 {
        binom = binom.saturating_mul(n.saturating_sub(g - 1)) / g;
        space = space.saturating_add(binom.saturating_mul(t.saturating_pow(g as u32)));
    }
    if space > cap {
        return Err(Error::SearchInconclusive(format!(
            "{space} generator assignments exceed the cap {cap}"
        )));
    }
    let pd = power_data(host);
    for g in 1..=max_gens.min(host.len()) {
        let tuples: Vec<Vec<usize>> = host.elements().combinations(g).collect();
        let found = tuples.par_iter().find_map_first(|gens| {
            if generated_subsemigroup(host, gens).len() < target.len() {
                return None;
            }
            search_tuple(host, gens, target, &pd.index, &pd.period)
        });
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// For a monoid target `T` with identity `1` whose other elements form a
/// subsemigroup `T'`: looks inside `eSe × eSe ⊆ S × S` for a divisor onto
/// `T'` and adjoins `f = (e, e)` mapped to `1`. Indices refer to
/// `direct_product(s, s)`.
pub fn monoid_divisor_via_local_submonoids(
    s: &FiniteSemigroup,
    target: &FiniteSemigroup,
    max_gens: usize,
    cap: u128,
) -> Result<Option<DivisorWitness>> {
    let one = target.identity().ok_or(Error::NotAMonoid)?;
    let core_elems: Vec<usize> = target.elements().filter(|&t| t != one).collect();
    let core = target.restrict(&core_elems)?;
    let n = s.len();
    for e in s.idempotents() {
        let local = local_submonoid(s, e)?;
        let members: Vec<usize> = local.labels().iter().map(|l| s.find(l).unwrap()).collect();
        let square = direct_product(&local, &local, usize::MAX)?;
        let Some(w) = has_divisor(&square, &core, max_gens, cap)? else {
            continue;
        };
        let lm = local.len();
        let lift = |a: usize| members[a / lm] * n + members[a % lm];
        let f = e * n + e;
        let mut mapping: Vec<(usize, usize)> = w
            .mapping
            .iter()
            .map(|&(a, t)| (lift(a), core_elems[t]))
            .collect();
        if mapping.iter().any(|&(a, _)| a == f) {
            continue;
        }
        mapping.push((f, one));
        mapping.sort_unstable();
        return Ok(Some(DivisorWitness {
            generators: w.generators.iter().map(|&g| lift(g)).collect(),
            subsemigroup: mapping.iter().map(|p| p.0).collect(),
            mapping,
            adjoined_identity: Some(f),
        }));
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(DivisorWitness),
    NotFound,
    Inconclusive(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Agreement {
    /// Structural membership and the search agree.
    Consistent,
    /// Not a member, but the bounded search found no divisor.
    InconclusiveBoundTooSmall,
    /// The search hit its cap before deciding anything.
    Inconclusive,
    /// A divisor was found for a member: an implementation bug.
    Contradiction,
}

/// Structural membership next to the divisor search on `S × S`.
#[derive(Debug, Clone)]
pub struct CrossValidation {
    pub member: bool,
    pub product: FiniteSemigroup,
    pub target: FiniteSemigroup,
    pub search: SearchOutcome,
    pub agreement: Agreement,
}

fn agreement(member: bool, search: &SearchOutcome) -> Agreement {
    match (member, search) {
        (true, SearchOutcome::Found(_)) => Agreement::Contradiction,
        (false, SearchOutcome::Found(_)) | (true, SearchOutcome::NotFound) => Agreement::Consistent,
        (false, SearchOutcome::NotFound) => Agreement::InconclusiveBoundTooSmall,
        (_, SearchOutcome::Inconclusive(_)) => Agreement::Inconclusive,
    }
}

fn outcome(r: Result<Option<DivisorWitness>>) -> Result<SearchOutcome> {
    match r {
        Ok(Some(w)) => Ok(SearchOutcome::Found(w)),
        Ok(None) => Ok(SearchOutcome::NotFound),
        Err(Error::SearchInconclusive(why)) => Ok(SearchOutcome::Inconclusive(why)),
        Err(e) => Err(e),
    }
}

/// `S ∈ DS` against `B_2` dividing `S × S`.
pub fn cross_validate_ds(
    s: &FiniteSemigroup,
    max_gens: usize,
    cap: u128,
    element_cap: usize,
) -> Result<CrossValidation> {
    let product = direct_product(s, s, element_cap)?;
    let target = crate::constructions::build_b2();
    let member = in_ds(s);
    let search = outcome(has_divisor(&product, &target, max_gens, cap))?;
    finish(member, product, target, search)
}

/// `S ∈ LDS` against `B_2^1` dividing `S × S`. A direct search comes first;
/// if it finds nothing, `B_2` is sought inside `eSe × eSe` and extended by
/// `(e, e) ↦ 1`.
pub fn cross_validate_lds(
    s: &FiniteSemigroup,
    max_gens: usize,
    cap: u128,
    element_cap: usize,
) -> Result<CrossValidation> {
    let product = direct_product(s, s, element_cap)?;
    let target = crate::constructions::build_b21();
    let member = in_lds(s);
    let mut search = outcome(has_divisor(&product, &target, max_gens, cap))?;
    if !matches!(search, SearchOutcome::Found(_)) {
        if let SearchOutcome::Found(w) = outcome(monoid_divisor_via_local_submonoids(
            s, &target, max_gens, cap,
        ))? {
            search = SearchOutcome::Found(w);
        }
    }
    finish(member, product, target, search)
}

fn finish(
    member: bool,
    product: FiniteSemigroup,
    target: FiniteSemigroup,
    search: SearchOutcome,
) -> Result<CrossValidation> {
    if let SearchOutcome::Found(w) = &search {
        w.validate(&product, &target)
            .map_err(|e| Error::Precondition(format!("witness failed re-validation: {e}")))?;
    }
    let agreement = agreement(member, &search);
    Ok(CrossValidation {
        member,
        product,
        target,
        search,
        agreement,
    })
}
