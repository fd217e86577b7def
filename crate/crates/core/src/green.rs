//! Green's relations, D-class structure, local submonoids and membership in
//! the pseudovarieties DS and LDS.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::semigroup::FiniteSemigroup;

/// A partition of `0..n` into classes numbered by their least element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl Partition {
    /// Groups elements with equal keys.
    pub fn from_keys<K: Ord + Clone>(keys: &[K]) -> Partition {
        let mut ids = std::collections::BTreeMap::new();
        let mut class_of = Vec::with_capacity(keys.len());
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for (x, k) in keys.iter().enumerate() {
            let next = classes.len();
            let c = *ids.entry(k.clone()).or_insert(next);
            if c == next {
                classes.push(Vec::new());
            }
            classes[c].push(x);
            class_of.push(c);
        }
        Partition { class_of, classes }
    }

    /// Classes of an equivalence relation given as a predicate. Each class is
    /// read off the row of its least element.
    pub fn from_equivalence(n: usize, related: impl Fn(usize, usize) -> bool) -> Partition {
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let c = classes.len();
            let members: Vec<usize> = (x..n)
                .filter(|&y| class_of[y] == usize::MAX && related(x, y))
                .collect();
            for &y in &members {
                class_of[y] = c;
            }
            classes.push(members);
        }
        Partition { class_of, classes }
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn class(&self, c: usize) -> &[usize] {
        &self.classes[c]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Number of classes.
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn same(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// Every class of `self` lies inside a class of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.classes
            .iter()
            .all(|c| c.iter().all(|&y| coarser.same(c[0], y)))
    }

    /// Meet of two partitions.
    pub fn intersect(&self, other: &Partition) -> Partition {
        let keys: Vec<(usize, usize)> = (0..self.class_of.len())
            .map(|x| (self.class_of[x], other.class_of[x]))
            .collect();
        Partition::from_keys(&keys)
    }
}

/// Per-D-class flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DClassInfo {
    pub contains_idempotent: bool,
    pub is_subsemigroup: bool,
}

/// Green's relations of a finite semigroup.
#[derive(Debug, Clone)]
pub struct GreenData {
    pub r: Partition,
    pub l: Partition,
    pub j: Partition,
    pub h: Partition,
    pub d: Partition,
    pub d_info: Vec<DClassInfo>,
}

impl GreenData {
    /// Every D-class containing an idempotent is a subsemigroup.
    pub fn in_ds(&self) -> bool {
        self.d_info
            .iter()
            .all(|i| !i.contains_idempotent || i.is_subsemigroup)
    }

    /// Re-checks `H = R ∩ L` and `D = J` as partition equalities and that
    /// `H` refines `R` and `L`, which refine `D`.
    pub fn check_identities(&self) -> std::result::Result<(), String> {
        if self.h != self.r.intersect(&self.l) {
            return Err("H differs from R ∩ L".into());
        }
        if self.d != self.j {
            return Err("D differs from J".into());
        }
        for (name, fine, coarse) in [
            ("H ⊆ R", &self.h, &self.r),
            ("H ⊆ L", &self.h, &self.l),
            ("R ⊆ D", &self.r, &self.d),
            ("L ⊆ D", &self.l, &self.d),
        ] {
            if !fine.refines(coarse) {
                return Err(format!("{name} fails"));
            }
        }
        Ok(())
    }
}

/// Principal right ideals `xS^1` (or left ideals `S^1x` when `left`).
fn one_sided_ideals(s: &FiniteSemigroup, left: bool) -> Vec<FixedBitSet> {
    let n = s.len();
    s.elements()
        .into_par_iter()
        .map(|x| {
            let mut set = FixedBitSet::with_capacity(n);
            set.insert(x);
            for y in 0..n {
                set.insert(if left { s.mul(y, x) } else { s.mul(x, y) });
            }
            set
        })
        .collect()
}

/// Computes all five of Green's relations.
///
/// `D` is computed as the composition `R∘L`; the result is checked against
/// `L∘R` and against `J`, and a mismatch panics since it can only come from
/// a corrupted table.
pub fn green(s: &FiniteSemigroup) -> GreenData {
    let n = s.len();
    let right = one_sided_ideals(s, false);
    let left = one_sided_ideals(s, true);
    let r = Partition::from_equivalence(n, |x, y| right[x][y] && right[y][x]);
    let l = Partition::from_equivalence(n, |x, y| left[x][y] && left[y][x]);

    // S^1 x S^1 as the union of the right ideals of all a x with a in S^1.
    let two_sided: Vec<FixedBitSet> = s
        .elements()
        .into_par_iter()
        .map(|x| {
            let mut set = right[x].clone();
            for a in 0..n {
                set.union_with(&right[s.mul(a, x)]);
            }
            set
        })
        .collect();
    let j = Partition::from_equivalence(n, |x, y| two_sided[x][y] && two_sided[y][x]);
    let h = r.intersect(&l);

    // L-classes met by each R-class, and R-classes met by each L-class.
    let mut l_of_r = vec![FixedBitSet::with_capacity(l.len()); r.len()];
    let mut r_of_l = vec![FixedBitSet::with_capacity(r.len()); l.len()];
    for x in 0..n {
        l_of_r[r.class_of(x)].insert(l.class_of(x));
        r_of_l[l.class_of(x)].insert(r.class_of(x));
    }
    let rl = |x: usize, y: usize| l_of_r[r.class_of(x)][l.class_of(y)];
    let lr = |x: usize, y: usize| r_of_l[l.class_of(x)][r.class_of(y)];
    let d = Partition::from_equivalence(n, rl);
    for x in 0..n {
        for y in 0..n {
            assert_eq!(rl(x, y), lr(x, y), "R∘L and L∘R differ");
            assert_eq!(rl(x, y), d.same(x, y), "R∘L is not an equivalence");
        }
    }
    assert_eq!(d, j, "D and J differ");

    let d_info = d
        .classes()
        .iter()
        .map(|class| {
            let c = d.class_of(class[0]);
            DClassInfo {
                contains_idempotent: class.iter().any(|&x| s.is_idempotent(x)),
                is_subsemigroup: class
                    .iter()
                    .all(|&a| class.iter().all(|&b| d.class_of(s.mul(a, b)) == c)),
            }
        })
        .collect();
    GreenData {
        r,
        l,
        j,
        h,
        d,
        d_info,
    }
}

pub fn in_ds(s: &FiniteSemigroup) -> bool {
    green(s).in_ds()
}

/// The local submonoid `eSe`, elements in increasing index order, with `e`
/// as its identity.
pub fn local_submonoid(s: &FiniteSemigroup, e: usize) -> Result<FiniteSemigroup> {
    if !s.is_idempotent(e) {
        return Err(Error::NotIdempotent(s.label(e).to_string()));
    }
    let elems: BTreeSet<usize> = s.elements().map(|x| s.mul(s.mul(e, x), e)).collect();
    let elems: Vec<usize> = elems.into_iter().collect();
    s.restrict(&elems)
}

/// Every local submonoid lies in DS.
pub fn in_lds(s: &FiniteSemigroup) -> bool {
    s.idempotents().into_iter().all(|e| {
        let local = local_submonoid(s, e).expect("e is idempotent");
        in_ds(&local)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::*;
    use crate::semigroup::{direct_product, DEFAULT_ELEMENT_CAP};

    fn sorted(mut v: Vec<usize>) -> Vec<usize> {
        v.sort_unstable();
        v
    }

    #[test]
    fn b21_d_classes() {
        let b21 = build_b21();
        let g = green(&b21);
        assert_eq!(sorted(g.d.sizes()), vec![1, 1, 4]);
        let units = g.d.class_of(b21.find("E12").unwrap());
        for name in ["E11", "E21", "E22"] {
            assert_eq!(g.d.class_of(b21.find(name).unwrap()), units);
        }
        assert!(!g.in_ds());
        assert!(!in_lds(&b21));
        g.check_identities().unwrap();
    }

    #[test]
    fn ic4_is_j_trivial() {
        let ic4 = build_ic(4).unwrap();
        let g = green(&ic4);
        assert_eq!(g.d.len(), 42);
        assert!(g.in_ds());
        assert!(in_lds(&ic4));
    }

    #[test]
    fn semilattice_and_groups() {
        let sl = build_semilattice_chain(2);
        let g = green(&sl);
        assert_eq!(g.d.sizes(), vec![1, 1]);
        assert!(in_lds(&sl));
        for n in 1..=6 {
            let c = build_cyclic(n);
            let g = green(&c);
            assert_eq!(g.d.len(), 1);
            assert_eq!(g.h.len(), 1);
            assert!(g.in_ds());
        }
    }

    #[test]
    fn b2_is_in_lds_but_not_ds() {
        let b2 = build_b2();
        assert!(!in_ds(&b2));
        assert!(in_lds(&b2));
    }

    #[test]
    fn local_submonoids_of_b21() {
        let b21 = build_b21();
        let one = b21.identity().unwrap();
        assert_eq!(local_submonoid(&b21, one).unwrap().len(), 6);
        let e11 = b21.find("E11").unwrap();
        let local = local_submonoid(&b21, e11).unwrap();
        let mut labels = local.labels().to_vec();
        labels.sort();
        assert_eq!(labels, vec!["0".to_string(), "E11".to_string()]);
        assert_eq!(local.identity(), local.find("E11"));
        let e12 = b21.find("E12").unwrap();
        assert_eq!(
            local_submonoid(&b21, e12).unwrap_err(),
            Error::NotIdempotent("E12".into())
        );
    }

    #[test]
    fn semilattice_local_submonoid_is_down_set() {
        let sl = build_semilattice_chain(5);
        for e in sl.elements() {
            let local = local_submonoid(&sl, e).unwrap();
            assert_eq!(local.len(), e + 1);
        }
    }

    #[test]
    fn product_has_at_least_as_many_d_classes() {
        let pairs = [
            (build_b2(), build_semilattice_chain(2)),
            (build_cyclic(2), build_b21()),
            (build_ic(2).unwrap(), build_ic(3).unwrap()),
        ];
        for (s, t) in pairs {
            let p = direct_product(&s, &t, DEFAULT_ELEMENT_CAP).unwrap();
            let gp = green(&p);
            gp.check_identities().unwrap();
            assert!(gp.d.len() >= green(&s).d.len().max(green(&t).d.len()));
        }
    }

    #[test]
    fn partitions() {
        let p = Partition::from_keys(&[3, 1, 3, 2]);
        assert_eq!(p.classes(), &[vec![0, 2], vec![1], vec![3]]);
        let q = Partition::from_equivalence(4, |x, y| x % 2 == y % 2);
        assert!(p.refines(&q));
        assert!(!q.refines(&p));
        assert_eq!(p.intersect(&q).len(), 3);
    }
}
