//! Concrete semigroups: the i-Catalan monoids `IC_m`, the Brandt semigroup
//! `B_2` and monoid `B_2^1`, upper triangular matrices `T_n(2)`, chains and
//! cyclic groups, plus the embedding `IC_4 → T_4(2)`.

mod matrix;
mod transform;

pub use matrix::{BinaryMatrix, MAX_DIMENSION};
pub use transform::PartialTransformation;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::semigroup::{generate, FiniteSemigroup, DEFAULT_ELEMENT_CAP};

/// Largest `m` accepted by [`build_ic`].
pub const MAX_IC_DEGREE: usize = 8;
/// Largest `n` accepted by [`build_tn2`].
pub const MAX_TN2_DIMENSION: usize = 4;

/// All injective, order preserving, extensive partial maps of `[m]`, in
/// lexicographic order of their image vectors with "undefined" sorting last.
/// The identity comes first and the empty map last.
pub fn ic_elements(m: usize) -> Result<Vec<PartialTransformation>> {
    if !(1..=MAX_IC_DEGREE).contains(&m) {
        return Err(Error::OutOfRange {
            what: "IC degree",
            value: m,
        });
    }
    let choices: Vec<Option<usize>> = (1..=m).map(Some).chain([None]).collect();
    let elems = (0..m)
        .map(|_| choices.iter().copied())
        .multi_cartesian_product()
        .filter_map(|image| {
            let t = PartialTransformation::new(image).expect("points are in range");
            (t.is_injective() && t.is_order_preserving() && t.is_extensive()).then_some(t)
        })
        .collect();
    Ok(elems)
}

/// The i-Catalan monoid `IC_m`, elements numbered as in [`ic_elements`].
pub fn build_ic(m: usize) -> Result<FiniteSemigroup> {
    let elems = ic_elements(m)?;
    let g = generate(
        &elems,
        PartialTransformation::then,
        ToString::to_string,
        DEFAULT_ELEMENT_CAP,
    )?;
    debug_assert_eq!(g.carriers, elems);
    Ok(g.semigroup)
}

fn b2_label(m: &BinaryMatrix) -> String {
    if *m == BinaryMatrix::identity(2) {
        return "1".into();
    }
    if *m == BinaryMatrix::zero(2) {
        return "0".into();
    }
    let (i, j) = (0..2)
        .cartesian_product(0..2)
        .find(|&(i, j)| m.get(i, j))
        .expect("nonzero");
    format!("E{}{}", i + 1, j + 1)
}

/// The five matrices of `B_2` in closure order from `E12, E21`.
pub fn b2_elements() -> Vec<BinaryMatrix> {
    let seeds = [BinaryMatrix::unit(2, 1, 2), BinaryMatrix::unit(2, 2, 1)];
    generate(&seeds, BinaryMatrix::mul, b2_label, DEFAULT_ELEMENT_CAP)
        .expect("B_2 is a semigroup")
        .carriers
}

/// The Brandt semigroup `B_2 = {E11, E12, E21, E22, 0}`.
pub fn build_b2() -> FiniteSemigroup {
    let seeds = [BinaryMatrix::unit(2, 1, 2), BinaryMatrix::unit(2, 2, 1)];
    generate(&seeds, BinaryMatrix::mul, b2_label, DEFAULT_ELEMENT_CAP)
        .expect("B_2 is a semigroup")
        .semigroup
}

/// The Brandt monoid `B_2^1`: `B_2` with the identity matrix, labelled `1`.
pub fn build_b21() -> FiniteSemigroup {
    let seeds = [
        BinaryMatrix::unit(2, 1, 2),
        BinaryMatrix::unit(2, 2, 1),
        BinaryMatrix::identity(2),
    ];
    generate(&seeds, BinaryMatrix::mul, b2_label, DEFAULT_ELEMENT_CAP)
        .expect("B_2^1 is a monoid")
        .semigroup
}

/// All upper triangular `n × n` matrices over GF(2), ordered by their free
/// entries read row by row as a binary number.
pub fn tn2_elements(n: usize) -> Result<Vec<BinaryMatrix>> {
    if !(1..=MAX_TN2_DIMENSION).contains(&n) {
        return Err(Error::OutOfRange {
            what: "T_n(2) dimension",
            value: n,
        });
    }
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let elems = (0..1u64 << slots.len())
        .map(|code| {
            let mut m = BinaryMatrix::zero(n);
            for (bit, &(i, j)) in slots.iter().enumerate() {
                m.set(i, j, code >> (slots.len() - 1 - bit) & 1 == 1);
            }
            m
        })
        .collect();
    Ok(elems)
}

/// `T_n(2)`, elements numbered as in [`tn2_elements`] and labelled by rows.
pub fn build_tn2(n: usize) -> Result<FiniteSemigroup> {
    let elems = tn2_elements(n)?;
    let g = generate(
        &elems,
        BinaryMatrix::mul,
        ToString::to_string,
        DEFAULT_ELEMENT_CAP,
    )?;
    if g.carriers.len() != elems.len() {
        return Err(Error::MalformedTable(
            "upper triangular matrices are not closed".into(),
        ));
    }
    Ok(g.semigroup)
}

/// The chain `s0 < s1 < ... ` under minimum.
pub fn build_semilattice_chain(n: usize) -> FiniteSemigroup {
    assert!(n >= 1, "chain needs at least one element");
    let labels = (0..n).map(|i| format!("s{i}")).collect();
    let table = (0..n).map(|a| (0..n).map(|b| a.min(b)).collect()).collect();
    FiniteSemigroup::from_table(labels, table).expect("chains are semilattices")
}

/// The cyclic group of order `n`, element `c{i}` standing for the `i`-th
/// power of a generator.
pub fn build_cyclic(n: usize) -> FiniteSemigroup {
    assert!(n >= 1, "group order must be positive");
    let labels = (0..n).map(|i| format!("c{i}")).collect();
    let table = (0..n)
        .map(|a| (0..n).map(|b| (a + b) % n).collect())
        .collect();
    FiniteSemigroup::from_table(labels, table).expect("cyclic groups are semigroups")
}

/// The 0/1 matrix with `a_ij = 1` exactly when `iα = j`.
pub fn transformation_matrix(t: &PartialTransformation) -> BinaryMatrix {
    let mut m = BinaryMatrix::zero(t.degree());
    for (i, v) in t.images().enumerate() {
        if let Some(j) = v {
            m.set(i, j - 1, true);
        }
    }
    m
}

/// Image of every element of `IC_4` (numbered as in [`build_ic`]) in
/// `T_4(2)`.
pub fn embed_ic4() -> Vec<BinaryMatrix> {
    ic_elements(4)
        .expect("4 is in range")
        .iter()
        .map(transformation_matrix)
        .collect()
}

/// Index of each matrix in `T_n(2)` as numbered by [`tn2_elements`].
pub fn tn2_indices(matrices: &[BinaryMatrix]) -> Result<Vec<usize>> {
    let n = matrices.first().map_or(1, BinaryMatrix::dimension);
    let all = tn2_elements(n)?;
    matrices
        .iter()
        .map(|m| {
            all.binary_search_by_key(&tn2_code(m), tn2_code)
                .map_err(|_| Error::Precondition(format!("{m} is not upper triangular")))
        })
        .collect()
}

fn tn2_code(m: &BinaryMatrix) -> u64 {
    let n = m.dimension();
    let mut code = 0;
    for i in 0..n {
        for j in i..n {
            code = code << 1 | m.get(i, j) as u64;
        }
    }
    code | if m.is_upper_triangular() { 0 } else { 1 << 63 }
}

/// First pair `(a, b)` with `f(ab) != f(a)f(b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NotHomomorphic {
    pub a: usize,
    pub b: usize,
}

/// Checks `f(ab) = f(a) f(b)` over all pairs in index order; on success
/// returns the number of pairs checked.
pub fn verify_homomorphism(
    f: &[usize],
    s: &FiniteSemigroup,
    t: &FiniteSemigroup,
) -> std::result::Result<usize, NotHomomorphic> {
    assert_eq!(f.len(), s.len(), "map must be total on the source");
    for a in s.elements() {
        for b in s.elements() {
            if f[s.mul(a, b)] != t.mul(f[a], f[b]) {
                return Err(NotHomomorphic { a, b });
            }
        }
    }
    Ok(s.len() * s.len())
}

/// Resolves `ic:m`, `b2`, `b21`, `t:n:2`, `semilattice:n` and `cyclic:n`.
pub fn builtin(name: &str) -> Result<FiniteSemigroup> {
    let unknown = || Error::UnknownBuiltin(name.to_string());
    let parts: Vec<&str> = name.split(':').collect();
    let num = |s: &str| s.parse::<usize>().map_err(|_| unknown());
    match parts.as_slice() {
        ["b2"] => Ok(build_b2()),
        ["b21"] => Ok(build_b21()),
        ["ic", m] => build_ic(num(m)?),
        ["t", n, "2"] => build_tn2(num(n)?),
        ["semilattice", n] => match num(n)? {
            0 => Err(unknown()),
            n => Ok(build_semilattice_chain(n)),
        },
        ["cyclic", n] => match num(n)? {
            0 => Err(unknown()),
            n => Ok(build_cyclic(n)),
        },
        _ => Err(unknown()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn catalan(n: usize) -> usize {
        // C_0 = 1, C_{k+1} = sum C_i C_{k-i}
        let mut c = vec![1usize];
        for k in 0..n {
            c.push((0..=k).map(|i| c[i] * c[k - i]).sum());
        }
        c[n]
    }

    #[test]
    fn ic_sizes_are_catalan() {
        assert_eq!(build_ic(1).unwrap().len(), 2);
        assert_eq!(build_ic(4).unwrap().len(), 42);
        assert_eq!(build_ic(5).unwrap().len(), 132);
        for m in 1..=6 {
            assert_eq!(ic_elements(m).unwrap().len(), catalan(m + 1), "m = {m}");
        }
        assert!(build_ic(0).is_err());
        assert!(build_ic(9).is_err());
    }

    #[test]
    fn ic_filter_matches_brute_force_count() {
        // Independent count over all 6^5 partial maps of [5].
        let mut count = 0;
        for code in 0..6usize.pow(5) {
            let img: Vec<usize> = (0..5).map(|i| code / 6usize.pow(i) % 6).collect();
            let defined: Vec<(usize, usize)> = img
                .iter()
                .enumerate()
                .filter(|(_, &v)| v > 0)
                .map(|(i, &v)| (i + 1, v))
                .collect();
            let ok =
                defined.iter().all(|&(i, v)| i <= v) && defined.windows(2).all(|w| w[0].1 < w[1].1);
            count += ok as usize;
        }
        assert_eq!(count, 132);
    }

    #[test]
    fn ic4_identity_and_zero() {
        let ic4 = build_ic(4).unwrap();
        assert_eq!(ic4.identity(), Some(0));
        assert_eq!(ic4.label(0), "1234");
        assert_eq!(ic4.label(41), "----");
    }

    #[test]
    fn ic4_closure_properties() {
        let elems = ic_elements(4).unwrap();
        for a in &elems {
            for b in &elems {
                let c = a.compose(b).unwrap();
                assert!(c.is_injective() && c.is_order_preserving() && c.is_extensive());
            }
        }
    }

    #[test]
    fn brandt() {
        let b2 = build_b2();
        assert_eq!(b2.len(), 5);
        assert_eq!(b2.identity(), None);
        let (e12, e21) = (b2.find("E12").unwrap(), b2.find("E21").unwrap());
        assert_eq!(b2.label(b2.mul(e12, e21)), "E11");
        assert_eq!(b2.label(b2.mul(e12, e12)), "0");
        let b21 = build_b21();
        assert_eq!(b21.len(), 6);
        assert_eq!(b21.identity(), b21.find("1"));
        assert_eq!(b2_elements().len(), 5);
    }

    #[test]
    fn triangular_sizes() {
        assert_eq!(build_tn2(1).unwrap().len(), 2);
        assert_eq!(build_tn2(2).unwrap().len(), 8);
        assert_eq!(build_tn2(3).unwrap().len(), 64);
        assert!(build_tn2(5).is_err());
        for n in 1..=3 {
            let all = tn2_elements(n).unwrap();
            for a in &all {
                for b in &all {
                    assert!(a.mul(b).is_upper_triangular());
                }
            }
        }
    }

    #[test]
    fn embedding_examples() {
        let images = embed_ic4();
        let elems = ic_elements(4).unwrap();
        assert_eq!(images[0], BinaryMatrix::identity(4));
        assert_eq!(images[41], BinaryMatrix::zero(4));
        let one_two = PartialTransformation::from_pairs(4, &[(1, 2)]).unwrap();
        let k = elems.iter().position(|t| *t == one_two).unwrap();
        assert_eq!(images[k], BinaryMatrix::unit(4, 1, 2));
        for m in &images {
            assert!(m.is_upper_triangular() && m.is_row_monomial());
        }
        for a in &images {
            for b in &images {
                assert!(a.product_without_cancellation(b));
            }
        }
    }

    #[test]
    fn homomorphism_checks() {
        let s = build_b21();
        let id: Vec<usize> = s.elements().collect();
        assert_eq!(verify_homomorphism(&id, &s, &s), Ok(36));
        // constant map to E12, which is not idempotent
        let e12 = s.find("E12").unwrap();
        let constant = vec![e12; s.len()];
        assert_eq!(
            verify_homomorphism(&constant, &s, &s),
            Err(NotHomomorphic { a: 0, b: 0 })
        );
    }

    #[test]
    fn tn2_index_lookup() {
        let all = tn2_elements(3).unwrap();
        let idx = tn2_indices(&all).unwrap();
        assert_eq!(idx, (0..64).collect::<Vec<_>>());
        assert!(tn2_indices(&[BinaryMatrix::unit(3, 2, 1)]).is_err());
    }

    #[test]
    fn builtins() {
        assert_eq!(builtin("ic:4").unwrap().len(), 42);
        assert_eq!(builtin("b2").unwrap().len(), 5);
        assert_eq!(builtin("b21").unwrap().len(), 6);
        assert_eq!(builtin("t:2:2").unwrap().len(), 8);
        assert_eq!(builtin("semilattice:3").unwrap().len(), 3);
        assert_eq!(builtin("cyclic:6").unwrap().len(), 6);
        for bad in ["ic", "t:3:3", "cyclic:0", "b3", "ic:x"] {
            assert!(
                matches!(builtin(bad), Err(Error::UnknownBuiltin(_))),
                "{bad}"
            );
        }
    }
}
