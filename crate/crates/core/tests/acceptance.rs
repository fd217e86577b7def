//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are always printed; exits non-zero on any failure.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use semigroup_lab::constructions::{
    build_b2, build_b21, build_cyclic, build_ic, build_semilattice_chain, build_tn2, builtin,
    embed_ic4, tn2_indices, verify_homomorphism,
};
use semigroup_lab::divisor::{has_divisor, DEFAULT_SEARCH_CAP};
use semigroup_lab::nfb::{build_instance, ds_power_identity_check, verify_holds};
use semigroup_lab::words::{
    is_isoterm_bounded, rewrite_step, satisfies, IsotermCheck, Satisfaction, WordSubstitution,
    DEFAULT_BUDGET,
};
use semigroup_lab::{
    cross_validate_lds, direct_product, green, in_ds, in_lds, Agreement, Error, FiniteSemigroup,
    Identity, Word, DEFAULT_ELEMENT_CAP,
};

const GOLDEN_REWRITE: &str = include_str!("golden/rewrite_trace.txt");

fn w(text: &str) -> Word {
    text.parse().unwrap()
}

fn timed<T>(bound: Duration, what: &str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    let took = start.elapsed();
    assert!(took < bound, "{what} took {took:?}, bound {bound:?}");
    out
}

/// Catalan numbers by the convolution recurrence.
fn catalan(n: usize) -> Vec<u64> {
    let mut c = vec![1u64];
    for k in 1..=n {
        c.push((0..k).map(|i| c[i] * c[k - 1 - i]).sum());
    }
    c
}

fn criterion_1() -> String {
    let c = catalan(7);
    let sizes = timed(Duration::from_secs(5), "IC_1..IC_6", || {
        (1..=6)
            .map(|m| build_ic(m).unwrap().len())
            .collect::<Vec<_>>()
    });
    for (m, &size) in (1..=6).zip(&sizes) {
        assert_eq!(size as u64, c[m + 1], "|IC_{m}|");
    }
    assert_eq!(sizes, [2, 5, 14, 42, 132, 429]);
    format!("|IC_m| for m = 1..6: {sizes:?}")
}

fn criterion_2() -> String {
    let second = Duration::from_secs(1);
    let ic4 = build_ic(4).unwrap();
    let g = timed(second, "green(IC_4)", || green(&ic4));
    assert_eq!(g.d.len(), 42);
    assert!(g.d.sizes().iter().all(|&s| s == 1));

    let b21 = build_b21();
    let g = timed(second, "green(B_2^1)", || green(&b21));
    let mut sizes = g.d.sizes();
    sizes.sort_unstable();
    assert_eq!(sizes, [1, 1, 4]);
    assert!(!timed(second, "in_ds(B_2^1)", || in_ds(&b21)));
    assert!(!timed(second, "in_lds(B_2^1)", || in_lds(&b21)));
    assert!(timed(second, "in_lds(IC_4)", || in_lds(&ic4)));
    "IC_4: 42 singleton D-classes, in LDS; B_2^1: D sizes {1,4,1}, not in DS or LDS".into()
}

/// Restricted-growth words over `x, y, z`: one representative per renaming.
fn canonical_words(max_len: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<u8>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for word in &frontier {
            let used = word.iter().copied().max().map_or(0, |m| m + 1);
            for letter in 0..=used.min(2) {
                let mut longer = word.clone();
                longer.push(letter);
                next.push(longer);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Every two occurrences of a letter have a once-occurring letter between.
fn sparse(word: &[u8]) -> bool {
    let count = |l: u8| word.iter().filter(|&&c| c == l).count();
    (0..word.len()).all(|p| {
        (p + 1..word.len())
            .filter(|&q| word[q] == word[p])
            .all(|q| word[p + 1..q].iter().any(|&c| count(c) == 1))
    })
}

fn criterion_3() -> String {
    let ic4 = build_ic(4).unwrap();
    let names = ["x", "y", "z"];
    let start = Instant::now();
    let words: Vec<Word> = canonical_words(5)
        .into_iter()
        .filter(|c| sparse(c))
        .map(|c| Word::new(c.iter().map(|&l| names[l as usize])).unwrap())
        .collect();
    for u in &words {
        assert!(u.is_sparse(), "{u} should be sparse");
        match is_isoterm_bounded(&ic4, u, 6, DEFAULT_BUDGET).unwrap() {
            IsotermCheck::NoShortCounterexample { .. } => {}
            IsotermCheck::NotIsoterm { witness } => panic!("{u} == {witness} holds in IC_4"),
        }
    }
    assert!(satisfies(
        &ic4,
        &"x x x x == x x x x x".parse().unwrap(),
        DEFAULT_BUDGET
    )
    .unwrap()
    .holds());
    let witness =
        match satisfies(&ic4, &"x x x == x x x x".parse().unwrap(), DEFAULT_BUDGET).unwrap() {
            Satisfaction::Fails(c) => c.describe(&ic4),
            Satisfaction::Holds { .. } => panic!("x^3 == x^4 holds in IC_4"),
        };
    let took = start.elapsed();
    assert!(
        took < Duration::from_secs(60),
        "isoterm suite took {took:?}"
    );
    format!(
        "{} sparse words are isoterms up to length 6; x^4 == x^5 holds; x^3 == x^4 fails at {witness}",
        words.len()
    )
}

fn criterion_4() -> String {
    timed(Duration::from_secs(1), "P0-P2 sweep", || {
        for n in 1..=4 {
            for k in 1..=2 {
                for m in 1..=2 {
                    let inst = build_instance(n, k, m).unwrap();
                    inst.check_p0().unwrap();
                    inst.check_p1().unwrap();
                    inst.check_p2().unwrap();
                }
            }
        }
    });
    let inst = build_instance(1, 1, 1).unwrap();
    assert_eq!(inst.u.len(), 28);
    assert_eq!(inst.projected_u(), w("x0 y1 x1 z0 y1 z1 x1 y1 x0 z1 y1 z0"));
    "P0, P1, P2 hold for n 1..4, k 1..2, m 1..2; |u_1| = 28 with the expected projection".into()
}

fn criterion_5() -> String {
    let mut report = Vec::new();
    for (s, name, k, m) in [
        (build_semilattice_chain(2), "semilattice", 1, 1),
        (build_cyclic(2), "C_2", 2, 2),
    ] {
        let inst = build_instance(3, k, m).unwrap();
        let vars: BTreeSet<String> = inst
            .u
            .alphabet()
            .union(&inst.v.alphabet())
            .cloned()
            .collect();
        let expected = 2u128.pow(vars.len() as u32);
        let result = timed(Duration::from_secs(30), name, || {
            verify_holds(&s, &inst, DEFAULT_BUDGET).unwrap()
        });
        assert_eq!(
            result,
            Satisfaction::Holds {
                substitutions: expected
            }
        );
        report.push(format!("{name}: {expected} = 2^{}", vars.len()));
    }
    let semilattice = build_semilattice_chain(2);
    let xy = vec![w("x y"); 4];
    assert!(ds_power_identity_check(&semilattice, &xy, DEFAULT_BUDGET)
        .unwrap()
        .holds());
    let x = vec![w("x"); 4];
    assert!(
        ds_power_identity_check(&build_cyclic(2), &x, DEFAULT_BUDGET)
            .unwrap()
            .holds()
    );
    let err = ds_power_identity_check(&build_b2(), &x, DEFAULT_BUDGET).unwrap_err();
    assert_eq!(err, Error::NotInDs);
    assert_eq!(err.to_string(), "not in DS");
    format!(
        "u_3 == v_3 holds by full enumeration ({}); power identity checks pass; B_2 rejected as not in DS",
        report.join(", ")
    )
}

fn criterion_6() -> String {
    let pairs = timed(Duration::from_secs(5), "embedding", || {
        let ic4 = build_ic(4).unwrap();
        let t42 = build_tn2(4).unwrap();
        let images = embed_ic4();
        let distinct: BTreeSet<_> = images.iter().collect();
        assert_eq!(distinct.len(), 42, "not injective");
        assert!(images
            .iter()
            .all(|m| m.is_upper_triangular() && m.is_row_monomial()));
        let f = tn2_indices(&images).unwrap();
        verify_homomorphism(&f, &ic4, &t42).unwrap()
    });
    assert_eq!(pairs, 1764);
    "IC_4 -> T_4(2): injective, upper triangular, row-monomial, homomorphic over 1764 pairs".into()
}

fn criterion_7() -> String {
    let start = Instant::now();
    let cases: [(&str, FiniteSemigroup); 6] = [
        ("B_2^1", build_b21()),
        ("B_2", build_b2()),
        ("semilattice:2", build_semilattice_chain(2)),
        ("semilattice:3", build_semilattice_chain(3)),
        ("cyclic:2", build_cyclic(2)),
        ("cyclic:3", build_cyclic(3)),
    ];
    for (name, s) in &cases {
        let cv = cross_validate_lds(s, 3, DEFAULT_SEARCH_CAP, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(
            cv.agreement,
            Agreement::Consistent,
            "{name}: {:?}",
            cv.search
        );
    }
    let b2 = build_b2();
    let sq = direct_product(&b2, &b2, DEFAULT_ELEMENT_CAP).unwrap();
    let wit = has_divisor(&sq, &b2, 2, DEFAULT_SEARCH_CAP)
        .unwrap()
        .expect("B_2 divides B_2^2");
    wit.validate(&sq, &b2).unwrap();
    let b21 = build_b21();
    let sq1 = direct_product(&b21, &b21, DEFAULT_ELEMENT_CAP).unwrap();
    let wit1 = has_divisor(&sq1, &b21, 3, DEFAULT_SEARCH_CAP)
        .unwrap()
        .expect("B_2^1 divides (B_2^1)^2");
    wit1.validate(&sq1, &b21).unwrap();
    let took = start.elapsed();
    assert!(
        took < Duration::from_secs(120),
        "divisor cross-validation took {took:?}"
    );
    format!(
        "LDS cross-validation consistent on 6 semigroups; witnesses re-validated ({}; {})",
        wit.describe(&sq, &b2),
        wit1.describe(&sq1, &b21)
    )
}

fn criterion_8() -> String {
    let rule: Identity = "x y == y x".parse().unwrap();
    let phi = WordSubstitution::parse_pairs(&[("x", "b"), ("y", "a")]).unwrap();
    let step = rewrite_step(&w("a b a b"), &rule, &phi, &w("a"), &w("b")).unwrap();
    assert_eq!(step.after, w("a a b b"));
    let trace = format!("{step}\n");
    assert_eq!(trace, GOLDEN_REWRITE);
    format!("trace matches golden: {}", trace.trim_end())
}

fn criterion_9() -> String {
    let names = [
        "ic:1",
        "ic:2",
        "ic:3",
        "ic:4",
        "b2",
        "b21",
        "t:2:2",
        "t:3:2",
        "semilattice:3",
        "cyclic:4",
    ];
    for name in names {
        let s = builtin(name).unwrap();
        let g = green(&s);
        g.check_identities()
            .unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(g.h, g.r.intersect(&g.l), "{name}: H != R ∩ L");
        assert_eq!(g.d, g.j, "{name}: D != J");
    }
    let x: BTreeSet<String> = ["x", "z"].iter().map(|s| s.to_string()).collect();
    let u = w("x y z x y y z");
    assert_eq!(u.project(&x).project(&x), u.project(&x));
    let b21 = build_b21();
    let sq = direct_product(&b21, &b21, DEFAULT_ELEMENT_CAP).unwrap();
    let runs: Vec<_> = [1, 2, 4]
        .iter()
        .map(|&t| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .unwrap()
                .install(|| {
                    has_divisor(&sq, &b21, 3, DEFAULT_SEARCH_CAP)
                        .unwrap()
                        .unwrap()
                })
        })
        .collect();
    assert!(
        runs.windows(2).all(|p| p[0] == p[1]),
        "witness depends on thread count"
    );
    runs[0].validate(&sq, &b21).unwrap();
    format!(
        "Green identities on {} builtins; projection idempotent; witnesses re-validate and are thread-count independent",
        names.len()
    )
}

type Criterion = (&'static str, fn() -> String);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 catalan counts", criterion_1),
        ("2 green structure", criterion_2),
        ("3 isoterm suite", criterion_3),
        ("4 nfb construction", criterion_4),
        ("5 identity verification", criterion_5),
        ("6 embedding", criterion_6),
        ("7 divisor cross-validation", criterion_7),
        ("8 rewrite replay", criterion_8),
        ("9 property suites", criterion_9),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        match catch_unwind(AssertUnwindSafe(run)) {
            Ok(detail) => println!("PASS criterion {name} ({:.2?}): {detail}", start.elapsed()),
            Err(panic) => {
                failed += 1;
                let why = panic
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("FAIL criterion {name} ({:.2?}): {why}", start.elapsed());
            }
        }
    }
    println!("{} of 9 acceptance criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
