//! Shared fixtures for the criterion benches.

use semigroup_lab::constructions::{build_b21, build_ic, build_tn2};
use semigroup_lab::{direct_product, FiniteSemigroup, DEFAULT_ELEMENT_CAP};

pub fn ic(m: usize) -> FiniteSemigroup {
    build_ic(m).expect("IC_m builds")
}

pub fn tn2(n: usize) -> FiniteSemigroup {
    build_tn2(n).expect("T_n(2) builds")
}

pub fn b21_squared() -> FiniteSemigroup {
    let b21 = build_b21();
    direct_product(&b21, &b21, DEFAULT_ELEMENT_CAP).expect("36 elements")
}
