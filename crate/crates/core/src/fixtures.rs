//! Built-in example algebras, modules and complexes.

use crate::algebra::BoundQuiverAlgebra;
use crate::dsl::parse_algebra;

pub const ALG_A3: &str = include_str!("../fixtures/ALG-A3.alg");
pub const ALG_A3_SOURCE: &str = include_str!("../fixtures/ALG-A3-SOURCE.alg");
pub const ALG_A3_SINK: &str = include_str!("../fixtures/ALG-A3-SINK.alg");
pub const ALG_HER4: &str = include_str!("../fixtures/ALG-HER4.alg");
pub const ALG_GEN4: &str = include_str!("../fixtures/ALG-GEN4.alg");
pub const ALG_A3_TILDE: &str = include_str!("../fixtures/ALG-A3-TILDE.alg");
pub const T_41: &str = include_str!("../fixtures/T-41.mod");
pub const P_41: &str = include_str!("../fixtures/P-41.cpx");
pub const P_42: &str = include_str!("../fixtures/P-42.cpx");
pub const P_43: &str = include_str!("../fixtures/P-43.cpx");

/// Algebra fixtures by name.
pub const ALGEBRAS: &[(&str, &str)] = &[
    ("ALG-A3", ALG_A3),
    ("ALG-A3-SOURCE", ALG_A3_SOURCE),
    ("ALG-A3-SINK", ALG_A3_SINK),
    ("ALG-HER4", ALG_HER4),
    ("ALG-GEN4", ALG_GEN4),
    ("ALG-A3-TILDE", ALG_A3_TILDE),
];

pub fn algebra(name: &str) -> Option<BoundQuiverAlgebra> {
    ALGEBRAS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| parse_algebra(text, None).expect("built-in fixture parses"))
}

pub fn alg_a3() -> BoundQuiverAlgebra {
    algebra("ALG-A3").unwrap()
}

pub fn alg_her4() -> BoundQuiverAlgebra {
    algebra("ALG-HER4").unwrap()
}

pub fn alg_gen4() -> BoundQuiverAlgebra {
    algebra("ALG-GEN4").unwrap()
}

/// Complex fixtures by name, with the algebra each lives over.
pub const COMPLEXES: &[(&str, &str, &str)] = &[("P-41", "ALG-HER4", P_41), ("P-42", "ALG-GEN4", P_42), ("P-43", "ALG-A3", P_43)];

/// Module fixtures by name, with their algebra.
pub const MODULES: &[(&str, &str, &str)] = &[("T-41", "ALG-HER4", T_41)];
