//! Ready-made presentations used in documentation, tests and benches.
//!
//! Each constructor parses the corresponding file under `presentations/`, so
//! the in-code fixtures and the on-disk CLI examples cannot drift apart.

use crate::quiver::{parse_presentation, QuiverPresentation};

/// One vertex with two loops `a`, `b` and relations `a a a`, `b b b`,
/// `a b`, `b a`.
pub fn gp3() -> QuiverPresentation {
    parse_presentation(include_str!("../presentations/gp3.quiver"))
        .expect("bundled presentation parses")
}

/// Two parallel arrows `a`, `b` from `x` to `y`, no relations.
pub fn kronecker() -> QuiverPresentation {
    parse_presentation(include_str!("../presentations/kronecker.quiver"))
        .expect("bundled presentation parses")
}

/// Three-vertex linear quiver `v1 -> v2 <- v3`, no relations.
pub fn a3() -> QuiverPresentation {
    parse_presentation(include_str!("../presentations/a3.quiver"))
        .expect("bundled presentation parses")
}
