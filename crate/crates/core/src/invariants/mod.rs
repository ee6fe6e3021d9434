//! Secondary combinatorial checks: line censuses, plane tables, the
//! 𝒴_j counts, the known quasi-Hermitian constructions and the Klein
//! correspondence.

use serde::Serialize;

pub mod klein;
pub mod known;
pub mod line_orbits;
pub mod lines;
pub mod special;
pub mod sublines;
pub mod tables;
pub mod yj;

/// One named pass/fail check with a short diagnostic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
        Check { name: name.into(), pass, detail: detail.into() }
    }

    /// Passes iff `got == want`; the detail records both.
    pub fn eq<T: PartialEq + std::fmt::Debug>(name: impl Into<String>, got: T, want: T) -> Check {
        let pass = got == want;
        Check::new(name, pass, format!("got {got:?}, expected {want:?}"))
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}
