//! Named verification suites.
//!
//! Each suite recomputes a family of known facts from scratch and compares
//! them with independent oracles (closed-form counts, hand-built modules,
//! brute-force rewriting). The command line runs them by name and the
//! acceptance target runs all of them.

use std::fmt::Debug;
use std::time::Duration;

use crate::Result;

mod algebra;
mod filtration;
mod foundations;
mod functors;
mod symmetric;

/// A named list of per-degree (or per-rank, per-arity) dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub name: String,
    pub dims: Vec<usize>,
}

/// One assertion: the statement it checks, whether it held, and what was
/// observed when it did not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub anchor: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub degree: usize,
    pub tables: Vec<Table>,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub(crate) fn new(name: &'static str, degree: usize) -> Self {
        SuiteReport {
            name,
            degree,
            tables: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub(crate) fn table(&mut self, name: impl Into<String>, dims: Vec<usize>) {
        self.tables.push(Table {
            name: name.into(),
            dims,
        });
    }

    /// Records a boolean outcome; an error counts as a failure.
    pub(crate) fn check(&mut self, anchor: impl Into<String>, outcome: Result<bool>) {
        let (pass, detail) = match outcome {
            Ok(b) => (b, String::new()),
            Err(e) => (false, e.to_string()),
        };
        self.checks.push(Check {
            anchor: anchor.into(),
            pass,
            detail,
        });
    }

    /// Records `got == want`, keeping both sides on failure.
    pub(crate) fn check_eq<T: PartialEq + Debug>(&mut self, anchor: impl Into<String>, got: Result<T>, want: T) {
        let (pass, detail) = match got {
            Ok(g) if g == want => (true, String::new()),
            Ok(g) => (false, format!("got {g:?}, want {want:?}")),
            Err(e) => (false, e.to_string()),
        };
        self.checks.push(Check {
            anchor: anchor.into(),
            pass,
            detail,
        });
    }
}

/// A suite with its expected running-time budget.
#[derive(Clone, Copy)]
pub struct Suite {
    pub name: &'static str,
    pub summary: &'static str,
    pub budget: Duration,
    run: fn(usize) -> SuiteReport,
}

impl Suite {
    /// Runs the suite with degree cap `degree` (suites with fixed windows ignore it).
    pub fn run(&self, degree: usize) -> SuiteReport {
        (self.run)(degree)
    }
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

pub const SUITES: [Suite; 12] = [
    Suite {
        name: "adem",
        summary: "Adem rewriting: normal forms of all words through degree 30",
        budget: secs(5),
        run: foundations::adem,
    },
    Suite {
        name: "membership",
        summary: "F(n) lies in U_n and not in U_{n-1}",
        budget: secs(30),
        run: foundations::membership,
    },
    Suite {
        name: "regular",
        summary: "iterated Tbar of F(1)^n is the regular representation",
        budget: secs(60),
        run: foundations::regular,
    },
    Suite {
        name: "truncation",
        summary: "k_0 of F(1) and of its bottom class",
        budget: secs(60),
        run: filtration::truncation,
    },
    Suite {
        name: "pullback",
        summary: "R_0 k_1 is strictly smaller than k_1 R_0 on a pullback",
        budget: secs(60),
        run: filtration::pullback,
    },
    Suite {
        name: "polynomial",
        summary: "k_n of GF(2)[x]: Krull, primitive and binary-digit descriptions",
        budget: secs(120),
        run: filtration::polynomial,
    },
    Suite {
        name: "krull",
        summary: "properties of the Krull filtration on a fixed corpus",
        budget: secs(300),
        run: filtration::properties,
    },
    Suite {
        name: "adjunction",
        summary: "counit and unit of the adjunction with symmetric-group modules",
        budget: secs(120),
        run: symmetric::adjunction,
    },
    Suite {
        name: "sigma",
        summary: "the symmetric sequence sigma_*",
        budget: secs(300),
        run: symmetric::sigma,
    },
    Suite {
        name: "algebras",
        summary: "unstable algebras: exterior quotients, shuffle powers, quaternion group",
        budget: secs(300),
        run: algebra::algebras,
    },
    Suite {
        name: "functors",
        summary: "generic representations: degrees, p_n, bridge to unstable modules",
        budget: secs(120),
        run: functors::functors,
    },
    Suite {
        name: "loops",
        summary: "the loop functor and its corollaries",
        budget: secs(60),
        run: foundations::loops,
    },
];

pub fn suite(name: &str) -> Option<&'static Suite> {
    SUITES.iter().find(|s| s.name == name)
}

/// Dimensions of a family of subspaces.
pub(crate) fn dims_of(spaces: &[crate::gf2::Subspace]) -> Vec<usize> {
    spaces.iter().map(|s| s.dim()).collect()
}

/// Degrees in `0..=top` where `dims` is nonzero.
pub(crate) fn support(dims: &[usize], top: usize) -> Vec<usize> {
    (0..=top.min(dims.len().saturating_sub(1))).filter(|&d| dims[d] > 0).collect()
}
