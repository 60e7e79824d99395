//! Named verification suites. Each runs a family of exhaustive checks at a
//! configurable bound and returns a machine-readable report; the acceptance
//! surface of the whole crate is `verify all`.

mod interp;
mod laws;
mod models;
mod structures;

pub use interp::{domain_statements, interpretation, wt_translation};
pub use laws::{strings_laws, tally_arith};
pub use models::{
    check_pool_literal, check_pool_repaired, finite_models, finite_models_literal,
    finite_models_repaired, pool_key, pool_universe, star_terms_up_to_depth,
    tree_pool_universe, Tables,
};
pub use structures::{ae_census, codec, recursion, set_coding};

use crate::report::VerificationReport;

/// Suite names in canonical order.
pub const SUITES: [&str; 9] = [
    "strings-laws",
    "tally-arith",
    "ae-census",
    "codec",
    "set-coding",
    "recursion",
    "interpretation",
    "wt-translation",
    "finite-models",
];

/// Default bound per suite, chosen to match the acceptance thresholds.
pub fn default_bound(suite: &str) -> Option<u64> {
    Some(match suite {
        "strings-laws" => 7,
        "tally-arith" => 10,
        "ae-census" => 13,
        "codec" => 13,
        "set-coding" => 12,
        "recursion" => 8,
        "interpretation" => 11,
        "wt-translation" => 11,
        "finite-models" => 3,
        _ => return None,
    })
}

/// Runs one suite at the given bound (the suite default when `None`).
pub fn run_suite(suite: &str, bound: Option<u64>) -> Option<VerificationReport> {
    let b = bound.or_else(|| default_bound(suite))? as usize;
    Some(match suite {
        "strings-laws" => strings_laws(b),
        "tally-arith" => tally_arith(b),
        "ae-census" => ae_census(b),
        "codec" => codec(b),
        "set-coding" => set_coding(b),
        "recursion" => recursion(b),
        "interpretation" => interpretation(b),
        "wt-translation" => wt_translation(b, 3),
        "finite-models" => finite_models(b),
        _ => return None,
    })
}

/// Runs every suite at its default bound.
pub fn run_all() -> Vec<VerificationReport> {
    SUITES
        .iter()
        .map(|s| run_suite(s, None).expect("known suite"))
        .collect()
}
