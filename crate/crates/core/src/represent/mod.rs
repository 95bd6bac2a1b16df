//! Integral representations: global search, verification drivers, a
//! congruence oracle and root sublattices.

mod driver;
mod modular;
mod roots;
mod search;

pub use search::{find_representation, find_representation_with, RepOutcome, SearchResult};
pub use modular::{default_exponent, rep_mod_pk, MOD_SEARCH_LIMIT};
pub use roots::{component_containing, root_sublattice, RootComponent, RootDecomposition, RootType};
pub use driver::{
    isolation_checks, run_checks, unary_square_checks, verdict_of, verify_isolation, Check, CheckEntry, Expectation,
    IsolationReport, Verdict, TSV_HEADER,
};
