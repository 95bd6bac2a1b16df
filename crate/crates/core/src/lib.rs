//! Exact computations with positive definite integral lattices: short
//! vectors, representations, glue constructions, local symbols and Hermite
//! reduction, together with the named verification runs built on them.

pub mod claims;
pub mod construct;
pub mod error;
pub mod exactlin;
pub mod localsym;
pub mod reduce;
pub mod represent;

pub use claims::{run_claim, ClaimOptions, VerificationReport, CLAIMS};
pub use construct::{EmbeddedLattice, GlueSpec};
pub use error::{Error, Result};
pub use exactlin::{GramMatrix, LatticeVector, RationalCholesky, Representation};
pub use localsym::{JordanSplitting, PadicUnit, Place};
pub use reduce::{HermiteReducedForm, PeelDecomposition};
pub use represent::{RepOutcome, RootDecomposition, Verdict};
