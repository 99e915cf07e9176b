//! Complete t-spread d-partite hypergraphs, their edge ideals, and the
//! closed-form invariants those ideals carry: linear-quotient Betti
//! numbers, Alexander duals and minimal primes, unmixedness and
//! Cohen-Macaulayness, sortability and the Rees Groebner basis, analytic
//! spread, and the behaviour of powers (persistence, normality).
//!
//! Every closed form has an independent brute-force oracle next to it,
//! and the library cross-checks the two on demand.

pub mod decomp;
pub mod duality;
pub mod error;
pub mod fuzz;
pub mod hypergraph;
pub mod ideal;
pub mod instance;
pub mod monomial;
pub mod powers;
pub mod ratlp;
pub mod report;
pub mod resolution;
pub mod sorting;

pub use decomp::{IrreducibleComponent, MonomialPrime, PrimeSet};
pub use duality::{DualForm, DualGenerator, KonigVerdict};
pub use error::{Budget, Error, Result};
pub use hypergraph::Hypergraph;
pub use ideal::MonomialIdeal;
pub use instance::{Part, PartitionFamily, SpreadInstance, SpreadVector};
pub use monomial::{Monomial, SqfMonomial, Var};
pub use report::InvariantReport;
pub use resolution::BettiTable;
