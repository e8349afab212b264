//! Exact decision procedures for two-absorbing ideals, their
//! factorizations, and rings in which every ideal admits one.
//!
//! The crate works with two families of rings, both represented exactly:
//!
//! * **Finite commutative rings** ([`finring`]): built from presentations
//!   like `Z/8[x]/(x^2, 2x)` or direct products, with complete ideal
//!   lattices, radical/prime/primary predicates, quotients, and
//!   idempotent decompositions.
//! * **Quadratic orders** `Z[√d]` and `Z[(1+√d)/2]` ([`quadord`]): ideals
//!   in Hermite normal form with exact products, norms, and finite
//!   quotients that bridge back to the finite-ring machinery.
//!
//! On top of those sit the decision procedures:
//!
//! * [`absorbing`] decides whether an ideal is two-absorbing (`abc ∈ I`
//!   forces a pair product into `I`), generalizes to `n`-absorbing, and
//!   computes the structural form of two-absorbing ideals.
//! * [`factorize`] searches for factorizations of an ideal into products
//!   of two-absorbing ideals, audits whole rings for the property that
//!   every proper ideal has one, and produces machine-checkable
//!   certificates either way.
//!
//! Every verdict that matters is accompanied by a certificate that can be
//! re-verified independently: witness triples, factor lists that
//! re-multiply to the input, or incomparability witnesses. The `examples/`
//! directory exercises each capability end to end, and the `tafkit` binary
//! exposes the same operations as subcommands with JSON reports.

pub mod absorbing;
pub mod factorize;
pub mod finring;
pub mod quadord;
pub mod report;
pub mod ringspec;
pub(crate) mod snf;

pub mod commands;
pub mod selftest;

use thiserror::Error as ThisError;

/// Unified error type for the whole crate.
#[derive(Debug, ThisError)]
pub enum Error {
    #[error("degenerate modulus {0}: quotients of Z need a modulus of at least 2")]
    DegenerateModulus(u64),

    #[error("presentation {0} has no monic relation; the quotient would be infinite")]
    InfinitePresentation(String),

    #[error("ring too large to represent exactly")]
    SizeOverflow,

    #[error("invalid ring data: {0}")]
    InvalidRing(String),

    #[error("enumeration guard exceeded: ring has {size} elements, guard is {guard}")]
    GuardExceeded { size: u64, guard: u64 },

    #[error("element-level product table for a ring of {size} elements exceeds memory limits")]
    TableTooLarge { size: u64 },

    #[error("{op} requires a proper ideal")]
    NotProper { op: &'static str },

    #[error("search budget of {budget} tuples exhausted before reaching a verdict")]
    BudgetExhausted { budget: u64 },

    #[error("internal structure violation: {0}")]
    StructureViolation(String),

    #[error(transparent)]
    Parse(#[from] ringspec::ParseError),

    #[error("bad element: {0}")]
    BadElement(String),

    #[error("d must be square-free and different from 0 and 1 (got {0})")]
    NotSquareFree(i128),

    #[error("classification requires square-free d with d = 1 (mod 4), got {0}")]
    OutsideClassificationScope(i128),

    #[error("the zero ideal of a quadratic order has no finite-index form")]
    ZeroQuadIdeal,

    #[error("{0}")]
    BadInput(String),
}
