//! Solvers and diagnostics for the weighted maximin dispersion problem over
//! the unit ℓp-ball (`p >= 2`, including the max norm).
//!
//! The problem: given anchor points `x^1..x^m` in `R^n` and positive weights,
//! find a point `x` with `||x||_p <= 1` maximizing
//! `f(x) = min_i w_i ||x - x^i||_2^2`.
//!
//! The crate provides three routes to a solution and the machinery to compare
//! them:
//!
//! * [`rounding`] — a relaxation-free randomized algorithm that rejection-
//!   samples sign vectors and scales them onto the ℓp-sphere, with a
//!   deterministic per-run approximation-bound certificate;
//! * [`sdp`] — the semidefinite relaxation baseline: a self-contained
//!   first-order solver for the lifted program plus diagonal-scaled sign
//!   rounding of its solution;
//! * [`oracle`] — brute-force grid search with a certified error envelope,
//!   usable as ground truth in low dimension.
//!
//! See the `book/` directory of the repository for a guided tour; its code
//! snippets compile and run as doctests of this crate.

pub mod io;
pub mod model;
pub mod oracle;
pub mod rounding;
pub mod sdp;

pub use model::{
    bound_constant, evaluate_objective, holder_norm_cap, is_feasible, lp_norm,
    objective_argmin, BoundConstant, Candidate, Exponent, ProblemInstance, Source,
    FEASIBILITY_TOL,
};

/// Unified error type for the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected length {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Rejection sampling ran out of budget. Signals a pathological `rho` or
    /// an adversarial instance rather than a bug.
    #[error("sign sampling budget exhausted after {trials} trials")]
    BudgetExhausted { trials: u64 },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("brute force is limited to n <= {max_n}, instance has n = {n}")]
    TooLarge { n: usize, max_n: usize },

    #[error("instance file: {0}")]
    Format(String),

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

// The book's code snippets double as integration tests: each chapter is
// attached here as a doc comment so `cargo test --doc` compiles and runs
// every ```rust block in it.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/problem.md")]
    mod problem {}
    #[doc = include_str!("../../../book/src/rounding.md")]
    mod rounding {}
    #[doc = include_str!("../../../book/src/relaxation.md")]
    mod relaxation {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/benchmarks.md")]
    mod benchmarks {}
}
