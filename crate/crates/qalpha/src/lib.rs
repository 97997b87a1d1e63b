//! Synthesis of infinite sequences of irreducible monic polynomials over
//! binary extension fields GF(2^s), driven by iterated degree-doubling
//! transforms `f -> x^n * f(x + alpha * x^-1)` and the dynamics of the map
//! `theta_alpha: x -> x + alpha * x^-1` on the projective line.
//!
//! The crate splits into:
//!
//! * [`field`] — GF(2^s) bit-vector arithmetic, trace, square roots,
//!   discrete-log labeling, the projective line and the maps theta/psi;
//! * [`poly`] — dense univariate polynomials over GF(2^s);
//! * [`transform`] — the degree-doubling transforms and trace conditions;
//! * [`factorize`] — Rabin irreducibility, the equal-degree split of
//!   transform images, and an exhaustive trial-division oracle;
//! * [`dynamics`] — the functional graph of theta_alpha, component
//!   classification, periodicity tests, DOT/JSON export;
//! * [`sequence`] — the iteration that grows an infinite irreducible
//!   sequence from an arbitrary irreducible monic seed, with
//!   stagnation-bounded backtracking;
//! * [`cli`] — the `qalpha` command-line surface.

pub mod cli;
mod detrand;
pub mod dynamics;
pub mod error;
pub mod factorize;
pub mod field;
pub mod poly;
pub mod sequence;
pub mod transform;

pub use error::{Error, Result};
pub use factorize::{is_irreducible, oracle_factor, split_q_image, SplitResult};
pub use field::{psi, theta, FieldElement, FieldSpec, ProjectivePoint};
pub use poly::Polynomial;
pub use sequence::{generate, step, verify_run, SequenceRun};
pub use transform::{kyuregyan_condition, meyn_condition, q_alpha_transform, q_transform};
