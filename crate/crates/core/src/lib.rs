//! Exact computations for Verma modules over the rank-2 Kac–Moody algebras
//! with Cartan matrix `[[2, -p], [-q, 2]]`, `pq >= 4`.
//!
//! * [`cartan`]: root sequence, Weyl reflections, real-root orbits.
//! * [`gamma`], [`ffm`]: the `Γ` tables, the Kac–Kazhdan predicate and the
//!   closed-form singular-vector words.
//! * [`free`], [`linalg`]: graded pieces of `U(N₋)` as quotients of the free
//!   algebra by the Serre ideal.
//! * [`verma`]: brute-force singular vectors.
//! * [`pbw`]: Heisenberg and sl2-like target algebras.
//! * [`factors`]: products of quadratic factors and the end-to-end check.

pub mod affine;
pub mod cartan;
pub mod error;
pub mod factors;
pub mod ffm;
pub mod free;
pub mod gamma;
pub mod linalg;
pub mod pbw;
pub mod rational;
pub mod verma;

pub use error::{Error, Result};
