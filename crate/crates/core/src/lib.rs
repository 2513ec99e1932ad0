//! Generic decoding attacks on rank-metric codes.
//!
//! Arithmetic in GF(q^m) ([`gfqm`]), dense linear algebra and subspaces
//! ([`linalg`]), q-polynomials ([`qpoly`]), instances of the rank syndrome
//! decoding problem ([`rsd`]), the error-support attack
//! ([`attack_support`]), the annihilator-polynomial attack
//! ([`attack_algebraic`]), a brute-force reference solver ([`oracle`]) and
//! closed-form cost estimates ([`estimator`]).

pub mod attack_algebraic;
pub mod attack_support;
pub mod estimator;
pub mod gfqm;
pub mod linalg;
pub mod oracle;
pub mod qpoly;
pub mod report;
pub mod rsd;
pub mod trials;

pub use gfqm::{Field, FieldElement};
pub use linalg::{Matrix, Subspace};
pub use qpoly::QPolynomial;
pub use report::{AttackOutcome, AttackReport};
pub use rsd::{CodeKind, CodeParams, RsdInstance, RsdSolution};
