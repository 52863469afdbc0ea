//! Exact-arithmetic verification engine for the Cachazo-Douglas-Seiberg-Witten
//! conjecture on small-rank simple Lie algebras.
//!
//! The crate constructs simple Lie algebras of types A, B, C, D and G2 in a
//! Chevalley basis, builds the bigraded exterior superalgebra on two copies of
//! the algebra, and machine-checks that the invariants of the quotient by the
//! supercommutator relations are generated by the unique degree-(1,1)
//! invariant S with S^g = 0 and S^{g-1} != 0, where g is the dual Coxeter
//! number. For G2 the check runs through Kostant's description of the functions
//! on the cone of square-zero odd elements.
//!
//! All arithmetic is exact (arbitrary-precision rationals); there is no
//! floating point anywhere in the crate.

pub mod cache;
pub mod cartan;
pub mod cli;
pub mod chevalley;
pub mod error;
pub mod grassmann;
pub mod kostant;
pub mod linalg;
pub mod rational;
pub mod rep;
pub mod roots;
pub mod selftest;
pub mod verify;

pub use cartan::{CartanType, Series};
pub use chevalley::{casimir_operator, chevalley_basis, lie_algebra, LieAlgebra};
pub use error::{Error, Result};
pub use rational::Rat;
pub use roots::{build_root_system, dual_coxeter_number, RootSystem};
pub use verify::{verify_conjecture, PathwayChoice, VerificationReport, VerifyOptions};
