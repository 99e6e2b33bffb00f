//! Norm-like actions of finite groups on finite abelian groups, feasibility
//! tests for such actions, and class groups of imaginary quadratic fields.

pub mod abelian;
pub mod action;
pub mod arith;
pub mod autgroup;
pub mod error;
pub mod golden;
pub mod groups;
pub mod limits;
pub mod quadratic;
pub mod theorems;

pub use abelian::{AbelianElement, FiniteAbelianGroup, IntegerMatrix, Quotient, SmithForm};
pub use error::{Error, Result};
pub use groups::{GroupSpec, GroupTable, Homomorphism};
pub use autgroup::{Automorphism, Endomorphism};
pub use limits::Limits;
pub use action::{LinearAction, NormLikeAction, Violation};
pub use theorems::{FeasibilityVerdict, OracleMode, Status};
pub use quadratic::{ClassGroupData, Discriminant, QuadInteger, QuadraticForm};
pub use golden::{run_golden, GoldenCheck};
