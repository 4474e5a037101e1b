//! Exact and numeric verification of the correlation functions `R` and `S`
//! attached to strict and odd strict partitions.
//!
//! The crate is organised around four layers:
//!
//! - [`ring`]: truncated multigraded Laurent series over exact rationals —
//!   the algebraic substrate every identity check runs on.
//! - [`partitions`]: streaming enumeration of strict / odd strict partitions
//!   and the per-partition eigenvalue polynomials.
//! - [`correlators`]: builders for the n-point functions (`:R:`, `R`, `:S:`,
//!   `S`, the super variant `R(t;z)`) both as partition sums and as closed
//!   forms, plus the exact identity pairs relating them.
//! - [`numeric`]: complex-valued evaluation of the same functions, Jacobi
//!   theta functions and the ratio `B(q,t)`, and residual checks for the
//!   q-difference equations, quasi-periodicity and pole structure.
//!
//! Identity outcomes are reported through [`report::CheckReport`].

pub mod correlators;
pub mod numeric;
pub mod partitions;
pub mod rational;
pub mod report;
pub mod ring;

pub use partitions::{Partition, PartitionKind};
pub use rational::{rat, rat_int, Rational};
pub use report::CheckReport;
pub use ring::{ExponentKey, Profile, RingError, Series};
