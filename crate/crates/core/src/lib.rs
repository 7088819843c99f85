//! Exact arithmetic for group-graded commutative rings.
//!
//! Rings are group algebras `base[E]` over `base ∈ {Z, Q}` with a grading
//! homomorphism `δ: E → G`, optionally localized at homogeneous elements.
//! On top of that sit integrality witnesses, a handful of explicit
//! constructions, and a seeded harness of property checks.
//!
//! The crate is `no_std` with `alloc`; the `std` feature only adds wall-clock
//! timing to harness reports.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod abelian;
pub mod closure;
pub mod element;
mod error;
pub mod harness;
mod linalg;
pub mod ringexpr;

pub use error::{Error, Result};
