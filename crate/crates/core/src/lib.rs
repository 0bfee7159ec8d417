//! Exact computational character theory for finite groups of odd order.
//!
//! The crate computes character tables exactly (values in cyclotomic fields,
//! coefficients as arbitrary-precision rationals), filters characters by
//! p'-degree and by field of values, evaluates restricted average character
//! degrees, and runs a reproducible census comparing those averages against
//! built-in p-nilpotence thresholds.
//!
//! Layout:
//! - [`rational`]: arbitrary-precision rationals (thin layer over `num`).
//! - [`cyclo`]: exact arithmetic in cyclotomic fields with Galois actions.
//! - [`group`]: finite groups (explicit multiplication table and affine
//!   H ⋉ F_p^a models), conjugacy classes, quotients, normal p-complements.
//! - [`chartab`]: character tables by two independent engines (class-algebra
//!   and Clifford-theory induction).
//! - [`avg`]: field specifications, restricted character selections, exact
//!   degree averages, and the kernel-intersection subgroups.
//! - [`bounds`]: threshold functions, rational sweeps, and the case classifier.
//! - [`constructions`]: extremal group families and orbit analysis.
//! - [`census`]: the corpus census and lemma-check reports.

pub mod avg;
pub mod bounds;
pub mod census;
pub mod chartab;
pub mod constructions;
pub mod cyclo;
pub mod group;
pub mod rational;

mod error;
pub mod numth;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
