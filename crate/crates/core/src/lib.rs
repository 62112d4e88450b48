//! Finite multiplicative hyperrings and their hyperideals.
//!
//! A multiplicative hyperring has an ordinary abelian group for addition and a
//! multiplication returning nonempty subsets. This crate builds such structures
//! over small carriers, computes the hyperideal calculus, decides primeness-type
//! predicates by exhaustive search, and checks structural theorems as property
//! suites over enumerated families.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod classify;
pub mod construct;
pub mod error;
pub mod harness;
pub mod ideal;
pub mod ring;
pub mod set;

pub use classify::{ClassificationReport, Predicate, PredicateQuery, DEFAULT_SCAN_CAP};
pub use error::{Error, Result};
pub use ideal::{Hyperideal, IdealLattice, DEFAULT_LATTICE_CAP};
pub use ring::{Distributivity, FiniteHyperring, RingTables, ValidationReport};
pub use set::ElementSet;
