//! Quasitrivial n-ary semigroups on finite carriers.
//!
//! The crate revolves around one object: a finite n-ary operation stored as
//! a flat table ([`OperationTable`]). On top of it live
//!
//! * pointwise predicates and statistics ([`table`]),
//! * compositions and binary/ternary reductions ([`reduction`]),
//! * weak orderings and the projection-or-maximum classification
//!   ([`orderings`]),
//! * fast decision procedures and aggregated reports ([`analysis`]),
//! * exact counting formulas, generators and brute-force oracles
//!   ([`enumeration`]).
//!
//! Carrier elements are 0-based `u8` values throughout the API; every text
//! format and JSON report speaks 1-based, matching the usual convention for
//! `[k] = {1, …, k}`.

pub mod analysis;
pub mod enumeration;
mod error;
pub mod fixtures;
pub mod orderings;
pub mod reduction;
pub mod table;

pub use error::Error;
pub use orderings::{KimuraSpec, WeakOrdering};
pub use table::OperationTable;

pub type Result<T> = std::result::Result<T, Error>;
