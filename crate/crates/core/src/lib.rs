//! Exact well-formedness checking for one-dimensional linear quantum
//! cellular automata.
//!
//! An automaton ([`Lqca`]) maps each neighborhood word to a superposition of
//! next states. [`decide`] reports whether the induced evolution preserves
//! norm, and backs a negative answer with configurations whose columns are
//! not orthonormal, checked by the brute-force [`oracle`].
//!
//! ```
//! use qca_core::{catalog, decide};
//!
//! assert!(decide(&catalog::automaton_b()).unwrap().well_formed);
//! let v = decide(&catalog::f_automaton()).unwrap();
//! assert!(!v.well_formed);
//! ```

pub mod automaton;
pub mod catalog;
pub mod config;
pub mod decider;
pub mod error;
pub mod format;
pub mod graph;
pub mod num;
pub mod oracle;
pub mod par;
pub mod plqca;
pub mod sample;

pub use automaton::{Alphabet, LocalSuperposition, Lqca, Neighborhood, StateId};
pub use config::{Configuration, Interval};
pub use decider::{decide, decide_with, DecideOptions, Verdict};
pub use error::{CoreError, Result};
pub use num::{ExactComplex, Rational};
pub use par::Execution;
