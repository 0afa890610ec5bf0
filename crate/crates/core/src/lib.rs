//! Bounded semantic consequence for systems of logics.
//!
//! Logics are presented as institutions with finite, enumerable semantics.
//! On top of that contract the crate computes specification and logic flow
//! along language morphisms, channels and minimal covers of distributed
//! systems, information fusion at the core, and system consequence.

pub mod colimit;
pub mod error;
pub mod folf;
pub mod ifl;
pub mod institution;
pub mod logic_flow;
pub mod random;
pub mod shape;
pub mod spec_flow;
pub mod systems;

pub use error::{Error, Result};
pub use institution::{Bound, Institution, LanguageMorphism, Vocabulary};
