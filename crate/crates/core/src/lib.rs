//! Exhaustive verification of uniformities on finite lattice-ordered
//! effect algebras (D-lattices).
//!
//! The crate builds finite D-lattices from partial addition tables,
//! enumerates their D-filters and D-congruences, and checks the
//! correspondences between filters, uniformities, submeasures,
//! pseudometrics and modular measures by brute force.

pub mod algebra;
pub mod catalog;
pub mod corpus;
pub mod dfilters;
pub mod dot;
pub mod elements;
pub mod error;
pub mod identities;
pub mod linalg;
pub mod partitions;
pub mod rational;
pub mod relation;
pub mod report;
pub mod submeasures;
pub mod suite;
pub mod uniformities;

pub use algebra::{AlgebraJson, Axiom, Classification, EffectAlgebra};
pub use dfilters::{dfilter_closure, dfilter_join, dfilter_meet, enumerate_dfilters, DFilterGenerator};
pub use elements::{ElementId, ElementSet};
pub use error::{Error, Result};
pub use rational::{ExtendedValue, Rational};
pub use relation::{relation_combine, Relation, RelationOp};
pub use report::{Check, Report, Status, Witness};
pub use submeasures::measure::{ModularMeasure, NormKind};
pub use submeasures::pseudometric::Pseudometric;
pub use submeasures::KSubmeasure;
pub use uniformities::{enumerate_d_congruences, phi, psi, Congruence, CongruenceMode};
