use thiserror::Error;

use crate::algebra::Axiom;
use crate::dfilters::FilterViolation;
use crate::submeasures::measure::MeasureViolation;
use crate::submeasures::pseudometric::PseudometricViolation;
use crate::submeasures::SubmeasureViolation;
use crate::uniformities::CongruenceViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Format(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("axiom {axiom} violated at {witness:?}")]
    AxiomViolation { axiom: Axiom, witness: Vec<usize> },

    #[error("not a lattice: {kind} of {a} and {b} does not exist")]
    NotALattice { kind: &'static str, a: usize, b: usize },

    #[error("derived order is not a partial order: {detail} at {witness:?}")]
    NotAPartialOrder { detail: &'static str, witness: Vec<usize> },

    #[error("{what} has size {n}, above the cap of {cap}")]
    SizeCap { what: &'static str, n: usize, cap: usize },

    #[error("operands belong to different algebras")]
    MixedAlgebras,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("not a D-filter generator: {0}")]
    NotAGenerator(FilterViolation),

    #[error("relation is not an equivalence: {detail} at ({a}, {b})")]
    NotEquivalence { detail: &'static str, a: usize, b: usize },

    #[error("not a D-congruence: {0}")]
    NotACongruence(CongruenceViolation),

    #[error("not a k-submeasure: {0}")]
    NotASubmeasure(SubmeasureViolation),

    #[error("not an admissible pseudometric: {0}")]
    NotAPseudometric(PseudometricViolation),

    #[error("not a modular measure: {0}")]
    NotModular(MeasureViolation),

    #[error("algebra is not an MV-algebra")]
    NotMV,
}
