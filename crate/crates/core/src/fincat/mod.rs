//! Finite carriers for the ambient objects: preorders and categories, their
//! structure-preserving maps, and their subobjects.
//!
//! All values are immutable after construction and validated on construction;
//! identity of elements, objects and arrows is by name. Hom-sets between two
//! carriers are finite and can be enumerated exhaustively.

pub mod cat;
mod map;
mod preord;
mod pushout;
mod sub;

pub use cat::{Arrow, FinCat, RawCat};
pub use map::{Functor, MonotoneMap};
pub use preord::FinPreord;
pub use pushout::{pushout_holds_cat, pushout_holds_preord, PushoutReport};
pub use sub::{SubCat, SubPreord};

use thiserror::Error;

/// Validation and construction failures for the finite carriers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CarrierError {
    #[error("duplicate name `{0}` in carrier")]
    DuplicateName(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("relation not reflexive at ({0}, {0})")]
    NotReflexive(String),
    #[error("relation not transitive: ({0}, {1}) missing")]
    NotTransitive(String, String),
    #[error("arrow `{0}` has an endpoint outside the object list")]
    DanglingEndpoint(String),
    #[error("missing composite for composable pair ({0} after {1})")]
    MissingComposite(String, String),
    #[error("composite declared for the non-composable pair ({0} after {1})")]
    NotComposable(String, String),
    #[error("unit law fails for arrow `{0}`")]
    UnitLawViolation(String),
    #[error("associativity fails on ({0}, {1}, {2})")]
    AssociativityViolation(String, String, String),
    #[error("identity of `{0}` is not an endo-arrow at `{0}`")]
    BadIdentity(String),
    #[error("map is not total: `{0}` unassigned")]
    NotTotal(String),
    #[error("map not monotone on pair ({0}, {1})")]
    NotMonotone(String, String),
    #[error("functor does not preserve {0} at `{1}`")]
    NotFunctorial(String, String),
    #[error("subobject member `{0}` not in the ambient carrier")]
    NotAMember(String),
    #[error("subcategory not closed: {0}")]
    NotClosed(String),
    #[error("source/target mismatch: {0}")]
    Mismatch(String),
}
