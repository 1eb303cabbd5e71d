//! Finite preorders and finite categories, coherent systems of distinguished
//! subobjects, the two concrete pretorsion theories on them, and the stable
//! category obtained by quotienting distinguished partial morphisms.
//!
//! Everything here is desk-scale and exhaustive: carriers are small, hom-sets
//! are enumerated, and every structural law the library relies on can be
//! re-checked by one of the `verify_*` suites, which emit deterministic
//! reports with replayable witnesses on failure.
//!
//! Module map:
//!
//! - [`fincat`] — carriers: preorders, categories, maps, functors, subobjects
//! - [`systems`] — distinguished-subobject lattices and the CS axiom suite
//! - [`pretorsion`] — torsion/torsion-free classes, canonical sequences,
//!   chain normal forms for skeletal quotients, PT and CC suites
//! - [`stable`] — distinguished partial morphisms, the stable quotient,
//!   zero-pushouts, the universal factorization, the fractions description
//! - [`presheaf`] — preordered presheaves over a finite poset and the
//!   saturated-but-not-complemented demonstration
//! - [`corpus`], [`report`], [`io`], [`dot`] — corpus generation, structured
//!   reports, file formats, diagram output

pub mod corpus;
pub mod dot;
pub mod fincat;
pub mod io;
pub mod presheaf;
pub mod pretorsion;
pub mod report;
pub mod stable;
pub mod systems;

pub use fincat::{FinCat, FinPreord, Functor, MonotoneMap, SubCat, SubPreord};
pub use report::{CheckRecord, Report, Verdict};
pub use systems::SystemKind;
pub use pretorsion::PretorsionKind;
