//! Finite-model engine for parametrized families over a category.
//!
//! A family `(X, F)` pairs a finite groupoid `X` (its *shape*) with a functor
//! `F: X -> C` (its *arrow*) into a finite category `C`. The crate provides the
//! finite category and groupoid kernels those families are built from, the
//! category `Fam(C)` itself with its (co)limits, the homotopy invariants of a
//! family (components, fundamental group, basepoint change), the effective
//! covering predicate on `Fam(C)`, and the equivalence between families of
//! pointed sets and retraction diagrams of sets.
//!
//! Everything is computed by finite enumeration. Operations that search a
//! space of candidates take a [`Budget`] and report [`Error::BudgetExceeded`]
//! instead of guessing when the search does not finish.

pub mod category;
pub mod cech;
pub mod edge_path;
pub mod effective;
pub mod equivalence;
pub mod error;
pub mod fam;
pub mod grothendieck;
pub mod group;
pub mod groupoid;
pub mod homotopy;
pub mod iso_comma;
pub mod limits;
pub mod locus;
pub mod report;
pub mod sample;
pub mod site;

pub use category::{FiniteCategory, Functor, MorId, NatTrans, ObjId};
pub use error::{Budget, Error, Result, DEFAULT_BUDGET};
pub use fam::{FamMorphism, FamObject};
pub use group::{FiniteGroup, GroupIso};
pub use groupoid::FiniteGroupoid;
pub use report::{ValidationReport, Violation};
