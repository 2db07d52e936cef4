//! Machine-readable validation reports.
//!
//! Every validator returns the full list of violated axiom instances rather
//! than stopping at the first one. Reference errors (ids that do not resolve)
//! are kept apart from axiom failures so callers can tell a malformed file
//! from a well-formed but non-categorical one.

use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    // reference errors
    UnknownObject { context: String, id: String },
    UnknownMorphism { context: String, id: String },
    DuplicateId { id: String },
    TableSize { context: String, expected: usize, found: usize },
    MissingImage { context: String, id: String },

    // category axioms
    MissingIdentity { object: String },
    IdentityNotEndo { object: String, morphism: String },
    LeftIdentity { morphism: String },
    RightIdentity { morphism: String },
    MissingComposite { g: String, f: String },
    CompositeEndpoints { g: String, f: String, composite: String },
    ComposedNonComposable { g: String, f: String },
    ConflictingComposite { g: String, f: String },
    Associativity { h: String, g: String, f: String },

    // groupoid axioms
    MissingInverse { morphism: String },
    InverseLaw { morphism: String, inverse: String },

    // functors and transformations
    FunctorSource { morphism: String },
    FunctorTarget { morphism: String },
    FunctorIdentity { object: String },
    FunctorComposite { g: String, f: String },
    ComponentEndpoints { object: String, component: String },
    Naturality { morphism: String },

    // groups
    GroupAssociativity { a: String, b: String, c: String },
    GroupIdentity { element: String },
    GroupInverse { element: String },

    // families
    CategoryMismatch { context: String },
    TwoCellComponent { object: String },

    // retraction diagrams and pointed families
    SectionNotRetracted { element: String },
    BasepointOutOfRange { index: String },
    MapOutOfRange { context: String },
    NotCommuting { context: String },
}

impl Violation {
    pub fn is_reference_error(&self) -> bool {
        matches!(
            self,
            Violation::UnknownObject { .. }
                | Violation::UnknownMorphism { .. }
                | Violation::DuplicateId { .. }
                | Violation::TableSize { .. }
                | Violation::MissingImage { .. }
                | Violation::MapOutOfRange { .. }
        )
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            UnknownObject { context, id } => write!(f, "{context}: unknown object `{id}`"),
            UnknownMorphism { context, id } => write!(f, "{context}: unknown morphism `{id}`"),
            DuplicateId { id } => write!(f, "duplicate id `{id}`"),
            TableSize {
                context,
                expected,
                found,
            } => write!(f, "{context}: expected {expected} entries, found {found}"),
            MissingImage { context, id } => write!(f, "{context}: no image given for `{id}`"),
            MissingIdentity { object } => write!(f, "no identity for object `{object}`"),
            IdentityNotEndo { object, morphism } => {
                write!(f, "identity `{morphism}` of `{object}` is not an endomorphism of it")
            }
            LeftIdentity { morphism } => write!(f, "id ∘ `{morphism}` ≠ `{morphism}`"),
            RightIdentity { morphism } => write!(f, "`{morphism}` ∘ id ≠ `{morphism}`"),
            MissingComposite { g, f: ff } => write!(f, "composite `{g}` ∘ `{ff}` missing"),
            CompositeEndpoints { g, f: ff, composite } => write!(
                f,
                "composite `{g}` ∘ `{ff}` = `{composite}` has the wrong source or target"
            ),
            ComposedNonComposable { g, f: ff } => {
                write!(f, "table composes non-composable pair `{g}` ∘ `{ff}`")
            }
            ConflictingComposite { g, f: ff } => {
                write!(f, "conflicting entries for `{g}` ∘ `{ff}`")
            }
            Associativity { h, g, f: ff } => {
                write!(f, "`{h}` ∘ (`{g}` ∘ `{ff}`) ≠ (`{h}` ∘ `{g}`) ∘ `{ff}`")
            }
            MissingInverse { morphism } => write!(f, "no inverse for `{morphism}`"),
            InverseLaw { morphism, inverse } => {
                write!(f, "`{inverse}` is not a two-sided inverse of `{morphism}`")
            }
            FunctorSource { morphism } => write!(f, "functor does not preserve the source of `{morphism}`"),
            FunctorTarget { morphism } => write!(f, "functor does not preserve the target of `{morphism}`"),
            FunctorIdentity { object } => write!(f, "functor does not preserve the identity of `{object}`"),
            FunctorComposite { g, f: ff } => {
                write!(f, "functor does not preserve `{g}` ∘ `{ff}`")
            }
            ComponentEndpoints { object, component } => write!(
                f,
                "component `{component}` at `{object}` has the wrong source or target"
            ),
            Naturality { morphism } => write!(f, "naturality square for `{morphism}` does not commute"),
            GroupAssociativity { a, b, c } => write!(f, "({a}·{b})·{c} ≠ {a}·({b}·{c})"),
            GroupIdentity { element } => write!(f, "identity law fails at `{element}`"),
            GroupInverse { element } => write!(f, "`{element}` has no inverse"),
            CategoryMismatch { context } => write!(f, "{context}: target categories differ"),
            TwoCellComponent { object } => {
                write!(f, "2-cell component at `{object}` does not match the family components")
            }
            SectionNotRetracted { element } => write!(f, "r(s({element})) ≠ {element}"),
            BasepointOutOfRange { index } => write!(f, "basepoint of `{index}` is not in its carrier"),
            MapOutOfRange { context } => write!(f, "{context}: map value out of range"),
            NotCommuting { context } => write!(f, "{context}: square does not commute"),
        }
    }
}

/// Outcome of a validator. Empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, v: Violation) {
        self.violations.push(v);
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has_reference_errors(&self) -> bool {
        self.violations.iter().any(Violation::is_reference_error)
    }

    pub fn reference_errors(&self) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(|v| v.is_reference_error())
    }

    pub fn axiom_failures(&self) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(|v| !v.is_reference_error())
    }

    /// Sorted and deduplicated, so reports compare equal regardless of the
    /// order in which tables were listed.
    pub fn normalized(mut self) -> Self {
        self.violations.sort();
        self.violations.dedup();
        self
    }

    pub fn into_result(self) -> crate::Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(crate::Error::Invalid(self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "  - {v}")?;
        }
        Ok(())
    }
}
