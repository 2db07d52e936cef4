//! JSON interchange documents. Every object and morphism is referred to by its
//! id string; composition tables are `[f, g, g∘f]` triples and inverses are
//! `[f, f⁻¹]` pairs.

use std::collections::BTreeMap;

use famcat::category::CategoryTables;
use famcat::groupoid::GroupoidTables;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "famcat-workspace/1";

/// One workspace file. Entry names share a single namespace across sections.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub categories: Vec<Named<CategoryTables>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub groupoids: Vec<Named<GroupoidTables>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub functors: Vec<Named<FunctorDoc>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub families: Vec<Named<FamilyDoc>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub morphisms: Vec<Named<MorphismDoc>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub diagrams: Vec<Named<DiagramDoc>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub retractions: Vec<Named<RetractionDoc>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pointed_families: Vec<Named<PointedFamilyDoc>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Named<T> {
    pub name: String,
    #[serde(flatten)]
    pub value: T,
}

/// Images of objects and morphisms by id. Identity morphisms may be omitted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDoc {
    pub objects: BTreeMap<String, String>,
    #[serde(default)]
    pub morphisms: BTreeMap<String, String>,
}

/// A functor between two named categories or groupoids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorDoc {
    pub source: String,
    pub target: String,
    #[serde(flatten)]
    pub map: MapDoc,
}

/// A groupoid given by name or inline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ShapeRef {
    Name(String),
    Inline(GroupoidTables),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDoc {
    pub category: String,
    pub shape: ShapeRef,
    pub arrow: MapDoc,
}

/// `components` maps each object `x` of the domain shape to a morphism
/// `F₁(x) -> F₂(φ(x))`; entries may be omitted where that is an identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismDoc {
    pub domain: String,
    pub codomain: String,
    pub shape_map: MapDoc,
    #[serde(default)]
    pub components: BTreeMap<String, String>,
}

/// A diagram indexed by a groupoid chosen on the command line: index object
/// ids to family names and index morphism ids to morphism names. Identities
/// may be omitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramDoc {
    pub objects: BTreeMap<String, String>,
    #[serde(default)]
    pub morphisms: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RetractionDoc {
    pub base: Vec<String>,
    pub total: Vec<String>,
    pub s: BTreeMap<String, String>,
    pub r: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointedFamilyDoc {
    pub indices: Vec<String>,
    pub carriers: BTreeMap<String, Vec<String>>,
    pub basepoints: BTreeMap<String, String>,
}

fn sort_tables(t: &mut CategoryTables) {
    t.objects.sort();
    t.morphisms.sort_by(|a, b| a.id.cmp(&b.id));
    t.identities.sort();
    t.composition.sort();
}

impl Document {
    /// Sorts every list whose order carries no meaning, so that documents
    /// describing the same values compare equal.
    pub fn normalized(mut self) -> Self {
        self.schema = None;
        self.categories.sort_by(|a, b| a.name.cmp(&b.name));
        self.groupoids.sort_by(|a, b| a.name.cmp(&b.name));
        self.functors.sort_by(|a, b| a.name.cmp(&b.name));
        self.families.sort_by(|a, b| a.name.cmp(&b.name));
        self.morphisms.sort_by(|a, b| a.name.cmp(&b.name));
        self.diagrams.sort_by(|a, b| a.name.cmp(&b.name));
        self.retractions.sort_by(|a, b| a.name.cmp(&b.name));
        self.pointed_families.sort_by(|a, b| a.name.cmp(&b.name));
        for c in &mut self.categories {
            sort_tables(&mut c.value);
        }
        for g in &mut self.groupoids {
            sort_tables(&mut g.value.category);
            g.value.inverses.sort();
        }
        for f in &mut self.families {
            if let ShapeRef::Inline(t) = &mut f.value.shape {
                sort_tables(&mut t.category);
                t.inverses.sort();
            }
        }
        for r in &mut self.retractions {
            r.value.base.sort();
            r.value.total.sort();
        }
        for p in &mut self.pointed_families {
            p.value.indices.sort();
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_ignores_section_order() {
        let text = r#"{"pointed_families": [
            {"name": "b", "indices": ["j", "i"], "carriers": {"i": ["x"], "j": ["y"]}, "basepoints": {}},
            {"name": "a", "indices": ["i"], "carriers": {"i": ["x"]}, "basepoints": {}}
        ]}"#;
        let doc: Document = serde_json::from_str(text).unwrap();
        let mut flipped = doc.clone();
        flipped.pointed_families.reverse();
        flipped.pointed_families[0].value.indices.reverse();
        assert_ne!(doc, flipped);
        assert_eq!(doc.normalized(), flipped.normalized());
    }

    #[test]
    fn unknown_sections_are_rejected() {
        assert!(serde_json::from_str::<Document>(r#"{"sets": []}"#).is_err());
    }
}
