//! Splitting a family into its connected components.

use std::sync::Arc;

use crate::category::{Functor, MorId, NatTrans, ObjId};
use crate::error::Result;
use crate::fam::colimit::{fam_coproduct, Coproduct};
use crate::fam::{compose_fam, FamMorphism, FamObject};
use crate::groupoid::pi0;

/// Connected components of a family, with the isomorphisms between their
/// coproduct and the family in both directions.
#[derive(Debug, Clone)]
pub struct DecompositionCertificate {
    pub components: Vec<Arc<FamObject>>,
    /// Component index of each object of the original shape.
    pub block_of: Vec<usize>,
    /// Restriction inclusions `component -> original`.
    pub inclusions: Vec<FamMorphism>,
    pub coproduct: Coproduct,
    /// `∐ components -> original`.
    pub reassemble: FamMorphism,
    /// `original -> ∐ components`.
    pub split: FamMorphism,
}

impl DecompositionCertificate {
    /// Both reassembly maps compose to identities on the nose.
    pub fn round_trips(&self) -> bool {
        let there = compose_fam(&self.split, &self.reassemble);
        let back = compose_fam(&self.reassemble, &self.split);
        match (there, back) {
            (Ok(a), Ok(b)) => {
                a.same_data(&FamMorphism::identity(&self.coproduct.object))
                    && b.same_data(&FamMorphism::identity(&self.split.domain))
            }
            _ => false,
        }
    }
}

pub fn decompose_connected(f: &Arc<FamObject>) -> Result<DecompositionCertificate> {
    let comps = pi0(&f.shape);
    let mut components = Vec::new();
    let mut inclusions = Vec::new();
    for block in &comps.blocks {
        let (part, inc) = f.restrict(block);
        components.push(part);
        inclusions.push(inc);
    }
    let coproduct = fam_coproduct(&f.category, &components)?;
    let reassemble = FamMorphism {
        domain: coproduct.object.clone(),
        codomain: f.clone(),
        shape_map: crate::groupoid::copair(
            &components.iter().map(|c| &c.shape).collect::<Vec<_>>(),
            &inclusions.iter().map(|i| &i.shape_map).collect::<Vec<_>>(),
        ),
        components: NatTrans {
            components: inclusions
                .iter()
                .flat_map(|i| i.components.components.iter().copied())
                .collect(),
        },
    };
    // invert the reassembly map on the shape; all components are identities
    let mut objects = vec![ObjId(0); f.shape.object_count()];
    for o in coproduct.object.shape.object_ids() {
        objects[reassemble.shape_map.obj(o).0] = o;
    }
    let mut morphisms = vec![MorId(0); f.shape.morphism_count()];
    for m in coproduct.object.shape.morphism_ids() {
        morphisms[reassemble.shape_map.mor(m).0] = m;
    }
    let split = FamMorphism {
        domain: f.clone(),
        codomain: coproduct.object.clone(),
        shape_map: Functor { objects, morphisms },
        components: NatTrans::identity(&f.shape, &f.category, &f.arrow),
    };
    Ok(DecompositionCertificate {
        components,
        block_of: comps.block_of,
        inclusions,
        coproduct,
        reassemble,
        split,
    })
}
