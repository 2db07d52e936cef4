//! Coproducts and groupoid-indexed colimits in `Fam(C)`.

use std::sync::Arc;

use crate::category::{FiniteCategory, Functor, MorId, NatTrans};
use crate::error::{Budget, Error, Result};
use crate::fam::{compose_fam, hom_fam, same_category, same_object, validate_fam_morphism, validate_two_cell};
use crate::fam::{FamMorphism, FamObject};
use crate::grothendieck::{grothendieck_construction, GrothendieckConstruction, GroupoidDiagram};
use crate::groupoid::{self, FiniteGroupoid};

#[derive(Debug, Clone)]
pub struct Coproduct {
    pub object: Arc<FamObject>,
    pub injections: Vec<FamMorphism>,
}

/// Disjoint union of shapes with the copaired arrow. The injections have
/// identity components.
pub fn fam_coproduct(category: &Arc<FiniteCategory>, summands: &[Arc<FamObject>]) -> Result<Coproduct> {
    if summands.iter().any(|s| !same_category(&s.category, category)) {
        return Err(Error::TargetMismatch);
    }
    let shapes: Vec<&FiniteGroupoid> = summands.iter().map(|s| &s.shape).collect();
    let (shape, inclusions) = FiniteGroupoid::disjoint_union(&shapes);
    let arrows: Vec<&Functor> = summands.iter().map(|s| &s.arrow).collect();
    let arrow = groupoid::copair(&shapes, &arrows);
    let object = Arc::new(FamObject {
        shape,
        category: category.clone(),
        arrow,
    });
    let injections = summands
        .iter()
        .zip(inclusions)
        .map(|(s, inc)| FamMorphism {
            domain: s.clone(),
            codomain: object.clone(),
            shape_map: inc,
            components: NatTrans::identity(&s.shape, category, &s.arrow),
        })
        .collect();
    Ok(Coproduct { object, injections })
}

/// The morphism out of a coproduct restricting to `legs[i]` on summand `i`.
pub fn copair(coproduct: &Coproduct, legs: &[FamMorphism]) -> Result<FamMorphism> {
    if legs.len() != coproduct.injections.len() {
        return Err(Error::Precondition(format!(
            "expected {} legs, got {}",
            coproduct.injections.len(),
            legs.len()
        )));
    }
    let Some(first) = legs.first() else {
        return Err(Error::Precondition(
            "the copairing of no legs needs an explicit codomain".into(),
        ));
    };
    let codomain = first.codomain.clone();
    for (leg, inj) in legs.iter().zip(&coproduct.injections) {
        if !same_object(&leg.domain, &inj.domain) || !same_object(&leg.codomain, &codomain) {
            return Err(Error::NotComposable("leg endpoints do not match the coproduct".into()));
        }
    }
    Ok(copair_into(coproduct, legs, codomain))
}

fn copair_into(coproduct: &Coproduct, legs: &[FamMorphism], codomain: Arc<FamObject>) -> FamMorphism {
    let shapes: Vec<&FiniteGroupoid> = coproduct.injections.iter().map(|i| &i.domain.shape).collect();
    let maps: Vec<&Functor> = legs.iter().map(|l| &l.shape_map).collect();
    FamMorphism {
        domain: coproduct.object.clone(),
        codomain,
        shape_map: groupoid::copair(&shapes, &maps),
        components: NatTrans {
            components: legs.iter().flat_map(|l| l.components.components.iter().copied()).collect(),
        },
    }
}

/// The copairing of an empty list of legs: the unique map out of the empty
/// family.
pub fn copair_empty(coproduct: &Coproduct, codomain: &Arc<FamObject>) -> FamMorphism {
    copair_into(coproduct, &[], codomain.clone())
}

/// A strict functor from an index groupoid into `Fam(C)`.
#[derive(Debug, Clone)]
pub struct FamDiagram {
    pub category: Arc<FiniteCategory>,
    /// One family per index object.
    pub objects: Vec<Arc<FamObject>>,
    /// One morphism per index morphism.
    pub morphisms: Vec<FamMorphism>,
}

impl FamDiagram {
    pub fn check_functorial(&self, index: &FiniteGroupoid) -> Result<()> {
        if self.objects.len() != index.object_count() || self.morphisms.len() != index.morphism_count() {
            return Err(Error::NotFunctorial("diagram size does not match the index groupoid".into()));
        }
        if self.objects.iter().any(|o| !same_category(&o.category, &self.category)) {
            return Err(Error::TargetMismatch);
        }
        for u in index.morphism_ids() {
            let m = &self.morphisms[u.0];
            let name = index.morphism_name(u);
            if !same_object(&m.domain, &self.objects[index.source(u).0])
                || !same_object(&m.codomain, &self.objects[index.target(u).0])
            {
                return Err(Error::NotFunctorial(format!("`{name}` has the wrong endpoints")));
            }
            let report = validate_fam_morphism(m);
            if !report.is_valid() {
                return Err(Error::NotFunctorial(format!("`{name}` is not a morphism:\n{report}")));
            }
        }
        for j in index.object_ids() {
            let id = FamMorphism::identity(&self.objects[j.0]);
            if !self.morphisms[index.identity(j).0].same_data(&id) {
                return Err(Error::NotFunctorial(format!(
                    "identity of `{}` is not sent to an identity",
                    index.object_name(j)
                )));
            }
        }
        for v in index.morphism_ids() {
            for u in index.morphism_ids() {
                if let Some(vu) = index.compose(v, u) {
                    let composite = compose_fam(&self.morphisms[v.0], &self.morphisms[u.0])?;
                    if !self.morphisms[vu.0].same_data(&composite) {
                        return Err(Error::NotFunctorial(format!(
                            "`{}` ∘ `{}` is not preserved",
                            index.morphism_name(v),
                            index.morphism_name(u)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn shapes(&self) -> GroupoidDiagram {
        GroupoidDiagram {
            fibers: self.objects.iter().map(|o| o.shape.clone()).collect(),
            actions: self.morphisms.iter().map(|m| m.shape_map.clone()).collect(),
        }
    }
}

/// Legs `λ_j: d(j) -> apex` and, per index morphism `u: j -> j'`, a 2-cell
/// `θ_u: λ_j ⇒ λ_{j'} ∘ d(u)` given by its shape components.
#[derive(Debug, Clone)]
pub struct PseudoCocone {
    pub apex: Arc<FamObject>,
    pub legs: Vec<FamMorphism>,
    pub cells: Vec<NatTrans>,
}

impl PseudoCocone {
    /// Legs are morphisms, cells are 2-cells, identities carry identity cells
    /// and cells compose along composites.
    pub fn is_valid(&self, index: &FiniteGroupoid, d: &FamDiagram) -> bool {
        let y = &self.apex.shape;
        let legs_ok = index.object_ids().all(|j| {
            let leg = &self.legs[j.0];
            same_object(&leg.domain, &d.objects[j.0])
                && same_object(&leg.codomain, &self.apex)
                && validate_fam_morphism(leg).is_valid()
        });
        if !legs_ok || self.cells.len() != index.morphism_count() {
            return false;
        }
        for u in index.morphism_ids() {
            let (j, j2) = (index.source(u), index.target(u));
            let Ok(moved) = compose_fam(&self.legs[j2.0], &d.morphisms[u.0]) else {
                return false;
            };
            if !validate_two_cell(&self.legs[j.0], &moved, &self.cells[u.0]).is_valid() {
                return false;
            }
        }
        for j in index.object_ids() {
            let cell = &self.cells[index.identity(j).0];
            let leg = &self.legs[j.0];
            if d.objects[j.0]
                .shape
                .object_ids()
                .any(|x| cell.at(x) != y.identity(leg.shape_map.obj(x)))
            {
                return false;
            }
        }
        for v in index.morphism_ids() {
            for u in index.morphism_ids() {
                let Some(vu) = index.compose(v, u) else { continue };
                let du = &d.morphisms[u.0].shape_map;
                let ok = d.objects[index.source(u).0].shape.object_ids().all(|x| {
                    y.compose(self.cells[v.0].at(du.obj(x)), self.cells[u.0].at(x)) == Some(self.cells[vu.0].at(x))
                });
                if !ok {
                    return false;
                }
            }
        }
        true
    }
}

/// The colimit of a groupoid-indexed diagram: the Grothendieck construction
/// of the shapes, with arrow `(u, v) ↦ F_{j'}(v) ∘ d(u)★_x`.
#[derive(Debug, Clone)]
pub struct FamColimit {
    pub object: Arc<FamObject>,
    pub construction: GrothendieckConstruction,
    /// Fiber inclusions with identity components.
    pub injections: Vec<FamMorphism>,
    /// Per index morphism `u: j -> j'`, the canonical 2-cell
    /// `ι_j ⇒ ι_{j'} ∘ d(u)` with component `(u, id)` at `x`.
    pub cells: Vec<NatTrans>,
}

pub fn fam_colimit(index: &FiniteGroupoid, d: &FamDiagram) -> Result<FamColimit> {
    d.check_functorial(index)?;
    let construction = grothendieck_construction(index, &d.shapes())?;
    let c = &d.category;
    let total = &construction.total;
    let arrow = Functor {
        objects: construction
            .objects
            .iter()
            .map(|&(j, x)| d.objects[j.0].arrow.obj(x))
            .collect(),
        morphisms: construction
            .morphisms
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| {
                let (j, x) = construction.objects[total.source(MorId(i)).0];
                debug_assert_eq!(j, index.source(u));
                let f_next = &d.objects[index.target(u).0].arrow;
                c.comp(f_next.mor(v), d.morphisms[u.0].components.at(x))
            })
            .collect(),
    };
    let object = Arc::new(FamObject {
        shape: total.clone(),
        category: c.clone(),
        arrow,
    });
    let injections = index
        .object_ids()
        .map(|j| {
            let fam = &d.objects[j.0];
            FamMorphism {
                domain: fam.clone(),
                codomain: object.clone(),
                shape_map: construction.inclusions[j.0].clone(),
                components: NatTrans::identity(&fam.shape, c, &fam.arrow),
            }
        })
        .collect();
    let cells = index
        .morphism_ids()
        .map(|u| {
            let j = index.source(u);
            let j2 = index.target(u);
            let du = &d.morphisms[u.0].shape_map;
            let fiber2 = &d.objects[j2.0].shape;
            NatTrans {
                components: d.objects[j.0]
                    .shape
                    .object_ids()
                    .map(|x| {
                        let src = construction.object(j, x);
                        construction.morphism(src, u, fiber2.identity(du.obj(x)))
                    })
                    .collect(),
            }
        })
        .collect();
    Ok(FamColimit {
        object,
        construction,
        injections,
        cells,
    })
}

impl FamColimit {
    pub fn cocone(&self) -> PseudoCocone {
        PseudoCocone {
            apex: self.object.clone(),
            legs: self.injections.clone(),
            cells: self.cells.clone(),
        }
    }

    /// The induced morphism `μ` with `μ(j, x) = λ_j(x)`,
    /// `μ(u, v) = λ_{j'}(v) ∘ θ_{u,x}` and components `λ_j★`.
    pub fn mediator(&self, index: &FiniteGroupoid, cocone: &PseudoCocone) -> FamMorphism {
        let g = &self.construction;
        let y = &cocone.apex.shape;
        let objects = g
            .objects
            .iter()
            .map(|&(j, x)| cocone.legs[j.0].shape_map.obj(x))
            .collect();
        let morphisms = g
            .morphisms
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| {
                let (_, x) = g.objects[g.total.source(MorId(i)).0];
                let j2 = index.target(u);
                y.comp(cocone.legs[j2.0].shape_map.mor(v), cocone.cells[u.0].at(x))
            })
            .collect();
        let components = g
            .objects
            .iter()
            .map(|&(j, x)| cocone.legs[j.0].components.at(x))
            .collect();
        FamMorphism {
            domain: self.object.clone(),
            codomain: cocone.apex.clone(),
            shape_map: Functor { objects, morphisms },
            components: NatTrans { components },
        }
    }

    /// `μ ∘ ι_j = λ_j` on the nose and `μ` whiskered with the canonical cells
    /// gives the cocone's cells.
    pub fn factors(&self, index: &FiniteGroupoid, mu: &FamMorphism, cocone: &PseudoCocone) -> bool {
        let legs_ok = index.object_ids().all(|j| {
            compose_fam(mu, &self.injections[j.0])
                .map(|m| m.same_data(&cocone.legs[j.0]))
                .unwrap_or(false)
        });
        legs_ok
            && index.morphism_ids().all(|u| {
                self.cells[u.0]
                    .components
                    .iter()
                    .zip(&cocone.cells[u.0].components)
                    .all(|(&c, &t)| mu.shape_map.mor(c) == t)
            })
    }

    /// Number of morphisms out of the colimit through which `cocone` factors,
    /// by exhaustive search.
    pub fn count_factorizations(&self, index: &FiniteGroupoid, cocone: &PseudoCocone, budget: &mut Budget) -> Result<usize> {
        Ok(hom_fam(&self.object, &cocone.apex, budget)?
            .iter()
            .filter(|mu| self.factors(index, mu, cocone))
            .count())
    }
}
