//! The category `Fam(C)` of families over a finite category `C`.
//!
//! A morphism `(X₁, F₁) -> (X₂, F₂)` is a pair `(φ, φ★)` of a functor
//! `φ: X₁ -> X₂` and a natural transformation `φ★: F₁ ⇒ F₂∘φ`. Morphisms are
//! compared on the nose; 2-cells between them are carried separately where a
//! universal property needs them.

mod colimit;
mod decompose;
mod extensive;
mod limit;

use std::ops::ControlFlow;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::RngCore;

use crate::category::{
    for_each_nat_trans, functors, validate_functor, validate_nat_trans, FiniteCategory, Functor, MorId, NatTrans,
    ObjId,
};
use crate::error::{Budget, Error, Result};
use crate::groupoid::{aut_group, validate_groupoid, FiniteGroupoid};
use crate::report::{ValidationReport, Violation};

pub use colimit::{copair, copair_empty, fam_colimit, fam_coproduct, Coproduct, FamColimit, FamDiagram, PseudoCocone};
pub use decompose::{decompose_connected, DecompositionCertificate};
pub use extensive::{extensivity_check, ExtensivityReport};
pub use limit::{fam_limit, FamLimit, LimitDiagram, PseudoCone};

/// A family `(X, F)`: a shape groupoid and an arrow functor into `category`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamObject {
    pub shape: FiniteGroupoid,
    pub category: Arc<FiniteCategory>,
    pub arrow: Functor,
}

/// A morphism `(φ, φ★)`. The component of `φ★` at `x` is a morphism
/// `F₁(x) -> F₂(φ(x))` of the target category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamMorphism {
    pub domain: Arc<FamObject>,
    pub codomain: Arc<FamObject>,
    pub shape_map: Functor,
    pub components: NatTrans,
}

pub(crate) fn same_category(a: &Arc<FiniteCategory>, b: &Arc<FiniteCategory>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

pub(crate) fn same_object(a: &Arc<FamObject>, b: &Arc<FamObject>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl FamObject {
    /// Validates before returning.
    pub fn new(shape: FiniteGroupoid, category: Arc<FiniteCategory>, arrow: Functor) -> Result<Self> {
        let f = FamObject {
            shape,
            category,
            arrow,
        };
        validate_fam_object(&f).into_result()?;
        Ok(f)
    }

    /// The family with empty shape: the initial object.
    pub fn empty(category: Arc<FiniteCategory>) -> Self {
        FamObject {
            shape: FiniteGroupoid::empty(),
            category,
            arrow: Functor {
                objects: Vec::new(),
                morphisms: Vec::new(),
            },
        }
    }

    /// `σ(c)`: the point-shaped family at `c`.
    pub fn sigma(category: Arc<FiniteCategory>, c: ObjId) -> Self {
        let shape = FiniteGroupoid::point();
        let arrow = Functor {
            objects: vec![c],
            morphisms: vec![category.identity(c)],
        };
        FamObject {
            shape,
            category,
            arrow,
        }
    }

    /// Every automorphism group of the shape is trivial.
    pub fn is_zero_truncated(&self) -> bool {
        self.shape
            .object_ids()
            .all(|x| self.shape.hom(x, x).len() == 1)
    }

    pub fn is_connected(&self) -> bool {
        self.shape.is_connected()
    }

    /// Restriction to a full subgroupoid of the shape, with the inclusion.
    pub fn restrict(self: &Arc<Self>, objects: &[ObjId]) -> (Arc<FamObject>, FamMorphism) {
        let (sub, inc) = self.shape.full_subgroupoid(objects);
        let arrow = self.arrow.compose(&inc);
        let part = Arc::new(FamObject {
            shape: sub,
            category: self.category.clone(),
            arrow,
        });
        let components = NatTrans {
            components: objects.iter().map(|&o| self.category.identity(self.arrow.obj(o))).collect(),
        };
        let m = FamMorphism {
            domain: part.clone(),
            codomain: self.clone(),
            shape_map: inc,
            components,
        };
        (part, m)
    }
}

pub fn sigma_embed(category: &Arc<FiniteCategory>, c: ObjId) -> FamObject {
    FamObject::sigma(category.clone(), c)
}

pub fn validate_fam_object(f: &FamObject) -> ValidationReport {
    let mut report = validate_groupoid(&f.shape);
    if report.is_valid() {
        report.extend(validate_functor(&f.shape, &f.category, &f.arrow));
    }
    report.normalized()
}

pub fn validate_fam_morphism(m: &FamMorphism) -> ValidationReport {
    let mut report = ValidationReport::new();
    if !same_category(&m.domain.category, &m.codomain.category) {
        report.push(Violation::CategoryMismatch {
            context: "morphism endpoints".into(),
        });
        return report;
    }
    report.extend(validate_fam_object(&m.domain));
    report.extend(validate_fam_object(&m.codomain));
    if !report.is_valid() {
        return report.normalized();
    }
    let (x1, x2) = (&m.domain.shape, &m.codomain.shape);
    report.extend(validate_functor(x1, x2, &m.shape_map));
    if !report.is_valid() {
        return report.normalized();
    }
    let pushed = m.codomain.arrow.compose(&m.shape_map);
    report.extend(validate_nat_trans(
        x1,
        &m.domain.category,
        &m.domain.arrow,
        &pushed,
        &m.components,
    ));
    report.normalized()
}

impl FamMorphism {
    pub fn identity(f: &Arc<FamObject>) -> Self {
        FamMorphism {
            domain: f.clone(),
            codomain: f.clone(),
            shape_map: Functor::identity(&f.shape),
            components: NatTrans::identity(&f.shape, &f.category, &f.arrow),
        }
    }

    pub fn category(&self) -> &Arc<FiniteCategory> {
        &self.domain.category
    }

    /// Same shape map and components. Endpoints are not compared.
    pub fn same_data(&self, other: &FamMorphism) -> bool {
        self.shape_map == other.shape_map && self.components == other.components
    }

    /// Invertible shape map and invertible components.
    pub fn is_isomorphism(&self) -> bool {
        let (x1, x2) = (&self.domain.shape, &self.codomain.shape);
        let c = self.category();
        let mut seen_obj = vec![false; x2.object_count()];
        for o in x1.object_ids() {
            let t = self.shape_map.obj(o);
            if seen_obj[t.0] {
                return false;
            }
            seen_obj[t.0] = true;
        }
        let mut seen_mor = vec![false; x2.morphism_count()];
        for m in x1.morphism_ids() {
            let t = self.shape_map.mor(m);
            if seen_mor[t.0] {
                return false;
            }
            seen_mor[t.0] = true;
        }
        x1.object_count() == x2.object_count()
            && x1.morphism_count() == x2.morphism_count()
            && self.components.components.iter().all(|&k| c.is_isomorphism(k))
    }

    /// The inverse of an isomorphism.
    pub fn inverse(&self) -> Option<FamMorphism> {
        if !self.is_isomorphism() {
            return None;
        }
        let (x1, x2) = (&self.domain.shape, &self.codomain.shape);
        let c = self.category();
        let mut objects = vec![ObjId(0); x2.object_count()];
        for o in x1.object_ids() {
            objects[self.shape_map.obj(o).0] = o;
        }
        let mut morphisms = vec![MorId(0); x2.morphism_count()];
        for m in x1.morphism_ids() {
            morphisms[self.shape_map.mor(m).0] = m;
        }
        let components = objects
            .iter()
            .map(|&o| c.inverse_of(self.components.at(o)).expect("invertible component"))
            .collect();
        Some(FamMorphism {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            shape_map: Functor { objects, morphisms },
            components: NatTrans { components },
        })
    }
}

/// `m2 ∘ m1`: shape maps compose, and the component at `x` is
/// `m2★(φ₁(x)) ∘ m1★(x)`.
pub fn compose_fam(m2: &FamMorphism, m1: &FamMorphism) -> Result<FamMorphism> {
    if !same_category(m1.category(), m2.category()) {
        return Err(Error::TargetMismatch);
    }
    if !same_object(&m1.codomain, &m2.domain) {
        return Err(Error::NotComposable(
            "codomain of the first morphism is not the domain of the second".into(),
        ));
    }
    let c = m1.category();
    let components = m1
        .domain
        .shape
        .object_ids()
        .map(|x| c.comp(m2.components.at(m1.shape_map.obj(x)), m1.components.at(x)))
        .collect();
    Ok(FamMorphism {
        domain: m1.domain.clone(),
        codomain: m2.codomain.clone(),
        shape_map: m2.shape_map.compose(&m1.shape_map),
        components: NatTrans { components },
    })
}

/// Calls `visit` on every morphism `a -> b`, optionally in an order shuffled
/// by `rng`.
pub fn for_each_fam_morphism(
    a: &Arc<FamObject>,
    b: &Arc<FamObject>,
    budget: &mut Budget,
    mut rng: Option<&mut dyn RngCore>,
    visit: &mut dyn FnMut(FamMorphism) -> ControlFlow<()>,
) -> Result<()> {
    if !same_category(&a.category, &b.category) {
        return Err(Error::TargetMismatch);
    }
    let mut maps = functors(&a.shape, &b.shape, budget)?;
    if let Some(r) = rng.as_mut() {
        maps.shuffle(r);
    }
    for phi in maps {
        let pushed = b.arrow.compose(&phi);
        let mut stop = false;
        for_each_nat_trans(
            &a.shape,
            &a.category,
            &a.arrow,
            &pushed,
            budget,
            rng.as_mut().map(|r| &mut **r as &mut dyn RngCore),
            &mut |t| {
                let m = FamMorphism {
                    domain: a.clone(),
                    codomain: b.clone(),
                    shape_map: phi.clone(),
                    components: t.clone(),
                };
                let flow = visit(m);
                stop = flow.is_break();
                flow
            },
        )?;
        if stop {
            break;
        }
    }
    Ok(())
}

/// `Hom_Fam(a, b)`, exhaustively.
pub fn hom_fam(a: &Arc<FamObject>, b: &Arc<FamObject>, budget: &mut Budget) -> Result<Vec<FamMorphism>> {
    let mut out = Vec::new();
    for_each_fam_morphism(a, b, budget, None, &mut |m| {
        out.push(m);
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Checks that `theta` is a 2-cell `m ⇒ n` between parallel morphisms: a
/// natural transformation `θ: φ ⇒ ψ` of shape maps with
/// `F₂(θ_x) ∘ φ★_x = ψ★_x`.
pub fn validate_two_cell(m: &FamMorphism, n: &FamMorphism, theta: &NatTrans) -> ValidationReport {
    let mut report = validate_nat_trans(
        &m.domain.shape,
        &m.codomain.shape,
        &m.shape_map,
        &n.shape_map,
        theta,
    );
    if !report.is_valid() {
        return report;
    }
    let c = m.category();
    let target = &m.codomain;
    for x in m.domain.shape.object_ids() {
        let lhs = c.compose(target.arrow.mor(theta.at(x)), m.components.at(x));
        if lhs != Some(n.components.at(x)) {
            report.push(Violation::TwoCellComponent {
                object: m.domain.shape.object_name(x).to_string(),
            });
        }
    }
    report.normalized()
}

/// The automorphism group of the shape at `x`.
pub fn shape_aut(f: &FamObject, x: ObjId) -> Result<crate::group::FiniteGroup> {
    aut_group(&f.shape, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    fn arrow_cat() -> Arc<FiniteCategory> {
        Arc::new(FiniteCategory::poset(&["0", "1"], &[("0", "1")]))
    }

    fn diamond() -> Arc<FiniteCategory> {
        Arc::new(FiniteCategory::poset(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")],
        ))
    }

    #[test]
    fn sigma_is_valid() {
        let c = arrow_cat();
        let s = FamObject::sigma(c.clone(), ObjId(1));
        assert!(validate_fam_object(&s).is_valid());
    }

    #[test]
    fn bz2_family_needs_an_involution() {
        // C has one object with an automorphism of order two, and a second object
        let z2 = FiniteGroupoid::delooping(&FiniteGroup::cyclic(2));
        let (c, _) = FiniteGroupoid::disjoint_union(&[&z2, &FiniteGroupoid::point()]);
        let c = Arc::new(c.category().clone());
        let shape = FiniteGroupoid::delooping(&FiniteGroup::cyclic(2));
        let good = Functor {
            objects: vec![ObjId(0)],
            morphisms: vec![MorId(0), MorId(1)],
        };
        assert!(FamObject::new(shape.clone(), c.clone(), good).is_ok());
        let bad = Functor {
            objects: vec![ObjId(0)],
            morphisms: vec![MorId(1), MorId(1)],
        };
        assert!(FamObject::new(shape, c, bad).is_err());
    }

    #[test]
    fn non_natural_component_is_named() {
        let bz2 = FiniteGroupoid::delooping(&FiniteGroup::cyclic(2));
        let c = Arc::new(bz2.category().clone());
        let shape = FiniteGroupoid::chaotic(&["p", "q"]);
        let f = Arc::new(FamObject::new(shape.clone(), c.clone(), Functor::constant(&shape, &c, ObjId(0))).unwrap());
        let m = FamMorphism {
            domain: f.clone(),
            codomain: f.clone(),
            shape_map: Functor::identity(&shape),
            components: NatTrans {
                components: vec![MorId(1), MorId(1)],
            },
        };
        assert!(validate_fam_morphism(&m).is_valid());
        let bad = FamMorphism {
            components: NatTrans {
                components: vec![MorId(0), MorId(1)],
            },
            ..m
        };
        let report = validate_fam_morphism(&bad);
        assert!(report
            .violations
            .contains(&Violation::Naturality {
                morphism: shape.morphism_name(shape.hom(ObjId(0), ObjId(1))[0]).to_string()
            }));
    }

    #[test]
    fn composition_is_unital_and_associative() {
        let c = diamond();
        let objs: Vec<Arc<FamObject>> = (0..4).map(|i| Arc::new(FamObject::sigma(c.clone(), ObjId(i)))).collect();
        let mut budget = Budget::default();
        for a in &objs {
            for b in &objs {
                for m in hom_fam(a, b, &mut budget).unwrap() {
                    let left = compose_fam(&FamMorphism::identity(b), &m).unwrap();
                    let right = compose_fam(&m, &FamMorphism::identity(a)).unwrap();
                    assert!(left.same_data(&m) && right.same_data(&m));
                    for d in &objs {
                        for n in hom_fam(b, d, &mut budget).unwrap() {
                            for e in &objs {
                                for p in hom_fam(d, e, &mut budget).unwrap() {
                                    let x = compose_fam(&p, &compose_fam(&n, &m).unwrap()).unwrap();
                                    let y = compose_fam(&compose_fam(&p, &n).unwrap(), &m).unwrap();
                                    assert!(x.same_data(&y));
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn sigma_is_fully_faithful() {
        let c = diamond();
        let mut budget = Budget::default();
        for a in c.object_ids() {
            for b in c.object_ids() {
                let sa = Arc::new(FamObject::sigma(c.clone(), a));
                let sb = Arc::new(FamObject::sigma(c.clone(), b));
                assert_eq!(hom_fam(&sa, &sb, &mut budget).unwrap().len(), c.hom(a, b).len());
            }
        }
    }

    #[test]
    fn maps_into_sigma_of_terminal_are_unique() {
        let c = diamond();
        let top = Arc::new(FamObject::sigma(c.clone(), ObjId(3)));
        let shape = FiniteGroupoid::disjoint_union(&[
            &FiniteGroupoid::chaotic(&["p", "q"]),
            &FiniteGroupoid::delooping(&FiniteGroup::cyclic(2)),
        ])
        .0;
        let arrow = Functor::constant(&shape, &c, ObjId(1));
        let f = Arc::new(FamObject::new(shape, c.clone(), arrow).unwrap());
        assert_eq!(hom_fam(&f, &top, &mut Budget::default()).unwrap().len(), 1);
    }

    #[test]
    fn zero_truncation() {
        let c = arrow_cat();
        let mk = |shape: FiniteGroupoid| {
            let arrow = Functor::constant(&shape, &c, ObjId(0));
            FamObject::new(shape, c.clone(), arrow).unwrap()
        };
        assert!(mk(FiniteGroupoid::discrete(&["a", "b"])).is_zero_truncated());
        assert!(!mk(FiniteGroupoid::delooping(&FiniteGroup::cyclic(2))).is_zero_truncated());
        assert!(mk(FiniteGroupoid::chaotic(&["p", "q"])).is_zero_truncated());
    }

    #[test]
    fn isomorphisms_invert() {
        let c = arrow_cat();
        let shape = FiniteGroupoid::chaotic(&["p", "q"]);
        let f = Arc::new(FamObject::new(shape.clone(), c.clone(), Functor::constant(&shape, &c, ObjId(1))).unwrap());
        let swap = Functor {
            objects: vec![ObjId(1), ObjId(0)],
            morphisms: shape
                .morphism_ids()
                .map(|m| shape.hom(ObjId(1 - shape.source(m).0), ObjId(1 - shape.target(m).0))[0])
                .collect(),
        };
        let m = FamMorphism {
            domain: f.clone(),
            codomain: f.clone(),
            shape_map: swap,
            components: NatTrans::identity(&shape, &c, &f.arrow),
        };
        assert!(validate_fam_morphism(&m).is_valid());
        let inv = m.inverse().unwrap();
        assert!(compose_fam(&inv, &m).unwrap().same_data(&FamMorphism::identity(&f)));
    }
}
