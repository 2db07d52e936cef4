//! Terminal objects, finite products and pullbacks in `Fam(C)`.
//!
//! The shape of a limit is the limit of the shapes (the iso-comma groupoid for
//! pullbacks); the arrow is computed pointwise as a limit in `C`.

use std::sync::Arc;

use crate::category::{FiniteCategory, Functor, MorId, NatTrans, ObjId};
use crate::error::{Budget, Error, Result};
use crate::fam::{compose_fam, hom_fam, same_category, same_object, validate_fam_morphism, validate_two_cell};
use crate::fam::{FamMorphism, FamObject};
use crate::groupoid::FiniteGroupoid;
use crate::iso_comma::{iso_comma_pullback, IsoComma};
use crate::limits::{brute_force_limit, mediating_morphisms, Cone, Diagram, DiagramArrow};

#[derive(Debug, Clone)]
pub enum LimitDiagram {
    Terminal(Arc<FiniteCategory>),
    Product(Arc<FiniteCategory>, Vec<Arc<FamObject>>),
    /// `left -> base <- right`.
    Pullback(FamMorphism, FamMorphism),
}

#[derive(Debug, Clone)]
pub struct FamLimit {
    pub object: Arc<FamObject>,
    /// One per factor; for a pullback, the two projections to the left and
    /// right families.
    pub projections: Vec<FamMorphism>,
    /// For a pullback, the tautological 2-cell `left∘p ⇒ right∘q`.
    pub square: Option<NatTrans>,
    /// The limit cone in `C` chosen at each object of the shape.
    pub pointwise: Vec<Cone>,
    diagram: LimitDiagram,
    iso_comma: Option<IsoComma>,
}

/// Legs into the diagram; for a pullback, also a 2-cell
/// `left∘legs[0] ⇒ right∘legs[1]` given by its shape components.
#[derive(Debug, Clone)]
pub struct PseudoCone {
    pub apex: Arc<FamObject>,
    pub legs: Vec<FamMorphism>,
    pub cell: Option<NatTrans>,
}

fn pointwise_limit(c: &FiniteCategory, d: &Diagram, budget: &mut Budget, describe: impl FnOnce() -> String) -> Result<Cone> {
    brute_force_limit(c, d, budget)?.ok_or_else(|| Error::MissingLimit(describe()))
}

/// The unique morphism from `competitor` into `limit`.
fn induced(c: &FiniteCategory, competitor: &Cone, limit: &Cone) -> MorId {
    let m = mediating_morphisms(c, competitor, limit);
    debug_assert_eq!(m.len(), 1);
    m[0]
}

pub fn fam_limit(diagram: &LimitDiagram, budget: &mut Budget) -> Result<FamLimit> {
    match diagram {
        LimitDiagram::Terminal(c) => product(c, &[], diagram, budget),
        LimitDiagram::Product(c, factors) => product(c, factors, diagram, budget),
        LimitDiagram::Pullback(left, right) => pullback(left, right, diagram, budget),
    }
}

fn product(c: &Arc<FiniteCategory>, factors: &[Arc<FamObject>], diagram: &LimitDiagram, budget: &mut Budget) -> Result<FamLimit> {
    if factors.iter().any(|f| !same_category(&f.category, c)) {
        return Err(Error::TargetMismatch);
    }
    let shapes: Vec<&FiniteGroupoid> = factors.iter().map(|f| &f.shape).collect();
    let (shape, prs) = FiniteGroupoid::product(&shapes);
    let mut pointwise = Vec::with_capacity(shape.object_count());
    for o in shape.object_ids() {
        let nodes: Vec<ObjId> = factors.iter().zip(&prs).map(|(f, p)| f.arrow.obj(p.obj(o))).collect();
        let cone = pointwise_limit(c, &Diagram::discrete(nodes.clone()), budget, || {
            if nodes.is_empty() {
                "terminal object".to_string()
            } else {
                let names: Vec<&str> = nodes.iter().map(|&n| c.object_name(n)).collect();
                format!("product of ({})", names.join(", "))
            }
        })?;
        pointwise.push(cone);
    }
    let morphisms = shape
        .morphism_ids()
        .map(|w| {
            let (s, t) = (shape.source(w), shape.target(w));
            let competitor = Cone {
                apex: pointwise[s.0].apex,
                legs: factors
                    .iter()
                    .zip(&prs)
                    .zip(&pointwise[s.0].legs)
                    .map(|((f, p), &leg)| c.comp(f.arrow.mor(p.mor(w)), leg))
                    .collect(),
            };
            induced(c, &competitor, &pointwise[t.0])
        })
        .collect();
    let arrow = Functor {
        objects: pointwise.iter().map(|cone| cone.apex).collect(),
        morphisms,
    };
    let object = Arc::new(FamObject {
        shape,
        category: c.clone(),
        arrow,
    });
    let projections = factors
        .iter()
        .zip(prs)
        .enumerate()
        .map(|(i, (f, p))| FamMorphism {
            domain: object.clone(),
            codomain: f.clone(),
            shape_map: p,
            components: NatTrans {
                components: pointwise.iter().map(|cone| cone.legs[i]).collect(),
            },
        })
        .collect();
    Ok(FamLimit {
        object,
        projections,
        square: None,
        pointwise,
        diagram: diagram.clone(),
        iso_comma: None,
    })
}

fn pullback(left: &FamMorphism, right: &FamMorphism, diagram: &LimitDiagram, budget: &mut Budget) -> Result<FamLimit> {
    if !same_category(left.category(), right.category()) {
        return Err(Error::TargetMismatch);
    }
    if !same_object(&left.codomain, &right.codomain) {
        return Err(Error::NotComposable("pullback legs have different codomains".into()));
    }
    let c = left.category().clone();
    let (a, b, base) = (&left.domain, &right.domain, &left.codomain);
    let ic = iso_comma_pullback(&a.shape, &b.shape, &base.shape, &left.shape_map, &right.shape_map)?;
    let shape = &ic.groupoid;
    let mut pointwise = Vec::with_capacity(shape.object_count());
    for &(x, y, gamma) in &ic.triples {
        let over = base.arrow.obj(base.shape.target(gamma));
        let d = Diagram {
            nodes: vec![a.arrow.obj(x), over, b.arrow.obj(y)],
            arrows: vec![
                DiagramArrow {
                    from: 0,
                    to: 1,
                    morphism: c.comp(base.arrow.mor(gamma), left.components.at(x)),
                },
                DiagramArrow {
                    from: 2,
                    to: 1,
                    morphism: right.components.at(y),
                },
            ],
        };
        let cone = pointwise_limit(&c, &d, budget, || {
            format!(
                "pullback of {} -> {} <- {}",
                c.object_name(d.nodes[0]),
                c.object_name(d.nodes[1]),
                c.object_name(d.nodes[2])
            )
        })?;
        pointwise.push(cone);
    }
    let morphisms = shape
        .morphism_ids()
        .map(|w| {
            let (s, t) = (shape.source(w), shape.target(w));
            let (alpha, beta) = ic.pairs[w.0];
            let moved = right.shape_map.mor(beta);
            let legs = &pointwise[s.0].legs;
            let competitor = Cone {
                apex: pointwise[s.0].apex,
                legs: vec![
                    c.comp(a.arrow.mor(alpha), legs[0]),
                    c.comp(base.arrow.mor(moved), legs[1]),
                    c.comp(b.arrow.mor(beta), legs[2]),
                ],
            };
            induced(&c, &competitor, &pointwise[t.0])
        })
        .collect();
    let arrow = Functor {
        objects: pointwise.iter().map(|cone| cone.apex).collect(),
        morphisms,
    };
    let object = Arc::new(FamObject {
        shape: shape.clone(),
        category: c.clone(),
        arrow,
    });
    let p = FamMorphism {
        domain: object.clone(),
        codomain: a.clone(),
        shape_map: ic.to_left.clone(),
        components: NatTrans {
            components: pointwise.iter().map(|cone| cone.legs[0]).collect(),
        },
    };
    let q = FamMorphism {
        domain: object.clone(),
        codomain: b.clone(),
        shape_map: ic.to_right.clone(),
        components: NatTrans {
            components: pointwise.iter().map(|cone| cone.legs[2]).collect(),
        },
    };
    Ok(FamLimit {
        object,
        projections: vec![p, q],
        square: Some(ic.square()),
        pointwise,
        diagram: diagram.clone(),
        iso_comma: Some(ic),
    })
}

impl FamLimit {
    pub fn diagram(&self) -> &LimitDiagram {
        &self.diagram
    }

    pub fn iso_comma(&self) -> Option<&IsoComma> {
        self.iso_comma.as_ref()
    }

    pub fn cone(&self) -> PseudoCone {
        PseudoCone {
            apex: self.object.clone(),
            legs: self.projections.clone(),
            cell: self.square.clone(),
        }
    }

    /// Legs are morphisms into the right families and, for a pullback, the
    /// cell is a 2-cell between the two composites.
    pub fn is_cone(&self, cone: &PseudoCone) -> bool {
        if cone.legs.len() != self.projections.len() {
            return false;
        }
        let legs_ok = cone.legs.iter().zip(&self.projections).all(|(leg, pr)| {
            same_object(&leg.domain, &cone.apex)
                && same_object(&leg.codomain, &pr.codomain)
                && validate_fam_morphism(leg).is_valid()
        });
        if !legs_ok {
            return false;
        }
        match (&self.diagram, &cone.cell) {
            (LimitDiagram::Pullback(left, right), Some(cell)) => {
                let (Ok(l), Ok(r)) = (compose_fam(left, &cone.legs[0]), compose_fam(right, &cone.legs[1])) else {
                    return false;
                };
                validate_two_cell(&l, &r, cell).is_valid()
            }
            (LimitDiagram::Pullback(..), None) => false,
            (_, cell) => cell.is_none(),
        }
    }

    /// The induced morphism from `cone` into the limit.
    pub fn mediator(&self, cone: &PseudoCone) -> Result<FamMorphism> {
        let c = self.object.category.clone();
        let y = &cone.apex.shape;
        let shape = &self.object.shape;
        let (objects, morphisms): (Vec<ObjId>, Vec<MorId>) = match &self.iso_comma {
            None => {
                let dims: Vec<usize> = self.projections.iter().map(|p| p.codomain.shape.object_count()).collect();
                let mdims: Vec<usize> = self.projections.iter().map(|p| p.codomain.shape.morphism_count()).collect();
                let encode = |t: Vec<usize>, dims: &[usize]| t.iter().zip(dims).fold(0, |acc, (&x, &d)| acc * d + x);
                (
                    y.object_ids()
                        .map(|o| ObjId(encode(cone.legs.iter().map(|l| l.shape_map.obj(o).0).collect(), &dims)))
                        .collect(),
                    y.morphism_ids()
                        .map(|m| MorId(encode(cone.legs.iter().map(|l| l.shape_map.mor(m).0).collect(), &mdims)))
                        .collect(),
                )
            }
            Some(ic) => {
                let cell = cone
                    .cell
                    .as_ref()
                    .ok_or_else(|| Error::Precondition("a pullback cone needs a 2-cell".into()))?;
                let objects: Vec<ObjId> = y
                    .object_ids()
                    .map(|o| {
                        ic.find(cone.legs[0].shape_map.obj(o), cone.legs[1].shape_map.obj(o), cell.at(o))
                            .ok_or_else(|| Error::Precondition("cone cell does not land in the base".into()))
                    })
                    .collect::<Result<_>>()?;
                let morphisms = y
                    .morphism_ids()
                    .map(|m| {
                        let src = objects[y.source(m).0];
                        let pair = (cone.legs[0].shape_map.mor(m), cone.legs[1].shape_map.mor(m));
                        shape
                            .morphism_ids()
                            .find(|&w| shape.source(w) == src && ic.pairs[w.0] == pair)
                            .ok_or_else(|| Error::Precondition("cone is not natural".into()))
                    })
                    .collect::<Result<_>>()?;
                (objects, morphisms)
            }
        };
        let components = y
            .object_ids()
            .map(|o| {
                let target = &self.pointwise[objects[o.0].0];
                let legs: Vec<MorId> = match &self.diagram {
                    LimitDiagram::Pullback(_, right) => {
                        let l0 = cone.legs[0].components.at(o);
                        let l2 = cone.legs[1].components.at(o);
                        let l1 = c.comp(right.components.at(cone.legs[1].shape_map.obj(o)), l2);
                        vec![l0, l1, l2]
                    }
                    _ => cone.legs.iter().map(|l| l.components.at(o)).collect(),
                };
                let competitor = Cone {
                    apex: cone.apex.arrow.obj(o),
                    legs,
                };
                mediating_morphisms(&c, &competitor, target)
                    .first()
                    .copied()
                    .ok_or_else(|| Error::Precondition("cone does not commute pointwise".into()))
            })
            .collect::<Result<_>>()?;
        Ok(FamMorphism {
            domain: cone.apex.clone(),
            codomain: self.object.clone(),
            shape_map: Functor { objects, morphisms },
            components: NatTrans { components },
        })
    }

    /// `projection_i ∘ μ = leg_i` and, for a pullback, the square whiskered by
    /// `μ` is the cone's cell.
    pub fn factors(&self, mu: &FamMorphism, cone: &PseudoCone) -> bool {
        let legs_ok = self.projections.iter().zip(&cone.legs).all(|(p, leg)| {
            compose_fam(p, mu).map(|m| m.same_data(leg)).unwrap_or(false)
        });
        let cell_ok = match (&self.square, &cone.cell) {
            (Some(sq), Some(cell)) => cone
                .apex
                .shape
                .object_ids()
                .all(|o| sq.at(mu.shape_map.obj(o)) == cell.at(o)),
            (None, None) => true,
            _ => false,
        };
        legs_ok && cell_ok
    }

    /// Number of morphisms into the limit through which `cone` factors, by
    /// exhaustive search.
    pub fn count_factorizations(&self, cone: &PseudoCone, budget: &mut Budget) -> Result<usize> {
        Ok(hom_fam(&cone.apex, &self.object, budget)?
            .iter()
            .filter(|mu| self.factors(mu, cone))
            .count())
    }
}
