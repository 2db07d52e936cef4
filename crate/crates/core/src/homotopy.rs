//! Shape invariants of families: `Π∞`, truncations, the `Δ ⊣ π₀` adjunction
//! on 0-truncated families, fundamental groups and basepoint change.
//!
//! Shapes are finite groupoids, so `Π∞` and `Π₁` agree and `τ≤1` is the
//! identity; `τ≤0` is `π₀` seen as a discrete groupoid.

use std::collections::HashSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::category::{FiniteCategory, Functor, MorId, NatTrans, ObjId};
use crate::equivalence::search_equivalence;
use crate::error::{Budget, Error, Result};
use crate::fam::{compose_fam, fam_colimit, hom_fam, validate_fam_morphism, FamDiagram, FamMorphism, FamObject};
use crate::grothendieck::grothendieck_construction;
use crate::group::{FiniteGroup, GroupIso};
use crate::groupoid::{aut_group, pi0, Components, FiniteGroupoid};
use crate::limits::find_terminal;

/// `Π∞(X, F) = X`.
pub fn shape_of(f: &FamObject) -> FiniteGroupoid {
    f.shape.clone()
}

/// `π₀` of the shape.
pub fn tau0(f: &FamObject) -> Components {
    pi0(&f.shape)
}

/// `τ≤0` of the shape: one object per component, named after its first
/// object.
pub fn tau0_groupoid(f: &FamObject) -> FiniteGroupoid {
    let comps = tau0(f);
    let names: Vec<&str> = comps.blocks.iter().map(|b| f.shape.object_name(b[0])).collect();
    FiniteGroupoid::discrete(&names)
}

/// `Δ(I) = ∐_{i ∈ I} σ(*)` for `I = {0, …, size-1}`.
pub fn delta(size: usize, c: &Arc<FiniteCategory>) -> Result<Arc<FamObject>> {
    let top = find_terminal(c).ok_or(Error::NoTerminal)?;
    let names: Vec<String> = (0..size).map(|i| i.to_string()).collect();
    let shape = FiniteGroupoid::discrete(&names);
    let arrow = Functor::constant(&shape, c, top);
    Ok(Arc::new(FamObject {
        shape,
        category: c.clone(),
        arrow,
    }))
}

/// `Δ(h): Δ(I) -> Δ(J)` for a function `h: I -> J`.
pub fn delta_map(h: &[usize], from: &Arc<FamObject>, to: &Arc<FamObject>) -> FamMorphism {
    let c = &from.category;
    FamMorphism {
        domain: from.clone(),
        codomain: to.clone(),
        shape_map: Functor {
            objects: h.iter().map(|&i| ObjId(i)).collect(),
            morphisms: h.iter().map(|&i| to.shape.identity(ObjId(i))).collect(),
        },
        components: NatTrans::identity(&from.shape, c, &from.arrow),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdjunctionReport {
    pub components: usize,
    pub index_size: usize,
    /// `|Hom_Fam(f, Δ(I))|`.
    pub fam_side: usize,
    /// `|Hom_Set(π₀, I)|`.
    pub set_side: usize,
    /// `|I|^|π₀|`.
    pub expected: usize,
    pub bijective: bool,
    pub naturality_checked: usize,
    pub naturality_failures: usize,
}

impl AdjunctionReport {
    pub fn holds(&self) -> bool {
        self.fam_side == self.expected
            && self.set_side == self.expected
            && self.bijective
            && self.naturality_failures == 0
    }
}

/// All functions `{0..domain} -> {0..codomain}` as value vectors.
pub fn all_functions(domain: usize, codomain: usize) -> Vec<Vec<usize>> {
    if codomain == 0 {
        return if domain == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let mut current = vec![0; domain];
    loop {
        out.push(current.clone());
        let mut k = 0;
        loop {
            if k == domain {
                return out;
            }
            current[k] += 1;
            if current[k] < codomain {
                break;
            }
            current[k] = 0;
            k += 1;
        }
    }
}

/// The transpose `π₀(X) -> I` of `m: (X, F) -> Δ(I)`.
fn transpose(m: &FamMorphism, comps: &Components) -> Vec<usize> {
    comps.blocks.iter().map(|b| m.shape_map.obj(b[0]).0).collect()
}

/// Compares `Hom_Fam(f, Δ(I))` with `Hom_Set(π₀(f), I)` and samples
/// naturality in both variables: along endofunctions of `I` and along
/// endomorphisms of `f`.
pub fn adjunction_check(
    f: &Arc<FamObject>,
    index_size: usize,
    samples: usize,
    seed: u64,
    budget: &mut Budget,
) -> Result<AdjunctionReport> {
    if !f.is_zero_truncated() {
        return Err(Error::Precondition("the family is not 0-truncated".into()));
    }
    let target = delta(index_size, &f.category)?;
    let comps = tau0(f);
    let fam_side = hom_fam(f, &target, budget)?;
    let set_side = all_functions(comps.count(), index_size);
    let expected = index_size.pow(comps.count() as u32);

    let images: Vec<Vec<usize>> = fam_side.iter().map(|m| transpose(m, &comps)).collect();
    let distinct: HashSet<&Vec<usize>> = images.iter().collect();
    let set: HashSet<&Vec<usize>> = set_side.iter().collect();
    let bijective = distinct.len() == images.len() && distinct == set;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let endos = if fam_side.is_empty() { Vec::new() } else { hom_fam(f, f, budget)? };
    let mut checked = 0;
    let mut failures = 0;
    for k in 0..samples {
        let Some(i) = (0..fam_side.len()).collect::<Vec<_>>().choose(&mut rng).copied() else {
            break;
        };
        let m = &fam_side[i];
        let ok = if k % 2 == 0 {
            let h: Vec<usize> = (0..index_size).map(|_| rng.gen_range(0..index_size)).collect();
            let moved = compose_fam(&delta_map(&h, &target, &target), m)?;
            let lhs = transpose(&moved, &comps);
            let rhs: Vec<usize> = images[i].iter().map(|&v| h[v]).collect();
            lhs == rhs
        } else {
            let g = endos.choose(&mut rng).expect("identity is an endomorphism");
            let pulled = compose_fam(m, g)?;
            let lhs = transpose(&pulled, &comps);
            let rhs: Vec<usize> = comps
                .blocks
                .iter()
                .map(|b| images[i][comps.block(g.shape_map.obj(b[0]))])
                .collect();
            lhs == rhs
        };
        checked += 1;
        if !ok {
            failures += 1;
        }
    }
    Ok(AdjunctionReport {
        components: comps.count(),
        index_size,
        fam_side: fam_side.len(),
        set_side: set_side.len(),
        expected,
        bijective,
        naturality_checked: checked,
        naturality_failures: failures,
    })
}

/// A family with a basepoint `* -> (X, F)`, where `*` is `σ` of the terminal
/// object.
#[derive(Debug, Clone)]
pub struct PointedFam {
    pub fam: Arc<FamObject>,
    pub basepoint: FamMorphism,
}

impl PointedFam {
    pub fn new(fam: Arc<FamObject>, basepoint: FamMorphism) -> Result<Self> {
        if basepoint.domain.shape.object_count() != 1 || basepoint.codomain != fam {
            return Err(Error::Precondition("basepoint must be a point-shaped map into the family".into()));
        }
        validate_fam_morphism(&basepoint).into_result()?;
        Ok(PointedFam { fam, basepoint })
    }

    /// Points at `x`, using the first global element of `F(x)`.
    pub fn at(fam: &Arc<FamObject>, x: ObjId) -> Result<Self> {
        let c = &fam.category;
        if x.0 >= fam.shape.object_count() {
            return Err(Error::UnknownObject(x.to_string()));
        }
        let top = find_terminal(c).ok_or(Error::NoTerminal)?;
        let fx = fam.arrow.obj(x);
        let element = *c.hom(top, fx).first().ok_or_else(|| {
            Error::Precondition(format!("`{}` has no global element", c.object_name(fx)))
        })?;
        let point = Arc::new(FamObject::sigma(c.clone(), top));
        let basepoint = FamMorphism {
            domain: point,
            codomain: fam.clone(),
            shape_map: Functor {
                objects: vec![x],
                morphisms: vec![fam.shape.identity(x)],
            },
            components: NatTrans {
                components: vec![element],
            },
        };
        PointedFam::new(fam.clone(), basepoint)
    }

    pub fn object(&self) -> ObjId {
        self.basepoint.shape_map.obj(ObjId(0))
    }
}

/// `π₁((X, F), x) = Aut_X(x)`.
pub fn pi1(p: &PointedFam) -> Result<FiniteGroup> {
    aut_group(&p.fam.shape, p.object())
}

/// The connecting morphism used by [`basepoint_change_iso`]: the identity
/// when `x0 = x1`, otherwise the first morphism `x0 -> x1` by name.
pub fn connecting_morphism(g: &FiniteGroupoid, x0: ObjId, x1: ObjId) -> Result<MorId> {
    for x in [x0, x1] {
        if x.0 >= g.object_count() {
            return Err(Error::UnknownObject(x.to_string()));
        }
    }
    if x0 == x1 {
        return Ok(g.identity(x0));
    }
    g.hom(x0, x1)
        .iter()
        .copied()
        .min_by(|a, b| g.morphism_name(*a).cmp(g.morphism_name(*b)))
        .ok_or_else(|| Error::NotConnected {
            from: g.object_name(x0).to_string(),
            to: g.object_name(x1).to_string(),
        })
}

/// `Aut(x0) -> Aut(x1)`, `γ ↦ p∘γ∘p⁻¹` for a given `p: x0 -> x1`.
pub fn basepoint_change_along(g: &FiniteGroupoid, p: MorId) -> Result<GroupIso> {
    let (x0, x1) = (g.source(p), g.target(p));
    let source = aut_group(g, x0)?;
    let target = aut_group(g, x1)?;
    let loops1 = g.hom(x1, x1);
    let p_inv = g.inverse(p);
    let map = g
        .hom(x0, x0)
        .iter()
        .map(|&gamma| {
            let moved = g.comp(p, g.comp(gamma, p_inv));
            loops1.iter().position(|&l| l == moved).expect("conjugate is a loop at x1")
        })
        .collect();
    Ok(GroupIso { source, target, map })
}

pub fn basepoint_change_iso(f: &FamObject, x0: ObjId, x1: ObjId) -> Result<GroupIso> {
    let p = connecting_morphism(&f.shape, x0, x1)?;
    basepoint_change_along(&f.shape, p)
}

#[derive(Debug, Clone, Serialize)]
pub struct ColimitPreservationReport {
    /// `"discrete"` or `"delooping"`.
    pub index_kind: String,
    pub colimit_components: usize,
    pub shapes_components: usize,
    /// An equivalence from `Π₁` of the colimit to the colimit of shapes.
    pub equivalence: Option<Functor>,
}

impl ColimitPreservationReport {
    pub fn holds(&self) -> bool {
        self.equivalence.is_some()
    }
}

/// Compares `Π₁(colim d)` with the colimit of the shapes of `d`, for discrete
/// and one-object indices. Basepoints play no role in the comparison.
pub fn pi1_colimit_preservation_check(
    index: &FiniteGroupoid,
    d: &FamDiagram,
    budget: &mut Budget,
) -> Result<ColimitPreservationReport> {
    let (kind, shapes) = if index.is_discrete() {
        let fibers: Vec<&FiniteGroupoid> = d.objects.iter().map(|o| &o.shape).collect();
        ("discrete", FiniteGroupoid::disjoint_union(&fibers).0)
    } else if index.object_count() == 1 {
        ("delooping", grothendieck_construction(index, &d.shapes())?.total)
    } else {
        return Err(Error::Unsupported(
            "colimit preservation is checked only for discrete and one-object index groupoids".into(),
        ));
    };
    let colimit = fam_colimit(index, d)?;
    let pi1 = shape_of(&colimit.object);
    let equivalence = search_equivalence(&pi1, &shapes, budget)?;
    Ok(ColimitPreservationReport {
        index_kind: kind.into(),
        colimit_components: pi0(&pi1).count(),
        shapes_components: pi0(&shapes).count(),
        equivalence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fam::decompose_connected;
    use crate::group::{find_conjugator, find_isomorphism};

    fn poset_with_top() -> Arc<FiniteCategory> {
        Arc::new(FiniteCategory::poset(&["a", "b", "t"], &[("a", "t"), ("b", "t")]))
    }

    fn family(shape: FiniteGroupoid, c: &Arc<FiniteCategory>, at: ObjId) -> Arc<FamObject> {
        let arrow = Functor::constant(&shape, c, at);
        Arc::new(FamObject::new(shape, c.clone(), arrow).unwrap())
    }

    #[test]
    fn tau0_matches_decomposition() {
        let c = poset_with_top();
        let (shape, _) = FiniteGroupoid::disjoint_union(&[
            &FiniteGroupoid::chaotic(&["p", "q"]),
            &FiniteGroupoid::point(),
            &FiniteGroupoid::delooping(&FiniteGroup::cyclic(2)),
        ]);
        let f = family(shape, &c, ObjId(0));
        assert_eq!(tau0(&f).count(), 3);
        assert_eq!(decompose_connected(&f).unwrap().components.len(), 3);
        assert_eq!(tau0_groupoid(&f).object_count(), 3);
    }

    #[test]
    fn delta_over_a_poset_with_top() {
        let c = poset_with_top();
        let d = delta(3, &c).unwrap();
        assert!(d.shape.is_discrete());
        assert_eq!(d.shape.object_count(), 3);
        assert!(d.shape.object_ids().all(|x| d.arrow.obj(x) == ObjId(2)));
        assert_eq!(delta(0, &c).unwrap().shape.object_count(), 0);
        let missing = Arc::new(FiniteCategory::discrete(&["x", "y"]));
        assert_eq!(delta(1, &missing).unwrap_err(), Error::NoTerminal);
    }

    #[test]
    fn adjunction_two_components_three_indices() {
        let c = poset_with_top();
        let f = family(FiniteGroupoid::discrete(&["p", "q"]), &c, ObjId(0));
        let r = adjunction_check(&f, 3, 20, 7, &mut Budget::default()).unwrap();
        assert_eq!((r.fam_side, r.set_side), (9, 9));
        assert!(r.holds());
    }

    #[test]
    fn adjunction_degenerate_cases() {
        let c = poset_with_top();
        let empty = Arc::new(FamObject::empty(c.clone()));
        let r = adjunction_check(&empty, 2, 5, 0, &mut Budget::default()).unwrap();
        assert_eq!((r.fam_side, r.set_side), (1, 1));
        let f = family(FiniteGroupoid::chaotic(&["p", "q"]), &c, ObjId(1));
        let r = adjunction_check(&f, 1, 5, 0, &mut Budget::default()).unwrap();
        assert_eq!((r.fam_side, r.set_side), (1, 1));
        let bz2 = family(FiniteGroupoid::delooping(&FiniteGroup::cyclic(2)), &c, ObjId(0));
        assert!(matches!(
            adjunction_check(&bz2, 1, 1, 0, &mut Budget::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn pi1_of_small_shapes() {
        let c = poset_with_top();
        let point = family(FiniteGroupoid::point(), &c, ObjId(2));
        assert!(pi1(&PointedFam::at(&point, ObjId(0)).unwrap()).unwrap().is_trivial());
        let bz2 = family(FiniteGroupoid::delooping(&FiniteGroup::cyclic(2)), &c, ObjId(2));
        assert_eq!(pi1(&PointedFam::at(&bz2, ObjId(0)).unwrap()).unwrap().order(), 2);
        // a has no global element in this poset
        let low = family(FiniteGroupoid::point(), &c, ObjId(0));
        assert!(PointedFam::at(&low, ObjId(0)).is_err());
    }

    #[test]
    fn basepoint_change_on_thickened_z2() {
        let c = poset_with_top();
        let shape = FiniteGroupoid::thickened(&FiniteGroup::cyclic(2), &["x", "y"]);
        let f = family(shape, &c, ObjId(2));
        let same = basepoint_change_iso(&f, ObjId(0), ObjId(0)).unwrap();
        assert_eq!(same.map, vec![0, 1]);
        let iso = basepoint_change_iso(&f, ObjId(0), ObjId(1)).unwrap();
        assert!(iso.is_valid());
        assert_eq!(iso.source.order(), 2);
    }

    #[test]
    fn basepoint_change_needs_connectedness() {
        let c = poset_with_top();
        let f = family(FiniteGroupoid::discrete(&["x", "y"]), &c, ObjId(2));
        assert!(matches!(
            basepoint_change_iso(&f, ObjId(0), ObjId(1)),
            Err(Error::NotConnected { .. })
        ));
    }

    #[test]
    fn path_choices_differ_by_conjugation() {
        let shape = FiniteGroupoid::thickened(&FiniteGroup::symmetric3(), &["x", "y", "z"]);
        let x = ObjId(0);
        let z = ObjId(2);
        let direct = basepoint_change_along(&shape, shape.hom(x, z)[0]).unwrap();
        for &p in shape.hom(x, z) {
            let other = basepoint_change_along(&shape, p).unwrap();
            assert!(other.is_valid());
            assert!(find_conjugator(&direct, &other).is_some());
        }
        // composing along x -> y -> z
        let y = ObjId(1);
        let two_step = shape.comp(shape.hom(y, z)[1], shape.hom(x, y)[2]);
        let via = basepoint_change_along(&shape, two_step).unwrap();
        assert!(find_conjugator(&direct, &via).is_some());
        assert!(find_isomorphism(&direct.source, &via.target).found().is_some());
    }

    #[test]
    fn colimit_preservation_on_swap_action() {
        let c = poset_with_top();
        let f = family(FiniteGroupoid::discrete(&["p", "q"]), &c, ObjId(2));
        let index = FiniteGroupoid::delooping(&FiniteGroup::cyclic(2));
        let swap = FamMorphism {
            domain: f.clone(),
            codomain: f.clone(),
            shape_map: Functor {
                objects: vec![ObjId(1), ObjId(0)],
                morphisms: vec![MorId(1), MorId(0)],
            },
            components: NatTrans::identity(&f.shape, &c, &f.arrow),
        };
        let d = FamDiagram {
            category: c.clone(),
            objects: vec![f.clone()],
            morphisms: vec![FamMorphism::identity(&f), swap],
        };
        let r = pi1_colimit_preservation_check(&index, &d, &mut Budget::default()).unwrap();
        assert!(r.holds());
        assert_eq!((r.colimit_components, r.shapes_components), (1, 1));
    }

    #[test]
    fn colimit_preservation_rejects_other_indices() {
        let c = poset_with_top();
        let f = family(FiniteGroupoid::point(), &c, ObjId(2));
        let index = FiniteGroupoid::chaotic(&["i", "j"]);
        let d = FamDiagram {
            category: c.clone(),
            objects: vec![f.clone(), f.clone()],
            morphisms: vec![FamMorphism::identity(&f); 4],
        };
        assert!(matches!(
            pi1_colimit_preservation_check(&index, &d, &mut Budget::default()),
            Err(Error::Unsupported(_))
        ));
    }
}
