//! Grothendieck construction of a groupoid-valued diagram over a groupoid.
//!
//! For `d: K -> Grpd`, the total groupoid has objects `(j, x)` with `x` in
//! `d(j)` and morphisms `(u, v): (j, x) -> (j', x')` where `u: j -> j'` and
//! `v: d(u)(x) -> x'`. This is the colimit of `d` in groupoids.

use std::collections::HashMap;

use crate::category::{validate_functor, FiniteCategory, Functor, MorId, ObjId};
use crate::error::{Error, Result};
use crate::groupoid::FiniteGroupoid;

/// A strict functor from an index groupoid into finite groupoids.
#[derive(Debug, Clone)]
pub struct GroupoidDiagram {
    /// One groupoid per index object.
    pub fibers: Vec<FiniteGroupoid>,
    /// One functor `fibers[source(u)] -> fibers[target(u)]` per index morphism `u`.
    pub actions: Vec<Functor>,
}

impl GroupoidDiagram {
    /// Identity on identities, and `d(v∘u) = d(v)∘d(u)` on the nose.
    pub fn check_functorial(&self, index: &FiniteGroupoid) -> Result<()> {
        if self.fibers.len() != index.object_count() || self.actions.len() != index.morphism_count() {
            return Err(Error::NotFunctorial(
                "diagram size does not match the index groupoid".into(),
            ));
        }
        for u in index.morphism_ids() {
            let src = &self.fibers[index.source(u).0];
            let tgt = &self.fibers[index.target(u).0];
            let report = validate_functor(src, tgt, &self.actions[u.0]);
            if !report.is_valid() {
                return Err(Error::NotFunctorial(format!(
                    "action of `{}` is not a functor:\n{report}",
                    index.morphism_name(u)
                )));
            }
        }
        for j in index.object_ids() {
            if self.actions[index.identity(j).0] != Functor::identity(&self.fibers[j.0]) {
                return Err(Error::NotFunctorial(format!(
                    "identity of `{}` does not act as the identity",
                    index.object_name(j)
                )));
            }
        }
        for v in index.morphism_ids() {
            for u in index.morphism_ids() {
                if let Some(vu) = index.compose(v, u) {
                    if self.actions[vu.0] != self.actions[v.0].compose(&self.actions[u.0]) {
                        return Err(Error::NotFunctorial(format!(
                            "action of `{}` ∘ `{}` differs from the composite of the actions",
                            index.morphism_name(v),
                            index.morphism_name(u)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct GrothendieckConstruction {
    pub total: FiniteGroupoid,
    /// `(j, x)` per total object.
    pub objects: Vec<(ObjId, ObjId)>,
    /// `(u, v)` per total morphism.
    pub morphisms: Vec<(MorId, MorId)>,
    /// Fiber inclusions `x ↦ (j, x)`, `v ↦ (id_j, v)`.
    pub inclusions: Vec<Functor>,
}

impl GrothendieckConstruction {
    pub fn object(&self, j: ObjId, x: ObjId) -> ObjId {
        ObjId(
            self.objects
                .iter()
                .position(|&p| p == (j, x))
                .expect("object of the construction"),
        )
    }

    pub fn morphism(&self, source: ObjId, u: MorId, v: MorId) -> MorId {
        MorId(
            self.morphisms
                .iter()
                .enumerate()
                .position(|(i, &p)| p == (u, v) && self.total.source(MorId(i)) == source)
                .expect("morphism of the construction"),
        )
    }
}

pub fn grothendieck_construction(index: &FiniteGroupoid, d: &GroupoidDiagram) -> Result<GrothendieckConstruction> {
    d.check_functorial(index)?;
    let mut objects = Vec::new();
    for j in index.object_ids() {
        for x in d.fibers[j.0].object_ids() {
            objects.push((j, x));
        }
    }
    let obj_index: HashMap<(ObjId, ObjId), usize> =
        objects.iter().enumerate().map(|(i, &p)| (p, i)).collect();

    let mut morphisms = Vec::new();
    let mut ends = Vec::new();
    let mut at: HashMap<(usize, MorId, MorId), MorId> = HashMap::new();
    for (i, &(j, x)) in objects.iter().enumerate() {
        for u in index.morphism_ids().filter(|&u| index.source(u) == j) {
            let j2 = index.target(u);
            let fiber = &d.fibers[j2.0];
            let moved = d.actions[u.0].obj(x);
            for v in fiber.morphism_ids().filter(|&v| fiber.source(v) == moved) {
                let k = obj_index[&(j2, fiber.target(v))];
                at.insert((i, u, v), MorId(morphisms.len()));
                morphisms.push((u, v));
                ends.push((i, k));
            }
        }
    }
    let names: Vec<String> = objects
        .iter()
        .map(|&(j, x)| format!("({},{})", index.object_name(j), d.fibers[j.0].object_name(x)))
        .collect();
    let mor_names = morphisms
        .iter()
        .zip(&ends)
        .map(|(&(u, v), &(i, k))| {
            let fiber = &d.fibers[index.target(u).0];
            (
                format!(
                    "({},{})@{}",
                    index.morphism_name(u),
                    fiber.morphism_name(v),
                    names[i]
                ),
                ObjId(i),
                ObjId(k),
            )
        })
        .collect();
    let identities = objects
        .iter()
        .enumerate()
        .map(|(i, &(j, x))| at[&(i, index.identity(j), d.fibers[j.0].identity(x))])
        .collect();
    let cat = FiniteCategory::from_parts(names, mor_names, identities, |second, first| {
        // (u', v') ∘ (u, v) = (u'∘u, v' ∘ d(u')(v))
        let (i, _) = ends[first.0];
        let (u, v) = morphisms[first.0];
        let (u2, v2) = morphisms[second.0];
        let fiber = &d.fibers[index.target(u2).0];
        let uu = index.compose(u2, u)?;
        let vv = fiber.compose(v2, d.actions[u2.0].mor(v))?;
        at.get(&(i, uu, vv)).copied()
    });
    let inverses = morphisms
        .iter()
        .zip(&ends)
        .map(|(&(u, v), &(_, k))| {
            // (u, v)⁻¹ = (u⁻¹, d(u⁻¹)(v⁻¹))
            let uinv = index.inverse(u);
            let fiber = &d.fibers[index.target(u).0];
            at[&(k, uinv, d.actions[uinv.0].mor(fiber.inverse(v)))]
        })
        .collect();
    let total = FiniteGroupoid::new(cat, inverses);
    let inclusions = index
        .object_ids()
        .map(|j| {
            let fiber = &d.fibers[j.0];
            let id = index.identity(j);
            Functor {
                objects: fiber.object_ids().map(|x| ObjId(obj_index[&(j, x)])).collect(),
                morphisms: fiber
                    .morphism_ids()
                    .map(|v| at[&(obj_index[&(j, fiber.source(v))], id, v)])
                    .collect(),
            }
        })
        .collect();
    Ok(GrothendieckConstruction {
        total,
        objects,
        morphisms,
        inclusions,
    })
}
