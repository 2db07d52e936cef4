//! Homotopy pullbacks of groupoids, computed as iso-comma groupoids.

use std::collections::HashMap;

use crate::category::{validate_functor, FiniteCategory, Functor, MorId, NatTrans, ObjId};
use crate::error::{Error, Result};
use crate::groupoid::FiniteGroupoid;

/// The iso-comma groupoid of `f: A -> C` and `g: B -> C`.
///
/// Objects are triples `(a, b, φ)` with `φ: f(a) -> g(b)` in `C`; morphisms
/// `(a, b, φ) -> (a', b', φ')` are pairs `(α, β)` with `g(β)∘φ = φ'∘f(α)`.
#[derive(Debug, Clone)]
pub struct IsoComma {
    pub groupoid: FiniteGroupoid,
    pub triples: Vec<(ObjId, ObjId, MorId)>,
    pub pairs: Vec<(MorId, MorId)>,
    pub to_left: Functor,
    pub to_right: Functor,
}

impl IsoComma {
    /// The tautological transformation `f∘to_left ⇒ g∘to_right`, whose
    /// component at `(a, b, φ)` is `φ`.
    pub fn square(&self) -> NatTrans {
        NatTrans {
            components: self.triples.iter().map(|&(_, _, phi)| phi).collect(),
        }
    }

    pub fn find(&self, a: ObjId, b: ObjId, phi: MorId) -> Option<ObjId> {
        self.triples
            .iter()
            .position(|&t| t == (a, b, phi))
            .map(ObjId)
    }
}

pub fn iso_comma_pullback(
    a: &FiniteGroupoid,
    b: &FiniteGroupoid,
    c: &FiniteCategory,
    f: &Functor,
    g: &Functor,
) -> Result<IsoComma> {
    let mut report = validate_functor(a, c, f);
    report.extend(validate_functor(b, c, g));
    if !report.is_valid() {
        return Err(Error::Invalid(report.normalized()));
    }
    let mut triples = Vec::new();
    for x in a.object_ids() {
        for y in b.object_ids() {
            for &phi in c.hom(f.obj(x), g.obj(y)) {
                triples.push((x, y, phi));
            }
        }
    }
    let index: HashMap<(ObjId, ObjId, MorId), usize> =
        triples.iter().enumerate().map(|(i, &t)| (t, i)).collect();

    let mut pairs = Vec::new();
    let mut ends = Vec::new();
    let mut at: HashMap<(usize, MorId, MorId), MorId> = HashMap::new();
    for (i, &(x, y, phi)) in triples.iter().enumerate() {
        for alpha in a.morphism_ids().filter(|&m| a.source(m) == x) {
            for beta in b.morphism_ids().filter(|&m| b.source(m) == y) {
                // φ' is forced: g(β)∘φ∘f(α)⁻¹
                let fa_inv = f.mor(a.inverse(alpha));
                let phi2 = c.comp(c.comp(g.mor(beta), phi), fa_inv);
                let j = index[&(a.target(alpha), b.target(beta), phi2)];
                at.insert((i, alpha, beta), MorId(pairs.len()));
                pairs.push((alpha, beta));
                ends.push((i, j));
            }
        }
    }
    let objects: Vec<String> = triples
        .iter()
        .map(|&(x, y, phi)| {
            format!(
                "({},{},{})",
                a.object_name(x),
                b.object_name(y),
                c.morphism_name(phi)
            )
        })
        .collect();
    let morphisms = pairs
        .iter()
        .zip(&ends)
        .map(|(&(alpha, beta), &(i, j))| {
            (
                format!(
                    "({},{})@{}",
                    a.morphism_name(alpha),
                    b.morphism_name(beta),
                    objects[i]
                ),
                ObjId(i),
                ObjId(j),
            )
        })
        .collect();
    let identities = triples
        .iter()
        .enumerate()
        .map(|(i, &(x, y, _))| at[&(i, a.identity(x), b.identity(y))])
        .collect();
    let cat = FiniteCategory::from_parts(objects, morphisms, identities, |second, first| {
        let (i, _) = ends[first.0];
        let (a1, b1) = pairs[first.0];
        let (a2, b2) = pairs[second.0];
        at.get(&(i, a.compose(a2, a1)?, b.compose(b2, b1)?)).copied()
    });
    let inverses = pairs
        .iter()
        .zip(&ends)
        .map(|(&(alpha, beta), &(_, j))| at[&(j, a.inverse(alpha), b.inverse(beta))])
        .collect();
    let to_left = Functor {
        objects: triples.iter().map(|t| t.0).collect(),
        morphisms: pairs.iter().map(|p| p.0).collect(),
    };
    let to_right = Functor {
        objects: triples.iter().map(|t| t.1).collect(),
        morphisms: pairs.iter().map(|p| p.1).collect(),
    };
    Ok(IsoComma {
        groupoid: FiniteGroupoid::new(cat, inverses),
        triples,
        pairs,
        to_left,
        to_right,
    })
}
