//! Checking that `∐: Fam(C)/c₁ × Fam(C)/c₂ -> Fam(C)/(c₁ ⊔ c₂)` is an
//! equivalence, with slice objects drawn from a finite universe of domains.

use std::sync::Arc;

use serde::Serialize;

use crate::category::{Functor, NatTrans, ObjId};
use crate::error::{Budget, Error, Result};
use crate::fam::colimit::fam_coproduct;
use crate::fam::{compose_fam, hom_fam, same_category, FamMorphism, FamObject};
use crate::groupoid::sum_functor;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtensivityReport {
    /// Slice objects over `c₁`, `c₂` and `c₁ ⊔ c₂`.
    pub slice_sizes: [usize; 3],
    pub essentially_surjective: bool,
    pub fully_faithful: bool,
    /// Human-readable description of each failed instance.
    pub failures: Vec<String>,
}

impl ExtensivityReport {
    pub fn is_equivalence(&self) -> bool {
        self.essentially_surjective && self.fully_faithful
    }
}

fn slice(universe: &[Arc<FamObject>], over: &Arc<FamObject>, budget: &mut Budget) -> Result<Vec<FamMorphism>> {
    let mut out = Vec::new();
    for e in universe {
        out.extend(hom_fam(e, over, budget)?);
    }
    Ok(out)
}

/// Morphisms `h` with `n ∘ h = m`.
fn slice_hom(m: &FamMorphism, n: &FamMorphism, budget: &mut Budget) -> Result<Vec<FamMorphism>> {
    Ok(hom_fam(&m.domain, &n.domain, budget)?
        .into_iter()
        .filter(|h| compose_fam(n, h).map(|t| t.same_data(m)).unwrap_or(false))
        .collect())
}

/// `f ⊔ g: a ⊔ b -> a' ⊔ b'`, with the given coproduct objects as endpoints.
fn sum(f: &FamMorphism, g: &FamMorphism, domain: &Arc<FamObject>, codomain: &Arc<FamObject>) -> FamMorphism {
    FamMorphism {
        domain: domain.clone(),
        codomain: codomain.clone(),
        shape_map: sum_functor(
            &[&f.codomain.shape, &g.codomain.shape],
            &[&f.domain.shape, &g.domain.shape],
            &[&f.shape_map, &g.shape_map],
        ),
        components: NatTrans {
            components: f
                .components
                .components
                .iter()
                .chain(&g.components.components)
                .copied()
                .collect(),
        },
    }
}

/// Restricts `m: e -> c₁ ⊔ c₂` to the part of `e` lying over summand `side`.
fn split(m: &FamMorphism, side: usize, summand: &Arc<FamObject>, first_size: (usize, usize)) -> FamMorphism {
    let (obj_off, mor_off) = if side == 0 { (0, 0) } else { first_size };
    let over = |o: ObjId| (m.shape_map.obj(o).0 >= first_size.0) == (side == 1);
    let objects: Vec<ObjId> = m.domain.shape.object_ids().filter(|&o| over(o)).collect();
    let (part, inc) = m.domain.restrict(&objects);
    let shape_map = Functor {
        objects: objects.iter().map(|&o| ObjId(m.shape_map.obj(o).0 - obj_off)).collect(),
        morphisms: inc
            .shape_map
            .morphisms
            .iter()
            .map(|&w| crate::MorId(m.shape_map.mor(w).0 - mor_off))
            .collect(),
    };
    FamMorphism {
        domain: part,
        codomain: summand.clone(),
        shape_map,
        components: NatTrans {
            components: objects.iter().map(|&o| m.components.at(o)).collect(),
        },
    }
}

pub fn extensivity_check(
    c1: &Arc<FamObject>,
    c2: &Arc<FamObject>,
    universe: &[Arc<FamObject>],
    budget: &mut Budget,
) -> Result<ExtensivityReport> {
    if !same_category(&c1.category, &c2.category) || universe.iter().any(|e| !same_category(&e.category, &c1.category)) {
        return Err(Error::TargetMismatch);
    }
    let category = c1.category.clone();
    let whole = fam_coproduct(&category, &[c1.clone(), c2.clone()])?.object;
    let first_size = (c1.shape.object_count(), c1.shape.morphism_count());
    let (s1, s2, s) = (
        slice(universe, c1, budget)?,
        slice(universe, c2, budget)?,
        slice(universe, &whole, budget)?,
    );
    let mut failures = Vec::new();

    // essential surjectivity: every m over the coproduct is isomorphic to the
    // sum of its two restrictions
    let mut essentially_surjective = true;
    for (k, m) in s.iter().enumerate() {
        let m1 = split(m, 0, c1, first_size);
        let m2 = split(m, 1, c2, first_size);
        let parts = fam_coproduct(&category, &[m1.domain.clone(), m2.domain.clone()])?.object;
        let summed = sum(&m1, &m2, &parts, &whole);
        let iso = hom_fam(&parts, &m.domain, budget)?.into_iter().any(|h| {
            h.is_isomorphism() && compose_fam(m, &h).map(|t| t.same_data(&summed)).unwrap_or(false)
        });
        if !iso {
            essentially_surjective = false;
            failures.push(format!("slice object {k} over the coproduct is not a sum"));
        }
    }

    // full faithfulness: hom-sets of sums are products of hom-sets
    let mut fully_faithful = true;
    let sums: Vec<(usize, usize, FamMorphism)> = {
        let mut v = Vec::new();
        for (i, m1) in s1.iter().enumerate() {
            for (j, m2) in s2.iter().enumerate() {
                let dom = fam_coproduct(&category, &[m1.domain.clone(), m2.domain.clone()])?.object;
                v.push((i, j, sum(m1, m2, &dom, &whole)));
            }
        }
        v
    };
    let mut homs1 = vec![vec![Vec::new(); s1.len()]; s1.len()];
    for (i, m) in s1.iter().enumerate() {
        for (k, n) in s1.iter().enumerate() {
            homs1[i][k] = slice_hom(m, n, budget)?;
        }
    }
    let mut homs2 = vec![vec![Vec::new(); s2.len()]; s2.len()];
    for (j, m) in s2.iter().enumerate() {
        for (l, n) in s2.iter().enumerate() {
            homs2[j][l] = slice_hom(m, n, budget)?;
        }
    }
    for (i, j, m) in &sums {
        for (k, l, n) in &sums {
            let target = slice_hom(m, n, budget)?;
            let expected = homs1[*i][*k].len() * homs2[*j][*l].len();
            let mut images: Vec<FamMorphism> = Vec::with_capacity(expected);
            for h1 in &homs1[*i][*k] {
                for h2 in &homs2[*j][*l] {
                    images.push(sum(h1, h2, &m.domain, &n.domain));
                }
            }
            let all_hit = images.iter().all(|h| target.iter().any(|t| t.same_data(h)));
            let distinct = images
                .iter()
                .enumerate()
                .all(|(a, h)| images[..a].iter().all(|g| !g.same_data(h)));
            if target.len() != expected || !all_hit || !distinct {
                fully_faithful = false;
                failures.push(format!(
                    "hom from sum ({i},{j}) to sum ({k},{l}): expected {expected}, found {}",
                    target.len()
                ));
            }
        }
    }
    Ok(ExtensivityReport {
        slice_sizes: [s1.len(), s2.len(), s.len()],
        essentially_surjective,
        fully_faithful,
        failures,
    })
}
