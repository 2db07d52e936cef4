//! Equivalences of finite groupoids.

use std::ops::ControlFlow;

use crate::category::{for_each_functor, validate_functor, Functor, MorId, ObjId};
use crate::error::{Budget, Error, Result};
use crate::group::{find_isomorphism, IsoSearch};
use crate::groupoid::{aut_group, pi0, FiniteGroupoid};

/// Bijective on every hom-set.
pub fn is_fully_faithful(x: &FiniteGroupoid, y: &FiniteGroupoid, f: &Functor) -> bool {
    x.object_ids().all(|a| {
        x.object_ids().all(|b| {
            let src = x.hom(a, b);
            let tgt = y.hom(f.obj(a), f.obj(b));
            if src.len() != tgt.len() {
                return false;
            }
            let mut images: Vec<MorId> = src.iter().map(|&m| f.mor(m)).collect();
            images.sort_unstable();
            images.dedup();
            images.len() == tgt.len()
        })
    })
}

/// Every object of `y` is isomorphic to an image; for groupoids this means
/// every component of `y` is hit.
pub fn is_essentially_surjective(x: &FiniteGroupoid, y: &FiniteGroupoid, f: &Functor) -> bool {
    let py = pi0(y);
    let mut hit = vec![false; py.count()];
    for a in x.object_ids() {
        hit[py.block(f.obj(a))] = true;
    }
    hit.into_iter().all(|h| h)
}

pub fn is_equivalence(x: &FiniteGroupoid, y: &FiniteGroupoid, f: &Functor) -> bool {
    validate_functor(x, y, f).is_valid() && is_fully_faithful(x, y, f) && is_essentially_surjective(x, y, f)
}

/// Builds an equivalence `x -> y` from a matching of components with
/// isomorphic automorphism groups, or `None` if the groupoids are not
/// equivalent. Automorphism groups beyond the isomorphism search cap make the
/// answer indeterminate.
pub fn find_equivalence(x: &FiniteGroupoid, y: &FiniteGroupoid) -> Result<Option<Functor>> {
    let (px, py) = (pi0(x), pi0(y));
    if px.count() != py.count() {
        return Ok(None);
    }
    let mut used = vec![false; py.count()];
    let mut f = Functor {
        objects: vec![ObjId(0); x.object_count()],
        morphisms: vec![MorId(0); x.morphism_count()],
    };
    for block in &px.blocks {
        let rep = block[0];
        let gx = aut_group(x, rep)?;
        let mut matched = None;
        for (k, yblock) in py.blocks.iter().enumerate() {
            if used[k] {
                continue;
            }
            let gy = aut_group(y, yblock[0])?;
            match find_isomorphism(&gx, &gy) {
                IsoSearch::Found(iso) => {
                    matched = Some((k, iso));
                    break;
                }
                IsoSearch::NotIsomorphic => {}
                IsoSearch::Indeterminate => {
                    return Err(Error::GroupTooLarge {
                        order: gx.order().max(gy.order()),
                    })
                }
            }
        }
        let Some((k, iso)) = matched else {
            return Ok(None);
        };
        used[k] = true;
        let yrep = py.blocks[k][0];
        let (xloops, yloops) = (x.hom(rep, rep), y.hom(yrep, yrep));
        for &a in block {
            f.objects[a.0] = yrep;
        }
        for m in x.morphism_ids().filter(|&m| px.block(x.source(m)) == px.block(rep)) {
            // transport m back to rep along the chosen paths
            let to_src = x.hom(rep, x.source(m))[0];
            let to_tgt = x.hom(rep, x.target(m))[0];
            let looped = x.comp(x.inverse(to_tgt), x.comp(m, to_src));
            let i = xloops.iter().position(|&l| l == looped).expect("loop at rep");
            f.morphisms[m.0] = yloops[iso.apply(i)];
        }
    }
    Ok(Some(f))
}

/// Exhaustive search over all functors `x -> y` for an equivalence.
pub fn search_equivalence(x: &FiniteGroupoid, y: &FiniteGroupoid, budget: &mut Budget) -> Result<Option<Functor>> {
    let mut found = None;
    for_each_functor(x, y, budget, None, &mut |f| {
        if is_fully_faithful(x, y, f) && is_essentially_surjective(x, y, f) {
            found = Some(f.clone());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    #[test]
    fn chaotic_is_equivalent_to_point() {
        let c = FiniteGroupoid::chaotic(&["p", "q", "r"]);
        let pt = FiniteGroupoid::point();
        let f = find_equivalence(&c, &pt).unwrap().unwrap();
        assert!(is_equivalence(&c, &pt, &f));
        let g = find_equivalence(&pt, &c).unwrap().unwrap();
        assert!(is_equivalence(&pt, &c, &g));
    }

    #[test]
    fn thickened_is_equivalent_to_delooping() {
        let s3 = FiniteGroup::symmetric3();
        let t = FiniteGroupoid::thickened(&s3, &["x", "y"]);
        let b = FiniteGroupoid::delooping(&s3);
        let f = find_equivalence(&t, &b).unwrap().unwrap();
        assert!(is_equivalence(&t, &b, &f));
    }

    #[test]
    fn different_groups_are_not_equivalent() {
        let a = FiniteGroupoid::delooping(&FiniteGroup::cyclic(4));
        let b = FiniteGroupoid::delooping(&FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)));
        assert_eq!(find_equivalence(&a, &b).unwrap(), None);
        assert_eq!(search_equivalence(&a, &b, &mut Budget::default()).unwrap(), None);
    }

    #[test]
    fn constructive_and_exhaustive_agree() {
        let z2 = FiniteGroup::cyclic(2);
        let left = FiniteGroupoid::disjoint_union(&[
            &FiniteGroupoid::thickened(&z2, &["a", "b"]),
            &FiniteGroupoid::point(),
        ])
        .0;
        let right = FiniteGroupoid::disjoint_union(&[&FiniteGroupoid::point(), &FiniteGroupoid::delooping(&z2)]).0;
        assert!(find_equivalence(&left, &right).unwrap().is_some());
        let f = search_equivalence(&left, &right, &mut Budget::default()).unwrap().unwrap();
        assert!(is_equivalence(&left, &right, &f));
    }
}
