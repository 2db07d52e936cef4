//! Seeded generators for small groupoids, functors and families, plus the
//! fixture categories shared by tests and the command-line tool.

use std::ops::ControlFlow;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::RngCore;

use crate::category::{for_each_functor, FiniteCategory, Functor};
use crate::error::{Budget, Result};
use crate::fam::{for_each_fam_morphism, FamMorphism, FamObject};
use crate::group::FiniteGroup;
use crate::groupoid::FiniteGroupoid;

/// The poset `a ≤ b, c ≤ d`.
pub fn diamond() -> FiniteCategory {
    FiniteCategory::poset(&["a", "b", "c", "d"], &[("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")])
}

/// `B(Z/2)` as a one-object category.
pub fn bz2_category() -> FiniteCategory {
    FiniteGroupoid::delooping(&FiniteGroup::cyclic(2)).category().clone()
}

/// The walking arrow `0 -> 1`.
pub fn walking_arrow() -> FiniteCategory {
    FiniteCategory::poset(&["0", "1"], &[("0", "1")])
}

/// Diamond, `B(Z/2)` and the terminal category, by name.
pub fn fixture_categories() -> Vec<(&'static str, Arc<FiniteCategory>)> {
    vec![
        ("diamond", Arc::new(diamond())),
        ("bz2", Arc::new(bz2_category())),
        ("terminal", Arc::new(FiniteCategory::terminal())),
    ]
}

/// A connected groupoid with at most `max_objects` objects.
pub fn random_connected_groupoid(rng: &mut dyn RngCore, max_objects: usize) -> FiniteGroupoid {
    let max_objects = max_objects.max(1);
    let groups = [FiniteGroup::trivial(), FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)];
    let g = groups.choose(rng).expect("nonempty");
    let n = rng.gen_range(1..=max_objects.min(3));
    if n == 1 {
        return FiniteGroupoid::delooping(g);
    }
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    FiniteGroupoid::thickened(g, &names)
}

/// A disjoint union of random connected pieces with at most `max_objects`
/// objects in total. May be empty when `allow_empty` is set.
pub fn random_groupoid(rng: &mut dyn RngCore, max_objects: usize, allow_empty: bool) -> FiniteGroupoid {
    let mut parts = Vec::new();
    let mut left = max_objects;
    let pieces = rng.gen_range(usize::from(!allow_empty)..=3);
    for _ in 0..pieces {
        if left == 0 {
            break;
        }
        let p = random_connected_groupoid(rng, left);
        left -= p.object_count();
        parts.push(p);
    }
    let refs: Vec<&FiniteGroupoid> = parts.iter().collect();
    FiniteGroupoid::disjoint_union(&refs).0
}

/// A functor picked by a shuffled search, or `None` when there is none.
pub fn random_functor(
    src: &FiniteCategory,
    tgt: &FiniteCategory,
    rng: &mut dyn RngCore,
    budget: &mut Budget,
) -> Result<Option<Functor>> {
    let mut found = None;
    for_each_functor(src, tgt, budget, Some(rng), &mut |f| {
        found = Some(f.clone());
        ControlFlow::Break(())
    })?;
    Ok(found)
}

/// A family with a random shape of at most `max_objects` objects and a random
/// arrow.
pub fn random_family(
    category: &Arc<FiniteCategory>,
    rng: &mut dyn RngCore,
    max_objects: usize,
    allow_empty: bool,
    budget: &mut Budget,
) -> Result<Arc<FamObject>> {
    let shape = random_groupoid(rng, max_objects, allow_empty);
    let arrow = random_functor(&shape, category, rng, budget)?
        .expect("constant functors exist into a nonempty category");
    Ok(Arc::new(FamObject {
        shape,
        category: category.clone(),
        arrow,
    }))
}

/// A 0-truncated family: a discrete shape with `components` objects.
pub fn random_discrete_family(
    category: &Arc<FiniteCategory>,
    rng: &mut dyn RngCore,
    components: usize,
    budget: &mut Budget,
) -> Result<Arc<FamObject>> {
    let names: Vec<String> = (0..components).map(|i| format!("p{i}")).collect();
    let shape = FiniteGroupoid::discrete(&names);
    let arrow = random_functor(&shape, category, rng, budget)?.expect("nonempty category");
    Ok(Arc::new(FamObject {
        shape,
        category: category.clone(),
        arrow,
    }))
}

/// A morphism `a -> b` picked by a shuffled search.
pub fn random_fam_morphism(
    a: &Arc<FamObject>,
    b: &Arc<FamObject>,
    rng: &mut dyn RngCore,
    budget: &mut Budget,
) -> Result<Option<FamMorphism>> {
    let mut found = None;
    for_each_fam_morphism(a, b, budget, Some(rng), &mut |m| {
        found = Some(m);
        ControlFlow::Break(())
    })?;
    Ok(found)
}
