//! Terminal objects and limits inside a finite category, found by exhaustive
//! cone enumeration.

use serde::Serialize;

use crate::category::{FiniteCategory, MorId, ObjId};
use crate::error::{Budget, Result};

/// A finite diagram inside a category: nodes labelled by objects, arrows by
/// morphisms between the node labels.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Diagram {
    pub nodes: Vec<ObjId>,
    pub arrows: Vec<DiagramArrow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiagramArrow {
    pub from: usize,
    pub to: usize,
    pub morphism: MorId,
}

impl Diagram {
    pub fn discrete(nodes: Vec<ObjId>) -> Self {
        Diagram {
            nodes,
            arrows: Vec::new(),
        }
    }

    /// `left -> apex <- right` as nodes 0, 1, 2.
    pub fn cospan(c: &FiniteCategory, left: MorId, right: MorId) -> Self {
        debug_assert_eq!(c.target(left), c.target(right));
        Diagram {
            nodes: vec![c.source(left), c.target(left), c.source(right)],
            arrows: vec![
                DiagramArrow {
                    from: 0,
                    to: 1,
                    morphism: left,
                },
                DiagramArrow {
                    from: 2,
                    to: 1,
                    morphism: right,
                },
            ],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cone {
    pub apex: ObjId,
    pub legs: Vec<MorId>,
}

impl Cone {
    pub fn commutes(&self, c: &FiniteCategory, d: &Diagram) -> bool {
        d.arrows
            .iter()
            .all(|a| c.compose(a.morphism, self.legs[a.from]) == Some(self.legs[a.to]))
    }
}

/// Morphisms `u: cone.apex -> limit.apex` with `limit.legs[i] ∘ u = cone.legs[i]`.
pub fn mediating_morphisms(c: &FiniteCategory, cone: &Cone, limit: &Cone) -> Vec<MorId> {
    c.hom(cone.apex, limit.apex)
        .iter()
        .copied()
        .filter(|&u| {
            limit
                .legs
                .iter()
                .zip(&cone.legs)
                .all(|(&l, &k)| c.compose(l, u) == Some(k))
        })
        .collect()
}

/// Every cone over `d`, ordered by apex identifier, then leg identifiers.
pub fn cones(c: &FiniteCategory, d: &Diagram, budget: &mut Budget) -> Result<Vec<Cone>> {
    let mut out = Vec::new();
    let mut apexes: Vec<ObjId> = c.object_ids().collect();
    apexes.sort_by(|a, b| c.object_name(*a).cmp(c.object_name(*b)));
    for apex in apexes {
        let choices: Vec<&[MorId]> = d.nodes.iter().map(|&n| c.hom(apex, n)).collect();
        if choices.iter().any(|ch| ch.is_empty()) {
            budget.spend(1)?;
            continue;
        }
        let mut idx = vec![0usize; choices.len()];
        loop {
            budget.spend(1)?;
            let cone = Cone {
                apex,
                legs: idx.iter().zip(&choices).map(|(&i, ch)| ch[i]).collect(),
            };
            if cone.commutes(c, d) {
                out.push(cone);
            }
            // odometer
            let mut k = 0;
            while k < idx.len() {
                idx[k] += 1;
                if idx[k] < choices[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
    }
    let key = |cone: &Cone| -> Vec<String> {
        std::iter::once(c.object_name(cone.apex).to_string())
            .chain(cone.legs.iter().map(|&l| c.morphism_name(l).to_string()))
            .collect()
    };
    out.sort_by_key(key);
    Ok(out)
}

/// A terminal cone over `d`, or `None` when `d` has no limit in `c`. Ties are
/// broken by identifier order. Budget exhaustion is an error, distinct from
/// absence.
pub fn brute_force_limit(c: &FiniteCategory, d: &Diagram, budget: &mut Budget) -> Result<Option<Cone>> {
    let all = cones(c, d, budget)?;
    for candidate in &all {
        let mut universal = true;
        for other in &all {
            budget.spend(1)?;
            if mediating_morphisms(c, other, candidate).len() != 1 {
                universal = false;
                break;
            }
        }
        if universal {
            return Ok(Some(candidate.clone()));
        }
    }
    Ok(None)
}

/// An object receiving exactly one morphism from every object, smallest
/// identifier first.
pub fn find_terminal(c: &FiniteCategory) -> Option<ObjId> {
    let mut candidates: Vec<ObjId> = c
        .object_ids()
        .filter(|&t| c.object_ids().all(|x| c.hom(x, t).len() == 1))
        .collect();
    candidates.sort_by(|a, b| c.object_name(*a).cmp(c.object_name(*b)));
    candidates.into_iter().next()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> FiniteCategory {
        FiniteCategory::poset(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")],
        )
    }

    #[test]
    fn terminal_objects() {
        let t = FiniteCategory::terminal();
        assert_eq!(find_terminal(&t), Some(ObjId(0)));
        assert_eq!(find_terminal(&FiniteCategory::discrete(&["p", "q"])), None);
        let d = diamond();
        assert_eq!(find_terminal(&d).map(|o| d.object_name(o)), Some("d"));
    }

    #[test]
    fn limit_of_empty_diagram_is_terminal() {
        let d = diamond();
        let lim = brute_force_limit(&d, &Diagram::default(), &mut Budget::default())
            .unwrap()
            .unwrap();
        assert_eq!(Some(lim.apex), find_terminal(&d));
        let none = brute_force_limit(
            &FiniteCategory::discrete(&["p", "q"]),
            &Diagram::default(),
            &mut Budget::default(),
        )
        .unwrap();
        assert!(none.is_none());
    }

    #[test]
    fn single_node_limit_is_identity() {
        let d = diamond();
        let b = d.find_object("b").unwrap();
        let lim = brute_force_limit(&d, &Diagram::discrete(vec![b]), &mut Budget::default())
            .unwrap()
            .unwrap();
        assert_eq!(lim.apex, b);
        assert_eq!(lim.legs, vec![d.identity(b)]);
    }

    #[test]
    fn cospan_limit_in_poset_is_meet() {
        let d = diamond();
        let b = d.find_object("b").unwrap();
        let c = d.find_object("c").unwrap();
        let top = d.find_object("d").unwrap();
        let cospan = Diagram::cospan(&d, d.hom(b, top)[0], d.hom(c, top)[0]);
        let lim = brute_force_limit(&d, &cospan, &mut Budget::default())
            .unwrap()
            .unwrap();
        assert_eq!(d.object_name(lim.apex), "a");
    }

    #[test]
    fn budget_exhaustion_is_not_absence() {
        let d = diamond();
        let err = brute_force_limit(&d, &Diagram::default(), &mut Budget::new(2)).unwrap_err();
        assert!(err.is_indeterminate());
    }
}
