//! Finite groupoids: the 1-truncated shapes families are indexed by.

use std::ops::Deref;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::category::{validate_category, CategoryTables, FiniteCategory, Functor, MorId, ObjId};
use crate::group::FiniteGroup;
use crate::report::{ValidationReport, Violation};

/// A finite category together with an inverse for every morphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupoid {
    category: FiniteCategory,
    inverses: Vec<MorId>,
}

/// Interchange form: category tables plus `[f, f⁻¹]` pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidTables {
    #[serde(flatten)]
    pub category: CategoryTables,
    pub inverses: Vec<[String; 2]>,
}

impl Deref for FiniteGroupoid {
    type Target = FiniteCategory;

    fn deref(&self) -> &FiniteCategory {
        &self.category
    }
}

impl FiniteGroupoid {
    /// Pairs a category with given inverses. No checking; see
    /// [`validate_groupoid`].
    pub fn new(category: FiniteCategory, inverses: Vec<MorId>) -> Self {
        FiniteGroupoid {
            category,
            inverses,
        }
    }

    /// Finds inverses in the composition table; fails with an inverse-law
    /// violation for every non-invertible morphism.
    pub fn from_category(category: FiniteCategory) -> Result<Self, ValidationReport> {
        let mut report = validate_category(&category);
        if !report.is_valid() {
            return Err(report);
        }
        let mut inverses = Vec::with_capacity(category.morphism_count());
        for m in category.morphism_ids() {
            match category.inverse_of(m) {
                Some(inv) => inverses.push(inv),
                None => {
                    report.push(Violation::MissingInverse {
                        morphism: category.morphism_name(m).to_string(),
                    });
                    inverses.push(m);
                }
            }
        }
        if report.is_valid() {
            Ok(FiniteGroupoid::new(category, inverses))
        } else {
            Err(report.normalized())
        }
    }

    pub fn from_tables(tables: &GroupoidTables) -> (Option<Self>, ValidationReport) {
        let (cat, mut report) = FiniteCategory::from_tables(&tables.category);
        let Some(cat) = cat else {
            return (None, report);
        };
        let mut inverses: Vec<Option<MorId>> = vec![None; cat.morphism_count()];
        let mut ok = true;
        for [m, inv] in &tables.inverses {
            let a = cat.find_morphism(m);
            let b = cat.find_morphism(inv);
            for (found, id) in [(a, m), (b, inv)] {
                if found.is_none() {
                    ok = false;
                    report.push(Violation::UnknownMorphism {
                        context: "inverses".into(),
                        id: id.clone(),
                    });
                }
            }
            if let (Some(a), Some(b)) = (a, b) {
                inverses[a.0] = Some(b);
            }
        }
        if !ok {
            return (None, report.normalized());
        }
        for m in cat.morphism_ids() {
            if inverses[m.0].is_none() {
                report.push(Violation::MissingInverse {
                    morphism: cat.morphism_name(m).to_string(),
                });
            }
        }
        let inverses = inverses
            .into_iter()
            .enumerate()
            .map(|(i, inv)| inv.unwrap_or(MorId(i)))
            .collect();
        (Some(FiniteGroupoid::new(cat, inverses)), report.normalized())
    }

    pub fn to_tables(&self) -> GroupoidTables {
        GroupoidTables {
            category: self.category.to_tables(),
            inverses: self
                .morphism_ids()
                .map(|m| {
                    [
                        self.morphism_name(m).to_string(),
                        self.morphism_name(self.inverse(m)).to_string(),
                    ]
                })
                .collect(),
        }
    }

    pub fn category(&self) -> &FiniteCategory {
        &self.category
    }

    pub fn inverse(&self, m: MorId) -> MorId {
        self.inverses[m.0]
    }

    /// Groupoid with no objects.
    pub fn empty() -> Self {
        Self::discrete::<&str>(&[])
    }

    /// One object, identity only.
    pub fn point() -> Self {
        Self::discrete(&["*"])
    }

    pub fn discrete<S: AsRef<str>>(names: &[S]) -> Self {
        let cat = FiniteCategory::discrete(names);
        let inverses = cat.morphism_ids().collect();
        FiniteGroupoid::new(cat, inverses)
    }

    /// One-object groupoid with automorphism group `g`. Morphisms are named
    /// after the group elements.
    pub fn delooping(g: &FiniteGroup) -> Self {
        Self::thickened(g, &["*"])
    }

    /// Connected groupoid on the named objects, all of whose automorphism
    /// groups are `g`. Morphism `(i, j, a)` goes from object `i` to `j`;
    /// `(j, k, b) ∘ (i, j, a) = (i, k, b·a)`.
    pub fn thickened<S: AsRef<str>>(g: &FiniteGroup, names: &[S]) -> Self {
        let n = names.len();
        let order = g.order();
        let objects: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let index = |i: usize, j: usize, a: usize| MorId((i * n + j) * order + a);
        let mut morphisms = Vec::with_capacity(n * n * order);
        for i in 0..n {
            for j in 0..n {
                for a in 0..order {
                    let name = if n == 1 {
                        g.name(a).to_string()
                    } else {
                        format!("{}:{}->{}", g.name(a), objects[i], objects[j])
                    };
                    morphisms.push((name, ObjId(i), ObjId(j)));
                }
            }
        }
        let decode = |m: MorId| {
            let a = m.0 % order;
            let ij = m.0 / order;
            (ij / n, ij % n, a)
        };
        let identities = (0..n).map(|i| index(i, i, g.identity())).collect();
        let cat = FiniteCategory::from_parts(objects, morphisms, identities, |second, first| {
            let (i, j, a) = decode(first);
            let (j2, k, b) = decode(second);
            (j == j2).then(|| index(i, k, g.mul(b, a)))
        });
        let inverses = cat
            .morphism_ids()
            .map(|m| {
                let (i, j, a) = decode(m);
                index(j, i, g.inverse(a))
            })
            .collect();
        FiniteGroupoid::new(cat, inverses)
    }

    /// Connected groupoid with exactly one morphism between any two objects.
    pub fn chaotic<S: AsRef<str>>(names: &[S]) -> Self {
        Self::thickened(&FiniteGroup::trivial(), names)
    }

    /// Disjoint union; object and morphism names are prefixed by the summand
    /// index. Returns the inclusion functors.
    pub fn disjoint_union(parts: &[&FiniteGroupoid]) -> (FiniteGroupoid, Vec<Functor>) {
        let mut objects = Vec::new();
        let mut morphisms = Vec::new();
        let mut identities = Vec::new();
        let mut inverses = Vec::new();
        let mut inclusions = Vec::new();
        let mut obj_offset = Vec::new();
        let mut mor_offset = Vec::new();
        for (i, part) in parts.iter().enumerate() {
            let (oo, mo) = (objects.len(), morphisms.len());
            obj_offset.push(oo);
            mor_offset.push(mo);
            for o in part.object_ids() {
                objects.push(format!("{i}.{}", part.object_name(o)));
            }
            for m in part.morphism_ids() {
                morphisms.push((
                    format!("{i}.{}", part.morphism_name(m)),
                    ObjId(oo + part.source(m).0),
                    ObjId(oo + part.target(m).0),
                ));
                inverses.push(MorId(mo + part.inverse(m).0));
            }
            for o in part.object_ids() {
                identities.push(MorId(mo + part.identity(o).0));
            }
            inclusions.push(Functor {
                objects: part.object_ids().map(|o| ObjId(oo + o.0)).collect(),
                morphisms: part.morphism_ids().map(|m| MorId(mo + m.0)).collect(),
            });
        }
        let mut owner = Vec::with_capacity(morphisms.len());
        for (i, part) in parts.iter().enumerate() {
            owner.extend(std::iter::repeat_n(i, part.morphism_count()));
        }
        let cat = FiniteCategory::from_parts(objects, morphisms, identities, |g, f| {
            let (i, j) = (owner[g.0], owner[f.0]);
            if i != j {
                return None;
            }
            let local = parts[i].compose(MorId(g.0 - mor_offset[i]), MorId(f.0 - mor_offset[i]))?;
            Some(MorId(local.0 + mor_offset[i]))
        });
        (FiniteGroupoid::new(cat, inverses), inclusions)
    }

    /// Product of a list of groupoids (a point for the empty list), with the
    /// projection functors. Objects and morphisms are tuples in odometer order
    /// with the last factor varying fastest.
    pub fn product(parts: &[&FiniteGroupoid]) -> (FiniteGroupoid, Vec<Functor>) {
        let obj_tuples = tuples(&parts.iter().map(|p| p.object_count()).collect::<Vec<_>>());
        let mor_tuples = tuples(&parts.iter().map(|p| p.morphism_count()).collect::<Vec<_>>());
        let obj_dims: Vec<usize> = parts.iter().map(|p| p.object_count()).collect();
        let mor_dims: Vec<usize> = parts.iter().map(|p| p.morphism_count()).collect();
        let objects = obj_tuples
            .iter()
            .map(|t| {
                let names: Vec<&str> = t.iter().zip(parts).map(|(&o, p)| p.object_name(ObjId(o))).collect();
                format!("({})", names.join(","))
            })
            .collect();
        let morphisms = mor_tuples
            .iter()
            .map(|t| {
                let names: Vec<&str> = t.iter().zip(parts).map(|(&m, p)| p.morphism_name(MorId(m))).collect();
                let src: Vec<usize> = t.iter().zip(parts).map(|(&m, p)| p.source(MorId(m)).0).collect();
                let tgt: Vec<usize> = t.iter().zip(parts).map(|(&m, p)| p.target(MorId(m)).0).collect();
                (
                    format!("({})", names.join(",")),
                    ObjId(encode(&src, &obj_dims)),
                    ObjId(encode(&tgt, &obj_dims)),
                )
            })
            .collect();
        let identities = obj_tuples
            .iter()
            .map(|t| {
                let ids: Vec<usize> = t.iter().zip(parts).map(|(&o, p)| p.identity(ObjId(o)).0).collect();
                MorId(encode(&ids, &mor_dims))
            })
            .collect();
        let cat = FiniteCategory::from_parts(objects, morphisms, identities, |g, f| {
            let (tg, tf) = (&mor_tuples[g.0], &mor_tuples[f.0]);
            let mut out = Vec::with_capacity(parts.len());
            for (k, p) in parts.iter().enumerate() {
                out.push(p.compose(MorId(tg[k]), MorId(tf[k]))?.0);
            }
            Some(MorId(encode(&out, &mor_dims)))
        });
        let inverses = mor_tuples
            .iter()
            .map(|t| {
                let inv: Vec<usize> = t.iter().zip(parts).map(|(&m, p)| p.inverse(MorId(m)).0).collect();
                MorId(encode(&inv, &mor_dims))
            })
            .collect();
        let projections = (0..parts.len())
            .map(|k| Functor {
                objects: obj_tuples.iter().map(|t| ObjId(t[k])).collect(),
                morphisms: mor_tuples.iter().map(|t| MorId(t[k])).collect(),
            })
            .collect();
        (FiniteGroupoid::new(cat, inverses), projections)
    }

    /// Full subgroupoid on `objects` (in the given order) with its inclusion.
    pub fn full_subgroupoid(&self, objects: &[ObjId]) -> (FiniteGroupoid, Functor) {
        let mut local = vec![None; self.object_count()];
        for (i, &o) in objects.iter().enumerate() {
            local[o.0] = Some(i);
        }
        let kept: Vec<MorId> = self
            .morphism_ids()
            .filter(|&m| local[self.source(m).0].is_some() && local[self.target(m).0].is_some())
            .collect();
        let mut mor_local = vec![None; self.morphism_count()];
        for (i, &m) in kept.iter().enumerate() {
            mor_local[m.0] = Some(MorId(i));
        }
        let cat = FiniteCategory::from_parts(
            objects.iter().map(|&o| self.object_name(o).to_string()).collect(),
            kept.iter()
                .map(|&m| {
                    (
                        self.morphism_name(m).to_string(),
                        ObjId(local[self.source(m).0].unwrap()),
                        ObjId(local[self.target(m).0].unwrap()),
                    )
                })
                .collect(),
            objects.iter().map(|&o| mor_local[self.identity(o).0].unwrap()).collect(),
            |g, f| mor_local[self.compose(kept[g.0], kept[f.0])?.0],
        );
        let inverses = kept.iter().map(|&m| mor_local[self.inverse(m).0].unwrap()).collect();
        let inclusion = Functor {
            objects: objects.to_vec(),
            morphisms: kept,
        };
        (FiniteGroupoid::new(cat, inverses), inclusion)
    }

    pub fn is_connected(&self) -> bool {
        pi0(self).count() == 1
    }

    pub fn is_discrete(&self) -> bool {
        self.morphism_ids().all(|m| self.is_identity(m))
    }
}

fn tuples(dims: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &d in dims {
        let mut next = Vec::with_capacity(out.len() * d);
        for t in &out {
            for x in 0..d {
                let mut t2 = t.clone();
                t2.push(x);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

fn encode(tuple: &[usize], dims: &[usize]) -> usize {
    tuple.iter().zip(dims).fold(0, |acc, (&x, &d)| acc * d + x)
}

/// Category axioms plus `f⁻¹∘f = id` and `f∘f⁻¹ = id` for every `f`.
pub fn validate_groupoid(g: &FiniteGroupoid) -> ValidationReport {
    let mut report = validate_category(g);
    if !report.is_valid() {
        return report;
    }
    if g.inverses.len() != g.morphism_count() {
        report.push(Violation::TableSize {
            context: "inverses".into(),
            expected: g.morphism_count(),
            found: g.inverses.len(),
        });
        return report;
    }
    for m in g.morphism_ids() {
        let inv = g.inverse(m);
        let ok = g.compose(inv, m) == g.try_identity(g.source(m))
            && g.compose(m, inv) == g.try_identity(g.target(m));
        if !ok {
            report.push(Violation::InverseLaw {
                morphism: g.morphism_name(m).to_string(),
                inverse: g.morphism_name(inv).to_string(),
            });
        }
    }
    report.normalized()
}

pub fn validate_groupoid_tables(tables: &GroupoidTables) -> ValidationReport {
    let (g, mut report) = FiniteGroupoid::from_tables(tables);
    if let Some(g) = g {
        if report.is_valid() {
            report.extend(validate_groupoid(&g));
        } else {
            report.extend(validate_category(&g));
        }
    }
    report.normalized()
}

/// Connected components: `block_of[o]` is the component of `o`; blocks are
/// numbered by their smallest object index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Components {
    pub block_of: Vec<usize>,
    pub blocks: Vec<Vec<ObjId>>,
}

impl Components {
    pub fn count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block(&self, o: ObjId) -> usize {
        self.block_of[o.0]
    }
}

pub fn pi0(g: &FiniteGroupoid) -> Components {
    components_of(g)
}

/// Connected components of the underlying graph of any finite category.
pub fn components_of(c: &FiniteCategory) -> Components {
    let n = c.object_count();
    let mut uf = UnionFind::<usize>::new(n);
    for m in c.morphism_ids() {
        uf.union(c.source(m).0, c.target(m).0);
    }
    let mut block_of = vec![usize::MAX; n];
    let mut blocks: Vec<Vec<ObjId>> = Vec::new();
    let mut root_block = vec![usize::MAX; n];
    for o in 0..n {
        let root = uf.find(o);
        if root_block[root] == usize::MAX {
            root_block[root] = blocks.len();
            blocks.push(Vec::new());
        }
        block_of[o] = root_block[root];
        blocks[root_block[root]].push(ObjId(o));
    }
    Components { block_of, blocks }
}

/// `Aut(x)` with multiplication `a·b = a∘b`. Element names are the morphism
/// identifiers.
pub fn aut_group(g: &FiniteGroupoid, x: ObjId) -> crate::Result<FiniteGroup> {
    if x.0 >= g.object_count() {
        return Err(crate::Error::UnknownObject(x.to_string()));
    }
    let loops = g.hom(x, x);
    let pos = |m: MorId| loops.iter().position(|&l| l == m).expect("closed under composition");
    let elements = loops.iter().map(|&m| g.morphism_name(m).to_string()).collect();
    let table = loops
        .iter()
        .map(|&a| loops.iter().map(|&b| pos(g.comp(a, b))).collect())
        .collect();
    FiniteGroup::from_table(elements, table).map_err(crate::Error::Invalid)
}

/// Action groupoid of a permutation action: objects `0..degree`, a morphism
/// `(a, x): x -> a·x` for each group element `a`.
pub fn action_groupoid(g: &FiniteGroup, degree: usize, action: impl Fn(usize, usize) -> usize) -> FiniteGroupoid {
    let order = g.order();
    let objects: Vec<String> = (0..degree).map(|x| x.to_string()).collect();
    let morphisms = (0..degree)
        .flat_map(|x| (0..order).map(move |a| (x, a)))
        .map(|(x, a)| (format!("{}@{}", g.name(a), x), ObjId(x), ObjId(action(a, x))))
        .collect();
    let idx = |x: usize, a: usize| MorId(x * order + a);
    let identities = (0..degree).map(|x| idx(x, g.identity())).collect();
    let cat = FiniteCategory::from_parts(objects, morphisms, identities, |second, first| {
        let (x, a) = (first.0 / order, first.0 % order);
        let (y, b) = (second.0 / order, second.0 % order);
        (action(a, x) == y).then(|| idx(x, g.mul(b, a)))
    });
    let inverses = (0..degree)
        .flat_map(|x| (0..order).map(move |a| (x, a)))
        .map(|(x, a)| idx(action(a, x), g.inverse(a)))
        .collect();
    FiniteGroupoid::new(cat, inverses)
}

/// The functor `⊔ Xᵢ -> Y` restricting to `fᵢ` on the `i`-th summand, with
/// the summands laid out as in [`FiniteGroupoid::disjoint_union`].
pub fn copair(sources: &[&FiniteGroupoid], fs: &[&Functor]) -> Functor {
    let mut out = Functor {
        objects: Vec::new(),
        morphisms: Vec::new(),
    };
    for (x, f) in sources.iter().zip(fs) {
        out.objects.extend(x.object_ids().map(|o| f.obj(o)));
        out.morphisms.extend(x.morphism_ids().map(|m| f.mor(m)));
    }
    out
}

/// `⊔ fᵢ: ⊔ Xᵢ -> ⊔ Yᵢ`.
pub fn sum_functor(targets: &[&FiniteGroupoid], sources: &[&FiniteGroupoid], fs: &[&Functor]) -> Functor {
    let (_, inclusions) = FiniteGroupoid::disjoint_union(targets);
    let shifted: Vec<Functor> = fs.iter().zip(&inclusions).map(|(f, inc)| inc.compose(f)).collect();
    copair(sources, &shifted.iter().collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::validate_functor;

    fn bz2() -> FiniteGroupoid {
        FiniteGroupoid::delooping(&FiniteGroup::cyclic(2))
    }

    #[test]
    fn constructions_are_valid_groupoids() {
        let z3 = FiniteGroup::cyclic(3);
        let samples = [
            FiniteGroupoid::empty(),
            FiniteGroupoid::point(),
            FiniteGroupoid::discrete(&["a", "b", "c"]),
            bz2(),
            FiniteGroupoid::thickened(&z3, &["x", "y"]),
            FiniteGroupoid::chaotic(&["p", "q", "r"]),
            FiniteGroupoid::disjoint_union(&[&bz2(), &FiniteGroupoid::point()]).0,
            FiniteGroupoid::product(&[&bz2(), &FiniteGroupoid::chaotic(&["p", "q"])]).0,
            action_groupoid(&z3, 3, |a, x| (a + x) % 3),
        ];
        for g in &samples {
            assert!(validate_groupoid(g).is_valid(), "{:?}", validate_groupoid(g));
        }
    }

    #[test]
    fn monoid_with_idempotent_fails_inverse_law() {
        let cat = FiniteCategory::from_parts(
            vec!["*".into()],
            vec![("e".into(), ObjId(0), ObjId(0)), ("p".into(), ObjId(0), ObjId(0))],
            vec![MorId(0)],
            |g, f| Some(if g.0 == 0 { f } else { MorId(1) }),
        );
        assert!(validate_category(&cat).is_valid());
        let err = FiniteGroupoid::from_category(cat.clone()).unwrap_err();
        assert_eq!(err.violations, vec![Violation::MissingInverse { morphism: "p".into() }]);
        let forced = FiniteGroupoid::new(cat, vec![MorId(0), MorId(1)]);
        assert_eq!(
            validate_groupoid(&forced).violations,
            vec![Violation::InverseLaw {
                morphism: "p".into(),
                inverse: "p".into()
            }]
        );
    }

    #[test]
    fn pi0_counts() {
        assert_eq!(pi0(&FiniteGroupoid::discrete(&["a", "b", "c"])).count(), 3);
        assert_eq!(pi0(&bz2()).count(), 1);
        let (u, _) = FiniteGroupoid::disjoint_union(&[&bz2(), &FiniteGroupoid::point()]);
        assert_eq!(pi0(&u).count(), 2);
        assert_eq!(pi0(&FiniteGroupoid::empty()).count(), 0);
        assert!(!FiniteGroupoid::empty().is_connected());
    }

    #[test]
    fn automorphism_groups() {
        let d = FiniteGroupoid::discrete(&["a", "b"]);
        assert!(aut_group(&d, ObjId(1)).unwrap().is_trivial());
        assert_eq!(aut_group(&bz2(), ObjId(0)).unwrap().order(), 2);
        let g = FiniteGroupoid::thickened(&FiniteGroup::cyclic(3), &["x", "y"]);
        let aut = aut_group(&g, ObjId(1)).unwrap();
        assert_eq!(aut.order(), 3);
        assert!(aut.is_abelian());
        assert!(aut_group(&g, ObjId(7)).is_err());
    }

    #[test]
    fn product_projections_are_functors() {
        let a = bz2();
        let b = FiniteGroupoid::chaotic(&["p", "q"]);
        let (p, projs) = FiniteGroupoid::product(&[&a, &b]);
        assert_eq!(p.object_count(), 2);
        assert_eq!(p.morphism_count(), 8);
        assert!(validate_functor(&p, &a, &projs[0]).is_valid());
        assert!(validate_functor(&p, &b, &projs[1]).is_valid());
    }

    #[test]
    fn tables_round_trip() {
        let g = FiniteGroupoid::thickened(&FiniteGroup::cyclic(2), &["x", "y"]);
        let (back, report) = FiniteGroupoid::from_tables(&g.to_tables());
        assert!(report.is_valid());
        assert_eq!(back.unwrap(), g);
    }

    #[test]
    fn functor_counts_match_homomorphism_counts() {
        let mut budget = crate::Budget::unlimited();
        let s3 = FiniteGroupoid::delooping(&FiniteGroup::symmetric3());
        let z6 = FiniteGroupoid::delooping(&FiniteGroup::cyclic(6));
        let count = |a: &FiniteGroupoid, b: &FiniteGroupoid, budget: &mut crate::Budget| {
            crate::category::functors(a, b, budget).unwrap().len()
        };
        assert_eq!(count(&s3, &s3, &mut budget), 10);
        assert_eq!(count(&z6, &z6, &mut budget), 6);
        assert_eq!(count(&z6, &s3, &mut budget), 6);
        // a spanning edge may go anywhere in S3; the loops form Hom(Z/2, S3)
        let thick = FiniteGroupoid::thickened(&FiniteGroup::cyclic(2), &["x", "y"]);
        assert_eq!(count(&thick, &s3, &mut budget), 4 * 6);
    }
}
