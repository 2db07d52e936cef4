//! Finite categories stored extensionally, with functors and natural
//! transformations between them.
//!
//! Objects and morphisms are addressed by dense indices ([`ObjId`], [`MorId`]);
//! every object and morphism also carries a string identifier used for
//! interchange, reports and deterministic tie-breaking.

use std::collections::HashMap;
use std::fmt;
use std::ops::ControlFlow;

use rand::seq::SliceRandom;
use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::error::{Budget, Result};
use crate::report::{ValidationReport, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ObjId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MorId(pub usize);

impl fmt::Display for ObjId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "o{}", self.0)
    }
}

impl fmt::Display for MorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct MorphismInfo {
    name: String,
    source: ObjId,
    target: ObjId,
}

/// Interchange form of a category: string ids throughout, composition given
/// as `[f, g, g∘f]` triples.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryTables {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismDecl>,
    /// `[object, identity morphism]` pairs.
    pub identities: Vec<[String; 2]>,
    /// `[f, g, g∘f]` triples.
    pub composition: Vec<[String; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismDecl {
    pub id: String,
    pub source: String,
    pub target: String,
}

/// A finite category with a total composition table over composable pairs.
///
/// The value may violate the category axioms (for instance right after
/// loading a file); [`validate_category`] reports every violated instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<MorphismInfo>,
    identities: Vec<Option<MorId>>,
    // indexed by g * |mor| + f, holds g∘f
    composition: Vec<Option<MorId>>,
    // indexed by a * |obj| + b
    hom: Vec<Vec<MorId>>,
}

impl FiniteCategory {
    /// Builds a category from generated data. `compose(g, f)` is queried for
    /// every composable pair and should return `g∘f`.
    pub fn from_parts(
        objects: Vec<String>,
        morphisms: Vec<(String, ObjId, ObjId)>,
        identities: Vec<MorId>,
        compose: impl Fn(MorId, MorId) -> Option<MorId>,
    ) -> Self {
        let morphisms: Vec<MorphismInfo> = morphisms
            .into_iter()
            .map(|(name, source, target)| MorphismInfo {
                name,
                source,
                target,
            })
            .collect();
        let m = morphisms.len();
        let mut composition = vec![None; m * m];
        for g in 0..m {
            for f in 0..m {
                if morphisms[f].target == morphisms[g].source {
                    composition[g * m + f] = compose(MorId(g), MorId(f));
                }
            }
        }
        let identities = identities.into_iter().map(Some).collect();
        Self::assemble(objects, morphisms, identities, composition)
    }

    fn assemble(
        objects: Vec<String>,
        morphisms: Vec<MorphismInfo>,
        identities: Vec<Option<MorId>>,
        composition: Vec<Option<MorId>>,
    ) -> Self {
        let n = objects.len();
        let mut hom = vec![Vec::new(); n * n];
        for (i, info) in morphisms.iter().enumerate() {
            hom[info.source.0 * n + info.target.0].push(MorId(i));
        }
        FiniteCategory {
            objects,
            morphisms,
            identities,
            composition,
            hom,
        }
    }

    /// Resolves string ids. Reference errors and table conflicts are reported;
    /// the category is returned whenever every id resolved.
    pub fn from_tables(tables: &CategoryTables) -> (Option<Self>, ValidationReport) {
        let mut report = ValidationReport::new();
        let mut obj_index: HashMap<&str, ObjId> = HashMap::new();
        for (i, name) in tables.objects.iter().enumerate() {
            if obj_index.insert(name.as_str(), ObjId(i)).is_some() {
                report.push(Violation::DuplicateId { id: name.clone() });
            }
        }
        let mut mor_index: HashMap<&str, MorId> = HashMap::new();
        let mut morphisms = Vec::with_capacity(tables.morphisms.len());
        for (i, decl) in tables.morphisms.iter().enumerate() {
            if mor_index.insert(decl.id.as_str(), MorId(i)).is_some()
                || obj_index.contains_key(decl.id.as_str())
            {
                report.push(Violation::DuplicateId { id: decl.id.clone() });
            }
            let context = format!("morphism `{}`", decl.id);
            let source = obj_index.get(decl.source.as_str()).copied();
            let target = obj_index.get(decl.target.as_str()).copied();
            if source.is_none() {
                report.push(Violation::UnknownObject {
                    context: context.clone(),
                    id: decl.source.clone(),
                });
            }
            if target.is_none() {
                report.push(Violation::UnknownObject {
                    context,
                    id: decl.target.clone(),
                });
            }
            morphisms.push(MorphismInfo {
                name: decl.id.clone(),
                source: source.unwrap_or(ObjId(0)),
                target: target.unwrap_or(ObjId(0)),
            });
        }

        let mut identities = vec![None; tables.objects.len()];
        for [obj, mor] in &tables.identities {
            let o = obj_index.get(obj.as_str()).copied();
            let m = mor_index.get(mor.as_str()).copied();
            if o.is_none() {
                report.push(Violation::UnknownObject {
                    context: "identities".into(),
                    id: obj.clone(),
                });
            }
            if m.is_none() {
                report.push(Violation::UnknownMorphism {
                    context: "identities".into(),
                    id: mor.clone(),
                });
            }
            if let (Some(o), Some(m)) = (o, m) {
                identities[o.0] = Some(m);
            }
        }

        let mcount = morphisms.len();
        let mut composition: Vec<Option<MorId>> = vec![None; mcount * mcount];
        let mut pending = Vec::new();
        for [f, g, gf] in &tables.composition {
            let ids: Vec<Option<MorId>> = [f, g, gf]
                .iter()
                .map(|id| {
                    let found = mor_index.get(id.as_str()).copied();
                    if found.is_none() {
                        report.push(Violation::UnknownMorphism {
                            context: format!("composition entry [{f}, {g}, {gf}]"),
                            id: (*id).clone(),
                        });
                    }
                    found
                })
                .collect();
            if let [Some(f), Some(g), Some(gf)] = ids[..] {
                pending.push((f, g, gf));
            }
        }
        if report.has_reference_errors() {
            return (None, report.normalized());
        }
        for (f, g, gf) in pending {
            let fname = &morphisms[f.0].name;
            let gname = &morphisms[g.0].name;
            if morphisms[f.0].target != morphisms[g.0].source {
                report.push(Violation::ComposedNonComposable {
                    g: gname.clone(),
                    f: fname.clone(),
                });
                continue;
            }
            let slot = &mut composition[g.0 * mcount + f.0];
            match slot {
                Some(existing) if *existing != gf => report.push(Violation::ConflictingComposite {
                    g: gname.clone(),
                    f: fname.clone(),
                }),
                _ => *slot = Some(gf),
            }
        }
        let cat = Self::assemble(tables.objects.clone(), morphisms, identities, composition);
        (Some(cat), report.normalized())
    }

    pub fn to_tables(&self) -> CategoryTables {
        let mut tables = CategoryTables {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| MorphismDecl {
                    id: m.name.clone(),
                    source: self.objects[m.source.0].clone(),
                    target: self.objects[m.target.0].clone(),
                })
                .collect(),
            identities: Vec::new(),
            composition: Vec::new(),
        };
        for (o, id) in self.identities.iter().enumerate() {
            if let Some(id) = id {
                tables
                    .identities
                    .push([self.objects[o].clone(), self.morphisms[id.0].name.clone()]);
            }
        }
        for f in self.morphism_ids() {
            for g in self.morphism_ids() {
                if let Some(gf) = self.compose(g, f) {
                    tables.composition.push([
                        self.morphism_name(f).to_string(),
                        self.morphism_name(g).to_string(),
                        self.morphism_name(gf).to_string(),
                    ]);
                }
            }
        }
        tables
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_ids(&self) -> impl Iterator<Item = ObjId> + '_ {
        (0..self.objects.len()).map(ObjId)
    }

    pub fn morphism_ids(&self) -> impl Iterator<Item = MorId> + '_ {
        (0..self.morphisms.len()).map(MorId)
    }

    pub fn object_name(&self, o: ObjId) -> &str {
        &self.objects[o.0]
    }

    pub fn morphism_name(&self, m: MorId) -> &str {
        &self.morphisms[m.0].name
    }

    pub fn find_object(&self, name: &str) -> Option<ObjId> {
        self.objects.iter().position(|o| o == name).map(ObjId)
    }

    pub fn find_morphism(&self, name: &str) -> Option<MorId> {
        self.morphisms.iter().position(|m| m.name == name).map(MorId)
    }

    pub fn source(&self, m: MorId) -> ObjId {
        self.morphisms[m.0].source
    }

    pub fn target(&self, m: MorId) -> ObjId {
        self.morphisms[m.0].target
    }

    pub fn try_identity(&self, o: ObjId) -> Option<MorId> {
        self.identities[o.0]
    }

    /// Identity of `o`. Panics on a category that failed validation.
    pub fn identity(&self, o: ObjId) -> MorId {
        self.identities[o.0].expect("identity of a validated category")
    }

    pub fn is_identity(&self, m: MorId) -> bool {
        self.identities[self.source(m).0] == Some(m)
    }

    /// `g ∘ f`, when the pair is composable and the table has an entry.
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        self.composition[g.0 * self.morphisms.len() + f.0]
    }

    /// `g ∘ f` for a composable pair of a validated category.
    pub fn comp(&self, g: MorId, f: MorId) -> MorId {
        self.compose(g, f).unwrap_or_else(|| {
            panic!(
                "no composite {} ∘ {}",
                self.morphism_name(g),
                self.morphism_name(f)
            )
        })
    }

    /// Composite of a path given in application order (first morphism first).
    pub fn comp_path(&self, path: &[MorId]) -> Option<MorId> {
        let (&first, rest) = path.split_first()?;
        rest.iter().try_fold(first, |acc, &m| self.compose(m, acc))
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> &[MorId] {
        &self.hom[a.0 * self.objects.len() + b.0]
    }

    /// Two-sided inverse of `m`, if any.
    pub fn inverse_of(&self, m: MorId) -> Option<MorId> {
        let (a, b) = (self.source(m), self.target(m));
        let ida = self.try_identity(a)?;
        let idb = self.try_identity(b)?;
        self.hom(b, a)
            .iter()
            .copied()
            .find(|&n| self.compose(n, m) == Some(ida) && self.compose(m, n) == Some(idb))
    }

    pub fn is_isomorphism(&self, m: MorId) -> bool {
        self.inverse_of(m).is_some()
    }

    /// Category with the given objects and identities only.
    pub fn discrete<S: AsRef<str>>(names: &[S]) -> Self {
        let objects: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let morphisms = objects
            .iter()
            .enumerate()
            .map(|(i, o)| (format!("id_{o}"), ObjId(i), ObjId(i)))
            .collect();
        let identities = (0..objects.len()).map(MorId).collect();
        Self::from_parts(objects, morphisms, identities, |g, f| {
            (g == f).then_some(g)
        })
    }

    /// The terminal category: one object, one morphism.
    pub fn terminal() -> Self {
        Self::discrete(&["*"])
    }

    /// Poset category on `elements`; `relations` lists `a ≤ b` pairs and is
    /// closed reflexively and transitively. Morphisms are named `a<=b`.
    pub fn poset<S: AsRef<str>>(elements: &[S], relations: &[(S, S)]) -> Self {
        let n = elements.len();
        let idx = |s: &str| {
            elements
                .iter()
                .position(|e| e.as_ref() == s)
                .unwrap_or_else(|| panic!("unknown poset element {s}"))
        };
        let mut le = vec![vec![false; n]; n];
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in relations {
            le[idx(a.as_ref())][idx(b.as_ref())] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if le[i][k] && le[k][j] {
                        le[i][j] = true;
                    }
                }
            }
        }
        let names: Vec<String> = elements.iter().map(|e| e.as_ref().to_string()).collect();
        let mut morphisms = Vec::new();
        let mut at = vec![vec![None; n]; n];
        for i in 0..n {
            for j in 0..n {
                if le[i][j] {
                    at[i][j] = Some(MorId(morphisms.len()));
                    let name = if i == j {
                        format!("id_{}", names[i])
                    } else {
                        format!("{}<={}", names[i], names[j])
                    };
                    morphisms.push((name, ObjId(i), ObjId(j)));
                }
            }
        }
        let identities = (0..n).map(|i| at[i][i].unwrap()).collect();
        let ends: Vec<(usize, usize)> = morphisms.iter().map(|(_, s, t)| (s.0, t.0)).collect();
        Self::from_parts(names, morphisms, identities, |g, f| {
            at[ends[f.0].0][ends[g.0].1]
        })
    }
}

/// Checks identity laws, composition closure and associativity.
pub fn validate_category(c: &FiniteCategory) -> ValidationReport {
    let mut report = ValidationReport::new();
    let mut seen = HashMap::new();
    for name in c.objects.iter().chain(c.morphisms.iter().map(|m| &m.name)) {
        if seen.insert(name.as_str(), ()).is_some() {
            report.push(Violation::DuplicateId { id: name.clone() });
        }
    }
    let name = |m: MorId| c.morphism_name(m).to_string();
    for o in c.object_ids() {
        match c.try_identity(o) {
            None => report.push(Violation::MissingIdentity {
                object: c.object_name(o).to_string(),
            }),
            Some(id) if c.source(id) != o || c.target(id) != o => {
                report.push(Violation::IdentityNotEndo {
                    object: c.object_name(o).to_string(),
                    morphism: name(id),
                })
            }
            Some(_) => {}
        }
    }
    for g in c.morphism_ids() {
        for f in c.morphism_ids() {
            if c.target(f) != c.source(g) {
                continue;
            }
            match c.compose(g, f) {
                None => report.push(Violation::MissingComposite {
                    g: name(g),
                    f: name(f),
                }),
                Some(gf) if c.source(gf) != c.source(f) || c.target(gf) != c.target(g) => {
                    report.push(Violation::CompositeEndpoints {
                        g: name(g),
                        f: name(f),
                        composite: name(gf),
                    })
                }
                Some(_) => {}
            }
        }
    }
    for f in c.morphism_ids() {
        if let Some(idt) = c.try_identity(c.target(f)) {
            if c.compose(idt, f).is_some_and(|r| r != f) {
                report.push(Violation::LeftIdentity { morphism: name(f) });
            }
        }
        if let Some(ids) = c.try_identity(c.source(f)) {
            if c.compose(f, ids).is_some_and(|r| r != f) {
                report.push(Violation::RightIdentity { morphism: name(f) });
            }
        }
    }
    for f in c.morphism_ids() {
        for g in c.morphism_ids() {
            let Some(gf) = c.compose(g, f) else { continue };
            for h in c.morphism_ids() {
                let Some(hg) = c.compose(h, g) else { continue };
                if let (Some(l), Some(r)) = (c.compose(h, gf), c.compose(hg, f)) {
                    if l != r {
                        report.push(Violation::Associativity {
                            h: name(h),
                            g: name(g),
                            f: name(f),
                        });
                    }
                }
            }
        }
    }
    report.normalized()
}

/// Reference resolution followed by the axiom check.
pub fn validate_category_tables(tables: &CategoryTables) -> ValidationReport {
    let (cat, mut report) = FiniteCategory::from_tables(tables);
    if let Some(cat) = cat {
        report.extend(validate_category(&cat));
    }
    report.normalized()
}

/// Object and morphism maps of a functor. Interpreted relative to a source and
/// a target category supplied alongside it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Functor {
    pub objects: Vec<ObjId>,
    pub morphisms: Vec<MorId>,
}

impl Functor {
    pub fn identity(c: &FiniteCategory) -> Self {
        Functor {
            objects: c.object_ids().collect(),
            morphisms: c.morphism_ids().collect(),
        }
    }

    /// The functor sending everything to `obj` and its identity.
    pub fn constant(src: &FiniteCategory, tgt: &FiniteCategory, obj: ObjId) -> Self {
        Functor {
            objects: vec![obj; src.object_count()],
            morphisms: vec![tgt.identity(obj); src.morphism_count()],
        }
    }

    pub fn obj(&self, o: ObjId) -> ObjId {
        self.objects[o.0]
    }

    pub fn mor(&self, m: MorId) -> MorId {
        self.morphisms[m.0]
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &Functor) -> Functor {
        Functor {
            objects: first.objects.iter().map(|&o| self.obj(o)).collect(),
            morphisms: first.morphisms.iter().map(|&m| self.mor(m)).collect(),
        }
    }
}

pub fn validate_functor(src: &FiniteCategory, tgt: &FiniteCategory, f: &Functor) -> ValidationReport {
    let mut report = ValidationReport::new();
    if f.objects.len() != src.object_count() {
        report.push(Violation::TableSize {
            context: "functor object map".into(),
            expected: src.object_count(),
            found: f.objects.len(),
        });
    }
    if f.morphisms.len() != src.morphism_count() {
        report.push(Violation::TableSize {
            context: "functor morphism map".into(),
            expected: src.morphism_count(),
            found: f.morphisms.len(),
        });
    }
    if f.objects.iter().any(|o| o.0 >= tgt.object_count())
        || f.morphisms.iter().any(|m| m.0 >= tgt.morphism_count())
    {
        report.push(Violation::MapOutOfRange {
            context: "functor".into(),
        });
    }
    if !report.is_valid() {
        return report;
    }
    for m in src.morphism_ids() {
        let image = f.mor(m);
        if tgt.source(image) != f.obj(src.source(m)) {
            report.push(Violation::FunctorSource {
                morphism: src.morphism_name(m).to_string(),
            });
        }
        if tgt.target(image) != f.obj(src.target(m)) {
            report.push(Violation::FunctorTarget {
                morphism: src.morphism_name(m).to_string(),
            });
        }
    }
    for o in src.object_ids() {
        if let Some(id) = src.try_identity(o) {
            if tgt.try_identity(f.obj(o)) != Some(f.mor(id)) {
                report.push(Violation::FunctorIdentity {
                    object: src.object_name(o).to_string(),
                });
            }
        }
    }
    for g in src.morphism_ids() {
        for h in src.morphism_ids() {
            if let Some(gh) = src.compose(g, h) {
                if tgt.compose(f.mor(g), f.mor(h)) != Some(f.mor(gh)) {
                    report.push(Violation::FunctorComposite {
                        g: src.morphism_name(g).to_string(),
                        f: src.morphism_name(h).to_string(),
                    });
                }
            }
        }
    }
    report.normalized()
}

/// Components of a natural transformation, one morphism per source object.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NatTrans {
    pub components: Vec<MorId>,
}

impl NatTrans {
    pub fn identity(src: &FiniteCategory, tgt: &FiniteCategory, f: &Functor) -> Self {
        NatTrans {
            components: src.object_ids().map(|o| tgt.identity(f.obj(o))).collect(),
        }
    }

    pub fn at(&self, o: ObjId) -> MorId {
        self.components[o.0]
    }

    /// Vertical composite `second ∘ self`.
    pub fn then(&self, tgt: &FiniteCategory, second: &NatTrans) -> NatTrans {
        NatTrans {
            components: self
                .components
                .iter()
                .zip(&second.components)
                .map(|(&a, &b)| tgt.comp(b, a))
                .collect(),
        }
    }

    /// Whiskering by a functor on the source side: components at `h(x)`.
    pub fn precompose(&self, h: &Functor) -> NatTrans {
        NatTrans {
            components: h.objects.iter().map(|&o| self.at(o)).collect(),
        }
    }

    /// Whiskering by a functor on the target side: `k` applied to each component.
    pub fn postcompose(&self, k: &Functor) -> NatTrans {
        NatTrans {
            components: self.components.iter().map(|&m| k.mor(m)).collect(),
        }
    }
}

pub fn validate_nat_trans(
    src: &FiniteCategory,
    tgt: &FiniteCategory,
    from: &Functor,
    to: &Functor,
    t: &NatTrans,
) -> ValidationReport {
    let mut report = ValidationReport::new();
    if t.components.len() != src.object_count() {
        report.push(Violation::TableSize {
            context: "transformation components".into(),
            expected: src.object_count(),
            found: t.components.len(),
        });
        return report;
    }
    if t.components.iter().any(|m| m.0 >= tgt.morphism_count()) {
        report.push(Violation::MapOutOfRange {
            context: "transformation components".into(),
        });
        return report;
    }
    for o in src.object_ids() {
        let c = t.at(o);
        if tgt.source(c) != from.obj(o) || tgt.target(c) != to.obj(o) {
            report.push(Violation::ComponentEndpoints {
                object: src.object_name(o).to_string(),
                component: tgt.morphism_name(c).to_string(),
            });
        }
    }
    if !report.is_valid() {
        return report;
    }
    for m in src.morphism_ids() {
        let (x, y) = (src.source(m), src.target(m));
        let lhs = tgt.compose(to.mor(m), t.at(x));
        let rhs = tgt.compose(t.at(y), from.mor(m));
        if lhs.is_none() || lhs != rhs {
            report.push(Violation::Naturality {
                morphism: src.morphism_name(m).to_string(),
            });
        }
    }
    report.normalized()
}

/// Calls `visit` on every functor `src -> tgt`, in a deterministic order or in
/// an order shuffled by `rng`. Stops early when `visit` breaks.
pub fn for_each_functor(
    src: &FiniteCategory,
    tgt: &FiniteCategory,
    budget: &mut Budget,
    mut rng: Option<&mut dyn RngCore>,
    visit: &mut dyn FnMut(&Functor) -> ControlFlow<()>,
) -> Result<()> {
    if src.object_count() > 0 && tgt.object_count() == 0 {
        return Ok(());
    }
    // identities are assigned with objects; the remaining morphisms are ordered
    // so that composites and inverses of earlier ones are forced rather than
    // searched, and each rank carries the composite checks decidable there
    let (order, rules) = assignment_order(src);
    let mut rank = vec![0usize; src.morphism_count()];
    for (i, &m) in order.iter().enumerate() {
        rank[m.0] = i + 1;
    }
    let mut checks: Vec<Vec<(MorId, MorId, MorId)>> = vec![Vec::new(); order.len() + 1];
    for g in src.morphism_ids() {
        for f in src.morphism_ids() {
            if let Some(gf) = src.compose(g, f) {
                let r = rank[g.0].max(rank[f.0]).max(rank[gf.0]);
                if r > 0 {
                    checks[r].push((g, f, gf));
                }
            }
        }
    }
    let mut current = Functor {
        objects: vec![ObjId(0); src.object_count()],
        morphisms: vec![MorId(0); src.morphism_count()],
    };
    let targets: Vec<ObjId> = tgt.object_ids().collect();

    struct Search<'a> {
        src: &'a FiniteCategory,
        tgt: &'a FiniteCategory,
        order: &'a [MorId],
        rules: &'a [Rule],
        checks: &'a [Vec<(MorId, MorId, MorId)>],
        targets: &'a [ObjId],
    }

    fn objects(
        s: &Search,
        i: usize,
        cur: &mut Functor,
        budget: &mut Budget,
        rng: &mut Option<&mut dyn RngCore>,
        visit: &mut dyn FnMut(&Functor) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        if i == s.src.object_count() {
            for o in s.src.object_ids() {
                cur.morphisms[s.src.identity(o).0] = s.tgt.identity(cur.obj(o));
            }
            return morphisms(s, 0, cur, budget, rng, visit);
        }
        let mut cands = s.targets.to_vec();
        if let Some(r) = rng.as_deref_mut() {
            cands.shuffle(r);
        }
        for t in cands {
            budget.spend(1)?;
            cur.objects[i] = t;
            if objects(s, i + 1, cur, budget, rng, visit)?.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    fn morphisms(
        s: &Search,
        i: usize,
        cur: &mut Functor,
        budget: &mut Budget,
        rng: &mut Option<&mut dyn RngCore>,
        visit: &mut dyn FnMut(&Functor) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        if i == s.order.len() {
            return Ok(visit(cur));
        }
        let m = s.order[i];
        let (a, b) = (cur.obj(s.src.source(m)), cur.obj(s.src.target(m)));
        let mut cands = match s.rules[i] {
            Rule::Free => s.tgt.hom(a, b).to_vec(),
            Rule::Composite(g, f) => s.tgt.compose(cur.mor(g), cur.mor(f)).into_iter().collect(),
            Rule::Inverse(f) => s.tgt.inverse_of(cur.mor(f)).into_iter().collect(),
        };
        if let Some(r) = rng.as_deref_mut() {
            cands.shuffle(r);
        }
        for c in cands {
            budget.spend(1)?;
            cur.morphisms[m.0] = c;
            let ok = s.checks[i + 1]
                .iter()
                .all(|&(g, f, gf)| s.tgt.compose(cur.mor(g), cur.mor(f)) == Some(cur.mor(gf)));
            if ok && morphisms(s, i + 1, cur, budget, rng, visit)?.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    let search = Search {
        src,
        tgt,
        order: &order,
        rules: &rules,
        checks: &checks,
        targets: &targets,
    };
    objects(&search, 0, &mut current, budget, &mut rng, visit).map(drop)
}

#[derive(Debug, Clone, Copy)]
enum Rule {
    Free,
    Composite(MorId, MorId),
    Inverse(MorId),
}

/// Non-identity morphisms of `src` in search order, each either free or
/// forced as a composite or inverse of morphisms placed before it.
fn assignment_order(src: &FiniteCategory) -> (Vec<MorId>, Vec<Rule>) {
    let mut placed: Vec<bool> = src.morphism_ids().map(|m| src.is_identity(m)).collect();
    let inverses: Vec<Option<MorId>> = src.morphism_ids().map(|m| src.inverse_of(m)).collect();
    let mut order = Vec::new();
    let mut rules = Vec::new();
    let mut place = |m: MorId, rule: Rule, placed: &mut Vec<bool>| {
        placed[m.0] = true;
        order.push(m);
        rules.push(rule);
    };
    while let Some(free) = src.morphism_ids().find(|m| !placed[m.0]) {
        place(free, Rule::Free, &mut placed);
        let mut changed = true;
        while changed {
            changed = false;
            let known: Vec<MorId> = src.morphism_ids().filter(|m| placed[m.0]).collect();
            for &f in &known {
                if let Some(inv) = inverses[f.0] {
                    if !placed[inv.0] {
                        place(inv, Rule::Inverse(f), &mut placed);
                        changed = true;
                    }
                }
                for &g in &known {
                    if let Some(gf) = src.compose(g, f) {
                        if !placed[gf.0] {
                            place(gf, Rule::Composite(g, f), &mut placed);
                            changed = true;
                        }
                    }
                }
            }
        }
    }
    (order, rules)
}

/// Every functor `src -> tgt`.
pub fn functors(src: &FiniteCategory, tgt: &FiniteCategory, budget: &mut Budget) -> Result<Vec<Functor>> {
    let mut out = Vec::new();
    for_each_functor(src, tgt, budget, None, &mut |f| {
        out.push(f.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Calls `visit` on every natural transformation `from ⇒ to`.
pub fn for_each_nat_trans(
    src: &FiniteCategory,
    tgt: &FiniteCategory,
    from: &Functor,
    to: &Functor,
    budget: &mut Budget,
    mut rng: Option<&mut dyn RngCore>,
    visit: &mut dyn FnMut(&NatTrans) -> ControlFlow<()>,
) -> Result<()> {
    let n = src.object_count();
    // naturality of m is decidable once both endpoints have components
    let mut checks: Vec<Vec<MorId>> = vec![Vec::new(); n];
    for m in src.morphism_ids() {
        let r = src.source(m).0.max(src.target(m).0);
        checks[r].push(m);
    }
    let mut cur = NatTrans {
        components: vec![MorId(0); n],
    };

    #[allow(clippy::too_many_arguments)]
    fn go(
        i: usize,
        src: &FiniteCategory,
        tgt: &FiniteCategory,
        from: &Functor,
        to: &Functor,
        checks: &[Vec<MorId>],
        cur: &mut NatTrans,
        budget: &mut Budget,
        rng: &mut Option<&mut dyn RngCore>,
        visit: &mut dyn FnMut(&NatTrans) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        if i == src.object_count() {
            return Ok(visit(cur));
        }
        let o = ObjId(i);
        let mut cands = tgt.hom(from.obj(o), to.obj(o)).to_vec();
        if let Some(r) = rng.as_deref_mut() {
            cands.shuffle(r);
        }
        for c in cands {
            budget.spend(1)?;
            cur.components[i] = c;
            let ok = checks[i].iter().all(|&m| {
                let (x, y) = (src.source(m), src.target(m));
                tgt.compose(to.mor(m), cur.at(x)) == tgt.compose(cur.at(y), from.mor(m))
            });
            if ok && go(i + 1, src, tgt, from, to, checks, cur, budget, rng, visit)?.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    go(0, src, tgt, from, to, &checks, &mut cur, budget, &mut rng, visit).map(drop)
}

pub fn nat_transs(
    src: &FiniteCategory,
    tgt: &FiniteCategory,
    from: &Functor,
    to: &Functor,
    budget: &mut Budget,
) -> Result<Vec<NatTrans>> {
    let mut out = Vec::new();
    for_each_nat_trans(src, tgt, from, to, budget, None, &mut |t| {
        out.push(t.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}
