//! Families of pointed sets versus retraction diagrams of sets.
//!
//! A retraction diagram is a copresheaf on the category with objects `[0]`,
//! `[1]` and maps `s: [0] -> [1]`, `r: [1] -> [0]` subject to `r∘s = id`.
//! [`functor_f`] takes fibers of `r` pointed by `s`; [`functor_g`] takes the
//! tagged disjoint union of carriers. Both composites are naturally
//! isomorphic to identities, and the isomorphisms are built explicitly.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::category::{FiniteCategory, Functor, MorId, ObjId};
use crate::error::Result;
use crate::fam::{decompose_connected, FamObject};
use crate::groupoid::FiniteGroupoid;
use crate::homotopy::all_functions;
use crate::report::{ValidationReport, Violation};

/// An element name: a plain string or a tagged pair `(index, element)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Atom(String),
    Pair { index: Box<Label>, element: Box<Label> },
}

impl Label {
    pub fn atom(s: impl Into<String>) -> Self {
        Label::Atom(s.into())
    }

    pub fn pair(index: &Label, element: &Label) -> Self {
        Label::Pair {
            index: Box::new(index.clone()),
            element: Box::new(element.clone()),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Atom(s) => f.write_str(s),
            Label::Pair { index, element } => write!(f, "({index},{element})"),
        }
    }
}

/// `s: base -> total`, `r: total -> base` as index vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RetractionDiagram {
    pub base: Vec<Label>,
    pub total: Vec<Label>,
    pub s: Vec<usize>,
    pub r: Vec<usize>,
}

/// Carriers indexed like `indices`; `basepoints[i]` is a position in
/// `carriers[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointedSetFamily {
    pub indices: Vec<Label>,
    pub carriers: Vec<Vec<Label>>,
    pub basepoints: Vec<usize>,
}

/// A natural transformation of retraction diagrams: maps on `[0]` and `[1]`
/// commuting with `s` and `r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramMorphism {
    pub base: Vec<usize>,
    pub total: Vec<usize>,
}

/// A map of index sets and a pointed map on each carrier into the carrier
/// over the image index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyMorphism {
    pub index: Vec<usize>,
    pub carriers: Vec<Vec<usize>>,
}

fn check_distinct(labels: &[Label], report: &mut ValidationReport) {
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l) {
            report.push(Violation::DuplicateId { id: l.to_string() });
        }
    }
}

pub fn validate_retraction(x: &RetractionDiagram) -> ValidationReport {
    let mut report = ValidationReport::new();
    check_distinct(&x.base, &mut report);
    check_distinct(&x.total, &mut report);
    for (context, map, len, range) in [("s", &x.s, x.base.len(), x.total.len()), ("r", &x.r, x.total.len(), x.base.len())] {
        if map.len() != len {
            report.push(Violation::TableSize {
                context: context.into(),
                expected: len,
                found: map.len(),
            });
        } else if map.iter().any(|&v| v >= range) {
            report.push(Violation::MapOutOfRange { context: context.into() });
        }
    }
    if report.is_valid() {
        for (p, &t) in x.s.iter().enumerate() {
            if x.r[t] != p {
                report.push(Violation::SectionNotRetracted {
                    element: x.base[p].to_string(),
                });
            }
        }
    }
    report.normalized()
}

pub fn validate_pointed_family(f: &PointedSetFamily) -> ValidationReport {
    let mut report = ValidationReport::new();
    check_distinct(&f.indices, &mut report);
    let n = f.indices.len();
    for (context, len) in [("carriers", f.carriers.len()), ("basepoints", f.basepoints.len())] {
        if len != n {
            report.push(Violation::TableSize {
                context: context.into(),
                expected: n,
                found: len,
            });
        }
    }
    if !report.is_valid() {
        return report.normalized();
    }
    for i in 0..n {
        check_distinct(&f.carriers[i], &mut report);
        if f.basepoints[i] >= f.carriers[i].len() {
            report.push(Violation::BasepointOutOfRange {
                index: f.indices[i].to_string(),
            });
        }
    }
    report.normalized()
}

pub fn is_diagram_morphism(x: &RetractionDiagram, y: &RetractionDiagram, m: &DiagramMorphism) -> bool {
    m.base.len() == x.base.len()
        && m.total.len() == x.total.len()
        && m.base.iter().all(|&b| b < y.base.len())
        && m.total.iter().all(|&t| t < y.total.len())
        && (0..x.base.len()).all(|p| m.total[x.s[p]] == y.s[m.base[p]])
        && (0..x.total.len()).all(|t| m.base[x.r[t]] == y.r[m.total[t]])
}

pub fn is_family_morphism(a: &PointedSetFamily, b: &PointedSetFamily, m: &FamilyMorphism) -> bool {
    m.index.len() == a.indices.len()
        && m.carriers.len() == a.indices.len()
        && (0..a.indices.len()).all(|i| {
            let j = m.index[i];
            j < b.indices.len()
                && m.carriers[i].len() == a.carriers[i].len()
                && m.carriers[i].iter().all(|&y| y < b.carriers[j].len())
                && m.carriers[i][a.basepoints[i]] == b.basepoints[j]
        })
}

pub fn compose_diagram_morphisms(g: &DiagramMorphism, f: &DiagramMorphism) -> DiagramMorphism {
    DiagramMorphism {
        base: f.base.iter().map(|&b| g.base[b]).collect(),
        total: f.total.iter().map(|&t| g.total[t]).collect(),
    }
}

pub fn compose_family_morphisms(g: &FamilyMorphism, f: &FamilyMorphism) -> FamilyMorphism {
    FamilyMorphism {
        index: f.index.iter().map(|&j| g.index[j]).collect(),
        carriers: f
            .carriers
            .iter()
            .enumerate()
            .map(|(i, c)| c.iter().map(|&y| g.carriers[f.index[i]][y]).collect())
            .collect(),
    }
}

/// Positions of `total` lying over each base element, in order.
fn fibers(x: &RetractionDiagram) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); x.base.len()];
    for (t, &p) in x.r.iter().enumerate() {
        out[p].push(t);
    }
    out
}

/// `X ↦ ⟨(r⁻¹(p), s(p))⟩_{p ∈ X[0]}`.
pub fn functor_f(x: &RetractionDiagram) -> PointedSetFamily {
    let fib = fibers(x);
    PointedSetFamily {
        indices: x.base.clone(),
        carriers: fib.iter().map(|f| f.iter().map(|&t| x.total[t].clone()).collect()).collect(),
        basepoints: (0..x.base.len())
            .map(|p| fib[p].iter().position(|&t| t == x.s[p]).expect("r∘s = id"))
            .collect(),
    }
}

pub fn functor_f_map(x: &RetractionDiagram, y: &RetractionDiagram, m: &DiagramMorphism) -> FamilyMorphism {
    let (fx, fy) = (fibers(x), fibers(y));
    FamilyMorphism {
        index: m.base.clone(),
        carriers: fx
            .iter()
            .enumerate()
            .map(|(p, fiber)| {
                let target = &fy[m.base[p]];
                fiber
                    .iter()
                    .map(|&t| target.iter().position(|&u| u == m.total[t]).expect("squares commute"))
                    .collect()
            })
            .collect(),
    }
}

/// Offsets of each carrier inside the tagged disjoint union.
fn offsets(f: &PointedSetFamily) -> Vec<usize> {
    let mut out = Vec::with_capacity(f.carriers.len());
    let mut acc = 0;
    for c in &f.carriers {
        out.push(acc);
        acc += c.len();
    }
    out
}

/// `⟨Xᵢ⟩ ↦ (I ⇄ ∐ Xᵢ)` with `r` the tag projection and `s` the basepoints.
pub fn functor_g(f: &PointedSetFamily) -> RetractionDiagram {
    let off = offsets(f);
    let mut total = Vec::new();
    let mut r = Vec::new();
    for (i, carrier) in f.carriers.iter().enumerate() {
        for x in carrier {
            total.push(Label::pair(&f.indices[i], x));
            r.push(i);
        }
    }
    RetractionDiagram {
        base: f.indices.clone(),
        total,
        s: (0..f.indices.len()).map(|i| off[i] + f.basepoints[i]).collect(),
        r,
    }
}

pub fn functor_g_map(a: &PointedSetFamily, b: &PointedSetFamily, m: &FamilyMorphism) -> DiagramMorphism {
    let off = offsets(b);
    let total: Vec<usize> = m
        .carriers
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.iter().map(move |&y| (i, y)))
        .map(|(i, y)| off[m.index[i]] + y)
        .collect();
    debug_assert_eq!(total.len(), a.carriers.iter().map(Vec::len).sum::<usize>());
    DiagramMorphism {
        base: m.index.clone(),
        total,
    }
}

/// `G(F(x)) -> x`: identity on `[0]`, `(p, t) ↦ t` on `[1]`.
pub fn counit_diagram(x: &RetractionDiagram) -> DiagramMorphism {
    DiagramMorphism {
        base: (0..x.base.len()).collect(),
        total: fibers(x).into_iter().flatten().collect(),
    }
}

/// `F(G(a)) -> a`: identity on indices, `(i, x) ↦ x` on carriers.
pub fn counit_family(a: &PointedSetFamily) -> FamilyMorphism {
    FamilyMorphism {
        index: (0..a.indices.len()).collect(),
        carriers: a.carriers.iter().map(|c| (0..c.len()).collect()).collect(),
    }
}

fn is_bijection(map: &[usize], size: usize) -> bool {
    map.len() == size && map.iter().collect::<HashSet<_>>().len() == size && map.iter().all(|&v| v < size)
}

pub fn is_diagram_iso(x: &RetractionDiagram, y: &RetractionDiagram, m: &DiagramMorphism) -> bool {
    is_diagram_morphism(x, y, m) && is_bijection(&m.base, y.base.len()) && is_bijection(&m.total, y.total.len())
}

pub fn is_family_iso(a: &PointedSetFamily, b: &PointedSetFamily, m: &FamilyMorphism) -> bool {
    is_family_morphism(a, b, m)
        && is_bijection(&m.index, b.indices.len())
        && (0..a.indices.len()).all(|i| is_bijection(&m.carriers[i], b.carriers[m.index[i]].len()))
}

/// Every commuting map of retraction diagrams `x -> y`.
pub fn diagram_morphisms(x: &RetractionDiagram, y: &RetractionDiagram) -> Vec<DiagramMorphism> {
    let fy = fibers(y);
    let mut out = Vec::new();
    for base in all_functions(x.base.len(), y.base.len()) {
        // each t must land in the fiber over base(r t); sections are forced
        let choices: Vec<Vec<usize>> = (0..x.total.len())
            .map(|t| {
                let p = x.r[t];
                if x.s[p] == t {
                    vec![y.s[base[p]]]
                } else {
                    fy[base[p]].clone()
                }
            })
            .collect();
        let mut pick = vec![0; choices.len()];
        'outer: loop {
            if choices.iter().all(|c| !c.is_empty()) {
                out.push(DiagramMorphism {
                    base: base.clone(),
                    total: pick.iter().zip(&choices).map(|(&k, c)| c[k]).collect(),
                });
            } else {
                break;
            }
            for k in 0..pick.len() {
                pick[k] += 1;
                if pick[k] < choices[k].len() {
                    continue 'outer;
                }
                pick[k] = 0;
            }
            break;
        }
    }
    out
}

/// Every morphism of pointed-set families `a -> b`.
pub fn family_morphisms(a: &PointedSetFamily, b: &PointedSetFamily) -> Vec<FamilyMorphism> {
    let mut out = Vec::new();
    for index in all_functions(a.indices.len(), b.indices.len()) {
        // pointed maps per index, as lists of alternatives
        let per: Vec<Vec<Vec<usize>>> = (0..a.indices.len())
            .map(|i| {
                let j = index[i];
                all_functions(a.carriers[i].len(), b.carriers[j].len())
                    .into_iter()
                    .filter(|f| f[a.basepoints[i]] == b.basepoints[j])
                    .collect()
            })
            .collect();
        if per.iter().any(Vec::is_empty) {
            continue;
        }
        let mut pick = vec![0; per.len()];
        'outer: loop {
            out.push(FamilyMorphism {
                index: index.clone(),
                carriers: pick.iter().zip(&per).map(|(&k, c)| c[k].clone()).collect(),
            });
            for k in 0..pick.len() {
                pick[k] += 1;
                if pick[k] < per[k].len() {
                    continue 'outer;
                }
                pick[k] = 0;
            }
            break;
        }
    }
    out
}

fn letter(i: usize) -> Label {
    Label::atom(((b'a' + i as u8) as char).to_string())
}

/// Every retraction diagram with `total = {a, b, …}` of size at most
/// `max_total` and `base = {0, 1, …}`.
pub fn all_retraction_diagrams(max_total: usize) -> Vec<RetractionDiagram> {
    let mut out = Vec::new();
    for n in 0..=max_total {
        for k in 0..=n {
            for r in all_functions(n, k) {
                for s in all_functions(k, n) {
                    if (0..k).all(|p| r[s[p]] == p) {
                        out.push(RetractionDiagram {
                            base: (0..k).map(|p| Label::atom(p.to_string())).collect(),
                            total: (0..n).map(letter).collect(),
                            s,
                            r: r.clone(),
                        });
                    }
                }
            }
        }
    }
    out
}

/// Every pointed-set family with at most `max_indices` indices and nonempty
/// carriers of size at most `max_carrier`.
pub fn all_pointed_families(max_indices: usize, max_carrier: usize) -> Vec<PointedSetFamily> {
    let options: Vec<(usize, usize)> = (1..=max_carrier).flat_map(|c| (0..c).map(move |b| (c, b))).collect();
    let mut out = Vec::new();
    for m in 0..=max_indices {
        for choice in all_functions(m, options.len()) {
            out.push(PointedSetFamily {
                indices: (0..m).map(|i| Label::atom(i.to_string())).collect(),
                carriers: choice.iter().map(|&o| (0..options[o].0).map(letter).collect()).collect(),
                basepoints: choice.iter().map(|&o| options[o].1).collect(),
            });
        }
    }
    out
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RoundtripReport {
    pub diagrams: usize,
    pub families: usize,
    /// Diagrams or families whose round-trip component is not an isomorphism.
    pub iso_failures: usize,
    pub naturality_checked: usize,
    pub naturality_failures: usize,
}

impl RoundtripReport {
    pub fn holds(&self) -> bool {
        self.iso_failures == 0 && self.naturality_failures == 0
    }
}

/// Checks `G∘F ≅ id` on every diagram and `F∘G ≅ id` on every family, and
/// naturality of both along `samples` seeded morphisms of each kind.
pub fn roundtrip_check(
    diagrams: &[RetractionDiagram],
    families: &[PointedSetFamily],
    samples: usize,
    seed: u64,
) -> RoundtripReport {
    let mut report = RoundtripReport {
        diagrams: diagrams.len(),
        families: families.len(),
        ..RoundtripReport::default()
    };
    for x in diagrams {
        if !is_diagram_iso(&functor_g(&functor_f(x)), x, &counit_diagram(x)) {
            report.iso_failures += 1;
        }
    }
    for a in families {
        if !is_family_iso(&functor_f(&functor_g(a)), a, &counit_family(a)) {
            report.iso_failures += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        if let (Some(x), Some(y)) = (diagrams.choose(&mut rng), diagrams.choose(&mut rng)) {
            if let Some(m) = diagram_morphisms(x, y).choose(&mut rng) {
                let (fx, fy) = (functor_f(x), functor_f(y));
                let gf = functor_g_map(&fx, &fy, &functor_f_map(x, y, m));
                let left = compose_diagram_morphisms(&counit_diagram(y), &gf);
                let right = compose_diagram_morphisms(m, &counit_diagram(x));
                report.naturality_checked += 1;
                if left != right {
                    report.naturality_failures += 1;
                }
            }
        }
        if let (Some(a), Some(b)) = (families.choose(&mut rng), families.choose(&mut rng)) {
            if let Some(m) = family_morphisms(a, b).choose(&mut rng) {
                let (ga, gb) = (functor_g(a), functor_g(b));
                let fg = functor_f_map(&ga, &gb, &functor_g_map(a, b, m));
                let left = compose_family_morphisms(&counit_family(b), &fg);
                let right = compose_family_morphisms(m, &counit_family(a));
                report.naturality_checked += 1;
                if left != right {
                    report.naturality_failures += 1;
                }
            }
        }
    }
    report
}

/// The skeleton of finite pointed sets `[1], …, [max]`, each pointed at `0`,
/// with all pointed maps. A map `[n] -> [m]` is named by its values.
pub fn pointed_set_skeleton(max: usize) -> FiniteCategory {
    let objects: Vec<String> = (1..=max).map(|n| format!("[{n}]")).collect();
    let mut maps: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for n in 1..=max {
        for m in 1..=max {
            for rest in all_functions(n - 1, m) {
                let mut f = vec![0];
                f.extend(rest);
                maps.push((n, m, f));
            }
        }
    }
    let lookup: HashMap<(usize, usize, Vec<usize>), usize> =
        maps.iter().enumerate().map(|(i, (n, m, f))| ((*n, *m, f.clone()), i)).collect();
    let identities: Vec<MorId> = (1..=max).map(|n| MorId(lookup[&(n, n, (0..n).collect())])).collect();
    let named: Vec<(String, ObjId, ObjId)> = maps
        .iter()
        .map(|(n, m, f)| {
            let values: Vec<String> = f.iter().map(usize::to_string).collect();
            (format!("[{n}]->[{m}]:{}", values.join("")), ObjId(n - 1), ObjId(m - 1))
        })
        .collect();
    FiniteCategory::from_parts(objects, named, identities, |g, f| {
        let (n, m1, fv) = &maps[f.0];
        let (m2, k, gv) = &maps[g.0];
        if m1 != m2 {
            return None;
        }
        let composite: Vec<usize> = fv.iter().map(|&v| gv[v]).collect();
        lookup.get(&(*n, *k, composite)).copied().map(MorId)
    })
}

/// The family of pointed sets as a discrete-shape object of `Fam` over the
/// skeleton: index `i` goes to `[|carrier i|]`.
pub fn to_fam(f: &PointedSetFamily, skeleton: &Arc<FiniteCategory>) -> Result<FamObject> {
    let names: Vec<String> = f.indices.iter().map(Label::to_string).collect();
    let shape = FiniteGroupoid::discrete(&names);
    let objects: Vec<ObjId> = f.carriers.iter().map(|c| ObjId(c.len() - 1)).collect();
    let morphisms = objects.iter().map(|&o| skeleton.identity(o)).collect();
    FamObject::new(shape, skeleton.clone(), Functor { objects, morphisms })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pi0CorollaryReport {
    pub base_size: usize,
    pub index_count: usize,
    /// Components of the corresponding object of `Fam` over the skeleton.
    pub components: usize,
}

impl Pi0CorollaryReport {
    pub fn holds(&self) -> bool {
        self.index_count == self.base_size && self.components == self.base_size
    }
}

pub fn pi0_corollary_check(x: &RetractionDiagram) -> Result<Pi0CorollaryReport> {
    let widest = fibers(x).iter().map(Vec::len).max().unwrap_or(1).max(1);
    pi0_corollary_check_in(x, &Arc::new(pointed_set_skeleton(widest)))
}

/// As [`pi0_corollary_check`], over a skeleton large enough for every fiber
/// of `x`.
pub fn pi0_corollary_check_in(x: &RetractionDiagram, skeleton: &Arc<FiniteCategory>) -> Result<Pi0CorollaryReport> {
    let f = functor_f(x);
    if f.carriers.iter().any(|c| c.len() > skeleton.object_count()) {
        return Err(crate::Error::Precondition("a fiber is larger than the skeleton".into()));
    }
    let fam = Arc::new(to_fam(&f, skeleton)?);
    Ok(Pi0CorollaryReport {
        base_size: x.base.len(),
        index_count: f.indices.len(),
        components: decompose_connected(&fam)?.components.len(),
    })
}
