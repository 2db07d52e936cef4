//! The effective topology on `Fam(C)`: a family of maps covers when the
//! induced map of shapes from the coproduct is an effective epimorphism.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::category::{FiniteCategory, Functor, NatTrans, ObjId};
use crate::effective::{is_effective_epi, EffectiveEpiVerdict};
use crate::error::{Budget, Error, Result};
use crate::fam::{compose_fam, fam_limit, same_category, same_object, FamMorphism, FamObject, LimitDiagram};
use crate::groupoid::{copair, pi0, FiniteGroupoid};
use crate::sample::{fixture_categories, random_fam_morphism, random_family, random_functor, random_groupoid};

/// Maps with a common codomain.
#[derive(Debug, Clone)]
pub struct CoveringFamily {
    pub codomain: Arc<FamObject>,
    pub members: Vec<FamMorphism>,
}

impl CoveringFamily {
    pub fn new(codomain: Arc<FamObject>, members: Vec<FamMorphism>) -> Result<Self> {
        for (i, m) in members.iter().enumerate() {
            if !same_category(&m.codomain.category, &codomain.category) {
                return Err(Error::TargetMismatch);
            }
            if !same_object(&m.codomain, &codomain) {
                return Err(Error::Precondition(format!("member {i} has a different codomain")));
            }
        }
        Ok(CoveringFamily { codomain, members })
    }

    /// The coproduct of the member shapes and the induced map to the
    /// codomain's shape.
    pub fn induced_shape_map(&self) -> (FiniteGroupoid, Functor) {
        let shapes: Vec<&FiniteGroupoid> = self.members.iter().map(|m| &m.domain.shape).collect();
        let maps: Vec<&Functor> = self.members.iter().map(|m| &m.shape_map).collect();
        let (sum, _) = FiniteGroupoid::disjoint_union(&shapes);
        (sum, copair(&shapes, &maps))
    }
}

pub fn is_covering_family(c: &CoveringFamily) -> EffectiveEpiVerdict {
    let (sum, induced) = c.induced_shape_map();
    is_effective_epi(&sum, &c.codomain.shape, &induced)
}

/// `{Xᵢ ×_X Y -> Y}` for a cover `{Xᵢ -> X}` and `m: Y -> X`.
pub fn pullback_cover(c: &CoveringFamily, m: &FamMorphism, budget: &mut Budget) -> Result<CoveringFamily> {
    if !same_object(&m.codomain, &c.codomain) {
        return Err(Error::Precondition("the map does not land in the cover's codomain".into()));
    }
    let members = c
        .members
        .iter()
        .map(|f| {
            let limit = fam_limit(&LimitDiagram::Pullback(f.clone(), m.clone()), budget)?;
            Ok(limit.projections[1].clone())
        })
        .collect::<Result<Vec<_>>>()?;
    CoveringFamily::new(m.domain.clone(), members)
}

/// `{fᵢ ∘ f_ij}` for a cover `{fᵢ}` and a cover `{f_ij}` of each member's
/// domain.
pub fn compose_covers(c: &CoveringFamily, refinements: &[CoveringFamily]) -> Result<CoveringFamily> {
    if refinements.len() != c.members.len() {
        return Err(Error::Precondition("one refinement per member is required".into()));
    }
    let mut members = Vec::new();
    for (f, r) in c.members.iter().zip(refinements) {
        for g in &r.members {
            members.push(compose_fam(f, g)?);
        }
    }
    CoveringFamily::new(c.codomain.clone(), members)
}

/// The family `(X, !)` over the terminal category.
pub fn over_terminal(shape: FiniteGroupoid, terminal: &Arc<FiniteCategory>) -> Arc<FamObject> {
    let arrow = Functor::constant(&shape, terminal, ObjId(0));
    Arc::new(FamObject {
        shape,
        category: terminal.clone(),
        arrow,
    })
}

/// `Π∞` of a family of maps, as a family of maps over the terminal category.
pub fn shape_family(c: &CoveringFamily, terminal: &Arc<FiniteCategory>) -> CoveringFamily {
    let codomain = over_terminal(c.codomain.shape.clone(), terminal);
    let members = c
        .members
        .iter()
        .map(|m| {
            let domain = over_terminal(m.domain.shape.clone(), terminal);
            let components = NatTrans::identity(&domain.shape, terminal, &domain.arrow);
            FamMorphism {
                domain,
                codomain: codomain.clone(),
                shape_map: m.shape_map.clone(),
                components,
            }
        })
        .collect();
    CoveringFamily { codomain, members }
}

/// The point of `x` at object `o`: `σ(F(o)) -> x` with identity component.
fn point_at(x: &Arc<FamObject>, o: ObjId) -> FamMorphism {
    let c = &x.category;
    let fo = x.arrow.obj(o);
    FamMorphism {
        domain: Arc::new(FamObject::sigma(c.clone(), fo)),
        codomain: x.clone(),
        shape_map: Functor {
            objects: vec![o],
            morphisms: vec![x.shape.identity(o)],
        },
        components: NatTrans {
            components: vec![c.identity(fo)],
        },
    }
}

/// A cover of `x`: one point or one whole component per component of the
/// shape, plus up to two arbitrary extra maps.
pub fn random_cover(x: &Arc<FamObject>, rng: &mut dyn RngCore, budget: &mut Budget) -> Result<CoveringFamily> {
    let comps = pi0(&x.shape);
    let mut members = Vec::new();
    for block in &comps.blocks {
        if rng.gen_bool(0.5) {
            members.push(point_at(x, *block.choose(rng).expect("blocks are nonempty")));
        } else {
            members.push(x.restrict(block).1);
        }
    }
    for _ in 0..rng.gen_range(0..=2) {
        let e = random_family(&x.category, rng, 2, false, budget)?;
        if let Some(m) = random_fam_morphism(&e, x, rng, budget)? {
            members.push(m);
        }
    }
    members.shuffle(rng);
    CoveringFamily::new(x.clone(), members)
}

/// The inclusion of a skeleton: an equivalence in `Fam(C)`.
pub fn skeleton_inclusion(x: &Arc<FamObject>) -> FamMorphism {
    let reps: Vec<ObjId> = pi0(&x.shape).blocks.iter().map(|b| b[0]).collect();
    x.restrict(&reps).1
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AxiomTally {
    pub passed: usize,
    pub failed: usize,
    pub indeterminate: usize,
}

impl AxiomTally {
    fn record(&mut self, outcome: &Result<bool>) {
        match outcome {
            Ok(true) => self.passed += 1,
            Ok(false) => self.failed += 1,
            Err(e) if e.is_indeterminate() => self.indeterminate += 1,
            Err(_) => self.failed += 1,
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct AxiomReport {
    pub seed: u64,
    pub samples: usize,
    pub equivalence: AxiomTally,
    pub pullback: AxiomTally,
    pub composition: AxiomTally,
    pub refinement: AxiomTally,
    /// Over the terminal category, covers are exactly the `π₀`-surjective
    /// families.
    pub epimorphism_topology: AxiomTally,
    /// `Π∞` sends covers to covers of groupoids.
    pub site_morphism: AxiomTally,
    pub failures: Vec<String>,
}

impl AxiomReport {
    fn tallies(&self) -> [&AxiomTally; 6] {
        [
            &self.equivalence,
            &self.pullback,
            &self.composition,
            &self.refinement,
            &self.epimorphism_topology,
            &self.site_morphism,
        ]
    }

    pub fn all_passed(&self) -> bool {
        self.tallies().iter().all(|t| t.failed == 0 && t.indeterminate == 0)
    }

    pub fn has_failures(&self) -> bool {
        self.tallies().iter().any(|t| t.failed > 0)
    }

    pub fn is_indeterminate(&self) -> bool {
        !self.has_failures() && self.tallies().iter().any(|t| t.indeterminate > 0)
    }
}

/// `π₀`-surjectivity of a family of groupoid maps, computed directly.
fn hits_every_component(target: &FiniteGroupoid, maps: &[Functor]) -> bool {
    let comps = pi0(target);
    let mut hit = vec![false; comps.count()];
    for f in maps {
        for &o in &f.objects {
            hit[comps.block(o)] = true;
        }
    }
    hit.iter().all(|&h| h)
}

fn covers(c: &CoveringFamily) -> bool {
    is_covering_family(c).effective
}

/// Samples sites over the fixture categories and checks the pretopology
/// axioms, the comparison with the epimorphism topology on groupoids and the
/// action of `Π∞` on covers. Each sample has its own budget and generator
/// seeded from `seed` and the sample index.
pub fn pretopology_axiom_suite(seed: u64, samples: usize, budget_limit: u64) -> AxiomReport {
    let categories = fixture_categories();
    let terminal = categories
        .iter()
        .find(|(name, _)| *name == "terminal")
        .map(|(_, c)| c.clone())
        .expect("terminal fixture");
    let mut report = AxiomReport {
        seed,
        samples,
        ..AxiomReport::default()
    };
    for i in 0..samples {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
        let (name, c) = &categories[i % categories.len()];
        let mut budget = Budget::new(budget_limit);
        let x = match random_family(c, &mut rng, 3, false, &mut budget) {
            Ok(x) => x,
            Err(_) => {
                report.equivalence.indeterminate += 1;
                continue;
            }
        };
        let note = |report: &mut AxiomReport, axiom: &str, outcome: &Result<bool>| {
            if let Ok(false) | Err(_) = outcome {
                let detail = match outcome {
                    Err(e) => format!(": {e}"),
                    _ => String::new(),
                };
                report.failures.push(format!("sample {i} over {name}: {axiom}{detail}"));
            }
        };

        let equivalence = CoveringFamily::new(x.clone(), vec![skeleton_inclusion(&x)])
            .and_then(|s| Ok(covers(&s) && covers(&CoveringFamily::new(x.clone(), vec![FamMorphism::identity(&x)])?)));
        report.equivalence.record(&equivalence);
        note(&mut report, "equivalence", &equivalence);

        let cover = match random_cover(&x, &mut rng, &mut budget) {
            Ok(c) => c,
            Err(e) => {
                let outcome = Err(e);
                report.pullback.record(&outcome);
                note(&mut report, "cover generation", &outcome);
                continue;
            }
        };

        let pullback = (|| {
            let y = random_family(c, &mut rng, 2, false, &mut budget)?;
            let m = match random_fam_morphism(&y, &x, &mut rng, &mut budget)? {
                Some(m) => m,
                None => FamMorphism::identity(&x),
            };
            Ok(covers(&pullback_cover(&cover, &m, &mut budget)?))
        })();
        report.pullback.record(&pullback);
        note(&mut report, "pullback stability", &pullback);

        let composition = (|| {
            let refinements = cover
                .members
                .iter()
                .map(|m| random_cover(&m.domain, &mut rng, &mut budget))
                .collect::<Result<Vec<_>>>()?;
            Ok(covers(&compose_covers(&cover, &refinements)?))
        })();
        report.composition.record(&composition);
        note(&mut report, "composition stability", &composition);

        let refinement = (|| {
            let e = random_family(c, &mut rng, 2, false, &mut budget)?;
            let mut bigger = cover.clone();
            if let Some(m) = random_fam_morphism(&e, &x, &mut rng, &mut budget)? {
                bigger.members.push(m);
            }
            Ok(covers(&bigger))
        })();
        report.refinement.record(&refinement);
        note(&mut report, "refinement", &refinement);

        let epi = (|| {
            let y = random_groupoid(&mut rng, 4, true);
            let mut maps = Vec::new();
            for _ in 0..rng.gen_range(0..=2) {
                let s = random_groupoid(&mut rng, 3, false);
                if let Some(f) = random_functor(&s, &y, &mut rng, &mut budget)? {
                    maps.push((s, f));
                }
            }
            let codomain = over_terminal(y.clone(), &terminal);
            let members = maps
                .iter()
                .map(|(s, f)| {
                    let domain = over_terminal(s.clone(), &terminal);
                    let components = NatTrans::identity(&domain.shape, &terminal, &domain.arrow);
                    FamMorphism {
                        domain,
                        codomain: codomain.clone(),
                        shape_map: f.clone(),
                        components,
                    }
                })
                .collect();
            let family = CoveringFamily::new(codomain, members)?;
            let functors: Vec<Functor> = maps.into_iter().map(|(_, f)| f).collect();
            Ok(covers(&family) == hits_every_component(&y, &functors))
        })();
        report.epimorphism_topology.record(&epi);
        note(&mut report, "epimorphism topology", &epi);

        let site = Ok(covers(&cover) && covers(&shape_family(&cover, &terminal)));
        report.site_morphism.record(&site);
        note(&mut report, "shape of a cover", &site);
    }
    report
}
