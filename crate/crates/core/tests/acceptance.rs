//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use famcat::category::{
    functors, nat_transs, validate_category_tables, validate_functor, validate_nat_trans,
};
use famcat::cech::{cech_nerve, simplicial_identity_failures};
use famcat::edge_path::{edge_path_pi1, DEFAULT_COSET_CAP};
use famcat::effective::is_effective_epi;
use famcat::equivalence::find_equivalence;
use famcat::fam::{
    compose_fam, extensivity_check, fam_colimit, fam_coproduct, fam_limit, hom_fam, validate_two_cell, FamDiagram,
    LimitDiagram, PseudoCocone, PseudoCone,
};
use famcat::group::{find_conjugator, find_isomorphism};
use famcat::groupoid::{aut_group, validate_groupoid_tables, GroupoidTables};
use famcat::homotopy::{adjunction_check, basepoint_change_along, basepoint_change_iso};
use famcat::limits::find_terminal;
use famcat::locus::{
    all_pointed_families, all_retraction_diagrams, pi0_corollary_check_in, pointed_set_skeleton, roundtrip_check,
    validate_retraction, Label, RetractionDiagram,
};
use famcat::sample::{
    bz2_category, diamond, random_family, random_fam_morphism, random_functor, random_groupoid, walking_arrow,
};
use famcat::site::{is_covering_family, over_terminal, pretopology_axiom_suite, CoveringFamily};
use famcat::{
    Budget, FamMorphism, FamObject, FiniteCategory, FiniteGroup, FiniteGroupoid, Functor, MorId, NatTrans, ObjId,
    ValidationReport, Violation, DEFAULT_BUDGET,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

fn within(elapsed: Duration, limit: Duration) -> bool {
    elapsed < limit
}

// ---------------------------------------------------------------------------
// Oracles

/// Union-find over `0..n` with path halving.
struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Whether the objects in `hits` meet every connected component of `y`.
fn hits_every_component(y: &FiniteGroupoid, hits: impl IntoIterator<Item = ObjId>) -> bool {
    let n = y.object_count();
    let mut dsu = Dsu::new(n);
    for m in y.morphism_ids() {
        dsu.union(y.source(m).0, y.target(m).0);
    }
    let mut hit = vec![false; n];
    for o in hits {
        let r = dsu.find(o.0);
        hit[r] = true;
    }
    (0..n).all(|o| {
        let r = dsu.find(o);
        hit[r]
    })
}

fn cartesian<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for options in choices {
        let mut next = Vec::with_capacity(out.len() * options.len());
        for prefix in &out {
            for o in options {
                let mut v = prefix.clone();
                v.push(o.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out
}

// ---------------------------------------------------------------------------
// Criterion 1

fn mor(c: &FiniteCategory, source: &str, target: &str) -> String {
    let (s, t) = (c.find_object(source).unwrap(), c.find_object(target).unwrap());
    let m = c.hom(s, t).iter().copied().find(|&m| s != t || !c.is_identity(m)).unwrap();
    c.morphism_name(m).to_string()
}

fn names_violation(report: &ValidationReport, expected: &Violation) -> bool {
    report.violations.contains(expected)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let z3 = FiniteGroupoid::delooping(&FiniteGroup::cyclic(3));
    let s3 = FiniteGroupoid::delooping(&FiniteGroup::symmetric3());
    let chaotic3 = FiniteGroupoid::chaotic(&["x", "y", "z"]);
    let base = vec![Label::atom("x"), Label::atom("y")];
    let total = vec![Label::atom("a"), Label::atom("b"), Label::atom("c")];
    let retraction = RetractionDiagram {
        base: base.clone(),
        total: total.clone(),
        s: vec![0, 1],
        r: vec![0, 1, 1],
    };

    let id_s3 = Functor::identity(&s3);
    let valid: Vec<(&str, ValidationReport)> = vec![
        ("diamond", validate_category_tables(&diamond().to_tables())),
        ("walking arrow", validate_category_tables(&walking_arrow().to_tables())),
        ("B(Z/2) category", validate_category_tables(&bz2_category().to_tables())),
        ("terminal", validate_category_tables(&FiniteCategory::terminal().to_tables())),
        ("pointed-set skeleton", validate_category_tables(&pointed_set_skeleton(2).to_tables())),
        ("B(Z/3)", validate_groupoid_tables(&z3.to_tables())),
        ("chaotic(3)", validate_groupoid_tables(&chaotic3.to_tables())),
        (
            "thickened S3",
            validate_groupoid_tables(&FiniteGroupoid::thickened(&FiniteGroup::symmetric3(), &["x", "y"]).to_tables()),
        ),
        ("identity functor and transformation on B(S3)", {
            let mut r = validate_functor(&s3, &s3, &id_s3);
            r.extend(validate_nat_trans(&s3, &s3, &id_s3, &id_s3, &NatTrans::identity(&s3, &s3, &id_s3)));
            r
        }),
        ("retraction diagram", validate_retraction(&retraction)),
    ];
    let mut failures: Vec<String> = valid
        .iter()
        .filter(|(_, r)| !r.is_valid())
        .map(|(name, r)| format!("valid fixture `{name}` rejected: {r}"))
        .collect();

    let mut mutated: Vec<(&str, ValidationReport, Violation)> = Vec::new();

    let d = diamond();
    let mut t = d.to_tables();
    t.identities.retain(|[o, _]| o != "a");
    mutated.push((
        "identity removed",
        validate_category_tables(&t),
        Violation::MissingIdentity { object: "a".into() },
    ));

    let (ab, bd) = (mor(&d, "a", "b"), mor(&d, "b", "d"));
    let mut t = d.to_tables();
    t.composition.retain(|[f, g, _]| !(f == &ab && g == &bd));
    mutated.push((
        "composite removed",
        validate_category_tables(&t),
        Violation::MissingComposite { g: bd.clone(), f: ab.clone() },
    ));

    let w = walking_arrow();
    let arrow = mor(&w, "0", "1");
    let mut t = w.to_tables();
    t.composition.push([arrow.clone(), "ghost".into(), arrow.clone()]);
    let report = validate_category_tables(&t);
    let ghost = report
        .violations
        .iter()
        .find(|v| matches!(v, Violation::UnknownMorphism { id, .. } if id == "ghost"))
        .cloned()
        .unwrap_or(Violation::UnknownMorphism {
            context: "composition".into(),
            id: "ghost".into(),
        });
    mutated.push(("unknown morphism referenced", report, ghost));

    let mut t: GroupoidTables = z3.to_tables();
    for triple in &mut t.category.composition {
        if triple[0] == "1" && triple[1] == "1" {
            triple[2] = "0".into();
        }
    }
    let report = validate_groupoid_tables(&t);
    let assoc = report
        .violations
        .iter()
        .find(|v| matches!(v, Violation::Associativity { .. }))
        .cloned()
        .unwrap_or(Violation::Associativity {
            h: "?".into(),
            g: "?".into(),
            f: "?".into(),
        });
    mutated.push(("Z/3 composite altered", report, assoc));

    let mut t = bz2_category().to_tables();
    for triple in &mut t.composition {
        if triple[0] == "1" && triple[1] == "0" {
            triple[2] = "0".into();
        }
    }
    mutated.push((
        "identity absorbs",
        validate_category_tables(&t),
        Violation::LeftIdentity { morphism: "1".into() },
    ));

    let xy = mor(&chaotic3, "x", "y");
    let mut t = chaotic3.to_tables();
    t.inverses.retain(|[f, _]| f != &xy);
    mutated.push((
        "inverse removed",
        validate_groupoid_tables(&t),
        Violation::MissingInverse { morphism: xy.clone() },
    ));

    let mut t = z3.to_tables();
    for pair in &mut t.inverses {
        if pair[0] == "1" {
            pair[1] = "1".into();
        }
    }
    mutated.push((
        "wrong inverse",
        validate_groupoid_tables(&t),
        Violation::InverseLaw {
            morphism: "1".into(),
            inverse: "1".into(),
        },
    ));

    let not_functor = Functor {
        objects: vec![ObjId(0)],
        morphisms: vec![MorId(0), MorId(1), MorId(0)],
    };
    mutated.push((
        "composite not preserved",
        validate_functor(&z3, &z3, &not_functor),
        Violation::FunctorComposite {
            g: "1".into(),
            f: "1".into(),
        },
    ));

    let s3_group = FiniteGroup::symmetric3();
    let non_central = (0..s3_group.order())
        .find(|&a| (0..s3_group.order()).any(|b| s3_group.mul(a, b) != s3_group.mul(b, a)))
        .unwrap();
    let twist = NatTrans {
        components: vec![MorId(non_central)],
    };
    let report = validate_nat_trans(&s3, &s3, &id_s3, &id_s3, &twist);
    let naturality = report
        .violations
        .iter()
        .find(|v| matches!(v, Violation::Naturality { .. }))
        .cloned()
        .unwrap_or(Violation::Naturality { morphism: "?".into() });
    mutated.push(("non-natural component", report, naturality));

    let broken = RetractionDiagram {
        base,
        total,
        s: vec![0, 1],
        r: vec![1, 0, 0],
    };
    mutated.push((
        "section not retracted",
        validate_retraction(&broken),
        Violation::SectionNotRetracted { element: "x".into() },
    ));

    for (name, report, expected) in &mutated {
        if report.is_valid() {
            failures.push(format!("mutation `{name}` accepted"));
        } else if !names_violation(report, expected) {
            failures.push(format!("mutation `{name}` did not name {expected:?}: {report}"));
        }
    }
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && valid.len() == 10 && mutated.len() == 10 && within(elapsed, Duration::from_secs(1));
    Outcome::new(
        pass,
        format!(
            "{} valid accepted, {} mutations rejected with the named instance, {elapsed:.2?}{}",
            valid.len(),
            mutated.len(),
            if failures.is_empty() { String::new() } else { format!("; {}", failures.join("; ")) }
        ),
    )
}

// ---------------------------------------------------------------------------
// Criterion 2

fn criterion_2() -> Outcome {
    let mut budget = Budget::new(DEFAULT_BUDGET);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut checked, mut agree, mut effective) = (0, 0, 0);
    while checked < 200 {
        let x = random_groupoid(&mut rng, 6, true);
        let y = random_groupoid(&mut rng, 6, true);
        let Ok(Some(f)) = random_functor(&x, &y, &mut rng, &mut budget) else {
            continue;
        };
        checked += 1;
        let oracle = hits_every_component(&y, x.object_ids().map(|o| f.obj(o)));
        let verdict = is_effective_epi(&x, &y, &f).effective;
        effective += usize::from(oracle);
        agree += usize::from(oracle == verdict);
    }
    Outcome::new(
        agree == checked,
        format!("{agree}/{checked} functors agree with the union-find oracle ({effective} effective)"),
    )
}

// ---------------------------------------------------------------------------
// Criterion 3

fn discrete_families(c: &Arc<FiniteCategory>, max_components: usize) -> Vec<Arc<FamObject>> {
    let mut out = Vec::new();
    for k in 0..=max_components {
        let names: Vec<String> = (0..k).map(|i| format!("p{i}")).collect();
        let shape = FiniteGroupoid::discrete(&names);
        let choices: Vec<Vec<ObjId>> = (0..k).map(|_| c.object_ids().collect()).collect();
        for objects in cartesian(&choices) {
            let morphisms = shape.morphism_ids().map(|m| c.identity(objects[shape.source(m).0])).collect();
            let arrow = Functor { objects, morphisms };
            out.push(Arc::new(FamObject::new(shape.clone(), c.clone(), arrow).expect("discrete family")));
        }
    }
    out
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let categories = [
        ("diamond", Arc::new(diamond())),
        ("walking arrow", Arc::new(walking_arrow())),
        ("terminal", Arc::new(FiniteCategory::terminal())),
    ];
    let mut failures = Vec::new();
    let (mut exhaustive, mut naturality) = (0, 0);
    let mut pool = Vec::new();
    for (name, c) in &categories {
        for f in discrete_families(c, 4) {
            for index_size in 1..=3 {
                let mut budget = Budget::new(DEFAULT_BUDGET);
                match adjunction_check(&f, index_size, 0, 0, &mut budget) {
                    Ok(r) if r.holds() => exhaustive += 1,
                    Ok(r) => failures.push(format!("{name}: {r:?}")),
                    Err(e) => failures.push(format!("{name}: {e}")),
                }
            }
            pool.push(f);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for seed in 0..25 {
        let f = &pool[rng.gen_range(0..pool.len())];
        let index_size = rng.gen_range(1..=3);
        let mut budget = Budget::new(DEFAULT_BUDGET);
        match adjunction_check(f, index_size, 2, seed, &mut budget) {
            Ok(r) if r.holds() => naturality += r.naturality_checked,
            Ok(r) => failures.push(format!("naturality: {r:?}")),
            Err(e) => failures.push(format!("naturality: {e}")),
        }
    }
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && naturality >= 50 && within(elapsed, Duration::from_secs(30));
    Outcome::new(
        pass,
        format!(
            "{exhaustive} (family, |I|) pairs with |Hom| = |I|^|π₀|, {naturality} naturality pairs, {elapsed:.2?}{}",
            first_failures(&failures)
        ),
    )
}

fn first_failures(failures: &[String]) -> String {
    if failures.is_empty() {
        String::new()
    } else {
        format!("; {} failures, first: {}", failures.len(), failures[0])
    }
}

// ---------------------------------------------------------------------------
// Criteria 4 and 5

fn connected_fixtures() -> Vec<(String, FiniteGroupoid)> {
    let z2 = FiniteGroup::cyclic(2);
    let groups = [
        ("1", FiniteGroup::trivial()),
        ("Z/2", z2.clone()),
        ("Z/3", FiniteGroup::cyclic(3)),
        ("Z/2×Z/2", FiniteGroup::product(&z2, &z2)),
        ("Z/4", FiniteGroup::cyclic(4)),
        ("Z/6", FiniteGroup::cyclic(6)),
        ("S3", FiniteGroup::symmetric3()),
        ("D4", FiniteGroup::dihedral(4)),
        ("Q8", FiniteGroup::quaternion()),
        ("A4", FiniteGroup::alternating4()),
    ];
    let mut out = Vec::new();
    for (name, g) in &groups {
        assert!(g.order() <= 12);
        out.push((format!("B({name})"), FiniteGroupoid::delooping(g)));
        out.push((format!("B({name}) on 2 objects"), FiniteGroupoid::thickened(g, &["x", "y"])));
    }
    out.push(("Z/3 on 3 objects".into(), FiniteGroupoid::thickened(&groups[2].1, &["x", "y", "z"])));
    out.push(("chaotic(3)".into(), FiniteGroupoid::chaotic(&["x", "y", "z"])));
    out.push(("point".into(), FiniteGroupoid::point()));
    out
}

fn criterion_4() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for (name, g) in connected_fixtures() {
        for x in g.object_ids() {
            checked += 1;
            let result = edge_path_pi1(&g, x, DEFAULT_COSET_CAP).and_then(|e| Ok((e, aut_group(&g, x)?)));
            match result {
                Ok((e, a)) if find_isomorphism(&e, &a).found().is_some() => {}
                Ok((e, a)) => failures.push(format!("{name}: orders {} and {}", e.order(), a.order())),
                Err(err) => failures.push(format!("{name}: {err}")),
            }
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!(
            "isomorphism found at {}/{checked} basepoints{}",
            checked - failures.len(),
            first_failures(&failures)
        ),
    )
}

fn criterion_5() -> Outcome {
    let terminal = Arc::new(FiniteCategory::terminal());
    let mut failures = Vec::new();
    let (mut pairs, mut paths) = (0, 0);
    for (name, g) in connected_fixtures() {
        let f = over_terminal(g.clone(), &terminal);
        for x0 in g.object_ids() {
            for x1 in g.object_ids() {
                pairs += 1;
                let chosen = match basepoint_change_iso(&f, x0, x1) {
                    Ok(iso) if iso.is_valid() => iso,
                    Ok(_) => {
                        failures.push(format!("{name}: invalid isomorphism"));
                        continue;
                    }
                    Err(e) => {
                        failures.push(format!("{name}: {e}"));
                        continue;
                    }
                };
                for &p in g.hom(x0, x1) {
                    paths += 1;
                    match basepoint_change_along(&g, p) {
                        Ok(other) if other.is_valid() && find_conjugator(&chosen, &other).is_some() => {}
                        Ok(_) => failures.push(format!("{name}: no conjugator along {}", g.morphism_name(p))),
                        Err(e) => failures.push(format!("{name}: {e}")),
                    }
                }
            }
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!(
            "{pairs} basepoint pairs valid, {paths} paths differ by an inner automorphism{}",
            first_failures(&failures)
        ),
    )
}

// ---------------------------------------------------------------------------
// Criterion 6

fn over_terminal_map(
    domain: &Arc<FamObject>,
    codomain: &Arc<FamObject>,
    shape_map: Functor,
    terminal: &FiniteCategory,
) -> FamMorphism {
    let point = terminal.identity(ObjId(0));
    FamMorphism {
        domain: domain.clone(),
        codomain: codomain.clone(),
        shape_map,
        components: NatTrans {
            components: vec![point; domain.shape.object_count()],
        },
    }
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let report = pretopology_axiom_suite(6, 100, DEFAULT_BUDGET);
    let mut failures: Vec<String> = report.failures.clone();
    if !report.all_passed() {
        failures.push(format!("axiom suite: {report:?}"));
    }

    let terminal = Arc::new(FiniteCategory::terminal());
    let mut budget = Budget::unlimited();
    let mut agree = 0;
    for seed in 0..100 {
        let mut rng = ChaCha8Rng::seed_from_u64(600 + seed);
        let y = random_groupoid(&mut rng, 4, true);
        let codomain = over_terminal(y.clone(), &terminal);
        let mut members = Vec::new();
        for _ in 0..rng.gen_range(0..=3) {
            let z = random_groupoid(&mut rng, 3, true);
            if let Some(f) = random_functor(&z, &y, &mut rng, &mut budget).expect("unlimited budget") {
                let domain = over_terminal(z, &terminal);
                members.push(over_terminal_map(&domain, &codomain, f, &terminal));
            }
        }
        let oracle = hits_every_component(&y, members.iter().flat_map(|m| m.shape_map.objects.iter().copied()));
        match CoveringFamily::new(codomain, members) {
            Ok(c) if is_covering_family(&c).effective == oracle => agree += 1,
            Ok(_) => failures.push(format!("seed {seed}: cover verdict differs from π₀-surjectivity")),
            Err(e) => failures.push(format!("seed {seed}: {e}")),
        }
    }
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && within(elapsed, Duration::from_secs(120));
    Outcome::new(
        pass,
        format!(
            "equivalence {}/{}, pullback {}/{}, composition {}/{}, terminal-site agreement {agree}/100, {elapsed:.2?}{}",
            report.equivalence.passed,
            report.samples,
            report.pullback.passed,
            report.samples,
            report.composition.passed,
            report.samples,
            first_failures(&failures)
        ),
    )
}

// ---------------------------------------------------------------------------
// Criterion 7

fn criterion_7() -> Outcome {
    let point = FiniteGroupoid::point();
    let bz2 = FiniteGroupoid::delooping(&FiniteGroup::cyclic(2));
    let f = Functor::constant(&point, &bz2, ObjId(0));
    let mut budget = Budget::new(DEFAULT_BUDGET);
    let nerve = match cech_nerve(&point, &bz2, &f, 2, &mut budget) {
        Ok(n) => n,
        Err(e) => return Outcome::new(false, format!("nerve: {e}")),
    };
    let level1 = &nerve.levels[1].groupoid;
    let discrete = FiniteGroupoid::discrete(&["0", "1"]);
    let equivalent = matches!(find_equivalence(level1, &discrete), Ok(Some(_)));
    let failures = simplicial_identity_failures(&nerve);
    Outcome::new(
        equivalent && failures.is_empty(),
        format!(
            "level 1 has {} objects and {} morphisms, equivalent to two points: {equivalent}; {} simplicial identity failures",
            level1.object_count(),
            level1.morphism_count(),
            failures.len()
        ),
    )
}

// ---------------------------------------------------------------------------
// Criterion 8

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let diagrams = all_retraction_diagrams(4);
    let families = all_pointed_families(3, 3);
    let report = roundtrip_check(&diagrams, &families, 200, 8);
    let skeleton = Arc::new(pointed_set_skeleton(4));
    let mut failures = Vec::new();
    for x in &diagrams {
        match pi0_corollary_check_in(x, &skeleton) {
            Ok(r) if r.holds() => {}
            Ok(r) => failures.push(format!("{r:?}")),
            Err(e) => failures.push(e.to_string()),
        }
    }
    if !report.holds() {
        failures.push(format!("{report:?}"));
    }
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && within(elapsed, Duration::from_secs(10));
    Outcome::new(
        pass,
        format!(
            "{} diagrams and {} families round-trip, {} naturality squares, π₀ corollary on {} diagrams, {elapsed:.2?}{}",
            report.diagrams,
            report.families,
            report.naturality_checked,
            diagrams.len(),
            first_failures(&failures)
        ),
    )
}

// ---------------------------------------------------------------------------
// Criterion 9

fn cocones(
    index: &FiniteGroupoid,
    d: &FamDiagram,
    apex: &Arc<FamObject>,
    budget: &mut Budget,
) -> famcat::Result<Vec<PseudoCocone>> {
    let leg_choices = index
        .object_ids()
        .map(|j| hom_fam(&d.objects[j.0], apex, budget))
        .collect::<famcat::Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for legs in cartesian(&leg_choices) {
        if index.morphism_count() == index.object_count() {
            let cells = index
                .object_ids()
                .map(|j| NatTrans::identity(&d.objects[j.0].shape, &apex.shape, &legs[j.0].shape_map))
                .collect();
            push_if_valid(index, d, apex, &legs, cells, &mut out);
            continue;
        }
        // One object with cyclic automorphism group generated by morphism 1.
        let (j, gen) = (ObjId(0), MorId(1));
        let shape = &d.objects[0].shape;
        let moved = compose_fam(&legs[0], &d.morphisms[gen.0])?;
        for first in nat_transs(shape, &apex.shape, &legs[0].shape_map, &moved.shape_map, budget)? {
            if !validate_two_cell(&legs[0], &moved, &first).is_valid() {
                continue;
            }
            let mut cells = vec![NatTrans::identity(shape, &apex.shape, &legs[0].shape_map); index.morphism_count()];
            cells[gen.0] = first.clone();
            let mut cur = gen;
            loop {
                let next = index.comp(gen, cur);
                if next == index.identity(j) {
                    break;
                }
                let du = &d.morphisms[cur.0].shape_map;
                let components = shape
                    .object_ids()
                    .map(|x| apex.shape.comp(first.at(du.obj(x)), cells[cur.0].at(x)))
                    .collect();
                cells[next.0] = NatTrans { components };
                cur = next;
            }
            push_if_valid(index, d, apex, &legs, cells, &mut out);
        }
    }
    Ok(out)
}

fn push_if_valid(
    index: &FiniteGroupoid,
    d: &FamDiagram,
    apex: &Arc<FamObject>,
    legs: &[FamMorphism],
    cells: Vec<NatTrans>,
    out: &mut Vec<PseudoCocone>,
) {
    let cocone = PseudoCocone {
        apex: apex.clone(),
        legs: legs.to_vec(),
        cells,
    };
    if cocone.is_valid(index, d) {
        out.push(cocone);
    }
}

/// `B(Z/n)` acting on `n` copies of a family by cyclic rotation.
fn rotation_diagram(c: &Arc<FiniteCategory>, e: Arc<FamObject>, n: usize) -> famcat::Result<FamDiagram> {
    let x = fam_coproduct(c, &vec![e.clone(); n])?.object;
    let (no, nm) = (e.shape.object_count(), e.shape.morphism_count());
    let morphisms = (0..n)
        .map(|k| {
            let shape_map = Functor {
                objects: (0..no * n).map(|o| ObjId(((o / no + k) % n) * no + o % no)).collect(),
                morphisms: (0..nm * n).map(|m| MorId(((m / nm + k) % n) * nm + m % nm)).collect(),
            };
            let components = NatTrans::identity(&x.shape, c, &x.arrow);
            FamMorphism {
                domain: x.clone(),
                codomain: x.clone(),
                shape_map,
                components,
            }
        })
        .collect();
    Ok(FamDiagram {
        category: c.clone(),
        objects: vec![x],
        morphisms,
    })
}

/// `B(Z/2)` acting trivially on the shape and by the involution of the
/// one-object category on every component.
fn involution_diagram(c: &Arc<FiniteCategory>, x: Arc<FamObject>) -> FamDiagram {
    let flip = FamMorphism {
        domain: x.clone(),
        codomain: x.clone(),
        shape_map: Functor::identity(&x.shape),
        components: NatTrans {
            components: vec![MorId(1); x.shape.object_count()],
        },
    };
    FamDiagram {
        category: c.clone(),
        objects: vec![x.clone()],
        morphisms: vec![FamMorphism::identity(&x), flip],
    }
}

fn trivial_diagram(c: &Arc<FiniteCategory>, x: Arc<FamObject>, n: usize) -> FamDiagram {
    FamDiagram {
        category: c.clone(),
        objects: vec![x.clone()],
        morphisms: vec![FamMorphism::identity(&x); n],
    }
}

/// Random apexes tried per diagram: at least two, and more until one admits a
/// (co)cone.
const APEX_ATTEMPTS: usize = 8;

struct UniversalTally {
    diagrams: usize,
    competitors: usize,
    unmatched: usize,
    failures: Vec<String>,
}

fn check_colimit(
    index: &FiniteGroupoid,
    d: &FamDiagram,
    rng: &mut ChaCha8Rng,
    tally: &mut UniversalTally,
) -> famcat::Result<()> {
    d.check_functorial(index)?;
    let colimit = fam_colimit(index, d)?;
    let mut budget = Budget::new(DEFAULT_BUDGET);
    let before = tally.competitors;
    for attempt in 0..APEX_ATTEMPTS {
        if attempt >= 2 && tally.competitors > before {
            break;
        }
        let apex = random_family(&d.category, rng, 2, false, &mut budget)?;
        for cocone in cocones(index, d, &apex, &mut budget)? {
            tally.competitors += 1;
            let n = colimit.count_factorizations(index, &cocone, &mut Budget::new(DEFAULT_BUDGET))?;
            if n != 1 {
                tally.failures.push(format!("cocone factors {n} times"));
            }
        }
    }
    tally.diagrams += 1;
    tally.unmatched += usize::from(tally.competitors == before);
    Ok(())
}

fn check_limit(diagram: LimitDiagram, c: &Arc<FiniteCategory>, rng: &mut ChaCha8Rng, tally: &mut UniversalTally) -> famcat::Result<()> {
    let mut budget = Budget::new(DEFAULT_BUDGET);
    let limit = fam_limit(&diagram, &mut budget)?;
    let before = tally.competitors;
    for attempt in 0..APEX_ATTEMPTS {
        if attempt >= 2 && tally.competitors > before {
            break;
        }
        let apex = &random_family(c, rng, 2, false, &mut budget)?;
        let cones: Vec<PseudoCone> = match &diagram {
            LimitDiagram::Product(_, factors) => {
                let legs = factors
                    .iter()
                    .map(|f| hom_fam(apex, f, &mut budget))
                    .collect::<famcat::Result<Vec<_>>>()?;
                cartesian(&legs)
                    .into_iter()
                    .map(|legs| PseudoCone {
                        apex: apex.clone(),
                        legs,
                        cell: None,
                    })
                    .collect()
            }
            LimitDiagram::Pullback(left, right) => {
                let mut out = Vec::new();
                let ps = hom_fam(apex, &left.domain, &mut budget)?;
                let qs = hom_fam(apex, &right.domain, &mut budget)?;
                for p in &ps {
                    for q in &qs {
                        let (l, r) = (compose_fam(left, p)?, compose_fam(right, q)?);
                        let base = &left.codomain.shape;
                        for t in nat_transs(&apex.shape, base, &l.shape_map, &r.shape_map, &mut budget)? {
                            if validate_two_cell(&l, &r, &t).is_valid() {
                                out.push(PseudoCone {
                                    apex: apex.clone(),
                                    legs: vec![p.clone(), q.clone()],
                                    cell: Some(t),
                                });
                            }
                        }
                    }
                }
                out
            }
            LimitDiagram::Terminal(_) => Vec::new(),
        };
        for cone in cones {
            if !limit.is_cone(&cone) {
                tally.failures.push("enumerated cone rejected".into());
                continue;
            }
            tally.competitors += 1;
            let n = limit.count_factorizations(&cone, &mut Budget::new(DEFAULT_BUDGET))?;
            if n != 1 {
                tally.failures.push(format!("cone factors {n} times"));
            }
        }
    }
    tally.diagrams += 1;
    tally.unmatched += usize::from(tally.competitors == before);
    Ok(())
}

fn universal_sample(seed: u64, tally: &mut UniversalTally) -> famcat::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(900 + seed);
    let mut budget = Budget::new(DEFAULT_BUDGET);
    let lattices = [Arc::new(diamond()), Arc::new(FiniteCategory::terminal())];
    let all = [lattices[0].clone(), Arc::new(bz2_category()), lattices[1].clone()];
    match seed % 5 {
        0 => {
            let c = &all[rng.gen_range(0..all.len())];
            let k = rng.gen_range(1..=2);
            let names: Vec<String> = (0..k).map(|i| format!("j{i}")).collect();
            let index = FiniteGroupoid::discrete(&names);
            let objects = (0..k)
                .map(|_| random_family(c, &mut rng, 2, true, &mut budget))
                .collect::<famcat::Result<Vec<_>>>()?;
            let morphisms = objects.iter().map(FamMorphism::identity).collect();
            let d = FamDiagram {
                category: c.clone(),
                objects,
                morphisms,
            };
            check_colimit(&index, &d, &mut rng, tally)
        }
        1 | 2 => {
            let n = if seed % 5 == 1 { 2 } else { 3 };
            let index = FiniteGroupoid::delooping(&FiniteGroup::cyclic(n));
            let c = &all[rng.gen_range(0..all.len())];
            let is_bz2 = c.object_count() == 1 && c.morphism_count() == 2;
            let d = match rng.gen_range(0..3) {
                0 => rotation_diagram(c, random_family(c, &mut rng, 4 / n, false, &mut budget)?, n)?,
                1 if n == 2 && is_bz2 => involution_diagram(c, random_family(c, &mut rng, 2, false, &mut budget)?),
                _ => trivial_diagram(c, random_family(c, &mut rng, 2, false, &mut budget)?, n),
            };
            check_colimit(&index, &d, &mut rng, tally)
        }
        3 => {
            let c = &lattices[rng.gen_range(0..lattices.len())];
            let factors = (0..2)
                .map(|_| random_family(c, &mut rng, 2, true, &mut budget))
                .collect::<famcat::Result<Vec<_>>>()?;
            check_limit(LimitDiagram::Product(c.clone(), factors), c, &mut rng, tally)
        }
        _ => {
            let c = &all[rng.gen_range(0..all.len())];
            loop {
                let base = random_family(c, &mut rng, 2, false, &mut budget)?;
                let a = random_family(c, &mut rng, 2, false, &mut budget)?;
                let b = random_family(c, &mut rng, 2, false, &mut budget)?;
                let left = random_fam_morphism(&a, &base, &mut rng, &mut budget)?;
                let right = random_fam_morphism(&b, &base, &mut rng, &mut budget)?;
                if let (Some(left), Some(right)) = (left, right) {
                    return check_limit(LimitDiagram::Pullback(left, right), c, &mut rng, tally);
                }
            }
        }
    }
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let mut tally = UniversalTally {
        diagrams: 0,
        competitors: 0,
        unmatched: 0,
        failures: Vec::new(),
    };
    for seed in 0..50 {
        if let Err(e) = universal_sample(seed, &mut tally) {
            tally.failures.push(format!("seed {seed}: {e}"));
        }
    }
    let elapsed = start.elapsed();
    Outcome::new(
        tally.failures.is_empty() && tally.diagrams == 50,
        format!(
            "{} diagrams, {} competing (co)cones each factor uniquely ({} diagrams without a competitor), {elapsed:.2?}{}",
            tally.diagrams,
            tally.competitors,
            tally.unmatched,
            first_failures(&tally.failures)
        ),
    )
}

// ---------------------------------------------------------------------------
// Criterion 10

fn small_shapes() -> Vec<FiniteGroupoid> {
    let z2 = FiniteGroup::cyclic(2);
    let bz2 = FiniteGroupoid::delooping(&z2);
    let point = FiniteGroupoid::point();
    vec![
        FiniteGroupoid::empty(),
        point.clone(),
        bz2.clone(),
        FiniteGroupoid::discrete(&["x", "y"]),
        FiniteGroupoid::chaotic(&["x", "y"]),
        FiniteGroupoid::disjoint_union(&[&point, &bz2]).0,
        FiniteGroupoid::disjoint_union(&[&bz2, &bz2]).0,
        FiniteGroupoid::thickened(&z2, &["x", "y"]),
    ]
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let c = Arc::new(walking_arrow());
    let mut budget = Budget::unlimited();
    let mut families = Vec::new();
    for shape in small_shapes() {
        for arrow in functors(&shape, &c, &mut budget).expect("unlimited budget") {
            families.push(Arc::new(FamObject::new(shape.clone(), c.clone(), arrow).expect("valid family")));
        }
    }
    let terminal = find_terminal(&c).expect("walking arrow has a terminal object");
    let universe = vec![
        Arc::new(FamObject::empty(c.clone())),
        Arc::new(FamObject::sigma(c.clone(), ObjId(0))),
        Arc::new(FamObject::sigma(c.clone(), terminal)),
        families
            .iter()
            .find(|f| f.shape.object_count() == 1 && f.shape.morphism_count() == 2 && f.arrow.obj(ObjId(0)) == terminal)
            .expect("B(Z/2) over the terminal object")
            .clone(),
    ];
    let mut failures = Vec::new();
    let mut pairs = 0;
    for c1 in &families {
        for c2 in &families {
            pairs += 1;
            let mut budget = Budget::new(DEFAULT_BUDGET);
            match extensivity_check(c1, c2, &universe, &mut budget) {
                Ok(r) if r.is_equivalence() => {}
                Ok(r) => failures.push(format!("{:?}", r.failures)),
                Err(e) => failures.push(e.to_string()),
            }
        }
    }
    let elapsed = start.elapsed();
    Outcome::new(
        failures.is_empty(),
        format!(
            "{} families, {pairs} ordered pairs, slice comparison an equivalence on {} over a universe of {}, {elapsed:.2?}{}",
            families.len(),
            pairs - failures.len(),
            universe.len(),
            first_failures(&failures)
        ),
    )
}

// ---------------------------------------------------------------------------

type Criterion = (usize, &'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "category and groupoid validators", criterion_1),
        (2, "effective epimorphisms against a union-find oracle", criterion_2),
        (3, "components adjunction", criterion_3),
        (4, "edge-path group against automorphism group", criterion_4),
        (5, "basepoint independence", criterion_5),
        (6, "covering axioms", criterion_6),
        (7, "Čech nerve of a point in B(Z/2)", criterion_7),
        (8, "pointed-set families and retraction diagrams", criterion_8),
        (9, "(co)limit universal properties", criterion_9),
        (10, "extensivity", criterion_10),
    ];
    let mut all = true;
    for (n, name, run) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|panic| {
            let message = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Outcome::new(false, format!("panicked: {message}"))
        });
        all &= outcome.pass;
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        println!("criterion {n}: {verdict} {name}: {}", outcome.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
