//! Verb implementations. Each returns a certificate or a misuse error.

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use famcat::cech::{cech_nerve, cech_pi0_check, simplicial_identity_failures};
use famcat::edge_path::{edge_path_pi1, DEFAULT_COSET_CAP};
use famcat::fam::{
    decompose_connected, extensivity_check, fam_colimit, fam_coproduct, fam_limit, LimitDiagram,
};
use famcat::group::{find_isomorphism, IsoSearch};
use famcat::groupoid::{aut_group, pi0};
use famcat::homotopy::{adjunction_check, pi1_colimit_preservation_check};
use famcat::locus::{
    all_pointed_families, all_retraction_diagrams, functor_f, functor_g, roundtrip_check, validate_pointed_family,
    validate_retraction,
};
use famcat::site::{is_covering_family, pullback_cover, pretopology_axiom_suite, CoveringFamily};
use famcat::{Budget, FamMorphism, FamObject, FiniteCategory, FiniteGroup, FiniteGroupoid, ObjId, DEFAULT_BUDGET};
use serde_json::{json, Value};
use thiserror::Error;

use crate::certificate::{Certificate, Verdict};
use crate::workspace::{
    family_doc, map_doc, morphism_doc, object_names, pointed_doc, retraction_doc, Entry, Kind, LoadError, Workspace,
};

#[derive(Debug, Parser)]
#[command(name = "famcat", version, about = "Checks constructions on families over finite categories")]
pub struct Cli {
    /// Workspace document to load; may be repeated.
    #[arg(short = 'w', long = "workspace", global = true)]
    pub workspace: Vec<PathBuf>,
    /// Write the certificate to this path instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LimitKind {
    Terminal,
    Product,
    Pullback,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate workspace entries (all of them when no names are given).
    Validate { names: Vec<String> },
    /// Connected components of a family or groupoid.
    Pi0 { name: String },
    /// Automorphism group at a basepoint, cross-checked against the edge-path group.
    Pi1 {
        name: String,
        #[arg(long)]
        basepoint: String,
    },
    /// Split a family into its connected components.
    Decompose { family: String },
    /// Coproduct of families.
    Coproduct {
        families: Vec<String>,
        /// Category of the empty coproduct.
        #[arg(long)]
        category: Option<String>,
    },
    /// Colimit of a diagram indexed by a groupoid.
    Colimit {
        diagram: String,
        #[arg(long)]
        index: String,
    },
    /// Terminal object (`--category`), product of families, or pullback of two morphisms.
    Limit {
        #[arg(long, value_enum)]
        kind: LimitKind,
        names: Vec<String>,
        #[arg(long)]
        category: Option<String>,
    },
    /// Whether morphisms with a common codomain form a covering family.
    CoverCheck {
        members: Vec<String>,
        /// Codomain of an empty family.
        #[arg(long)]
        codomain: Option<String>,
        /// Use the component inclusions of this family as the cover.
        #[arg(long, conflicts_with_all = ["members", "codomain"])]
        decomposition: Option<String>,
    },
    /// Pull a covering family back along a morphism into its codomain.
    CoverPullback {
        members: Vec<String>,
        #[arg(long)]
        along: String,
    },
    /// Čech nerve of a functor between groupoids.
    Cech {
        functor: String,
        #[arg(long, default_value_t = 2)]
        levels: usize,
    },
    /// Maps into a constant family against functions on components.
    AdjunctionCheck {
        family: String,
        #[arg(long)]
        index_size: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
    /// Pointed-set family of a retraction diagram.
    LocusF { name: String },
    /// Retraction diagram of a pointed-set family.
    LocusG { name: String },
    /// Round trips between retraction diagrams and pointed-set families.
    LocusRoundtrip {
        names: Vec<String>,
        /// Also check every diagram and family of at most this size.
        #[arg(long)]
        exhaustive: Option<usize>,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Covering axioms on seeded random sites.
    Axioms {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Slices over a binary coproduct against products of slices.
    Extensivity {
        first: String,
        second: String,
        /// Families whose morphisms populate the slices; defaults to the
        /// empty family and every point family.
        #[arg(long, num_args = 1..)]
        universe: Vec<String>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error("invalid workspace entries:\n{0}")]
    InvalidEntries(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Engine(#[from] famcat::Error),
    #[error("FAMCAT_BUDGET must be a positive integer, got `{0}`")]
    Budget(String),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn budget_from_env(value: Option<&str>) -> Result<u64, CliError> {
    match value {
        None => Ok(DEFAULT_BUDGET),
        Some(v) => match v.trim().parse::<u64>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(CliError::Budget(v.to_string())),
        },
    }
}

struct Outcome {
    verdict: Verdict,
    witness: Value,
    seed: Option<u64>,
}

impl Outcome {
    fn new(verdict: Verdict, witness: Value) -> Self {
        Outcome {
            verdict,
            witness,
            seed: None,
        }
    }

    fn seeded(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

/// Runs one verb. `budget_env` is the raw value of `FAMCAT_BUDGET`.
pub fn run(cli: &Cli, budget_env: Option<&str>) -> Result<Certificate, CliError> {
    let limit = budget_from_env(budget_env)?;
    let ws = Workspace::load_files(&cli.workspace)?;
    let (verb, anchor) = describe(&cli.command);
    if !matches!(cli.command, Command::Validate { .. }) {
        require_valid(&ws)?;
    }
    let mut budget = Budget::new(limit);
    let outcome = match execute(&cli.command, &ws, &mut budget, limit) {
        Ok(o) => o,
        Err(CliError::Engine(e)) if e.is_indeterminate() => Outcome::new(
            Verdict::Indeterminate,
            json!({ "reason": e.to_string(), "examined": budget.spent() }),
        ),
        Err(e) => return Err(e),
    };
    Ok(Certificate {
        verb: verb.to_string(),
        anchor: anchor.to_string(),
        verdict: outcome.verdict,
        seed: outcome.seed,
        budget: limit,
        witness: outcome.witness,
    })
}

fn describe(c: &Command) -> (&'static str, &'static str) {
    match c {
        Command::Validate { .. } => (
            "validate",
            "every entry satisfies the category, groupoid, functor and family axioms",
        ),
        Command::Pi0 { .. } => ("pi0", "connected components of the shape"),
        Command::Pi1 { .. } => (
            "pi1",
            "automorphism group at the basepoint agrees with the edge-path group",
        ),
        Command::Decompose { .. } => ("decompose", "a family is the coproduct of its connected components"),
        Command::Coproduct { .. } => ("coproduct", "coproducts of families are disjoint unions of shapes"),
        Command::Colimit { .. } => (
            "colimit",
            "groupoid-indexed colimits are Grothendieck constructions of the shapes",
        ),
        Command::Limit { .. } => (
            "limit",
            "limits of families have limit shapes and pointwise limit arrows",
        ),
        Command::CoverCheck { .. } => (
            "cover-check",
            "a family of morphisms covers when its shapes meet every component",
        ),
        Command::CoverPullback { .. } => ("cover-pullback", "covering families are stable under pullback"),
        Command::Cech { .. } => ("cech", "Čech nerve of a map of groupoids satisfies the simplicial identities"),
        Command::AdjunctionCheck { .. } => (
            "adjunction-check",
            "maps into a constant family correspond to functions on components",
        ),
        Command::LocusF { .. } => ("locus-f", "pointed-set family of a retraction diagram"),
        Command::LocusG { .. } => ("locus-g", "retraction diagram of a pointed-set family"),
        Command::LocusRoundtrip { .. } => (
            "locus-roundtrip",
            "pointed-set families and retraction diagrams are equivalent",
        ),
        Command::Axioms { .. } => ("axioms", "effective covering families form a Grothendieck pretopology"),
        Command::Extensivity { .. } => (
            "extensivity",
            "slices over a binary coproduct are products of slices",
        ),
    }
}

fn require_valid(ws: &Workspace) -> Result<(), CliError> {
    let bad: Vec<String> = ws
        .invalid_entries()
        .map(|s| match (&s.blocked_on, s.violations.first()) {
            (Some(on), _) => format!("  `{}` depends on invalid `{on}`", s.name),
            (None, Some(v)) => format!("  `{}`: {v}", s.name),
            (None, None) => format!("  `{}`", s.name),
        })
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(CliError::InvalidEntries(bad.join("\n")))
    }
}

fn family<'a>(ws: &'a Workspace, name: &str) -> Result<(&'a Arc<FamObject>, &'a str), CliError> {
    match ws.get(name) {
        Some(Entry::Family { family, category, .. }) => Ok((family, category)),
        _ => Err(usage(format!("no family named `{name}`"))),
    }
}

fn morphism<'a>(ws: &'a Workspace, name: &str) -> Result<(&'a FamMorphism, &'a str, &'a str), CliError> {
    match ws.get(name) {
        Some(Entry::Morphism {
            morphism,
            domain,
            codomain,
        }) => Ok((morphism, domain, codomain)),
        _ => Err(usage(format!("no morphism named `{name}`"))),
    }
}

fn groupoid<'a>(ws: &'a Workspace, name: &str) -> Result<&'a FiniteGroupoid, CliError> {
    match ws.get(name) {
        Some(Entry::Groupoid(g, _)) => Ok(g),
        _ => Err(usage(format!("no groupoid named `{name}`"))),
    }
}

fn category(ws: &Workspace, name: &str) -> Result<Arc<FiniteCategory>, CliError> {
    match ws.get(name) {
        Some(Entry::Category(c)) | Some(Entry::Groupoid(_, c)) => Ok(c.clone()),
        _ => Err(usage(format!("no category named `{name}`"))),
    }
}

/// The shape of a family, or a groupoid itself.
fn shape<'a>(ws: &'a Workspace, name: &str) -> Result<&'a FiniteGroupoid, CliError> {
    match ws.get(name) {
        Some(Entry::Family { family, .. }) => Ok(&family.shape),
        Some(Entry::Groupoid(g, _)) => Ok(g),
        _ => Err(usage(format!("no family or groupoid named `{name}`"))),
    }
}

fn group_json(g: &FiniteGroup) -> Value {
    json!({ "order": g.order(), "elements": g.elements(), "table": g.table() })
}

fn category_label(ws: &Workspace, c: &Arc<FiniteCategory>) -> String {
    ws.category_name(c).unwrap_or("?").to_string()
}

fn generated_family(ws: &Workspace, f: &FamObject) -> Value {
    json!(family_doc(f, &category_label(ws, &f.category), None))
}

fn components_json(g: &FiniteGroupoid) -> Value {
    let comps = pi0(g);
    json!({
        "count": comps.count(),
        "blocks": comps.blocks.iter().map(|b| object_names(g, b)).collect::<Vec<_>>(),
    })
}

fn execute(command: &Command, ws: &Workspace, budget: &mut Budget, limit: u64) -> Result<Outcome, CliError> {
    match command {
        Command::Validate { names } => {
            for n in names {
                if !ws.statuses().iter().any(|s| &s.name == n) {
                    return Err(usage(format!("no entry named `{n}`")));
                }
            }
            let entries: Vec<_> = ws
                .statuses()
                .iter()
                .filter(|s| names.is_empty() || names.contains(&s.name))
                .collect();
            let all_valid = entries.iter().all(|s| s.valid);
            Ok(Outcome::new(Verdict::from_bool(all_valid), json!({ "entries": entries })))
        }
        Command::Pi0 { name } => Ok(Outcome::new(Verdict::Verified, components_json(shape(ws, name)?))),
        Command::Pi1 { name, basepoint } => {
            let g = shape(ws, name)?;
            let x = g
                .find_object(basepoint)
                .ok_or_else(|| usage(format!("`{name}` has no object `{basepoint}`")))?;
            let aut = aut_group(g, x)?;
            let edge = edge_path_pi1(g, x, DEFAULT_COSET_CAP)?;
            let search = find_isomorphism(&edge, &aut);
            let verdict = match &search {
                IsoSearch::Found(_) => Verdict::Verified,
                IsoSearch::NotIsomorphic => Verdict::Refuted,
                IsoSearch::Indeterminate => Verdict::Indeterminate,
            };
            Ok(Outcome::new(
                verdict,
                json!({
                    "basepoint": basepoint,
                    "group": group_json(&aut),
                    "edge_path_group": group_json(&edge),
                    "isomorphism": search.found().map(|iso| &iso.map),
                }),
            ))
        }
        Command::Decompose { family: name } => {
            let (f, _) = family(ws, name)?;
            let cert = decompose_connected(f)?;
            let block_of: serde_json::Map<String, Value> = f
                .shape
                .object_ids()
                .map(|o| (f.shape.object_name(o).to_string(), json!(cert.block_of[o.0])))
                .collect();
            Ok(Outcome::new(
                Verdict::from_bool(cert.round_trips()),
                json!({
                    "components": cert.components.iter().map(|c| generated_family(ws, c)).collect::<Vec<_>>(),
                    "block_of": block_of,
                    "inclusions": cert.inclusions.iter().enumerate()
                        .map(|(i, m)| morphism_doc(m, &format!("component {i}"), name))
                        .collect::<Vec<_>>(),
                }),
            ))
        }
        Command::Coproduct { families, category: cat } => {
            let summands = families
                .iter()
                .map(|n| family(ws, n).map(|(f, _)| f.clone()))
                .collect::<Result<Vec<_>, _>>()?;
            let c = match (summands.first(), cat) {
                (_, Some(c)) => category(ws, c)?,
                (Some(f), None) => f.category.clone(),
                (None, None) => return Err(usage("the empty coproduct needs --category")),
            };
            let coproduct = fam_coproduct(&c, &summands)?;
            Ok(Outcome::new(
                Verdict::Verified,
                json!({
                    "object": generated_family(ws, &coproduct.object),
                    "injections": coproduct.injections.iter().zip(families)
                        .map(|(m, n)| morphism_doc(m, n, "coproduct"))
                        .collect::<Vec<_>>(),
                }),
            ))
        }
        Command::Colimit { diagram, index } => {
            let index_groupoid = groupoid(ws, index)?;
            let d = ws.diagram(diagram, index_groupoid).map_err(usage)?;
            d.check_functorial(index_groupoid)?;
            let colimit = fam_colimit(index_groupoid, &d)?;
            let cocone_valid = colimit.cocone().is_valid(index_groupoid, &d);
            let preservation = match pi1_colimit_preservation_check(index_groupoid, &d, budget) {
                Ok(r) => Some(r),
                Err(famcat::Error::Unsupported(_)) => None,
                Err(e) => return Err(e.into()),
            };
            let holds = cocone_valid && preservation.as_ref().is_none_or(|r| r.holds());
            let Some(Entry::Diagram(doc)) = ws.get(diagram) else {
                unreachable!("resolved above")
            };
            let shape = &colimit.object.shape;
            let cells: serde_json::Map<String, Value> = index_groupoid
                .morphism_ids()
                .map(|u| {
                    let src = &d.objects[index_groupoid.source(u).0].shape;
                    let comps: serde_json::Map<String, Value> = src
                        .object_ids()
                        .map(|x| {
                            let m = colimit.cells[u.0].at(x);
                            (src.object_name(x).to_string(), json!(shape.morphism_name(m)))
                        })
                        .collect();
                    (index_groupoid.morphism_name(u).to_string(), Value::Object(comps))
                })
                .collect();
            Ok(Outcome::new(
                Verdict::from_bool(holds),
                json!({
                    "object": generated_family(ws, &colimit.object),
                    "injections": index_groupoid.object_ids()
                        .map(|j| {
                            let label = &doc.objects[index_groupoid.object_name(j)];
                            morphism_doc(&colimit.injections[j.0], label, "colimit")
                        })
                        .collect::<Vec<_>>(),
                    "cells": cells,
                    "cocone_valid": cocone_valid,
                    "shape_preservation": preservation.map(|r| json!({
                        "index_kind": r.index_kind,
                        "colimit_components": r.colimit_components,
                        "shapes_components": r.shapes_components,
                        "equivalent": r.holds(),
                    })),
                }),
            ))
        }
        Command::Limit { kind, names, category: cat } => {
            let (diagram, labels): (LimitDiagram, Vec<String>) = match kind {
                LimitKind::Terminal => {
                    let c = cat.as_ref().ok_or_else(|| usage("--kind terminal needs --category"))?;
                    (LimitDiagram::Terminal(category(ws, c)?), Vec::new())
                }
                LimitKind::Product => {
                    let factors = names
                        .iter()
                        .map(|n| family(ws, n).map(|(f, _)| f.clone()))
                        .collect::<Result<Vec<_>, _>>()?;
                    let c = match (factors.first(), cat) {
                        (_, Some(c)) => category(ws, c)?,
                        (Some(f), None) => f.category.clone(),
                        (None, None) => return Err(usage("the empty product needs --category")),
                    };
                    (LimitDiagram::Product(c, factors), names.clone())
                }
                LimitKind::Pullback => {
                    let [left, right] = names.as_slice() else {
                        return Err(usage("--kind pullback takes two morphisms `left right`"));
                    };
                    let (l, ldom, _) = morphism(ws, left)?;
                    let (r, rdom, _) = morphism(ws, right)?;
                    (
                        LimitDiagram::Pullback(l.clone(), r.clone()),
                        vec![ldom.to_string(), rdom.to_string()],
                    )
                }
            };
            let limit = fam_limit(&diagram, budget)?;
            let square = limit.square.as_ref().map(|t| {
                let x = &limit.object.shape;
                let left = match &diagram {
                    LimitDiagram::Pullback(l, _) => l,
                    _ => unreachable!("square only for pullbacks"),
                };
                x.object_ids()
                    .map(|o| {
                        let m = t.at(o);
                        (x.object_name(o).to_string(), json!(left.codomain.shape.morphism_name(m)))
                    })
                    .collect::<serde_json::Map<String, Value>>()
            });
            Ok(Outcome::new(
                Verdict::from_bool(limit.is_cone(&limit.cone())),
                json!({
                    "object": generated_family(ws, &limit.object),
                    "projections": limit.projections.iter().zip(&labels)
                        .map(|(p, l)| morphism_doc(p, "limit", l))
                        .collect::<Vec<_>>(),
                    "square": square,
                }),
            ))
        }
        Command::CoverCheck {
            members,
            codomain,
            decomposition,
        } => {
            let cover = match decomposition {
                Some(n) => {
                    let (f, _) = family(ws, n)?;
                    let cert = decompose_connected(f)?;
                    CoveringFamily::new(f.clone(), cert.inclusions)?
                }
                None => build_cover(ws, members, codomain.as_deref())?,
            };
            Ok(cover_outcome(&cover))
        }
        Command::CoverPullback { members, along } => {
            let cover = build_cover(ws, members, None)?;
            let (m, m_domain, _) = morphism(ws, along)?;
            let pulled = pullback_cover(&cover, m, budget)?;
            let original = is_covering_family(&cover);
            let verdict = is_covering_family(&pulled);
            let mut witness = cover_witness(&pulled);
            witness["original_covers"] = json!(original.effective);
            witness["members"] = json!(pulled
                .members
                .iter()
                .enumerate()
                .map(|(i, p)| morphism_doc(p, &format!("pullback {i}"), m_domain))
                .collect::<Vec<_>>());
            Ok(Outcome::new(Verdict::from_bool(verdict.effective), witness))
        }
        Command::Cech { functor, levels } => {
            let Some(Entry::Functor {
                source,
                target,
                functor: f,
            }) = ws.get(functor)
            else {
                return Err(usage(format!("no functor named `{functor}`")));
            };
            let (x_prime, x) = (groupoid(ws, source)?, groupoid(ws, target)?);
            let nerve = cech_nerve(x_prime, x, f, *levels, budget)?;
            let failures = simplicial_identity_failures(&nerve);
            let pi0_report = if *levels >= 1 {
                Some(cech_pi0_check(&nerve, x)?)
            } else {
                None
            };
            let level_docs: Vec<Value> = nerve
                .levels
                .iter()
                .map(|l| {
                    let below: &FiniteGroupoid = if l.level == 0 {
                        x
                    } else {
                        &nerve.levels[l.level - 1].groupoid
                    };
                    json!({
                        "level": l.level,
                        "groupoid": l.groupoid.to_tables(),
                        "faces": l.faces.iter().map(|d| map_doc(&l.groupoid, below, d)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            Ok(Outcome::new(
                Verdict::from_bool(failures.is_empty()),
                json!({
                    "levels": level_docs,
                    "simplicial_failures": failures,
                    "components": pi0_report,
                }),
            ))
        }
        Command::AdjunctionCheck {
            family: name,
            index_size,
            seed,
            samples,
        } => {
            let (f, _) = family(ws, name)?;
            let report = adjunction_check(f, *index_size, *samples, *seed, budget)?;
            Ok(Outcome::new(Verdict::from_bool(report.holds()), json!(report)).seeded(*seed))
        }
        Command::LocusF { name } => {
            let Some(Entry::Retraction(x)) = ws.get(name) else {
                return Err(usage(format!("no retraction diagram named `{name}`")));
            };
            let f = functor_f(x);
            Ok(Outcome::new(
                Verdict::from_bool(validate_pointed_family(&f).is_valid()),
                json!({ "family": pointed_doc(&f) }),
            ))
        }
        Command::LocusG { name } => {
            let Some(Entry::PointedFamily(f)) = ws.get(name) else {
                return Err(usage(format!("no pointed family named `{name}`")));
            };
            let x = functor_g(f);
            Ok(Outcome::new(
                Verdict::from_bool(validate_retraction(&x).is_valid()),
                json!({ "diagram": retraction_doc(&x) }),
            ))
        }
        Command::LocusRoundtrip {
            names,
            exhaustive,
            seed,
            samples,
        } => {
            let mut diagrams = Vec::new();
            let mut families = Vec::new();
            let names: Vec<String> = if names.is_empty() && exhaustive.is_none() {
                let mut all = ws.names(Kind::Retraction);
                all.extend(ws.names(Kind::PointedFamily));
                all
            } else {
                names.clone()
            };
            for n in &names {
                match ws.get(n) {
                    Some(Entry::Retraction(x)) => diagrams.push(x.clone()),
                    Some(Entry::PointedFamily(f)) => families.push(f.clone()),
                    _ => return Err(usage(format!("`{n}` is neither a retraction diagram nor a pointed family"))),
                }
            }
            if let Some(n) = exhaustive {
                diagrams.extend(all_retraction_diagrams(*n));
                families.extend(all_pointed_families(*n, *n));
            }
            if diagrams.is_empty() && families.is_empty() {
                return Err(usage("nothing to check: name entries or pass --exhaustive"));
            }
            let report = roundtrip_check(&diagrams, &families, *samples, *seed);
            Ok(Outcome::new(Verdict::from_bool(report.holds()), json!(report)).seeded(*seed))
        }
        Command::Axioms { seed, samples } => {
            let report = pretopology_axiom_suite(*seed, *samples, limit);
            let verdict = if report.all_passed() {
                Verdict::Verified
            } else if report.has_failures() {
                Verdict::Refuted
            } else {
                Verdict::Indeterminate
            };
            Ok(Outcome::new(verdict, json!(report)).seeded(*seed))
        }
        Command::Extensivity {
            first,
            second,
            universe,
        } => {
            let (c1, _) = family(ws, first)?;
            let (c2, _) = family(ws, second)?;
            let universe = if universe.is_empty() {
                let c = &c1.category;
                std::iter::once(Arc::new(FamObject::empty(c.clone())))
                    .chain(c.object_ids().map(|o: ObjId| Arc::new(FamObject::sigma(c.clone(), o))))
                    .collect()
            } else {
                universe
                    .iter()
                    .map(|n| family(ws, n).map(|(f, _)| f.clone()))
                    .collect::<Result<Vec<_>, _>>()?
            };
            let report = extensivity_check(c1, c2, &universe, budget)?;
            Ok(Outcome::new(Verdict::from_bool(report.is_equivalence()), json!(report)))
        }
    }
}

fn build_cover(ws: &Workspace, members: &[String], codomain: Option<&str>) -> Result<CoveringFamily, CliError> {
    let ms = members
        .iter()
        .map(|n| morphism(ws, n).map(|(m, _, _)| m.clone()))
        .collect::<Result<Vec<_>, _>>()?;
    let target = match (codomain, ms.first()) {
        (Some(n), _) => family(ws, n)?.0.clone(),
        (None, Some(m)) => m.codomain.clone(),
        (None, None) => return Err(usage("an empty family needs --codomain")),
    };
    Ok(CoveringFamily::new(target, ms)?)
}

fn cover_witness(cover: &CoveringFamily) -> Value {
    let verdict = is_covering_family(cover);
    let shape = &cover.codomain.shape;
    let comps = pi0(shape);
    json!({
        "covers": verdict.effective,
        "block_map": verdict.block_map,
        "missing_components": verdict.unhit.iter()
            .map(|&b| object_names(shape, &comps.blocks[b]))
            .collect::<Vec<_>>(),
    })
}

fn cover_outcome(cover: &CoveringFamily) -> Outcome {
    let witness = cover_witness(cover);
    let holds = witness["covers"].as_bool().unwrap_or(false);
    Outcome::new(Verdict::from_bool(holds), witness)
}
