//! Loading workspace documents into validated values, and writing them back.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::Path;
use std::sync::Arc;

use famcat::category::{validate_functor, FiniteCategory, Functor, MorId, NatTrans, ObjId};
use famcat::fam::{validate_fam_morphism, validate_fam_object, FamDiagram};
use famcat::locus::{validate_pointed_family, validate_retraction, Label, PointedSetFamily, RetractionDiagram};
use famcat::{FamMorphism, FamObject, FiniteGroupoid, ValidationReport, Violation};
use serde::Serialize;
use thiserror::Error;

use crate::schema::{
    DiagramDoc, Document, FamilyDoc, FunctorDoc, MapDoc, MorphismDoc, Named, PointedFamilyDoc, RetractionDoc,
    ShapeRef, SCHEMA_VERSION,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Category,
    Groupoid,
    Functor,
    Family,
    Morphism,
    Diagram,
    Retraction,
    PointedFamily,
}

impl Kind {
    fn noun(self) -> &'static str {
        match self {
            Kind::Category => "category",
            Kind::Groupoid => "groupoid",
            Kind::Functor => "functor",
            Kind::Family => "family",
            Kind::Morphism => "morphism",
            Kind::Diagram => "diagram",
            Kind::Retraction => "retraction diagram",
            Kind::PointedFamily => "pointed family",
        }
    }
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read `{path}`: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: unsupported schema `{found}`, expected `{SCHEMA_VERSION}`")]
    Schema { path: String, found: String },
    #[error("duplicate name `{name}`")]
    Duplicate { name: String },
    #[error("{context}: unresolved reference to {expected} `{name}`")]
    Unresolved {
        context: String,
        expected: &'static str,
        name: String,
    },
}

/// Outcome of loading one entry. An entry that depends on an invalid entry is
/// blocked rather than validated.
#[derive(Debug, Clone, Serialize)]
pub struct EntryStatus {
    pub name: String,
    pub kind: Kind,
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocked_on: Option<String>,
    pub violations: Vec<Violation>,
}

#[derive(Debug, Clone)]
pub enum Entry {
    Category(Arc<FiniteCategory>),
    Groupoid(Arc<FiniteGroupoid>, Arc<FiniteCategory>),
    Functor {
        source: String,
        target: String,
        functor: Functor,
    },
    Family {
        family: Arc<FamObject>,
        category: String,
        shape: Option<String>,
    },
    Morphism {
        morphism: FamMorphism,
        domain: String,
        codomain: String,
    },
    Diagram(DiagramDoc),
    Retraction(RetractionDiagram),
    PointedFamily(PointedSetFamily),
}

/// Validated entries by name, plus the load status of every declared entry.
#[derive(Debug, Clone, Default)]
pub struct Workspace {
    entries: BTreeMap<String, Entry>,
    declared: HashMap<String, Kind>,
    statuses: Vec<EntryStatus>,
}

enum Lookup<'a> {
    Found(&'a Entry),
    Blocked,
}

impl Workspace {
    pub fn load_files<P: AsRef<Path>>(paths: &[P]) -> Result<Self, LoadError> {
        let mut docs = Vec::new();
        for p in paths {
            let path = p.as_ref().display().to_string();
            let text = fs::read_to_string(p).map_err(|source| LoadError::Io {
                path: path.clone(),
                source,
            })?;
            docs.push(parse_document(&path, &text)?);
        }
        Self::from_documents(&docs)
    }

    pub fn from_documents(docs: &[Document]) -> Result<Self, LoadError> {
        let mut ws = Workspace::default();
        for doc in docs {
            let names = doc
                .categories
                .iter()
                .map(|n| (&n.name, Kind::Category))
                .chain(doc.groupoids.iter().map(|n| (&n.name, Kind::Groupoid)))
                .chain(doc.functors.iter().map(|n| (&n.name, Kind::Functor)))
                .chain(doc.families.iter().map(|n| (&n.name, Kind::Family)))
                .chain(doc.morphisms.iter().map(|n| (&n.name, Kind::Morphism)))
                .chain(doc.diagrams.iter().map(|n| (&n.name, Kind::Diagram)))
                .chain(doc.retractions.iter().map(|n| (&n.name, Kind::Retraction)))
                .chain(doc.pointed_families.iter().map(|n| (&n.name, Kind::PointedFamily)));
            for (name, kind) in names {
                if ws.declared.insert(name.clone(), kind).is_some() {
                    return Err(LoadError::Duplicate { name: name.clone() });
                }
            }
        }
        for doc in docs {
            for c in &doc.categories {
                ws.load_category(c);
            }
        }
        for doc in docs {
            for g in &doc.groupoids {
                ws.load_groupoid(g);
            }
        }
        for doc in docs {
            for f in &doc.functors {
                ws.load_functor(f)?;
            }
        }
        for doc in docs {
            for f in &doc.families {
                ws.load_family(f)?;
            }
        }
        for doc in docs {
            for m in &doc.morphisms {
                ws.load_morphism(m)?;
            }
        }
        for doc in docs {
            for d in &doc.diagrams {
                ws.load_diagram(d)?;
            }
            for r in &doc.retractions {
                ws.load_retraction(r);
            }
            for p in &doc.pointed_families {
                ws.load_pointed(p);
            }
        }
        Ok(ws)
    }

    pub fn statuses(&self) -> &[EntryStatus] {
        &self.statuses
    }

    pub fn invalid_entries(&self) -> impl Iterator<Item = &EntryStatus> {
        self.statuses.iter().filter(|s| !s.valid)
    }

    pub fn get(&self, name: &str) -> Option<&Entry> {
        self.entries.get(name)
    }

    pub fn names(&self, kind: Kind) -> Vec<String> {
        self.statuses
            .iter()
            .filter(|s| s.kind == kind && s.valid)
            .map(|s| s.name.clone())
            .collect()
    }

    fn record(&mut self, name: &str, kind: Kind, report: ValidationReport, entry: Option<Entry>) {
        let valid = report.is_valid() && entry.is_some();
        if valid {
            self.entries.insert(name.to_string(), entry.expect("checked"));
        }
        self.statuses.push(EntryStatus {
            name: name.to_string(),
            kind,
            valid,
            blocked_on: None,
            violations: report.violations,
        });
    }

    fn block(&mut self, name: &str, kind: Kind, on: &str) {
        self.statuses.push(EntryStatus {
            name: name.to_string(),
            kind,
            valid: false,
            blocked_on: Some(on.to_string()),
            violations: Vec::new(),
        });
    }

    fn lookup(&self, context: &str, name: &str, kinds: &[Kind]) -> Result<Lookup<'_>, LoadError> {
        match self.declared.get(name) {
            Some(k) if kinds.contains(k) => Ok(match self.entries.get(name) {
                Some(e) => Lookup::Found(e),
                None => Lookup::Blocked,
            }),
            _ => Err(LoadError::Unresolved {
                context: context.to_string(),
                expected: kinds[0].noun(),
                name: name.to_string(),
            }),
        }
    }

    fn load_category(&mut self, c: &Named<famcat::category::CategoryTables>) {
        let (cat, report) = FiniteCategory::from_tables(&c.value);
        self.record(&c.name, Kind::Category, report, cat.map(|c| Entry::Category(Arc::new(c))));
    }

    fn load_groupoid(&mut self, g: &Named<famcat::groupoid::GroupoidTables>) {
        let (groupoid, report) = FiniteGroupoid::from_tables(&g.value);
        let entry = groupoid.map(|g| {
            let cat = Arc::new(g.category().clone());
            Entry::Groupoid(Arc::new(g), cat)
        });
        self.record(&g.name, Kind::Groupoid, report, entry);
    }

    fn load_functor(&mut self, f: &Named<FunctorDoc>) -> Result<(), LoadError> {
        let context = format!("functor `{}`", f.name);
        let cats = [Kind::Category, Kind::Groupoid];
        let (src, tgt) = match (
            self.lookup(&context, &f.value.source, &cats)?,
            self.lookup(&context, &f.value.target, &cats)?,
        ) {
            (Lookup::Found(s), Lookup::Found(t)) => (category_of(s), category_of(t)),
            (Lookup::Blocked, _) => {
                self.block(&f.name, Kind::Functor, &f.value.source);
                return Ok(());
            }
            _ => {
                self.block(&f.name, Kind::Functor, &f.value.target);
                return Ok(());
            }
        };
        let (functor, report) = build_functor(&src, &tgt, &f.value.map, &context);
        let entry = functor.map(|functor| Entry::Functor {
            source: f.value.source.clone(),
            target: f.value.target.clone(),
            functor,
        });
        self.record(&f.name, Kind::Functor, report, entry);
        Ok(())
    }

    fn load_family(&mut self, f: &Named<FamilyDoc>) -> Result<(), LoadError> {
        let context = format!("family `{}`", f.name);
        let category = match self.lookup(&context, &f.value.category, &[Kind::Category, Kind::Groupoid])? {
            Lookup::Found(e) => category_of(e),
            Lookup::Blocked => {
                self.block(&f.name, Kind::Family, &f.value.category);
                return Ok(());
            }
        };
        let (shape, shape_name) = match &f.value.shape {
            ShapeRef::Name(n) => match self.lookup(&context, n, &[Kind::Groupoid])? {
                Lookup::Found(Entry::Groupoid(g, _)) => ((**g).clone(), Some(n.clone())),
                _ => {
                    self.block(&f.name, Kind::Family, n);
                    return Ok(());
                }
            },
            ShapeRef::Inline(tables) => match FiniteGroupoid::from_tables(tables) {
                (Some(g), report) if report.is_valid() => (g, None),
                (_, report) => {
                    self.record(&f.name, Kind::Family, report, None);
                    return Ok(());
                }
            },
        };
        let (arrow, report) = build_functor(&shape, &category, &f.value.arrow, &format!("{context} arrow"));
        let Some(arrow) = arrow else {
            self.record(&f.name, Kind::Family, report, None);
            return Ok(());
        };
        let family = FamObject {
            shape,
            category,
            arrow,
        };
        let report = validate_fam_object(&family);
        let entry = Entry::Family {
            family: Arc::new(family),
            category: f.value.category.clone(),
            shape: shape_name,
        };
        self.record(&f.name, Kind::Family, report, Some(entry));
        Ok(())
    }

    fn load_morphism(&mut self, m: &Named<MorphismDoc>) -> Result<(), LoadError> {
        let context = format!("morphism `{}`", m.name);
        let mut ends = Vec::new();
        for name in [&m.value.domain, &m.value.codomain] {
            match self.lookup(&context, name, &[Kind::Family])? {
                Lookup::Found(Entry::Family { family, .. }) => ends.push(family.clone()),
                _ => {
                    self.block(&m.name, Kind::Morphism, name);
                    return Ok(());
                }
            }
        }
        let (domain, codomain) = (ends[0].clone(), ends[1].clone());
        let (shape_map, mut report) = build_functor(
            &domain.shape,
            &codomain.shape,
            &m.value.shape_map,
            &format!("{context} shape map"),
        );
        let Some(shape_map) = shape_map else {
            self.record(&m.name, Kind::Morphism, report, None);
            return Ok(());
        };
        let c = &domain.category;
        for key in m.value.components.keys() {
            if domain.shape.find_object(key).is_none() {
                report.push(Violation::UnknownObject {
                    context: format!("{context} components"),
                    id: key.clone(),
                });
            }
        }
        let mut components = Vec::new();
        for x in domain.shape.object_ids() {
            let name = domain.shape.object_name(x);
            let (a, b) = (domain.arrow.obj(x), codomain.arrow.obj(shape_map.obj(x)));
            match m.value.components.get(name) {
                Some(id) => match c.find_morphism(id) {
                    Some(k) => components.push(k),
                    None => report.push(Violation::UnknownMorphism {
                        context: format!("{context} components"),
                        id: id.clone(),
                    }),
                },
                None if a == b => components.push(c.identity(a)),
                None => report.push(Violation::MissingImage {
                    context: format!("{context} components"),
                    id: name.to_string(),
                }),
            }
        }
        if !report.is_valid() {
            self.record(&m.name, Kind::Morphism, report, None);
            return Ok(());
        }
        let morphism = FamMorphism {
            domain,
            codomain,
            shape_map,
            components: NatTrans { components },
        };
        let report = validate_fam_morphism(&morphism);
        let entry = Entry::Morphism {
            morphism,
            domain: m.value.domain.clone(),
            codomain: m.value.codomain.clone(),
        };
        self.record(&m.name, Kind::Morphism, report, Some(entry));
        Ok(())
    }

    fn load_diagram(&mut self, d: &Named<DiagramDoc>) -> Result<(), LoadError> {
        let context = format!("diagram `{}`", d.name);
        for f in d.value.objects.values() {
            if let Lookup::Blocked = self.lookup(&context, f, &[Kind::Family])? {
                self.block(&d.name, Kind::Diagram, f);
                return Ok(());
            }
        }
        for m in d.value.morphisms.values() {
            if let Lookup::Blocked = self.lookup(&context, m, &[Kind::Morphism])? {
                self.block(&d.name, Kind::Diagram, m);
                return Ok(());
            }
        }
        self.record(&d.name, Kind::Diagram, ValidationReport::new(), Some(Entry::Diagram(d.value.clone())));
        Ok(())
    }

    fn load_retraction(&mut self, r: &Named<RetractionDoc>) {
        let (x, report) = build_retraction(&r.value);
        let report = match &x {
            Some(x) if report.is_valid() => validate_retraction(x),
            _ => report,
        };
        self.record(&r.name, Kind::Retraction, report, x.map(Entry::Retraction));
    }

    fn load_pointed(&mut self, p: &Named<PointedFamilyDoc>) {
        let (f, report) = build_pointed(&p.value);
        let report = match &f {
            Some(f) if report.is_valid() => validate_pointed_family(f),
            _ => report,
        };
        self.record(&p.name, Kind::PointedFamily, report, f.map(Entry::PointedFamily));
    }

    /// Name of a workspace category equal to `c`, if any.
    pub fn category_name(&self, c: &Arc<FiniteCategory>) -> Option<&str> {
        self.entries.iter().find_map(|(name, e)| match e {
            Entry::Category(k) | Entry::Groupoid(_, k) if Arc::ptr_eq(k, c) || **k == **c => Some(name.as_str()),
            _ => None,
        })
    }

    /// Resolves a diagram against an index groupoid.
    pub fn diagram(&self, name: &str, index: &FiniteGroupoid) -> Result<FamDiagram, String> {
        let Some(Entry::Diagram(doc)) = self.get(name) else {
            return Err(format!("no valid diagram named `{name}`"));
        };
        let mut objects = Vec::new();
        for j in index.object_ids() {
            let id = index.object_name(j);
            let fam = doc
                .objects
                .get(id)
                .ok_or_else(|| format!("diagram `{name}` gives no family for index object `{id}`"))?;
            match self.get(fam) {
                Some(Entry::Family { family, .. }) => objects.push(family.clone()),
                _ => return Err(format!("diagram `{name}`: `{fam}` is not a valid family")),
            }
        }
        for key in doc.objects.keys() {
            if index.find_object(key).is_none() {
                return Err(format!("diagram `{name}`: unknown index object `{key}`"));
            }
        }
        for key in doc.morphisms.keys() {
            if index.find_morphism(key).is_none() {
                return Err(format!("diagram `{name}`: unknown index morphism `{key}`"));
            }
        }
        let mut morphisms = Vec::new();
        for u in index.morphism_ids() {
            let id = index.morphism_name(u);
            match doc.morphisms.get(id) {
                Some(m) => match self.get(m) {
                    Some(Entry::Morphism { morphism, .. }) => morphisms.push(morphism.clone()),
                    _ => return Err(format!("diagram `{name}`: `{m}` is not a valid morphism")),
                },
                None if index.is_identity(u) => {
                    morphisms.push(FamMorphism::identity(&objects[index.source(u).0]));
                }
                None => return Err(format!("diagram `{name}` gives no morphism for index morphism `{id}`")),
            }
        }
        let category = objects
            .first()
            .map(|o| o.category.clone())
            .ok_or_else(|| format!("diagram `{name}` is empty"))?;
        Ok(FamDiagram {
            category,
            objects,
            morphisms,
        })
    }

    /// Every valid entry, in load order.
    pub fn to_document(&self) -> Document {
        let mut doc = Document {
            schema: Some(SCHEMA_VERSION.to_string()),
            ..Document::default()
        };
        for s in self.statuses.iter().filter(|s| s.valid) {
            let name = s.name.clone();
            match &self.entries[&s.name] {
                Entry::Category(c) => doc.categories.push(Named {
                    name,
                    value: c.to_tables(),
                }),
                Entry::Groupoid(g, _) => doc.groupoids.push(Named {
                    name,
                    value: g.to_tables(),
                }),
                Entry::Functor {
                    source,
                    target,
                    functor,
                } => {
                    let (src, tgt) = (self.category(source), self.category(target));
                    doc.functors.push(Named {
                        name,
                        value: FunctorDoc {
                            source: source.clone(),
                            target: target.clone(),
                            map: map_doc(&src, &tgt, functor),
                        },
                    });
                }
                Entry::Family {
                    family,
                    category,
                    shape,
                } => doc.families.push(Named {
                    name,
                    value: family_doc(family, category, shape.clone()),
                }),
                Entry::Morphism {
                    morphism,
                    domain,
                    codomain,
                } => doc.morphisms.push(Named {
                    name,
                    value: morphism_doc(morphism, domain, codomain),
                }),
                Entry::Diagram(d) => doc.diagrams.push(Named { name, value: d.clone() }),
                Entry::Retraction(x) => doc.retractions.push(Named {
                    name,
                    value: retraction_doc(x),
                }),
                Entry::PointedFamily(f) => doc.pointed_families.push(Named {
                    name,
                    value: pointed_doc(f),
                }),
            }
        }
        doc
    }

    fn category(&self, name: &str) -> Arc<FiniteCategory> {
        category_of(&self.entries[name])
    }
}

fn category_of(e: &Entry) -> Arc<FiniteCategory> {
    match e {
        Entry::Category(c) | Entry::Groupoid(_, c) => c.clone(),
        _ => unreachable!("looked up as a category"),
    }
}

pub fn parse_document(path: &str, text: &str) -> Result<Document, LoadError> {
    let doc: Document = serde_json::from_str(text).map_err(|e| LoadError::Parse {
        path: path.to_string(),
        line: e.line(),
        column: e.column(),
        message: {
            let full = e.to_string();
            match full.rsplit_once(" at line ") {
                Some((head, _)) => head.to_string(),
                None => full,
            }
        },
    })?;
    match &doc.schema {
        Some(s) if s != SCHEMA_VERSION => Err(LoadError::Schema {
            path: path.to_string(),
            found: s.clone(),
        }),
        _ => Ok(doc),
    }
}

/// Resolves a name-based map into a functor and validates it.
pub fn build_functor(
    src: &FiniteCategory,
    tgt: &FiniteCategory,
    map: &MapDoc,
    context: &str,
) -> (Option<Functor>, ValidationReport) {
    let mut report = ValidationReport::new();
    let unknown_object = |id: &str| Violation::UnknownObject {
        context: context.to_string(),
        id: id.to_string(),
    };
    let unknown_morphism = |id: &str| Violation::UnknownMorphism {
        context: context.to_string(),
        id: id.to_string(),
    };
    for key in map.objects.keys() {
        if src.find_object(key).is_none() {
            report.push(unknown_object(key));
        }
    }
    for key in map.morphisms.keys() {
        if src.find_morphism(key).is_none() {
            report.push(unknown_morphism(key));
        }
    }
    let mut objects = Vec::new();
    for o in src.object_ids() {
        let name = src.object_name(o);
        match map.objects.get(name) {
            Some(t) => match tgt.find_object(t) {
                Some(t) => objects.push(t),
                None => report.push(unknown_object(t)),
            },
            None => report.push(Violation::MissingImage {
                context: context.to_string(),
                id: name.to_string(),
            }),
        }
    }
    if !report.is_valid() {
        return (None, report);
    }
    let mut morphisms = Vec::new();
    for m in src.morphism_ids() {
        let name = src.morphism_name(m);
        match map.morphisms.get(name) {
            Some(t) => match tgt.find_morphism(t) {
                Some(t) => morphisms.push(t),
                None => report.push(unknown_morphism(t)),
            },
            None if src.is_identity(m) => match tgt.try_identity(objects[src.source(m).0]) {
                Some(id) => morphisms.push(id),
                None => report.push(Violation::MissingIdentity {
                    object: tgt.object_name(objects[src.source(m).0]).to_string(),
                }),
            },
            None => report.push(Violation::MissingImage {
                context: context.to_string(),
                id: name.to_string(),
            }),
        }
    }
    if !report.is_valid() {
        return (None, report);
    }
    let f = Functor { objects, morphisms };
    let report = validate_functor(src, tgt, &f);
    (report.is_valid().then_some(f), report)
}

/// Images by id; identities sent to identities are left implicit.
pub fn map_doc(src: &FiniteCategory, tgt: &FiniteCategory, f: &Functor) -> MapDoc {
    MapDoc {
        objects: src
            .object_ids()
            .map(|o| (src.object_name(o).to_string(), tgt.object_name(f.obj(o)).to_string()))
            .collect(),
        morphisms: src
            .morphism_ids()
            .filter(|&m| !(src.is_identity(m) && tgt.is_identity(f.mor(m))))
            .map(|m| (src.morphism_name(m).to_string(), tgt.morphism_name(f.mor(m)).to_string()))
            .collect(),
    }
}

pub fn family_doc(f: &FamObject, category: &str, shape: Option<String>) -> FamilyDoc {
    FamilyDoc {
        category: category.to_string(),
        shape: match shape {
            Some(n) => ShapeRef::Name(n),
            None => ShapeRef::Inline(f.shape.to_tables()),
        },
        arrow: map_doc(&f.shape, &f.category, &f.arrow),
    }
}

/// Identity components are left implicit.
pub fn morphism_doc(m: &FamMorphism, domain: &str, codomain: &str) -> MorphismDoc {
    let (x, c) = (&m.domain.shape, &m.domain.category);
    MorphismDoc {
        domain: domain.to_string(),
        codomain: codomain.to_string(),
        shape_map: map_doc(x, &m.codomain.shape, &m.shape_map),
        components: x
            .object_ids()
            .filter(|&o| !c.is_identity(m.components.at(o)))
            .map(|o| (x.object_name(o).to_string(), c.morphism_name(m.components.at(o)).to_string()))
            .collect(),
    }
}

fn position(labels: &[Label], id: &str) -> Option<usize> {
    labels.iter().position(|l| l.to_string() == id)
}

fn resolve_map(
    from: &[Label],
    to: &[Label],
    map: &BTreeMap<String, String>,
    context: &str,
    report: &mut ValidationReport,
) -> Vec<usize> {
    for key in map.keys() {
        if position(from, key).is_none() {
            report.push(Violation::UnknownObject {
                context: context.to_string(),
                id: key.clone(),
            });
        }
    }
    let mut out = Vec::new();
    for l in from {
        let id = l.to_string();
        match map.get(&id) {
            Some(v) => match position(to, v) {
                Some(p) => out.push(p),
                None => report.push(Violation::UnknownObject {
                    context: context.to_string(),
                    id: v.clone(),
                }),
            },
            None => report.push(Violation::MissingImage {
                context: context.to_string(),
                id,
            }),
        }
    }
    out
}

pub fn build_retraction(doc: &RetractionDoc) -> (Option<RetractionDiagram>, ValidationReport) {
    let base: Vec<Label> = doc.base.iter().map(Label::atom).collect();
    let total: Vec<Label> = doc.total.iter().map(Label::atom).collect();
    let mut report = ValidationReport::new();
    let s = resolve_map(&base, &total, &doc.s, "s", &mut report);
    let r = resolve_map(&total, &base, &doc.r, "r", &mut report);
    let x = report.is_valid().then_some(RetractionDiagram { base, total, s, r });
    (x, report)
}

pub fn build_pointed(doc: &PointedFamilyDoc) -> (Option<PointedSetFamily>, ValidationReport) {
    let mut report = ValidationReport::new();
    for key in doc.carriers.keys().chain(doc.basepoints.keys()) {
        if !doc.indices.contains(key) {
            report.push(Violation::UnknownObject {
                context: "pointed family".into(),
                id: key.clone(),
            });
        }
    }
    let mut carriers = Vec::new();
    let mut basepoints = Vec::new();
    for i in &doc.indices {
        let carrier: Vec<Label> = match doc.carriers.get(i) {
            Some(c) => c.iter().map(Label::atom).collect(),
            None => {
                report.push(Violation::MissingImage {
                    context: "carriers".into(),
                    id: i.clone(),
                });
                continue;
            }
        };
        match doc.basepoints.get(i).map(|b| position(&carrier, b)) {
            Some(Some(p)) => basepoints.push(p),
            Some(None) => report.push(Violation::BasepointOutOfRange { index: i.clone() }),
            None => report.push(Violation::MissingImage {
                context: "basepoints".into(),
                id: i.clone(),
            }),
        }
        carriers.push(carrier);
    }
    let f = report.is_valid().then(|| PointedSetFamily {
        indices: doc.indices.iter().map(Label::atom).collect(),
        carriers,
        basepoints,
    });
    (f, report)
}

pub fn retraction_doc(x: &RetractionDiagram) -> RetractionDoc {
    let names = |ls: &[Label]| ls.iter().map(Label::to_string).collect::<Vec<_>>();
    let (base, total) = (names(&x.base), names(&x.total));
    RetractionDoc {
        s: x.s.iter().enumerate().map(|(b, &t)| (base[b].clone(), total[t].clone())).collect(),
        r: x.r.iter().enumerate().map(|(t, &b)| (total[t].clone(), base[b].clone())).collect(),
        base,
        total,
    }
}

pub fn pointed_doc(f: &PointedSetFamily) -> PointedFamilyDoc {
    let indices: Vec<String> = f.indices.iter().map(Label::to_string).collect();
    PointedFamilyDoc {
        carriers: indices
            .iter()
            .zip(&f.carriers)
            .map(|(i, c)| (i.clone(), c.iter().map(Label::to_string).collect()))
            .collect(),
        basepoints: indices
            .iter()
            .zip(f.carriers.iter().zip(&f.basepoints))
            .map(|(i, (c, &b))| (i.clone(), c[b].to_string()))
            .collect(),
        indices,
    }
}

/// Names of the given objects of `g`.
pub fn object_names(g: &FiniteCategory, objects: &[ObjId]) -> Vec<String> {
    objects.iter().map(|&o| g.object_name(o).to_string()).collect()
}

pub fn morphism_names(g: &FiniteCategory, morphisms: &[MorId]) -> Vec<String> {
    morphisms.iter().map(|&m| g.morphism_name(m).to_string()).collect()
}
