//! JSON workbench files, the task runner and the `catcoh` command line.
//!
//! A file has named blocks `categories`, `functors`, `adjunctions`,
//! `presheaves`, `diagrams`, `natural_systems` and a `tasks` list. All
//! indices are 0-based and matrices are row-major integer arrays.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bw::{bw_cohomology_with_budget, check_lemma_4vanish, check_lemma_trivial, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::fincat::{Adjunction, CatFunctor, FiniteCategory};
use crate::grothendieck::{
    check_lemma_adjuntos, check_prop_muro, grothendieck_construction, is_h_local, is_local, locality_report,
    thomason_tilde, Diagram,
};
use crate::homalg::{AbInvariants, IntMatrix, Ring};
use crate::natsys::{NaturalSystem, SetPresheaf};
use crate::report::{CheckReport, Status};
use crate::spectral::{check_theorem1_with_budget, check_theorem2_with_budget, e1_page, theorem1_data, PageTable};

pub const DEFAULT_MAX_DEGREE: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum CategorySpec {
    Terminal,
    Discrete(usize),
    /// Generated by the listed pairs `x ≤ y`.
    Poset { objects: usize, relation: Vec<(usize, usize)> },
    /// Multiplication table with unit 0.
    Monoid(Vec<Vec<usize>>),
    CyclicGroup(usize),
    /// `composition` lists `(g, f, g∘f)` for every composable pair.
    Explicit {
        objects: usize,
        morphisms: Vec<(usize, usize)>,
        identities: Vec<usize>,
        composition: Vec<(usize, usize, usize)>,
    },
}

impl CategorySpec {
    pub fn build(&self) -> Result<FiniteCategory> {
        match self {
            CategorySpec::Terminal => Ok(FiniteCategory::terminal()),
            CategorySpec::Discrete(n) => Ok(FiniteCategory::discrete(*n)),
            CategorySpec::Poset { objects, relation } => FiniteCategory::poset_from_covers(*objects, relation),
            CategorySpec::Monoid(table) => FiniteCategory::monoid(table),
            CategorySpec::CyclicGroup(n) if *n == 0 => Err(Error::NotAMonoid("cyclic group of order 0".into())),
            CategorySpec::CyclicGroup(n) => Ok(FiniteCategory::cyclic_group(*n)),
            CategorySpec::Explicit { objects, morphisms, identities, composition } => {
                if let Some(&(s, t)) = morphisms.iter().find(|&&(s, t)| s >= *objects || t >= *objects) {
                    return Err(Error::Parse(format!("morphism ({s}, {t}) references a missing object")));
                }
                if identities.len() != *objects || identities.iter().any(|&i| i >= morphisms.len()) {
                    return Err(Error::Parse("identities must name one morphism per object".into()));
                }
                FiniteCategory::from_triples(*objects, morphisms, identities.clone(), composition)
            }
        }
    }

    pub fn explicit(cat: &FiniteCategory) -> Self {
        CategorySpec::Explicit {
            objects: cat.n_objects(),
            morphisms: cat.morphism_pairs(),
            identities: (0..cat.n_objects()).map(|x| cat.identity(x)).collect(),
            composition: cat.composition_triples(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorSpec {
    pub src: String,
    pub tgt: String,
    pub obj_map: Vec<usize>,
    pub mor_map: Vec<usize>,
}

/// A left adjoint `l`; `r` and `unit` may be omitted when both sides are
/// posets, in which case the right adjoint is computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdjunctionSpec {
    pub l: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<usize>>,
}

/// `T: C^op → FinSet` with `maps[f]: T(tgt f) → T(src f)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresheafSpec {
    pub category: String,
    pub sizes: Vec<usize>,
    pub maps: Vec<Vec<usize>>,
}

/// `on_mor` names one functor per base morphism, `"id"` for an identity;
/// omitted means every morphism acts by the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramSpec {
    pub base: String,
    pub fibers: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub on_mor: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BaseRef {
    Category(String),
    Grothendieck { grothendieck: String },
}

/// One generating action: `post` entries give `ψ_*: D(α) → D(ψα)` with
/// `morphism = ψ`, `pre` entries give `ν^*: D(α) → D(αν)` with `morphism = ν`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    pub morphism: usize,
    pub on: usize,
    pub matrix: Vec<i64>,
}

/// Ranks per morphism (or `constant`), plus the non-identity actions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSpec {
    pub base: BaseRef,
    pub ring: Ring,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constant: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ranks: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub post: Vec<ActionSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pre: Vec<ActionSpec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Op {
    Cohomology,
    Grothendieck,
    Spectral,
    Check,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CheckTarget {
    Trivial,
    #[serde(rename = "4vanish")]
    #[value(name = "4vanish")]
    FourVanish,
    Adjuntos,
    Muro,
    Theorem1,
    Theorem2,
    Local,
    HLocal,
}

/// One operation with its parameters; used both for file tasks and for the
/// command-line subcommands.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize, Args)]
pub struct TaskParams {
    /// Category, for `check trivial`.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub category: Option<String>,
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<String>,
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagram: Option<String>,
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub adjunction: Option<String>,
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presheaf: Option<String>,
    /// Object `a` for `check 4vanish`.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub object: Option<usize>,
    /// Element `m ∈ T(a)` for `check 4vanish`.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub element: Option<usize>,
    /// Coefficient rank for constant coefficients.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    /// `zz` or `fp:<p>`; overrides the ring of the system.
    #[arg(long, global = true)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<Ring>,
    /// Degree the complexes are stored to; results are trusted one below.
    #[arg(long, global = true)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<usize>,
    /// Last spectral page to report.
    #[arg(long, global = true)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pages: Option<usize>,
    /// Cap on the total rank of any complex.
    #[arg(long, global = true)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
}

impl TaskParams {
    fn n_max(&self) -> usize {
        self.max_degree.unwrap_or(DEFAULT_MAX_DEGREE).max(1)
    }

    fn budget(&self) -> usize {
        self.budget.unwrap_or(DEFAULT_BUDGET)
    }

    /// Fills unset fields from `defaults`.
    fn or(&self, defaults: &TaskParams) -> TaskParams {
        TaskParams {
            category: self.category.clone().or_else(|| defaults.category.clone()),
            system: self.system.clone().or_else(|| defaults.system.clone()),
            diagram: self.diagram.clone().or_else(|| defaults.diagram.clone()),
            adjunction: self.adjunction.clone().or_else(|| defaults.adjunction.clone()),
            presheaf: self.presheaf.clone().or_else(|| defaults.presheaf.clone()),
            object: self.object.or(defaults.object),
            element: self.element.or(defaults.element),
            rank: self.rank.or(defaults.rank),
            ring: self.ring.or(defaults.ring),
            max_degree: self.max_degree.or(defaults.max_degree),
            pages: self.pages.or(defaults.pages),
            budget: self.budget.or(defaults.budget),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskSpec {
    pub name: String,
    pub op: Op,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<CheckTarget>,
    #[serde(flatten)]
    pub params: TaskParams,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkbenchFile {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub categories: BTreeMap<String, CategorySpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub functors: BTreeMap<String, FunctorSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub adjunctions: BTreeMap<String, AdjunctionSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub presheaves: BTreeMap<String, PresheafSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub diagrams: BTreeMap<String, DiagramSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub natural_systems: BTreeMap<String, SystemSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tasks: Vec<TaskSpec>,
}

/// A file with every name resolved and every structure validated.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Workbench {
    pub categories: BTreeMap<String, Arc<FiniteCategory>>,
    pub functors: BTreeMap<String, CatFunctor>,
    pub adjunctions: BTreeMap<String, Adjunction>,
    pub presheaves: BTreeMap<String, (Arc<FiniteCategory>, SetPresheaf)>,
    pub diagrams: BTreeMap<String, Diagram>,
    pub systems: BTreeMap<String, NaturalSystem>,
    pub tasks: Vec<TaskSpec>,
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, kind: &str, name: &str) -> Result<&'a T> {
    map.get(name).ok_or_else(|| Error::Parse(format!("unknown {kind} '{name}'")))
}

/// Prefixes an error with the block entry it came from.
fn located<T>(r: Result<T>, kind: &str, name: &str) -> Result<T> {
    let at = |msg: String| format!("{kind} '{name}': {msg}");
    let prefix = |mut rep: crate::fincat::ValidationReport| {
        rep.violations.iter_mut().for_each(|v| *v = at(std::mem::take(v)));
        rep
    };
    r.map_err(|e| match e {
        Error::Parse(m) => Error::Parse(at(m)),
        Error::Dimension(m) => Error::Dimension(at(m)),
        Error::NotAMonoid(m) => Error::NotAMonoid(at(m)),
        Error::RelationNotPartialOrder(m) => Error::RelationNotPartialOrder(at(m)),
        Error::InvalidCategory(rep) => Error::InvalidCategory(prefix(rep)),
        Error::NotAFunctor(rep) => Error::NotAFunctor(prefix(rep)),
        Error::InvalidNaturalSystem(rep) => Error::InvalidNaturalSystem(prefix(rep)),
        Error::InvalidAdjunction(rep) => Error::InvalidAdjunction(prefix(rep)),
        Error::InvalidDiagram(rep) => Error::InvalidDiagram(prefix(rep)),
        other => other,
    })
}

impl WorkbenchFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("workbench files serialize")
    }

    pub fn resolve(&self) -> Result<Workbench> {
        let mut wb = Workbench::default();
        for (name, spec) in &self.categories {
            wb.categories.insert(name.clone(), Arc::new(located(spec.build(), "category", name)?));
        }
        for (name, spec) in &self.functors {
            let src = lookup(&wb.categories, "category", &spec.src)?.clone();
            let tgt = lookup(&wb.categories, "category", &spec.tgt)?.clone();
            let f = CatFunctor::new(src, tgt, spec.obj_map.clone(), spec.mor_map.clone());
            wb.functors.insert(name.clone(), located(f, "functor", name)?);
        }
        for (name, spec) in &self.adjunctions {
            let l = lookup(&wb.functors, "functor", &spec.l)?.clone();
            let adj = match (&spec.r, &spec.unit) {
                (Some(r), Some(unit)) => {
                    let r = lookup(&wb.functors, "functor", r)?.clone();
                    Adjunction::new(l, r, unit.clone())
                }
                (None, None) => Adjunction::galois(l)
                    .ok_or_else(|| Error::Parse("l has no right adjoint between posets".into())),
                _ => Err(Error::Parse("give both r and unit, or neither".into())),
            };
            wb.adjunctions.insert(name.clone(), located(adj, "adjunction", name)?);
        }
        for (name, spec) in &self.presheaves {
            let cat = lookup(&wb.categories, "category", &spec.category)?.clone();
            let t = SetPresheaf { sizes: spec.sizes.clone(), maps: spec.maps.clone() };
            let report = t.validate(&cat);
            if !report.is_valid() {
                return located(Err(Error::NotAFunctor(report)), "presheaf", name);
            }
            wb.presheaves.insert(name.clone(), (cat, t));
        }
        for (name, spec) in &self.diagrams {
            let dg = resolve_diagram(&wb, spec);
            wb.diagrams.insert(name.clone(), located(dg, "diagram", name)?);
        }
        for (name, spec) in &self.natural_systems {
            let sys = resolve_system(&wb, spec);
            wb.systems.insert(name.clone(), located(sys, "natural system", name)?);
        }
        for task in &self.tasks {
            task_inputs(&wb, task.op, task.target, &task.params)?;
        }
        wb.tasks = self.tasks.clone();
        Ok(wb)
    }

    /// The same file with every category and natural system written out in
    /// explicit form.
    pub fn expanded(&self, wb: &Workbench) -> WorkbenchFile {
        let mut out = self.clone();
        for (name, spec) in out.categories.iter_mut() {
            *spec = CategorySpec::explicit(&wb.categories[name]);
        }
        for (name, spec) in out.natural_systems.iter_mut() {
            *spec = explicit_system(spec.base.clone(), &wb.systems[name]);
        }
        out
    }
}

fn resolve_diagram(wb: &Workbench, spec: &DiagramSpec) -> Result<Diagram> {
    let base = lookup(&wb.categories, "category", &spec.base)?.clone();
    let fibers: Vec<Arc<FiniteCategory>> =
        spec.fibers.iter().map(|f| lookup(&wb.categories, "category", f).cloned()).collect::<Result<_>>()?;
    if fibers.len() != base.n_objects() {
        return Err(Error::Parse(format!("{} fibers for {} base objects", fibers.len(), base.n_objects())));
    }
    let on_mor = match &spec.on_mor {
        None => (0..base.n_morphisms())
            .map(|m| {
                let (s, t) = (base.src(m), base.tgt(m));
                if fibers[s] == fibers[t] {
                    Ok(CatFunctor::identity(fibers[s].clone()))
                } else {
                    Err(Error::Parse(format!("morphism {m} joins different fibers; on_mor is required")))
                }
            })
            .collect::<Result<Vec<_>>>()?,
        Some(names) => {
            if names.len() != base.n_morphisms() {
                return Err(Error::Parse(format!("{} on_mor entries for {} morphisms", names.len(), base.n_morphisms())));
            }
            names
                .iter()
                .enumerate()
                .map(|(m, n)| {
                    if n == "id" {
                        Ok(CatFunctor::identity(fibers[base.src(m)].clone()))
                    } else {
                        lookup(&wb.functors, "functor", n).cloned()
                    }
                })
                .collect::<Result<Vec<_>>>()?
        }
    };
    Diagram::new(base, fibers, on_mor)
}

fn resolve_system(wb: &Workbench, spec: &SystemSpec) -> Result<NaturalSystem> {
    let base = match &spec.base {
        BaseRef::Category(name) => lookup(&wb.categories, "category", name)?.clone(),
        BaseRef::Grothendieck { grothendieck } => {
            grothendieck_construction(lookup(&wb.diagrams, "diagram", grothendieck)?).category.clone()
        }
    };
    let m = base.n_morphisms();
    let ranks = match (&spec.constant, &spec.ranks) {
        (Some(r), None) => vec![*r; m],
        (None, Some(rs)) if rs.len() == m => rs.clone(),
        (None, Some(rs)) => return Err(Error::Parse(format!("{} ranks for {m} morphisms", rs.len()))),
        _ => return Err(Error::Parse("give exactly one of constant and ranks".into())),
    };
    let mut post: BTreeMap<(usize, usize), IntMatrix> = BTreeMap::new();
    let mut pre: BTreeMap<(usize, usize), IntMatrix> = BTreeMap::new();
    for (kind, list, table) in [("post", &spec.post, &mut post), ("pre", &spec.pre, &mut pre)] {
        for a in list {
            if a.morphism >= m || a.on >= m {
                return Err(Error::Parse(format!("{kind} action ({}, {}) names a missing morphism", a.morphism, a.on)));
            }
            let composable =
                if kind == "post" { base.src(a.morphism) == base.tgt(a.on) } else { base.tgt(a.morphism) == base.src(a.on) };
            if !composable {
                return Err(Error::Parse(format!("{kind} action ({}, {}) is not composable", a.morphism, a.on)));
            }
            let image = if kind == "post" { base.comp(a.morphism, a.on) } else { base.comp(a.on, a.morphism) };
            let (rows, cols) = (ranks[image], ranks[a.on]);
            if a.matrix.len() != rows * cols {
                return Err(Error::Parse(format!(
                    "{kind} action ({}, {}) needs {rows}×{cols} entries, got {}",
                    a.morphism,
                    a.on,
                    a.matrix.len()
                )));
            }
            table.insert((a.morphism, a.on), IntMatrix::from_i64(rows, cols, &a.matrix));
        }
    }
    let missing = std::cell::Cell::new(None);
    let sys = NaturalSystem::from_fn(
        base.clone(),
        spec.ring,
        ranks.clone(),
        |psi, a| {
            post.get(&(psi, a)).cloned().unwrap_or_else(|| default_action(&ranks, base.comp(psi, a), a, &missing))
        },
        |nu, a| pre.get(&(nu, a)).cloned().unwrap_or_else(|| default_action(&ranks, base.comp(a, nu), a, &missing)),
    );
    if let Some((img, a)) = missing.get() {
        return Err(Error::Parse(format!("no action given from morphism {a} to {img} and the ranks differ")));
    }
    sys.validated()
}

fn default_action(ranks: &[usize], image: usize, a: usize, missing: &std::cell::Cell<Option<(usize, usize)>>) -> IntMatrix {
    if ranks[image] == ranks[a] {
        IntMatrix::identity(ranks[a])
    } else {
        missing.set(missing.get().or(Some((image, a))));
        IntMatrix::zeros(ranks[image], ranks[a])
    }
}

fn explicit_system(base: BaseRef, sys: &NaturalSystem) -> SystemSpec {
    let c = sys.base();
    let entries = |m: &IntMatrix| m.to_i64_vec().expect("action entries fit in i64");
    let mut post = Vec::new();
    let mut pre = Vec::new();
    for a in 0..c.n_morphisms() {
        for &psi in c.outgoing(c.tgt(a)) {
            let m = sys.post(psi, a);
            if *m != IntMatrix::identity(sys.rank(a)) {
                post.push(ActionSpec { morphism: psi, on: a, matrix: entries(m) });
            }
        }
        for &nu in c.incoming(c.src(a)) {
            let m = sys.pre(nu, a);
            if *m != IntMatrix::identity(sys.rank(a)) {
                pre.push(ActionSpec { morphism: nu, on: a, matrix: entries(m) });
            }
        }
    }
    SystemSpec { base, ring: sys.ring(), constant: None, ranks: Some(sys.ranks().to_vec()), post, pre }
}

/// Resolved inputs of one operation.
enum Inputs<'a> {
    Cohomology(NaturalSystem),
    Grothendieck(&'a Diagram, Option<NaturalSystem>),
    Spectral(&'a Diagram, NaturalSystem),
    Trivial(Arc<FiniteCategory>),
    FourVanish(&'a (Arc<FiniteCategory>, SetPresheaf), usize, usize),
    Adjunction(&'a Adjunction, NaturalSystem),
    Diagram(&'a Diagram, NaturalSystem),
}

fn required<'a>(field: &'a Option<String>, flag: &str) -> Result<&'a str> {
    field.as_deref().ok_or_else(|| Error::Parse(format!("missing --{flag}")))
}

fn system_for(wb: &Workbench, p: &TaskParams) -> Result<NaturalSystem> {
    let sys = lookup(&wb.systems, "natural system", required(&p.system, "system")?)?;
    Ok(match p.ring {
        Some(r) if r != sys.ring() => sys.over(r),
        _ => sys.clone(),
    })
}

fn task_inputs<'a>(wb: &'a Workbench, op: Op, target: Option<CheckTarget>, p: &TaskParams) -> Result<Inputs<'a>> {
    let diagram = || lookup(&wb.diagrams, "diagram", required(&p.diagram, "diagram")?);
    Ok(match op {
        Op::Cohomology => Inputs::Cohomology(system_for(wb, p)?),
        Op::Grothendieck => {
            let sys = if p.system.is_some() { Some(system_for(wb, p)?) } else { None };
            Inputs::Grothendieck(diagram()?, sys)
        }
        Op::Spectral => Inputs::Spectral(diagram()?, system_for(wb, p)?),
        Op::Check => match target.ok_or_else(|| Error::Parse("check needs a target".into()))? {
            CheckTarget::Trivial => {
                let cat = match (&p.category, &p.system) {
                    (Some(c), _) => lookup(&wb.categories, "category", c)?.clone(),
                    (None, Some(_)) => system_for(wb, p)?.base().clone(),
                    (None, None) => return Err(Error::Parse("missing --category".into())),
                };
                Inputs::Trivial(cat)
            }
            CheckTarget::FourVanish => {
                let t = lookup(&wb.presheaves, "presheaf", required(&p.presheaf, "presheaf")?)?;
                let a = p.object.ok_or_else(|| Error::Parse("missing --object".into()))?;
                let m = p.element.ok_or_else(|| Error::Parse("missing --element".into()))?;
                Inputs::FourVanish(t, a, m)
            }
            CheckTarget::Adjuntos | CheckTarget::Muro => {
                let adj = lookup(&wb.adjunctions, "adjunction", required(&p.adjunction, "adjunction")?)?;
                Inputs::Adjunction(adj, system_for(wb, p)?)
            }
            CheckTarget::Theorem1 | CheckTarget::Theorem2 | CheckTarget::Local | CheckTarget::HLocal => {
                Inputs::Diagram(diagram()?, system_for(wb, p)?)
            }
        },
    })
}

/// One row of a cohomology table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyRow {
    pub degree: usize,
    pub free_rank: usize,
    pub torsion: Vec<Value>,
    pub display: String,
}

fn bigint_value(x: &BigInt) -> Value {
    match u64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

/// Over 𝔽_p the groups are shown as `F_p^r`.
pub fn cohomology_rows(h: &[AbInvariants], ring: Ring) -> Vec<CohomologyRow> {
    h.iter()
        .enumerate()
        .map(|(degree, g)| CohomologyRow {
            degree,
            free_rank: g.free_rank,
            torsion: g.torsion.iter().map(bigint_value).collect(),
            display: match (ring, g.free_rank) {
                (Ring::Prime(_), 0) => "0".to_string(),
                (Ring::Prime(p), 1) => format!("F_{p}"),
                (Ring::Prime(p), r) => format!("F_{p}^{r}"),
                (Ring::Integers, _) => g.to_string(),
            },
        })
        .collect()
}

/// Result of one task.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TaskRecord {
    pub name: String,
    pub op: Op,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<CheckTarget>,
    pub status: Status,
    pub trusted_degree: isize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cohomology: Option<Vec<CohomologyRow>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pages: Option<Vec<PageTable>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
    pub timing_ms: f64,
}

impl TaskRecord {
    fn new(name: &str, op: Op, target: Option<CheckTarget>, report: CheckReport) -> Self {
        TaskRecord {
            name: name.to_string(),
            op,
            target,
            status: report.status,
            trusted_degree: report.trusted_degree,
            details: report.details,
            cohomology: None,
            pages: None,
            data: None,
            timing_ms: 0.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub file: String,
    pub status: Status,
    pub tasks: Vec<TaskRecord>,
}

impl Report {
    pub fn new(command: &str, file: &Path, tasks: Vec<TaskRecord>) -> Self {
        let status = tasks.iter().fold(Status::Pass, |s, t| s.and(t.status));
        Report { command: command.to_string(), file: file.display().to_string(), status, tasks }
    }

    /// 0 pass (or a legitimately failed hypothesis), 1 failed check, 3 budget.
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass | Status::HypothesisFails => 0,
            Status::Fail => 1,
            Status::BudgetExceeded => 3,
        }
    }
}

/// Runs one operation on a resolved workbench. Budget overruns become
/// `budget-exceeded` records; other errors propagate.
pub fn run_task(wb: &Workbench, name: &str, op: Op, target: Option<CheckTarget>, p: &TaskParams) -> Result<TaskRecord> {
    let start = Instant::now();
    let check = target.map_or_else(|| format!("{op:?}").to_lowercase(), |t| format!("{t:?}").to_lowercase());
    let mut record = match execute(wb, name, op, target, p) {
        Ok(r) => r,
        Err(e @ Error::RankOverflowBudget { .. }) => TaskRecord::new(name, op, target, CheckReport::budget(check, &e)),
        Err(e) => return Err(e),
    };
    record.timing_ms = start.elapsed().as_secs_f64() * 1000.0;
    Ok(record)
}

fn execute(wb: &Workbench, name: &str, op: Op, target: Option<CheckTarget>, p: &TaskParams) -> Result<TaskRecord> {
    let n_max = p.n_max();
    let budget = p.budget();
    let trusted = n_max as isize - 1;
    let ring_or = |default: Ring| p.ring.unwrap_or(default);
    let record = |report: CheckReport| TaskRecord::new(name, op, target, report);
    Ok(match task_inputs(wb, op, target, p)? {
        Inputs::Cohomology(sys) => {
            let h = bw_cohomology_with_budget(&sys, n_max, budget)?;
            let mut rep = CheckReport::new("cohomology", trusted);
            rep.note(format!("ring {}", sys.ring()));
            let mut r = record(rep);
            r.cohomology = Some(cohomology_rows(&h, sys.ring()));
            r
        }
        Inputs::Grothendieck(dg, sys) => {
            let g = grothendieck_construction(dg);
            let tildes: Vec<Value> = (0..dg.base.n_objects())
                .map(|k| {
                    let t = thomason_tilde(dg, k);
                    json!({"k": k, "objects": t.category.n_objects(), "morphisms": t.category.n_morphisms()})
                })
                .collect();
            let mut data = json!({
                "objects": g.objects,
                "morphisms": g.category.n_morphisms(),
                "tilde": tildes,
            });
            let mut rep = CheckReport::new("grothendieck", -1);
            if let Some(sys) = sys {
                let local = is_local(&sys, dg)?;
                let h_local = is_h_local(&sys, dg, n_max)?;
                data["local"] = json!(local);
                data["h_local"] = json!(h_local);
                rep.trusted_degree = trusted;
            }
            rep.note(format!("∫L has {} objects and {} morphisms", g.category.n_objects(), g.category.n_morphisms()));
            let mut r = record(rep);
            r.data = Some(data);
            r
        }
        Inputs::Spectral(dg, sys) => {
            let r_max = p.pages.unwrap_or(n_max + 1).max(1);
            let data = theorem1_data(dg, &sys, n_max, r_max, budget)?;
            let mut rep = CheckReport::new("spectral", trusted);
            rep.absorb(data.bicomplex.check_identities());
            rep.note(format!("Tot ranks {:?}", data.total.ranks()));
            let mut r = record(rep);
            r.cohomology = Some(cohomology_rows(&data.bicomplex.groth_complex.complex.cohomology(), sys.ring()));
            if sys.ring().is_field() {
                r.pages = Some(data.pages.into_iter().take(r_max).collect());
            } else {
                let e1 = e1_page(&data.bicomplex)?;
                let table: Vec<Vec<String>> = e1.iter().map(|col| col.iter().map(|g| g.to_string()).collect()).collect();
                r.data = Some(json!({ "e1": table }));
            }
            r
        }
        Inputs::Trivial(cat) => record(check_lemma_trivial(cat, ring_or(Ring::Integers), p.rank.unwrap_or(1), n_max)?),
        Inputs::FourVanish((cat, t), a, m) => record(check_lemma_4vanish(
            cat.clone(),
            t,
            a,
            m,
            p.rank.unwrap_or(1),
            ring_or(Ring::Integers),
            n_max,
        )?),
        Inputs::Adjunction(adj, sys) => match target {
            Some(CheckTarget::Muro) => record(check_prop_muro(adj, &sys, n_max)?),
            _ => record(check_lemma_adjuntos(adj, &sys, n_max)?),
        },
        Inputs::Diagram(dg, sys) => match target {
            Some(CheckTarget::Theorem1) => record(check_theorem1_with_budget(dg, &sys, n_max, budget)?),
            Some(CheckTarget::Theorem2) => {
                let out = check_theorem2_with_budget(dg, &sys, n_max, budget)?;
                let mut r = record(out.report);
                r.data = Some(json!({
                    "e2_fibers": out.e2_fibers,
                    "e2_tilde": out.e2_tilde,
                    "e2_spectral": out.e2_spectral,
                    "abutment": out.abutment,
                    "cohomology": out.cohomology,
                }));
                r
            }
            Some(CheckTarget::Local) => record(locality_report(&sys, dg)?),
            _ => {
                let mut rep = CheckReport::new("h-local", trusted);
                rep.require(is_h_local(&sys, dg, n_max)?, "comparison is not a quasi-isomorphism for some k");
                record(rep)
            }
        },
    })
}

/// Validation summary of a whole file.
pub fn validate_file(path: &Path) -> Result<Report> {
    let file = WorkbenchFile::load(path)?;
    let mut rep = CheckReport::new("validate", -1);
    match file.resolve() {
        Ok(wb) => {
            rep.note(format!(
                "{} categories, {} functors, {} adjunctions, {} presheaves, {} diagrams, {} natural systems, {} tasks",
                wb.categories.len(),
                wb.functors.len(),
                wb.adjunctions.len(),
                wb.presheaves.len(),
                wb.diagrams.len(),
                wb.systems.len(),
                wb.tasks.len()
            ));
        }
        Err(Error::Parse(msg)) => return Err(Error::Parse(msg)),
        Err(e) => rep.require(false, e.to_string()),
    }
    Ok(Report::new("validate", path, vec![TaskRecord::new("validate", Op::Check, None, rep)]))
}

/// Runs every task of a file in order.
pub fn run_file(path: &Path, overrides: &TaskParams) -> Result<Report> {
    let wb = WorkbenchFile::load(path)?.resolve()?;
    let records = wb
        .tasks
        .iter()
        .map(|t| run_task(&wb, &t.name, t.op, t.target, &overrides.or(&t.params)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Report::new("run", path, records))
}

#[derive(Debug, Parser)]
#[command(name = "catcoh", version, about = "Baues-Wirsching cohomology and Grothendieck spectral sequences of finite categories")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the JSON report here.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Print nothing on success.
    #[arg(long, global = true)]
    pub quiet: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate every block of a file.
    Validate { file: PathBuf },
    /// Cohomology of a category with coefficients in a natural system.
    Cohomology {
        file: PathBuf,
        #[arg(id = "system_name", value_name = "SYSTEM")]
        system: String,
        #[command(flatten)]
        params: TaskParams,
    },
    /// Sizes of ∫L and of every L̃(k); locality of a system with --system.
    Grothendieck {
        file: PathBuf,
        #[arg(id = "diagram_name", value_name = "DIAGRAM")]
        diagram: String,
        #[command(flatten)]
        params: TaskParams,
    },
    /// Pages of the spectral sequence of a diagram and a system on ∫L.
    Spectral {
        file: PathBuf,
        #[arg(id = "diagram_name", value_name = "DIAGRAM")]
        diagram: String,
        #[arg(id = "system_name", value_name = "SYSTEM")]
        system: String,
        #[command(flatten)]
        params: TaskParams,
    },
    /// Verify one statement on the given inputs.
    Check {
        file: PathBuf,
        target: CheckTarget,
        #[command(flatten)]
        params: TaskParams,
    },
    /// Run the tasks listed in the file.
    Run {
        file: PathBuf,
        #[command(flatten)]
        params: TaskParams,
    },
}

fn single(file: &Path, command: &str, op: Op, target: Option<CheckTarget>, params: &TaskParams) -> Result<Report> {
    let wb = WorkbenchFile::load(file)?.resolve()?;
    let record = run_task(&wb, command, op, target, params)?;
    Ok(Report::new(command, file, vec![record]))
}

pub fn execute_cli(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Validate { file } => validate_file(file),
        Command::Cohomology { file, system, params } => {
            let p = TaskParams { system: Some(system.clone()), ..params.clone() };
            single(file, "cohomology", Op::Cohomology, None, &p)
        }
        Command::Grothendieck { file, diagram, params } => {
            let p = TaskParams { diagram: Some(diagram.clone()), ..params.clone() };
            single(file, "grothendieck", Op::Grothendieck, None, &p)
        }
        Command::Spectral { file, diagram, system, params } => {
            let p = TaskParams { diagram: Some(diagram.clone()), system: Some(system.clone()), ..params.clone() };
            single(file, "spectral", Op::Spectral, None, &p)
        }
        Command::Check { file, target, params } => single(file, "check", Op::Check, Some(*target), params),
        Command::Run { file, params } => run_file(file, params),
    }
}

fn print_human(report: &Report) {
    println!("{}: {}", report.command, report.status);
    for t in &report.tasks {
        println!("[{}] {} (trusted to degree {}, {:.1} ms)", t.name, t.status, t.trusted_degree, t.timing_ms);
        for d in &t.details {
            println!("  {d}");
        }
        if let Some(rows) = &t.cohomology {
            for r in rows {
                println!("  H^{} = {}", r.degree, r.display);
            }
        }
        if let Some(pages) = &t.pages {
            for page in pages {
                let cells: Vec<String> = page.entries.iter().map(|e| format!("({},{})={}", e.p, e.q, e.dim)).collect();
                println!("  E_{}: {}", page.r, cells.join(" "));
            }
        }
        if let Some(data) = &t.data {
            println!("  {data}");
        }
    }
}

/// Parses arguments, runs, writes the report and returns the exit code:
/// 0 pass, 1 failed check, 2 input error, 3 budget exceeded.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let report = match execute_cli(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    if let Some(path) = &cli.out {
        let text = serde_json::to_string_pretty(&report).expect("reports serialize");
        if let Err(e) = std::fs::write(path, text) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return 2;
        }
    }
    if !cli.quiet {
        print_human(&report);
    }
    report.exit_code()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    const SMALL: &str = r#"{
        "categories": {
            "Z2": {"cyclic_group": 2},
            "I": {"poset": {"objects": 2, "relation": [[0, 1]]}},
            "pt": "terminal"
        },
        "diagrams": {"B": {"base": "Z2", "fibers": ["pt"]}},
        "natural_systems": {
            "const": {"base": "Z2", "ring": "zz", "constant": 1},
            "onB": {"base": {"grothendieck": "B"}, "ring": "fp:2", "constant": 1},
            "twisted": {"base": "I", "ring": "zz", "constant": 1,
                        "post": [{"morphism": 1, "on": 0, "matrix": [2]}]}
        },
        "tasks": [
            {"name": "h", "op": "cohomology", "system": "const", "max_degree": 5},
            {"name": "t1", "op": "check", "target": "theorem1", "diagram": "B", "system": "onB"}
        ]
    }"#;

    #[test]
    fn parse_resolve_and_round_trip() {
        let file = WorkbenchFile::parse(SMALL).unwrap();
        let wb = file.resolve().unwrap();
        assert_eq!(wb.categories["I"].n_morphisms(), 3);
        assert_eq!(wb.systems["twisted"].post(1, 0), &IntMatrix::scalar(1, 2));
        let expanded = file.expanded(&wb);
        let reread = WorkbenchFile::parse(&expanded.to_json()).unwrap();
        assert_eq!(reread, expanded);
        assert_eq!(reread.resolve().unwrap(), wb);
    }

    #[test]
    fn tasks_run_in_order() {
        let wb = WorkbenchFile::parse(SMALL).unwrap().resolve().unwrap();
        let t = &wb.tasks[0];
        let r = run_task(&wb, &t.name, t.op, t.target, &t.params).unwrap();
        let shown: Vec<&str> = r.cohomology.as_ref().unwrap().iter().map(|row| row.display.as_str()).collect();
        assert_eq!(shown, ["Z", "0", "Z/2", "0", "Z/2"]);
        let t = &wb.tasks[1];
        assert_eq!(run_task(&wb, &t.name, t.op, t.target, &t.params).unwrap().status, Status::Pass);
    }

    #[test]
    fn dangling_reference_is_a_parse_error() {
        let text = r#"{"categories": {"pt": "terminal"}, "functors": {"f": {"src": "pt", "tgt": "nope", "obj_map": [0], "mor_map": [0]}}}"#;
        assert!(matches!(WorkbenchFile::parse(text).unwrap().resolve(), Err(Error::Parse(_))));
    }

    #[test]
    fn budget_overrun_is_reported() {
        let wb = WorkbenchFile::parse(SMALL).unwrap().resolve().unwrap();
        let p = TaskParams { system: Some("const".into()), budget: Some(10), max_degree: Some(6), ..Default::default() };
        let r = run_task(&wb, "h", Op::Cohomology, None, &p).unwrap();
        assert_eq!(r.status, Status::BudgetExceeded);
    }
}
