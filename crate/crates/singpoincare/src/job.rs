//! Job files and the command pipeline behind the `singpoincare` binary.
//!
//! A job is a single JSON document. Exactly one of `branches` / `graph`
//! supplies the geometry; `ideals` names multiplicity vectors, `filtration`
//! picks divisorial and curve indices for the mixed series, `presentations`
//! writes ideals as products of divisorial and curve ideals, and `options`
//! sets the truncation degree, validation mode, oracle box and seed. All
//! rationals are strings `"p/q"` (or JSON integers), so nothing is rounded.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::equivariant::{equivariant_poincare, expand_equivariant, invariant_part};
use crate::error::{Error, Result};
use crate::factor::FactorForm;
use crate::graph::{CheckedGraph, GraphMode, IdealSpec, ResolutionGraph};
use crate::ideal::{mixed_base, poincare_of_ideal_set, IdealPresentation};
use crate::oracle::{
    check_divisorial, engine_reference_form, SeedStream, ValuationRealization,
};
use crate::poincare::{alexander_from_strata, mixed_poincare, poincare_from_graph, zeta_and_alexander};
use crate::puiseux::PuiseuxBranch;
use crate::rational::{parse_rat, Rat};
use crate::render;
use crate::resolve::{resolve, ResolvedCurve};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Resolve,
    Poincare,
    Alexander,
    Zeta,
    Equivariant,
    Ideal,
    Oracle,
}

/// Effective options after merging the job file with command-line overrides.
#[derive(Clone, Debug)]
pub struct RunOptions {
    pub truncate: Option<u64>,
    pub seed: Option<u64>,
    pub format: Format,
    pub compare: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            truncate: None,
            seed: None,
            format: Format::Text,
            compare: false,
        }
    }
}

// ---- raw deserialization types -------------------------------------------

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawJob {
    branches: Option<Vec<RawBranch>>,
    graph: Option<RawGraph>,
    #[serde(default)]
    ideals: Vec<RawIdeal>,
    filtration: Option<RawFiltration>,
    #[serde(default)]
    presentations: Vec<RawPresentation>,
    #[serde(default)]
    options: RawOptions,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBranch {
    name: String,
    x_order: u64,
    #[serde(default)]
    y_terms: Vec<(u64, Value)>,
    #[serde(default)]
    swapped: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    components: Vec<RawComponent>,
    #[serde(default)]
    edges: Vec<(String, String)>,
    #[serde(default)]
    arrows: Vec<RawArrow>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComponent {
    id: String,
    self_intersection: i64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawArrow {
    component: String,
    label: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawIdeal {
    name: String,
    k: Vec<u64>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawFiltration {
    #[serde(default)]
    components: Vec<String>,
    #[serde(default)]
    branches: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPresentation {
    name: String,
    #[serde(default)]
    divisorial: BTreeMap<String, Value>,
    #[serde(default)]
    curves: BTreeMap<String, u64>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawOptions {
    truncate: Option<u64>,
    mode: Option<String>,
    seed: Option<u64>,
    #[serde(rename = "box")]
    oracle_box: Option<Vec<u64>>,
}

fn value_to_rat(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => parse_rat(s),
        Value::Number(n) => {
            let i = n
                .as_i64()
                .ok_or_else(|| Error::InvalidInput(format!("`{n}` is not an exact integer")))?;
            Ok(Rat::from_integer(i.into()))
        }
        other => Err(Error::InvalidInput(format!(
            "expected a rational, got {other}"
        ))),
    }
}

// ---- the checked job ------------------------------------------------------

/// Geometry source of a job: branches to resolve, or a dual graph directly.
pub enum Geometry {
    Branches(Vec<PuiseuxBranch>),
    Graph(ResolutionGraph),
}

pub struct Job {
    pub geometry: Geometry,
    pub ideals: Vec<IdealSpec>,
    pub filtration_components: Vec<String>,
    pub filtration_branches: Vec<String>,
    pub presentations: Vec<IdealPresentation>,
    pub mode: GraphMode,
    pub truncate: u64,
    pub seed: u64,
    pub oracle_box: Option<Vec<u64>>,
}

pub const DEFAULT_TRUNCATE: u64 = 20;
/// Per-index cap on the default oracle box; exact rank computations grow
/// quickly with the box volume.
pub const DEFAULT_BOX_CAP: u64 = 12;

impl Job {
    pub fn parse(text: &str, opts: &RunOptions) -> Result<Job> {
        let raw: RawJob = serde_json::from_str(text)
            .map_err(|e| Error::InvalidInput(format!("job file: {e}")))?;
        let geometry = match (raw.branches, raw.graph) {
            (Some(branches), None) => {
                let parsed = branches
                    .into_iter()
                    .map(|b| {
                        let terms = b
                            .y_terms
                            .iter()
                            .map(|(e, c)| Ok((*e, value_to_rat(c)?)))
                            .collect::<Result<Vec<_>>>()?;
                        PuiseuxBranch::new(b.name, b.x_order, terms, b.swapped)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Geometry::Branches(parsed)
            }
            (None, Some(graph)) => {
                let components = graph
                    .components
                    .into_iter()
                    .map(|c| crate::graph::Component {
                        id: c.id,
                        self_intersection: c.self_intersection,
                    })
                    .collect();
                let arrows = graph
                    .arrows
                    .into_iter()
                    .map(|a| (a.component, a.label))
                    .collect();
                Geometry::Graph(ResolutionGraph::new(
                    components,
                    graph.edges,
                    arrows,
                    Vec::new(),
                )?)
            }
            (Some(_), Some(_)) => {
                return Err(Error::InvalidInput(
                    "job file: give exactly one of `branches` and `graph`, not both".into(),
                ))
            }
            (None, None) => {
                return Err(Error::InvalidInput(
                    "job file: one of `branches` or `graph` is required".into(),
                ))
            }
        };
        let mode = match raw.options.mode.as_deref() {
            None | Some("plane-curve") => GraphMode::PlaneCurve,
            Some("rational-singularity") => GraphMode::RationalSingularity,
            Some(other) => {
                return Err(Error::InvalidInput(format!(
                    "options.mode: unknown mode `{other}`"
                )))
            }
        };
        let presentations = raw
            .presentations
            .into_iter()
            .map(|p| {
                let divisorial = p
                    .divisorial
                    .iter()
                    .map(|(k, v)| Ok((k.clone(), value_to_rat(v)?)))
                    .collect::<Result<BTreeMap<_, _>>>()?;
                Ok(IdealPresentation {
                    name: p.name,
                    divisorial,
                    curves: p.curves,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let filtration = raw.filtration.unwrap_or_default();
        Ok(Job {
            geometry,
            ideals: raw
                .ideals
                .into_iter()
                .map(|i| IdealSpec { name: i.name, k: i.k })
                .collect(),
            filtration_components: filtration.components,
            filtration_branches: filtration.branches,
            presentations,
            mode,
            truncate: opts
                .truncate
                .or(raw.options.truncate)
                .unwrap_or(DEFAULT_TRUNCATE),
            seed: opts.seed.or(raw.options.seed).unwrap_or(0),
            oracle_box: raw.options.oracle_box,
        })
    }

    fn resolved(&self) -> Result<ResolvedCurve> {
        match &self.geometry {
            Geometry::Branches(branches) => resolve(branches),
            Geometry::Graph(_) => Err(Error::InvalidInput(
                "this command needs `branches` geometry".into(),
            )),
        }
    }

    /// The validated graph of the job, resolving branches when needed;
    /// ideal specs from the `ideals` section are attached.
    fn checked_graph(&self) -> Result<CheckedGraph> {
        let mut graph = match &self.geometry {
            Geometry::Branches(branches) => resolve(branches)?.graph,
            Geometry::Graph(g) => g.clone(),
        };
        if !self.ideals.is_empty() {
            graph.ideal_specs = self.ideals.clone();
        }
        graph.validate(self.mode)
    }

    /// The factor form the `poincare` / `alexander` / `zeta` commands work
    /// on, with display names for the variables.
    fn poincare_form(&self) -> Result<(FactorForm, Vec<String>)> {
        let use_filtration =
            !(self.filtration_components.is_empty() && self.filtration_branches.is_empty());
        if use_filtration {
            let rc = self.resolved()?;
            let form = mixed_poincare(
                &rc,
                &self.filtration_components,
                &self.filtration_branches,
            )?;
            let mut names = Vec::new();
            for (i, _) in self.filtration_components.iter().enumerate() {
                names.push(format!("t{}", i + 1));
            }
            for (j, _) in self.filtration_branches.iter().enumerate() {
                names.push(format!("T{}", j + 1));
            }
            if names.len() == 1 {
                names = vec!["t".to_string()];
            }
            Ok((form, names))
        } else {
            let g = self.checked_graph()?;
            if g.graph().ideal_specs.is_empty() {
                return Err(Error::InvalidInput(
                    "no `ideals` and no `filtration` given".into(),
                ));
            }
            let form = poincare_from_graph(&g, &g.euler_data(), &g.graph().ideal_specs)?;
            let names = crate::series::default_names(form.nvars());
            Ok((form, names))
        }
    }
}

// ---- command drivers -------------------------------------------------------

pub fn run(command: Command, job_text: &str, opts: &RunOptions) -> Result<String> {
    let job = Job::parse(job_text, opts)?;
    match command {
        Command::Resolve => run_resolve(&job, opts),
        Command::Poincare => run_poincare(&job, opts),
        Command::Alexander => run_alexander(&job, opts),
        Command::Zeta => run_zeta(&job, opts),
        Command::Equivariant => run_equivariant(&job, opts),
        Command::Ideal => run_ideal(&job, opts),
        Command::Oracle => run_oracle(&job, opts),
    }
}

fn run_resolve(job: &Job, opts: &RunOptions) -> Result<String> {
    let rc = job.resolved()?;
    let checked = rc.graph.clone().validate(GraphMode::PlaneCurve)?;
    let euler = checked.euler_data();
    match opts.format {
        Format::Dot => Ok(render::graph_to_dot(&rc.graph, &euler)),
        Format::Json => {
            let doc = json!({
                "graph": render::graph_to_json(&rc.graph),
                "ideals": rc.graph.ideal_specs.iter().map(|spec| json!({
                    "name": spec.name,
                    "k": spec.k,
                })).collect::<Vec<_>>(),
            });
            Ok(serde_json::to_string_pretty(&doc).unwrap())
        }
        Format::Text => {
            let mut out = String::new();
            out.push_str(&format!(
                "resolution: {} components, {} blowups\n",
                rc.graph.components.len(),
                rc.tree.points.len()
            ));
            for (i, c) in rc.graph.components.iter().enumerate() {
                out.push_str(&format!(
                    "  {}  self={}  chi={}\n",
                    c.id, c.self_intersection, euler.chi[i]
                ));
            }
            out.push_str("edges:");
            for &(a, b) in &rc.graph.edges {
                out.push_str(&format!(
                    " {}-{}",
                    rc.graph.components[a].id, rc.graph.components[b].id
                ));
            }
            out.push_str("\narrows:");
            for arrow in &rc.graph.arrows {
                out.push_str(&format!(
                    " {}@{}",
                    arrow.label, rc.graph.components[arrow.component].id
                ));
            }
            out.push_str("\nvaluations:\n");
            for spec in &rc.graph.ideal_specs {
                out.push_str(&format!("  {}: {:?}\n", spec.name, spec.k));
            }
            Ok(out)
        }
    }
}

fn render_form_and_series(
    title: &str,
    form: &FactorForm,
    names: &[String],
    truncate: u64,
    format: Format,
) -> Result<String> {
    let series = form.expand_int(truncate)?;
    match format {
        Format::Json => {
            let doc = json!({
                "command": title,
                "factor_form": render::factor_form_to_json(form),
                "series": render::series_to_json(&series),
            });
            Ok(serde_json::to_string_pretty(&doc).unwrap())
        }
        Format::Text => Ok(format!(
            "{title}:\n  factor form: {}\n  series (degree <= {truncate}): {}\n",
            form.render_with(names),
            series.render_with(names)
        )),
        Format::Dot => Err(Error::InvalidInput(
            "dot output is only available for `resolve`".into(),
        )),
    }
}

fn run_poincare(job: &Job, opts: &RunOptions) -> Result<String> {
    let (form, names) = job.poincare_form()?;
    render_form_and_series("poincare", &form, &names, job.truncate, opts.format)
}

fn run_alexander(job: &Job, opts: &RunOptions) -> Result<String> {
    // through the strata route when the job is graph-shaped, so both
    // assembly orders of the product are exercised
    let use_filtration =
        !(job.filtration_components.is_empty() && job.filtration_branches.is_empty());
    let (form, names) = if use_filtration {
        job.poincare_form()?
    } else {
        let g = job.checked_graph()?;
        let strata = alexander_from_strata(&g, &g.euler_data(), &g.graph().ideal_specs)?;
        let direct = poincare_from_graph(&g, &g.euler_data(), &g.graph().ideal_specs)?;
        assert_eq!(strata, direct, "strata and component products must agree");
        let names = crate::series::default_names(strata.nvars());
        (strata, names)
    };
    let za = zeta_and_alexander(&form);
    let names = if za.alexander.nvars() == 1 {
        vec!["t".to_string()]
    } else {
        names
    };
    render_form_and_series("alexander", &za.alexander, &names, job.truncate, opts.format)
}

fn run_zeta(job: &Job, opts: &RunOptions) -> Result<String> {
    let (form, _) = job.poincare_form()?;
    let za = zeta_and_alexander(&form);
    render_form_and_series(
        "zeta",
        &za.zeta,
        &["t".to_string()],
        job.truncate,
        opts.format,
    )
}

fn run_equivariant(job: &Job, opts: &RunOptions) -> Result<String> {
    let g = job.checked_graph()?;
    if g.graph().ideal_specs.is_empty() {
        return Err(Error::InvalidInput("`ideals` section is required".into()));
    }
    let euler = g.euler_data();
    let ld = g.linking_data()?;
    let form = equivariant_poincare(&g, &euler, &ld, &g.graph().ideal_specs)?;
    let series = expand_equivariant(&form, job.truncate)?;
    let d: u64 = ld
        .d
        .to_string()
        .parse()
        .map_err(|_| Error::InvalidInput("group order exceeds u64".into()))?;
    let invariant = invariant_part(&series, d)?;
    let names = crate::series::default_names(form.nvars());
    match opts.format {
        Format::Json => {
            let doc = json!({
                "command": "equivariant",
                "group_order": d,
                "invariant_factors": ld.group.invariant_factors.iter()
                    .map(|x| x.to_string()).collect::<Vec<_>>(),
                "factor_form": render::factor_form_to_json(&form),
                "series": render::series_to_json(&series),
                "invariant_part": render::series_to_json(&invariant),
            });
            Ok(serde_json::to_string_pretty(&doc).unwrap())
        }
        Format::Text => Ok(format!(
            "equivariant (|H| = {d}):\n  factor form: {}\n  series (degree <= {}): {}\n  invariant part: {}\n",
            form.render_with(&names),
            job.truncate,
            series.render_with(&names),
            invariant.render_with(&names),
        )),
        Format::Dot => Err(Error::InvalidInput(
            "dot output is only available for `resolve`".into(),
        )),
    }
}

fn run_ideal(job: &Job, opts: &RunOptions) -> Result<String> {
    if job.presentations.is_empty() {
        return Err(Error::InvalidInput(
            "`presentations` section is required".into(),
        ));
    }
    let rc = job.resolved()?;
    if job.mode == GraphMode::RationalSingularity {
        return Err(Error::InvalidInput(
            "ideal presentations over branches run in plane-curve mode".into(),
        ));
    }
    let mut curves: Vec<String> = Vec::new();
    for p in &job.presentations {
        for c in p.curves.keys() {
            if !curves.contains(c) {
                curves.push(c.clone());
            }
        }
    }
    let base = mixed_base(&rc, &curves)?;
    let form = poincare_of_ideal_set(&base, &job.presentations)?;
    let names = crate::series::default_names(form.nvars());
    render_form_and_series("ideal", &form, &names, job.truncate, opts.format)
}

fn run_oracle(job: &Job, opts: &RunOptions) -> Result<String> {
    let rc = job.resolved()?;
    let (components, branches) = if job.filtration_components.is_empty()
        && job.filtration_branches.is_empty()
    {
        (Vec::new(), rc.branch_names.clone())
    } else {
        (
            job.filtration_components.clone(),
            job.filtration_branches.clone(),
        )
    };
    let mut seeds = SeedStream::new(job.seed);
    let vr = ValuationRealization::from_filtration(&rc, &components, &branches, &mut seeds)?;
    let r = vr.len();
    let bounds = match &job.oracle_box {
        Some(b) => {
            if b.len() != r {
                return Err(Error::DimensionMismatch(format!(
                    "options.box has {} entries for {} indices",
                    b.len(),
                    r
                )));
            }
            b.clone()
        }
        None => vec![job.truncate.min(DEFAULT_BOX_CAP); r],
    };
    let oracle_series = check_divisorial(&vr, &bounds)?;

    let mut comparison = None;
    if opts.compare {
        let engine_form = engine_reference_form(&rc, &vr, &branches)?;
        let total: u64 = bounds.iter().sum();
        let engine_series = engine_form.expand_int(total)?;
        engine_series.agree_on_common_region(&oracle_series)?;
        comparison = Some(engine_form);
    }

    let names = crate::series::default_names(r);
    match opts.format {
        Format::Json => {
            let mut doc = json!({
                "command": "oracle",
                "box": bounds,
                "series": render::series_to_json(&oracle_series),
            });
            if let Some(form) = &comparison {
                doc["compare"] = json!({
                    "engine_factor_form": render::factor_form_to_json(form),
                    "result": "MATCH",
                });
            }
            Ok(serde_json::to_string_pretty(&doc).unwrap())
        }
        Format::Text => {
            let mut out = format!(
                "oracle (box {:?}):\n  series: {}\n",
                bounds,
                oracle_series.render_with(&names)
            );
            if let Some(form) = &comparison {
                out.push_str(&format!(
                    "  engine: {}\n  MATCH\n",
                    form.render_with(&names)
                ));
            }
            Ok(out)
        }
        Format::Dot => Err(Error::InvalidInput(
            "dot output is only available for `resolve`".into(),
        )),
    }
}

/// Exit code classification: 1 usage/parse, 2 math-domain, 3 oracle mismatch.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidInput(_) | Error::BadReference(_) => 1,
        Error::OracleMismatch { .. } => 3,
        _ => 2,
    }
}
