//! JSON interchange format and text renderings.
//!
//! A group is `{"cyclic_orders": [n_1, ..., n_k]}`. An element is an array of
//! residues; in a group with a single cyclic factor it may also be a bare
//! integer, and is always emitted that way. A collection is
//! `{"group": G, "sets": [[x, ...], ...]}`. Subgroups are given as arrays of
//! generators. Emitted documents are canonically ordered, compact, and
//! newline-terminated.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::bimodal::{display_elements, CollectionError, DifferenceProfile, SetCollection, Verdict, Witness};
use crate::classify::ClassificationReport;
use crate::construct::{StarSpec, DEFAULT_SUBGROUP_CAP};
use crate::enumerate::{Dedupe, EnumerationResult, EnumerationScope, SupportMode, DEFAULT_BUDGET};
use crate::group::{Elem, GroupError, GroupSpec, Subgroup};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid group: {0}")]
    Group(GroupError),
    #[error("{field}: {source}")]
    Element { field: String, source: GroupError },
    #[error(transparent)]
    Collection(#[from] CollectionError),
    #[error("{field}: {message}")]
    Field { field: String, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub cyclic_orders: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementDoc {
    Scalar(i64),
    Residues(Vec<i64>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CollectionDoc {
    pub group: GroupDoc,
    pub sets: Vec<Vec<ElementDoc>>,
}

impl GroupDoc {
    pub fn to_group(&self) -> Result<GroupSpec, IoError> {
        GroupSpec::new(&self.cyclic_orders).map_err(IoError::Group)
    }

    pub fn from_group(group: &GroupSpec) -> GroupDoc {
        GroupDoc { cyclic_orders: group.cyclic_orders().iter().map(|&n| u64::from(n)).collect() }
    }
}

pub fn element_from_doc(group: &GroupSpec, doc: &ElementDoc, field: &str) -> Result<Elem, IoError> {
    let residues: Vec<i64> = match doc {
        ElementDoc::Scalar(x) => {
            if group.rank() != 1 {
                return Err(IoError::Element {
                    field: field.to_string(),
                    source: GroupError::DimensionMismatch { expected: group.rank(), found: 1 },
                });
            }
            vec![*x]
        }
        ElementDoc::Residues(r) => r.clone(),
    };
    group.elem(&residues).map_err(|source| IoError::Element { field: field.to_string(), source })
}

pub fn element_to_doc(group: &GroupSpec, e: Elem) -> ElementDoc {
    let g = group.decode(e);
    match g.residues() {
        [x] => ElementDoc::Scalar(i64::from(*x)),
        rs => ElementDoc::Residues(rs.iter().map(|&x| i64::from(x)).collect()),
    }
}

fn elements_from_docs(group: &GroupSpec, docs: &[ElementDoc], field: &str) -> Result<Vec<Elem>, IoError> {
    docs.iter().enumerate().map(|(j, d)| element_from_doc(group, d, &format!("{field}[{j}]"))).collect()
}

fn elements_value(group: &GroupSpec, xs: &[Elem]) -> Value {
    serde_json::to_value(xs.iter().map(|&x| element_to_doc(group, x)).collect::<Vec<_>>())
        .expect("element documents serialize")
}

fn subgroup_from_gens(group: &GroupSpec, docs: &[ElementDoc], field: &str) -> Result<Subgroup, IoError> {
    let gens = elements_from_docs(group, docs, field)?;
    Subgroup::generate(group, &gens).map_err(|source| IoError::Element { field: field.to_string(), source })
}

impl CollectionDoc {
    pub fn to_collection(&self) -> Result<SetCollection, IoError> {
        let group = self.group.to_group()?;
        let sets = self
            .sets
            .iter()
            .enumerate()
            .map(|(i, s)| elements_from_docs(&group, s, &format!("sets[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SetCollection::new(group, sets)?)
    }

    pub fn from_collection(c: &SetCollection) -> CollectionDoc {
        let group = c.group();
        CollectionDoc {
            group: GroupDoc::from_group(group),
            sets: c.sets().iter().map(|s| s.iter().map(|&x| element_to_doc(group, x)).collect()).collect(),
        }
    }
}

/// Parses and validates a collection document.
pub fn parse_collection(text: &str) -> Result<SetCollection, IoError> {
    let doc: CollectionDoc = serde_json::from_str(text)?;
    doc.to_collection()
}

fn line(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string(v).expect("documents serialize");
    s.push('\n');
    s
}

pub fn emit_collection(c: &SetCollection) -> String {
    line(&CollectionDoc::from_collection(c))
}

pub fn profile_json(c: &SetCollection, p: &DifferenceProfile) -> String {
    let group = c.group();
    let rows: Vec<Value> = (0..p.rows())
        .map(|i| {
            let counts: Vec<Value> =
                p.row(i).map(|(d, n)| json!({ "delta": element_to_doc(group, d), "count": n })).collect();
            json!({ "set": i, "size": p.set_sizes()[i], "counts": counts })
        })
        .collect();
    line(&json!({ "group": GroupDoc::from_group(group), "rows": rows }))
}

pub fn profile_text(c: &SetCollection, p: &DifferenceProfile) -> String {
    let group = c.group();
    let mut out = format!("profile over {} (|A| = {})\n", group, p.support_size());
    for i in 0..p.rows() {
        let cells: Vec<String> = p.row(i).map(|(d, n)| format!("{}:{}", group.decode(d), n)).collect();
        out.push_str(&format!("N_{i} (k = {}): {}\n", p.set_sizes()[i], cells.join(" ")));
    }
    out
}

fn witness_value(group: &GroupSpec, w: &Witness) -> Value {
    match *w {
        Witness::Count { set, delta, count, size } => json!({
            "kind": "count",
            "set": set,
            "delta": element_to_doc(group, delta),
            "count": count,
            "size": size,
        }),
        Witness::Coset { set, element } => json!({
            "kind": "coset",
            "set": set,
            "element": element_to_doc(group, element),
        }),
    }
}

fn verdict_value(group: &GroupSpec, v: &Verdict) -> Value {
    match v {
        Verdict::Bimodal => json!({ "bimodal": true }),
        Verdict::NotBimodal(w) => json!({ "bimodal": false, "witness": witness_value(group, w) }),
    }
}

/// Both checker verdicts as one document.
pub fn verdicts_json(c: &SetCollection, definition: &Verdict, structure: &Verdict) -> String {
    let group = c.group();
    line(&json!({
        "definition": verdict_value(group, definition),
        "structure": verdict_value(group, structure),
    }))
}

pub fn verdicts_text(c: &SetCollection, definition: &Verdict, structure: &Verdict) -> String {
    let group = c.group();
    let show = |name: &str, v: &Verdict| match v {
        Verdict::Bimodal => format!("{name}: bimodal\n"),
        Verdict::NotBimodal(w) => format!("{name}: not bimodal ({})\n", w.describe(group)),
    };
    show("definition", definition) + &show("structure", structure)
}

fn subgroup_value(h: &Subgroup) -> Value {
    elements_value(h.group(), h.elements())
}

pub fn report_json(c: &SetCollection, rep: &ClassificationReport) -> String {
    let group = c.group();
    let per_set: Vec<Value> = rep
        .per_set
        .iter()
        .map(|s| json!({ "size": s.size, "internal_group": subgroup_value(&s.internal_group), "full": s.full }))
        .collect();
    let kernel = rep
        .kernel
        .as_ref()
        .map(|k| json!({ "elements": elements_value(group, &k.elements), "subgroup": subgroup_value(&k.subgroup) }));
    let tiling: Vec<Value> = rep
        .tiling
        .iter()
        .map(|b| json!({ "representative": element_to_doc(group, b.representative), "sets": b.sets }))
        .collect();
    line(&json!({
        "case": rep.case.name(),
        "r": rep.r,
        "reorder": rep.reorder,
        "per_set": per_set,
        "kernel": kernel,
        "sum_group": subgroup_value(&rep.sum_group),
        "canonical_shift": element_to_doc(group, rep.canonical_shift),
        "canonical_shift_count": rep.canonical_shift_count,
        "interior_sets": rep.interior_sets,
        "tiling": tiling,
    }))
}

pub fn report_text(c: &SetCollection, rep: &ClassificationReport) -> String {
    let group = c.group();
    let mut out = format!("case {} (r = {}) in {}\n", rep.case, rep.r, group);
    for (i, s) in rep.per_set.iter().enumerate() {
        out.push_str(&format!(
            "  A_{i} = {}  |A_{i}| = {}  |H_{i}| = {}  {}\n",
            c.display_set(i),
            s.size,
            s.internal_group.len(),
            if s.full { "full" } else { "non-full" }
        ));
    }
    if let Some(k) = &rep.kernel {
        out.push_str(&format!(
            "  kernel = {} (coset of a subgroup of order {})\n",
            display_elements(group, &k.elements),
            k.subgroup.len()
        ));
    }
    out.push_str(&format!(
        "  sum group of order {} = {}\n",
        rep.sum_group.len(),
        display_elements(group, rep.sum_group.elements())
    ));
    out.push_str(&format!(
        "  canonical shift = {} ({} valid)\n",
        group.decode(rep.canonical_shift),
        rep.canonical_shift_count
    ));
    if !rep.interior_sets.is_empty() {
        out.push_str(&format!("  interior sets: {:?}\n", rep.interior_sets));
    }
    for b in &rep.tiling {
        out.push_str(&format!("  coset {} + H tiled by sets {:?}\n", group.decode(b.representative), b.sets));
    }
    out
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CosetsDoc {
    pub group: GroupDoc,
    pub subgroup: Vec<ElementDoc>,
    pub reps: Vec<ElementDoc>,
}

impl CosetsDoc {
    pub fn resolve(&self) -> Result<(Subgroup, Vec<Elem>), IoError> {
        let g = self.group.to_group()?;
        Ok((subgroup_from_gens(&g, &self.subgroup, "subgroup")?, elements_from_docs(&g, &self.reps, "reps")?))
    }
}

/// Input for the group-partition and mixed-partition constructions.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionDoc {
    pub group: GroupDoc,
    pub subgroups: Vec<Vec<ElementDoc>>,
}

impl PartitionDoc {
    pub fn resolve(&self) -> Result<(GroupSpec, Vec<Subgroup>), IoError> {
        let g = self.group.to_group()?;
        let subs = self
            .subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| subgroup_from_gens(&g, s, &format!("subgroups[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((g, subs))
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShiftDoc {
    pub collection: CollectionDoc,
    pub shift: ElementDoc,
}

impl ShiftDoc {
    pub fn resolve(&self) -> Result<(SetCollection, Elem), IoError> {
        let c = self.collection.to_collection()?;
        let g = element_from_doc(c.group(), &self.shift, "shift")?;
        Ok((c, g))
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubdivideDoc {
    pub collection: CollectionDoc,
    pub index: usize,
    pub parts: Vec<Vec<ElementDoc>>,
}

impl SubdivideDoc {
    pub fn resolve(&self) -> Result<(SetCollection, usize, Vec<Vec<Elem>>), IoError> {
        let c = self.collection.to_collection()?;
        let parts = self
            .parts
            .iter()
            .enumerate()
            .map(|(j, p)| elements_from_docs(c.group(), p, &format!("parts[{j}]")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((c, self.index, parts))
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StarDoc {
    pub group: GroupDoc,
    pub subgroups: Vec<Vec<ElementDoc>>,
    pub kernel: Vec<ElementDoc>,
    pub interior_coset_reps: Vec<ElementDoc>,
    #[serde(default)]
    pub outer_coset_reps: Vec<ElementDoc>,
}

impl StarDoc {
    pub fn resolve(&self) -> Result<StarSpec, IoError> {
        let g = self.group.to_group()?;
        let subgroups = self
            .subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| subgroup_from_gens(&g, s, &format!("subgroups[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(StarSpec {
            kernel: subgroup_from_gens(&g, &self.kernel, "kernel")?,
            interior_coset_reps: elements_from_docs(&g, &self.interior_coset_reps, "interior_coset_reps")?,
            outer_coset_reps: elements_from_docs(&g, &self.outer_coset_reps, "outer_coset_reps")?,
            subgroups,
            group: g,
        })
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TilingEntryDoc {
    pub subgroup: Vec<ElementDoc>,
    pub rep: ElementDoc,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct R1Doc {
    pub group: GroupDoc,
    pub h1: Vec<ElementDoc>,
    pub a1: Vec<ElementDoc>,
    #[serde(default)]
    pub tiling: Vec<TilingEntryDoc>,
    #[serde(default)]
    pub subgroup_cap: Option<usize>,
}

/// Resolved input for the single-non-full-set construction.
#[derive(Debug, Clone)]
pub struct R1Spec {
    pub group: GroupSpec,
    pub h1: Subgroup,
    pub a1: Vec<Elem>,
    pub tiling: Vec<(Subgroup, Elem)>,
    pub subgroup_cap: usize,
}

impl R1Doc {
    pub fn resolve(&self) -> Result<R1Spec, IoError> {
        let g = self.group.to_group()?;
        let tiling = self
            .tiling
            .iter()
            .enumerate()
            .map(|(j, t)| {
                Ok((
                    subgroup_from_gens(&g, &t.subgroup, &format!("tiling[{j}].subgroup"))?,
                    element_from_doc(&g, &t.rep, &format!("tiling[{j}].rep"))?,
                ))
            })
            .collect::<Result<Vec<_>, IoError>>()?;
        Ok(R1Spec {
            h1: subgroup_from_gens(&g, &self.h1, "h1")?,
            a1: elements_from_docs(&g, &self.a1, "a1")?,
            tiling,
            subgroup_cap: self.subgroup_cap.unwrap_or(DEFAULT_SUBGROUP_CAP),
            group: g,
        })
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum SupportDoc {
    Keyword(String),
    Fixed(Vec<ElementDoc>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScopeDoc {
    pub group: GroupDoc,
    pub support: SupportDoc,
    #[serde(default)]
    pub max_support: Option<usize>,
    #[serde(default)]
    pub max_parts: Option<usize>,
    #[serde(default)]
    pub dedupe: Option<String>,
    #[serde(default)]
    pub budget: Option<u128>,
}

pub fn parse_dedupe(s: &str) -> Result<Dedupe, IoError> {
    match s {
        "none" => Ok(Dedupe::None),
        "shift" => Ok(Dedupe::Shift),
        other => Err(IoError::Field {
            field: "dedupe".into(),
            message: format!("expected \"none\" or \"shift\", got {other:?}"),
        }),
    }
}

impl ScopeDoc {
    pub fn resolve(&self) -> Result<EnumerationScope, IoError> {
        let group = self.group.to_group()?;
        let support = match &self.support {
            SupportDoc::Keyword(k) if k == "all" => {
                let max = self.max_support.ok_or_else(|| IoError::Field {
                    field: "max_support".into(),
                    message: "required when support is \"all\"".into(),
                })?;
                SupportMode::AllUpTo(max)
            }
            SupportDoc::Keyword(k) => {
                return Err(IoError::Field { field: "support".into(), message: format!("unknown keyword {k:?}") })
            }
            SupportDoc::Fixed(xs) => SupportMode::Fixed(elements_from_docs(&group, xs, "support")?),
        };
        Ok(EnumerationScope {
            group,
            support,
            max_parts: self.max_parts,
            dedupe: self.dedupe.as_deref().map(parse_dedupe).transpose()?.unwrap_or_default(),
            budget: self.budget.unwrap_or(DEFAULT_BUDGET),
        })
    }
}

pub fn parse_scope(text: &str) -> Result<EnumerationScope, IoError> {
    serde_json::from_str::<ScopeDoc>(text)?.resolve()
}

fn census_value(res: &EnumerationResult) -> Value {
    let by_case: serde_json::Map<String, Value> =
        res.census.by_case.iter().map(|(c, n)| (c.name().to_string(), json!(n))).collect();
    let cells: Vec<Value> =
        res.census.by_parts_and_r.iter().map(|(&(m, r), n)| json!({ "parts": m, "r": r, "count": n })).collect();
    json!({ "by_case": by_case, "by_parts_and_r": cells })
}

pub fn census_json(res: &EnumerationResult) -> String {
    let scope = &res.scope;
    let support = match &scope.support {
        SupportMode::Fixed(s) => elements_value(&scope.group, s),
        SupportMode::AllUpTo(_) => json!("all"),
    };
    let mut doc = json!({
        "group": GroupDoc::from_group(&scope.group),
        "support": support,
        "max_support": scope.max_support(),
        "max_parts": scope.max_parts,
        "dedupe": match scope.dedupe { Dedupe::None => "none", Dedupe::Shift => "shift" },
        "candidates": u64::try_from(res.candidates).unwrap_or(u64::MAX),
        "count": res.count,
        "census": census_value(res),
    });
    if let Some(cs) = &res.collections {
        doc["collections"] = Value::Array(
            cs.iter().map(|c| serde_json::to_value(CollectionDoc::from_collection(c)).expect("serializes")).collect(),
        );
    }
    line(&doc)
}

pub fn census_text(res: &EnumerationResult) -> String {
    let mut out = format!(
        "{} candidates over {}, {} bimodal{}\n",
        res.candidates,
        res.scope.group,
        res.count,
        if res.scope.dedupe == Dedupe::Shift { " shift orbits" } else { "" }
    );
    for (case, n) in &res.census.by_case {
        out.push_str(&format!("  {case:>5}: {n}\n"));
    }
    out.push_str("  m   r   count\n");
    for ((m, r), n) in &res.census.by_parts_and_r {
        out.push_str(&format!("  {m:<3} {r:<3} {n}\n"));
    }
    out
}
