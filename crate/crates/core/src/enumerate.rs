//! Exhaustive enumeration of bimodal collections in small groups.
//!
//! Candidates are every set partition of every admissible support set,
//! generated as restricted-growth strings so that each unordered partition
//! appears exactly once (parts labelled by first occurrence). Work is split
//! by support set; results are merged in canonical support order, so output
//! does not depend on the worker count.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use thiserror::Error;

use crate::bimodal::{home_coset_violation, is_bimodal_by_definition, is_bimodal_by_structure, SetCollection, Verdict};
use crate::classify::{canonicalize, classify, Case, ClassifyError};
use crate::group::{Elem, GroupSpec, Subgroup};

/// Default refusal threshold on the number of candidate partitions.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("enumeration refused: {estimate} candidates exceed the budget of {budget}")]
    BudgetExceeded { estimate: u128, budget: u128 },
    #[error("invalid enumeration scope: {0}")]
    InvalidScope(String),
    #[error("could not start worker pool: {0}")]
    Pool(String),
    #[error("classifier failed on an enumerated collection: {0}")]
    Classifier(ClassifyError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SupportMode {
    /// Partitions of exactly this support set.
    Fixed(Vec<Elem>),
    /// Partitions of every non-empty subset of size at most `max_support`.
    AllUpTo(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Dedupe {
    #[default]
    None,
    /// Count each orbit under translation once.
    Shift,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationScope {
    pub group: GroupSpec,
    pub support: SupportMode,
    pub max_parts: Option<usize>,
    pub dedupe: Dedupe,
    pub budget: u128,
}

impl EnumerationScope {
    pub fn all_up_to(group: GroupSpec, max_support: usize) -> EnumerationScope {
        EnumerationScope {
            group,
            support: SupportMode::AllUpTo(max_support),
            max_parts: None,
            dedupe: Dedupe::None,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn fixed(group: GroupSpec, support: Vec<Elem>) -> EnumerationScope {
        EnumerationScope {
            group,
            support: SupportMode::Fixed(support),
            max_parts: None,
            dedupe: Dedupe::None,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn max_support(&self) -> usize {
        match &self.support {
            SupportMode::Fixed(s) => s.len(),
            SupportMode::AllUpTo(k) => *k,
        }
    }

    fn validate(&self) -> Result<(), EnumerateError> {
        let n = self.group.order();
        match &self.support {
            SupportMode::Fixed(s) => {
                if s.is_empty() {
                    return Err(EnumerateError::InvalidScope("fixed support is empty".into()));
                }
                if let Some(bad) = s.iter().find(|e| !self.group.contains(**e)) {
                    return Err(EnumerateError::InvalidScope(format!(
                        "element handle {} outside the group",
                        bad.index()
                    )));
                }
                let mut sorted = s.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != s.len() {
                    return Err(EnumerateError::InvalidScope("fixed support repeats an element".into()));
                }
            }
            SupportMode::AllUpTo(k) => {
                if *k > n {
                    return Err(EnumerateError::InvalidScope(format!("max_support {k} exceeds the group order {n}")));
                }
            }
        }
        if self.max_parts == Some(0) {
            return Err(EnumerateError::InvalidScope("max_parts must be positive".into()));
        }
        Ok(())
    }

    /// Exact number of candidate partitions in scope.
    pub fn cost_estimate(&self) -> u128 {
        let k_max = self.max_support();
        let parts = partition_counts(k_max, self.max_parts);
        match &self.support {
            SupportMode::Fixed(s) => parts[s.len()],
            SupportMode::AllUpTo(k) => (1..=*k)
                .map(|size| binomial(self.group.order() as u128, size as u128).saturating_mul(parts[size]))
                .fold(0u128, u128::saturating_add),
        }
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// `out[k]` = number of partitions of a `k`-set into at most `max_parts`
/// blocks (the Bell number when uncapped), via Stirling numbers of the
/// second kind.
pub fn partition_counts(k_max: usize, max_parts: Option<usize>) -> Vec<u128> {
    let cap = max_parts.unwrap_or(k_max).min(k_max.max(1));
    let mut stirling = vec![vec![0u128; k_max + 1]; k_max + 1];
    stirling[0][0] = 1;
    for n in 1..=k_max {
        for j in 1..=n {
            stirling[n][j] = (j as u128).saturating_mul(stirling[n - 1][j]).saturating_add(stirling[n - 1][j - 1]);
        }
    }
    (0..=k_max).map(|n| (0..=cap.min(n)).map(|j| stirling[n][j]).fold(0, u128::saturating_add)).collect()
}

/// Restricted-growth strings of length `len` with at most `max_blocks`
/// distinct values, in lexicographic order.
#[derive(Debug, Clone)]
pub struct RestrictedGrowth {
    word: Vec<usize>,
    /// `prefix_max[i]` = max of `word[..=i]`.
    prefix_max: Vec<usize>,
    max_blocks: usize,
    started: bool,
    done: bool,
}

impl RestrictedGrowth {
    pub fn new(len: usize, max_blocks: usize) -> RestrictedGrowth {
        RestrictedGrowth {
            word: vec![0; len],
            prefix_max: vec![0; len],
            max_blocks: max_blocks.max(1),
            started: false,
            done: len == 0,
        }
    }

    fn advance(&mut self) -> bool {
        let len = self.word.len();
        for i in (1..len).rev() {
            let limit = (self.prefix_max[i - 1] + 1).min(self.max_blocks - 1);
            if self.word[i] < limit {
                self.word[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.word[i]);
                for j in i + 1..len {
                    self.word[j] = 0;
                    self.prefix_max[j] = self.prefix_max[i];
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for RestrictedGrowth {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if self.started && !self.advance() {
            self.done = true;
            return None;
        }
        self.started = true;
        Some(self.word.clone())
    }
}

fn blocks_from_word(support: &[Elem], word: &[usize]) -> Vec<Vec<Elem>> {
    let count = word.iter().max().map_or(0, |m| m + 1);
    let mut sets = vec![Vec::new(); count];
    for (&x, &b) in support.iter().zip(word) {
        sets[b].push(x);
    }
    sets
}

fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn supports(scope: &EnumerationScope) -> Vec<Vec<Elem>> {
    match &scope.support {
        SupportMode::Fixed(s) => {
            let mut s = s.clone();
            s.sort_unstable();
            vec![s]
        }
        SupportMode::AllUpTo(k) => {
            let n = scope.group.order();
            let mut out = Vec::new();
            for size in 1..=*k {
                for_each_combination(n, size, |idx| out.push(idx.iter().map(|&i| Elem::from_index(i)).collect()));
            }
            out
        }
    }
}

/// Candidates of one support, in restricted-growth order.
fn candidates<'a>(scope: &'a EnumerationScope, support: &'a [Elem]) -> impl Iterator<Item = SetCollection> + 'a {
    let max_blocks = scope.max_parts.unwrap_or(support.len()).min(support.len());
    RestrictedGrowth::new(support.len(), max_blocks)
        .map(move |w| SetCollection::from_trusted(scope.group.clone(), blocks_from_word(support, &w)))
}

/// Execution knobs that do not change the result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RunOptions {
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
    /// Keep every surviving collection in the result.
    pub materialize: bool,
}

fn run_pool<T: Send>(workers: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T, EnumerateError> {
    match workers {
        None => Ok(job()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| EnumerateError::Pool(e.to_string()))?;
            Ok(pool.install(job))
        }
    }
}

fn check_budget(scope: &EnumerationScope) -> Result<(), EnumerateError> {
    scope.validate()?;
    let estimate = scope.cost_estimate();
    if estimate > scope.budget {
        return Err(EnumerateError::BudgetExceeded { estimate, budget: scope.budget });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Census {
    pub by_case: BTreeMap<Case, usize>,
    /// Keyed by (number of sets m, r).
    pub by_parts_and_r: BTreeMap<(usize, usize), usize>,
}

impl Census {
    fn record(&mut self, m: usize, r: usize) {
        *self.by_case.entry(Case::from_r(r)).or_default() += 1;
        *self.by_parts_and_r.entry((m, r)).or_default() += 1;
    }

    pub fn total(&self) -> usize {
        self.by_case.values().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationResult {
    pub scope: EnumerationScope,
    pub candidates: u128,
    /// Bimodal collections found (shift orbits when deduplicating).
    pub count: usize,
    pub collections: Option<Vec<SetCollection>>,
    pub census: Census,
}

struct Survivor {
    collection: SetCollection,
    r: usize,
}

/// Lexicographically least canonically ordered translate; equal for every
/// member of a shift orbit.
pub fn shift_orbit_key(c: &SetCollection) -> Vec<Vec<Elem>> {
    c.group().elements().map(|g| c.translated(g).canonical_order().sets().to_vec()).min().expect("groups are non-empty")
}

/// Number of distinct translates of `c` (as unordered collections).
pub fn shift_orbit_size(c: &SetCollection) -> usize {
    let keys: BTreeSet<Vec<Vec<Elem>>> =
        c.group().elements().map(|g| c.translated(g).canonical_order().sets().to_vec()).collect();
    keys.len()
}

pub fn enumerate_bimodal(scope: &EnumerationScope, opts: RunOptions) -> Result<EnumerationResult, EnumerateError> {
    check_budget(scope)?;
    let supports = supports(scope);
    let per_support: Vec<Result<(u128, Vec<Survivor>), ClassifyError>> = run_pool(opts.workers, || {
        supports
            .par_iter()
            .map(|support| {
                let mut seen = 0u128;
                let mut found = Vec::new();
                for c in candidates(scope, support) {
                    seen += 1;
                    if is_bimodal_by_definition(&c).is_bimodal() {
                        let report = classify(&c)?;
                        found.push(Survivor { collection: c, r: report.r });
                    }
                }
                Ok((seen, found))
            })
            .collect()
    })?;

    let mut candidates_seen = 0u128;
    let mut census = Census::default();
    let mut collections = Vec::new();
    let mut orbit_keys: BTreeSet<Vec<Vec<Elem>>> = BTreeSet::new();
    let mut count = 0usize;
    for item in per_support {
        let (seen, found) = item.map_err(EnumerateError::Classifier)?;
        candidates_seen += seen;
        for s in found {
            if scope.dedupe == Dedupe::Shift && !orbit_keys.insert(shift_orbit_key(&s.collection)) {
                continue;
            }
            count += 1;
            census.record(s.collection.len(), s.r);
            if opts.materialize {
                collections.push(s.collection);
            }
        }
    }
    Ok(EnumerationResult {
        scope: scope.clone(),
        candidates: candidates_seen,
        count,
        collections: opts.materialize.then_some(collections),
        census,
    })
}

/// What went wrong on the first failing candidate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    Disagreement { definition: Verdict, structure: Verdict },
    Classifier(ClassifyError),
    HomeCoset { set: usize, home_of: usize, element: Elem },
    CanonicalForm(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub collection: SetCollection,
    pub failure: Failure,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossValidation {
    pub candidates: u128,
    pub bimodal_by_definition: usize,
    pub bimodal_by_structure: usize,
    pub counterexample: Option<Counterexample>,
}

impl CrossValidation {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks a single candidate against every cross-validation requirement.
pub fn validate_candidate(c: &SetCollection) -> Result<(bool, bool), Failure> {
    let definition = is_bimodal_by_definition(c);
    let structure = is_bimodal_by_structure(c);
    let (d, s) = (definition.is_bimodal(), structure.is_bimodal());
    if d != s {
        return Err(Failure::Disagreement { definition, structure });
    }
    if d {
        if let Some((set, home_of, element)) = home_coset_violation(c) {
            return Err(Failure::HomeCoset { set, home_of, element });
        }
        let report = classify(c).map_err(Failure::Classifier)?;
        if report.r >= 2 {
            check_star_canonical_form(c)?;
        }
    }
    Ok((d, s))
}

/// After canonicalization, `A_i = H_i \ D` for every non-full set.
fn check_star_canonical_form(c: &SetCollection) -> Result<(), Failure> {
    let canon = canonicalize(c).map_err(Failure::Classifier)?;
    let report = classify(&canon.collection).map_err(Failure::Classifier)?;
    let kernel = report.kernel.as_ref().ok_or_else(|| Failure::CanonicalForm("missing kernel".into()))?;
    if kernel.elements != kernel.subgroup.elements() {
        return Err(Failure::CanonicalForm("kernel is not a subgroup after canonicalization".into()));
    }
    for &i in report.non_full_sets() {
        let h: &Subgroup = &report.per_set[i].internal_group;
        let expected: Vec<Elem> = h.elements().iter().copied().filter(|&x| !kernel.subgroup.contains(x)).collect();
        if canon.collection.sets()[i] != expected {
            return Err(Failure::CanonicalForm(format!("A_{i} differs from H_{i} \\ D")));
        }
    }
    Ok(())
}

pub fn cross_validate(scope: &EnumerationScope, opts: RunOptions) -> Result<CrossValidation, EnumerateError> {
    check_budget(scope)?;
    let supports = supports(scope);
    let per_support: Vec<(u128, usize, usize, Option<Counterexample>)> = run_pool(opts.workers, || {
        supports
            .par_iter()
            .map(|support| {
                let (mut seen, mut by_def, mut by_struct) = (0u128, 0usize, 0usize);
                for c in candidates(scope, support) {
                    seen += 1;
                    match validate_candidate(&c) {
                        Ok((d, s)) => {
                            by_def += usize::from(d);
                            by_struct += usize::from(s);
                        }
                        Err(failure) => {
                            return (seen, by_def, by_struct, Some(Counterexample { collection: c, failure }))
                        }
                    }
                }
                (seen, by_def, by_struct, None)
            })
            .collect()
    })?;
    let mut out =
        CrossValidation { candidates: 0, bimodal_by_definition: 0, bimodal_by_structure: 0, counterexample: None };
    for (seen, d, s, cx) in per_support {
        out.candidates += seen;
        out.bimodal_by_definition += d;
        out.bimodal_by_structure += s;
        if out.counterexample.is_none() {
            out.counterexample = cx;
        }
    }
    Ok(out)
}
