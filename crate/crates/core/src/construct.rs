//! Constructions of bimodal collections.
//!
//! Every constructor validates its hypotheses and returns a dedicated error
//! when one fails; none of them re-checks bimodality of its output. That is
//! left to the test suites, which run both deciders on every output.

use thiserror::Error;

use crate::bimodal::{
    internal_difference_group_of, is_bimodal_by_structure, CollectionError, SetCollection, Verdict, Witness,
};
use crate::group::{all_subgroups, Elem, GroupElement, GroupError, GroupSpec, Subgroup};

/// Default order cap for subgroup enumeration.
pub const DEFAULT_SUBGROUP_CAP: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Collection(#[from] CollectionError),
    #[error("representatives {first} and {second} give the same coset")]
    DuplicateCoset { first: usize, second: usize },
    #[error("subgroup {index} is trivial and contributes no non-zero elements")]
    TrivialSubgroup { index: usize },
    #[error("subgroup {index} has order {order}; every subgroup must have order greater than 2")]
    IndexCondition { index: usize, order: usize },
    #[error("non-zero elements are not partitioned: {0}")]
    NotAPartition(String),
    #[error("subgroups {first} and {second} share the non-zero element {element}")]
    NotDisjoint { first: usize, second: usize, element: GroupElement },
    #[error("input collection is not bimodal")]
    NotBimodal(Witness),
    #[error("parts do not partition set {set}: {reason}")]
    SubdivisionPartition { set: usize, reason: String },
    #[error("subdivision hypothesis fails: {0}")]
    SubdivisionHypothesis(String),
    #[error("subgroups {first} and {second} do not intersect exactly in the kernel")]
    NotAStar { first: usize, second: usize },
    #[error("a star needs at least two subgroups, got {0}")]
    StarTooSmall(usize),
    #[error("subgroup {index} has index {kernel_index} over the kernel; it must exceed 2")]
    StarIndex { index: usize, kernel_index: usize },
    #[error("interior coset representatives do not tile H minus the union of the subgroups: {0}")]
    InteriorTiling(String),
    #[error("outer coset representatives are invalid: {0}")]
    OuterCoset(String),
    #[error("A_1 is not a non-empty proper subset of H_1")]
    NotProperSubset,
    #[error("internal differences of A_1 generate a subgroup of order {generated}, not H_1 of order {expected}")]
    Generation { generated: usize, expected: usize },
    #[error("tiling entry {entry}: A_1 is not a union of cosets of its subgroup")]
    TilingSubgroup { entry: usize },
    #[error("tiling does not cover whole cosets of H_1 outside H_1: {0}")]
    Tiling(String),
}

fn same_group(group: &GroupSpec, h: &Subgroup) -> Result<(), ConstructError> {
    if h.group() == group {
        Ok(())
    } else {
        Err(GroupError::AmbientMismatch.into())
    }
}

/// `{rep + H : rep in reps}`.
pub fn construct_cosets(h: &Subgroup, reps: &[Elem]) -> Result<SetCollection, ConstructError> {
    let group = h.group();
    let mut mins: Vec<Elem> = Vec::with_capacity(reps.len());
    for (i, &rep) in reps.iter().enumerate() {
        group.check(rep)?;
        let m = h.coset_min(rep);
        if let Some(first) = mins.iter().position(|&x| x == m) {
            return Err(ConstructError::DuplicateCoset { first, second: i });
        }
        mins.push(m);
    }
    let sets = reps.iter().map(|&r| h.coset(r)).collect();
    Ok(SetCollection::new(group.clone(), sets)?)
}

fn starred(h: &Subgroup) -> Vec<Elem> {
    h.elements()[1..].to_vec()
}

fn check_disjoint_stars(group: &GroupSpec, subgroups: &[Subgroup]) -> Result<Vec<Option<usize>>, ConstructError> {
    let mut owner: Vec<Option<usize>> = vec![None; group.order()];
    for (i, s) in subgroups.iter().enumerate() {
        same_group(group, s)?;
        if s.is_trivial() {
            return Err(ConstructError::TrivialSubgroup { index: i });
        }
        for &x in &s.elements()[1..] {
            if let Some(first) = owner[x.index()] {
                return Err(ConstructError::NotDisjoint { first, second: i, element: group.decode(x) });
            }
            owner[x.index()] = Some(i);
        }
    }
    Ok(owner)
}

/// `{S_1^*, ..., S_m^*}` for a group partition with every `|S_i| > 2`.
pub fn construct_group_partition(group: &GroupSpec, subgroups: &[Subgroup]) -> Result<SetCollection, ConstructError> {
    for (index, s) in subgroups.iter().enumerate() {
        same_group(group, s)?;
        if s.len() <= 2 {
            return Err(ConstructError::IndexCondition { index, order: s.len() });
        }
    }
    let owner = check_disjoint_stars(group, subgroups).map_err(|e| match e {
        ConstructError::NotDisjoint { first, second, element } => {
            ConstructError::NotAPartition(format!("subgroups {first} and {second} share {element}"))
        }
        other => other,
    })?;
    if let Some(missing) = group.elements().skip(1).find(|x| owner[x.index()].is_none()) {
        return Err(ConstructError::NotAPartition(format!("{} is not covered", group.decode(missing))));
    }
    Ok(SetCollection::new(group.clone(), subgroups.iter().map(starred).collect())?)
}

/// The `S_i^*` followed by one singleton per remaining non-zero element,
/// ascending.
pub fn construct_mixed_partition(group: &GroupSpec, subgroups: &[Subgroup]) -> Result<SetCollection, ConstructError> {
    let owner = check_disjoint_stars(group, subgroups)?;
    let mut sets: Vec<Vec<Elem>> = subgroups.iter().map(starred).collect();
    sets.extend(group.elements().skip(1).filter(|x| owner[x.index()].is_none()).map(|x| vec![x]));
    if sets.is_empty() {
        // Only the trivial group has no non-zero elements.
        return Err(CollectionError::NoSets.into());
    }
    Ok(SetCollection::new(group.clone(), sets)?)
}

/// `{A_1 + g, ..., A_m + g}`.
pub fn shift(c: &SetCollection, g: Elem) -> Result<SetCollection, ConstructError> {
    c.group().check(g)?;
    Ok(c.translated(g))
}

fn is_full_coset(group: &GroupSpec, set: &[Elem]) -> bool {
    internal_difference_group_of(group, set).len() == set.len()
}

/// Replaces `A_i`, a full coset of `H_i`, by `parts`, each a full coset of
/// its own internal difference group.
pub fn subdivide(c: &SetCollection, i: usize, parts: &[Vec<Elem>]) -> Result<SetCollection, ConstructError> {
    let group = c.group();
    let target = c.set(i)?;
    if let Verdict::NotBimodal(w) = is_bimodal_by_structure(c) {
        return Err(ConstructError::NotBimodal(w));
    }
    if !is_full_coset(group, target) {
        return Err(ConstructError::SubdivisionHypothesis(format!("set {i} is not a full coset of H_{i}")));
    }
    let mut covered: Vec<Elem> = Vec::with_capacity(target.len());
    for (j, part) in parts.iter().enumerate() {
        if part.is_empty() {
            return Err(ConstructError::SubdivisionPartition { set: i, reason: format!("part {j} is empty") });
        }
        covered.extend_from_slice(part);
    }
    covered.sort_unstable();
    if covered.windows(2).any(|w| w[0] == w[1]) {
        return Err(ConstructError::SubdivisionPartition { set: i, reason: "parts overlap".into() });
    }
    if covered != target {
        return Err(ConstructError::SubdivisionPartition {
            set: i,
            reason: "parts do not cover the set exactly".into(),
        });
    }
    for (j, part) in parts.iter().enumerate() {
        if !is_full_coset(group, part) {
            return Err(ConstructError::SubdivisionHypothesis(format!(
                "part {j} is not a coset of its internal difference group"
            )));
        }
    }
    let mut sets: Vec<Vec<Elem>> = Vec::with_capacity(c.len() + parts.len() - 1);
    sets.extend_from_slice(&c.sets()[..i]);
    sets.extend(parts.iter().map(|p| {
        let mut p = p.clone();
        p.sort_unstable();
        p
    }));
    sets.extend_from_slice(&c.sets()[i + 1..]);
    Ok(SetCollection::from_trusted(group.clone(), sets))
}

/// Inputs for the star construction with `t = subgroups.len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarSpec {
    pub group: GroupSpec,
    pub subgroups: Vec<Subgroup>,
    pub kernel: Subgroup,
    /// One representative per `D`-coset of `H \ (H_1 ∪ ... ∪ H_t)`.
    pub interior_coset_reps: Vec<Elem>,
    /// One representative per whole `H`-coset to include, none of them `H`.
    pub outer_coset_reps: Vec<Elem>,
}

impl StarSpec {
    /// Fills in the interior representatives (minimal element of each
    /// `D`-coset inside `H` and outside every `H_i`).
    pub fn with_all_interior(mut self) -> Result<StarSpec, ConstructError> {
        let refs: Vec<&Subgroup> = self.subgroups.iter().collect();
        let h = Subgroup::sum(&refs)?;
        let mut reps = Vec::new();
        for &x in h.elements() {
            if self.subgroups.iter().any(|s| s.contains(x)) {
                continue;
            }
            let m = self.kernel.coset_min(x);
            if m == x {
                reps.push(x);
            }
        }
        self.interior_coset_reps = reps;
        Ok(self)
    }
}

/// Collection made of `H_i \ D`, the interior `D`-cosets, and every
/// `D`-coset of each outer `H`-coset.
pub fn construct_star(spec: &StarSpec) -> Result<SetCollection, ConstructError> {
    let group = &spec.group;
    let t = spec.subgroups.len();
    if t < 2 {
        return Err(ConstructError::StarTooSmall(t));
    }
    same_group(group, &spec.kernel)?;
    for s in &spec.subgroups {
        same_group(group, s)?;
    }
    for first in 0..t {
        for second in first + 1..t {
            if spec.subgroups[first].intersect(&spec.subgroups[second])? != spec.kernel {
                return Err(ConstructError::NotAStar { first, second });
            }
        }
    }
    let d = &spec.kernel;
    for (index, s) in spec.subgroups.iter().enumerate() {
        let kernel_index = d.index_in(s).expect("kernel lies in every subgroup of a star");
        if kernel_index <= 2 {
            return Err(ConstructError::StarIndex { index, kernel_index });
        }
    }
    let refs: Vec<&Subgroup> = spec.subgroups.iter().collect();
    let h = Subgroup::sum(&refs)?;

    let mut sets: Vec<Vec<Elem>> =
        spec.subgroups.iter().map(|s| s.elements().iter().copied().filter(|&x| !d.contains(x)).collect()).collect();

    let mut interior: Vec<Elem> = Vec::new();
    let mut seen: Vec<Elem> = Vec::new();
    for (j, &rep) in spec.interior_coset_reps.iter().enumerate() {
        group.check(rep)?;
        let coset = d.coset(rep);
        if !h.contains(rep) {
            return Err(ConstructError::InteriorTiling(format!("representative {j} lies outside H")));
        }
        if coset.iter().any(|&x| spec.subgroups.iter().any(|s| s.contains(x))) {
            return Err(ConstructError::InteriorTiling(format!("coset {j} meets one of the subgroups")));
        }
        let m = coset[0];
        if seen.contains(&m) {
            return Err(ConstructError::InteriorTiling(format!("coset {j} is listed twice")));
        }
        seen.push(m);
        interior.extend_from_slice(&coset);
        sets.push(coset);
    }
    let expected = h.elements().iter().filter(|&&x| !spec.subgroups.iter().any(|s| s.contains(x))).count();
    if interior.len() != expected {
        return Err(ConstructError::InteriorTiling(format!("{} of {expected} elements covered", interior.len())));
    }

    let mut outer_seen: Vec<Elem> = Vec::new();
    for (j, &rep) in spec.outer_coset_reps.iter().enumerate() {
        group.check(rep)?;
        if h.contains(rep) {
            return Err(ConstructError::OuterCoset(format!("representative {j} lies in H")));
        }
        let m = h.coset_min(rep);
        if outer_seen.contains(&m) {
            return Err(ConstructError::OuterCoset(format!("coset {j} is listed twice")));
        }
        outer_seen.push(m);
        let mut blocks: Vec<Vec<Elem>> = Vec::new();
        for x in h.coset(rep) {
            if d.coset_min(x) == x {
                blocks.push(d.coset(x));
            }
        }
        sets.extend(blocks);
    }
    Ok(SetCollection::new(group.clone(), sets)?)
}

/// Subgroups `J` for which `a1` is a union of cosets of `J`.
pub fn admissible_tiling_subgroups(
    group: &GroupSpec,
    a1: &[Elem],
    cap: usize,
) -> Result<Vec<Subgroup>, ConstructError> {
    Ok(all_subgroups(group, cap)?.into_iter().filter(|j| j.is_coset_union(a1)).collect())
}

/// `{A_1}` together with the cosets `rep + J` of the tiling.
pub fn construct_r1(
    group: &GroupSpec,
    h1: &Subgroup,
    a1: &[Elem],
    tiling: &[(Subgroup, Elem)],
    subgroup_cap: usize,
) -> Result<SetCollection, ConstructError> {
    same_group(group, h1)?;
    let mut a1 = a1.to_vec();
    a1.sort_unstable();
    a1.dedup();
    for &x in &a1 {
        group.check(x)?;
    }
    if a1.is_empty() || a1.len() >= h1.len() || !a1.iter().all(|&x| h1.contains(x)) {
        return Err(ConstructError::NotProperSubset);
    }
    let generated = internal_difference_group_of(group, &a1);
    if generated != *h1 {
        return Err(ConstructError::Generation { generated: generated.len(), expected: h1.len() });
    }
    let admissible = admissible_tiling_subgroups(group, &a1, subgroup_cap)?;

    let mut taken = vec![false; group.order()];
    let mut covered = Vec::new();
    let mut sets = vec![a1.clone()];
    for (entry, (j, rep)) in tiling.iter().enumerate() {
        same_group(group, j)?;
        group.check(*rep)?;
        if !admissible.contains(j) {
            return Err(ConstructError::TilingSubgroup { entry });
        }
        let coset = j.coset(*rep);
        for &x in &coset {
            if h1.contains(x) {
                return Err(ConstructError::Tiling(format!("entry {entry} meets H_1")));
            }
            if std::mem::replace(&mut taken[x.index()], true) {
                return Err(ConstructError::Tiling(format!("entry {entry} overlaps an earlier entry")));
            }
        }
        covered.extend_from_slice(&coset);
        sets.push(coset);
    }
    if !h1.is_coset_union(&covered) {
        return Err(ConstructError::Tiling("covered elements are not a union of cosets of H_1".into()));
    }
    Ok(SetCollection::new(group.clone(), sets)?)
}
