//! Collections of disjoint subsets, their external difference counts, and
//! the two bimodality deciders.
//!
//! [`is_bimodal_by_definition`] counts external differences directly.
//! [`is_bimodal_by_structure`] instead asks whether every complement
//! `B_i = A \ A_i` is a union of cosets of the internal difference group
//! `H_i`. The two are independent routes to the same verdict and are
//! cross-checked exhaustively in the test suites.

use std::fmt;

use thiserror::Error;

use crate::group::{CosetDecomposition, Elem, GroupElement, GroupSpec, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CollectionError {
    #[error("a collection needs at least one set")]
    NoSets,
    #[error("set {set} is empty")]
    EmptySet { set: usize },
    #[error("set {set} contains element handle {element}, which is outside the group")]
    InvalidElement { set: usize, element: usize },
    #[error("set {set} lists element {element} more than once")]
    DuplicateElement { set: usize, element: GroupElement },
    #[error("sets {first} and {second} both contain {element}")]
    Overlap { first: usize, second: usize, element: GroupElement },
    #[error("set index {index} out of range for a collection of {len} sets")]
    IndexOutOfRange { index: usize, len: usize },
}

/// An ordered list of labelled, pairwise-disjoint, non-empty subsets of a
/// group. Each set is kept in canonical (ascending) order; the order of the
/// sets themselves is the labelling and is preserved.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetCollection {
    group: GroupSpec,
    sets: Vec<Vec<Elem>>,
}

impl SetCollection {
    pub fn new(group: GroupSpec, sets: Vec<Vec<Elem>>) -> Result<SetCollection, CollectionError> {
        if sets.is_empty() {
            return Err(CollectionError::NoSets);
        }
        let mut owner: Vec<Option<usize>> = vec![None; group.order()];
        let mut sorted_sets = Vec::with_capacity(sets.len());
        for (i, mut set) in sets.into_iter().enumerate() {
            if set.is_empty() {
                return Err(CollectionError::EmptySet { set: i });
            }
            for &e in &set {
                if !group.contains(e) {
                    return Err(CollectionError::InvalidElement { set: i, element: e.index() });
                }
                match owner[e.index()] {
                    Some(j) if j == i => {
                        return Err(CollectionError::DuplicateElement { set: i, element: group.decode(e) })
                    }
                    Some(j) => return Err(CollectionError::Overlap { first: j, second: i, element: group.decode(e) }),
                    None => owner[e.index()] = Some(i),
                }
            }
            set.sort_unstable();
            sorted_sets.push(set);
        }
        Ok(SetCollection { group, sets: sorted_sets })
    }

    /// Builds from sets already known to be valid, sorted and disjoint.
    pub(crate) fn from_trusted(group: GroupSpec, sets: Vec<Vec<Elem>>) -> SetCollection {
        debug_assert!(sets.iter().all(|s| !s.is_empty() && s.windows(2).all(|w| w[0] < w[1])));
        SetCollection { group, sets }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn sets(&self) -> &[Vec<Elem>] {
        &self.sets
    }

    pub fn set(&self, i: usize) -> Result<&[Elem], CollectionError> {
        self.sets.get(i).map(Vec::as_slice).ok_or(CollectionError::IndexOutOfRange { index: i, len: self.sets.len() })
    }

    /// Number of sets `m`.
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    /// Always false; collections hold at least one set.
    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn set_sizes(&self) -> Vec<usize> {
        self.sets.iter().map(Vec::len).collect()
    }

    /// The support `A`, ascending.
    pub fn support(&self) -> Vec<Elem> {
        let mut all: Vec<Elem> = self.sets.iter().flatten().copied().collect();
        all.sort_unstable();
        all
    }

    /// `B_i = A \ A_i`, ascending.
    pub fn complement(&self, i: usize) -> Result<Vec<Elem>, CollectionError> {
        self.set(i)?;
        let mut out: Vec<Elem> =
            self.sets.iter().enumerate().filter(|&(j, _)| j != i).flat_map(|(_, s)| s.iter().copied()).collect();
        out.sort_unstable();
        Ok(out)
    }

    /// The chosen representative `a_i`: the minimal element of `A_i`.
    pub fn representative(&self, i: usize) -> Result<Elem, CollectionError> {
        Ok(self.set(i)?[0])
    }

    /// `{A_1 + g, ..., A_m + g}`.
    pub fn translated(&self, g: Elem) -> SetCollection {
        let sets = self.sets.iter().map(|s| self.group.translate(s, g)).collect();
        SetCollection { group: self.group.clone(), sets }
    }

    /// The same sets relabelled so that position `j` holds set `order[j]`.
    pub fn permuted(&self, order: &[usize]) -> Result<SetCollection, CollectionError> {
        let mut seen = vec![false; self.sets.len()];
        let mut sets = Vec::with_capacity(order.len());
        for &i in order {
            self.set(i)?;
            if std::mem::replace(&mut seen[i], true) {
                return Err(CollectionError::IndexOutOfRange { index: i, len: self.sets.len() });
            }
            sets.push(self.sets[i].clone());
        }
        if seen.iter().any(|s| !s) {
            return Err(CollectionError::IndexOutOfRange { index: order.len(), len: self.sets.len() });
        }
        Ok(SetCollection { group: self.group.clone(), sets })
    }

    /// Sets sorted by their element lists; the labelling-free normal form.
    pub fn canonical_order(&self) -> SetCollection {
        let mut sets = self.sets.clone();
        sets.sort();
        SetCollection { group: self.group.clone(), sets }
    }

    /// Internal difference group `H_i`, generated by all `x - y` with
    /// `x, y` in `A_i`. The differences `x - a_i` already generate it.
    pub fn internal_difference_group(&self, i: usize) -> Result<Subgroup, CollectionError> {
        let set = self.set(i)?;
        Ok(internal_difference_group_of(&self.group, set))
    }

    pub fn internal_difference_groups(&self) -> Vec<Subgroup> {
        self.sets.iter().map(|s| internal_difference_group_of(&self.group, s)).collect()
    }

    pub fn display_set(&self, i: usize) -> String {
        display_elements(&self.group, &self.sets[i])
    }
}

impl fmt::Display for SetCollection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.group)?;
        for i in 0..self.sets.len() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.display_set(i))?;
        }
        Ok(())
    }
}

pub(crate) fn display_elements(group: &GroupSpec, set: &[Elem]) -> String {
    let parts: Vec<String> = set.iter().map(|&e| group.decode(e).to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Internal difference group of an arbitrary non-empty element set.
pub fn internal_difference_group_of(group: &GroupSpec, set: &[Elem]) -> Subgroup {
    let Some((&base, rest)) = set.split_first() else {
        return Subgroup::trivial(group);
    };
    let gens: Vec<Elem> = rest.iter().map(|&x| group.sub(x, base)).collect();
    Subgroup::generate(group, &gens).expect("differences of group elements are valid")
}

/// External difference counts `N_i(delta)` for every set and every
/// non-identity `delta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceProfile {
    set_sizes: Vec<usize>,
    support_size: usize,
    /// `counts[i][delta]`; the identity column is always zero.
    counts: Vec<Vec<u32>>,
}

impl DifferenceProfile {
    pub fn set_sizes(&self) -> &[usize] {
        &self.set_sizes
    }

    pub fn support_size(&self) -> usize {
        self.support_size
    }

    pub fn count(&self, i: usize, delta: Elem) -> usize {
        self.counts[i][delta.index()] as usize
    }

    /// `(delta, N_i(delta))` for every non-identity `delta`, ascending.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (Elem, usize)> + '_ {
        self.counts[i].iter().enumerate().skip(1).map(|(d, &c)| (Elem::from_index(d), c as usize))
    }

    pub fn rows(&self) -> usize {
        self.counts.len()
    }
}

/// Counts ordered pairs `(a, b)`, `a` in `A_i`, `b` in `B_i`, with `a - b = delta`.
pub fn difference_profile(c: &SetCollection) -> DifferenceProfile {
    let group = c.group();
    let n = group.order();
    let support_size = c.sets.iter().map(Vec::len).sum();
    let counts = c
        .sets
        .iter()
        .enumerate()
        .map(|(i, set)| {
            let mut row = vec![0u32; n];
            for (j, other) in c.sets.iter().enumerate() {
                if j == i {
                    continue;
                }
                for &a in set {
                    for &b in other {
                        row[group.sub(a, b).index()] += 1;
                    }
                }
            }
            row
        })
        .collect();
    DifferenceProfile { set_sizes: c.set_sizes(), support_size, counts }
}

/// Why a collection is not bimodal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// `N_set(delta) = count`, which is neither 0 nor `|A_set| = size`.
    Count { set: usize, delta: Elem, count: usize, size: usize },
    /// `element` lies in `B_set` but its coset of `H_set` is not inside `B_set`.
    Coset { set: usize, element: Elem },
}

impl Witness {
    pub fn set(&self) -> usize {
        match *self {
            Witness::Count { set, .. } | Witness::Coset { set, .. } => set,
        }
    }

    pub fn describe(&self, group: &GroupSpec) -> String {
        match *self {
            Witness::Count { set, delta, count, size } => {
                format!("N_{set}({}) = {count}, expected 0 or {size}", group.decode(delta))
            }
            Witness::Coset { set, element } => {
                format!("B_{set} contains {} but not its whole coset of H_{set}", group.decode(element))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Bimodal,
    NotBimodal(Witness),
}

impl Verdict {
    pub fn is_bimodal(&self) -> bool {
        matches!(self, Verdict::Bimodal)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Bimodal => None,
            Verdict::NotBimodal(w) => Some(w),
        }
    }
}

/// `N_i(delta)` in `{0, k_i}` for every `i` and every `delta != 0`. The
/// witness is the smallest failing `(i, delta)`.
pub fn is_bimodal_by_definition(c: &SetCollection) -> Verdict {
    let profile = difference_profile(c);
    verdict_from_profile(&profile)
}

pub fn verdict_from_profile(profile: &DifferenceProfile) -> Verdict {
    for (i, &size) in profile.set_sizes.iter().enumerate() {
        for (delta, count) in profile.row(i) {
            if count != 0 && count != size {
                return Verdict::NotBimodal(Witness::Count { set: i, delta, count, size });
            }
        }
    }
    Verdict::Bimodal
}

/// Every `B_i` is a union of cosets of `H_i`.
pub fn is_bimodal_by_structure(c: &SetCollection) -> Verdict {
    for i in 0..c.len() {
        let h = internal_difference_group_of(&c.group, &c.sets[i]);
        let b = c.complement(i).expect("index in range");
        match h.coset_decompose(&b).expect("collection elements are valid") {
            CosetDecomposition::Union(_) => {}
            CosetDecomposition::Partial { witness } => {
                return Verdict::NotBimodal(Witness::Coset { set: i, element: witness })
            }
        }
    }
    Verdict::Bimodal
}

/// First `(k, j, x)` with `x` in `A_k` and in the home coset `a_j + H_j`,
/// `k != j`. Bimodal collections never have one.
pub fn home_coset_violation(c: &SetCollection) -> Option<(usize, usize, Elem)> {
    let group = c.group();
    let mut owner: Vec<Option<usize>> = vec![None; group.order()];
    for (k, set) in c.sets.iter().enumerate() {
        for &x in set {
            owner[x.index()] = Some(k);
        }
    }
    for (j, set) in c.sets.iter().enumerate() {
        let h = internal_difference_group_of(group, set);
        for x in h.coset(set[0]) {
            if let Some(k) = owner[x.index()] {
                if k != j {
                    return Some((k, j, x));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coll(n: u64, sets: &[&[i64]]) -> SetCollection {
        let g = GroupSpec::cyclic(n).unwrap();
        let sets = sets.iter().map(|s| s.iter().map(|&x| g.elem(&[x]).unwrap()).collect()).collect();
        SetCollection::new(g, sets).unwrap()
    }

    #[test]
    fn z10_profile_row_three() {
        let c = coll(10, &[&[1, 6], &[3, 8], &[4, 9]]);
        let p = difference_profile(&c);
        let g = c.group();
        for d in [1, 3, 6, 8] {
            assert_eq!(p.count(2, g.elem(&[d]).unwrap()), 2, "delta {d}");
        }
        for d in [2, 4, 5, 7, 9] {
            assert_eq!(p.count(2, g.elem(&[d]).unwrap()), 0, "delta {d}");
        }
        assert_eq!(is_bimodal_by_definition(&c), Verdict::Bimodal);
        assert_eq!(is_bimodal_by_structure(&c), Verdict::Bimodal);
    }

    #[test]
    fn single_set_has_no_external_pairs() {
        let c = coll(7, &[&[0, 1, 3]]);
        let p = difference_profile(&c);
        assert!(p.row(0).all(|(_, n)| n == 0));
        assert!(is_bimodal_by_definition(&c).is_bimodal());
        assert!(is_bimodal_by_structure(&c).is_bimodal());
    }

    #[test]
    fn singletons_are_bimodal() {
        let c = coll(9, &[&[0], &[2], &[3], &[7]]);
        assert!(is_bimodal_by_definition(&c).is_bimodal());
        assert!(is_bimodal_by_structure(&c).is_bimodal());
    }

    #[test]
    fn broken_z10_collection_reports_witnesses() {
        let c = coll(10, &[&[1, 2], &[3, 8], &[4, 9]]);
        let Verdict::NotBimodal(Witness::Count { set, delta, count, size }) = is_bimodal_by_definition(&c) else {
            panic!("expected a count witness");
        };
        // From {1,2} into {3,8,4,9} the difference 2 arises once (1 - 9).
        assert_eq!((set, delta.index(), count, size), (0, 2, 1, 2));
        assert!(matches!(is_bimodal_by_structure(&c), Verdict::NotBimodal(Witness::Coset { set: 0, .. })));
    }

    #[test]
    fn internal_difference_groups() {
        let c = coll(10, &[&[1, 6], &[3]]);
        assert_eq!(c.internal_difference_group(0).unwrap().elements().len(), 2);
        assert!(c.internal_difference_group(1).unwrap().is_trivial());
        assert!(c.internal_difference_group(2).is_err());
        let c = coll(12, &[&[4, 8]]);
        let h = c.internal_difference_group(0).unwrap();
        assert_eq!(h.elements().iter().map(|e| e.index()).collect::<Vec<_>>(), vec![0, 4, 8]);
    }

    #[test]
    fn construction_errors() {
        let g = GroupSpec::cyclic(5).unwrap();
        let e = |x: i64| g.elem(&[x]).unwrap();
        assert_eq!(SetCollection::new(g.clone(), vec![]), Err(CollectionError::NoSets));
        assert_eq!(SetCollection::new(g.clone(), vec![vec![e(1)], vec![]]), Err(CollectionError::EmptySet { set: 1 }));
        assert!(matches!(
            SetCollection::new(g.clone(), vec![vec![e(1)], vec![e(1)]]),
            Err(CollectionError::Overlap { first: 0, second: 1, .. })
        ));
        assert!(matches!(
            SetCollection::new(g.clone(), vec![vec![e(1), e(1)]]),
            Err(CollectionError::DuplicateElement { set: 0, .. })
        ));
        assert!(matches!(
            SetCollection::new(g, vec![vec![Elem::from_index(5)]]),
            Err(CollectionError::InvalidElement { set: 0, element: 5 })
        ));
    }

    #[test]
    fn home_cosets_are_exclusive_when_bimodal() {
        let c = coll(10, &[&[1, 6], &[3, 8], &[4, 9]]);
        assert_eq!(home_coset_violation(&c), None);
        // {0,2} has H = <2>, whose coset contains 4.
        let c = coll(10, &[&[0, 2], &[4]]);
        assert_eq!(home_coset_violation(&c).map(|(k, j, _)| (k, j)), Some((1, 0)));
    }

    #[test]
    fn permutation_and_canonical_order() {
        let c = coll(12, &[&[4, 8], &[3, 6, 9], &[1]]);
        let p = c.permuted(&[2, 0, 1]).unwrap();
        assert_eq!(p.sets()[0], c.sets()[2]);
        assert_eq!(p.canonical_order(), c.canonical_order());
        assert!(c.permuted(&[0, 0, 1]).is_err());
        assert!(c.permuted(&[0, 1]).is_err());
    }
}
