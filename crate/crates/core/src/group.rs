//! Finite abelian groups presented as direct products of cyclic groups.
//!
//! Elements are handled internally as [`Elem`] handles: the position of the
//! residue tuple in lexicographic order. Comparing two handles therefore
//! compares the tuples lexicographically, which is the canonical order used
//! for every set, representative and emitted document in this crate.
//! [`GroupElement`] is the explicit residue tuple used at the boundaries.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// Groups larger than this are refused; every subgroup stores its full
/// element set.
pub const MAX_GROUP_ORDER: usize = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("cyclic factor {index} has order {order}; every factor order must be at least 1")]
    InvalidFactorOrder { index: usize, order: u64 },
    #[error("group order exceeds the supported maximum of {max}")]
    TooLarge { max: usize },
    #[error("element has {found} residues but the group has {expected} cyclic factors")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("residue {residue} is out of range for cyclic factor {factor} of order {order}")]
    ResidueOutOfRange { factor: usize, residue: i64, order: u32 },
    #[error("element handle {0} is out of range for this group")]
    InvalidElement(usize),
    #[error("subgroups live in different ambient groups")]
    AmbientMismatch,
    #[error("a non-empty list of subgroups is required")]
    EmptySubgroupList,
    #[error("subgroup enumeration refused: group order {order} exceeds the cap {cap}")]
    SubgroupCapExceeded { order: usize, cap: usize },
}

/// Handle for a group element: its index in lexicographic residue order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Elem(u32);

impl Elem {
    /// The identity of every group.
    pub const ZERO: Elem = Elem(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(index: usize) -> Elem {
        Elem(u32::try_from(index).expect("element index fits in u32"))
    }
}

/// An explicit residue tuple, one residue per cyclic factor.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    residues: Vec<u32>,
}

impl GroupElement {
    pub fn residues(&self) -> &[u32] {
        &self.residues
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let [single] = self.residues.as_slice() {
            return write!(f, "{single}");
        }
        write!(f, "(")?;
        for (i, r) in self.residues.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

/// `Z_{n_1} x ... x Z_{n_k}`. An empty factor list is the trivial group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    orders: Vec<u32>,
    strides: Vec<usize>,
    order: usize,
}

impl GroupSpec {
    pub fn new(cyclic_orders: &[u64]) -> Result<GroupSpec, GroupError> {
        let mut orders = Vec::with_capacity(cyclic_orders.len());
        let mut order: usize = 1;
        for (index, &n) in cyclic_orders.iter().enumerate() {
            if n == 0 {
                return Err(GroupError::InvalidFactorOrder { index, order: n });
            }
            let n32 = u32::try_from(n).map_err(|_| GroupError::TooLarge { max: MAX_GROUP_ORDER })?;
            order = order
                .checked_mul(n as usize)
                .filter(|&o| o <= MAX_GROUP_ORDER)
                .ok_or(GroupError::TooLarge { max: MAX_GROUP_ORDER })?;
            orders.push(n32);
        }
        let mut strides = vec![1usize; orders.len()];
        for i in (0..orders.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * orders[i + 1] as usize;
        }
        Ok(GroupSpec { orders, strides, order })
    }

    /// The cyclic group `Z_n`.
    pub fn cyclic(n: u64) -> Result<GroupSpec, GroupError> {
        GroupSpec::new(&[n])
    }

    pub fn cyclic_orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn contains(&self, e: Elem) -> bool {
        e.index() < self.order
    }

    pub fn check(&self, e: Elem) -> Result<Elem, GroupError> {
        if self.contains(e) {
            Ok(e)
        } else {
            Err(GroupError::InvalidElement(e.index()))
        }
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl DoubleEndedIterator<Item = Elem> + ExactSizeIterator {
        (0..self.order).map(Elem::from_index)
    }

    /// Validates raw residues (which may be negative or unreduced in the
    /// input) and returns the element. Residues must already lie in
    /// `[0, n_i)`.
    pub fn element(&self, residues: &[i64]) -> Result<GroupElement, GroupError> {
        if residues.len() != self.orders.len() {
            return Err(GroupError::DimensionMismatch { expected: self.orders.len(), found: residues.len() });
        }
        let mut out = Vec::with_capacity(residues.len());
        for (factor, (&r, &n)) in residues.iter().zip(&self.orders).enumerate() {
            if r < 0 || r >= i64::from(n) {
                return Err(GroupError::ResidueOutOfRange { factor, residue: r, order: n });
            }
            out.push(r as u32);
        }
        Ok(GroupElement { residues: out })
    }

    pub fn encode(&self, g: &GroupElement) -> Result<Elem, GroupError> {
        if g.residues.len() != self.orders.len() {
            return Err(GroupError::DimensionMismatch { expected: self.orders.len(), found: g.residues.len() });
        }
        let mut index = 0usize;
        for (factor, ((&r, &n), &stride)) in g.residues.iter().zip(&self.orders).zip(&self.strides).enumerate() {
            if r >= n {
                return Err(GroupError::ResidueOutOfRange { factor, residue: i64::from(r), order: n });
            }
            index += r as usize * stride;
        }
        Ok(Elem::from_index(index))
    }

    /// Parses residues straight to a handle.
    pub fn elem(&self, residues: &[i64]) -> Result<Elem, GroupError> {
        self.encode(&self.element(residues)?)
    }

    pub fn decode(&self, e: Elem) -> GroupElement {
        debug_assert!(self.contains(e));
        let mut rest = e.index();
        let mut residues = vec![0u32; self.orders.len()];
        for i in (0..self.orders.len()).rev() {
            let n = self.orders[i] as usize;
            residues[i] = (rest % n) as u32;
            rest /= n;
        }
        GroupElement { residues }
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        debug_assert!(self.contains(a) && self.contains(b));
        if let [n] = self.orders.as_slice() {
            let s = a.0 + b.0;
            return Elem(if s >= *n { s - n } else { s });
        }
        let (mut a, mut b) = (a.index(), b.index());
        let mut out = 0usize;
        for i in (0..self.orders.len()).rev() {
            let n = self.orders[i] as usize;
            let mut s = a % n + b % n;
            if s >= n {
                s -= n;
            }
            out += s * self.strides[i];
            a /= n;
            b /= n;
        }
        Elem::from_index(out)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        debug_assert!(self.contains(a));
        if let [n] = self.orders.as_slice() {
            return Elem(if a.0 == 0 { 0 } else { n - a.0 });
        }
        let mut a = a.index();
        let mut out = 0usize;
        for i in (0..self.orders.len()).rev() {
            let n = self.orders[i] as usize;
            let r = a % n;
            out += if r == 0 { 0 } else { n - r } * self.strides[i];
            a /= n;
        }
        Elem::from_index(out)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// Componentwise sum of explicit elements.
    pub fn element_add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        Ok(self.decode(self.add(self.encode(a)?, self.encode(b)?)))
    }

    pub fn element_sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        Ok(self.decode(self.sub(self.encode(a)?, self.encode(b)?)))
    }

    pub fn element_neg(&self, a: &GroupElement) -> Result<GroupElement, GroupError> {
        Ok(self.decode(self.neg(self.encode(a)?)))
    }

    /// Translates a set by `g`, returning it in canonical order.
    pub fn translate(&self, set: &[Elem], g: Elem) -> Vec<Elem> {
        let mut out: Vec<Elem> = set.iter().map(|&x| self.add(x, g)).collect();
        out.sort_unstable();
        out
    }

    pub fn display(&self, e: Elem) -> GroupElement {
        self.decode(e)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "Z_1");
        }
        for (i, n) in self.orders.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "Z_{n}")?;
        }
        Ok(())
    }
}

/// Outcome of testing whether a set is a union of cosets of a subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CosetDecomposition {
    /// Lexicographically minimal representative of each coset, ascending.
    Union(Vec<Elem>),
    /// `witness` lies in the set but its coset is only partially covered.
    Partial { witness: Elem },
}

impl CosetDecomposition {
    pub fn is_union(&self) -> bool {
        matches!(self, CosetDecomposition::Union(_))
    }
}

/// A subgroup stored as its full, canonically ordered element set.
#[derive(Debug, Clone)]
pub struct Subgroup {
    group: GroupSpec,
    members: Vec<bool>,
    elements: Vec<Elem>,
    generators: Vec<Elem>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    fn from_members(group: &GroupSpec, members: Vec<bool>, generators: Vec<Elem>) -> Subgroup {
        let elements = members.iter().enumerate().filter(|&(_, &m)| m).map(|(i, _)| Elem::from_index(i)).collect();
        Subgroup { group: group.clone(), members, elements, generators }
    }

    pub fn trivial(group: &GroupSpec) -> Subgroup {
        let mut members = vec![false; group.order()];
        members[0] = true;
        Subgroup::from_members(group, members, Vec::new())
    }

    pub fn whole(group: &GroupSpec) -> Subgroup {
        let gens = unit_vectors(group);
        Subgroup::from_members(group, vec![true; group.order()], gens)
    }

    /// Smallest subgroup containing `gens`, by closure under adding generators.
    pub fn generate(group: &GroupSpec, gens: &[Elem]) -> Result<Subgroup, GroupError> {
        for &g in gens {
            group.check(g)?;
        }
        let mut members = vec![false; group.order()];
        members[0] = true;
        let mut queue = VecDeque::from([Elem::ZERO]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = group.add(x, g);
                if !members[y.index()] {
                    members[y.index()] = true;
                    queue.push_back(y);
                }
            }
        }
        let mut generators = gens.to_vec();
        generators.sort_unstable();
        generators.dedup();
        Ok(Subgroup::from_members(group, members, generators))
    }

    /// Subgroup generated by a set of explicit elements.
    pub fn generate_from(group: &GroupSpec, gens: &[GroupElement]) -> Result<Subgroup, GroupError> {
        let handles = gens.iter().map(|g| group.encode(g)).collect::<Result<Vec<_>, _>>()?;
        Subgroup::generate(group, &handles)
    }

    /// `H_1 + ... + H_k`.
    pub fn sum(list: &[&Subgroup]) -> Result<Subgroup, GroupError> {
        let (first, rest) = list.split_first().ok_or(GroupError::EmptySubgroupList)?;
        let mut acc = (*first).clone();
        for h in rest {
            acc = acc.add_subgroup(h)?;
        }
        Ok(acc)
    }

    fn add_subgroup(&self, other: &Subgroup) -> Result<Subgroup, GroupError> {
        self.same_ambient(other)?;
        if other.is_subgroup_of(self) {
            return Ok(self.clone());
        }
        if self.is_subgroup_of(other) {
            return Ok(other.clone());
        }
        let mut members = vec![false; self.group.order()];
        for &h in &self.elements {
            for &k in &other.elements {
                members[self.group.add(h, k).index()] = true;
            }
        }
        let mut generators = self.generators.clone();
        generators.extend_from_slice(&other.generators);
        generators.sort_unstable();
        generators.dedup();
        Ok(Subgroup::from_members(&self.group, members, generators))
    }

    pub fn intersect(&self, other: &Subgroup) -> Result<Subgroup, GroupError> {
        self.same_ambient(other)?;
        let members: Vec<bool> = self.members.iter().zip(&other.members).map(|(&a, &b)| a && b).collect();
        let mut out = Subgroup::from_members(&self.group, members, Vec::new());
        out.generators = greedy_generators(&out);
        Ok(out)
    }

    pub fn intersect_all(list: &[&Subgroup]) -> Result<Subgroup, GroupError> {
        let (first, rest) = list.split_first().ok_or(GroupError::EmptySubgroupList)?;
        rest.iter().try_fold((*first).clone(), |acc, h| acc.intersect(h))
    }

    fn same_ambient(&self, other: &Subgroup) -> Result<(), GroupError> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(GroupError::AmbientMismatch)
        }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// Never true: every subgroup contains the identity.
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.members.get(e.index()).copied().unwrap_or(false)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.group == other.group && self.len() <= other.len() && self.elements.iter().all(|&e| other.contains(e))
    }

    /// `|other : self|` when `self <= other`.
    pub fn index_in(&self, other: &Subgroup) -> Option<usize> {
        self.is_subgroup_of(other).then(|| other.len() / self.len())
    }

    /// The coset `rep + H`, ascending.
    pub fn coset(&self, rep: Elem) -> Vec<Elem> {
        self.group.translate(&self.elements, rep)
    }

    /// Lexicographically minimal element of `x + H`.
    pub fn coset_min(&self, x: Elem) -> Elem {
        self.elements.iter().map(|&h| self.group.add(x, h)).min().unwrap_or(x)
    }

    /// Full closure check by enumeration.
    pub fn is_closed(&self) -> bool {
        self.contains(Elem::ZERO)
            && self.elements.iter().all(|&a| {
                self.contains(self.group.neg(a)) && self.elements.iter().all(|&b| self.contains(self.group.add(a, b)))
            })
    }

    /// Decides whether `set` is exactly a union of cosets of this subgroup.
    pub fn coset_decompose(&self, set: &[Elem]) -> Result<CosetDecomposition, GroupError> {
        let n = self.group.order();
        let mut in_set = vec![false; n];
        for &s in set {
            self.group.check(s)?;
            in_set[s.index()] = true;
        }
        let mut seen = vec![false; n];
        let mut reps = Vec::new();
        for (i, &present) in in_set.iter().enumerate() {
            if !present || seen[i] {
                continue;
            }
            let s = Elem::from_index(i);
            for &h in &self.elements {
                let y = self.group.add(s, h);
                if !in_set[y.index()] {
                    return Ok(CosetDecomposition::Partial { witness: s });
                }
                seen[y.index()] = true;
            }
            reps.push(s);
        }
        Ok(CosetDecomposition::Union(reps))
    }

    pub fn is_coset_union(&self, set: &[Elem]) -> bool {
        matches!(self.coset_decompose(set), Ok(CosetDecomposition::Union(_)))
    }
}

fn unit_vectors(group: &GroupSpec) -> Vec<Elem> {
    let mut gens: Vec<Elem> =
        group.strides.iter().zip(&group.orders).filter(|(_, &n)| n > 1).map(|(&s, _)| Elem::from_index(s)).collect();
    gens.sort_unstable();
    gens
}

fn greedy_generators(h: &Subgroup) -> Vec<Elem> {
    let mut gens = Vec::new();
    let mut span = Subgroup::trivial(&h.group);
    for &e in &h.elements {
        if !span.contains(e) {
            gens.push(e);
            span = Subgroup::generate(&h.group, &gens).expect("elements of a subgroup are valid");
            if span.len() == h.len() {
                break;
            }
        }
    }
    gens
}

/// Every subgroup of `group`, ordered by size then element set.
///
/// Every subgroup is a join of cyclic subgroups, so the lattice is the
/// closure of `{0}` under joins with each `<g>`.
pub fn all_subgroups(group: &GroupSpec, cap: usize) -> Result<Vec<Subgroup>, GroupError> {
    if group.order() > cap {
        return Err(GroupError::SubgroupCapExceeded { order: group.order(), cap });
    }
    let mut cyclic: Vec<Subgroup> = Vec::new();
    for g in group.elements() {
        let c = Subgroup::generate(group, &[g])?;
        if !cyclic.contains(&c) {
            cyclic.push(c);
        }
    }
    let mut found: Vec<Subgroup> = vec![Subgroup::trivial(group)];
    let mut frontier = 0;
    while frontier < found.len() {
        let current = found[frontier].clone();
        frontier += 1;
        for c in &cyclic {
            if c.is_subgroup_of(&current) {
                continue;
            }
            let joined = current.add_subgroup(c)?;
            if !found.contains(&joined) {
                found.push(joined);
            }
        }
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.elements.cmp(&b.elements)));
    Ok(found)
}
