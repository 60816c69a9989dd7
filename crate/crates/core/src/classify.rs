//! Structural classification of bimodal collections.
//!
//! A set is *full* when it fills its home coset `a_i + H_i`. The number of
//! non-full sets `r` splits bimodal collections into three cases:
//!
//! * `r >= 2`: the home cosets of the non-full sets form a star whose kernel
//!   `D` is a coset of `H_1 ∩ ... ∩ H_r`; after shifting `D` to a subgroup,
//!   `A_i = H_i \ D`, the full sets have `H_i <= D`, the sets inside
//!   `H = H_1 + ... + H_r` partition `H \ D`, and the rest tile whole cosets
//!   of `H`.
//! * `r = 1`: every other `H_i` lies in `H_1`, `A_1` is a union of cosets of
//!   `D = H_2 + ... + H_m`, and the remaining sets tile cosets of `H_1`.
//! * `r = 0`: the sets tile cosets of `H = H_1 + ... + H_m`.
//!
//! [`classify`] computes the report and re-verifies every one of these
//! statements. They are consequences of bimodality, so a
//! [`ClassifyError::TheoremViolation`] always means a bug.

use std::fmt;

use thiserror::Error;

use crate::bimodal::{home_coset_violation, is_bimodal_by_definition, SetCollection, Verdict, Witness};
use crate::group::{CosetDecomposition, Elem, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("classification refused: collection is not bimodal")]
    NotBimodal(Witness),
    #[error("structural check failed: {0}")]
    TheoremViolation(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Case {
    R0,
    R1,
    RGe2,
}

impl Case {
    pub fn from_r(r: usize) -> Case {
        match r {
            0 => Case::R0,
            1 => Case::R1,
            _ => Case::RGe2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Case::R0 => "r0",
            Case::R1 => "r1",
            Case::RGe2 => "r_ge2",
        }
    }

    pub fn parse(s: &str) -> Option<Case> {
        [Case::R0, Case::R1, Case::RGe2].into_iter().find(|c| c.name() == s)
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetInfo {
    pub size: usize,
    pub internal_group: Subgroup,
    /// `|A_i| = |H_i|`.
    pub full: bool,
}

/// The kernel in original coordinates together with the subgroup it is a
/// coset of. For `r = 1` the two coincide.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kernel {
    pub elements: Vec<Elem>,
    pub subgroup: Subgroup,
}

/// One coset of the tiling group and the sets lying inside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetBlock {
    /// Minimal element of the coset, original coordinates.
    pub representative: Elem,
    pub sets: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub case: Case,
    pub r: usize,
    /// Position `j` holds original set `reorder[j]`; non-full sets first,
    /// stable within each group.
    pub reorder: Vec<usize>,
    /// Indexed by original set label.
    pub per_set: Vec<SetInfo>,
    /// `D_A` for `r >= 2`, `D = H_2 + ... + H_m` for `r = 1`, absent for `r = 0`.
    pub kernel: Option<Kernel>,
    /// `H_1 + ... + H_r` for `r >= 2`, `H_1` for `r = 1`, `H_1 + ... + H_m` for `r = 0`.
    pub sum_group: Subgroup,
    /// `C - canonical_shift` is in canonical position (zero for `r = 0`).
    pub canonical_shift: Elem,
    /// Number of `g` with `C - g` in canonical position (zero for `r = 0`).
    pub canonical_shift_count: usize,
    /// `r >= 2`: sets partitioning `H \ D` after the shift. `r = 1`: the
    /// non-full set. Empty for `r = 0`.
    pub interior_sets: Vec<usize>,
    /// Cosets of `sum_group` tiled by the remaining sets.
    pub tiling: Vec<CosetBlock>,
}

impl ClassificationReport {
    pub fn non_full_sets(&self) -> &[usize] {
        &self.reorder[..self.r]
    }
}

fn violation(msg: impl Into<String>) -> ClassifyError {
    ClassifyError::TheoremViolation(msg.into())
}

struct Ctx<'a> {
    c: &'a SetCollection,
    groups: Vec<Subgroup>,
    /// Which set owns each element.
    owner: Vec<Option<usize>>,
}

impl Ctx<'_> {
    fn home_coset(&self, i: usize) -> Vec<Elem> {
        self.groups[i].coset(self.c.sets()[i][0])
    }

    fn in_support(&self, x: Elem) -> bool {
        self.owner[x.index()].is_some()
    }

    /// Splits the sets not listed in `skip` into blocks by coset of `h`,
    /// failing if some set straddles two cosets.
    fn blocks(&self, h: &Subgroup, skip: &[usize]) -> Result<Vec<CosetBlock>, ClassifyError> {
        let mut blocks: Vec<CosetBlock> = Vec::new();
        for (i, set) in self.c.sets().iter().enumerate() {
            if skip.contains(&i) {
                continue;
            }
            let rep = h.coset_min(set[0]);
            if set.iter().any(|&x| h.coset_min(x) != rep) {
                return Err(violation(format!("set {i} is not contained in a single coset of the tiling group")));
            }
            match blocks.iter_mut().find(|b| b.representative == rep) {
                Some(b) => b.sets.push(i),
                None => blocks.push(CosetBlock { representative: rep, sets: vec![i] }),
            }
        }
        blocks.sort_by_key(|b| b.representative);
        Ok(blocks)
    }
}

pub fn classify(c: &SetCollection) -> Result<ClassificationReport, ClassifyError> {
    if let Verdict::NotBimodal(w) = is_bimodal_by_definition(c) {
        return Err(ClassifyError::NotBimodal(w));
    }
    let group = c.group();
    let groups = c.internal_difference_groups();
    let mut owner = vec![None; group.order()];
    for (i, set) in c.sets().iter().enumerate() {
        for &x in set {
            owner[x.index()] = Some(i);
        }
    }
    let per_set: Vec<SetInfo> = c
        .sets()
        .iter()
        .zip(&groups)
        .map(|(s, h)| SetInfo { size: s.len(), internal_group: h.clone(), full: s.len() == h.len() })
        .collect();
    if let Some((i, info)) = per_set.iter().enumerate().find(|(_, p)| p.size > p.internal_group.len()) {
        return Err(violation(format!("|A_{i}| = {} exceeds |H_{i}|", info.size)));
    }
    if let Some((k, j, _)) = home_coset_violation(c) {
        return Err(violation(format!("set {k} meets the home coset of set {j}")));
    }
    let non_full: Vec<usize> = (0..c.len()).filter(|&i| !per_set[i].full).collect();
    let full: Vec<usize> = (0..c.len()).filter(|&i| per_set[i].full).collect();
    let r = non_full.len();
    let reorder: Vec<usize> = non_full.iter().chain(&full).copied().collect();

    let ctx = Ctx { c, groups, owner };
    let shape = match r {
        0 => classify_r0(&ctx)?,
        1 => classify_r1(&ctx, non_full[0])?,
        _ => classify_star(&ctx, &non_full, &full)?,
    };
    Ok(ClassificationReport {
        case: Case::from_r(r),
        r,
        reorder,
        per_set,
        kernel: shape.kernel,
        sum_group: shape.sum_group,
        canonical_shift: shape.shift,
        canonical_shift_count: shape.shift_count,
        interior_sets: shape.interior,
        tiling: shape.tiling,
    })
}

struct Shape {
    kernel: Option<Kernel>,
    sum_group: Subgroup,
    shift: Elem,
    shift_count: usize,
    interior: Vec<usize>,
    tiling: Vec<CosetBlock>,
}

fn sum_of(ctx: &Ctx<'_>, indices: &[usize]) -> Subgroup {
    let refs: Vec<&Subgroup> = indices.iter().map(|&i| &ctx.groups[i]).collect();
    if refs.is_empty() {
        return Subgroup::trivial(ctx.c.group());
    }
    Subgroup::sum(&refs).expect("internal groups share the ambient group")
}

fn classify_r0(ctx: &Ctx<'_>) -> Result<Shape, ClassifyError> {
    let all: Vec<usize> = (0..ctx.c.len()).collect();
    let h = sum_of(ctx, &all);
    let support = ctx.c.support();
    if !h.is_coset_union(&support) {
        return Err(violation("the support is not a union of cosets of H = H_1 + ... + H_m"));
    }
    let tiling = ctx.blocks(&h, &[])?;
    Ok(Shape { kernel: None, sum_group: h, shift: Elem::ZERO, shift_count: 0, interior: Vec::new(), tiling })
}

fn classify_r1(ctx: &Ctx<'_>, p: usize) -> Result<Shape, ClassifyError> {
    let c = ctx.c;
    let group = c.group();
    let h1 = &ctx.groups[p];
    let others: Vec<usize> = (0..c.len()).filter(|&i| i != p).collect();
    for &i in &others {
        if !ctx.groups[i].is_subgroup_of(h1) {
            return Err(violation(format!("H_{i} is not a subgroup of the non-full set's group H_{p}")));
        }
    }
    let d = sum_of(ctx, &others);
    let a1 = &c.sets()[p];
    if !d.is_coset_union(a1) {
        return Err(violation(format!("A_{p} is not a union of cosets of D")));
    }
    let home = ctx.home_coset(p);
    let gaps: Vec<Elem> = home.iter().copied().filter(|&x| !ctx.in_support(x)).collect();
    if gaps.is_empty() || gaps.len() + a1.len() != home.len() {
        return Err(violation(format!("A_{p} is not a proper subset of its home coset")));
    }
    let u = gaps[0];
    let shifted = group.translate(a1, group.neg(u));
    if !shifted.iter().all(|&x| h1.contains(x)) || d.elements().iter().any(|x| shifted.binary_search(x).is_ok()) {
        return Err(violation("shift does not reach canonical position"));
    }
    let shift_count = group
        .elements()
        .filter(|&g| {
            let moved = group.translate(a1, group.neg(g));
            moved.iter().all(|&x| h1.contains(x)) && d.elements().iter().all(|x| moved.binary_search(x).is_err())
        })
        .count();

    let b1 = c.complement(p).expect("index in range");
    if !h1.is_coset_union(&b1) {
        return Err(violation(format!("B_{p} is not a union of cosets of H_{p}")));
    }
    let tiling = ctx.blocks(h1, &[p])?;
    Ok(Shape {
        kernel: Some(Kernel { elements: d.elements().to_vec(), subgroup: d }),
        sum_group: h1.clone(),
        shift: u,
        shift_count,
        interior: vec![p],
        tiling,
    })
}

fn classify_star(ctx: &Ctx<'_>, non_full: &[usize], full: &[usize]) -> Result<Shape, ClassifyError> {
    let c = ctx.c;
    let group = c.group();
    let gaps = |i: usize| -> Vec<Elem> {
        let set = &c.sets()[i];
        ctx.home_coset(i).into_iter().filter(|x| set.binary_search(x).is_err()).collect()
    };

    let first = non_full[0];
    let kernel_set = gaps(first);
    if kernel_set.is_empty() {
        return Err(violation("kernel D_A is empty"));
    }
    for &i in &non_full[1..] {
        if gaps(i) != kernel_set {
            return Err(violation(format!(
                "(a_{i} + H_{i}) \\ A_{i} differs from (a_{first} + H_{first}) \\ A_{first}"
            )));
        }
    }
    for (x, &i) in non_full.iter().enumerate() {
        for &j in &non_full[x + 1..] {
            let (hi, hj) = (&ctx.groups[i], &ctx.groups[j]);
            if hi.is_subgroup_of(hj) || hj.is_subgroup_of(hi) {
                return Err(violation(format!("H_{i} and H_{j} are nested")));
            }
            let ci = ctx.home_coset(i);
            let meet: Vec<Elem> = ctx.home_coset(j).into_iter().filter(|x| ci.binary_search(x).is_ok()).collect();
            if meet != kernel_set {
                return Err(violation(format!("home cosets of sets {i} and {j} do not meet in D_A")));
            }
        }
    }
    let refs: Vec<&Subgroup> = non_full.iter().map(|&i| &ctx.groups[i]).collect();
    let core = Subgroup::intersect_all(&refs).expect("non-empty list");
    let d = kernel_set[0];
    if core.coset(d) != kernel_set {
        return Err(violation("D_A is not a coset of the intersection of the non-full groups"));
    }

    // Canonical position: subtract d.
    let minus_d = group.neg(d);
    for &i in non_full {
        let moved = group.translate(&c.sets()[i], minus_d);
        let expected: Vec<Elem> = ctx.groups[i].elements().iter().copied().filter(|&x| !core.contains(x)).collect();
        if moved != expected {
            return Err(violation(format!("A_{i} - d is not H_{i} \\ D_A")));
        }
    }
    for &i in full {
        if !ctx.groups[i].is_subgroup_of(&core) {
            return Err(violation(format!("full set {i} has H_{i} not contained in D_A")));
        }
    }
    let h = sum_of(ctx, non_full);
    for &x in h.elements() {
        if !core.contains(x) && !ctx.in_support(group.add(x, d)) {
            return Err(violation("H \\ D_A is not covered by the support"));
        }
    }
    let inside_h = |x: Elem| h.contains(group.sub(x, d));
    let mut interior = Vec::new();
    let mut outer = Vec::new();
    for (i, set) in c.sets().iter().enumerate() {
        match (set.iter().all(|&x| inside_h(x)), set.iter().any(|&x| inside_h(x))) {
            (true, _) => interior.push(i),
            (false, false) => outer.push(i),
            (false, true) => return Err(violation(format!("set {i} straddles H and its complement"))),
        }
    }
    let outer_support: Vec<Elem> = c.support().into_iter().filter(|&x| !inside_h(x)).collect();
    if let CosetDecomposition::Partial { .. } = h.coset_decompose(&outer_support).expect("valid elements") {
        return Err(violation("A \\ H is not a union of cosets of H"));
    }
    let tiling = ctx.blocks(&h, &interior)?;
    Ok(Shape {
        shift_count: kernel_set.len(),
        kernel: Some(Kernel { elements: kernel_set, subgroup: core }),
        sum_group: h,
        shift: d,
        interior,
        tiling,
    })
}

/// A collection moved into canonical position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Canonical {
    pub collection: SetCollection,
    /// The element subtracted from every set.
    pub shift: Elem,
    pub case: Case,
}

impl Canonical {
    /// `r = 0` collections have no canonical position and come back unchanged.
    pub fn was_needed(&self) -> bool {
        self.case != Case::R0
    }
}

/// Shifts `c` by the lexicographically minimal element of `D_A` (`r >= 2`)
/// or of `(a_1 + H_1) \ A_1` (`r = 1`).
pub fn canonicalize(c: &SetCollection) -> Result<Canonical, ClassifyError> {
    let report = classify(c)?;
    let shift = report.canonical_shift;
    let collection = if shift == Elem::ZERO { c.clone() } else { c.translated(c.group().neg(shift)) };
    Ok(Canonical { collection, shift, case: report.case })
}
