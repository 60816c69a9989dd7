#![allow(dead_code)]

use bimodal_core::bimodal::internal_difference_group_of;
use bimodal_core::construct::{construct_cosets, construct_star, subdivide};
use bimodal_core::group::all_subgroups;
use bimodal_core::{Elem, GroupSpec, SetCollection, StarSpec, Subgroup};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn cyclic(n: u64, sets: &[&[i64]]) -> SetCollection {
    let g = GroupSpec::cyclic(n).unwrap();
    let sets = sets.iter().map(|s| s.iter().map(|&x| g.elem(&[x]).unwrap()).collect()).collect();
    SetCollection::new(g, sets).unwrap()
}

pub fn product(orders: &[u64], sets: &[&[&[i64]]]) -> SetCollection {
    let g = GroupSpec::new(orders).unwrap();
    let sets = sets.iter().map(|s| s.iter().map(|r| g.elem(r).unwrap()).collect()).collect();
    SetCollection::new(g, sets).unwrap()
}

pub fn subgroup(g: &GroupSpec, gens: &[&[i64]]) -> Subgroup {
    let gens: Vec<Elem> = gens.iter().map(|r| g.elem(r).unwrap()).collect();
    Subgroup::generate(g, &gens).unwrap()
}

/// Every cyclic-product presentation used by the randomized tests, all of
/// order at most 24.
pub fn small_groups() -> Vec<GroupSpec> {
    let mut out: Vec<GroupSpec> = (2..=24).map(|n| GroupSpec::cyclic(n).unwrap()).collect();
    for orders in [
        &[2, 2][..],
        &[2, 4],
        &[2, 2, 2],
        &[3, 3],
        &[2, 6],
        &[2, 8],
        &[4, 4],
        &[2, 2, 4],
        &[2, 10],
        &[2, 12],
        &[3, 6],
        &[2, 2, 2, 2],
        &[2, 2, 6],
    ] {
        out.push(GroupSpec::new(orders).unwrap());
    }
    out
}

/// Splits `coset` (a coset of `h`) into cosets of randomly chosen
/// subgroups, recursively.
fn random_coset_partition<R: Rng>(
    rng: &mut R,
    subgroups: &[Subgroup],
    h: &Subgroup,
    coset: Vec<Elem>,
    depth: usize,
) -> Vec<Vec<Elem>> {
    let smaller: Vec<&Subgroup> = subgroups.iter().filter(|k| k.is_subgroup_of(h) && k.len() < h.len()).collect();
    if depth == 0 || smaller.is_empty() || rng.gen_bool(0.3) {
        return vec![coset];
    }
    let k = *smaller.choose(rng).unwrap();
    let mut parts = Vec::new();
    let mut remaining = coset;
    while let Some(&x) = remaining.first() {
        let piece = k.coset(x);
        remaining.retain(|y| piece.binary_search(y).is_err());
        parts.extend(random_coset_partition(rng, subgroups, k, piece, depth - 1));
    }
    parts
}

/// A random star on two subgroups, with a random selection of outer
/// cosets, if the group has a suitable pair.
fn random_star<R: Rng>(rng: &mut R, g: &GroupSpec, subgroups: &[Subgroup]) -> Option<SetCollection> {
    let mut pairs: Vec<(&Subgroup, &Subgroup)> = Vec::new();
    for (i, a) in subgroups.iter().enumerate() {
        for b in &subgroups[i + 1..] {
            let d = a.intersect(b).unwrap();
            if a.len() / d.len() > 2 && b.len() / d.len() > 2 {
                pairs.push((a, b));
            }
        }
    }
    let &(a, b) = pairs.choose(rng)?;
    let h = Subgroup::sum(&[a, b]).unwrap();
    let outer: Vec<Elem> =
        g.elements().filter(|&x| h.coset_min(x) == x && !h.contains(x)).filter(|_| rng.gen_bool(0.5)).collect();
    let spec = StarSpec {
        group: g.clone(),
        subgroups: vec![a.clone(), b.clone()],
        kernel: a.intersect(b).unwrap(),
        interior_coset_reps: vec![],
        outer_coset_reps: outer,
    }
    .with_all_interior()
    .unwrap();
    Some(construct_star(&spec).unwrap())
}

/// A random bimodal base collection: either a star or a family of cosets.
fn random_base<R: Rng>(rng: &mut R, g: &GroupSpec, subgroups: &[Subgroup]) -> SetCollection {
    if rng.gen_bool(0.4) {
        if let Some(c) = random_star(rng, g, subgroups) {
            return c;
        }
    }
    let h = subgroups.choose(rng).unwrap();
    let mut reps: Vec<Elem> = g.elements().filter(|&x| h.coset_min(x) == x).collect();
    reps.shuffle(rng);
    let keep = rng.gen_range(1..=reps.len());
    reps.truncate(keep);
    construct_cosets(h, &reps).unwrap()
}

/// One random chain of valid subdivisions. Returns the final collection.
pub fn random_subdivision<R: Rng>(rng: &mut R, groups: &[(GroupSpec, Vec<Subgroup>)]) -> SetCollection {
    let (g, subgroups) = groups.choose(rng).unwrap();
    let mut c = random_base(rng, g, subgroups);
    let steps = rng.gen_range(1..=3);
    for _ in 0..steps {
        let full: Vec<usize> = (0..c.len())
            .filter(|&i| internal_difference_group_of(g, &c.sets()[i]).len() == c.sets()[i].len())
            .collect();
        let Some(&i) = full.choose(rng) else { break };
        let h = internal_difference_group_of(g, &c.sets()[i]);
        let mut parts = random_coset_partition(rng, subgroups, &h, c.sets()[i].clone(), 3);
        parts.shuffle(rng);
        c = subdivide(&c, i, &parts).expect("random subdivision satisfies the hypotheses");
    }
    c
}

pub fn groups_with_subgroups() -> Vec<(GroupSpec, Vec<Subgroup>)> {
    small_groups()
        .into_iter()
        .map(|g| {
            let subs = all_subgroups(&g, 1024).unwrap();
            (g, subs)
        })
        .collect()
}

/// Census of bimodal partitions of subsets of Z_n with at most `max_support`
/// elements, computed from raw residues without the library. Returns the
/// total and the counts with `r = 0`, `r = 1` and `r >= 2`.
pub fn naive_cyclic_census(n: usize, max_support: usize) -> (usize, [usize; 3]) {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    fn partitions(items: &[usize], blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        let Some((&first, rest)) = items.split_first() else {
            out.push(blocks.clone());
            return;
        };
        for i in 0..blocks.len() {
            blocks[i].push(first);
            partitions(rest, blocks, out);
            blocks[i].pop();
        }
        blocks.push(vec![first]);
        partitions(rest, blocks, out);
        blocks.pop();
    }
    let mut total = 0;
    let mut by_r = [0usize; 3];
    for mask in 1u32..(1 << n) {
        if mask.count_ones() as usize > max_support {
            continue;
        }
        let support: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let mut all = Vec::new();
        partitions(&support, &mut Vec::new(), &mut all);
        for sets in all {
            let bimodal = sets.iter().enumerate().all(|(i, a)| {
                let mut counts = vec![0usize; n];
                for (j, b) in sets.iter().enumerate() {
                    if i != j {
                        for &x in a {
                            for &y in b {
                                counts[(x + n - y) % n] += 1;
                            }
                        }
                    }
                }
                counts[1..].iter().all(|&c| c == 0 || c == a.len())
            });
            if !bimodal {
                continue;
            }
            total += 1;
            let r = sets
                .iter()
                .filter(|a| {
                    let g = a.iter().fold(n, |g, &x| gcd(g, (x + n - a[0]) % n));
                    a.len() < n / g
                })
                .count();
            by_r[r.min(2)] += 1;
        }
    }
    (total, by_r)
}
