//! Inputs shared by the benchmarks.

use bimodal_core::construct::construct_star;
use bimodal_core::{golden, GroupSpec, SetCollection, StarSpec, Subgroup};

/// A two-subgroup star in Z_3^4 with every outer coset filled in.
pub fn z3_4_star() -> SetCollection {
    let g = GroupSpec::new(&[3, 3, 3, 3]).expect("group");
    let e = |r: &[i64]| g.elem(r).expect("element");
    let h = |gens: &[&[i64]]| Subgroup::generate(&g, &gens.iter().map(|r| e(r)).collect::<Vec<_>>()).expect("subgroup");
    let outer = [[0, 0, 0, 1], [0, 0, 0, 2]].iter().map(|r| e(r)).collect();
    let spec = StarSpec {
        group: g.clone(),
        subgroups: vec![h(&[&[1, 0, 0, 0], &[0, 0, 1, 0]]), h(&[&[0, 1, 0, 0], &[0, 0, 1, 0]])],
        kernel: h(&[&[0, 0, 1, 0]]),
        interior_coset_reps: vec![],
        outer_coset_reps: outer,
    }
    .with_all_interior()
    .expect("interior");
    construct_star(&spec).expect("star")
}

/// Named collections for the checker and classifier benchmarks.
pub fn collections() -> Vec<(&'static str, SetCollection)> {
    let mut out: Vec<(&'static str, SetCollection)> =
        golden::all().into_iter().map(|g| (g.name, g.collection)).collect();
    out.push(("z3_4_star", z3_4_star()));
    out
}
