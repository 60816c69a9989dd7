mod common;

use bimodal_core::construct::{admissible_tiling_subgroups, construct_r1, construct_star, DEFAULT_SUBGROUP_CAP};
use bimodal_core::group::all_subgroups;
use bimodal_core::{
    canonicalize, classify, cross_validate, is_bimodal_by_definition, is_bimodal_by_structure, Case, Elem,
    EnumerationScope, GroupSpec, RunOptions, SetCollection, StarSpec, Subgroup,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn classifier_holds_on_every_small_bimodal_collection() {
    for n in [6u64, 8, 12] {
        let g = GroupSpec::cyclic(n).unwrap();
        let res = cross_validate(&EnumerationScope::all_up_to(g, 5), RunOptions::default()).unwrap();
        assert!(res.passed(), "Z_{n}: {:?}", res.counterexample);
    }
}

#[test]
fn classification_is_shift_equivariant() {
    for ex in bimodal_core::golden::all() {
        let c = &ex.collection;
        let base = classify(c).unwrap();
        for g in c.group().elements() {
            let rep = classify(&c.translated(g)).unwrap();
            assert_eq!(rep.case, base.case);
            assert_eq!(rep.r, base.r);
            assert_eq!(rep.sum_group, base.sum_group);
            assert_eq!(rep.kernel.as_ref().map(|k| k.elements.len()), base.kernel.as_ref().map(|k| k.elements.len()));
        }
    }
}

#[test]
fn canonicalization_places_single_non_full_set_correctly() {
    let c = bimodal_core::golden::z36_r1().collection;
    for g in c.group().elements() {
        let shifted = c.translated(g);
        let canon = canonicalize(&shifted).unwrap();
        let rep = classify(&canon.collection).unwrap();
        assert_eq!(rep.case, Case::R1);
        let i = rep.non_full_sets()[0];
        let h1 = &rep.per_set[i].internal_group;
        let a1 = &canon.collection.sets()[i];
        assert!(a1.iter().all(|&x| h1.contains(x)));
        assert!(!a1.contains(&c.group().zero()));
        let d = &rep.kernel.as_ref().unwrap().subgroup;
        assert!(d.is_subgroup_of(h1));
        assert!(d.is_coset_union(a1));
    }
}

fn star_check(spec: &StarSpec) {
    let c = construct_star(spec).unwrap();
    assert!(is_bimodal_by_definition(&c).is_bimodal());
    assert!(is_bimodal_by_structure(&c).is_bimodal());
    let rep = classify(&c).unwrap();
    assert_eq!(rep.r, spec.subgroups.len());
    let kernel = rep.kernel.unwrap();
    assert_eq!(kernel.subgroup, spec.kernel);
    let refs: Vec<&Subgroup> = spec.subgroups.iter().collect();
    assert_eq!(rep.sum_group, Subgroup::sum(&refs).unwrap());
}

#[test]
fn stars_in_elementary_abelian_groups() {
    let g3 = GroupSpec::new(&[3, 3, 3]).unwrap();
    let h = |gens: &[&[i64]]| common::subgroup(&g3, gens);
    let spec = StarSpec {
        group: g3.clone(),
        subgroups: vec![h(&[&[1, 0, 0], &[0, 0, 1]]), h(&[&[0, 1, 0], &[0, 0, 1]]), h(&[&[1, 1, 0], &[0, 0, 1]])],
        kernel: h(&[&[0, 0, 1]]),
        interior_coset_reps: vec![],
        outer_coset_reps: vec![],
    }
    .with_all_interior()
    .unwrap();
    star_check(&spec);

    let g4 = GroupSpec::new(&[3, 3, 3, 3]).unwrap();
    let h = |gens: &[&[i64]]| common::subgroup(&g4, gens);
    let spec = StarSpec {
        group: g4.clone(),
        subgroups: vec![h(&[&[1, 0, 0, 0], &[0, 0, 1, 0]]), h(&[&[0, 1, 0, 0], &[0, 0, 1, 0]])],
        kernel: h(&[&[0, 0, 1, 0]]),
        interior_coset_reps: vec![],
        outer_coset_reps: vec![g4.elem(&[0, 0, 0, 1]).unwrap()],
    }
    .with_all_interior()
    .unwrap();
    star_check(&spec);
}

#[test]
fn every_z12_star_classifies_as_built() {
    let g = GroupSpec::cyclic(12).unwrap();
    let subs = all_subgroups(&g, 64).unwrap();
    let mut built = 0;
    for a in &subs {
        for b in &subs {
            if a.elements() >= b.elements() {
                continue;
            }
            let kernel = a.intersect(b).unwrap();
            if a.len() / kernel.len() <= 2 || b.len() / kernel.len() <= 2 {
                continue;
            }
            let spec = StarSpec {
                group: g.clone(),
                subgroups: vec![a.clone(), b.clone()],
                kernel,
                interior_coset_reps: vec![],
                outer_coset_reps: vec![],
            }
            .with_all_interior()
            .unwrap();
            star_check(&spec);
            built += 1;
        }
    }
    assert!(built >= 1);
}

/// Brute-force search over every proper subset of each subgroup of
/// Z_4 x Z_2 that generates it, with the rest of G tiled by singletons.
#[test]
fn single_non_full_constructions_in_z4xz2() {
    let g = GroupSpec::new(&[4, 2]).unwrap();
    let t = Subgroup::trivial(&g);
    let mut built = 0;
    for h1 in all_subgroups(&g, 64).unwrap() {
        let els = h1.elements().to_vec();
        for mask in 1u32..(1 << els.len()) - 1 {
            let a1: Vec<Elem> = (0..els.len()).filter(|i| mask >> i & 1 == 1).map(|i| els[i]).collect();
            let Ok(lone) = construct_r1(&g, &h1, &a1, &[], DEFAULT_SUBGROUP_CAP) else { continue };
            let rep = classify(&lone).unwrap();
            assert_eq!(rep.r, 1);
            let rest: Vec<(Subgroup, Elem)> =
                g.elements().filter(|&x| !h1.contains(x)).map(|x| (t.clone(), x)).collect();
            let c = construct_r1(&g, &h1, &a1, &rest, DEFAULT_SUBGROUP_CAP).unwrap();
            let rep = classify(&c).unwrap();
            assert_eq!(rep.case, Case::R1);
            let d = rep.kernel.unwrap().subgroup;
            assert!(d.is_subgroup_of(&h1));
            assert!(admissible_tiling_subgroups(&g, &a1, 64).unwrap().contains(&t));
            built += 1;
        }
    }
    assert!(built > 0);
}

#[test]
fn repeated_random_subdivisions_stay_bimodal() {
    let groups = common::groups_with_subgroups();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let c: SetCollection = common::random_subdivision(&mut rng, &groups);
        assert!(is_bimodal_by_definition(&c).is_bimodal(), "{c}");
        assert!(is_bimodal_by_structure(&c).is_bimodal(), "{c}");
        classify(&c).unwrap();
    }
}
