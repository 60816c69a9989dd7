use bimodal_core::group::all_subgroups;
use bimodal_core::{CosetDecomposition, Elem, GroupSpec, Subgroup};
use proptest::prelude::*;

fn group_strategy() -> impl Strategy<Value = GroupSpec> {
    prop::collection::vec(2u64..7, 1..4).prop_map(|orders| GroupSpec::new(&orders).unwrap())
}

fn group_and_gens() -> impl Strategy<Value = (GroupSpec, Vec<Elem>)> {
    group_strategy().prop_flat_map(|g| {
        let n = g.order();
        (Just(g), prop::collection::vec((0..n).prop_map(Elem::from_index), 0..4))
    })
}

proptest! {
    #[test]
    fn generated_subgroups_are_closed_and_divide_the_order((g, gens) in group_and_gens()) {
        let h = Subgroup::generate(&g, &gens).unwrap();
        prop_assert!(h.is_closed());
        prop_assert_eq!(g.order() % h.len(), 0);
        for &x in &gens {
            prop_assert!(h.contains(x));
        }
        let again = Subgroup::generate(&g, h.elements()).unwrap();
        prop_assert_eq!(&again, &h);
    }

    #[test]
    fn cosets_partition_the_group((g, gens) in group_and_gens()) {
        let h = Subgroup::generate(&g, &gens).unwrap();
        let mut seen = vec![0usize; g.order()];
        for x in g.elements() {
            if h.coset_min(x) == x {
                for y in h.coset(x) {
                    seen[y.index()] += 1;
                }
            }
        }
        prop_assert!(seen.iter().all(|&k| k == 1));
    }

    #[test]
    fn arithmetic_is_an_abelian_group((g, xs) in group_and_gens()) {
        for &a in &xs {
            prop_assert_eq!(g.add(a, g.neg(a)), g.zero());
            prop_assert_eq!(g.add(a, g.zero()), a);
            for &b in &xs {
                prop_assert_eq!(g.add(a, b), g.add(b, a));
                prop_assert_eq!(g.sub(g.add(a, b), b), a);
            }
        }
    }
}

/// Naive coset-union predicate: every element's full coset lies in `s`.
fn naive_union(h: &[Elem], g: &GroupSpec, s: &[Elem]) -> bool {
    s.iter().all(|&x| h.iter().all(|&y| s.contains(&g.add(x, y))))
}

#[test]
fn coset_decomposition_matches_naive_predicate_on_z6() {
    let g = GroupSpec::cyclic(6).unwrap();
    let subs = all_subgroups(&g, 64).unwrap();
    assert_eq!(subs.len(), 4);
    for mask in 0u32..64 {
        let s: Vec<Elem> = (0..6).filter(|i| mask >> i & 1 == 1).map(Elem::from_index).collect();
        for h in &subs {
            let expected = naive_union(h.elements(), &g, &s);
            let got = h.coset_decompose(&s).unwrap();
            assert_eq!(got.is_union(), expected, "mask {mask:06b}, |H| = {}", h.len());
            if let CosetDecomposition::Union(reps) = got {
                assert_eq!(reps.len() * h.len(), s.len());
            }
        }
    }
}

#[test]
fn z12_lattice_sum_and_intersection() {
    let g = GroupSpec::cyclic(12).unwrap();
    let subs = all_subgroups(&g, 64).unwrap();
    let orders: Vec<usize> = subs.iter().map(Subgroup::len).collect();
    assert_eq!(orders, vec![1, 2, 3, 4, 6, 12]);
    for a in &subs {
        for b in &subs {
            let s = Subgroup::sum(&[a, b]).unwrap();
            let i = a.intersect(b).unwrap();
            assert_eq!(s, Subgroup::sum(&[b, a]).unwrap());
            assert_eq!(s.len() * i.len(), a.len() * b.len());
            for c in &subs {
                assert_eq!(
                    Subgroup::sum(&[&s, c]).unwrap(),
                    Subgroup::sum(&[a, &Subgroup::sum(&[b, c]).unwrap()]).unwrap()
                );
            }
        }
    }
}

#[test]
fn subgroup_counts_of_small_groups() {
    for (orders, expected) in [(&[2u64, 2][..], 5), (&[2, 4], 8), (&[3, 3], 6), (&[2, 2, 2], 16), (&[36], 9)] {
        let g = GroupSpec::new(orders).unwrap();
        assert_eq!(all_subgroups(&g, 1024).unwrap().len(), expected, "{g}");
    }
}
