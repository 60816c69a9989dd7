use bimodal_core::io::{emit_collection, parse_collection, parse_scope};
use bimodal_core::{Elem, GroupSpec, IoError, SetCollection, SupportMode};
use proptest::prelude::*;

fn collection_strategy() -> impl Strategy<Value = SetCollection> {
    prop::collection::vec(2u64..6, 1..4)
        .prop_flat_map(|orders| {
            let g = GroupSpec::new(&orders).unwrap();
            let n = g.order();
            (Just(g), prop::collection::vec(0usize..4, n))
        })
        .prop_filter_map("needs a non-empty set", |(g, labels)| {
            let sets: Vec<Vec<Elem>> = (1..4)
                .map(|p| labels.iter().enumerate().filter(|(_, &l)| l == p).map(|(i, _)| Elem::from_index(i)).collect())
                .filter(|s: &Vec<Elem>| !s.is_empty())
                .collect();
            SetCollection::new(g, sets).ok()
        })
}

proptest! {
    #[test]
    fn parse_inverts_emit(c in collection_strategy()) {
        let text = emit_collection(&c);
        let back = parse_collection(&text).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(emit_collection(&back), text);
    }
}

#[test]
fn rank_one_accepts_scalars_and_singleton_tuples() {
    let a = parse_collection(r#"{"group":{"cyclic_orders":[10]},"sets":[[1,6],[[3],8]]}"#).unwrap();
    assert_eq!(emit_collection(&a), "{\"group\":{\"cyclic_orders\":[10]},\"sets\":[[1,6],[3,8]]}\n");
}

#[test]
fn malformed_inputs_are_rejected() {
    let cases = [
        r#"{"group":{"cyclic_orders":[10]},"sets":[[1,6],[6]]}"#,
        r#"{"group":{"cyclic_orders":[3,3]},"sets":[[[1,1,1]]]}"#,
        r#"{"group":{"cyclic_orders":[5]},"sets":[]}"#,
        r#"{"group":{"cyclic_orders":[5]},"sets":[[]]}"#,
        r#"{"group":{"cyclic_orders":[0]},"sets":[[0]]}"#,
        r#"{"group":{"cyclic_orders":[5]}"#,
    ];
    for text in cases {
        assert!(parse_collection(text).is_err(), "{text}");
    }
    assert!(matches!(parse_collection("{"), Err(IoError::Json(_))));
}

#[test]
fn scope_documents() {
    let s = parse_scope(r#"{"group":{"cyclic_orders":[6]},"support":"all","max_support":4,"dedupe":"shift"}"#).unwrap();
    assert_eq!(s.support, SupportMode::AllUpTo(4));
    let s = parse_scope(r#"{"group":{"cyclic_orders":[6]},"support":[0,1,3]}"#).unwrap();
    assert!(matches!(s.support, SupportMode::Fixed(ref v) if v.len() == 3));
}
