//! The real store against the in-memory reference: any interleaving of
//! commands and queries must be observationally identical, errors
//! included.

use proptest::prelude::*;

use duplex_cli::store::{Cmd, Query, ReferenceStore, Store};

#[derive(Debug, Clone)]
enum Op {
    Insert(String),
    MarkDone(i64),
    Read,
}

fn op() -> impl Strategy<Value = Op> {
    prop_oneof![
        "[a-c]{1,6}".prop_map(Op::Insert),
        (0i64..25).prop_map(Op::MarkDone),
        Just(Op::Read),
    ]
}

fn ops() -> impl Strategy<Value = Vec<Op>> {
    prop::collection::vec(op(), 0..=20)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sqlite_matches_the_reference_model(ops in ops()) {
        let store = Store::open_memory().unwrap();
        let mut reference = ReferenceStore::new();
        for op in &ops {
            match op {
                Op::Insert(text) => {
                    let cmd = Cmd::InsertTodo(text.clone());
                    prop_assert_eq!(store.run_cmd(&cmd), reference.run_cmd(&cmd));
                }
                Op::MarkDone(id) => {
                    let cmd = Cmd::MarkDone(*id);
                    prop_assert_eq!(store.run_cmd(&cmd), reference.run_cmd(&cmd));
                }
                Op::Read => {
                    let got = store.run_query(&Query::SelectAllTodos).unwrap();
                    prop_assert_eq!(got, reference.run_query(&Query::SelectAllTodos));
                }
            }
        }
        let got = store.run_query(&Query::SelectAllTodos).unwrap();
        prop_assert_eq!(got, reference.run_query(&Query::SelectAllTodos));
    }

    #[test]
    fn ids_ascend_and_are_never_reused(ops in ops()) {
        let store = Store::open_memory().unwrap();
        let mut inserted = 0i64;
        for op in &ops {
            match op {
                Op::Insert(text) => {
                    store.run_cmd(&Cmd::InsertTodo(text.clone())).unwrap();
                    inserted += 1;
                }
                Op::MarkDone(id) => {
                    let _ = store.run_cmd(&Cmd::MarkDone(*id));
                }
                Op::Read => {}
            }
        }
        let rows = store.run_query(&Query::SelectAllTodos).unwrap();
        let ids: Vec<i64> = rows.iter().map(|r| r.id).collect();
        let want: Vec<i64> = (1..=inserted).collect();
        prop_assert_eq!(ids, want, "ids must be 1..=n in insertion order");
        prop_assert!(rows.iter().all(|r| r.id > 0));
    }

    #[test]
    fn queries_never_modify_observable_state(ops in ops()) {
        let store = Store::open_memory().unwrap();
        for op in &ops {
            match op {
                Op::Insert(text) => {
                    store.run_cmd(&Cmd::InsertTodo(text.clone())).unwrap();
                }
                Op::MarkDone(id) => {
                    let _ = store.run_cmd(&Cmd::MarkDone(*id));
                }
                Op::Read => {
                    let first = store.run_query(&Query::SelectAllTodos).unwrap();
                    let second = store.run_query(&Query::SelectAllTodos).unwrap();
                    prop_assert_eq!(first, second);
                }
            }
        }
    }
}
