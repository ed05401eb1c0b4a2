//! End-to-end transcripts through the composed line pipeline, against both
//! the real store and the pure reference backing.

use std::cell::RefCell;
use std::rc::Rc;

use duplex::{Costate, Lifted};
use duplex_cli::store::{Query, ReferenceStore, Store};
use duplex_cli::todo::{
    app_pipeline, exec_cmd, exec_query, pure_cmd, pure_query, repl, AppEffect, Cli,
};

const SCRIPT: &str = "create buy milk\nlist\ndone 1\nlist\nquit\n";
const GOLDEN: &str = "ok\n[ ] 1 buy milk\nok\n[x] 1 buy milk\n";

fn transcript(pipeline: &Costate<Lifted<AppEffect, Cli>>, script: &str) -> String {
    let mut out = Vec::new();
    repl(pipeline, script.as_bytes(), &mut out).unwrap();
    String::from_utf8(out).unwrap()
}

fn real_pipeline() -> (Rc<Store>, Costate<Lifted<AppEffect, Cli>>) {
    let store = Rc::new(Store::open_memory().unwrap());
    let pipeline = app_pipeline(&exec_cmd(store.clone()), &exec_query(store.clone()));
    (store, pipeline)
}

fn pure_pipeline() -> (Rc<RefCell<ReferenceStore>>, Costate<Lifted<AppEffect, Cli>>) {
    let reference = Rc::new(RefCell::new(ReferenceStore::new()));
    let pipeline = app_pipeline(&pure_cmd(reference.clone()), &pure_query(reference.clone()));
    (reference, pipeline)
}

#[test]
fn golden_transcript_against_the_real_store() {
    let (_store, pipeline) = real_pipeline();
    assert_eq!(transcript(&pipeline, SCRIPT), GOLDEN);
}

#[test]
fn golden_transcript_against_the_pure_backing() {
    let (_reference, pipeline) = pure_pipeline();
    assert_eq!(transcript(&pipeline, SCRIPT), GOLDEN);
}

#[test]
fn real_and_pure_transcripts_agree_on_a_longer_session() {
    let script = "create buy milk\ncreate walk dog\nlist\ndone 2\nlist\ncreate read\nlist\nquit\n";
    let (_store, real) = real_pipeline();
    let (_reference, pure) = pure_pipeline();
    let from_real = transcript(&real, script);
    assert_eq!(from_real, transcript(&pure, script));
    assert_eq!(
        from_real,
        "ok\nok\n[ ] 1 buy milk\n[ ] 2 walk dog\nok\n[ ] 1 buy milk\n[x] 2 walk dog\nok\n[ ] 1 buy milk\n[x] 2 walk dog\n[ ] 3 read\n"
    );
}

#[test]
fn unrecognized_lines_answer_the_error_line_and_bypass_the_store() {
    let (store, pipeline) = real_pipeline();
    assert_eq!(
        transcript(&pipeline, "frobnicate\nquit\n"),
        "error: unrecognized command\n"
    );
    assert_eq!(
        store.run_query(&Query::SelectAllTodos).unwrap(),
        vec![],
        "an unparsed line must not touch the store"
    );
}

#[test]
fn store_errors_render_as_error_lines_and_the_loop_continues() {
    let (_store, pipeline) = real_pipeline();
    assert_eq!(
        transcript(&pipeline, "done 99\ncreate x\nlist\nquit\n"),
        "error: unknown id 99\nok\n[ ] 1 x\n"
    );
}

#[test]
fn empty_input_exits_cleanly_with_no_output() {
    let (_store, pipeline) = real_pipeline();
    assert_eq!(transcript(&pipeline, ""), "");
}

#[test]
fn quit_is_consumed_by_the_loop_not_the_pipeline() {
    let (store, pipeline) = real_pipeline();
    assert_eq!(transcript(&pipeline, "quit\ncreate x\n"), "");
    assert_eq!(
        store.run_query(&Query::SelectAllTodos).unwrap(),
        vec![],
        "nothing after quit may reach the store"
    );
}

#[test]
fn listing_an_empty_store_answers_an_empty_line() {
    let (_store, pipeline) = real_pipeline();
    assert_eq!(transcript(&pipeline, "list\nquit\n"), "\n");
}

#[test]
fn operations_after_close_surface_as_error_lines() {
    let (store, pipeline) = real_pipeline();
    store.close().unwrap();
    assert_eq!(
        transcript(&pipeline, "list\nquit\n"),
        "error: store is closed\n"
    );
}
