//! The to-do demo: a line-oriented front boundary, the to-do message
//! boundary behind it, and the command/query boundary of the store behind
//! that — glued together with the library's combinators into a single
//! effectful handler for lines.
//!
//! The pipeline is assembled, not hand-written: parse into an optional
//! message, distribute the effect over the option, translate messages to
//! store statements, fan out to the two store handlers, and collapse. A
//! line that parses to nothing bypasses the store entirely on the absent
//! branch.

use std::cell::RefCell;
use std::io::{self, BufRead, Write};
use std::rc::Rc;

use either::Either;

use duplex::effects::io::{FallibleIo, Io};
use duplex::{
    costate, counit, coproduct_map, diagonal, distrib_maybe, distrib_plus, exec, lift_map,
    maybe_all_map, maybe_u, protocol_violation, Container, Costate, Lifted, MaybeAll, Morphism,
    Step, Sum, Unit,
};

use crate::store::{Cmd, Query, ReferenceStore, Store, StoreError, Table};

/// The effect every store handler answers under: a deferred computation
/// that may fail with a store error.
pub type AppEffect = FallibleIo<StoreError>;

/// The front boundary: one line in, one rendering out.
pub struct Cli;

impl Container for Cli {
    type Req = String;
    type Resp = String;
}

/// The messages the to-do app understands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TodoCommand {
    Create(String),
    MarkComplete(i64),
    RetrieveAll,
}

/// Answers to [`TodoCommand`]s. `Ack` answers `Create` and `MarkComplete`;
/// `Rows` answers `RetrieveAll`. The pairing is a per-request contract the
/// transformers below enforce (crossing it is a protocol violation), not
/// something the enum itself can express.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TodoResponse {
    Ack,
    Rows(Table),
}

/// The to-do message boundary.
pub struct App;

impl Container for App {
    type Req = TodoCommand;
    type Resp = TodoResponse;
}

/// The store's write boundary: a command in, an acknowledgement out.
pub struct DbCmd;

impl Container for DbCmd {
    type Req = Cmd;
    type Resp = ();
}

/// The store's read boundary: a query in, a table of its schema out.
pub struct DbQuery;

impl Container for DbQuery {
    type Req = Query;
    type Resp = Table;
}

/// The line grammar: `create <text>` / `done <id>` / `list`,
/// case-sensitive, single-space separated. Anything else parses to
/// nothing. `quit` is not part of the grammar — the loop consumes it
/// before the pipeline ever sees it.
pub fn parse_command(line: &str) -> Option<TodoCommand> {
    if line == "list" {
        return Some(TodoCommand::RetrieveAll);
    }
    if let Some(text) = line.strip_prefix("create ") {
        let text = text.trim();
        if text.is_empty() {
            return None;
        }
        return Some(TodoCommand::Create(text.to_string()));
    }
    if let Some(number) = line.strip_prefix("done ") {
        let id: i64 = number.trim().parse().ok()?;
        if id <= 0 {
            return None;
        }
        return Some(TodoCommand::MarkComplete(id));
    }
    None
}

/// Render an answer for the line that asked: `ok` for acknowledgements,
/// one `[x]|[ ] <id> <text>` line per row for tables (an empty table
/// renders as an empty string).
pub fn render_response(resp: &TodoResponse) -> String {
    match resp {
        TodoResponse::Ack => "ok".to_string(),
        TodoResponse::Rows(rows) => {
            let lines: Vec<String> = rows
                .iter()
                .map(|row| {
                    format!("[{}] {} {}", if row.done { 'x' } else { ' ' }, row.id, row.text)
                })
                .collect();
            lines.join("\n")
        }
    }
}

/// Parse forward, print backward. Unparsed lines take the absent branch,
/// whose only possible answer renders as the error line.
pub fn parser() -> Morphism<Cli, MaybeAll<App>> {
    Morphism::new(|line: String| match parse_command(&line) {
        Some(cmd) => Step {
            request: Some(cmd),
            back: Rc::new(|resp: Option<TodoResponse>| match resp {
                Some(r) => render_response(&r),
                None => protocol_violation("parser: absent answer to a parsed command"),
            }),
        },
        None => Step {
            request: None,
            back: Rc::new(|resp: Option<TodoResponse>| match resp {
                None => "error: unrecognized command".to_string(),
                Some(_) => protocol_violation("parser: present answer to an unparsed line"),
            }),
        },
    })
}

/// Translate messages to store statements: writes go left, reads go
/// right, and each side's answer comes back as the matching response.
/// Pure — the translation itself never touches the store.
pub fn to_db() -> Morphism<App, Sum<DbCmd, DbQuery>> {
    Morphism::new(|cmd: TodoCommand| match cmd {
        TodoCommand::Create(text) => Step {
            request: Either::Left(Cmd::InsertTodo(text)),
            back: Rc::new(command_ack),
        },
        TodoCommand::MarkComplete(id) => Step {
            request: Either::Left(Cmd::MarkDone(id)),
            back: Rc::new(command_ack),
        },
        TodoCommand::RetrieveAll => Step {
            request: Either::Right(Query::SelectAllTodos),
            back: Rc::new(|resp: Either<(), Table>| match resp {
                Either::Right(table) => TodoResponse::Rows(table),
                Either::Left(()) => {
                    protocol_violation("to_db: a command acknowledgement answered a query")
                }
            }),
        },
    })
}

fn command_ack(resp: Either<(), Table>) -> TodoResponse {
    match resp {
        Either::Left(()) => TodoResponse::Ack,
        Either::Right(_) => protocol_violation("to_db: a table answered a command"),
    }
}

/// The store's write handler over the real store: each command becomes a
/// deferred, fallible execution.
pub fn exec_cmd(store: Rc<Store>) -> Costate<Lifted<AppEffect, DbCmd>> {
    costate::<Lifted<AppEffect, DbCmd>>(move |cmd: Cmd| {
        let store = Rc::clone(&store);
        Io::new(move || store.run_cmd(&cmd))
    })
}

/// The store's read handler over the real store.
pub fn exec_query(store: Rc<Store>) -> Costate<Lifted<AppEffect, DbQuery>> {
    costate::<Lifted<AppEffect, DbQuery>>(move |query: Query| {
        let store = Rc::clone(&store);
        Io::new(move || store.run_query(&query))
    })
}

/// A pure write handler: the reference store behind the forgetful effect
/// translation, so the same effectful pipeline runs with no storage and
/// no failure. A domain error a pure handler cannot express (marking an
/// id that does not exist) is absorbed as a no-op.
pub fn pure_cmd(reference: Rc<RefCell<ReferenceStore>>) -> Costate<Lifted<AppEffect, DbCmd>> {
    let plain = costate::<DbCmd>(move |cmd: Cmd| {
        let _ = reference.borrow_mut().run_cmd(&cmd);
    });
    Costate::from(counit::<AppEffect, DbCmd>().then(plain.morphism()))
}

/// A pure read handler over the reference store.
pub fn pure_query(reference: Rc<RefCell<ReferenceStore>>) -> Costate<Lifted<AppEffect, DbQuery>> {
    let plain = costate::<DbQuery>(move |query: Query| reference.borrow().run_query(&query));
    Costate::from(counit::<AppEffect, DbQuery>().then(plain.morphism()))
}

/// The whole demo as one handler for lines:
///
/// ```text
/// lift(parser) ; distribute over the option ;
///   on the present branch: lift(to_db) ; distribute over the choice ;
///     (write handler | read handler) ; collapse ;
/// collapse the option
/// ```
///
/// The two handlers are the only effectful pieces; everything else is a
/// pure translation.
pub fn app_pipeline(
    cmd_handler: &Costate<Lifted<AppEffect, DbCmd>>,
    query_handler: &Costate<Lifted<AppEffect, DbQuery>>,
) -> Costate<Lifted<AppEffect, Cli>> {
    let exec_db: Morphism<Lifted<AppEffect, Sum<DbCmd, DbQuery>>, Unit> =
        distrib_plus::<AppEffect, DbCmd, DbQuery>()
            .then(&coproduct_map(cmd_handler.morphism(), query_handler.morphism()))
            .then(&diagonal::<Unit>());
    let present_branch: Morphism<Lifted<AppEffect, App>, Unit> =
        lift_map::<AppEffect, App, Sum<DbCmd, DbQuery>>(&to_db()).then(&exec_db);
    let pipeline = lift_map::<AppEffect, Cli, MaybeAll<App>>(&parser())
        .then(&distrib_maybe::<AppEffect, App>())
        .then(&maybe_all_map(&present_branch))
        .then(&maybe_u());
    Costate::from(pipeline)
}

/// Feed one line through the pipeline and run the deferred answer.
pub fn answer_line(pipeline: &Costate<Lifted<AppEffect, Cli>>, line: String) -> String {
    match exec(pipeline, line).run() {
        Ok(text) => text,
        Err(e) => format!("error: {e}"),
    }
}

/// Read lines, answer each, stop at `quit` or end of input. Every line
/// that reaches the pipeline produces exactly one LF-terminated response
/// block (a table response spans one line per row).
pub fn repl(
    pipeline: &Costate<Lifted<AppEffect, Cli>>,
    input: impl BufRead,
    mut output: impl Write,
) -> io::Result<()> {
    for line in input.lines() {
        let line = line?;
        if line == "quit" {
            break;
        }
        writeln!(output, "{}", answer_line(pipeline, line))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_accepts_the_three_messages() {
        assert_eq!(parse_command("list"), Some(TodoCommand::RetrieveAll));
        assert_eq!(
            parse_command("create buy milk"),
            Some(TodoCommand::Create("buy milk".into()))
        );
        assert_eq!(parse_command("done 2"), Some(TodoCommand::MarkComplete(2)));
    }

    #[test]
    fn grammar_rejects_everything_else() {
        for line in [
            "frobnicate",
            "",
            "create",
            "create    ",
            "done",
            "done zero",
            "done 0",
            "done -3",
            "List",
            "quit",
        ] {
            assert_eq!(parse_command(line), None, "{line:?} must not parse");
        }
    }

    #[test]
    fn rendering_matches_the_fixed_format() {
        assert_eq!(render_response(&TodoResponse::Ack), "ok");
        let rows = vec![
            crate::store::TodoItem {
                id: 1,
                text: "buy milk".into(),
                done: false,
            },
            crate::store::TodoItem {
                id: 2,
                text: "walk dog".into(),
                done: true,
            },
        ];
        assert_eq!(
            render_response(&TodoResponse::Rows(rows)),
            "[ ] 1 buy milk\n[x] 2 walk dog"
        );
        assert_eq!(render_response(&TodoResponse::Rows(vec![])), "");
    }

    #[test]
    fn translation_keeps_sides_straight() {
        let m = to_db();
        let step = m.apply(TodoCommand::Create("x".into()));
        assert_eq!(step.request, Either::Left(Cmd::InsertTodo("x".into())));
        assert_eq!((step.back)(Either::Left(())), TodoResponse::Ack);

        let step = m.apply(TodoCommand::RetrieveAll);
        assert_eq!(step.request, Either::Right(Query::SelectAllTodos));
        assert_eq!(
            (step.back)(Either::Right(vec![])),
            TodoResponse::Rows(vec![])
        );
    }

    #[test]
    fn translation_rejects_crossed_answers() {
        let m = to_db();
        let step = m.apply(TodoCommand::Create("x".into()));
        let crossed = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| {
            (step.back)(Either::Right(vec![]))
        }));
        assert!(crossed.is_err(), "a table must never answer a command");

        let step = m.apply(TodoCommand::RetrieveAll);
        let crossed = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| {
            (step.back)(Either::Left(()))
        }));
        assert!(crossed.is_err(), "an acknowledgement must never answer a query");
    }
}
