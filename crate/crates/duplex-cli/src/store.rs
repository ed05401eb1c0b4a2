//! The embedded relational store behind the to-do demo, split the same way
//! the demo's API boundary is: write statements ([`Cmd`]) answer with
//! nothing, read statements ([`Query`]) answer with a table of their
//! declared row type.
//!
//! [`Store`] is the real thing (SQLite, in a file or in memory);
//! [`ReferenceStore`] is the in-memory map the property tests replay
//! against, and the pure backing used to drive the demo pipeline without
//! touching storage at all.

use std::cell::RefCell;
use std::fmt;
use std::path::Path;

use rusqlite::Connection;

/// A write-only statement. Commands return no data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cmd {
    /// Create the schema if it does not exist yet. Issued automatically on
    /// open; running it again is harmless.
    CreateTable,
    InsertTodo(String),
    MarkDone(i64),
}

/// A read statement together with its result schema. The only query so far
/// returns [`TodoItem`] rows; the enum keeps the schema-indexed shape so
/// more queries can be added without changing the boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Query {
    SelectAllTodos,
}

/// One row of the to-do table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TodoItem {
    pub id: i64,
    pub text: String,
    pub done: bool,
}

/// Query results: rows in ascending-id (= insertion) order.
pub type Table = Vec<TodoItem>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StoreError {
    #[error("unknown id {0}")]
    UnknownId(i64),
    #[error("store is closed")]
    Closed,
    #[error("cannot open store: {0}")]
    Open(String),
    #[error("storage failure: {0}")]
    Storage(String),
}

impl From<rusqlite::Error> for StoreError {
    fn from(e: rusqlite::Error) -> Self {
        StoreError::Storage(e.to_string())
    }
}

const SCHEMA: &str = "CREATE TABLE IF NOT EXISTS todo (
    id INTEGER PRIMARY KEY AUTOINCREMENT,
    text TEXT NOT NULL,
    done INTEGER NOT NULL DEFAULT 0
)";

/// An opened to-do store. One handle, one logical driver at a time: the
/// connection lives behind a `RefCell`, matching the single-driver contract
/// of the costates that wrap it.
pub struct Store {
    conn: RefCell<Option<Connection>>,
}

impl Store {
    /// Open (creating if needed) a store in the given file.
    pub fn open_file(path: &Path) -> Result<Store, StoreError> {
        let conn = Connection::open(path)
            .map_err(|e| StoreError::Open(format!("{}: {e}", path.display())))?;
        Store::finish_open(conn)
    }

    /// Open a store that lives only in memory and leaves no file behind.
    pub fn open_memory() -> Result<Store, StoreError> {
        let conn =
            Connection::open_in_memory().map_err(|e| StoreError::Open(e.to_string()))?;
        Store::finish_open(conn)
    }

    fn finish_open(conn: Connection) -> Result<Store, StoreError> {
        let store = Store {
            conn: RefCell::new(Some(conn)),
        };
        store.run_cmd(&Cmd::CreateTable)?;
        Ok(store)
    }

    fn with_conn<T>(
        &self,
        f: impl FnOnce(&Connection) -> Result<T, StoreError>,
    ) -> Result<T, StoreError> {
        match &*self.conn.borrow() {
            Some(conn) => f(conn),
            None => Err(StoreError::Closed),
        }
    }

    pub fn run_cmd(&self, cmd: &Cmd) -> Result<(), StoreError> {
        self.with_conn(|conn| match cmd {
            Cmd::CreateTable => {
                conn.execute(SCHEMA, [])?;
                Ok(())
            }
            Cmd::InsertTodo(text) => {
                conn.execute("INSERT INTO todo (text, done) VALUES (?1, 0)", [text])?;
                Ok(())
            }
            Cmd::MarkDone(id) => {
                let changed =
                    conn.execute("UPDATE todo SET done = 1 WHERE id = ?1", [id])?;
                if changed == 0 {
                    Err(StoreError::UnknownId(*id))
                } else {
                    Ok(())
                }
            }
        })
    }

    pub fn run_query(&self, query: &Query) -> Result<Table, StoreError> {
        self.with_conn(|conn| match query {
            Query::SelectAllTodos => {
                let mut stmt =
                    conn.prepare("SELECT id, text, done FROM todo ORDER BY id ASC")?;
                let rows = stmt.query_map([], |row| {
                    Ok(TodoItem {
                        id: row.get(0)?,
                        text: row.get(1)?,
                        done: row.get::<_, i64>(2)? != 0,
                    })
                })?;
                let mut table = Table::new();
                for row in rows {
                    table.push(row?);
                }
                Ok(table)
            }
        })
    }

    /// Close the store. Closing an already-closed store succeeds and does
    /// nothing; commands and queries after close fail with
    /// [`StoreError::Closed`].
    pub fn close(&self) -> Result<(), StoreError> {
        match self.conn.borrow_mut().take() {
            None => Ok(()),
            Some(conn) => conn
                .close()
                .map_err(|(_, e)| StoreError::Storage(e.to_string())),
        }
    }
}

impl fmt::Debug for Store {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = self.conn.borrow().is_some();
        f.debug_struct("Store").field("open", &open).finish()
    }
}

/// The in-memory reference implementation: a growing row list plus the
/// next id. Behaviorally equivalent to [`Store`] over any interleaving of
/// commands and queries (the property tests replay both and compare), and
/// usable as a pure backing for the demo pipeline.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct ReferenceStore {
    next_id: i64,
    rows: Vec<TodoItem>,
}

impl ReferenceStore {
    pub fn new() -> ReferenceStore {
        ReferenceStore {
            next_id: 1,
            rows: Vec::new(),
        }
    }

    pub fn run_cmd(&mut self, cmd: &Cmd) -> Result<(), StoreError> {
        match cmd {
            Cmd::CreateTable => Ok(()),
            Cmd::InsertTodo(text) => {
                self.rows.push(TodoItem {
                    id: self.next_id,
                    text: text.clone(),
                    done: false,
                });
                self.next_id += 1;
                Ok(())
            }
            Cmd::MarkDone(id) => match self.rows.iter_mut().find(|r| r.id == *id) {
                Some(row) => {
                    row.done = true;
                    Ok(())
                }
                None => Err(StoreError::UnknownId(*id)),
            },
        }
    }

    pub fn run_query(&self, query: &Query) -> Table {
        match query {
            Query::SelectAllTodos => self.rows.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_then_mark_done_round_trips() {
        let store = Store::open_memory().unwrap();
        store.run_cmd(&Cmd::InsertTodo("buy milk".into())).unwrap();
        let rows = store.run_query(&Query::SelectAllTodos).unwrap();
        assert_eq!(
            rows,
            vec![TodoItem {
                id: 1,
                text: "buy milk".into(),
                done: false
            }]
        );
        store.run_cmd(&Cmd::MarkDone(1)).unwrap();
        let rows = store.run_query(&Query::SelectAllTodos).unwrap();
        assert!(rows[0].done);
    }

    #[test]
    fn mark_done_on_missing_row_reports_the_id() {
        let store = Store::open_memory().unwrap();
        assert_eq!(
            store.run_cmd(&Cmd::MarkDone(99)),
            Err(StoreError::UnknownId(99))
        );
    }

    #[test]
    fn empty_store_queries_empty() {
        let store = Store::open_memory().unwrap();
        assert_eq!(store.run_query(&Query::SelectAllTodos).unwrap(), vec![]);
    }

    #[test]
    fn double_close_is_idempotent_and_use_after_close_errors() {
        let store = Store::open_memory().unwrap();
        store.close().unwrap();
        store.close().unwrap();
        assert_eq!(
            store.run_cmd(&Cmd::InsertTodo("x".into())),
            Err(StoreError::Closed)
        );
        assert_eq!(
            store.run_query(&Query::SelectAllTodos),
            Err(StoreError::Closed)
        );
    }

    #[test]
    fn file_mode_persists_across_reopen() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("todo.db");
        {
            let store = Store::open_file(&path).unwrap();
            store.run_cmd(&Cmd::InsertTodo("persist me".into())).unwrap();
            store.run_cmd(&Cmd::MarkDone(1)).unwrap();
            store.close().unwrap();
        }
        let store = Store::open_file(&path).unwrap();
        let rows = store.run_query(&Query::SelectAllTodos).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].text, "persist me");
        assert!(rows[0].done);
    }

    #[test]
    fn unwritable_path_is_an_open_error() {
        let err = Store::open_file(Path::new("/definitely/not/a/dir/todo.db"))
            .expect_err("open must fail");
        assert!(matches!(err, StoreError::Open(_)));
    }
}
