//! The filesystem demo: a write session whose boundary — open, then any
//! number of writes, then close — is a composite container, so the type of
//! a session request makes out-of-order operations unrepresentable. The
//! handler for the whole session is assembled from one handler per piece
//! with the effectful sequencing combinators; failure anywhere
//! short-circuits the rest of the session.

use std::cell::RefCell;
use std::fmt;
use std::fs::{File, OpenOptions};
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::rc::Rc;

use duplex::effects::io::{FallibleIo, Io};
use duplex::{
    costate, exec, seq_m, star_m, state, Container, Costate, Lifted, Seq, SeqReq, Star, StarPath,
    StarShape, State,
};

/// An opened file, by index into the probe's handle table. Only a
/// session's own open can produce one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Handle(pub usize);

/// Request: open this path for appending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MkOpen(pub PathBuf);

/// Request: write this text as one line through an open handle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MkWrite(pub String, pub Handle);

/// Request: close an open handle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MkClose(pub Handle);

pub struct OpenC;

impl Container for OpenC {
    type Req = MkOpen;
    type Resp = Handle;
}

pub struct WriteC;

impl Container for WriteC {
    type Req = MkWrite;
    type Resp = ();
}

pub struct CloseC;

impl Container for CloseC {
    type Req = MkClose;
    type Resp = ();
}

/// What can go wrong with a file operation. Every effectful filesystem
/// answer is either a value or one of these, never both.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FsError {
    #[error("not found: {0}")]
    NotFound(String),
    #[error("permission denied: {0}")]
    Permission(String),
    #[error("{0}")]
    Other(String),
}

impl FsError {
    fn from_io(context: &str, e: &std::io::Error) -> FsError {
        match e.kind() {
            std::io::ErrorKind::NotFound => FsError::NotFound(context.to_string()),
            std::io::ErrorKind::PermissionDenied => FsError::Permission(context.to_string()),
            _ => FsError::Other(format!("{context}: {e}")),
        }
    }
}

/// Deferred, fallible filesystem effects.
pub type FsEffect = FallibleIo<FsError>;

/// The session boundary: one open, then zero or more writes, then one
/// close — in that order, by construction.
pub type SessionApi = Seq<Seq<OpenC, Star<WriteC>>, CloseC>;

/// The filesystem as three primitive operations, so the session runner
/// can be pointed at the real thing or at a scripted fake.
pub trait FsProbe {
    fn open(&self, path: &Path) -> Result<Handle, FsError>;
    fn write(&self, handle: &Handle, text: &str) -> Result<(), FsError>;
    fn close(&self, handle: &Handle) -> Result<(), FsError>;
}

/// The real filesystem. Opens append-mode (creating the file if needed)
/// and writes each text as one LF-terminated line.
#[derive(Default)]
pub struct RealFs {
    handles: RefCell<Vec<Option<File>>>,
}

impl RealFs {
    pub fn new() -> RealFs {
        RealFs::default()
    }
}

impl FsProbe for RealFs {
    fn open(&self, path: &Path) -> Result<Handle, FsError> {
        let file = OpenOptions::new()
            .append(true)
            .create(true)
            .open(path)
            .map_err(|e| FsError::from_io(&path.display().to_string(), &e))?;
        let mut handles = self.handles.borrow_mut();
        handles.push(Some(file));
        Ok(Handle(handles.len() - 1))
    }

    fn write(&self, handle: &Handle, text: &str) -> Result<(), FsError> {
        let mut handles = self.handles.borrow_mut();
        let file = handles
            .get_mut(handle.0)
            .and_then(Option::as_mut)
            .ok_or_else(|| FsError::Other(format!("stale handle {}", handle.0)))?;
        writeln!(file, "{text}").map_err(|e| FsError::from_io("write", &e))
    }

    fn close(&self, handle: &Handle) -> Result<(), FsError> {
        let taken = self.handles.borrow_mut().get_mut(handle.0).and_then(Option::take);
        match taken {
            Some(file) => {
                file.sync_all().ok();
                Ok(())
            }
            None => Err(FsError::Other(format!("stale handle {}", handle.0))),
        }
    }
}

/// A scripted filesystem: records every operation, keeps written lines in
/// memory, and can be told to refuse the open.
#[derive(Default)]
pub struct FakeFs {
    pub fail_open: bool,
    pub log: RefCell<Vec<String>>,
    pub lines: RefCell<Vec<String>>,
}

impl FakeFs {
    pub fn new() -> FakeFs {
        FakeFs::default()
    }

    pub fn failing_open() -> FakeFs {
        FakeFs {
            fail_open: true,
            ..FakeFs::default()
        }
    }
}

impl FsProbe for FakeFs {
    fn open(&self, path: &Path) -> Result<Handle, FsError> {
        self.log.borrow_mut().push(format!("open {}", path.display()));
        if self.fail_open {
            Err(FsError::Permission(path.display().to_string()))
        } else {
            Ok(Handle(0))
        }
    }

    fn write(&self, handle: &Handle, text: &str) -> Result<(), FsError> {
        self.log.borrow_mut().push(format!("write {} {text}", handle.0));
        self.lines.borrow_mut().push(text.to_string());
        Ok(())
    }

    fn close(&self, handle: &Handle) -> Result<(), FsError> {
        self.log.borrow_mut().push(format!("close {}", handle.0));
        Ok(())
    }
}

/// Which write plan a session follows. A plan is a function of the handle
/// the open will return, because write requests carry that handle.
pub type WritePlan = Rc<dyn Fn(&Handle) -> StarShape<WriteC>>;

pub fn write_none() -> WritePlan {
    Rc::new(|_| StarShape::Done)
}

pub fn write_once() -> WritePlan {
    Rc::new(|h: &Handle| {
        StarShape::More(
            MkWrite("hello".to_string(), h.clone()),
            Rc::new(|_| StarShape::Done),
        )
    })
}

pub fn write_twice() -> WritePlan {
    Rc::new(|h: &Handle| {
        let h2 = h.clone();
        StarShape::More(
            MkWrite("hello".to_string(), h.clone()),
            Rc::new(move |_| {
                StarShape::More(
                    MkWrite("world".to_string(), h2.clone()),
                    Rc::new(|_| StarShape::Done),
                )
            }),
        )
    })
}

/// Build a session request: open the path, thread the obtained handle
/// into the write plan, and finally close that same handle. The handle in
/// the later requests is exactly the one the open answered with — the
/// continuation form is what lets a request depend on an earlier response.
pub fn mk_session(path: &Path, writes: WritePlan) -> State<SessionApi> {
    let open_then_write = SeqReq::<OpenC, Star<WriteC>>::new(
        MkOpen(path.to_path_buf()),
        move |handle: &Handle| writes(handle),
    );
    let whole = SeqReq::<Seq<OpenC, Star<WriteC>>, CloseC>::new(
        open_then_write,
        |(handle, _writes_path): &(Handle, StarPath<()>)| MkClose(handle.clone()),
    );
    state::<SessionApi>(whole)
}

/// One handler for the whole session boundary, assembled from one handler
/// per primitive. The effect's sequencing is strict left-to-right: a
/// failed open means the writes and the close are never asked for.
pub fn session_costate(fs: Rc<dyn FsProbe>) -> Costate<Lifted<FsEffect, SessionApi>> {
    let open = {
        let fs = Rc::clone(&fs);
        costate::<Lifted<FsEffect, OpenC>>(move |MkOpen(path): MkOpen| {
            let fs = Rc::clone(&fs);
            Io::new(move || fs.open(&path))
        })
    };
    let write = {
        let fs = Rc::clone(&fs);
        costate::<Lifted<FsEffect, WriteC>>(move |MkWrite(text, handle): MkWrite| {
            let fs = Rc::clone(&fs);
            Io::new(move || fs.write(&handle, &text))
        })
    };
    let close = costate::<Lifted<FsEffect, CloseC>>(move |MkClose(handle): MkClose| {
        let fs = Rc::clone(&fs);
        Io::new(move || fs.close(&handle))
    });
    let open_then_writes =
        seq_m::<FsEffect, OpenC, Star<WriteC>>(&open, &star_m::<FsEffect, WriteC>(&write));
    seq_m::<FsEffect, Seq<OpenC, Star<WriteC>>, CloseC>(&open_then_writes, &close)
}

/// Run one session to completion against the given filesystem.
pub fn run_session(fs: Rc<dyn FsProbe>, path: &Path, writes: WritePlan) -> Result<(), FsError> {
    let session = mk_session(path, writes);
    let handler = session_costate(fs);
    let request = duplex::value(&session);
    exec(&handler, request).run().map(|_| ())
}

/// The three demo write plans by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SessionKind {
    None,
    Once,
    Twice,
}

impl SessionKind {
    pub fn plan(self) -> WritePlan {
        match self {
            SessionKind::None => write_none(),
            SessionKind::Once => write_once(),
            SessionKind::Twice => write_twice(),
        }
    }
}

impl fmt::Display for SessionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SessionKind::None => "none",
            SessionKind::Once => "once",
            SessionKind::Twice => "twice",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_fake(plan: WritePlan) -> FakeResult {
        let fs = Rc::new(FakeFs::new());
        let outcome = run_session(fs.clone(), Path::new("fake.txt"), plan);
        let log = fs.log.borrow().clone();
        let lines = fs.lines.borrow().clone();
        FakeResult { outcome, log, lines }
    }

    struct FakeResult {
        outcome: Result<(), FsError>,
        log: Vec<String>,
        lines: Vec<String>,
    }

    #[test]
    fn sessions_issue_open_writes_close_in_order() {
        let r = run_fake(write_twice());
        assert_eq!(r.outcome, Ok(()));
        assert_eq!(
            r.log,
            vec!["open fake.txt", "write 0 hello", "write 0 world", "close 0"]
        );
        assert_eq!(r.lines, vec!["hello", "world"]);
    }

    #[test]
    fn empty_plan_opens_and_closes_only() {
        let r = run_fake(write_none());
        assert_eq!(r.outcome, Ok(()));
        assert_eq!(r.log, vec!["open fake.txt", "close 0"]);
        assert!(r.lines.is_empty());
    }

    #[test]
    fn failed_open_short_circuits_the_whole_session() {
        let fs = Rc::new(FakeFs::failing_open());
        let outcome = run_session(fs.clone(), Path::new("locked.txt"), write_twice());
        assert!(matches!(outcome, Err(FsError::Permission(_))));
        assert_eq!(
            *fs.log.borrow(),
            vec!["open locked.txt"],
            "no write and no close may be issued after a failed open"
        );
    }

    #[test]
    fn real_sessions_append_golden_lines() {
        let dir = tempfile::tempdir().unwrap();
        for (kind, want) in [
            (SessionKind::None, ""),
            (SessionKind::Once, "hello\n"),
            (SessionKind::Twice, "hello\nworld\n"),
        ] {
            let path = dir.path().join(format!("{kind}.txt"));
            run_session(Rc::new(RealFs::new()), &path, kind.plan()).unwrap();
            assert_eq!(std::fs::read_to_string(&path).unwrap(), want, "{kind}");
        }
    }

    #[test]
    fn real_sessions_append_rather_than_truncate() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("log.txt");
        run_session(Rc::new(RealFs::new()), &path, write_once()).unwrap();
        run_session(Rc::new(RealFs::new()), &path, write_once()).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "hello\nhello\n");
    }

    #[test]
    fn open_failure_on_real_fs_reports_not_found() {
        let outcome = run_session(
            Rc::new(RealFs::new()),
            Path::new("/no/such/directory/demo.txt"),
            write_once(),
        );
        assert!(matches!(outcome, Err(FsError::NotFound(_))));
    }
}
