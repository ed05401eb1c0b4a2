use std::io;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::rc::Rc;

use clap::{Parser, Subcommand, ValueEnum};

use duplex::laws::{
    all_passed, check_all_laws, default_corpus, render_lines, write_json, LawConfig,
};
use duplex_cli::fs::{run_session, RealFs, SessionKind};
use duplex_cli::store::Store;
use duplex_cli::todo::{app_pipeline, exec_cmd, exec_query, repl};

/// Exit codes: 0 success, 1 law failure, 2 usage error (from argument
/// parsing), 3 effect or storage error.
#[derive(Parser)]
#[command(
    name = "duplex",
    version,
    about = "Composable API boundaries: law checker and demo apps"
)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every algebraic law exhaustively over the finite corpus
    Laws {
        /// Session-tree depth for the iteration laws
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(0..=3))]
        depth: u8,
        /// Also write a structured JSON report to this path
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Start the to-do REPL on standard input/output
    Todo {
        /// Store file, created if missing (default: todo.db)
        #[arg(long, conflicts_with = "memory")]
        db: Option<PathBuf>,
        /// Keep the store in memory only; nothing touches disk
        #[arg(long)]
        memory: bool,
    },
    /// Run a filesystem write session against a file
    FsDemo {
        /// File the session appends to
        #[arg(long, default_value = "fs-demo.txt")]
        file: PathBuf,
        /// Write plan for the session
        #[arg(long, value_enum, default_value_t = SessionArg::Once)]
        session: SessionArg,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SessionArg {
    None,
    Once,
    Twice,
}

impl From<SessionArg> for SessionKind {
    fn from(arg: SessionArg) -> SessionKind {
        match arg {
            SessionArg::None => SessionKind::None,
            SessionArg::Once => SessionKind::Once,
            SessionArg::Twice => SessionKind::Twice,
        }
    }
}

fn main() -> ExitCode {
    match Args::parse().command {
        Command::Laws { depth, report } => laws(depth as usize, report.as_deref()),
        Command::Todo { db, memory } => todo(db, memory),
        Command::FsDemo { file, session } => fs_demo(&file, session.into()),
    }
}

fn laws(depth: usize, report: Option<&Path>) -> ExitCode {
    let config = LawConfig {
        star_depth: depth,
        ..LawConfig::default()
    };
    let reports = check_all_laws(&default_corpus(), &config);
    if let Err(e) = render_lines(&reports, &mut io::stdout().lock()) {
        eprintln!("error: cannot write results: {e}");
        return ExitCode::from(3);
    }
    if let Some(path) = report {
        if let Err(e) = write_json(&reports, path) {
            eprintln!("error: cannot write report {}: {e}", path.display());
            return ExitCode::from(3);
        }
    }
    if all_passed(&reports) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn todo(db: Option<PathBuf>, memory: bool) -> ExitCode {
    let opened = if memory {
        Store::open_memory()
    } else {
        let path = db.unwrap_or_else(|| PathBuf::from("todo.db"));
        Store::open_file(&path)
    };
    let store = match opened {
        Ok(store) => Rc::new(store),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    };
    let pipeline = app_pipeline(&exec_cmd(Rc::clone(&store)), &exec_query(Rc::clone(&store)));
    if let Err(e) = repl(&pipeline, io::stdin().lock(), io::stdout().lock()) {
        eprintln!("error: {e}");
        return ExitCode::from(3);
    }
    if let Err(e) = store.close() {
        eprintln!("error: {e}");
        return ExitCode::from(3);
    }
    ExitCode::SUCCESS
}

fn fs_demo(file: &Path, kind: SessionKind) -> ExitCode {
    match run_session(Rc::new(RealFs::new()), file, kind.plan()) {
        Ok(()) => {
            println!("session {kind} complete: {}", file.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
