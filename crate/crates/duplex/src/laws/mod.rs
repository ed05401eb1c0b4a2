//! The law checker: every algebraic law the library claims, checked
//! exhaustively over a corpus of finite boundaries.
//!
//! Laws are checked by *reification*: a typed combinator is run at the
//! value-tagged boundary against every tabulated request and response, the
//! resulting table is compared against an independently implemented table
//! route, and any disagreement is reported with the concrete request and
//! response that witness it. Passing is therefore a proof over the corpus,
//! not a sampled impression, and failing is always replayable.
//!
//! The operations under test are reached through [`mutations::Hooks`] so
//! the suites can also be pointed at deliberately broken variants; see
//! [`mutation_probes`].

pub mod corpus;
pub mod mutations;
pub mod report;

mod category;
mod choice;
mod effectful;
mod maybelaws;
mod runners;
mod seqlaws;
mod starlaws;

use std::any::Any;
use std::panic::{self, AssertUnwindSafe};
use std::rc::Rc;

use crate::container::{costate, Container, Costate, Morphism};
use crate::model::bridge::{reify, Conv, DynC};
use crate::model::{enumerate_morphisms, FiniteContainer, FiniteMorphism, Value};

pub use corpus::{c2, c3, choice_instance, default_corpus, trio, unit_c, LawConfig};
pub use mutations::{mutation_probes, Hooks};
pub use report::{all_passed, render_lines, write_json, Counterexample, LawReport, Status};

/// Check every law over `corpus` using the real operations.
pub fn check_all_laws(corpus: &[FiniteContainer], config: &LawConfig) -> Vec<LawReport> {
    check_all_laws_with(&Hooks::default(), corpus, config)
}

/// Check every law over `corpus`, reaching the operations under test
/// through `hooks`.
///
/// Reports come back in a fixed order and with deterministic contents:
/// the corpus tables, enumeration order, and case iteration are all
/// deterministic, so two runs of the same configuration are identical.
pub fn check_all_laws_with(
    hooks: &Hooks,
    corpus: &[FiniteContainer],
    config: &LawConfig,
) -> Vec<LawReport> {
    // Broken operations are allowed to panic mid-check (the typed layer
    // aborts on protocol violations); the run treats a panic as a failed
    // law. Silence the default hook while checking so expected panics do
    // not spray backtraces. The checker is single-threaded, and the guard
    // restores the previous hook even if a panic escapes.
    let _quiet = QuietPanics::install();
    let ctx = Ctx::new(hooks, corpus, config);
    let mut out = Vec::new();
    category::run(&ctx, &mut out);
    runners::run(&ctx, &mut out);
    maybelaws::run(&ctx, &mut out);
    choice::run(&ctx, &mut out);
    seqlaws::run(&ctx, &mut out);
    starlaws::run(&ctx, &mut out);
    effectful::run(&ctx, &mut out);
    out
}

struct QuietPanics(Option<Box<dyn Fn(&panic::PanicHookInfo<'_>) + Sync + Send + 'static>>);

impl QuietPanics {
    fn install() -> Self {
        let previous = panic::take_hook();
        panic::set_hook(Box::new(|_| {}));
        QuietPanics(Some(previous))
    }
}

impl Drop for QuietPanics {
    fn drop(&mut self) {
        if let Some(previous) = self.0.take() {
            panic::set_hook(previous);
        }
    }
}

/// Everything a suite needs: the corpus, the bounds, the operations under
/// test, and pre-enumerated transformer spaces between corpus boundaries.
pub(crate) struct Ctx<'a> {
    pub hooks: &'a Hooks,
    pub corpus: &'a [FiniteContainer],
    pub config: &'a LawConfig,
    homs: Vec<Vec<Option<Rc<Vec<FiniteMorphism>>>>>,
}

impl<'a> Ctx<'a> {
    fn new(hooks: &'a Hooks, corpus: &'a [FiniteContainer], config: &'a LawConfig) -> Self {
        let homs = corpus
            .iter()
            .map(|a| {
                corpus
                    .iter()
                    .map(|b| enumerate_morphisms(a, b, &config.caps).ok().map(Rc::new))
                    .collect()
            })
            .collect();
        Ctx { hooks, corpus, config, homs }
    }

    /// All transformers from corpus boundary `i` to corpus boundary `j`,
    /// or `None` when that space exceeds the enumeration caps (derived
    /// instances can be larger than the caps allow; the pointwise laws
    /// still cover them).
    pub fn hom(&self, i: usize, j: usize) -> Option<&[FiniteMorphism]> {
        self.homs[i][j].as_deref().map(Vec::as_slice)
    }
}

/// Result of one law on one instance: how many pointwise cases were
/// visited, and the first disagreement if any.
pub(crate) struct Outcome {
    pub cases: u64,
    pub failure: Option<Counterexample>,
}

impl Outcome {
    pub fn pass(cases: u64) -> Self {
        Outcome { cases, failure: None }
    }

    pub fn fail(cases: u64, cx: Counterexample) -> Self {
        Outcome { cases, failure: Some(cx) }
    }
}

/// Run one check, converting panics into failures, and push its report.
pub(crate) fn record(
    out: &mut Vec<LawReport>,
    law: &str,
    instance: String,
    check: impl FnOnce() -> Outcome,
) {
    let outcome = match panic::catch_unwind(AssertUnwindSafe(check)) {
        Ok(outcome) => outcome,
        Err(payload) => Outcome::fail(
            0,
            Counterexample::message(format!("panicked: {}", panic_text(payload.as_ref()))),
        ),
    };
    let (status, counterexample) = match outcome.failure {
        None => (Status::Pass, None),
        Some(cx) => (Status::Fail, Some(cx)),
    };
    out.push(LawReport {
        law: law.to_string(),
        instance,
        cases: outcome.cases,
        status,
        counterexample,
    });
}

fn panic_text(payload: &(dyn Any + Send)) -> String {
    if let Some(s) = payload.downcast_ref::<&str>() {
        (*s).to_string()
    } else if let Some(s) = payload.downcast_ref::<String>() {
        s.clone()
    } else {
        "opaque panic payload".to_string()
    }
}

/// Pointwise comparison of two transformer tables between the same
/// boundaries. Counts every compared point into `cases` and returns the
/// first disagreement.
pub(crate) fn diff_tables(
    got: &FiniteMorphism,
    want: &FiniteMorphism,
    cases: &mut u64,
) -> Option<Counterexample> {
    let dom = got.dom();
    let cod = got.cod();
    for x in 0..dom.request_count() {
        *cases += 1;
        let gi = got.forward_idx(x);
        let wi = want.forward_idx(x);
        if gi != wi {
            return Some(Counterexample {
                description: format!(
                    "forward translations disagree: {} vs {}",
                    cod.requests()[gi],
                    cod.requests()[wi]
                ),
                request: Some(dom.requests()[x].to_string()),
                response: None,
                morphisms: vec![got.describe(), want.describe()],
            });
        }
        for j in 0..cod.responses(gi).len() {
            *cases += 1;
            let gb = got.backward_idx(x, j);
            let wb = want.backward_idx(x, j);
            if gb != wb {
                return Some(Counterexample {
                    description: format!(
                        "backward translations disagree: {} vs {}",
                        dom.responses(x)[gb],
                        dom.responses(x)[wb]
                    ),
                    request: Some(dom.requests()[x].to_string()),
                    response: Some(cod.responses(gi)[j].to_string()),
                    morphisms: vec![got.describe(), want.describe()],
                });
            }
        }
    }
    None
}

/// Reify a typed transformer over finite boundaries and compare it against
/// an independently computed table.
pub(crate) fn check_agrees<A: Container, B: Container>(
    typed: &Morphism<A, B>,
    want: &FiniteMorphism,
    dom: &FiniteContainer,
    cod: &FiniteContainer,
    ca: &Conv<A>,
    cb: &Conv<B>,
    cases: &mut u64,
) -> Option<Counterexample> {
    match reify(typed, dom, cod, ca, cb) {
        Ok(got) => diff_tables(&got, want, cases),
        Err(e) => Some(Counterexample {
            description: format!("typed route left the tables: {e}"),
            request: None,
            response: None,
            morphisms: vec![want.describe()],
        }),
    }
}

/// A handler for a finite boundary, as a typed costate: answers request
/// `i` with its `handler[i]`-th tabulated response.
pub(crate) fn costate_of(c: &FiniteContainer, handler: &[usize]) -> Costate<DynC> {
    let c = c.clone();
    let handler = handler.to_vec();
    costate::<DynC>(move |x: Value| {
        let i = c
            .request_index(&x)
            .expect("handler fed a request outside its boundary");
        c.responses(i)[handler[i]].clone()
    })
}

pub(crate) fn inst1(c: &FiniteContainer) -> String {
    format!("c={}", c.name())
}

pub(crate) fn inst2(a: &FiniteContainer, b: &FiniteContainer) -> String {
    format!("dom={} cod={}", a.name(), b.name())
}

pub(crate) fn inst3(a: &FiniteContainer, b: &FiniteContainer, c: &FiniteContainer) -> String {
    format!("dom={} mid={} cod={}", a.name(), b.name(), c.name())
}
