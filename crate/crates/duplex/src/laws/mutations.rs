//! Swappable entry points for the operations under law, plus a set of
//! deliberately broken variants.
//!
//! The checker calls the operations it is testing through [`Hooks`] rather
//! than directly, so the same suites can be pointed at a seeded defect.
//! [`mutation_probes`] returns one hook set per defect; the sensitivity
//! test demands that every one of them fails at least one law. This guards
//! the checker itself: a suite that cannot see a planted bug in compose,
//! collapse, flatten, iterate, or sequencing would be vacuous.

use std::rc::Rc;

use crate::combinators::{
    diagonal, maybe_join, star_map, MaybeAll, Seq, SeqReq, Star, StarPath, StarShape, Sum,
};
use crate::container::{compose, costate, exec, protocol_violation, Costate, Morphism, Step};
use crate::effects::{seq_m, Lifted, WriterEffect};
use crate::model::bridge::DynC;
use either::Either;

type Dyn = Morphism<DynC, DynC>;
type WriterHandler = Costate<Lifted<WriterEffect, DynC>>;
type WriterSeqHandler = Costate<Lifted<WriterEffect, Seq<DynC, DynC>>>;

/// The operations the suites exercise, as first-class values over the
/// value-tagged boundary.
pub struct Hooks {
    /// Short name for the variant; the real operations are `"real"`.
    pub name: &'static str,
    pub compose_dyn: Rc<dyn Fn(&Dyn, &Dyn) -> Dyn>,
    pub diagonal_dyn: Rc<dyn Fn() -> Morphism<Sum<DynC, DynC>, DynC>>,
    pub maybe_join_dyn: Rc<dyn Fn() -> Morphism<MaybeAll<MaybeAll<DynC>>, MaybeAll<DynC>>>,
    pub star_map_dyn: Rc<dyn Fn(&Dyn) -> Morphism<Star<DynC>, Star<DynC>>>,
    pub seq_m_writer: Rc<dyn Fn(&WriterHandler, &WriterHandler) -> WriterSeqHandler>,
}

impl Clone for Hooks {
    fn clone(&self) -> Self {
        Hooks {
            name: self.name,
            compose_dyn: Rc::clone(&self.compose_dyn),
            diagonal_dyn: Rc::clone(&self.diagonal_dyn),
            maybe_join_dyn: Rc::clone(&self.maybe_join_dyn),
            star_map_dyn: Rc::clone(&self.star_map_dyn),
            seq_m_writer: Rc::clone(&self.seq_m_writer),
        }
    }
}

impl Default for Hooks {
    fn default() -> Self {
        Hooks {
            name: "real",
            compose_dyn: Rc::new(|f, g| compose(f, g)),
            diagonal_dyn: Rc::new(diagonal::<DynC>),
            maybe_join_dyn: Rc::new(maybe_join::<DynC>),
            star_map_dyn: Rc::new(|m| star_map(m)),
            seq_m_writer: Rc::new(|first, second| seq_m::<WriterEffect, DynC, DynC>(first, second)),
        }
    }
}

/// One hook set per seeded defect. Each differs from the real operations at
/// a single site.
pub fn mutation_probes() -> Vec<Hooks> {
    vec![
        Hooks {
            name: "compose-backward-swapped",
            compose_dyn: Rc::new(compose_backward_swapped),
            ..Hooks::default()
        },
        Hooks {
            name: "diagonal-side-forgotten",
            diagonal_dyn: Rc::new(diagonal_side_forgotten),
            ..Hooks::default()
        },
        Hooks {
            name: "join-collapse-swapped",
            maybe_join_dyn: Rc::new(join_collapse_swapped),
            ..Hooks::default()
        },
        Hooks {
            name: "star-map-truncated",
            star_map_dyn: Rc::new(star_map_truncated),
            ..Hooks::default()
        },
        Hooks {
            name: "seqm-log-reversed",
            seq_m_writer: Rc::new(seq_m_log_reversed),
            ..Hooks::default()
        },
    ]
}

/// Composition with the two backward translations applied in the wrong
/// order. Only expressible over a boundary where both translations share a
/// type, which is exactly why the checker must catch it semantically.
fn compose_backward_swapped(first: &Dyn, second: &Dyn) -> Dyn {
    let first = first.clone();
    let second = second.clone();
    Morphism::new(move |x| {
        let s1 = first.apply(x);
        let s2 = second.apply(s1.request);
        let b1 = s1.back;
        let b2 = s2.back;
        Step {
            request: s2.request,
            back: Rc::new(move |resp| b2(b1(resp))),
        }
    })
}

/// A collapse that forgets which side the request came from and always
/// re-tags the response as left.
fn diagonal_side_forgotten() -> Morphism<Sum<DynC, DynC>, DynC> {
    Morphism::new(|req| match req {
        Either::Left(x) => Step {
            request: x,
            back: Rc::new(Either::Left),
        },
        Either::Right(x) => Step {
            request: x,
            back: Rc::new(Either::Left),
        },
    })
}

/// A flatten whose backward translation confuses "inner absent" with
/// "outer absent": the two absent-requesting branches return each other's
/// answers.
fn join_collapse_swapped() -> Morphism<MaybeAll<MaybeAll<DynC>>, MaybeAll<DynC>> {
    Morphism::new(|req: Option<Option<<DynC as crate::container::Container>::Req>>| match req {
        Some(Some(x)) => Step {
            request: Some(x),
            back: Rc::new(|resp| match resp {
                Some(r) => Some(Some(r)),
                None => protocol_violation("maybe join: absent response to a present request"),
            }),
        },
        Some(None) => Step {
            request: None,
            back: Rc::new(|resp| match resp {
                None => None,
                Some(_) => protocol_violation("maybe join: present response to an absent request"),
            }),
        },
        None => Step {
            request: None,
            back: Rc::new(|resp| match resp {
                None => Some(None),
                Some(_) => protocol_violation("maybe join: present response to an absent request"),
            }),
        },
    })
}

/// An iteration lift that drops every continuation, translating each shape
/// as if it stopped after one exchange. Paths are still translated against
/// the full original shape.
fn star_map_truncated(m: &Dyn) -> Morphism<Star<DynC>, Star<DynC>> {
    let m = m.clone();
    Morphism::new(move |shape: StarShape<DynC>| {
        let translated = truncate_shape(&m, &shape);
        let m = m.clone();
        Step {
            request: translated,
            back: Rc::new(move |path| honest_path(&m, &shape, path)),
        }
    })
}

fn truncate_shape(m: &Dyn, shape: &StarShape<DynC>) -> StarShape<DynC> {
    match shape {
        StarShape::Done => StarShape::Done,
        StarShape::More(req, _rest) => {
            let step = m.apply(req.clone());
            StarShape::More(step.request, Rc::new(|_resp| StarShape::Done))
        }
    }
}

fn honest_path(
    m: &Dyn,
    shape: &StarShape<DynC>,
    path: StarPath<crate::model::Value>,
) -> StarPath<crate::model::Value> {
    match (shape, path) {
        (StarShape::Done, StarPath::Done) => StarPath::Done,
        (StarShape::More(req, rest), StarPath::Step(head, tail)) => {
            let step = m.apply(req.clone());
            let original = (step.back)(head);
            let next_shape = rest(&original);
            let translated_tail = honest_path(m, &next_shape, *tail);
            StarPath::step(original, translated_tail)
        }
        _ => protocol_violation("star map: path does not follow the shape"),
    }
}

/// Sequencing that logs the second exchange's effect before the first's.
/// Answers are unaffected; only the order of the write-ahead log flips.
fn seq_m_log_reversed(first: &WriterHandler, second: &WriterHandler) -> WriterSeqHandler {
    let first = first.clone();
    let second = second.clone();
    costate::<Lifted<WriterEffect, Seq<DynC, DynC>>>(move |req: SeqReq<DynC, DynC>| {
        let (t1, ra) = exec(&first, req.first);
        let (t2, rb) = exec(&second, (req.rest)(&ra));
        (t2.append(&t1), (ra, rb))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::effects::Trace;
    use crate::model::Value;

    #[test]
    fn probes_are_distinctly_named() {
        let probes = mutation_probes();
        assert_eq!(probes.len(), 5);
        let mut names: Vec<&str> = probes.iter().map(|p| p.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), 5);
    }

    #[test]
    fn reversed_log_still_answers_correctly() {
        let h1 = costate::<Lifted<WriterEffect, DynC>>(|req| (Trace::symbol(0), req));
        let h2 = costate::<Lifted<WriterEffect, DynC>>(|req| (Trace::symbol(1), req));
        let combined = seq_m_log_reversed(&h1, &h2);
        let req = SeqReq::<DynC, DynC>::new(Value::atom("a"), |r| r.clone());
        let (trace, (ra, rb)) = exec(&combined, req);
        assert_eq!(ra, Value::atom("a"));
        assert_eq!(rb, Value::atom("a"));
        // the defect: the log reads second-then-first
        assert_eq!(trace, Trace::symbol(1).append(&Trace::symbol(0)));
    }
}
