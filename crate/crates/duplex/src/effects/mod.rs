//! Answering requests inside an effect.
//!
//! Lifting wraps a boundary so that responses arrive inside a functor `F`
//! while requests stay as they were — the asking side does not change, only
//! the answering side gains effects. The lifting construction is a comonad
//! on boundaries whenever `F` is a monad on types: [`counit`] forgets the
//! effect by answering purely, [`comult`] stacks two layers.
//!
//! The `*_m` builders assemble effectful handlers for composite boundaries
//! out of effectful handlers for their parts, threading the effect strictly
//! left to right.

pub mod finite;
pub mod io;

pub use finite::{IdentityEffect, OptionEffect, Trace, WriterEffect};
pub use io::{FallibleIo, Io, IoEffect};

use either::Either;
use std::marker::PhantomData;
use std::rc::Rc;

use crate::combinators::{MaybeAll, Seq, SeqReq, Star, StarPath, StarShape, Sum};
use crate::container::{
    costate, exec, protocol_violation, state, value, Container, Costate, Morphism, State, Step,
};

/// A functor on response types. `Of<T>` is "a `T`, delivered effectfully".
pub trait Effect: 'static {
    type Of<T: 'static>: 'static;

    fn map<T: 'static, U: 'static>(
        ft: Self::Of<T>,
        f: impl FnOnce(T) -> U + 'static,
    ) -> Self::Of<U>;
}

/// An effect that can also inject pure values and flatten nesting.
pub trait MonadEffect: Effect {
    fn pure<T: 'static>(t: T) -> Self::Of<T>;

    fn bind<T: 'static, U: 'static>(
        ft: Self::Of<T>,
        f: impl FnOnce(T) -> Self::Of<U> + 'static,
    ) -> Self::Of<U>;

    fn join<T: 'static>(fft: Self::Of<Self::Of<T>>) -> Self::Of<T> {
        Self::bind(fft, |ft| ft)
    }
}

/// The boundary `C` with its responses delivered inside `F`.
pub struct Lifted<F: Effect, C: Container>(PhantomData<(F, C)>);

impl<F: Effect, C: Container> Container for Lifted<F, C> {
    type Req = C::Req;
    type Resp = F::Of<C::Resp>;
}

/// Lift a transformer over an effect: requests translate as before, and the
/// backward translation is mapped under `F`.
pub fn lift_map<F: Effect, A: Container, B: Container>(
    m: &Morphism<A, B>,
) -> Morphism<Lifted<F, A>, Lifted<F, B>> {
    let m = m.clone();
    Morphism::new(move |req: A::Req| {
        let step = m.apply(req);
        let back = step.back;
        Step {
            request: step.request,
            back: Rc::new(move |fresp: F::Of<B::Resp>| {
                let back = Rc::clone(&back);
                F::map(fresp, move |r| back(r))
            }),
        }
    })
}

/// Forget the effect layer: requests pass through, and a pure answer is
/// injected into `F` on the way back.
pub fn counit<F: MonadEffect, C: Container>() -> Morphism<Lifted<F, C>, C> {
    Morphism::new(|req: C::Req| Step {
        request: req,
        back: Rc::new(|resp: C::Resp| F::pure(resp)),
    })
}

/// Duplicate the effect layer: requests pass through, and a doubly-wrapped
/// answer is flattened on the way back.
pub fn comult<F: MonadEffect, C: Container>() -> Morphism<Lifted<F, C>, Lifted<F, Lifted<F, C>>> {
    Morphism::new(|req: C::Req| Step {
        request: req,
        back: Rc::new(|resp: F::Of<F::Of<C::Resp>>| F::join(resp)),
    })
}

/// Push an effect layer inside a choice: the effect wraps whichever side
/// answered.
pub fn distrib_plus<F: Effect, A: Container, B: Container>(
) -> Morphism<Lifted<F, Sum<A, B>>, Sum<Lifted<F, A>, Lifted<F, B>>> {
    Morphism::new(|req: Either<A::Req, B::Req>| Step {
        request: req,
        back: Rc::new(
            |resp: Either<F::Of<A::Resp>, F::Of<B::Resp>>| match resp {
                Either::Left(fa) => F::map(fa, Either::Left),
                Either::Right(fb) => F::map(fb, Either::Right),
            },
        ),
    })
}

/// The other direction of [`distrib_plus`]: a request's tag already fixes
/// which side answers, so the tag inside the effect is redundant — strip it
/// with `map` and re-tag outside.
pub fn distrib_plus_inv<F: Effect, A: Container, B: Container>(
) -> Morphism<Sum<Lifted<F, A>, Lifted<F, B>>, Lifted<F, Sum<A, B>>> {
    Morphism::new(|req: Either<A::Req, B::Req>| match req {
        Either::Left(x) => Step {
            request: Either::Left(x),
            back: Rc::new(|resp: F::Of<Either<A::Resp, B::Resp>>| {
                Either::Left(F::map(resp, |e| match e {
                    Either::Left(r) => r,
                    Either::Right(_) => {
                        protocol_violation("distrib inverse: response crossed sides")
                    }
                }))
            }),
        },
        Either::Right(y) => Step {
            request: Either::Right(y),
            back: Rc::new(|resp: F::Of<Either<A::Resp, B::Resp>>| {
                Either::Right(F::map(resp, |e| match e {
                    Either::Right(r) => r,
                    Either::Left(_) => {
                        protocol_violation("distrib inverse: response crossed sides")
                    }
                }))
            }),
        },
    })
}

/// Push an effect layer inside an optional exchange. An absent exchange has
/// no effectful answer to wrap, so absence itself is injected purely — this
/// is why the effect must be a monad and not merely a functor.
pub fn distrib_maybe<F: MonadEffect, C: Container>(
) -> Morphism<Lifted<F, MaybeAll<C>>, MaybeAll<Lifted<F, C>>> {
    Morphism::new(|req: Option<C::Req>| Step {
        request: req,
        back: Rc::new(|resp: Option<F::Of<C::Resp>>| match resp {
            Some(fc) => F::map(fc, Some),
            None => F::pure(None),
        }),
    })
}

/// The other direction of [`distrib_maybe`]. At a present request the tag
/// inside the effect is redundant and is stripped with `map`; at an absent
/// request the effectful acknowledgement is discarded entirely. Because of
/// that discard this is a one-sided inverse: recombining after distributing
/// restores the original, but distributing after recombining loses whatever
/// effect decorated an absent exchange.
pub fn distrib_maybe_inv<F: Effect, C: Container>(
) -> Morphism<MaybeAll<Lifted<F, C>>, Lifted<F, MaybeAll<C>>> {
    Morphism::new(|req: Option<C::Req>| match req {
        Some(x) => Step {
            request: Some(x),
            back: Rc::new(|resp: F::Of<Option<C::Resp>>| {
                Some(F::map(resp, |o| match o {
                    Some(r) => r,
                    None => {
                        protocol_violation("distrib inverse: absent response while present")
                    }
                }))
            }),
        },
        None => Step {
            request: None,
            back: Rc::new(|_resp: F::Of<Option<C::Resp>>| None),
        },
    })
}

/// Run two effectful handlers in sequence: the first effect happens, its
/// answer chooses the second request, the second effect happens.
pub fn seq_m<F: MonadEffect, A: Container, B: Container>(
    first: &Costate<Lifted<F, A>>,
    second: &Costate<Lifted<F, B>>,
) -> Costate<Lifted<F, Seq<A, B>>>
where
    A::Req: Clone,
{
    let first = first.clone();
    let second = second.clone();
    costate::<Lifted<F, Seq<A, B>>>(move |req: SeqReq<A, B>| {
        let fa = exec(&first, req.first);
        let second = second.clone();
        let rest = Rc::clone(&req.rest);
        F::bind(fa, move |ra: A::Resp| {
            let fb = exec(&second, rest(&ra));
            F::map(fb, move |rb| (ra, rb))
        })
    })
}

/// Run one effectful handler along a whole shape, step by step, collecting
/// the path. Effects happen in traversal order; a failing step cuts the
/// traversal short in whatever way `F`'s `bind` does.
pub fn star_m<F: MonadEffect, C: Container>(
    handler: &Costate<Lifted<F, C>>,
) -> Costate<Lifted<F, Star<C>>>
where
    C::Req: Clone,
{
    let handler = handler.clone();
    costate::<Lifted<F, Star<C>>>(move |shape| run_shape::<F, C>(&handler, shape))
}

fn run_shape<F: MonadEffect, C: Container>(
    handler: &Costate<Lifted<F, C>>,
    shape: StarShape<C>,
) -> F::Of<StarPath<C::Resp>>
where
    C::Req: Clone,
{
    match shape {
        StarShape::Done => F::pure(StarPath::Done),
        StarShape::More(req, rest) => {
            let again = handler.clone();
            F::bind(exec(handler, req), move |resp: C::Resp| {
                let next = rest(&resp);
                F::map(run_shape::<F, C>(&again, next), move |tail| {
                    StarPath::step(resp, tail)
                })
            })
        }
    }
}

/// A held request works unchanged against the lifted boundary: lifting
/// leaves the asking side alone.
pub fn lift_state<F: Effect, C: Container>(st: &State<C>) -> State<Lifted<F, C>>
where
    C::Req: Clone,
{
    state::<Lifted<F, C>>(value(st))
}

#[cfg(test)]
mod tests {
    use super::finite::{OptionEffect, Trace, WriterEffect};
    use super::*;
    use crate::container::{identity, run};

    struct Nums;
    impl Container for Nums {
        type Req = i64;
        type Resp = i64;
    }

    fn traced(symbol: u8) -> Costate<Lifted<WriterEffect, Nums>> {
        costate::<Lifted<WriterEffect, Nums>>(move |req| (Trace::symbol(symbol), req * 2))
    }

    #[test]
    fn lift_map_maps_under_the_effect() {
        let m: Morphism<Nums, Nums> = Morphism::from_maps(|x| x + 1, |_x, r| r - 1);
        let lifted = lift_map::<WriterEffect, _, _>(&m);
        let step = lifted.apply(4);
        assert_eq!(step.request, 5);
        assert_eq!((step.back)((Trace::symbol(0), 10)), (Trace::symbol(0), 9));
    }

    #[test]
    fn counit_answers_purely() {
        let c = counit::<OptionEffect, Nums>();
        let step = c.apply(3);
        assert_eq!(step.request, 3);
        assert_eq!((step.back)(7), Some(7));
    }

    #[test]
    fn comult_flattens() {
        let c = comult::<OptionEffect, Nums>();
        let step = c.apply(3);
        assert_eq!((step.back)(Some(Some(7))), Some(7));
        assert_eq!((step.back)(Some(None)), None);
        assert_eq!((step.back)(None), None);
    }

    #[test]
    fn distrib_plus_round_trips() {
        use crate::combinators::Sum;
        let round = distrib_plus::<OptionEffect, Nums, Nums>()
            .then(&distrib_plus_inv::<OptionEffect, Nums, Nums>());
        let step = round.apply(Either::Left(1));
        assert_eq!(step.request, Either::Left(1));
        assert_eq!((step.back)(Some(Either::Left(9))), Some(Either::Left(9)));
        assert_eq!((step.back)(None), None);
        let other: Morphism<Sum<Lifted<OptionEffect, Nums>, Lifted<OptionEffect, Nums>>, _> =
            distrib_plus_inv::<OptionEffect, Nums, Nums>()
                .then(&distrib_plus::<OptionEffect, Nums, Nums>());
        let step = other.apply(Either::Right(2));
        assert_eq!((step.back)(Either::Right(Some(7))), Either::Right(Some(7)));
    }

    #[test]
    fn distrib_maybe_recombines_after_distributing() {
        // the one-sided round trip that holds for every effect
        let round = distrib_maybe_inv::<WriterEffect, Nums>()
            .then(&distrib_maybe::<WriterEffect, Nums>());
        let step = round.apply(Some(3));
        assert_eq!(step.request, Some(3));
        assert_eq!(
            (step.back)(Some((Trace::symbol(1), 9))),
            Some((Trace::symbol(1), 9))
        );
        let step = round.apply(None);
        assert_eq!((step.back)(None), None);
    }

    #[test]
    fn distrib_maybe_injects_absence() {
        let d = distrib_maybe::<OptionEffect, Nums>();
        let absent = d.apply(None);
        assert_eq!((absent.back)(None), Some(None));
        let present = d.apply(Some(1));
        assert_eq!((present.back)(Some(Some(9))), Some(Some(9)));
        assert_eq!((present.back)(Some(None)), None);
    }

    #[test]
    fn seq_m_runs_effects_left_to_right() {
        let combined = seq_m::<WriterEffect, Nums, Nums>(&traced(0), &traced(1));
        let req = SeqReq::<Nums, Nums>::new(3, |a| a + 1);
        let (trace, (ra, rb)) = exec(&combined, req);
        assert_eq!((ra, rb), (6, 14));
        assert_eq!(trace, Trace::symbol(0).append(&Trace::symbol(1)));
    }

    #[test]
    fn star_m_folds_a_shape() {
        let handler = traced(1);
        let star = star_m::<WriterEffect, Nums>(&handler);
        let shape = StarShape::More(
            2,
            Rc::new(|resp: &i64| {
                if *resp == 4 {
                    StarShape::More(5, Rc::new(|_: &i64| StarShape::Done))
                } else {
                    StarShape::Done
                }
            }),
        );
        let (trace, path) = exec(&star, shape);
        assert_eq!(path, StarPath::step(4, StarPath::step(10, StarPath::Done)));
        assert_eq!(trace, Trace::symbol(1).append(&Trace::symbol(1)));
    }

    #[test]
    fn star_m_option_short_circuits() {
        // fail on request 0, succeed otherwise
        let handler = costate::<Lifted<OptionEffect, Nums>>(|req| {
            if req == 0 {
                None
            } else {
                Some(req)
            }
        });
        let star = star_m::<OptionEffect, Nums>(&handler);
        let ok = StarShape::More(1, Rc::new(|_: &i64| StarShape::Done));
        assert_eq!(
            exec(&star, ok),
            Some(StarPath::step(1, StarPath::Done))
        );
        let bad = StarShape::More(
            1,
            Rc::new(|_: &i64| StarShape::More(0, Rc::new(|_: &i64| StarShape::Done))),
        );
        assert_eq!(exec(&star, bad), None);
    }

    #[test]
    fn lift_state_keeps_the_request() {
        let st = state::<Nums>(11);
        let lifted = lift_state::<WriterEffect, Nums>(&st);
        let handler = traced(0);
        let out = run(&lifted, &handler, &lift_map(&identity::<Nums>()));
        assert_eq!(out, (Trace::symbol(0), 22));
    }
}
