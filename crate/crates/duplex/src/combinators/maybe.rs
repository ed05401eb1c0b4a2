//! Optional requests with optional answers, and the monad structure that
//! lets optional pipelines chain.
//!
//! `MaybeAll<C>` sends either nothing or a request of `C`; the answer is
//! `None` exactly when nothing was asked. "All" records the contract: a
//! present request is answered by a present response.

use either::Either;
use std::rc::Rc;

use crate::container::{protocol_violation, Container, Morphism, Step, Unit};
use crate::combinators::sum::{diagonal, Sum};

/// A boundary made optional: ask nothing and learn nothing, or ask a `C`
/// request and get its answer.
pub struct MaybeAll<C: Container>(std::marker::PhantomData<C>);

impl<C: Container> Container for MaybeAll<C> {
    type Req = Option<C::Req>;
    type Resp = Option<C::Resp>;
}

/// Lift a transformer to optional boundaries: present requests are
/// translated, absent ones stay absent.
pub fn maybe_all_map<A: Container, B: Container>(
    m: &Morphism<A, B>,
) -> Morphism<MaybeAll<A>, MaybeAll<B>> {
    let m = m.clone();
    Morphism::new(move |req| match req {
        Some(x) => {
            let step = m.apply(x);
            Step {
                request: Some(step.request),
                back: Rc::new(move |resp| match resp {
                    Some(r) => Some((step.back)(r)),
                    None => protocol_violation("maybe: absent response to a present request"),
                }),
            }
        }
        None => Step {
            request: None,
            back: Rc::new(|resp| match resp {
                None => None,
                Some(_) => protocol_violation("maybe: present response to an absent request"),
            }),
        },
    })
}

/// Wrap a boundary in one layer of presence.
pub fn maybe_unit<C: Container>() -> Morphism<C, MaybeAll<C>> {
    Morphism::new(|x| Step {
        request: Some(x),
        back: Rc::new(|resp| match resp {
            Some(r) => r,
            None => protocol_violation("maybe unit: absent response to a present request"),
        }),
    })
}

/// Flatten two layers of presence into one. Doubly-present requests pass
/// through; either layer being absent collapses to absent.
pub fn maybe_join<C: Container>() -> Morphism<MaybeAll<MaybeAll<C>>, MaybeAll<C>> {
    Morphism::new(|req: Option<Option<C::Req>>| match req {
        Some(Some(x)) => Step {
            request: Some(x),
            back: Rc::new(|resp: Option<C::Resp>| match resp {
                Some(r) => Some(Some(r)),
                None => protocol_violation("maybe join: absent response to a present request"),
            }),
        },
        Some(None) => Step {
            request: None,
            back: Rc::new(|resp: Option<C::Resp>| match resp {
                None => Some(None),
                Some(_) => protocol_violation("maybe join: present response to an absent request"),
            }),
        },
        None => Step {
            request: None,
            back: Rc::new(|resp: Option<C::Resp>| match resp {
                None => None,
                Some(_) => protocol_violation("maybe join: present response to an absent request"),
            }),
        },
    })
}

/// Chain two optional-producing transformers: lift the second over the
/// option introduced by the first, then flatten.
pub fn kleisli_compose<A: Container, B: Container, C: Container>(
    f: &Morphism<A, MaybeAll<B>>,
    g: &Morphism<B, MaybeAll<C>>,
) -> Morphism<A, MaybeAll<C>> {
    f.then(&maybe_all_map(g)).then(&maybe_join())
}

/// Read an optional request as a choice: nothing, or the request.
pub fn maybe_iso_to<C: Container>() -> Morphism<MaybeAll<C>, Sum<Unit, C>> {
    Morphism::new(|req| match req {
        None => Step {
            request: Either::Left(()),
            back: Rc::new(|resp| match resp {
                Either::Left(()) => None,
                Either::Right(_) => {
                    protocol_violation("maybe iso: response crossed to the present side")
                }
            }),
        },
        Some(x) => Step {
            request: Either::Right(x),
            back: Rc::new(|resp| match resp {
                Either::Right(r) => Some(r),
                Either::Left(()) => {
                    protocol_violation("maybe iso: response crossed to the absent side")
                }
            }),
        },
    })
}

/// The other direction of the same reading.
pub fn maybe_iso_from<C: Container>() -> Morphism<Sum<Unit, C>, MaybeAll<C>> {
    Morphism::new(|req: Either<(), C::Req>| match req {
        Either::Left(()) => Step {
            request: None,
            back: Rc::new(|resp| match resp {
                None => Either::Left(()),
                Some(_) => protocol_violation("maybe iso: present response to an absent request"),
            }),
        },
        Either::Right(x) => Step {
            request: Some(x),
            back: Rc::new(|resp| match resp {
                Some(r) => Either::Right(r),
                None => protocol_violation("maybe iso: absent response to a present request"),
            }),
        },
    })
}

/// Collapse `MaybeAll<Unit>` to the trivial boundary. Both requests and
/// both possible responses are uninformative, so nothing is lost: read the
/// option as a self-choice over `Unit`, then collapse the choice.
pub fn maybe_u() -> Morphism<MaybeAll<Unit>, Unit> {
    maybe_iso_to::<Unit>().then(&diagonal::<Unit>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::container::identity;

    struct Nums;
    impl Container for Nums {
        type Req = i64;
        type Resp = i64;
    }

    #[test]
    fn map_preserves_presence() {
        let m = maybe_all_map(&Morphism::<Nums, Nums>::from_maps(|x| x * 2, |_x, r| r + 1));
        let p = m.apply(Some(5));
        assert_eq!(p.request, Some(10));
        assert_eq!((p.back)(Some(7)), Some(8));
        let a = m.apply(None);
        assert_eq!(a.request, None);
        assert_eq!((a.back)(None), None);
    }

    #[test]
    fn unit_then_join_is_identity() {
        // one of the monad laws, spot-checked at a concrete boundary
        let unit_outer = maybe_unit::<MaybeAll<Nums>>();
        let m = unit_outer.then(&maybe_join::<Nums>());
        let step = m.apply(Some(4));
        assert_eq!(step.request, Some(4));
        assert_eq!((step.back)(Some(9)), Some(9));
        let step = m.apply(None);
        assert_eq!(step.request, None);
        assert_eq!((step.back)(None), None);
    }

    #[test]
    fn join_collapses_layers() {
        let j = maybe_join::<Nums>();
        assert_eq!(j.apply(Some(Some(1))).request, Some(1));
        assert_eq!(j.apply(Some(None)).request, None);
        assert_eq!(j.apply(None).request, None);
        // backward restores the layer that was collapsed
        assert_eq!((j.apply(Some(None)).back)(None), Some(None));
        assert_eq!((j.apply(None).back)(None), None);
    }

    #[test]
    fn kleisli_short_circuits() {
        // first arrow drops even numbers; second doubles
        let f: Morphism<Nums, MaybeAll<Nums>> = Morphism::new(|x| {
            if x % 2 == 0 {
                Step {
                    request: None,
                    back: Rc::new(|resp: Option<i64>| match resp {
                        None => -1,
                        Some(_) => protocol_violation("test"),
                    }),
                }
            } else {
                Step {
                    request: Some(x),
                    back: Rc::new(|resp: Option<i64>| resp.unwrap_or(-1)),
                }
            }
        });
        let g: Morphism<Nums, MaybeAll<Nums>> = Morphism::new(|x| Step {
            request: Some(x * 2),
            back: Rc::new(|resp: Option<i64>| resp.unwrap_or(-1)),
        });
        let k = kleisli_compose(&f, &g);
        assert_eq!(k.apply(3).request, Some(6));
        assert_eq!(k.apply(4).request, None);
    }

    #[test]
    fn iso_round_trips() {
        let to = maybe_iso_to::<Nums>();
        let from = maybe_iso_from::<Nums>();
        let round = to.then(&from);
        let step = round.apply(Some(8));
        assert_eq!(step.request, Some(8));
        assert_eq!((step.back)(Some(3)), Some(3));
        let step = round.apply(None);
        assert_eq!(step.request, None);
        assert_eq!((step.back)(None), None);
    }

    #[test]
    fn maybe_u_forgets_presence() {
        let m = maybe_u();
        assert_eq!(m.apply(Some(())).request, ());
        assert_eq!(m.apply(None).request, ());
        assert_eq!((m.apply(Some(())).back)(()), Some(()));
        assert_eq!((m.apply(None).back)(()), None);
    }

    #[test]
    fn maybe_map_of_identity_is_identity() {
        let m = maybe_all_map(&identity::<Nums>());
        assert_eq!(m.apply(Some(2)).request, Some(2));
        assert_eq!((m.apply(Some(2)).back)(Some(5)), Some(5));
    }
}
