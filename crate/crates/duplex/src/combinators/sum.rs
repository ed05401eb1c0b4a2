//! Choice between two boundaries, and the collapse of a self-choice.

use either::Either;
use std::rc::Rc;

use crate::container::{protocol_violation, Container, Morphism, Step};

/// Offer either boundary: a request picks a side, and the response comes
/// from the same side.
pub struct Sum<A: Container, B: Container>(std::marker::PhantomData<(A, B)>);

impl<A: Container, B: Container> Container for Sum<A, B> {
    type Req = Either<A::Req, B::Req>;
    type Resp = Either<A::Resp, B::Resp>;
}

/// Transform each side independently.
pub fn coproduct_map<A, B, C, D>(
    left: &Morphism<A, C>,
    right: &Morphism<B, D>,
) -> Morphism<Sum<A, B>, Sum<C, D>>
where
    A: Container,
    B: Container,
    C: Container,
    D: Container,
{
    let left = left.clone();
    let right = right.clone();
    Morphism::new(move |req| match req {
        Either::Left(x) => {
            let step = left.apply(x);
            Step {
                request: Either::Left(step.request),
                back: Rc::new(move |resp| match resp {
                    Either::Left(r) => Either::Left((step.back)(r)),
                    Either::Right(_) => protocol_violation("coproduct: response crossed sides"),
                }),
            }
        }
        Either::Right(y) => {
            let step = right.apply(y);
            Step {
                request: Either::Right(step.request),
                back: Rc::new(move |resp| match resp {
                    Either::Right(r) => Either::Right((step.back)(r)),
                    Either::Left(_) => protocol_violation("coproduct: response crossed sides"),
                }),
            }
        }
    })
}

/// Collapse a choice between a boundary and itself: forward the chosen
/// request bare, and re-tag the response with the side that was picked.
pub fn diagonal<C: Container>() -> Morphism<Sum<C, C>, C> {
    Morphism::new(|req| match req {
        Either::Left(x) => Step {
            request: x,
            back: Rc::new(Either::Left),
        },
        Either::Right(x) => Step {
            request: x,
            back: Rc::new(Either::Right),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::container::{identity, Morphism};

    struct Nums;
    impl Container for Nums {
        type Req = i64;
        type Resp = i64;
    }

    struct Words;
    impl Container for Words {
        type Req = String;
        type Resp = usize;
    }

    #[test]
    fn coproduct_routes_left_and_right() {
        let shift: Morphism<Nums, Nums> = Morphism::from_maps(|x| x + 1, |_x, r| r * 10);
        let len: Morphism<Words, Words> =
            Morphism::from_maps(|s: String| format!("{s}!"), |_s, n| n + 1000);
        let m = coproduct_map(&shift, &len);

        let l = m.apply(Either::Left(4));
        assert_eq!(l.request, Either::Left(5));
        assert_eq!((l.back)(Either::Left(7)), Either::Left(70));

        let r = m.apply(Either::Right("hi".to_string()));
        assert_eq!(r.request, Either::Right("hi!".to_string()));
        assert_eq!((r.back)(Either::Right(2)), Either::Right(1002));
    }

    #[test]
    fn diagonal_remembers_the_side() {
        let d = diagonal::<Nums>();
        let l = d.apply(Either::Left(3));
        assert_eq!(l.request, 3);
        assert_eq!((l.back)(9), Either::Left(9));
        let r = d.apply(Either::Right(3));
        assert_eq!(r.request, 3);
        assert_eq!((r.back)(9), Either::Right(9));
    }

    #[test]
    fn coproduct_of_identities_is_identity() {
        let m = coproduct_map(&identity::<Nums>(), &identity::<Words>());
        let step = m.apply(Either::<i64, String>::Left(11));
        assert_eq!(step.request, Either::Left(11));
        assert_eq!((step.back)(Either::Left(11)), Either::Left(11));
    }

    #[test]
    #[should_panic(expected = "protocol violation")]
    fn crossing_sides_is_a_protocol_violation() {
        let m = coproduct_map(&identity::<Nums>(), &identity::<Words>());
        let step = m.apply(Either::<i64, String>::Left(1));
        let _ = (step.back)(Either::Right(3));
    }
}
