//! Finitely many exchanges in a row, each chosen by the answers so far.
//!
//! A request of `Star<C>` is a *shape*: either stop, or ask one `C` request
//! and continue with a shape chosen by its answer. The response is the
//! *path* actually taken — one answer per step. Shapes are potentially
//! infinite in breadth (a continuation per possible answer) but every path
//! through a well-formed shape is finite.

use std::rc::Rc;

use crate::container::{protocol_violation, Container, Morphism, Step};

/// Stop, or ask once and continue based on the answer.
pub enum StarShape<C: Container> {
    Done,
    More(C::Req, Rc<dyn Fn(&C::Resp) -> StarShape<C>>),
}

impl<C: Container> Clone for StarShape<C>
where
    C::Req: Clone,
{
    fn clone(&self) -> Self {
        match self {
            StarShape::Done => StarShape::Done,
            StarShape::More(req, rest) => StarShape::More(req.clone(), Rc::clone(rest)),
        }
    }
}

/// The answers collected along one traversal of a shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StarPath<R> {
    Done,
    Step(R, Box<StarPath<R>>),
}

impl<R> StarPath<R> {
    pub fn step(head: R, rest: StarPath<R>) -> Self {
        StarPath::Step(head, Box::new(rest))
    }

    pub fn len(&self) -> usize {
        match self {
            StarPath::Done => 0,
            StarPath::Step(_, rest) => 1 + rest.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, StarPath::Done)
    }
}

/// Iterated exchanges: requests are [`StarShape`]s, responses are the
/// [`StarPath`]s that answer them.
pub struct Star<C: Container>(std::marker::PhantomData<C>);

impl<C: Container> Container for Star<C> {
    type Req = StarShape<C>;
    type Resp = StarPath<C::Resp>;
}

/// One exchange, as a one-step shape.
pub fn single<C: Container>() -> Morphism<C, Star<C>> {
    Morphism::new(|x: C::Req| Step {
        request: StarShape::More(x, Rc::new(|_resp| StarShape::Done)),
        back: Rc::new(|path: StarPath<C::Resp>| match path {
            StarPath::Step(r, rest) if rest.is_empty() => r,
            _ => protocol_violation("star single: path is not exactly one step"),
        }),
    })
}

/// Lift a transformer stepwise over iterated exchanges.
///
/// Each step's request is translated forward; each continuation is
/// precomposed with that step's backward translation, so later steps are
/// still chosen from the original boundary's view of the answer. The path
/// coming back is translated the same way, step by step.
///
/// Iterating revisits requests and replays answers — the shape keeps its
/// request while continuations run — hence the `Clone` bounds.
pub fn star_map<A: Container, B: Container>(m: &Morphism<A, B>) -> Morphism<Star<A>, Star<B>>
where
    A::Req: Clone,
    B::Resp: Clone,
{
    let m = m.clone();
    Morphism::new(move |shape: StarShape<A>| {
        let translated = translate_shape(&m, &shape);
        let m = m.clone();
        Step {
            request: translated,
            back: Rc::new(move |path| translate_path(&m, &shape, path)),
        }
    })
}

fn translate_shape<A: Container, B: Container>(
    m: &Morphism<A, B>,
    shape: &StarShape<A>,
) -> StarShape<B>
where
    A::Req: Clone,
    B::Resp: Clone,
{
    match shape {
        StarShape::Done => StarShape::Done,
        StarShape::More(req, rest) => {
            let step = m.apply(req.clone());
            let rest = Rc::clone(rest);
            let m = m.clone();
            let back = step.back;
            StarShape::More(
                step.request,
                Rc::new(move |resp: &B::Resp| {
                    // choose the continuation from the translated-back answer
                    let original = back(resp.clone());
                    translate_shape(&m, &rest(&original))
                }),
            )
        }
    }
}

fn translate_path<A: Container, B: Container>(
    m: &Morphism<A, B>,
    shape: &StarShape<A>,
    path: StarPath<B::Resp>,
) -> StarPath<A::Resp>
where
    A::Req: Clone,
    B::Resp: Clone,
{
    match (shape, path) {
        (StarShape::Done, StarPath::Done) => StarPath::Done,
        (StarShape::More(req, rest), StarPath::Step(head, tail)) => {
            let step = m.apply(req.clone());
            let original = (step.back)(head);
            let next_shape = rest(&original);
            let translated_tail = translate_path(m, &next_shape, *tail);
            StarPath::step(original, translated_tail)
        }
        _ => protocol_violation("star map: path does not follow the shape"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::container::{costate, exec, Costate, Morphism};

    struct Nums;
    impl Container for Nums {
        type Req = i64;
        type Resp = i64;
    }

    /// Answer every request by doubling it, following shapes to completion.
    fn star_costate() -> Costate<Star<Nums>> {
        costate::<Star<Nums>>(|shape| answer(&shape))
    }

    fn answer(shape: &StarShape<Nums>) -> StarPath<i64> {
        match shape {
            StarShape::Done => StarPath::Done,
            StarShape::More(req, rest) => {
                let resp = req * 2;
                let tail = answer(&rest(&resp));
                StarPath::step(resp, tail)
            }
        }
    }

    /// Ask n, then (recovering the request from the doubled answer) n-1,
    /// and so on down to zero.
    fn countdown(n: i64) -> StarShape<Nums> {
        if n <= 0 {
            StarShape::Done
        } else {
            StarShape::More(n, Rc::new(|resp: &i64| countdown(resp / 2 - 1)))
        }
    }

    #[test]
    fn paths_follow_shapes() {
        let co = star_costate();
        let path = exec(&co, countdown(3));
        assert_eq!(
            path,
            StarPath::step(6, StarPath::step(4, StarPath::step(2, StarPath::Done)))
        );
    }

    #[test]
    fn single_wraps_one_exchange() {
        let s = single::<Nums>();
        let step = s.apply(21);
        let co = star_costate();
        let path = exec(&co, step.request);
        assert_eq!((step.back)(path), 42);
    }

    #[test]
    fn star_map_translates_stepwise() {
        // shift requests by 1 forward, undo on the way back
        let m: Morphism<Nums, Nums> = Morphism::from_maps(|x| x + 1, |_x, r| r - 1);
        let lifted = star_map(&m);
        let step = lifted.apply(countdown(2));
        let co = star_costate();
        let path = exec(&co, step.request);
        let back = (step.back)(path);
        // the handler doubles the shifted request, the backward map then
        // subtracts the shift: each original answer is 2*(x+1)-1
        assert_eq!(back.len(), 2);
        if let StarPath::Step(first, _) = &back {
            assert_eq!(*first, 2 * (2 + 1) - 1);
        } else {
            unreachable!()
        }
    }

    #[test]
    fn star_map_identity_is_identity() {
        let lifted = star_map(&crate::container::identity::<Nums>());
        let step = lifted.apply(countdown(3));
        let co = star_costate();
        let direct = exec(&co, countdown(3));
        let through = (step.back)(exec(&co, step.request));
        assert_eq!(direct, through);
    }
}
