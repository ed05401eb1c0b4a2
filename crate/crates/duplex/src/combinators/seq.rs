//! Do one exchange, then — depending on its answer — another.

use std::rc::Rc;

use crate::container::{Container, Morphism, Step, Unit};

/// A request of the sequential product: the first request, plus a plan for
/// choosing the second once the first answer is known.
pub struct SeqReq<A: Container, B: Container> {
    pub first: A::Req,
    pub rest: Rc<dyn Fn(&A::Resp) -> B::Req>,
}

impl<A: Container, B: Container> SeqReq<A, B> {
    pub fn new(first: A::Req, rest: impl Fn(&A::Resp) -> B::Req + 'static) -> Self {
        SeqReq {
            first,
            rest: Rc::new(rest),
        }
    }
}

impl<A: Container, B: Container> Clone for SeqReq<A, B>
where
    A::Req: Clone,
{
    fn clone(&self) -> Self {
        SeqReq {
            first: self.first.clone(),
            rest: Rc::clone(&self.rest),
        }
    }
}

/// Two exchanges in order, the second chosen by the first answer. The
/// response is both answers.
pub struct Seq<A: Container, B: Container>(std::marker::PhantomData<(A, B)>);

impl<A: Container, B: Container> Container for Seq<A, B> {
    type Req = SeqReq<A, B>;
    type Resp = (A::Resp, B::Resp);
}

/// A trivial first exchange adds nothing: project the continuation's
/// request out, and pair the answer back up with the unit acknowledgement.
pub fn unit_left<A: Container>() -> Morphism<Seq<Unit, A>, A> {
    Morphism::new(|req: SeqReq<Unit, A>| Step {
        request: (req.rest)(&()),
        back: Rc::new(|r: A::Resp| ((), r)),
    })
}

/// A trivial second exchange adds nothing either: keep the first request,
/// and pair the answer with the unit acknowledgement on the way back.
pub fn unit_right<A: Container>() -> Morphism<Seq<A, Unit>, A> {
    Morphism::new(|req: SeqReq<A, Unit>| Step {
        request: req.first,
        back: Rc::new(|r: A::Resp| (r, ())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::container::{costate, exec, run, state, Costate};

    struct Nums;
    impl Container for Nums {
        type Req = i64;
        type Resp = i64;
    }

    fn seq_costate() -> Costate<Seq<Nums, Nums>> {
        costate::<Seq<Nums, Nums>>(|req: SeqReq<Nums, Nums>| {
            let first_answer = req.first * 10;
            let second_request = (req.rest)(&first_answer);
            (first_answer, second_request * 10)
        })
    }

    #[test]
    fn second_request_sees_first_answer() {
        let co = seq_costate();
        let req = SeqReq::<Nums, Nums>::new(3, |a| a + 1);
        assert_eq!(exec(&co, req), (30, 310));
    }

    #[test]
    fn unit_right_keeps_the_first_request() {
        let m = unit_right::<Nums>();
        let step = m.apply(SeqReq::new(5, |_| ()));
        assert_eq!(step.request, 5);
        assert_eq!((step.back)(42), (42, ()));
    }

    #[test]
    fn unit_left_projects_the_continuation() {
        let m = unit_left::<Nums>();
        let step = m.apply(SeqReq::new((), |&()| 5));
        assert_eq!(step.request, 5);
        assert_eq!((step.back)(42), ((), 42));
    }

    #[test]
    fn unit_right_runs_as_a_projection() {
        // run(state((x, const unit)), costate(h), unit_right) = (h(x), unit)
        let st = state::<Seq<Nums, Unit>>(SeqReq::new(4, |_| ()));
        let co = costate::<Nums>(|x| x + 1);
        assert_eq!(run(&st, &co, &unit_right::<Nums>()), (5, ()));
    }
}
