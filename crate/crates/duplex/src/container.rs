//! Request/response boundaries and the transformers between them.
//!
//! A [`Container`] is an API boundary described by data: a type of requests,
//! and for each request a type of acceptable responses. A [`Morphism`] plugs
//! one boundary into another: it translates requests forward and, for each
//! translated request, carries a closure that translates the eventual
//! response back. Because the backward direction is packaged per request
//! ([`Step`]), response translation can depend on the originating request —
//! which is what makes transformers like a diagonal or an optional-request
//! wrapper expressible at all.
//!
//! [`State`] (a value waiting to be asked) and [`Costate`] (a handler waiting
//! to answer) are the two ends of a runnable pipeline; [`run`] connects them
//! through a transformer.

use std::rc::Rc;

/// An API boundary: a request type plus the responses that can answer it.
///
/// The per-request response discipline is carried by convention: concrete
/// containers choose `Resp` so that each request has an evident set of valid
/// answers (often a variant matching the request's variant). Transformers
/// built from the constructors in this crate only ever route a response back
/// to the request it answers.
pub trait Container: 'static {
    type Req: 'static;
    type Resp: 'static;
}

/// The trivial boundary: one request, one acknowledgement.
pub struct Unit;

impl Container for Unit {
    type Req = ();
    type Resp = ();
}

/// One translated request: where it now points, and how its answer comes back.
///
/// `back` captures the originating request, so the response translation may
/// depend on it.
pub struct Step<A: Container, B: Container> {
    pub request: B::Req,
    pub back: Rc<dyn Fn(B::Resp) -> A::Resp>,
}

/// A transformer between boundaries: requests of `A` become requests of `B`,
/// and each translated request knows how to translate its response back.
pub struct Morphism<A: Container, B: Container> {
    translate: Rc<dyn Fn(A::Req) -> Step<A, B>>,
}

impl<A: Container, B: Container> Clone for Morphism<A, B> {
    fn clone(&self) -> Self {
        Morphism {
            translate: Rc::clone(&self.translate),
        }
    }
}

impl<A: Container, B: Container> Morphism<A, B> {
    pub fn new(translate: impl Fn(A::Req) -> Step<A, B> + 'static) -> Self {
        Morphism {
            translate: Rc::new(translate),
        }
    }

    /// Build from independent forward/backward maps. The backward map sees
    /// the originating request alongside the response.
    pub fn from_maps(
        forward: impl Fn(A::Req) -> B::Req + 'static,
        backward: impl Fn(&A::Req, B::Resp) -> A::Resp + 'static,
    ) -> Self
    where
        A::Req: Clone,
    {
        let backward = Rc::new(backward);
        Morphism::new(move |x: A::Req| {
            let request = forward(x.clone());
            let backward = Rc::clone(&backward);
            Step {
                request,
                back: Rc::new(move |resp| backward(&x, resp)),
            }
        })
    }

    /// Translate one request.
    pub fn apply(&self, request: A::Req) -> Step<A, B> {
        (self.translate)(request)
    }

    /// `self` first, then `next`.
    pub fn then<C: Container>(&self, next: &Morphism<B, C>) -> Morphism<A, C> {
        compose(self, next)
    }
}

/// The do-nothing transformer.
pub fn identity<C: Container>() -> Morphism<C, C> {
    Morphism::new(|request| Step {
        request,
        back: Rc::new(|resp| resp),
    })
}

/// Plug `first` into `second`: requests flow left to right, responses come
/// back right to left through both translations.
pub fn compose<A: Container, B: Container, C: Container>(
    first: &Morphism<A, B>,
    second: &Morphism<B, C>,
) -> Morphism<A, C> {
    let first = first.clone();
    let second = second.clone();
    Morphism::new(move |x| {
        let s1 = first.apply(x);
        let s2 = second.apply(s1.request);
        let b1 = s1.back;
        let b2 = s2.back;
        Step {
            request: s2.request,
            back: Rc::new(move |resp| b1(b2(resp))),
        }
    })
}

/// A value of `C::Req` waiting to be asked: a transformer out of [`Unit`].
pub struct State<C: Container>(Morphism<Unit, C>);

/// A handler waiting to answer requests of `C`: a transformer into [`Unit`].
pub struct Costate<C: Container>(Morphism<C, Unit>);

impl<C: Container> Clone for State<C> {
    fn clone(&self) -> Self {
        State(self.0.clone())
    }
}

impl<C: Container> Clone for Costate<C> {
    fn clone(&self) -> Self {
        Costate(self.0.clone())
    }
}

impl<C: Container> State<C> {
    pub fn morphism(&self) -> &Morphism<Unit, C> {
        &self.0
    }
}

impl<C: Container> Costate<C> {
    pub fn morphism(&self) -> &Morphism<C, Unit> {
        &self.0
    }
}

impl<C: Container> From<Morphism<Unit, C>> for State<C> {
    fn from(m: Morphism<Unit, C>) -> Self {
        State(m)
    }
}

impl<C: Container> From<Morphism<C, Unit>> for Costate<C> {
    fn from(m: Morphism<C, Unit>) -> Self {
        Costate(m)
    }
}

/// Hold a request, ready to be run.
pub fn state<C: Container>(request: C::Req) -> State<C>
where
    C::Req: Clone,
{
    State(Morphism::new(move |()| Step {
        request: request.clone(),
        back: Rc::new(|_resp| ()),
    }))
}

/// The request a state holds.
pub fn value<C: Container>(st: &State<C>) -> C::Req {
    st.0.apply(()).request
}

/// Wrap a handler as the answering end of a pipeline.
pub fn costate<C: Container>(handler: impl Fn(C::Req) -> C::Resp + 'static) -> Costate<C>
where
    C::Req: Clone,
{
    let handler = Rc::new(handler);
    Costate(Morphism::new(move |request: C::Req| {
        let handler = Rc::clone(&handler);
        Step {
            request: (),
            back: Rc::new(move |()| handler(request.clone())),
        }
    }))
}

/// Ask a costate one request and take its answer.
pub fn exec<C: Container>(co: &Costate<C>, request: C::Req) -> C::Resp {
    (co.0.apply(request).back)(())
}

/// Drive a held request through a transformer into a handler:
/// `exec(m ; co, value(st))`.
pub fn run<A: Container, B: Container>(
    st: &State<A>,
    co: &Costate<B>,
    m: &Morphism<A, B>,
) -> A::Resp {
    let composed = Costate(compose(m, &co.0));
    exec(&composed, value(st))
}

/// Both ends of a session: a request source and a response sink.
pub struct Context<A: Container, B: Container> {
    pub source: State<A>,
    pub target: Costate<B>,
}

impl<A: Container, B: Container> Context<A, B> {
    pub fn new(source: State<A>, target: Costate<B>) -> Self {
        Context { source, target }
    }

    pub fn run(&self, m: &Morphism<A, B>) -> A::Resp {
        run(&self.source, &self.target, m)
    }
}

/// Abort on a response that cannot answer the request it was routed to.
///
/// Pipelines assembled from this crate's constructors never take this path;
/// it exists because the host language cannot make the per-request response
/// discipline a compile-time fact for every combinator.
#[cold]
pub fn protocol_violation(context: &str) -> ! {
    panic!("protocol violation: response does not answer the request ({context})")
}

#[cfg(test)]
mod tests {
    use super::*;

    // Plain numeric boundary; the transformer below shifts requests and
    // compensates on the way back.
    struct Numbers;
    impl Container for Numbers {
        type Req = i64;
        type Resp = i64;
    }

    fn add_on_forward(k: i64) -> Morphism<Numbers, Numbers> {
        Morphism::from_maps(move |x| x + k, move |_x, resp| resp - k)
    }

    #[test]
    fn identity_round_trip() {
        let id = identity::<Numbers>();
        let step = id.apply(7);
        assert_eq!(step.request, 7);
        assert_eq!((step.back)(41), 41);
    }

    #[test]
    fn compose_chains_both_directions() {
        let m = compose(&add_on_forward(1), &add_on_forward(10));
        let step = m.apply(5);
        assert_eq!(step.request, 16);
        // response comes back through the outer translation first
        assert_eq!((step.back)(16), 5);
    }

    #[test]
    fn state_holds_its_value() {
        let st = state::<Numbers>(9);
        assert_eq!(value(&st), 9);
    }

    #[test]
    fn costate_answers_with_its_handler() {
        let co = costate::<Numbers>(|x| x * 2);
        assert_eq!(exec(&co, 21), 42);
    }

    #[test]
    fn run_threads_state_through_transformer_into_costate() {
        let st = state::<Numbers>(3);
        let co = costate::<Numbers>(|x| x + 100);
        let m = add_on_forward(4);
        // forward: 3 -> 7; handler: 107; backward: 107 - 4 = 103
        assert_eq!(run(&st, &co, &m), 103);
        // agreement with the definitional decomposition
        let composed: Costate<Numbers> = Costate::from(compose(&m, co.morphism()));
        assert_eq!(exec(&composed, value(&st)), 103);
    }

    #[test]
    fn context_runs_like_run() {
        let ctx = Context::new(state::<Numbers>(3), costate::<Numbers>(|x| x + 100));
        assert_eq!(ctx.run(&add_on_forward(4)), 103);
    }
}
