//! The two-way bridge between the typed layer and the finite model.
//!
//! [`to_typed`] turns an index-table transformer into an ordinary typed
//! transformer over [`DynC`] (the boundary whose requests and responses are
//! model values), so typed combinators can be exercised on enumerated
//! inputs. [`reify`] goes the other way: it tabulates a typed transformer
//! over finite boundaries, so its behaviour can be compared — extensionally
//! and exhaustively — against a table computed by an independent oracle.
//!
//! Conversions between typed values and table values are carried by
//! [`Conv`] bundles, composed structurally: `conv_either` for sums,
//! `conv_option` for option-wrapping, `conv_seq` and `conv_star` for the
//! continuation-carrying boundaries (these probe closures against every
//! tabulated response, which is what makes reification total on finite
//! boundaries), and `conv_lifted` for effectful ones.
//!
//! Anything a broken typed transformer produces that falls outside the
//! advertised tables surfaces as an `Err` from `reify`, not a panic, so law
//! failures can be reported gracefully.

use std::rc::Rc;

use either::Either;

use crate::combinators::{MaybeAll, Seq, SeqReq, Star, StarPath, StarShape, Sum};
use crate::container::{Container, Morphism, Step, Unit};
use crate::effects::{Effect, IdentityEffect, Lifted, OptionEffect, WriterEffect};

use super::container::{FiniteContainer, ModelError};
use super::effect::{
    atom_trace, identity_effect_model, option_effect_model, trace_atom, writer_effect_model,
    EffectModel,
};
use super::morphism::FiniteMorphism;
use super::value::Value;

/// The dynamic boundary: requests and responses are model values, with
/// legality determined by a [`FiniteContainer`]'s tables rather than by
/// types.
pub struct DynC;

impl Container for DynC {
    type Req = Value;
    type Resp = Value;
}

/// Conversions between table values and one typed boundary's requests and
/// responses.
pub struct Conv<C: Container> {
    pub to_req: Rc<dyn Fn(&Value) -> C::Req>,
    pub from_req: Rc<dyn Fn(&C::Req) -> Value>,
    pub to_resp: Rc<dyn Fn(&Value) -> C::Resp>,
    pub from_resp: Rc<dyn Fn(&C::Resp) -> Value>,
}

impl<C: Container> Clone for Conv<C> {
    fn clone(&self) -> Self {
        Conv {
            to_req: self.to_req.clone(),
            from_req: self.from_req.clone(),
            to_resp: self.to_resp.clone(),
            from_resp: self.from_resp.clone(),
        }
    }
}

/// Conversions for [`DynC`]: values pass through unchanged.
pub fn conv_value() -> Conv<DynC> {
    Conv {
        to_req: Rc::new(Value::clone),
        from_req: Rc::new(Value::clone),
        to_resp: Rc::new(Value::clone),
        from_resp: Rc::new(Value::clone),
    }
}

/// Conversions for the trivial boundary.
pub fn conv_unit() -> Conv<Unit> {
    Conv {
        to_req: Rc::new(|_| ()),
        from_req: Rc::new(|_| Value::Unit),
        to_resp: Rc::new(|_| ()),
        from_resp: Rc::new(|_| Value::Unit),
    }
}

/// Conversions for a tagged choice, from conversions for the sides.
pub fn conv_either<A: Container, B: Container>(a: &Conv<A>, b: &Conv<B>) -> Conv<Sum<A, B>> {
    let (a1, b1) = (a.clone(), b.clone());
    let (a2, b2) = (a.clone(), b.clone());
    let (a3, b3) = (a.clone(), b.clone());
    let (a4, b4) = (a.clone(), b.clone());
    Conv {
        to_req: Rc::new(move |v| match v {
            Value::Left(x) => Either::Left((a1.to_req)(x)),
            Value::Right(x) => Either::Right((b1.to_req)(x)),
            other => panic!("not a sum request: {other}"),
        }),
        from_req: Rc::new(move |r| match r {
            Either::Left(x) => Value::left((a2.from_req)(x)),
            Either::Right(x) => Value::right((b2.from_req)(x)),
        }),
        to_resp: Rc::new(move |v| match v {
            Value::Left(x) => Either::Left((a3.to_resp)(x)),
            Value::Right(x) => Either::Right((b3.to_resp)(x)),
            other => panic!("not a sum response: {other}"),
        }),
        from_resp: Rc::new(move |r| match r {
            Either::Left(x) => Value::left((a4.from_resp)(x)),
            Either::Right(x) => Value::right((b4.from_resp)(x)),
        }),
    }
}

/// Conversions for the option-wrapped boundary.
pub fn conv_option<C: Container>(c: &Conv<C>) -> Conv<MaybeAll<C>> {
    let c1 = c.clone();
    let c2 = c.clone();
    let c3 = c.clone();
    let c4 = c.clone();
    Conv {
        to_req: Rc::new(move |v| match v {
            Value::Absent => None,
            Value::Present(x) => Some((c1.to_req)(x)),
            other => panic!("not an option request: {other}"),
        }),
        from_req: Rc::new(move |r| match r {
            None => Value::Absent,
            Some(x) => Value::present((c2.from_req)(x)),
        }),
        to_resp: Rc::new(move |v| match v {
            Value::Absent => None,
            Value::Present(x) => Some((c3.to_resp)(x)),
            other => panic!("not an option response: {other}"),
        }),
        from_resp: Rc::new(move |r| match r {
            None => Value::Absent,
            Some(x) => Value::present((c4.from_resp)(x)),
        }),
    }
}

/// Conversions for a dependent sequence. The first boundary's tables are
/// needed to turn the explicit continuation list into a closure and back:
/// closures are probed at every tabulated first response.
pub fn conv_seq<A: Container, B: Container>(
    a: &Conv<A>,
    b: &Conv<B>,
    base_a: &FiniteContainer,
) -> Conv<Seq<A, B>> {
    let (a1, b1, base1) = (a.clone(), b.clone(), base_a.clone());
    let (a2, b2, base2) = (a.clone(), b.clone(), base_a.clone());
    let (a3, b3) = (a.clone(), b.clone());
    let (a4, b4) = (a.clone(), b.clone());
    Conv {
        to_req: Rc::new(move |v| match v {
            Value::Pair(first, rest) => {
                let items: Vec<Value> = match &**rest {
                    Value::List(items) => (**items).clone(),
                    other => panic!("not a continuation table: {other}"),
                };
                let i = base1
                    .request_index(first)
                    .unwrap_or_else(|| panic!("request {first} outside tables"));
                let first_t = (a1.to_req)(first);
                let (ac, bc, base) = (a1.clone(), b1.clone(), base1.clone());
                SeqReq::new(first_t, move |ra: &A::Resp| {
                    let rv = (ac.from_resp)(ra);
                    let j = base
                        .response_index(i, &rv)
                        .unwrap_or_else(|| panic!("response {rv} outside tables"));
                    (bc.to_req)(&items[j])
                })
            }
            other => panic!("not a sequence request: {other}"),
        }),
        from_req: Rc::new(move |req: &SeqReq<A, B>| {
            let first_v = (a2.from_req)(&req.first);
            let i = base2
                .request_index(&first_v)
                .unwrap_or_else(|| panic!("request {first_v} outside tables"));
            let items: Vec<Value> = base2
                .responses(i)
                .iter()
                .map(|rv| (b2.from_req)(&(req.rest)(&(a2.to_resp)(rv))))
                .collect();
            Value::pair(first_v, Value::list(items))
        }),
        to_resp: Rc::new(move |v| match v {
            Value::Pair(ra, rb) => ((a3.to_resp)(ra), (b3.to_resp)(rb)),
            other => panic!("not a sequence response: {other}"),
        }),
        from_resp: Rc::new(move |(ra, rb)| Value::pair((a4.from_resp)(ra), (b4.from_resp)(rb))),
    }
}

fn shape_to_typed<C: Container>(
    conv: &Conv<C>,
    base: &FiniteContainer,
    v: &Value,
) -> StarShape<C> {
    match v {
        Value::Done => StarShape::Done,
        Value::Step(q, rest) => {
            let subs: Vec<Value> = match &**rest {
                Value::List(items) => (**items).clone(),
                other => panic!("not a subtree table: {other}"),
            };
            let i = base
                .request_index(q)
                .unwrap_or_else(|| panic!("request {q} outside tables"));
            let req = (conv.to_req)(q);
            let (conv2, base2) = (conv.clone(), base.clone());
            StarShape::More(
                req,
                Rc::new(move |r: &C::Resp| {
                    let rv = (conv2.from_resp)(r);
                    let j = base2
                        .response_index(i, &rv)
                        .unwrap_or_else(|| panic!("response {rv} outside tables"));
                    shape_to_typed(&conv2, &base2, &subs[j])
                }),
            )
        }
        other => panic!("not a tree request: {other}"),
    }
}

fn shape_to_value<C: Container>(
    conv: &Conv<C>,
    base: &FiniteContainer,
    s: &StarShape<C>,
) -> Value {
    match s {
        StarShape::Done => Value::Done,
        StarShape::More(q, rest) => {
            let qv = (conv.from_req)(q);
            let i = base
                .request_index(&qv)
                .unwrap_or_else(|| panic!("request {qv} outside tables"));
            let subs: Vec<Value> = base
                .responses(i)
                .iter()
                .map(|rv| shape_to_value(conv, base, &rest(&(conv.to_resp)(rv))))
                .collect();
            Value::step(qv, Value::list(subs))
        }
    }
}

fn path_to_typed<C: Container>(conv: &Conv<C>, v: &Value) -> StarPath<C::Resp> {
    match v {
        Value::Done => StarPath::Done,
        Value::Step(head, tail) => {
            StarPath::step((conv.to_resp)(head), path_to_typed(conv, tail))
        }
        other => panic!("not a path: {other}"),
    }
}

fn path_to_value<C: Container>(conv: &Conv<C>, p: &StarPath<C::Resp>) -> Value {
    match p {
        StarPath::Done => Value::Done,
        StarPath::Step(head, tail) => {
            Value::step((conv.from_resp)(head), path_to_value::<C>(conv, tail))
        }
    }
}

/// Conversions for session trees over a finite base boundary. Tree
/// requests are converted between explicit subtree tables and closures;
/// paths convert pointwise.
pub fn conv_star<C: Container>(c: &Conv<C>, base: &FiniteContainer) -> Conv<Star<C>> {
    let (c1, base1) = (c.clone(), base.clone());
    let (c2, base2) = (c.clone(), base.clone());
    let c3 = c.clone();
    let c4 = c.clone();
    Conv {
        to_req: Rc::new(move |v| shape_to_typed(&c1, &base1, v)),
        from_req: Rc::new(move |s| shape_to_value(&c2, &base2, s)),
        to_resp: Rc::new(move |v| path_to_typed(&c3, v)),
        from_resp: Rc::new(move |p| path_to_value::<C>(&c4, p)),
    }
}

/// A finite effect whose typed values convert to and from model values.
pub trait EffectBridge: Effect {
    fn model() -> EffectModel;
    fn value_to<T: 'static>(v: &Value, inner: &dyn Fn(&Value) -> T) -> Self::Of<T>;
    fn value_from<T: 'static>(ft: &Self::Of<T>, inner: &dyn Fn(&T) -> Value) -> Value;
}

impl EffectBridge for IdentityEffect {
    fn model() -> EffectModel {
        identity_effect_model()
    }

    fn value_to<T: 'static>(v: &Value, inner: &dyn Fn(&Value) -> T) -> T {
        inner(v)
    }

    fn value_from<T: 'static>(ft: &T, inner: &dyn Fn(&T) -> Value) -> Value {
        inner(ft)
    }
}

impl EffectBridge for OptionEffect {
    fn model() -> EffectModel {
        option_effect_model()
    }

    fn value_to<T: 'static>(v: &Value, inner: &dyn Fn(&Value) -> T) -> Option<T> {
        match v {
            Value::Absent => None,
            Value::Present(x) => Some(inner(x)),
            other => panic!("not an optional value: {other}"),
        }
    }

    fn value_from<T: 'static>(ft: &Option<T>, inner: &dyn Fn(&T) -> Value) -> Value {
        match ft {
            None => Value::Absent,
            Some(x) => Value::present(inner(x)),
        }
    }
}

impl EffectBridge for WriterEffect {
    fn model() -> EffectModel {
        writer_effect_model()
    }

    fn value_to<T: 'static>(v: &Value, inner: &dyn Fn(&Value) -> T) -> (crate::effects::Trace, T) {
        match v {
            Value::Pair(t, x) => (atom_trace(t), inner(x)),
            other => panic!("not a logged value: {other}"),
        }
    }

    fn value_from<T: 'static>(
        ft: &(crate::effects::Trace, T),
        inner: &dyn Fn(&T) -> Value,
    ) -> Value {
        Value::pair(trace_atom(&ft.0), inner(&ft.1))
    }
}

/// Conversions for an effect-lifted boundary.
pub fn conv_lifted<F: EffectBridge, C: Container>(c: &Conv<C>) -> Conv<Lifted<F, C>> {
    let c1 = c.clone();
    let c2 = c.clone();
    let c3 = c.clone();
    let c4 = c.clone();
    Conv {
        to_req: c1.to_req,
        from_req: c2.from_req,
        to_resp: Rc::new(move |v| F::value_to(v, &*c3.to_resp)),
        from_resp: Rc::new(move |fr| F::value_from(fr, &*c4.from_resp)),
    }
}

/// View an index-table transformer as a typed transformer over [`DynC`].
///
/// Values outside the tables come back as violation values rather than
/// panicking, so deliberately broken transformers fail laws gracefully.
pub fn to_typed(m: &FiniteMorphism) -> Morphism<DynC, DynC> {
    let m = m.clone();
    Morphism::new(move |x: Value| match m.apply_forward(&x) {
        Ok(image) => {
            let m2 = m.clone();
            let x2 = x.clone();
            Step {
                request: image,
                back: Rc::new(move |r: Value| {
                    m2.apply_backward(&x2, &r)
                        .unwrap_or_else(|e| Value::violation(&e.to_string()))
                }),
            }
        }
        Err(e) => {
            let why = Value::violation(&e.to_string());
            let why2 = why.clone();
            Step {
                request: why,
                back: Rc::new(move |_| why2.clone()),
            }
        }
    })
}

/// View an index-table transformer as a typed transformer over arbitrary
/// boundaries, through conversions.
///
/// Unlike [`to_typed`] this panics on values outside the tables: it exists
/// to drive typed pipelines with enumerated transformers, and those only
/// ever see tabulated values.
pub fn from_table<A: Container, B: Container>(
    m: &FiniteMorphism,
    ca: &Conv<A>,
    cb: &Conv<B>,
) -> Morphism<A, B> {
    let m = m.clone();
    let ca = ca.clone();
    let cb = cb.clone();
    Morphism::new(move |x: A::Req| {
        let xv = (ca.from_req)(&x);
        let image = m
            .apply_forward(&xv)
            .unwrap_or_else(|e| panic!("from_table: {e}"));
        let m2 = m.clone();
        let ca2 = ca.clone();
        let cb2 = cb.clone();
        Step {
            request: (cb.to_req)(&image),
            back: Rc::new(move |r: B::Resp| {
                let rv = (cb2.from_resp)(&r);
                let back = m2
                    .apply_backward(&xv, &rv)
                    .unwrap_or_else(|e| panic!("from_table: {e}"));
                (ca2.to_resp)(&back)
            }),
        }
    })
}

/// Tabulate a typed transformer over finite boundaries.
///
/// The forward map is evaluated at every tabulated request and the
/// backward map at every response of the image; any value that falls
/// outside the advertised tables — including violation values produced by
/// broken transformers — surfaces as an error carrying the stray value.
pub fn reify<A: Container, B: Container>(
    m: &Morphism<A, B>,
    dom: &FiniteContainer,
    cod: &FiniteContainer,
    ca: &Conv<A>,
    cb: &Conv<B>,
) -> Result<FiniteMorphism, ModelError> {
    let mut forward = Vec::with_capacity(dom.request_count());
    let mut backward = Vec::with_capacity(dom.request_count());
    for (i, q) in dom.requests().iter().enumerate() {
        let step = m.apply((ca.to_req)(q));
        let image_v = (cb.from_req)(&step.request);
        let image = cod
            .request_index(&image_v)
            .ok_or_else(|| ModelError::UnknownRequest {
                container: cod.name().to_string(),
                request: image_v.to_string(),
            })?;
        forward.push(image);
        let mut row = Vec::with_capacity(cod.responses(image).len());
        for rv in cod.responses(image) {
            let answered = (step.back)((cb.to_resp)(rv));
            let back_v = (ca.from_resp)(&answered);
            let j = dom
                .response_index(i, &back_v)
                .ok_or_else(|| ModelError::UnknownResponse {
                    container: dom.name().to_string(),
                    request: q.to_string(),
                    response: back_v.to_string(),
                })?;
            row.push(j);
        }
        backward.push(row);
    }
    FiniteMorphism::from_indices(dom.clone(), cod.clone(), forward, backward)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::derived::{
        maybe_container, model_maybe_map, model_star_map, seq_container, sum_container,
        unit_container, unit_right_table, StarModel,
    };
    use crate::model::morphism::{enumerate_morphisms, morphism_equal, EnumCaps};

    fn small() -> FiniteContainer {
        FiniteContainer::new(
            "S",
            vec![
                (Value::atom("q0"), vec![Value::atom("r0")]),
                (Value::atom("q1"), vec![Value::atom("r0"), Value::atom("r1")]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn every_table_round_trips_through_the_typed_layer() {
        let s = small();
        let u = unit_container();
        let conv = conv_value();
        for (a, b) in [(&s, &s), (&s, &u), (&u, &s)] {
            for m in enumerate_morphisms(a, b, &EnumCaps::default()).unwrap() {
                let back = reify(&to_typed(&m), a, b, &conv, &conv).unwrap();
                assert!(morphism_equal(&m, &back));
            }
        }
    }

    #[test]
    fn typed_composition_matches_table_composition() {
        use crate::container::compose;
        use crate::model::morphism::compose_tables;
        let s = small();
        let u = unit_container();
        let conv = conv_value();
        let fs = enumerate_morphisms(&s, &u, &EnumCaps::default()).unwrap();
        let gs = enumerate_morphisms(&u, &s, &EnumCaps::default()).unwrap();
        for f in &fs {
            for g in &gs {
                let typed = compose(&to_typed(f), &to_typed(g));
                let via_typed = reify(&typed, &s, &s, &conv, &conv).unwrap();
                let via_tables = compose_tables(f, g).unwrap();
                assert!(morphism_equal(&via_typed, &via_tables));
            }
        }
    }

    #[test]
    fn option_conversion_reifies_the_typed_maybe_map() {
        use crate::combinators::maybe_all_map;
        let s = small();
        let u = unit_container();
        let conv = conv_option(&conv_value());
        for m in enumerate_morphisms(&s, &u, &EnumCaps::default()).unwrap() {
            let typed = maybe_all_map(&to_typed(&m));
            let got = reify(
                &typed,
                &maybe_container(&s),
                &maybe_container(&u),
                &conv,
                &conv,
            )
            .unwrap();
            let want = model_maybe_map(&m).unwrap();
            assert!(morphism_equal(&got, &want));
        }
    }

    #[test]
    fn seq_conversion_probes_continuations() {
        use crate::combinators::unit_right;
        let s = small();
        let u = unit_container();
        let dom = seq_container(&s, &u);
        let conv = conv_seq(&conv_value(), &conv_unit(), &s);
        let got = reify(&unit_right::<DynC>(), &dom, &s, &conv, &conv_value()).unwrap();
        let want = unit_right_table(&s).unwrap();
        assert!(morphism_equal(&got, &want));
    }

    #[test]
    fn star_conversion_matches_the_tree_oracle() {
        use crate::combinators::star_map;
        let s = small();
        let u = unit_container();
        let sm_s = StarModel::new(&s, 2);
        let sm_u = StarModel::new(&u, 2);
        let conv_s = conv_star(&conv_value(), &s);
        let conv_u = conv_star(&conv_value(), &u);
        for m in enumerate_morphisms(&s, &u, &EnumCaps::default()).unwrap() {
            let typed = star_map(&to_typed(&m));
            let got = reify(&typed, sm_s.container(), sm_u.container(), &conv_s, &conv_u).unwrap();
            let want = model_star_map(&m, &sm_s, &sm_u).unwrap();
            assert!(morphism_equal(&got, &want));
        }
    }

    #[test]
    fn lifted_conversion_handles_all_three_effects() {
        use crate::effects::lift_map;
        let s = small();
        let u = unit_container();
        let base = conv_value();
        for m in enumerate_morphisms(&s, &u, &EnumCaps::default()).unwrap() {
            macro_rules! check {
                ($fx:ty) => {{
                    let fx = <$fx as EffectBridge>::model();
                    let conv = conv_lifted::<$fx, DynC>(&base);
                    let typed = lift_map::<$fx, DynC, DynC>(&to_typed(&m));
                    let got = reify(
                        &typed,
                        &crate::model::derived::lifted_container(&fx, &s),
                        &crate::model::derived::lifted_container(&fx, &u),
                        &conv,
                        &conv,
                    )
                    .unwrap();
                    let want = crate::model::derived::model_lift_map(&fx, &m).unwrap();
                    assert!(morphism_equal(&got, &want), "{}", fx.name);
                }};
            }
            check!(IdentityEffect);
            check!(OptionEffect);
            check!(WriterEffect);
        }
    }

    #[test]
    fn broken_transformers_fail_reification_gracefully() {
        let s = small();
        let u = unit_container();
        // forward into a value no table advertises
        let stray: Morphism<DynC, DynC> = Morphism::new(|_| Step {
            request: Value::atom("zz"),
            back: Rc::new(|r| r),
        });
        let err = reify(&stray, &s, &u, &conv_value(), &conv_value()).unwrap_err();
        assert!(matches!(err, ModelError::UnknownRequest { .. }));
        // backward violation values are reported, not panicked on
        let broken = {
            let mut m = enumerate_morphisms(&s, &u, &EnumCaps::default()).unwrap();
            let real = m.remove(0);
            let typed = to_typed(&real);
            Morphism::<DynC, DynC>::new(move |x| {
                let step = typed.apply(x);
                Step {
                    request: step.request,
                    back: Rc::new(|_| Value::violation("deliberately broken")),
                }
            })
        };
        let err = reify(&broken, &s, &u, &conv_value(), &conv_value()).unwrap_err();
        assert!(matches!(err, ModelError::UnknownResponse { .. }));
        let _ = sum_container(&s, &u);
    }
}
