//! Laws for effectful answering: functoriality of the effect lift, the
//! comonad equations for the lifting construction, distribution of an
//! effect over choice and over optional exchanges, and the strict
//! left-to-right sequencing of effectful handlers.
//!
//! Everything is checked for each of the three enumerable effects; the
//! sequencing and iteration laws use the write-ahead log effect, whose
//! traces make evaluation order observable.

use super::{check_agrees, costate_of, diff_tables, inst1, record, Ctx, Outcome};
use crate::combinators::{MaybeAll, SeqReq, StarPath, Sum};
use crate::container::{costate, exec, identity, state, value, Costate};
use crate::effects::{
    comult, counit, distrib_maybe, distrib_maybe_inv, distrib_plus, distrib_plus_inv, lift_map,
    lift_state, star_m, IdentityEffect, Lifted, MonadEffect, OptionEffect, Trace, WriterEffect,
};
use crate::laws::report::{Counterexample, LawReport};
use crate::model::bridge::{
    conv_either, conv_lifted, conv_option, conv_star, conv_value, reify, to_typed, DynC,
    EffectBridge,
};
use crate::model::derived::{
    lifted_container, maybe_container, model_lift_map, sum_container, tabulate, StarDesc,
    StarModel,
};
use crate::model::morphism::index_tuples;
use crate::model::{compose_tables, enumerate_handlers, FiniteContainer, Value};

pub(crate) fn run(ctx: &Ctx<'_>, out: &mut Vec<LawReport>) {
    effect_suite::<IdentityEffect>(ctx, out);
    effect_suite::<OptionEffect>(ctx, out);
    effect_suite::<WriterEffect>(ctx, out);
    distrib_maybe_identity_iso(ctx, out);
    seqm_writer_order(ctx, out);
    starm_writer_log(ctx, out);
    starm_option_cut(ctx, out);
    lift_state_request(ctx, out);
}

fn effect_suite<F>(ctx: &Ctx<'_>, out: &mut Vec<LawReport>)
where
    F: EffectBridge + MonadEffect,
{
    let fx = F::model();
    let conv = conv_value();
    let conv_l = conv_lifted::<F, DynC>(&conv);
    let conv_ll = conv_lifted::<F, Lifted<F, DynC>>(&conv_l);
    let conv_lll = conv_lifted::<F, Lifted<F, Lifted<F, DynC>>>(&conv_ll);

    for c in ctx.corpus {
        let lc = lifted_container(&fx, c);
        let llc = lifted_container(&fx, &lc);
        let lllc = lifted_container(&fx, &llc);
        let instance = format!("effect={} c={}", fx.name, c.name());

        record(out, "effects/lift-map-identity", instance.clone(), || {
            let typed = lift_map::<F, DynC, DynC>(&identity::<DynC>());
            let want = crate::model::FiniteMorphism::identity(&lc);
            let mut cases = 0;
            match check_agrees(&typed, &want, &lc, &lc, &conv_l, &conv_l, &mut cases) {
                Some(cx) => Outcome::fail(cases, cx),
                None => Outcome::pass(cases),
            }
        });

        record(out, "effects/counit-agrees-with-tables", instance.clone(), || {
            let typed = counit::<F, DynC>();
            let want = tabulate(&lc, c, |q| q.clone(), |_, r| fx.pure_value(r))
                .expect("pure-answer table");
            let mut cases = 0;
            match check_agrees(&typed, &want, &lc, c, &conv_l, &conv, &mut cases) {
                Some(cx) => Outcome::fail(cases, cx),
                None => Outcome::pass(cases),
            }
        });

        record(out, "effects/comult-agrees-with-tables", instance.clone(), || {
            let typed = comult::<F, DynC>();
            let want = tabulate(&lc, &llc, |q| q.clone(), |_, rr| fx.join_value(rr))
                .expect("flatten table");
            let mut cases = 0;
            match check_agrees(&typed, &want, &lc, &llc, &conv_l, &conv_ll, &mut cases) {
                Some(cx) => Outcome::fail(cases, cx),
                None => Outcome::pass(cases),
            }
        });

        record(out, "effects/comonad-counit", instance.clone(), || {
            // duplicating the layer and forgetting the outer copy is nothing
            let typed = comult::<F, DynC>().then(&counit::<F, Lifted<F, DynC>>());
            let want = crate::model::FiniteMorphism::identity(&lc);
            let mut cases = 0;
            match check_agrees(&typed, &want, &lc, &lc, &conv_l, &conv_l, &mut cases) {
                Some(cx) => Outcome::fail(cases, cx),
                None => Outcome::pass(cases),
            }
        });

        record(out, "effects/comonad-map-counit", instance.clone(), || {
            // duplicating the layer and forgetting the inner copy is nothing
            let typed = comult::<F, DynC>().then(&lift_map::<F, _, _>(&counit::<F, DynC>()));
            let want = crate::model::FiniteMorphism::identity(&lc);
            let mut cases = 0;
            match check_agrees(&typed, &want, &lc, &lc, &conv_l, &conv_l, &mut cases) {
                Some(cx) => Outcome::fail(cases, cx),
                None => Outcome::pass(cases),
            }
        });

        record(out, "effects/comonad-coassoc", instance.clone(), || {
            let comult_lc = tabulate(&lc, &llc, |q| q.clone(), |_, rr| fx.join_value(rr))
                .expect("flatten table");
            let comult_llc = tabulate(&llc, &lllc, |q| q.clone(), |_, rr| fx.join_value(rr))
                .expect("flatten table");
            let mapped = model_lift_map(&fx, &comult_lc).expect("lifted flatten table");
            let lhs_want = compose_tables(&comult_lc, &comult_llc).expect("composes");
            let rhs_want = compose_tables(&comult_lc, &mapped).expect("composes");

            let mut cases = 0;
            if let Some(mut cx) = diff_tables(&lhs_want, &rhs_want, &mut cases) {
                cx.description = format!("model routes already disagree: {}", cx.description);
                return Outcome::fail(cases, cx);
            }
            let lhs = comult::<F, DynC>().then(&comult::<F, Lifted<F, DynC>>());
            if let Some(cx) =
                check_agrees(&lhs, &lhs_want, &lc, &lllc, &conv_l, &conv_lll, &mut cases)
            {
                return Outcome::fail(cases, cx);
            }
            let rhs = comult::<F, DynC>().then(&lift_map::<F, _, _>(&comult::<F, DynC>()));
            match check_agrees(&rhs, &rhs_want, &lc, &lllc, &conv_l, &conv_lll, &mut cases) {
                Some(cx) => Outcome::fail(cases, cx),
                None => Outcome::pass(cases),
            }
        });

        record(out, "effects/pure-handler-lifts", instance.clone(), || {
            // a plain handler behind the forgetful translation answers
            // with the purely injected response
            let mut cases = 0;
            for handler in enumerate_handlers(c) {
                let plain = costate_of(c, &handler);
                let lifted: Costate<Lifted<F, DynC>> =
                    Costate::from(counit::<F, DynC>().then(plain.morphism()));
                for (i, x) in c.requests().iter().enumerate() {
                    cases += 1;
                    let got = exec(&lifted, x.clone());
                    let got_v = F::value_from(&got, &|v: &Value| v.clone());
                    let want = fx.pure_value(&c.responses(i)[handler[i]]);
                    if got_v != want {
                        return Outcome::fail(
                            cases,
                            Counterexample {
                                description: format!(
                                    "pure handler answered {got_v}, want {want}"
                                ),
                                request: Some(x.to_string()),
                                response: None,
                                morphisms: vec![],
                            },
                        );
                    }
                }
            }
            Outcome::pass(cases)
        });

        record(out, "effects/distrib-maybe-section", instance.clone(), || {
            // recombining after distributing restores the original
            let typed = distrib_maybe_inv::<F, DynC>().then(&distrib_maybe::<F, DynC>());
            let m_lc = maybe_container(&lc);
            let want = crate::model::FiniteMorphism::identity(&m_lc);
            let conv_ml = conv_option(&conv_l);
            let mut cases = 0;
            match check_agrees(&typed, &want, &m_lc, &m_lc, &conv_ml, &conv_ml, &mut cases) {
                Some(cx) => Outcome::fail(cases, cx),
                None => Outcome::pass(cases),
            }
        });

        record(
            out,
            "effects/distrib-maybe-present-retraction",
            instance.clone(),
            || {
                // distributing after recombining restores every present
                // exchange; the effect on an absent exchange is discarded,
                // so the absent request is exempt
                let typed = distrib_maybe::<F, DynC>().then(&distrib_maybe_inv::<F, DynC>());
                let l_maybe = lifted_container(&fx, &maybe_container(c));
                let conv_lm = conv_lifted::<F, MaybeAll<DynC>>(&conv_option(&conv));
                let mut cases = 0;
                let got = match reify(&typed, &l_maybe, &l_maybe, &conv_lm, &conv_lm) {
                    Ok(t) => t,
                    Err(e) => {
                        return Outcome::fail(
                            cases,
                            Counterexample::message(format!("typed route left the tables: {e}")),
                        )
                    }
                };
                for (x, req) in l_maybe.requests().iter().enumerate() {
                    if *req == Value::Absent {
                        continue;
                    }
                    cases += 1;
                    if got.forward_idx(x) != x {
                        return Outcome::fail(
                            cases,
                            Counterexample {
                                description: "present request moved by the round trip".into(),
                                request: Some(req.to_string()),
                                response: None,
                                morphisms: vec![got.describe()],
                            },
                        );
                    }
                    for (j, resp) in l_maybe.responses(x).iter().enumerate() {
                        cases += 1;
                        if got.backward_idx(x, j) != j {
                            return Outcome::fail(
                                cases,
                                Counterexample {
                                    description: format!(
                                        "present response rewritten: got {}",
                                        l_maybe.responses(x)[got.backward_idx(x, j)]
                                    ),
                                    request: Some(req.to_string()),
                                    response: Some(resp.to_string()),
                                    morphisms: vec![got.describe()],
                                },
                            );
                        }
                    }
                }
                Outcome::pass(cases)
            },
        );
    }

    // Distribution over choice is a full isomorphism.
    for a in ctx.corpus {
        for b in ctx.corpus {
            let instance = format!("effect={} left={} right={}", fx.name, a.name(), b.name());
            let la = lifted_container(&fx, a);
            let lb = lifted_container(&fx, b);
            let l_sum = lifted_container(&fx, &sum_container(a, b));
            let sum_l = sum_container(&la, &lb);
            let conv_ls = conv_lifted::<F, Sum<DynC, DynC>>(&conv_either(&conv, &conv));
            let conv_sl = conv_either(&conv_l, &conv_l);
            record(out, "effects/distrib-plus-round-trip", instance, || {
                let mut cases = 0;
                let there = distrib_plus::<F, DynC, DynC>()
                    .then(&distrib_plus_inv::<F, DynC, DynC>());
                let want = crate::model::FiniteMorphism::identity(&l_sum);
                if let Some(mut cx) =
                    check_agrees(&there, &want, &l_sum, &l_sum, &conv_ls, &conv_ls, &mut cases)
                {
                    cx.description = format!("distribute then recombine: {}", cx.description);
                    return Outcome::fail(cases, cx);
                }
                let back = distrib_plus_inv::<F, DynC, DynC>()
                    .then(&distrib_plus::<F, DynC, DynC>());
                let want = crate::model::FiniteMorphism::identity(&sum_l);
                match check_agrees(&back, &want, &sum_l, &sum_l, &conv_sl, &conv_sl, &mut cases) {
                    Some(mut cx) => {
                        cx.description =
                            format!("recombine then distribute: {}", cx.description);
                        Outcome::fail(cases, cx)
                    }
                    None => Outcome::pass(cases),
                }
            });
        }
    }

    // Functoriality of the effect lift over every transformer.
    for (i, a) in ctx.corpus.iter().enumerate() {
        for (j, b) in ctx.corpus.iter().enumerate() {
            let Some(fs) = ctx.hom(i, j) else { continue };
            let la = lifted_container(&fx, a);
            let lb = lifted_container(&fx, b);
            let instance = format!("effect={} dom={} cod={}", fx.name, a.name(), b.name());
            record(out, "effects/lift-map-agrees-with-tables", instance, || {
                let mut cases = 0;
                for f in fs {
                    let typed = lift_map::<F, DynC, DynC>(&to_typed(f));
                    let want = model_lift_map(&fx, f).expect("lifted table");
                    if let Some(mut cx) =
                        check_agrees(&typed, &want, &la, &lb, &conv_l, &conv_l, &mut cases)
                    {
                        cx.morphisms.push(f.describe());
                        return Outcome::fail(cases, cx);
                    }
                }
                Outcome::pass(cases)
            });

            for (k, c) in ctx.corpus.iter().enumerate() {
                let Some(gs) = ctx.hom(j, k) else { continue };
                let la = lifted_container(&fx, a);
                let lcod = lifted_container(&fx, c);
                let instance = format!(
                    "effect={} dom={} mid={} cod={}",
                    fx.name,
                    a.name(),
                    b.name(),
                    c.name()
                );
                record(out, "effects/lift-map-composition", instance, || {
                    let mut cases = 0;
                    for f in fs {
                        let f_t = to_typed(f);
                        let lifted_f = lift_map::<F, DynC, DynC>(&f_t);
                        for g in gs {
                            let g_t = to_typed(g);
                            let fg = compose_tables(f, g).expect("composes");
                            let want = model_lift_map(&fx, &fg).expect("lifted table");
                            let lhs = lift_map::<F, DynC, DynC>(&f_t.then(&g_t));
                            let rhs = lifted_f.then(&lift_map::<F, DynC, DynC>(&g_t));
                            if let Some(mut cx) = check_agrees(
                                &lhs, &want, &la, &lcod, &conv_l, &conv_l, &mut cases,
                            ) {
                                cx.description = format!("lift of composite: {}", cx.description);
                                cx.morphisms.push(f.describe());
                                cx.morphisms.push(g.describe());
                                return Outcome::fail(cases, cx);
                            }
                            if let Some(mut cx) = check_agrees(
                                &rhs, &want, &la, &lcod, &conv_l, &conv_l, &mut cases,
                            ) {
                                cx.description = format!("composite of lifts: {}", cx.description);
                                cx.morphisms.push(f.describe());
                                cx.morphisms.push(g.describe());
                                return Outcome::fail(cases, cx);
                            }
                        }
                    }
                    Outcome::pass(cases)
                });
            }
        }
    }
}

/// For the trivial effect the optional distribution is a two-sided
/// isomorphism: nothing decorates an absent exchange, so nothing is lost.
fn distrib_maybe_identity_iso(ctx: &Ctx<'_>, out: &mut Vec<LawReport>) {
    let fx = IdentityEffect::model();
    let conv = conv_value();
    for c in ctx.corpus {
        let l_maybe = lifted_container(&fx, &maybe_container(c));
        let conv_lm =
            conv_lifted::<IdentityEffect, MaybeAll<DynC>>(&conv_option(&conv));
        record(out, "effects/distrib-maybe-identity-iso", inst1(c), || {
            let typed = distrib_maybe::<IdentityEffect, DynC>()
                .then(&distrib_maybe_inv::<IdentityEffect, DynC>());
            let want = crate::model::FiniteMorphism::identity(&l_maybe);
            let mut cases = 0;
            match check_agrees(&typed, &want, &l_maybe, &l_maybe, &conv_lm, &conv_lm, &mut cases)
            {
                Some(cx) => Outcome::fail(cases, cx),
                None => Outcome::pass(cases),
            }
        });
    }
}

fn writer_costate(
    c: &FiniteContainer,
    handler: &[usize],
    sym: u8,
) -> Costate<Lifted<WriterEffect, DynC>> {
    let c = c.clone();
    let handler = handler.to_vec();
    costate::<Lifted<WriterEffect, DynC>>(move |q: Value| {
        let i = c.request_index(&q).expect("request in boundary");
        (Trace::symbol(sym), c.responses(i)[handler[i]].clone())
    })
}

/// Two logged handlers in sequence: the first logs before the second, the
/// first answer picks the second request, and both answers come back.
fn seqm_writer_order(ctx: &Ctx<'_>, out: &mut Vec<LawReport>) {
    for a in ctx.corpus {
        for b in ctx.corpus {
            let instance = format!("first={} second={}", a.name(), b.name());
            record(out, "effects/seqm-writer-order", instance, || {
                let mut cases = 0;
                let handlers_a = enumerate_handlers(a);
                let handlers_b = enumerate_handlers(b);
                for h1 in &handlers_a {
                    let co1 = writer_costate(a, h1, 0);
                    for h2 in &handlers_b {
                        let co2 = writer_costate(b, h2, 1);
                        let combined = (ctx.hooks.seq_m_writer)(&co1, &co2);
                        for (xi, x) in a.requests().iter().enumerate() {
                            let arity = a.responses(xi).len();
                            for rest in index_tuples(&vec![b.request_count(); arity]) {
                                cases += 1;
                                let a2 = a.clone();
                                let b2 = b.clone();
                                let rest2 = rest.clone();
                                let req = SeqReq::<DynC, DynC>::new(x.clone(), move |ra| {
                                    let j = a2
                                        .response_index(xi, ra)
                                        .expect("answer belongs to the first request");
                                    b2.requests()[rest2[j]].clone()
                                });
                                let (trace, (ra, rb)) = exec(&combined, req);
                                let want_ra = a.responses(xi)[h1[xi]].clone();
                                let second_req = rest[h1[xi]];
                                let want_rb = b.responses(second_req)[h2[second_req]].clone();
                                let want_trace = Trace::symbol(0).append(&Trace::symbol(1));
                                if trace != want_trace || ra != want_ra || rb != want_rb {
                                    return Outcome::fail(
                                        cases,
                                        Counterexample {
                                            description: format!(
                                                "sequenced handlers answered ({trace}, {ra}, {rb}), want ({want_trace}, {want_ra}, {want_rb})"
                                            ),
                                            request: Some(x.to_string()),
                                            response: None,
                                            morphisms: vec![],
                                        },
                                    );
                                }
                            }
                        }
                    }
                }
                Outcome::pass(cases)
            });
        }
    }
}

/// One logged handler walked along a whole session tree: the log grows by
/// one symbol per step, in traversal order, and the path follows the
/// handler's answers.
fn starm_writer_log(ctx: &Ctx<'_>, out: &mut Vec<LawReport>) {
    let conv = conv_value();
    let depth = 2usize.min(ctx.config.star_depth.max(1));
    for c in ctx.corpus {
        let sm = StarModel::new(c, depth);
        let conv_st = conv_star(&conv, c);
        record(
            out,
            "effects/starm-writer-log",
            format!("c={} depth={depth}", c.name()),
            || {
                let mut cases = 0;
                for handler in enumerate_handlers(c) {
                    let star = star_m::<WriterEffect, DynC>(&writer_costate(c, &handler, 0));
                    for shape_idx in 0..sm.shape_count() {
                        cases += 1;
                        let shape_v = &sm.container().requests()[shape_idx];
                        let (trace, path) = exec(&star, (conv_st.to_req)(shape_v));
                        let (want_path, steps) = walk_path(&sm, c, &handler, shape_idx);
                        let mut want_trace = Trace::empty();
                        for _ in 0..steps {
                            want_trace = want_trace.append(&Trace::symbol(0));
                        }
                        let got_path = (conv_st.from_resp)(&path);
                        if trace != want_trace || got_path != want_path {
                            return Outcome::fail(
                                cases,
                                Counterexample {
                                    description: format!(
                                        "walking the tree gave ({trace}, {got_path}), want ({want_trace}, {want_path})"
                                    ),
                                    request: Some(shape_v.to_string()),
                                    response: None,
                                    morphisms: vec![],
                                },
                            );
                        }
                    }
                }
                Outcome::pass(cases)
            },
        );
    }
}

fn walk_path(
    sm: &StarModel,
    c: &FiniteContainer,
    handler: &[usize],
    shape: usize,
) -> (Value, usize) {
    match sm.desc(shape) {
        StarDesc::Done => (Value::Done, 0),
        StarDesc::More { req, subs } => {
            let j = handler[*req];
            let head = c.responses(*req)[j].clone();
            let (tail, n) = walk_path(sm, c, handler, subs[j]);
            (Value::step(head, tail), n + 1)
        }
    }
}

/// One failing handler walked along a session tree: the first step that
/// asks the poisoned request cuts the whole traversal to nothing.
fn starm_option_cut(ctx: &Ctx<'_>, out: &mut Vec<LawReport>) {
    let conv = conv_value();
    let depth = 2usize.min(ctx.config.star_depth.max(1));
    for c in ctx.corpus {
        let sm = StarModel::new(c, depth);
        let conv_st = conv_star(&conv, c);
        record(
            out,
            "effects/starm-option-cut",
            format!("c={} depth={depth}", c.name()),
            || {
                let mut cases = 0;
                for bad in 0..c.request_count() {
                    for handler in enumerate_handlers(c) {
                        let c2 = c.clone();
                        let h2 = handler.clone();
                        let failing = costate::<Lifted<OptionEffect, DynC>>(move |q: Value| {
                            let i = c2.request_index(&q).expect("request in boundary");
                            if i == bad {
                                None
                            } else {
                                Some(c2.responses(i)[h2[i]].clone())
                            }
                        });
                        let star = star_m::<OptionEffect, DynC>(&failing);
                        for shape_idx in 0..sm.shape_count() {
                            cases += 1;
                            let shape_v = &sm.container().requests()[shape_idx];
                            let got = exec(&star, (conv_st.to_req)(shape_v));
                            let got_v = OptionEffect::value_from(&got, &|p: &StarPath<Value>| {
                                (conv_st.from_resp)(p)
                            });
                            let want = match walk_cut(&sm, c, &handler, bad, shape_idx) {
                                None => Value::Absent,
                                Some(p) => Value::present(p),
                            };
                            if got_v != want {
                                return Outcome::fail(
                                    cases,
                                    Counterexample {
                                        description: format!(
                                            "cut traversal gave {got_v}, want {want}"
                                        ),
                                        request: Some(shape_v.to_string()),
                                        response: None,
                                        morphisms: vec![],
                                    },
                                );
                            }
                        }
                    }
                }
                Outcome::pass(cases)
            },
        );
    }
}

fn walk_cut(
    sm: &StarModel,
    c: &FiniteContainer,
    handler: &[usize],
    bad: usize,
    shape: usize,
) -> Option<Value> {
    match sm.desc(shape) {
        StarDesc::Done => Some(Value::Done),
        StarDesc::More { req, subs } => {
            if *req == bad {
                return None;
            }
            let j = handler[*req];
            let tail = walk_cut(sm, c, handler, bad, subs[j])?;
            Some(Value::step(c.responses(*req)[j].clone(), tail))
        }
    }
}

/// Lifting a held request changes nothing about the request.
fn lift_state_request(ctx: &Ctx<'_>, out: &mut Vec<LawReport>) {
    for c in ctx.corpus {
        record(out, "effects/lift-state-request", inst1(c), || {
            let mut cases = 0;
            for x in c.requests() {
                for got in [
                    value(&lift_state::<IdentityEffect, DynC>(&state::<DynC>(x.clone()))),
                    value(&lift_state::<OptionEffect, DynC>(&state::<DynC>(x.clone()))),
                    value(&lift_state::<WriterEffect, DynC>(&state::<DynC>(x.clone()))),
                ] {
                    cases += 1;
                    if got != *x {
                        return Outcome::fail(
                            cases,
                            Counterexample {
                                description: format!("lifted state holds {got}"),
                                request: Some(x.to_string()),
                                response: None,
                                morphisms: vec![],
                            },
                        );
                    }
                }
            }
            Outcome::pass(cases)
        });
    }
}
