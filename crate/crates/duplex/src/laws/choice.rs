//! Laws for choice: the two-sided lift is a functor, collapsing a
//! self-choice agrees with its table, and collapsing undoes either
//! injection.

use std::rc::Rc;

use either::Either;

use super::{check_agrees, inst1, record, Ctx, Outcome};
use crate::combinators::{coproduct_map, Sum};
use crate::container::{identity, Morphism, Step};
use crate::laws::report::LawReport;
use crate::model::bridge::{conv_either, conv_value, to_typed, DynC};
use crate::model::derived::{diagonal_table, model_sum_map, sum_container, unit_container};
use crate::model::{compose_tables, hom_count, FiniteContainer, FiniteMorphism, Value};

pub(crate) fn run(ctx: &Ctx<'_>, out: &mut Vec<LawReport>) {
    let conv = conv_value();
    let conv_s = conv_either(&conv, &conv);

    for a in ctx.corpus {
        for b in ctx.corpus {
            record(
                out,
                "choice/map-identity",
                format!("left={} right={}", a.name(), b.name()),
                || {
                    let typed = coproduct_map(&identity::<DynC>(), &identity::<DynC>());
                    let sum_ab = sum_container(a, b);
                    let want = FiniteMorphism::identity(&sum_ab);
                    let mut cases = 0;
                    match check_agrees(&typed, &want, &sum_ab, &sum_ab, &conv_s, &conv_s, &mut cases)
                    {
                        Some(cx) => Outcome::fail(cases, cx),
                        None => Outcome::pass(cases),
                    }
                },
            );
        }
    }

    // Functoriality on objects: each side translated independently.
    for (i, a) in ctx.corpus.iter().enumerate() {
        for (k, c) in ctx.corpus.iter().enumerate() {
            let Some(fs) = ctx.hom(i, k) else { continue };
            for (j, b) in ctx.corpus.iter().enumerate() {
                for (l, d) in ctx.corpus.iter().enumerate() {
                    let Some(gs) = ctx.hom(j, l) else { continue };
                    let instance = format!(
                        "left={}=>{} right={}=>{}",
                        a.name(),
                        c.name(),
                        b.name(),
                        d.name()
                    );
                    let dom = sum_container(a, b);
                    let cod = sum_container(c, d);
                    record(out, "choice/map-agrees-with-tables", instance, || {
                        let mut cases = 0;
                        for f in fs {
                            let f_t = to_typed(f);
                            for g in gs {
                                let typed = coproduct_map(&f_t, &to_typed(g));
                                let want = model_sum_map(f, g).expect("sum table");
                                if let Some(mut cx) = check_agrees(
                                    &typed, &want, &dom, &cod, &conv_s, &conv_s, &mut cases,
                                ) {
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

    // Functoriality on composition, with both sides transforming in step.
    for (i, a) in ctx.corpus.iter().enumerate() {
        for (j, b) in ctx.corpus.iter().enumerate() {
            let Some(fs) = ctx.hom(i, j) else { continue };
            for (k, c) in ctx.corpus.iter().enumerate() {
                let Some(gs) = ctx.hom(j, k) else { continue };
                let instance = format!("chain={}=>{}=>{} paired", a.name(), b.name(), c.name());
                let dom = sum_container(a, a);
                let cod = sum_container(c, c);
                record(out, "choice/map-composition", instance, || {
                    let mut cases = 0;
                    for f in fs {
                        let f_t = to_typed(f);
                        let side_f = coproduct_map(&f_t, &f_t);
                        for g in gs {
                            let g_t = to_typed(g);
                            let fg = compose_tables(f, g).expect("composes");
                            let want = model_sum_map(&fg, &fg).expect("sum table");
                            let lhs = coproduct_map(&f_t.then(&g_t), &f_t.then(&g_t));
                            let rhs = side_f.then(&coproduct_map(&g_t, &g_t));
                            if let Some(mut cx) = check_agrees(
                                &lhs, &want, &dom, &cod, &conv_s, &conv_s, &mut cases,
                            ) {
                                cx.description = format!("map of composite: {}", cx.description);
                                cx.morphisms.push(f.describe());
                                cx.morphisms.push(g.describe());
                                return Outcome::fail(cases, cx);
                            }
                            if let Some(mut cx) = check_agrees(
                                &rhs, &want, &dom, &cod, &conv_s, &conv_s, &mut cases,
                            ) {
                                cx.description = format!("composite of maps: {}", cx.description);
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

    // Functoriality on composition with all six transformers independent,
    // over the boundaries whose transformer spaces stay small.
    let slice: Vec<&FiniteContainer> = ctx
        .corpus
        .iter()
        .filter(|c| hom_count(c, &unit_container()) <= 2)
        .collect();
    for a1 in &slice {
        for b1 in &slice {
            for c1 in &slice {
                for a2 in &slice {
                    for b2 in &slice {
                        for c2 in &slice {
                            let instance = format!(
                                "left={}=>{}=>{} right={}=>{}=>{}",
                                a1.name(),
                                b1.name(),
                                c1.name(),
                                a2.name(),
                                b2.name(),
                                c2.name()
                            );
                            let dom = sum_container(a1, a2);
                            let cod = sum_container(c1, c2);
                            record(out, "choice/map-composition-mixed", instance, || {
                                let caps = &ctx.config.caps;
                                let fs1 = crate::model::enumerate_morphisms(a1, b1, caps)
                                    .expect("slice fits caps");
                                let gs1 = crate::model::enumerate_morphisms(b1, c1, caps)
                                    .expect("slice fits caps");
                                let fs2 = crate::model::enumerate_morphisms(a2, b2, caps)
                                    .expect("slice fits caps");
                                let gs2 = crate::model::enumerate_morphisms(b2, c2, caps)
                                    .expect("slice fits caps");
                                let mut cases = 0;
                                for f1 in &fs1 {
                                    let f1_t = to_typed(f1);
                                    for g1 in &gs1 {
                                        let fg1 = compose_tables(f1, g1).expect("composes");
                                        let left_whole = to_typed(&fg1);
                                        let g1_t = to_typed(g1);
                                        for f2 in &fs2 {
                                            let f2_t = to_typed(f2);
                                            for g2 in &gs2 {
                                                let fg2 =
                                                    compose_tables(f2, g2).expect("composes");
                                                let want = model_sum_map(&fg1, &fg2)
                                                    .expect("sum table");
                                                let lhs = coproduct_map(
                                                    &left_whole,
                                                    &to_typed(&fg2),
                                                );
                                                let rhs = coproduct_map(&f1_t, &f2_t)
                                                    .then(&coproduct_map(&g1_t, &to_typed(g2)));
                                                if let Some(mut cx) = check_agrees(
                                                    &lhs, &want, &dom, &cod, &conv_s, &conv_s,
                                                    &mut cases,
                                                ) {
                                                    cx.description = format!(
                                                        "map of composites: {}",
                                                        cx.description
                                                    );
                                                    return Outcome::fail(cases, cx);
                                                }
                                                if let Some(mut cx) = check_agrees(
                                                    &rhs, &want, &dom, &cod, &conv_s, &conv_s,
                                                    &mut cases,
                                                ) {
                                                    cx.description = format!(
                                                        "composite of maps: {}",
                                                        cx.description
                                                    );
                                                    return Outcome::fail(cases, cx);
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
            }
        }
    }

    for c in ctx.corpus {
        record(out, "choice/collapse-agrees-with-tables", inst1(c), || {
            let typed = (ctx.hooks.diagonal_dyn)();
            let want = diagonal_table(c).expect("collapse table");
            let sum_cc = sum_container(c, c);
            let mut cases = 0;
            match check_agrees(&typed, &want, &sum_cc, c, &conv_s, &conv, &mut cases) {
                Some(cx) => Outcome::fail(cases, cx),
                None => Outcome::pass(cases),
            }
        });

        record(out, "choice/inject-collapse-identity", inst1(c), || {
            // injecting into either side and collapsing is the identity
            let inl: Morphism<DynC, Sum<DynC, DynC>> = Morphism::new(|x: Value| Step {
                request: Either::Left(x),
                back: Rc::new(|resp: Either<Value, Value>| match resp {
                    Either::Left(r) => r,
                    Either::Right(_) => Value::violation("left injection answered on the right"),
                }),
            });
            let inr: Morphism<DynC, Sum<DynC, DynC>> = Morphism::new(|x: Value| Step {
                request: Either::Right(x),
                back: Rc::new(|resp: Either<Value, Value>| match resp {
                    Either::Right(r) => r,
                    Either::Left(_) => Value::violation("right injection answered on the left"),
                }),
            });
            let want = FiniteMorphism::identity(c);
            let mut cases = 0;
            let left_route = inl.then(&(ctx.hooks.diagonal_dyn)());
            if let Some(mut cx) =
                check_agrees(&left_route, &want, c, c, &conv, &conv, &mut cases)
            {
                cx.description = format!("left injection: {}", cx.description);
                return Outcome::fail(cases, cx);
            }
            let right_route = inr.then(&(ctx.hooks.diagonal_dyn)());
            match check_agrees(&right_route, &want, c, c, &conv, &conv, &mut cases) {
                Some(mut cx) => {
                    cx.description = format!("right injection: {}", cx.description);
                    Outcome::fail(cases, cx)
                }
                None => Outcome::pass(cases),
            }
        });
    }
}
