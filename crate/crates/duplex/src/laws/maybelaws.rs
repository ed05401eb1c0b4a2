//! Laws for the optional-exchange monad: functoriality of the lift, the
//! three monad equations for flatten, agreement of effectful composition
//! with the model route, and the renaming between `maybe(a)` and
//! `sum(1, a)`.

use super::{check_agrees, diff_tables, inst1, inst2, inst3, record, Ctx, Outcome};
use crate::combinators::{
    kleisli_compose, maybe_all_map, maybe_iso_from, maybe_iso_to, maybe_join, maybe_u, maybe_unit,
    MaybeAll,
};
use crate::container::{identity, Morphism, Unit};
use crate::laws::report::LawReport;
use crate::model::bridge::{
    conv_either, conv_option, conv_unit, conv_value, from_table, to_typed, DynC,
};
use crate::model::derived::{
    maybe_container, maybe_iso_from_table, maybe_iso_to_table, maybe_join_table, maybe_unit_table,
    model_kleisli, model_maybe_map, sum_container, tabulate, unit_container,
};
use crate::model::{compose_tables, enumerate_morphisms, FiniteMorphism, Value};

pub(crate) fn run(ctx: &Ctx<'_>, out: &mut Vec<LawReport>) {
    let conv = conv_value();
    let conv_m = conv_option(&conv);
    let conv_mm = conv_option(&conv_m);
    let conv_mmm = conv_option(&conv_mm);

    for c in ctx.corpus {
        let mc = maybe_container(c);
        let mmc = maybe_container(&mc);
        let mmmc = maybe_container(&mmc);

        record(out, "maybe/map-identity", inst1(c), || {
            let typed = maybe_all_map(&identity::<DynC>());
            let want = FiniteMorphism::identity(&mc);
            let mut cases = 0;
            match check_agrees(&typed, &want, &mc, &mc, &conv_m, &conv_m, &mut cases) {
                Some(cx) => Outcome::fail(cases, cx),
                None => Outcome::pass(cases),
            }
        });

        record(out, "maybe/join-agrees-with-tables", inst1(c), || {
            let typed = (ctx.hooks.maybe_join_dyn)();
            let want = maybe_join_table(c).expect("join table");
            let mut cases = 0;
            match check_agrees(&typed, &want, &mmc, &mc, &conv_mm, &conv_m, &mut cases) {
                Some(cx) => Outcome::fail(cases, cx),
                None => Outcome::pass(cases),
            }
        });

        record(out, "maybe/unit-agrees-with-tables", inst1(c), || {
            let typed = maybe_unit::<DynC>();
            let want = maybe_unit_table(c).expect("unit table");
            let mut cases = 0;
            match check_agrees(&typed, &want, c, &mc, &conv, &conv_m, &mut cases) {
                Some(cx) => Outcome::fail(cases, cx),
                None => Outcome::pass(cases),
            }
        });

        record(out, "maybe/monad-left-unit", inst1(c), || {
            // inject at the option level, flatten: nothing happened
            let typed = maybe_unit::<MaybeAll<DynC>>().then(&(ctx.hooks.maybe_join_dyn)());
            let want = FiniteMorphism::identity(&mc);
            let mut cases = 0;
            match check_agrees(&typed, &want, &mc, &mc, &conv_m, &conv_m, &mut cases) {
                Some(cx) => Outcome::fail(cases, cx),
                None => Outcome::pass(cases),
            }
        });

        record(out, "maybe/monad-right-unit", inst1(c), || {
            // inject under the option level, flatten: nothing happened
            let typed = maybe_all_map(&maybe_unit::<DynC>()).then(&(ctx.hooks.maybe_join_dyn)());
            let want = FiniteMorphism::identity(&mc);
            let mut cases = 0;
            match check_agrees(&typed, &want, &mc, &mc, &conv_m, &conv_m, &mut cases) {
                Some(cx) => Outcome::fail(cases, cx),
                None => Outcome::pass(cases),
            }
        });

        record(out, "maybe/join-associativity", inst1(c), || {
            // flatten the outer two levels first, or the inner two first
            let join_c = (ctx.hooks.maybe_join_dyn)();
            let lhs_typed = maybe_join::<MaybeAll<DynC>>().then(&join_c);
            let rhs_typed = maybe_all_map(&join_c).then(&join_c);

            let join_table = maybe_join_table(c).expect("join table");
            let join_above = maybe_join_table(&mc).expect("join table");
            let mapped_join = model_maybe_map(&join_table).expect("mapped join");
            let lhs_want =
                compose_tables(&join_above, &join_table).expect("outer-then-inner composes");
            let rhs_want =
                compose_tables(&mapped_join, &join_table).expect("inner-then-outer composes");

            let mut cases = 0;
            if let Some(mut cx) = diff_tables(&lhs_want, &rhs_want, &mut cases) {
                cx.description =
                    format!("model routes already disagree: {}", cx.description);
                return Outcome::fail(cases, cx);
            }
            if let Some(cx) =
                check_agrees(&lhs_typed, &lhs_want, &mmmc, &mc, &conv_mmm, &conv_m, &mut cases)
            {
                return Outcome::fail(cases, cx);
            }
            match check_agrees(&rhs_typed, &rhs_want, &mmmc, &mc, &conv_mmm, &conv_m, &mut cases)
            {
                Some(cx) => Outcome::fail(cases, cx),
                None => Outcome::pass(cases),
            }
        });

        record(out, "maybe/iso-round-trip-there", inst1(c), || {
            let typed = maybe_iso_to::<DynC>().then(&maybe_iso_from::<DynC>());
            let want = FiniteMorphism::identity(&mc);
            let mut cases = 0;
            match check_agrees(&typed, &want, &mc, &mc, &conv_m, &conv_m, &mut cases) {
                Some(cx) => Outcome::fail(cases, cx),
                None => Outcome::pass(cases),
            }
        });

        record(out, "maybe/iso-round-trip-back", inst1(c), || {
            let typed = maybe_iso_from::<DynC>().then(&maybe_iso_to::<DynC>());
            let sum_c = sum_container(&unit_container(), c);
            let want = FiniteMorphism::identity(&sum_c);
            let conv_s = conv_either(&conv_unit(), &conv);
            let mut cases = 0;
            match check_agrees(&typed, &want, &sum_c, &sum_c, &conv_s, &conv_s, &mut cases) {
                Some(cx) => Outcome::fail(cases, cx),
                None => Outcome::pass(cases),
            }
        });

        record(out, "maybe/iso-agrees-with-tables", inst1(c), || {
            let sum_c = sum_container(&unit_container(), c);
            let conv_s = conv_either(&conv_unit(), &conv);
            let mut cases = 0;
            let there = maybe_iso_to::<DynC>();
            let there_want = maybe_iso_to_table(c).expect("iso table");
            if let Some(cx) =
                check_agrees(&there, &there_want, &mc, &sum_c, &conv_m, &conv_s, &mut cases)
            {
                return Outcome::fail(cases, cx);
            }
            let back = maybe_iso_from::<DynC>();
            let back_want = maybe_iso_from_table(c).expect("iso table");
            match check_agrees(&back, &back_want, &sum_c, &mc, &conv_s, &conv_m, &mut cases) {
                Some(cx) => Outcome::fail(cases, cx),
                None => Outcome::pass(cases),
            }
        });
    }

    record(out, "maybe/collapse-unit", "c=1".to_string(), || {
        // collapsing an optional trivial exchange: forward forgets,
        // backward restores exactly the request's own shape
        let unit = unit_container();
        let m1 = maybe_container(&unit);
        let want = tabulate(&m1, &unit, |_| Value::Unit, |req, _| req.clone())
            .expect("collapse table");
        let typed: Morphism<MaybeAll<Unit>, Unit> = maybe_u();
        let conv_mu = conv_option(&conv_unit());
        let mut cases = 0;
        match check_agrees(&typed, &want, &m1, &unit, &conv_mu, &conv_unit(), &mut cases) {
            Some(cx) => Outcome::fail(cases, cx),
            None => Outcome::pass(cases),
        }
    });

    // Functoriality: over every transformer and every composable pair.
    for (i, a) in ctx.corpus.iter().enumerate() {
        for (j, b) in ctx.corpus.iter().enumerate() {
            let Some(fs) = ctx.hom(i, j) else { continue };
            let ma = maybe_container(a);
            let mb = maybe_container(b);
            record(out, "maybe/map-agrees-with-tables", inst2(a, b), || {
                let mut cases = 0;
                for f in fs {
                    let typed = maybe_all_map(&to_typed(f));
                    let want = model_maybe_map(f).expect("mapped table");
                    if let Some(mut cx) =
                        check_agrees(&typed, &want, &ma, &mb, &conv_m, &conv_m, &mut cases)
                    {
                        cx.morphisms.push(f.describe());
                        return Outcome::fail(cases, cx);
                    }
                }
                Outcome::pass(cases)
            });

            for (k, c) in ctx.corpus.iter().enumerate() {
                let Some(gs) = ctx.hom(j, k) else { continue };
                let mc = maybe_container(c);
                record(out, "maybe/map-composition", inst3(a, b, c), || {
                    let mut cases = 0;
                    for f in fs {
                        let f_t = to_typed(f);
                        let mapped_f = maybe_all_map(&f_t);
                        for g in gs {
                            let g_t = to_typed(g);
                            let want = model_maybe_map(&compose_tables(f, g).expect("composes"))
                                .expect("mapped table");
                            let lhs = maybe_all_map(&f_t.then(&g_t));
                            let rhs = mapped_f.then(&maybe_all_map(&g_t));
                            if let Some(mut cx) =
                                check_agrees(&lhs, &want, &ma, &mc, &conv_m, &conv_m, &mut cases)
                            {
                                cx.description =
                                    format!("map of composite: {}", cx.description);
                                cx.morphisms.push(f.describe());
                                cx.morphisms.push(g.describe());
                                return Outcome::fail(cases, cx);
                            }
                            if let Some(mut cx) =
                                check_agrees(&rhs, &want, &ma, &mc, &conv_m, &conv_m, &mut cases)
                            {
                                cx.description =
                                    format!("composite of maps: {}", cx.description);
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

    // Effectful composition agrees with the model route, over every pair
    // of partial transformers whose spaces fit the enumeration caps.
    for a in ctx.corpus {
        for b in ctx.corpus {
            let mb = maybe_container(b);
            let Ok(fs) = enumerate_morphisms(a, &mb, &ctx.config.caps) else { continue };
            for c in ctx.corpus {
                let mc = maybe_container(c);
                let Ok(gs) = enumerate_morphisms(b, &mc, &ctx.config.caps) else { continue };
                record(out, "maybe/kleisli-agrees-with-model", inst3(a, b, c), || {
                    let mut cases = 0;
                    for f in &fs {
                        let f_t: Morphism<DynC, MaybeAll<DynC>> = from_table(f, &conv, &conv_m);
                        for g in &gs {
                            let g_t: Morphism<DynC, MaybeAll<DynC>> =
                                from_table(g, &conv, &conv_m);
                            let typed = f_t
                                .then(&maybe_all_map(&g_t))
                                .then(&(ctx.hooks.maybe_join_dyn)());
                            let want = model_kleisli(f, g, c).expect("kleisli table");
                            if let Some(mut cx) =
                                check_agrees(&typed, &want, a, &mc, &conv, &conv_m, &mut cases)
                            {
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

    // Effectful composition of total transformers is plain composition.
    for (i, a) in ctx.corpus.iter().enumerate() {
        for (j, b) in ctx.corpus.iter().enumerate() {
            let Some(fs) = ctx.hom(i, j) else { continue };
            for (k, c) in ctx.corpus.iter().enumerate() {
                let Some(gs) = ctx.hom(j, k) else { continue };
                let mc = maybe_container(c);
                record(out, "maybe/kleisli-on-pure", inst3(a, b, c), || {
                    let unit_c_table = maybe_unit_table(c).expect("unit table");
                    let mut cases = 0;
                    for f in fs {
                        let f_u = to_typed(f).then(&maybe_unit::<DynC>());
                        for g in gs {
                            let g_u = to_typed(g).then(&maybe_unit::<DynC>());
                            let typed = kleisli_compose(&f_u, &g_u);
                            let want = compose_tables(
                                &compose_tables(f, g).expect("composes"),
                                &unit_c_table,
                            )
                            .expect("composes");
                            if let Some(mut cx) =
                                check_agrees(&typed, &want, a, &mc, &conv, &conv_m, &mut cases)
                            {
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
