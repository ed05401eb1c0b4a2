//! Composition laws: identity on both sides, agreement of the typed
//! composition with the table route, and associativity.

use super::{check_agrees, diff_tables, inst2, inst3, record, Ctx, Outcome};
use crate::laws::report::LawReport;
use crate::model::bridge::{conv_value, to_typed};
use crate::model::{compose_tables, FiniteMorphism};

pub(crate) fn run(ctx: &Ctx<'_>, out: &mut Vec<LawReport>) {
    let conv = conv_value();

    for (i, a) in ctx.corpus.iter().enumerate() {
        for (j, b) in ctx.corpus.iter().enumerate() {
            let Some(homs) = ctx.hom(i, j) else { continue };

            record(out, "category/left-identity", inst2(a, b), || {
                let id_a = FiniteMorphism::identity(a);
                let id_t = to_typed(&id_a);
                let mut cases = 0;
                for m in homs {
                    let typed = (ctx.hooks.compose_dyn)(&id_t, &to_typed(m));
                    if let Some(cx) = check_agrees(&typed, m, a, b, &conv, &conv, &mut cases) {
                        return Outcome::fail(cases, cx);
                    }
                }
                Outcome::pass(cases)
            });

            record(out, "category/right-identity", inst2(a, b), || {
                let id_b = FiniteMorphism::identity(b);
                let id_t = to_typed(&id_b);
                let mut cases = 0;
                for m in homs {
                    let typed = (ctx.hooks.compose_dyn)(&to_typed(m), &id_t);
                    if let Some(cx) = check_agrees(&typed, m, a, b, &conv, &conv, &mut cases) {
                        return Outcome::fail(cases, cx);
                    }
                }
                Outcome::pass(cases)
            });
        }
    }

    // The typed composition agrees with the independently computed table
    // composition on every composable pair.
    for (i, a) in ctx.corpus.iter().enumerate() {
        for (j, b) in ctx.corpus.iter().enumerate() {
            for (k, c) in ctx.corpus.iter().enumerate() {
                let (Some(fs), Some(gs)) = (ctx.hom(i, j), ctx.hom(j, k)) else { continue };
                record(out, "category/compose-agrees-with-tables", inst3(a, b, c), || {
                    let mut cases = 0;
                    for f in fs {
                        let f_t = to_typed(f);
                        for g in gs {
                            let want = compose_tables(f, g).expect("middles match");
                            let typed = (ctx.hooks.compose_dyn)(&f_t, &to_typed(g));
                            if let Some(mut cx) =
                                check_agrees(&typed, &want, a, c, &conv, &conv, &mut cases)
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

    // Associativity, checked on the table route over every composable
    // triple. (The typed route agrees with the table route pointwise by
    // the law above, so this transfers.)
    for (i, a) in ctx.corpus.iter().enumerate() {
        for (j, b) in ctx.corpus.iter().enumerate() {
            for (k, c) in ctx.corpus.iter().enumerate() {
                for (l, d) in ctx.corpus.iter().enumerate() {
                    let (Some(fs), Some(gs), Some(hs)) =
                        (ctx.hom(i, j), ctx.hom(j, k), ctx.hom(k, l))
                    else {
                        continue;
                    };
                    let instance = format!(
                        "chain={}=>{}=>{}=>{}",
                        a.name(),
                        b.name(),
                        c.name(),
                        d.name()
                    );
                    record(out, "category/associativity", instance, || {
                        let mut cases = 0;
                        for f in fs {
                            for g in gs {
                                let fg = compose_tables(f, g).expect("middles match");
                                for h in hs {
                                    let gh = compose_tables(g, h).expect("middles match");
                                    let lhs = compose_tables(&fg, h).expect("middles match");
                                    let rhs = compose_tables(f, &gh).expect("middles match");
                                    if let Some(mut cx) = diff_tables(&lhs, &rhs, &mut cases) {
                                        cx.description = format!(
                                            "association order changes the composite: {}",
                                            cx.description
                                        );
                                        cx.morphisms = vec![
                                            f.describe(),
                                            g.describe(),
                                            h.describe(),
                                        ];
                                        return Outcome::fail(cases, cx);
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
