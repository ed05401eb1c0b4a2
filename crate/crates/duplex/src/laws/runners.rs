//! Laws for the running layer: states hold exactly their request,
//! costates answer exactly by their handler, and driving a request
//! through a transformer into a handler decomposes into the forward
//! translation, the handler, and the backward translation.

use super::{costate_of, inst1, inst2, record, Ctx, Outcome};
use crate::container::{exec, identity, run as drive, state, value, Context};
use crate::laws::report::{Counterexample, LawReport};
use crate::model::bridge::{to_typed, DynC};
use crate::model::enumerate_handlers;

pub(crate) fn run(ctx: &Ctx<'_>, out: &mut Vec<LawReport>) {
    for c in ctx.corpus {
        record(out, "run/value-of-state", inst1(c), || {
            let mut cases = 0;
            for x in c.requests() {
                cases += 1;
                let got = value(&state::<DynC>(x.clone()));
                if got != *x {
                    return Outcome::fail(
                        cases,
                        Counterexample {
                            description: format!("state does not hold its request: got {got}"),
                            request: Some(x.to_string()),
                            response: None,
                            morphisms: vec![],
                        },
                    );
                }
            }
            Outcome::pass(cases)
        });

        record(out, "run/state-of-value", inst1(c), || {
            // a state is observable only through `value`, so rebuilding
            // from the observation must be undetectable
            let mut cases = 0;
            for x in c.requests() {
                cases += 1;
                let st = state::<DynC>(x.clone());
                let rebuilt = state::<DynC>(value(&st));
                if value(&rebuilt) != value(&st) {
                    return Outcome::fail(
                        cases,
                        Counterexample {
                            description: "rebuilding a state from its value changes it".into(),
                            request: Some(x.to_string()),
                            response: None,
                            morphisms: vec![],
                        },
                    );
                }
            }
            Outcome::pass(cases)
        });

        record(out, "run/exec-of-costate", inst1(c), || {
            let mut cases = 0;
            for handler in enumerate_handlers(c) {
                let co = costate_of(c, &handler);
                for (i, x) in c.requests().iter().enumerate() {
                    cases += 1;
                    let got = exec(&co, x.clone());
                    let want = &c.responses(i)[handler[i]];
                    if got != *want {
                        return Outcome::fail(
                            cases,
                            Counterexample {
                                description: format!(
                                    "costate does not answer by its handler: got {got}, want {want}"
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

        record(out, "run/costate-of-exec", inst1(c), || {
            // a costate is observable only through `exec`: wrapping its
            // observations back up must answer identically
            let mut cases = 0;
            for handler in enumerate_handlers(c) {
                let co = costate_of(c, &handler);
                let co2 = co.clone();
                let rebuilt =
                    crate::container::costate::<DynC>(move |x| exec(&co2, x));
                for x in c.requests() {
                    cases += 1;
                    if exec(&rebuilt, x.clone()) != exec(&co, x.clone()) {
                        return Outcome::fail(
                            cases,
                            Counterexample {
                                description: "rebuilding a costate from exec changes its answers"
                                    .into(),
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

        record(out, "run/run-identity", inst1(c), || {
            // driving through the identity is exactly asking the handler
            let mut cases = 0;
            let id = identity::<DynC>();
            for handler in enumerate_handlers(c) {
                let co = costate_of(c, &handler);
                for (i, x) in c.requests().iter().enumerate() {
                    cases += 1;
                    let got = drive(&state::<DynC>(x.clone()), &co, &id);
                    let want = &c.responses(i)[handler[i]];
                    if got != *want {
                        return Outcome::fail(
                            cases,
                            Counterexample {
                                description: format!(
                                    "run through identity differs from the handler: got {got}, want {want}"
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
    }

    // Driving a request through a transformer decomposes into: translate
    // the request forward, answer it, translate the answer backward. The
    // expectation is computed straight off the tables.
    for (i, a) in ctx.corpus.iter().enumerate() {
        for (j, b) in ctx.corpus.iter().enumerate() {
            let Some(homs) = ctx.hom(i, j) else { continue };
            record(out, "run/run-decomposition", inst2(a, b), || {
                let mut cases = 0;
                for m in homs {
                    let typed = to_typed(m);
                    for handler in enumerate_handlers(b) {
                        let co = costate_of(b, &handler);
                        for (x, req) in a.requests().iter().enumerate() {
                            cases += 1;
                            let y = m.forward_idx(x);
                            let rb = handler[y];
                            let want = &a.responses(x)[m.backward_idx(x, rb)];
                            let ctx_run = Context::new(state::<DynC>(req.clone()), co.clone());
                            let got = ctx_run.run(&typed);
                            if got != *want {
                                return Outcome::fail(
                                    cases,
                                    Counterexample {
                                        description: format!(
                                            "run differs from forward-answer-backward: got {got}, want {want}"
                                        ),
                                        request: Some(req.to_string()),
                                        response: Some(b.responses(y)[rb].to_string()),
                                        morphisms: vec![m.describe()],
                                    },
                                );
                            }
                        }
                    }
                }
                Outcome::pass(cases)
            });
        }
    }
}
