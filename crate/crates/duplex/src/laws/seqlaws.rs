//! Laws for the sequential product: a trivial exchange on either side
//! adds nothing, the evident injections undo the projections, and the
//! projections behave correctly under a running session.

use std::rc::Rc;

use super::{costate_of, inst1, record, Ctx, Outcome};
use crate::combinators::{unit_left, unit_right, Seq, SeqReq};
use crate::container::{exec, run as drive, state, Costate, Morphism, Step, Unit};
use crate::laws::report::{Counterexample, LawReport};
use crate::model::bridge::{conv_seq, conv_unit, conv_value, DynC};
use crate::model::derived::{
    inj_left_table, inj_right_table, seq_container, unit_container, unit_left_table,
    unit_right_table,
};
use crate::model::{compose_tables, enumerate_handlers, FiniteMorphism, Value};

pub(crate) fn run(ctx: &Ctx<'_>, out: &mut Vec<LawReport>) {
    let conv = conv_value();

    for c in ctx.corpus {
        let unit = unit_container();
        let seq_left = seq_container(&unit, c);
        let seq_right = seq_container(c, &unit);
        let conv_left = conv_seq(&conv_unit(), &conv, &unit);
        let conv_right = conv_seq(&conv, &conv_unit(), c);

        record(out, "seq/unit-left-agrees-with-tables", inst1(c), || {
            let typed = unit_left::<DynC>();
            let want = unit_left_table(c).expect("projection table");
            let mut cases = 0;
            match super::check_agrees(&typed, &want, &seq_left, c, &conv_left, &conv, &mut cases)
            {
                Some(cx) => Outcome::fail(cases, cx),
                None => Outcome::pass(cases),
            }
        });

        record(out, "seq/unit-right-agrees-with-tables", inst1(c), || {
            let typed = unit_right::<DynC>();
            let want = unit_right_table(c).expect("projection table");
            let mut cases = 0;
            match super::check_agrees(&typed, &want, &seq_right, c, &conv_right, &conv, &mut cases)
            {
                Some(cx) => Outcome::fail(cases, cx),
                None => Outcome::pass(cases),
            }
        });

        record(out, "seq/inject-undoes-unit-left", inst1(c), || {
            // model route: the table injection composed with the table
            // projection is the identity
            let inj_table = inj_left_table(c).expect("injection table");
            let proj_table = unit_left_table(c).expect("projection table");
            let round = compose_tables(&inj_table, &proj_table).expect("composes");
            let want = FiniteMorphism::identity(c);
            let mut cases = 0;
            if let Some(mut cx) = super::diff_tables(&round, &want, &mut cases) {
                cx.description = format!("model round trip: {}", cx.description);
                return Outcome::fail(cases, cx);
            }
            // typed route: inject, then project
            let inj: Morphism<DynC, Seq<Unit, DynC>> = Morphism::new(|x: Value| {
                let x2 = x;
                Step {
                    request: SeqReq::new((), move |&()| x2.clone()),
                    back: Rc::new(|(_, r): ((), Value)| r),
                }
            });
            let typed = inj.then(&unit_left::<DynC>());
            match super::check_agrees(&typed, &want, c, c, &conv, &conv, &mut cases) {
                Some(cx) => Outcome::fail(cases, cx),
                None => Outcome::pass(cases),
            }
        });

        record(out, "seq/inject-undoes-unit-right", inst1(c), || {
            let inj_table = inj_right_table(c).expect("injection table");
            let proj_table = unit_right_table(c).expect("projection table");
            let round = compose_tables(&inj_table, &proj_table).expect("composes");
            let want = FiniteMorphism::identity(c);
            let mut cases = 0;
            if let Some(mut cx) = super::diff_tables(&round, &want, &mut cases) {
                cx.description = format!("model round trip: {}", cx.description);
                return Outcome::fail(cases, cx);
            }
            let inj: Morphism<DynC, Seq<DynC, Unit>> = Morphism::new(|x: Value| Step {
                request: SeqReq::new(x, |_| ()),
                back: Rc::new(|(r, ()): (Value, ())| r),
            });
            let typed = inj.then(&unit_right::<DynC>());
            match super::check_agrees(&typed, &want, c, c, &conv, &conv, &mut cases) {
                Some(cx) => Outcome::fail(cases, cx),
                None => Outcome::pass(cases),
            }
        });

        record(out, "seq/unit-right-run", inst1(c), || {
            // a session whose second exchange is trivial runs exactly like
            // asking the handler once
            let mut cases = 0;
            for handler in enumerate_handlers(c) {
                let co = costate_of(c, &handler);
                for (i, x) in c.requests().iter().enumerate() {
                    cases += 1;
                    let x2 = x.clone();
                    let st = state::<Seq<DynC, Unit>>(SeqReq::new(x2, |_| ()));
                    let (ra, ()) = drive(&st, &co, &unit_right::<DynC>());
                    let want = &c.responses(i)[handler[i]];
                    if ra != *want {
                        return Outcome::fail(
                            cases,
                            Counterexample {
                                description: format!(
                                    "running past a trivial tail differs from the handler: got {ra}, want {want}"
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

        record(out, "seq/unit-left-costate", inst1(c), || {
            // a handler pulled back over a trivial head answers like the
            // bare handler
            let mut cases = 0;
            for handler in enumerate_handlers(c) {
                let co = costate_of(c, &handler);
                let pulled: Costate<Seq<Unit, DynC>> =
                    Costate::from(unit_left::<DynC>().then(co.morphism()));
                for (i, x) in c.requests().iter().enumerate() {
                    cases += 1;
                    let x2 = x.clone();
                    let ((), rb) = exec(&pulled, SeqReq::new((), move |&()| x2.clone()));
                    let want = &c.responses(i)[handler[i]];
                    if rb != *want {
                        return Outcome::fail(
                            cases,
                            Counterexample {
                                description: format!(
                                    "handler pulled over a trivial head differs: got {rb}, want {want}"
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
}
