//! Laws for iterated exchanges: the stepwise lift is a functor on session
//! trees, it agrees with the arithmetic tree model, and a single exchange
//! commutes with translation.

use std::collections::HashMap;

use super::{check_agrees, diff_tables, inst2, inst3, record, Ctx, Outcome};
use crate::combinators::single;
use crate::container::identity;
use crate::laws::report::LawReport;
use crate::model::bridge::{conv_star, conv_value, reify, to_typed, DynC};
use crate::model::derived::{model_star_map, StarModel};
use crate::model::{compose_tables, FiniteMorphism};

/// Table identity usable as a map key: the full forward and backward rows.
type TableKey = (Vec<usize>, Vec<Vec<usize>>);

fn table_key(m: &FiniteMorphism) -> TableKey {
    let fwd: Vec<usize> = (0..m.dom().request_count()).map(|x| m.forward_idx(x)).collect();
    let back: Vec<Vec<usize>> = (0..m.dom().request_count())
        .map(|x| {
            let arity = m.cod().responses(m.forward_idx(x)).len();
            (0..arity).map(|j| m.backward_idx(x, j)).collect()
        })
        .collect();
    (fwd, back)
}

pub(crate) fn run(ctx: &Ctx<'_>, out: &mut Vec<LawReport>) {
    let conv = conv_value();
    let depth = ctx.config.star_depth;
    let full: Vec<StarModel> = ctx.corpus.iter().map(|c| StarModel::new(c, depth)).collect();

    for (i, c) in ctx.corpus.iter().enumerate() {
        let sm = &full[i];
        let conv_st = conv_star(&conv, c);
        record(
            out,
            "star/map-identity",
            format!("c={} depth={}", c.name(), depth),
            || {
                let typed = (ctx.hooks.star_map_dyn)(&identity::<DynC>());
                let want = FiniteMorphism::identity(sm.container());
                let mut cases = 0;
                match check_agrees(
                    &typed,
                    &want,
                    sm.container(),
                    sm.container(),
                    &conv_st,
                    &conv_st,
                    &mut cases,
                ) {
                    Some(cx) => Outcome::fail(cases, cx),
                    None => Outcome::pass(cases),
                }
            },
        );
    }

    // The typed stepwise lift agrees with the arithmetic tree model,
    // pointwise, at the deepest depth whose tree count fits the budget.
    for (i, a) in ctx.corpus.iter().enumerate() {
        for (j, b) in ctx.corpus.iter().enumerate() {
            let Some(homs) = ctx.hom(i, j) else { continue };
            let mut d = 1;
            for cand in (1..=depth).rev() {
                if full[i].shape_count_at_depth(cand) <= ctx.config.star_agree_budget
                    && full[j].shape_count_at_depth(cand) <= ctx.config.star_agree_budget
                {
                    d = cand;
                    break;
                }
            }
            let sa = StarModel::new(a, d);
            let sb = StarModel::new(b, d);
            let conv_sa = conv_star(&conv, a);
            let conv_sb = conv_star(&conv, b);
            record(
                out,
                "star/map-agrees-with-model",
                format!("dom={} cod={} depth={d}", a.name(), b.name()),
                || {
                    let mut cases = 0;
                    for m in homs {
                        let typed = (ctx.hooks.star_map_dyn)(&to_typed(m));
                        let want = model_star_map(m, &sa, &sb).expect("tree table");
                        if let Some(mut cx) = check_agrees(
                            &typed,
                            &want,
                            sa.container(),
                            sb.container(),
                            &conv_sa,
                            &conv_sb,
                            &mut cases,
                        ) {
                            cx.morphisms.push(m.describe());
                            return Outcome::fail(cases, cx);
                        }
                    }
                    Outcome::pass(cases)
                },
            );
        }
    }

    // Functoriality on composition, checked on the tree model at full
    // depth: lifting a composite is composing the lifts. The lift of the
    // composite is found by keying the composed base table into the
    // enumerated transformer space, so both routes are computed
    // independently of each other.
    let mut star_tables: HashMap<(usize, usize), Vec<FiniteMorphism>> = HashMap::new();
    let mut key_maps: HashMap<(usize, usize), HashMap<TableKey, usize>> = HashMap::new();
    for i in 0..ctx.corpus.len() {
        for j in 0..ctx.corpus.len() {
            let Some(homs) = ctx.hom(i, j) else { continue };
            let tables: Vec<FiniteMorphism> = homs
                .iter()
                .map(|m| model_star_map(m, &full[i], &full[j]).expect("tree table"))
                .collect();
            star_tables.insert((i, j), tables);
            let mut keys = HashMap::new();
            for (idx, m) in homs.iter().enumerate() {
                keys.insert(table_key(m), idx);
            }
            key_maps.insert((i, j), keys);
        }
    }

    for (i, a) in ctx.corpus.iter().enumerate() {
        for (j, b) in ctx.corpus.iter().enumerate() {
            let Some(fs) = ctx.hom(i, j) else { continue };
            for (k, c) in ctx.corpus.iter().enumerate() {
                let Some(gs) = ctx.hom(j, k) else { continue };
                record(
                    out,
                    "star/map-composition-model",
                    format!("{} depth={depth}", inst3(a, b, c)),
                    || {
                        let star_ij = &star_tables[&(i, j)];
                        let star_jk = &star_tables[&(j, k)];
                        let star_ik = &star_tables[&(i, k)];
                        let keys_ik = &key_maps[&(i, k)];
                        let mut cases = 0;
                        for (fi, f) in fs.iter().enumerate() {
                            for (gi, g) in gs.iter().enumerate() {
                                let fg = compose_tables(f, g).expect("composes");
                                let idx = keys_ik[&table_key(&fg)];
                                let lhs = &star_ik[idx];
                                let rhs = compose_tables(&star_ij[fi], &star_jk[gi])
                                    .expect("tree tables compose");
                                if let Some(mut cx) = diff_tables(lhs, &rhs, &mut cases) {
                                    cx.description = format!(
                                        "lift of composite differs from composite of lifts: {}",
                                        cx.description
                                    );
                                    cx.morphisms = vec![f.describe(), g.describe()];
                                    return Outcome::fail(cases, cx);
                                }
                            }
                        }
                        Outcome::pass(cases)
                    },
                );
            }
        }
    }

    // One exchange, then translation, is translation, then one exchange.
    // Wrapping always yields a one-step tree, so the codomain universe is
    // floored at depth 1 even when the configured depth is 0.
    let floored: Vec<StarModel>;
    let single_models: &[StarModel] = if depth >= 1 {
        &full
    } else {
        floored = ctx.corpus.iter().map(|c| StarModel::new(c, 1)).collect();
        &floored
    };
    for (i, a) in ctx.corpus.iter().enumerate() {
        for (j, b) in ctx.corpus.iter().enumerate() {
            let Some(homs) = ctx.hom(i, j) else { continue };
            let sb = &single_models[j];
            let conv_sb = conv_star(&conv, b);
            record(out, "star/single-commutes", inst2(a, b), || {
                let mut cases = 0;
                for m in homs {
                    let m_t = to_typed(m);
                    let lhs = single::<DynC>().then(&(ctx.hooks.star_map_dyn)(&m_t));
                    let rhs = m_t.then(&single::<DynC>());
                    let got = match reify(&lhs, a, sb.container(), &conv, &conv_sb) {
                        Ok(t) => t,
                        Err(e) => {
                            return Outcome::fail(
                                cases,
                                super::Counterexample {
                                    description: format!("typed route left the tables: {e}"),
                                    request: None,
                                    response: None,
                                    morphisms: vec![m.describe()],
                                },
                            )
                        }
                    };
                    let want = match reify(&rhs, a, sb.container(), &conv, &conv_sb) {
                        Ok(t) => t,
                        Err(e) => {
                            return Outcome::fail(
                                cases,
                                super::Counterexample {
                                    description: format!(
                                        "translate-then-wrap left the tables: {e}"
                                    ),
                                    request: None,
                                    response: None,
                                    morphisms: vec![m.describe()],
                                },
                            )
                        }
                    };
                    if let Some(mut cx) = diff_tables(&got, &want, &mut cases) {
                        cx.morphisms.push(m.describe());
                        return Outcome::fail(cases, cx);
                    }
                }
                Outcome::pass(cases)
            });
        }
    }
}
