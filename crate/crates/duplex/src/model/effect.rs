//! Finite effects over model values.
//!
//! Each bundled effect is described by four value-level operations: `of`
//! lists every effectful value over a given set of inner values (this is
//! what makes lifted boundaries finite), and `map`/`pure`/`join` mirror the
//! typed effect operations so that model-level oracles can be built for
//! lifted transformers.

use crate::effects::Trace;

use super::value::Value;

/// A finite effect, tabulated at the value level.
#[derive(Clone, Copy)]
pub struct EffectModel {
    pub name: &'static str,
    of: fn(&[Value]) -> Vec<Value>,
    map: fn(&Value, &dyn Fn(&Value) -> Value) -> Value,
    pure_v: fn(&Value) -> Value,
    join: fn(&Value) -> Value,
}

impl EffectModel {
    /// Every effectful value whose inner value is drawn from `inner`,
    /// in a stable order.
    pub fn of(&self, inner: &[Value]) -> Vec<Value> {
        (self.of)(inner)
    }

    pub fn map(&self, fv: &Value, f: &dyn Fn(&Value) -> Value) -> Value {
        (self.map)(fv, f)
    }

    pub fn pure_value(&self, v: &Value) -> Value {
        (self.pure_v)(v)
    }

    /// Collapse a doubly-effectful value `F(F(t))` into `F(t)`.
    pub fn join_value(&self, ffv: &Value) -> Value {
        (self.join)(ffv)
    }
}

impl std::fmt::Debug for EffectModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "EffectModel({})", self.name)
    }
}

pub fn identity_effect_model() -> EffectModel {
    EffectModel {
        name: "identity",
        of: |inner| inner.to_vec(),
        map: |v, f| f(v),
        pure_v: Value::clone,
        join: Value::clone,
    }
}

pub fn option_effect_model() -> EffectModel {
    EffectModel {
        name: "option",
        of: |inner| {
            let mut out = vec![Value::Absent];
            out.extend(inner.iter().cloned().map(Value::present));
            out
        },
        map: |v, f| match v {
            Value::Absent => Value::Absent,
            Value::Present(x) => Value::present(f(x)),
            other => Value::violation(&format!("option map on {other}")),
        },
        pure_v: |v| Value::present(v.clone()),
        join: |v| match v {
            Value::Absent => Value::Absent,
            Value::Present(inner) => match &**inner {
                Value::Absent => Value::Absent,
                Value::Present(x) => Value::present((**x).clone()),
                other => Value::violation(&format!("option join on just({other})")),
            },
            other => Value::violation(&format!("option join on {other}")),
        },
    }
}

pub fn writer_effect_model() -> EffectModel {
    EffectModel {
        name: "writer",
        of: |inner| {
            let mut out = Vec::with_capacity(Trace::all().len() * inner.len());
            for t in Trace::all() {
                for v in inner {
                    out.push(Value::pair(trace_atom(&t), v.clone()));
                }
            }
            out
        },
        map: |v, f| match v {
            Value::Pair(t, x) => Value::pair((**t).clone(), f(x)),
            other => Value::violation(&format!("writer map on {other}")),
        },
        pure_v: |v| Value::pair(trace_atom(&Trace::empty()), v.clone()),
        join: |v| match v {
            Value::Pair(t1, rest) => match &**rest {
                Value::Pair(t2, x) => {
                    let combined = atom_trace(t1).append(&atom_trace(t2));
                    Value::pair(trace_atom(&combined), (**x).clone())
                }
                other => Value::violation(&format!("writer join on inner {other}")),
            },
            other => Value::violation(&format!("writer join on {other}")),
        },
    }
}

/// The three bundled finite effects, in a stable order.
pub fn finite_effect_models() -> Vec<EffectModel> {
    vec![
        identity_effect_model(),
        option_effect_model(),
        writer_effect_model(),
    ]
}

/// A trace as a model value, via its display form.
pub fn trace_atom(t: &Trace) -> Value {
    Value::atom(&t.to_string())
}

/// Recover a trace from its display form; anything unrecognized is treated
/// as corrupt input and surfaces as a panic, since traces only enter the
/// model through [`trace_atom`].
pub fn atom_trace(v: &Value) -> Trace {
    if let Value::Atom(s) = v {
        for t in Trace::all() {
            if t.to_string() == **s {
                return t;
            }
        }
    }
    panic!("not a trace value: {v}");
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn of_sizes_match_the_effect() {
        let inner = vec![Value::atom("r0"), Value::atom("r1")];
        assert_eq!(identity_effect_model().of(&inner).len(), 2);
        assert_eq!(option_effect_model().of(&inner).len(), 3);
        assert_eq!(writer_effect_model().of(&inner).len(), Trace::all().len() * 2);
    }

    #[test]
    fn writer_join_appends_traces() {
        let w = writer_effect_model();
        let t0 = trace_atom(&Trace::symbol(0));
        let t1 = trace_atom(&Trace::symbol(1));
        let nested = Value::pair(t0, Value::pair(t1, Value::atom("x")));
        let joined = w.join_value(&nested);
        assert_eq!(
            joined,
            Value::pair(trace_atom(&Trace::symbol(0).append(&Trace::symbol(1))), Value::atom("x"))
        );
    }

    #[test]
    fn monad_equations_hold_on_values() {
        for fx in finite_effect_models() {
            let inner = vec![Value::atom("a"), Value::atom("b")];
            for fv in fx.of(&inner) {
                // join . pure = id
                assert_eq!(fx.join_value(&fx.pure_value(&fv)), fv, "{}", fx.name);
                // join . map pure = id
                let mapped = fx.map(&fv, &|v| fx.pure_value(v));
                assert_eq!(fx.join_value(&mapped), fv, "{}", fx.name);
            }
        }
    }

    #[test]
    fn traces_round_trip_through_atoms() {
        for t in Trace::all() {
            assert_eq!(atom_trace(&trace_atom(&t)), t);
        }
    }
}
