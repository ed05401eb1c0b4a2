//! Boundaries built from other boundaries — sums, option-wrapping, effect
//! lifting, dependent sequencing, and session trees — together with
//! independent table-level transformers over them.
//!
//! Everything in this module is computed directly from the defining
//! equations on tables. None of it calls into the typed combinators, which
//! is what lets the law checker use these constructions as oracles.

use std::collections::HashMap;

use super::container::{FiniteContainer, ModelError};
use super::effect::EffectModel;
use super::morphism::{compose_tables, index_tuples, FiniteMorphism};
use super::value::Value;

/// The trivial boundary: one request, one response.
pub fn unit_container() -> FiniteContainer {
    FiniteContainer::new("1", vec![(Value::Unit, vec![Value::Unit])]).unwrap()
}

/// Build a transformer from value-level forward/backward functions by
/// tabulating them over the domain. Fails if an image falls outside the
/// advertised tables, which is how malformed hand-built transformers are
/// caught early.
pub fn tabulate(
    dom: &FiniteContainer,
    cod: &FiniteContainer,
    fwd: impl Fn(&Value) -> Value,
    back: impl Fn(&Value, &Value) -> Value,
) -> Result<FiniteMorphism, ModelError> {
    let mut forward = Vec::with_capacity(dom.request_count());
    let mut backward = Vec::with_capacity(dom.request_count());
    for (i, q) in dom.requests().iter().enumerate() {
        let image_value = fwd(q);
        let image =
            cod.request_index(&image_value)
                .ok_or_else(|| ModelError::UnknownRequest {
                    container: cod.name().to_string(),
                    request: image_value.to_string(),
                })?;
        forward.push(image);
        let mut row = Vec::with_capacity(cod.responses(image).len());
        for rr in cod.responses(image) {
            let br = back(q, rr);
            let j = dom
                .response_index(i, &br)
                .ok_or_else(|| ModelError::UnknownResponse {
                    container: dom.name().to_string(),
                    request: q.to_string(),
                    response: br.to_string(),
                })?;
            row.push(j);
        }
        backward.push(row);
    }
    FiniteMorphism::from_indices(dom.clone(), cod.clone(), forward, backward)
}

// ---------------------------------------------------------------------------
// Sums

/// Tagged choice of two boundaries; both requests and responses carry the
/// side tag.
pub fn sum_container(a: &FiniteContainer, b: &FiniteContainer) -> FiniteContainer {
    let mut rows = Vec::with_capacity(a.request_count() + b.request_count());
    for (i, q) in a.requests().iter().enumerate() {
        rows.push((
            Value::left(q.clone()),
            a.responses(i).iter().cloned().map(Value::left).collect(),
        ));
    }
    for (i, q) in b.requests().iter().enumerate() {
        rows.push((
            Value::right(q.clone()),
            b.responses(i).iter().cloned().map(Value::right).collect(),
        ));
    }
    FiniteContainer::new(&format!("sum({},{})", a.name(), b.name()), rows).unwrap()
}

/// Side-by-side action on a sum, tabulated.
pub fn model_sum_map(
    f: &FiniteMorphism,
    g: &FiniteMorphism,
) -> Result<FiniteMorphism, ModelError> {
    let dom = sum_container(f.dom(), g.dom());
    let cod = sum_container(f.cod(), g.cod());
    tabulate(
        &dom,
        &cod,
        |q| match q {
            Value::Left(x) => Value::left(f.apply_forward(x).unwrap()),
            Value::Right(x) => Value::right(g.apply_forward(x).unwrap()),
            other => Value::violation(&format!("sum request {other}")),
        },
        |q, rr| match (q, rr) {
            (Value::Left(x), Value::Left(r)) => Value::left(f.apply_backward(x, r).unwrap()),
            (Value::Right(x), Value::Right(r)) => Value::right(g.apply_backward(x, r).unwrap()),
            _ => Value::violation("sum response tag crosses request tag"),
        },
    )
}

/// Collapse both sides of `sum(a, a)` onto `a`, remembering the side only
/// in the backward direction.
pub fn diagonal_table(a: &FiniteContainer) -> Result<FiniteMorphism, ModelError> {
    let dom = sum_container(a, a);
    tabulate(
        &dom,
        a,
        |q| match q {
            Value::Left(x) | Value::Right(x) => (**x).clone(),
            other => Value::violation(&format!("diagonal request {other}")),
        },
        |q, r| match q {
            Value::Left(_) => Value::left(r.clone()),
            Value::Right(_) => Value::right(r.clone()),
            other => Value::violation(&format!("diagonal request {other}")),
        },
    )
}

// ---------------------------------------------------------------------------
// Option-wrapping

/// One extra `nothing` request; every original request and response is
/// wrapped in `just`.
pub fn maybe_container(a: &FiniteContainer) -> FiniteContainer {
    let mut rows = vec![(Value::Absent, vec![Value::Absent])];
    for (i, q) in a.requests().iter().enumerate() {
        rows.push((
            Value::present(q.clone()),
            a.responses(i).iter().cloned().map(Value::present).collect(),
        ));
    }
    FiniteContainer::new(&format!("maybe({})", a.name()), rows).unwrap()
}

/// Presence-preserving action, tabulated.
pub fn model_maybe_map(f: &FiniteMorphism) -> Result<FiniteMorphism, ModelError> {
    let dom = maybe_container(f.dom());
    let cod = maybe_container(f.cod());
    tabulate(
        &dom,
        &cod,
        |q| match q {
            Value::Absent => Value::Absent,
            Value::Present(x) => Value::present(f.apply_forward(x).unwrap()),
            other => Value::violation(&format!("maybe request {other}")),
        },
        |q, rr| match (q, rr) {
            (Value::Absent, Value::Absent) => Value::Absent,
            (Value::Present(x), Value::Present(r)) => {
                Value::present(f.apply_backward(x, r).unwrap())
            }
            _ => Value::violation("maybe response presence crosses request presence"),
        },
    )
}

/// `a ⇒ maybe(a)`: ask inside `just`, unwrap the answer.
pub fn maybe_unit_table(a: &FiniteContainer) -> Result<FiniteMorphism, ModelError> {
    let cod = maybe_container(a);
    tabulate(
        a,
        &cod,
        |q| Value::present(q.clone()),
        |_, rr| match rr {
            Value::Present(r) => (**r).clone(),
            other => Value::violation(&format!("unit response {other}")),
        },
    )
}

/// `maybe(maybe(a)) ⇒ maybe(a)`: both layers of absence collapse to one.
pub fn maybe_join_table(a: &FiniteContainer) -> Result<FiniteMorphism, ModelError> {
    let inner = maybe_container(a);
    let dom = maybe_container(&inner);
    tabulate(
        &dom,
        &inner,
        |q| match q {
            Value::Absent => Value::Absent,
            Value::Present(x) => (**x).clone(),
            other => Value::violation(&format!("join request {other}")),
        },
        |q, rr| match q {
            Value::Absent => Value::Absent,
            Value::Present(x) => match &**x {
                // request just(nothing): the sole answer nothing re-wraps
                Value::Absent => Value::present(Value::Absent),
                Value::Present(_) => Value::present(rr.clone()),
                other => Value::violation(&format!("join request just({other})")),
            },
            other => Value::violation(&format!("join request {other}")),
        },
    )
}

/// Effectful-composition oracle for partial transformers: map the second
/// one under `just`, then collapse.
pub fn model_kleisli(
    f: &FiniteMorphism,
    g: &FiniteMorphism,
    c: &FiniteContainer,
) -> Result<FiniteMorphism, ModelError> {
    let mapped = model_maybe_map(g)?;
    let join = maybe_join_table(c)?;
    compose_tables(&compose_tables(f, &mapped)?, &join)
}

/// `maybe(a) ⇒ sum(1, a)`: absence becomes the left summand.
pub fn maybe_iso_to_table(a: &FiniteContainer) -> Result<FiniteMorphism, ModelError> {
    let dom = maybe_container(a);
    let cod = sum_container(&unit_container(), a);
    tabulate(
        &dom,
        &cod,
        |q| match q {
            Value::Absent => Value::left(Value::Unit),
            Value::Present(x) => Value::right((**x).clone()),
            other => Value::violation(&format!("iso request {other}")),
        },
        |q, rr| match (q, rr) {
            (Value::Absent, Value::Left(_)) => Value::Absent,
            (Value::Present(_), Value::Right(r)) => Value::present((**r).clone()),
            _ => Value::violation("iso response side crosses request side"),
        },
    )
}

/// `sum(1, a) ⇒ maybe(a)`: the other direction of the same renaming.
pub fn maybe_iso_from_table(a: &FiniteContainer) -> Result<FiniteMorphism, ModelError> {
    let dom = sum_container(&unit_container(), a);
    let cod = maybe_container(a);
    tabulate(
        &dom,
        &cod,
        |q| match q {
            Value::Left(_) => Value::Absent,
            Value::Right(x) => Value::present((**x).clone()),
            other => Value::violation(&format!("iso request {other}")),
        },
        |q, rr| match (q, rr) {
            (Value::Left(_), Value::Absent) => Value::left(Value::Unit),
            (Value::Right(_), Value::Present(r)) => Value::right((**r).clone()),
            _ => Value::violation("iso response presence crosses request side"),
        },
    )
}

// ---------------------------------------------------------------------------
// Effect lifting

/// Same requests; responses become effectful values over the original
/// response set.
pub fn lifted_container(fx: &EffectModel, a: &FiniteContainer) -> FiniteContainer {
    let rows = a
        .requests()
        .iter()
        .enumerate()
        .map(|(i, q)| (q.clone(), fx.of(a.responses(i))))
        .collect();
    FiniteContainer::new(&format!("lift({},{})", fx.name, a.name()), rows).unwrap()
}

/// Action on lifted boundaries: requests move as before, responses are
/// translated under the effect.
pub fn model_lift_map(
    fx: &EffectModel,
    f: &FiniteMorphism,
) -> Result<FiniteMorphism, ModelError> {
    let dom = lifted_container(fx, f.dom());
    let cod = lifted_container(fx, f.cod());
    tabulate(
        &dom,
        &cod,
        |q| f.apply_forward(q).unwrap(),
        |q, fr| fx.map(fr, &|r| f.apply_backward(q, r).unwrap()),
    )
}

// ---------------------------------------------------------------------------
// Dependent sequencing

/// Two exchanges in a row, the second request chosen by the first
/// response. Requests pair the first request with an explicit
/// response-indexed table of follow-up requests; responses pair the two
/// answers.
pub fn seq_container(a: &FiniteContainer, b: &FiniteContainer) -> FiniteContainer {
    let mut rows = Vec::new();
    for (i, q) in a.requests().iter().enumerate() {
        let arity = a.responses(i).len();
        for rest in index_tuples(&vec![b.request_count(); arity]) {
            let req = Value::pair(
                q.clone(),
                Value::list(rest.iter().map(|&k| b.requests()[k].clone()).collect()),
            );
            let mut resps = Vec::new();
            for (j, ra) in a.responses(i).iter().enumerate() {
                for rb in b.responses(rest[j]) {
                    resps.push(Value::pair(ra.clone(), rb.clone()));
                }
            }
            rows.push((req, resps));
        }
    }
    FiniteContainer::new(&format!("seq({},{})", a.name(), b.name()), rows).unwrap()
}

/// `seq(1, a) ⇒ a`: project the continuation applied to the unit answer;
/// pair the unit back on.
pub fn unit_left_table(a: &FiniteContainer) -> Result<FiniteMorphism, ModelError> {
    let dom = seq_container(&unit_container(), a);
    tabulate(
        &dom,
        a,
        |q| match q {
            Value::Pair(_, rest) => match &**rest {
                Value::List(items) => items[0].clone(),
                other => Value::violation(&format!("continuation {other}")),
            },
            other => Value::violation(&format!("seq request {other}")),
        },
        |_, r| Value::pair(Value::Unit, r.clone()),
    )
}

/// `seq(a, 1) ⇒ a`: project the first request; pair the unit answer
/// back on.
pub fn unit_right_table(a: &FiniteContainer) -> Result<FiniteMorphism, ModelError> {
    let dom = seq_container(a, &unit_container());
    tabulate(
        &dom,
        a,
        |q| match q {
            Value::Pair(first, _) => (**first).clone(),
            other => Value::violation(&format!("seq request {other}")),
        },
        |_, r| Value::pair(r.clone(), Value::Unit),
    )
}

/// `a ⇒ seq(1, a)`: the evident injection that `unit_left_table` undoes.
pub fn inj_left_table(a: &FiniteContainer) -> Result<FiniteMorphism, ModelError> {
    let cod = seq_container(&unit_container(), a);
    tabulate(
        a,
        &cod,
        |q| Value::pair(Value::Unit, Value::list(vec![q.clone()])),
        |_, rr| match rr {
            Value::Pair(_, r) => (**r).clone(),
            other => Value::violation(&format!("seq response {other}")),
        },
    )
}

/// `a ⇒ seq(a, 1)`: the evident injection that `unit_right_table` undoes.
pub fn inj_right_table(a: &FiniteContainer) -> Result<FiniteMorphism, ModelError> {
    let cod = seq_container(a, &unit_container());
    tabulate(
        a,
        &cod,
        |q| {
            let arity = match a.request_index(q) {
                Some(i) => a.responses(i).len(),
                None => 0,
            };
            Value::pair(q.clone(), Value::list(vec![Value::Unit; arity]))
        },
        |_, rr| match rr {
            Value::Pair(r, _) => (**r).clone(),
            other => Value::violation(&format!("seq response {other}")),
        },
    )
}

// ---------------------------------------------------------------------------
// Session trees

/// One node of an enumerated session tree: stop, or one request with a
/// follow-up tree per possible response.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StarDesc {
    Done,
    More { req: usize, subs: Vec<usize> },
}

/// All session trees over a base boundary up to a given depth, indexed so
/// that tree-level transformers can be computed arithmetically instead of
/// by hashing tree values.
///
/// Trees are stored in level order (every tree's subtrees precede it), with
/// `Done` always at index 0. Responses of tree `i` are its complete paths,
/// ordered first by which response branch is taken, then by the path order
/// of the subtree — the same order `path_offsets` encodes.
pub struct StarModel {
    base: FiniteContainer,
    depth: usize,
    container: FiniteContainer,
    descs: Vec<StarDesc>,
    key_index: HashMap<(usize, Vec<usize>), usize>,
    path_counts: Vec<usize>,
    path_offsets: Vec<Vec<usize>>,
    level_ends: Vec<usize>,
}

impl StarModel {
    pub fn new(base: &FiniteContainer, depth: usize) -> StarModel {
        let mut descs = vec![StarDesc::Done];
        let mut key_index: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let mut level_ends = vec![1usize];
        for _ in 1..=depth {
            let prev_end = *level_ends.last().unwrap();
            for x in 0..base.request_count() {
                let arity = base.responses(x).len();
                for subs in index_tuples(&vec![prev_end; arity]) {
                    key_index.entry((x, subs.clone())).or_insert_with(|| {
                        descs.push(StarDesc::More { req: x, subs });
                        descs.len() - 1
                    });
                }
            }
            level_ends.push(descs.len());
        }

        let mut path_counts = vec![0usize; descs.len()];
        let mut path_offsets = vec![Vec::new(); descs.len()];
        for i in 0..descs.len() {
            match &descs[i] {
                StarDesc::Done => path_counts[i] = 1,
                StarDesc::More { subs, .. } => {
                    let mut offs = Vec::with_capacity(subs.len());
                    let mut total = 0;
                    for &s in subs {
                        offs.push(total);
                        total += path_counts[s];
                    }
                    path_counts[i] = total;
                    path_offsets[i] = offs;
                }
            }
        }

        let mut shape_values: Vec<Value> = Vec::with_capacity(descs.len());
        for desc in &descs {
            match desc {
                StarDesc::Done => shape_values.push(Value::Done),
                StarDesc::More { req, subs } => shape_values.push(Value::step(
                    base.requests()[*req].clone(),
                    Value::list(subs.iter().map(|&s| shape_values[s].clone()).collect()),
                )),
            }
        }
        let mut path_values: Vec<Vec<Value>> = Vec::with_capacity(descs.len());
        for desc in &descs {
            match desc {
                StarDesc::Done => path_values.push(vec![Value::Done]),
                StarDesc::More { req, subs } => {
                    let mut paths = Vec::new();
                    for (j, &s) in subs.iter().enumerate() {
                        let head = base.responses(*req)[j].clone();
                        for p in &path_values[s] {
                            paths.push(Value::step(head.clone(), p.clone()));
                        }
                    }
                    path_values.push(paths);
                }
            }
        }

        let rows = shape_values
            .into_iter()
            .zip(path_values)
            .collect::<Vec<_>>();
        let container =
            FiniteContainer::new(&format!("star({},{})", base.name(), depth), rows).unwrap();

        StarModel {
            base: base.clone(),
            depth,
            container,
            descs,
            key_index,
            path_counts,
            path_offsets,
            level_ends,
        }
    }

    pub fn base(&self) -> &FiniteContainer {
        &self.base
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn container(&self) -> &FiniteContainer {
        &self.container
    }

    pub fn shape_count(&self) -> usize {
        self.descs.len()
    }

    /// Number of distinct trees of depth at most `d`.
    pub fn shape_count_at_depth(&self, d: usize) -> usize {
        self.level_ends[d.min(self.depth)]
    }

    pub fn desc(&self, shape: usize) -> &StarDesc {
        &self.descs[shape]
    }

    pub fn path_count(&self, shape: usize) -> usize {
        self.path_counts[shape]
    }

    /// Index of the tree taking `req` first and continuing with `subs`.
    pub fn index_of(&self, req: usize, subs: &[usize]) -> usize {
        *self
            .key_index
            .get(&(req, subs.to_vec()))
            .unwrap_or_else(|| panic!("tree ({req}, {subs:?}) exceeds depth {}", self.depth))
    }

    /// Split a path index of `shape` into (response branch, path index
    /// within that branch's subtree).
    pub fn decompose_path(&self, shape: usize, path_idx: usize) -> (usize, usize) {
        let offs = &self.path_offsets[shape];
        for j in (0..offs.len()).rev() {
            if offs[j] <= path_idx {
                return (j, path_idx - offs[j]);
            }
        }
        panic!("path {path_idx} out of range for shape {shape}");
    }

    pub fn path_offset(&self, shape: usize, branch: usize) -> usize {
        self.path_offsets[shape][branch]
    }
}

/// Tree-level action of a transformer, computed on indices: requests are
/// rewritten node by node (each continuation precomposed with the backward
/// translation), and paths are translated pointwise backward.
pub fn model_star_map(
    m: &FiniteMorphism,
    sa: &StarModel,
    sb: &StarModel,
) -> Result<FiniteMorphism, ModelError> {
    if !sa.base().same_shape(m.dom()) || !sb.base().same_shape(m.cod()) || sa.depth() != sb.depth()
    {
        return Err(ModelError::MalformedTables {
            dom: sa.container().name().to_string(),
            cod: sb.container().name().to_string(),
            detail: "tree models do not match the transformer".to_string(),
        });
    }

    let mut fwd_shape = vec![0usize; sa.shape_count()];
    for i in 0..sa.shape_count() {
        fwd_shape[i] = match sa.desc(i) {
            StarDesc::Done => 0,
            StarDesc::More { req, subs } => {
                let y = m.forward_idx(*req);
                let new_subs: Vec<usize> = (0..sb.base().responses(y).len())
                    .map(|j| fwd_shape[subs[m.backward_idx(*req, j)]])
                    .collect();
                sb.index_of(y, &new_subs)
            }
        };
    }

    fn back_path(
        m: &FiniteMorphism,
        sa: &StarModel,
        sb: &StarModel,
        fwd_shape: &[usize],
        shape: usize,
        path_idx: usize,
    ) -> usize {
        match sa.desc(shape) {
            StarDesc::Done => 0,
            StarDesc::More { req, subs } => {
                let (j, sub_path) = sb.decompose_path(fwd_shape[shape], path_idx);
                let j0 = m.backward_idx(*req, j);
                let sub = subs[j0];
                sa.path_offset(shape, j0) + back_path(m, sa, sb, fwd_shape, sub, sub_path)
            }
        }
    }

    let mut forward = Vec::with_capacity(sa.shape_count());
    let mut backward = Vec::with_capacity(sa.shape_count());
    for i in 0..sa.shape_count() {
        let image = fwd_shape[i];
        forward.push(image);
        let row: Vec<usize> = (0..sb.path_count(image))
            .map(|p| back_path(m, sa, sb, &fwd_shape, i, p))
            .collect();
        backward.push(row);
    }
    FiniteMorphism::from_indices(
        sa.container().clone(),
        sb.container().clone(),
        forward,
        backward,
    )
}
