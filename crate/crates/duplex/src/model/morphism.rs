//! Transformers between finite boundaries as plain index tables, plus the
//! enumeration and equality machinery the law checker is built on.
//!
//! Everything here works on indices into the containers' request/response
//! lists, independently of the typed combinators — table composition and
//! table functor maps serve as oracles the typed implementations are
//! compared against.

use std::rc::Rc;

use super::container::{FiniteContainer, ModelError};
use super::value::Value;

/// A transformer between two finite boundaries, tabulated.
///
/// `forward[i]` is the codomain request index the `i`-th domain request
/// maps to; `backward[i][j]` is the domain response index produced when the
/// `j`-th response of that image answers the `i`-th domain request.
#[derive(Clone)]
pub struct FiniteMorphism {
    dom: FiniteContainer,
    cod: FiniteContainer,
    forward: Rc<Vec<usize>>,
    backward: Rc<Vec<Vec<usize>>>,
}

/// Upper bounds for morphism enumeration; beyond them the count explodes
/// and enumeration refuses rather than stalls.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumCaps {
    pub max_requests: usize,
    pub max_responses: usize,
}

impl Default for EnumCaps {
    fn default() -> Self {
        EnumCaps {
            max_requests: 3,
            max_responses: 3,
        }
    }
}

impl FiniteMorphism {
    pub fn from_indices(
        dom: FiniteContainer,
        cod: FiniteContainer,
        forward: Vec<usize>,
        backward: Vec<Vec<usize>>,
    ) -> Result<Self, ModelError> {
        let malformed = |detail: String| ModelError::MalformedTables {
            dom: dom.name().to_string(),
            cod: cod.name().to_string(),
            detail,
        };
        if forward.len() != dom.request_count() || backward.len() != dom.request_count() {
            return Err(malformed(format!(
                "expected {} rows, got forward {} / backward {}",
                dom.request_count(),
                forward.len(),
                backward.len()
            )));
        }
        for (i, &fi) in forward.iter().enumerate() {
            if fi >= cod.request_count() {
                return Err(malformed(format!("forward[{i}] = {fi} out of range")));
            }
            let expected = cod.responses(fi).len();
            if backward[i].len() != expected {
                return Err(malformed(format!(
                    "backward[{i}] has {} entries, image admits {expected}",
                    backward[i].len()
                )));
            }
            for (j, &bij) in backward[i].iter().enumerate() {
                if bij >= dom.responses(i).len() {
                    return Err(malformed(format!("backward[{i}][{j}] = {bij} out of range")));
                }
            }
        }
        Ok(FiniteMorphism {
            dom,
            cod,
            forward: Rc::new(forward),
            backward: Rc::new(backward),
        })
    }

    pub fn identity(c: &FiniteContainer) -> FiniteMorphism {
        let forward = (0..c.request_count()).collect();
        let backward = (0..c.request_count())
            .map(|i| (0..c.responses(i).len()).collect())
            .collect();
        FiniteMorphism {
            dom: c.clone(),
            cod: c.clone(),
            forward: Rc::new(forward),
            backward: Rc::new(backward),
        }
    }

    pub fn dom(&self) -> &FiniteContainer {
        &self.dom
    }

    pub fn cod(&self) -> &FiniteContainer {
        &self.cod
    }

    pub fn forward_idx(&self, req_idx: usize) -> usize {
        self.forward[req_idx]
    }

    pub fn backward_idx(&self, req_idx: usize, cod_resp_idx: usize) -> usize {
        self.backward[req_idx][cod_resp_idx]
    }

    pub fn apply_forward(&self, req: &Value) -> Result<Value, ModelError> {
        let i = self
            .dom
            .request_index(req)
            .ok_or_else(|| ModelError::UnknownRequest {
                container: self.dom.name().to_string(),
                request: req.to_string(),
            })?;
        Ok(self.cod.requests()[self.forward[i]].clone())
    }

    pub fn apply_backward(&self, req: &Value, cod_resp: &Value) -> Result<Value, ModelError> {
        let i = self
            .dom
            .request_index(req)
            .ok_or_else(|| ModelError::UnknownRequest {
                container: self.dom.name().to_string(),
                request: req.to_string(),
            })?;
        let image = self.forward[i];
        let j = self
            .cod
            .response_index(image, cod_resp)
            .ok_or_else(|| ModelError::UnknownResponse {
                container: self.cod.name().to_string(),
                request: self.cod.requests()[image].to_string(),
                response: cod_resp.to_string(),
            })?;
        Ok(self.dom.responses(i)[self.backward[i][j]].clone())
    }

    /// Human-readable tables, complete enough to reconstruct the morphism.
    pub fn describe(&self) -> String {
        let mut out = format!("{} => {} {{", self.dom.name(), self.cod.name());
        for (i, &fi) in self.forward.iter().enumerate() {
            if i > 0 {
                out.push_str("; ");
            }
            out.push_str(&format!("{} -> {} [", self.dom.requests()[i], self.cod.requests()[fi]));
            for (j, &bij) in self.backward[i].iter().enumerate() {
                if j > 0 {
                    out.push(' ');
                }
                out.push_str(&format!(
                    "{} -> {}",
                    self.cod.responses(fi)[j],
                    self.dom.responses(i)[bij]
                ));
            }
            out.push(']');
        }
        out.push('}');
        out
    }
}

impl PartialEq for FiniteMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.dom.same_shape(&other.dom)
            && self.cod.same_shape(&other.cod)
            && self.forward == other.forward
            && self.backward == other.backward
    }
}

impl Eq for FiniteMorphism {}

impl std::fmt::Debug for FiniteMorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.describe())
    }
}

/// Extensional equality: same tables over the same boundaries.
pub fn morphism_equal(a: &FiniteMorphism, b: &FiniteMorphism) -> bool {
    a == b
}

/// Table-level composition — the oracle route the typed `compose` is
/// checked against.
pub fn compose_tables(
    f: &FiniteMorphism,
    g: &FiniteMorphism,
) -> Result<FiniteMorphism, ModelError> {
    if !f.cod.same_shape(&g.dom) {
        return Err(ModelError::MalformedTables {
            dom: f.dom.name().to_string(),
            cod: g.cod.name().to_string(),
            detail: format!(
                "middle boundaries differ: {} vs {}",
                f.cod.name(),
                g.dom.name()
            ),
        });
    }
    let forward: Vec<usize> = f.forward.iter().map(|&i| g.forward[i]).collect();
    let backward: Vec<Vec<usize>> = (0..f.dom.request_count())
        .map(|x| {
            let mid = f.forward[x];
            g.backward[mid]
                .iter()
                .map(|&j| f.backward[x][j])
                .collect()
        })
        .collect();
    Ok(FiniteMorphism {
        dom: f.dom.clone(),
        cod: g.cod.clone(),
        forward: Rc::new(forward),
        backward: Rc::new(backward),
    })
}

/// How many transformers exist between two finite boundaries, by direct
/// combinatorics: for each domain request, a codomain request plus a
/// backward map from its responses.
pub fn hom_count(dom: &FiniteContainer, cod: &FiniteContainer) -> u128 {
    let mut total: u128 = 1;
    for x in 0..dom.request_count() {
        let dx = dom.responses(x).len() as u128;
        let mut per_request: u128 = 0;
        for y in 0..cod.request_count() {
            per_request += dx.pow(cod.responses(y).len() as u32);
        }
        total *= per_request;
    }
    total
}

/// Every transformer between two finite boundaries, in a stable
/// lexicographic order. Refuses when either boundary exceeds the caps.
pub fn enumerate_morphisms(
    dom: &FiniteContainer,
    cod: &FiniteContainer,
    caps: &EnumCaps,
) -> Result<Vec<FiniteMorphism>, ModelError> {
    for c in [dom, cod] {
        if c.request_count() > caps.max_requests {
            return Err(ModelError::CapExceeded {
                container: c.name().to_string(),
                detail: format!(
                    "{} requests exceeds cap {}",
                    c.request_count(),
                    caps.max_requests
                ),
            });
        }
        if c.max_responses() > caps.max_responses {
            return Err(ModelError::CapExceeded {
                container: c.name().to_string(),
                detail: format!(
                    "{} responses exceeds cap {}",
                    c.max_responses(),
                    caps.max_responses
                ),
            });
        }
    }

    // Per domain request, every (image, backward row) choice.
    let mut options: Vec<Vec<(usize, Vec<usize>)>> = Vec::with_capacity(dom.request_count());
    for x in 0..dom.request_count() {
        let dx = dom.responses(x).len();
        let mut choices = Vec::new();
        for y in 0..cod.request_count() {
            let arity = cod.responses(y).len();
            for row in index_tuples(&vec![dx; arity]) {
                choices.push((y, row));
            }
        }
        options.push(choices);
    }

    let bounds: Vec<usize> = options.iter().map(Vec::len).collect();
    let mut out = Vec::new();
    for pick in index_tuples(&bounds) {
        let mut forward = Vec::with_capacity(pick.len());
        let mut backward = Vec::with_capacity(pick.len());
        for (x, &p) in pick.iter().enumerate() {
            let (y, row) = &options[x][p];
            forward.push(*y);
            backward.push(row.clone());
        }
        out.push(FiniteMorphism {
            dom: dom.clone(),
            cod: cod.clone(),
            forward: Rc::new(forward),
            backward: Rc::new(backward),
        });
    }
    Ok(out)
}

/// Every total handler for a finite boundary: one response choice per
/// request, `choices[i]` indexing into `c.responses(i)`.
pub fn enumerate_handlers(c: &FiniteContainer) -> Vec<Vec<usize>> {
    let bounds: Vec<usize> = (0..c.request_count())
        .map(|i| c.responses(i).len())
        .collect();
    index_tuples(&bounds)
}

/// All index tuples below the given per-position bounds, in lexicographic
/// order with the leftmost position most significant. Empty bounds yield
/// the single empty tuple.
pub(crate) fn index_tuples(bounds: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if bounds.iter().any(|&b| b == 0) {
        return out;
    }
    let mut cur = vec![0usize; bounds.len()];
    loop {
        out.push(cur.clone());
        let mut k = bounds.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            cur[k] += 1;
            if cur[k] < bounds[k] {
                break;
            }
            cur[k] = 0;
            if k == 0 {
                return out;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_one() -> FiniteContainer {
        // one request with two responses, one with one
        FiniteContainer::new(
            "D",
            vec![
                (Value::atom("x"), vec![Value::atom("r0"), Value::atom("r1")]),
                (Value::atom("y"), vec![Value::atom("s0")]),
            ],
        )
        .unwrap()
    }

    fn just_unit() -> FiniteContainer {
        FiniteContainer::new("1", vec![(Value::Unit, vec![Value::Unit])]).unwrap()
    }

    #[test]
    fn enumeration_count_matches_the_formula() {
        let d = two_one();
        let u = just_unit();
        for (a, b) in [(&d, &d), (&d, &u), (&u, &d), (&u, &u)] {
            let ms = enumerate_morphisms(a, b, &EnumCaps::default()).unwrap();
            assert_eq!(ms.len() as u128, hom_count(a, b));
        }
        // by hand: each D request picks a D request and a backward map
        // x (2 resps): into x: 2^2=4, into y: 2^1=2 -> 6; y (1 resp): 1+1=2
        assert_eq!(hom_count(&d, &d), 12);
    }

    #[test]
    fn enumeration_is_deterministic_and_distinct() {
        let d = two_one();
        let a = enumerate_morphisms(&d, &d, &EnumCaps::default()).unwrap();
        let b = enumerate_morphisms(&d, &d, &EnumCaps::default()).unwrap();
        assert_eq!(a, b);
        for (i, m) in a.iter().enumerate() {
            for n in &a[i + 1..] {
                assert_ne!(m, n);
            }
        }
    }

    #[test]
    fn caps_refuse_large_boundaries() {
        let wide = FiniteContainer::new(
            "W",
            vec![
                (Value::atom("a"), vec![Value::Unit]),
                (Value::atom("b"), vec![Value::Unit]),
                (Value::atom("c"), vec![Value::Unit]),
                (Value::atom("d"), vec![Value::Unit]),
            ],
        )
        .unwrap();
        let err = enumerate_morphisms(&wide, &wide, &EnumCaps::default()).unwrap_err();
        assert!(matches!(err, ModelError::CapExceeded { .. }));
    }

    #[test]
    fn compose_tables_threads_backward_through_both() {
        let d = two_one();
        let ms = enumerate_morphisms(&d, &d, &EnumCaps::default()).unwrap();
        let id = FiniteMorphism::identity(&d);
        for m in &ms {
            assert_eq!(&compose_tables(m, &id).unwrap(), m);
            assert_eq!(&compose_tables(&id, m).unwrap(), m);
        }
    }

    #[test]
    fn apply_helpers_follow_the_tables() {
        let d = two_one();
        let u = just_unit();
        let collapse = enumerate_morphisms(&d, &u, &EnumCaps::default())
            .unwrap()
            .into_iter()
            .next()
            .unwrap();
        assert_eq!(collapse.apply_forward(&Value::atom("x")).unwrap(), Value::Unit);
        let back = collapse
            .apply_backward(&Value::atom("x"), &Value::Unit)
            .unwrap();
        assert_eq!(back, Value::atom("r0"));
        assert!(collapse.apply_forward(&Value::atom("zz")).is_err());
    }

    #[test]
    fn handlers_cover_all_choices() {
        let d = two_one();
        let hs = enumerate_handlers(&d);
        assert_eq!(hs.len(), 2); // 2 responses for x × 1 for y
        assert!(hs.contains(&vec![0, 0]));
        assert!(hs.contains(&vec![1, 0]));
    }
}
