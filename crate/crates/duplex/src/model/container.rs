//! Boundaries small enough to write down in full: explicit request lists
//! and per-request response lists, the ground the law checker stands on.

use std::collections::HashMap;
use std::rc::Rc;

use super::value::Value;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("container {container}: duplicate request {request}")]
    DuplicateRequest { container: String, request: String },
    #[error("container {container}: duplicate response {response} for request {request}")]
    DuplicateResponse {
        container: String,
        request: String,
        response: String,
    },
    #[error("container {container}: request {request} has no responses")]
    EmptyResponses { container: String, request: String },
    #[error("container {container}: unknown request {request}")]
    UnknownRequest { container: String, request: String },
    #[error("container {container}: unknown response {response} for request {request}")]
    UnknownResponse {
        container: String,
        request: String,
        response: String,
    },
    #[error("morphism {dom} => {cod}: malformed table ({detail})")]
    MalformedTables {
        dom: String,
        cod: String,
        detail: String,
    },
    #[error("enumeration cap exceeded for {container}: {detail}")]
    CapExceeded { container: String, detail: String },
}

struct ContainerData {
    name: String,
    requests: Vec<Value>,
    responses: Vec<Vec<Value>>,
    request_index: HashMap<Value, usize>,
    response_index: Vec<HashMap<Value, usize>>,
}

/// A fully-enumerated boundary: every request, and every response each
/// request admits, as explicit values. Cloning shares the data.
#[derive(Clone)]
pub struct FiniteContainer(Rc<ContainerData>);

impl FiniteContainer {
    /// Build from (request, responses) rows. Requests must be distinct,
    /// responses distinct per request, and every request needs at least one
    /// response.
    pub fn new(name: &str, rows: Vec<(Value, Vec<Value>)>) -> Result<Self, ModelError> {
        let mut requests = Vec::with_capacity(rows.len());
        let mut responses = Vec::with_capacity(rows.len());
        let mut request_index = HashMap::new();
        let mut response_index = Vec::with_capacity(rows.len());
        for (req, resps) in rows {
            if request_index.insert(req.clone(), requests.len()).is_some() {
                return Err(ModelError::DuplicateRequest {
                    container: name.to_string(),
                    request: req.to_string(),
                });
            }
            if resps.is_empty() {
                return Err(ModelError::EmptyResponses {
                    container: name.to_string(),
                    request: req.to_string(),
                });
            }
            let mut index = HashMap::new();
            for (i, r) in resps.iter().enumerate() {
                if index.insert(r.clone(), i).is_some() {
                    return Err(ModelError::DuplicateResponse {
                        container: name.to_string(),
                        request: req.to_string(),
                        response: r.to_string(),
                    });
                }
            }
            requests.push(req);
            responses.push(resps);
            response_index.push(index);
        }
        Ok(FiniteContainer(Rc::new(ContainerData {
            name: name.to_string(),
            requests,
            responses,
            request_index,
            response_index,
        })))
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn requests(&self) -> &[Value] {
        &self.0.requests
    }

    pub fn request_count(&self) -> usize {
        self.0.requests.len()
    }

    /// Responses admitted by the request at `req_idx`.
    pub fn responses(&self, req_idx: usize) -> &[Value] {
        &self.0.responses[req_idx]
    }

    pub fn request_index(&self, req: &Value) -> Option<usize> {
        self.0.request_index.get(req).copied()
    }

    pub fn response_index(&self, req_idx: usize, resp: &Value) -> Option<usize> {
        self.0.response_index[req_idx].get(resp).copied()
    }

    /// The largest response count any single request has.
    pub fn max_responses(&self) -> usize {
        self.0.responses.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Containers are compared by identity of their tables, not by name.
    pub fn same_shape(&self, other: &FiniteContainer) -> bool {
        self.0.requests == other.0.requests && self.0.responses == other.0.responses
    }
}

impl std::fmt::Debug for FiniteContainer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "FiniteContainer({}, {} requests)",
            self.0.name,
            self.0.requests.len()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookups_agree_with_order() {
        let c = FiniteContainer::new(
            "T",
            vec![
                (Value::atom("x"), vec![Value::atom("r0"), Value::atom("r1")]),
                (Value::atom("y"), vec![Value::atom("s0")]),
            ],
        )
        .unwrap();
        assert_eq!(c.request_count(), 2);
        assert_eq!(c.request_index(&Value::atom("y")), Some(1));
        assert_eq!(c.response_index(0, &Value::atom("r1")), Some(1));
        assert_eq!(c.response_index(1, &Value::atom("r1")), None);
        assert_eq!(c.max_responses(), 2);
    }

    #[test]
    fn duplicate_requests_are_rejected() {
        let err = FiniteContainer::new(
            "T",
            vec![
                (Value::atom("x"), vec![Value::Unit]),
                (Value::atom("x"), vec![Value::Unit]),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, ModelError::DuplicateRequest { .. }));
    }

    #[test]
    fn empty_response_sets_are_rejected() {
        let err = FiniteContainer::new("T", vec![(Value::atom("x"), vec![])]).unwrap_err();
        assert!(matches!(err, ModelError::EmptyResponses { .. }));
    }
}
