//! The one value type every finite-model request and response lives in.
//!
//! Children sit behind `Rc` so values clone in O(1); the model is
//! single-threaded throughout.

use std::fmt;
use std::rc::Rc;

/// A finite-model request or response.
///
/// The same constructors serve several derived boundaries: `Pair` is a
/// sequential answer (or a sequential request when its second component is
/// a `List` continuation table), `Done`/`Step` are iteration shapes and
/// paths, and `List` is the explicit continuation table that stands in for
/// a closure. `Violation` is the graceful counterpart of a protocol
/// violation: checks report it as a mismatch instead of aborting.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Unit,
    Atom(Rc<str>),
    Left(Rc<Value>),
    Right(Rc<Value>),
    Absent,
    Present(Rc<Value>),
    Pair(Rc<Value>, Rc<Value>),
    Done,
    Step(Rc<Value>, Rc<Value>),
    List(Rc<Vec<Value>>),
    Violation(Rc<str>),
}

impl Value {
    pub fn atom(name: &str) -> Value {
        Value::Atom(Rc::from(name))
    }

    pub fn left(v: Value) -> Value {
        Value::Left(Rc::new(v))
    }

    pub fn right(v: Value) -> Value {
        Value::Right(Rc::new(v))
    }

    pub fn present(v: Value) -> Value {
        Value::Present(Rc::new(v))
    }

    pub fn pair(a: Value, b: Value) -> Value {
        Value::Pair(Rc::new(a), Rc::new(b))
    }

    pub fn step(head: Value, rest: Value) -> Value {
        Value::Step(Rc::new(head), Rc::new(rest))
    }

    pub fn list(items: Vec<Value>) -> Value {
        Value::List(Rc::new(items))
    }

    pub fn violation(context: &str) -> Value {
        Value::Violation(Rc::from(context))
    }

    pub fn is_violation(&self) -> bool {
        matches!(self, Value::Violation(_))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Unit => write!(f, "()"),
            Value::Atom(a) => write!(f, "{a}"),
            Value::Left(v) => write!(f, "inl({v})"),
            Value::Right(v) => write!(f, "inr({v})"),
            Value::Absent => write!(f, "nothing"),
            Value::Present(v) => write!(f, "just({v})"),
            Value::Pair(a, b) => write!(f, "({a}, {b})"),
            Value::Done => write!(f, "done"),
            Value::Step(h, t) => write!(f, "step({h}, {t})"),
            Value::List(items) => {
                write!(f, "[")?;
                for (i, v) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, "]")
            }
            Value::Violation(why) => write!(f, "violation({why})"),
        }
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
