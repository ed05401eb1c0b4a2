//! A finite, first-order model of the whole library: boundaries as small
//! request/response tables, transformers as index tables, effects as
//! functions on response lists.
//!
//! The model exists so that laws can be checked by exhaustive enumeration
//! instead of by sampling. Each typed combinator has a table-level
//! counterpart here that is implemented independently (directly from the
//! defining equations, with no shared code), which makes the model usable
//! as an oracle: the law checker reifies typed transformers into tables and
//! compares them against the model route.

pub mod bridge;
pub mod container;
pub mod derived;
pub mod effect;
pub mod morphism;
pub mod value;

pub use container::{FiniteContainer, ModelError};
pub use morphism::{
    compose_tables, enumerate_handlers, enumerate_morphisms, hom_count, morphism_equal, EnumCaps,
    FiniteMorphism,
};
pub use value::Value;
