//! Boundaries described by data — a request type plus, per request, the
//! responses that can answer it — and the transformers between them.
//!
//! The crate has three layers:
//!
//! * [`container`] and [`combinators`] define boundaries, transformers, and
//!   the constructions (choice, option, sequencing, iteration) used to build
//!   composite boundaries, all statically typed.
//! * [`effects`] lifts boundaries so answers arrive inside a functor, and
//!   assembles effectful handlers for composite boundaries.
//! * [`model`] and [`laws`] re-express small boundaries as finite tables so
//!   every stated equation can be checked by exhaustive enumeration, with
//!   mutation probes confirming the checker can actually fail.

pub mod combinators;
pub mod container;
pub mod effects;
pub mod laws;
pub mod model;

pub use combinators::{
    coproduct_map, diagonal, kleisli_compose, maybe_all_map, maybe_iso_from, maybe_iso_to,
    maybe_join, maybe_u, maybe_unit, single, star_map, unit_left, unit_right, MaybeAll, Seq,
    SeqReq, Star, StarPath, StarShape, Sum,
};
pub use container::{
    compose, costate, exec, identity, protocol_violation, run, state, value, Container, Context,
    Costate, Morphism, State, Step, Unit,
};
pub use effects::{
    comult, counit, distrib_maybe, distrib_maybe_inv, distrib_plus, distrib_plus_inv, lift_map,
    lift_state, seq_m, star_m, Effect, Lifted, MonadEffect,
};
pub use laws::{check_all_laws, LawConfig, LawReport};
