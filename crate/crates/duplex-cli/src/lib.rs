//! The demo applications behind the `duplex` binary: an embedded to-do
//! store driven through a composed line-handling pipeline, and a
//! filesystem write session whose request type enforces the
//! open/write/close order.
//!
//! Everything here is glue: the interesting structure lives in the
//! `duplex` library, and these modules only supply parsers, renderers,
//! and handlers for the primitive operations.

pub mod fs;
pub mod store;
pub mod todo;
