//! Ways of building new boundaries out of old ones, together with how
//! transformers lift through each construction.

pub mod maybe;
pub mod seq;
pub mod star;
pub mod sum;

pub use maybe::{
    kleisli_compose, maybe_all_map, maybe_iso_from, maybe_iso_to, maybe_join, maybe_u, maybe_unit,
    MaybeAll,
};
pub use seq::{unit_left, unit_right, Seq, SeqReq};
pub use star::{single, star_map, Star, StarPath, StarShape};
pub use sum::{coproduct_map, diagonal, Sum};
