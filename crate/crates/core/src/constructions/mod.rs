//! I-data on finite groups: certification, exhaustive search, and the
//! semidirect-product, tower and invariant-class constructions.

mod datum;
mod invariant;
mod sdp;
mod search;

pub use datum::{is_iyb_datum, IDatum};
pub use invariant::{invariant_preimage, is_invariant_class, metabelian_datum};
pub use sdp::{a_type_tower, sdp_iyb, StageAction, TowerResult, TowerStage};
pub use search::{abelian_groups_of_order, automorphisms, search_iyb, SearchLimits};
