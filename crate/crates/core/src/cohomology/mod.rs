//! Cocycles, class decisions and the maps between cohomology sets used by
//! the lifting criterion.

mod classes;
mod cocycle;
mod maps;

pub use classes::{
    cohomologous1, cohomologous1_table, cohomologous2, enumerate_coboundaries1, enumerate_cocycles1,
    enumerate_cocycles1_table, enumerate_cocycles2, CoboundarySolver, CohClass2,
};
pub use cocycle::{
    coboundary1, is_bijective, is_bijective_table, is_cocycle1, is_cocycle1_quotient, is_cocycle1_table, is_cocycle2,
    twist_by_coboundary, twist_by_coboundary_table, OneCocycle, TwoCocycle,
};
pub use maps::{
    cocycle_module, compose_beta, inflate_and_embed, inflate_and_embed_table, omega_pi0, pointed_coboundary,
    pointed_coboundary_table, transgression, yoneda_splice, yoneda_splice_shifted,
};
