//! Bounded-exhaustive checks of the calculus' metatheory.

mod checks;
mod gen;
mod graph;

pub use checks::*;
pub use gen::{
    gen_omega, gen_spindle, gen_typed, gen_typed_sized, gen_untyped_proper, gen_untyped_sized, GenError, OMEGA_SRC,
};
pub use graph::{build_graph, check_sn, sn_of_graph, Bounds, ReductionGraph, Relation, SnVerdict};
