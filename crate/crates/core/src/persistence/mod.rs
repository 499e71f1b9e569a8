//! Sublevel Vietoris–Rips persistence over `F_p`.

mod complex;
mod functor;
mod grid;
mod homology;
mod interleave;

pub use complex::{sublevel, superlevel, vr_complex, SimplicialComplex};
pub use functor::{geometric_ph_map, ph_functor, ph_functor_on, PhFunctor};
pub use grid::{cell, induced_morphism, inclusion_map, ph_grid, BigradedPersistence, Cell, Grid, PhMorphism};
pub use homology::{chain_image, check_simplicial, homology, induced_map, HomologySpace};
pub use interleave::{
    barcode_csv, bottleneck_distance, bottleneck_lower, interleave_upper, slice_barcode, slice_barcode_for,
    superlevel_duality_check, Bar, InterleavingResult,
};
