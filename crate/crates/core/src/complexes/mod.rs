//! Bounded complexes of projectives and their homotopy category.

mod block;
mod chain_map;
mod cohomology;
mod complex;
mod cone;
mod hom;

pub use block::BlockMap;
pub use chain_map::{ChainMap, ChainMapView};
pub use cohomology::cohomology_dims;
pub use complex::{Complex, ComplexSummary, ComplexView};
pub use cone::{cone, direct_sum, DirectSum, Triangle};
pub(crate) use hom::annihilating_maps;
pub use hom::{
    hom_space, is_contractible, is_null_homotopic, postcompose, precompose, shift_window,
    HomSpaceBasis, Homotopy, InducedMap,
};
