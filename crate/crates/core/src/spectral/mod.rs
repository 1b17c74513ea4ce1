//! Spectral sequences of filtered intersection chain complexes and the
//! neighborhood spectral sequence of the bottom stratum.

mod analysis;
mod pages;
mod skeletal;

pub use analysis::{analyze_corpus_space, corpus_stalks, NeighborhoodAnalysis};
pub use pages::{
    compute_pages, d1_cross_check, spectral_sequence_map, AbutmentRow, CellMap, D1Report, D1Row, Differential,
    FieldMatrix, FilteredChainComplex, Page, PageCell, PageLaws, SpectralSequence, SpectralSequenceMap, SCHEMA_VERSION,
};
pub use skeletal::{
    deleted_neighborhood, e1_decomposition, e2_vs_twisted, fiber_stalks, neighborhood_pages, skeletal_filtration,
    ss_map_deleted_to_full, E1DecompositionRow, E2Report, E2Row, FiberDegree, FiberStalks, FilteredIc, Piece,
    SkeletalFiltration, SsMapCheck, SsMapRow, StalkBase, StalkVariant,
};
