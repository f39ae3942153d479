//! The normalised functions `G_T`, the element `epsilon`, the embedding by
//! `L(n O)` and the translation matrices `M_T`.

mod embedding;
mod epsilon;
mod gbasis;

pub use embedding::{tau_1, EmbeddingData};
pub use epsilon::EpsilonTable;
pub use gbasis::GBasis;
