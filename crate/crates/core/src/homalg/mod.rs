//! Graded chain complexes over presented rings, homology by per-degree
//! linear algebra, truncated minimal free resolutions, Betti tables and Tor.

mod free;
mod module;
mod resolution;
mod strand;
mod tor;

pub use free::{strand_matrix, FreeStrand, GradedChainComplex, GradedFreeModule, GradedModuleMap, PolyMatrix};
pub use module::{ModuleComplex, ModuleStrand, PresentedModule};
pub use resolution::{default_degree_bound, minimal_resolution, BettiTable, Resolution, Truncation};
pub use strand::{ChainStrand, HomologyTable, StrandComplex};
pub use tor::{tor_dims, tor_from_resolution};

use crate::polycore::RingPresentation;

/// Convolution of two dimension sequences, truncated to the first `len`.
pub fn convolve(a: &[usize], b: &[usize], len: usize) -> Vec<usize> {
    (0..len).map(|n| (0..=n).map(|i| a.get(i).copied().unwrap_or(0) * b.get(n - i).copied().unwrap_or(0)).sum()).collect()
}

/// `dim_k Tor_i(k, k)` through `n`, with the default degree bound.
pub fn residue_field_betti(ring: &std::sync::Arc<RingPresentation>, n: usize) -> crate::error::Result<BettiTable> {
    let k = PresentedModule::residue_field(ring, 1);
    let d = default_degree_bound(ring, 1, 0, n);
    Ok(minimal_resolution(&k, n, d)?.betti)
}
