//! Truncated free simplicial commutative algebras on degree-one generators,
//! their normalized chains, homotopy of augmentation-ideal powers, and
//! André–Quillen homology of complete-intersection presentations through the
//! conormal module `I/I²`.

mod algebra;
mod module;

use std::sync::Arc;

use serde::Serialize;

pub use algebra::{build_with_boundaries, Part, SimplicialGenerator, TruncatedSimplicialAlgebra};
pub use module::{trusted_homology, SimplicialStrand, TruncatedSimplicialModule};

use crate::error::{Error, Result};
use crate::homalg::HomologyTable;
use crate::polycore::{Polynomial, RingPresentation};

pub const DEFAULT_LEVELS: usize = 5;
pub const DEFAULT_DEGREE_BOUND: i64 = 10;

/// `R[ξ_1, …, ξ_n | ∂ξ_j = f_j]`, whose normalized chains recover the
/// classical Koszul complex.
pub fn simplicial_koszul(ring: &Arc<RingPresentation>, sequence: &[Polynomial], levels: usize) -> Result<TruncatedSimplicialAlgebra> {
    let gens = sequence.iter().enumerate().map(|(j, f)| SimplicialGenerator::new(format!("ξ{}", j + 1), f.clone())).collect();
    build_with_boundaries(ring, gens, levels)
}

/// `dim π_i` of the algebra itself (as a simplicial vector space), `i < L`.
pub fn homotopy_dims(a: &TruncatedSimplicialAlgebra, degree_bound: i64) -> HomologyTable {
    trusted_homology(a.normalized_complex(Part::Whole, degree_bound).homology(), a.levels())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AqTruncation {
    #[serde(rename = "L")]
    pub levels: usize,
    #[serde(rename = "D")]
    pub degree_bound: i64,
    pub flags: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AqReport {
    /// `dim AQ_i` for `i = 0, 1, 2` (fewer when `L < 3`).
    pub aq_dims: Vec<usize>,
    /// `dim AQ_i` for `3 ≤ i < L`.
    pub higher: Vec<usize>,
    pub table: HomologyTable,
    pub truncation: AqTruncation,
}

/// `AQ_i(R) = H_i(N(I/I²))` for the replacement `P[ξ_j | ∂ξ_j = f_j]` of
/// `R = P/(f)`, which is cofibrant exactly when `f` is a regular sequence.
pub fn aq_dims(ring: &Arc<RingPresentation>, levels: usize, degree_bound: i64) -> Result<AqReport> {
    let gens = ring.generators();
    let codim = ring.nvars() - ring.krull_dim();
    if gens.len() != codim {
        return Err(Error::Precondition(format!(
            "the presentation has {} generators but codimension {codim}, so they do not form a regular sequence; \
             adjoining one degree-one cell per generator does not give a cofibrant replacement",
            gens.len()
        )));
    }
    let ambient = RingPresentation::new(ring.ring().clone(), Vec::new())?;
    let a = simplicial_koszul(&ambient, gens, levels)?;
    let mut flags = Vec::new();
    if let Some(&w) = a.weights().iter().max() {
        if w > degree_bound {
            flags.push(format!("degree bound {degree_bound} is below the generator degree {w}"));
        }
    }
    let mut table = a.conormal_module(degree_bound).normalized_homology();
    table.flags = flags.clone();
    let totals = table.totals();
    let (low, high) = totals.split_at(totals.len().min(3));
    Ok(AqReport { aq_dims: low.to_vec(), higher: high.to_vec(), table, truncation: AqTruncation { levels, degree_bound, flags } })
}

/// `dim π_i(I^n)` for `i ≤ i_max`, with `I` the augmentation ideal. The
/// algebra must be connected: `π_0(I) = 0` in every strand up to the bound.
pub fn ideal_power_homotopy(a: &TruncatedSimplicialAlgebra, n: u32, i_max: usize, degree_bound: i64) -> Result<HomologyTable> {
    if n == 0 {
        return Err(Error::Precondition("ideal power must be at least 1".into()));
    }
    if i_max >= a.levels() {
        return Err(Error::Precondition(format!("π_{i_max} needs more than {} levels", a.levels())));
    }
    let pi0 = a.normalized_complex(Part::AugmentationPower(1), degree_bound).homology();
    if let Some(((_, j), d)) = pi0.dims.iter().find(|((i, _), _)| *i == 0) {
        return Err(Error::Precondition(format!(
            "the augmentation ideal is not connected: π_0(I) has dimension {d} in internal degree {j}; \
             the vanishing of π_i(I^n) for i < n is only available for connected algebras"
        )));
    }
    Ok(trusted_homology(a.normalized_complex(Part::AugmentationPower(n), degree_bound).homology(), i_max + 1))
}
