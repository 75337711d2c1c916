use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::strand::{ChainStrand, HomologyTable, StrandComplex};
use crate::linalg::{SparseMatrix, SparseVec};
use crate::polycore::{Monomial, Polynomial, RingPresentation};

/// A graded free module `⊕ R(-a_g)`. With `scale = s` the ring's variables
/// carry degree `s` instead of 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedFreeModule {
    degrees: Vec<i64>,
    scale: u32,
}

impl GradedFreeModule {
    pub fn new(degrees: Vec<i64>, scale: u32) -> Self {
        assert!(scale >= 1);
        debug_assert!(degrees.windows(2).all(|w| w[0] <= w[1]), "generator degrees must ascend");
        GradedFreeModule { degrees, scale }
    }

    pub fn zero(scale: u32) -> Self {
        GradedFreeModule { degrees: Vec::new(), scale }
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.degrees.iter().copied().max()
    }
}

/// A matrix of polynomials stored by columns, `nrows` rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    nrows: usize,
    cols: Vec<Vec<Polynomial>>,
}

impl PolyMatrix {
    pub fn new(nrows: usize, cols: Vec<Vec<Polynomial>>) -> Self {
        assert!(cols.iter().all(|c| c.len() == nrows), "column length must equal the row count");
        PolyMatrix { nrows, cols }
    }

    pub fn empty(ncols: usize) -> Self {
        PolyMatrix { nrows: 0, cols: vec![Vec::new(); ncols] }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn col(&self, j: usize) -> &[Polynomial] {
        &self.cols[j]
    }

    pub fn cols(&self) -> &[Vec<Polynomial>] {
        &self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.cols[j][i]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.cols[j][i] = p;
    }

    /// `self · other`, entries reduced modulo the ring's ideal.
    pub fn compose(&self, other: &PolyMatrix, ring: &RingPresentation) -> PolyMatrix {
        assert_eq!(self.ncols(), other.nrows);
        let cols = other
            .cols
            .iter()
            .map(|c| {
                (0..self.nrows)
                    .map(|i| {
                        let mut acc = Polynomial::zero(ring.ring());
                        for (l, b) in c.iter().enumerate() {
                            if !b.is_zero() && !self.cols[l][i].is_zero() {
                                acc = acc.add(&self.cols[l][i].mul(b));
                            }
                        }
                        ring.normal_form(&acc)
                    })
                    .collect()
            })
            .collect();
        PolyMatrix { nrows: self.nrows, cols }
    }

    pub fn neg(&self) -> PolyMatrix {
        PolyMatrix { nrows: self.nrows, cols: self.cols.iter().map(|c| c.iter().map(Polynomial::neg).collect()).collect() }
    }

    pub fn is_zero_in(&self, ring: &RingPresentation) -> bool {
        self.cols.iter().flatten().all(|p| ring.is_zero(p))
    }
}

/// A homogeneous map of graded free modules.
#[derive(Clone, Debug)]
pub struct GradedModuleMap {
    pub source: GradedFreeModule,
    pub target: GradedFreeModule,
    pub matrix: PolyMatrix,
}

impl GradedModuleMap {
    /// Entry `(i, j)` is zero or homogeneous of degree
    /// `(deg source_j - deg target_i) / scale`.
    pub fn is_homogeneous(&self) -> bool {
        let s = self.source.scale as i64;
        for (j, col) in self.matrix.cols().iter().enumerate() {
            for (i, p) in col.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                let want = self.source.degrees[j] - self.target.degrees[i];
                if !p.is_homogeneous() || want % s != 0 || p.total_degree().map(|d| d as i64 * s) != Some(want) {
                    return false;
                }
            }
        }
        true
    }
}

/// The k-basis of a free module in one internal degree: pairs of a
/// generator and a standard monomial.
#[derive(Clone, Debug, Default)]
pub struct FreeStrand {
    basis: Vec<(usize, Monomial)>,
    index: HashMap<(usize, Monomial), usize>,
}

impl FreeStrand {
    pub fn new(ring: &RingPresentation, module: &GradedFreeModule, degree: i64) -> Self {
        let s = module.scale as i64;
        let mut basis = Vec::new();
        for (g, &a) in module.degrees.iter().enumerate() {
            let rest = degree - a;
            if rest < 0 || rest % s != 0 {
                continue;
            }
            for m in ring.quotient_basis((rest / s) as u32).iter() {
                basis.push((g, m.clone()));
            }
        }
        let index = basis.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        FreeStrand { basis, index }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[(usize, Monomial)] {
        &self.basis
    }

    pub fn position(&self, g: usize, m: &Monomial) -> Option<usize> {
        self.index.get(&(g, m.clone())).copied()
    }

    /// Coordinates of `Σ_g column[g] · e_g`, already reduced modulo the ideal.
    pub fn coords_of_reduced(&self, column: &[Polynomial]) -> SparseVec {
        let mut entries = Vec::new();
        for (g, p) in column.iter().enumerate() {
            for (m, c) in p.terms() {
                let i = self.position(g, m).unwrap_or_else(|| panic!("monomial {m:?} of generator {g} is outside this strand"));
                entries.push((i, c.clone()));
            }
        }
        SparseVec::from_entries(entries)
    }

    /// Coordinates of `m · column`.
    pub fn coords_of_product(&self, ring: &RingPresentation, m: &Monomial, column: &[Polynomial]) -> SparseVec {
        let reduced: Vec<Polynomial> = column.iter().map(|p| if p.is_zero() { p.clone() } else { ring.mul_reduce(m, p) }).collect();
        self.coords_of_reduced(&reduced)
    }

    /// Converts coordinates back to a column of polynomials.
    pub fn to_column(&self, ring: &RingPresentation, rank: usize, v: &SparseVec) -> Vec<Polynomial> {
        let mut col = vec![Polynomial::zero(ring.ring()); rank];
        for (i, c) in v.entries() {
            let (g, m) = &self.basis[*i];
            col[*g].add_term(m.clone(), c);
        }
        col
    }
}

/// Matrix of a map of free modules on one internal-degree strand.
pub fn strand_matrix(ring: &RingPresentation, source: &FreeStrand, target: &FreeStrand, map: &PolyMatrix) -> SparseMatrix {
    let cols = source.basis().iter().map(|(g, m)| target.coords_of_product(ring, m, map.col(*g))).collect();
    SparseMatrix::new(target.dim(), cols)
}

/// A bounded complex of graded free modules over a presented ring.
/// `modules[k]` sits in homological degree `lo + k` and `maps[k]` is the
/// differential out of it (`maps[0]` has no rows).
#[derive(Clone, Debug)]
pub struct GradedChainComplex {
    ring: Arc<RingPresentation>,
    lo: i64,
    modules: Vec<GradedFreeModule>,
    maps: Vec<PolyMatrix>,
}

impl GradedChainComplex {
    pub fn new(ring: Arc<RingPresentation>, lo: i64, modules: Vec<GradedFreeModule>, maps: Vec<PolyMatrix>) -> Self {
        assert_eq!(modules.len(), maps.len());
        for (k, m) in maps.iter().enumerate() {
            assert_eq!(m.ncols(), modules[k].rank());
            assert_eq!(m.nrows(), if k == 0 { 0 } else { modules[k - 1].rank() });
        }
        GradedChainComplex { ring, lo, modules, maps }
    }

    pub fn ring(&self) -> &Arc<RingPresentation> {
        &self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn modules(&self) -> &[GradedFreeModule] {
        &self.modules
    }

    pub fn maps(&self) -> &[PolyMatrix] {
        &self.maps
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(GradedFreeModule::rank).collect()
    }

    pub fn scale(&self) -> u32 {
        self.modules.first().map_or(1, GradedFreeModule::scale)
    }

    /// The differential `C_k → C_{k-1}` as a homogeneous map.
    pub fn differential(&self, k: usize) -> GradedModuleMap {
        GradedModuleMap {
            source: self.modules[k].clone(),
            target: if k == 0 { GradedFreeModule::zero(self.scale()) } else { self.modules[k - 1].clone() },
            matrix: self.maps[k].clone(),
        }
    }

    /// Suspension: `(ΣC)_i = C_{i-1}` with negated differential.
    pub fn shift(&self) -> GradedChainComplex {
        GradedChainComplex { ring: self.ring.clone(), lo: self.lo + 1, modules: self.modules.clone(), maps: self.maps.iter().map(PolyMatrix::neg).collect() }
    }

    /// Every composite of consecutive differentials has entries with zero
    /// normal form.
    pub fn verify_d_squared(&self) -> bool {
        (2..self.maps.len()).all(|k| self.maps[k - 1].compose(&self.maps[k], &self.ring).is_zero_in(&self.ring))
    }

    /// Every differential entry lies in the maximal ideal.
    pub fn is_minimal(&self) -> bool {
        self.maps.iter().flat_map(|m| m.cols().iter().flatten()).all(|p| p.constant_term().is_zero())
    }

    /// Linear-algebra strands in internal degrees `0..=max_degree`.
    pub fn strands(&self, max_degree: i64) -> StrandComplex {
        let field = self.ring.field();
        let strands: Vec<ChainStrand> = (0..=max_degree)
            .into_par_iter()
            .map(|j| {
                let frees: Vec<FreeStrand> = self.modules.iter().map(|m| FreeStrand::new(&self.ring, m, j)).collect();
                let dims = frees.iter().map(FreeStrand::dim).collect();
                let diffs = (0..self.modules.len())
                    .map(|k| if k == 0 { SparseMatrix::zero(0, frees[0].dim()) } else { strand_matrix(&self.ring, &frees[k], &frees[k - 1], &self.maps[k]) })
                    .collect();
                ChainStrand { degree: j, dims, diffs }
            })
            .collect();
        StrandComplex::new(field, self.lo, self.modules.len(), strands)
    }

    /// `dim_k H_i(C)_j` for `j ≤ max_degree`. A bound below the top generator
    /// degree of some term is reported as a truncation flag.
    pub fn homology_dims(&self, max_degree: i64) -> HomologyTable {
        let mut table = self.strands(max_degree).homology();
        for (k, m) in self.modules.iter().enumerate() {
            if let Some(top) = m.max_degree() {
                if top > max_degree {
                    table.flags.push(format!(
                        "degree bound {max_degree} is below generator degree {top} of the term in homological degree {}",
                        self.lo + k as i64
                    ));
                }
            }
        }
        table
    }
}
