use std::collections::HashMap;
use std::sync::Arc;

use super::free::{FreeStrand, GradedFreeModule, PolyMatrix};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::polycore::{Monomial, Polynomial, RingPresentation};

/// A finitely presented graded module: the cokernel of the relation columns
/// into the free module on the generators.
#[derive(Clone, Debug)]
pub struct PresentedModule {
    ring: Arc<RingPresentation>,
    free: GradedFreeModule,
    relations: Vec<Vec<Polynomial>>,
    relation_degrees: Vec<i64>,
}

impl PresentedModule {
    /// Generators must be listed by ascending degree. Zero columns (modulo
    /// the ideal) are pruned; inhomogeneous columns are rejected.
    pub fn new(ring: Arc<RingPresentation>, scale: u32, degrees: Vec<i64>, relations: Vec<Vec<Polynomial>>) -> Result<Self> {
        if degrees.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Precondition("module generators must be sorted by degree".into()));
        }
        let s = scale as i64;
        let mut kept = Vec::new();
        let mut kept_degrees = Vec::new();
        for col in relations {
            if col.len() != degrees.len() {
                return Err(Error::ArityMismatch { expected: degrees.len(), found: col.len() });
            }
            let col: Vec<Polynomial> = col.iter().map(|p| ring.normal_form(p)).collect();
            let mut degree = None;
            for (g, p) in col.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                if !p.is_homogeneous() {
                    return Err(Error::Inhomogeneous(p.to_string()));
                }
                let d = degrees[g] + s * p.total_degree().unwrap() as i64;
                if degree.is_some_and(|e| e != d) {
                    return Err(Error::Inhomogeneous(format!("relation column with entries of mixed degree ({p})")));
                }
                degree = Some(d);
            }
            if let Some(d) = degree {
                kept.push(col);
                kept_degrees.push(d);
            }
        }
        Ok(PresentedModule { ring, free: GradedFreeModule::new(degrees, scale), relations: kept, relation_degrees: kept_degrees })
    }

    /// A free module, no relations.
    pub fn free(ring: Arc<RingPresentation>, module: GradedFreeModule) -> Self {
        PresentedModule { ring, free: module, relations: Vec::new(), relation_degrees: Vec::new() }
    }

    /// The residue field `k = R/𝔪` in degree 0.
    pub fn residue_field(ring: &Arc<RingPresentation>, scale: u32) -> Self {
        let rels = ring.variables().into_iter().map(|x| vec![x]).collect();
        Self::new(ring.clone(), scale, vec![0], rels).expect("residue field presentation is homogeneous")
    }

    /// A direct sum of copies of `k` in the given degrees.
    pub fn trivial(ring: &Arc<RingPresentation>, scale: u32, degrees: Vec<i64>) -> Self {
        let n = degrees.len();
        let zero = Polynomial::zero(ring.ring());
        let mut rels = Vec::new();
        for g in 0..n {
            for x in ring.variables() {
                let mut col = vec![zero.clone(); n];
                col[g] = x;
                rels.push(col);
            }
        }
        Self::new(ring.clone(), scale, degrees, rels).expect("trivial module presentation is homogeneous")
    }

    pub fn ring(&self) -> &Arc<RingPresentation> {
        &self.ring
    }

    pub fn scale(&self) -> u32 {
        self.free.scale()
    }

    pub fn generators(&self) -> &GradedFreeModule {
        &self.free
    }

    pub fn degrees(&self) -> &[i64] {
        self.free.degrees()
    }

    pub fn num_generators(&self) -> usize {
        self.free.rank()
    }

    pub fn relations(&self) -> &[Vec<Polynomial>] {
        &self.relations
    }

    pub fn is_free(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn max_generator_degree(&self) -> i64 {
        self.free.max_degree().unwrap_or(0)
    }

    pub fn strand(&self, degree: i64) -> ModuleStrand {
        let free = FreeStrand::new(&self.ring, &self.free, degree);
        let mut rels = Echelon::new(self.ring.field());
        let s = self.scale() as i64;
        for (col, &d) in self.relations.iter().zip(&self.relation_degrees) {
            let rest = degree - d;
            if rest < 0 || rest % s != 0 {
                continue;
            }
            for m in self.ring.quotient_basis((rest / s) as u32).iter() {
                rels.insert(free.coords_of_product(&self.ring, m, col));
            }
        }
        let quotient: Vec<usize> = (0..free.dim()).filter(|i| !rels.is_pivot(*i)).collect();
        let qindex = quotient.iter().enumerate().map(|(q, &i)| (i, q)).collect();
        ModuleStrand { degree, free, rels, quotient, qindex }
    }
}

/// One degree of a presented module: the free strand, the span of the
/// relations in it, and a basis of the quotient given by non-pivot positions.
#[derive(Clone, Debug)]
pub struct ModuleStrand {
    degree: i64,
    free: FreeStrand,
    rels: Echelon,
    quotient: Vec<usize>,
    qindex: HashMap<usize, usize>,
}

impl ModuleStrand {
    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.quotient.len()
    }

    pub fn free(&self) -> &FreeStrand {
        &self.free
    }

    /// The generator and monomial behind quotient basis vector `q`.
    pub fn lift(&self, q: usize) -> &(usize, Monomial) {
        &self.free.basis()[self.quotient[q]]
    }

    /// Quotient coordinates of a vector of the free strand.
    pub fn project(&self, v: &SparseVec) -> SparseVec {
        self.rels.reduce(v).map_indices(|i| self.qindex[&i])
    }

    /// Quotient coordinates of `m · column`.
    pub fn project_product(&self, ring: &RingPresentation, m: &Monomial, column: &[Polynomial]) -> SparseVec {
        self.project(&self.free.coords_of_product(ring, m, column))
    }
}

/// A bounded complex of presented modules. `diffs[k]` sends generator `g`
/// of `terms[k]` to a column over the generators of `terms[k - 1]`.
#[derive(Clone, Debug)]
pub struct ModuleComplex {
    lo: i64,
    terms: Vec<PresentedModule>,
    diffs: Vec<PolyMatrix>,
}

impl ModuleComplex {
    pub fn new(lo: i64, terms: Vec<PresentedModule>, diffs: Vec<PolyMatrix>) -> Result<Self> {
        if terms.is_empty() || terms.len() != diffs.len() {
            return Err(Error::Precondition("a module complex needs one differential per term".into()));
        }
        let scale = terms[0].scale();
        for (k, t) in terms.iter().enumerate() {
            if t.scale() != scale || !Arc::ptr_eq(t.ring(), terms[0].ring()) {
                return Err(Error::Precondition("terms of a module complex must share ring and grading".into()));
            }
            let rows = if k == 0 { 0 } else { terms[k - 1].num_generators() };
            if diffs[k].ncols() != t.num_generators() || diffs[k].nrows() != rows {
                return Err(Error::ArityMismatch { expected: t.num_generators(), found: diffs[k].ncols() });
            }
        }
        Ok(ModuleComplex { lo, terms, diffs })
    }

    pub fn single(module: PresentedModule) -> Self {
        let n = module.num_generators();
        ModuleComplex { lo: 0, terms: vec![module], diffs: vec![PolyMatrix::empty(n)] }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn terms(&self) -> &[PresentedModule] {
        &self.terms
    }

    pub fn diffs(&self) -> &[PolyMatrix] {
        &self.diffs
    }

    pub fn ring(&self) -> &Arc<RingPresentation> {
        self.terms[0].ring()
    }

    pub fn scale(&self) -> u32 {
        self.terms[0].scale()
    }

    pub fn max_generator_degree(&self) -> i64 {
        self.terms.iter().map(PresentedModule::max_generator_degree).max().unwrap_or(0)
    }

    /// Each composite `d_{k-1} ∘ d_k` sends every generator into the
    /// relations of its target.
    pub fn verify_d_squared(&self) -> bool {
        let ring = self.ring();
        for k in 2..self.terms.len() {
            let comp = self.diffs[k - 1].compose(&self.diffs[k], ring);
            for (g, col) in comp.cols().iter().enumerate() {
                let strand = self.terms[k - 2].strand(self.terms[k].degrees()[g]);
                if !strand.project(&strand.free().coords_of_reduced(col)).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}
