use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::homalg::{ChainStrand, HomologyTable, StrandComplex};
use crate::linalg::{kernel, Echelon, SparseMatrix, SparseVec};
use crate::polycore::{Field, Scalar};

/// One internal degree of a simplicial vector space. `faces[n][i]` is `d_i`
/// from level `n` to `n - 1`; `degeneracies[n][i]` is `s_i` from level `n`
/// to `n + 1`.
#[derive(Clone, Debug)]
pub struct SimplicialStrand {
    pub degree: i64,
    pub dims: Vec<usize>,
    pub faces: Vec<Vec<SparseMatrix>>,
    pub degeneracies: Vec<Vec<SparseMatrix>>,
}

/// A simplicial graded vector space through level `L`, strandwise in
/// internal degrees `0..=D`.
#[derive(Clone, Debug)]
pub struct TruncatedSimplicialModule {
    field: Field,
    levels: usize,
    degree_bound: i64,
    strands: Vec<SimplicialStrand>,
}

fn identity(n: usize, field: Field) -> SparseMatrix {
    SparseMatrix::new(n, (0..n).map(|i| SparseVec::unit(i, field)).collect())
}

fn same(a: &SparseMatrix, b: &SparseMatrix, field: Field) -> bool {
    a.nrows() == b.nrows() && a.ncols() == b.ncols() && a.axpy(&field.from_i64(-1), b).is_zero()
}

/// Only homological degrees below the truncation level are reliable.
fn trusted(mut table: HomologyTable, levels: usize) -> HomologyTable {
    table.dims.retain(|(i, _), _| (*i as usize) < levels);
    table.len = levels;
    table
}

impl TruncatedSimplicialModule {
    pub fn new(field: Field, levels: usize, degree_bound: i64, strands: Vec<SimplicialStrand>) -> Result<Self> {
        for s in &strands {
            let ok = s.dims.len() == levels + 1
                && s.faces.len() == levels + 1
                && s.degeneracies.len() == levels + 1
                && (1..=levels).all(|n| s.faces[n].len() == n + 1 && s.faces[n].iter().all(|m| m.ncols() == s.dims[n] && m.nrows() == s.dims[n - 1]))
                && (0..levels).all(|n| s.degeneracies[n].len() == n + 1 && s.degeneracies[n].iter().all(|m| m.ncols() == s.dims[n] && m.nrows() == s.dims[n + 1]));
            if !ok {
                return Err(Error::Precondition(format!("simplicial strand in degree {} has inconsistent shapes", s.degree)));
            }
        }
        Ok(TruncatedSimplicialModule { field, levels, degree_bound, strands })
    }

    /// The constant simplicial space with the given dimension in each
    /// degree, all faces and degeneracies the identity.
    pub fn constant(field: Field, levels: usize, dims: &[(i64, usize)]) -> Self {
        let strands = dims
            .iter()
            .map(|&(degree, dim)| SimplicialStrand {
                degree,
                dims: vec![dim; levels + 1],
                faces: (0..=levels).map(|n| (0..(if n == 0 { 0 } else { n + 1 })).map(|_| identity(dim, field)).collect()).collect(),
                degeneracies: (0..=levels).map(|n| (0..(if n == levels { 0 } else { n + 1 })).map(|_| identity(dim, field)).collect()).collect(),
            })
            .collect();
        let degree_bound = dims.iter().map(|d| d.0).max().unwrap_or(0);
        TruncatedSimplicialModule { field, levels, degree_bound, strands }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn degree_bound(&self) -> i64 {
        self.degree_bound
    }

    pub fn strands(&self) -> &[SimplicialStrand] {
        &self.strands
    }

    pub fn verify_identities(&self) -> bool {
        let f = self.field;
        let l = self.levels;
        self.strands.par_iter().all(|s| {
            for n in 2..=l {
                for j in 0..=n {
                    for i in 0..j {
                        if !same(&s.faces[n - 1][i].compose(&s.faces[n][j]), &s.faces[n - 1][j - 1].compose(&s.faces[n][i]), f) {
                            return false;
                        }
                    }
                }
            }
            for n in 0..l.saturating_sub(1) {
                for j in 0..=n {
                    for i in 0..=j {
                        if !same(&s.degeneracies[n + 1][i].compose(&s.degeneracies[n][j]), &s.degeneracies[n + 1][j + 1].compose(&s.degeneracies[n][i]), f) {
                            return false;
                        }
                    }
                }
            }
            for n in 0..l {
                for j in 0..=n {
                    for i in 0..=n + 1 {
                        let lhs = s.faces[n + 1][i].compose(&s.degeneracies[n][j]);
                        let rhs = if i < j {
                            s.degeneracies[n - 1][j - 1].compose(&s.faces[n][i])
                        } else if i == j || i == j + 1 {
                            identity(s.dims[n], f)
                        } else {
                            s.degeneracies[n - 1][j].compose(&s.faces[n][i - 1])
                        };
                        if !same(&lhs, &rhs, f) {
                            return false;
                        }
                    }
                }
            }
            true
        })
    }

    /// The alternating-sum complex `Σ (-1)^i d_i` on every level.
    pub fn unnormalized(&self) -> StrandComplex {
        let f = self.field;
        let strands = self
            .strands
            .par_iter()
            .map(|s| {
                let mut diffs = vec![SparseMatrix::zero(0, s.dims[0])];
                for n in 1..=self.levels {
                    let mut d = SparseMatrix::zero(s.dims[n - 1], s.dims[n]);
                    for (i, face) in s.faces[n].iter().enumerate() {
                        let sign: Scalar = if i % 2 == 0 { f.one() } else { f.from_i64(-1) };
                        d = d.axpy(&sign, face);
                    }
                    diffs.push(d);
                }
                ChainStrand { degree: s.degree, dims: s.dims.clone(), diffs }
            })
            .collect();
        StrandComplex::new(f, 0, self.levels + 1, strands)
    }

    /// `N_n = ∩_{i ≥ 1} ker d_i` with differential `d_0`, in coordinates of
    /// a kernel basis per level.
    pub fn normalize(&self) -> StrandComplex {
        let f = self.field;
        let strands = self
            .strands
            .par_iter()
            .map(|s| {
                let bases: Vec<Vec<SparseVec>> = (0..=self.levels)
                    .map(|n| {
                        if n == 0 {
                            return (0..s.dims[0]).map(|q| SparseVec::unit(q, f)).collect();
                        }
                        let rows = s.dims[n - 1];
                        let stacked: Vec<SparseVec> = (0..s.dims[n])
                            .map(|c| {
                                let entries = (1..=n).flat_map(|i| s.faces[n][i].col(c).entries().iter().map(move |(r, v)| (r + (i - 1) * rows, v.clone()))).collect();
                                SparseVec::from_entries(entries)
                            })
                            .collect();
                        kernel(&stacked, f)
                    })
                    .collect();
                let mut diffs = vec![SparseMatrix::zero(0, bases[0].len())];
                for n in 1..=self.levels {
                    let mut target = Echelon::tagged(f);
                    for v in &bases[n - 1] {
                        target.insert(v.clone());
                    }
                    let cols = bases[n].iter().map(|v| target.express(&s.faces[n][0].apply(v)).expect("d_0 preserves the normalized subspace")).collect();
                    diffs.push(SparseMatrix::new(bases[n - 1].len(), cols));
                }
                ChainStrand { degree: s.degree, dims: bases.iter().map(Vec::len).collect(), diffs }
            })
            .collect();
        StrandComplex::new(f, 0, self.levels + 1, strands)
    }

    /// `dim π_i` for `i ≤ i_max < L`, through the normalized complex.
    pub fn homotopy_groups(&self, i_max: usize) -> Result<HomologyTable> {
        if i_max >= self.levels {
            return Err(Error::Precondition(format!("π_{i_max} needs more than {} levels", self.levels)));
        }
        Ok(trusted(self.normalize().homology(), i_max + 1))
    }

    /// Homology of the normalized complex in the reliable range `i < L`.
    pub fn normalized_homology(&self) -> HomologyTable {
        trusted(self.normalize().homology(), self.levels)
    }

    pub fn unnormalized_homology(&self) -> HomologyTable {
        trusted(self.unnormalized().homology(), self.levels)
    }
}

/// Restricts a homology table of a normalized complex to degrees `< levels`.
pub fn trusted_homology(table: HomologyTable, levels: usize) -> HomologyTable {
    trusted(table, levels)
}
