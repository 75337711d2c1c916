use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::linalg::SparseMatrix;
use crate::polycore::Field;

/// One internal-degree piece of a complex of finite-dimensional k-spaces.
/// `diffs[k]` maps position `k` to position `k - 1`; `diffs[0]` has no rows.
#[derive(Clone, Debug)]
pub struct ChainStrand {
    pub degree: i64,
    pub dims: Vec<usize>,
    pub diffs: Vec<SparseMatrix>,
}

impl ChainStrand {
    fn ranks(&self, field: Field) -> Vec<usize> {
        self.diffs.iter().map(|d| if d.ncols() == 0 || d.nrows() == 0 { 0 } else { d.rank(field) }).collect()
    }
}

/// A complex of k-spaces split into strands. Several strands may share an
/// internal degree (finer gradings); their homology is summed.
#[derive(Clone, Debug)]
pub struct StrandComplex {
    field: Field,
    lo: i64,
    len: usize,
    strands: Vec<ChainStrand>,
}

impl StrandComplex {
    pub fn new(field: Field, lo: i64, len: usize, strands: Vec<ChainStrand>) -> Self {
        for s in &strands {
            assert_eq!(s.dims.len(), len);
            assert_eq!(s.diffs.len(), len);
            for (k, d) in s.diffs.iter().enumerate() {
                assert_eq!(d.ncols(), s.dims[k]);
                assert_eq!(d.nrows(), if k == 0 { 0 } else { s.dims[k - 1] });
            }
        }
        StrandComplex { field, lo, len, strands }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn strands(&self) -> &[ChainStrand] {
        &self.strands
    }

    pub fn verify_d_squared(&self) -> bool {
        self.strands.par_iter().all(|s| (2..self.len).all(|k| s.diffs[k - 1].compose(&s.diffs[k]).is_zero()))
    }

    pub fn homology(&self) -> HomologyTable {
        let per: Vec<(i64, Vec<usize>)> = self
            .strands
            .par_iter()
            .map(|s| {
                let r = s.ranks(self.field);
                let h = (0..self.len).map(|k| s.dims[k] - r[k] - r.get(k + 1).copied().unwrap_or(0)).collect();
                (s.degree, h)
            })
            .collect();
        let mut dims = BTreeMap::new();
        let mut max_degree = i64::MIN;
        for (j, h) in per {
            max_degree = max_degree.max(j);
            for (k, d) in h.into_iter().enumerate() {
                if d > 0 {
                    *dims.entry((self.lo + k as i64, j)).or_insert(0) += d;
                }
            }
        }
        HomologyTable { lo: self.lo, len: self.len, degree_bound: max_degree, dims, flags: Vec::new() }
    }
}

/// Homology dimensions `(homological i, internal j) → dim_k H_i(C)_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyTable {
    pub lo: i64,
    pub len: usize,
    pub degree_bound: i64,
    #[serde(serialize_with = "serialize_dims")]
    pub dims: BTreeMap<(i64, i64), usize>,
    pub flags: Vec<String>,
}

fn serialize_dims<S: serde::Serializer>(dims: &BTreeMap<(i64, i64), usize>, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(dims.len()))?;
    for ((i, j), d) in dims {
        seq.serialize_element(&[*i, *j, *d as i64])?;
    }
    seq.end()
}

impl HomologyTable {
    pub fn get(&self, i: i64, j: i64) -> usize {
        self.dims.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Sum over internal degrees.
    pub fn total(&self, i: i64) -> usize {
        self.dims.iter().filter(|((a, _), _)| *a == i).map(|(_, d)| d).sum()
    }

    /// Totals for every homological degree in range, lowest first.
    pub fn totals(&self) -> Vec<usize> {
        (0..self.len as i64).map(|k| self.total(self.lo + k)).collect()
    }

    pub fn is_truncated(&self) -> bool {
        !self.flags.is_empty()
    }

    /// Strands of one homological degree, as `(internal degree, dim)`.
    pub fn row(&self, i: i64) -> Vec<(i64, usize)> {
        self.dims.iter().filter(|((a, _), _)| *a == i).map(|((_, j), d)| (*j, *d)).collect()
    }

    /// Equality of all strands with homological degree below `below`.
    pub fn agrees_below(&self, other: &HomologyTable, below: i64) -> bool {
        let pick = |t: &HomologyTable| t.dims.iter().filter(|((i, _), _)| *i < below).map(|(k, v)| (*k, *v)).collect::<Vec<_>>();
        pick(self) == pick(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::SparseVec;

    #[test]
    fn identity_strand_is_acyclic() {
        let f = Field::Rational;
        let id = SparseMatrix::new(1, vec![SparseVec::unit(0, f)]);
        let s = ChainStrand { degree: 3, dims: vec![1, 1], diffs: vec![SparseMatrix::zero(0, 1), id] };
        let c = StrandComplex::new(f, 0, 2, vec![s]);
        assert!(c.verify_d_squared());
        assert_eq!(c.homology().totals(), vec![0, 0]);
    }

    #[test]
    fn strands_of_one_degree_are_summed() {
        let f = Field::Rational;
        let s = |j| ChainStrand { degree: j, dims: vec![2], diffs: vec![SparseMatrix::zero(0, 2)] };
        let h = StrandComplex::new(f, 1, 1, vec![s(4), s(4), s(5)]).homology();
        assert_eq!(h.get(1, 4), 4);
        assert_eq!(h.total(1), 6);
        assert_eq!(h.totals(), vec![6]);
    }
}
