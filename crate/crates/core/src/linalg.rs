//! Sparse exact linear algebra over the coefficient field.

use std::collections::HashMap;

use crate::polycore::{Field, Scalar};

/// A sparse vector with entries sorted by index and no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn zero() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize, field: Field) -> Self {
        SparseVec { entries: vec![(i, field.one())] }
    }

    /// Builds from unsorted entries, summing duplicates.
    pub fn from_entries(mut entries: Vec<(usize, Scalar)>) -> Self {
        entries.sort_by_key(|(i, _)| *i);
        let mut out: Vec<(usize, Scalar)> = Vec::with_capacity(entries.len());
        for (i, c) in entries {
            match out.last_mut() {
                Some((j, acc)) if *j == i => *acc = &*acc + &c,
                _ => out.push((i, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        SparseVec { entries: out }
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Scalar> {
        self.entries.binary_search_by_key(&i, |(j, _)| *j).ok().map(|k| &self.entries[k].1)
    }

    pub fn first(&self) -> Option<&(usize, Scalar)> {
        self.entries.first()
    }

    pub fn scale(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::zero();
        }
        SparseVec { entries: self.entries.iter().map(|(i, a)| (*i, a * c)).collect() }
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &Scalar, other: &SparseVec) -> SparseVec {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, c * y));
                        b.next();
                    } else {
                        let s = x + &(c * y);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, c * y));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec, field: Field) -> SparseVec {
        self.axpy(&field.one(), other)
    }

    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> SparseVec {
        SparseVec::from_entries(self.entries.iter().map(|(i, c)| (f(*i), c.clone())).collect())
    }
}

/// A linear map stored by columns: column `j` is the image of basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn new(nrows: usize, cols: Vec<SparseVec>) -> Self {
        debug_assert!(cols.iter().all(|c| c.entries().last().map_or(true, |(i, _)| *i < nrows)));
        SparseMatrix { nrows, cols }
    }

    pub fn zero(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, cols: vec![SparseVec::zero(); ncols] }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn cols(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn col(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SparseVec::is_zero)
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::zero();
        for (j, c) in v.entries() {
            out = out.axpy(c, &self.cols[*j]);
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SparseMatrix) -> SparseMatrix {
        SparseMatrix { nrows: self.nrows, cols: other.cols.iter().map(|c| self.apply(c)).collect() }
    }

    /// `self + c * other`, same shape.
    pub fn axpy(&self, c: &Scalar, other: &SparseMatrix) -> SparseMatrix {
        let cols = self.cols.iter().zip(&other.cols).map(|(a, b)| a.axpy(c, b)).collect();
        SparseMatrix { nrows: self.nrows, cols }
    }

    /// Eliminates along the shorter side.
    pub fn rank(&self, field: Field) -> usize {
        if self.nrows < self.cols.len() {
            rank(&self.transpose().cols, field)
        } else {
            rank(&self.cols, field)
        }
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, c) in col.entries() {
                rows[*i].push((j, c.clone()));
            }
        }
        SparseMatrix { nrows: self.cols.len(), cols: rows.into_iter().map(|entries| SparseVec { entries }).collect() }
    }

    pub fn to_dense(&self, field: Field) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![field.zero(); self.cols.len()]; self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, a) in c.entries() {
                out[*i][j] = a.clone();
            }
        }
        out
    }
}

/// Incremental semi-echelon form: every stored row starts at a distinct pivot
/// with coefficient one. Optional tags record each row as a combination of
/// the inserted vectors, which yields kernels and coordinates.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    rows: Vec<SparseVec>,
    tags: Vec<SparseVec>,
    pivot_row: HashMap<usize, usize>,
    inserted: usize,
    tagged: bool,
}

impl Echelon {
    pub fn new(field: Field) -> Self {
        Echelon { field, rows: Vec::new(), tags: Vec::new(), pivot_row: HashMap::new(), inserted: 0, tagged: false }
    }

    pub fn tagged(field: Field) -> Self {
        Echelon { tagged: true, ..Echelon::new(field) }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, i: usize) -> bool {
        self.pivot_row.contains_key(&i)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivot_row.keys().copied()
    }

    /// Clears every pivot position of `v` in one ascending sweep.
    fn sweep(&self, mut v: SparseVec, mut tag: SparseVec) -> (SparseVec, SparseVec) {
        let mut k = 0;
        while k < v.entries.len() {
            let (i, c) = &v.entries[k];
            let Some(&r) = self.pivot_row.get(i) else {
                k += 1;
                continue;
            };
            let i = *i;
            let neg = -c;
            v = v.axpy(&neg, &self.rows[r]);
            if self.tagged {
                tag = tag.axpy(&neg, &self.tags[r]);
            }
            k = v.entries.partition_point(|(j, _)| *j <= i);
        }
        (v, tag)
    }

    /// Inserts `v`; returns `true` when it was independent of the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        self.insert_tagged(v).is_none()
    }

    /// Inserts `v`. When `v` depends on earlier vectors, returns the
    /// dependency as a combination of inserted vectors (a kernel element of
    /// the map whose columns were inserted, in insertion order).
    pub fn insert_tagged(&mut self, v: SparseVec) -> Option<SparseVec> {
        let idx = self.inserted;
        self.inserted += 1;
        let tag = if self.tagged { SparseVec::unit(idx, self.field) } else { SparseVec::zero() };
        let (v, tag) = self.sweep(v, tag);
        match v.first().cloned() {
            None => Some(tag),
            Some((p, c)) => {
                let inv = c.inv();
                self.pivot_row.insert(p, self.rows.len());
                self.rows.push(v.scale(&inv));
                self.tags.push(tag.scale(&inv));
                None
            }
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.sweep(v.clone(), SparseVec::zero()).0.is_zero()
    }

    /// Canonical representative of `v` modulo the span: zero at every pivot.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.sweep(v.clone(), SparseVec::zero()).0
    }

    /// Coordinates of `v` in terms of the inserted vectors, if `v` lies in
    /// the span. Requires a tagged echelon.
    pub fn express(&self, v: &SparseVec) -> Option<SparseVec> {
        assert!(self.tagged, "express needs a tagged echelon");
        let (r, tag) = self.sweep(v.clone(), SparseVec::zero());
        if r.is_zero() {
            Some(tag.scale(&self.field.from_i64(-1)))
        } else {
            None
        }
    }
}

/// Sparsest vectors first, which keeps fill-in low.
pub fn rank(vectors: &[SparseVec], field: Field) -> usize {
    let mut order: Vec<&SparseVec> = vectors.iter().collect();
    order.sort_by_key(|v| v.len());
    let mut e = Echelon::new(field);
    for v in order {
        e.insert(v.clone());
    }
    e.rank()
}

/// A basis of the kernel of the map with the given columns, as combinations
/// of source basis vectors. One vector per dependent column, in column order.
pub fn kernel(cols: &[SparseVec], field: Field) -> Vec<SparseVec> {
    let mut e = Echelon::tagged(field);
    cols.iter().filter_map(|c| e.insert_tagged(c.clone())).collect()
}
