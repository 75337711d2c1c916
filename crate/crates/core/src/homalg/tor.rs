use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::module::{ModuleComplex, ModuleStrand, PresentedModule};
use super::resolution::{minimal_resolution, BettiTable, Resolution, Truncation};
use super::strand::{ChainStrand, StrandComplex};
use crate::error::{Error, Result};
use crate::linalg::{SparseMatrix, SparseVec};
use crate::polycore::{Polynomial, RingPresentation, Scalar};

/// `p · (quotient basis vector q)` in the strand `target`.
fn multiply(ring: &RingPresentation, source: &ModuleStrand, target: &ModuleStrand, q: usize, p: &Polynomial) -> SparseVec {
    let (g, base) = source.lift(q);
    let mut col = vec![Polynomial::zero(ring.ring()); g + 1];
    col[*g] = p.clone();
    target.project_product(ring, base, &col)
}

/// `dim_k Tor_i(M, C)` for `i ≤ nmax` in internal degrees `≤ d`, as the
/// homology of the total complex of `F ⊗_R C` with `F` a minimal resolution
/// of `M`. The sign on `F_a ⊗ C_b` is `(-1)^a` on the `C` differential.
pub fn tor_dims(module: &PresentedModule, complex: &ModuleComplex, nmax: usize, d: i64) -> Result<BettiTable> {
    if !Arc::ptr_eq(module.ring(), complex.ring()) || module.scale() != complex.scale() {
        return Err(Error::Precondition("Tor needs both arguments over the same ring and grading".into()));
    }
    let res = minimal_resolution(module, nmax + 1, d)?;
    tor_from_resolution(&res, complex, nmax, d)
}

/// As [`tor_dims`], reusing a resolution computed to at least `nmax + 1`.
pub fn tor_from_resolution(res: &Resolution, complex: &ModuleComplex, nmax: usize, d: i64) -> Result<BettiTable> {
    let ring = res.complex.ring().clone();
    let field = ring.field();
    let fmods = res.complex.modules();
    let fmaps = res.complex.maps();
    if fmods.len() < nmax + 2 {
        return Err(Error::Precondition(format!("resolution too short for Tor_{nmax}")));
    }
    if complex.lo() != 0 {
        return Err(Error::Precondition("Tor coefficients must be a complex starting in degree 0".into()));
    }
    let nterms = complex.terms().len();
    let nf = nmax + 2;

    // strands of every term of C in degrees 0..=d
    let cstr: Vec<Vec<ModuleStrand>> = complex.terms().iter().map(|t| (0..=d).into_par_iter().map(|j| t.strand(j)).collect()).collect();
    let cdim = |b: usize, j: i64| if (0..=d).contains(&j) { cstr[b][j as usize].dim() } else { 0 };

    let strands: Vec<ChainStrand> = (0..=d)
        .into_par_iter()
        .map(|j| {
            // total degree t = a + b (b counted from 0) for t in 0..(nf + nterms - 1)
            let ntot = nf + nterms - 1;
            let mut offsets: Vec<BTreeMap<(usize, usize, usize), usize>> = vec![BTreeMap::new(); ntot];
            let mut dims = vec![0usize; ntot];
            for a in 0..nf {
                for b in 0..nterms {
                    for (g, &deg) in fmods[a].degrees().iter().enumerate() {
                        let dim = cdim(b, j - deg);
                        if dim > 0 {
                            offsets[a + b].insert((a, b, g), dims[a + b]);
                            dims[a + b] += dim;
                        }
                    }
                }
            }
            let mut diffs = vec![SparseMatrix::zero(0, dims[0])];
            for t in 1..ntot {
                let mut cols = vec![SparseVec::zero(); dims[t]];
                for (&(a, b, g), &off) in &offsets[t] {
                    let deg = fmods[a].degrees()[g];
                    let src = &cstr[b][(j - deg) as usize];
                    for q in 0..src.dim() {
                        let mut entries: Vec<(usize, Scalar)> = Vec::new();
                        if a > 0 {
                            for (h, p) in fmaps[a].col(g).iter().enumerate() {
                                if p.is_zero() {
                                    continue;
                                }
                                let Some(&toff) = offsets[t - 1].get(&(a - 1, b, h)) else { continue };
                                let tgt = &cstr[b][(j - fmods[a - 1].degrees()[h]) as usize];
                                let v = multiply(&ring, src, tgt, q, p);
                                entries.extend(v.entries().iter().map(|(i, c)| (i + toff, c.clone())));
                            }
                        }
                        if b > 0 {
                            if let Some(&toff) = offsets[t - 1].get(&(a, b - 1, g)) {
                                let tgt = &cstr[b - 1][(j - deg) as usize];
                                let (h, m) = src.lift(q);
                                let v = tgt.project_product(&ring, m, complex.diffs()[b].col(*h));
                                let sign = if a % 2 == 0 { field.one() } else { field.from_i64(-1) };
                                entries.extend(v.entries().iter().map(|(i, c)| (i + toff, c * &sign)));
                            }
                        }
                        cols[off + q] = SparseVec::from_entries(entries);
                    }
                }
                diffs.push(SparseMatrix::new(dims[t - 1], cols));
            }
            ChainStrand { degree: j, dims, diffs }
        })
        .collect();

    let total = StrandComplex::new(field, 0, nf + nterms - 1, strands);
    debug_assert!(total.verify_d_squared());
    let h = total.homology();
    let mut map = BTreeMap::new();
    for (&(i, j), &dim) in &h.dims {
        if i as usize <= nmax {
            map.insert((i as usize, j), dim);
        }
    }
    let truncation = Truncation { homological: nmax, internal: d, flags: res.betti.truncation.flags.clone() };
    Ok(BettiTable::from_map(res.betti.rescale, &map, truncation))
}
