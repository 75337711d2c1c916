use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::free::{FreeStrand, GradedChainComplex, GradedFreeModule, PolyMatrix};
use super::module::{ModuleStrand, PresentedModule};
use crate::error::{Error, Result};
use crate::linalg::{kernel, Echelon, SparseVec};
use crate::polycore::{Monomial, Polynomial, RingPresentation};

/// Truncation bounds carried by every computed table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Truncation {
    #[serde(rename = "N")]
    pub homological: usize,
    #[serde(rename = "D")]
    pub internal: i64,
    pub flags: Vec<String>,
}

/// Graded dimension table `(i, j) → dim`, used for Betti numbers and Tor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub rescale: u32,
    pub entries: Vec<(usize, i64, usize)>,
    pub truncation: Truncation,
}

impl BettiTable {
    pub fn from_map(rescale: u32, map: &BTreeMap<(usize, i64), usize>, truncation: Truncation) -> Self {
        let entries = map.iter().filter(|(_, d)| **d > 0).map(|(&(i, j), &d)| (i, j, d)).collect();
        BettiTable { rescale, entries, truncation }
    }

    pub fn get(&self, i: usize, j: i64) -> usize {
        self.entries.iter().find(|e| e.0 == i && e.1 == j).map_or(0, |e| e.2)
    }

    pub fn total(&self, i: usize) -> usize {
        self.entries.iter().filter(|e| e.0 == i).map(|e| e.2).sum()
    }

    /// Totals for `i = 0..=N`.
    pub fn totals(&self) -> Vec<usize> {
        (0..=self.truncation.homological).map(|i| self.total(i)).collect()
    }

    pub fn is_truncated(&self) -> bool {
        !self.truncation.flags.is_empty()
    }

    /// Macaulay-style layout: column `i`, row `j - rescale·i`.
    pub fn to_text(&self) -> String {
        let n = self.truncation.homological;
        let r = self.rescale as i64;
        let rows: BTreeMap<i64, Vec<usize>> = self.entries.iter().fold(BTreeMap::new(), |mut acc, &(i, j, d)| {
            acc.entry(j - r * i as i64).or_insert_with(|| vec![0; n + 1])[i] += d;
            acc
        });
        let totals = self.totals();
        let width = totals.iter().map(|t| t.to_string().len()).max().unwrap_or(1).max(n.to_string().len());
        let cell = |d: usize| if d == 0 { format!("{:>width$}", ".") } else { format!("{d:>width$}") };
        let label_w = rows.keys().map(|k| k.to_string().len()).max().unwrap_or(1).max(5) + 1;
        let mut out = String::new();
        let header: Vec<String> = (0..=n).map(|i| format!("{i:>width$}")).collect();
        let _ = writeln!(out, "{:>label_w$} {}", "", header.join(" "));
        let tot: Vec<String> = totals.iter().map(|t| format!("{t:>width$}")).collect();
        let _ = writeln!(out, "{:>label_w$} {}", "total:", tot.join(" "));
        for (row, vals) in &rows {
            let cells: Vec<String> = vals.iter().map(|&d| cell(d)).collect();
            let _ = writeln!(out, "{:>label_w$} {}", format!("{row}:"), cells.join(" "));
        }
        if r != 1 {
            let _ = writeln!(out, "(degrees rescaled by {r})");
        }
        for f in &self.truncation.flags {
            let _ = writeln!(out, "warning: {f}");
        }
        out
    }
}

/// A truncated minimal graded free resolution `F_N → ⋯ → F_0 → M`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub complex: GradedChainComplex,
    /// Images of the generators of `F_0` in the generators of `M`.
    pub augmentation: PolyMatrix,
    pub betti: BettiTable,
}

/// Default internal-degree bound for `N` homological steps.
pub fn default_degree_bound(ring: &RingPresentation, scale: u32, max_generator_degree: i64, homological: usize) -> i64 {
    let g = ring.max_generator_degree().max(1) as i64;
    scale as i64 * homological as i64 * g + max_generator_degree + 2
}

/// `x_l · v` for `v` in coordinates of a free strand, landing in `target`.
fn act(ring: &RingPresentation, source: &FreeStrand, target: &FreeStrand, l: usize, v: &SparseVec) -> SparseVec {
    let x = Monomial::var(ring.nvars(), l);
    let mut entries = Vec::new();
    for (i, c) in v.entries() {
        let (g, m) = &source.basis()[*i];
        for (u, a) in ring.reduce_monomial(&x.mul(m)).terms() {
            entries.push((target.position(*g, u).expect("product stays in the strand"), a * c));
        }
    }
    SparseVec::from_entries(entries)
}

/// Computes a minimal graded free resolution of `module` through
/// homological degree `n`, exact in internal degrees `≤ d`.
///
/// Each step works degree by degree: the kernel of the previous map is found
/// by linear algebra, the part generated by lower degrees (`𝔪 · kernel`) is
/// spanned, and new generators are chosen greedily from the kernel basis.
pub fn minimal_resolution(module: &PresentedModule, n: usize, d: i64) -> Result<Resolution> {
    if d < module.max_generator_degree() {
        return Err(Error::Precondition(format!("degree bound {d} is below the top generator degree {}", module.max_generator_degree())));
    }
    let ring = module.ring().clone();
    let field = ring.field();
    let scale = module.scale();
    let s = scale as i64;
    let mut flags = Vec::new();

    let m_strands: Vec<ModuleStrand> = (0..=d).into_par_iter().map(|j| module.strand(j)).collect();
    let m_free = module.generators().clone();

    // F_0: minimal generators of the module itself.
    let mut f0_degrees = Vec::new();
    let mut f0_images: Vec<Vec<Polynomial>> = Vec::new();
    {
        let mut spans: Vec<Vec<SparseVec>> = Vec::with_capacity((d + 1) as usize);
        for j in 0..=d {
            let strand = &m_strands[j as usize];
            let mut e = Echelon::new(field);
            let mut basis = Vec::new();
            if j >= s {
                let below = &m_strands[(j - s) as usize];
                for v in &spans[(j - s) as usize] {
                    for l in 0..ring.nvars() {
                        let lifted = lift(below, v);
                        let w = strand.project(&act(&ring, below.free(), strand.free(), l, &lifted));
                        if e.insert(w.clone()) {
                            basis.push(w);
                        }
                    }
                }
            }
            for q in 0..strand.dim() {
                let u = SparseVec::unit(q, field);
                if e.insert(u.clone()) {
                    basis.push(u);
                    let (g, m) = strand.lift(q);
                    let mut col = vec![Polynomial::zero(ring.ring()); m_free.rank()];
                    col[*g] = Polynomial::monomial(ring.ring(), m.clone());
                    f0_degrees.push(j);
                    f0_images.push(col);
                    if j == d {
                        flags.push(format!("module generators found at the degree bound {d}"));
                    }
                }
            }
            spans.push(basis);
        }
    }
    let augmentation = PolyMatrix::new(m_free.rank(), f0_images);

    let mut modules = vec![GradedFreeModule::new(f0_degrees, scale)];
    let mut maps = vec![PolyMatrix::empty(modules[0].rank())];

    for i in 0..n {
        let current = modules[i].clone();
        let (new_degrees, new_cols) = {
            let source_strands: Vec<FreeStrand> = (0..=d).into_par_iter().map(|j| FreeStrand::new(&ring, &current, j)).collect();
            // kernel of F_i → (F_{i-1} or M), degree by degree
            let kernels: Vec<Vec<SparseVec>> = (0..=d)
                .into_par_iter()
                .map(|j| {
                    let src = &source_strands[j as usize];
                    let images: Vec<SparseVec> = if i == 0 {
                        let tgt = &m_strands[j as usize];
                        src.basis().iter().map(|(g, m)| tgt.project_product(&ring, m, augmentation.col(*g))).collect()
                    } else {
                        let tgt = FreeStrand::new(&ring, &modules[i - 1], j);
                        src.basis().iter().map(|(g, m)| tgt.coords_of_product(&ring, m, maps[i].col(*g))).collect()
                    };
                    kernel(&images, field)
                })
                .collect();
            let mut degs = Vec::new();
            let mut cols = Vec::new();
            for j in 0..=d {
                let src = &source_strands[j as usize];
                let mut e = Echelon::new(field);
                if j >= s {
                    let below = &source_strands[(j - s) as usize];
                    for v in &kernels[(j - s) as usize] {
                        for l in 0..ring.nvars() {
                            e.insert(act(&ring, below, src, l, v));
                        }
                    }
                }
                for v in &kernels[j as usize] {
                    if e.insert(v.clone()) {
                        degs.push(j);
                        cols.push(src.to_column(&ring, current.rank(), v));
                        if j == d {
                            flags.push(format!("syzygies of F_{i} found at the degree bound {d}; higher ones may be missing"));
                        }
                    }
                }
            }
            (degs, cols)
        };
        modules.push(GradedFreeModule::new(new_degrees, scale));
        maps.push(PolyMatrix::new(current.rank(), new_cols));
    }
    flags.dedup();

    let mut counts = BTreeMap::new();
    for (i, m) in modules.iter().enumerate() {
        for &deg in m.degrees() {
            *counts.entry((i, deg)).or_insert(0) += 1;
        }
    }
    let betti = BettiTable::from_map(scale, &counts, Truncation { homological: n, internal: d, flags });
    let complex = GradedChainComplex::new(Arc::clone(&ring), 0, modules, maps);
    Ok(Resolution { complex, augmentation, betti })
}

/// A quotient vector lifted to the free strand (through basis positions).
fn lift(strand: &ModuleStrand, v: &SparseVec) -> SparseVec {
    let entries = v
        .entries()
        .iter()
        .map(|(q, c)| {
            let key = strand.lift(*q);
            (strand.free().position(key.0, &key.1).unwrap(), c.clone())
        })
        .collect();
    SparseVec::from_entries(entries)
}
