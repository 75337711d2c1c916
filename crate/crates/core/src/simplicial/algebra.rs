use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;

use super::module::{SimplicialStrand, TruncatedSimplicialModule};
use crate::error::{Error, Result};
use crate::groebner::MonomialOrder;
use crate::homalg::{ChainStrand, StrandComplex};
use crate::linalg::{SparseMatrix, SparseVec};
use crate::polycore::{same_ring, Monomial, PolyRing, Polynomial, RingPresentation, Scalar};

/// A free generator in simplicial degree `degree` with `d_0 = boundary` and
/// `d_1 = 0`.
#[derive(Clone, Debug)]
pub struct SimplicialGenerator {
    pub name: String,
    pub degree: u32,
    pub boundary: Polynomial,
}

impl SimplicialGenerator {
    pub fn new(name: impl Into<String>, boundary: Polynomial) -> Self {
        SimplicialGenerator { name: name.into(), degree: 1, boundary }
    }
}

/// Which levelwise subspace of the algebra to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    Whole,
    /// The `n`-th power of the augmentation ideal: monomials of word length
    /// at least `n`.
    AugmentationPower(u32),
}

impl Part {
    fn admits(&self, word_length: u32) -> bool {
        match self {
            Part::Whole => true,
            Part::AugmentationPower(n) => word_length >= *n,
        }
    }
}

/// `B[ξ_1, …, ξ_m]` with `∂ξ_j = f_j`, levels `0..=L`.
///
/// A degree-one generator `ξ_j` has one copy `ξ_{j,t}` at level `n` for each
/// monotone surjection `[n] → [1]`, indexed by its threshold `t ∈ 1..=n`
/// (the first element sent to 1). Level `n` variables are the base variables
/// followed by `ξ_{1,1}, …, ξ_{1,n}, ξ_{2,1}, …`.
#[derive(Clone, Debug)]
pub struct TruncatedSimplicialAlgebra {
    base: Arc<RingPresentation>,
    names: Vec<String>,
    boundaries: Vec<Polynomial>,
    weights: Vec<i64>,
    levels: usize,
    rings: Vec<Arc<PolyRing>>,
}

pub fn build_with_boundaries(base: &Arc<RingPresentation>, gens: Vec<SimplicialGenerator>, levels: usize) -> Result<TruncatedSimplicialAlgebra> {
    if levels < 1 {
        return Err(Error::Precondition("truncation level must be at least 1".into()));
    }
    let base = if *base.order() == MonomialOrder::default() { base.clone() } else { base.reordered(MonomialOrder::default())? };
    let mut names = Vec::new();
    let mut boundaries = Vec::new();
    let mut weights = Vec::new();
    for g in gens {
        if g.degree != 1 {
            return Err(Error::Precondition(format!("generator `{}` has simplicial degree {}; only degree 1 is supported", g.name, g.degree)));
        }
        if !same_ring(g.boundary.ring(), base.ring()) {
            return Err(Error::ArityMismatch { expected: base.nvars(), found: g.boundary.ring().nvars() });
        }
        if !g.boundary.is_homogeneous() {
            return Err(Error::Inhomogeneous(g.boundary.to_string()));
        }
        if !g.boundary.constant_term().is_zero() {
            return Err(Error::Precondition(format!("boundary `{}` of `{}` has a nonzero constant term", g.boundary, g.name)));
        }
        if base.var_names().contains(&g.name) || names.contains(&g.name) {
            return Err(Error::Precondition(format!("generator name `{}` is already in use", g.name)));
        }
        // the internal degree follows the given boundary even when it
        // reduces to zero in the base
        weights.push(g.boundary.total_degree().map_or(1, |d| d as i64));
        let f = base.normal_form(&g.boundary);
        boundaries.push(f);
        names.push(g.name);
    }
    let rings = (0..=levels)
        .map(|n| {
            let mut vars = base.var_names().to_vec();
            for name in &names {
                vars.extend((1..=n).map(|t| format!("{name}_{t}")));
            }
            PolyRing::new(base.field(), vars)
        })
        .collect();
    Ok(TruncatedSimplicialAlgebra { base, names, boundaries, weights, levels, rings })
}

impl TruncatedSimplicialAlgebra {
    pub fn base(&self) -> &Arc<RingPresentation> {
        &self.base
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn boundaries(&self) -> &[Polynomial] {
        &self.boundaries
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    /// The polynomial ring of level `n`, over which the base ideal still
    /// applies.
    pub fn level_ring(&self, n: usize) -> &Arc<PolyRing> {
        &self.rings[n]
    }

    fn nbase(&self) -> usize {
        self.base.nvars()
    }

    fn nvars(&self, n: usize) -> usize {
        self.nbase() + self.names.len() * n
    }

    /// Index of `ξ_{j,t}` at level `n`.
    pub fn xi(&self, n: usize, j: usize, t: usize) -> usize {
        debug_assert!((1..=n).contains(&t));
        self.nbase() + j * n + t - 1
    }

    fn split<'a>(&self, n: usize, m: &'a Monomial) -> (Monomial, &'a [u32]) {
        let e = m.exps();
        debug_assert_eq!(e.len(), self.nvars(n));
        (Monomial::new(e[..self.nbase()].to_vec()), &e[self.nbase()..])
    }

    fn join(&self, x: &Monomial, xi: &[u32]) -> Monomial {
        let mut e = x.exps().to_vec();
        e.extend_from_slice(xi);
        Monomial::new(e)
    }

    /// Internal degree of a level monomial.
    pub fn degree_of(&self, n: usize, m: &Monomial) -> i64 {
        let (x, xi) = self.split(n, m);
        x.degree() as i64 + xi.iter().enumerate().map(|(k, &e)| e as i64 * self.weights[k / n.max(1)]).sum::<i64>()
    }

    /// A monomial is degenerate when some threshold is unused: then it lies
    /// in the image of a degeneracy.
    pub fn is_nondegenerate(&self, n: usize, m: &Monomial) -> bool {
        let xi = &m.exps()[self.nbase()..];
        (0..n).all(|t| (0..self.names.len()).any(|j| xi[j * n + t] > 0))
    }

    /// `d_i` on a standard level-`n` monomial, as normal-form terms at level
    /// `n - 1`.
    pub fn face_terms(&self, n: usize, i: usize, m: &Monomial) -> Vec<(Monomial, Scalar)> {
        assert!(n >= 1 && i <= n && n <= self.levels);
        let (x, xi) = self.split(n, m);
        let mut target = vec![0u32; self.names.len() * (n - 1)];
        let mut factor = Polynomial::one(self.base.ring());
        for j in 0..self.names.len() {
            for t in 1..=n {
                let e = xi[j * n + t - 1];
                if e == 0 {
                    continue;
                }
                let t2 = if t <= i { t } else { t - 1 };
                if t2 == 0 {
                    factor = factor.mul(&self.boundaries[j].pow(e));
                } else if t2 == n {
                    return Vec::new();
                } else {
                    target[j * (n - 1) + t2 - 1] += e;
                }
            }
        }
        self.base.mul_reduce(&x, &factor).terms().map(|(u, c)| (self.join(u, &target), c.clone())).collect()
    }

    /// `s_i` on a level-`n` monomial, landing at level `n + 1`.
    pub fn degeneracy(&self, n: usize, i: usize, m: &Monomial) -> Monomial {
        assert!(i <= n && n < self.levels);
        let (x, xi) = self.split(n, m);
        let mut target = vec![0u32; self.names.len() * (n + 1)];
        for j in 0..self.names.len() {
            for t in 1..=n {
                let t2 = if t <= i { t } else { t + 1 };
                target[j * (n + 1) + t2 - 1] = xi[j * n + t - 1];
            }
        }
        self.join(&x, &target)
    }

    /// Images of the level-`n` variables under `d_i`, as polynomials.
    pub fn face_images(&self, n: usize, i: usize) -> Vec<Polynomial> {
        (0..self.nvars(n))
            .map(|v| Polynomial::from_terms(&self.rings[n - 1], self.face_terms(n, i, &Monomial::var(self.nvars(n), v))))
            .collect()
    }

    /// Images of the level-`n` variables under `s_i`.
    pub fn degeneracy_images(&self, n: usize, i: usize) -> Vec<Polynomial> {
        (0..self.nvars(n)).map(|v| Polynomial::monomial(&self.rings[n + 1], self.degeneracy(n, i, &Monomial::var(self.nvars(n), v)))).collect()
    }

    fn normal_form(&self, n: usize, p: &Polynomial) -> Polynomial {
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in p.terms() {
            let (x, xi) = self.split(n, m);
            for (u, a) in self.base.reduce_monomial(&x).terms() {
                let key = self.join(u, xi);
                let v = a * c;
                match acc.remove(&key) {
                    Some(old) => {
                        let s = &old + &v;
                        if !s.is_zero() {
                            acc.insert(key, s);
                        }
                    }
                    None => {
                        acc.insert(key, v);
                    }
                }
            }
        }
        Polynomial::from_terms(&self.rings[n], acc)
    }

    /// Checks the simplicial identities on every generator of every level,
    /// composing the maps by substitution.
    pub fn verify_identities(&self) -> bool {
        let l = self.levels;
        let faces: Vec<Vec<Vec<Polynomial>>> = (0..=l).map(|n| if n == 0 { Vec::new() } else { (0..=n).map(|i| self.face_images(n, i)).collect() }).collect();
        let degens: Vec<Vec<Vec<Polynomial>>> = (0..=l).map(|n| if n == l { Vec::new() } else { (0..=n).map(|i| self.degeneracy_images(n, i)).collect() }).collect();
        // `after ∘ first` on the variables of the source level
        let compose = |first: &[Polynomial], after: &[Polynomial], level: usize| -> Vec<Polynomial> {
            first.iter().map(|p| self.normal_form(level, &p.substitute(after).expect("ring sizes agree"))).collect()
        };
        let ident = |n: usize| -> Vec<Polynomial> { (0..self.nvars(n)).map(|v| Polynomial::var(&self.rings[n], v)).collect() };
        for n in 0..=l {
            // d_i d_j = d_{j-1} d_i for i < j
            if n >= 2 {
                for j in 0..=n {
                    for i in 0..j {
                        if compose(&faces[n][j], &faces[n - 1][i], n - 2) != compose(&faces[n][i], &faces[n - 1][j - 1], n - 2) {
                            return false;
                        }
                    }
                }
            }
            // s_i s_j = s_{j+1} s_i for i ≤ j
            if n + 2 <= l {
                for j in 0..=n {
                    for i in 0..=j {
                        if compose(&degens[n][j], &degens[n + 1][i], n + 2) != compose(&degens[n][i], &degens[n + 1][j + 1], n + 2) {
                            return false;
                        }
                    }
                }
            }
            // faces of degeneracies, from level n through n + 1
            if n < l {
                for j in 0..=n {
                    for i in 0..=n + 1 {
                        let lhs = compose(&degens[n][j], &faces[n + 1][i], n);
                        let rhs = if i < j {
                            compose(&faces[n][i], &degens[n - 1][j - 1], n)
                        } else if i == j || i == j + 1 {
                            ident(n)
                        } else {
                            compose(&faces[n][i - 1], &degens[n - 1][j], n)
                        };
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// `ξ` exponent vectors at level `n` with weighted degree `w`.
    fn xi_exponents(&self, n: usize, w: i64) -> Vec<Vec<u32>> {
        let k = self.names.len() * n;
        let mut out = Vec::new();
        let mut cur = vec![0u32; k];
        fn rec(pos: usize, left: i64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>, weight: &dyn Fn(usize) -> i64) {
            if pos == cur.len() {
                if left == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            let wt = weight(pos);
            let mut e = 0;
            while e as i64 * wt <= left {
                cur[pos] = e;
                rec(pos + 1, left - e as i64 * wt, cur, out, weight);
                e += 1;
            }
            cur[pos] = 0;
        }
        rec(0, w, &mut cur, &mut out, &|pos| self.weights[pos / n]);
        out
    }

    /// Standard monomials of level `n` in internal degree `degree`.
    pub fn strand_basis(&self, n: usize, degree: i64, part: Part, nondegenerate_only: bool) -> Vec<Monomial> {
        let mut out = Vec::new();
        if degree < 0 {
            return out;
        }
        for w in 0..=degree {
            let xis = if n == 0 { if w == 0 { vec![Vec::new()] } else { Vec::new() } } else { self.xi_exponents(n, w) };
            for xi in xis {
                let covered = (0..n).all(|t| (0..self.names.len()).any(|j| xi[j * n + t] > 0));
                if nondegenerate_only && !covered {
                    continue;
                }
                let len: u32 = xi.iter().sum();
                for u in self.base.quotient_basis((degree - w) as u32).iter() {
                    if part.admits(u.degree() + len) {
                        out.push(self.join(u, &xi));
                    }
                }
            }
        }
        out
    }

    /// The normalized chain complex, realized as nondegenerate monomials
    /// modulo degenerate ones with differential `Σ (-1)^i d_i`. Strands for
    /// internal degrees `0..=degree_bound`, levels `0..=L`.
    pub fn normalized_complex(&self, part: Part, degree_bound: i64) -> StrandComplex {
        let field = self.base.field();
        let strands: Vec<ChainStrand> = (0..=degree_bound)
            .into_par_iter()
            .map(|j| {
                let bases: Vec<Vec<Monomial>> = (0..=self.levels).map(|n| self.strand_basis(n, j, part, true)).collect();
                let index: Vec<HashMap<&Monomial, usize>> = bases.iter().map(|b| b.iter().enumerate().map(|(k, m)| (m, k)).collect()).collect();
                let mut diffs = vec![SparseMatrix::zero(0, bases[0].len())];
                for n in 1..=self.levels {
                    let cols = bases[n]
                        .iter()
                        .map(|m| {
                            let mut entries = Vec::new();
                            for i in 0..=n {
                                let sign = if i % 2 == 0 { field.one() } else { field.from_i64(-1) };
                                for (u, c) in self.face_terms(n, i, m) {
                                    if let Some(&row) = index[n - 1].get(&u) {
                                        entries.push((row, &c * &sign));
                                    } else {
                                        debug_assert!(!self.is_nondegenerate(n - 1, &u));
                                    }
                                }
                            }
                            SparseVec::from_entries(entries)
                        })
                        .collect();
                    diffs.push(SparseMatrix::new(bases[n - 1].len(), cols));
                }
                ChainStrand { degree: j, dims: bases.iter().map(Vec::len).collect(), diffs }
            })
            .collect();
        StrandComplex::new(field, 0, self.levels + 1, strands)
    }

    /// The levelwise subspace as an explicit simplicial vector space with all
    /// face and degeneracy matrices.
    pub fn simplicial_module(&self, part: Part, degree_bound: i64) -> TruncatedSimplicialModule {
        let field = self.base.field();
        let l = self.levels;
        let strands = (0..=degree_bound)
            .into_par_iter()
            .map(|j| {
                let bases: Vec<Vec<Monomial>> = (0..=l).map(|n| self.strand_basis(n, j, part, false)).collect();
                let index: Vec<HashMap<&Monomial, usize>> = bases.iter().map(|b| b.iter().enumerate().map(|(k, m)| (m, k)).collect()).collect();
                let faces = (0..=l)
                    .map(|n| {
                        if n == 0 {
                            return Vec::new();
                        }
                        (0..=n)
                            .map(|i| {
                                let cols = bases[n]
                                    .iter()
                                    .map(|m| SparseVec::from_entries(self.face_terms(n, i, m).into_iter().map(|(u, c)| (index[n - 1][&u], c)).collect()))
                                    .collect();
                                SparseMatrix::new(bases[n - 1].len(), cols)
                            })
                            .collect()
                    })
                    .collect();
                let degeneracies = (0..=l)
                    .map(|n| {
                        if n == l {
                            return Vec::new();
                        }
                        (0..=n)
                            .map(|i| {
                                let cols = bases[n].iter().map(|m| SparseVec::unit(index[n + 1][&self.degeneracy(n, i, m)], field)).collect();
                                SparseMatrix::new(bases[n + 1].len(), cols)
                            })
                            .collect()
                    })
                    .collect();
                SimplicialStrand { degree: j, dims: bases.iter().map(Vec::len).collect(), faces, degeneracies }
            })
            .collect();
        TruncatedSimplicialModule::new(field, l, degree_bound, strands).expect("shapes are consistent by construction")
    }

    /// `I/I²` for the augmentation ideal `I = (x, ξ)`: spanned levelwise by
    /// the variables, with faces acting through linear parts.
    pub fn conormal_module(&self, degree_bound: i64) -> TruncatedSimplicialModule {
        let field = self.base.field();
        let l = self.levels;
        let d = self.nbase();
        let var_degree = |n: usize, v: usize| if v < d { 1 } else { self.weights[(v - d) / n] };
        let linear = |p: &Polynomial| -> Vec<(usize, Scalar)> { (0..d).map(|v| (v, p.coefficient(&Monomial::var(d, v)))).filter(|(_, c)| !c.is_zero()).collect() };
        let strands = (0..=degree_bound)
            .map(|j| {
                let bases: Vec<Vec<usize>> = (0..=l).map(|n| (0..self.nvars(n)).filter(|&v| var_degree(n, v) == j).collect()).collect();
                let index: Vec<HashMap<usize, usize>> = bases.iter().map(|b| b.iter().enumerate().map(|(k, &v)| (v, k)).collect()).collect();
                let faces = (0..=l)
                    .map(|n| {
                        if n == 0 {
                            return Vec::new();
                        }
                        (0..=n)
                            .map(|i| {
                                let cols = bases[n]
                                    .iter()
                                    .map(|&v| {
                                        if v < d {
                                            return SparseVec::unit(index[n - 1][&v], field);
                                        }
                                        let (g, t) = ((v - d) / n, (v - d) % n + 1);
                                        let t2 = if t <= i { t } else { t - 1 };
                                        if t2 == 0 {
                                            SparseVec::from_entries(linear(&self.boundaries[g]).into_iter().map(|(u, c)| (index[n - 1][&u], c)).collect())
                                        } else if t2 == n {
                                            SparseVec::zero()
                                        } else {
                                            SparseVec::unit(index[n - 1][&self.xi(n - 1, g, t2)], field)
                                        }
                                    })
                                    .collect();
                                SparseMatrix::new(bases[n - 1].len(), cols)
                            })
                            .collect()
                    })
                    .collect();
                let degeneracies = (0..=l)
                    .map(|n| {
                        if n == l {
                            return Vec::new();
                        }
                        (0..=n)
                            .map(|i| {
                                let cols = bases[n]
                                    .iter()
                                    .map(|&v| {
                                        let w = if v < d {
                                            v
                                        } else {
                                            let (g, t) = ((v - d) / n, (v - d) % n + 1);
                                            self.xi(n + 1, g, if t <= i { t } else { t + 1 })
                                        };
                                        SparseVec::unit(index[n + 1][&w], field)
                                    })
                                    .collect();
                                SparseMatrix::new(bases[n + 1].len(), cols)
                            })
                            .collect()
                    })
                    .collect();
                SimplicialStrand { degree: j, dims: bases.iter().map(Vec::len).collect(), faces, degeneracies }
            })
            .collect();
        TruncatedSimplicialModule::new(field, l, degree_bound, strands).expect("shapes are consistent by construction")
    }
}
