//! Classical Koszul complexes over presented rings, the complex on the
//! variables, and its twists by the trivial map and by Frobenius powers.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ghost::frobenius::{exponent_box, frobenius_expand};
use crate::groebner::{minimal_generator_count, IdealHandle};
use crate::homalg::{FreeStrand, GradedChainComplex, GradedFreeModule, HomologyTable, ModuleComplex, PolyMatrix, PresentedModule};
use crate::linalg::{kernel, Echelon, SparseVec};
use crate::polycore::{Monomial, Polynomial, RingPresentation};

/// `K(f_1, …, f_n)`: term `i` is `Λ^i R^n` with basis `e_S`, `|S| = i`,
/// listed by (degree, index lists in lexicographic order).
#[derive(Clone, Debug)]
pub struct KoszulComplex {
    ring: Arc<RingPresentation>,
    sequence: Vec<Polynomial>,
    weights: Vec<i64>,
    subsets: Vec<Vec<u64>>,
    complex: GradedChainComplex,
}

fn members(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask & (1 << i) != 0).collect()
}

pub fn koszul(ring: &Arc<RingPresentation>, sequence: &[Polynomial]) -> Result<KoszulComplex> {
    let n = sequence.len();
    if n > 20 {
        return Err(Error::Precondition(format!("Koszul complex on {n} elements is too large")));
    }
    let mut weights = Vec::with_capacity(n);
    for f in sequence {
        if !crate::polycore::same_ring(f.ring(), ring.ring()) {
            return Err(Error::ArityMismatch { expected: ring.nvars(), found: f.ring().nvars() });
        }
        if !f.is_homogeneous() {
            return Err(Error::Inhomogeneous(f.to_string()));
        }
        if !f.constant_term().is_zero() {
            return Err(Error::Precondition(format!("`{f}` has a nonzero constant term")));
        }
        // a zero entry gets weight 1, matching the simplicial convention
        weights.push(f.total_degree().map_or(1, |d| d as i64));
    }
    let weight = |mask: u64| members(mask).iter().map(|&j| weights[j]).sum::<i64>();
    let mut subsets: Vec<Vec<u64>> = vec![Vec::new(); n + 1];
    for mask in 0u64..(1u64 << n) {
        subsets[mask.count_ones() as usize].push(mask);
    }
    for level in &mut subsets {
        level.sort_by_key(|&m| (weight(m), members(m)));
    }
    let positions: Vec<HashMap<u64, usize>> = subsets.iter().map(|l| l.iter().enumerate().map(|(i, &m)| (m, i)).collect()).collect();

    let modules: Vec<GradedFreeModule> = subsets.iter().map(|l| GradedFreeModule::new(l.iter().map(|&m| weight(m)).collect(), 1)).collect();
    let zero = Polynomial::zero(ring.ring());
    let mut maps = vec![PolyMatrix::empty(1)];
    for k in 1..=n {
        let cols = subsets[k]
            .iter()
            .map(|&mask| {
                let mut col = vec![zero.clone(); subsets[k - 1].len()];
                for (s, j) in members(mask).into_iter().enumerate() {
                    let row = positions[k - 1][&(mask & !(1 << j))];
                    col[row] = if s % 2 == 0 { ring.normal_form(&sequence[j]) } else { ring.normal_form(&sequence[j]).neg() };
                }
                col
            })
            .collect();
        maps.push(PolyMatrix::new(subsets[k - 1].len(), cols));
    }
    let complex = GradedChainComplex::new(ring.clone(), 0, modules, maps);
    Ok(KoszulComplex { ring: ring.clone(), sequence: sequence.to_vec(), weights, subsets, complex })
}

/// `K^R`: the Koszul complex on the variables, which minimally generate `𝔪`.
pub fn koszul_on_maximal_ideal(ring: &Arc<RingPresentation>) -> KoszulComplex {
    koszul(ring, &ring.variables()).expect("variables are homogeneous of degree one")
}

impl KoszulComplex {
    pub fn ring(&self) -> &Arc<RingPresentation> {
        &self.ring
    }

    pub fn sequence(&self) -> &[Polynomial] {
        &self.sequence
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    /// Bitmasks of the basis of term `i`, in basis order.
    pub fn subsets(&self, i: usize) -> &[u64] {
        &self.subsets[i]
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn complex(&self) -> &GradedChainComplex {
        &self.complex
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.complex.ranks()
    }

    pub fn homology_dims(&self, max_degree: i64) -> HomologyTable {
        self.complex.homology_dims(max_degree)
    }

    /// Default internal-degree bound: top generator degree plus the ideal's
    /// top generator degree plus two.
    pub fn default_degree_bound(&self) -> i64 {
        self.weights.iter().sum::<i64>() + self.ring.max_generator_degree() as i64 + 2
    }
}

/// Whether every variable multiplies each Koszul cycle into the boundaries,
/// strand by strand for internal degrees `< max_degree`.
pub fn koszul_homology_annihilated(k: &KoszulComplex, max_degree: i64) -> bool {
    let ring = k.ring();
    let field = ring.field();
    let c = k.complex();
    let strands: Vec<Vec<FreeStrand>> = c.modules().iter().map(|m| (0..=max_degree).map(|j| FreeStrand::new(ring, m, j)).collect()).collect();
    for i in 0..c.len() {
        for j in 0..max_degree {
            let src = &strands[i][j as usize];
            if src.dim() == 0 {
                continue;
            }
            let cycles = if i == 0 {
                (0..src.dim()).map(|q| SparseVec::unit(q, field)).collect()
            } else {
                let tgt = &strands[i - 1][j as usize];
                let images: Vec<SparseVec> = src.basis().iter().map(|(g, m)| tgt.coords_of_product(ring, m, c.maps()[i].col(*g))).collect();
                kernel(&images, field)
            };
            let up = &strands[i][(j + 1) as usize];
            let mut boundaries = Echelon::new(field);
            if i + 1 < c.len() {
                for (g, m) in strands[i + 1][(j + 1) as usize].basis() {
                    boundaries.insert(up.coords_of_product(ring, m, c.maps()[i + 1].col(*g)));
                }
            }
            for z in &cycles {
                let col = src.to_column(ring, c.modules()[i].rank(), z);
                for l in 0..ring.nvars() {
                    let x = Monomial::var(ring.nvars(), l);
                    if !boundaries.contains(&up.coords_of_product(ring, &x, &col)) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Compares Koszul homology on two minimal generating sets of one ideal.
pub fn generator_change_iso_check(ring: &Arc<RingPresentation>, f: &[Polynomial], g: &[Polynomial], max_degree: i64) -> Result<bool> {
    let with_base = |s: &[Polynomial]| -> Result<IdealHandle> {
        let mut gens = s.to_vec();
        gens.extend(ring.generators().iter().cloned());
        IdealHandle::new(ring.ring(), gens, ring.order().clone())
    };
    if !with_base(f)?.same_ideal(&with_base(g)?)? {
        return Err(Error::Precondition("the two sequences generate different ideals".into()));
    }
    for s in [f, g] {
        if minimal_generator_count(ring.generators(), s) != s.len() {
            return Err(Error::Precondition("a sequence is not a minimal generating set".into()));
        }
    }
    let a = koszul(ring, f)?.homology_dims(max_degree);
    let b = koszul(ring, g)?.homology_dims(max_degree);
    Ok(a.dims == b.dims)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwistMode {
    /// Through `R → k → K`.
    Trivial,
    /// Through the `e`-th Frobenius power.
    Frobenius(u32),
}

/// A Koszul complex re-expressed as a complex of presented `R`-modules
/// through a restriction of scalars.
#[derive(Clone, Debug)]
pub struct TwistedKoszulModuleComplex {
    pub mode: TwistMode,
    pub complex: ModuleComplex,
    pub flags: Vec<String>,
}

/// Twists `k`. Trivial mode replaces each term by its homology as k-spaces
/// with trivial action, read from strands of degree `≤ max_degree`.
/// Frobenius mode pushes every term forward along `x ↦ x^q`, `q = p^e`:
/// the generators of term `i` are `e_S ⊗ x^a` with `a_i < q` in degree
/// `deg e_S + |a|`, and the ring acts with all degrees multiplied by `q`.
pub fn twist(k: &KoszulComplex, mode: TwistMode, max_degree: i64) -> Result<TwistedKoszulModuleComplex> {
    let ring = k.ring();
    match mode {
        TwistMode::Trivial => {
            let h = k.homology_dims(max_degree);
            let mut terms = Vec::new();
            let mut diffs = Vec::new();
            for i in 0..=k.len() {
                let degrees: Vec<i64> = h.row(i as i64).into_iter().flat_map(|(j, d)| std::iter::repeat(j).take(d)).collect();
                let prev = terms.last().map_or(0, |t: &PresentedModule| t.num_generators());
                diffs.push(if i == 0 { PolyMatrix::empty(degrees.len()) } else { PolyMatrix::new(prev, vec![vec![Polynomial::zero(ring.ring()); prev]; degrees.len()]) });
                terms.push(PresentedModule::trivial(ring, 1, degrees));
            }
            Ok(TwistedKoszulModuleComplex { mode, complex: ModuleComplex::new(0, terms, diffs)?, flags: h.flags })
        }
        TwistMode::Frobenius(e) => {
            let p = ring.characteristic();
            if p == 0 {
                return Err(Error::CharacteristicZero);
            }
            if e == 0 {
                return Err(Error::Precondition("Frobenius power must be at least 1".into()));
            }
            let q = (p as u64).checked_pow(e).filter(|&q| q <= u32::MAX as u64).ok_or_else(|| Error::Precondition("Frobenius power too large".into()))? as u32;
            let boxes = exponent_box(ring.nvars(), q);
            let zero = Polynomial::zero(ring.ring());
            let mut terms = Vec::new();
            let mut diffs = Vec::new();
            let mut prev_index: HashMap<(u64, Monomial), usize> = HashMap::new();
            for i in 0..=k.len() {
                let mut gens: Vec<(i64, usize, u64, Monomial)> = Vec::new();
                for (pos, &mask) in k.subsets(i).iter().enumerate() {
                    let w = k.complex().modules()[i].degrees()[pos];
                    for a in &boxes {
                        gens.push((w + a.degree() as i64, pos, mask, a.clone()));
                    }
                }
                gens.sort_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)).then_with(|| y.3.cmp(&x.3)));
                let gens: Vec<(i64, u64, Monomial)> = gens.into_iter().map(|(d, _, m, a)| (d, m, a)).collect();
                let index: HashMap<(u64, Monomial), usize> = gens.iter().enumerate().map(|(t, (_, m, a))| ((*m, a.clone()), t)).collect();
                let degrees: Vec<i64> = gens.iter().map(|g| g.0).collect();
                let mut rels = Vec::new();
                for (_, mask, a) in &gens {
                    for f in ring.generators() {
                        let mut col = vec![zero.clone(); gens.len()];
                        for (r, coeff) in frobenius_expand(a, f, q) {
                            col[index[&(*mask, r)]] = coeff;
                        }
                        rels.push(col);
                    }
                }
                if i == 0 {
                    diffs.push(PolyMatrix::empty(gens.len()));
                } else {
                    let nprev = prev_index.len();
                    let cols = gens
                        .iter()
                        .map(|(_, mask, a)| {
                            let mut col = vec![zero.clone(); nprev];
                            for (s, j) in members(*mask).into_iter().enumerate() {
                                let f = if s % 2 == 0 { k.sequence()[j].clone() } else { k.sequence()[j].neg() };
                                for (r, coeff) in frobenius_expand(a, &f, q) {
                                    let row = prev_index[&(*mask & !(1 << j), r)];
                                    col[row] = col[row].add(&coeff);
                                }
                            }
                            col
                        })
                        .collect();
                    diffs.push(PolyMatrix::new(nprev, cols));
                }
                terms.push(PresentedModule::new(ring.clone(), q, degrees, rels)?);
                prev_index = index;
            }
            Ok(TwistedKoszulModuleComplex { mode, complex: ModuleComplex::new(0, terms, diffs)?, flags: Vec::new() })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::tor_dims;
    use crate::polycore::{parse_polynomial, parse_ring};

    fn polys(r: &RingPresentation, s: &[&str]) -> Vec<Polynomial> {
        s.iter().map(|t| parse_polynomial(t, r.ring()).unwrap()).collect()
    }

    #[test]
    fn ranks_and_d_squared() {
        for (ring, n) in [("F2[x]/(x^2)", 1), ("QQ[x,y]/(x*y)", 2), ("QQ[x,y,z]/(x*y*z)", 3)] {
            let k = koszul_on_maximal_ideal(&parse_ring(ring).unwrap());
            let want: Vec<usize> = (0..=n).map(|i| (1..=i).fold(1, |acc, t| acc * (n - t + 1) / t)).collect();
            assert_eq!(k.ranks(), want);
            assert!(k.complex().verify_d_squared());
        }
    }

    #[test]
    fn homology_of_small_complexes() {
        let r = parse_ring("QQ[x]").unwrap();
        let k = koszul_on_maximal_ideal(&r);
        assert_eq!(k.homology_dims(6).totals(), vec![1, 0]);
        let r = parse_ring("F2[x]/(x^2)").unwrap();
        let h = koszul_on_maximal_ideal(&r).homology_dims(6);
        assert_eq!((h.get(0, 0), h.get(1, 2)), (1, 1));
        assert_eq!(h.totals(), vec![1, 1]);
    }

    #[test]
    fn zero_constant_term_required() {
        let r = parse_ring("QQ[x]").unwrap();
        assert!(matches!(koszul(&r, &polys(&r, &["x+1"])), Err(Error::Inhomogeneous(_))));
        assert!(matches!(koszul(&r, &polys(&r, &["1"])), Err(Error::Precondition(_))));
    }

    #[test]
    fn annihilation() {
        for ring in ["QQ[x,y]/(x*y)", "F2[x]/(x^2)"] {
            let k = koszul_on_maximal_ideal(&parse_ring(ring).unwrap());
            assert!(koszul_homology_annihilated(&k, 6));
        }
        let r = parse_ring("QQ[x,y]").unwrap();
        assert!(!koszul_homology_annihilated(&koszul(&r, &polys(&r, &["x^2"])).unwrap(), 6));
    }

    #[test]
    fn generator_change() {
        let r = parse_ring("QQ[x,y]/(x*y)").unwrap();
        assert!(generator_change_iso_check(&r, &polys(&r, &["x", "y"]), &polys(&r, &["x+y", "y"]), 6).unwrap());
        let r = parse_ring("QQ[x,y,z]/(x*y*z)").unwrap();
        assert!(generator_change_iso_check(&r, &polys(&r, &["x", "y", "z"]), &polys(&r, &["x", "x+y", "z"]), 6).unwrap());
        assert!(generator_change_iso_check(&r, &polys(&r, &["x", "y"]), &polys(&r, &["x", "z"]), 6).is_err());
    }

    #[test]
    fn frobenius_twist_shape() {
        let r = parse_ring("F2[x]/(x^2)").unwrap();
        let t = twist(&koszul_on_maximal_ideal(&r), TwistMode::Frobenius(1), 0).unwrap();
        assert!(t.complex.verify_d_squared());
        let terms = t.complex.terms();
        assert_eq!(terms[0].degrees(), &[0, 1]);
        assert_eq!(terms[1].degrees(), &[1, 2]);
        // generator 1 of the x-slot goes to x; generator x goes to x², which
        // is (x)·1 through Frobenius and dies in the module
        let d = &t.complex.diffs()[1];
        assert!(d.entry(0, 0).is_zero() && d.entry(1, 0).constant_term().is_one());
        assert_eq!(d.entry(0, 1).to_string(), "x");
        assert!(d.entry(1, 1).is_zero());
        for m in terms {
            assert_eq!((0..8).map(|j| m.strand(j).dim()).sum::<usize>(), 2);
        }
        assert_eq!(twist(&koszul_on_maximal_ideal(&parse_ring("QQ[x]").unwrap()), TwistMode::Frobenius(1), 0).unwrap_err(), Error::CharacteristicZero);
    }

    #[test]
    fn trivial_twist_factorization() {
        let r = parse_ring("QQ[x,y]/(x*y)").unwrap();
        let kr = koszul_on_maximal_ideal(&r);
        let t = twist(&kr, TwistMode::Trivial, kr.default_degree_bound()).unwrap();
        let k = PresentedModule::residue_field(&r, 1);
        let tor = tor_dims(&k, &t.complex, 3, 12).unwrap();
        let beta = crate::homalg::residue_field_betti(&r, 3).unwrap().totals();
        let h: Vec<usize> = (0..=2).map(|i| kr.homology_dims(8).total(i)).collect();
        assert_eq!(tor.totals(), crate::homalg::convolve(&beta, &h, 4));
    }
}
