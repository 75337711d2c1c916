use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::{classify, validate_map, ClassificationReport, RingEndomap, Verdict};
use crate::error::{Error, Result};
use crate::homalg::{convolve, default_degree_bound, residue_field_betti, tor_dims, BettiTable, ModuleComplex, PresentedModule};
use crate::koszul::{koszul_on_maximal_ideal, twist, TwistMode};
use crate::polycore::{Monomial, Polynomial, RingPresentation};

/// All exponent vectors with every entry below `q`, ordered by degree and
/// then descending monomial order.
pub fn exponent_box(nvars: usize, q: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for d in 0..=(nvars as u32 * (q - 1)) {
        out.extend(Monomial::all_of_degree(nvars, d).into_iter().filter(|m| m.exps().iter().all(|&e| e < q)));
    }
    out
}

/// `x^a · p = Σ_r x^r · c_r(x)^q`, returned as the pairs `(r, c_r)`.
pub fn frobenius_expand(a: &Monomial, p: &Polynomial, q: u32) -> Vec<(Monomial, Polynomial)> {
    let ring = p.ring();
    let mut acc: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
    for (m, c) in p.terms() {
        let total = a.mul(m);
        let r = Monomial::new(total.exps().iter().map(|e| e % q).collect());
        let d = Monomial::new(total.exps().iter().map(|e| e / q).collect());
        acc.entry(r).or_insert_with(|| Polynomial::zero(ring)).add_term(d, c);
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn frobenius_q(ring: &RingPresentation, e: u32) -> Result<u32> {
    let p = ring.characteristic();
    if p == 0 {
        return Err(Error::CharacteristicZero);
    }
    if e == 0 {
        return Err(Error::Precondition("Frobenius power must be at least 1".into()));
    }
    (p as u64).checked_pow(e).filter(|&q| q <= 1 << 16).map(|q| q as u32).ok_or_else(|| Error::Precondition(format!("{p}^{e} is too large")))
}

/// `x_i ↦ x_i^{p^e}`.
pub fn frobenius_map(ring: &Arc<RingPresentation>, e: u32) -> Result<RingEndomap> {
    let q = frobenius_q(ring, e)?;
    let images = ring.variables().iter().map(|x| x.pow(q)).collect();
    validate_map(images, ring, ring)
}

/// `F^e_* R` presented over `R`: generators `x^a`, `a_i < q`, in degree
/// `|a|`, with ring variables in degree `q`.
#[derive(Clone, Debug)]
pub struct FrobeniusPushforward {
    pub q: u32,
    pub basis: Vec<Monomial>,
    pub module: PresentedModule,
}

pub fn frobenius_pushforward(ring: &Arc<RingPresentation>, e: u32) -> Result<FrobeniusPushforward> {
    let q = frobenius_q(ring, e)?;
    let basis = exponent_box(ring.nvars(), q);
    let index: BTreeMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let zero = Polynomial::zero(ring.ring());
    let mut rels = Vec::new();
    for a in &basis {
        for f in ring.generators() {
            let mut col = vec![zero.clone(); basis.len()];
            for (r, c) in frobenius_expand(a, f, q) {
                col[index[&r]] = c;
            }
            rels.push(col);
        }
    }
    let degrees = basis.iter().map(|m| m.degree() as i64).collect();
    let module = PresentedModule::new(ring.clone(), q, degrees, rels)?;
    Ok(FrobeniusPushforward { q, basis, module })
}

#[derive(Clone, Debug, Serialize)]
pub struct KunzReport {
    pub classification: ClassificationReport,
    pub q: u32,
    pub pushforward_rank: usize,
    pub pushforward_free: bool,
    pub frobenius_conormal_zero: bool,
    pub tor: BettiTable,
    pub tor_vanishes: bool,
    pub consistent: bool,
    pub verdict: String,
}

impl KunzReport {
    pub fn is_truncated(&self) -> bool {
        self.tor.is_truncated()
    }
}

/// Classification, conormal vanishing of Frobenius, and
/// `dim Tor_i(k, F^e_* R)` for `i ≤ n`, checked against regularity.
pub fn kunz_report(ring: &Arc<RingPresentation>, e: u32, n: usize) -> Result<KunzReport> {
    let classification = classify(ring);
    let phi = frobenius_map(ring, e)?;
    let push = frobenius_pushforward(ring, e)?;
    let q = push.q;
    let k = PresentedModule::residue_field(ring, q);
    let d = default_degree_bound(ring, q, push.module.max_generator_degree(), n + 1);
    let tor = tor_dims(&k, &ModuleComplex::single(push.module.clone()), n, d)?;
    let tor_vanishes = (1..=n).all(|i| tor.total(i) == 0);
    let regular = classification.verdict == Verdict::Regular;
    let consistent = regular == tor_vanishes;
    Ok(KunzReport {
        classification,
        q,
        pushforward_rank: push.basis.len(),
        pushforward_free: push.module.is_free(),
        frobenius_conormal_zero: phi.conormal_zero(),
        tor,
        tor_vanishes,
        consistent,
        verdict: if consistent { "consistent-with-Kunz".into() } else { "inconsistent".into() },
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TrivializationReport {
    pub q: u32,
    pub embdim: usize,
    /// Smallest `e` with `2^e > embdim`.
    pub required_e: u32,
    pub bound_satisfied: bool,
    pub lhs: Vec<usize>,
    pub rhs: Vec<usize>,
    pub residue_betti: Vec<usize>,
    pub koszul_homology: Vec<usize>,
    pub equal: bool,
    pub flags: Vec<String>,
}

/// Compares `dim Tor_i(k, K^R` twisted by `F^e)` with the convolution of the
/// Betti numbers of `k` and the total Koszul homology of `R`, for `i ≤ n`.
pub fn ghost_trivialization_check(ring: &Arc<RingPresentation>, e: u32, n: usize) -> Result<TrivializationReport> {
    let q = frobenius_q(ring, e)?;
    let kr = koszul_on_maximal_ideal(ring);
    let twisted = twist(&kr, TwistMode::Frobenius(e), 0)?;
    let k = PresentedModule::residue_field(ring, q);
    let maxdeg = ring.max_generator_degree().max(1) as i64;
    let d = q as i64 * (n as i64 + 1) * maxdeg + twisted.complex.max_generator_degree() + 2;
    let tor = tor_dims(&k, &twisted.complex, n, d)?;
    let lhs = tor.totals();

    let betti = residue_field_betti(ring, n)?;
    let residue_betti = betti.totals();
    let h = kr.homology_dims(kr.default_degree_bound());
    let koszul_homology: Vec<usize> = (0..=kr.len()).map(|i| h.total(i as i64)).collect();
    let rhs = convolve(&residue_betti, &koszul_homology, n + 1);

    let embdim = ring.nvars();
    let required_e = usize::BITS - embdim.max(1).leading_zeros();
    let mut flags = tor.truncation.flags.clone();
    flags.extend(betti.truncation.flags.iter().cloned());
    flags.extend(h.flags.iter().cloned());
    Ok(TrivializationReport {
        q,
        embdim,
        required_e,
        bound_satisfied: e >= required_e,
        equal: lhs == rhs,
        lhs,
        rhs,
        residue_betti,
        koszul_homology,
        flags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::parse_ring;

    #[test]
    fn expansion_bookkeeping() {
        let r = parse_ring("F2[x,y]").unwrap();
        let f = Polynomial::var(r.ring(), 0).pow(3).add(&Polynomial::var(r.ring(), 0).mul(&Polynomial::var(r.ring(), 1)));
        let out = frobenius_expand(&Monomial::new(vec![1, 0]), &f, 2);
        // x·(x³ + xy) = (x²)² + x²·y
        let want = vec![
            (Monomial::new(vec![0, 0]), Polynomial::var(r.ring(), 0).pow(2)),
            (Monomial::new(vec![0, 1]), Polynomial::var(r.ring(), 0)),
        ];
        let mut out = out;
        out.sort_by(|a, b| a.0.exps().cmp(b.0.exps()));
        assert_eq!(out, want);
        assert_eq!(exponent_box(2, 3).len(), 9);
        assert_eq!(exponent_box(1, 2), vec![Monomial::new(vec![0]), Monomial::new(vec![1])]);
    }

    #[test]
    fn frobenius_images() {
        let r = parse_ring("F3[x,y]/(x*y)").unwrap();
        let phi = frobenius_map(&r, 1).unwrap();
        assert_eq!(phi.images()[1].to_string(), "y^3");
        assert!(phi.conormal_zero());
        assert_eq!(frobenius_map(&parse_ring("QQ[x]").unwrap(), 1).unwrap_err(), Error::CharacteristicZero);
    }

    #[test]
    fn pushforward_of_polynomial_ring_is_free() {
        let push = frobenius_pushforward(&parse_ring("F2[x,y]").unwrap(), 1).unwrap();
        assert!(push.module.is_free());
        assert_eq!(push.basis.len(), 4);
        let push = frobenius_pushforward(&parse_ring("F2[x]/(x^2)").unwrap(), 1).unwrap();
        assert!(!push.module.is_free());
        let dims: Vec<usize> = (0..6).map(|j| push.module.strand(j).dim()).collect();
        assert_eq!(dims, vec![1, 1, 0, 0, 0, 0]);
    }

    #[test]
    fn kunz_small() {
        let r = kunz_report(&parse_ring("F2[x]").unwrap(), 1, 3).unwrap();
        assert!(r.tor_vanishes && r.consistent);
        let r = kunz_report(&parse_ring("F2[x]/(x^2)").unwrap(), 1, 3).unwrap();
        assert_eq!(r.tor.totals(), vec![2, 2, 2, 2]);
        assert!(r.consistent && !r.is_truncated());
    }

    #[test]
    fn trivialization_small() {
        let r = ghost_trivialization_check(&parse_ring("F2[x]/(x^2)").unwrap(), 1, 3).unwrap();
        assert_eq!(r.lhs, vec![1, 2, 2, 2]);
        assert!(r.equal && r.bound_satisfied);
    }
}
