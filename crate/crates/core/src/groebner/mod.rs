//! Buchberger's algorithm, ideal membership, ideal arithmetic, standard
//! monomial bases and Krull dimension.

mod basis;
mod ideal;
mod order;

pub use basis::{buchberger, GroebnerBasis};
pub use ideal::IdealHandle;
pub use order::{MonomialOrder, OrderKind};

use crate::error::Result;
use crate::polycore::{Monomial, Polynomial, RingPresentation};

/// `f ∈ I`.
pub fn member(f: &Polynomial, ideal: &IdealHandle) -> Result<bool> {
    ideal.member(f)
}

/// Standard monomials of degree `d`: a k-basis of `R_d`, largest first.
pub fn quotient_basis(ring: &RingPresentation, d: u32) -> Vec<Monomial> {
    ring.quotient_basis(d).as_ref().clone()
}

/// Krull dimension from the leading-term ideal: the largest variable subset
/// containing the support of no leading monomial.
pub fn krull_dim(ring: &RingPresentation) -> usize {
    dimension_of_leading_ideal(ring.nvars(), ring.gb().leading_monomials())
}

pub(crate) fn dimension_of_leading_ideal(nvars: usize, leads: &[Monomial]) -> usize {
    let supports: Vec<u64> = leads.iter().map(|m| m.support().fold(0u64, |acc, i| acc | (1 << i))).collect();
    let mut best = 0;
    for subset in 0u64..(1u64 << nvars) {
        let size = subset.count_ones() as usize;
        if size > best && supports.iter().all(|s| s & !subset != 0) {
            best = size;
        }
    }
    best
}

/// Size of a minimal homogeneous generating set of the image of `(gens)`
/// modulo `(base)`: generators are scanned by ascending degree and kept when
/// they are not in the ideal of `base` and the ones kept so far.
pub fn minimal_generator_count(base: &[Polynomial], gens: &[Polynomial]) -> usize {
    let Some(first) = gens.first() else { return 0 };
    let ring = first.ring().clone();
    let mut sorted: Vec<&Polynomial> = gens.iter().filter(|g| !g.is_zero()).collect();
    sorted.sort_by_key(|g| g.total_degree());
    let mut kept: Vec<Polynomial> = base.to_vec();
    let mut count = 0;
    for g in sorted {
        let ideal = IdealHandle::new(&ring, kept.clone(), MonomialOrder::default()).expect("generators share a ring");
        if !ideal.member(g).expect("generators share a ring") {
            kept.push(g.clone());
            count += 1;
        }
    }
    count
}

impl RingPresentation {
    /// `μ(I)`, the minimal number of generators of the defining ideal.
    pub fn minimal_generator_count(&self) -> usize {
        minimal_generator_count(&[], self.generators())
    }

    pub fn quotient_basis(&self, d: u32) -> std::sync::Arc<Vec<Monomial>> {
        self.cached_basis(d, || {
            let gb = self.gb();
            let mut out: Vec<Monomial> = Monomial::all_of_degree(self.nvars(), d).into_iter().filter(|m| gb.is_standard(m)).collect();
            let order = self.order();
            out.sort_by(|a, b| order.cmp(b, a));
            out
        })
    }

    pub fn krull_dim(&self) -> usize {
        krull_dim(self)
    }

    /// `dim_k R_d`.
    pub fn hilbert_function(&self, d: u32) -> usize {
        self.quotient_basis(d).len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::parse_ring;

    #[test]
    fn quotient_bases() {
        let r = parse_ring("F2[x]/(x^2)").unwrap();
        assert_eq!(quotient_basis(&r, 1), vec![Monomial::new(vec![1])]);
        assert!(quotient_basis(&r, 2).is_empty());
        let r = parse_ring("QQ[x,y]/(x*y)").unwrap();
        assert_eq!(quotient_basis(&r, 3), vec![Monomial::new(vec![3, 0]), Monomial::new(vec![0, 3])]);
        let r = parse_ring("QQ[x]").unwrap();
        assert_eq!(quotient_basis(&r, 5), vec![Monomial::new(vec![5])]);
    }

    #[test]
    fn minimal_generator_counts() {
        assert_eq!(parse_ring("QQ[x,y]/(x^2,x*y,y^2)").unwrap().minimal_generator_count(), 3);
        assert_eq!(parse_ring("QQ[x,y]/(x^2,x^3,x^2*y)").unwrap().minimal_generator_count(), 1);
        assert_eq!(parse_ring("QQ[x]").unwrap().minimal_generator_count(), 0);
    }

    #[test]
    fn krull_dimensions() {
        assert_eq!(krull_dim(&parse_ring("QQ[x,y]/(x*y)").unwrap()), 1);
        assert_eq!(krull_dim(&parse_ring("F2[x]/(x^2)").unwrap()), 0);
        assert_eq!(krull_dim(&parse_ring("QQ[x,y,z]/(x*y*z)").unwrap()), 2);
        assert_eq!(krull_dim(&parse_ring("QQ[x,y]/(x^2,x*y,y^2)").unwrap()), 0);
        assert_eq!(krull_dim(&parse_ring("QQ[x,y,z]").unwrap()), 3);
    }
}
