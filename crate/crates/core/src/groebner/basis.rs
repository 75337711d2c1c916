use std::collections::HashSet;

use super::MonomialOrder;
use crate::polycore::{Monomial, Polynomial};

/// A reduced Gröbner basis: monic, auto-reduced, sorted by ascending leading
/// monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    polys: Vec<Polynomial>,
    leads: Vec<Monomial>,
}

impl GroebnerBasis {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leads
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Full normal form of `f`.
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        reduce_with(f, &self.polys, &self.leads, &self.order)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.reduce(f).is_zero()
    }

    /// True when no leading monomial divides `m`.
    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.leads.iter().any(|l| l.divides(m))
    }
}

fn reduce_with(f: &Polynomial, basis: &[Polynomial], leads: &[Monomial], order: &MonomialOrder) -> Polynomial {
    let mut p = f.clone();
    let mut rem = Polynomial::zero(f.ring());
    while let Some((m, c)) = order.leading(&p).map(|(m, c)| (m.clone(), c.clone())) {
        match leads.iter().position(|l| l.divides(&m)) {
            Some(i) => {
                let q = leads[i].quotient_of(&m).unwrap();
                let factor = -(&c * &order.leading(&basis[i]).unwrap().1.inv());
                for (t, a) in basis[i].terms() {
                    p.add_term(t.mul(&q), &(a * &factor));
                }
            }
            None => {
                p.add_term(m.clone(), &-&c);
                rem.add_term(m, &c);
            }
        }
    }
    rem
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, order: &MonomialOrder) -> Polynomial {
    let (mf, cf) = order.leading(f).unwrap();
    let (mg, cg) = order.leading(g).unwrap();
    let l = mf.lcm(mg);
    let a = f.mul_term(&mf.quotient_of(&l).unwrap(), &cf.inv());
    let b = g.mul_term(&mg.quotient_of(&l).unwrap(), &cg.inv());
    a.sub(&b)
}

/// Buchberger's algorithm with the coprime-leading-term and chain criteria,
/// followed by inter-reduction. Pairs are processed by ascending lcm degree.
pub fn buchberger(gens: &[Polynomial], order: &MonomialOrder) -> GroebnerBasis {
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut leads: Vec<Monomial> = Vec::new();
    let mut pending: Vec<(usize, usize)> = Vec::new();
    let mut pending_set: HashSet<(usize, usize)> = HashSet::new();

    let push = |p: Polynomial, basis: &mut Vec<Polynomial>, leads: &mut Vec<Monomial>, pending: &mut Vec<(usize, usize)>, pending_set: &mut HashSet<(usize, usize)>| {
        let p = {
            let c = order.leading(&p).unwrap().1.inv();
            p.scale(&c)
        };
        let k = basis.len();
        leads.push(order.leading_monomial(&p).unwrap());
        basis.push(p);
        for i in 0..k {
            pending.push((i, k));
            pending_set.insert((i, k));
        }
    };

    for g in gens {
        let r = reduce_with(g, &basis, &leads, order);
        if !r.is_zero() {
            push(r, &mut basis, &mut leads, &mut pending, &mut pending_set);
        }
    }

    while !pending.is_empty() {
        // normal selection strategy: smallest lcm degree first, ties by index
        let (idx, _) = pending
            .iter()
            .enumerate()
            .min_by_key(|(_, &(i, j))| (leads[i].lcm(&leads[j]).degree(), j, i))
            .unwrap();
        let (i, j) = pending.swap_remove(idx);
        pending_set.remove(&(i, j));
        if leads[i].is_coprime(&leads[j]) {
            continue;
        }
        let l = leads[i].lcm(&leads[j]);
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        let chain = (0..basis.len()).any(|k| {
            k != i && k != j && leads[k].divides(&l) && !pending_set.contains(&key(i, k)) && !pending_set.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order);
        let r = reduce_with(&s, &basis, &leads, order);
        if !r.is_zero() {
            push(r, &mut basis, &mut leads, &mut pending, &mut pending_set);
        }
    }

    // minimize: drop elements whose leading monomial is divisible by another's
    let mut keep: Vec<usize> = Vec::new();
    for i in 0..basis.len() {
        let redundant = (0..basis.len()).any(|j| j != i && leads[j].divides(&leads[i]) && (leads[j] != leads[i] || j < i));
        if !redundant {
            keep.push(i);
        }
    }
    let min_polys: Vec<Polynomial> = keep.iter().map(|&i| basis[i].clone()).collect();
    let min_leads: Vec<Monomial> = keep.iter().map(|&i| leads[i].clone()).collect();

    // tail reduction
    let mut polys = Vec::with_capacity(min_polys.len());
    for (i, p) in min_polys.iter().enumerate() {
        let others: Vec<Polynomial> = min_polys.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, q)| q.clone()).collect();
        let other_leads: Vec<Monomial> = min_leads.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, q)| q.clone()).collect();
        let (lm, lc) = order.leading(p).map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut tail = p.clone();
        tail.add_term(lm.clone(), &-&lc);
        let mut r = reduce_with(&tail, &others, &other_leads, order);
        r.add_term(lm, &lc);
        polys.push(r.monic_under(order));
    }
    polys.sort_by(|a, b| order.cmp(&order.leading_monomial(a).unwrap(), &order.leading_monomial(b).unwrap()));
    let leads = polys.iter().map(|p| order.leading_monomial(p).unwrap()).collect();
    GroebnerBasis { order: order.clone(), polys, leads }
}

impl Polynomial {
    pub(crate) fn monic_under(&self, order: &MonomialOrder) -> Polynomial {
        match order.leading(self) {
            Some((_, c)) => self.scale(&c.inv()),
            None => self.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{parse_polynomial, Field, PolyRing};

    fn polys(ring: &std::sync::Arc<PolyRing>, src: &[&str]) -> Vec<Polynomial> {
        src.iter().map(|s| parse_polynomial(s, ring).unwrap()).collect()
    }

    #[test]
    fn monomial_generator_is_its_own_basis() {
        let r = PolyRing::new(Field::Rational, vec!["x".into(), "y".into()]);
        let gb = buchberger(&polys(&r, &["x*y"]), &MonomialOrder::degrevlex());
        assert_eq!(gb.polys(), polys(&r, &["x*y"]).as_slice());
        assert!(buchberger(&[], &MonomialOrder::degrevlex()).is_empty());
    }

    #[test]
    fn chain_criterion_does_not_lose_elements() {
        // twisted cubic: the reduced degrevlex basis is the three quadrics
        let r = PolyRing::new(Field::Rational, vec!["x".into(), "y".into(), "z".into(), "w".into()]);
        let gb = buchberger(&polys(&r, &["x*z - y^2", "y*w - z^2", "x*w - y*z"]), &MonomialOrder::degrevlex());
        assert_eq!(gb.polys().len(), 3);
        for s in ["x*z - y^2", "y*w - z^2", "x*w - y*z", "x*z^2 - y^2*z"] {
            assert!(gb.contains(&parse_polynomial(s, &r).unwrap()));
        }
    }
}
