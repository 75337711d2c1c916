use std::sync::{Arc, OnceLock};

use super::{buchberger, GroebnerBasis, MonomialOrder};
use crate::error::{Error, Result};
use crate::polycore::{same_ring, PolyRing, Polynomial};

/// Generators of an ideal of a polynomial ring with a lazily computed,
/// populate-once Gröbner basis.
#[derive(Clone, Debug)]
pub struct IdealHandle {
    ring: Arc<PolyRing>,
    generators: Vec<Polynomial>,
    order: MonomialOrder,
    gb: OnceLock<GroebnerBasis>,
}

impl IdealHandle {
    pub fn new(ring: &Arc<PolyRing>, generators: Vec<Polynomial>, order: MonomialOrder) -> Result<Self> {
        for g in &generators {
            if !same_ring(g.ring(), ring) {
                return Err(Error::ArityMismatch { expected: ring.nvars(), found: g.ring().nvars() });
            }
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(IdealHandle { ring: ring.clone(), generators, order, gb: OnceLock::new() })
    }

    /// The ideal generated by all variables.
    pub fn maximal(ring: &Arc<PolyRing>, order: MonomialOrder) -> Self {
        let gens = (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect();
        IdealHandle { ring: ring.clone(), generators: gens, order, gb: OnceLock::new() }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn gb(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| buchberger(&self.generators, &self.order))
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::ArityMismatch { expected: self.ring.nvars(), found: f.ring().nvars() });
        }
        Ok(self.gb().reduce(f))
    }

    /// Ideal membership: the normal form vanishes.
    pub fn member(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    fn check(&self, other: &IdealHandle) -> Result<()> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::ArityMismatch { expected: self.ring.nvars(), found: other.ring.nvars() });
        }
        Ok(())
    }

    /// All pairwise products of generators, deduplicated.
    pub fn product(&self, other: &IdealHandle) -> Result<IdealHandle> {
        self.check(other)?;
        let mut gens: Vec<Polynomial> = Vec::new();
        for a in &self.generators {
            for b in &other.generators {
                let p = a.mul(b);
                if !p.is_zero() && !gens.contains(&p) {
                    gens.push(p);
                }
            }
        }
        IdealHandle::new(&self.ring, gens, self.order.clone())
    }

    pub fn power(&self, n: u32) -> Result<IdealHandle> {
        if n == 0 {
            return Err(Error::Precondition("ideal power 0 is the unit ideal, which is not represented".into()));
        }
        let mut acc = self.clone_fresh();
        for _ in 1..n {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    pub fn sum(&self, other: &IdealHandle) -> Result<IdealHandle> {
        self.check(other)?;
        let mut gens = self.generators.clone();
        for g in &other.generators {
            if !gens.contains(g) {
                gens.push(g.clone());
            }
        }
        IdealHandle::new(&self.ring, gens, self.order.clone())
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &IdealHandle) -> Result<bool> {
        self.check(other)?;
        for g in &other.generators {
            if !self.member(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality by double inclusion.
    pub fn same_ideal(&self, other: &IdealHandle) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    fn clone_fresh(&self) -> IdealHandle {
        IdealHandle { ring: self.ring.clone(), generators: self.generators.clone(), order: self.order.clone(), gb: OnceLock::new() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{parse_polynomial, Field};

    fn setup() -> (Arc<PolyRing>, impl Fn(&str) -> Polynomial) {
        let r = PolyRing::new(Field::Rational, vec!["x".into(), "y".into(), "z".into()]);
        let r2 = r.clone();
        (r, move |s: &str| parse_polynomial(s, &r2).unwrap())
    }

    #[test]
    fn products_and_powers() {
        let (r, p) = setup();
        let m = IdealHandle::new(&r, vec![p("x"), p("y")], MonomialOrder::default()).unwrap();
        let sq = m.power(2).unwrap();
        assert_eq!(sq.generators(), &[p("x^2"), p("x*y"), p("y^2")]);
        let xy = IdealHandle::new(&r, vec![p("x*y")], MonomialOrder::default()).unwrap();
        assert_eq!(xy.power(2).unwrap().generators(), &[p("x^2*y^2")]);
        let x = IdealHandle::new(&r, vec![p("x")], MonomialOrder::default()).unwrap();
        assert_eq!(m.product(&x).unwrap().generators(), &[p("x^2"), p("x*y")]);
        assert!(m.power(0).is_err());
    }

    #[test]
    fn membership_examples() {
        let (r, p) = setup();
        let cube_sq = IdealHandle::new(&r, vec![p("y^3")], MonomialOrder::default()).unwrap().power(2).unwrap();
        assert!(cube_sq.member(&p("y^6")).unwrap());
        let x2 = IdealHandle::new(&r, vec![p("x^2")], MonomialOrder::default()).unwrap();
        assert!(!x2.member(&p("x")).unwrap());
        let xyz2 = IdealHandle::new(&r, vec![p("x*y*z")], MonomialOrder::default()).unwrap().power(2).unwrap();
        assert!(xyz2.member(&p("x^2*y^2*z^2")).unwrap());
    }

    #[test]
    fn sum_and_equality() {
        let (r, p) = setup();
        let a = IdealHandle::new(&r, vec![p("x"), p("y")], MonomialOrder::default()).unwrap();
        let b = IdealHandle::new(&r, vec![p("x+y"), p("y")], MonomialOrder::default()).unwrap();
        assert!(a.same_ideal(&b).unwrap());
        let c = IdealHandle::new(&r, vec![p("z")], MonomialOrder::default()).unwrap();
        assert!(!a.same_ideal(&a.sum(&c).unwrap()).unwrap());
    }
}
