use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use super::{Field, Monomial, PolyRing, Polynomial};
use crate::error::{Error, Result};
use crate::groebner::{GroebnerBasis, IdealHandle, MonomialOrder};

/// A standard graded quotient `k[x_1..x_d] / I` with `I` homogeneous and
/// contained in the square of the irrelevant ideal. This is the model of a
/// local ring throughout the crate; the variables minimally generate its
/// maximal ideal.
pub struct RingPresentation {
    ring: Arc<PolyRing>,
    ideal: IdealHandle,
    qbasis: Mutex<HashMap<u32, Arc<Vec<Monomial>>>>,
    nf_cache: Mutex<HashMap<Monomial, Polynomial>>,
}

impl RingPresentation {
    /// Validates and builds a presentation. Zero generators are dropped and
    /// generators that are scalar multiples of earlier ones are removed.
    pub fn new(ring: Arc<PolyRing>, generators: Vec<Polynomial>) -> Result<Arc<RingPresentation>> {
        Self::with_order(ring, generators, MonomialOrder::default())
    }

    pub fn with_order(ring: Arc<PolyRing>, generators: Vec<Polynomial>, order: MonomialOrder) -> Result<Arc<RingPresentation>> {
        let mut kept: Vec<Polynomial> = Vec::new();
        let mut seen: Vec<Polynomial> = Vec::new();
        for g in generators {
            if g.is_zero() {
                continue;
            }
            if !g.is_homogeneous() {
                return Err(Error::Inhomogeneous(g.to_string()));
            }
            if g.terms().any(|(m, _)| m.degree() < 2) {
                return Err(Error::NotMinimal(g.to_string()));
            }
            let key = g.monic();
            if seen.contains(&key) {
                continue;
            }
            seen.push(key);
            kept.push(g);
        }
        let ideal = IdealHandle::new(&ring, kept, order)?;
        Ok(Arc::new(RingPresentation { ring, ideal, qbasis: Mutex::new(HashMap::new()), nf_cache: Mutex::new(HashMap::new()) }))
    }

    /// The polynomial ring itself (zero ideal), a regular ring.
    pub fn polynomial_ring(field: Field, vars: &[&str]) -> Arc<RingPresentation> {
        let ring = PolyRing::new(field, vars.iter().map(|s| s.to_string()).collect());
        Self::new(ring, Vec::new()).expect("zero ideal is always valid")
    }

    /// The same ring and generators under a different monomial order.
    pub fn reordered(&self, order: MonomialOrder) -> Result<Arc<RingPresentation>> {
        Self::with_order(self.ring.clone(), self.ideal.generators().to_vec(), order)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    pub fn characteristic(&self) -> u32 {
        self.field().characteristic()
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn var_names(&self) -> &[String] {
        self.ring.var_names()
    }

    pub fn generators(&self) -> &[Polynomial] {
        self.ideal.generators()
    }

    pub fn ideal(&self) -> &IdealHandle {
        &self.ideal
    }

    pub fn order(&self) -> &MonomialOrder {
        self.ideal.order()
    }

    pub fn gb(&self) -> &GroebnerBasis {
        self.ideal.gb()
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(&self.ring, i)
    }

    pub fn variables(&self) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        self.gb().reduce(f)
    }

    /// Normal form of a single monomial, memoized.
    pub fn reduce_monomial(&self, m: &Monomial) -> Polynomial {
        if self.gb().is_standard(m) {
            return Polynomial::monomial(&self.ring, m.clone());
        }
        if let Some(p) = self.nf_cache.lock().unwrap().get(m) {
            return p.clone();
        }
        let p = self.normal_form(&Polynomial::monomial(&self.ring, m.clone()));
        self.nf_cache.lock().unwrap().insert(m.clone(), p.clone());
        p
    }

    /// Normal form of `m * p`.
    pub fn mul_reduce(&self, m: &Monomial, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (t, c) in p.terms() {
            for (u, a) in self.reduce_monomial(&m.mul(t)).terms() {
                out.add_term(u.clone(), &(a * c));
            }
        }
        out
    }

    pub fn is_zero(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Maximum degree among ideal generators (0 for the zero ideal).
    pub fn max_generator_degree(&self) -> u32 {
        self.generators().iter().filter_map(Polynomial::total_degree).max().unwrap_or(0)
    }

    pub(crate) fn cached_basis(&self, d: u32, compute: impl FnOnce() -> Vec<Monomial>) -> Arc<Vec<Monomial>> {
        if let Some(b) = self.qbasis.lock().unwrap().get(&d) {
            return b.clone();
        }
        let b = Arc::new(compute());
        self.qbasis.lock().unwrap().entry(d).or_insert(b).clone()
    }

    /// Canonical DSL rendering, e.g. `QQ[x,y]/(x*y)`.
    pub fn to_dsl(&self) -> String {
        let mut s = format!("{}[{}]", self.field(), self.var_names().join(","));
        if !self.generators().is_empty() {
            let gens: Vec<String> = self.generators().iter().map(|g| g.to_string().replace(' ', "")).collect();
            s.push_str(&format!("/({})", gens.join(",")));
        }
        s
    }
}

impl fmt::Debug for RingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingPresentation({})", self.to_dsl())
    }
}

impl fmt::Display for RingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dsl())
    }
}

impl PartialEq for RingPresentation {
    /// Same field, same variables, same generator list.
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.generators() == other.generators()
    }
}
