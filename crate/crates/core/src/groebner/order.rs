use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polycore::{Monomial, Polynomial, Scalar};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    #[default]
    Degrevlex,
    Deglex,
}

/// A graded monomial order. `priority[k]` is the variable in position `k`,
/// so `priority = [1, 0]` makes `y > x`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    priority: Option<Vec<usize>>,
}

impl MonomialOrder {
    pub fn degrevlex() -> Self {
        Self::default()
    }

    pub fn deglex() -> Self {
        MonomialOrder { kind: OrderKind::Deglex, priority: None }
    }

    pub fn with_priority(kind: OrderKind, priority: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; priority.len()];
        for &p in &priority {
            if p >= priority.len() || seen[p] {
                return Err(Error::Precondition(format!("{priority:?} is not a permutation")));
            }
            seen[p] = true;
        }
        let identity = priority.iter().enumerate().all(|(i, &p)| i == p);
        Ok(MonomialOrder { kind, priority: if identity { None } else { Some(priority) } })
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    fn exp_at(&self, m: &Monomial, k: usize) -> u32 {
        match &self.priority {
            Some(p) => m.exps()[p[k]],
            None => m.exps()[k],
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        if self.kind == OrderKind::Degrevlex && self.priority.is_none() {
            return a.cmp(b);
        }
        match a.degree().cmp(&b.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let n = a.nvars();
        match self.kind {
            OrderKind::Deglex => {
                for k in 0..n {
                    let (x, y) = (self.exp_at(a, k), self.exp_at(b, k));
                    if x != y {
                        return x.cmp(&y);
                    }
                }
            }
            OrderKind::Degrevlex => {
                for k in (0..n).rev() {
                    let (x, y) = (self.exp_at(a, k), self.exp_at(b, k));
                    if x != y {
                        return y.cmp(&x);
                    }
                }
            }
        }
        Ordering::Equal
    }

    /// The leading term of `p` under this order.
    pub fn leading<'a>(&self, p: &'a Polynomial) -> Option<(&'a Monomial, &'a Scalar)> {
        if self.kind == OrderKind::Degrevlex && self.priority.is_none() {
            return p.leading();
        }
        p.terms().max_by(|x, y| self.cmp(x.0, y.0))
    }

    pub fn leading_monomial(&self, p: &Polynomial) -> Option<Monomial> {
        self.leading(p).map(|(m, _)| m.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deglex_versus_degrevlex() {
        // x*z^2 vs y^3 (both degree 3) separate the two orders
        let a = Monomial::new(vec![1, 0, 2]);
        let b = Monomial::new(vec![0, 3, 0]);
        assert_eq!(MonomialOrder::deglex().cmp(&a, &b), Ordering::Greater);
        assert_eq!(MonomialOrder::degrevlex().cmp(&a, &b), Ordering::Less);
    }

    #[test]
    fn priority_permutes_variables() {
        let o = MonomialOrder::with_priority(OrderKind::Deglex, vec![1, 0]).unwrap();
        assert_eq!(o.cmp(&Monomial::new(vec![0, 1]), &Monomial::new(vec![1, 0])), Ordering::Greater);
        assert!(MonomialOrder::with_priority(OrderKind::Deglex, vec![0, 0]).is_err());
    }
}
