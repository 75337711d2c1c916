//! Local endomorphisms of presented rings: well-definedness, the conormal
//! (linear-part) matrix, contraction, the complete-intersection Koszul-ghost
//! criterion, Frobenius and its pushforward, and singularity classification.

pub mod frobenius;

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polycore::{Monomial, Polynomial, RingPresentation, Scalar};

pub use frobenius::{frobenius_map, frobenius_pushforward, ghost_trivialization_check, kunz_report, FrobeniusPushforward, KunzReport, TrivializationReport};

/// A local ring map given by the images of the source variables.
#[derive(Clone, Debug)]
pub struct RingEndomap {
    source: Arc<RingPresentation>,
    target: Arc<RingPresentation>,
    images: Vec<Polynomial>,
}

impl RingEndomap {
    pub fn source(&self) -> &Arc<RingPresentation> {
        &self.source
    }

    pub fn target(&self) -> &Arc<RingPresentation> {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn is_endomorphism(&self) -> bool {
        Arc::ptr_eq(&self.source, &self.target) || *self.source == *self.target
    }

    /// `self ∘ self ∘ ⋯` (`n` times), for endomorphisms.
    pub fn power(&self, n: u32) -> Result<RingEndomap> {
        if !self.is_endomorphism() || n == 0 {
            return Err(Error::Precondition("powers need an endomorphism and n ≥ 1".into()));
        }
        let mut images = self.images.clone();
        for _ in 1..n {
            images = images.iter().map(|p| p.substitute(&self.images).map(|q| self.target.normal_form(&q))).collect::<Result<_>>()?;
        }
        Ok(RingEndomap { source: self.source.clone(), target: self.target.clone(), images })
    }

    /// `(i, j)` entry: coefficient of `x_i` in the linear part of `φ(x_j)`.
    pub fn conormal_matrix(&self) -> Vec<Vec<Scalar>> {
        let field = self.target.field();
        let n = self.target.nvars();
        let mut m = vec![vec![field.zero(); self.images.len()]; n];
        for (j, img) in self.images.iter().enumerate() {
            for i in 0..n {
                m[i][j] = img.coefficient(&Monomial::var(n, i));
            }
        }
        m
    }

    /// `φ(𝔪) ⊆ 𝔪²`.
    pub fn conormal_zero(&self) -> bool {
        self.conormal_matrix().iter().flatten().all(Scalar::is_zero)
    }

    /// Smallest `j ≤ j_max` with `φ^j(𝔪) ⊆ 𝔪²`, via nilpotency of the
    /// conormal matrix.
    pub fn contracting_exponent(&self, j_max: u32) -> Option<u32> {
        let m = self.conormal_matrix();
        if m.len() != m.first().map_or(0, Vec::len) {
            return None;
        }
        let mut power = m.clone();
        for j in 1..=j_max {
            if power.iter().flatten().all(Scalar::is_zero) {
                return Some(j);
            }
            power = mat_mul(&m, &power);
        }
        None
    }

    /// Remark-style membership test `φ̃(f) ∈ I²` for each ideal generator,
    /// with the lift given by the same variable images. Returns the first
    /// failing generator.
    pub fn lift_sends_ideal_into_square(&self) -> Result<Option<Polynomial>> {
        let ideal = self.target.ideal();
        if ideal.is_zero() {
            return Ok(None);
        }
        let square = ideal.power(2)?;
        for f in self.source.generators() {
            let image = f.substitute(&self.images)?;
            if !square.member(&image)? {
                return Ok(Some(f.clone()));
            }
        }
        Ok(None)
    }
}

fn mat_mul(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let n = a.len();
    let field = a[0][0].field();
    (0..n)
        .map(|i| {
            (0..b[0].len())
                .map(|j| (0..b.len()).fold(field.zero(), |acc, k| &acc + &(&a[i][k] * &b[k][j])))
                .collect()
        })
        .collect()
}

/// Checks locality and well-definedness of the variable images.
pub fn validate_map(images: Vec<Polynomial>, source: &Arc<RingPresentation>, target: &Arc<RingPresentation>) -> Result<RingEndomap> {
    if images.len() != source.nvars() {
        return Err(Error::ArityMismatch { expected: source.nvars(), found: images.len() });
    }
    for (name, img) in source.var_names().iter().zip(&images) {
        if !crate::polycore::same_ring(img.ring(), target.ring()) {
            return Err(Error::ArityMismatch { expected: target.nvars(), found: img.ring().nvars() });
        }
        if !img.constant_term().is_zero() {
            return Err(Error::NotLocal(name.clone()));
        }
    }
    let images: Vec<Polynomial> = images.iter().map(|p| target.normal_form(p)).collect();
    for f in source.generators() {
        let image = f.substitute(&images)?;
        if !target.is_zero(&image) {
            return Err(Error::NotWellDefined { generator: f.to_string(), image: target.normal_form(&image).to_string() });
        }
    }
    Ok(RingEndomap { source: source.clone(), target: target.clone(), images })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Regular,
    CompleteIntersection,
    Other,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Regular => "regular",
            Verdict::CompleteIntersection => "complete_intersection",
            Verdict::Other => "other",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub ring: String,
    pub embdim: usize,
    pub dim: usize,
    pub mu: usize,
    pub verdict: Verdict,
}

impl ClassificationReport {
    /// `μ = embdim - dim`; regular rings qualify with `μ = 0`.
    pub fn is_complete_intersection(&self) -> bool {
        self.mu + self.dim == self.embdim
    }
}

pub fn classify(ring: &RingPresentation) -> ClassificationReport {
    let embdim = ring.nvars();
    let dim = ring.krull_dim();
    let mu = ring.minimal_generator_count();
    let verdict = if mu == 0 {
        Verdict::Regular
    } else if mu + dim == embdim {
        Verdict::CompleteIntersection
    } else {
        Verdict::Other
    };
    ClassificationReport { ring: ring.to_dsl(), embdim, dim, mu, verdict }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum KoszulGhostVerdict {
    True,
    False { failing_generator: String },
    NotApplicable { reason: String },
}

impl KoszulGhostVerdict {
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            KoszulGhostVerdict::True => Some(true),
            KoszulGhostVerdict::False { .. } => Some(false),
            KoszulGhostVerdict::NotApplicable { .. } => None,
        }
    }
}

/// For complete-intersection presentations: whether `φ̃(I) ⊆ I²`.
pub fn ci_koszul_ghost(phi: &RingEndomap) -> Result<KoszulGhostVerdict> {
    let c = classify(phi.source());
    if !c.is_complete_intersection() {
        return Ok(KoszulGhostVerdict::NotApplicable {
            reason: format!(
                "ring is not a complete intersection (mu = {} > embdim - dim = {}); vanishing of the higher relative homology is undecided",
                c.mu,
                c.embdim - c.dim
            ),
        });
    }
    Ok(match phi.lift_sends_ideal_into_square()? {
        None => KoszulGhostVerdict::True,
        Some(f) => KoszulGhostVerdict::False { failing_generator: f.to_string() },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GhostReport {
    pub ring: String,
    pub images: Vec<String>,
    pub conormal_matrix: Vec<Vec<String>>,
    pub conormal_zero: bool,
    /// `not_ghost` when the conormal map is nonzero; `conormal_zero`
    /// otherwise, with higher degrees settled only through `ci_koszul_ghost`.
    pub ghost: String,
    pub contracting: Option<u32>,
    pub classification: ClassificationReport,
    pub complete_intersection: bool,
    /// Set only for complete intersections.
    pub ci_koszul_ghost: Option<bool>,
    pub failing_generator: Option<String>,
    pub higher_degrees: String,
    pub j_max: u32,
}

pub fn ghost_report(phi: &RingEndomap, j_max: u32) -> Result<GhostReport> {
    let classification = classify(phi.source());
    let ci = classification.is_complete_intersection();
    let conormal = phi.conormal_matrix();
    let conormal_zero = phi.conormal_zero();
    let verdict = ci_koszul_ghost(phi)?;
    let failing_generator = match &verdict {
        KoszulGhostVerdict::False { failing_generator } => Some(failing_generator.clone()),
        _ => None,
    };
    let higher_degrees = match &verdict {
        KoszulGhostVerdict::NotApplicable { reason } => format!("undecided: {reason}"),
        _ => "decided by the complete-intersection criterion".into(),
    };
    Ok(GhostReport {
        ring: phi.source().to_dsl(),
        images: phi.images().iter().map(|p| p.to_string()).collect(),
        conormal_matrix: conormal.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect(),
        conormal_zero,
        ghost: if conormal_zero { "conormal_zero".into() } else { "not_ghost".into() },
        contracting: phi.contracting_exponent(j_max),
        complete_intersection: ci,
        ci_koszul_ghost: verdict.as_bool(),
        failing_generator,
        higher_degrees,
        classification,
        j_max,
    })
}
