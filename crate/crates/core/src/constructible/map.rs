use std::fmt;

use super::{ConstructError, ConstructibleSet};
use crate::ideal::{GroebnerConfig, Ideal};
use crate::poly::{ring_eq, PolyError, Ring, RingRef};
use crate::scalar::Rational;
use crate::Poly;

/// A polynomial map `A^m ⊇ domain → A^n`.
#[derive(Clone, Debug)]
pub struct PolynomialMap {
    components: Vec<Poly>,
    target: RingRef,
    domain: ConstructibleSet,
}

impl PolynomialMap {
    /// Map defined on all of the source space. Target coordinates are named
    /// `y1..yn`.
    pub fn new(source: &RingRef, components: Vec<Poly>) -> Result<Self, ConstructError> {
        let target = Ring::numbered("y", 1, components.len());
        Self::with_target(source, components, &target)
    }

    pub fn with_target(source: &RingRef, components: Vec<Poly>, target: &RingRef) -> Result<Self, ConstructError> {
        if components.is_empty() {
            return Err(ConstructError::EmptyMap);
        }
        for c in &components {
            if !ring_eq(c.ring(), source) {
                return Err(PolyError::RingMismatch { left: format!("{source:?}"), right: format!("{:?}", c.ring()) }.into());
            }
        }
        if target.nvars() != components.len() {
            return Err(ConstructError::AmbientMismatch { left: components.len(), right: target.nvars() });
        }
        Ok(PolynomialMap { components, target: target.clone(), domain: ConstructibleSet::whole(source) })
    }

    /// Restricts the map to a constructible subset of the source.
    pub fn with_domain(mut self, domain: ConstructibleSet) -> Result<Self, ConstructError> {
        if domain.nvars() != self.source().nvars() {
            return Err(ConstructError::AmbientMismatch { left: self.source().nvars(), right: domain.nvars() });
        }
        self.domain = ConstructibleSet::new(self.source(), domain.pieces().to_vec())?;
        Ok(self)
    }

    pub fn source(&self) -> &RingRef {
        self.domain.ring()
    }

    pub fn target(&self) -> &RingRef {
        &self.target
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn domain(&self) -> &ConstructibleSet {
        &self.domain
    }

    pub fn source_dim(&self) -> usize {
        self.source().nvars()
    }

    pub fn target_dim(&self) -> usize {
        self.target.nvars()
    }

    /// Whether the domain is the whole source space.
    pub fn is_total(&self) -> bool {
        matches!(self.domain.pieces(), [p] if p.is_closed() && p.equations().is_zero_ideal())
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Vec<Rational>, PolyError> {
        self.components.iter().map(|c| c.evaluate(point)).collect()
    }

    /// `self ∘ inner`: substitutes the components of `inner` for the source
    /// variables. The result is defined on `inner`'s domain.
    pub fn compose(&self, inner: &PolynomialMap) -> Result<PolynomialMap, ConstructError> {
        if inner.target_dim() != self.source_dim() {
            return Err(ConstructError::AmbientMismatch { left: self.source_dim(), right: inner.target_dim() });
        }
        let components = self.components.iter().map(|c| c.compose(&inner.components)).collect::<Result<Vec<_>, _>>()?;
        PolynomialMap::with_target(inner.source(), components, &self.target)?.with_domain(inner.domain.clone())
    }

    /// Renames the target coordinates.
    pub fn retarget(mut self, target: &RingRef) -> Result<Self, ConstructError> {
        if target.nvars() != self.target_dim() {
            return Err(ConstructError::AmbientMismatch { left: self.target_dim(), right: target.nvars() });
        }
        self.target = target.clone();
        Ok(self)
    }
}

impl fmt::Display for PolynomialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "({}) ↦ ({})", self.source().vars().join(", "), parts.join(", "))
    }
}

/// Whether `q` lies in the image: the fiber ideal over `q`, restricted to
/// some domain piece, is proper.
pub fn fiber_membership_oracle(phi: &PolynomialMap, q: &[Rational], cfg: &GroebnerConfig) -> Result<bool, ConstructError> {
    if q.len() != phi.target_dim() {
        return Err(PolyError::LengthMismatch { expected: phi.target_dim(), found: q.len() }.into());
    }
    let src = phi.source();
    let u = src.fresh_name("u");
    let ext = src.extend(&[u])?;
    let map: Vec<usize> = (0..src.nvars()).collect();
    let uvar = Poly::var(&ext, src.nvars());
    for piece in phi.domain().pieces() {
        let mut gens: Vec<Poly> = piece.equations().gens().iter().map(|g| g.embed(&ext, &map)).collect();
        for (f, v) in phi.components().iter().zip(q) {
            gens.push(f.embed(&ext, &map) - Poly::constant(&ext, v.clone()));
        }
        if !piece.is_closed() {
            gens.push(&uvar * &piece.inequation().embed(&ext, &map) - Poly::one(&ext));
        }
        if Ideal::new(&ext, gens)?.is_proper(cfg)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Points among `points` where membership in `image` disagrees with
/// [`fiber_membership_oracle`].
pub fn oracle_disagreements(
    phi: &PolynomialMap,
    image: &ConstructibleSet,
    points: &[Vec<Rational>],
    cfg: &GroebnerConfig,
) -> Result<Vec<Vec<Rational>>, ConstructError> {
    let mut out = Vec::new();
    for q in points {
        if image.contains(q)? != fiber_membership_oracle(phi, q, cfg)? {
            out.push(q.clone());
        }
    }
    Ok(out)
}
