//! Constructible sets: finite unions of locally closed pieces `V(I) ∖ V(g)`,
//! with exact boolean operations, emptiness and containment, plus the image
//! engine for polynomial maps.

mod action;
mod image;
mod map;
mod sample;

pub use action::{group_saturation, GroupAction};
pub use image::{image_of_map, ImageConfig};
pub use map::{fiber_membership_oracle, oracle_disagreements, PolynomialMap};
pub use sample::{grid_points, random_rational_points};

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::ideal::{GroebnerConfig, Ideal, IdealError};
use crate::poly::{PolyError, RingRef};
use crate::scalar::Rational;
use crate::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("ambient mismatch: {left} vs {right} coordinates")]
    AmbientMismatch { left: usize, right: usize },
    #[error("randomized slicing did not reduce the dimension after {attempts} attempts")]
    RetriesExhausted { attempts: usize },
    #[error("map has no components")]
    EmptyMap,
    #[error("invalid group action: {0}")]
    InvalidAction(String),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `V(equations) ∖ V(inequation)`. An inequation of 1 makes the piece closed.
#[derive(Clone, Debug)]
pub struct Piece {
    equations: Ideal<Rational>,
    inequation: Poly,
}

impl Piece {
    pub fn new(equations: Ideal<Rational>, inequation: Poly) -> Result<Self, ConstructError> {
        if !crate::poly::ring_eq(equations.ring(), inequation.ring()) {
            return Err(PolyError::RingMismatch {
                left: format!("{:?}", equations.ring()),
                right: format!("{:?}", inequation.ring()),
            }
            .into());
        }
        Ok(Piece { equations, inequation })
    }

    pub fn closed(equations: Ideal<Rational>) -> Self {
        let one = Poly::one(equations.ring());
        Piece { equations, inequation: one }
    }

    /// The open set `A^n ∖ V(g)`.
    pub fn open(g: Poly) -> Self {
        Piece { equations: Ideal::zero(g.ring()), inequation: g }
    }

    pub fn ring(&self) -> &RingRef {
        self.equations.ring()
    }

    pub fn equations(&self) -> &Ideal<Rational> {
        &self.equations
    }

    pub fn inequation(&self) -> &Poly {
        &self.inequation
    }

    pub fn is_closed(&self) -> bool {
        self.inequation.constant_value().is_some_and(|c| !c.is_zero())
    }

    pub fn contains(&self, point: &[Rational]) -> Result<bool, PolyError> {
        Ok(self.equations.vanishes_at(point)? && !self.inequation.evaluate(point)?.is_zero())
    }

    /// Empty over the algebraic closure, i.e. `g ∈ rad(I)`.
    pub fn is_empty(&self, cfg: &GroebnerConfig) -> Result<bool, ConstructError> {
        if self.inequation.is_zero() {
            return Ok(true);
        }
        if self.equations.is_zero_ideal() {
            return Ok(false);
        }
        Ok(self.equations.radical_contains(&self.inequation, cfg)?)
    }

    /// `self ∩ other`: equations add, inequations multiply.
    pub fn intersect(&self, other: &Piece) -> Result<Piece, ConstructError> {
        let other = other.rename_ring(self.ring());
        Ok(Piece {
            equations: self.equations.sum(&other.equations)?,
            inequation: &self.inequation * &other.inequation,
        })
    }

    pub fn rename_ring(&self, ring: &RingRef) -> Piece {
        Piece { equations: self.equations.rename_ring(ring), inequation: self.inequation.rename_ring(ring) }
    }

    pub fn embed(&self, ring: &RingRef, map: &[usize]) -> Piece {
        Piece { equations: self.equations.embed(ring, map), inequation: self.inequation.embed(ring, map) }
    }

    /// The closure of the piece, `I : g^∞`.
    pub fn closure(&self, cfg: &GroebnerConfig) -> Result<Ideal<Rational>, ConstructError> {
        Ok(self.equations.saturate(&self.inequation, cfg)?)
    }
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_closed() {
            write!(f, "V{}", self.equations)
        } else {
            write!(f, "V{} \\ V({})", self.equations, self.inequation)
        }
    }
}

/// A finite union of pieces in a fixed ambient affine space.
#[derive(Clone, Debug)]
pub struct ConstructibleSet {
    ring: RingRef,
    pieces: Vec<Piece>,
}

impl ConstructibleSet {
    pub fn new(ring: &RingRef, pieces: Vec<Piece>) -> Result<Self, ConstructError> {
        for p in &pieces {
            if p.ring().nvars() != ring.nvars() {
                return Err(ConstructError::AmbientMismatch { left: ring.nvars(), right: p.ring().nvars() });
            }
        }
        let pieces = pieces.into_iter().map(|p| p.rename_ring(ring)).collect();
        Ok(ConstructibleSet { ring: ring.clone(), pieces })
    }

    pub fn empty(ring: &RingRef) -> Self {
        ConstructibleSet { ring: ring.clone(), pieces: Vec::new() }
    }

    pub fn whole(ring: &RingRef) -> Self {
        ConstructibleSet { ring: ring.clone(), pieces: vec![Piece::closed(Ideal::zero(ring))] }
    }

    pub fn closed(ideal: Ideal<Rational>) -> Self {
        ConstructibleSet { ring: ideal.ring().clone(), pieces: vec![Piece::closed(ideal)] }
    }

    pub fn point(ring: &RingRef, coords: &[Rational]) -> Result<Self, ConstructError> {
        if coords.len() != ring.nvars() {
            return Err(PolyError::LengthMismatch { expected: ring.nvars(), found: coords.len() }.into());
        }
        let gens = coords
            .iter()
            .enumerate()
            .map(|(i, c)| Poly::var(ring, i) - Poly::constant(ring, c.clone()))
            .collect();
        Ok(Self::closed(Ideal::new(ring, gens)?))
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    fn check_ambient(&self, other: &ConstructibleSet) -> Result<(), ConstructError> {
        if self.nvars() != other.nvars() {
            return Err(ConstructError::AmbientMismatch { left: self.nvars(), right: other.nvars() });
        }
        Ok(())
    }

    pub fn contains(&self, point: &[Rational]) -> Result<bool, PolyError> {
        if point.len() != self.nvars() {
            return Err(PolyError::LengthMismatch { expected: self.nvars(), found: point.len() });
        }
        for p in &self.pieces {
            if p.contains(point)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn union(&self, other: &ConstructibleSet) -> Result<Self, ConstructError> {
        self.check_ambient(other)?;
        let mut pieces = self.pieces.clone();
        pieces.extend(other.pieces.iter().map(|p| p.rename_ring(&self.ring)));
        Ok(ConstructibleSet { ring: self.ring.clone(), pieces })
    }

    pub fn intersect(&self, other: &ConstructibleSet, cfg: &GroebnerConfig) -> Result<Self, ConstructError> {
        self.check_ambient(other)?;
        let mut pieces = Vec::new();
        for a in &self.pieces {
            for b in &other.pieces {
                let c = a.intersect(b)?;
                if !c.is_empty(cfg)? {
                    pieces.push(c);
                }
            }
        }
        Ok(ConstructibleSet { ring: self.ring.clone(), pieces })
    }

    pub fn difference(&self, other: &ConstructibleSet, cfg: &GroebnerConfig) -> Result<Self, ConstructError> {
        self.check_ambient(other)?;
        let subtrahend: Vec<Piece> = other.pieces.iter().map(|p| p.rename_ring(&self.ring)).collect();
        let mut out = Vec::new();
        for p in &self.pieces {
            if !p.is_empty(cfg)? {
                subtract(p.clone(), &subtrahend, cfg, &mut out, false)?;
            }
        }
        Ok(ConstructibleSet { ring: self.ring.clone(), pieces: out })
    }

    pub fn complement(&self, cfg: &GroebnerConfig) -> Result<Self, ConstructError> {
        Self::whole(&self.ring).difference(self, cfg)
    }

    pub fn is_empty(&self, cfg: &GroebnerConfig) -> Result<bool, ConstructError> {
        for p in &self.pieces {
            if !p.is_empty(cfg)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Drops pieces that are empty over the algebraic closure.
    pub fn pruned(&self, cfg: &GroebnerConfig) -> Result<Self, ConstructError> {
        let mut pieces = Vec::new();
        for p in &self.pieces {
            if !p.is_empty(cfg)? {
                pieces.push(p.clone());
            }
        }
        Ok(ConstructibleSet { ring: self.ring.clone(), pieces })
    }

    pub fn is_subset(&self, other: &ConstructibleSet, cfg: &GroebnerConfig) -> Result<bool, ConstructError> {
        Ok(self.uncovered_piece(other, cfg)?.is_none())
    }

    /// A nonempty piece of `self ∖ other`, if any.
    pub fn uncovered_piece(&self, other: &ConstructibleSet, cfg: &GroebnerConfig) -> Result<Option<Piece>, ConstructError> {
        self.check_ambient(other)?;
        let subtrahend: Vec<Piece> = other.pieces.iter().map(|p| p.rename_ring(&self.ring)).collect();
        for p in &self.pieces {
            if p.is_empty(cfg)? {
                continue;
            }
            let mut out = Vec::new();
            subtract(p.clone(), &subtrahend, cfg, &mut out, true)?;
            if let Some(w) = out.pop() {
                return Ok(Some(w));
            }
        }
        Ok(None)
    }

    pub fn same_set(&self, other: &ConstructibleSet, cfg: &GroebnerConfig) -> Result<bool, ConstructError> {
        Ok(self.is_subset(other, cfg)? && other.is_subset(self, cfg)?)
    }

    /// Ideal of the Zariski closure. The empty set gives the unit ideal.
    pub fn closure(&self, cfg: &GroebnerConfig) -> Result<Ideal<Rational>, ConstructError> {
        let mut acc: Option<Ideal<Rational>> = None;
        for p in &self.pieces {
            let c = p.closure(cfg)?;
            if c.is_unit(cfg)? {
                continue;
            }
            acc = Some(match acc {
                None => c,
                Some(a) => a.intersect(&c, cfg)?,
            });
        }
        Ok(acc.unwrap_or_else(|| Ideal::unit(&self.ring)))
    }

    /// Cartesian product placed into `ring`: coordinates of `self` go to
    /// `left_map`, those of `other` to `right_map`.
    pub fn product_into(
        &self,
        other: &ConstructibleSet,
        ring: &RingRef,
        left_map: &[usize],
        right_map: &[usize],
    ) -> Result<Self, ConstructError> {
        let mut pieces = Vec::new();
        for a in &self.pieces {
            let a = a.embed(ring, left_map);
            for b in &other.pieces {
                pieces.push(a.intersect(&b.embed(ring, right_map))?);
            }
        }
        Ok(ConstructibleSet { ring: ring.clone(), pieces })
    }

    /// Cartesian product in the ring with both coordinate lists, renamed
    /// `v1..v(n+m)`.
    pub fn product(&self, other: &ConstructibleSet) -> Result<Self, ConstructError> {
        let (n, m) = (self.nvars(), other.nvars());
        let ring = crate::poly::Ring::numbered("v", 1, n + m);
        let left: Vec<usize> = (0..n).collect();
        let right: Vec<usize> = (n..n + m).collect();
        self.product_into(other, &ring, &left, &right)
    }

    /// First rational point of `self` on the integer grid, in the order of
    /// [`grid_points`], with coordinates of absolute sum at most `max_norm`.
    pub fn find_integer_point(&self, max_norm: u32) -> Option<Vec<Rational>> {
        if self.pieces.is_empty() {
            return None;
        }
        grid_points(self.nvars(), max_norm).find(|p| self.contains(p).unwrap_or(false))
    }
}

impl fmt::Display for ConstructibleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self.pieces.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(" ∪ "))
    }
}

/// Pushes the nonempty pieces of `p ∖ (t_0 ∪ t_1 ∪ …)` onto `out`. The
/// complement of `V(I) ∖ V(g)` is `⋃_{f ∈ I} D(f) ∪ V(I + g)`.
fn subtract(
    p: Piece,
    t: &[Piece],
    cfg: &GroebnerConfig,
    out: &mut Vec<Piece>,
    first_only: bool,
) -> Result<(), ConstructError> {
    let Some((q, rest)) = t.split_first() else {
        out.push(p);
        return Ok(());
    };
    // disjoint pieces pass through untouched
    if p.intersect(q)?.is_empty(cfg)? {
        return subtract(p, rest, cfg, out, first_only);
    }
    let mut parts = Vec::new();
    for f in q.equations.gens() {
        parts.push(Piece { equations: p.equations.clone(), inequation: &p.inequation * f });
    }
    if !q.is_closed() {
        parts.push(Piece {
            equations: p.equations.with_generators([q.inequation.clone()])?,
            inequation: p.inequation.clone(),
        });
    }
    for part in parts {
        if part.is_empty(cfg)? {
            continue;
        }
        subtract(part, rest, cfg, out, first_only)?;
        if first_only && !out.is_empty() {
            return Ok(());
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests;
