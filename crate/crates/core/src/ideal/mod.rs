//! Ideals and the Gröbner-basis primitives built on them: elimination,
//! saturation, radical membership, intersection and dimension.

mod groebner;
mod monomial;

pub use groebner::{groebner_basis_of, verified_basis_count, GroebnerBasis, GroebnerConfig};
pub use monomial::{min_transversal_size, minimal_transversals, monomial_minimal_primes};

use thiserror::Error;

use crate::poly::{ring_eq, MonomialOrder, PolyError, Polynomial, Ring, RingRef};
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("resource cap exceeded: {what} (limit {limit})")]
    ResourceCap { what: &'static str, limit: usize },
    #[error("Gröbner basis failed the S-pair check")]
    VerificationFailed,
    #[error("generator {index} is not a monomial")]
    NotMonomial { index: usize },
    #[error("generator {index} is not squarefree")]
    NotSquarefree { index: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A finitely generated ideal. The zero ideal has no generators.
#[derive(Clone, Debug)]
pub struct Ideal<F: Field> {
    ring: RingRef,
    gens: Vec<Polynomial<F>>,
}

impl<F: Field> Ideal<F> {
    pub fn new(ring: &RingRef, gens: Vec<Polynomial<F>>) -> Result<Self, IdealError> {
        for g in &gens {
            if !ring_eq(g.ring(), ring) {
                return Err(PolyError::RingMismatch { left: format!("{:?}", ring), right: format!("{:?}", g.ring()) }.into());
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring: ring.clone(), gens })
    }

    pub fn zero(ring: &RingRef) -> Self {
        Ideal { ring: ring.clone(), gens: Vec::new() }
    }

    pub fn unit(ring: &RingRef) -> Self {
        Ideal { ring: ring.clone(), gens: vec![Polynomial::one(ring)] }
    }

    pub fn principal(p: Polynomial<F>) -> Self {
        let ring = p.ring().clone();
        Ideal::new(&ring, vec![p]).unwrap()
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn groebner_basis(&self, order: MonomialOrder, cfg: &GroebnerConfig) -> Result<GroebnerBasis<F>, IdealError> {
        groebner_basis_of(&self.ring, &self.gens, order, cfg)
    }

    /// Sum with another ideal of the same ring.
    pub fn sum(&self, other: &Ideal<F>) -> Result<Self, IdealError> {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn with_generators(&self, extra: impl IntoIterator<Item = Polynomial<F>>) -> Result<Self, IdealError> {
        let mut gens = self.gens.clone();
        gens.extend(extra);
        Ideal::new(&self.ring, gens)
    }

    /// Replaces the generators by the reduced grevlex basis.
    pub fn reduced(&self, cfg: &GroebnerConfig) -> Result<Self, IdealError> {
        let gb = self.groebner_basis(MonomialOrder::GrevLex, cfg)?;
        Ok(Ideal { ring: self.ring.clone(), gens: gb.elements().to_vec() })
    }

    pub fn contains(&self, p: &Polynomial<F>, cfg: &GroebnerConfig) -> Result<bool, IdealError> {
        self.groebner_basis(MonomialOrder::GrevLex, cfg)?.contains(p)
    }

    pub fn is_unit(&self, cfg: &GroebnerConfig) -> Result<bool, IdealError> {
        if self.gens.iter().any(|g| g.constant_value().is_some_and(|c| !c.is_zero())) {
            return Ok(true);
        }
        Ok(self.groebner_basis(MonomialOrder::GrevLex, cfg)?.is_unit())
    }

    pub fn is_proper(&self, cfg: &GroebnerConfig) -> Result<bool, IdealError> {
        Ok(!self.is_unit(cfg)?)
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal<F>, cfg: &GroebnerConfig) -> Result<bool, IdealError> {
        let gb = self.groebner_basis(MonomialOrder::GrevLex, cfg)?;
        for g in &other.gens {
            if !gb.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_ideal(&self, other: &Ideal<F>, cfg: &GroebnerConfig) -> Result<bool, IdealError> {
        let a = self.groebner_basis(MonomialOrder::GrevLex, cfg)?;
        let b = other.groebner_basis(MonomialOrder::GrevLex, cfg)?;
        Ok(a == b)
    }

    /// Generators of the ideal intersected with the subring of the variables
    /// not in `drop`. The result lives in that subring, variables in their
    /// original order.
    pub fn eliminate(&self, drop: &[usize], cfg: &GroebnerConfig) -> Result<Self, IdealError> {
        let keep: Vec<usize> = (0..self.ring.nvars()).filter(|i| !drop.contains(i)).collect();
        let names: Vec<&String> = keep.iter().map(|&i| &self.ring.vars()[i]).collect();
        let sub = Ring::new(&names)?;
        let gens = self.elimination_gens(drop, cfg)?;
        let gens = gens.iter().map(|g| g.restrict(&sub, &keep).expect("eliminated variable survived")).collect();
        Ideal::new(&sub, gens)
    }

    pub fn eliminate_names(&self, drop: &[&str], cfg: &GroebnerConfig) -> Result<Self, IdealError> {
        let mut idx = Vec::with_capacity(drop.len());
        for name in drop {
            let i = self
                .ring
                .index_of(name)
                .ok_or_else(|| PolyError::UnknownVariable { name: name.to_string(), pos: 0 })?;
            idx.push(i);
        }
        self.eliminate(&idx, cfg)
    }

    /// Like [`Ideal::eliminate`] but the result stays in this ring.
    pub fn eliminate_in_place(&self, drop: &[usize], cfg: &GroebnerConfig) -> Result<Self, IdealError> {
        let gens = self.elimination_gens(drop, cfg)?;
        Ideal::new(&self.ring, gens)
    }

    fn elimination_gens(&self, drop: &[usize], cfg: &GroebnerConfig) -> Result<Vec<Polynomial<F>>, IdealError> {
        let n = self.ring.nvars();
        if drop.is_empty() {
            return Ok(self.reduced(cfg)?.gens);
        }
        // dropped variables first, then the rest in order
        let mut perm: Vec<usize> = drop.to_vec();
        perm.extend((0..n).filter(|i| !drop.contains(i)));
        let mut to_new = vec![0; n];
        for (new, &old) in perm.iter().enumerate() {
            to_new[old] = new;
        }
        let names: Vec<&String> = perm.iter().map(|&i| &self.ring.vars()[i]).collect();
        let tmp = Ring::new(&names)?;
        let moved: Vec<Polynomial<F>> = self.gens.iter().map(|g| g.embed(&tmp, &to_new)).collect();
        let gb = groebner_basis_of(&tmp, &moved, MonomialOrder::Elimination(drop.len()), cfg)?;
        let k = drop.len();
        Ok(gb
            .elements()
            .iter()
            .filter(|g| g.support().iter().all(|&i| i >= k))
            .map(|g| g.embed(&self.ring, &perm))
            .collect())
    }

    /// `I : g^∞`, computed by adjoining `u`, adding `u*g - 1` and
    /// eliminating `u`.
    pub fn saturate(&self, g: &Polynomial<F>, cfg: &GroebnerConfig) -> Result<Self, IdealError> {
        if !ring_eq(g.ring(), &self.ring) {
            return Err(PolyError::RingMismatch { left: format!("{:?}", self.ring), right: format!("{:?}", g.ring()) }.into());
        }
        if let Some(c) = g.constant_value() {
            if !c.is_zero() {
                return Ok(self.clone());
            }
            // I : 0^∞ is the unit ideal
            return Ok(Ideal::unit(&self.ring));
        }
        let (ext, u) = self.extended_ring("u")?;
        let map: Vec<usize> = (0..self.ring.nvars()).collect();
        let mut gens: Vec<Polynomial<F>> = self.gens.iter().map(|p| p.embed(&ext, &map)).collect();
        gens.push(&Polynomial::var(&ext, u) * &g.embed(&ext, &map) - Polynomial::one(&ext));
        let gens = Ideal::new(&ext, gens)?.elimination_gens(&[u], cfg)?;
        let keep: Vec<usize> = (0..self.ring.nvars()).collect();
        let gens = gens.iter().map(|p| p.restrict(&self.ring, &keep).unwrap()).collect();
        Ideal::new(&self.ring, gens)
    }

    /// Whether `p` vanishes on `V(I)` over the algebraic closure, i.e.
    /// `1 ∈ I + (1 - t*p)`.
    pub fn radical_contains(&self, p: &Polynomial<F>, cfg: &GroebnerConfig) -> Result<bool, IdealError> {
        if p.is_zero() {
            return Ok(true);
        }
        if let Some(c) = p.constant_value() {
            // a nonzero constant vanishes exactly on the empty set
            debug_assert!(!c.is_zero());
            return self.is_unit(cfg);
        }
        let (ext, t) = self.extended_ring("t")?;
        let map: Vec<usize> = (0..self.ring.nvars()).collect();
        let mut gens: Vec<Polynomial<F>> = self.gens.iter().map(|g| g.embed(&ext, &map)).collect();
        gens.push(Polynomial::one(&ext) - &Polynomial::var(&ext, t) * &p.embed(&ext, &map));
        Ideal::new(&ext, gens)?.is_unit(cfg)
    }

    /// `I ∩ J` via `t*I + (1-t)*J` with `t` eliminated.
    pub fn intersect(&self, other: &Ideal<F>, cfg: &GroebnerConfig) -> Result<Self, IdealError> {
        if self.gens.is_empty() || other.gens.is_empty() {
            return Ok(Ideal::zero(&self.ring));
        }
        if self.is_unit(cfg)? {
            return Ok(other.clone());
        }
        if other.is_unit(cfg)? {
            return Ok(self.clone());
        }
        let (ext, t) = self.extended_ring("t")?;
        let map: Vec<usize> = (0..self.ring.nvars()).collect();
        let tv = Polynomial::var(&ext, t);
        let one_minus = Polynomial::one(&ext) - &tv;
        let mut gens: Vec<Polynomial<F>> = self.gens.iter().map(|g| &tv * &g.embed(&ext, &map)).collect();
        gens.extend(other.gens.iter().map(|g| &one_minus * &g.embed(&ext, &map)));
        let gens = Ideal::new(&ext, gens)?.elimination_gens(&[t], cfg)?;
        let gens = gens.iter().map(|p| p.restrict(&self.ring, &map).unwrap()).collect();
        Ideal::new(&self.ring, gens)
    }

    /// Krull dimension of `V(I)`; `-1` for the unit ideal.
    pub fn dimension(&self, cfg: &GroebnerConfig) -> Result<i64, IdealError> {
        let n = self.ring.nvars();
        if self.gens.is_empty() {
            return Ok(n as i64);
        }
        let gb = self.groebner_basis(MonomialOrder::GrevLex, cfg)?;
        if gb.is_unit() {
            return Ok(-1);
        }
        assert!(n <= 64, "dimension supports at most 64 variables");
        let supports: Vec<u64> = gb.leading_monomials().iter().map(|m| m.support_mask()).collect();
        Ok(n as i64 - min_transversal_size(&supports) as i64)
    }

    /// Moves the ideal into a ring with a fresh variable appended.
    fn extended_ring(&self, stem: &str) -> Result<(RingRef, usize), IdealError> {
        let name = self.ring.fresh_name(stem);
        let ext = self.ring.extend(&[name])?;
        Ok((ext, self.ring.nvars()))
    }

    /// Substitutes `images` (one per variable) into every generator.
    pub fn pullback(&self, images: &[Polynomial<F>]) -> Result<Ideal<F>, IdealError> {
        let ring = images.first().map(|p| p.ring().clone()).unwrap_or_else(|| self.ring.clone());
        let gens = self.gens.iter().map(|g| g.compose(images)).collect::<Result<Vec<_>, _>>()?;
        Ideal::new(&ring, gens)
    }

    pub fn embed(&self, ring: &RingRef, map: &[usize]) -> Ideal<F> {
        Ideal { ring: ring.clone(), gens: self.gens.iter().map(|g| g.embed(ring, map)).collect() }
    }

    pub fn rename_ring(&self, ring: &RingRef) -> Ideal<F> {
        Ideal { ring: ring.clone(), gens: self.gens.iter().map(|g| g.rename_ring(ring)).collect() }
    }

    /// Every generator vanishes at `point`.
    pub fn vanishes_at(&self, point: &[F]) -> Result<bool, PolyError> {
        for g in &self.gens {
            if !g.evaluate(point)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl<F: Field> std::fmt::Display for Ideal<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "(0)");
        }
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests;
