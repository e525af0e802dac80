use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::ring::{same_ring, Ring, RingRef};
use super::{Monomial, MonomialOrder, PolyError};
use crate::scalar::Field;

/// Sparse multivariate polynomial over a field.
///
/// Terms are kept sorted by decreasing grevlex with no zero coefficients, so
/// structural equality is equality of polynomials.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: RingRef,
    terms: Vec<(Monomial, F)>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, F::one())
    }

    pub fn constant(ring: &RingRef, c: F) -> Self {
        if c.is_zero() {
            return Self::zero(ring);
        }
        Polynomial { ring: ring.clone(), terms: vec![(Monomial::one(ring.nvars()), c)] }
    }

    pub fn int(ring: &RingRef, n: i64) -> Self {
        Self::constant(ring, F::from_int(n))
    }

    pub fn var(ring: &RingRef, index: usize) -> Self {
        assert!(index < ring.nvars(), "variable index out of range");
        Polynomial { ring: ring.clone(), terms: vec![(Monomial::var(ring.nvars(), index, 1), F::one())] }
    }

    pub fn var_named(ring: &RingRef, name: &str) -> Result<Self, PolyError> {
        let i = ring.index_of(name).ok_or_else(|| PolyError::UnknownVariable { name: name.to_string(), pos: 0 })?;
        Ok(Self::var(ring, i))
    }

    pub fn monomial(ring: &RingRef, m: Monomial, c: F) -> Self {
        assert_eq!(m.nvars(), ring.nvars());
        if c.is_zero() {
            return Self::zero(ring);
        }
        Polynomial { ring: ring.clone(), terms: vec![(m, c)] }
    }

    /// Builds a normalized polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, F)>>(ring: &RingRef, terms: I) -> Self {
        let mut acc: HashMap<Monomial, F> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars());
            match acc.get_mut(&m) {
                Some(e) => *e = e.add_ref(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<(Monomial, F)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| MonomialOrder::GrevLex.cmp(&b.0, &a.0));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F)> {
        self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn constant_value(&self) -> Option<F> {
        match self.terms.as_slice() {
            [] => Some(F::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponents()[var]).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(|(m, _)| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Indices of variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.ring.nvars()).filter(|&i| self.terms.iter().any(|(m, _)| m.exponents()[i] > 0)).collect()
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &F)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(&a.0, &b.0))
            .map(|(m, c)| (m, c))
    }

    fn check_ring(&self, other: &Self) -> Result<(), PolyError> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(PolyError::RingMismatch { left: format!("{:?}", self.ring), right: format!("{:?}", other.ring) })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match MonomialOrder::GrevLex.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { b[j].1.neg_ref() } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { a[i].1.sub_ref(&b[j].1) } else { a[i].1.add_ref(&b[j].1) };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), if negate { c.neg_ref() } else { c.clone() })));
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ring);
        }
        let mut acc: HashMap<Monomial, F> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.mul_ref(cb);
                match acc.get_mut(&m) {
                    Some(e) => *e = e.add_ref(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, F)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| MonomialOrder::GrevLex.cmp(&b.0, &a.0));
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul_ref(c))).collect() }
    }

    /// Multiplies by a monomial and a scalar.
    pub fn mul_term(&self, m: &Monomial, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        // multiplication by a monomial preserves the relative order of terms
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.mul_ref(c))).collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ring);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Divides by the leading coefficient under `order`.
    pub fn monic(&self, order: MonomialOrder) -> Self {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }

    pub fn evaluate(&self, point: &[F]) -> Result<F, PolyError> {
        if point.len() != self.ring.nvars() {
            return Err(PolyError::LengthMismatch { expected: self.ring.nvars(), found: point.len() });
        }
        let mut powers: Vec<Vec<F>> = point.iter().map(|v| vec![F::one(), v.clone()]).collect();
        let mut total = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = &mut powers[i];
                while pw.len() <= e as usize {
                    let next = pw.last().unwrap().mul_ref(&point[i]);
                    pw.push(next);
                }
                t = t.mul_ref(&pw[e as usize]);
            }
            total = total.add_ref(&t);
        }
        Ok(total)
    }

    /// Substitutes `images[i]` for variable `i`. All images share one ring,
    /// which becomes the ring of the result.
    pub fn compose(&self, images: &[Polynomial<F>]) -> Result<Self, PolyError> {
        if images.len() != self.ring.nvars() {
            return Err(PolyError::LengthMismatch { expected: self.ring.nvars(), found: images.len() });
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            // a polynomial in zero variables is a constant
            None => return Ok(self.clone()),
        };
        for p in images {
            if !same_ring(&p.ring, &target) {
                return Err(PolyError::RingMismatch { left: format!("{:?}", target), right: format!("{:?}", p.ring) });
            }
        }
        let mut powers: Vec<Vec<Polynomial<F>>> = images.iter().map(|p| vec![Self::one(&target), p.clone()]).collect();
        let mut out = Self::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = &mut powers[i];
                while pw.len() <= e as usize {
                    let next = pw.last().unwrap().mul_unchecked(&images[i]);
                    pw.push(next);
                }
                t = t.mul_unchecked(&pw[e as usize]);
            }
            out = out.merge(&t, false);
        }
        Ok(out)
    }

    /// Substitutes by variable name. Variables without an assignment are
    /// carried over to the same-named variable of the target ring.
    pub fn substitute(&self, assignment: &[(&str, Polynomial<F>)]) -> Result<Self, PolyError> {
        let target = match assignment.first() {
            Some((_, p)) => p.ring.clone(),
            None => return Ok(self.clone()),
        };
        let mut images = Vec::with_capacity(self.ring.nvars());
        for name in self.ring.vars() {
            match assignment.iter().find(|(n, _)| n == name) {
                Some((_, p)) => images.push(p.clone()),
                None => match target.index_of(name) {
                    Some(j) => images.push(Self::var(&target, j)),
                    None => return Err(PolyError::UnassignedVariable(name.clone())),
                },
            }
        }
        for (n, _) in assignment {
            if !self.ring.contains(n) {
                return Err(PolyError::UnknownVariable { name: n.to_string(), pos: 0 });
            }
        }
        self.compose(&images)
    }

    /// Moves the polynomial into `ring`, sending variable `i` to `map[i]`.
    pub fn embed(&self, ring: &RingRef, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.ring.nvars());
        let n = ring.nvars();
        Self::from_terms(
            ring,
            self.terms.iter().map(|(m, c)| {
                let mut out = Monomial::one(n);
                for (i, &e) in m.exponents().iter().enumerate() {
                    out.exps_mut()[map[i]] += e;
                }
                (out, c.clone())
            }),
        )
    }

    /// Reinterprets the polynomial in a ring with the same number of variables.
    pub fn rename_ring(&self, ring: &RingRef) -> Self {
        assert_eq!(ring.nvars(), self.ring.nvars());
        Polynomial { ring: ring.clone(), terms: self.terms.clone() }
    }

    /// Embeds into the ring obtained by dropping variables this polynomial
    /// does not use. Fails if a dropped variable occurs.
    pub fn restrict(&self, ring: &RingRef, map_from_ring: &[usize]) -> Option<Self> {
        // map_from_ring[j] = index in self.ring of ring variable j
        let n = ring.nvars();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = m.exponents();
            let kept: u32 = map_from_ring.iter().map(|&i| e[i]).sum();
            if kept != m.degree() {
                return None;
            }
            let mut out = Monomial::one(n);
            for (j, &i) in map_from_ring.iter().enumerate() {
                out.exps_mut()[j] = e[i];
            }
            terms.push((out, c.clone()));
        }
        Some(Self::from_terms(ring, terms))
    }

    pub fn derivative(&self, var: usize) -> Self {
        Self::from_terms(
            &self.ring,
            self.terms.iter().filter(|(m, _)| m.exponents()[var] > 0).map(|(m, c)| {
                let e = m.exponents()[var];
                let mut d = m.clone();
                d.exps_mut()[var] -= 1;
                (d, c.mul_ref(&F::from_int(e as i64)))
            }),
        )
    }

    /// Homogenizes with a fresh variable appended to the ring.
    pub fn homogenize(&self, new_var: &str) -> Result<Self, PolyError> {
        if self.ring.contains(new_var) {
            return Err(PolyError::NameCollision(new_var.to_string()));
        }
        let ring = self.ring.extend(&[new_var])?;
        let h = ring.nvars() - 1;
        let all: Vec<usize> = (0..h).collect();
        let lifted = self.embed(&ring, &all);
        Ok(lifted.homogenize_in(&all, h))
    }

    /// Homogenizes with respect to the variables in `block` using the
    /// existing variable `hvar`, which must not occur in `self`.
    pub fn homogenize_in(&self, block: &[usize], hvar: usize) -> Self {
        let bdeg = |m: &Monomial| block.iter().map(|&i| m.exponents()[i]).sum::<u32>();
        let d = self.terms.iter().map(|(m, _)| bdeg(m)).max().unwrap_or(0);
        Self::from_terms(
            &self.ring,
            self.terms.iter().map(|(m, c)| {
                let mut out = m.clone();
                out.exps_mut()[hvar] += d - bdeg(m);
                (out, c.clone())
            }),
        )
    }

    /// Sets `var` to 1 and removes it from the ring.
    pub fn dehomogenize(&self, var: &str) -> Result<Self, PolyError> {
        let idx = self
            .ring
            .index_of(var)
            .ok_or_else(|| PolyError::UnknownVariable { name: var.to_string(), pos: 0 })?;
        let names: Vec<&String> = self.ring.vars().iter().filter(|v| *v != var).collect();
        let ring = Ring::new(&names)?;
        let n = ring.nvars();
        Ok(Self::from_terms(
            &ring,
            self.terms.iter().map(|(m, c)| {
                let e: Vec<u32> = m.exponents().iter().enumerate().filter(|(i, _)| *i != idx).map(|(_, &e)| e).collect();
                debug_assert_eq!(e.len(), n);
                (Monomial::from_exponents(&e), c.clone())
            }),
        ))
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative_hint();
            let abs = if neg { c.neg_ref() } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mut factors = Vec::new();
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.vars()[i].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.vars()[i], e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {:?}", self, self.ring)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a, F: Field> $tr<&'a Polynomial<F>> for &'a Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
                self.$checked(rhs).expect("polynomials from different rings")
            }
        }
        impl<F: Field> $tr<Polynomial<F>> for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: Polynomial<F>) -> Polynomial<F> {
                (&self).$method(&rhs)
            }
        }
        impl<'a, F: Field> $tr<&'a Polynomial<F>> for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg_ref())).collect() }
    }
}

impl<F: Field> Neg for Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        -&self
    }
}
