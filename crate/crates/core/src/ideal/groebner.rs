//! Buchberger's algorithm with the Gebauer–Möller pair update (product and
//! chain criteria) and sugar-degree pair selection.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use super::IdealError;
use crate::poly::{Monomial, MonomialOrder, Polynomial, RingRef};
use crate::scalar::Field;

static VERIFIED_BASES: AtomicU64 = AtomicU64::new(0);

/// Number of bases that passed the S-pair check because `verify` was set.
pub fn verified_basis_count() -> u64 {
    VERIFIED_BASES.load(AtomicOrdering::Relaxed)
}

/// Resource limits for a single Gröbner computation. Exceeding one is a hard
/// error, never a truncated basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerConfig {
    /// Maximum number of S-pairs reduced.
    pub max_pairs: usize,
    /// Maximum total degree of a basis element.
    pub max_degree: u32,
    /// Re-check the Buchberger criterion on every returned basis.
    pub verify: bool,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig { max_pairs: 200_000, max_degree: 256, verify: false }
    }
}

/// Terms sorted increasingly under the active order; the leading term is last.
type OrdTerms<F> = Vec<(Monomial, F)>;

/// A reduced Gröbner basis: monic, auto-reduced, sorted by leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ring: RingRef,
    order: MonomialOrder,
    elements: Vec<Polynomial<F>>,
    ordered: Vec<OrdTerms<F>>,
}

impl<F: Field> PartialEq for GroebnerBasis<F> {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.elements == other.elements
    }
}

impl<F: Field> GroebnerBasis<F> {
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn elements(&self) -> &[Polynomial<F>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The basis is `{1}`, i.e. the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_one()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.ordered.iter().map(|t| t.last().unwrap().0.clone()).collect()
    }

    /// Remainder of multivariate division by the basis.
    pub fn normal_form(&self, p: &Polynomial<F>) -> Result<Polynomial<F>, IdealError> {
        if !crate::poly::ring_eq(p.ring(), &self.ring) {
            return Err(IdealError::Poly(crate::PolyError::RingMismatch {
                left: format!("{:?}", p.ring()),
                right: format!("{:?}", self.ring),
            }));
        }
        let reducers: Vec<&OrdTerms<F>> = self.ordered.iter().collect();
        let masks: Vec<u64> = self.ordered.iter().map(|t| t.last().unwrap().0.support_mask()).collect();
        let r = reduce_full(to_ordered(p, self.order), &reducers, &masks, self.order);
        Ok(Polynomial::from_terms(&self.ring, r))
    }

    pub fn contains(&self, p: &Polynomial<F>) -> Result<bool, IdealError> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Checks that every S-polynomial of basis pairs reduces to zero.
    pub fn verify_buchberger(&self) -> bool {
        let reducers: Vec<&OrdTerms<F>> = self.ordered.iter().collect();
        let masks: Vec<u64> = self.ordered.iter().map(|t| t.last().unwrap().0.support_mask()).collect();
        for i in 0..self.ordered.len() {
            for j in i + 1..self.ordered.len() {
                let s = s_polynomial(&self.ordered[i], &self.ordered[j], self.order);
                if !reduce_full(s, &reducers, &masks, self.order).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

pub(crate) fn to_ordered<F: Field>(p: &Polynomial<F>, order: MonomialOrder) -> OrdTerms<F> {
    let mut t: OrdTerms<F> = p.terms().to_vec();
    if order != MonomialOrder::GrevLex {
        t.sort_by(|a, b| order.cmp(&a.0, &b.0));
    } else {
        t.reverse();
    }
    t
}

fn make_monic<F: Field>(mut t: OrdTerms<F>) -> OrdTerms<F> {
    if let Some((_, lc)) = t.last() {
        if !lc.is_one() {
            let inv = lc.inv();
            for (_, c) in t.iter_mut() {
                *c = c.mul_ref(&inv);
            }
        }
    }
    t
}

/// `p - c * m * g` where the leading terms cancel. Both inputs ascending.
fn sub_multiple<F: Field>(p: &OrdTerms<F>, g: &OrdTerms<F>, m: &Monomial, c: &F, order: MonomialOrder) -> OrdTerms<F> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let (mut i, mut j) = (0, 0);
    // skip leading terms, they cancel
    let (pl, gl) = (p.len() - 1, g.len() - 1);
    let mut shifted: Option<Monomial> = None;
    while i < pl || j < gl {
        if j < gl && shifted.is_none() {
            shifted = Some(g[j].0.mul(m));
        }
        let ord = match (i < pl, j < gl) {
            (true, true) => order.cmp(&p[i].0, shifted.as_ref().unwrap()),
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            (false, false) => unreachable!(),
        };
        match ord {
            Ordering::Less => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push((shifted.take().unwrap(), g[j].1.mul_ref(c).neg_ref()));
                j += 1;
            }
            Ordering::Equal => {
                let v = p[i].1.sub_ref(&g[j].1.mul_ref(c));
                let mono = shifted.take().unwrap();
                if !v.is_zero() {
                    out.push((mono, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn find_reducer<F: Field>(m: &Monomial, reducers: &[&OrdTerms<F>], masks: &[u64]) -> Option<usize> {
    let mm = m.support_mask();
    (0..reducers.len()).find(|&k| masks[k] & !mm == 0 && reducers[k].last().unwrap().0.divides(m))
}

/// Full reduction; reducers must be monic.
fn reduce_full<F: Field>(mut p: OrdTerms<F>, reducers: &[&OrdTerms<F>], masks: &[u64], order: MonomialOrder) -> OrdTerms<F> {
    let mut rem: Vec<(Monomial, F)> = Vec::new();
    while let Some((m, c)) = p.last() {
        match find_reducer(m, reducers, masks) {
            Some(k) => {
                let g = reducers[k];
                let q = g.last().unwrap().0.quotient_of(m).unwrap();
                let c = c.clone();
                p = sub_multiple(&p, g, &q, &c, order);
            }
            None => rem.push(p.pop().unwrap()),
        }
    }
    rem.reverse();
    rem
}

fn s_polynomial<F: Field>(f: &OrdTerms<F>, g: &OrdTerms<F>, order: MonomialOrder) -> OrdTerms<F> {
    // both monic
    let (lf, lg) = (&f.last().unwrap().0, &g.last().unwrap().0);
    let l = lf.lcm(lg);
    let qf = lf.quotient_of(&l).unwrap();
    let qg = lg.quotient_of(&l).unwrap();
    let fq: OrdTerms<F> = f.iter().map(|(m, c)| (m.mul(&qf), c.clone())).collect();
    sub_multiple(&fq, g, &qg, &F::one(), order)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Buchberger<'c, F: Field> {
    order: MonomialOrder,
    cfg: &'c GroebnerConfig,
    polys: Vec<OrdTerms<F>>,
    sugar: Vec<u32>,
    lms: Vec<Monomial>,
    masks: Vec<u64>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    reduced_pairs: usize,
}

impl<'c, F: Field> Buchberger<'c, F> {
    fn reducers(&self) -> (Vec<&OrdTerms<F>>, Vec<u64>) {
        let mut r = Vec::new();
        let mut m = Vec::new();
        for k in 0..self.polys.len() {
            if self.active[k] {
                r.push(&self.polys[k]);
                m.push(self.masks[k]);
            }
        }
        (r, m)
    }

    fn reduce(&self, p: OrdTerms<F>) -> OrdTerms<F> {
        let (r, m) = self.reducers();
        reduce_full(p, &r, &m, self.order)
    }

    /// Returns true when the new element is a nonzero constant.
    fn insert(&mut self, h: OrdTerms<F>, sugar: u32) -> Result<bool, IdealError> {
        let h = make_monic(h);
        let lm = h.last().unwrap().0.clone();
        if lm.is_one() {
            return Ok(true);
        }
        let deg = h.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
        if deg > self.cfg.max_degree {
            return Err(IdealError::ResourceCap { what: "basis element degree", limit: self.cfg.max_degree as usize });
        }
        let hk = self.polys.len();

        // Gebauer–Möller update
        let mut candidates: Vec<(usize, Monomial)> =
            (0..hk).filter(|&g| self.active[g]).map(|g| (g, self.lms[g].lcm(&lm))).collect();
        let mut accepted: Vec<(usize, Monomial)> = Vec::new();
        while !candidates.is_empty() {
            let (g1, l1) = candidates.remove(0);
            let coprime = self.lms[g1].is_coprime(&lm);
            let dominated = candidates.iter().chain(accepted.iter()).any(|(_, l2)| l2.divides(&l1));
            if coprime || !dominated {
                accepted.push((g1, l1));
            }
        }
        let lms = &self.lms;
        self.pairs.retain(|p| {
            !(lm.divides(&p.lcm) && lms[p.i].lcm(&lm) != p.lcm && lms[p.j].lcm(&lm) != p.lcm)
        });
        for (g, l) in accepted {
            if self.lms[g].is_coprime(&lm) {
                continue;
            }
            let s = (self.sugar[g] + l.degree() - self.lms[g].degree()).max(sugar + l.degree() - lm.degree());
            self.pairs.push(Pair { i: g, j: hk, lcm: l, sugar: s });
        }
        for g in 0..hk {
            if self.active[g] && lm.divides(&self.lms[g]) {
                self.active[g] = false;
            }
        }
        self.masks.push(lm.support_mask());
        self.lms.push(lm);
        self.polys.push(h);
        self.sugar.push(sugar);
        self.active.push(true);
        Ok(false)
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let order = self.order;
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (p, q) = (&self.pairs[a], &self.pairs[b]);
            p.sugar
                .cmp(&q.sugar)
                .then_with(|| order.cmp(&p.lcm, &q.lcm))
                .then_with(|| (p.i, p.j).cmp(&(q.i, q.j)))
        })?;
        Some(self.pairs.swap_remove(best))
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn groebner_basis_of<F: Field>(
    ring: &RingRef,
    gens: &[Polynomial<F>],
    order: MonomialOrder,
    cfg: &GroebnerConfig,
) -> Result<GroebnerBasis<F>, IdealError> {
    let mut inputs: Vec<OrdTerms<F>> =
        gens.iter().filter(|g| !g.is_zero()).map(|g| make_monic(to_ordered(g, order))).collect();
    inputs.sort_by(|a, b| order.cmp(&a.last().unwrap().0, &b.last().unwrap().0));

    let unit = || {
        if cfg.verify {
            VERIFIED_BASES.fetch_add(1, AtomicOrdering::Relaxed);
        }
        let one = Polynomial::one(ring);
        let ordered = vec![to_ordered(&one, order)];
        GroebnerBasis { ring: ring.clone(), order, elements: vec![one], ordered }
    };

    let mut bb = Buchberger {
        order,
        cfg,
        polys: Vec::new(),
        sugar: Vec::new(),
        lms: Vec::new(),
        masks: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        reduced_pairs: 0,
    };
    for f in inputs {
        let sugar = f.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
        let r = bb.reduce(f);
        if r.is_empty() {
            continue;
        }
        if bb.insert(r, sugar)? {
            return Ok(unit());
        }
    }
    while let Some(pair) = bb.next_pair() {
        bb.reduced_pairs += 1;
        if bb.reduced_pairs > cfg.max_pairs {
            return Err(IdealError::ResourceCap { what: "S-pairs", limit: cfg.max_pairs });
        }
        let s = s_polynomial(&bb.polys[pair.i], &bb.polys[pair.j], order);
        let r = bb.reduce(s);
        if r.is_empty() {
            continue;
        }
        if bb.insert(r, pair.sugar)? {
            return Ok(unit());
        }
    }

    // inter-reduce the minimal basis
    let mut minimal: Vec<OrdTerms<F>> =
        (0..bb.polys.len()).filter(|&k| bb.active[k]).map(|k| bb.polys[k].clone()).collect();
    minimal.sort_by(|a, b| order.cmp(&a.last().unwrap().0, &b.last().unwrap().0));
    let mut reduced: Vec<OrdTerms<F>> = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&OrdTerms<F>> = minimal.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, t)| t).collect();
        let masks: Vec<u64> = others.iter().map(|t| t.last().unwrap().0.support_mask()).collect();
        reduced.push(reduce_full(minimal[k].clone(), &others, &masks, order));
    }
    let elements = reduced.iter().map(|t| Polynomial::from_terms(ring, t.iter().cloned())).collect();
    let gb = GroebnerBasis { ring: ring.clone(), order, elements, ordered: reduced };
    if cfg.verify {
        if !gb.verify_buchberger() {
            return Err(IdealError::VerificationFailed);
        }
        VERIFIED_BASES.fetch_add(1, AtomicOrdering::Relaxed);
    }
    Ok(gb)
}

impl<F: Field> GroebnerBasis<F> {
    /// Division with cofactors: `p = Σ q_i * g_i + r` with `r` the normal form.
    pub fn divide(&self, p: &Polynomial<F>) -> (Vec<Polynomial<F>>, Polynomial<F>) {
        let order = self.order;
        let reducers: Vec<&OrdTerms<F>> = self.ordered.iter().collect();
        let masks: Vec<u64> = self.ordered.iter().map(|t| t.last().unwrap().0.support_mask()).collect();
        let mut quotients: Vec<Vec<(Monomial, F)>> = vec![Vec::new(); self.ordered.len()];
        let mut rem = Vec::new();
        let mut cur = to_ordered(p, order);
        while let Some((m, c)) = cur.last() {
            match find_reducer(m, &reducers, &masks) {
                Some(k) => {
                    let g = reducers[k];
                    let q = g.last().unwrap().0.quotient_of(m).unwrap();
                    let c = c.clone();
                    cur = sub_multiple(&cur, g, &q, &c, order);
                    quotients[k].push((q, c));
                }
                None => rem.push(cur.pop().unwrap()),
            }
        }
        let qs = quotients.into_iter().map(|q| Polynomial::from_terms(&self.ring, q)).collect();
        (qs, Polynomial::from_terms(&self.ring, rem))
    }
}
