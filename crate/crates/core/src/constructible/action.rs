use super::{image_of_map, ConstructError, ConstructibleSet, ImageConfig, Piece, PolynomialMap};
use crate::poly::Ring;
use crate::scalar::Rational;
use crate::Poly;

/// A diagonal action of `(K^×)^s × ∏ μ_{d_j}` on `A^r`: coordinate `i` is
/// scaled by `∏ λ_k^{free[i][k]} · ∏ ζ_j^{w_j[i]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    free_weights: Vec<Vec<i64>>,
    torsion: Vec<(u64, Vec<i64>)>,
    rank: usize,
}

impl GroupAction {
    /// `free_weights` has one row per coordinate and one column per torus
    /// factor; each torsion entry is an order `d ≥ 2` and a weight per
    /// coordinate.
    pub fn new(free_weights: Vec<Vec<i64>>, torsion: Vec<(u64, Vec<i64>)>) -> Result<Self, ConstructError> {
        let r = free_weights.len();
        let s = free_weights.first().map_or(0, |row| row.len());
        if free_weights.iter().any(|row| row.len() != s) {
            return Err(ConstructError::InvalidAction("ragged weight matrix".into()));
        }
        for (d, w) in &torsion {
            if *d < 2 {
                return Err(ConstructError::InvalidAction(format!("torsion order {d} < 2")));
            }
            if w.len() != r {
                return Err(ConstructError::InvalidAction(format!("torsion weight has {} entries, expected {r}", w.len())));
            }
        }
        Ok(GroupAction { free_weights, torsion, rank: s })
    }

    pub fn coordinates(&self) -> usize {
        self.free_weights.len()
    }

    pub fn free_rank(&self) -> usize {
        self.rank
    }

    pub fn free_weights(&self) -> &[Vec<i64>] {
        &self.free_weights
    }

    pub fn torsion(&self) -> &[(u64, Vec<i64>)] {
        &self.torsion
    }

    /// Applies the group element with torus coordinates `lambda` and torsion
    /// coordinates `zeta` (each a `d_j`-th root of unity) to `point`.
    pub fn act(&self, lambda: &[Rational], zeta: &[Rational], point: &[Rational]) -> Vec<Rational> {
        point
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let mut v = x.clone();
                for (k, l) in lambda.iter().enumerate() {
                    v *= num_traits::pow::Pow::pow(l, self.free_weights[i][k] as i32);
                }
                for (j, z) in zeta.iter().enumerate() {
                    let (d, w) = &self.torsion[j];
                    v *= num_traits::pow::Pow::pow(z, w[i].rem_euclid(*d as i64) as i32);
                }
                v
            })
            .collect()
    }
}

/// The orbit saturation `H · S`: the image of `(x, λ, λ', ζ) ↦ x · λ^w ζ^v`
/// over `S × {λ_k λ'_k = 1, ζ_j^{d_j} = 1}`.
pub fn group_saturation(set: &ConstructibleSet, action: &GroupAction, cfg: &ImageConfig) -> Result<ConstructibleSet, ConstructError> {
    let r = set.nvars();
    if action.coordinates() != r {
        return Err(ConstructError::AmbientMismatch { left: action.coordinates(), right: r });
    }
    let s = action.free_rank();
    let q = action.torsion().len();
    let mut names: Vec<String> = (1..=r).map(|i| format!("x{i}")).collect();
    names.extend((1..=s).map(|k| format!("l{k}")));
    names.extend((1..=s).map(|k| format!("m{k}")));
    names.extend((1..=q).map(|j| format!("w{j}")));
    let ring = Ring::new(&names)?;
    let lam = |k: usize| Poly::var(&ring, r + k);
    let inv = |k: usize| Poly::var(&ring, r + s + k);
    let zeta = |j: usize| Poly::var(&ring, r + 2 * s + j);

    let mut group_eqs = Vec::with_capacity(s + q);
    for k in 0..s {
        group_eqs.push(&lam(k) * &inv(k) - Poly::one(&ring));
    }
    for (j, (d, _)) in action.torsion().iter().enumerate() {
        group_eqs.push(zeta(j).pow(*d as u32) - Poly::one(&ring));
    }

    let mut comps = Vec::with_capacity(r);
    for i in 0..r {
        let mut c = Poly::var(&ring, i);
        for k in 0..s {
            let w = action.free_weights()[i][k];
            let base = if w >= 0 { lam(k) } else { inv(k) };
            c = &c * &base.pow(w.unsigned_abs() as u32);
        }
        for (j, (d, w)) in action.torsion().iter().enumerate() {
            c = &c * &zeta(j).pow(w[i].rem_euclid(*d as i64) as u32);
        }
        comps.push(c);
    }

    let into: Vec<usize> = (0..r).collect();
    let mut domain = Vec::with_capacity(set.pieces().len());
    for p in set.pieces() {
        let lifted = p.embed(&ring, &into);
        let eqs = lifted.equations().with_generators(group_eqs.iter().cloned())?;
        domain.push(Piece::new(eqs, lifted.inequation().clone())?);
    }
    if domain.is_empty() {
        return Ok(ConstructibleSet::empty(set.ring()));
    }
    let domain = ConstructibleSet::new(&ring, domain)?;
    let phi = PolynomialMap::with_target(&ring, comps, set.ring())?.with_domain(domain)?;
    image_of_map(&phi, cfg)
}
