//! Simplicial fans, their Cox quotient presentations and surjectivity
//! certificates for maps into the Cox space.

mod snf;

pub use snf::{determinant, hermite_normal_form, identity, mat_mul, smith_normal_form, IntMatrix, SnfResult};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::constructible::{
    group_saturation, image_of_map, ConstructError, ConstructibleSet, GroupAction, ImageConfig, Piece, PolynomialMap,
};
use crate::ideal::{monomial_minimal_primes, Ideal};
use crate::poly::{Monomial, Ring, RingRef};
use crate::scalar::{rat, Rational};
use crate::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToricError {
    #[error("invalid fan: {0}")]
    InvalidFan(FanReport),
    #[error("fan is degenerate: the rays span a sublattice of rank {ray_rank} < {rank}, so the variety has a torus factor")]
    Degenerate { rank: usize, ray_rank: usize },
    #[error("map has {found} components but the Cox space has {expected} coordinates")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("image meets the irrelevant locus{}", witness_suffix(.witness))]
    ImageMeetsIrrelevantLocus { witness: Option<Vec<Rational>> },
    #[error(transparent)]
    Construct(#[from] ConstructError),
}

fn witness_suffix(w: &Option<Vec<Rational>>) -> String {
    match w {
        Some(p) => format!(" at {}", format_point(p)),
        None => String::new(),
    }
}

pub fn format_point(p: &[Rational]) -> String {
    let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// A fan in `Z^rank` given by rays and maximal cones (ray index sets).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    rank: usize,
    rays: Vec<Vec<i64>>,
    max_cones: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FanViolation {
    WrongLength { ray: usize, len: usize },
    ZeroRay { ray: usize },
    NotPrimitive { ray: usize, gcd: i64 },
    DuplicateRay { first: usize, second: usize },
    EmptyCone { cone: usize },
    IndexOutOfRange { cone: usize, index: usize },
    NotSimplicial { cone: usize },
    UncoveredRay { ray: usize },
}

impl fmt::Display for FanViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FanViolation::WrongLength { ray, len } => write!(f, "ray {ray} has {len} entries"),
            FanViolation::ZeroRay { ray } => write!(f, "ray {ray} is zero"),
            FanViolation::NotPrimitive { ray, gcd } => write!(f, "ray {ray} is not primitive (gcd {gcd})"),
            FanViolation::DuplicateRay { first, second } => write!(f, "rays {first} and {second} coincide"),
            FanViolation::EmptyCone { cone } => write!(f, "cone {cone} is empty"),
            FanViolation::IndexOutOfRange { cone, index } => write!(f, "cone {cone} refers to missing ray {index}"),
            FanViolation::NotSimplicial { cone } => write!(f, "rays of cone {cone} are linearly dependent"),
            FanViolation::UncoveredRay { ray } => write!(f, "ray {ray} lies in no maximal cone"),
        }
    }
}

/// Itemized result of [`Fan::validate`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FanReport {
    pub violations: Vec<FanViolation>,
}

impl FanReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for FanReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

fn to_big(m: &[Vec<i64>]) -> IntMatrix<BigInt> {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn rank_of(rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    smith_normal_form(&to_big(rows)).rank()
}

impl Fan {
    /// Builds a fan without validating it; see [`Fan::validate`].
    pub fn new(rank: usize, rays: Vec<Vec<i64>>, max_cones: Vec<Vec<usize>>) -> Self {
        Fan { rank, rays, max_cones }
    }

    /// The fan of `P^n`: rays `e_1, …, e_n, -(e_1 + … + e_n)`.
    pub fn projective_space(n: usize) -> Self {
        let mut rays: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        rays.push(vec![-1; n]);
        let cones = (0..=n).map(|skip| (0..=n).filter(|&i| i != skip).collect()).collect();
        Fan::new(n, rays, cones)
    }

    /// The product fan in `Z^(a+b)`; rays of `self` come first.
    pub fn product(&self, other: &Fan) -> Self {
        let (a, b) = (self.rank, other.rank);
        let mut rays: Vec<Vec<i64>> = self.rays.iter().map(|r| r.iter().copied().chain(std::iter::repeat_n(0, b)).collect()).collect();
        rays.extend(other.rays.iter().map(|r| std::iter::repeat_n(0, a).chain(r.iter().copied()).collect()));
        let off = self.rays.len();
        let mut cones = Vec::new();
        for c in &self.max_cones {
            for d in &other.max_cones {
                cones.push(c.iter().copied().chain(d.iter().map(|&j| j + off)).collect());
            }
        }
        Fan::new(a + b, rays, cones)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    pub fn validate(&self) -> FanReport {
        let mut violations = Vec::new();
        for (i, r) in self.rays.iter().enumerate() {
            if r.len() != self.rank {
                violations.push(FanViolation::WrongLength { ray: i, len: r.len() });
                continue;
            }
            let g = r.iter().fold(0i64, |acc, &x| acc.gcd(&x));
            if g == 0 {
                violations.push(FanViolation::ZeroRay { ray: i });
            } else if g != 1 {
                violations.push(FanViolation::NotPrimitive { ray: i, gcd: g });
            }
            if let Some(j) = self.rays[..i].iter().position(|s| s == r) {
                violations.push(FanViolation::DuplicateRay { first: j, second: i });
            }
        }
        let shapes_ok = self.rays.iter().all(|r| r.len() == self.rank);
        let mut covered = vec![false; self.rays.len()];
        for (c, cone) in self.max_cones.iter().enumerate() {
            if cone.is_empty() {
                violations.push(FanViolation::EmptyCone { cone: c });
                continue;
            }
            let mut ok = true;
            for &i in cone {
                if i >= self.rays.len() {
                    violations.push(FanViolation::IndexOutOfRange { cone: c, index: i });
                    ok = false;
                } else {
                    covered[i] = true;
                }
            }
            if ok && shapes_ok {
                let sub: Vec<Vec<i64>> = cone.iter().map(|&i| self.rays[i].clone()).collect();
                let mut distinct = cone.clone();
                distinct.sort_unstable();
                distinct.dedup();
                if distinct.len() != cone.len() || rank_of(&sub) != cone.len() {
                    violations.push(FanViolation::NotSimplicial { cone: c });
                }
            }
        }
        for (i, hit) in covered.iter().enumerate() {
            if !hit {
                violations.push(FanViolation::UncoveredRay { ray: i });
            }
        }
        FanReport { violations }
    }

    /// Rank of the sublattice spanned by the rays.
    pub fn ray_rank(&self) -> usize {
        rank_of(&self.rays)
    }

    /// The rays fail to span `Q^n`, so the variety splits off a `K^×`
    /// factor and carries a non-constant unit.
    pub fn is_degenerate(&self) -> bool {
        self.ray_rank() < self.rank
    }
}

/// Class of a Cox variable in `Z^s ⊕ ⊕ Z/d_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassDegree {
    pub free: Vec<i64>,
    pub torsion: Vec<i64>,
}

/// Cox presentation `X = (A^r ∖ Z) // H` of a toric variety.
#[derive(Clone, Debug)]
pub struct CoxData {
    ring: RingRef,
    free_rank: usize,
    torsion_orders: Vec<i64>,
    degrees: Vec<ClassDegree>,
    irrelevant: Ideal<Rational>,
    z_components: Vec<Vec<usize>>,
    action: GroupAction,
}

impl CoxData {
    /// Cox coordinates `x1..xr`.
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn ray_count(&self) -> usize {
        self.ring.nvars()
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_orders(&self) -> &[i64] {
        &self.torsion_orders
    }

    pub fn degrees(&self) -> &[ClassDegree] {
        &self.degrees
    }

    /// Irrelevant ideal: one monomial per maximal cone, the product of the
    /// variables whose rays lie outside it.
    pub fn irrelevant_ideal(&self) -> &Ideal<Rational> {
        &self.irrelevant
    }

    /// Coordinate planes making up `Z`, each as the set of vanishing
    /// coordinates.
    pub fn z_components(&self) -> &[Vec<usize>] {
        &self.z_components
    }

    pub fn codim_z(&self) -> usize {
        self.z_components.iter().map(|c| c.len()).min().unwrap_or(usize::MAX)
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn z_set(&self) -> ConstructibleSet {
        let pieces = self
            .z_components
            .iter()
            .map(|c| {
                let gens = c.iter().map(|&i| Poly::var(&self.ring, i)).collect();
                Piece::closed(Ideal::new(&self.ring, gens).expect("same ring"))
            })
            .collect();
        ConstructibleSet::new(&self.ring, pieces).expect("same ring")
    }

    /// `A^r ∖ Z` as the union of the open sets `D(m)` over generators `m` of
    /// the irrelevant ideal.
    pub fn open_set(&self) -> ConstructibleSet {
        let pieces = self.irrelevant.gens().iter().map(|m| Piece::open(m.clone())).collect();
        ConstructibleSet::new(&self.ring, pieces).expect("same ring")
    }
}

/// Class group, degrees and irrelevant locus of a valid, non-degenerate fan.
pub fn cox_presentation(fan: &Fan) -> Result<CoxData, ToricError> {
    let report = fan.validate();
    if !report.is_valid() {
        return Err(ToricError::InvalidFan(report));
    }
    let ray_rank = fan.ray_rank();
    if ray_rank < fan.rank() {
        return Err(ToricError::Degenerate { rank: fan.rank(), ray_rank });
    }
    let r = fan.rays().len();
    // Cl = Z^r / image of the character map m ↦ (⟨m, v_i⟩)_i
    let snf = smith_normal_form(&to_big(fan.rays()));
    let rank = snf.rank();
    let small = |x: &BigInt| x.to_i64().expect("class group entries fit in i64");

    let mut free_rows: Vec<Vec<i64>> = (rank..r).map(|j| snf.u[j].iter().map(small).collect()).collect();
    if !free_rows.is_empty() {
        free_rows = hermite_normal_form(&free_rows);
    }
    let torsion_idx: Vec<usize> = (0..rank).filter(|&j| snf.diagonal[j] > BigInt::from(1)).collect();
    let torsion_orders: Vec<i64> = torsion_idx.iter().map(|&j| small(&snf.diagonal[j])).collect();

    let degrees: Vec<ClassDegree> = (0..r)
        .map(|i| ClassDegree {
            free: free_rows.iter().map(|row| row[i]).collect(),
            torsion: torsion_idx
                .iter()
                .zip(&torsion_orders)
                .map(|(&j, &d)| small(&snf.u[j][i]).rem_euclid(d))
                .collect(),
        })
        .collect();
    check_degree_relations(fan, &degrees, &torsion_orders);

    let ring = Ring::numbered("x", 1, r);
    let mut gens = Vec::with_capacity(fan.max_cones().len());
    for cone in fan.max_cones() {
        let exps: Vec<u32> = (0..r).map(|i| u32::from(!cone.contains(&i))).collect();
        gens.push(Poly::monomial(&ring, Monomial::from_exponents(&exps), rat(1)));
    }
    let irrelevant = Ideal::new(&ring, gens).expect("same ring");
    let z_components = monomial_minimal_primes(&irrelevant).map_err(ConstructError::from)?;
    let codim = z_components.iter().map(|c| c.len()).min().unwrap_or(usize::MAX);
    // every ray spans a cone of the fan, so no single coordinate hyperplane
    // lies in Z
    assert!(codim >= 2, "irrelevant locus has codimension {codim}");

    let free_weights: Vec<Vec<i64>> = degrees.iter().map(|d| d.free.clone()).collect();
    let torsion = torsion_orders
        .iter()
        .enumerate()
        .map(|(k, &d)| (d as u64, degrees.iter().map(|deg| deg.torsion[k]).collect()))
        .collect();
    let action = GroupAction::new(free_weights, torsion)?;
    Ok(CoxData { ring, free_rank: r - rank, torsion_orders, degrees, irrelevant, z_components, action })
}

/// `Σ_i ⟨m, v_i⟩ deg(x_i) = 0` in the class group for every basis character.
fn check_degree_relations(fan: &Fan, degrees: &[ClassDegree], orders: &[i64]) {
    for k in 0..fan.rank() {
        let free_len = degrees.first().map_or(0, |d| d.free.len());
        for c in 0..free_len {
            let s: i64 = fan.rays().iter().zip(degrees).map(|(v, d)| v[k] * d.free[c]).sum();
            assert_eq!(s, 0, "degree relation fails for character {k}");
        }
        for (t, &d) in orders.iter().enumerate() {
            let s: i64 = fan.rays().iter().zip(degrees).map(|(v, deg)| v[k] * deg.torsion[t]).sum();
            assert!(s.rem_euclid(d).is_zero(), "torsion degree relation fails for character {k}");
        }
    }
}

/// Outcome of [`quotient_surjectivity_check`].
#[derive(Clone, Debug)]
pub enum QuotientVerdict {
    /// Every orbit of `A^r ∖ Z` meets the image. `via_saturation` is false
    /// when the image already contains `A^r ∖ Z`.
    Certified { via_saturation: bool },
    /// A rational point of `A^r ∖ Z` whose orbit misses the image.
    NotSurjective { witness: Vec<Rational> },
    /// Part of `A^r ∖ Z` is outside the saturated image but no rational
    /// point of it was found.
    Inconclusive { uncovered: ConstructibleSet },
}

/// Search radius (sum of absolute values) for rational witnesses.
pub const WITNESS_NORM: u32 = 6;

/// Decides whether `φ` followed by the quotient map `A^r ∖ Z → X` is
/// surjective.
pub fn quotient_surjectivity_check(phi: &PolynomialMap, cox: &CoxData, cfg: &ImageConfig) -> Result<QuotientVerdict, ToricError> {
    if phi.target_dim() != cox.ray_count() {
        return Err(ToricError::DimensionMismatch { expected: cox.ray_count(), found: phi.target_dim() });
    }
    let gb = &cfg.groebner;
    let phi = phi.clone().retarget(cox.ring())?;
    let image = image_of_map(&phi, cfg)?;
    let bad = image.intersect(&cox.z_set(), gb)?;
    if !bad.is_empty(gb)? {
        return Err(ToricError::ImageMeetsIrrelevantLocus { witness: bad.find_integer_point(WITNESS_NORM) });
    }
    let open = cox.open_set();
    if open.is_subset(&image, gb)? {
        return Ok(QuotientVerdict::Certified { via_saturation: false });
    }
    let saturated = group_saturation(&image, cox.action(), cfg)?;
    let uncovered = open.difference(&saturated, gb)?;
    if uncovered.is_empty(gb)? {
        return Ok(QuotientVerdict::Certified { via_saturation: true });
    }
    // simplicial fans give geometric quotients, so an orbit outside the
    // saturation is a point of X that is never hit
    match uncovered.find_integer_point(WITNESS_NORM) {
        Some(witness) => Ok(QuotientVerdict::NotSurjective { witness }),
        None => Ok(QuotientVerdict::Inconclusive { uncovered }),
    }
}
