//! Images of polynomial maps as constructible sets.
//!
//! Each domain piece is turned into a closed affine variety `X` with a
//! Rabinowitsch variable. With `Y` the closure of `f(X)`, the engine looks
//! for a closed `E ⊊ Y` of smaller dimension such that `Y ∖ E ⊆ f(X)`, emits
//! `Y ∖ E` and recurses on `X ∩ f⁻¹(E)`.
//!
//! `E` comes from properness: cut `X` by `k` random affine hyperplanes, take
//! the closure of the sliced graph in `P^M × A^n`, and project its part at
//! infinity to `R_k`. Every point of `Y_k ∖ R_k` has a preimage, where `Y_k`
//! is the closure of the sliced image. Points of `Y` outside `Y_k` are
//! handled by `Z_k = closure(Y ∖ Y_k)`, so `E = ⋂_k (R_k ∪ Z_k)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ConstructError, ConstructibleSet, Piece, PolynomialMap};
use crate::ideal::{groebner_basis_of, GroebnerConfig, Ideal};
use crate::poly::{MonomialOrder, Ring, RingRef};
use crate::scalar::{rat, Rational};
use crate::Poly;

#[derive(Clone, Debug)]
pub struct ImageConfig {
    pub seed: u64,
    /// Rounds of fresh random slices before giving up.
    pub max_retries: usize,
    pub groebner: GroebnerConfig,
}

impl Default for ImageConfig {
    fn default() -> Self {
        ImageConfig { seed: 0, max_retries: 8, groebner: GroebnerConfig::default() }
    }
}

/// Slice coefficients are drawn from `[-SLICE_RANGE, SLICE_RANGE]`.
const SLICE_RANGE: i64 = 100;

/// The image of `phi` over the algebraic closure, exactly.
pub fn image_of_map(phi: &PolynomialMap, cfg: &ImageConfig) -> Result<ConstructibleSet, ConstructError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    image_with_rng(phi, cfg, &mut rng)?.pruned(&cfg.groebner)
}

fn image_with_rng(phi: &PolynomialMap, cfg: &ImageConfig, rng: &mut ChaCha8Rng) -> Result<ConstructibleSet, ConstructError> {
    let gb = &cfg.groebner;
    let target = phi.target().clone();
    if phi.is_total() {
        let blocks = independent_blocks(phi);
        if blocks.len() > 1 {
            return product_of_blocks(phi, &blocks, cfg, rng);
        }
    }
    let mut out = Vec::new();
    for piece in phi.domain().pieces() {
        if piece.is_empty(gb)? {
            continue;
        }
        let (j, f) = affine_model(piece, phi.components())?;
        image_closed(&j, &f, &target, cfg, rng, None, &mut out)?;
    }
    ConstructibleSet::new(&target, out)
}

/// Groups components that share source variables. Each block lists its
/// source variables and component indices.
fn independent_blocks(phi: &PolynomialMap) -> Vec<(Vec<usize>, Vec<usize>)> {
    let supports: Vec<Vec<usize>> = phi.components().iter().map(|c| c.support()).collect();
    let n = supports.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for a in 0..n {
        for b in a + 1..n {
            if supports[a].iter().any(|v| supports[b].contains(v)) {
                let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut blocks: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let mut roots: Vec<usize> = Vec::new();
    for c in 0..n {
        let r = root(&mut parent, c);
        let slot = match roots.iter().position(|&x| x == r) {
            Some(s) => s,
            None => {
                roots.push(r);
                blocks.push((Vec::new(), Vec::new()));
                roots.len() - 1
            }
        };
        blocks[slot].1.push(c);
        for &v in &supports[c] {
            if !blocks[slot].0.contains(&v) {
                blocks[slot].0.push(v);
            }
        }
    }
    for b in &mut blocks {
        b.0.sort_unstable();
    }
    blocks
}

fn product_of_blocks(
    phi: &PolynomialMap,
    blocks: &[(Vec<usize>, Vec<usize>)],
    cfg: &ImageConfig,
    rng: &mut ChaCha8Rng,
) -> Result<ConstructibleSet, ConstructError> {
    let mut acc: Option<(ConstructibleSet, Vec<usize>)> = None;
    for (vars, comps) in blocks {
        let img = if vars.is_empty() {
            let ring = Ring::numbered("y", 1, comps.len());
            let pt: Vec<Rational> = comps.iter().map(|&c| phi.components()[c].constant_value().unwrap()).collect();
            ConstructibleSet::point(&ring, &pt)?
        } else {
            let names: Vec<&String> = vars.iter().map(|&v| &phi.source().vars()[v]).collect();
            let src = Ring::new(&names)?;
            let parts = comps
                .iter()
                .map(|&c| phi.components()[c].restrict(&src, vars).expect("block holds the support"))
                .collect();
            image_with_rng(&PolynomialMap::new(&src, parts)?, cfg, rng)?
        };
        acc = Some(match acc {
            None => (img, comps.clone()),
            Some((set, coords)) => {
                let ring = Ring::numbered("y", 1, coords.len() + comps.len());
                let left: Vec<usize> = (0..coords.len()).collect();
                let right: Vec<usize> = (coords.len()..coords.len() + comps.len()).collect();
                let mut all = coords;
                all.extend(comps);
                (set.product_into(&img, &ring, &left, &right)?, all)
            }
        });
    }
    let (set, coords) = acc.expect("a map has at least one component");
    let target = phi.target();
    let pieces = set.pieces().iter().map(|p| p.embed(target, &coords)).collect();
    ConstructibleSet::new(target, pieces)
}

/// A closed model of a piece: `V(I, u*g - 1)` with the components unchanged.
fn affine_model(piece: &Piece, comps: &[Poly]) -> Result<(Ideal<Rational>, Vec<Poly>), ConstructError> {
    if piece.is_closed() {
        return Ok((piece.equations().clone(), comps.to_vec()));
    }
    let src = piece.ring();
    let ext = src.extend(&[src.fresh_name("u")])?;
    let map: Vec<usize> = (0..src.nvars()).collect();
    let mut gens: Vec<Poly> = piece.equations().gens().iter().map(|g| g.embed(&ext, &map)).collect();
    gens.push(&Poly::var(&ext, src.nvars()) * &piece.inequation().embed(&ext, &map) - Poly::one(&ext));
    let comps = comps.iter().map(|c| c.embed(&ext, &map)).collect();
    Ok((Ideal::new(&ext, gens)?, comps))
}

/// Ring `z1..zm, t1..tn` used for graphs.
fn graph_ring(m: usize, n: usize) -> RingRef {
    let mut names: Vec<String> = (1..=m).map(|i| format!("z{i}")).collect();
    names.extend((1..=n).map(|i| format!("t{i}")));
    Ring::new(&names).expect("generated names are valid")
}

fn image_closed(
    j: &Ideal<Rational>,
    f: &[Poly],
    target: &RingRef,
    cfg: &ImageConfig,
    rng: &mut ChaCha8Rng,
    bound: Option<i64>,
    out: &mut Vec<Piece>,
) -> Result<(), ConstructError> {
    let gb = &cfg.groebner;
    if j.is_unit(gb)? {
        return Ok(());
    }
    if let Some(pt) = f.iter().map(|c| c.constant_value()).collect::<Option<Vec<Rational>>>() {
        let point = ConstructibleSet::point(target, &pt)?;
        out.extend(point.pieces().iter().cloned());
        return Ok(());
    }
    let y = image_closure(j, f, target, gb)?;
    let dy = y.dimension(gb)?;
    if let Some(b) = bound {
        assert!(dy < b, "image recursion must lower the dimension ({dy} >= {b})");
    }
    if dy <= 0 {
        // a dense constructible subset of a finite set is the whole set
        out.push(Piece::closed(y));
        return Ok(());
    }
    let ds = j.dimension(gb)?;
    let e = boundary_locus(j, f, &y, dy, ds, target, cfg, rng)?.reduced(gb)?;
    if e.is_unit(gb)? {
        out.push(Piece::closed(y));
        return Ok(());
    }
    for g in e.gens() {
        out.push(Piece::new(y.clone(), g.clone())?);
    }
    let pulled = e.gens().iter().map(|g| g.compose(f)).collect::<Result<Vec<_>, _>>()?;
    let rest = j.with_generators(pulled)?;
    image_closed(&rest, f, target, cfg, rng, Some(dy), out)
}

/// Ideal of the closure of `f(V(j))`, by eliminating the graph.
fn image_closure(j: &Ideal<Rational>, f: &[Poly], target: &RingRef, gb: &GroebnerConfig) -> Result<Ideal<Rational>, ConstructError> {
    let m = j.ring().nvars();
    let ring = graph_ring(m, f.len());
    let map: Vec<usize> = (0..m).collect();
    let mut gens: Vec<Poly> = j.gens().iter().map(|g| g.embed(&ring, &map)).collect();
    for (i, fi) in f.iter().enumerate() {
        gens.push(Poly::var(&ring, m + i) - fi.embed(&ring, &map));
    }
    let drop: Vec<usize> = (0..m).collect();
    Ok(Ideal::new(&ring, gens)?.eliminate(&drop, gb)?.rename_ring(target))
}

#[allow(clippy::too_many_arguments)]
fn boundary_locus(
    j: &Ideal<Rational>,
    f: &[Poly],
    y: &Ideal<Rational>,
    dy: i64,
    ds: i64,
    target: &RingRef,
    cfg: &ImageConfig,
    rng: &mut ChaCha8Rng,
) -> Result<Ideal<Rational>, ConstructError> {
    let gb = &cfg.groebner;
    let kmax = (ds - dy).max(0) as usize;
    let mut e = y.clone();
    let mut attempts = 0;
    for round in 0..cfg.max_retries.max(1) {
        for k in (0..=kmax).rev() {
            // the unsliced computation is deterministic
            if k == 0 && round > 0 {
                continue;
            }
            attempts += 1;
            let (yk, rk) = slice_and_boundary(j, f, k, target, gb, rng)?;
            let mut term = rk;
            if !covers(&yk, y, gb)? {
                let rest = residual(y, &yk, gb)?;
                term = if term.is_unit(gb)? { rest } else { term.intersect(&rest, gb)? };
            }
            e = e.sum(&term)?;
            if e.dimension(gb)? < dy {
                return Ok(e);
            }
        }
    }
    Err(ConstructError::RetriesExhausted { attempts })
}

/// `V(yk) ⊇ V(y)`.
fn covers(yk: &Ideal<Rational>, y: &Ideal<Rational>, gb: &GroebnerConfig) -> Result<bool, ConstructError> {
    for h in yk.gens() {
        if !y.radical_contains(h, gb)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Ideal of `closure(V(y) ∖ V(yk))`.
fn residual(y: &Ideal<Rational>, yk: &Ideal<Rational>, gb: &GroebnerConfig) -> Result<Ideal<Rational>, ConstructError> {
    let mut acc: Option<Ideal<Rational>> = None;
    for h in yk.gens() {
        let s = y.saturate(h, gb)?;
        acc = Some(match acc {
            None => s,
            Some(a) => a.intersect(&s, gb)?,
        });
    }
    Ok(acc.unwrap_or_else(|| Ideal::unit(y.ring())))
}

/// Slices `V(j)` with `k` random affine hyperplanes and returns the closure
/// of the sliced image together with the projection of its boundary at
/// infinity.
fn slice_and_boundary(
    j: &Ideal<Rational>,
    f: &[Poly],
    k: usize,
    target: &RingRef,
    gb: &GroebnerConfig,
    rng: &mut ChaCha8Rng,
) -> Result<(Ideal<Rational>, Ideal<Rational>), ConstructError> {
    let n = j.ring().nvars();
    let m = n - k;
    let nt = f.len();
    let ring = graph_ring(m, nt);
    // the slice is the graph of a random affine map A^m → A^k
    let mut images: Vec<Poly> = (0..m).map(|i| Poly::var(&ring, i)).collect();
    for _ in 0..k {
        let mut p = Poly::int(&ring, rng.gen_range(-SLICE_RANGE..=SLICE_RANGE));
        for i in 0..m {
            p = p + Poly::var(&ring, i).scale(&rat(rng.gen_range(-SLICE_RANGE..=SLICE_RANGE)));
        }
        images.push(p);
    }
    let mut gens = j.gens().iter().map(|g| g.compose(&images)).collect::<Result<Vec<_>, _>>()?;
    for (i, fi) in f.iter().enumerate() {
        gens.push(Poly::var(&ring, m + i) - fi.compose(&images)?);
    }
    let basis = groebner_basis_of(&ring, &gens, MonomialOrder::Elimination(m), gb)?;
    let keep: Vec<usize> = (m..m + nt).collect();
    let yk_gens = basis.elements().iter().filter_map(|g| g.restrict(target, &keep)).collect();
    let yk = Ideal::new(target, yk_gens)?;
    if m == 0 {
        return Ok((yk, Ideal::unit(target)));
    }
    // the order refines z-degree, so homogenizing the basis in z gives the
    // projective closure; its part at infinity is cut out by the top z-forms
    let tops: Vec<Poly> = basis.elements().iter().map(|g| top_form(g, m)).collect();
    let drop: Vec<usize> = (0..m).collect();
    let mut r: Option<Ideal<Rational>> = None;
    for i in 0..m {
        let mut chart: Vec<Poly> = (0..m + nt).map(|v| Poly::var(&ring, v)).collect();
        chart[i] = Poly::one(&ring);
        let gens = tops.iter().map(|t| t.compose(&chart)).collect::<Result<Vec<_>, _>>()?;
        let ri = Ideal::new(&ring, gens)?.eliminate(&drop, gb)?.rename_ring(target);
        if ri.is_unit(gb)? {
            continue;
        }
        r = Some(match r {
            None => ri,
            Some(a) => a.intersect(&ri, gb)?,
        });
    }
    Ok((yk, r.unwrap_or_else(|| Ideal::unit(target))))
}

/// Sum of the terms of maximal degree in the first `m` variables.
fn top_form(g: &Poly, m: usize) -> Poly {
    let zdeg = |e: &[u32]| e[..m].iter().sum::<u32>();
    let d = g.terms().iter().map(|(mo, _)| zdeg(mo.exponents())).max().unwrap_or(0);
    Poly::from_terms(g.ring(), g.terms().iter().filter(|(mo, _)| zdeg(mo.exponents()) == d).cloned())
}
