use super::*;
use crate::poly::{parse_polynomial, Ring};
use crate::scalar::{frac, rat, Rational};
use crate::Poly;
use num_rational::Ratio;
use proptest::prelude::*;

fn ring(vars: &[&str]) -> RingRef {
    Ring::new(vars).unwrap()
}

fn p(text: &str, r: &RingRef) -> Poly {
    parse_polynomial(text, r).unwrap()
}

fn ideal(gens: &[&str], r: &RingRef) -> Ideal<Rational> {
    Ideal::new(r, gens.iter().map(|g| p(g, r)).collect()).unwrap()
}

fn cfg() -> GroebnerConfig {
    GroebnerConfig { verify: true, ..Default::default() }
}

#[test]
fn basis_of_coordinate_ideal() {
    let r = ring(&["x", "y"]);
    let gb = ideal(&["x", "y"], &r).groebner_basis(MonomialOrder::Lex, &cfg()).unwrap();
    assert_eq!(gb.elements(), &[p("y", &r), p("x", &r)]);
}

#[test]
fn circle_meets_diagonal() {
    let r = ring(&["x", "y"]);
    let gb = ideal(&["x^2+y^2-1", "x-y"], &r).groebner_basis(MonomialOrder::Lex, &cfg()).unwrap();
    // eliminating x by hand: 2y^2 - 1
    assert!(gb.contains(&p("2*y^2-1", &r)).unwrap());
    assert_eq!(gb.elements(), &[p("y^2-1/2", &r), p("x-y", &r)]);
    assert!(gb.verify_buchberger());
}

#[test]
fn principal_basis_is_itself() {
    let r = ring(&["x", "y"]);
    let gb = ideal(&["1+x*y"], &r).groebner_basis(MonomialOrder::GrevLex, &cfg()).unwrap();
    assert_eq!(gb.elements(), &[p("x*y+1", &r)]);
    let gb = ideal(&["3+3*x*y"], &r).groebner_basis(MonomialOrder::Lex, &cfg()).unwrap();
    assert_eq!(gb.elements(), &[p("x*y+1", &r)]);
}

#[test]
fn unit_and_zero_ideals() {
    let r = ring(&["x", "y"]);
    let gb = ideal(&["x", "x-1"], &r).groebner_basis(MonomialOrder::GrevLex, &cfg()).unwrap();
    assert!(gb.is_unit());
    let gb = Ideal::<Rational>::zero(&r).groebner_basis(MonomialOrder::GrevLex, &cfg()).unwrap();
    assert!(gb.is_empty());
    assert!(ideal(&["0"], &r).is_zero_ideal());
}

#[test]
fn resource_cap_is_an_error() {
    let r = ring(&["x", "y", "z"]);
    let tight = GroebnerConfig { max_pairs: 1, ..Default::default() };
    let res = ideal(&["x^2-y*z", "y^2-x*z", "z^2-x*y"], &r).groebner_basis(MonomialOrder::Lex, &tight);
    assert!(matches!(res, Err(IdealError::ResourceCap { what: "S-pairs", .. })));
    let low = GroebnerConfig { max_degree: 1, ..Default::default() };
    let res = ideal(&["x^2-y"], &r).groebner_basis(MonomialOrder::Lex, &low);
    assert!(matches!(res, Err(IdealError::ResourceCap { .. })));
}

#[test]
fn twisted_cubic_lex_basis() {
    // known basis of (t - x? ) parametrization x=t, y=t^2, z=t^3 under lex z>y>x
    let r = ring(&["z", "y", "x"]);
    let gb = ideal(&["y-x^2", "z-x^3"], &r).groebner_basis(MonomialOrder::Lex, &cfg()).unwrap();
    assert_eq!(gb.elements(), &[p("y-x^2", &r), p("z-x^3", &r)]);
    let gb = ideal(&["y-x^2", "z-x^3"], &r).groebner_basis(MonomialOrder::GrevLex, &cfg()).unwrap();
    assert!(gb.verify_buchberger());
    assert!(gb.contains(&p("y^3-z^2", &r)).unwrap());
    assert!(gb.contains(&p("x*z-y^2", &r)).unwrap());
}

#[test]
fn normal_form_examples() {
    let r = ring(&["x", "y"]);
    let gb = ideal(&["x", "y"], &r).groebner_basis(MonomialOrder::GrevLex, &cfg()).unwrap();
    assert!(gb.normal_form(&p("x", &r)).unwrap().is_zero());
    assert_eq!(gb.normal_form(&p("1", &r)).unwrap(), p("1", &r));
    let other = ring(&["a"]);
    assert!(matches!(gb.normal_form(&p("a", &other)), Err(IdealError::Poly(PolyError::RingMismatch { .. }))));
}

#[test]
fn surface_chart_substitution_reduces_to_zero() {
    for k in 1..=3 {
        let r = ring(&["x1", "x2", "x3", "u", "v"]);
        let chart = ideal(
            &[&format!("x1 - (u^{k}*v - 1)"), "x2 - u", &format!("x3 - (u^{k}*v - 2)*v")],
            &r,
        );
        let gb = chart.groebner_basis(MonomialOrder::Lex, &cfg()).unwrap();
        let surface = p(&format!("x1^2 - x2^{k}*x3 - 1"), &r);
        assert!(gb.normal_form(&surface).unwrap().is_zero(), "k = {k}");
    }
}

#[test]
fn elimination_examples() {
    let r = ring(&["x", "y"]);
    let c = cfg();
    assert!(ideal(&["y-x^2"], &r).eliminate(&[0], &c).unwrap().is_zero_ideal());
    assert!(ideal(&["x*y-1"], &r).eliminate(&[0], &c).unwrap().is_zero_ideal());
    let e = ideal(&["x^2+y^2-1", "x-y"], &r).eliminate(&[0], &c).unwrap();
    assert_eq!(e.ring().vars(), &["y".to_string()]);
    assert_eq!(e.gens(), &[p("y^2-1/2", e.ring())]);
    let g = ring(&["x", "y", "a", "b"]);
    let graph = ideal(&["a - 1 - x*y", "b - x - y^2 - x*y^3"], &g);
    assert!(graph.eliminate_names(&["x", "y"], &c).unwrap().is_zero_ideal());
}

#[test]
fn saturation_examples() {
    let r = ring(&["x", "y"]);
    let c = cfg();
    let s = ideal(&["x*y"], &r).saturate(&p("x", &r), &c).unwrap();
    assert!(s.same_ideal(&ideal(&["y"], &r), &c).unwrap());
    let s = ideal(&["x^2", "x*y"], &r).saturate(&p("x", &r), &c).unwrap();
    assert!(s.is_unit(&c).unwrap());
    let f = ideal(&["x^2 - y^3"], &r);
    assert!(f.saturate(&p("1", &r), &c).unwrap().same_ideal(&f, &c).unwrap());
    // saturating an embedded component away
    let s = ideal(&["x^2", "x*y"], &r).saturate(&p("y", &r), &c).unwrap();
    assert!(s.same_ideal(&ideal(&["x"], &r), &c).unwrap());
}

#[test]
fn radical_membership_examples() {
    let r = ring(&["x", "y"]);
    let c = cfg();
    assert!(ideal(&["x^2"], &r).radical_contains(&p("x", &r), &c).unwrap());
    assert!(!ideal(&["x"], &r).radical_contains(&p("1", &r), &c).unwrap());
    assert!(ideal(&["x", "y"], &r).radical_contains(&p("x^2+y^2", &r), &c).unwrap());
    assert!(!ideal(&["x*y"], &r).radical_contains(&p("x", &r), &c).unwrap());
    // x^2 + 1 has roots over the closure, so 1 is not in its radical
    assert!(!ideal(&["x^2+1"], &r).radical_contains(&p("1", &r), &c).unwrap());
}

#[test]
fn intersection_of_axes() {
    let r = ring(&["x", "y"]);
    let c = cfg();
    let i = ideal(&["x"], &r).intersect(&ideal(&["y"], &r), &c).unwrap();
    assert!(i.same_ideal(&ideal(&["x*y"], &r), &c).unwrap());
    let i = ideal(&["x", "y"], &r).intersect(&ideal(&["x-1", "y"], &r), &c).unwrap();
    assert!(i.same_ideal(&ideal(&["y", "x^2-x"], &r), &c).unwrap());
}

#[test]
fn dimension_examples() {
    let r = ring(&["x", "y"]);
    let c = cfg();
    assert_eq!(Ideal::<Rational>::zero(&r).dimension(&c).unwrap(), 2);
    assert_eq!(ideal(&["x"], &r).dimension(&c).unwrap(), 1);
    assert_eq!(ideal(&["1"], &r).dimension(&c).unwrap(), -1);
    assert_eq!(ideal(&["x*y"], &r).dimension(&c).unwrap(), 1);
    assert_eq!(ideal(&["x^2", "x*y"], &r).dimension(&c).unwrap(), 1);
    assert_eq!(ideal(&["x-1", "y+2"], &r).dimension(&c).unwrap(), 0);
    let s = ring(&["a", "b", "c", "d"]);
    // union of two planes meeting in a point has dimension 2
    assert_eq!(ideal(&["a*c", "a*d", "b*c", "b*d"], &s).dimension(&c).unwrap(), 2);
}

#[test]
fn minimal_primes_examples() {
    let r = ring(&["x", "y", "z"]);
    assert_eq!(monomial_minimal_primes(&ideal(&["x*y"], &r)).unwrap(), vec![vec![0], vec![1]]);
    assert_eq!(monomial_minimal_primes(&ideal(&["x", "y", "z"], &r)).unwrap(), vec![vec![0, 1, 2]]);
    let s = ring(&["x1", "x2", "x3", "x4"]);
    let b = ideal(&["x2*x4", "x2*x3", "x1*x4", "x1*x3"], &s);
    assert_eq!(monomial_minimal_primes(&b).unwrap(), vec![vec![0, 1], vec![2, 3]]);
    assert!(matches!(monomial_minimal_primes(&ideal(&["x^2"], &r)), Err(IdealError::NotSquarefree { index: 0 })));
    assert!(matches!(monomial_minimal_primes(&ideal(&["x+y"], &r)), Err(IdealError::NotMonomial { index: 0 })));
}

#[test]
fn transversal_brute_force_agreement() {
    // compare against exhaustive subset enumeration
    let hypergraphs: Vec<Vec<u64>> = vec![
        vec![0b011, 0b110],
        vec![0b1010, 0b0110, 0b1001, 0b0101],
        vec![0b111],
        vec![0b00011, 0b01100, 0b10001, 0b00110],
    ];
    for edges in hypergraphs {
        let n = 64 - edges.iter().fold(0u64, |a, e| a | e).leading_zeros();
        let covers: Vec<u64> = (0..1u64 << n).filter(|s| edges.iter().all(|e| e & s != 0)).collect();
        let minimal: Vec<u64> = covers.iter().copied().filter(|&s| !covers.iter().any(|&t| t != s && t & s == t)).collect();
        let mut got = minimal_transversals(&edges);
        got.sort();
        let mut want = minimal.clone();
        want.sort();
        assert_eq!(got, want);
        let smallest = covers.iter().map(|s| s.count_ones() as usize).min().unwrap();
        assert_eq!(min_transversal_size(&edges), smallest);
    }
}

#[test]
fn works_over_machine_rationals() {
    let r = ring(&["x", "y"]);
    let gens: Vec<Polynomial<Ratio<i64>>> =
        ["x^2+y^2-1", "x-y"].iter().map(|g| parse_polynomial(g, &r).unwrap()).collect();
    let gb = groebner_basis_of(&r, &gens, MonomialOrder::Lex, &GroebnerConfig::default()).unwrap();
    let want: Polynomial<Ratio<i64>> = parse_polynomial("y^2-1/2", &r).unwrap();
    assert_eq!(gb.elements()[0], want);
}

fn arb_ideal() -> impl Strategy<Value = Vec<Poly>> {
    let r = ring(&["x", "y", "z"]);
    let term = (0u32..3, 0u32..3, 0u32..2, -3i64..=3);
    let poly = prop::collection::vec(term, 1..4);
    prop::collection::vec(poly, 1..4).prop_map(move |gs| {
        gs.into_iter()
            .map(|ts| {
                Poly::from_terms(
                    &r,
                    ts.into_iter().map(|(a, b, c, k)| (crate::Monomial::from_exponents(&[a, b, c]), rat(k))),
                )
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn every_basis_passes_buchberger(gens in arb_ideal()) {
        let r = gens[0].ring().clone();
        for order in [MonomialOrder::Lex, MonomialOrder::GrevLex, MonomialOrder::Elimination(1)] {
            let gb = groebner_basis_of(&r, &gens, order, &cfg()).unwrap();
            prop_assert!(gb.verify_buchberger());
            for g in &gens {
                prop_assert!(gb.contains(g).unwrap());
            }
            // reduced: leading coefficient one, no leading monomial divides another term
            let lms = gb.leading_monomials();
            for (k, e) in gb.elements().iter().enumerate() {
                prop_assert!(e.leading_term(order).unwrap().1 == &rat(1));
                for (j, lm) in lms.iter().enumerate() {
                    if j == k { continue; }
                    prop_assert!(e.terms().iter().all(|(m, _)| !lm.divides(m)));
                }
            }
        }
    }

    #[test]
    fn division_cofactors_account_exactly(gens in arb_ideal(), a in 0u32..3, b in 0u32..3, k in -4i64..=4) {
        let r = gens[0].ring().clone();
        let gb = groebner_basis_of(&r, &gens, MonomialOrder::GrevLex, &cfg()).unwrap();
        let target = &(&gens[0] * &p(&format!("x^{a}*y^{b} + {k}"), &r)) + &p("x*y*z - 2*z + 1/3", &r);
        let (qs, rem) = gb.divide(&target);
        let mut rebuilt = rem.clone();
        for (q, g) in qs.iter().zip(gb.elements()) {
            rebuilt = &rebuilt + &(q * g);
        }
        prop_assert_eq!(rebuilt, target.clone());
        let nf = gb.normal_form(&target).unwrap();
        prop_assert_eq!(&nf, &rem);
        prop_assert_eq!(gb.normal_form(&nf).unwrap(), nf.clone());
        prop_assert!(gb.normal_form(&(&target - &nf)).unwrap().is_zero());
    }

    #[test]
    fn saturation_is_idempotent(gens in arb_ideal()) {
        let r = gens[0].ring().clone();
        let c = cfg();
        let i = Ideal::new(&r, gens).unwrap();
        let g = p("x", &r);
        let s1 = i.saturate(&g, &c).unwrap();
        let s2 = s1.saturate(&g, &c).unwrap();
        prop_assert!(s1.same_ideal(&s2, &c).unwrap());
        prop_assert!(s1.contains_ideal(&i, &c).unwrap());
    }

    #[test]
    fn dimension_does_not_grow(gens in arb_ideal(), extra in arb_ideal()) {
        let r = gens[0].ring().clone();
        let c = cfg();
        let i = Ideal::new(&r, gens).unwrap();
        let j = i.with_generators(extra.into_iter().take(1).map(|e| e.rename_ring(&r))).unwrap();
        prop_assert!(j.dimension(&c).unwrap() <= i.dimension(&c).unwrap());
    }

    #[test]
    fn elimination_respects_points(t in -5i64..=5, s in -5i64..=5, d in 1i64..4) {
        // V(I) parametrized by (t, s): x = t^2 - s, y = t*s, z = t + s^3
        let r = ring(&["t", "s", "x", "y", "z"]);
        let i = ideal(&["x - t^2 + s", "y - t*s", "z - t - s^3"], &r);
        let c = cfg();
        let e = i.eliminate(&[0], &c).unwrap();
        let (tv, sv) = (frac(t, d), frac(s, 1));
        let pt = vec![
            &tv * &tv - &sv,
            &tv * &sv,
            &tv + &(&sv * &sv * &sv),
        ];
        let mut full = vec![sv.clone()];
        full.extend(pt.iter().cloned());
        prop_assert!(e.vanishes_at(&full).unwrap());
    }
}

#[test]
fn full_elimination_of_a_parametrized_surface_has_one_generator() {
    let r = ring(&["t", "s", "x", "y", "z"]);
    let i = ideal(&["x - t^2 + s", "y - t*s", "z - t - s^3"], &r);
    let e = i.eliminate(&[0, 1], &cfg()).unwrap();
    assert_eq!(e.gens().len(), 1);
    assert_eq!(e.dimension(&cfg()).unwrap(), 2);
}
