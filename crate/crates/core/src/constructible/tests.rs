use super::*;
use crate::poly::{parse_polynomial, Ring};
use crate::scalar::{frac, rat};
use proptest::prelude::*;

fn ring(vars: &[&str]) -> RingRef {
    Ring::new(vars).unwrap()
}

fn p(text: &str, r: &RingRef) -> Poly {
    parse_polynomial(text, r).unwrap()
}

fn piece(eqs: &[&str], ineq: &str, r: &RingRef) -> Piece {
    let gens = eqs.iter().map(|e| p(e, r)).collect();
    Piece::new(Ideal::new(r, gens).unwrap(), p(ineq, r)).unwrap()
}

fn set(pieces: &[(&[&str], &str)], r: &RingRef) -> ConstructibleSet {
    ConstructibleSet::new(r, pieces.iter().map(|(e, g)| piece(e, g, r)).collect()).unwrap()
}

/// `A^2 ∖ {0}` written by hand as `D(a) ∪ (V(a) ∖ V(b))`.
fn punctured_plane(r: &RingRef) -> ConstructibleSet {
    set(&[(&[], "a"), (&["a"], "b")], r)
}

fn pt(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rat(x)).collect()
}

fn gb() -> GroebnerConfig {
    GroebnerConfig::default()
}

fn example2() -> PolynomialMap {
    let src = ring(&["x", "y"]);
    let tgt = ring(&["a", "b"]);
    PolynomialMap::with_target(&src, vec![p("1+x*y", &src), p("x+y^2+x*y^3", &src)], &tgt).unwrap()
}

#[test]
fn membership_examples() {
    let r = ring(&["a", "b"]);
    let s = punctured_plane(&r);
    assert!(!s.contains(&pt(&[0, 0])).unwrap());
    assert!(s.contains(&pt(&[1, 1])).unwrap());
    assert!(s.contains(&pt(&[0, -3])).unwrap());
    let xy = ring(&["x", "y"]);
    assert!(set(&[(&["x-y"], "x")], &xy).contains(&pt(&[2, 2])).unwrap());
    assert!(!set(&[(&["x-y"], "x")], &xy).contains(&pt(&[0, 0])).unwrap());
    assert!(matches!(s.contains(&pt(&[1])), Err(PolyError::LengthMismatch { .. })));
}

#[test]
fn emptiness_examples() {
    let r = ring(&["x"]);
    let c = gb();
    assert!(set(&[(&["x"], "x")], &r).is_empty(&c).unwrap());
    assert!(!ConstructibleSet::whole(&r).is_empty(&c).unwrap());
    assert!(!set(&[(&["x^2+1"], "1")], &r).is_empty(&c).unwrap());
    assert!(ConstructibleSet::empty(&r).is_empty(&c).unwrap());
}

#[test]
fn boolean_examples() {
    let r = ring(&["a", "b"]);
    let c = gb();
    let s = punctured_plane(&r);
    let cc = s.complement(&c).unwrap().complement(&c).unwrap();
    assert!(cc.same_set(&s, &c).unwrap());
    let origin = ConstructibleSet::point(&r, &pt(&[0, 0])).unwrap();
    assert!(s.complement(&c).unwrap().same_set(&origin, &c).unwrap());

    let xy = ring(&["x", "y"]);
    let left = set(&[(&["x"], "y")], &xy);
    let right = set(&[(&["y"], "x")], &xy);
    assert!(left.intersect(&right, &c).unwrap().is_empty(&c).unwrap());

    let diff = ConstructibleSet::whole(&r).difference(&origin, &c).unwrap();
    assert!(diff.same_set(&s, &c).unwrap());
    for q in grid_points(2, 3) {
        let inside = !(q[0] == rat(0) && q[1] == rat(0));
        assert_eq!(diff.contains(&q).unwrap(), inside);
    }
    assert!(matches!(
        s.union(&ConstructibleSet::whole(&ring(&["x"]))),
        Err(ConstructError::AmbientMismatch { left: 2, right: 1 })
    ));
}

#[test]
fn subset_examples() {
    let r = ring(&["a", "b"]);
    let c = gb();
    let s = punctured_plane(&r);
    let plane = ConstructibleSet::whole(&r);
    assert!(s.is_subset(&plane, &c).unwrap());
    assert!(!plane.is_subset(&s, &c).unwrap());
    let w = plane.uncovered_piece(&s, &c).unwrap().unwrap();
    let witness = ConstructibleSet::new(&r, vec![w]).unwrap();
    assert_eq!(witness.find_integer_point(3), Some(pt(&[0, 0])));
}

#[test]
fn closure_examples() {
    let c = gb();
    let a1 = ring(&["x"]);
    assert!(set(&[(&[], "x")], &a1).closure(&c).unwrap().is_zero_ideal());
    let r = ring(&["a", "b"]);
    assert!(punctured_plane(&r).closure(&c).unwrap().is_zero_ideal());
    let xy = ring(&["x", "y"]);
    let cl = set(&[(&["x*y"], "x")], &xy).closure(&c).unwrap();
    assert!(cl.same_ideal(&Ideal::principal(p("y", &xy)), &c).unwrap());
    assert!(ConstructibleSet::empty(&xy).closure(&c).unwrap().is_unit(&c).unwrap());
}

#[test]
fn fiber_oracle_examples() {
    let c = gb();
    let phi = example2();
    assert!(!fiber_membership_oracle(&phi, &pt(&[0, 0]), &c).unwrap());
    assert!(fiber_membership_oracle(&phi, &pt(&[1, 1]), &c).unwrap());
    let t = ring(&["t"]);
    let sq = PolynomialMap::new(&t, vec![p("t^2", &t)]).unwrap();
    assert!(fiber_membership_oracle(&sq, &pt(&[4]), &c).unwrap());
    // t = 2i over the closure
    assert!(fiber_membership_oracle(&sq, &pt(&[-4]), &c).unwrap());
    let restricted = sq.clone().with_domain(set(&[(&[], "t-2")], &t)).unwrap();
    assert!(fiber_membership_oracle(&restricted, &pt(&[4]), &c).unwrap());
    let tiny = sq.with_domain(set(&[(&["t^2-4"], "t+2"), (&["t-2"], "t-2")], &t)).unwrap();
    assert!(fiber_membership_oracle(&tiny, &pt(&[4]), &c).unwrap());
}

#[test]
fn image_of_example2_is_punctured_plane() {
    let cfg = ImageConfig::default();
    let img = image_of_map(&example2(), &cfg).unwrap();
    let r = ring(&["a", "b"]);
    assert!(img.same_set(&punctured_plane(&r), &cfg.groebner).unwrap());
}

#[test]
fn image_of_monomial_shear() {
    // (x, y) ↦ (x, xy) has image {a ≠ 0} ∪ {(0, 0)}
    let cfg = ImageConfig::default();
    let src = ring(&["x", "y"]);
    let phi = PolynomialMap::new(&src, vec![p("x", &src), p("x*y", &src)]).unwrap();
    let img = image_of_map(&phi, &cfg).unwrap();
    let r = phi.target().clone();
    let hand = set(&[(&[], "y1"), (&["y1", "y2"], "1")], &r);
    assert!(img.same_set(&hand, &cfg.groebner).unwrap());
    assert!(!img.contains(&pt(&[0, 1])).unwrap());
    assert!(img.contains(&pt(&[0, 0])).unwrap());
    assert!(img.contains(&pt(&[1, 5])).unwrap());
    for q in [[0, 1], [0, 0], [1, 5]] {
        assert_eq!(img.contains(&pt(&q)).unwrap(), fiber_membership_oracle(&phi, &pt(&q), &cfg.groebner).unwrap());
    }
}

#[test]
fn image_of_constant_map_is_a_point() {
    let cfg = ImageConfig::default();
    let src = ring(&["s"]);
    let phi = PolynomialMap::new(&src, vec![p("3", &src), p("7", &src)]).unwrap();
    let img = image_of_map(&phi, &cfg).unwrap();
    let point = ConstructibleSet::point(phi.target(), &pt(&[3, 7])).unwrap();
    assert!(img.same_set(&point, &cfg.groebner).unwrap());
}

#[test]
fn image_of_parabola_projection_and_restricted_domain() {
    let cfg = ImageConfig::default();
    let src = ring(&["x", "y"]);
    let c = &cfg.groebner;
    // projection of the hyperbola xy = 1 to the x-axis misses 0
    let hyper = PolynomialMap::new(&src, vec![p("x", &src)])
        .unwrap()
        .with_domain(set(&[(&["x*y-1"], "1")], &src))
        .unwrap();
    let img = image_of_map(&hyper, &cfg).unwrap();
    assert!(img.same_set(&set(&[(&[], "y1")], hyper.target()), c).unwrap());
    // t ↦ t^2 on t ≠ 0 still hits every nonzero value, and not 0
    let t = ring(&["t"]);
    let sq = PolynomialMap::new(&t, vec![p("t^2", &t)]).unwrap().with_domain(set(&[(&[], "t")], &t)).unwrap();
    let img = image_of_map(&sq, &cfg).unwrap();
    assert!(img.same_set(&set(&[(&[], "y1")], sq.target()), c).unwrap());
}

#[test]
fn image_of_reducible_source_with_mixed_fibers() {
    // V(x*z) → A^2 by (x, y): the plane x = 0 maps onto the line a = 0,
    // the plane z = 0 maps onto everything
    let cfg = ImageConfig::default();
    let src = ring(&["x", "y", "z"]);
    let phi = PolynomialMap::new(&src, vec![p("x*y", &src), p("y + z", &src)])
        .unwrap()
        .with_domain(set(&[(&["x*z"], "1")], &src))
        .unwrap();
    let img = image_of_map(&phi, &cfg).unwrap();
    for q in grid_points(2, 4) {
        assert_eq!(img.contains(&q).unwrap(), fiber_membership_oracle(&phi, &q, &cfg.groebner).unwrap(), "{q:?}");
    }
}

#[test]
fn group_saturation_examples() {
    let cfg = ImageConfig::default();
    let c = &cfg.groebner;
    let r = ring(&["a", "b"]);
    let torus = GroupAction::new(vec![vec![1], vec![1]], vec![]).unwrap();
    let sat = group_saturation(&ConstructibleSet::point(&r, &pt(&[1, 1])).unwrap(), &torus, &cfg).unwrap();
    assert!(sat.same_set(&set(&[(&["a-b"], "a")], &r), c).unwrap());
    let sat = group_saturation(&ConstructibleSet::point(&r, &pt(&[1, 0])).unwrap(), &torus, &cfg).unwrap();
    assert!(sat.same_set(&set(&[(&["b"], "a")], &r), c).unwrap());
    let z2 = GroupAction::new(vec![vec![], vec![]], vec![(2, vec![1, 1])]).unwrap();
    let sat = group_saturation(&ConstructibleSet::point(&r, &pt(&[1, 2])).unwrap(), &z2, &cfg).unwrap();
    let both = ConstructibleSet::point(&r, &pt(&[1, 2]))
        .unwrap()
        .union(&ConstructibleSet::point(&r, &pt(&[-1, -2])).unwrap())
        .unwrap();
    assert!(sat.same_set(&both, c).unwrap());
    assert!(matches!(
        GroupAction::new(vec![vec![1]], vec![(1, vec![0])]),
        Err(ConstructError::InvalidAction(_))
    ));
}

#[test]
fn group_saturation_properties() {
    let cfg = ImageConfig::default();
    let c = &cfg.groebner;
    let r = ring(&["a", "b"]);
    let action = GroupAction::new(vec![vec![1], vec![2]], vec![]).unwrap();
    let s = set(&[(&["a-1"], "1")], &r);
    let sat = group_saturation(&s, &action, &cfg).unwrap();
    assert!(s.is_subset(&sat, c).unwrap());
    let again = group_saturation(&sat, &action, &cfg).unwrap();
    assert!(again.same_set(&sat, c).unwrap());
    for (l, b) in [(2, 0), (-3, 5), (1, 1)] {
        let lam = [frac(l, 1)];
        let image = action.act(&lam, &[], &pt(&[1, b]));
        assert!(sat.contains(&image).unwrap());
    }
}

/// Small random sets: pieces with linear equations over `a, b` and
/// inequations from a short list.
fn arb_set() -> impl Strategy<Value = Vec<(Vec<usize>, usize)>> {
    prop::collection::vec((prop::collection::vec(0usize..5, 0..2), 0usize..5), 1..3)
}

fn build(spec: &[(Vec<usize>, usize)], r: &RingRef) -> ConstructibleSet {
    const EQ: [&str; 5] = ["a", "b", "a-b", "a+b-1", "a*b"];
    const NE: [&str; 5] = ["1", "a", "b", "a-1", "a+b"];
    let pieces = spec.iter().map(|(eqs, g)| {
        let eqs: Vec<&str> = eqs.iter().map(|&i| EQ[i]).collect();
        piece(&eqs, NE[*g], r)
    });
    ConstructibleSet::new(r, pieces.collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 20, ..ProptestConfig::default() })]

    #[test]
    fn boolean_laws(s in arb_set(), t in arb_set()) {
        let r = ring(&["a", "b"]);
        let c = gb();
        let (s, t) = (build(&s, &r), build(&t, &r));
        let cs = s.complement(&c).unwrap();
        prop_assert!(cs.complement(&c).unwrap().same_set(&s, &c).unwrap());
        let lhs = s.union(&t).unwrap().complement(&c).unwrap();
        let rhs = cs.intersect(&t.complement(&c).unwrap(), &c).unwrap();
        prop_assert!(lhs.same_set(&rhs, &c).unwrap());
        let lhs = s.intersect(&t, &c).unwrap().complement(&c).unwrap();
        let rhs = cs.union(&t.complement(&c).unwrap()).unwrap();
        prop_assert!(lhs.same_set(&rhs, &c).unwrap());
        for q in grid_points(2, 2) {
            prop_assert_eq!(cs.contains(&q).unwrap(), !s.contains(&q).unwrap());
            prop_assert_eq!(
                s.difference(&t, &c).unwrap().contains(&q).unwrap(),
                s.contains(&q).unwrap() && !t.contains(&q).unwrap()
            );
        }
    }

    #[test]
    fn closure_contains_the_set(s in arb_set()) {
        let r = ring(&["a", "b"]);
        let c = gb();
        let s = build(&s, &r);
        let cl = s.closure(&c).unwrap();
        for q in grid_points(2, 3) {
            if s.contains(&q).unwrap() {
                prop_assert!(cl.vanishes_at(&q).unwrap());
            }
        }
        prop_assert!(s.is_subset(&ConstructibleSet::closed(cl), &c).unwrap());
    }
}

fn arb_map() -> impl Strategy<Value = (Vec<String>, u64)> {
    let comp = prop::sample::select(vec!["x*y", "x^2", "x+y", "x*y^2+1", "y", "x^2*y-x", "1+x*y", "x+y^2+x*y^3", "2"]);
    (prop::collection::vec(comp.prop_map(String::from), 2), 0u64..1000)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn image_is_sound_and_matches_the_oracle((comps, seed) in arb_map()) {
        let src = ring(&["x", "y"]);
        let phi = PolynomialMap::new(&src, comps.iter().map(|c| p(c, &src)).collect()).unwrap();
        let cfg = ImageConfig { seed, ..ImageConfig::default() };
        let img = image_of_map(&phi, &cfg).unwrap();
        for q in grid_points(2, 2) {
            let v = phi.evaluate(&q).unwrap();
            prop_assert!(img.contains(&v).unwrap());
        }
        for q in grid_points(2, 3) {
            prop_assert_eq!(img.contains(&q).unwrap(), fiber_membership_oracle(&phi, &q, &cfg.groebner).unwrap(), "{:?}", q);
        }
    }
}
