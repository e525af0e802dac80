use aimage::build::{
    certify_surjection, elementary_word_map, example_map, product_map, sl_factorize, word_matrix, Example,
    SurjectionVerdict,
};
use aimage::constructible::{image_of_map, oracle_disagreements, random_rational_points, ConstructibleSet, ImageConfig, Piece};
use aimage::scalar::rat;
use aimage::toric::{cox_presentation, quotient_surjectivity_check, Fan, QuotientVerdict};
use aimage::{parse_polynomial, GroebnerConfig, Ideal, MonomialOrder, Poly, Rational, Ring, RingRef};

fn punctured(r: &RingRef) -> ConstructibleSet {
    let a = Poly::var(r, 0);
    let b = Poly::var(r, 1);
    ConstructibleSet::new(r, vec![Piece::open(a.clone()), Piece::new(Ideal::new(r, vec![a]).unwrap(), b).unwrap()])
        .unwrap()
}

#[test]
fn twisted_cubic_basis_from_text() {
    let r = Ring::new(&["t", "x", "y", "z"]).unwrap();
    let gens: Vec<Poly> = ["x - t", "y - t^2", "z - t^3"].iter().map(|s| parse_polynomial(s, &r).unwrap()).collect();
    let cfg = GroebnerConfig { verify: true, ..GroebnerConfig::default() };
    let curve = Ideal::new(&r, gens).unwrap().eliminate(&[0], &cfg).unwrap();
    let xz = parse_polynomial("x*z - y^2", curve.ring()).unwrap();
    assert!(curve.contains(&xz, &cfg).unwrap());
    assert_eq!(curve.dimension(&cfg).unwrap(), 1);
    let gb = curve.groebner_basis(MonomialOrder::GrevLex, &cfg).unwrap();
    assert_eq!(gb.len(), 3);
}

#[test]
fn example2_image_agrees_with_fiber_oracle() {
    let phi = example_map(Example::Two);
    let cfg = ImageConfig::default();
    let image = image_of_map(&phi, &cfg).unwrap();
    let points = random_rational_points(2, 60, 11);
    assert!(oracle_disagreements(&phi, &image, &points, &cfg.groebner).unwrap().is_empty());
    assert!(image.same_set(&punctured(phi.target()), &cfg.groebner).unwrap());
}

#[test]
fn product_is_not_onto_the_punctured_square() {
    let e2 = example_map(Example::Two);
    let phi = product_map(&e2, &e2).unwrap();
    let target = ConstructibleSet::whole(phi.target()).difference(
        &ConstructibleSet::point(phi.target(), &[rat(0), rat(0), rat(0), rat(0)]).unwrap(),
        &GroebnerConfig::default(),
    );
    match certify_surjection(&phi, &target.unwrap(), &ImageConfig::default()).unwrap() {
        SurjectionVerdict::NotSurjective { witness: Some(w), .. } => {
            let zero = rat(0);
            assert!((w[0] == zero && w[1] == zero) || (w[2] == zero && w[3] == zero), "{w:?}");
        }
        other => panic!("unexpected verdict {other:?}"),
    }
}

#[test]
fn factorization_feeds_the_word_map() {
    let a = vec![vec![rat(3), rat(5)], vec![rat(1), rat(2)]];
    let (word, params) = sl_factorize(&a).unwrap();
    assert_eq!(word_matrix(&word, &params).unwrap(), a);
    let phi = elementary_word_map(&word).unwrap();
    let flat: Vec<Rational> = a.iter().flatten().cloned().collect();
    assert_eq!(phi.evaluate(&params).unwrap(), flat);
}

#[test]
fn quotient_check_on_the_projective_plane() {
    let cox = cox_presentation(&Fan::projective_space(2)).unwrap();
    assert_eq!(cox.free_rank(), 1);
    let s = Ring::new(&["u", "v"]).unwrap();
    let onto = aimage::constructible::PolynomialMap::new(
        &s,
        vec![Poly::one(&s), Poly::var(&s, 0), Poly::var(&s, 1)],
    )
    .unwrap();
    match quotient_surjectivity_check(&onto, &cox, &ImageConfig::default()).unwrap() {
        QuotientVerdict::NotSurjective { witness } => assert_eq!(witness[0], rat(0)),
        other => panic!("unexpected verdict {other:?}"),
    }
}
