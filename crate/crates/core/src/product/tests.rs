use core::f64::consts::{PI, TAU};

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use super::*;
use crate::disk::{DiskIdeal, DiskIsometry, DiskPoint, PoincareDisk};
use crate::geodesic::ParamGeodesic;
use crate::space::ray;
use crate::tree::{CayleyTree, Letter, TreeIdeal, TreeIsometry, TreePoint, Word};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn tv(s: &str) -> TreePoint {
    TreePoint::parse(s).unwrap()
}

fn ti(s: &str) -> TreeIdeal {
    TreeIdeal::parse(s).unwrap()
}

fn dp(re: f64, im: f64) -> DiskPoint {
    DiskPoint::new(re, im).unwrap()
}

/// `d_max(P_n, z) − d_max(P_n, O)` with every distance taken directly from
/// resolved coordinates.
fn normalized_distance<M: Model>(m: &M, x: &M::Point, y: &M::Point, z: &ProductPoint<M>) -> M::Scalar {
    let o = m.origin();
    M::Scalar::max_of(m.distance(x, &z.first), m.distance(y, &z.second))
        - M::Scalar::max_of(m.distance(x, &o), m.distance(y, &o))
}

#[test]
fn d_max_examples() {
    let t = CayleyTree;
    let p = ProductPoint::<CayleyTree>::origin(&t);
    let same = ProductPoint::new(tv("ab"), tv("B"));
    assert_eq!(d_max(&t, &same, &same), q(0, 1));
    assert_eq!(d_max(&t, &p, &ProductPoint::new(tv("aa"), tv("b"))), q(2, 1));
    let d = PoincareDisk::default();
    let p = ProductPoint::<PoincareDisk>::origin(&d);
    let v = d_max(&d, &p, &ProductPoint::new(dp(0.5, 0.0), dp(-0.5, 0.0)));
    assert!((v - 3f64.ln()).abs() < 1e-12);
}

#[test]
fn horofunction_examples() {
    let t = CayleyTree;
    let b = MaxBoundaryPoint::<CayleyTree>::Regular { xi: ti(",(a)"), xi_prime: ti(",(b)"), c: q(0, 1) };
    assert_eq!(horofunction_eval(&t, &b, &ProductPoint::origin(&t)), q(0, 1));
    assert_eq!(horofunction_eval(&t, &b, &ProductPoint::new(tv("a"), tv("b"))), q(-1, 1));
    let d = PoincareDisk::default();
    let b = MaxBoundaryPoint::<PoincareDisk>::Regular { xi: DiskIdeal::new(0.0), xi_prime: DiskIdeal::new(PI), c: 1.0 };
    assert_eq!(horofunction_eval(&d, &b, &ProductPoint::origin(&d)), 0.0);
    let s = MaxBoundaryPoint::<PoincareDisk>::Singular { factor: Factor::Second, xi: DiskIdeal::new(0.0) };
    let z = ProductPoint::new(dp(0.3, 0.0), dp(0.5, 0.0));
    assert!((horofunction_eval(&d, &s, &z) + 3f64.ln()).abs() < 1e-12);
}

/// The sign of `c`: the limit of `(a^n, b^{n+k})` is read off exact
/// distances and compared against the stored coordinates.
#[test]
fn regular_coordinates_follow_the_distance_difference() {
    let t = CayleyTree;
    for k in 0..4usize {
        let n = 30;
        let x = TreePoint::vertex(Word::parse("a").unwrap().pow(n));
        let y = TreePoint::vertex(Word::parse("b").unwrap().pow(n + k));
        let o = t.origin();
        let c = t.distance(&x, &o) - t.distance(&y, &o);
        assert_eq!(c, q(-(k as i64), 1));
        let b = MaxBoundaryPoint::<CayleyTree>::Regular { xi: ti(",(a)"), xi_prime: ti(",(b)"), c };
        for z in t.standard_points(&q(3, 1), 60) {
            for w in t.standard_points(&q(2, 1), 12) {
                let pz = ProductPoint::new(z.clone(), w);
                assert_eq!(normalized_distance(&t, &x, &y, &pz), horofunction_eval(&t, &b, &pz));
            }
        }
    }
}

#[test]
fn classify_examples() {
    let t = CayleyTree;
    let o = t.origin();
    let seq =
        StructuredSequence::<CayleyTree>::BoundedFirst { anchor: o.clone(), ray: ray::<CayleyTree>(&o, &ti(",(b)")) };
    let cl = classify(&t, &seq).unwrap();
    assert_eq!(cl.case, Case::I);
    assert!(!cl.permuted);
    assert!(cl.limit.unwrap().approx_eq(&t, &MaxBoundaryPoint::Singular { factor: Factor::Second, xi: ti(",(b)") }));

    let g = ParamGeodesic::new(&t, &ti(",(a)"), &ti(",(A)"), q(1, 1)).unwrap();
    let cl = classify(&t, &StructuredSequence::GeodesicPair(g)).unwrap();
    assert_eq!(cl.case, Case::II);
    let expected = MaxBoundaryPoint::Regular { xi: ti(",(a)"), xi_prime: ti(",(A)"), c: q(2, 1) };
    assert!(cl.limit.unwrap().approx_eq(&t, &expected));

    let pair = |s1: i64, s2: i64| StructuredSequence::<CayleyTree>::RayPair {
        first: ray::<CayleyTree>(&o, &ti(",(a)")),
        first_speed: q(s1, 1),
        second: ray::<CayleyTree>(&o, &ti(",(b)")),
        second_speed: q(s2, 1),
    };
    let cl = classify(&t, &pair(2, 1)).unwrap();
    assert_eq!((cl.case, cl.permuted), (Case::III, false));
    let cl = classify(&t, &pair(1, 2)).unwrap();
    assert_eq!((cl.case, cl.permuted), (Case::III, true));
    let cl = classify(&t, &pair(1, 0)).unwrap();
    assert_eq!((cl.case, cl.permuted), (Case::I, true));
    let cl = classify(&t, &pair(1, 1)).unwrap();
    assert_eq!(cl.case, Case::II);
    assert_eq!(classify(&t, &pair(0, 0)).unwrap_err(), Error::NotDivergent);
    assert_eq!(classify(&t, &pair(-1, 1)).unwrap_err(), Error::ParameterOutOfRange);

    let orbit = StructuredSequence::Orbit {
        generator: TreeIsometry(Word::parse("ab").unwrap()),
        seed: ProductPoint::new(o.clone(), tv("a")),
    };
    let cl = classify(&t, &orbit).unwrap();
    assert_eq!(cl.case, Case::II);
    // repelling point (BA)^∞: β(o) − β(a) = 0 − 1
    let expected = MaxBoundaryPoint::Regular { xi: ti(",(ab)"), xi_prime: ti(",(ab)"), c: q(-1, 1) };
    assert!(cl.limit.unwrap().approx_eq(&t, &expected));
    let still = StructuredSequence::Orbit { generator: t.identity(), seed: ProductPoint::origin(&t) };
    assert_eq!(classify(&t, &still).unwrap_err(), Error::NotDivergent);
}

#[test]
fn empirical_check_examples() {
    let t = CayleyTree;
    let g = ParamGeodesic::new(&t, &ti(",(a)"), &ti(",(A)"), q(0, 1)).unwrap();
    let seq = StructuredSequence::GeodesicPair(g);
    let b = classify(&t, &seq).unwrap().limit.unwrap();
    let vertices: Vec<_> = t.standard_points(&q(3, 1), 200).into_iter().filter(|p| p.step().is_none()).collect();
    let grid: Vec<_> =
        vertices.iter().zip(vertices.iter().rev()).map(|(x, y)| ProductPoint::new(x.clone(), y.clone())).collect();
    assert_eq!(empirical_limit_check(&t, &seq, &b, &grid, 10).unwrap(), q(0, 1));
    let wrong = MaxBoundaryPoint::Regular { xi: ti(",(b)"), xi_prime: ti(",(A)"), c: q(0, 1) };
    assert!(empirical_limit_check(&t, &seq, &wrong, &grid, 10).unwrap() >= q(1, 1));

    let d = PoincareDisk::default();
    let g = ParamGeodesic::new(&d, &DiskIdeal::new(0.0), &DiskIdeal::new(PI), 0.0).unwrap();
    let seq = StructuredSequence::GeodesicPair(g);
    let b = classify(&d, &seq).unwrap().limit.unwrap();
    let grid = standard_grid(&d, &1.0, 20);
    assert!(empirical_limit_check(&d, &seq, &b, &grid, 20).unwrap() <= 1e-6);
    let wrong = MaxBoundaryPoint::Regular { xi: DiskIdeal::new(0.5 * PI), xi_prime: DiskIdeal::new(PI), c: 0.0 };
    let early = empirical_limit_check(&d, &seq, &wrong, &grid, 10).unwrap();
    let late = empirical_limit_check(&d, &seq, &wrong, &grid, 25).unwrap();
    assert!(early > 0.1 && late > 0.1);
}

#[test]
fn standard_grid_lies_in_the_ball() {
    let d = PoincareDisk::default();
    let o = ProductPoint::origin(&d);
    let grid = standard_grid(&d, &1.0, 20);
    assert_eq!(grid.len(), 20);
    for p in &grid {
        assert!(d_max(&d, &o, p) <= 1.0 + 1e-12);
    }
}

#[test]
fn boundary_maps() {
    let t = CayleyTree;
    let s = phi_sing_inverse::<CayleyTree>(Factor::First, ti("a,(b)"));
    assert_eq!(phi_sing(&s).unwrap(), (Factor::First, ti("a,(b)")));
    assert_eq!(phi_reg(&s).unwrap_err(), Error::WrongVariant { expected: "regular" });
    let r = phi_reg_inverse::<CayleyTree>(ti(",(a)"), ti(",(b)"), q(3, 2));
    assert_eq!(phi_reg(&r).unwrap(), (ti(",(a)"), ti(",(b)"), q(3, 2)));
    assert!(phi_sing(&r).is_err());
    assert!(in_omega(&t, &r));
    assert!(!in_omega(&t, &s));
    assert!(!in_omega(&t, &phi_reg_inverse::<CayleyTree>(ti(",(a)"), ti("a,(a)"), q(1, 1))));
    assert_eq!(Factor::from_index(2), Some(Factor::Second));
    assert_eq!(Factor::from_index(3), None);
}

#[test]
fn renormalize_examples() {
    let t = CayleyTree;
    let o = t.origin();
    let b = renormalize(&t, &ti(",(a)"), &o, &ti(",(b)"), &o);
    assert!(b.approx_eq(&t, &MaxBoundaryPoint::Regular { xi: ti(",(a)"), xi_prime: ti(",(b)"), c: q(0, 1) }));
    let (xi, p, eta, p2) = (ti(",(a)"), tv("a"), ti(",(b)"), o.clone());
    let b = renormalize(&t, &xi, &p, &eta, &p2);
    let (_, _, c) = phi_reg(&b).unwrap();
    assert_eq!(c, q(1, 1));
    // the general-base representative differs from the stored one by a constant
    let grid = standard_grid(&t, &q(2, 1), 25);
    let rep = |z: &ProductPoint<CayleyTree>| {
        BigRational::max_of(t.busemann(&p, &xi, &z.first), t.busemann(&p2, &eta, &z.second))
    };
    let shift = rep(&grid[0]) - horofunction_eval(&t, &b, &grid[0]);
    for z in &grid {
        assert_eq!(rep(z) - horofunction_eval(&t, &b, z), shift);
    }
    // moving both base points one unit towards their ideal points keeps the class
    let moved = renormalize(&t, &xi, &tv("aa"), &eta, &tv("b"));
    assert!(moved.approx_eq(&t, &b));
}

fn disk_point() -> impl Strategy<Value = DiskPoint> {
    (0.0..1.0f64, 0.0..TAU).prop_map(|(r, a)| DiskPoint::polar(r, a).unwrap())
}

fn disk_ideal() -> impl Strategy<Value = DiskIdeal> {
    (0.0..TAU).prop_map(DiskIdeal::new)
}

fn tree_word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0usize..4, 0..=max).prop_map(|ls| Word::reduce(ls.into_iter().map(|i| Letter::ALL[i])))
}

fn tree_point() -> impl Strategy<Value = TreePoint> {
    (tree_word(3), 0usize..4, 0i64..4).prop_map(|(w, l, k)| {
        let l = Letter::ALL[l];
        TreePoint::on_edge(w.clone(), l, q(k, 4)).unwrap_or(TreePoint::vertex(w))
    })
}

fn tree_ideal() -> impl Strategy<Value = TreeIdeal> {
    (tree_word(3), tree_word(3).prop_filter("nonempty", |c| !c.is_empty()))
        .prop_map(|(h, c)| TreeIdeal::new(h, c).unwrap())
}

fn disk_sequence() -> impl Strategy<Value = StructuredSequence<PoincareDisk>> {
    let d = PoincareDisk::default();
    let rays = (disk_point(), disk_ideal(), disk_point(), disk_ideal());
    prop_oneof![
        (rays, 0.5..2.0f64, 0.0..2.0f64).prop_map(|((p1, x1, p2, x2), s1, s2)| {
            // speeds either equal or at least a quarter apart
            let s2 = if (s1 - s2).abs() < 0.25 { s1 } else { s2 };
            StructuredSequence::RayPair {
                first: ray::<PoincareDisk>(&p1, &x1),
                first_speed: s1,
                second: ray::<PoincareDisk>(&p2, &x2),
                second_speed: s2,
            }
        }),
        (disk_ideal(), 0.2..PI, -1.0..1.0f64).prop_map(move |(a, gap, s)| {
            let g = ParamGeodesic::new(&d, &DiskIdeal::new(a.angle() + gap), &a, s).unwrap();
            StructuredSequence::GeodesicPair(g)
        }),
        (0.0..TAU, 1.0..3.0f64, 0.0..TAU, disk_point(), disk_point()).prop_map(|(a, l, r, x, y)| {
            let generator = DiskIsometry::from_center(&DiskPoint::polar(0.5, r).unwrap())
                .compose(&DiskIsometry::translation_toward(a, l))
                .compose(&DiskIsometry::to_center(&DiskPoint::polar(0.5, r).unwrap()));
            StructuredSequence::Orbit { generator, seed: ProductPoint::new(x, y) }
        }),
        (disk_point(), disk_point(), disk_ideal())
            .prop_map(|(a, p, xi)| StructuredSequence::BoundedFirst { anchor: a, ray: ray::<PoincareDisk>(&p, &xi) }),
    ]
}

fn tree_sequence() -> impl Strategy<Value = StructuredSequence<CayleyTree>> {
    let t = CayleyTree;
    let rays = (tree_point(), tree_ideal(), tree_point(), tree_ideal());
    prop_oneof![
        (rays, 1i64..5, 0i64..5).prop_map(|((p1, x1, p2, x2), s1, s2)| StructuredSequence::RayPair {
            first: ray::<CayleyTree>(&p1, &x1),
            first_speed: q(s1, 2),
            second: ray::<CayleyTree>(&p2, &x2),
            second_speed: q(s2, 2),
        }),
        (tree_ideal(), tree_ideal(), -4i64..4).prop_filter_map("distinct ends", move |(a, b, s)| {
            ParamGeodesic::new(&t, &a, &b, q(s, 2)).ok().map(StructuredSequence::GeodesicPair)
        }),
        (tree_word(3).prop_filter("nontrivial", |w| !w.is_empty()), tree_point(), tree_point()).prop_map(
            |(w, x, y)| StructuredSequence::Orbit { generator: TreeIsometry(w), seed: ProductPoint::new(x, y) }
        ),
        (tree_point(), tree_point(), tree_ideal())
            .prop_map(|(a, p, xi)| StructuredSequence::BoundedFirst { anchor: a, ray: ray::<CayleyTree>(&p, &xi) }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn disk_classification_is_sound(seq in disk_sequence()) {
        let d = PoincareDisk::default();
        let cl = classify(&d, &seq).unwrap();
        prop_assert!(cl.case != Case::Undetermined);
        let grid = standard_grid(&d, &1.0, 20);
        let err = empirical_limit_check(&d, &seq, &cl.limit.unwrap(), &grid, 25).unwrap();
        prop_assert!(err <= 1e-5, "error {err}");
    }

    #[test]
    fn tree_classification_is_exact(seq in tree_sequence()) {
        let t = CayleyTree;
        let cl = classify(&t, &seq).unwrap();
        prop_assert!(cl.case != Case::Undetermined);
        let grid = standard_grid(&t, &q(1, 1), 20);
        let b = cl.limit.unwrap();
        prop_assert_eq!(empirical_limit_check(&t, &seq, &b, &grid, 40).unwrap(), q(0, 1));
        // same verdict from resolved coordinates
        let (x, y) = seq.term(&t, 40).unwrap();
        let (x, y) = (x.resolve(&t).unwrap(), y.resolve(&t).unwrap());
        for z in &grid {
            prop_assert_eq!(normalized_distance(&t, &x, &y, z), horofunction_eval(&t, &b, z));
        }
    }

    #[test]
    fn orbit_difference_is_bounded(w in tree_word(5), x in tree_point(), y in tree_point()) {
        let t = CayleyTree;
        let g = TreeIsometry(w);
        let o = t.origin();
        let diff = t.distance(&t.apply(&g, &x).unwrap(), &o) - t.distance(&t.apply(&g, &y).unwrap(), &o);
        prop_assert!(diff.abs() <= t.distance(&x, &y));
    }

    #[test]
    fn distinct_regular_points_differ_on_the_grid(a in tree_ideal(), b in tree_ideal(), c in -4i64..4,
                                                  a2 in tree_ideal(), b2 in tree_ideal(), c2 in -4i64..4) {
        let t = CayleyTree;
        let u = MaxBoundaryPoint::<CayleyTree>::Regular { xi: a, xi_prime: b, c: q(c, 2) };
        let v = MaxBoundaryPoint::<CayleyTree>::Regular { xi: a2, xi_prime: b2, c: q(c2, 2) };
        prop_assume!(!u.approx_eq(&t, &v));
        // probe along the rays towards every ideal coordinate involved
        let ends = [&u, &v].into_iter().flat_map(|b| {
            let (x, y, _) = phi_reg(b).unwrap();
            [x, y]
        });
        let mut probes = Vec::new();
        for xi in ends {
            for k in 0..=20 {
                probes.push(t.ray_point(&t.origin(), &xi, &q(k, 2)).unwrap());
            }
        }
        let differs = probes.iter().any(|z| {
            probes.iter().any(|w| {
                let p = ProductPoint::new(z.clone(), w.clone());
                horofunction_eval(&t, &u, &p) != horofunction_eval(&t, &v, &p)
            })
        });
        prop_assert!(differs);
    }

    #[test]
    fn boundary_maps_round_trip(a in disk_ideal(), b in disk_ideal(), c in -5.0..5.0f64, first in any::<bool>()) {
        let d = PoincareDisk::default();
        let r = phi_reg_inverse::<PoincareDisk>(a, b, c);
        let (a2, b2, c2) = phi_reg(&r).unwrap();
        prop_assert!(phi_reg_inverse::<PoincareDisk>(a2, b2, c2).approx_eq(&d, &r));
        let factor = if first { Factor::First } else { Factor::Second };
        let s = phi_sing_inverse::<PoincareDisk>(factor, a);
        let (f2, a3) = phi_sing(&s).unwrap();
        prop_assert!(phi_sing_inverse::<PoincareDisk>(f2, a3).approx_eq(&d, &s));
    }
}
