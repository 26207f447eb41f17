//! Model quantities against closed forms computed independently here.

use horobound::disk::{DiskIdeal, DiskPoint, PoincareDisk};
use horobound::geodesic::{f, geodesic_of, ParamGeodesic};
use horobound::product::{classify, phi_reg, Case, MaxBoundaryPoint, ProductPoint, StructuredSequence};
use horobound::tree::{CayleyTree, Letter, TreeIdeal, TreeIsometry, TreePoint, Word};
use horobound::{Extended, Model};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;
use std::f64::consts::{PI, TAU};

fn poisson(xi: Complex64, z: Complex64) -> f64 {
    (1.0 - z.norm_sqr()) / (xi - z).norm_sqr()
}

fn cosh_distance(z: Complex64, w: Complex64) -> f64 {
    1.0 + 2.0 * (z - w).norm_sqr() / ((1.0 - z.norm_sqr()) * (1.0 - w.norm_sqr()))
}

fn arb_disk_point() -> impl Strategy<Value = DiskPoint> {
    (0.0..3.0f64, 0.0..TAU).prop_map(|(r, a)| DiskPoint::polar(r, a).unwrap())
}

proptest! {
    #[test]
    fn disk_distance_matches_cosh_formula(x in arb_disk_point(), y in arb_disk_point()) {
        let d = PoincareDisk::default().distance(&x, &y);
        let oracle = cosh_distance(x.z(), y.z()).acosh();
        prop_assert!((d - oracle).abs() < 1e-9 * (1.0 + oracle));
    }

    #[test]
    fn disk_busemann_is_log_of_poisson_ratio(p in arb_disk_point(), x in arb_disk_point(), a in 0.0..TAU) {
        let xi = DiskIdeal::new(a);
        let unit = Complex64::from_polar(1.0, a);
        let oracle = (poisson(unit, p.z()) / poisson(unit, x.z())).ln();
        let b = PoincareDisk::default().busemann(&p, &xi, &x);
        prop_assert!((b - oracle).abs() < 1e-9, "{b} vs {oracle}");
    }

    #[test]
    fn disk_gromov_product_at_center_is_minus_log_sine(a in 0.0..TAU, gap in 0.01..(PI - 0.01)) {
        let m = PoincareDisk::default();
        let got = m.gromov_product_ideal(&DiskIdeal::new(a), &DiskIdeal::new(a + gap), &m.origin());
        let Extended::Finite(v) = got else { panic!("distinct ideal points") };
        prop_assert!((v + (0.5 * gap).sin().ln()).abs() < 1e-9);
    }
}

/// A tree point as its letters from `o`, each with the length of edge it
/// covers.
fn weighted_path(p: &TreePoint) -> Vec<(Letter, BigRational)> {
    let mut out: Vec<_> = p.base_vertex().letters().iter().map(|&l| (l, BigRational::from_integer(1.into()))).collect();
    if let Some((l, t)) = p.step() {
        out.push((*l, t.clone()));
    }
    out
}

fn oracle_distance(x: &TreePoint, y: &TreePoint) -> BigRational {
    let (a, b) = (weighted_path(x), weighted_path(y));
    let total = |v: &[(Letter, BigRational)]| v.iter().fold(BigRational::from_integer(0.into()), |s, (_, w)| s + w);
    let mut meet = BigRational::from_integer(0.into());
    for ((l1, w1), (l2, w2)) in a.iter().zip(&b) {
        if l1 != l2 {
            break;
        }
        meet += w1.clone().min(w2.clone());
        if w1 != w2 {
            break;
        }
    }
    total(&a) + total(&b) - meet.clone() - meet
}

fn ideal_vertex(xi: &TreeIdeal, depth: usize) -> TreePoint {
    TreePoint::vertex(Word::from_reduced(xi.prefix(depth)).unwrap())
}

fn arb_tree_point() -> impl Strategy<Value = TreePoint> {
    (prop::collection::vec(0usize..4, 0..5), 0usize..4, 0i64..8).prop_map(|(ls, dir, eighths)| {
        let w = Word::reduce(ls.into_iter().map(|i| Letter::ALL[i]));
        let t = BigRational::new(BigInt::from(eighths), BigInt::from(8));
        if eighths == 0 {
            TreePoint::vertex(w)
        } else {
            TreePoint::on_edge(w.clone(), Letter::ALL[dir], t).unwrap_or(TreePoint::vertex(w))
        }
    })
}

fn arb_tree_ideal() -> impl Strategy<Value = TreeIdeal> {
    (prop::collection::vec(0usize..4, 0..4), prop::collection::vec(0usize..4, 1..4)).prop_filter_map(
        "cycle reduces to nothing",
        |(h, c)| {
            let head = Word::reduce(h.into_iter().map(|i| Letter::ALL[i]));
            let cycle = Word::reduce(c.into_iter().map(|i| Letter::ALL[i]));
            TreeIdeal::new(head, cycle).ok()
        },
    )
}

proptest! {
    #[test]
    fn tree_distance_matches_path_oracle(x in arb_tree_point(), y in arb_tree_point()) {
        prop_assert_eq!(CayleyTree.distance(&x, &y), oracle_distance(&x, &y));
    }

    #[test]
    fn tree_busemann_matches_far_vertex(p in arb_tree_point(), x in arb_tree_point(), xi in arb_tree_ideal()) {
        // past depth 30 both rays have long merged
        let k = 30;
        let v = ideal_vertex(&xi, k);
        let oracle = oracle_distance(&x, &v) - oracle_distance(&p, &v);
        prop_assert_eq!(CayleyTree.busemann(&p, &xi, &x), oracle);
    }
}

#[test]
fn tree_orbit_of_a_with_offset_seed_is_case_two() {
    let m = CayleyTree;
    let a = TreeIsometry(Word::parse("a").unwrap());
    let seed = ProductPoint::new(TreePoint::origin(), TreePoint::vertex(Word::parse("b").unwrap()));
    let seq = StructuredSequence::Orbit { generator: a, seed };
    let cl = classify(&m, &seq).unwrap();
    assert_eq!(cl.case, Case::II);
    let (xi, eta, c) = phi_reg(&cl.limit.unwrap()).unwrap();
    // d(aⁿ, o) − d(aⁿ b, o) = n − (n + 1)
    assert_eq!(c, BigRational::from_integer((-1).into()));
    let axis = TreeIdeal::power(Letter::from_char('a').unwrap());
    assert!(m.ideals_eq(&xi, &axis) && m.ideals_eq(&eta, &axis));
}

#[test]
fn geodesic_pairs_converge_to_their_own_boundary_point() {
    let m = PoincareDisk::default();
    for (plus, minus, offset) in [(0.3, 2.9, 0.0), (1.0, 4.0, 1.5), (5.0, 0.2, -2.0)] {
        let g = ParamGeodesic::new(&m, &DiskIdeal::new(plus), &DiskIdeal::new(minus), offset).unwrap();
        let cl = classify(&m, &StructuredSequence::GeodesicPair(g.clone())).unwrap();
        assert_eq!(cl.case, Case::II);
        let limit = cl.limit.unwrap();
        assert!(limit.approx_eq(&m, &f(&m, &g).unwrap()));
        let back = geodesic_of(&m, &limit).unwrap();
        assert!(m.distance(&back.base_point(&m).unwrap(), &g.base_point(&m).unwrap()) < 1e-9);
        assert!((back.offset() - g.offset()).abs() < 1e-9);
        assert!(matches!(limit, MaxBoundaryPoint::Regular { .. }));
    }
}
