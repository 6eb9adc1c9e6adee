use num_complex::Complex64;
use proptest::prelude::*;
use zn_schottky::moebius::{
    classify, fixed_points, image_circle, make_elliptic, ComplexPoint, FixedSet, GeneralizedCircle, MapClass,
    Orientation, TransformMap,
};

fn complex() -> impl Strategy<Value = Complex64> {
    (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn unimodular(orientation: Orientation) -> impl Strategy<Value = TransformMap> {
    (complex(), complex(), complex(), complex())
        .prop_filter_map("well conditioned", move |(a, b, c, d)| {
            let det = a * d - b * c;
            if det.norm() < 0.2 {
                return None;
            }
            TransformMap::new(a, b, c, d, orientation).ok()
        })
}

fn any_map() -> impl Strategy<Value = TransformMap> {
    prop_oneof![unimodular(Orientation::Preserving), unimodular(Orientation::Reversing)]
}

/// Unit-scale maps: a rotation, a mild dilation, and another rotation.
fn unit_scale() -> impl Strategy<Value = TransformMap> {
    (0.0f64..6.3, 0.0f64..6.3, 0.0f64..6.3, 1.0f64..1.3, any::<bool>()).prop_map(|(t1, t2, t3, lam, rev)| {
        let u = |t: f64| {
            TransformMap::conformal(
                Complex64::new(t.cos(), 0.0),
                Complex64::new(0.0, t.sin()),
                Complex64::new(0.0, t.sin()),
                Complex64::new(t.cos(), 0.0),
            )
            .unwrap()
        };
        let m = u(t1)
            .compose(&TransformMap::scaling(Complex64::from_polar(lam, t2)))
            .compose(&u(t3));
        if rev {
            m.compose(&TransformMap::conjugation())
        } else {
            m
        }
    })
}

fn circle() -> impl Strategy<Value = GeneralizedCircle> {
    (complex(), 0.2f64..2.0).prop_map(|(c, r)| GeneralizedCircle::from_center_radius(c, r))
}

fn same_class(x: &MapClass, y: &MapClass) -> bool {
    match (x, y) {
        (MapClass::Loxodromic { multiplier: m1 }, MapClass::Loxodromic { multiplier: m2 }) => {
            (m1 - m2).norm() < 1e-6 * m1.norm() || (m1 - m2.conj()).norm() < 1e-6 * m1.norm()
        }
        _ => x == y,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn det_stays_normalized(maps in prop::collection::vec(unit_scale(), 1..=20)) {
        let product = maps.iter().fold(TransformMap::identity(), |acc, m| acc.compose(m));
        prop_assert!((product.det() - Complex64::new(1.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn classification_is_conjugation_invariant(
        k in 2u32..12, s in 1u32..12, lam in 1.5f64..5.0, pick in 0usize..5, h in any_map()
    ) {
        let rot = Complex64::from_polar(1.0, std::f64::consts::TAU * (s % k) as f64 / k as f64);
        let f = match pick {
            0 => TransformMap::scaling(rot),
            1 => TransformMap::scaling(Complex64::new(lam, 0.0) * rot),
            2 => TransformMap::glide_scaling(Complex64::new(lam, 0.0)),
            3 => TransformMap::anticonformal(Complex64::new(0.0, 0.0), rot, Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)).unwrap(),
            _ => TransformMap::translation(Complex64::new(1.0, 0.0)),
        };
        let before = classify(&f);
        let after = classify(&f.conjugate_by(&h));
        match (before, after) {
            (Ok(x), Ok(y)) => prop_assert!(same_class(&x, &y), "{:?} vs {:?}", x, y),
            (Ok(MapClass::Parabolic), Err(_)) | (Ok(MapClass::PseudoParabolic), Err(_)) => {}
            (x, y) => prop_assert!(false, "{:?} vs {:?}", x, y),
        }
    }

    #[test]
    fn reversing_square_consistency(f in unimodular(Orientation::Reversing)) {
        let sq = f.compose(&f);
        match (classify(&f), classify(&sq)) {
            (Ok(MapClass::PseudoElliptic { order }), Ok(MapClass::Elliptic { order: o2 })) => {
                prop_assert_eq!(order, o2.map(|k| 2 * k));
            }
            (Ok(MapClass::GlideReflection), Ok(MapClass::Loxodromic { multiplier })) => {
                prop_assert!(multiplier.im.abs() < 1e-6 * multiplier.norm());
                prop_assert!(multiplier.re > 0.0);
            }
            (Ok(MapClass::Reflection | MapClass::ImaginaryReflection), Ok(MapClass::Identity)) => {}
            (Ok(MapClass::PseudoParabolic), Ok(MapClass::Parabolic)) => {}
            (Err(_), Err(_)) => {}
            (x, y) => prop_assert!(false, "{:?} with square {:?}", x, y),
        }
    }

    #[test]
    fn image_circle_respects_composition(f in any_map(), g in any_map(), c in circle()) {
        let lhs = image_circle(&f.compose(&g), &c);
        let rhs = image_circle(&f, &image_circle(&g, &c));
        prop_assert!(lhs.coefficient_distance(&rhs) < 1e-9);
    }

    #[test]
    fn image_circle_matches_points(f in any_map(), c in circle()) {
        let image = image_circle(&f, &c);
        for z in c.sample(3) {
            if let ComplexPoint::Finite(w) = f.apply(z.into()) {
                if w.norm() < 1e6 {
                    prop_assert!(image.signed_distance(w).abs() < 1e-9 * (1.0 + w.norm_sqr()));
                }
            }
        }
    }

    #[test]
    fn fixed_points_are_fixed(f in unimodular(Orientation::Preserving)) {
        if let Ok(FixedSet::Points(points)) = fixed_points(&f) {
            for p in points {
                prop_assert!(f.apply(p).chordal_distance(p) < 1e-9);
            }
        }
    }

    #[test]
    fn elliptic_power_is_identity(p in complex(), q in complex(), k in 2u32..20) {
        prop_assume!((p - q).norm() > 0.1);
        let e = make_elliptic(ComplexPoint::Finite(p), ComplexPoint::Finite(q), k).unwrap();
        prop_assert!(e.pow(k as i64).is_identity(1e-9));
        prop_assert_eq!(classify(&e).unwrap(), MapClass::Elliptic { order: Some(k) });
    }
}
