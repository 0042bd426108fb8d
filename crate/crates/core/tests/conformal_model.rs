use clifford_core::conformal::{
    e_inf, embed_point, euclidean, extract_point, extract_round_params, ipns_sphere, point_distance, rotor,
    round_from_points, sphere_center, translator, Kind, Point3,
};
use clifford_core::Multivector;
use proptest::prelude::*;

fn point() -> impl Strategy<Value = Point3> {
    prop::array::uniform3(-10.0..10.0f64)
}

fn unit_direction() -> impl Strategy<Value = Point3> {
    prop::array::uniform3(-1.0..1.0f64)
        .prop_filter("non-zero", |v| v.iter().map(|c| c * c).sum::<f64>() > 1e-2)
        .prop_map(|v| {
            let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
            v.map(|c| c / n)
        })
}

fn dist(a: Point3, b: Point3) -> f64 {
    a.iter().zip(&b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

fn on_sphere(c: Point3, r: f64, u: Point3) -> Point3 {
    [c[0] + r * u[0], c[1] + r * u[1], c[2] + r * u[2]]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn embedded_points_are_null(x in point()) {
        let p = embed_point(x);
        let mag = 1.0 + x.iter().map(|c| c * c).sum::<f64>().powi(2);
        prop_assert!((p.mv() * p.mv()).max_abs() <= 1e-10 * mag);
        prop_assert!((p.mv().left_contraction(&e_inf()).unwrap().scalar_part() + 1.0).abs() <= 1e-10);
    }

    #[test]
    fn translation_moves_points(x in point(), t in point()) {
        let moved = translator(t).apply(embed_point(x).mv()).unwrap();
        let expected = [x[0] + t[0], x[1] + t[1], x[2] + t[2]];
        let got = extract_point(&clifford_core::conformal::ConformalObject::classify(moved, clifford_core::Interpretation::Opns).unwrap()).unwrap();
        prop_assert!(dist(got, expected) <= 1e-9 * (1.0 + dist(expected, [0.0; 3])));
    }

    #[test]
    fn rotation_commutes_with_embedding(x in point(), axis in unit_direction(), angle in -3.0..3.0f64) {
        let r = rotor(axis, angle).unwrap();
        let turned = r.apply(&euclidean(x)).unwrap();
        let rx = [turned.get(1), turned.get(2), turned.get(4)];
        let lhs = embed_point(rx).into_mv();
        let rhs = r.apply(embed_point(x).mv()).unwrap();
        prop_assert!(lhs.approx_eq(&rhs, 1e-12));
    }

    #[test]
    fn inner_product_is_squared_distance(x in point(), a in point()) {
        let ip = embed_point(x).mv().left_contraction(embed_point(a).mv()).unwrap().scalar_part();
        let d = dist(x, a);
        prop_assert!((ip + 0.5 * d * d).abs() <= 1e-10 * (1.0 + d * d));
        prop_assert!((point_distance(&embed_point(x), &embed_point(a)).unwrap() - d).abs() <= 1e-9 * (1.0 + d));
    }

    #[test]
    fn spheres_through_four_points(
        c in point(),
        r in 0.1..10.0f64,
        dirs in prop::array::uniform4(unit_direction()),
    ) {
        // reject nearly coplanar quadruples, which are ill-conditioned
        let p: Vec<Point3> = dirs.iter().map(|u| on_sphere(c, r, *u)).collect();
        let sub = |a: Point3, b: Point3| [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
        let (u, v, w) = (sub(p[1], p[0]), sub(p[2], p[0]), sub(p[3], p[0]));
        let vol = u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0]) + u[2] * (v[0] * w[1] - v[1] * w[0]);
        prop_assume!(vol.abs() > 0.05 * r.powi(3));

        let s = round_from_points(&p.iter().map(|x| embed_point(*x)).collect::<Vec<_>>()).unwrap();
        prop_assert_eq!(s.kind(), Kind::Sphere);
        let params = extract_round_params(&s).unwrap();
        prop_assert!(dist(params.center, c) <= 1e-7 * (r + dist(c, [0.0; 3])));
        prop_assert!((params.radius() - r).abs() <= 1e-7 * r);
        prop_assert!(!params.is_imaginary());

        let dual = s.mv().dual().unwrap();
        let ipns = ipns_sphere(params.center, params.radius()).unwrap();
        let ratio = dual.scalar_product(ipns.mv()).unwrap() / ipns.mv().scalar_product(ipns.mv()).unwrap();
        prop_assert!(dual.approx_eq(&ipns.mv().scale(ratio), 1e-7));
    }

    #[test]
    fn sphere_center_formula(c in point(), r in 0.1..10.0f64) {
        let centre = sphere_center(&ipns_sphere(c, r).unwrap()).unwrap();
        prop_assert!(dist(extract_point(&centre).unwrap(), c) <= 1e-8 * (1.0 + dist(c, [0.0; 3])));
    }

    #[test]
    fn circles_through_three_points(c in point(), r in 0.1..10.0f64, a in 0.0..2.0f64, b in 2.1..4.0f64, d in 4.2..6.2f64) {
        // circle in the plane z = c.z
        let at = |t: f64| embed_point([c[0] + r * t.cos(), c[1] + r * t.sin(), c[2]]);
        let circle = round_from_points(&[at(a), at(b), at(d)]).unwrap();
        prop_assert_eq!(circle.kind(), Kind::Circle);
        let params = extract_round_params(&circle).unwrap();
        prop_assert!(dist(params.center, c) <= 1e-7 * (r + dist(c, [0.0; 3])));
        prop_assert!((params.radius() - r).abs() <= 1e-7 * r);
        let carrier = params.direction.scale(1.0 / params.direction.get(0b011));
        prop_assert!(carrier.approx_eq(&Multivector::basis(carrier.sig(), 0b011).unwrap(), 1e-8));
        prop_assert!(circle.contains(&at(1.0 + a)).unwrap());
    }
}

#[test]
fn translators_compose_and_invert() {
    let t = translator([1.0, -2.0, 0.5]);
    let u = translator([-1.0, 2.0, -0.5]);
    let id = t.then(&u).unwrap();
    assert!(id.value().approx_eq(&Multivector::one(id.value().sig()), 1e-15));
    assert!(t.is_spin_plus());
}
