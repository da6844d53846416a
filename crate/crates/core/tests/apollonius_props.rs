mod common;

use common::{set_distance, RigidMotion};
use proptest::prelude::*;
use vieta::apollonius::{similitude_center, solve_ccc, SimilitudeKind, TangencyOrientation};
use vieta::geometry::{Circle, Point};

fn circle(x: f64, y: f64, r: f64) -> Circle {
    Circle::new(Point::new(x, y), r).unwrap()
}

fn generic() -> [Circle; 3] {
    [circle(0.0, 0.0, 1.0), circle(4.0, 0.0, 1.0), circle(2.0, 3.0, 1.0)]
}

fn motion() -> impl Strategy<Value = RigidMotion> {
    (0.0f64..std::f64::consts::TAU, any::<bool>(), -20.0f64..20.0, -20.0f64..20.0)
        .prop_map(|(angle, reflect, x, y)| RigidMotion { angle, reflect, shift: Point::new(x, y) })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn solutions_move_with_the_inputs(m in motion()) {
        let [a, b, c] = generic();
        let base: Vec<Circle> = solve_ccc(&a, &b, &c).unwrap().iter().map(|s| m.circle(&s.circle)).collect();
        let moved: Vec<Circle> = solve_ccc(&m.circle(&a), &m.circle(&b), &m.circle(&c))
            .unwrap()
            .iter()
            .map(|s| s.circle)
            .collect();
        prop_assert!(set_distance(&base, &moved) <= 1e-9);
    }

    #[test]
    fn similitude_centers_divide_in_the_radius_ratio(
        x1 in -5.0f64..5.0, y1 in -5.0f64..5.0, r1 in 0.2f64..3.0,
        x2 in -5.0f64..5.0, y2 in -5.0f64..5.0, r2 in 0.2f64..3.0,
    ) {
        let (c1, c2) = (circle(x1, y1, r1), circle(x2, y2, r2));
        prop_assume!(c1.center.dist(c2.center) > 0.1 && (r1 - r2).abs() > 0.05);
        for kind in [SimilitudeKind::External, SimilitudeKind::Internal] {
            let s = similitude_center(&c1, &c2, kind).unwrap().point().unwrap();
            let (d1, d2) = (s - c1.center, s - c2.center);
            prop_assert!(d1.cross(d2).abs() <= 1e-8 * (1.0 + d1.norm() * d2.norm()));
            prop_assert!((d1.norm() * r2 - d2.norm() * r1).abs() <= 1e-9 * (1.0 + d1.norm() + d2.norm()));
            let same_side = d1.dot(d2) > 0.0;
            prop_assert_eq!(same_side, kind == SimilitudeKind::External);
        }
    }

    #[test]
    fn separated_triples_have_eight_tangent_circles(
        r in prop::collection::vec(0.2f64..1.0, 3),
        jitter in prop::collection::vec(-0.5f64..0.5, 6),
    ) {
        let cs = [
            circle(jitter[0], jitter[1], r[0]),
            circle(5.0 + jitter[2], jitter[3], r[1]),
            circle(2.0 + jitter[4], 4.0 + jitter[5], r[2]),
        ];
        let sols = solve_ccc(&cs[0], &cs[1], &cs[2]).unwrap();
        prop_assert_eq!(sols.len(), 8);
        for s in &sols {
            for (i, c) in cs.iter().enumerate() {
                let sigma = f64::from(s.orientation().0[i]);
                let want = (s.circle.radius + sigma * c.radius).abs();
                prop_assert!((s.circle.center.dist(c.center) - want).abs() <= 1e-9);
            }
        }
        let mut seen: Vec<TangencyOrientation> = sols.iter().flat_map(|s| s.orientations.clone()).collect();
        seen.sort();
        seen.dedup();
        prop_assert_eq!(seen.len(), 8);
    }
}

#[test]
fn soddy_radii_follow_descartes() {
    // three mutually tangent unit circles: curvatures k4 = 3 ± 2√3
    let h = 3f64.sqrt();
    let sols = solve_ccc(&circle(0.0, 0.0, 1.0), &circle(2.0, 0.0, 1.0), &circle(1.0, h, 1.0)).unwrap();
    let mut radii: Vec<f64> = sols.iter().map(|s| s.circle.radius).collect();
    radii.sort_by(f64::total_cmp);
    assert_eq!(radii.len(), 2);
    let k = [3.0 + 2.0 * h, 3.0 - 2.0 * h];
    assert!((radii[0] - 1.0 / k[0]).abs() <= 1e-9);
    assert!((radii[1] - 1.0 / k[1].abs()).abs() <= 1e-9);
}
