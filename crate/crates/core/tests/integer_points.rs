use latbox::integer_points::{
    brute_force_classified, brute_force_interior_points, heuristic_stats, pick_interior_count,
    tetrahedron_form_point, tetrahedron_interior_point, triangle_interior_point, PointClass,
    Simplex, TetraResolution, TriangularForm3, DEFAULT_SCAN_BUDGET,
};
use latbox::IntPoint;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn p(c: &[i64]) -> IntPoint {
    IntPoint::new(c)
}

fn canonical_tet(f: &TriangularForm3) -> Simplex {
    Simplex::tetrahedron(p(&[0, 0, 0]), p(&[1, 0, 0]), p(&[0, 1, 0]), p(&[f.a, f.b, f.n])).unwrap()
}

#[test]
fn pick_matches_scan_on_random_triangles() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut done = 0;
    while done < 1000 {
        let v: Vec<IntPoint> =
            (0..3).map(|_| p(&[rng.random_range(-20..=20), rng.random_range(-20..=20)])).collect();
        let Ok(t) = Simplex::new(v) else { continue };
        let want = brute_force_interior_points(&t).unwrap().len() as i128;
        assert_eq!(pick_interior_count(&t).unwrap(), want, "{t:?}");
        done += 1;
    }
}

#[test]
fn triangle_points_agree_with_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut done = 0;
    while done < 1000 {
        let v: Vec<IntPoint> =
            (0..3).map(|_| p(&[rng.random_range(-20..=20), rng.random_range(-20..=20)])).collect();
        let Ok(t) = Simplex::new(v.clone()) else { continue };
        if (0..3).any(|i| (&v[(i + 1) % 3] - &v[i]).content() != 1) {
            continue;
        }
        let all = brute_force_interior_points(&t).unwrap();
        match triangle_interior_point(&t).unwrap() {
            Some(x) => assert!(all.contains(&x), "{t:?} -> {x:?}"),
            None => assert!(all.is_empty(), "{t:?}"),
        }
        done += 1;
    }
}

#[test]
fn form_sweep_matches_scan() {
    for n in 1..=64 {
        for a in 0..n {
            for b in a..n {
                let f = TriangularForm3 { a, b, n };
                if !f.edge_conditions_hold() || !f.face_conditions_hold() {
                    continue;
                }
                let interior = brute_force_interior_points(&canonical_tet(&f)).unwrap();
                let (pt, how) = tetrahedron_form_point(&f);
                assert_eq!(pt.is_none(), interior.is_empty(), "{f:?} {how:?}");
                assert_eq!(how.is_empty(), pt.is_none());
                if let Some(q) = pt {
                    assert!(interior.contains(&p(&q)), "{f:?} -> {q:?}");
                }
                if interior.is_empty() {
                    assert!(a == 1 || n < 4 || a + b == n, "unexpected empty {f:?}");
                }
            }
        }
    }
}

#[test]
fn footnote_forms_have_face_points_but_no_interior() {
    for (a, b, n) in [(2, 5, 9), (3, 5, 14)] {
        let f = TriangularForm3 { a, b, n };
        assert!(!f.face_conditions_hold());
        let all = brute_force_classified(&canonical_tet(&f), DEFAULT_SCAN_BUDGET).unwrap();
        assert!(all.iter().all(|(_, c)| *c != PointClass::Interior));
    }
}

#[test]
fn stats_regression_at_256() {
    let s = heuristic_stats(256);
    let combined = s.combined_fraction.unwrap();
    assert!(combined >= 0.90, "combined {combined}");
    let first: u64 = s.rows.iter().map(|r| r.first_solved).sum();
    assert_eq!(first, s.combined_solved);
}

fn unimodular(rng: &mut ChaCha8Rng) -> [[i64; 3]; 3] {
    let mut u = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    for _ in 0..5 {
        let (i, j) = (rng.random_range(0..3), rng.random_range(0..3));
        if i != j {
            let c = rng.random_range(-2..=2);
            for k in 0..3 {
                u[i][k] += c * u[j][k];
            }
        }
    }
    u
}

#[test]
fn tetrahedron_point_survives_unimodular_images() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let forms = [(2, 3, 7), (3, 4, 5), (2, 9, 13), (4, 7, 19), (5, 6, 17), (2, 3, 5)];
    for &(a, b, n) in &forms {
        for _ in 0..20 {
            let u = unimodular(&mut rng);
            let shift: Vec<i64> = (0..3).map(|_| rng.random_range(-5..=5)).collect();
            let map = |x: [i64; 3]| {
                let v: Vec<i64> = (0..3)
                    .map(|i| (0..3).map(|k| u[i][k] * x[k]).sum::<i64>() + shift[i])
                    .collect();
                IntPoint::from(v)
            };
            let t = Simplex::tetrahedron(
                map([0, 0, 0]),
                map([1, 0, 0]),
                map([0, 1, 0]),
                map([a, b, n]),
            )
            .unwrap();
            let all = brute_force_interior_points(&t).unwrap();
            match tetrahedron_interior_point(&t).unwrap() {
                Some(x) => assert!(all.contains(&x)),
                None => assert!(all.is_empty()),
            }
        }
    }
}

proptest! {
    #[test]
    fn embedded_triangles_agree_with_scan(
        v in prop::collection::vec(prop::array::uniform3(-8i64..=8), 3)
    ) {
        let pts: Vec<IntPoint> = v.iter().map(|c| p(c)).collect();
        let Ok(t) = Simplex::new(pts.clone()) else { return Ok(()) };
        prop_assume!((0..3).all(|i| (&pts[(i + 1) % 3] - &pts[i]).content() == 1));
        let all = brute_force_interior_points(&t).unwrap();
        match triangle_interior_point(&t).unwrap() {
            Some(x) => prop_assert!(all.contains(&x)),
            None => prop_assert!(all.is_empty()),
        }
    }
}

#[test]
fn resolution_kinds_are_reported() {
    let (_, how) = tetrahedron_form_point(&TriangularForm3 { a: 2, b: 9, n: 13 });
    assert!(!how.is_empty());
    assert_ne!(how, TetraResolution::UnitWeights);
}
