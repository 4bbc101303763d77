mod common;

use common::{f_ab, family, w, StairSpec};
use mixres::face::{classify_face_type, degrees, face_function, FaceType};
use mixres::fan::{canonical_subdivision, face_intersection_identity, is_admissible, regular_refinement};
use mixres::lattice::{det2, dot};
use mixres::newton::{self, dual_diagram, face, newton_boundary, weight_min};
use mixres::{MixedPolynomial, WeightVector};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn staircase() -> impl Strategy<Value = MixedPolynomial> {
    any::<u64>().prop_map(|seed| StairSpec::random(&mut ChaCha8Rng::seed_from_u64(seed)).build())
}

fn weight() -> impl Strategy<Value = WeightVector> {
    (0i64..=12, 0i64..=12)
        .prop_filter("nonzero", |(a, b)| a + b > 0)
        .prop_map(|(a, b)| w(&[a, b]))
}

fn raw_min(f: &MixedPolynomial, p: &[i64]) -> i64 {
    f.terms().iter().map(|t| dot(p, &t.exps.radial())).min().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn face_points_attain_the_minimum(f in staircase(), p in weight()) {
        let fc = face(&f, &p).unwrap();
        prop_assert_eq!(fc.d, weight_min(&f, &p).unwrap());
        for s in newton::support(&f).unwrap() {
            let v = p.dot(&s.point);
            if fc.contains(&s.point) {
                prop_assert_eq!(v, fc.d);
            } else {
                prop_assert!(v > fc.d);
            }
        }
        prop_assert_eq!(fc.recession, p.zero_indices());
    }

    #[test]
    fn faces_are_invariant_under_scaling(f in staircase(), p in weight(), k in 1i64..=7) {
        let raw = p.scaled(k);
        prop_assert_eq!(raw_min(&f, &raw), k * weight_min(&f, &p).unwrap());
        let scaled_points: Vec<Vec<i64>> = newton::support(&f)
            .unwrap()
            .into_iter()
            .map(|s| s.point)
            .filter(|x| dot(&raw, x) == raw_min(&f, &raw))
            .collect();
        prop_assert_eq!(scaled_points, face(&f, &p).unwrap().points);
    }

    #[test]
    fn radial_degree_is_the_weight_minimum(f in staircase(), p in weight()) {
        prop_assume!(p.is_strictly_positive());
        let rec = degrees(&f, &p).unwrap();
        prop_assert_eq!(rec.rdeg, weight_min(&f, &p).unwrap());
        prop_assert!(!face_function(&f, &p).unwrap().is_zero());
        if let Some(pdeg) = rec.pdeg {
            prop_assert_eq!((rec.rdeg + pdeg).rem_euclid(2), 0);
            prop_assert!(pdeg.abs() <= rec.rdeg);
        }
    }

    #[test]
    fn axis_weights_see_only_the_other_variables(f in staircase()) {
        for j in 0..2 {
            let e = WeightVector::unit(2, j);
            prop_assert_eq!(weight_min(&f, &e).unwrap(), 0);
            let fc = face(&f, &e).unwrap();
            for t in f.terms().iter().filter(|t| fc.contains(&t.exps.radial())) {
                prop_assert_eq!((t.exps.nu[j], t.exps.mu[j]), (0, 0));
            }
        }
    }

    #[test]
    fn staircase_walk(f in staircase()) {
        let b = newton_boundary(&f).unwrap();
        let dual = dual_diagram(&f).unwrap();
        for pair in dual.edge_normals.windows(2) {
            prop_assert!(pair[0].as_slice()[1] * pair[1].as_slice()[0] < pair[1].as_slice()[1] * pair[0].as_slice()[0]);
        }
        // Slope order walks the staircase from the z2 axis towards z1.
        let walk: Vec<&Vec<i64>> = b.vertices.iter().rev().collect();
        for (i, pair) in dual.edge_normals.windows(2).enumerate() {
            let v = walk[i + 1];
            let corner = face(&f, &pair[0].primitive_sum(&pair[1])).unwrap().points;
            prop_assert_eq!(corner, vec![v.clone()]);
        }
    }

    #[test]
    fn canonical_fan_properties(f in staircase()) {
        let s = canonical_subdivision(&f).unwrap();
        prop_assert!(s.is_regular());
        prop_assert!(s.covers_orthant_2d());
        for c in &s.max_cones {
            prop_assert!(is_admissible(c, &f).unwrap());
            prop_assert!(face_intersection_identity(c, &f).unwrap());
            let p_tau = c.interior_point();
            let d_sum: i64 = c.vertices().iter().map(|v| weight_min(&f, v).unwrap()).sum();
            prop_assert_eq!(raw_min(&f, &p_tau), d_sum);
            let tau_face = face(&f, &w(&p_tau)).unwrap().points;
            for v in c.vertices() {
                let vf = face(&f, v).unwrap().points;
                prop_assert!(tau_face.iter().all(|x| vf.contains(x)));
            }
        }
        for v in s.vertices() {
            let axis = v.as_slice() == [1, 0] || v.as_slice() == [0, 1];
            prop_assert!(axis || v.is_strictly_positive());
        }
    }

    #[test]
    fn refinement_terminates_with_decreasing_determinants(a in weight(), b in weight()) {
        let (a, b) = if det2(a.as_slice(), b.as_slice()) >= 0 { (a, b) } else { (b, a) };
        let d = det2(a.as_slice(), b.as_slice());
        prop_assume!(d >= 1);
        let inserted = regular_refinement(&a, &b);
        prop_assert!((inserted.len() as i64) < d);
        let mut prev = d;
        let mut cur = a.clone();
        for v in &inserted {
            prop_assert_eq!(det2(cur.as_slice(), v.as_slice()), 1);
            let rest = det2(v.as_slice(), b.as_slice());
            prop_assert!((0..prev).contains(&rest));
            prev = rest;
            cur = v.clone();
        }
        prop_assert_eq!(det2(cur.as_slice(), b.as_slice()), 1);
    }
}

#[test]
fn family_faces_match_the_table_layout() {
    for (a, b) in family() {
        let f = f_ab(a, b);
        let verdict = classify_face_type(&f).unwrap();
        assert_eq!(verdict.verdict, FaceType::StronglyPolarNonNegative);
        let weights: Vec<WeightVector> = verdict.table.iter().map(|r| r.weight.clone()).collect();
        let want: Vec<WeightVector> = [[2, 1], [3, 2], [1, 1], [3, 4], [2, 3], [1, 2]]
            .iter()
            .map(|p| w(p))
            .collect();
        assert_eq!(weights, want);
        assert!(!newton_boundary(&f).unwrap().on_boundary(&[4, 3]));
    }
}
