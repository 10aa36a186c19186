//! Convex hulls, slices, volume functions, and limit bodies.

use okounkov_core::bodies::{
    okounkov_body, sequence_limits, to_quad_body, volume_function, BodySequence, Polytope,
};
use okounkov_core::field::{ExactField, Quad};
use okounkov_core::wfield::{rat, Rat};
use proptest::prelude::*;
use std::collections::BTreeMap;

fn pt(x: Rat, y: Rat) -> Vec<Rat> {
    vec![x, y]
}

fn tri() -> Polytope<Rat> {
    Polytope::hull(
        2,
        &[pt(rat(0, 1), rat(0, 1)), pt(rat(1, 1), rat(0, 1)), pt(rat(0, 1), rat(1, 1))],
    )
    .unwrap()
}

#[test]
fn hull_drops_interior_points() {
    let p = Polytope::hull(
        2,
        &[
            pt(rat(0, 1), rat(0, 1)),
            pt(rat(1, 1), rat(0, 1)),
            pt(rat(0, 1), rat(1, 1)),
            pt(rat(1, 4), rat(1, 4)),
        ],
    )
    .unwrap();
    assert_eq!(p.vertices().len(), 3);
    assert!(p.contains(&pt(rat(1, 4), rat(1, 4))));
    assert!(!p.contains(&pt(rat(3, 4), rat(3, 4))));
}

#[test]
fn quadrilateral_area() {
    // All four listed points are extremal; the area is 1/2.
    let p = Polytope::hull(
        2,
        &[
            pt(rat(0, 1), rat(0, 1)),
            pt(rat(3, 8), rat(0, 1)),
            pt(rat(1, 3), rat(1, 3)),
            pt(rat(0, 1), rat(21, 8)),
        ],
    )
    .unwrap();
    assert_eq!(p.vertices().len(), 4);
    assert_eq!(p.volume(), rat(1, 2));
}

#[test]
fn slice_of_unit_triangle() {
    // {x + y >= 1/2} in the unit triangle has area 3/8.
    let s = tri().clip(&[rat(1, 1), rat(1, 1)], &rat(1, 2)).unwrap();
    assert_eq!(s.volume(), rat(3, 8));
    // Slices nest as the threshold grows.
    let s2 = tri().clip(&[rat(1, 1), rat(1, 1)], &rat(3, 4)).unwrap();
    assert!(s.contains_body(&s2));
}

#[test]
fn hull_idempotent() {
    let p = tri();
    let again = Polytope::hull(2, p.vertices()).unwrap();
    assert_eq!(p, again);
}

#[test]
fn volume_function_closed_form() {
    // Unit triangle, direction (1, 0): V(t) = (1 - t)^2 / 2.
    let body = to_quad_body(&tri());
    let vf = volume_function(&body, &[Quad::one(), Quad::zero()]).unwrap();
    let half = Quad::rational(rat(1, 2));
    for (n, d) in [(0i64, 1i64), (1, 4), (1, 2), (2, 3), (1, 1)] {
        let t = Quad::rational(rat(n, d));
        let one_minus = Quad::one().sub(&t);
        let expect = one_minus.mul(&one_minus).mul(&half);
        assert_eq!(vf.eval(&t), expect, "V({n}/{d})");
    }
    // Exact integrals of the pieces.
    let full = vf.integrate(&Quad::zero(), &Quad::one()).unwrap();
    assert_eq!(full, Quad::rational(rat(1, 6)));
    let tail = vf.integrate(&half, &Quad::one()).unwrap();
    assert_eq!(tail, Quad::rational(rat(1, 48)));
}

#[test]
fn volume_function_matches_slices() {
    let body = to_quad_body(&tri());
    let dir = [Quad::from_int(3), Quad::one()];
    let vf = volume_function(&body, &dir).unwrap();
    for k in 0..=12i64 {
        let t = rat(k, 4);
        let slice = tri()
            .clip(&[rat(3, 1), rat(1, 1)], &t)
            .unwrap()
            .volume();
        assert_eq!(vf.eval(&Quad::rational(t)), Quad::rational(slice), "t = {k}/4");
    }
}

#[test]
fn normalized_value_hull() {
    // Values (m, points) normalized by 1/m and hulled together.
    let mut gammas: BTreeMap<u32, Vec<Vec<i64>>> = BTreeMap::new();
    gammas.insert(1, vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
    gammas.insert(2, vec![vec![0, 0], vec![2, 0], vec![0, 3]]);
    let body = okounkov_body(&gammas, 2).unwrap();
    assert_eq!(body.volume(), rat(3, 4));
    assert!(body.contains(&pt(rat(0, 1), rat(3, 2))));
}

#[test]
fn log_concavity_of_slice_volumes() {
    // V((s + t)/2)^2 >= V(s) V(t) on the support, a consequence of
    // convexity of the body (checked on a rational grid).
    let body = to_quad_body(&tri());
    let vf = volume_function(&body, &[Quad::one(), Quad::one()]).unwrap();
    for i in 0..=8i64 {
        for j in i..=8i64 {
            let s = Quad::rational(rat(i, 8));
            let t = Quad::rational(rat(j, 8));
            let mid = s.add(&t).mul(&Quad::rational(rat(1, 2)));
            let lhs = vf.eval(&mid);
            let lhs = lhs.mul(&lhs);
            let rhs = vf.eval(&s).mul(&vf.eval(&t));
            assert!(lhs.sub(&rhs).sign() >= 0, "midpoint {i},{j}/8");
        }
    }
}

proptest! {
    #[test]
    fn positive_volume_limits_coincide(
        coords in proptest::collection::vec((-3i64..6, -3i64..6), 3..7),
        slopes in proptest::collection::vec((-2i64..3, -2i64..3), 10),
    ) {
        // Affine tails of full-dimensional bodies: pointwise and cofinite
        // limits agree with the hull of the base points.
        let mut base: Vec<Vec<Rat>> = vec![
            pt(rat(0, 1), rat(0, 1)),
            pt(rat(4, 1), rat(0, 1)),
            pt(rat(0, 1), rat(4, 1)),
        ];
        for (x, y) in &coords {
            base.push(pt(rat(*x, 1), rat(*y, 1)));
        }
        let slope: Vec<Vec<Rat>> = base
            .iter()
            .enumerate()
            .map(|(i, _)| pt(rat(slopes[i].0, 1), rat(slopes[i].1, 1)))
            .collect();
        let expected = Polytope::hull(2, &base).unwrap();
        let seq = BodySequence::AffineTail { dim: 2, base, slope };
        let lim = sequence_limits(&seq).unwrap();
        prop_assert_eq!(&lim.pointwise, &expected);
        prop_assert_eq!(&lim.cofinite, &expected);
        prop_assert!(lim.equal_volume);
    }
}
