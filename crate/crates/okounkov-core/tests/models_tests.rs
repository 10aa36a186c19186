//! Chamber structure, predicted bodies, the nodal cubic pipeline, and the
//! toric counting oracle.

use okounkov_core::bodies::to_quad_body;
use okounkov_core::field::{ExactField, Quad};
use okounkov_core::models::{
    chamber_of, d_of, d_sequence, predicted_body, ChamberIndex, NodalCubicModel,
    ProbeOutcome, ToricSurfaceModel,
};
use okounkov_core::series::TieBreak;
use okounkov_core::wfield::{rat, WeightBasis, WeightVector};

fn wv(ints: &[i64]) -> WeightVector {
    WeightVector::from_ints(ints).unwrap()
}

#[test]
fn degree_sequence() {
    assert_eq!(d_sequence(0, 5), vec![1, 1, 2, 5, 13, 34]);
    assert_eq!(d_of(-1), 2);
    assert_eq!(d_of(-2), 5);
    // The defining recurrence in both directions.
    for n in -4..6 {
        assert_eq!(d_of(n + 1), 3 * d_of(n) - d_of(n - 1));
    }
}

#[test]
fn chamber_location() {
    assert_eq!(chamber_of(&wv(&[1, 1])).unwrap(), ChamberIndex::Chamber(0));
    assert_eq!(chamber_of(&wv(&[3, 1])).unwrap(), ChamberIndex::Chamber(1));
    assert_eq!(chamber_of(&wv(&[11, 2])).unwrap(), ChamberIndex::Chamber(2));
    assert_eq!(chamber_of(&wv(&[1, 3])).unwrap(), ChamberIndex::Chamber(-1));
    assert_eq!(chamber_of(&wv(&[7, 1])).unwrap(), ChamberIndex::IrrationalRight);
    assert_eq!(chamber_of(&wv(&[1, 7])).unwrap(), ChamberIndex::IrrationalLeft);
    // Ratio 2 = d_3 / d_1 sits exactly on a wall.
    assert!(chamber_of(&wv(&[2, 1])).is_err());
    // A golden-ratio-squared weight lands in the irrational regime.
    let basis = WeightBasis::with_sqrt(5).unwrap();
    let phi4 = basis.scalar(vec![rat(7, 2), rat(3, 2)]).unwrap();
    let one = basis.rational_scalar(rat(1, 1)).unwrap();
    let alpha = WeightVector::new(vec![phi4.add(&one).unwrap(), one]).unwrap();
    assert_eq!(chamber_of(&alpha).unwrap(), ChamberIndex::IrrationalRight);
}

#[test]
fn predicted_triangles() {
    // Chamber n: triangle (0,0), (d_n/d_{n+1}, 0), (0, d_{n+1}/d_n).
    let body = predicted_body(&wv(&[3, 1])).unwrap();
    assert!(body.contains(&[Quad::rational(rat(1, 2)), Quad::zero()]));
    assert!(body.contains(&[Quad::zero(), Quad::from_int(2)]));
    assert_eq!(body.volume(), Quad::rational(rat(1, 2)));
    assert_eq!(body.vertices().len(), 3);
    let quad = predicted_body(&wv(&[7, 1])).unwrap();
    assert_eq!(quad.vertices().len(), 4);
    assert_eq!(quad.volume(), Quad::rational(rat(1, 2)));
    assert!(quad.contains(&[Quad::rational(rat(1, 3)), Quad::rational(rat(1, 3))]));
}

#[test]
fn nodal_first_level() {
    // Degree 1 in chamber 1: values 0, 1, 2 along the second axis.
    let mut model = NodalCubicModel::standard().unwrap();
    let mut g1 = model.gamma_m(1, &wv(&[3, 1]), TieBreak::Lex).unwrap();
    g1.sort();
    assert_eq!(g1, vec![vec![0, 0], vec![0, 1], vec![0, 2]]);
}

#[test]
fn unicuspidal_members() {
    // Degree d_n sections with value (0, d_{n+1}) exist in low chambers.
    let mut model = NodalCubicModel::standard().unwrap();
    match model.unicuspidal_probe(1, &wv(&[3, 1]), TieBreak::Lex).unwrap() {
        ProbeOutcome::Found { degree, nu } => {
            assert_eq!(degree, 1);
            assert_eq!(nu, (0, 2));
        }
        other => panic!("probe missed at n = 1: {other:?}"),
    }
    match model.unicuspidal_probe(2, &wv(&[11, 2]), TieBreak::Lex).unwrap() {
        ProbeOutcome::Found { degree, nu } => {
            assert_eq!(degree, 2);
            assert_eq!(nu, (0, 5));
        }
        other => panic!("probe missed at n = 2: {other:?}"),
    }
}

#[test]
fn nodal_body_matches_prediction() {
    let mut model = NodalCubicModel::standard().unwrap();
    let alpha = wv(&[1, 1]);
    let body = model.body(2, &alpha, TieBreak::Lex).unwrap();
    assert_eq!(to_quad_body(&body), predicted_body(&alpha).unwrap());
}

#[test]
fn toric_counts_and_values() {
    let p2 = ToricSurfaceModel::projective_plane();
    for m in 0..=6u32 {
        assert_eq!(p2.n_m(m), ((m + 1) * (m + 2) / 2) as usize);
    }
    // Distinct values, all componentwise nonnegative with zero minima.
    let g = p2.gamma(&[2, 1], &[1, 1], 4).unwrap();
    let mut sorted = g.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), g.len());
    for i in 0..2 {
        assert_eq!(g.iter().map(|p| p[i]).min(), Some(0));
    }
    // A singular functional pair is rejected.
    assert!(p2.gamma(&[1, 1], &[2, 2], 2).is_err());
}

#[test]
fn custom_cubic_through_generic_path() {
    // 2 y^2 z = 8 x^2 z + x^3 has branches y = -+ 2x sqrt(1 + x/8); the
    // slow generic factorization must agree with the default pipeline's
    // counting behaviour at small degrees.
    let mut model = NodalCubicModel::new(&[
        ([0, 2, 1], rat(2, 1)),
        ([2, 0, 1], rat(-8, 1)),
        ([3, 0, 0], rat(-1, 1)),
    ])
    .unwrap();
    let g = model.gamma_upto(3, &wv(&[1, 1]), TieBreak::Lex).unwrap();
    for (&m, pts) in &g {
        assert_eq!(pts.len(), ((m + 1) * (m + 2) / 2) as usize);
    }
}
