//! Jumping tables, the two S-invariant routes, rounding, and monomial
//! log-canonical thresholds.

use okounkov_core::bodies::{okounkov_body, to_quad_body, volume_function};
use okounkov_core::field::{ExactField, Quad};
use okounkov_core::filtration::{
    monomial_lct, n_round, q_tau, s_tau_body, JumpingTable,
};
use okounkov_core::models::ToricSurfaceModel;
use okounkov_core::wfield::{rat, WeightBasis, WeightVector};
use std::collections::BTreeMap;

fn plane_line_table(m_max: u32) -> JumpingTable {
    // Vanishing order along a line on the plane: jumps at degree m are
    // m, m-1, ..., each value j with multiplicity j + 1.
    let p2 = ToricSurfaceModel::projective_plane();
    let gam = p2.gamma_upto(&[1, 0], &[0, 1], m_max).unwrap();
    let alpha = WeightVector::rational(&[rat(1, 1)]).unwrap();
    JumpingTable::from_gamma(&gam, &alpha).unwrap()
}

#[test]
fn line_valuation_jumps() {
    let table = plane_line_table(2);
    let as_rats = |m: u32| -> Vec<i64> {
        table
            .row(m)
            .unwrap()
            .iter()
            .map(|s| {
                let r = s.as_rational().unwrap();
                assert!(r.is_integer());
                i64::try_from(r.to_integer()).unwrap()
            })
            .collect()
    };
    assert_eq!(as_rats(1), vec![1, 0, 0]);
    assert_eq!(as_rats(2), vec![2, 1, 1, 0, 0, 0]);
}

#[test]
fn partial_sums() {
    let table = plane_line_table(2);
    // S_{1,3} = (1 + 0 + 0) / (1 * 3), S_{2,2} = (2 + 1) / (2 * 2).
    assert_eq!(table.s_mk(1, 3).unwrap().as_rational(), Some(rat(1, 3)));
    assert_eq!(table.s_mk(2, 2).unwrap().as_rational(), Some(rat(3, 4)));
    // T_2 = 1.
    assert_eq!(table.s_mk(2, 1).unwrap().as_rational(), Some(rat(1, 1)));
}

#[test]
fn q_threshold_closed_form() {
    // V(t) = (1 - t)^2 / 2 on the unit simplex: Q_{1/4} = 1/2, Q_1 = 0.
    let p2 = ToricSurfaceModel::projective_plane();
    let gam = p2.gamma_upto(&[1, 0], &[0, 1], 1).unwrap();
    let body = to_quad_body(&okounkov_body(&gam, 2).unwrap());
    let vf = volume_function(&body, &[Quad::one(), Quad::zero()]).unwrap();
    let vol = body.volume();
    assert_eq!(q_tau(&vf, &rat(1, 4), &vol).unwrap(), Quad::rational(rat(1, 2)));
    assert_eq!(q_tau(&vf, &rat(1, 1), &vol).unwrap(), Quad::zero());
    // S^{1/4} = Q + (1 / (tau vol)) int_Q^T V = 1/2 + 8/48 = 2/3.
    assert_eq!(
        s_tau_body(&vf, &rat(1, 4), &vol).unwrap(),
        Quad::rational(rat(2, 3))
    );
    // tau = 0 degenerates to T.
    assert_eq!(s_tau_body(&vf, &rat(0, 1), &vol).unwrap(), Quad::one());
}

#[test]
fn rounding_to_integers() {
    // (1 + sqrt 5, sqrt 5, 0) floors to (3, 2, 0).
    let basis = WeightBasis::with_sqrt(5).unwrap();
    let mut table = JumpingTable::new();
    table
        .insert_row(
            1,
            vec![
                basis.scalar(vec![rat(1, 1), rat(1, 1)]).unwrap(),
                basis.scalar(vec![rat(0, 1), rat(1, 1)]).unwrap(),
                basis.zero(),
            ],
        )
        .unwrap();
    let rounded = n_round(&table).unwrap();
    let vals: Vec<_> = rounded
        .row(1)
        .unwrap()
        .iter()
        .map(|s| s.as_rational().unwrap())
        .collect();
    assert_eq!(vals, vec![rat(3, 1), rat(2, 1), rat(0, 1)]);
}

#[test]
fn monomial_thresholds() {
    // Principal parts div(x), div(xy), div(x^2 y^3).
    let lct = |data: &[(Vec<u32>, u32)]| monomial_lct(data).unwrap();
    assert_eq!(lct(&[(vec![1, 0], 1)]), rat(1, 1));
    assert_eq!(lct(&[(vec![1, 1], 1)]), rat(1, 1));
    assert_eq!(lct(&[(vec![2, 3], 1)]), rat(1, 3));
    // A multiplicity-2 component caps the threshold at 1/2.
    assert_eq!(lct(&[(vec![1, 0], 2)]), rat(1, 2));
}

#[test]
fn table_from_gamma_sorted_nonincreasing() {
    let mut gam: BTreeMap<u32, Vec<Vec<i64>>> = BTreeMap::new();
    gam.insert(3, vec![vec![0, 1], vec![2, 0], vec![1, 1]]);
    let alpha = WeightVector::from_ints(&[3, 1]).unwrap();
    let table = JumpingTable::from_gamma(&gam, &alpha).unwrap();
    let vals: Vec<_> = table
        .row(3)
        .unwrap()
        .iter()
        .map(|s| s.as_rational().unwrap())
        .collect();
    assert_eq!(vals, vec![rat(6, 1), rat(4, 1), rat(1, 1)]);
}
