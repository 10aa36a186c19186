//! Quasi-monomial valuations: values of sections, log discrepancies,
//! comparisons, and toroidal transforms.

use core::cmp::Ordering;
use okounkov_core::series::{TieBreak, TruncatedSeries};
use okounkov_core::valuation::{
    blowup_transform, compare_nu, log_discrepancy, nu_value, transform_point, FlagSpec,
    NuValuation, QmValuation,
};
use okounkov_core::wfield::{rat, Rat, WeightVector};

fn wv(ints: &[i64]) -> WeightVector {
    WeightVector::from_ints(ints).unwrap()
}

#[test]
fn section_values() {
    // nu(x^2 y + x^5) under alpha = (2, 1) with a trivial flag: the first
    // term has weight 5, the second 10.
    let nu = NuValuation::new(wv(&[2, 1]), FlagSpec::point(), TieBreak::Lex);
    let s: TruncatedSeries<Rat> = TruncatedSeries::monomial(2, 8, vec![2, 1], rat(1, 1))
        .add(&TruncatedSeries::monomial(2, 8, vec![5, 0], rat(1, 1)))
        .unwrap();
    assert_eq!(nu_value(&s, &nu).unwrap(), vec![2, 1]);
}

#[test]
fn value_comparison() {
    let alpha = wv(&[3, 1]);
    // Weights 3*1+2 = 5 vs 3*0+6 = 6.
    assert_eq!(
        compare_nu(&[1, 2], &[0, 6], &alpha, TieBreak::Lex).unwrap(),
        Ordering::Less
    );
    // Equal weight 6: lex on the exponents decides under Lex...
    assert_eq!(
        compare_nu(&[2, 0], &[1, 3], &alpha, TieBreak::Lex).unwrap(),
        Ordering::Greater
    );
    // ...and is rejected under Strict.
    assert!(compare_nu(&[2, 0], &[1, 3], &alpha, TieBreak::Strict).is_err());
}

#[test]
fn log_discrepancies() {
    // A(alpha) = sum alpha_i (1 - d_i).
    let v = QmValuation::new(wv(&[3, 1]));
    let a = log_discrepancy(&v, &[rat(0, 1), rat(0, 1)]).unwrap();
    assert_eq!(a.as_rational(), Some(rat(4, 1)));
    let a = log_discrepancy(&v, &[rat(1, 2), rat(1, 3)]).unwrap();
    assert_eq!(a.as_rational(), Some(rat(3, 2) + rat(2, 3)));
    // Boundary coefficients outside [0, 1) are rejected.
    assert!(log_discrepancy(&v, &[rat(1, 1), rat(0, 1)]).is_err());
}

#[test]
fn toroidal_transform() {
    // W = [[1,1],[0,1]]: alpha = (2,1) pulls back to (1,1), exponents map
    // by W^T.
    let nu = NuValuation::new(wv(&[2, 1]), FlagSpec::point(), TieBreak::Lex);
    let w = vec![vec![1i64, 1], vec![0, 1]];
    let (nu2, m) = blowup_transform(&nu, &w).unwrap();
    let entries: Vec<_> = nu2
        .qm
        .alpha
        .entries()
        .iter()
        .map(|e| e.as_rational().unwrap())
        .collect();
    assert_eq!(entries, vec![rat(1, 1), rat(1, 1)]);
    assert_eq!(transform_point(&m, &[1, 0]), vec![1, 1]);
    assert_eq!(transform_point(&m, &[0, 1]), vec![0, 1]);
    // Weights are preserved: alpha . beta = alpha' . (W^T beta).
    for beta in [[1i64, 0], [0, 1], [2, 3], [5, 1]] {
        let lhs = nu.qm.alpha.dot(&beta).unwrap();
        let rhs = nu2.qm.alpha.dot(&transform_point(&m, &beta)).unwrap();
        assert!(lhs.sub(&rhs).unwrap().is_zero());
    }
    // A transform breaking weight positivity is rejected.
    let bad = vec![vec![1i64, 2], vec![1, 1]];
    assert!(blowup_transform(&nu, &bad).is_err());
}
