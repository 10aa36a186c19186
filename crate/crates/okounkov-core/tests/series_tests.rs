//! Truncated multivariate series: inversion, weighted lowest terms, and
//! branch factorization at a split node.

use okounkov_core::series::{invert_system, node_branches, TieBreak, TruncatedSeries};
use okounkov_core::wfield::{rat, Rat, WeightVector};

fn mono(vars: usize, order: u32, e: &[u32], c: Rat) -> TruncatedSeries<Rat> {
    TruncatedSeries::monomial(vars, order, e.to_vec(), c)
}

#[test]
fn invert_shear_system() {
    // g = (x + y^2, y) inverts to h = (u - v^2, v).
    let order = 8;
    let g1 = mono(2, order, &[1, 0], rat(1, 1))
        .add(&mono(2, order, &[0, 2], rat(1, 1)))
        .unwrap();
    let g2 = mono(2, order, &[0, 1], rat(1, 1));
    let h = invert_system(&[g1.clone(), g2.clone()]).unwrap();
    assert_eq!(h[0].coeff(&[1, 0]), rat(1, 1));
    assert_eq!(h[0].coeff(&[0, 2]), rat(-1, 1));
    assert_eq!(h[1].coeff(&[0, 1]), rat(1, 1));
    // Round trip: g(h) = identity.
    let back = g1.compose(&h).unwrap();
    assert_eq!(back, TruncatedSeries::var(2, order, 0));
    let back = g2.compose(&h).unwrap();
    assert_eq!(back, TruncatedSeries::var(2, order, 1));
}

#[test]
fn weighted_lowest_term() {
    // Under alpha = (3, 1): weights of xy, x^3, y^3 are 4, 9, 3.
    let order = 6;
    let f = mono(2, order, &[1, 1], rat(1, 1))
        .add(&mono(2, order, &[3, 0], rat(1, 1)))
        .unwrap()
        .add(&mono(2, order, &[0, 3], rat(7, 2)))
        .unwrap();
    let alpha = WeightVector::from_ints(&[3, 1]).unwrap();
    let (e, c) = f.lowest_term(&alpha, TieBreak::Lex).unwrap();
    assert_eq!(e, vec![0, 3]);
    assert_eq!(c, rat(7, 2));
}

#[test]
fn strict_tiebreak_rejects_ties() {
    // Under alpha = (1, 1) the terms xy and x^2 tie at weight 2.
    let order = 6;
    let f = mono(2, order, &[1, 1], rat(1, 1))
        .add(&mono(2, order, &[2, 0], rat(1, 1)))
        .unwrap();
    let alpha = WeightVector::from_ints(&[1, 1]).unwrap();
    assert!(f.lowest_term(&alpha, TieBreak::Strict).is_err());
    assert!(f.lowest_term(&alpha, TieBreak::Lex).is_ok());
}

#[test]
fn node_branch_factorization() {
    // f = y^2 - x^2 - x^3 factors as x1 * x2 * unit with branches
    // y -+ x sqrt(1 + x).
    let order = 10;
    let f = mono(2, order, &[0, 2], rat(1, 1))
        .add(&mono(2, order, &[2, 0], rat(-1, 1)))
        .unwrap()
        .add(&mono(2, order, &[3, 0], rat(-1, 1)))
        .unwrap();
    let branches = node_branches(&f).unwrap();
    let prod = branches
        .x1
        .mul(&branches.x2)
        .unwrap()
        .mul(&branches.unit)
        .unwrap();
    assert_eq!(prod, f);
    // Each branch starts linearly and independently.
    assert_eq!(branches.x1.min_degree(), Some(1));
    assert_eq!(branches.x2.min_degree(), Some(1));
}

#[test]
fn branch_product_valuations_add() {
    // The node valuation of a product of branch series is the sum of the
    // factor valuations, visible through min_degree on generic factors.
    let order = 12;
    let f = mono(2, order, &[0, 2], rat(1, 1))
        .add(&mono(2, order, &[2, 0], rat(-1, 1)))
        .unwrap()
        .add(&mono(2, order, &[3, 0], rat(-1, 1)))
        .unwrap();
    let b = node_branches(&f).unwrap();
    let sq = b.x1.mul(&b.x1).unwrap();
    assert_eq!(
        sq.min_degree().unwrap(),
        2 * b.x1.min_degree().unwrap()
    );
    let mixed = b.x1.mul(&b.x2).unwrap();
    assert_eq!(
        mixed.min_degree().unwrap(),
        b.x1.min_degree().unwrap() + b.x2.min_degree().unwrap()
    );
}

#[test]
fn nonsplit_node_rejected() {
    // y^2 + x^2: branches need sqrt(-1), not available over the rationals.
    let order = 8;
    let f = mono(2, order, &[0, 2], rat(1, 1))
        .add(&mono(2, order, &[2, 0], rat(1, 1)))
        .unwrap();
    assert!(node_branches(&f).is_err());
}
