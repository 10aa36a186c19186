//! Exact weight-scalar arithmetic, ordering, and integer floors.

use num_bigint::BigInt;
use okounkov_core::wfield::{rat, Rat, WeightBasis, WeightScalar, WeightVector};
use proptest::prelude::*;

fn sqrt5(a: Rat, b: Rat) -> WeightScalar {
    WeightBasis::with_sqrt(5).unwrap().scalar(vec![a, b]).unwrap()
}

#[test]
fn quadratic_ordering() {
    // 1 + sqrt 5 > 3 and < 13/4.
    let x = sqrt5(rat(1, 1), rat(1, 1));
    let three = sqrt5(rat(3, 1), rat(0, 1));
    let upper = sqrt5(rat(13, 4), rat(0, 1));
    assert!(x.compare(&three).unwrap().is_gt());
    assert!(x.compare(&upper).unwrap().is_lt());
}

#[test]
fn quadratic_floor() {
    // floor(1 + sqrt 5) = 3, floor(-sqrt 5) = -3.
    assert_eq!(sqrt5(rat(1, 1), rat(1, 1)).floor().unwrap(), BigInt::from(3));
    assert_eq!(sqrt5(rat(0, 1), rat(-1, 1)).floor().unwrap(), BigInt::from(-3));
    assert_eq!(sqrt5(rat(5, 1), rat(0, 1)).floor().unwrap(), BigInt::from(5));
}

#[test]
fn product_in_field() {
    // (1 + sqrt 5)(1 - sqrt 5) = -4.
    let x = sqrt5(rat(1, 1), rat(1, 1));
    let y = sqrt5(rat(1, 1), rat(-1, 1));
    let p = x.try_mul(&y).unwrap();
    assert_eq!(p.as_rational(), Some(rat(-4, 1)));
}

#[test]
fn dot_product() {
    let alpha = WeightVector::from_ints(&[3, 1]).unwrap();
    let v = alpha.dot(&[2, 5]).unwrap();
    assert_eq!(v.as_rational(), Some(rat(11, 1)));
}

#[test]
fn mixed_bases_rejected() {
    let a = sqrt5(rat(1, 1), rat(1, 1));
    let b = WeightBasis::with_sqrt(2)
        .unwrap()
        .scalar(vec![rat(1, 1), rat(1, 1)])
        .unwrap();
    assert!(a.add(&b).is_err());
}

proptest! {
    #[test]
    fn rational_compare_agrees(p in -50i64..50, q in 1i64..20, r in -50i64..50, s in 1i64..20) {
        let basis = WeightBasis::rationals();
        let a = basis.rational_scalar(rat(p, q)).unwrap();
        let b = basis.rational_scalar(rat(r, s)).unwrap();
        prop_assert_eq!(a.compare(&b).unwrap(), rat(p, q).cmp(&rat(r, s)));
    }

    #[test]
    fn rational_floor_agrees(p in -200i64..200, q in 1i64..20) {
        let basis = WeightBasis::rationals();
        let a = basis.rational_scalar(rat(p, q)).unwrap();
        prop_assert_eq!(a.floor().unwrap(), rat(p, q).floor().to_integer());
    }

    #[test]
    fn quadratic_floor_brackets(p in -20i64..20, q in 1i64..8, b in -5i64..5) {
        // n <= p/q + b sqrt 5 < n + 1 for n = floor.
        let x = sqrt5(rat(p, q), rat(b, 1));
        let n = x.floor().unwrap();
        let lo = x.basis().rational_scalar(Rat::from(n.clone())).unwrap();
        let hi = x.basis().rational_scalar(Rat::from(n) + rat(1, 1)).unwrap();
        prop_assert!(x.sub(&lo).unwrap().sign().unwrap() >= 0);
        prop_assert!(hi.sub(&x).unwrap().sign().unwrap() > 0);
    }
}
