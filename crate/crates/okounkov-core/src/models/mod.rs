//! Concrete section-generating geometries: polarized toric surfaces (with
//! independent lattice oracles) and the nodal plane cubic, plus the weight
//! chamber structure and predicted bodies of the latter.

pub mod nodal;
pub mod toric;

pub use nodal::{NodalCubicModel, ProbeOutcome};
pub use toric::ToricSurfaceModel;

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::bodies::{Body, Polytope};
use crate::error::Error;
use crate::field::{scalar_to_quad, ExactField, Quad};
use crate::wfield::{Rat, WeightVector};

/// `d_0 = d_1 = 1`, `d_{n+1} = 3 d_n - d_{n-1}`, extended to negative
/// indices by the backward recurrence.
pub fn d_of(n: i64) -> i64 {
    let (mut a, mut b) = (1i64, 1i64); // d_0, d_1
    if n >= 0 {
        let mut k = 0;
        while k < n {
            let c = 3 * b - a;
            a = b;
            b = c;
            k += 1;
        }
        a
    } else {
        let mut k = 0;
        while k > n {
            let c = 3 * a - b;
            b = a;
            a = c;
            k -= 1;
        }
        a
    }
}

/// The subsequence `d_lo, ..., d_hi` (inclusive).
pub fn d_sequence(lo: i64, hi: i64) -> Vec<i64> {
    (lo..=hi).map(d_of).collect()
}

/// Weight-ratio regime of the nodal model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChamberIndex {
    Chamber(i64),
    IrrationalLeft,
    IrrationalRight,
}

/// Exact regime of `alpha_1 / alpha_2`: chamber `n` iff the ratio lies in
/// the open interval `(d_{n+1}/d_{n-1}, d_{n+2}/d_n)`; beyond the fixed
/// quadratic bounds `(7 -+ 3 sqrt 5)/2` the regime is irrational. A ratio
/// exactly on a wall is an error: the caller must perturb.
pub fn chamber_of(alpha: &WeightVector) -> Result<ChamberIndex, Error> {
    if alpha.len() != 2 {
        return Err(Error::DimensionMismatch);
    }
    let a1 = scalar_to_quad(&alpha.entries()[0])?;
    let a2 = scalar_to_quad(&alpha.entries()[1])?;
    if a1.sign() <= 0 || a2.sign() <= 0 {
        return Err(Error::NotPositive);
    }
    if (a1.d != 0 && a1.d != 5) || (a2.d != 0 && a2.d != 5) {
        return Err(Error::Unsupported(
            "chamber location needs weights in the rationals or Q(sqrt 5)".into(),
        ));
    }
    let ratio = a1.div(&a2);
    // (7 - 3 sqrt 5) / 2 and (7 + 3 sqrt 5) / 2.
    let half = Rat::new(BigInt::from(1), BigInt::from(2));
    let low = Quad::new(&half * Rat::from(BigInt::from(7)), &half * Rat::from(BigInt::from(-3)), 5);
    let high = Quad::new(&half * Rat::from(BigInt::from(7)), &half * Rat::from(BigInt::from(3)), 5);
    match ratio.cmp_exact(&low) {
        core::cmp::Ordering::Less => return Ok(ChamberIndex::IrrationalLeft),
        core::cmp::Ordering::Equal => return Err(Error::ChamberWall),
        core::cmp::Ordering::Greater => {}
    }
    match ratio.cmp_exact(&high) {
        core::cmp::Ordering::Greater => return Ok(ChamberIndex::IrrationalRight),
        core::cmp::Ordering::Equal => return Err(Error::ChamberWall),
        core::cmp::Ordering::Less => {}
    }
    // Walls d_{n+2}/d_n increase strictly towards the upper bound and
    // decrease towards the lower bound as n decreases, so the scan ends.
    let wall = |n: i64| -> Quad {
        Quad::rational(Rat::new(BigInt::from(d_of(n + 2)), BigInt::from(d_of(n))))
    };
    let mut n = 0i64;
    loop {
        let upper = wall(n); // upper wall of chamber n
        let lower = wall(n - 1); // lower wall of chamber n
        match (ratio.cmp_exact(&lower), ratio.cmp_exact(&upper)) {
            (core::cmp::Ordering::Equal, _) | (_, core::cmp::Ordering::Equal) => {
                return Err(Error::ChamberWall)
            }
            (core::cmp::Ordering::Greater, core::cmp::Ordering::Less) => {
                return Ok(ChamberIndex::Chamber(n))
            }
            (_, core::cmp::Ordering::Greater) => n += 1,
            _ => n -= 1,
        }
    }
}

/// Predicted limit body of the nodal model for a weight off the walls:
/// the chamber triangle `(0,0), (d_n/d_{n+1}, 0), (0, d_{n+1}/d_n)` or the
/// irrational-regime quadrilateral through `(1/3, 1/3)`.
pub fn predicted_body(alpha: &WeightVector) -> Result<Body, Error> {
    let regime = chamber_of(alpha)?;
    let q = |p: i64, r: i64| Quad::rational(Rat::new(BigInt::from(p), BigInt::from(r)));
    let verts: Vec<Vec<Quad>> = match regime {
        ChamberIndex::Chamber(n) => {
            let dn = d_of(n);
            let dn1 = d_of(n + 1);
            vec![
                vec![q(0, 1), q(0, 1)],
                vec![q(dn, dn1), q(0, 1)],
                vec![q(0, 1), q(dn1, dn)],
            ]
        }
        ChamberIndex::IrrationalLeft | ChamberIndex::IrrationalRight => {
            let a1 = scalar_to_quad(&alpha.entries()[0])?;
            let a2 = scalar_to_quad(&alpha.entries()[1])?;
            let sum = a1.add(&a2);
            let three = Quad::from_int(3);
            vec![
                vec![q(0, 1), q(0, 1)],
                vec![three.mul(&a2).div(&sum), q(0, 1)],
                vec![q(1, 3), q(1, 3)],
                vec![q(0, 1), three.mul(&a1).div(&sum)],
            ]
        }
    };
    Polytope::hull(2, &verts)
}

/// Scaled integer form of a rational positive weight vector: entries times
/// the common denominator. Errors when any entry leaves the rationals.
pub fn integer_weights(alpha: &WeightVector) -> Result<Vec<i64>, Error> {
    let rats: Option<Vec<Rat>> = alpha.entries().iter().map(|e| e.as_rational()).collect();
    let rats = rats.ok_or_else(|| {
        Error::Unsupported("section reduction needs a rational weight vector".into())
    })?;
    let mut denom = BigInt::from(1);
    for r in &rats {
        denom = num_integer::lcm(denom, r.denom().clone());
    }
    let mut out = Vec::with_capacity(rats.len());
    for r in &rats {
        let v = r.numer() * (&denom / r.denom());
        if !v.is_positive() && !Zero::is_zero(&v) {
            return Err(Error::NotPositive);
        }
        let v: i64 = v.try_into().map_err(|_| Error::OutOfRange)?;
        if v <= 0 {
            return Err(Error::NotPositive);
        }
        out.push(v);
    }
    Ok(out)
}
