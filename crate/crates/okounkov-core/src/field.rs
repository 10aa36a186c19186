//! Ordered exact coefficient fields for the geometry engine.
//!
//! Three instances cover every in-scope computation:
//!
//! * [`Rat`] — the rationals;
//! * [`Quad`] — one quadratic extension `Q(sqrt(d))`, with pure rationals
//!   embedded as the `d = 0` case so values from different slices mix freely
//!   as long as at most one surd is in play;
//! * [`RatFun`] — rational functions in one infinitesimal `eps`, ordered by
//!   their sign just right of zero. Used to evaluate "for all sufficiently
//!   large i" conditions on body sequences exactly.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::wfield::{rat, rat_to_f64, Gen, Rat, WeightScalar};

pub trait ExactField: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// `None` exactly for zero.
    fn inv(&self) -> Option<Self>;
    fn from_rat(q: &Rat) -> Self;
    /// Exact sign: -1, 0, +1.
    fn sign(&self) -> i8;
    /// Display-only approximation.
    fn approx(&self) -> f64;

    fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv().expect("division by zero"))
    }

    fn cmp_exact(&self, o: &Self) -> Ordering {
        match self.sub(o).sign() {
            s if s > 0 => Ordering::Greater,
            0 => Ordering::Equal,
            _ => Ordering::Less,
        }
    }

    fn from_int(n: i64) -> Self {
        Self::from_rat(&Rat::from(BigInt::from(n)))
    }
}

impl ExactField for Rat {
    fn zero() -> Self {
        rat(0, 1)
    }
    fn one() -> Self {
        rat(1, 1)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(rat(1, 1) / self)
        }
    }
    fn from_rat(q: &Rat) -> Self {
        q.clone()
    }
    fn sign(&self) -> i8 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }
    fn approx(&self) -> f64 {
        rat_to_f64(self)
    }
}

/// `a + b sqrt(d)`. Pure rationals carry `d = 0`; arithmetic refuses to mix
/// two distinct nonzero `d` (an internal invariant, not a user error).
#[derive(Clone)]
pub struct Quad {
    pub a: Rat,
    pub b: Rat,
    pub d: u64,
}

impl fmt::Debug for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Zero::is_zero(&self.b) {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl Quad {
    pub fn rational(a: Rat) -> Self {
        Quad { a, b: rat(0, 1), d: 0 }
    }

    pub fn new(a: Rat, b: Rat, d: u64) -> Self {
        if Zero::is_zero(&b) {
            Quad::rational(a)
        } else {
            debug_assert!(d >= 2);
            Quad { a, b, d }
        }
    }

    pub fn is_rational(&self) -> bool {
        Zero::is_zero(&self.b)
    }

    pub fn as_rational(&self) -> Option<Rat> {
        if self.is_rational() {
            Some(self.a.clone())
        } else {
            None
        }
    }

    fn join_d(&self, o: &Quad) -> u64 {
        match (self.is_rational(), o.is_rational()) {
            (true, true) => 0,
            (false, true) => self.d,
            (true, false) => o.d,
            (false, false) => {
                assert_eq!(self.d, o.d, "mixed quadratic fields");
                self.d
            }
        }
    }

    /// Exact square root of a nonnegative rational: `s * sqrt(f)` with `f`
    /// square-free. `None` when the square-free part does not fit the
    /// supported integer range.
    pub fn sqrt_of_rat(q: &Rat) -> Option<Quad> {
        if q.is_negative() {
            return None;
        }
        if Zero::is_zero(q) {
            return Some(Quad::rational(rat(0, 1)));
        }
        // sqrt(p/r) = sqrt(p*r) / r
        let n = q.numer() * q.denom();
        let n_u64: u64 = u64::try_from(n.magnitude().clone()).ok()?;
        let (s, f) = square_decompose(n_u64);
        let coeff = Rat::new(BigInt::from(s), q.denom().clone());
        if f == 1 {
            Some(Quad::rational(coeff))
        } else {
            Some(Quad::new(rat(0, 1), coeff, f))
        }
    }

    /// Exact square root within the same quadratic field, if one exists.
    pub fn sqrt(&self) -> Option<Quad> {
        if let Some(q) = self.as_rational() {
            let r = Quad::sqrt_of_rat(&q)?;
            // Stay inside the ambient field only if rational or matching d.
            return Some(r);
        }
        if self.sign() < 0 {
            return None;
        }
        // (p + q sqrt(d))^2 = a + b sqrt(d): p^2 + q^2 d = a, 2pq = b.
        let dq = Rat::from(BigInt::from(self.d));
        let norm = &self.a * &self.a - &self.b * &self.b * &dq;
        let r = Quad::sqrt_of_rat(&norm)?.as_rational()?;
        let two = Rat::from(BigInt::from(2));
        for root in [(&self.a + &r) / &two, (&self.a - &r) / &two] {
            if let Some(p) = Quad::sqrt_of_rat(&root).and_then(|x| x.as_rational()) {
                if Zero::is_zero(&p) {
                    continue;
                }
                let qq = &self.b / (&two * &p);
                let cand = Quad::new(p, qq, self.d);
                if cand.mul(&cand) == *self && cand.sign() >= 0 {
                    return Some(cand);
                }
                let cand = cand.neg();
                if cand.mul(&cand) == *self && cand.sign() >= 0 {
                    return Some(cand);
                }
            }
        }
        None
    }
}

/// Exact order of two quadratic surds, even from distinct fields:
/// the sign of `A + B sqrt(p) - (C + E sqrt(q))` by repeated squaring.
pub fn quad_cmp(x: &Quad, y: &Quad) -> Ordering {
    if x.is_rational() || y.is_rational() || x.d == y.d {
        return x.cmp_exact(y);
    }
    let a = &x.a - &y.a;
    match sign_a_plus_surds(&a, &x.b, x.d, &(-y.b.clone()), y.d) {
        s if s > 0 => Ordering::Greater,
        s if s < 0 => Ordering::Less,
        _ => Ordering::Equal,
    }
}

/// Sign of `b sqrt(p) + c sqrt(q)` for distinct square-free `p != q`
/// (then the two surds are linearly independent over the rationals).
fn sign_surd_pair(b: &Rat, p: u64, c: &Rat, q: u64) -> i8 {
    let sb = rat_sign(b);
    let sc = rat_sign(c);
    if sb == 0 {
        return sc;
    }
    if sc == 0 || sb == sc {
        return sb;
    }
    // Opposite signs: compare magnitudes b^2 p vs c^2 q (never equal).
    let lp = b * b * Rat::from(BigInt::from(p));
    let rq = c * c * Rat::from(BigInt::from(q));
    if lp > rq {
        sb
    } else {
        sc
    }
}

/// Sign of `a + b sqrt(p) + c sqrt(q)` for distinct square-free `p != q`.
fn sign_a_plus_surds(a: &Rat, b: &Rat, p: u64, c: &Rat, q: u64) -> i8 {
    let sv = sign_surd_pair(b, p, c, q);
    let sa = rat_sign(a);
    if sa == 0 {
        return sv;
    }
    if sv == 0 || sa == sv {
        return sa;
    }
    // Opposite signs: compare a^2 with (b sqrt p + c sqrt q)^2, itself of
    // the form L + M sqrt(pq).
    let pq = BigInt::from(p) * BigInt::from(q);
    let l = a * a - b * b * Rat::from(BigInt::from(p)) - c * c * Rat::from(BigInt::from(q));
    let m = Rat::from(BigInt::from(2)) * b * c;
    let sl = rat_sign(&l);
    let sm = rat_sign(&m);
    let mag = if sl == 0 && sm == 0 {
        0
    } else if sm == 0 {
        sl
    } else if sl == 0 {
        -sm
    } else if sl != sm {
        sl
    } else {
        // Same sign: compare l^2 with m^2 pq.
        let l2 = &l * &l;
        let m2 = &m * &m * Rat::from(pq);
        match l2.cmp(&m2) {
            Ordering::Greater => sl,
            Ordering::Less => -sl,
            Ordering::Equal => 0,
        }
    };
    // mag = sign(a^2 - v^2) = sign(|a| - |v|).
    match mag {
        s if s > 0 => sa,
        s if s < 0 => sv,
        _ => 0,
    }
}

fn rat_sign(q: &Rat) -> i8 {
    if Zero::is_zero(q) {
        0
    } else if q.is_negative() {
        -1
    } else {
        1
    }
}

/// `n = s^2 * f` with `f` square-free.
fn square_decompose(mut n: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut f = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0u32;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            f *= p;
        }
        p = if p == 2 { 3 } else { p + 2 };
    }
    (s, f * n)
}

impl PartialEq for Quad {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a
            && self.b == other.b
            && (Zero::is_zero(&self.b) || self.d == other.d)
    }
}

impl ExactField for Quad {
    fn zero() -> Self {
        Quad::rational(rat(0, 1))
    }
    fn one() -> Self {
        Quad::rational(rat(1, 1))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }
    fn add(&self, o: &Self) -> Self {
        let d = self.join_d(o);
        Quad::new(&self.a + &o.a, &self.b + &o.b, d)
    }
    fn sub(&self, o: &Self) -> Self {
        let d = self.join_d(o);
        Quad::new(&self.a - &o.a, &self.b - &o.b, d)
    }
    fn neg(&self) -> Self {
        Quad::new(-&self.a, -&self.b, self.d)
    }
    fn mul(&self, o: &Self) -> Self {
        let d = self.join_d(o);
        let dq = Rat::from(BigInt::from(d));
        Quad::new(
            &self.a * &o.a + &self.b * &o.b * &dq,
            &self.a * &o.b + &self.b * &o.a,
            d,
        )
    }
    fn inv(&self) -> Option<Self> {
        if ExactField::is_zero(self) {
            return None;
        }
        if let Some(q) = self.as_rational() {
            return Some(Quad::rational(rat(1, 1) / q));
        }
        let dq = Rat::from(BigInt::from(self.d));
        let norm = &self.a * &self.a - &self.b * &self.b * &dq;
        debug_assert!(!Zero::is_zero(&norm), "surd equals a rational");
        Some(Quad::new(&self.a / &norm, -(&self.b / &norm), self.d))
    }
    fn from_rat(q: &Rat) -> Self {
        Quad::rational(q.clone())
    }
    fn sign(&self) -> i8 {
        let sa = ExactField::sign(&self.a);
        if Zero::is_zero(&self.b) {
            return sa;
        }
        let sb = ExactField::sign(&self.b);
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        let dq = Rat::from(BigInt::from(self.d));
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * &dq;
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => unreachable!("sqrt(d) rational"),
        }
    }
    fn approx(&self) -> f64 {
        rat_to_f64(&self.a) + rat_to_f64(&self.b) * libm::sqrt(self.d as f64)
    }
}

/// A rational function in one variable `eps`, ordered by its behaviour as
/// `eps -> 0+`. Coefficient polynomials are dense, lowest degree first.
#[derive(Clone, PartialEq)]
pub struct RatFun<F: ExactField> {
    num: Vec<F>,
    den: Vec<F>,
}

fn poly_trim<F: ExactField>(v: &mut Vec<F>) {
    while v.len() > 1 && v.last().map_or(false, ExactField::is_zero) {
        v.pop();
    }
}

fn poly_is_zero<F: ExactField>(v: &[F]) -> bool {
    v.iter().all(ExactField::is_zero)
}

fn poly_mul<F: ExactField>(a: &[F], b: &[F]) -> Vec<F> {
    let mut out = vec![F::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&ai.mul(bj));
        }
    }
    out
}

fn poly_add<F: ExactField>(a: &[F], b: &[F]) -> Vec<F> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(F::zero);
        let y = b.get(i).cloned().unwrap_or_else(F::zero);
        out.push(x.add(&y));
    }
    out
}

fn lowest_nonzero<F: ExactField>(v: &[F]) -> Option<(usize, &F)> {
    v.iter().enumerate().find(|(_, c)| !c.is_zero())
}

impl<F: ExactField> fmt::Debug for RatFun<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})/({:?})", self.num, self.den)
    }
}

impl<F: ExactField> RatFun<F> {
    pub fn constant(c: F) -> Self {
        RatFun { num: vec![c], den: vec![F::one()] }
    }

    /// The infinitesimal itself.
    pub fn eps() -> Self {
        RatFun { num: vec![F::zero(), F::one()], den: vec![F::one()] }
    }

    pub fn from_polys(num: Vec<F>, den: Vec<F>) -> Self {
        assert!(!poly_is_zero(&den), "zero denominator");
        let mut r = RatFun { num, den };
        r.normalize();
        r
    }

    fn normalize(&mut self) {
        poly_trim(&mut self.num);
        poly_trim(&mut self.den);
        if poly_is_zero(&self.num) {
            self.num = vec![F::zero()];
            self.den = vec![F::one()];
            return;
        }
        // Cancel a common power of eps so the limit at 0 is readable.
        let on = lowest_nonzero(&self.num).map(|(i, _)| i).unwrap_or(0);
        let od = lowest_nonzero(&self.den).map(|(i, _)| i).unwrap_or(0);
        let k = on.min(od);
        if k > 0 {
            self.num.drain(0..k);
            self.den.drain(0..k);
        }
    }

    pub fn into_polys(self) -> (Vec<F>, Vec<F>) {
        (self.num, self.den)
    }

    /// The limit as `eps -> 0+`, if finite.
    pub fn limit0(&self) -> Option<F> {
        if poly_is_zero(&self.num) {
            return Some(F::zero());
        }
        let (on, cn) = lowest_nonzero(&self.num)?;
        let (od, cd) = lowest_nonzero(&self.den)?;
        match on.cmp(&od) {
            Ordering::Greater => Some(F::zero()),
            Ordering::Equal => Some(cn.div(cd)),
            Ordering::Less => None,
        }
    }
}

impl<F: ExactField> ExactField for RatFun<F> {
    fn zero() -> Self {
        RatFun::constant(F::zero())
    }
    fn one() -> Self {
        RatFun::constant(F::one())
    }
    fn is_zero(&self) -> bool {
        poly_is_zero(&self.num)
    }
    fn add(&self, o: &Self) -> Self {
        let num = poly_add(
            &poly_mul(&self.num, &o.den),
            &poly_mul(&o.num, &self.den),
        );
        RatFun::from_polys(num, poly_mul(&self.den, &o.den))
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn neg(&self) -> Self {
        RatFun {
            num: self.num.iter().map(ExactField::neg).collect(),
            den: self.den.clone(),
        }
    }
    fn mul(&self, o: &Self) -> Self {
        RatFun::from_polys(poly_mul(&self.num, &o.num), poly_mul(&self.den, &o.den))
    }
    fn inv(&self) -> Option<Self> {
        if ExactField::is_zero(self) {
            return None;
        }
        Some(RatFun::from_polys(self.den.clone(), self.num.clone()))
    }
    fn from_rat(q: &Rat) -> Self {
        RatFun::constant(F::from_rat(q))
    }
    fn sign(&self) -> i8 {
        let sn = match lowest_nonzero(&self.num) {
            Some((_, c)) => c.sign(),
            None => return 0,
        };
        let sd = lowest_nonzero(&self.den).map(|(_, c)| c.sign()).unwrap_or(0);
        sn * sd
    }
    fn approx(&self) -> f64 {
        // Display-only; evaluate near zero.
        let e = 1e-6f64;
        let ev = |p: &[F]| {
            let mut acc = 0.0;
            for c in p.iter().rev() {
                acc = acc * e + c.approx();
            }
            acc
        };
        ev(&self.num) / ev(&self.den)
    }
}

/// Embeds a weight scalar in [`Quad`] when its basis generates the
/// rationals or a single quadratic field.
pub fn scalar_to_quad(s: &WeightScalar) -> Result<Quad, Error> {
    let mut a = rat(0, 1);
    let mut b = rat(0, 1);
    let mut d: Option<u64> = None;
    for (c, g) in s.coords().iter().zip(s.basis().gens().iter()) {
        if Zero::is_zero(c) {
            continue;
        }
        match g {
            Gen::One => a = c.clone(),
            Gen::Sqrt(dd) => {
                if d.is_some() {
                    return Err(Error::FieldClosure);
                }
                let (sq, f) = square_decompose(*dd);
                d = Some(f);
                b = c * Rat::from(BigInt::from(sq));
            }
            Gen::Custom { .. } => return Err(Error::FieldClosure),
        }
    }
    match d {
        None => Ok(Quad::rational(a)),
        Some(d) => Ok(Quad::new(a, b, d)),
    }
}

/// Rebuilds a weight scalar from a [`Quad`], over `{1}` or `{1, sqrt(d)}`.
pub fn quad_to_scalar(q: &Quad) -> Result<WeightScalar, Error> {
    use crate::wfield::WeightBasis;
    if let Some(r) = q.as_rational() {
        return WeightBasis::rationals().rational_scalar(r);
    }
    let basis = WeightBasis::with_sqrt(q.d)?;
    basis.scalar(vec![q.a.clone(), q.b.clone()])
}
