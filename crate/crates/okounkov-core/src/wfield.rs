//! Exact arithmetic and decidable ordering for weight values.
//!
//! A [`WeightBasis`] fixes finitely many real generators (the rational unit,
//! quadratic surds `sqrt(D)`, or user-supplied refinable enclosures) that are
//! declared linearly independent over the rationals. A [`WeightScalar`] is a
//! rational coordinate vector over such a basis; equality is coordinate
//! equality, strict comparison refines interval enclosures until the sign of
//! the difference is certain. No value is ever rounded to floating point.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

pub type Rat = BigRational;

/// Shorthand for a rational from an integer pair.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// A refinable rational enclosure of a fixed real number.
///
/// `enclosure(bits)` must return `(lo, hi)` with `lo <= x <= hi` and
/// `hi - lo <= 2^-bits` for every requested precision.
pub trait Refinable: Send + Sync {
    fn enclosure(&self, bits: u32) -> (Rat, Rat);
}

/// A single basis generator.
#[derive(Clone)]
pub enum Gen {
    /// The rational unit 1.
    One,
    /// `sqrt(d)` for a positive non-square integer `d`.
    Sqrt(u64),
    /// A user-supplied positive irrational with a refinable enclosure.
    Custom { name: String, cell: Arc<dyn Refinable> },
}

impl fmt::Debug for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::One => write!(f, "1"),
            Gen::Sqrt(d) => write!(f, "sqrt({d})"),
            Gen::Custom { name, .. } => write!(f, "{name}"),
        }
    }
}

impl Gen {
    fn same(&self, other: &Gen) -> bool {
        match (self, other) {
            (Gen::One, Gen::One) => true,
            (Gen::Sqrt(a), Gen::Sqrt(b)) => a == b,
            (Gen::Custom { cell: a, .. }, Gen::Custom { cell: b, .. }) => Arc::ptr_eq(a, b),
            _ => false,
        }
    }

    fn enclosure(&self, bits: u32) -> (Rat, Rat) {
        match self {
            Gen::One => (Rat::one(), Rat::one()),
            Gen::Sqrt(d) => sqrt_enclosure(*d, bits),
            Gen::Custom { cell, .. } => cell.enclosure(bits),
        }
    }
}

/// `(lo, hi)` with `lo <= sqrt(d) <= hi` and width `<= 2^-bits`.
fn sqrt_enclosure(d: u64, bits: u32) -> (Rat, Rat) {
    // floor(sqrt(d * 4^bits)) / 2^bits
    let scaled = BigUint::from(d) << (2 * bits);
    let root = scaled.sqrt();
    let den = BigInt::from(BigUint::one() << bits);
    let lo = Rat::new(BigInt::from(root.clone()), den.clone());
    let hi = Rat::new(BigInt::from(root + BigUint::one()), den);
    (lo, hi)
}

/// Square-free part of a positive integer (trial division).
fn squarefree_part(mut d: u64) -> u64 {
    let mut out = 1u64;
    let mut p = 2u64;
    while p * p <= d {
        let mut e = 0u32;
        while d % p == 0 {
            d /= p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= p;
        }
        p += 1;
    }
    out * d
}

/// A fixed list of declared-independent generators.
#[derive(Clone)]
pub struct WeightBasis {
    gens: Arc<Vec<Gen>>,
}

impl fmt::Debug for WeightBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeightBasis{:?}", self.gens)
    }
}

impl PartialEq for WeightBasis {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.gens, &other.gens) {
            return true;
        }
        self.gens.len() == other.gens.len()
            && self.gens.iter().zip(other.gens.iter()).all(|(a, b)| a.same(b))
    }
}

impl WeightBasis {
    /// Validates and freezes a generator list.
    ///
    /// Rejected: a repeated unit, `sqrt(d)` with `d` zero or a perfect
    /// square, and two surds with the same square-free part (a rational
    /// relation, e.g. `sqrt(8) = 2 sqrt(2)`).
    pub fn new(gens: Vec<Gen>) -> Result<Self, Error> {
        if gens.is_empty() {
            return Err(Error::InvalidBasis("empty generator list".into()));
        }
        let mut seen_one = false;
        let mut sqfree: Vec<u64> = Vec::new();
        for g in &gens {
            match g {
                Gen::One => {
                    if seen_one {
                        return Err(Error::InvalidBasis("duplicate rational unit".into()));
                    }
                    seen_one = true;
                }
                Gen::Sqrt(d) => {
                    if *d == 0 {
                        return Err(Error::InvalidBasis("sqrt(0)".into()));
                    }
                    let s = squarefree_part(*d);
                    if s == 1 {
                        return Err(Error::InvalidBasis("sqrt of a perfect square".into()));
                    }
                    if sqfree.contains(&s) {
                        return Err(Error::InvalidBasis(
                            "two surds with the same square-free part".into(),
                        ));
                    }
                    sqfree.push(s);
                }
                Gen::Custom { cell, name } => {
                    let (lo, hi) = cell.enclosure(8);
                    if lo > hi || !lo.is_positive() {
                        return Err(Error::InvalidBasis(String::from(
                            "enclosure of '",
                        ) + name
                            + "' is empty or not positive"));
                    }
                }
            }
        }
        Ok(WeightBasis { gens: Arc::new(gens) })
    }

    /// The basis `{1}`.
    pub fn rationals() -> Self {
        WeightBasis { gens: Arc::new(vec![Gen::One]) }
    }

    /// The basis `{1, sqrt(d)}`.
    pub fn with_sqrt(d: u64) -> Result<Self, Error> {
        WeightBasis::new(vec![Gen::One, Gen::Sqrt(d)])
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn gens(&self) -> &[Gen] {
        &self.gens
    }

    /// Index of the rational unit, if present.
    pub fn unit_index(&self) -> Option<usize> {
        self.gens.iter().position(|g| matches!(g, Gen::One))
    }

    /// If the basis is `{1}` up to order, returns `()`; used by closure checks.
    pub fn is_rational_only(&self) -> bool {
        self.gens.len() == 1 && matches!(self.gens[0], Gen::One)
    }

    /// If the basis is exactly `{1, sqrt(d)}` (in either order), returns `d`.
    pub fn quadratic_d(&self) -> Option<u64> {
        if self.gens.len() != 2 {
            return None;
        }
        match (&self.gens[0], &self.gens[1]) {
            (Gen::One, Gen::Sqrt(d)) | (Gen::Sqrt(d), Gen::One) => Some(*d),
            _ => None,
        }
    }

    /// A scalar with the given coordinates.
    pub fn scalar(&self, coords: Vec<Rat>) -> Result<WeightScalar, Error> {
        if coords.len() != self.gens.len() {
            return Err(Error::DimensionMismatch);
        }
        Ok(WeightScalar { basis: self.clone(), coords })
    }

    /// The rational `q` as a scalar over this basis (requires a unit).
    pub fn rational_scalar(&self, q: Rat) -> Result<WeightScalar, Error> {
        let idx = self
            .unit_index()
            .ok_or_else(|| Error::InvalidBasis("basis has no rational unit".into()))?;
        let mut coords = vec![Rat::zero(); self.gens.len()];
        coords[idx] = q;
        Ok(WeightScalar { basis: self.clone(), coords })
    }

    pub fn zero(&self) -> WeightScalar {
        WeightScalar {
            basis: self.clone(),
            coords: vec![Rat::zero(); self.gens.len()],
        }
    }
}

/// Refinement schedule: precision in bits for a refinement round.
fn round_bits(round: u32) -> u32 {
    32u32 << round.min(12)
}

/// Default number of refinement rounds before giving up.
pub const DEFAULT_PRECISION_ROUNDS: u32 = 12;

/// An exact element of the rational span of a [`WeightBasis`].
#[derive(Clone, PartialEq)]
pub struct WeightScalar {
    basis: WeightBasis,
    coords: Vec<Rat>,
}

impl fmt::Debug for WeightScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, g) in self.coords.iter().zip(self.basis.gens().iter()) {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match g {
                Gen::One => write!(f, "{c}")?,
                _ => write!(f, "{c}*{g:?}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl WeightScalar {
    pub fn basis(&self) -> &WeightBasis {
        &self.basis
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rat::is_zero)
    }

    /// Coordinate on the rational unit if that is the only nonzero one.
    pub fn as_rational(&self) -> Option<Rat> {
        let idx = self.basis.unit_index();
        for (i, c) in self.coords.iter().enumerate() {
            if !c.is_zero() && Some(i) != idx {
                return None;
            }
        }
        Some(match idx {
            Some(i) => self.coords[i].clone(),
            None => Rat::zero(),
        })
    }

    fn check_basis(&self, other: &WeightScalar) -> Result<(), Error> {
        if self.basis == other.basis {
            Ok(())
        } else {
            Err(Error::BasisMismatch)
        }
    }

    pub fn add(&self, other: &WeightScalar) -> Result<WeightScalar, Error> {
        self.check_basis(other)?;
        let coords = self
            .coords
            .iter()
            .zip(other.coords.iter())
            .map(|(a, b)| a + b)
            .collect();
        Ok(WeightScalar { basis: self.basis.clone(), coords })
    }

    pub fn sub(&self, other: &WeightScalar) -> Result<WeightScalar, Error> {
        self.check_basis(other)?;
        let coords = self
            .coords
            .iter()
            .zip(other.coords.iter())
            .map(|(a, b)| a - b)
            .collect();
        Ok(WeightScalar { basis: self.basis.clone(), coords })
    }

    pub fn neg(&self) -> WeightScalar {
        WeightScalar {
            basis: self.basis.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    /// Multiplication by an exact rational.
    pub fn scale(&self, q: &Rat) -> WeightScalar {
        WeightScalar {
            basis: self.basis.clone(),
            coords: self.coords.iter().map(|c| c * q).collect(),
        }
    }

    /// Exact sign of the represented real: -1, 0 or +1.
    pub fn sign(&self) -> Result<i8, Error> {
        self.sign_with_cap(DEFAULT_PRECISION_ROUNDS)
    }

    pub fn sign_with_cap(&self, rounds: u32) -> Result<i8, Error> {
        if self.is_zero() {
            return Ok(0);
        }
        // Pure rational part: no refinement needed.
        if let Some(q) = self.as_rational() {
            return Ok(if q.is_positive() { 1 } else { -1 });
        }
        // Exact path for a single quadratic surd alongside the unit.
        if let Some(s) = self.quad_sign() {
            return Ok(s);
        }
        for round in 0..=rounds {
            let bits = round_bits(round);
            let mut lo = Rat::zero();
            let mut hi = Rat::zero();
            for (c, g) in self.coords.iter().zip(self.basis.gens().iter()) {
                if c.is_zero() {
                    continue;
                }
                let (glo, ghi) = g.enclosure(bits);
                if c.is_positive() {
                    lo += c * &glo;
                    hi += c * &ghi;
                } else {
                    lo += c * &ghi;
                    hi += c * &glo;
                }
            }
            if lo.is_positive() {
                return Ok(1);
            }
            if hi.is_negative() {
                return Ok(-1);
            }
        }
        Err(Error::PrecisionExhausted)
    }

    /// Exact sign when the nonzero coordinates involve the unit and at most
    /// one surd: sign of `a + b sqrt(d)` by squaring.
    fn quad_sign(&self) -> Option<i8> {
        let mut a = Rat::zero();
        let mut b = Rat::zero();
        let mut d: Option<u64> = None;
        for (c, g) in self.coords.iter().zip(self.basis.gens().iter()) {
            if c.is_zero() {
                continue;
            }
            match g {
                Gen::One => a = c.clone(),
                Gen::Sqrt(dd) => {
                    if d.is_some() {
                        return None;
                    }
                    d = Some(*dd);
                    b = c.clone();
                }
                Gen::Custom { .. } => return None,
            }
        }
        let d = d?;
        if b.is_zero() {
            unreachable!("rational case handled earlier");
        }
        if a.is_zero() {
            return Some(if b.is_positive() { 1 } else { -1 });
        }
        if a.is_positive() == b.is_positive() {
            return Some(if a.is_positive() { 1 } else { -1 });
        }
        // Opposite signs: |a| vs |b| sqrt(d), compare a^2 with b^2 d.
        let a2 = &a * &a;
        let b2d = &b * &b * Rat::from(BigInt::from(d));
        let big_side_positive = a.is_positive();
        match a2.cmp(&b2d) {
            Ordering::Greater => Some(if big_side_positive { 1 } else { -1 }),
            Ordering::Less => Some(if big_side_positive { -1 } else { 1 }),
            // d is non-square, so a^2 = b^2 d is impossible for b != 0.
            Ordering::Equal => unreachable!("surd equals a rational"),
        }
    }

    /// Exact ordering of the represented reals.
    pub fn compare(&self, other: &WeightScalar) -> Result<Ordering, Error> {
        let diff = self.sub(other)?;
        Ok(match diff.sign()? {
            0 => Ordering::Equal,
            s if s > 0 => Ordering::Greater,
            _ => Ordering::Less,
        })
    }

    /// `floor` of the represented real.
    pub fn floor(&self) -> Result<BigInt, Error> {
        if let Some(q) = self.as_rational() {
            return Ok(q.floor().to_integer());
        }
        for round in 0..=DEFAULT_PRECISION_ROUNDS {
            let bits = round_bits(round);
            let mut lo = Rat::zero();
            let mut hi = Rat::zero();
            for (c, g) in self.coords.iter().zip(self.basis.gens().iter()) {
                if c.is_zero() {
                    continue;
                }
                let (glo, ghi) = g.enclosure(bits);
                if c.is_positive() {
                    lo += c * &glo;
                    hi += c * &ghi;
                } else {
                    lo += c * &ghi;
                    hi += c * &glo;
                }
            }
            let fl = lo.floor().to_integer();
            let fh = hi.floor().to_integer();
            if fl == fh {
                return Ok(fl);
            }
        }
        Err(Error::PrecisionExhausted)
    }

    /// Exact product, available only while the basis generates a field
    /// closed under multiplication: the rationals or one quadratic field.
    pub fn try_mul(&self, other: &WeightScalar) -> Result<WeightScalar, Error> {
        self.check_basis(other)?;
        if let (Some(a), Some(b)) = (self.as_rational(), other.as_rational()) {
            let prod = &a * &b;
            return self.basis.rational_scalar(prod.clone()).or_else(|_| {
                // No unit in the basis: a rational product of two rationals
                // is only representable if it is zero.
                if prod.is_zero() {
                    Ok(self.basis.zero())
                } else {
                    Err(Error::FieldClosure)
                }
            });
        }
        let d = self.basis.quadratic_d().ok_or(Error::FieldClosure)?;
        let iu = self.basis.unit_index().unwrap();
        let is = 1 - iu;
        let (a, b) = (&self.coords[iu], &self.coords[is]);
        let (c, e) = (&other.coords[iu], &other.coords[is]);
        let dq = Rat::from(BigInt::from(d));
        let mut coords = vec![Rat::zero(); 2];
        coords[iu] = a * c + b * e * &dq;
        coords[is] = a * e + b * c;
        Ok(WeightScalar { basis: self.basis.clone(), coords })
    }

    /// Exact quotient under the same closure restriction as [`try_mul`].
    ///
    /// [`try_mul`]: WeightScalar::try_mul
    pub fn try_div(&self, other: &WeightScalar) -> Result<WeightScalar, Error> {
        self.check_basis(other)?;
        if other.is_zero() {
            return Err(Error::ZeroInput);
        }
        if let (Some(a), Some(b)) = (self.as_rational(), other.as_rational()) {
            return self.basis.rational_scalar(a / b);
        }
        let d = self.basis.quadratic_d().ok_or(Error::FieldClosure)?;
        let iu = self.basis.unit_index().unwrap();
        let is = 1 - iu;
        let (c, e) = (&other.coords[iu], &other.coords[is]);
        let dq = Rat::from(BigInt::from(d));
        // 1/(c + e sqrt(d)) = (c - e sqrt(d)) / (c^2 - e^2 d)
        let norm = c * c - e * e * &dq;
        debug_assert!(!norm.is_zero());
        let mut inv = vec![Rat::zero(); 2];
        inv[iu] = c / &norm;
        inv[is] = -(e / &norm);
        let inv = WeightScalar { basis: self.basis.clone(), coords: inv };
        self.try_mul(&inv)
    }

    /// Approximate value for display and report-only regressions.
    pub fn to_f64(&self) -> f64 {
        let mut acc = 0.0f64;
        for (c, g) in self.coords.iter().zip(self.basis.gens().iter()) {
            if c.is_zero() {
                continue;
            }
            let (lo, hi) = g.enclosure(64);
            let mid = (&lo + &hi) / Rat::from(BigInt::from(2));
            acc += rat_to_f64(c) * rat_to_f64(&mid);
        }
        acc
    }
}

pub fn rat_to_f64(q: &Rat) -> f64 {
    let bits = 80u32;
    let scaled = (q * Rat::from(BigInt::from(1u8) << bits)).to_integer();
    let (sign, digits) = scaled.to_u64_digits();
    let mut mag = 0.0f64;
    for d in digits.iter().rev() {
        mag = mag * 1.8446744073709552e19 + *d as f64;
    }
    let mag = mag / libm::exp2(bits as f64);
    match sign {
        num_bigint::Sign::Minus => -mag,
        _ => mag,
    }
}

/// A strictly positive weight vector.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightVector {
    entries: Vec<WeightScalar>,
}

impl WeightVector {
    pub fn new(entries: Vec<WeightScalar>) -> Result<Self, Error> {
        if entries.is_empty() {
            return Err(Error::EmptyInput);
        }
        let basis = entries[0].basis().clone();
        for e in &entries {
            if *e.basis() != basis {
                return Err(Error::BasisMismatch);
            }
            if e.sign()? <= 0 {
                return Err(Error::NotPositive);
            }
        }
        Ok(WeightVector { entries })
    }

    /// A rational weight vector over the basis `{1}`.
    pub fn rational(vals: &[Rat]) -> Result<Self, Error> {
        let basis = WeightBasis::rationals();
        let entries = vals
            .iter()
            .map(|v| basis.rational_scalar(v.clone()).unwrap())
            .collect();
        WeightVector::new(entries)
    }

    /// A rational weight vector from integers.
    pub fn from_ints(vals: &[i64]) -> Result<Self, Error> {
        let vs: Vec<Rat> = vals.iter().map(|&v| rat(v, 1)).collect();
        WeightVector::rational(&vs)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[WeightScalar] {
        &self.entries
    }

    pub fn basis(&self) -> &WeightBasis {
        self.entries[0].basis()
    }

    /// `alpha . beta` for an integer exponent vector.
    pub fn dot(&self, beta: &[i64]) -> Result<WeightScalar, Error> {
        if beta.len() != self.entries.len() {
            return Err(Error::DimensionMismatch);
        }
        let mut acc = self.basis().zero();
        for (e, b) in self.entries.iter().zip(beta.iter()) {
            acc = acc.add(&e.scale(&rat(*b, 1)))?;
        }
        Ok(acc)
    }

    /// Dimension of the rational span of the entries: the rank of the
    /// coordinate matrix over the rationals.
    pub fn rational_rank(&self) -> usize {
        let mut rows: Vec<Vec<Rat>> = self.entries.iter().map(|e| e.coords().to_vec()).collect();
        let cols = self.basis().len();
        let mut rank = 0usize;
        for c in 0..cols {
            if let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) {
                rows.swap(rank, p);
                let pivot = rows[rank][c].clone();
                for r in 0..rows.len() {
                    if r != rank && !rows[r][c].is_zero() {
                        let f = &rows[r][c] / &pivot;
                        for cc in c..cols {
                            let sub = &f * &rows[rank][cc];
                            rows[r][cc] = &rows[r][cc] - sub;
                        }
                    }
                }
                rank += 1;
            }
        }
        rank
    }
}
