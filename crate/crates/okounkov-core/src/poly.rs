//! Dense univariate polynomials over an exact field; just enough for
//! piecewise volume functions (evaluation, exact antiderivatives, Lagrange
//! interpolation, quadratic root extraction).

use alloc::vec;
use alloc::vec::Vec;

use crate::field::{ExactField, Quad};
use crate::wfield::Rat;

/// Coefficients lowest degree first; no trailing zeros except for the zero
/// polynomial `[0]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<F: ExactField> {
    pub c: Vec<F>,
}

impl<F: ExactField> Poly<F> {
    pub fn new(mut c: Vec<F>) -> Self {
        while c.len() > 1 && c.last().map_or(false, ExactField::is_zero) {
            c.pop();
        }
        if c.is_empty() {
            c.push(F::zero());
        }
        Poly { c }
    }

    pub fn zero() -> Self {
        Poly { c: vec![F::zero()] }
    }

    pub fn constant(v: F) -> Self {
        Poly::new(vec![v])
    }

    pub fn degree(&self) -> usize {
        self.c.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(ExactField::is_zero)
    }

    pub fn eval(&self, t: &F) -> F {
        let mut acc = F::zero();
        for coeff in self.c.iter().rev() {
            acc = acc.mul(t).add(coeff);
        }
        acc
    }

    pub fn add(&self, o: &Poly<F>) -> Poly<F> {
        let n = self.c.len().max(o.c.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.c.get(i).cloned().unwrap_or_else(F::zero);
            let b = o.c.get(i).cloned().unwrap_or_else(F::zero);
            out.push(a.add(&b));
        }
        Poly::new(out)
    }

    pub fn sub(&self, o: &Poly<F>) -> Poly<F> {
        self.add(&o.scale(&F::one().neg()))
    }

    pub fn scale(&self, s: &F) -> Poly<F> {
        Poly::new(self.c.iter().map(|v| v.mul(s)).collect())
    }

    pub fn mul(&self, o: &Poly<F>) -> Poly<F> {
        let mut out = vec![F::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::new(out)
    }

    /// Exact `integral from a to b` of the polynomial.
    pub fn integrate(&self, a: &F, b: &F) -> F {
        let anti = |t: &F| {
            let mut acc = F::zero();
            let mut power = t.clone();
            for (k, coeff) in self.c.iter().enumerate() {
                let inv_k1 = F::from_int((k + 1) as i64).inv().unwrap();
                acc = acc.add(&coeff.mul(&power).mul(&inv_k1));
                power = power.mul(t);
            }
            acc
        };
        anti(b).sub(&anti(a))
    }

    /// Unique polynomial of degree `< points.len()` through the given
    /// `(t, value)` pairs with pairwise distinct `t`.
    pub fn interpolate(points: &[(F, F)]) -> Poly<F> {
        let mut acc = Poly::zero();
        for (i, (ti, vi)) in points.iter().enumerate() {
            let mut term = Poly::constant(vi.clone());
            for (j, (tj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                let denom = ti.sub(tj);
                let inv = denom.inv().expect("repeated interpolation node");
                // (t - tj) / (ti - tj)
                let lin = Poly::new(vec![tj.neg().mul(&inv), inv]);
                term = term.mul(&lin);
            }
            acc = acc.add(&term);
        }
        acc
    }
}

impl Poly<Quad> {
    /// All real roots inside `[lo, hi]`, exactly, for degree up to 2 (plus a
    /// rational-root fallback at degree 3). `None` when a root exists only
    /// outside the supported field.
    pub fn roots_in(&self, lo: &Quad, hi: &Quad) -> Option<Vec<Quad>> {
        let inside = |t: &Quad| t.cmp_exact(lo).is_ge() && t.cmp_exact(hi).is_le();
        let mut out: Vec<Quad> = Vec::new();
        let push = |t: Quad, out: &mut Vec<Quad>| {
            if inside(&t) && !out.contains(&t) {
                out.push(t);
            }
        };
        match self.degree() {
            0 => {
                // Constant: either no roots or everything; report none.
            }
            1 => {
                let r = self.c[0].neg().div(&self.c[1]);
                push(r, &mut out);
            }
            2 => {
                let (a, b, c) = (&self.c[2], &self.c[1], &self.c[0]);
                let four = Quad::from_int(4);
                let disc = b.mul(b).sub(&four.mul(a).mul(c));
                match disc.sign() {
                    s if s < 0 => {}
                    _ => {
                        let sq = disc.sqrt()?;
                        let two_a = Quad::from_int(2).mul(a);
                        push(b.neg().add(&sq).div(&two_a), &mut out);
                        push(b.neg().sub(&sq).div(&two_a), &mut out);
                    }
                }
            }
            3 => {
                // Rational-root candidates only; in-scope bodies are planar
                // so cubic pieces never arise in practice.
                let r = self.rational_root_search(lo, hi)?;
                for t in r {
                    push(t, &mut out);
                }
            }
            _ => return None,
        }
        out.sort_by(|x, y| x.cmp_exact(y));
        Some(out)
    }

    fn rational_root_search(&self, lo: &Quad, hi: &Quad) -> Option<Vec<Quad>> {
        // Bisection to a fixed depth, accepting only exact hits.
        let mut found = Vec::new();
        let (mut a, mut b) = (lo.clone(), hi.clone());
        let half = Quad::rational(Rat::new(1.into(), 2.into()));
        for _ in 0..64 {
            let fa = self.eval(&a);
            let fb = self.eval(&b);
            if fa.is_zero() {
                found.push(a.clone());
                return Some(found);
            }
            if fb.is_zero() {
                found.push(b.clone());
                return Some(found);
            }
            if fa.sign() == fb.sign() {
                return if found.is_empty() { None } else { Some(found) };
            }
            let mid = a.add(&b).mul(&half);
            if self.eval(&mid).is_zero() {
                found.push(mid);
                return Some(found);
            }
            if self.eval(&mid).sign() == fa.sign() {
                a = mid;
            } else {
                b = mid;
            }
        }
        None
    }
}
