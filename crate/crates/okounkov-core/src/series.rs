//! Truncated multivariate power series over an exact coefficient field.
//!
//! Series are dense maps from exponent vectors to coefficients, truncated at
//! a total degree bound. Beyond ring arithmetic the module provides formal
//! composition, inversion of coordinate systems (formal inverse function
//! theorem), factorization of a split node into its two branches, and
//! certified lowest-term extraction with respect to a weight vector.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::field::ExactField;
use crate::wfield::{rat, Rat, WeightVector};

/// Exponent order used to break ties between equal weights: plain
/// lexicographic on the exponent vector.
pub type Expt = Vec<u32>;

/// How equal weight values `alpha . beta` are resolved.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TieBreak {
    /// Weights declared independent over the rationals: a tie between
    /// distinct exponents is a hard error.
    Strict,
    /// Deterministic infinitesimal perturbation: order by weight, then
    /// lexicographically on the exponent vector.
    Lex,
}

#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<F: ExactField> {
    vars: usize,
    order: u32,
    terms: BTreeMap<Expt, F>,
}

impl<F: ExactField> core::fmt::Debug for TruncatedSeries<F> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "Series[vars={}, order={}; ", self.vars, self.order)?;
        for (e, c) in &self.terms {
            write!(f, "{c:?}*x^{e:?} ")?;
        }
        write!(f, "]")
    }
}

fn total_deg(e: &[u32]) -> u32 {
    e.iter().sum()
}

impl<F: ExactField> TruncatedSeries<F> {
    pub fn zero(vars: usize, order: u32) -> Self {
        TruncatedSeries { vars, order, terms: BTreeMap::new() }
    }

    pub fn constant(vars: usize, order: u32, c: F) -> Self {
        let mut s = Self::zero(vars, order);
        if !c.is_zero() {
            s.terms.insert(vec![0; vars], c);
        }
        s
    }

    /// The coordinate `x_i`.
    pub fn var(vars: usize, order: u32, i: usize) -> Self {
        let mut e = vec![0u32; vars];
        e[i] = 1;
        Self::monomial(vars, order, e, F::one())
    }

    pub fn monomial(vars: usize, order: u32, e: Expt, c: F) -> Self {
        assert_eq!(e.len(), vars);
        let mut s = Self::zero(vars, order);
        if !c.is_zero() && total_deg(&e) <= order {
            s.terms.insert(e, c);
        }
        s
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Expt, &F)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> F {
        self.terms.get(e).cloned().unwrap_or_else(F::zero)
    }

    pub fn constant_term(&self) -> F {
        self.coeff(&vec![0; self.vars])
    }

    fn check(&self, o: &Self) -> Result<(), Error> {
        if self.vars != o.vars {
            return Err(Error::DomainMismatch);
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self, Error> {
        self.check(o)?;
        let order = self.order.min(o.order);
        let mut terms = BTreeMap::new();
        for (e, c) in self.terms.iter().chain(o.terms.iter()) {
            if total_deg(e) > order {
                continue;
            }
            let slot = terms.entry(e.clone()).or_insert_with(F::zero);
            *slot = slot.add(c);
        }
        terms.retain(|_, c: &mut F| !c.is_zero());
        Ok(TruncatedSeries { vars: self.vars, order, terms })
    }

    pub fn sub(&self, o: &Self) -> Result<Self, Error> {
        self.add(&o.scale(&F::one().neg()))
    }

    pub fn scale(&self, s: &F) -> Self {
        if s.is_zero() {
            return Self::zero(self.vars, self.order);
        }
        TruncatedSeries {
            vars: self.vars,
            order: self.order,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.mul(s))).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Result<Self, Error> {
        self.check(o)?;
        let order = self.order.min(o.order);
        let mut terms: BTreeMap<Expt, F> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            let da = total_deg(ea);
            if da > order {
                continue;
            }
            for (eb, cb) in &o.terms {
                if da + total_deg(eb) > order {
                    continue;
                }
                let e: Expt = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                let slot = terms.entry(e).or_insert_with(F::zero);
                *slot = slot.add(&ca.mul(cb));
            }
        }
        terms.retain(|_, c: &mut F| !c.is_zero());
        Ok(TruncatedSeries { vars: self.vars, order, terms })
    }

    /// `f(subs[0], ..., subs[r-1])`; each substitution must kill its
    /// constant term so the composition is a well-defined formal series.
    pub fn compose(&self, subs: &[TruncatedSeries<F>]) -> Result<Self, Error> {
        if subs.len() != self.vars {
            return Err(Error::DimensionMismatch);
        }
        let mut order = self.order;
        for s in subs {
            if !s.constant_term().is_zero() {
                return Err(Error::SingularSystem);
            }
            order = order.min(s.order);
        }
        let out_vars = subs.first().map(|s| s.vars).unwrap_or(0);
        // Cache powers of each substituted series on demand.
        let mut powers: Vec<Vec<TruncatedSeries<F>>> = subs
            .iter()
            .map(|s| {
                let mut sc = s.clone();
                sc.order = order;
                sc.terms.retain(|e, _| total_deg(e) <= order);
                vec![TruncatedSeries::constant(out_vars, order, F::one()), sc]
            })
            .collect();
        let mut acc = TruncatedSeries::zero(out_vars, order);
        for (e, c) in &self.terms {
            if total_deg(e) > order {
                continue;
            }
            let mut term = TruncatedSeries::constant(out_vars, order, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().mul(&powers[i][1])?;
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][k as usize])?;
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Degree-`d` homogeneous part.
    fn homogeneous(&self, d: u32) -> Self {
        TruncatedSeries {
            vars: self.vars,
            order: self.order,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| total_deg(e) == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Minimal total degree of a nonzero term.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| total_deg(e)).min()
    }

    /// The unique exponent minimizing `alpha . beta`, with its coefficient.
    ///
    /// The reported minimum is certified against the truncation boundary:
    /// it must not exceed `(order + 1) * min(alpha_i)`, the smallest weight
    /// a dropped term could carry.
    pub fn lowest_term(
        &self,
        alpha: &WeightVector,
        tiebreak: TieBreak,
    ) -> Result<(Expt, F), Error> {
        if self.terms.is_empty() {
            return Err(Error::ZeroInput);
        }
        if alpha.len() != self.vars {
            return Err(Error::DimensionMismatch);
        }
        let to_i64 = |e: &Expt| e.iter().map(|&x| x as i64).collect::<Vec<i64>>();
        let mut best: Option<(Expt, crate::wfield::WeightScalar)> = None;
        for e in self.terms.keys() {
            let w = alpha.dot(&to_i64(e))?;
            match &best {
                None => best = Some((e.clone(), w)),
                Some((be, bw)) => match w.compare(bw)? {
                    core::cmp::Ordering::Less => best = Some((e.clone(), w)),
                    core::cmp::Ordering::Equal => match tiebreak {
                        TieBreak::Strict => {
                            return Err(Error::Unsupported(
                                "weight tie under strict tie-break; declare an \
                                 independent basis or use lexicographic mode"
                                    .into(),
                            ))
                        }
                        TieBreak::Lex => {
                            if e < be {
                                best = Some((e.clone(), w));
                            }
                        }
                    },
                    core::cmp::Ordering::Greater => {}
                },
            }
        }
        let (e, w) = best.unwrap();
        // Certify: any term beyond the truncation order has weight at least
        // (order+1) * min_i alpha_i; the minimum must not exceed that.
        let mut min_alpha = alpha.entries()[0].clone();
        for a in &alpha.entries()[1..] {
            if a.compare(&min_alpha)? == core::cmp::Ordering::Less {
                min_alpha = a.clone();
            }
        }
        let bound = min_alpha.scale(&Rat::from(num_bigint::BigInt::from(
            self.order as i64 + 1,
        )));
        if w.compare(&bound)? == core::cmp::Ordering::Greater {
            return Err(Error::TruncationInsufficient { order: self.order });
        }
        let c = self.terms.get(&e).unwrap().clone();
        Ok((e, c))
    }
}

/// Formal inverse of a square system `g` with zero constant terms and an
/// invertible linear part: returns `h` with `g(h) = id` (and `h(g) = id`)
/// up to the truncation order.
pub fn invert_system<F: ExactField>(
    g: &[TruncatedSeries<F>],
) -> Result<Vec<TruncatedSeries<F>>, Error> {
    let r = g.len();
    if r == 0 {
        return Ok(Vec::new());
    }
    let vars = g[0].vars();
    if vars != r {
        return Err(Error::DimensionMismatch);
    }
    let order = g.iter().map(|s| s.order()).min().unwrap();
    for gi in g {
        if !gi.constant_term().is_zero() {
            return Err(Error::SingularSystem);
        }
    }
    // Linear part matrix L, L[i][j] = coefficient of x_j in g_i.
    let mut l = vec![vec![F::zero(); r]; r];
    for (i, gi) in g.iter().enumerate() {
        for j in 0..r {
            let mut e = vec![0u32; r];
            e[j] = 1;
            l[i][j] = gi.coeff(&e);
        }
    }
    let linv = invert_matrix(&l).ok_or(Error::SingularSystem)?;
    // h_0 = L^-1 x, then contract: h <- h - L^-1 (g(h) - x).
    let x: Vec<TruncatedSeries<F>> =
        (0..r).map(|i| TruncatedSeries::var(r, order, i)).collect();
    let apply = |m: &Vec<Vec<F>>, v: &[TruncatedSeries<F>]| -> Result<Vec<TruncatedSeries<F>>, Error> {
        let mut out = Vec::with_capacity(r);
        for row in m {
            let mut acc = TruncatedSeries::zero(r, order);
            for (c, vi) in row.iter().zip(v.iter()) {
                acc = acc.add(&vi.scale(c))?;
            }
            out.push(acc);
        }
        Ok(out)
    };
    let mut h = apply(&linv, &x)?;
    for _ in 0..=order {
        let mut err = Vec::with_capacity(r);
        let mut all_zero = true;
        for (gi, xi) in g.iter().zip(x.iter()) {
            let e = gi.compose(&h)?.sub(xi)?;
            all_zero &= e.is_zero();
            err.push(e);
        }
        if all_zero {
            break;
        }
        let corr = apply(&linv, &err)?;
        for (hi, ci) in h.iter_mut().zip(corr.iter()) {
            *hi = hi.sub(ci)?;
        }
    }
    Ok(h)
}

fn invert_matrix<F: ExactField>(m: &[Vec<F>]) -> Option<Vec<Vec<F>>> {
    let n = m.len();
    let mut a: Vec<Vec<F>> = m.to_vec();
    let mut inv: Vec<Vec<F>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { F::one() } else { F::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].inv()?;
        for j in 0..n {
            a[col][j] = a[col][j].mul(&p);
            inv[col][j] = inv[col][j].mul(&p);
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let s = f.mul(&a[col][j]);
                a[r][j] = a[r][j].sub(&s);
                let s = f.mul(&inv[col][j]);
                inv[r][j] = inv[r][j].sub(&s);
            }
        }
    }
    Some(inv)
}

/// The two analytic branches of a split node, with the unit relating their
/// product to the source equation.
#[derive(Clone, Debug)]
pub struct BranchPair {
    pub x1: TruncatedSeries<Rat>,
    pub x2: TruncatedSeries<Rat>,
    pub unit: TruncatedSeries<Rat>,
    pub order: u32,
}

/// Factors a bivariate equation with an ordinary rational-split node at the
/// origin as `x1 * x2 * unit = f` up to the truncation order (Hensel
/// lifting degree by degree).
pub fn node_branches(f: &TruncatedSeries<Rat>) -> Result<BranchPair, Error> {
    if f.vars() != 2 {
        return Err(Error::DimensionMismatch);
    }
    if let Some(d) = f.min_degree() {
        if d < 2 {
            return Err(Error::NonSplitNode);
        }
    } else {
        return Err(Error::ZeroInput);
    }
    let order = f.order();
    let a = f.coeff(&[2, 0]);
    let b = f.coeff(&[1, 1]);
    let c = f.coeff(&[0, 2]);
    // Split a x^2 + b xy + c y^2 = s * l1 * l2 with l1, l2 independent.
    // Represent l_i by (p, q) meaning p x + q y.
    let (s, l1, l2) = split_quadratic(&a, &b, &c)?;
    // Linear coordinates (x', y') = (l1, l2); express f there.
    // Inverse of the 2x2 matrix [[l1.0, l1.1], [l2.0, l2.1]].
    let det = &l1.0 * &l2.1 - &l1.1 * &l2.0;
    if Zero::is_zero(&det) {
        return Err(Error::NonSplitNode);
    }
    let inv = [
        [&l2.1 / &det, -(&l1.1 / &det)],
        [-(&l2.0 / &det), &l1.0 / &det],
    ];
    // x = inv[0][0] x' + inv[0][1] y', y = inv[1][0] x' + inv[1][1] y'.
    let lin = |row: &[Rat; 2]| {
        let mut s = TruncatedSeries::monomial(2, order, vec![1, 0], row[0].clone());
        s = s
            .add(&TruncatedSeries::monomial(2, order, vec![0, 1], row[1].clone()))
            .unwrap();
        s
    };
    let g = f
        .compose(&[lin(&inv[0]), lin(&inv[1])])?
        .scale(&(<Rat as One>::one() / &s));
    debug_assert!(g.coeff(&[1, 1]) == <Rat as One>::one());
    // Hensel: g = x1' * x2' * u with x1' = x' + (pure y' terms), etc.
    let mut x1 = TruncatedSeries::var(2, order, 0);
    let mut x2 = TruncatedSeries::var(2, order, 1);
    let mut u = TruncatedSeries::constant(2, order, rat(1, 1));
    for d in 3..=order {
        let prod = x1.mul(&x2)?.mul(&u)?;
        let rho = g.sub(&prod)?.homogeneous(d);
        if rho.is_zero() {
            continue;
        }
        let mut dx1 = TruncatedSeries::zero(2, order);
        let mut dx2 = TruncatedSeries::zero(2, order);
        let mut du = TruncatedSeries::zero(2, order);
        for (e, coef) in rho.terms() {
            let (i, j) = (e[0], e[1]);
            if i == 0 {
                dx1 = dx1.add(&TruncatedSeries::monomial(
                    2,
                    order,
                    vec![0, j - 1],
                    coef.clone(),
                ))?;
            } else if j == 0 {
                dx2 = dx2.add(&TruncatedSeries::monomial(
                    2,
                    order,
                    vec![i - 1, 0],
                    coef.clone(),
                ))?;
            } else {
                du = du.add(&TruncatedSeries::monomial(
                    2,
                    order,
                    vec![i - 1, j - 1],
                    coef.clone(),
                ))?;
            }
        }
        x1 = x1.add(&dx1)?;
        x2 = x2.add(&dx2)?;
        u = u.add(&du)?;
    }
    // Back to the original coordinates.
    let l1s = {
        let mut s = TruncatedSeries::monomial(2, order, vec![1, 0], l1.0.clone());
        s = s
            .add(&TruncatedSeries::monomial(2, order, vec![0, 1], l1.1.clone()))
            .unwrap();
        s
    };
    let l2s = {
        let mut s = TruncatedSeries::monomial(2, order, vec![1, 0], l2.0.clone());
        s = s
            .add(&TruncatedSeries::monomial(2, order, vec![0, 1], l2.1.clone()))
            .unwrap();
        s
    };
    let subs = [l1s, l2s];
    let x1o = x1.compose(&subs)?;
    let x2o = x2.compose(&subs)?;
    let uo = u.compose(&subs)?.scale(&s);
    Ok(BranchPair { x1: x1o, x2: x2o, unit: uo, order })
}

/// `a x^2 + b xy + c y^2 = s * (p1 x + q1 y)(p2 x + q2 y)` with the two
/// factors distinct, all over the rationals.
fn split_quadratic(a: &Rat, b: &Rat, c: &Rat) -> Result<(Rat, (Rat, Rat), (Rat, Rat)), Error> {
    let two = Rat::from(num_bigint::BigInt::from(2));
    let four = Rat::from(num_bigint::BigInt::from(4));
    if Zero::is_zero(a) && Zero::is_zero(c) {
        if Zero::is_zero(b) {
            return Err(Error::NonSplitNode);
        }
        return Ok((b.clone(), (rat(1, 1), rat(0, 1)), (rat(0, 1), rat(1, 1))));
    }
    if !Zero::is_zero(a) {
        // a (x - t1 y)(x - t2 y) with t roots of a t^2 + b t + c = 0.
        let disc = b * b - &four * a * c;
        let root = rational_sqrt(&disc).ok_or(Error::NonSplitNode)?;
        if Zero::is_zero(&root) {
            return Err(Error::NonSplitNode);
        }
        let t1 = (-b + &root) / (&two * a);
        let t2 = (-b - &root) / (&two * a);
        Ok((a.clone(), (rat(1, 1), -t1), (rat(1, 1), -t2)))
    } else {
        // c (y - t1 x)(y - t2 x), roots of c t^2 + b t + a = 0 (a = 0).
        let disc = b * b;
        let root = rational_sqrt(&disc).unwrap();
        if Zero::is_zero(&root) {
            return Err(Error::NonSplitNode);
        }
        let t1 = (-b + &root) / (&two * c);
        let t2 = (-b - &root) / (&two * c);
        Ok((c.clone(), (-t1, rat(1, 1)), (-t2, rat(1, 1))))
    }
}

fn rational_sqrt(q: &Rat) -> Option<Rat> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().magnitude().sqrt();
    let d = q.denom().magnitude().sqrt();
    let cand = Rat::new(
        num_bigint::BigInt::from(n),
        num_bigint::BigInt::from(d),
    );
    if &(&cand * &cand) == q {
        Some(cand)
    } else {
        None
    }
}
