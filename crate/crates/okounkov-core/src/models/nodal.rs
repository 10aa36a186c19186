//! The nodal plane cubic model: branch expansion of sections at the node,
//! reduction to distinct valuation values, and the resulting Gamma sets.
//!
//! Sections of degree m restrict to monomials x^a y^b (a + b <= m) on the
//! affine chart of the node. Each is expanded in the branch coordinates
//! (u, v); Gaussian elimination over the weight-ordered exponent columns
//! turns any basis into one with pairwise distinct valuation values, whose
//! pivots form Gamma_m.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::bodies::{okounkov_body, Polytope};
use crate::error::Error;
use crate::models::{d_of, integer_weights, predicted_body};
use crate::series::{invert_system, node_branches, TieBreak, TruncatedSeries};
use crate::wfield::{rat, Rat, WeightVector};

/// Sparse bivariate series in the branch coordinates.
type UvSeries = BTreeMap<(u32, u32), Rat>;

/// Hard ceiling for the adaptive truncation order.
const MAX_ORDER: u32 = 512;

#[derive(Clone, Debug)]
pub struct NodalCubicModel {
    /// Homogeneous degree-3 terms `(a, b, c) -> coefficient` with the node
    /// at [0:0:1].
    cubic: Vec<([u32; 3], Rat)>,
    order: u32,
    x_uv: UvSeries,
    y_uv: UvSeries,
}

impl NodalCubicModel {
    /// The default cubic `y^2 z = x^2 z + x^3` with its split node at the
    /// origin of the z-chart.
    pub fn standard() -> Result<Self, Error> {
        NodalCubicModel::new(&[
            ([0, 2, 1], rat(1, 1)),
            ([2, 0, 1], rat(-1, 1)),
            ([3, 0, 0], rat(-1, 1)),
        ])
    }

    /// Builds the model from homogeneous cubic terms. The node must be at
    /// [0:0:1] and split over the rationals; both are verified through the
    /// branch factorization.
    pub fn new(terms: &[([u32; 3], Rat)]) -> Result<Self, Error> {
        if terms.iter().any(|(e, _)| e[0] + e[1] + e[2] != 3) {
            return Err(Error::ModelConsistency(
                "defining equation must be homogeneous of degree 3".into(),
            ));
        }
        let mut model = NodalCubicModel {
            cubic: terms.to_vec(),
            order: 0,
            x_uv: BTreeMap::new(),
            y_uv: BTreeMap::new(),
        };
        model.rebuild(16)?;
        Ok(model)
    }

    /// The chart equation f(x, y) as a series of the requested order.
    fn chart_series(&self, order: u32) -> Result<TruncatedSeries<Rat>, Error> {
        let mut f = TruncatedSeries::zero(2, order);
        for (e, c) in &self.cubic {
            let mono = TruncatedSeries::monomial(2, order, vec![e[0], e[1]], c.clone());
            f = f.add(&mono)?;
        }
        Ok(f)
    }

    /// Recomputes the branch factorization and the chart coordinates as
    /// series in the branch coordinates, at the given truncation order.
    /// Cubics of the shape `c y^2 + (terms in x alone)` take a closed-form
    /// route through a univariate square root; anything else goes through
    /// the general factorization and system inversion.
    fn rebuild(&mut self, order: u32) -> Result<(), Error> {
        if let Some((x_uv, y_uv)) = self.reflection_branch_expand(order)? {
            self.x_uv = x_uv;
            self.y_uv = y_uv;
        } else {
            let f = self.chart_series(order)?;
            let branches = node_branches(&f)?;
            let inv = invert_system(&[branches.x1.clone(), branches.x2.clone()])?;
            self.x_uv = to_uv(&inv[0]);
            self.y_uv = to_uv(&inv[1]);
        }
        self.order = order;
        Ok(())
    }

    /// Closed-form branch coordinates for `c0 y^2 + sum_k b_k x^k = 0`
    /// (k >= 2): the branches are `y = -+ x s(x)` with
    /// `s = sqrt(-(b_2 + b_3 x)/c0)`, so `u = y - x s`, `v = y + x s`,
    /// `y = (u + v)/2`, and `x` is the univariate inverse of `x s(x)`
    /// evaluated at `(v - u)/2`. Returns `Ok(None)` when the cubic lacks
    /// this shape.
    fn reflection_branch_expand(
        &self,
        order: u32,
    ) -> Result<Option<(UvSeries, UvSeries)>, Error> {
        let mut c0 = rat(0, 1);
        let mut b = [rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1)];
        for (e, c) in &self.cubic {
            match (e[0], e[1]) {
                (0, 2) => c0 = &c0 + c,
                (a, 0) if a >= 2 => b[a as usize] = &b[a as usize] + c,
                _ => return Ok(None),
            }
        }
        if Zero::is_zero(&c0) || Zero::is_zero(&b[2]) {
            return Ok(None);
        }
        // y^2 = x^2 g(x), g = -(b2 + b3 x)/c0; the node splits over the
        // rationals exactly when g(0) is a positive rational square.
        let g0 = -(&b[2] / &c0);
        let g1 = -(&b[3] / &c0);
        if !g0.is_positive() {
            return Err(Error::NonSplitNode);
        }
        let r = match rational_sqrt(&g0) {
            Some(r) => r,
            None => return Err(Error::NonSplitNode),
        };
        // s(x) = r sqrt(1 + t x), t = g1/g0: binomial series.
        let t = &g1 / &g0;
        let n = order as usize;
        let mut s: Vec<Rat> = Vec::with_capacity(n + 1);
        let mut coef = r.clone();
        s.push(coef.clone());
        for k in 0..n {
            // binom(1/2, k+1) = binom(1/2, k) * (1/2 - k) / (k + 1)
            coef = coef * (rat(1, 2) - Rat::from(num_bigint::BigInt::from(k)))
                / Rat::from(num_bigint::BigInt::from(k as i64 + 1))
                * &t;
            s.push(coef.clone());
        }
        // w(x) = x s(x); invert to x = X(w), fixing one degree per step.
        let mut g_of_x: Vec<Rat> = Vec::with_capacity(n + 2);
        g_of_x.push(rat(0, 1));
        g_of_x.extend(s.iter().cloned());
        let mut xw: Vec<Rat> = vec![rat(0, 1), rat(1, 1) / &s[0]];
        for d in 2..=n {
            xw.push(rat(0, 1));
            let gx = compose_uni(&g_of_x, &xw, d);
            let last = xw.last_mut().unwrap();
            *last = &*last - &gx[d] / &s[0];
        }
        // Bivariate assembly: w = (v - u)/2.
        let w_bi: UvSeries =
            [((1u32, 0u32), rat(-1, 2)), ((0u32, 1u32), rat(1, 2))].into_iter().collect();
        let keep = |i: u32, j: u32| i + j <= order;
        let mut x_uv: UvSeries = BTreeMap::new();
        let mut wp: UvSeries = [((0u32, 0u32), rat(1, 1))].into_iter().collect();
        for k in 1..=n {
            wp = uv_mul(&wp, &w_bi, &keep);
            if k < xw.len() && !Zero::is_zero(&xw[k]) {
                for (e, c) in &wp {
                    let entry = x_uv.entry(*e).or_insert_with(Rat::zero);
                    *entry += c * &xw[k];
                }
            }
        }
        x_uv.retain(|_, v| !Zero::is_zero(v));
        let y_uv: UvSeries =
            [((1u32, 0u32), rat(1, 2)), ((0u32, 1u32), rat(1, 2))].into_iter().collect();
        Ok(Some((x_uv, y_uv)))
    }

    fn ensure_order(&mut self, order: u32) -> Result<(), Error> {
        if self.order < order {
            self.rebuild(order)?;
        }
        Ok(())
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Valuation value sets for all levels `1..=m_max` under the weight
    /// `alpha`, with adaptive truncation. Level 0 would be `{(0,0)}`.
    pub fn gamma_upto(
        &mut self,
        m_max: u32,
        alpha: &WeightVector,
        tiebreak: TieBreak,
    ) -> Result<BTreeMap<u32, Vec<Vec<i64>>>, Error> {
        if m_max == 0 {
            return Err(Error::EmptyInput);
        }
        let w = integer_weights(alpha)?;
        if w.len() != 2 {
            return Err(Error::DimensionMismatch);
        }
        let mut n = self.initial_order(m_max, alpha, &w);
        loop {
            self.ensure_order(n)?;
            match self.reduce_all(m_max, &w, tiebreak, n) {
                Ok(map) => return Ok(map),
                Err(Error::TruncationInsufficient { .. }) if n < MAX_ORDER => {
                    n = (n * 2).min(MAX_ORDER);
                }
                Err(e) => return Err(e),
            }
        }
    }

    /// One level only.
    pub fn gamma_m(
        &mut self,
        m: u32,
        alpha: &WeightVector,
        tiebreak: TieBreak,
    ) -> Result<Vec<Vec<i64>>, Error> {
        if m == 0 {
            return Ok(vec![vec![0, 0]]);
        }
        let mut all = self.gamma_upto(m, alpha, tiebreak)?;
        all.remove(&m).ok_or(Error::EmptyInput)
    }

    /// Normalized-hull body at the given level cap (rational vertices).
    pub fn body(
        &mut self,
        level_cap: u32,
        alpha: &WeightVector,
        tiebreak: TieBreak,
    ) -> Result<Polytope<Rat>, Error> {
        if level_cap == 0 {
            return Err(Error::EmptyInput);
        }
        let gammas = self.gamma_upto(level_cap, alpha, tiebreak)?;
        okounkov_body(&gammas, 2)
    }

    /// Searches degree `d_n` for a section with valuation value
    /// `(0, d_{n+1})` (or the mirrored value): the unicuspidal member of
    /// the chamber family. Not finding one is a legitimate outcome and is
    /// reported with the pivot profile of the degree.
    pub fn unicuspidal_probe(
        &mut self,
        n: i64,
        alpha: &WeightVector,
        tiebreak: TieBreak,
    ) -> Result<ProbeOutcome, Error> {
        let deg = d_of(n);
        if deg <= 0 {
            return Err(Error::OutOfRange);
        }
        let deg = deg as u32;
        let target = d_of(n + 1);
        let gamma = self.gamma_m(deg, alpha, tiebreak)?;
        let hit = gamma
            .iter()
            .find(|p| (p[0] == 0 && p[1] == target) || (p[0] == target && p[1] == 0));
        Ok(match hit {
            Some(p) => ProbeOutcome::Found { degree: deg, nu: (p[0], p[1]) },
            None => ProbeOutcome::NotFound {
                degree: deg,
                target: (0, target),
                pivots: gamma.iter().map(|p| (p[0], p[1])).collect(),
            },
        })
    }

    /// Truncation-order starting point: enough columns to cover weights up
    /// to 1.2 times the predicted top jump, plus a safety margin. Always
    /// corrected by certification and adaptive doubling.
    fn initial_order(&self, m_max: u32, alpha: &WeightVector, w: &[i64]) -> u32 {
        let min_w = w.iter().copied().min().unwrap_or(1).max(1);
        let scale = w[0] as f64 / alpha.entries()[0].to_f64();
        let t_pred = match predicted_body(alpha) {
            Ok(body) => body
                .vertices()
                .iter()
                .map(|v| {
                    alpha
                        .entries()
                        .iter()
                        .zip(v.iter())
                        .map(|(a, c)| a.to_f64() * crate::field::ExactField::approx(c))
                        .sum::<f64>()
                })
                .fold(0.0f64, f64::max),
            Err(_) => 4.0,
        };
        let est = 1.2 * m_max as f64 * t_pred * scale / min_w as f64 + 4.0;
        (libm::ceil(est) as u32).clamp(8, MAX_ORDER)
    }

    /// Runs the full reduction for all levels at one truncation order.
    fn reduce_all(
        &self,
        m_max: u32,
        w: &[i64],
        tiebreak: TieBreak,
        order: u32,
    ) -> Result<BTreeMap<u32, Vec<Vec<i64>>>, Error> {
        let (a1, a2) = (w[0], w[1]);
        let wcap = (order as i64 + 1) * a1.min(a2);
        // Columns: exponents sorted by weight, then lexicographically.
        let mut cols: Vec<(u32, u32)> = Vec::new();
        for i in 0..=order {
            for j in 0..=(order - i) {
                if a1 * i as i64 + a2 * j as i64 <= wcap {
                    cols.push((i, j));
                }
            }
        }
        cols.sort_by_key(|&(i, j)| (a1 * i as i64 + a2 * j as i64, i, j));
        if tiebreak == TieBreak::Strict {
            let mut seen: Option<i64> = None;
            for &(i, j) in &cols {
                let wt = a1 * i as i64 + a2 * j as i64;
                if seen == Some(wt) {
                    return Err(Error::Unsupported(
                        "weight ties require the lexicographic tie-break".into(),
                    ));
                }
                seen = Some(wt);
            }
        }
        let colidx: BTreeMap<(u32, u32), usize> =
            cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let keep = |i: u32, j: u32| -> bool {
            i + j <= order && a1 * i as i64 + a2 * j as i64 <= wcap
        };
        // Monomial expansions x^a y^b shared across levels.
        let m = m_max as usize;
        let mut xp: Vec<UvSeries> = Vec::with_capacity(m + 1);
        let mut yp: Vec<UvSeries> = Vec::with_capacity(m + 1);
        let one: UvSeries = [((0u32, 0u32), rat(1, 1))].into_iter().collect();
        xp.push(one.clone());
        yp.push(one);
        for k in 1..=m {
            xp.push(uv_mul(&xp[k - 1], &self.x_uv, &keep));
            yp.push(uv_mul(&yp[k - 1], &self.y_uv, &keep));
        }
        let mut expansions: BTreeMap<(u32, u32), BTreeMap<usize, Rat>> = BTreeMap::new();
        for a in 0..=m {
            for b in 0..=(m - a) {
                let s = uv_mul(&xp[a], &yp[b], &keep);
                let row: BTreeMap<usize, Rat> = s
                    .into_iter()
                    .filter_map(|(c, v)| colidx.get(&c).map(|&k| (k, v)))
                    .collect();
                expansions.insert((a as u32, b as u32), row);
            }
        }
        let mut out = BTreeMap::new();
        for level in 1..=m_max {
            let rows: Vec<BTreeMap<usize, Rat>> = (0..=level)
                .flat_map(|a| {
                    (0..=(level - a)).map(move |b| (a, b))
                })
                .map(|(a, b)| expansions[&(a, b)].clone())
                .collect();
            let pivots = distinct_reduction(rows, order)?;
            // Certify: every pivot weight strictly below the first weight a
            // dropped (degree > order) term could have had.
            let mut gamma = Vec::with_capacity(pivots.len());
            for p in pivots {
                let (i, j) = cols[p];
                if a1 * i as i64 + a2 * j as i64 >= (order as i64 + 1) * a1.min(a2) {
                    return Err(Error::TruncationInsufficient { order });
                }
                gamma.push(vec![i as i64, j as i64]);
            }
            out.insert(level, gamma);
        }
        Ok(out)
    }
}

/// Possible outcomes of the unicuspidal-curve search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbeOutcome {
    Found { degree: u32, nu: (i64, i64) },
    NotFound { degree: u32, target: (i64, i64), pivots: Vec<(i64, i64)> },
}

/// Gaussian elimination over weight-ordered columns: returns the pivot
/// column of each input row. A row vanishing within the truncation window
/// signals that the order is too low.
pub fn distinct_reduction(
    rows: Vec<BTreeMap<usize, Rat>>,
    order: u32,
) -> Result<Vec<usize>, Error> {
    let mut pivots: BTreeMap<usize, BTreeMap<usize, Rat>> = BTreeMap::new();
    let mut out = Vec::with_capacity(rows.len());
    for mut r in rows {
        loop {
            let p = match r.keys().next() {
                Some(&p) => p,
                None => return Err(Error::TruncationInsufficient { order }),
            };
            if let Some(q) = pivots.get(&p) {
                let f = &r[&p] / &q[&p];
                for (k, v) in q {
                    let delta = &f * v;
                    let entry = r.entry(*k).or_insert_with(Rat::zero);
                    *entry -= delta;
                    if Zero::is_zero(entry) {
                        r.remove(k);
                    }
                }
            } else {
                pivots.insert(p, r);
                out.push(p);
                break;
            }
        }
    }
    Ok(out)
}

fn to_uv(s: &TruncatedSeries<Rat>) -> UvSeries {
    s.terms()
        .map(|(e, c)| ((e[0], e[1]), c.clone()))
        .collect()
}

/// Exact square root of a nonnegative rational, when one exists.
fn rational_sqrt(q: &Rat) -> Option<Rat> {
    if q.is_negative() {
        return None;
    }
    let ns = q.numer().sqrt();
    let ds = q.denom().sqrt();
    if &(&ns * &ns) == q.numer() && &(&ds * &ds) == q.denom() {
        Some(Rat::new(ns, ds))
    } else {
        None
    }
}

/// `g(x(w))` truncated at degree `n`; `g[0]` and `x[0]` must be zero.
fn compose_uni(g: &[Rat], x: &[Rat], n: usize) -> Vec<Rat> {
    let mut res = vec![rat(0, 1); n + 1];
    let mut xp = vec![rat(0, 1); n + 1];
    xp[0] = rat(1, 1);
    for (k, gk) in g.iter().enumerate().skip(1) {
        xp = mul_uni(&xp, x, n);
        if !Zero::is_zero(gk) {
            for i in 0..=n {
                if !Zero::is_zero(&xp[i]) {
                    res[i] = &res[i] + gk * &xp[i];
                }
            }
        }
        if k >= n {
            break;
        }
    }
    res
}

fn mul_uni(a: &[Rat], b: &[Rat], n: usize) -> Vec<Rat> {
    let mut res = vec![rat(0, 1); n + 1];
    for (i, ai) in a.iter().enumerate().take(n + 1) {
        if Zero::is_zero(ai) {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if i + j > n {
                break;
            }
            if !Zero::is_zero(bj) {
                res[i + j] = &res[i + j] + ai * bj;
            }
        }
    }
    res
}

fn uv_mul(a: &UvSeries, b: &UvSeries, keep: &impl Fn(u32, u32) -> bool) -> UvSeries {
    let mut out: UvSeries = BTreeMap::new();
    for (&(i1, j1), c1) in a {
        for (&(i2, j2), c2) in b {
            let (i, j) = (i1 + i2, j1 + j2);
            if !keep(i, j) {
                continue;
            }
            let entry = out.entry((i, j)).or_insert_with(Rat::zero);
            *entry += c1 * c2;
        }
    }
    out.retain(|_, v| !Zero::is_zero(v));
    out
}
