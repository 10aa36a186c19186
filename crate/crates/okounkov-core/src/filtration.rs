//! Jumping-number tables of a valuation filtration and the derived
//! invariant family: T_m and T, the partial averages S_{m,k}, the limits
//! S^tau via both the table route and the body-integral route, the
//! thresholds Q_tau, integer rounding, monomial log canonical thresholds,
//! and delta reports.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::bodies::VolumeFunction;
use crate::error::Error;
use crate::field::{quad_to_scalar, scalar_to_quad, ExactField, Quad};
use crate::poly::Poly;
use crate::wfield::{rat, Rat, WeightScalar, WeightVector};

/// Per-degree sorted jumping numbers `j_{m,1} >= ... >= j_{m,N_m} >= 0`.
#[derive(Clone, Debug)]
pub struct JumpingTable {
    rows: BTreeMap<u32, Vec<WeightScalar>>,
}

impl JumpingTable {
    pub fn new() -> Self {
        JumpingTable { rows: BTreeMap::new() }
    }

    /// Inserts a row, sorting it nonincreasing.
    pub fn insert_row(&mut self, m: u32, mut jumps: Vec<WeightScalar>) -> Result<(), Error> {
        if m == 0 {
            return Err(Error::OutOfRange);
        }
        // Exact descending sort.
        let mut err = None;
        jumps.sort_by(|a, b| match b.compare(a) {
            Ok(o) => o,
            Err(e) => {
                err = Some(e);
                core::cmp::Ordering::Equal
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        self.rows.insert(m, jumps);
        Ok(())
    }

    /// Builds the table of a quasi-monomial weight from valuation point
    /// sets: the jump of a point is the weight of its exponent block.
    pub fn from_gamma(
        gammas: &BTreeMap<u32, Vec<Vec<i64>>>,
        alpha: &WeightVector,
    ) -> Result<Self, Error> {
        let r = alpha.len();
        let mut t = JumpingTable::new();
        for (&m, pts) in gammas {
            if m == 0 {
                continue;
            }
            let mut jumps = Vec::with_capacity(pts.len());
            for p in pts {
                if p.len() < r {
                    return Err(Error::DimensionMismatch);
                }
                jumps.push(alpha.dot(&p[..r])?);
            }
            t.insert_row(m, jumps)?;
        }
        Ok(t)
    }

    pub fn degrees(&self) -> impl Iterator<Item = u32> + '_ {
        self.rows.keys().copied()
    }

    pub fn row(&self, m: u32) -> Option<&[WeightScalar]> {
        self.rows.get(&m).map(Vec::as_slice)
    }

    pub fn n_m(&self, m: u32) -> usize {
        self.rows.get(&m).map_or(0, Vec::len)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.rows.keys().next_back().copied()
    }

    /// `T_m = j_{m,1} / m` for every degree with a nonempty row.
    pub fn t_list(&self) -> Vec<(u32, WeightScalar)> {
        self.rows
            .iter()
            .filter_map(|(&m, row)| {
                row.first()
                    .map(|j| (m, j.scale(&Rat::new(BigInt::one(), BigInt::from(m)))))
            })
            .collect()
    }

    /// Best available lower bound for T: the maximum of the `T_m`.
    pub fn t_estimate(&self) -> Result<Option<WeightScalar>, Error> {
        let mut best: Option<WeightScalar> = None;
        for (_, tm) in self.t_list() {
            best = Some(match best {
                None => tm,
                Some(cur) => {
                    if tm.compare(&cur)?.is_gt() {
                        tm
                    } else {
                        cur
                    }
                }
            });
        }
        Ok(best)
    }

    /// `S_{m,k}`: the average of the top `k` jumps divided by `m`.
    pub fn s_mk(&self, m: u32, k: usize) -> Result<WeightScalar, Error> {
        let row = self.rows.get(&m).ok_or(Error::OutOfRange)?;
        if k == 0 || k > row.len() {
            return Err(Error::OutOfRange);
        }
        let basis = row[0].basis().clone();
        let mut acc = basis.zero();
        for j in &row[..k] {
            acc = acc.add(j)?;
        }
        Ok(acc.scale(&Rat::new(BigInt::one(), BigInt::from(m as u64 * k as u64))))
    }

    /// Replaces every jump by its floor: the induced integer filtration.
    pub fn round_to_integers(&self) -> Result<JumpingTable, Error> {
        let mut out = JumpingTable::new();
        for (&m, row) in &self.rows {
            let mut jumps = Vec::with_capacity(row.len());
            for j in row {
                let f = j.floor()?;
                jumps.push(j.basis().rational_scalar(Rat::from(f))?);
            }
            out.insert_row(m, jumps)?;
        }
        Ok(out)
    }
}

impl Default for JumpingTable {
    fn default() -> Self {
        JumpingTable::new()
    }
}

/// Replaces every jump by its floor (free-function spelling of
/// [`JumpingTable::round_to_integers`]).
pub fn n_round(table: &JumpingTable) -> Result<JumpingTable, Error> {
    table.round_to_integers()
}

/// Table-route value of S^tau at one degree: `k_m = ceil(tau N_m)`.
#[derive(Clone, Debug)]
pub struct TableSTau {
    pub m: u32,
    pub k: usize,
    pub value: WeightScalar,
}

/// Raw table-route values at the two largest degrees plus the two-point
/// 1/m extrapolation; the raw value at max degree is never replaced.
#[derive(Clone, Debug)]
pub struct TableRouteReport {
    pub raw: TableSTau,
    pub extrapolated: Option<WeightScalar>,
}

fn ceil_frac(tau: &Rat, n: usize) -> usize {
    // ceil(tau * n), clamped into [1, n].
    let prod = tau * Rat::from(BigInt::from(n));
    let mut k = prod.ceil().to_integer();
    if k < BigInt::one() {
        k = BigInt::one();
    }
    let k: usize = k.try_into().unwrap_or(n);
    k.min(n).max(1)
}

/// Table route for S^tau: `S_{m, ceil(tau N_m)}` at the largest available
/// degree, with a two-point Richardson extrapolation in 1/m when a second
/// degree is available. For `tau = 0` the value is `T_m` (k = 1).
pub fn s_tau_table(table: &JumpingTable, tau: &Rat) -> Result<TableRouteReport, Error> {
    if tau.is_negative() || tau > &rat(1, 1) {
        return Err(Error::OutOfRange);
    }
    let degrees: Vec<u32> = table
        .degrees()
        .filter(|&m| table.n_m(m) > 0)
        .collect();
    let m2 = *degrees.last().ok_or(Error::EmptyInput)?;
    let k2 = if Zero::is_zero(tau) { 1 } else { ceil_frac(tau, table.n_m(m2)) };
    let s2 = table.s_mk(m2, k2)?;
    let raw = TableSTau { m: m2, k: k2, value: s2.clone() };
    let extrapolated = if degrees.len() >= 2 {
        let m1 = degrees[degrees.len() - 2];
        let k1 = if Zero::is_zero(tau) { 1 } else { ceil_frac(tau, table.n_m(m1)) };
        let s1 = table.s_mk(m1, k1)?;
        // (m2 s2 - m1 s1) / (m2 - m1) removes the 1/m term.
        let num = s2
            .scale(&Rat::from(BigInt::from(m2)))
            .sub(&s1.scale(&Rat::from(BigInt::from(m1))))?;
        Some(num.scale(&Rat::new(BigInt::one(), BigInt::from(m2 - m1))))
    } else {
        None
    };
    Ok(TableRouteReport { raw, extrapolated })
}

/// `Q_tau`: the smallest `t >= 0` with `V(t) <= tau * vol_L`, by exact
/// piecewise root isolation. `Q_1 = 0` falls out of the definition.
pub fn q_tau(vf: &VolumeFunction<Quad>, tau: &Rat, vol_l: &Quad) -> Result<Quad, Error> {
    if tau.is_negative() || tau > &rat(1, 1) {
        return Err(Error::OutOfRange);
    }
    if Zero::is_zero(tau) {
        return Ok(vf.t_max());
    }
    let target = vol_l.mul(&Quad::rational(tau.clone()));
    let zero = Quad::zero();
    let start = if vf.t_min().sign() > 0 { vf.t_min() } else { zero.clone() };
    if vf.eval(&start).cmp_exact(&target).is_le() {
        return Ok(zero);
    }
    for (lo, hi, p) in &vf.pieces {
        if hi.cmp_exact(&start).is_le() {
            continue;
        }
        let lo = if lo.cmp_exact(&start).is_lt() { &start } else { lo };
        if p.eval(hi).cmp_exact(&target).is_gt() {
            continue;
        }
        // The crossing happens in [lo, hi]; V is nonincreasing.
        let shifted = p.sub(&Poly::constant(target.clone()));
        if shifted.is_zero() {
            return Ok(lo.clone());
        }
        let roots = shifted.roots_in(lo, hi).ok_or(Error::FieldClosure)?;
        if let Some(r) = roots.first() {
            return Ok(r.clone());
        }
        return Err(Error::FieldClosure);
    }
    // V never drops to the target inside its support: threshold at the top.
    Ok(vf.t_max())
}

/// Body route for S^tau: `Q_tau + (1 / (tau vol_L)) * integral of V over
/// [Q_tau, T]`. For `tau = 0` this degenerates to `T`.
pub fn s_tau_body(
    vf: &VolumeFunction<Quad>,
    tau: &Rat,
    vol_l: &Quad,
) -> Result<Quad, Error> {
    if tau.is_negative() || tau > &rat(1, 1) {
        return Err(Error::OutOfRange);
    }
    let t = vf.t_max();
    if Zero::is_zero(tau) {
        return Ok(t);
    }
    let q = q_tau(vf, tau, vol_l)?;
    let integral = vf.integrate(&q, &t)?;
    let denom = vol_l.mul(&Quad::rational(tau.clone()));
    if denom.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok(q.add(&integral.div(&denom)))
}

/// Largest weight value over a body: the exact T-invariant of a
/// valuation whose body is known.
pub fn body_t(vf: &VolumeFunction<Quad>) -> Quad {
    vf.t_max()
}

/// Monomial log canonical threshold on a smooth surface-or-higher chart:
/// for divisor data `sum mult_l * div(monomial_l)` the threshold is
/// `min_i 1 / c_i` over the total exponent vector, capped at the
/// reduced-divisor bound `min_l 1 / mult_l`.
pub fn monomial_lct(data: &[(Vec<u32>, u32)]) -> Result<Rat, Error> {
    if data.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = data[0].0.len();
    if n == 0 || data.iter().any(|(e, _)| e.len() != n) {
        return Err(Error::DimensionMismatch);
    }
    if data.iter().any(|(_, mult)| *mult == 0) {
        return Err(Error::ZeroInput);
    }
    let mut total = alloc::vec![0u64; n];
    for (exps, mult) in data {
        for (t, e) in total.iter_mut().zip(exps.iter()) {
            *t += *e as u64 * *mult as u64;
        }
    }
    if total.iter().all(|&c| c == 0) {
        return Err(Error::ZeroInput);
    }
    let mut best: Option<Rat> = None;
    let mut consider = |q: Rat| {
        best = Some(match best.take() {
            None => q,
            Some(cur) => {
                if q < cur {
                    q
                } else {
                    cur
                }
            }
        });
    };
    for &c in &total {
        if c > 0 {
            consider(Rat::new(BigInt::one(), BigInt::from(c)));
        }
    }
    for (_, mult) in data {
        consider(Rat::new(BigInt::one(), BigInt::from(*mult)));
    }
    Ok(best.unwrap())
}

/// One tau sample inside an invariant report.
#[derive(Clone, Debug)]
pub struct TauEntry {
    pub tau: Rat,
    pub q_tau: Option<WeightScalar>,
    pub s_body: Option<WeightScalar>,
    pub s_table: Option<TableRouteReport>,
    /// `A / S^tau` from the exact route when available.
    pub delta: Option<WeightScalar>,
}

/// Full invariant family of one valuation candidate. The delta values are
/// upper bounds for the global threshold unless `toric_certified` is set.
#[derive(Clone, Debug)]
pub struct InvariantReport {
    pub label: String,
    pub a: WeightScalar,
    /// Exact T from the body when supplied, else the table estimate.
    pub t: Option<WeightScalar>,
    pub t_m: Vec<(u32, WeightScalar)>,
    pub tau_entries: Vec<TauEntry>,
    /// `alpha_m = A / T_m` per degree.
    pub alpha_m: Vec<(u32, WeightScalar)>,
    pub toric_certified: bool,
    pub truncation_order: Option<u32>,
}

/// Division in the scalar field, joining rational and one-surd values.
pub fn div_scalars(a: &WeightScalar, b: &WeightScalar) -> Result<WeightScalar, Error> {
    let qa = scalar_to_quad(a)?;
    let qb = scalar_to_quad(b)?;
    if qb.is_zero() {
        return Err(Error::ZeroInput);
    }
    if qa.d != 0 && qb.d != 0 && qa.d != qb.d {
        return Err(Error::FieldClosure);
    }
    let inv = qb.inv().ok_or(Error::ZeroInput)?;
    quad_to_scalar(&qa.mul(&inv))
}

/// Assembles the invariant report of one candidate from its jumping table
/// and (optionally) the exact volume function of its body.
pub fn invariant_report(
    label: &str,
    a: &WeightScalar,
    table: &JumpingTable,
    body: Option<(&VolumeFunction<Quad>, &Quad)>,
    taus: &[Rat],
) -> Result<InvariantReport, Error> {
    let t_m = table.t_list();
    let t = match body {
        Some((vf, _)) => Some(quad_to_scalar(&body_t(vf))?),
        None => table.t_estimate()?,
    };
    let mut alpha_m = Vec::with_capacity(t_m.len());
    for (m, tm) in &t_m {
        if !tm.is_zero() {
            alpha_m.push((*m, div_scalars(a, tm)?));
        }
    }
    let mut tau_entries = Vec::with_capacity(taus.len());
    for tau in taus {
        let (q, s_body) = match body {
            Some((vf, vol)) => {
                if Zero::is_zero(tau) {
                    (None, Some(quad_to_scalar(&vf.t_max())?))
                } else {
                    let qv = q_tau(vf, tau, vol)?;
                    let sv = s_tau_body(vf, tau, vol)?;
                    (Some(quad_to_scalar(&qv)?), Some(quad_to_scalar(&sv)?))
                }
            }
            None => (None, None),
        };
        let s_table = s_tau_table(table, tau).ok();
        let s_best = s_body
            .clone()
            .or_else(|| s_table.as_ref().map(|r| r.raw.value.clone()));
        let delta = match s_best {
            Some(ref s) if !s.is_zero() => Some(div_scalars(a, s)?),
            _ => None,
        };
        tau_entries.push(TauEntry {
            tau: tau.clone(),
            q_tau: q,
            s_body,
            s_table,
            delta,
        });
    }
    Ok(InvariantReport {
        label: String::from(label),
        a: a.clone(),
        t,
        t_m,
        tau_entries,
        alpha_m,
        toric_certified: false,
        truncation_order: None,
    })
}

/// Scan summary over candidate reports: minimal delta per tau, flagged as
/// an upper bound unless every candidate is toric-certified.
#[derive(Clone, Debug)]
pub struct ScanSummary {
    pub per_tau: Vec<(Rat, Option<(String, WeightScalar)>)>,
    pub is_upper_bound: bool,
}

pub fn delta_scan(reports: &[InvariantReport], taus: &[Rat]) -> Result<ScanSummary, Error> {
    let mut per_tau = Vec::with_capacity(taus.len());
    for tau in taus {
        let mut best: Option<(String, WeightScalar)> = None;
        for rep in reports {
            for e in &rep.tau_entries {
                if &e.tau != tau {
                    continue;
                }
                if let Some(d) = &e.delta {
                    best = Some(match best.take() {
                        None => (rep.label.clone(), d.clone()),
                        Some((bl, bv)) => {
                            if d.compare(&bv)?.is_lt() {
                                (rep.label.clone(), d.clone())
                            } else {
                                (bl, bv)
                            }
                        }
                    });
                }
            }
        }
        per_tau.push((tau.clone(), best));
    }
    let certified = !reports.is_empty() && reports.iter().all(|r| r.toric_certified);
    Ok(ScanSummary { per_tau, is_upper_bound: !certified })
}
