//! Quasi-monomial valuations, admissible-flag valuations on the stratum,
//! log discrepancies, and the weight-matrix transform of valuation data
//! under toroidal blow-ups.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::field::{ExactField, RatFun};
use crate::series::{TieBreak, TruncatedSeries};
use crate::wfield::{rat, Rat, WeightScalar, WeightVector};

/// Value of the full valuation: the minimizing exponent block followed by
/// the flag block, as one integer vector.
pub type NuPoint = Vec<i64>;

/// Quasi-monomial valuation on a chart with `alpha.len()` coordinates.
#[derive(Clone, Debug)]
pub struct QmValuation {
    pub alpha: WeightVector,
    /// Human-readable chart name carried through reports.
    pub stratum: String,
}

impl QmValuation {
    pub fn new(alpha: WeightVector) -> Self {
        QmValuation { alpha, stratum: String::new() }
    }

    pub fn rank(&self) -> usize {
        self.alpha.rational_rank()
    }
}

/// Admissible flag on the stratum. In-scope strata have dimension at most
/// one: either no flag (point stratum) or one marked point on a curve with
/// coordinate `u`. Longer chains are representable but every operation
/// rejects them.
#[derive(Clone, Debug, PartialEq)]
pub struct FlagSpec {
    /// Successive flag points, expressed in the local coordinate of each
    /// step; in scope: empty or length one.
    pub chain: Vec<Rat>,
}

impl FlagSpec {
    pub fn point() -> Self {
        FlagSpec { chain: Vec::new() }
    }

    pub fn curve_point(at: Rat) -> Self {
        FlagSpec { chain: vec![at] }
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }
}

/// The full valuation `nu`: quasi-monomial part plus flag part.
#[derive(Clone, Debug)]
pub struct NuValuation {
    pub qm: QmValuation,
    pub flag: FlagSpec,
    pub tiebreak: TieBreak,
}

impl NuValuation {
    pub fn new(alpha: WeightVector, flag: FlagSpec, tiebreak: TieBreak) -> Self {
        NuValuation { qm: QmValuation::new(alpha), flag, tiebreak }
    }

    /// Total dimension of the value lattice.
    pub fn n(&self) -> usize {
        self.qm.alpha.len() + self.flag.len()
    }
}

/// Coefficient domains on which a flag can take vanishing orders.
pub trait FlagValued: ExactField {
    fn flag_orders(&self, flag: &FlagSpec) -> Result<Vec<i64>, Error>;
}

impl FlagValued for Rat {
    fn flag_orders(&self, flag: &FlagSpec) -> Result<Vec<i64>, Error> {
        if Zero::is_zero(self) {
            return Err(Error::ZeroInput);
        }
        if flag.is_empty() {
            Ok(Vec::new())
        } else {
            Err(Error::Unsupported(
                "curve flag over a constant coefficient domain".into(),
            ))
        }
    }
}

impl FlagValued for RatFun<Rat> {
    fn flag_orders(&self, flag: &FlagSpec) -> Result<Vec<i64>, Error> {
        if ExactField::is_zero(self) {
            return Err(Error::ZeroInput);
        }
        match flag.len() {
            0 => Ok(Vec::new()),
            1 => Ok(vec![self.order_at(&flag.chain[0])]),
            _ => Err(Error::Unsupported(
                "flags of length greater than one".into(),
            )),
        }
    }
}

impl RatFun<Rat> {
    /// Order of vanishing at `u = a` (negative for a pole).
    pub fn order_at(&self, a: &Rat) -> i64 {
        let (num, den) = self.clone().into_polys();
        poly_order_at(&num, a) - poly_order_at(&den, a)
    }
}

fn poly_order_at(p: &[Rat], a: &Rat) -> i64 {
    // Repeated synthetic division by (u - a).
    let mut cur: Vec<Rat> = p.to_vec();
    let mut ord = 0i64;
    loop {
        let val = cur
            .iter()
            .rev()
            .fold(rat(0, 1), |acc, c| acc * a + c);
        if !Zero::is_zero(&val) || cur.iter().all(Zero::is_zero) {
            return ord;
        }
        // cur = (u - a) * q; compute q by synthetic division.
        let mut q = vec![rat(0, 1); cur.len().saturating_sub(1)];
        let mut carry = rat(0, 1);
        for i in (0..cur.len()).rev() {
            if i == 0 {
                break;
            }
            let c = &cur[i] + &carry;
            carry = &c * a;
            q[i - 1] = c;
        }
        cur = q;
        ord += 1;
        if cur.is_empty() {
            return ord;
        }
    }
}

/// Flag valuation of a coefficient-domain element (Def. of the flag rule:
/// successive vanishing orders).
pub fn flag_value<F: FlagValued>(g: &F, flag: &FlagSpec) -> Result<Vec<i64>, Error> {
    g.flag_orders(flag)
}

/// Full valuation value of a section presented as a series in the stratum
/// coordinates: the minimizing exponent followed by the flag orders of its
/// coefficient. Nonnegative for genuine global sections.
pub fn nu_value<F: FlagValued>(
    s: &TruncatedSeries<F>,
    nu: &NuValuation,
) -> Result<NuPoint, Error> {
    let (beta, c) = s.lowest_term(&nu.qm.alpha, nu.tiebreak)?;
    let flag_part = flag_value(&c, &nu.flag)?;
    let mut out: NuPoint = beta.iter().map(|&b| b as i64).collect();
    for k in &flag_part {
        if *k < 0 {
            return Err(Error::ModelConsistency(
                "negative flag order: coefficient is not regular at the flag point"
                    .into(),
            ));
        }
        out.push(*k);
    }
    Ok(out)
}

/// Quasi-monomial value `alpha . beta` of a section.
pub fn qm_value<F: FlagValued>(
    s: &TruncatedSeries<F>,
    v: &QmValuation,
    tiebreak: TieBreak,
) -> Result<WeightScalar, Error> {
    let (beta, _) = s.lowest_term(&v.alpha, tiebreak)?;
    let b: Vec<i64> = beta.iter().map(|&x| x as i64).collect();
    v.alpha.dot(&b)
}

/// Log discrepancy on a log smooth chart with boundary coefficients
/// `d_i` on the coordinate divisors: `A = sum alpha_i (1 - d_i)`.
pub fn log_discrepancy(v: &QmValuation, d: &[Rat]) -> Result<WeightScalar, Error> {
    if d.len() != v.alpha.len() {
        return Err(Error::DimensionMismatch);
    }
    let one = Rat::from(BigInt::from(1));
    let mut acc = v.alpha.basis().zero();
    for (a, di) in v.alpha.entries().iter().zip(d.iter()) {
        if di >= &one || di.is_negative() {
            return Err(Error::Unsupported(
                "boundary coefficient outside [0, 1)".into(),
            ));
        }
        acc = acc.add(&a.scale(&(&one - di)))?;
    }
    Ok(acc)
}

/// Transform of valuation data under a toroidal modification with weight
/// matrix `W` (columns = coordinate weights of the new divisors): the new
/// weight is `W^-1 alpha`, exponents map by `W^T`, and bodies map by the
/// block matrix `diag(W^T, I)`.
pub fn blowup_transform(
    nu: &NuValuation,
    w: &[Vec<i64>],
) -> Result<(NuValuation, Vec<Vec<i64>>), Error> {
    let r = nu.qm.alpha.len();
    if w.len() != r || w.iter().any(|row| row.len() != r) {
        return Err(Error::DimensionMismatch);
    }
    let winv = rational_inverse(w).ok_or(Error::SingularSystem)?;
    // alpha' = W^-1 alpha, entrywise rational combinations of the entries.
    let mut new_entries = Vec::with_capacity(r);
    for row in &winv {
        let mut acc = nu.qm.alpha.basis().zero();
        for (c, a) in row.iter().zip(nu.qm.alpha.entries().iter()) {
            acc = acc.add(&a.scale(c))?;
        }
        if acc.sign()? <= 0 {
            return Err(Error::NotPositive);
        }
        new_entries.push(acc);
    }
    let alpha2 = WeightVector::new(new_entries)?;
    let n = nu.n();
    // M = blockdiag(W^T, I).
    let mut m = vec![vec![0i64; n]; n];
    for i in 0..r {
        for j in 0..r {
            m[i][j] = w[j][i];
        }
    }
    for i in r..n {
        m[i][i] = 1;
    }
    let nu2 = NuValuation {
        qm: QmValuation { alpha: alpha2, stratum: nu.qm.stratum.clone() },
        flag: nu.flag.clone(),
        tiebreak: nu.tiebreak,
    };
    Ok((nu2, m))
}

/// `W^T beta` on the quasi-monomial block, identity on the flag block.
pub fn transform_point(m: &[Vec<i64>], p: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(p.iter()).map(|(a, b)| a * b).sum())
        .collect()
}

fn rational_inverse(w: &[Vec<i64>]) -> Option<Vec<Vec<Rat>>> {
    let n = w.len();
    let mut a: Vec<Vec<Rat>> = w
        .iter()
        .map(|row| row.iter().map(|&x| Rat::from(BigInt::from(x))).collect())
        .collect();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rat::from(BigInt::from(1))
                    } else {
                        rat(0, 1)
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !Zero::is_zero(&a[r][col]))?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r == col || Zero::is_zero(&a[r][col]) {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let s = &f * &a[col][j];
                a[r][j] = &a[r][j] - s;
                let s = &f * &inv[col][j];
                inv[r][j] = &inv[r][j] - s;
            }
        }
    }
    Some(inv)
}

/// Total order on valuation values used by the reduction algorithm: first
/// the weight of the exponent block, then (under the lexicographic
/// tie-break) the exponent block itself, then the flag block.
pub fn compare_nu(
    a: &[i64],
    b: &[i64],
    alpha: &WeightVector,
    tiebreak: TieBreak,
) -> Result<Ordering, Error> {
    let r = alpha.len();
    let wa = alpha.dot(&a[..r])?;
    let wb = alpha.dot(&b[..r])?;
    match wa.compare(&wb)? {
        Ordering::Equal => {
            if a[..r] != b[..r] {
                match tiebreak {
                    TieBreak::Strict => {
                        return Err(Error::Unsupported(
                            "weight tie under strict tie-break".into(),
                        ))
                    }
                    TieBreak::Lex => return Ok(a[..r].cmp(&b[..r])),
                }
            }
            Ok(a[r..].cmp(&b[r..]))
        }
        ord => Ok(ord),
    }
}
