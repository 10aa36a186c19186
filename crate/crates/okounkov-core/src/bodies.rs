//! Exact convex-polytope engine in ambient dimension up to three: hulls,
//! half-space slices, volumes, the piecewise-polynomial volume function of
//! a weight direction, and the two limit notions for sequences of bodies.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::Error;
use crate::field::{scalar_to_quad, ExactField, Quad, RatFun};
use crate::poly::Poly;
use crate::wfield::{rat, Rat, WeightScalar, WeightVector};

/// A convex polytope given by its irredundant vertex list; facet half-spaces
/// (`a . x >= b`) are cached when the body is full-dimensional. An empty
/// vertex list is the empty set.
#[derive(Clone, Debug)]
pub struct Polytope<F: ExactField> {
    dim: usize,
    verts: Vec<Vec<F>>,
    facets: Vec<(Vec<F>, F)>,
    affine_dim: Option<usize>,
}

/// The concrete coordinate field of public bodies: rationals or one
/// quadratic extension.
pub type Body = Polytope<Quad>;

impl<F: ExactField> PartialEq for Polytope<F> {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && same_point_set(&self.verts, &other.verts)
    }
}

fn same_point_set<F: ExactField>(a: &[Vec<F>], b: &[Vec<F>]) -> bool {
    a.len() == b.len()
        && a.iter().all(|p| b.contains(p))
        && b.iter().all(|p| a.contains(p))
}

fn dot<F: ExactField>(a: &[F], b: &[F]) -> F {
    let mut acc = F::zero();
    for (x, y) in a.iter().zip(b.iter()) {
        acc = acc.add(&x.mul(y));
    }
    acc
}

fn sub_pt<F: ExactField>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b.iter()).map(|(x, y)| x.sub(y)).collect()
}

/// Rank of a list of vectors (Gaussian elimination).
fn rank<F: ExactField>(rows: &[Vec<F>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut m: Vec<Vec<F>> = rows.to_vec();
    let mut r = 0usize;
    for c in 0..cols {
        if let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) {
            m.swap(r, p);
            let pv = m[r][c].clone();
            for i in 0..m.len() {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].div(&pv);
                    for cc in c..cols {
                        let s = f.mul(&m[r][cc]);
                        m[i][cc] = m[i][cc].sub(&s);
                    }
                }
            }
            r += 1;
        }
    }
    r
}

fn dedupe<F: ExactField>(points: &[Vec<F>]) -> Vec<Vec<F>> {
    let mut out: Vec<Vec<F>> = Vec::new();
    for p in points {
        if !out.contains(p) {
            out.push(p.clone());
        }
    }
    out
}

/// 2-D cross product sign of (a - o) x (b - o).
fn cross2<F: ExactField>(o: &[F], a: &[F], b: &[F]) -> i8 {
    let v = a[0]
        .sub(&o[0])
        .mul(&b[1].sub(&o[1]))
        .sub(&a[1].sub(&o[1]).mul(&b[0].sub(&o[0])));
    v.sign()
}

/// Counter-clockwise hull of 2-D points (monotone chain); returns the
/// vertices in boundary order.
fn hull2<F: ExactField>(points: &[Vec<F>]) -> Vec<Vec<F>> {
    let mut pts = dedupe(points);
    pts.sort_by(|a, b| a[0].cmp_exact(&b[0]).then(a[1].cmp_exact(&b[1])));
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Vec<F>> = Vec::new();
    for p in &pts {
        while lower.len() >= 2
            && cross2(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Vec<F>> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && cross2(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

impl<F: ExactField> Polytope<F> {
    pub fn empty(dim: usize) -> Self {
        Polytope { dim, verts: Vec::new(), facets: Vec::new(), affine_dim: None }
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn affine_dim(&self) -> Option<usize> {
        self.affine_dim
    }

    pub fn vertices(&self) -> &[Vec<F>] {
        &self.verts
    }

    pub fn facets(&self) -> &[(Vec<F>, F)] {
        &self.facets
    }

    /// Convex hull of a point list in ambient dimension at most 3.
    pub fn hull(dim: usize, points: &[Vec<F>]) -> Result<Self, Error> {
        if dim > 3 {
            return Err(Error::Unsupported(
                "ambient dimension greater than 3".into(),
            ));
        }
        if points.iter().any(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch);
        }
        let pts = dedupe(points);
        if pts.is_empty() {
            return Ok(Polytope::empty(dim));
        }
        // Affine dimension.
        let dirs: Vec<Vec<F>> = pts[1..].iter().map(|p| sub_pt(p, &pts[0])).collect();
        let k = rank(&dirs);
        if k == 0 {
            return Ok(Polytope {
                dim,
                verts: vec![pts[0].clone()],
                facets: Vec::new(),
                affine_dim: Some(0),
            });
        }
        // Choose k coordinate axes on which the hull projects bijectively.
        let proj_axes = choose_axes(&dirs, k, dim);
        let proj = |p: &Vec<F>| -> Vec<F> {
            proj_axes.iter().map(|&a| p[a].clone()).collect()
        };
        let verts: Vec<Vec<F>> = match k {
            1 => {
                let mut lo = pts[0].clone();
                let mut hi = pts[0].clone();
                for p in &pts {
                    if p[proj_axes[0]].cmp_exact(&lo[proj_axes[0]]).is_lt() {
                        lo = p.clone();
                    }
                    if p[proj_axes[0]].cmp_exact(&hi[proj_axes[0]]).is_gt() {
                        hi = p.clone();
                    }
                }
                vec![lo, hi]
            }
            2 => {
                let projected: Vec<Vec<F>> = pts.iter().map(&proj).collect();
                let h = hull2(&projected);
                // Map back: the projection is injective on the point list
                // up to points sharing a projection; recover originals.
                h.iter()
                    .map(|q| {
                        pts.iter()
                            .find(|p| &proj(p) == q)
                            .expect("projected vertex lost")
                            .clone()
                    })
                    .collect()
            }
            3 => hull3_vertices(&pts),
            _ => unreachable!(),
        };
        let facets = if k == dim {
            compute_facets(dim, &verts)
        } else {
            Vec::new()
        };
        Ok(Polytope { dim, verts, facets, affine_dim: Some(k) })
    }

    /// Membership in the closed hull.
    pub fn contains(&self, p: &[F]) -> bool {
        if self.verts.is_empty() {
            return false;
        }
        if !self.facets.is_empty() && self.affine_dim == Some(self.dim) {
            return self
                .facets
                .iter()
                .all(|(a, b)| dot(a, p).sub(b).sign() >= 0);
        }
        // Degenerate body: adding the point must not add a vertex.
        let mut pts = self.verts.clone();
        pts.push(p.to_vec());
        match Polytope::hull(self.dim, &pts) {
            Ok(h) => same_point_set(&h.verts, &self.verts),
            Err(_) => false,
        }
    }

    pub fn contains_body(&self, other: &Polytope<F>) -> bool {
        other.verts.iter().all(|v| self.contains(v))
    }

    /// Euclidean volume in the ambient dimension; zero for bodies of lower
    /// affine dimension.
    pub fn volume(&self) -> F {
        let k = match self.affine_dim {
            None => return F::zero(),
            Some(k) => k,
        };
        if k < self.dim {
            return F::zero();
        }
        match self.dim {
            0 => F::zero(),
            1 => {
                let mut lo = self.verts[0][0].clone();
                let mut hi = lo.clone();
                for v in &self.verts {
                    if v[0].cmp_exact(&lo).is_lt() {
                        lo = v[0].clone();
                    }
                    if v[0].cmp_exact(&hi).is_gt() {
                        hi = v[0].clone();
                    }
                }
                hi.sub(&lo)
            }
            2 => {
                let ring = hull2(&self.verts);
                shoelace(&ring)
            }
            3 => volume3(&self.verts, &self.facets),
            _ => unreachable!(),
        }
    }

    /// Intersection with the half-space `a . x >= t`.
    pub fn clip(&self, a: &[F], t: &F) -> Result<Polytope<F>, Error> {
        if self.verts.is_empty() {
            return Ok(Polytope::empty(self.dim));
        }
        if a.len() != self.dim {
            return Err(Error::DimensionMismatch);
        }
        let vals: Vec<F> = self.verts.iter().map(|v| dot(a, v).sub(t)).collect();
        let mut kept: Vec<Vec<F>> = Vec::new();
        for (v, val) in self.verts.iter().zip(vals.iter()) {
            if val.sign() >= 0 {
                kept.push(v.clone());
            }
        }
        for i in 0..self.verts.len() {
            for j in (i + 1)..self.verts.len() {
                if vals[i].sign() * vals[j].sign() == -1 {
                    // Segment crossing: v_i + s (v_j - v_i), s = val_i / (val_i - val_j).
                    let s = vals[i].div(&vals[i].sub(&vals[j]));
                    let pt: Vec<F> = self.verts[i]
                        .iter()
                        .zip(self.verts[j].iter())
                        .map(|(x, y)| x.add(&s.mul(&y.sub(x))))
                        .collect();
                    kept.push(pt);
                }
            }
        }
        Polytope::hull(self.dim, &kept)
    }

    /// Intersection of two polytopes (clip by the other's facets). Requires
    /// the other body to be full-dimensional or empty.
    pub fn intersect(&self, other: &Polytope<F>) -> Result<Polytope<F>, Error> {
        if other.is_empty() || self.is_empty() {
            return Ok(Polytope::empty(self.dim));
        }
        if other.affine_dim != Some(self.dim) {
            return Err(Error::Unsupported(
                "intersection with a lower-dimensional body".into(),
            ));
        }
        let mut cur = self.clone();
        for (a, b) in &other.facets {
            cur = cur.clip(a, b)?;
            if cur.is_empty() {
                break;
            }
        }
        Ok(cur)
    }
}

/// Axes whose projection keeps the direction space full rank.
fn choose_axes<F: ExactField>(dirs: &[Vec<F>], k: usize, dim: usize) -> Vec<usize> {
    let mut axes: Vec<usize> = Vec::new();
    for a in 0..dim {
        if axes.len() == k {
            break;
        }
        let mut cand = axes.clone();
        cand.push(a);
        let restricted: Vec<Vec<F>> = dirs
            .iter()
            .map(|d| cand.iter().map(|&i| d[i].clone()).collect())
            .collect();
        if rank(&restricted) == cand.len() {
            axes = cand;
        }
    }
    debug_assert_eq!(axes.len(), k);
    axes
}

fn shoelace<F: ExactField>(ring: &[Vec<F>]) -> F {
    let mut acc = F::zero();
    let n = ring.len();
    for i in 0..n {
        let p = &ring[i];
        let q = &ring[(i + 1) % n];
        acc = acc.add(&p[0].mul(&q[1]).sub(&q[0].mul(&p[1])));
    }
    if acc.sign() < 0 {
        acc = acc.neg();
    }
    acc.div(&F::from_int(2))
}

/// Supporting half-spaces of a full-dimensional polytope.
fn compute_facets<F: ExactField>(dim: usize, verts: &[Vec<F>]) -> Vec<(Vec<F>, F)> {
    match dim {
        1 => {
            let mut lo = verts[0][0].clone();
            let mut hi = lo.clone();
            for v in verts {
                if v[0].cmp_exact(&lo).is_lt() {
                    lo = v[0].clone();
                }
                if v[0].cmp_exact(&hi).is_gt() {
                    hi = v[0].clone();
                }
            }
            vec![
                (vec![F::one()], lo),
                (vec![F::one().neg()], hi.neg()),
            ]
        }
        2 => {
            let ring = hull2(verts);
            let n = ring.len();
            let mut out = Vec::new();
            for i in 0..n {
                let p = &ring[i];
                let q = &ring[(i + 1) % n];
                // Inward normal of the edge p -> q of a CCW ring: the left
                // rotation of the edge direction.
                let a = vec![p[1].sub(&q[1]), q[0].sub(&p[0])];
                let b = dot(&a, p);
                out.push((a, b));
            }
            out
        }
        3 => {
            let mut out: Vec<(Vec<F>, F)> = Vec::new();
            let n = verts.len();
            for i in 0..n {
                for j in (i + 1)..n {
                    for k in (j + 1)..n {
                        let u = sub_pt(&verts[j], &verts[i]);
                        let v = sub_pt(&verts[k], &verts[i]);
                        let nrm = vec![
                            u[1].mul(&v[2]).sub(&u[2].mul(&v[1])),
                            u[2].mul(&v[0]).sub(&u[0].mul(&v[2])),
                            u[0].mul(&v[1]).sub(&u[1].mul(&v[0])),
                        ];
                        if nrm.iter().all(ExactField::is_zero) {
                            continue;
                        }
                        let b = dot(&nrm, &verts[i]);
                        let mut pos = true;
                        let mut neg = true;
                        for p in verts {
                            match dot(&nrm, p).sub(&b).sign() {
                                s if s > 0 => neg = false,
                                s if s < 0 => pos = false,
                                _ => {}
                            }
                        }
                        let (a, b) = if pos {
                            (nrm, b)
                        } else if neg {
                            (
                                nrm.iter().map(ExactField::neg).collect(),
                                b.neg(),
                            )
                        } else {
                            continue;
                        };
                        let canon = canonical_halfspace(a, b);
                        if !out.contains(&canon) {
                            out.push(canon);
                        }
                    }
                }
            }
            out
        }
        _ => Vec::new(),
    }
}

fn canonical_halfspace<F: ExactField>(a: Vec<F>, b: F) -> (Vec<F>, F) {
    let lead = a.iter().find(|c| !c.is_zero()).cloned().unwrap();
    // Positive scaling preserves the inequality direction.
    let scale = if lead.sign() > 0 {
        lead.inv().unwrap()
    } else {
        lead.neg().inv().unwrap()
    };
    (
        a.iter().map(|c| c.mul(&scale)).collect(),
        b.mul(&scale),
    )
}

/// Extreme points among a 3-D point cloud: points active on at least three
/// facets with independent normals.
fn hull3_vertices<F: ExactField>(pts: &[Vec<F>]) -> Vec<Vec<F>> {
    let facets = compute_facets(3, pts);
    let mut out = Vec::new();
    for p in pts {
        let active: Vec<Vec<F>> = facets
            .iter()
            .filter(|(a, b)| dot(a, p).sub(b).is_zero())
            .map(|(a, _)| a.clone())
            .collect();
        if active.len() >= 3 && rank(&active) == 3 {
            out.push(p.clone());
        }
    }
    out
}

fn volume3<F: ExactField>(verts: &[Vec<F>], facets: &[(Vec<F>, F)]) -> F {
    let origin = &verts[0];
    let mut acc = F::zero();
    for (a, b) in facets {
        if dot(a, origin).sub(b).is_zero() {
            continue;
        }
        let on_facet: Vec<Vec<F>> = verts
            .iter()
            .filter(|p| dot(a, p).sub(b).is_zero())
            .cloned()
            .collect();
        if on_facet.len() < 3 {
            continue;
        }
        // Order the facet polygon: project to two axes not aligned with
        // the normal, hull in 2-D.
        let drop = (0..3).find(|&i| !a[i].is_zero()).unwrap();
        let keep: Vec<usize> = (0..3).filter(|&i| i != drop).collect();
        let projected: Vec<Vec<F>> = on_facet
            .iter()
            .map(|p| keep.iter().map(|&i| p[i].clone()).collect())
            .collect();
        let ring2 = hull2(&projected);
        let ring: Vec<Vec<F>> = ring2
            .iter()
            .map(|q| {
                on_facet
                    .iter()
                    .find(|p| keep.iter().map(|&i| p[i].clone()).collect::<Vec<F>>() == *q)
                    .unwrap()
                    .clone()
            })
            .collect();
        for t in 1..(ring.len() - 1) {
            let u = sub_pt(&ring[0], origin);
            let v = sub_pt(&ring[t], origin);
            let w = sub_pt(&ring[t + 1], origin);
            let det = u[0]
                .mul(&v[1].mul(&w[2]).sub(&v[2].mul(&w[1])))
                .sub(&u[1].mul(&v[0].mul(&w[2]).sub(&v[2].mul(&w[0]))))
                .add(&u[2].mul(&v[0].mul(&w[1]).sub(&v[1].mul(&w[0]))));
            let det = if det.sign() < 0 { det.neg() } else { det };
            acc = acc.add(&det);
        }
    }
    acc.div(&F::from_int(6))
}

/// Hull of the normalized valuation points `(1/m) Gamma_m` for `m` up to
/// the level cap; the cap is carried by the caller's report so the
/// under-approximation stays explicit.
pub fn okounkov_body(
    gammas: &BTreeMap<u32, Vec<Vec<i64>>>,
    dim: usize,
) -> Result<Polytope<Rat>, Error> {
    let mut pts: Vec<Vec<Rat>> = Vec::new();
    for (&m, gm) in gammas {
        if m == 0 {
            continue;
        }
        for p in gm {
            if p.len() != dim {
                return Err(Error::DimensionMismatch);
            }
            pts.push(
                p.iter()
                    .map(|&c| Rat::new(BigInt::from(c), BigInt::from(m)))
                    .collect(),
            );
        }
    }
    if pts.is_empty() {
        return Err(Error::EmptyInput);
    }
    Polytope::hull(dim, &pts)
}

/// Converts a rational-vertex polytope into the public body field.
pub fn to_quad_body(p: &Polytope<Rat>) -> Body {
    let verts: Vec<Vec<Quad>> = p
        .verts
        .iter()
        .map(|v| v.iter().map(|c| Quad::rational(c.clone())).collect())
        .collect();
    Polytope::hull(p.dim, &verts).expect("rational body embeds")
}

/// Slice `body ∩ {alpha . x >= t}` with weight-scalar data; exact when the
/// weight basis embeds in the rationals or one quadratic field.
pub fn slice_weighted(
    body: &Body,
    alpha: &WeightVector,
    t: &WeightScalar,
) -> Result<Body, Error> {
    let a: Vec<Quad> = alpha
        .entries()
        .iter()
        .map(scalar_to_quad)
        .collect::<Result<_, _>>()?;
    let tq = scalar_to_quad(t)?;
    body.clip(&a, &tq)
}

/// Piecewise-polynomial volume of the upper slices of a body along a
/// weight direction.
#[derive(Clone, Debug)]
pub struct VolumeFunction<F: ExactField> {
    /// `(lo, hi, polynomial in t)` with contiguous, increasing intervals.
    pub pieces: Vec<(F, F, Poly<F>)>,
}

impl<F: ExactField> VolumeFunction<F> {
    pub fn t_min(&self) -> F {
        self.pieces.first().map(|(lo, _, _)| lo.clone()).unwrap_or_else(F::zero)
    }

    /// Largest weight value over the body: the volume vanishes beyond it.
    pub fn t_max(&self) -> F {
        self.pieces.last().map(|(_, hi, _)| hi.clone()).unwrap_or_else(F::zero)
    }

    pub fn eval(&self, t: &F) -> F {
        if self.pieces.is_empty() {
            return F::zero();
        }
        if t.cmp_exact(&self.t_min()).is_le() {
            let (lo, _, p) = &self.pieces[0];
            return p.eval(lo);
        }
        for (lo, hi, p) in &self.pieces {
            if t.cmp_exact(lo).is_ge() && t.cmp_exact(hi).is_le() {
                return p.eval(t);
            }
        }
        F::zero()
    }

    /// Exact integral over `[a, b]`, `0 <= a <= b`; the function is treated
    /// as constant left of its first breakpoint and zero right of the last.
    pub fn integrate(&self, a: &F, b: &F) -> Result<F, Error> {
        if a.cmp_exact(b).is_gt() {
            return Err(Error::OutOfRange);
        }
        let mut acc = F::zero();
        // Constant prefix.
        let t0 = self.t_min();
        if a.cmp_exact(&t0).is_lt() {
            let upto = if b.cmp_exact(&t0).is_lt() { b } else { &t0 };
            acc = acc.add(&self.eval(&t0.clone()).mul(&upto.sub(a)));
        }
        for (lo, hi, p) in &self.pieces {
            let l = if a.cmp_exact(lo).is_gt() { a } else { lo };
            let h = if b.cmp_exact(hi).is_lt() { b } else { hi };
            if l.cmp_exact(h).is_lt() {
                acc = acc.add(&p.integrate(l, h));
            }
        }
        Ok(acc)
    }
}

/// Builds the exact volume function `t -> vol(body ∩ {a . x >= t})`:
/// breakpoints at the weight values of the vertices, one polynomial of
/// degree at most the dimension per interval, found by interpolation
/// through exactly computed slice volumes.
pub fn volume_function<F: ExactField>(
    body: &Polytope<F>,
    a: &[F],
) -> Result<VolumeFunction<F>, Error> {
    if body.is_empty() {
        return Ok(VolumeFunction { pieces: Vec::new() });
    }
    let n = body.ambient_dim();
    let mut bps: Vec<F> = Vec::new();
    for v in body.vertices() {
        let w = dot(a, v);
        if !bps.contains(&w) {
            bps.push(w);
        }
    }
    bps.sort_by(|x, y| x.cmp_exact(y));
    let mut pieces = Vec::new();
    for win in bps.windows(2) {
        let (lo, hi) = (&win[0], &win[1]);
        let span = hi.sub(lo);
        let mut samples: Vec<(F, F)> = Vec::new();
        for i in 0..=n {
            // n+1 interior nodes: lo + span * (i+1) / (n+2)
            let frac = F::from_int((i + 1) as i64).div(&F::from_int((n + 2) as i64));
            let t = lo.add(&span.mul(&frac));
            let vol = body.clip(a, &t)?.volume();
            samples.push((t, vol));
        }
        let p = Poly::interpolate(&samples);
        pieces.push((lo.clone(), hi.clone(), p));
    }
    Ok(VolumeFunction { pieces })
}

/// A finitely presented sequence of bodies.
pub enum BodySequence<F: ExactField> {
    /// Constant after a finite prefix.
    EventuallyConstant { prefix: Vec<Polytope<F>>, tail: Polytope<F> },
    /// Vertex `j` of the `i`-th body is `base[j] + slope[j] / i`.
    AffineTail { dim: usize, base: Vec<Vec<F>>, slope: Vec<Vec<F>> },
    /// Opaque samples; limits are approximated and flagged non-exact.
    Sampled(Vec<Polytope<F>>),
}

/// Both limit notions of a body sequence. `cofinite_closed` is false when
/// the true cofinite limit is a half-open set and its closure is reported.
pub struct LimitReport<F: ExactField> {
    pub pointwise: Polytope<F>,
    pub cofinite: Polytope<F>,
    pub equal_volume: bool,
    pub exact: bool,
    pub cofinite_closed: bool,
}

/// Computes the pointwise and cofinite limits of a finitely presented
/// sequence exactly; sampled presentations get a flagged approximation.
pub fn sequence_limits<F: ExactField>(
    seq: &BodySequence<F>,
) -> Result<LimitReport<F>, Error> {
    match seq {
        BodySequence::EventuallyConstant { tail, .. } => Ok(LimitReport {
            pointwise: tail.clone(),
            cofinite: tail.clone(),
            equal_volume: true,
            exact: true,
            cofinite_closed: true,
        }),
        BodySequence::AffineTail { dim, base, slope } => {
            affine_tail_limits(*dim, base, slope)
        }
        BodySequence::Sampled(bodies) => {
            let last = bodies.last().ok_or(Error::EmptyInput)?;
            let mut inter = last.clone();
            for b in bodies.iter().rev().skip(1).take(3) {
                if b.affine_dim() == Some(b.ambient_dim()) {
                    inter = inter.intersect(b)?;
                }
            }
            let eq = inter.volume() == last.volume();
            Ok(LimitReport {
                pointwise: last.clone(),
                cofinite: inter,
                equal_volume: eq,
                exact: false,
                cofinite_closed: true,
            })
        }
    }
}

fn affine_tail_limits<F: ExactField>(
    dim: usize,
    base: &[Vec<F>],
    slope: &[Vec<F>],
) -> Result<LimitReport<F>, Error> {
    if base.len() != slope.len() || base.is_empty() {
        return Err(Error::DimensionMismatch);
    }
    let pw = Polytope::hull(dim, base)?;
    if pw.affine_dim() == Some(dim) && pw.volume().sign() > 0 {
        // Positive volume: the two limits coincide.
        return Ok(LimitReport {
            pointwise: pw.clone(),
            cofinite: pw,
            equal_volume: true,
            exact: true,
            cofinite_closed: true,
        });
    }
    // Degenerate limit: decide membership "for all sufficiently large i"
    // in the ordered field of rational functions of eps = 1/i.
    if dim > 2 {
        return Err(Error::Unsupported(
            "degenerate affine-tail limits in ambient dimension 3".into(),
        ));
    }
    let eps = RatFun::<F>::eps();
    let lift_pt = |b: &Vec<F>, s: &Vec<F>| -> Vec<RatFun<F>> {
        b.iter()
            .zip(s.iter())
            .map(|(bc, sc)| {
                RatFun::constant(bc.clone())
                    .add(&RatFun::constant(sc.clone()).mul(&eps))
            })
            .collect()
    };
    let eps_pts: Vec<Vec<RatFun<F>>> = base
        .iter()
        .zip(slope.iter())
        .map(|(b, s)| lift_pt(b, s))
        .collect();
    match pw.affine_dim() {
        Some(0) => {
            let p = &pw.vertices()[0];
            let inside = eps_member(dim, &eps_pts, p)?;
            let cof = if inside {
                pw.clone()
            } else {
                Polytope::empty(dim)
            };
            Ok(LimitReport {
                pointwise: pw,
                cofinite: cof,
                equal_volume: true,
                exact: true,
                cofinite_closed: true,
            })
        }
        Some(1) => {
            let (p, q) = (&pw.vertices()[0], &pw.vertices()[1]);
            segment_cofinite(dim, &eps_pts, p, q, pw.clone())
        }
        _ => Err(Error::Unsupported(
            "degenerate limit of affine dimension 2 in the plane".into(),
        )),
    }
}

/// Is the constant point inside the eps-perturbed hull for all small eps?
fn eps_member<F: ExactField>(
    dim: usize,
    eps_pts: &[Vec<RatFun<F>>],
    p: &[F],
) -> Result<bool, Error> {
    let hull = Polytope::hull(dim, &eps_pts.to_vec())?;
    let pc: Vec<RatFun<F>> = p.iter().map(|c| RatFun::constant(c.clone())).collect();
    Ok(hull.contains(&pc))
}

fn segment_cofinite<F: ExactField>(
    dim: usize,
    eps_pts: &[Vec<RatFun<F>>],
    p: &[F],
    q: &[F],
    pw: Polytope<F>,
) -> Result<LimitReport<F>, Error> {
    type RF<F> = RatFun<F>;
    let hull = Polytope::hull(dim, &eps_pts.to_vec())?;
    // Constraints on s for the point p + s (q - p), s in [0, 1].
    let dir: Vec<F> = sub_pt(q, p);
    let mut s_lo: RF<F> = RatFun::constant(F::zero());
    let mut s_hi: RF<F> = RatFun::constant(F::one());
    let mut empty = false;
    let constraints: Vec<(Vec<RF<F>>, RF<F>)> = if hull.affine_dim() == Some(dim) {
        hull.facets().to_vec()
    } else if dim == 1 {
        // Interval in the line: explicit endpoint constraints.
        let mut lo = eps_pts[0][0].clone();
        let mut hi = lo.clone();
        for v in eps_pts {
            if v[0].cmp_exact(&lo).is_lt() {
                lo = v[0].clone();
            }
            if v[0].cmp_exact(&hi).is_gt() {
                hi = v[0].clone();
            }
        }
        vec![
            (vec![RF::<F>::one()], lo),
            (vec![RF::<F>::one().neg()], hi.neg()),
        ]
    } else {
        // The perturbed bodies are themselves degenerate segments in the
        // plane: constrain to their carrier line plus endpoint bounds.
        let a0 = &eps_pts[0];
        let mut d: Option<Vec<RF<F>>> = None;
        for v in &eps_pts[1..] {
            let dv: Vec<RF<F>> = v
                .iter()
                .zip(a0.iter())
                .map(|(x, y)| x.sub(y))
                .collect();
            if dv.iter().any(|c| !c.is_zero()) {
                d = Some(dv);
                break;
            }
        }
        match d {
            None => {
                // All bodies are single points.
                let mut cons: Vec<(Vec<RF<F>>, RF<F>)> = Vec::new();
                for (i, coord) in a0.iter().enumerate() {
                    let mut n = vec![RF::<F>::zero(); dim];
                    n[i] = RF::<F>::one();
                    cons.push((n.clone(), coord.clone()));
                    let mut n2 = vec![RF::<F>::zero(); dim];
                    n2[i] = RF::<F>::one().neg();
                    cons.push((n2, coord.neg()));
                }
                cons
            }
            Some(d) => {
                // Line through a0 with direction d: normal (-d1, d0).
                let n = vec![d[1].neg(), d[0].clone()];
                let b = n[0].mul(&a0[0]).add(&n[1].mul(&a0[1]));
                let mut cons = vec![
                    (n.clone(), b.clone()),
                    (n.iter().map(ExactField::neg).collect(), b.neg()),
                ];
                // Endpoint bounds along the direction.
                let proj = |v: &Vec<RF<F>>| d[0].mul(&v[0]).add(&d[1].mul(&v[1]));
                let mut lo = proj(a0);
                let mut hi = lo.clone();
                for v in eps_pts {
                    let t = proj(v);
                    if t.cmp_exact(&lo).is_lt() {
                        lo = t.clone();
                    }
                    if t.cmp_exact(&hi).is_gt() {
                        hi = t;
                    }
                }
                cons.push((d.clone(), lo));
                cons.push((d.iter().map(ExactField::neg).collect(), hi.neg()));
                cons
            }
        }
    };
    for (a, b) in &constraints {
        // a . (p + s dir) >= b  =>  (a . dir) s >= b - a . p
        let pc: Vec<RF<F>> = p.iter().map(|c| RatFun::constant(c.clone())).collect();
        let dc: Vec<RF<F>> = dir.iter().map(|c| RatFun::constant(c.clone())).collect();
        let coef = a
            .iter()
            .zip(dc.iter())
            .fold(RF::<F>::zero(), |acc, (x, y)| acc.add(&x.mul(y)));
        let rhs = b.sub(
            &a.iter()
                .zip(pc.iter())
                .fold(RF::<F>::zero(), |acc, (x, y)| acc.add(&x.mul(y))),
        );
        match coef.sign() {
            0 => {
                if rhs.sign() > 0 {
                    empty = true;
                }
            }
            s if s > 0 => {
                let bound = rhs.div(&coef);
                if bound.cmp_exact(&s_lo).is_gt() {
                    s_lo = bound;
                }
            }
            _ => {
                let bound = rhs.div(&coef);
                if bound.cmp_exact(&s_hi).is_lt() {
                    s_hi = bound;
                }
            }
        }
    }
    if empty || s_lo.cmp_exact(&s_hi).is_gt() {
        return Ok(LimitReport {
            pointwise: pw,
            cofinite: Polytope::empty(dim),
            equal_volume: true,
            exact: true,
            cofinite_closed: true,
        });
    }
    let l = s_lo.limit0().ok_or(Error::Unsupported("unbounded bound".into()))?;
    let h = s_hi.limit0().ok_or(Error::Unsupported("unbounded bound".into()))?;
    let closed_lo = s_lo.sub(&RatFun::constant(l.clone())).sign() <= 0;
    let closed_hi = s_hi.sub(&RatFun::constant(h.clone())).sign() >= 0;
    let point_at = |s: &F| -> Vec<F> {
        p.iter()
            .zip(dir.iter())
            .map(|(pc, dc)| pc.add(&s.mul(dc)))
            .collect()
    };
    let (cof, closed) = match l.cmp_exact(&h) {
        core::cmp::Ordering::Greater => (Polytope::empty(dim), true),
        core::cmp::Ordering::Equal => {
            if closed_lo && closed_hi {
                (Polytope::hull(dim, &[point_at(&l)])?, true)
            } else {
                (Polytope::empty(dim), true)
            }
        }
        core::cmp::Ordering::Less => (
            Polytope::hull(dim, &[point_at(&l), point_at(&h)])?,
            closed_lo && closed_hi,
        ),
    };
    Ok(LimitReport {
        pointwise: pw,
        cofinite: cof,
        equal_volume: true,
        exact: true,
        cofinite_closed: closed,
    })
}

/// Squared distance from a point to a 2-D polygon (zero if inside).
pub fn dist_sq_to_body(p: &[Rat], body: &Polytope<Rat>) -> Rat {
    
    if body.contains(p) {
        return rat(0, 1);
    }
    let ring = hull2(body.vertices());
    let mut best: Option<Rat> = None;
    let n = ring.len();
    for i in 0..n {
        let a = &ring[i];
        let b = &ring[(i + 1) % n.max(1)];
        let d = seg_dist_sq(p, a, b);
        best = Some(match best {
            None => d,
            Some(cur) => {
                if d < cur {
                    d
                } else {
                    cur
                }
            }
        });
    }
    best.unwrap_or_else(|| rat(0, 1))
}

fn seg_dist_sq(p: &[Rat], a: &[Rat], b: &[Rat]) -> Rat {
    use num_traits::{Signed, Zero};
    let ab = sub_pt(b, a);
    let ap = sub_pt(p, a);
    let len2 = dot(&ab, &ab);
    let pt: Vec<Rat> = if Zero::is_zero(&len2) {
        a.to_vec()
    } else {
        let mut t = dot(&ab, &ap) / &len2;
        if t.is_negative() {
            t = rat(0, 1);
        }
        let one = Rat::from(BigInt::from(1));
        if t > one {
            t = one;
        }
        a.iter().zip(ab.iter()).map(|(x, d)| x + d * &t).collect()
    };
    let d = sub_pt(p, &pt);
    dot(&d, &d)
}

/// One-sided Hausdorff bound: `max_{v in outer} dist(v, inner)`, squared.
/// For `inner ⊆ outer` this is the exact squared Hausdorff distance.
pub fn hausdorff_sq(inner: &Polytope<Rat>, outer: &Polytope<Rat>) -> Rat {
    let mut best = rat(0, 1);
    for v in outer.vertices() {
        let d = dist_sq_to_body(v, inner);
        if d > best {
            best = d;
        }
    }
    best
}
