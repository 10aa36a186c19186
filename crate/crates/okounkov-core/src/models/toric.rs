//! Polarized toric surfaces from a full-dimensional rational polygon:
//! sections of the m-th power are the lattice points of the m-fold
//! dilation, and torus-invariant valuation data acts on them by an
//! affine-linear map.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::bodies::Polytope;
use crate::error::Error;
use crate::wfield::Rat;

#[derive(Clone, Debug)]
pub struct ToricSurfaceModel {
    p: Polytope<Rat>,
}

impl ToricSurfaceModel {
    /// Builds the model from the polygon's vertices; the polygon must be
    /// full-dimensional.
    pub fn new(vertices: &[Vec<Rat>]) -> Result<Self, Error> {
        let p = Polytope::hull(2, vertices)?;
        if p.affine_dim() != Some(2) {
            return Err(Error::ModelConsistency(
                "polarizing polygon must be full-dimensional".into(),
            ));
        }
        Ok(ToricSurfaceModel { p })
    }

    /// The unit simplex: the projective plane with its hyperplane class.
    pub fn projective_plane() -> Self {
        let z = Rat::zero();
        let o = Rat::one();
        ToricSurfaceModel::new(&[
            vec![z.clone(), z.clone()],
            vec![o.clone(), z.clone()],
            vec![z, o],
        ])
        .expect("unit simplex is full-dimensional")
    }

    pub fn polytope(&self) -> &Polytope<Rat> {
        &self.p
    }

    /// Lattice points of the m-fold dilation; the section basis of the
    /// m-th power of the polarization.
    pub fn lattice_points(&self, m: u32) -> Vec<(i64, i64)> {
        if m == 0 {
            return vec![(0, 0)];
        }
        let scale = Rat::from(BigInt::from(m));
        let verts: Vec<Vec<Rat>> = self
            .p
            .vertices()
            .iter()
            .map(|v| v.iter().map(|c| c * &scale).collect())
            .collect();
        let mp = Polytope::hull(2, &verts).expect("dilation stays a polygon");
        let mut lo = [i64::MAX; 2];
        let mut hi = [i64::MIN; 2];
        for v in mp.vertices() {
            for i in 0..2 {
                let f = v[i].floor().to_integer().to_i64().unwrap();
                let c = v[i].ceil().to_integer().to_i64().unwrap();
                lo[i] = lo[i].min(f);
                hi[i] = hi[i].max(c);
            }
        }
        let mut out = Vec::new();
        for x in lo[0]..=hi[0] {
            for y in lo[1]..=hi[1] {
                let pt = vec![Rat::from(BigInt::from(x)), Rat::from(BigInt::from(y))];
                if mp.contains(&pt) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Section count of the m-th power.
    pub fn n_m(&self, m: u32) -> usize {
        self.lattice_points(m).len()
    }

    /// Valuation images of the monomial sections of degree m: lattice
    /// points mapped by the integer matrix with rows `w` (the valuation
    /// functional) and `flag` (the flag functional), each shifted so its
    /// minimum over the level is zero. The map must be injective, which
    /// makes the values automatically distinct.
    pub fn gamma(&self, w: &[i64], flag: &[i64], m: u32) -> Result<Vec<Vec<i64>>, Error> {
        if w.len() != 2 || flag.len() != 2 {
            return Err(Error::DimensionMismatch);
        }
        if w[0] * flag[1] - w[1] * flag[0] == 0 {
            return Err(Error::SingularSystem);
        }
        let pts = self.lattice_points(m);
        let raw: Vec<(i64, i64)> = pts
            .iter()
            .map(|&(x, y)| (w[0] * x + w[1] * y, flag[0] * x + flag[1] * y))
            .collect();
        let min0 = raw.iter().map(|r| r.0).min().ok_or(Error::EmptyInput)?;
        let min1 = raw.iter().map(|r| r.1).min().unwrap();
        Ok(raw.iter().map(|r| vec![r.0 - min0, r.1 - min1]).collect())
    }

    /// Valuation images for every level up to the cap.
    pub fn gamma_upto(
        &self,
        w: &[i64],
        flag: &[i64],
        m_max: u32,
    ) -> Result<BTreeMap<u32, Vec<Vec<i64>>>, Error> {
        let mut out = BTreeMap::new();
        for m in 1..=m_max {
            out.insert(m, self.gamma(w, flag, m)?);
        }
        Ok(out)
    }
}
