//! Projective classes in `P_C^n`, tangent hyperplanes `H_p`, and the
//! coordinate projection `Q_m` with its kernel `Lambda_0`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::{check_dims, conj_dependent, IndefiniteVector};

/// A point of `P_C^n`, stored through a canonical representative whose
/// largest-modulus coordinate (lowest index on ties) equals exactly 1.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectivePoint {
    rep: IndefiniteVector,
}

impl ProjectivePoint {
    pub fn rep(&self) -> &IndefiniteVector {
        &self.rep
    }

    pub fn n(&self) -> usize {
        self.rep.n()
    }

    /// Largest coordinate-wise modulus of the difference of the two representatives.
    pub fn distance(&self, other: &ProjectivePoint) -> Result<f64> {
        check_dims(&self.rep, &other.rep)?;
        Ok(self.rep.coords().iter().zip(other.rep.coords()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }
}

/// Divides by the coordinate of largest modulus, the first one on ties.
pub fn normalize(z: &IndefiniteVector) -> Result<ProjectivePoint> {
    let mut pivot = 0;
    let mut best = -1.0;
    for (i, c) in z.coords().iter().enumerate() {
        let m = c.norm_sqr();
        if m > best {
            best = m;
            pivot = i;
        }
    }
    if best <= 0.0 || !best.is_finite() {
        return Err(Error::ZeroVector);
    }
    let p = z[pivot];
    let mut coords: Vec<Complex64> = z.coords().iter().map(|c| c / p).collect();
    coords[pivot] = Complex64::new(1.0, 0.0);
    Ok(ProjectivePoint { rep: IndefiniteVector::new(coords)? })
}

/// The projective hyperplane `H_p = { w : <p, w> = 0 }`.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentHyperplane {
    coeff: IndefiniteVector,
}

impl TangentHyperplane {
    pub fn coeff(&self) -> &IndefiniteVector {
        &self.coeff
    }

    /// `|<p, w>| <= tol |p| |w|`.
    pub fn contains(&self, w: &IndefiniteVector, tol: f64) -> Result<bool> {
        let value = self.coeff.inner(w)?;
        Ok(value.norm() <= tol * self.coeff.norm() * w.norm())
    }
}

pub fn hyperplane_of(p: &ProjectivePoint) -> TangentHyperplane {
    TangentHyperplane { coeff: p.rep.clone() }
}

pub(crate) fn check_rank(m: usize, n: usize) -> Result<()> {
    if m < 2 || m > n {
        return Err(Error::RankOutOfRange { m, n });
    }
    Ok(())
}

/// Whether `[z]` lies in `Lambda_0`, the projectivized kernel of `Q_m`:
/// coordinates `1..=m` and `n+1` all vanish.
pub fn in_lambda0(z: &IndefiniteVector, m: usize, tol: f64) -> Result<bool> {
    let n = z.n();
    check_rank(m, n)?;
    if z.is_zero() {
        return Err(Error::ZeroVector);
    }
    let threshold = tol * z.norm();
    let c = z.coords();
    Ok(c[..m].iter().chain(std::iter::once(&c[n])).all(|x| x.norm() <= threshold))
}

/// `(z_1, ..., z_m, z_{n+1})`, a vector of `C^{m,1}`.
pub fn q_project(z: &IndefiniteVector, m: usize, tol: f64) -> Result<IndefiniteVector> {
    if in_lambda0(z, m, tol)? {
        return Err(Error::InLambdaZero);
    }
    let c = z.coords();
    let mut out = Vec::with_capacity(m + 1);
    out.extend_from_slice(&c[..m]);
    out.push(c[z.n()]);
    IndefiniteVector::new(out)
}

/// Shape of `H_z` intersected with the real subspace `P_R^m` spanned by
/// coordinates `1..=m` and `n+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RealIntersectionKind {
    WholeRealSpace,
    RealHyperplane,
    RealCodim2,
}

pub fn real_intersection_kind(z: &IndefiniteVector, m: usize, tol: f64) -> Result<RealIntersectionKind> {
    if in_lambda0(z, m, tol)? {
        return Ok(RealIntersectionKind::WholeRealSpace);
    }
    let q = q_project(z, m, tol)?;
    Ok(if conj_dependent(&q, tol) { RealIntersectionKind::RealHyperplane } else { RealIntersectionKind::RealCodim2 })
}
