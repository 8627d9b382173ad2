//! The indefinite Hermitian space `C^{n,1}`.
//!
//! The form is `<z, w> = z_1 conj(w_1) + ... + z_n conj(w_n) - z_{n+1} conj(w_{n+1})`.
//! Everything else here (sign types, 2x2 Gram matrices, the Sylvester type of
//! a 2-plane, the quartic invariant `f`) is built on it.
//!
//! Zero tests are relative: a quantity homogeneous of degree `2k` in the input
//! vectors is compared against `tol` times the matching product of squared
//! Euclidean norms.

use std::fmt;
use std::ops::{Index, Neg};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use twofloat::TwoFloat;

use crate::error::{Error, Result};

/// Default relative tolerance for every zero test in the crate.
pub const DEFAULT_TOL: f64 = 1e-9;

/// A coordinate vector in `C^{n,1}`; the last coordinate is the negative direction.
#[derive(Clone, Debug, PartialEq)]
pub struct IndefiniteVector {
    coords: Vec<Complex64>,
}

impl IndefiniteVector {
    pub fn new(coords: Vec<Complex64>) -> Result<Self> {
        if coords.len() < 3 {
            return Err(Error::TooFewCoordinates(coords.len()));
        }
        Ok(Self { coords })
    }

    /// Builds a vector from `(re, im)` pairs.
    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(re, im)| Complex64::new(re, im)).collect())
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// The standard basis vector `e_j` of `C^{n,1}`, with `j` counted from 1.
    ///
    /// # Panics
    /// If `j` is not in `1..=n+1` or `n < 2`.
    pub fn basis(n: usize, j: usize) -> Self {
        assert!(n >= 2 && (1..=n + 1).contains(&j), "basis index out of range");
        let mut coords = vec![Complex64::new(0.0, 0.0); n + 1];
        coords[j - 1] = Complex64::new(1.0, 0.0);
        Self { coords }
    }

    /// The space dimension `n` (the vector has `n + 1` coordinates).
    pub fn n(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Complex64> {
        self.coords
    }

    pub fn conj(&self) -> Self {
        Self { coords: self.coords.iter().map(|c| c.conj()).collect() }
    }

    pub fn scale(&self, alpha: Complex64) -> Self {
        Self { coords: self.coords.iter().map(|c| c * alpha).collect() }
    }

    /// `self + t * other`, used for chords and slice planes.
    pub fn add_scaled(&self, t: f64, other: &Self) -> Result<Self> {
        check_dims(self, other)?;
        Ok(Self { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b * t).collect() })
    }

    /// Squared Euclidean norm of the coordinates.
    pub fn norm_sqr(&self) -> f64 {
        self.coords.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| *c == Complex64::new(0.0, 0.0))
    }

    /// Real parts as a plain vector.
    pub fn re(&self) -> Vec<f64> {
        self.coords.iter().map(|c| c.re).collect()
    }

    /// Imaginary parts as a plain vector.
    pub fn im(&self) -> Vec<f64> {
        self.coords.iter().map(|c| c.im).collect()
    }

    /// The Hermitian form against another vector of the same dimension.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        check_dims(self, other)?;
        Ok(inner_unchecked(&self.coords, &other.coords))
    }

    /// `<z, z>`, always real.
    pub fn self_inner(&self) -> f64 {
        let n = self.n();
        let spatial: f64 = self.coords[..n].iter().map(|c| c.norm_sqr()).sum();
        spatial - self.coords[n].norm_sqr()
    }

    fn ensure_nonzero(&self) -> Result<()> {
        if self.is_zero() {
            Err(Error::ZeroVector)
        } else {
            Ok(())
        }
    }
}

impl Index<usize> for IndefiniteVector {
    type Output = Complex64;

    fn index(&self, i: usize) -> &Complex64 {
        &self.coords[i]
    }
}

impl Neg for &IndefiniteVector {
    type Output = IndefiniteVector;

    fn neg(self) -> IndefiniteVector {
        IndefiniteVector { coords: self.coords.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for IndefiniteVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

pub(crate) fn check_dims(z: &IndefiniteVector, w: &IndefiniteVector) -> Result<()> {
    if z.n() != w.n() {
        return Err(Error::DimensionMismatch { left: z.n(), right: w.n() });
    }
    Ok(())
}

fn inner_unchecked(z: &[Complex64], w: &[Complex64]) -> Complex64 {
    let last = z.len() - 1;
    let spatial: Complex64 = z[..last].iter().zip(&w[..last]).map(|(a, b)| a * b.conj()).sum();
    spatial - z[last] * w[last].conj()
}

/// `<z, w> = sum_{j<=n} z_j conj(w_j) - z_{n+1} conj(w_{n+1})`.
pub fn herm_inner(z: &IndefiniteVector, w: &IndefiniteVector) -> Result<Complex64> {
    z.inner(w)
}

/// Sign type of a vector under the form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VectorClass {
    Negative,
    Null,
    Positive,
}

pub fn classify_vector(z: &IndefiniteVector, tol: f64) -> Result<VectorClass> {
    z.ensure_nonzero()?;
    let q = z.self_inner();
    Ok(if q.abs() <= tol * z.norm_sqr() {
        VectorClass::Null
    } else if q > 0.0 {
        VectorClass::Positive
    } else {
        VectorClass::Negative
    })
}

/// Gram matrix of two vectors under the form. Hermitian by construction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Gram2 {
    entries: [[Complex64; 2]; 2],
}

impl Gram2 {
    pub fn entries(&self) -> &[[Complex64; 2]; 2] {
        &self.entries
    }

    /// `<z1,z1>`.
    pub fn a(&self) -> f64 {
        self.entries[0][0].re
    }

    /// `<z2,z2>`.
    pub fn c(&self) -> f64 {
        self.entries[1][1].re
    }

    /// `<z1,z2>`.
    pub fn b(&self) -> Complex64 {
        self.entries[0][1]
    }

    /// `<z1,z1><z2,z2> - |<z1,z2>|^2`, evaluated in double-double so the
    /// result is correctly rounded up to a few ulps even under cancellation.
    pub fn det(&self) -> f64 {
        let b = self.b();
        let ac = TwoFloat::new_mul(self.a(), self.c());
        let bb = TwoFloat::new_mul(b.re, b.re) + TwoFloat::new_mul(b.im, b.im);
        f64::from(ac - bb)
    }

    /// The eigenvalues `(lambda1, lambda2)` from the closed 2x2 formulas,
    /// `(a + c +/- sqrt((a - c)^2 + 4|b|^2)) / 2`, so `lambda1 >= lambda2`.
    ///
    /// Evaluated in double-double: the smaller eigenvalue comes from a
    /// difference of nearly equal numbers when `det G` is small.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let b = self.b();
        let (a, c) = (TwoFloat::from(self.a()), TwoFloat::from(self.c()));
        let bb = TwoFloat::new_mul(b.re, b.re) + TwoFloat::new_mul(b.im, b.im);
        let diff = a - c;
        let root = (diff * diff + bb * 4.0).sqrt();
        let sum = a + c;
        (f64::from((sum + root) / 2.0), f64::from((sum - root) / 2.0))
    }
}

pub fn gram2(z1: &IndefiniteVector, z2: &IndefiniteVector) -> Result<Gram2> {
    check_dims(z1, z2)?;
    let a = Complex64::new(z1.self_inner(), 0.0);
    let c = Complex64::new(z2.self_inner(), 0.0);
    let b = inner_unchecked(&z1.coords, &z2.coords);
    Ok(Gram2 { entries: [[a, b], [b.conj(), c]] })
}

/// Sylvester type of the complex 2-plane spanned by two vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpanClass {
    Elliptic,
    Hyperbolic,
    Parabolic,
    /// Reserved for callers that detected `z` and `conj(z)` are dependent;
    /// the span classifiers never produce it.
    DependentPair,
}

/// Classifies the span of two independent vectors by the sign of `det G`.
pub fn span_class_det(z1: &IndefiniteVector, z2: &IndefiniteVector, tol: f64) -> Result<SpanClass> {
    let g = gram2(z1, z2)?;
    let scale = z1.norm_sqr() * z2.norm_sqr();
    let det = g.det();
    Ok(if det.abs() <= tol * scale {
        SpanClass::Parabolic
    } else if det > 0.0 {
        SpanClass::Elliptic
    } else {
        SpanClass::Hyperbolic
    })
}

/// Classifies the span of two independent vectors by the signs of the
/// eigenvalues of `G`.
///
/// The zero test on an eigenvalue uses `tol * scale / (|z1|^2 + |z2|^2)`:
/// the larger eigenvalue is bounded by `|z1|^2 + |z2|^2`, so whenever
/// `|det G|` clears `tol * scale` the smaller eigenvalue clears this bound
/// and both classifiers agree.
pub fn span_class_eig(z1: &IndefiniteVector, z2: &IndefiniteVector, tol: f64) -> Result<SpanClass> {
    let g = gram2(z1, z2)?;
    let (n1, n2) = (z1.norm_sqr(), z2.norm_sqr());
    let threshold = tol * n1 * n2 / (n1 + n2);
    let (l1, l2) = g.eigenvalues();
    Ok(if l1.abs() <= threshold || l2.abs() <= threshold {
        SpanClass::Parabolic
    } else if l1 > 0.0 && l2 > 0.0 {
        SpanClass::Elliptic
    } else {
        SpanClass::Hyperbolic
    })
}

/// The quartic invariant `f(z) = |<z, conj z>|^2 - <z, z>^2`.
///
/// `f > 0` exactly when the span of `z` and `conj(z)` is hyperbolic,
/// `f < 0` when it is elliptic. `f(alpha z) = |alpha|^4 f(z)`.
pub fn f_value(z: &IndefiniteVector) -> f64 {
    // <z, conj z> is the complex bilinear form sum z_j^2 - z_{n+1}^2.
    let n = z.n();
    let bilinear: Complex64 = z.coords[..n].iter().map(|c| c * c).sum::<Complex64>() - z.coords[n] * z.coords[n];
    let q = z.self_inner();
    bilinear.norm_sqr() - q * q
}

/// `f` through the real coordinate expansion
/// `sum_j 4 (x_j y_{n+1} - x_{n+1} y_j)^2 - sum_{j<k<=n} 4 (x_j y_k - x_k y_j)^2`.
///
/// Quadratic in `n`; kept as an independent cross-check of [`f_value`].
pub fn f_value_coordinates(z: &IndefiniteVector) -> f64 {
    let n = z.n();
    let (x, y) = (z.re(), z.im());
    let mut acc = 0.0;
    for j in 0..n {
        acc += 4.0 * (x[j] * y[n] - x[n] * y[j]).powi(2);
    }
    for j in 0..n {
        for k in j + 1..n {
            acc -= 4.0 * (x[j] * y[k] - x[k] * y[j]).powi(2);
        }
    }
    acc
}

/// True when `z` and `conj(z)` are linearly dependent, i.e. `[z]` is a real
/// projective point. Tests every minor `z_j conj(z_k) - z_k conj(z_j)`.
pub fn conj_dependent(z: &IndefiniteVector, tol: f64) -> bool {
    let threshold = tol * z.norm_sqr();
    let c = &z.coords;
    for j in 0..c.len() {
        for k in j + 1..c.len() {
            // z_j conj(z_k) - conj(z_j conj(z_k)) = 2i Im(z_j conj(z_k))
            let minor = 2.0 * (c[j] * c[k].conj()).im;
            if minor.abs() > threshold {
                return false;
            }
        }
    }
    true
}
