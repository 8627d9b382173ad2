//! Pointwise membership in the limit set `Lambda` and its complement `Omega`.
//!
//! For `m = n` the decision is semi-algebraic in `z`:
//!
//! * `[z]` real (`z`, `conj z` dependent): `z in Lambda` iff `<z,z> >= 0`;
//! * otherwise, `n > 2`: `z in Lambda` iff `f(z) <= 0`;
//! * otherwise, `n = 2`: `z in Lambda` iff `f(z) = 0`, and `Omega` splits
//!   into three pieces told apart by the sign of `f` and of
//!   `Re(p_1) Im(p_2) - Re(p_2) Im(p_1)`.
//!
//! For `m < n` a point is in `Lambda_0` or is classified through `Q_m`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::{conj_dependent, f_value, IndefiniteVector};
use crate::projective::{check_rank, in_lambda0, q_project};

/// Full taxonomy of `Lambda` / `Omega` for every `(m, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RegionLabel {
    #[serde(rename = "LAMBDA0")]
    Lambda0,
    /// Real point with `<z,z> >= 0`, including the sphere `dH_R`.
    #[serde(rename = "LAMBDA_REAL")]
    LambdaRealExterior,
    /// Non-real point with `f = 0` within tolerance.
    #[serde(rename = "LAMBDA_PARA")]
    LambdaParabolic,
    /// Non-real point with `f < 0`, only for `m > 2`.
    #[serde(rename = "LAMBDA_INT")]
    LambdaInterior,
    #[serde(rename = "OMEGA_0")]
    OmegaZero,
    #[serde(rename = "OMEGA_MINUS")]
    OmegaMinus,
    #[serde(rename = "OMEGA_PLUS")]
    OmegaPlus,
    /// The single (connected) `Omega` of `m > 2`.
    #[serde(rename = "OMEGA")]
    OmegaSingle,
}

impl RegionLabel {
    pub const ALL: [RegionLabel; 8] = [
        RegionLabel::Lambda0,
        RegionLabel::LambdaRealExterior,
        RegionLabel::LambdaParabolic,
        RegionLabel::LambdaInterior,
        RegionLabel::OmegaZero,
        RegionLabel::OmegaMinus,
        RegionLabel::OmegaPlus,
        RegionLabel::OmegaSingle,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RegionLabel::Lambda0 => "LAMBDA0",
            RegionLabel::LambdaRealExterior => "LAMBDA_REAL",
            RegionLabel::LambdaParabolic => "LAMBDA_PARA",
            RegionLabel::LambdaInterior => "LAMBDA_INT",
            RegionLabel::OmegaZero => "OMEGA_0",
            RegionLabel::OmegaMinus => "OMEGA_MINUS",
            RegionLabel::OmegaPlus => "OMEGA_PLUS",
            RegionLabel::OmegaSingle => "OMEGA",
        }
    }

    pub fn is_lambda(self) -> bool {
        !self.is_omega()
    }

    pub fn is_omega(self) -> bool {
        matches!(
            self,
            RegionLabel::OmegaZero | RegionLabel::OmegaMinus | RegionLabel::OmegaPlus | RegionLabel::OmegaSingle
        )
    }
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RegionLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RegionLabel::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown region label {s:?}")))
    }
}

/// The partition of nonzero vectors by the sign of `f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PartitionLabel {
    U0,
    UPlus,
    UMinus,
}

pub fn partition_label(z: &IndefiniteVector, tol: f64) -> Result<PartitionLabel> {
    if z.is_zero() {
        return Err(Error::ZeroVector);
    }
    let f = f_value(z);
    let scale = z.norm_sqr().powi(2);
    Ok(if f.abs() <= tol * scale {
        PartitionLabel::U0
    } else if f > 0.0 {
        PartitionLabel::UPlus
    } else {
        PartitionLabel::UMinus
    })
}

/// The `m = n` classifier; the dimension is read from `z`.
pub fn classify_equal_dim(z: &IndefiniteVector, tol: f64) -> Result<RegionLabel> {
    if z.is_zero() {
        return Err(Error::ZeroVector);
    }
    let n = z.n();
    let norm_sqr = z.norm_sqr();
    let omega = if n == 2 { RegionLabel::OmegaZero } else { RegionLabel::OmegaSingle };

    if conj_dependent(z, tol) {
        return Ok(if z.self_inner() >= -tol * norm_sqr { RegionLabel::LambdaRealExterior } else { omega });
    }

    let f = f_value(z);
    let threshold = tol * norm_sqr * norm_sqr;
    if f.abs() <= threshold {
        Ok(RegionLabel::LambdaParabolic)
    } else if f > 0.0 {
        Ok(omega)
    } else if n > 2 {
        Ok(RegionLabel::LambdaInterior)
    } else {
        omega2_component(z, tol)
    }
}

/// Which of the three components of `Omega_(2)` contains `[p]`, `p in C^{2,1}`.
///
/// `OmegaZero` holds the points whose polar line `H_p` meets `P_R^2` away from
/// the closed disk: real points inside the disk, and `f(p) > 0`. For
/// `f(p) < 0` the polar meets `P_R^2` in a single point of the disk, and the
/// sign of `Re(p_1) Im(p_2) - Re(p_2) Im(p_1)` picks `OmegaPlus` or
/// `OmegaMinus`.
pub fn omega2_component(p: &IndefiniteVector, tol: f64) -> Result<RegionLabel> {
    if p.n() != 2 {
        return Err(Error::DimensionMismatch { left: p.n(), right: 2 });
    }
    if p.is_zero() {
        return Err(Error::ZeroVector);
    }
    let norm_sqr = p.norm_sqr();
    if conj_dependent(p, tol) {
        return if p.self_inner() < -tol * norm_sqr { Ok(RegionLabel::OmegaZero) } else { Err(Error::NotInOmega) };
    }
    let f = f_value(p);
    let threshold = tol * norm_sqr * norm_sqr;
    if f > threshold {
        return Ok(RegionLabel::OmegaZero);
    }
    if f >= -threshold {
        return Err(Error::NotInOmega);
    }
    let d = p[0].re * p[1].im - p[1].re * p[0].im;
    if d.abs() <= tol * norm_sqr {
        Err(Error::DegenerateDeterminant)
    } else if d > 0.0 {
        Ok(RegionLabel::OmegaPlus)
    } else {
        Ok(RegionLabel::OmegaMinus)
    }
}

/// The general classifier for `2 <= m <= n`.
pub fn classify(z: &IndefiniteVector, m: usize, tol: f64) -> Result<RegionLabel> {
    check_rank(m, z.n())?;
    if z.is_zero() {
        return Err(Error::ZeroVector);
    }
    if in_lambda0(z, m, tol)? {
        return Ok(RegionLabel::Lambda0);
    }
    if m == z.n() {
        return classify_equal_dim(z, tol);
    }
    classify_equal_dim(&q_project(z, m, tol)?, tol)
}
