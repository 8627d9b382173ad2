//! The projection `Pi: Omega -> H_R^n`, its fibers, the isometries that move
//! them around, and the block embedding of `SO+(m,1)` into `SU(n,1)`.
//!
//! `Pi` sends `[z]` to `[z conj(eta) + conj(z) eta]` where
//! `eta^2 = -<z, conj z>`. Real `SO+(n,1)` matrices commute with conjugation
//! and preserve `<z, conj z>`, which is what makes `Pi` equivariant.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::hermitian::{conj_dependent, f_value, IndefiniteVector};
use crate::projective::{normalize, ProjectivePoint};

/// A real `(n+1) x (n+1)` matrix preserving the form `J = diag(1, ..., 1, -1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct IsometryMatrix {
    entries: DMatrix<f64>,
}

/// Accepted relative residual `|A^T J A - J| / |A|^2` when wrapping a matrix
/// from outside (files, user input).
const IMPORT_RESIDUAL: f64 = 1e-8;

impl IsometryMatrix {
    /// Wraps a matrix after checking its shape and `A^T J A = J`.
    pub fn new(entries: DMatrix<f64>) -> Result<Self> {
        if entries.nrows() != entries.ncols() || entries.nrows() < 3 {
            return Err(Error::Parse(format!(
                "isometry must be square of size >= 3, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        let out = Self { entries };
        let scale = out.entries.norm_squared().max(1.0);
        if out.j_orthogonality_residual() > IMPORT_RESIDUAL * scale {
            return Err(Error::Parse("matrix does not preserve the form diag(1,..,1,-1)".into()));
        }
        Ok(out)
    }

    pub(crate) fn from_raw(entries: DMatrix<f64>) -> Self {
        Self { entries }
    }

    pub fn identity(n: usize) -> Self {
        Self { entries: DMatrix::identity(n + 1, n + 1) }
    }

    pub fn n(&self) -> usize {
        self.entries.nrows() - 1
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    /// Largest entry of `|A^T J A - J|`.
    pub fn j_orthogonality_residual(&self) -> f64 {
        let j = form_matrix(self.n());
        let r = self.entries.transpose() * &j * &self.entries - j;
        r.amax()
    }

    pub fn determinant(&self) -> f64 {
        self.entries.determinant()
    }

    /// The `(n+1, n+1)` entry; at least 1 for time-orientation preserving maps.
    pub fn time_entry(&self) -> f64 {
        let n = self.n();
        self.entries[(n, n)]
    }

    pub fn compose(&self, other: &IsometryMatrix) -> Result<IsometryMatrix> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch { left: self.n(), right: other.n() });
        }
        Ok(Self { entries: &self.entries * &other.entries })
    }

    /// Acts on a complex vector coordinate-wise (real matrix, so it commutes
    /// with conjugation).
    pub fn apply(&self, z: &IndefiniteVector) -> Result<IndefiniteVector> {
        if z.n() != self.n() {
            return Err(Error::DimensionMismatch { left: self.n(), right: z.n() });
        }
        let c = z.coords();
        let out = (0..=self.n())
            .map(|i| c.iter().enumerate().map(|(k, zk)| zk * self.entries[(i, k)]).sum::<Complex64>())
            .collect();
        IndefiniteVector::new(out)
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.entries.norm()
    }
}

fn form_matrix(n: usize) -> DMatrix<f64> {
    let mut j = DMatrix::identity(n + 1, n + 1);
    j[(n, n)] = -1.0;
    j
}

/// The principal square root of `-<z, conj z> = z_{n+1}^2 - z_1^2 - ... - z_n^2`:
/// nonnegative real part, nonnegative imaginary part when the real part vanishes.
pub fn eta(z: &IndefiniteVector) -> Complex64 {
    let n = z.n();
    let c = z.coords();
    let square = c[n] * c[n] - c[..n].iter().map(|x| x * x).sum::<Complex64>();
    let mut root = square.sqrt();
    if root.re < 0.0 {
        root = -root;
    }
    if root.re.abs() <= 1e-14 && root.im < 0.0 {
        root = -root;
    }
    root
}

/// Whether `z` lies where `Pi` is defined: `f(z) > 0`, or `[z]` real and negative.
pub fn in_pi_domain(z: &IndefiniteVector, tol: f64) -> bool {
    let norm_sqr = z.norm_sqr();
    if norm_sqr == 0.0 {
        return false;
    }
    if conj_dependent(z, tol) {
        return z.self_inner() < -tol * norm_sqr;
    }
    f_value(z) > tol * norm_sqr * norm_sqr
}

/// `z conj(eta(z)) + conj(z) eta(z)`, a real negative vector.
///
/// For a real negative `z` this is `2 eta(z) z`.
pub fn pi_tilde(z: &IndefiniteVector, tol: f64) -> Result<IndefiniteVector> {
    if !in_pi_domain(z, tol) {
        return Err(Error::OutsidePiDomain);
    }
    Ok(pi_tilde_unchecked(z))
}

/// The formula of [`pi_tilde`] without the domain check. Off the domain the
/// result may be null or zero (e.g. on `f = 0`).
pub fn pi_tilde_unchecked(z: &IndefiniteVector) -> IndefiniteVector {
    let e = eta(z);
    let out = z.coords().iter().map(|c| c * e.conj() + c.conj() * e).collect();
    IndefiniteVector::new(out).expect("same length as z")
}

/// `Pi([z])`, a point of `H_R^n`; its representative ends in 1.
pub fn pi_projection(z: &IndefiniteVector, tol: f64) -> Result<ProjectivePoint> {
    normalize(&pi_tilde(z, tol)?)
}

/// Hyperbolic coordinates `(t_1, ..., t_n)`: `t_1` is the boost parameter,
/// the rest are angles of the unit direction.
#[derive(Clone, Debug, PartialEq)]
pub struct HypCoords {
    t: Vec<f64>,
}

impl HypCoords {
    pub fn new(t: Vec<f64>) -> Result<Self> {
        if t.len() < 2 {
            return Err(Error::TooFewCoordinates(t.len() + 1));
        }
        Ok(Self { t })
    }

    pub fn zero(n: usize) -> Self {
        Self { t: vec![0.0; n.max(2)] }
    }

    pub fn n(&self) -> usize {
        self.t.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.t
    }

    /// `t_k`, counted from 1.
    fn at(&self, k: usize) -> f64 {
        self.t[k - 1]
    }

    /// `prod_{k=from}^{to} sin(t_k)`, 1 when empty.
    fn sin_prod(&self, from: usize, to: usize) -> f64 {
        (from..=to).map(|k| self.at(k).sin()).product()
    }

    /// The unit spatial direction of the point: spherical coordinates in `t_2..t_n`.
    fn direction(&self) -> Vec<f64> {
        let n = self.n();
        let mut u = vec![0.0; n];
        let p = self.sin_prod(2, n - 1);
        u[0] = self.at(n).cos() * p;
        u[1] = self.at(n).sin() * p;
        for r in 3..=n {
            u[r - 1] = self.at(n + 2 - r).cos() * self.sin_prod(2, n + 1 - r);
        }
        u
    }

    /// The point `x(t) = [tanh(t_1) u(t) : 1]` of `H_R^n`.
    pub fn point(&self) -> ProjectivePoint {
        let th = self.at(1).tanh();
        let mut coords: Vec<Complex64> = self.direction().into_iter().map(|x| Complex64::new(th * x, 0.0)).collect();
        coords.push(Complex64::new(1.0, 0.0));
        normalize(&IndefiniteVector::new(coords).expect("n >= 2")).expect("last coordinate is 1")
    }
}

/// The isometry carrying `o = [0 : ... : 0 : 1]` to `x(t)`, built column by column.
///
/// Column 1 is `(cosh(t_1) u, sinh(t_1))`, column `n+1` is
/// `(sinh(t_1) u, cosh(t_1))`, and for `2 <= j <= n` column `j` is the unit
/// tangent of the sphere along `t_j` (the `t_j` derivative of `u` divided by
/// `prod_{k<j} sin(t_k)`). Column `n` is `(-sin t_n, cos t_n, 0, ..., 0)`.
///
/// The spatial frame is orthonormal for every `t`, so `A^T J A = J`; its
/// orientation depends on `n` (see [`IsometryMatrix::determinant`]).
pub fn hyp_matrix(t: &HypCoords) -> IsometryMatrix {
    let n = t.n();
    let (ch, sh) = (t.at(1).cosh(), t.at(1).sinh());
    let u = t.direction();
    let mut a = DMatrix::zeros(n + 1, n + 1);
    for r in 0..n {
        a[(r, 0)] = ch * u[r];
        a[(r, n)] = sh * u[r];
    }
    a[(n, 0)] = sh;
    a[(n, n)] = ch;

    for j in 2..n {
        let cj = t.at(j).cos();
        let p = t.sin_prod(j + 1, n - 1);
        a[(0, j - 1)] = t.at(n).cos() * cj * p;
        a[(1, j - 1)] = t.at(n).sin() * cj * p;
        for r in 3..=n + 1 - j {
            a[(r - 1, j - 1)] = t.at(n + 2 - r).cos() * cj * t.sin_prod(j + 1, n + 1 - r);
        }
        a[(n + 1 - j, j - 1)] = -t.at(j).sin();
    }
    a[(0, n - 1)] = -t.at(n).sin();
    a[(1, n - 1)] = t.at(n).cos();
    IsometryMatrix::from_raw(a)
}

/// The basis adapted to `x(t)`: the columns of [`hyp_matrix`], with the first
/// and last divided by `cosh(t_1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AdaptedBasis {
    vectors: Vec<DVector<f64>>,
}

impl AdaptedBasis {
    pub fn vectors(&self) -> &[DVector<f64>] {
        &self.vectors
    }
}

pub fn adapted_basis(t: &HypCoords) -> AdaptedBasis {
    let a = hyp_matrix(t);
    let n = t.n();
    let ch = t.at(1).cosh();
    let vectors = (0..=n)
        .map(|j| {
            let col = a.entries().column(j).into_owned();
            if j == 0 || j == n {
                col / ch
            } else {
                col
            }
        })
        .collect();
    AdaptedBasis { vectors }
}

/// The point of the fiber `L_x` over `x(t)` with fiber coordinates
/// `(y, x_last)`: the image under `A(t)` of `[i y_1 : ... : i y_n : x_last]`.
pub fn fiber_point(t: &HypCoords, y: &[f64], x_last: f64) -> Result<ProjectivePoint> {
    let n = t.n();
    if y.len() != n {
        return Err(Error::DimensionMismatch { left: n, right: y.len() });
    }
    if x_last == 0.0 {
        return Err(Error::BoundaryPoint);
    }
    let mut coords: Vec<Complex64> = y.iter().map(|&v| Complex64::new(0.0, v)).collect();
    coords.push(Complex64::new(x_last, 0.0));
    let base = IndefiniteVector::new(coords)?;
    normalize(&hyp_matrix(t).apply(&base)?)
}

/// Embeds `G in SO+(m,1)` into `SU(n,1)`: the spatial `m x m` block and the
/// time row/column of `G` go to coordinates `1..=m` and `n+1`, with the
/// identity on coordinates `m+1..=n`.
pub fn iota_embed(g: &IsometryMatrix, n: usize) -> Result<IsometryMatrix> {
    let m = g.n();
    if m > n {
        return Err(Error::RankOutOfRange { m, n });
    }
    let src = g.entries();
    let mut out = DMatrix::identity(n + 1, n + 1);
    let target = |i: usize| if i == m { n } else { i };
    for i in 0..=m {
        for k in 0..=m {
            out[(target(i), target(k))] = src[(i, k)];
        }
    }
    Ok(IsometryMatrix::from_raw(out))
}

/// Knobs for [`random_isometry_with`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IsometrySampler {
    /// Boost parameters are uniform in `[-boost_bound, boost_bound]`.
    pub boost_bound: f64,
    /// When false every rotation factor is the identity.
    pub rotations: bool,
}

impl Default for IsometrySampler {
    fn default() -> Self {
        Self { boost_bound: 2.0, rotations: true }
    }
}

/// A deterministic element of `SO+(m,1)`: `k` rounds of a random rotation of
/// the spatial block followed by a boost in a random `(j, m+1)` plane.
pub fn random_isometry(m: usize, seed: u64, k: usize) -> IsometryMatrix {
    random_isometry_with(m, seed, k, IsometrySampler::default())
}

pub fn random_isometry_with(m: usize, seed: u64, k: usize, sampler: IsometrySampler) -> IsometryMatrix {
    assert!(m >= 2, "random_isometry needs m >= 2");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = DMatrix::identity(m + 1, m + 1);
    for _ in 0..k {
        if sampler.rotations {
            acc = random_rotation(m, &mut rng) * acc;
        }
        let s = if sampler.boost_bound > 0.0 { rng.gen_range(-sampler.boost_bound..=sampler.boost_bound) } else { 0.0 };
        let axis = rng.gen_range(0..m);
        acc = boost(m, axis, s) * acc;
    }
    IsometryMatrix::from_raw(acc)
}

/// A Haar-random element of `SO(m)` in the spatial block of an `(m+1)` matrix.
fn random_rotation(m: usize, rng: &mut impl Rng) -> DMatrix<f64> {
    let gauss = DMatrix::<f64>::from_fn(m, m, |_, _| rng.sample(StandardNormal));
    let qr = gauss.qr();
    let r = qr.r();
    let mut q = qr.q();
    for i in 0..m {
        if r[(i, i)] < 0.0 {
            q.column_mut(i).neg_mut();
        }
    }
    if q.determinant() < 0.0 {
        q.column_mut(0).neg_mut();
    }
    let mut out = DMatrix::identity(m + 1, m + 1);
    out.view_mut((0, 0), (m, m)).copy_from(&q);
    out
}

/// The boost with parameter `s` in the plane of spatial axis `axis` and time.
pub fn boost(m: usize, axis: usize, s: f64) -> DMatrix<f64> {
    let mut b = DMatrix::identity(m + 1, m + 1);
    let (c, sh) = (s.cosh(), s.sinh());
    b[(axis, axis)] = c;
    b[(m, m)] = c;
    b[(axis, m)] = sh;
    b[(m, axis)] = sh;
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::DEFAULT_TOL;

    const TOL: f64 = DEFAULT_TOL;

    fn v(pairs: &[(f64, f64)]) -> IndefiniteVector {
        IndefiniteVector::from_pairs(pairs).unwrap()
    }

    #[test]
    fn eta_examples() {
        let z = IndefiniteVector::basis(3, 4);
        assert_eq!(eta(&z), Complex64::new(1.0, 0.0));
        let z = v(&[(0.0, 1.0), (0.0, 0.0), (0.0, 0.0), (1.0, 0.0)]);
        assert!((eta(&z) - Complex64::new(2f64.sqrt(), 0.0)).norm() < 1e-15);
        let z = IndefiniteVector::basis(3, 1);
        assert_eq!(eta(&z), Complex64::new(0.0, 1.0));
        // same value with a negative-zero imaginary part
        let z = v(&[(1.0, 0.0), (0.0, -0.0), (0.0, 0.0), (0.0, 0.0)]);
        assert_eq!(eta(&z), Complex64::new(0.0, 1.0));
    }

    #[test]
    fn pi_tilde_examples() {
        let z = v(&[(0.0, 1.0), (0.0, 0.0), (0.0, 0.0), (1.0, 0.0)]);
        let p = pi_tilde(&z, TOL).unwrap();
        let expected = 2f64.sqrt() * 2.0;
        assert!(p.coords()[..3].iter().all(|c| c.norm() < 1e-15));
        assert!((p[3] - Complex64::new(expected, 0.0)).norm() < 1e-14);
        assert_eq!(pi_projection(&z, TOL).unwrap().rep(), &IndefiniteVector::basis(3, 4));

        let o = IndefiniteVector::basis(3, 4);
        assert_eq!(pi_tilde(&o, TOL).unwrap(), IndefiniteVector::from_real(&[0.0, 0.0, 0.0, 2.0]).unwrap());
    }

    #[test]
    fn pi_identity_on_real_hyperbolic_space() {
        let z = IndefiniteVector::from_real(&[0.3, 0.0, 0.0, 1.0]).unwrap();
        let p = pi_projection(&z, TOL).unwrap();
        assert!(p.distance(&normalize(&z).unwrap()).unwrap() < 1e-15);
    }

    #[test]
    fn pi_rejects_lambda_points() {
        let z = v(&[(1.0, 0.0), (0.0, 1.0), (0.0, 0.0), (0.0, 0.0)]);
        assert!(matches!(pi_tilde(&z, TOL), Err(Error::OutsidePiDomain)));
        assert!(matches!(pi_tilde(&IndefiniteVector::basis(3, 1), TOL), Err(Error::OutsidePiDomain)));
    }

    #[test]
    fn hyp_matrix_at_origin_fixes_o() {
        for n in 2..=6 {
            let a = hyp_matrix(&HypCoords::zero(n));
            let col = a.entries().column(n);
            for r in 0..n {
                assert_eq!(col[r], 0.0);
            }
            assert_eq!(col[n], 1.0);
        }
    }

    #[test]
    fn hyp_matrix_carries_o_to_x() {
        let t = HypCoords::new(vec![0.7, 1.1, -0.4]).unwrap();
        let a = hyp_matrix(&t);
        let image = normalize(&a.apply(&IndefiniteVector::basis(3, 4)).unwrap()).unwrap();
        let (t1, t2, t3) = (0.7f64, 1.1f64, -0.4f64);
        let expected = IndefiniteVector::from_real(&[
            t1.tanh() * t3.cos() * t2.sin(),
            t1.tanh() * t3.sin() * t2.sin(),
            t1.tanh() * t2.cos(),
            1.0,
        ])
        .unwrap();
        assert!(image.distance(&normalize(&expected).unwrap()).unwrap() < 1e-14);
        assert!(image.distance(&t.point()).unwrap() < 1e-14);
    }

    #[test]
    fn hyp_matrix_orientation_by_dimension() {
        // The literal column layout is a permutation of the identity at t = 0,
        // even for n = 2, 3, 6 and odd for n = 4, 5.
        let expected = [(2, 1.0), (3, 1.0), (4, -1.0), (5, -1.0), (6, 1.0)];
        for (n, det) in expected {
            let t = HypCoords::new((0..n).map(|k| 0.3 + 0.2 * k as f64).collect()).unwrap();
            assert!((hyp_matrix(&t).determinant() - det).abs() < 1e-10, "n = {n}");
        }
    }

    #[test]
    fn adapted_basis_examples() {
        let zero = HypCoords::zero(4);
        let a = hyp_matrix(&zero);
        let w = adapted_basis(&zero);
        for (j, wj) in w.vectors().iter().enumerate() {
            assert_eq!(wj, &a.entries().column(j).into_owned());
        }
        let t = HypCoords::new(vec![1.3, 0.2, 2.0, -1.0]).unwrap();
        let a = hyp_matrix(&t);
        let w = adapted_basis(&t);
        assert_eq!(w.vectors()[0], a.entries().column(0) / 1.3f64.cosh());
        assert_eq!(w.vectors()[4], a.entries().column(4) / 1.3f64.cosh());
        assert_eq!(w.vectors()[2], a.entries().column(2).into_owned());
    }

    #[test]
    fn fiber_point_examples() {
        let t = HypCoords::zero(3);
        let p = fiber_point(&t, &[1.0, 0.0, 0.0], 1.0).unwrap();
        // A(0) sends e_1 to e_3
        assert_eq!(p.rep(), &v(&[(0.0, 0.0), (0.0, 0.0), (1.0, 0.0), (0.0, -1.0)]));
        let base = pi_projection(p.rep(), TOL).unwrap();
        assert_eq!(base.rep(), &IndefiniteVector::basis(3, 4));

        let p = fiber_point(&t, &[0.0, 0.0, 0.0], 1.0).unwrap();
        assert_eq!(p.rep(), &IndefiniteVector::basis(3, 4));
        assert_eq!(pi_projection(p.rep(), TOL).unwrap().rep(), &IndefiniteVector::basis(3, 4));

        assert!(matches!(fiber_point(&t, &[1.0, 0.0, 0.0], 0.0), Err(Error::BoundaryPoint)));
    }

    #[test]
    fn iota_examples() {
        let g = IsometryMatrix::identity(2);
        assert_eq!(iota_embed(&g, 4).unwrap(), IsometryMatrix::identity(4));

        let g = random_isometry(3, 5, 2);
        assert_eq!(iota_embed(&g, 3).unwrap(), g);

        let g = IsometryMatrix::from_raw(boost(2, 0, 0.8));
        let big = iota_embed(&g, 4).unwrap();
        assert!(big.j_orthogonality_residual() < 1e-12);
        let fixed = IndefiniteVector::basis(4, 3);
        assert_eq!(big.apply(&fixed).unwrap(), fixed);
        assert_eq!(big.entries()[(0, 4)], 0.8f64.sinh());
        assert_eq!(big.entries()[(4, 4)], 0.8f64.cosh());

        assert!(matches!(iota_embed(&IsometryMatrix::identity(4), 3), Err(Error::RankOutOfRange { .. })));
    }

    #[test]
    fn random_isometry_invariants() {
        for m in 2..=5 {
            for seed in 0..20 {
                let a = random_isometry(m, seed, 3);
                let scale = a.norm().powi(2);
                assert!(a.j_orthogonality_residual() <= 1e-10 * scale.max(1.0));
                assert!((a.determinant() - 1.0).abs() < 1e-8 * scale.powi(m as i32));
                assert!(a.time_entry() >= 1.0 - 1e-10);
            }
        }
    }

    #[test]
    fn random_isometry_is_deterministic() {
        assert_eq!(random_isometry(3, 42, 4), random_isometry(3, 42, 4));
        assert_ne!(random_isometry(3, 42, 4), random_isometry(3, 43, 4));
    }

    #[test]
    fn trivial_sampler_gives_identity() {
        let sampler = IsometrySampler { boost_bound: 0.0, rotations: false };
        for k in 1..4 {
            assert_eq!(random_isometry_with(3, 9, k, sampler), IsometryMatrix::identity(3));
        }
    }

    #[test]
    fn new_rejects_non_isometries() {
        let mut m = DMatrix::identity(4, 4);
        m[(0, 1)] = 0.5;
        assert!(IsometryMatrix::new(m).is_err());
        assert!(IsometryMatrix::new(DMatrix::identity(2, 2)).is_err());
        assert!(IsometryMatrix::new(boost(3, 1, 1.5)).is_ok());
    }
}
