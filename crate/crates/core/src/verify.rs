//! Randomized checks of the algebraic and geometric invariants.
//!
//! Each check draws `trials` random instances from its own seeded stream and
//! records the worst normalized residual. Thresholds are multiples of `tol`
//! (at the default `tol = 1e-9` they are the usual 1e-12 / 1e-10 / 1e-8
//! bounds), so a tiny `tol` makes the checks fail and shows they are live.

use std::fmt::Write as _;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::census::{run_census, CensusConfig};
use crate::error::Result;
use crate::fibration::{
    eta, fiber_point, hyp_matrix, iota_embed, pi_projection, pi_tilde, pi_tilde_unchecked, random_isometry, HypCoords,
    IsometryMatrix,
};
use crate::hermitian::{
    conj_dependent, f_value, f_value_coordinates, gram2, herm_inner, span_class_det, span_class_eig, IndefiniteVector,
    SpanClass,
};
use crate::limit_set::{classify, classify_equal_dim, partition_label, PartitionLabel};
use crate::projective::{hyperplane_of, in_lambda0, normalize, q_project, real_intersection_kind};
use crate::sampling::{gaussian_complex, gaussian_real_vector, gaussian_vector, stream_rng};
use crate::slice::{classify_pixel, render_slice, SliceFormat, SliceSpec};

/// Rounds of rotation + boost in the random isometries used by the checks.
pub const ISOMETRY_ROUNDS: usize = 2;

/// Points count as away from a label boundary when `|f|` and `|<z,z>|`
/// exceed this many tolerances (relative).
const MARGIN: f64 = 10.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropertyResult {
    pub name: String,
    pub trials: usize,
    /// Draws discarded as too close to a boundary.
    pub skipped: usize,
    pub failures: usize,
    /// Worst normalized residual (or mismatch count for exact checks).
    pub max_residual: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl PropertyResult {
    fn new(name: impl Into<String>, threshold: f64) -> Self {
        Self { name: name.into(), trials: 0, skipped: 0, failures: 0, max_residual: 0.0, threshold, passed: true }
    }

    /// Records one trial with a normalized residual.
    fn record(&mut self, residual: f64) {
        self.trials += 1;
        if residual.is_nan() || residual > self.threshold {
            self.failures += 1;
        }
        if residual.is_nan() || residual > self.max_residual {
            self.max_residual = residual;
        }
    }

    /// Records one trial of an exact (boolean) check.
    fn record_exact(&mut self, ok: bool) {
        self.trials += 1;
        if !ok {
            self.failures += 1;
            self.max_residual = self.failures as f64;
        }
    }

    fn skip(&mut self) {
        self.skipped += 1;
    }

    fn finish(mut self) -> Self {
        self.passed = self.failures == 0 && self.trials > 0;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    pub passed: bool,
    pub properties: Vec<PropertyResult>,
}

impl VerifyReport {
    pub fn to_table(&self) -> String {
        let width = self.properties.iter().map(|p| p.name.len()).max().unwrap_or(8).max(8);
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:<width$}  {:>7}  {:>8}  {:>12}  {:>12}  result",
            "property", "trials", "failures", "max_resid", "threshold"
        );
        for p in &self.properties {
            let _ = writeln!(
                s,
                "{:<width$}  {:>7}  {:>8}  {:>12.3e}  {:>12.3e}  {}",
                p.name,
                p.trials,
                p.failures,
                p.max_residual,
                p.threshold,
                if p.passed { "PASS" } else { "FAIL" }
            );
        }
        let _ = writeln!(s, "overall: {}", if self.passed { "PASS" } else { "FAIL" });
        s
    }
}

fn rng_for(seed: u64, stream: &str, index: usize) -> ChaCha8Rng {
    let key = stream.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
    stream_rng(seed, key, index as u64)
}

fn diff_norm(a: &IndefiniteVector, b: &IndefiniteVector) -> f64 {
    a.coords().iter().zip(b.coords()).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
}

fn random_alpha(rng: &mut ChaCha8Rng) -> Complex64 {
    loop {
        let a = gaussian_complex(rng);
        if a.norm() > 0.1 {
            return a;
        }
    }
}

fn away_from_boundary(z: &IndefiniteVector, tol: f64) -> bool {
    let ns = z.norm_sqr();
    f_value(z).abs() > MARGIN * tol * ns * ns && z.self_inner().abs() > MARGIN * tol * ns
}

/// A Gaussian vector in `U_+`, clear of the boundary `f = 0`.
pub fn sample_u_plus(n: usize, tol: f64, rng: &mut ChaCha8Rng) -> IndefiniteVector {
    loop {
        let z = gaussian_vector(n, rng);
        let ns = z.norm_sqr();
        if f_value(&z) > MARGIN * tol * ns * ns {
            return z;
        }
    }
}

// ---------------------------------------------------------------- hermitian

pub fn check_conj_symmetry(n: usize, trials: usize, seed: u64, tol: f64) -> PropertyResult {
    let mut r = PropertyResult::new(format!("conj_symmetry[n={n}]"), tol / 1000.0);
    for t in 0..trials {
        let mut rng = rng_for(seed, "conj_symmetry", t);
        let (z, w) = (gaussian_vector(n, &mut rng), gaussian_vector(n, &mut rng));
        let lhs = herm_inner(&w, &z).unwrap();
        let rhs = herm_inner(&z, &w).unwrap().conj();
        r.record((lhs - rhs).norm() / (z.norm() * w.norm()));
    }
    r.finish()
}

pub fn check_sesquilinearity(n: usize, trials: usize, seed: u64, tol: f64) -> PropertyResult {
    let mut r = PropertyResult::new(format!("sesquilinearity[n={n}]"), tol / 1000.0);
    for t in 0..trials {
        let mut rng = rng_for(seed, "sesquilinearity", t);
        let (z, w) = (gaussian_vector(n, &mut rng), gaussian_vector(n, &mut rng));
        let alpha = random_alpha(&mut rng);
        let lhs = herm_inner(&z.scale(alpha), &w).unwrap();
        let rhs = alpha * herm_inner(&z, &w).unwrap();
        r.record((lhs - rhs).norm() / (alpha.norm() * z.norm() * w.norm()));
    }
    r.finish()
}

/// Determinant and eigenvalue classifiers agree whenever `|det G|` clears
/// `tol * scale`.
pub fn check_sylvester_oracle(n: usize, trials: usize, seed: u64, tol: f64) -> PropertyResult {
    let mut r = PropertyResult::new(format!("sylvester_oracle[n={n}]"), 0.0);
    for t in 0..trials {
        let mut rng = rng_for(seed, "sylvester_oracle", t);
        let (z1, z2) = (gaussian_vector(n, &mut rng), gaussian_vector(n, &mut rng));
        let det = gram2(&z1, &z2).unwrap().det();
        if det.abs() <= tol * z1.norm_sqr() * z2.norm_sqr() {
            r.skip();
            continue;
        }
        r.record_exact(span_class_det(&z1, &z2, tol).unwrap() == span_class_eig(&z1, &z2, tol).unwrap());
    }
    r.finish()
}

/// `lambda1 * lambda2 = det G`, relative to `|det G|`.
pub fn check_eigen_product(n: usize, trials: usize, seed: u64, tol: f64) -> PropertyResult {
    let mut r = PropertyResult::new(format!("eigen_product[n={n}]"), tol / 10.0);
    for t in 0..trials {
        let mut rng = rng_for(seed, "sylvester_oracle", t);
        let (z1, z2) = (gaussian_vector(n, &mut rng), gaussian_vector(n, &mut rng));
        let g = gram2(&z1, &z2).unwrap();
        let det = g.det();
        if det.abs() <= tol * z1.norm_sqr() * z2.norm_sqr() {
            r.skip();
            continue;
        }
        let (l1, l2) = g.eigenvalues();
        r.record((l1 * l2 - det).abs() / det.abs());
    }
    r.finish()
}

pub fn check_f_formulas(n: usize, trials: usize, seed: u64, tol: f64) -> PropertyResult {
    let mut r = PropertyResult::new(format!("f_two_formulas[n={n}]"), tol / 10.0);
    for t in 0..trials {
        let mut rng = rng_for(seed, "f_two_formulas", t);
        let z = gaussian_vector(n, &mut rng);
        r.record((f_value(&z) - f_value_coordinates(&z)).abs() / z.norm_sqr().powi(2));
    }
    r.finish()
}

pub fn check_f_homogeneity(n: usize, trials: usize, seed: u64, tol: f64) -> PropertyResult {
    let mut r = PropertyResult::new(format!("f_homogeneity[n={n}]"), tol / 10.0);
    for t in 0..trials {
        let mut rng = rng_for(seed, "f_homogeneity", t);
        let z = gaussian_vector(n, &mut rng);
        let alpha = random_alpha(&mut rng);
        let a4 = alpha.norm_sqr().powi(2);
        let residual = (f_value(&z.scale(alpha)) - a4 * f_value(&z)).abs();
        r.record(residual / (a4 * z.norm_sqr().powi(2)));
    }
    r.finish()
}

/// The span of `z` and `conj z` is elliptic / hyperbolic / parabolic exactly
/// when `f` is negative / positive / zero.
pub fn check_sign_correspondence(n: usize, trials: usize, seed: u64, tol: f64) -> PropertyResult {
    let mut r = PropertyResult::new(format!("sign_correspondence[n={n}]"), 0.0);
    for t in 0..trials {
        let mut rng = rng_for(seed, "sign_correspondence", t);
        let z = gaussian_vector(n, &mut rng);
        if conj_dependent(&z, tol) {
            r.skip();
            continue;
        }
        let f = f_value(&z);
        let scale = z.norm_sqr().powi(2);
        let expected = if f < -tol * scale {
            SpanClass::Elliptic
        } else if f > tol * scale {
            SpanClass::Hyperbolic
        } else {
            SpanClass::Parabolic
        };
        r.record_exact(span_class_det(&z, &z.conj(), tol).unwrap() == expected);
    }
    r.finish()
}

// --------------------------------------------------------------- projective

pub fn check_normalize(n: usize, trials: usize, seed: u64, tol: f64) -> PropertyResult {
    let mut r = PropertyResult::new(format!("normalize_scale_invariance[n={n}]"), tol / 1000.0);
    for t in 0..trials {
        let mut rng = rng_for(seed, "normalize", t);
        let z = gaussian_vector(n, &mut rng);
        let alpha = random_alpha(&mut rng);
        let p = normalize(&z).unwrap();
        let idempotent = p.distance(&normalize(p.rep()).unwrap()).unwrap();
        let scaled = p.distance(&normalize(&z.scale(alpha)).unwrap()).unwrap();
        r.record(idempotent.max(scaled));
    }
    r.finish()
}

/// `w in H_p` iff `p in H_w`, on random pairs and on pairs built to be incident.
pub fn check_hyperplane_duality(n: usize, trials: usize, seed: u64, tol: f64) -> PropertyResult {
    let mut r = PropertyResult::new(format!("hyperplane_duality[n={n}]"), 0.0);
    for t in 0..trials {
        let mut rng = rng_for(seed, "hyperplane_duality", t);
        let p = gaussian_vector(n, &mut rng);
        let mut w = gaussian_vector(n, &mut rng);
        if t % 2 == 1 {
            // w - (<w,p>/<p,p>) p is orthogonal to p
            let k = herm_inner(&w, &p).unwrap() / p.self_inner();
            w = w.add_scaled(-1.0, &p.scale(k)).unwrap();
        }
        let (pp, pw) = (normalize(&p).unwrap(), normalize(&w).unwrap());
        let a = hyperplane_of(&pp).contains(pw.rep(), tol).unwrap();
        let b = hyperplane_of(&pw).contains(pp.rep(), tol).unwrap();
        r.record_exact(a == b && (t % 2 == 0 || a));
    }
    r.finish()
}

pub fn check_projection_conjugation(m: usize, n: usize, trials: usize, seed: u64, tol: f64) -> PropertyResult {
    let mut r = PropertyResult::new(format!("projection_conjugation[m={m},n={n}]"), 0.0);
    for t in 0..trials {
        let mut rng = rng_for(seed, "projection_conjugation", t);
        let z = gaussian_vector(n, &mut rng);
        let lhs = q_project(&z.conj(), m, tol).unwrap();
        let rhs = q_project(&z, m, tol).unwrap().conj();
        r.record_exact(lhs == rhs);
    }
    r.finish()
}

/// Draws a vector of a random kind: generic, real up to phase, or in `Lambda_0`.
fn mixed_vector(n: usize, m: usize, rng: &mut ChaCha8Rng) -> IndefiniteVector {
    match rng.gen_range(0..3) {
        0 => gaussian_vector(n, rng),
        1 => gaussian_real_vector(n, rng).scale(random_alpha(rng)),
        _ => {
            let mut coords = gaussian_vector(n, rng).into_coords();
            for c in coords[..m].iter_mut() {
                *c = Complex64::new(0.0, 0.0);
            }
            coords[n] = Complex64::new(0.0, 0.0);
            if m == n {
                coords[0] = Complex64::new(1.0, 0.0);
            }
            IndefiniteVector::new(coords).unwrap()
        }
    }
}

pub fn check_intersection_kind_scaling(m: usize, n: usize, trials: usize, seed: u64, tol: f64) -> PropertyResult {
    let mut r = PropertyResult::new(format!("intersection_kind_scaling[m={m},n={n}]"), 0.0);
    for t in 0..trials {
        let mut rng = rng_for(seed, "intersection_kind", t);
        let z = mixed_vector(n, m, &mut rng);
        let alpha = random_alpha(&mut rng);
        let a = real_intersection_kind(&z, m, tol).unwrap();
        let b = real_intersection_kind(&z.scale(alpha), m, tol).unwrap();
        r.record_exact(a == b);
    }
    r.finish()
}

// ---------------------------------------------------------------- limit set

pub fn check_projective_well_defined(m: usize, n: usize, trials: usize, seed: u64, tol: f64) -> PropertyResult {
    let mut r = PropertyResult::new(format!("classify_scale_invariance[m={m},n={n}]"), 0.0);
    for t in 0..trials {
        let mut rng = rng_for(seed, "classify_scale", t);
        let z = mixed_vector(n, m, &mut rng);
        let decider = if in_lambda0(&z, m, tol).unwrap() { None } else { Some(q_project(&z, m, tol).unwrap()) };
        if let Some(q) = &decider {
            let ns = q.norm_sqr();
            let real = conj_dependent(q, tol);
            let clear =
                if real { q.self_inner().abs() > MARGIN * tol * ns } else { f_value(q).abs() > MARGIN * tol * ns * ns };
            if !clear {
                r.skip();
                continue;
            }
        }
        let alpha = random_alpha(&mut rng);
        match (classify(&z, m, tol), classify(&z.scale(alpha), m, tol)) {
            (Ok(a), Ok(b)) => r.record_exact(a == b),
            (Err(_), Err(_)) => r.skip(),
            _ => r.record_exact(false),
        }
    }
    r.finish()
}

/// `f`, the `U` partition and the region label are unchanged by `iota(G)`
/// for random `G in SO+(m,1)`.
pub fn check_invariance(m: usize, n: usize, trials: usize, seed: u64, tol: f64) -> Vec<PropertyResult> {
    let mut f_res = PropertyResult::new(format!("f_invariance[m={m},n={n}]"), 10.0 * tol);
    let mut labels = PropertyResult::new(format!("label_invariance[m={m},n={n}]"), 0.0);
    for t in 0..trials {
        let mut rng = rng_for(seed, "invariance", t);
        let g = random_isometry(m, rng.gen(), ISOMETRY_ROUNDS);
        let big = iota_embed(&g, n).unwrap();
        let z = gaussian_vector(n, &mut rng);
        let gz = big.apply(&z).unwrap();
        if m == n {
            f_res.record((f_value(&gz) - f_value(&z)).abs() / z.norm_sqr().powi(2));
        } else {
            // iota(G) acts on Q_m(z) through G, and f at rank m is read off Q_m(z)
            let (q, gq) = (q_project(&z, m, tol).unwrap(), q_project(&gz, m, tol).unwrap());
            f_res.record((f_value(&gq) - f_value(&q)).abs() / q.norm_sqr().powi(2));
        }
        let (q, gq) = (q_project(&z, m, tol).unwrap(), q_project(&gz, m, tol).unwrap());
        if ![&q, &gq, &z, &gz].iter().all(|v| away_from_boundary(v, tol)) {
            labels.skip();
            continue;
        }
        let same_partition = partition_label(&gz, tol).unwrap() == partition_label(&z, tol).unwrap();
        let same_label = matches!((classify(&gz, m, tol), classify(&z, m, tol)), (Ok(a), Ok(b)) if a == b);
        labels.record_exact(same_partition && same_label);
    }
    vec![f_res.finish(), labels.finish()]
}

/// `classify(z, m)` equals the label of `Q_m(z)` classified in `C^{m,1}`.
pub fn check_factorization(m: usize, n: usize, trials: usize, seed: u64, tol: f64) -> PropertyResult {
    let mut r = PropertyResult::new(format!("factorization[m={m},n={n}]"), 0.0);
    // `trials` counts points outside Lambda_0; draws inside it are skipped
    for t in 0.. {
        if r.trials == trials {
            break;
        }
        let mut rng = rng_for(seed, "factorization", t);
        let z = mixed_vector(n, m, &mut rng);
        if in_lambda0(&z, m, tol).unwrap() {
            r.skip();
            continue;
        }
        let q = q_project(&z, m, tol).unwrap();
        let direct = classify(&z, m, tol);
        let lifted = classify(&q, m, tol);
        r.record_exact(matches!((direct, lifted), (Ok(a), Ok(b)) if a == b));
    }
    r.finish()
}

/// For `n > 2`: `[z] in Lambda` iff `z in U_-`, or `z in U_0` and not
/// real-negative; `[z] in Omega` iff `z in U_+` or real-negative.
pub fn check_partition_description(n: usize, trials: usize, seed: u64, tol: f64) -> PropertyResult {
    let mut r = PropertyResult::new(format!("partition_description[n={n}]"), 0.0);
    for t in 0..trials {
        let mut rng = rng_for(seed, "partition_description", t);
        let z = mixed_vector(n, n, &mut rng);
        let Ok(label) = classify_equal_dim(&z, tol) else {
            r.record_exact(false);
            continue;
        };
        let real_negative = conj_dependent(&z, tol) && z.self_inner() < -tol * z.norm_sqr();
        let part = partition_label(&z, tol).unwrap();
        let expect_lambda = part == PartitionLabel::UMinus || (part == PartitionLabel::U0 && !real_negative);
        let expect_omega = part == PartitionLabel::UPlus || real_negative;
        r.record_exact(label.is_lambda() == expect_lambda && label.is_omega() == expect_omega);
    }
    r.finish()
}

/// Non-real `z` with `f(z) <= 0` is a positive vector.
pub fn check_positivity(n: usize, trials: usize, seed: u64, tol: f64) -> PropertyResult {
    let mut r = PropertyResult::new(format!("positivity_side_condition[n={n}]"), 0.0);
    for t in 0..trials {
        let mut rng = rng_for(seed, "positivity", t);
        let z = gaussian_vector(n, &mut rng);
        let ns = z.norm_sqr();
        if conj_dependent(&z, tol) || f_value(&z) > tol * ns * ns {
            r.skip();
            continue;
        }
        r.record_exact(z.self_inner() > -tol * ns);
    }
    r.finish()
}

// --------------------------------------------------------------- fibration

pub fn check_eta_branch(n: usize, trials: usize, seed: u64, tol: f64) -> PropertyResult {
    let mut r = PropertyResult::new(format!("eta_branch[n={n}]"), tol / 1000.0);
    for t in 0..trials {
        let mut rng = rng_for(seed, "eta_branch", t);
        let z = gaussian_vector(n, &mut rng);
        let e = eta(&z);
        let bilinear = herm_inner(&z, &z.conj()).unwrap();
        let residual = (e * e + bilinear).norm() / z.norm_sqr();
        r.record(if e.re >= 0.0 { residual } else { f64::INFINITY });
    }
    r.finish()
}

/// `<Pi~(z), Pi~(z)> = 2|eta|^2 (<z,z> - |eta|^2) < 0` on `U_+`.
pub fn check_pi_negativity(n: usize, trials: usize, seed: u64, tol: f64) -> PropertyResult {
    let mut r = PropertyResult::new(format!("pi_negativity[n={n}]"), tol / 10.0);
    for t in 0..trials {
        let mut rng = rng_for(seed, "pi_negativity", t);
        let z = sample_u_plus(n, tol, &mut rng);
        let p = pi_tilde(&z, tol).unwrap();
        let lhs = p.self_inner();
        let e2 = eta(&z).norm_sqr();
        let rhs = 2.0 * e2 * (z.self_inner() - e2);
        let residual = (lhs - rhs).abs() / rhs.abs();
        r.record(if lhs < 0.0 && rhs < 0.0 { residual } else { f64::INFINITY });
    }
    r.finish()
}

/// `Pi~(A z) = A Pi~(z)` for random `A in SO+(n,1)`, relative to `(|A| |z|)^2`.
pub fn check_equivariance(n: usize, trials: usize, seed: u64, tol: f64) -> PropertyResult {
    let mut r = PropertyResult::new(format!("pi_equivariance[n={n}]"), tol);
    for t in 0..trials {
        let mut rng = rng_for(seed, "pi_equivariance", t);
        let a = random_isometry(n, rng.gen(), ISOMETRY_ROUNDS);
        let z = sample_u_plus(n, tol, &mut rng);
        let az = a.apply(&z).unwrap();
        // Az is in U_+ as f(Az) = f(z); its relative margin may shrink with |A|
        let lhs = pi_tilde_unchecked(&az);
        let rhs = a.apply(&pi_tilde(&z, tol).unwrap()).unwrap();
        r.record(diff_norm(&lhs, &rhs) / (a.norm() * z.norm()).powi(2));
    }
    r.finish()
}

/// `Pi~(alpha z) = |alpha|^2 Pi~(z)` up to the sign picked by the fixed
/// branch of `eta` (`eta(alpha z) = +-alpha eta(z)`).
pub fn check_pi_scaling(n: usize, trials: usize, seed: u64, tol: f64) -> PropertyResult {
    let mut r = PropertyResult::new(format!("pi_scaling[n={n}]"), tol / 10.0);
    for t in 0..trials {
        let mut rng = rng_for(seed, "pi_scaling", t);
        let z = sample_u_plus(n, tol, &mut rng);
        let alpha = random_alpha(&mut rng);
        let a2 = alpha.norm_sqr();
        let lhs = pi_tilde(&z.scale(alpha), tol).unwrap();
        let rhs = pi_tilde(&z, tol).unwrap().scale(Complex64::new(a2, 0.0));
        let residual = diff_norm(&lhs, &rhs).min(diff_norm(&lhs, &-&rhs));
        r.record(residual / (a2 * z.norm_sqr()));
    }
    r.finish()
}

/// A positive non-real `z` with `f(z) = 0`: `z = x + i y` with `y` null and
/// `x` orthogonal to `y`.
fn parabolic_positive_vector(n: usize, rng: &mut ChaCha8Rng) -> IndefiniteVector {
    let spatial = gaussian_real_vector(n - 1, rng).re();
    let len = spatial.iter().map(|v| v * v).sum::<f64>().sqrt();
    let mut y = spatial;
    y.push(len);
    let mut x = gaussian_real_vector(n, rng).re();
    let xy: f64 = x[..n].iter().zip(&y[..n]).map(|(a, b)| a * b).sum::<f64>() - x[n] * y[n];
    x[n] += xy / y[n];
    let coords = x.iter().zip(&y).map(|(&a, &b)| Complex64::new(a, b)).collect();
    IndefiniteVector::new(coords).unwrap()
}

/// For positive non-real `z` on `f = 0`, `z conj(eta) + conj(z) eta` lies in
/// `H_z` and `H_{conj z}`.
pub fn check_parabolic_orthogonality(n: usize, trials: usize, seed: u64, tol: f64) -> PropertyResult {
    let mut r = PropertyResult::new(format!("parabolic_orthogonality[n={n}]"), 100.0 * tol);
    for t in 0..trials {
        let mut rng = rng_for(seed, "parabolic_orthogonality", t);
        let z = parabolic_positive_vector(n, &mut rng);
        let ns = z.norm_sqr();
        if conj_dependent(&z, tol) || z.self_inner() <= tol * ns || f_value(&z).abs() > tol * ns * ns {
            r.record(f64::INFINITY);
            continue;
        }
        let p = pi_tilde_unchecked(&z);
        let a = herm_inner(&z, &p).unwrap().norm();
        let b = herm_inner(&z.conj(), &p).unwrap().norm();
        r.record(a.max(b) / (ns * z.norm()));
    }
    r.finish()
}

fn random_hyp_coords(n: usize, rng: &mut ChaCha8Rng) -> HypCoords {
    let mut t = vec![rng.gen_range(-3.0..3.0)];
    t.extend((1..n).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)));
    HypCoords::new(t).unwrap()
}

/// `Pi(fiber_point(t, y, x_last)) = x(t)` and `A(t)^T J A(t) = J`.
pub fn check_fibration(n: usize, trials: usize, seed: u64, tol: f64) -> Vec<PropertyResult> {
    let mut fiber = PropertyResult::new(format!("fiber_projection[n={n}]"), 10.0 * tol);
    let mut orth = PropertyResult::new(format!("hyp_matrix_j_orthogonal[n={n}]"), tol / 10.0);
    for k in 0..trials {
        let mut rng = rng_for(seed, "fibration", k);
        let t = random_hyp_coords(n, &mut rng);
        let y: Vec<f64> = (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let sign = if rng.gen::<bool>() { 1.0 } else { -1.0 };
        let x_last = sign * rng.gen_range(0.1..3.0);
        let residual = fiber_point(&t, &y, x_last)
            .and_then(|p| pi_projection(p.rep(), tol))
            .and_then(|base| base.distance(&t.point()));
        fiber.record(residual.unwrap_or(f64::INFINITY));
        orth.record(hyp_matrix(&t).j_orthogonality_residual());
    }
    vec![fiber.finish(), orth.finish()]
}

/// `iota(G H) = iota(G) iota(H)` entrywise, relative to `|G| |H|`.
pub fn check_iota_homomorphism(m: usize, n: usize, trials: usize, seed: u64, tol: f64) -> PropertyResult {
    let mut r = PropertyResult::new(format!("iota_homomorphism[m={m},n={n}]"), tol / 10.0);
    for t in 0..trials {
        let mut rng = rng_for(seed, "iota_homomorphism", t);
        let g = random_isometry(m, rng.gen(), ISOMETRY_ROUNDS);
        let h = random_isometry(m, rng.gen(), ISOMETRY_ROUNDS);
        let lhs = iota_embed(&g.compose(&h).unwrap(), n).unwrap();
        let rhs = iota_embed(&g, n).unwrap().compose(&iota_embed(&h, n).unwrap()).unwrap();
        let residual = (lhs.entries() - rhs.entries()).amax();
        r.record(residual / (g.norm() * h.norm()));
    }
    r.finish()
}

/// Outputs of `random_isometry` satisfy `A^T J A = J`, `det A = 1` and
/// `A_{n+1,n+1} >= 1`.
pub fn check_random_isometry(m: usize, trials: usize, seed: u64, tol: f64) -> PropertyResult {
    let mut r = PropertyResult::new(format!("random_isometry_invariants[m={m}]"), tol / 10.0);
    for t in 0..trials {
        let a: IsometryMatrix = random_isometry(m, seed.wrapping_add(t as u64), ISOMETRY_ROUNDS);
        let scale = a.norm().powi(2);
        let orth = a.j_orthogonality_residual() / scale;
        // det A is +-1 once A^T J A = J holds; only the sign is at stake
        let oriented = a.determinant() > 0.0 && a.time_entry() >= 1.0 - tol / 10.0;
        r.record(if oriented { orth } else { f64::INFINITY });
    }
    r.finish()
}

// ------------------------------------------------------------------- census

fn probe_census(m: usize, n: usize, seed: u64, tol: f64) -> Result<crate::census::CensusReport> {
    run_census(&CensusConfig {
        samples: 300,
        edge_candidates: 3000,
        segment_steps: 32,
        seed,
        tol,
        ..CensusConfig::new(m, n)
    })
}

pub fn check_census_determinism(seed: u64, tol: f64) -> PropertyResult {
    let mut r = PropertyResult::new("census_determinism", 0.0);
    let a = probe_census(2, 3, seed, tol);
    let b = probe_census(2, 3, seed, tol);
    r.record_exact(matches!((a, b), (Ok(a), Ok(b)) if a == b));
    r.finish()
}

pub fn check_label_purity(n: usize, seed: u64, tol: f64) -> PropertyResult {
    let mut r = PropertyResult::new(format!("census_label_purity[m=2,n={n}]"), 0.0);
    r.record_exact(matches!(probe_census(2, n, seed, tol), Ok(rep) if rep.cross_label_edges == 0));
    r.finish()
}

/// Every rendered pixel re-classifies to its stored label.
pub fn check_slice_consistency(seed: u64, tol: f64) -> PropertyResult {
    let mut r = PropertyResult::new("slice_consistency", 0.0);
    let mut rng = rng_for(seed, "slice", 0);
    for (m, n) in [(2, 2), (3, 3), (2, 4)] {
        let spec = SliceSpec {
            m,
            n,
            center: gaussian_vector(n, &mut rng),
            dir_u: gaussian_vector(n, &mut rng),
            dir_v: gaussian_vector(n, &mut rng),
            half_width: 1.5,
            resolution: 16,
            output: None,
            format: SliceFormat::Csv,
        };
        let Ok(grid) = render_slice(&spec, tol) else {
            r.record_exact(false);
            continue;
        };
        for row in 0..spec.resolution {
            for col in 0..spec.resolution {
                r.record_exact(classify_pixel(&spec, row, col, tol) == grid.get(row, col));
            }
        }
    }
    r.finish()
}

/// Runs every check at `trials` draws each.
pub fn verify_suite(trials: usize, seed: u64, tol: f64) -> VerifyReport {
    let trials = trials.max(1);
    let mut props = Vec::new();
    for n in [2, 3, 5] {
        props.push(check_conj_symmetry(n, trials, seed, tol));
        props.push(check_sesquilinearity(n, trials, seed, tol));
        props.push(check_sylvester_oracle(n, trials, seed, tol));
        props.push(check_eigen_product(n, trials, seed, tol));
        props.push(check_f_formulas(n, trials, seed, tol));
        props.push(check_f_homogeneity(n, trials, seed, tol));
        props.push(check_sign_correspondence(n, trials, seed, tol));
        props.push(check_normalize(n, trials, seed, tol));
        props.push(check_hyperplane_duality(n, trials, seed, tol));
        props.push(check_eta_branch(n, trials, seed, tol));
        props.push(check_pi_negativity(n, trials, seed, tol));
        props.push(check_equivariance(n, trials, seed, tol));
        props.push(check_pi_scaling(n, trials, seed, tol));
    }
    for n in [3, 4, 5] {
        props.push(check_partition_description(n, trials, seed, tol));
        props.push(check_positivity(n, trials, seed, tol));
        props.push(check_parabolic_orthogonality(n, trials, seed, tol));
    }
    for n in [3, 4] {
        props.extend(check_fibration(n, trials, seed, tol));
    }
    for m in [2, 3] {
        props.push(check_random_isometry(m, trials, seed, tol));
        for n in [m, m + 2] {
            props.extend(check_invariance(m, n, trials, seed, tol));
            props.push(check_projective_well_defined(m, n, trials, seed, tol));
            props.push(check_intersection_kind_scaling(m, n, trials, seed, tol));
            props.push(check_iota_homomorphism(m, n, trials, seed, tol));
            if m < n {
                props.push(check_projection_conjugation(m, n, trials, seed, tol));
                props.push(check_factorization(m, n, trials, seed, tol));
            }
        }
    }
    props.push(check_census_determinism(seed, tol));
    for n in [2, 4] {
        props.push(check_label_purity(n, seed, tol));
    }
    props.push(check_slice_consistency(seed, tol));

    let passed = props.iter().all(|p| p.passed);
    VerifyReport { trials, seed, tol, passed, properties: props }
}
