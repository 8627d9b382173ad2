//! Acceptance criteria, one line each: `ACCEPTANCE <name>: PASS|FAIL <detail>`.
//!
//! Run with `cargo test -p kulkarni --test acceptance -- --nocapture` to see
//! the lines.

use std::time::{Duration, Instant};

use kulkarni::census::{run_census, CensusConfig, CensusReport};
use kulkarni::hermitian::{f_value, IndefiniteVector, DEFAULT_TOL};
use kulkarni::limit_set::{classify, RegionLabel};
use kulkarni::projective::normalize;
use kulkarni::sampling::stream_rng;
use kulkarni::verify::{
    check_eigen_product, check_equivariance, check_factorization, check_fibration, check_invariance,
    check_pi_negativity, check_pi_scaling, check_sylvester_oracle, PropertyResult,
};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

const SEED: u64 = 20_240_601;
const CENSUS_TIME_LIMIT: Duration = Duration::from_secs(60);
const MIN_COMPONENT: usize = 50;
const CONNECTED_FRACTION: f64 = 0.99;
const WITNESS_SAMPLES: usize = 1000;
const WITNESS_RADIUS: f64 = 1e-3;
const SYLVESTER_PAIRS: usize = 100_000;
const INVARIANCE_TRIALS: usize = 10_000;
const EQUIVARIANCE_TRIALS: usize = 10_000;
const FACTORIZATION_TRIALS: usize = 10_000;
const FIBRATION_TRIALS: usize = 1000;
const NEGATIVITY_TRIALS: usize = 10_000;

fn report(name: &str, passed: bool, detail: &str) {
    println!("ACCEPTANCE {name}: {} {detail}", if passed { "PASS" } else { "FAIL" });
    assert!(passed, "{name}: {detail}");
}

/// All properties pass and their thresholds are no looser than `limit`
/// (up to the rounding of `multiplier * tol`).
fn report_properties(name: &str, props: &[PropertyResult], limit: f64) {
    let mut passed = true;
    let mut parts = Vec::new();
    for p in props {
        passed &= p.passed && p.threshold <= limit * (1.0 + 1e-12);
        parts.push(format!("{}={}/{} max={:.2e}", p.name, p.failures, p.trials, p.max_residual));
    }
    report(name, passed, &parts.join(" "));
}

fn timed_census(m: usize, n: usize) -> (CensusReport, Duration) {
    let cfg = CensusConfig {
        samples: 2000,
        edge_candidates: 20_000,
        segment_steps: 64,
        seed: SEED,
        tol: DEFAULT_TOL,
        ..CensusConfig::new(m, n)
    };
    let start = Instant::now();
    let r = run_census(&cfg).expect("census runs");
    (r, start.elapsed())
}

fn three_components(n: usize) {
    let (r, elapsed) = timed_census(2, n);
    let passed = r.component_count == 3
        && r.component_sizes.iter().all(|&s| s >= MIN_COMPONENT)
        && r.cross_label_edges == 0
        && r.components.iter().all(|c| c.labels.len() == 1)
        && elapsed <= CENSUS_TIME_LIMIT;
    let detail = format!(
        "components={} sizes={:?} cross_label_edges={} time={:.2}s",
        r.component_count,
        r.component_sizes,
        r.cross_label_edges,
        elapsed.as_secs_f64()
    );
    report(&format!("census_three_components[m=2,n={n}]"), passed, &detail);
}

fn connected(n: usize) {
    let (r, elapsed) = timed_census(3, n);
    let fraction = r.largest_component_fraction();
    let passed = fraction >= CONNECTED_FRACTION && elapsed <= CENSUS_TIME_LIMIT;
    let detail = format!(
        "largest={:.4} of {} omega samples, components={} time={:.2}s",
        fraction,
        r.omega_samples,
        r.component_count,
        elapsed.as_secs_f64()
    );
    report(&format!("census_connected[m=3,n={n}]"), passed, &detail);
}

#[test]
fn census_three_components_2_2() {
    three_components(2);
}

#[test]
fn census_three_components_2_4() {
    three_components(4);
}

#[test]
fn census_connected_3_3() {
    connected(3);
}

#[test]
fn census_connected_3_5() {
    connected(5);
}

#[test]
fn interior_witness() {
    let center =
        normalize(&IndefiniteVector::from_pairs(&[(1.0, 0.0), (0.0, 1.0), (0.0, 0.0), (0.0, 0.0)]).unwrap()).unwrap();
    let mut rng = stream_rng(SEED, 0x77, 0);
    let mut bad = 0;
    let mut worst_f = f64::NEG_INFINITY;
    for _ in 0..WITNESS_SAMPLES {
        // uniform in the ball of R^8 = C^4: Gaussian direction, radius r * u^(1/8)
        let dir: Vec<f64> = (0..8).map(|_| rng.sample(StandardNormal)).collect();
        let len = dir.iter().map(|x| x * x).sum::<f64>().sqrt();
        let radius = WITNESS_RADIUS * rng.gen::<f64>().powf(1.0 / 8.0);
        let coords = center
            .rep()
            .coords()
            .iter()
            .enumerate()
            .map(|(k, c)| c + Complex64::new(dir[2 * k], dir[2 * k + 1]) * (radius / len))
            .collect();
        let z = IndefiniteVector::new(coords).unwrap();
        let f = f_value(&z);
        worst_f = worst_f.max(f);
        if !(f < 0.0 && classify(&z, 3, DEFAULT_TOL).ok() == Some(RegionLabel::LambdaInterior)) {
            bad += 1;
        }
    }
    let detail = format!("{bad}/{WITNESS_SAMPLES} outside LAMBDA_INT, max f={worst_f:.4}");
    report("interior_witness[m=n=3]", bad == 0, &detail);
}

#[test]
fn sylvester_oracle() {
    let mut props = Vec::new();
    for n in [2, 3, 5] {
        props.push(check_sylvester_oracle(n, SYLVESTER_PAIRS, SEED, DEFAULT_TOL));
        props.push(check_eigen_product(n, SYLVESTER_PAIRS, SEED, DEFAULT_TOL));
    }
    report_properties("sylvester_oracle", &props, 1e-10);
}

#[test]
fn invariance() {
    let mut props = Vec::new();
    for m in [2, 3] {
        for n in [m, m + 2] {
            props.extend(check_invariance(m, n, INVARIANCE_TRIALS, SEED, DEFAULT_TOL));
        }
    }
    report_properties("invariance", &props, 1e-8);
}

#[test]
fn equivariance_and_scaling() {
    let mut props = Vec::new();
    for n in [2, 3, 5] {
        props.push(check_equivariance(n, EQUIVARIANCE_TRIALS, SEED, DEFAULT_TOL));
        props.push(check_pi_scaling(n, EQUIVARIANCE_TRIALS, SEED, DEFAULT_TOL));
    }
    report_properties("equivariance_and_scaling", &props, 1e-9);
}

#[test]
fn factorization() {
    let props: Vec<_> = [(2, 3), (2, 4), (3, 5)]
        .iter()
        .map(|&(m, n)| check_factorization(m, n, FACTORIZATION_TRIALS, SEED, DEFAULT_TOL))
        .collect();
    report_properties("factorization", &props, 0.0);
}

#[test]
fn fibration() {
    let mut props = Vec::new();
    for n in [3, 4] {
        props.extend(check_fibration(n, FIBRATION_TRIALS, SEED, DEFAULT_TOL));
    }
    // fiber residuals are held to 1e-8, J-orthogonality to 1e-10
    let fiber_ok = props.iter().filter(|p| p.name.starts_with("fiber")).all(|p| p.threshold <= 1e-8 * (1.0 + 1e-12));
    let orth_ok =
        props.iter().filter(|p| p.name.starts_with("hyp_matrix")).all(|p| p.threshold <= 1e-10 * (1.0 + 1e-12));
    assert!(fiber_ok && orth_ok, "fibration thresholds looser than required");
    report_properties("fibration", &props, 1e-8);
}

#[test]
fn pi_negativity() {
    let props: Vec<_> =
        [2, 3, 5].iter().map(|&n| check_pi_negativity(n, NEGATIVITY_TRIALS, SEED, DEFAULT_TOL)).collect();
    report_properties("pi_negativity", &props, 1e-10);
}
