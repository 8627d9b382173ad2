use std::fs;
use std::io::BufReader;

use kulkarni::census::{run_census, sample_points, CensusConfig};
use kulkarni::fibration::random_isometry;
use kulkarni::hermitian::{IndefiniteVector, DEFAULT_TOL};
use kulkarni::io::{parse_point, point_to_json, read_matrix_csv, write_matrix_csv};
use kulkarni::limit_set::{omega2_component, RegionLabel};
use kulkarni::projective::q_project;
use kulkarni::slice::{render_slice, SliceFormat, SliceSpec};
use kulkarni::verify::verify_suite;

fn slice(m: usize, n: usize, center: IndefiniteVector, resolution: usize, format: SliceFormat) -> SliceSpec {
    let dir_u = IndefiniteVector::basis(n, 3);
    let dir_v = IndefiniteVector::basis(n, 1).scale(num_complex::Complex64::new(0.3, 0.7));
    SliceSpec { m, n, center, dir_u, dir_v, half_width: 1e-2, resolution, output: None, format }
}

#[test]
fn slice_center_is_interior() {
    let center = parse_point("[[1,0],[0,1],[0,0],[0,0]]").unwrap();
    let center = center.scale(num_complex::Complex64::new(1.0 / 2f64.sqrt(), 0.0));
    // odd resolution puts a pixel exactly on the center
    let grid = render_slice(&slice(3, 3, center.clone(), 65, SliceFormat::Ppm), DEFAULT_TOL).unwrap();
    assert_eq!(grid.get(32, 32), Some(RegionLabel::LambdaInterior));
    let grid = render_slice(&slice(3, 3, center, 64, SliceFormat::Ppm), DEFAULT_TOL).unwrap();
    for (r, c) in [(31, 31), (31, 32), (32, 31), (32, 32)] {
        assert_eq!(grid.get(r, c), Some(RegionLabel::LambdaInterior));
    }
}

#[test]
fn slice_csv_has_one_row_per_pixel() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("slice.csv");
    let mut spec = slice(2, 2, IndefiniteVector::basis(2, 3), 8, SliceFormat::Csv);
    spec.half_width = 2.0;
    spec.output = Some(path.clone());
    render_slice(&spec, DEFAULT_TOL).unwrap();
    let text = fs::read_to_string(&path).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 64);
    for row in rows {
        let label = row.rsplit(',').next().unwrap();
        assert!(label == "NONE" || label.parse::<RegionLabel>().is_ok(), "{row}");
    }
}

#[test]
fn slice_to_unwritable_path_fails() {
    let mut spec = slice(2, 2, IndefiniteVector::basis(2, 3), 8, SliceFormat::Ppm);
    spec.output = Some("/nonexistent-dir/slice.ppm".into());
    assert!(render_slice(&spec, DEFAULT_TOL).is_err());
}

#[test]
fn census_labels_match_projected_components() {
    let cfg = CensusConfig { samples: 400, edge_candidates: 4000, ..CensusConfig::new(2, 4) };
    for (p, label) in sample_points(&cfg).unwrap() {
        let q = q_project(p.rep(), 2, DEFAULT_TOL).unwrap();
        if label.is_omega() {
            assert_eq!(omega2_component(&q, DEFAULT_TOL).unwrap(), label);
        }
    }
    let report = run_census(&cfg).unwrap();
    assert_eq!(report.cross_label_edges, 0);
    for c in &report.components {
        assert_eq!(c.labels.len(), 1);
    }
}

#[test]
fn verify_suite_passes_and_is_live() {
    let report = verify_suite(50, 7, DEFAULT_TOL);
    assert!(report.passed, "{}", report.to_table());
    let strict = verify_suite(50, 7, 1e-30);
    assert!(!strict.passed);
}

#[test]
fn verify_suite_is_deterministic() {
    let a = verify_suite(1, 42, DEFAULT_TOL);
    let b = verify_suite(1, 42, DEFAULT_TOL);
    assert_eq!(a, b);
    let json = serde_json::to_string(&a).unwrap();
    assert_eq!(serde_json::from_str::<kulkarni::verify::VerifyReport>(&json).unwrap(), a);
}

#[test]
fn matrix_csv_round_trip() {
    let a = random_isometry(3, 11, 2);
    let mut buf = Vec::new();
    write_matrix_csv(&mut buf, &a).unwrap();
    assert!(String::from_utf8_lossy(&buf).starts_with("n=3\n"));
    let back = read_matrix_csv(BufReader::new(&buf[..])).unwrap();
    assert_eq!(back, a);
}

#[test]
fn point_json_round_trip() {
    let z = parse_point("[[0.1,-2.5e-3],[1e300,0],[-0.0,3]]").unwrap();
    assert_eq!(parse_point(&point_to_json(&z)).unwrap(), z);
}
