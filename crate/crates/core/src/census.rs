//! Monte Carlo census of the connected components of `Omega`.
//!
//! Sample points of `P_C^n`, keep those in `Omega`, probe random pairs with a
//! stepped chord between their canonical representatives and join the pair
//! when the chord provably stays in `Omega` at the sampled resolution. The
//! components of the resulting graph (union-find) estimate the components of
//! `Omega`: labels give a lower bound on their number, edges an upper bound.

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::{conj_dependent, f_value, IndefiniteVector};
use crate::limit_set::{classify, RegionLabel};
use crate::projective::{check_rank, normalize, q_project, ProjectivePoint};
use crate::sampling::{gaussian_vector, stream_rng};
use crate::union_find::UnionFind;

pub const DEFAULT_SEED: u64 = 20_240_601;

const SAMPLE_STREAM: u64 = 1;
const EDGE_STREAM: u64 = 2;

/// Samples within this many tolerances of a label boundary stay out of the graph.
const BOUNDARY_MARGIN: f64 = 10.0;

/// Neighbors kept per node for the local edge candidates.
const NEIGHBORS: usize = 8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusConfig {
    pub m: usize,
    pub n: usize,
    pub samples: usize,
    pub edge_candidates: usize,
    pub segment_steps: usize,
    pub seed: u64,
    pub tol: f64,
}

impl CensusConfig {
    /// The desk-scale budget: 2000 samples, 20000 edge probes, 64 steps.
    pub fn new(m: usize, n: usize) -> Self {
        Self {
            m,
            n,
            samples: 2000,
            edge_candidates: 20_000,
            segment_steps: 64,
            seed: DEFAULT_SEED,
            tol: crate::hermitian::DEFAULT_TOL,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidConfig(format!("n must be at least 2, got {}", self.n)));
        }
        check_rank(self.m, self.n)?;
        if self.samples < 100 {
            return Err(Error::InvalidConfig(format!("samples must be >= 100, got {}", self.samples)));
        }
        if self.segment_steps < 16 {
            return Err(Error::InvalidConfig(format!("segment_steps must be >= 16, got {}", self.segment_steps)));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidConfig(format!("tol must be positive, got {}", self.tol)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentSummary {
    pub size: usize,
    pub labels: BTreeMap<RegionLabel, usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusReport {
    pub config: CensusConfig,
    pub seed: u64,
    pub component_count: usize,
    /// Largest first; sums to `graph_nodes`.
    pub component_sizes: Vec<usize>,
    pub components: Vec<ComponentSummary>,
    /// Labels of every sample, `Lambda` included.
    pub label_histogram: BTreeMap<RegionLabel, usize>,
    pub omega_samples: usize,
    /// `Omega` samples kept after dropping those near a label boundary.
    pub graph_nodes: usize,
    pub near_boundary_excluded: usize,
    pub edges_added: usize,
    /// Probes whose chord passed but whose endpoints carry different labels.
    pub cross_label_edges: usize,
    /// Classifications that hit a vanishing determinant with `f < 0` (m = 2).
    pub degenerate_determinants: usize,
}

impl CensusReport {
    /// Largest component over all Omega samples, near-boundary ones included.
    pub fn largest_component_fraction(&self) -> f64 {
        match self.component_sizes.first() {
            Some(&s) if self.omega_samples > 0 => s as f64 / self.omega_samples as f64,
            _ => 0.0,
        }
    }
}

struct Sample {
    point: ProjectivePoint,
    label: Option<RegionLabel>,
}

fn draw_samples(cfg: &CensusConfig) -> Vec<Sample> {
    (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(cfg.seed, SAMPLE_STREAM, i as u64);
            let z = gaussian_vector(cfg.n, &mut rng);
            let point = normalize(&z).expect("gaussian vector is nonzero");
            let label = classify(point.rep(), cfg.m, cfg.tol).ok();
            Sample { point, label }
        })
        .collect()
}

/// Draws `cfg.samples` Gaussian points of `P_C^n` and labels them with
/// [`classify`] at rank `cfg.m`. Points whose classification fails
/// (degenerate determinant) are dropped.
pub fn sample_points(cfg: &CensusConfig) -> Result<Vec<(ProjectivePoint, RegionLabel)>> {
    cfg.validate()?;
    Ok(draw_samples(cfg).into_iter().filter_map(|s| s.label.map(|l| (s.point, l))).collect())
}

/// The vector whose invariants decide the label at rank `m`.
fn deciding_vector(z: &IndefiniteVector, m: usize, tol: f64) -> Option<IndefiniteVector> {
    if m == z.n() {
        Some(z.clone())
    } else {
        q_project(z, m, tol).ok()
    }
}

fn near_boundary(z: &IndefiniteVector, m: usize, tol: f64) -> bool {
    let Some(q) = deciding_vector(z, m, tol) else {
        return true;
    };
    let norm_sqr = q.norm_sqr();
    if conj_dependent(&q, tol) {
        q.self_inner().abs() <= BOUNDARY_MARGIN * tol * norm_sqr
    } else {
        f_value(&q).abs() <= BOUNDARY_MARGIN * tol * norm_sqr * norm_sqr
    }
}

/// Strict sign of `f` at rank `m`, 0 inside the tolerance band.
fn f_sign(z: &IndefiniteVector, m: usize, tol: f64) -> i8 {
    let Some(q) = deciding_vector(z, m, tol) else {
        return 0;
    };
    let f = f_value(&q);
    let norm_sqr = q.norm_sqr();
    if f.abs() <= tol * norm_sqr * norm_sqr {
        0
    } else if f > 0.0 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Probe {
    Joined,
    Blocked,
    Degenerate,
}

/// Maximum number of bisections between two steps with different labels.
const REFINE_DEPTH: usize = 48;

/// Label and strict `f` sign at one point of a chord, or the probe outcome
/// if the point already decides it.
fn probe_point(z: &IndefiniteVector, m: usize, tol: f64, floor: f64) -> Result<(RegionLabel, i8), Probe> {
    if z.norm_sqr() <= floor {
        return Err(Probe::Blocked);
    }
    match classify(z, m, tol) {
        Ok(label) if label.is_omega() => Ok((label, f_sign(z, m, tol))),
        Ok(_) => Err(Probe::Blocked),
        Err(Error::DegenerateDeterminant) => Err(Probe::Degenerate),
        Err(_) => Err(Probe::Blocked),
    }
}

/// Strictly opposite signs of `f` at two points: `f` vanishes in between.
fn sign_flip(a: i8, b: i8) -> bool {
    a != 0 && b != 0 && a != b
}

fn pivot(z: &IndefiniteVector) -> usize {
    let mut best = 0;
    for (k, c) in z.coords().iter().enumerate() {
        if c.norm() > z[best].norm() {
            best = k;
        }
    }
    best
}

/// Rescales `a` and `b` into one affine chart `z_p = 1`, with `p` the pivot
/// of `a` or of `b`, whichever keeps both representatives better scaled.
fn common_chart(a: &IndefiniteVector, b: &IndefiniteVector) -> (IndefiniteVector, IndefiniteVector) {
    let weight = |p: usize| {
        let ra = a[p].norm() / a.coords().iter().map(|c| c.norm()).fold(0.0, f64::max);
        let rb = b[p].norm() / b.coords().iter().map(|c| c.norm()).fold(0.0, f64::max);
        ra.min(rb)
    };
    let (pa, pb) = (pivot(a), pivot(b));
    let p = if weight(pb) > weight(pa) { pb } else { pa };
    (a.scale(a[p].inv()), b.scale(b[p].inv()))
}

/// Walks the chord `a + s (b - a)`, `s = k / steps`, in a chart shared by
/// both endpoints. Blocked when a step
/// leaves `Omega`, or when `f` takes strictly opposite signs at consecutive
/// steps: `f` is continuous along the chord, so it vanishes in between and
/// the chord meets `Lambda` there. Consecutive steps with different labels
/// are bisected until the crossing shows up the same way.
fn probe_chord(a: &IndefiniteVector, b: &IndefiniteVector, m: usize, steps: usize, tol: f64) -> Probe {
    let (a, b) = common_chart(a, b);
    let (a, b) = (&a, &b);
    let diff = b.add_scaled(-1.0, a).expect("same dimension");
    let floor = tol * (a.norm_sqr() + b.norm_sqr());
    let at = |s: f64| probe_point(&a.add_scaled(s, &diff).expect("same dimension"), m, tol, floor);
    let mut prev: Option<(f64, RegionLabel, i8)> = None;
    let mut last_sign = 0i8;
    for k in 0..=steps {
        let s = k as f64 / steps as f64;
        let (label, sign) = match at(s) {
            Ok(v) => v,
            Err(p) => return p,
        };
        if sign_flip(last_sign, sign) {
            return Probe::Blocked;
        }
        if sign != 0 {
            last_sign = sign;
        }
        if let Some((s0, l0, g0)) = prev {
            if l0 != label {
                if let Some(p) = refine(&at, (s0, l0, g0), (s, label, sign), REFINE_DEPTH) {
                    return p;
                }
            }
        }
        prev = Some((s, label, sign));
    }
    Probe::Joined
}

type ChordPoint = (f64, RegionLabel, i8);

fn refine<F>(at: &F, lo: ChordPoint, hi: ChordPoint, depth: usize) -> Option<Probe>
where
    F: Fn(f64) -> Result<(RegionLabel, i8), Probe>,
{
    if depth == 0 {
        return None;
    }
    let s = 0.5 * (lo.0 + hi.0);
    let (label, sign) = match at(s) {
        Ok(v) => v,
        Err(p) => return Some(p),
    };
    if sign_flip(lo.2, sign) || sign_flip(sign, hi.2) {
        return Some(Probe::Blocked);
    }
    let mid = (s, label, sign);
    if lo.1 != label {
        if let Some(p) = refine(at, lo, mid, depth - 1) {
            return Some(p);
        }
    }
    if label != hi.1 {
        return refine(at, mid, hi, depth - 1);
    }
    None
}

/// `1 - |(z, w)|^2 / (|z|^2 |w|^2)` with the positive definite product:
/// the squared chordal distance in `P_C^n`.
fn chordal_sqr(z: &IndefiniteVector, w: &IndefiniteVector) -> f64 {
    let dot: num_complex::Complex64 = z.coords().iter().zip(w.coords()).map(|(a, b)| a * b.conj()).sum();
    1.0 - dot.norm_sqr() / (z.norm_sqr() * w.norm_sqr())
}

/// The `k` nearest other nodes with the same label, ties broken by index.
fn nearest_neighbors(nodes: &[(&ProjectivePoint, RegionLabel)], k: usize) -> Vec<Vec<usize>> {
    (0..nodes.len())
        .into_par_iter()
        .map(|i| {
            let mut d: Vec<(f64, usize)> = (0..nodes.len())
                .filter(|&j| j != i && nodes[j].1 == nodes[i].1)
                .map(|j| (chordal_sqr(nodes[i].0.rep(), nodes[j].0.rep()), j))
                .collect();
            let k = k.min(d.len());
            if k == 0 {
                return Vec::new();
            }
            d.select_nth_unstable_by(k - 1, |a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            d.truncate(k);
            d.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            d.into_iter().map(|(_, j)| j).collect()
        })
        .collect()
}

pub fn run_census(cfg: &CensusConfig) -> Result<CensusReport> {
    cfg.validate()?;
    let samples = draw_samples(cfg);

    let mut label_histogram = BTreeMap::new();
    let mut degenerate_determinants = 0;
    let mut omega_samples = 0;
    let mut nodes: Vec<(&ProjectivePoint, RegionLabel)> = Vec::new();
    let mut near_boundary_excluded = 0;
    for s in &samples {
        let Some(label) = s.label else {
            degenerate_determinants += 1;
            continue;
        };
        *label_histogram.entry(label).or_insert(0) += 1;
        if !label.is_omega() {
            continue;
        }
        omega_samples += 1;
        if near_boundary(s.point.rep(), cfg.m, cfg.tol) {
            near_boundary_excluded += 1;
        } else {
            nodes.push((&s.point, label));
        }
    }
    if nodes.len() < 2 {
        return Err(Error::TooFewOmegaSamples(nodes.len()));
    }

    let count = nodes.len();
    let neighbors = nearest_neighbors(&nodes, NEIGHBORS);
    let probes: Vec<(usize, usize, Probe)> = (0..cfg.edge_candidates)
        .into_par_iter()
        .map(|c| {
            let mut rng = stream_rng(cfg.seed, EDGE_STREAM, c as u64);
            let local = c % 2 == 0 && !neighbors[(c / 2) % count].is_empty();
            let (i, j) = if local {
                let i = (c / 2) % count;
                (i, neighbors[i][rng.gen_range(0..neighbors[i].len())])
            } else {
                let i = rng.gen_range(0..count);
                let j = rng.gen_range(0..count - 1);
                (i, if j >= i { j + 1 } else { j })
            };
            let probe = probe_chord(nodes[i].0.rep(), nodes[j].0.rep(), cfg.m, cfg.segment_steps, cfg.tol);
            (i, j, probe)
        })
        .collect();

    let mut uf = UnionFind::new(count);
    let mut edges_added = 0;
    let mut cross_label_edges = 0;
    for (i, j, probe) in probes {
        match probe {
            Probe::Joined if nodes[i].1 != nodes[j].1 => cross_label_edges += 1,
            Probe::Joined => {
                uf.union(i, j);
                edges_added += 1;
            }
            Probe::Degenerate => degenerate_determinants += 1,
            Probe::Blocked => {}
        }
    }

    let components: Vec<ComponentSummary> = uf
        .groups()
        .into_iter()
        .map(|members| {
            let mut labels = BTreeMap::new();
            for &x in &members {
                *labels.entry(nodes[x].1).or_insert(0) += 1;
            }
            ComponentSummary { size: members.len(), labels }
        })
        .collect();

    Ok(CensusReport {
        config: cfg.clone(),
        seed: cfg.seed,
        component_count: components.len(),
        component_sizes: components.iter().map(|c| c.size).collect(),
        components,
        label_histogram,
        omega_samples,
        graph_nodes: count,
        near_boundary_excluded,
        edges_added,
        cross_label_edges,
        degenerate_determinants,
    })
}
