//! Rasterizes a real 2-dimensional slice `center + a u + b v` of `C^{n+1}`
//! into region labels, written as CSV or binary PPM.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hermitian::{check_dims, IndefiniteVector};
use crate::limit_set::{classify, RegionLabel};
use crate::projective::check_rank;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SliceFormat {
    Ppm,
    Csv,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SliceSpec {
    pub m: usize,
    pub n: usize,
    pub center: IndefiniteVector,
    pub dir_u: IndefiniteVector,
    pub dir_v: IndefiniteVector,
    pub half_width: f64,
    pub resolution: usize,
    pub output: Option<PathBuf>,
    pub format: SliceFormat,
}

impl SliceSpec {
    pub fn validate(&self) -> Result<()> {
        check_rank(self.m, self.n)?;
        for z in [&self.center, &self.dir_u, &self.dir_v] {
            if z.n() != self.n {
                return Err(Error::DimensionMismatch { left: self.n, right: z.n() });
            }
        }
        if self.resolution < 8 {
            return Err(Error::InvalidConfig(format!("resolution must be >= 8, got {}", self.resolution)));
        }
        if !(self.half_width > 0.0 && self.half_width.is_finite()) {
            return Err(Error::InvalidConfig(format!("half width must be positive, got {}", self.half_width)));
        }
        if self.dir_u.is_zero() || self.dir_v.is_zero() || real_proportional(&self.dir_u, &self.dir_v)? {
            return Err(Error::DegenerateDirections);
        }
        Ok(())
    }

    /// Plane coordinate of pixel index `i`; the grid includes both edges.
    pub fn coordinate(&self, i: usize) -> f64 {
        -self.half_width + 2.0 * self.half_width * i as f64 / (self.resolution - 1) as f64
    }

    /// The vector sampled at pixel `(row, col)`: `a` runs along columns, `b` down rows.
    pub fn pixel_vector(&self, row: usize, col: usize) -> IndefiniteVector {
        let (a, b) = (self.coordinate(col), -self.coordinate(row));
        self.center.add_scaled(a, &self.dir_u).and_then(|z| z.add_scaled(b, &self.dir_v)).expect("dimensions validated")
    }
}

/// `u` and `v` span a real line in `C^{n+1}` (the slice would collapse).
fn real_proportional(u: &IndefiniteVector, v: &IndefiniteVector) -> Result<bool> {
    check_dims(u, v)?;
    let scale = u.norm() * v.norm();
    // u, v as real vectors of R^{2n+2}; test their 2x2 Gram determinant.
    let ru: Vec<f64> = u.coords().iter().flat_map(|c| [c.re, c.im]).collect();
    let rv: Vec<f64> = v.coords().iter().flat_map(|c| [c.re, c.im]).collect();
    let uu: f64 = ru.iter().map(|x| x * x).sum();
    let vv: f64 = rv.iter().map(|x| x * x).sum();
    let uv: f64 = ru.iter().zip(&rv).map(|(x, y)| x * y).sum();
    Ok((uu * vv - uv * uv).abs() <= 1e-12 * scale * scale)
}

/// A rendered slice; `None` marks a pixel whose vector was (numerically) zero.
#[derive(Clone, Debug, PartialEq)]
pub struct SliceGrid {
    pub resolution: usize,
    pub labels: Vec<Option<RegionLabel>>,
}

impl SliceGrid {
    pub fn get(&self, row: usize, col: usize) -> Option<RegionLabel> {
        self.labels[row * self.resolution + col]
    }
}

pub fn classify_pixel(spec: &SliceSpec, row: usize, col: usize, tol: f64) -> Option<RegionLabel> {
    let z = spec.pixel_vector(row, col);
    let scale =
        spec.center.norm_sqr() + spec.half_width * spec.half_width * (spec.dir_u.norm_sqr() + spec.dir_v.norm_sqr());
    if z.norm_sqr() <= 1e-24 * scale {
        return None;
    }
    classify(&z, spec.m, tol).ok()
}

/// Classifies every pixel, writes the artifact if an output path is set, and
/// returns the grid.
pub fn render_slice(spec: &SliceSpec, tol: f64) -> Result<SliceGrid> {
    spec.validate()?;
    let res = spec.resolution;
    let labels = (0..res * res).into_par_iter().map(|k| classify_pixel(spec, k / res, k % res, tol)).collect();
    let grid = SliceGrid { resolution: res, labels };
    if let Some(path) = &spec.output {
        let mut out = BufWriter::new(File::create(path)?);
        match spec.format {
            SliceFormat::Csv => write_csv(&mut out, spec, &grid)?,
            SliceFormat::Ppm => write_ppm(&mut out, &grid)?,
        }
        out.flush()?;
    }
    Ok(grid)
}

/// One row per pixel: `row,col,a,b,LABEL` (`NONE` for skipped pixels).
pub fn write_csv<W: Write>(mut out: W, spec: &SliceSpec, grid: &SliceGrid) -> Result<()> {
    let res = grid.resolution;
    for row in 0..res {
        for col in 0..res {
            let label = grid.get(row, col).map_or("NONE", RegionLabel::as_str);
            writeln!(out, "{},{},{:?},{:?},{}", row, col, spec.coordinate(col), -spec.coordinate(row), label)?;
        }
    }
    Ok(())
}

pub fn palette(label: Option<RegionLabel>) -> [u8; 3] {
    match label {
        Some(RegionLabel::Lambda0) => [0, 0, 0],
        Some(RegionLabel::LambdaRealExterior) => [139, 0, 0],
        Some(RegionLabel::LambdaParabolic) => [255, 0, 0],
        Some(RegionLabel::LambdaInterior) => [255, 165, 0],
        Some(RegionLabel::OmegaZero) => [255, 255, 255],
        Some(RegionLabel::OmegaMinus) => [0, 0, 255],
        Some(RegionLabel::OmegaPlus) => [0, 255, 0],
        Some(RegionLabel::OmegaSingle) => [255, 255, 255],
        None => [128, 128, 128],
    }
}

/// Binary P6, max value 255.
pub fn write_ppm<W: Write>(mut out: W, grid: &SliceGrid) -> Result<()> {
    let res = grid.resolution;
    write!(out, "P6\n{} {}\n255\n", res, res)?;
    let bytes: Vec<u8> = grid.labels.iter().flat_map(|&l| palette(l)).collect();
    out.write_all(&bytes)?;
    Ok(())
}
