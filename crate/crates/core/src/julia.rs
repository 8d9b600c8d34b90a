//! Approximations of the Julia set `J_p` and the filled Julia set `K_p`.
//!
//! `J_p` is sampled by inverse iteration: starting from a repelling fixed
//! point, repeatedly replace `z` by a uniformly chosen root of `p(·) - z`.
//! `K_p` is rasterized by escape time with the radius from
//! [`Polynomial::escape_radius`], and [`holo_hull_fill`] fills the bounded
//! complementary components of any raster.

use std::collections::VecDeque;
use std::io::Write;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::roots::{repelling_fixed_point, RootSolver, DEFAULT_TOL};
use crate::scalar::Real;

/// Pullback steps discarded before recording.
pub const BURN_IN: usize = 64;
/// Alternative branches tried when the solver fails mid-orbit.
pub const MAX_BRANCH_RETRIES: usize = 5;
/// Grid margin around the escape disk, as a fraction of `R`.
pub const GRID_MARGIN: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum CloudLabel {
    JuliaSample,
    Generic,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud<T> {
    pub points: Vec<Complex<T>>,
    pub label: CloudLabel,
}

impl<T: Real> PointCloud<T> {
    pub fn new(points: Vec<Complex<T>>, label: CloudLabel) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidArgument("point cloud must be nonempty".into()));
        }
        Ok(Self { points, label })
    }

    pub fn generic(points: Vec<Complex<T>>) -> Result<Self> {
        Self::new(points, CloudLabel::Generic)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        Self {
            points: self.points.iter().map(|&z| f(z)).collect(),
            label: self.label,
        }
    }
}

/// Settings for [`sample_julia_with`].
#[derive(Clone, Copy, Debug)]
pub struct InverseIteration<T> {
    pub burn_in: usize,
    pub tol: T,
    pub max_retries: usize,
}

impl<T: Real> Default for InverseIteration<T> {
    fn default() -> Self {
        Self {
            burn_in: BURN_IN,
            tol: T::lit(DEFAULT_TOL),
            max_retries: MAX_BRANCH_RETRIES,
        }
    }
}

/// `n` consecutive points of a random backward orbit of `p`.
pub fn sample_julia<T: Real>(p: &Polynomial<T>, n: usize, seed: u64) -> Result<PointCloud<T>> {
    sample_julia_with(p, n, seed, &InverseIteration::default())
}

pub fn sample_julia_with<T: Real>(
    p: &Polynomial<T>,
    n: usize,
    seed: u64,
    opts: &InverseIteration<T>,
) -> Result<PointCloud<T>> {
    p.require_degree(2)?;
    if n < 100 {
        return Err(Error::InvalidArgument(format!(
            "need at least 100 Julia samples, got {n}"
        )));
    }
    let (start, burn_in) = match repelling_fixed_point(p, opts.tol) {
        Ok(z) => (z, opts.burn_in),
        Err(_) => (Complex::new(T::one(), T::zero()), 2 * opts.burn_in),
    };

    let d = p.degree();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut solver = RootSolver::new(opts.tol);
    let mut fiber: Vec<Complex<T>> = Vec::with_capacity(d);
    let mut prev_fiber: Vec<Complex<T>> = Vec::with_capacity(d);
    let mut points = Vec::with_capacity(n);
    let mut z = start;

    for step in 0..burn_in + n {
        match solver.solve_shifted(p, z) {
            Ok(roots) => {
                fiber.clear();
                fiber.extend_from_slice(roots);
            }
            Err(first) => {
                // Back up one step and take a different branch.
                if prev_fiber.is_empty() {
                    return Err(Error::OrbitAborted {
                        step,
                        diagnostic: first.to_string(),
                    });
                }
                let mut untried: Vec<Complex<T>> =
                    prev_fiber.iter().copied().filter(|&w| w != z).collect();
                let mut recovered = false;
                let mut last = first.to_string();
                for _ in 0..opts.max_retries {
                    if untried.is_empty() {
                        break;
                    }
                    let alt = untried.swap_remove(rng.gen_range(0..untried.len()));
                    match solver.solve_shifted(p, alt) {
                        Ok(roots) => {
                            fiber.clear();
                            fiber.extend_from_slice(roots);
                            if let Some(slot) = points.last_mut() {
                                if step > burn_in {
                                    *slot = alt;
                                }
                            }
                            recovered = true;
                            break;
                        }
                        Err(e) => last = e.to_string(),
                    }
                }
                if !recovered {
                    return Err(Error::OrbitAborted {
                        step,
                        diagnostic: last,
                    });
                }
            }
        }
        z = fiber[rng.gen_range(0..d)];
        std::mem::swap(&mut prev_fiber, &mut fiber);
        if step >= burn_in {
            points.push(z);
        }
    }
    PointCloud::new(points, CloudLabel::JuliaSample)
}

/// Boolean raster over the square `[-1.05 R, 1.05 R]²`.
///
/// `cells[row * width + col]`, with row 0 at the smallest imaginary part.
/// A cell is `true` when the orbit of its center stays in `D_R` for
/// `max_iter` steps.
#[derive(Clone, Debug, PartialEq)]
pub struct EscapeGrid<T> {
    pub origin_re: T,
    pub origin_im: T,
    pub cell_size: T,
    pub width: usize,
    pub height: usize,
    pub cells: Vec<bool>,
    pub radius: T,
    pub max_iter: usize,
}

impl<T: Real> EscapeGrid<T> {
    /// Same geometry, all cells false.
    pub fn blank_like(&self) -> Self {
        Self {
            cells: vec![false; self.width * self.height],
            ..self.clone()
        }
    }

    #[inline]
    pub fn center(&self, col: usize, row: usize) -> Complex<T> {
        let half = T::lit(0.5);
        Complex::new(
            self.origin_re + (T::from_usize(col).unwrap() + half) * self.cell_size,
            self.origin_im + (T::from_usize(row).unwrap() + half) * self.cell_size,
        )
    }

    #[inline]
    pub fn get(&self, col: usize, row: usize) -> bool {
        self.cells[row * self.width + col]
    }

    /// Cell containing `z`, if inside the grid.
    pub fn locate(&self, z: Complex<T>) -> Option<(usize, usize)> {
        let fx = ((z.re - self.origin_re) / self.cell_size).floor();
        let fy = ((z.im - self.origin_im) / self.cell_size).floor();
        if !(fx >= T::zero() && fy >= T::zero()) {
            return None;
        }
        let (col, row) = (fx.to_usize()?, fy.to_usize()?);
        (col < self.width && row < self.height).then_some((col, row))
    }

    pub fn true_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    pub fn true_area(&self) -> T {
        T::from_usize(self.true_count()).unwrap() * self.cell_size * self.cell_size
    }

    pub fn cell_diagonal(&self) -> T {
        self.cell_size * T::SQRT_2()
    }

    pub fn true_centers(&self) -> Vec<Complex<T>> {
        let mut out = Vec::new();
        for row in 0..self.height {
            for col in 0..self.width {
                if self.get(col, row) {
                    out.push(self.center(col, row));
                }
            }
        }
        out
    }

    /// Marks every cell that contains at least one of `points`.
    pub fn rasterize(&self, points: &[Complex<T>]) -> Self {
        let mut out = self.blank_like();
        for &z in points {
            if let Some((col, row)) = self.locate(z) {
                out.cells[row * self.width + col] = true;
            }
        }
        out
    }

    /// Binary PGM (P5): 255 for bounded cells, 0 for escaping ones, top row
    /// first. The comment line records `R`, `maxIter` and the polynomial.
    pub fn to_pgm(&self, polynomial: &str) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.cells.len() + 128);
        write!(
            out,
            "P5\n# R={} maxIter={} poly={}\n{} {}\n255\n",
            self.radius.as_f64(),
            self.max_iter,
            polynomial.replace('\n', " "),
            self.width,
            self.height
        )
        .expect("writing to a Vec");
        for row in (0..self.height).rev() {
            out.extend(
                self.cells[row * self.width..(row + 1) * self.width]
                    .iter()
                    .map(|&c| if c { 255u8 } else { 0u8 }),
            );
        }
        out
    }
}

/// Number of steps after which the orbit of `z` leaves `D_R`, or `None` if it
/// stays for `max_iter` steps.
#[inline]
pub fn escape_time<T: Real>(p: &Polynomial<T>, z: Complex<T>, radius: T, max_iter: usize) -> Option<usize> {
    let r2 = radius * radius;
    let mut z = z;
    if z.norm_sqr() > r2 {
        return Some(0);
    }
    for k in 1..=max_iter {
        z = p.eval(z);
        if !(z.norm_sqr() <= r2) {
            return Some(k);
        }
    }
    None
}

pub fn escape_grid<T: Real>(p: &Polynomial<T>, resolution: usize, max_iter: usize) -> Result<EscapeGrid<T>> {
    p.require_degree(2)?;
    if resolution < 64 {
        return Err(Error::InvalidArgument(format!(
            "grid resolution must be >= 64, got {resolution}"
        )));
    }
    if max_iter < 50 {
        return Err(Error::InvalidArgument(format!(
            "max_iter must be >= 50, got {max_iter}"
        )));
    }
    let radius = p.escape_radius();
    let half = radius * (T::one() + T::lit(GRID_MARGIN));
    let mut grid = EscapeGrid {
        origin_re: -half,
        origin_im: -half,
        cell_size: (half + half) / T::from_usize(resolution).unwrap(),
        width: resolution,
        height: resolution,
        cells: vec![false; resolution * resolution],
        radius,
        max_iter,
    };
    let template = grid.clone();
    grid.cells
        .par_chunks_mut(resolution)
        .enumerate()
        .for_each(|(row, cells)| {
            for (col, cell) in cells.iter_mut().enumerate() {
                let z = template.center(col, row);
                *cell = escape_time(p, z, radius, max_iter).is_none();
            }
        });
    Ok(grid)
}

/// Adds to the raster every cell not 4-connected to the grid border through
/// false cells. Bounded holes of the true set are thereby filled.
pub fn holo_hull_fill<T: Real>(grid: &EscapeGrid<T>) -> EscapeGrid<T> {
    let (w, h) = (grid.width, grid.height);
    let mut reached = vec![false; w * h];
    let mut queue = VecDeque::new();
    let seed = |col: usize, row: usize, reached: &mut Vec<bool>, queue: &mut VecDeque<usize>| {
        let i = row * w + col;
        if !grid.cells[i] && !reached[i] {
            reached[i] = true;
            queue.push_back(i);
        }
    };
    for col in 0..w {
        seed(col, 0, &mut reached, &mut queue);
        seed(col, h - 1, &mut reached, &mut queue);
    }
    for row in 0..h {
        seed(0, row, &mut reached, &mut queue);
        seed(w - 1, row, &mut reached, &mut queue);
    }
    while let Some(i) = queue.pop_front() {
        let (col, row) = (i % w, i / w);
        let mut visit = |j: usize| {
            if !grid.cells[j] && !reached[j] {
                reached[j] = true;
                queue.push_back(j);
            }
        };
        if col > 0 {
            visit(i - 1);
        }
        if col + 1 < w {
            visit(i + 1);
        }
        if row > 0 {
            visit(i - w);
        }
        if row + 1 < h {
            visit(i + w);
        }
    }
    let mut out = grid.clone();
    for (cell, &r) in out.cells.iter_mut().zip(&reached) {
        *cell = *cell || !r;
    }
    out
}

/// Distance estimate `|z_n| log|z_n| / |(p^n)'(z)|` (Green's function over
/// its gradient) for a point whose orbit escapes within `max_iter` steps;
/// `None` otherwise. The true distance to `K_p` lies within a factor two of
/// the estimate for points close to `K_p`.
pub fn distance_estimate<T: Real>(p: &Polynomial<T>, z: Complex<T>, max_iter: usize) -> Option<T> {
    let radius = p.escape_radius();
    let bail = radius.max(T::one()) * T::lit(1e8);
    let d = T::from_usize(p.degree()).unwrap();
    let log_lead = p.leading().norm().ln() / (d - T::one());
    let mut z = z;
    let mut dz = Complex::new(T::one(), T::zero());
    let mut escaped = false;
    for k in 0..max_iter + 100 {
        let m = z.norm();
        if m > radius {
            escaped = true;
        }
        if m > bail {
            break;
        }
        if k >= max_iter && !escaped {
            return None;
        }
        let (pz, dpz) = p.eval_with_derivative(z);
        dz = dpz * dz;
        z = pz;
    }
    if !escaped {
        return None;
    }
    let m = z.norm();
    if !m.is_finite() || dz.norm() == T::zero() {
        return Some(T::zero());
    }
    let g = (m.ln() + log_lead).max(T::zero());
    Some(m * g / dz.norm())
}

/// Grid-based oracle for `J_p`: centers of bounded cells that touch an
/// escaping cell, together with escaping cells whose distance estimate is at
/// most `1.5` cells.
pub fn boundary_cloud<T: Real>(p: &Polynomial<T>, grid: &EscapeGrid<T>) -> Result<PointCloud<T>> {
    let (w, h) = (grid.width, grid.height);
    let near = grid.cell_size * T::lit(1.5);
    let rows: Vec<Vec<Complex<T>>> = (0..h)
        .into_par_iter()
        .map(|row| {
            let mut out = Vec::new();
            for col in 0..w {
                let z = grid.center(col, row);
                if grid.get(col, row) {
                    let edge = col == 0 || row == 0 || col + 1 == w || row + 1 == h;
                    if edge
                        || !grid.get(col - 1, row)
                        || !grid.get(col + 1, row)
                        || !grid.get(col, row - 1)
                        || !grid.get(col, row + 1)
                    {
                        out.push(z);
                    }
                } else if let Some(est) = distance_estimate(p, z, grid.max_iter) {
                    if est <= near {
                        out.push(z);
                    }
                }
            }
            out
        })
        .collect();
    PointCloud::generic(rows.into_iter().flatten().collect())
}

/// Centers of bounded cells plus centers of escaping cells whose distance
/// estimate is at most `reach`.
pub fn near_filled_points<T: Real>(p: &Polynomial<T>, grid: &EscapeGrid<T>, reach: T) -> Vec<Complex<T>> {
    let rows: Vec<Vec<Complex<T>>> = (0..grid.height)
        .into_par_iter()
        .map(|row| {
            (0..grid.width)
                .filter_map(|col| {
                    let z = grid.center(col, row);
                    if grid.get(col, row) {
                        return Some(z);
                    }
                    distance_estimate(p, z, grid.max_iter)
                        .filter(|&est| est <= reach)
                        .map(|_| z)
                })
                .collect()
        })
        .collect();
    rows.into_iter().flatten().collect()
}
