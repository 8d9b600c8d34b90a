//! Simultaneous root finding: Aberth–Ehrlich iteration with a Durand–Kerner
//! fallback.
//!
//! Every root is found at once, so there is no deflation error. Start points
//! are equidistributed on the Cauchy-bound circle and rotated by a fixed
//! angle, which makes the solver fully deterministic.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{horner, horner_with_derivative, Polynomial};
use crate::scalar::Real;

pub const DEFAULT_MAX_ITER: usize = 200;
pub const DEFAULT_TOL: f64 = 1e-10;

/// Rotation applied to the initial circle of guesses, in radians.
const START_ROTATION: f64 = 0.4;

/// Minimum multiplier excess for a fixed point to count as repelling.
const REPELLING_MARGIN: f64 = 1e-9;

/// Roots of a polynomial, repeated according to multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSet<T> {
    pub roots: Vec<Complex<T>>,
    /// `|p(root_i)|`.
    pub residuals: Vec<T>,
}

impl<T: Real> RootSet<T> {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn max_residual(&self) -> T {
        self.residuals.iter().copied().fold(T::zero(), T::max)
    }
}

/// Reusable solver state. Holding one across calls avoids reallocating
/// scratch buffers in hot loops such as inverse iteration.
#[derive(Clone, Debug)]
pub struct RootSolver<T> {
    /// Relative residual bound used to accept a root.
    pub tol: T,
    pub max_iter: usize,
    coeffs: Vec<Complex<T>>,
    roots: Vec<Complex<T>>,
    done: Vec<bool>,
}

impl<T: Real> RootSolver<T> {
    pub fn new(tol: T) -> Self {
        Self {
            tol,
            max_iter: DEFAULT_MAX_ITER,
            coeffs: Vec::new(),
            roots: Vec::new(),
            done: Vec::new(),
        }
    }

    /// All roots of `p`.
    pub fn solve(&mut self, p: &Polynomial<T>) -> Result<RootSet<T>> {
        self.load(p, Complex::zero());
        self.run(p.is_real())?;
        Ok(self.root_set())
    }

    /// All roots of `p(z) - w`.
    pub fn solve_shifted(&mut self, p: &Polynomial<T>, w: Complex<T>) -> Result<&[Complex<T>]> {
        self.load(p, w);
        self.run(p.is_real() && w.im == T::zero())?;
        Ok(&self.roots)
    }

    fn load(&mut self, p: &Polynomial<T>, w: Complex<T>) {
        self.coeffs.clear();
        self.coeffs.extend_from_slice(p.coeffs());
        self.coeffs[0] = self.coeffs[0] - w;
    }

    fn root_set(&self) -> RootSet<T> {
        let residuals = self
            .roots
            .iter()
            .map(|&z| horner(&self.coeffs, z).norm())
            .collect();
        RootSet {
            roots: self.roots.clone(),
            residuals,
        }
    }

    fn run(&mut self, real_problem: bool) -> Result<()> {
        let d = self.coeffs.len() - 1;
        if d == 0 {
            return Err(Error::DegreeTooLow {
                degree: 0,
                required: 1,
            });
        }
        self.roots.clear();
        if d == 1 {
            self.roots.push(-self.coeffs[0] / self.coeffs[1]);
            return Ok(());
        }

        self.initial_guesses();
        let aberth_iters = self.iterate(Step::Aberth);
        if !self.accepted() {
            // Aberth stalled; continue from its iterates with Durand–Kerner.
            let dk_iters = self.iterate(Step::DurandKerner);
            if !self.accepted() {
                let residual = self
                    .roots
                    .iter()
                    .map(|&z| horner(&self.coeffs, z).norm().as_f64())
                    .fold(0.0, f64::max);
                return Err(Error::NoConvergence {
                    iterations: aberth_iters + dk_iters,
                    residual,
                    best: self
                        .roots
                        .iter()
                        .map(|z| Complex::new(z.re.as_f64(), z.im.as_f64()))
                        .collect(),
                });
            }
        }
        if real_problem {
            self.snap_real();
        }
        Ok(())
    }

    fn initial_guesses(&mut self) {
        let d = self.coeffs.len() - 1;
        let lead = self.coeffs[d].norm();
        let bound = self.coeffs[..d]
            .iter()
            .map(|c| c.norm() / lead)
            .fold(T::zero(), T::max);
        let radius = T::one() + bound;
        let tau = T::TAU();
        let rot = T::lit(START_ROTATION);
        let df = T::from_usize(d).expect("degree fits scalar");
        for k in 0..d {
            let theta = tau * T::from_usize(k).expect("index fits scalar") / df + rot;
            self.roots.push(Complex::from_polar(radius, theta));
        }
        self.done.clear();
        self.done.resize(d, false);
    }

    /// Runs Gauss–Seidel sweeps until every root has stopped moving or its
    /// residual is at rounding level. Returns the number of sweeps.
    fn iterate(&mut self, step: Step) -> usize {
        let eps = T::epsilon();
        let floor = eps * eps * self.scale();
        let lead = *self.coeffs.last().expect("nonempty");
        self.done.iter_mut().for_each(|f| *f = false);
        for sweep in 1..=self.max_iter {
            let mut all_done = true;
            for k in 0..self.roots.len() {
                if self.done[k] {
                    continue;
                }
                let z = self.roots[k];
                let (pz, dpz) = horner_with_derivative(&self.coeffs, z);
                let noise = T::lit(8.0) * eps * abs_eval(&self.coeffs, z.norm());
                if pz.norm() <= noise.max(floor) {
                    self.done[k] = true;
                    continue;
                }
                let delta = match step {
                    Step::Aberth => {
                        let mut s = Complex::zero();
                        for (j, &zj) in self.roots.iter().enumerate() {
                            if j != k {
                                s = s + (z - zj).inv();
                            }
                        }
                        let denom = dpz - pz * s;
                        if denom.is_zero() || !denom.re.is_finite() || !denom.im.is_finite() {
                            nudge(z)
                        } else {
                            pz / denom
                        }
                    }
                    Step::DurandKerner => {
                        let mut prod = lead;
                        for (j, &zj) in self.roots.iter().enumerate() {
                            if j != k {
                                prod = prod * (z - zj);
                            }
                        }
                        if prod.is_zero() {
                            nudge(z)
                        } else {
                            pz / prod
                        }
                    }
                };
                if !delta.re.is_finite() || !delta.im.is_finite() {
                    all_done = false;
                    continue;
                }
                let next = z - delta;
                self.roots[k] = next;
                if delta.norm() <= T::lit(4.0) * eps * next.norm() {
                    self.done[k] = true;
                } else {
                    all_done = false;
                }
            }
            if all_done {
                return sweep;
            }
        }
        self.max_iter
    }

    fn scale(&self) -> T {
        self.coeffs
            .iter()
            .map(|c| c.norm())
            .fold(T::zero(), T::max)
    }

    /// Accepts when every residual satisfies
    /// `|p(z)| <= tol * max(scale, sum |a_j| |z|^j)`.
    fn accepted(&self) -> bool {
        let scale = self.scale();
        self.roots.iter().all(|&z| {
            let r = horner(&self.coeffs, z).norm();
            r.is_finite() && r <= self.tol * scale.max(abs_eval(&self.coeffs, z.norm()))
        })
    }

    /// For real problems, replaces a root by its real part when that real
    /// point is at least as good a root: rounding pushes real roots of real
    /// polynomials slightly off the axis.
    fn snap_real(&mut self) {
        let eps = T::epsilon();
        for k in 0..self.roots.len() {
            let z = self.roots[k];
            if z.im == T::zero() {
                continue;
            }
            let x = Complex::new(z.re, T::zero());
            let fx = horner(&self.coeffs, x).norm();
            let fz = horner(&self.coeffs, z).norm();
            let noise = T::lit(8.0) * eps * abs_eval(&self.coeffs, z.re.abs());
            if fx <= fz.max(noise) {
                self.roots[k] = x;
            }
        }
    }
}

#[derive(Clone, Copy)]
enum Step {
    Aberth,
    DurandKerner,
}

fn nudge<T: Real>(z: Complex<T>) -> Complex<T> {
    let h = T::lit(1e-7) * (T::one() + z.norm());
    Complex::new(h, h * T::lit(0.5))
}

fn abs_eval<T: Real>(coeffs: &[Complex<T>], r: T) -> T {
    coeffs
        .iter()
        .rev()
        .fold(T::zero(), |acc, c| acc * r + c.norm())
}

/// All `d` roots of `p`.
pub fn all_roots<T: Real>(p: &Polynomial<T>, tol: T) -> Result<RootSet<T>> {
    p.require_degree(1)?;
    RootSolver::new(tol).solve(p)
}

/// The fiber `p⁻¹(w)`: roots of `p(z) - w`.
pub fn preimages<T: Real>(p: &Polynomial<T>, w: Complex<T>, tol: T) -> Result<RootSet<T>> {
    all_roots(&p.shifted(w), tol)
}

/// Zeros of `p'`.
pub fn critical_points<T: Real>(p: &Polynomial<T>, tol: T) -> Result<RootSet<T>> {
    p.require_degree(2)?;
    all_roots(&p.derivative()?, tol)
}

/// The fixed point with the largest multiplier `|p'(z)|`, provided that
/// multiplier exceeds one.
pub fn repelling_fixed_point<T: Real>(p: &Polynomial<T>, tol: T) -> Result<Complex<T>> {
    p.require_degree(2)?;
    let mut coeffs = p.coeffs().to_vec();
    coeffs[1] = coeffs[1] - Complex::new(T::one(), T::zero());
    let fixed = all_roots(&Polynomial::new(coeffs)?, tol)?;
    let deriv = p.derivative()?;
    let threshold = T::one() + T::lit(REPELLING_MARGIN);
    let mut best: Option<(T, Complex<T>)> = None;
    for &z in &fixed.roots {
        let m = deriv.eval(z).norm();
        if m > threshold && best.map_or(true, |(bm, _)| m > bm) {
            best = Some((m, z));
        }
    }
    best.map(|(_, z)| z).ok_or(Error::NoRepellingFixedPoint)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn real(c: &[f64]) -> Polynomial<f64> {
        Polynomial::from_real(c).unwrap()
    }

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    fn assert_close(got: &[Complex64], want: &[Complex64], tol: f64) {
        let got = sorted(got.to_vec());
        let want = sorted(want.to_vec());
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).norm() <= tol, "got {got:?}, want {want:?}");
        }
    }

    #[test]
    fn quadratic_and_cubic() {
        let r = all_roots(&real(&[-1.0, 0.0, 1.0]), 1e-10).unwrap();
        assert_close(&r.roots, &[(-1.0).into(), 1.0.into()], 1e-14);

        let t3 = Polynomial::<f64>::chebyshev(3).unwrap();
        let r = all_roots(&t3, 1e-10).unwrap();
        let h = 3f64.sqrt() / 2.0;
        assert_close(&r.roots, &[0.0.into(), h.into(), (-h).into()], 1e-14);
        assert!(r.max_residual() < 1e-14);
    }

    #[test]
    fn preimage_examples() {
        let z2 = real(&[0.0, 0.0, 1.0]);
        let r = preimages(&z2, 1.0.into(), 1e-10).unwrap();
        assert_close(&r.roots, &[(-1.0).into(), 1.0.into()], 1e-14);

        let r = preimages(&z2, 0.0.into(), 1e-10).unwrap();
        assert_eq!(r.len(), 2);
        assert_close(&r.roots, &[0.0.into(), 0.0.into()], 1e-15);

        let t2 = real(&[-1.0, 0.0, 2.0]);
        let r = preimages(&t2, (-1.0).into(), 1e-10).unwrap();
        assert_close(&r.roots, &[0.0.into(), 0.0.into()], 1e-15);
    }

    #[test]
    fn critical_point_examples() {
        let quad = Polynomial::new(vec![
            Complex64::new(0.1, 0.3),
            0.0.into(),
            1.0.into(),
        ])
        .unwrap();
        let r = critical_points(&quad, 1e-10).unwrap();
        assert_close(&r.roots, &[0.0.into()], 0.0);

        let t3 = Polynomial::<f64>::chebyshev(3).unwrap();
        let r = critical_points(&t3, 1e-10).unwrap();
        assert_close(&r.roots, &[0.5.into(), (-0.5).into()], 1e-15);

        let r = critical_points(&real(&[0.0, -3.0, 0.0, 1.0]), 1e-10).unwrap();
        assert_close(&r.roots, &[1.0.into(), (-1.0).into()], 1e-15);

        assert!(critical_points(&real(&[1.0, 1.0]), 1e-10).is_err());
    }

    #[test]
    fn repelling_fixed_point_examples() {
        let z = repelling_fixed_point(&real(&[0.0, 0.0, 1.0]), 1e-10).unwrap();
        assert!((z - 1.0).norm() < 1e-14);

        let z = repelling_fixed_point(&real(&[-1.0, 0.0, 2.0]), 1e-10).unwrap();
        assert!((z - 1.0).norm() < 1e-14);

        // z^2 - 1: fixed points solve z^2 - z - 1 = 0.
        let s5 = 5f64.sqrt();
        let candidates = [(1.0 + s5) / 2.0, (1.0 - s5) / 2.0];
        let best = candidates
            .iter()
            .copied()
            .max_by(|a, b| (2.0 * a).abs().total_cmp(&(2.0 * b).abs()))
            .unwrap();
        let z = repelling_fixed_point(&real(&[-1.0, 0.0, 1.0]), 1e-10).unwrap();
        assert!((z - best).norm() < 1e-14);
    }

    #[test]
    fn no_repelling_fixed_point() {
        // z^2 + z: the only fixed point is 0 (double), multiplier 1
        let p = real(&[0.0, 1.0, 1.0]);
        assert!(matches!(
            repelling_fixed_point(&p, 1e-10),
            Err(Error::NoRepellingFixedPoint)
        ));
    }

    #[test]
    fn non_convergence_carries_best_iterate() {
        let p = Polynomial::<f64>::chebyshev(12).unwrap();
        let mut solver = RootSolver::new(1e-10);
        solver.max_iter = 1;
        match solver.solve(&p) {
            Err(Error::NoConvergence { best, .. }) => assert_eq!(best.len(), 12),
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn deterministic() {
        let p = Polynomial::new(vec![
            Complex64::new(0.3, 0.1),
            Complex64::new(-0.2, 0.9),
            Complex64::new(0.5, 0.5),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.7, 0.0),
        ])
        .unwrap();
        let a = all_roots(&p, 1e-10).unwrap();
        let b = all_roots(&p, 1e-10).unwrap();
        assert_eq!(a, b);
    }
}
