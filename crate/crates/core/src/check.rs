//! Numerical checks around the backward inclusion `p⁻¹(H_p) ⊂ H_p`, where
//! `H_p` is the convex hull of the Julia set, and classification of the
//! polynomials for which it is an equality.
//!
//! Every check builds `H` as the hull of an inverse-iteration sample and
//! compares a violation measured in length units against
//! `tol_rel * diam(H)`. Positive signed distance to `H` is the violation for
//! containment-type checks.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hull::{convex_hull, classify_shape, ConvexPolygon, HalfPlane, Shape};
use crate::julia::{distance_estimate, escape_grid, escape_time, near_filled_points, sample_julia, PointCloud};
use crate::poly::AffineMap;
use crate::roots::{critical_points, preimages};
use crate::Poly;

pub const MAX_WITNESSES: usize = 10;
/// Admissible pairs tested for convexity of `C_B`.
pub const CB_PAIRS: usize = 100;
/// Fewer admissible pairs than this makes the convexity check inconclusive.
pub const CB_MIN_PAIRS: usize = 10;
pub const CB_MAX_CANDIDATES: usize = 4000;
pub const THURSTON_PLANES: usize = 20;
pub const THURSTON_TARGETS: usize = 50;
/// Relative coefficient tolerance for matching a normal form.
pub const NORMAL_FORM_REL: f64 = 1e-6;
/// Allowed deviation of `|c|` from 1 for a monomial normal form.
pub const UNIMODULAR_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckConfig {
    pub julia_samples: usize,
    pub boundary_samples: usize,
    pub interior_samples: usize,
    pub tol_rel: f64,
    pub seed: u64,
    pub residual_tol: f64,
    pub grid_resolution: usize,
    pub max_iter: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self {
            julia_samples: 100_000,
            boundary_samples: 512,
            interior_samples: 256,
            tol_rel: 1e-3,
            seed: 0,
            residual_tol: 1e-10,
            grid_resolution: 512,
            max_iter: 200,
        }
    }
}

impl CheckConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        if self.julia_samples < 1000 {
            return bad(format!("julia_samples must be >= 1000, got {}", self.julia_samples));
        }
        if self.boundary_samples < 16 || self.interior_samples < 16 {
            return bad("boundary_samples and interior_samples must be >= 16".into());
        }
        if !(self.tol_rel > 0.0 && self.tol_rel < 0.05) {
            return bad(format!("tol_rel must lie in (0, 0.05), got {}", self.tol_rel));
        }
        if !(self.residual_tol > 0.0 && self.residual_tol < 1.0) {
            return bad(format!("residual_tol must lie in (0, 1), got {}", self.residual_tol));
        }
        if self.grid_resolution < 64 || self.max_iter < 50 {
            return bad("grid_resolution must be >= 64 and max_iter >= 50".into());
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckName {
    BackwardInclusion,
    CriticalInHull,
    FilledInHull,
    CbConvexity,
    ThurstonSurjectivity,
}

impl CheckName {
    pub const ALL: [CheckName; 5] = [
        CheckName::BackwardInclusion,
        CheckName::CriticalInHull,
        CheckName::FilledInHull,
        CheckName::CbConvexity,
        CheckName::ThurstonSurjectivity,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::BackwardInclusion => "backward_inclusion",
            CheckName::CriticalInHull => "critical_in_hull",
            CheckName::FilledInHull => "filled_in_hull",
            CheckName::CbConvexity => "cb_convexity",
            CheckName::ThurstonSurjectivity => "thurston_surjectivity",
        }
    }

    fn stream(self) -> u64 {
        self as u64 + 1
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: CheckName,
    pub verdict: Verdict,
    /// Largest violation in length units; `Pass` iff it is at most
    /// `tol_rel * diam(H)`. Not finite (null in JSON) when inconclusive.
    pub worst_violation: f64,
    /// Up to ten offending points, worst first.
    pub witnesses: Vec<Complex64>,
    pub config: CheckConfig,
    pub polynomial: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
    #[serde(skip)]
    pub threshold: f64,
}

impl CheckReport {
    fn judge(check: CheckName, ctx: &JuliaHull, cfg: &CheckConfig, violations: &[(f64, Complex64)]) -> Self {
        let threshold = ctx.threshold(cfg);
        let worst = violations.iter().map(|v| v.0).fold(f64::NEG_INFINITY, f64::max);
        let mut bad: Vec<&(f64, Complex64)> = violations.iter().filter(|v| !(v.0 <= threshold)).collect();
        bad.sort_by(|a, b| b.0.total_cmp(&a.0));
        let verdict = if bad.is_empty() { Verdict::Pass } else { Verdict::Fail };
        Self {
            check,
            verdict,
            worst_violation: worst,
            witnesses: bad.iter().take(MAX_WITNESSES).map(|v| v.1).collect(),
            config: cfg.clone(),
            polynomial: ctx.polynomial.coefficient_list(),
            diagnostic: None,
            threshold,
        }
    }

    fn inconclusive(check: CheckName, p: &Poly, cfg: &CheckConfig, diagnostic: String) -> Self {
        Self {
            check,
            verdict: Verdict::Inconclusive,
            worst_violation: f64::NAN,
            witnesses: Vec::new(),
            config: cfg.clone(),
            polynomial: p.coefficient_list(),
            diagnostic: Some(diagnostic),
            threshold: f64::NAN,
        }
    }
}

/// Sampled Julia set, its hull, and derived scales shared by all checks.
#[derive(Clone, Debug)]
pub struct JuliaHull {
    pub polynomial: Poly,
    pub cloud: PointCloud<f64>,
    pub hull: ConvexPolygon<f64>,
    pub diameter: f64,
    pub radius: f64,
}

impl JuliaHull {
    pub fn build(p: &Poly, cfg: &CheckConfig) -> Result<Self> {
        p.require_degree(2)?;
        cfg.validate()?;
        let cloud = sample_julia(p, cfg.julia_samples, cfg.seed)?;
        let hull = convex_hull(&cloud.points)?;
        Ok(Self {
            polynomial: p.clone(),
            diameter: hull.diameter(),
            radius: p.escape_radius(),
            cloud,
            hull,
        })
    }

    pub fn threshold(&self, cfg: &CheckConfig) -> f64 {
        cfg.tol_rel * self.diameter
    }

    /// Largest distance from `p(z)` to `H` over sampled `z ∈ H`: boundary,
    /// interior, and up to `m` hull vertices. Zero exactly when `p(H) ⊂ H`,
    /// which is equivalent to `p⁻¹(H) = H`.
    pub fn forward_gap(&self, cfg: &CheckConfig) -> f64 {
        let mut rng = stream(cfg, 7);
        let mut zs = self.boundary_samples(cfg.boundary_samples);
        zs.extend(self.interior_samples(cfg.interior_samples, &mut rng));
        let v = self.hull.vertices();
        let stride = v.len().div_ceil(cfg.boundary_samples).max(1);
        zs.extend(v.iter().step_by(stride));
        zs.par_iter()
            .map(|&z| self.hull.excess(self.polynomial.eval(z)))
            .collect::<Vec<f64>>()
            .into_iter()
            .fold(0.0, f64::max)
    }

    /// Largest signed distance from `H` over `points`.
    pub fn max_signed_distance(&self, points: &[Complex64]) -> f64 {
        points
            .iter()
            .map(|&z| self.hull.signed_distance(z))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Largest distance from `H` over `points`, zero if all lie in `H`.
    pub fn max_excess(&self, points: &[Complex64]) -> f64 {
        points.iter().map(|&z| self.hull.excess(z)).fold(0.0, f64::max)
    }

    /// `m` arc-length-uniform points of `∂H`.
    pub fn boundary_samples(&self, m: usize) -> Vec<Complex64> {
        self.hull.boundary_samples(m)
    }

    /// `k` points of `H`, each a Dirichlet(1,1,1) combination of three random
    /// hull vertices.
    pub fn interior_samples(&self, k: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
        let v = self.hull.vertices();
        (0..k)
            .map(|_| {
                let mut acc = Complex64::new(0.0, 0.0);
                let mut total = 0.0;
                for _ in 0..3 {
                    let w = -(1.0 - rng.gen::<f64>()).ln();
                    acc += v[rng.gen_range(0..v.len())] * w;
                    total += w;
                }
                if total > 0.0 {
                    acc / total
                } else {
                    v[0]
                }
            })
            .collect()
    }

    /// Preimage fibers of `ws`, in order. The first failing solve (by index)
    /// is reported.
    pub fn fibers(&self, ws: &[Complex64], tol: f64) -> Result<Vec<Vec<Complex64>>> {
        let p = &self.polynomial;
        let solved: Vec<Result<Vec<Complex64>>> = ws
            .par_iter()
            .map(|&w| preimages(p, w, tol).map(|r| r.roots))
            .collect();
        solved.into_iter().collect()
    }
}

fn stream(cfg: &CheckConfig, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(id);
    rng
}

fn with_context(
    check: CheckName,
    p: &Poly,
    cfg: &CheckConfig,
    run: impl FnOnce(&JuliaHull, &CheckConfig) -> CheckReport,
) -> Result<CheckReport> {
    p.require_degree(2)?;
    cfg.validate()?;
    match JuliaHull::build(p, cfg) {
        Ok(ctx) => Ok(run(&ctx, cfg)),
        Err(e) => Ok(CheckReport::inconclusive(check, p, cfg, e.to_string())),
    }
}

/// Preimages of `∂H` and of interior points of `H` stay within `H`.
pub fn check_backward_inclusion(p: &Poly, cfg: &CheckConfig) -> Result<CheckReport> {
    with_context(CheckName::BackwardInclusion, p, cfg, check_backward_inclusion_with)
}

pub fn check_backward_inclusion_with(ctx: &JuliaHull, cfg: &CheckConfig) -> CheckReport {
    let check = CheckName::BackwardInclusion;
    let mut rng = stream(cfg, check.stream());
    let mut ws = ctx.boundary_samples(cfg.boundary_samples);
    ws.extend(ctx.interior_samples(cfg.interior_samples, &mut rng));
    match ctx.fibers(&ws, cfg.residual_tol) {
        Ok(fibers) => {
            let violations: Vec<(f64, Complex64)> = fibers
                .iter()
                .flatten()
                .map(|&z| (ctx.hull.signed_distance(z), z))
                .collect();
            CheckReport::judge(check, ctx, cfg, &violations)
        }
        Err(e) => CheckReport::inconclusive(check, &ctx.polynomial, cfg, e.to_string()),
    }
}

/// Critical points lie in `H`.
pub fn check_critical_in_hull(p: &Poly, cfg: &CheckConfig) -> Result<CheckReport> {
    with_context(CheckName::CriticalInHull, p, cfg, check_critical_in_hull_with)
}

pub fn check_critical_in_hull_with(ctx: &JuliaHull, cfg: &CheckConfig) -> CheckReport {
    let check = CheckName::CriticalInHull;
    match critical_points(&ctx.polynomial, cfg.residual_tol) {
        Ok(crit) => {
            let violations: Vec<(f64, Complex64)> =
                crit.roots.iter().map(|&z| (ctx.hull.signed_distance(z), z)).collect();
            CheckReport::judge(check, ctx, cfg, &violations)
        }
        Err(e) => CheckReport::inconclusive(check, &ctx.polynomial, cfg, e.to_string()),
    }
}

/// The escape-time raster of `K_p` lies in `H` up to one cell diagonal.
///
/// Escaping cells whose distance estimate is within half a diagonal also
/// count as part of `K_p`; this keeps filled sets with empty interior, such
/// as segments, visible at any resolution. The reported violation is the
/// signed distance minus the diagonal.
pub fn check_filled_in_hull(p: &Poly, cfg: &CheckConfig) -> Result<CheckReport> {
    with_context(CheckName::FilledInHull, p, cfg, check_filled_in_hull_with)
}

pub fn check_filled_in_hull_with(ctx: &JuliaHull, cfg: &CheckConfig) -> CheckReport {
    let check = CheckName::FilledInHull;
    let p = &ctx.polynomial;
    let grid = match escape_grid(p, cfg.grid_resolution, cfg.max_iter) {
        Ok(g) => g,
        Err(e) => return CheckReport::inconclusive(check, p, cfg, e.to_string()),
    };
    let diagonal = grid.cell_diagonal();
    let points = near_filled_points(p, &grid, diagonal / 2.0);
    if points.is_empty() {
        return CheckReport::inconclusive(check, p, cfg, "raster of K_p is empty".into());
    }
    // signed distance is convex, so its maximum sits on a hull vertex
    let outer = match convex_hull(&points) {
        Ok(h) => h,
        Err(e) => return CheckReport::inconclusive(check, p, cfg, e.to_string()),
    };
    let violations: Vec<(f64, Complex64)> = outer
        .vertices()
        .iter()
        .map(|&z| (ctx.hull.signed_distance(z) - diagonal, z))
        .collect();
    CheckReport::judge(check, ctx, cfg, &violations)
}

/// The set of `w` whose whole fiber lies in `H` is convex: combinations of
/// admissible pairs stay admissible.
pub fn check_cb_convexity(p: &Poly, cfg: &CheckConfig) -> Result<CheckReport> {
    with_context(CheckName::CbConvexity, p, cfg, check_cb_convexity_with)
}

pub fn check_cb_convexity_with(ctx: &JuliaHull, cfg: &CheckConfig) -> CheckReport {
    let check = CheckName::CbConvexity;
    let p = &ctx.polynomial;
    let threshold = ctx.threshold(cfg);
    let mut rng = stream(cfg, check.stream());

    let (lo, hi) = bounding_box(ctx.hull.vertices());
    let pad = 0.25 * ctx.diameter.max(f64::MIN_POSITIVE);
    let batch = 2 * CB_PAIRS;
    let mut admissible = Vec::with_capacity(2 * CB_PAIRS);
    let mut tried = 0;
    while admissible.len() < 2 * CB_PAIRS && tried < CB_MAX_CANDIDATES {
        let mut candidates = ctx.interior_samples(batch / 2, &mut rng);
        candidates.extend((0..batch / 2).map(|_| {
            Complex64::new(
                rng.gen_range(lo.re - pad..=hi.re + pad),
                rng.gen_range(lo.im - pad..=hi.im + pad),
            )
        }));
        tried += candidates.len();
        let fibers = match ctx.fibers(&candidates, cfg.residual_tol) {
            Ok(f) => f,
            Err(e) => return CheckReport::inconclusive(check, p, cfg, e.to_string()),
        };
        for (w, fiber) in candidates.iter().zip(&fibers) {
            if ctx.max_excess(fiber) <= threshold && admissible.len() < 2 * CB_PAIRS {
                admissible.push(*w);
            }
        }
    }
    let pairs = admissible.len() / 2;
    if pairs < CB_MIN_PAIRS {
        return CheckReport::inconclusive(
            check,
            p,
            cfg,
            format!("only {pairs} admissible pairs after {tried} candidates"),
        );
    }
    let combos: Vec<Complex64> = admissible
        .chunks_exact(2)
        .flat_map(|pair| {
            (1..=9).map(move |j| {
                let t = j as f64 / 10.0;
                pair[0] * t + pair[1] * (1.0 - t)
            })
        })
        .collect();
    match ctx.fibers(&combos, cfg.residual_tol) {
        Ok(fibers) => {
            let violations: Vec<(f64, Complex64)> = combos
                .iter()
                .zip(&fibers)
                .map(|(&w, fiber)| (ctx.max_excess(fiber), w))
                .collect();
            CheckReport::judge(check, ctx, cfg, &violations)
        }
        Err(e) => CheckReport::inconclusive(check, p, cfg, e.to_string()),
    }
}

/// Every closed half-plane meeting the hull of the critical points is mapped
/// onto the plane: each target has a preimage in it.
pub fn check_thurston_surjectivity(p: &Poly, cfg: &CheckConfig) -> Result<CheckReport> {
    with_context(CheckName::ThurstonSurjectivity, p, cfg, check_thurston_surjectivity_with)
}

pub fn check_thurston_surjectivity_with(ctx: &JuliaHull, cfg: &CheckConfig) -> CheckReport {
    let check = CheckName::ThurstonSurjectivity;
    let p = &ctx.polynomial;
    let mut rng = stream(cfg, check.stream());
    let crit = match critical_points(p, cfg.residual_tol) {
        Ok(c) => c.roots,
        Err(e) => return CheckReport::inconclusive(check, p, cfg, e.to_string()),
    };
    let planes: Vec<HalfPlane<f64>> = (0..THURSTON_PLANES)
        .map(|_| {
            let mut anchor = Complex64::new(0.0, 0.0);
            let mut total = 0.0;
            for &c in &crit {
                let w = -(1.0 - rng.gen::<f64>()).ln();
                anchor += c * w;
                total += w;
            }
            if total > 0.0 {
                anchor /= total;
            } else {
                anchor = crit[0];
            }
            let theta = rng.gen_range(0.0..std::f64::consts::TAU);
            HalfPlane::through(anchor, Complex64::from_polar(1.0, theta))
        })
        .collect();
    let targets: Vec<Complex64> = (0..THURSTON_TARGETS)
        .map(|_| {
            let r = 2.0 * ctx.radius * rng.gen::<f64>().sqrt();
            Complex64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU))
        })
        .collect();
    let fibers = match ctx.fibers(&targets, cfg.residual_tol) {
        Ok(f) => f,
        Err(e) => return CheckReport::inconclusive(check, p, cfg, e.to_string()),
    };
    let mut violations = Vec::with_capacity(planes.len() * targets.len());
    for plane in &planes {
        for (&y, fiber) in targets.iter().zip(&fibers) {
            let miss = fiber.iter().map(|&z| -plane.eval(z)).fold(f64::INFINITY, f64::min);
            violations.push((miss, y));
        }
    }
    CheckReport::judge(check, ctx, cfg, &violations)
}

fn bounding_box(points: &[Complex64]) -> (Complex64, Complex64) {
    let mut lo = Complex64::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Complex64::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for z in points {
        lo.re = lo.re.min(z.re);
        lo.im = lo.im.min(z.im);
        hi.re = hi.re.max(z.re);
        hi.im = hi.im.max(z.im);
    }
    (lo, hi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EqualityKind {
    StrictInclusion,
    ChebyshevConjugate,
    MonomialConjugate,
}

/// Outcome of [`classify_equality`]. For the conjugate kinds,
/// `g(z) = conjugation_a * z + conjugation_b` carries `p` to its normal form
/// `g ∘ p ∘ g⁻¹`, which is `sign * T_d` or `c * z^d`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub kind: EqualityKind,
    pub conjugation_a: Option<Complex64>,
    pub conjugation_b: Option<Complex64>,
    pub sign_or_c: Option<Complex64>,
    /// Largest coefficient deviation from the best normal form; not finite
    /// when no normal form was tried.
    pub coefficient_residual: f64,
    pub polynomial: String,
    /// One-sided Hausdorff distance from `p(H)` to `H`.
    #[serde(skip)]
    pub hausdorff_gap: f64,
    /// `tol_rel * diam(H)`.
    #[serde(skip)]
    pub threshold: f64,
    #[serde(skip)]
    pub note: String,
}

impl Classification {
    pub fn conjugation(&self) -> Option<AffineMap<f64>> {
        AffineMap::new(self.conjugation_a?, self.conjugation_b?).ok()
    }

    /// `sign * T_d` or `c * z^d`.
    pub fn normal_form(&self, degree: usize) -> Option<Poly> {
        let s = self.sign_or_c?;
        match self.kind {
            EqualityKind::StrictInclusion => None,
            EqualityKind::ChebyshevConjugate => Poly::chebyshev(degree).ok()?.scaled(s).ok(),
            EqualityKind::MonomialConjugate => Poly::monomial(s, degree).ok(),
        }
    }
}

/// Decides whether `p⁻¹(H_p) = H_p` and, if so, recovers the conjugation to
/// `±T_d` or `c z^d`.
///
/// Equality is declared when [`JuliaHull::forward_gap`] is at most
/// `tol_rel * diam(H)` and sampled points of `H` lie in `K_p`. The sample is
/// then fitted by a segment or a circle.
pub fn classify_equality(p: &Poly, cfg: &CheckConfig) -> Result<Classification> {
    let ctx = JuliaHull::build(p, cfg)?;
    classify_equality_with(&ctx, cfg)
}

pub fn classify_equality_with(ctx: &JuliaHull, cfg: &CheckConfig) -> Result<Classification> {
    let p = &ctx.polynomial;
    let d = p.degree();
    let threshold = ctx.threshold(cfg);
    let gap = ctx.forward_gap(cfg);

    let strict = |residual: f64, note: String| Classification {
        kind: EqualityKind::StrictInclusion,
        conjugation_a: None,
        conjugation_b: None,
        sign_or_c: None,
        coefficient_residual: residual,
        polynomial: p.coefficient_list(),
        hausdorff_gap: gap,
        threshold,
        note,
    };
    if !(gap <= threshold) {
        return Ok(strict(f64::NAN, format!("hull gap {gap:e} exceeds {threshold:e}")));
    }

    let mut rng = stream(cfg, 6);
    for z in ctx.interior_samples(cfg.interior_samples, &mut rng) {
        let bounded = escape_time(p, z, ctx.radius, cfg.max_iter).is_none()
            || distance_estimate(p, z, cfg.max_iter).is_some_and(|est| est <= threshold);
        if !bounded {
            return Ok(strict(f64::NAN, format!("hull point {z} escapes")));
        }
    }

    match classify_shape(&ctx.cloud.points, cfg.tol_rel)? {
        Shape::Segment(u, v) => {
            let a = Complex64::new(2.0, 0.0) / (v - u);
            let b = -(u + v) / (v - u);
            let g = AffineMap::new(a, b)?;
            let q = p.conjugate(&g);
            let t = Poly::chebyshev(d)?;
            let plus = q.max_coeff_diff(&t);
            let minus = q.max_coeff_diff(&t.neg());
            let (sign, residual) = if plus <= minus { (1.0, plus) } else { (-1.0, minus) };
            if residual <= NORMAL_FORM_REL * t.scale() {
                Ok(Classification {
                    kind: EqualityKind::ChebyshevConjugate,
                    conjugation_a: Some(a),
                    conjugation_b: Some(b),
                    sign_or_c: Some(Complex64::new(sign, 0.0)),
                    coefficient_residual: residual,
                    polynomial: p.coefficient_list(),
                    hausdorff_gap: gap,
                    threshold,
                    note: String::new(),
                })
            } else {
                Ok(strict(residual, "segment hull but no Chebyshev normal form".into()))
            }
        }
        Shape::Circle { center, radius } => {
            let a = Complex64::new(1.0 / radius, 0.0);
            let b = -center / radius;
            let g = AffineMap::new(a, b)?;
            let q = p.conjugate(&g);
            let c = q.leading();
            let residual = q.coeffs()[..d].iter().map(|z| z.norm()).fold(0.0, f64::max);
            if residual <= NORMAL_FORM_REL * q.scale() && (c.norm() - 1.0).abs() <= UNIMODULAR_TOL {
                Ok(Classification {
                    kind: EqualityKind::MonomialConjugate,
                    conjugation_a: Some(a),
                    conjugation_b: Some(b),
                    sign_or_c: Some(c),
                    coefficient_residual: residual,
                    polynomial: p.coefficient_list(),
                    hausdorff_gap: gap,
                    threshold,
                    note: String::new(),
                })
            } else {
                Ok(strict(residual, "circular hull but no monomial normal form".into()))
            }
        }
        Shape::Generic => Err(Error::EqualityWithoutShape),
    }
}

/// All five checks and the classifier on one shared sample.
#[derive(Debug)]
pub struct SuiteOutcome {
    pub reports: Vec<CheckReport>,
    pub classification: Result<Classification>,
}

pub fn run_suite(p: &Poly, cfg: &CheckConfig) -> Result<SuiteOutcome> {
    p.require_degree(2)?;
    cfg.validate()?;
    let ctx = match JuliaHull::build(p, cfg) {
        Ok(ctx) => ctx,
        Err(e) => {
            let msg = e.to_string();
            return Ok(SuiteOutcome {
                reports: CheckName::ALL
                    .iter()
                    .map(|&c| CheckReport::inconclusive(c, p, cfg, msg.clone()))
                    .collect(),
                classification: Err(e),
            });
        }
    };
    Ok(run_suite_with(&ctx, cfg))
}

pub fn run_suite_with(ctx: &JuliaHull, cfg: &CheckConfig) -> SuiteOutcome {
    let reports = vec![
        check_backward_inclusion_with(ctx, cfg),
        check_critical_in_hull_with(ctx, cfg),
        check_filled_in_hull_with(ctx, cfg),
        check_cb_convexity_with(ctx, cfg),
        check_thurston_surjectivity_with(ctx, cfg),
    ];
    let classification = classify_equality_with(ctx, cfg);
    SuiteOutcome { reports, classification }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(c: &[f64]) -> Poly {
        Poly::from_real(c).unwrap()
    }

    fn cfg() -> CheckConfig {
        CheckConfig {
            julia_samples: 20_000,
            ..CheckConfig::default()
        }
    }

    #[test]
    fn config_validation() {
        assert!(CheckConfig::default().validate().is_ok());
        for bad in [
            CheckConfig { julia_samples: 999, ..cfg() },
            CheckConfig { boundary_samples: 15, ..cfg() },
            CheckConfig { interior_samples: 15, ..cfg() },
            CheckConfig { tol_rel: 0.0, ..cfg() },
            CheckConfig { tol_rel: 0.05, ..cfg() },
        ] {
            assert!(bad.validate().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn low_degree_rejected() {
        assert!(matches!(
            check_backward_inclusion(&real(&[1.0, 2.0]), &cfg()),
            Err(Error::DegreeTooLow { .. })
        ));
    }

    #[test]
    fn chebyshev_backward_inclusion() {
        let r = check_backward_inclusion(&real(&[-1.0, 0.0, 2.0]), &cfg()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(r.worst_violation <= r.threshold);
        assert!(r.witnesses.is_empty());
    }

    #[test]
    fn chebyshev_four_critical_points() {
        let r = check_critical_in_hull(&Poly::chebyshev(4).unwrap(), &cfg()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn critical_point_zero_is_inside() {
        let p = Poly::new(vec![Complex64::new(0.0, 0.2), 0.0.into(), 1.0.into()]).unwrap();
        let r = check_critical_in_hull(&p, &cfg()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(r.worst_violation < 0.0);
    }

    #[test]
    fn filled_set_inside_hull() {
        for p in [real(&[0.0, 0.0, 1.0]), real(&[-1.0, 0.0, 2.0])] {
            let r = check_filled_in_hull(&p, &cfg()).unwrap();
            assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        }
    }

    #[test]
    fn fail_reports_witnesses() {
        // an artificially shrunken hull must fail
        let p = real(&[0.0, 0.0, 1.0]);
        let mut ctx = JuliaHull::build(&p, &cfg()).unwrap();
        let half: Vec<Complex64> = ctx.hull.vertices().iter().map(|z| z * 0.5).collect();
        ctx.hull = convex_hull(&half).unwrap();
        let r = check_backward_inclusion_with(&ctx, &cfg());
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(!r.witnesses.is_empty() && r.witnesses.len() <= MAX_WITNESSES);
        assert!(r.worst_violation > r.threshold);
    }

    #[test]
    fn report_json_shape() {
        let r = check_critical_in_hull(&Poly::chebyshev(2).unwrap(), &cfg()).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(|s| s.as_str()).collect();
        keys.sort();
        assert_eq!(keys, ["check", "config", "polynomial", "verdict", "witnesses", "worst_violation"]);
        assert_eq!(v["check"], "critical_in_hull");
        assert_eq!(v["verdict"], "Pass");
        assert_eq!(v["polynomial"], "-1,0,2");
    }

    #[test]
    fn classify_t5() {
        let c = classify_equality(&Poly::chebyshev(5).unwrap(), &cfg()).unwrap();
        assert_eq!(c.kind, EqualityKind::ChebyshevConjugate);
        assert_eq!(c.sign_or_c, Some(Complex64::new(1.0, 0.0)));
        let g = c.conjugation().unwrap();
        assert!((g.a - 1.0).norm() < 1e-6 && g.b.norm() < 1e-6, "{g:?}");
    }

    #[test]
    fn classify_conjugated_cube() {
        let g = AffineMap::new(Complex64::new(2.0, 0.0), Complex64::new(1.0, -1.0)).unwrap();
        let p = Poly::monomial(1.0.into(), 3).unwrap().conjugate(&g);
        let c = classify_equality(&p, &cfg()).unwrap();
        assert_eq!(c.kind, EqualityKind::MonomialConjugate);
        assert!((c.sign_or_c.unwrap().norm() - 1.0).abs() < 1e-9);
        // recovered map inverts g
        let h = c.conjugation().unwrap();
        let z = Complex64::new(0.3, -0.7);
        assert!((h.apply(g.apply(z)) - z).norm() < 1e-6);
    }

    #[test]
    fn classify_strict() {
        let p = Poly::new(vec![Complex64::new(0.0, 0.25), 0.0.into(), 1.0.into()]).unwrap();
        let c = classify_equality(&p, &cfg()).unwrap();
        assert_eq!(c.kind, EqualityKind::StrictInclusion);
        assert!(c.hausdorff_gap > 10.0 * c.threshold, "{} {}", c.hausdorff_gap, c.threshold);
        let v = serde_json::to_value(&c).unwrap();
        assert!(v["conjugation_a"].is_null());
    }
}
