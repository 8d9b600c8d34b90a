//! Planar convex geometry on complex points.
//!
//! Hulls come from Andrew's monotone chain. Orientation uses a plain
//! floating-point cross product; turns with `|cross| <= 1e-14 * scale^2` count
//! as collinear and the middle point is dropped.

use std::cmp::Ordering;

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Real;

const COLLINEAR_REL: f64 = 1e-14;
const DUPLICATE_REL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Degeneracy {
    Proper,
    Segment,
    Point,
}

/// Convex polygon with counter-clockwise vertices.
///
/// `Proper` polygons have at least three vertices with strictly positive
/// turns. A `Segment` has its two endpoints, a `Point` a single vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexPolygon<T> {
    vertices: Vec<Complex<T>>,
    kind: Degeneracy,
}

/// `{z : <z, normal> >= offset}` with `|normal| = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfPlane<T> {
    pub normal: Complex<T>,
    pub offset: T,
}

impl<T: Real> HalfPlane<T> {
    pub fn new(normal: Complex<T>, offset: T) -> Self {
        let n = normal.norm();
        Self {
            normal: normal / n,
            offset,
        }
    }

    /// Half-plane bounded by the line through `point` with inward `normal`.
    pub fn through(point: Complex<T>, normal: Complex<T>) -> Self {
        let normal = normal / normal.norm();
        Self {
            normal,
            offset: dot(point, normal),
        }
    }

    /// `<z, normal> - offset`; nonnegative inside.
    #[inline]
    pub fn eval(&self, z: Complex<T>) -> T {
        dot(z, self.normal) - self.offset
    }

    #[inline]
    pub fn contains(&self, z: Complex<T>) -> bool {
        self.eval(z) >= T::zero()
    }
}

#[inline]
pub fn dot<T: Real>(a: Complex<T>, b: Complex<T>) -> T {
    a.re * b.re + a.im * b.im
}

/// `(a - o) × (b - o)`; positive for a left turn.
#[inline]
pub fn cross<T: Real>(o: Complex<T>, a: Complex<T>, b: Complex<T>) -> T {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

fn lex_cmp<T: Real>(a: &Complex<T>, b: &Complex<T>) -> Ordering {
    a.re
        .partial_cmp(&b.re)
        .unwrap_or(Ordering::Equal)
        .then(a.im.partial_cmp(&b.im).unwrap_or(Ordering::Equal))
}

/// Distance from `z` to the segment `[a, b]`, with the closest point.
pub fn segment_distance<T: Real>(a: Complex<T>, b: Complex<T>, z: Complex<T>) -> (T, Complex<T>) {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == T::zero() {
        return ((z - a).norm(), a);
    }
    let t = dot(z - a, ab) / len2;
    if t <= T::zero() {
        ((z - a).norm(), a)
    } else if t >= T::one() {
        ((z - b).norm(), b)
    } else {
        // perpendicular distance is exact for points on the line
        (cross(a, b, z).abs() / len2.sqrt(), a + ab * t)
    }
}

/// Monotone-chain convex hull. Collinear and duplicate points are removed.
pub fn convex_hull<T: Real>(points: &[Complex<T>]) -> Result<ConvexPolygon<T>> {
    let mut pts: Vec<Complex<T>> = points
        .iter()
        .copied()
        .filter(|z| z.re.is_finite() && z.im.is_finite())
        .collect();
    if pts.is_empty() {
        return Err(Error::InvalidArgument("convex hull of an empty set".into()));
    }
    pts.sort_unstable_by(lex_cmp);
    pts.dedup();

    let (lo, hi) = bounding_box(&pts);
    let scale2 = (hi - lo).norm_sqr();
    let tie = T::lit(COLLINEAR_REL) * scale2;

    if pts.len() == 1 {
        return Ok(ConvexPolygon::point(pts[0]));
    }

    let mut hull: Vec<Complex<T>> = Vec::with_capacity(pts.len() / 4 + 8);
    for &p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= tie {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= tie
        {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();

    let min_gap = T::lit(DUPLICATE_REL) * scale2.sqrt();
    let mut verts: Vec<Complex<T>> = Vec::with_capacity(hull.len());
    for v in hull {
        if verts.last().map_or(true, |&l: &Complex<T>| (v - l).norm() > min_gap) {
            verts.push(v);
        }
    }
    while verts.len() > 1 && (verts[0] - verts[verts.len() - 1]).norm() <= min_gap {
        verts.pop();
    }
    Ok(ConvexPolygon::from_ccw(verts))
}

fn bounding_box<T: Real>(pts: &[Complex<T>]) -> (Complex<T>, Complex<T>) {
    let mut lo = pts[0];
    let mut hi = pts[0];
    for z in pts {
        lo.re = lo.re.min(z.re);
        lo.im = lo.im.min(z.im);
        hi.re = hi.re.max(z.re);
        hi.im = hi.im.max(z.im);
    }
    (lo, hi)
}

impl<T: Real> ConvexPolygon<T> {
    pub fn point(z: Complex<T>) -> Self {
        Self {
            vertices: vec![z],
            kind: Degeneracy::Point,
        }
    }

    fn from_ccw(vertices: Vec<Complex<T>>) -> Self {
        let kind = match vertices.len() {
            1 => Degeneracy::Point,
            2 => Degeneracy::Segment,
            _ => Degeneracy::Proper,
        };
        Self { vertices, kind }
    }

    pub fn vertices(&self) -> &[Complex<T>] {
        &self.vertices
    }

    pub fn kind(&self) -> Degeneracy {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edges as `(start, end)` pairs, closing back to the first vertex.
    /// A segment yields both directions.
    pub fn edges(&self) -> impl Iterator<Item = (Complex<T>, Complex<T>)> + '_ {
        let n = self.vertices.len();
        let count = if n < 2 { 0 } else { n };
        (0..count).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn perimeter(&self) -> T {
        self.edges().fold(T::zero(), |acc, (a, b)| acc + (b - a).norm())
    }

    pub fn area(&self) -> T {
        if self.kind != Degeneracy::Proper {
            return T::zero();
        }
        let twice = self
            .edges()
            .fold(T::zero(), |acc, (a, b)| acc + a.re * b.im - a.im * b.re);
        twice / T::lit(2.0)
    }

    pub fn centroid_of_vertices(&self) -> Complex<T> {
        let n = T::from_usize(self.vertices.len()).expect("count fits scalar");
        self.vertices
            .iter()
            .fold(Complex::zero(), |acc: Complex<T>, &v| acc + v)
            / n
    }

    /// Largest distance between two vertices (rotating calipers).
    pub fn diameter(&self) -> T {
        let v = &self.vertices;
        let n = v.len();
        match n {
            1 => return T::zero(),
            2 | 3 => {
                let mut best = T::zero();
                for i in 0..n {
                    for j in i + 1..n {
                        best = best.max((v[i] - v[j]).norm());
                    }
                }
                return best;
            }
            _ => {}
        }
        let mut best = T::zero();
        let mut j = 1;
        for i in 0..n {
            let a = v[i];
            let b = v[(i + 1) % n];
            while cross(a, b, v[(j + 1) % n]).abs() > cross(a, b, v[j]).abs() {
                j = (j + 1) % n;
            }
            best = best.max((a - v[j]).norm()).max((b - v[j]).norm());
        }
        best
    }

    /// Membership test, boundary inclusive, in `O(log n)`.
    pub fn contains(&self, z: Complex<T>) -> bool {
        match self.kind {
            Degeneracy::Point => z == self.vertices[0],
            Degeneracy::Segment => {
                let (d, _) = segment_distance(self.vertices[0], self.vertices[1], z);
                d == T::zero()
            }
            Degeneracy::Proper => {
                let v = &self.vertices;
                let n = v.len();
                let o = v[0];
                if cross(o, v[1], z) < T::zero() || cross(o, v[n - 1], z) > T::zero() {
                    return false;
                }
                // wedge search: find i with z between rays o->v[i] and o->v[i+1]
                let (mut lo, mut hi) = (1usize, n - 1);
                while hi - lo > 1 {
                    let mid = (lo + hi) / 2;
                    if cross(o, v[mid], z) >= T::zero() {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                cross(v[lo], v[lo + 1], z) >= T::zero()
            }
        }
    }

    /// Nearest boundary point and its distance.
    pub fn nearest_boundary_point(&self, z: Complex<T>) -> (T, Complex<T>) {
        if self.kind == Degeneracy::Point {
            return ((z - self.vertices[0]).norm(), self.vertices[0]);
        }
        let mut best = (T::infinity(), self.vertices[0]);
        for (a, b) in self.edges() {
            let cand = segment_distance(a, b, z);
            if cand.0 < best.0 {
                best = cand;
            }
        }
        best
    }

    /// Negative inside, zero on the boundary, positive outside; the absolute
    /// value is the Euclidean distance to the boundary. Segments and points
    /// have no interior, so their value is never negative.
    pub fn signed_distance(&self, z: Complex<T>) -> T {
        let (d, _) = self.nearest_boundary_point(z);
        if self.kind == Degeneracy::Proper && self.contains(z) {
            -d
        } else {
            d
        }
    }

    /// Distance from `z` to the polygon: `max(signed_distance(z), 0)`.
    /// Points of a proper polygon are resolved in `O(log n)`.
    pub fn excess(&self, z: Complex<T>) -> T {
        if self.kind == Degeneracy::Proper && self.contains(z) {
            T::zero()
        } else {
            self.signed_distance(z).max(T::zero())
        }
    }

    /// Half-plane containing `z` and disjoint from the polygon: the
    /// perpendicular bisector between `z` and its nearest boundary point.
    pub fn separating_half_plane(&self, z: Complex<T>) -> Result<HalfPlane<T>> {
        if self.signed_distance(z) <= T::zero() {
            return Err(Error::NotOutside);
        }
        let (_, q) = self.nearest_boundary_point(z);
        let normal = (z - q) / (z - q).norm();
        let mid = (z + q) / T::lit(2.0);
        Ok(HalfPlane::through(mid, normal))
    }

    /// `m` points spaced uniformly by arc length along the boundary,
    /// starting at the first vertex.
    pub fn boundary_samples(&self, m: usize) -> Vec<Complex<T>> {
        if self.kind == Degeneracy::Point || m == 0 {
            return vec![self.vertices[0]; m];
        }
        let total = self.perimeter();
        let step = total / T::from_usize(m).expect("count fits scalar");
        let mut out = Vec::with_capacity(m);
        let mut edges = self.edges();
        let (mut a, mut b) = edges.next().expect("at least one edge");
        let mut walked = T::zero();
        let mut len = (b - a).norm();
        for i in 0..m {
            let s = step * T::from_usize(i).expect("index fits scalar");
            while s > walked + len {
                match edges.next() {
                    Some((na, nb)) => {
                        walked = walked + len;
                        a = na;
                        b = nb;
                        len = (b - a).norm();
                    }
                    None => break,
                }
            }
            let t = if len > T::zero() {
                ((s - walked) / len).min(T::one()).max(T::zero())
            } else {
                T::zero()
            };
            out.push(a + (b - a) * t);
        }
        out
    }

    /// Support function `max_v <v, u>`.
    pub fn support(&self, u: Complex<T>) -> T {
        self.vertices
            .iter()
            .map(|&v| dot(v, u))
            .fold(T::neg_infinity(), T::max)
    }

    /// Angles (in `[0, 2π)`) at which the supporting vertex changes, each
    /// paired with the vertex that supports directions from that angle on.
    fn support_events(&self) -> Vec<(T, usize)> {
        let n = self.vertices.len();
        if n < 2 {
            return Vec::new();
        }
        let tau = T::TAU();
        let mut ev: Vec<(T, usize)> = self
            .edges()
            .enumerate()
            .map(|(j, (a, b))| {
                let e = b - a;
                let mut ang = (-e.re).atan2(e.im);
                if ang < T::zero() {
                    ang = ang + tau;
                }
                (ang, (j + 1) % n)
            })
            .collect();
        ev.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap_or(Ordering::Equal));
        ev
    }
}

fn support_vertex<T: Real>(events: &[(T, usize)], theta: T) -> usize {
    if events.is_empty() {
        return 0;
    }
    let idx = events.partition_point(|e| e.0 <= theta);
    if idx == 0 {
        events[events.len() - 1].1
    } else {
        events[idx - 1].1
    }
}

/// `sup_{a ∈ A} dist(a, B)` for convex polygons A, B, computed exactly from
/// support functions as `sup_u (h_A(u) - h_B(u))⁺`.
pub fn hull_excess<T: Real>(a: &ConvexPolygon<T>, b: &ConvexPolygon<T>) -> T {
    let ea = a.support_events();
    let eb = b.support_events();
    let tau = T::TAU();
    let mut cuts: Vec<T> = ea.iter().chain(eb.iter()).map(|e| e.0).collect();
    cuts.push(T::zero());
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap_or(Ordering::Equal));
    cuts.dedup();

    let mut best = T::zero();
    for (k, &t0) in cuts.iter().enumerate() {
        let t1 = if k + 1 < cuts.len() { cuts[k + 1] } else { cuts[0] + tau };
        let va = a.vertices[support_vertex(&ea, t0)];
        let vb = b.vertices[support_vertex(&eb, t0)];
        let diff = va - vb;
        let f = |t: T| dot(diff, Complex::new(t.cos(), t.sin()));
        let mut local = f(t0).max(f(t1));
        if !diff.is_zero() {
            let mut psi = diff.im.atan2(diff.re);
            while psi < t0 {
                psi = psi + tau;
            }
            if psi <= t1 {
                local = diff.norm();
            }
        }
        best = best.max(local);
    }
    best
}

/// Hausdorff distance between the convex regions bounded by two polygons.
pub fn hull_hausdorff<T: Real>(a: &ConvexPolygon<T>, b: &ConvexPolygon<T>) -> T {
    hull_excess(a, b).max(hull_excess(b, a))
}

/// `sup_{a ∈ A} inf_{b ∈ B} |a - b|` for finite point sets.
pub fn directed_hausdorff<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> T {
    let mut sorted = b.to_vec();
    sorted.sort_unstable_by(lex_cmp);
    let mut worst = T::zero();
    for &p in a {
        let start = sorted.partition_point(|q| q.re < p.re);
        let mut best2 = T::infinity();
        for &q in &sorted[start..] {
            let dx = q.re - p.re;
            if dx * dx >= best2 {
                break;
            }
            best2 = best2.min((q - p).norm_sqr());
        }
        for &q in sorted[..start].iter().rev() {
            let dx = p.re - q.re;
            if dx * dx >= best2 {
                break;
            }
            best2 = best2.min((q - p).norm_sqr());
        }
        worst = worst.max(best2.sqrt());
        if worst.is_infinite() {
            break;
        }
    }
    worst
}

/// Symmetric Hausdorff distance between finite point sets.
pub fn hausdorff<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> T {
    directed_hausdorff(a, b).max(directed_hausdorff(b, a))
}

/// Outcome of fitting a point cloud by a segment or a circle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Shape<T> {
    /// Endpoints ordered lexicographically by (re, im).
    Segment(Complex<T>, Complex<T>),
    Circle { center: Complex<T>, radius: T },
    Generic,
}

/// Total-least-squares line: centroid, unit direction, and the largest
/// perpendicular distance of any point.
pub fn fit_line<T: Real>(points: &[Complex<T>]) -> (Complex<T>, Complex<T>, T) {
    let n = T::from_usize(points.len()).expect("count fits scalar");
    let mean = points.iter().fold(Complex::zero(), |a: Complex<T>, &z| a + z) / n;
    let (mut sxx, mut syy, mut sxy) = (T::zero(), T::zero(), T::zero());
    for &z in points {
        let d = z - mean;
        sxx = sxx + d.re * d.re;
        syy = syy + d.im * d.im;
        sxy = sxy + d.re * d.im;
    }
    let angle = (T::lit(2.0) * sxy).atan2(sxx - syy) / T::lit(2.0);
    let dir = Complex::new(angle.cos(), angle.sin());
    let normal = Complex::new(-dir.im, dir.re);
    let worst = points
        .iter()
        .map(|&z| dot(z - mean, normal).abs())
        .fold(T::zero(), T::max);
    (mean, dir, worst)
}

/// Algebraic (Kåsa) circle fit refined by one Gauss–Newton step on the
/// geometric residuals. Returns center, radius and the largest radial
/// residual, or `None` when the points are degenerate (e.g. collinear).
pub fn fit_circle<T: Real>(points: &[Complex<T>]) -> Option<(Complex<T>, T, T)> {
    let n = T::from_usize(points.len()).expect("count fits scalar");
    let mean = points.iter().fold(Complex::zero(), |a: Complex<T>, &z| a + z) / n;

    // minimize sum (x^2 + y^2 + D x + E y + F)^2 in centred coordinates
    let mut m = [[T::zero(); 3]; 3];
    let mut rhs = [T::zero(); 3];
    for &z in points {
        let d = z - mean;
        let row = [d.re, d.im, T::one()];
        let s = -(d.re * d.re + d.im * d.im);
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] = m[i][j] + row[i] * row[j];
            }
            rhs[i] = rhs[i] + row[i] * s;
        }
    }
    let sol = solve3(m, rhs)?;
    let c = Complex::new(-sol[0] / T::lit(2.0), -sol[1] / T::lit(2.0));
    let r2 = c.norm_sqr() - sol[2];
    if !(r2 > T::zero()) {
        return None;
    }
    let mut center = c + mean;
    let mut radius = r2.sqrt();

    // one Gauss–Newton step on r_i = |z_i - c| - R
    let mut jtj = [[T::zero(); 3]; 3];
    let mut jtr = [T::zero(); 3];
    for &z in points {
        let d = z - center;
        let dist = d.norm();
        if dist == T::zero() {
            continue;
        }
        let jac = [-d.re / dist, -d.im / dist, -T::one()];
        let r = dist - radius;
        for i in 0..3 {
            for j in 0..3 {
                jtj[i][j] = jtj[i][j] + jac[i] * jac[j];
            }
            jtr[i] = jtr[i] - jac[i] * r;
        }
    }
    if let Some(step) = solve3(jtj, jtr) {
        let cand_center = center + Complex::new(step[0], step[1]);
        let cand_radius = radius + step[2];
        if cand_radius > T::zero() && cand_center.re.is_finite() && cand_center.im.is_finite() {
            center = cand_center;
            radius = cand_radius;
        }
    }
    if !radius.is_finite() {
        return None;
    }
    let worst = points
        .iter()
        .map(|&z| ((z - center).norm() - radius).abs())
        .fold(T::zero(), T::max);
    Some((center, radius, worst))
}

/// Gaussian elimination with partial pivoting.
fn solve3<T: Real>(mut m: [[T; 3]; 3], mut b: [T; 3]) -> Option<[T; 3]> {
    let scale = m
        .iter()
        .flat_map(|r| r.iter())
        .fold(T::zero(), |a, &x| a.max(x.abs()));
    if scale == T::zero() {
        return None;
    }
    for col in 0..3 {
        let piv = (col..3).max_by(|&i, &j| {
            m[i][col]
                .abs()
                .partial_cmp(&m[j][col].abs())
                .unwrap_or(Ordering::Equal)
        })?;
        if m[piv][col].abs() <= T::epsilon() * scale {
            return None;
        }
        m.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..3 {
            let f = m[row][col] / m[col][col];
            for k in col..3 {
                m[row][k] = m[row][k] - f * m[col][k];
            }
            b[row] = b[row] - f * b[col];
        }
    }
    let mut x = [T::zero(); 3];
    for row in (0..3).rev() {
        let mut acc = b[row];
        for k in row + 1..3 {
            acc = acc - m[row][k] * x[k];
        }
        x[row] = acc / m[row][row];
    }
    Some(x)
}

/// Classifies a cloud as a segment, a circle, or neither.
///
/// The segment test runs first so that a nearly flat arc (huge fitted radius)
/// is reported as a segment.
pub fn classify_shape<T: Real>(points: &[Complex<T>], tol_rel: T) -> Result<Shape<T>> {
    if points.len() < 10 {
        return Err(Error::InvalidArgument(format!(
            "shape classification needs at least 10 points, got {}",
            points.len()
        )));
    }
    if !(tol_rel > T::zero() && tol_rel < T::lit(0.1)) {
        return Err(Error::InvalidArgument("tol_rel must lie in (0, 0.1)".into()));
    }
    let diam = convex_hull(points)?.diameter();
    let (mean, dir, line_dev) = fit_line(points);
    if line_dev <= tol_rel * diam {
        let (mut lo, mut hi) = (T::infinity(), T::neg_infinity());
        for &z in points {
            let t = dot(z - mean, dir);
            lo = lo.min(t);
            hi = hi.max(t);
        }
        let u = mean + dir * lo;
        let v = mean + dir * hi;
        return Ok(if lex_cmp(&u, &v) == Ordering::Greater {
            Shape::Segment(v, u)
        } else {
            Shape::Segment(u, v)
        });
    }
    if let Some((center, radius, dev)) = fit_circle(points) {
        if dev <= tol_rel * radius {
            return Ok(Shape::Circle { center, radius });
        }
    }
    Ok(Shape::Generic)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn square() -> ConvexPolygon<f64> {
        convex_hull(&[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 1.0), c(0.0, 1.0)]).unwrap()
    }

    #[test]
    fn square_hull() {
        let h = convex_hull(&[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0), c(1.0, 1.0), c(0.5, 0.5)])
            .unwrap();
        assert_eq!(h.kind(), Degeneracy::Proper);
        assert_eq!(
            h.vertices(),
            &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 1.0), c(0.0, 1.0)]
        );
        assert_eq!(h.area(), 1.0);
        assert!((h.diameter() - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn collinear_hull_is_segment() {
        let h = convex_hull(&[c(-1.0, 0.0), c(0.3, 0.0), c(1.0, 0.0), c(-0.7, 0.0)]).unwrap();
        assert_eq!(h.kind(), Degeneracy::Segment);
        assert_eq!(h.vertices(), &[c(-1.0, 0.0), c(1.0, 0.0)]);

        let h = convex_hull(&[c(2.0, 3.0), c(2.0, 3.0)]).unwrap();
        assert_eq!(h.kind(), Degeneracy::Point);
        assert!(convex_hull::<f64>(&[]).is_err());
    }

    #[test]
    fn collinear_edge_points_dropped() {
        let h = convex_hull(&[c(0.0, 0.0), c(0.5, 0.0), c(1.0, 0.0), c(1.0, 1.0), c(0.0, 1.0)])
            .unwrap();
        assert_eq!(h.len(), 4);
    }

    #[test]
    fn signed_distance_examples() {
        let sq = square();
        assert!((sq.signed_distance(c(0.5, 0.5)) + 0.5).abs() < 1e-15);
        assert!((sq.signed_distance(c(2.0, 0.5)) - 1.0).abs() < 1e-15);
        assert!(sq.signed_distance(c(1.0, 0.3)).abs() < 1e-15);

        let seg = convex_hull(&[c(-1.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!((seg.signed_distance(c(0.0, 1.0)) - 1.0).abs() < 1e-15);
        assert_eq!(seg.signed_distance(c(0.2, 0.0)), 0.0);

        let pt = ConvexPolygon::point(c(0.0, 0.0));
        assert_eq!(pt.signed_distance(c(3.0, 4.0)), 5.0);
    }

    #[test]
    fn separating_half_plane_examples() {
        let sq = square();
        let h = sq.separating_half_plane(c(3.0, 0.0)).unwrap();
        assert!((h.normal - c(1.0, 0.0)).norm() < 1e-12);
        assert!(h.offset > 1.0 && h.offset < 3.0);
        assert!(h.contains(c(3.0, 0.0)));
        for &v in sq.vertices() {
            assert!(!h.contains(v));
        }

        let seg = convex_hull(&[c(-1.0, 0.0), c(1.0, 0.0)]).unwrap();
        let h = seg.separating_half_plane(c(0.0, 2.0)).unwrap();
        assert!((h.normal - c(0.0, 1.0)).norm() < 1e-12);

        let h = seg.separating_half_plane(c(1.5, 0.0)).unwrap();
        assert!((h.normal - c(1.0, 0.0)).norm() < 1e-12);
        assert!(h.offset > 1.0 && h.offset < 1.5);

        assert!(matches!(
            sq.separating_half_plane(c(0.5, 0.5)),
            Err(Error::NotOutside)
        ));
        assert!(matches!(
            sq.separating_half_plane(c(1.0, 0.5)),
            Err(Error::NotOutside)
        ));
    }

    #[test]
    fn contains_matches_signed_distance() {
        let h = convex_hull(&[
            c(0.0, 0.0),
            c(2.0, -1.0),
            c(3.0, 1.0),
            c(1.0, 3.0),
            c(-1.0, 2.0),
        ])
        .unwrap();
        for i in -20..=40 {
            for j in -20..=40 {
                let z = c(i as f64 * 0.1, j as f64 * 0.1);
                let sd = h.signed_distance(z);
                if sd.abs() > 1e-12 {
                    assert_eq!(h.contains(z), sd < 0.0, "z = {z}");
                }
            }
        }
    }

    #[test]
    fn hausdorff_examples() {
        let a = vec![c(0.0, 0.0), c(1.0, 2.0)];
        assert_eq!(hausdorff(&a, &a), 0.0);
        assert_eq!(hausdorff(&[c(0.0, 0.0)], &[c(3.0, 4.0)]), 5.0);
    }

    #[test]
    fn concentric_circles() {
        let n = 4000;
        let circ = |r: f64| -> Vec<Complex64> {
            (0..n)
                .map(|k| Complex64::from_polar(r, std::f64::consts::TAU * k as f64 / n as f64))
                .collect()
        };
        let d = hausdorff(&circ(1.0), &circ(1.1));
        assert!((d - 0.1).abs() < 1e-6, "{d}");
    }

    #[test]
    fn hull_hausdorff_square_vs_shrunk() {
        let sq = square();
        let small = convex_hull(&[c(0.1, 0.1), c(0.9, 0.1), c(0.9, 0.9), c(0.1, 0.9)]).unwrap();
        let d = hull_hausdorff(&sq, &small);
        assert!((d - 0.1 * 2f64.sqrt()).abs() < 1e-12, "{d}");
        assert!(hull_excess(&small, &sq) < 1e-15);
        assert_eq!(hull_hausdorff(&sq, &sq), 0.0);

        let pt = ConvexPolygon::point(c(0.5, 0.5));
        assert!((hull_excess(&sq, &pt) - 0.5 * 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(hull_excess(&pt, &sq), 0.0);
    }

    #[test]
    fn boundary_samples_on_boundary() {
        let sq = square();
        let s = sq.boundary_samples(8);
        assert_eq!(s.len(), 8);
        assert_eq!(s[0], c(0.0, 0.0));
        assert!((s[1] - c(0.5, 0.0)).norm() < 1e-15);
        assert!((s[2] - c(1.0, 0.0)).norm() < 1e-15);
        for z in s {
            assert!(sq.signed_distance(z).abs() < 1e-15);
        }
        let seg = convex_hull(&[c(-1.0, 0.0), c(1.0, 0.0)]).unwrap();
        let s = seg.boundary_samples(4);
        assert_eq!(s, vec![c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
    }

    #[test]
    fn shape_examples() {
        let seg: Vec<_> = (0..50).map(|k| c(-1.0 + 2.0 * k as f64 / 49.0, 0.0)).collect();
        match classify_shape(&seg, 1e-3).unwrap() {
            Shape::Segment(u, v) => {
                assert!((u - c(-1.0, 0.0)).norm() < 1e-12);
                assert!((v - c(1.0, 0.0)).norm() < 1e-12);
            }
            other => panic!("{other:?}"),
        }
        let circ: Vec<_> = (0..50)
            .map(|k| c(0.5, -1.0) + Complex64::from_polar(2.0, 0.3 * k as f64))
            .collect();
        match classify_shape(&circ, 1e-3).unwrap() {
            Shape::Circle { center, radius } => {
                assert!((center - c(0.5, -1.0)).norm() < 1e-12);
                assert!((radius - 2.0).abs() < 1e-12);
            }
            other => panic!("{other:?}"),
        }
        let sq: Vec<_> = (0..40)
            .map(|k| {
                let t = k as f64 / 10.0;
                match k / 10 {
                    0 => c(t, 0.0),
                    1 => c(1.0, t - 1.0),
                    2 => c(3.0 - t, 1.0),
                    _ => c(0.0, 4.0 - t),
                }
            })
            .collect();
        assert_eq!(classify_shape(&sq, 1e-3).unwrap(), Shape::Generic);
        assert!(classify_shape(&sq[..5], 1e-3).is_err());
    }

    #[test]
    fn flat_arc_is_segment() {
        // arc of a circle with radius 1e6: sagitta far below the tolerance
        let pts: Vec<_> = (0..100)
            .map(|k| {
                let t = (k as f64 - 50.0) * 1e-8;
                c(0.0, -1e6) + Complex64::from_polar(1e6, std::f64::consts::FRAC_PI_2 + t)
            })
            .collect();
        assert!(matches!(classify_shape(&pts, 1e-3).unwrap(), Shape::Segment(..)));
    }
}
