//! Dense complex polynomials with ascending coefficients, plus affine maps.

use std::fmt;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest degree `compose` will produce unless told otherwise.
pub const DEFAULT_DEGREE_CAP: usize = 4096;

/// `a_0 + a_1 z + ... + a_d z^d` with `a_d != 0`.
///
/// Index `j` of the coefficient vector holds `a_j`. The constructor never trims
/// trailing coefficients: a leading coefficient below the tiny threshold is an
/// error, so the degree is always the one the caller asked for.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> Polynomial<T> {
    pub fn new(coeffs: Vec<Complex<T>>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidPolynomial("no coefficients".into()));
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite("polynomial coefficients"));
        }
        let lead = coeffs[coeffs.len() - 1];
        if lead.norm() < T::tiny() {
            return Err(Error::InvalidPolynomial(format!(
                "leading coefficient of degree-{} term is zero",
                coeffs.len() - 1
            )));
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[T]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex::new(c, T::zero())).collect())
    }

    /// `c z^d`.
    pub fn monomial(c: Complex<T>, degree: usize) -> Result<Self> {
        let mut coeffs = vec![Complex::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    /// Chebyshev polynomial of the first kind, built from
    /// `T_{n+1} = 2 z T_n - T_{n-1}`.
    pub fn chebyshev(degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidArgument(
                "Chebyshev degree must be at least 1".into(),
            ));
        }
        let two = T::lit(2.0);
        let mut prev = vec![T::one()];
        let mut cur = vec![T::zero(), T::one()];
        for _ in 1..degree {
            let mut next = vec![T::zero(); cur.len() + 1];
            for (j, &c) in cur.iter().enumerate() {
                next[j + 1] = next[j + 1] + two * c;
            }
            for (j, &c) in prev.iter().enumerate() {
                next[j] = next[j] - c;
            }
            prev = cur;
            cur = next;
        }
        Self::from_real(&cur)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    #[inline]
    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    #[inline]
    pub fn leading(&self) -> Complex<T> {
        self.coeffs[self.degree()]
    }

    pub fn into_coeffs(self) -> Vec<Complex<T>> {
        self.coeffs
    }

    /// Largest coefficient modulus.
    pub fn scale(&self) -> T {
        self.coeffs
            .iter()
            .map(|c| c.norm())
            .fold(T::zero(), T::max)
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.im == T::zero())
    }

    pub fn require_degree(&self, required: usize) -> Result<()> {
        if self.degree() < required {
            Err(Error::DegreeTooLow {
                degree: self.degree(),
                required,
            })
        } else {
            Ok(())
        }
    }

    /// Horner evaluation.
    #[inline]
    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        horner(&self.coeffs, z)
    }

    /// `(p(z), p'(z))` in a single Horner pass.
    #[inline]
    pub fn eval_with_derivative(&self, z: Complex<T>) -> (Complex<T>, Complex<T>) {
        horner_with_derivative(&self.coeffs, z)
    }

    /// `sum |a_j| r^j`, the rounding-error scale of `eval` at modulus `r`.
    pub fn abs_eval(&self, r: T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * r + c.norm())
    }

    /// Formal derivative. The result may be a nonzero constant.
    pub fn derivative(&self) -> Result<Self> {
        self.require_degree(1)?;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, &c)| c * T::from_usize(j).expect("index fits scalar"))
            .collect();
        Self::new(coeffs)
    }

    /// `p(z) - w`.
    pub fn shifted(&self, w: Complex<T>) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] = coeffs[0] - w;
        Self { coeffs }
    }

    pub fn scaled(&self, k: Complex<T>) -> Result<Self> {
        Self::new(self.coeffs.iter().map(|&c| c * k).collect())
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Self::new(convolve(&self.coeffs, &other.coeffs))
    }

    /// `self ∘ inner` with the default degree cap.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.compose_with_cap(inner, DEFAULT_DEGREE_CAP)
    }

    pub fn compose_with_cap(&self, inner: &Self, cap: usize) -> Result<Self> {
        let degree = self.degree() * inner.degree();
        if degree > cap {
            return Err(Error::DegreeCap { degree, cap });
        }
        // Horner over polynomials: ((a_d q + a_{d-1}) q + ...) + a_0.
        let mut acc = vec![self.leading()];
        for &a in self.coeffs.iter().rev().skip(1) {
            acc = convolve(&acc, &inner.coeffs);
            acc[0] = acc[0] + a;
        }
        Self::new(acc)
    }

    /// `p∘p∘...∘p`, `n >= 1` times.
    pub fn iterate(&self, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("iterate count must be >= 1".into()));
        }
        let mut out = self.clone();
        for _ in 1..n {
            out = self.compose(&out)?;
        }
        Ok(out)
    }

    /// `g ∘ p ∘ g⁻¹`, expanded.
    pub fn conjugate(&self, g: &AffineMap<T>) -> Self {
        let inv = g.inverse();
        let inner = Self {
            coeffs: vec![inv.b, inv.a],
        };
        let composed = self
            .compose_with_cap(&inner, usize::MAX)
            .expect("affine composition preserves degree");
        let mut coeffs: Vec<_> = composed.coeffs.iter().map(|&c| c * g.a).collect();
        coeffs[0] = coeffs[0] + g.b;
        Self { coeffs }
    }

    /// Radius `R = max(1, (2 + sum_{j<d} |a_j|) / |a_d|)`.
    ///
    /// For `|z| >= R` this gives `|p(z)| >= 2|z|`, so `p⁻¹(D_R) ⊂ D_R` and any
    /// orbit leaving `D_R` diverges.
    pub fn escape_radius(&self) -> T {
        let d = self.degree();
        let lower: T = self.coeffs[..d]
            .iter()
            .map(|c| c.norm())
            .fold(T::zero(), |a, b| a + b);
        T::one().max((T::lit(2.0) + lower) / self.leading().norm())
    }

    /// Largest coefficient-wise distance to `other` (padded with zeros).
    pub fn max_coeff_diff(&self, other: &Self) -> T {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|j| {
                let a = self.coeffs.get(j).copied().unwrap_or_else(Complex::zero);
                let b = other.coeffs.get(j).copied().unwrap_or_else(Complex::zero);
                (a - b).norm()
            })
            .fold(T::zero(), T::max)
    }

    pub fn cast<U: Real>(&self) -> Polynomial<U> {
        Polynomial {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| Complex::new(U::lit(c.re.as_f64()), U::lit(c.im.as_f64())))
                .collect(),
        }
    }
}

impl<T: Real> Polynomial<T> {
    /// Ascending comma-separated coefficients, e.g. `-1,0,2` or `0,0,1+0.5i`.
    /// Each number uses the shortest representation that parses back exactly.
    pub fn coefficient_list(&self) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|c| {
                if c.im == T::zero() {
                    format!("{}", c.re)
                } else {
                    format!("{}{:+}i", c.re, c.im)
                }
            })
            .collect();
        parts.join(",")
    }
}

impl<T: Real> fmt::Display for Polynomial<T> {
    /// Human-readable form, highest power first, e.g. `(2)z^2 + (-1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.im == T::zero() {
                write!(f, "({})", c.re)?;
            } else {
                write!(f, "({}{:+}i)", c.re, c.im)?;
            }
            match j {
                0 => {}
                1 => write!(f, "z")?,
                _ => write!(f, "z^{j}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[inline]
pub(crate) fn horner<T: Real>(coeffs: &[Complex<T>], z: Complex<T>) -> Complex<T> {
    coeffs
        .iter()
        .rev()
        .fold(Complex::zero(), |acc, &c| acc * z + c)
}

#[inline]
pub(crate) fn horner_with_derivative<T: Real>(
    coeffs: &[Complex<T>],
    z: Complex<T>,
) -> (Complex<T>, Complex<T>) {
    let mut p = Complex::zero();
    let mut dp = Complex::zero();
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn convolve<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Vec<Complex<T>> {
    let mut out = vec![Complex::zero(); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = out[i + j] + x * y;
        }
    }
    out
}

/// `g(z) = a z + b` with `a != 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AffineMap<T> {
    pub a: Complex<T>,
    pub b: Complex<T>,
}

impl<T: Real> AffineMap<T> {
    pub fn new(a: Complex<T>, b: Complex<T>) -> Result<Self> {
        if !(a.re.is_finite() && a.im.is_finite() && b.re.is_finite() && b.im.is_finite()) {
            return Err(Error::NonFinite("affine map"));
        }
        if a.norm() < T::tiny() {
            return Err(Error::SingularAffineMap);
        }
        Ok(Self { a, b })
    }

    pub fn identity() -> Self {
        Self {
            a: Complex::one(),
            b: Complex::zero(),
        }
    }

    #[inline]
    pub fn apply(&self, z: Complex<T>) -> Complex<T> {
        self.a * z + self.b
    }

    /// `z ↦ (z - b) / a`.
    pub fn inverse(&self) -> Self {
        let a = self.a.inv();
        Self { a, b: -self.b * a }
    }

    /// `self ∘ other`.
    pub fn then_after(&self, other: &Self) -> Self {
        Self {
            a: self.a * other.a,
            b: self.a * other.b + self.b,
        }
    }
}
