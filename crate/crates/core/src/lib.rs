pub mod check;
pub mod cli;
pub mod error;
pub mod hull;
pub mod julia;
pub mod poly;
pub mod roots;
pub mod scalar;

pub use error::{Error, Result};
pub use num_complex::{Complex, Complex64};
pub use scalar::Real;

pub type Poly = poly::Polynomial<f64>;
pub type Affine = poly::AffineMap<f64>;
pub type Roots = roots::RootSet<f64>;
