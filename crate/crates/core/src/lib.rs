//! Dense complex-matrix toolkit for numerical radius computations.
//!
//! The crate computes numerical radii and p-numerical radii, Schatten
//! p-norms, polar decompositions and block-matrix contractions, and
//! evaluates a family of upper bounds for the numerical radius (several of
//! them refined by a Cauchy–Schwarz defect term) together with lower bounds
//! for the energy of a simple graph.
//!
//! Every bound is returned as a [`BoundResult`] carrying both the bound and
//! the exact quantity it bounds, so callers can check it directly.
//!
//! ```
//! use numrad::{ComplexMatrix, radius::numerical_radius};
//!
//! let t = ComplexMatrix::from_real(3, 3, &[0., 1., 0., 0., 0., 2., 0., 0., 0.]).unwrap();
//! let w = numerical_radius(&t, None).unwrap();
//! assert!((w.value - 5f64.sqrt() / 2.0).abs() < 1e-9);
//! ```

pub mod bounds;
pub mod error;
pub mod graph;
pub mod harness;
pub mod linalg;
pub mod radius;

pub use bounds::{BoundKind, BoundReport, BoundResult, PointwiseCheck};
pub use error::{Error, Result};
pub use graph::{EnergyReport, Graph};
pub use linalg::{ComplexMatrix, HermitianEigen, PolarDecomposition, SingularValueDecomposition};
pub use num_complex::Complex64;
pub use radius::RadiusResult;

