//! Bivariate copulas with density `1 + h` for a bounded generator `h`.
//!
//! The crate provides tensor-product quadrature, generator validation, the
//! FGM, Frank, Fourier and smoothed-tent families, Spearman's rho and
//! Kendall's tau (closed-form and numeric), and a conditional-inversion
//! sampler.

pub mod copula;
pub mod error;
pub mod families;
pub mod generator;
pub mod grid;
pub mod measures;
pub mod optimal;
pub mod quadrature;
pub mod sampler;
pub mod sklar;
pub mod sum;
pub mod validate;

pub use copula::{build_copula, Copula};
pub use error::{Error, Location, Result};
pub use families::{ComplexFourierCoefficients, Fgm, FourierCoefficients, Frank};
pub use generator::{CustomGenerator, Generator, ProductGenerator};
pub use grid::{GridField, Quantity};
pub use measures::{DependenceReport, Method};
pub use num_complex::Complex64;
pub use optimal::{EpsilonFamily, Extremum};
pub use quadrature::{QuadratureKind, QuadratureRule};
pub use sampler::{sample, SampleBatch};
pub use sklar::{sklar_compose, Marginal};
pub use validate::{check_axioms, reconstruct_from_closed_form, validate_generator, AxiomReport, ValidationReport};
