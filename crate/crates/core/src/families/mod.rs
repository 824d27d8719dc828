//! Closed-form copula families and their generators.

pub mod archimedean;
pub mod complex_fourier;
pub mod fgm;
pub mod fourier;
pub mod frank;

pub use archimedean::{archimedean_h, ArchimedeanGenerator, FrankGenerator};
pub use complex_fourier::{ComplexFourierCoefficients, ComplexTerm};
pub use fgm::Fgm;
pub use fourier::{FourierCoefficients, TrigSeries, ASYMMETRY_GRID};
pub use frank::Frank;
