//! Multi-frequency reconstruction of planar Helmholtz sources on a disc from
//! boundary measurements, via Fourier-Bessel expansions and the closed-form
//! singular system of the forward operator.

pub mod error;
pub mod fbbasis;
pub mod forward;
pub mod freqplan;
pub mod kmatrix;
pub mod pipeline;
pub mod quadrature;
pub mod specfun;
pub mod sve;

pub use error::{Error, Result, Stage};
pub use num_complex::Complex64;
