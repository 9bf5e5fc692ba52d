//! Recovery of wavelet coefficients of compactly supported one-dimensional
//! functions from uniform Fourier samples by generalized sampling.
//!
//! The crate assembles the cross-Gram matrix between an orthonormal wavelet
//! reconstruction basis (Haar, Daubechies) and truncated Fourier sampling
//! vectors, solves the least-squares recovery problem, computes the
//! subspace-angle conditioning quantity, and searches for the stable
//! sampling rate: the least number of samples keeping the condition number
//! of the recovery below a chosen bound.
//!
//! Start with the runnable programs under `examples/`; the `gensamp` binary
//! wraps the same entry points behind `ssr`, `table`, `reconstruct` and
//! `verify` subcommands.

pub mod cli;
pub mod error;
pub mod gs;
pub mod oracle;
pub mod sampling;
pub mod ssr;
pub mod wavelet;

pub use error::{Error, Result};
