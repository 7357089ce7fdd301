//! Energy-efficient transmit optimization for multi-antenna wiretap channels.
//!
//! A legitimate transmitter (Alice, `N_A` antennas) communicates with a
//! receiver (Bob, `N_B` antennas) in the presence of an eavesdropper (Eve,
//! `N_E` antennas). Instead of maximizing the secrecy rate, the solvers in
//! this crate maximize two bit-per-Joule metrics:
//!
//! - **SEE** (secrecy energy efficiency): secrecy rate over consumed power
//!   `mu * tr(Q) + Pc`;
//! - **SKEE** (secret-key energy efficiency): secret-key rate over the same
//!   consumed power.
//!
//! Both metrics are fractional and generally non-concave in the transmit
//! covariance `Q`. They are handled with Dinkelbach's algorithm for the
//! single-ratio fractional structure, combined with sequential convex
//! optimization where the numerator is a difference of concave functions.
//! Solvers are provided for the single-antenna-receiver case (closed-form
//! assisted scalar power control plus generalized-eigenvector beamforming)
//! and for the full matrix case, under both perfect and statistical
//! knowledge of the eavesdropper channel.
//!
//! Module map:
//!
//! - [`specfun`] — exponential-integral kernels for the statistical-CSI
//!   closed forms;
//! - [`hermlin`] — small dense complex Hermitian linear algebra
//!   (eigendecomposition, matrix pencils, log-determinants, PSD projection);
//! - [`model`] — channel/power data types, the four performance metrics,
//!   and reproducible Monte Carlo estimators;
//! - [`fracprog`] — Dinkelbach's algorithm over pluggable inner maximizers
//!   and a derivative-bisection scalar maximizer;
//! - [`miso`] — the four single-antenna-receiver solvers;
//! - [`mimo`] — covariance solvers: sequential convex optimization,
//!   eigenmode selection, and the statistical-CSI variants;
//! - [`oracles`] — brute-force references used by tests and validation;
//! - [`harness`] — experiment configs, Monte Carlo sweeps, CSV emission;
//! - [`validate`] — runtime invariant suites behind the CLI `validate`
//!   subcommand.

pub mod fracprog;
pub mod harness;
pub mod hermlin;
pub mod mimo;
pub mod miso;
pub mod model;
pub mod oracles;
pub mod report;
pub mod specfun;
pub mod validate;

/// Complex scalar used throughout the crate.
pub type C64 = nalgebra::Complex<f64>;

/// Dense complex matrix (column-major, heap-allocated).
pub type CMat = nalgebra::DMatrix<C64>;

/// Dense complex column vector.
pub type CVec = nalgebra::DVector<C64>;
