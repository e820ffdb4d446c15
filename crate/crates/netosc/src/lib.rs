//! netosc — spectral analysis and exact dynamics for networks of coupled
//! identical harmonic oscillators.
//!
//! A connected undirected graph couples n unit-mass oscillators through its
//! Laplacian L. The crate covers five coupling regimes of the linear system
//! y' = G y + b(t) (elastic, damping-coupled, both with and without a
//! sinusoidal drive, plus the linearized swing equation) and computes:
//!
//! - Laplacian spectra and spectral matrix functions ([`spectral`])
//! - exact trajectories by per-mode reduction to scalar oscillators
//!   ([`dynamics`])
//! - the synchronized asymptotic state, decay rate and synchronization-time
//!   bounds ([`sync`])
//! - resonance frequencies, forced responses, transparent/blocked node
//!   classification and vibrational communicability ([`resonance`])
//! - swing-equation steady states and transient metrics ([`swing`])
//! - the polar decomposition G = U P of the damping-coupled state matrix
//!   ([`polar`])
//! - an independent fixed-step RK4 oracle ([`oracle`]) and a
//!   self-verification suite ([`verify`])
//!
//! Every solver is a pure function over immutable inputs; results are safe
//! to share across threads.
//!
//! The `netosc` binary exposes the same analyses as subcommands
//! (`spectrum`, `simulate`, `sync`, `resonance`, `swing`, `polar`,
//! `verify`); see the examples directory for library usage.

pub mod dynamics;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod polar;
pub mod report;
pub mod resonance;
pub mod spectral;
pub mod swing;
pub mod sync;
pub mod trajectory;
pub mod verify;

pub use dynamics::{
    build_g, damped_sync_eigenpairs, evolve, evolve_superposed, expm_via_modes, mode_solve,
    CouplingConfig, DriveSpec, GEigenpair, ScalarDrive,
};
pub use error::{Error, Result};
pub use graph::{builtin, builtin_dataset, Graph, NetworkDataset};
pub use spectral::{eig_sym, laplacian_spectrum, SpectralDecomposition};
pub use trajectory::{time_grid, State, Trajectory};
