//! Tight-binding ring with a balanced gain/loss impurity pair.
//!
//! An N-site lattice with periodic boundary conditions carries a gain
//! impurity `+iγ` on site 1 and a loss impurity `−iγ` on site d. The two
//! arcs between the impurities have uniform tunneling amplitudes `t_b`
//! (inner) and `t_0` (outer), making the Hamiltonian non-Hermitian but
//! symmetric under reflection-through-the-impurity-axis combined with
//! complex conjugation. The crate covers:
//!
//! - building and validating the dense Hamiltonian and its parity map
//!   ([`hamiltonian`]),
//! - full non-Hermitian diagonalization, phase classification, and
//!   threshold location ([`spectrum`]),
//! - an independent route to the same spectrum through the two-arc
//!   quantization condition ([`bethe`]),
//! - non-unitary wave-packet evolution with real/reciprocal intensities
//!   and the steady-state momentum that quantifies chirality
//!   ([`dynamics`]),
//! - deterministic, data-parallel parameter sweeps ([`sweeps`]), and
//! - CSV/JSON/SVG serialization plus the `pt-ring` CLI ([`io`], [`cli`]).
//!
//! The guide in `book/` walks through the same material chapter by
//! chapter; its code snippets are kept in sync with the doc-tests below.
//!
//! # Quick start
//!
//! Build a small ring, check the symmetry, and classify its phase:
//!
//! ```
//! use pt_ring::config::RingConfig;
//! use pt_ring::hamiltonian::{build_hamiltonian, build_parity, check_pt_symmetry};
//! use pt_ring::spectrum::{diagonalize, PtPhase};
//!
//! // N = 12 sites, sink at d = 5, outer/inner tunnelings 1.0 and 0.5,
//! // impurity strength 0.3 (below the |t0 - tb| threshold).
//! let config = RingConfig::new(12, 5, 1.0, 0.5, 0.3)?;
//! let h = build_hamiltonian(&config)?;
//! let parity = build_parity(&config)?;
//!
//! // reflect + conjugate leaves H invariant
//! assert!(check_pt_symmetry(&h, &parity)? < 1e-14);
//!
//! // below threshold the spectrum is entirely real
//! let spec = diagonalize(&h)?;
//! assert_eq!(spec.phase, PtPhase::Unbroken);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```
//!
//! Locate the critical impurity strength, which tracks |t0 − tb|:
//!
//! ```
//! use pt_ring::config::RingConfig;
//! use pt_ring::spectrum::find_gamma_pt;
//!
//! let base = RingConfig::new(16, 5, 1.0, 0.5, 0.0)?;
//! let threshold = find_gamma_pt(&base, 1.0)?;
//! assert!((threshold.gamma_pt - 0.5).abs() < 0.05);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```
//!
//! Evolve a packet and watch it pick up a handedness:
//!
//! ```
//! use pt_ring::config::RingConfig;
//! use pt_ring::dynamics::steady_state_momentum;
//!
//! let config = RingConfig::new(12, 6, 0.5, 1.0, 0.5)?;
//! let avg = steady_state_momentum(&config, 3, 60.0, 0.05)?;
//! assert!(avg.p_bar.abs() <= 1.0); // the lattice momentum is bounded
//! assert!(avg.p_bar > 0.1); // and the motion is chiral at this γ
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod bethe;
pub mod cli;
pub mod config;
pub mod dynamics;
pub mod expm;
pub mod hamiltonian;
pub mod io;
pub mod spectrum;
pub mod sweeps;
