//! Non-unitary wave-packet evolution and chirality observables.
//!
//! Time is measured in units of 2πħ/max(t0, tb) throughout, matching the
//! figure conventions: one unit is one Bloch-like period of the dominant
//! arc. With the exponent −iH·t_phys/ħ the scaled Planck constant drops
//! out, so evolution in normalized time depends only on the lattice.
//!
//! `evolve` propagates the raw amplitudes (net intensity carries the
//! gain/loss physics); `steady_state_momentum` renormalizes the state at
//! every step — legitimate because the momentum expectation is
//! scale-invariant — and keeps the accumulated log-norm as a separate
//! ledger so growth rates remain available.

use ndarray::{Array1, Array2};
use ndarray_linalg::{Inverse, SVD};
use num_complex::Complex64;
use thiserror::Error;

use crate::config::{ConfigError, RingConfig};
use crate::expm::matrix_exp;
use crate::hamiltonian::{build_hamiltonian, HamiltonianMatrix};

/// Eigenvector-matrix condition number beyond which the spectral
/// propagator is abandoned for scaling-and-squaring (near exceptional
/// points the eigenbasis degenerates).
pub const SPECTRAL_COND_LIMIT: f64 = 1e8;

/// Default time step, in normalized units.
pub const DEFAULT_DT: f64 = 0.05;

#[derive(Debug, Error)]
pub enum DynamicsError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("initial site m0={m0} outside 1..={n}")]
    BadInitialSite { m0: usize, n: usize },
    #[error("time step must be positive, got {0}")]
    BadTimeStep(f64),
    #[error("t_max must be non-negative, got {0}")]
    BadTmax(f64),
    #[error("averaging window must satisfy T >= dt, got T={t} dt={dt}")]
    BadWindow { t: f64, dt: f64 },
    #[error("state has zero norm")]
    ZeroNormState,
    #[error("propagator construction failed: {0}")]
    Numerical(String),
}

/// Complex site amplitudes at one instant of normalized time.
#[derive(Debug, Clone)]
pub struct WaveState {
    pub amplitudes: Array1<Complex64>,
    pub time: f64,
}

impl WaveState {
    /// Unit vector on site `m0` (1-based) at t = 0.
    pub fn localized(n: usize, m0: usize) -> Result<Self, DynamicsError> {
        if m0 < 1 || m0 > n {
            return Err(DynamicsError::BadInitialSite { m0, n });
        }
        let mut amplitudes = Array1::zeros(n);
        amplitudes[m0 - 1] = Complex64::new(1.0, 0.0);
        Ok(WaveState {
            amplitudes,
            time: 0.0,
        })
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Site intensities |f_j|².
    pub fn intensities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|z| z.norm_sqr()).collect()
    }
}

/// How a propagator was realized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PropagatorMethod {
    /// V·e^{−iΛθ}·V⁻¹ with the recorded eigenvector condition number.
    Spectral { condition: f64 },
    /// Padé scaling-and-squaring of the full exponent.
    ScalingSquaring,
}

/// One-step evolution operator U(dt) = exp(−iH·dt·2π/max(t0,tb)).
#[derive(Debug, Clone)]
pub struct Propagator {
    matrix: Array2<Complex64>,
    dt: f64,
    method: PropagatorMethod,
}

impl Propagator {
    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn method(&self) -> PropagatorMethod {
        self.method
    }

    pub fn matrix(&self) -> &Array2<Complex64> {
        &self.matrix
    }

    pub fn apply(&self, psi: &Array1<Complex64>) -> Array1<Complex64> {
        self.matrix.dot(psi)
    }
}

/// Build U = exp(−i·M·θ) for a dense matrix, preferring the spectral
/// route and falling back to scaling-and-squaring when the eigenbasis is
/// ill-conditioned.
fn propagator_dense(
    m: &Array2<Complex64>,
    theta: f64,
) -> Result<(Array2<Complex64>, PropagatorMethod), DynamicsError> {
    let n = m.nrows();
    let spectral = (|| -> Result<(Array2<Complex64>, f64), String> {
        use ndarray_linalg::Eig;
        let (vals, vecs) = m.eig().map_err(|e| e.to_string())?;
        let (_, sv, _) = vecs.svd(false, false).map_err(|e| e.to_string())?;
        let smin = sv.iter().cloned().fold(f64::INFINITY, f64::min);
        let smax = sv.iter().cloned().fold(0.0_f64, f64::max);
        if smin <= 0.0 {
            return Err("singular eigenvector matrix".into());
        }
        let condition = smax / smin;
        if condition > SPECTRAL_COND_LIMIT {
            return Err(format!("eigenvector condition number {condition:.3e}"));
        }
        let vinv = vecs.inv().map_err(|e| e.to_string())?;
        let mut phased = Array2::<Complex64>::zeros((n, n));
        for j in 0..n {
            let phase = (Complex64::new(0.0, -theta) * vals[j]).exp();
            for i in 0..n {
                phased[[i, j]] = vecs[[i, j]] * phase;
            }
        }
        Ok((phased.dot(&vinv), condition))
    })();

    match spectral {
        Ok((u, condition)) => Ok((u, PropagatorMethod::Spectral { condition })),
        Err(_) => {
            let exponent = m.mapv(|z| Complex64::new(0.0, -theta) * z);
            let u = matrix_exp(&exponent).map_err(|e| DynamicsError::Numerical(e.to_string()))?;
            Ok((u, PropagatorMethod::ScalingSquaring))
        }
    }
}

/// One-step propagator for a Hamiltonian instance; `dt` in normalized
/// time units.
pub fn make_propagator(h: &HamiltonianMatrix, dt: f64) -> Result<Propagator, DynamicsError> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(DynamicsError::BadTimeStep(dt));
    }
    let theta = dt * 2.0 * std::f64::consts::PI / h.config().t_max();
    let (matrix, method) = propagator_dense(h.matrix(), theta)?;
    Ok(Propagator { matrix, dt, method })
}

/// Momentum matrix element ⟨φ|p̂|ψ⟩ of the discrete lattice momentum with
/// periodic wraparound:
///
/// ```text
/// ⟨φ|p̂|ψ⟩ = −(i/2) Σ_j (g*_{j+1} + g*_j)(f_{j+1} − f_j) / √(⟨φ|φ⟩⟨ψ|ψ⟩)
/// ```
///
/// For φ = ψ the result is real (up to rounding) and bounded by 1 in
/// magnitude; the normalization makes it invariant under rescaling either
/// state.
pub fn momentum_matrix_element(
    phi: &WaveState,
    psi: &WaveState,
) -> Result<Complex64, DynamicsError> {
    let n = phi.amplitudes.len();
    assert_eq!(n, psi.amplitudes.len(), "state dimensions differ");
    let norm2 = phi.norm_sqr() * psi.norm_sqr();
    if norm2 <= 0.0 {
        return Err(DynamicsError::ZeroNormState);
    }
    let g = &phi.amplitudes;
    let f = &psi.amplitudes;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let jn = (j + 1) % n;
        acc += (g[jn].conj() + g[j].conj()) * (f[jn] - f[j]);
    }
    Ok(acc * Complex64::new(0.0, -0.5) / norm2.sqrt())
}

/// Momentum expectation p_ψ = ⟨ψ|p̂|ψ⟩ (real part of the matrix element).
pub fn momentum_expectation(psi: &WaveState) -> Result<f64, DynamicsError> {
    Ok(momentum_matrix_element(psi, psi)?.re)
}

/// The reciprocal-space momentum grid p_u = π(2u/N − 1) for u = 1..N.
pub fn reciprocal_momenta(n: usize) -> Vec<f64> {
    (1..=n)
        .map(|u| std::f64::consts::PI * (2.0 * u as f64 / n as f64 - 1.0))
        .collect()
}

/// Reciprocal-space intensities I_M(u) = |Σ_j e^{−i p_u j} f_j / √N|².
///
/// The transform sign is fixed so that a plane wave e^{+i p_u j} lands in
/// bin u, making the reciprocal peak sign-consistent with the momentum
/// expectation.
pub fn reciprocal_intensity(psi: &WaveState) -> Vec<f64> {
    let n = psi.amplitudes.len();
    let momenta = reciprocal_momenta(n);
    let scale = 1.0 / (n as f64).sqrt();
    momenta
        .iter()
        .map(|&p| {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 1..=n {
                let phase = Complex64::new(0.0, -p * j as f64).exp();
                acc += phase * psi.amplitudes[j - 1];
            }
            (acc * scale).norm_sqr()
        })
        .collect()
}

/// Sampled history of one evolution run.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub sample_times: Vec<f64>,
    pub states: Vec<WaveState>,
    /// Real-space intensities, row per sample, column per site.
    pub i_r: Array2<f64>,
    /// Reciprocal-space intensities, row per sample, column per u index.
    pub i_m: Array2<f64>,
    /// Momentum expectation per sample.
    pub p_t: Vec<f64>,
    /// Net intensity Σ_j I_R(j, t) per sample.
    pub net_intensity: Vec<f64>,
}

impl Trajectory {
    pub fn n_samples(&self) -> usize {
        self.sample_times.len()
    }

    pub fn n_sites(&self) -> usize {
        self.i_r.ncols()
    }
}

/// Propagate a site-localized packet and record intensities, momentum,
/// and net intensity at every step. Amplitudes are raw (no rescaling), so
/// the net intensity carries the gain/loss dynamics directly.
pub fn evolve(
    config: &RingConfig,
    m0: usize,
    t_max: f64,
    dt: f64,
) -> Result<Trajectory, DynamicsError> {
    config.validate()?;
    if !(t_max.is_finite() && t_max >= 0.0) {
        return Err(DynamicsError::BadTmax(t_max));
    }
    if !(dt.is_finite() && dt > 0.0) {
        return Err(DynamicsError::BadTimeStep(dt));
    }
    let h = build_hamiltonian(config).map_err(|e| DynamicsError::Numerical(e.to_string()))?;
    let u = make_propagator(&h, dt)?;
    let steps = (t_max / dt + 1e-9).floor() as usize;
    let n = config.n_sites;

    let mut psi = WaveState::localized(n, m0)?;
    let mut sample_times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    let mut i_r = Array2::<f64>::zeros((steps + 1, n));
    let mut i_m = Array2::<f64>::zeros((steps + 1, n));
    let mut p_t = Vec::with_capacity(steps + 1);
    let mut net = Vec::with_capacity(steps + 1);

    for s in 0..=steps {
        if s > 0 {
            psi = WaveState {
                amplitudes: u.apply(&psi.amplitudes),
                time: s as f64 * dt,
            };
        }
        sample_times.push(psi.time);
        let site_int = psi.intensities();
        let recip = reciprocal_intensity(&psi);
        for j in 0..n {
            i_r[[s, j]] = site_int[j];
            i_m[[s, j]] = recip[j];
        }
        net.push(site_int.iter().sum());
        p_t.push(momentum_expectation(&psi)?);
        states.push(psi.clone());
    }

    Ok(Trajectory {
        sample_times,
        states,
        i_r,
        i_m,
        p_t,
        net_intensity: net,
    })
}

/// Time-averaged momentum with per-step renormalization.
#[derive(Debug, Clone, Copy)]
pub struct MomentumAverage {
    /// Trapezoidal average of p_ψ(t) over [0, T].
    pub p_bar: f64,
    /// Accumulated ln‖ψ‖ over the run (growth ledger; the state itself is
    /// renormalized every step).
    pub log_norm: f64,
    /// Number of propagation steps taken.
    pub steps: usize,
}

/// Steady-state momentum p(γ): the trapezoidal average of the momentum
/// expectation over [0, T], starting from a packet on site `m0`.
///
/// The state is rescaled to unit norm after every step to avoid overflow
/// deep in the broken phase; the momentum expectation is invariant under
/// that rescaling, and the discarded growth accumulates in `log_norm`.
pub fn steady_state_momentum(
    config: &RingConfig,
    m0: usize,
    t_avg: f64,
    dt: f64,
) -> Result<MomentumAverage, DynamicsError> {
    config.validate()?;
    if !(dt.is_finite() && dt > 0.0) {
        return Err(DynamicsError::BadTimeStep(dt));
    }
    if !(t_avg.is_finite() && t_avg >= dt) {
        return Err(DynamicsError::BadWindow { t: t_avg, dt });
    }
    let h = build_hamiltonian(config).map_err(|e| DynamicsError::Numerical(e.to_string()))?;
    let u = make_propagator(&h, dt)?;
    let steps = (t_avg / dt + 0.5).floor() as usize;
    let n = config.n_sites;

    let mut psi = WaveState::localized(n, m0)?;
    let mut acc = 0.5 * momentum_expectation(&psi)?;
    let mut log_norm = 0.0_f64;
    for s in 1..=steps {
        let mut amp = u.apply(&psi.amplitudes);
        let norm = amp.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm <= 0.0 || !norm.is_finite() {
            return Err(DynamicsError::Numerical(format!(
                "state norm became {norm} at step {s}"
            )));
        }
        amp.mapv_inplace(|z| z / norm);
        log_norm += norm.ln();
        psi = WaveState {
            amplitudes: amp,
            time: s as f64 * dt,
        };
        let w = if s == steps { 0.5 } else { 1.0 };
        acc += w * momentum_expectation(&psi)?;
    }
    Ok(MomentumAverage {
        p_bar: acc / steps as f64,
        log_norm,
        steps,
    })
}
