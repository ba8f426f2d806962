//! Eigendecomposition of the ring Hamiltonian and phase classification.
//!
//! The spectrum is real as long as the impurity strength stays below a
//! critical value; past it, eigenvalues leave the real axis in complex
//! conjugate pairs. [`diagonalize`] classifies the phase from the largest
//! imaginary part, [`spectral_checks`] verifies the textbook properties
//! of the spectrum (band bound, particle-hole pairing for even N,
//! conjugate pairing), and [`find_gamma_pt`] locates the threshold by
//! bisection in γ.

use ndarray::Array2;
use ndarray_linalg::Eig;
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::config::{ConfigError, RingConfig};
use crate::hamiltonian::{build_hamiltonian, HamiltonianMatrix};

/// Relative scale of the imaginary-part threshold: an eigenvalue counts as
/// complex when |Im λ| > IMAG_TOL_SCALE · max(t0, tb). Sits well above
/// eigensolver noise (~1e−13) and well below physical imaginary parts near
/// the threshold (~1e−2).
pub const IMAG_TOL_SCALE: f64 = 1e-8;

/// Default absolute bisection tolerance for the threshold, in units of
/// max(t0, tb).
pub const GAMMA_PT_TOL_SCALE: f64 = 1e-4;

#[derive(Debug, Clone, Error)]
pub enum SpectrumError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("eigensolver failed to converge for N={n}, d={d}, t0={t0}, tb={tb}, gamma={gamma}: {detail}")]
    EigensolverFailure {
        n: usize,
        d: usize,
        t0: f64,
        tb: f64,
        gamma: f64,
        detail: String,
    },
    #[error("no unbroken/broken transition found for gamma in [0, {cap}] (N={n}, d={d}, t0={t0}, tb={tb})")]
    NoTransitionInBracket {
        cap: f64,
        n: usize,
        d: usize,
        t0: f64,
        tb: f64,
    },
}

/// Phase of the spectrum: all-real (`Unbroken`) or containing complex
/// conjugate pairs (`Broken`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PtPhase {
    Unbroken,
    Broken,
}

/// Eigenvalues, eigenvectors, and the phase classification of one
/// Hamiltonian instance.
#[derive(Debug, Clone)]
pub struct SpectralResult {
    /// Eigenvalues sorted by (Re, Im).
    pub eigenvalues: Vec<Complex64>,
    /// Unit-norm right eigenvectors; column j belongs to eigenvalues[j].
    pub eigenvectors: Array2<Complex64>,
    /// max_j |Im λ_j|.
    pub max_imag: f64,
    /// Phase under the recorded tolerance.
    pub phase: PtPhase,
    /// Absolute threshold on |Im λ| used for the classification.
    pub imag_tolerance: f64,
}

impl SpectralResult {
    /// Largest eigenpair residual ‖Hv − λv‖, for diagnostics.
    pub fn max_residual(&self, h: &HamiltonianMatrix) -> f64 {
        let mut worst = 0.0_f64;
        for (j, &lambda) in self.eigenvalues.iter().enumerate() {
            let v = self.eigenvectors.column(j).to_owned();
            let r = h.apply(&v) - lambda * &v;
            let norm = r.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            worst = worst.max(norm);
        }
        worst
    }
}

/// Dense non-Hermitian eigendecomposition with phase classification.
pub fn diagonalize(h: &HamiltonianMatrix) -> Result<SpectralResult, SpectrumError> {
    let cfg = h.config();
    let (raw_vals, raw_vecs) = h.matrix().eig().map_err(|e| SpectrumError::EigensolverFailure {
        n: cfg.n_sites,
        d: cfg.sink_site,
        t0: cfg.t_outer,
        tb: cfg.t_inner,
        gamma: cfg.gamma,
        detail: e.to_string(),
    })?;

    // canonical ordering: sort eigenpairs by (Re, Im)
    let n = h.dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        let (x, y) = (raw_vals[a], raw_vals[b]);
        x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im))
    });

    let eigenvalues: Vec<Complex64> = order.iter().map(|&j| raw_vals[j]).collect();
    let mut eigenvectors = Array2::<Complex64>::zeros((n, n));
    for (dst, &src) in order.iter().enumerate() {
        let col = raw_vecs.column(src);
        let norm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for i in 0..n {
            eigenvectors[[i, dst]] = col[i] / norm;
        }
    }

    let max_imag = eigenvalues.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    let imag_tolerance = IMAG_TOL_SCALE * cfg.t_max();
    let phase = if max_imag > imag_tolerance {
        PtPhase::Broken
    } else {
        PtPhase::Unbroken
    };

    Ok(SpectralResult {
        eigenvalues,
        eigenvectors,
        max_imag,
        phase,
        imag_tolerance,
    })
}

/// Convenience: build and diagonalize in one step.
pub fn diagonalize_config(config: &RingConfig) -> Result<SpectralResult, SpectrumError> {
    let h = build_hamiltonian(config).map_err(|e| match e {
        crate::hamiltonian::HamiltonianError::Config(c) => SpectrumError::Config(c),
        other => SpectrumError::EigensolverFailure {
            n: config.n_sites,
            d: config.sink_site,
            t0: config.t_outer,
            tb: config.t_inner,
            gamma: config.gamma,
            detail: other.to_string(),
        },
    })?;
    diagonalize(&h)
}

/// Diagnostic report over one spectrum: band bound, particle-hole pairing,
/// and conjugate pairing.
#[derive(Debug, Clone, Serialize)]
pub struct SpectralReport {
    /// Largest |Re λ| over the spectrum.
    pub max_abs_re: f64,
    /// The bound 2·max(t0, tb).
    pub band_bound: f64,
    /// All |Re λ| ≤ bound + 1e−9 (checked when the phase is unbroken).
    pub bound_ok: bool,
    /// Whether N is even.
    pub even_n: bool,
    /// Hausdorff-style deviation between the spectrum and its negation.
    pub particle_hole_deviation: f64,
    /// particle_hole_deviation ≤ 1e−10 · scale.
    pub particle_hole_symmetric: bool,
    /// Deviation between the complex part of the spectrum and its conjugate.
    pub conjugate_pairing_deviation: f64,
    /// All complex eigenvalues pair up as (λ, λ̄) within 1e−10 · scale.
    pub conjugate_pairing_ok: bool,
}

/// For each value in `a`, distance to the nearest value in `b`; returns the
/// largest such distance (one-sided matching deviation).
fn matching_deviation(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .map(|x| {
            b.iter()
                .map(|y| (x - y).norm())
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}

/// Run the spectrum diagnostics for a result obtained from `config`.
pub fn spectral_checks(s: &SpectralResult, config: &RingConfig) -> SpectralReport {
    let scale = config.t_max();
    let band_bound = 2.0 * scale;
    let max_abs_re = s
        .eigenvalues
        .iter()
        .map(|z| z.re.abs())
        .fold(0.0, f64::max);
    let bound_ok = match s.phase {
        PtPhase::Unbroken => max_abs_re <= band_bound + 1e-9,
        PtPhase::Broken => true, // bound is only asserted for real spectra
    };

    let negated: Vec<Complex64> = s.eigenvalues.iter().map(|z| -z).collect();
    let particle_hole_deviation = matching_deviation(&s.eigenvalues, &negated)
        .max(matching_deviation(&negated, &s.eigenvalues));
    let particle_hole_symmetric = particle_hole_deviation <= 1e-10 * scale.max(1.0);

    let complex_part: Vec<Complex64> = s
        .eigenvalues
        .iter()
        .copied()
        .filter(|z| z.im.abs() > s.imag_tolerance)
        .collect();
    let conjugated: Vec<Complex64> = complex_part.iter().map(|z| z.conj()).collect();
    let conjugate_pairing_deviation = matching_deviation(&complex_part, &conjugated)
        .max(matching_deviation(&conjugated, &complex_part));
    let conjugate_pairing_ok = conjugate_pairing_deviation <= 1e-10 * scale.max(1.0);

    SpectralReport {
        max_abs_re,
        band_bound,
        bound_ok,
        even_n: config.n_sites % 2 == 0,
        particle_hole_deviation,
        particle_hole_symmetric,
        conjugate_pairing_deviation,
        conjugate_pairing_ok,
    }
}

/// Output of the threshold search.
#[derive(Debug, Clone, Serialize)]
pub struct ThresholdResult {
    /// Critical impurity strength.
    pub gamma_pt: f64,
    /// Bisection iterations performed.
    pub iterations: u32,
    /// Total eigensolves spent (pre-scan + bracket expansion + bisection).
    pub evaluations: u32,
}

fn phase_at(base: &RingConfig, gamma: f64) -> Result<PtPhase, SpectrumError> {
    let cfg = base.with_gamma(gamma)?;
    Ok(diagonalize_config(&cfg)?.phase)
}

/// Locate the critical impurity strength by bisection on the phase
/// classifier. `base.gamma` is ignored.
///
/// The bracket `[0, bracket_max]` is expanded geometrically (up to 2^12 ×)
/// if the top end is not yet broken. A 20-point coarse pre-scan guards
/// against a non-monotone boundary: bisection runs inside the first
/// unbroken→broken interval of the scan.
pub fn find_gamma_pt(base: &RingConfig, bracket_max: f64) -> Result<ThresholdResult, SpectrumError> {
    let mut evaluations = 0u32;
    let mut probe = |g: f64| -> Result<PtPhase, SpectrumError> {
        evaluations += 1;
        phase_at(base, g)
    };

    let no_transition = |cap: f64| SpectrumError::NoTransitionInBracket {
        cap,
        n: base.n_sites,
        d: base.sink_site,
        t0: base.t_outer,
        tb: base.t_inner,
    };

    // expand until the top of the bracket is broken
    let mut hi = bracket_max.max(f64::MIN_POSITIVE);
    let mut expansions = 0;
    while probe(hi)? == PtPhase::Unbroken {
        expansions += 1;
        if expansions > 12 {
            return Err(no_transition(hi));
        }
        hi *= 2.0;
    }

    // coarse pre-scan: take the first unbroken -> broken interval
    const PRESCAN: usize = 20;
    let mut lo = 0.0_f64;
    let mut hi_bracket = hi;
    let mut prev_g = 0.0_f64;
    let mut prev_phase = probe(0.0)?;
    if prev_phase == PtPhase::Broken {
        // γ = 0 is Hermitian and cannot be broken; treat as immediate bracket
        return Ok(ThresholdResult {
            gamma_pt: 0.0,
            iterations: 0,
            evaluations,
        });
    }
    for i in 1..=PRESCAN {
        let g = hi * i as f64 / PRESCAN as f64;
        let ph = probe(g)?;
        if prev_phase == PtPhase::Unbroken && ph == PtPhase::Broken {
            lo = prev_g;
            hi_bracket = g;
            break;
        }
        prev_g = g;
        prev_phase = ph;
        if i == PRESCAN {
            return Err(no_transition(hi));
        }
    }

    let tol = GAMMA_PT_TOL_SCALE * base.t_max();
    let mut iterations = 0u32;
    while hi_bracket - lo > tol {
        iterations += 1;
        let mid = 0.5 * (lo + hi_bracket);
        match probe(mid)? {
            PtPhase::Unbroken => lo = mid,
            PtPhase::Broken => hi_bracket = mid,
        }
        if iterations > 200 {
            break;
        }
    }

    Ok(ThresholdResult {
        gamma_pt: 0.5 * (lo + hi_bracket),
        iterations,
        evaluations,
    })
}

/// Greedy nearest-neighbor multiset matching between two complex lists.
/// Returns the largest pairing distance, or `None` when the lengths differ.
pub fn match_multisets(a: &[Complex64], b: &[Complex64]) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    let mut remaining: Vec<Complex64> = b.to_vec();
    let mut worst = 0.0_f64;
    for &x in a {
        let (idx, dist) = remaining
            .iter()
            .enumerate()
            .map(|(i, y)| (i, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))?;
        worst = worst.max(dist);
        remaining.swap_remove(idx);
    }
    Some(worst)
}

/// All eigenvalues as an (Re, Im) vector, for serialization.
pub fn eigenvalues_re_im(s: &SpectralResult) -> Vec<(f64, f64)> {
    s.eigenvalues.iter().map(|z| (z.re, z.im)).collect()
}

/// Helper used by tests and sweeps: λ with the largest imaginary part.
pub fn max_im_eigenvalue(s: &SpectralResult) -> f64 {
    s.eigenvalues.iter().map(|z| z.im).fold(f64::NEG_INFINITY, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::build_hamiltonian;

    fn cfg(n: usize, d: usize, t0: f64, tb: f64, g: f64) -> RingConfig {
        RingConfig::new(n, d, t0, tb, g).unwrap()
    }

    #[test]
    fn uniform_four_ring() {
        let c = cfg(4, 3, 1.0, 1.0, 0.0);
        let s = diagonalize_config(&c).unwrap();
        let expected = [-2.0, 0.0, 0.0, 2.0];
        for (got, want) in s.eigenvalues.iter().zip(expected) {
            assert!((got.re - want).abs() < 1e-12, "{got} vs {want}");
            assert!(got.im.abs() < 1e-12);
        }
        assert_eq!(s.phase, PtPhase::Unbroken);
    }

    #[test]
    fn uniform_ring_dispersion() {
        // E = -2 cos(2πm/N) for the clean ring
        let n = 8;
        let c = cfg(n, 5, 1.0, 1.0, 0.0);
        let s = diagonalize_config(&c).unwrap();
        let mut expected: Vec<f64> = (0..n)
            .map(|m| -2.0 * (2.0 * std::f64::consts::PI * m as f64 / n as f64).cos())
            .collect();
        expected.sort_by(f64::total_cmp);
        for (got, want) in s.eigenvalues.iter().zip(expected) {
            assert!((got.re - want).abs() < 1e-12);
        }
    }

    #[test]
    fn below_threshold_is_unbroken() {
        // γ < |t0 - tb| keeps the spectrum real
        let c = cfg(40, 11, 1.0, 0.5, 0.3);
        let s = diagonalize_config(&c).unwrap();
        assert_eq!(s.phase, PtPhase::Unbroken);
        assert!(s.max_imag <= s.imag_tolerance);
    }

    #[test]
    fn above_threshold_is_broken() {
        let c = cfg(40, 11, 1.0, 0.5, 0.7);
        let s = diagonalize_config(&c).unwrap();
        assert_eq!(s.phase, PtPhase::Broken);
    }

    #[test]
    fn residuals_are_small() {
        let c = cfg(24, 9, 0.8, 1.1, 0.5);
        let h = build_hamiltonian(&c).unwrap();
        let s = diagonalize(&h).unwrap();
        assert!(s.max_residual(&h) <= 1e-10 * h.norm_inf());
    }

    #[test]
    fn bound_check_at_gamma_zero() {
        let c = cfg(40, 11, 1.0, 0.5, 0.0);
        let s = diagonalize_config(&c).unwrap();
        let rep = spectral_checks(&s, &c);
        assert!(rep.bound_ok);
        assert!(rep.max_abs_re <= 2.0 + 1e-9);
    }

    #[test]
    fn particle_hole_iff_even() {
        let even = cfg(8, 4, 1.0, 0.6, 0.0);
        let s = diagonalize_config(&even).unwrap();
        let rep = spectral_checks(&s, &even);
        assert!(rep.even_n && rep.particle_hole_symmetric, "{rep:?}");

        let odd = cfg(7, 4, 1.0, 0.6, 0.0);
        let s = diagonalize_config(&odd).unwrap();
        let rep = spectral_checks(&s, &odd);
        assert!(!rep.even_n);
        assert!(!rep.particle_hole_symmetric, "{rep:?}");
    }

    #[test]
    fn broken_phase_pairs_conjugates() {
        let c = cfg(32, 16, 0.5, 1.0, 0.75);
        let s = diagonalize_config(&c).unwrap();
        assert_eq!(s.phase, PtPhase::Broken);
        let rep = spectral_checks(&s, &c);
        assert!(rep.conjugate_pairing_ok, "{rep:?}");
    }

    #[test]
    fn threshold_fig3_config() {
        // t0=0.5, tb=1.0: threshold at |t0 - tb| = 0.5 in absolute units
        let base = cfg(32, 16, 0.5, 1.0, 0.0);
        let r = find_gamma_pt(&base, 1.2).unwrap();
        assert!(
            (r.gamma_pt - 0.5).abs() < 0.02,
            "gamma_pt = {} after {} iterations",
            r.gamma_pt,
            r.iterations
        );
    }

    #[test]
    fn threshold_equal_arcs_is_tiny() {
        let base = cfg(40, 21, 1.0, 1.0, 0.0);
        let r = find_gamma_pt(&base, 0.2).unwrap();
        assert!(r.gamma_pt <= 0.05, "gamma_pt = {}", r.gamma_pt);
    }

    #[test]
    fn threshold_needs_bracket_expansion() {
        // start with an absurdly small bracket; expansion must rescue it
        let base = cfg(20, 6, 1.0, 0.4, 0.0);
        let r = find_gamma_pt(&base, 0.01).unwrap();
        assert!((r.gamma_pt - 0.6).abs() < 0.05, "gamma_pt = {}", r.gamma_pt);
    }

    #[test]
    fn mirrored_config_same_spectrum() {
        for c in [cfg(10, 3, 1.0, 0.5, 0.3), cfg(9, 4, 0.7, 1.2, 0.4)] {
            let a = diagonalize_config(&c).unwrap();
            let b = diagonalize_config(&c.mirrored()).unwrap();
            let dev = match_multisets(&a.eigenvalues, &b.eigenvalues).unwrap();
            assert!(dev <= 1e-10, "mirror deviation {dev}");
        }
    }

    #[test]
    fn match_multisets_rejects_length_mismatch() {
        let a = vec![Complex64::new(1.0, 0.0)];
        let b = vec![];
        assert!(match_multisets(&a, &b).is_none());
    }
}
