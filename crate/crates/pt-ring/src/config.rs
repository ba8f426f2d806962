//! Lattice configuration: ring size, impurity placement, and the two
//! tunneling amplitudes.
//!
//! The ring has `N` sites with periodic boundary conditions. A gain
//! impurity `+iγ` sits on site 1 and a loss impurity `−iγ` on site `d`.
//! The two arcs connecting them carry uniform tunneling amplitudes:
//! bonds `1 ≤ i < d` (the inner arc) carry `t_b`, bonds `d ≤ i ≤ N`
//! (the outer arc, including the wrap bond `N → 1`) carry `t_0`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Validation failure for a lattice configuration. Each variant names the
/// offending field.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("n_sites must be at least 3, got {0}")]
    TooFewSites(usize),
    #[error("sink_site must satisfy 2 <= d <= n_sites, got d={d} for n_sites={n}")]
    SinkOutOfRange { d: usize, n: usize },
    #[error("t_inner must be positive and finite, got {0}")]
    NonPositiveInnerTunneling(f64),
    #[error("t_outer must be positive and finite, got {0}")]
    NonPositiveOuterTunneling(f64),
    #[error("gamma must be non-negative and finite, got {0}")]
    NegativeGamma(f64),
    #[error("hbar must be positive and finite, got {0}")]
    NonPositiveHbar(f64),
}

/// Full physical description of one ring instance.
///
/// Immutable after construction; all solver entry points take it by
/// reference and are safe to call concurrently.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RingConfig {
    /// Number of lattice sites N (≥ 3).
    pub n_sites: usize,
    /// Loss-impurity site d, with 2 ≤ d ≤ N. Gain is fixed at site 1.
    pub sink_site: usize,
    /// Inner-arc tunneling t_b > 0 (bonds 1 ≤ i < d).
    pub t_inner: f64,
    /// Outer-arc tunneling t_0 > 0 (bonds d ≤ i ≤ N, including N → 1).
    pub t_outer: f64,
    /// Impurity strength γ ≥ 0.
    pub gamma: f64,
    /// Scaled Planck constant (default 1).
    pub hbar: f64,
}

impl RingConfig {
    /// Validated constructor with ħ = 1.
    pub fn new(
        n_sites: usize,
        sink_site: usize,
        t_outer: f64,
        t_inner: f64,
        gamma: f64,
    ) -> Result<Self, ConfigError> {
        let cfg = RingConfig {
            n_sites,
            sink_site,
            t_inner,
            t_outer,
            gamma,
            hbar: 1.0,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Replace γ, revalidating.
    pub fn with_gamma(&self, gamma: f64) -> Result<Self, ConfigError> {
        let mut cfg = self.clone();
        cfg.gamma = gamma;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Replace ħ, revalidating.
    pub fn with_hbar(&self, hbar: f64) -> Result<Self, ConfigError> {
        let mut cfg = self.clone();
        cfg.hbar = hbar;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.n_sites < 3 {
            return Err(ConfigError::TooFewSites(self.n_sites));
        }
        if self.sink_site < 2 || self.sink_site > self.n_sites {
            return Err(ConfigError::SinkOutOfRange {
                d: self.sink_site,
                n: self.n_sites,
            });
        }
        if !(self.t_inner.is_finite() && self.t_inner > 0.0) {
            return Err(ConfigError::NonPositiveInnerTunneling(self.t_inner));
        }
        if !(self.t_outer.is_finite() && self.t_outer > 0.0) {
            return Err(ConfigError::NonPositiveOuterTunneling(self.t_outer));
        }
        if !(self.gamma.is_finite() && self.gamma >= 0.0) {
            return Err(ConfigError::NegativeGamma(self.gamma));
        }
        if !(self.hbar.is_finite() && self.hbar > 0.0) {
            return Err(ConfigError::NonPositiveHbar(self.hbar));
        }
        Ok(())
    }

    /// Tunneling amplitude t(i) of the bond between sites i and i+1
    /// (1-based, with site N+1 ≡ 1).
    pub fn bond(&self, i: usize) -> f64 {
        debug_assert!((1..=self.n_sites).contains(&i));
        if i < self.sink_site {
            self.t_inner
        } else {
            self.t_outer
        }
    }

    /// Fractional distance between the impurities, μ = (d − 1)/N.
    pub fn mu(&self) -> f64 {
        (self.sink_site - 1) as f64 / self.n_sites as f64
    }

    /// max(t_0, t_b) — the energy scale of the spectrum bound and of the
    /// normalized time unit.
    pub fn t_max(&self) -> f64 {
        self.t_outer.max(self.t_inner)
    }

    /// Normalized time unit 2πħ/max(t_0, t_b) in physical time.
    pub fn time_unit(&self) -> f64 {
        2.0 * std::f64::consts::PI * self.hbar / self.t_max()
    }

    /// The mirrored configuration: sites relabeled j ↦ N + 2 − j (mod N),
    /// which maps the sink to d′ = N + 2 − d and swaps the two arcs.
    /// Its spectrum equals the original as a multiset.
    pub fn mirrored(&self) -> Self {
        RingConfig {
            n_sites: self.n_sites,
            sink_site: self.n_sites + 2 - self.sink_site,
            t_inner: self.t_outer,
            t_outer: self.t_inner,
            gamma: self.gamma,
            hbar: self.hbar,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_valid_config() {
        let cfg = RingConfig::new(32, 16, 0.5, 1.0, 0.3).unwrap();
        assert_eq!(cfg.n_sites, 32);
        assert_eq!(cfg.sink_site, 16);
        assert_eq!(cfg.hbar, 1.0);
        assert!((cfg.mu() - 15.0 / 32.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_fields() {
        assert!(matches!(
            RingConfig::new(2, 2, 1.0, 1.0, 0.0),
            Err(ConfigError::TooFewSites(2))
        ));
        assert!(matches!(
            RingConfig::new(8, 1, 1.0, 1.0, 0.0),
            Err(ConfigError::SinkOutOfRange { d: 1, n: 8 })
        ));
        assert!(matches!(
            RingConfig::new(8, 9, 1.0, 1.0, 0.0),
            Err(ConfigError::SinkOutOfRange { d: 9, n: 8 })
        ));
        assert!(matches!(
            RingConfig::new(8, 4, -1.0, 1.0, 0.0),
            Err(ConfigError::NonPositiveOuterTunneling(_))
        ));
        assert!(matches!(
            RingConfig::new(8, 4, 1.0, 0.0, 0.0),
            Err(ConfigError::NonPositiveInnerTunneling(_))
        ));
        assert!(matches!(
            RingConfig::new(8, 4, 1.0, 1.0, -0.1),
            Err(ConfigError::NegativeGamma(_))
        ));
        assert!(matches!(
            RingConfig::new(8, 4, 1.0, 1.0, f64::NAN),
            Err(ConfigError::NegativeGamma(_))
        ));
    }

    #[test]
    fn bond_profile_matches_arcs() {
        // N=32, d=16: bonds 1..15 inner (tb), 16..32 outer (t0).
        let cfg = RingConfig::new(32, 16, 0.5, 1.0, 0.3).unwrap();
        for i in 1..16 {
            assert_eq!(cfg.bond(i), 1.0, "bond {i} should be t_inner");
        }
        for i in 16..=32 {
            assert_eq!(cfg.bond(i), 0.5, "bond {i} should be t_outer");
        }
    }

    #[test]
    fn mirror_swaps_arcs_and_sink() {
        let cfg = RingConfig::new(10, 3, 2.0, 1.0, 0.4).unwrap();
        let m = cfg.mirrored();
        assert_eq!(m.sink_site, 9);
        assert_eq!(m.t_inner, 2.0);
        assert_eq!(m.t_outer, 1.0);
        assert!(m.validate().is_ok());
        // mirroring twice restores the original
        assert_eq!(m.mirrored(), cfg);
    }

    #[test]
    fn time_unit_uses_dominant_tunneling() {
        let cfg = RingConfig::new(32, 16, 0.5, 1.0, 0.0).unwrap();
        assert!((cfg.time_unit() - 2.0 * std::f64::consts::PI).abs() < 1e-15);
    }
}
