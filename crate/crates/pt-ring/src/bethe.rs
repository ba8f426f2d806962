//! Quantization condition for the two-arc ring and its root set.
//!
//! Eigenstates are labeled by a pair of quasimomenta (k, k′), one per arc,
//! tied by the shared energy E = −2·t0·cos k = −2·tb·cos k′. The condition
//! that a (k, k′) pair supports an eigenstate is M(k, k′) = 0 with
//!
//! ```text
//! M(k,k')  =  t0² sin[k'(d−1)] sin[k(N−d−1)]
//!           + tb² sin[k'(d+1)] sin[k(N−d+1)]
//!           − 2 t0 tb ( sin(k'd) sin[k(N−d)] + sin k' sin k )
//!           + γ²  sin[k'(d−1)] sin[k(N−d+1)]
//! ```
//!
//! Every term carries exactly one sine in k and one in k′, so M vanishes
//! identically whenever sin k = 0 or sin k′ = 0 — zeros with no eigenstate
//! behind them. The root scan therefore works with the deflated form
//! M/(sin k · sin k′): by sin(m·θ)/sin(θ) = U_{m−1}(cos θ) this is a real
//! polynomial in x = cos k (degree N), evaluated by the Chebyshev
//! recurrence with no branch cuts and no trivial zeros. Real spectrum
//! points always correspond to real x, even when one of the quasimomenta
//! is itself complex (|x| > 1 on the weaker arc).

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::config::{ConfigError, RingConfig};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BetheError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("singular sine in asymptotic condition: |sin {which}| = {value:.3e}")]
    SingularSine { which: &'static str, value: f64 },
}

/// One solution of the quantization condition.
#[derive(Debug, Clone, Serialize)]
pub struct BetheRoot {
    /// Outer-arc quasimomentum (complex when |E| > 2·t0).
    pub k: Complex64,
    /// Inner-arc quasimomentum (complex when |E| > 2·tb).
    pub k_prime: Complex64,
    /// Shared energy E = −2·t0·cos k = −2·tb·cos k′.
    pub energy: Complex64,
    /// |M| at the root, for diagnostics.
    pub residual: f64,
}

/// Result of the real-energy root scan.
#[derive(Debug, Clone, Serialize)]
pub struct BetheScan {
    pub roots: Vec<BetheRoot>,
    /// Grid points used.
    pub grid_points: usize,
}

/// Magnitude normalization for residual thresholds: (t0 + tb + γ)² · N.
pub fn residual_scale(config: &RingConfig) -> f64 {
    let s = config.t_outer + config.t_inner + config.gamma;
    s * s * config.n_sites as f64
}

/// Inner-arc quasimomentum for a given outer-arc one: principal branch of
/// cos k′ = (t0/tb)·cos k. Complex-valued when |（t0/tb)·cos k| > 1.
pub fn k_prime_of_k(k: Complex64, config: &RingConfig) -> Complex64 {
    ((config.t_outer / config.t_inner) * k.cos()).acos()
}

/// Quasimomentum pair for an energy: k = arccos(−E/2t0), k′ = arccos(−E/2tb).
pub fn quasimomenta_of_energy(e: Complex64, config: &RingConfig) -> (Complex64, Complex64) {
    let k = (-e / (2.0 * config.t_outer)).acos();
    let k_prime = (-e / (2.0 * config.t_inner)).acos();
    (k, k_prime)
}

/// Evaluate M(k, k′) with k′ derived from k on the principal branch.
pub fn bethe_residual(k: Complex64, config: &RingConfig) -> Complex64 {
    let kp = k_prime_of_k(k, config);
    bethe_residual_pair(k, kp, config)
}

/// Evaluate M at an explicit (k, k′) pair.
pub fn bethe_residual_pair(k: Complex64, kp: Complex64, config: &RingConfig) -> Complex64 {
    let n = config.n_sites as f64;
    let d = config.sink_site as f64;
    let t0 = config.t_outer;
    let tb = config.t_inner;
    let g = config.gamma;

    let sin_k = |m: f64| (k * m).sin();
    let sin_kp = |m: f64| (kp * m).sin();

    t0 * t0 * sin_kp(d - 1.0) * sin_k(n - d - 1.0)
        + tb * tb * sin_kp(d + 1.0) * sin_k(n - d + 1.0)
        - 2.0 * t0 * tb * (sin_kp(d) * sin_k(n - d) + sin_kp(1.0) * sin_k(1.0))
        + g * g * sin_kp(d - 1.0) * sin_k(n - d + 1.0)
}

/// Chebyshev polynomial of the second kind, U_m(y) = sin((m+1)θ)/sin θ with
/// y = cos θ, extended to m = −1 (0) and m = −2 (−1).
fn cheb_u(m: i64, y: f64) -> f64 {
    match m {
        -2 => -1.0,
        -1 => 0.0,
        _ => {
            let mut prev = 0.0; // U_{-1}
            let mut cur = 1.0; // U_0
            for _ in 0..m {
                (prev, cur) = (cur, 2.0 * y * cur - prev);
            }
            cur
        }
    }
}

/// The deflated quantization condition M/(sin k · sin k′) as a real
/// polynomial in x = cos k (with cos k′ = (t0/tb)·x).
pub fn deflated_condition(x: f64, config: &RingConfig) -> f64 {
    let n = config.n_sites as i64;
    let d = config.sink_site as i64;
    let t0 = config.t_outer;
    let tb = config.t_inner;
    let g = config.gamma;
    let xp = (t0 / tb) * x;

    let u_in = |m: i64| cheb_u(m, xp); // sin(k'(m+1))/sin k'
    let u_out = |m: i64| cheb_u(m, x); // sin(k(m+1))/sin k

    t0 * t0 * u_in(d - 2) * u_out(n - d - 2)
        + tb * tb * u_in(d) * u_out(n - d)
        - 2.0 * t0 * tb * (u_in(d - 1) * u_out(n - d - 1) + 1.0)
        + g * g * u_in(d - 2) * u_out(n - d)
}

/// Acceptance threshold on |M| for a refined root.
fn root_residual_tol(config: &RingConfig) -> f64 {
    1e-9 * residual_scale(config)
}

fn root_from_x(x: f64, config: &RingConfig) -> BetheRoot {
    let k = Complex64::new(x, 0.0).acos();
    let kp = Complex64::new((config.t_outer / config.t_inner) * x, 0.0).acos();
    let energy = Complex64::new(-2.0 * config.t_outer * x, 0.0);
    let residual = bethe_residual_pair(k, kp, config).norm();
    BetheRoot {
        k,
        k_prime: kp,
        energy,
        residual,
    }
}

/// Scan the real-energy axis for solutions of the quantization condition.
///
/// The scan variable is x = cos k on a dense grid (40·N + 1 points)
/// covering |x| ≤ max(1, tb/t0), which is the image of the full band
/// |E| ≤ 2·max(t0, tb). Sign changes of the deflated condition are
/// refined by bisection; tangent (double) roots, which occur wherever a
/// ±k pair is degenerate, are caught as near-zero local minima of the
/// magnitude and refined by golden-section search. A root is accepted
/// only if |M| ≤ 1e−9 · (t0 + tb + γ)² · N at the refined point.
pub fn bethe_roots(config: &RingConfig) -> Result<BetheScan, BetheError> {
    config.validate()?;
    let n = config.n_sites;
    let span = (config.t_inner / config.t_outer).max(1.0) * (1.0 + 1e-9) + 1e-12;
    let grid_points = 40 * n + 1;
    let xs: Vec<f64> = (0..grid_points)
        .map(|i| -span + 2.0 * span * i as f64 / (grid_points - 1) as f64)
        .collect();
    let qs: Vec<f64> = xs.iter().map(|&x| deflated_condition(x, config)).collect();

    let tol = root_residual_tol(config);
    let mut root_xs: Vec<f64> = Vec::new();
    let mut sign_cells: Vec<usize> = Vec::new();

    // simple sign-change roots
    for i in 0..grid_points - 1 {
        if qs[i] == 0.0 {
            // exact grid hit
            root_xs.push(xs[i]);
            sign_cells.push(i);
            continue;
        }
        if qs[i] * qs[i + 1] < 0.0 {
            let (mut a, mut b) = (xs[i], xs[i + 1]);
            let mut fa = qs[i];
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                if mid == a || mid == b {
                    break;
                }
                let fm = deflated_condition(mid, config);
                if fm == 0.0 {
                    a = mid;
                    b = mid;
                    break;
                }
                if fa * fm < 0.0 {
                    b = mid;
                } else {
                    a = mid;
                    fa = fm;
                }
            }
            root_xs.push(0.5 * (a + b));
            sign_cells.push(i);
        }
    }
    if *qs.last().unwrap() == 0.0 {
        root_xs.push(*xs.last().unwrap());
        sign_cells.push(grid_points - 2);
    }

    // tangent roots: local minima of |q| that dip to zero without a sign
    // change (degenerate ±k pairs, or a pair about to coalesce)
    for i in 1..grid_points - 1 {
        let (l, c, r) = (qs[i - 1].abs(), qs[i].abs(), qs[i + 1].abs());
        if !(c < l && c <= r) {
            continue;
        }
        // skip minima created by an already-detected crossing nearby
        if sign_cells
            .iter()
            .any(|&cell| i >= cell.saturating_sub(1) && i <= cell + 2)
        {
            continue;
        }
        // golden-section on |q| over [x_{i-1}, x_{i+1}]
        let (mut a, mut b) = (xs[i - 1], xs[i + 1]);
        let inv_phi = 0.5 * (5.0_f64.sqrt() - 1.0);
        let mut c1 = b - inv_phi * (b - a);
        let mut c2 = a + inv_phi * (b - a);
        let mut f1 = deflated_condition(c1, config).abs();
        let mut f2 = deflated_condition(c2, config).abs();
        for _ in 0..200 {
            if b - a < f64::EPSILON * (a.abs() + b.abs() + 1.0) {
                break;
            }
            if f1 < f2 {
                b = c2;
                c2 = c1;
                f2 = f1;
                c1 = b - inv_phi * (b - a);
                f1 = deflated_condition(c1, config).abs();
            } else {
                a = c1;
                c1 = c2;
                f1 = f2;
                c2 = a + inv_phi * (b - a);
                f2 = deflated_condition(c2, config).abs();
            }
        }
        let x_min = 0.5 * (a + b);
        let q_min = deflated_condition(x_min, config).abs();
        let q_edge = qs[i - 1].abs().max(qs[i + 1].abs());
        let touches_zero = q_min <= 1e-8 * q_edge;
        if touches_zero && root_from_x(x_min, config).residual <= tol {
            root_xs.push(x_min);
        }
    }

    root_xs.sort_by(f64::total_cmp);
    root_xs.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * span);

    let mut roots: Vec<BetheRoot> = root_xs
        .into_iter()
        .map(|x| root_from_x(x, config))
        .filter(|r| r.residual <= tol)
        .collect();
    roots.truncate(n); // degree-N condition cannot have more roots
    Ok(BetheScan {
        roots,
        grid_points,
    })
}

/// Both sides of the large-N quantization condition,
/// lhs = sin(k′μN)·sin[k(1−μ)N]/(sin k′·sin k) and
/// rhs = 2·t0·tb/[(t0−tb)² + γ²].
///
/// The rhs is +∞ for equal arcs at γ = 0, consistent with a vanishing
/// threshold there.
pub fn asymptotic_condition(
    k: f64,
    mu: f64,
    config: &RingConfig,
) -> Result<(f64, f64), BetheError> {
    let n = config.n_sites as f64;
    let kc = Complex64::new(k, 0.0);
    let kp = k_prime_of_k(kc, config);
    let sin_k = kc.sin();
    let sin_kp = kp.sin();
    if sin_k.norm() < 1e-12 {
        return Err(BetheError::SingularSine {
            which: "k",
            value: sin_k.norm(),
        });
    }
    if sin_kp.norm() < 1e-12 {
        return Err(BetheError::SingularSine {
            which: "k'",
            value: sin_kp.norm(),
        });
    }
    let lhs = ((kp * (mu * n)).sin() * (kc * ((1.0 - mu) * n)).sin()) / (sin_kp * sin_k);
    let denom = (config.t_outer - config.t_inner).powi(2) + config.gamma.powi(2);
    let rhs = if denom == 0.0 {
        f64::INFINITY
    } else {
        2.0 * config.t_outer * config.t_inner / denom
    };
    Ok((lhs.re, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn cfg(n: usize, d: usize, t0: f64, tb: f64, g: f64) -> RingConfig {
        RingConfig::new(n, d, t0, tb, g).unwrap()
    }

    #[test]
    fn uniform_plane_waves_solve_condition() {
        let c = cfg(8, 5, 1.0, 1.0, 0.0);
        for m in 0..8 {
            let k = Complex64::new(2.0 * PI * m as f64 / 8.0, 0.0);
            let res = bethe_residual(k, &c).norm();
            assert!(res <= 1e-12, "m={m}: |M| = {res:.3e}");
        }
    }

    #[test]
    fn deflation_matches_raw_condition() {
        // M(k) == q(cos k) · sin k · sin k' wherever the sines are regular
        let c = cfg(11, 4, 1.0, 0.6, 0.35);
        for i in 1..40 {
            let k = Complex64::new(PI * i as f64 / 40.0, 0.0);
            let kp = k_prime_of_k(k, &c);
            let m = bethe_residual(k, &c);
            let q = deflated_condition(k.re.cos(), &c);
            let recon = Complex64::new(q, 0.0) * k.sin() * kp.sin();
            assert!(
                (m - recon).norm() <= 1e-9 * (1.0 + m.norm()),
                "k={:.3}: M={m:?} vs q·sin·sin={recon:?}",
                k.re
            );
        }
    }

    #[test]
    fn cheb_u_small_orders() {
        let y = 0.37;
        assert_eq!(cheb_u(-2, y), -1.0);
        assert_eq!(cheb_u(-1, y), 0.0);
        assert_eq!(cheb_u(0, y), 1.0);
        assert!((cheb_u(1, y) - 2.0 * y).abs() < 1e-15);
        assert!((cheb_u(2, y) - (4.0 * y * y - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn uniform_ring_energies_recovered() {
        let c = cfg(8, 5, 1.0, 1.0, 0.0);
        let scan = bethe_roots(&c).unwrap();
        let mut expected: Vec<f64> = (0..8)
            .map(|m| -2.0 * (2.0 * PI * m as f64 / 8.0).cos())
            .collect();
        expected.sort_by(f64::total_cmp);
        expected.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
        assert_eq!(scan.roots.len(), expected.len(), "roots: {:?}", scan.roots);
        for (root, want) in scan.roots.iter().zip(expected) {
            assert!(
                (root.energy.re - want).abs() <= 1e-9,
                "{} vs {want}",
                root.energy.re
            );
        }
    }

    #[test]
    fn roots_satisfy_energy_relation() {
        let c = cfg(12, 5, 1.0, 0.5, 0.2);
        let scan = bethe_roots(&c).unwrap();
        assert!(!scan.roots.is_empty());
        for r in &scan.roots {
            let e_outer = -2.0 * c.t_outer * r.k.cos();
            let e_inner = -2.0 * c.t_inner * r.k_prime.cos();
            assert!((e_outer - r.energy).norm() <= 1e-10);
            assert!((e_inner - r.energy).norm() <= 1e-10);
        }
    }

    #[test]
    fn weak_outer_arc_band_is_covered() {
        // tb > t0: part of the band has complex k but real k'; the scan
        // must still find energies beyond |E| = 2 t0
        let c = cfg(16, 8, 0.5, 1.0, 0.1);
        let scan = bethe_roots(&c).unwrap();
        let beyond = scan
            .roots
            .iter()
            .filter(|r| r.energy.re.abs() > 2.0 * c.t_outer)
            .count();
        assert!(beyond > 0, "no roots beyond the outer-arc band edge");
    }

    #[test]
    fn asymptotic_rhs_arrangements() {
        // γ² = 2 t0 tb − (t0 − tb)² makes the rhs equal to 1
        let (t0, tb) = (1.0_f64, 0.5_f64);
        let g = (2.0 * t0 * tb - (t0 - tb) * (t0 - tb)).sqrt();
        let c = cfg(40, 11, t0, tb, g);
        let (_, rhs) = asymptotic_condition(1.0, 0.25, &c).unwrap();
        assert!((rhs - 1.0).abs() < 1e-12);

        let c = cfg(40, 11, 1.0, 1.0, 0.0);
        let (_, rhs) = asymptotic_condition(1.0, 0.25, &c).unwrap();
        assert!(rhs.is_infinite() && rhs > 0.0);
    }

    #[test]
    fn asymptotic_rejects_singular_sine() {
        let c = cfg(40, 11, 1.0, 0.5, 0.1);
        assert!(matches!(
            asymptotic_condition(0.0, 0.25, &c),
            Err(BetheError::SingularSine { which: "k", .. })
        ));
        // sin k' = 0 at cos k' = ±1, i.e. cos k = ±tb/t0
        let k_sing = (0.5_f64).acos();
        assert!(matches!(
            asymptotic_condition(k_sing, 0.25, &c),
            Err(BetheError::SingularSine { which: "k'", .. })
        ));
    }
}
