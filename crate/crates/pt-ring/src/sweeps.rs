//! Parameter sweeps over the phase boundary and the chirality curve.
//!
//! Grid points are independent pure computations; they run on a rayon
//! pool and are collected in input order, so serial and parallel runs
//! produce identical records. Failed points keep their slot with an error
//! marker instead of being dropped.

use rayon::prelude::*;
use serde::Serialize;

use crate::config::RingConfig;
use crate::dynamics::steady_state_momentum;
use crate::spectrum::find_gamma_pt;

/// One named sweep axis.
#[derive(Debug, Clone, Serialize)]
pub struct Axis {
    pub name: String,
    pub values: Vec<f64>,
}

/// A parameter grid with its per-point results.
#[derive(Debug, Clone, Serialize)]
pub struct SweepGrid<R> {
    pub axes: Vec<Axis>,
    pub base: RingConfig,
    pub points: Vec<R>,
}

/// One phase-boundary measurement.
#[derive(Debug, Clone, Serialize)]
pub struct PhasePoint {
    pub n: usize,
    pub d: usize,
    pub mu: f64,
    pub t0: f64,
    pub tb: f64,
    pub gamma_pt: Option<f64>,
    /// γ_PT / max(t0, tb).
    pub gamma_pt_normalized: Option<f64>,
    pub bisection_iters: u32,
    pub error: Option<String>,
}

/// One chirality measurement.
#[derive(Debug, Clone, Serialize)]
pub struct ChiralityPoint {
    pub d: usize,
    pub gamma: f64,
    pub p_bar: Option<f64>,
    /// Accumulated ln‖ψ‖ over the averaging window (growth diagnostic).
    pub log_norm: Option<f64>,
    pub error: Option<String>,
}

/// Critical-strength sweep over sink positions and inner tunnelings:
/// γ_PT/max(t0, tb) as a function of μ = (d − 1)/N, one series per tb.
///
/// `base` supplies N, t0, and ħ; its γ is ignored. Points are ordered by
/// (tb, d).
pub fn phase_diagram(
    base: &RingConfig,
    d_values: &[usize],
    tb_values: &[f64],
) -> SweepGrid<PhasePoint> {
    let mut params: Vec<(f64, usize)> = Vec::new();
    for &tb in tb_values {
        for &d in d_values {
            params.push((tb, d));
        }
    }

    let points: Vec<PhasePoint> = params
        .par_iter()
        .map(|&(tb, d)| {
            let n = base.n_sites;
            let t0 = base.t_outer;
            let mut point = PhasePoint {
                n,
                d,
                mu: (d as f64 - 1.0) / n as f64,
                t0,
                tb,
                gamma_pt: None,
                gamma_pt_normalized: None,
                bisection_iters: 0,
                error: None,
            };
            let cfg = RingConfig::new(n, d, t0, tb, 0.0).map(|c| {
                c.with_hbar(base.hbar).expect("hbar already validated")
            });
            let cfg = match cfg {
                Ok(c) => c,
                Err(e) => {
                    point.error = Some(e.to_string());
                    return point;
                }
            };
            let scale = cfg.t_max();
            let bracket = (t0 - tb).abs() + 0.2 * scale;
            match find_gamma_pt(&cfg, bracket) {
                Ok(r) => {
                    point.gamma_pt = Some(r.gamma_pt);
                    point.gamma_pt_normalized = Some(r.gamma_pt / scale);
                    point.bisection_iters = r.iterations;
                }
                Err(e) => point.error = Some(e.to_string()),
            }
            point
        })
        .collect();

    SweepGrid {
        axes: vec![
            Axis {
                name: "tb".into(),
                values: tb_values.to_vec(),
            },
            Axis {
                name: "d".into(),
                values: d_values.iter().map(|&d| d as f64).collect(),
            },
        ],
        base: base.clone(),
        points,
    }
}

/// Steady-state momentum p(γ) for several sink positions, γ on a shared
/// grid. Points are ordered by (d, γ).
pub fn chirality_curve(
    base: &RingConfig,
    m0: usize,
    d_values: &[usize],
    gamma_values: &[f64],
    t_avg: f64,
    dt: f64,
) -> SweepGrid<ChiralityPoint> {
    let mut params: Vec<(usize, f64)> = Vec::new();
    for &d in d_values {
        for &g in gamma_values {
            params.push((d, g));
        }
    }

    let points: Vec<ChiralityPoint> = params
        .par_iter()
        .map(|&(d, gamma)| {
            let mut point = ChiralityPoint {
                d,
                gamma,
                p_bar: None,
                log_norm: None,
                error: None,
            };
            let cfg = RingConfig::new(base.n_sites, d, base.t_outer, base.t_inner, gamma)
                .and_then(|c| c.with_hbar(base.hbar));
            let cfg = match cfg {
                Ok(c) => c,
                Err(e) => {
                    point.error = Some(e.to_string());
                    return point;
                }
            };
            match steady_state_momentum(&cfg, m0, t_avg, dt) {
                Ok(avg) => {
                    point.p_bar = Some(avg.p_bar);
                    point.log_norm = Some(avg.log_norm);
                }
                Err(e) => point.error = Some(e.to_string()),
            }
            point
        })
        .collect();

    SweepGrid {
        axes: vec![
            Axis {
                name: "d".into(),
                values: d_values.iter().map(|&d| d as f64).collect(),
            },
            Axis {
                name: "gamma".into(),
                values: gamma_values.to_vec(),
            },
        ],
        base: base.clone(),
        points,
    }
}

/// Evenly spaced γ grid over [0, max] with `steps` intervals (steps + 1
/// points, endpoints included).
pub fn gamma_grid(gamma_max: f64, steps: usize) -> Vec<f64> {
    (0..=steps)
        .map(|i| gamma_max * i as f64 / steps as f64)
        .collect()
}

/// Least-squares line fit used for slope diagnostics.
#[derive(Debug, Clone, Copy)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

pub fn linear_fit(xs: &[f64], ys: &[f64]) -> LineFit {
    assert_eq!(xs.len(), ys.len());
    assert!(xs.len() >= 2, "need at least two points to fit a line");
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let e = y - (slope * x + intercept);
            e * e
        })
        .sum();
    let ss_tot: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    let r_squared = if ss_tot > 0.0 {
        1.0 - ss_res / ss_tot
    } else {
        1.0
    };
    LineFit {
        slope,
        intercept,
        r_squared,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_grid_endpoints() {
        let g = gamma_grid(1.0, 20);
        assert_eq!(g.len(), 21);
        assert_eq!(g[0], 0.0);
        assert_eq!(*g.last().unwrap(), 1.0);
        assert!((g[10] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn linear_fit_recovers_exact_line() {
        let xs: Vec<f64> = (0..10).map(|i| i as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x - 2.0).collect();
        let fit = linear_fit(&xs, &ys);
        assert!((fit.slope - 3.0).abs() < 1e-12);
        assert!((fit.intercept + 2.0).abs() < 1e-12);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
    }

    #[test]
    fn phase_sweep_records_invalid_points_inline() {
        let base = RingConfig::new(12, 4, 1.0, 0.5, 0.0).unwrap();
        // d = 1 is invalid and must produce an error marker, not a panic
        let grid = phase_diagram(&base, &[1, 4], &[0.5]);
        assert_eq!(grid.points.len(), 2);
        assert!(grid.points[0].error.is_some());
        assert!(grid.points[0].gamma_pt.is_none());
        assert!(grid.points[1].error.is_none());
        assert!(grid.points[1].gamma_pt.is_some());
    }

    #[test]
    fn phase_sweep_small_grid_matches_formula() {
        let base = RingConfig::new(16, 5, 1.0, 0.5, 0.0).unwrap();
        let grid = phase_diagram(&base, &[5, 9], &[0.5]);
        for p in &grid.points {
            let g = p.gamma_pt_normalized.unwrap();
            assert!((g - 0.5).abs() <= 0.05, "d={}: {g}", p.d);
        }
    }

    #[test]
    fn chirality_points_ordered_and_bounded() {
        let base = RingConfig::new(12, 6, 0.5, 1.0, 0.0).unwrap();
        let grid = chirality_curve(&base, 3, &[4, 6], &[0.0, 0.3], 10.0, 0.1);
        assert_eq!(grid.points.len(), 4);
        let keys: Vec<(usize, f64)> = grid.points.iter().map(|p| (p.d, p.gamma)).collect();
        assert_eq!(keys, vec![(4, 0.0), (4, 0.3), (6, 0.0), (6, 0.3)]);
        for p in &grid.points {
            let v = p.p_bar.expect("point should succeed");
            assert!(v.abs() <= 1.0 + 1e-12);
        }
    }
}
