//! CSV emitters for every result type.
//!
//! Floats are written with 17 significant digits (`{:.16e}`), which is
//! lossless for f64: parsing a cell and re-formatting it reproduces the
//! exact bytes, so emitted files round-trip bit-for-bit.

use num_complex::Complex64;

use crate::bethe::BetheScan;
use crate::dynamics::{reciprocal_momenta, Trajectory};
use crate::spectrum::SpectralResult;
use crate::sweeps::{ChiralityPoint, PhasePoint, SweepGrid};

/// Full-precision float cell.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Error messages embedded in a CSV cell must not introduce separators.
pub fn sanitize_cell(s: &str) -> String {
    s.replace([',', '\n', '\r'], ";")
}

fn opt_float(x: Option<f64>) -> String {
    x.map(fmt_float).unwrap_or_default()
}

fn opt_err(e: &Option<String>) -> String {
    e.as_deref().map(sanitize_cell).unwrap_or_default()
}

/// Eigenvalue table: `index,re,im` (index is 1-based, rows sorted the same
/// way as [`SpectralResult::eigenvalues`]).
pub fn spectrum_csv(s: &SpectralResult) -> String {
    let mut out = String::from("index,re,im\n");
    for (i, z) in s.eigenvalues.iter().enumerate() {
        out.push_str(&format!("{},{},{}\n", i + 1, fmt_float(z.re), fmt_float(z.im)));
    }
    out
}

/// Long-format real-space intensities: `t,site,intensity`.
pub fn trajectory_real_csv(tr: &Trajectory) -> String {
    let mut out = String::from("t,site,intensity\n");
    for (s, &t) in tr.sample_times.iter().enumerate() {
        for j in 0..tr.n_sites() {
            out.push_str(&format!(
                "{},{},{}\n",
                fmt_float(t),
                j + 1,
                fmt_float(tr.i_r[[s, j]])
            ));
        }
    }
    out
}

/// Long-format reciprocal-space intensities: `t,u,p_u,intensity`.
pub fn trajectory_reciprocal_csv(tr: &Trajectory) -> String {
    let momenta = reciprocal_momenta(tr.n_sites());
    let mut out = String::from("t,u,p_u,intensity\n");
    for (s, &t) in tr.sample_times.iter().enumerate() {
        for u in 0..tr.n_sites() {
            out.push_str(&format!(
                "{},{},{},{}\n",
                fmt_float(t),
                u + 1,
                fmt_float(momenta[u]),
                fmt_float(tr.i_m[[s, u]])
            ));
        }
    }
    out
}

/// Momentum and norm history: `t,p,net_intensity,log_norm`.
pub fn trajectory_momentum_csv(tr: &Trajectory) -> String {
    let mut out = String::from("t,p,net_intensity,log_norm\n");
    for (s, &t) in tr.sample_times.iter().enumerate() {
        let net = tr.net_intensity[s];
        out.push_str(&format!(
            "{},{},{},{}\n",
            fmt_float(t),
            fmt_float(tr.p_t[s]),
            fmt_float(net),
            fmt_float(0.5 * net.ln())
        ));
    }
    out
}

/// Phase-boundary sweep:
/// `n,d,mu,t0,tb,gamma_pt,gamma_pt_normalized,bisection_iters,error`.
pub fn phase_diagram_csv(grid: &SweepGrid<PhasePoint>) -> String {
    let mut out =
        String::from("n,d,mu,t0,tb,gamma_pt,gamma_pt_normalized,bisection_iters,error\n");
    for p in &grid.points {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            p.n,
            p.d,
            fmt_float(p.mu),
            fmt_float(p.t0),
            fmt_float(p.tb),
            opt_float(p.gamma_pt),
            opt_float(p.gamma_pt_normalized),
            p.bisection_iters,
            opt_err(&p.error)
        ));
    }
    out
}

/// Chirality sweep: `d,gamma,p_bar,error`.
pub fn chirality_csv(grid: &SweepGrid<ChiralityPoint>) -> String {
    let mut out = String::from("d,gamma,p_bar,error\n");
    for p in &grid.points {
        out.push_str(&format!(
            "{},{},{},{}\n",
            p.d,
            fmt_float(p.gamma),
            opt_float(p.p_bar),
            opt_err(&p.error)
        ));
    }
    out
}

/// Root table with the nearest diagonalized eigenvalue per root:
/// `k_re,k_im,kp_re,kp_im,energy_re,energy_im,residual,eig_re,eig_im,match_dist`.
pub fn bethe_csv(scan: &BetheScan, eigenvalues: &[Complex64]) -> String {
    let mut out = String::from(
        "k_re,k_im,kp_re,kp_im,energy_re,energy_im,residual,eig_re,eig_im,match_dist\n",
    );
    for r in &scan.roots {
        let nearest = eigenvalues
            .iter()
            .min_by(|a, b| (*a - r.energy).norm().total_cmp(&(*b - r.energy).norm()));
        let (eig, dist) = match nearest {
            Some(&e) => (e, (e - r.energy).norm()),
            None => (Complex64::new(f64::NAN, f64::NAN), f64::NAN),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            fmt_float(r.k.re),
            fmt_float(r.k.im),
            fmt_float(r.k_prime.re),
            fmt_float(r.k_prime.im),
            fmt_float(r.energy.re),
            fmt_float(r.energy.im),
            fmt_float(r.residual),
            fmt_float(eig.re),
            fmt_float(eig.im),
            fmt_float(dist)
        ));
    }
    out
}

/// Split an emitted CSV back into header and cell rows (our tables never
/// quote or embed separators).
pub fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header: Vec<String> = lines
        .next()
        .map(|h| h.split(',').map(str::to_string).collect())
        .unwrap_or_default();
    let rows = lines
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    (header, rows)
}

/// Re-serialize a parsed table; byte-identical to the original emission.
pub fn write_csv(header: &[String], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_is_parse_stable() {
        for &x in &[
            0.0,
            -0.0,
            1.0,
            std::f64::consts::PI,
            1.0 / 3.0,
            -2.5e-17,
            6.02e23,
            f64::MIN_POSITIVE,
        ] {
            let s = fmt_float(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back.to_bits(), x.to_bits(), "{x} -> {s} -> {back}");
            assert_eq!(fmt_float(back), s);
        }
    }

    #[test]
    fn sanitize_strips_separators() {
        assert_eq!(sanitize_cell("a,b\nc"), "a;b;c");
    }

    #[test]
    fn parse_write_round_trip() {
        let text = "a,b\n1,2.5e0\n3,4.5e0\n";
        let (h, rows) = parse_csv(text);
        assert_eq!(h, vec!["a", "b"]);
        assert_eq!(rows.len(), 2);
        assert_eq!(write_csv(&h, &rows), text);
    }
}
