//! Self-contained SVG rendering: intensity heatmaps (time horizontal,
//! site or reciprocal index vertical) and line plots with legends.
//!
//! Values map to color through an 11-anchor viridis ramp, which is
//! monotone in lightness; an optional log scale handles intensities
//! spanning many decades. Rendering rounds coordinates for display only —
//! the CSV files keep full precision.

use ndarray::Array2;

const VIRIDIS: [(f64, f64, f64); 11] = [
    (0.267004, 0.004874, 0.329415),
    (0.282623, 0.140926, 0.457517),
    (0.253935, 0.265254, 0.529983),
    (0.206756, 0.371758, 0.553117),
    (0.163625, 0.471133, 0.558148),
    (0.127568, 0.566949, 0.550556),
    (0.134692, 0.658636, 0.517649),
    (0.266941, 0.748751, 0.440573),
    (0.477504, 0.821444, 0.318195),
    (0.741388, 0.873449, 0.149561),
    (0.993248, 0.906157, 0.143936),
];

const SERIES_COLORS: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

fn viridis(t: f64) -> String {
    let t = t.clamp(0.0, 1.0) * (VIRIDIS.len() - 1) as f64;
    let i = (t.floor() as usize).min(VIRIDIS.len() - 2);
    let f = t - i as f64;
    let (r0, g0, b0) = VIRIDIS[i];
    let (r1, g1, b1) = VIRIDIS[i + 1];
    let ch = |a: f64, b: f64| ((a + (b - a) * f) * 255.0).round() as u8;
    format!("#{:02x}{:02x}{:02x}", ch(r0, r1), ch(g0, g1), ch(b0, b1))
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub struct HeatmapSpec<'a> {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    /// Sample times (one per data row).
    pub times: &'a [f64],
    /// Tick labels for the vertical axis, bottom to top (site or p_u).
    pub y_ticks: Vec<(f64, String)>,
    /// Rows = samples, columns = vertical cells (site index order).
    pub data: &'a Array2<f64>,
    pub log_scale: bool,
}

/// Render a time/space intensity map. Long runs are strided down to at
/// most 512 time columns; the CSV keeps every sample.
pub fn heatmap_svg(spec: &HeatmapSpec) -> String {
    let samples = spec.data.nrows();
    let cells = spec.data.ncols();
    assert_eq!(samples, spec.times.len());
    let stride = samples.div_ceil(512).max(1);
    let cols: Vec<usize> = (0..samples).step_by(stride).collect();

    let (w, h) = (900.0, 460.0);
    let (ml, mr, mt, mb) = (70.0, 20.0, 40.0, 55.0);
    let plot_w = w - ml - mr;
    let plot_h = h - mt - mb;
    let cw = plot_w / cols.len() as f64;
    let chh = plot_h / cells as f64;

    // value -> [0,1]
    let mut vmax = f64::MIN;
    let mut vmin = f64::MAX;
    for &s in &cols {
        for j in 0..cells {
            let v = spec.data[[s, j]];
            if v.is_finite() {
                vmax = vmax.max(v);
                vmin = vmin.min(v);
            }
        }
    }
    if !vmax.is_finite() || vmax <= vmin {
        vmax = vmin + 1.0;
    }
    let floor = if spec.log_scale {
        (vmax * 1e-12).max(f64::MIN_POSITIVE)
    } else {
        0.0
    };
    let norm = |v: f64| -> f64 {
        if spec.log_scale {
            let lv = v.max(floor).ln();
            let (lo, hi) = (floor.ln(), vmax.max(floor * 10.0).ln());
            (lv - lo) / (hi - lo)
        } else {
            (v - vmin.min(0.0)) / (vmax - vmin.min(0.0))
        }
    };

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" \
         viewBox=\"0 0 {w} {h}\">\n"
    ));
    svg.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n"
    ));
    svg.push_str(&format!(
        "<text x=\"{:.1}\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" \
         font-size=\"16\">{}</text>\n",
        w / 2.0,
        xml_escape(&spec.title)
    ));

    for (ci, &s) in cols.iter().enumerate() {
        for j in 0..cells {
            // site 1 at the bottom
            let x = ml + ci as f64 * cw;
            let y = mt + plot_h - (j + 1) as f64 * chh;
            let color = viridis(norm(spec.data[[s, j]]));
            svg.push_str(&format!(
                "<rect x=\"{x:.2}\" y=\"{y:.2}\" width=\"{:.2}\" height=\"{:.2}\" \
                 fill=\"{color}\"/>\n",
                cw + 0.5,
                chh + 0.5
            ));
        }
    }

    // axes
    svg.push_str(&format!(
        "<rect x=\"{ml}\" y=\"{mt}\" width=\"{plot_w:.1}\" height=\"{plot_h:.1}\" \
         fill=\"none\" stroke=\"black\"/>\n"
    ));
    let t0 = spec.times.first().copied().unwrap_or(0.0);
    let t1 = spec.times.last().copied().unwrap_or(0.0);
    for frac in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let x = ml + frac * plot_w;
        let t = t0 + frac * (t1 - t0);
        svg.push_str(&format!(
            "<line x1=\"{x:.1}\" y1=\"{:.1}\" x2=\"{x:.1}\" y2=\"{:.1}\" stroke=\"black\"/>\n",
            mt + plot_h,
            mt + plot_h + 5.0
        ));
        svg.push_str(&format!(
            "<text x=\"{x:.1}\" y=\"{:.1}\" text-anchor=\"middle\" font-family=\"sans-serif\" \
             font-size=\"11\">{t:.4}</text>\n",
            mt + plot_h + 18.0
        ));
    }
    for (frac, label) in &spec.y_ticks {
        let y = mt + plot_h - frac * plot_h;
        svg.push_str(&format!(
            "<line x1=\"{:.1}\" y1=\"{y:.1}\" x2=\"{ml}\" y2=\"{y:.1}\" stroke=\"black\"/>\n",
            ml - 5.0
        ));
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"end\" font-family=\"sans-serif\" \
             font-size=\"11\">{}</text>\n",
            ml - 8.0,
            y + 4.0,
            xml_escape(label)
        ));
    }
    svg.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\" font-family=\"sans-serif\" \
         font-size=\"13\">{}</text>\n",
        ml + plot_w / 2.0,
        h - 14.0,
        xml_escape(&spec.x_label)
    ));
    svg.push_str(&format!(
        "<text x=\"18\" y=\"{:.1}\" text-anchor=\"middle\" font-family=\"sans-serif\" \
         font-size=\"13\" transform=\"rotate(-90 18 {:.1})\">{}</text>\n",
        mt + plot_h / 2.0,
        mt + plot_h / 2.0,
        xml_escape(&spec.y_label)
    ));
    svg.push_str("</svg>\n");
    svg
}

pub struct LineSeries {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

/// Render one or more (x, y) series with a legend.
pub fn line_plot_svg(title: &str, x_label: &str, y_label: &str, series: &[LineSeries]) -> String {
    let (w, h) = (760.0, 480.0);
    let (ml, mr, mt, mb) = (75.0, 25.0, 45.0, 60.0);
    let plot_w = w - ml - mr;
    let plot_h = h - mt - mb;

    let finite_points = || {
        series
            .iter()
            .flat_map(|s| s.points.iter())
            .filter(|(x, y)| x.is_finite() && y.is_finite())
    };
    let mut x_min = f64::MAX;
    let mut x_max = f64::MIN;
    let mut y_min = f64::MAX;
    let mut y_max = f64::MIN;
    for &(x, y) in finite_points() {
        x_min = x_min.min(x);
        x_max = x_max.max(x);
        y_min = y_min.min(y);
        y_max = y_max.max(y);
    }
    if x_min > x_max {
        x_min = 0.0;
        x_max = 1.0;
    }
    if y_min > y_max {
        y_min = 0.0;
        y_max = 1.0;
    }
    if x_max - x_min < 1e-300 {
        x_max = x_min + 1.0;
    }
    let pad = 0.05 * (y_max - y_min).max(1e-12);
    y_min -= pad;
    y_max += pad;

    let px = |x: f64| ml + (x - x_min) / (x_max - x_min) * plot_w;
    let py = |y: f64| mt + plot_h - (y - y_min) / (y_max - y_min) * plot_h;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" \
         viewBox=\"0 0 {w} {h}\">\n"
    ));
    svg.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n"
    ));
    svg.push_str(&format!(
        "<text x=\"{:.1}\" y=\"26\" text-anchor=\"middle\" font-family=\"sans-serif\" \
         font-size=\"16\">{}</text>\n",
        w / 2.0,
        xml_escape(title)
    ));
    svg.push_str(&format!(
        "<rect x=\"{ml}\" y=\"{mt}\" width=\"{plot_w:.1}\" height=\"{plot_h:.1}\" \
         fill=\"none\" stroke=\"black\"/>\n"
    ));

    for frac in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let xv = x_min + frac * (x_max - x_min);
        let yv = y_min + frac * (y_max - y_min);
        let x = ml + frac * plot_w;
        let y = mt + plot_h - frac * plot_h;
        svg.push_str(&format!(
            "<line x1=\"{x:.1}\" y1=\"{:.1}\" x2=\"{x:.1}\" y2=\"{:.1}\" stroke=\"black\"/>\n",
            mt + plot_h,
            mt + plot_h + 5.0
        ));
        svg.push_str(&format!(
            "<text x=\"{x:.1}\" y=\"{:.1}\" text-anchor=\"middle\" font-family=\"sans-serif\" \
             font-size=\"11\">{xv:.4}</text>\n",
            mt + plot_h + 18.0
        ));
        svg.push_str(&format!(
            "<line x1=\"{:.1}\" y1=\"{y:.1}\" x2=\"{ml}\" y2=\"{y:.1}\" stroke=\"black\"/>\n",
            ml - 5.0
        ));
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"end\" font-family=\"sans-serif\" \
             font-size=\"11\">{yv:.4}</text>\n",
            ml - 8.0,
            y + 4.0
        ));
    }

    for (si, s) in series.iter().enumerate() {
        let color = SERIES_COLORS[si % SERIES_COLORS.len()];
        let pts: Vec<String> = s
            .points
            .iter()
            .filter(|(x, y)| x.is_finite() && y.is_finite())
            .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect();
        if pts.len() > 1 {
            svg.push_str(&format!(
                "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" \
                 stroke-width=\"1.8\"/>\n",
                pts.join(" ")
            ));
        }
        for p in &pts {
            let (x, y) = p.split_once(',').unwrap();
            svg.push_str(&format!(
                "<circle cx=\"{x}\" cy=\"{y}\" r=\"2.4\" fill=\"{color}\"/>\n"
            ));
        }
        // legend entry
        let ly = mt + 16.0 + 18.0 * si as f64;
        let lx = ml + plot_w - 150.0;
        svg.push_str(&format!(
            "<line x1=\"{lx:.1}\" y1=\"{ly:.1}\" x2=\"{:.1}\" y2=\"{ly:.1}\" \
             stroke=\"{color}\" stroke-width=\"2\"/>\n",
            lx + 24.0
        ));
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
            lx + 30.0,
            ly + 4.0,
            xml_escape(&s.label)
        ));
    }

    svg.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\" font-family=\"sans-serif\" \
         font-size=\"13\">{}</text>\n",
        ml + plot_w / 2.0,
        h - 16.0,
        xml_escape(x_label)
    ));
    svg.push_str(&format!(
        "<text x=\"20\" y=\"{:.1}\" text-anchor=\"middle\" font-family=\"sans-serif\" \
         font-size=\"13\" transform=\"rotate(-90 20 {:.1})\">{}</text>\n",
        mt + plot_h / 2.0,
        mt + plot_h / 2.0,
        xml_escape(y_label)
    ));
    svg.push_str("</svg>\n");
    svg
}

/// Tick set for a site axis: a handful of integer site labels.
pub fn site_ticks(n: usize) -> Vec<(f64, String)> {
    let picks = [1, n / 4, n / 2, 3 * n / 4, n];
    let mut ticks: Vec<(f64, String)> = picks
        .iter()
        .filter(|&&s| s >= 1)
        .map(|&s| ((s as f64 - 0.5) / n as f64, s.to_string()))
        .collect();
    ticks.dedup_by(|a, b| a.1 == b.1);
    ticks
}

/// Tick set for the reciprocal axis: p_u values at a few bins.
pub fn reciprocal_ticks(n: usize) -> Vec<(f64, String)> {
    let momenta = crate::dynamics::reciprocal_momenta(n);
    let picks = [1, n / 4, n / 2, 3 * n / 4, n];
    let mut ticks: Vec<(f64, String)> = picks
        .iter()
        .filter(|&&u| u >= 1)
        .map(|&u| {
            (
                (u as f64 - 0.5) / n as f64,
                format!("{:.2}", momenta[u - 1]),
            )
        })
        .collect();
    ticks.dedup_by(|a, b| a.1 == b.1);
    ticks
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::Array2;

    #[test]
    fn viridis_endpoints() {
        assert_eq!(viridis(0.0), "#440154");
        assert_eq!(viridis(1.0), "#fde725");
    }

    #[test]
    fn heatmap_contains_expected_structure() {
        let data = Array2::from_shape_fn((10, 4), |(i, j)| (i + j) as f64);
        let times: Vec<f64> = (0..10).map(|i| i as f64 * 0.1).collect();
        let svg = heatmap_svg(&HeatmapSpec {
            title: "demo".into(),
            x_label: "t".into(),
            y_label: "site".into(),
            times: &times,
            y_ticks: site_ticks(4),
            data: &data,
            log_scale: false,
        });
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert!(svg.matches("<rect").count() >= 40);
        assert!(svg.contains("demo"));
        assert!(!svg.contains("href")); // no external assets
    }

    #[test]
    fn line_plot_handles_single_point_series() {
        let svg = line_plot_svg(
            "one",
            "x",
            "y",
            &[LineSeries {
                label: "s".into(),
                points: vec![(0.5, 0.5)],
            }],
        );
        assert!(svg.contains("<circle"));
        assert!(!svg.contains("<polyline")); // one point, no line
    }

    #[test]
    fn labels_are_escaped() {
        let svg = line_plot_svg("a<b & c", "x", "y", &[]);
        assert!(svg.contains("a&lt;b &amp; c"));
    }
}
