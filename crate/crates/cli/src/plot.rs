//! Hand-rolled SVG scatter plots: actual effort against project size,
//! with estimator curves overlaid. The effort axis is log-scaled because
//! realistic portfolios span several orders of magnitude.

use ucpoint_core::regression::piecewise::PiecewiseEstimator;
use ucpoint_core::regression::SizeRange;
use ucpoint_core::sizing::LEGACY_EFFORT_RATE;

const WIDTH: f64 = 900.0;
const HEIGHT: f64 = 600.0;
const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 48.0;
const MARGIN_BOTTOM: f64 = 56.0;
const POINT_RADIUS: f64 = 3.0;
const SAMPLES_PER_RANGE: usize = 120;

pub struct Curve {
    pub label: String,
    pub color: &'static str,
    /// Polyline segments in data space, split where the curve leaves the
    /// positive domain of the log axis.
    pub segments: Vec<Vec<(f64, f64)>>,
}

/// Samples one function over [lo, hi], splitting segments at points that
/// are non-finite or not positive.
fn sample_segments(lo: f64, hi: f64, mut f: impl FnMut(f64) -> Option<f64>) -> Vec<Vec<(f64, f64)>> {
    let mut segments = Vec::new();
    let mut current: Vec<(f64, f64)> = Vec::new();
    for i in 0..=SAMPLES_PER_RANGE {
        let x = lo + (hi - lo) * i as f64 / SAMPLES_PER_RANGE as f64;
        match f(x) {
            Some(y) if y.is_finite() && y > 0.0 => current.push((x, y)),
            _ => {
                if current.len() > 1 {
                    segments.push(std::mem::take(&mut current));
                } else {
                    current.clear();
                }
            }
        }
    }
    if current.len() > 1 {
        segments.push(current);
    }
    segments
}

pub fn model_curve(estimator: &PiecewiseEstimator, max_size: f64, label: &str) -> Curve {
    let mut segments = Vec::new();
    let spans = [
        (SizeRange::Small, 0.0, 100.0),
        (SizeRange::Medium, 100.0, 300.0),
        (SizeRange::Large, 300.0, max_size.max(301.0)),
    ];
    for (range, lo, hi) in spans {
        let form = &estimator.fit_for(range).form;
        segments.extend(sample_segments(lo, hi, |x| form.eval(x).ok()));
    }
    Curve {
        label: label.to_string(),
        color: "#2266cc",
        segments,
    }
}

pub fn baseline_curve(max_size: f64, label: &str) -> Curve {
    Curve {
        label: label.to_string(),
        color: "#dd8822",
        segments: sample_segments(0.0, max_size, |x| Some(LEGACY_EFFORT_RATE * x)),
    }
}

/// Picks a round tick step (1, 2, or 5 times a power of ten) giving
/// roughly `target` intervals.
fn nice_step(span: f64, target: f64) -> f64 {
    let raw = span / target;
    let magnitude = 10f64.powf(raw.log10().floor());
    let residual = raw / magnitude;
    let factor = if residual <= 1.0 {
        1.0
    } else if residual <= 2.0 {
        2.0
    } else if residual <= 5.0 {
        5.0
    } else {
        10.0
    };
    factor * magnitude
}

pub fn scatter_svg(points: &[(f64, f64)], curves: &[Curve]) -> String {
    let mut x_max = 1.0f64;
    let mut y_min = f64::INFINITY;
    let mut y_max = f64::NEG_INFINITY;
    for &(x, y) in points {
        x_max = x_max.max(x);
        if y > 0.0 {
            y_min = y_min.min(y);
            y_max = y_max.max(y);
        }
    }
    for curve in curves {
        for segment in &curve.segments {
            for &(x, y) in segment {
                x_max = x_max.max(x);
                y_min = y_min.min(y);
                y_max = y_max.max(y);
            }
        }
    }
    if !y_min.is_finite() || !y_max.is_finite() {
        y_min = 1.0;
        y_max = 10.0;
    }
    let x_max = x_max * 1.05;
    let y_lo = (y_min / 1.3).max(f64::MIN_POSITIVE);
    let y_hi = y_max * 1.3;
    let (log_lo, log_hi) = (y_lo.log10(), y_hi.log10());

    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let px = |x: f64| MARGIN_LEFT + x / x_max * plot_w;
    let py = |y: f64| {
        let t = (y.log10() - log_lo) / (log_hi - log_lo);
        MARGIN_TOP + (1.0 - t) * plot_h
    };

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"26\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">actual effort vs project size</text>\n",
        MARGIN_LEFT + plot_w / 2.0
    ));

    // x ticks and gridlines
    let x_step = nice_step(x_max, 6.0);
    let mut tick = 0.0;
    while tick <= x_max {
        let x = px(tick);
        svg.push_str(&format!(
            "<line x1=\"{x:.2}\" y1=\"{:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n",
            MARGIN_TOP,
            MARGIN_TOP + plot_h
        ));
        svg.push_str(&format!(
            "<text x=\"{x:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">{tick}</text>\n",
            MARGIN_TOP + plot_h + 18.0
        ));
        tick += x_step;
    }

    // y ticks at powers of ten
    let first_decade = log_lo.ceil() as i32;
    let last_decade = log_hi.floor() as i32;
    for decade in first_decade..=last_decade {
        let value = 10f64.powi(decade);
        let y = py(value);
        svg.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n",
            MARGIN_LEFT,
            MARGIN_LEFT + plot_w
        ));
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">{value}</text>\n",
            MARGIN_LEFT - 8.0,
            y + 4.0
        ));
    }

    // axes
    svg.push_str(&format!(
        "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#333333\" stroke-width=\"1.5\"/>\n",
        MARGIN_LEFT,
        MARGIN_TOP,
        MARGIN_LEFT,
        MARGIN_TOP + plot_h
    ));
    svg.push_str(&format!(
        "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#333333\" stroke-width=\"1.5\"/>\n",
        MARGIN_LEFT,
        MARGIN_TOP + plot_h,
        MARGIN_LEFT + plot_w,
        MARGIN_TOP + plot_h
    ));
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">size (use case points)</text>\n",
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 12.0
    ));
    svg.push_str(&format!(
        "<text transform=\"rotate(-90)\" x=\"{:.2}\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">actual effort (person-hours, log scale)</text>\n",
        -(MARGIN_TOP + plot_h / 2.0)
    ));

    // estimator curves under the points
    for curve in curves {
        for segment in &curve.segments {
            let coords: Vec<String> = segment
                .iter()
                .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
                .collect();
            svg.push_str(&format!(
                "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"2\" points=\"{}\"/>\n",
                curve.color,
                coords.join(" ")
            ));
        }
    }

    // one circle per record
    for &(x, y) in points {
        if y > 0.0 {
            svg.push_str(&format!(
                "<circle class=\"pt\" cx=\"{:.2}\" cy=\"{:.2}\" r=\"{POINT_RADIUS}\" fill=\"#3a3a3a\" fill-opacity=\"0.75\"/>\n",
                px(x),
                py(y)
            ));
        }
    }

    // legend
    let legend_x = MARGIN_LEFT + 14.0;
    let mut legend_y = MARGIN_TOP + 18.0;
    svg.push_str(&format!(
        "<circle cx=\"{legend_x:.2}\" cy=\"{:.2}\" r=\"{POINT_RADIUS}\" fill=\"#3a3a3a\" fill-opacity=\"0.75\"/>\n",
        legend_y - 4.0
    ));
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{legend_y:.2}\" font-family=\"sans-serif\" font-size=\"12\">projects</text>\n",
        legend_x + 12.0
    ));
    for curve in curves {
        legend_y += 18.0;
        svg.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"{}\" stroke-width=\"2\"/>\n",
            legend_x - 6.0,
            legend_y - 4.0,
            legend_x + 8.0,
            legend_y - 4.0,
            curve.color
        ));
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{legend_y:.2}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
            legend_x + 12.0,
            curve.label
        ));
    }

    svg.push_str("</svg>\n");
    svg
}
