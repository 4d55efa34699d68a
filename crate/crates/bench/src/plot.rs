//! Static SVG line charts of medians over seeds.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::table::{fmt_g, RunRecord};
use crate::{median, BenchError};

/// Values at or below this are drawn at this height on log axes.
pub const LOG_FLOOR: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    GeneralizedCost,
    WallTime,
}

/// Which rows a chart shows and how.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartSpec {
    pub experiment: String,
    pub weight_type: String,
    pub alpha: f64,
    pub beta: f64,
    pub metric: Metric,
    pub log_y: bool,
}

impl ChartSpec {
    pub fn file_name(&self) -> String {
        let tail = match self.metric {
            Metric::GeneralizedCost => "",
            Metric::WallTime => "_runtime",
        };
        format!("exp{}_{}_a{}_b{}{}.svg", self.experiment, self.weight_type, fmt_g(self.alpha), fmt_g(self.beta), tail)
    }

    fn matches(&self, r: &RunRecord) -> bool {
        r.experiment == self.experiment
            && r.weight_type == self.weight_type
            && r.alpha == self.alpha
            && r.beta == self.beta
    }
}

type Series = BTreeMap<(String, usize), Vec<(usize, f64)>>;

/// Median of the metric per `(algorithm, k)` and `n`.
pub fn series(rows: &[RunRecord], spec: &ChartSpec) -> Series {
    let mut samples: BTreeMap<(String, usize), BTreeMap<usize, Vec<f64>>> = BTreeMap::new();
    for r in rows.iter().filter(|r| spec.matches(r)) {
        let y = match spec.metric {
            Metric::GeneralizedCost => r.generalized_cost,
            Metric::WallTime => r.wall_time_ms,
        };
        samples.entry((r.algorithm.clone(), r.k)).or_default().entry(r.n).or_default().push(y);
    }
    samples
        .into_iter()
        .map(|(key, by_n)| {
            let pts = by_n.into_iter().map(|(n, ys)| (n, median(&ys).expect("nonempty"))).collect();
            (key, pts)
        })
        .collect()
}

const W: f64 = 720.0;
const H: f64 = 440.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 170.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
const COLORS: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"];

/// The chart as an SVG document.
pub fn emit_plot(rows: &[RunRecord], spec: &ChartSpec) -> Result<String, BenchError> {
    let data = series(rows, spec);
    if data.is_empty() {
        return Err(BenchError::Config(format!("no rows for chart {}", spec.file_name())));
    }
    let xs: Vec<usize> = {
        let mut v: Vec<usize> = data.values().flatten().map(|p| p.0).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let mut clamped = false;
    let transform = |y: f64, clamped: &mut bool| -> f64 {
        if spec.log_y {
            if y <= LOG_FLOOR {
                *clamped = true;
                LOG_FLOOR.log10()
            } else {
                y.log10()
            }
        } else {
            y
        }
    };
    let ty: Vec<f64> = data.values().flatten().map(|p| transform(p.1, &mut clamped)).collect();
    let (mut lo, mut hi) = ty.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &y| (a.min(y), b.max(y)));
    if spec.log_y {
        lo = lo.floor();
        hi = hi.ceil().max(lo + 1.0);
    } else {
        lo = lo.min(0.0);
        if hi <= lo {
            hi = lo + 1.0;
        }
    }
    let (x0, x1) = (xs[0] as f64, *xs.last().expect("nonempty") as f64);
    let round = |v: f64| (v * 10.0).round() / 10.0;
    let px = |x: usize| {
        round(if x1 == x0 {
            LEFT + (W - LEFT - RIGHT) / 2.0
        } else {
            LEFT + (x as f64 - x0) / (x1 - x0) * (W - LEFT - RIGHT)
        })
    };
    let py = |t: f64| round(TOP + (hi - t) / (hi - lo) * (H - TOP - BOTTOM));

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let metric = match spec.metric {
        Metric::GeneralizedCost => "median generalized cost",
        Metric::WallTime => "median wall time (ms)",
    };
    let title = format!(
        "Experiment {}, {}, alpha = {}, beta = {}",
        spec.experiment,
        spec.weight_type,
        fmt_g(spec.alpha),
        fmt_g(spec.beta)
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#,
        (W - RIGHT + LEFT) / 2.0,
        title
    );

    // axes and ticks
    let (ax0, ax1, ay0, ay1) = (LEFT, W - RIGHT, TOP, H - BOTTOM);
    let _ = writeln!(s, r#"<path d="M{ax0},{ay0} V{ay1} H{ax1}" stroke="black" fill="none"/>"#);
    for &x in &xs {
        let _ = writeln!(s, r#"<line x1="{0}" y1="{ay1}" x2="{0}" y2="{1}" stroke="black"/>"#, px(x), ay1 + 5.0);
        let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">{x}</text>"#, px(x), ay1 + 20.0);
    }
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">n</text>"#, (ax0 + ax1) / 2.0, H - 15.0);
    for (t, label) in y_ticks(lo, hi, spec.log_y) {
        let y = py(t);
        let _ = writeln!(s, r##"<line x1="{ax0}" y1="{y}" x2="{ax1}" y2="{y}" stroke="#dddddd"/>"##);
        let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="end">{label}</text>"#, ax0 - 6.0, y + 4.0);
    }
    let ylab = if spec.log_y { format!("{metric} (log scale)") } else { metric.to_string() };
    let _ = writeln!(
        s,
        r#"<text transform="translate(18,{}) rotate(-90)" text-anchor="middle">{ylab}</text>"#,
        (ay0 + ay1) / 2.0
    );

    for (i, ((alg, k), pts)) in data.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let coords: Vec<(f64, f64)> = pts.iter().map(|&(n, y)| (px(n), py(transform(y, &mut clamped)))).collect();
        let d: Vec<String> = coords.iter().map(|(x, y)| format!("{x:.1},{y:.1}")).collect();
        let _ = writeln!(s, r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#, d.join(" "));
        for (x, y) in &coords {
            let _ = writeln!(s, r#"<circle cx="{x:.1}" cy="{y:.1}" r="3" fill="{color}"/>"#);
        }
        let ly = TOP + 10.0 + 18.0 * i as f64;
        let lx = W - RIGHT + 15.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/>"#,
            lx + 20.0
        );
        let _ = writeln!(s, r#"<text x="{}" y="{}">{alg} (k = {k})</text>"#, lx + 26.0, ly + 4.0);
    }
    if clamped {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-size="10">values at or below {} drawn at {}</text>"#,
            LEFT,
            H - 2.0,
            fmt_g(LOG_FLOOR),
            fmt_g(LOG_FLOOR)
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn y_ticks(lo: f64, hi: f64, log: bool) -> Vec<(f64, String)> {
    if log {
        let (a, b) = (lo as i32, hi as i32);
        let step = ((b - a) / 8 + 1).max(1);
        return (a..=b).step_by(step as usize).map(|e| (e as f64, fmt_g(10f64.powi(e)))).collect();
    }
    let raw = (hi - lo) / 6.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0].into_iter().map(|m| m * mag).find(|&s| s >= raw).unwrap_or(10.0 * mag);
    let mut out = Vec::new();
    let mut t = (lo / step).ceil() * step;
    while t <= hi + 1e-9 * step {
        out.push((t, fmt_g(t)));
        t += step;
    }
    out
}

/// Cost and runtime charts for every (experiment, weight type, alpha,
/// beta) group present in `rows`.
pub fn all_charts(rows: &[RunRecord], log_y: bool) -> Result<Vec<(String, String)>, BenchError> {
    let mut groups: Vec<(String, String, f64, f64)> = Vec::new();
    for r in rows {
        let g = (r.experiment.clone(), r.weight_type.clone(), r.alpha, r.beta);
        if !groups.contains(&g) {
            groups.push(g);
        }
    }
    let mut out = Vec::new();
    for (experiment, weight_type, alpha, beta) in groups {
        for (metric, log) in [(Metric::GeneralizedCost, log_y), (Metric::WallTime, false)] {
            let spec = ChartSpec {
                experiment: experiment.clone(),
                weight_type: weight_type.clone(),
                alpha,
                beta,
                metric,
                log_y: log,
            };
            out.push((spec.file_name(), emit_plot(rows, &spec)?));
        }
    }
    Ok(out)
}
