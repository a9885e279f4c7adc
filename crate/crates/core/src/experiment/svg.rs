//! Minimal SVG charts for experiment reports.

use std::fmt::Write;

use super::config::ClassifierKind;
use super::report::ExperimentReport;

const W: f64 = 640.0;
const H: f64 = 400.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;
const COLORS: [&str; 2] = ["#1f77b4", "#d62728"];

struct Frame {
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        let span = (self.x.1 - self.x.0).max(1e-12);
        LEFT + (x - self.x.0) / span * (W - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        let span = (self.y.1 - self.y.0).max(1e-12);
        H - BOTTOM - (y - self.y.0) / span * (H - TOP - BOTTOM)
    }
}

fn open(title: &str, xlabel: &str, ylabel: &str, frame: &Frame) -> String {
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#);
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#, W / 2.0, escape(title));
    let (x0, x1, y0, y1) = (LEFT, W - RIGHT, TOP, H - BOTTOM);
    let _ = writeln!(s, r#"<path d="M{x0},{y0} L{x0},{y1} L{x1},{y1}" fill="none" stroke="black"/>"#);
    for k in 0..=4 {
        let v = frame.y.0 + (frame.y.1 - frame.y.0) * k as f64 / 4.0;
        let y = frame.py(v);
        let _ = writeln!(s, r##"<line x1="{x0}" y1="{y}" x2="{x1}" y2="{y}" stroke="#ddd"/><text x="{}" y="{}" text-anchor="end">{}</text>"##, x0 - 6.0, y + 4.0, fmt_tick(v));
    }
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#, (x0 + x1) / 2.0, H - 12.0, escape(xlabel));
    let _ = writeln!(s, r#"<text x="16" y="{}" text-anchor="middle" transform="rotate(-90 16 {})">{}</text>"#, (y0 + y1) / 2.0, (y0 + y1) / 2.0, escape(ylabel));
    s
}

fn fmt_tick(v: f64) -> String {
    if v == 0.0 || (v.abs() >= 0.01 && v.abs() < 1e4) {
        format!("{:.3}", v).trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        format!("{v:.1e}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn x_ticks(s: &mut String, frame: &Frame, xs: &[f64]) {
    let step = (xs.len() / 12).max(1);
    for x in xs.iter().step_by(step) {
        let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#, frame.px(*x), H - BOTTOM + 16.0, fmt_tick(*x));
    }
}

fn legend(s: &mut String, names: &[&str]) {
    for (i, name) in names.iter().enumerate() {
        let y = TOP + 6.0 + 16.0 * i as f64;
        let _ = writeln!(s, r#"<rect x="{}" y="{}" width="10" height="10" fill="{}"/><text x="{}" y="{}">{}</text>"#, W - 150.0, y, COLORS[i % 2], W - 135.0, y + 9.0, escape(name));
    }
}

type Series = Vec<(f64, f64, f64)>;

/// Mean accuracy ± one standard deviation against λ.
pub fn sweep_accuracy(report: &ExperimentReport, classifier: ClassifierKind) -> String {
    let mut series: Vec<(&str, Series)> = Vec::new();
    let pick = |rst: bool| -> Series {
        report
            .summaries
            .iter()
            .filter_map(|c| {
                let (m, s) = if rst { (c.mean_rst?, c.std_rst?) } else { (c.mean_plain?, c.std_plain?) };
                Some((c.lambda as f64, m, s))
            })
            .collect()
    };
    for (name, rst) in [("without RST", false), ("with RST", true)] {
        let pts = pick(rst);
        if !pts.is_empty() {
            series.push((name, pts));
        }
    }
    let xs: Vec<f64> = report.summaries.iter().map(|c| c.lambda as f64).collect();
    let frame = Frame {
        x: (xs.iter().cloned().fold(f64::INFINITY, f64::min), xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max)),
        y: (0.0, 1.0),
    };
    let title = format!("Recognition rate vs context number ({classifier:?})");
    let mut s = open(&title, "context number λ", "accuracy", &frame);
    x_ticks(&mut s, &frame, &xs);
    for (i, (_, pts)) in series.iter().enumerate() {
        let color = COLORS[i % 2];
        let path: Vec<String> = pts.iter().map(|(x, m, _)| format!("{:.2},{:.2}", frame.px(*x), frame.py(*m))).collect();
        let _ = writeln!(s, r#"<polyline points="{}" fill="none" stroke="{color}"/>"#, path.join(" "));
        for (x, m, sd) in pts {
            let (px, lo, hi) = (frame.px(*x), frame.py((m - sd).max(0.0)), frame.py((m + sd).min(1.0)));
            let _ = writeln!(s, r#"<line x1="{px:.2}" y1="{lo:.2}" x2="{px:.2}" y2="{hi:.2}" stroke="{color}"/><circle cx="{px:.2}" cy="{:.2}" r="2.5" fill="{color}"/>"#, frame.py(*m));
        }
    }
    legend(&mut s, &series.iter().map(|(n, _)| *n).collect::<Vec<_>>());
    s.push_str("</svg>\n");
    s
}

/// Median training time and per-sample test time against λ.
pub fn sweep_time(report: &ExperimentReport) -> String {
    let xs: Vec<f64> = report.summaries.iter().map(|c| c.lambda as f64).collect();
    let train: Vec<f64> = report.summaries.iter().map(|c| c.median_train_seconds).collect();
    let test: Vec<f64> = report.summaries.iter().map(|c| c.median_test_seconds).collect();
    let ymax = train.iter().chain(&test).cloned().fold(0.0, f64::max).max(1e-9);
    let frame = Frame {
        x: (xs.iter().cloned().fold(f64::INFINITY, f64::min), xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max)),
        y: (0.0, ymax * 1.05),
    };
    let mut s = open("Time consumption vs context number", "context number λ", "seconds (median)", &frame);
    x_ticks(&mut s, &frame, &xs);
    for (i, ys) in [&train, &test].iter().enumerate() {
        let path: Vec<String> = xs.iter().zip(ys.iter()).map(|(x, y)| format!("{:.2},{:.2}", frame.px(*x), frame.py(*y))).collect();
        let _ = writeln!(s, r#"<polyline points="{}" fill="none" stroke="{}"/>"#, path.join(" "), COLORS[i]);
    }
    legend(&mut s, &["training", "test (per sample)"]);
    s.push_str("</svg>\n");
    s
}

/// Grouped bars of mean accuracy per condition, without and with RST.
pub fn benchmark_bars(report: &ExperimentReport) -> String {
    let n = report.summaries.len().max(1) as f64;
    let frame = Frame { x: (0.0, n), y: (0.0, 1.0) };
    let mut s = open("Average recognition rate by class count", "classes (λ)", "accuracy", &frame);
    let slot = (W - LEFT - RIGHT) / n;
    for (k, c) in report.summaries.iter().enumerate() {
        let x = frame.px(k as f64);
        for (i, v) in [c.mean_plain, c.mean_rst].iter().enumerate() {
            if let Some(v) = v {
                let bx = x + slot * (0.15 + 0.35 * i as f64);
                let top = frame.py(*v);
                let _ = writeln!(s, r#"<rect x="{bx:.2}" y="{top:.2}" width="{:.2}" height="{:.2}" fill="{}"/>"#, slot * 0.33, frame.py(0.0) - top, COLORS[i]);
            }
        }
        let _ = writeln!(s, r#"<text x="{:.2}" y="{}" text-anchor="middle">{} ({})</text>"#, x + slot / 2.0, H - BOTTOM + 16.0, c.classes, c.lambda);
    }
    legend(&mut s, &["without RST", "with RST"]);
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiment::report::RunRecord;

    fn report() -> ExperimentReport {
        let rec = |lambda, acc| RunRecord {
            lambda,
            classes: 2,
            repetition: 0,
            class_subset: "a;b".into(),
            accuracy_plain: Some(acc),
            accuracy_rst: Some(acc),
            train_seconds: 0.2,
            test_seconds: 0.01,
            knda_gamma: 1.0,
            svm_gamma: None,
            svm_penalty: None,
        };
        ExperimentReport::from_records(vec![rec(4, 0.5), rec(30, 0.9)])
    }

    #[test]
    fn charts_are_well_formed() {
        let r = report();
        for svg in [sweep_accuracy(&r, ClassifierKind::Svm), sweep_time(&r), benchmark_bars(&r)] {
            assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
            assert!(!svg.contains("NaN"));
        }
    }
}
