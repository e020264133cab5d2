use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Column-major numeric table with named columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Self {
        Table {
            headers: headers.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        assert_eq!(row.len(), self.headers.len(), "row width must match the header");
        self.rows.push(row);
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.headers.iter().position(|h| h == name)
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    /// Header row then one line per row; floats use Rust's shortest
    /// round-trip formatting.
    pub fn to_csv(&self) -> String {
        let mut s = self.headers.join(",");
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:?}")).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    pub fn from_csv(text: &str) -> Result<Table> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Config("empty csv".into()))?;
        let mut t = Table::new(header.split(','));
        for (i, line) in lines.enumerate() {
            let row = line
                .split(',')
                .map(|c| c.parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Config(format!("csv line {}: {e}", i + 2)))?;
            if row.len() != t.headers.len() {
                return Err(Error::Config(format!("csv line {}: wrong width", i + 2)));
            }
            t.rows.push(row);
        }
        Ok(t)
    }
}

/// Which columns go on the figure.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotSpec {
    pub title: String,
    pub x: String,
    pub ys: Vec<String>,
    pub x_label: String,
    pub y_label: String,
    pub log_y: bool,
}

const COLORS: [&str; 9] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#17becf",
];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn tick_label(v: f64) -> String {
    if v == 0.0 || (v.abs() >= 1e-3 && v.abs() < 1e5) {
        let s = format!("{v:.3}");
        let s = s.trim_end_matches('0').trim_end_matches('.');
        s.to_string()
    } else {
        format!("{v:.2e}")
    }
}

/// Line plot of the selected columns. Non-finite points (and non-positive
/// ones on a log axis) split the polyline.
pub fn render_svg(table: &Table, plot: &PlotSpec) -> Result<String> {
    let xi = table
        .column_index(&plot.x)
        .ok_or_else(|| Error::validation(format!("no column {}", plot.x)))?;
    let yis = plot
        .ys
        .iter()
        .map(|y| table.column_index(y).ok_or_else(|| Error::validation(format!("no column {y}"))))
        .collect::<Result<Vec<_>>>()?;
    let ty = |v: f64| if plot.log_y { v.log10() } else { v };
    let ok = |x: f64, y: f64| x.is_finite() && y.is_finite() && (!plot.log_y || y > 0.0);

    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for row in &table.rows {
        for &yi in &yis {
            if ok(row[xi], row[yi]) {
                x0 = x0.min(row[xi]);
                x1 = x1.max(row[xi]);
                y0 = y0.min(ty(row[yi]));
                y1 = y1.max(ty(row[yi]));
            }
        }
    }
    if !x0.is_finite() {
        x0 = 0.0;
        x1 = 1.0;
        y0 = 0.0;
        y1 = 1.0;
    }
    if x1 == x0 {
        x1 = x0 + 1.0;
    }
    if y1 == y0 {
        y0 -= 0.5;
        y1 += 0.5;
    }
    let pad = 0.05 * (y1 - y0);
    y0 -= pad;
    y1 += pad;

    let (w, h) = (720.0, 460.0);
    let (l, r, t, b) = (80.0, 170.0, 40.0, 60.0);
    let pw = w - l - r;
    let ph = h - t - b;
    let sx = |x: f64| l + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| t + (1.0 - (y - y0) / (y1 - y0)) * ph;

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#);
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#, l + pw / 2.0, escape(&plot.title));
    let _ = writeln!(s, r#"<rect x="{l}" y="{t}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#);
    for i in 0..=4 {
        let f = i as f64 / 4.0;
        let xv = x0 + f * (x1 - x0);
        let yv = y0 + f * (y1 - y0);
        let px = sx(xv);
        let py = sy(yv);
        let ylab = if plot.log_y { tick_label(10f64.powf(yv)) } else { tick_label(yv) };
        let _ = writeln!(s, r##"<line x1="{px:.2}" y1="{}" x2="{px:.2}" y2="{}" stroke="#ccc"/>"##, t, t + ph);
        let _ = writeln!(s, r##"<line x1="{l}" y1="{py:.2}" x2="{}" y2="{py:.2}" stroke="#ccc"/>"##, l + pw);
        let _ = writeln!(s, r#"<text x="{px:.2}" y="{}" text-anchor="middle">{}</text>"#, t + ph + 16.0, tick_label(xv));
        let _ = writeln!(s, r#"<text x="{}" y="{:.2}" text-anchor="end">{}</text>"#, l - 6.0, py + 4.0, ylab);
    }
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#, l + pw / 2.0, h - 16.0, escape(&plot.x_label));
    let _ = writeln!(
        s,
        r#"<text x="18" y="{0}" text-anchor="middle" transform="rotate(-90 18 {0})">{1}</text>"#,
        t + ph / 2.0,
        escape(&plot.y_label)
    );
    for (n, (&yi, name)) in yis.iter().zip(&plot.ys).enumerate() {
        let color = COLORS[n % COLORS.len()];
        let mut seg: Vec<String> = Vec::new();
        let flush = |seg: &mut Vec<String>, s: &mut String| {
            if !seg.is_empty() {
                let _ = writeln!(s, r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#, seg.join(" "));
                seg.clear();
            }
        };
        for row in &table.rows {
            if ok(row[xi], row[yi]) {
                seg.push(format!("{:.2},{:.2}", sx(row[xi]), sy(ty(row[yi]))));
            } else {
                flush(&mut seg, &mut s);
            }
        }
        flush(&mut seg, &mut s);
        let ly = t + 12.0 + 18.0 * n as f64;
        let lx = l + pw + 12.0;
        let _ = writeln!(s, r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/>"#, lx + 20.0);
        let _ = writeln!(s, r#"<text x="{}" y="{}">{}</text>"#, lx + 26.0, ly + 4.0, escape(name));
    }
    s.push_str("</svg>\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn svg_has_polyline_and_labels() {
        let mut t = Table::new(["x", "y"]);
        t.push(vec![0.0, 1.0]);
        t.push(vec![1.0, 4.0]);
        let p = PlotSpec {
            title: "t".into(),
            x: "x".into(),
            ys: vec!["y".into()],
            x_label: "distance".into(),
            y_label: "gain".into(),
            log_y: true,
        };
        let svg = render_svg(&t, &p).unwrap();
        assert!(svg.contains("<polyline"));
        assert!(svg.contains(">distance<") && svg.contains(">gain<"));
        assert!(render_svg(&t, &PlotSpec { ys: vec!["z".into()], ..p }).is_err());
    }

    proptest! {
        #[test]
        fn csv_round_trip(vals in proptest::collection::vec(proptest::num::f64::NORMAL | proptest::num::f64::ZERO, 3..30)) {
            let mut t = Table::new(["a", "b", "c"]);
            for c in vals.chunks_exact(3) {
                t.push(c.to_vec());
            }
            let back = Table::from_csv(&t.to_csv()).unwrap();
            prop_assert_eq!(back, t);
        }
    }
}
