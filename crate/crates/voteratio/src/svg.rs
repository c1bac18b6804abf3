//! Deterministic SVG rendering of turnout histograms.
//!
//! Hand-written SVG keeps the byte output stable: no font metrics, no
//! rasterization, no library version drift. The overflow bin (turnout above
//! 100%) is drawn in a distinct color with a ">100" tick label.

use std::fmt::Write;

use crate::pipeline::TurnoutHistogram;

const WIDTH: f64 = 860.0;
const HEIGHT: f64 = 520.0;
const MARGIN_LEFT: f64 = 72.0;
const MARGIN_RIGHT: f64 = 28.0;
const MARGIN_TOP: f64 = 32.0;
const MARGIN_BOTTOM: f64 = 64.0;
const BAR_FILL: &str = "#4878a8";
const OVERFLOW_FILL: &str = "#c44e52";
const AXIS_COLOR: &str = "#333333";

/// Render a histogram as a standalone SVG document.
pub fn render_histogram_svg(hist: &TurnoutHistogram) -> String {
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let w = hist.bin_width;

    // x domain in turnout percent, plus one padded slot for the overflow bar
    let lo = hist.bins.first().map_or(0.0, |b| b.low);
    let hi = hist.bins.last().map_or(lo + w, |b| b.low + w);
    let overflow_slots = if hist.overflow_count > 0 { 1.5 } else { 0.0 };
    let span = (hi - lo) + overflow_slots * w;
    let x_of = |pct: f64| MARGIN_LEFT + (pct - lo) / span * plot_w;

    let max_count = hist
        .bins
        .iter()
        .map(|b| b.count)
        .chain(std::iter::once(hist.overflow_count))
        .max()
        .unwrap_or(0);
    let y_top = nice_ceiling(max_count.max(1));
    let y_of = |count: f64| MARGIN_TOP + plot_h * (1.0 - count / y_top as f64);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"##
    );
    let _ = writeln!(
        s,
        r##"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>"##
    );

    // y grid lines and tick labels
    for i in 0..=4 {
        let count = y_top as f64 * i as f64 / 4.0;
        let y = y_of(count);
        let _ = writeln!(
            s,
            r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#dddddd" stroke-width="1"/>"##,
            MARGIN_LEFT,
            y,
            MARGIN_LEFT + plot_w,
            y
        );
        let _ = writeln!(
            s,
            r##"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12" fill="{AXIS_COLOR}" text-anchor="end">{}</text>"##,
            MARGIN_LEFT - 8.0,
            y + 4.0,
            format_count(count)
        );
    }

    // bars
    for bin in &hist.bins {
        if bin.count == 0 {
            continue;
        }
        let x = x_of(bin.low);
        let bar_w = (x_of(bin.low + w) - x - 1.0).max(0.5);
        let y = y_of(bin.count as f64);
        let _ = writeln!(
            s,
            r##"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{BAR_FILL}"/>"##,
            x,
            y,
            bar_w,
            MARGIN_TOP + plot_h - y
        );
    }
    if hist.overflow_count > 0 {
        let x = x_of(hi + 0.5 * w);
        let bar_w = (x_of(hi + 1.5 * w) - x - 1.0).max(0.5);
        let y = y_of(hist.overflow_count as f64);
        let _ = writeln!(
            s,
            r##"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{OVERFLOW_FILL}"/>"##,
            x,
            y,
            bar_w,
            MARGIN_TOP + plot_h - y
        );
        let _ = writeln!(
            s,
            r##"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12" fill="{OVERFLOW_FILL}" text-anchor="middle">&gt;100</text>"##,
            x + bar_w / 2.0,
            MARGIN_TOP + plot_h + 16.0
        );
    }

    // axes
    let _ = writeln!(
        s,
        r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{AXIS_COLOR}" stroke-width="1.5"/>"##,
        MARGIN_LEFT,
        MARGIN_TOP + plot_h,
        MARGIN_LEFT + plot_w,
        MARGIN_TOP + plot_h
    );
    let _ = writeln!(
        s,
        r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{AXIS_COLOR}" stroke-width="1.5"/>"##,
        MARGIN_LEFT,
        MARGIN_TOP,
        MARGIN_LEFT,
        MARGIN_TOP + plot_h
    );

    // x tick labels on bin edges, thinned to at most ~12
    let n_edges = ((hi - lo) / w).round() as usize + 1;
    let step = n_edges.div_ceil(12).max(1);
    for i in (0..n_edges).step_by(step) {
        let pct = lo + i as f64 * w;
        let x = x_of(pct);
        let _ = writeln!(
            s,
            r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{AXIS_COLOR}" stroke-width="1"/>"##,
            x,
            MARGIN_TOP + plot_h,
            x,
            MARGIN_TOP + plot_h + 5.0
        );
        let _ = writeln!(
            s,
            r##"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12" fill="{AXIS_COLOR}" text-anchor="middle">{:.1}</text>"##,
            x,
            MARGIN_TOP + plot_h + 18.0,
            pct
        );
    }

    // axis titles
    let _ = writeln!(
        s,
        r##"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="14" fill="{AXIS_COLOR}" text-anchor="middle">turnout %</text>"##,
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 18.0
    );
    let _ = writeln!(
        s,
        r##"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="14" fill="{AXIS_COLOR}" text-anchor="middle" transform="rotate(-90 {:.2} {:.2})">count</text>"##,
        20.0,
        MARGIN_TOP + plot_h / 2.0,
        20.0,
        MARGIN_TOP + plot_h / 2.0
    );

    s.push_str("</svg>\n");
    s
}

/// Smallest 1/2/5 · 10^k value at or above `n`.
fn nice_ceiling(n: usize) -> usize {
    let mut unit = 1usize;
    loop {
        for mult in [1, 2, 5] {
            let candidate = mult * unit;
            if candidate >= n {
                return candidate;
            }
        }
        unit *= 10;
    }
}

fn format_count(count: f64) -> String {
    if count.fract() == 0.0 {
        format!("{count:.0}")
    } else {
        format!("{count:.1}")
    }
}
