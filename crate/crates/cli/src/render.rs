//! Deterministic ASCII and SVG rendering.
//!
//! ASCII prints the square grid with rows top-down (`#` dot, `.` empty).
//! SVG places a filled unit square per dot on the square grid, and a
//! regular hexagon of side `1/sqrt(3)` at each represented hexagon centre
//! on the hexagonal grid. All coordinates are written with fixed
//! four-decimal formatting so byte output is reproducible.

use anyhow::{bail, Result};

use ddc_core::config::ConfigRecord;
use ddc_core::grid::{xi_inverse, GridKind};

/// Format version recorded in the SVG header comment.
const SVG_FORMAT_VERSION: u32 = 1;

pub fn ascii(record: &ConfigRecord) -> Result<String> {
    if record.grid != GridKind::Square {
        bail!("ascii rendering is defined for the square grid only");
    }
    let config = record.configuration();
    if config.is_empty() {
        return Ok(String::from("(empty configuration)\n"));
    }
    let dots = config.dots();
    let min_i = dots.iter().map(|p| p.i).min().unwrap();
    let max_i = dots.iter().map(|p| p.i).max().unwrap();
    let min_j = dots.iter().map(|p| p.j).min().unwrap();
    let max_j = dots.iter().map(|p| p.j).max().unwrap();
    let mut out = String::new();
    for j in (min_j..=max_j).rev() {
        for i in min_i..=max_i {
            out.push(
                if config
                    .dots()
                    .binary_search(&ddc_core::grid::pt(i, j))
                    .is_ok()
                {
                    '#'
                } else {
                    '.'
                },
            );
        }
        out.push('\n');
    }
    Ok(out)
}

fn fmt(v: f64) -> String {
    // normalize negative zero so output is byte-stable
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.4}")
}

pub fn svg(record: &ConfigRecord) -> Result<String> {
    let config = record.configuration();
    if config.is_empty() {
        bail!("cannot render an empty configuration");
    }
    let centres: Vec<(f64, f64)> = config
        .dots()
        .iter()
        .map(|p| match record.grid {
            GridKind::Square => (p.i as f64, -(p.j as f64)),
            GridKind::Hexagonal => {
                let (x, y) = xi_inverse(p.i, p.j);
                (x, -y)
            }
        })
        .collect();
    let pad = 1.0;
    let min_x = centres.iter().map(|c| c.0).fold(f64::INFINITY, f64::min) - pad;
    let max_x = centres
        .iter()
        .map(|c| c.0)
        .fold(f64::NEG_INFINITY, f64::max)
        + pad;
    let min_y = centres.iter().map(|c| c.1).fold(f64::INFINITY, f64::min) - pad;
    let max_y = centres
        .iter()
        .map(|c| c.1)
        .fold(f64::NEG_INFINITY, f64::max)
        + pad;

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n",
        fmt(min_x),
        fmt(min_y),
        fmt(max_x - min_x),
        fmt(max_y - min_y)
    ));
    out.push_str(&format!("<!-- ddc svg format {SVG_FORMAT_VERSION} -->\n"));
    match record.grid {
        GridKind::Square => {
            for (x, y) in &centres {
                out.push_str(&format!(
                    "<rect x=\"{}\" y=\"{}\" width=\"1\" height=\"1\" fill=\"black\" stroke=\"white\" stroke-width=\"0.05\"/>\n",
                    fmt(x - 0.5),
                    fmt(y - 0.5)
                ));
            }
        }
        GridKind::Hexagonal => {
            // pointy-top hexagon: vertices at 30 + 60k degrees, circumradius
            // 1/sqrt(3) so edge-sharing centres sit at distance 1
            let radius = 1.0 / 3f64.sqrt();
            for (x, y) in &centres {
                let pts: Vec<String> = (0..6)
                    .map(|k| {
                        let ang =
                            std::f64::consts::PI / 6.0 + k as f64 * std::f64::consts::PI / 3.0;
                        format!(
                            "{},{}",
                            fmt(x + radius * ang.cos()),
                            fmt(y + radius * ang.sin())
                        )
                    })
                    .collect();
                out.push_str(&format!(
                    "<polygon points=\"{}\" fill=\"black\" stroke=\"white\" stroke-width=\"0.05\"/>\n",
                    pts.join(" ")
                ));
            }
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}
