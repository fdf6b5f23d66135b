//! Exact upper-bound evaluators: the trivial vector-count bound, the
//! covering-inequality sweep for all four classes and for arbitrary
//! shapes, the honeycomb-array nonexistence computation, and the
//! asymptotic coefficient table.
//!
//! All class-metric inequality evaluations run in exact integer
//! arithmetic; the honeycomb threshold is sensitive to rounding. The
//! squared-Euclidean classes use explicit sandwich constants in their
//! anticode-size bound, which keeps them sound (if slightly weaker than
//! the asymptotic statements) at finite `r`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::anticodes::lattice_points_in_circle;
use crate::config::{Configuration, DdcClass, Shape};
use crate::grid::{GridKind, GridPoint, Metric};
use crate::{Error, Result};

/// Exact count of nonzero grid vectors of class-metric length at most `r`:
/// `2r^2 + 2r` (Manhattan), `3r^2 + 3r` (hexagonal), or the exact lattice
/// circle count minus one (Euclidean classes).
pub fn vector_count(r: u64, class: DdcClass) -> u64 {
    match class {
        DdcClass::DdBar => 2 * r * r + 2 * r,
        DdcClass::DdBarStar => 3 * r * r + 3 * r,
        DdcClass::Dd => lattice_points_in_circle(r, GridKind::Square) - 1,
        DdcClass::DdStar => lattice_points_in_circle(r, GridKind::Hexagonal) - 1,
    }
}

/// Largest `m` with `m(m-1) <= vector_count(r, class)`.
pub fn trivial_upper(r: u64, class: DdcClass) -> u64 {
    largest_m_quadratic(vector_count(r, class))
}

/// Largest `m >= 1` with `m(m-1) <= v`.
fn largest_m_quadratic(v: u64) -> u64 {
    let mut m = ((v as f64).sqrt() as u64).max(1);
    while m * (m - 1) <= v {
        m += 1;
    }
    while m > 1 && m * (m - 1) > v {
        m -= 1;
    }
    m
}

/// Exact maximum anticode cardinality at diameter `d` under the class
/// metric. Manhattan: `ceil((d+1)^2 / 2)` (the best of the three Lee
/// families). Hexagonal: the hexagonal-sphere size. Euclidean classes:
/// the area bound with its explicit boundary slack,
/// `ceil((pi/4)(d + sqrt(2))^2)` on the square grid and
/// `ceil((pi/(2 sqrt(3)))(d + 2/sqrt(3))^2)` on the hexagonal grid.
pub fn max_anticode_size(d: u64, class: DdcClass) -> u64 {
    match class {
        DdcClass::DdBar => ((d + 1) * (d + 1)).div_ceil(2),
        DdcClass::DdBarStar => {
            if d % 2 == 0 {
                (3 * d * d + 6 * d + 4) / 4
            } else {
                3 * (d + 1) * (d + 1) / 4
            }
        }
        DdcClass::Dd => {
            let x = d as f64 + 2f64.sqrt();
            (std::f64::consts::FRAC_PI_4 * x * x).ceil() as u64
        }
        DdcClass::DdStar => {
            let x = d as f64 + 2.0 / 3f64.sqrt();
            (std::f64::consts::PI / (2.0 * 3f64.sqrt()) * x * x).ceil() as u64
        }
    }
}

/// Points in the covering sphere of radius `l` under the class metric.
pub fn covering_sphere_size(l: u64, class: DdcClass) -> u64 {
    match class {
        DdcClass::DdBar => 2 * l * l + 2 * l + 1,
        DdcClass::DdBarStar => 3 * l * l + 3 * l + 1,
        DdcClass::Dd => lattice_points_in_circle(l, GridKind::Square),
        DdcClass::DdStar => lattice_points_in_circle(l, GridKind::Hexagonal),
    }
}

/// Largest `m` with `m^2 * a <= w * (a + m)`, i.e.
/// `m^2 <= w (1 + m/a)`, in exact integer arithmetic.
fn largest_m_covering(w: u64, a: u64) -> u64 {
    let (w, a) = (w as u128, a as u128);
    let holds = |m: u128| m * m * a <= w * (a + m);
    // m* = (w/a + sqrt((w/a)^2 + 4w)) / 2, then adjust exactly
    let estimate = {
        let wa = w as f64 / a as f64;
        ((wa + (wa * wa + 4.0 * w as f64).sqrt()) / 2.0) as u128
    };
    let mut m = estimate.max(1);
    while holds(m + 1) {
        m += 1;
    }
    while m > 0 && !holds(m) {
        m -= 1;
    }
    m as u64
}

/// Result of the covering-inequality sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundReport {
    pub version: String,
    pub class: DdcClass,
    pub r: u64,
    /// Covering radius minimizing the bound.
    pub best_l: u64,
    /// Points in the covering sphere of radius `best_l`.
    pub a: u64,
    /// Anticode-size bound on spheres touching the configuration,
    /// evaluated at diameter `r + 2*best_l`.
    pub w: u64,
    /// The sweep minimum, capped by the trivial bound.
    pub m_max: u64,
    pub trivial_m_max: u64,
}

/// Covering-inequality upper bound on `m` for the class at radius `r`:
/// sweeps the covering radius `l` over `[1, r]`, evaluating
/// `m^2 <= w (1 + m/a)` with `a` the sphere size and
/// `w = max_anticode_size(r + 2l)`, and returns the minimum, capped by
/// [`trivial_upper`].
pub fn erdos_turan_upper(r: u64, class: DdcClass) -> Result<BoundReport> {
    if r < 2 {
        return Err(Error::InvalidParameter(
            "covering bound needs r >= 2".into(),
        ));
    }
    let mut best: Option<(u64, u64, u64, u64)> = None; // (m, l, a, w)
    for l in 1..=r {
        let a = covering_sphere_size(l, class);
        let w = max_anticode_size(r + 2 * l, class);
        let m = largest_m_covering(w, a);
        if best.is_none_or(|(bm, ..)| m < bm) {
            best = Some((m, l, a, w));
        }
    }
    let (m, best_l, a, w) = best.expect("sweep is non-empty for r >= 2");
    let trivial = trivial_upper(r, class);
    Ok(BoundReport {
        version: crate::REPORT_VERSION.to_string(),
        class,
        r,
        best_l,
        a,
        w,
        m_max: m.min(trivial),
        trivial_m_max: trivial,
    })
}

/// Covering-inequality bound for a DDC confined to an arbitrary finite
/// shape: `w` is computed exactly as the number of covering spheres
/// meeting the shape (its Minkowski dilation), swept over
/// `l in [1, diameter]`, capped by the trivial bound at the shape's
/// metric diameter and by `|shape|`.
pub fn generic_shape_upper(shape: &Shape, metric: Metric) -> Result<u64> {
    let class = match (shape.kind(), metric) {
        (GridKind::Square, Metric::Manhattan) => DdcClass::DdBar,
        (GridKind::Square, Metric::EuclideanSq) => DdcClass::Dd,
        (GridKind::Hexagonal, Metric::HexDistance) => DdcClass::DdBarStar,
        (GridKind::Hexagonal, Metric::EuclideanSq) => DdcClass::DdStar,
        (kind, metric) => return Err(Error::MetricMismatch { metric, kind }),
    };
    let diam_raw = {
        let cells = shape.cells();
        let mut best = 0u64;
        for (ai, a) in cells.iter().enumerate() {
            for b in &cells[ai + 1..] {
                best = best.max(metric.distance(shape.kind(), *a, *b)?);
            }
        }
        best
    };
    // squared-Euclidean diameters convert to a length scale
    let diam = if metric == Metric::EuclideanSq {
        crate::anticodes::isqrt(diam_raw)
            + if crate::anticodes::isqrt(diam_raw).pow(2) == diam_raw {
                0
            } else {
                1
            }
    } else {
        diam_raw
    };
    let cap = trivial_upper(diam.max(1), class).min(shape.len() as u64);
    let mut best = cap;
    for l in 1..=diam {
        let a = covering_sphere_size(l, class);
        let w = dilation_count(shape, metric, l)?;
        best = best.min(largest_m_covering(w, a));
    }
    Ok(best.max(1))
}

/// Number of grid points within metric distance `l` of the shape: the
/// centres of covering spheres that intersect it.
fn dilation_count(shape: &Shape, metric: Metric, l: u64) -> Result<u64> {
    let limit = if metric == Metric::EuclideanSq {
        l * l
    } else {
        l
    };
    let reach = l as i64;
    let mut seen: HashSet<GridPoint> = HashSet::new();
    for c in shape.cells() {
        for di in -reach..=reach {
            for dj in -reach..=reach {
                let p = c.offset(di, dj);
                if !seen.contains(&p) && metric.distance(shape.kind(), *c, p)? <= limit {
                    seen.insert(p);
                }
            }
        }
    }
    Ok(seen.len() as u64)
}

/// Honeycomb test: the dots (in the represented hexagonal grid) form an
/// `m x m` permutation matrix that is a DDC and occupy `m` consecutive
/// north-east diagonals `j - i = const`.
pub fn is_honeycomb_array(c: &Configuration) -> Result<bool> {
    if c.kind() != GridKind::Hexagonal {
        return Err(Error::KindMismatch(c.kind(), GridKind::Hexagonal));
    }
    let m = c.len() as i64;
    if m == 0 {
        return Ok(false);
    }
    if !c.is_permutation_matrix() || !c.verify_ddc() {
        return Ok(false);
    }
    let diags: Vec<i64> = c.dots().iter().map(|p| p.j - p.i).collect();
    let (lo, hi) = (diags.iter().min().unwrap(), diags.iter().max().unwrap());
    Ok(hi - lo <= m - 1)
}

/// Whether honeycomb arrays of order `m` are ruled out by the covering
/// inequality: an `m`-dot honeycomb array is confined to hexagonal
/// diameter `r = m - 1`, so it cannot exist if some `l in [1, r]` gives
/// `m^2 > W(r + 2l) (1 + m/a(l))` with `a(l) = 3l^2 + 3l + 1`. Returns
/// the least witness `l`. Exact integer arithmetic throughout.
pub fn honeycomb_ruled_out(m: u64) -> Result<(bool, Option<u64>)> {
    if m < 2 {
        return Err(Error::InvalidParameter(
            "honeycomb test needs m >= 2".into(),
        ));
    }
    let r = m - 1;
    for l in 1..=r {
        let a = (3 * l * l + 3 * l + 1) as u128;
        let w = max_anticode_size(r + 2 * l, DdcClass::DdBarStar) as u128;
        if (m as u128) * (m as u128) * a > w * (a + m as u128) {
            return Ok((true, Some(l)));
        }
    }
    Ok((false, None))
}

/// Scan of [`honeycomb_ruled_out`] over `m in [2, hi]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HoneycombScan {
    pub version: String,
    pub hi: u64,
    /// Smallest `m0` such that every `m in [m0, hi]` is ruled out.
    pub threshold: Option<u64>,
    /// Orders below the threshold that are nevertheless ruled out.
    pub ruled_out_below_threshold: Vec<u64>,
    pub ruled_out_count: u64,
}

pub fn honeycomb_scan(hi: u64) -> Result<HoneycombScan> {
    if hi < 2 {
        return Err(Error::InvalidParameter("scan needs hi >= 2".into()));
    }
    let ruled: Vec<bool> = (2..=hi)
        .map(|m| honeycomb_ruled_out(m).map(|(b, _)| b))
        .collect::<Result<_>>()?;
    let mut threshold = None;
    for (idx, &r) in ruled.iter().enumerate().rev() {
        if !r {
            threshold = Some(idx as u64 + 2 + 1);
            break;
        }
        threshold = Some(idx as u64 + 2);
    }
    let threshold = match threshold {
        Some(t) if t <= hi => Some(t),
        _ => None,
    };
    let below = match threshold {
        Some(t) => (2..t).filter(|&m| ruled[(m - 2) as usize]).collect(),
        None => Vec::new(),
    };
    Ok(HoneycombScan {
        version: crate::REPORT_VERSION.to_string(),
        hi,
        threshold,
        ruled_out_below_threshold: below,
        ruled_out_count: ruled.iter().filter(|&&b| b).count() as u64,
    })
}

/// The asymptotic `m/r` coefficient table: `(class, lower, upper)`.
/// Lower coefficients come from the construction pipelines, upper
/// coefficients from the covering bounds.
pub fn table1_constants() -> [(DdcClass, f64, f64); 4] {
    let (_, mu) = crate::extraction::square_circle_optimum();
    let (_, hex_mu) = crate::extraction::hex_extension_optimum();
    let sqrt2 = 2f64.sqrt();
    let pi = std::f64::consts::PI;
    [
        (DdcClass::DdBar, 1.0 / sqrt2, 1.0 / sqrt2),
        (DdcClass::Dd, mu / 2.0, pi.sqrt() / 2.0),
        (DdcClass::DdBarStar, hex_mu / 2.0, 3f64.sqrt() / 2.0),
        (
            DdcClass::DdStar,
            (2.0 / 3f64.sqrt()).sqrt() * mu / 2.0,
            pi.sqrt() / (sqrt2 * 3f64.powf(0.25)),
        ),
    ]
}
