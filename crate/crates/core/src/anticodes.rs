//! Maximal anticodes in both grids: generators, size formulas,
//! classification, exhaustive enumeration, and witness configurations.
//!
//! An anticode of diameter `r` is a cell set with all pairwise distances at
//! most `r`; it is maximal when no further cell can join. Under Manhattan
//! distance the maximal anticodes are the Lee sphere and quadricentred Lee
//! sphere (even `r`) or the bicentred Lee sphere (odd `r`). Under hexagonal
//! distance they form the chain `A_0, ..., A_{ceil((r-1)/2)}` where `A_i`
//! is the box `[0,r]^2` cut by the diagonals `y = x - i` and
//! `y = x - i + r`; `A_i` and `A_{r-i}` differ by a 180-degree rotation.

use std::collections::HashSet;

use crate::config::{Configuration, Shape};
use crate::grid::{
    apply_symmetry, hex_distance, lattice_symmetries, manhattan, pt, GridKind, GridPoint, Metric,
};
use crate::{Error, Result};

/// Orientation of the two centre cells of a bicentred Lee sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Horizontal,
    Vertical,
}

/// The maximal-anticode families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum AnticodeFamily {
    /// Single-centre Manhattan ball of radius `R`; `2R^2 + 2R + 1` cells.
    LeeSphere,
    /// Two centres; `2R^2 + 4R + 2` cells.
    BicentredLee(Orientation),
    /// Four centres (a 2x2 block), positions within `R - 1` of the block;
    /// `2R^2 + 2R` cells.
    QuadricentredLee,
    /// The hexagonal anticode `A_i` of diameter `r`;
    /// `(r+1)(r+2)/2 + i(r-i)` cells.
    HexAnticode { index: u64 },
    /// Hexagonal ball of radius `R`; `3R^2 + 3R + 1` cells. Equals
    /// `A_R` at diameter `2R`.
    HexSphere,
}

impl AnticodeFamily {
    pub fn grid_kind(self) -> GridKind {
        match self {
            AnticodeFamily::LeeSphere
            | AnticodeFamily::BicentredLee(_)
            | AnticodeFamily::QuadricentredLee => GridKind::Square,
            AnticodeFamily::HexAnticode { .. } | AnticodeFamily::HexSphere => GridKind::Hexagonal,
        }
    }
}

/// A placed anticode: family, size parameter, and anchor cell.
///
/// Anchors: Lee-type spheres anchor at their lexicographically least centre
/// cell; `A_i` and odd-diameter hexagonal spheres anchor at the lower-left
/// corner of their bounding box; even-radius hexagonal spheres anchor at
/// their centre.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct AnticodeSpec {
    pub family: AnticodeFamily,
    /// Radius for the Lee families and `HexSphere`; diameter for
    /// `HexAnticode`.
    pub parameter: u64,
    pub anchor: GridPoint,
}

impl AnticodeSpec {
    pub fn new(family: AnticodeFamily, parameter: u64, anchor: GridPoint) -> AnticodeSpec {
        AnticodeSpec {
            family,
            parameter,
            anchor,
        }
    }

    /// Diameter of the built anticode under its natural metric.
    pub fn diameter(&self) -> u64 {
        match self.family {
            AnticodeFamily::LeeSphere | AnticodeFamily::QuadricentredLee => 2 * self.parameter,
            AnticodeFamily::BicentredLee(_) => 2 * self.parameter + 1,
            AnticodeFamily::HexAnticode { .. } => self.parameter,
            AnticodeFamily::HexSphere => 2 * self.parameter,
        }
    }

    /// Closed-form cell count.
    pub fn size(&self) -> u64 {
        let p = self.parameter;
        match self.family {
            AnticodeFamily::LeeSphere => 2 * p * p + 2 * p + 1,
            AnticodeFamily::BicentredLee(_) => 2 * p * p + 4 * p + 2,
            AnticodeFamily::QuadricentredLee => 2 * p * p + 2 * p,
            AnticodeFamily::HexAnticode { index } => (p + 1) * (p + 2) / 2 + index * (p - index),
            AnticodeFamily::HexSphere => 3 * p * p + 3 * p + 1,
        }
    }
}

/// Builds the explicit cell set of an anticode.
pub fn build_anticode(spec: &AnticodeSpec) -> Result<Shape> {
    let a = spec.anchor;
    let param = spec.parameter as i64;
    let cells: Vec<GridPoint> = match spec.family {
        AnticodeFamily::LeeSphere => {
            let r = param;
            (-r..=r)
                .flat_map(|di| {
                    ((di.abs() - r)..=(r - di.abs())).map(move |dj| pt(a.i + di, a.j + dj))
                })
                .collect()
        }
        AnticodeFamily::BicentredLee(orient) => {
            let r = param;
            let c2 = match orient {
                Orientation::Horizontal => a.offset(1, 0),
                Orientation::Vertical => a.offset(0, 1),
            };
            let mut cells = Vec::new();
            for di in -r..=r + 1 {
                for dj in -r..=r + 1 {
                    let p = a.offset(di, dj);
                    if manhattan(p, a).min(manhattan(p, c2)) <= spec.parameter {
                        cells.push(p);
                    }
                }
            }
            cells
        }
        AnticodeFamily::QuadricentredLee => {
            let r = param;
            if r < 1 {
                return Err(Error::InvalidParameter(
                    "quadricentred Lee sphere requires R >= 1".into(),
                ));
            }
            let centres = [a, a.offset(1, 0), a.offset(0, 1), a.offset(1, 1)];
            let mut cells = Vec::new();
            for di in -r..=r + 1 {
                for dj in -r..=r + 1 {
                    let p = a.offset(di, dj);
                    if centres.iter().map(|c| manhattan(p, *c)).min().unwrap() <= spec.parameter - 1
                    {
                        cells.push(p);
                    }
                }
            }
            cells
        }
        AnticodeFamily::HexAnticode { index } => {
            let r = param;
            let i = index as i64;
            if i > r {
                return Err(Error::InvalidParameter(format!(
                    "hex anticode index {index} exceeds diameter {r}"
                )));
            }
            let mut cells = Vec::new();
            for x in 0..=r {
                for y in 0..=r {
                    if x - i <= y && y <= x - i + r {
                        cells.push(pt(a.i + x, a.j + y));
                    }
                }
            }
            cells
        }
        AnticodeFamily::HexSphere => {
            let r = param;
            let mut cells = Vec::new();
            for di in -r..=r {
                for dj in -r..=r {
                    if hex_distance(pt(0, 0), pt(di, dj)) <= spec.parameter {
                        cells.push(a.offset(di, dj));
                    }
                }
            }
            cells
        }
    };
    let shape = Shape::new(spec.family.grid_kind(), cells);
    debug_assert_eq!(shape.len() as u64, spec.size());
    Ok(shape)
}

/// All pairwise distances at most `r` (`r^2` for squared-Euclidean)?
pub fn is_anticode(s: &Shape, metric: Metric, r: u64) -> Result<bool> {
    let limit = if metric == Metric::EuclideanSq {
        r * r
    } else {
        r
    };
    let cells = s.cells();
    for (ai, a) in cells.iter().enumerate() {
        for b in &cells[ai + 1..] {
            if metric.distance(s.kind(), *a, *b)? > limit {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The maximal-anticode types of diameter `r`, anchored at the origin.
///
/// Square grid, even `r`: Lee sphere and quadricentred Lee sphere of radius
/// `r/2`; odd `r`: the bicentred Lee sphere of radius `(r-1)/2` (one family
/// up to rotation; the horizontal representative is returned). Hexagonal
/// grid: `A_0, ..., A_{ceil((r-1)/2)}`.
pub fn maximal_anticode_types(r: u64, kind: GridKind) -> Vec<AnticodeSpec> {
    let origin = pt(0, 0);
    match kind {
        GridKind::Square => {
            if r % 2 == 0 {
                vec![
                    AnticodeSpec::new(AnticodeFamily::LeeSphere, r / 2, origin),
                    AnticodeSpec::new(AnticodeFamily::QuadricentredLee, r / 2, origin),
                ]
            } else {
                vec![AnticodeSpec::new(
                    AnticodeFamily::BicentredLee(Orientation::Horizontal),
                    (r - 1) / 2,
                    origin,
                )]
            }
        }
        GridKind::Hexagonal => (0..=(r.saturating_sub(1)).div_ceil(2))
            .map(|i| AnticodeSpec::new(AnticodeFamily::HexAnticode { index: i }, r, origin))
            .collect(),
    }
}

/// Canonical hexagonal family index: `A_i` and `A_{r-i}` are one family.
pub fn canonical_hex_index(r: u64, i: u64) -> u64 {
    i.min(r - i)
}

fn metric_for(kind: GridKind) -> Metric {
    match kind {
        GridKind::Square => Metric::Manhattan,
        GridKind::Hexagonal => Metric::HexDistance,
    }
}

/// Exhaustive Bron-Kerbosch enumeration of all maximal anticodes of
/// diameter `r`, deduplicated up to translation and lattice symmetry so the
/// result is directly comparable with [`maximal_anticode_types`].
///
/// Works inside a `(2r+1) x (2r+1)` box; cliques clipped by the box
/// boundary are discarded by re-checking maximality in the full grid.
/// Guarded to `r <= 12`.
pub fn enumerate_maximal_anticodes(r: u64, kind: GridKind) -> Result<Vec<Shape>> {
    if r > 12 {
        return Err(Error::CostGuard(format!(
            "exhaustive anticode enumeration is limited to r <= 12, got {r}"
        )));
    }
    if r == 0 {
        return Ok(vec![Shape::new(kind, vec![pt(0, 0)])]);
    }
    let metric = metric_for(kind);
    let side = (2 * r + 1) as i64;
    let n = (side * side) as usize;
    let cell = |v: usize| pt(v as i64 % side, v as i64 / side);

    // adjacency bitsets: u ~ v iff d(u, v) <= r (self-loops excluded)
    let words = n.div_ceil(64);
    let mut adj = vec![vec![0u64; words]; n];
    for u in 0..n {
        for v in 0..n {
            if u != v && metric.distance(kind, cell(u), cell(v))? <= r {
                adj[u][v / 64] |= 1 << (v % 64);
            }
        }
    }

    let mut cliques: Vec<Vec<usize>> = Vec::new();
    bron_kerbosch(
        &adj,
        &mut Vec::new(),
        &mut full_set(n, words),
        &mut vec![0u64; words],
        words,
        &mut cliques,
    );

    // dedup by translation first, then reject box-clipped candidates and
    // finally merge symmetric classes
    let mut by_translation: HashSet<Vec<GridPoint>> = HashSet::new();
    for c in &cliques {
        let shape = Shape::new(kind, c.iter().map(|&v| cell(v)).collect());
        by_translation.insert(shape.canonical_translate());
    }
    let mut classes: Vec<Shape> = Vec::new();
    'cand: for cells in by_translation {
        let shape = Shape::new(kind, cells);
        // maximal in the full grid: no outside cell is compatible with all
        let (min, max) = shape.bounding_box();
        for di in (min.i - r as i64)..=(max.i + r as i64) {
            for dj in (min.j - r as i64)..=(max.j + r as i64) {
                let p = pt(di, dj);
                if shape.contains(p) {
                    continue;
                }
                let fits = shape
                    .cells()
                    .iter()
                    .all(|c| metric.distance(kind, *c, p).unwrap() <= r);
                if fits {
                    continue 'cand; // clipped by the box; a larger anticode exists
                }
            }
        }
        let canon = symmetry_canonical(&shape);
        if !classes.iter().any(|s| symmetry_canonical(s) == canon) {
            classes.push(shape);
        }
    }
    classes.sort_by(|a, b| {
        (a.len(), a.canonical_translate()).cmp(&(b.len(), b.canonical_translate()))
    });
    Ok(classes)
}

/// Least translation-canonical form over all lattice symmetries.
fn symmetry_canonical(s: &Shape) -> Vec<GridPoint> {
    lattice_symmetries(s.kind())
        .into_iter()
        .map(|m| {
            let mapped = Shape::new(
                s.kind(),
                s.cells().iter().map(|&p| apply_symmetry(m, p)).collect(),
            );
            mapped.canonical_translate()
        })
        .min()
        .unwrap()
}

fn full_set(n: usize, words: usize) -> Vec<u64> {
    let mut s = vec![0u64; words];
    for v in 0..n {
        s[v / 64] |= 1 << (v % 64);
    }
    s
}

fn bron_kerbosch(
    adj: &[Vec<u64>],
    r: &mut Vec<usize>,
    p: &mut Vec<u64>,
    x: &mut Vec<u64>,
    words: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if p.iter().all(|&w| w == 0) && x.iter().all(|&w| w == 0) {
        out.push(r.clone());
        return;
    }
    // pivot: vertex of P ∪ X with most neighbours in P
    let mut pivot = None;
    let mut best = usize::MAX;
    for set in [&*p, &*x] {
        for (wi, &w) in set.iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                let v = wi * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let missing = p
                    .iter()
                    .zip(&adj[v])
                    .map(|(&pw, &aw)| (pw & !aw).count_ones() as usize)
                    .sum::<usize>();
                if missing < best {
                    best = missing;
                    pivot = Some(v);
                }
            }
        }
    }
    let pivot_adj = pivot
        .map(|v| adj[v].clone())
        .unwrap_or_else(|| vec![0; words]);
    // candidates: P \ N(pivot)
    let cands: Vec<usize> = {
        let mut cv = Vec::new();
        for wi in 0..words {
            let mut bits = p[wi] & !pivot_adj[wi];
            while bits != 0 {
                cv.push(wi * 64 + bits.trailing_zeros() as usize);
                bits &= bits - 1;
            }
        }
        cv
    };
    for v in cands {
        r.push(v);
        let mut p2: Vec<u64> = p.iter().zip(&adj[v]).map(|(&a, &b)| a & b).collect();
        let mut x2: Vec<u64> = x.iter().zip(&adj[v]).map(|(&a, &b)| a & b).collect();
        bron_kerbosch(adj, r, &mut p2, &mut x2, words, out);
        r.pop();
        p[v / 64] &= !(1 << (v % 64));
        x[v / 64] |= 1 << (v % 64);
    }
}

/// All placements of maximal anticodes of diameter `r` that contain every
/// dot of `c`, as `(family-spec)` entries. Never empty for a valid input.
pub fn containing_maximal_anticodes(c: &Configuration, r: u64) -> Result<Vec<AnticodeSpec>> {
    let kind = c.kind();
    let metric = metric_for(kind);
    let diam = c.diameter(metric)?;
    if diam > r {
        return Err(Error::DiameterExceeded {
            got: diam,
            limit: r,
        });
    }
    // probe shapes: both bicentred orientations and the whole A_i chain
    let probes: Vec<AnticodeSpec> = match kind {
        GridKind::Square => {
            if r % 2 == 0 {
                vec![
                    AnticodeSpec::new(AnticodeFamily::LeeSphere, r / 2, pt(0, 0)),
                    AnticodeSpec::new(AnticodeFamily::QuadricentredLee, r / 2, pt(0, 0)),
                ]
            } else {
                vec![
                    AnticodeSpec::new(
                        AnticodeFamily::BicentredLee(Orientation::Horizontal),
                        (r - 1) / 2,
                        pt(0, 0),
                    ),
                    AnticodeSpec::new(
                        AnticodeFamily::BicentredLee(Orientation::Vertical),
                        (r - 1) / 2,
                        pt(0, 0),
                    ),
                ]
            }
        }
        GridKind::Hexagonal => (0..=r)
            .map(|i| AnticodeSpec::new(AnticodeFamily::HexAnticode { index: i }, r, pt(0, 0)))
            .collect(),
    };
    let mut out = Vec::new();
    let d0 = c.dots()[0];
    for spec in probes {
        let shape = build_anticode(&spec)?;
        // candidate anchors put some cell of the shape on the first dot
        let mut anchors: Vec<GridPoint> = shape
            .cells()
            .iter()
            .map(|s| pt(d0.i - s.i, d0.j - s.j))
            .collect();
        anchors.sort_unstable();
        anchors.dedup();
        for t in anchors {
            let placed = shape.translate(t.i, t.j);
            if c.dots().iter().all(|d| placed.contains(*d)) {
                out.push(AnticodeSpec::new(spec.family, spec.parameter, t));
            }
        }
    }
    Ok(out)
}

/// A configuration whose only containing maximal anticode (up to
/// translation, and rotation within one family) is of the given family.
///
/// Odd `r`: two dots on a row (or column) at distance `r`. Even `r`, Lee:
/// the same two-dot example. Even `r`, quadricentred with `R = r/2 >= 2`:
/// the four dots `(0,1-R), (0,R), (R,0), (R,1)`, which pin the bounding
/// diagonals of the quadricentred sphere. (For `r = 2` no quadricentred
/// witness exists: the four extreme cells are forced and they repeat a
/// difference.) Hexagonal `A_i`: the corner dots of `A_i`; for even `r`
/// with `i = r/2` the six corners repeat a difference, so two corners are
/// replaced by adjacent boundary dots, giving seven dots.
pub fn witness_configuration(r: u64, family: AnticodeFamily) -> Result<Configuration> {
    let bad = |msg: &str| Err(Error::InvalidParameter(msg.into()));
    match family {
        AnticodeFamily::BicentredLee(orient) => {
            if r % 2 == 0 || r < 1 {
                return bad("bicentred witnesses need odd r");
            }
            let dots = match orient {
                Orientation::Horizontal => vec![pt(0, 0), pt(r as i64, 0)],
                Orientation::Vertical => vec![pt(0, 0), pt(0, r as i64)],
            };
            Ok(Configuration::new(GridKind::Square, dots))
        }
        AnticodeFamily::LeeSphere => {
            if r % 2 != 0 || r < 2 {
                return bad("Lee-sphere witnesses need even r >= 2");
            }
            Ok(Configuration::new(
                GridKind::Square,
                vec![pt(0, 0), pt(r as i64, 0)],
            ))
        }
        AnticodeFamily::QuadricentredLee => {
            if r % 2 != 0 || r < 4 {
                return bad("quadricentred witnesses need even r >= 4");
            }
            let rr = (r / 2) as i64;
            Ok(Configuration::new(
                GridKind::Square,
                vec![pt(0, 1 - rr), pt(0, rr), pt(rr, 0), pt(rr, 1)],
            ))
        }
        AnticodeFamily::HexAnticode { index } => hex_witness(r, index),
        AnticodeFamily::HexSphere => {
            if r % 2 != 0 {
                return bad("hexagonal-sphere witnesses need even r");
            }
            hex_witness(r, r / 2)
        }
    }
}

fn hex_witness(r: u64, i: u64) -> Result<Configuration> {
    if i > (r.saturating_sub(1)).div_ceil(2) {
        return Err(Error::InvalidParameter(format!(
            "hex anticode family index {i} out of range for diameter {r}"
        )));
    }
    let ri = r as i64;
    let ii = i as i64;
    let dots = if i == 0 {
        // triangle corners
        vec![pt(0, 0), pt(0, ri), pt(ri, ri)]
    } else if r % 2 == 1 || ii < ri / 2 {
        // six corners of A_i
        vec![
            pt(0, 0),
            pt(0, ri - ii),
            pt(ii, ri),
            pt(ri, ri),
            pt(ri, ri - ii),
            pt(ii, 0),
        ]
    } else if r == 2 {
        // the radius-1 sphere is all corners; three of them pin the box
        vec![pt(0, 1), pt(1, 0), pt(2, 2)]
    } else {
        // hexagonal sphere (even r): dots on four consecutive corners, two
        // boundary dots beside the fifth, one beside the sixth
        let rr = ri / 2;
        vec![
            pt(0, 0),
            pt(0, rr),
            pt(rr, 2 * rr),
            pt(2 * rr, 2 * rr),
            pt(2 * rr, rr + 1),
            pt(2 * rr - 1, rr - 1),
            pt(rr - 1, 0),
        ]
    };
    Ok(Configuration::new(GridKind::Hexagonal, dots))
}

/// Exact count of grid points at squared Euclidean distance `<= l^2` from a
/// grid-point centre.
pub fn lattice_points_in_circle(l: u64, kind: GridKind) -> u64 {
    let l = l as i64;
    let mut count = 0u64;
    match kind {
        GridKind::Square => {
            for x in -l..=l {
                let d = l * l - x * x;
                count += 2 * isqrt(d as u64) + 1;
            }
        }
        GridKind::Hexagonal => {
            // x^2 - x y + y^2 <= l^2 has solutions for y iff 4l^2 >= 3x^2
            let mut x = 0i64;
            while 3 * x * x <= 4 * l * l {
                let d = (4 * l * l - 3 * x * x) as u64;
                let s = isqrt(d) as i64;
                let lo = div_ceil_i(x - s, 2);
                let hi = div_floor_i(x + s, 2);
                let cols = (hi - lo + 1).max(0) as u64;
                count += if x == 0 { cols } else { 2 * cols };
                x += 1;
            }
        }
    }
    count
}

/// `(pi/4) r^2`: the area bound for plane anticodes of diameter `r`.
pub fn plane_anticode_area_bound(r: f64) -> f64 {
    std::f64::consts::FRAC_PI_4 * r * r
}

pub(crate) fn isqrt(v: u64) -> u64 {
    if v == 0 {
        return 0;
    }
    let mut x = (v as f64).sqrt() as u64;
    while x > 0 && x * x > v {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= v {
        x += 1;
    }
    x
}

pub(crate) fn div_floor_i(a: i64, b: i64) -> i64 {
    let d = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        d - 1
    } else {
        d
    }
}

pub(crate) fn div_ceil_i(a: i64, b: i64) -> i64 {
    -div_floor_i(-a, b)
}
