//! Grid models, coordinates, and exact distance functions.
//!
//! Both grids are represented on `Z^2`. A point `(i, j)` sits in column `i`
//! and row `j`; columns grow rightward and rows grow upward. The hexagonal
//! grid uses the standard `Z^2` representation in which every point has the
//! six neighbors `(±1,0)`, `(0,±1)`, `(1,1)`, `(-1,-1)`; the linear map
//! [`xi`] carries real plane coordinates to this representation, and
//! [`xi_inverse`] recovers the hexagon centre of a represented point.
//!
//! Distances are exact integers throughout. Euclidean distances are stored
//! and compared as squared values: every pair of lattice points (in either
//! model) has an integer squared Euclidean distance, so `d^2 <= r^2`
//! comparisons are free of floating-point admission errors.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A grid coordinate: column `i`, row `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GridPoint {
    pub i: i64,
    pub j: i64,
}

/// Shorthand constructor.
pub fn pt(i: i64, j: i64) -> GridPoint {
    GridPoint { i, j }
}

impl GridPoint {
    pub fn offset(self, di: i64, dj: i64) -> GridPoint {
        pt(self.i + di, self.j + dj)
    }
}

impl std::fmt::Display for GridPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// The two grid models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridKind {
    Square,
    Hexagonal,
}

/// Distance measures. `EuclideanSq` carries distances as exact integer
/// squared values and is valid on both grids; the other two are
/// grid-specific.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Metric {
    Manhattan,
    HexDistance,
    EuclideanSq,
}

impl Metric {
    /// Whether this metric is defined on the given grid.
    pub fn valid_on(self, kind: GridKind) -> bool {
        match self {
            Metric::Manhattan => kind == GridKind::Square,
            Metric::HexDistance => kind == GridKind::Hexagonal,
            Metric::EuclideanSq => true,
        }
    }

    /// Distance between two points under this metric on the given grid.
    /// For `EuclideanSq` the returned value is the squared distance.
    pub fn distance(self, kind: GridKind, p: GridPoint, q: GridPoint) -> Result<u64> {
        if !self.valid_on(kind) {
            return Err(Error::MetricMismatch { metric: self, kind });
        }
        Ok(match self {
            Metric::Manhattan => manhattan(p, q),
            Metric::HexDistance => hex_distance(p, q),
            Metric::EuclideanSq => euclid_sq(p, q, kind),
        })
    }
}

/// Manhattan distance `|i2-i1| + |j2-j1|`.
pub fn manhattan(p: GridPoint, q: GridPoint) -> u64 {
    p.i.abs_diff(q.i) + p.j.abs_diff(q.j)
}

/// Hexagonal (graph) distance in the `Z^2` representation.
///
/// Closed form on the difference `(di, dj)`: `max(|di|, |dj|)` when the
/// components have equal signs, `|di| + |dj|` otherwise. The six-neighbor
/// breadth-first search is the defining notion and ships as a test oracle.
pub fn hex_distance(p: GridPoint, q: GridPoint) -> u64 {
    let di = q.i - p.i;
    let dj = q.j - p.j;
    if di.signum() * dj.signum() >= 0 {
        di.unsigned_abs().max(dj.unsigned_abs())
    } else {
        di.unsigned_abs() + dj.unsigned_abs()
    }
}

/// Exact squared Euclidean distance.
///
/// Square grid: `di^2 + dj^2`. Hexagonal grid: `di^2 - di*dj + dj^2`, the
/// squared distance of the hexagon centres at unit adjacent spacing.
pub fn euclid_sq(p: GridPoint, q: GridPoint, kind: GridKind) -> u64 {
    let di = q.i - p.i;
    let dj = q.j - p.j;
    let v = match kind {
        GridKind::Square => di * di + dj * dj,
        GridKind::Hexagonal => di * di - di * dj + dj * dj,
    };
    v as u64
}

/// Squared Euclidean norm of a difference vector.
pub fn euclid_sq_vec(di: i64, dj: i64, kind: GridKind) -> u64 {
    euclid_sq(pt(0, 0), pt(di, dj), kind)
}

/// The plane-to-representation map `xi(x, y) = (x + y/sqrt(3), 2y/sqrt(3))`.
pub fn xi(x: f64, y: f64) -> (f64, f64) {
    let s3 = 3f64.sqrt();
    (x + y / s3, 2.0 * y / s3)
}

/// Real centre of the hexagon represented by `(i, j)`:
/// `(i - j/2, j*sqrt(3)/2)`.
pub fn xi_inverse(i: i64, j: i64) -> (f64, f64) {
    (i as f64 - j as f64 / 2.0, j as f64 * 3f64.sqrt() / 2.0)
}

/// Neighbor offsets: 4 for the square grid, 6 for the hexagonal model.
pub fn neighbor_offsets(kind: GridKind) -> &'static [(i64, i64)] {
    match kind {
        GridKind::Square => &[(-1, 0), (0, -1), (0, 1), (1, 0)],
        GridKind::Hexagonal => &[(-1, -1), (-1, 0), (0, -1), (0, 1), (1, 0), (1, 1)],
    }
}

/// The neighbors of `p` in the given grid.
pub fn neighbors(p: GridPoint, kind: GridKind) -> Vec<GridPoint> {
    neighbor_offsets(kind)
        .iter()
        .map(|&(di, dj)| p.offset(di, dj))
        .collect()
}

/// The point symmetries of each lattice as integer matrices
/// `(a, b, c, d)` acting by `(i, j) -> (a*i + b*j, c*i + d*j)`.
///
/// Square: the 8 dihedral maps. Hexagonal: the 12 maps generated by the
/// 60-degree rotation `(i, j) -> (i - j, i)` and the swap reflection,
/// all of which permute the six-neighbor set.
pub fn lattice_symmetries(kind: GridKind) -> Vec<[i64; 4]> {
    match kind {
        GridKind::Square => {
            let mut out = Vec::with_capacity(8);
            let mut r = [1, 0, 0, 1];
            for _ in 0..4 {
                out.push(r);
                out.push([r[0], r[1], -r[2], -r[3]]); // compose with j -> -j
                                                      // rotate by 90 degrees: (i,j) -> (-j, i)
                r = [-r[2], -r[3], r[0], r[1]];
            }
            out.sort_unstable();
            out.dedup();
            out
        }
        GridKind::Hexagonal => {
            let mul = |a: [i64; 4], b: [i64; 4]| {
                [
                    a[0] * b[0] + a[1] * b[2],
                    a[0] * b[1] + a[1] * b[3],
                    a[2] * b[0] + a[3] * b[2],
                    a[2] * b[1] + a[3] * b[3],
                ]
            };
            let r60 = [1, -1, 1, 0];
            let swap = [0, 1, 1, 0];
            let mut out = Vec::with_capacity(12);
            let mut r = [1, 0, 0, 1];
            for _ in 0..6 {
                out.push(r);
                out.push(mul(swap, r));
                r = mul(r60, r);
            }
            out.sort_unstable();
            out.dedup();
            out
        }
    }
}

/// Apply a symmetry matrix to a point.
pub fn apply_symmetry(m: [i64; 4], p: GridPoint) -> GridPoint {
    pt(m[0] * p.i + m[1] * p.j, m[2] * p.i + m[3] * p.j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{HashSet, VecDeque};

    #[test]
    fn manhattan_examples() {
        assert_eq!(manhattan(pt(0, 0), pt(3, -4)), 7);
        assert_eq!(manhattan(pt(2, 2), pt(2, 2)), 0);
        assert_eq!(manhattan(pt(1, 1), pt(-2, 3)), 5);
    }

    /// Breadth-first search over the six-neighbor graph; ground truth for
    /// the closed-form hexagonal distance.
    fn hex_bfs_distances(radius: i64) -> Vec<Vec<u64>> {
        let side = (2 * radius + 1) as usize;
        let mut dist = vec![vec![u64::MAX; side]; side];
        let idx = |v: i64| (v + radius) as usize;
        let mut queue = VecDeque::new();
        dist[idx(0)][idx(0)] = 0;
        queue.push_back(pt(0, 0));
        while let Some(p) = queue.pop_front() {
            let d = dist[idx(p.i)][idx(p.j)];
            for n in neighbors(p, GridKind::Hexagonal) {
                if n.i.abs() > radius || n.j.abs() > radius {
                    continue;
                }
                if dist[idx(n.i)][idx(n.j)] == u64::MAX {
                    dist[idx(n.i)][idx(n.j)] = d + 1;
                    queue.push_back(n);
                }
            }
        }
        dist
    }

    #[test]
    fn hex_distance_matches_bfs_small() {
        // BFS box is padded so in-box geodesics are never clipped.
        let pad = 12;
        let dist = hex_bfs_distances(12 + pad);
        for di in -12..=12i64 {
            for dj in -12..=12i64 {
                let bfs = dist[(di + 12 + pad) as usize][(dj + 12 + pad) as usize];
                assert_eq!(hex_distance(pt(0, 0), pt(di, dj)), bfs, "({di},{dj})");
            }
        }
    }

    #[test]
    fn hex_distance_examples() {
        assert_eq!(hex_distance(pt(0, 0), pt(2, 2)), 2);
        assert_eq!(hex_distance(pt(0, 0), pt(1, -2)), 3);
        assert_eq!(hex_distance(pt(5, 5), pt(5, 5)), 0);
    }

    #[test]
    fn euclid_examples() {
        assert_eq!(euclid_sq(pt(0, 0), pt(3, 4), GridKind::Square), 25);
        assert_eq!(euclid_sq(pt(0, 0), pt(1, 1), GridKind::Hexagonal), 1);
        assert_eq!(euclid_sq(pt(0, 0), pt(1, -1), GridKind::Hexagonal), 3);
    }

    #[test]
    fn euclid_hex_matches_centre_geometry() {
        for di in -40..=40i64 {
            for dj in -40..=40i64 {
                let (x, y) = xi_inverse(di, dj);
                let float_sq = x * x + y * y;
                let exact = euclid_sq(pt(0, 0), pt(di, dj), GridKind::Hexagonal) as f64;
                assert!((float_sq - exact).abs() < 1e-9, "({di},{dj})");
            }
        }
    }

    #[test]
    fn xi_examples() {
        let (a, b) = xi(1.0, 0.0);
        assert!((a - 1.0).abs() < 1e-12 && b.abs() < 1e-12);
        let (a, b) = xi(0.5, 3f64.sqrt() / 2.0);
        assert!((a - 1.0).abs() < 1e-12 && (b - 1.0).abs() < 1e-12);
        let (a, b) = xi_inverse(1, 1);
        assert!((a - 0.5).abs() < 1e-12 && (b - 3f64.sqrt() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn neighbor_sets() {
        let sq: HashSet<_> = neighbors(pt(0, 0), GridKind::Square).into_iter().collect();
        assert_eq!(
            sq,
            [pt(-1, 0), pt(0, -1), pt(0, 1), pt(1, 0)]
                .into_iter()
                .collect()
        );
        let hx: HashSet<_> = neighbors(pt(0, 0), GridKind::Hexagonal)
            .into_iter()
            .collect();
        assert_eq!(
            hx,
            [
                pt(-1, -1),
                pt(-1, 0),
                pt(0, -1),
                pt(0, 1),
                pt(1, 0),
                pt(1, 1)
            ]
            .into_iter()
            .collect()
        );
        // translation invariance
        let hx2: HashSet<_> = neighbors(pt(2, 3), GridKind::Hexagonal)
            .into_iter()
            .collect();
        assert_eq!(hx2, hx.iter().map(|p| p.offset(2, 3)).collect());
    }

    #[test]
    fn symmetry_groups_preserve_structure() {
        for (kind, order) in [(GridKind::Square, 8), (GridKind::Hexagonal, 12)] {
            let syms = lattice_symmetries(kind);
            assert_eq!(syms.len(), order);
            let nbrs: HashSet<_> = neighbors(pt(0, 0), kind).into_iter().collect();
            for m in &syms {
                let image: HashSet<_> = nbrs.iter().map(|&p| apply_symmetry(*m, p)).collect();
                assert_eq!(image, nbrs, "{m:?}");
                // distances are preserved
                for p in [pt(3, 1), pt(-2, 5), pt(4, -4)] {
                    let q = apply_symmetry(*m, p);
                    match kind {
                        GridKind::Square => {
                            assert_eq!(manhattan(pt(0, 0), p), manhattan(pt(0, 0), q));
                        }
                        GridKind::Hexagonal => {
                            assert_eq!(hex_distance(pt(0, 0), p), hex_distance(pt(0, 0), q));
                        }
                    }
                    assert_eq!(euclid_sq_vec(p.i, p.j, kind), euclid_sq_vec(q.i, q.j, kind));
                }
            }
        }
    }

    #[test]
    fn metric_grid_compatibility() {
        assert!(Metric::Manhattan
            .distance(GridKind::Hexagonal, pt(0, 0), pt(1, 0))
            .is_err());
        assert!(Metric::HexDistance
            .distance(GridKind::Square, pt(0, 0), pt(1, 0))
            .is_err());
        assert_eq!(
            Metric::EuclideanSq
                .distance(GridKind::Hexagonal, pt(0, 0), pt(1, 1))
                .unwrap(),
            1
        );
    }
}
