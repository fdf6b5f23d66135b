//! Property tests for the library invariants that quantify over
//! arbitrary inputs.

use proptest::prelude::*;

use ddc_core::algebra::SidonSet;
use ddc_core::anticodes::{build_anticode, AnticodeFamily, AnticodeSpec};
use ddc_core::config::{Configuration, PeriodicArray, Shape};
use ddc_core::constructions::doubly_periodic_folding;
use ddc_core::extraction::best_shift;
use ddc_core::grid::{euclid_sq, hex_distance, manhattan, pt, GridKind, GridPoint};

fn point_strategy(range: i64) -> impl Strategy<Value = GridPoint> {
    (-range..=range, -range..=range).prop_map(|(i, j)| pt(i, j))
}

/// Reference DDC verification: sorted list of all ordered differences,
/// checked for adjacent duplicates. Same semantics, different route.
fn ddc_oracle(dots: &[GridPoint]) -> bool {
    let mut diffs = Vec::new();
    for a in dots {
        for b in dots {
            if a != b {
                diffs.push((b.i - a.i, b.j - a.j));
            }
        }
    }
    diffs.sort_unstable();
    diffs.windows(2).all(|w| w[0] != w[1])
}

proptest! {
    #[test]
    fn distances_are_metrics(a in point_strategy(40), b in point_strategy(40), c in point_strategy(40)) {
        for kind in [GridKind::Square, GridKind::Hexagonal] {
            // symmetry, identity, translation invariance
            let d = |p, q| match kind {
                GridKind::Square => manhattan(p, q),
                GridKind::Hexagonal => hex_distance(p, q),
            };
            prop_assert_eq!(d(a, b), d(b, a));
            prop_assert_eq!(d(a, a), 0);
            prop_assert_eq!(d(a, b) == 0, a == b);
            let t = pt(7, -3);
            prop_assert_eq!(
                d(pt(a.i + t.i, a.j + t.j), pt(b.i + t.i, b.j + t.j)),
                d(a, b)
            );
            prop_assert!(d(a, c) <= d(a, b) + d(b, c));
            // euclidean: triangle inequality on square roots
            let e = |p, q| (euclid_sq(p, q, kind) as f64).sqrt();
            prop_assert!(e(a, c) <= e(a, b) + e(b, c) + 1e-9);
        }
    }

    #[test]
    fn verify_ddc_matches_oracle(dots in prop::collection::vec(point_strategy(25), 0..60)) {
        let config = Configuration::new(GridKind::Square, dots);
        prop_assert_eq!(config.verify_ddc(), ddc_oracle(config.dots()));
    }

    #[test]
    fn sidon_differences_iff_sums(
        elems in prop::collection::vec(0u64..60, 1..8),
        n in 8u64..120,
    ) {
        let s = SidonSet::new_mod(elems, n).unwrap();
        prop_assert_eq!(s.is_sidon(), s.has_distinct_pair_sums());
    }

    #[test]
    fn density_survives_period_tiling(
        dots in prop::collection::vec((0i64..6, 0i64..7), 0..12),
        (ti, tj) in (2u64..4, 2u64..4),
    ) {
        let base = PeriodicArray::from_fundamental(
            GridKind::Square, 6, 7, dots.iter().map(|&(i, j)| pt(i, j)).collect()).unwrap();
        let mut tiled = Vec::new();
        for bi in 0..ti as i64 {
            for bj in 0..tj as i64 {
                for &(i, j) in &dots {
                    tiled.push(pt(i + 6 * bi, j + 7 * bj));
                }
            }
        }
        let big = PeriodicArray::from_fundamental(GridKind::Square, 6 * ti, 7 * tj, tiled).unwrap();
        prop_assert_eq!(base.density(), big.density());
        for i in -8i64..8 {
            for j in -8i64..8 {
                prop_assert_eq!(base.has_dot(pt(i, j)), big.has_dot(pt(i, j)));
            }
        }
    }

    #[test]
    fn shape_ddc_monotone_under_inclusion(
        seed in prop::collection::vec(0u64..24, 1..5),
        keep in prop::collection::vec(any::<bool>(), 8),
    ) {
        // a folding array over a valid Sidon subset of Z_24 when possible
        let d = SidonSet::new_mod(seed, 24).unwrap();
        if !d.is_sidon() {
            return Ok(());
        }
        let a = doubly_periodic_folding(&d, 4, 6).unwrap();
        let full: Vec<GridPoint> =
            (0..4).flat_map(|i| (0..2).map(move |j| pt(i, j))).collect();
        let full_shape = Shape::new(GridKind::Square, full.clone());
        let sub_cells: Vec<GridPoint> = full
            .iter()
            .zip(&keep)
            .filter(|(_, &k)| k)
            .map(|(c, _)| *c)
            .collect();
        if a.is_periodic_shape_ddc(&full_shape).unwrap() && !sub_cells.is_empty() {
            let sub = Shape::new(GridKind::Square, sub_cells);
            prop_assert!(a.is_periodic_shape_ddc(&sub).unwrap());
        }
    }

    #[test]
    fn best_shift_beats_average(seed in prop::collection::vec(0u64..48, 1..7)) {
        let d = SidonSet::new_mod(seed, 48).unwrap();
        if !d.is_sidon() || d.modulus() != Some(48) {
            return Ok(());
        }
        // radius-3 sphere needs n >= 25; 48 qualifies
        let array = ddc_core::constructions::doubly_periodic_leedd(3, &d).unwrap();
        let sphere = build_anticode(
            &AnticodeSpec::new(AnticodeFamily::LeeSphere, 3, pt(0, 0))).unwrap();
        let (_, m, config) = best_shift(&array, &sphere).unwrap();
        prop_assert!(m >= array.density().ceil_mul(sphere.len() as u64));
        prop_assert!(config.verify_ddc());
    }

    #[test]
    fn anticode_pair_distances(r in 1u64..8, i in point_strategy(3)) {
        // every built maximal anticode translate is an anticode at its
        // diameter, wherever it is anchored
        for spec in ddc_core::anticodes::maximal_anticode_types(r, GridKind::Square) {
            let anchored = AnticodeSpec::new(spec.family, spec.parameter, i);
            let s = build_anticode(&anchored).unwrap();
            prop_assert!(ddc_core::anticodes::is_anticode(
                &s, ddc_core::grid::Metric::Manhattan, r).unwrap());
        }
    }
}

#[test]
fn hex_anticode_rotation_pairing_exhaustive() {
    // A_i vs A_{r-i} under 180-degree rotation, all r <= 12
    for r in 1..=12u64 {
        for i in 0..=r {
            let a = build_anticode(&AnticodeSpec::new(
                AnticodeFamily::HexAnticode { index: i },
                r,
                pt(0, 0),
            ))
            .unwrap();
            let b = build_anticode(&AnticodeSpec::new(
                AnticodeFamily::HexAnticode { index: r - i },
                r,
                pt(0, 0),
            ))
            .unwrap();
            let rotated = Shape::new(
                GridKind::Hexagonal,
                a.cells().iter().map(|p| pt(-p.i, -p.j)).collect(),
            );
            assert_eq!(rotated.canonical_translate(), b.canonical_translate());
        }
    }
}

#[test]
fn gauss_circle_sandwich_hexagonal() {
    // hexagonal analogue: (sqrt(3)/2) count within the padded circles
    for l in 1..=500u64 {
        let count = ddc_core::anticodes::lattice_points_in_circle(l, GridKind::Hexagonal) as f64;
        let area = 3f64.sqrt() / 2.0 * count;
        let lf = l as f64;
        let lo = std::f64::consts::PI * (lf - 1.0 / 3f64.sqrt()).powi(2);
        let hi = std::f64::consts::PI * (lf + 1.0 / 3f64.sqrt()).powi(2);
        assert!(lo <= area && area <= hi, "l={l}");
    }
}
