//! Configurations, doubly periodic arrays, finite shapes, and the
//! distinct-difference verification semantics.
//!
//! Verification uses ordered difference vectors: a dot set is a DDC iff all
//! `m(m-1)` ordered differences between distinct dots are pairwise distinct.
//! An undirected collision `b - a = ±(d - c)` always forces an ordered
//! collision, so this captures "distinct in length or slope" exactly.
//! Hexagonal-model configurations are verified on their represented `Z^2`
//! difference vectors directly; the representation map is linear, so
//! vector-difference distinctness is representation-invariant.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::grid::{pt, GridKind, GridPoint, Metric};
use crate::{Error, Result};

/// An exact nonnegative rational, kept reduced. Used for array densities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ratio {
    num: u64,
    den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Ratio {
        assert!(den != 0, "zero denominator");
        let g = gcd(num, den).max(1);
        Ratio {
            num: num / g,
            den: den / g,
        }
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    pub fn as_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `ceil(self * k)` in exact arithmetic.
    pub fn ceil_mul(self, k: u64) -> u64 {
        let prod = self.num as u128 * k as u128;
        prod.div_ceil(self.den as u128) as u64
    }
}

impl std::fmt::Display for Ratio {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl Serialize for Ratio {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.num, self.den].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Ratio {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [num, den] = <[u64; 2]>::deserialize(d)?;
        if den == 0 {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(Ratio::new(num, den))
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The four DDC classes, named by grid and distance measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DdcClass {
    /// Square grid, Euclidean distance.
    Dd,
    /// Square grid, Manhattan distance.
    DdBar,
    /// Hexagonal grid, Euclidean distance.
    DdStar,
    /// Hexagonal grid, hexagonal distance.
    DdBarStar,
}

impl DdcClass {
    pub fn grid_kind(self) -> GridKind {
        match self {
            DdcClass::Dd | DdcClass::DdBar => GridKind::Square,
            DdcClass::DdStar | DdcClass::DdBarStar => GridKind::Hexagonal,
        }
    }

    pub fn metric(self) -> Metric {
        match self {
            DdcClass::Dd | DdcClass::DdStar => Metric::EuclideanSq,
            DdcClass::DdBar => Metric::Manhattan,
            DdcClass::DdBarStar => Metric::HexDistance,
        }
    }

    /// Whether the class distance is a squared Euclidean value.
    pub fn euclidean(self) -> bool {
        matches!(self, DdcClass::Dd | DdcClass::DdStar)
    }

    /// The diameter limit used in class checks: `r` itself for the
    /// combinatorial metrics, `r^2` for the Euclidean classes.
    pub fn diameter_limit(self, r: u64) -> u64 {
        if self.euclidean() {
            r * r
        } else {
            r
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DdcClass::Dd => "dd",
            DdcClass::DdBar => "ddbar",
            DdcClass::DdStar => "ddstar",
            DdcClass::DdBarStar => "ddbarstar",
        }
    }

    pub fn parse(s: &str) -> Option<DdcClass> {
        match s {
            "dd" => Some(DdcClass::Dd),
            "ddbar" => Some(DdcClass::DdBar),
            "ddstar" => Some(DdcClass::DdStar),
            "ddbarstar" => Some(DdcClass::DdBarStar),
            _ => None,
        }
    }
}

/// A finite dot set on a grid. Dots are kept lexicographically sorted and
/// duplicate-free; `m = dots.len()`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    kind: GridKind,
    dots: Vec<GridPoint>,
}

impl Configuration {
    pub fn new(kind: GridKind, mut dots: Vec<GridPoint>) -> Configuration {
        dots.sort_unstable();
        dots.dedup();
        Configuration { kind, dots }
    }

    pub fn kind(&self) -> GridKind {
        self.kind
    }

    pub fn dots(&self) -> &[GridPoint] {
        &self.dots
    }

    pub fn len(&self) -> usize {
        self.dots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dots.is_empty()
    }

    pub fn translate(&self, di: i64, dj: i64) -> Configuration {
        Configuration {
            kind: self.kind,
            dots: self.dots.iter().map(|p| p.offset(di, dj)).collect(),
        }
    }

    /// True iff all ordered difference vectors between distinct dots are
    /// pairwise distinct.
    pub fn verify_ddc(&self) -> bool {
        self.first_repeated_difference().is_none()
    }

    /// The witness for a failed check: two distinct ordered dot pairs with
    /// equal difference vectors, if any.
    pub fn first_repeated_difference(
        &self,
    ) -> Option<((GridPoint, GridPoint), (GridPoint, GridPoint))> {
        let mut seen: HashMap<(i64, i64), (GridPoint, GridPoint)> = HashMap::new();
        for (ai, a) in self.dots.iter().enumerate() {
            for (bi, b) in self.dots.iter().enumerate() {
                if ai == bi {
                    continue;
                }
                let d = (b.i - a.i, b.j - a.j);
                if let Some(&prev) = seen.get(&d) {
                    return Some((prev, (*a, *b)));
                }
                seen.insert(d, (*a, *b));
            }
        }
        None
    }

    /// True iff the dots form an `m x m` permutation matrix: one dot in
    /// each of `m` consecutive columns and `m` consecutive rows.
    pub fn is_permutation_matrix(&self) -> bool {
        let m = self.dots.len();
        if m <= 1 {
            return true;
        }
        let mut cols: Vec<i64> = self.dots.iter().map(|p| p.i).collect();
        let mut rows: Vec<i64> = self.dots.iter().map(|p| p.j).collect();
        cols.sort_unstable();
        rows.sort_unstable();
        cols.windows(2).all(|w| w[1] == w[0] + 1) && rows.windows(2).all(|w| w[1] == w[0] + 1)
    }

    /// Maximum pairwise distance under `metric` (squared for `EuclideanSq`).
    pub fn diameter(&self, metric: Metric) -> Result<u64> {
        if self.dots.is_empty() {
            return Err(Error::EmptyConfiguration);
        }
        if !metric.valid_on(self.kind) {
            return Err(Error::MetricMismatch {
                metric,
                kind: self.kind,
            });
        }
        let mut best = 0;
        for (ai, a) in self.dots.iter().enumerate() {
            for b in &self.dots[ai + 1..] {
                best = best.max(metric.distance(self.kind, *a, *b)?);
            }
        }
        Ok(best)
    }

    /// Class membership: the grid matches, the dot set is a DDC, and the
    /// class-metric diameter is at most `r` (`r^2` for Euclidean classes).
    pub fn is_ddc_class(&self, class: DdcClass, r: u64) -> Result<bool> {
        if class.grid_kind() != self.kind {
            return Err(Error::ClassGridMismatch {
                class,
                expected: class.grid_kind(),
                got: self.kind,
            });
        }
        if self.dots.is_empty() {
            return Ok(true);
        }
        if !self.verify_ddc() {
            return Ok(false);
        }
        Ok(self.diameter(class.metric())? <= class.diameter_limit(r))
    }
}

/// A finite region of a grid with deterministic (lexicographic) enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shape {
    kind: GridKind,
    cells: Vec<GridPoint>,
}

impl Shape {
    pub fn new(kind: GridKind, mut cells: Vec<GridPoint>) -> Shape {
        cells.sort_unstable();
        cells.dedup();
        assert!(!cells.is_empty(), "shape must be non-empty");
        Shape { kind, cells }
    }

    pub fn kind(&self) -> GridKind {
        self.kind
    }

    pub fn cells(&self) -> &[GridPoint] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, p: GridPoint) -> bool {
        self.cells.binary_search(&p).is_ok()
    }

    pub fn translate(&self, di: i64, dj: i64) -> Shape {
        Shape {
            kind: self.kind,
            cells: self.cells.iter().map(|p| p.offset(di, dj)).collect(),
        }
    }

    /// Canonical form up to translation: cells shifted so the lex-least
    /// cell is the origin.
    pub fn canonical_translate(&self) -> Vec<GridPoint> {
        let base = self.cells[0];
        self.cells
            .iter()
            .map(|p| pt(p.i - base.i, p.j - base.j))
            .collect()
    }

    /// Bounding box `(min, max)` corners.
    pub fn bounding_box(&self) -> (GridPoint, GridPoint) {
        let mut min = self.cells[0];
        let mut max = self.cells[0];
        for p in &self.cells {
            min.i = min.i.min(p.i);
            min.j = min.j.min(p.j);
            max.i = max.i.max(p.i);
            max.j = max.j.max(p.j);
        }
        (min, max)
    }
}

/// Membership rule of a doubly periodic array.
#[derive(Debug, Clone, PartialEq, Eq)]
enum ArrayRule {
    /// Explicit fundamental-domain dots, `0 <= i < eta`, `0 <= j < kappa`.
    Explicit(Vec<GridPoint>),
    /// Dot at `(i, j)` iff `(i*ci + j*cj) mod n` is one of `residues`.
    /// The period divides the rule, and every residue class in the image of
    /// the linear form is covered uniformly over a fundamental domain.
    ModularLinear {
        ci: u64,
        cj: u64,
        n: u64,
        residues: Vec<u64>,
    },
}

/// A doubly periodic dot pattern with period `(eta, kappa)`: membership of
/// `(i, j)` depends only on `(i mod eta, j mod kappa)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicArray {
    kind: GridKind,
    eta: u64,
    kappa: u64,
    rule: ArrayRule,
}

impl PeriodicArray {
    /// Array from explicit fundamental-domain dots.
    pub fn from_fundamental(
        kind: GridKind,
        eta: u64,
        kappa: u64,
        dots: Vec<GridPoint>,
    ) -> Result<PeriodicArray> {
        if eta == 0 || kappa == 0 {
            return Err(Error::InvalidParameter("period must be positive".into()));
        }
        let mut dots: Vec<GridPoint> = dots
            .into_iter()
            .map(|p| pt(p.i.rem_euclid(eta as i64), p.j.rem_euclid(kappa as i64)))
            .collect();
        dots.sort_unstable();
        dots.dedup();
        Ok(PeriodicArray {
            kind,
            eta,
            kappa,
            rule: ArrayRule::Explicit(dots),
        })
    }

    /// Array with a dot at `(i, j)` iff `(i*ci + j*cj) mod n` lies in
    /// `residues`. The period `(eta, kappa)` must be compatible with the
    /// rule (`eta*ci ≡ 0` and `kappa*cj ≡ 0 mod n`).
    pub fn from_modular_linear(
        kind: GridKind,
        eta: u64,
        kappa: u64,
        ci: u64,
        cj: u64,
        n: u64,
        mut residues: Vec<u64>,
    ) -> Result<PeriodicArray> {
        if n == 0 || eta == 0 || kappa == 0 {
            return Err(Error::InvalidParameter(
                "period and modulus must be positive".into(),
            ));
        }
        if (eta as u128 * ci as u128) % n as u128 != 0
            || (kappa as u128 * cj as u128) % n as u128 != 0
        {
            return Err(Error::InvalidParameter(
                "stated period is not a period of the modular rule".into(),
            ));
        }
        residues.iter_mut().for_each(|r| *r %= n);
        residues.sort_unstable();
        residues.dedup();
        Ok(PeriodicArray {
            kind,
            eta,
            kappa,
            rule: ArrayRule::ModularLinear {
                ci,
                cj,
                n,
                residues,
            },
        })
    }

    pub fn kind(&self) -> GridKind {
        self.kind
    }

    pub fn period(&self) -> (u64, u64) {
        (self.eta, self.kappa)
    }

    pub fn has_dot(&self, p: GridPoint) -> bool {
        match &self.rule {
            ArrayRule::Explicit(dots) => {
                let q = pt(
                    p.i.rem_euclid(self.eta as i64),
                    p.j.rem_euclid(self.kappa as i64),
                );
                dots.binary_search(&q).is_ok()
            }
            ArrayRule::ModularLinear {
                ci,
                cj,
                n,
                residues,
            } => {
                let n = *n as i64;
                let v = ((p.i % n) * (*ci as i64 % n) + (p.j % n) * (*cj as i64 % n)).rem_euclid(n);
                residues.binary_search(&(v as u64)).is_ok()
            }
        }
    }

    /// For modular-rule arrays, the `(ci, cj, n, residues)` of the rule
    /// `dot(i,j) <=> (i*ci + j*cj) mod n in residues`.
    pub fn linear_rule(&self) -> Option<(u64, u64, u64, &[u64])> {
        match &self.rule {
            ArrayRule::Explicit(_) => None,
            ArrayRule::ModularLinear {
                ci,
                cj,
                n,
                residues,
            } => Some((*ci, *cj, *n, residues)),
        }
    }

    /// Number of dots in one `eta x kappa` fundamental domain.
    pub fn fundamental_count(&self) -> u64 {
        match &self.rule {
            ArrayRule::Explicit(dots) => dots.len() as u64,
            ArrayRule::ModularLinear { residues, .. } => {
                // every value in the rule image is hit equally often over a
                // fundamental domain, eta*kappa/|image| times each
                let cells = self.eta as u128 * self.kappa as u128;
                let image = self.rule_image_size() as u128;
                let hits = residues
                    .iter()
                    .filter(|r| self.rule_image_contains(**r))
                    .count() as u128;
                (cells / image * hits) as u64
            }
        }
    }

    fn rule_image_size(&self) -> u64 {
        match &self.rule {
            ArrayRule::Explicit(_) => unreachable!(),
            ArrayRule::ModularLinear { ci, cj, n, .. } => {
                let g = gcd(gcd(*ci % *n, *cj % *n), *n).max(1);
                *n / g
            }
        }
    }

    fn rule_image_contains(&self, r: u64) -> bool {
        match &self.rule {
            ArrayRule::Explicit(_) => unreachable!(),
            ArrayRule::ModularLinear { ci, cj, n, .. } => {
                let g = gcd(gcd(*ci % *n, *cj % *n), *n).max(1);
                r % g == 0
            }
        }
    }

    /// Exact dot density `|fundamental| / (eta * kappa)`.
    pub fn density(&self) -> Ratio {
        if self.eta == 0 || self.kappa == 0 {
            return Ratio::new(0, 1);
        }
        let count = self.fundamental_count();
        if count == 0 {
            return Ratio::new(0, 1);
        }
        // reduce in two steps to stay inside u64
        let g1 = gcd(count, self.eta);
        let g2 = gcd(count / g1, self.kappa);
        Ratio::new(count / (g1 * g2), (self.eta / g1) * (self.kappa / g2))
    }

    /// Dots inside the half-open window
    /// `[origin.i, origin.i + width) x [origin.j, origin.j + height)`.
    ///
    /// `width` counts columns and `height` counts rows; callers quoting
    /// "rows x columns" window dimensions should use [`window_rows_cols`].
    pub fn window(&self, origin: GridPoint, width: u64, height: u64) -> Configuration {
        let mut dots = Vec::new();
        for i in origin.i..origin.i + width as i64 {
            for j in origin.j..origin.j + height as i64 {
                if self.has_dot(pt(i, j)) {
                    dots.push(pt(i, j));
                }
            }
        }
        Configuration::new(self.kind, dots)
    }

    /// Dots of the array inside `shift + shape`.
    pub fn restrict(&self, shape: &Shape, shift: GridPoint) -> Result<Configuration> {
        if shape.kind() != self.kind {
            return Err(Error::KindMismatch(shape.kind(), self.kind));
        }
        let dots = shape
            .cells()
            .iter()
            .map(|c| pt(c.i + shift.i, c.j + shift.j))
            .filter(|&p| self.has_dot(p))
            .collect();
        Ok(Configuration::new(self.kind, dots))
    }

    /// True iff the dots inside every shift of `shape` form a DDC. By
    /// periodicity only `eta * kappa` shifts need testing; for modular
    /// rules, shifts with equal rule value produce identical dot patterns
    /// and are tested once per class.
    pub fn is_periodic_shape_ddc(&self, shape: &Shape) -> Result<bool> {
        if shape.kind() != self.kind {
            return Err(Error::KindMismatch(shape.kind(), self.kind));
        }
        match &self.rule {
            ArrayRule::Explicit(_) => {
                for u in 0..self.eta as i64 {
                    for v in 0..self.kappa as i64 {
                        if !self.restrict(shape, pt(u, v))?.verify_ddc() {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            }
            ArrayRule::ModularLinear {
                ci,
                cj,
                n,
                residues,
            } => {
                let n64 = *n;
                let g = gcd(gcd(*ci % n64, *cj % n64), n64).max(1);
                let res: HashSet<u64> = residues.iter().copied().collect();
                let mut s = 0;
                while s < n64 {
                    // dots of shape cells under rule value f(cell)+s
                    let dots: Vec<GridPoint> = shape
                        .cells()
                        .iter()
                        .filter(|c| {
                            let f = ((c.i.rem_euclid(n64 as i64) as u128 * *ci as u128
                                + c.j.rem_euclid(n64 as i64) as u128 * *cj as u128)
                                + s as u128)
                                % n64 as u128;
                            res.contains(&(f as u64))
                        })
                        .copied()
                        .collect();
                    if !Configuration::new(self.kind, dots).verify_ddc() {
                        return Ok(false);
                    }
                    s += g;
                }
                Ok(true)
            }
        }
    }
}

/// Window helper taking "rows x columns" dimensions.
pub fn window_rows_cols(
    a: &PeriodicArray,
    origin: GridPoint,
    rows: u64,
    cols: u64,
) -> Configuration {
    a.window(origin, cols, rows)
}

/// Serialized form of a configuration with its class context:
/// `{"grid":.., "metric":.., "r":.., "dots":[[i,j],..]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ConfigRecord {
    pub grid: GridKind,
    pub metric: MetricName,
    pub r: u64,
    pub dots: Vec<[i64; 2]>,
}

/// Metric naming used by the JSON schema.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricName {
    Manhattan,
    Hex,
    Euclidean,
}

impl From<MetricName> for Metric {
    fn from(m: MetricName) -> Metric {
        match m {
            MetricName::Manhattan => Metric::Manhattan,
            MetricName::Hex => Metric::HexDistance,
            MetricName::Euclidean => Metric::EuclideanSq,
        }
    }
}

impl From<Metric> for MetricName {
    fn from(m: Metric) -> MetricName {
        match m {
            Metric::Manhattan => MetricName::Manhattan,
            Metric::HexDistance => MetricName::Hex,
            Metric::EuclideanSq => MetricName::Euclidean,
        }
    }
}

impl ConfigRecord {
    pub fn new(c: &Configuration, metric: Metric, r: u64) -> ConfigRecord {
        ConfigRecord {
            grid: c.kind(),
            metric: metric.into(),
            r,
            dots: c.dots().iter().map(|p| [p.i, p.j]).collect(),
        }
    }

    pub fn configuration(&self) -> Configuration {
        Configuration::new(
            self.grid,
            self.dots.iter().map(|d| pt(d[0], d[1])).collect(),
        )
    }

    pub fn metric(&self) -> Metric {
        self.metric.into()
    }

    /// Validates grid/metric compatibility.
    pub fn validate(&self) -> Result<()> {
        let metric: Metric = self.metric.into();
        if !metric.valid_on(self.grid) {
            return Err(Error::MetricMismatch {
                metric,
                kind: self.grid,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::pt;

    fn cfg(kind: GridKind, dots: &[(i64, i64)]) -> Configuration {
        Configuration::new(kind, dots.iter().map(|&(i, j)| pt(i, j)).collect())
    }

    #[test]
    fn verify_ddc_examples() {
        assert!(cfg(GridKind::Square, &[(0, 0), (5, 7)]).verify_ddc());
        assert!(!cfg(GridKind::Square, &[(0, 0), (1, 0), (2, 0)]).verify_ddc());
        assert!(cfg(GridKind::Square, &[(0, 0), (1, 0), (0, 1), (2, 2)]).verify_ddc());
    }

    #[test]
    fn repeated_difference_witness() {
        let c = cfg(GridKind::Square, &[(0, 0), (1, 0), (2, 0)]);
        let ((a1, b1), (a2, b2)) = c.first_repeated_difference().unwrap();
        assert_eq!((b1.i - a1.i, b1.j - a1.j), (b2.i - a2.i, b2.j - a2.j));
        assert_ne!((a1, b1), (a2, b2));
    }

    #[test]
    fn diameter_examples() {
        let c = cfg(GridKind::Square, &[(0, 0), (1, 0), (0, 1), (2, 2)]);
        assert_eq!(c.diameter(Metric::Manhattan).unwrap(), 4);
        let single = cfg(GridKind::Square, &[(3, 3)]);
        assert_eq!(single.diameter(Metric::Manhattan).unwrap(), 0);
        assert_eq!(single.diameter(Metric::EuclideanSq).unwrap(), 0);
        let two = cfg(GridKind::Square, &[(0, 0), (3, 4)]);
        assert_eq!(two.diameter(Metric::EuclideanSq).unwrap(), 25);
        assert!(cfg(GridKind::Square, &[])
            .diameter(Metric::Manhattan)
            .is_err());
    }

    #[test]
    fn class_checks() {
        let c = cfg(GridKind::Square, &[(0, 0), (1, 0), (0, 1), (2, 2)]);
        // Manhattan diameter 4: a DDbar(4,4), hence also a DD(4,4).
        assert!(c.is_ddc_class(DdcClass::DdBar, 4).unwrap());
        assert!(c.is_ddc_class(DdcClass::Dd, 4).unwrap());
        assert!(!c.is_ddc_class(DdcClass::DdBar, 3).unwrap());
        let bad = cfg(GridKind::Square, &[(0, 0), (1, 0), (2, 0)]);
        for r in 1..10 {
            assert!(!bad.is_ddc_class(DdcClass::DdBar, r).unwrap());
            assert!(!bad.is_ddc_class(DdcClass::Dd, r).unwrap());
        }
        assert!(c.is_ddc_class(DdcClass::DdBarStar, 4).is_err());
    }

    #[test]
    fn ddbar_implies_dd_and_sqrt2_conversion() {
        // metric-conversion chain on a concrete instance
        let c = cfg(GridKind::Square, &[(0, 0), (1, 2), (3, 3), (0, 4)]);
        assert!(c.verify_ddc());
        let man = c.diameter(Metric::Manhattan).unwrap();
        let eu2 = c.diameter(Metric::EuclideanSq).unwrap();
        // euclid <= manhattan pointwise, so a DDbar(m,r) is a DD(m,r)
        assert!(eu2 <= man * man);
        // and a DD(m,r) is a DDbar(m, ceil(sqrt(2) r))
        let r_eu = (eu2 as f64).sqrt();
        assert!(man as f64 <= (2f64.sqrt() * r_eu).ceil() + 1e-9);
    }

    #[test]
    fn empty_array_window() {
        let a = PeriodicArray::from_fundamental(GridKind::Square, 4, 4, vec![]).unwrap();
        assert!(a.window(pt(0, 0), 4, 4).is_empty());
        assert_eq!(a.density(), Ratio::new(0, 1));
    }

    #[test]
    fn density_invariant_under_period_tiling() {
        let dots = vec![pt(0, 1), pt(1, 2), pt(2, 4), pt(3, 3)];
        let a = PeriodicArray::from_fundamental(GridKind::Square, 4, 5, dots.clone()).unwrap();
        // tile the fundamental domain into a (2*eta, 3*kappa) description
        let mut tiled = Vec::new();
        for bi in 0..2 {
            for bj in 0..3 {
                for d in &dots {
                    tiled.push(pt(d.i + bi * 4, d.j + bj * 5));
                }
            }
        }
        let b = PeriodicArray::from_fundamental(GridKind::Square, 8, 15, tiled).unwrap();
        assert_eq!(a.density(), b.density());
        assert_eq!(a.density(), Ratio::new(1, 5));
    }

    #[test]
    fn modular_rule_matches_explicit() {
        // dot iff (2 i + 3 j) mod 7 in {0, 1, 5}
        let m = PeriodicArray::from_modular_linear(GridKind::Square, 7, 7, 2, 3, 7, vec![0, 1, 5])
            .unwrap();
        let mut dots = Vec::new();
        for i in 0..7 {
            for j in 0..7 {
                if [0, 1, 5].contains(&((2 * i + 3 * j) % 7)) {
                    dots.push(pt(i, j));
                }
            }
        }
        let e = PeriodicArray::from_fundamental(GridKind::Square, 7, 7, dots).unwrap();
        for i in -10..10 {
            for j in -10..10 {
                assert_eq!(m.has_dot(pt(i, j)), e.has_dot(pt(i, j)));
            }
        }
        assert_eq!(m.density(), e.density());
        assert_eq!(m.density(), Ratio::new(3, 7));
    }

    #[test]
    fn restrict_and_shift_periodicity() {
        let a = PeriodicArray::from_fundamental(
            GridKind::Square,
            4,
            5,
            vec![pt(0, 1), pt(1, 2), pt(2, 4), pt(3, 3)],
        )
        .unwrap();
        let s = Shape::new(
            GridKind::Square,
            vec![pt(0, 0), pt(1, 0), pt(0, 1), pt(1, 1)],
        );
        let c0 = a.restrict(&s, pt(0, 0)).unwrap();
        let c1 = a.restrict(&s, pt(4, 5)).unwrap();
        assert_eq!(c0.translate(4, 5), c1);
        // singleton shape picks up 0 or 1 dots
        let single = Shape::new(GridKind::Square, vec![pt(0, 0)]);
        for u in 0..4 {
            for v in 0..5 {
                assert!(a.restrict(&single, pt(u, v)).unwrap().len() <= 1);
            }
        }
    }

    #[test]
    fn shape_ddc_scan_monotone_under_inclusion() {
        // array with residues {1,6,7} mod 8 under f(i,j) = i + 2 j
        let a = PeriodicArray::from_modular_linear(GridKind::Square, 8, 8, 1, 2, 8, vec![1, 6, 7])
            .unwrap();
        let sphere = Shape::new(
            GridKind::Square,
            vec![pt(0, -1), pt(-1, 0), pt(0, 0), pt(1, 0), pt(0, 1)],
        );
        assert!(a.is_periodic_shape_ddc(&sphere).unwrap());
        let sub = Shape::new(GridKind::Square, vec![pt(0, -1), pt(-1, 0), pt(0, 0)]);
        assert!(a.is_periodic_shape_ddc(&sub).unwrap());
    }

    #[test]
    fn shape_ddc_detects_repeat() {
        // two dots in the fundamental domain with the same difference
        // repeated inside a wide shape
        let a = PeriodicArray::from_fundamental(
            GridKind::Square,
            6,
            6,
            vec![pt(0, 0), pt(1, 0), pt(3, 0), pt(4, 0)],
        )
        .unwrap();
        let row = Shape::new(GridKind::Square, (0..6).map(|i| pt(i, 0)).collect());
        assert!(!a.is_periodic_shape_ddc(&row).unwrap());
    }

    #[test]
    fn record_round_trip() {
        let c = cfg(GridKind::Hexagonal, &[(0, 0), (2, 1), (1, 3)]);
        let rec = ConfigRecord::new(&c, Metric::HexDistance, 3);
        let json = serde_json::to_string(&rec).unwrap();
        assert!(json.contains("\"hexagonal\""));
        let back: ConfigRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rec);
        assert_eq!(back.configuration(), c);
        back.validate().unwrap();
        let bad = ConfigRecord {
            grid: GridKind::Square,
            ..back
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn ratio_arithmetic() {
        assert_eq!(Ratio::new(6, 8), Ratio::new(3, 4));
        assert_eq!(Ratio::new(3, 8).ceil_mul(5), 2);
        assert_eq!(Ratio::new(1, 5).ceil_mul(20), 4);
        assert_eq!(format!("{}", Ratio::new(10, 4)), "5/2");
    }
}
