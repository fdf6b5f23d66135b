//! Doubly periodic and folded DDC constructions.
//!
//! The Welch and Golomb arrays come from discrete logarithms; the folding
//! family (folded ruler, doubly periodic folding, CRT, LeeDD and its
//! diagonally extended variant) places a Sidon set along a linear form of
//! the coordinates. Every constructor returns either a [`Configuration`]
//! (finite) or a [`PeriodicArray`] whose guaranteed window/shape DDC
//! property can be re-checked with
//! [`PeriodicArray::is_periodic_shape_ddc`].

use crate::algebra::{self, FiniteField, SidonSet};
use crate::anticodes::isqrt;
use crate::config::{Configuration, PeriodicArray, Shape};
use crate::grid::{pt, GridKind, GridPoint};
use crate::{Error, Result};

/// Welch array: dot at `(i, j)` iff `alpha^i ≡ j (mod p)`. Doubly periodic
/// with period `(p-1, p)` and density `1/p`; every window of `p` rows by
/// `p-1` columns is a DDC with `p-1` dots, and the `(p-1) x (p-1)` window
/// at `(1,1)` is a Costas array.
pub fn periodic_welch(p: u64, alpha: Option<u64>) -> Result<PeriodicArray> {
    if !algebra::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let alpha = match alpha {
        Some(a) => {
            let f = FiniteField::new(p)?;
            if a % p == 0 || !f.is_primitive(a % p) {
                return Err(Error::NotPrimitive(a));
            }
            a % p
        }
        None => algebra::primitive_root(p)?,
    };
    let mut dots = Vec::with_capacity((p - 1) as usize);
    let mut power = 1u64;
    for i in 0..p - 1 {
        dots.push(pt(i as i64, power as i64));
        power = power * alpha % p;
    }
    PeriodicArray::from_fundamental(GridKind::Square, p - 1, p, dots)
}

/// Golomb array: dot at `(i, j)` iff `alpha^i + beta^j = 1` in GF(q).
/// Doubly periodic with period `(q-1, q-1)` and density `(q-2)/(q-1)^2`;
/// every `(q-1) x (q-1)` window is a DDC with `q-2` dots, and the
/// `(q-2) x (q-2)` window at `(1,1)` is a Costas array. `alpha = beta`
/// gives the Lempel variant.
pub fn periodic_golomb(q: u64, alpha: Option<u64>, beta: Option<u64>) -> Result<PeriodicArray> {
    let field = FiniteField::new(q)?;
    if q < 3 {
        return Err(Error::InvalidParameter("Golomb arrays need q >= 3".into()));
    }
    let g = field.generator();
    let alpha = alpha.unwrap_or(g);
    let beta = beta.unwrap_or(g);
    for e in [alpha, beta] {
        if e >= q || !field.is_primitive(e) {
            return Err(Error::NotPrimitive(e));
        }
    }
    // beta = g^t with gcd(t, q-1) = 1; solve beta^j = target via j = log/t
    let t = field.log_table(beta).expect("primitive element is nonzero");
    let t_inv = mod_inverse(t, q - 1).expect("primitivity makes the log a unit");
    let mut dots = Vec::with_capacity((q - 2) as usize);
    for i in 0..q - 1 {
        let ai = field.pow(alpha, i);
        let target = field.sub(1, ai);
        if target == 0 {
            continue; // alpha^i = 1, only at i = 0
        }
        let lg = field.log_table(target).unwrap();
        let j = (lg as u128 * t_inv as u128 % (q - 1) as u128) as u64;
        debug_assert_eq!(field.pow(beta, j), target);
        dots.push(pt(i as i64, j as i64));
    }
    PeriodicArray::from_fundamental(GridKind::Square, q - 1, q - 1, dots)
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (m as i128, a as i128 % m as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(m as i128) as u64)
}

/// Folded ruler: dot at `(i, j)`, `0 <= i < k`, `0 <= j < l`, iff
/// `i*l + j` is a mark of the ruler. Requires `l * k <= span + 1`; the
/// result is an `l`-rows-by-`k`-columns Golomb rectangle.
pub fn folded_ruler(ruler: &SidonSet, l: u64, k: u64) -> Result<Configuration> {
    if ruler.modulus().is_some() {
        return Err(Error::InvalidParameter(
            "folding takes a ruler over the integers".into(),
        ));
    }
    if l == 0 || k == 0 {
        return Err(Error::InvalidParameter(
            "rectangle sides must be positive".into(),
        ));
    }
    let n = ruler.span();
    if l * k > n + 1 {
        return Err(Error::InvalidParameter(format!(
            "folding needs l*k <= length+1: {l}*{k} > {}",
            n + 1
        )));
    }
    let mut dots = Vec::new();
    for i in 0..k {
        for j in 0..l {
            if ruler.contains(i * l + j) {
                dots.push(pt(i as i64, j as i64));
            }
        }
    }
    Ok(Configuration::new(GridKind::Square, dots))
}

/// Doubly periodic folding: dot at `(i, j)` iff `i*l + j mod n` lies in
/// `d`. Period `(n / gcd(n, l), n)`, density `|d| / n`; every window of
/// `l` rows by `k` columns is a DDC, provided `l * k <= n`.
pub fn doubly_periodic_folding(d: &SidonSet, l: u64, k: u64) -> Result<PeriodicArray> {
    let n = d.modulus().ok_or(Error::InfiniteModulus)?;
    if l == 0 || k == 0 {
        return Err(Error::InvalidParameter(
            "window sides must be positive".into(),
        ));
    }
    if l * k > n {
        return Err(Error::InvalidParameter(format!(
            "folding needs l*k <= n: {l}*{k} > {n}"
        )));
    }
    let eta = n / crate::config::gcd(n, l);
    PeriodicArray::from_modular_linear(GridKind::Square, eta, n, l % n, 1, n, d.elements().to_vec())
}

/// Chinese-remainder construction for `n = l * k`, `gcd(l, k) = 1`: dot at
/// `(i, j)` iff `i*l + j*k mod n` lies in `d`. Period `(k, l)`; every
/// window of `l` rows by `k` columns holds exactly `|d|` dots and is a DDC.
pub fn crt_construction(d: &SidonSet, l: u64, k: u64) -> Result<PeriodicArray> {
    let n = d.modulus().ok_or(Error::InfiniteModulus)?;
    if l * k != n {
        return Err(Error::InvalidParameter(format!(
            "need l*k = n: {l}*{k} != {n}"
        )));
    }
    if crate::config::gcd(l, k) != 1 {
        return Err(Error::InvalidParameter(format!(
            "need gcd(l,k) = 1, got {l},{k}"
        )));
    }
    PeriodicArray::from_modular_linear(
        GridKind::Square,
        k,
        l,
        l % n,
        k % n,
        n,
        d.elements().to_vec(),
    )
}

/// The diagonal folding form: `f(i, j) = i*R + j*(R+1) + R^2 + R`, a
/// bijection from the Lee sphere of radius `R` about the origin onto
/// `[0, 2R^2 + 2R]`.
pub fn leedd_f(radius: u64, i: i64, j: i64) -> i64 {
    let r = radius as i64;
    i * r + j * (r + 1) + r * r + r
}

/// LeeDD: dots of the Lee sphere of radius `R = floor(r/2)` whose
/// `f`-label lies in the ruler. The result is a DDbar(m, r) with
/// `m = |ruler ∩ [0, 2R^2+2R]|`.
pub fn leedd(r: u64, ruler: &SidonSet) -> Result<Configuration> {
    if ruler.modulus().is_some() {
        return Err(Error::InvalidParameter(
            "LeeDD takes a ruler over the integers".into(),
        ));
    }
    let radius = r / 2;
    let rr = radius as i64;
    let mut dots = Vec::new();
    for i in -rr..=rr {
        for j in -(rr - i.abs())..=(rr - i.abs()) {
            if ruler.contains(leedd_f(radius, i, j) as u64) {
                dots.push(pt(i, j));
            }
        }
    }
    Ok(Configuration::new(GridKind::Square, dots))
}

/// Doubly periodic LeeDD: dot at `(i, j)` iff `i*R + j*(R+1) mod n` lies
/// in `d`, with `n >= 2R^2 + 2R + 1`. Period `(n, n)`, density `|d|/n`;
/// the dots in any Lee sphere of radius `R` form a DDC.
pub fn doubly_periodic_leedd(radius: u64, d: &SidonSet) -> Result<PeriodicArray> {
    let n = d.modulus().ok_or(Error::InfiniteModulus)?;
    let min = 2 * radius * radius + 2 * radius + 1;
    if n < min {
        return Err(Error::ModulusTooSmall { n, min });
    }
    PeriodicArray::from_modular_linear(
        GridKind::Square,
        n,
        n,
        radius % n,
        (radius + 1) % n,
        n,
        d.elements().to_vec(),
    )
}

/// An `(R, t)`-diagonally extended Lee sphere: the union of Lee spheres of
/// radius `R` centred on `t` consecutive diagonal cells starting at
/// `anchor`. Contains exactly `2R^2 + t(2R+1)` cells; `t = 1` is the Lee
/// sphere itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtendedLeeSphereSpec {
    pub radius: u64,
    pub diagonal: u64,
    pub anchor: GridPoint,
}

impl ExtendedLeeSphereSpec {
    pub fn new(radius: u64, diagonal: u64, anchor: GridPoint) -> ExtendedLeeSphereSpec {
        ExtendedLeeSphereSpec {
            radius,
            diagonal,
            anchor,
        }
    }

    pub fn cell_count(&self) -> u64 {
        2 * self.radius * self.radius + self.diagonal * (2 * self.radius + 1)
    }
}

pub fn extended_lee_shape(spec: &ExtendedLeeSphereSpec) -> Result<Shape> {
    if spec.diagonal == 0 {
        return Err(Error::InvalidParameter(
            "diagonal length must be positive".into(),
        ));
    }
    let rr = spec.radius as i64;
    let mut cells = Vec::new();
    for k in 0..spec.diagonal as i64 {
        let c = spec.anchor.offset(k, k);
        for i in -rr..=rr {
            for j in -(rr - i.abs())..=(rr - i.abs()) {
                cells.push(c.offset(i, j));
            }
        }
    }
    let shape = Shape::new(GridKind::Square, cells);
    debug_assert_eq!(shape.len() as u64, spec.cell_count());
    Ok(shape)
}

/// Diagonal-extension ratio `a`, kept exact so the modulus bound
/// `n >= (2 + 2a) R^2 + a R` can be checked without floating point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtensionRatio {
    Rational {
        num: u64,
        den: u64,
    },
    /// `(sqrt(7) - 1) / 3`, the ratio maximizing the hexagonal-sphere
    /// extraction yield.
    Sqrt7Minus1Over3,
}

impl ExtensionRatio {
    /// `floor(a * radius)`.
    pub fn diagonal_for(self, radius: u64) -> u64 {
        match self {
            ExtensionRatio::Rational { num, den } => num * radius / den,
            ExtensionRatio::Sqrt7Minus1Over3 => {
                // largest t with 3t + R <= sqrt(7) R
                let mut t = ((7f64.sqrt() - 1.0) * radius as f64 / 3.0) as u64;
                while square(3 * (t + 1) + radius) <= 7 * square(radius) {
                    t += 1;
                }
                while t > 0 && square(3 * t + radius) > 7 * square(radius) {
                    t -= 1;
                }
                t
            }
        }
    }

    /// Smallest admissible modulus `ceil((2 + 2a) R^2 + a R)`.
    pub fn min_modulus(self, radius: u64) -> u64 {
        let r2 = square(radius);
        match self {
            ExtensionRatio::Rational { num, den } => {
                let numerator = 2 * den as u128 * r2 as u128
                    + 2 * num as u128 * r2 as u128
                    + num as u128 * radius as u128;
                numerator.div_ceil(den as u128) as u64
            }
            ExtensionRatio::Sqrt7Minus1Over3 => {
                // 3n >= 6R^2 + (sqrt(7) - 1)(2R^2 + R); the irrational side
                // rounds up to isqrt(7 b^2) + 1 since 7 is not a square
                let b = 2 * r2 + radius;
                let lhs_min = 6 * r2 - b + isqrt(7 * b * b) + 1;
                lhs_min.div_ceil(3)
            }
        }
    }
}

fn square(v: u64) -> u64 {
    v * v
}

/// Doubly periodic LeeDD array admitting every `(R, floor(a R))`-diagonally
/// extended Lee sphere as a DDC window. Requires
/// `n >= (2 + 2a) R^2 + a R` (checked exactly); returns the array together
/// with the diagonal length `t = floor(a R)`.
pub fn extended_leedd_array(
    radius: u64,
    ratio: ExtensionRatio,
    d: &SidonSet,
) -> Result<(PeriodicArray, u64)> {
    let n = d.modulus().ok_or(Error::InfiniteModulus)?;
    let min = ratio.min_modulus(radius);
    if n < min {
        return Err(Error::ModulusTooSmall { n, min });
    }
    let t = ratio.diagonal_for(radius).max(1);
    // the corollary bound dominates the f-injectivity requirement
    debug_assert!(n >= 2 * square(radius) + t * (2 * radius + 1));
    let array = PeriodicArray::from_modular_linear(
        GridKind::Square,
        n,
        n,
        radius % n,
        (radius + 1) % n,
        n,
        d.elements().to_vec(),
    )?;
    Ok((array, t))
}
