//! Number-theoretic machinery: primes and prime powers, primitive roots,
//! finite fields, Sidon sets (B2 sequences), and Golomb rulers.

mod gf;

use std::collections::HashSet;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use gf::FiniteField;

pub(crate) fn gcd_u(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u(b, a % b)
    }
}

/// Deterministic primality by trial division (fine at desk scale).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    if n % 3 == 0 {
        return n == 3;
    }
    let mut d = 5u64;
    while d * d <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// Smallest prime strictly greater than `x`.
pub fn next_prime(x: u64) -> u64 {
    let mut n = x + 1;
    while !is_prime(n) {
        n += 1;
    }
    n
}

/// `Some((p, k))` iff `n = p^k` with `p` prime and `k >= 1`.
pub fn prime_power_decompose(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = n;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            p = d;
            break;
        }
        d += 1;
    }
    let mut k = 0u32;
    let mut m = n;
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    if m == 1 {
        Some((p, k))
    } else {
        None
    }
}

/// Smallest prime power strictly greater than `x`.
pub fn next_prime_power(x: u64) -> u64 {
    let mut n = x + 1;
    while prime_power_decompose(n).is_none() {
        n += 1;
    }
    n
}

pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut k = 0;
            while n % d == 0 {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % m as u128) as u64;
        }
        base = (base as u128 * base as u128 % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Smallest primitive root modulo a prime `p` (`1` for `p = 2`).
pub fn primitive_root(p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Ok(1);
    }
    let factors = factorize(p - 1);
    'next: for g in 2..p {
        for &(f, _) in &factors {
            if pow_mod(g, (p - 1) / f, p) == 1 {
                continue 'next;
            }
        }
        return Ok(g);
    }
    unreachable!("every prime has a primitive root")
}

/// A B2 sequence: all pairwise differences distinct in the ambient group
/// (`Z_n` for a finite modulus, `Z` for a ruler).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SidonSet {
    elements: Vec<u64>,
    /// `None` means the set lives in `Z` (a Golomb ruler).
    modulus: Option<u64>,
}

impl SidonSet {
    /// A set in `Z_n`; elements are reduced mod `n`.
    pub fn new_mod(elements: Vec<u64>, n: u64) -> Result<SidonSet> {
        if n == 0 {
            return Err(Error::InvalidParameter("modulus must be positive".into()));
        }
        let mut elements: Vec<u64> = elements.into_iter().map(|e| e % n).collect();
        elements.sort_unstable();
        elements.dedup();
        Ok(SidonSet {
            elements,
            modulus: Some(n),
        })
    }

    /// A ruler over the integers.
    pub fn new_ruler(mut elements: Vec<u64>) -> SidonSet {
        elements.sort_unstable();
        elements.dedup();
        SidonSet {
            elements,
            modulus: None,
        }
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    pub fn contains(&self, v: u64) -> bool {
        let v = match self.modulus {
            Some(n) => v % n,
            None => v,
        };
        self.elements.binary_search(&v).is_ok()
    }

    /// Largest minus smallest element (ruler length).
    pub fn span(&self) -> u64 {
        match (self.elements.first(), self.elements.last()) {
            (Some(a), Some(b)) => b - a,
            _ => 0,
        }
    }

    /// Brute-force pairwise-difference distinctness.
    pub fn is_sidon(&self) -> bool {
        let mut seen = HashSet::new();
        for (ai, &a) in self.elements.iter().enumerate() {
            for (bi, &b) in self.elements.iter().enumerate() {
                if ai == bi {
                    continue;
                }
                let d = match self.modulus {
                    Some(n) => (a + n - b) % n,
                    None => a.wrapping_sub(b), // distinct u64 values suffice
                };
                if !seen.insert(d) {
                    return false;
                }
            }
        }
        true
    }

    /// The equivalent characterization: all sums `a + b` with `a <= b`
    /// distinct.
    pub fn has_distinct_pair_sums(&self) -> bool {
        let mut seen = HashSet::new();
        for (ai, &a) in self.elements.iter().enumerate() {
            for &b in &self.elements[ai..] {
                let s = match self.modulus {
                    Some(n) => (a + b) % n,
                    None => a + b,
                };
                if !seen.insert(s) {
                    return false;
                }
            }
        }
        true
    }

    /// Elementwise shift `a + D` mod `n`.
    pub fn shift(&self, a: u64) -> Result<SidonSet> {
        let n = self.modulus.ok_or(Error::InfiniteModulus)?;
        SidonSet::new_mod(self.elements.iter().map(|&e| (e + a % n) % n).collect(), n)
    }

    /// Canonical integer representatives in `[0, n)` as a Golomb ruler.
    pub fn lift_to_ruler(&self) -> Result<SidonSet> {
        self.modulus.ok_or(Error::InfiniteModulus)?;
        Ok(SidonSet::new_ruler(self.elements.clone()))
    }
}

/// Bose's B2 sequence over `Z_{q^2-1}` with `q` elements: the discrete
/// logarithms of `g + c` in GF(q^2) for `c` ranging over the subfield
/// GF(q), where `g` generates the multiplicative group.
pub fn bose_b2(q: u64) -> Result<SidonSet> {
    let (p, k) = prime_power_decompose(q).ok_or(Error::NotPrimePower(q))?;
    let big = FiniteField::new(q * q)?;
    debug_assert_eq!((big.characteristic(), big.degree()), (p, 2 * k));
    let g = big.generator();
    let n = q * q - 1;
    let mut elems = Vec::with_capacity(q as usize);
    for c in big.subfield(k)? {
        let s = big.add(g, c);
        elems.push(
            big.log_table(s)
                .expect("g + c is nonzero: g lies outside the subfield"),
        );
    }
    let d = SidonSet::new_mod(elems, n)?;
    debug_assert!(d.is_sidon());
    Ok(d)
}

#[derive(Debug, Deserialize)]
struct RulerTable {
    version: u32,
    rulers: Vec<RulerEntry>,
}

#[derive(Debug, Deserialize)]
struct RulerEntry {
    order: u32,
    length: u64,
    marks: Vec<u64>,
}

static RULERS: OnceLock<Vec<RulerEntry>> = OnceLock::new();

fn ruler_table() -> &'static [RulerEntry] {
    RULERS.get_or_init(|| {
        let raw = include_str!("../../data/optimal_rulers.json");
        let table: RulerTable = serde_json::from_str(raw).expect("embedded ruler table parses");
        assert_eq!(table.version, 1, "unknown ruler table version");
        for e in &table.rulers {
            let s = SidonSet::new_ruler(e.marks.clone());
            assert_eq!(
                s.len() as u32,
                e.order,
                "ruler order mismatch at {}",
                e.order
            );
            assert_eq!(
                s.span(),
                e.length,
                "ruler length mismatch at order {}",
                e.order
            );
            assert!(
                s.is_sidon(),
                "embedded ruler of order {} is not Sidon",
                e.order
            );
        }
        table.rulers
    })
}

/// A shortest Golomb ruler of the given order from the embedded table
/// (orders 1 through 12), re-verified at load.
pub fn optimal_ruler(order: u32) -> Result<SidonSet> {
    let entry = ruler_table()
        .iter()
        .find(|e| e.order == order)
        .ok_or(Error::RulerOrderOutOfRange(order))?;
    Ok(SidonSet::new_ruler(entry.marks.clone()))
}

/// Length of the embedded optimal ruler of the given order.
pub fn optimal_ruler_length(order: u32) -> Result<u64> {
    Ok(optimal_ruler(order)?.span())
}

/// Largest embedded ruler order.
pub const MAX_RULER_ORDER: u32 = 12;
