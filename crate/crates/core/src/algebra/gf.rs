//! Finite-field arithmetic GF(p^k) with full exp/log tables.
//!
//! Elements are encoded as integers: the polynomial `c_0 + c_1 x + ...`
//! has code `c_0 + c_1 p + c_2 p^2 + ...`, so code order coincides with
//! coefficient-lexicographic order (highest coefficient most significant).
//!
//! For extension fields the modulus is the smallest monic polynomial (in
//! that same coefficient order) that makes `x` a generator of the
//! multiplicative group; such a modulus is automatically irreducible, the
//! selection is reproducible without external tables, and `x` serves as
//! the canonical primitive element. Prime fields use the generator-free
//! modulus `x` and take the smallest primitive root as generator.

use crate::{Error, Result};

use super::{factorize, is_prime, primitive_root};

/// GF(p^k) with precomputed discrete-log tables (requires `q <= 2^20`).
#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u64,
    k: u32,
    q: u64,
    /// Monic modulus, ascending coefficients, length `k + 1`.
    modulus: Vec<u64>,
    /// `exp[t]` is the code of `g^t` for the field generator `g`.
    exp: Vec<u64>,
    /// `log[code]` of nonzero codes; `log[0]` is a sentinel.
    log: Vec<u32>,
    generator: u64,
}

const MAX_TABLE: u64 = 1 << 20;

impl FiniteField {
    /// The field with `q = p^k` elements over the canonical modulus.
    pub fn new(q: u64) -> Result<FiniteField> {
        let (p, k) = super::prime_power_decompose(q).ok_or(Error::NotPrimePower(q))?;
        if q > MAX_TABLE {
            return Err(Error::CostGuard(format!(
                "field order {q} exceeds table limit"
            )));
        }
        if k == 1 {
            let g = primitive_root(p)?;
            let mut field = FiniteField {
                p,
                k,
                q,
                modulus: vec![0, 1],
                exp: Vec::new(),
                log: Vec::new(),
                generator: g,
            };
            field.build_tables_from_generator(g);
            return Ok(field);
        }
        // scan moduli in coefficient-lex order for one making x primitive;
        // hitting 1 first at step q-1 proves both irreducibility and
        // primitivity, since it forces every nonzero element to be a unit
        for code in 0..q {
            let mut modulus = decode(code, p, k as usize);
            modulus.push(1);
            if let Some(exp) = try_x_cycle(&modulus, p, q) {
                let mut log = vec![0u32; q as usize];
                for (t, &e) in exp.iter().enumerate() {
                    log[e as usize] = t as u32;
                }
                return Ok(FiniteField {
                    p,
                    k,
                    q,
                    modulus,
                    exp,
                    log,
                    generator: p,
                });
            }
        }
        unreachable!("a primitive polynomial exists for every prime power")
    }

    /// Field over an explicitly given monic modulus (ascending
    /// coefficients). The modulus must be irreducible; the generator is the
    /// least element of multiplicative order `q - 1`.
    pub fn with_modulus(p: u64, k: u32, modulus: Vec<u64>) -> Result<FiniteField> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q <= MAX_TABLE)
            .ok_or_else(|| {
                Error::CostGuard(format!("field order p={p} k={k} exceeds table limit"))
            })?;
        if modulus.len() != k as usize + 1 || modulus[k as usize] != 1 {
            return Err(Error::InvalidParameter(
                "modulus must be monic of degree k".into(),
            ));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidParameter(
                "modulus coefficients must be reduced".into(),
            ));
        }
        if !is_irreducible(&modulus, p) {
            return Err(Error::InvalidParameter("modulus is reducible".into()));
        }
        let mut field = FiniteField {
            p,
            k,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            generator: 0,
        };
        let g = field
            .find_least_primitive_by_mul()
            .expect("a finite field's multiplicative group is cyclic");
        field.generator = g;
        field.build_tables_from_generator(g);
        Ok(field)
    }

    fn build_tables_from_generator(&mut self, g: u64) {
        let mut exp = Vec::with_capacity((self.q - 1) as usize);
        let mut cur = 1u64;
        for _ in 0..self.q - 1 {
            exp.push(cur);
            cur = self.mul_direct(cur, g);
        }
        let mut log = vec![0u32; self.q as usize];
        for (t, &e) in exp.iter().enumerate() {
            log[e as usize] = t as u32;
        }
        self.exp = exp;
        self.log = log;
    }

    fn find_least_primitive_by_mul(&self) -> Option<u64> {
        let factors = factorize(self.q - 1);
        'next: for e in 1..self.q {
            for &(f, _) in &factors {
                if self.pow_direct(e, (self.q - 1) / f) == 1 {
                    continue 'next;
                }
            }
            return Some(e);
        }
        None
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The canonical generator: `x` for extension fields, the smallest
    /// primitive root for prime fields.
    pub fn generator(&self) -> u64 {
        self.generator
    }

    /// All element codes, ascending.
    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.q
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let mut out = 0;
        let mut pw = 1;
        let (mut a, mut b) = (a, b);
        for _ in 0..self.k {
            out += (a % self.p + b % self.p) % self.p * pw;
            a /= self.p;
            b /= self.p;
            pw *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u64) -> u64 {
        let mut out = 0;
        let mut pw = 1;
        let mut a = a;
        for _ in 0..self.k {
            out += (self.p - a % self.p) % self.p * pw;
            a /= self.p;
            pw *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % (self.q - 1);
        self.exp[t as usize]
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let t = (self.q - 1 - self.log[a as usize] as u64) % (self.q - 1);
        Some(self.exp[t as usize])
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let t = (self.log[a as usize] as u128 * e as u128 % (self.q - 1) as u128) as u64;
        self.exp[t as usize]
    }

    /// `g^t` from the table.
    pub fn exp_table(&self, t: u64) -> u64 {
        self.exp[(t % (self.q - 1)) as usize]
    }

    /// Discrete log base the generator; `None` for zero.
    pub fn log_table(&self, a: u64) -> Option<u64> {
        if a == 0 {
            None
        } else {
            Some(self.log[a as usize] as u64)
        }
    }

    pub fn element_order(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let t = self.log[a as usize] as u64;
        Some((self.q - 1) / super::gcd_u(t, self.q - 1))
    }

    pub fn is_primitive(&self, a: u64) -> bool {
        self.element_order(a) == Some(self.q - 1)
    }

    /// Least element of multiplicative order `q - 1` in code
    /// (coefficient-lexicographic) order.
    pub fn least_primitive(&self) -> u64 {
        (1..self.q)
            .find(|&e| self.is_primitive(e))
            .expect("cyclic group has a generator")
    }

    /// The subfield GF(p^d) inside this field (requires `d | k`): zero plus
    /// the unique multiplicative subgroup of order `p^d - 1`.
    pub fn subfield(&self, d: u32) -> Result<Vec<u64>> {
        if d == 0 || self.k % d != 0 {
            return Err(Error::InvalidParameter(format!(
                "degree {d} does not divide field degree {}",
                self.k
            )));
        }
        let sub_q = self.p.pow(d);
        let step = (self.q - 1) / (sub_q - 1);
        let mut out = vec![0u64];
        for t in 0..sub_q - 1 {
            out.push(self.exp[(t * step) as usize]);
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Multiplication by direct polynomial arithmetic (used only while the
    /// tables are being built).
    fn mul_direct(&self, a: u64, b: u64) -> u64 {
        let av = decode(a, self.p, self.k as usize);
        let bv = decode(b, self.p, self.k as usize);
        let mut prod = vec![0u64; 2 * self.k as usize];
        for (i, &x) in av.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in bv.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        reduce(&mut prod, &self.modulus, self.p);
        encode(&prod[..self.k as usize], self.p)
    }

    fn pow_direct(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_direct(acc, base);
            }
            base = self.mul_direct(base, base);
            e >>= 1;
        }
        acc
    }
}

fn decode(code: u64, p: u64, k: usize) -> Vec<u64> {
    let mut v = vec![0u64; k];
    let mut c = code;
    for coeff in v.iter_mut() {
        *coeff = c % p;
        c /= p;
    }
    v
}

fn encode(coeffs: &[u64], p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// In-place reduction of `poly` modulo a monic `modulus` over GF(p).
fn reduce(poly: &mut Vec<u64>, modulus: &[u64], p: u64) {
    let k = modulus.len() - 1;
    while poly.len() > k {
        let lead = *poly.last().unwrap();
        let deg = poly.len() - 1;
        if lead != 0 {
            for (i, &mc) in modulus.iter().enumerate() {
                let idx = deg - k + i;
                poly[idx] = (poly[idx] + (p - mc % p) % p * lead) % p;
            }
        }
        poly.pop();
    }
    poly.resize(k, 0);
}

/// Walks `x, x^2, x^3, ...` under the candidate modulus; returns the full
/// exp table iff 1 first reappears exactly at step `q - 1`.
fn try_x_cycle(modulus: &[u64], p: u64, q: u64) -> Option<Vec<u64>> {
    let k = modulus.len() - 1;
    let mut exp = Vec::with_capacity((q - 1) as usize);
    let mut cur = vec![0u64; k];
    cur[0] = 1;
    for t in 0..q - 1 {
        exp.push(encode(&cur, p));
        // multiply by x
        let mut next = vec![0u64; k + 1];
        next[1..=k].copy_from_slice(&cur);
        reduce(&mut next, modulus, p);
        cur = next;
        let code = encode(&cur, p);
        if code == 1 {
            return if t + 2 == q { Some(exp) } else { None };
        }
        if code == 0 {
            return None; // x is a zero divisor: modulus reducible
        }
    }
    None
}

/// Trial-division irreducibility over GF(p) for small moduli.
fn is_irreducible(modulus: &[u64], p: u64) -> bool {
    let k = modulus.len() - 1;
    if k == 1 {
        return true;
    }
    for d in 1..=k / 2 {
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut div = decode(code, p, d);
            div.push(1);
            if poly_rem_is_zero(modulus, &div, p) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(num: &[u64], div: &[u64], p: u64) -> bool {
    let mut rem: Vec<u64> = num.to_vec();
    let d = div.len() - 1;
    while rem.len() > d {
        let lead = *rem.last().unwrap();
        let deg = rem.len() - 1;
        if lead != 0 {
            for (i, &dc) in div.iter().enumerate() {
                let idx = deg - d + i;
                rem[idx] = (rem[idx] + (p - dc % p) % p * lead) % p;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_modulus_unique() {
        let f = FiniteField::new(4).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]); // x^2 + x + 1
        assert_eq!(f.generator(), 2); // x
        assert_eq!(f.element_order(2), Some(3));
    }

    #[test]
    fn gf9_modulus_and_generator() {
        let f = FiniteField::new(9).unwrap();
        assert_eq!(f.modulus(), &[2, 1, 1]); // x^2 + x + 2
        assert!(f.is_primitive(3)); // x has code 3
        assert_eq!(f.least_primitive(), 3);
        // power table spot values: x^6 = x + 2, x^7 = x + 1
        assert_eq!(f.exp_table(6), 2 + 3); // code of x + 2
        assert_eq!(f.exp_table(7), 1 + 3); // code of x + 1
    }

    #[test]
    fn gf9_with_nonprimitive_modulus() {
        // x^2 + 1 is irreducible over GF(3) but x = code 3 has order 4
        let f = FiniteField::with_modulus(3, 2, vec![1, 0, 1]).unwrap();
        assert_eq!(f.element_order(3), Some(4));
        assert!(!f.is_primitive(3));
        // x + 1 is primitive there
        assert_eq!(f.element_order(4), Some(8));
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 + x + 1 = (x - 1)^2 over GF(3)
        assert!(FiniteField::with_modulus(3, 2, vec![1, 1, 1]).is_err());
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64] {
            let f = FiniteField::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
            }
            // associativity and distributivity on all triples
            for a in f.elements() {
                for b in f.elements() {
                    for c in f.elements() {
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn primitive_element_order() {
        for q in [4u64, 8, 9, 16, 25, 27, 32, 49, 81, 121, 128] {
            let f = FiniteField::new(q).unwrap();
            assert_eq!(f.element_order(f.generator()), Some(q - 1), "q={q}");
            assert_eq!(f.least_primitive(), f.generator(), "q={q}");
        }
        // prime fields: generator is the smallest primitive root
        let f = FiniteField::new(5).unwrap();
        assert_eq!(f.generator(), 2);
        let f = FiniteField::new(7).unwrap();
        assert_eq!(f.generator(), 3);
    }

    #[test]
    fn subfield_structure() {
        let f = FiniteField::new(16).unwrap();
        let sub = f.subfield(2).unwrap(); // GF(4) inside GF(16)
        assert_eq!(sub.len(), 4);
        for &a in &sub {
            // closed under the Frobenius fixed-point condition a^4 = a
            assert_eq!(f.pow(a, 4), a);
        }
        assert!(f.subfield(3).is_err());
    }
}
