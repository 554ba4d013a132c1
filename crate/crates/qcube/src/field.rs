//! Finite fields GF(p^m) with table-backed arithmetic.
//!
//! Elements are encoded as integers in `0..q`: the coefficient vector of the
//! residue polynomial read as a base-p number, constant term least
//! significant. Multiplication goes through exp/log tables over a fixed
//! primitive element, so every op after construction is a couple of array
//! lookups.

use crate::{Error, Result};
use crate::util::{checked_pow, is_prime, prime_power_split};

/// Field element encoding. Always less than the field order q <= 2^16.
pub type Elem = u16;

const ORDER_CAP: u64 = 1 << 16;

/// A concrete realization of GF(p^m).
///
/// The modulus is the lexicographically smallest monic irreducible polynomial
/// of degree m over GF(p), ordered by base-p coefficient value; the generator
/// `alpha` is the smallest-encoded element of multiplicative order q - 1.
/// Both are determined by (p, m), so encodings are stable across runs.
#[derive(Debug)]
pub struct Field {
    p: u64,
    m: u32,
    q: u64,
    modulus: Vec<Elem>,
    alpha: Elem,
    exp: Vec<Elem>,
    log: Vec<u32>,
}

impl Field {
    pub fn new(p: u64, m: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if m == 0 {
            return Err(Error::invalid("extension degree m must be at least 1"));
        }
        let q = match checked_pow(p, m) {
            Some(q) if q <= ORDER_CAP => q,
            _ => return Err(Error::FieldTooLarge(p.saturating_pow(m))),
        };

        let modulus = find_modulus(p, m);
        let mod32: Vec<u32> = modulus.to_vec();
        let alpha = find_primitive(p, m, q, &mod32);

        let mut exp = vec![0 as Elem; (q - 1) as usize];
        let mut log = vec![0u32; q as usize];
        let alpha_digits = decompose(p, m, alpha);
        let mut cur = decompose(p, m, 1);
        for (i, slot) in exp.iter_mut().enumerate() {
            let enc = compose(p, &cur);
            *slot = enc as Elem;
            log[enc as usize] = i as u32;
            cur = poly_mul_mod(&cur, &alpha_digits, &mod32, p);
        }
        debug_assert_eq!(compose(p, &cur), 1, "alpha must have order q - 1");

        Ok(Field { p, m, q, modulus: modulus.iter().map(|&c| c as Elem).collect(), alpha: alpha as Elem, exp, log })
    }

    pub fn from_order(q: u64) -> Result<Field> {
        let (p, m) = prime_power_split(q).ok_or(Error::NonPrimePower(q))?;
        Field::new(p, m)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn alpha(&self) -> Elem {
        self.alpha
    }

    /// Modulus coefficients, constant term first; length m + 1, leading 1.
    pub fn modulus(&self) -> &[Elem] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(|e| e as Elem)
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.check(a);
        self.check(b);
        if self.m == 1 {
            return ((a as u64 + b as u64) % self.p) as Elem;
        }
        let p = self.p;
        let (mut x, mut y) = (a as u64, b as u64);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.m {
            out += (x % p + y % p) % p * place;
            place *= p;
            x /= p;
            y /= p;
        }
        out as Elem
    }

    pub fn neg(&self, a: Elem) -> Elem {
        self.check(a);
        let p = self.p;
        let mut x = a as u64;
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.m {
            out += (p - x % p) % p * place;
            place *= p;
            x /= p;
        }
        out as Elem
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.check(a);
        self.check(b);
        if a == 0 || b == 0 {
            return 0;
        }
        let order = self.q - 1;
        let i = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % order;
        self.exp[i as usize]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        self.check(a);
        if a == 0 {
            return Err(Error::invalid("zero has no multiplicative inverse"));
        }
        let order = self.q - 1;
        let i = (order - self.log[a as usize] as u64) % order;
        Ok(self.exp[i as usize])
    }

    /// Discrete log base alpha; defined for nonzero elements.
    pub fn log(&self, a: Elem) -> Result<u32> {
        self.check(a);
        if a == 0 {
            return Err(Error::invalid("zero has no discrete log"));
        }
        Ok(self.log[a as usize])
    }

    pub fn alpha_pow(&self, i: u64) -> Elem {
        self.exp[(i % (self.q - 1)) as usize]
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        self.check(a);
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let order = self.q - 1;
        let i = self.log[a as usize] as u64 * (e % order) % order;
        self.exp[i as usize]
    }

    #[inline]
    fn check(&self, a: Elem) {
        debug_assert!((a as u64) < self.q, "element {} out of range for q = {}", a, self.q);
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m
    }
}

impl Eq for Field {}

fn decompose(p: u64, m: u32, e: u64) -> Vec<u32> {
    let mut digits = vec![0u32; m as usize];
    let mut x = e;
    for d in digits.iter_mut() {
        *d = (x % p) as u32;
        x /= p;
    }
    digits
}

fn compose(p: u64, digits: &[u32]) -> u64 {
    digits.iter().rev().fold(0u64, |acc, &d| acc * p + d as u64)
}

/// Product of two residues, reduced by the monic modulus (m + 1 coefficients).
fn poly_mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u64) -> Vec<u32> {
    let m = a.len();
    let mut acc = vec![0u64; 2 * m - 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            acc[i + j] += ai as u64 * bj as u64;
        }
    }
    for v in acc.iter_mut() {
        *v %= p;
    }
    for i in (m..2 * m - 1).rev() {
        let c = acc[i];
        if c != 0 {
            acc[i] = 0;
            for (j, &mj) in modulus.iter().take(m).enumerate() {
                let sub = c * mj as u64 % p;
                acc[i - m + j] = (acc[i - m + j] + p - sub) % p;
            }
        }
    }
    acc.truncate(m);
    acc.iter().map(|&v| v as u32).collect()
}

fn poly_pow_mod(base: &[u32], mut e: u64, modulus: &[u32], p: u64) -> Vec<u32> {
    let m = base.len();
    let mut result = decompose(p, m as u32, 1);
    let mut sq = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mul_mod(&result, &sq, modulus, p);
        }
        sq = poly_mul_mod(&sq, &sq, modulus, p);
        e >>= 1;
    }
    result
}

/// True when `divisor` (monic, coefficients low-to-high) divides `candidate`.
fn poly_divides(divisor: &[u32], candidate: &[u32], p: u64) -> bool {
    let dd = divisor.len() - 1;
    let mut rem: Vec<u64> = candidate.iter().map(|&v| v as u64).collect();
    for i in (dd..rem.len()).rev() {
        let c = rem[i] % p;
        if c != 0 {
            for (j, &vj) in divisor.iter().enumerate() {
                let sub = c * vj as u64 % p;
                rem[i - dd + j] = (rem[i - dd + j] + p - sub) % p;
            }
        }
    }
    rem[..dd].iter().all(|&v| v % p == 0)
}

fn is_irreducible(candidate: &[u32], p: u64) -> bool {
    let m = candidate.len() - 1;
    for dd in 1..=m / 2 {
        let count = checked_pow(p, dd as u32).expect("divisor space fits u64");
        for enc in 0..count {
            let mut divisor = decompose(p, dd as u32, enc);
            divisor.push(1);
            if poly_divides(&divisor, candidate, p) {
                return false;
            }
        }
    }
    true
}

fn find_modulus(p: u64, m: u32) -> Vec<u32> {
    if m == 1 {
        return vec![0, 1];
    }
    let count = checked_pow(p, m).expect("candidate space fits u64");
    for low in 0..count {
        let mut candidate = decompose(p, m, low);
        candidate.push(1);
        if is_irreducible(&candidate, p) {
            return candidate;
        }
    }
    unreachable!("irreducible polynomials of degree {} over GF({}) exist", m, p)
}

fn find_primitive(p: u64, m: u32, q: u64, modulus: &[u32]) -> u64 {
    let mut factors = Vec::new();
    let mut rest = q - 1;
    let mut f = 2u64;
    while f * f <= rest {
        if rest.is_multiple_of(f) {
            factors.push(f);
            while rest.is_multiple_of(f) {
                rest /= f;
            }
        }
        f += 1;
    }
    if rest > 1 {
        factors.push(rest);
    }

    'candidate: for enc in 1..q {
        let digits = decompose(p, m, enc);
        for &ell in &factors {
            let power = poly_pow_mod(&digits, (q - 1) / ell, modulus, p);
            if compose(p, &power) == 1 {
                continue 'candidate;
            }
        }
        return enc;
    }
    unreachable!("the multiplicative group of GF({}) is cyclic", q)
}
