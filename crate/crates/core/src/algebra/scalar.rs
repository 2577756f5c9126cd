//! Coefficient domains.
//!
//! A [`Domain`] is a small value describing a field; its elements are plain
//! data and all arithmetic goes through the domain. This lets a single
//! polynomial type run over the rationals and over `F_p` / `F_{p^2}` without
//! storing the modulus in every coefficient.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::modarith::{is_prime_u64, pow_mod};
use super::AlgebraError;

pub trait Domain: Clone + PartialEq + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Splits an element into a sign and the text of its magnitude, for
    /// printing `a - b` instead of `a + -b`. Domains without an ordering
    /// always report non-negative.
    fn signed_text(&self, a: &Self::Elem) -> (bool, String);

    /// True when the magnitude text must be parenthesised inside a product.
    fn needs_parens(&self, _a: &Self::Elem) -> bool {
        false
    }

    /// Short tag used in mismatch diagnostics and reports.
    fn describe(&self) -> String;

    fn pow(&self, a: &Self::Elem, mut exp: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }
}

/// The field of rational numbers with arbitrary-precision elements.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Domain for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        rat(n)
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn signed_text(&self, a: &BigRational) -> (bool, String) {
        (a.is_negative(), a.abs().to_string())
    }
    fn describe(&self) -> String {
        "QQ".to_string()
    }
}

/// Element of `F_p` or `F_{p^2} = F_p[t]/(t^2 - r)`; `c1` is always zero in
/// the prime field.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fq {
    pub c0: u64,
    pub c1: u64,
}

/// Finite field `F_{p^k}` with `k` in `{1, 2}` and `p > 3` prime, `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FqField {
    p: u64,
    k: u32,
    /// Quadratic non-residue defining the extension (unused when `k == 1`).
    nonresidue: u64,
}

impl FqField {
    pub fn new(p: u64, k: u32) -> Result<Self, AlgebraError> {
        if !is_prime_u64(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        if p <= 3 {
            return Err(AlgebraError::CharacteristicDividesSix(p));
        }
        if p >= 1 << 31 {
            return Err(AlgebraError::ModulusTooLarge(p));
        }
        if k != 1 && k != 2 {
            return Err(AlgebraError::UnsupportedExtension(k));
        }
        let nonresidue = if k == 2 {
            (2..p).find(|&r| pow_mod(r, (p - 1) / 2, p) == p - 1).expect("odd prime has a non-residue")
        } else {
            0
        };
        Ok(FqField { p, k, nonresidue })
    }

    pub fn prime(p: u64) -> Result<Self, AlgebraError> {
        Self::new(p, 1)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.k)
    }

    pub fn nonresidue(&self) -> u64 {
        self.nonresidue
    }

    /// Element number `index` in the fixed enumeration `c0 + p * c1`.
    #[inline]
    pub fn element(&self, index: u64) -> Fq {
        Fq { c0: index % self.p, c1: index / self.p }
    }

    #[inline]
    pub fn index_of(&self, a: Fq) -> u64 {
        a.c0 + self.p * a.c1
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> + '_ {
        (0..self.order()).map(move |i| self.element(i))
    }

    pub fn from_u64(&self, n: u64) -> Fq {
        Fq { c0: n % self.p, c1: 0 }
    }

    /// Reduction of a rational; fails when the denominator vanishes mod `p`.
    pub fn from_rational(&self, r: &BigRational) -> Option<Fq> {
        let p = BigInt::from(self.p);
        let den = r.denom().mod_floor(&p).to_u64().unwrap();
        if den == 0 {
            return None;
        }
        let num = r.numer().mod_floor(&p).to_u64().unwrap();
        let inv = pow_mod(den, self.p - 2, self.p);
        Some(Fq { c0: num * inv % self.p, c1: 0 })
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: &Fq) -> Option<u64> {
        if self.is_zero(a) {
            return None;
        }
        let n = self.order() - 1;
        let mut order = n;
        for (prime, _) in factor_small(n) {
            while order.is_multiple_of(prime) && self.is_one(&self.pow(a, order / prime)) {
                order /= prime;
            }
        }
        Some(order)
    }

    /// First element (in enumeration order) of exact multiplicative order
    /// `n`, if `n` divides `q - 1`.
    pub fn element_of_order(&self, n: u64) -> Option<Fq> {
        let q1 = self.order() - 1;
        if n == 0 || !q1.is_multiple_of(n) {
            return None;
        }
        self.elements().skip(1).map(|x| self.pow(&x, q1 / n)).find(|y| self.multiplicative_order(y) == Some(n))
    }
}

fn factor_small(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

impl Domain for FqField {
    type Elem = Fq;

    #[inline]
    fn zero(&self) -> Fq {
        Fq::default()
    }
    #[inline]
    fn one(&self) -> Fq {
        Fq { c0: 1, c1: 0 }
    }
    fn from_i64(&self, n: i64) -> Fq {
        Fq { c0: n.rem_euclid(self.p as i64) as u64, c1: 0 }
    }
    #[inline]
    fn add(&self, a: &Fq, b: &Fq) -> Fq {
        let p = self.p;
        let mut c0 = a.c0 + b.c0;
        if c0 >= p {
            c0 -= p;
        }
        let mut c1 = a.c1 + b.c1;
        if c1 >= p {
            c1 -= p;
        }
        Fq { c0, c1 }
    }
    #[inline]
    fn sub(&self, a: &Fq, b: &Fq) -> Fq {
        let p = self.p;
        Fq { c0: (a.c0 + p - b.c0) % p, c1: (a.c1 + p - b.c1) % p }
    }
    #[inline]
    fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        let p = self.p;
        if self.k == 1 {
            return Fq { c0: a.c0 * b.c0 % p, c1: 0 };
        }
        let c0 = (a.c0 * b.c0 + (a.c1 * b.c1 % p) * self.nonresidue) % p;
        let c1 = (a.c0 * b.c1 + a.c1 * b.c0) % p;
        Fq { c0, c1 }
    }
    #[inline]
    fn neg(&self, a: &Fq) -> Fq {
        let p = self.p;
        Fq { c0: (p - a.c0) % p, c1: (p - a.c1) % p }
    }
    fn inv(&self, a: &Fq) -> Option<Fq> {
        let p = self.p;
        // (c0 + c1 t)^{-1} = (c0 - c1 t) / (c0^2 - r c1^2)
        let norm = (a.c0 * a.c0 % p + p - (a.c1 * a.c1 % p) * self.nonresidue % p) % p;
        if norm == 0 {
            return None;
        }
        let ninv = pow_mod(norm, p - 2, p);
        Some(Fq { c0: a.c0 * ninv % p, c1: (p - a.c1) % p * ninv % p })
    }
    #[inline]
    fn is_zero(&self, a: &Fq) -> bool {
        a.c0 == 0 && a.c1 == 0
    }
    fn signed_text(&self, a: &Fq) -> (bool, String) {
        let text = match (a.c0, a.c1) {
            (c0, 0) => c0.to_string(),
            (0, 1) => "t".to_string(),
            (0, c1) => format!("{c1}*t"),
            (c0, 1) => format!("{c0} + t"),
            (c0, c1) => format!("{c0} + {c1}*t"),
        };
        (false, text)
    }
    fn needs_parens(&self, a: &Fq) -> bool {
        a.c0 != 0 && a.c1 != 0
    }
    fn describe(&self) -> String {
        if self.k == 1 {
            format!("GF({})", self.p)
        } else {
            format!("GF({}^{})", self.p, self.k)
        }
    }
}
