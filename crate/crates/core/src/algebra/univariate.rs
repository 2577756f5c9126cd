//! Dense univariate polynomials over the rationals, used for eliminants.

use num_traits::{One, Zero};

use super::poly::QPoly;
use super::scalar::Rational;

/// Coefficients from the constant term up; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly(pub Vec<Rational>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    /// Reads a polynomial that only involves variable `var`.
    pub fn from_poly(p: &QPoly, var: usize) -> Option<Self> {
        let mut coeffs = vec![Rational::zero(); p.degree_in(var).unwrap_or(0) as usize + 1];
        for (m, c) in p.terms() {
            if m.degree() != m.exponent(var) {
                return None;
            }
            coeffs[m.exponent(var) as usize] = c.clone();
        }
        Some(Self::new(coeffs))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn monic(mut self) -> Self {
        if let Some(lc) = self.0.last().cloned() {
            for c in &mut self.0 {
                *c = &*c / &lc;
            }
        }
        self
    }

    pub fn rem(&self, divisor: &UniPoly) -> UniPoly {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lc = divisor.0[dd].clone();
        let mut r = self.0.clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let q = &r[top] / &lc;
            for (i, c) in divisor.0.iter().enumerate() {
                r[top - dd + i] = &r[top - dd + i] - &q * c;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        UniPoly::new(r)
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn is_constant_nonzero(&self) -> bool {
        self.0.len() == 1
    }

    pub fn one() -> Self {
        UniPoly(vec![Rational::one()])
    }
}
