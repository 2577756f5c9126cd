//! Sparse multivariate polynomials over a [`Domain`].

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::monomial::{Monomial, VarSet};
use super::scalar::{Domain, Rationals};
use super::AlgebraError;

/// Polynomial stored as a map from monomial to nonzero coefficient.
///
/// Terms are kept in graded-lex order; [`fmt::Display`] prints them from the
/// largest monomial down, which is the canonical text form used everywhere
/// (reports, hashes, byte-exact comparisons).
#[derive(Clone)]
pub struct SparsePolynomial<D: Domain> {
    vars: VarSet,
    domain: D,
    terms: BTreeMap<Monomial, D::Elem>,
}

pub type QPoly = SparsePolynomial<Rationals>;

impl<D: Domain> PartialEq for SparsePolynomial<D> {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.domain == other.domain && self.terms == other.terms
    }
}

impl<D: Domain> Eq for SparsePolynomial<D> {}

impl<D: Domain> SparsePolynomial<D> {
    pub fn zero(vars: VarSet, domain: D) -> Self {
        SparsePolynomial { vars, domain, terms: BTreeMap::new() }
    }

    pub fn constant(vars: VarSet, domain: D, c: D::Elem) -> Self {
        let n = vars.len();
        Self::from_terms(vars, domain, [(Monomial::one(n), c)])
    }

    pub fn one(vars: VarSet, domain: D) -> Self {
        let c = domain.one();
        Self::constant(vars, domain, c)
    }

    /// The `i`-th variable.
    pub fn var(vars: VarSet, domain: D, i: usize) -> Self {
        let n = vars.len();
        let c = domain.one();
        Self::from_terms(vars, domain, [(Monomial::variable(n, i, 1), c)])
    }

    /// Builds a polynomial from terms, merging duplicates and dropping zeros.
    pub fn from_terms(vars: VarSet, domain: D, terms: impl IntoIterator<Item = (Monomial, D::Elem)>) -> Self {
        let mut map: BTreeMap<Monomial, D::Elem> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), vars.len(), "monomial arity does not match variable set");
            match map.get_mut(&m) {
                Some(acc) => *acc = domain.add(acc, &c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        map.retain(|_, c| !domain.is_zero(c));
        SparsePolynomial { vars, domain, terms: map }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn domain(&self) -> &D {
        &self.domain
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &D::Elem)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> D::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.domain.zero())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &D::Elem)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent(var)).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// True when every term has weighted degree `d`.
    pub fn is_weighted_homogeneous(&self, weights: &[u32], d: u32) -> bool {
        self.terms.keys().all(|m| m.weighted_degree(weights) == d)
    }

    /// True when every term has degree `du` in variables `0..split` and `dv`
    /// in the rest.
    pub fn has_bidegree(&self, split: usize, du: u32, dv: u32) -> bool {
        let n = self.nvars();
        self.terms.keys().all(|m| m.degree_in(0..split) == du && m.degree_in(split..n) == dv)
    }

    fn check_compatible(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.vars != other.vars {
            return Err(AlgebraError::VariableMismatch {
                left: format!("{:?}", self.vars),
                right: format!("{:?}", other.vars),
            });
        }
        if self.domain != other.domain {
            return Err(AlgebraError::DomainMismatch { left: self.domain.describe(), right: other.domain.describe() });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_compatible(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&self.domain, &mut terms, m, c);
        }
        Ok(SparsePolynomial { vars: self.vars.clone(), domain: self.domain.clone(), terms })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_compatible(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&self.domain, &mut terms, m, &self.domain.neg(c));
        }
        Ok(SparsePolynomial { vars: self.vars.clone(), domain: self.domain.clone(), terms })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_compatible(other)?;
        let d = &self.domain;
        let mut acc: HashMap<Monomial, D::Elem> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = d.mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(x) => *x = d.add(x, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !d.is_zero(c)).collect();
        Ok(SparsePolynomial { vars: self.vars.clone(), domain: d.clone(), terms })
    }

    pub fn scale(&self, c: &D::Elem) -> Self {
        let d = &self.domain;
        let terms = self.terms.iter().map(|(m, x)| (m.clone(), d.mul(x, c))).filter(|(_, x)| !d.is_zero(x)).collect();
        SparsePolynomial { vars: self.vars.clone(), domain: d.clone(), terms }
    }

    /// Multiplies by a single term.
    pub fn mul_term(&self, m: &Monomial, c: &D::Elem) -> Self {
        let d = &self.domain;
        let terms = self.terms.iter().map(|(mm, x)| (mm.mul(m), d.mul(x, c))).filter(|(_, x)| !d.is_zero(x)).collect();
        SparsePolynomial { vars: self.vars.clone(), domain: d.clone(), terms }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.vars.clone(), self.domain.clone());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn partial_derivative(&self, var: usize) -> Result<Self, AlgebraError> {
        if var >= self.nvars() {
            return Err(AlgebraError::VariableIndex { index: var, nvars: self.nvars() });
        }
        let d = &self.domain;
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponent(var) > 0)
            .map(|(m, c)| {
                let e = m.exponent(var);
                (m.with_exponent(var, e - 1), d.mul(c, &d.from_i64(e as i64)))
            })
            .collect::<Vec<_>>();
        Ok(Self::from_terms(self.vars.clone(), d.clone(), terms))
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars()).map(|i| self.partial_derivative(i).unwrap()).collect()
    }

    pub fn evaluate(&self, point: &[D::Elem]) -> Result<D::Elem, AlgebraError> {
        if point.len() != self.nvars() {
            return Err(AlgebraError::PointLength { expected: self.nvars(), got: point.len() });
        }
        let d = &self.domain;
        let mut acc = d.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t = d.mul(&t, &d.pow(x, e as u64));
                }
            }
            acc = d.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Composition: replaces variable `i` by `images[i]`. All images must share
    /// one variable set and this polynomial's domain.
    pub fn substitute(&self, images: &[Self]) -> Result<Self, AlgebraError> {
        if images.len() != self.nvars() {
            return Err(AlgebraError::PointLength { expected: self.nvars(), got: images.len() });
        }
        let Some(first) = images.first() else {
            // no variables: constant polynomial over an empty set
            return Ok(self.clone());
        };
        for img in images {
            first.check_compatible(img)?;
        }
        if first.domain != self.domain {
            return Err(AlgebraError::DomainMismatch { left: self.domain.describe(), right: first.domain.describe() });
        }
        let target = first.vars.clone();
        let d = self.domain.clone();
        let mut cache: Vec<Vec<Self>> =
            images.iter().map(|img| vec![Self::one(target.clone(), d.clone()), img.clone()]).collect();
        let mut acc: BTreeMap<Monomial, D::Elem> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut t = Self::constant(target.clone(), d.clone(), c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let powers = &mut cache[i];
                while powers.len() <= e as usize {
                    let next = &powers[powers.len() - 1] * &powers[1];
                    powers.push(next);
                }
                t = &t * &powers[e as usize];
            }
            for (mm, cc) in t.terms {
                accumulate(&d, &mut acc, &mm, &cc);
            }
        }
        Ok(SparsePolynomial { vars: target, domain: d, terms: acc })
    }

    /// Linear change of coordinates `x_i -> sum_j matrix[i][j] x_j`, i.e. the
    /// polynomial `x -> self(M x)`.
    pub fn linear_transform(&self, matrix: &[Vec<D::Elem>]) -> Result<Self, AlgebraError> {
        let n = self.nvars();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(AlgebraError::PointLength { expected: n, got: matrix.len() });
        }
        let images: Vec<Self> = matrix
            .iter()
            .map(|row| {
                let terms = row.iter().enumerate().map(|(j, c)| (Monomial::variable(n, j, 1), c.clone()));
                Self::from_terms(self.vars.clone(), self.domain.clone(), terms)
            })
            .collect();
        self.substitute(&images)
    }

    /// Coefficient-wise map into another domain; `None` if any coefficient
    /// has no image.
    pub fn map_domain<E: Domain>(
        &self,
        target: E,
        f: impl Fn(&D::Elem) -> Option<E::Elem>,
    ) -> Option<SparsePolynomial<E>> {
        let mut terms = Vec::with_capacity(self.len());
        for (m, c) in &self.terms {
            terms.push((m.clone(), f(c)?));
        }
        Some(SparsePolynomial::from_terms(self.vars.clone(), target, terms))
    }

    /// Reinterprets the polynomial over a different variable set of the
    /// same size.
    pub fn rename(&self, vars: VarSet) -> Self {
        assert_eq!(vars.len(), self.nvars());
        SparsePolynomial { vars, domain: self.domain.clone(), terms: self.terms.clone() }
    }

    /// Re-indexes variables: variable `i` of the result takes the exponent of
    /// variable `perm[i]` of `self`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.permuted(perm), c.clone()));
        Self::from_terms(self.vars.clone(), self.domain.clone(), terms)
    }

    /// Splits by powers of `var`: entry `k` holds the coefficient of
    /// `var^k`, still over the full variable set (with `var` absent).
    pub fn coefficients_in(&self, var: usize) -> Vec<Self> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut parts: Vec<Vec<(Monomial, D::Elem)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            parts[m.exponent(var) as usize].push((m.with_exponent(var, 0), c.clone()));
        }
        parts.into_iter().map(|ts| Self::from_terms(self.vars.clone(), self.domain.clone(), ts)).collect()
    }

    pub fn retain_terms(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect();
        SparsePolynomial { vars: self.vars.clone(), domain: self.domain.clone(), terms }
    }

    /// Multivariate division by `divisors` in graded-lex order. Returns the
    /// quotients and the remainder, with `self = sum q_i * g_i + r` and no
    /// term of `r` divisible by any leading monomial.
    pub fn divide(&self, divisors: &[Self]) -> Result<(Vec<Self>, Self), AlgebraError> {
        for g in divisors {
            self.check_compatible(g)?;
            if g.is_zero() {
                return Err(AlgebraError::ZeroPolynomial);
            }
        }
        let d = &self.domain;
        let leads: Vec<(Monomial, D::Elem)> = divisors
            .iter()
            .map(|g| {
                let (m, c) = g.leading_term().unwrap();
                (m.clone(), d.inv(c).expect("leading coefficient invertible in a field"))
            })
            .collect();
        let mut quotients: Vec<BTreeMap<Monomial, D::Elem>> = vec![BTreeMap::new(); divisors.len()];
        let mut remainder: BTreeMap<Monomial, D::Elem> = BTreeMap::new();
        let mut work = self.terms.clone();
        while let Some((m, c)) = work.pop_last() {
            match leads.iter().position(|(lm, _)| lm.divides(&m)) {
                Some(i) => {
                    let qm = leads[i].0.quotient_of(&m);
                    let qc = d.mul(&c, &leads[i].1);
                    for (gm, gc) in divisors[i].terms.iter().rev().skip(1) {
                        accumulate(d, &mut work, &gm.mul(&qm), &d.neg(&d.mul(gc, &qc)));
                    }
                    accumulate(d, &mut quotients[i], &qm, &qc);
                }
                None => {
                    remainder.insert(m, c);
                }
            }
        }
        let wrap = |terms| SparsePolynomial { vars: self.vars.clone(), domain: d.clone(), terms };
        Ok((quotients.into_iter().map(wrap).collect(), wrap(remainder)))
    }

    /// Exact quotient `self / divisor`, or `None` when it does not divide.
    pub fn exact_div(&self, divisor: &Self) -> Result<Option<Self>, AlgebraError> {
        let (mut q, r) = self.divide(std::slice::from_ref(divisor))?;
        Ok(if r.is_zero() { Some(q.pop().unwrap()) } else { None })
    }
}

fn accumulate<D: Domain>(d: &D, map: &mut BTreeMap<Monomial, D::Elem>, m: &Monomial, c: &D::Elem) {
    if d.is_zero(c) {
        return;
    }
    match map.get_mut(m) {
        Some(x) => {
            let s = d.add(x, c);
            if d.is_zero(&s) {
                map.remove(m);
            } else {
                *x = s;
            }
        }
        None => {
            map.insert(m.clone(), c.clone());
        }
    }
}

impl<D: Domain> Add for &SparsePolynomial<D> {
    type Output = SparsePolynomial<D>;
    /// Panics on variable-set or domain mismatch; use `try_add` to handle it.
    fn add(self, rhs: Self) -> SparsePolynomial<D> {
        self.try_add(rhs).unwrap()
    }
}

impl<D: Domain> Sub for &SparsePolynomial<D> {
    type Output = SparsePolynomial<D>;
    fn sub(self, rhs: Self) -> SparsePolynomial<D> {
        self.try_sub(rhs).unwrap()
    }
}

impl<D: Domain> Mul for &SparsePolynomial<D> {
    type Output = SparsePolynomial<D>;
    fn mul(self, rhs: Self) -> SparsePolynomial<D> {
        self.try_mul(rhs).unwrap()
    }
}

impl<D: Domain> Neg for &SparsePolynomial<D> {
    type Output = SparsePolynomial<D>;
    fn neg(self) -> SparsePolynomial<D> {
        let d = &self.domain;
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), d.neg(c))).collect();
        SparsePolynomial { vars: self.vars.clone(), domain: d.clone(), terms }
    }
}

impl<D: Domain> Add for SparsePolynomial<D> {
    type Output = SparsePolynomial<D>;
    fn add(self, rhs: Self) -> SparsePolynomial<D> {
        &self + &rhs
    }
}

impl<D: Domain> Sub for SparsePolynomial<D> {
    type Output = SparsePolynomial<D>;
    fn sub(self, rhs: Self) -> SparsePolynomial<D> {
        &self - &rhs
    }
}

impl<D: Domain> Mul for SparsePolynomial<D> {
    type Output = SparsePolynomial<D>;
    fn mul(self, rhs: Self) -> SparsePolynomial<D> {
        &self * &rhs
    }
}

impl<D: Domain> Neg for SparsePolynomial<D> {
    type Output = SparsePolynomial<D>;
    fn neg(self) -> SparsePolynomial<D> {
        -&self
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, vars: &VarSet, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(vars.name(i))?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl<D: Domain> fmt::Display for SparsePolynomial<D> {
    /// Canonical text: terms from the largest graded-lex monomial down,
    /// `c*x0^2*x1` with unit coefficients omitted, `" + "` / `" - "` between
    /// terms, `0` for the zero polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let (negative, mag) = self.domain.signed_text(c);
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let constant = m.degree() == 0;
            let unit = mag == "1";
            if constant {
                f.write_str(&mag)?;
            } else {
                if !unit {
                    if self.domain.needs_parens(c) {
                        write!(f, "({mag})*")?;
                    } else {
                        write!(f, "{mag}*")?;
                    }
                }
                write_monomial(f, &self.vars, m)?;
            }
        }
        Ok(())
    }
}

impl<D: Domain> fmt::Debug for SparsePolynomial<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {} {:?}", self, self.domain.describe(), self.vars)
    }
}
