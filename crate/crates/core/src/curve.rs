//! The input plane quartic and the bicanonical sections of its theta
//! divisor, realised as symmetric bidegree-(2,2) forms in `u`, `v`.

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::resultant::sylvester_resultant;
use crate::algebra::univariate::UniPoly;
use crate::algebra::{
    monomials_of_degree, rat, Domain, FqField, Monomial, QMatrix, QPoly, Rational, Rationals, VarSet,
};

/// Coordinates `z0, z1, z2` of the canonical plane.
pub fn z_vars() -> VarSet {
    VarSet::indexed("z", 3)
}

/// `u0, u1, u2, v0, v1, v2`: two copies of the plane coordinates.
pub fn uv_vars() -> VarSet {
    VarSet::families(&["u", "v"], 3)
}

/// Exchanges the `u` and `v` blocks.
pub const SWAP_UV: [usize; 6] = [3, 4, 5, 0, 1, 2];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("quartic must be over z0, z1, z2")]
    WrongVariables,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("polynomial has degree {0:?}, expected 4")]
    NotDegree4(Option<u32>),
    #[error("quartic is singular{}", witness_text(.witness))]
    SingularQuartic { witness: Option<SingularWitness> },
    #[error("g(z,z) differs from f(z): difference {difference}")]
    ExplicitGMismatch { difference: String },
    #[error("g is not of bidegree (2,2) in u, v")]
    WrongBidegree,
    #[error("perturbation scale lambda must be nonzero")]
    ZeroLambda,
    #[error("ker mu has dimension {got}, expected 7 (rank of mu: {rank})")]
    KernelDimensionUnexpected { got: usize, rank: usize },
    #[error("section {index} is not a symmetric (2,2)-form in ker mu")]
    SectionNotInKernel { index: usize },
    #[error("the six products p_ij*p_kl are linearly dependent (rank {0})")]
    ProductsDependent(usize),
    #[error("gtilde lies in the span of the six products p_ij*p_kl")]
    GTildeInSpan,
}

fn witness_text(w: &Option<SingularWitness>) -> String {
    match w {
        Some(w) => format!(" (singular point {:?} over GF({}))", w.point, w.prime),
        None => String::new(),
    }
}

/// A singular point found by scanning `P^2(F_p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularWitness {
    pub prime: u64,
    pub point: [u64; 3],
}

/// Smooth plane quartic `f(z0, z1, z2) = 0` over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticCurve {
    f: QPoly,
}

impl QuarticCurve {
    /// Validates shape only; smoothness is a separate certificate.
    pub fn new(f: QPoly) -> Result<Self, CurveError> {
        if f.vars() != &z_vars() {
            return Err(CurveError::WrongVariables);
        }
        if !f.is_homogeneous() {
            return Err(CurveError::NotHomogeneous);
        }
        if f.total_degree() != Some(4) {
            return Err(CurveError::NotDegree4(f.total_degree()));
        }
        Ok(QuarticCurve { f })
    }

    pub fn f(&self) -> &QPoly {
        &self.f
    }

    /// `f(u)` over the `u, v` variables.
    pub fn in_u(&self) -> QPoly {
        self.f.substitute(&[uv(0), uv(1), uv(2)]).unwrap()
    }

    /// `f(v)` over the `u, v` variables.
    pub fn in_v(&self) -> QPoly {
        self.f.substitute(&[uv(3), uv(4), uv(5)]).unwrap()
    }

    /// Graded-lex leading monomial of `f` (over `z`).
    pub fn leading_monomial(&self) -> Monomial {
        self.f.leading_term().unwrap().0.clone()
    }

    /// Degree-`d` monomials in `z` not divisible by the leading monomial of
    /// `f`: a basis of the degree-`d` part of `Q[z]/(f)`.
    pub fn standard_monomials(&self, d: u32) -> Vec<Monomial> {
        let lm = self.leading_monomial();
        monomials_of_degree(3, d).into_iter().filter(|m| !lm.divides(m)).collect()
    }

    /// Normal form of a polynomial over `z` modulo `f`.
    pub fn reduce(&self, p: &QPoly) -> QPoly {
        p.divide(std::slice::from_ref(&self.f)).unwrap().1
    }
}

pub(crate) fn uv(i: usize) -> QPoly {
    QPoly::var(uv_vars(), Rationals, i)
}

fn zv(i: usize) -> QPoly {
    QPoly::var(z_vars(), Rationals, i)
}

/// Restriction of a form in `u, v` to the diagonal `u = v = z`.
pub fn diagonal(p: &QPoly) -> QPoly {
    p.substitute(&[zv(0), zv(1), zv(2), zv(0), zv(1), zv(2)]).unwrap()
}

pub fn swap_uv(p: &QPoly) -> QPoly {
    p.permute_vars(&SWAP_UV)
}

/// Record of the exact smoothness check: for every chart, the eliminants
/// whose gcd is a nonzero constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothnessCertificate {
    /// Linear change of coordinates applied before elimination (row-major
    /// 3x3, identity when none was needed).
    pub coordinate_change: [[i64; 3]; 3],
    pub charts: Vec<ChartCertificate>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartCertificate {
    /// Coordinate set to 1.
    pub chart: usize,
    /// Variable eliminated by resultants.
    pub eliminated: usize,
    /// Remaining variable the eliminants are polynomials in.
    pub remaining: usize,
    /// Canonical text of the three pairwise eliminants of the partials.
    pub eliminants: Vec<String>,
}

/// Eliminant of two chart partials with respect to `var`: a polynomial that
/// vanishes at the remaining coordinate of every common zero.
fn eliminant(a: &QPoly, b: &QPoly, var: usize) -> QPoly {
    if a.is_zero() || b.is_zero() {
        return QPoly::zero(a.vars().clone(), Rationals);
    }
    match (a.degree_in(var).unwrap(), b.degree_in(var).unwrap()) {
        (0, _) => a.clone(),
        (_, 0) => b.clone(),
        _ => sylvester_resultant(a, b, var).unwrap(),
    }
}

fn certify_chart(grad: &[QPoly], chart: usize) -> Option<ChartCertificate> {
    let mut images: Vec<QPoly> = (0..3).map(zv).collect();
    images[chart] = QPoly::one(z_vars(), Rationals);
    let partials: Vec<QPoly> = grad.iter().map(|g| g.substitute(&images).unwrap()).collect();
    let others: Vec<usize> = (0..3).filter(|&i| i != chart).collect();
    for (eliminated, remaining) in [(others[1], others[0]), (others[0], others[1])] {
        let elims: Vec<QPoly> =
            [(0, 1), (0, 2), (1, 2)].iter().map(|&(i, j)| eliminant(&partials[i], &partials[j], eliminated)).collect();
        let g = elims
            .iter()
            .map(|e| UniPoly::from_poly(e, remaining).expect("eliminant is univariate"))
            .fold(UniPoly::new(vec![]), |acc, e| acc.gcd(&e));
        if g.is_constant_nonzero() {
            return Some(ChartCertificate {
                chart,
                eliminated,
                remaining,
                eliminants: elims.iter().map(|e| e.to_string()).collect(),
            });
        }
    }
    None
}

/// Deterministic sequence of unimodular-ish coordinate changes tried when
/// the eliminants in the given coordinates share a spurious factor.
const COORDINATE_CHANGES: [[[i64; 3]; 3]; 4] = [
    [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    [[1, 2, 0], [0, 1, 3], [5, 0, 1]],
    [[2, 1, 1], [1, 3, 1], [1, 1, 4]],
    [[1, -3, 2], [4, 1, -1], [-2, 5, 1]],
];

/// Exact certificate that `f` and its partials have no common projective
/// zero, by chart-wise resultant elimination of the partial derivatives.
pub fn assert_smooth_quartic(curve: &QuarticCurve) -> Result<SmoothnessCertificate, CurveError> {
    for change in COORDINATE_CHANGES {
        let images: Vec<QPoly> = change
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .fold(QPoly::zero(z_vars(), Rationals), |acc, (j, &c)| &acc + &zv(j).scale(&rat(c)))
            })
            .collect();
        let f = curve.f.substitute(&images).unwrap();
        let grad = f.gradient();
        let charts: Option<Vec<ChartCertificate>> = (0..3).map(|c| certify_chart(&grad, c)).collect();
        if let Some(charts) = charts {
            return Ok(SmoothnessCertificate { coordinate_change: change, charts });
        }
    }
    Err(CurveError::SingularQuartic { witness: find_singular_witness(curve) })
}

/// Scans `P^2(F_p)` for a common zero of the partials, over a couple of
/// small primes of good reduction.
pub fn find_singular_witness(curve: &QuarticCurve) -> Option<SingularWitness> {
    for p in [101u64, 103] {
        let field = FqField::prime(p).unwrap();
        let Some(fp) = curve.f.map_domain(field, |c| field.from_rational(c)) else {
            continue;
        };
        let grad = fp.gradient();
        for point in projective_points_p2(p) {
            let pt: Vec<_> = point.iter().map(|&c| field.from_u64(c)).collect();
            if grad.iter().all(|g| field.is_zero(&g.evaluate(&pt).unwrap())) {
                return Some(SingularWitness { prime: p, point });
            }
        }
    }
    None
}

/// Normalised points of `P^2(F_p)` (first nonzero coordinate 1).
pub(crate) fn projective_points_p2(p: u64) -> impl Iterator<Item = [u64; 3]> {
    let chart0 = (0..p).flat_map(move |a| (0..p).map(move |b| [1, a, b]));
    let chart1 = (0..p).map(|b| [0, 1, b]);
    chart0.chain(chart1).chain(std::iter::once([0, 0, 1]))
}

/// `p_ij = u_i v_j - u_j v_i` for `(ij)` in `(01), (02), (12)`.
pub fn build_gauss_sections() -> [QPoly; 3] {
    let p = |i: usize, j: usize| &(&uv(i) * &uv(3 + j)) - &(&uv(j) * &uv(3 + i));
    [p(0, 1), p(0, 2), p(1, 2)]
}

/// How the bidegree-(2,2) lift `g` of `f` was chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitRule {
    /// For each monomial `z^e`, `u`-exponents `d_i = min(e_i, 2 - sum_{j<i} d_j)`
    /// and `v`-exponents `e - d`.
    Greedy,
    /// A user-supplied form over `u, v`.
    Explicit(QPoly),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splitting {
    /// `g(u, v)` with `g(z, z) = f(z)`.
    pub g: QPoly,
    /// `g_s = g(u, v) + g(v, u)`.
    pub g_sym: QPoly,
}

pub fn split_to_bidegree(curve: &QuarticCurve, rule: &SplitRule) -> Result<Splitting, CurveError> {
    let g = match rule {
        SplitRule::Greedy => {
            let terms = curve.f.terms().map(|(m, c)| {
                let mut exps = [0u32; 6];
                let mut used = 0;
                for i in 0..3 {
                    let d = m.exponent(i).min(2 - used);
                    used += d;
                    exps[i] = d;
                    exps[3 + i] = m.exponent(i) - d;
                }
                (Monomial::from_exponents(&exps), c.clone())
            });
            QPoly::from_terms(uv_vars(), Rationals, terms)
        }
        SplitRule::Explicit(g) => {
            if g.vars() != &uv_vars() || !g.has_bidegree(3, 2, 2) || g.is_zero() {
                return Err(CurveError::WrongBidegree);
            }
            let diff = &diagonal(g) - &curve.f;
            if !diff.is_zero() {
                return Err(CurveError::ExplicitGMismatch { difference: diff.to_string() });
            }
            g.clone()
        }
    };
    debug_assert_eq!(diagonal(&g), curve.f);
    let g_sym = &g + &swap_uv(&g);
    Ok(Splitting { g, g_sym })
}

/// Provenance of `gtilde`: the split rule and the perturbation
/// `lambda * gtilde + sum_m c_m * (m-th product p_ij p_kl)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GTildeProvenance {
    pub rule: SplitRule,
    pub lambda: Rational,
    pub product_coeffs: [Rational; 6],
}

/// The seven sections of the bicanonical system of the theta divisor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionBasis {
    pub p01: QPoly,
    pub p02: QPoly,
    pub p12: QPoly,
    pub g_tilde: QPoly,
    pub provenance: GTildeProvenance,
}

impl SectionBasis {
    /// Sections with `gtilde = g_s` for the given split rule.
    pub fn new(curve: &QuarticCurve, rule: SplitRule) -> Result<Self, CurveError> {
        let split = split_to_bidegree(curve, &rule)?;
        let [p01, p02, p12] = build_gauss_sections();
        Ok(SectionBasis {
            p01,
            p02,
            p12,
            g_tilde: split.g_sym,
            provenance: GTildeProvenance {
                rule,
                lambda: rat(1),
                product_coeffs: std::array::from_fn(|_| Rational::zero()),
            },
        })
    }

    /// `[p01, p02, p12]`, the weight-one coordinates.
    pub fn gauss(&self) -> [&QPoly; 3] {
        [&self.p01, &self.p02, &self.p12]
    }

    /// The six products in the order `p01^2, p01 p02, p01 p12, p02^2,
    /// p02 p12, p12^2`.
    pub fn products(&self) -> [QPoly; 6] {
        let g = self.gauss();
        [g[0] * g[0], g[0] * g[1], g[0] * g[2], g[1] * g[1], g[1] * g[2], g[2] * g[2]]
    }

    /// All seven sections: the six products followed by `gtilde`.
    pub fn all(&self) -> Vec<QPoly> {
        let mut v = self.products().to_vec();
        v.push(self.g_tilde.clone());
        v
    }

    /// `lambda * gtilde + sum_m coeffs[m] * products[m]`.
    pub fn perturb_gtilde(&self, lambda: &Rational, coeffs: &[Rational; 6]) -> Result<Self, CurveError> {
        if lambda.is_zero() {
            return Err(CurveError::ZeroLambda);
        }
        let mut g = self.g_tilde.scale(lambda);
        for (c, prod) in coeffs.iter().zip(self.products()) {
            g = &g + &prod.scale(c);
        }
        let old = &self.provenance;
        Ok(SectionBasis {
            g_tilde: g,
            provenance: GTildeProvenance {
                rule: old.rule.clone(),
                lambda: &old.lambda * lambda,
                product_coeffs: std::array::from_fn(|i| &old.product_coeffs[i] * lambda + &coeffs[i]),
            },
            ..self.clone()
        })
    }
}

/// Symmetric-square coordinates: the pair `(i, j)`, `i <= j`, of degree-2
/// monomials indexes the form `m_i(u) m_j(v) + m_j(u) m_i(v)` (or
/// `m_i(u) m_i(v)` on the diagonal).
fn sym_pairs() -> Vec<(usize, usize)> {
    (0..6).flat_map(|i| (i..6).map(move |j| (i, j))).collect()
}

fn quadric_in(m: &Monomial, offset: usize) -> Monomial {
    let mut e = [0u32; 6];
    e[offset..offset + 3].copy_from_slice(m.exponents());
    Monomial::from_exponents(&e)
}

fn sym_form(pair: (usize, usize)) -> QPoly {
    let q = monomials_of_degree(3, 2);
    let one = rat(1);
    let a = quadric_in(&q[pair.0], 0).mul(&quadric_in(&q[pair.1], 3));
    let mut terms = vec![(a, one.clone())];
    if pair.0 != pair.1 {
        terms.push((quadric_in(&q[pair.1], 0).mul(&quadric_in(&q[pair.0], 3)), one));
    }
    QPoly::from_terms(uv_vars(), Rationals, terms)
}

/// Coordinates of a symmetric (2,2)-form in the 21-dimensional basis;
/// `None` if the form is not symmetric of bidegree (2,2).
pub fn sym_coordinates(form: &QPoly) -> Option<Vec<Rational>> {
    if !form.has_bidegree(3, 2, 2) || swap_uv(form) != *form {
        return None;
    }
    let q = monomials_of_degree(3, 2);
    Some(
        sym_pairs()
            .into_iter()
            .map(|(i, j)| form.coefficient(&quadric_in(&q[i], 0).mul(&quadric_in(&q[j], 3))))
            .collect(),
    )
}

/// `ker(mu : S^2 H^0(2K) -> H^0(4K))` with `H^0(2K)` = quadrics in `z` and
/// `H^0(4K)` = quartics modulo `f`.
#[derive(Clone, Debug)]
pub struct MuKernel {
    pub h0_omega2: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    /// Kernel basis as symmetric (2,2)-forms in `u, v`.
    pub basis: Vec<QPoly>,
}

impl MuKernel {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Matrix of `mu`: column `k` is the normal form of the diagonal restriction
/// of the `k`-th symmetric basis form, in coordinates on the standard
/// quartic monomials.
fn mu_matrix(curve: &QuarticCurve) -> QMatrix {
    let target = curve.standard_monomials(4);
    let cols: Vec<Vec<Rational>> = sym_pairs()
        .into_iter()
        .map(|pair| {
            let nf = curve.reduce(&diagonal(&sym_form(pair)));
            target.iter().map(|m| nf.coefficient(m)).collect()
        })
        .collect();
    QMatrix::from_rows(cols, target.len()).transpose()
}

pub fn mu_kernel(curve: &QuarticCurve) -> Result<MuKernel, CurveError> {
    let m = mu_matrix(curve);
    let kernel = m.nullspace();
    let rank = m.ncols() - kernel.len();
    if kernel.len() != 7 {
        return Err(CurveError::KernelDimensionUnexpected { got: kernel.len(), rank });
    }
    let pairs = sym_pairs();
    let basis = kernel
        .iter()
        .map(|v| {
            v.iter()
                .zip(&pairs)
                .filter(|(c, _)| !c.is_zero())
                .fold(QPoly::zero(uv_vars(), Rationals), |acc, (c, &pair)| &acc + &sym_form(pair).scale(c))
        })
        .collect();
    Ok(MuKernel {
        h0_omega2: monomials_of_degree(3, 2).len(),
        source_dim: m.ncols(),
        target_dim: m.nrows(),
        rank,
        basis,
    })
}

/// Outcome of [`check_section_basis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionReport {
    pub product_rank: usize,
    pub total_rank: usize,
}

/// Checks that the seven sections lie in `ker mu` and form a basis of it.
pub fn check_section_basis(curve: &QuarticCurve, sections: &SectionBasis) -> Result<SectionReport, CurveError> {
    let all = sections.all();
    let mut coords = Vec::with_capacity(7);
    for (index, s) in all.iter().enumerate() {
        let c = sym_coordinates(s).ok_or(CurveError::SectionNotInKernel { index })?;
        if !curve.reduce(&diagonal(s)).is_zero() {
            return Err(CurveError::SectionNotInKernel { index });
        }
        coords.push(c);
    }
    let products = QMatrix::from_rows(coords[..6].to_vec(), 21).transpose();
    let product_rank = products.rank();
    if product_rank != 6 {
        return Err(CurveError::ProductsDependent(product_rank));
    }
    let total_rank = QMatrix::from_rows(coords, 21).transpose().rank();
    if total_rank != 7 {
        return Err(CurveError::GTildeInSpan);
    }
    Ok(SectionReport { product_rank, total_rank })
}
