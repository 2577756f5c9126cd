//! The weighted sextic relation among the seven sections.
//!
//! Substituting `y0, y1, y2, y3 = p01, p02, p12, gtilde` into a polynomial of
//! weighted degree 6 (weights 1,1,1,2) gives a form of bidegree (6,6) in
//! `u, v`. The relation is the unique (up to scale) combination whose image
//! lies in the ideal `(f(u), f(v))`.
//!
//! Since `f(u)` and `f(v)` have leading monomials in disjoint variables they
//! form a Gröbner basis, so membership reduces to a normal form: reduce the
//! `u` part and the `v` part modulo `f` separately.

use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{monomials_of_degree, Monomial, QMatrix, QPoly, Rational, Rationals, VarSet};
use crate::curve::{uv_vars, QuarticCurve, SectionBasis};

/// Weighted coordinates `y0, y1, y2, y3`.
pub fn y_vars() -> VarSet {
    VarSet::indexed("y", 4)
}

pub const WEIGHTS: [u32; 4] = [1, 1, 1, 2];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RelationError {
    #[error("no weighted sextic relation: the sections are not a valid basis")]
    NullspaceDimZero,
    #[error("relation space has dimension {0}; the image is degenerate")]
    NullspaceDimHigh(usize),
    #[error("ideal block has dimension {got}, expected 300")]
    DimensionUnexpected { got: usize },
    #[error("relation has no y3^3 term")]
    MissingVertexTerm,
    #[error("relation is not weighted homogeneous of degree 6 in y0..y3")]
    NotWeightedSextic,
    #[error("relation does not lie in the ideal (f(u), f(v))")]
    NotInIdeal,
}

/// The 50 monomials `y0^a0 y1^a1 y2^a2 y3^b` with `a0+a1+a2+2b = 6`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedMonomialBasis {
    monomials: Vec<Monomial>,
}

impl WeightedMonomialBasis {
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn count_with_y3_power(&self, b: u32) -> usize {
        self.monomials.iter().filter(|m| m.exponent(3) == b).count()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.monomials.iter().position(|x| x == m)
    }
}

/// Ordered by the power of `y3` ascending, then descending graded-lex in
/// `y0, y1, y2`.
pub fn enumerate_weighted_monomials() -> WeightedMonomialBasis {
    let monomials = (0..=3u32)
        .flat_map(|b| {
            monomials_of_degree(3, 6 - 2 * b).into_iter().map(move |m| {
                let e = m.exponents();
                Monomial::from_exponents(&[e[0], e[1], e[2], b])
            })
        })
        .collect();
    WeightedMonomialBasis { monomials }
}

/// Cached powers of the sections for repeated substitution.
pub struct SectionPowers {
    powers: [Vec<QPoly>; 4],
}

impl SectionPowers {
    pub fn new(sections: &SectionBasis) -> Self {
        let images = [&sections.p01, &sections.p02, &sections.p12, &sections.g_tilde];
        let powers = std::array::from_fn(|i| {
            let top = if i == 3 { 3 } else { 6 };
            let mut v = vec![QPoly::one(uv_vars(), Rationals)];
            for k in 1..=top {
                let next = &v[k - 1] * images[i];
                v.push(next);
            }
            v
        });
        SectionPowers { powers }
    }

    /// Image of a weighted monomial: a form of bidegree (6,6).
    pub fn image(&self, m: &Monomial) -> QPoly {
        (0..4).fold(QPoly::one(uv_vars(), Rationals), |acc, i| &acc * &self.powers[i][m.exponent(i) as usize])
    }

    /// Image of a polynomial in `y0..y3`.
    pub fn image_of(&self, rel: &QPoly) -> QPoly {
        rel.terms().fold(QPoly::zero(uv_vars(), Rationals), |acc, (m, c)| &acc + &self.image(m).scale(c))
    }
}

pub fn substitute_sections(m: &Monomial, sections: &SectionBasis) -> QPoly {
    SectionPowers::new(sections).image(m)
}

/// The subspace `V = f(u)*(2,6) + f(v)*(6,2)` of the bidegree-(6,6) forms,
/// with the reduction onto its complement spanned by standard monomials.
pub struct IdealBlock {
    curve: QuarticCurve,
    /// Degree-6 monomials in `z` not divisible by the leading monomial of `f`.
    standard: Vec<Monomial>,
    /// Normal form of each degree-6 monomial (descending grlex order) in
    /// coordinates on `standard`.
    nf_table: Vec<Vec<Rational>>,
    degree6: Vec<Monomial>,
    span_rank: usize,
}

impl IdealBlock {
    pub fn new(curve: &QuarticCurve) -> Result<Self, RelationError> {
        let degree6 = monomials_of_degree(3, 6);
        let standard = curve.standard_monomials(6);
        let z = crate::curve::z_vars();
        let nf_table = degree6
            .iter()
            .map(|m| {
                let nf = curve.reduce(&QPoly::from_terms(z.clone(), Rationals, [(m.clone(), Rational::one())]));
                standard.iter().map(|s| nf.coefficient(s)).collect()
            })
            .collect();
        let mut block = IdealBlock { curve: curve.clone(), standard, nf_table, degree6, span_rank: 0 };
        block.span_rank = block.spanning_rank_mod_p(crate::algebra::modarith::large_primes(1)[0]);
        if block.span_rank != 300 {
            return Err(RelationError::DimensionUnexpected { got: block.span_rank });
        }
        Ok(block)
    }

    /// Dimension of the full bidegree-(6,6) space.
    pub fn ambient_dim(&self) -> usize {
        self.degree6.len() * self.degree6.len()
    }

    /// `dim V`, from the rank of the explicit spanning set.
    pub fn dim(&self) -> usize {
        self.span_rank
    }

    pub fn quotient_dim(&self) -> usize {
        self.standard.len() * self.standard.len()
    }

    /// The 336 spanning products `f(u) * m` (m of bidegree (2,6)) and
    /// `f(v) * m` (m of bidegree (6,2)).
    pub fn spanning_set(&self) -> Vec<QPoly> {
        let (fu, fv) = (self.curve.in_u(), self.curve.in_v());
        let d2 = monomials_of_degree(3, 2);
        let mut out = Vec::with_capacity(2 * d2.len() * self.degree6.len());
        let one = Rational::one();
        for (f, low_first) in [(&fu, true), (&fv, false)] {
            for a in &d2 {
                for b in &self.degree6 {
                    let (mu, mv) = if low_first { (a, b) } else { (b, a) };
                    let e = [mu.exponents(), mv.exponents()].concat();
                    out.push(f.mul_term(&Monomial::from_exponents(&e), &one));
                }
            }
        }
        out
    }

    /// Rank of the spanning set modulo `p`. A lower bound for the rational
    /// rank; the 36 Koszul syzygies `f(v)*(f(u) m) - f(u)*(f(v) m)` cap the
    /// rational rank at 336 - 36 = 300.
    pub fn spanning_rank_mod_p(&self, p: u64) -> usize {
        let index = |m: &Monomial| -> usize {
            let e = m.exponents();
            let iu = self.degree6.iter().position(|x| x.exponents() == &e[..3]).unwrap();
            let iv = self.degree6.iter().position(|x| x.exponents() == &e[3..]).unwrap();
            iu * self.degree6.len() + iv
        };
        let span = self.spanning_set();
        let mut rows: Vec<Rational> = vec![Rational::zero(); span.len() * self.ambient_dim()];
        for (r, g) in span.iter().enumerate() {
            for (m, c) in g.terms() {
                rows[r * self.ambient_dim() + index(m)] = c.clone();
            }
        }
        let m =
            QMatrix::from_rows(rows.chunks(self.ambient_dim()).map(<[Rational]>::to_vec).collect(), self.ambient_dim());
        m.ncols() - m.nullity_mod_p(p)
    }

    /// Coordinates of the normal form of a bidegree-(6,6) form on the
    /// `standard x standard` monomials; zero iff the form lies in `V`.
    pub fn reduce(&self, w: &QPoly) -> Vec<Rational> {
        let s = self.standard.len();
        let mut out = vec![Rational::zero(); s * s];
        for (m, c) in w.terms() {
            let e = m.exponents();
            let iu = self.degree6.iter().position(|x| x.exponents() == &e[..3]).expect("bidegree (6,6)");
            let iv = self.degree6.iter().position(|x| x.exponents() == &e[3..]).expect("bidegree (6,6)");
            let (nu, nv) = (&self.nf_table[iu], &self.nf_table[iv]);
            for (a, ca) in nu.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let cca = c * ca;
                for (b, cb) in nv.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                    out[a * s + b] += &cca * cb;
                }
            }
        }
        out
    }

    /// The normal form as a polynomial over `u, v`.
    pub fn reduce_to_poly(&self, w: &QPoly) -> QPoly {
        let s = self.standard.len();
        let coords = self.reduce(w);
        let terms = coords.into_iter().enumerate().map(|(k, c)| {
            let e = [self.standard[k / s].exponents(), self.standard[k % s].exponents()].concat();
            (Monomial::from_exponents(&e), c)
        });
        QPoly::from_terms(uv_vars(), Rationals, terms)
    }
}

/// Equation of the image of the theta divisor in `P(1,1,1,2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedSexticRelation {
    pub poly: QPoly,
    /// Coefficient of `y3^3` in the echelon-normalised nullspace vector,
    /// before rescaling it to -1.
    pub raw_vertex_coefficient: Rational,
    pub nullspace_dim: usize,
}

impl WeightedSexticRelation {
    /// Pieces by power of `y3`: entry `k` is the coefficient of `y3^k`
    /// (a form of degree `6 - 2k` in `y0, y1, y2`).
    pub fn graded_pieces(&self) -> Vec<QPoly> {
        let mut parts = self.poly.coefficients_in(3);
        parts.resize(4, QPoly::zero(y_vars(), Rationals));
        parts
    }
}

/// Matrix whose column `j` is the reduced image of the `j`-th weighted
/// monomial.
pub fn relation_matrix(block: &IdealBlock, sections: &SectionBasis) -> QMatrix {
    let basis = enumerate_weighted_monomials();
    let powers = SectionPowers::new(sections);
    let cols: Vec<Vec<Rational>> = basis.monomials().par_iter().map(|m| block.reduce(&powers.image(m))).collect();
    QMatrix::from_rows(cols, block.quotient_dim()).transpose()
}

pub fn solve_weighted_relation(
    curve: &QuarticCurve,
    sections: &SectionBasis,
) -> Result<WeightedSexticRelation, RelationError> {
    let block = IdealBlock::new(curve)?;
    solve_with_block(&block, sections)
}

pub fn solve_with_block(block: &IdealBlock, sections: &SectionBasis) -> Result<WeightedSexticRelation, RelationError> {
    relation_from_matrix(&relation_matrix(block, sections))
}

/// Extracts the unique relation from a matrix built by [`relation_matrix`],
/// normalised so that `y3^3` has coefficient -1.
pub fn relation_from_matrix(m: &QMatrix) -> Result<WeightedSexticRelation, RelationError> {
    let basis = enumerate_weighted_monomials();
    let kernel = m.nullspace();
    match kernel.len() {
        0 => return Err(RelationError::NullspaceDimZero),
        1 => {}
        d => return Err(RelationError::NullspaceDimHigh(d)),
    }
    let v = &kernel[0];
    let vertex = basis.index_of(&Monomial::from_exponents(&[0, 0, 0, 3])).unwrap();
    let raw = v[vertex].clone();
    if raw.is_zero() {
        return Err(RelationError::MissingVertexTerm);
    }
    let scale = -raw.recip();
    let terms = basis.monomials().iter().cloned().zip(v.iter().map(|c| c * &scale));
    Ok(WeightedSexticRelation {
        poly: QPoly::from_terms(y_vars(), Rationals, terms),
        raw_vertex_coefficient: raw,
        nullspace_dim: 1,
    })
}

/// Explicit cofactors `rel(sections) = f(u) * a + f(v) * b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCertificate {
    /// Bidegree (2,6).
    pub a: QPoly,
    /// Bidegree (6,2).
    pub b: QPoly,
}

/// Finds the cofactors by multivariate division and verifies the identity
/// by exact expansion.
pub fn certify_relation(
    rel: &QPoly,
    curve: &QuarticCurve,
    sections: &SectionBasis,
) -> Result<RelationCertificate, RelationError> {
    if rel.vars() != &y_vars() || !rel.is_weighted_homogeneous(&WEIGHTS, 6) {
        return Err(RelationError::NotWeightedSextic);
    }
    if rel.coefficient(&Monomial::from_exponents(&[0, 0, 0, 3])).is_zero() {
        return Err(RelationError::MissingVertexTerm);
    }
    let image = SectionPowers::new(sections).image_of(rel);
    let (fu, fv) = (curve.in_u(), curve.in_v());
    let (q, r) = image.divide(&[fu.clone(), fv.clone()]).unwrap();
    if !r.is_zero() {
        return Err(RelationError::NotInIdeal);
    }
    let (a, b) = (q[0].clone(), q[1].clone());
    let recombined = &(&fu * &a) + &(&fv * &b);
    if recombined != image || !a.has_bidegree(3, 2, 6) || !b.has_bidegree(3, 6, 2) {
        return Err(RelationError::NotInIdeal);
    }
    Ok(RelationCertificate { a, b })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{z_vars, SplitRule};
    use crate::parse::parse_poly;

    fn klein() -> QuarticCurve {
        QuarticCurve::new(parse_poly("z0*z1^3 + z1*z2^3 + z2*z0^3", &z_vars()).unwrap()).unwrap()
    }

    fn klein_sections() -> SectionBasis {
        let g = parse_poly("u0*u1*v1^2 + u1*u2*v2^2 + u2*u0*v0^2", &uv_vars()).unwrap();
        SectionBasis::new(&klein(), SplitRule::Explicit(g)).unwrap()
    }

    #[test]
    fn weighted_basis_counts() {
        let b = enumerate_weighted_monomials();
        assert_eq!(b.len(), 50);
        assert_eq!((0..4).map(|k| b.count_with_y3_power(k)).collect::<Vec<_>>(), vec![28, 15, 6, 1]);
        assert!(b.monomials().iter().all(|m| m.weighted_degree(&WEIGHTS) == 6));
    }

    #[test]
    fn substitution_bidegrees() {
        let s = klein_sections();
        let powers = SectionPowers::new(&s);
        for m in enumerate_weighted_monomials().monomials() {
            assert!(powers.image(m).has_bidegree(3, 6, 6), "{m:?}");
        }
        assert_eq!(substitute_sections(&Monomial::from_exponents(&[0, 0, 0, 3]), &s), s.g_tilde.pow(3));
        assert_eq!(substitute_sections(&Monomial::from_exponents(&[6, 0, 0, 0]), &s), s.p01.pow(6));
    }

    #[test]
    fn ideal_block_dimensions() {
        let block = IdealBlock::new(&klein()).unwrap();
        assert_eq!((block.ambient_dim(), block.dim(), block.quotient_dim()), (784, 300, 484));
        // every spanning product reduces to zero
        for g in block.spanning_set().iter().step_by(17) {
            assert!(block.reduce(g).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn tensor_reduction_agrees_with_division() {
        let block = IdealBlock::new(&klein()).unwrap();
        let s = klein_sections();
        let w = &s.g_tilde.pow(3) + &(&s.p01.pow(5) * &s.p12);
        let (_, r) = w.divide(&[klein().in_u(), klein().in_v()]).unwrap();
        assert_eq!(block.reduce_to_poly(&w), r);
    }

    #[test]
    fn pure_cube_is_not_a_relation() {
        let rel = parse_poly("y3^3", &y_vars()).unwrap();
        assert_eq!(certify_relation(&rel, &klein(), &klein_sections()), Err(RelationError::NotInIdeal));
        let zero = QPoly::zero(y_vars(), Rationals);
        assert_eq!(certify_relation(&zero, &klein(), &klein_sections()), Err(RelationError::MissingVertexTerm));
    }

    #[test]
    fn klein_relation_matches_reference() {
        let r = solve_weighted_relation(&klein(), &klein_sections()).unwrap();
        assert_eq!(
            r.poly.to_string(),
            "y0^5*y2 - 5*y0^2*y1^2*y2^2 - y0*y1^5 - y1*y2^5 - y0^3*y1*y3 + y0*y2^3*y3 - y1^3*y2*y3 - y3^3"
        );
        assert_eq!(r.nullspace_dim, 1);
        let cert = certify_relation(&r.poly, &klein(), &klein_sections()).unwrap();
        let image = SectionPowers::new(&klein_sections()).image_of(&r.poly);
        assert_eq!(&(&klein().in_u() * &cert.a) + &(&klein().in_v() * &cert.b), image);
        // a different splitting of the same curve gives the same equation here
        let greedy = SectionBasis::new(&klein(), SplitRule::Greedy).unwrap();
        assert_eq!(solve_weighted_relation(&klein(), &greedy).unwrap().poly, r.poly);
    }
}
