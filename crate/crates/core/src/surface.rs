//! Sextic surfaces in `P^3` obtained by pulling the weighted relation back
//! along `(x0:x1:x2:x3) -> (x0:x1:x2:x3^2)`.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::resultant::sylvester_resultant;
use crate::algebra::{rat, Monomial, QMatrix, QPoly, Rational, Rationals, VarSet};
use crate::relation::WeightedSexticRelation;

pub fn x_vars() -> VarSet {
    VarSet::indexed("x", 4)
}

/// `x0, x1, x2`: the plane the even parts and the discriminant live in.
pub fn plane_vars() -> VarSet {
    VarSet::indexed("x", 3)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("transform matrix is singular")]
    SingularMatrix,
    #[error("transform must be 4x4")]
    BadShape,
    #[error("odd powers of x3 present: {}", .0.join(", "))]
    OddPowerPresent(Vec<String>),
    #[error("coefficient of x3^6 is zero")]
    ZeroLeadingCoefficient,
    #[error("surface is not a homogeneous sextic in x0..x3")]
    NotSextic,
}

/// A 4x4 rational matrix acting by substitution `x -> M x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointTransform(Vec<Vec<Rational>>);

impl PointTransform {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self, SurfaceError> {
        if rows.len() != 4 || rows.iter().any(|r| r.len() != 4) {
            return Err(SurfaceError::BadShape);
        }
        if !QMatrix::from_rows(rows.clone(), 4).nullspace_by_fractions().is_empty() {
            return Err(SurfaceError::SingularMatrix);
        }
        Ok(PointTransform(rows))
    }

    pub fn diagonal(entries: [i64; 4]) -> Result<Self, SurfaceError> {
        Self::new(
            (0..4).map(|i| (0..4).map(|j| if i == j { rat(entries[i]) } else { Rational::zero() }).collect()).collect(),
        )
    }

    pub fn identity() -> Self {
        Self::diagonal([1, 1, 1, 1]).unwrap()
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.0
    }

    pub fn compose(&self, other: &PointTransform) -> PointTransform {
        let prod = (0..4)
            .map(|i| {
                (0..4).map(|j| (0..4).fold(Rational::zero(), |acc, k| acc + &self.0[i][k] * &other.0[k][j])).collect()
            })
            .collect();
        PointTransform(prod)
    }

    /// Row-major entries as canonical rational text.
    pub fn entries_text(&self) -> Vec<String> {
        self.0.iter().flatten().map(|c| c.to_string()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SexticSurface {
    pub poly: QPoly,
    /// Human-readable record of how the surface was produced.
    pub provenance: Vec<String>,
}

impl SexticSurface {
    pub fn new(poly: QPoly) -> Result<Self, SurfaceError> {
        if poly.vars() != &x_vars() || !poly.is_homogeneous() || poly.total_degree() != Some(6) {
            return Err(SurfaceError::NotSextic);
        }
        Ok(SexticSurface { poly, provenance: vec!["input".into()] })
    }

    /// True when the equation is unchanged by `x3 -> -x3`.
    pub fn is_x3_even(&self) -> bool {
        self.poly.terms().all(|(m, _)| m.exponent(3) % 2 == 0)
    }
}

/// Substitutes `y_i = x_i` (`i <= 2`) and `y3 = x3^2`.
pub fn pullback_to_p3(rel: &WeightedSexticRelation) -> SexticSurface {
    let terms = rel.poly.terms().map(|(m, c)| {
        let e = m.exponents();
        (Monomial::from_exponents(&[e[0], e[1], e[2], 2 * e[3]]), c.clone())
    });
    SexticSurface { poly: QPoly::from_terms(x_vars(), Rationals, terms), provenance: vec!["pullback y3 = x3^2".into()] }
}

/// The surface `s(M x)`.
pub fn apply_point_transform(s: &SexticSurface, m: &PointTransform) -> SexticSurface {
    let poly = s.poly.linear_transform(m.rows()).expect("4x4 transform on a surface in x0..x3");
    let mut provenance = s.provenance.clone();
    provenance.push(format!("transform [{}]", m.entries_text().join(",")));
    SexticSurface { poly, provenance }
}

/// `surface = p6 + p4 x3^2 + p2 x3^4 + c x3^6`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenDecomposition {
    pub p6: QPoly,
    pub p4: QPoly,
    pub p2: QPoly,
    pub c: Rational,
}

impl EvenDecomposition {
    /// Reassembles the sextic over `x0..x3`.
    pub fn recombine(&self) -> QPoly {
        let lift = |p: &QPoly, k: u32| {
            let terms = p.terms().map(|(m, c)| {
                let e = m.exponents();
                (Monomial::from_exponents(&[e[0], e[1], e[2], k]), c.clone())
            });
            QPoly::from_terms(x_vars(), Rationals, terms)
        };
        let top = QPoly::from_terms(x_vars(), Rationals, [(Monomial::variable(4, 3, 6), self.c.clone())]);
        &(&(&lift(&self.p6, 0) + &lift(&self.p4, 2)) + &lift(&self.p2, 4)) + &top
    }
}

pub fn decompose_even(s: &SexticSurface) -> Result<EvenDecomposition, SurfaceError> {
    let odd: Vec<String> = s
        .poly
        .terms()
        .rev()
        .filter(|(m, _)| m.exponent(3) % 2 == 1)
        .map(|(m, c)| QPoly::from_terms(x_vars(), Rationals, [(m.clone(), c.clone())]).to_string())
        .collect();
    if !odd.is_empty() {
        return Err(SurfaceError::OddPowerPresent(odd));
    }
    let mut parts: [Vec<(Monomial, Rational)>; 4] = Default::default();
    for (m, c) in s.poly.terms() {
        let e = m.exponents();
        parts[(e[3] / 2) as usize].push((Monomial::from_exponents(&e[..3]), c.clone()));
    }
    let [p6, p4, p2, top] = parts.map(|ts| QPoly::from_terms(plane_vars(), Rationals, ts));
    let c = top.coefficient(&Monomial::one(3));
    if c.is_zero() {
        return Err(SurfaceError::ZeroLeadingCoefficient);
    }
    Ok(EvenDecomposition { p6, p4, p2, c })
}

/// Discriminant in `T` of `c T^3 + p2 T^2 + p4 T + p6`, normalised as
/// `(-1)^(n(n-1)/2) Res_T(P, P') / c` with `n = 3`, so that
/// `disc(a T^3 + b T^2 + c T + d) = b^2 c^2 - 4ac^3 - 4b^3 d - 27a^2 d^2 + 18abcd`.
pub fn cubic_discriminant(d: &EvenDecomposition) -> Result<QPoly, SurfaceError> {
    if d.c.is_zero() {
        return Err(SurfaceError::ZeroLeadingCoefficient);
    }
    // work over x0, x1, x2, T
    let vars = VarSet::new(["x0", "x1", "x2", "T"]);
    let lift = |p: &QPoly, k: u32| {
        let terms = p.terms().map(|(m, c)| {
            let e = m.exponents();
            (Monomial::from_exponents(&[e[0], e[1], e[2], k]), c.clone())
        });
        QPoly::from_terms(vars.clone(), Rationals, terms)
    };
    let t3 = QPoly::from_terms(vars.clone(), Rationals, [(Monomial::variable(4, 3, 3), d.c.clone())]);
    let cubic = &(&(&t3 + &lift(&d.p2, 2)) + &lift(&d.p4, 1)) + &lift(&d.p6, 0);
    let derivative = cubic.partial_derivative(3).unwrap();
    let res = sylvester_resultant(&cubic, &derivative, 3).expect("cubic has degree 3 in T");
    let disc = res.scale(&(-d.c.recip()));
    let terms = disc.terms().map(|(m, c)| (Monomial::from_exponents(&m.exponents()[..3]), c.clone()));
    Ok(QPoly::from_terms(plane_vars(), Rationals, terms))
}

/// Discriminant scaled to integer coefficients with positive leading term,
/// for display.
pub fn primitive_part(p: &QPoly) -> QPoly {
    use num_integer::Integer;
    if p.is_zero() {
        return p.clone();
    }
    let den = p.terms().fold(num_bigint::BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let num = p.terms().fold(num_bigint::BigInt::zero(), |acc, (_, c)| acc.gcd(&(c.numer() * (&den / c.denom()))));
    let mut s = Rational::new(den, num);
    if p.leading_term().unwrap().1 < &Rational::zero() {
        s = -s;
    }
    p.scale(&s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::relation::y_vars;

    fn x(text: &str) -> QPoly {
        parse_poly(text, &x_vars()).unwrap()
    }

    fn klein_relation() -> WeightedSexticRelation {
        let poly = parse_poly(
            "y0^5*y2 - y0*y1^5 - y1*y2^5 - 5*y0^2*y1^2*y2^2 + (-y0^3*y1 + y0*y2^3 - y1^3*y2)*y3 - y3^3",
            &y_vars(),
        )
        .unwrap();
        WeightedSexticRelation { poly, raw_vertex_coefficient: rat(1), nullspace_dim: 1 }
    }

    fn klein_q() -> QPoly {
        x("x0^5*x2 + x0*x1^5 + x1*x2^5 - 5*x0^2*x1^2*x2^2 + (x0^3*x1 + x0*x2^3 + x1^3*x2)*x3^2 - x3^6")
    }

    #[test]
    fn pullback_of_single_monomials() {
        let mk = |t: &str| WeightedSexticRelation {
            poly: parse_poly(t, &y_vars()).unwrap(),
            raw_vertex_coefficient: rat(1),
            nullspace_dim: 1,
        };
        assert_eq!(pullback_to_p3(&mk("y3^3")).poly, x("x3^6"));
        assert_eq!(pullback_to_p3(&mk("y0^6")).poly, x("x0^6"));
    }

    #[test]
    fn klein_pullback_and_sign_change() {
        let s = pullback_to_p3(&klein_relation());
        assert_eq!(
            s.poly,
            x("x0^5*x2 - x0*x1^5 - x1*x2^5 - 5*x0^2*x1^2*x2^2 + (-x0^3*x1 + x0*x2^3 - x1^3*x2)*x3^2 - x3^6")
        );
        let q = apply_point_transform(&s, &PointTransform::diagonal([1, -1, 1, 1]).unwrap());
        assert_eq!(q.poly, klein_q());
        assert_eq!(apply_point_transform(&s, &PointTransform::identity()).poly, s.poly);
        assert_eq!(apply_point_transform(&s, &PointTransform::diagonal([1, 1, 1, -1]).unwrap()).poly, s.poly);
    }

    #[test]
    fn singular_transform_rejected() {
        assert_eq!(PointTransform::diagonal([1, 0, 1, 1]), Err(SurfaceError::SingularMatrix));
        assert_eq!(PointTransform::new(vec![vec![rat(1)]]), Err(SurfaceError::BadShape));
    }

    #[test]
    fn even_decomposition_of_q() {
        let q = SexticSurface::new(klein_q()).unwrap();
        let d = decompose_even(&q).unwrap();
        let p = |t: &str| parse_poly(t, &plane_vars()).unwrap();
        assert_eq!(d.p6, p("x0^5*x2 + x0*x1^5 + x1*x2^5 - 5*x0^2*x1^2*x2^2"));
        assert_eq!(d.p4, p("x0^3*x1 + x0*x2^3 + x1^3*x2"));
        assert!(d.p2.is_zero());
        assert_eq!(d.c, rat(-1));
        assert_eq!(d.recombine(), klein_q());
    }

    #[test]
    fn odd_and_trivial_decompositions() {
        let odd = SexticSurface { poly: x("x3*x0^5"), provenance: vec![] };
        assert_eq!(decompose_even(&odd), Err(SurfaceError::OddPowerPresent(vec!["x0^5*x3".into()])));
        let top = decompose_even(&SexticSurface { poly: x("x3^6"), provenance: vec![] }).unwrap();
        assert!(top.p6.is_zero() && top.p4.is_zero() && top.p2.is_zero());
        assert_eq!(top.c, rat(1));
    }

    #[test]
    fn klein_discriminant() {
        let d = decompose_even(&SexticSurface::new(klein_q()).unwrap()).unwrap();
        let disc = cubic_discriminant(&d).unwrap();
        let expected = &d.p4.pow(3).scale(&rat(4)) - &d.p6.pow(2).scale(&rat(27));
        assert_eq!(disc, expected);
        assert_eq!(disc.total_degree(), Some(12));
        assert!(disc.is_homogeneous());
    }

    #[test]
    fn degenerate_cubic_discriminant() {
        // c T^3 + p6: disc = -27 c^2 p6^2
        let p6 = parse_poly("x0^6 + x1*x2^5", &plane_vars()).unwrap();
        let zero = QPoly::zero(plane_vars(), Rationals);
        let d = EvenDecomposition { p6: p6.clone(), p4: zero.clone(), p2: zero, c: rat(3) };
        assert_eq!(cubic_discriminant(&d).unwrap(), p6.pow(2).scale(&rat(-27 * 9)));
    }

    #[test]
    fn general_cubic_discriminant_formula() {
        let p = |t: &str| parse_poly(t, &plane_vars()).unwrap();
        let (a, b, c, dd) = (rat(2), p("x0^2 - x1*x2"), p("x0^4 + 3*x1^3*x2"), p("x2^6 - x0*x1^5"));
        let d = EvenDecomposition { p6: dd.clone(), p4: c.clone(), p2: b.clone(), c: a.clone() };
        let one = QPoly::one(plane_vars(), Rationals);
        let ap = one.scale(&a);
        let classical = &(&(&(&(&b.pow(2) * &c.pow(2)) - &(&ap * &c.pow(3)).scale(&rat(4)))
            - &(&b.pow(3) * &dd).scale(&rat(4)))
            - &(&ap.pow(2) * &dd.pow(2)).scale(&rat(27)))
            + &(&(&(&ap * &b) * &c) * &dd).scale(&rat(18));
        assert_eq!(cubic_discriminant(&d).unwrap(), classical);
    }
}
