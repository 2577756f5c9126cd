//! Finite-field verification of a sextic surface: singular-point census,
//! node classification, symmetry group and dual-curve sampling.
//!
//! Cyclotomic constants (a primitive 7th root of unity and `sqrt(-7)`) are
//! realised inside `F_{p^k}` with `p^k ≡ 1 (mod 7)`.

pub mod bitangent;
pub mod census;
pub mod dual;
pub mod even;
pub mod group;

pub use bitangent::count_rational_bitangents;
pub use census::{hessian_rank, scan_singularities, NodeReport, ProjectivePoint};
pub use dual::{dual_curve_samples_check, DualCheckReport};
pub use even::{even_node_census, EvenNode, EvenNodeReport};
pub use group::{build_g336, invariance_scalar, orbit_and_stabilizer, GroupElement, MatrixGroup};

use thiserror::Error;

use crate::algebra::{AlgebraError, Domain, Fq, FqField, SparsePolynomial};
use crate::surface::SexticSurface;

pub type FqPoly = SparsePolynomial<FqField>;

/// Default census budget in projective points.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error(transparent)]
    Field(#[from] AlgebraError),
    #[error("a coefficient denominator vanishes modulo {0}")]
    BadReductionPrime(u64),
    #[error("field too large: {points} points exceed the budget of {budget}")]
    FieldTooLarge { points: u64, budget: u64 },
    #[error("point is not a singular point of the surface")]
    PointNotSingular,
    #[error("GF({0}) has no primitive 7th root of unity")]
    NoSeventhRoot(String),
    #[error("group closure exceeded {0} elements")]
    ClosureBudgetExceeded(usize),
    #[error("group closure has order {got}, expected {expected}")]
    OrderMismatch { got: usize, expected: usize },
    #[error("covering involution diag(1,1,1,-1) is {0}")]
    InvolutionCheck(&'static str),
    #[error("surface is not invariant: monomials {0} and {1} scale differently")]
    NotInvariant(String, String),
    #[error("curve has no points over the field")]
    NoCurvePoints,
    #[error("discriminant vanishes identically modulo {0}")]
    DiscIdenticallyZeroModP(u64),
    #[error("surface contains odd powers of x3")]
    NotX3Even,
}

/// A verification field `F_{p^k}` with its distinguished 7th root of unity
/// and `sqrt(-7)` when they exist.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqContext {
    pub field: FqField,
    pub zeta7: Option<Fq>,
    pub sqrt_minus7: Option<Fq>,
}

impl FqContext {
    pub fn new(p: u64, k: u32) -> Result<Self, VerifyError> {
        let field = FqField::new(p, k)?;
        let zeta7 = field.element_of_order(7);
        let sqrt_minus7 = zeta7.map(|z| gauss_sum(&field, &z));
        Ok(FqContext { field, zeta7, sqrt_minus7 })
    }

    pub fn describe(&self) -> String {
        self.field.describe()
    }
}

/// `sum_{k=1}^{6} chi(k) zeta^k` with `chi` the quadratic character mod 7.
pub fn gauss_sum(field: &FqField, zeta: &Fq) -> Fq {
    const CHI: [i64; 7] = [0, 1, 1, -1, 1, -1, -1];
    (1..7u64).fold(field.zero(), |acc, k| {
        let term = field.pow(zeta, k);
        if CHI[k as usize] > 0 {
            field.add(&acc, &term)
        } else {
            field.sub(&acc, &term)
        }
    })
}

/// The square root of -7 derived from the context's 7th root of unity.
pub fn gauss_sum_sqrt(ctx: &FqContext) -> Result<Fq, VerifyError> {
    ctx.sqrt_minus7.ok_or_else(|| VerifyError::NoSeventhRoot(ctx.describe()))
}

/// Coefficient-wise reduction of a rational surface.
pub fn reduce_mod_q(s: &SexticSurface, ctx: &FqContext) -> Result<FqPoly, VerifyError> {
    let field = ctx.field;
    s.poly.map_domain(field, |c| field.from_rational(c)).ok_or(VerifyError::BadReductionPrime(field.characteristic()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat_frac;
    use crate::parse::parse_poly;
    use crate::surface::x_vars;

    fn q_surface() -> SexticSurface {
        SexticSurface::new(
            parse_poly(
                "x0^5*x2 + x0*x1^5 + x1*x2^5 - 5*x0^2*x1^2*x2^2 + (x0^3*x1 + x0*x2^3 + x1^3*x2)*x3^2 - x3^6",
                &x_vars(),
            )
            .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn gauss_sum_squares_to_minus_seven() {
        for (p, k) in [(29, 1), (13, 2), (43, 1)] {
            let ctx = FqContext::new(p, k).unwrap();
            let f = ctx.field;
            let s = gauss_sum_sqrt(&ctx).unwrap();
            assert_eq!(f.mul(&s, &s), f.from_i64(-7));
            let z = ctx.zeta7.unwrap();
            assert!(f.is_one(&f.pow(&z, 7)) && !f.is_one(&z));
            // twisting zeta by a square keeps s^2 = -7
            let s2 = gauss_sum(&f, &f.mul(&z, &z));
            assert_eq!(f.mul(&s2, &s2), f.from_i64(-7));
        }
        let ctx = FqContext::new(29, 1).unwrap();
        let s = gauss_sum_sqrt(&ctx).unwrap();
        assert_eq!(s.c0 * s.c0 % 29, 22);
        assert!(matches!(gauss_sum_sqrt(&FqContext::new(13, 1).unwrap()), Err(VerifyError::NoSeventhRoot(_))));
    }

    #[test]
    fn reduction_keeps_or_drops_support() {
        let q = q_surface();
        let r13 = reduce_mod_q(&q, &FqContext::new(13, 1).unwrap()).unwrap();
        assert_eq!(r13.len(), q.poly.len());
        let r5 = reduce_mod_q(&q, &FqContext::new(5, 1).unwrap()).unwrap();
        assert_eq!(r5.len(), q.poly.len() - 1);
        let bad = SexticSurface { poly: q.poly.scale(&rat_frac(1, 13)), provenance: vec![] };
        assert_eq!(reduce_mod_q(&bad, &FqContext::new(13, 1).unwrap()), Err(VerifyError::BadReductionPrime(13)));
    }
}
