//! Sampling check that the branch discriminant vanishes on the dual curve.
//!
//! The tangent line at a point `z` of `C = {f = 0}` has line coordinates
//! `l = grad f(z)`. The Gauss sections `(p01, p02, p12)` send it to
//! `(l2, -l1, l0)`; a point transform `y = M x` on the surface then gives
//! plane coordinates `x = M^{-1} y`. The combined map is supplied as a 3x3
//! rational matrix.

use num_traits::Zero;

use super::{FqContext, VerifyError};
use crate::algebra::{rat, Domain, Fq, FqField, QPoly, Rational};
use crate::curve::QuarticCurve;
use crate::surface::PointTransform;

pub type PlaneMap = [[Rational; 3]; 3];

/// Line coordinates to Gauss-section coordinates: `(l0, l1, l2) -> (l2, -l1, l0)`.
pub fn gauss_line_map() -> PlaneMap {
    let z = Rational::zero;
    [[z(), z(), rat(1)], [z(), rat(-1), z()], [rat(1), z(), z()]]
}

/// The map from line coordinates to the plane coordinates of a surface
/// obtained with point transform `m`; `None` when `m` mixes `x3` with the
/// plane coordinates.
pub fn dual_plane_map(m: &PointTransform) -> Option<PlaneMap> {
    let r = m.rows();
    if (0..3).any(|i| !r[i][3].is_zero() || !r[3][i].is_zero()) {
        return None;
    }
    let block: PlaneMap = std::array::from_fn(|i| std::array::from_fn(|j| r[i][j].clone()));
    let inv = invert3(&block)?;
    let l = gauss_line_map();
    Some(std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..3).fold(Rational::zero(), |acc, k| acc + &inv[i][k] * &l[k][j]))
    }))
}

fn invert3(a: &PlaneMap) -> Option<PlaneMap> {
    let cof = |i: usize, j: usize| {
        let (r0, r1) = ((i + 1) % 3, (i + 2) % 3);
        let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
        &a[r0][c0] * &a[r1][c1] - &a[r0][c1] * &a[r1][c0]
    };
    let det = (0..3).fold(Rational::zero(), |acc, j| acc + &a[0][j] * cof(0, j));
    if det.is_zero() {
        return None;
    }
    Some(std::array::from_fn(|i| std::array::from_fn(|j| cof(j, i) / &det)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCheckReport {
    /// Points of `C(F_q)` found.
    pub curve_points: usize,
    /// Points at which the discriminant was evaluated.
    pub sampled: usize,
    /// Sampled points where the discriminant vanished.
    pub vanishing: usize,
    /// Points where the gradient of `f` vanished mod `p` and were skipped.
    pub skipped: usize,
}

impl DualCheckReport {
    pub fn passed(&self) -> bool {
        self.sampled > 0 && self.vanishing == self.sampled
    }
}

/// Evaluates `disc(map * grad f(z))` at up to `max_samples` points `z` of
/// `C(F_q)`, in enumeration order.
pub fn dual_curve_samples_check(
    curve: &QuarticCurve,
    disc: &QPoly,
    map: &PlaneMap,
    ctx: &FqContext,
    max_samples: usize,
) -> Result<DualCheckReport, VerifyError> {
    let field = ctx.field;
    let p = field.characteristic();
    let reduce = |q: &QPoly| q.map_domain(field, |c| field.from_rational(c)).ok_or(VerifyError::BadReductionPrime(p));
    let f = reduce(curve.f())?;
    let disc_q = reduce(disc)?;
    if disc_q.is_zero() {
        return Err(VerifyError::DiscIdenticallyZeroModP(p));
    }
    let map_q: Vec<Vec<Fq>> = map
        .iter()
        .map(|row| row.iter().map(|c| field.from_rational(c).ok_or(VerifyError::BadReductionPrime(p))).collect())
        .collect::<Result<_, _>>()?;
    let grad = f.gradient();

    let mut report = DualCheckReport { curve_points: 0, sampled: 0, vanishing: 0, skipped: 0 };
    for z in plane_points(&field) {
        if !field.is_zero(&f.evaluate(&z)?) {
            continue;
        }
        report.curve_points += 1;
        if report.sampled + report.skipped >= max_samples {
            continue;
        }
        let line: Vec<Fq> = grad.iter().map(|d| d.evaluate(&z)).collect::<Result<_, _>>()?;
        if line.iter().all(|c| field.is_zero(c)) {
            report.skipped += 1;
            continue;
        }
        let x: Vec<Fq> = map_q
            .iter()
            .map(|row| row.iter().zip(&line).fold(field.zero(), |acc, (a, b)| field.add(&acc, &field.mul(a, b))))
            .collect();
        report.sampled += 1;
        if field.is_zero(&disc_q.evaluate(&x)?) {
            report.vanishing += 1;
        }
    }
    if report.curve_points == 0 {
        return Err(VerifyError::NoCurvePoints);
    }
    Ok(report)
}

/// Points of `P^2(F_q)` with first nonzero coordinate one.
fn plane_points(field: &FqField) -> impl Iterator<Item = Vec<Fq>> + '_ {
    let q = field.order();
    let (zero, one) = (field.zero(), field.one());
    let chart0 = (0..q * q).map(move |i| vec![one, field.element(i / q), field.element(i % q)]);
    let chart1 = (0..q).map(move |i| vec![zero, one, field.element(i)]);
    chart0.chain(chart1).chain(std::iter::once(vec![zero, zero, one]))
}
