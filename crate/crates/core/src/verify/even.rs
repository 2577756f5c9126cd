//! Singular points of an `x3`-even sextic lying over `F_q`-rational plane
//! points, counted over the algebraic closure.
//!
//! Writing the surface as `G(x0, x1, x2, T)` with `T = x3^2`, a singular
//! point with `x3 != 0` satisfies `G = G_T = G_xi = 0` at a rational pair
//! `(x, T)`, and the two points `x3 = ±sqrt(T)` are rational exactly when
//! `T` is a square. Points with `x3 = 0` only need `G = G_xi = 0` at `T = 0`.

use std::collections::BTreeMap;

use super::census::{rank_over, ProjectivePoint};
use super::{FqPoly, VerifyError};
use crate::algebra::{Domain, Fq, FqField, Monomial, SparsePolynomial, VarSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenNode {
    /// Plane point `(x0 : x1 : x2)`.
    pub plane: ProjectivePoint,
    /// `x3^2` in the chart of `plane`.
    pub t: Fq,
    pub rank: usize,
}

impl EvenNode {
    /// Points of the surface over the algebraic closure represented here.
    pub fn multiplicity(&self) -> usize {
        if self.t.c0 == 0 && self.t.c1 == 0 {
            1
        } else {
            2
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenNodeReport {
    pub field: FqField,
    pub nodes: Vec<EvenNode>,
    /// Whether `(0:0:0:1)` is singular.
    pub apex_singular: bool,
}

impl EvenNodeReport {
    /// Singular points over the closure with a rational plane image.
    pub fn geometric_count(&self) -> usize {
        self.nodes.iter().map(EvenNode::multiplicity).sum::<usize>() + usize::from(self.apex_singular)
    }

    /// The subset of those points defined over `F_q`.
    pub fn rational_count(&self) -> usize {
        let field = &self.field;
        let rational: usize = self
            .nodes
            .iter()
            .filter(|n| n.multiplicity() == 1 || is_square(field, &n.t))
            .map(EvenNode::multiplicity)
            .sum();
        rational + usize::from(self.apex_singular)
    }

    /// Hessian rank -> number of points over the closure (apex excluded).
    pub fn rank_histogram(&self) -> BTreeMap<usize, usize> {
        let mut hist = BTreeMap::new();
        for n in &self.nodes {
            *hist.entry(n.rank).or_insert(0) += n.multiplicity();
        }
        hist
    }

    pub fn all_ordinary(&self) -> bool {
        !self.apex_singular && self.nodes.iter().all(|n| n.rank == 3)
    }
}

pub fn is_square(field: &FqField, a: &Fq) -> bool {
    field.is_zero(a) || field.pow(a, (field.order() - 1) / 2) == field.one()
}

/// `F(x0, x1, x2, x3) -> G(x0, x1, x2, T)`; `None` if an odd power of `x3` occurs.
fn halve_x3(surface: &FqPoly) -> Option<FqPoly> {
    let field = *surface.domain();
    let mut terms = Vec::new();
    for (m, c) in surface.terms() {
        let e = m.exponents();
        if e[3] % 2 == 1 {
            return None;
        }
        terms.push((Monomial::from_exponents(&[e[0], e[1], e[2], e[3] / 2]), *c));
    }
    Some(SparsePolynomial::from_terms(VarSet::new(["x0", "x1", "x2", "t"]), field, terms))
}

/// A polynomial in `x0, x1, x2, T` split by powers of `T`.
struct InT(Vec<FqPoly>);

impl InT {
    fn new(p: &FqPoly) -> Self {
        InT(p.coefficients_in(3))
    }

    /// Coefficients of the univariate polynomial in `T` at the plane point.
    fn at(&self, x: &[Fq; 4]) -> Result<Vec<Fq>, VerifyError> {
        self.0.iter().map(|c| c.evaluate(x).map_err(Into::into)).collect()
    }
}

fn horner(field: &FqField, coeffs: &[Fq], t: &Fq) -> Fq {
    coeffs.iter().rev().fold(field.zero(), |acc, c| field.add(&field.mul(&acc, t), c))
}

/// Enumerates `P^2(F_q) x F_q` for singular pairs `(x, T)`.
pub fn even_node_census(surface: &FqPoly) -> Result<EvenNodeReport, VerifyError> {
    let field = *surface.domain();
    let g = halve_x3(surface).ok_or(VerifyError::NotX3Even)?;
    let d = |p: &FqPoly, i: usize| p.partial_derivative(i);
    let g_t = d(&g, 3)?;
    let grad: Vec<FqPoly> = (0..3).map(|i| d(&g, i)).collect::<Result<_, _>>()?;
    let hess: Vec<Vec<FqPoly>> = (0..4)
        .map(|i| (0..4).map(|j| d(if i == 3 { &g_t } else { &grad[i] }, j)).collect())
        .collect::<Result<_, _>>()?;

    let g_in = InT::new(&g);
    let gt_in = InT::new(&g_t);
    let grad_in: Vec<InT> = grad.iter().map(InT::new).collect();

    let mut nodes = Vec::new();
    let q = field.order();
    let (zero, one) = (field.zero(), field.one());
    let chart0 = (0..q * q).map(|i| [one, field.element(i / q), field.element(i % q)]);
    let chart1 = (0..q).map(|i| [zero, one, field.element(i)]);
    for y in chart0.chain(chart1).chain(std::iter::once([zero, zero, one])) {
        let at = [y[0], y[1], y[2], zero];
        let gy = g_in.at(&at)?;
        if gy.iter().all(|c| field.is_zero(c)) {
            // the whole line over y lies on the surface
            let gty = gt_in.at(&at)?;
            let grads: Vec<Vec<Fq>> = grad_in.iter().map(|p| p.at(&at)).collect::<Result<_, _>>()?;
            for t in field.elements() {
                if grads.iter().all(|c| field.is_zero(&horner(&field, c, &t)))
                    && (field.is_zero(&t) || field.is_zero(&horner(&field, &gty, &t)))
                {
                    nodes.push((y, t));
                }
            }
            continue;
        }
        let gty = gt_in.at(&at)?;
        let mut grads: Option<Vec<Vec<Fq>>> = None;
        for t in field.elements() {
            if !field.is_zero(&horner(&field, &gy, &t)) {
                continue;
            }
            if !field.is_zero(&t) && !field.is_zero(&horner(&field, &gty, &t)) {
                continue;
            }
            let grads = match &mut grads {
                Some(v) => v,
                None => grads.insert(grad_in.iter().map(|p| p.at(&at)).collect::<Result<_, _>>()?),
            };
            if grads.iter().all(|c| field.is_zero(&horner(&field, c, &t))) {
                nodes.push((y, t));
            }
        }
    }

    let four = field.from_i64(4);
    let two = field.from_i64(2);
    let nodes = nodes
        .into_iter()
        .map(|(y, t)| {
            let pt = [y[0], y[1], y[2], t];
            let h = |i: usize, j: usize| hess[i][j].evaluate(&pt);
            // rows and columns of x3 divided by x3 when T != 0
            let mut m = vec![vec![zero; 4]; 4];
            for i in 0..3 {
                for j in 0..3 {
                    m[i][j] = h(i, j)?;
                }
            }
            if field.is_zero(&t) {
                m[3][3] = field.mul(&two, &g_t.evaluate(&pt)?);
            } else {
                for i in 0..3 {
                    let v = field.mul(&two, &h(i, 3)?);
                    m[i][3] = v;
                    m[3][i] = v;
                }
                m[3][3] = field.mul(&four, &h(3, 3)?);
            }
            let plane = ProjectivePoint(y.to_vec());
            let chart = plane.chart();
            let keep: Vec<usize> = (0..4).filter(|&i| i != chart).collect();
            let rows = keep.iter().map(|&i| keep.iter().map(|&j| m[i][j]).collect()).collect();
            Ok(EvenNode { plane, t, rank: rank_over(&field, rows) })
        })
        .collect::<Result<Vec<_>, VerifyError>>()?;

    let apex = [zero, zero, zero, one];
    let mut apex_singular = true;
    for i in 0..4 {
        if !field.is_zero(&surface.partial_derivative(i)?.evaluate(&apex)?) {
            apex_singular = false;
        }
    }
    Ok(EvenNodeReport { field, nodes, apex_singular })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::surface::x_vars;
    use crate::verify::NodeReport;

    fn over(field: FqField, text: &str) -> FqPoly {
        parse_poly(text, &x_vars()).unwrap().map_domain(field, |c| field.from_rational(c)).unwrap()
    }

    const KLEIN_Q: &str = "x0^5*x2 + x0*x1^5 + x1*x2^5 - 5*x0^2*x1^2*x2^2 + (x0^3*x1 + x0*x2^3 + x1^3*x2)*x3^2 - x3^6";

    #[test]
    fn rational_part_matches_the_census() {
        for (p, k) in [(29, 1), (13, 2)] {
            let field = FqField::new(p, k).unwrap();
            let s = over(field, KLEIN_Q);
            let even = even_node_census(&s).unwrap();
            let census = NodeReport::compute(&s, u64::MAX).unwrap();
            assert_eq!(even.geometric_count(), 56);
            assert_eq!(even.rational_count(), census.singular_count());
            assert!(even.all_ordinary());
        }
    }

    #[test]
    fn nonsquare_t_gives_irrational_nodes() {
        // x3^2 -> n x3^2 with n a non-residue moves every node off F_29
        let field = FqField::prime(29).unwrap();
        let twisted = KLEIN_Q.replace("x3^2", "2*x3^2").replace("x3^6", "8*x3^6");
        assert!(!is_square(&field, &field.from_i64(2)));
        let s = over(field, &twisted);
        let even = even_node_census(&s).unwrap();
        assert_eq!(even.geometric_count(), 56);
        assert_eq!(even.rational_count(), 0);
        assert_eq!(NodeReport::compute(&s, u64::MAX).unwrap().singular_count(), 0);
    }

    #[test]
    fn nodes_on_the_plane_section_and_apex() {
        let field = FqField::prime(7).unwrap();
        // cone over a nodal plane sextic: singular along a line through the apex
        let s = over(field, "x0^6 - x3^6");
        assert!(!even_node_census(&s).unwrap().apex_singular);
        let s = over(field, "x0^4*x3^2 + x1^6 + x2^6");
        let even = even_node_census(&s).unwrap();
        assert!(even.apex_singular);
        let census = NodeReport::compute(&s, u64::MAX).unwrap();
        assert_eq!(even.rational_count(), census.singular_count());
        assert_eq!(even_node_census(&over(field, "x0^5*x3 + x1^6")), Err(VerifyError::NotX3Even));
    }
}
