//! Projective matrix groups over `F_q`: the order-336 symmetry group of the
//! Klein double plane, orbits, stabilisers and invariance scalars.

use std::collections::{HashSet, VecDeque};

use super::census::ProjectivePoint;
use super::{gauss_sum_sqrt, FqContext, FqPoly, VerifyError};
use crate::algebra::{Domain, Fq, FqField};

/// Default cap on the number of elements a closure may produce.
pub const CLOSURE_BUDGET: usize = 10_000;

/// An element of `PGL_4(F_q)`, stored row-major and scaled so that the first
/// nonzero entry is one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement([Fq; 16]);

impl GroupElement {
    /// `None` for the zero matrix.
    pub fn from_rows(field: &FqField, rows: [[Fq; 4]; 4]) -> Option<Self> {
        let mut flat = [Fq::default(); 16];
        for (i, row) in rows.iter().enumerate() {
            flat[4 * i..4 * i + 4].copy_from_slice(row);
        }
        let lead = flat.iter().find(|c| !field.is_zero(c))?;
        let inv = field.inv(lead)?;
        Some(GroupElement(flat.map(|c| field.mul(&c, &inv))))
    }

    pub fn diagonal(field: &FqField, d: [Fq; 4]) -> Option<Self> {
        let z = field.zero();
        let mut rows = [[z; 4]; 4];
        for i in 0..4 {
            rows[i][i] = d[i];
        }
        Self::from_rows(field, rows)
    }

    pub fn identity(field: &FqField) -> Self {
        let one = field.one();
        Self::diagonal(field, [one; 4]).unwrap()
    }

    pub fn entry(&self, i: usize, j: usize) -> Fq {
        self.0[4 * i + j]
    }

    pub fn rows(&self) -> Vec<Vec<Fq>> {
        self.0.chunks(4).map(<[Fq]>::to_vec).collect()
    }

    pub fn mul(&self, field: &FqField, other: &Self) -> Self {
        let mut rows = [[field.zero(); 4]; 4];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, out) in row.iter_mut().enumerate() {
                *out = (0..4)
                    .fold(field.zero(), |acc, k| field.add(&acc, &field.mul(&self.entry(i, k), &other.entry(k, j))));
            }
        }
        Self::from_rows(field, rows).expect("product of invertible matrices")
    }

    /// The point `M x`.
    pub fn apply(&self, field: &FqField, pt: &ProjectivePoint) -> ProjectivePoint {
        let x = pt.coords();
        let image: Vec<Fq> = (0..4)
            .map(|i| (0..4).fold(field.zero(), |acc, k| field.add(&acc, &field.mul(&self.entry(i, k), &x[k]))))
            .collect();
        ProjectivePoint::normalize(field, &image).expect("matrix is invertible")
    }
}

/// A finite subgroup of `PGL_4(F_q)` listed element by element.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    pub field: FqField,
    pub generators: Vec<GroupElement>,
    pub elements: Vec<GroupElement>,
}

impl MatrixGroup {
    /// Breadth-first closure of the generators under right multiplication.
    pub fn closure(field: FqField, generators: Vec<GroupElement>, budget: usize) -> Result<Self, VerifyError> {
        let id = GroupElement::identity(&field);
        let mut seen = HashSet::from([id]);
        let mut queue = VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            for s in &generators {
                let h = g.mul(&field, s);
                if seen.insert(h) {
                    if seen.len() > budget {
                        return Err(VerifyError::ClosureBudgetExceeded(budget));
                    }
                    queue.push_back(h);
                }
            }
        }
        let mut elements: Vec<GroupElement> = seen.into_iter().collect();
        elements.sort();
        Ok(MatrixGroup { field, generators, elements })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn is_central(&self, g: &GroupElement) -> bool {
        let f = &self.field;
        self.elements.iter().all(|h| h.mul(f, g) == g.mul(f, h))
    }
}

/// Generators of order 7 and 2 acting on `(x0, x1, x2, x3)`, built from the
/// context's 7th root of unity `w` and `s = sqrt(-7)`:
/// `diag(w, w^4, w^2, 1)` and the matrix with rows
/// `(a, c, b, 0), (c, b, a, 0), (b, a, c, 0), (0, 0, 0, s)` where
/// `a = w^2 - w^5`, `b = w - w^6`, `c = w^4 - w^3`.
pub fn g336_generators(ctx: &FqContext) -> Result<[GroupElement; 2], VerifyError> {
    let f = &ctx.field;
    let w = ctx.zeta7.ok_or_else(|| VerifyError::NoSeventhRoot(ctx.describe()))?;
    let s = gauss_sum_sqrt(ctx)?;
    let wp = |e: u64| f.pow(&w, e);
    let g7 = GroupElement::diagonal(f, [wp(1), wp(4), wp(2), f.one()]).unwrap();
    let a = f.sub(&wp(2), &wp(5));
    let b = f.sub(&wp(1), &wp(6));
    let c = f.sub(&wp(4), &wp(3));
    let z = f.zero();
    let g2 = GroupElement::from_rows(f, [[a, c, b, z], [c, b, a, z], [b, a, c, z], [z, z, z, s]]).unwrap();
    Ok([g7, g2])
}

pub const G336_ORDER: usize = 336;

/// Closes the two generators and checks the order together with the
/// covering involution `diag(1, 1, 1, -1)` being a central element.
pub fn build_g336(ctx: &FqContext) -> Result<MatrixGroup, VerifyError> {
    let f = ctx.field;
    let group = MatrixGroup::closure(f, g336_generators(ctx)?.to_vec(), CLOSURE_BUDGET)?;
    if group.order() != G336_ORDER {
        return Err(VerifyError::OrderMismatch { got: group.order(), expected: G336_ORDER });
    }
    let one = f.one();
    let involution = GroupElement::diagonal(&f, [one, one, one, f.neg(&one)]).unwrap();
    if !group.contains(&involution) {
        return Err(VerifyError::InvolutionCheck("missing from the group"));
    }
    if !group.is_central(&involution) {
        return Err(VerifyError::InvolutionCheck("not central"));
    }
    Ok(group)
}

/// The orbit of a point (sorted) and the order of its stabiliser.
pub fn orbit_and_stabilizer(group: &MatrixGroup, pt: &ProjectivePoint) -> (Vec<ProjectivePoint>, usize) {
    let mut orbit = Vec::with_capacity(group.order());
    let mut stabilizer = 0;
    for g in &group.elements {
        let image = g.apply(&group.field, pt);
        if &image == pt {
            stabilizer += 1;
        }
        orbit.push(image);
    }
    orbit.sort();
    orbit.dedup();
    (orbit, stabilizer)
}

/// The scalar `c` with `F(g x) = c F(x)`; fails with two monomials whose
/// coefficients scale differently (or appear on one side only).
pub fn invariance_scalar(surface: &FqPoly, g: &GroupElement) -> Result<Fq, VerifyError> {
    let f = *surface.domain();
    let image = surface.linear_transform(&g.rows())?;
    let Some((lead, c0)) = surface.leading_term() else {
        return Ok(f.one());
    };
    let scalar = f.mul(&image.coefficient(lead), &f.inv(c0).unwrap());
    let expected = surface.scale(&scalar);
    if image == expected {
        return Ok(scalar);
    }
    let witness = expected
        .terms()
        .map(|(m, _)| m)
        .chain(image.terms().map(|(m, _)| m))
        .find(|m| expected.coefficient(m) != image.coefficient(m))
        .expect("polynomials differ somewhere");
    let names = |m: &crate::algebra::Monomial| {
        crate::algebra::SparsePolynomial::from_terms(surface.vars().clone(), f, [(m.clone(), f.one())]).to_string()
    };
    Err(VerifyError::NotInvariant(names(lead), names(witness)))
}
