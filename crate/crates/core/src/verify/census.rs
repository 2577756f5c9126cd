//! Exhaustive search for singular points over `F_q` and Hessian ranks.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use super::{FqPoly, VerifyError};
use crate::algebra::{Domain, Fq, FqField};

/// A point of projective space, normalised so its first nonzero coordinate
/// is one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint(pub Vec<Fq>);

impl ProjectivePoint {
    /// Normalises a nonzero coordinate vector; `None` for the zero vector.
    pub fn normalize(field: &FqField, coords: &[Fq]) -> Option<Self> {
        let lead = coords.iter().find(|c| !field.is_zero(c))?;
        let inv = field.inv(lead)?;
        Some(ProjectivePoint(coords.iter().map(|c| field.mul(c, &inv)).collect()))
    }

    pub fn coords(&self) -> &[Fq] {
        &self.0
    }

    /// Index of the affine chart `x_j = 1` containing the point.
    pub fn chart(&self) -> usize {
        self.0.iter().position(|c| c.c0 != 0 || c.c1 != 0).expect("projective point is nonzero")
    }

    pub fn text(&self, field: &FqField) -> String {
        let parts: Vec<String> = self.0.iter().map(|c| field.signed_text(c).1).collect();
        format!("({})", parts.join(" : "))
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.0.iter().map(|c| if c.c1 == 0 { c.c0.to_string() } else { format!("{}+{}t", c.c0, c.c1) }).collect();
        write!(f, "({})", parts.join(":"))
    }
}

/// Number of points of `P^{n-1}(F_q)`, saturating on overflow.
pub fn projective_point_count(q: u64, n: usize) -> u64 {
    let mut total: u64 = 0;
    let mut power: u64 = 1;
    for _ in 0..n {
        total = total.saturating_add(power);
        power = power.saturating_mul(q);
    }
    total
}

/// A polynomial flattened for repeated evaluation through a power table.
struct Compiled {
    terms: Vec<(Fq, Vec<u32>)>,
}

impl Compiled {
    fn new(p: &FqPoly) -> Self {
        Compiled { terms: p.terms().map(|(m, c)| (*c, m.exponents().to_vec())).collect() }
    }

    fn max_exponent(&self) -> u32 {
        self.terms.iter().flat_map(|(_, e)| e.iter().copied()).max().unwrap_or(0)
    }

    fn eval(&self, field: &FqField, table: &PowerTable, idx: &[u64]) -> Fq {
        let mut acc = field.zero();
        for (c, exps) in &self.terms {
            let mut t = *c;
            for (&i, &e) in idx.iter().zip(exps) {
                if e > 0 {
                    t = field.mul(&t, &table.get(i, e));
                }
            }
            acc = field.add(&acc, &t);
        }
        acc
    }
}

/// `table[i][e] = element(i)^e` for every field element.
struct PowerTable {
    stride: usize,
    data: Vec<Fq>,
}

impl PowerTable {
    fn new(field: &FqField, max_exp: u32) -> Self {
        let stride = max_exp as usize + 1;
        let mut data = Vec::with_capacity(stride * field.order() as usize);
        for x in field.elements() {
            let mut acc = field.one();
            for _ in 0..stride {
                data.push(acc);
                acc = field.mul(&acc, &x);
            }
        }
        PowerTable { stride, data }
    }

    #[inline]
    fn get(&self, index: u64, e: u32) -> Fq {
        self.data[index as usize * self.stride + e as usize]
    }
}

/// All points of `P^{n-1}(F_q)` where every partial derivative vanishes,
/// sorted. Refuses to run when the projective space exceeds `budget` points.
pub fn scan_singularities(surface: &FqPoly, budget: u64) -> Result<Vec<ProjectivePoint>, VerifyError> {
    let field = *surface.domain();
    let n = surface.nvars();
    let q = field.order();
    let total = projective_point_count(q, n);
    if total > budget {
        return Err(VerifyError::FieldTooLarge { points: total, budget });
    }
    let partials: Vec<Compiled> = surface.gradient().iter().map(Compiled::new).collect();
    let max_exp = partials.iter().map(Compiled::max_exponent).max().unwrap_or(0);
    let table = PowerTable::new(&field, max_exp);
    let singular_at = |idx: &[u64]| partials.iter().all(|d| field.is_zero(&d.eval(&field, &table, idx)));
    let to_point = |idx: &[u64]| ProjectivePoint(idx.iter().map(|&i| field.element(i)).collect());

    let mut found = Vec::new();
    for chart in 0..n {
        let free = n - 1 - chart;
        let mut base = vec![0u64; n];
        base[chart] = field.index_of(field.one());
        if free == 0 {
            if singular_at(&base) {
                found.push(to_point(&base));
            }
            continue;
        }
        // stripes on the first free coordinate, odometer over the rest
        let stripes: Vec<Vec<ProjectivePoint>> = (0..q)
            .into_par_iter()
            .map(|first| {
                let mut idx = base.clone();
                idx[chart + 1] = first;
                let mut hits = Vec::new();
                loop {
                    if singular_at(&idx) {
                        hits.push(to_point(&idx));
                    }
                    let mut pos = n;
                    loop {
                        pos -= 1;
                        if pos <= chart + 1 {
                            return hits;
                        }
                        idx[pos] += 1;
                        if idx[pos] < q {
                            break;
                        }
                        idx[pos] = 0;
                    }
                }
            })
            .collect();
        found.extend(stripes.into_iter().flatten());
    }
    found.sort();
    Ok(found)
}

/// Rank of the Hessian of the affine equation at a singular point, computed
/// in the chart of the point's first nonzero coordinate.
pub fn hessian_rank(surface: &FqPoly, pt: &ProjectivePoint) -> Result<usize, VerifyError> {
    let field = *surface.domain();
    let x = pt.coords();
    let grad = surface.gradient();
    for d in &grad {
        if !field.is_zero(&d.evaluate(x)?) {
            return Err(VerifyError::PointNotSingular);
        }
    }
    let chart = pt.chart();
    let keep: Vec<usize> = (0..x.len()).filter(|&i| i != chart).collect();
    let mut rows = Vec::with_capacity(keep.len());
    for &i in &keep {
        let mut row = Vec::with_capacity(keep.len());
        for &j in &keep {
            row.push(grad[i].partial_derivative(j)?.evaluate(x)?);
        }
        rows.push(row);
    }
    Ok(rank_over(&field, rows))
}

pub(crate) fn rank_over(field: &FqField, mut rows: Vec<Vec<Fq>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| !field.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = field.inv(&rows[rank][col]).unwrap();
        for r in rank + 1..rows.len() {
            let factor = field.mul(&rows[r][col], &inv);
            if field.is_zero(&factor) {
                continue;
            }
            for c in col..ncols {
                let t = field.mul(&factor, &rows[rank][c]);
                rows[r][c] = field.sub(&rows[r][c], &t);
            }
        }
        rank += 1;
    }
    rank
}

/// Singular points of a surface over one field with their Hessian ranks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeReport {
    pub field: FqField,
    pub points: Vec<ProjectivePoint>,
    pub ranks: Vec<usize>,
}

impl NodeReport {
    pub fn compute(surface: &FqPoly, budget: u64) -> Result<Self, VerifyError> {
        let points = scan_singularities(surface, budget)?;
        let ranks = points.iter().map(|pt| hessian_rank(surface, pt)).collect::<Result<Vec<_>, _>>()?;
        Ok(NodeReport { field: *surface.domain(), points, ranks })
    }

    pub fn singular_count(&self) -> usize {
        self.points.len()
    }

    /// Maps each observed Hessian rank to the number of points attaining it.
    pub fn rank_histogram(&self) -> BTreeMap<usize, usize> {
        let mut hist = BTreeMap::new();
        for &r in &self.ranks {
            *hist.entry(r).or_insert(0) += 1;
        }
        hist
    }

    /// Every singular point is an ordinary double point (full-rank Hessian).
    pub fn all_ordinary(&self, dim: usize) -> bool {
        self.ranks.iter().all(|&r| r == dim)
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::algebra::{monomials_of_degree, SparsePolynomial};
    use crate::parse::parse_poly;
    use crate::surface::x_vars;
    use crate::verify::FqContext;

    fn over(field: FqField, text: &str) -> FqPoly {
        parse_poly(text, &x_vars()).unwrap().map_domain(field, |c| field.from_rational(c)).unwrap()
    }

    /// Straight enumeration of all affine vectors, evaluating with the
    /// generic polynomial evaluator.
    fn naive_scan(s: &FqPoly) -> Vec<ProjectivePoint> {
        let field = *s.domain();
        let q = field.order();
        let grad = s.gradient();
        let mut found = BTreeSet::new();
        for code in 1..q.pow(4) {
            let coords: Vec<Fq> = (0..4).map(|i| field.element(code / q.pow(i) % q)).collect();
            if grad.iter().all(|d| field.is_zero(&d.evaluate(&coords).unwrap())) {
                found.insert(ProjectivePoint::normalize(&field, &coords).unwrap());
            }
        }
        found.into_iter().collect()
    }

    fn random_sextic(field: FqField, rng: &mut ChaCha8Rng, density: f64) -> FqPoly {
        let terms = monomials_of_degree(4, 6)
            .into_iter()
            .filter_map(|m| rng.gen_bool(density).then(|| (m, field.from_i64(rng.gen_range(-3..=3)))))
            .collect::<Vec<_>>();
        SparsePolynomial::from_terms(x_vars(), field, terms)
    }

    #[test]
    fn point_count_formula() {
        assert_eq!(projective_point_count(29, 4), 29u64.pow(3) + 29 * 29 + 29 + 1);
        assert_eq!(projective_point_count(u64::MAX, 4), u64::MAX);
    }

    #[test]
    fn scan_matches_naive_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in [5u64, 7] {
            let field = FqField::prime(p).unwrap();
            for density in [0.05, 0.1, 0.3] {
                let s = random_sextic(field, &mut rng, density);
                assert_eq!(scan_singularities(&s, DEFAULT).unwrap(), naive_scan(&s), "p={p} s={s}");
            }
            // a cone over a plane curve is singular along a whole locus
            let cone = over(field, "x0^6 + x1^6 + x0*x1^5");
            assert_eq!(scan_singularities(&cone, DEFAULT).unwrap(), naive_scan(&cone));
        }
    }

    const DEFAULT: u64 = super::super::DEFAULT_BUDGET;

    #[test]
    fn fermat_sextic_is_smooth() {
        for (p, k) in [(7, 1), (13, 1), (5, 2)] {
            let field = FqField::new(p, k).unwrap();
            let s = over(field, "x0^6 + x1^6 + x2^6 + x3^6");
            assert!(scan_singularities(&s, DEFAULT).unwrap().is_empty());
        }
    }

    #[test]
    fn budget_guard() {
        let field = FqField::prime(29).unwrap();
        let s = over(field, "x0^6 + x3^6");
        let err = scan_singularities(&s, 1000).unwrap_err();
        assert_eq!(err, VerifyError::FieldTooLarge { points: 25260, budget: 1000 });
    }

    #[test]
    fn hessian_ranks_of_simple_singularities() {
        let field = FqField::prime(11).unwrap();
        let origin = ProjectivePoint(vec![field.zero(), field.zero(), field.zero(), field.one()]);
        // node, A2 cusp, and a triple point at (0:0:0:1)
        let node = over(field, "(x0^2 + x1^2 + x2^2)*x3^4 + x0^6 + x1^6 + x2^6");
        let cusp = over(field, "(x0^2 + x1^2)*x3^4 + x2^3*x3^3 + x0^6 + x1^6 + x2^6");
        let triple = over(field, "x0^3*x3^3 + x1^3*x3^3 + x2^3*x3^3 + x0^6");
        assert_eq!(hessian_rank(&node, &origin).unwrap(), 3);
        assert_eq!(hessian_rank(&cusp, &origin).unwrap(), 2);
        assert_eq!(hessian_rank(&triple, &origin).unwrap(), 0);
        let elsewhere = ProjectivePoint(vec![field.one(), field.zero(), field.zero(), field.zero()]);
        assert_eq!(hessian_rank(&node, &elsewhere), Err(VerifyError::PointNotSingular));
    }

    #[test]
    fn klein_surface_has_56_nodes_over_f29() {
        let ctx = FqContext::new(29, 1).unwrap();
        let q = over(
            ctx.field,
            "x0^5*x2 + x0*x1^5 + x1*x2^5 - 5*x0^2*x1^2*x2^2 + (x0^3*x1 + x0*x2^3 + x1^3*x2)*x3^2 - x3^6",
        );
        let report = NodeReport::compute(&q, DEFAULT).unwrap();
        assert_eq!(report.singular_count(), 56);
        assert!(report.all_ordinary(3));
        assert_eq!(report.rank_histogram(), BTreeMap::from([(3, 56)]));

        let perturbed = &q + &over(ctx.field, "x0^6");
        assert_ne!(scan_singularities(&perturbed, DEFAULT).unwrap().len(), 56);
    }
}
