//! Lines of `P^2(F_q)` meeting a plane quartic in two double points.

use super::{FqContext, VerifyError};
use crate::algebra::{Domain, Fq, FqField};
use crate::curve::QuarticCurve;

/// Number of `F_q`-rational lines whose restriction to the curve is a
/// constant times a square (bitangents and hyperflex lines).
pub fn count_rational_bitangents(curve: &QuarticCurve, ctx: &FqContext) -> Result<usize, VerifyError> {
    let field = ctx.field;
    let f = curve
        .f()
        .map_domain(field, |c| field.from_rational(c))
        .ok_or(VerifyError::BadReductionPrime(field.characteristic()))?;
    let eval = |x: &[Fq; 3]| f.evaluate(x).expect("three coordinates");
    let inv_vandermonde = inverse_vandermonde(&field);
    let half = field.inv(&field.from_i64(2)).expect("odd characteristic");

    let mut count = 0;
    for line in plane_points(&field) {
        let (p0, p1) = spanning_points(&field, &line);
        // a point P of the line off the curve, and another point Q
        let on_line = |s: Fq| -> [Fq; 3] { std::array::from_fn(|i| field.add(&p0[i], &field.mul(&s, &p1[i]))) };
        let Some((p, q)) = field
            .elements()
            .map(|s| (on_line(s), p1))
            .chain(std::iter::once((p1, p0)))
            .find(|(p, _)| !field.is_zero(&eval(p)))
        else {
            // the whole line lies on the curve: f is reducible
            continue;
        };
        // h(t) = f(t P + Q), degree 4 with leading coefficient f(P)
        let values: Vec<Fq> = (0..5)
            .map(|t| {
                let t = field.from_i64(t);
                eval(&std::array::from_fn(|i| field.add(&field.mul(&t, &p[i]), &q[i])))
            })
            .collect();
        let h: Vec<Fq> = inv_vandermonde
            .iter()
            .map(|row| row.iter().zip(&values).fold(field.zero(), |acc, (a, b)| field.add(&acc, &field.mul(a, b))))
            .collect();
        let lead_inv = field.inv(&h[4]).expect("f(P) is nonzero");
        let h: Vec<Fq> = h.iter().map(|c| field.mul(c, &lead_inv)).collect();
        // monic h = (t^2 + a t + b)^2
        let a = field.mul(&h[3], &half);
        let b = field.mul(&field.sub(&h[2], &field.mul(&a, &a)), &half);
        let two_ab = field.mul(&field.from_i64(2), &field.mul(&a, &b));
        if two_ab == h[1] && field.mul(&b, &b) == h[0] {
            count += 1;
        }
    }
    Ok(count)
}

fn plane_points(field: &FqField) -> impl Iterator<Item = [Fq; 3]> + '_ {
    let q = field.order();
    let (zero, one) = (field.zero(), field.one());
    let chart0 = (0..q * q).map(move |i| [one, field.element(i / q), field.element(i % q)]);
    let chart1 = (0..q).map(move |i| [zero, one, field.element(i)]);
    chart0.chain(chart1).chain(std::iter::once([zero, zero, one]))
}

fn cross(field: &FqField, a: &[Fq; 3], b: &[Fq; 3]) -> [Fq; 3] {
    std::array::from_fn(|i| {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        field.sub(&field.mul(&a[j], &b[k]), &field.mul(&a[k], &b[j]))
    })
}

/// Two independent points on the line with coordinates `line`.
fn spanning_points(field: &FqField, line: &[Fq; 3]) -> ([Fq; 3], [Fq; 3]) {
    let unit = |i: usize| -> [Fq; 3] { std::array::from_fn(|j| if i == j { field.one() } else { field.zero() }) };
    let candidates: Vec<[Fq; 3]> =
        (0..3).map(|i| cross(field, line, &unit(i))).filter(|v| v.iter().any(|c| !field.is_zero(c))).collect();
    let first = candidates[0];
    let second = *candidates[1..]
        .iter()
        .find(|v| cross(field, &first, v).iter().any(|c| !field.is_zero(c)))
        .expect("a line has two independent points");
    (first, second)
}

/// Inverse of the Vandermonde matrix on the nodes `0, 1, 2, 3, 4`.
fn inverse_vandermonde(field: &FqField) -> Vec<Vec<Fq>> {
    let n = 5;
    let mut m: Vec<Vec<Fq>> = (0..n)
        .map(|t| {
            let mut row: Vec<Fq> = (0..n).map(|j| field.pow(&field.from_i64(t as i64), j as u64)).collect();
            row.extend((0..n).map(|j| if j == t { field.one() } else { field.zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !field.is_zero(&m[r][col])).expect("distinct nodes");
        m.swap(col, piv);
        let inv = field.inv(&m[col][col]).unwrap();
        for c in 0..2 * n {
            m[col][c] = field.mul(&m[col][c], &inv);
        }
        for r in 0..n {
            if r != col && !field.is_zero(&m[r][col]) {
                let factor = m[r][col];
                for c in 0..2 * n {
                    let t = field.mul(&factor, &m[col][c]);
                    m[r][c] = field.sub(&m[r][c], &t);
                }
            }
        }
    }
    // coefficients = V^{-1} * values, with V[t][j] = t^j
    m.into_iter().map(|row| row[n..].to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::z_vars;
    use crate::parse::parse_poly;

    fn quartic(text: &str) -> QuarticCurve {
        QuarticCurve::new(parse_poly(text, &z_vars()).unwrap()).unwrap()
    }

    #[test]
    fn klein_and_fermat_split_completely() {
        let klein = quartic("z0*z1^3 + z1*z2^3 + z2*z0^3");
        let fermat = quartic("z0^4 + z1^4 + z2^4");
        let f169 = FqContext::new(13, 2).unwrap();
        assert_eq!(count_rational_bitangents(&klein, &FqContext::new(29, 1).unwrap()).unwrap(), 28);
        assert_eq!(count_rational_bitangents(&klein, &f169).unwrap(), 28);
        assert_eq!(count_rational_bitangents(&fermat, &f169).unwrap(), 28);
    }

    #[test]
    fn vandermonde_inverse_recovers_coefficients() {
        let field = FqField::new(13, 2).unwrap();
        let v = inverse_vandermonde(&field);
        // h(t) = 3 + t^2 + 5 t^4
        let h = |t: i64| field.from_i64(3 + t * t + 5 * t.pow(4));
        let coeffs: Vec<Fq> = v
            .iter()
            .map(|row| (0..5).fold(field.zero(), |acc, t| field.add(&acc, &field.mul(&row[t], &h(t as i64)))))
            .collect();
        let expect: Vec<Fq> = [3, 0, 1, 0, 5].iter().map(|&c| field.from_i64(c)).collect();
        assert_eq!(coeffs, expect);
    }
}
