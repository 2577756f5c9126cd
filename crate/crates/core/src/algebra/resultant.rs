//! Sylvester resultants with polynomial coefficients.

use super::poly::SparsePolynomial;
use super::scalar::Domain;
use super::AlgebraError;

/// Sylvester matrix of `a` and `b` with respect to `var`; entries are
/// polynomials free of `var`.
pub fn sylvester_matrix<D: Domain>(
    a: &SparsePolynomial<D>,
    b: &SparsePolynomial<D>,
    var: usize,
) -> Result<Vec<Vec<SparsePolynomial<D>>>, AlgebraError> {
    if a.is_zero() || b.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    if var >= a.nvars() {
        return Err(AlgebraError::VariableIndex { index: var, nvars: a.nvars() });
    }
    let m = a.degree_in(var).unwrap() as usize;
    let n = b.degree_in(var).unwrap() as usize;
    if m == 0 || n == 0 {
        return Err(AlgebraError::NonPositiveDegree { var });
    }
    let ca = a.coefficients_in(var);
    let cb = b.coefficients_in(var);
    let zero = SparsePolynomial::zero(a.vars().clone(), a.domain().clone());
    let size = m + n;
    let mut rows = vec![vec![zero.clone(); size]; size];
    // rows 0..n: shifted copies of a (highest coefficient first)
    for (i, row) in rows.iter_mut().enumerate().take(n) {
        for k in 0..=m {
            row[i + k] = ca[m - k].clone();
        }
    }
    for (i, row) in rows.iter_mut().skip(n).enumerate() {
        for k in 0..=n {
            row[i + k] = cb[n - k].clone();
        }
    }
    Ok(rows)
}

/// Determinant by fraction-free (Bareiss) elimination; every division is
/// exact in the polynomial ring.
pub fn determinant<D: Domain>(mut m: Vec<Vec<SparsePolynomial<D>>>) -> SparsePolynomial<D> {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    let (vars, domain) = (m[0][0].vars().clone(), m[0][0].domain().clone());
    let one = SparsePolynomial::one(vars.clone(), domain.clone());
    let mut negate = false;
    let mut prev = one.clone();
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return SparsePolynomial::zero(vars, domain),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev).unwrap().expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

/// `Res_var(a, b)` as the determinant of the Sylvester matrix.
pub fn sylvester_resultant<D: Domain>(
    a: &SparsePolynomial<D>,
    b: &SparsePolynomial<D>,
    var: usize,
) -> Result<SparsePolynomial<D>, AlgebraError> {
    Ok(determinant(sylvester_matrix(a, b, var)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::monomial::VarSet;
    use crate::algebra::poly::QPoly;
    use crate::algebra::scalar::{rat, Rationals};

    fn vars() -> VarSet {
        VarSet::new(["T", "p", "q"])
    }
    fn v(i: usize) -> QPoly {
        QPoly::var(vars(), Rationals, i)
    }
    fn c(n: i64) -> QPoly {
        QPoly::constant(vars(), Rationals, rat(n))
    }

    #[test]
    fn quadratic_against_derivative() {
        // Res_T(T^2 - c, 2T) = 1 * (2 sqrt c)(-2 sqrt c) = -4c
        let a = &v(0).pow(2) - &v(1);
        let b = &c(2) * &v(0);
        assert_eq!(sylvester_resultant(&a, &b, 0).unwrap(), &c(-4) * &v(1));
    }

    #[test]
    fn depressed_cubic() {
        // Res_T(T^3 + pT + q, 3T^2 + p) = 4p^3 + 27q^2
        let a = &(&v(0).pow(3) + &(&v(1) * &v(0))) + &v(2);
        let b = &(&c(3) * &v(0).pow(2)) + &v(1);
        let expected = &(&c(4) * &v(1).pow(3)) + &(&c(27) * &v(2).pow(2));
        assert_eq!(sylvester_resultant(&a, &b, 0).unwrap(), expected);
    }

    #[test]
    fn rejects_degenerate_input() {
        assert!(matches!(
            sylvester_resultant(&QPoly::zero(vars(), Rationals), &v(0), 0),
            Err(AlgebraError::ZeroPolynomial)
        ));
        assert!(matches!(sylvester_resultant(&v(1), &v(0), 0), Err(AlgebraError::NonPositiveDegree { .. })));
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let rows: Vec<Vec<QPoly>> = vec![vec![v(1), c(2), v(2)], vec![c(0), v(1), c(1)], vec![v(2), c(3), c(0)]];
        // p*(p*0 - 1*3) - 2*(0*0 - 1*q) + q*(0*3 - p*q) = -3p + 2q - pq^2
        let expected = &(&(&v(1) * &c(-3)) + &(&c(2) * &v(2))) - &(&v(1) * &v(2).pow(2));
        assert_eq!(determinant(rows), expected);
    }
}
