//! Exact dense matrices and nullspaces.
//!
//! Rational nullspaces are computed multi-modularly: the matrix is reduced to
//! row echelon form modulo several 62-bit primes, the echelon entries are
//! lifted by CRT and rational reconstruction, and every candidate kernel
//! vector is then checked by exact substitution. Rank mod p never exceeds the
//! rational rank, so `k` independent verified kernel vectors with `k` equal
//! to the modular nullity prove the nullspace is complete.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::modarith::{inv_mod, large_primes, mul_mod, sub_mod};
use super::scalar::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> ExactMatrix<E> {
    pub fn from_rows(rows: Vec<Vec<E>>, cols: usize) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix row");
            data.extend(r);
        }
        ExactMatrix { rows: nrows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        ExactMatrix { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        ExactMatrix { rows: self.cols, cols: self.rows, data }
    }
}

pub type QMatrix = ExactMatrix<Rational>;

/// Reduced row echelon form modulo `p`, in place. Returns pivot columns.
pub fn rref_mod_p(m: &mut [Vec<u64>], cols: usize, p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(sel) = (row..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(row, sel);
        let inv = inv_mod(m[row][col], p).unwrap();
        for x in m[row][col..].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r == row || other[col] == 0 {
                continue;
            }
            let factor = other[col];
            for (x, &y) in other[col..].iter_mut().zip(&pivot_row[col..]) {
                if y != 0 {
                    *x = sub_mod(*x, mul_mod(factor, y, p), p);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

impl QMatrix {
    /// Rows scaled by the lcm of their denominators.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
            })
            .collect()
    }

    fn reduce_mod(int_rows: &[Vec<BigInt>], p: u64) -> Vec<Vec<u64>> {
        let bp = BigInt::from(p);
        int_rows.iter().map(|row| row.iter().map(|x| x.mod_floor(&bp).to_u64().unwrap()).collect()).collect()
    }

    /// Nullity of the matrix reduced modulo a prime (denominators cleared
    /// first; `p` must not divide any of them).
    pub fn nullity_mod_p(&self, p: u64) -> usize {
        let mut m = Self::reduce_mod(&self.integer_rows(), p);
        self.cols - rref_mod_p(&mut m, self.cols, p).len()
    }

    pub fn rank(&self) -> usize {
        self.cols - self.nullspace().len()
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Exact rational nullspace basis in reduced echelon normalisation: one
    /// vector per free column `j`, with a 1 at `j` and zeros at the other
    /// free columns.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        if self.cols == 0 {
            return Vec::new();
        }
        if self.rows == 0 {
            return identity_basis(self.cols);
        }
        let int_rows = self.integer_rows();
        let primes = large_primes(64);
        let mut next = 0;
        let mut batch = 2;
        // (pivots, per-prime echelon images of the pivot rows restricted to free columns)
        let mut best: Option<Vec<usize>> = None;
        let mut images: Vec<(u64, Vec<Vec<u64>>)> = Vec::new();
        while next < primes.len() {
            let chunk = &primes[next..(next + batch).min(primes.len())];
            next += chunk.len();
            let results: Vec<(u64, Vec<usize>, Vec<Vec<u64>>)> = chunk
                .par_iter()
                .map(|&p| {
                    let mut m = Self::reduce_mod(&int_rows, p);
                    let piv = rref_mod_p(&mut m, self.cols, p);
                    m.truncate(piv.len());
                    (p, piv, m)
                })
                .collect();
            for (p, piv, m) in results {
                let better = match &best {
                    None => true,
                    Some(b) => piv.len() > b.len() || (piv.len() == b.len() && piv < *b),
                };
                if better {
                    best = Some(piv.clone());
                    images.clear();
                }
                if best.as_ref() == Some(&piv) {
                    images.push((p, m));
                }
            }
            let pivots = best.as_ref().unwrap();
            if let Some(basis) = self.lift_and_verify(pivots, &images) {
                return basis;
            }
            batch *= 2;
        }
        panic!("multi-modular nullspace did not stabilise after {} primes", primes.len());
    }

    fn lift_and_verify(&self, pivots: &[usize], images: &[(u64, Vec<Vec<u64>>)]) -> Option<Vec<Vec<Rational>>> {
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        if free.is_empty() {
            return Some(Vec::new());
        }
        let modulus = images.iter().fold(BigInt::one(), |acc, (p, _)| acc * BigInt::from(*p));
        let mut basis = Vec::with_capacity(free.len());
        for &j in &free {
            let mut v = vec![Rational::zero(); self.cols];
            v[j] = Rational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                let residues: Vec<(u64, u64)> = images.iter().map(|(p, m)| (*p, m[i][j])).collect();
                let lifted = crt(&residues);
                let r = rational_reconstruct(&lifted, &modulus)?;
                v[pc] = -r;
            }
            basis.push(v);
        }
        let ok = basis.par_iter().all(|v| self.mul_vec(v).iter().all(Zero::is_zero));
        ok.then_some(basis)
    }

    /// Reference nullspace by fraction-carrying Gauss–Jordan elimination.
    /// Slow on large systems; kept as an independent route for tests.
    pub fn nullspace_by_fractions(&self) -> Vec<Vec<Rational>> {
        let mut m: Vec<Vec<Rational>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == m.len() {
                break;
            }
            let Some(sel) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(row, sel);
            let inv = m[row][col].recip();
            for x in m[row].iter_mut() {
                *x = &*x * &inv;
            }
            let pr = m[row].clone();
            for (r, other) in m.iter_mut().enumerate() {
                if r != row && !other[col].is_zero() {
                    let factor = other[col].clone();
                    for (x, y) in other.iter_mut().zip(&pr) {
                        *x = &*x - &factor * y;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&j| {
                let mut v = vec![Rational::zero(); self.cols];
                v[j] = Rational::one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m[i][j].clone();
                }
                v
            })
            .collect()
    }
}

fn identity_basis(n: usize) -> Vec<Vec<Rational>> {
    (0..n).map(|j| (0..n).map(|i| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect()
}

/// Chinese remaindering of `(modulus, residue)` pairs with pairwise coprime
/// moduli; result in `[0, prod)`.
pub fn crt(residues: &[(u64, u64)]) -> BigInt {
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for &(p, r) in residues {
        let bp = BigInt::from(p);
        let xm = x.mod_floor(&bp).to_u64().unwrap();
        let minv = inv_mod(m.mod_floor(&bp).to_u64().unwrap(), p).expect("moduli coprime");
        let t = mul_mod(sub_mod(r % p, xm, p), minv, p);
        x += &m * BigInt::from(t);
        m *= bp;
    }
    x
}

/// Rational reconstruction: finds `n/d` with `|n|, d <= sqrt(m/2)` and
/// `n ≡ a d (mod m)`, if one exists.
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if !(&r1 - a * &t1).mod_floor(m).is_zero() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{rat, rat_frac};

    fn qm(rows: Vec<Vec<i64>>) -> QMatrix {
        let cols = rows[0].len();
        QMatrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(rat).collect()).collect(), cols)
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let m = qm(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert!(m.nullspace().is_empty());
    }

    #[test]
    fn single_relation() {
        let m = qm(vec![vec![1, 1]]);
        assert_eq!(m.nullspace(), vec![vec![rat(-1), rat(1)]]);
        // the basis (1,-1) spans the same line
        assert_eq!(m.mul_vec(&[rat(1), rat(-1)]), vec![rat(0)]);
    }

    #[test]
    fn fractional_kernel_entries_are_reconstructed() {
        let m = QMatrix::from_rows(
            vec![vec![rat(3), rat(7), rat_frac(1, 5), rat(0)], vec![rat(0), rat(11), rat(2), rat(-13)]],
            4,
        );
        let a = m.nullspace();
        let b = m.nullspace_by_fractions();
        assert_eq!(a, b);
        assert_eq!(a.len(), 2);
    }

    #[test]
    fn crt_and_reconstruction_roundtrip() {
        let ps = large_primes(3);
        let target = rat_frac(-123456789, 987654321);
        let residues: Vec<(u64, u64)> = ps
            .iter()
            .map(|&p| {
                let bp = BigInt::from(p);
                let n = target.numer().mod_floor(&bp).to_u64().unwrap();
                let d = target.denom().mod_floor(&bp).to_u64().unwrap();
                (p, mul_mod(n, inv_mod(d, p).unwrap(), p))
            })
            .collect();
        let m = ps.iter().fold(BigInt::one(), |acc, &p| acc * BigInt::from(p));
        assert_eq!(rational_reconstruct(&crt(&residues), &m), Some(target));
    }
}
