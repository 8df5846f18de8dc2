//! Exact rational kernel bases via fraction-free (Bareiss) elimination.

use crate::exact::Rational;
use num::bigint::BigInt;
use num::{Integer, One, Zero};

/// Returns a basis of the right kernel {x ∈ ℚⁿ : A·x = 0} of an m×n
/// rational matrix, one vector per free column, in deterministic column
/// order. The empty basis means the kernel is {0}.
pub fn kernel_basis(a: &[Vec<Rational>], n: usize) -> Vec<Vec<Rational>> {
    // Row-scale to integers (row scaling preserves the kernel), then run
    // fraction-free Gaussian elimination with column pivoting: every
    // division is exact, all intermediates are minors of the scaled matrix.
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .map(|row| {
            assert_eq!(row.len(), n, "ragged matrix row");
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect();
    let rows = m.len();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut prev_pivot = BigInt::one();
    let mut r = 0usize;
    for c in 0..n {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        for i in r + 1..rows {
            for j in c + 1..n {
                let num = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                let (q, rem) = num.div_rem(&prev_pivot);
                assert!(
                    rem.is_zero(),
                    "fraction-free elimination invariant violated"
                );
                m[i][j] = q;
            }
            m[i][c] = BigInt::zero();
        }
        prev_pivot = m[r][c].clone();
        pivot_cols.push(c);
        r += 1;
    }

    // Back-substitute one kernel vector per free column.
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; n];
        for &c in &pivot_cols {
            v[c] = true;
        }
        v
    };
    let mut basis = Vec::new();
    for f in (0..n).filter(|&c| !is_pivot[c]) {
        let mut x: Vec<Rational> = vec![Rational::zero(); n];
        x[f] = Rational::one();
        for (i, &p) in pivot_cols.iter().enumerate().rev() {
            let mut acc = Rational::zero();
            for j in p + 1..n {
                if !x[j].is_zero() && !m[i][j].is_zero() {
                    acc += Rational::from_integer(m[i][j].clone()) * &x[j];
                }
            }
            x[p] = -acc / Rational::from_integer(m[i][p].clone());
        }
        basis.push(x);
    }
    basis
}

/// Basis of the left kernel {λ ∈ ℚᵐ : λᵀ·A = 0}: the right kernel of Aᵀ.
pub fn left_kernel_basis(a: &[Vec<Rational>], n: usize) -> Vec<Vec<Rational>> {
    let rows = a.len();
    let transpose: Vec<Vec<Rational>> = (0..n)
        .map(|j| (0..rows).map(|i| a[i][j].clone()).collect())
        .collect();
    kernel_basis(&transpose, rows)
}

/// Checks A·x = 0 exactly.
pub fn in_kernel(a: &[Vec<Rational>], x: &[Rational]) -> bool {
    a.iter().all(|row| {
        row.iter()
            .zip(x)
            .fold(Rational::zero(), |acc, (aij, xj)| acc + aij * xj)
            .is_zero()
    })
}
