//! Fraction-free (Bareiss) determinants over exact integral domains.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::poly::IntPolynomial;

/// An integral domain in which Bareiss' divisions are exact.
pub trait ExactRing: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / d`, assuming the quotient exists.
    fn div_exact(&self, d: &Self) -> Self;
}

impl ExactRing for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        debug_assert!(Zero::is_zero(&r), "inexact Bareiss division");
        q
    }
}

impl ExactRing for IntPolynomial {
    fn zero() -> Self {
        IntPolynomial::zero()
    }
    fn one() -> Self {
        IntPolynomial::one()
    }
    fn is_zero(&self) -> bool {
        IntPolynomial::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, d: &Self) -> Self {
        IntPolynomial::div_exact(self, d).expect("inexact Bareiss division")
    }
}

/// Determinant of a square matrix by Bareiss elimination with row pivoting.
/// Each intermediate entry is a minor of the input, so every division is exact.
pub fn bareiss_det<R: ExactRing>(mut m: Vec<Vec<R>>) -> R {
    let n = m.len();
    if n == 0 {
        return R::one();
    }
    let mut prev = R::one();
    let mut negate = false;
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return R::zero();
            };
            m.swap(k, p);
            negate = !negate;
        }
        let (upper, lower) = m.split_at_mut(k + 1);
        let pivot_row = &upper[k];
        let pivot = &pivot_row[k];
        for row in lower.iter_mut() {
            let factor = row[k].clone();
            for j in k + 1..n {
                let a = pivot.mul(&row[j]);
                let updated = if factor.is_zero() {
                    a
                } else {
                    a.sub(&factor.mul(&pivot_row[j]))
                };
                row[j] = if updated.is_zero() {
                    updated
                } else {
                    updated.div_exact(&prev)
                };
            }
            row[k] = R::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    /// Leibniz expansion, the independent reference.
    fn leibniz(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = 0i64;
        fn rec(k: usize, perm: &mut Vec<usize>, m: &[Vec<i64>], total: &mut i64) {
            let n = perm.len();
            if k == n {
                let mut sign = 1;
                for i in 0..n {
                    for j in i + 1..n {
                        if perm[i] > perm[j] {
                            sign = -sign;
                        }
                    }
                }
                *total += sign * (0..n).map(|i| m[i][perm[i]]).product::<i64>();
                return;
            }
            for i in k..n {
                perm.swap(k, i);
                rec(k + 1, perm, m, total);
                perm.swap(k, i);
            }
        }
        rec(0, &mut perm, m, &mut total);
        total
    }

    #[test]
    fn small_determinants() {
        assert_eq!(bareiss_det(big(&[&[2, 1], &[1, 1]])), BigInt::from(1));
        assert_eq!(bareiss_det(big(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(bareiss_det(big(&[&[1, 2], &[2, 4]])), BigInt::from(0));
        assert_eq!(bareiss_det::<BigInt>(vec![]), BigInt::from(1));
    }

    #[test]
    fn matches_leibniz_on_fixed_matrices() {
        let ms: Vec<Vec<Vec<i64>>> = vec![
            vec![vec![0, 2, -1], vec![3, 0, 4], vec![-2, 5, 0]],
            vec![vec![1, 2, 3, 4], vec![0, 0, 1, 2], vec![3, 1, 0, 0], vec![2, 2, 2, 1]],
            vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]],
        ];
        for m in ms {
            let rows: Vec<&[i64]> = m.iter().map(|r| r.as_slice()).collect();
            assert_eq!(bareiss_det(big(&rows)), BigInt::from(leibniz(&m)));
        }
    }

    #[test]
    fn polynomial_determinant() {
        // det(I - zB) for the swap matrix is 1 - z^2.
        let one = IntPolynomial::one();
        let mz = IntPolynomial::from_i64s(&[0, -1]);
        let m = vec![vec![one.clone(), mz.clone()], vec![mz, one]];
        assert_eq!(bareiss_det(m), IntPolynomial::from_i64s(&[1, 0, -1]));
    }

    proptest::proptest! {
        #[test]
        fn bareiss_agrees_with_leibniz(entries in proptest::collection::vec(-4i64..=4, 16), n in 1usize..=4) {
            let m: Vec<Vec<i64>> = (0..n).map(|i| entries[i * 4..i * 4 + n].to_vec()).collect();
            let rows: Vec<&[i64]> = m.iter().map(|r| r.as_slice()).collect();
            proptest::prop_assert_eq!(bareiss_det(big(&rows)), BigInt::from(leibniz(&m)));
        }
    }
}
