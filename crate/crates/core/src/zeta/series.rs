use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::rational::RationalFunction;

/// Truncated power series `Σ_{k=0}^{N} a_k z^k` with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

impl PowerSeries {
    /// Series with coefficients `a_0..a_N`; `N = coeffs.len() - 1`.
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a power series needs at least a constant term");
        PowerSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// `exp(self)`, defined when the constant term is zero. Uses
    /// `k f_k = Σ_{j=1}^{k} j g_j f_{k-j}`.
    pub fn exp(&self) -> Option<PowerSeries> {
        if !self.coeffs[0].is_zero() {
            return None;
        }
        let n = self.order();
        let mut f = vec![BigRational::one()];
        for k in 1..=n {
            let mut acc = BigRational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * BigRational::from_integer(BigInt::from(j)) * &f[k - j];
                }
            }
            f.push(acc / BigRational::from_integer(BigInt::from(k)));
        }
        Some(PowerSeries { coeffs: f })
    }

    /// `log(self)`, defined when the constant term is one.
    pub fn log(&self) -> Option<PowerSeries> {
        if !self.coeffs[0].is_one() {
            return None;
        }
        let n = self.order();
        let mut g = vec![BigRational::zero()];
        for k in 1..=n {
            let mut acc = &self.coeffs[k] * BigRational::from_integer(BigInt::from(k));
            for j in 1..k {
                if !g[j].is_zero() {
                    acc -= &g[j] * BigRational::from_integer(BigInt::from(j)) * &self.coeffs[k - j];
                }
            }
            g.push(acc / BigRational::from_integer(BigInt::from(k)));
        }
        Some(PowerSeries { coeffs: g })
    }
}

/// `exp(Σ_{n=1}^{N} c_n / n z^n)` truncated at order `N = counts.len()`.
pub fn zeta_series(counts: &[BigInt]) -> PowerSeries {
    let mut g = vec![BigRational::zero()];
    for (i, c) in counts.iter().enumerate() {
        g.push(BigRational::new(c.clone(), BigInt::from(i + 1)));
    }
    PowerSeries { coeffs: g }
        .exp()
        .expect("constant term is zero by construction")
}

/// True iff the Taylor coefficients of `r` agree with `s` up to `s.order()`.
pub fn series_matches_rational(s: &PowerSeries, r: &RationalFunction) -> bool {
    match r.taylor(s.order()) {
        Some(t) => t == s.coeffs,
        None => false,
    }
}

/// First index at which the two series differ, comparing up to the shorter order.
pub fn first_difference(a: &PowerSeries, b: &PowerSeries) -> Option<usize> {
    a.coeffs.iter().zip(&b.coeffs).position(|(x, y)| x != y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeta::IntPolynomial;

    fn ints(v: impl IntoIterator<Item = i64>) -> Vec<BigInt> {
        v.into_iter().map(BigInt::from).collect()
    }

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(IntPolynomial::from_i64s(num), IntPolynomial::from_i64s(den)).unwrap()
    }

    #[test]
    fn constant_counts_give_geometric_series() {
        let s = zeta_series(&ints([1; 10]));
        assert!(s.coeffs().iter().all(|c| c.is_one()));
        assert!(series_matches_rational(&s, &rf(&[1], &[1, -1])));
        assert!(!series_matches_rational(
            &zeta_series(&ints([2; 10])),
            &rf(&[1], &[1, -1])
        ));
    }

    #[test]
    fn mersenne_counts() {
        let counts = ints((1..=12).map(|n| (1i64 << n) - 1));
        assert!(series_matches_rational(&zeta_series(&counts), &rf(&[1, -1], &[1, -2])));
    }

    #[test]
    fn alternating_counts_of_negation_on_z6() {
        let counts = ints((1..=12).map(|n| if n % 2 == 1 { 2 } else { 6 }));
        let den = &IntPolynomial::from_i64s(&[1, -1]).pow(4) * &IntPolynomial::from_i64s(&[1, 1]).pow(2);
        let r = RationalFunction::reciprocal_of(den).unwrap();
        assert!(series_matches_rational(&zeta_series(&counts), &r));
    }

    #[test]
    fn powers_of_six() {
        let counts = ints((1..=12).map(|n| 6i64.pow(n)));
        assert!(series_matches_rational(&zeta_series(&counts), &rf(&[1], &[1, -6])));
    }

    proptest::proptest! {
        #[test]
        fn log_inverts_exp(counts in proptest::collection::vec(0i64..50, 1..12)) {
            let big = ints(counts.iter().copied());
            let s = zeta_series(&big);
            let g = s.log().unwrap();
            for (n, c) in big.iter().enumerate() {
                proptest::prop_assert_eq!(&g.coeffs()[n + 1], &BigRational::new(c.clone(), BigInt::from(n + 1)));
            }
        }
    }
}
