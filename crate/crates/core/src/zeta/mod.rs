//! Exact polynomials, rational functions and truncated series, and the zeta
//! functions of finite self-maps.

mod arith;
mod det;
mod orbits;
mod poly;
mod rational;
mod series;

pub use arith::{gauss_congruence_report, mobius, GaussReport};
pub use det::{bareiss_det, ExactRing};
pub use orbits::{
    cycle_product, euler_factor_lengths, euler_product, functional_equation_check, orbit_decomposition,
    FunctionalEquationReport, OrbitDecomposition,
};
pub use poly::IntPolynomial;
pub use rational::{from_coefficients, RationalFunction};
pub use series::{first_difference, series_matches_rational, zeta_series, PowerSeries};

use crate::error::{Error, Result};
use crate::group::ClassMap;

/// `det(I - zB)` for the 0/1 matrix of a self-map (`B[x][map(x)] = 1`),
/// computed by fraction-free elimination and by the cycle formula. A
/// disagreement between the two is reported as `VerificationFailed`.
pub fn det_one_minus_zb_map(map: &[usize]) -> Result<IntPolynomial> {
    let n = map.len();
    let one = IntPolynomial::one();
    let minus_z = IntPolynomial::from_i64s(&[0, -1]);
    let mut m = vec![vec![IntPolynomial::zero(); n]; n];
    for (x, &y) in map.iter().enumerate() {
        m[x][x] = one.clone();
        m[x][y] = if x == y { &one + &minus_z } else { minus_z.clone() };
    }
    let by_elimination = bareiss_det(m);
    let by_cycles = cycle_product(&orbit_decomposition(map));
    if by_elimination != by_cycles {
        return Err(Error::VerificationFailed(format!(
            "det(1 - zB): elimination gives {by_elimination}, cycles give {by_cycles}"
        )));
    }
    Ok(by_cycles)
}

pub fn det_one_minus_zb(cm: &ClassMap) -> Result<IntPolynomial> {
    det_one_minus_zb_map(&cm.sigma)
}

/// `1 / det(I - zB)`
pub fn zeta_rational(cm: &ClassMap) -> Result<RationalFunction> {
    RationalFunction::reciprocal_of(det_one_minus_zb(cm)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(det_one_minus_zb_map(&[0, 1, 2]).unwrap(), p(&[1, -1]).pow(3));
        let neg = det_one_minus_zb_map(&[0, 5, 4, 3, 2, 1]).unwrap();
        assert_eq!(neg, &p(&[1, -1]).pow(2) * &p(&[1, 0, -1]).pow(2));
        assert_eq!(det_one_minus_zb_map(&[1, 1, 1, 1]).unwrap(), p(&[1, -1]));
        assert_eq!(det_one_minus_zb_map(&[]).unwrap(), IntPolynomial::one());
    }

    proptest::proptest! {
        #[test]
        fn elimination_matches_cycles(map in (1usize..=12).prop_flat_map(|n| proptest::collection::vec(0..n, n))) {
            proptest::prop_assert!(det_one_minus_zb_map(&map).is_ok());
        }
    }

    use proptest::strategy::Strategy;
}
