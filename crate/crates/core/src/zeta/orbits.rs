use num_bigint::BigInt;
use num_traits::One;

use super::det::bareiss_det;
use super::poly::IntPolynomial;
use super::rational::RationalFunction;
use crate::error::{Error, Result};

/// Periodic orbits of a self-map of `{0..size}`. Each orbit starts at its
/// smallest member and follows the map; orbits are sorted by that member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitDecomposition {
    pub map: Vec<usize>,
    pub orbits: Vec<Vec<usize>>,
    pub transient_count: usize,
    /// Number of primitive orbits.
    pub a: usize,
    /// Number of periodic elements.
    pub b: usize,
}

impl OrbitDecomposition {
    pub fn lengths(&self) -> Vec<usize> {
        self.orbits.iter().map(Vec::len).collect()
    }

    pub fn is_bijective(&self) -> bool {
        self.transient_count == 0
    }
}

pub fn orbit_decomposition(map: &[usize]) -> OrbitDecomposition {
    let n = map.len();
    assert!(map.iter().all(|&x| x < n), "self-map out of range");
    // 0 unvisited, 1 on the current path, 2 done
    let mut state = vec![0u8; n];
    let mut orbits = Vec::new();
    for start in 0..n {
        if state[start] != 0 {
            continue;
        }
        let mut path = Vec::new();
        let mut x = start;
        while state[x] == 0 {
            state[x] = 1;
            path.push(x);
            x = map[x];
        }
        if state[x] == 1 {
            let pos = path.iter().position(|&y| y == x).expect("x is on the path");
            let cycle = &path[pos..];
            let min_idx = cycle
                .iter()
                .enumerate()
                .min_by_key(|&(_, &v)| v)
                .map(|(i, _)| i)
                .unwrap_or(0);
            let mut orbit = cycle[min_idx..].to_vec();
            orbit.extend_from_slice(&cycle[..min_idx]);
            orbits.push(orbit);
        }
        for &y in &path {
            state[y] = 2;
        }
    }
    orbits.sort_by_key(|o| o[0]);
    let b = orbits.iter().map(Vec::len).sum();
    OrbitDecomposition {
        map: map.to_vec(),
        a: orbits.len(),
        b,
        transient_count: n - b,
        orbits,
    }
}

/// `∏_τ (1 - z^{p(τ)})`
pub fn cycle_product(od: &OrbitDecomposition) -> IntPolynomial {
    od.orbits.iter().fold(IntPolynomial::one(), |acc, o| {
        &acc * &IntPolynomial::one_minus_z_pow(o.len())
    })
}

/// `∏_τ 1/(1 - z^{p(τ)})`
pub fn euler_product(od: &OrbitDecomposition) -> RationalFunction {
    RationalFunction::reciprocal_of(cycle_product(od)).expect("cycle product has constant term 1")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionalEquationReport {
    /// `r(1/z) = (-1)^a z^b r(z)` holds as an identity of rational functions.
    pub identity_holds: bool,
    /// For bijective maps: `det(σ_C)` from the permutation matrix, and the
    /// orbit sign `∏_τ (-1)^{p(τ)-1}`.
    pub det_sigma: Option<i64>,
    pub orbit_sign: Option<i64>,
    pub parity_sign: Option<i64>,
}

impl FunctionalEquationReport {
    pub fn holds(&self) -> bool {
        self.identity_holds && self.det_sigma == self.orbit_sign && self.orbit_sign == self.parity_sign
    }
}

/// Orbit lengths of an Euler-form function `1 / ∏ (1 - z^p)`, found by
/// repeatedly dividing out the smallest available `p`.
pub fn euler_factor_lengths(r: &RationalFunction) -> Result<Vec<usize>> {
    if !r.numerator().is_one() {
        return Err(Error::NotEulerForm);
    }
    let mut rest = r.denominator().clone();
    let mut lengths = Vec::new();
    while !rest.is_one() {
        if rest.coeff(0) != BigInt::one() {
            return Err(Error::NotEulerForm);
        }
        let Some(p) = rest.coeffs().iter().skip(1).position(|c| *c != BigInt::from(0)) else {
            return Err(Error::NotEulerForm);
        };
        let p = p + 1;
        match rest.div_exact(&IntPolynomial::one_minus_z_pow(p)) {
            Some(q) => {
                lengths.push(p);
                rest = q;
            }
            None => return Err(Error::NotEulerForm),
        }
    }
    Ok(lengths)
}

fn permutation_det(map: &[usize]) -> i64 {
    let n = map.len();
    let m: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((map[i] == j) as i64)).collect())
        .collect();
    i64::try_from(bareiss_det(m)).expect("permutation determinant is a sign")
}

pub fn functional_equation_check(r: &RationalFunction, od: &OrbitDecomposition) -> Result<FunctionalEquationReport> {
    euler_factor_lengths(r)?;
    let sign = if od.a.is_multiple_of(2) { 1 } else { -1 };
    let rhs = r.scale_monomial(sign, od.b);
    let identity_holds = r.at_reciprocal() == rhs;
    let (det_sigma, orbit_sign, parity_sign) = if od.is_bijective() {
        let orbit_sign = od
            .orbits
            .iter()
            .map(|o| if o.len() % 2 == 1 { 1 } else { -1 })
            .product::<i64>();
        let parity = if (od.map.len() + od.a).is_multiple_of(2) { 1 } else { -1 };
        (Some(permutation_det(&od.map)), Some(orbit_sign), Some(parity))
    } else {
        (None, None, None)
    };
    Ok(FunctionalEquationReport {
        identity_holds,
        det_sigma,
        orbit_sign,
        parity_sign,
    })
}
