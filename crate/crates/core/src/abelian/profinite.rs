//! Finite quotients `(Z/c_i)^k` approximating the lattice zeta function.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::{finite_counts, finite_model, lattice_zeta, smith_normal_form, LatticeEndo};
use crate::error::Result;
use crate::group::class_map;
use crate::zeta::{
    euler_product, first_difference, orbit_decomposition, series_matches_rational, zeta_series, PowerSeries,
};

/// Largest finite model `(Z/c)^k` that is also built element by element.
pub const MAX_EXPLICIT_MODEL: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfiniteRow {
    pub i: u32,
    /// `c_i = ∏_{n ≤ i} R(φ^n)`
    pub modulus: BigInt,
    /// `R_i(n)` for `n = 1..=N`.
    pub quotient_counts: Vec<BigInt>,
    /// `R_i(n) = R(φ^n)` for all `n ≤ i`.
    pub counts_agree: bool,
    /// Series coefficients agree with the lattice zeta through order `i`.
    pub series_agree: bool,
    /// First order at which the series differ, if any within `N`.
    pub first_discrepancy: Option<usize>,
    /// For small moduli: the quotient's `1 / det(1 - B_i z)`, computed on the
    /// enumerated group, matches the series of the quotient counts.
    pub explicit_model_agrees: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfiniteReport {
    pub counts: Vec<BigInt>,
    pub rows: Vec<ProfiniteRow>,
}

impl ProfiniteReport {
    pub fn holds(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.counts_agree && r.series_agree && r.explicit_model_agrees != Some(false))
    }
}

/// Quotients for `i = 1..=i_max`, each compared with the lattice through order `n_max`.
pub fn profinite_approximation(m: &LatticeEndo, i_max: u32, n_max: u32) -> Result<ProfiniteReport> {
    let n_max = n_max.max(i_max);
    let counts = finite_counts(m, n_max)?;
    let target = zeta_series(&counts);
    let lattice = lattice_zeta(m, n_max)?;
    debug_assert!(series_matches_rational(&target, &lattice.zeta));
    let divisors: Vec<Vec<BigInt>> = (1..=n_max).map(|n| smith_normal_form(&m.one_minus_power(n))).collect();
    let mut rows = Vec::with_capacity(i_max as usize);
    let mut modulus = BigInt::one();
    for i in 1..=i_max {
        modulus *= &counts[i as usize - 1];
        let quotient_counts: Vec<BigInt> = divisors
            .iter()
            .map(|ds| ds.iter().map(|d| modulus.gcd(d)).product())
            .collect();
        let series = zeta_series(&quotient_counts);
        let first_discrepancy = first_difference(&series, &target);
        let explicit_model_agrees = explicit_check(m, &modulus, &series)?;
        rows.push(ProfiniteRow {
            i,
            counts_agree: quotient_counts[..i as usize] == counts[..i as usize],
            series_agree: first_discrepancy.is_none_or(|j| j > i as usize),
            first_discrepancy,
            modulus: modulus.clone(),
            quotient_counts,
            explicit_model_agrees,
        });
    }
    Ok(ProfiniteReport { counts, rows })
}

fn explicit_check(m: &LatticeEndo, modulus: &BigInt, series: &PowerSeries) -> Result<Option<bool>> {
    let Some(c) = modulus.to_u64() else {
        return Ok(None);
    };
    let size = (c as u128).checked_pow(m.rank() as u32);
    if size.is_none_or(|s| s > MAX_EXPLICIT_MODEL as u128) {
        return Ok(None);
    }
    let (_, phi) = finite_model(m, c)?;
    // orbit form: the dense determinant is too slow at a few thousand classes
    let zeta = euler_product(&orbit_decomposition(&class_map(&phi)?.sigma));
    Ok(Some(series_matches_rational(series, &zeta)))
}
