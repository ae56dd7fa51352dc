use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

/// Möbius function: `1` for `d = 1`, `(-1)^k` for a product of `k` distinct
/// primes, `0` when `d` is not square-free.
pub fn mobius(d: u64) -> i8 {
    assert!(d >= 1, "mobius is defined for d >= 1");
    let mut n = d;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Residues `(Σ_{d|n} μ(d) c_{n/d}) mod n` for `n = 1..=N`, with `counts[0]`
/// holding `c_1`. All residues vanish exactly when the Gauss congruences hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussReport {
    pub residues: Vec<BigInt>,
}

impl GaussReport {
    pub fn all_zero(&self) -> bool {
        self.residues.iter().all(|r| r.is_zero())
    }
}

pub fn gauss_congruence_report(counts: &[BigInt]) -> GaussReport {
    let residues = (1..=counts.len())
        .map(|n| {
            let mut sum = BigInt::zero();
            for d in (1..=n).filter(|d| n % d == 0) {
                match mobius(d as u64) {
                    1 => sum += &counts[n / d - 1],
                    -1 => sum -= &counts[n / d - 1],
                    _ => {}
                }
            }
            sum.mod_floor(&BigInt::from(n))
        })
        .collect();
    GaussReport { residues }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn mobius_values() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(2), -1);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(4), 0);
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(97), -1);
    }

    #[test]
    fn congruence_examples() {
        let six: Vec<BigInt> = (1..=4).map(|n| BigInt::from(6i64.pow(n))).collect();
        let r = gauss_congruence_report(&six);
        assert!(r.all_zero());

        let mersenne = big(&[1, 3, 7, 15]);
        assert!(gauss_congruence_report(&mersenne).all_zero());

        assert!(gauss_congruence_report(&big(&[1; 12])).all_zero());

        // c = (1, 2): 2 - 1 = 1 is odd.
        let r = gauss_congruence_report(&big(&[1, 2]));
        assert_eq!(r.residues, big(&[0, 1]));
    }

    /// Necklace oracle: the primitive-orbit count a_n of any self-map satisfies
    /// n * a_n = Σ_{d|n} μ(d) Fix(σ^{n/d}).
    #[test]
    fn fixed_point_counts_of_self_maps() {
        let map = [1usize, 2, 0, 4, 3, 5, 5, 2];
        let fix = |n: usize| (0..map.len()).filter(|&x| (0..n).fold(x, |y, _| map[y]) == x).count() as i64;
        let counts: Vec<BigInt> = (1..=12).map(|n| BigInt::from(fix(n))).collect();
        assert!(gauss_congruence_report(&counts).all_zero());
    }
}
