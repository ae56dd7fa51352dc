//! Arithmetic in `Z[ζ_e]`, with elements written as `Σ c_k ζ^k` for `k < e`.

use std::sync::Arc;

use crate::zeta::mobius;

/// `Φ_e` as a monic integer polynomial, ascending coefficients.
pub fn cyclotomic_polynomial(e: usize) -> Vec<i128> {
    assert!(e >= 1);
    let mut num = vec![1i128];
    let mut den = vec![1i128];
    for d in (1..=e).filter(|d| e.is_multiple_of(*d)) {
        // x^d - 1
        let mut f = vec![0i128; d + 1];
        f[0] = -1;
        f[d] = 1;
        match mobius((e / d) as u64) {
            1 => num = poly_mul(&num, &f),
            -1 => den = poly_mul(&den, &f),
            _ => {}
        }
    }
    poly_div_monic(&num, &den)
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact quotient by a polynomial with leading coefficient `±1`.
fn poly_div_monic(a: &[i128], b: &[i128]) -> Vec<i128> {
    let db = b.len() - 1;
    let lead = b[db];
    let mut rem = a.to_vec();
    let mut q = vec![0i128; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = rem[k + db] * lead;
        q[k] = c;
        for (j, y) in b.iter().enumerate() {
            rem[k + j] -= c * y;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    q
}

/// Shared data for arithmetic at one fixed `e`.
#[derive(Debug)]
pub struct CyclotomicRing {
    e: usize,
    phi: Vec<i128>,
}

impl CyclotomicRing {
    pub fn new(e: usize) -> Arc<Self> {
        Arc::new(CyclotomicRing {
            e,
            phi: cyclotomic_polynomial(e),
        })
    }

    pub fn order(&self) -> usize {
        self.e
    }

    /// Remainder of `Σ c_k x^k` modulo `Φ_e`, the canonical form used for
    /// equality and zero tests.
    pub fn reduce(&self, c: &[i128]) -> Vec<i128> {
        let dp = self.phi.len() - 1;
        let mut r = c.to_vec();
        for k in (dp..r.len()).rev() {
            let top = r[k];
            if top != 0 {
                for (j, y) in self.phi.iter().enumerate() {
                    r[k - dp + j] -= top * y;
                }
            }
        }
        r.truncate(dp);
        r
    }

    pub fn is_zero(&self, c: &[i128]) -> bool {
        self.reduce(c).iter().all(|&x| x == 0)
    }

    /// True iff the element equals the rational integer `n`.
    pub fn equals_integer(&self, c: &[i128], n: i128) -> bool {
        let mut d = c.to_vec();
        d[0] -= n;
        self.is_zero(&d)
    }

    /// Product in `Z[x]/(x^e - 1)`.
    pub fn mul(&self, a: &[i128], b: &[i128]) -> Vec<i128> {
        let mut out = vec![0i128; self.e];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
            for (j, y) in b.iter().enumerate() {
                out[(i + j) % self.e] += x * y;
            }
        }
        out
    }

    /// Complex conjugate: `ζ^k ↦ ζ^{-k}`.
    pub fn conj(&self, a: &[i128]) -> Vec<i128> {
        (0..self.e).map(|k| a[(self.e - k) % self.e]).collect()
    }
}
