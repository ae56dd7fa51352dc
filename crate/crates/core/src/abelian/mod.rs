//! Endomorphisms of the lattice `Z^k` given by integer matrices.

mod profinite;
mod snf;

use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::group::{Endomorphism, FiniteGroup, DEFAULT_CAP};
use crate::zeta::{bareiss_det, series_matches_rational, zeta_series, IntPolynomial, RationalFunction};

pub use profinite::{profinite_approximation, ProfiniteReport, ProfiniteRow};
pub use snf::smith_normal_form;

/// Largest accepted rank; exterior powers grow as `C(k, k/2)`.
pub const MAX_RANK: usize = 8;
/// Longest accepted decimal literal in a matrix entry.
pub const MAX_ENTRY_DIGITS: usize = 256;

/// Eigenvalues closer than this to `±1` make `σ` and `r` ambiguous.
pub const EIGEN_GUARD: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeEndo {
    m: Vec<Vec<BigInt>>,
}

impl LatticeEndo {
    pub fn new(m: Vec<Vec<BigInt>>) -> Result<Self> {
        let k = m.len();
        if k == 0 || m.iter().any(|row| row.len() != k) {
            return Err(Error::InvalidArgument("matrix must be square and nonempty".into()));
        }
        if k > MAX_RANK {
            return Err(Error::InvalidArgument(format!(
                "rank above {MAX_RANK} is not supported"
            )));
        }
        Ok(LatticeEndo { m })
    }

    pub fn from_i64s(rows: &[&[i64]]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.m.len()
    }

    pub fn matrix(&self) -> &[Vec<BigInt>] {
        &self.m
    }

    pub fn power(&self, n: u32) -> Vec<Vec<BigInt>> {
        let k = self.rank();
        let mut acc = identity(k);
        let mut base = self.m.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mat_mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = mat_mul(&base, &base);
            }
        }
        acc
    }

    /// `I - M^n`
    pub fn one_minus_power(&self, n: u32) -> Vec<Vec<BigInt>> {
        let p = self.power(n);
        p.iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, x)| if i == j { BigInt::one() - x } else { -x })
                    .collect()
            })
            .collect()
    }
}

/// `"2 1; 1 1"`: rows separated by `;`, entries by whitespace.
pub fn parse_matrix(text: &str) -> Result<LatticeEndo> {
    let rows: Vec<Vec<BigInt>> = text
        .split(';')
        .enumerate()
        .map(|(i, row)| {
            let entries: Vec<&str> = row.split_whitespace().collect();
            if entries.is_empty() {
                return Err(Error::parse(1, format!("row {} is empty", i + 1)));
            }
            if entries.len() > MAX_RANK {
                return Err(Error::parse(1, format!("rank above {MAX_RANK} is not supported")));
            }
            entries
                .iter()
                .map(|e| {
                    let digits = e.strip_prefix(['-', '+']).unwrap_or(e);
                    if digits.is_empty()
                        || digits.len() > MAX_ENTRY_DIGITS
                        || !digits.bytes().all(|b| b.is_ascii_digit())
                    {
                        return Err(Error::parse(1, format!("bad matrix entry `{e}`")));
                    }
                    e.parse::<BigInt>()
                        .map_err(|_| Error::parse(1, format!("bad matrix entry `{e}`")))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    if rows.iter().any(|r| r.len() != rows.len()) {
        return Err(Error::parse(1, "matrix must be square"));
    }
    LatticeEndo::new(rows)
}

impl fmt::Display for LatticeEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .m
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        f.write_str(&rows.join("; "))
    }
}

fn identity(k: usize) -> Vec<Vec<BigInt>> {
    (0..k)
        .map(|i| (0..k).map(|j| BigInt::from((i == j) as u8)).collect())
        .collect()
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let k = a.len();
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| (0..k).fold(BigInt::zero(), |acc, t| acc + &a[i][t] * &b[t][j]))
                .collect()
        })
        .collect()
}

/// A Reidemeister number, which may be infinite.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Count {
    Finite(BigInt),
    Infinite,
}

impl Count {
    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            Count::Finite(c) => Some(c),
            Count::Infinite => None,
        }
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Finite(c) => write!(f, "{c}"),
            Count::Infinite => f.write_str("INFINITE"),
        }
    }
}

/// `R(φ^n) = |det(I - M^n)|`, infinite when the determinant vanishes.
pub fn lattice_reidemeister(m: &LatticeEndo, n: u32) -> Count {
    assert!(n >= 1, "n must be positive");
    let d = bareiss_det(m.one_minus_power(n));
    if d.is_zero() {
        Count::Infinite
    } else {
        Count::Finite(d.abs())
    }
}

/// Counts `R(φ^1..R(φ^N))`, failing at the first infinite one.
pub fn finite_counts(m: &LatticeEndo, n_max: u32) -> Result<Vec<BigInt>> {
    (1..=n_max)
        .map(|n| match lattice_reidemeister(m, n) {
            Count::Finite(c) => Ok(c),
            Count::Infinite => Err(Error::InfiniteReidemeister(n)),
        })
        .collect()
}

/// The `j`-th compound matrix: all `j × j` minors, subsets in lexicographic order.
pub fn exterior_power(m: &[Vec<BigInt>], j: usize) -> Vec<Vec<BigInt>> {
    let subsets = k_subsets(m.len(), j);
    subsets
        .iter()
        .map(|rows| {
            subsets
                .iter()
                .map(|cols| {
                    bareiss_det(
                        rows.iter()
                            .map(|&r| cols.iter().map(|&c| m[r][c].clone()).collect())
                            .collect(),
                    )
                })
                .collect()
        })
        .collect()
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// `det(I - zA)` over `Z[z]`.
fn det_one_minus_z(a: &[Vec<BigInt>]) -> IntPolynomial {
    let m = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, x)| {
                    let c = if i == j { BigInt::one() } else { BigInt::zero() };
                    IntPolynomial::new(vec![c, -x])
                })
                .collect()
        })
        .collect();
    bareiss_det(m)
}

/// `L(z) = ∏_j det(I - z Λ^j M)^{(-1)^{j+1}}`
pub fn lefschetz_zeta(m: &LatticeEndo) -> RationalFunction {
    let mut num = IntPolynomial::one();
    let mut den = IntPolynomial::one();
    for j in 0..=m.rank() {
        let f = det_one_minus_z(&exterior_power(m.matrix(), j));
        if j % 2 == 1 {
            num = &num * &f;
        } else {
            den = &den * &f;
        }
    }
    RationalFunction::new(num, den).expect("each factor has constant term 1")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianZetaResult {
    pub counts: Vec<BigInt>,
    pub lefschetz: RationalFunction,
    pub zeta: RationalFunction,
    pub sigma: i8,
    pub r: usize,
}

/// `σ` and `r`: the parity of real eigenvalues below `-1`, and the number of
/// real eigenvalues of modulus above 1. Counted numerically, then checked
/// against exact signs: `(-1)^r = sign det(I - M²)` and
/// `σ (-1)^r = sign det(I - M)`.
pub fn sigma_and_r(m: &LatticeEndo) -> Result<(i8, usize)> {
    let k = m.rank();
    let entries: Vec<f64> = m
        .matrix()
        .iter()
        .flat_map(|row| row.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)))
        .collect();
    if entries.iter().any(|x| !x.is_finite()) {
        return Err(Error::VerificationFailed("matrix entries exceed floating range".into()));
    }
    let eig = DMatrix::from_row_slice(k, k, &entries).complex_eigenvalues();
    let scale = eig.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let mut below = 0;
    let mut r = 0;
    for z in eig.iter() {
        if z.im.abs() > EIGEN_GUARD * scale {
            continue;
        }
        if (z.re.abs() - 1.0).abs() < EIGEN_GUARD * scale {
            return Err(Error::VerificationFailed(format!(
                "eigenvalue {} is within the guard band of ±1",
                z.re
            )));
        }
        if z.re.abs() > 1.0 {
            r += 1;
        }
        if z.re < -1.0 {
            below += 1;
        }
    }
    let sigma: i8 = if below % 2 == 0 { 1 } else { -1 };
    let parity_r: i8 = if r % 2 == 0 { 1 } else { -1 };
    let sign = |n: u32| -> i8 {
        let d = bareiss_det(m.one_minus_power(n));
        if d.is_positive() {
            1
        } else if d.is_negative() {
            -1
        } else {
            0
        }
    };
    if sign(2) != parity_r || sign(1) != sigma * parity_r {
        return Err(Error::VerificationFailed(format!(
            "eigenvalue count (sigma={sigma}, r={r}) disagrees with determinant signs"
        )));
    }
    Ok((sigma, r))
}

/// `L(σz)^{(-1)^r}`, verified against the counts to order `n_max`.
pub fn lattice_zeta(m: &LatticeEndo, n_max: u32) -> Result<AbelianZetaResult> {
    let counts = finite_counts(m, n_max.max(2))?;
    let counts = counts[..n_max as usize].to_vec();
    let (sigma, r) = sigma_and_r(m)?;
    let lefschetz = lefschetz_zeta(m);
    let scaled = if sigma == 1 {
        lefschetz.clone()
    } else {
        substitute_neg(&lefschetz)
    };
    let zeta = if r % 2 == 0 { scaled } else { scaled.inv()? };
    if !series_matches_rational(&zeta_series(&counts), &zeta) {
        return Err(Error::VerificationFailed(format!(
            "zeta {zeta} does not reproduce the Reidemeister counts"
        )));
    }
    Ok(AbelianZetaResult {
        counts,
        lefschetz,
        zeta,
        sigma,
        r,
    })
}

/// `f(-z)`
fn substitute_neg(f: &RationalFunction) -> RationalFunction {
    let flip = |p: &IntPolynomial| {
        IntPolynomial::new(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    };
    RationalFunction::new(flip(f.numerator()), flip(f.denominator())).expect("nonzero denominator")
}

/// The endomorphism `M mod c` of `(Z/c)^k`, as a fully enumerated group.
pub fn finite_model(m: &LatticeEndo, c: u64) -> Result<(Arc<FiniteGroup>, Endomorphism)> {
    let k = m.rank();
    let group = FiniteGroup::abelian(&vec![c; k], DEFAULT_CAP)?;
    let modulus = BigInt::from(c);
    let images: Vec<usize> = (0..k)
        .map(|j| {
            (0..k).fold(0usize, |acc, i| {
                let x = m.matrix()[i][j].mod_floor(&modulus).to_usize().expect("residue fits");
                acc * c as usize + x
            })
        })
        .collect();
    let phi = Endomorphism::from_generator_images(&group, &images)?;
    Ok((group, phi))
}
