//! Character tables by the class-algebra eigenvector method over a prime field.

use std::sync::Arc;

use num_complex::Complex64;

use super::cyclotomic::CyclotomicRing;
use crate::error::{Error, Result};
use crate::group::{conjugacy_classes, ConjugacyPartition, FiniteGroup};

/// Default upper bound on the prime searched for.
pub const PRIME_SEARCH_CAP: u64 = 1 << 32;

/// A value `Σ m_k ζ_e^k` with nonnegative multiplicities `m_k`: the eigenvalue
/// multiplicities of `ρ(g)`.
pub type Multiplicities = Vec<u32>;

#[derive(Debug, Clone)]
pub struct CharacterTable {
    group: Arc<FiniteGroup>,
    classes: ConjugacyPartition,
    ring: Arc<CyclotomicRing>,
    prime: u64,
    chars: Vec<Vec<Multiplicities>>,
    degrees: Vec<u32>,
}

impl CharacterTable {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn classes(&self) -> &ConjugacyPartition {
        &self.classes
    }

    pub fn exponent(&self) -> usize {
        self.ring.order()
    }

    /// The prime the table was computed over.
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn count(&self) -> usize {
        self.chars.len()
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn values(&self, chi: usize) -> &[Multiplicities] {
        &self.chars[chi]
    }

    pub fn ring(&self) -> &Arc<CyclotomicRing> {
        &self.ring
    }

    /// `χ(c)` as an element of `Z[ζ_e]`.
    pub fn cyclotomic_value(m: &[u32]) -> Vec<i128> {
        m.iter().map(|&x| x as i128).collect()
    }

    pub fn complex_value(&self, m: &[u32]) -> Complex64 {
        let e = self.exponent() as f64;
        m.iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| Complex64::from_polar(c as f64, std::f64::consts::TAU * k as f64 / e))
            .sum()
    }

    /// Canonical text for a value: its remainder mod `Φ_e` in powers of
    /// `w = exp(2πi/e)`, e.g. `-1`, `1 + w^2`, `-2*w`.
    pub fn format_value(&self, m: &[u32]) -> String {
        let r = self.ring.reduce(&Self::cyclotomic_value(m));
        let mut out = String::new();
        for (k, &c) in r.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let neg = c < 0;
            let a = c.unsigned_abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let var = match k {
                0 => String::new(),
                1 => "w".to_string(),
                _ => format!("w^{k}"),
            };
            match (k, a) {
                (0, _) => out.push_str(&a.to_string()),
                (_, 1) => out.push_str(&var),
                _ => out.push_str(&format!("{a}*{var}")),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// `|G| ⟨f, g⟩ = Σ_c |C_c| f(c) conj(g(c))` in `Z[ζ_e]`.
    pub fn scaled_inner_product(&self, f: &[Multiplicities], g: &[Multiplicities]) -> Vec<i128> {
        let mut acc = vec![0i128; self.exponent()];
        for (c, size) in self.classes.sizes.iter().enumerate() {
            let fc = Self::cyclotomic_value(&f[c]);
            let gc = self.ring.conj(&Self::cyclotomic_value(&g[c]));
            for (a, b) in acc.iter_mut().zip(self.ring.mul(&fc, &gc)) {
                *a += *size as i128 * b;
            }
        }
        acc
    }

    /// `⟨f, f⟩ = 1`, decided exactly.
    pub fn is_irreducible(&self, f: &[Multiplicities]) -> bool {
        let ip = self.scaled_inner_product(f, f);
        self.ring.equals_integer(&ip, self.group.order() as i128)
    }

    pub fn index_of(&self, f: &[Multiplicities]) -> Option<usize> {
        self.chars.iter().position(|chi| chi.as_slice() == f)
    }

    /// Row and column orthogonality, `Σ d² = |G|`, and the character count.
    pub fn verify(&self) -> Result<()> {
        let n = self.group.order() as i128;
        let k = self.classes.count();
        if self.chars.len() != k {
            return Err(Error::TableConstructionFailed(format!(
                "{} characters for {} classes",
                self.chars.len(),
                k
            )));
        }
        let sum_sq: i128 = self.degrees.iter().map(|&d| (d as i128) * (d as i128)).sum();
        if sum_sq != n {
            return Err(Error::TableConstructionFailed(format!(
                "sum of squared degrees is {sum_sq}"
            )));
        }
        for i in 0..k {
            for j in i..k {
                let ip = self.scaled_inner_product(&self.chars[i], &self.chars[j]);
                let expected = if i == j { n } else { 0 };
                if !self.ring.equals_integer(&ip, expected) {
                    return Err(Error::TableConstructionFailed(format!(
                        "row orthogonality fails for characters {i}, {j}"
                    )));
                }
            }
        }
        for c in 0..k {
            let mut acc = vec![0i128; self.exponent()];
            for chi in &self.chars {
                let v = Self::cyclotomic_value(&chi[c]);
                for (a, b) in acc.iter_mut().zip(self.ring.mul(&v, &self.ring.conj(&v))) {
                    *a += b;
                }
            }
            let centralizer = n / self.classes.sizes[c] as i128;
            if !self.ring.equals_integer(&acc, centralizer) {
                return Err(Error::TableConstructionFailed(format!(
                    "column orthogonality fails for class {c}"
                )));
            }
        }
        Ok(())
    }
}

pub fn compute_character_table(group: &Arc<FiniteGroup>) -> Result<CharacterTable> {
    compute_character_table_with_cap(group, PRIME_SEARCH_CAP)
}

pub fn compute_character_table_with_cap(group: &Arc<FiniteGroup>, prime_cap: u64) -> Result<CharacterTable> {
    let n = group.order();
    let e = group.exponent();
    let classes = conjugacy_classes(group);
    let k = classes.count();
    let p = find_prime(e, n as u64, prime_cap)?;
    let f = Fp(p);

    // Class matrices (M_i)_{jl} = #{x ∈ C_i : x^{-1} z_l ∈ C_j}, stored sparsely.
    let mut mats: Vec<Vec<(usize, usize, u64)>> = vec![Vec::new(); k];
    for (l, &z) in classes.reps.iter().enumerate() {
        let mut counts: std::collections::HashMap<(usize, usize), u64> = std::collections::HashMap::new();
        for x in 0..n {
            let i = classes.class_of[x];
            let j = classes.class_of[group.mult(group.inv(x), z)];
            *counts.entry((i, j)).or_default() += 1;
        }
        let mut entries: Vec<_> = counts.into_iter().collect();
        entries.sort_unstable();
        for ((i, j), c) in entries {
            mats[i].push((j, l, c % p));
        }
    }

    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..k).map(|r| (0..k).map(|c| (r == c) as u64).collect()).collect()];
    for m in mats.iter().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            let split = split_space(&f, m, &basis, k);
            if split.iter().map(Vec::len).sum::<usize>() != basis.len() {
                return Err(Error::TableConstructionFailed(
                    "class matrix is not diagonalizable over the chosen prime".into(),
                ));
            }
            next.extend(split);
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return Err(Error::TableConstructionFailed("eigenspaces did not split".into()));
    }

    let zeta = f.pow(primitive_root(p), (p - 1) / e);
    let e_inv = f.inv(e % p);
    let power_classes: Vec<Vec<usize>> = classes
        .reps
        .iter()
        .map(|&g| {
            let mut x = 0;
            (0..e)
                .map(|_| {
                    let c = classes.class_of[x];
                    x = group.mult(x, g);
                    c
                })
                .collect()
        })
        .collect();
    let inv_class: Vec<usize> = classes.reps.iter().map(|&g| classes.class_of[group.inv(g)]).collect();
    let dmax = (n as f64).sqrt().floor() as u64 + 1;

    let mut chars: Vec<(u32, Vec<Multiplicities>)> = Vec::with_capacity(k);
    for basis in spaces {
        let v = &basis[0];
        if v[0] == 0 {
            return Err(Error::TableConstructionFailed(
                "eigenvector vanishes at the identity".into(),
            ));
        }
        let scale = f.inv(v[0]);
        let w: Vec<u64> = v.iter().map(|&x| f.mul(x, scale)).collect();
        let mut s = 0;
        for l in 0..k {
            let t = f.mul(f.mul(w[l], w[inv_class[l]]), f.inv(classes.sizes[l] as u64 % p));
            s = f.add(s, t);
        }
        if s == 0 {
            return Err(Error::TableConstructionFailed("degenerate norm".into()));
        }
        let target = f.mul(n as u64 % p, f.inv(s));
        let d = (1..=dmax)
            .filter(|&d| d * d <= n as u64)
            .find(|&d| f.mul(d, d) == target)
            .ok_or_else(|| Error::TableConstructionFailed("no admissible degree".into()))?;
        let values: Vec<u64> = (0..k)
            .map(|l| f.mul(f.mul(d, w[l]), f.inv(classes.sizes[l] as u64 % p)))
            .collect();
        let mut row = Vec::with_capacity(k);
        for pc in &power_classes {
            let mut mult = Vec::with_capacity(e as usize);
            let mut total = 0u64;
            for t in 0..e {
                let mut acc = 0;
                for (j, &c) in pc.iter().enumerate() {
                    let exp = (e - (j as u64 * t) % e) % e;
                    acc = f.add(acc, f.mul(values[c], f.pow(zeta, exp)));
                }
                let m = f.mul(acc, e_inv);
                if m > d {
                    return Err(Error::TableConstructionFailed("multiplicity exceeds the degree".into()));
                }
                total += m;
                mult.push(m as u32);
            }
            if total != d {
                return Err(Error::TableConstructionFailed(
                    "multiplicities do not sum to the degree".into(),
                ));
            }
            row.push(mult);
        }
        chars.push((d as u32, row));
    }
    chars.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(&a.1)));

    let table = CharacterTable {
        group: Arc::clone(group),
        classes,
        ring: CyclotomicRing::new(e as usize),
        prime: p,
        degrees: chars.iter().map(|c| c.0).collect(),
        chars: chars.into_iter().map(|c| c.1).collect(),
    };
    table.verify()?;
    Ok(table)
}

#[derive(Clone, Copy)]
struct Fp(u64);

impl Fp {
    fn add(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.0 as u128) as u64
    }
    fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.0 - b % self.0)
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }
    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }
    fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.0 - 2)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime `p ≡ 1 (mod e)` with `p > 2√n`.
fn find_prime(e: u64, n: u64, cap: u64) -> Result<u64> {
    let mut p = e + 1;
    while p <= cap {
        if (p as u128) * (p as u128) > 4 * n as u128 && is_prime(p) {
            return Ok(p);
        }
        p += e;
    }
    Err(Error::NoSuitablePrime { cap })
}

fn primitive_root(p: u64) -> u64 {
    let f = Fp(p);
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut q = 2;
    while q * q <= m {
        if m.is_multiple_of(q) {
            factors.push(q);
            while m.is_multiple_of(q) {
                m /= q;
            }
        }
        q += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&q| f.pow(g, (p - 1) / q) != 1))
        .unwrap_or(1)
}

/// Splits `span(basis)` into the eigenspaces of the class matrix `m`.
/// `basis` is in reduced row echelon form and invariant under `m`.
fn split_space(f: &Fp, m: &[(usize, usize, u64)], basis: &[Vec<u64>], k: usize) -> Vec<Vec<Vec<u64>>> {
    let dim = basis.len();
    let pivots: Vec<usize> = basis
        .iter()
        .map(|row| row.iter().position(|&x| x != 0).expect("basis rows are nonzero"))
        .collect();
    // Column c of the restricted matrix holds the coordinates of M b_c.
    let mut a = vec![vec![0u64; dim]; dim];
    for (c, b) in basis.iter().enumerate() {
        let mut image = vec![0u64; k];
        for &(j, l, v) in m {
            if b[l] != 0 {
                image[j] = f.add(image[j], f.mul(v, b[l]));
            }
        }
        for (r, &pv) in pivots.iter().enumerate() {
            a[r][c] = image[pv];
        }
    }
    let cp = char_poly(f, &a);
    let mut out = Vec::new();
    for lambda in 0..f.0 {
        let value = cp.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, lambda), c));
        if value != 0 {
            continue;
        }
        let mut shifted = a.clone();
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] = f.sub(row[i], lambda);
        }
        let kernel = null_space(f, shifted);
        let vectors: Vec<Vec<u64>> = kernel
            .iter()
            .map(|coords| {
                let mut v = vec![0u64; k];
                for (r, &c) in coords.iter().enumerate() {
                    if c != 0 {
                        for (x, &b) in v.iter_mut().zip(&basis[r]) {
                            *x = f.add(*x, f.mul(c, b));
                        }
                    }
                }
                v
            })
            .collect();
        out.push(rref(f, vectors));
        if out.iter().map(Vec::len).sum::<usize>() >= dim {
            break;
        }
    }
    out
}

/// Characteristic polynomial `det(xI - A)`, ascending coefficients, via
/// reduction to Hessenberg form.
fn char_poly(f: &Fp, a: &[Vec<u64>]) -> Vec<u64> {
    let n = a.len();
    let mut h: Vec<Vec<u64>> = a.to_vec();
    for c in 0..n.saturating_sub(2) {
        let Some(r) = (c + 1..n).find(|&r| h[r][c] != 0) else {
            continue;
        };
        if r != c + 1 {
            h.swap(r, c + 1);
            for row in h.iter_mut() {
                row.swap(r, c + 1);
            }
        }
        let piv_inv = f.inv(h[c + 1][c]);
        for i in c + 2..n {
            let t = f.mul(h[i][c], piv_inv);
            if t == 0 {
                continue;
            }
            for j in 0..n {
                let v = f.mul(t, h[c + 1][j]);
                h[i][j] = f.sub(h[i][j], v);
            }
            for row in h.iter_mut() {
                let v = f.mul(t, row[i]);
                row[c + 1] = f.add(row[c + 1], v);
            }
        }
    }
    // p_m = (x - h_mm) p_{m-1} - Σ_{i<m} h_im (∏_{j=i+1}^{m} h_{j,j-1}) p_{i-1}
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 0..n {
        let prev = &polys[m];
        let mut next = vec![0u64; m + 2];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = f.add(next[d + 1], c);
            next[d] = f.sub(next[d], f.mul(h[m][m], c));
        }
        let mut prod = 1;
        for i in (0..m).rev() {
            prod = f.mul(prod, h[i + 1][i]);
            let t = f.mul(h[i][m], prod);
            if t == 0 {
                continue;
            }
            for (d, &c) in polys[i].iter().enumerate() {
                next[d] = f.sub(next[d], f.mul(t, c));
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap_or_else(|| vec![1])
}

/// Reduced row echelon form, zero rows dropped.
fn rref(f: &Fp, mut rows: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = f.inv(rows[rank][c]);
        for x in rows[rank].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let t = rows[r][c];
                for j in 0..cols {
                    let v = f.mul(t, rows[rank][j]);
                    rows[r][j] = f.sub(rows[r][j], v);
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

fn null_space(f: &Fp, a: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    let n = a.first().map_or(0, Vec::len);
    let r = rref(f, a);
    let pivots: Vec<usize> = r
        .iter()
        .map(|row| row.iter().position(|&x| x != 0).unwrap_or(n))
        .collect();
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0u64; n];
            v[free] = 1;
            for (row, &pc) in r.iter().zip(&pivots) {
                v[pc] = f.sub(0, row[free]);
            }
            v
        })
        .collect()
}
