//! The right shift `φ(g)_i = g_{i-1}` on the restricted direct sum `⊕_{i∈Z} F`.
//!
//! The twisted class of `a` is determined by the ordered product
//! `a_n a_{n-1} ... a_{-m}`, so `R(φ) = |F|`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{abelianization_order, conjugacy_classes, FiniteGroup};
use crate::zeta::{series_matches_rational, zeta_series, IntPolynomial, RationalFunction};

/// Random elements have support inside `[-WINDOW, WINDOW]`.
pub const WINDOW: i64 = 8;
pub const DEFAULT_MOVES: usize = 10_000;
pub const DEFAULT_SEED: u64 = 0x5eed;
/// Order to which the closed-form zetas are checked against their counts.
pub const ZETA_CHECK_ORDER: usize = 12;

/// A finitely supported element of `⊕_{i∈Z} F`.
#[derive(Debug, Clone)]
pub struct ShiftElement {
    base: Arc<FiniteGroup>,
    support: BTreeMap<i64, usize>,
}

impl PartialEq for ShiftElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.base, &other.base) && self.support == other.support
    }
}

impl Eq for ShiftElement {}

impl ShiftElement {
    pub fn identity(base: &Arc<FiniteGroup>) -> Self {
        ShiftElement {
            base: Arc::clone(base),
            support: BTreeMap::new(),
        }
    }

    /// Entries at the given positions; identity entries are dropped.
    pub fn from_entries(base: &Arc<FiniteGroup>, entries: impl IntoIterator<Item = (i64, usize)>) -> Self {
        let mut e = Self::identity(base);
        for (i, x) in entries {
            assert!(x < base.order(), "entry is not an element of the base group");
            e.set(i, x);
        }
        e
    }

    /// `α(x)`: the single entry `x` at position 0.
    pub fn alpha(base: &Arc<FiniteGroup>, x: usize) -> Self {
        Self::from_entries(base, [(0, x)])
    }

    pub fn base(&self) -> &Arc<FiniteGroup> {
        &self.base
    }

    pub fn get(&self, i: i64) -> usize {
        self.support.get(&i).copied().unwrap_or(0)
    }

    pub fn support(&self) -> &BTreeMap<i64, usize> {
        &self.support
    }

    fn set(&mut self, i: i64, x: usize) {
        if x == 0 {
            self.support.remove(&i);
        } else {
            self.support.insert(i, x);
        }
    }

    fn bounds(&self) -> Option<(i64, i64)> {
        Some((*self.support.keys().next()?, *self.support.keys().next_back()?))
    }
}

/// `g a φ(g)^{-1}`, componentwise `b_i = g_i a_i g_{i-1}^{-1}`.
pub fn shift_twisted_conjugate(a: &ShiftElement, g: &ShiftElement) -> Result<ShiftElement> {
    if !Arc::ptr_eq(&a.base, &g.base) {
        return Err(Error::BaseMismatch);
    }
    let f = &a.base;
    let mut positions: Vec<i64> = a.support.keys().copied().collect();
    positions.extend(g.support.keys().flat_map(|&i| [i, i + 1]));
    positions.sort_unstable();
    positions.dedup();
    let mut b = ShiftElement::identity(f);
    for i in positions {
        let x = f.mult(f.mult(g.get(i), a.get(i)), f.inv(g.get(i - 1)));
        b.set(i, x);
    }
    Ok(b)
}

/// `a_n a_{n-1} ... a_{-m}`, in descending index order.
pub fn shift_invariant(a: &ShiftElement) -> usize {
    a.support.values().rev().fold(0, |acc, &x| a.base.mult(acc, x))
}

/// The conjugator `g` with `g a φ(g)^{-1} = α(shift_invariant(a))`.
pub fn reducing_conjugator(a: &ShiftElement) -> ShiftElement {
    let f = &a.base;
    let mut g = ShiftElement::identity(f);
    let (lo, hi) = match a.bounds() {
        Some((lo, hi)) => (lo.min(0), hi.max(0)),
        None => return g,
    };
    // g_hi = e, g_{i-1} = g_i a_i
    let mut cur = 0;
    for i in (1..=hi).rev() {
        cur = f.mult(cur, a.get(i));
        g.set(i - 1, cur);
    }
    // g_{lo-1} = e, g_i = g_{i-1} a_i^{-1}
    let mut cur = 0;
    for i in lo..0 {
        cur = f.mult(cur, f.inv(a.get(i)));
        g.set(i, cur);
    }
    g
}

pub fn random_element(base: &Arc<FiniteGroup>, rng: &mut impl Rng) -> ShiftElement {
    let mut e = ShiftElement::identity(base);
    for i in -WINDOW..=WINDOW {
        if rng.random_bool(0.5) {
            e.set(i, rng.random_range(0..base.order()));
        }
    }
    e
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftCertificate {
    /// `R(φ^n) = |F|^n`
    pub counts: Vec<BigInt>,
    pub moves: usize,
    /// Random moves that changed the invariant.
    pub invariant_failures: usize,
    /// `α(x)` for distinct `x` have distinct invariants.
    pub injective: bool,
    /// Random elements the constructive conjugator failed to reduce.
    pub reduction_failures: usize,
}

impl ShiftCertificate {
    pub fn holds(&self) -> bool {
        self.invariant_failures == 0 && self.injective && self.reduction_failures == 0
    }
}

fn powers(c: usize, n_max: u32) -> Vec<BigInt> {
    (1..=n_max).map(|n| BigInt::from(c).pow(n)).collect()
}

pub fn shift_reidemeister_data(
    base: &Arc<FiniteGroup>,
    n_max: u32,
    moves: usize,
    seed: u64,
) -> Result<ShiftCertificate> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut invariant_failures = 0;
    let mut reduction_failures = 0;
    for _ in 0..moves {
        let a = random_element(base, &mut rng);
        let g = random_element(base, &mut rng);
        let inv = shift_invariant(&a);
        if shift_invariant(&shift_twisted_conjugate(&a, &g)?) != inv {
            invariant_failures += 1;
        }
        let reduced = shift_twisted_conjugate(&a, &reducing_conjugator(&a))?;
        if reduced != ShiftElement::alpha(base, inv) {
            reduction_failures += 1;
        }
    }
    let mut seen = vec![false; base.order()];
    let injective =
        (0..base.order()).all(|x| !std::mem::replace(&mut seen[shift_invariant(&ShiftElement::alpha(base, x))], true));
    Ok(ShiftCertificate {
        counts: powers(base.order(), n_max),
        moves,
        invariant_failures,
        injective,
        reduction_failures,
    })
}

/// `(c^n, a^n)` with `c` the class number and `a = |F^{ab}|`.
pub fn shift_rt_counts(base: &FiniteGroup, n_max: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    (
        powers(conjugacy_classes(base).count(), n_max),
        powers(abelianization_order(base), n_max),
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftZetas {
    /// `1 / (1 - |F| z)`
    pub r: RationalFunction,
    /// `1 / (1 - c z)`
    pub rt: RationalFunction,
    /// `1 / (1 - a z)`
    pub rt_f: RationalFunction,
}

fn geometric(c: usize) -> RationalFunction {
    RationalFunction::reciprocal_of(IntPolynomial::new(vec![BigInt::from(1), -BigInt::from(c)]))
        .expect("constant term is 1")
}

pub fn shift_zetas(base: &FiniteGroup) -> Result<ShiftZetas> {
    let n = ZETA_CHECK_ORDER as u32;
    let (rt_counts, rtf_counts) = shift_rt_counts(base, n);
    let zetas = ShiftZetas {
        r: geometric(base.order()),
        rt: geometric(conjugacy_classes(base).count()),
        rt_f: geometric(abelianization_order(base)),
    };
    for (name, z, counts) in [
        ("R", &zetas.r, powers(base.order(), n)),
        ("RT", &zetas.rt, rt_counts),
        ("RTf", &zetas.rt_f, rtf_counts),
    ] {
        if !series_matches_rational(&zeta_series(&counts), z) {
            return Err(Error::VerificationFailed(format!(
                "{name} zeta does not match its counts"
            )));
        }
    }
    Ok(zetas)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Counterexample {
    pub r: usize,
    pub rt: usize,
    pub rt_f: usize,
    pub tbft_fails: bool,
    pub tbft_f_fails: bool,
    pub abelian: bool,
}

impl Counterexample {
    /// Both flags are set exactly when `F` is nonabelian.
    pub fn consistent(&self) -> bool {
        self.tbft_fails == !self.abelian && self.tbft_f_fails == !self.abelian
    }
}

pub fn counterexample_certificate(base: &FiniteGroup) -> Counterexample {
    let r = base.order();
    let rt = conjugacy_classes(base).count();
    let rt_f = abelianization_order(base);
    Counterexample {
        r,
        rt,
        rt_f,
        tbft_fails: r != rt,
        tbft_f_fails: r != rt_f,
        abelian: base.is_abelian(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn conjugation_examples() {
        let f = zoo::group("s3").unwrap();
        let (x, h) = (f.generators()[1], f.generators()[0]);
        let a = ShiftElement::alpha(&f, x);
        assert_eq!(shift_twisted_conjugate(&a, &ShiftElement::identity(&f)).unwrap(), a);
        let g = ShiftElement::alpha(&f, h);
        let b = shift_twisted_conjugate(&a, &g).unwrap();
        assert_eq!(b, ShiftElement::from_entries(&f, [(0, f.mult(h, x)), (1, f.inv(h))]));

        let g = ShiftElement::from_entries(&f, [(-2, x), (3, h), (4, x)]);
        let b = shift_twisted_conjugate(&ShiftElement::identity(&f), &g).unwrap();
        assert_eq!(shift_invariant(&b), 0);
    }

    #[test]
    fn invariant_examples() {
        let f = zoo::group("s3").unwrap();
        assert_eq!(shift_invariant(&ShiftElement::identity(&f)), 0);
        let x = f.generators()[1];
        assert_eq!(shift_invariant(&ShiftElement::from_entries(&f, [(5, x)])), x);
        let (t, c) = (f.generators()[0], f.generators()[1]);
        let a = ShiftElement::from_entries(&f, [(1, t), (0, c)]);
        assert_eq!(shift_invariant(&a), f.mult(t, c));
    }

    #[test]
    fn base_mismatch() {
        let f = zoo::group("z2").unwrap();
        let g = zoo::group("z2").unwrap();
        let a = ShiftElement::identity(&f);
        let b = ShiftElement::identity(&g);
        assert_eq!(shift_twisted_conjugate(&a, &b), Err(Error::BaseMismatch));
    }

    #[test]
    fn certificates() {
        for name in ["trivial", "z2", "s3", "q8", "z4"] {
            let f = zoo::group(name).unwrap();
            let cert = shift_reidemeister_data(&f, 4, 500, 7).unwrap();
            assert!(cert.holds(), "{name}");
        }
        let s3 = zoo::group("s3").unwrap();
        let cert = shift_reidemeister_data(&s3, 2, 10, 1).unwrap();
        assert_eq!(cert.counts, vec![BigInt::from(6), BigInt::from(36)]);
    }

    #[test]
    fn counts_and_zetas() {
        let s3 = zoo::group("s3").unwrap();
        let (rt, rtf) = shift_rt_counts(&s3, 3);
        assert_eq!(rt, powers(3, 3));
        assert_eq!(rtf, powers(2, 3));
        let z = shift_zetas(&s3).unwrap();
        assert_eq!(z.r.to_string(), "1 / (1 - 6*z)");
        assert_eq!(z.rt.to_string(), "1 / (1 - 3*z)");
        assert_eq!(z.rt_f.to_string(), "1 / (1 - 2*z)");
        let t = shift_zetas(&zoo::group("trivial").unwrap()).unwrap();
        assert!([&t.r, &t.rt, &t.rt_f].iter().all(|r| r.to_string() == "1 / (1 - z)"));
        let z2 = shift_zetas(&zoo::group("z2").unwrap()).unwrap();
        assert!(z2.r == z2.rt && z2.rt == z2.rt_f);
    }

    #[test]
    fn counterexamples() {
        let c = |n| counterexample_certificate(&zoo::group(n).unwrap());
        let s3 = c("s3");
        assert_eq!(
            (s3.r, s3.rt, s3.rt_f, s3.tbft_fails, s3.tbft_f_fails),
            (6, 3, 2, true, true)
        );
        let q8 = c("q8");
        assert_eq!((q8.r, q8.rt, q8.rt_f), (8, 5, 4));
        let z4 = c("z4");
        assert_eq!(
            (z4.r, z4.rt, z4.rt_f, z4.tbft_fails, z4.tbft_f_fails),
            (4, 4, 4, false, false)
        );
        assert!(s3.consistent() && q8.consistent() && z4.consistent());
    }
}
